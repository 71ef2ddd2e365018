//! Univariate polynomials over the scalar field, in an indeterminate kept
//! distinct from every parameter, plus factorization over the rationals.
//!
//! Factoring is deliberately modest: rational roots by the rational-root
//! bound on the primitive integer form, degree-two remainders as
//! irreducible quadratics, and anything of degree three or more that
//! resists both is handed back marked unresolved.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Assignment, Scalar};
use super::ExactError;

/// Coefficients indexed by degree; empty means the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: UniPoly,
    pub multiplicity: u32,
    /// False when the factor has degree >= 3 and resisted the implemented
    /// methods.
    pub resolved: bool,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::new(vec![Scalar::one()])
    }

    pub fn monomial(degree: usize, c: Scalar) -> UniPoly {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(coeffs)
    }

    /// X - root
    pub fn linear(root: &Scalar) -> UniPoly {
        UniPoly::new(vec![root.negate(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = self.leading().recip().expect("leading nonzero");
        UniPoly::new(self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        let dlead = divisor.leading();
        let dinv = dlead.recip().expect("nonzero leading");
        while !rem.is_zero() && rem.degree() >= divisor.degree() {
            let shift = rem.degree() - divisor.degree();
            let c = rem.leading().mul(&dinv);
            let t = UniPoly::monomial(shift, c);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        (quot, rem)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale_int((k + 1) as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// True when every coefficient is parameter-free.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<UniPoly, ExactError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.substitute(assignment)?);
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Clears denominators and contents, returning the primitive integer
    /// coefficient list with positive leading coefficient.
    fn primitive_integer(&self) -> Result<Vec<BigInt>, ExactError> {
        if !self.is_rational() {
            return Err(ExactError::ParametricInput);
        }
        let mut dens: Vec<BigInt> = Vec::new();
        let mut nums: Vec<BigInt> = Vec::new();
        for c in &self.coeffs {
            let (n, d) = c.as_rational().unwrap();
            nums.push(n);
            dens.push(d);
        }
        let mut lcm = BigInt::one();
        for d in &dens {
            lcm = lcm.lcm(d);
        }
        let mut ints: Vec<BigInt> = nums
            .iter()
            .zip(&dens)
            .map(|(n, d)| n * (&lcm / d))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            return Ok(ints);
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        for c in &mut ints {
            *c = &*c / &content;
        }
        Ok(ints)
    }

    /// Factors a parameter-free polynomial over the rationals.
    ///
    /// The product of the returned factors, times the leading coefficient,
    /// re-expands to the input exactly. Factors of degree >= 3 that resist
    /// the rational-root and quadratic tests come back unresolved.
    pub fn factor_over_rationals(&self) -> Result<Vec<Factor>, ExactError> {
        if !self.is_rational() {
            return Err(ExactError::ParametricInput);
        }
        if self.is_zero() || self.degree() == 0 {
            return Ok(Vec::new());
        }
        let monic = self.monic();
        // The square-free part carries each distinct irreducible once; the
        // multiplicity of each factor is then counted by repeated division.
        let g = monic.gcd(&monic.derivative());
        let squarefree = monic.div_rem(&g).0.monic();
        let mut out: Vec<Factor> = Vec::new();
        let mut rem = monic;
        for f in factor_squarefree(&squarefree)? {
            let mut count = 0u32;
            loop {
                let (q, r) = rem.div_rem(&f.poly);
                if r.is_zero() {
                    count += 1;
                    rem = q;
                } else {
                    break;
                }
            }
            if count > 0 {
                out.push(Factor {
                    poly: f.poly,
                    multiplicity: count,
                    resolved: f.resolved,
                });
            }
        }
        // Whatever survives (a repeated unresolved block whose square-free
        // part did not divide evenly) is returned as-is so the factor
        // product always re-expands to the input.
        if rem.degree() > 0 {
            out.push(Factor {
                poly: rem,
                multiplicity: 1,
                resolved: false,
            });
        }
        Ok(out)
    }
}

/// Factors a square-free monic rational polynomial into rational-root linear
/// factors, an irreducible quadratic, or an unresolved remainder.
fn factor_squarefree(p: &UniPoly) -> Result<Vec<Factor>, ExactError> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return Ok(out);
    }
    let mut rest = p.clone();
    for root in rational_roots(&rest)? {
        let lin = UniPoly::linear(&root);
        let (q, r) = rest.div_rem(&lin);
        if r.is_zero() {
            out.push(Factor {
                poly: lin,
                multiplicity: 1,
                resolved: true,
            });
            rest = q;
        }
    }
    match rest.degree() {
        0 => {}
        2 => out.push(Factor {
            poly: rest.monic(),
            multiplicity: 1,
            resolved: true,
        }),
        1 => {
            // A linear factor whose root escaped the candidate list would be
            // a bug; divide it out directly.
            let root = rest.coeff(0).negate().div(&rest.leading()).unwrap();
            out.push(Factor {
                poly: UniPoly::linear(&root),
                multiplicity: 1,
                resolved: true,
            });
        }
        _ => out.push(Factor {
            poly: rest.monic(),
            multiplicity: 1,
            resolved: false,
        }),
    }
    Ok(out)
}

/// Candidate rational roots p/q with p | constant term, q | leading term,
/// verified by evaluation.
fn rational_roots(p: &UniPoly) -> Result<Vec<Scalar>, ExactError> {
    let ints = p.primitive_integer()?;
    if ints.is_empty() {
        return Ok(Vec::new());
    }
    // Strip powers of X first: zero roots.
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let trimmed: Vec<BigInt> = ints[low..].to_vec();
    if trimmed.len() <= 1 {
        return Ok(roots);
    }
    let a0 = trimmed.first().unwrap().abs();
    let an = trimmed.last().unwrap().abs();
    let ps = divisors(&a0);
    let qs = divisors(&an);
    for num in &ps {
        for den in &qs {
            if num.gcd(den) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Scalar::from_poly(super::poly::Poly::constant(num * sign))
                    .div(&Scalar::from_poly(super::poly::Poly::constant(den.clone())))
                    .unwrap();
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// Positive divisors by trial division; coefficients in practice are small.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d2 = &d * &d;
        if d2 > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut cs = format!("{}", c);
            let needs_parens = cs.contains('+')
                || (cs.contains('-') && !cs.starts_with('-'))
                || (k > 0 && cs.contains('/'));
            if !first {
                // Pull a plain leading minus into the joining operator.
                if !needs_parens && cs.starts_with('-') {
                    write!(f, " - ")?;
                    cs.remove(0);
                } else {
                    write!(f, " + ")?;
                }
            }
            first = false;
            let one = cs == "1";
            let cs = if needs_parens { format!("({})", cs) } else { cs };
            match k {
                0 => write!(f, "{}", cs)?,
                1 if one => write!(f, "X")?,
                1 => write!(f, "{}*X", cs)?,
                _ if one => write!(f, "X^{}", k)?,
                _ => write!(f, "{}*X^{}", cs, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn poly(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| s(c)).collect())
    }

    fn refactor_product(factors: &[Factor], lead: &Scalar) -> UniPoly {
        let mut acc = UniPoly::new(vec![lead.clone()]);
        for f in factors {
            acc = acc.mul(&f.poly.pow(f.multiplicity));
        }
        acc
    }

    #[test]
    fn factor_examples() {
        // X^2 - X -> X (X - 1)
        let p = poly(&[0, -1, 1]);
        let fs = p.factor_over_rationals().unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.resolved && f.multiplicity == 1));
        assert_eq!(refactor_product(&fs, &s(1)), p);

        // X^2 + 1 irreducible
        let p = poly(&[1, 0, 1]);
        let fs = p.factor_over_rationals().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].poly, p);
        assert_eq!(fs[0].multiplicity, 1);

        // (X^2 + 4X + 5)^2, built by multiplication (the oracle), re-factored
        let q = poly(&[5, 4, 1]);
        let p = q.mul(&q);
        let fs = p.factor_over_rationals().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].poly, q);
        assert_eq!(fs[0].multiplicity, 2);
        assert!(fs[0].resolved);
        assert_eq!(refactor_product(&fs, &s(1)), p);
    }

    #[test]
    fn factor_rejects_parametric() {
        let p = UniPoly::new(vec![Scalar::param("up_a"), s(1)]);
        assert!(matches!(
            p.factor_over_rationals(),
            Err(ExactError::ParametricInput)
        ));
    }

    #[test]
    fn factor_with_rational_leading_and_roots() {
        // 2X^3 - X^2 - X = 2 X (X - 1)(X + 1/2)
        let p = poly(&[0, -1, -1, 2]);
        let fs = p.factor_over_rationals().unwrap();
        assert_eq!(refactor_product(&fs, &s(2)), p);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn factor_unresolved_quartic() {
        // X^4 + X + 1 has no rational roots and is not quadratic: unresolved.
        let p = poly(&[1, 1, 0, 0, 1]);
        let fs = p.factor_over_rationals().unwrap();
        assert_eq!(fs.len(), 1);
        assert!(!fs[0].resolved);
    }

    #[test]
    fn display_is_stable() {
        let p = poly(&[5, 4, 1]);
        assert_eq!(format!("{}", p), "X^2 + 4*X + 5");
    }
}
