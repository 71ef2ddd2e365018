//! Sparse multivariate polynomials with integer coefficients.
//!
//! These are the raw material of the scalar field: every scalar is a
//! quotient of two of these. Monomials are ordered graded-lexicographically
//! with parameters compared by declaration order, which fixes leading
//! terms, canonical signs and therefore every echelon form downstream.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sym::Sym;

/// A monomial: sorted list of (symbol, exponent) pairs, exponents > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Sym, u32)>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn var(s: Sym) -> Mono {
        Mono(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_of(&self, s: Sym) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == s)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Sym> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// Divides `self` by `other`; `None` if not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut i = 0;
        for &(v, e) in &other.0 {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                let (sv, se) = self.0[i];
                if sv < v {
                    out.push((sv, se));
                    i += 1;
                } else if sv == v {
                    if se < e {
                        return None;
                    }
                    if se > e {
                        out.push((sv, se - e));
                    }
                    i += 1;
                    break;
                } else {
                    return None;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Mono(out))
    }

    /// Strips `s` from the monomial, returning the exponent it carried.
    fn without(&self, s: Sym) -> (u32, Mono) {
        let mut out = Vec::with_capacity(self.0.len());
        let mut deg = 0;
        for &(v, e) in &self.0 {
            if v == s {
                deg = e;
            } else {
                out.push((v, e));
            }
        }
        (deg, Mono(out))
    }

    fn with_power(&self, s: Sym, e: u32) -> Mono {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Mono(vec![(s, e)]))
    }
}

/// Graded lexicographic order: total degree first, then lexicographic with
/// earlier-declared symbols weighing more.
impl Ord for Mono {
    fn cmp(&self, other: &Mono) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lex comparison on exponent vectors, variables ascending by id;
        // a higher exponent on an earlier variable makes the monomial bigger.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => {
                    // self has extra late variables; other's mass sits on
                    // earlier ones, so other is bigger.
                    return Ordering::Less;
                }
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        }
                    } else if va < vb {
                        // self has positive exponent on an earlier variable.
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Mono) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the integers. Invariant: no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(s: Sym) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(s), BigInt::one());
        Poly { terms }
    }

    pub fn term(c: BigInt, m: Mono) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::one()))
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Mono::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (greatest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_positive(&self) -> bool {
        self.leading().map(|(_, c)| c.is_positive()).unwrap_or(true)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// All symbols appearing in the polynomial, ascending.
    pub fn vars(&self) -> Vec<Sym> {
        let mut vs: Vec<Sym> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if let Err(pos) = vs.binary_search(&v) {
                    vs.insert(pos, v);
                }
            }
        }
        vs
    }

    pub fn degree_in(&self, s: Sym) -> u32 {
        self.terms.keys().map(|m| m.degree_of(s)).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_int(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, co)| (m.clone(), co * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`; panics if not exact (internal use).
    fn div_int_exact(&self, c: &BigInt) -> Poly {
        debug_assert!(!c.is_zero());
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, co)| {
                    let (q, r) = co.div_rem(c);
                    debug_assert!(r.is_zero());
                    (m.clone(), q)
                })
                .collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if !self.leading_coeff_positive() {
            c = -c;
        }
        self.div_int_exact(&c)
    }

    /// Exact multivariate division; `None` when the division does not come
    /// out even.
    pub fn divide_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let qm = lm.div(&dm)?;
            let (qc, r) = lc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let t = Poly::term(qc, qm);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// Partial derivative.
    pub fn derivative(&self, s: Sym) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            if e > 0 {
                out.insert_term(rest.with_power(s, e - 1), c * BigInt::from(e));
            }
        }
        out
    }

    /// View as univariate in `s`: map degree -> coefficient polynomial.
    pub fn coeffs_in(&self, s: Sym) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            out.entry(e)
                .or_insert_with(Poly::zero)
                .insert_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_coeffs_in(s: Sym, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (&e, p) in coeffs {
            for (m, c) in &p.terms {
                out.insert_term(m.with_power(s, e), c.clone());
            }
        }
        out
    }

    /// Pseudo-remainder of `self` by `divisor` viewed as univariate in `s`.
    fn pseudo_rem(&self, divisor: &Poly, s: Sym) -> Poly {
        let dd = divisor.degree_in(s);
        let mut r = self.clone();
        let div_coeffs = divisor.coeffs_in(s);
        let lead_d = div_coeffs.get(&dd).cloned().unwrap_or_else(Poly::zero);
        while !r.is_zero() && r.degree_in(s) >= dd {
            let rd = r.degree_in(s);
            let r_coeffs = r.coeffs_in(s);
            let lead_r = r_coeffs.get(&rd).cloned().unwrap_or_else(Poly::zero);
            if lead_r.is_zero() {
                break;
            }
            // r <- lead_d * r - lead_r * s^(rd-dd) * divisor
            let shell = Poly::term(BigInt::one(), Mono::one().with_power(s, rd - dd));
            r = r.mul(&lead_d).sub(&lead_r.mul(&shell).mul(divisor));
        }
        r
    }

    /// Content of `self` as a univariate polynomial in `s`: full gcd of the
    /// polynomial coefficients (integer content included).
    fn content_in(&self, s: Sym) -> Poly {
        let mut g = Poly::zero();
        for p in self.coeffs_in(s).values() {
            g = Poly::gcd(&g, p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Multivariate gcd (primitive pseudo-remainder sequences), including
    /// the integer content; result has positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.abs_normalized();
        }
        if b.is_zero() {
            return a.abs_normalized();
        }
        if let (Some(ca), Some(cb)) = (a.as_constant(), b.as_constant()) {
            return Poly::constant(ca.gcd(&cb));
        }
        let icont = a.content().gcd(&b.content());
        let g = Poly::gcd_primitive(&a.primitive(), &b.primitive());
        g.mul_int(&icont)
    }

    /// gcd of two integer-primitive polynomials; result primitive with
    /// positive leading coefficient.
    fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
        if a.is_constant() || b.is_constant() {
            // Primitive constants are +-1.
            return Poly::one();
        }
        let mut vars = a.vars();
        for v in b.vars() {
            if let Err(pos) = vars.binary_search(&v) {
                vars.insert(pos, v);
            }
        }
        let s = vars[0];
        let da = a.degree_in(s);
        let db = b.degree_in(s);
        if da == 0 {
            // `a` is free of the main variable, so the gcd divides the
            // content of `b` in that variable.
            return Poly::gcd_primitive(a, &b.content_in(s).primitive());
        }
        if db == 0 {
            return Poly::gcd_primitive(b, &a.content_in(s).primitive());
        }
        let ca = a.content_in(s);
        let cb = b.content_in(s);
        let cont_gcd = Poly::gcd(&ca, &cb).primitive();
        let (mut p, mut q) = if da >= db {
            (a.divide_exact(&ca).unwrap(), b.divide_exact(&cb).unwrap())
        } else {
            (b.divide_exact(&cb).unwrap(), a.divide_exact(&ca).unwrap())
        };
        loop {
            let r = p.pseudo_rem(&q, s);
            if r.is_zero() {
                break;
            }
            if r.degree_in(s) == 0 {
                // Nontrivial remainder free of s: the s-dependent part of
                // the gcd is trivial.
                q = Poly::one();
                break;
            }
            let rc = r.content_in(s);
            p = q;
            q = r.divide_exact(&rc).unwrap();
        }
        if q.is_constant() {
            cont_gcd
        } else {
            cont_gcd.mul(&q.primitive())
        }
    }

    /// Positive-leading-coefficient copy (content kept).
    fn abs_normalized(&self) -> Poly {
        if self.leading_coeff_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Exact square root, if `self` is a perfect square.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = self.as_constant() {
            if c.is_negative() {
                return None;
            }
            let r = c.sqrt();
            if &r * &r == c {
                return Some(Poly::constant(r));
            }
            return None;
        }
        let s = self.vars()[0];
        let deg = self.degree_in(s);
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        let coeffs = self.coeffs_in(s);
        let lead = coeffs.get(&deg)?;
        let lead_root = lead.sqrt()?;
        let mut root: BTreeMap<u32, Poly> = BTreeMap::new();
        root.insert(half, lead_root.clone());
        let two_lead = lead_root.mul_int(&BigInt::from(2));
        // Determine coefficients from the top down by matching terms.
        for k in (0..half).rev() {
            // Coefficient of s^(k+half) in root^2, excluding the 2*lead*c_k term.
            let mut acc = Poly::zero();
            for (&i, ci) in &root {
                let j = (k + half).checked_sub(i);
                if let Some(j) = j {
                    if j > i {
                        continue; // count unordered pairs once, doubled below
                    }
                    if let Some(cj) = root.get(&j) {
                        if i == j {
                            acc = acc.add(&ci.mul(cj));
                        } else {
                            acc = acc.add(&ci.mul(cj).mul_int(&BigInt::from(2)));
                        }
                    }
                }
            }
            let target = coeffs.get(&(k + half)).cloned().unwrap_or_else(Poly::zero);
            let num = target.sub(&acc);
            let ck = num.divide_exact(&two_lead)?;
            if !ck.is_zero() {
                root.insert(k, ck);
            }
        }
        let candidate = Poly::from_coeffs_in(s, &root);
        if candidate.mul(&candidate) == *self {
            Some(candidate)
        } else {
            None
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else {
                let mut lead = true;
                if !abs.is_one() {
                    write!(f, "{}", abs)?;
                    lead = false;
                }
                for &(v, e) in &m.0 {
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    if e == 1 {
                        write!(f, "{}", v)?;
                    } else {
                        write!(f, "{}^{}", v, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Poly {
        Poly::var(Sym::new(name))
    }

    #[test]
    fn grlex_ordering() {
        let a = Sym::new("gl_a");
        let b = Sym::new("gl_b");
        let ma = Mono::var(a);
        let mb = Mono::var(b);
        assert!(ma > mb, "earlier declaration wins at equal degree");
        assert!(mb.mul(&mb) > ma, "degree dominates");
    }

    #[test]
    fn gcd_of_products() {
        let a = v("g_a");
        let b = v("g_b");
        let p = a.add(&b).mul(&a); // a(a+b)
        let q = a.add(&b).mul(&b); // b(a+b)
        let g = Poly::gcd(&p, &q);
        assert_eq!(g, a.add(&b));
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = v("gc_a");
        let p = a.mul_int(&BigInt::from(6));
        let q = a.mul_int(&BigInt::from(4));
        assert_eq!(Poly::gcd(&p, &q), a.mul_int(&BigInt::from(2)));
    }

    #[test]
    fn sqrt_of_squares() {
        let a = v("sq_a");
        let b = v("sq_b");
        let s = a.sub(&b).add(&Poly::from_i64(3)); // a - b + 3
        let p = s.mul(&s);
        assert_eq!(p.sqrt(), Some(s));
        assert_eq!(a.add(&Poly::one()).sqrt(), None);
        assert_eq!(Poly::from_i64(49).sqrt(), Some(Poly::from_i64(7)));
        assert_eq!(Poly::from_i64(-4).sqrt(), None);
    }

    #[test]
    fn exact_division() {
        let a = v("dv_a");
        let b = v("dv_b");
        let p = a.add(&b).mul(&a.sub(&b)); // a^2 - b^2
        assert_eq!(p.divide_exact(&a.add(&b)), Some(a.sub(&b)));
        assert_eq!(p.divide_exact(&a), None);
    }
}
