//! The scalar field: rational functions in the declared parameters.
//!
//! A `Scalar` is a quotient of two integer polynomials kept in canonical
//! form (numerator and denominator coprime, denominator with positive
//! leading coefficient), so equality is plain structural equality and all
//! arithmetic is exact. Parameter-free scalars are ordinary rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::sym::Sym;
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// A rational-point assignment for parameters.
pub type Assignment = BTreeMap<Sym, Scalar>;

impl Scalar {
    fn canonical(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let mut num = num.divide_exact(&g).expect("gcd divides numerator");
        let mut den = den.divide_exact(&g).expect("gcd divides denominator");
        if !den.leading_coeff_positive() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            num: Poly::from_i64(n),
            den: Poly::one(),
        }
    }

    pub fn from_fraction(n: i64, d: i64) -> Scalar {
        assert!(d != 0);
        Scalar::canonical(Poly::from_i64(n), Poly::from_i64(d))
    }

    pub fn param(name: &str) -> Scalar {
        Scalar {
            num: Poly::var(Sym::new(name)),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when no free parameters remain.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Numerator/denominator pair for parameter-free scalars.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some((n, d)),
            _ => None,
        }
    }

    /// Sign of a parameter-free scalar.
    pub fn rational_sign(&self) -> Option<i8> {
        let (n, d) = self.as_rational()?;
        if n.is_zero() {
            return Some(0);
        }
        Some(if n.is_negative() == d.is_negative() { 1 } else { -1 })
    }

    pub fn vars(&self) -> Vec<Sym> {
        let mut vs = self.num.vars();
        for v in self.den.vars() {
            if let Err(pos) = vs.binary_search(&v) {
                vs.insert(pos, v);
            }
        }
        vs
    }

    pub fn recip(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact square root when numerator and denominator are perfect squares.
    pub fn sqrt(&self) -> Option<Scalar> {
        Some(Scalar::canonical(self.num.sqrt()?, self.den.sqrt()?))
    }

    /// Substitutes parameters and returns the resulting scalar.
    ///
    /// Every parameter present must be assigned, and the denominator must
    /// stay nonzero at the point.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Scalar, ExactError> {
        for v in self.vars() {
            if !assignment.contains_key(&v) {
                return Err(ExactError::MissingParameter(v.name()));
            }
        }
        let num = eval_poly(&self.num, assignment);
        let den = eval_poly(&self.den, assignment);
        if den.is_zero() {
            return Err(ExactError::DenominatorVanishes(format_point(assignment)));
        }
        Ok(num.mul(&den.recip()?))
    }

    /// Parses the scalar expression grammar: integers, parameters,
    /// `+ - * / ( ) ^`. No floating-point literals.
    pub fn parse(input: &str) -> Result<Scalar, ExactError> {
        Parser::new(input).parse()
    }
}

fn eval_poly(p: &Poly, assignment: &Assignment) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar {
            num: Poly::constant(c.clone()),
            den: Poly::one(),
        };
        for v in m.vars() {
            let e = m.degree_of(v);
            let val = assignment.get(&v).expect("checked before");
            t = t.mul(&val.pow(e));
        }
        acc = acc.add(&t);
    }
    acc
}

fn format_point(assignment: &Assignment) -> String {
    let parts: Vec<String> = assignment
        .iter()
        .map(|(k, v)| format!("{}={}", k, v))
        .collect();
    parts.join(", ")
}

impl Scalar {
    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Scalar::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn negate(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self.mul(&Scalar::from_int(c))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let d = if self.den.num_terms() > 1 || self.den.total_degree() > 0 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{}/{}", n, d)
        }
    }
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Parser<'a> {
        Parser {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<Scalar, ExactError> {
        let value = self.expr()?;
        self.skip_ws();
        if self.pos != self.input.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(value)
    }

    fn error(&self, msg: &str) -> ExactError {
        ExactError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| self.error("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ExactError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected integer exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.input[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.input.get(self.pos) == Some(&b'.') {
                    return Err(self.error("floating-point literals are not accepted"));
                }
                let digits = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().unwrap();
                Ok(Scalar {
                    num: Poly::constant(n),
                    den: Poly::one(),
                })
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                Ok(Scalar::param(name))
            }
            _ => Err(self.error("expected integer, parameter, or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(name: &str, num: i64, den: i64) -> (Sym, Scalar) {
        (Sym::new(name), Scalar::from_fraction(num, den))
    }

    #[test]
    fn canonical_fractions() {
        let x = Scalar::from_fraction(6, -4);
        assert_eq!(x, Scalar::from_fraction(-3, 2));
        assert_eq!(format!("{}", x), "-3/2");
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = Scalar::param("ce_a");
        let b = Scalar::param("ce_b");
        let lhs = a.clone().div(&b).unwrap();
        let rhs = a.mul(&b).div(&b.mul(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_round_trip() {
        for src in [
            "1/2",
            "a + 2*b",
            "(a^2 - b)/(a*b + 1)",
            "-3*lambda^2 + 1/7",
            "c1*(2 - c2)^3",
        ] {
            let s = Scalar::parse(src).unwrap();
            let again = Scalar::parse(&format!("{}", s)).unwrap();
            assert_eq!(s, again, "display must re-parse to the same scalar: {src}");
        }
    }

    #[test]
    fn parse_rejects_floats() {
        assert!(Scalar::parse("1.5").is_err());
    }

    #[test]
    fn substitute_basics() {
        let expr = Scalar::parse("(a^2 - b)/(a)").unwrap();
        let point: Assignment = [pt("a", 1, 1), pt("b", 1, 1)].into_iter().collect();
        assert_eq!(expr.substitute(&point).unwrap(), Scalar::zero());

        let expr = Scalar::parse("a/b").unwrap();
        let point: Assignment = [pt("a", 2, 1), pt("b", 3, 1)].into_iter().collect();
        assert_eq!(
            expr.substitute(&point).unwrap(),
            Scalar::from_fraction(2, 3)
        );

        let expr = Scalar::parse("1/(a - b)").unwrap();
        let point: Assignment = [pt("a", 1, 1), pt("b", 1, 1)].into_iter().collect();
        assert!(matches!(
            expr.substitute(&point),
            Err(ExactError::DenominatorVanishes(_))
        ));
    }

    proptest! {
        #[test]
        fn substitute_commutes_with_arithmetic(
            na in -20i64..20, nb in -20i64..20,
            va in 1i64..9, vb in 1i64..9,
        ) {
            let a = Scalar::param("sc_a");
            let b = Scalar::param("sc_b");
            let x = a.mul(&Scalar::from_int(na)).add(&b);
            let y = b.mul(&Scalar::from_int(nb)).sub(&a);
            let point: Assignment =
                [pt("sc_a", va, 3), pt("sc_b", vb, 2)].into_iter().collect();
            let lhs = x.mul(&y).substitute(&point).unwrap();
            let rhs = x.substitute(&point).unwrap().mul(&y.substitute(&point).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms_on_rationals(
            n1 in -30i64..30, d1 in 1i64..12,
            n2 in -30i64..30, d2 in 1i64..12,
            n3 in -30i64..30, d3 in 1i64..12,
        ) {
            let x = Scalar::from_fraction(n1, d1);
            let y = Scalar::from_fraction(n2, d2);
            let z = Scalar::from_fraction(n3, d3);
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.recip().unwrap()), Scalar::one());
            }
        }
    }
}
