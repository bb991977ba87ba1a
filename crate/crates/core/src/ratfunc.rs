//! The coefficient field ℚ(δ): univariate polynomials and rational functions
//! in the direction-deformation parameter δ.
//!
//! A [`RatFunc`] is always stored in canonical form: numerator and
//! denominator coprime, denominator monic. Two canonical forms are equal
//! exactly when the rational functions are equal, so `==` is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Dense polynomial in δ; `coeffs[i]` is the coefficient of δⁱ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial δ.
    pub fn delta() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Value at δ = 0.
    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    ///
    /// Runs the primitive remainder sequence over ℤ, which avoids the
    /// coefficient growth and per-operation reductions of Euclid over ℚ.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Poly::one();
        }
        let (mut a, mut b) = (primitive_int(&self.coeffs), primitive_int(&other.coeffs));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return Poly::one();
            }
            let r = pseudo_rem(&a, &b);
            a = b;
            b = primitive_part(r);
        }
        Poly::from_coeffs(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("divisor is non-zero");
        debug_assert!(r.is_zero());
        q
    }
}

/// Clears denominators and removes the content.
fn primitive_int(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_part(coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

/// Remainder of `lc(b)^(deg a − deg b + 1)·a` divided by `b`, over ℤ.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{q}")
}

impl fmt::Display for Poly {
    /// Highest degree first, variable printed as `d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => fmt_rational(&mag, f)?,
                _ => {
                    if !mag.is_one() {
                        fmt_rational(&mag, f)?;
                        write!(f, "*")?;
                    }
                    if i == 1 {
                        write!(f, "d")?;
                    } else {
                        write!(f, "d^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rational function `num/den` in δ, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    /// Builds and canonicalizes `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs[0].recip();
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lead = den.leading().expect("non-zero").recip();
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The affine form `c + m·δ`.
    pub fn affine(c: Rational, m: Rational) -> Self {
        Self::from_poly(Poly::from_coeffs(vec![c, m]))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.constant_term())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// The value at δ = 0, which for a canonical form equals `lim_{δ→0}`.
    pub fn eval_at_delta_zero(&self) -> Result<Rational> {
        let d0 = self.den.constant_term();
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.num.constant_term() / d0)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::canonical(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let left = rhs.den.exact_div(&g);
        let right = self.den.exact_div(&g);
        let num = &(&self.num * &left) + &(&rhs.num * &right);
        let den = &self.den * &left;
        RatFunc::canonical(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        // Cross-cancel before multiplying so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        let lead = den.leading().expect("non-zero").recip();
        RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] to get an error.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let single = p.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1;
            if single {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn d() -> RatFunc {
        RatFunc::from_poly(Poly::delta())
    }

    fn c(n: i64) -> RatFunc {
        RatFunc::constant(int(n))
    }

    #[test]
    fn field_examples() {
        let inv_d = d().recip().unwrap();
        let sum = &d() + &inv_d;
        let expect = RatFunc::new(Poly::from_coeffs(vec![int(1), int(0), int(1)]), Poly::delta()).unwrap();
        assert_eq!(sum, expect);
        assert_eq!(&inv_d * &d(), RatFunc::one());
        let q = c(1).checked_div(&(&d() + &c(2))).unwrap();
        assert_eq!(q.num(), &Poly::one());
        assert_eq!(q.den(), &Poly::from_coeffs(vec![int(2), int(1)]));
        assert_eq!(c(1).checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_at_zero() {
        let f = RatFunc::new(Poly::from_coeffs(vec![int(2), int(1)]), Poly::constant(int(2))).unwrap();
        assert_eq!(f.eval_at_delta_zero().unwrap(), int(1));
        // (δ² + 2δ)/(2δ) reduces to (δ + 2)/2 before evaluation.
        let g = RatFunc::new(
            Poly::from_coeffs(vec![int(0), int(2), int(1)]),
            Poly::from_coeffs(vec![int(0), int(2)]),
        )
        .unwrap();
        assert_eq!(g, f);
        assert_eq!(g.eval_at_delta_zero().unwrap(), int(1));
        assert_eq!(d().recip().unwrap().eval_at_delta_zero(), Err(Error::PoleAtZero));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = RatFunc::new(Poly::constant(int(3)), Poly::from_coeffs(vec![int(4), int(6)])).unwrap();
        assert!(f.den().leading().unwrap().is_one());
        assert_eq!(f.num(), &Poly::constant(rat(1, 2)));
    }

    #[test]
    fn display_forms() {
        let f = RatFunc::new(Poly::from_coeffs(vec![int(1), int(0), int(1)]), Poly::delta()).unwrap();
        assert_eq!(f.to_string(), "(d^2 + 1)/d");
        assert_eq!(RatFunc::constant(rat(-1, 2)).to_string(), "-1/2");
        assert_eq!(RatFunc::affine(int(3), int(1)).to_string(), "d + 3");
    }

    /// Schoolbook convolution straight from the definition.
    fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len()];
        for i in 0..a.len() {
            for j in 0..b.len() {
                out[i + j] += &a[i] * &b[j];
            }
        }
        out
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..4)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(int).collect()))
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly().prop_filter("non-zero den", |p| !p.is_zero()))
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn poly_mul_matches_convolution(a in small_poly(), b in small_poly()) {
            let expect = Poly::from_coeffs(convolve(a.coeffs(), b.coeffs()));
            prop_assert_eq!(&a * &b, expect);
        }

        #[test]
        fn canonicalization_idempotent(f in small_ratfunc()) {
            let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
            prop_assert_eq!(&again, &f);
            prop_assert!(f.num().gcd(f.den()).is_one() || f.is_zero());
        }

        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn gcd_divides_and_absorbs_common_factors(a in small_poly(), b in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero() && !(a.is_zero() && b.is_zero()));
            let h = a.gcd(&b);
            prop_assert!(a.div_rem(&h).unwrap().1.is_zero());
            prop_assert!(b.div_rem(&h).unwrap().1.is_zero());
            let hg = (&a * &g).gcd(&(&b * &g));
            prop_assert_eq!(hg, (&h * &g).monic());
        }

        #[test]
        fn div_rem_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|dr| dr < b.degree().unwrap()));
        }
    }
}
