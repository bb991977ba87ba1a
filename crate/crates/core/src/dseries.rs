//! Exact power series in δ with a tracked truncation order.
//!
//! A [`DeltaSeries`] is either an exact Laurent polynomial in δ or a series
//! whose coefficients are known exactly up to `δ^prec` and unknown beyond.
//! Every coefficient it reports is exact. It is the local expansion of
//! `ℚ(δ)` at `δ = 0` and gives the `δ → 0` limit without polynomial gcds.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSeries {
    /// Exponent of `coeffs[0]`; for a zero with finite `prec` it is `prec + 1`.
    lo: i64,
    /// Highest exponent known; `None` for an exact value.
    prec: Option<i64>,
    /// No leading or trailing zeros.
    coeffs: Vec<Rational>,
}

impl DeltaSeries {
    fn build(lo: i64, prec: Option<i64>, mut coeffs: Vec<Rational>) -> Self {
        if let Some(p) = prec {
            let keep = (p - lo + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return DeltaSeries { lo: prec.map_or(0, |p| p + 1), prec, coeffs: Vec::new() };
        }
        coeffs.drain(..lead);
        DeltaSeries { lo: lo + lead as i64, prec, coeffs }
    }

    pub fn zero() -> Self {
        DeltaSeries { lo: 0, prec: None, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::build(0, None, vec![c])
    }

    /// Exact Laurent polynomial `Σ coeffs[i]·δ^{lo+i}`.
    pub fn exact(lo: i64, coeffs: Vec<Rational>) -> Self {
        Self::build(lo, None, coeffs)
    }

    /// Series known up to `δ^prec`.
    pub fn truncated(lo: i64, prec: i64, coeffs: Vec<Rational>) -> Self {
        Self::build(lo, Some(prec), coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    /// Lower bound on the valuation.
    pub fn valuation(&self) -> i64 {
        self.lo
    }

    /// Coefficient of `δ^k`, or `None` if beyond the known order.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if self.prec.is_some_and(|p| k > p) {
            return None;
        }
        let i = k - self.lo;
        if i < 0 || i as usize >= self.coeffs.len() {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[i as usize].clone())
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_exact() {
            return None;
        }
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 if self.lo == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// The limit at `δ = 0`: the `δ⁰` coefficient, provided there is no pole
    /// and the order `δ⁰` is known.
    pub fn value_at_zero(&self) -> Result<Rational> {
        if self.lo < 0 && !self.coeffs.is_empty() {
            return Err(Error::PoleAtZero);
        }
        match self.prec {
            Some(p) if p < 0 => Err(Error::DeltaPrecision { known: p }),
            _ => Ok(self.coeff(0).expect("order 0 is known")),
        }
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, rhs: &DeltaSeries) -> DeltaSeries {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let prec = Self::min_prec(self.prec, rhs.prec);
        let lo = self.lo.min(rhs.lo);
        let top = (self.lo + self.coeffs.len() as i64).max(rhs.lo + rhs.coeffs.len() as i64);
        let top = prec.map_or(top, |p| top.min(p + 1));
        if top <= lo {
            return Self::build(lo, prec, Vec::new());
        }
        let mut out = vec![Rational::zero(); (top - lo) as usize];
        for s in [self, rhs] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.lo + i as i64 - lo;
                if k < out.len() as i64 {
                    out[k as usize] += c;
                }
            }
        }
        Self::build(lo, prec, out)
    }

    pub fn neg(&self) -> DeltaSeries {
        DeltaSeries { lo: self.lo, prec: self.prec, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> DeltaSeries {
        if c.is_zero() {
            return DeltaSeries::zero();
        }
        DeltaSeries { lo: self.lo, prec: self.prec, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Product, known up to `min(lo_a + prec_b, lo_b + prec_a)`.
    pub fn mul(&self, rhs: &DeltaSeries) -> DeltaSeries {
        if self.is_zero() || rhs.is_zero() {
            return DeltaSeries::zero();
        }
        let lo = self.lo + rhs.lo;
        let prec = Self::min_prec(self.prec.map(|p| p + rhs.lo), rhs.prec.map(|p| p + self.lo));
        let full = self.coeffs.len() + rhs.coeffs.len();
        let len = match prec {
            Some(p) => ((p - lo + 1).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::build(lo, prec, out)
    }

    /// `(c + m·δ)^e` for a positive direction. Non-negative powers and
    /// monomials are exact; negative powers with `c > 0` are expanded to
    /// order `prec`.
    pub fn affine_pow(c: &Rational, m: &Rational, e: i64, prec: i64) -> Result<DeltaSeries> {
        if c.is_zero() && m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if c.is_zero() {
            let me = if e >= 0 {
                num_traits::pow(m.clone(), e as usize)
            } else {
                num_traits::pow(m.recip(), e.unsigned_abs() as usize)
            };
            return Ok(Self::exact(e, vec![me]));
        }
        if m.is_zero() {
            let ce = if e >= 0 {
                num_traits::pow(c.clone(), e as usize)
            } else {
                num_traits::pow(c.recip(), e.unsigned_abs() as usize)
            };
            return Ok(Self::constant(ce));
        }
        if e >= 0 {
            let base = Self::exact(0, vec![c.clone(), m.clone()]);
            let mut out = Self::one();
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        // c^e·(1 + (m/c)δ)^e with the generalized binomial coefficients
        let ce = num_traits::pow(c.recip(), e.unsigned_abs() as usize);
        let ratio = m / c;
        let mut coeffs = Vec::with_capacity(prec.max(0) as usize + 1);
        let mut term = ce;
        let e = Rational::from_integer(e.into());
        for i in 0..=prec.max(0) {
            coeffs.push(term.clone());
            let i = Rational::from_integer(i.into());
            term = term * (&e - &i) / (&i + Rational::one()) * &ratio;
        }
        Ok(Self::truncated(0, prec, coeffs))
    }
}

impl fmt::Display for DeltaSeries {
    /// `c₀ + c₁*d + … + O(d^{p+1})`, lowest order first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.lo + i as i64;
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    let power = if k == 1 { "d".to_string() } else { format!("d^{k}") };
                    if mag.is_one() {
                        f.write_str(&power)?;
                    } else {
                        write!(f, "{mag}*{power}")?;
                    }
                }
            }
        }
        match self.prec {
            Some(p) if first => write!(f, "O(d^{})", p + 1),
            Some(p) => write!(f, " + O(d^{})", p + 1),
            None if first => f.write_str("0"),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::ratfunc::RatFunc;
    use proptest::prelude::*;

    #[test]
    fn inverse_powers() {
        // 1/(2 + δ) = 1/2 − δ/4 + δ²/8 + O(δ³)
        let s = DeltaSeries::affine_pow(&int(2), &int(1), -1, 2).unwrap();
        assert_eq!(s, DeltaSeries::truncated(0, 2, vec![rat(1, 2), rat(-1, 4), rat(1, 8)]));
        assert_eq!(s.to_string(), "1/2 - 1/4*d + 1/8*d^2 + O(d^3)");
        let p = DeltaSeries::affine_pow(&int(0), &int(2), -2, 5).unwrap();
        assert_eq!(p, DeltaSeries::exact(-2, vec![rat(1, 4)]));
        assert!(p.is_exact());
        assert_eq!(p.value_at_zero(), Err(Error::PoleAtZero));
        let q = DeltaSeries::affine_pow(&int(1), &int(3), 2, 0).unwrap();
        assert_eq!(q, DeltaSeries::exact(0, vec![int(1), int(6), int(9)]));
    }

    #[test]
    fn precision_tracking() {
        let a = DeltaSeries::truncated(0, 1, vec![int(1), int(1)]);
        let pole = DeltaSeries::exact(-2, vec![int(1)]);
        let p = a.mul(&pole);
        assert_eq!(p.prec(), Some(-1));
        assert_eq!(p.value_at_zero(), Err(Error::PoleAtZero));
        let cancel = p.add(&DeltaSeries::exact(-2, vec![int(-1), int(-1)]));
        assert_eq!(cancel.value_at_zero(), Err(Error::DeltaPrecision { known: -1 }));
        let small = DeltaSeries::truncated(0, 3, vec![]);
        assert!(!small.is_zero());
        assert_eq!(small.valuation(), 4);
        assert_eq!(small.mul(&pole).prec(), Some(1));
        assert_eq!(small.to_string(), "O(d^4)");
    }

    #[test]
    fn matches_rational_functions() {
        // (1/(1+δ) − 1/(1+2δ))/δ = 1 − 3δ + … has value 1 at δ = 0
        let a = DeltaSeries::affine_pow(&int(1), &int(1), -1, 3).unwrap();
        let b = DeltaSeries::affine_pow(&int(1), &int(2), -1, 3).unwrap();
        let inv_d = DeltaSeries::affine_pow(&int(0), &int(1), -1, 3).unwrap();
        let v = a.add(&b.neg()).mul(&inv_d);
        assert_eq!(v.value_at_zero().unwrap(), int(1));
        assert_eq!(v.coeff(1), Some(int(-3)));
        let f = &(&RatFunc::affine(int(1), int(1)).recip().unwrap()
            - &RatFunc::affine(int(1), int(2)).recip().unwrap())
            * &RatFunc::affine(int(0), int(1)).recip().unwrap();
        assert_eq!(f.eval_at_delta_zero().unwrap(), v.value_at_zero().unwrap());
    }

    fn exact_poly() -> impl Strategy<Value = DeltaSeries> {
        (-2i64..=1, prop::collection::vec(-4i64..=4, 0..4))
            .prop_map(|(lo, c)| DeltaSeries::exact(lo, c.into_iter().map(int).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(a in exact_poly(), b in exact_poly(), c in exact_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert!(a.add(&a.neg()).is_zero());
        }

        #[test]
        fn truncated_inverse_times_base_is_one(c in 1i64..=5, m in 0i64..=3, n in 1i64..=4) {
            let inv = DeltaSeries::affine_pow(&int(c), &int(m), -n, 6).unwrap();
            let pow = DeltaSeries::affine_pow(&int(c), &int(m), n, 6).unwrap();
            let one = inv.mul(&pow);
            // a constant base stays exact
            prop_assert_eq!(one.prec(), if m == 0 { None } else { Some(6) });
            for k in 0..=6 {
                prop_assert_eq!(one.coeff(k).unwrap(), if k == 0 { int(1) } else { int(0) });
            }
        }
    }
}
