//! Truncated Laurent series in the regulator ε and the minimal-subtraction
//! projector onto the pole part. Coefficients live in any [`Coefficient`]
//! ring, by default [`RatFunc`].
//!
//! A series tracks the window `[lo, hi]`. Coefficients below `lo` are zero
//! by construction (a Laurent series has a finite pole order); coefficients
//! above `hi` are unknown. Arithmetic only claims exponents that both
//! operands determine.

use std::fmt;

use num_traits::{One, Signed};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug)]
pub struct LaurentSeries<C = RatFunc> {
    lo: i64,
    hi: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentSeries<C> {
    /// Series with `coeffs[i]` the coefficient of `ε^(lo+i)`, known up to
    /// `hi = lo + coeffs.len() − 1`.
    pub fn new(lo: i64, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow { lo, hi: lo - 1 });
        }
        let hi = lo + coeffs.len() as i64 - 1;
        Ok(LaurentSeries { lo, hi, coeffs })
    }

    /// Builds a series on `[lo, hi]` from a coefficient function.
    pub fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> C) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(LaurentSeries { lo, hi, coeffs: (lo..=hi).map(&mut f).collect() })
    }

    pub fn zero(lo: i64, hi: i64) -> Result<Self> {
        Self::from_fn(lo, hi, |_| C::zero())
    }

    /// A scalar embedded at the ambient precision `hi` (which must be ≥ 0).
    pub fn constant(c: C, hi: i64) -> Result<Self> {
        Self::from_fn(0, hi, |k| if k == 0 { c.clone() } else { C::zero() })
    }

    pub fn one(hi: i64) -> Result<Self> {
        Self::constant(C::one(), hi)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `ε^k`: zero below the window, `None` above it.
    pub fn get(&self, k: i64) -> Option<C> {
        if k > self.hi {
            None
        } else if k < self.lo {
            Some(C::zero())
        } else {
            Some(self.coeffs[(k - self.lo) as usize].clone())
        }
    }

    fn at(&self, k: i64) -> &C {
        &self.coeffs[(k - self.lo) as usize]
    }

    /// Exact coefficient of `ε^k` for `lo ≤ k ≤ hi`.
    pub fn coeff_at(&self, k: i64) -> Result<C> {
        if k < self.lo || k > self.hi {
            return Err(Error::OutOfWindow { k, lo: self.lo, hi: self.hi });
        }
        Ok(self.at(k).clone())
    }

    /// Lowest exponent with a non-zero coefficient, if any within the window.
    pub fn order(&self) -> Option<i64> {
        (self.lo..=self.hi).find(|&k| !self.at(k).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, C::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, C::sub)
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self> {
        // Disjoint windows mean one operand is entirely beyond the other's
        // precision; that is always a window-policy mistake upstream.
        if self.lo.max(rhs.lo) > self.hi.min(rhs.hi) {
            return Err(Error::EmptyWindow { lo: self.lo.max(rhs.lo), hi: self.hi.min(rhs.hi) });
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi.min(rhs.hi);
        let zero = C::zero();
        let pick = |s: &Self, k: i64| -> C {
            if k < s.lo {
                zero.clone()
            } else {
                s.at(k).clone()
            }
        };
        Self::from_fn(lo, hi, |k| op(&pick(self, k), &pick(rhs, k)))
    }

    /// Cauchy product on the window `[lo_a+lo_b, min(lo_a+hi_b, lo_b+hi_a)]`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let lo = self.lo + rhs.lo;
        let hi = (self.lo + rhs.hi).min(rhs.lo + self.hi);
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        let mut out = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ka = self.lo + i as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = ka + rhs.lo + j as i64;
                if k > hi {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let slot = &mut out[(k - lo) as usize];
                *slot = slot.add(&a.mul(b));
            }
        }
        Ok(LaurentSeries { lo, hi, coeffs: out })
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { lo: self.lo, hi: self.hi, coeffs: self.coeffs.iter().map(C::neg).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries { lo: self.lo, hi: self.hi, coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Minimal subtraction `P`: keeps `ε^k` for `k ≤ −1`, zeroes the rest,
    /// keeps the window.
    pub fn project_pole(&self) -> Self {
        self.mask(|k| k < 0)
    }

    /// The complementary projector `id − P`.
    pub fn project_power(&self) -> Self {
        self.mask(|k| k >= 0)
    }

    fn mask(&self, keep: impl Fn(i64) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if keep(self.lo + i as i64) { c.clone() } else { C::zero() })
            .collect();
        LaurentSeries { lo: self.lo, hi: self.hi, coeffs }
    }

    /// Narrows the precision to `hi` (no-op if already lower).
    pub fn truncate(&self, hi: i64) -> Result<Self> {
        if hi < self.lo {
            return Err(Error::EmptyWindow { lo: self.lo, hi });
        }
        let hi = hi.min(self.hi);
        Ok(LaurentSeries { lo: self.lo, hi, coeffs: self.coeffs[..(hi - self.lo + 1) as usize].to_vec() })
    }

    /// True when both series agree on every exponent that both determine.
    pub fn agrees_on_common_window(&self, other: &Self) -> bool {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo);
        (lo..=hi).all(|k| self.get(k) == other.get(k))
    }

    /// Renders the terms up to `ε^max_k` (default `hi`) followed by the
    /// order symbol.
    pub fn render(&self, max_k: Option<i64>) -> String {
        let top = max_k.map_or(self.hi, |m| m.min(self.hi));
        let mut out = String::new();
        for k in self.lo..=top {
            let c = self.at(k);
            if c.is_zero() {
                continue;
            }
            let (neg, body, plus_one) = match c.as_rational() {
                Some(q) => (q.is_negative(), q.abs().to_string(), q.is_one()),
                None => (false, format!("({c})"), false),
            };
            let term = match k {
                0 => body,
                _ => {
                    let power = if k == 1 { "e".to_string() } else { format!("e^{k}") };
                    if plus_one {
                        power
                    } else {
                        format!("{body}*{power}")
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O(e^{})", top + 1));
        out
    }
}

impl<C: Coefficient> PartialEq for LaurentSeries<C> {
    /// Same precision and the same coefficients, with zero padding below
    /// `lo` ignored.
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.agrees_on_common_window(other)
    }
}

impl<C: Coefficient> Eq for LaurentSeries<C> {}

impl<C: Coefficient> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

/// Scalar-coefficient convenience for tests and examples.
pub fn series_from_rationals(lo: i64, coeffs: &[Rational]) -> Result<LaurentSeries> {
    LaurentSeries::new(lo, coeffs.iter().cloned().map(RatFunc::constant).collect())
}
