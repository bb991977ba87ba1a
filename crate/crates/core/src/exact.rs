//! Exact scalars: rationals, Bernoulli numbers, `ζ` at non-positive
//! integers, and a double-precision evaluator for convergent MZVs.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// A non-empty argument vector `(s₁, …, s_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("empty argument vector".into()));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|s| s.unsigned_abs()).sum()
    }

    /// True iff the nested sum converges: every part ≥ 1 and `s₁ ≥ 2`.
    pub fn is_convergent(&self) -> bool {
        self.parts[0] >= 2 && self.parts.iter().all(|&s| s >= 1)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_n` in the convention `ε/(e^ε − 1) = Σ B_i εⁱ/i!`,
/// so `B₁ = −1/2`.
///
/// Values are memoized in a process-wide table and extended on demand by
/// the recurrence `Σ_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len() as u64;
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(m + 1, k as u64)) * b;
            }
        }
        let next = -acc / Rational::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[n].clone()
}

/// `ζ(s)` for `s ≤ 0`, via `ζ(−i) = (−1)^i B_{i+1}/(i+1)`.
pub fn zeta_nonpositive(s: i64) -> Result<Rational> {
    if s > 0 {
        return Err(Error::PositiveArgument(s));
    }
    let i = s.unsigned_abs();
    let b = bernoulli(i as usize + 1) / int(i as i64 + 1);
    Ok(if i.is_multiple_of(2) { b } else { -b })
}

pub(crate) fn zeta_np(s: i64) -> Rational {
    zeta_nonpositive(s).expect("argument is non-positive")
}

/// Largest outer cutoff tried before giving up on certifying a tolerance.
const MAX_CUTOFF: u64 = 1 << 26;

/// Numerically evaluates the convergent nested sum
/// `Σ_{n₁>…>n_k>0} Π n_i^{−s_i}` to absolute error `tol`.
///
/// The inner sums are accumulated exactly up to an outer cutoff `N`; the
/// outer tail is estimated by `f(N+1)·Σ_{n>N} n^{−s₁}` with the power sum
/// taken from Euler–Maclaurin. `N` is the smallest power of two whose
/// certified tail bound (plus a rounding allowance) is within `tol`.
pub fn mzv_numeric(c: &Composition, tol: f64) -> Result<f64> {
    if !c.is_convergent() {
        return Err(Error::NotConvergent(c.to_string()));
    }
    if tol.is_nan() || tol < 1e-12 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} is below the supported floor 1e-12")));
    }
    let parts = c.parts();
    let mut n = 64u64;
    loop {
        let bound = tail_bound(parts, n) + rounding_allowance(parts, n);
        if bound <= tol {
            break;
        }
        n *= 2;
        if n > MAX_CUTOFF {
            return Err(Error::NumericFailure(format!(
                "cannot certify tolerance {tol} for z{c} within {MAX_CUTOFF} terms"
            )));
        }
    }
    Ok(nested_head_with_tail(parts, n))
}

/// Head sum over `n₁ ≤ cutoff` plus the first-order tail estimate.
fn nested_head_with_tail(parts: &[i64], cutoff: u64) -> f64 {
    let k = parts.len();
    // acc[j] = Σ_{n > n_j > … > n_k > 0} Π_{i ≥ j} n_i^{-s_i} for the current n.
    let mut acc = vec![0.0f64; k + 1];
    let mut comp = vec![0.0f64; k + 1];
    acc[k] = 1.0;
    for n in 1..=cutoff {
        let x = n as f64;
        for j in 0..k {
            let term = acc[j + 1] * x.powi(-(parts[j] as i32));
            // Kahan step
            let y = term - comp[j];
            let t = acc[j] + y;
            comp[j] = (t - acc[j]) - y;
            acc[j] = t;
        }
    }
    let inner = if k == 1 { 1.0 } else { acc[1] };
    acc[0] + inner * power_tail(parts[0], cutoff)
}

/// `Σ_{n > N} n^{−s}` for `s ≥ 2` by Euler–Maclaurin with three Bernoulli
/// corrections.
fn power_tail(s: i64, cutoff: u64) -> f64 {
    let s = s as f64;
    let x = cutoff as f64;
    let f = x.powf(-s);
    let integral = x.powf(1.0 - s) / (s - 1.0);
    // f'(x) = -s x^{-s-1}, f'''(x) = -s(s+1)(s+2) x^{-s-3}, f^(5) likewise.
    let d1 = -s * x.powf(-s - 1.0);
    let d3 = -s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0);
    let d5 = -s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * x.powf(-s - 5.0);
    let from_n = integral + f / 2.0 - d1 / 12.0 + d3 / 720.0 - d5 / 30240.0;
    from_n - f
}

/// Certified bound on the outer-tail error at cutoff `N`.
fn tail_bound(parts: &[i64], cutoff: u64) -> f64 {
    let s1 = parts[0] as f64;
    let x = cutoff as f64;
    let k = parts.len();
    // Euler–Maclaurin remainder after the f^(5) term, times max f.
    let log1 = 1.0 + x.ln();
    let em_rem = (1..=7).map(|i| s1 + i as f64 - 1.0).product::<f64>() * x.powf(-s1 - 7.0) / 1209600.0 * 2.0;
    let inner_max = log1.powi(k as i32 - 1);
    let mut bound = em_rem * inner_max;
    if k >= 2 {
        // Σ_{n>N} n^{-s1} (f(n) − f(N+1)) ≤ Σ_{n>N} n^{-s1} (1 + ln n)^{k-2} ln(n/N),
        // bounded by the integral (closed form after x = N e^t) plus the
        // maximum of the summand.
        let p = (k - 2) as i32;
        let a = s1 - 1.0;
        let mut integral = 0.0;
        for j in 0..=p {
            let c = binom_f64(p as u64, j as u64);
            let fact = (1..=(j + 1)).map(|i| i as f64).product::<f64>();
            integral += c * log1.powi(p - j) * fact / a.powi(j + 2);
        }
        integral *= x.powf(1.0 - s1);
        let peak = x.powf(-s1) * (2.0 / (s1 * std::f64::consts::E)) * (log1 + 2.0 * p as f64 / s1).powi(p);
        bound += integral + peak;
    }
    bound
}

fn rounding_allowance(parts: &[i64], cutoff: u64) -> f64 {
    let log1 = 1.0 + (cutoff as f64).ln();
    4.0 * f64::EPSILON * parts.len() as f64 * log1.powi(parts.len() as i32)
}

fn binom_f64(n: u64, k: u64) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Lossy conversion of an exact rational to `f64`.
pub fn to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        return v;
    }
    // Scale huge numerators/denominators down to keep the ratio finite.
    let n = q.numer().abs().bits() as i64;
    let d = q.denom().bits() as i64;
    let shift = (n.max(d) - 1000).max(0) as usize;
    let num = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let den = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: invert the series `(e^ε − 1)/ε = Σ εⁱ/(i+1)!`.
    fn bernoulli_by_series_inversion(max: usize) -> Vec<Rational> {
        let a: Vec<Rational> =
            (0..=max).map(|i| Rational::new(BigInt::one(), factorial(i as u64 + 1))).collect();
        let mut inv = vec![Rational::zero(); max + 1];
        inv[0] = Rational::one();
        for n in 1..=max {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += &a[k] * &inv[n - k];
            }
            inv[n] = -acc;
        }
        inv.into_iter().enumerate().map(|(i, c)| c * Rational::from_integer(factorial(i as u64))).collect()
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_series_inversion() {
        let oracle = bernoulli_by_series_inversion(40);
        for (n, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(n), b, "B_{n}");
        }
    }

    #[test]
    fn bernoulli_recurrence_and_odd_vanishing() {
        for n in 1..=40u64 {
            let s: Rational =
                (0..=n).map(|k| Rational::from_integer(binomial(n + 1, k)) * bernoulli(k as usize)).sum();
            assert!(s.is_zero(), "recurrence fails at n = {n}");
        }
        for n in (3..=41).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn zeta_at_nonpositive_integers() {
        assert_eq!(zeta_nonpositive(0).unwrap(), rat(-1, 2));
        assert_eq!(zeta_nonpositive(-1).unwrap(), rat(-1, 12));
        assert_eq!(zeta_nonpositive(-2).unwrap(), int(0));
        assert_eq!(zeta_nonpositive(-3).unwrap(), rat(1, 120));
        assert_eq!(zeta_nonpositive(-11).unwrap(), rat(691, 32760));
        for s in (-30..=-2).step_by(2) {
            assert!(zeta_nonpositive(s).unwrap().is_zero());
        }
        assert_eq!(zeta_nonpositive(1), Err(Error::PositiveArgument(1)));
    }

    #[test]
    fn composition_convergence() {
        assert!(Composition::new(vec![2, 1]).unwrap().is_convergent());
        assert!(!Composition::new(vec![1, 2]).unwrap().is_convergent());
        assert!(!Composition::new(vec![3, 0]).unwrap().is_convergent());
        assert!(Composition::new(vec![]).is_err());
    }

    /// Direct Σ 1/n^s with the integral tail bound, as an oracle.
    fn direct_zeta(s: i32) -> f64 {
        let n = 2_000_000u64;
        let head: f64 = (1..=n).rev().map(|k| (k as f64).powi(-s)).sum();
        let tail = (n as f64 + 0.5).powi(1 - s) / (s as f64 - 1.0);
        head + tail
    }

    #[test]
    fn numeric_depth_one() {
        let tol = 1e-10;
        let z2 = mzv_numeric(&Composition::new(vec![2]).unwrap(), tol).unwrap();
        let z3 = mzv_numeric(&Composition::new(vec![3]).unwrap(), tol).unwrap();
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < tol);
        assert!((z2 - direct_zeta(2)).abs() < 1e-9);
        assert!((z3 - direct_zeta(3)).abs() < 1e-9);
        assert!((z3 - 1.2020569031595942).abs() < tol);
    }

    #[test]
    fn numeric_euler_identity() {
        let tol = 1e-7;
        let z21 = mzv_numeric(&Composition::new(vec![2, 1]).unwrap(), tol).unwrap();
        let z3 = mzv_numeric(&Composition::new(vec![3]).unwrap(), tol).unwrap();
        assert!((z21 - z3).abs() <= 2.0 * tol, "{z21} vs {z3}");
    }

    #[test]
    fn numeric_rejects_divergent_and_tiny_tol() {
        let c = Composition::new(vec![1, 2]).unwrap();
        assert!(matches!(mzv_numeric(&c, 1e-6), Err(Error::NotConvergent(_))));
        let c = Composition::new(vec![2]).unwrap();
        assert!(matches!(mzv_numeric(&c, 1e-13), Err(Error::InvalidArgument(_))));
        // The (2,1) tail decays like 1/N, so 1e-12 cannot be certified.
        let c = Composition::new(vec![2, 1]).unwrap();
        assert!(matches!(mzv_numeric(&c, 1e-12), Err(Error::NumericFailure(_))));
    }
}
