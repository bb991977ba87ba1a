//! Renormalized multiple zeta values `gζ(s⃗)`.
//!
//! Non-positive arguments take the δ-limit of `ζ(s⃗ | |s⃗|+δ)` exactly.
//! Positive arguments are polynomials in `T` over convergent MZV symbols,
//! obtained by solving quasi-shuffle relations for leading ones.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Signed, Zero};

use crate::birkhoff::Birkhoff;
use crate::dseries::DeltaSeries;
use crate::error::{Error, Result};
use crate::exact::{binomial, mzv_numeric, rat, to_f64, zeta_np, Composition, Rational};
use crate::hopf::{quasi_shuffle, symmetrization_group, Direction, LetterPair, Word};
use crate::ratfunc::RatFunc;
use crate::zreg::WindowPolicy;

/// Largest depth accepted by the exact and symbolic evaluators.
pub const MAX_DEPTH: usize = 6;
/// Largest weight accepted for non-positive arguments of depth ≥ 2.
pub const MAX_WEIGHT: u64 = 16;
/// Largest weight accepted for a single non-positive argument.
pub const MAX_WEIGHT_DEPTH1: u64 = 64;

/// Smallest tolerance accepted by [`numeric_value`].
pub const MIN_NUMERIC_TOL: f64 = 1e-10;

/// Classifies an argument vector by sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    NonPositive,
    Positive,
}

pub fn signature(s: &[i64]) -> Result<Signature> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("empty argument vector".into()));
    }
    if s.iter().all(|&x| x <= 0) {
        Ok(Signature::NonPositive)
    } else if s.iter().all(|&x| x >= 1) {
        Ok(Signature::Positive)
    } else {
        Err(Error::UnsupportedSignature(Composition::new(s.to_vec())?.to_string()))
    }
}

fn check_nonpos_bounds(s: &[i64]) -> Result<()> {
    let depth = s.len();
    let weight: u64 = s.iter().map(|x| x.unsigned_abs()).sum();
    if depth > MAX_DEPTH {
        return Err(Error::BoundExceeded(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    let limit = if depth == 1 { MAX_WEIGHT_DEPTH1 } else { MAX_WEIGHT };
    if weight > limit {
        return Err(Error::BoundExceeded(format!("weight {weight} exceeds {limit} at depth {depth}")));
    }
    Ok(())
}

/// Largest δ order tried before giving up on resolving a limit.
const MAX_DELTA_PRECISION: i64 = 64;

/// Evaluator for renormalized values at non-positive arguments.
///
/// The δ-limit is taken by expanding every coefficient as an exact power
/// series in δ around 0 (see [`DeltaSeries`]), starting at one order per zero
/// entry and raising the order if the limit is not yet determined. Holds memo
/// caches, so it is not `Sync`; create one per worker thread.
#[derive(Debug, Default)]
pub struct Renormalizer {
    policy: WindowPolicy,
    engines: RefCell<BTreeMap<i64, Rc<Birkhoff<DeltaSeries>>>>,
}

impl Renormalizer {
    pub fn new(policy: WindowPolicy) -> Self {
        Renormalizer { policy, engines: RefCell::default() }
    }

    /// Uses the window margin from `MZV_WINDOW_MARGIN`.
    pub fn from_env() -> Result<Self> {
        Ok(Self::new(WindowPolicy::from_env()?))
    }

    pub fn policy(&self) -> WindowPolicy {
        self.policy
    }

    fn engine(&self, prec: i64) -> Rc<Birkhoff<DeltaSeries>> {
        self.engines
            .borrow_mut()
            .entry(prec)
            .or_insert_with(|| Rc::new(Birkhoff::with_delta_precision(prec)))
            .clone()
    }

    /// `gζ(s⃗) = lim_{δ→0⁺} ζ(s⃗ | |s⃗|+δ)` for `s⃗ ≤ 0`.
    pub fn gzeta_nonpos(&self, s: &[i64]) -> Result<Rational> {
        check_nonpos(s)?;
        let word = Word::with_delta_directions(s);
        let window = self.policy.window_for(&word);
        let mut prec = s.iter().filter(|&&x| x == 0).count() as i64;
        loop {
            let value = self.engine(prec).zeta_directional(&word, window)?;
            match value.value_at_zero() {
                Err(Error::DeltaPrecision { .. }) if prec < MAX_DELTA_PRECISION => {
                    prec = 2 * prec + 1;
                }
                other => return other,
            }
        }
    }

    /// Same limit computed in the field `ℚ(δ)` and evaluated at `δ = 0`.
    /// Much slower; kept as an independent check of [`Self::gzeta_nonpos`].
    pub fn gzeta_nonpos_field(&self, s: &[i64]) -> Result<Rational> {
        check_nonpos(s)?;
        let word = Word::with_delta_directions(s);
        Birkhoff::<RatFunc>::new()
            .zeta_directional(&word, self.policy.window_for(&word))?
            .eval_at_delta_zero()
    }

    /// `Σ_{σ∈Σ(s⃗)} ζ(s⃗ | σ(r⃗))` for concrete positive rational directions.
    pub fn gzeta_symmetrized(&self, s: &[i64], dirs: &[Rational]) -> Result<Rational> {
        if s.len() != dirs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} arguments but {} directions",
                s.len(),
                dirs.len()
            )));
        }
        check_nonpos(s)?;
        let group = symmetrization_group(s)?;
        let dirs = dirs.iter().cloned().map(Direction::constant).collect::<Result<Vec<_>>>()?;
        let engine = self.engine(0);
        let mut total = Rational::zero();
        for sigma in group.permutations() {
            let word =
                Word::new(s.iter().zip(&sigma).map(|(&x, &i)| LetterPair::new(x, dirs[i].clone())).collect());
            let value = engine.zeta_directional(&word, self.policy.window_for(&word))?;
            total += value.as_constant().expect("concrete directions give constants");
        }
        Ok(total)
    }
}

fn check_nonpos(s: &[i64]) -> Result<()> {
    if signature(s)? != Signature::NonPositive {
        return Err(Error::PositiveArgument(*s.iter().find(|&&x| x > 0).expect("positive")));
    }
    check_nonpos_bounds(s)
}

/// One-off [`Renormalizer::gzeta_nonpos`] honouring `MZV_WINDOW_MARGIN`.
pub fn gzeta_nonpos(s: &[i64]) -> Result<Rational> {
    Renormalizer::from_env()?.gzeta_nonpos(s)
}

/// One-off [`Renormalizer::gzeta_symmetrized`] honouring `MZV_WINDOW_MARGIN`.
pub fn gzeta_symmetrized(s: &[i64], dirs: &[Rational]) -> Result<Rational> {
    Renormalizer::from_env()?.gzeta_symmetrized(s, dirs)
}

/// The depth-two closed form for `gζ(s₁, s₂)`, `s₁, s₂ ≤ 0` not both zero.
pub fn z2_closed_form(s1: i64, s2: i64) -> Result<Rational> {
    for s in [s1, s2] {
        if s > 0 {
            return Err(Error::PositiveArgument(s));
        }
    }
    if s1 == 0 && s2 == 0 {
        return Err(Error::InvalidArgument("(0,0) is excluded from the closed form".into()));
    }
    let z = zeta_np;
    if s1 == 0 {
        return Ok(z(0) * z(s2) - z(s2 - 1));
    }
    let n = s1.unsigned_abs();
    let s = s1 + s2;
    let mut total = -z(s - 1) / Rational::from_integer((1 - s1).into());
    let ratio = rat(s, s1);
    for j in 0..=n {
        let c = Rational::from_integer(binomial(n, j));
        let j = j as i64;
        total += &c * z(-j) * z(s + j);
        // (−1)^{s+1−j} / (1 − s − j) · (s/s₁)^{s+j−1} · ζ(s−1)
        let sign = if (s + 1 - j).rem_euclid(2) == 0 { 1 } else { -1 };
        let e = s + j - 1;
        let power = if e >= 0 {
            num_traits::pow(ratio.clone(), e as usize)
        } else {
            num_traits::pow(ratio.recip(), e.unsigned_abs() as usize)
        };
        total += c * rat(sign, 1 - s - j) * power * z(s - 1);
    }
    Ok(total)
}

/// `gζ(s₁, s₂) = −ζ(s₁+s₂)/2` when `s₁+s₂` is negative and odd.
///
/// Fails at `s₂ = 0` with `s₁ < 0`: there the `j = −s₁` term of the
/// depth-two closed form carries `ζ(0) ≠ 0` and `gζ(s₁, 0) = −ζ(s₁)`, as the
/// quasi-shuffle relation with `gζ(0, s₁)` also forces. Such pairs are
/// rejected.
pub fn parity_identity(s1: i64, s2: i64) -> Result<Rational> {
    if s1 > 0 || s2 > 0 {
        return Err(Error::PositiveArgument(s1.max(s2)));
    }
    if s2 == 0 && s1 < 0 {
        return Err(Error::InvalidArgument(format!(
            "parity identity does not hold at ({s1},0); gzeta({s1},0) = -zeta({s1})"
        )));
    }
    let s = s1 + s2;
    if s >= 0 || s % 2 == 0 {
        return Err(Error::InvalidArgument(format!("parity identity needs a negative odd sum, got {s}")));
    }
    Ok(-zeta_np(s) / Rational::from_integer(2.into()))
}

/// A convergent MZV `ζ(s⃗)` kept as an opaque symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MzvSymbol(Composition);

impl MzvSymbol {
    pub fn new(c: Composition) -> Result<Self> {
        if !c.is_convergent() {
            return Err(Error::NotConvergent(c.to_string()));
        }
        Ok(MzvSymbol(c))
    }

    pub fn composition(&self) -> &Composition {
        &self.0
    }
}

impl fmt::Display for MzvSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

/// Key of one monomial: the power of `T` and an optional symbol (`None` is
/// the unit).
pub type Monomial = (u32, Option<MzvSymbol>);

/// An element of `ℚ[T]` tensored with the algebra of convergent MZV
/// symbols, with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicValue {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(0, None, c);
        v
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `T`.
    pub fn t() -> Self {
        let mut v = Self::zero();
        v.add_term(1, None, Rational::one());
        v
    }

    pub fn symbol(sym: MzvSymbol) -> Self {
        let mut v = Self::zero();
        v.add_term(0, Some(sym), Rational::one());
        v
    }

    pub fn add_term(&mut self, t_power: u32, sym: Option<MzvSymbol>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (t_power, sym);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t_power: u32, sym: Option<&MzvSymbol>) -> Rational {
        self.terms.get(&(t_power, sym.cloned())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn add(&self, other: &SymbolicValue) -> SymbolicValue {
        let mut out = self.clone();
        for ((p, s), c) in other.terms() {
            out.add_term(*p, s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymbolicValue) -> SymbolicValue {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        for ((p, s), c) in self.terms() {
            out.add_term(*p, s.clone(), c * k);
        }
        out
    }

    /// Multiplies by `T^e`.
    pub fn shift_t(&self, e: u32) -> SymbolicValue {
        SymbolicValue {
            terms: self.terms.iter().map(|((p, s), c)| ((p + e, s.clone()), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &SymbolicValue) -> SymbolicValue {
        symbolic_mul(self, other)
    }

    /// Substitutes `T` and numeric symbol values; each symbol receives an
    /// equal share of the error budget `tol`.
    pub fn numeric_value(&self, t_value: f64, tol: f64) -> Result<f64> {
        numeric_value(self, t_value, tol)
    }
}

impl fmt::Display for SymbolicValue {
    /// Terms by descending `T` degree, then symbols in lexicographic order,
    /// e.g. `1/2*T^2 - 1/2*z(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then_with(|| a.0 .1.cmp(&b.0 .1)));
        for (i, ((p, sym), c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            if let Some(s) = sym {
                factors.push(s.to_string());
            }
            match p {
                0 => {}
                1 => factors.push("T".into()),
                _ => factors.push(format!("T^{p}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Word over positive exponents with direction `rᵢ = sᵢ`.
fn positive_word(parts: &[i64]) -> Word {
    Word::new(
        parts
            .iter()
            .map(|&s| {
                LetterPair::new(s, Direction::constant(Rational::from_integer(s.into())).expect("s ≥ 1"))
            })
            .collect(),
    )
}

/// Stuffle product of two convergent symbols, expanded back into symbols.
fn symbol_product(a: &MzvSymbol, b: &MzvSymbol) -> SymbolicValue {
    let mut out = SymbolicValue::zero();
    for (w, c) in quasi_shuffle(&positive_word(a.0.parts()), &positive_word(b.0.parts())).terms() {
        // stuffles of words starting with s₁ ≥ 2 only start with s₁ ≥ 2
        let comp = Composition::new(w.exponents()).expect("non-empty");
        out.add_term(0, Some(MzvSymbol::new(comp).expect("convergent")), c.clone());
    }
    out
}

/// Product in which `T` is free and symbols multiply by quasi-shuffle.
pub fn symbolic_mul(a: &SymbolicValue, b: &SymbolicValue) -> SymbolicValue {
    let mut out = SymbolicValue::zero();
    for ((pa, sa), ca) in a.terms() {
        for ((pb, sb), cb) in b.terms() {
            let c = ca * cb;
            match (sa, sb) {
                (None, s) | (s, None) => out.add_term(pa + pb, s.clone(), c),
                (Some(x), Some(y)) => {
                    for ((_, s), k) in symbol_product(x, y).terms() {
                        out.add_term(pa + pb, s.clone(), &c * k);
                    }
                }
            }
        }
    }
    out
}

/// `gζ(s⃗)` for `s⃗ ≥ 1` as a polynomial in `T` over convergent symbols.
///
/// `s₁ ≥ 2` gives the bare symbol and `gζ(1) = T`. With `m` leading ones,
/// `u = s⃗` minus one leading 1 satisfies `u⧢(1) = m·s⃗ + R` where every word
/// in `R` has fewer leading ones, so
/// `gζ(s⃗) = (gζ(u)·T − Σ_{w∈R} c_w gζ(w)) / m`.
pub fn gzeta_positive(s: &[i64]) -> Result<SymbolicValue> {
    if signature(s)? != Signature::Positive {
        return Err(Error::UnsupportedSignature(Composition::new(s.to_vec())?.to_string()));
    }
    if s.len() > MAX_DEPTH {
        return Err(Error::BoundExceeded(format!("depth {} exceeds {MAX_DEPTH}", s.len())));
    }
    let mut memo = BTreeMap::new();
    positive_rec(s, &mut memo)
}

fn positive_rec(s: &[i64], memo: &mut BTreeMap<Vec<i64>, SymbolicValue>) -> Result<SymbolicValue> {
    if let Some(v) = memo.get(s) {
        return Ok(v.clone());
    }
    let value = if s[0] >= 2 {
        SymbolicValue::symbol(MzvSymbol::new(Composition::new(s.to_vec())?)?)
    } else if s == [1] {
        SymbolicValue::t()
    } else {
        let m = s.iter().take_while(|&&x| x == 1).count();
        let u = &s[1..];
        let mut acc = positive_rec(u, memo)?.shift_t(1);
        let target = positive_word(s);
        let mut seen = Rational::zero();
        for (w, c) in quasi_shuffle(&positive_word(u), &positive_word(&[1])).terms() {
            if *w == target {
                seen = c.clone();
                continue;
            }
            acc = acc.sub(&positive_rec(&w.exponents(), memo)?.scale(c));
        }
        debug_assert_eq!(seen, Rational::from_integer(m.into()));
        acc.scale(&Rational::from_integer(m.into()).recip())
    };
    memo.insert(s.to_vec(), value.clone());
    Ok(value)
}

/// Substitutes `T = t_value` and numerical MZVs. The absolute error budget
/// `tol` is split across symbols in proportion to their coefficients.
pub fn numeric_value(v: &SymbolicValue, t_value: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol < MIN_NUMERIC_TOL {
        return Err(Error::InvalidArgument(format!("tolerance {tol} is below {MIN_NUMERIC_TOL:e}")));
    }
    let weight: f64 = v
        .terms()
        .filter(|((_, s), _)| s.is_some())
        .map(|((p, _), c)| to_f64(c).abs() * t_value.abs().powi(*p as i32))
        .sum();
    let share = if weight > 0.0 { tol / weight } else { tol };
    let mut total = 0.0;
    for ((p, s), c) in v.terms() {
        let factor = to_f64(c) * t_value.powi(*p as i32);
        let base = match s {
            None => 1.0,
            Some(sym) => mzv_numeric(&sym.0, share)?,
        };
        total += factor * base;
    }
    Ok(total)
}

/// A renormalized value: exact for non-positive arguments, symbolic for
/// positive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GzetaValue {
    Exact(Rational),
    Symbolic(SymbolicValue),
}

impl fmt::Display for GzetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GzetaValue::Exact(q) => write!(f, "{q}"),
            GzetaValue::Symbolic(v) => write!(f, "{v}"),
        }
    }
}

/// `gζ(s⃗)` for either sign, rejecting mixed signs.
pub fn gzeta(s: &[i64]) -> Result<GzetaValue> {
    match signature(s)? {
        Signature::NonPositive => gzeta_nonpos(s).map(GzetaValue::Exact),
        Signature::Positive => gzeta_positive(s).map(GzetaValue::Symbolic),
    }
}
