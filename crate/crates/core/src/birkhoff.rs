//! Algebraic Birkhoff decomposition of the regularized character `Z` with
//! respect to minimal subtraction: the counterterm `φ₋`, the renormalized
//! part `φ₊`, and the renormalized directional values `ζ(s⃗|r⃗) = φ₊|_{ε=0}`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::coeff::Coefficient;
use crate::error::Result;
use crate::hopf::{reduced_deconcat, Word};
use crate::laurent::LaurentSeries;
use crate::ratfunc::RatFunc;
use crate::zreg::{RegularizedZ, Window};

/// Both halves of the decomposition evaluated on one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffResult<C: Coefficient = RatFunc> {
    pub minus: LaurentSeries<C>,
    pub plus: LaurentSeries<C>,
}

/// An ordered partition `(i₁, …, i_p)` of `k` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    pub parts: Vec<usize>,
}

/// All `2^{k−1}` ordered partitions of `k ≥ 1`, in binary-counter order.
pub fn ordered_partitions(k: usize) -> Vec<OrderedPartition> {
    if k == 0 {
        return Vec::new();
    }
    (0..1u64 << (k - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..k - 1 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            OrderedPartition { parts }
        })
        .collect()
}

/// Memoized Birkhoff decomposition over an owned [`RegularizedZ`].
///
/// Not `Sync`; use one engine per worker thread.
#[derive(Debug)]
pub struct Birkhoff<C = RatFunc> {
    z: RegularizedZ<C>,
    minus: RefCell<HashMap<(Word, i64), LaurentSeries<C>>>,
}

impl<C: Coefficient> Default for Birkhoff<C> {
    fn default() -> Self {
        Self::with_delta_precision(0)
    }
}

impl<C: Coefficient> Birkhoff<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// See [`RegularizedZ::with_delta_precision`].
    pub fn with_delta_precision(prec: i64) -> Self {
        Birkhoff { z: RegularizedZ::with_delta_precision(prec), minus: RefCell::new(HashMap::new()) }
    }

    pub fn regularized(&self) -> &RegularizedZ<C> {
        &self.z
    }

    /// `Z(x) + Σ_{(x)} φ₋(x′)·Z(x″)` over the proper splits of `x`.
    fn prepared(&self, word: &Word, window: Window) -> Result<LaurentSeries<C>> {
        let mut acc = self.z.z_nonpos(word, window)?;
        for (left, right) in reduced_deconcat(word) {
            let term = self.phi_minus(&left, window)?.mul(&self.z.z_nonpos(&right, window)?)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `φ₋(x) = −P(Z(x) + Σ φ₋(x′)Z(x″))`; the unit maps to 1.
    pub fn phi_minus(&self, word: &Word, window: Window) -> Result<LaurentSeries<C>> {
        if word.is_empty() {
            return LaurentSeries::one(window.hi.max(0));
        }
        let key = (word.clone(), window.hi);
        if let Some(v) = self.minus.borrow().get(&key) {
            return Ok(v.clone());
        }
        let out = self.prepared(word, window)?.project_pole().neg();
        self.minus.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// `φ₊(x) = (id − P)(Z(x) + Σ φ₋(x′)Z(x″))`; the unit maps to 1.
    pub fn phi_plus(&self, word: &Word, window: Window) -> Result<LaurentSeries<C>> {
        if word.is_empty() {
            return LaurentSeries::one(window.hi.max(0));
        }
        Ok(self.prepared(word, window)?.project_power())
    }

    pub fn decompose(&self, word: &Word, window: Window) -> Result<BirkhoffResult<C>> {
        Ok(BirkhoffResult { minus: self.phi_minus(word, window)?, plus: self.phi_plus(word, window)? })
    }

    /// `φ₊` from the ordered-partition sum
    /// `Σ P̃(Z(s⃗⁽ᵖ⁾)·P̌(Z(s⃗⁽ᵖ⁻¹⁾)⋯P̌(Z(s⃗⁽¹⁾))⋯))` with `P̌ = −P`,
    /// `P̃ = id − P`. Exponential in depth; kept as a cross-check.
    pub fn phi_plus_closed(&self, word: &Word, window: Window) -> Result<LaurentSeries<C>> {
        if word.is_empty() {
            return LaurentSeries::one(window.hi.max(0));
        }
        let mut total: Option<LaurentSeries<C>> = None;
        for partition in ordered_partitions(word.depth()) {
            let mut blocks = Vec::with_capacity(partition.parts.len());
            let mut start = 0;
            for &len in &partition.parts {
                blocks.push(Word::new(word.letters()[start..start + len].to_vec()));
                start += len;
            }
            let mut acc = self.z.z_nonpos(&blocks[0], window)?;
            for block in &blocks[1..] {
                acc = acc.project_pole().neg().mul(&self.z.z_nonpos(block, window)?)?;
            }
            let term = acc.project_power();
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term)?,
            });
        }
        Ok(total.expect("k ≥ 1 has a partition"))
    }

    /// `ζ(s⃗|r⃗)`: the `ε⁰` coefficient of `φ₊`, a rational function of δ.
    pub fn zeta_directional(&self, word: &Word, window: Window) -> Result<C> {
        if word.is_empty() {
            return Ok(C::one());
        }
        self.phi_plus(word, window)?.coeff_at(0)
    }
}

/// Shorthand for a one-off evaluation with a fresh engine.
pub fn zeta_directional(word: &Word, window: Window) -> Result<RatFunc> {
    Birkhoff::<RatFunc>::new().zeta_directional(word, window)
}
