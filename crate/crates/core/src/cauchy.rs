//! Fast rational Cauchy sequences.
//!
//! A sequence `g: N -> Q` is fast when `|g(i) - g(i+1)| < 7^-(i+1)` for all
//! `i`. The enforcement operator freezes `g` at the first index where this
//! fails, which turns every enumerated `g_e` into a fast sequence `ḡ_e`; its
//! limit is `β_e` and `|ḡ_e(n) - β_e| < 1 / (6 · 7^n)`.
//!
//! Under [`ZeroPow::Indeterminate`](crate::ZeroPow) a term may have no value.
//! A step touching such a term cannot be certified fast, so it truncates like
//! a violation; when the frozen term itself has no value the whole sequence
//! is indeterminate and defines no real.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};

use crate::elem_expr::{Budget, ElemExpr, Nat};
use crate::enumeration::{Code, Enumeration, Rat};
use crate::error::{Error, Result};

/// `7^k` as an exact rational denominator.
pub fn pow7(k: u64) -> BigInt {
    Pow::pow(BigInt::from(7u32), k)
}

/// `|a - b| < 7^-(i+1)`, decided exactly.
pub fn is_fast_step(a: &Rat, b: &Rat, i: u64) -> bool {
    let d = (a - b).abs();
    // d < 1/7^(i+1)  <=>  d.numer * 7^(i+1) < d.denom
    d.numer() * pow7(i + 1) < *d.denom()
}

/// `1 / (6 · 7^n)`
pub fn beta_radius(n: u64) -> Rat {
    Rat::new(BigInt::one(), pow7(n) * 6)
}

/// An exact rational with an error radius: the real lies in the open
/// interval `(value - radius, value + radius)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealApprox {
    pub value: Rat,
    pub radius: Rat,
}

impl RealApprox {
    pub fn lower(&self) -> Rat {
        &self.value - &self.radius
    }

    pub fn upper(&self) -> Rat {
        &self.value + &self.radius
    }
}

/// The enforced sequence `ḡ_e`, with the inspected prefix of `g_e` cached.
#[derive(Debug)]
pub struct FastSeq<'a> {
    enumeration: &'a Enumeration,
    source: Code,
    budget: Budget,
    /// `g_e(0..)`; `None` marks an indeterminate term.
    values: Vec<Option<Rat>>,
    /// Number of adjacent pairs `(i, i+1)` already checked.
    checked: u64,
    truncation: Option<u64>,
}

impl<'a> FastSeq<'a> {
    pub fn new(enumeration: &'a Enumeration, source: Code, budget: Budget) -> Self {
        Self { enumeration, source, budget, values: Vec::new(), checked: 0, truncation: None }
    }

    pub fn source(&self) -> Code {
        self.source
    }

    /// The least violating index among the inspected prefix, if any.
    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    /// `g_e(i)`, cached.
    fn raw(&mut self, i: u64) -> Result<Option<Rat>> {
        while self.values.len() as u64 <= i {
            let n = self.values.len() as u64;
            let v = match self.enumeration.g(self.source, n, &self.budget) {
                Ok(v) => Some(v),
                Err(Error::Indeterminate) => None,
                Err(e) => return Err(e),
            };
            self.values.push(v);
        }
        Ok(self.values[i as usize].clone())
    }

    /// Scans pairs up to `(n-1, n)` unless truncation is already known.
    fn scan_to(&mut self, n: u64) -> Result<()> {
        while self.truncation.is_none() && self.checked < n {
            let i = self.checked;
            let a = self.raw(i)?;
            let b = self.raw(i + 1)?;
            let fast = match (a, b) {
                (Some(a), Some(b)) => is_fast_step(&a, &b, i),
                _ => false,
            };
            if !fast {
                self.truncation = Some(i);
            }
            self.checked += 1;
        }
        Ok(())
    }

    /// `ḡ_e(n)`. Fails with [`Error::Indeterminate`] when the sequence has
    /// no value at `n`.
    pub fn value(&mut self, n: u64) -> Result<Rat> {
        self.scan_to(n)?;
        let at = match self.truncation {
            Some(n0) if n0 < n => n0,
            _ => n,
        };
        self.raw(at)?.ok_or(Error::Indeterminate)
    }

    pub fn beta(&mut self, n: u64) -> Result<RealApprox> {
        Ok(RealApprox { value: self.value(n)?, radius: beta_radius(n) })
    }
}

/// `ḡ_e(n)`.
pub fn enforce(enumeration: &Enumeration, e: Code, n: u64, budget: &Budget) -> Result<Rat> {
    FastSeq::new(enumeration, e, *budget).value(n)
}

/// `β_e` to within `1 / (6 · 7^n)`.
pub fn beta(enumeration: &Enumeration, e: Code, n: u64, budget: &Budget) -> Result<RealApprox> {
    FastSeq::new(enumeration, e, *budget).beta(n)
}

/// `a(c(8^{x+1})) / (b(c(8^{x+1})) + 1)`.
///
/// When `|a(k')/(b(k')+1) - α| < 1/k` for all `k' >= c(k)`, this sequence
/// satisfies `|value(x) - α| < 8^-(x+1)` and is fast.
pub fn reindex_fast(a: &ElemExpr, b: &ElemExpr, c: &ElemExpr, x: u64, budget: &Budget) -> Result<Rat> {
    for f in [a, b, c] {
        if f.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: f.arity() });
        }
    }
    let x = u32::try_from(x).map_err(|_| Error::BudgetExceeded {
        resource: crate::error::Resource::Bits,
        limit: budget.max_bits,
    })?;
    let k: Nat = Pow::pow(Nat::from(8u32), x + 1);
    let m = c.eval(&[k], budget)?;
    let num = a.eval(std::slice::from_ref(&m), budget)?;
    let den = b.eval(&[m], budget)? + 1u32;
    Ok(Rat::new(num.into(), den.into()))
}
