//! The diagonal real `α = Σ 2ε_i / 3^i`.
//!
//! Each bit `ε_{n+1}` is chosen by comparing `ḡ_n(n)` with the midpoint
//! `α_n + 1/(2·3^n)` of the remaining enclosure, which keeps `α` away from
//! every `β_n`. Everything is exact; no bit is ever guessed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::cauchy::enforce;
use crate::elem_expr::Budget;
use crate::enumeration::{Code, Enumeration, Rat};
use crate::error::{Error, Result};

fn pow3(k: u64) -> BigInt {
    Pow::pow(BigInt::from(3u32), k)
}

/// `3^-k`
pub fn third_power(k: u64) -> Rat {
    Rat::new(BigInt::one(), pow3(k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalState {
    epsilons: Vec<u8>,
    alpha: Rat,
}

impl Default for DiagonalState {
    fn default() -> Self {
        Self { epsilons: Vec::new(), alpha: Rat::zero() }
    }
}

impl DiagonalState {
    pub fn n(&self) -> u64 {
        self.epsilons.len() as u64
    }

    pub fn epsilons(&self) -> &[u8] {
        &self.epsilons
    }

    /// `α_n`
    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// `[α_n, α_n + 3^-n]`
    pub fn interval(&self) -> (Rat, Rat) {
        (self.alpha.clone(), &self.alpha + third_power(self.n()))
    }

    /// Decides `ε_{n+1}` and returns the state at `n + 1`.
    ///
    /// `ε_{n+1} = 0` iff `ḡ_n(n) > α_n + 1/(2·3^n)`. When `ḡ_n(n)` has no
    /// value the comparison does not hold and the bit is 1.
    pub fn step(&self, enumeration: &Enumeration, budget: &Budget) -> Result<DiagonalState> {
        let n = self.n();
        let threshold = &self.alpha + Rat::new(BigInt::one(), pow3(n) * 2);
        let bit = match enforce(enumeration, Code(n), n, budget) {
            Ok(v) => u8::from(v <= threshold),
            Err(Error::Indeterminate) => 1,
            Err(e) => return Err(e),
        };
        let mut epsilons = self.epsilons.clone();
        epsilons.push(bit);
        let alpha = &self.alpha + Rat::new(BigInt::from(2 * bit), pow3(n + 1));
        Ok(DiagonalState { epsilons, alpha })
    }

    fn push(&mut self, enumeration: &Enumeration, budget: &Budget) -> Result<()> {
        *self = self.step(enumeration, budget)?;
        Ok(())
    }
}

/// A diagonal construction over a fixed enumeration and budget.
#[derive(Debug)]
pub struct Diagonal {
    enumeration: Enumeration,
    budget: Budget,
    state: DiagonalState,
}

impl Diagonal {
    pub fn new(enumeration: Enumeration, budget: Budget) -> Self {
        Self { enumeration, budget, state: DiagonalState::default() }
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Advances until at least `n` bits are known.
    pub fn state_at(&mut self, n: u64) -> Result<&DiagonalState> {
        while self.state.n() < n {
            self.state.push(&self.enumeration, &self.budget)?;
        }
        Ok(&self.state)
    }

    /// `ε_1..ε_count`
    pub fn epsilons(&mut self, count: u64) -> Result<Vec<u8>> {
        Ok(self.state_at(count)?.epsilons()[..count as usize].to_vec())
    }

    /// `α_n` from the first `n` bits.
    pub fn alpha_n(&mut self, n: u64) -> Result<Rat> {
        let eps = self.epsilons(n)?;
        Ok(eps
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .fold(Rat::zero(), |acc, (i, _)| acc + Rat::new(BigInt::from(2), pow3(i as u64 + 1))))
    }

    /// `[α_n, α_n + 3^-n]`, both ends exact.
    pub fn alpha_interval(&mut self, n: u64) -> Result<(Rat, Rat)> {
        let lo = self.alpha_n(n)?;
        let hi = &lo + third_power(n);
        Ok((lo, hi))
    }

    /// First `count` decimal digits of `α/2 = Σ ε_i 3^-i`, with the default
    /// cap of `4·count + 16` ternary terms.
    pub fn half_alpha_digits(&mut self, count: usize) -> Result<String> {
        self.half_alpha_digits_with(count, 4 * count + 16)
    }

    /// Emits digits only once the enclosure `[S_N, S_N + 3^-N / 2]` pins all
    /// of them down, raising `N` up to `max_terms`.
    pub fn half_alpha_digits_with(&mut self, count: usize, max_terms: usize) -> Result<String> {
        if count == 0 {
            return Err(Error::Format {
                context: "half_alpha_digits".into(),
                message: "digit count must be at least 1".into(),
            });
        }
        let scale = Pow::pow(BigInt::from(10u32), count as u64);
        // about log_3(10) ternary terms per decimal digit
        let first = (count * 21 / 10).min(max_terms);
        let mut partial = Rat::zero();
        let mut summed = 0usize;
        let mut last_split = 0usize;
        for terms in first..=max_terms {
            let eps = self.epsilons(terms as u64)?;
            while summed < terms {
                if eps[summed] == 1 {
                    partial += third_power(summed as u64 + 1);
                }
                summed += 1;
            }
            let lo = &partial;
            let hi = lo + third_power(terms as u64) / Rat::from_integer(2.into());
            let lo_digits = (lo.numer() * &scale).div_floor(lo.denom());
            let hi_digits = (hi.numer() * &scale).div_floor(hi.denom());
            if lo_digits == hi_digits {
                return Ok(format!("{:0>width$}", lo_digits.to_string(), width = count));
            }
            let a = format!("{:0>width$}", lo_digits.to_string(), width = count);
            let b = format!("{:0>width$}", hi_digits.to_string(), width = count);
            last_split = a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count() + 1;
        }
        Err(Error::AmbiguousAtBudget { digit: last_split, max_terms })
    }
}

impl Default for Diagonal {
    fn default() -> Self {
        Self::new(Enumeration::default(), Budget::default())
    }
}
