use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::enumeration::Rat;
use crate::error::{Error, Result};

/// Sparse polynomial with integer coefficients in `dim` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(dim);
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(Error::InvalidDomain(format!(
                    "exponent vector {exps:?} has length {}, expected {dim}",
                    exps.len()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        let slot = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Convenience constructor from small coefficients.
    pub fn from_i64(dim: usize, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::from_terms(dim, terms.iter().map(|(c, e)| (e.to_vec(), BigInt::from(*c))))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.dim];
        for e in self.terms.keys() {
            for (di, &ei) in d.iter_mut().zip(e) {
                *di = (*di).max(ei);
            }
        }
        d
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim, "point dimension");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = Rat::from_integer(c.clone());
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= Pow::pow(xi, ei);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, x: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.dim, "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                x.iter().zip(e).fold(c.clone(), |acc, (xi, &ei)| acc * Pow::pow(xi, ei))
            })
            .sum()
    }

    pub fn constant(dim: usize, c: i64) -> Self {
        Self::from_terms(dim, [(vec![0; dim], BigInt::from(c))]).expect("matching dimension")
    }

    pub fn one(dim: usize) -> Self {
        Self::from_terms(dim, [(vec![0; dim], BigInt::one())]).expect("matching dimension")
    }
}
