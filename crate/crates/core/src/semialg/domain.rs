use num_traits::{One, Signed};

use super::poly::IntPolynomial;
use crate::enumeration::Rat;
use crate::error::{Error, Result};

/// `D = { x ∈ [0, r]^dim : G_k(x) > 0 for all k }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicDomain {
    dim: usize,
    box_scale: Rat,
    constraints: Vec<IntPolynomial>,
}

impl BasicDomain {
    pub fn new(dim: usize, box_scale: Rat, constraints: Vec<IntPolynomial>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDomain("dimension must be at least 1".into()));
        }
        if !box_scale.is_positive() {
            return Err(Error::InvalidDomain(format!("box scale {box_scale} must be positive")));
        }
        if constraints.is_empty() {
            return Err(Error::InvalidDomain("at least one constraint is required".into()));
        }
        if let Some((i, p)) = constraints.iter().enumerate().find(|(_, p)| p.dim() != dim) {
            return Err(Error::InvalidDomain(format!(
                "constraint {i} has dimension {}, expected {dim}",
                p.dim()
            )));
        }
        Ok(Self { dim, box_scale, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn box_scale(&self) -> &Rat {
        &self.box_scale
    }

    pub fn constraints(&self) -> &[IntPolynomial] {
        &self.constraints
    }

    /// Strict membership of a point, ignoring the bounding box.
    pub fn satisfies(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|g| g.eval(x).is_positive())
    }
}

/// The closed cube `Π_i [k_i r/n, (k_i + 1) r/n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridCube {
    pub n: u64,
    pub k: Vec<u64>,
}

impl GridCube {
    pub fn new(n: u64, k: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDomain("grid resolution must be at least 1".into()));
        }
        if let Some(&bad) = k.iter().find(|&&ki| ki >= n) {
            return Err(Error::InvalidDomain(format!("cube index {bad} outside 0..{n}")));
        }
        Ok(Self { n, k })
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// Side length `r / n`.
    pub fn side(&self, r: &Rat) -> Rat {
        r / Rat::from_integer(self.n.into())
    }

    /// Lower and upper corner coordinates per axis.
    pub fn bounds(&self, r: &Rat) -> Vec<(Rat, Rat)> {
        let h = self.side(r);
        self.k
            .iter()
            .map(|&ki| {
                let lo = &h * Rat::from_integer(ki.into());
                let hi = &lo + &h;
                (lo, hi)
            })
            .collect()
    }

    /// The `2^dim` cubes of the grid at `2n` covering this one.
    pub fn children(&self) -> Vec<GridCube> {
        let d = self.dim();
        (0..1u64 << d)
            .map(|mask| GridCube {
                n: self.n * 2,
                k: (0..d).map(|i| 2 * self.k[i] + ((mask >> (d - 1 - i)) & 1)).collect(),
            })
            .collect()
    }

    pub fn volume(&self, r: &Rat) -> Rat {
        let h = self.side(r);
        (0..self.dim()).fold(Rat::one(), |acc, _| acc * &h)
    }
}
