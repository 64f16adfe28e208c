//! Inner Riemann sums `vol(V_n)`: the total volume of grid cubes of side
//! `r/n` whose closure lies inside the domain.
//!
//! Containment of a closed cube is certified per constraint by positivity of
//! Bernstein coefficients, bisecting up to `max_depth` times. A corner with
//! `G_k <= 0` settles a cube as not contained immediately. Cubes that stay
//! undecided are reported and left out, so every sum is a lower bound.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use super::bernstein::{GridPoly, SignClass};
use super::domain::{BasicDomain, GridCube};
use crate::enumeration::Rat;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contained,
    NotContained,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    /// Deepest bisection level visited.
    pub depth_used: u32,
}

/// The domain's constraints prepared on the grids `n, 2n, ..., 2^max_depth n`.
#[derive(Debug)]
pub struct GridCertifier<'a> {
    domain: &'a BasicDomain,
    n: u64,
    max_depth: u32,
    /// `levels[d][j]` is constraint `j` on the grid `2^d n`.
    levels: Vec<Vec<GridPoly>>,
}

impl<'a> GridCertifier<'a> {
    pub fn new(domain: &'a BasicDomain, n: u64, max_depth: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDomain("grid resolution must be at least 1".into()));
        }
        let r = domain.box_scale();
        let levels = (0..=max_depth)
            .map(|d| {
                let m = n.checked_shl(d).filter(|m| m >> d == n).ok_or_else(|| {
                    Error::InvalidDomain(format!("grid {n} * 2^{d} overflows"))
                })?;
                Ok(domain.constraints().iter().map(|g| GridPoly::new(g, m, r)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { domain, n, max_depth, levels })
    }

    fn certify_one(&self, j: usize, depth: u32, k: &[u64]) -> Certificate {
        let class = self.levels[depth as usize][j].classify(k);
        self.resolve(j, depth, k, class)
    }

    fn resolve(&self, j: usize, depth: u32, k: &[u64], class: SignClass) -> Certificate {
        match class {
            SignClass::Positive => Certificate { verdict: Verdict::Contained, depth_used: depth },
            SignClass::CornerNonPositive | SignClass::NonPositive => {
                Certificate { verdict: Verdict::NotContained, depth_used: depth }
            }
            SignClass::Mixed if depth == self.max_depth => {
                Certificate { verdict: Verdict::Unknown, depth_used: depth }
            }
            SignClass::Mixed => {
                let dim = k.len();
                let mut all = true;
                let mut deepest = depth;
                for mask in 0..1u64 << dim {
                    let child: Vec<u64> =
                        (0..dim).map(|i| 2 * k[i] + ((mask >> (dim - 1 - i)) & 1)).collect();
                    let c = self.certify_one(j, depth + 1, &child);
                    deepest = deepest.max(c.depth_used);
                    match c.verdict {
                        Verdict::NotContained => {
                            return Certificate { verdict: Verdict::NotContained, depth_used: deepest }
                        }
                        Verdict::Unknown => all = false,
                        Verdict::Contained => {}
                    }
                }
                let verdict = if all { Verdict::Contained } else { Verdict::Unknown };
                Certificate { verdict, depth_used: deepest }
            }
        }
    }

    /// Verdict for the grid cube with index `k` on the base grid.
    pub fn certify(&self, k: &[u64]) -> Certificate {
        // all corner rejections before any bisection
        let classes: Vec<SignClass> = self.levels[0].iter().map(|g| g.classify(k)).collect();
        if classes.iter().any(|c| matches!(c, SignClass::CornerNonPositive | SignClass::NonPositive)) {
            return Certificate { verdict: Verdict::NotContained, depth_used: 0 };
        }
        let mut depth_used = 0;
        let mut unknown = false;
        for (j, &class) in classes.iter().enumerate() {
            let c = self.resolve(j, 0, k, class);
            depth_used = depth_used.max(c.depth_used);
            match c.verdict {
                Verdict::NotContained => return Certificate { verdict: Verdict::NotContained, depth_used },
                Verdict::Unknown => unknown = true,
                Verdict::Contained => {}
            }
        }
        let verdict = if unknown { Verdict::Unknown } else { Verdict::Contained };
        Certificate { verdict, depth_used }
    }

    fn index(&self, linear: u64) -> Vec<u64> {
        let dim = self.domain.dim();
        let mut k = vec![0; dim];
        let mut rest = linear;
        for i in (0..dim).rev() {
            k[i] = rest % self.n;
            rest /= self.n;
        }
        k
    }

    fn cell_count(&self) -> Result<u64> {
        let dim = u32::try_from(self.domain.dim()).unwrap_or(u32::MAX);
        self.n
            .checked_pow(dim)
            .ok_or_else(|| Error::InvalidDomain(format!("{}^{dim} grid cells overflow", self.n)))
    }
}

pub fn cube_contained(domain: &BasicDomain, cube: &GridCube, max_depth: u32) -> Result<Certificate> {
    if cube.dim() != domain.dim() {
        return Err(Error::InvalidDomain(format!(
            "cube has dimension {}, domain has {}",
            cube.dim(),
            domain.dim()
        )));
    }
    Ok(GridCertifier::new(domain, cube.n, max_depth)?.certify(&cube.k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannSum {
    /// `(r/n)^dim` times the number of certified cubes.
    pub volume: Rat,
    pub contained: u64,
    pub unknown_count: u64,
    pub n: u64,
}

/// `vol(V_n)`. Cubes are certified in parallel; the count is an exact,
/// order-independent sum.
pub fn riemann_volume(domain: &BasicDomain, n: u64, max_depth: u32) -> Result<RiemannSum> {
    let cert = GridCertifier::new(domain, n, max_depth)?;
    let cells = cert.cell_count()?;
    let (contained, unknown) = (0..cells)
        .into_par_iter()
        .map(|i| match cert.certify(&cert.index(i)).verdict {
            Verdict::Contained => (1u64, 0u64),
            Verdict::Unknown => (0, 1),
            Verdict::NotContained => (0, 0),
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let side = domain.box_scale() / Rat::from_integer(BigInt::from(n));
    let cell = (0..domain.dim()).fold(Rat::from_integer(1.into()), |acc, _| acc * &side);
    Ok(RiemannSum { volume: cell * Rat::from_integer(contained.into()), contained, unknown_count: unknown, n })
}

/// Grid cubes certified as contained, in index order.
pub fn contained_cubes(domain: &BasicDomain, n: u64, max_depth: u32) -> Result<Vec<GridCube>> {
    let cert = GridCertifier::new(domain, n, max_depth)?;
    let cells = cert.cell_count()?;
    Ok((0..cells)
        .into_par_iter()
        .filter_map(|i| {
            let k = cert.index(i);
            (cert.certify(&k).verdict == Verdict::Contained).then_some(GridCube { n, k })
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub value: Rat,
    pub n_used: u64,
    pub unknown_count: u64,
    /// Every grid evaluated, coarsest first.
    pub history: Vec<RiemannSum>,
}

/// Doubles the grid from `n0` until two successive sums differ by less than
/// `tol / 2`, returning the finer one.
pub fn approximate_volume(
    domain: &BasicDomain,
    tol: &Rat,
    n0: u64,
    max_n: u64,
    max_depth: u32,
) -> Result<Approximation> {
    if !tol.is_positive() {
        return Err(Error::InvalidDomain(format!("tolerance {tol} must be positive")));
    }
    if n0 == 0 || n0 > max_n {
        return Err(Error::InvalidDomain(format!("start grid {n0} must lie in 1..={max_n}")));
    }
    let half_tol = tol / Rat::from_integer(2.into());
    let mut history = vec![riemann_volume(domain, n0, max_depth)?];
    loop {
        let prev = history.last().expect("non-empty");
        let n = prev.n * 2;
        if n > max_n {
            return Err(Error::NoConvergenceAtBudget { max_n });
        }
        let cur = riemann_volume(domain, n, max_depth)?;
        let gap = (&cur.volume - &prev.volume).abs();
        history.push(cur);
        if gap < half_tol {
            let last = history.last().expect("non-empty");
            return Ok(Approximation {
                value: last.volume.clone(),
                n_used: last.n,
                unknown_count: last.unknown_count,
                history,
            });
        }
    }
}
