//! Tensor-product Bernstein coefficients of an integer polynomial on a grid
//! cube.
//!
//! On the cube with lower corner `k·h` and side `h = P/Q`, substitute
//! `x_i = h (k_i + t_i)` with `t ∈ [0,1]^dim` and clear denominators by the
//! positive factor `Q^D` (`D` the total degree). The resulting integer
//! power-basis coefficients `c_M` map to scaled Bernstein coefficients
//!
//! ```text
//! b'_I = Σ_{M <= I} Π_i C(d_i - M_i, I_i - M_i) c_M,   b_I = b'_I / (Q^D Π_i C(d_i, I_i))
//! ```
//!
//! so signs can be read off integers. Arithmetic runs in checked `i128`
//! first and falls back to `BigInt` on overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};

use super::domain::GridCube;
use super::poly::IntPolynomial;
use crate::enumeration::Rat;

trait Coeff: Clone {
    fn zero() -> Self;
    fn from_u64(v: u64) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sign(&self) -> Ordering;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(i128::from(v))
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(BigInt::from(v))
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sign(&self) -> Ordering {
        self.sign().cmp(&num_bigint::Sign::NoSign)
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}

/// Sign pattern of the Bernstein coefficients on one cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    /// Every coefficient is positive: the polynomial is positive on the
    /// closed cube.
    Positive,
    /// Some corner value is `<= 0`.
    CornerNonPositive,
    /// Every coefficient is `<= 0`: the polynomial is `<= 0` on the cube.
    NonPositive,
    Mixed,
}

/// A polynomial prepared for repeated evaluation on the cubes of one grid.
#[derive(Debug, Clone)]
pub struct GridPoly {
    dim: usize,
    degrees: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
    /// `(exponents, a_J P^|J| Q^(D-|J|))`
    terms: Vec<(Vec<u32>, BigInt)>,
    small_terms: Option<Vec<(Vec<u32>, i128)>>,
    /// Positive factor `Q^D` relating scaled values to true values.
    denom: BigInt,
    corners: Vec<usize>,
}

impl GridPoly {
    /// Prepares `p` for the grid of `n` cells per axis on `[0, r]^dim`.
    pub fn new(p: &IntPolynomial, n: u64, r: &Rat) -> Self {
        let h = r / Rat::from_integer(n.into());
        let (hp, hq) = (h.numer().clone(), h.denom().clone());
        let total = p.total_degree();
        let degrees = p.degrees();
        let dim = p.dim();
        let mut strides = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (degrees[i + 1] as usize + 1);
        }
        let len = degrees.iter().map(|&d| d as usize + 1).product();
        let terms: Vec<(Vec<u32>, BigInt)> = p
            .terms()
            .map(|(e, c)| {
                let s: u32 = e.iter().sum();
                let scale = c * Pow::pow(&hp, s) * Pow::pow(&hq, total - s);
                (e.to_vec(), scale)
            })
            .collect();
        let small_terms = terms
            .iter()
            .map(|(e, c)| c.to_i128().map(|v| (e.clone(), v)))
            .collect::<Option<Vec<_>>>();
        let corners = (0..1usize << dim)
            .map(|mask| {
                (0..dim)
                    .map(|i| if (mask >> i) & 1 == 1 { degrees[i] as usize * strides[i] } else { 0 })
                    .sum()
            })
            .collect();
        Self {
            dim,
            degrees,
            strides,
            len,
            terms,
            small_terms,
            denom: Pow::pow(hq, total),
            corners,
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    fn scaled<T: Coeff>(&self, terms: &[(Vec<u32>, T)], k: &[u64]) -> Option<Vec<T>> {
        let mut c = vec![T::zero(); self.len];
        let mut factors: Vec<Vec<T>> = vec![Vec::new(); self.dim];
        for (exps, scale) in terms {
            // (k_i + t)^e = Σ_m C(e, m) k_i^(e-m) t^m
            for i in 0..self.dim {
                let e = exps[i];
                let ki = T::from_u64(k[i])?;
                let mut kpow = vec![T::from_u64(1)?];
                for _ in 0..e {
                    let next = kpow.last()?.mul(&ki)?;
                    kpow.push(next);
                }
                factors[i] = (0..=e)
                    .map(|m| T::from_u64(binomial(e, m))?.mul(&kpow[(e - m) as usize]))
                    .collect::<Option<Vec<T>>>()?;
            }
            // tensor product over the multi-index m <= exps
            let mut idx = vec![0u32; self.dim];
            loop {
                let mut v = scale.clone();
                let mut flat = 0;
                for i in 0..self.dim {
                    v = v.mul(&factors[i][idx[i] as usize])?;
                    flat += idx[i] as usize * self.strides[i];
                }
                c[flat] = c[flat].add(&v)?;
                let mut axis = self.dim;
                loop {
                    if axis == 0 {
                        break;
                    }
                    axis -= 1;
                    if idx[axis] < exps[axis] {
                        idx[axis] += 1;
                        break;
                    }
                    idx[axis] = 0;
                }
                if idx.iter().all(|&m| m == 0) {
                    break;
                }
            }
        }
        self.to_bernstein(c)
    }

    fn to_bernstein<T: Coeff>(&self, mut c: Vec<T>) -> Option<Vec<T>> {
        for axis in 0..self.dim {
            let d = self.degrees[axis] as usize;
            if d == 0 {
                continue;
            }
            let stride = self.strides[axis];
            for base in 0..self.len {
                if !(base / stride).is_multiple_of(d + 1) {
                    continue;
                }
                let line: Vec<T> = (0..=d).map(|j| c[base + j * stride].clone()).collect();
                for i in 0..=d {
                    let mut acc = T::zero();
                    for (m, cm) in line.iter().enumerate().take(i + 1) {
                        let w = T::from_u64(binomial((d - m) as u32, (i - m) as u32))?;
                        acc = acc.add(&w.mul(cm)?)?;
                    }
                    c[base + i * stride] = acc;
                }
            }
        }
        Some(c)
    }

    fn classify_with<T: Coeff>(&self, b: &[T]) -> SignClass {
        if self.corners.iter().any(|&i| b[i].sign() != Ordering::Greater) {
            if b.iter().all(|v| v.sign() != Ordering::Greater) {
                return SignClass::NonPositive;
            }
            return SignClass::CornerNonPositive;
        }
        if b.iter().all(|v| v.sign() == Ordering::Greater) {
            SignClass::Positive
        } else {
            SignClass::Mixed
        }
    }

    /// Sign class on the cube with lower-corner index `k`.
    pub fn classify(&self, k: &[u64]) -> SignClass {
        if let Some(small) = &self.small_terms {
            if let Some(b) = self.scaled(small, k) {
                return self.classify_with(&b);
            }
        }
        let b = self.scaled(&self.terms, k).expect("bigint arithmetic is total");
        self.classify_with(&b)
    }

    /// Exact Bernstein coefficients, flattened row-major (last axis fastest).
    pub fn coefficients(&self, k: &[u64]) -> Vec<Rat> {
        let b = self.scaled(&self.terms, k).expect("bigint arithmetic is total");
        b.into_iter()
            .enumerate()
            .map(|(flat, v)| {
                let mut denom = self.denom.clone();
                for i in 0..self.dim {
                    let ii = (flat / self.strides[i]) % (self.degrees[i] as usize + 1);
                    denom *= BigInt::from(binomial(self.degrees[i], ii as u32));
                }
                Rat::new(v, denom)
            })
            .collect()
    }
}

/// Bernstein coefficients of `p` on `cube` within `[0, r]^dim`, in the
/// tensor basis of per-variable degrees [`IntPolynomial::degrees`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinArray {
    pub degrees: Vec<u32>,
    /// Row-major with the last axis fastest.
    pub coeffs: Vec<Rat>,
}

impl BernsteinArray {
    pub fn get(&self, index: &[u32]) -> &Rat {
        let mut flat = 0usize;
        for (i, &ii) in index.iter().enumerate() {
            flat = flat * (self.degrees[i] as usize + 1) + ii as usize;
        }
        &self.coeffs[flat]
    }

    pub fn min(&self) -> &Rat {
        self.coeffs.iter().min().expect("at least one coefficient")
    }
}

pub fn bernstein_coefficients(p: &IntPolynomial, cube: &GridCube, r: &Rat) -> BernsteinArray {
    assert_eq!(p.dim(), cube.dim(), "polynomial and cube dimensions differ");
    let grid = GridPoly::new(p, cube.n, r);
    BernsteinArray { degrees: grid.degrees.clone(), coeffs: grid.coefficients(&cube.k) }
}

/// `p` evaluated at the `2^dim` corners of `cube`, axis 0 most significant.
pub fn corner_values(p: &IntPolynomial, cube: &GridCube, r: &Rat) -> Vec<Rat> {
    let bounds = cube.bounds(r);
    let d = cube.dim();
    (0..1usize << d)
        .map(|mask| {
            let x: Vec<Rat> = (0..d)
                .map(|i| {
                    if (mask >> (d - 1 - i)) & 1 == 1 {
                        bounds[i].1.clone()
                    } else {
                        bounds[i].0.clone()
                    }
                })
                .collect();
            p.eval(&x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};

    fn frac(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn linear_endpoint_values() {
        let x = IntPolynomial::from_i64(1, &[(1, &[1])]).unwrap();
        let cube = GridCube::new(1, vec![0]).unwrap();
        let b = bernstein_coefficients(&x, &cube, &Rat::one());
        assert_eq!(b.coeffs, vec![frac(0, 1), frac(1, 1)]);
    }

    #[test]
    fn quadratic_on_unit_interval() {
        let p = IntPolynomial::from_i64(1, &[(1, &[0]), (-1, &[2])]).unwrap();
        let cube = GridCube::new(1, vec![0]).unwrap();
        let b = bernstein_coefficients(&p, &cube, &Rat::one());
        assert_eq!(b.coeffs, vec![frac(1, 1), frac(1, 1), frac(0, 1)]);
        // Σ b_i C(2,i) t^i (1-t)^(2-i) reproduces p at sample points
        for s in 0..10 {
            let t = frac(s, 9);
            let u = Rat::one() - &t;
            let bern = &b.coeffs[0] * &u * &u + &b.coeffs[1] * frac(2, 1) * &t * &u + &b.coeffs[2] * &t * &t;
            assert_eq!(bern, p.eval(&[t]));
        }
    }

    #[test]
    fn corners_match_direct_evaluation() {
        let p = IntPolynomial::from_i64(2, &[(3, &[2, 1]), (-5, &[0, 3]), (7, &[1, 0]), (-2, &[0, 0])]).unwrap();
        let r = frac(5, 2);
        for (n, k) in [(4, vec![1, 3]), (7, vec![0, 6]), (3, vec![2, 2])] {
            let cube = GridCube::new(n, k).unwrap();
            let b = bernstein_coefficients(&p, &cube, &r);
            let direct = corner_values(&p, &cube, &r);
            let d = &b.degrees;
            let mut idx = 0;
            for a in [0, d[0]] {
                for c in [0, d[1]] {
                    assert_eq!(b.get(&[a, c]), &direct[idx]);
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn fast_and_exact_paths_agree() {
        let p = IntPolynomial::from_i64(2, &[(-1, &[2, 0]), (2, &[1, 0]), (-1, &[0, 2]), (2, &[0, 1]), (-1, &[0, 0])]).unwrap();
        let r = frac(2, 1);
        let grid = GridPoly::new(&p, 16, &r);
        for i in 0..16 {
            for j in 0..16 {
                let exact = grid.coefficients(&[i, j]);
                let small = grid.scaled(grid.small_terms.as_ref().unwrap(), &[i, j]).unwrap();
                for (e, s) in exact.iter().zip(&small) {
                    assert_eq!(e.signum(), Rat::from_integer(BigInt::from(s.signum())));
                }
            }
        }
    }

    #[test]
    fn falls_back_on_overflow() {
        // coefficients near 2^100 overflow i128 once multiplied out
        let big: BigInt = BigInt::from(1u8) << 100usize;
        let p = IntPolynomial::from_terms(1, [(vec![3], big.clone()), (vec![0], -big.clone())]).unwrap();
        let grid = GridPoly::new(&p, 1 << 20, &Rat::one());
        assert_eq!(grid.classify(&[(1 << 20) - 1]), SignClass::NonPositive);
        assert_eq!(grid.classify(&[0]), SignClass::NonPositive);
        let q = IntPolynomial::from_terms(1, [(vec![3], big.clone()), (vec![0], big)]).unwrap();
        let grid = GridPoly::new(&q, 1 << 20, &Rat::one());
        assert_eq!(grid.classify(&[(1 << 20) - 1]), SignClass::Positive);
    }
}
