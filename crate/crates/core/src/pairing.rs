//! Cantor pairing `J(x, y) = (x+y)(x+y+1)/2 + y` and its inverses.
//!
//! These are the native (machine-integer) versions used by the code
//! decoder. The same functions as elementary expressions live in
//! [`crate::elem_expr::Builtin`].

use num_integer::Roots;

/// `J(x, y)`. Panics on `u64` overflow.
pub fn pair(x: u64, y: u64) -> u64 {
    checked_pair(x, y).expect("pairing overflows u64")
}

/// Checked variant of [`pair`].
pub fn checked_pair(x: u64, y: u64) -> Option<u64> {
    let s = u128::from(x) + u128::from(y);
    let t = s.checked_mul(s + 1)? / 2;
    u64::try_from(t + u128::from(y)).ok()
}

/// Returns `(L(z), R(z))`.
///
/// `w` is the largest natural with `w(w+1)/2 <= z`; then `R = z - w(w+1)/2`
/// and `L = w - R`.
pub fn unpair(z: u64) -> (u64, u64) {
    let m = 8 * u128::from(z) + 1;
    let mut w = (m.sqrt() - 1) / 2;
    // isqrt is exact, but keep the defining inequality explicit
    while w * (w + 1) / 2 > u128::from(z) {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= u128::from(z) {
        w += 1;
    }
    let r = u128::from(z) - w * (w + 1) / 2;
    ((w - r) as u64, r as u64)
}

pub fn left(z: u64) -> u64 {
    unpair(z).0
}

pub fn right(z: u64) -> u64 {
    unpair(z).1
}
