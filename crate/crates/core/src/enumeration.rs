//! The enumeration `e -> f_e` of one-variable elementary functions over the
//! basis {successor, modified subtraction, quotient, exponentiation}, and the
//! rational sequences `g_e(n) = f_{L(e)}(n) / (f_{R(e)}(n) + 1)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::elem_expr::{Budget, ElemExpr, Nat, ZeroPow};
use crate::error::Result;
use crate::pairing::unpair;

pub type Rat = BigRational;

/// Default number of codes kept in the decode memo table.
pub const DEFAULT_MEMO_LIMIT: u64 = 10_000;

/// A Gödel code. Every natural is a valid code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(pub u64);

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for Code {
    fn from(e: u64) -> Self {
        Code(e)
    }
}

/// How a code decodes one level down. Operands are sub-codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// `L(e) = 0`: `f_e(x) = x`
    Identity,
    /// `f_e = f_k + 1`
    Succ(u64),
    Monus(u64, u64),
    Quot(u64, u64),
    Pow(u64, u64),
    /// tag `>= 5`: `f_e = 0`
    Zero,
}

impl Case {
    pub fn of(e: Code) -> Case {
        let (tag, k) = unpair(e.0);
        match tag {
            0 => Case::Identity,
            1 => Case::Succ(k),
            2..=4 => {
                let (a, b) = unpair(k);
                match tag {
                    2 => Case::Monus(a, b),
                    3 => Case::Quot(a, b),
                    _ => Case::Pow(a, b),
                }
            }
            _ => Case::Zero,
        }
    }

    /// Sub-codes this case refers to; each is strictly below the code.
    pub fn operands(&self) -> Vec<u64> {
        match *self {
            Case::Identity | Case::Zero => vec![],
            Case::Succ(k) => vec![k],
            Case::Monus(a, b) | Case::Quot(a, b) | Case::Pow(a, b) => vec![a, b],
        }
    }
}

fn x1() -> ElemExpr {
    ElemExpr::proj(1, 1).expect("x_1")
}

fn build(case: Case, mut sub: impl FnMut(u64) -> ElemExpr) -> ElemExpr {
    let bin = |a: ElemExpr, b: ElemExpr, f: fn(ElemExpr, ElemExpr) -> Result<ElemExpr>| {
        f(a, b).expect("decoded operands are unary")
    };
    match case {
        Case::Identity => x1(),
        Case::Zero => ElemExpr::zero(1),
        Case::Succ(k) => ElemExpr::succ(sub(k)),
        Case::Monus(a, b) => bin(sub(a), sub(b), ElemExpr::monus),
        Case::Quot(a, b) => bin(sub(a), sub(b), ElemExpr::quot),
        Case::Pow(a, b) => bin(sub(a), sub(b), ElemExpr::pow),
    }
}

/// `f_e` without any memo table.
pub fn decode_uncached(e: Code) -> ElemExpr {
    build(Case::of(e), |k| decode_uncached(Code(k)))
}

/// Memoising decoder. Codes below `limit` are cached; the table is safe to
/// share between threads.
#[derive(Debug)]
pub struct Decoder {
    limit: u64,
    memo: RwLock<HashMap<u64, ElemExpr>>,
}

impl Default for Decoder {
    fn default() -> Self {
        Self::with_limit(DEFAULT_MEMO_LIMIT)
    }
}

impl Decoder {
    pub fn with_limit(limit: u64) -> Self {
        Self { limit, memo: RwLock::new(HashMap::new()) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn decode(&self, e: Code) -> ElemExpr {
        if e.0 < self.limit {
            if let Some(hit) = self.memo.read().expect("memo lock").get(&e.0) {
                return hit.clone();
            }
        }
        let expr = build(Case::of(e), |k| self.decode(Code(k)));
        if e.0 < self.limit {
            self.memo.write().expect("memo lock").entry(e.0).or_insert_with(|| expr.clone());
        }
        expr
    }

    /// Cached codes in ascending order.
    pub fn cached_codes(&self) -> Vec<u64> {
        let mut codes: Vec<u64> = self.memo.read().expect("memo lock").keys().copied().collect();
        codes.sort_unstable();
        codes
    }

    /// Inserts `e` built from already-known operands. Used when restoring a
    /// persisted table; callers check the case against [`Case::of`].
    pub(crate) fn insert_case(&self, e: u64, case: Case) {
        let expr = build(case, |k| self.decode(Code(k)));
        self.memo.write().expect("memo lock").insert(e, expr);
    }
}

/// The enumeration together with the `0^0` convention used to evaluate it.
///
/// The default convention is [`ZeroPow::Indeterminate`]: it is the reading
/// under which the published ε table and digits of the diagonal real are
/// reproduced (see `diagonal`).
#[derive(Debug)]
pub struct Enumeration {
    decoder: Decoder,
    zero_pow: ZeroPow,
}

impl Default for Enumeration {
    fn default() -> Self {
        Self::new(ZeroPow::Indeterminate)
    }
}

impl Enumeration {
    pub fn new(zero_pow: ZeroPow) -> Self {
        Self { decoder: Decoder::default(), zero_pow }
    }

    pub fn with_decoder(decoder: Decoder, zero_pow: ZeroPow) -> Self {
        Self { decoder, zero_pow }
    }

    pub fn decoder(&self) -> &Decoder {
        &self.decoder
    }

    pub fn zero_pow(&self) -> ZeroPow {
        self.zero_pow
    }

    pub fn decode(&self, e: Code) -> ElemExpr {
        self.decoder.decode(e)
    }

    /// `f_e(x)`.
    pub fn f(&self, e: Code, x: &Nat, budget: &Budget) -> Result<Nat> {
        self.decode(e).eval_with(std::slice::from_ref(x), budget, self.zero_pow)
    }

    /// `g_e(n) = f_{L(e)}(n) / (f_{R(e)}(n) + 1)`.
    pub fn g(&self, e: Code, n: u64, budget: &Budget) -> Result<Rat> {
        let (l, r) = unpair(e.0);
        let x = Nat::from(n);
        let num = self.f(Code(l), &x, budget)?;
        let den = self.f(Code(r), &x, budget)? + 1u32;
        Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_traits::ToPrimitive;

    fn f_at(en: &Enumeration, e: u64, x: u64) -> u64 {
        en.f(Code(e), &Nat::from(x), &Budget::default()).unwrap().to_u64().unwrap()
    }

    fn frac(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    #[test]
    fn closed_forms() {
        let en = Enumeration::default();
        for x in 0..=100u64 {
            assert_eq!(f_at(&en, 0, x), x);
            assert_eq!(f_at(&en, 1, x), x + 1);
            assert_eq!(f_at(&en, 2, x), x);
            assert_eq!(f_at(&en, 3, x), 0);
            assert_eq!(f_at(&en, 4, x), x + 2);
        }
        for x in 0..=12u64 {
            assert_eq!(f_at(&en, 169, x), (x + 1).pow(x as u32) + 1);
        }
        for x in 1..=10u64 {
            assert_eq!(f_at(&en, 10, x), x.pow(x as u32));
        }
    }

    #[test]
    fn decode_shapes() {
        let d = Decoder::default();
        assert_eq!(d.decode(Code(4)).to_string(), "S(S(x_1))");
        assert_eq!(d.decode(Code(10)).to_string(), "(x_1^x_1)");
        assert_eq!(d.decode(Code(3)).to_string(), "(x_1 ∸ x_1)");
        assert_eq!(d.decode(Code(169)).to_string(), "S((S(x_1)^x_1))");
        assert_eq!(Case::of(Code(169)), Case::Succ(16));
        assert_eq!(Case::of(Code(16)), Case::Pow(1, 0));
        assert_eq!(Case::of(Code(crate::pairing::pair(5, 9))), Case::Zero);
    }

    #[test]
    fn g_examples() {
        let en = Enumeration::default();
        let b = Budget::default();
        assert_eq!(en.g(Code(40), 0, &b).unwrap(), frac(2, 3));
        assert_eq!(en.g(Code(0), 5, &b).unwrap(), frac(5, 6));
        assert_eq!(en.g(Code(1), 7, &b).unwrap(), frac(1, 1));
        for x in 0..20 {
            assert_eq!(en.g(Code(40), x, &b).unwrap(), frac(x as i64 + 2, x as i64 + 3));
        }
    }

    #[test]
    fn zero_pow_convention_reaches_g() {
        // 55 = J(10, 0): g_55 = x^x / (x + 1)
        let b = Budget::default();
        let one = Enumeration::new(ZeroPow::One);
        let ind = Enumeration::new(ZeroPow::Indeterminate);
        assert_eq!(one.g(Code(55), 0, &b).unwrap(), frac(1, 1));
        assert_eq!(ind.g(Code(55), 0, &b), Err(Error::Indeterminate));
        assert_eq!(ind.g(Code(55), 2, &b).unwrap(), frac(4, 3));
    }

    #[test]
    fn decode_terminates_and_memo_is_transparent() {
        let d = Decoder::default();
        for e in 0..=10_000u64 {
            let expr = d.decode(Code(e));
            assert_eq!(expr.arity(), 1);
        }
        for e in (0..=10_000u64).step_by(37) {
            assert_eq!(d.decode(Code(e)), decode_uncached(Code(e)), "code {e}");
        }
        assert!(d.cached_codes().len() > 10_000 - 1);
    }

    #[test]
    fn codes_above_limit_are_not_cached() {
        let d = Decoder::with_limit(5);
        d.decode(Code(169));
        assert!(d.cached_codes().iter().all(|&c| c < 5));
        assert_eq!(d.decode(Code(169)), decode_uncached(Code(169)));
    }

    #[test]
    fn operands_descend() {
        for e in 1..5000u64 {
            for k in Case::of(Code(e)).operands() {
                assert!(k < e, "operand {k} of {e}");
            }
        }
    }
}
