//! Elementary-function expression trees.
//!
//! An [`ElemExpr`] is an arity-checked, immutable, reference-counted tree
//! over the constructors of the elementary class: zero, successor,
//! projections, `+`, `*`, modified subtraction, the quotient
//! `floor(x / (y + 1))`, exponentiation, composition, and bounded
//! sum/product. Children are shared through [`Arc`], so decoded expressions
//! are DAGs and cloning is cheap.
//!
//! Evaluation is exact over arbitrary-precision naturals and metered by a
//! [`Budget`]; the budget only ever decides whether an error is returned,
//! never which value is returned.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Resource, Result};

pub type Nat = BigUint;

/// Default cap on the bit length of any intermediate value.
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
/// Default cap on evaluation steps.
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_bits: u64,
    pub max_nodes: u64,
}

impl Budget {
    pub fn new(max_bits: u64, max_nodes: u64) -> Result<Self> {
        if max_bits == 0 || max_nodes == 0 {
            return Err(Error::MalformedExpr("budget caps must be positive".into()));
        }
        Ok(Self { max_bits, max_nodes })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_bits: DEFAULT_MAX_BITS, max_nodes: DEFAULT_MAX_NODES }
    }
}

/// Value of `x^y` at `x = y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ZeroPow {
    /// `0^0 = 1`, making exponentiation total.
    #[default]
    One,
    /// `0^0` has no value; evaluation fails with [`Error::Indeterminate`].
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Zero,
    Succ(ElemExpr),
    /// 1-based index into the argument list.
    Proj(usize),
    Add(ElemExpr, ElemExpr),
    Mul(ElemExpr, ElemExpr),
    /// `max(a - b, 0)`
    Monus(ElemExpr, ElemExpr),
    /// `floor(a / (b + 1))`
    Quot(ElemExpr, ElemExpr),
    Pow(ElemExpr, ElemExpr),
    /// `outer(inner_1(xs), ..., inner_m(xs))`
    Comp(ElemExpr, Vec<ElemExpr>),
    /// `(x, ys) -> sum_{t <= x} body(t, ys)`
    BoundedSum(ElemExpr),
    /// `(x, ys) -> prod_{t <= x} body(t, ys)`
    BoundedProd(ElemExpr),
}

#[derive(Debug)]
struct Node {
    op: Op,
    arity: usize,
}

/// An arity-consistent elementary expression.
#[derive(Debug, Clone)]
pub struct ElemExpr(Arc<Node>);

impl PartialEq for ElemExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.arity == other.0.arity && self.0.op == other.0.op)
    }
}

impl Eq for ElemExpr {}

fn same_arity(a: &ElemExpr, b: &ElemExpr) -> Result<usize> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch { expected: a.arity(), found: b.arity() });
    }
    Ok(a.arity())
}

impl ElemExpr {
    fn node(op: Op, arity: usize) -> Self {
        ElemExpr(Arc::new(Node { op, arity }))
    }

    pub fn op(&self) -> &Op {
        &self.0.op
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    /// The constant zero function of `arity` arguments.
    pub fn zero(arity: usize) -> Self {
        Self::node(Op::Zero, arity)
    }

    pub fn succ(e: ElemExpr) -> Self {
        let arity = e.arity();
        Self::node(Op::Succ(e), arity)
    }

    /// Projection `x_i` among `n` arguments, `1 <= i <= n`.
    pub fn proj(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::MalformedExpr(format!("projection index {i} outside 1..={n}")));
        }
        Ok(Self::node(Op::Proj(i), n))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: ElemExpr, b: ElemExpr) -> Result<Self> {
        let n = same_arity(&a, &b)?;
        Ok(Self::node(Op::Add(a, b), n))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: ElemExpr, b: ElemExpr) -> Result<Self> {
        let n = same_arity(&a, &b)?;
        Ok(Self::node(Op::Mul(a, b), n))
    }

    pub fn monus(a: ElemExpr, b: ElemExpr) -> Result<Self> {
        let n = same_arity(&a, &b)?;
        Ok(Self::node(Op::Monus(a, b), n))
    }

    pub fn quot(a: ElemExpr, b: ElemExpr) -> Result<Self> {
        let n = same_arity(&a, &b)?;
        Ok(Self::node(Op::Quot(a, b), n))
    }

    pub fn pow(a: ElemExpr, b: ElemExpr) -> Result<Self> {
        let n = same_arity(&a, &b)?;
        Ok(Self::node(Op::Pow(a, b), n))
    }

    /// `outer ∘ (inner_1, ..., inner_m)`; requires `arity(outer) = m` and a
    /// common arity for the inner functions. With `m = 0` the result is a
    /// constant of arity 0.
    pub fn comp(outer: ElemExpr, inner: Vec<ElemExpr>) -> Result<Self> {
        if outer.arity() != inner.len() {
            return Err(Error::ArityMismatch { expected: outer.arity(), found: inner.len() });
        }
        let n = inner.first().map_or(0, ElemExpr::arity);
        if let Some(bad) = inner.iter().find(|g| g.arity() != n) {
            return Err(Error::ArityMismatch { expected: n, found: bad.arity() });
        }
        Ok(Self::node(Op::Comp(outer, inner), n))
    }

    pub fn bounded_sum(body: ElemExpr) -> Result<Self> {
        let n = body.arity();
        if n == 0 {
            return Err(Error::MalformedExpr("bounded sum needs a body of arity >= 1".into()));
        }
        Ok(Self::node(Op::BoundedSum(body), n))
    }

    pub fn bounded_prod(body: ElemExpr) -> Result<Self> {
        let n = body.arity();
        if n == 0 {
            return Err(Error::MalformedExpr("bounded product needs a body of arity >= 1".into()));
        }
        Ok(Self::node(Op::BoundedProd(body), n))
    }

    /// The constant function `c` of the given arity, as `S(S(...S(0)))`.
    pub fn constant(arity: usize, c: u32) -> Self {
        (0..c).fold(Self::zero(arity), |e, _| Self::succ(e))
    }

    /// Number of distinct nodes (shared children counted once).
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&e.0) as usize) {
                continue;
            }
            match e.op() {
                Op::Zero | Op::Proj(_) => {}
                Op::Succ(a) | Op::BoundedSum(a) | Op::BoundedProd(a) => stack.push(a.clone()),
                Op::Add(a, b) | Op::Mul(a, b) | Op::Monus(a, b) | Op::Quot(a, b) | Op::Pow(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Op::Comp(f, gs) => {
                    stack.push(f.clone());
                    stack.extend(gs.iter().cloned());
                }
            }
        }
        seen.len()
    }

    /// Exact value at `args` with `0^0 = 1`.
    pub fn eval(&self, args: &[Nat], budget: &Budget) -> Result<Nat> {
        self.eval_with(args, budget, ZeroPow::One)
    }

    pub fn eval_with(&self, args: &[Nat], budget: &Budget, zero_pow: ZeroPow) -> Result<Nat> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: args.len() });
        }
        let mut meter = Meter { budget: *budget, steps: 0, zero_pow };
        for a in args {
            meter.check_bits(a)?;
        }
        meter.eval(self, args)
    }

    /// Convenience for small machine-integer arguments.
    pub fn eval_u64(&self, args: &[u64], budget: &Budget) -> Result<Nat> {
        let args: Vec<Nat> = args.iter().map(|&a| Nat::from(a)).collect();
        self.eval(&args, budget)
    }

    /// Text rendering; `ascii` swaps `∸` for `-.` and `Σ`/`Π` for `sum`/`prod`.
    pub fn render(&self, ascii: bool) -> String {
        let env: Vec<String> = (1..=self.arity()).map(|i| format!("x_{i}")).collect();
        let mut out = String::new();
        render_into(self, &env, ascii, 0, &mut out);
        out
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

fn render_into(e: &ElemExpr, env: &[String], ascii: bool, depth: usize, out: &mut String) {
    let bin = |a: &ElemExpr, b: &ElemExpr, l: &str, m: &str, r: &str, out: &mut String| {
        out.push_str(l);
        render_into(a, env, ascii, depth, out);
        out.push_str(m);
        render_into(b, env, ascii, depth, out);
        out.push_str(r);
    };
    match e.op() {
        Op::Zero => out.push('0'),
        Op::Proj(i) => out.push_str(&env[i - 1]),
        Op::Succ(a) => {
            out.push_str("S(");
            render_into(a, env, ascii, depth, out);
            out.push(')');
        }
        Op::Add(a, b) => bin(a, b, "(", " + ", ")", out),
        Op::Mul(a, b) => bin(a, b, "(", " * ", ")", out),
        Op::Monus(a, b) => bin(a, b, "(", if ascii { " -. " } else { " ∸ " }, ")", out),
        Op::Quot(a, b) => bin(a, b, "floor(", "/(", "+1))", out),
        Op::Pow(a, b) => bin(a, b, "(", "^", ")", out),
        Op::Comp(f, gs) => {
            let inner: Vec<String> = gs
                .iter()
                .map(|g| {
                    let mut s = String::new();
                    render_into(g, env, ascii, depth, &mut s);
                    s
                })
                .collect();
            render_into(f, &inner, ascii, depth, out);
        }
        Op::BoundedSum(body) | Op::BoundedProd(body) => {
            let sym = match (e.op(), ascii) {
                (Op::BoundedSum(_), false) => "Σ",
                (Op::BoundedSum(_), true) => "sum",
                (_, false) => "Π",
                (_, true) => "prod",
            };
            let t = format!("t_{depth}");
            let mut inner = env.to_vec();
            out.push_str(&format!("{sym}[{t} <= {}](", inner[0]));
            inner[0] = t;
            render_into(body, &inner, ascii, depth + 1, out);
            out.push(')');
        }
    }
}

struct Meter {
    budget: Budget,
    steps: u64,
    zero_pow: ZeroPow,
}

impl Meter {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_nodes {
            return Err(Error::BudgetExceeded { resource: Resource::Nodes, limit: self.budget.max_nodes });
        }
        Ok(())
    }

    fn check_bits(&self, v: &Nat) -> Result<()> {
        if v.bits() > self.budget.max_bits {
            return Err(self.bits_exceeded());
        }
        Ok(())
    }

    fn bits_exceeded(&self) -> Error {
        Error::BudgetExceeded { resource: Resource::Bits, limit: self.budget.max_bits }
    }

    /// Upper bound on loop trips given the step budget.
    fn loop_bound(&self, x: &Nat) -> Result<u64> {
        match x.to_u64() {
            Some(v) if v < self.budget.max_nodes.saturating_sub(self.steps) => Ok(v),
            _ => Err(Error::BudgetExceeded { resource: Resource::Nodes, limit: self.budget.max_nodes }),
        }
    }

    fn eval(&mut self, e: &ElemExpr, args: &[Nat]) -> Result<Nat> {
        self.tick()?;
        let v = match e.op() {
            Op::Zero => Nat::zero(),
            Op::Proj(i) => args[i - 1].clone(),
            Op::Succ(a) => self.eval(a, args)? + 1u32,
            Op::Add(a, b) => self.eval(a, args)? + self.eval(b, args)?,
            Op::Mul(a, b) => {
                let x = self.eval(a, args)?;
                let y = self.eval(b, args)?;
                if !x.is_zero() && !y.is_zero() && x.bits() + y.bits() - 1 > self.budget.max_bits {
                    return Err(self.bits_exceeded());
                }
                x * y
            }
            Op::Monus(a, b) => {
                let x = self.eval(a, args)?;
                let y = self.eval(b, args)?;
                if x > y {
                    x - y
                } else {
                    Nat::zero()
                }
            }
            Op::Quot(a, b) => {
                let x = self.eval(a, args)?;
                let y = self.eval(b, args)?;
                x / (y + 1u32)
            }
            Op::Pow(a, b) => {
                let x = self.eval(a, args)?;
                let y = self.eval(b, args)?;
                self.pow(x, y)?
            }
            Op::Comp(f, gs) => {
                let inner = gs.iter().map(|g| self.eval(g, args)).collect::<Result<Vec<_>>>()?;
                self.eval(f, &inner)?
            }
            Op::BoundedSum(body) => {
                let bound = self.loop_bound(&args[0])?;
                let mut local = args.to_vec();
                let mut acc = Nat::zero();
                for t in 0..=bound {
                    local[0] = Nat::from(t);
                    acc += self.eval(body, &local)?;
                    self.check_bits(&acc)?;
                }
                acc
            }
            Op::BoundedProd(body) => {
                let bound = self.loop_bound(&args[0])?;
                let mut local = args.to_vec();
                let mut acc = Nat::one();
                for t in 0..=bound {
                    local[0] = Nat::from(t);
                    let f = self.eval(body, &local)?;
                    if f.is_zero() {
                        acc = Nat::zero();
                        break;
                    }
                    if acc.bits() + f.bits() - 1 > self.budget.max_bits {
                        return Err(self.bits_exceeded());
                    }
                    acc *= f;
                }
                acc
            }
        };
        self.check_bits(&v)?;
        Ok(v)
    }

    fn pow(&self, x: Nat, y: Nat) -> Result<Nat> {
        if y.is_zero() {
            return if x.is_zero() && self.zero_pow == ZeroPow::Indeterminate {
                Err(Error::Indeterminate)
            } else {
                Ok(Nat::one())
            };
        }
        if x.is_zero() || x.is_one() {
            return Ok(x);
        }
        // x >= 2, so x^y has at least (bits(x) - 1) * y + 1 bits
        let min_bits = (x.bits() - 1).checked_mul(y.to_u64().unwrap_or(u64::MAX));
        match (min_bits, y.to_u32()) {
            (Some(b), Some(exp)) if b < self.budget.max_bits => Ok(num_traits::Pow::pow(x, exp)),
            _ => Err(self.bits_exceeded()),
        }
    }
}

/// The derived combinators of the elementary class, each built only from
/// the constructors above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `sgn(x) = 1 ∸ (1 ∸ x)`
    Sgn,
    /// `[x > y] = sgn(x ∸ y)`
    Gt,
    Geq,
    Lt,
    Leq,
    /// `floor(x / (y+1))` as `(Σ_{i<=x} [x >= i(y+1)]) ∸ 1`
    QuotientFormula,
    /// `(μ y <= n)(n ∸ y·y = 0)`: least `y <= n` with `y² >= x`, else `n`;
    /// arguments `(n, x)`. See [`bounded_min`] for the general combinator.
    BoundedMin,
    PairingJ,
    PairingL,
    PairingR,
}

impl Builtin {
    pub const ALL: [Builtin; 10] = [
        Builtin::Sgn,
        Builtin::Gt,
        Builtin::Geq,
        Builtin::Lt,
        Builtin::Leq,
        Builtin::QuotientFormula,
        Builtin::BoundedMin,
        Builtin::PairingJ,
        Builtin::PairingL,
        Builtin::PairingR,
    ];

    pub fn arity(self) -> usize {
        match self {
            Builtin::Sgn | Builtin::PairingL | Builtin::PairingR => 1,
            _ => 2,
        }
    }
}

fn p(n: usize, i: usize) -> ElemExpr {
    ElemExpr::proj(n, i).expect("projection index in range")
}

fn sgn() -> ElemExpr {
    let one = ElemExpr::constant(1, 1);
    let inner = ElemExpr::monus(one.clone(), p(1, 1)).expect("unary");
    ElemExpr::monus(one, inner).expect("unary")
}

fn sgn_of(e: ElemExpr) -> ElemExpr {
    ElemExpr::comp(sgn(), vec![e]).expect("sgn takes one argument")
}

/// `1 ∸ e`, i.e. `[e = 0]`.
fn is_zero_of(e: ElemExpr) -> ElemExpr {
    let one = ElemExpr::constant(e.arity(), 1);
    ElemExpr::monus(one, sgn_of(e)).expect("same arity")
}

fn geq() -> ElemExpr {
    // x >= y  <=>  x + 1 > y
    sgn_of(ElemExpr::monus(ElemExpr::succ(p(2, 1)), p(2, 2)).expect("binary"))
}

/// The general bounded minimiser: for `f` of arity `k >= 1`, returns
/// `g(n, y_2..y_k)` = least `t <= n` with `f(t, y_2..y_k) = 0`, or `n` if none.
///
/// Built as `min(A, n)` with `A(n, ys) = Σ_{t<=n} Π_{s<=t} sgn f(s, ys)`,
/// which counts the leading run of nonzero values.
pub fn bounded_min(f: ElemExpr) -> Result<ElemExpr> {
    let k = f.arity();
    if k == 0 {
        return Err(Error::MalformedExpr("bounded minimiser needs arity >= 1".into()));
    }
    let prefix = ElemExpr::bounded_prod(sgn_of(f))?;
    let count = ElemExpr::bounded_sum(prefix)?;
    let bound = ElemExpr::proj(k, 1)?;
    let excess = ElemExpr::monus(count.clone(), bound)?;
    ElemExpr::monus(count, excess)
}

fn isqrt() -> ElemExpr {
    // (μ s <= m)((s+1)^2 > m), evaluated at n = m
    let s1 = ElemExpr::succ(p(2, 1));
    let sq = ElemExpr::mul(s1.clone(), s1).expect("binary");
    let f = is_zero_of(ElemExpr::monus(sq, p(2, 2)).expect("binary"));
    let mu = bounded_min(f).expect("arity 2");
    ElemExpr::comp(mu, vec![p(1, 1), p(1, 1)]).expect("binary outer")
}

/// `w(z)`: the largest `w` with `w(w+1)/2 <= z`, as `floor((isqrt(8z+1) ∸ 1)/2)`.
fn triangular_root() -> ElemExpr {
    let eight_z = ElemExpr::mul(ElemExpr::constant(1, 8), p(1, 1)).expect("unary");
    let root = ElemExpr::comp(isqrt(), vec![ElemExpr::succ(eight_z)]).expect("unary");
    let one = ElemExpr::constant(1, 1);
    ElemExpr::quot(ElemExpr::monus(root, one.clone()).expect("unary"), one).expect("unary")
}

fn halve(e: ElemExpr) -> ElemExpr {
    let one = ElemExpr::constant(e.arity(), 1);
    ElemExpr::quot(e, one).expect("same arity")
}

fn pairing_right() -> ElemExpr {
    let w = triangular_root();
    let tri = halve(ElemExpr::mul(w.clone(), ElemExpr::succ(w)).expect("unary"));
    ElemExpr::monus(p(1, 1), tri).expect("unary")
}

pub fn builtin(name: Builtin) -> ElemExpr {
    match name {
        Builtin::Sgn => sgn(),
        Builtin::Gt => sgn_of(ElemExpr::monus(p(2, 1), p(2, 2)).expect("binary")),
        Builtin::Geq => geq(),
        Builtin::Lt => sgn_of(ElemExpr::monus(p(2, 2), p(2, 1)).expect("binary")),
        Builtin::Leq => sgn_of(ElemExpr::monus(ElemExpr::succ(p(2, 2)), p(2, 1)).expect("binary")),
        Builtin::QuotientFormula => {
            // h(t, x, y) = [x >= t·(y+1)]
            let t_times = ElemExpr::mul(p(3, 1), ElemExpr::succ(p(3, 3))).expect("ternary");
            let h = ElemExpr::comp(geq(), vec![p(3, 2), t_times]).expect("binary outer");
            let sum = ElemExpr::bounded_sum(h).expect("arity 3");
            let s = ElemExpr::comp(sum, vec![p(2, 1), p(2, 1), p(2, 2)]).expect("ternary outer");
            ElemExpr::monus(s, ElemExpr::constant(2, 1)).expect("binary")
        }
        Builtin::BoundedMin => {
            let yy = ElemExpr::mul(p(2, 1), p(2, 1)).expect("binary");
            bounded_min(ElemExpr::monus(p(2, 2), yy).expect("binary")).expect("arity 2")
        }
        Builtin::PairingJ => {
            let s = ElemExpr::add(p(2, 1), p(2, 2)).expect("binary");
            let tri = halve(ElemExpr::mul(s.clone(), ElemExpr::succ(s)).expect("binary"));
            ElemExpr::add(tri, p(2, 2)).expect("binary")
        }
        Builtin::PairingL => {
            ElemExpr::monus(triangular_root(), pairing_right()).expect("unary")
        }
        Builtin::PairingR => pairing_right(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing;

    fn ev(e: &ElemExpr, args: &[u64]) -> u64 {
        e.eval_u64(args, &Budget::default()).unwrap().to_u64().unwrap()
    }

    #[test]
    fn constructor_examples() {
        let monus = ElemExpr::monus(p(2, 1), p(2, 2)).unwrap();
        assert_eq!(ev(&monus, &[3, 5]), 0);
        assert_eq!(ev(&monus, &[5, 3]), 2);

        let pow = ElemExpr::pow(p(1, 1), p(1, 1)).unwrap();
        assert_eq!(ev(&pow, &[0]), 1);
        assert_eq!(ev(&pow, &[3]), 27);

        let quot = ElemExpr::quot(p(2, 1), p(2, 2)).unwrap();
        assert_eq!(ev(&quot, &[7, 2]), 2);

        let sum = ElemExpr::bounded_sum(p(1, 1)).unwrap();
        assert_eq!(ev(&sum, &[4]), 10);
        // bound variable is the first argument; the rest pass through
        let sum2 = ElemExpr::bounded_sum(p(2, 1)).unwrap();
        assert_eq!(sum2.arity(), 2);
        assert_eq!(ev(&sum2, &[4, 99]), 10);
        let prod = ElemExpr::bounded_prod(ElemExpr::succ(p(1, 1))).unwrap();
        assert_eq!(ev(&prod, &[4]), 120);
    }

    #[test]
    fn zero_pow_conventions() {
        let pow = ElemExpr::pow(p(1, 1), p(1, 1)).unwrap();
        let b = Budget::default();
        let zero = [Nat::zero()];
        assert_eq!(pow.eval_with(&zero, &b, ZeroPow::One).unwrap(), Nat::one());
        assert_eq!(pow.eval_with(&zero, &b, ZeroPow::Indeterminate), Err(Error::Indeterminate));
        assert_eq!(pow.eval_with(&[Nat::from(2u32)], &b, ZeroPow::Indeterminate).unwrap(), Nat::from(4u32));
    }

    #[test]
    fn arity_checks() {
        assert!(ElemExpr::proj(2, 0).is_err());
        assert!(ElemExpr::proj(2, 3).is_err());
        assert!(ElemExpr::add(p(1, 1), p(2, 1)).is_err());
        assert!(ElemExpr::comp(p(2, 1), vec![p(1, 1)]).is_err());
        assert!(ElemExpr::comp(p(2, 1), vec![p(1, 1), p(3, 1)]).is_err());
        assert!(ElemExpr::bounded_sum(ElemExpr::zero(0)).is_err());
        let e = ElemExpr::monus(p(2, 1), p(2, 2)).unwrap();
        assert_eq!(
            e.eval_u64(&[1], &Budget::default()),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn budgets_fail_deterministically() {
        let pow = ElemExpr::pow(p(2, 1), p(2, 2)).unwrap();
        let tight = Budget::new(64, 1000).unwrap();
        assert_eq!(
            pow.eval_u64(&[2, 64], &tight),
            Err(Error::BudgetExceeded { resource: Resource::Bits, limit: 64 })
        );
        assert_eq!(ev(&pow, &[2, 63]), 1 << 63);
        let sum = ElemExpr::bounded_sum(p(1, 1)).unwrap();
        let few = Budget::new(64, 10).unwrap();
        assert!(matches!(
            sum.eval_u64(&[100], &few),
            Err(Error::BudgetExceeded { resource: Resource::Nodes, .. })
        ));
        assert!(Budget::new(0, 1).is_err());
    }

    #[test]
    fn monus_law() {
        let monus = ElemExpr::monus(p(2, 1), p(2, 2)).unwrap();
        for x in 0..=200u64 {
            for y in 0..=200u64 {
                assert_eq!(ev(&monus, &[x, y]), x.saturating_sub(y));
            }
        }
    }

    #[test]
    fn builtins_match_oracles() {
        let sgn = builtin(Builtin::Sgn);
        assert_eq!(ev(&sgn, &[0]), 0);
        assert_eq!(ev(&sgn, &[9]), 1);
        assert_eq!(ev(&builtin(Builtin::PairingJ), &[4, 4]), 40);

        let cmp: [(Builtin, fn(u64, u64) -> bool); 4] = [
            (Builtin::Gt, |x, y| x > y),
            (Builtin::Geq, |x, y| x >= y),
            (Builtin::Lt, |x, y| x < y),
            (Builtin::Leq, |x, y| x <= y),
        ];
        let quot = ElemExpr::quot(p(2, 1), p(2, 2)).unwrap();
        let qf = builtin(Builtin::QuotientFormula);
        let mu = builtin(Builtin::BoundedMin);
        let j = builtin(Builtin::PairingJ);
        for x in 0..=50u64 {
            assert_eq!(ev(&sgn, &[x]), u64::from(x != 0));
            for y in 0..=50u64 {
                for (b, f) in &cmp {
                    assert_eq!(ev(&builtin(*b), &[x, y]), u64::from(f(x, y)), "{b:?}({x},{y})");
                }
                assert_eq!(ev(&qf, &[x, y]), ev(&quot, &[x, y]));
                assert_eq!(ev(&qf, &[x, y]), x / (y + 1));
                let oracle = (0..=x).find(|t| t * t >= y).unwrap_or(x);
                assert_eq!(ev(&mu, &[x, y]), oracle, "mu({x},{y})");
                assert_eq!(ev(&j, &[x, y]), pairing::pair(x, y));
            }
        }
    }

    #[test]
    fn pairing_inverse_builtins() {
        let l = builtin(Builtin::PairingL);
        let r = builtin(Builtin::PairingR);
        for z in 0..=50u64 {
            let (lz, rz) = pairing::unpair(z);
            assert_eq!(ev(&l, &[z]), lz, "L({z})");
            assert_eq!(ev(&r, &[z]), rz, "R({z})");
        }
    }

    #[test]
    fn general_bounded_min() {
        // least t <= n with t ∸ 3 = 0 is always 0
        let f = ElemExpr::monus(p(1, 1), ElemExpr::constant(1, 3)).unwrap();
        let mu = bounded_min(f).unwrap();
        assert_eq!(ev(&mu, &[0]), 0);
        assert_eq!(ev(&mu, &[7]), 0);
        // f(t) = 5 ∸ t vanishes first at t = 5
        let g = ElemExpr::monus(ElemExpr::constant(1, 5), p(1, 1)).unwrap();
        let mu = bounded_min(g).unwrap();
        assert_eq!(ev(&mu, &[3]), 3);
        assert_eq!(ev(&mu, &[9]), 5);
    }

    #[test]
    fn rendering() {
        let e = ElemExpr::monus(ElemExpr::succ(p(1, 1)), ElemExpr::zero(1)).unwrap();
        assert_eq!(e.render(false), "(S(x_1) ∸ 0)");
        assert_eq!(e.render(true), "(S(x_1) -. 0)");
        let q = ElemExpr::quot(p(2, 1), p(2, 2)).unwrap();
        assert_eq!(q.to_string(), "floor(x_1/(x_2+1))");
        let pw = ElemExpr::pow(p(2, 2), p(2, 1)).unwrap();
        assert_eq!(pw.to_string(), "(x_2^x_1)");
        let c = ElemExpr::comp(pw, vec![p(1, 1), ElemExpr::succ(p(1, 1))]).unwrap();
        assert_eq!(c.to_string(), "(S(x_1)^x_1)");
        let s = ElemExpr::bounded_sum(p(2, 2)).unwrap();
        assert_eq!(s.render(true), "sum[t_0 <= x_1](x_2)");
    }
}
