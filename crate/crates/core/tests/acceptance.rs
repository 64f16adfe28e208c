//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nonperiod::cauchy::{is_fast_step, FastSeq};
use nonperiod::diagonal::Diagonal;
use nonperiod::io::load_domain;
use nonperiod::pairing::{left, pair, right, unpair};
use nonperiod::semialg::{approximate_volume, contained_cubes, riemann_volume, BasicDomain, IntPolynomial};
use nonperiod::{Budget, Code, Enumeration, Error, Rat, ZeroPow};

const TABLE: &str = "10111111010110110111111011010110110101111111111011011111100110110101101110111111";
const DIGITS: &str = "0.388832221773824641256243009581";
const PI_20: &str = "314159265358979323846";
const LN2_20: &str = "69314718055994530942";

type Outcome = Result<String, String>;

fn fixture(name: &str) -> BasicDomain {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    load_domain(&path).expect("fixture loads")
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nonperiod").chain(args.iter().copied());
    let code = nonperiod::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8").trim_end().to_string())
}

/// `[x, x + 10^-20]` for a constant given by its first 20 fractional digits.
fn reference(digits: &str, int_digits: usize) -> (Rat, Rat) {
    let scale: BigInt = Pow::pow(BigInt::from(10u32), (digits.len() - int_digits) as u64);
    let lo = Rat::new(digits.parse().unwrap(), scale.clone());
    let hi = &lo + Rat::new(BigInt::one(), scale);
    (lo, hi)
}

/// Largest possible distance from `v` to a point of `[lo, hi]`.
fn max_error(v: &Rat, (lo, hi): &(Rat, Rat)) -> Rat {
    std::cmp::max((v - lo).abs(), (v - hi).abs())
}

fn frac(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{:.2?}", elapsed))
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn golden_table() -> Outcome {
    let t = Instant::now();
    let (code, out) = cli(&["epsilons", "--count", "80"]);
    let bits: String = out.split(' ').collect();
    if code != 0 || bits != TABLE {
        return Err(format!("exit {code}, got {bits}"));
    }
    within(t.elapsed(), Duration::from_secs(60))
}

fn golden_digits() -> Outcome {
    let t = Instant::now();
    let (code, out) = cli(&["alpha-digits", "--digits", "30"]);
    if code != 0 || out != DIGITS {
        return Err(format!("exit {code}, got {out}"));
    }
    within(t.elapsed(), Duration::from_secs(120))
}

fn enumeration_fixtures() -> Outcome {
    let en = Enumeration::default();
    let b = Budget::default();
    let closed: [(u64, fn(u64) -> BigUint); 6] = [
        (0, |x| x.into()),
        (1, |x| (x + 1).into()),
        (2, |x| x.into()),
        (3, |_| BigUint::zero()),
        (4, |x| (x + 2).into()),
        (169, |x| Pow::pow(BigUint::from(x + 1), x) + 1u32),
    ];
    for (e, f) in closed {
        for x in 0..=20u64 {
            let got = en.f(Code(e), &x.into(), &b).map_err(|err| format!("f_{e}({x}): {err}"))?;
            if got != f(x) {
                return Err(format!("f_{e}({x}) = {got}, expected {}", f(x)));
            }
        }
    }
    let betas = [(0, frac(0, 1)), (1, frac(1, 1)), (2, frac(0, 1)), (3, frac(0, 1)), (4, frac(1, 2)), (40, frac(3, 4))];
    for (e, expected) in betas {
        let approx = nonperiod::beta(&en, Code(e), 10, &b).map_err(|err| format!("beta {e}: {err}"))?;
        if approx.radius != Rat::new(1.into(), BigInt::from(6) * Pow::pow(BigInt::from(7), 10u32)) {
            return Err(format!("beta {e}: radius {}", approx.radius));
        }
        if (&approx.value - &expected).abs() >= approx.radius {
            return Err(format!("beta {e}: {} not within radius of {expected}", approx.value));
        }
    }
    Ok("f_0..f_4, f_169 on 0..=20; six betas".into())
}

fn pairing_suite() -> Outcome {
    let t = Instant::now();
    for z in 0..100_000u64 {
        let (l, r) = unpair(z);
        if pair(l, r) != z {
            return Err(format!("J(L({z}), R({z})) != {z}"));
        }
    }
    for x in 0..300u64 {
        for y in 0..300u64 {
            let z = pair(x, y);
            if left(z) != x || right(z) != y {
                return Err(format!("L/R(J({x}, {y})) wrong"));
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(5))
}

/// Fastness over `e <= 200`, `n <= 50`, for a given convention. Returns the
/// number of indeterminate sequences seen.
fn fastness_with(zero_pow: ZeroPow) -> Result<usize, String> {
    let en = Enumeration::new(zero_pow);
    let mut indeterminate = 0;
    for e in 0..=200u64 {
        let mut seq = FastSeq::new(&en, Code(e), Budget::default());
        let mut values = Vec::new();
        for n in 0..=51u64 {
            match seq.value(n) {
                Ok(v) => values.push(Some(v)),
                Err(Error::Indeterminate) => values.push(None),
                Err(err) => return Err(format!("e={e} n={n}: {err}")),
            }
        }
        if values.iter().all(Option::is_none) {
            indeterminate += 1;
            continue;
        }
        for n in 0..=50usize {
            match (&values[n], &values[n + 1]) {
                (Some(a), Some(b)) if is_fast_step(a, b, n as u64) => {}
                _ => return Err(format!("e={e}: step {n} not fast under {zero_pow:?}")),
            }
        }
    }
    Ok(indeterminate)
}

fn fastness_suite() -> Outcome {
    let total = fastness_with(ZeroPow::One)?;
    if total != 0 {
        return Err(format!("{total} undefined sequences under 0^0 = 1"));
    }
    let undefined = fastness_with(ZeroPow::Indeterminate)?;
    Ok(format!("all 201 sequences under 0^0 = 1; {} defined ones under indeterminate 0^0", 201 - undefined))
}

/// Separation for `e < 80` under a convention. Indeterminate `β_e` define no
/// real; for them the bit must be 1.
fn separation_with(zero_pow: ZeroPow) -> Result<usize, String> {
    let en = Enumeration::new(zero_pow);
    let mut diag = Diagonal::new(Enumeration::new(zero_pow), Budget::default());
    let eps = diag.epsilons(80).map_err(|e| e.to_string())?;
    let mut undefined = 0;
    for e in 0..80u64 {
        let bit = eps[e as usize];
        let (lo, hi) = diag.alpha_interval(e + 1).map_err(|e| e.to_string())?;
        match nonperiod::beta(&en, Code(e), e, &Budget::default()) {
            Ok(b) => {
                let ok = if bit == 0 { b.lower() >= hi } else { b.upper() <= lo };
                if !ok {
                    return Err(format!("e={e} ε={bit}: β interval meets α enclosure"));
                }
            }
            Err(Error::Indeterminate) if bit == 1 => undefined += 1,
            Err(err) => return Err(format!("e={e}: {err}")),
        }
    }
    Ok(undefined)
}

fn separation_suite() -> Outcome {
    let none = separation_with(ZeroPow::One)?;
    let undefined = separation_with(ZeroPow::Indeterminate)?;
    Ok(format!("80 separations under 0^0 = 1 ({none} undefined); {} under indeterminate 0^0 plus {undefined} undefined with ε = 1", 80 - undefined))
}

fn volume_exactness() -> Outcome {
    let d = fixture("interval.json");
    for n in [4u64, 10, 100, 1000] {
        let s = riemann_volume(&d, n, 6).map_err(|e| e.to_string())?;
        let expected = Rat::new(BigInt::from(n - 2), BigInt::from(n));
        if s.volume != expected {
            return Err(format!("n={n}: {} != {expected}", s.volume));
        }
    }
    Ok("(n-2)/n for n in 4, 10, 100, 1000".into())
}

fn period_approximation() -> Outcome {
    let pi = reference(PI_20, 1);
    let ln2 = reference(LN2_20, 0);
    let mut report = Vec::new();
    for (name, domain, constant, tol) in
        [("disc", fixture("disc.json"), &pi, frac(1, 50)), ("log-2", fixture("log2.json"), &ln2, frac(1, 20))]
    {
        let t = Instant::now();
        let a = approximate_volume(&domain, &tol, 8, 2048, 6).map_err(|e| format!("{name}: {e}"))?;
        let err = max_error(&a.value, constant);
        if err >= tol {
            return Err(format!("{name}: value {} off by more than {tol}", a.value));
        }
        within(t.elapsed(), Duration::from_secs(300)).map_err(|e| format!("{name}: {e}"))?;
        report.push(format!("{name} at n={}", a.n_used));
    }
    Ok(report.join(", "))
}

fn convergence_rate() -> Outcome {
    let pi = reference(PI_20, 1);
    let disc = fixture("disc.json");
    let mut ratios = Vec::new();
    for n in [64u64, 128, 256, 512] {
        let coarse = riemann_volume(&disc, n, 6).map_err(|e| e.to_string())?.volume;
        let fine = riemann_volume(&disc, 2 * n, 6).map_err(|e| e.to_string())?.volume;
        // ratio bounds hold for every π in the reference interval
        let (lo, hi) = &pi;
        let ratio_min = (lo - &coarse) / (hi - &fine);
        let ratio_max = (hi - &coarse) / (lo - &fine);
        if ratio_min < frac(16, 10) || ratio_max > frac(26, 10) {
            return Err(format!("n={n}: ratio in [{ratio_min}, {ratio_max}]"));
        }
        ratios.push(format!("{:.3}", num_traits::ToPrimitive::to_f64(&ratio_min).unwrap_or(f64::NAN)));
    }
    Ok(format!("ratios {}", ratios.join(", ")))
}

fn soundness_sampling() -> Outcome {
    let disc = fixture("disc.json");
    let r = disc.box_scale().clone();
    let cubes = contained_cubes(&disc, 64, 6).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut points = 0u64;
    for cube in &cubes {
        let bounds = cube.bounds(&r);
        for _ in 0..100 {
            let x: Vec<Rat> = bounds
                .iter()
                .map(|(lo, hi)| {
                    let q: i64 = rng.gen_range(1..=1_000_000);
                    let p: i64 = rng.gen_range(0..=q);
                    lo + (hi - lo) * frac(p, q)
                })
                .collect();
            if !disc.constraints().iter().all(|g: &IntPolynomial| g.eval(&x).is_positive()) {
                return Err(format!("point {x:?} in cube {:?} violates a constraint", cube.k));
            }
            points += 1;
        }
    }
    Ok(format!("{points} points in {} cubes", cubes.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden epsilon table", golden_table),
        ("golden digits", golden_digits),
        ("enumeration fixtures", enumeration_fixtures),
        ("pairing properties", pairing_suite),
        ("fastness", fastness_suite),
        ("separation", separation_suite),
        ("volume exactness", volume_exactness),
        ("period approximation", period_approximation),
        ("convergence rate", convergence_rate),
        ("soundness sampling", soundness_sampling),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
