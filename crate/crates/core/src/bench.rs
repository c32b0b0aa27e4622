//! Benchmark harness comparing three ways to reach `F(k, n)`.
//!
//! The multiplication count is the number of products whose operands are
//! both arbitrary-precision values. The iterative kernel keeps `k` as a
//! big integer and multiplies by it once per step, so it pays `n - 1`.
//! Matrix powering squares a full 2x2 matrix (8 products) per bit and
//! applies the companion step as a word-sized shift. Fast doubling pays 3
//! per bit.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::Int;
use crate::sequences::fib_pair_fast_counted;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Iterative,
    MatrixPow,
    FastDoubling,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Iterative,
        Strategy::MatrixPow,
        Strategy::FastDoubling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Iterative => "iterative",
            Strategy::MatrixPow => "matrix-pow",
            Strategy::FastDoubling => "fast-doubling",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown strategy '{s}'")))
    }
}

/// `F(k, n)` by `n - 1` recurrence steps.
pub fn iterative_counted(k: u64, n: u64, mults: &mut u64) -> Int {
    if n == 0 {
        return Int::zero();
    }
    let k = BigInt::from(k);
    let (mut prev, mut cur) = (Int::zero(), Int::one());
    for _ in 1..n {
        let next = &k * &cur + &prev;
        *mults += 1;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `F(k, n)` as the off-diagonal entry of `[[k, 1], [1, 0]]^n`, by
/// left-to-right binary powering.
pub fn matrix_pow_counted(k: u64, n: u64, mults: &mut u64) -> Int {
    if n == 0 {
        return Int::zero();
    }
    // [[a, b], [c, d]] starts at Q.
    let (mut a, mut b, mut c, mut d) = (Int::from(k), Int::one(), Int::one(), Int::zero());
    let top = 63 - n.leading_zeros();
    for bit in (0..top).rev() {
        let na = &a * &a + &b * &c;
        let nb = &a * &b + &b * &d;
        let nc = &c * &a + &d * &c;
        let nd = &c * &b + &d * &d;
        *mults += 8;
        (a, b, c, d) = (na, nb, nc, nd);
        if (n >> bit) & 1 == 1 {
            // right-multiply by Q
            let na = &a * k + &b;
            let nc = &c * k + &d;
            (a, b, c, d) = (na, a, nc, c);
        }
    }
    b
}

pub fn fast_doubling_counted(k: u64, n: u64, mults: &mut u64) -> Int {
    fib_pair_fast_counted(k, n, mults).0
}

/// `F(k, n)` with the chosen strategy and its multiplication count.
pub fn evaluate(strategy: Strategy, k: u64, n: u64) -> (Int, u64) {
    let mut mults = 0;
    let v = match strategy {
        Strategy::Iterative => iterative_counted(k, n, &mut mults),
        Strategy::MatrixPow => matrix_pow_counted(k, n, &mut mults),
        Strategy::FastDoubling => fast_doubling_counted(k, n, &mut mults),
    };
    (v, mults)
}

/// Number of decimal digits of `|x|`.
pub fn decimal_digits(x: &Int) -> usize {
    x.abs().to_string().len()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub strategy: Strategy,
    pub k: u64,
    pub n: u64,
    /// Median wall time over the timed repetitions.
    pub millis: f64,
    pub mults: u64,
    pub digits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub k: u64,
    pub n: u64,
    pub strategies: (Strategy, Strategy),
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} and {} disagree on F({}, {})",
            self.strategies.0, self.strategies.1, self.k, self.n
        )
    }
}

impl std::error::Error for Disagreement {}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

/// Runs every strategy at every `n`, sequentially on this thread.
///
/// One untimed warm-up run per `(strategy, n)` produces the values that are
/// compared across strategies; only then are `reps` timed runs made.
pub fn run_bench(
    k: u64,
    ns: &[u64],
    strategies: &[Strategy],
    reps: usize,
) -> Result<Vec<BenchRecord>, Disagreement> {
    let reps = reps.max(1);
    let mut records = Vec::new();
    for &n in ns {
        let warm: Vec<(Strategy, Int, u64)> = strategies
            .iter()
            .map(|&s| {
                let (v, m) = evaluate(s, k, n);
                (s, v, m)
            })
            .collect();
        if let Some(first) = warm.first() {
            if let Some(other) = warm.iter().find(|w| w.1 != first.1) {
                return Err(Disagreement {
                    k,
                    n,
                    strategies: (first.0, other.0),
                });
            }
        }
        let digits = warm.first().map(|w| decimal_digits(&w.1)).unwrap_or(0);
        for (strategy, _, mults) in warm {
            let times = (0..reps)
                .map(|_| {
                    let start = Instant::now();
                    std::hint::black_box(evaluate(strategy, k, n));
                    start.elapsed().as_secs_f64() * 1e3
                })
                .collect();
            records.push(BenchRecord {
                strategy,
                k,
                n,
                millis: median(times),
                mults,
                digits,
            });
        }
    }
    Ok(records)
}
