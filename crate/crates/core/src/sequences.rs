//! k-Fibonacci and k-Lucas kernels.
//!
//! `F(k, 0) = 0`, `F(k, 1) = 1`, `F(k, n+1) = k F(k, n) + F(k, n-1)`, extended
//! to negative indexes by `F(k, -n) = (-1)^(n+1) F(k, n)`.
//! `L(k, n) = F(k, n+1) + F(k, n-1)` at every integer `n`, so `L(k, 0) = 2`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{sign_pow, Int, Params};

/// Largest index accepted by [`binet_check`].
pub const BINET_MAX_INDEX: i64 = 70;

/// `F(k, n)` for any integer `n`, by plain recurrence iteration.
///
/// This is the reference path; it costs `|n|` big-int additions. Use
/// [`fib_pair_fast`] for large non-negative indexes.
pub fn fib(k: u64, n: i64) -> Int {
    let m = n.unsigned_abs();
    let (mut prev, mut cur) = (Int::zero(), Int::one());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &cur * k + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    if n < 0 && sign_pow(n + 1) < 0 {
        -cur
    } else {
        cur
    }
}

/// `L(k, n) = F(k, n+1) + F(k, n-1)`.
pub fn lucas(k: u64, n: i64) -> Int {
    fib(k, n + 1) + fib(k, n - 1)
}

/// `(F(k, n), F(k, n+1))` by fast doubling.
///
/// Uses the addition formula specialised at `m = n` and `m = n + 1`:
///
/// ```text
/// F(2n)   = F(n) (2 F(n+1) - k F(n))
/// F(2n+1) = F(n+1)^2 + F(n)^2
/// ```
pub fn fib_pair_fast(k: u64, n: u64) -> (Int, Int) {
    let mut mults = 0;
    fib_pair_fast_counted(k, n, &mut mults)
}

/// Same as [`fib_pair_fast`], adding the number of big-int by big-int
/// products to `mults`. Products by the word-sized `k` are not counted.
///
/// Exactly `3 * floor(log2 n)` products for `n >= 1`.
pub fn fib_pair_fast_counted(k: u64, n: u64, mults: &mut u64) -> (Int, Int) {
    if n == 0 {
        return (Int::zero(), Int::one());
    }
    // Start at the leading bit: (F(1), F(2)).
    let mut f = Int::one();
    let mut g = Int::from(k);
    let top = 63 - n.leading_zeros();
    for bit in (0..top).rev() {
        let two_g_minus_kf = (&g << 1u32) - &f * k;
        let even = &f * &two_g_minus_kf;
        let odd = &g * &g + &f * &f;
        *mults += 3;
        if (n >> bit) & 1 == 1 {
            g = &odd * k + even;
            f = odd;
        } else {
            f = even;
            g = odd;
        }
    }
    (f, g)
}

/// `F(k, n)` for any integer `n`, through [`fib_pair_fast`].
pub fn fib_fast(k: u64, n: i64) -> Int {
    let (f, _) = fib_pair_fast(k, n.unsigned_abs());
    if n < 0 && sign_pow(n + 1) < 0 {
        -f
    } else {
        f
    }
}

/// `L(k, n)` for any integer `n`, through [`fib_pair_fast`].
pub fn lucas_fast(k: u64, n: i64) -> Int {
    fib_fast(k, n + 1) + fib_fast(k, n - 1)
}

/// `Δ_a = L(k, a)^2 - 4 (-1)^a`. Always positive.
pub fn delta(p: Params) -> Int {
    let l = lucas(p.k(), p.a() as i64);
    &l * &l - 4 * p.sign()
}

/// `ε_a(n) = 2 F(k, a(n+1)) - L(k, a) F(k, an)`, the diagonal numerator of
/// `S_a^n`.
pub fn epsilon(p: Params, n: u64) -> Int {
    let k = p.k();
    let n = n as i64;
    2 * fib(k, p.index(n + 1)) - lucas(k, p.a() as i64) * fib(k, p.index(n))
}

/// One point of the sequence pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPoint {
    pub k: u64,
    pub n: i64,
    pub f: Int,
    pub l: Int,
}

impl SeqPoint {
    pub fn new(k: u64, n: i64) -> Self {
        SeqPoint {
            k,
            n,
            f: fib(k, n),
            l: lucas(k, n),
        }
    }
}

/// The roots `(k ± sqrt(k^2 + 4)) / 2` of `x^2 - k x - 1`, in double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub sigma1: f64,
    pub sigma2: f64,
}

impl RootPair {
    pub fn new(k: u64) -> Self {
        let k = k as f64;
        let root = (k * k + 4.0).sqrt();
        RootPair {
            sigma1: (k + root) / 2.0,
            // (k - root) / 2 cancels badly for large k; use sigma1 * sigma2 = -1.
            sigma2: -2.0 / (k + root),
        }
    }

    /// Binet's approximation `(σ1^n - σ2^n) / (σ1 - σ2)`.
    pub fn binet(&self, n: i64) -> f64 {
        let n = n as i32;
        (self.sigma1.powi(n) - self.sigma2.powi(n)) / (self.sigma1 - self.sigma2)
    }
}

/// Relative residual `|binet - F(k, n)| / max(1, |F(k, n)|)`.
///
/// A floating cross-check only; nothing computes through it.
pub fn binet_check(k: u64, n: i64) -> Result<f64> {
    if !(0..=BINET_MAX_INDEX).contains(&n) {
        return Err(Error::IndexTooLarge {
            n,
            max: BINET_MAX_INDEX,
        });
    }
    let exact = to_f64(&fib(k, n));
    let approx = RootPair::new(k).binet(n);
    Ok((approx - exact).abs() / exact.abs().max(1.0))
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u64, a: u64) -> Params {
        Params::new(k, a).unwrap()
    }

    /// Independent oracle: the table 0..=n built by accumulation.
    fn table(k: u64, n: usize) -> Vec<Int> {
        let mut t = vec![Int::zero(), Int::one()];
        while t.len() <= n {
            let l = t.len();
            let next = &t[l - 1] * k + &t[l - 2];
            t.push(next);
        }
        t.truncate(n + 1);
        t
    }

    #[test]
    fn seeds() {
        assert_eq!(fib(1, 0), Int::from(0));
        assert_eq!(fib(1, 1), Int::from(1));
        for k in 1..=5 {
            assert_eq!(fib(k, 0), Int::from(0));
            assert_eq!(fib(k, 1), Int::from(1));
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(fib(2, 5), Int::from(29));
        assert_eq!(fib(3, -4), Int::from(-33));
        assert_eq!(fib(3, 4), Int::from(33));
        assert_eq!(fib(1, -1), Int::from(1));
        assert_eq!(fib(1, -2), Int::from(-1));
    }

    #[test]
    fn fib_matches_table() {
        for k in 1..=5 {
            let t = table(k, 40);
            for (n, v) in t.iter().enumerate() {
                assert_eq!(&fib(k, n as i64), v);
            }
        }
    }

    #[test]
    fn recurrence_and_negative_extension() {
        for k in 1..=5u64 {
            for n in -30..=30i64 {
                assert_eq!(fib(k, n + 1), fib(k, n) * k + fib(k, n - 1), "k={k} n={n}");
                assert_eq!(fib(k, -n), fib(k, n) * sign_pow(n + 1), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn lucas_values() {
        assert_eq!(lucas(1, 0), Int::from(2));
        for k in 1..=5 {
            assert_eq!(lucas(k, 1), Int::from(k));
        }
        assert_eq!(lucas(1, 2), Int::from(3));
        assert_eq!(lucas(3, 2), Int::from(11));
    }

    #[test]
    fn lucas_satisfies_its_own_recurrence() {
        for k in 1..=5u64 {
            let mut prev = Int::from(2);
            let mut cur = Int::from(k);
            assert_eq!(lucas(k, 0), prev);
            assert_eq!(lucas(k, 1), cur);
            for n in 2..=30 {
                let next = &cur * k + &prev;
                assert_eq!(lucas(k, n), next, "k={k} n={n}");
                prev = std::mem::replace(&mut cur, next);
            }
        }
    }

    #[test]
    fn doubling_formulas_hold_against_iteration() {
        for k in 1..=5u64 {
            let t = table(k, 101);
            for n in 0..=50usize {
                // F(-1) = 1
                let prev = if n == 0 { Int::one() } else { t[n - 1].clone() };
                assert_eq!(t[2 * n], &t[n] * (&t[n + 1] + prev), "k={k} n={n}");
                assert_eq!(
                    t[2 * n + 1],
                    &t[n + 1] * &t[n + 1] + &t[n] * &t[n],
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn fast_pair_examples() {
        assert_eq!(fib_pair_fast(3, 0), (Int::from(0), Int::from(1)));
        assert_eq!(fib_pair_fast(1, 10), (Int::from(55), Int::from(89)));
        assert_eq!(fib_pair_fast(2, 6), (Int::from(70), Int::from(169)));
    }

    #[test]
    fn fast_pair_matches_iteration() {
        for k in 1..=5u64 {
            for n in 0..=200u64 {
                assert_eq!(
                    fib_pair_fast(k, n),
                    (fib(k, n as i64), fib(k, n as i64 + 1)),
                    "k={k} n={n}"
                );
            }
        }
        for n in [1_000u64, 10_000, 100_000] {
            assert_eq!(fib_pair_fast(1, n).0, fib(1, n as i64), "n={n}");
        }
    }

    #[test]
    fn fast_pair_mult_count() {
        for n in 1..5000u64 {
            let mut m = 0;
            fib_pair_fast_counted(2, n, &mut m);
            assert_eq!(m, 3 * (63 - n.leading_zeros()) as u64);
        }
    }

    #[test]
    fn fast_variants_agree_on_negative_indexes() {
        for k in 1..=4 {
            for n in -25..=25 {
                assert_eq!(fib_fast(k, n), fib(k, n));
                assert_eq!(lucas_fast(k, n), lucas(k, n));
            }
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(p(1, 1)), Int::from(5));
        assert_eq!(delta(p(1, 2)), Int::from(5));
        assert_eq!(delta(p(3, 2)), Int::from(117));
        for k in 1..=4 {
            for a in 1..=5 {
                assert!(delta(p(k, a)) > Int::zero());
            }
        }
    }

    #[test]
    fn epsilon_values() {
        for k in 1..=4 {
            for a in 1..=5 {
                let q = p(k, a);
                let fa = fib(k, a as i64);
                assert_eq!(epsilon(q, 0), 2 * &fa);
                assert_eq!(epsilon(q, 1), &fa * lucas(k, a as i64));
                assert_eq!(epsilon(q, 1), fib(k, 2 * a as i64));
            }
        }
        assert_eq!(epsilon(p(1, 1), 2), Int::from(3));
    }

    #[test]
    fn epsilon_delta_relation() {
        for k in 1..=4u64 {
            for a in 1..=5u64 {
                let q = p(k, a);
                let fa = fib(k, a as i64);
                for n in 0..=20u64 {
                    let e = epsilon(q, n);
                    let f = fib(k, q.index(n as i64));
                    let lhs = &e * &e - delta(q) * &f * &f;
                    let rhs = 4 * &fa * &fa * sign_pow(q.index(n as i64));
                    assert_eq!(lhs, rhs, "k={k} a={a} n={n}");
                }
            }
        }
    }

    #[test]
    fn seq_point_invariants() {
        for k in 1..=3 {
            for n in -10..=10 {
                let s = SeqPoint::new(k, n);
                assert_eq!(s.l, fib(k, n + 1) + fib(k, n - 1));
                assert_eq!(fib(k, n + 1), &s.f * k + fib(k, n - 1));
            }
        }
    }

    #[test]
    fn root_pair_relations() {
        for k in 1..=5 {
            let r = RootPair::new(k);
            assert!(((r.sigma1 + r.sigma2) - k as f64).abs() <= 1e-12 * k as f64);
            assert!((r.sigma1 * r.sigma2 + 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn binet_examples() {
        assert!(binet_check(1, 1).unwrap() < 1e-12);
        assert_eq!(fib(1, 20), Int::from(6765));
        assert!(binet_check(1, 20).unwrap() < 1e-9);
        assert!(binet_check(2, 30).unwrap() < 1e-9);
        assert_eq!(
            binet_check(1, 71),
            Err(Error::IndexTooLarge { n: 71, max: 70 })
        );
        assert!(binet_check(1, -1).is_err());
    }
}
