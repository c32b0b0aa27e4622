//! Residual evaluators for the arithmetic-index identities and a grid
//! verifier that collects every counterexample.
//!
//! Each identity is written as `lhs - rhs`; a residual of zero means it holds.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::closed_forms::{
    generic_power, r_matrix, r_power_closed, s_matrix, s_power_closed, CharRelation,
};
use crate::error::{Error, Result};
use crate::exact::{sign_pow, Int, Mat2, Params};
use crate::sequences::{fib, lucas};
use crate::sums::{alt_sum_arith_closed, alt_sum_arith_naive, sum_arith_closed, sum_arith_naive};

fn f_at(p: Params, n: i64) -> Int {
    fib(p.k(), p.index(n))
}

fn l_a(p: Params) -> Int {
    lucas(p.k(), p.a() as i64)
}

/// `F(k,a(n+1))^2 - L(k,a) F(k,an) F(k,a(n+1)) + (-1)^a F(k,an)^2`
/// against `F(k,a)^2 (-1)^(an)`.
pub fn catalan_like_sides(p: Params, n: i64) -> (Int, Int) {
    let (f0, f1) = (f_at(p, n), f_at(p, n + 1));
    let lhs = &f1 * &f1 - l_a(p) * &f0 * &f1 + &f0 * &f0 * p.sign();
    let fa = f_at(p, 1);
    (lhs, &fa * &fa * sign_pow(p.index(n)))
}

pub fn catalan_like_residual(p: Params, n: i64) -> Int {
    let (l, r) = catalan_like_sides(p, n);
    l - r
}

/// `F(k,a) F(k,a(n+m))` against
/// `F(k,a(n+1)) F(k,am) + F(k,a(m+1)) F(k,an) - L(k,a) F(k,an) F(k,am)`.
pub fn addition_sides(p: Params, n: i64, m: i64) -> (Int, Int) {
    let lhs = f_at(p, 1) * f_at(p, n + m);
    let (fn_, fm) = (f_at(p, n), f_at(p, m));
    let rhs = f_at(p, n + 1) * &fm + f_at(p, m + 1) * &fn_ - l_a(p) * &fn_ * &fm;
    (lhs, rhs)
}

pub fn addition_residual(p: Params, n: i64, m: i64) -> Int {
    let (l, r) = addition_sides(p, n, m);
    l - r
}

/// `(-1)^(am) F(k,a) F(k,a(n-m))` against
/// `F(k,a(m+1)) F(k,an) - F(k,a(n+1)) F(k,am)`.
pub fn subtraction_sides(p: Params, n: i64, m: i64) -> (Int, Int) {
    let lhs = f_at(p, 1) * f_at(p, n - m) * sign_pow(p.index(m));
    let rhs = f_at(p, m + 1) * f_at(p, n) - f_at(p, n + 1) * f_at(p, m);
    (lhs, rhs)
}

pub fn subtraction_residual(p: Params, n: i64, m: i64) -> Int {
    let (l, r) = subtraction_sides(p, n, m);
    l - r
}

/// `F(k,n+m)` against `F(k,m+1) F(k,n) + F(k,m) F(k,n-1)`.
pub fn honsberger_sides(k: u64, n: i64, m: i64) -> (Int, Int) {
    let lhs = fib(k, n + m);
    let rhs = fib(k, m + 1) * fib(k, n) + fib(k, m) * fib(k, n - 1);
    (lhs, rhs)
}

pub fn honsberger_residual(k: u64, n: i64, m: i64) -> Int {
    let (l, r) = honsberger_sides(k, n, m);
    l - r
}

/// `(-1)^m F(k,n-m)` against `F(k,m+1) F(k,n) - F(k,n+1) F(k,m)`.
pub fn docagne_sides(k: u64, n: i64, m: i64) -> (Int, Int) {
    let lhs = fib(k, n - m) * sign_pow(m);
    let rhs = fib(k, m + 1) * fib(k, n) - fib(k, n + 1) * fib(k, m);
    (lhs, rhs)
}

pub fn docagne_residual(k: u64, n: i64, m: i64) -> Int {
    let (l, r) = docagne_sides(k, n, m);
    l - r
}

/// First differing entry of two matrices as numerators over a shared
/// denominator, or `(0, 0)` when they are equal.
fn matrix_sides(x: &Mat2, y: &Mat2) -> (Int, Int) {
    if x == y {
        return (Int::from(0), Int::from(0));
    }
    for i in 0..2 {
        for j in 0..2 {
            let (xp, xq) = x.entry(i, j);
            let (yp, yq) = y.entry(i, j);
            if xp != yp || xq != yq {
                return (xp * &yq, yp * &xq);
            }
        }
    }
    unreachable!("unequal matrices differ in some entry")
}

/// Which identity a suite checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `F(k,a(n+1))^2 - L F(k,an) F(k,a(n+1)) + (-1)^a F(k,an)^2 = F(k,a)^2 (-1)^(an)`.
    Catalan,
    /// The same identity reached through `4 F(k,a)^2 det(S_a^n)`.
    CatalanDet,
    Addition,
    Subtraction,
    Honsberger,
    Docagne,
    /// `R^(n+1) = L(k,a) R^n - (-1)^a R^(n-1)` on the closed forms.
    MatrixRecurrence,
    /// Closed-form `R_a^n` against binary powering.
    RPower,
    /// Closed-form `S_a^n` against binary powering, plus `det = (-1)^(an)`.
    SPower,
    /// Closed plain sum against accumulation.
    Sum,
    /// Closed alternating sum against accumulation.
    AltSum,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Catalan,
        Identity::CatalanDet,
        Identity::Addition,
        Identity::Subtraction,
        Identity::Honsberger,
        Identity::Docagne,
        Identity::MatrixRecurrence,
        Identity::RPower,
        Identity::SPower,
        Identity::Sum,
        Identity::AltSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Catalan => "catalan",
            Identity::CatalanDet => "catalan-det",
            Identity::Addition => "addition",
            Identity::Subtraction => "subtraction",
            Identity::Honsberger => "honsberger",
            Identity::Docagne => "docagne",
            Identity::MatrixRecurrence => "matrix-recurrence",
            Identity::RPower => "r-power",
            Identity::SPower => "s-power",
            Identity::Sum => "sum",
            Identity::AltSum => "alt-sum",
        }
    }

    /// Smallest `n` the identity is stated for.
    pub fn n_min(self) -> i64 {
        match self {
            Identity::Catalan
            | Identity::CatalanDet
            | Identity::MatrixRecurrence
            | Identity::RPower
            | Identity::SPower => 1,
            _ => 0,
        }
    }

    pub fn uses_m(self) -> bool {
        matches!(
            self,
            Identity::Addition | Identity::Subtraction | Identity::Honsberger | Identity::Docagne
        )
    }

    /// The two corollaries fix `a = 1`.
    pub fn uses_a(self) -> bool {
        !matches!(self, Identity::Honsberger | Identity::Docagne)
    }

    /// Both sides of the identity at one grid point.
    pub fn sides(self, p: Params, n: i64, m: i64) -> Result<(Int, Int)> {
        let un = n.max(0) as u64;
        Ok(match self {
            Identity::Catalan => catalan_like_sides(p, n),
            Identity::CatalanDet => {
                let fa = f_at(p, 1);
                let det = s_power_closed(p, un)?.det()?;
                let (lhs10, _) = catalan_like_sides(p, n);
                (4 * &fa * &fa * det, 4 * lhs10)
            }
            Identity::Addition => addition_sides(p, n, m),
            Identity::Subtraction => subtraction_sides(p, n, m),
            Identity::Honsberger => honsberger_sides(p.k(), n, m),
            Identity::Docagne => docagne_sides(p.k(), n, m),
            Identity::MatrixRecurrence => {
                let next = r_power_closed(p, un + 1)?;
                let prev = match un {
                    0 => generic_power(&r_matrix(p), &CharRelation::new(p), -1)?,
                    _ => r_power_closed(p, un - 1)?,
                };
                let rhs =
                    &r_power_closed(p, un)?.mul_int(&l_a(p)) - &prev.mul_int(&Int::from(p.sign()));
                matrix_sides(&next, &rhs)
            }
            Identity::RPower => matrix_sides(&r_power_closed(p, un)?, &r_matrix(p).pow(un)),
            Identity::SPower => {
                let closed = s_power_closed(p, un)?;
                let sides = matrix_sides(&closed, &s_matrix(p).pow(un));
                if sides.0 != sides.1 {
                    sides
                } else {
                    (closed.det()?, Int::from(sign_pow(p.index(n))))
                }
            }
            Identity::Sum => (sum_arith_closed(p, un)?.value, sum_arith_naive(p, un)),
            Identity::AltSum => (
                alt_sum_arith_closed(p, un)?.value,
                alt_sum_arith_naive(p, un),
            ),
        })
    }

    /// The grid this identity is checked on for the given bounds.
    pub fn grid(self, bounds: Bounds) -> Grid {
        Grid {
            k: 1..=bounds.kmax,
            a: if self.uses_a() {
                1..=bounds.amax
            } else {
                1..=1
            },
            n: self.n_min()..=bounds.nmax,
            m: if self.uses_m() {
                0..=bounds.mmax
            } else {
                0..=0
            },
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown identity '{s}'")))
    }
}

/// Upper bounds for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub kmax: u64,
    pub amax: u64,
    pub nmax: i64,
    pub mmax: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub k: RangeInclusive<u64>,
    pub a: RangeInclusive<u64>,
    pub n: RangeInclusive<i64>,
    pub m: RangeInclusive<i64>,
}

impl Grid {
    pub fn cardinality(&self) -> u64 {
        let len_u = |r: &RangeInclusive<u64>| r.end().saturating_sub(*r.start()) + 1;
        let len_i = |r: &RangeInclusive<i64>| {
            if r.end() < r.start() {
                0
            } else {
                (r.end() - r.start()) as u64 + 1
            }
        };
        len_u(&self.k) * len_u(&self.a) * len_i(&self.n) * len_i(&self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub k: u64,
    pub a: u64,
    pub n: i64,
    pub m: i64,
    pub lhs: Int,
    pub rhs: Int,
    /// Set when evaluation itself failed, e.g. an inexact division.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub grid: Grid,
    pub checked: u64,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `identity` at every point of its grid, `k` outermost and `m`
/// innermost, and collects every failure.
pub fn verify_grid(identity: Identity, bounds: Bounds) -> IdentityReport {
    verify_with(identity.name(), identity.grid(bounds), |p, n, m| {
        identity.sides(p, n, m)
    })
}

/// Grid verification for an arbitrary two-sided evaluator.
pub fn verify_with<F>(name: &str, grid: Grid, mut sides: F) -> IdentityReport
where
    F: FnMut(Params, i64, i64) -> Result<(Int, Int)>,
{
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in grid.k.clone() {
        for a in grid.a.clone() {
            let p = Params::new(k, a).expect("grid bounds start at 1");
            for n in grid.n.clone() {
                for m in grid.m.clone() {
                    checked += 1;
                    let failure = |lhs, rhs, error| Failure {
                        k,
                        a,
                        n,
                        m,
                        lhs,
                        rhs,
                        error,
                    };
                    match sides(p, n, m) {
                        Ok((lhs, rhs)) if lhs == rhs => {}
                        Ok((lhs, rhs)) => failures.push(failure(lhs, rhs, None)),
                        Err(Error::InexactDivision { num, den }) => failures.push(failure(
                            num.clone(),
                            den.clone(),
                            Some(Error::InexactDivision { num, den }.to_string()),
                        )),
                        Err(e) => {
                            failures.push(failure(Int::from(0), Int::from(0), Some(e.to_string())))
                        }
                    }
                }
            }
        }
    }
    IdentityReport {
        identity: name.to_string(),
        grid,
        checked,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u64, a: u64) -> Params {
        Params::new(k, a).unwrap()
    }

    fn zero() -> Int {
        Int::from(0)
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_like_sides(p(1, 1), 2), (Int::from(1), Int::from(1)));
        assert_eq!(catalan_like_residual(p(1, 1), 2), zero());
        assert_eq!(catalan_like_residual(p(1, 2), 1), zero());
        // 144 - 120 - 25 = -1 = 1 * (-1)^3
        assert_eq!(
            catalan_like_sides(p(2, 1), 3),
            (Int::from(-1), Int::from(-1))
        );
    }

    #[test]
    fn addition_examples() {
        for n in 0..10 {
            assert_eq!(addition_residual(p(2, 3), n, 0), zero());
        }
        assert_eq!(addition_sides(p(1, 2), 1, 2), (Int::from(8), Int::from(8)));
        assert_eq!(
            addition_sides(p(2, 1), 2, 3),
            (Int::from(29), Int::from(29))
        );
    }

    #[test]
    fn subtraction_examples() {
        for n in 0..10 {
            assert_eq!(subtraction_residual(p(3, 2), n, n), zero());
        }
        assert_eq!(
            subtraction_sides(p(1, 1), 3, 1),
            (Int::from(-1), Int::from(-1))
        );
        // needs F(1,-2) = -1
        assert_eq!(
            subtraction_sides(p(1, 2), 1, 2),
            (Int::from(-1), Int::from(-1))
        );
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(honsberger_sides(1, 3, 4), (Int::from(13), Int::from(13)));
        assert_eq!(docagne_sides(1, 5, 2), (Int::from(2), Int::from(2)));
        for k in 1..=3 {
            for n in 0..8 {
                assert_eq!(honsberger_residual(k, n, 0), zero());
                assert_eq!(docagne_residual(k, n, 0), zero());
            }
        }
    }

    #[test]
    fn honsberger_is_addition_at_stride_one() {
        // F(k,n+m) - [F(k,m+1)F(k,n) + F(k,m)F(k,n-1)] and the a = 1 addition
        // residual differ only by rewriting F(k,n-1) = F(k,n+1) - k F(k,n).
        for k in 1..=4 {
            for n in 0..=15 {
                for m in 0..=15 {
                    assert_eq!(
                        honsberger_residual(k, n, m),
                        addition_residual(p(k, 1), n, m)
                    );
                    assert_eq!(
                        docagne_residual(k, n, m),
                        subtraction_residual(p(k, 1), n, m)
                    );
                }
            }
        }
    }

    #[test]
    fn residuals_vanish_on_full_grid() {
        for k in 1..=4 {
            for a in 1..=5 {
                let q = p(k, a);
                for n in 0..=20 {
                    assert_eq!(catalan_like_residual(q, n), zero(), "k={k} a={a} n={n}");
                    for m in 0..=20 {
                        assert_eq!(addition_residual(q, n, m), zero());
                        assert_eq!(subtraction_residual(q, n, m), zero());
                    }
                }
            }
            for n in 0..=20 {
                for m in 0..=20 {
                    assert_eq!(honsberger_residual(k, n, m), zero(), "k={k} n={n} m={m}");
                    assert_eq!(docagne_residual(k, n, m), zero());
                }
            }
        }
    }

    #[test]
    fn addition_is_symmetric() {
        for k in 1..=3 {
            for a in 1..=4 {
                for n in 0..=12 {
                    for m in 0..=12 {
                        assert_eq!(addition_sides(p(k, a), n, m), addition_sides(p(k, a), m, n));
                    }
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let b = |k, a, n, m| Bounds {
            kmax: k,
            amax: a,
            nmax: n,
            mmax: m,
        };
        let r = verify_grid(Identity::Catalan, b(3, 3, 10, 1));
        assert_eq!((r.checked, r.failures.len()), (90, 0));
        let r = verify_grid(Identity::Addition, b(3, 3, 8, 8));
        assert_eq!(r.checked, 3 * 3 * 9 * 9);
        assert!(r.passed());
        let r = verify_grid(Identity::Honsberger, b(3, 3, 8, 8));
        assert_eq!(r.checked, 3 * 9 * 9);
        assert!(r.passed());
    }

    #[test]
    fn every_suite_passes_small_grid() {
        let bounds = Bounds {
            kmax: 2,
            amax: 3,
            nmax: 8,
            mmax: 8,
        };
        for id in Identity::ALL {
            let r = verify_grid(id, bounds);
            assert_eq!(r.checked, r.grid.cardinality(), "{id}");
            assert!(r.passed(), "{id}: {:?}", r.failures);
        }
    }

    #[test]
    fn perturbed_identity_is_caught() {
        let grid = Identity::Addition.grid(Bounds {
            kmax: 2,
            amax: 2,
            nmax: 5,
            mmax: 5,
        });
        // off by one in the index of the left-hand side
        let r = verify_with("addition-perturbed", grid, |p, n, m| {
            let (_, rhs) = addition_sides(p, n, m);
            Ok((f_at(p, 1) * f_at(p, n + m + 1), rhs))
        });
        assert!(!r.passed());
        assert!(r.failures.len() <= r.checked as usize);
        let keys: Vec<_> = r.failures.iter().map(|f| (f.k, f.a, f.n, f.m)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn errors_become_failures() {
        let grid = Grid {
            k: 1..=1,
            a: 1..=1,
            n: 0..=0,
            m: 0..=0,
        };
        let r = verify_with("inexact", grid, |_, _, _| {
            Err(Error::InexactDivision {
                num: Int::from(28),
                den: Int::from(5),
            })
        });
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].lhs, Int::from(28));
        assert!(r.failures[0].error.is_some());
    }

    #[test]
    fn stated_for_n_ge_1_but_hold_at_zero() {
        for k in 1..=3 {
            for a in 1..=4 {
                for id in [
                    Identity::Catalan,
                    Identity::CatalanDet,
                    Identity::MatrixRecurrence,
                ] {
                    let (l, r) = id.sides(p(k, a), 0, 0).unwrap();
                    assert_eq!(l, r, "{id} k={k} a={a}");
                }
            }
        }
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("nope".parse::<Identity>().is_err());
    }
}
