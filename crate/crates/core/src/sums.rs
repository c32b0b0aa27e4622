//! Sums of `F(k, ai)` for `i = 0..=n`, plain and alternating.
//!
//! ```text
//!   sum       F(k,ai) = ((-1)^a F(k,an) + F(k,a) - F(k,a(n+1))) / (1 + (-1)^a - L(k,a))
//!   sum (-1)^i F(k,ai) = ((-1)^a F(k,an) - F(k,a) + F(k,a(n+1))) / (1 + (-1)^a + L(k,a))   (n even)
//! ```
//!
//! The alternating formula only holds for even `n`. For odd `n` the sum is
//! the even formula at `n - 1` minus `F(k, an)`, which is what
//! [`alt_sum_arith_closed`] does. [`alt_sum_as_stated`] evaluates the
//! displayed formula at any `n` so the odd-`n` disagreement can be shown.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{checked_div, Int, Params};
use crate::sequences::{fib, lucas};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    Plain,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Naive,
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumKind::Plain => "plain",
            SumKind::Alternating => "alternating",
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::Naive => "naive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub params: Params,
    pub n: u64,
    pub kind: SumKind,
    pub method: Method,
    pub value: Int,
    /// `δ` for plain sums, `δ'` for alternating ones.
    pub denominator: Int,
}

/// `δ = 1 + (-1)^a - L(k,a)`, which is `det(I - S_a)`.
pub fn plain_denominator(p: Params) -> Int {
    1 + p.sign() - lucas(p.k(), p.a() as i64)
}

/// `δ' = 1 + (-1)^a + L(k,a)`, which is `det(I + S_a)`.
pub fn alt_denominator(p: Params) -> Int {
    1 + p.sign() + lucas(p.k(), p.a() as i64)
}

pub fn denominator(p: Params, kind: SumKind) -> Int {
    match kind {
        SumKind::Plain => plain_denominator(p),
        SumKind::Alternating => alt_denominator(p),
    }
}

fn f_at(p: Params, i: u64) -> Int {
    fib(p.k(), p.index(i as i64))
}

/// `sum_{i=0}^{n} F(k, ai)` by accumulation.
pub fn sum_arith_naive(p: Params, n: u64) -> Int {
    (0..=n).map(|i| f_at(p, i)).sum()
}

/// `sum_{i=0}^{n} (-1)^i F(k, ai)` by accumulation.
pub fn alt_sum_arith_naive(p: Params, n: u64) -> Int {
    (0..=n)
        .map(|i| if i % 2 == 0 { f_at(p, i) } else { -f_at(p, i) })
        .sum()
}

pub fn sum_arith_closed(p: Params, n: u64) -> Result<SumResult> {
    let delta = plain_denominator(p);
    let num = f_at(p, n) * p.sign() + f_at(p, 1) - f_at(p, n + 1);
    Ok(SumResult {
        params: p,
        n,
        kind: SumKind::Plain,
        method: Method::Closed,
        value: checked_div(&num, &nonzero(delta.clone())?)?,
        denominator: delta,
    })
}

/// The displayed alternating formula at an arbitrary `n`. Correct for even
/// `n` only.
pub fn alt_sum_as_stated(p: Params, n: u64) -> Result<Int> {
    let delta = nonzero(alt_denominator(p))?;
    let num = f_at(p, n) * p.sign() - f_at(p, 1) + f_at(p, n + 1);
    checked_div(&num, &delta)
}

/// Alternating sum: the displayed formula for even `n`, and for odd `n` the
/// formula at `n - 1` minus `F(k, an)`.
pub fn alt_sum_arith_closed(p: Params, n: u64) -> Result<SumResult> {
    let value = if n.is_multiple_of(2) {
        alt_sum_as_stated(p, n)?
    } else {
        alt_sum_as_stated(p, n - 1)? - f_at(p, n)
    };
    Ok(SumResult {
        params: p,
        n,
        kind: SumKind::Alternating,
        method: Method::Closed,
        value,
        denominator: alt_denominator(p),
    })
}

/// Dispatches on kind and method.
pub fn sum(p: Params, n: u64, kind: SumKind, method: Method) -> Result<SumResult> {
    match (kind, method) {
        (SumKind::Plain, Method::Closed) => sum_arith_closed(p, n),
        (SumKind::Alternating, Method::Closed) => alt_sum_arith_closed(p, n),
        (kind, Method::Naive) => Ok(SumResult {
            params: p,
            n,
            kind,
            method: Method::Naive,
            value: match kind {
                SumKind::Plain => sum_arith_naive(p, n),
                SumKind::Alternating => alt_sum_arith_naive(p, n),
            },
            denominator: denominator(p, kind),
        }),
    }
}

fn nonzero(d: Int) -> Result<Int> {
    if d == Int::from(0) {
        Err(Error::DivisionByZero)
    } else {
        Ok(d)
    }
}

/// What the displayed alternating formula gives at one odd `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatedOutcome {
    Agrees,
    Mismatch { stated: Int },
    Inexact { num: Int, den: Int },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErratumFinding {
    pub k: u64,
    pub a: u64,
    pub n: u64,
    /// The accumulated sum.
    pub actual: Int,
    pub outcome: StatedOutcome,
}

/// Evaluates the displayed alternating formula at every odd `n` of the grid
/// and records how it compares with the accumulated sum.
pub fn erratum_probe(kmax: u64, amax: u64, nmax: u64) -> Vec<ErratumFinding> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        for a in 1..=amax {
            let Ok(p) = Params::new(k, a) else { continue };
            for n in (1..=nmax).step_by(2) {
                let actual = alt_sum_arith_naive(p, n);
                let outcome = match alt_sum_as_stated(p, n) {
                    Ok(v) if v == actual => StatedOutcome::Agrees,
                    Ok(stated) => StatedOutcome::Mismatch { stated },
                    Err(Error::InexactDivision { num, den }) => StatedOutcome::Inexact { num, den },
                    Err(e) => unreachable!("denominator is never zero for a >= 1: {e}"),
                };
                out.push(ErratumFinding {
                    k,
                    a,
                    n,
                    actual,
                    outcome,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u64, a: u64) -> Params {
        Params::new(k, a).unwrap()
    }

    fn int(x: i64) -> Int {
        Int::from(x)
    }

    #[test]
    fn naive_examples() {
        for k in 1..=3 {
            for a in 1..=3 {
                assert_eq!(sum_arith_naive(p(k, a), 0), int(0));
                assert_eq!(alt_sum_arith_naive(p(k, a), 0), int(0));
            }
        }
        assert_eq!(sum_arith_naive(p(1, 1), 4), int(7));
        assert_eq!(alt_sum_arith_naive(p(1, 2), 3), int(-6));
    }

    #[test]
    fn plain_closed_examples() {
        let r = sum_arith_closed(p(1, 1), 4).unwrap();
        assert_eq!((r.value, r.denominator), (int(7), int(-1)));
        let r = sum_arith_closed(p(1, 2), 3).unwrap();
        assert_eq!((r.value, r.denominator), (int(12), int(-1)));
        let r = sum_arith_closed(p(2, 1), 3).unwrap();
        assert_eq!((r.value, r.denominator), (int(8), int(-2)));
    }

    #[test]
    fn alternating_closed_examples() {
        assert_eq!(alt_sum_arith_closed(p(1, 1), 4).unwrap().value, int(1));
        assert_eq!(alt_sum_arith_closed(p(1, 1), 3).unwrap().value, int(-2));
        assert_eq!(alt_sum_as_stated(p(1, 2), 2).unwrap(), int(2));
        assert_eq!(alt_sum_arith_closed(p(1, 2), 3).unwrap().value, int(-6));
    }

    #[test]
    fn stated_formula_odd_index() {
        assert_eq!(alt_sum_as_stated(p(1, 1), 2).unwrap(), int(0));
        assert_eq!(alt_sum_as_stated(p(1, 1), 3).unwrap(), int(0));
        assert_eq!(alt_sum_arith_naive(p(1, 1), 3), int(-2));
        assert_eq!(
            alt_sum_as_stated(p(1, 2), 3),
            Err(Error::InexactDivision {
                num: int(28),
                den: int(5)
            })
        );
    }

    #[test]
    fn closed_equals_naive_on_grid() {
        for k in 1..=4 {
            for a in 1..=5 {
                let q = p(k, a);
                assert_ne!(plain_denominator(q), int(0));
                assert_ne!(alt_denominator(q), int(0));
                for n in 0..=25 {
                    assert_eq!(sum_arith_closed(q, n).unwrap().value, sum_arith_naive(q, n));
                    assert_eq!(
                        alt_sum_arith_closed(q, n).unwrap().value,
                        alt_sum_arith_naive(q, n),
                        "k={k} a={a} n={n}"
                    );
                    if n % 2 == 0 {
                        assert_eq!(alt_sum_as_stated(q, n).unwrap(), alt_sum_arith_naive(q, n));
                    }
                }
            }
        }
    }

    #[test]
    fn denominators_are_determinants() {
        use crate::closed_forms::s_matrix;
        use crate::exact::Mat2;
        for k in 1..=4 {
            for a in 1..=5 {
                let s = s_matrix(p(k, a));
                let minus = &Mat2::identity() - &s;
                let plus = &Mat2::identity() + &s;
                assert_eq!(minus.det().unwrap(), plain_denominator(p(k, a)));
                assert_eq!(plus.det().unwrap(), alt_denominator(p(k, a)));
            }
        }
    }

    #[test]
    fn probe_records_each_odd_index() {
        let findings = erratum_probe(2, 2, 7);
        assert_eq!(findings.len(), 2 * 2 * 4);
        let at = |k, a, n| {
            findings
                .iter()
                .find(|f| (f.k, f.a, f.n) == (k, a, n))
                .unwrap()
        };
        assert_eq!(
            at(1, 1, 3).outcome,
            StatedOutcome::Mismatch { stated: int(0) }
        );
        assert_eq!(at(1, 1, 3).actual, int(-2));
        assert_eq!(
            at(1, 2, 3).outcome,
            StatedOutcome::Inexact {
                num: int(28),
                den: int(5)
            }
        );
    }

    #[test]
    fn dispatcher() {
        let r = sum(p(1, 1), 4, SumKind::Plain, Method::Naive).unwrap();
        assert_eq!((r.value, r.method), (int(7), Method::Naive));
        let r = sum(p(1, 2), 3, SumKind::Alternating, Method::Closed).unwrap();
        assert_eq!((r.value, r.denominator), (int(-6), int(5)));
    }
}
