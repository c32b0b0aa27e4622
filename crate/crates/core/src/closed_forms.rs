//! The matrices `R_a` and `S_a`, their closed-form powers, and the general
//! power formula for any matrix obeying `T^2 = L(k,a) T - (-1)^a I`.
//!
//! For such a `T` and every integer `n`:
//!
//! ```text
//! F(k,a) T^n  = F(k,an) T - (-1)^a F(k,a(n-1)) I            (n >= 0)
//! F(k,a) T^-m = (-1)^(am+1) F(k,am) T + (-1)^(am) F(k,a(m+1)) I
//! ```
//!
//! `R_a` and `S_a` both have trace `L(k,a)` and determinant `(-1)^a`, so
//! both satisfy the relation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{sign_pow, Int, Mat2, Params};
use crate::sequences::{delta, epsilon, fib, lucas};

/// The characteristic relation `T^2 = trace T - det I` with
/// `trace = L(k,a)` and `det = (-1)^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRelation {
    pub params: Params,
    pub trace: Int,
    pub det: Int,
}

impl CharRelation {
    pub fn new(params: Params) -> Self {
        CharRelation {
            params,
            trace: lucas(params.k(), params.a() as i64),
            det: Int::from(params.sign()),
        }
    }

    pub fn holds_for(&self, t: &Mat2) -> bool {
        let lhs = t * t;
        let rhs = &t.mul_int(&self.trace) - &Mat2::scalar(self.det.clone());
        lhs == rhs
    }

    pub fn check(&self, t: &Mat2) -> Result<()> {
        if self.holds_for(t) {
            Ok(())
        } else {
            Err(Error::RelationViolated {
                trace: self.trace.clone(),
                det: self.det.clone(),
            })
        }
    }
}

/// `R_a = [[L(k,a), -(-1)^a], [1, 0]]`.
pub fn r_matrix(p: Params) -> Mat2 {
    let l = lucas(p.k(), p.a() as i64);
    Mat2::new([[l, Int::from(-p.sign())], [Int::from(1), Int::zero()]], 0)
}

/// `S_a = 1/2 [[L(k,a), Δ_a], [1, L(k,a)]]`.
pub fn s_matrix(p: Params) -> Mat2 {
    let l = lucas(p.k(), p.a() as i64);
    Mat2::new([[l.clone(), delta(p)], [Int::from(1), l]], 1)
}

fn f_at(p: Params, n: i64) -> Int {
    fib(p.k(), p.index(n))
}

/// `R_a^n` from the closed form
/// `1/F(k,a) [[F(k,a(n+1)), -(-1)^a F(k,an)], [F(k,an), -(-1)^a F(k,a(n-1))]]`.
///
/// `n = 0` gives `I`. An [`Error::InexactDivision`] here would mean the
/// closed form is wrong.
pub fn r_power_closed(p: Params, n: u64) -> Result<Mat2> {
    if n == 0 {
        return Ok(Mat2::identity());
    }
    let n = n as i64;
    let s = -p.sign();
    let num = Mat2::new(
        [
            [f_at(p, n + 1), f_at(p, n) * s],
            [f_at(p, n), f_at(p, n - 1) * s],
        ],
        0,
    );
    num.div_exact(&f_at(p, 1))
}

/// `S_a^n` from the closed form `1/(2F(k,a)) [[ε_a(n), Δ_a F(k,an)], [F(k,an), ε_a(n)]]`.
pub fn s_power_closed(p: Params, n: u64) -> Result<Mat2> {
    if n == 0 {
        return Ok(Mat2::identity());
    }
    let e = epsilon(p, n);
    let f = f_at(p, n as i64);
    let num = Mat2::new([[e.clone(), delta(p) * &f], [f, e]], 1);
    num.div_exact(&f_at(p, 1))
}

/// `T^n` for any integer `n`, for a `t` satisfying `rel`.
///
/// The relation is checked first; a matrix that does not satisfy it is
/// rejected with [`Error::RelationViolated`].
pub fn generic_power(t: &Mat2, rel: &CharRelation, n: i64) -> Result<Mat2> {
    rel.check(t)?;
    let p = rel.params;
    let (coef_t, coef_i) = if n >= 0 {
        (f_at(p, n), -f_at(p, n - 1) * p.sign())
    } else {
        let m = -n;
        let am = p.index(m);
        (f_at(p, m) * sign_pow(am + 1), f_at(p, m + 1) * sign_pow(am))
    };
    let num = &t.mul_int(&coef_t) + &Mat2::scalar(coef_i);
    num.div_exact(&f_at(p, 1))
}

/// `P R_a P^-1` for an integer `P` with determinant ±1.
///
/// Conjugation keeps trace and determinant, so the result satisfies the
/// same relation as `R_a`.
pub fn conjugate_fixture(p: Params, conj: &Mat2) -> Result<Mat2> {
    if !conj.is_integral() {
        return Err(Error::NotUnimodular);
    }
    let d = conj.det_numerator();
    if d != Int::from(1) && d != Int::from(-1) {
        return Err(Error::NotUnimodular);
    }
    let inv = conj.inv()?;
    Ok(&(conj * &r_matrix(p)) * &inv)
}
