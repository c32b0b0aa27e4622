//! Exact integers, checked division and 2x2 matrices with a power-of-two
//! denominator.
//!
//! Every matrix that shows up in this crate has entries of the form
//! `p / 2^s`, so [`Mat2`] stores an integer numerator matrix together with
//! a single shared scale `s`. The representation is kept canonical: either
//! `s == 0` or at least one numerator is odd. Two matrices are equal iff
//! their canonical forms are equal, which is what the derived `PartialEq`
//! compares.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer. Every sequence value lives here.
pub type Int = BigInt;

/// `(-1)^e` as a machine integer. Works for negative `e`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Exact division: returns `q` with `q * den == num`.
///
/// Fails with [`Error::InexactDivision`] when `den` does not divide `num`.
/// Nothing in this crate truncates silently.
pub fn checked_div(num: &Int, den: &Int) -> Result<Int> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision {
            num: num.clone(),
            den: den.clone(),
        })
    }
}

/// A validated `(k, a)` pair: the sequence parameter and the index stride.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    k: u64,
    a: u64,
}

impl Params {
    pub fn new(k: u64, a: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if a == 0 {
            return Err(Error::InvalidParams("a must be at least 1".into()));
        }
        if a > i64::MAX as u64 / 4 {
            return Err(Error::InvalidParams("a is too large".into()));
        }
        Ok(Params { k, a })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// `(-1)^a`.
    pub fn sign(&self) -> i64 {
        sign_pow(self.a as i64)
    }

    /// The index `a * n` as a signed machine integer.
    pub fn index(&self, n: i64) -> i64 {
        self.a as i64 * n
    }
}

/// Exact 2x2 matrix `N / 2^scale` with integer numerators `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    n: [[Int; 2]; 2],
    scale: u32,
}

impl Mat2 {
    /// Builds `entries / 2^scale` and brings it to canonical form.
    pub fn new(entries: [[Int; 2]; 2], scale: u32) -> Self {
        let mut m = Mat2 { n: entries, scale };
        m.canonicalize();
        m
    }

    pub fn from_i64(entries: [[i64; 2]; 2], scale: u32) -> Self {
        let [[a, b], [c, d]] = entries;
        Mat2::new([[a.into(), b.into()], [c.into(), d.into()]], scale)
    }

    pub fn identity() -> Self {
        Mat2::from_i64([[1, 0], [0, 1]], 0)
    }

    pub fn zero() -> Self {
        Mat2::from_i64([[0, 0], [0, 0]], 0)
    }

    /// `c * I` for an integer `c`.
    pub fn scalar(c: Int) -> Self {
        Mat2::new([[c.clone(), Int::zero()], [Int::zero(), c]], 0)
    }

    pub fn numerators(&self) -> &[[Int; 2]; 2] {
        &self.n
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Entry `(i, j)` as `(numerator, denominator)` in lowest terms.
    pub fn entry(&self, i: usize, j: usize) -> (Int, Int) {
        let mut p = self.n[i][j].clone();
        let mut s = self.scale;
        while s > 0 && p.is_even() {
            p >>= 1u32;
            s -= 1;
        }
        if p.is_zero() {
            s = 0;
        }
        (p, Int::one() << s)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.scale == 0
    }

    fn canonicalize(&mut self) {
        while self.scale > 0 && self.n.iter().flatten().all(|x| x.is_even()) {
            for x in self.n.iter_mut().flatten() {
                *x >>= 1u32;
            }
            self.scale -= 1;
        }
    }

    /// Numerators rescaled to `2^target` (`target >= self.scale`).
    fn numerators_at(&self, target: u32) -> [[Int; 2]; 2] {
        let shift = target - self.scale;
        let lift = |x: &Int| x << shift;
        [
            [lift(&self.n[0][0]), lift(&self.n[0][1])],
            [lift(&self.n[1][0]), lift(&self.n[1][1])],
        ]
    }

    /// `n00*n11 - n01*n10`, i.e. `det * 4^scale`.
    pub fn det_numerator(&self) -> Int {
        &self.n[0][0] * &self.n[1][1] - &self.n[0][1] * &self.n[1][0]
    }

    /// Exact determinant. Fails when it is not an integer.
    pub fn det(&self) -> Result<Int> {
        checked_div(&self.det_numerator(), &(Int::one() << (2 * self.scale)))
    }

    /// Trace as `(numerator, denominator)` in lowest terms.
    pub fn trace(&self) -> (Int, Int) {
        let t = Mat2::new(
            [
                [&self.n[0][0] + &self.n[1][1], Int::zero()],
                [Int::zero(), Int::zero()],
            ],
            self.scale,
        );
        t.entry(0, 0)
    }

    pub fn mul_int(&self, c: &Int) -> Mat2 {
        let m = |x: &Int| x * c;
        Mat2::new(
            [
                [m(&self.n[0][0]), m(&self.n[0][1])],
                [m(&self.n[1][0]), m(&self.n[1][1])],
            ],
            self.scale,
        )
    }

    /// Exact division of the whole matrix by a nonzero integer `d`.
    ///
    /// The odd part of `d` must divide every numerator; the power-of-two part
    /// moves into the scale. Fails with [`Error::InexactDivision`] otherwise.
    pub fn div_exact(&self, d: &Int) -> Result<Mat2> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let twos = d.trailing_zeros().unwrap_or(0);
        let twos = u32::try_from(twos).map_err(|_| Error::DivisionByZero)?;
        let odd = d >> twos;
        let q = |x: &Int| checked_div(x, &odd);
        Ok(Mat2::new(
            [
                [q(&self.n[0][0])?, q(&self.n[0][1])?],
                [q(&self.n[1][0])?, q(&self.n[1][1])?],
            ],
            self.scale + twos,
        ))
    }

    /// `x^e` by left-to-right binary powering; also returns the number of
    /// matrix products used (at most `2 * floor(log2 e)` for `e >= 1`).
    pub fn pow_counted(&self, e: u64) -> (Mat2, u32) {
        if e == 0 {
            return (Mat2::identity(), 0);
        }
        let mut acc = self.clone();
        let mut products = 0;
        let top = 63 - e.leading_zeros();
        for bit in (0..top).rev() {
            acc = &acc * &acc;
            products += 1;
            if (e >> bit) & 1 == 1 {
                acc = &acc * self;
                products += 1;
            }
        }
        (acc, products)
    }

    pub fn pow(&self, e: u64) -> Mat2 {
        self.pow_counted(e).0
    }

    /// Exact inverse as adjugate over determinant.
    ///
    /// Works whenever the determinant numerator is `±2^j`, which covers every
    /// unimodular integer matrix and every `S_a`.
    pub fn inv(&self) -> Result<Mat2> {
        let d = self.det_numerator();
        let not_inv = || Error::NotInvertibleExactly { det: d.clone() };
        if d.is_zero() {
            return Err(not_inv());
        }
        let mag = d.abs();
        let j = mag.trailing_zeros().unwrap_or(0);
        if mag != Int::one() << j {
            return Err(not_inv());
        }
        let j = u32::try_from(j).map_err(|_| not_inv())?;
        let sign = if d.is_negative() {
            -Int::one()
        } else {
            Int::one()
        };
        let adj = [
            [&self.n[1][1] * &sign, -&self.n[0][1] * &sign],
            [-&self.n[1][0] * &sign, &self.n[0][0] * &sign],
        ];
        // X^-1 = 2^scale * adj(N) / det(N)
        if j >= self.scale {
            Ok(Mat2::new(adj, j - self.scale))
        } else {
            let lift = self.scale - j;
            let [[a, b], [c, e]] = adj;
            Ok(Mat2::new(
                [[a << lift, b << lift], [c << lift, e << lift]],
                0,
            ))
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (x, y) = (&self.n, &rhs.n);
        let entry = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        Mat2::new(
            [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            self.scale + rhs.scale,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Add for &Mat2 {
    type Output = Mat2;

    fn add(self, rhs: &Mat2) -> Mat2 {
        let s = self.scale.max(rhs.scale);
        let (x, y) = (self.numerators_at(s), rhs.numerators_at(s));
        let e = |i: usize, j: usize| &x[i][j] + &y[i][j];
        Mat2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], s)
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: &Mat2) -> Mat2 {
        self + &(-rhs)
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        let [[a, b], [c, d]] = &self.n;
        Mat2 {
            n: [[-a, -b], [-c, -d]],
            scale: self.scale,
        }
    }
}

impl fmt::Display for Mat2 {
    /// `[[a,b],[c,d]]`, with non-integer entries written as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |i, j| {
            let (p, q) = self.entry(i, j);
            if q.is_one() {
                p.to_string()
            } else {
                format!("{p}/{q}")
            }
        };
        write!(
            f,
            "[[{},{}],[{},{}]]",
            cell(0, 0),
            cell(0, 1),
            cell(1, 0),
            cell(1, 1)
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
