//! Dense 2x2 complex matrices and the Pauli basis.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::position_walk::Spinor;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2x2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2c {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

/// ```text
/// 0  1
/// 1  0
/// ```
pub const SIGMA_1: Matrix2c = Matrix2c::new(ZERO, ONE, ONE, ZERO);

/// ```text
/// 0  -i
/// i   0
/// ```
pub const SIGMA_2: Matrix2c = Matrix2c::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO);

/// ```text
/// 1   0
/// 0  -1
/// ```
pub const SIGMA_3: Matrix2c = Matrix2c::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0));

pub const PAULI: [Matrix2c; 3] = [SIGMA_1, SIGMA_2, SIGMA_3];

impl Matrix2c {
    pub const IDENTITY: Matrix2c = Matrix2c::new(ONE, ZERO, ZERO, ONE);
    pub const ZERO: Matrix2c = Matrix2c::new(ZERO, ZERO, ZERO, ZERO);

    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Matrix2c { m00, m01, m10, m11 }
    }

    pub fn diag(d0: Complex64, d1: Complex64) -> Self {
        Matrix2c::new(d0, ZERO, ZERO, d1)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m00, self.m01, self.m10, self.m11]
    }

    pub fn is_finite(&self) -> bool {
        self.entries()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix2c::new(
            self.m00.conj(),
            self.m10.conj(),
            self.m01.conj(),
            self.m11.conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn trace(&self) -> Complex64 {
        self.m00 + self.m11
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix2c::new(s * self.m00, s * self.m01, s * self.m10, s * self.m11)
    }

    pub fn apply(&self, v: Spinor) -> Spinor {
        Spinor::new(
            self.m00 * v.c0 + self.m01 * v.c1,
            self.m10 * v.c0 + self.m11 * v.c1,
        )
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2c) -> f64 {
        (*self - *other)
            .entries()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise distance of `M^dagger M` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Matrix2c::IDENTITY)
    }
}

impl Add for Matrix2c {
    type Output = Matrix2c;

    fn add(self, rhs: Matrix2c) -> Matrix2c {
        Matrix2c::new(
            self.m00 + rhs.m00,
            self.m01 + rhs.m01,
            self.m10 + rhs.m10,
            self.m11 + rhs.m11,
        )
    }
}

impl Sub for Matrix2c {
    type Output = Matrix2c;

    fn sub(self, rhs: Matrix2c) -> Matrix2c {
        Matrix2c::new(
            self.m00 - rhs.m00,
            self.m01 - rhs.m01,
            self.m10 - rhs.m10,
            self.m11 - rhs.m11,
        )
    }
}

impl Mul for Matrix2c {
    type Output = Matrix2c;

    fn mul(self, rhs: Matrix2c) -> Matrix2c {
        Matrix2c::new(
            self.m00 * rhs.m00 + self.m01 * rhs.m10,
            self.m00 * rhs.m01 + self.m01 * rhs.m11,
            self.m10 * rhs.m00 + self.m11 * rhs.m10,
            self.m10 * rhs.m01 + self.m11 * rhs.m11,
        )
    }
}
