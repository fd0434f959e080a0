//! The coin of the walk and the transfer operators built from it.
//!
//! A coin is the pair of amplitudes `(a, b)` with `|a|^2 + |b|^2 = 1` plus a
//! per-step global phase `alpha`. Equivalently it is given by three angles:
//! `a = cos(beta) e^{-i gamma}` and `b = sin(beta) e^{-i delta}`.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, WalkError};
pub use crate::matrix::Matrix2c;

/// Tolerance on `|a|^2 + |b|^2 - 1` accepted by [`CoinParameters::from_amplitudes`].
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

/// Reduces an angle to `(-pi, pi]`.
pub fn reduce_angle(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoinParameters {
    beta: f64,
    gamma: f64,
    delta: f64,
    alpha: f64,
    #[serde(skip)]
    a: Complex64,
    #[serde(skip)]
    b: Complex64,
}

impl CoinParameters {
    pub fn from_angles(beta: f64, gamma: f64, delta: f64, alpha: f64) -> Result<Self> {
        if ![beta, gamma, delta, alpha].iter().all(|x| x.is_finite()) {
            return Err(WalkError::NonFinite("coin angle"));
        }
        let (beta, gamma, delta, alpha) = (
            reduce_angle(beta),
            reduce_angle(gamma),
            reduce_angle(delta),
            reduce_angle(alpha),
        );
        Ok(CoinParameters {
            beta,
            gamma,
            delta,
            alpha,
            a: Complex64::from_polar(beta.cos(), -gamma),
            b: Complex64::from_polar(beta.sin(), -delta),
        })
    }

    /// Recovers the angle form of a coin given by its amplitudes.
    ///
    /// `beta` lands in `[0, pi/2]`. A vanishing amplitude leaves its phase
    /// undetermined and it is set to zero.
    pub fn from_amplitudes(a: Complex64, b: Complex64, alpha: f64) -> Result<Self> {
        if ![a.re, a.im, b.re, b.im, alpha]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(WalkError::NonFinite("coin amplitude"));
        }
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        if (norm_sqr - 1.0).abs() > AMPLITUDE_TOLERANCE {
            return Err(WalkError::Unnormalized {
                what: "coin (a, b)",
                norm_sqr,
            });
        }
        let beta = b.norm().atan2(a.norm());
        let phase = |z: Complex64| if z.norm() == 0.0 { 0.0 } else { -z.arg() };
        Self::from_angles(beta, phase(a), phase(b), alpha)
    }

    /// The coin of the unbiased Hadamard-type walk, `beta = pi/4`.
    pub fn balanced() -> Self {
        Self::from_angles(FRAC_PI_4, 0.0, 0.0, 0.0).expect("finite angles")
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// `e^{i alpha}`, the phase picked up on every step.
    pub fn step_phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.alpha)
    }

    /// Same coin with a different global phase.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::from_angles(self.beta, self.gamma, self.delta, alpha)
    }
}

fn check_nonzero(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(WalkError::NonFinite("z"));
    }
    if z.norm_sqr() == 0.0 {
        return Err(WalkError::Pole);
    }
    Ok(())
}

/// `C(z) = [[a/z, b/z], [-b* z, a* z]]`.
pub fn eval_c_of_z(coin: &CoinParameters, z: Complex64) -> Result<Matrix2c> {
    check_nonzero(z)?;
    let zi = z.inv();
    Ok(Matrix2c::new(
        coin.a * zi,
        coin.b * zi,
        -coin.b.conj() * z,
        coin.a.conj() * z,
    ))
}

/// `B(z1, z2) = e^{i alpha} z1^{-1} C(z2)`, the transfer matrix of the walk's
/// two-dimensional (time, space) Z transform.
pub fn eval_b_of_z(coin: &CoinParameters, z1: Complex64, z2: Complex64) -> Result<Matrix2c> {
    check_nonzero(z1)?;
    let c = eval_c_of_z(coin, z2)?;
    Ok(c.scale(coin.step_phase() * z1.inv()))
}

/// Hermitian paraconjugate of `C`: with `C(z) = A z^{-1} + B z`, this is
/// `A^dagger z + B^dagger z^{-1}`. It inverts `C(z)` for every nonzero `z`.
pub fn paraconjugate_c_of_z(coin: &CoinParameters, z: Complex64) -> Result<Matrix2c> {
    check_nonzero(z)?;
    let zero = Complex64::new(0.0, 0.0);
    let top = Matrix2c::new(coin.a, coin.b, zero, zero);
    let bottom = Matrix2c::new(zero, zero, -coin.b.conj(), coin.a.conj());
    Ok(top.adjoint().scale(z) + bottom.adjoint().scale(z.inv()))
}
