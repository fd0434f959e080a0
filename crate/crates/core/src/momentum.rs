//! Closed-form evolution in momentum space.
//!
//! The one-step operator at momentum `p` is
//!
//! ```text
//! S(p) = [[ cos(beta) e^{-i p'},  sin(beta) e^{-i p''}],
//!         [-sin(beta) e^{ i p''}, cos(beta) e^{ i p'} ]]
//! ```
//!
//! with `p' = p + gamma` and `p'' = p + delta`. `S(p)` lies in SU(2), so it is
//! `exp(i theta c.sigma)` for an angle `theta` and a unit axis `c`, and its
//! n-th power follows from `cos(n theta) = T_n(cos theta)` and
//! `sin(n theta) = U_{n-1}(cos theta) sin(theta)`:
//!
//! ```text
//! S^n = [[T_n - i U cos(beta) sin p',  U sin(beta) e^{-i p''}],
//!        [-U sin(beta) e^{i p''},      T_n + i U cos(beta) sin p']]
//! ```
//!
//! where `U = U_{n-1}(cos beta cos p')`. The global phase `e^{i alpha}` is kept
//! out of `S` and applied only to wave functions.

use num_complex::Complex64;

use crate::chebyshev::{cheb_pair, cheb_u_adjacent};
use crate::coin::{CoinParameters, Matrix2c};
use crate::matrix::PAULI;
use crate::position_walk::Spinor;
use crate::transform_bridge::{MomentumGrid, MomentumSamples, Provenance};

/// `sin(theta)` at or below this marks a decomposition as degenerate.
pub const DEGENERATE_SIN_THETA: f64 = 1e-9;

/// `S(p) = exp(i theta c.sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialDecomposition {
    /// In `[0, pi]`.
    pub theta: f64,
    pub c: [f64; 3],
    /// `sin(theta) = 0`: `S = +-I` and the axis is arbitrary (set to `(0, 0, 1)`).
    pub degenerate: bool,
}

/// `(phi0(n, p), phi1(n, p))`.
pub type MomentumSpinor = Spinor;

/// The momentum-space one-step operator, without the global phase.
pub fn s_matrix(coin: &CoinParameters, p: f64) -> Matrix2c {
    let (cb, sb) = (coin.beta().cos(), coin.beta().sin());
    let p1 = p + coin.gamma();
    let p2 = p + coin.delta();
    Matrix2c::new(
        Complex64::from_polar(cb, -p1),
        Complex64::from_polar(sb, -p2),
        -Complex64::from_polar(sb, p2),
        Complex64::from_polar(cb, p1),
    )
}

/// Angle and axis of `S(p)` read off its Pauli coefficients.
pub fn decompose(coin: &CoinParameters, p: f64) -> ExponentialDecomposition {
    let (cb, sb) = (coin.beta().cos(), coin.beta().sin());
    let p1 = p + coin.gamma();
    let p2 = p + coin.delta();
    let cos_theta = cb * p1.cos();
    // sin^2 theta = 1 - cos^2 beta cos^2 p' = sin^2 beta + cos^2 beta sin^2 p'
    let sin_theta = sb.hypot(cb * p1.sin());
    let theta = sin_theta.atan2(cos_theta);
    if sin_theta <= DEGENERATE_SIN_THETA {
        return ExponentialDecomposition {
            theta,
            c: [0.0, 0.0, 1.0],
            degenerate: true,
        };
    }
    ExponentialDecomposition {
        theta,
        c: [
            -sb * p2.sin() / sin_theta,
            sb * p2.cos() / sin_theta,
            -cb * p1.sin() / sin_theta,
        ],
        degenerate: false,
    }
}

/// `I cos(theta) + i sin(theta) (c1 sigma1 + c2 sigma2 + c3 sigma3)`.
pub fn exponentiate(d: &ExponentialDecomposition) -> Matrix2c {
    let i_sin = Complex64::new(0.0, d.theta.sin());
    let axis = PAULI
        .iter()
        .zip(d.c)
        .fold(Matrix2c::ZERO, |acc, (s, ci)| acc + s.scale(ci.into()));
    Matrix2c::IDENTITY.scale(d.theta.cos().into()) + axis.scale(i_sin)
}

/// Coefficients `(A, M)` of `m` against `I, sigma1, sigma2, sigma3` under the
/// half-trace pairing `(A, M) = Tr(A M) / 2`.
pub fn pauli_project(m: &Matrix2c) -> [Complex64; 4] {
    let half_trace = |a: &Matrix2c| (*a * *m).trace() * 0.5;
    [
        half_trace(&Matrix2c::IDENTITY),
        half_trace(&PAULI[0]),
        half_trace(&PAULI[1]),
        half_trace(&PAULI[2]),
    ]
}

/// `S^n(p)` from Chebyshev polynomials in `cos(beta) cos(p')`.
pub fn s_power_closed(coin: &CoinParameters, p: f64, n: usize) -> Matrix2c {
    let (cb, sb) = (coin.beta().cos(), coin.beta().sin());
    let p1 = p + coin.gamma();
    let p2 = p + coin.delta();
    let pair = cheb_pair(n, cb * p1.cos()).expect("|cos(beta) cos(p')| <= 1");
    let (t, u) = (pair.t_n, pair.u_nm1);
    let diag = u * cb * p1.sin();
    Matrix2c::new(
        Complex64::new(t, -diag),
        Complex64::from_polar(u * sb, -p2),
        -Complex64::from_polar(u * sb, p2),
        Complex64::new(t, diag),
    )
}

/// `S^n(p)` by repeated multiplication. Verification reference for
/// [`s_power_closed`].
pub fn s_power_oracle(coin: &CoinParameters, p: f64, n: usize) -> Matrix2c {
    if n == 0 {
        return Matrix2c::IDENTITY;
    }
    let s = s_matrix(coin, p);
    (1..n).fold(s, |acc, _| acc * s)
}

/// `phi(n, p) = e^{i n alpha} S^n(p) phi(0)` in its closed form:
///
/// ```text
/// phi0 = e^{i n alpha} [(U_n - U_{n-1} cos(beta) e^{ i p'}) psi0 + U_{n-1} sin(beta) e^{-i p''} psi1]
/// phi1 = e^{i n alpha} [-U_{n-1} sin(beta) e^{i p''} psi0 + (U_n - U_{n-1} cos(beta) e^{-i p'}) psi1]
/// ```
///
/// with the `U` evaluated at `cos(beta) cos(p')`.
pub fn phi_closed(coin: &CoinParameters, initial: Spinor, p: f64, n: usize) -> MomentumSpinor {
    let (cb, sb) = (coin.beta().cos(), coin.beta().sin());
    let p1 = p + coin.gamma();
    let p2 = p + coin.delta();
    let (u_prev, u_n) = cheb_u_adjacent(n, cb * p1.cos()).expect("|cos(beta) cos(p')| <= 1");
    let d0 = u_n - Complex64::from_polar(u_prev * cb, p1);
    let d1 = u_n - Complex64::from_polar(u_prev * cb, -p1);
    let off = Complex64::from_polar(u_prev * sb, -p2);
    let phase = Complex64::from_polar(1.0, n as f64 * coin.alpha());
    Spinor::new(
        phase * (d0 * initial.c0 + off * initial.c1),
        phase * (-off.conj() * initial.c0 + d1 * initial.c1),
    )
}

/// `(|phi0|^2, |phi1|^2)`.
pub fn momentum_density(phi: &MomentumSpinor) -> (f64, f64) {
    (phi.c0.norm_sqr(), phi.c1.norm_sqr())
}

/// [`phi_closed`] at every node of `grid`.
pub fn sample_closed_form(
    coin: &CoinParameters,
    initial: Spinor,
    grid: &MomentumGrid,
    n: usize,
) -> MomentumSamples {
    let values = grid
        .nodes()
        .map(|p| phi_closed(coin, initial, p, n))
        .collect();
    MomentumSamples::new(
        *grid,
        values,
        n,
        Some(Provenance {
            coin: *coin,
            initial,
        }),
    )
}
