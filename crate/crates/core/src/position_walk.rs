//! Direct iteration of the walk on the integer lattice.
//!
//! One step maps
//!
//! ```text
//! psi0(t+1, x) = e^{i alpha} [ a psi0(t, x-1) + b psi1(t, x-1)]
//! psi1(t+1, x) = e^{i alpha} [-b* psi0(t, x+1) + a* psi1(t, x+1)]
//! ```
//!
//! so component 0 moves right and component 1 moves left. States are stored
//! densely and every step allocates a fresh, two sites wider, state.

use num_complex::Complex64;

use crate::coin::CoinParameters;
use crate::error::{Result, WalkError};

/// Tolerance on the norm of an initial spinor.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Two complex amplitudes, one per coin state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        c0: Complex64::new(0.0, 0.0),
        c1: Complex64::new(0.0, 0.0),
    };

    pub const fn new(c0: Complex64, c1: Complex64) -> Self {
        Spinor { c0, c1 }
    }

    pub fn from_parts(re0: f64, im0: f64, re1: f64, im1: f64) -> Self {
        Spinor::new(Complex64::new(re0, im0), Complex64::new(re1, im1))
    }

    /// `(1, 0)`: all amplitude in the right-moving component.
    pub fn up() -> Self {
        Spinor::from_parts(1.0, 0.0, 0.0, 0.0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        [self.c0.re, self.c0.im, self.c1.re, self.c1.im]
            .iter()
            .all(|x| x.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Spinor::new(s * self.c0, s * self.c1)
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.c0 - other.c0).norm().max((self.c1 - other.c1).norm())
    }

    /// Errors unless finite with `|c0|^2 + |c1|^2` within `tol` of one.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        if !self.is_finite() {
            return Err(WalkError::NonFinite("spinor"));
        }
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(WalkError::Unnormalized {
                what: "initial spinor",
                norm_sqr,
            });
        }
        Ok(())
    }
}

impl std::ops::Add for Spinor {
    type Output = Spinor;

    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

/// The walk amplitudes at one time, over a contiguous block of sites.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionState {
    time: usize,
    offset: i64,
    amplitudes: Vec<Spinor>,
}

impl PositionState {
    /// Wraps raw amplitudes; `amplitudes[j]` sits at site `offset + j`.
    pub fn from_parts(time: usize, offset: i64, amplitudes: Vec<Spinor>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(WalkError::InvalidState("no sites"));
        }
        if !amplitudes.iter().all(Spinor::is_finite) {
            return Err(WalkError::InvalidState("non-finite amplitudes"));
        }
        Ok(PositionState {
            time,
            offset,
            amplitudes,
        })
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Lattice index of the first stored site.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amplitudes
    }

    /// Stored sites with their amplitudes, ascending in `x`.
    pub fn sites(&self) -> impl Iterator<Item = (i64, Spinor)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(j, s)| (self.offset + j as i64, *s))
    }

    /// Amplitude at `x`; zero outside the stored block.
    pub fn amplitude(&self, x: i64) -> Spinor {
        let j = x - self.offset;
        if j < 0 {
            return Spinor::ZERO;
        }
        self.amplitudes
            .get(j as usize)
            .copied()
            .unwrap_or(Spinor::ZERO)
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(Spinor::norm_sqr).sum()
    }

    /// Largest componentwise amplitude difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &PositionState) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.amplitudes.len() as i64)
            .max(other.offset + other.amplitudes.len() as i64);
        (lo..hi)
            .map(|x| self.amplitude(x).max_abs_diff(&other.amplitude(x)))
            .fold(0.0, f64::max)
    }
}

/// The walk at `t = 0` with all amplitude at the origin.
pub fn initial_state(s: Spinor) -> Result<PositionState> {
    s.check_normalized(NORM_TOLERANCE)?;
    Ok(PositionState {
        time: 0,
        offset: 0,
        amplitudes: vec![s],
    })
}

/// Advances the walk by one time step.
pub fn step(state: &PositionState, coin: &CoinParameters) -> PositionState {
    let phase = coin.step_phase();
    let (a, b) = (phase * coin.a(), phase * coin.b());
    let (nb, na) = (-phase * coin.b().conj(), phase * coin.a().conj());

    let old = &state.amplitudes;
    let len = old.len();
    // new site j sits at offset - 1 + j: it reads old j - 2 (from x - 1) and old j (from x + 1)
    let mut next = vec![Spinor::ZERO; len + 2];
    for (j, site) in next.iter_mut().enumerate() {
        if let Some(from_left) = j.checked_sub(2).and_then(|k| old.get(k)) {
            site.c0 = a * from_left.c0 + b * from_left.c1;
        }
        if let Some(from_right) = old.get(j) {
            site.c1 = nb * from_right.c0 + na * from_right.c1;
        }
    }
    PositionState {
        time: state.time + 1,
        offset: state.offset - 1,
        amplitudes: next,
    }
}

/// Applies [`step`] `n` times.
pub fn evolve(state: &PositionState, coin: &CoinParameters, n: usize) -> PositionState {
    let mut cur = state.clone();
    for _ in 0..n {
        cur = step(&cur, coin);
    }
    cur
}

/// `(x, |psi0|^2 + |psi1|^2)` ascending in `x`, skipping sites of exactly zero probability.
pub fn position_density(state: &PositionState) -> Vec<(i64, f64)> {
    state
        .sites()
        .map(|(x, s)| (x, s.norm_sqr()))
        .filter(|&(_, p)| p != 0.0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shift() -> CoinParameters {
        CoinParameters::from_angles(0.0, 0.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn initial_states() {
        let s = initial_state(Spinor::up()).unwrap();
        assert_eq!(s.time(), 0);
        assert_eq!(s.amplitude(0), Spinor::up());
        assert_eq!(position_density(&s), vec![(0, 1.0)]);

        let down = initial_state(Spinor::from_parts(0.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(down.amplitude(0).c1, c(1.0, 0.0));

        assert!(initial_state(Spinor::from_parts(0.5, 0.5, 0.5, -0.5)).is_ok());
        assert!(matches!(
            initial_state(Spinor::from_parts(2.0, 0.0, 0.0, 0.0)),
            Err(WalkError::Unnormalized { .. })
        ));
        assert!(initial_state(Spinor::from_parts(f64::NAN, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn from_parts_validation() {
        assert!(PositionState::from_parts(0, 0, vec![]).is_err());
        assert!(PositionState::from_parts(
            0,
            0,
            vec![Spinor::from_parts(f64::INFINITY, 0.0, 0.0, 0.0)]
        )
        .is_err());
    }

    #[test]
    fn one_balanced_step_by_hand() {
        let s = step(
            &initial_state(Spinor::up()).unwrap(),
            &CoinParameters::balanced(),
        );
        assert_eq!(s.time(), 1);
        assert_eq!(s.offset(), -1);
        assert_abs_diff_eq!(s.amplitude(1).c0.re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(-1).c1.re, -FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_eq!(s.amplitude(1).c1, c(0.0, 0.0));
        assert_eq!(s.amplitude(-1).c0, c(0.0, 0.0));
        assert_eq!(s.amplitude(0), Spinor::ZERO);

        let d = position_density(&s);
        assert_eq!(d.len(), 2);
        assert_abs_diff_eq!(d[0].1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d[1].1, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn two_balanced_steps_by_hand() {
        let s = evolve(
            &initial_state(Spinor::up()).unwrap(),
            &CoinParameters::balanced(),
            2,
        );
        // psi(2) = 1/2 (1, 0), psi(0) = -1/2 (1, 1), psi(-2) = -1/2 (0, 1)
        assert!(
            s.amplitude(2)
                .max_abs_diff(&Spinor::from_parts(0.5, 0.0, 0.0, 0.0))
                < 1e-15
        );
        assert!(
            s.amplitude(0)
                .max_abs_diff(&Spinor::from_parts(-0.5, 0.0, -0.5, 0.0))
                < 1e-15
        );
        assert!(
            s.amplitude(-2)
                .max_abs_diff(&Spinor::from_parts(0.0, 0.0, -0.5, 0.0))
                < 1e-15
        );
        let d = position_density(&s);
        let xs: Vec<i64> = d.iter().map(|&(x, _)| x).collect();
        assert_eq!(xs, vec![-2, 0, 2]);
        for (&(_, p), want) in d.iter().zip([0.25, 0.5, 0.25]) {
            assert_abs_diff_eq!(p, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn pure_shift() {
        let s = evolve(&initial_state(Spinor::up()).unwrap(), &shift(), 1);
        assert_eq!(position_density(&s), vec![(1, 1.0)]);
        let s = evolve(&initial_state(Spinor::up()).unwrap(), &shift(), 7);
        assert_eq!(position_density(&s), vec![(7, 1.0)]);
    }

    #[test]
    fn zero_steps_is_identity() {
        let s0 = evolve(
            &initial_state(Spinor::up()).unwrap(),
            &CoinParameters::balanced(),
            3,
        );
        assert_eq!(evolve(&s0, &CoinParameters::balanced(), 0), s0);
    }

    #[test]
    fn global_phase_pi_flips_sign() {
        let coin = CoinParameters::from_angles(0.7, 0.2, -1.0, 0.0).unwrap();
        let flipped = coin.with_alpha(PI).unwrap();
        let s0 = initial_state(Spinor::from_parts(0.6, 0.0, 0.0, 0.8)).unwrap();
        let s = step(&s0, &coin);
        let f = step(&s0, &flipped);
        for ((_, u), (_, v)) in s.sites().zip(f.sites()) {
            assert!(u.max_abs_diff(&v.scale(c(-1.0, 0.0))) < 1e-15);
        }
        assert_eq!(position_density(&s).len(), position_density(&f).len());
    }

    fn angle() -> impl Strategy<Value = f64> {
        -PI..=PI
    }

    fn unit_spinor() -> impl Strategy<Value = Spinor> {
        (0.0f64..=PI / 2.0, angle(), angle()).prop_map(|(t, p0, p1)| {
            Spinor::new(
                Complex64::from_polar(t.cos(), p0),
                Complex64::from_polar(t.sin(), p1),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn norm_parity_support(
            beta in angle(), gamma in angle(), delta in angle(), alpha in angle(),
            s in unit_spinor(), n in 0usize..=1000,
        ) {
            let coin = CoinParameters::from_angles(beta, gamma, delta, alpha).unwrap();
            let state = evolve(&initial_state(s).unwrap(), &coin, n);
            prop_assert_eq!(state.time(), n);
            prop_assert!((state.total_probability() - 1.0).abs() <= 1e-12);
            for (x, amp) in state.sites() {
                prop_assert!(x.abs() <= n as i64);
                if (x + n as i64) % 2 != 0 {
                    prop_assert_eq!(amp.norm_sqr(), 0.0);
                }
            }
        }

        #[test]
        fn densities_ignore_global_phase(
            beta in angle(), gamma in angle(), delta in angle(), alpha in angle(),
            s in unit_spinor(), n in 0usize..=60,
        ) {
            let coin = CoinParameters::from_angles(beta, gamma, delta, alpha).unwrap();
            let plain = coin.with_alpha(0.0).unwrap();
            let d1 = position_density(&evolve(&initial_state(s).unwrap(), &coin, n));
            let d2 = position_density(&evolve(&initial_state(s).unwrap(), &plain, n));
            prop_assert_eq!(d1.len(), d2.len());
            for ((x1, p1), (x2, p2)) in d1.into_iter().zip(d2) {
                prop_assert_eq!(x1, x2);
                prop_assert!((p1 - p2).abs() <= 1e-14);
            }
        }
    }
}
