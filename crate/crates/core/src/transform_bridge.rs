//! Fourier bridge between lattice states and momentum samples.
//!
//! The forward transform is `phi(p) = sum_x psi(x) e^{-i p x}`. With this sign a
//! lattice step becomes multiplication by `e^{i alpha} S(p)`. Momenta are sampled
//! on the half-open grid `p_k = -pi + 2 pi k / M`, `k = 0..M`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coin::CoinParameters;
use crate::error::{Result, WalkError};
use crate::momentum::MomentumSpinor;
use crate::position_walk::{PositionState, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentumGrid {
    size: usize,
}

impl MomentumGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(WalkError::EmptyGrid);
        }
        Ok(MomentumGrid { size })
    }

    /// Smallest power of two with at least `2 n + 2` nodes; alias free for an
    /// `n`-step walk.
    pub fn auto_for_steps(n: usize) -> Self {
        MomentumGrid {
            size: (2 * n + 2).next_power_of_two(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn node(&self, k: usize) -> f64 {
        -PI + 2.0 * PI * k as f64 / self.size as f64
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.size).map(|k| self.node(k))
    }
}

/// Same as [`MomentumGrid::new`].
pub fn make_grid(size: usize) -> Result<MomentumGrid> {
    MomentumGrid::new(size)
}

/// Coin and initial spinor that produced a set of samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub coin: CoinParameters,
    pub initial: Spinor,
}

/// Momentum wave function sampled on a grid at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSamples {
    grid: MomentumGrid,
    values: Vec<MomentumSpinor>,
    time: usize,
    meta: Option<Provenance>,
}

impl MomentumSamples {
    /// # Panics
    ///
    /// If `values` does not hold one entry per grid node.
    pub fn new(
        grid: MomentumGrid,
        values: Vec<MomentumSpinor>,
        time: usize,
        meta: Option<Provenance>,
    ) -> Self {
        assert_eq!(values.len(), grid.size(), "one sample per grid node");
        MomentumSamples {
            grid,
            values,
            time,
            meta,
        }
    }

    pub fn grid(&self) -> &MomentumGrid {
        &self.grid
    }

    pub fn values(&self) -> &[MomentumSpinor] {
        &self.values
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn meta(&self) -> Option<&Provenance> {
        self.meta.as_ref()
    }

    /// `(p_k, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, &MomentumSpinor)> + '_ {
        self.grid.nodes().zip(self.values.iter())
    }

    /// Largest componentwise difference against another sampling.
    ///
    /// # Panics
    ///
    /// If the grids differ.
    pub fn max_abs_diff(&self, other: &MomentumSamples) -> f64 {
        assert_eq!(self.grid, other.grid, "samples on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// `(1/M) sum_k |phi(p_k)|^2`.
    pub fn mean_norm_sqr(&self) -> f64 {
        self.values.iter().map(Spinor::norm_sqr).sum::<f64>() / self.grid.size() as f64
    }
}

/// Samples `phi(p) = sum_x psi(x) e^{-i p x}` on `grid` by direct summation.
pub fn dtft(state: &PositionState, grid: &MomentumGrid) -> MomentumSamples {
    let occupied: Vec<(i64, Spinor)> = state.sites().filter(|(_, s)| s.norm_sqr() != 0.0).collect();
    let values = grid
        .nodes()
        .map(|p| {
            occupied.iter().fold(Spinor::ZERO, |acc, &(x, s)| {
                acc + s.scale(Complex64::from_polar(1.0, -p * x as f64))
            })
        })
        .collect();
    MomentumSamples::new(*grid, values, state.time(), None)
}

/// Inverts [`dtft`] onto sites `-halfwidth..=halfwidth`:
/// `psi(x) = (1/M) sum_k phi(p_k) e^{i p_k x}`.
///
/// Exact for states supported inside the half-width provided
/// `M >= 2 halfwidth + 1`; smaller grids are rejected.
pub fn idft_to_position(samples: &MomentumSamples, halfwidth: usize) -> Result<PositionState> {
    let m = samples.grid.size();
    if m < 2 * halfwidth + 1 {
        return Err(WalkError::Aliasing {
            grid_size: m,
            halfwidth,
        });
    }
    let h = halfwidth as i64;
    let norm = Complex64::new(1.0 / m as f64, 0.0);
    let amplitudes = (-h..=h)
        .map(|x| {
            samples
                .iter()
                .fold(Spinor::ZERO, |acc, (p, phi)| {
                    acc + phi.scale(Complex64::from_polar(1.0, p * x as f64))
                })
                .scale(norm)
        })
        .collect();
    PositionState::from_parts(samples.time, -h, amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::{s_matrix, sample_closed_form};
    use crate::position_walk::{evolve, initial_state, position_density, step};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grids() {
        assert_eq!(make_grid(0), Err(WalkError::EmptyGrid));
        let g = make_grid(1).unwrap();
        assert_eq!(g.nodes().collect::<Vec<_>>(), vec![-PI]);
        let g = make_grid(4).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        for (got, want) in nodes.iter().zip([-PI, -FRAC_PI_2, 0.0, FRAC_PI_2]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(MomentumGrid::auto_for_steps(0).size(), 2);
        assert_eq!(MomentumGrid::auto_for_steps(10).size(), 32);
        assert_eq!(MomentumGrid::auto_for_steps(15).size(), 32);
        assert_eq!(MomentumGrid::auto_for_steps(70).size(), 256);
    }

    #[test]
    fn origin_state_transforms_to_constant() {
        let s = Spinor::from_parts(0.6, 0.0, 0.0, -0.8);
        let samples = dtft(&initial_state(s).unwrap(), &make_grid(16).unwrap());
        assert!(samples.values().iter().all(|v| v.max_abs_diff(&s) < 1e-16));
    }

    #[test]
    fn single_site_transform() {
        let state = PositionState::from_parts(0, 1, vec![Spinor::up()]).unwrap();
        let grid = make_grid(12).unwrap();
        for (p, v) in dtft(&state, &grid).iter() {
            assert!((v.c0 - Complex64::from_polar(1.0, -p)).norm() < 1e-15);
            assert_eq!(v.c1, c(0.0, 0.0));
        }
    }

    #[test]
    fn idft_examples() {
        let s2 = evolve(
            &initial_state(Spinor::up()).unwrap(),
            &CoinParameters::balanced(),
            2,
        );
        let back = idft_to_position(&dtft(&s2, &make_grid(8).unwrap()), 3).unwrap();
        assert!(back.max_abs_diff(&s2) < 1e-15);
        let dens: Vec<(i64, f64)> = back
            .sites()
            .map(|(x, s)| (x, s.norm_sqr()))
            .filter(|&(_, p)| p > 1e-20)
            .collect();
        let exact = position_density(&s2);
        assert_eq!(dens.len(), exact.len());
        for ((x, p), (y, q)) in dens.into_iter().zip(exact) {
            assert_eq!(x, y);
            assert!((p - q).abs() < 1e-15);
        }

        let s = Spinor::from_parts(0.0, 1.0, 0.0, 0.0);
        let constant = MomentumSamples::new(make_grid(5).unwrap(), vec![s; 5], 0, None);
        let origin = idft_to_position(&constant, 0).unwrap();
        assert_eq!(origin.offset(), 0);
        assert!(origin.amplitude(0).max_abs_diff(&s) < 1e-15);

        let k = CoinParameters::balanced();
        let closed = sample_closed_form(&k, Spinor::up(), &make_grid(32).unwrap(), 10);
        let back = idft_to_position(&closed, 10).unwrap();
        let walked = evolve(&initial_state(Spinor::up()).unwrap(), &k, 10);
        assert_eq!(back.time(), 10);
        assert!(back.max_abs_diff(&walked) < 1e-10);
    }

    #[test]
    fn aliasing_rejected() {
        let samples = MomentumSamples::new(make_grid(6).unwrap(), vec![Spinor::up(); 6], 0, None);
        assert_eq!(
            idft_to_position(&samples, 3),
            Err(WalkError::Aliasing {
                grid_size: 6,
                halfwidth: 3
            })
        );
        assert!(idft_to_position(&samples, 2).is_ok());
    }

    #[test]
    fn walk_and_closed_form_agree_on_grid() {
        let k = CoinParameters::balanced();
        let walked = evolve(&initial_state(Spinor::up()).unwrap(), &k, 10);
        let grid = make_grid(64).unwrap();
        let r = dtft(&walked, &grid).max_abs_diff(&sample_closed_form(&k, Spinor::up(), &grid, 10));
        assert!(r < 1e-10, "residual {r}");

        let grid = make_grid(256).unwrap();
        let r = dtft(&walked, &grid).max_abs_diff(&sample_closed_form(&k, Spinor::up(), &grid, 10));
        assert!(r < 1e-10, "residual {r}");
    }

    fn angle() -> impl Strategy<Value = f64> {
        -PI..=PI
    }

    fn unit_spinor() -> impl Strategy<Value = Spinor> {
        (0.0f64..=FRAC_PI_2, angle(), angle()).prop_map(|(t, p0, p1)| {
            Spinor::new(
                Complex64::from_polar(t.cos(), p0),
                Complex64::from_polar(t.sin(), p1),
            )
        })
    }

    fn any_coin() -> impl Strategy<Value = CoinParameters> {
        (angle(), angle(), angle(), angle())
            .prop_map(|(b, g, d, a)| CoinParameters::from_angles(b, g, d, a).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn step_intertwines_with_s(k in any_coin(), s in unit_spinor(), n in 0usize..40, m in 1usize..200) {
            let state = evolve(&initial_state(s).unwrap(), &k, n);
            let grid = make_grid(m).unwrap();
            let before = dtft(&state, &grid);
            let after = dtft(&step(&state, &k), &grid);
            for ((p, b), a) in before.iter().zip(after.values()) {
                let want = s_matrix(&k, p).apply(*b).scale(k.step_phase());
                prop_assert!(a.max_abs_diff(&want) <= 1e-12);
            }
        }

        #[test]
        fn round_trip(k in any_coin(), s in unit_spinor(), n in 0usize..=60, extra in 0usize..20) {
            let state = evolve(&initial_state(s).unwrap(), &k, n);
            let grid = make_grid(2 * n + 1 + extra).unwrap();
            let back = idft_to_position(&dtft(&state, &grid), n).unwrap();
            prop_assert!(back.max_abs_diff(&state) <= 1e-10);
        }

        #[test]
        fn parseval(k in any_coin(), s in unit_spinor(), n in 0usize..=60, extra in 0usize..20) {
            let state = evolve(&initial_state(s).unwrap(), &k, n);
            let grid = make_grid(2 * n + 1 + extra).unwrap();
            let mean = dtft(&state, &grid).mean_norm_sqr();
            prop_assert!((mean - state.total_probability()).abs() <= 1e-10);
        }
    }
}
