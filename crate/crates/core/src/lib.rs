//! One-dimensional discrete-time coined quantum walks.
//!
//! Two engines evaluate the same walk:
//!
//! - [`position_walk`] iterates the lattice difference equations directly;
//! - [`momentum`] evaluates the n-step momentum-space operator in closed form
//!   through Chebyshev polynomials of the second kind.
//!
//! [`transform_bridge`] maps lattice states onto momentum samples and back, so
//! the two engines can be checked against each other.
//!
//! ```
//! use qwalk::coin::CoinParameters;
//! use qwalk::momentum::sample_closed_form;
//! use qwalk::position_walk::{evolve, initial_state, Spinor};
//! use qwalk::transform_bridge::{dtft, MomentumGrid};
//!
//! let coin = CoinParameters::balanced();
//! let grid = MomentumGrid::auto_for_steps(10);
//! let walked = evolve(&initial_state(Spinor::up()).unwrap(), &coin, 10);
//! let closed = sample_closed_form(&coin, Spinor::up(), &grid, 10);
//! assert!(dtft(&walked, &grid).max_abs_diff(&closed) < 1e-10);
//! ```

pub mod chebyshev;
pub mod cli;
pub mod coin;
pub mod error;
pub mod matrix;
pub mod momentum;
pub mod position_walk;
pub mod transform_bridge;

pub use error::{Result, WalkError};
