//! Real components of modular curves, computed combinatorially.
//!
//! For a subgroup `G` of `SL_2(Z/N)` containing `-1` and a conjugation `C`,
//! [`xicore::build_xi`] constructs a graph whose cycles are the real
//! components of the associated modular curve: parabolic vertices are real
//! cusps, elliptic vertices are real elliptic points of even order, and
//! edges are real arcs between them.
//!
//! ```
//! use xigraph::families::Curve;
//! use xigraph::modring::RingCtx;
//! use xigraph::xicore::build_xi;
//!
//! let ring = RingCtx::new(4).unwrap();
//! let xi = build_xi(&Curve::Gamma1.group(&ring), Curve::Gamma1.conjugation(4)).unwrap();
//! assert_eq!(xi.graph.component_stats().unwrap().len(), 1);
//! assert_eq!(xi.graph.parabolic_count(), 3);
//! ```

pub mod cli;
pub mod error;
pub mod families;
pub mod groups;
pub mod modgraph;
pub mod modring;
pub mod xicore;

pub use error::{Error, Result};
