//! Strong degeneracy of graphs, certified upper bounds on the hat-guessing
//! number, exact solving of the (multi-guess) hat game on tiny graphs, and the
//! shallow-minor density measures that bound strong degeneracy.
//!
//! The crate is organised around five subsystems:
//!
//! - [`graph`]: the immutable simple-graph substrate, an edge-list parser,
//!   deterministic seeded family generators, and structural detectors
//!   (common-neighbour counting, maximal-outerplanar recognition).
//! - [`elimination`]: strong degeneracy via greedy removal of `d`-removable
//!   vertices, ordinary degeneracy, and obstruction witnesses extracted from
//!   stuck eliminations.
//! - [`certify`]: the multi-guess budget framework; verifies the per-step
//!   reduction inequality with exact rational arithmetic and emits
//!   machine-checkable [`certify::ReductionCertificate`]s.
//! - [`exact`]: exhaustive decision of winnability of the hat game at desk
//!   scale, strategy verification, and the classical clique sum strategy.
//! - [`density`]: exact densest subgraph via maximum flow, brute-force
//!   shallow-minor densities at depths 1/2 and 1, and the derived
//!   strong-degeneracy bound formulas.
//!
//! All inequality checks and densities are exact (integers and rationals);
//! floating point never decides an outcome.

pub mod certify;
pub mod corpus;
pub mod density;
pub mod elimination;
pub mod exact;
pub mod graph;
pub mod ratio;

pub use graph::{Graph, parse_edge_list};
