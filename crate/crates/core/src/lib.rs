//! Exact classification of toroidal orbifolds `E_n^3 / G` for `n` in `{3, 4, 6}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_torus`]: the curves `E_n`, the `ζ_n` action as integer matrices and
//!   exact fixed-point solving on the 1/12 torsion grid.
//! * [`vw_group`]: the Vafa–Witten groups `V_n`, subgroup closure, admissibility,
//!   rank and exhaustive enumeration of admissible subgroups.
//! * [`moves`]: the equivalence moves, strip reduction, canonical forms and the
//!   classification into homeomorphism classes.
//! * [`cohomology`]: Chen–Ruan orbifold Hodge diamonds with per-sector breakdowns.
//! * [`pi1`]: fundamental groups of the quotients.
//! * [`report`]: group literals, golden tables, rendering, table verification and the CLI.

pub mod abelian;
pub mod cohomology;
pub mod error;
pub mod exact_torus;
pub mod moves;
pub mod pi1;
pub mod report;
pub mod vw_group;

pub use abelian::FiniteAbelianGroup;
pub use cohomology::{chen_ruan_diamond, contribution_breakdown, HodgeDiamond};
pub use error::{Error, Result};
pub use exact_torus::{CurveOrder, TorusPoint};
pub use moves::{canonical_form, classify, ClassRecord, Classification};
pub use pi1::fundamental_group;
pub use vw_group::{closure, enumerate_admissible, GroupElement, Subgroup};
