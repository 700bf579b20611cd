//! Deployment and security choices for AI systems under a governance gap.
//!
//! When access control and containment lag behind capability, a more capable
//! system carries more authority and a larger conditional breach loss. This
//! crate solves the resulting firm problem in closed form, derives the social
//! benchmarks and the capability-upgrade decision, covers the one-at-a-time
//! generalizations of exposure, breach probability, productivity and
//! readiness, and checks all of it against brute-force search.
//!
//! Module map:
//!
//! * [`model`]: baseline optimum, regimes, slopes.
//! * [`welfare`]: first-best and second-best deployment, paradox thresholds.
//! * [`capability`]: firm value and the legacy-versus-frontier choice.
//! * [`extensions`]: `gamma`, `beta`, `eta`, `omega` variants and governance investment.
//! * [`oracle`]: grid maximizers, finite differences, bisection.
//! * [`harness`]: calibration, table reproduction, sweeps, CSV/JSON/SVG output.

pub mod capability;
pub mod error;
pub mod extensions;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod welfare;

pub use error::{ModelError, OracleError, Result};
pub use model::{FirmSolution, ModelParams, Regime};
