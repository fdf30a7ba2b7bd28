//! Boundary slopes of candidate surfaces in Montesinos knot exteriors.
//!
//! Admissible edgepath systems in the diagram of curve systems on the
//! four-punctured sphere are enumerated exactly over the rationals; for each
//! one the twist, boundary slope, Euler characteristic, r-cycle and the
//! incompressibility filter are computed.
//!
//! ```
//! use boundary_slopes::{candidate_surfaces, frac, MontesinosKnot};
//!
//! let k: MontesinosKnot = "P(2,-3,5)".parse().unwrap();
//! let set = candidate_surfaces(&k).unwrap();
//! assert!(set.surfaces.iter().any(|s| s.slope == frac(32, 5) && s.euler == Some(-5)));
//! ```

pub mod cli;
pub mod diagram;
pub mod edgepath;
pub mod enumerate;
pub mod error;
pub mod knots;
pub mod numerics;
pub mod surface;

pub use diagram::{CurveSystem, Edge, UvPoint, Vertex};
pub use edgepath::{validate_admissible, Edgepath, EdgepathSystem, Segment};
pub use enumerate::{seifert_system, solve_systems};
pub use error::{Error, Result};
pub use knots::{parse, MontesinosKnot};
pub use numerics::{frac, Fraction};
pub use surface::{
    candidate_surfaces, CandidateSurface, Incompressibility, SurfaceSet, SystemKind,
};
