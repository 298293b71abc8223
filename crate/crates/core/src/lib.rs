//! Lattice paths whose first-return decomposition is constrained by the
//! maximal height of a pattern.
//!
//! For a family of paths (Dyck, Motzkin, skew Dyck, skew Motzkin) and a
//! pattern `pi`, the class `A^{h_pi,>=}` contains the empty path and every
//! path `U alpha D beta` (plus the family's other first-return shapes)
//! whose components are members and whose first block reaches at least as
//! high an occurrence of `pi` as the rest.
//!
//! The crate counts these classes two ways and cross-checks them:
//!
//! * [`enumerate`] walks every path and tests membership directly;
//! * [`gf`] solves the generating-function system exactly, over
//!   [`series::Series`] with rational coefficients.
//!
//! ```
//! use latpath::{class_gf, count_class, Family, GfOptions, Pattern, DEFAULT_PATH_BUDGET};
//!
//! let pattern = Pattern::parse("DU").unwrap();
//! let gf = class_gf(Family::Dyck, &pattern, 9, GfOptions::default()).unwrap();
//! assert_eq!(gf.counts(), [1, 2, 4, 8, 17, 39, 94, 233, 588]);
//!
//! let table = count_class(Family::Dyck, &pattern, 9, DEFAULT_PATH_BUDGET).unwrap();
//! assert_eq!(table.totals()[1..], gf.counts()[..]);
//! ```

pub mod bijection;
pub mod checks;
pub mod enumerate;
pub mod gf;
pub mod paths;
pub mod series;

pub use bijection::{check_phi, phi, verify_complement_symmetry, BijectionError, PatternPair, PhiReport};
pub use enumerate::{
    base_series, count_class, generate_paths, is_member, ClassCountTable, EnumerateError,
    MembershipOracle, DEFAULT_PATH_BUDGET,
};
pub use gf::{
    class_gf, dyck_closed_form, iterate_system, moebius_coeffs, residual, skew_closed_form,
    solve_quadratic, BaseSource, ClassGf, GfError, GfOptions, MoebiusCoeffs, SystemSolution,
    SystemSpec,
};
pub use paths::{Decomposition, Family, Path, PathError, Pattern, SizeUnit, Step};
pub use series::{Series, SeriesError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/paths.md")]
    mod paths {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/system.md")]
    mod system {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
