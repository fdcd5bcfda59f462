//! Bipolar set-based argumentation frameworks: extension semantics and
//! splitting procedures over attacks, supports, or both.
//!
//! ```
//! use bsaf::combined_split::solve_split;
//! use bsaf::{enumerate, Framework, Semantics};
//!
//! let f = Framework::builder()
//!     .args(["a", "b", "c", "d"])
//!     .attack(["a"], "b")
//!     .support(["c"], "b")
//!     .attack(["c"], "d")
//!     .build()?;
//! let a1 = f.set(["a", "b"])?;
//! let split = solve_split(&f, &a1, Semantics::Preferred)?;
//! assert_eq!(split.extensions, enumerate(&f, Semantics::Preferred)?);
//! # Ok::<(), bsaf::Error>(())
//! ```

pub mod argset;
pub mod attack_split;
pub mod combined_split;
pub mod error;
pub mod framework;
pub mod harness;
pub mod io;
pub mod semantics;
pub mod solution;
pub mod split_finder;
pub mod support_split;

pub use argset::{ArgSet, Extension};
pub use error::{Error, Result, SourceSpan};
pub use framework::{
    union_frameworks, ArgKind, ArgLabel, ArgumentId, Framework, FrameworkBuilder, Link, Universe,
};
pub use semantics::{enumerate, enumerate_with_cap, ExtensionSet, Semantics};
pub use solution::Solution;
