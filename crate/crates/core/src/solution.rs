use crate::argset::ArgSet;
use crate::semantics::{ExtensionSet, Semantics};

/// Output of a splitting solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub semantics: Semantics,
    pub extensions: ExtensionSet,
    /// Set when only soundness is guaranteed for this semantics and
    /// procedure: every emitted set is an extension, but some may be missing.
    pub possibly_incomplete: bool,
}

impl Solution {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn contains(&self, e: &ArgSet) -> bool {
        self.extensions.contains(e)
    }
}
