//! Simplicial categories of slices: categories, simplicial sets, and
//! cospans fibred over standard simplices, with the equipment structure
//! (extensions, companions, cotabulators, double colimits).
//!
//! An object of level n is a carrier together with a structure map to Δⁿ
//! (a part-assignment for categories, a simplicial map for simplicial
//! sets, and nothing extra for cospans, whose shape already carries the
//! grading). Faces restrict, degeneracies spread along a cylinder
//! direction, and the universal boundary extensions of [`extend`] make
//! the level-n objects behave like n-ary horizontal arrows.

pub mod companion;
pub mod compare;
pub mod cotab;
pub mod dcolim;
pub mod extend;
pub mod slice;
pub mod table;

pub use companion::{
    companion_simplex, comparison_map, tower_representation, CompanionResult, VerticalChain,
};
pub use compare::{slice_iso, slices_match, MatchCertificate};
pub use cotab::{cotab_of_extension, cotabulator, verify_cotabulator, CotabExtension, CotabResult};
pub use dcolim::{dcolim, DcolimResult, HorizontalDiagram};
pub use extend::{
    equipment_extend, strong_equipment_extend, verify_extension_universal, BoundaryAssignment,
    Extension,
};
pub use slice::{
    degeneracy_map, degeneracy_slice, face_map, face_slice, s_power, s_power_map, CatSlice,
    CospanSlice, SliceMorphism, SliceObject, SsetSlice,
};
pub use table::{simplicial_identity_witnesses, IdentityWitness};

use crate::fincat::FincatError;
use crate::simpset::SimpsetError;
use thiserror::Error;

/// The three instantiated sites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Site {
    Cat,
    Sset,
    Cospan,
}

impl std::fmt::Display for Site {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Site::Cat => write!(f, "cat"),
            Site::Sset => write!(f, "sset"),
            Site::Cospan => write!(f, "cospan"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SharpError {
    #[error("invalid slice data: {0}")]
    InvalidSlice(String),
    #[error("face index {index} out of range at level {level}")]
    BadIndex { index: usize, level: usize },
    #[error("sites or levels do not match: {0}")]
    Mismatch(String),
    #[error("incompatible boundary data: {0}")]
    IncompatibleBoundary(String),
    #[error("cover misses vertices {0:?}")]
    CoverIncomplete(Vec<usize>),
    #[error("cover restrictions disagree: {0}")]
    RestrictionMismatch(String),
    #[error("extension is not face-exact: {0}")]
    FaceMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("operation needs a dimension bound on this site")]
    TruncationRequired,
    #[error("enumeration exceeded budget of {0}")]
    EnumerationBudgetExceeded(u64),
    #[error(transparent)]
    Fincat(#[from] FincatError),
    #[error(transparent)]
    Simpset(#[from] SimpsetError),
}
