//! equipkit — a symbolic kernel for finite categories and finite simplicial
//! sets, built around the two-fold ("equipment") picture of category theory.
//!
//! The kernel provides:
//!
//! * [`fincat`] — finite categories, functors, nerves, the Grothendieck
//!   construction, colimits of categories by congruence closure, and exact
//!   isomorphism search;
//! * [`simpset`] — finite simplicial sets in Eilenberg–Zilber normal form,
//!   standard simplices, products with Δⁿ, finite colimits and pullbacks,
//!   mapping cylinders, and integral simplicial homology;
//! * [`profcollage`] — profunctors, collages, the coequalizer tensor, and
//!   the double category of profunctors with companions, cojoints, niche
//!   fillers, and double colimits;
//! * [`sharp`] — the simplicial categories Cat♯, sSet♯ and coSpan♯ as
//!   higher equipments: slice faces and degeneracies, universal boundary
//!   extensions, companion simplices, cotabulators, double (co)limits;
//! * [`vertical`] — the simplicial enrichment of a higher equipment,
//!   tensoring, staircase mapping cylinders, homotopy (co)limits, and the
//!   comparison of double colimits of companions with homotopy colimits;
//! * [`corpus`] — deterministic generation of desk-scale test instances;
//! * [`json`] — the on-disk JSON formats used by the CLI.

pub mod corpus;
pub mod fincat;
pub mod id;
pub mod json;
pub mod profcollage;
pub mod sharp;
pub mod simpset;
pub mod util;
pub mod vertical;

pub use id::Id;
