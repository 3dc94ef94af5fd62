//! Finite simplicial sets.
//!
//! A simplicial set is presented by its nondegenerate simplices and a face
//! table; arbitrary simplices are [`FormalSimplex`] values in normal form.
//! All operator algebra goes through [`formal`], so there is exactly one
//! place where the simplicial identities are applied.

pub mod colimit;
pub mod cylinder;
pub mod formal;
pub mod homology;
pub mod iso;
pub mod levelwise;
pub mod maps_enum;
pub mod pairs;
pub mod smap;
pub mod standard;

pub use colimit::{colimit, induced_map, SsetColimit, SsetDiagram, SsetEdge};
pub use cylinder::{mapping_cylinder, MappingCylinder};
pub use formal::{push_degeneracy, push_face, word_valid, FaceStep, FormalSimplex};
pub use homology::{homology, AbGroup};
pub use iso::{sset_iso, SsetIso};
pub use pairs::{product_with_simplex, pullback};
pub use smap::SMap;
pub use standard::{boundary, horn, std_map, std_simplex};

use crate::id::Id;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SimpsetError {
    #[error("duplicate cell id {0}")]
    DuplicateCell(Id),
    #[error("cell {cell} of dimension {dim} has {got} faces, expected {want}")]
    WrongFaceCount { cell: Id, dim: usize, got: usize, want: usize },
    #[error("cell {0} has no face table entry")]
    MissingFaces(Id),
    #[error("face table entry for unknown cell {0}")]
    SpuriousFaces(Id),
    #[error("face {index} of {cell} references unknown base {base}")]
    UnknownBase { cell: Id, index: usize, base: Id },
    #[error("face {index} of {cell} has dimension {got}, expected {want}")]
    WrongFaceDim { cell: Id, index: usize, got: usize, want: usize },
    #[error("face {index} of {cell} carries an invalid degeneracy word")]
    InvalidWord { cell: Id, index: usize },
    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on {cell}")]
    IdentityFailure { cell: Id, i: usize, j: usize, jm1: usize },
    #[error("map does not cover source cell {0}")]
    UnassignedCell(Id),
    #[error("map assigns unknown source cell {0}")]
    SpuriousAssignment(Id),
    #[error("map sends {cell} (dim {src_dim}) to a simplex of dim {dst_dim}")]
    DimensionMismatch { cell: Id, src_dim: usize, dst_dim: usize },
    #[error("map image of {cell} references unknown target base {base}")]
    UnknownTargetBase { cell: Id, base: Id },
    #[error("map does not commute with face {index} of {cell}")]
    FaceCommutation { cell: Id, index: usize },
    #[error("maps are not composable/comparable: {0}")]
    Incompatible(String),
    #[error("isomorphism search exceeded budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("map enumeration exceeded budget of {0} candidates")]
    EnumerationBudgetExceeded(u64),
}

/// A finite simplicial set: nondegenerate cells per dimension plus the face
/// table. Everything else (degeneracies, faces of degenerate simplices) is
/// derived through formal-simplex arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSet {
    cells: Vec<Vec<Id>>,
    faces: BTreeMap<Id, Vec<FormalSimplex>>,
    dims: BTreeMap<Id, usize>,
}

impl SSet {
    /// Validate and construct. `cells[k]` lists the nondegenerate k-cells;
    /// `faces` gives the n+1 faces of every cell of dimension ≥ 1.
    pub fn new(
        cells: Vec<Vec<Id>>,
        faces: BTreeMap<Id, Vec<FormalSimplex>>,
    ) -> Result<SSet, SimpsetError> {
        let mut cells = cells;
        while cells.last().is_some_and(|l| l.is_empty()) {
            cells.pop();
        }
        for level in &mut cells {
            level.sort();
        }
        let mut dims = BTreeMap::new();
        for (k, level) in cells.iter().enumerate() {
            for id in level {
                if dims.insert(id.clone(), k).is_some() {
                    return Err(SimpsetError::DuplicateCell(id.clone()));
                }
            }
        }
        for id in faces.keys() {
            match dims.get(id) {
                None => return Err(SimpsetError::SpuriousFaces(id.clone())),
                Some(0) => return Err(SimpsetError::SpuriousFaces(id.clone())),
                Some(_) => {}
            }
        }
        let sset = SSet { cells, faces, dims };
        sset.validate()?;
        Ok(sset)
    }

    fn validate(&self) -> Result<(), SimpsetError> {
        for (k, level) in self.cells.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for id in level {
                let fs = self
                    .faces
                    .get(id)
                    .ok_or_else(|| SimpsetError::MissingFaces(id.clone()))?;
                if fs.len() != k + 1 {
                    return Err(SimpsetError::WrongFaceCount {
                        cell: id.clone(),
                        dim: k,
                        got: fs.len(),
                        want: k + 1,
                    });
                }
                for (i, f) in fs.iter().enumerate() {
                    let base_dim = self.dims.get(&f.base).copied().ok_or_else(|| {
                        SimpsetError::UnknownBase {
                            cell: id.clone(),
                            index: i,
                            base: f.base.clone(),
                        }
                    })?;
                    if !word_valid(&f.word, base_dim) {
                        return Err(SimpsetError::InvalidWord { cell: id.clone(), index: i });
                    }
                    if f.dim(base_dim) != k - 1 {
                        return Err(SimpsetError::WrongFaceDim {
                            cell: id.clone(),
                            index: i,
                            got: f.dim(base_dim),
                            want: k - 1,
                        });
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, on every nondegenerate cell.
        for (k, level) in self.cells.iter().enumerate() {
            if k < 2 {
                continue;
            }
            for id in level {
                let top = FormalSimplex::nondeg(id.clone());
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = self.face_formal(&self.face_formal(&top, j), i);
                        let rhs = self.face_formal(&self.face_formal(&top, i), j - 1);
                        if lhs != rhs {
                            return Err(SimpsetError::IdentityFailure {
                                cell: id.clone(),
                                i,
                                j,
                                jm1: j - 1,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The empty simplicial set.
    pub fn empty() -> SSet {
        SSet { cells: Vec::new(), faces: BTreeMap::new(), dims: BTreeMap::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest dimension carrying a nondegenerate cell; `None` when empty.
    pub fn max_dim(&self) -> Option<usize> {
        if self.cells.is_empty() {
            None
        } else {
            Some(self.cells.len() - 1)
        }
    }

    /// Nondegenerate k-cells (empty slice above the top dimension).
    pub fn cells(&self, k: usize) -> &[Id] {
        self.cells.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &[Id])> {
        self.cells.iter().enumerate().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = &Id> {
        self.cells.iter().flatten()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(|l| l.len()).sum()
    }

    /// Nondegenerate cell counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|l| l.len()).collect()
    }

    pub fn has_cell(&self, id: &Id) -> bool {
        self.dims.contains_key(id)
    }

    pub fn dim_of(&self, id: &Id) -> usize {
        self.dims[id]
    }

    pub fn try_dim_of(&self, id: &Id) -> Option<usize> {
        self.dims.get(id).copied()
    }

    /// The i-th face of a nondegenerate cell, from the face table.
    pub fn face(&self, id: &Id, i: usize) -> &FormalSimplex {
        &self.faces[id][i]
    }

    pub fn faces_of(&self, id: &Id) -> &[FormalSimplex] {
        self.faces.get(id).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Dimension of a formal simplex over this complex.
    pub fn formal_dim(&self, fs: &FormalSimplex) -> usize {
        fs.dim(self.dims[&fs.base])
    }

    /// `d_i` on an arbitrary formal simplex.
    pub fn face_formal(&self, fs: &FormalSimplex, i: usize) -> FormalSimplex {
        match push_face(&fs.word, i) {
            FaceStep::Cancelled(word) => FormalSimplex { base: fs.base.clone(), word },
            FaceStep::Base { emitted, index } => {
                self.faces[&fs.base][index].with_degeneracies(&emitted)
            }
        }
    }

    /// All formal simplices of dimension `k`.
    pub fn formals_at(&self, k: usize) -> Vec<FormalSimplex> {
        let mut out = Vec::new();
        for p in 0..=k {
            let Some(level) = self.cells.get(p) else { break };
            let words = valid_words(k - p, p);
            for id in level {
                for w in &words {
                    out.push(FormalSimplex { base: id.clone(), word: w.clone() });
                }
            }
        }
        out
    }

    /// Checks a formal simplex references a real base with a valid word.
    pub fn formal_ok(&self, fs: &FormalSimplex) -> bool {
        self.dims
            .get(&fs.base)
            .is_some_and(|&d| word_valid(&fs.word, d))
    }

    /// Restrict to the full sub-complex on a set of nondegenerate cells
    /// (which must be face-closed; ids are kept).
    pub fn subcomplex(&self, keep: &BTreeSet<Id>) -> Result<SSet, SimpsetError> {
        let cells: Vec<Vec<Id>> = self
            .cells
            .iter()
            .map(|level| level.iter().filter(|c| keep.contains(c)).cloned().collect())
            .collect();
        let faces = self
            .faces
            .iter()
            .filter(|(c, _)| keep.contains(*c))
            .map(|(c, f)| (c.clone(), f.clone()))
            .collect();
        SSet::new(cells, faces)
    }
}

/// All valid normal degeneracy words of length `len` over a base of
/// dimension `base_dim`.
pub fn valid_words(len: usize, base_dim: usize) -> Vec<Vec<usize>> {
    // Build right to left: the j-th entry from the end lies in
    // (previous, base_dim + j].
    fn go(len: usize, base_dim: usize, j: usize, lo: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == len {
            let mut word = acc.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for w in lo..=base_dim + j {
            acc.push(w);
            go(len, base_dim, j + 1, w + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(len, base_dim, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Render a formal simplex for id derivation and diagnostics.
pub fn encode_formal(fs: &FormalSimplex) -> String {
    if fs.word.is_empty() {
        fs.base.to_string()
    } else {
        let w: Vec<String> = fs.word.iter().map(|x| x.to_string()).collect();
        format!("{}[{}]", fs.base, w.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_words_counts() {
        // Monotone surjections [p+len] -> [p] are counted by C(p+len, len).
        assert_eq!(valid_words(0, 2).len(), 1);
        assert_eq!(valid_words(1, 1).len(), 2);
        assert_eq!(valid_words(2, 1).len(), 3);
        assert_eq!(valid_words(2, 2).len(), 6);
        assert_eq!(valid_words(3, 0).len(), 1);
        for w in valid_words(3, 2) {
            assert!(word_valid(&w, 2), "{w:?}");
        }
    }

    #[test]
    fn identity_check_rejects_bad_face_table() {
        // A 2-cell whose faces do not satisfy d_0 d_2 = d_1 d_0.
        let v: Vec<Id> = (0..3).map(|i| Id::new(format!("v{i}"))).collect();
        let e: Vec<Id> = (0..2).map(|i| Id::new(format!("e{i}"))).collect();
        let t = Id::new("t");
        let mut faces = BTreeMap::new();
        faces.insert(e[0].clone(), vec![
            FormalSimplex::nondeg(v[1].clone()),
            FormalSimplex::nondeg(v[0].clone()),
        ]);
        faces.insert(e[1].clone(), vec![
            FormalSimplex::nondeg(v[2].clone()),
            FormalSimplex::nondeg(v[1].clone()),
        ]);
        // The top cell pretends both long faces are e0, which breaks the
        // identity at the vertices.
        faces.insert(t.clone(), vec![
            FormalSimplex::nondeg(e[1].clone()),
            FormalSimplex::nondeg(e[0].clone()),
            FormalSimplex::nondeg(e[1].clone()),
        ]);
        let res = SSet::new(
            vec![v.clone(), e.clone(), vec![t.clone()]],
            faces,
        );
        assert!(matches!(res, Err(SimpsetError::IdentityFailure { .. })));
    }
}
