//! Simplicial maps.

use super::{encode_formal, FormalSimplex, SSet, SimpsetError};
use crate::id::Id;
use std::collections::BTreeMap;

/// A simplicial map, stored by its action on nondegenerate cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SMap {
    source: SSet,
    target: SSet,
    assign: BTreeMap<Id, FormalSimplex>,
}

impl SMap {
    /// Validate and construct: `assign` must cover exactly the
    /// nondegenerate cells of `source`, preserve dimension, and commute
    /// with faces.
    pub fn new(
        source: SSet,
        target: SSet,
        assign: BTreeMap<Id, FormalSimplex>,
    ) -> Result<SMap, SimpsetError> {
        for id in assign.keys() {
            if !source.has_cell(id) {
                return Err(SimpsetError::SpuriousAssignment(id.clone()));
            }
        }
        for id in source.all_cells() {
            let img = assign
                .get(id)
                .ok_or_else(|| SimpsetError::UnassignedCell(id.clone()))?;
            if !target.has_cell(&img.base) {
                return Err(SimpsetError::UnknownTargetBase {
                    cell: id.clone(),
                    base: img.base.clone(),
                });
            }
            if !target.formal_ok(img) {
                return Err(SimpsetError::UnknownTargetBase {
                    cell: id.clone(),
                    base: img.base.clone(),
                });
            }
            let src_dim = source.dim_of(id);
            let dst_dim = target.formal_dim(img);
            if src_dim != dst_dim {
                return Err(SimpsetError::DimensionMismatch {
                    cell: id.clone(),
                    src_dim,
                    dst_dim,
                });
            }
        }
        let map = SMap { source, target, assign };
        for id in map.source.all_cells() {
            let k = map.source.dim_of(id);
            if k == 0 {
                continue;
            }
            let top = FormalSimplex::nondeg(id.clone());
            let img = &map.assign[id];
            for i in 0..=k {
                let lhs = map.apply(&map.source.face_formal(&top, i));
                let rhs = map.target.face_formal(img, i);
                if lhs != rhs {
                    return Err(SimpsetError::FaceCommutation { cell: id.clone(), index: i });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: &SSet) -> SMap {
        let assign = x
            .all_cells()
            .map(|c| (c.clone(), FormalSimplex::nondeg(c.clone())))
            .collect();
        SMap { source: x.clone(), target: x.clone(), assign }
    }

    pub fn source(&self) -> &SSet {
        &self.source
    }

    pub fn target(&self) -> &SSet {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<Id, FormalSimplex> {
        &self.assign
    }

    /// Image of an arbitrary formal simplex: f(s_W x) = s_W f(x).
    pub fn apply(&self, fs: &FormalSimplex) -> FormalSimplex {
        self.assign[&fs.base].with_degeneracies(&fs.word)
    }

    /// Image of a nondegenerate cell.
    pub fn apply_cell(&self, id: &Id) -> &FormalSimplex {
        &self.assign[id]
    }

    /// g ∘ f, checking the middle objects agree.
    pub fn compose(g: &SMap, f: &SMap) -> Result<SMap, SimpsetError> {
        if f.target != g.source {
            return Err(SimpsetError::Incompatible(
                "compose: target of first map differs from source of second".into(),
            ));
        }
        let assign = f
            .assign
            .iter()
            .map(|(c, img)| (c.clone(), g.apply(img)))
            .collect();
        Ok(SMap { source: f.source.clone(), target: g.target.clone(), assign })
    }

    /// A map is an isomorphism iff it is a levelwise bijection on
    /// nondegenerate cells, with no degeneracies in any image.
    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<SMap> {
        let mut back = BTreeMap::new();
        for (c, img) in &self.assign {
            if !img.word.is_empty() {
                return None;
            }
            if back.insert(img.base.clone(), FormalSimplex::nondeg(c.clone())).is_some() {
                return None;
            }
        }
        if back.len() != self.target.cell_count() {
            return None;
        }
        for id in self.target.all_cells() {
            if !back.contains_key(id) {
                return None;
            }
        }
        Some(SMap {
            source: self.target.clone(),
            target: self.source.clone(),
            assign: back,
        })
    }

    /// Short rendering of the assignment, for diagnostics.
    pub fn describe(&self) -> String {
        self.assign
            .iter()
            .map(|(c, img)| format!("{c} => {}", encode_formal(img)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}
