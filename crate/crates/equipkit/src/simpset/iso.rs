//! Isomorphism search between finite simplicial sets.

use super::{FormalSimplex, SMap, SSet, SimpsetError};
use crate::id::Id;
use std::collections::{BTreeMap, BTreeSet};

/// A certified isomorphism: both directions, validated and mutually
/// inverse by construction.
#[derive(Clone, Debug)]
pub struct SsetIso {
    pub forward: SMap,
    pub backward: SMap,
}

struct Search<'a> {
    x: &'a SSet,
    y: &'a SSet,
    order: Vec<Id>,
    budget: u64,
    spent: u64,
}

impl<'a> Search<'a> {
    fn step(
        &mut self,
        pos: usize,
        assign: &mut BTreeMap<Id, Id>,
        used: &mut BTreeSet<Id>,
    ) -> Result<bool, SimpsetError> {
        if pos == self.order.len() {
            return Ok(true);
        }
        let cell = self.order[pos].clone();
        let k = self.x.dim_of(&cell);
        for cand in self.y.cells(k).to_vec() {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(SimpsetError::SearchBudgetExceeded(self.budget));
            }
            if used.contains(&cand) || !self.admissible(&cell, k, &cand, assign) {
                continue;
            }
            assign.insert(cell.clone(), cand.clone());
            used.insert(cand.clone());
            if self.step(pos + 1, assign, used)? {
                return Ok(true);
            }
            assign.remove(&cell);
            used.remove(&cand);
        }
        Ok(false)
    }

    fn admissible(&self, cell: &Id, k: usize, cand: &Id, assign: &BTreeMap<Id, Id>) -> bool {
        if k == 0 {
            return true;
        }
        (0..=k).all(|i| {
            let face = self.x.face(cell, i);
            let img = FormalSimplex {
                base: assign[&face.base].clone(),
                word: face.word.clone(),
            };
            img == *self.y.face(cand, i)
        })
    }
}

/// Search for an isomorphism X ≅ Y; `Ok(None)` means provably none
/// exists, an error means the budget ran out first.
pub fn sset_iso(x: &SSet, y: &SSet, budget: u64) -> Result<Option<SsetIso>, SimpsetError> {
    if x.counts() != y.counts() {
        return Ok(None);
    }
    let order: Vec<Id> = x.levels().flat_map(|(_, l)| l.iter().cloned()).collect();
    let mut search = Search { x, y, order, budget, spent: 0 };
    let mut assign = BTreeMap::new();
    let mut used = BTreeSet::new();
    if !search.step(0, &mut assign, &mut used)? {
        return Ok(None);
    }
    let fwd_assign = assign
        .iter()
        .map(|(c, d)| (c.clone(), FormalSimplex::nondeg(d.clone())))
        .collect();
    let forward = SMap::new(x.clone(), y.clone(), fwd_assign)?;
    let backward = forward
        .inverse()
        .expect("levelwise bijection on nondegenerate cells inverts");
    Ok(Some(SsetIso { forward, backward }))
}

#[cfg(test)]
mod tests {
    use super::super::standard::std_map_into;
    use super::super::colimit::{colimit, SsetDiagram, SsetEdge};
    use super::super::{boundary, horn, std_simplex};
    use super::*;

    #[test]
    fn standard_simplices_are_isomorphic_to_themselves_only() {
        let d2 = std_simplex(2);
        let iso = sset_iso(&d2, &d2, 10_000).unwrap().unwrap();
        let round = SMap::compose(&iso.backward, &iso.forward).unwrap();
        assert_eq!(round, SMap::identity(&d2));
        assert!(sset_iso(&d2, &std_simplex(1), 10_000).unwrap().is_none());
        assert!(sset_iso(&boundary(2), &horn(2, 1), 10_000).unwrap().is_none());
    }

    #[test]
    fn a_glued_path_is_isomorphic_to_a_renamed_path() {
        // Two edges glued end to end ≅ the spine of Δ² (swap of ids).
        let edge = std_simplex(1);
        let pt = std_simplex(0);
        let nodes: BTreeMap<Id, SSet> = [
            (Id::new("a"), edge.clone()),
            (Id::new("b"), edge.clone()),
            (Id::new("p"), pt.clone()),
        ]
        .into();
        let edges = vec![
            SsetEdge {
                src: Id::new("p"),
                dst: Id::new("a"),
                map: std_map_into(&[1], &edge).unwrap(),
            },
            SsetEdge {
                src: Id::new("p"),
                dst: Id::new("b"),
                map: std_map_into(&[0], &edge).unwrap(),
            },
        ];
        let path = colimit(&SsetDiagram::new(nodes, edges).unwrap()).unwrap().object;
        let spine = {
            let d2 = std_simplex(2);
            let keep: BTreeSet<Id> = ["x0", "x1", "x2", "x0.1", "x1.2"]
                .into_iter()
                .map(Id::new)
                .collect();
            d2.subcomplex(&keep).unwrap()
        };
        assert!(sset_iso(&path, &spine, 10_000).unwrap().is_some());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let b = boundary(3);
        let res = sset_iso(&b, &b, 3);
        assert!(matches!(res, Err(SimpsetError::SearchBudgetExceeded(3))));
    }
}
