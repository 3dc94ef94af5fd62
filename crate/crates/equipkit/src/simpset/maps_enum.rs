//! Exhaustive enumeration of simplicial maps between small complexes.

use super::{FormalSimplex, SMap, SSet, SimpsetError};
use crate::id::Id;
use std::collections::BTreeMap;

struct Enumerator<'a> {
    x: &'a SSet,
    y: &'a SSet,
    order: Vec<Id>,
    candidates_by_dim: Vec<Vec<FormalSimplex>>,
    constraint: Option<(&'a SMap, &'a SMap)>,
    budget: u64,
    spent: u64,
    out: Vec<SMap>,
}

impl<'a> Enumerator<'a> {
    fn run(mut self) -> Result<Vec<SMap>, SimpsetError> {
        let mut assign = BTreeMap::new();
        self.step(0, &mut assign)?;
        Ok(self.out)
    }

    fn step(
        &mut self,
        pos: usize,
        assign: &mut BTreeMap<Id, FormalSimplex>,
    ) -> Result<(), SimpsetError> {
        if pos == self.order.len() {
            let map = SMap::new(self.x.clone(), self.y.clone(), assign.clone())
                .expect("enumerated assignment is simplicial");
            self.out.push(map);
            return Ok(());
        }
        let cell = self.order[pos].clone();
        let k = self.x.dim_of(&cell);
        for cand in self.candidates_by_dim[k].clone() {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(SimpsetError::EnumerationBudgetExceeded(self.budget));
            }
            if !self.admissible(&cell, k, &cand, assign) {
                continue;
            }
            assign.insert(cell.clone(), cand);
            self.step(pos + 1, assign)?;
            assign.remove(&cell);
        }
        Ok(())
    }

    fn admissible(
        &self,
        cell: &Id,
        k: usize,
        cand: &FormalSimplex,
        assign: &BTreeMap<Id, FormalSimplex>,
    ) -> bool {
        if let Some((sx, sy)) = self.constraint {
            if sy.apply(cand) != *sx.apply_cell(cell) {
                return false;
            }
        }
        if k == 0 {
            return true;
        }
        let top = FormalSimplex::nondeg(cell.clone());
        (0..=k).all(|i| {
            let face = self.x.face_formal(&top, i);
            let img = assign[&face.base].with_degeneracies(&face.word);
            img == self.y.face_formal(cand, i)
        })
    }
}

fn dim_ordered_cells(x: &SSet) -> Vec<Id> {
    x.levels()
        .flat_map(|(_, level)| level.iter().cloned())
        .collect()
}

/// All simplicial maps X → Y, by dimension-ascending backtracking.
pub fn enumerate_maps(x: &SSet, y: &SSet, budget: u64) -> Result<Vec<SMap>, SimpsetError> {
    enumerate_maps_constrained(x, y, None, budget)
}

/// All maps f: X → Y over a common base: sy ∘ f = sx.
pub fn enumerate_maps_over(
    sx: &SMap,
    sy: &SMap,
    budget: u64,
) -> Result<Vec<SMap>, SimpsetError> {
    if sx.target() != sy.target() {
        return Err(SimpsetError::Incompatible(
            "enumerate_maps_over: structure maps land in different bases".into(),
        ));
    }
    enumerate_maps_constrained(sx.source(), sy.source(), Some((sx, sy)), budget)
}

fn enumerate_maps_constrained(
    x: &SSet,
    y: &SSet,
    constraint: Option<(&SMap, &SMap)>,
    budget: u64,
) -> Result<Vec<SMap>, SimpsetError> {
    let max_dim = x.max_dim().unwrap_or(0);
    let candidates_by_dim = (0..=max_dim).map(|k| y.formals_at(k)).collect();
    Enumerator {
        x,
        y,
        order: dim_ordered_cells(x),
        candidates_by_dim,
        constraint,
        budget,
        spent: 0,
        out: Vec::new(),
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::super::{boundary, std_simplex};
    use super::*;

    #[test]
    fn maps_between_standard_simplices_count_monotone_maps() {
        // sSet(Δᵐ, Δⁿ) ≅ monotone maps [m] → [n]: C(m+n+1, m+1).
        let counts = [
            (0, 0, 1),
            (0, 1, 2),
            (1, 0, 1),
            (1, 1, 3),
            (1, 2, 6),
            (2, 1, 4),
        ];
        for (m, n, want) in counts {
            let maps =
                enumerate_maps(&std_simplex(m), &std_simplex(n), 1_000_000).unwrap();
            assert_eq!(maps.len(), want, "Δ{m} → Δ{n}");
        }
    }

    #[test]
    fn maps_from_boundary_one() {
        // ∂Δ¹ is two points; maps to Δ¹ pick a vertex each.
        let maps = enumerate_maps(&boundary(1), &std_simplex(1), 1_000_000).unwrap();
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn budget_is_honoured() {
        let res = enumerate_maps(&std_simplex(2), &std_simplex(2), 5);
        assert!(matches!(res, Err(SimpsetError::EnumerationBudgetExceeded(5))));
    }
}
