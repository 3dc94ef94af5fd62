//! Levelwise pair constructions: pullbacks and products with a standard
//! simplex.
//!
//! A k-simplex of X ×_B A is a word-disjoint pair of formal k-simplices
//! agreeing in B; faces act componentwise and are renormalized by pulling
//! the common degeneracies out front.

use super::standard::std_simplex;
use super::{encode_formal, maps_enum, FormalSimplex, SMap, SSet, SimpsetError};
use crate::id::Id;
use std::collections::BTreeMap;

fn strip(word: &[usize], j: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() - 1);
    let mut removed = false;
    for &w in word {
        if w == j && !removed {
            removed = true;
        } else if w > j {
            out.push(w - 1);
        } else {
            out.push(w);
        }
    }
    debug_assert!(removed);
    out
}

/// Pull the common degeneracies of a componentwise pair out front:
/// (s_V ξ, s_W υ) = s_U (ξ', υ') with ξ', υ' word-disjoint.
pub fn pair_normalize(
    mut left: FormalSimplex,
    mut right: FormalSimplex,
) -> (Vec<usize>, FormalSimplex, FormalSimplex) {
    let mut outer = Vec::new();
    loop {
        let common = left
            .word
            .iter()
            .filter(|w| right.word.contains(w))
            .max()
            .copied();
        match common {
            None => break,
            Some(j) => {
                left.word = strip(&left.word, j);
                right.word = strip(&right.word, j);
                outer.push(j);
            }
        }
    }
    (outer, left, right)
}

/// A pullback (or product) presented with its two projections.
#[derive(Clone, Debug)]
pub struct PairObject {
    pub object: SSet,
    pub to_left: SMap,
    pub to_right: SMap,
}

impl PairObject {
    /// Look up the cell representing a (not necessarily disjoint) pair.
    pub fn pair_formal(
        &self,
        left: FormalSimplex,
        right: FormalSimplex,
    ) -> Option<FormalSimplex> {
        let (word, l, r) = pair_normalize(left, right);
        let id = pair_id(&l, &r);
        self.object.has_cell(&id).then_some(FormalSimplex { base: id, word })
    }

    /// The pairing map ⟨u, v⟩ : T → P for u: T → left, v: T → right.
    pub fn pairing(&self, u: &SMap, v: &SMap) -> Result<SMap, SimpsetError> {
        if u.source() != v.source() {
            return Err(SimpsetError::Incompatible(
                "pairing: the two maps have different sources".into(),
            ));
        }
        let mut assign = BTreeMap::new();
        for cell in u.source().all_cells() {
            let l = u.apply_cell(cell).clone();
            let r = v.apply_cell(cell).clone();
            let img = self.pair_formal(l, r).ok_or_else(|| {
                SimpsetError::Incompatible(format!(
                    "pairing: images of {cell} do not agree over the base"
                ))
            })?;
            assign.insert(cell.clone(), img);
        }
        SMap::new(u.source().clone(), self.object.clone(), assign)
    }
}

fn pair_id(left: &FormalSimplex, right: &FormalSimplex) -> Id {
    Id::new(format!("({},{})", encode_formal(left), encode_formal(right)))
}

/// Pullback of f: X → B ← A : g. Cells are word-disjoint pairs of formal
/// simplices with equal images in B.
pub fn pullback(f: &SMap, g: &SMap) -> Result<PairObject, SimpsetError> {
    if f.target() != g.target() {
        return Err(SimpsetError::Incompatible(
            "pullback: the two maps have different targets".into(),
        ));
    }
    let x = f.source();
    let a = g.source();
    let mut cells: Vec<Vec<Id>> = Vec::new();
    let mut members: Vec<Vec<(FormalSimplex, FormalSimplex)>> = Vec::new();
    let (Some(mx), Some(ma)) = (x.max_dim(), a.max_dim()) else {
        return Ok(empty_pair(f, g));
    };
    for k in 0..=mx + ma {
        let xs = x.formals_at(k);
        let as_ = a.formals_at(k);
        let mut level = Vec::new();
        let mut level_members = Vec::new();
        for xf in &xs {
            let fx = f.apply(xf);
            for af in &as_ {
                if xf.word.iter().any(|w| af.word.contains(w)) {
                    continue;
                }
                if g.apply(af) != fx {
                    continue;
                }
                level.push(pair_id(xf, af));
                level_members.push((xf.clone(), af.clone()));
            }
        }
        cells.push(level);
        members.push(level_members);
    }
    let mut faces = BTreeMap::new();
    let mut left_assign = BTreeMap::new();
    let mut right_assign = BTreeMap::new();
    for (k, level) in members.iter().enumerate() {
        for (xf, af) in level {
            let id = pair_id(xf, af);
            left_assign.insert(id.clone(), xf.clone());
            right_assign.insert(id.clone(), af.clone());
            if k == 0 {
                continue;
            }
            let fs: Vec<FormalSimplex> = (0..=k)
                .map(|i| {
                    let (word, l, r) =
                        pair_normalize(x.face_formal(xf, i), a.face_formal(af, i));
                    FormalSimplex { base: pair_id(&l, &r), word }
                })
                .collect();
            faces.insert(id, fs);
        }
    }
    let object = SSet::new(cells, faces)?;
    let to_left = SMap::new(object.clone(), x.clone(), left_assign)?;
    let to_right = SMap::new(object.clone(), a.clone(), right_assign)?;
    Ok(PairObject { object, to_left, to_right })
}

fn empty_pair(f: &SMap, g: &SMap) -> PairObject {
    let object = SSet::empty();
    let to_left = SMap::new(object.clone(), f.source().clone(), BTreeMap::new())
        .expect("empty map");
    let to_right = SMap::new(object.clone(), g.source().clone(), BTreeMap::new())
        .expect("empty map");
    PairObject { object, to_left, to_right }
}

/// The unique map X → Δ⁰.
pub fn terminal_map(x: &SSet) -> SMap {
    let pt = std_simplex(0);
    let v = pt.cells(0)[0].clone();
    let assign = x
        .all_cells()
        .map(|c| {
            let k = x.dim_of(c);
            let word: Vec<usize> = (0..k).rev().collect();
            (c.clone(), FormalSimplex { base: v.clone(), word })
        })
        .collect();
    SMap::new(x.clone(), pt, assign).expect("terminal map")
}

/// X × Δⁿ with its two projections, computed as a pullback over Δ⁰.
pub fn product_with_simplex(x: &SSet, n: usize) -> PairObject {
    let simplex = std_simplex(n);
    pullback(&terminal_map(x), &terminal_map(&simplex)).expect("product over the point")
}

/// Bounded check of the product universal property against a given pair
/// of test maps: the pairing exists, commutes with both projections, and
/// is the only map doing so among all maps T → X×Δⁿ.
pub fn verify_product_universal(
    p: &PairObject,
    u: &SMap,
    v: &SMap,
    budget: u64,
) -> Result<bool, SimpsetError> {
    let w = p.pairing(u, v)?;
    if &SMap::compose(&p.to_left, &w)? != u || &SMap::compose(&p.to_right, &w)? != v {
        return Ok(false);
    }
    let all = maps_enum::enumerate_maps(u.source(), &p.object, budget)?;
    let matching = all
        .iter()
        .filter(|cand| {
            SMap::compose(&p.to_left, cand).as_ref() == Ok(u)
                && SMap::compose(&p.to_right, cand).as_ref() == Ok(v)
        })
        .count();
    Ok(matching == 1)
}

#[cfg(test)]
mod tests {
    use super::super::standard::{simplex_cell_id, std_map, subcomplex_inclusion};
    use super::super::{boundary, std_simplex};
    use super::*;

    #[test]
    fn square_has_the_known_cell_counts() {
        let p = product_with_simplex(&std_simplex(1), 1);
        assert_eq!(p.object.counts(), vec![4, 5, 2]);
        // Total 1-simplices including degenerate ones: 5 + 4 vertices.
        assert_eq!(p.object.formals_at(1).len(), 9);
    }

    #[test]
    fn product_counts_match_levelwise_products() {
        let x = boundary(2);
        let p = product_with_simplex(&x, 1);
        for k in 0..=4 {
            assert_eq!(
                p.object.formals_at(k).len(),
                x.formals_at(k).len() * std_simplex(1).formals_at(k).len(),
                "level {k}"
            );
        }
    }

    #[test]
    fn product_with_point_is_the_object_itself() {
        let x = boundary(2);
        let p = product_with_simplex(&x, 0);
        assert!(p.to_left.is_iso());
        assert_eq!(p.object.counts(), x.counts());
    }

    #[test]
    fn pair_normalize_strips_common_degeneracies() {
        let a = FormalSimplex { base: Id::new("a"), word: vec![2, 0] };
        let b = FormalSimplex { base: Id::new("b"), word: vec![2, 1] };
        let (outer, l, r) = pair_normalize(a, b);
        assert_eq!(outer, vec![2]);
        assert_eq!(l.word, vec![0]);
        assert_eq!(r.word, vec![1]);
        assert!(!l.word.iter().any(|w| r.word.contains(w)));
    }

    #[test]
    fn pullback_of_boundary_inclusion_along_vertex() {
        // Fiber of ∂Δ¹ ↪ Δ¹ over the vertex 0 inclusion is a point.
        let amb = std_simplex(1);
        let f = subcomplex_inclusion(&boundary(1), &amb).unwrap();
        let g = std_map(&[0], 1);
        let p = pullback(&f, &g).unwrap();
        assert_eq!(p.object.counts(), vec![1]);
        let v = p.to_left.apply_cell(&p.object.cells(0)[0]);
        assert_eq!(v.base, simplex_cell_id(&[0]));
    }

    #[test]
    fn product_universal_property_small() {
        let x = std_simplex(1);
        let p = product_with_simplex(&x, 1);
        let t = std_simplex(1);
        let u = SMap::identity(&t);
        let v = std_map(&[0, 1], 1);
        assert!(verify_product_universal(&p, &u, &v, 1_000_000).unwrap());
    }
}
