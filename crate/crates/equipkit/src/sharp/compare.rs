//! Comparing slices: literal equality where the calculus delivers it,
//! backtracking search for a structured isomorphism otherwise.
//!
//! Face identities hold on the nose, so most comparisons certify
//! [`MatchCertificate::Exact`]. Degeneracy-flavoured identities relabel
//! cells and the certificate carries the mediating isomorphism instead.

use super::slice::{CatSlice, CospanSlice, SliceMorphism, SliceObject, SsetSlice};
use super::SharpError;
use crate::fincat::FinFunctor;
use crate::id::Id;
use crate::simpset::{sset_iso, FormalSimplex, SMap, SSet};
use std::collections::{BTreeMap, BTreeSet};

/// How two slices were matched.
#[derive(Clone, Debug)]
pub enum MatchCertificate {
    /// The slices are equal as data: same carrier ids, same structure.
    Exact,
    /// The slices differ as data but the recorded morphism is an
    /// invertible comparison between them.
    Iso(SliceMorphism),
}

impl MatchCertificate {
    pub fn is_exact(&self) -> bool {
        matches!(self, MatchCertificate::Exact)
    }
}

/// Match two slices, preferring literal equality.
pub fn slices_match(
    a: &SliceObject,
    b: &SliceObject,
    budget: u64,
) -> Result<MatchCertificate, SharpError> {
    if a == b {
        return Ok(MatchCertificate::Exact);
    }
    match slice_iso(a, b, budget)? {
        Some(iso) => Ok(MatchCertificate::Iso(iso)),
        None => Err(SharpError::VerificationFailed(format!(
            "no isomorphism between the given level-{} slices",
            a.level()
        ))),
    }
}

/// Search for an isomorphism of slices over the same simplex.
pub fn slice_iso(
    a: &SliceObject,
    b: &SliceObject,
    budget: u64,
) -> Result<Option<SliceMorphism>, SharpError> {
    if a.site() != b.site() || a.level() != b.level() {
        return Err(SharpError::Mismatch(format!(
            "cannot compare a level-{} {} slice with a level-{} {} slice",
            a.level(),
            a.site(),
            b.level(),
            b.site()
        )));
    }
    let mut steps = Budget::new(budget);
    match (a, b) {
        (SliceObject::Cat(x), SliceObject::Cat(y)) => cat_slice_iso(x, y, &mut steps),
        (SliceObject::Sset(x), SliceObject::Sset(y)) => sset_slice_iso(x, y, &mut steps),
        (SliceObject::Cospan(x), SliceObject::Cospan(y)) => cospan_slice_iso(x, y, budget),
        _ => unreachable!("sites agree"),
    }
}

struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    fn new(total: u64) -> Budget {
        Budget { left: total, total }
    }

    fn spend(&mut self) -> Result<(), SharpError> {
        if self.left == 0 {
            return Err(SharpError::EnumerationBudgetExceeded(self.total));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Backtracking bijection of cells, level by level, constrained to match
/// keys and to commute with faces.
fn constrained_sset_iso<K: Ord + Clone>(
    x: &SSet,
    y: &SSet,
    src_key: impl Fn(&Id) -> K,
    dst_key: impl Fn(&Id) -> K,
    steps: &mut Budget,
) -> Result<Option<BTreeMap<Id, Id>>, SharpError> {
    if x.counts() != y.counts() {
        return Ok(None);
    }
    let mut pool: BTreeMap<(usize, K), Vec<Id>> = BTreeMap::new();
    for (k, cells) in y.levels() {
        for d in cells {
            pool.entry((k, dst_key(d))).or_default().push(d.clone());
        }
    }
    let order: Vec<Id> = x.levels().flat_map(|(_, cells)| cells.iter().cloned()).collect();
    let mut assignment: BTreeMap<Id, Id> = BTreeMap::new();
    let mut used: BTreeSet<Id> = BTreeSet::new();

    fn admissible(
        x: &SSet,
        y: &SSet,
        assignment: &BTreeMap<Id, Id>,
        c: &Id,
        d: &Id,
        level: usize,
    ) -> bool {
        (0..=level.saturating_sub(1)).take(level).all(|i| {
            let fc = x.face(c, i);
            let mapped = FormalSimplex {
                base: assignment[&fc.base].clone(),
                word: fc.word.clone(),
            };
            y.face(d, i) == &mapped
        })
    }

    fn go<K: Ord + Clone>(
        x: &SSet,
        y: &SSet,
        order: &[Id],
        pos: usize,
        pool: &BTreeMap<(usize, K), Vec<Id>>,
        src_key: &impl Fn(&Id) -> K,
        assignment: &mut BTreeMap<Id, Id>,
        used: &mut BTreeSet<Id>,
        steps: &mut Budget,
    ) -> Result<bool, SharpError> {
        let Some(c) = order.get(pos) else {
            return Ok(true);
        };
        let level = x.dim_of(c);
        let Some(candidates) = pool.get(&(level, src_key(c))) else {
            return Ok(false);
        };
        for d in candidates {
            if used.contains(d) {
                continue;
            }
            steps.spend()?;
            if !admissible(x, y, assignment, c, d, level) {
                continue;
            }
            assignment.insert(c.clone(), d.clone());
            used.insert(d.clone());
            if go(x, y, order, pos + 1, pool, src_key, assignment, used, steps)? {
                return Ok(true);
            }
            assignment.remove(c);
            used.remove(d);
        }
        Ok(false)
    }

    if go(x, y, &order, 0, &pool, &src_key, &mut assignment, &mut used, steps)? {
        Ok(Some(assignment))
    } else {
        Ok(None)
    }
}

fn assignment_to_smap(
    x: &SSet,
    y: &SSet,
    assignment: BTreeMap<Id, Id>,
) -> Result<SMap, SharpError> {
    let formal = assignment
        .into_iter()
        .map(|(c, d)| (c, FormalSimplex::nondeg(d)))
        .collect();
    Ok(SMap::new(x.clone(), y.clone(), formal)?)
}

fn sset_slice_iso(
    x: &SsetSlice,
    y: &SsetSlice,
    steps: &mut Budget,
) -> Result<Option<SliceMorphism>, SharpError> {
    let found = constrained_sset_iso(
        x.carrier(),
        y.carrier(),
        |c| x.structure_verts(c),
        |d| y.structure_verts(d),
        steps,
    )?;
    let Some(assignment) = found else {
        return Ok(None);
    };
    let map = assignment_to_smap(x.carrier(), y.carrier(), assignment)?;
    SliceMorphism::new_sset(x.clone(), y.clone(), map).map(Some)
}

fn cat_slice_iso(
    x: &CatSlice,
    y: &CatSlice,
    steps: &mut Budget,
) -> Result<Option<SliceMorphism>, SharpError> {
    let (cx, cy) = (x.carrier(), y.carrier());
    if cx.objects().len() != cy.objects().len() || cx.morphisms().len() != cy.morphisms().len() {
        return Ok(None);
    }
    let mut pool: BTreeMap<usize, Vec<Id>> = BTreeMap::new();
    for o in cy.objects() {
        pool.entry(y.part(o)).or_default().push(o.clone());
    }
    let triples: Vec<(Id, Id, Id)> = cx
        .composable_pairs()
        .map(|(g, f)| (g.clone(), f.clone(), cx.compose(g, f).clone()))
        .collect();
    let objects: Vec<Id> = cx.objects().to_vec();
    let arrows: Vec<Id> = cx.non_identities();

    struct State<'a> {
        x: &'a CatSlice,
        y: &'a CatSlice,
        triples: &'a [(Id, Id, Id)],
        ob: BTreeMap<Id, Id>,
        mor: BTreeMap<Id, Id>,
        used_ob: BTreeSet<Id>,
        used_mor: BTreeSet<Id>,
    }

    impl State<'_> {
        fn triples_ok(&self) -> bool {
            self.triples.iter().all(|(g, f, c)| {
                match (self.mor.get(g), self.mor.get(f), self.mor.get(c)) {
                    (Some(g2), Some(f2), Some(c2)) => {
                        self.y.carrier().try_compose(g2, f2) == Some(c2)
                    }
                    _ => true,
                }
            })
        }

        fn assign_identities(&mut self) {
            for (a, b) in self.ob.clone() {
                let ux = self.x.carrier().identity(&a).clone();
                let uy = self.y.carrier().identity(&b).clone();
                self.used_mor.insert(uy.clone());
                self.mor.insert(ux, uy);
            }
        }
    }

    fn arrows_go(
        st: &mut State<'_>,
        arrows: &[Id],
        pos: usize,
        steps: &mut Budget,
    ) -> Result<bool, SharpError> {
        let Some(m) = arrows.get(pos) else {
            return Ok(true);
        };
        let (a, b) = (st.x.carrier().src(m).clone(), st.x.carrier().dst(m).clone());
        let targets = st.y.carrier().hom(&st.ob[&a], &st.ob[&b]);
        for t in targets {
            if st.used_mor.contains(&t) || st.y.carrier().is_identity(&t) {
                continue;
            }
            steps.spend()?;
            st.mor.insert(m.clone(), t.clone());
            st.used_mor.insert(t.clone());
            if st.triples_ok() && arrows_go(st, arrows, pos + 1, steps)? {
                return Ok(true);
            }
            st.mor.remove(m);
            st.used_mor.remove(&t);
        }
        Ok(false)
    }

    fn objects_go(
        st: &mut State<'_>,
        objects: &[Id],
        arrows: &[Id],
        pos: usize,
        pool: &BTreeMap<usize, Vec<Id>>,
        steps: &mut Budget,
    ) -> Result<bool, SharpError> {
        let Some(o) = objects.get(pos) else {
            let saved_mor = st.mor.clone();
            let saved_used = st.used_mor.clone();
            st.assign_identities();
            if arrows_go(st, arrows, 0, steps)? {
                return Ok(true);
            }
            st.mor = saved_mor;
            st.used_mor = saved_used;
            return Ok(false);
        };
        let Some(candidates) = pool.get(&st.x.part(o)) else {
            return Ok(false);
        };
        for d in candidates {
            if st.used_ob.contains(d) {
                continue;
            }
            steps.spend()?;
            st.ob.insert(o.clone(), d.clone());
            st.used_ob.insert(d.clone());
            if objects_go(st, objects, arrows, pos + 1, pool, steps)? {
                return Ok(true);
            }
            st.ob.remove(o);
            st.used_ob.remove(d);
        }
        Ok(false)
    }

    let mut st = State {
        x,
        y,
        triples: &triples,
        ob: BTreeMap::new(),
        mor: BTreeMap::new(),
        used_ob: BTreeSet::new(),
        used_mor: BTreeSet::new(),
    };
    if !objects_go(&mut st, &objects, &arrows, 0, &pool, steps)? {
        return Ok(None);
    }
    let map = FinFunctor::new(cx.clone(), cy.clone(), st.ob, st.mor)?;
    SliceMorphism::new_cat(x.clone(), y.clone(), map).map(Some)
}

/// Best effort: one apex isomorphism is searched and legs are matched
/// over it; no backtracking across apex choices.
fn cospan_slice_iso(
    x: &CospanSlice,
    y: &CospanSlice,
    budget: u64,
) -> Result<Option<SliceMorphism>, SharpError> {
    let Some(apex) = sset_iso(x.apex(), y.apex(), budget)? else {
        return Ok(None);
    };
    let alpha = apex.forward;
    let mut steps = Budget::new(budget);
    let mut legs = Vec::new();
    for i in 0..x.legs().len() {
        let (xm, ym) = (&x.leg_maps()[i], &y.leg_maps()[i]);
        let found = constrained_sset_iso(
            &x.legs()[i],
            &y.legs()[i],
            |c| alpha.apply(xm.apply_cell(c)),
            |d| ym.apply_cell(d).clone(),
            &mut steps,
        )?;
        let Some(assignment) = found else {
            return Ok(None);
        };
        legs.push(assignment_to_smap(&x.legs()[i], &y.legs()[i], assignment)?);
    }
    SliceMorphism::new_cospan(x.clone(), y.clone(), legs, alpha).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::delta_cat;
    use crate::sharp::slice::{degeneracy_slice, face_slice, s_power, SsetSlice};
    use crate::simpset::standard::std_simplex;

    #[test]
    fn equal_slices_match_exactly() {
        let x = SliceObject::Sset(SsetSlice::point(std_simplex(1)));
        assert!(slices_match(&x, &x.clone(), 100).unwrap().is_exact());
    }

    #[test]
    fn d1_s0_is_isomorphic_to_the_identity() {
        let x = SliceObject::Sset(SsetSlice::point(crate::simpset::standard::boundary(2)));
        let back = face_slice(&degeneracy_slice(&x, 0).unwrap(), 1).unwrap();
        match slices_match(&back, &x, 10_000).unwrap() {
            MatchCertificate::Iso(m) => assert!(m.is_iso()),
            MatchCertificate::Exact => panic!("relabeled cells should not be literally equal"),
        }
    }

    #[test]
    fn cat_iso_found_under_part_constraint() {
        let x = SliceObject::Cat(crate::sharp::slice::CatSlice::point(delta_cat(1)));
        let lhs = face_slice(&s_power(&x, 2).unwrap(), 1).unwrap();
        let rhs = s_power(&x, 1).unwrap();
        match slices_match(&lhs, &rhs, 10_000).unwrap() {
            MatchCertificate::Iso(m) => assert!(m.is_iso()),
            MatchCertificate::Exact => panic!("product ids differ between levels"),
        }
    }

    #[test]
    fn mismatched_slices_fail() {
        let a = SliceObject::Sset(SsetSlice::point(std_simplex(0)));
        let b = SliceObject::Sset(SsetSlice::point(std_simplex(1)));
        assert!(matches!(
            slices_match(&a, &b, 100),
            Err(SharpError::VerificationFailed(_))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let x = SliceObject::Sset(SsetSlice::point(crate::simpset::standard::boundary(2)));
        let back = face_slice(&degeneracy_slice(&x, 0).unwrap(), 1).unwrap();
        assert!(matches!(
            slices_match(&back, &x, 1),
            Err(SharpError::EnumerationBudgetExceeded(1))
        ));
    }
}
