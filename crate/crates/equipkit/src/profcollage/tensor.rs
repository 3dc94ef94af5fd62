//! The tensor of composable profunctors, computed as an elementwise
//! coequalizer: classes of pairs (y, x) under (y·f, x) ~ (y, f·x) for
//! middle morphisms f.

use super::{ProfError, Profunctor};
use crate::id::Id;
use crate::util::{compound_id, UnionFind};
use std::collections::BTreeMap;

/// How tensor classes relate to their member pairs: every pair (y, x)
/// maps to its class id, and every class remembers its canonical
/// (least) representative.
#[derive(Clone, Debug)]
pub struct TensorWitness {
    classes: BTreeMap<(Id, Id), Id>,
    canon: BTreeMap<Id, (Id, Id)>,
}

impl TensorWitness {
    /// The class of the pair y ⊗ x. Panics on unknown pairs.
    pub fn class_of(&self, y: &Id, x: &Id) -> &Id {
        &self.classes[&(y.clone(), x.clone())]
    }

    /// The canonical representative (y, x) of a class.
    pub fn canonical_pair(&self, class: &Id) -> (&Id, &Id) {
        let (y, x) = &self.canon[class];
        (y, x)
    }
}

/// v ⊗ u for u: C ⇸ D and v: D ⇸ E, with the membership witness.
pub fn tensor_with_witness(
    u: &Profunctor,
    v: &Profunctor,
) -> Result<(Profunctor, TensorWitness), ProfError> {
    if u.dst_cat() != v.src_cat() {
        return Err(ProfError::CompositionMismatch);
    }
    let mid = u.dst_cat();
    // All pairs (y, x) with x ∈ u(c,d), y ∈ v(d,e), grouped globally;
    // relations never cross (c,e) slots.
    let mut members: Vec<(Id, Id)> = Vec::new();
    for (x, (_, d)) in u.all_elements().map(|x| (x, u.element_home(x))) {
        for ((d2, _), ys) in v.pairs() {
            if d2 != d {
                continue;
            }
            for y in ys {
                members.push((y.clone(), x.clone()));
            }
        }
    }
    members.sort();
    let index: BTreeMap<(Id, Id), usize> =
        members.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut uf = UnionFind::new(members.len());
    for f in mid.morphisms() {
        // f: d → d′; y ∈ v(d′,e), x ∈ u(c,d): (y·f, x) ~ (y, f·x).
        for (y, (dy, _)) in v.all_elements().map(|y| (y, v.element_home(y))) {
            if dy != mid.dst(f) {
                continue;
            }
            for (x, (_, dx)) in u.all_elements().map(|x| (x, u.element_home(x))) {
                if dx != mid.src(f) {
                    continue;
                }
                let a = index[&(v.lact(f, y).clone(), x.clone())];
                let b = index[&(y.clone(), u.ract(f, x).clone())];
                uf.union(a, b);
            }
        }
    }
    let mut canon_member: BTreeMap<usize, (Id, Id)> = BTreeMap::new();
    for (i, p) in members.iter().enumerate() {
        let root = uf.find(i);
        canon_member
            .entry(root)
            .and_modify(|cur| {
                if *p < *cur {
                    *cur = p.clone();
                }
            })
            .or_insert_with(|| p.clone());
    }
    let class_id = |p: &(Id, Id)| compound_id("te", &[p.0.to_string(), p.1.to_string()]);
    let mut classes = BTreeMap::new();
    let mut canon = BTreeMap::new();
    let mut elements: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
    for p in canon_member.values() {
        let id = class_id(p);
        canon.insert(id.clone(), p.clone());
        let (c, _) = u.element_home(&p.1);
        let (_, e) = v.element_home(&p.0);
        elements.entry((c.clone(), e.clone())).or_default().push(id.clone());
    }
    for (i, p) in members.iter().enumerate() {
        let root = uf.find(i);
        classes.insert(p.clone(), class_id(&canon_member[&root]));
    }
    // Actions through canonical representatives.
    let mut lact = BTreeMap::new();
    let mut ract = BTreeMap::new();
    for (y, x) in canon_member.values() {
        let id = class_id(&(y.clone(), x.clone()));
        let (c, _) = u.element_home(x);
        for h in u.src_cat().morphisms() {
            if u.src_cat().dst(h) == c {
                let target = classes[&(y.clone(), u.lact(h, x).clone())].clone();
                lact.insert((h.clone(), id.clone()), target);
            }
        }
        let (_, e) = v.element_home(y);
        for k in v.dst_cat().morphisms() {
            if v.dst_cat().src(k) == e {
                let target = classes[&(v.ract(k, y).clone(), x.clone())].clone();
                ract.insert((k.clone(), id.clone()), target);
            }
        }
    }
    let prof = Profunctor::new(
        u.src_cat().clone(),
        v.dst_cat().clone(),
        elements,
        lact,
        ract,
    )?;
    Ok((prof, TensorWitness { classes, canon }))
}

/// v ⊗ u for u: C ⇸ D and v: D ⇸ E.
pub fn tensor(u: &Profunctor, v: &Profunctor) -> Result<Profunctor, ProfError> {
    Ok(tensor_with_witness(u, v)?.0)
}

#[cfg(test)]
mod tests {
    use super::super::cells::{associator, left_unitor, right_unitor};
    use super::super::companion::{cojoint, companion};
    use super::super::hom_profunctor;
    use super::*;
    use crate::fincat::{delta_cat, poset_mor, poset_ob, FinFunctor};
    use std::collections::BTreeSet;

    fn sets_profunctor(sizes: &[usize], tag: &str) -> Profunctor {
        // A profunctor between terminal categories with the given number
        // of elements (sizes has length 1 here; kept general for shape).
        let c = delta_cat(0);
        let elts: Vec<Id> = (0..sizes[0]).map(|i| Id::new(format!("{tag}{i}"))).collect();
        let pair = (poset_ob(0), poset_ob(0));
        let lact = elts
            .iter()
            .map(|e| ((poset_mor(0, 0), e.clone()), e.clone()))
            .collect();
        let ract = elts
            .iter()
            .map(|e| ((poset_mor(0, 0), e.clone()), e.clone()))
            .collect();
        Profunctor::new(c.clone(), c, [(pair, elts)].into(), lact, ract).unwrap()
    }

    /// Independent oracle: count coequalizer classes by BFS over the
    /// relation graph, sharing nothing with the union-find route.
    fn orbit_count(u: &Profunctor, v: &Profunctor) -> usize {
        let mid = u.dst_cat();
        let mut pairs = BTreeSet::new();
        for x in u.all_elements() {
            for y in v.all_elements() {
                if &u.element_home(x).1 == &v.element_home(y).0 {
                    pairs.insert((y.clone(), x.clone()));
                }
            }
        }
        let mut remaining: BTreeSet<(Id, Id)> = pairs.clone();
        let mut count = 0;
        while let Some(seed) = remaining.iter().next().cloned() {
            count += 1;
            let mut queue = vec![seed.clone()];
            remaining.remove(&seed);
            while let Some((y, x)) = queue.pop() {
                for f in mid.morphisms() {
                    // Forward: if y = y′·f then (y′, f·x) is adjacent.
                    if mid.src(f) == &u.element_home(&x).1 {
                        for y2 in v.all_elements() {
                            if &v.element_home(y2).0 == mid.dst(f)
                                && v.lact(f, y2) == &y
                            {
                                let next = (y2.clone(), u.ract(f, &x).clone());
                                if remaining.remove(&next) {
                                    queue.push(next);
                                }
                            }
                        }
                    }
                    // Backward: if x = f·x′ then (y·f…) — symmetric case.
                    if mid.dst(f) == &v.element_home(&y).0 {
                        for x2 in u.all_elements() {
                            if &u.element_home(x2).1 == mid.src(f)
                                && u.ract(f, x2) == &x
                            {
                                let next = (v.lact(f, &y).clone(), x2.clone());
                                if remaining.remove(&next) {
                                    queue.push(next);
                                }
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn terminal_middle_gives_the_product() {
        let u = sets_profunctor(&[2], "u");
        let v = sets_profunctor(&[3], "v");
        let t = tensor(&u, &v).unwrap();
        assert_eq!(t.element_count(), 6);
        assert_eq!(orbit_count(&u, &v), 6);
    }

    #[test]
    fn unitors_are_invertible() {
        for u in [
            hom_profunctor(&delta_cat(1)),
            companion(&super::super::companion::tests::pick_zero()),
        ] {
            let l = left_unitor(&u).unwrap();
            assert!(l.is_invertible());
            assert_eq!(l.top().element_count(), u.element_count());
            let r = right_unitor(&u).unwrap();
            assert!(r.is_invertible());
            assert_eq!(r.top().element_count(), u.element_count());
        }
    }

    #[test]
    fn companions_compose_along_tensor() {
        // f: Δ⁰ → Δ¹ picking 0, g: Δ¹ → Δ² as the face skipping 2.
        let f = super::super::companion::tests::pick_zero();
        let arrow = delta_cat(1);
        let triangle = delta_cat(2);
        let g = FinFunctor::new(
            arrow.clone(),
            triangle.clone(),
            [(poset_ob(0), poset_ob(0)), (poset_ob(1), poset_ob(1))].into(),
            [
                (poset_mor(0, 0), poset_mor(0, 0)),
                (poset_mor(1, 1), poset_mor(1, 1)),
                (poset_mor(0, 1), poset_mor(0, 1)),
            ]
            .into(),
        )
        .unwrap();
        let gf = FinFunctor::compose(&g, &f).unwrap();
        let t = tensor(&companion(&f), &companion(&g)).unwrap();
        let direct = companion(&gf);
        // Same element counts pairwise and matching actions up to the
        // canonical bijection; counts establish the iso here, the cell
        // machinery exercises the actions elsewhere.
        assert_eq!(t.element_count(), direct.element_count());
        for (pair, elts) in direct.pairs() {
            assert_eq!(t.at(&pair.0, &pair.1).len(), elts.len());
        }
        assert_eq!(orbit_count(&companion(&f), &companion(&g)), direct.element_count());
    }

    #[test]
    fn tensor_with_hom_keeps_sizes() {
        let u = companion(&super::super::companion::tests::pick_zero());
        let homd = hom_profunctor(u.dst_cat());
        let t = tensor(&u, &homd).unwrap();
        assert_eq!(t.element_count(), u.element_count());
        let homc = hom_profunctor(u.src_cat());
        let t2 = tensor(&homc, &u).unwrap();
        assert_eq!(t2.element_count(), u.element_count());
    }

    #[test]
    fn associator_is_invertible_on_a_composable_triple() {
        let f = super::super::companion::tests::pick_zero();
        let u = cojoint(&f);
        let v = companion(&f);
        let w = hom_profunctor(&delta_cat(1));
        let a = associator(&u, &v, &w).unwrap();
        assert!(a.is_invertible());
        a.inverse().unwrap();
    }

    #[test]
    fn mismatched_middles_are_rejected() {
        let u = hom_profunctor(&delta_cat(1));
        let v = hom_profunctor(&delta_cat(2));
        assert!(matches!(tensor(&u, &v), Err(ProfError::CompositionMismatch)));
    }

    #[test]
    fn tensor_collapses_along_middle_actions() {
        // u = companion(pick 0), v = cojoint(pick 0): v⊗u over (•,•) has
        // pairs (y, x) with x ∈ Δ¹(0,d), y ∈ Δ¹(d,0); classes collapse
        // to the single pair (id₀, id₀).
        let f = super::super::companion::tests::pick_zero();
        let u = companion(&f);
        let v = cojoint(&f);
        let t = tensor(&u, &v).unwrap();
        assert_eq!(t.element_count(), 1);
        assert_eq!(orbit_count(&u, &v), 1);
    }
}
