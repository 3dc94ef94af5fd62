//! Companions and cojoints of functors, and restriction of a profunctor
//! along a niche (the equipment structure of Prof).

use super::cells::{enumerate_cells, ProfCell};
use super::{ProfError, Profunctor};
use crate::fincat::FinFunctor;
use crate::id::Id;
use crate::util::compound_id;
use std::collections::BTreeMap;

/// The id of the companion element witnessing g: Fc → d at the pair
/// (c,d). Part of the companion's contract: the hom profunctor's
/// elements are recovered through this naming.
pub(crate) fn companion_element(c: &Id, g: &Id) -> Id {
    compound_id("cp", &[c.to_string(), g.to_string()])
}

/// The companion F*: C ⇸ D of F: C → D, with F*(c,d) = D(Fc,d).
/// The element witnessing g: Fc → d at the pair (c,d) is named (c,g).
pub fn companion(f: &FinFunctor) -> Profunctor {
    let (c, d) = (f.src_cat(), f.dst_cat());
    let name = |x: &Id, g: &Id| companion_element(x, g);
    let mut elements: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
    let mut lact = BTreeMap::new();
    let mut ract = BTreeMap::new();
    for x in c.objects() {
        for g in d.morphisms() {
            if d.src(g) != f.ob(x) {
                continue;
            }
            let e = name(x, g);
            elements
                .entry((x.clone(), d.dst(g).clone()))
                .or_default()
                .push(e.clone());
            for h in c.morphisms() {
                if c.dst(h) == x {
                    let acted = name(c.src(h), d.compose(g, f.mor(h)));
                    lact.insert((h.clone(), e.clone()), acted);
                }
            }
            for k in d.morphisms() {
                if d.src(k) == d.dst(g) {
                    let acted = name(x, d.compose(k, g));
                    ract.insert((k.clone(), e.clone()), acted);
                }
            }
        }
    }
    Profunctor::new(c.clone(), d.clone(), elements, lact, ract)
        .expect("companion data always satisfies the action laws")
}

/// The cojoint F✶: D ⇸ C of F: C → D, with F✶(d,c) = D(d,Fc).
/// The element witnessing g: d → Fc at (d,c) is named (g,c).
pub fn cojoint(f: &FinFunctor) -> Profunctor {
    let (c, d) = (f.src_cat(), f.dst_cat());
    let name = |g: &Id, x: &Id| compound_id("cj", &[g.to_string(), x.to_string()]);
    let mut elements: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
    let mut lact = BTreeMap::new();
    let mut ract = BTreeMap::new();
    for x in c.objects() {
        for g in d.morphisms() {
            if d.dst(g) != f.ob(x) {
                continue;
            }
            let e = name(g, x);
            elements
                .entry((d.src(g).clone(), x.clone()))
                .or_default()
                .push(e.clone());
            for k in d.morphisms() {
                if d.dst(k) == d.src(g) {
                    let acted = name(d.compose(g, k), x);
                    lact.insert((k.clone(), e.clone()), acted);
                }
            }
            for h in c.morphisms() {
                if c.src(h) == x {
                    let acted = name(d.compose(f.mor(h), g), c.dst(h));
                    ract.insert((h.clone(), e.clone()), acted);
                }
            }
        }
    }
    Profunctor::new(d.clone(), c.clone(), elements, lact, ract)
        .expect("cojoint data always satisfies the action laws")
}

/// Restrict u: C ⇸ D along F: A → C and G: B → D, giving
/// u^{F,G}(a,b) = u(Fa,Gb) together with the universal cell into u.
pub fn niche_fill(
    u: &Profunctor,
    f: &FinFunctor,
    g: &FinFunctor,
) -> Result<(Profunctor, ProfCell), ProfError> {
    if f.dst_cat() != u.src_cat() || g.dst_cat() != u.dst_cat() {
        return Err(ProfError::Incompatible(
            "niche_fill: functors do not land in the profunctor's boundary".into(),
        ));
    }
    let (a_cat, b_cat) = (f.src_cat(), g.src_cat());
    let name =
        |a: &Id, b: &Id, x: &Id| compound_id("nf", &[a.to_string(), b.to_string(), x.to_string()]);
    let mut elements: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
    let mut lact = BTreeMap::new();
    let mut ract = BTreeMap::new();
    let mut components = BTreeMap::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            for x in u.at(f.ob(a), g.ob(b)) {
                let e = name(a, b, x);
                elements.entry((a.clone(), b.clone())).or_default().push(e.clone());
                components.insert(e.clone(), x.clone());
                for h in a_cat.morphisms() {
                    if a_cat.dst(h) == a {
                        let acted = name(a_cat.src(h), b, u.lact(f.mor(h), x));
                        lact.insert((h.clone(), e.clone()), acted);
                    }
                }
                for k in b_cat.morphisms() {
                    if b_cat.src(k) == b {
                        let acted = name(a, b_cat.dst(k), u.ract(g.mor(k), x));
                        ract.insert((k.clone(), e.clone()), acted);
                    }
                }
            }
        }
    }
    let restricted =
        Profunctor::new(a_cat.clone(), b_cat.clone(), elements, lact, ract)?;
    let cell = ProfCell::new(restricted.clone(), u.clone(), f.clone(), g.clone(), components)?;
    Ok((restricted, cell))
}

/// Check the universal property of the niche filler on one test shape:
/// every cell ψ: w ⇒ u over the boundary (F∘L, G∘R) must factor through
/// the universal cell by exactly one cell w ⇒ u^{F,G} over (L, R).
/// All candidate cells are enumerated exhaustively.
pub fn verify_niche_universal(
    u: &Profunctor,
    f: &FinFunctor,
    g: &FinFunctor,
    w: &Profunctor,
    l: &FinFunctor,
    r: &FinFunctor,
    budget: u64,
) -> Result<bool, ProfError> {
    let (restricted, fill) = niche_fill(u, f, g)?;
    let fl = FinFunctor::compose(f, l)?;
    let gr = FinFunctor::compose(g, r)?;
    let outer = enumerate_cells(w, u, &fl, &gr, budget)?;
    let inner = enumerate_cells(w, &restricted, l, r, budget)?;
    for psi in &outer {
        let mut hits = 0usize;
        for cand in &inner {
            let through = super::cells::cell_compose_vertical(&fill, cand)?;
            if &through == psi {
                hits += 1;
            }
        }
        if hits != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::super::hom_profunctor;
    use super::*;
    use crate::fincat::{delta_cat, poset_mor, poset_ob, FinCat};

    pub(crate) fn pick_zero() -> FinFunctor {
        let pt = delta_cat(0);
        let arrow = delta_cat(1);
        FinFunctor::new(
            pt,
            arrow,
            [(poset_ob(0), poset_ob(0))].into(),
            [(poset_mor(0, 0), poset_mor(0, 0))].into(),
        )
        .unwrap()
    }

    #[test]
    fn companion_of_vertex_inclusion() {
        let u = companion(&pick_zero());
        assert_eq!(u.at(&poset_ob(0), &poset_ob(0)).len(), 1);
        assert_eq!(u.at(&poset_ob(0), &poset_ob(1)).len(), 1);
        assert_eq!(u.element_count(), 2);
        // The right action of the arrow carries the identity element to
        // the arrow element.
        let e0 = &u.at(&poset_ob(0), &poset_ob(0))[0];
        let e1 = &u.at(&poset_ob(0), &poset_ob(1))[0];
        assert_eq!(u.ract(&poset_mor(0, 1), e0), e1);
    }

    #[test]
    fn cojoint_of_vertex_inclusion() {
        let u = cojoint(&pick_zero());
        assert_eq!(u.at(&poset_ob(0), &poset_ob(0)).len(), 1);
        assert_eq!(u.at(&poset_ob(1), &poset_ob(0)).len(), 0);
        assert_eq!(u.element_count(), 1);
    }

    #[test]
    fn companion_of_identity_is_hom() {
        let c = delta_cat(2);
        assert_eq!(companion(&FinFunctor::identity(&c)), hom_profunctor(&c));
    }

    #[test]
    fn cojoint_matches_companion_on_indiscrete_target() {
        // Indiscrete category on two objects: exactly one morphism in
        // every hom-set.
        let (a, b) = (Id::new("a"), Id::new("b"));
        let (ua, ub, s, t) = (Id::new("ua"), Id::new("ub"), Id::new("s"), Id::new("t"));
        let ind = FinCat::new(
            vec![a.clone(), b.clone()],
            vec![
                (ua.clone(), a.clone(), a.clone()),
                (ub.clone(), b.clone(), b.clone()),
                (s.clone(), a.clone(), b.clone()),
                (t.clone(), b.clone(), a.clone()),
            ],
            [(a.clone(), ua.clone()), (b.clone(), ub.clone())].into(),
            [
                ((ua.clone(), ua.clone()), ua.clone()),
                ((ub.clone(), ub.clone()), ub.clone()),
                ((s.clone(), ua.clone()), s.clone()),
                ((ub.clone(), s.clone()), s.clone()),
                ((t.clone(), ub.clone()), t.clone()),
                ((ua.clone(), t.clone()), t.clone()),
                ((t.clone(), s.clone()), ua.clone()),
                ((s.clone(), t.clone()), ub.clone()),
            ]
            .into(),
        )
        .unwrap();
        let pt = delta_cat(0);
        let f = FinFunctor::new(
            pt,
            ind,
            [(poset_ob(0), a.clone())].into(),
            [(poset_mor(0, 0), ua.clone())].into(),
        )
        .unwrap();
        let cp = companion(&f);
        let cj = cojoint(&f);
        for x in cp.src_cat().objects() {
            for y in cp.dst_cat().objects() {
                assert_eq!(cp.at(x, y).len(), 1);
                assert_eq!(cj.at(y, x).len(), 1);
            }
        }
    }

    #[test]
    fn niche_restriction_of_hom_is_a_singleton() {
        let arrow = delta_cat(1);
        let u = hom_profunctor(&arrow);
        let f = pick_zero();
        let (restricted, cell) = niche_fill(&u, &f, &f).unwrap();
        assert_eq!(restricted.element_count(), 1);
        assert_eq!(restricted.src_cat(), &delta_cat(0));
        // The universal cell lands on the identity of 0.
        let e = restricted.all_elements().next().unwrap();
        let image = cell.component(e);
        assert_eq!(u.element_home(image), &(poset_ob(0), poset_ob(0)));
    }

    #[test]
    fn identity_niche_is_the_identity_restriction() {
        let u = hom_profunctor(&delta_cat(1));
        let idf = FinFunctor::identity(u.src_cat());
        let (restricted, _) = niche_fill(&u, &idf, &idf).unwrap();
        for (pair, elts) in u.pairs() {
            assert_eq!(restricted.at(&pair.0, &pair.1).len(), elts.len());
        }
    }

    #[test]
    fn niche_universality_on_a_small_shape() {
        let u = hom_profunctor(&delta_cat(1));
        let f = pick_zero();
        let w = super::super::tests::point_profunctor();
        let l = FinFunctor::identity(&delta_cat(0));
        assert!(verify_niche_universal(&u, &f, &f, &w, &l, &l, 100_000).unwrap());
    }
}
