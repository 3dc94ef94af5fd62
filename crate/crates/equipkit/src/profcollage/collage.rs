//! Collages: categories fibred over a standard simplex, and the exact
//! correspondence between 1-collages and profunctors.

use super::{ProfError, Profunctor};
use crate::fincat::{delta_cat, poset_mor, poset_ob, FinCat, FinFunctor};
use crate::id::Id;
use crate::util::compound_id;
use std::collections::{BTreeMap, BTreeSet};

/// An n-collage: a carrier category partitioned into full subcategories
/// C₀,…,C_n with no morphisms backwards, together with the structure
/// functor to Δⁿ. Back maps remember the original names of renamed
/// objects and morphisms so the profunctor round-trip is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Collage {
    carrier: FinCat,
    parts: Vec<FinCat>,
    structure: FinFunctor,
    back_ob: BTreeMap<Id, Id>,
    back_mor: BTreeMap<Id, Id>,
}

impl Collage {
    /// Validate the collage conditions and construct with identity back
    /// maps (for collages built by hand rather than from a profunctor).
    pub fn new(
        carrier: FinCat,
        parts: Vec<FinCat>,
        structure: FinFunctor,
    ) -> Result<Collage, ProfError> {
        check_collage(&carrier, &parts, &structure)?;
        let back_ob = carrier.objects().iter().map(|o| (o.clone(), o.clone())).collect();
        let back_mor = carrier.morphisms().iter().map(|m| (m.clone(), m.clone())).collect();
        Ok(Collage { carrier, parts, structure, back_ob, back_mor })
    }

    /// Build the parts and structure functor from an object partition.
    pub fn from_partition(carrier: FinCat, ob_parts: &[Vec<Id>]) -> Result<Collage, ProfError> {
        let parts = ob_parts
            .iter()
            .map(|obs| full_subcategory(&carrier, obs))
            .collect::<Result<Vec<_>, _>>()?;
        let structure = partition_structure(&carrier, ob_parts)?;
        Collage::new(carrier, parts, structure)
    }

    pub fn carrier(&self) -> &FinCat {
        &self.carrier
    }

    pub fn parts(&self) -> &[FinCat] {
        &self.parts
    }

    pub fn structure(&self) -> &FinFunctor {
        &self.structure
    }

    pub fn dimension(&self) -> usize {
        self.parts.len() - 1
    }

    /// Which part a carrier object lies in.
    pub fn part_of(&self, x: &Id) -> usize {
        self.parts
            .iter()
            .position(|p| p.has_object(x))
            .expect("collage objects are partitioned")
    }

    pub(crate) fn back_ob(&self) -> &BTreeMap<Id, Id> {
        &self.back_ob
    }

    pub(crate) fn back_mor(&self) -> &BTreeMap<Id, Id> {
        &self.back_mor
    }
}

fn full_subcategory(carrier: &FinCat, obs: &[Id]) -> Result<FinCat, ProfError> {
    let keep: BTreeSet<&Id> = obs.iter().collect();
    for o in &keep {
        if !carrier.has_object(o) {
            return Err(ProfError::NotACollage(format!("unknown object {o} in partition")));
        }
    }
    let morphisms: Vec<(Id, Id, Id)> = carrier
        .morphisms()
        .iter()
        .filter(|m| keep.contains(carrier.src(m)) && keep.contains(carrier.dst(m)))
        .map(|m| (m.clone(), carrier.src(m).clone(), carrier.dst(m).clone()))
        .collect();
    let kept_mor: BTreeSet<&Id> = morphisms.iter().map(|(m, _, _)| m).collect();
    let identities = obs
        .iter()
        .map(|o| (o.clone(), carrier.identity(o).clone()))
        .collect();
    let table = carrier
        .composable_pairs()
        .filter(|(g, f)| {
            kept_mor.contains(g) && kept_mor.contains(f)
        })
        .map(|(g, f)| ((g.clone(), f.clone()), carrier.compose(g, f).clone()))
        .collect();
    FinCat::new(obs.to_vec(), morphisms, identities, table).map_err(ProfError::Cat)
}

fn partition_structure(carrier: &FinCat, ob_parts: &[Vec<Id>]) -> Result<FinFunctor, ProfError> {
    let n = ob_parts.len() - 1;
    let mut level: BTreeMap<&Id, usize> = BTreeMap::new();
    for (i, obs) in ob_parts.iter().enumerate() {
        for o in obs {
            if level.insert(o, i).is_some() {
                return Err(ProfError::NotACollage(format!("object {o} in two parts")));
            }
        }
    }
    let ob: BTreeMap<Id, Id> = carrier
        .objects()
        .iter()
        .map(|o| {
            let i = level
                .get(o)
                .ok_or_else(|| ProfError::NotACollage(format!("object {o} not in any part")))?;
            Ok((o.clone(), poset_ob(*i)))
        })
        .collect::<Result<_, ProfError>>()?;
    let mor: BTreeMap<Id, Id> = carrier
        .morphisms()
        .iter()
        .map(|m| {
            let (i, j) = (level[carrier.src(m)], level[carrier.dst(m)]);
            if i > j {
                return Err(ProfError::NotACollage(format!(
                    "morphism {m} runs from part {i} back to part {j}"
                )));
            }
            Ok((m.clone(), poset_mor(i, j)))
        })
        .collect::<Result<_, ProfError>>()?;
    FinFunctor::new(carrier.clone(), delta_cat(n), ob, mor).map_err(ProfError::Cat)
}

fn check_collage(
    carrier: &FinCat,
    parts: &[FinCat],
    structure: &FinFunctor,
) -> Result<(), ProfError> {
    if parts.is_empty() {
        return Err(ProfError::NotACollage("a collage needs at least one part".into()));
    }
    // Objects partition.
    let mut seen: BTreeMap<&Id, usize> = BTreeMap::new();
    for (i, p) in parts.iter().enumerate() {
        for o in p.objects() {
            if !carrier.has_object(o) {
                return Err(ProfError::NotACollage(format!("part object {o} not in carrier")));
            }
            if seen.insert(o, i).is_some() {
                return Err(ProfError::NotACollage(format!("object {o} in two parts")));
            }
        }
    }
    for o in carrier.objects() {
        if !seen.contains_key(o) {
            return Err(ProfError::NotACollage(format!("object {o} not in any part")));
        }
    }
    // Parts are the full subcategories on their objects.
    for (i, p) in parts.iter().enumerate() {
        let expected = full_subcategory(carrier, p.objects())?;
        if p != &expected {
            return Err(ProfError::NotACollage(format!(
                "part {i} is not the full subcategory on its objects"
            )));
        }
    }
    // No morphisms run backwards.
    for m in carrier.morphisms() {
        let (i, j) = (seen[carrier.src(m)], seen[carrier.dst(m)]);
        if i > j {
            return Err(ProfError::NotACollage(format!(
                "morphism {m} runs from part {i} back to part {j}"
            )));
        }
    }
    // Structure functor matches the partition.
    let n = parts.len() - 1;
    if structure.src_cat() != carrier || structure.dst_cat() != &delta_cat(n) {
        return Err(ProfError::NotACollage(
            "structure functor does not run from the carrier to the simplex".into(),
        ));
    }
    for o in carrier.objects() {
        if structure.ob(o) != &poset_ob(seen[o]) {
            return Err(ProfError::NotACollage(format!(
                "structure functor disagrees with the partition at {o}"
            )));
        }
    }
    Ok(())
}

/// The collage of a profunctor: the 1-collage whose cross hom-sets are
/// the element sets of u, with composition given by the actions. Ids
/// are kept when the two boundary categories do not clash and renamed
/// canonically otherwise; the back maps record the renaming.
pub fn collage_of(u: &Profunctor) -> Collage {
    let (c, d) = (u.src_cat(), u.dst_cat());
    let ob_clash = c.objects().iter().any(|o| d.objects().contains(o));
    let mor_pool: BTreeSet<&Id> = c.morphisms().iter().chain(d.morphisms()).collect();
    let mor_clash = c.morphisms().len() + d.morphisms().len() != mor_pool.len()
        || u.all_elements().any(|e| mor_pool.contains(e));
    let rename = ob_clash || mor_clash;
    let tag = |side: &str, x: &Id| -> Id {
        if rename {
            compound_id("col", &[side.to_string(), x.to_string()])
        } else {
            x.clone()
        }
    };

    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    let mut table = BTreeMap::new();
    let mut back_ob = BTreeMap::new();
    let mut back_mor = BTreeMap::new();
    for (side, cat) in [("l", c), ("r", d)] {
        for o in cat.objects() {
            objects.push(tag(side, o));
            back_ob.insert(tag(side, o), o.clone());
            identities.insert(tag(side, o), tag(side, cat.identity(o)));
        }
        for m in cat.morphisms() {
            morphisms.push((tag(side, m), tag(side, cat.src(m)), tag(side, cat.dst(m))));
            back_mor.insert(tag(side, m), m.clone());
        }
        for (g, f) in cat.composable_pairs() {
            table.insert((tag(side, g), tag(side, f)), tag(side, cat.compose(g, f)));
        }
    }
    for (pair, elts) in u.pairs() {
        for x in elts {
            let e = tag("x", x);
            morphisms.push((e.clone(), tag("l", &pair.0), tag("r", &pair.1)));
            back_mor.insert(e.clone(), x.clone());
            for f in c.morphisms() {
                if c.dst(f) == &pair.0 {
                    table.insert((e.clone(), tag("l", f)), tag("x", u.lact(f, x)));
                }
            }
            for g in d.morphisms() {
                if d.src(g) == &pair.1 {
                    table.insert((tag("r", g), e.clone()), tag("x", u.ract(g, x)));
                }
            }
        }
    }
    let carrier = FinCat::new(objects, morphisms, identities, table)
        .expect("profunctor laws make the collage a category");
    let left_obs: Vec<Id> = c.objects().iter().map(|o| tag("l", o)).collect();
    let right_obs: Vec<Id> = d.objects().iter().map(|o| tag("r", o)).collect();
    let parts = vec![
        full_subcategory(&carrier, &left_obs).expect("left part is full"),
        full_subcategory(&carrier, &right_obs).expect("right part is full"),
    ];
    let structure = partition_structure(&carrier, &[left_obs, right_obs])
        .expect("collage partition is forward-directed");
    Collage { carrier, parts, structure, back_ob, back_mor }
}

/// Read a profunctor off a 1-collage: element sets are the cross
/// hom-sets, actions are composition in the carrier. Names are restored
/// through the collage's back maps.
pub fn profunctor_of(u: &Collage) -> Result<Profunctor, ProfError> {
    if u.dimension() != 1 {
        return Err(ProfError::NotACollage(format!(
            "profunctor_of needs a 1-collage, got dimension {}",
            u.dimension()
        )));
    }
    let carrier = u.carrier();
    let back_o = |x: &Id| u.back_ob()[x].clone();
    let back_m = |m: &Id| u.back_mor()[m].clone();
    let rebuild = |part: &FinCat| -> Result<FinCat, ProfError> {
        let objects = part.objects().iter().map(&back_o).collect();
        let morphisms = part
            .morphisms()
            .iter()
            .map(|m| (back_m(m), back_o(part.src(m)), back_o(part.dst(m))))
            .collect();
        let identities = part
            .objects()
            .iter()
            .map(|o| (back_o(o), back_m(part.identity(o))))
            .collect();
        let table = part
            .composable_pairs()
            .map(|(g, f)| ((back_m(g), back_m(f)), back_m(part.compose(g, f))))
            .collect();
        FinCat::new(objects, morphisms, identities, table).map_err(ProfError::Cat)
    };
    let c = rebuild(&u.parts()[0])?;
    let d = rebuild(&u.parts()[1])?;
    let left: BTreeSet<&Id> = u.parts()[0].objects().iter().collect();
    let right: BTreeSet<&Id> = u.parts()[1].objects().iter().collect();
    let mut elements: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
    let mut lact = BTreeMap::new();
    let mut ract = BTreeMap::new();
    for e in carrier.morphisms() {
        let (s, t) = (carrier.src(e), carrier.dst(e));
        if !(left.contains(s) && right.contains(t)) {
            continue;
        }
        elements
            .entry((back_o(s), back_o(t)))
            .or_default()
            .push(back_m(e));
        for f in u.parts()[0].morphisms() {
            if carrier.dst(f) == s {
                lact.insert((back_m(f), back_m(e)), back_m(carrier.compose(e, f)));
            }
        }
        for g in u.parts()[1].morphisms() {
            if carrier.src(g) == t {
                ract.insert((back_m(g), back_m(e)), back_m(carrier.compose(g, e)));
            }
        }
    }
    Profunctor::new(c, d, elements, lact, ract)
}

#[cfg(test)]
mod tests {
    use super::super::companion::{companion, tests::pick_zero};
    use super::super::hom_profunctor;
    use super::super::tests::point_profunctor;
    use super::*;
    use crate::fincat::{cat_iso, grothendieck, CatDiagram};

    #[test]
    fn collage_of_the_point_profunctor_is_the_arrow() {
        let u = point_profunctor();
        let col = collage_of(&u);
        assert_eq!(col.carrier().objects().len(), 2);
        assert_eq!(col.carrier().morphisms().len(), 3);
        assert!(cat_iso(col.carrier(), &delta_cat(1), 10_000).unwrap().is_some());
        assert_eq!(col.dimension(), 1);
    }

    #[test]
    fn collage_of_the_empty_profunctor_is_a_disjoint_union() {
        let c = delta_cat(1);
        let d = delta_cat(0);
        let u = Profunctor::new(c, d, BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
            .unwrap();
        let col = collage_of(&u);
        assert_eq!(col.carrier().objects().len(), 3);
        assert_eq!(col.carrier().morphisms().len(), 4);
    }

    #[test]
    fn collage_of_hom_of_the_point_is_the_arrow() {
        let u = hom_profunctor(&delta_cat(0));
        let col = collage_of(&u);
        assert!(cat_iso(col.carrier(), &delta_cat(1), 10_000).unwrap().is_some());
    }

    #[test]
    fn profunctor_round_trip_with_renaming() {
        // companion(pick 0) runs Δ⁰ ⇸ Δ¹: the boundary categories share
        // the object o0, forcing the renamed path.
        for u in [companion(&pick_zero()), point_profunctor()] {
            let col = collage_of(&u);
            assert_eq!(profunctor_of(&col).unwrap(), u);
        }
    }

    #[test]
    fn profunctor_round_trip_without_renaming() {
        let c = delta_cat(0);
        let d = FinCat::new(
            vec![Id::new("z")],
            vec![(Id::new("uz"), Id::new("z"), Id::new("z"))],
            [(Id::new("z"), Id::new("uz"))].into(),
            [((Id::new("uz"), Id::new("uz")), Id::new("uz"))].into(),
        )
        .unwrap();
        let e = Id::new("elt");
        let u = Profunctor::new(
            c,
            d,
            [((poset_ob(0), Id::new("z")), vec![e.clone()])].into(),
            [((poset_mor(0, 0), e.clone()), e.clone())].into(),
            [((Id::new("uz"), e.clone()), e.clone())].into(),
        )
        .unwrap();
        let col = collage_of(&u);
        // Ids kept as-is.
        assert!(col.carrier().has_morphism(&e));
        assert_eq!(profunctor_of(&col).unwrap(), u);
    }

    #[test]
    fn collage_round_trip_and_idempotence() {
        // Hand-built collage: Δ¹ partitioned into its two vertices.
        let u = Collage::from_partition(delta_cat(1), &[vec![poset_ob(0)], vec![poset_ob(1)]])
            .unwrap();
        let back = collage_of(&profunctor_of(&u).unwrap());
        assert_eq!(back, u);
        // Renamed collages normalize to themselves too.
        let n = collage_of(&point_profunctor());
        assert_eq!(collage_of(&profunctor_of(&n).unwrap()), n);
    }

    #[test]
    fn backwards_partitions_are_rejected() {
        let err =
            Collage::from_partition(delta_cat(1), &[vec![poset_ob(1)], vec![poset_ob(0)]])
                .unwrap_err();
        assert!(matches!(err, ProfError::NotACollage(_)));
    }

    #[test]
    fn interleaved_partitions_are_rejected() {
        let err = Collage::from_partition(
            delta_cat(2),
            &[vec![poset_ob(0), poset_ob(2)], vec![poset_ob(1)]],
        )
        .unwrap_err();
        assert!(matches!(err, ProfError::NotACollage(_)));
    }

    #[test]
    fn non_full_parts_are_rejected() {
        // A 0-collage whose single part drops the arrow of Δ¹.
        let arrow = delta_cat(1);
        let part = FinCat::new(
            vec![poset_ob(0), poset_ob(1)],
            vec![
                (poset_mor(0, 0), poset_ob(0), poset_ob(0)),
                (poset_mor(1, 1), poset_ob(1), poset_ob(1)),
            ],
            [(poset_ob(0), poset_mor(0, 0)), (poset_ob(1), poset_mor(1, 1))].into(),
            [
                ((poset_mor(0, 0), poset_mor(0, 0)), poset_mor(0, 0)),
                ((poset_mor(1, 1), poset_mor(1, 1)), poset_mor(1, 1)),
            ]
            .into(),
        )
        .unwrap();
        let structure = FinFunctor::new(
            arrow.clone(),
            delta_cat(0),
            arrow.objects().iter().map(|o| (o.clone(), poset_ob(0))).collect(),
            arrow.morphisms().iter().map(|m| (m.clone(), poset_mor(0, 0))).collect(),
        )
        .unwrap();
        let err = Collage::new(arrow, vec![part], structure).unwrap_err();
        assert!(matches!(err, ProfError::NotACollage(_)));
    }

    #[test]
    fn collage_of_companion_is_the_mapping_cylinder_category() {
        let f = pick_zero();
        let col = collage_of(&companion(&f));
        let nodes = [(poset_ob(0), delta_cat(0)), (poset_ob(1), delta_cat(1))].into();
        let edges = [(poset_mor(0, 1), f)].into();
        let d = CatDiagram::new(delta_cat(1), nodes, edges).unwrap();
        let g = grothendieck(&d).unwrap();
        assert!(cat_iso(col.carrier(), &g.total, 100_000).unwrap().is_some());
    }
}
