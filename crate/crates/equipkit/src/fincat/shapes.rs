//! Stock index categories.

use super::FinCat;
use crate::id::Id;
use std::collections::BTreeMap;

/// Object id `o{i}` of a poset-shaped category.
pub fn poset_ob(i: usize) -> Id {
    Id::new(format!("o{i}"))
}

/// Morphism id `m{i}.{j}` for the unique arrow i → j.
pub fn poset_mor(i: usize, j: usize) -> Id {
    Id::new(format!("m{i}.{j}"))
}

/// The poset [n] as a category: objects o0..on, one arrow i → j per i ≤ j.
pub fn delta_cat(n: usize) -> FinCat {
    let objects: Vec<Id> = (0..=n).map(poset_ob).collect();
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    for i in 0..=n {
        identities.insert(poset_ob(i), poset_mor(i, i));
        for j in i..=n {
            morphisms.push((poset_mor(i, j), poset_ob(i), poset_ob(j)));
        }
    }
    let mut table = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                table.insert((poset_mor(j, k), poset_mor(i, j)), poset_mor(i, k));
            }
        }
    }
    FinCat::new(objects, morphisms, identities, table).expect("poset category")
}

/// The walking span 1 ← 0 → 2.
pub fn pushout_cat() -> FinCat {
    let objects: Vec<Id> = (0..=2).map(poset_ob).collect();
    let morphisms = vec![
        (poset_mor(0, 0), poset_ob(0), poset_ob(0)),
        (poset_mor(1, 1), poset_ob(1), poset_ob(1)),
        (poset_mor(2, 2), poset_ob(2), poset_ob(2)),
        (poset_mor(0, 1), poset_ob(0), poset_ob(1)),
        (poset_mor(0, 2), poset_ob(0), poset_ob(2)),
    ];
    let identities: BTreeMap<Id, Id> =
        (0..=2).map(|i| (poset_ob(i), poset_mor(i, i))).collect();
    let mut table = BTreeMap::new();
    for i in 0..=2 {
        table.insert((poset_mor(i, i), poset_mor(i, i)), poset_mor(i, i));
    }
    for j in 1..=2 {
        table.insert((poset_mor(j, j), poset_mor(0, j)), poset_mor(0, j));
        table.insert((poset_mor(0, j), poset_mor(0, 0)), poset_mor(0, j));
    }
    FinCat::new(objects, morphisms, identities, table).expect("span category")
}

/// n isolated objects.
pub fn discrete_cat(n: usize) -> FinCat {
    let objects: Vec<Id> = (0..n).map(poset_ob).collect();
    let morphisms: Vec<(Id, Id, Id)> =
        (0..n).map(|i| (poset_mor(i, i), poset_ob(i), poset_ob(i))).collect();
    let identities = (0..n).map(|i| (poset_ob(i), poset_mor(i, i))).collect();
    let table = (0..n)
        .map(|i| ((poset_mor(i, i), poset_mor(i, i)), poset_mor(i, i)))
        .collect();
    FinCat::new(objects, morphisms, identities, table).expect("discrete category")
}

/// One object with a non-identity idempotent e∘e = e. Its nerve is
/// unbounded, which exercises the nerve dimension guard.
pub fn walking_idempotent() -> FinCat {
    let o = poset_ob(0);
    let u = poset_mor(0, 0);
    let e = Id::new("e");
    let morphisms = vec![
        (u.clone(), o.clone(), o.clone()),
        (e.clone(), o.clone(), o.clone()),
    ];
    let table: BTreeMap<(Id, Id), Id> = [
        ((u.clone(), u.clone()), u.clone()),
        ((u.clone(), e.clone()), e.clone()),
        ((e.clone(), u.clone()), e.clone()),
        ((e.clone(), e.clone()), e.clone()),
    ]
    .into();
    FinCat::new(vec![o.clone()], morphisms, [(o, u)].into(), table)
        .expect("walking idempotent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_validate() {
        delta_cat(3);
        pushout_cat();
        discrete_cat(4);
        walking_idempotent();
    }

    #[test]
    fn pushout_cat_has_two_non_identities() {
        let c = pushout_cat();
        assert_eq!(c.non_identities().len(), 2);
        assert_eq!(c.hom(&poset_ob(1), &poset_ob(2)).len(), 0);
    }
}
