//! Finite categories: validation, functors, nerves, Grothendieck
//! constructions, colimits, and isomorphism search.

pub mod colimit;
pub mod enumerate;
pub mod functor;
pub mod gro_index;
pub mod grothendieck;
pub mod iso;
pub mod nerve;
pub mod shapes;

pub use colimit::{cat_colimit, cat_colimit_graph, induced_functor, CatColimit, CatEdge, CatGlueDiagram};
pub use enumerate::enumerate_functors;
pub use functor::{CatDiagram, FinFunctor, NatTransformation};
pub use gro_index::{gro_of_index, GroIndex};
pub use grothendieck::{grothendieck, Grothendieck};
pub use iso::{cat_iso, CatIso};
pub use nerve::{nerve, truncated_nerve};
pub use shapes::{delta_cat, discrete_cat, poset_mor, poset_ob, pushout_cat, walking_idempotent};

use crate::id::Id;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FincatError {
    #[error("duplicate object id {0}")]
    DuplicateObject(Id),
    #[error("duplicate morphism id {0}")]
    DuplicateMorphism(Id),
    #[error("reference to unknown object {0}")]
    UnknownObject(Id),
    #[error("reference to unknown morphism {0}")]
    UnknownMorphism(Id),
    #[error("object {object} has no identity morphism")]
    MissingIdentity { object: Id },
    #[error("identity of {object} has endpoints other than {object}")]
    BadIdentityEndpoints { object: Id },
    #[error("composite of {g} after {f} is not defined")]
    MissingComposite { g: Id, f: Id },
    #[error("composition table entry for non-composable pair ({g}, {f})")]
    NotComposable { g: Id, f: Id },
    #[error("composite {composite} of ({g}, {f}) has wrong endpoints")]
    CompositeEndpoints { g: Id, f: Id, composite: Id },
    #[error("associativity fails on ({h}, {g}, {f})")]
    NonAssociative { h: Id, g: Id, f: Id },
    #[error("unit law fails: composing {morphism} with identity {unit}")]
    BadUnit { unit: Id, morphism: Id },
    #[error("functor data is not functorial: {0}")]
    NotFunctorial(String),
    #[error("naturality square fails at {morphism}")]
    NotNatural { morphism: Id },
    #[error("nerve generation passed dimension bound {dim_bound} with chains remaining")]
    NerveUnbounded { dim_bound: usize },
    #[error("isomorphism search exceeded budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("congruence closure exceeded budget of {0} words")]
    ClosureBudgetExceeded(u64),
    #[error("{0}")]
    Incompatible(String),
}

/// A finite category with an explicit composition table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCat {
    objects: Vec<Id>,
    morphisms: Vec<Id>,
    src: BTreeMap<Id, Id>,
    dst: BTreeMap<Id, Id>,
    identities: BTreeMap<Id, Id>,
    table: BTreeMap<(Id, Id), Id>,
}

impl FinCat {
    /// Validate the axioms and construct. `morphisms` lists
    /// (id, src, dst) triples including identities; `table` maps (g, f)
    /// with dst(f) = src(g) to g∘f.
    pub fn new(
        objects: Vec<Id>,
        morphisms: Vec<(Id, Id, Id)>,
        identities: BTreeMap<Id, Id>,
        table: BTreeMap<(Id, Id), Id>,
    ) -> Result<FinCat, FincatError> {
        let mut objs = objects;
        objs.sort();
        let mut seen = BTreeSet::new();
        for o in &objs {
            if !seen.insert(o.clone()) {
                return Err(FincatError::DuplicateObject(o.clone()));
            }
        }
        let mut mors = Vec::new();
        let mut src = BTreeMap::new();
        let mut dst = BTreeMap::new();
        for (m, s, d) in morphisms {
            if src.contains_key(&m) {
                return Err(FincatError::DuplicateMorphism(m));
            }
            if !seen.contains(&s) {
                return Err(FincatError::UnknownObject(s));
            }
            if !seen.contains(&d) {
                return Err(FincatError::UnknownObject(d));
            }
            src.insert(m.clone(), s);
            dst.insert(m.clone(), d);
            mors.push(m);
        }
        mors.sort();
        for o in &objs {
            let unit = identities
                .get(o)
                .ok_or_else(|| FincatError::MissingIdentity { object: o.clone() })?;
            if !src.contains_key(unit) {
                return Err(FincatError::UnknownMorphism(unit.clone()));
            }
            if &src[unit] != o || &dst[unit] != o {
                return Err(FincatError::BadIdentityEndpoints { object: o.clone() });
            }
        }
        for o in identities.keys() {
            if !seen.contains(o) {
                return Err(FincatError::UnknownObject(o.clone()));
            }
        }
        for ((g, f), gf) in &table {
            for m in [g, f, gf] {
                if !src.contains_key(m) {
                    return Err(FincatError::UnknownMorphism(m.clone()));
                }
            }
            if dst[f] != src[g] {
                return Err(FincatError::NotComposable { g: g.clone(), f: f.clone() });
            }
            if src[gf] != src[f] || dst[gf] != dst[g] {
                return Err(FincatError::CompositeEndpoints {
                    g: g.clone(),
                    f: f.clone(),
                    composite: gf.clone(),
                });
            }
        }
        let cat = FinCat { objects: objs, morphisms: mors, src, dst, identities, table };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<(), FincatError> {
        // Totality of composition.
        for f in &self.morphisms {
            for g in &self.morphisms {
                if self.dst[f] == self.src[g]
                    && !self.table.contains_key(&(g.clone(), f.clone()))
                {
                    return Err(FincatError::MissingComposite { g: g.clone(), f: f.clone() });
                }
            }
        }
        // Unit laws.
        for f in &self.morphisms {
            let lu = &self.identities[&self.dst[f]];
            if &self.table[&(lu.clone(), f.clone())] != f {
                return Err(FincatError::BadUnit { unit: lu.clone(), morphism: f.clone() });
            }
            let ru = &self.identities[&self.src[f]];
            if &self.table[&(f.clone(), ru.clone())] != f {
                return Err(FincatError::BadUnit { unit: ru.clone(), morphism: f.clone() });
            }
        }
        // Associativity.
        for f in &self.morphisms {
            for g in &self.morphisms {
                if self.dst[f] != self.src[g] {
                    continue;
                }
                for h in &self.morphisms {
                    if self.dst[g] != self.src[h] {
                        continue;
                    }
                    let gf = &self.table[&(g.clone(), f.clone())];
                    let hg = &self.table[&(h.clone(), g.clone())];
                    if self.table[&(h.clone(), gf.clone())]
                        != self.table[&(hg.clone(), f.clone())]
                    {
                        return Err(FincatError::NonAssociative {
                            h: h.clone(),
                            g: g.clone(),
                            f: f.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[Id] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Id] {
        &self.morphisms
    }

    pub fn has_object(&self, o: &Id) -> bool {
        self.identities.contains_key(o)
    }

    pub fn has_morphism(&self, m: &Id) -> bool {
        self.src.contains_key(m)
    }

    pub fn src(&self, m: &Id) -> &Id {
        &self.src[m]
    }

    pub fn dst(&self, m: &Id) -> &Id {
        &self.dst[m]
    }

    pub fn identity(&self, o: &Id) -> &Id {
        &self.identities[o]
    }

    pub fn is_identity(&self, m: &Id) -> bool {
        self.identities.values().any(|u| u == m)
    }

    /// g ∘ f (f first). Panics on non-composable input.
    pub fn compose(&self, g: &Id, f: &Id) -> &Id {
        &self.table[&(g.clone(), f.clone())]
    }

    pub fn try_compose(&self, g: &Id, f: &Id) -> Option<&Id> {
        self.table.get(&(g.clone(), f.clone()))
    }

    pub fn hom(&self, a: &Id, b: &Id) -> Vec<Id> {
        self.morphisms
            .iter()
            .filter(|m| &self.src[*m] == a && &self.dst[*m] == b)
            .cloned()
            .collect()
    }

    pub fn non_identities(&self) -> Vec<Id> {
        self.morphisms
            .iter()
            .filter(|m| !self.is_identity(m))
            .cloned()
            .collect()
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (&Id, &Id)> {
        self.table.keys().map(|(g, f)| (g, f))
    }

    /// The full subcategory on a set of objects.
    pub fn full_subcategory(&self, keep: &BTreeSet<Id>) -> Result<FinCat, FincatError> {
        for o in keep {
            if !self.has_object(o) {
                return Err(FincatError::UnknownObject(o.clone()));
            }
        }
        let objects: Vec<Id> = self.objects.iter().filter(|o| keep.contains(o)).cloned().collect();
        let kept_mor =
            |m: &Id| keep.contains(&self.src[m]) && keep.contains(&self.dst[m]);
        let morphisms = self
            .morphisms
            .iter()
            .filter(|m| kept_mor(m))
            .map(|m| (m.clone(), self.src[m].clone(), self.dst[m].clone()))
            .collect();
        let identities = self
            .identities
            .iter()
            .filter(|(o, _)| keep.contains(*o))
            .map(|(o, u)| (o.clone(), u.clone()))
            .collect();
        let table = self
            .table
            .iter()
            .filter(|((g, f), _)| kept_mor(g) && kept_mor(f))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        FinCat::new(objects, morphisms, identities, table)
    }

    /// The opposite category: same ids, endpoints swapped.
    pub fn opposite(&self) -> FinCat {
        let table = self
            .table
            .iter()
            .map(|((g, f), gf)| ((f.clone(), g.clone()), gf.clone()))
            .collect();
        FinCat {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            src: self.dst.clone(),
            dst: self.src.clone(),
            identities: self.identities.clone(),
            table,
        }
    }

    /// Binary product of categories; ids are paired componentwise.
    pub fn product(&self, other: &FinCat) -> FinCat {
        let oid = |a: &Id, b: &Id| crate::util::compound_id("pob", &[a.to_string(), b.to_string()]);
        let mid = |a: &Id, b: &Id| crate::util::compound_id("pmor", &[a.to_string(), b.to_string()]);
        let objects: Vec<Id> = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| oid(a, b)))
            .collect();
        let mut morphisms = Vec::new();
        let mut identities = BTreeMap::new();
        for a in &self.morphisms {
            for b in &other.morphisms {
                morphisms.push((
                    mid(a, b),
                    oid(&self.src[a], &other.src[b]),
                    oid(&self.dst[a], &other.dst[b]),
                ));
            }
        }
        for a in &self.objects {
            for b in &other.objects {
                identities.insert(oid(a, b), mid(self.identity(a), other.identity(b)));
            }
        }
        let mut table = BTreeMap::new();
        for ((g1, f1), c1) in &self.table {
            for ((g2, f2), c2) in &other.table {
                table.insert((mid(g1, g2), mid(f1, f2)), mid(c1, c2));
            }
        }
        FinCat::new(objects, morphisms, identities, table)
            .expect("product of valid categories is valid")
    }
}
