//! Profunctors between finite categories, their collages, and the
//! equipment-level operations built on them: the coequalizer tensor,
//! companions and cojoints, niche fillers, 2-cells, and double colimits
//! of horizontal diagrams.

mod cells;
mod collage;
mod companion;
mod dcolim;
mod tensor;

pub use cells::{
    associator, cell_compose_horizontal, cell_compose_vertical, enumerate_cells,
    identity_cell, left_unitor, right_unitor, ProfCell,
};
pub use collage::{collage_of, profunctor_of, Collage};
pub use companion::{cojoint, companion, niche_fill, verify_niche_universal};
pub use dcolim::{
    companion_diagram, dcolim_prof, verify_universal, ProfCocone, ProfDcolim, ProfDiagram,
};
pub use tensor::{tensor, tensor_with_witness, TensorWitness};

use crate::fincat::{FinCat, FinFunctor, FincatError};
use crate::id::Id;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProfError {
    #[error("element set indexed by unknown object pair ({c}, {d})")]
    UnknownPairObject { c: Id, d: Id },
    #[error("element id {0} appears in more than one element set")]
    DuplicateElement(Id),
    #[error("unknown element {0}")]
    UnknownElement(Id),
    #[error("no action of {morphism} on {element}")]
    MissingAction { morphism: Id, element: Id },
    #[error("action of {morphism} on {element} is not composable")]
    SpuriousAction { morphism: Id, element: Id },
    #[error("action of {morphism} sends {element} outside its element set")]
    WrongActionTarget { morphism: Id, element: Id },
    #[error("identity action moves {element}")]
    UnitActionChanges { element: Id },
    #[error("actions of {second} after {first} disagree with their composite on {element}")]
    ActionNotFunctorial { second: Id, first: Id, element: Id },
    #[error("left action of {f} and right action of {g} do not commute on {element}")]
    ActionsDoNotCommute { f: Id, g: Id, element: Id },
    #[error("profunctors are not composable: middle categories differ")]
    CompositionMismatch,
    #[error("not a collage: {0}")]
    NotACollage(String),
    #[error("cell boundaries do not match: {0}")]
    BoundaryMismatch(String),
    #[error("{0}")]
    Incompatible(String),
    #[error("enumeration exceeded budget of {0} candidates")]
    EnumerationBudgetExceeded(u64),
    #[error(transparent)]
    Cat(#[from] FincatError),
}

/// A profunctor u: C ⇸ D, i.e. a functor C°ᵖ × D → Set, presented by its
/// finite element sets u(c,d) with the two actions: f: c′→c acts on the
/// left as x·f ∈ u(c′,d) and g: d→d′ on the right as g·x ∈ u(c,d′).
/// Element ids are globally unique across all pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profunctor {
    src: FinCat,
    dst: FinCat,
    elements: BTreeMap<(Id, Id), Vec<Id>>,
    home: BTreeMap<Id, (Id, Id)>,
    lact: BTreeMap<(Id, Id), Id>,
    ract: BTreeMap<(Id, Id), Id>,
}

impl Profunctor {
    /// Validate the action laws exhaustively and construct. Missing
    /// object pairs in `elements` are treated as empty; `lact` is keyed
    /// by (f, x) with f: c′→c and x ∈ u(c,d), `ract` by (g, x) with
    /// g: d→d′ and x ∈ u(c,d).
    pub fn new(
        src: FinCat,
        dst: FinCat,
        elements: BTreeMap<(Id, Id), Vec<Id>>,
        lact: BTreeMap<(Id, Id), Id>,
        ract: BTreeMap<(Id, Id), Id>,
    ) -> Result<Profunctor, ProfError> {
        let mut full: BTreeMap<(Id, Id), Vec<Id>> = BTreeMap::new();
        for c in src.objects() {
            for d in dst.objects() {
                full.insert((c.clone(), d.clone()), Vec::new());
            }
        }
        let mut home = BTreeMap::new();
        for ((c, d), elts) in elements {
            let slot = full
                .get_mut(&(c.clone(), d.clone()))
                .ok_or(ProfError::UnknownPairObject { c: c.clone(), d: d.clone() })?;
            for x in elts {
                if home.insert(x.clone(), (c.clone(), d.clone())).is_some() {
                    return Err(ProfError::DuplicateElement(x));
                }
                slot.push(x);
            }
            slot.sort();
        }
        let u = Profunctor { src, dst, elements: full, home, lact, ract };
        u.check_actions()?;
        Ok(u)
    }

    fn check_actions(&self) -> Result<(), ProfError> {
        for ((m, x), y) in &self.lact {
            if !self.src.has_morphism(m) || !self.home.contains_key(x) {
                return Err(ProfError::SpuriousAction { morphism: m.clone(), element: x.clone() });
            }
            let (c, d) = &self.home[x];
            if self.src.dst(m) != c {
                return Err(ProfError::SpuriousAction { morphism: m.clone(), element: x.clone() });
            }
            if self.home.get(y) != Some(&(self.src.src(m).clone(), d.clone())) {
                return Err(ProfError::WrongActionTarget {
                    morphism: m.clone(),
                    element: x.clone(),
                });
            }
        }
        for ((m, x), y) in &self.ract {
            if !self.dst.has_morphism(m) || !self.home.contains_key(x) {
                return Err(ProfError::SpuriousAction { morphism: m.clone(), element: x.clone() });
            }
            let (c, d) = &self.home[x];
            if self.dst.src(m) != d {
                return Err(ProfError::SpuriousAction { morphism: m.clone(), element: x.clone() });
            }
            if self.home.get(y) != Some(&(c.clone(), self.dst.dst(m).clone())) {
                return Err(ProfError::WrongActionTarget {
                    morphism: m.clone(),
                    element: x.clone(),
                });
            }
        }
        for (x, (c, d)) in &self.home {
            for f in self.src.morphisms() {
                if self.src.dst(f) == c
                    && !self.lact.contains_key(&(f.clone(), x.clone()))
                {
                    return Err(ProfError::MissingAction {
                        morphism: f.clone(),
                        element: x.clone(),
                    });
                }
            }
            for g in self.dst.morphisms() {
                if self.dst.src(g) == d
                    && !self.ract.contains_key(&(g.clone(), x.clone()))
                {
                    return Err(ProfError::MissingAction {
                        morphism: g.clone(),
                        element: x.clone(),
                    });
                }
            }
            if self.lact(self.src.identity(c), x) != x {
                return Err(ProfError::UnitActionChanges { element: x.clone() });
            }
            if self.ract(self.dst.identity(d), x) != x {
                return Err(ProfError::UnitActionChanges { element: x.clone() });
            }
        }
        // Functoriality: x·(f∘f′) = (x·f)·f′ and (g′∘g)·x = g′·(g·x).
        for (x, (c, d)) in &self.home {
            for (f, f2) in self.src.composable_pairs() {
                if self.src.dst(f) != c {
                    continue;
                }
                let via = self.lact(f2, self.lact(f, x));
                let direct = self.lact(self.src.compose(f, f2), x);
                if via != direct {
                    return Err(ProfError::ActionNotFunctorial {
                        second: f2.clone(),
                        first: f.clone(),
                        element: x.clone(),
                    });
                }
            }
            for (g2, g) in self.dst.composable_pairs() {
                if self.dst.src(g) != d {
                    continue;
                }
                let via = self.ract(g2, self.ract(g, x));
                let direct = self.ract(self.dst.compose(g2, g), x);
                if via != direct {
                    return Err(ProfError::ActionNotFunctorial {
                        second: g2.clone(),
                        first: g.clone(),
                        element: x.clone(),
                    });
                }
            }
            for f in self.src.morphisms() {
                if self.src.dst(f) != c {
                    continue;
                }
                for g in self.dst.morphisms() {
                    if self.dst.src(g) != d {
                        continue;
                    }
                    if self.ract(g, self.lact(f, x)) != self.lact(f, self.ract(g, x)) {
                        return Err(ProfError::ActionsDoNotCommute {
                            f: f.clone(),
                            g: g.clone(),
                            element: x.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn src_cat(&self) -> &FinCat {
        &self.src
    }

    pub fn dst_cat(&self) -> &FinCat {
        &self.dst
    }

    /// Elements of u(c,d). Panics on unknown objects.
    pub fn at(&self, c: &Id, d: &Id) -> &[Id] {
        &self.elements[&(c.clone(), d.clone())]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Id, Id), &[Id])> {
        self.elements.iter().map(|(p, v)| (p, v.as_slice()))
    }

    pub fn all_elements(&self) -> impl Iterator<Item = &Id> {
        self.home.keys()
    }

    pub fn element_count(&self) -> usize {
        self.home.len()
    }

    /// The pair (c,d) with x ∈ u(c,d).
    pub fn element_home(&self, x: &Id) -> &(Id, Id) {
        &self.home[x]
    }

    pub fn has_element(&self, x: &Id) -> bool {
        self.home.contains_key(x)
    }

    /// x·f for f: c′→c and x ∈ u(c,d). Panics when not composable.
    pub fn lact(&self, f: &Id, x: &Id) -> &Id {
        &self.lact[&(f.clone(), x.clone())]
    }

    /// g·x for g: d→d′ and x ∈ u(c,d). Panics when not composable.
    pub fn ract(&self, g: &Id, x: &Id) -> &Id {
        &self.ract[&(g.clone(), x.clone())]
    }

    pub(crate) fn lact_map(&self) -> &BTreeMap<(Id, Id), Id> {
        &self.lact
    }

    pub(crate) fn ract_map(&self) -> &BTreeMap<(Id, Id), Id> {
        &self.ract
    }
}

/// The hom profunctor C(−,−): C ⇸ C, the horizontal unit. Defined as
/// the companion of the identity functor so the two agree exactly.
pub fn hom_profunctor(c: &FinCat) -> Profunctor {
    companion(&FinFunctor::identity(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{delta_cat, poset_mor, poset_ob};

    /// A free-standing profunctor for tests: the "walking element"
    /// between two terminal categories.
    pub(crate) fn point_profunctor() -> Profunctor {
        let c = delta_cat(0);
        let d = delta_cat(0);
        let e = Id::new("pt");
        let elements = [((poset_ob(0), poset_ob(0)), vec![e.clone()])].into();
        let lact = [((poset_mor(0, 0), e.clone()), e.clone())].into();
        let ract = [((poset_mor(0, 0), e.clone()), e)].into();
        Profunctor::new(c, d, elements, lact, ract).unwrap()
    }

    #[test]
    fn point_profunctor_validates() {
        let u = point_profunctor();
        assert_eq!(u.element_count(), 1);
        assert_eq!(u.at(&poset_ob(0), &poset_ob(0)).len(), 1);
    }

    #[test]
    fn missing_action_is_reported() {
        let c = delta_cat(0);
        let d = delta_cat(0);
        let e = Id::new("pt");
        let elements: BTreeMap<(Id, Id), Vec<Id>> =
            [((poset_ob(0), poset_ob(0)), vec![e.clone()])].into();
        let lact: BTreeMap<(Id, Id), Id> = BTreeMap::new();
        let ract = [((poset_mor(0, 0), e.clone()), e.clone())].into();
        let err = Profunctor::new(c, d, elements, lact, ract).unwrap_err();
        assert!(matches!(err, ProfError::MissingAction { .. }));
    }

    #[test]
    fn non_functorial_action_is_reported() {
        // u over Δ¹ on the left with two elements at u(0,*) and one at
        // u(1,*): make the action of the arrow land wrong under
        // composition with itself... the arrow composes only with
        // identities, so break a unit action instead.
        let c = delta_cat(0);
        let d = delta_cat(0);
        let (e1, e2) = (Id::new("e1"), Id::new("e2"));
        let elements: BTreeMap<(Id, Id), Vec<Id>> =
            [((poset_ob(0), poset_ob(0)), vec![e1.clone(), e2.clone()])].into();
        let lact: BTreeMap<(Id, Id), Id> = [
            ((poset_mor(0, 0), e1.clone()), e2.clone()),
            ((poset_mor(0, 0), e2.clone()), e1.clone()),
        ]
        .into();
        let ract = [
            ((poset_mor(0, 0), e1.clone()), e1.clone()),
            ((poset_mor(0, 0), e2.clone()), e2.clone()),
        ]
        .into();
        let err = Profunctor::new(c, d, elements, lact, ract).unwrap_err();
        assert!(matches!(err, ProfError::UnitActionChanges { .. }));
    }

    #[test]
    fn hom_profunctor_of_the_arrow() {
        let u = hom_profunctor(&delta_cat(1));
        assert_eq!(u.at(&poset_ob(0), &poset_ob(0)).len(), 1);
        assert_eq!(u.at(&poset_ob(0), &poset_ob(1)).len(), 1);
        assert_eq!(u.at(&poset_ob(1), &poset_ob(0)).len(), 0);
        assert_eq!(u.at(&poset_ob(1), &poset_ob(1)).len(), 1);
    }
}
