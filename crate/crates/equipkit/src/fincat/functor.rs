//! Functors, natural transformations, and category-valued diagrams.

use super::{FinCat, FincatError};
use crate::id::Id;
use std::collections::BTreeMap;

/// A functor between finite categories, validated on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinFunctor {
    src: FinCat,
    dst: FinCat,
    ob: BTreeMap<Id, Id>,
    mor: BTreeMap<Id, Id>,
}

impl FinFunctor {
    pub fn new(
        src: FinCat,
        dst: FinCat,
        ob: BTreeMap<Id, Id>,
        mor: BTreeMap<Id, Id>,
    ) -> Result<FinFunctor, FincatError> {
        for o in src.objects() {
            let io = ob
                .get(o)
                .ok_or_else(|| FincatError::NotFunctorial(format!("object {o} unassigned")))?;
            if !dst.has_object(io) {
                return Err(FincatError::UnknownObject(io.clone()));
            }
        }
        for o in ob.keys() {
            if !src.has_object(o) {
                return Err(FincatError::UnknownObject(o.clone()));
            }
        }
        for m in src.morphisms() {
            let im = mor
                .get(m)
                .ok_or_else(|| FincatError::NotFunctorial(format!("morphism {m} unassigned")))?;
            if !dst.has_morphism(im) {
                return Err(FincatError::UnknownMorphism(im.clone()));
            }
            if dst.src(im) != &ob[src.src(m)] || dst.dst(im) != &ob[src.dst(m)] {
                return Err(FincatError::NotFunctorial(format!(
                    "image of {m} has wrong endpoints"
                )));
            }
        }
        for m in mor.keys() {
            if !src.has_morphism(m) {
                return Err(FincatError::UnknownMorphism(m.clone()));
            }
        }
        for o in src.objects() {
            if mor[src.identity(o)] != *dst.identity(&ob[o]) {
                return Err(FincatError::NotFunctorial(format!(
                    "identity of {o} not sent to an identity"
                )));
            }
        }
        for (g, f) in src.composable_pairs() {
            let gf = src.compose(g, f);
            let want = dst.compose(&mor[g], &mor[f]);
            if &mor[gf] != want {
                return Err(FincatError::NotFunctorial(format!(
                    "composition not preserved on ({g}, {f})"
                )));
            }
        }
        Ok(FinFunctor { src, dst, ob, mor })
    }

    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor {
            src: c.clone(),
            dst: c.clone(),
            ob: c.objects().iter().map(|o| (o.clone(), o.clone())).collect(),
            mor: c.morphisms().iter().map(|m| (m.clone(), m.clone())).collect(),
        }
    }

    /// g ∘ f as functors.
    pub fn compose(g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor, FincatError> {
        if f.dst != g.src {
            return Err(FincatError::Incompatible(
                "functor composition: middle categories differ".into(),
            ));
        }
        Ok(FinFunctor {
            src: f.src.clone(),
            dst: g.dst.clone(),
            ob: f.ob.iter().map(|(a, b)| (a.clone(), g.ob[b].clone())).collect(),
            mor: f.mor.iter().map(|(a, b)| (a.clone(), g.mor[b].clone())).collect(),
        })
    }

    pub fn src_cat(&self) -> &FinCat {
        &self.src
    }

    pub fn dst_cat(&self) -> &FinCat {
        &self.dst
    }

    pub fn ob(&self, o: &Id) -> &Id {
        &self.ob[o]
    }

    pub fn mor(&self, m: &Id) -> &Id {
        &self.mor[m]
    }

    pub fn ob_map(&self) -> &BTreeMap<Id, Id> {
        &self.ob
    }

    pub fn mor_map(&self) -> &BTreeMap<Id, Id> {
        &self.mor
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NatTransformation {
    source: FinFunctor,
    target: FinFunctor,
    components: BTreeMap<Id, Id>,
}

impl NatTransformation {
    pub fn new(
        source: FinFunctor,
        target: FinFunctor,
        components: BTreeMap<Id, Id>,
    ) -> Result<NatTransformation, FincatError> {
        if source.src != target.src || source.dst != target.dst {
            return Err(FincatError::Incompatible(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        let d = &source.dst;
        for o in source.src.objects() {
            let c = components
                .get(o)
                .ok_or_else(|| FincatError::Incompatible(format!("no component at {o}")))?;
            if !d.has_morphism(c) {
                return Err(FincatError::UnknownMorphism(c.clone()));
            }
            if d.src(c) != source.ob(o) || d.dst(c) != target.ob(o) {
                return Err(FincatError::Incompatible(format!(
                    "component at {o} has wrong endpoints"
                )));
            }
        }
        for m in source.src.morphisms() {
            let (a, b) = (source.src.src(m), source.src.dst(m));
            let lhs = d.compose(&components[b], source.mor(m));
            let rhs = d.compose(target.mor(m), &components[a]);
            if lhs != rhs {
                return Err(FincatError::NotNatural { morphism: m.clone() });
            }
        }
        Ok(NatTransformation { source, target, components })
    }

    pub fn component(&self, o: &Id) -> &Id {
        &self.components[o]
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }
}

/// A functor J → Cat presented by node categories and edge functors.
/// Edge functors are stored for every morphism of the index, identities
/// included; the constructor fills identity edges in and checks
/// functoriality of the rest.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    index: FinCat,
    nodes: BTreeMap<Id, FinCat>,
    edges: BTreeMap<Id, FinFunctor>,
}

impl CatDiagram {
    /// `edges` may omit identity morphisms of the index.
    pub fn new(
        index: FinCat,
        nodes: BTreeMap<Id, FinCat>,
        mut edges: BTreeMap<Id, FinFunctor>,
    ) -> Result<CatDiagram, FincatError> {
        for o in index.objects() {
            let node = nodes
                .get(o)
                .ok_or_else(|| FincatError::Incompatible(format!("no node category at {o}")))?;
            edges
                .entry(index.identity(o).clone())
                .or_insert_with(|| FinFunctor::identity(node));
        }
        for o in nodes.keys() {
            if !index.has_object(o) {
                return Err(FincatError::UnknownObject(o.clone()));
            }
        }
        for m in edges.keys() {
            if !index.has_morphism(m) {
                return Err(FincatError::UnknownMorphism(m.clone()));
            }
        }
        for m in index.morphisms() {
            let e = edges
                .get(m)
                .ok_or_else(|| FincatError::Incompatible(format!("no edge functor at {m}")))?;
            if e.src_cat() != &nodes[index.src(m)] || e.dst_cat() != &nodes[index.dst(m)] {
                return Err(FincatError::Incompatible(format!(
                    "edge at {m} has wrong endpoint categories"
                )));
            }
        }
        for (g, f) in index.composable_pairs() {
            let gf = index.compose(g, f);
            let want = FinFunctor::compose(&edges[g], &edges[f])?;
            if edges[gf] != want {
                return Err(FincatError::NotFunctorial(format!(
                    "diagram does not respect composition on ({g}, {f})"
                )));
            }
        }
        Ok(CatDiagram { index, nodes, edges })
    }

    pub fn index(&self) -> &FinCat {
        &self.index
    }

    pub fn node(&self, o: &Id) -> &FinCat {
        &self.nodes[o]
    }

    pub fn nodes(&self) -> &BTreeMap<Id, FinCat> {
        &self.nodes
    }

    pub fn edge(&self, m: &Id) -> &FinFunctor {
        &self.edges[m]
    }
}
