//! The Grothendieck construction of a category-valued diagram.

use super::functor::{CatDiagram, FinFunctor};
use super::{FinCat, FincatError};
use crate::id::Id;
use crate::util::compound_id;
use std::collections::BTreeMap;

/// The total category of a diagram F: J → Cat, with its projection and
/// the pairing bookkeeping.
pub struct Grothendieck {
    pub total: FinCat,
    pub projection: FinFunctor,
    /// total object → (index object, fiber object)
    pub ob_pair: BTreeMap<Id, (Id, Id)>,
    /// total morphism → (index morphism α, fiber morphism f, source fiber object)
    pub mor_pair: BTreeMap<Id, (Id, Id, Id)>,
}

fn ob_id(i: &Id, x: &Id) -> Id {
    compound_id("gob", &[i.to_string(), x.to_string()])
}

fn mor_id(alpha: &Id, f: &Id, x: &Id) -> Id {
    compound_id("gmor", &[alpha.to_string(), f.to_string(), x.to_string()])
}

/// Objects are pairs (i, x); a morphism (i,x) → (j,y) is a pair (α: i→j,
/// f: F_α(x) → y), composing by (β,g)(α,f) = (βα, g∘F_β(f)).
pub fn grothendieck(d: &CatDiagram) -> Result<Grothendieck, FincatError> {
    let j = d.index();
    let mut objects = Vec::new();
    let mut ob_pair = BTreeMap::new();
    for i in j.objects() {
        for x in d.node(i).objects() {
            let id = ob_id(i, x);
            ob_pair.insert(id.clone(), (i.clone(), x.clone()));
            objects.push(id);
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pair = BTreeMap::new();
    for alpha in j.morphisms() {
        let (i, jj) = (j.src(alpha), j.dst(alpha));
        let f_alpha = d.edge(alpha);
        let fiber_j = d.node(jj);
        for x in d.node(i).objects() {
            let fx = f_alpha.ob(x);
            for f in fiber_j.morphisms() {
                if fiber_j.src(f) != fx {
                    continue;
                }
                let id = mor_id(alpha, f, x);
                mor_pair.insert(id.clone(), (alpha.clone(), f.clone(), x.clone()));
                morphisms.push((id, ob_id(i, x), ob_id(jj, fiber_j.dst(f))));
            }
        }
    }
    let identities: BTreeMap<Id, Id> = ob_pair
        .iter()
        .map(|(oid, (i, x))| {
            let alpha = j.identity(i);
            let f = d.node(i).identity(x);
            (oid.clone(), mor_id(alpha, f, x))
        })
        .collect();
    let mut table = BTreeMap::new();
    for (mid2, (beta, g, x2)) in &mor_pair {
        for (mid1, (alpha, f, x1)) in &mor_pair {
            // compose (β,g) after (α,f): defined when dst pair of the
            // first equals src pair of the second.
            let jj = j.dst(alpha);
            if j.src(beta) != jj {
                continue;
            }
            let fiber_j = d.node(jj);
            if x2 != fiber_j.dst(f) {
                continue;
            }
            let beta_alpha = j.compose(beta, alpha);
            let k = j.dst(beta);
            let f_beta = d.edge(beta);
            let composite_f = d.node(k).compose(g, f_beta.mor(f)).clone();
            table.insert(
                (mid2.clone(), mid1.clone()),
                mor_id(beta_alpha, &composite_f, x1),
            );
        }
    }
    let total = FinCat::new(objects, morphisms, identities, table)?;
    let proj_ob = ob_pair.iter().map(|(o, (i, _))| (o.clone(), i.clone())).collect();
    let proj_mor = mor_pair
        .iter()
        .map(|(m, (alpha, _, _))| (m.clone(), alpha.clone()))
        .collect();
    let projection = FinFunctor::new(total.clone(), j.clone(), proj_ob, proj_mor)?;
    Ok(Grothendieck { total, projection, ob_pair, mor_pair })
}
