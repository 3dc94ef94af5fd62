//! Isomorphism search between finite categories.
//!
//! Plain backtracking: objects first (pruned by hom-set sizes against
//! everything already assigned), then non-identity morphisms (pruned by
//! endpoints and by every composite that is already fully assigned).
//! A hit is certified by a pair of mutually inverse functors, each
//! re-validated from scratch by `FinFunctor::new`.

use super::functor::FinFunctor;
use super::{FinCat, FincatError};
use crate::id::Id;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct CatIso {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
}

struct Search<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    ob: BTreeMap<Id, Id>,
    ob_used: BTreeMap<Id, Id>,
    mor: BTreeMap<Id, Id>,
    mor_used: BTreeMap<Id, Id>,
    steps: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), FincatError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(FincatError::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn object_ok(&self, x: &Id, y: &Id) -> bool {
        for (x2, y2) in &self.ob {
            if self.c.hom(x, x2).len() != self.d.hom(y, y2).len()
                || self.c.hom(x2, x).len() != self.d.hom(y2, y).len()
            {
                return false;
            }
        }
        self.c.hom(x, x).len() == self.d.hom(y, y).len()
    }

    fn assign_objects(&mut self, remaining: &[Id]) -> Result<bool, FincatError> {
        let Some((x, rest)) = remaining.split_first() else {
            // Seed identity assignments so composites that land on an
            // identity are checked during the morphism search.
            for x in self.c.objects() {
                let (i, j) = (self.c.identity(x), self.d.identity(&self.ob[x]));
                self.mor.insert(i.clone(), j.clone());
                self.mor_used.insert(j.clone(), i.clone());
            }
            let mors = self.c.non_identities();
            let found = self.assign_morphisms(&mors)?;
            if !found {
                for x in self.c.objects() {
                    let i = self.c.identity(x).clone();
                    let j = self.mor.remove(&i).expect("seeded identity");
                    self.mor_used.remove(&j);
                }
            }
            return Ok(found);
        };
        let candidates: Vec<Id> = self
            .d
            .objects()
            .iter()
            .filter(|y| !self.ob_used.contains_key(*y))
            .cloned()
            .collect();
        for y in candidates {
            self.tick()?;
            if !self.object_ok(x, &y) {
                continue;
            }
            self.ob.insert(x.clone(), y.clone());
            self.ob_used.insert(y.clone(), x.clone());
            if self.assign_objects(rest)? {
                return Ok(true);
            }
            self.ob.remove(x);
            self.ob_used.remove(&y);
        }
        Ok(false)
    }

    fn composite_ok(&self, g: &Id, f: &Id) -> bool {
        let Some(k) = self.c.try_compose(g, f) else {
            return true;
        };
        let Some(k_img) = self.mor.get(k) else {
            return true;
        };
        self.d.try_compose(&self.mor[g], &self.mor[f]) == Some(k_img)
    }

    fn morphism_ok(&self, m: &Id) -> bool {
        for m2 in self.mor.keys() {
            if !self.composite_ok(m, m2) || !self.composite_ok(m2, m) {
                return false;
            }
        }
        self.composite_ok(m, m)
    }

    fn assign_morphisms(&mut self, remaining: &[Id]) -> Result<bool, FincatError> {
        let Some((m, rest)) = remaining.split_first() else {
            return Ok(true);
        };
        let (sv, dv) = (&self.ob[self.c.src(m)], &self.ob[self.c.dst(m)]);
        let candidates: Vec<Id> = self
            .d
            .hom(sv, dv)
            .into_iter()
            .filter(|n| !self.d.is_identity(n) && !self.mor_used.contains_key(n))
            .collect();
        for n in candidates {
            self.tick()?;
            self.mor.insert(m.clone(), n.clone());
            self.mor_used.insert(n.clone(), m.clone());
            if self.morphism_ok(m) && self.assign_morphisms(rest)? {
                return Ok(true);
            }
            self.mor.remove(m);
            self.mor_used.remove(&n);
        }
        Ok(false)
    }
}

/// Search for an isomorphism of categories. `Ok(None)` means the search
/// space was exhausted; the budget caps backtracking steps.
pub fn cat_iso(c: &FinCat, d: &FinCat, budget: u64) -> Result<Option<CatIso>, FincatError> {
    if c.objects().len() != d.objects().len()
        || c.morphisms().len() != d.morphisms().len()
    {
        return Ok(None);
    }
    let mut search = Search {
        c,
        d,
        ob: BTreeMap::new(),
        ob_used: BTreeMap::new(),
        mor: BTreeMap::new(),
        mor_used: BTreeMap::new(),
        steps: 0,
        budget,
    };
    let obs: Vec<Id> = c.objects().to_vec();
    if !search.assign_objects(&obs)? {
        return Ok(None);
    }
    let forward = FinFunctor::new(c.clone(), d.clone(), search.ob, search.mor)?;
    let ob_inv = forward
        .ob_map()
        .iter()
        .map(|(x, y)| (y.clone(), x.clone()))
        .collect();
    let mor_inv = forward
        .mor_map()
        .iter()
        .map(|(f, g)| (g.clone(), f.clone()))
        .collect();
    let backward = FinFunctor::new(d.clone(), c.clone(), ob_inv, mor_inv)?;
    Ok(Some(CatIso { forward, backward }))
}
