//! Exhaustive enumeration of functors between finite categories.
//!
//! Same backtracking skeleton as the isomorphism search, minus the
//! injectivity constraints: objects range over all targets, morphisms
//! over the full hom-set (identities included), and every leaf is kept.

use super::functor::FinFunctor;
use super::{FinCat, FincatError};
use crate::id::Id;
use std::collections::BTreeMap;

struct Search<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    ob: BTreeMap<Id, Id>,
    mor: BTreeMap<Id, Id>,
    out: Vec<FinFunctor>,
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

    fn assign_objects(&mut self, remaining: &[Id]) -> Result<(), FincatError> {
        let Some((x, rest)) = remaining.split_first() else {
            for x in self.c.objects() {
                let i = self.c.identity(x).clone();
                self.mor.insert(i, self.d.identity(&self.ob[x]).clone());
            }
            let mors = self.c.non_identities();
            self.assign_morphisms(&mors)?;
            for x in self.c.objects() {
                self.mor.remove(self.c.identity(x));
            }
            return Ok(());
        };
        for y in self.d.objects().to_vec() {
            self.tick()?;
            self.ob.insert(x.clone(), y);
            self.assign_objects(rest)?;
        }
        self.ob.remove(x);
        Ok(())
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

    fn assign_morphisms(&mut self, remaining: &[Id]) -> Result<(), FincatError> {
        let Some((m, rest)) = remaining.split_first() else {
            let f = FinFunctor::new(
                self.c.clone(),
                self.d.clone(),
                self.ob.clone(),
                self.mor.clone(),
            )
            .expect("fully pruned leaves are functors");
            self.out.push(f);
            return Ok(());
        };
        let (sv, dv) = (&self.ob[self.c.src(m)], &self.ob[self.c.dst(m)]);
        for n in self.d.hom(sv, dv) {
            self.tick()?;
            self.mor.insert(m.clone(), n.clone());
            if self.morphism_ok(m) {
                self.assign_morphisms(rest)?;
            }
        }
        self.mor.remove(m);
        Ok(())
    }
}

/// Enumerate every functor from `c` to `d`, in a deterministic order.
pub fn enumerate_functors(
    c: &FinCat,
    d: &FinCat,
    budget: u64,
) -> Result<Vec<FinFunctor>, FincatError> {
    let mut search = Search {
        c,
        d,
        ob: BTreeMap::new(),
        mor: BTreeMap::new(),
        out: Vec::new(),
        steps: 0,
        budget,
    };
    let obs: Vec<Id> = c.objects().to_vec();
    search.assign_objects(&obs)?;
    Ok(search.out)
}

#[cfg(test)]
mod tests {
    use super::super::shapes::{delta_cat, discrete_cat, walking_idempotent};
    use super::*;

    /// C(n+m+1, m+1): monotone maps [m] → [n], counted independently of
    /// the search.
    fn monotone_count(m: u64, n: u64) -> u64 {
        let (top, k) = (n + m + 1, m + 1);
        let mut acc = 1;
        for i in 0..k {
            acc = acc * (top - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn functors_between_simplices_are_monotone_maps() {
        for (m, n) in [(1, 1), (1, 2), (2, 1), (0, 3)] {
            let fs = enumerate_functors(&delta_cat(m), &delta_cat(n), 1_000_000).unwrap();
            assert_eq!(fs.len() as u64, monotone_count(m as u64, n as u64));
        }
    }

    #[test]
    fn discrete_sources_count_object_functions() {
        let fs = enumerate_functors(&discrete_cat(2), &delta_cat(1), 100_000).unwrap();
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn idempotent_has_two_self_maps() {
        let e = walking_idempotent();
        let fs = enumerate_functors(&e, &e, 100_000).unwrap();
        assert_eq!(fs.len(), 2);
        let fs0 = enumerate_functors(&e, &delta_cat(0), 100_000).unwrap();
        assert_eq!(fs0.len(), 1);
    }

    #[test]
    fn empty_source_has_one_functor() {
        let none = FinCat::new(vec![], vec![], BTreeMap::new(), BTreeMap::new()).unwrap();
        let fs = enumerate_functors(&none, &delta_cat(2), 100).unwrap();
        assert_eq!(fs.len(), 1);
        let back = enumerate_functors(&delta_cat(0), &none, 100).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn budget_trips() {
        match enumerate_functors(&discrete_cat(5), &discrete_cat(5), 10) {
            Err(FincatError::SearchBudgetExceeded(10)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
