//! The nerve of a finite category.

use super::{FinCat, FincatError};
use crate::id::Id;
use crate::simpset::{FormalSimplex, SSet};
use crate::util::compound_id;
use std::collections::BTreeMap;

/// A composable chain of non-identity morphisms, starting at `at`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Chain {
    pub at: Id,
    pub mors: Vec<Id>,
}

impl Chain {
    pub fn end(&self, c: &FinCat) -> Id {
        self.mors.last().map(|m| c.dst(m).clone()).unwrap_or_else(|| self.at.clone())
    }

    pub fn len(&self) -> usize {
        self.mors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mors.is_empty()
    }
}

/// Cell id of an identity-free chain: the object for vertices, the
/// morphism for edges, a tuple for longer chains.
pub fn chain_cell_id(chain: &Chain) -> Id {
    match chain.mors.len() {
        0 => chain.at.clone(),
        1 => chain.mors[0].clone(),
        _ => compound_id("chain", &chain.mors.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
    }
}

/// Normal form of a chain that may contain identities.
pub fn chain_to_formal(c: &FinCat, at: &Id, mors: &[Id]) -> FormalSimplex {
    let mut word = Vec::new();
    let mut rest: Vec<Id> = mors.to_vec();
    while let Some(p) = rest.iter().rposition(|f| c.is_identity(f)) {
        word.push(p);
        rest.remove(p);
    }
    let base = chain_cell_id(&Chain { at: at.clone(), mors: rest });
    FormalSimplex { base, word }
}

/// The nerve with all nondegenerate simplices, plus the chain indexing.
pub struct Nerve {
    pub sset: SSet,
    pub chains: BTreeMap<Id, Chain>,
}

fn build(c: &FinCat, dim_bound: usize, exact: bool) -> Result<Nerve, FincatError> {
    let mut levels: Vec<Vec<Chain>> = Vec::new();
    levels.push(c.objects().iter().map(|o| Chain { at: o.clone(), mors: Vec::new() }).collect());
    let non_ids = c.non_identities();
    for n in 1..=dim_bound {
        let mut level = Vec::new();
        for prev in &levels[n - 1] {
            let end = prev.end(c);
            for f in &non_ids {
                if c.src(f) == &end {
                    let mut mors = prev.mors.clone();
                    mors.push(f.clone());
                    level.push(Chain { at: prev.at.clone(), mors });
                }
            }
        }
        if level.is_empty() {
            break;
        }
        levels.push(level);
    }
    if exact && levels.len() == dim_bound + 1 {
        // Would the next level be nonempty?
        let overflow = levels[dim_bound].iter().any(|chain| {
            let end = chain.end(c);
            non_ids.iter().any(|f| c.src(f) == &end)
        });
        if overflow {
            return Err(FincatError::NerveUnbounded { dim_bound });
        }
    }
    let mut cells = Vec::new();
    let mut faces = BTreeMap::new();
    let mut chains = BTreeMap::new();
    for (n, level) in levels.iter().enumerate() {
        let mut ids = Vec::new();
        for chain in level {
            let id = chain_cell_id(chain);
            ids.push(id.clone());
            chains.insert(id.clone(), chain.clone());
            if n >= 1 {
                let fs: Vec<FormalSimplex> = (0..=n).map(|i| chain_face(c, chain, i)).collect();
                faces.insert(id, fs);
            }
        }
        cells.push(ids);
    }
    let sset = SSet::new(cells, faces).map_err(|e| {
        FincatError::Incompatible(format!("nerve produced an invalid complex: {e}"))
    })?;
    Ok(Nerve { sset, chains })
}

/// The i-th face of a chain: drop an outer morphism or compose an
/// adjacent pair (which may create an identity, hence a degeneracy).
pub fn chain_face(c: &FinCat, chain: &Chain, i: usize) -> FormalSimplex {
    let n = chain.mors.len();
    assert!(n >= 1 && i <= n);
    if i == 0 {
        let rest = Chain { at: c.dst(&chain.mors[0]).clone(), mors: chain.mors[1..].to_vec() };
        FormalSimplex::nondeg(chain_cell_id(&rest))
    } else if i == n {
        let rest = Chain { at: chain.at.clone(), mors: chain.mors[..n - 1].to_vec() };
        FormalSimplex::nondeg(chain_cell_id(&rest))
    } else {
        let mut mors = chain.mors.clone();
        let glued = c.compose(&chain.mors[i], &chain.mors[i - 1]).clone();
        mors.splice(i - 1..=i, [glued]);
        chain_to_formal(c, &chain.at, &mors)
    }
}

/// Nerve of a category, demanding that nothing lives above `dim_bound`.
pub fn nerve(c: &FinCat, dim_bound: usize) -> Result<SSet, FincatError> {
    build(c, dim_bound, true).map(|n| n.sset)
}

/// Nerve truncated at `dim_bound`, never failing.
pub fn truncated_nerve(c: &FinCat, dim_bound: usize) -> SSet {
    build(c, dim_bound, false).expect("truncated nerve cannot overflow").sset
}

/// Nerve together with its chain bookkeeping.
pub fn nerve_with_chains(c: &FinCat, dim_bound: usize) -> Result<Nerve, FincatError> {
    build(c, dim_bound, true)
}
