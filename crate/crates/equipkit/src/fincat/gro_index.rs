//! The category of nondegenerate simplices of a nerve, with injective
//! order maps as morphisms. Used as the gluing shape for double
//! colimits.

use super::nerve::{nerve_with_chains, Chain};
use super::{FinCat, FincatError};
use crate::id::Id;
use crate::simpset::SSet;
use crate::util::compound_id;
use std::collections::BTreeMap;

/// Category of nondegenerate nerve simplices: an object per simplex, a
/// morphism σ → τ per injective θ with τ·θ = σ (degenerate restrictions
/// are dropped).
pub struct GroIndex {
    pub cat: FinCat,
    pub nerve: SSet,
    /// object → dimension of the simplex
    pub dim: BTreeMap<Id, usize>,
    /// morphism → the vertex images of θ
    pub theta: BTreeMap<Id, Vec<usize>>,
    /// morphism → target simplex
    pub target: BTreeMap<Id, Id>,
}

fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    // Strictly increasing maps [m] → [n] as vertex image lists.
    fn go(need: usize, from: usize, n: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if need == 0 {
            out.push(acc.clone());
            return;
        }
        for v in from..=n {
            acc.push(v);
            go(need - 1, v + 1, n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(m + 1, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Restriction of a chain along a strictly increasing θ; `None` when a
/// segment composes to an identity.
fn restrict_chain(c: &FinCat, chain: &Chain, theta: &[usize]) -> Option<Chain> {
    let mut objects = vec![chain.at.clone()];
    for f in &chain.mors {
        objects.push(c.dst(f).clone());
    }
    let at = objects[theta[0]].clone();
    let mut mors = Vec::new();
    for w in theta.windows(2) {
        let (a, b) = (w[0], w[1]);
        // Composite of positions a+1..=b (1-based into chain.mors).
        let mut comp = chain.mors[a].clone();
        for p in a + 1..b {
            comp = c.compose(&chain.mors[p], &comp).clone();
        }
        if c.is_identity(&comp) {
            return None;
        }
        mors.push(comp);
    }
    Some(Chain { at, mors })
}

fn theta_str(theta: &[usize]) -> String {
    theta.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

pub fn gro_of_index(j: &FinCat, dim_bound: usize) -> Result<GroIndex, FincatError> {
    let nv = nerve_with_chains(j, dim_bound)?;
    let (sset, chains) = (nv.sset, nv.chains);
    let objects: Vec<Id> = sset.all_cells().cloned().collect();
    let dims: BTreeMap<Id, usize> =
        objects.iter().map(|o| (o.clone(), sset.dim_of(o))).collect();

    let mid = |theta: &[usize], tau: &Id| {
        compound_id("inc", &[theta_str(theta), tau.to_string()])
    };
    let mut morphisms = Vec::new();
    let mut theta_of = BTreeMap::new();
    let mut target_of = BTreeMap::new();
    let mut src_of: BTreeMap<Id, Id> = BTreeMap::new();
    for tau in &objects {
        let n = dims[tau];
        let tau_chain = &chains[tau];
        for m in 0..=n {
            for theta in injections(m, n) {
                let Some(sigma_chain) = restrict_chain(j, tau_chain, &theta) else {
                    continue;
                };
                let sigma = super::nerve::chain_cell_id(&sigma_chain);
                debug_assert!(sset.has_cell(&sigma));
                let id = mid(&theta, tau);
                morphisms.push((id.clone(), sigma.clone(), tau.clone()));
                theta_of.insert(id.clone(), theta.clone());
                target_of.insert(id.clone(), tau.clone());
                src_of.insert(id, sigma);
            }
        }
    }
    let identities: BTreeMap<Id, Id> = objects
        .iter()
        .map(|o| {
            let n = dims[o];
            let full: Vec<usize> = (0..=n).collect();
            (o.clone(), mid(&full, o))
        })
        .collect();
    let mut table = BTreeMap::new();
    for (m2, tau2) in &target_of {
        let th2 = &theta_of[m2];
        for (m1, tau1) in &target_of {
            // m2 ∘ m1 requires dst(m1) = src(m2).
            if tau1 != &src_of[m2] {
                continue;
            }
            let th1 = &theta_of[m1];
            let composite: Vec<usize> = th1.iter().map(|&v| th2[v]).collect();
            table.insert((m2.clone(), m1.clone()), mid(&composite, tau2));
        }
    }
    let cat = FinCat::new(objects, morphisms, identities, table)?;
    Ok(GroIndex { cat, nerve: sset, dim: dims, theta: theta_of, target: target_of })
}
