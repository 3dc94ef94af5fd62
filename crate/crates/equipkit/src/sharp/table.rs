//! The simplicial identity table, witnessed on concrete slices.
//!
//! Identities that only move faces hold literally — both sides produce
//! the same carrier with the same ids — and are certified
//! [`MatchCertificate::Exact`]. Identities that collapse or reorder
//! degeneracies relabel cells, so the witness carries a constructed
//! isomorphism: the restricted cylinder projection for d_j s_j = 1 and
//! d_{j+1} s_j = 1, and the re-split of the combined cylinder coordinate
//! for s_i s_j = s_{j+1} s_i.

use super::compare::MatchCertificate;
use super::slice::{
    degeneracy_slice, face_slice, product_morphism, product_object,
    sset_degen_parts, SliceMorphism, SliceObject,
};
use super::SharpError;
use crate::fincat::{poset_mor, FinFunctor};
use crate::simpset::pairs::product_with_simplex;
use crate::simpset::standard::{formal_to_vertex_list, vertex_list_to_formal};
use crate::simpset::SMap;
use std::collections::BTreeMap;

/// One checked instance of a simplicial identity.
#[derive(Clone, Debug)]
pub struct IdentityWitness {
    pub relation: String,
    pub lhs: SliceObject,
    pub rhs: SliceObject,
    pub certificate: MatchCertificate,
}

const DELTA1_ARROWS: [(usize, usize); 3] = [(0, 0), (0, 1), (1, 1)];

fn literal(
    relation: String,
    lhs: SliceObject,
    rhs: SliceObject,
) -> Result<IdentityWitness, SharpError> {
    if lhs != rhs {
        return Err(SharpError::VerificationFailed(format!(
            "{relation} does not hold literally"
        )));
    }
    Ok(IdentityWitness { relation, lhs, rhs, certificate: MatchCertificate::Exact })
}

fn certify(
    relation: String,
    lhs: SliceObject,
    rhs: SliceObject,
    iso: SliceMorphism,
) -> Result<IdentityWitness, SharpError> {
    if !iso.is_iso() {
        return Err(SharpError::VerificationFailed(format!(
            "the comparison for {relation} is not invertible"
        )));
    }
    Ok(IdentityWitness { relation, lhs, rhs, certificate: MatchCertificate::Iso(iso) })
}

/// d_k s_j x = x for k ∈ {j, j+1}, witnessed by the restricted cylinder
/// projection: the cylinder coordinate of every surviving cell is
/// determined by its structure, so projecting it away is invertible.
pub(crate) fn collapse_witness(x: &SliceObject, j: usize, k: usize) -> Result<IdentityWitness, SharpError> {
    let relation = format!("d{k} s{j} = 1");
    let lhs = face_slice(&degeneracy_slice(x, j)?, k)?;
    match (&lhs, x) {
        (SliceObject::Sset(l), SliceObject::Sset(x0)) => {
            let (_, proj) = sset_degen_parts(x0, j)?;
            let assignment = l
                .carrier()
                .all_cells()
                .map(|c| (c.clone(), proj.apply_cell(c).clone()))
                .collect();
            let map = SMap::new(l.carrier().clone(), x0.carrier().clone(), assignment)?;
            let iso = SliceMorphism::new_sset(l.clone(), x0.clone(), map)?;
            certify(relation, lhs.clone(), x.clone(), iso)
        }
        (SliceObject::Cat(l), SliceObject::Cat(x0)) => {
            let mut ob = BTreeMap::new();
            let mut mor = BTreeMap::new();
            for c in x0.carrier().objects() {
                for e in 0..=1usize {
                    let id = product_object(c, e);
                    if l.carrier().has_object(&id) {
                        ob.insert(id, c.clone());
                    }
                }
            }
            for m in x0.carrier().morphisms() {
                for (a, b) in DELTA1_ARROWS {
                    let id = product_morphism(m, &poset_mor(a, b));
                    if l.carrier().has_morphism(&id) {
                        mor.insert(id, m.clone());
                    }
                }
            }
            let map = FinFunctor::new(l.carrier().clone(), x0.carrier().clone(), ob, mor)?;
            let iso = SliceMorphism::new_cat(l.clone(), x0.clone(), map)?;
            certify(relation, lhs.clone(), x.clone(), iso)
        }
        (SliceObject::Cospan(_), SliceObject::Cospan(_)) => literal(relation, lhs, x.clone()),
        _ => unreachable!("faces and degeneracies preserve the site"),
    }
}

/// s_i s_j x = s_{j+1} s_i x for i ≤ j, witnessed by re-splitting the
/// combined cylinder displacement ε ∈ {0,1,2} of every cell.
fn resplit_witness(x: &SliceObject, i: usize, j: usize) -> Result<IdentityWitness, SharpError> {
    let relation = format!("s{i} s{j} = s{} s{i}", j + 1);
    let lhs = degeneracy_slice(&degeneracy_slice(x, j)?, i)?;
    let rhs = degeneracy_slice(&degeneracy_slice(x, i)?, j + 1)?;
    let split = |eps: usize| (eps.min(1), eps.saturating_sub(1));
    match (&lhs, &rhs, x) {
        (SliceObject::Sset(l), SliceObject::Sset(r), SliceObject::Sset(x0)) => {
            let (sj, proj_j) = sset_degen_parts(x0, j)?;
            let (_, proj_outer) = sset_degen_parts(&sj, i)?;
            let (si, _) = sset_degen_parts(x0, i)?;
            let inner_prod = product_with_simplex(x0.carrier(), 1);
            let outer_prod = product_with_simplex(si.carrier(), 1);
            let mut assignment = BTreeMap::new();
            for c in l.carrier().all_cells() {
                let w = l.structure_verts(c);
                let l_formal = proj_j.apply(&proj_outer.apply_cell(c));
                let u = formal_to_vertex_list(&x0.structure().apply(&l_formal));
                let t1: Vec<usize> = u.iter().zip(&w).map(|(&u, &w)| split(w - u).0).collect();
                let t2: Vec<usize> = u.iter().zip(&w).map(|(&u, &w)| split(w - u).1).collect();
                let inner = inner_prod
                    .pair_formal(l_formal, vertex_list_to_formal(&t1))
                    .ok_or_else(|| {
                        SharpError::Mismatch(format!("no re-split inner pair for {c}"))
                    })?;
                let img = outer_prod
                    .pair_formal(inner, vertex_list_to_formal(&t2))
                    .ok_or_else(|| {
                        SharpError::Mismatch(format!("no re-split outer pair for {c}"))
                    })?;
                assignment.insert(c.clone(), img);
            }
            let map = SMap::new(l.carrier().clone(), r.carrier().clone(), assignment)?;
            let iso = SliceMorphism::new_sset(l.clone(), r.clone(), map)?;
            certify(relation, lhs.clone(), rhs.clone(), iso)
        }
        (SliceObject::Cat(l), SliceObject::Cat(r), SliceObject::Cat(x0)) => {
            let mut ob = BTreeMap::new();
            let mut mor = BTreeMap::new();
            for c in x0.carrier().objects() {
                for e1 in 0..=1usize {
                    for e2 in 0..=1usize {
                        let id = product_object(&product_object(c, e1), e2);
                        if !l.carrier().has_object(&id) {
                            continue;
                        }
                        let (f1, f2) = split(e1 + e2);
                        ob.insert(id, product_object(&product_object(c, f1), f2));
                    }
                }
            }
            for m in x0.carrier().morphisms() {
                for (a1, b1) in DELTA1_ARROWS {
                    for (a2, b2) in DELTA1_ARROWS {
                        let id = product_morphism(
                            &product_morphism(m, &poset_mor(a1, b1)),
                            &poset_mor(a2, b2),
                        );
                        if !l.carrier().has_morphism(&id) {
                            continue;
                        }
                        let (fa1, fa2) = split(a1 + a2);
                        let (fb1, fb2) = split(b1 + b2);
                        mor.insert(
                            id,
                            product_morphism(
                                &product_morphism(m, &poset_mor(fa1, fb1)),
                                &poset_mor(fa2, fb2),
                            ),
                        );
                    }
                }
            }
            let map = FinFunctor::new(l.carrier().clone(), r.carrier().clone(), ob, mor)?;
            let iso = SliceMorphism::new_cat(l.clone(), r.clone(), map)?;
            certify(relation, lhs.clone(), rhs.clone(), iso)
        }
        (SliceObject::Cospan(_), SliceObject::Cospan(_), _) => literal(relation, lhs, rhs),
        _ => unreachable!("faces and degeneracies preserve the site"),
    }
}

/// Every instance of the simplicial identities rooted at the given
/// slice, each with a certificate.
pub fn simplicial_identity_witnesses(
    x: &SliceObject,
) -> Result<Vec<IdentityWitness>, SharpError> {
    let n = x.level();
    let mut out = Vec::new();
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let lhs = face_slice(&face_slice(x, j)?, i)?;
                let rhs = face_slice(&face_slice(x, i)?, j - 1)?;
                out.push(literal(format!("d{i} d{j} = d{} d{i}", j - 1), lhs, rhs)?);
            }
        }
    }
    for j in 0..=n {
        for i in 0..j {
            let lhs = face_slice(&degeneracy_slice(x, j)?, i)?;
            let rhs = degeneracy_slice(&face_slice(x, i)?, j - 1)?;
            out.push(literal(format!("d{i} s{j} = s{} d{i}", j - 1), lhs, rhs)?);
        }
        out.push(collapse_witness(x, j, j)?);
        out.push(collapse_witness(x, j, j + 1)?);
        for i in (j + 2)..=(n + 1) {
            let lhs = face_slice(&degeneracy_slice(x, j)?, i)?;
            let rhs = degeneracy_slice(&face_slice(x, i - 1)?, j)?;
            out.push(literal(format!("d{i} s{j} = s{j} d{}", i - 1), lhs, rhs)?);
        }
    }
    for j in 0..=n {
        for i in 0..=j {
            out.push(resplit_witness(x, i, j)?);
        }
    }
    Ok(out)
}
