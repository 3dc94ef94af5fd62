//! Companions of chains of vertical morphisms.
//!
//! A chain of n composable vertical morphisms has a companion: a level-n
//! object built by recursion on n, extending the degenerate power of the
//! first object along the companions of the chain's faces.  Faces of
//! companions are companions on the nose; degeneracies only admit a
//! comparison map, constructed here as well.

use super::compare::{slices_match, MatchCertificate};
use super::extend::{
    equipment_extend, restrict_object, strong_equipment_extend, BoundaryAssignment,
};
use super::slice::{
    degeneracy_map, degeneracy_slice, face_map, face_slice, s_power, s_power_map,
    spower_degen_iso, spower_face_iso,
};
use super::table::collapse_witness;
use super::{SharpError, Site, SliceMorphism, SliceObject};
use crate::id::Id;
use crate::simpset::standard::formal_to_vertex_list;
use crate::simpset::{FormalSimplex, SMap};
use crate::util::compound_id;
use std::collections::{BTreeMap, BTreeSet};

/// A chain of composable vertical morphisms: level-0 slice objects joined
/// by level-0 slice morphisms.  A chain of length 0 is a single object.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalChain {
    points: Vec<SliceObject>,
    maps: Vec<SliceMorphism>,
}

impl VerticalChain {
    pub fn new(
        points: Vec<SliceObject>,
        maps: Vec<SliceMorphism>,
    ) -> Result<Self, SharpError> {
        if points.is_empty() || points.len() != maps.len() + 1 {
            return Err(SharpError::InvalidSlice(
                "a chain needs k+1 objects for k morphisms".into(),
            ));
        }
        let site = points[0].site();
        for p in &points {
            if p.level() != 0 {
                return Err(SharpError::InvalidSlice(
                    "chain objects must have level 0".into(),
                ));
            }
            if p.site() != site {
                return Err(SharpError::Mismatch(
                    "chain objects must share a site".into(),
                ));
            }
        }
        for (k, m) in maps.iter().enumerate() {
            if m.src() != points[k] || m.dst() != points[k + 1] {
                return Err(SharpError::IncompatibleBoundary(format!(
                    "chain morphism {k} does not join objects {k} and {}",
                    k + 1
                )));
            }
        }
        Ok(VerticalChain { points, maps })
    }

    pub fn object(x: SliceObject) -> Result<Self, SharpError> {
        Self::new(vec![x], Vec::new())
    }

    /// Number of morphisms in the chain.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn site(&self) -> Site {
        self.points[0].site()
    }

    pub fn point(&self, k: usize) -> &SliceObject {
        &self.points[k]
    }

    pub fn map(&self, k: usize) -> &SliceMorphism {
        &self.maps[k]
    }

    pub fn face(&self, i: usize) -> Result<VerticalChain, SharpError> {
        let n = self.len();
        if n == 0 || i > n {
            return Err(SharpError::BadIndex { index: i, level: n });
        }
        let mut points = self.points.clone();
        points.remove(i);
        let maps = if i == 0 {
            self.maps[1..].to_vec()
        } else if i == n {
            self.maps[..n - 1].to_vec()
        } else {
            let mut maps = self.maps.clone();
            let glued = SliceMorphism::compose(&self.maps[i], &self.maps[i - 1])?;
            maps.splice(i - 1..=i, [glued]);
            maps
        };
        VerticalChain::new(points, maps)
    }

    pub fn degeneracy(&self, i: usize) -> Result<VerticalChain, SharpError> {
        let n = self.len();
        if i > n {
            return Err(SharpError::BadIndex { index: i, level: n });
        }
        let mut points = self.points.clone();
        points.insert(i, self.points[i].clone());
        let mut maps = self.maps.clone();
        maps.insert(i, SliceMorphism::identity(&self.points[i]));
        VerticalChain::new(points, maps)
    }

    /// A deterministic tag identifying the chain, used to keep interior
    /// cell names of distinct companions apart.
    fn tag(&self) -> String {
        let mut parts: Vec<String> = self.maps.iter().map(|m| format!("{m:?}")).collect();
        if parts.is_empty() {
            parts.push(format!("{:?}", self.points[0]));
        }
        Id::derive("cp", &parts).to_string()
    }
}

/// A companion with its structure map and the certificates relating each
/// of its faces to the companion of the corresponding face chain.
#[derive(Debug, Clone)]
pub struct CompanionResult {
    pub companion: SliceObject,
    pub phi: SliceMorphism,
    pub face_certificates: Vec<MatchCertificate>,
}

fn cert_morphism(
    cert: &MatchCertificate,
    obj: &SliceObject,
    face: usize,
) -> Result<SliceMorphism, SharpError> {
    match cert {
        MatchCertificate::Exact => Ok(SliceMorphism::identity(&face_slice(obj, face)?)),
        MatchCertificate::Iso(t) => Ok(t.clone()),
    }
}

/// The companion of a chain: base case the object itself, recursion step
/// the universal extension of the degenerate power of the first object
/// along the companions of the faces.
pub fn companion_simplex(
    chain: &VerticalChain,
    budget: u64,
) -> Result<CompanionResult, SharpError> {
    let n = chain.len();
    let x0 = chain.point(0).clone();
    if n == 0 {
        return Ok(CompanionResult {
            companion: x0.clone(),
            phi: SliceMorphism::identity(&x0),
            face_certificates: Vec::new(),
        });
    }

    let mut sub = Vec::with_capacity(n + 1);
    for i in 0..=n {
        sub.push(companion_simplex(&chain.face(i)?, budget)?);
    }

    let x = s_power(&x0, n)?;
    let mut faces = Vec::with_capacity(n + 1);
    for (i, s) in sub.iter().enumerate() {
        let iso = spower_face_iso(&x0, n, i)?;
        let f = if i == 0 {
            let into_next = s_power_map(chain.map(0), n - 1)?;
            SliceMorphism::compose(&s.phi, &SliceMorphism::compose(&into_next, &iso)?)?
        } else {
            SliceMorphism::compose(&s.phi, &iso)?
        };
        faces.push(f);
    }

    // Overlaps that fail to agree literally (degenerate chains) are
    // reconciled by mediators composed out of the lower certificates.
    let mut mediators = BTreeMap::new();
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let lhs = face_map(&faces[j], i)?;
                let rhs = face_map(&faces[i], j - 1)?;
                if lhs == rhs {
                    continue;
                }
                let cj = cert_morphism(&sub[j].face_certificates[i], &sub[j].companion, i)?;
                let ci =
                    cert_morphism(&sub[i].face_certificates[j - 1], &sub[i].companion, j - 1)?;
                let ci_inv = ci.inverse().ok_or_else(|| {
                    SharpError::FaceMismatch("a face certificate is not invertible".into())
                })?;
                mediators.insert((i, j), SliceMorphism::compose(&ci_inv, &cj)?);
            }
        }
    }

    let ext = if mediators.is_empty() {
        let cover: Vec<(BTreeSet<usize>, SliceMorphism)> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| ((0..=n).filter(|&v| v != i).collect(), f.clone()))
            .collect();
        strong_equipment_extend(&x, &cover, budget)?
    } else {
        equipment_extend(
            &BoundaryAssignment::with_mediators(x, faces, mediators)?,
            budget,
        )?
    };

    let (companion, phi) = relabel_interior(&chain.tag(), ext.object, ext.filler)?;
    Ok(CompanionResult {
        companion,
        phi,
        face_certificates: ext.face_certificates,
    })
}

/// Rename the cells that touch every vertex of the structure simplex after
/// the chain: faces of a companion only see boundary cells, so this keeps
/// the interiors of distinct companions from colliding when they meet as
/// faces of a bigger one.
fn relabel_interior(
    tag: &str,
    object: SliceObject,
    filler: SliceMorphism,
) -> Result<(SliceObject, SliceMorphism), SharpError> {
    let n = object.level();
    match &object {
        SliceObject::Sset(y) => {
            let mut fwd: BTreeMap<Id, Id> = BTreeMap::new();
            let mut interior = Vec::new();
            for c in y.carrier().all_cells() {
                let verts: BTreeSet<usize> = formal_to_vertex_list(y.structure().apply_cell(c))
                    .into_iter()
                    .collect();
                if verts.len() == n + 1 {
                    interior.push(c.clone());
                } else {
                    fwd.insert(c.clone(), c.clone());
                }
            }
            if interior.is_empty() {
                return Ok((object, filler));
            }
            let mut used: BTreeSet<Id> = fwd.keys().cloned().collect();
            for c in interior {
                let mut id = compound_id("cp", &[tag.to_string(), c.to_string()]);
                while !used.insert(id.clone()) {
                    id = compound_id("ext", &[id.to_string()]);
                }
                fwd.insert(c, id);
            }
            let carrier = super::extend::rename_sset(y.carrier(), &fwd)?;
            let structure_assign: BTreeMap<Id, FormalSimplex> = y
                .carrier()
                .all_cells()
                .map(|c| (fwd[c].clone(), y.structure().apply_cell(c).clone()))
                .collect();
            let structure = SMap::new(
                carrier.clone(),
                crate::simpset::std_simplex(n),
                structure_assign,
            )?;
            let renamed = super::slice::SsetSlice::new(n, carrier, structure)?;
            let SliceMorphism::Sset { src, map, .. } = &filler else {
                return Err(SharpError::Mismatch("filler site mismatch".into()));
            };
            let new_assign: BTreeMap<Id, FormalSimplex> = src
                .carrier()
                .all_cells()
                .map(|c| {
                    let img = map.apply_cell(c);
                    (
                        c.clone(),
                        FormalSimplex {
                            base: fwd[&img.base].clone(),
                            word: img.word.clone(),
                        },
                    )
                })
                .collect();
            let new_map = SMap::new(src.carrier().clone(), renamed.carrier().clone(), new_assign)?;
            let phi = SliceMorphism::new_sset(src.clone(), renamed.clone(), new_map)?;
            Ok((SliceObject::Sset(renamed), phi))
        }
        SliceObject::Cat(y) => {
            let ob_fwd: BTreeMap<Id, Id> = y
                .carrier()
                .objects()
                .iter()
                .map(|o| (o.clone(), o.clone()))
                .collect();
            let mut mor_fwd: BTreeMap<Id, Id> = BTreeMap::new();
            let mut interior = Vec::new();
            for m in y.carrier().morphisms() {
                let mut verts: BTreeSet<usize> = BTreeSet::new();
                verts.insert(y.part(y.carrier().src(m)));
                verts.insert(y.part(y.carrier().dst(m)));
                if verts.len() == n + 1 {
                    interior.push(m.clone());
                } else {
                    mor_fwd.insert(m.clone(), m.clone());
                }
            }
            if interior.is_empty() {
                return Ok((object, filler));
            }
            let mut used: BTreeSet<Id> = mor_fwd.keys().cloned().collect();
            for m in interior {
                let mut id = compound_id("cp", &[tag.to_string(), m.to_string()]);
                while !used.insert(id.clone()) {
                    id = compound_id("ext", &[id.to_string()]);
                }
                mor_fwd.insert(m, id);
            }
            let carrier = super::extend::rename_cat(y.carrier(), &ob_fwd, &mor_fwd)?;
            let part: BTreeMap<Id, usize> = y
                .carrier()
                .objects()
                .iter()
                .map(|o| (o.clone(), y.part(o)))
                .collect();
            let renamed = super::slice::CatSlice::new(n, carrier, part)?;
            let SliceMorphism::Cat { src, map, .. } = &filler else {
                return Err(SharpError::Mismatch("filler site mismatch".into()));
            };
            let fob: BTreeMap<Id, Id> = src
                .carrier()
                .objects()
                .iter()
                .map(|o| (o.clone(), map.ob(o).clone()))
                .collect();
            let fmor: BTreeMap<Id, Id> = src
                .carrier()
                .morphisms()
                .iter()
                .map(|m| (m.clone(), mor_fwd[map.mor(m)].clone()))
                .collect();
            let new_map = crate::fincat::FinFunctor::new(
                src.carrier().clone(),
                renamed.carrier().clone(),
                fob,
                fmor,
            )?;
            let phi = SliceMorphism::new_cat(src.clone(), renamed.clone(), new_map)?;
            Ok((SliceObject::Cat(renamed), phi))
        }
        SliceObject::Cospan(_) => Ok((object, filler)),
    }
}

/// The tower representation of the companion: starting from the degenerate
/// power of the first object, each step maps the repeated tail down along
/// the next chain morphism and fills the cover.
pub fn tower_representation(
    chain: &VerticalChain,
    budget: u64,
) -> Result<SliceObject, SharpError> {
    let n = chain.len();
    let x0 = chain.point(0).clone();
    if n == 0 {
        return Ok(x0);
    }
    let mut z = s_power(&x0, n)?;
    for k in 1..=n {
        let mut cover: Vec<(BTreeSet<usize>, SliceMorphism)> = Vec::with_capacity(k + 1);
        for j in 0..k {
            let r = restrict_object(&z, &[j])?;
            cover.push(([j].into_iter().collect(), SliceMorphism::identity(&r)));
        }
        let tail: Vec<usize> = (k..=n).collect();
        let r = restrict_object(&z, &tail)?;
        let spow = s_power(chain.point(k - 1), n - k)?;
        let rho = match slices_match(&r, &spow, budget)? {
            MatchCertificate::Exact => SliceMorphism::identity(&r),
            MatchCertificate::Iso(m) => m,
        };
        let step = s_power_map(chain.map(k - 1), n - k)?;
        cover.push((
            tail.into_iter().collect(),
            SliceMorphism::compose(&step, &rho)?,
        ));
        z = strong_equipment_extend(&z, &cover, budget)?.object;
    }
    Ok(z)
}

/// The oplax comparison map α_i : (s_iσ)* → s_i(σ*).
///
/// Cells in the image of the structure map φ of (s_iσ)* go where the
/// degenerated φ of σ* sends them; boundary cells are pushed through the
/// face certificates into recursively built comparison maps, with the two
/// collapse faces handled by the d_i s_i ≅ 1 witness.  Implemented on the
/// sset site.
pub fn comparison_map(
    chain: &VerticalChain,
    i: usize,
    budget: u64,
) -> Result<SliceMorphism, SharpError> {
    if chain.site() != Site::Sset {
        return Err(SharpError::Mismatch(
            "comparison maps are implemented on the sset site".into(),
        ));
    }
    let n = chain.len();
    if i > n {
        return Err(SharpError::BadIndex { index: i, level: n });
    }
    let lower = companion_simplex(chain, budget)?;
    let dchain = chain.degeneracy(i)?;
    let upper = companion_simplex(&dchain, budget)?;
    let target = degeneracy_slice(&lower.companion, i)?;

    let degen_phi = degeneracy_map(&lower.phi, i)?;
    let degen_iso = spower_degen_iso(chain.point(0), n, i)?;
    let degen_iso_inv = degen_iso.inverse().ok_or_else(|| {
        SharpError::Mismatch("degeneracy comparison of powers is not invertible".into())
    })?;
    let h = SliceMorphism::compose(&degen_phi, &degen_iso_inv)?;

    let uc = upper.companion.as_sset()?.clone();
    let tgt_s = target.as_sset()?.clone();
    let SliceMorphism::Sset { map: psi, .. } = &upper.phi else {
        return Err(SharpError::Mismatch("phi site mismatch".into()));
    };
    let SliceMorphism::Sset { map: h_map, .. } = &h else {
        return Err(SharpError::Mismatch("comparison base site mismatch".into()));
    };

    let mut assign: BTreeMap<Id, FormalSimplex> = BTreeMap::new();
    let mut put = |cell: &Id, val: FormalSimplex| -> Result<(), SharpError> {
        match assign.get(cell) {
            None => {
                assign.insert(cell.clone(), val);
                Ok(())
            }
            Some(v) if *v == val => Ok(()),
            Some(_) => Err(SharpError::VerificationFailed(format!(
                "comparison map is not well-defined at cell {cell}"
            ))),
        }
    };

    for c in psi.source().all_cells() {
        let img = psi.apply_cell(c);
        if img.word.is_empty() {
            put(&img.base, h_map.apply_cell(c).clone())?;
        }
    }

    for j in 0..=(n + 1) {
        let u_j: SliceMorphism = if j == i || j == i + 1 {
            let w = collapse_witness(&lower.companion, i, j)?;
            let MatchCertificate::Iso(m) = w.certificate else {
                return Err(SharpError::Mismatch(
                    "collapse witness is not an isomorphism on this site".into(),
                ));
            };
            m.inverse().ok_or_else(|| {
                SharpError::Mismatch("collapse witness is not invertible".into())
            })?
        } else if j < i {
            let alpha = comparison_map(&chain.face(j)?, i - 1, budget)?;
            let cert = cert_morphism(&lower.face_certificates[j], &lower.companion, j)?;
            let cert_inv = cert.inverse().ok_or_else(|| {
                SharpError::FaceMismatch("a face certificate is not invertible".into())
            })?;
            SliceMorphism::compose(&degeneracy_map(&cert_inv, i - 1)?, &alpha)?
        } else {
            let alpha = comparison_map(&chain.face(j - 1)?, i, budget)?;
            let cert = cert_morphism(&lower.face_certificates[j - 1], &lower.companion, j - 1)?;
            let cert_inv = cert.inverse().ok_or_else(|| {
                SharpError::FaceMismatch("a face certificate is not invertible".into())
            })?;
            SliceMorphism::compose(&degeneracy_map(&cert_inv, i)?, &alpha)?
        };

        let region = face_slice(&upper.companion, j)?;
        let cert_j = cert_morphism(&upper.face_certificates[j], &upper.companion, j)?;
        let SliceMorphism::Sset { map: cert_map, .. } = &cert_j else {
            return Err(SharpError::Mismatch("certificate site mismatch".into()));
        };
        let SliceMorphism::Sset { map: u_map, .. } = &u_j else {
            return Err(SharpError::Mismatch("comparison component site mismatch".into()));
        };
        for r in region.as_sset()?.carrier().all_cells() {
            let a = cert_map.apply_cell(r);
            if !a.word.is_empty() {
                return Err(SharpError::FaceMismatch(
                    "face certificate degenerates a cell".into(),
                ));
            }
            put(r, u_map.apply_cell(&a.base).clone())?;
        }
    }

    let m = SMap::new(uc.carrier().clone(), tgt_s.carrier().clone(), assign)?;
    let alpha = SliceMorphism::new_sset(uc, tgt_s, m)?;
    if SliceMorphism::compose(&alpha, &upper.phi)? != h {
        return Err(SharpError::VerificationFailed(
            "comparison map does not commute with the structure maps".into(),
        ));
    }
    Ok(alpha)
}
