//! Niche filling: extend an object along a prescribed family of boundary maps.
//!
//! A niche at level `n` is a source object `x` together with maps
//! `f^i : d_i x -> y^i` out of each of its faces.  Filling produces a level-`n`
//! object `y` whose faces realise the `y^i` and a filler `x -> y` restricting
//! to the `f^i`.  On the cat and sset sites the fill is a genuine colimit and
//! comes with a universal property; on the cospan site the answer is assembled
//! directly and fails loudly when the legs cannot be reconciled.

use super::compare::MatchCertificate;
use super::slice::{face_map, face_slice, CatSlice, SsetSlice};
use super::{SharpError, Site, SliceMorphism, SliceObject};
use crate::fincat::{
    cat_colimit_graph, enumerate_functors, CatEdge, CatGlueDiagram, FinCat, FinFunctor,
    FincatError,
};
use crate::id::Id;
use crate::simpset::colimit::SsetEdge;
use crate::simpset::maps_enum::enumerate_maps_over;
use crate::simpset::standard::{
    formal_to_vertex_list, subcomplex_inclusion, vertex_list_to_formal,
};
use crate::simpset::{colimit, FormalSimplex, SMap, SSet, SimpsetError, SsetDiagram};
use crate::util::compound_id;
use std::collections::{BTreeMap, BTreeSet};

/// A niche: the source object with one boundary map per face, plus optional
/// mediating isomorphisms reconciling the overlaps of the prescribed targets.
///
/// For each `i < j` the targets must satisfy `d_i y^j = d_(j-1) y^i` and the
/// maps the matching compatibility.  When the equality is literal no mediator
/// is needed; otherwise an isomorphism `t_ij : d_i y^j -> d_(j-1) y^i` must be
/// supplied and is checked against the boundary maps.
#[derive(Debug, Clone)]
pub struct BoundaryAssignment {
    source: SliceObject,
    faces: Vec<SliceMorphism>,
    mediators: BTreeMap<(usize, usize), SliceMorphism>,
}

impl BoundaryAssignment {
    pub fn new(source: SliceObject, faces: Vec<SliceMorphism>) -> Result<Self, SharpError> {
        Self::with_mediators(source, faces, BTreeMap::new())
    }

    pub fn with_mediators(
        source: SliceObject,
        faces: Vec<SliceMorphism>,
        mediators: BTreeMap<(usize, usize), SliceMorphism>,
    ) -> Result<Self, SharpError> {
        let n = source.level();
        if n == 0 {
            return Err(SharpError::InvalidSlice(
                "a level-0 object has no faces to extend along".into(),
            ));
        }
        if faces.len() != n + 1 {
            return Err(SharpError::IncompatibleBoundary(format!(
                "expected {} boundary maps, got {}",
                n + 1,
                faces.len()
            )));
        }
        for (i, f) in faces.iter().enumerate() {
            let expected = face_slice(&source, i)?;
            if f.src() != expected {
                return Err(SharpError::IncompatibleBoundary(format!(
                    "boundary map {i} does not start at face {i} of the source"
                )));
            }
        }
        for (&(i, j), t) in &mediators {
            if i >= j || j > n {
                return Err(SharpError::IncompatibleBoundary(format!(
                    "mediator index ({i},{j}) is not an ordered face pair"
                )));
            }
            if !t.is_iso() {
                return Err(SharpError::IncompatibleBoundary(format!(
                    "mediator ({i},{j}) is not invertible"
                )));
            }
        }
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = face_map(&faces[j], i)?;
                    let rhs = face_map(&faces[i], j - 1)?;
                    match mediators.get(&(i, j)) {
                        None => {
                            if lhs != rhs {
                                return Err(SharpError::IncompatibleBoundary(format!(
                                    "faces {i} and {j} disagree on their overlap and no mediator was given"
                                )));
                            }
                        }
                        Some(t) => {
                            if t.src() != lhs.dst() || t.dst() != rhs.dst() {
                                return Err(SharpError::IncompatibleBoundary(format!(
                                    "mediator ({i},{j}) has the wrong endpoints"
                                )));
                            }
                            if SliceMorphism::compose(t, &lhs)? != rhs {
                                return Err(SharpError::IncompatibleBoundary(format!(
                                    "mediator ({i},{j}) does not reconcile the boundary maps"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(BoundaryAssignment {
            source,
            faces,
            mediators,
        })
    }

    pub fn source(&self) -> &SliceObject {
        &self.source
    }

    pub fn faces(&self) -> &[SliceMorphism] {
        &self.faces
    }

    pub fn mediator(&self, i: usize, j: usize) -> Option<&SliceMorphism> {
        self.mediators.get(&(i, j))
    }

    fn target(&self, i: usize) -> SliceObject {
        self.faces[i].dst()
    }
}

/// The result of filling a niche.
///
/// `face_certificates[i]` relates `d_i object` to the prescribed target
/// `y^i`: `Exact` when they are literally equal, otherwise an isomorphism
/// from the computed face onto the target.  In either case the filler
/// restricts to the boundary map through the certificate.
#[derive(Debug, Clone)]
pub struct Extension {
    pub object: SliceObject,
    pub filler: SliceMorphism,
    pub face_certificates: Vec<MatchCertificate>,
}

/// Fill a niche.  `budget` bounds the composite closure on the cat site.
pub fn equipment_extend(b: &BoundaryAssignment, budget: u64) -> Result<Extension, SharpError> {
    match b.source.site() {
        Site::Sset => sset_extend(b),
        Site::Cat => cat_extend(b, budget),
        Site::Cospan => cospan_extend(b),
    }
}

fn fresh(used: &mut BTreeSet<Id>, want: Id) -> Id {
    let mut id = want;
    while !used.insert(id.clone()) {
        id = compound_id("ext", &[id.to_string()]);
    }
    id
}

fn embed_vertex(v: usize, i: usize) -> usize {
    v + usize::from(v >= i)
}

// ---------------------------------------------------------------------------
// sset site
// ---------------------------------------------------------------------------

pub(crate) fn rename_sset(x: &SSet, fwd: &BTreeMap<Id, Id>) -> Result<SSet, SimpsetError> {
    let cells: Vec<Vec<Id>> = match x.max_dim() {
        None => Vec::new(),
        Some(top) => (0..=top)
            .map(|k| x.cells(k).iter().map(|c| fwd[c].clone()).collect())
            .collect(),
    };
    let mut faces = BTreeMap::new();
    for c in x.all_cells() {
        if x.dim_of(c) == 0 {
            continue;
        }
        let renamed: Vec<FormalSimplex> = x
            .faces_of(c)
            .iter()
            .map(|f| FormalSimplex {
                base: fwd[&f.base].clone(),
                word: f.word.clone(),
            })
            .collect();
        faces.insert(fwd[c].clone(), renamed);
    }
    SSet::new(cells, faces)
}

fn sset_extend(b: &BoundaryAssignment) -> Result<Extension, SharpError> {
    let x = b.source.as_sset()?;
    let n = x.level();
    let node_x = Id::new("x");
    let yname = |i: usize| Id::new(format!("y{i}"));
    let dxname = |i: usize| Id::new(format!("dx{i}"));
    let dyname = |i: usize, j: usize| Id::new(format!("dy{i}_{j}"));

    let mut y_slices: Vec<SsetSlice> = Vec::with_capacity(n + 1);
    let mut f_maps: Vec<SMap> = Vec::with_capacity(n + 1);
    for f in &b.faces {
        let SliceMorphism::Sset { dst, map, .. } = f else {
            return Err(SharpError::Mismatch(
                "boundary maps must live on the sset site".into(),
            ));
        };
        y_slices.push(dst.clone());
        f_maps.push(map.clone());
    }

    let mut nodes: BTreeMap<Id, SSet> = BTreeMap::new();
    let mut edges: Vec<SsetEdge> = Vec::new();
    nodes.insert(node_x.clone(), x.carrier().clone());
    for i in 0..=n {
        let dx = face_slice(&b.source, i)?;
        let dx = dx.as_sset()?.clone();
        nodes.insert(dxname(i), dx.carrier().clone());
        nodes.insert(yname(i), y_slices[i].carrier().clone());
        edges.push(SsetEdge {
            src: dxname(i),
            dst: node_x.clone(),
            map: subcomplex_inclusion(dx.carrier(), x.carrier())?,
        });
        edges.push(SsetEdge {
            src: dxname(i),
            dst: yname(i),
            map: f_maps[i].clone(),
        });
    }
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let dy = face_slice(&SliceObject::Sset(y_slices[j].clone()), i)?;
                let dy = dy.as_sset()?.clone();
                nodes.insert(dyname(i, j), dy.carrier().clone());
                edges.push(SsetEdge {
                    src: dyname(i, j),
                    dst: yname(j),
                    map: subcomplex_inclusion(dy.carrier(), y_slices[j].carrier())?,
                });
                let into_i = match b.mediator(i, j) {
                    None => subcomplex_inclusion(dy.carrier(), y_slices[i].carrier())?,
                    Some(t) => {
                        let SliceMorphism::Sset {
                            dst: tdst,
                            map: tmap,
                            ..
                        } = t
                        else {
                            return Err(SharpError::Mismatch(
                                "mediators must live on the sset site".into(),
                            ));
                        };
                        SMap::compose(
                            &subcomplex_inclusion(tdst.carrier(), y_slices[i].carrier())?,
                            tmap,
                        )?
                    }
                };
                edges.push(SsetEdge {
                    src: dyname(i, j),
                    dst: yname(i),
                    map: into_i,
                });
            }
        }
    }

    let colim = colimit(&SsetDiagram::new(nodes, edges)?)?;

    // Which cell of each boundary piece (resp. of x) lands on each glued cell.
    let mut face_member: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); n + 1];
    for i in 0..=n {
        let leg = &colim.cocone[&yname(i)];
        for a in y_slices[i].carrier().all_cells() {
            let img = leg.apply_cell(a);
            if img.word.is_empty() {
                face_member[i].entry(img.base.clone()).or_insert_with(|| a.clone());
            }
        }
    }
    let leg_x = colim.cocone[&node_x].clone();
    let mut x_member: BTreeMap<Id, Id> = BTreeMap::new();
    for c in x.carrier().all_cells() {
        let img = leg_x.apply_cell(c);
        if img.word.is_empty() {
            x_member.entry(img.base.clone()).or_insert_with(|| c.clone());
        }
    }

    // Rename glued cells after their members, boundary pieces first so the
    // lowest face that touches a cell decides its name.
    let mut fwd: BTreeMap<Id, Id> = BTreeMap::new();
    let mut used: BTreeSet<Id> = BTreeSet::new();
    for i in 0..=n {
        let leg = &colim.cocone[&yname(i)];
        for a in y_slices[i].carrier().all_cells() {
            let img = leg.apply_cell(a);
            if img.word.is_empty() && !fwd.contains_key(&img.base) {
                let id = fresh(&mut used, a.clone());
                fwd.insert(img.base.clone(), id);
            }
        }
    }
    for c in x.carrier().all_cells() {
        let img = leg_x.apply_cell(c);
        if img.word.is_empty() && !fwd.contains_key(&img.base) {
            let id = fresh(&mut used, c.clone());
            fwd.insert(img.base.clone(), id);
        }
    }
    for k in colim.object.all_cells() {
        if !fwd.contains_key(k) {
            let id = fresh(&mut used, k.clone());
            fwd.insert(k.clone(), id);
        }
    }

    // The structure map over the standard simplex, read off any member.
    let mut structure_assign: BTreeMap<Id, FormalSimplex> = BTreeMap::new();
    for k in colim.object.all_cells() {
        let mut found: Option<FormalSimplex> = x_member
            .get(k)
            .map(|c| x.structure().apply_cell(c).clone());
        for i in 0..=n {
            let Some(a) = face_member[i].get(k) else { continue };
            let verts = formal_to_vertex_list(y_slices[i].structure().apply_cell(a));
            let emb: Vec<usize> = verts.iter().map(|&v| embed_vertex(v, i)).collect();
            let emb = vertex_list_to_formal(&emb);
            match &found {
                None => found = Some(emb),
                Some(f) if *f == emb => {}
                Some(_) => {
                    return Err(SharpError::IncompatibleBoundary(format!(
                        "glued cell {k} inherits two different structure simplices"
                    )))
                }
            }
        }
        let Some(f) = found else {
            return Err(SharpError::IncompatibleBoundary(format!(
                "glued cell {k} has no structure witness"
            )));
        };
        structure_assign.insert(fwd[k].clone(), f);
    }

    let carrier = rename_sset(&colim.object, &fwd)?;
    let structure = SMap::new(
        carrier.clone(),
        crate::simpset::std_simplex(n),
        structure_assign,
    )?;
    let y = SsetSlice::new(n, carrier, structure)?;
    let yobj = SliceObject::Sset(y.clone());

    let filler_assign: BTreeMap<Id, FormalSimplex> = x
        .carrier()
        .all_cells()
        .map(|c| {
            let img = leg_x.apply_cell(c);
            (
                c.clone(),
                FormalSimplex {
                    base: fwd[&img.base].clone(),
                    word: img.word.clone(),
                },
            )
        })
        .collect();
    let fmap = SMap::new(x.carrier().clone(), y.carrier().clone(), filler_assign)?;
    let filler = SliceMorphism::new_sset(x.clone(), y.clone(), fmap)?;

    let back: BTreeMap<Id, Id> = fwd.iter().map(|(k, r)| (r.clone(), k.clone())).collect();
    let mut certs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let di = face_slice(&yobj, i)?;
        if di == SliceObject::Sset(y_slices[i].clone()) {
            certs.push(MatchCertificate::Exact);
            continue;
        }
        let di_s = di.as_sset()?.clone();
        let mut assign = BTreeMap::new();
        for r in di_s.carrier().all_cells() {
            let k = back.get(r).ok_or_else(|| {
                SharpError::FaceMismatch(format!("face {i} contains an unglued cell {r}"))
            })?;
            let a = face_member[i].get(k).ok_or_else(|| {
                SharpError::FaceMismatch(format!(
                    "face {i} of the extension has a cell {r} outside the prescribed target"
                ))
            })?;
            assign.insert(r.clone(), FormalSimplex::nondeg(a.clone()));
        }
        let m = SMap::new(di_s.carrier().clone(), y_slices[i].carrier().clone(), assign)?;
        let iso = SliceMorphism::new_sset(di_s, y_slices[i].clone(), m)?;
        if !iso.is_iso() {
            return Err(SharpError::FaceMismatch(format!(
                "face {i} of the extension is not isomorphic to the prescribed target"
            )));
        }
        certs.push(MatchCertificate::Iso(iso));
    }

    check_filler_restrictions(b, &filler, &certs)?;
    Ok(Extension {
        object: yobj,
        filler,
        face_certificates: certs,
    })
}

// ---------------------------------------------------------------------------
// cat site
// ---------------------------------------------------------------------------

fn inclusion_functor(sub: &FinCat, ambient: &FinCat) -> Result<FinFunctor, FincatError> {
    let ob = sub.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    let mor = sub.morphisms().iter().map(|m| (m.clone(), m.clone())).collect();
    FinFunctor::new(sub.clone(), ambient.clone(), ob, mor)
}

pub(crate) fn rename_cat(
    c: &FinCat,
    ob: &BTreeMap<Id, Id>,
    mor: &BTreeMap<Id, Id>,
) -> Result<FinCat, FincatError> {
    let objects: Vec<Id> = c.objects().iter().map(|o| ob[o].clone()).collect();
    let morphisms: Vec<(Id, Id, Id)> = c
        .morphisms()
        .iter()
        .map(|m| (mor[m].clone(), ob[c.src(m)].clone(), ob[c.dst(m)].clone()))
        .collect();
    let identities: BTreeMap<Id, Id> = c
        .objects()
        .iter()
        .map(|o| (ob[o].clone(), mor[c.identity(o)].clone()))
        .collect();
    let table: BTreeMap<(Id, Id), Id> = c
        .composable_pairs()
        .map(|(g, f)| {
            let gf = c.compose(g, f);
            ((mor[g].clone(), mor[f].clone()), mor[gf].clone())
        })
        .collect();
    FinCat::new(objects, morphisms, identities, table)
}

fn cat_extend(b: &BoundaryAssignment, budget: u64) -> Result<Extension, SharpError> {
    let x = b.source.as_cat()?;
    let n = x.level();
    let node_x = Id::new("x");
    let yname = |i: usize| Id::new(format!("y{i}"));
    let dxname = |i: usize| Id::new(format!("dx{i}"));
    let dyname = |i: usize, j: usize| Id::new(format!("dy{i}_{j}"));

    let mut y_slices: Vec<CatSlice> = Vec::with_capacity(n + 1);
    let mut f_maps: Vec<FinFunctor> = Vec::with_capacity(n + 1);
    for f in &b.faces {
        let SliceMorphism::Cat { dst, map, .. } = f else {
            return Err(SharpError::Mismatch(
                "boundary maps must live on the cat site".into(),
            ));
        };
        y_slices.push(dst.clone());
        f_maps.push(map.clone());
    }

    let mut nodes: BTreeMap<Id, FinCat> = BTreeMap::new();
    let mut edges: Vec<CatEdge> = Vec::new();
    nodes.insert(node_x.clone(), x.carrier().clone());
    for i in 0..=n {
        let dx = face_slice(&b.source, i)?;
        let dx = dx.as_cat()?.clone();
        nodes.insert(dxname(i), dx.carrier().clone());
        nodes.insert(yname(i), y_slices[i].carrier().clone());
        edges.push(CatEdge {
            src: dxname(i),
            dst: node_x.clone(),
            map: inclusion_functor(dx.carrier(), x.carrier())?,
        });
        edges.push(CatEdge {
            src: dxname(i),
            dst: yname(i),
            map: f_maps[i].clone(),
        });
    }
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let dy = face_slice(&SliceObject::Cat(y_slices[j].clone()), i)?;
                let dy = dy.as_cat()?.clone();
                nodes.insert(dyname(i, j), dy.carrier().clone());
                edges.push(CatEdge {
                    src: dyname(i, j),
                    dst: yname(j),
                    map: inclusion_functor(dy.carrier(), y_slices[j].carrier())?,
                });
                let into_i = match b.mediator(i, j) {
                    None => inclusion_functor(dy.carrier(), y_slices[i].carrier())?,
                    Some(t) => {
                        let SliceMorphism::Cat {
                            dst: tdst,
                            map: tmap,
                            ..
                        } = t
                        else {
                            return Err(SharpError::Mismatch(
                                "mediators must live on the cat site".into(),
                            ));
                        };
                        FinFunctor::compose(
                            &inclusion_functor(tdst.carrier(), y_slices[i].carrier())?,
                            tmap,
                        )?
                    }
                };
                edges.push(CatEdge {
                    src: dyname(i, j),
                    dst: yname(i),
                    map: into_i,
                });
            }
        }
    }

    let colim = cat_colimit_graph(&CatGlueDiagram::new(nodes, edges)?, budget)?;
    let glued = &colim.object;

    let mut ob_face: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); n + 1];
    let mut mor_face: Vec<BTreeMap<Id, Id>> = vec![BTreeMap::new(); n + 1];
    for i in 0..=n {
        let leg = &colim.legs[&yname(i)];
        for o in y_slices[i].carrier().objects() {
            ob_face[i].entry(leg.ob(o).clone()).or_insert_with(|| o.clone());
        }
        for m in y_slices[i].carrier().morphisms() {
            mor_face[i].entry(leg.mor(m).clone()).or_insert_with(|| m.clone());
        }
    }
    let leg_x = colim.legs[&node_x].clone();
    let mut x_ob: BTreeMap<Id, Id> = BTreeMap::new();
    let mut x_mor: BTreeMap<Id, Id> = BTreeMap::new();
    for o in x.carrier().objects() {
        x_ob.entry(leg_x.ob(o).clone()).or_insert_with(|| o.clone());
    }
    for m in x.carrier().morphisms() {
        x_mor.entry(leg_x.mor(m).clone()).or_insert_with(|| m.clone());
    }

    let mut ob_fwd: BTreeMap<Id, Id> = BTreeMap::new();
    let mut mor_fwd: BTreeMap<Id, Id> = BTreeMap::new();
    let mut ob_used: BTreeSet<Id> = BTreeSet::new();
    let mut mor_used: BTreeSet<Id> = BTreeSet::new();
    for i in 0..=n {
        let leg = &colim.legs[&yname(i)];
        for o in y_slices[i].carrier().objects() {
            let k = leg.ob(o);
            if !ob_fwd.contains_key(k) {
                let id = fresh(&mut ob_used, o.clone());
                ob_fwd.insert(k.clone(), id);
            }
        }
        for m in y_slices[i].carrier().morphisms() {
            let k = leg.mor(m);
            if !mor_fwd.contains_key(k) {
                let id = fresh(&mut mor_used, m.clone());
                mor_fwd.insert(k.clone(), id);
            }
        }
    }
    for o in x.carrier().objects() {
        let k = leg_x.ob(o);
        if !ob_fwd.contains_key(k) {
            let id = fresh(&mut ob_used, o.clone());
            ob_fwd.insert(k.clone(), id);
        }
    }
    for m in x.carrier().morphisms() {
        let k = leg_x.mor(m);
        if !mor_fwd.contains_key(k) {
            let id = fresh(&mut mor_used, m.clone());
            mor_fwd.insert(k.clone(), id);
        }
    }
    for o in glued.objects() {
        if !ob_fwd.contains_key(o) {
            let id = fresh(&mut ob_used, o.clone());
            ob_fwd.insert(o.clone(), id);
        }
    }
    for m in glued.morphisms() {
        if !mor_fwd.contains_key(m) {
            let id = fresh(&mut mor_used, m.clone());
            mor_fwd.insert(m.clone(), id);
        }
    }

    let mut part: BTreeMap<Id, usize> = BTreeMap::new();
    for k in glued.objects() {
        let mut found: Option<usize> = x_ob.get(k).map(|o| x.part(o));
        for i in 0..=n {
            let Some(o) = ob_face[i].get(k) else { continue };
            let p = embed_vertex(y_slices[i].part(o), i);
            match found {
                None => found = Some(p),
                Some(q) if q == p => {}
                Some(_) => {
                    return Err(SharpError::IncompatibleBoundary(format!(
                        "glued object {k} inherits two different parts"
                    )))
                }
            }
        }
        let Some(p) = found else {
            return Err(SharpError::IncompatibleBoundary(format!(
                "glued object {k} has no part witness"
            )));
        };
        part.insert(ob_fwd[k].clone(), p);
    }

    let carrier = rename_cat(glued, &ob_fwd, &mor_fwd)?;
    let y = CatSlice::new(n, carrier, part)?;
    let yobj = SliceObject::Cat(y.clone());

    let fob: BTreeMap<Id, Id> = x
        .carrier()
        .objects()
        .iter()
        .map(|o| (o.clone(), ob_fwd[leg_x.ob(o)].clone()))
        .collect();
    let fmor: BTreeMap<Id, Id> = x
        .carrier()
        .morphisms()
        .iter()
        .map(|m| (m.clone(), mor_fwd[leg_x.mor(m)].clone()))
        .collect();
    let fmap = FinFunctor::new(x.carrier().clone(), y.carrier().clone(), fob, fmor)?;
    let filler = SliceMorphism::new_cat(x.clone(), y.clone(), fmap)?;

    let ob_back: BTreeMap<Id, Id> = ob_fwd.iter().map(|(k, r)| (r.clone(), k.clone())).collect();
    let mor_back: BTreeMap<Id, Id> = mor_fwd.iter().map(|(k, r)| (r.clone(), k.clone())).collect();
    let mut certs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let di = face_slice(&yobj, i)?;
        if di == SliceObject::Cat(y_slices[i].clone()) {
            certs.push(MatchCertificate::Exact);
            continue;
        }
        let di_c = di.as_cat()?.clone();
        let mut ob_assign = BTreeMap::new();
        let mut mor_assign = BTreeMap::new();
        for r in di_c.carrier().objects() {
            let k = &ob_back[r];
            let o = ob_face[i].get(k).ok_or_else(|| {
                SharpError::FaceMismatch(format!(
                    "face {i} of the extension has an object {r} outside the prescribed target"
                ))
            })?;
            ob_assign.insert(r.clone(), o.clone());
        }
        for r in di_c.carrier().morphisms() {
            let k = &mor_back[r];
            let m = mor_face[i].get(k).ok_or_else(|| {
                SharpError::FaceMismatch(format!(
                    "face {i} of the extension has a morphism {r} outside the prescribed target"
                ))
            })?;
            mor_assign.insert(r.clone(), m.clone());
        }
        let f = FinFunctor::new(
            di_c.carrier().clone(),
            y_slices[i].carrier().clone(),
            ob_assign,
            mor_assign,
        )?;
        let iso = SliceMorphism::new_cat(di_c, y_slices[i].clone(), f)?;
        if !iso.is_iso() {
            return Err(SharpError::FaceMismatch(format!(
                "face {i} of the extension is not isomorphic to the prescribed target"
            )));
        }
        certs.push(MatchCertificate::Iso(iso));
    }

    check_filler_restrictions(b, &filler, &certs)?;
    Ok(Extension {
        object: yobj,
        filler,
        face_certificates: certs,
    })
}

// ---------------------------------------------------------------------------
// cospan site
// ---------------------------------------------------------------------------

fn cospan_extend(b: &BoundaryAssignment) -> Result<Extension, SharpError> {
    if !b.mediators.is_empty() {
        return Err(SharpError::Mismatch(
            "mediators are not supported on the cospan site".into(),
        ));
    }
    let x = b.source.as_cospan()?;
    let n = x.level();
    let mut y_faces = Vec::with_capacity(n + 1);
    for f in &b.faces {
        y_faces.push(f.dst().as_cospan()?.clone());
    }

    let apex = y_faces[0].apex().clone();
    for y in &y_faces {
        if *y.apex() != apex {
            return Err(SharpError::IncompatibleBoundary(
                "the boundary cospans do not share an apex".into(),
            ));
        }
    }

    let mut legs: Vec<SSet> = Vec::with_capacity(n + 1);
    let mut leg_maps: Vec<SMap> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut chosen: Option<(SSet, SMap)> = None;
        for i in (0..=n).filter(|&i| i != j) {
            let pos = j - usize::from(j > i);
            let cand = (
                y_faces[i].legs()[pos].clone(),
                y_faces[i].leg_maps()[pos].clone(),
            );
            match &chosen {
                None => chosen = Some(cand),
                Some(c) if *c == cand => {}
                Some(_) => {
                    return Err(SharpError::IncompatibleBoundary(format!(
                        "the boundary cospans disagree about leg {j}"
                    )))
                }
            }
        }
        let (leg, leg_map) = chosen.expect("level >= 1 so every leg is covered");
        legs.push(leg);
        leg_maps.push(leg_map);
    }
    let y = super::slice::CospanSlice::new(n, legs, leg_maps, apex)?;
    let yobj = SliceObject::Cospan(y.clone());

    let mut filler_legs: Vec<Option<SMap>> = vec![None; n + 1];
    let mut filler_apex: Option<SMap> = None;
    for (i, f) in b.faces.iter().enumerate() {
        let SliceMorphism::Cospan {
            legs: fl,
            apex: fa,
            ..
        } = f
        else {
            return Err(SharpError::Mismatch(
                "boundary maps must live on the cospan site".into(),
            ));
        };
        match &filler_apex {
            None => filler_apex = Some(fa.clone()),
            Some(g) if g == fa => {}
            Some(_) => {
                return Err(SharpError::IncompatibleBoundary(
                    "the boundary maps disagree on the apex".into(),
                ))
            }
        }
        for (pos, l) in fl.iter().enumerate() {
            let j = pos + usize::from(pos >= i);
            match &filler_legs[j] {
                None => filler_legs[j] = Some(l.clone()),
                Some(g) if g == l => {}
                Some(_) => {
                    return Err(SharpError::IncompatibleBoundary(format!(
                        "the boundary maps disagree about leg {j}"
                    )))
                }
            }
        }
    }
    let filler_legs: Vec<SMap> = filler_legs
        .into_iter()
        .map(|l| l.expect("every leg is hit by some boundary map"))
        .collect();
    let filler = SliceMorphism::new_cospan(
        x.clone(),
        y.clone(),
        filler_legs,
        filler_apex.expect("at least two boundary maps"),
    )?;

    let mut certs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if face_slice(&yobj, i)? != SliceObject::Cospan(y_faces[i].clone()) {
            return Err(SharpError::FaceMismatch(format!(
                "face {i} of the assembled cospan differs from the prescribed target"
            )));
        }
        certs.push(MatchCertificate::Exact);
    }

    check_filler_restrictions(b, &filler, &certs)?;
    Ok(Extension {
        object: yobj,
        filler,
        face_certificates: certs,
    })
}

fn check_filler_restrictions(
    b: &BoundaryAssignment,
    filler: &SliceMorphism,
    certs: &[MatchCertificate],
) -> Result<(), SharpError> {
    for (i, cert) in certs.iter().enumerate() {
        let df = face_map(filler, i)?;
        let ok = match cert {
            MatchCertificate::Exact => df == b.faces[i],
            MatchCertificate::Iso(t) => SliceMorphism::compose(t, &df)? == b.faces[i],
        };
        if !ok {
            return Err(SharpError::FaceMismatch(format!(
                "the filler does not restrict to boundary map {i}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// strong extension along a cover
// ---------------------------------------------------------------------------

pub(crate) fn restrict_object(x: &SliceObject, keep: &[usize]) -> Result<SliceObject, SharpError> {
    let n = x.level();
    let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
    let mut cur = x.clone();
    for v in (0..=n).rev() {
        if !keep_set.contains(&v) {
            cur = face_slice(&cur, v)?;
        }
    }
    Ok(cur)
}

pub(crate) fn restrict_map(f: &SliceMorphism, positions: &[usize]) -> Result<SliceMorphism, SharpError> {
    let level = f.level();
    let keep: BTreeSet<usize> = positions.iter().copied().collect();
    let mut cur = f.clone();
    for v in (0..=level).rev() {
        if !keep.contains(&v) {
            cur = face_map(&cur, v)?;
        }
    }
    Ok(cur)
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn nonempty_subsets(a: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << a.len()) {
        let s: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &v)| v)
            .collect();
        out.push(s);
    }
    out
}

fn certificate_morphism(
    cert: &MatchCertificate,
    target: &SliceMorphism,
    face: usize,
) -> Result<SliceMorphism, SharpError> {
    match cert {
        MatchCertificate::Exact => Ok(SliceMorphism::identity(&face_slice(&target.dst(), face)?)),
        MatchCertificate::Iso(t) => Ok(t.clone()),
    }
}

/// Fill over a cover of the vertex set: each piece prescribes a map out of
/// the restriction of `x` to its vertices, the pieces are checked to agree on
/// overlaps, and the fill proceeds by induction over subset size, filling each
/// missing subset from its already-filled facets.
pub fn strong_equipment_extend(
    x: &SliceObject,
    cover: &[(BTreeSet<usize>, SliceMorphism)],
    budget: u64,
) -> Result<Extension, SharpError> {
    let n = x.level();
    let missing: Vec<usize> = (0..=n)
        .filter(|v| !cover.iter().any(|(a, _)| a.contains(v)))
        .collect();
    if !missing.is_empty() {
        return Err(SharpError::CoverIncomplete(missing));
    }

    // Seed every nonempty subset of every cover piece with the restriction of
    // that piece's map; overlapping pieces must restrict identically.
    let mut assigned: BTreeMap<Vec<usize>, (SliceMorphism, Vec<MatchCertificate>)> =
        BTreeMap::new();
    for (a, f) in cover {
        let a_sorted: Vec<usize> = a.iter().copied().collect();
        if a_sorted.is_empty() {
            return Err(SharpError::InvalidSlice("empty cover set".into()));
        }
        if let Some(&top) = a_sorted.last() {
            if top > n {
                return Err(SharpError::BadIndex { index: top, level: n });
            }
        }
        let xa = restrict_object(x, &a_sorted)?;
        if f.src() != xa {
            return Err(SharpError::IncompatibleBoundary(format!(
                "the cover map on {a_sorted:?} does not start at the restriction of the source"
            )));
        }
        for s in nonempty_subsets(&a_sorted) {
            let positions: Vec<usize> = s
                .iter()
                .map(|v| a_sorted.iter().position(|w| w == v).unwrap())
                .collect();
            let fs = restrict_map(f, &positions)?;
            let certs = vec![MatchCertificate::Exact; if s.len() >= 2 { s.len() } else { 0 }];
            match assigned.get(&s) {
                None => {
                    assigned.insert(s, (fs, certs));
                }
                Some((prev, _)) => {
                    if *prev != fs {
                        return Err(SharpError::RestrictionMismatch(format!(
                            "cover pieces disagree on the overlap {s:?}"
                        )));
                    }
                }
            }
        }
    }

    for size in 2..=(n + 1) {
        for s in subsets_of_size(n, size) {
            if assigned.contains_key(&s) {
                continue;
            }
            let xs = restrict_object(x, &s)?;
            let mut faces = Vec::with_capacity(size);
            for k in 0..size {
                let mut sk = s.clone();
                sk.remove(k);
                faces.push(assigned[&sk].0.clone());
            }
            let mut mediators = BTreeMap::new();
            if size >= 3 {
                for j in 1..size {
                    for i in 0..j {
                        let lhs = face_map(&faces[j], i)?;
                        let rhs = face_map(&faces[i], j - 1)?;
                        if lhs == rhs {
                            continue;
                        }
                        let mut sj = s.clone();
                        sj.remove(j);
                        let mut si = s.clone();
                        si.remove(i);
                        let cj = certificate_morphism(&assigned[&sj].1[i], &assigned[&sj].0, i)?;
                        let ci =
                            certificate_morphism(&assigned[&si].1[j - 1], &assigned[&si].0, j - 1)?;
                        let ci_inv = ci.inverse().ok_or_else(|| {
                            SharpError::FaceMismatch(
                                "a stored face certificate is not invertible".into(),
                            )
                        })?;
                        mediators.insert((i, j), SliceMorphism::compose(&ci_inv, &cj)?);
                    }
                }
            }
            let ext = equipment_extend(
                &BoundaryAssignment::with_mediators(xs, faces, mediators)?,
                budget,
            )?;
            assigned.insert(s, (ext.filler, ext.face_certificates));
        }
    }

    let full: Vec<usize> = (0..=n).collect();
    let (filler, face_certificates) = assigned.remove(&full).expect("full set always filled");
    Ok(Extension {
        object: filler.dst(),
        filler,
        face_certificates,
    })
}

// ---------------------------------------------------------------------------
// universality
// ---------------------------------------------------------------------------

fn cartesian_product(lens: &[usize], budget: u64) -> Result<Vec<Vec<usize>>, SharpError> {
    let total: u64 = lens.iter().map(|&l| l as u64).product();
    if total > budget {
        return Err(SharpError::EnumerationBudgetExceeded(budget));
    }
    let mut out = vec![Vec::new()];
    for &l in lens {
        let mut next = Vec::with_capacity(out.len() * l.max(1));
        for combo in &out {
            for k in 0..l {
                let mut c = combo.clone();
                c.push(k);
                next.push(c);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Check the universal property of an extension against a bounded enumeration
/// of competitors mapping into `z`: maps `y -> z` over the simplex must be in
/// bijection with pairs of a map `x -> z` and a compatible boundary family.
/// Implemented for the cat and sset sites.
pub fn verify_extension_universal(
    b: &BoundaryAssignment,
    ext: &Extension,
    z: &SliceObject,
    budget: u64,
) -> Result<(), SharpError> {
    if z.site() != b.source.site() || z.level() != b.source.level() {
        return Err(SharpError::Mismatch(
            "the competitor must live at the same site and level as the niche".into(),
        ));
    }
    let n = b.source.level();
    let dz: Vec<SliceObject> = (0..=n)
        .map(|i| face_slice(z, i))
        .collect::<Result<_, _>>()?;

    // Enumerate maps out of the extension, and independently the competing
    // data; the extension is universal when composing with the filler and
    // restricting along the certificates is a bijection.
    let (gs, hs, u_pools): (Vec<SliceMorphism>, Vec<SliceMorphism>, Vec<Vec<SliceMorphism>>) =
        match b.source.site() {
            Site::Sset => {
                let y = ext.object.as_sset()?;
                let zz = z.as_sset()?;
                let gs = enumerate_maps_over(y.structure(), zz.structure(), budget)?
                    .into_iter()
                    .map(|m| SliceMorphism::new_sset(y.clone(), zz.clone(), m))
                    .collect::<Result<_, _>>()?;
                let x = b.source.as_sset()?;
                let hs = enumerate_maps_over(x.structure(), zz.structure(), budget)?
                    .into_iter()
                    .map(|m| SliceMorphism::new_sset(x.clone(), zz.clone(), m))
                    .collect::<Result<_, _>>()?;
                let mut pools = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let yi = b.target(i);
                    let yi = yi.as_sset()?;
                    let dzi = dz[i].as_sset()?;
                    let pool = enumerate_maps_over(yi.structure(), dzi.structure(), budget)?
                        .into_iter()
                        .map(|m| SliceMorphism::new_sset(yi.clone(), dzi.clone(), m))
                        .collect::<Result<_, _>>()?;
                    pools.push(pool);
                }
                (gs, hs, pools)
            }
            Site::Cat => {
                let y = ext.object.as_cat()?;
                let zz = z.as_cat()?;
                let gs = part_functors(y, zz, budget)?;
                let x = b.source.as_cat()?;
                let hs = part_functors(x, zz, budget)?;
                let mut pools = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let yi = b.target(i);
                    let yi = yi.as_cat()?.clone();
                    let dzi = dz[i].as_cat()?;
                    pools.push(part_functors(&yi, dzi, budget)?);
                }
                (gs, hs, pools)
            }
            Site::Cospan => {
                return Err(SharpError::Mismatch(
                    "universality verification is available on the cat and sset sites".into(),
                ))
            }
        };

    let mut competitors: Vec<(SliceMorphism, Vec<SliceMorphism>)> = Vec::new();
    let lens: Vec<usize> = u_pools.iter().map(|p| p.len()).collect();
    let combos = cartesian_product(&lens, budget)?;
    for h in &hs {
        let dh: Vec<SliceMorphism> = (0..=n)
            .map(|i| face_map(h, i))
            .collect::<Result<_, _>>()?;
        'combo: for combo in &combos {
            let family: Vec<&SliceMorphism> = combo
                .iter()
                .enumerate()
                .map(|(i, &k)| &u_pools[i][k])
                .collect();
            for i in 0..=n {
                if SliceMorphism::compose(family[i], &b.faces[i])? != dh[i] {
                    continue 'combo;
                }
            }
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = face_map(family[j], i)?;
                        let rhs = face_map(family[i], j - 1)?;
                        let lhs = match b.mediator(i, j) {
                            None => lhs,
                            Some(t) => {
                                let t_inv = t.inverse().ok_or_else(|| {
                                    SharpError::Mismatch("mediator is not invertible".into())
                                })?;
                                SliceMorphism::compose(&lhs, &t_inv)?
                            }
                        };
                        if lhs != rhs {
                            continue 'combo;
                        }
                    }
                }
            }
            competitors.push((h.clone(), family.into_iter().cloned().collect()));
        }
    }

    let mut images: Vec<(SliceMorphism, Vec<SliceMorphism>)> = Vec::with_capacity(gs.len());
    for g in &gs {
        let h = SliceMorphism::compose(g, &ext.filler)?;
        let mut family = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let dg = face_map(g, i)?;
            let u = match &ext.face_certificates[i] {
                MatchCertificate::Exact => dg,
                MatchCertificate::Iso(t) => {
                    let t_inv = t.inverse().ok_or_else(|| {
                        SharpError::Mismatch("face certificate is not invertible".into())
                    })?;
                    SliceMorphism::compose(&dg, &t_inv)?
                }
            };
            family.push(u);
        }
        images.push((h, family));
    }

    for (a, img) in images.iter().enumerate() {
        if !competitors.contains(img) {
            return Err(SharpError::VerificationFailed(format!(
                "map {a} out of the extension does not induce boundary-compatible data"
            )));
        }
        if images[..a].contains(img) {
            return Err(SharpError::VerificationFailed(format!(
                "two distinct maps out of the extension induce the same competing data (map {a})"
            )));
        }
    }
    if images.len() != competitors.len() {
        return Err(SharpError::VerificationFailed(format!(
            "{} maps out of the extension against {} competing families",
            images.len(),
            competitors.len()
        )));
    }
    Ok(())
}

fn part_functors(
    src: &CatSlice,
    dst: &CatSlice,
    budget: u64,
) -> Result<Vec<SliceMorphism>, SharpError> {
    let all = enumerate_functors(src.carrier(), dst.carrier(), budget)?;
    all.into_iter()
        .filter(|f| {
            src.carrier()
                .objects()
                .iter()
                .all(|o| dst.part(f.ob(o)) == src.part(o))
        })
        .map(|f| SliceMorphism::new_cat(src.clone(), dst.clone(), f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::slice::tests::arrow_cat_slice;
    use super::super::slice::{degeneracy_slice, s_power, spower_face_iso, SsetSlice};
    use super::*;
    use crate::simpset::{mapping_cylinder, sset_iso, std_simplex};

    fn identity_niche(x: &SliceObject) -> BoundaryAssignment {
        let n = x.level();
        let faces = (0..=n)
            .map(|i| SliceMorphism::identity(&face_slice(x, i).unwrap()))
            .collect();
        BoundaryAssignment::new(x.clone(), faces).unwrap()
    }

    fn interval_slice() -> SliceObject {
        let d1 = std_simplex(1);
        let s = SMap::identity(&d1);
        SliceObject::Sset(SsetSlice::new(1, d1, s).unwrap())
    }

    #[test]
    fn identity_boundaries_reproduce_the_source() {
        for x in [interval_slice(), SliceObject::Cat(arrow_cat_slice())] {
            let b = identity_niche(&x);
            let ext = equipment_extend(&b, 10_000).unwrap();
            assert_eq!(ext.object, x);
            assert!(ext.face_certificates.iter().all(|c| c.is_exact()));
            assert_eq!(ext.filler, SliceMorphism::identity(&x));
        }
    }

    #[test]
    fn collapsing_one_end_builds_the_mapping_cylinder() {
        // x = s_0 of the interval; one face is kept, the other is collapsed
        // to a point.  The fill is the mapping cylinder of the collapse.
        let interval = std_simplex(1);
        let pt = SSet::new(vec![vec![Id::new("pt")]], BTreeMap::new()).unwrap();
        let g_assign: BTreeMap<Id, FormalSimplex> = vec![
            (Id::new("x0"), FormalSimplex::nondeg(Id::new("pt"))),
            (Id::new("x1"), FormalSimplex::nondeg(Id::new("pt"))),
            (
                Id::new("x0.1"),
                FormalSimplex {
                    base: Id::new("pt"),
                    word: vec![0],
                },
            ),
        ]
        .into_iter()
        .collect();
        let g = SMap::new(interval.clone(), pt.clone(), g_assign).unwrap();

        let x0 = SliceObject::Sset(SsetSlice::point(interval.clone()));
        let x = s_power(&x0, 1).unwrap();
        let y1 = SliceObject::Sset(SsetSlice::point(pt.clone()));

        let to_x0 = spower_face_iso(&x0, 1, 0).unwrap();
        let g_m = SliceMorphism::new_sset(
            x0.as_sset().unwrap().clone(),
            y1.as_sset().unwrap().clone(),
            g.clone(),
        )
        .unwrap();
        let f0 = SliceMorphism::compose(&g_m, &to_x0).unwrap();
        let f1 = SliceMorphism::identity(&face_slice(&x, 1).unwrap());

        let b = BoundaryAssignment::new(x.clone(), vec![f0, f1]).unwrap();
        let ext = equipment_extend(&b, 10_000).unwrap();
        assert!(ext.face_certificates.iter().all(|c| c.is_exact()));

        let cyl = mapping_cylinder(&g).unwrap();
        let carrier = ext.object.as_sset().unwrap().carrier();
        assert!(sset_iso(carrier, &cyl.object, 100_000).unwrap().is_some());

        verify_extension_universal(&b, &ext, &ext.object, 100_000).unwrap();
    }

    #[test]
    fn identity_cylinder_gets_one_exact_and_one_iso_face() {
        // Both faces are sent to the same point slice, so the two ends of
        // the cylinder fight over their cell names: the lower face wins.
        let x0 = SliceObject::Sset(SsetSlice::point(std_simplex(0)));
        let x = s_power(&x0, 1).unwrap();
        let f0 = spower_face_iso(&x0, 1, 0).unwrap();
        let f1 = spower_face_iso(&x0, 1, 1).unwrap();
        let b = BoundaryAssignment::new(x.clone(), vec![f0, f1]).unwrap();
        let ext = equipment_extend(&b, 10_000).unwrap();

        assert!(ext.face_certificates[0].is_exact());
        assert!(matches!(
            ext.face_certificates[1],
            MatchCertificate::Iso(_)
        ));
        let carrier = ext.object.as_sset().unwrap().carrier();
        assert_eq!(carrier.counts(), vec![2, 1]);
        let cyl = degeneracy_slice(&x0, 0).unwrap();
        assert!(sset_iso(
            carrier,
            cyl.as_sset().unwrap().carrier(),
            10_000
        )
        .unwrap()
        .is_some());

        verify_extension_universal(&b, &ext, &cyl, 100_000).unwrap();
    }

    #[test]
    fn cat_universality_on_the_identity_niche() {
        let x = SliceObject::Cat(arrow_cat_slice());
        let b = identity_niche(&x);
        let ext = equipment_extend(&b, 10_000).unwrap();
        verify_extension_universal(&b, &ext, &x, 100_000).unwrap();
    }

    #[test]
    fn cospan_extension_assembles_legs() {
        let pt = std_simplex(0);
        let apex = std_simplex(1);
        let left = crate::simpset::std_map(&[0], 1);
        let right = crate::simpset::std_map(&[1], 1);
        let legs = vec![pt.clone(), pt.clone(), pt.clone()];
        let leg_maps = vec![left.clone(), left.clone(), right.clone()];
        let x = SliceObject::Cospan(
            super::super::slice::CospanSlice::new(2, legs, leg_maps, apex.clone()).unwrap(),
        );
        let b = identity_niche(&x);
        let ext = equipment_extend(&b, 10_000).unwrap();
        assert_eq!(ext.object, x);
        assert!(ext.face_certificates.iter().all(|c| c.is_exact()));
    }

    #[test]
    fn cospan_apex_mismatch_is_rejected() {
        // Level 1: the two point faces can legally target cospans with
        // different apexes, and assembly must refuse to glue them.
        let pt = std_simplex(0);
        let apex = std_simplex(1);
        let left = crate::simpset::std_map(&[0], 1);
        let right = crate::simpset::std_map(&[1], 1);
        let x = SliceObject::Cospan(
            super::super::slice::CospanSlice::new(
                1,
                vec![pt.clone(), pt.clone()],
                vec![left, right],
                apex.clone(),
            )
            .unwrap(),
        );
        let f0 = SliceMorphism::identity(&face_slice(&x, 0).unwrap());
        let collapsed = super::super::slice::CospanSlice::point(SMap::identity(&pt));
        let d1x = face_slice(&x, 1).unwrap();
        let f1 = SliceMorphism::new_cospan(
            d1x.as_cospan().unwrap().clone(),
            collapsed,
            vec![SMap::identity(&pt)],
            crate::simpset::pairs::terminal_map(&apex),
        )
        .unwrap();
        let b = BoundaryAssignment::new(x, vec![f0, f1]).unwrap();
        match equipment_extend(&b, 10_000) {
            Err(SharpError::IncompatibleBoundary(msg)) => assert!(msg.contains("apex")),
            other => panic!("expected an apex mismatch, got {other:?}"),
        }
    }

    #[test]
    fn strong_extension_from_singletons_recovers_the_source() {
        let x = interval_slice();
        let cover: Vec<(BTreeSet<usize>, SliceMorphism)> = (0..=1)
            .map(|v| {
                let s: BTreeSet<usize> = [v].into_iter().collect();
                let xa = restrict_object(&x, &[v]).unwrap();
                (s, SliceMorphism::identity(&xa))
            })
            .collect();
        let ext = strong_equipment_extend(&x, &cover, 10_000).unwrap();
        assert_eq!(ext.object, x);
    }

    #[test]
    fn strong_extension_with_the_full_set_returns_the_given_map() {
        let x = interval_slice();
        let cover = vec![(
            [0usize, 1].into_iter().collect::<BTreeSet<_>>(),
            SliceMorphism::identity(&x),
        )];
        let ext = strong_equipment_extend(&x, &cover, 10_000).unwrap();
        assert_eq!(ext.object, x);
        assert_eq!(ext.filler, SliceMorphism::identity(&x));
    }

    #[test]
    fn strong_extension_fills_a_two_simplex_from_vertices() {
        let d2 = std_simplex(2);
        let x = SliceObject::Sset(SsetSlice::new(2, d2.clone(), SMap::identity(&d2)).unwrap());
        let cover: Vec<(BTreeSet<usize>, SliceMorphism)> = (0..=2)
            .map(|v| {
                let s: BTreeSet<usize> = [v].into_iter().collect();
                let xa = restrict_object(&x, &[v]).unwrap();
                (s, SliceMorphism::identity(&xa))
            })
            .collect();
        let ext = strong_equipment_extend(&x, &cover, 10_000).unwrap();
        assert_eq!(ext.object.level(), 2);
        let carrier = ext.object.as_sset().unwrap().carrier();
        assert!(sset_iso(carrier, &d2, 100_000).unwrap().is_some());

        // Reordering the cover does not change the result.
        let rev: Vec<_> = cover.into_iter().rev().collect();
        let ext2 = strong_equipment_extend(&x, &rev, 10_000).unwrap();
        assert_eq!(ext.object, ext2.object);
    }

    #[test]
    fn incomplete_covers_are_rejected() {
        let x = interval_slice();
        let cover = vec![(
            [0usize].into_iter().collect::<BTreeSet<_>>(),
            SliceMorphism::identity(&restrict_object(&x, &[0]).unwrap()),
        )];
        match strong_equipment_extend(&x, &cover, 10_000) {
            Err(SharpError::CoverIncomplete(v)) => assert_eq!(v, vec![1]),
            other => panic!("expected CoverIncomplete, got {other:?}"),
        }
    }

    #[test]
    fn disagreeing_covers_are_rejected() {
        // Two cover pieces share vertex 0 but restrict to maps into
        // different targets there.
        let x = interval_slice();
        let d1 = std_simplex(1);
        let prod = crate::simpset::product_with_simplex(&d1, 1);
        let diag = prod
            .pairing(&SMap::identity(&d1), &SMap::identity(&d1))
            .unwrap();
        let z = SsetSlice::new(1, prod.object.clone(), prod.to_right.clone()).unwrap();
        let into_z =
            SliceMorphism::new_sset(x.as_sset().unwrap().clone(), z, diag).unwrap();
        let full: BTreeSet<usize> = [0, 1].into_iter().collect();
        let cover = vec![
            (full, SliceMorphism::identity(&x)),
            (
                [0usize].into_iter().collect::<BTreeSet<_>>(),
                restrict_map(&into_z, &[0]).unwrap(),
            ),
        ];
        match strong_equipment_extend(&x, &cover, 10_000) {
            Err(SharpError::RestrictionMismatch(_)) => {}
            other => panic!("expected RestrictionMismatch, got {other:?}"),
        }

        // Replacing the clashing piece with an honest restriction passes.
        let cover = vec![
            ([0usize, 1].into_iter().collect::<BTreeSet<_>>(), SliceMorphism::identity(&x)),
            (
                [0usize].into_iter().collect::<BTreeSet<_>>(),
                SliceMorphism::identity(&restrict_object(&x, &[0]).unwrap()),
            ),
        ];
        assert!(strong_equipment_extend(&x, &cover, 10_000).is_ok());
    }

    #[test]
    fn level_two_identity_niche_fills_exactly() {
        let x0 = SliceObject::Sset(SsetSlice::point(std_simplex(0)));
        let x = s_power(&x0, 2).unwrap();
        let b = identity_niche(&x);
        let ext = equipment_extend(&b, 10_000).unwrap();
        assert_eq!(ext.object, x);
    }

    #[test]
    fn mediators_reconcile_relabelled_boundaries() {
        // Fill the 2-simplex niche whose face-1 target is a relabelled copy
        // of the face: overlaps with faces 0 and 2 then disagree literally
        // and need mediating isomorphisms.
        let d2 = std_simplex(2);
        let x = SliceObject::Sset(SsetSlice::new(2, d2.clone(), SMap::identity(&d2)).unwrap());
        let d1x = face_slice(&x, 1).unwrap();
        let d1x = d1x.as_sset().unwrap().clone();

        let fwd: BTreeMap<Id, Id> = d1x
            .carrier()
            .all_cells()
            .map(|c| (c.clone(), Id::new(format!("r{c}"))))
            .collect();
        let renamed = rename_sset(d1x.carrier(), &fwd).unwrap();
        let structure_assign: BTreeMap<Id, FormalSimplex> = d1x
            .carrier()
            .all_cells()
            .map(|c| (fwd[c].clone(), d1x.structure().apply_cell(c).clone()))
            .collect();
        let structure = SMap::new(renamed.clone(), std_simplex(1), structure_assign).unwrap();
        let y1 = SsetSlice::new(1, renamed.clone(), structure).unwrap();
        let relabel = SMap::new(
            d1x.carrier().clone(),
            renamed,
            d1x.carrier()
                .all_cells()
                .map(|c| (c.clone(), FormalSimplex::nondeg(fwd[c].clone())))
                .collect(),
        )
        .unwrap();
        let f1 = SliceMorphism::new_sset(d1x.clone(), y1.clone(), relabel).unwrap();

        let f0 = SliceMorphism::identity(&face_slice(&x, 0).unwrap());
        let f2 = SliceMorphism::identity(&face_slice(&x, 2).unwrap());
        let faces = vec![f0.clone(), f1.clone(), f2.clone()];

        // Without mediators the overlaps clash.
        assert!(matches!(
            BoundaryAssignment::new(x.clone(), faces.clone()),
            Err(SharpError::IncompatibleBoundary(_))
        ));

        let mut mediators = BTreeMap::new();
        let t01 = {
            let lhs = face_map(&f1, 0).unwrap();
            let rhs = face_map(&f0, 0).unwrap();
            let back = lhs.dst();
            let back = back.as_sset().unwrap();
            let m = SMap::new(
                back.carrier().clone(),
                rhs.dst().as_sset().unwrap().carrier().clone(),
                back.carrier()
                    .all_cells()
                    .map(|c| {
                        let orig = c.as_str().strip_prefix('r').unwrap();
                        (c.clone(), FormalSimplex::nondeg(Id::new(orig)))
                    })
                    .collect(),
            )
            .unwrap();
            SliceMorphism::new_sset(
                back.clone(),
                rhs.dst().as_sset().unwrap().clone(),
                m,
            )
            .unwrap()
        };
        mediators.insert((0, 1), t01);
        let t12 = {
            let lhs = face_map(&f2, 1).unwrap();
            let rhs = face_map(&f1, 1).unwrap();
            let src = lhs.dst();
            let src = src.as_sset().unwrap();
            let m = SMap::new(
                src.carrier().clone(),
                rhs.dst().as_sset().unwrap().carrier().clone(),
                src.carrier()
                    .all_cells()
                    .map(|c| (c.clone(), FormalSimplex::nondeg(Id::new(format!("r{c}")))))
                    .collect(),
            )
            .unwrap();
            SliceMorphism::new_sset(
                src.clone(),
                rhs.dst().as_sset().unwrap().clone(),
                m,
            )
            .unwrap()
        };
        mediators.insert((1, 2), t12);

        let b = BoundaryAssignment::with_mediators(x.clone(), faces, mediators).unwrap();
        let ext = equipment_extend(&b, 10_000).unwrap();
        assert!(ext.face_certificates[0].is_exact());
        assert!(matches!(ext.face_certificates[1], MatchCertificate::Iso(_)));
        assert!(matches!(ext.face_certificates[2], MatchCertificate::Iso(_)));
        let carrier = ext.object.as_sset().unwrap().carrier();
        assert!(sset_iso(carrier, &d2, 100_000).unwrap().is_some());
    }
}
