//! Slice objects over standard simplices for the three sites, with the
//! face/degeneracy calculus and the n-fold degeneracy of level-0 objects.
//!
//! Faces restrict: a category over Δⁿ loses the objects in part i, a
//! simplicial set loses the cells whose structure touches vertex i, a
//! cospan loses leg i (the apex stays). Degeneracies spread along a
//! cylinder: s_i is the part of the product with Δ¹ where the Δ¹
//! coordinate may only switch from 0 to 1 while passing level i.

use super::SharpError;
use crate::fincat::{delta_cat, poset_mor, poset_ob, FinCat, FinFunctor};
use crate::id::Id;
use crate::simpset::pairs::{product_with_simplex, terminal_map};
use crate::simpset::standard::{formal_to_vertex_list, std_simplex, vertex_list_to_formal};
use crate::simpset::{SMap, SSet};
use crate::util::compound_id;
use std::collections::{BTreeMap, BTreeSet};

/// A finite category over Δⁿ: a part in 0..=n for every object, with
/// morphisms never descending. Fibers recover the parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatSlice {
    level: usize,
    carrier: FinCat,
    part: BTreeMap<Id, usize>,
}

impl CatSlice {
    pub fn new(
        level: usize,
        carrier: FinCat,
        part: BTreeMap<Id, usize>,
    ) -> Result<CatSlice, SharpError> {
        for o in carrier.objects() {
            let p = part
                .get(o)
                .ok_or_else(|| SharpError::InvalidSlice(format!("object {o} has no part")))?;
            if *p > level {
                return Err(SharpError::InvalidSlice(format!(
                    "object {o} sits in part {p} above level {level}"
                )));
            }
        }
        for o in part.keys() {
            if !carrier.has_object(o) {
                return Err(SharpError::InvalidSlice(format!("part entry for unknown {o}")));
            }
        }
        for m in carrier.morphisms() {
            if part[carrier.src(m)] > part[carrier.dst(m)] {
                return Err(SharpError::InvalidSlice(format!("morphism {m} descends parts")));
            }
        }
        Ok(CatSlice { level, carrier, part })
    }

    /// A category as a level-0 slice.
    pub fn point(carrier: FinCat) -> CatSlice {
        let part = carrier.objects().iter().map(|o| (o.clone(), 0)).collect();
        CatSlice { level: 0, carrier, part }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn carrier(&self) -> &FinCat {
        &self.carrier
    }

    pub fn part(&self, o: &Id) -> usize {
        self.part[o]
    }

    pub fn parts(&self) -> &BTreeMap<Id, usize> {
        &self.part
    }

    /// The fiber over vertex k: the full subcategory on part k.
    pub fn fiber(&self, k: usize) -> FinCat {
        let keep = self
            .carrier
            .objects()
            .iter()
            .filter(|o| self.part[*o] == k)
            .cloned()
            .collect();
        self.carrier
            .full_subcategory(&keep)
            .expect("a fiber of a valid slice is a category")
    }
}

/// A finite simplicial set over Δⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SsetSlice {
    level: usize,
    carrier: SSet,
    structure: SMap,
}

impl SsetSlice {
    pub fn new(level: usize, carrier: SSet, structure: SMap) -> Result<SsetSlice, SharpError> {
        if structure.source() != &carrier {
            return Err(SharpError::InvalidSlice(
                "structure map does not start at the carrier".into(),
            ));
        }
        if structure.target() != &std_simplex(level) {
            return Err(SharpError::InvalidSlice(format!(
                "structure map does not land in the {level}-simplex"
            )));
        }
        Ok(SsetSlice { level, carrier, structure })
    }

    /// A simplicial set as a level-0 slice.
    pub fn point(carrier: SSet) -> SsetSlice {
        let structure = terminal_map(&carrier);
        SsetSlice { level: 0, carrier, structure }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn carrier(&self) -> &SSet {
        &self.carrier
    }

    pub fn structure(&self) -> &SMap {
        &self.structure
    }

    /// Vertex labels of a cell's structure simplex.
    pub fn structure_verts(&self, c: &Id) -> Vec<usize> {
        formal_to_vertex_list(self.structure.apply_cell(c))
    }

    /// The fiber over vertex k: cells entirely above k.
    pub fn fiber(&self, k: usize) -> SSet {
        let keep: BTreeSet<Id> = self
            .carrier
            .all_cells()
            .filter(|c| self.structure_verts(c).iter().all(|&v| v == k))
            .cloned()
            .collect();
        self.carrier
            .subcomplex(&keep)
            .expect("a fiber of a valid slice is face-closed")
    }
}

/// An n-cospan: n+1 legs into a common apex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CospanSlice {
    level: usize,
    legs: Vec<SSet>,
    leg_maps: Vec<SMap>,
    apex: SSet,
}

impl CospanSlice {
    pub fn new(
        level: usize,
        legs: Vec<SSet>,
        leg_maps: Vec<SMap>,
        apex: SSet,
    ) -> Result<CospanSlice, SharpError> {
        if legs.len() != level + 1 || leg_maps.len() != level + 1 {
            return Err(SharpError::InvalidSlice(format!(
                "an n-cospan at level {level} needs {} legs",
                level + 1
            )));
        }
        for (i, (leg, map)) in legs.iter().zip(&leg_maps).enumerate() {
            if map.source() != leg {
                return Err(SharpError::InvalidSlice(format!(
                    "leg map {i} does not start at leg {i}"
                )));
            }
            if map.target() != &apex {
                return Err(SharpError::InvalidSlice(format!(
                    "leg map {i} does not land in the apex"
                )));
            }
        }
        Ok(CospanSlice { level, legs, leg_maps, apex })
    }

    /// A single map as a level-0 cospan.
    pub fn point(leg_map: SMap) -> CospanSlice {
        CospanSlice {
            level: 0,
            legs: vec![leg_map.source().clone()],
            apex: leg_map.target().clone(),
            leg_maps: vec![leg_map],
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn legs(&self) -> &[SSet] {
        &self.legs
    }

    pub fn leg_maps(&self) -> &[SMap] {
        &self.leg_maps
    }

    pub fn apex(&self) -> &SSet {
        &self.apex
    }
}

/// An object of E_n on one of the three sites.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SliceObject {
    Cat(CatSlice),
    Sset(SsetSlice),
    Cospan(CospanSlice),
}

impl SliceObject {
    pub fn level(&self) -> usize {
        match self {
            SliceObject::Cat(x) => x.level,
            SliceObject::Sset(x) => x.level,
            SliceObject::Cospan(x) => x.level,
        }
    }

    pub fn site(&self) -> super::Site {
        match self {
            SliceObject::Cat(_) => super::Site::Cat,
            SliceObject::Sset(_) => super::Site::Sset,
            SliceObject::Cospan(_) => super::Site::Cospan,
        }
    }

    pub fn as_cat(&self) -> Result<&CatSlice, SharpError> {
        match self {
            SliceObject::Cat(x) => Ok(x),
            _ => Err(SharpError::Mismatch("expected a cat-site slice".into())),
        }
    }

    pub fn as_sset(&self) -> Result<&SsetSlice, SharpError> {
        match self {
            SliceObject::Sset(x) => Ok(x),
            _ => Err(SharpError::Mismatch("expected an sset-site slice".into())),
        }
    }

    pub fn as_cospan(&self) -> Result<&CospanSlice, SharpError> {
        match self {
            SliceObject::Cospan(x) => Ok(x),
            _ => Err(SharpError::Mismatch("expected a cospan-site slice".into())),
        }
    }
}

impl From<CatSlice> for SliceObject {
    fn from(x: CatSlice) -> SliceObject {
        SliceObject::Cat(x)
    }
}

impl From<SsetSlice> for SliceObject {
    fn from(x: SsetSlice) -> SliceObject {
        SliceObject::Sset(x)
    }
}

impl From<CospanSlice> for SliceObject {
    fn from(x: CospanSlice) -> SliceObject {
        SliceObject::Cospan(x)
    }
}

/// A morphism of E_n: a carrier map strictly over Δⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SliceMorphism {
    Cat { src: CatSlice, dst: CatSlice, map: FinFunctor },
    Sset { src: SsetSlice, dst: SsetSlice, map: SMap },
    Cospan { src: CospanSlice, dst: CospanSlice, legs: Vec<SMap>, apex: SMap },
}

impl SliceMorphism {
    pub fn new_cat(src: CatSlice, dst: CatSlice, map: FinFunctor) -> Result<SliceMorphism, SharpError> {
        if src.level != dst.level {
            return Err(SharpError::Mismatch("slice morphism across levels".into()));
        }
        if map.src_cat() != &src.carrier || map.dst_cat() != &dst.carrier {
            return Err(SharpError::Mismatch("functor endpoints are not the carriers".into()));
        }
        for o in src.carrier.objects() {
            if dst.part[map.ob(o)] != src.part[o] {
                return Err(SharpError::Mismatch(format!("map moves {o} across parts")));
            }
        }
        Ok(SliceMorphism::Cat { src, dst, map })
    }

    pub fn new_sset(src: SsetSlice, dst: SsetSlice, map: SMap) -> Result<SliceMorphism, SharpError> {
        if src.level != dst.level {
            return Err(SharpError::Mismatch("slice morphism across levels".into()));
        }
        if map.source() != &src.carrier || map.target() != &dst.carrier {
            return Err(SharpError::Mismatch("map endpoints are not the carriers".into()));
        }
        if SMap::compose(&dst.structure, &map)? != src.structure {
            return Err(SharpError::Mismatch("map does not commute with the structures".into()));
        }
        Ok(SliceMorphism::Sset { src, dst, map })
    }

    pub fn new_cospan(
        src: CospanSlice,
        dst: CospanSlice,
        legs: Vec<SMap>,
        apex: SMap,
    ) -> Result<SliceMorphism, SharpError> {
        if src.level != dst.level || legs.len() != src.legs.len() {
            return Err(SharpError::Mismatch("slice morphism across levels".into()));
        }
        if apex.source() != &src.apex || apex.target() != &dst.apex {
            return Err(SharpError::Mismatch("apex map has wrong endpoints".into()));
        }
        for (i, leg) in legs.iter().enumerate() {
            if leg.source() != &src.legs[i] || leg.target() != &dst.legs[i] {
                return Err(SharpError::Mismatch(format!("leg map {i} has wrong endpoints")));
            }
            if SMap::compose(&dst.leg_maps[i], leg)? != SMap::compose(&apex, &src.leg_maps[i])? {
                return Err(SharpError::Mismatch(format!("square at leg {i} does not commute")));
            }
        }
        Ok(SliceMorphism::Cospan { src, dst, legs, apex })
    }

    pub fn identity(x: &SliceObject) -> SliceMorphism {
        match x {
            SliceObject::Cat(x) => SliceMorphism::Cat {
                src: x.clone(),
                dst: x.clone(),
                map: FinFunctor::identity(&x.carrier),
            },
            SliceObject::Sset(x) => SliceMorphism::Sset {
                src: x.clone(),
                dst: x.clone(),
                map: SMap::identity(&x.carrier),
            },
            SliceObject::Cospan(x) => SliceMorphism::Cospan {
                src: x.clone(),
                dst: x.clone(),
                legs: x.legs.iter().map(SMap::identity).collect(),
                apex: SMap::identity(&x.apex),
            },
        }
    }

    pub fn compose(g: &SliceMorphism, f: &SliceMorphism) -> Result<SliceMorphism, SharpError> {
        match (g, f) {
            (
                SliceMorphism::Cat { src: gs, dst: gd, map: gm },
                SliceMorphism::Cat { src: fs, dst: fd, map: fm },
            ) => {
                if fd != gs {
                    return Err(SharpError::Mismatch("composition endpoints differ".into()));
                }
                Ok(SliceMorphism::Cat {
                    src: fs.clone(),
                    dst: gd.clone(),
                    map: FinFunctor::compose(gm, fm)?,
                })
            }
            (
                SliceMorphism::Sset { src: gs, dst: gd, map: gm },
                SliceMorphism::Sset { src: fs, dst: fd, map: fm },
            ) => {
                if fd != gs {
                    return Err(SharpError::Mismatch("composition endpoints differ".into()));
                }
                Ok(SliceMorphism::Sset {
                    src: fs.clone(),
                    dst: gd.clone(),
                    map: SMap::compose(gm, fm)?,
                })
            }
            (
                SliceMorphism::Cospan { src: gs, dst: gd, legs: gl, apex: ga },
                SliceMorphism::Cospan { src: fs, dst: fd, legs: fl, apex: fa },
            ) => {
                if fd != gs {
                    return Err(SharpError::Mismatch("composition endpoints differ".into()));
                }
                let legs = gl
                    .iter()
                    .zip(fl)
                    .map(|(g, f)| SMap::compose(g, f))
                    .collect::<Result<_, _>>()?;
                Ok(SliceMorphism::Cospan {
                    src: fs.clone(),
                    dst: gd.clone(),
                    legs,
                    apex: SMap::compose(ga, fa)?,
                })
            }
            _ => Err(SharpError::Mismatch("composition across sites".into())),
        }
    }

    pub fn src(&self) -> SliceObject {
        match self {
            SliceMorphism::Cat { src, .. } => SliceObject::Cat(src.clone()),
            SliceMorphism::Sset { src, .. } => SliceObject::Sset(src.clone()),
            SliceMorphism::Cospan { src, .. } => SliceObject::Cospan(src.clone()),
        }
    }

    pub fn dst(&self) -> SliceObject {
        match self {
            SliceMorphism::Cat { dst, .. } => SliceObject::Cat(dst.clone()),
            SliceMorphism::Sset { dst, .. } => SliceObject::Sset(dst.clone()),
            SliceMorphism::Cospan { dst, .. } => SliceObject::Cospan(dst.clone()),
        }
    }

    pub fn level(&self) -> usize {
        match self {
            SliceMorphism::Cat { src, .. } => src.level,
            SliceMorphism::Sset { src, .. } => src.level,
            SliceMorphism::Cospan { src, .. } => src.level,
        }
    }

    pub fn is_iso(&self) -> bool {
        match self {
            SliceMorphism::Cat { src, dst, map } => {
                let obs: BTreeSet<&Id> = src.carrier.objects().iter().map(|o| map.ob(o)).collect();
                let mors: BTreeSet<&Id> =
                    src.carrier.morphisms().iter().map(|m| map.mor(m)).collect();
                obs.len() == src.carrier.objects().len()
                    && obs.len() == dst.carrier.objects().len()
                    && mors.len() == src.carrier.morphisms().len()
                    && mors.len() == dst.carrier.morphisms().len()
            }
            SliceMorphism::Sset { map, .. } => map.is_iso(),
            SliceMorphism::Cospan { legs, apex, .. } => {
                legs.iter().all(SMap::is_iso) && apex.is_iso()
            }
        }
    }

    pub fn inverse(&self) -> Option<SliceMorphism> {
        if !self.is_iso() {
            return None;
        }
        match self {
            SliceMorphism::Cat { src, dst, map } => {
                let ob = map.ob_map().iter().map(|(a, b)| (b.clone(), a.clone())).collect();
                let mor = map.mor_map().iter().map(|(a, b)| (b.clone(), a.clone())).collect();
                let inv = FinFunctor::new(dst.carrier.clone(), src.carrier.clone(), ob, mor).ok()?;
                Some(SliceMorphism::Cat { src: dst.clone(), dst: src.clone(), map: inv })
            }
            SliceMorphism::Sset { src, dst, map } => Some(SliceMorphism::Sset {
                src: dst.clone(),
                dst: src.clone(),
                map: map.inverse()?,
            }),
            SliceMorphism::Cospan { src, dst, legs, apex } => Some(SliceMorphism::Cospan {
                src: dst.clone(),
                dst: src.clone(),
                legs: legs.iter().map(|l| l.inverse()).collect::<Option<_>>()?,
                apex: apex.inverse()?,
            }),
        }
    }
}

fn check_face_index(level: usize, i: usize) -> Result<(), SharpError> {
    if level == 0 || i > level {
        return Err(SharpError::BadIndex { index: i, level });
    }
    Ok(())
}

/// The i-th face of a level-n slice (n ≥ 1).
pub fn face_slice(x: &SliceObject, i: usize) -> Result<SliceObject, SharpError> {
    check_face_index(x.level(), i)?;
    match x {
        SliceObject::Cat(x) => cat_face(x, i).map(SliceObject::Cat),
        SliceObject::Sset(x) => sset_face(x, i).map(SliceObject::Sset),
        SliceObject::Cospan(x) => cospan_face(x, i).map(SliceObject::Cospan),
    }
}

fn cat_face(x: &CatSlice, i: usize) -> Result<CatSlice, SharpError> {
    let keep: BTreeSet<Id> = x
        .carrier
        .objects()
        .iter()
        .filter(|o| x.part[*o] != i)
        .cloned()
        .collect();
    let carrier = x.carrier.full_subcategory(&keep)?;
    let part = keep
        .into_iter()
        .map(|o| {
            let p = x.part[&o];
            (o, p - usize::from(p > i))
        })
        .collect();
    CatSlice::new(x.level - 1, carrier, part)
}

fn sset_face(x: &SsetSlice, i: usize) -> Result<SsetSlice, SharpError> {
    let keep: BTreeSet<Id> = x
        .carrier
        .all_cells()
        .filter(|c| !x.structure_verts(c).contains(&i))
        .cloned()
        .collect();
    let carrier = x.carrier.subcomplex(&keep)?;
    let assignment = carrier
        .all_cells()
        .map(|c| {
            let verts: Vec<usize> = x
                .structure_verts(c)
                .into_iter()
                .map(|v| v - usize::from(v > i))
                .collect();
            (c.clone(), vertex_list_to_formal(&verts))
        })
        .collect();
    let structure = SMap::new(carrier.clone(), std_simplex(x.level - 1), assignment)?;
    SsetSlice::new(x.level - 1, carrier, structure)
}

fn cospan_face(x: &CospanSlice, i: usize) -> Result<CospanSlice, SharpError> {
    let mut legs = x.legs.clone();
    let mut leg_maps = x.leg_maps.clone();
    legs.remove(i);
    leg_maps.remove(i);
    CospanSlice::new(x.level - 1, legs, leg_maps, x.apex.clone())
}

/// The i-th degeneracy of a level-n slice (0 ≤ i ≤ n).
pub fn degeneracy_slice(x: &SliceObject, i: usize) -> Result<SliceObject, SharpError> {
    if i > x.level() {
        return Err(SharpError::BadIndex { index: i, level: x.level() });
    }
    match x {
        SliceObject::Cat(x) => cat_degen_parts(x, i).map(|(s, _)| SliceObject::Cat(s)),
        SliceObject::Sset(x) => sset_degen_parts(x, i).map(|(s, _)| SliceObject::Sset(s)),
        SliceObject::Cospan(x) => cospan_degen(x, i).map(SliceObject::Cospan),
    }
}

pub(crate) fn product_object(c: &Id, e: usize) -> Id {
    compound_id("pob", &[c.to_string(), poset_ob(e).to_string()])
}

pub(crate) fn product_morphism(m: &Id, dm: &Id) -> Id {
    compound_id("pmor", &[m.to_string(), dm.to_string()])
}

/// s_i of a cat slice, together with the projection back to the carrier.
pub(crate) fn cat_degen_parts(
    x: &CatSlice,
    i: usize,
) -> Result<(CatSlice, FinFunctor), SharpError> {
    let delta1 = delta_cat(1);
    let prod = x.carrier.product(&delta1);
    let mut keep = BTreeSet::new();
    let mut part = BTreeMap::new();
    let mut ob = BTreeMap::new();
    for c in x.carrier.objects() {
        let p = x.part[c];
        for e in 0..=1usize {
            if (e == 0 && p <= i) || (e == 1 && p >= i) {
                let id = product_object(c, e);
                keep.insert(id.clone());
                part.insert(id.clone(), p + e);
                ob.insert(id, c.clone());
            }
        }
    }
    let carrier = prod.full_subcategory(&keep)?;
    let mut mor = BTreeMap::new();
    for m in x.carrier.morphisms() {
        for dm in delta1.morphisms() {
            let id = product_morphism(m, dm);
            if carrier.has_morphism(&id) {
                mor.insert(id, m.clone());
            }
        }
    }
    let proj = FinFunctor::new(carrier.clone(), x.carrier.clone(), ob, mor)?;
    Ok((CatSlice::new(x.level + 1, carrier, part)?, proj))
}

/// s_i of an sset slice, together with the projection back to the carrier.
pub(crate) fn sset_degen_parts(x: &SsetSlice, i: usize) -> Result<(SsetSlice, SMap), SharpError> {
    let prod = product_with_simplex(&x.carrier, 1);
    let mut keep = BTreeSet::new();
    for c in prod.object.all_cells() {
        let u = formal_to_vertex_list(&x.structure.apply(prod.to_left.apply_cell(c)));
        let t = formal_to_vertex_list(prod.to_right.apply_cell(c));
        if u.iter().zip(&t).all(|(&u, &t)| if t == 0 { u <= i } else { u >= i }) {
            keep.insert(c.clone());
        }
    }
    let carrier = prod.object.subcomplex(&keep)?;
    let mut assignment = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for c in carrier.all_cells() {
        let l = prod.to_left.apply_cell(c).clone();
        let u = formal_to_vertex_list(&x.structure.apply(&l));
        let t = formal_to_vertex_list(prod.to_right.apply_cell(c));
        let w: Vec<usize> = u.iter().zip(&t).map(|(&u, &t)| u + t).collect();
        assignment.insert(c.clone(), vertex_list_to_formal(&w));
        proj.insert(c.clone(), l);
    }
    let structure = SMap::new(carrier.clone(), std_simplex(x.level + 1), assignment)?;
    let proj = SMap::new(carrier.clone(), x.carrier.clone(), proj)?;
    Ok((SsetSlice::new(x.level + 1, carrier, structure)?, proj))
}

fn cospan_degen(x: &CospanSlice, i: usize) -> Result<CospanSlice, SharpError> {
    let sigma = |j: usize| if j <= i { j } else { j - 1 };
    let legs = (0..=x.level + 1).map(|j| x.legs[sigma(j)].clone()).collect();
    let leg_maps = (0..=x.level + 1).map(|j| x.leg_maps[sigma(j)].clone()).collect();
    CospanSlice::new(x.level + 1, legs, leg_maps, x.apex.clone())
}

/// The i-th face of a slice morphism.
pub fn face_map(f: &SliceMorphism, i: usize) -> Result<SliceMorphism, SharpError> {
    check_face_index(f.level(), i)?;
    match f {
        SliceMorphism::Cat { src, dst, map } => {
            let fsrc = cat_face(src, i)?;
            let fdst = cat_face(dst, i)?;
            let ob = fsrc
                .carrier
                .objects()
                .iter()
                .map(|o| (o.clone(), map.ob(o).clone()))
                .collect();
            let mor = fsrc
                .carrier
                .morphisms()
                .iter()
                .map(|m| (m.clone(), map.mor(m).clone()))
                .collect();
            let restricted = FinFunctor::new(fsrc.carrier.clone(), fdst.carrier.clone(), ob, mor)?;
            SliceMorphism::new_cat(fsrc, fdst, restricted)
        }
        SliceMorphism::Sset { src, dst, map } => {
            let fsrc = sset_face(src, i)?;
            let fdst = sset_face(dst, i)?;
            let assignment = fsrc
                .carrier
                .all_cells()
                .map(|c| (c.clone(), map.apply_cell(c).clone()))
                .collect();
            let restricted = SMap::new(fsrc.carrier.clone(), fdst.carrier.clone(), assignment)?;
            SliceMorphism::new_sset(fsrc, fdst, restricted)
        }
        SliceMorphism::Cospan { src, dst, legs, apex } => {
            let fsrc = cospan_face(src, i)?;
            let fdst = cospan_face(dst, i)?;
            let mut legs = legs.clone();
            legs.remove(i);
            SliceMorphism::new_cospan(fsrc, fdst, legs, apex.clone())
        }
    }
}

/// The i-th degeneracy of a slice morphism.
pub fn degeneracy_map(f: &SliceMorphism, i: usize) -> Result<SliceMorphism, SharpError> {
    if i > f.level() {
        return Err(SharpError::BadIndex { index: i, level: f.level() });
    }
    match f {
        SliceMorphism::Cat { src, dst, map } => {
            let (dsrc, _) = cat_degen_parts(src, i)?;
            let (ddst, _) = cat_degen_parts(dst, i)?;
            let delta1 = delta_cat(1);
            let mut ob = BTreeMap::new();
            for c in src.carrier.objects() {
                for e in 0..=1usize {
                    let id = product_object(c, e);
                    if dsrc.carrier.has_object(&id) {
                        ob.insert(id, product_object(map.ob(c), e));
                    }
                }
            }
            let mut mor = BTreeMap::new();
            for m in src.carrier.morphisms() {
                for dm in delta1.morphisms() {
                    let id = product_morphism(m, dm);
                    if dsrc.carrier.has_morphism(&id) {
                        mor.insert(id, product_morphism(map.mor(m), dm));
                    }
                }
            }
            let spread = FinFunctor::new(dsrc.carrier.clone(), ddst.carrier.clone(), ob, mor)?;
            SliceMorphism::new_cat(dsrc, ddst, spread)
        }
        SliceMorphism::Sset { src, dst, map } => {
            let (dsrc, _) = sset_degen_parts(src, i)?;
            let (ddst, _) = sset_degen_parts(dst, i)?;
            let src_prod = product_with_simplex(&src.carrier, 1);
            let dst_prod = product_with_simplex(&dst.carrier, 1);
            let mut assignment = BTreeMap::new();
            for c in dsrc.carrier.all_cells() {
                let l = map.apply(src_prod.to_left.apply_cell(c));
                let t = src_prod.to_right.apply_cell(c).clone();
                let img = dst_prod.pair_formal(l, t).ok_or_else(|| {
                    SharpError::Mismatch(format!("degeneracy image of {c} is not a pair"))
                })?;
                assignment.insert(c.clone(), img);
            }
            let spread = SMap::new(dsrc.carrier.clone(), ddst.carrier.clone(), assignment)?;
            SliceMorphism::new_sset(dsrc, ddst, spread)
        }
        SliceMorphism::Cospan { src, dst, legs, apex } => {
            let dsrc = cospan_degen(src, i)?;
            let ddst = cospan_degen(dst, i)?;
            let sigma = |j: usize| if j <= i { j } else { j - 1 };
            let legs = (0..=src.level + 1).map(|j| legs[sigma(j)].clone()).collect();
            SliceMorphism::new_cospan(dsrc, ddst, legs, apex.clone())
        }
    }
}

/// s⁽ⁿ⁾ of a level-0 object: the n-fold degenerate image, built in one
/// step as the product with Δⁿ.
pub fn s_power(x: &SliceObject, n: usize) -> Result<SliceObject, SharpError> {
    if x.level() != 0 {
        return Err(SharpError::Mismatch("s_power starts from level 0".into()));
    }
    if n == 0 {
        return Ok(x.clone());
    }
    match x {
        SliceObject::Cat(x) => {
            let delta = delta_cat(n);
            let carrier = x.carrier.product(&delta);
            let mut part = BTreeMap::new();
            for c in x.carrier.objects() {
                for k in 0..=n {
                    part.insert(product_object(c, k), k);
                }
            }
            Ok(SliceObject::Cat(CatSlice::new(n, carrier, part)?))
        }
        SliceObject::Sset(x) => {
            let prod = product_with_simplex(&x.carrier, n);
            Ok(SliceObject::Sset(SsetSlice::new(n, prod.object.clone(), prod.to_right.clone())?))
        }
        SliceObject::Cospan(x) => {
            let legs = vec![x.legs[0].clone(); n + 1];
            let leg_maps = vec![x.leg_maps[0].clone(); n + 1];
            Ok(SliceObject::Cospan(CospanSlice::new(n, legs, leg_maps, x.apex.clone())?))
        }
    }
}

/// s⁽ⁿ⁾ of a level-0 morphism.
pub fn s_power_map(f: &SliceMorphism, n: usize) -> Result<SliceMorphism, SharpError> {
    if f.level() != 0 {
        return Err(SharpError::Mismatch("s_power starts from level 0".into()));
    }
    if n == 0 {
        return Ok(f.clone());
    }
    let src = s_power(&f.src(), n)?;
    let dst = s_power(&f.dst(), n)?;
    match (f, &src, &dst) {
        (SliceMorphism::Cat { map, .. }, SliceObject::Cat(ps), SliceObject::Cat(pd)) => {
            let delta = delta_cat(n);
            let ob = map
                .ob_map()
                .iter()
                .flat_map(|(a, b)| {
                    (0..=n).map(move |k| (product_object(a, k), product_object(b, k)))
                })
                .collect();
            let mor = map
                .mor_map()
                .iter()
                .flat_map(|(a, b)| {
                    delta
                        .morphisms()
                        .iter()
                        .map(move |dm| (product_morphism(a, dm), product_morphism(b, dm)))
                        .collect::<Vec<_>>()
                })
                .collect();
            let spread = FinFunctor::new(ps.carrier.clone(), pd.carrier.clone(), ob, mor)?;
            SliceMorphism::new_cat(ps.clone(), pd.clone(), spread)
        }
        (SliceMorphism::Sset { src: s0, dst: d0, map }, SliceObject::Sset(ps), SliceObject::Sset(pd)) => {
            let src_prod = product_with_simplex(&s0.carrier, n);
            let dst_prod = product_with_simplex(&d0.carrier, n);
            let lifted = SMap::compose(map, &src_prod.to_left)?;
            let spread = dst_prod.pairing(&lifted, &src_prod.to_right)?;
            SliceMorphism::new_sset(ps.clone(), pd.clone(), spread)
        }
        (SliceMorphism::Cospan { legs, apex, .. }, SliceObject::Cospan(ps), SliceObject::Cospan(pd)) => {
            SliceMorphism::new_cospan(
                ps.clone(),
                pd.clone(),
                vec![legs[0].clone(); n + 1],
                apex.clone(),
            )
        }
        _ => unreachable!("s_power preserves the site"),
    }
}

/// The canonical relabeling d_i s⁽ⁿ⁾x ≅ s⁽ⁿ⁻¹⁾x (n ≥ 1).
pub fn spower_face_iso(x: &SliceObject, n: usize, i: usize) -> Result<SliceMorphism, SharpError> {
    if x.level() != 0 {
        return Err(SharpError::Mismatch("s_power starts from level 0".into()));
    }
    check_face_index(n, i)?;
    let source = face_slice(&s_power(x, n)?, i)?;
    let target = s_power(x, n - 1)?;
    let shift = |v: usize| v - usize::from(v > i);
    let iso = match (&source, &target, x) {
        (SliceObject::Cat(fs), SliceObject::Cat(ts), _) => {
            let mut ob = BTreeMap::new();
            let mut mor = BTreeMap::new();
            for c in x.as_cat()?.carrier.objects() {
                for k in (0..=n).filter(|k| *k != i) {
                    let id = product_object(c, k);
                    if !fs.carrier.has_object(&id) {
                        continue;
                    }
                    let img = if n == 1 { c.clone() } else { product_object(c, shift(k)) };
                    ob.insert(id, img);
                }
            }
            for m in x.as_cat()?.carrier.morphisms() {
                for a in 0..=n {
                    for b in a..=n {
                        let id = product_morphism(m, &poset_mor(a, b));
                        if !fs.carrier.has_morphism(&id) {
                            continue;
                        }
                        let img = if n == 1 {
                            m.clone()
                        } else {
                            product_morphism(m, &poset_mor(shift(a), shift(b)))
                        };
                        mor.insert(id, img);
                    }
                }
            }
            let map = FinFunctor::new(fs.carrier.clone(), ts.carrier.clone(), ob, mor)?;
            SliceMorphism::new_cat(fs.clone(), ts.clone(), map)?
        }
        (SliceObject::Sset(fs), SliceObject::Sset(ts), SliceObject::Sset(x0)) => {
            let prod = product_with_simplex(&x0.carrier, n);
            let mut assignment = BTreeMap::new();
            for c in fs.carrier.all_cells() {
                let l = prod.to_left.apply_cell(c).clone();
                let r = formal_to_vertex_list(prod.to_right.apply_cell(c));
                let img = if n == 1 {
                    l
                } else {
                    let shifted: Vec<usize> = r.iter().map(|&v| shift(v)).collect();
                    let below = product_with_simplex(&x0.carrier, n - 1);
                    below.pair_formal(l, vertex_list_to_formal(&shifted)).ok_or_else(|| {
                        SharpError::Mismatch(format!("no relabeled pair for {c}"))
                    })?
                };
                assignment.insert(c.clone(), img);
            }
            let map = SMap::new(fs.carrier.clone(), ts.carrier.clone(), assignment)?;
            SliceMorphism::new_sset(fs.clone(), ts.clone(), map)?
        }
        (SliceObject::Cospan(fs), SliceObject::Cospan(ts), _) => {
            let legs = fs.legs.iter().map(SMap::identity).collect();
            SliceMorphism::new_cospan(fs.clone(), ts.clone(), legs, SMap::identity(&fs.apex))?
        }
        _ => unreachable!("sites agree"),
    };
    debug_assert!(iso.is_iso());
    Ok(iso)
}

/// The canonical relabeling s_i s⁽ⁿ⁾x ≅ s⁽ⁿ⁺¹⁾x.
pub fn spower_degen_iso(x: &SliceObject, n: usize, i: usize) -> Result<SliceMorphism, SharpError> {
    if x.level() != 0 {
        return Err(SharpError::Mismatch("s_power starts from level 0".into()));
    }
    if i > n {
        return Err(SharpError::BadIndex { index: i, level: n });
    }
    let source = degeneracy_slice(&s_power(x, n)?, i)?;
    let target = s_power(x, n + 1)?;
    let iso = match (&source, &target, x) {
        (SliceObject::Cat(ds), SliceObject::Cat(ts), SliceObject::Cat(x0)) => {
            let inner_ob = |c: &Id, k: usize| if n == 0 { c.clone() } else { product_object(c, k) };
            let inner_mor = |m: &Id, a: usize, b: usize| {
                if n == 0 {
                    m.clone()
                } else {
                    product_morphism(m, &poset_mor(a, b))
                }
            };
            let mut ob = BTreeMap::new();
            let mut mor = BTreeMap::new();
            for c in x0.carrier.objects() {
                for k in 0..=n {
                    for e in 0..=1usize {
                        let id = product_object(&inner_ob(c, k), e);
                        if ds.carrier.has_object(&id) {
                            ob.insert(id, product_object(c, k + e));
                        }
                    }
                }
            }
            for m in x0.carrier.morphisms() {
                for a in 0..=n {
                    for b in a..=n {
                        for (ea, eb) in [(0, 0), (0, 1), (1, 1)] {
                            let id = product_morphism(
                                &inner_mor(m, a, b),
                                &poset_mor(ea, eb),
                            );
                            if ds.carrier.has_morphism(&id) {
                                mor.insert(id, product_morphism(m, &poset_mor(a + ea, b + eb)));
                            }
                        }
                    }
                }
            }
            let map = FinFunctor::new(ds.carrier.clone(), ts.carrier.clone(), ob, mor)?;
            SliceMorphism::new_cat(ds.clone(), ts.clone(), map)?
        }
        (SliceObject::Sset(ds), SliceObject::Sset(ts), SliceObject::Sset(x0)) => {
            let inner = s_power(x, n)?;
            let inner = inner.as_sset()?;
            let outer = product_with_simplex(&inner.carrier, 1);
            let flat = product_with_simplex(&x0.carrier, n + 1);
            let mut assignment = BTreeMap::new();
            for c in ds.carrier.all_cells() {
                let pl = outer.to_left.apply_cell(c);
                let t = formal_to_vertex_list(outer.to_right.apply_cell(c));
                let (l, r) = if n == 0 {
                    (pl.clone(), vec![0; t.len()])
                } else {
                    let below = product_with_simplex(&x0.carrier, n);
                    (below.to_left.apply(pl), formal_to_vertex_list(&below.to_right.apply(pl)))
                };
                let w: Vec<usize> = r.iter().zip(&t).map(|(&r, &t)| r + t).collect();
                let img = flat.pair_formal(l, vertex_list_to_formal(&w)).ok_or_else(|| {
                    SharpError::Mismatch(format!("no flattened pair for {c}"))
                })?;
                assignment.insert(c.clone(), img);
            }
            let map = SMap::new(ds.carrier.clone(), ts.carrier.clone(), assignment)?;
            SliceMorphism::new_sset(ds.clone(), ts.clone(), map)?
        }
        (SliceObject::Cospan(ds), SliceObject::Cospan(ts), _) => {
            let legs = ds.legs.iter().map(SMap::identity).collect();
            SliceMorphism::new_cospan(ds.clone(), ts.clone(), legs, SMap::identity(&ds.apex))?
        }
        _ => unreachable!("sites agree"),
    };
    debug_assert!(iso.is_iso());
    Ok(iso)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::simpset::standard::std_simplex;

    pub(crate) fn arrow_cat_slice() -> CatSlice {
        // The worked 1-collage: part 0 = {a}, part 1 = {b → c}, with
        // crossings x: a→b and y: a→c satisfying g∘x = y.
        let (a, b, c) = (Id::new("a"), Id::new("b"), Id::new("c"));
        let (ua, ub, uc) = (Id::new("1a"), Id::new("1b"), Id::new("1c"));
        let (g, xx, yy) = (Id::new("g"), Id::new("x"), Id::new("y"));
        let cat = FinCat::new(
            vec![a.clone(), b.clone(), c.clone()],
            vec![
                (ua.clone(), a.clone(), a.clone()),
                (ub.clone(), b.clone(), b.clone()),
                (uc.clone(), c.clone(), c.clone()),
                (g.clone(), b.clone(), c.clone()),
                (xx.clone(), a.clone(), b.clone()),
                (yy.clone(), a.clone(), c.clone()),
            ],
            [(a.clone(), ua.clone()), (b.clone(), ub.clone()), (c.clone(), uc.clone())].into(),
            [
                ((ua.clone(), ua.clone()), ua.clone()),
                ((ub.clone(), ub.clone()), ub.clone()),
                ((uc.clone(), uc.clone()), uc.clone()),
                ((g.clone(), ub.clone()), g.clone()),
                ((uc.clone(), g.clone()), g.clone()),
                ((xx.clone(), ua.clone()), xx.clone()),
                ((ub.clone(), xx.clone()), xx.clone()),
                ((yy.clone(), ua.clone()), yy.clone()),
                ((uc.clone(), yy.clone()), yy.clone()),
                ((g.clone(), xx.clone()), yy.clone()),
            ]
            .into(),
        )
        .unwrap();
        CatSlice::new(1, cat, [(a, 0), (b, 1), (c, 1)].into()).unwrap()
    }

    #[test]
    fn faces_of_the_worked_collage() {
        let x = SliceObject::Cat(arrow_cat_slice());
        let d0 = face_slice(&x, 0).unwrap();
        let d0 = d0.as_cat().unwrap();
        assert_eq!(d0.carrier().objects().len(), 2);
        assert_eq!(d0.carrier().morphisms().len(), 3);
        assert!(d0.carrier().objects().iter().all(|o| d0.part(o) == 0));
        let d1 = face_slice(&x, 1).unwrap();
        let d1 = d1.as_cat().unwrap();
        assert_eq!(d1.carrier().objects().len(), 1);
        assert_eq!(d1.carrier().objects()[0], Id::new("a"));
    }

    #[test]
    fn fibers_recover_the_parts() {
        let x = arrow_cat_slice();
        assert_eq!(x.fiber(0).objects().len(), 1);
        assert_eq!(x.fiber(1).objects().len(), 2);
        assert_eq!(x.fiber(1).morphisms().len(), 3);
    }

    #[test]
    fn degenerate_point_is_the_interval() {
        let pt = SliceObject::Sset(SsetSlice::point(std_simplex(0)));
        let s0 = degeneracy_slice(&pt, 0).unwrap();
        let s0 = s0.as_sset().unwrap();
        assert_eq!(s0.carrier().counts(), vec![2, 1]);
        assert!(s0.structure().is_iso());
    }

    #[test]
    fn face_of_face_commutes_literally() {
        let x = s_power(&SliceObject::Sset(SsetSlice::point(boundary_square())), 2).unwrap();
        for j in 1..=2usize {
            for i in 0..j {
                let lhs = face_slice(&face_slice(&x, j).unwrap(), i).unwrap();
                let rhs = face_slice(&face_slice(&x, i).unwrap(), j - 1).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn boundary_square() -> SSet {
        crate::simpset::standard::boundary(2)
    }

    #[test]
    fn spower_isos_are_isos() {
        let x = SliceObject::Sset(SsetSlice::point(std_simplex(1)));
        for n in 1..=2usize {
            for i in 0..=n {
                assert!(spower_face_iso(&x, n, i).unwrap().is_iso());
            }
        }
        for n in 0..=1usize {
            for i in 0..=n {
                assert!(spower_degen_iso(&x, n, i).unwrap().is_iso());
            }
        }
        let c = SliceObject::Cat(CatSlice::point(delta_cat(1)));
        assert!(spower_face_iso(&c, 2, 1).unwrap().is_iso());
        assert!(spower_degen_iso(&c, 1, 0).unwrap().is_iso());
    }

    #[test]
    fn cospan_ops_are_literal() {
        let apex = std_simplex(1);
        let leg = crate::simpset::standard::std_map(&[0], 1);
        let x = SliceObject::Cospan(CospanSlice::point(leg));
        let s0 = degeneracy_slice(&x, 0).unwrap();
        assert_eq!(face_slice(&s0, 1).unwrap(), x);
        assert_eq!(face_slice(&s0, 0).unwrap(), x);
        let _ = apex;
    }

    #[test]
    fn face_indices_are_checked() {
        let pt = SliceObject::Sset(SsetSlice::point(std_simplex(0)));
        assert!(matches!(
            face_slice(&pt, 0),
            Err(SharpError::BadIndex { index: 0, level: 0 })
        ));
        let s = s_power(&pt, 2).unwrap();
        assert!(matches!(face_slice(&s, 3), Err(SharpError::BadIndex { .. })));
    }

    #[test]
    fn slice_morphism_checks_structures() {
        // Constant map Δ¹ → Δ¹ collapsing to vertex 0 does not live over Δ¹.
        let d1 = std_simplex(1);
        let id_slice = SsetSlice::new(1, d1.clone(), SMap::identity(&d1)).unwrap();
        let collapse = crate::simpset::standard::const_vertex_map(&d1, 0, 1);
        assert!(SliceMorphism::new_sset(id_slice.clone(), id_slice.clone(), collapse).is_err());
        SliceMorphism::new_sset(id_slice.clone(), id_slice, SMap::identity(&d1)).unwrap();
    }
}
