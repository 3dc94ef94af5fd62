//! Double colimits of horizontal diagrams.
//!
//! A horizontal diagram assigns a level-n object to each nondegenerate
//! n-simplex of the index nerve, with oplax structure maps along the
//! injective operators.  Its double colimit is computed by the structure
//! theorem: an ordinary colimit of cotabulators over the category of
//! nondegenerate simplices.

use super::cotab::{cotabulator, CotabResult};
use super::extend::{restrict_map, restrict_object};
use super::slice::{s_power_map, CatSlice, SsetSlice};
use super::{SharpError, Site, SliceMorphism, SliceObject};
use crate::fincat::{gro_of_index, CatEdge, CatGlueDiagram, FinCat, FinFunctor, GroIndex};
use crate::id::Id;
use crate::simpset::standard::subcomplex_inclusion;
use crate::simpset::{colimit, SMap, SSet, SsetDiagram, SsetEdge};
use std::collections::BTreeMap;

/// An oplax horizontal diagram (F, ψ) over a finite direct index.
pub struct HorizontalDiagram {
    site: Site,
    index: FinCat,
    gro: GroIndex,
    assignment: BTreeMap<Id, SliceObject>,
    psi: BTreeMap<Id, SliceMorphism>,
}

impl HorizontalDiagram {
    /// Validate an oplax diagram: one object per nondegenerate nerve cell
    /// with level matching the dimension, ψ per non-identity operator with
    /// the right endpoints, and oplax coherence on composable pairs.
    pub fn new(
        index: FinCat,
        dim_bound: usize,
        assignment: BTreeMap<Id, SliceObject>,
        psi: BTreeMap<Id, SliceMorphism>,
    ) -> Result<HorizontalDiagram, SharpError> {
        let gro = gro_of_index(&index, dim_bound)?;
        let mut site = None;
        for cell in gro.nerve.all_cells() {
            let x = assignment.get(cell).ok_or_else(|| {
                SharpError::Mismatch(format!("no object assigned to nerve simplex {cell}"))
            })?;
            if x.level() != gro.dim[cell] {
                return Err(SharpError::Mismatch(format!(
                    "object at {cell} has level {}, expected {}",
                    x.level(),
                    gro.dim[cell]
                )));
            }
            match site {
                None => site = Some(x.site()),
                Some(s) if s == x.site() => {}
                Some(_) => {
                    return Err(SharpError::Mismatch(
                        "diagram objects live on different sites".into(),
                    ))
                }
            }
        }
        let site = site.ok_or_else(|| SharpError::Mismatch("empty index".into()))?;
        for key in assignment.keys() {
            if !gro.nerve.has_cell(key) {
                return Err(SharpError::Mismatch(format!(
                    "assignment mentions unknown simplex {key}"
                )));
            }
        }

        let d = HorizontalDiagram { site, index, gro, assignment, psi };
        for m in d.gro.cat.morphisms() {
            if d.gro.cat.is_identity(m) {
                if d.psi.contains_key(m) {
                    return Err(SharpError::Mismatch(
                        "structure maps for identity operators are implicit".into(),
                    ));
                }
                continue;
            }
            let sigma = d.gro.cat.src(m);
            let tau = &d.gro.target[m];
            let expected = restrict_object(&d.assignment[tau], &d.gro.theta[m])?;
            let p = d.psi.get(m).ok_or_else(|| {
                SharpError::Mismatch(format!("no structure map for operator {m}"))
            })?;
            if p.src() != d.assignment[sigma] || p.dst() != expected {
                return Err(SharpError::Mismatch(format!(
                    "structure map {m} has the wrong endpoints"
                )));
            }
        }
        // Oplax coherence: ψ_{θ₂∘θ₁} = θ₁(ψ_{θ₂}) ∘ ψ_{θ₁}.
        for m2 in d.gro.cat.morphisms() {
            if d.gro.cat.is_identity(m2) {
                continue;
            }
            for m1 in d.gro.cat.morphisms() {
                if d.gro.cat.is_identity(m1) || d.gro.cat.dst(m1) != d.gro.cat.src(m2) {
                    continue;
                }
                let m3 = d.gro.cat.compose(m2, m1).clone();
                let lhs = d.psi_of(&m3)?;
                let restricted = restrict_map(&d.psi_of(m2)?, &d.gro.theta[m1])?;
                let rhs = SliceMorphism::compose(&restricted, &d.psi_of(m1)?)?;
                if lhs != rhs {
                    return Err(SharpError::Mismatch(format!(
                        "oplax coherence fails on {m2} ∘ {m1}"
                    )));
                }
            }
        }
        Ok(d)
    }

    /// A strict diagram: every ψ is an identity, which requires the faces
    /// of the assigned objects to be the assigned faces on the nose.
    pub fn strict(
        index: FinCat,
        dim_bound: usize,
        assignment: BTreeMap<Id, SliceObject>,
    ) -> Result<HorizontalDiagram, SharpError> {
        let gro = gro_of_index(&index, dim_bound)?;
        let mut psi = BTreeMap::new();
        for m in gro.cat.morphisms() {
            if gro.cat.is_identity(m) {
                continue;
            }
            let sigma = gro.cat.src(m);
            let x = assignment.get(sigma).ok_or_else(|| {
                SharpError::Mismatch(format!("no object assigned to nerve simplex {sigma}"))
            })?;
            psi.insert(m.clone(), SliceMorphism::identity(x));
        }
        HorizontalDiagram::new(index, dim_bound, assignment, psi)
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn index(&self) -> &FinCat {
        &self.index
    }

    pub fn gro(&self) -> &GroIndex {
        &self.gro
    }

    pub fn object(&self, cell: &Id) -> &SliceObject {
        &self.assignment[cell]
    }

    fn psi_of(&self, m: &Id) -> Result<SliceMorphism, SharpError> {
        if self.gro.cat.is_identity(m) {
            return Ok(SliceMorphism::identity(
                &self.assignment[self.gro.cat.src(m)],
            ));
        }
        Ok(self.psi[m].clone())
    }
}

/// A double colimit with its cocone and the structure maps into the
/// constant diagram.
pub struct DcolimResult {
    pub object: SliceObject,
    /// Per nerve simplex σ: ⊥_{F(σ)} → dcolim F in the vertical category.
    pub legs: BTreeMap<Id, SliceMorphism>,
    /// Per nerve simplex σ: the component F(σ) → s⁽ⁿ⁾ dcolim F.
    pub etas: BTreeMap<Id, SliceMorphism>,
}

pub fn dcolim(f: &HorizontalDiagram, budget: u64) -> Result<DcolimResult, SharpError> {
    let cotabs: BTreeMap<Id, CotabResult> = f
        .gro
        .nerve
        .all_cells()
        .map(|c| cotabulator(&f.assignment[c]).map(|r| (c.clone(), r)))
        .collect::<Result<_, _>>()?;

    let (object, legs): (SliceObject, BTreeMap<Id, SliceMorphism>) = match f.site {
        Site::Sset => {
            let nodes: BTreeMap<Id, SSet> = cotabs
                .iter()
                .map(|(c, r)| Ok((c.clone(), r.bottom.as_sset()?.carrier().clone())))
                .collect::<Result<_, SharpError>>()?;
            let mut edges = Vec::new();
            for m in f.gro.cat.morphisms() {
                if f.gro.cat.is_identity(m) {
                    continue;
                }
                let sigma = f.gro.cat.src(m).clone();
                let tau = f.gro.target[m].clone();
                let psi = f.psi_of(m)?;
                let SliceMorphism::Sset { map, dst, .. } = &psi else {
                    return Err(SharpError::Mismatch("site mismatch in ψ".into()));
                };
                let incl =
                    subcomplex_inclusion(dst.carrier(), f.assignment[&tau].as_sset()?.carrier())?;
                edges.push(SsetEdge {
                    src: sigma,
                    dst: tau,
                    map: SMap::compose(&incl, map)?,
                });
            }
            let colim = colimit(&SsetDiagram::new(nodes, edges)?)?;
            let obj = SliceObject::Sset(SsetSlice::point(colim.object.clone()));
            let legs = cotabs
                .iter()
                .map(|(c, r)| {
                    let leg = SliceMorphism::new_sset(
                        r.bottom.as_sset()?.clone(),
                        obj.as_sset()?.clone(),
                        colim.cocone[c].clone(),
                    )?;
                    Ok((c.clone(), leg))
                })
                .collect::<Result<_, SharpError>>()?;
            (obj, legs)
        }
        Site::Cat => {
            let nodes: BTreeMap<Id, FinCat> = cotabs
                .iter()
                .map(|(c, r)| Ok((c.clone(), r.bottom.as_cat()?.carrier().clone())))
                .collect::<Result<_, SharpError>>()?;
            let mut edges = Vec::new();
            for m in f.gro.cat.morphisms() {
                if f.gro.cat.is_identity(m) {
                    continue;
                }
                let sigma = f.gro.cat.src(m).clone();
                let tau = f.gro.target[m].clone();
                let psi = f.psi_of(m)?;
                let SliceMorphism::Cat { map, dst, .. } = &psi else {
                    return Err(SharpError::Mismatch("site mismatch in ψ".into()));
                };
                let sub = dst.carrier();
                let amb = f.assignment[&tau].as_cat()?.carrier();
                let ob = sub.objects().iter().map(|o| (o.clone(), o.clone())).collect();
                let mor = sub.morphisms().iter().map(|x| (x.clone(), x.clone())).collect();
                let incl = FinFunctor::new(sub.clone(), amb.clone(), ob, mor)?;
                edges.push(CatEdge {
                    src: sigma,
                    dst: tau,
                    map: FinFunctor::compose(&incl, map)?,
                });
            }
            let colim =
                crate::fincat::cat_colimit_graph(&CatGlueDiagram::new(nodes, edges)?, budget)?;
            let obj = SliceObject::Cat(CatSlice::point(colim.object.clone()));
            let legs = cotabs
                .iter()
                .map(|(c, r)| {
                    let leg = SliceMorphism::new_cat(
                        r.bottom.as_cat()?.clone(),
                        obj.as_cat()?.clone(),
                        colim.legs[c].clone(),
                    )?;
                    Ok((c.clone(), leg))
                })
                .collect::<Result<_, SharpError>>()?;
            (obj, legs)
        }
        Site::Cospan => {
            return Err(SharpError::Mismatch(
                "double colimits are implemented on the cat and sset sites".into(),
            ))
        }
    };

    let etas = cotabs
        .iter()
        .map(|(c, r)| {
            let n = f.assignment[c].level();
            let eta = SliceMorphism::compose(&s_power_map(&legs[c], n)?, &r.eta)?;
            Ok((c.clone(), eta))
        })
        .collect::<Result<_, SharpError>>()?;

    Ok(DcolimResult { object, legs, etas })
}

#[cfg(test)]
mod tests {
    use super::super::companion::{companion_simplex, VerticalChain};
    use super::super::compare::slices_match;
    use super::super::slice::tests::arrow_cat_slice;
    use super::super::slice::face_slice;
    use super::*;
    use crate::fincat::delta_cat;
    use crate::simpset::{boundary, mapping_cylinder, sset_iso, FormalSimplex};
    use std::collections::BTreeSet;

    fn pt_slice(name: &str) -> SliceObject {
        let s = crate::simpset::SSet::new(vec![vec![Id::new(name)]], BTreeMap::new()).unwrap();
        SliceObject::Sset(SsetSlice::point(s))
    }

    fn collapse_map(src: &SliceObject, dst: &SliceObject) -> SliceMorphism {
        let s = src.as_sset().unwrap();
        let d = dst.as_sset().unwrap();
        let base = d.carrier().cells(0)[0].clone();
        let assign = s
            .carrier()
            .all_cells()
            .map(|c| {
                let dim = s.carrier().dim_of(c);
                let word: Vec<usize> = (0..dim).rev().collect();
                (c.clone(), FormalSimplex { base: base.clone(), word })
            })
            .collect();
        let m = SMap::new(s.carrier().clone(), d.carrier().clone(), assign).unwrap();
        SliceMorphism::new_sset(s.clone(), d.clone(), m).unwrap()
    }

    /// Strict diagram over Δ¹ whose edge value is `top`; the vertex values
    /// are the faces of `top`, read off through the operator data.
    fn over_interval(top: SliceObject) -> HorizontalDiagram {
        let j = delta_cat(1);
        let gro = gro_of_index(&j, 2).unwrap();
        let edge_cell = gro.nerve.cells(1)[0].clone();
        let mut assignment: BTreeMap<Id, SliceObject> =
            [(edge_cell.clone(), top.clone())].into();
        for m in gro.cat.morphisms() {
            if gro.target[m] == edge_cell && gro.dim[gro.cat.src(m)] == 0 {
                let v = restrict_object(&top, &gro.theta[m]).unwrap();
                assignment.insert(gro.cat.src(m).clone(), v);
            }
        }
        HorizontalDiagram::strict(j, 2, assignment).unwrap()
    }

    #[test]
    fn constant_diagram_over_a_point_is_the_object() {
        let x = pt_slice("a");
        let j = delta_cat(0);
        let gro = gro_of_index(&j, 2).unwrap();
        let v = gro.nerve.cells(0)[0].clone();
        let d = HorizontalDiagram::strict(j, 2, [(v, x.clone())].into()).unwrap();
        let res = dcolim(&d, 100_000).unwrap();
        assert!(slices_match(&res.object, &x, 10_000).is_ok());
    }

    #[test]
    fn collage_over_the_interval_is_the_collage() {
        let top = SliceObject::Cat(arrow_cat_slice());
        let d = over_interval(top.clone());
        let res = dcolim(&d, 1_000_000).unwrap();
        let expected = SliceObject::Cat(CatSlice::point(arrow_cat_slice().carrier().clone()));
        assert!(slices_match(&res.object, &expected, 1_000_000).is_ok());
    }

    #[test]
    fn companion_over_the_interval_is_the_mapping_cylinder() {
        let ends = SliceObject::Sset(SsetSlice::point(boundary(1)));
        let q = pt_slice("q");
        let f = collapse_map(&ends, &q);
        let chain = VerticalChain::new(vec![ends, q], vec![f.clone()]).unwrap();
        let comp = companion_simplex(&chain, 10_000).unwrap();
        let d = over_interval(comp.companion.clone());
        let res = dcolim(&d, 100_000).unwrap();
        let SliceMorphism::Sset { map, .. } = &f else { unreachable!() };
        let cyl = mapping_cylinder(map).unwrap();
        assert!(sset_iso(
            res.object.as_sset().unwrap().carrier(),
            &cyl.object,
            100_000
        )
        .unwrap()
        .is_some());
        // The edge-component of the structure transformation exists and
        // lands at level 1.
        let edge_cell = d.gro().nerve.cells(1)[0].clone();
        assert_eq!(res.etas[&edge_cell].src(), comp.companion);
        assert_eq!(res.etas[&edge_cell].level(), 1);
    }

    #[test]
    fn oplax_structure_maps_are_validated_and_used() {
        // F(edge) is a cylinder on "u"; the vertex assignments are fresh
        // points "v" and "w", reconciled by non-identity ψ's.
        let u = pt_slice("u");
        let top = crate::sharp::slice::s_power(&u, 1).unwrap();
        let j = delta_cat(1);
        let gro = gro_of_index(&j, 2).unwrap();
        let edge_cell = gro.nerve.cells(1)[0].clone();
        let mut assignment: BTreeMap<Id, SliceObject> =
            [(edge_cell.clone(), top.clone())].into();
        let mut psi = BTreeMap::new();
        let names = ["v", "w"];
        for m in gro.cat.morphisms() {
            if gro.cat.is_identity(m) || gro.target[m] != edge_cell {
                continue;
            }
            let vertex = gro.theta[m][0];
            let val = pt_slice(names[vertex]);
            let target = restrict_object(&top, &gro.theta[m]).unwrap();
            assignment.insert(gro.cat.src(m).clone(), val.clone());
            psi.insert(m.clone(), collapse_map(&val, &target));
        }
        let d = HorizontalDiagram::new(j, 2, assignment, psi).unwrap();
        let res = dcolim(&d, 100_000).unwrap();
        // Cylinder on a point with both ends glued to points: still an
        // interval, two vertices and one edge.
        assert_eq!(
            res.object.as_sset().unwrap().carrier().counts(),
            vec![2, 1]
        );
    }

    #[test]
    fn strictness_is_enforced() {
        let j = delta_cat(1);
        let gro = gro_of_index(&j, 2).unwrap();
        let edge_cell = gro.nerve.cells(1)[0].clone();
        let top = crate::sharp::slice::s_power(&pt_slice("u"), 1).unwrap();
        let mut assignment: BTreeMap<Id, SliceObject> =
            [(edge_cell.clone(), top.clone())].into();
        for m in gro.cat.morphisms() {
            if gro.target[m] == edge_cell && gro.dim[gro.cat.src(m)] == 0 {
                // Deliberately wrong vertex values.
                assignment.insert(gro.cat.src(m).clone(), pt_slice("zzz"));
            }
        }
        match HorizontalDiagram::strict(j, 2, assignment) {
            Err(SharpError::Mismatch(_)) => {}
            other => panic!("expected Mismatch, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn two_simplex_companion_diagram_glues_exactly() {
        // Strict companion diagram over Δ²: the dcolim is the full
        // companion carrier (all faces are subcomplexes of it).
        let points = vec![pt_slice("a"), pt_slice("b"), pt_slice("c")];
        let maps: Vec<SliceMorphism> = points
            .windows(2)
            .map(|w| collapse_map(&w[0], &w[1]))
            .collect();
        let chain = VerticalChain::new(points, maps).unwrap();
        let comp = companion_simplex(&chain, 10_000).unwrap();

        let j = delta_cat(2);
        let gro = gro_of_index(&j, 3).unwrap();
        let top_cell = gro.nerve.cells(2)[0].clone();
        let mut assignment: BTreeMap<Id, SliceObject> =
            [(top_cell.clone(), comp.companion.clone())].into();
        for m in gro.cat.morphisms() {
            if gro.target[m] == top_cell && !gro.cat.is_identity(m) {
                let v = restrict_object(&comp.companion, &gro.theta[m]).unwrap();
                assignment.insert(gro.cat.src(m).clone(), v);
            }
        }
        assert_eq!(assignment.len(), gro.nerve.all_cells().count());
        let d = HorizontalDiagram::strict(j, 3, assignment).unwrap();
        let res = dcolim(&d, 200_000).unwrap();
        assert!(sset_iso(
            res.object.as_sset().unwrap().carrier(),
            comp.companion.as_sset().unwrap().carrier(),
            200_000
        )
        .unwrap()
        .is_some());

        // Face values of a companion diagram really are the sub-companions.
        for i in 0..=2usize {
            let sub = companion_simplex(&chain.face(i).unwrap(), 10_000).unwrap();
            let keep: Vec<usize> = (0..=2).filter(|&v| v != i).collect();
            let restricted = restrict_object(&comp.companion, &keep).unwrap();
            assert_eq!(restricted, sub.companion);
            assert_eq!(restricted, face_slice(&comp.companion, i).unwrap());
        }
    }
}
