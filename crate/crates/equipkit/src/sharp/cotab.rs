//! Cotabulators: the double colimit of a single level-n object.
//!
//! On both the cat and sset sites the cotabulator forgets the structure
//! map — the carrier itself is the universal level-0 receiver — and the
//! unit η pairs the identity with the structure.  The universal property
//! is checked against brute-force cocone enumeration, and the pushout
//! formula for cotabulators of universal extensions is verified by
//! computing both sides independently.

use super::compare::{slices_match, MatchCertificate};
use super::extend::{restrict_object, strong_equipment_extend, Extension};
use super::slice::{product_morphism, product_object, s_power, s_power_map, CatSlice, SsetSlice};
use super::{SharpError, SliceMorphism, SliceObject};
use crate::fincat::{enumerate_functors, poset_mor, CatEdge, CatGlueDiagram, FinFunctor};
use crate::id::Id;
use crate::simpset::maps_enum::{enumerate_maps, enumerate_maps_over};
use crate::simpset::standard::subcomplex_inclusion;
use crate::simpset::{colimit, SMap, SsetDiagram, SsetEdge};
use std::collections::{BTreeMap, BTreeSet};

/// A cotabulator with its unit η: x → s⁽ⁿ⁾⊥_x.
#[derive(Debug, Clone)]
pub struct CotabResult {
    pub bottom: SliceObject,
    pub eta: SliceMorphism,
}

pub fn cotabulator(x: &SliceObject) -> Result<CotabResult, SharpError> {
    let n = x.level();
    if n == 0 {
        return Ok(CotabResult {
            bottom: x.clone(),
            eta: SliceMorphism::identity(x),
        });
    }
    match x {
        SliceObject::Sset(xs) => {
            let bottom = SliceObject::Sset(SsetSlice::point(xs.carrier().clone()));
            let spow = s_power(&bottom, n)?;
            let prod = crate::simpset::product_with_simplex(xs.carrier(), n);
            let m = prod.pairing(&SMap::identity(xs.carrier()), xs.structure())?;
            let eta = SliceMorphism::new_sset(xs.clone(), spow.as_sset()?.clone(), m)?;
            Ok(CotabResult { bottom, eta })
        }
        SliceObject::Cat(xc) => {
            let bottom = SliceObject::Cat(CatSlice::point(xc.carrier().clone()));
            let spow = s_power(&bottom, n)?;
            let c = xc.carrier();
            let ob: BTreeMap<Id, Id> = c
                .objects()
                .iter()
                .map(|o| (o.clone(), product_object(o, xc.part(o))))
                .collect();
            let mor: BTreeMap<Id, Id> = c
                .morphisms()
                .iter()
                .map(|m| {
                    let e = poset_mor(xc.part(c.src(m)), xc.part(c.dst(m)));
                    (m.clone(), product_morphism(m, &e))
                })
                .collect();
            let f = FinFunctor::new(c.clone(), spow.as_cat()?.carrier().clone(), ob, mor)?;
            let eta = SliceMorphism::new_cat(xc.clone(), spow.as_cat()?.clone(), f)?;
            Ok(CotabResult { bottom, eta })
        }
        SliceObject::Cospan(_) => Err(SharpError::Mismatch(
            "cotabulators are implemented on the cat and sset sites".into(),
        )),
    }
}

/// Check the cotabulator's universal property against z by enumeration:
/// h ↦ s⁽ⁿ⁾h ∘ η must be a bijection hom(⊥_x, z) → hom_n(x, s⁽ⁿ⁾z).
pub fn verify_cotabulator(
    x: &SliceObject,
    res: &CotabResult,
    z: &SliceObject,
    budget: u64,
) -> Result<(), SharpError> {
    if z.level() != 0 || z.site() != x.site() {
        return Err(SharpError::Mismatch(
            "cotabulator universality is tested against level-0 objects of the same site".into(),
        ));
    }
    let n = x.level();
    let spow_z = s_power(z, n)?;
    let (below, above): (Vec<SliceMorphism>, Vec<SliceMorphism>) = match (x, z) {
        (SliceObject::Sset(xs), SliceObject::Sset(zs)) => {
            let bs = res.bottom.as_sset()?;
            let below = enumerate_maps(bs.carrier(), zs.carrier(), budget)?
                .into_iter()
                .map(|m| SliceMorphism::new_sset(bs.clone(), zs.clone(), m))
                .collect::<Result<Vec<_>, _>>()?;
            let sz = spow_z.as_sset()?;
            let above = enumerate_maps_over(xs.structure(), sz.structure(), budget)?
                .into_iter()
                .map(|m| SliceMorphism::new_sset(xs.clone(), sz.clone(), m))
                .collect::<Result<Vec<_>, _>>()?;
            (below, above)
        }
        (SliceObject::Cat(xc), SliceObject::Cat(zc)) => {
            let bc = res.bottom.as_cat()?;
            let below = enumerate_functors(bc.carrier(), zc.carrier(), budget)?
                .into_iter()
                .map(|f| SliceMorphism::new_cat(bc.clone(), zc.clone(), f))
                .collect::<Result<Vec<_>, _>>()?;
            let sz = spow_z.as_cat()?;
            let above = enumerate_functors(xc.carrier(), sz.carrier(), budget)?
                .into_iter()
                .filter(|f| {
                    xc.carrier()
                        .objects()
                        .iter()
                        .all(|o| sz.part(f.ob(o)) == xc.part(o))
                })
                .map(|f| SliceMorphism::new_cat(xc.clone(), sz.clone(), f))
                .collect::<Result<Vec<_>, _>>()?;
            (below, above)
        }
        _ => {
            return Err(SharpError::Mismatch(
                "cotabulator universality is implemented on the cat and sset sites".into(),
            ))
        }
    };
    let mut images = Vec::with_capacity(below.len());
    for h in &below {
        let lifted = SliceMorphism::compose(&s_power_map(h, n)?, &res.eta)?;
        if !above.contains(&lifted) {
            return Err(SharpError::VerificationFailed(
                "a cocone induced by the cotabulator is not among the enumerated cocones".into(),
            ));
        }
        if images.contains(&lifted) {
            return Err(SharpError::VerificationFailed(
                "two distinct maps out of the cotabulator induce the same cocone".into(),
            ));
        }
        images.push(lifted);
    }
    if images.len() != above.len() {
        return Err(SharpError::VerificationFailed(format!(
            "cotabulator universality: {} maps out of the bottom vs {} cocones",
            images.len(),
            above.len()
        )));
    }
    Ok(())
}

/// The cotabulator of a universal extension, checked against the pushout
/// of the cotabulators of the boundary data.
#[derive(Debug, Clone)]
pub struct CotabExtension {
    pub extension: Extension,
    pub pushout: SliceObject,
    pub certificate: MatchCertificate,
}

fn profile(x: &SliceObject) -> String {
    match x {
        SliceObject::Sset(s) => format!("sset cells {:?}", s.carrier().counts()),
        SliceObject::Cat(c) => format!(
            "cat {} objects, {} morphisms",
            c.carrier().objects().len(),
            c.carrier().morphisms().len()
        ),
        SliceObject::Cospan(c) => format!("cospan with {} legs", c.legs().len()),
    }
}

pub fn cotab_of_extension(
    x: &SliceObject,
    cover: &[(BTreeSet<usize>, SliceMorphism)],
    budget: u64,
) -> Result<CotabExtension, SharpError> {
    let extension = strong_equipment_extend(x, cover, budget)?;
    let lhs = cotabulator(&extension.object)?.bottom;

    let node_x = Id::new("bot");
    let pushout = match x {
        SliceObject::Sset(xs) => {
            let mut nodes: BTreeMap<Id, crate::simpset::SSet> =
                [(node_x.clone(), xs.carrier().clone())].into();
            let mut edges = Vec::new();
            for (k, (piece, f)) in cover.iter().enumerate() {
                let positions: Vec<usize> = piece.iter().copied().collect();
                let sub = restrict_object(x, &positions)?;
                let n_src = Id::new(format!("bot_src{k}"));
                let n_dst = Id::new(format!("bot_dst{k}"));
                let sub_c = sub.as_sset()?.carrier().clone();
                let dst_c = f.dst().as_sset()?.carrier().clone();
                let SliceMorphism::Sset { map, .. } = f else {
                    return Err(SharpError::Mismatch("cover site mismatch".into()));
                };
                edges.push(SsetEdge {
                    src: n_src.clone(),
                    dst: node_x.clone(),
                    map: subcomplex_inclusion(&sub_c, xs.carrier())?,
                });
                edges.push(SsetEdge {
                    src: n_src.clone(),
                    dst: n_dst.clone(),
                    map: map.clone(),
                });
                nodes.insert(n_src, sub_c);
                nodes.insert(n_dst, dst_c);
            }
            let colim = colimit(&SsetDiagram::new(nodes, edges)?)?;
            SliceObject::Sset(SsetSlice::point(colim.object))
        }
        SliceObject::Cat(xc) => {
            let mut nodes: BTreeMap<Id, crate::fincat::FinCat> =
                [(node_x.clone(), xc.carrier().clone())].into();
            let mut edges = Vec::new();
            for (k, (piece, f)) in cover.iter().enumerate() {
                let positions: Vec<usize> = piece.iter().copied().collect();
                let sub = restrict_object(x, &positions)?;
                let n_src = Id::new(format!("bot_src{k}"));
                let n_dst = Id::new(format!("bot_dst{k}"));
                let sub_c = sub.as_cat()?.carrier().clone();
                let dst_c = f.dst().as_cat()?.carrier().clone();
                let SliceMorphism::Cat { map, .. } = f else {
                    return Err(SharpError::Mismatch("cover site mismatch".into()));
                };
                let ob = sub_c.objects().iter().map(|o| (o.clone(), o.clone())).collect();
                let mor = sub_c.morphisms().iter().map(|m| (m.clone(), m.clone())).collect();
                let incl = FinFunctor::new(sub_c.clone(), xc.carrier().clone(), ob, mor)?;
                edges.push(CatEdge { src: n_src.clone(), dst: node_x.clone(), map: incl });
                edges.push(CatEdge { src: n_src.clone(), dst: n_dst.clone(), map: map.clone() });
                nodes.insert(n_src, sub_c);
                nodes.insert(n_dst, dst_c);
            }
            let colim = crate::fincat::cat_colimit_graph(&CatGlueDiagram::new(nodes, edges)?, budget)?;
            SliceObject::Cat(CatSlice::point(colim.object))
        }
        SliceObject::Cospan(_) => {
            return Err(SharpError::Mismatch(
                "cotabulators are implemented on the cat and sset sites".into(),
            ))
        }
    };

    let certificate = match slices_match(&lhs, &pushout, budget) {
        Ok(c) => c,
        Err(SharpError::VerificationFailed(_)) => {
            return Err(SharpError::VerificationFailed(format!(
                "cotabulator of the extension ({}) does not match the pushout ({})",
                profile(&lhs),
                profile(&pushout)
            )))
        }
        Err(e) => return Err(e),
    };
    Ok(CotabExtension { extension, pushout, certificate })
}

#[cfg(test)]
mod tests {
    use super::super::companion::{companion_simplex, VerticalChain};
    use super::super::extend::restrict_map;
    use super::super::slice::tests::arrow_cat_slice;
    use super::super::slice::{face_map, face_slice, spower_face_iso};
    use super::*;
    use crate::simpset::{boundary, sset_iso, std_simplex, FormalSimplex, SSet};

    fn pt(name: &str) -> SSet {
        SSet::new(vec![vec![Id::new(name)]], BTreeMap::new()).unwrap()
    }

    fn pt_slice(name: &str) -> SliceObject {
        SliceObject::Sset(SsetSlice::point(pt(name)))
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

    #[test]
    fn level_zero_cotabulator_is_the_object() {
        let x = pt_slice("a");
        let res = cotabulator(&x).unwrap();
        assert_eq!(res.bottom, x);
        assert_eq!(res.eta, SliceMorphism::identity(&x));
        verify_cotabulator(&x, &res, &pt_slice("z"), 10_000).unwrap();
    }

    #[test]
    fn cotabulator_of_a_degenerate_power_is_the_product() {
        let x0 = SliceObject::Sset(SsetSlice::point(boundary(1)));
        let x = s_power(&x0, 2).unwrap();
        let res = cotabulator(&x).unwrap();
        let expected = crate::simpset::product_with_simplex(&boundary(1), 2);
        assert_eq!(res.bottom.as_sset().unwrap().carrier(), &expected.object);
        verify_cotabulator(&x, &res, &pt_slice("z"), 100_000).unwrap();
        verify_cotabulator(&x, &res, &x0, 1_000_000).unwrap();
    }

    #[test]
    fn cotabulator_of_a_collage_is_the_collage_category() {
        let x = SliceObject::Cat(arrow_cat_slice());
        let res = cotabulator(&x).unwrap();
        assert_eq!(
            res.bottom.as_cat().unwrap().carrier(),
            arrow_cat_slice().carrier()
        );
        let z = SliceObject::Cat(CatSlice::point(crate::fincat::delta_cat(1)));
        verify_cotabulator(&x, &res, &z, 1_000_000).unwrap();
    }

    #[test]
    fn cotabulator_of_a_companion_is_the_cylinder() {
        let ends = SliceObject::Sset(SsetSlice::point(boundary(1)));
        let q = pt_slice("q");
        let f = collapse_map(&ends, &q);
        let chain = VerticalChain::new(vec![ends.clone(), q], vec![f.clone()]).unwrap();
        let comp = companion_simplex(&chain, 10_000).unwrap();
        let res = cotabulator(&comp.companion).unwrap();
        let SliceMorphism::Sset { map, .. } = &f else { unreachable!() };
        let cyl = crate::simpset::mapping_cylinder(map).unwrap();
        assert!(sset_iso(
            res.bottom.as_sset().unwrap().carrier(),
            &cyl.object,
            100_000
        )
        .unwrap()
        .is_some());
        verify_cotabulator(&comp.companion, &res, &ends, 1_000_000).unwrap();
    }

    #[test]
    fn identity_cover_leaves_the_cotabulator_alone() {
        let x0 = pt_slice("a");
        let x = s_power(&x0, 1).unwrap();
        let cover: Vec<(BTreeSet<usize>, SliceMorphism)> = (0..=1)
            .map(|i| {
                let piece: BTreeSet<usize> = [i].into_iter().collect();
                let r = restrict_object(&x, &[i]).unwrap();
                (piece, SliceMorphism::identity(&r))
            })
            .collect();
        let check = cotab_of_extension(&x, &cover, 100_000).unwrap();
        let direct = cotabulator(&x).unwrap();
        assert!(slices_match(&check.pushout, &direct.bottom, 100_000).is_ok());
        assert!(slices_match(
            &cotabulator(&check.extension.object).unwrap().bottom,
            &direct.bottom,
            100_000
        )
        .is_ok());
    }

    #[test]
    fn cylinder_matches_the_pushout_of_its_boundary() {
        // x = s¹(Δ¹), one end collapsed: M_g is the pushout of the
        // cylinder against Δ¹ ⊔ pt.
        let interval = std_simplex(1);
        let x0 = SliceObject::Sset(SsetSlice::point(interval));
        let x = s_power(&x0, 1).unwrap();
        let p = pt_slice("p");
        let g = collapse_map(&x0, &p);
        let iso0 = spower_face_iso(&x0, 1, 0).unwrap();
        let f0 = SliceMorphism::compose(&g, &iso0).unwrap();
        let f1 = SliceMorphism::identity(&face_slice(&x, 1).unwrap());
        let cover: Vec<(BTreeSet<usize>, SliceMorphism)> = vec![
            ([1].into_iter().collect(), f0),
            ([0].into_iter().collect(), f1),
        ];
        let check = cotab_of_extension(&x, &cover, 100_000).unwrap();
        let SliceMorphism::Sset { map, .. } = &g else { unreachable!() };
        let cyl = crate::simpset::mapping_cylinder(map).unwrap();
        assert!(sset_iso(
            check.pushout.as_sset().unwrap().carrier(),
            &cyl.object,
            100_000
        )
        .unwrap()
        .is_some());
    }

    #[test]
    fn companion_step_cotabulator_matches_the_pushout() {
        // The facet cover of the 2-chain companion recursion.
        let points = vec![pt_slice("a"), pt_slice("b"), pt_slice("c")];
        let maps: Vec<SliceMorphism> = points
            .windows(2)
            .map(|w| collapse_map(&w[0], &w[1]))
            .collect();
        let chain = VerticalChain::new(points.clone(), maps).unwrap();
        let x = s_power(&points[0], 2).unwrap();
        let mut cover: Vec<(BTreeSet<usize>, SliceMorphism)> = Vec::new();
        for i in 0..=2usize {
            let sub = companion_simplex(&chain.face(i).unwrap(), 10_000).unwrap();
            let iso = spower_face_iso(&points[0], 2, i).unwrap();
            let f = if i == 0 {
                let step = s_power_map(chain.map(0), 1).unwrap();
                SliceMorphism::compose(&sub.phi, &SliceMorphism::compose(&step, &iso).unwrap())
                    .unwrap()
            } else {
                SliceMorphism::compose(&sub.phi, &iso).unwrap()
            };
            let piece: BTreeSet<usize> = (0..=2).filter(|&v| v != i).collect();
            cover.push((piece, f));
        }
        let check = cotab_of_extension(&x, &cover, 200_000).unwrap();
        let comp = companion_simplex(&chain, 10_000).unwrap();
        assert!(sset_iso(
            check.pushout.as_sset().unwrap().carrier(),
            comp.companion.as_sset().unwrap().carrier(),
            200_000
        )
        .unwrap()
        .is_some());
    }

    #[test]
    fn eta_restricts_to_the_unit_on_faces() {
        let x = SliceObject::Cat(arrow_cat_slice());
        let res = cotabulator(&x).unwrap();
        for i in 0..=1 {
            let df = face_map(&res.eta, i).unwrap();
            let fx = face_slice(&x, i).unwrap();
            assert_eq!(df.src(), fx);
        }
        let _ = restrict_map(&res.eta, &[0]).unwrap();
    }
}
