//! Mapping cylinders.

use super::colimit::{colimit, SsetDiagram, SsetEdge};
use super::pairs::product_with_simplex;
use super::standard::const_vertex_map;
use super::{SMap, SSet, SimpsetError};
use crate::id::Id;
use std::collections::BTreeMap;

/// The mapping cylinder of f: X → Y, i.e. the pushout of
/// X×Δ¹ ← X → Y where X×{1} is glued to Y along f.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub object: SSet,
    /// X at the free end (X × {0}).
    pub at_end: SMap,
    /// Y inside the cylinder.
    pub from_target: SMap,
    /// The whole cylinder X×Δ¹ mapping in.
    pub cylinder_leg: SMap,
}

/// End inclusion X ≅ X×{v} ↪ X×Δ¹.
pub fn end_inclusion(x: &SSet, cyl: &super::pairs::PairObject, v: usize) -> Result<SMap, SimpsetError> {
    cyl.pairing(&SMap::identity(x), &const_vertex_map(x, v, 1))
}

pub fn mapping_cylinder(f: &SMap) -> Result<MappingCylinder, SimpsetError> {
    let x = f.source();
    let y = f.target();
    let cyl = product_with_simplex(x, 1);
    let end0 = end_inclusion(x, &cyl, 0)?;
    let end1 = end_inclusion(x, &cyl, 1)?;
    let n_cyl = Id::new("cyl");
    let n_src = Id::new("src");
    let n_tgt = Id::new("tgt");
    let nodes: BTreeMap<Id, SSet> = [
        (n_cyl.clone(), cyl.object.clone()),
        (n_src.clone(), x.clone()),
        (n_tgt.clone(), y.clone()),
    ]
    .into();
    let edges = vec![
        SsetEdge { src: n_src.clone(), dst: n_cyl.clone(), map: end1 },
        SsetEdge { src: n_src.clone(), dst: n_tgt.clone(), map: f.clone() },
    ];
    let colim = colimit(&SsetDiagram::new(nodes, edges)?)?;
    let cylinder_leg = colim.cocone[&n_cyl].clone();
    let at_end = SMap::compose(&cylinder_leg, &end0)?;
    let from_target = colim.cocone[&n_tgt].clone();
    Ok(MappingCylinder { object: colim.object, at_end, from_target, cylinder_leg })
}
