//! Colimits of finite diagrams of simplicial sets, computed levelwise.

use super::levelwise::LevelwiseSSet;
use super::{encode_formal, FormalSimplex, SMap, SSet, SimpsetError};
use crate::id::Id;
use crate::util::UnionFind;
use std::collections::BTreeMap;

/// A finite diagram: named nodes and a list of edges between them.
#[derive(Clone, Debug)]
pub struct SsetDiagram {
    nodes: BTreeMap<Id, SSet>,
    edges: Vec<SsetEdge>,
}

#[derive(Clone, Debug)]
pub struct SsetEdge {
    pub src: Id,
    pub dst: Id,
    pub map: SMap,
}

impl SsetDiagram {
    pub fn new(
        nodes: BTreeMap<Id, SSet>,
        edges: Vec<SsetEdge>,
    ) -> Result<SsetDiagram, SimpsetError> {
        for e in &edges {
            let src = nodes.get(&e.src).ok_or_else(|| {
                SimpsetError::Incompatible(format!("diagram: unknown node {}", e.src))
            })?;
            let dst = nodes.get(&e.dst).ok_or_else(|| {
                SimpsetError::Incompatible(format!("diagram: unknown node {}", e.dst))
            })?;
            if e.map.source() != src || e.map.target() != dst {
                return Err(SimpsetError::Incompatible(format!(
                    "diagram: edge {} → {} carries a map with the wrong endpoints",
                    e.src, e.dst
                )));
            }
        }
        Ok(SsetDiagram { nodes, edges })
    }

    pub fn nodes(&self) -> &BTreeMap<Id, SSet> {
        &self.nodes
    }

    pub fn edges(&self) -> &[SsetEdge] {
        &self.edges
    }
}

/// A computed colimit: the object, one cocone leg per node, and for each
/// nondegenerate cell a witnessing node cell.
#[derive(Clone, Debug)]
pub struct SsetColimit {
    pub object: SSet,
    pub cocone: BTreeMap<Id, SMap>,
    witness: BTreeMap<Id, (Id, Id)>,
}

impl SsetColimit {
    /// Which (node, nondegenerate cell) maps onto a colimit cell.
    pub fn witness(&self, cell: &Id) -> &(Id, Id) {
        &self.witness[cell]
    }
}

fn class_id(node: &Id, formal: &FormalSimplex) -> Id {
    let readable = format!("{node}@{}", encode_formal(formal));
    if readable.len() <= 48 && readable.matches('@').count() == 1 {
        Id::new(readable)
    } else {
        Id::derive("cls", &[node.as_str().to_string(), encode_formal(formal)])
    }
}

struct Level {
    members: Vec<(Id, FormalSimplex)>,
    index: BTreeMap<(Id, FormalSimplex), usize>,
    uf: UnionFind,
}

/// Colimit of a finite diagram, by levelwise quotient and renormalization.
pub fn colimit(diagram: &SsetDiagram) -> Result<SsetColimit, SimpsetError> {
    let top = diagram.nodes.values().filter_map(|x| x.max_dim()).max();
    let Some(top) = top else {
        let cocone = diagram
            .nodes
            .iter()
            .map(|(k, x)| {
                (k.clone(), SMap::new(x.clone(), SSet::empty(), BTreeMap::new()).unwrap())
            })
            .collect();
        return Ok(SsetColimit { object: SSet::empty(), cocone, witness: BTreeMap::new() });
    };

    let mut levels: Vec<Level> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut members = Vec::new();
        for (nk, x) in &diagram.nodes {
            for f in x.formals_at(k) {
                members.push((nk.clone(), f));
            }
        }
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let uf = UnionFind::new(members.len());
        levels.push(Level { members, index, uf });
    }
    for e in &diagram.edges {
        let x = &diagram.nodes[&e.src];
        for (k, level) in levels.iter_mut().enumerate() {
            for f in x.formals_at(k) {
                let a = level.index[&(e.src.clone(), f.clone())];
                let b = level.index[&(e.dst.clone(), e.map.apply(&f))];
                level.uf.union(a, b);
            }
        }
    }

    // Canonical member per class, then ids per member.
    let mut canon: Vec<BTreeMap<usize, (Id, FormalSimplex)>> = Vec::with_capacity(top + 1);
    for level in levels.iter_mut() {
        let mut by_root: BTreeMap<usize, (Id, FormalSimplex)> = BTreeMap::new();
        for i in 0..level.members.len() {
            let root = level.uf.find(i);
            let m = level.members[i].clone();
            by_root
                .entry(root)
                .and_modify(|cur| {
                    if m < *cur {
                        *cur = m.clone();
                    }
                })
                .or_insert(m);
        }
        canon.push(by_root);
    }
    let cid = |levels: &mut Vec<Level>, canon: &[BTreeMap<usize, (Id, FormalSimplex)>], k: usize, node: &Id, f: &FormalSimplex| -> Id {
        let i = levels[k].index[&(node.clone(), f.clone())];
        let root = levels[k].uf.find(i);
        let (n, m) = &canon[k][&root];
        class_id(n, m)
    };

    let mut lw = LevelwiseSSet::default();
    for k in 0..=top {
        let roots: Vec<usize> = canon[k].keys().copied().collect();
        let mut level_ids = Vec::new();
        for root in roots {
            let (n, m) = canon[k][&root].clone();
            let id = class_id(&n, &m);
            level_ids.push(id.clone());
            let x = &diagram.nodes[&n];
            if k >= 1 {
                for i in 0..=k {
                    let fm = x.face_formal(&m, i);
                    let fid = cid(&mut levels, &canon, k - 1, &n, &fm);
                    lw.face.insert((id.clone(), i), fid);
                }
            }
            if k < top {
                for i in 0..=k {
                    let sm = m.degenerate(i);
                    let sid = cid(&mut levels, &canon, k + 1, &n, &sm);
                    lw.degen.insert((id.clone(), i), sid);
                }
            }
        }
        level_ids.sort();
        level_ids.dedup();
        lw.levels.push(level_ids);
    }
    let (object, forms) = lw.normalize()?;

    let mut cocone = BTreeMap::new();
    for (nk, x) in &diagram.nodes {
        let assign = x
            .all_cells()
            .map(|c| {
                let id = cid(&mut levels, &canon, x.dim_of(c), nk, &FormalSimplex::nondeg(c.clone()));
                (c.clone(), forms[&id].clone())
            })
            .collect();
        cocone.insert(nk.clone(), SMap::new(x.clone(), object.clone(), assign)?);
    }
    let mut witness = BTreeMap::new();
    for (k, by_root) in canon.iter().enumerate() {
        for (n, m) in by_root.values() {
            let id = class_id(n, m);
            if object.has_cell(&id) && object.dim_of(&id) == k {
                debug_assert!(m.word.is_empty());
                witness.insert(id, (n.clone(), m.base.clone()));
            }
        }
    }
    Ok(SsetColimit { object, cocone, witness })
}

/// The map out of a colimit determined by a compatible family of legs.
/// Fails if the family does not actually commute with the cocone.
pub fn induced_map(
    colim: &SsetColimit,
    legs: &BTreeMap<Id, SMap>,
) -> Result<SMap, SimpsetError> {
    let mut target: Option<&SSet> = None;
    for leg in legs.values() {
        match target {
            None => target = Some(leg.target()),
            Some(t) if t == leg.target() => {}
            Some(_) => {
                return Err(SimpsetError::Incompatible(
                    "induced_map: legs land in different targets".into(),
                ))
            }
        }
    }
    let target = target
        .ok_or_else(|| SimpsetError::Incompatible("induced_map: no legs given".into()))?
        .clone();
    let mut assign = BTreeMap::new();
    for cell in colim.object.all_cells() {
        let (node, base) = colim.witness(cell);
        let leg = legs.get(node).ok_or_else(|| {
            SimpsetError::Incompatible(format!("induced_map: missing leg for node {node}"))
        })?;
        assign.insert(cell.clone(), leg.apply_cell(base).clone());
    }
    let map = SMap::new(colim.object.clone(), target, assign)?;
    for (node, leg) in legs {
        let via = SMap::compose(&map, &colim.cocone[node])?;
        if &via != leg {
            return Err(SimpsetError::Incompatible(format!(
                "induced_map: legs are incompatible at node {node}"
            )));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::super::standard::{std_map_into, subcomplex_inclusion};
    use super::super::{boundary, std_simplex};
    use super::*;

    fn node(s: &str) -> Id {
        Id::new(s)
    }

    #[test]
    fn gluing_two_edges_end_to_end() {
        let edge = std_simplex(1);
        let pt = std_simplex(0);
        let nodes: BTreeMap<Id, SSet> = [
            (node("a"), edge.clone()),
            (node("b"), edge.clone()),
            (node("p"), pt.clone()),
        ]
        .into();
        let edges = vec![
            SsetEdge { src: node("p"), dst: node("a"), map: std_map_into(&[1], &edge).unwrap() },
            SsetEdge { src: node("p"), dst: node("b"), map: std_map_into(&[0], &edge).unwrap() },
        ];
        let colim = colimit(&SsetDiagram::new(nodes, edges).unwrap()).unwrap();
        assert_eq!(colim.object.counts(), vec![3, 2]);
    }

    #[test]
    fn coequalizer_pinches_a_circle() {
        let edge = std_simplex(1);
        let pt = std_simplex(0);
        let nodes: BTreeMap<Id, SSet> =
            [(node("p"), pt.clone()), (node("e"), edge.clone())].into();
        let edges = vec![
            SsetEdge { src: node("p"), dst: node("e"), map: std_map_into(&[0], &edge).unwrap() },
            SsetEdge { src: node("p"), dst: node("e"), map: std_map_into(&[1], &edge).unwrap() },
        ];
        let colim = colimit(&SsetDiagram::new(nodes, edges).unwrap()).unwrap();
        assert_eq!(colim.object.counts(), vec![1, 1]);
        // The edge of the circle has both faces at the unique vertex.
        let e = &colim.object.cells(1)[0];
        assert_eq!(colim.object.face(e, 0), colim.object.face(e, 1));
    }

    #[test]
    fn pushout_of_boundary_spheres() {
        // Δ² ∪_{∂Δ²} Δ²: two triangles glued along their boundary.
        let disk = std_simplex(2);
        let rim = boundary(2);
        let nodes: BTreeMap<Id, SSet> = [
            (node("top"), disk.clone()),
            (node("bot"), disk.clone()),
            (node("rim"), rim.clone()),
        ]
        .into();
        let inc = subcomplex_inclusion(&rim, &disk).unwrap();
        let edges = vec![
            SsetEdge { src: node("rim"), dst: node("top"), map: inc.clone() },
            SsetEdge { src: node("rim"), dst: node("bot"), map: inc },
        ];
        let colim = colimit(&SsetDiagram::new(nodes, edges).unwrap()).unwrap();
        assert_eq!(colim.object.counts(), vec![3, 3, 2]);
    }

    #[test]
    fn induced_map_out_of_a_pushout() {
        // Fold Δ¹ ∪_{Δ⁰} Δ¹ (at matching ends) onto a single Δ¹.
        let edge = std_simplex(1);
        let pt = std_simplex(0);
        let nodes: BTreeMap<Id, SSet> = [
            (node("a"), edge.clone()),
            (node("b"), edge.clone()),
            (node("p"), pt.clone()),
        ]
        .into();
        let edges = vec![
            SsetEdge { src: node("p"), dst: node("a"), map: std_map_into(&[1], &edge).unwrap() },
            SsetEdge { src: node("p"), dst: node("b"), map: std_map_into(&[1], &edge).unwrap() },
        ];
        let colim = colimit(&SsetDiagram::new(nodes, edges).unwrap()).unwrap();
        assert_eq!(colim.object.counts(), vec![3, 2]);
        let legs: BTreeMap<Id, SMap> = [
            (node("a"), SMap::identity(&edge)),
            (node("b"), SMap::identity(&edge)),
            (node("p"), std_map_into(&[1], &edge).unwrap()),
        ]
        .into();
        let fold = induced_map(&colim, &legs).unwrap();
        assert_eq!(fold.target(), &edge);
        // Mismatched legs are rejected.
        let bad: BTreeMap<Id, SMap> = [
            (node("a"), SMap::identity(&edge)),
            (node("b"), SMap::identity(&edge)),
            (node("p"), std_map_into(&[0], &edge).unwrap()),
        ]
        .into();
        assert!(induced_map(&colim, &bad).is_err());
    }
}
