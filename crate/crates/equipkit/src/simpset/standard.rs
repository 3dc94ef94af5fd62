//! Standard simplices, boundaries, horns, and the maps between them.

use super::{FormalSimplex, SMap, SSet, SimpsetError};
use crate::id::Id;
use std::collections::BTreeMap;

/// Id of the cell of Δⁿ spanned by the given strictly increasing vertices.
pub fn simplex_cell_id(verts: &[usize]) -> Id {
    let parts: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
    Id::new(format!("x{}", parts.join(".")))
}

/// Parse a standard-simplex cell id back into its vertex chain.
pub fn simplex_cell_vertices(id: &Id) -> Option<Vec<usize>> {
    let s = id.as_str().strip_prefix('x')?;
    s.split('.').map(|p| p.parse().ok()).collect()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for v in start..=n {
            acc.push(v);
            go(v + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn complex_on_subsets(n: usize, keep: impl Fn(&[usize]) -> bool) -> SSet {
    let mut cells: Vec<Vec<Id>> = Vec::new();
    let mut faces = BTreeMap::new();
    for k in 0..=n {
        let mut level = Vec::new();
        for verts in subsets_of_size(n, k + 1) {
            if !keep(&verts) {
                continue;
            }
            let id = simplex_cell_id(&verts);
            if k > 0 {
                let fs: Vec<FormalSimplex> = (0..=k)
                    .map(|i| {
                        let mut sub = verts.clone();
                        sub.remove(i);
                        FormalSimplex::nondeg(simplex_cell_id(&sub))
                    })
                    .collect();
                faces.insert(id.clone(), fs);
            }
            level.push(id);
        }
        cells.push(level);
    }
    SSet::new(cells, faces).expect("standard complex is valid")
}

/// The standard n-simplex Δⁿ.
pub fn std_simplex(n: usize) -> SSet {
    complex_on_subsets(n, |_| true)
}

/// The boundary ∂Δⁿ.
pub fn boundary(n: usize) -> SSet {
    complex_on_subsets(n, |verts| verts.len() <= n)
}

/// The horn Λⁿᵢ: all faces of Δⁿ except the i-th, and their faces.
pub fn horn(n: usize, i: usize) -> SSet {
    assert!(i <= n, "horn index out of range");
    complex_on_subsets(n, |verts| {
        let missing: Vec<usize> = (0..=n).filter(|v| !verts.contains(v)).collect();
        missing.iter().any(|&v| v != i)
    })
}

/// Normal form of a weakly increasing vertex chain in Δⁿ: base is the
/// support, degeneracy word marks the repeats.
pub fn vertex_list_to_formal(list: &[usize]) -> FormalSimplex {
    assert!(!list.is_empty());
    let mut support = Vec::new();
    let mut word = Vec::new();
    for (j, &v) in list.iter().enumerate() {
        if j + 1 < list.len() {
            assert!(list[j] <= list[j + 1], "vertex chain not monotone");
        }
        if support.last() == Some(&v) {
            word.push(j - 1);
        } else {
            support.push(v);
        }
    }
    word.reverse();
    FormalSimplex { base: simplex_cell_id(&support), word }
}

/// Inverse of [`vertex_list_to_formal`] for formals over a standard
/// simplex (or any complex whose cell ids encode vertex chains).
pub fn formal_to_vertex_list(fs: &FormalSimplex) -> Vec<usize> {
    let mut list = simplex_cell_vertices(&fs.base).expect("standard-simplex cell id");
    for &w in fs.word.iter().rev() {
        let v = list[w];
        list.insert(w + 1, v);
    }
    list
}

/// The simplicial map Δᵐ → `target` ⊆ Δⁿ induced by a monotone vertex
/// assignment `theta` of length m+1. `target` must contain the image.
pub fn std_map_into(theta: &[usize], target: &SSet) -> Result<SMap, SimpsetError> {
    assert!(!theta.is_empty());
    let m = theta.len() - 1;
    let source = std_simplex(m);
    let mut assign = BTreeMap::new();
    for id in source.all_cells() {
        let verts = simplex_cell_vertices(id).expect("standard cell");
        let image: Vec<usize> = verts.iter().map(|&v| theta[v]).collect();
        assign.insert(id.clone(), vertex_list_to_formal(&image));
    }
    SMap::new(source, target.clone(), assign)
}

/// The simplicial map Δᵐ → Δⁿ induced by a monotone vertex assignment.
pub fn std_map(theta: &[usize], n: usize) -> SMap {
    std_map_into(theta, &std_simplex(n)).expect("monotone map into standard simplex")
}

/// Vertex images of the coface δⁱ: [n-1] → [n].
pub fn coface_vertices(i: usize, n: usize) -> Vec<usize> {
    (0..n).map(|v| if v < i { v } else { v + 1 }).collect()
}

/// Vertex images of the codegeneracy σⁱ: [n+1] → [n].
pub fn codegeneracy_vertices(i: usize, n: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect()
}

/// The constant map X → Δⁿ at vertex `v`.
pub fn const_vertex_map(x: &SSet, v: usize, n: usize) -> SMap {
    let target = std_simplex(n);
    let base = simplex_cell_id(&[v]);
    let assign = x
        .all_cells()
        .map(|c| {
            let word: Vec<usize> = (0..x.dim_of(c)).rev().collect();
            (c.clone(), FormalSimplex { base: base.clone(), word })
        })
        .collect();
    SMap::new(x.clone(), target, assign).expect("constant map")
}

/// The inclusion ∂Δⁿ ↪ Δⁿ (or any subset-complex inclusion with shared ids).
pub fn subcomplex_inclusion(sub: &SSet, ambient: &SSet) -> Result<SMap, SimpsetError> {
    let assign = sub
        .all_cells()
        .map(|c| (c.clone(), FormalSimplex::nondeg(c.clone())))
        .collect();
    SMap::new(sub.clone(), ambient.clone(), assign)
}
