//! Integral homology of the normalized chain complex.

use super::SSet;
use std::collections::BTreeMap;
use std::fmt;

/// A finitely generated abelian group: free rank plus torsion summands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn free(rank: usize) -> AbGroup {
        AbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, with torsion kept sorted.
    pub fn plus(&self, other: &AbGroup) -> AbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().copied());
        torsion.sort();
        AbGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Smith normal form: returns the nonzero diagonal entries (positive,
/// each dividing the next).
fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // Clear row and column t by division with remainder; restart
        // whenever a remainder survives (it is strictly smaller).
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut() {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // Enforce the divisibility chain.
        let d = a[t][t];
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % d != 0);
        if let Some((i, _)) = offender {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(d.abs());
        t += 1;
    }
    out
}

fn boundary_matrix(x: &SSet, k: usize) -> Vec<Vec<i128>> {
    let rows: BTreeMap<_, usize> = x
        .cells(k - 1)
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let cols = x.cells(k);
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for (i, face) in x.faces_of(c).iter().enumerate() {
            if !face.word.is_empty() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[rows[&face.base]][j] += sign;
        }
    }
    m
}

/// Integral homology groups in each degree, with trailing trivial groups
/// trimmed (an empty complex has no homology at all).
pub fn homology(x: &SSet) -> Vec<AbGroup> {
    let Some(top) = x.max_dim() else { return Vec::new() };
    // Rank and divisors of each differential.
    let mut divisors: Vec<Vec<i128>> = vec![Vec::new()]; // ∂_0 = 0
    for k in 1..=top {
        divisors.push(smith_diagonal(boundary_matrix(x, k)));
    }
    divisors.push(Vec::new()); // ∂_{top+1} = 0
    let mut out = Vec::new();
    for k in 0..=top {
        let n_k = x.cells(k).len();
        let rank_k = divisors[k].len();
        let rank_k1 = divisors[k + 1].len();
        let torsion: Vec<u64> = divisors[k + 1]
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        out.push(AbGroup { free_rank: n_k - rank_k - rank_k1, torsion });
    }
    while out.last().is_some_and(|g| g.is_trivial()) {
        out.pop();
    }
    out
}

/// Pretty form `(Z, Z/2)` used in reports.
pub fn homology_signature(groups: &[AbGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::super::{boundary, std_simplex, FormalSimplex, SSet};
    use super::*;
    use crate::id::Id;
    use std::collections::BTreeMap;

    #[test]
    fn contractible_things_have_point_homology() {
        for n in 0..=3 {
            assert_eq!(homology(&std_simplex(n)), vec![AbGroup::free(1)], "Δ{n}");
        }
    }

    #[test]
    fn spheres() {
        assert_eq!(homology(&boundary(2)), vec![AbGroup::free(1), AbGroup::free(1)]);
        assert_eq!(
            homology(&boundary(3)),
            vec![AbGroup::free(1), AbGroup::free(0), AbGroup::free(1)]
        );
    }

    #[test]
    fn two_components() {
        assert_eq!(homology(&boundary(1)), vec![AbGroup::free(2)]);
    }

    #[test]
    fn torsion_surface() {
        // Two triangles U=(a,b,c), L=(b,a,c) on vertices v, w with
        // a, b: v→w and c: v→v. H₁ = Z/2.
        let v = Id::new("v");
        let w = Id::new("w");
        let (a, b, c) = (Id::new("a"), Id::new("b"), Id::new("c"));
        let (u, l) = (Id::new("U"), Id::new("L"));
        let nd = FormalSimplex::nondeg;
        let mut faces = BTreeMap::new();
        faces.insert(a.clone(), vec![nd(w.clone()), nd(v.clone())]);
        faces.insert(b.clone(), vec![nd(w.clone()), nd(v.clone())]);
        faces.insert(c.clone(), vec![nd(v.clone()), nd(v.clone())]);
        faces.insert(u.clone(), vec![nd(a.clone()), nd(b.clone()), nd(c.clone())]);
        faces.insert(l.clone(), vec![nd(b.clone()), nd(a.clone()), nd(c.clone())]);
        let x = SSet::new(
            vec![vec![v, w], vec![a, b, c], vec![u, l]],
            faces,
        )
        .unwrap();
        let h = homology(&x);
        assert_eq!(
            h,
            vec![AbGroup::free(1), AbGroup { free_rank: 0, torsion: vec![2] }]
        );
        assert_eq!(homology_signature(&h), "(Z, Z/2)");
    }

    #[test]
    fn smith_diagonal_known_matrices() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![1, 0], vec![1, 2]]), vec![1, 2]);
        assert_eq!(smith_diagonal(vec![vec![0, 0], vec![0, 0]]), Vec::<i128>::new());
        assert_eq!(smith_diagonal(vec![vec![6]]), vec![6]);
        // Divisibility chain holds.
        let d = smith_diagonal(vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }
}
