//! Collapse a levelwise presentation (all simplices listed per level, with
//! explicit face and degeneracy tables) into a simplicial set in normal
//! form. Colimits and tabulators both funnel through this.

use super::{FormalSimplex, SSet, SimpsetError};
use crate::id::Id;
use std::collections::{BTreeMap, BTreeSet};

/// A (possibly truncated) simplicial set with every simplex listed.
/// `face` must be total on levels ≥ 1; `degen` must be total on all
/// levels below the top one.
#[derive(Clone, Debug, Default)]
pub struct LevelwiseSSet {
    pub levels: Vec<Vec<Id>>,
    pub face: BTreeMap<(Id, usize), Id>,
    pub degen: BTreeMap<(Id, usize), Id>,
}

impl LevelwiseSSet {
    fn face_of(&self, cell: &Id, i: usize) -> Result<&Id, SimpsetError> {
        self.face.get(&(cell.clone(), i)).ok_or_else(|| {
            SimpsetError::Incompatible(format!("levelwise: missing face d_{i} of {cell}"))
        })
    }

    fn degen_of(&self, cell: &Id, i: usize) -> Result<&Id, SimpsetError> {
        self.degen.get(&(cell.clone(), i)).ok_or_else(|| {
            SimpsetError::Incompatible(format!(
                "levelwise: missing degeneracy s_{i} of {cell}"
            ))
        })
    }

    /// Check the simplicial identities wherever all participants are
    /// inside the truncation.
    pub fn check_identities(&self) -> Result<(), SimpsetError> {
        let top = self.levels.len().saturating_sub(1);
        let fail = |what: String| Err(SimpsetError::Incompatible(format!("levelwise: {what}")));
        for (n, level) in self.levels.iter().enumerate() {
            for c in level {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let lhs = self.face_of(self.face_of(c, j)?, i)?;
                            let rhs = self.face_of(self.face_of(c, i)?, j - 1)?;
                            if lhs != rhs {
                                return fail(format!("d_{i} d_{j} ≠ d_{} d_{i} at {c}", j - 1));
                            }
                        }
                    }
                }
                if n + 1 <= top {
                    for j in 0..=n {
                        let sj = self.degen_of(c, j)?.clone();
                        for i in 0..=n + 1 {
                            let got = self.face_of(&sj, i)?;
                            if i == j || i == j + 1 {
                                if got != c {
                                    return fail(format!("d_{i} s_{j} ≠ id at {c}"));
                                }
                            } else if i < j {
                                let want = self.degen_of(self.face_of(c, i)?, j - 1)?;
                                if got != want {
                                    return fail(format!("d_{i} s_{j} mismatch at {c}"));
                                }
                            } else {
                                let want = self.degen_of(self.face_of(c, i - 1)?, j)?;
                                if got != want {
                                    return fail(format!("d_{i} s_{j} mismatch at {c}"));
                                }
                            }
                        }
                    }
                }
                if n + 2 <= top {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = self.degen_of(self.degen_of(c, j)?, i)?;
                            let rhs = self.degen_of(self.degen_of(c, i)?, j + 1)?;
                            if lhs != rhs {
                                return fail(format!("s_{i} s_{j} ≠ s_{} s_{i} at {c}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Produce the simplicial set this presents, together with the normal
    /// form of every listed simplex. Nondegenerate cells keep their ids.
    pub fn normalize(&self) -> Result<(SSet, BTreeMap<Id, FormalSimplex>), SimpsetError> {
        self.check_identities()?;
        let mut degenerate: BTreeSet<Id> = BTreeSet::new();
        for (n, level) in self.levels.iter().enumerate() {
            if n + 1 >= self.levels.len() {
                break;
            }
            for c in level {
                for i in 0..=n {
                    degenerate.insert(self.degen_of(c, i)?.clone());
                }
            }
        }
        // Normal form, from the bottom level up.
        let mut forms: BTreeMap<Id, FormalSimplex> = BTreeMap::new();
        for (n, level) in self.levels.iter().enumerate() {
            for c in level {
                let form = if !degenerate.contains(c) {
                    FormalSimplex::nondeg(c.clone())
                } else {
                    // c = s_j d_j c for j = max of its degeneracy set.
                    let mut found = None;
                    for j in (0..n).rev() {
                        let dj = self.face_of(c, j)?;
                        if self.degen_of(dj, j)? == c {
                            found = Some((j, dj.clone()));
                            break;
                        }
                    }
                    let (j, dj) = found.ok_or_else(|| {
                        SimpsetError::Incompatible(format!(
                            "levelwise: {c} marked degenerate but fixed by no s_j d_j"
                        ))
                    })?;
                    forms[&dj].degenerate(j)
                };
                forms.insert(c.clone(), form);
            }
        }
        let cells: Vec<Vec<Id>> = self
            .levels
            .iter()
            .map(|level| level.iter().filter(|c| !degenerate.contains(c)).cloned().collect())
            .collect();
        let mut faces = BTreeMap::new();
        for (n, level) in self.levels.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for c in level {
                if degenerate.contains(c) {
                    continue;
                }
                let fs: Result<Vec<FormalSimplex>, SimpsetError> =
                    (0..=n).map(|i| Ok(forms[self.face_of(c, i)?].clone())).collect();
                faces.insert(c.clone(), fs?);
            }
        }
        let sset = SSet::new(cells, faces)?;
        Ok((sset, forms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Present Δ¹ levelwise up to level 2 and recover it.
    #[test]
    fn normalize_recovers_delta_one() {
        // Simplices of Δ¹ at level k = monotone chains in {0,1}.
        let chain_id = |chain: &[usize]| {
            let parts: Vec<String> = chain.iter().map(|v| v.to_string()).collect();
            Id::new(format!("c{}", parts.join(".")))
        };
        let mut levels: Vec<Vec<Id>> = Vec::new();
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 0..=2usize {
            let mut level_chains = Vec::new();
            // All weakly increasing (k+1)-chains over {0,1}.
            for code in 0..(1usize << (k + 1)) {
                let chain: Vec<usize> = (0..=k).map(|b| (code >> b) & 1).collect();
                if chain.windows(2).all(|w| w[0] <= w[1]) {
                    level_chains.push(chain);
                }
            }
            level_chains.sort();
            levels.push(level_chains.iter().map(|c| chain_id(c)).collect());
            chains.push(level_chains);
        }
        let mut face = BTreeMap::new();
        let mut degen = BTreeMap::new();
        for (k, level_chains) in chains.iter().enumerate() {
            for chain in level_chains {
                for i in 0..=k {
                    if k >= 1 {
                        let mut sub = chain.clone();
                        sub.remove(i);
                        face.insert((chain_id(chain), i), chain_id(&sub));
                    }
                    if k + 1 < levels.len() {
                        let mut sup = chain.clone();
                        sup.insert(i, chain[i]);
                        degen.insert((chain_id(chain), i), chain_id(&sup));
                    }
                }
            }
        }
        let lw = LevelwiseSSet { levels, face, degen };
        let (sset, forms) = lw.normalize().unwrap();
        assert_eq!(sset.counts(), vec![2, 1]);
        // The degenerate chain 0,0 normalizes to s_0 of the vertex 0.
        let f = &forms[&chain_id(&[0, 0])];
        assert_eq!(f.word, vec![0]);
        assert_eq!(f.base, chain_id(&[0]));
        // And 0,0,1 to s_0 of the edge.
        let f = &forms[&chain_id(&[0, 0, 1])];
        assert_eq!(f.word, vec![0]);
        assert_eq!(f.base, chain_id(&[0, 1]));
    }
}
