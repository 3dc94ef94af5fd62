//! Degeneracy-word arithmetic.
//!
//! Every simplex of a finite simplicial set is written in Eilenberg–Zilber
//! normal form: a nondegenerate base together with a strictly decreasing
//! word `[w1 > w2 > … > wk]` standing for `s_{w1} s_{w2} … s_{wk}(base)`.
//! The five simplicial identities are folded into two rewriting routines —
//! pushing one degeneracy or one face into a normal word — and everything
//! else in the crate routes its operator algebra through these.

use crate::id::Id;

/// A simplex in normal form: `s_{word}(base)` with `word` strictly
/// decreasing. `word.is_empty()` means the simplex is nondegenerate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormalSimplex {
    pub base: Id,
    pub word: Vec<usize>,
}

impl FormalSimplex {
    pub fn nondeg(base: Id) -> Self {
        FormalSimplex { base, word: Vec::new() }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }

    /// Dimension, given the dimension of the base.
    pub fn dim(&self, base_dim: usize) -> usize {
        base_dim + self.word.len()
    }

    /// `s_{outer}(self)` for an arbitrary (not necessarily normal) outer
    /// word, applied innermost entry first; the result is normal.
    pub fn with_degeneracies(&self, outer: &[usize]) -> FormalSimplex {
        let mut word = self.word.clone();
        for &i in outer.iter().rev() {
            word = push_degeneracy(&word, i);
        }
        FormalSimplex { base: self.base.clone(), word }
    }

    /// `s_i(self)`.
    pub fn degenerate(&self, i: usize) -> FormalSimplex {
        FormalSimplex {
            base: self.base.clone(),
            word: push_degeneracy(&self.word, i),
        }
    }
}

/// Is `word` a valid normal word over a base of dimension `base_dim`?
/// Normal means strictly decreasing; valid means every intermediate
/// application `s_{w_j}` is in range.
pub fn word_valid(word: &[usize], base_dim: usize) -> bool {
    if !word.windows(2).all(|w| w[0] > w[1]) {
        return false;
    }
    // Applying right to left: the j-th entry from the end acts on a
    // simplex of dimension base_dim + j.
    word.iter()
        .rev()
        .enumerate()
        .all(|(j, &w)| w <= base_dim + j)
}

/// Prepend `s_i` to a normal word, renormalizing with
/// `s_i s_j = s_{j+1} s_i` (i ≤ j).
pub fn push_degeneracy(word: &[usize], i: usize) -> Vec<usize> {
    debug_assert!(word.windows(2).all(|w| w[0] > w[1]));
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut rest = word.iter().copied().peekable();
    while let Some(&w) = rest.peek() {
        if i <= w {
            out.push(w + 1);
            rest.next();
        } else {
            break;
        }
    }
    out.push(i);
    out.extend(rest);
    debug_assert!(out.windows(2).all(|w| w[0] > w[1]));
    out
}

/// Outcome of pushing a face operator into a degeneracy word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FaceStep {
    /// The face cancelled a degeneracy (`d_j s_j = 1 = d_{j+1} s_j`); the
    /// result is the remaining normal word over the same base.
    Cancelled(Vec<usize>),
    /// The face survived to the base: the result is `s_{emitted}` applied
    /// to face `index` of the base, where `emitted` is normal but the face
    /// of the base must still be looked up and merged by the caller.
    Base { emitted: Vec<usize>, index: usize },
}

/// Push `d_i` into a normal word, using `d_i s_j = s_{j-1} d_i` (i < j),
/// `d_j s_j = 1 = d_{j+1} s_j`, and `d_i s_j = s_j d_{i-1}` (i > j + 1).
pub fn push_face(word: &[usize], i: usize) -> FaceStep {
    debug_assert!(word.windows(2).all(|w| w[0] > w[1]));
    let mut emitted: Vec<usize> = Vec::with_capacity(word.len());
    let mut i = i;
    for (t, &w) in word.iter().enumerate() {
        if i < w {
            emitted.push(w - 1);
        } else if i == w || i == w + 1 {
            emitted.extend_from_slice(&word[t + 1..]);
            debug_assert!(emitted.windows(2).all(|w| w[0] > w[1]));
            return FaceStep::Cancelled(emitted);
        } else {
            emitted.push(w);
            i -= 1;
        }
    }
    debug_assert!(emitted.windows(2).all(|w| w[0] > w[1]));
    FaceStep::Base { emitted, index: i }
}
