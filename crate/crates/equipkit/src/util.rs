//! Small shared utilities.

use crate::id::Id;

/// A deterministic id for a tuple of parts: readable when short, hashed
/// otherwise. Readable ids are parenthesised tuples, hashed ones carry
/// the tag prefix, so the two forms never collide.
pub fn compound_id(tag: &str, parts: &[String]) -> Id {
    let readable = format!("({})", parts.join(","));
    if readable.len() <= 60 && parts.iter().all(|p| clean_part(p)) {
        Id::new(readable)
    } else {
        Id::derive(tag, parts)
    }
}

/// A part is safe to join readably if its parens are balanced and it has
/// no top-level comma; then the tuple rendering is injective.
fn clean_part(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            ',' if depth == 0 => return false,
            _ => {}
        }
    }
    depth == 0
}

/// Union-find over indices, with path compression.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        let i = self.parent.len();
        self.parent.push(i);
        i
    }

    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
