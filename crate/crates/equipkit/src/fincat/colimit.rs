//! Colimits in Cat by generators and congruence closure.
//!
//! Objects are glued by a plain union-find. Morphisms are words in the
//! quotient graph of morphism tokens, closed under the relations coming
//! from each node's composition table. Words are enumerated up to a
//! growing length bound; once every class has a short representative
//! (twice the longest canonical representative fits under the bound) the
//! quotient is extracted and then re-validated from scratch: category
//! axioms, functoriality of every leg, and commutation of the cocone.
//! Any failure grows the bound; the word budget is the hard stop.

use super::functor::{CatDiagram, FinFunctor};
use super::{FinCat, FincatError};
use crate::id::Id;
use crate::util::{compound_id, UnionFind};
use std::collections::{BTreeMap, BTreeSet};

pub struct CatColimit {
    pub object: FinCat,
    pub legs: BTreeMap<Id, FinFunctor>,
    /// colimit object → canonical (node, object)
    pub ob_witness: BTreeMap<Id, (Id, Id)>,
    /// colimit morphism → (source object, canonical token path)
    pub mor_witness: BTreeMap<Id, (Id, Vec<(Id, Id)>)>,
}

/// A gluing instruction between two nodes of a [`CatGlueDiagram`].
#[derive(Clone, Debug)]
pub struct CatEdge {
    pub src: Id,
    pub dst: Id,
    pub map: FinFunctor,
}

/// A diagram of categories shaped by a plain graph: no composition law
/// on the index, so parallel and composable edges carry no coherence
/// obligations. Its colimit is the colimit of the corresponding free
/// diagram.
#[derive(Clone, Debug)]
pub struct CatGlueDiagram {
    nodes: BTreeMap<Id, FinCat>,
    edges: Vec<CatEdge>,
}

impl CatGlueDiagram {
    pub fn new(
        nodes: BTreeMap<Id, FinCat>,
        edges: Vec<CatEdge>,
    ) -> Result<CatGlueDiagram, FincatError> {
        for (k, e) in edges.iter().enumerate() {
            let src = nodes
                .get(&e.src)
                .ok_or_else(|| FincatError::UnknownObject(e.src.clone()))?;
            let dst = nodes
                .get(&e.dst)
                .ok_or_else(|| FincatError::UnknownObject(e.dst.clone()))?;
            if e.map.src_cat() != src || e.map.dst_cat() != dst {
                return Err(FincatError::Incompatible(format!(
                    "glue edge {k} has wrong endpoint categories"
                )));
            }
        }
        Ok(CatGlueDiagram { nodes, edges })
    }

    pub fn nodes(&self) -> &BTreeMap<Id, FinCat> {
        &self.nodes
    }

    pub fn edges(&self) -> &[CatEdge] {
        &self.edges
    }
}

struct Presentation {
    /// vertex → id and witness
    vertex_ids: Vec<Id>,
    vertex_witness: Vec<(Id, Id)>,
    /// member (node, object) → vertex
    vertex_of: BTreeMap<(Id, Id), usize>,
    /// edge → (src vertex, dst vertex, id, canonical token)
    edges: Vec<(usize, usize, Id, (Id, Id))>,
    /// token (node, morphism) → Some(edge) or None for unit classes
    edge_of: BTreeMap<(Id, Id), Option<usize>>,
    /// token (node, morphism) → source vertex
    token_src: BTreeMap<(Id, Id), usize>,
    /// relations: (src vertex, lhs, rhs) between parallel edge words
    relations: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

fn presentation(d: &CatGlueDiagram) -> Presentation {
    // Object classes.
    let mut ob_members: Vec<(Id, Id)> = Vec::new();
    for (i, node) in d.nodes() {
        for x in node.objects() {
            ob_members.push((i.clone(), x.clone()));
        }
    }
    let ob_index: BTreeMap<(Id, Id), usize> =
        ob_members.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let mut ob_uf = UnionFind::new(ob_members.len());
    for e in d.edges() {
        for x in d.nodes()[&e.src].objects() {
            let a = ob_index[&(e.src.clone(), x.clone())];
            let b = ob_index[&(e.dst.clone(), e.map.ob(x).clone())];
            ob_uf.union(a, b);
        }
    }
    let mut ob_canon: BTreeMap<usize, (Id, Id)> = BTreeMap::new();
    for (k, m) in ob_members.iter().enumerate() {
        let root = ob_uf.find(k);
        ob_canon
            .entry(root)
            .and_modify(|cur| {
                if *m < *cur {
                    *cur = m.clone();
                }
            })
            .or_insert_with(|| m.clone());
    }
    let roots: Vec<usize> = ob_canon.keys().copied().collect();
    let vertex_of_root: BTreeMap<usize, usize> =
        roots.iter().enumerate().map(|(v, r)| (*r, v)).collect();
    let vertex_ids: Vec<Id> = roots
        .iter()
        .map(|r| {
            let (i, x) = &ob_canon[r];
            compound_id("cob", &[i.to_string(), x.to_string()])
        })
        .collect();
    let vertex_witness: Vec<(Id, Id)> = roots.iter().map(|r| ob_canon[r].clone()).collect();
    let mut vertex_of = BTreeMap::new();
    for (k, m) in ob_members.iter().enumerate() {
        vertex_of.insert(m.clone(), vertex_of_root[&ob_uf.find(k)]);
    }

    // Morphism token classes.
    let mut tok_members: Vec<(Id, Id)> = Vec::new();
    for (i, node) in d.nodes() {
        for f in node.morphisms() {
            tok_members.push((i.clone(), f.clone()));
        }
    }
    let tok_index: BTreeMap<(Id, Id), usize> =
        tok_members.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    let mut tok_uf = UnionFind::new(tok_members.len());
    for e in d.edges() {
        for f in d.nodes()[&e.src].morphisms() {
            let a = tok_index[&(e.src.clone(), f.clone())];
            let b = tok_index[&(e.dst.clone(), e.map.mor(f).clone())];
            tok_uf.union(a, b);
        }
    }
    let mut unit_roots = BTreeSet::new();
    for (k, (i, f)) in tok_members.iter().enumerate() {
        if d.nodes()[i].is_identity(f) {
            unit_roots.insert(tok_uf.find(k));
        }
    }
    let mut tok_canon: BTreeMap<usize, (Id, Id)> = BTreeMap::new();
    for (k, m) in tok_members.iter().enumerate() {
        let root = tok_uf.find(k);
        tok_canon
            .entry(root)
            .and_modify(|cur| {
                if *m < *cur {
                    *cur = m.clone();
                }
            })
            .or_insert_with(|| m.clone());
    }
    let mut edges = Vec::new();
    let mut edge_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for (root, (i, f)) in &tok_canon {
        if unit_roots.contains(root) {
            continue;
        }
        let sv = vertex_of[&(i.clone(), d.nodes()[i].src(f).clone())];
        let dv = vertex_of[&(i.clone(), d.nodes()[i].dst(f).clone())];
        let id = compound_id("cmor", &[i.to_string(), f.to_string()]);
        edge_of_root.insert(*root, edges.len());
        edges.push((sv, dv, id, (i.clone(), f.clone())));
    }
    let mut edge_of = BTreeMap::new();
    let mut token_src = BTreeMap::new();
    for (k, m) in tok_members.iter().enumerate() {
        let root = tok_uf.find(k);
        edge_of.insert(m.clone(), edge_of_root.get(&root).copied());
        let (i, f) = m;
        token_src.insert(m.clone(), vertex_of[&(i.clone(), d.nodes()[i].src(f).clone())]);
    }

    // Relations from every node-level composition.
    let word_of = |m: &(Id, Id)| -> Vec<usize> {
        edge_of[m].map(|e| vec![e]).unwrap_or_default()
    };
    let mut relations = BTreeSet::new();
    for (i, node) in d.nodes() {
        for (g, f) in node.composable_pairs() {
            let gf = node.compose(g, f);
            let mut lhs = word_of(&(i.clone(), f.clone()));
            lhs.extend(word_of(&(i.clone(), g.clone())));
            let rhs = word_of(&(i.clone(), gf.clone()));
            if lhs == rhs {
                continue;
            }
            let sv = token_src[&(i.clone(), f.clone())];
            relations.insert((sv, lhs, rhs));
        }
    }
    Presentation {
        vertex_ids,
        vertex_witness,
        vertex_of,
        edges,
        edge_of,
        token_src,
        relations: relations.into_iter().collect(),
    }
}

type Word = (usize, Vec<usize>);

struct Closure {
    words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    uf: UnionFind,
}

impl Closure {
    fn end(&self, p: &Presentation, w: &Word) -> usize {
        w.1.last().map(|&e| p.edges[e].1).unwrap_or(w.0)
    }

    fn vertex_at(&self, p: &Presentation, w: &Word, pos: usize) -> usize {
        if pos == 0 {
            w.0
        } else {
            p.edges[w.1[pos - 1]].1
        }
    }
}

fn closure_at(
    p: &Presentation,
    bound: usize,
    budget: u64,
    spent: &mut u64,
) -> Result<Option<Closure>, FincatError> {
    let mut c = Closure { words: Vec::new(), index: BTreeMap::new(), uf: UnionFind::new(0) };
    let mut frontier: Vec<usize> = Vec::new();
    for v in 0..p.vertex_ids.len() {
        let w: Word = (v, Vec::new());
        c.index.insert(w.clone(), c.words.len());
        frontier.push(c.words.len());
        c.words.push(w);
        c.uf.push();
        *spent += 1;
    }
    for _ in 1..=bound {
        let mut next = Vec::new();
        for &wi in &frontier {
            let w = c.words[wi].clone();
            let end = c.end(p, &w);
            for (e, (sv, _, _, _)) in p.edges.iter().enumerate() {
                if *sv != end {
                    continue;
                }
                let mut path = w.1.clone();
                path.push(e);
                let nw: Word = (w.0, path);
                *spent += 1;
                if *spent > budget {
                    return Err(FincatError::ClosureBudgetExceeded(budget));
                }
                c.index.insert(nw.clone(), c.words.len());
                next.push(c.words.len());
                c.words.push(nw);
                c.uf.push();
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    // Apply relations to a fixpoint.
    loop {
        let mut changed = false;
        for wi in 0..c.words.len() {
            let w = c.words[wi].clone();
            for (sv, lhs, rhs) in &p.relations {
                if w.1.len() < lhs.len() {
                    continue;
                }
                for pos in 0..=w.1.len() - lhs.len() {
                    if &w.1[pos..pos + lhs.len()] != lhs.as_slice() {
                        continue;
                    }
                    if c.vertex_at(p, &w, pos) != *sv {
                        continue;
                    }
                    let mut path = w.1[..pos].to_vec();
                    path.extend(rhs.iter().copied());
                    path.extend(w.1[pos + lhs.len()..].iter().copied());
                    if path.len() > bound {
                        continue;
                    }
                    let other: Word = (w.0, path);
                    let oi = c.index[&other];
                    changed |= c.uf.union(wi, oi);
                }
            }
        }
        if !changed {
            break;
        }
    }
    // Saturation: twice the longest shortest-representative must fit.
    let mut shortest: BTreeMap<usize, usize> = BTreeMap::new();
    for wi in 0..c.words.len() {
        let root = c.uf.find(wi);
        let len = c.words[wi].1.len();
        shortest
            .entry(root)
            .and_modify(|cur| *cur = (*cur).min(len))
            .or_insert(len);
    }
    let k = shortest.values().copied().max().unwrap_or(0);
    if 2 * k > bound {
        return Ok(None);
    }
    Ok(Some(c))
}

fn extract(
    d: &CatGlueDiagram,
    p: &Presentation,
    c: &mut Closure,
) -> Result<CatColimit, FincatError> {
    // Canonical representative per class: shortest, then lexicographic.
    let mut canon: BTreeMap<usize, Word> = BTreeMap::new();
    for wi in 0..c.words.len() {
        let root = c.uf.find(wi);
        let w = c.words[wi].clone();
        canon
            .entry(root)
            .and_modify(|cur| {
                if (w.1.len(), &w) < (cur.1.len(), &*cur) {
                    *cur = w.clone();
                }
            })
            .or_insert(w);
    }
    let word_id = |w: &Word| -> Id {
        if w.1.is_empty() {
            compound_id("cid", &[p.vertex_ids[w.0].to_string()])
        } else if w.1.len() == 1 {
            p.edges[w.1[0]].2.clone()
        } else {
            let parts: Vec<String> =
                w.1.iter().map(|&e| p.edges[e].2.to_string()).collect();
            compound_id("cw", &parts)
        }
    };
    let class_of = |c: &mut Closure, w: &Word| -> usize { c.uf.find(c.index[w]) };

    let mut morphisms = Vec::new();
    let mut mor_witness = BTreeMap::new();
    let mut id_of_root: BTreeMap<usize, Id> = BTreeMap::new();
    for (root, w) in &canon {
        let id = word_id(w);
        let src = p.vertex_ids[w.0].clone();
        let dst = p.vertex_ids[c.end(p, w)].clone();
        morphisms.push((id.clone(), src.clone(), dst));
        let tokens: Vec<(Id, Id)> = w.1.iter().map(|&e| p.edges[e].3.clone()).collect();
        mor_witness.insert(id.clone(), (src, tokens));
        id_of_root.insert(*root, id);
    }
    let identities: BTreeMap<Id, Id> = (0..p.vertex_ids.len())
        .map(|v| {
            let root = class_of(c, &(v, Vec::new()));
            (p.vertex_ids[v].clone(), id_of_root[&root].clone())
        })
        .collect();
    let mut table = BTreeMap::new();
    let canon_list: Vec<(usize, Word)> =
        canon.iter().map(|(r, w)| (*r, w.clone())).collect();
    for (r2, w2) in &canon_list {
        for (r1, w1) in &canon_list {
            if c.end(p, w1) != w2.0 {
                continue;
            }
            let mut path = w1.1.clone();
            path.extend(w2.1.iter().copied());
            let comp: Word = (w1.0, path);
            let root = class_of(c, &comp);
            table.insert(
                (id_of_root[r2].clone(), id_of_root[r1].clone()),
                id_of_root[&root].clone(),
            );
        }
    }
    let object = FinCat::new(
        p.vertex_ids.clone(),
        morphisms,
        identities,
        table,
    )?;

    let mut legs = BTreeMap::new();
    for (i, node) in d.nodes() {
        let ob = node
            .objects()
            .iter()
            .map(|x| {
                let v = p.vertex_of[&(i.clone(), x.clone())];
                (x.clone(), p.vertex_ids[v].clone())
            })
            .collect();
        let mor = node
            .morphisms()
            .iter()
            .map(|f| {
                let tok = (i.clone(), f.clone());
                let sv = p.token_src[&tok];
                let path = p.edge_of[&tok].map(|e| vec![e]).unwrap_or_default();
                let root = class_of(c, &(sv, path));
                (f.clone(), id_of_root[&root].clone())
            })
            .collect();
        legs.insert(i.clone(), FinFunctor::new(node.clone(), object.clone(), ob, mor)?);
    }
    for (k, e) in d.edges().iter().enumerate() {
        let via = FinFunctor::compose(&legs[&e.dst], &e.map)?;
        if via != legs[&e.src] {
            return Err(FincatError::Incompatible(format!(
                "cocone does not commute at glue edge {k}"
            )));
        }
    }
    let ob_witness = p
        .vertex_ids
        .iter()
        .zip(&p.vertex_witness)
        .map(|(id, w)| (id.clone(), w.clone()))
        .collect();
    Ok(CatColimit { object, legs, ob_witness, mor_witness })
}

/// Colimit of a graph-shaped diagram of categories. The budget caps the
/// total number of words the congruence closure may enumerate; infinite
/// colimits exhaust it honestly.
pub fn cat_colimit_graph(d: &CatGlueDiagram, budget: u64) -> Result<CatColimit, FincatError> {
    let p = presentation(d);
    let mut spent = 0u64;
    let mut bound = 4usize;
    loop {
        match closure_at(&p, bound, budget, &mut spent)? {
            None => {
                bound *= 2;
                continue;
            }
            Some(mut c) => match extract(d, &p, &mut c) {
                Ok(colim) => return Ok(colim),
                Err(FincatError::ClosureBudgetExceeded(b)) => {
                    return Err(FincatError::ClosureBudgetExceeded(b))
                }
                Err(_) => {
                    // Closure was too coarse to validate; look further.
                    bound *= 2;
                    continue;
                }
            },
        }
    }
}

/// Colimit of a finite diagram of categories.
pub fn cat_colimit(d: &CatDiagram, budget: u64) -> Result<CatColimit, FincatError> {
    let edges = d
        .index()
        .morphisms()
        .iter()
        .map(|m| CatEdge {
            src: d.index().src(m).clone(),
            dst: d.index().dst(m).clone(),
            map: d.edge(m).clone(),
        })
        .collect();
    cat_colimit_graph(&CatGlueDiagram::new(d.nodes().clone(), edges)?, budget)
}

/// The functor out of a colimit induced by a commuting family of legs.
pub fn induced_functor(
    colim: &CatColimit,
    legs_to: &BTreeMap<Id, FinFunctor>,
) -> Result<FinFunctor, FincatError> {
    let mut target: Option<&FinCat> = None;
    for leg in legs_to.values() {
        match target {
            None => target = Some(leg.dst_cat()),
            Some(t) if t == leg.dst_cat() => {}
            Some(_) => {
                return Err(FincatError::Incompatible(
                    "induced_functor: legs land in different categories".into(),
                ))
            }
        }
    }
    let z = target
        .ok_or_else(|| FincatError::Incompatible("induced_functor: no legs".into()))?
        .clone();
    let get = |i: &Id| -> Result<&FinFunctor, FincatError> {
        legs_to
            .get(i)
            .ok_or_else(|| FincatError::Incompatible(format!("induced_functor: no leg at {i}")))
    };
    let mut ob = BTreeMap::new();
    for (oid, (i, x)) in &colim.ob_witness {
        ob.insert(oid.clone(), get(i)?.ob(x).clone());
    }
    let mut mor = BTreeMap::new();
    for (mid, (src, tokens)) in &colim.mor_witness {
        let mut acc = z.identity(&ob[src]).clone();
        for (i, f) in tokens {
            acc = z.compose(get(i)?.mor(f), &acc).clone();
        }
        mor.insert(mid.clone(), acc);
    }
    let h = FinFunctor::new(colim.object.clone(), z, ob, mor)?;
    for (i, leg) in &colim.legs {
        if &FinFunctor::compose(&h, leg)? != get(i)? {
            return Err(FincatError::Incompatible(format!(
                "induced_functor: legs are incompatible at {i}"
            )));
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::super::iso::cat_iso;
    use super::super::shapes::{delta_cat, discrete_cat, poset_mor, poset_ob, pushout_cat};
    use super::*;

    fn endpoint_functor(target: &FinCat, o: usize) -> FinFunctor {
        let pt = delta_cat(0);
        let ob = [(poset_ob(0), poset_ob(o))].into();
        let mor = [(poset_mor(0, 0), poset_mor(o, o))].into();
        FinFunctor::new(pt, target.clone(), ob, mor).unwrap()
    }

    #[test]
    fn pushout_of_arrows_end_to_end_is_the_triangle() {
        let j = pushout_cat();
        let arrow = delta_cat(1);
        let pt = delta_cat(0);
        let nodes: std::collections::BTreeMap<Id, FinCat> = [
            (poset_ob(0), pt),
            (poset_ob(1), arrow.clone()),
            (poset_ob(2), arrow.clone()),
        ]
        .into();
        let edges = [
            (poset_mor(0, 1), endpoint_functor(&arrow, 1)),
            (poset_mor(0, 2), endpoint_functor(&arrow, 0)),
        ]
        .into();
        let d = CatDiagram::new(j, nodes, edges).unwrap();
        let colim = cat_colimit(&d, 1_000_000).unwrap();
        assert_eq!(colim.object.objects().len(), 3);
        assert_eq!(colim.object.morphisms().len(), 6);
        assert!(cat_iso(&colim.object, &delta_cat(2), 1_000_000).unwrap().is_some());
    }

    #[test]
    fn coproduct_is_disjoint_union() {
        let j = discrete_cat(2);
        let arrow = delta_cat(1);
        let nodes: std::collections::BTreeMap<Id, FinCat> =
            [(poset_ob(0), arrow.clone()), (poset_ob(1), arrow.clone())].into();
        let d = CatDiagram::new(j, nodes, [].into()).unwrap();
        let colim = cat_colimit(&d, 100_000).unwrap();
        assert_eq!(colim.object.objects().len(), 4);
        assert_eq!(colim.object.morphisms().len(), 6);
    }

    #[test]
    fn free_loop_exhausts_the_budget() {
        // Coequalizing the two endpoints of the arrow makes a free
        // monoid on one generator: infinite, so the budget must trip.
        // Index: two objects with parallel arrows a, b : 0 ⇉ 1.
        let arrow = delta_cat(1);
        let pt = delta_cat(0);
        let (o0, o1) = (poset_ob(0), poset_ob(1));
        let (u0, u1) = (poset_mor(0, 0), poset_mor(1, 1));
        let (a, b) = (Id::new("a"), Id::new("b"));
        let idx = FinCat::new(
            vec![o0.clone(), o1.clone()],
            vec![
                (u0.clone(), o0.clone(), o0.clone()),
                (u1.clone(), o1.clone(), o1.clone()),
                (a.clone(), o0.clone(), o1.clone()),
                (b.clone(), o0.clone(), o1.clone()),
            ],
            [(o0.clone(), u0.clone()), (o1.clone(), u1.clone())].into(),
            [
                ((u0.clone(), u0.clone()), u0.clone()),
                ((u1.clone(), u1.clone()), u1.clone()),
                ((a.clone(), u0.clone()), a.clone()),
                ((u1.clone(), a.clone()), a.clone()),
                ((b.clone(), u0.clone()), b.clone()),
                ((u1.clone(), b.clone()), b.clone()),
            ]
            .into(),
        )
        .unwrap();
        let nodes: std::collections::BTreeMap<Id, FinCat> =
            [(o0.clone(), pt), (o1.clone(), arrow.clone())].into();
        let edges = [
            (a, endpoint_functor(&arrow, 0)),
            (b, endpoint_functor(&arrow, 1)),
        ]
        .into();
        let d = CatDiagram::new(idx, nodes, edges).unwrap();
        let res = cat_colimit(&d, 3_000);
        assert!(matches!(res, Err(FincatError::ClosureBudgetExceeded(3_000))));
    }

    #[test]
    fn quotient_collapsing_an_arrow_to_an_identity() {
        // Coequalize the endpoints inside one node category by mapping
        // the arrow onto an identity: node functor [1] → [0].
        let (o0, o1) = (poset_ob(0), poset_ob(1));
        let (u0, u1) = (poset_mor(0, 0), poset_mor(1, 1));
        let a = Id::new("a");
        let idx = FinCat::new(
            vec![o0.clone(), o1.clone()],
            vec![
                (u0.clone(), o0.clone(), o0.clone()),
                (u1.clone(), o1.clone(), o1.clone()),
                (a.clone(), o0.clone(), o1.clone()),
            ],
            [(o0.clone(), u0.clone()), (o1.clone(), u1.clone())].into(),
            [
                ((u0.clone(), u0.clone()), u0.clone()),
                ((u1.clone(), u1.clone()), u1.clone()),
                ((a.clone(), u0.clone()), a.clone()),
                ((u1.clone(), a.clone()), a.clone()),
            ]
            .into(),
        )
        .unwrap();
        let arrow = delta_cat(1);
        let pt = delta_cat(0);
        let collapse = FinFunctor::new(
            arrow.clone(),
            pt.clone(),
            [(poset_ob(0), poset_ob(0)), (poset_ob(1), poset_ob(0))].into(),
            [
                (poset_mor(0, 0), poset_mor(0, 0)),
                (poset_mor(1, 1), poset_mor(0, 0)),
                (poset_mor(0, 1), poset_mor(0, 0)),
            ]
            .into(),
        )
        .unwrap();
        let nodes: std::collections::BTreeMap<Id, FinCat> =
            [(o0.clone(), arrow), (o1.clone(), pt)].into();
        let d = CatDiagram::new(idx, nodes, [(a, collapse)].into()).unwrap();
        let colim = cat_colimit(&d, 100_000).unwrap();
        assert_eq!(colim.object.objects().len(), 1);
        assert_eq!(colim.object.morphisms().len(), 1);
    }

    #[test]
    fn induced_functor_out_of_a_pushout() {
        let j = pushout_cat();
        let arrow = delta_cat(1);
        let pt = delta_cat(0);
        let nodes: std::collections::BTreeMap<Id, FinCat> = [
            (poset_ob(0), pt.clone()),
            (poset_ob(1), arrow.clone()),
            (poset_ob(2), arrow.clone()),
        ]
        .into();
        let edges = [
            (poset_mor(0, 1), endpoint_functor(&arrow, 1)),
            (poset_mor(0, 2), endpoint_functor(&arrow, 0)),
        ]
        .into();
        let d = CatDiagram::new(j, nodes, edges).unwrap();
        let colim = cat_colimit(&d, 1_000_000).unwrap();
        // Fold both arrows onto [1]: leg1 = id-ish onto 0→1... target Δ¹:
        // node 1 ↦ identity, node 2 ↦ identity, foot ↦ endpoint.
        let to_arrow_id = FinFunctor::identity(&arrow);
        let legs: std::collections::BTreeMap<Id, FinFunctor> = [
            (poset_ob(0), endpoint_functor(&arrow, 1)),
            (poset_ob(1), to_arrow_id.clone()),
            (
                poset_ob(2),
                FinFunctor::new(
                    arrow.clone(),
                    arrow.clone(),
                    [(poset_ob(0), poset_ob(1)), (poset_ob(1), poset_ob(1))].into(),
                    [
                        (poset_mor(0, 0), poset_mor(1, 1)),
                        (poset_mor(1, 1), poset_mor(1, 1)),
                        (poset_mor(0, 1), poset_mor(1, 1)),
                    ]
                    .into(),
                )
                .unwrap(),
            ),
        ]
        .into();
        let h = induced_functor(&colim, &legs).unwrap();
        assert_eq!(h.dst_cat(), &arrow);
    }
}
