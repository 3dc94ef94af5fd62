//! Double colimits of profunctor diagrams: validated lax diagrams over a
//! direct index, the colimit category with its injections and cells,
//! cocones, and a finite certificate of the universal property.
//! Companion diagrams of category-valued diagrams are built here too,
//! which is where the colimit meets the Grothendieck construction.

use super::cells::{hom_element_morphism, left_unitor, right_unitor, ProfCell};
use super::companion::{companion, companion_element};
use super::enumerate_cells;
use super::tensor::tensor_with_witness;
use super::{hom_profunctor, ProfError, Profunctor};
use crate::fincat::{enumerate_functors, CatDiagram, FinCat, FinFunctor};
use crate::id::Id;
use crate::util::compound_id;
use std::collections::{BTreeMap, BTreeSet};

/// A diagram of profunctors over a finite direct index: node categories
/// on objects, profunctor edges on morphisms (hom profunctors on
/// identities), and an invertible comparator u_β ⊗ u_α ⇒ u_{βα} for
/// every composable pair, subject to the unit and coherence laws.
#[derive(Clone, Debug)]
pub struct ProfDiagram {
    index: FinCat,
    nodes: BTreeMap<Id, FinCat>,
    edges: BTreeMap<Id, Profunctor>,
    comparators: BTreeMap<(Id, Id), ProfCell>,
}

impl ProfDiagram {
    /// Identity edges and unit comparators may be omitted; they are
    /// filled in with hom profunctors and unitors. Everything supplied
    /// explicitly is validated against those same laws.
    pub fn new(
        index: FinCat,
        nodes: BTreeMap<Id, FinCat>,
        mut edges: BTreeMap<Id, Profunctor>,
        mut comparators: BTreeMap<(Id, Id), ProfCell>,
    ) -> Result<ProfDiagram, ProfError> {
        check_direct(&index)?;
        for i in index.objects() {
            if !nodes.contains_key(i) {
                return Err(ProfError::Incompatible(format!("no node category at {i}")));
            }
        }
        for i in nodes.keys() {
            if !index.has_object(i) {
                return Err(ProfError::Incompatible(format!("node at non-object {i}")));
            }
        }
        for i in index.objects() {
            let unit = index.identity(i).clone();
            edges.entry(unit).or_insert_with(|| hom_profunctor(&nodes[i]));
        }
        for a in index.morphisms() {
            let u = edges
                .get(a)
                .ok_or_else(|| ProfError::Incompatible(format!("no edge profunctor at {a}")))?;
            if u.src_cat() != &nodes[index.src(a)] || u.dst_cat() != &nodes[index.dst(a)] {
                return Err(ProfError::Incompatible(format!(
                    "edge at {a} has wrong endpoint categories"
                )));
            }
        }
        for a in edges.keys() {
            if !index.has_morphism(a) {
                return Err(ProfError::Incompatible(format!("edge at non-morphism {a}")));
            }
        }
        for i in index.objects() {
            let unit = index.identity(i);
            if edges[unit] != hom_profunctor(&nodes[i]) {
                return Err(ProfError::Incompatible(format!(
                    "edge at the identity of {i} is not the hom profunctor"
                )));
            }
        }
        for a in index.morphisms().to_vec() {
            let lkey = (index.identity(index.dst(&a)).clone(), a.clone());
            if !comparators.contains_key(&lkey) {
                comparators.insert(lkey, left_unitor(&edges[&a])?);
            }
            let rkey = (a.clone(), index.identity(index.src(&a)).clone());
            if !comparators.contains_key(&rkey) {
                comparators.insert(rkey, right_unitor(&edges[&a])?);
            }
        }
        let d = ProfDiagram { index, nodes, edges, comparators };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), ProfError> {
        let expected: BTreeSet<(Id, Id)> = self
            .index
            .composable_pairs()
            .map(|(g, f)| (g.clone(), f.clone()))
            .collect();
        let got: BTreeSet<(Id, Id)> = self.comparators.keys().cloned().collect();
        if expected != got {
            return Err(ProfError::Incompatible(
                "comparators must be indexed by exactly the composable pairs".into(),
            ));
        }
        for (b, a) in &expected {
            let cell = &self.comparators[&(b.clone(), a.clone())];
            let (top, _) = tensor_with_witness(&self.edges[a], &self.edges[b])?;
            if cell.top() != &top {
                return Err(ProfError::Incompatible(format!(
                    "comparator at ({b}, {a}) is not a cell out of the tensor"
                )));
            }
            let ba = self.index.compose(b, a);
            if cell.bottom() != &self.edges[ba] {
                return Err(ProfError::Incompatible(format!(
                    "comparator at ({b}, {a}) does not land in the composite edge"
                )));
            }
            if cell.left() != &FinFunctor::identity(&self.nodes[self.index.src(a)])
                || cell.right() != &FinFunctor::identity(&self.nodes[self.index.dst(b)])
            {
                return Err(ProfError::Incompatible(format!(
                    "comparator at ({b}, {a}) has non-identity verticals"
                )));
            }
            if !cell.is_invertible() {
                return Err(ProfError::Incompatible(format!(
                    "comparator at ({b}, {a}) is not invertible"
                )));
            }
        }
        for a in self.index.morphisms() {
            let lkey = (self.index.identity(self.index.dst(a)).clone(), a.clone());
            if self.comparators[&lkey] != left_unitor(&self.edges[a])? {
                return Err(ProfError::Incompatible(format!(
                    "unit comparator at ({}, {a}) differs from the left unitor",
                    lkey.0
                )));
            }
            let rkey = (a.clone(), self.index.identity(self.index.src(a)).clone());
            if self.comparators[&rkey] != right_unitor(&self.edges[a])? {
                return Err(ProfError::Incompatible(format!(
                    "unit comparator at ({a}, {}) differs from the right unitor",
                    rkey.1
                )));
            }
        }
        for (b, a) in self.index.composable_pairs() {
            for g in self.index.morphisms() {
                if self.index.src(g) == self.index.dst(b) {
                    self.check_triple(g, b, a)?;
                }
            }
        }
        Ok(())
    }

    /// Coherence on a composable triple, checked pointwise on
    /// representatives so no associator is needed.
    fn check_triple(&self, g: &Id, b: &Id, a: &Id) -> Result<(), ProfError> {
        let (ua, ub, ug) = (&self.edges[a], &self.edges[b], &self.edges[g]);
        let ba = self.index.compose(b, a).clone();
        let gb = self.index.compose(g, b).clone();
        let (_, w_ba) = tensor_with_witness(ua, ub)?;
        let (_, w_g_ba) = tensor_with_witness(&self.edges[&ba], ug)?;
        let (_, w_gb) = tensor_with_witness(ub, ug)?;
        let (_, w_gb_a) = tensor_with_witness(ua, &self.edges[&gb])?;
        let m_ba = &self.comparators[&(b.clone(), a.clone())];
        let m_g_ba = &self.comparators[&(g.clone(), ba.clone())];
        let m_gb = &self.comparators[&(g.clone(), b.clone())];
        let m_gb_a = &self.comparators[&(gb.clone(), a.clone())];
        for ea in ua.all_elements() {
            let (_, ya) = ua.element_home(ea);
            for eb in ub.all_elements() {
                let (xb, yb) = ub.element_home(eb);
                if xb != ya {
                    continue;
                }
                for eg in ug.all_elements() {
                    let (xg, _) = ug.element_home(eg);
                    if xg != yb {
                        continue;
                    }
                    let lhs = m_g_ba.component(
                        w_g_ba.class_of(eg, m_ba.component(w_ba.class_of(eb, ea))),
                    );
                    let rhs = m_gb_a.component(
                        w_gb_a.class_of(m_gb.component(w_gb.class_of(eg, eb)), ea),
                    );
                    if lhs != rhs {
                        return Err(ProfError::Incompatible(format!(
                            "comparators are incoherent on the triple ({g}, {b}, {a})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn index(&self) -> &FinCat {
        &self.index
    }

    pub fn node(&self, i: &Id) -> &FinCat {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &BTreeMap<Id, FinCat> {
        &self.nodes
    }

    pub fn edge(&self, a: &Id) -> &Profunctor {
        &self.edges[a]
    }

    pub fn comparator(&self, b: &Id, a: &Id) -> &ProfCell {
        &self.comparators[&(b.clone(), a.clone())]
    }
}

fn check_direct(index: &FinCat) -> Result<(), ProfError> {
    for m in index.morphisms() {
        if index.src(m) == index.dst(m) && !index.is_identity(m) {
            return Err(ProfError::Incompatible(format!(
                "index is not direct: non-identity endomorphism {m}"
            )));
        }
    }
    for x in index.objects() {
        for y in index.objects() {
            if x < y && !index.hom(x, y).is_empty() && !index.hom(y, x).is_empty() {
                return Err(ProfError::Incompatible(format!(
                    "index is not direct: cycle through {x} and {y}"
                )));
            }
        }
    }
    Ok(())
}

/// The double colimit of a profunctor diagram: objects ⨿_i ob(C_i),
/// morphisms ⨿_α elements of u_α, composition through the comparators.
#[derive(Clone, Debug)]
pub struct ProfDcolim {
    object: FinCat,
    injections: BTreeMap<Id, FinFunctor>,
    cells: BTreeMap<Id, ProfCell>,
}

impl ProfDcolim {
    pub fn object(&self) -> &FinCat {
        &self.object
    }

    pub fn injection(&self, i: &Id) -> &FinFunctor {
        &self.injections[i]
    }

    pub fn injections(&self) -> &BTreeMap<Id, FinFunctor> {
        &self.injections
    }

    pub fn cell(&self, a: &Id) -> &ProfCell {
        &self.cells[a]
    }

    pub fn cells(&self) -> &BTreeMap<Id, ProfCell> {
        &self.cells
    }
}

fn dob(i: &Id, x: &Id) -> Id {
    compound_id("dob", &[i.to_string(), x.to_string()])
}

fn dmor(a: &Id, e: &Id) -> Id {
    compound_id("dmor", &[a.to_string(), e.to_string()])
}

pub fn dcolim_prof(d: &ProfDiagram) -> Result<ProfDcolim, ProfError> {
    let index = d.index();
    let mut objects = Vec::new();
    for i in index.objects() {
        for x in d.node(i).objects() {
            objects.push(dob(i, x));
        }
    }
    let mut morphisms = Vec::new();
    for a in index.morphisms() {
        let (i, j) = (index.src(a), index.dst(a));
        let u = d.edge(a);
        for e in u.all_elements() {
            let (x, y) = u.element_home(e);
            morphisms.push((dmor(a, e), dob(i, x), dob(j, y)));
        }
    }
    let mut identities = BTreeMap::new();
    for i in index.objects() {
        let node = d.node(i);
        let unit = index.identity(i);
        for x in node.objects() {
            identities.insert(dob(i, x), dmor(unit, &companion_element(x, node.identity(x))));
        }
    }
    let mut table = BTreeMap::new();
    for (b, a) in index.composable_pairs() {
        let (ua, ub) = (d.edge(a), d.edge(b));
        let (_, w) = tensor_with_witness(ua, ub)?;
        let cell = d.comparator(b, a);
        let ba = index.compose(b, a);
        for ea in ua.all_elements() {
            let (_, ya) = ua.element_home(ea);
            for eb in ub.all_elements() {
                let (xb, _) = ub.element_home(eb);
                if xb != ya {
                    continue;
                }
                let e = cell.component(w.class_of(eb, ea));
                table.insert((dmor(b, eb), dmor(a, ea)), dmor(ba, e));
            }
        }
    }
    let object = FinCat::new(objects, morphisms, identities, table)?;
    let mut injections = BTreeMap::new();
    for i in index.objects() {
        let node = d.node(i);
        let unit = index.identity(i);
        let ob = node.objects().iter().map(|x| (x.clone(), dob(i, x))).collect();
        let mor = node
            .morphisms()
            .iter()
            .map(|g| (g.clone(), dmor(unit, &companion_element(node.src(g), g))))
            .collect();
        injections.insert(i.clone(), FinFunctor::new(node.clone(), object.clone(), ob, mor)?);
    }
    let hom = hom_profunctor(&object);
    let mut cells = BTreeMap::new();
    for a in index.morphisms() {
        let (i, j) = (index.src(a), index.dst(a));
        let u = d.edge(a);
        let components = u
            .all_elements()
            .map(|e| {
                let (x, _) = u.element_home(e);
                (e.clone(), companion_element(&dob(i, x), &dmor(a, e)))
            })
            .collect();
        let cell = ProfCell::new(
            u.clone(),
            hom.clone(),
            injections[i].clone(),
            injections[j].clone(),
            components,
        )?;
        cells.insert(a.clone(), cell);
    }
    Ok(ProfDcolim { object, injections, cells })
}

/// A cocone under a profunctor diagram: a target category, a leg functor
/// per node, and a cell ψ_α: u_α ⇒ Z(κ_i−, κ_j−) per edge, compatible
/// with the comparators and sending identity edges through the legs.
#[derive(Clone, Debug)]
pub struct ProfCocone {
    target: FinCat,
    legs: BTreeMap<Id, FinFunctor>,
    cells: BTreeMap<Id, ProfCell>,
}

impl ProfCocone {
    pub fn new(
        d: &ProfDiagram,
        target: FinCat,
        legs: BTreeMap<Id, FinFunctor>,
        cells: BTreeMap<Id, ProfCell>,
    ) -> Result<ProfCocone, ProfError> {
        let index = d.index();
        for i in index.objects() {
            let leg = legs
                .get(i)
                .ok_or_else(|| ProfError::Incompatible(format!("no cocone leg at {i}")))?;
            if leg.src_cat() != d.node(i) || leg.dst_cat() != &target {
                return Err(ProfError::Incompatible(format!("leg at {i} has wrong endpoints")));
            }
        }
        if legs.len() != index.objects().len() {
            return Err(ProfError::Incompatible("cocone has legs at non-objects".into()));
        }
        let hom_t = hom_profunctor(&target);
        for a in index.morphisms() {
            let cell = cells
                .get(a)
                .ok_or_else(|| ProfError::Incompatible(format!("no cocone cell at {a}")))?;
            if cell.top() != d.edge(a)
                || cell.bottom() != &hom_t
                || cell.left() != &legs[index.src(a)]
                || cell.right() != &legs[index.dst(a)]
            {
                return Err(ProfError::Incompatible(format!(
                    "cocone cell at {a} has wrong boundary"
                )));
            }
        }
        if cells.len() != index.morphisms().len() {
            return Err(ProfError::Incompatible("cocone has cells at non-morphisms".into()));
        }
        // Identity edges must factor through the legs.
        for i in index.objects() {
            let unit = index.identity(i);
            let hom_i = d.edge(unit);
            let leg = &legs[i];
            for h in hom_i.all_elements() {
                let g = hom_element_morphism(hom_i, h);
                let want = companion_element(leg.ob(d.node(i).src(&g)), leg.mor(&g));
                if cells[unit].component(h) != &want {
                    return Err(ProfError::Incompatible(format!(
                        "cocone cell at the identity of {i} does not factor through the leg"
                    )));
                }
            }
        }
        // Compatibility with the comparators.
        for (b, a) in index.composable_pairs() {
            let (ua, ub) = (d.edge(a), d.edge(b));
            let (_, w) = tensor_with_witness(ua, ub)?;
            let ba = index.compose(b, a);
            for ea in ua.all_elements() {
                let (xa, ya) = ua.element_home(ea);
                for eb in ub.all_elements() {
                    let (xb, _) = ub.element_home(eb);
                    if xb != ya {
                        continue;
                    }
                    let through = cells[ba]
                        .component(d.comparator(b, a).component(w.class_of(eb, ea)));
                    let ha = hom_element_morphism(&hom_t, cells[a].component(ea));
                    let hb = hom_element_morphism(&hom_t, cells[b].component(eb));
                    let want = companion_element(
                        legs[index.src(a)].ob(xa),
                        target.compose(&hb, &ha),
                    );
                    if through != &want {
                        return Err(ProfError::Incompatible(format!(
                            "cocone cells do not respect the comparator at ({b}, {a})"
                        )));
                    }
                }
            }
        }
        Ok(ProfCocone { target, legs, cells })
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn leg(&self, i: &Id) -> &FinFunctor {
        &self.legs[i]
    }

    pub fn cell(&self, a: &Id) -> &ProfCell {
        &self.cells[a]
    }
}

/// The companion diagram of a category-valued diagram: edges are
/// companions, comparators compose representatives through the edge
/// functors.
pub fn companion_diagram(d: &CatDiagram) -> Result<ProfDiagram, ProfError> {
    let index = d.index().clone();
    let nodes = d.nodes().clone();
    let mut edges = BTreeMap::new();
    for a in index.morphisms() {
        edges.insert(a.clone(), companion(d.edge(a)));
    }
    let mut comparators = BTreeMap::new();
    for (b, a) in index.composable_pairs() {
        let (top, w) = tensor_with_witness(&edges[a], &edges[b])?;
        let ba = index.compose(b, a);
        let fb = d.edge(b);
        let target_node = d.node(index.dst(b));
        let components = top
            .all_elements()
            .map(|t| {
                let (eb, ea) = w.canonical_pair(t);
                let ga = companion_morphism(d.edge(a), &edges[a], ea);
                let gb = companion_morphism(fb, &edges[b], eb);
                let (x, _) = edges[a].element_home(ea);
                (t.clone(), companion_element(x, target_node.compose(&gb, fb.mor(&ga))))
            })
            .collect();
        let cell = ProfCell::new(
            top,
            edges[ba].clone(),
            FinFunctor::identity(d.node(index.src(a))),
            FinFunctor::identity(target_node),
            components,
        )?;
        comparators.insert((b.clone(), a.clone()), cell);
    }
    ProfDiagram::new(index, nodes, edges, comparators)
}

/// Invert the companion naming: the morphism g: F(x) → y carried by a
/// companion element at (x, y).
fn companion_morphism(f: &FinFunctor, u: &Profunctor, e: &Id) -> Id {
    let (x, y) = u.element_home(e);
    f.dst_cat()
        .hom(f.ob(x), y)
        .into_iter()
        .find(|g| &companion_element(x, g) == e)
        .expect("every companion element names a morphism")
}

/// Certify the colimit's universal property against finitely many test
/// targets: every cocone to a target must factor through a unique
/// functor out of the colimit, and cocones must biject with functors.
pub fn verify_universal(
    d: &ProfDiagram,
    colim: &ProfDcolim,
    targets: &[FinCat],
    budget: u64,
) -> Result<bool, ProfError> {
    let hom_colim = hom_profunctor(colim.object());
    let index_obs: Vec<Id> = d.index().objects().to_vec();
    let index_mors: Vec<Id> = d.index().morphisms().to_vec();
    for z in targets {
        let hom_z = hom_profunctor(z);
        let leg_choices: Vec<Vec<FinFunctor>> = index_obs
            .iter()
            .map(|i| enumerate_functors(d.node(i), z, budget))
            .collect::<Result<_, _>>()?;
        let leg_lens: Vec<usize> = leg_choices.iter().map(Vec::len).collect();
        let mut cocones = 0usize;
        for combo in index_products(&leg_lens) {
            let legs: BTreeMap<Id, FinFunctor> = combo
                .iter()
                .enumerate()
                .map(|(pos, &k)| (index_obs[pos].clone(), leg_choices[pos][k].clone()))
                .collect();
            let cell_choices: Vec<Vec<ProfCell>> = index_mors
                .iter()
                .map(|a| {
                    let (i, j) = (d.index().src(a), d.index().dst(a));
                    enumerate_cells(d.edge(a), &hom_z, &legs[i], &legs[j], budget)
                })
                .collect::<Result<_, _>>()?;
            let cell_lens: Vec<usize> = cell_choices.iter().map(Vec::len).collect();
            for ccombo in index_products(&cell_lens) {
                let cells: BTreeMap<Id, ProfCell> = ccombo
                    .iter()
                    .enumerate()
                    .map(|(pos, &k)| (index_mors[pos].clone(), cell_choices[pos][k].clone()))
                    .collect();
                let Ok(cocone) = ProfCocone::new(d, z.clone(), legs.clone(), cells) else {
                    continue;
                };
                cocones += 1;
                if !mediates(colim, &hom_colim, &hom_z, &cocone)? {
                    return Ok(false);
                }
            }
        }
        if cocones != enumerate_functors(colim.object(), z, budget)?.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The functor out of the colimit forced by a cocone: injections push to
/// legs, colimit cells push to cocone cells. True when that assignment
/// really is a functor agreeing with the legs.
fn mediates(
    colim: &ProfDcolim,
    hom_colim: &Profunctor,
    hom_z: &Profunctor,
    cocone: &ProfCocone,
) -> Result<bool, ProfError> {
    let mut ob = BTreeMap::new();
    for (i, inj) in colim.injections() {
        for (x, img) in inj.ob_map() {
            ob.insert(img.clone(), cocone.leg(i).ob(x).clone());
        }
    }
    let mut mor = BTreeMap::new();
    for (a, phi) in colim.cells() {
        for (e, val) in phi.components() {
            let mc = hom_element_morphism(hom_colim, val);
            let mz = hom_element_morphism(hom_z, cocone.cell(a).component(e));
            mor.insert(mc, mz);
        }
    }
    let Ok(h) = FinFunctor::new(colim.object().clone(), cocone.target().clone(), ob, mor)
    else {
        return Ok(false);
    };
    for (i, inj) in colim.injections() {
        if &FinFunctor::compose(&h, inj)? != cocone.leg(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn index_products(lens: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &l in lens {
        let mut next = Vec::new();
        for combo in &out {
            for i in 0..l {
                let mut c = combo.clone();
                c.push(i);
                next.push(c);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::collage::collage_of;
    use super::super::companion::tests::pick_zero;
    use super::super::tests::point_profunctor;
    use super::*;
    use crate::fincat::{
        cat_iso, delta_cat, grothendieck, poset_mor, poset_ob, pushout_cat, walking_idempotent,
    };

    fn diagram_of_profunctor(u: &Profunctor) -> ProfDiagram {
        let nodes = [
            (poset_ob(0), u.src_cat().clone()),
            (poset_ob(1), u.dst_cat().clone()),
        ]
        .into();
        let edges = [(poset_mor(0, 1), u.clone())].into();
        ProfDiagram::new(delta_cat(1), nodes, edges, BTreeMap::new()).unwrap()
    }

    fn pick_one() -> FinFunctor {
        FinFunctor::new(
            delta_cat(0),
            delta_cat(1),
            [(poset_ob(0), poset_ob(1))].into(),
            [(poset_mor(0, 0), poset_mor(1, 1))].into(),
        )
        .unwrap()
    }

    #[test]
    fn colimit_over_the_arrow_is_the_collage_carrier() {
        for u in [point_profunctor(), companion(&pick_zero())] {
            let d = diagram_of_profunctor(&u);
            let col = dcolim_prof(&d).unwrap();
            let expected = collage_of(&u);
            assert!(cat_iso(col.object(), expected.carrier(), 100_000).unwrap().is_some());
        }
    }

    #[test]
    fn constant_diagram_over_the_point_recovers_the_node() {
        let arrow = delta_cat(1);
        let d = ProfDiagram::new(
            delta_cat(0),
            [(poset_ob(0), arrow.clone())].into(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let col = dcolim_prof(&d).unwrap();
        assert!(cat_iso(col.object(), &arrow, 100_000).unwrap().is_some());
    }

    #[test]
    fn companion_colimit_over_a_pushout_is_the_grothendieck_category() {
        let nodes = [
            (poset_ob(0), delta_cat(0)),
            (poset_ob(1), delta_cat(1)),
            (poset_ob(2), delta_cat(1)),
        ]
        .into();
        let edges = [(poset_mor(0, 1), pick_zero()), (poset_mor(0, 2), pick_one())].into();
        let catd = CatDiagram::new(pushout_cat(), nodes, edges).unwrap();
        let pd = companion_diagram(&catd).unwrap();
        let col = dcolim_prof(&pd).unwrap();
        let g = grothendieck(&catd).unwrap();
        assert!(cat_iso(col.object(), &g.total, 500_000).unwrap().is_some());
    }

    #[test]
    fn companion_colimit_over_a_composable_chain() {
        // A Δ² index exercises a genuine (non-unit) comparator and the
        // coherence check on true composites.
        let arrow = delta_cat(1);
        let nodes = [
            (poset_ob(0), delta_cat(0)),
            (poset_ob(1), arrow.clone()),
            (poset_ob(2), arrow.clone()),
        ]
        .into();
        let edges = [
            (poset_mor(0, 1), pick_zero()),
            (poset_mor(1, 2), FinFunctor::identity(&arrow)),
            (poset_mor(0, 2), pick_zero()),
        ]
        .into();
        let catd = CatDiagram::new(delta_cat(2), nodes, edges).unwrap();
        let pd = companion_diagram(&catd).unwrap();
        let col = dcolim_prof(&pd).unwrap();
        let g = grothendieck(&catd).unwrap();
        assert!(cat_iso(col.object(), &g.total, 500_000).unwrap().is_some());
    }

    #[test]
    fn colimit_injections_and_cells_form_a_cocone() {
        let nodes = [
            (poset_ob(0), delta_cat(0)),
            (poset_ob(1), delta_cat(1)),
            (poset_ob(2), delta_cat(1)),
        ]
        .into();
        let edges = [(poset_mor(0, 1), pick_zero()), (poset_mor(0, 2), pick_one())].into();
        let catd = CatDiagram::new(pushout_cat(), nodes, edges).unwrap();
        let pd = companion_diagram(&catd).unwrap();
        let col = dcolim_prof(&pd).unwrap();
        ProfCocone::new(
            &pd,
            col.object().clone(),
            col.injections().clone(),
            col.cells().clone(),
        )
        .unwrap();
    }

    #[test]
    fn universality_certificate_on_small_targets() {
        let d = diagram_of_profunctor(&point_profunctor());
        let col = dcolim_prof(&d).unwrap();
        let targets = [delta_cat(0), delta_cat(1), walking_idempotent()];
        assert!(verify_universal(&d, &col, &targets, 1_000_000).unwrap());
    }

    #[test]
    fn non_direct_indexes_are_rejected() {
        let err = ProfDiagram::new(
            walking_idempotent(),
            [(poset_ob(0), delta_cat(0))].into(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ProfError::Incompatible(_)));
    }

    #[test]
    fn wrong_unit_edges_are_rejected() {
        let err = ProfDiagram::new(
            delta_cat(0),
            [(poset_ob(0), delta_cat(0))].into(),
            [(poset_mor(0, 0), point_profunctor())].into(),
            BTreeMap::new(),
        )
        .unwrap_err();
        assert!(matches!(err, ProfError::Incompatible(_)));
    }

    #[test]
    fn mismatched_comparators_are_rejected() {
        // The point profunctor's element id cannot mirror hom element
        // ids, so the two unitor tops are genuinely different tensors
        // (companions of inclusions would make them coincide).
        let u = point_profunctor();
        let nodes = [
            (poset_ob(0), u.src_cat().clone()),
            (poset_ob(1), u.dst_cat().clone()),
        ]
        .into();
        let edges = [(poset_mor(0, 1), u.clone())].into();
        // A left unitor planted where the right unitor belongs.
        let comparators =
            [((poset_mor(0, 1), poset_mor(0, 0)), left_unitor(&u).unwrap())].into();
        let err = ProfDiagram::new(delta_cat(1), nodes, edges, comparators).unwrap_err();
        assert!(matches!(err, ProfError::Incompatible(_)));
    }
}
