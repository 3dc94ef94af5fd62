//! 2-cells between profunctors: equivariant families of functions with
//! chosen vertical boundaries, their two compositions, the coherence
//! cells of the tensor (unitors, associator), and exhaustive cell
//! enumeration for universality checks.

use super::tensor::tensor_with_witness;
use super::{ProfError, Profunctor};
use crate::fincat::FinFunctor;
use crate::id::Id;
use std::collections::BTreeMap;

/// A 2-cell α: u ⇒ v with vertical boundary (F, G): for every pair
/// (c,d), a function u(c,d) → v(Fc,Gd) commuting with both actions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProfCell {
    top: Profunctor,
    bottom: Profunctor,
    left: FinFunctor,
    right: FinFunctor,
    components: BTreeMap<Id, Id>,
}

impl ProfCell {
    pub fn new(
        top: Profunctor,
        bottom: Profunctor,
        left: FinFunctor,
        right: FinFunctor,
        components: BTreeMap<Id, Id>,
    ) -> Result<ProfCell, ProfError> {
        if left.src_cat() != top.src_cat()
            || right.src_cat() != top.dst_cat()
            || left.dst_cat() != bottom.src_cat()
            || right.dst_cat() != bottom.dst_cat()
        {
            return Err(ProfError::BoundaryMismatch(
                "cell verticals do not frame the horizontal boundary".into(),
            ));
        }
        for x in components.keys() {
            if !top.has_element(x) {
                return Err(ProfError::UnknownElement(x.clone()));
            }
        }
        for x in top.all_elements() {
            let y = components
                .get(x)
                .ok_or_else(|| ProfError::Incompatible(format!("cell misses element {x}")))?;
            let (c, d) = top.element_home(x);
            if !bottom.has_element(y)
                || bottom.element_home(y) != &(left.ob(c).clone(), right.ob(d).clone())
            {
                return Err(ProfError::Incompatible(format!(
                    "cell sends {x} outside v(F{c}, G{d})"
                )));
            }
        }
        let cell = ProfCell { top, bottom, left, right, components };
        cell.check_equivariance()?;
        Ok(cell)
    }

    fn check_equivariance(&self) -> Result<(), ProfError> {
        for x in self.top.all_elements() {
            let (c, d) = self.top.element_home(x);
            let y = &self.components[x];
            for f in self.top.src_cat().morphisms() {
                if self.top.src_cat().dst(f) != c {
                    continue;
                }
                let via = &self.components[self.top.lact(f, x)];
                if via != self.bottom.lact(self.left.mor(f), y) {
                    return Err(ProfError::Incompatible(format!(
                        "cell is not equivariant for the left action of {f} on {x}"
                    )));
                }
            }
            for g in self.top.dst_cat().morphisms() {
                if self.top.dst_cat().src(g) != d {
                    continue;
                }
                let via = &self.components[self.top.ract(g, x)];
                if via != self.bottom.ract(self.right.mor(g), y) {
                    return Err(ProfError::Incompatible(format!(
                        "cell is not equivariant for the right action of {g} on {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn top(&self) -> &Profunctor {
        &self.top
    }

    pub fn bottom(&self) -> &Profunctor {
        &self.bottom
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    /// Image of a top element. Panics on unknown elements.
    pub fn component(&self, x: &Id) -> &Id {
        &self.components[x]
    }

    pub fn components(&self) -> &BTreeMap<Id, Id> {
        &self.components
    }

    /// Invertible means: identity vertical boundary and every component
    /// bijective.
    pub fn is_invertible(&self) -> bool {
        self.left == FinFunctor::identity(self.top.src_cat())
            && self.right == FinFunctor::identity(self.top.dst_cat())
            && self.top.element_count() == self.bottom.element_count()
            && {
                let mut seen = std::collections::BTreeSet::new();
                self.components.values().all(|y| seen.insert(y.clone()))
            }
    }

    pub fn inverse(&self) -> Result<ProfCell, ProfError> {
        if !self.is_invertible() {
            return Err(ProfError::Incompatible("cell is not invertible".into()));
        }
        let components = self.components.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        ProfCell::new(
            self.bottom.clone(),
            self.top.clone(),
            self.left.clone(),
            self.right.clone(),
            components,
        )
    }
}

pub fn identity_cell(u: &Profunctor) -> ProfCell {
    let components = u.all_elements().map(|x| (x.clone(), x.clone())).collect();
    ProfCell::new(
        u.clone(),
        u.clone(),
        FinFunctor::identity(u.src_cat()),
        FinFunctor::identity(u.dst_cat()),
        components,
    )
    .expect("identity cell is always valid")
}

/// β ∘ α vertically: α: u ⇒ v over (F,G), β: v ⇒ w over (F′,G′) give
/// u ⇒ w over (F′∘F, G′∘G).
pub fn cell_compose_vertical(beta: &ProfCell, alpha: &ProfCell) -> Result<ProfCell, ProfError> {
    if alpha.bottom != beta.top {
        return Err(ProfError::BoundaryMismatch(
            "vertical composition: middle profunctors differ".into(),
        ));
    }
    let components = alpha
        .components
        .iter()
        .map(|(x, y)| (x.clone(), beta.components[y].clone()))
        .collect();
    ProfCell::new(
        alpha.top.clone(),
        beta.bottom.clone(),
        FinFunctor::compose(&beta.left, &alpha.left)?,
        FinFunctor::compose(&beta.right, &alpha.right)?,
        components,
    )
}

/// β ∗ α horizontally: α: u ⇒ u′ over (F,G) and β: v ⇒ v′ over (G,H)
/// with u: C⇸D, v: D⇸E give v⊗u ⇒ v′⊗u′ over (F,H).
pub fn cell_compose_horizontal(beta: &ProfCell, alpha: &ProfCell) -> Result<ProfCell, ProfError> {
    if alpha.right != beta.left {
        return Err(ProfError::BoundaryMismatch(
            "horizontal composition: middle verticals differ".into(),
        ));
    }
    let (top, top_w) = tensor_with_witness(&alpha.top, &beta.top)?;
    let (bottom, bottom_w) = tensor_with_witness(&alpha.bottom, &beta.bottom)?;
    let components = top
        .all_elements()
        .map(|e| {
            let (y, x) = top_w.canonical_pair(e);
            let image = bottom_w.class_of(&beta.components[y], &alpha.components[x]);
            (e.clone(), image.clone())
        })
        .collect();
    ProfCell::new(top, bottom, alpha.left.clone(), beta.right.clone(), components)
}

/// The left unitor hom_D ⊗ u ⇒ u, [(g, x)] ↦ g·x. Invertible.
pub fn left_unitor(u: &Profunctor) -> Result<ProfCell, ProfError> {
    let homd = super::hom_profunctor(u.dst_cat());
    let (top, w) = tensor_with_witness(u, &homd)?;
    let components = top
        .all_elements()
        .map(|e| {
            let (h, x) = w.canonical_pair(e);
            // h names (d, g) in the hom profunctor; recover g by acting
            // on nothing: hom elements act by composition, so read the
            // morphism back through the companion naming.
            let g = hom_element_morphism(&homd, h);
            (e.clone(), u.ract(&g, x).clone())
        })
        .collect();
    ProfCell::new(
        top,
        u.clone(),
        FinFunctor::identity(u.src_cat()),
        FinFunctor::identity(u.dst_cat()),
        components,
    )
}

/// The right unitor u ⊗ hom_C ⇒ u, [(x, f)] ↦ x·f. Invertible.
pub fn right_unitor(u: &Profunctor) -> Result<ProfCell, ProfError> {
    let homc = super::hom_profunctor(u.src_cat());
    let (top, w) = tensor_with_witness(&homc, u)?;
    let components = top
        .all_elements()
        .map(|e| {
            let (x, h) = w.canonical_pair(e);
            let f = hom_element_morphism(&homc, h);
            (e.clone(), u.lact(&f, x).clone())
        })
        .collect();
    ProfCell::new(
        top,
        u.clone(),
        FinFunctor::identity(u.src_cat()),
        FinFunctor::identity(u.dst_cat()),
        components,
    )
}

/// The morphism of C carried by an element of hom_C, inverted through
/// the companion naming scheme.
pub(crate) fn hom_element_morphism(hom: &Profunctor, e: &Id) -> Id {
    let (c, d) = hom.element_home(e);
    hom.src_cat()
        .hom(c, d)
        .into_iter()
        .find(|g| &super::companion::companion_element(c, g) == e)
        .expect("every hom element names a morphism")
}

/// The associator (w⊗v)⊗u ⇒ w⊗(v⊗u) as an invertible cell with identity
/// verticals, acting on representatives by re-bracketing.
pub fn associator(
    u: &Profunctor,
    v: &Profunctor,
    w: &Profunctor,
) -> Result<ProfCell, ProfError> {
    let (vw, vw_w) = tensor_with_witness(v, w)?;
    let (lhs, lhs_w) = tensor_with_witness(u, &vw)?;
    let (uv, uv_w) = tensor_with_witness(u, v)?;
    let (rhs, rhs_w) = tensor_with_witness(&uv, w)?;
    let components = lhs
        .all_elements()
        .map(|e| {
            let (t, x) = lhs_w.canonical_pair(e);
            let (z, y) = vw_w.canonical_pair(t);
            let s = uv_w.class_of(y, x);
            (e.clone(), rhs_w.class_of(z, s).clone())
        })
        .collect();
    ProfCell::new(
        lhs,
        rhs,
        FinFunctor::identity(u.src_cat()),
        FinFunctor::identity(w.dst_cat()),
        components,
    )
}

/// All equivariant cells top ⇒ bottom over the given verticals, found by
/// backtracking over element images. The budget caps attempted
/// assignments.
pub fn enumerate_cells(
    top: &Profunctor,
    bottom: &Profunctor,
    left: &FinFunctor,
    right: &FinFunctor,
    budget: u64,
) -> Result<Vec<ProfCell>, ProfError> {
    let elements: Vec<Id> = top.all_elements().cloned().collect();
    let mut assign: BTreeMap<Id, Id> = BTreeMap::new();
    let mut out = Vec::new();
    let mut steps = 0u64;
    search(
        top,
        bottom,
        left,
        right,
        &elements,
        0,
        &mut assign,
        &mut out,
        &mut steps,
        budget,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    top: &Profunctor,
    bottom: &Profunctor,
    left: &FinFunctor,
    right: &FinFunctor,
    elements: &[Id],
    at: usize,
    assign: &mut BTreeMap<Id, Id>,
    out: &mut Vec<ProfCell>,
    steps: &mut u64,
    budget: u64,
) -> Result<(), ProfError> {
    if at == elements.len() {
        if let Ok(cell) = ProfCell::new(
            top.clone(),
            bottom.clone(),
            left.clone(),
            right.clone(),
            assign.clone(),
        ) {
            out.push(cell);
        }
        return Ok(());
    }
    let x = &elements[at];
    let (c, d) = top.element_home(x);
    let candidates: Vec<Id> = bottom.at(left.ob(c), right.ob(d)).to_vec();
    for y in candidates {
        *steps += 1;
        if *steps > budget {
            return Err(ProfError::EnumerationBudgetExceeded(budget));
        }
        assign.insert(x.clone(), y.clone());
        if partial_equivariant(top, bottom, left, right, assign, x) {
            search(top, bottom, left, right, elements, at + 1, assign, out, steps, budget)?;
        }
        assign.remove(x);
    }
    Ok(())
}

fn partial_equivariant(
    top: &Profunctor,
    bottom: &Profunctor,
    left: &FinFunctor,
    right: &FinFunctor,
    assign: &BTreeMap<Id, Id>,
    x: &Id,
) -> bool {
    let y = &assign[x];
    let (c, d) = top.element_home(x);
    for f in top.src_cat().morphisms() {
        if top.src_cat().dst(f) == c {
            if let Some(img) = assign.get(top.lact(f, x)) {
                if img != bottom.lact(left.mor(f), y) {
                    return false;
                }
            }
        }
    }
    for g in top.dst_cat().morphisms() {
        if top.dst_cat().src(g) == d {
            if let Some(img) = assign.get(top.ract(g, x)) {
                if img != bottom.ract(right.mor(g), y) {
                    return false;
                }
            }
        }
    }
    // Also check actions landing ON x from already-assigned elements.
    for (x2, y2) in assign {
        let (c2, d2) = top.element_home(x2);
        for f in top.src_cat().morphisms() {
            if top.src_cat().dst(f) == c2 && top.lact(f, x2) == x {
                if bottom.lact(left.mor(f), y2) != y {
                    return false;
                }
            }
        }
        for g in top.dst_cat().morphisms() {
            if top.dst_cat().src(g) == d2 && top.ract(g, x2) == x {
                if bottom.ract(right.mor(g), y2) != y {
                    return false;
                }
            }
        }
    }
    true
}
