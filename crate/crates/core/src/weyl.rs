//! Affine Weyl group elements acting on affine roots, and the breadth-first
//! search for σ-minuscule elements.

use std::collections::{BTreeSet, HashSet};

use crate::error::{ensure, Error, Result};
use crate::involution::GradedData;
use crate::rootsys::{AffineRoot, AffineRootSystem};
use crate::Int;

/// An element `w` stored through the images `w(α_0), …, w(α_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    pub images: Vec<AffineRoot>,
    pub length: usize,
    /// `N(w) = {β > 0 | w⁻¹(β) < 0}`.
    pub inversion_set: BTreeSet<AffineRoot>,
}

impl AffineWeylElement {
    pub fn identity(ars: &AffineRootSystem) -> Self {
        AffineWeylElement {
            images: (0..ars.nodes()).map(|i| ars.simple(i)).collect(),
            length: 0,
            inversion_set: BTreeSet::new(),
        }
    }

    /// `w·s_i` when `w(α_i) > 0`, otherwise `None`.
    pub fn extend_by_simple(&self, ars: &AffineRootSystem, i: usize) -> Result<Option<Self>> {
        let wi = &self.images[i];
        if !wi.is_positive() {
            return Ok(None);
        }
        let mut images = Vec::with_capacity(self.images.len());
        for (j, wj) in self.images.iter().enumerate() {
            // s_i(α_j) = α_j − ⟨α_i∨, α_j⟩ α_i
            let img = wj.sub(&wi.scale(ars.cartan[(i, j)]));
            if !ars.is_real_root(&img)? {
                return Err(Error::Invariant(format!("image {img} of a simple root is not a real root")));
            }
            images.push(img);
        }
        let mut inversion_set = self.inversion_set.clone();
        inversion_set.insert(wi.clone());
        Ok(Some(AffineWeylElement { images, length: self.length + 1, inversion_set }))
    }

    /// Linear extension of the images to any integer vector.
    pub fn act(&self, v: &AffineRoot) -> AffineRoot {
        let n = self.images.len();
        let mut out = vec![0; n];
        for (c, img) in v.coords().iter().zip(&self.images) {
            for t in 0..n {
                out[t] += c * img.coords()[t];
            }
        }
        AffineRoot(out)
    }

    /// As [`act`](Self::act), failing when the result leaves the window.
    pub fn act_in(&self, ars: &AffineRootSystem, v: &AffineRoot) -> Result<AffineRoot> {
        let out = self.act(v);
        if !ars.in_window(&out) {
            return Err(Error::OutOfWindow(out.0));
        }
        Ok(out)
    }
}

pub fn enumerate_sigma_minuscule(gd: &GradedData) -> Result<Vec<AffineWeylElement>> {
    let order: Vec<usize> = (0..gd.roots.nodes()).collect();
    enumerate_sigma_minuscule_ordered(gd, &order)
}

/// Breadth-first search from the identity, trying simple reflections in
/// `order` at each node. The result is sorted by length then inversion set,
/// so it does not depend on `order`.
pub fn enumerate_sigma_minuscule_ordered(gd: &GradedData, order: &[usize]) -> Result<Vec<AffineWeylElement>> {
    let ars = gd.roots.as_ref();
    let mut sorted_order = order.to_vec();
    sorted_order.sort_unstable();
    ensure!(sorted_order == (0..ars.nodes()).collect::<Vec<_>>(), "{order:?} is not an ordering of the nodes");
    let cap = gd.delta1.len();

    let identity = AffineWeylElement::identity(ars);
    let mut seen: HashSet<Vec<AffineRoot>> = HashSet::new();
    seen.insert(identity.images.clone());
    let mut all = vec![identity.clone()];
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for &i in order {
                let wi = &w.images[i];
                if !wi.is_positive() || gd.ht(wi) != 1 {
                    continue;
                }
                let v = w.extend_by_simple(ars, i)?.expect("positive image extends");
                ensure!(v.length <= cap, "{}: σ-minuscule length {} above |Δ̂_1| = {cap}", gd.spec, v.length);
                if seen.insert(v.images.clone()) {
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| (a.length, &a.inversion_set).cmp(&(b.length, &b.inversion_set)));
    check_inversion_sets(gd, &all)?;
    Ok(all)
}

/// Checks `N(w) ⊆ Δ̂_1`, `|N(w)| = ℓ(w)`, distinctness of the sets, and
/// closure under subtracting grade-zero positive roots.
pub fn check_inversion_sets(gd: &GradedData, elems: &[AffineWeylElement]) -> Result<()> {
    let ars = gd.roots.as_ref();
    let delta1: HashSet<&AffineRoot> = gd.delta1.iter().collect();
    let mut distinct = HashSet::new();
    for w in elems {
        ensure!(w.inversion_set.len() == w.length, "{}: |N(w)| ≠ ℓ(w)", gd.spec);
        ensure!(distinct.insert(&w.inversion_set), "{}: repeated inversion set", gd.spec);
        for mu in &w.inversion_set {
            ensure!(delta1.contains(mu), "{}: {mu} ∈ N(w) is not a grade-one real root", gd.spec);
            for beta in &gd.delta0_pos {
                let d = mu.sub(beta);
                if d.is_positive() && ars.is_real_root(&d)? {
                    ensure!(w.inversion_set.contains(&d), "{}: N(w) not closed, {mu} − {beta}", gd.spec);
                }
            }
        }
    }
    Ok(())
}

/// `N(w)` recomputed from the definition over the positive roots of the
/// window whose `α_0`-coefficient is at most `bound`.
pub fn inversion_set_by_definition(ars: &AffineRootSystem, w: &AffineWeylElement, bound: Int) -> BTreeSet<AffineRoot> {
    ars.positive_real_roots()
        .iter()
        .filter(|g| g.coords()[0] <= bound)
        .map(|g| w.act(g))
        .filter(|img| img.is_negative())
        .map(|img| img.neg())
        .collect()
}
