//! Direct enumeration of abelian `b_0`-stable subalgebras of `g_1` from the
//! weights alone.
//!
//! A subset `S` of `Δ̂_1` stands for the span of the root spaces `ĝ_{−μ}`,
//! `μ ∈ S`. It is `b_0`-stable when `μ ∈ S`, `β ∈ Δ̂_0^+` and `μ − β ∈ Δ̂_1`
//! force `μ − β ∈ S`, and abelian when no sum of two distinct members is a
//! root, real or imaginary.
//!
//! For `k = 2` the grade-one part also holds the imaginary root space of `δ`,
//! which is not part of the search domain. A weight `μ` with `μ − β = δ`
//! would drag that space into the span and, with it, a nonzero bracket, so
//! such weights never occur in an abelian stable subset.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{ensure, Error, Result};
use crate::involution::GradedData;
use crate::rootsys::AffineRoot;

/// A set of grade-one weights. Ordered by size, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeightSubset {
    pub members: BTreeSet<AffineRoot>,
}

impl WeightSubset {
    pub fn new<I: IntoIterator<Item = AffineRoot>>(members: I) -> Self {
        WeightSubset { members: members.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Ord for WeightSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.members).cmp(&(other.len(), &other.members))
    }
}

impl PartialOrd for WeightSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Why a subset fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `member − beta` is a grade-one root missing from the subset.
    Unstable { member: AffineRoot, beta: AffineRoot, missing: AffineRoot },
    /// `member − beta` is imaginary.
    ForcesImaginary { member: AffineRoot, beta: AffineRoot, imaginary: AffineRoot },
    /// `a + b` is a root.
    NotAbelian { a: AffineRoot, b: AffineRoot, sum: AffineRoot },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Unstable { member, beta, missing } => {
                write!(f, "{member} − {beta} = {missing} is missing")
            }
            Witness::ForcesImaginary { member, beta, imaginary } => {
                write!(f, "{member} − {beta} = {imaginary} is imaginary")
            }
            Witness::NotAbelian { a, b, sum } => write!(f, "{a} + {b} = {sum} is a root"),
        }
    }
}

/// `None` when `s` is abelian and stable, otherwise the first violation.
pub fn is_abelian_stable(gd: &GradedData, s: &WeightSubset) -> Result<Option<Witness>> {
    let ars = gd.roots.as_ref();
    let delta1: HashSet<&AffineRoot> = gd.delta1.iter().collect();
    if let Some(bad) = s.members.iter().find(|m| !delta1.contains(m)) {
        return Err(Error::Input(format!("{bad} is not a grade-one real root of {}", gd.spec)));
    }
    for member in &s.members {
        for beta in &gd.delta0_pos {
            let missing = member.sub(beta);
            if !missing.is_zero() && ars.is_multiple_of_delta(&missing) {
                return Ok(Some(Witness::ForcesImaginary {
                    member: member.clone(),
                    beta: beta.clone(),
                    imaginary: missing,
                }));
            }
            if delta1.contains(&missing) && !s.members.contains(&missing) {
                return Ok(Some(Witness::Unstable { member: member.clone(), beta: beta.clone(), missing }));
            }
        }
    }
    let members: Vec<&AffineRoot> = s.members.iter().collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let sum = a.add(b);
            if ars.is_any_root(&sum)? {
                return Ok(Some(Witness::NotAbelian { a: (*a).clone(), b: (*b).clone(), sum }));
            }
        }
    }
    Ok(None)
}

/// Precomputed relations on `Δ̂_1`, indexed by position in `gd.delta1`.
struct Relations {
    /// `below[i]`: grade-one roots `μ_i − β` with `β ∈ Δ̂_0^+`.
    below: Vec<FixedBitSet>,
    /// `clash[i]`: indices `j ≠ i` with `μ_i + μ_j` a root.
    clash: Vec<FixedBitSet>,
    /// Weights lying directly above an imaginary root.
    excluded: FixedBitSet,
}

fn relations(gd: &GradedData) -> Result<Relations> {
    let ars = gd.roots.as_ref();
    let n = gd.delta1.len();
    let index: HashMap<&AffineRoot, usize> = gd.delta1.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    let mut clash = vec![FixedBitSet::with_capacity(n); n];
    let mut excluded = FixedBitSet::with_capacity(n);
    for (i, mu) in gd.delta1.iter().enumerate() {
        for beta in &gd.delta0_pos {
            let d = mu.sub(beta);
            if let Some(&j) = index.get(&d) {
                below[i].insert(j);
            } else if !d.is_zero() && ars.is_multiple_of_delta(&d) {
                excluded.insert(i);
            }
        }
        for j in i + 1..n {
            if ars.is_any_root(&mu.add(&gd.delta1[j]))? {
                clash[i].insert(j);
                clash[j].insert(i);
            }
        }
    }
    Ok(Relations { below, clash, excluded })
}

/// Grows subsets from `∅` one weight at a time, adding `μ` only once all of
/// its lower neighbours are present. Every stable subset is reached this way
/// and each is kept once.
fn grow(gd: &GradedData, abelian: bool, limit: usize, order: &[usize]) -> Result<Option<Vec<FixedBitSet>>> {
    let rel = relations(gd)?;
    let n = gd.delta1.len();
    let mut sorted_order = order.to_vec();
    sorted_order.sort_unstable();
    ensure!(sorted_order == (0..n).collect::<Vec<_>>(), "{order:?} is not an ordering of the grade-one roots");
    let empty = FixedBitSet::with_capacity(n);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(empty.clone());
    let mut frontier = vec![empty];
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in &frontier {
            for &i in order {
                if set.contains(i) || rel.excluded.contains(i) || !rel.below[i].is_subset(set) {
                    continue;
                }
                if abelian && !rel.clash[i].is_disjoint(set) {
                    continue;
                }
                let mut grown = set.clone();
                grown.insert(i);
                if seen.insert(grown.clone()) {
                    if seen.len() > limit {
                        return Ok(None);
                    }
                    next.push(grown);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(Some(all))
}

fn to_subsets(gd: &GradedData, sets: Vec<FixedBitSet>) -> Vec<WeightSubset> {
    let mut out: Vec<WeightSubset> =
        sets.iter().map(|b| WeightSubset::new(b.ones().map(|i| gd.delta1[i].clone()))).collect();
    out.sort();
    out
}

/// Every abelian `b_0`-stable subalgebra of `g_1`, in canonical order.
pub fn enumerate_abelian_subalgebras(gd: &GradedData) -> Result<Vec<WeightSubset>> {
    let order: Vec<usize> = (0..gd.delta1.len()).collect();
    enumerate_abelian_subalgebras_ordered(gd, &order)
}

/// As [`enumerate_abelian_subalgebras`], trying the weights `gd.delta1[i]`
/// for `i` in `order` at each step.
pub fn enumerate_abelian_subalgebras_ordered(gd: &GradedData, order: &[usize]) -> Result<Vec<WeightSubset>> {
    let sets = grow(gd, true, usize::MAX, order)?.expect("no limit");
    Ok(to_subsets(gd, sets))
}

/// Number of stable subsets without the abelian condition, or `None` once it
/// exceeds `limit`.
pub fn count_stable_subsets(gd: &GradedData, limit: usize) -> Result<Option<usize>> {
    let order: Vec<usize> = (0..gd.delta1.len()).collect();
    Ok(grow(gd, false, limit, &order)?.map(|v| v.len()))
}
