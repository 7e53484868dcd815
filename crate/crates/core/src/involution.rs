//! Involutions of simple Lie algebras as Kac tuples `(s; k)` and the grading
//! they induce on the affine root system.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::rootsys::{
    build_affine_default, diagram_automorphisms, AffineKind, AffineRoot, AffineRootSystem, FiniteKind,
    FiniteRootSystem,
};
use crate::Int;

/// Which of the three shapes a Kac tuple of order two takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `k = 1`, two nodes with `a = s = 1`; `g_0` has a one-dimensional centre.
    Hermitian,
    /// `k = 1`, one node with `s = 1`, `a = 2`.
    SemisimpleK1,
    /// `k = 2`, one node with `s = 1`, `a = 1`.
    SemisimpleK2,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Hermitian => "hermitian",
            CaseTag::SemisimpleK1 => "semisimple-k1",
            CaseTag::SemisimpleK2 => "semisimple-k2",
        }
    }

    pub fn is_hermitian(self) -> bool {
        self == CaseTag::Hermitian
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hermitian" => Ok(CaseTag::Hermitian),
            "semisimple-k1" => Ok(CaseTag::SemisimpleK1),
            "semisimple-k2" => Ok(CaseTag::SemisimpleK2),
            _ => Err(Error::Input(format!("unknown case `{s}`"))),
        }
    }
}

/// A Kac tuple `(s_0, …, s_n; k)` describing an involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionSpec {
    pub affine: AffineKind,
    pub s: Vec<Int>,
    pub case: CaseTag,
    /// Node with `s_p = 1`; `0` in the hermitian case.
    pub p: usize,
    /// Second node with `s_q = 1`, hermitian case only.
    pub q: Option<usize>,
}

impl InvolutionSpec {
    /// Validates a tuple. Hermitian tuples with `s_0 = 0` are moved by a
    /// diagram automorphism so that `s_0 = 1`.
    pub fn new(affine: AffineKind, s: Vec<Int>) -> Result<Self> {
        let labels = affine.labels();
        let k = affine.twist() as Int;
        if s.len() != labels.len() {
            return Err(Error::InvalidSpec(format!(
                "{affine} has {} nodes, tuple has {}",
                labels.len(),
                s.len()
            )));
        }
        if s.iter().any(|&x| x < 0) {
            return Err(Error::InvalidSpec(format!("negative entry in {s:?}")));
        }
        let total: Int = labels.iter().zip(&s).map(|(a, x)| a * x).sum();
        if k * total != 2 {
            return Err(Error::InvalidSpec(format!("k·Σ a_i s_i = {} ≠ 2 for {s:?} on {affine}", k * total)));
        }
        let g = s.iter().fold(0, |acc: Int, x| acc.gcd(x));
        if g != 1 {
            return Err(Error::InvalidSpec(format!("{s:?} is not primitive")));
        }
        let support: Vec<usize> = (0..s.len()).filter(|&i| s[i] != 0).collect();
        let case = match (k, support.as_slice()) {
            (1, &[i, j]) if labels[i] == 1 && labels[j] == 1 && s[i] == 1 && s[j] == 1 => CaseTag::Hermitian,
            (1, &[i]) if labels[i] == 2 && s[i] == 1 => CaseTag::SemisimpleK1,
            (2, &[i]) if labels[i] == 1 && s[i] == 1 => CaseTag::SemisimpleK2,
            _ => return Err(Error::InvalidSpec(format!("{s:?} on {affine} fits no involution pattern"))),
        };
        if case.is_hermitian() {
            let s = if s[0] == 1 {
                s
            } else {
                diagram_automorphisms(&affine.gram())
                    .iter()
                    .map(|perm| permute(&s, perm))
                    .filter(|t| t[0] == 1)
                    .max()
                    .ok_or_else(|| Error::InvalidSpec(format!("cannot move {s:?} to s_0 = 1 on {affine}")))?
            };
            let q = (1..s.len()).find(|&i| s[i] == 1).expect("hermitian tuple has two nodes");
            Ok(InvolutionSpec { affine, s, case, p: 0, q: Some(q) })
        } else {
            Ok(InvolutionSpec { affine, p: support[0], s, case, q: None })
        }
    }

    /// The involution with `s_p = 1` on `affine`, `s_i = 0` elsewhere.
    pub fn semisimple(affine: AffineKind, p: usize) -> Result<Self> {
        let n = affine.nodes();
        if p >= n {
            return Err(Error::InvalidSpec(format!("node {p} out of range for {affine}")));
        }
        let mut s = vec![0; n];
        s[p] = 1;
        let spec = Self::new(affine, s)?;
        if spec.case.is_hermitian() {
            return Err(Error::InvalidSpec(format!("node {p} of {affine} has label 1")));
        }
        Ok(spec)
    }

    /// The hermitian involution with `s_0 = s_q = 1` on the untwisted diagram.
    pub fn hermitian(base: FiniteKind, q: usize) -> Result<Self> {
        let affine = AffineKind::untwisted(base);
        let n = affine.nodes();
        if q == 0 || q >= n {
            return Err(Error::InvalidSpec(format!("node {q} out of range for {affine}")));
        }
        let mut s = vec![0; n];
        s[0] = 1;
        s[q] = 1;
        Self::new(affine, s)
    }

    pub fn k(&self) -> Int {
        self.affine.twist() as Int
    }

    pub fn base(&self) -> FiniteKind {
        self.affine.base()
    }

    /// `ht_σ(v) = Σ s_i v_i`.
    pub fn ht(&self, v: &AffineRoot) -> Int {
        self.s.iter().zip(v.coords()).map(|(a, b)| a * b).sum()
    }

    /// Lexicographically greatest tuple in the orbit under diagram automorphisms.
    pub fn canonical_form(&self) -> Vec<Int> {
        diagram_automorphisms(&self.affine.gram())
            .iter()
            .map(|perm| permute(&self.s, perm))
            .max()
            .expect("identity is an automorphism")
    }

    /// Short label such as `F4^(1) p=1` or `A3^(1) q=2`.
    pub fn label(&self) -> String {
        match self.q {
            Some(q) => format!("{} q={q}", self.affine),
            None => format!("{} p={}", self.affine, self.p),
        }
    }
}

impl fmt::Display for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|x| x.to_string()).collect();
        write!(f, "{} s=({}) k={} [{}]", self.affine, s.join(","), self.k(), self.case)
    }
}

pub fn ht_sigma(spec: &InvolutionSpec, alpha: &AffineRoot) -> Int {
    spec.ht(alpha)
}

/// `t[π(i)] = s[i]`.
fn permute(s: &[Int], perm: &[usize]) -> Vec<Int> {
    let mut t = vec![0; s.len()];
    for (i, &pi) in perm.iter().enumerate() {
        t[pi] = s[i];
    }
    t
}

/// Affine diagrams attached to `base`: the untwisted one and, when it exists,
/// the twisted one.
pub fn affine_kinds(base: FiniteKind) -> Vec<AffineKind> {
    let mut out = vec![AffineKind::untwisted(base)];
    if let Ok(tw) = AffineKind::new(base, 2) {
        out.push(tw);
    }
    out
}

/// One representative per conjugacy class of involutions of `base`.
///
/// Representatives are the lexicographically greatest tuple in their orbit,
/// so hermitian ones have `s_0 = 1`. Ordered by `k`, then hermitian before
/// semisimple, then by `p` or `q`.
pub fn classify_involutions(base: FiniteKind) -> Result<Vec<InvolutionSpec>> {
    let mut out = Vec::new();
    for affine in affine_kinds(base) {
        let k = affine.twist() as Int;
        let labels = affine.labels();
        let n = labels.len();
        let mut candidates: Vec<Vec<Int>> = Vec::new();
        for i in 0..n {
            if k * labels[i] == 2 {
                let mut s = vec![0; n];
                s[i] = 1;
                candidates.push(s);
            }
            if k == 1 && labels[i] == 1 {
                for j in i + 1..n {
                    if labels[j] == 1 {
                        let mut s = vec![0; n];
                        s[i] = 1;
                        s[j] = 1;
                        candidates.push(s);
                    }
                }
            }
        }
        let autos = diagram_automorphisms(&affine.gram());
        let reps: BTreeSet<Vec<Int>> = candidates
            .iter()
            .map(|s| autos.iter().map(|perm| permute(s, perm)).max().unwrap())
            .collect();
        let mut specs = reps
            .into_iter()
            .map(|s| InvolutionSpec::new(affine, s))
            .collect::<Result<Vec<_>>>()?;
        for spec in &specs {
            if spec.case.is_hermitian() {
                ensure!(spec.s[0] == 1, "{spec}: hermitian representative without s_0 = 1");
            }
        }
        specs.sort_by_key(|sp| (sp.case, sp.q.unwrap_or(sp.p)));
        out.extend(specs);
    }
    Ok(out)
}

/// A connected component `Σ` of the diagram on `Π̂_0`.
#[derive(Clone, Debug)]
pub struct Component {
    pub nodes: Vec<usize>,
    pub system: FiniteRootSystem,
    /// Positive roots of `Δ_Σ` in affine coordinates.
    pub roots: Vec<AffineRoot>,
    pub highest: AffineRoot,
}

impl Component {
    pub fn kind(&self) -> FiniteKind {
        self.system.kind
    }

    pub fn weyl_order(&self) -> u128 {
        self.system.weyl_order
    }

    pub fn determinant(&self) -> Int {
        self.system.connection_index
    }
}

/// Everything the grading `ht_σ` determines on the affine root system.
#[derive(Clone, Debug)]
pub struct GradedData {
    pub spec: InvolutionSpec,
    pub roots: Arc<AffineRootSystem>,
    /// `Δ̂_0^+`, sorted by height.
    pub delta0_pos: Vec<AffineRoot>,
    /// Nodes with `s_i = 0`.
    pub pi0: Vec<usize>,
    /// Positive real roots of grade one, sorted by height.
    pub delta1: Vec<AffineRoot>,
    pub components: Vec<Component>,
    /// `α_i + ε_i s_i δ` for every node, then `kδ − θ_Σ` for every component.
    pub phi_sigma: Vec<AffineRoot>,
    pub epsilons: Vec<Int>,
    pub w_sigma_order: u128,
    pub ell_sigma: Int,
}

pub fn graded_data(spec: &InvolutionSpec) -> Result<GradedData> {
    graded_data_with(spec, Arc::new(build_affine_default(spec.affine)?))
}

/// Builds the graded data over an existing root window for `spec.affine`.
pub fn graded_data_with(spec: &InvolutionSpec, roots: Arc<AffineRootSystem>) -> Result<GradedData> {
    ensure!(roots.kind == spec.affine, "window built for {} used with {spec}", roots.kind);
    let nodes = roots.nodes();
    let k = spec.k();
    let base = spec.base();

    let pi0: Vec<usize> = (0..nodes).filter(|&i| spec.s[i] == 0).collect();
    let components = components_of(&roots, &pi0)?;

    let delta0_pos: Vec<AffineRoot> =
        roots.positive_real_roots().iter().filter(|r| spec.ht(r) == 0).cloned().collect();
    let mut from_components: Vec<AffineRoot> = components.iter().flat_map(|c| c.roots.iter().cloned()).collect();
    from_components.sort();
    let mut sorted0 = delta0_pos.clone();
    sorted0.sort();
    ensure!(sorted0 == from_components, "{spec}: grade-zero roots differ from the component root systems");
    if spec.s[0] != 0 {
        for r in &delta0_pos {
            ensure!(r.coords()[0] == 0, "{spec}: grade-zero root {r} has nonzero δ-coefficient");
        }
    }

    let delta1: Vec<AffineRoot> =
        roots.positive_real_roots().iter().filter(|r| spec.ht(r) == 1).cloned().collect();
    // dim g = dim g_0 + dim g_1, with rank(g) − n zero weights in g_1
    let expected = base.dimension() as i64 - base.rank() as i64 - 2 * delta0_pos.len() as i64;
    ensure!(
        delta1.len() as i64 == expected,
        "{spec}: window holds {} grade-one roots, dimension count says {expected}",
        delta1.len()
    );
    let set1: HashSet<&AffineRoot> = delta1.iter().collect();
    for &i in &pi0 {
        for r in &delta1 {
            ensure!(set1.contains(&roots.reflect(i, r)), "{spec}: grade-one roots not stable under s_{i}");
        }
    }

    let epsilons: Vec<Int> = (0..nodes).map(|i| if k == 2 && roots.is_long_simple(i) { 2 } else { 1 }).collect();
    let delta = roots.delta();
    let mut phi_sigma: Vec<AffineRoot> =
        (0..nodes).map(|i| roots.simple(i).add(&delta.scale(epsilons[i] * spec.s[i]))).collect();
    phi_sigma.extend(components.iter().map(|c| delta.scale(k).sub(&c.highest)));
    for a in &phi_sigma {
        ensure!(roots.is_real_root(a)? && a.is_positive(), "{spec}: {a} in Φ_σ is not a positive root");
        ensure!(spec.ht(a) != 1, "{spec}: {a} in Φ_σ has grade one");
    }
    let distinct: HashSet<&AffineRoot> = phi_sigma.iter().collect();
    ensure!(distinct.len() == phi_sigma.len(), "{spec}: repeated element in Φ_σ");

    let w_sigma_order = components.iter().map(|c| c.weyl_order()).product();
    let ell_sigma = components.iter().map(|c| c.determinant()).product();
    Ok(GradedData {
        spec: spec.clone(),
        roots,
        delta0_pos,
        pi0,
        delta1,
        components,
        phi_sigma,
        epsilons,
        w_sigma_order,
        ell_sigma,
    })
}

fn components_of(roots: &AffineRootSystem, pi0: &[usize]) -> Result<Vec<Component>> {
    let nodes = roots.nodes();
    let mut seen = vec![false; nodes];
    let mut out = Vec::new();
    for &start in pi0 {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in pi0 {
                if !seen[j] && roots.gram[(i, j)] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        let system = FiniteRootSystem::from_gram(roots.gram.select(&comp, &comp))?;
        let embed = |local: &[Int]| {
            let mut v = vec![0; nodes];
            for (t, &i) in comp.iter().enumerate() {
                v[i] = local[t];
            }
            AffineRoot(v)
        };
        let comp_roots = system.positive_roots.iter().map(|r| embed(r)).collect();
        let highest = embed(&system.highest_root);
        out.push(Component { nodes: comp, system, roots: comp_roots, highest });
    }
    Ok(out)
}

impl GradedData {
    pub fn k(&self) -> Int {
        self.spec.k()
    }

    pub fn ht(&self, v: &AffineRoot) -> Int {
        self.spec.ht(v)
    }

    /// Type of `g_0`, e.g. `A1xC3`, or `B2+T1` when there is a centre.
    pub fn g0_type(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.kind().to_string()).collect();
        let semisimple = parts.join("x");
        match (self.spec.case.is_hermitian(), semisimple.is_empty()) {
            (false, _) => semisimple,
            (true, true) => "T1".to_string(),
            (true, false) => format!("{semisimple}+T1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn fk(s: &str) -> FiniteKind {
        s.parse().unwrap()
    }

    #[test]
    fn a1_has_one_hermitian_class() {
        let classes = classify_involutions(fk("A1")).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].s, vec![1, 1]);
        assert_eq!(classes[0].case, CaseTag::Hermitian);
        assert_eq!(classes[0].q, Some(1));
    }

    #[test]
    fn a2_has_two_classes() {
        let classes = classify_involutions(fk("A2")).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].s, vec![1, 1, 0]);
        assert_eq!(classes[0].k(), 1);
        assert_eq!(classes[1].s, vec![0, 1]);
        assert_eq!(classes[1].k(), 2);
        assert_eq!(classes[1].p, 1);
    }

    #[test]
    fn f4_semisimple_nodes() {
        let classes = classify_involutions(fk("F4")).unwrap();
        let ps: Vec<usize> = classes.iter().map(|c| c.p).collect();
        assert_eq!(ps, vec![1, 4]);
        assert!(classes.iter().all(|c| c.case == CaseTag::SemisimpleK1));
    }

    #[test]
    fn class_counts_by_type() {
        let count = |s: &str| classify_involutions(fk(s)).unwrap().len();
        // A_n: ⌈n/2⌉ hermitian classes plus one (n even) or two (n odd) outer
        assert_eq!(count("A3"), 2 + 2);
        assert_eq!(count("A4"), 2 + 1);
        assert_eq!(count("A5"), 3 + 2);
        // B_n: hermitian q=1 and semisimple p = 2..n
        assert_eq!(count("B4"), 1 + 3);
        // C_n: hermitian q=n and p = 1..⌊n/2⌋
        assert_eq!(count("C4"), 1 + 2);
        // D_4: one hermitian class under triality, p = 2, twisted p = 0, 1
        assert_eq!(count("D4"), 1 + 1 + 2);
        assert_eq!(count("E6"), 1 + 1 + 2);
        assert_eq!(count("E7"), 1 + 2);
        assert_eq!(count("E8"), 2);
        assert_eq!(count("G2"), 1);
    }

    #[test]
    fn validation_rejects_bad_tuples() {
        let a2 = AffineKind::untwisted(fk("A2"));
        assert!(InvolutionSpec::new(a2, vec![2, 0, 0]).is_err());
        assert!(InvolutionSpec::new(a2, vec![1, 0, 0]).is_err());
        assert!(InvolutionSpec::new(a2, vec![1, 1]).is_err());
        let b3 = AffineKind::untwisted(fk("B3"));
        assert!(InvolutionSpec::semisimple(b3, 1).is_err());
        assert!(InvolutionSpec::semisimple(b3, 2).is_ok());
    }

    #[test]
    fn hermitian_is_moved_to_node_zero() {
        let a3 = AffineKind::untwisted(fk("A3"));
        let spec = InvolutionSpec::new(a3, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(spec.s[0], 1);
        assert_eq!(spec.q, Some(2));
        let non_rep = InvolutionSpec::hermitian(fk("A3"), 3).unwrap();
        assert_eq!(non_rep.s, vec![1, 0, 0, 1]);
        assert_eq!(non_rep.canonical_form(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn ht_of_delta_and_simples() {
        for base in FiniteKind::all_up_to(5) {
            for spec in classify_involutions(base).unwrap() {
                let delta = AffineRoot(spec.affine.labels());
                assert_eq!(ht_sigma(&spec, &delta) * spec.k(), 2, "{spec}");
            }
        }
        let g2 = InvolutionSpec::semisimple(AffineKind::untwisted(fk("G2")), 1).unwrap();
        assert_eq!(ht_sigma(&g2, &AffineRoot::simple(3, 1)), 1);
        let a2 = InvolutionSpec::hermitian(fk("A2"), 1).unwrap();
        let theta = AffineRoot(vec![0, 1, 1]);
        assert_eq!(ht_sigma(&a2, &theta), 1);
    }

    #[test]
    fn g2_grading() {
        let spec = InvolutionSpec::semisimple(AffineKind::untwisted(fk("G2")), 1).unwrap();
        let gd = graded_data(&spec).unwrap();
        assert_eq!(gd.pi0, vec![0, 2]);
        assert_eq!(gd.components.len(), 2);
        assert_eq!(gd.g0_type(), "A1xA1");
        assert_eq!(gd.w_sigma_order, 4);
        assert_eq!(gd.delta1.len(), 8);
        let mut phi = gd.phi_sigma.clone();
        phi.sort();
        let mut expected: Vec<AffineRoot> = [[1, 0, 0], [0, 0, 1], [1, 3, 3], [0, 2, 3], [1, 2, 2]]
            .iter()
            .map(|v| AffineRoot(v.to_vec()))
            .collect();
        expected.sort();
        assert_eq!(phi, expected);
    }

    #[test]
    fn f4_p1_grading() {
        let spec = InvolutionSpec::semisimple(AffineKind::untwisted(fk("F4")), 1).unwrap();
        let gd = graded_data(&spec).unwrap();
        assert_eq!(gd.g0_type(), "A1xC3");
        assert!(gd.components[0].nodes.contains(&0));
    }

    #[test]
    fn a2_outer_grading() {
        let affine = AffineKind::new(fk("A2"), 2).unwrap();
        let spec = InvolutionSpec::semisimple(affine, 1).unwrap();
        let gd = graded_data(&spec).unwrap();
        assert_eq!(gd.delta1.len(), 4);
        assert_eq!(gd.pi0, vec![0]);
        assert_eq!(gd.g0_type(), "A1");
    }

    #[test]
    fn e6_twisted_p4_is_c4() {
        let affine = AffineKind::new(fk("E6"), 2).unwrap();
        let gd = graded_data(&InvolutionSpec::semisimple(affine, 4).unwrap()).unwrap();
        assert_eq!(gd.g0_type(), "C4");
        assert_eq!(gd.components[0].kind().family(), Family::C);
    }

    #[test]
    fn every_class_up_to_rank_six_grades() {
        for base in FiniteKind::all_up_to(6) {
            for spec in classify_involutions(base).unwrap() {
                graded_data(&spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            }
        }
    }
}
