//! Finite and affine root systems in integer coordinates over the simple
//! roots.
//!
//! Diagrams are numbered as in Kac's tables Aff 1 and Aff 2. For the
//! classical families and F4 this agrees with Bourbaki; G2 has `α1` long,
//! and the E-series number the long arm consecutively from `α1` with the
//! short arm last.
//!
//! Every diagram is described by the Gram matrix of its simple roots under
//! an invariant form scaled to integers. Only length ratios are ever
//! consumed, so the scale is irrelevant; [`AffineRootSystem::sq_len`]
//! reports lengths rescaled so that long real roots have squared length 2.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::{Int, IntMatrix, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Type `X_N` of a finite-dimensional simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteKind {
    family: Family,
    rank: usize,
}

impl FiniteKind {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(FiniteKind { family, rank })
        } else {
            Err(Error::InvalidRank { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// All valid kinds of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<FiniteKind> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Ok(k) = FiniteKind::new(family, rank) {
                    out.push(k);
                }
            }
        }
        out
    }

    pub fn exceptional() -> Vec<FiniteKind> {
        [(Family::G, 2), (Family::F, 4), (Family::E, 6), (Family::E, 7), (Family::E, 8)]
            .into_iter()
            .map(|(f, r)| FiniteKind { family: f, rank: r })
            .collect()
    }

    pub fn weyl_order(self) -> u128 {
        let r = self.rank as u32;
        let fact = |m: u32| (1..=m as u128).product::<u128>();
        match (self.family, self.rank) {
            (Family::A, _) => fact(r + 1),
            (Family::B | Family::C, _) => (1u128 << r) * fact(r),
            (Family::D, _) => (1u128 << (r - 1)) * fact(r),
            (Family::E, 6) => 51_840,
            (Family::E, 7) => 2_903_040,
            (Family::E, _) => 696_729_600,
            (Family::F, _) => 1_152,
            (Family::G, _) => 12,
        }
    }

    pub fn positive_root_count(self) -> usize {
        let r = self.rank;
        match (self.family, r) {
            (Family::A, _) => r * (r + 1) / 2,
            (Family::B | Family::C, _) => r * r,
            (Family::D, _) => r * (r - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }

    /// Dimension of the simple Lie algebra.
    pub fn dimension(self) -> usize {
        2 * self.positive_root_count() + self.rank
    }

    /// Gram matrix of the simple roots, scaled to integers.
    pub fn gram(self) -> IntMatrix {
        let n = self.rank;
        let mut g = IntMatrix::zeros(n, n);
        let bond = |g: &mut IntMatrix, i: usize, j: usize, v: Int| {
            g[(i, j)] = v;
            g[(j, i)] = v;
        };
        match self.family {
            Family::A | Family::D | Family::E => {
                for i in 0..n {
                    g[(i, i)] = 2;
                }
                let (chain, branch) = match (self.family, n) {
                    (Family::A, _) => (n, None),
                    // α_n hangs off α_{n-2}
                    (Family::D, _) => (n - 1, Some((n - 3, n - 1))),
                    // Kac numbering of E6, E7, E8
                    (_, 6) => (5, Some((2, 5))),
                    (_, 7) => (6, Some((2, 6))),
                    _ => (7, Some((4, 7))),
                };
                for i in 1..chain {
                    bond(&mut g, i - 1, i, -1);
                }
                if let Some((a, b)) = branch {
                    bond(&mut g, a, b, -1);
                }
            }
            Family::B => {
                for i in 0..n {
                    g[(i, i)] = if i + 1 == n { 1 } else { 2 };
                }
                for i in 1..n {
                    bond(&mut g, i - 1, i, -1);
                }
            }
            Family::C => {
                for i in 0..n {
                    g[(i, i)] = if i + 1 == n { 4 } else { 2 };
                }
                for i in 1..n {
                    bond(&mut g, i - 1, i, if i + 1 == n { -2 } else { -1 });
                }
            }
            Family::F => {
                for (i, l) in [4, 4, 2, 2].into_iter().enumerate() {
                    g[(i, i)] = l;
                }
                bond(&mut g, 0, 1, -2);
                bond(&mut g, 1, 2, -2);
                bond(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[(0, 0)] = 6;
                g[(1, 1)] = 2;
                bond(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

impl fmt::Display for FiniteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for FiniteKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        FiniteKind::new(family, rank)
    }
}

/// Affine diagram `X_N^(k)` with `k ∈ {1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineKind {
    base: FiniteKind,
    twist: u8,
}

impl AffineKind {
    pub fn new(base: FiniteKind, twist: u8) -> Result<Self> {
        let ok = match twist {
            1 => true,
            2 => matches!(
                (base.family, base.rank),
                (Family::A, 2..) | (Family::D, _) | (Family::E, 6)
            ),
            _ => false,
        };
        if ok {
            Ok(AffineKind { base, twist })
        } else {
            Err(Error::UnsupportedAffine(format!("{base}^({twist})")))
        }
    }

    pub fn untwisted(base: FiniteKind) -> Self {
        AffineKind { base, twist: 1 }
    }

    pub fn base(self) -> FiniteKind {
        self.base
    }

    pub fn twist(self) -> u8 {
        self.twist
    }

    /// Whether this is `A_{2n}^(2)`, the only diagram with three root lengths.
    pub fn is_a2n_twisted(self) -> bool {
        self.twist == 2 && self.base.family == Family::A && self.base.rank.is_multiple_of(2)
    }

    /// Number of nodes `n + 1`.
    pub fn nodes(self) -> usize {
        if self.twist == 1 {
            return self.base.rank + 1;
        }
        match self.base.family {
            Family::A => self.base.rank.div_ceil(2) + 1,
            Family::D => self.base.rank,
            _ => 5,
        }
    }

    /// Type of the finite part on `α_1, …, α_n`.
    pub fn finite_type(self) -> Result<FiniteKind> {
        let gram = self.gram();
        let rest: Vec<usize> = (1..gram.rows()).collect();
        identify(&gram.select(&rest, &rest))
    }

    /// Labels `a_0, …, a_n` of the diagram.
    pub fn labels(self) -> Vec<Int> {
        null_labels(&self.gram()).expect("affine Gram matrices have a positive null vector")
    }

    /// Gram matrix of `α_0, …, α_n` scaled to integers.
    pub fn gram(self) -> IntMatrix {
        if self.twist == 1 {
            return untwisted_gram(self.base);
        }
        let nn = self.nodes();
        let n = nn - 1;
        let mut g = IntMatrix::zeros(nn, nn);
        let bond = |g: &mut IntMatrix, i: usize, j: usize, v: Int| {
            g[(i, j)] = v;
            g[(j, i)] = v;
        };
        match self.base.family {
            Family::A if self.base.rank.is_multiple_of(2) => {
                // A_{2n}^(2): α_0 shortest, α_n longest, labels (2, …, 2, 1)
                if n == 1 {
                    g[(0, 0)] = 1;
                    g[(1, 1)] = 4;
                    bond(&mut g, 0, 1, -2);
                } else {
                    g[(0, 0)] = 1;
                    for i in 1..n {
                        g[(i, i)] = 2;
                    }
                    g[(n, n)] = 4;
                    for i in 1..n {
                        bond(&mut g, i - 1, i, -1);
                    }
                    bond(&mut g, n - 1, n, -2);
                }
            }
            Family::A => {
                // A_{2n-1}^(2): α_0 and α_1 both meet α_2; α_n long
                for i in 0..n {
                    g[(i, i)] = 2;
                }
                g[(n, n)] = 4;
                let v = if n == 2 { -2 } else { -1 };
                bond(&mut g, 0, 2, v);
                bond(&mut g, 1, 2, v);
                for i in 3..=n {
                    bond(&mut g, i - 1, i, if i == n { -2 } else { -1 });
                }
            }
            Family::D => {
                // D_{n+1}^(2): α_0, α_n short ends of a long chain
                g[(0, 0)] = 2;
                g[(n, n)] = 2;
                for i in 1..n {
                    g[(i, i)] = 4;
                }
                for i in 1..=n {
                    bond(&mut g, i - 1, i, -2);
                }
            }
            _ => {
                // E_6^(2)
                for (i, l) in [2, 2, 2, 4, 4].into_iter().enumerate() {
                    g[(i, i)] = l;
                }
                bond(&mut g, 0, 1, -1);
                bond(&mut g, 1, 2, -1);
                bond(&mut g, 2, 3, -2);
                bond(&mut g, 3, 4, -2);
            }
        }
        g
    }
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.base, self.twist)
    }
}

/// Gram matrix of the untwisted affine diagram, with `α_0 = δ − θ`.
fn untwisted_gram(base: FiniteKind) -> IntMatrix {
    let fin = base.gram();
    let theta = highest_root(&closure_positive(&fin));
    let n = base.rank;
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    let form = |u: &[Int], v: &[Int]| dot_form(&fin, u, v);
    g[(0, 0)] = form(&theta, &theta);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let v = -form(&theta, &e);
        g[(0, j + 1)] = v;
        g[(j + 1, 0)] = v;
        for i in 0..n {
            g[(i + 1, j + 1)] = fin[(i, j)];
        }
    }
    g
}

fn dot_form(gram: &IntMatrix, u: &[Int], v: &[Int]) -> Int {
    let gv = gram.mul_vec(v);
    u.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

/// Cartan matrix `A[i][j] = ⟨α_i∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)`.
pub fn cartan_from_gram(gram: &IntMatrix) -> IntMatrix {
    let n = gram.rows();
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let num = 2 * gram[(i, j)];
            assert!(num % gram[(i, i)] == 0, "Gram matrix is not crystallographic");
            a[(i, j)] = num / gram[(i, i)];
        }
    }
    a
}

/// Positive roots of a finite-type Gram matrix by reflection closure from the
/// simple roots, sorted by height then coordinates.
fn closure_positive(gram: &IntMatrix) -> Vec<Vec<Int>> {
    let n = gram.rows();
    let cartan = cartan_from_gram(gram);
    let mut seen: HashSet<Vec<Int>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let c: Int = (0..n).map(|j| cartan[(i, j)] * r[j]).sum();
            if c < 0 {
                let mut s = r.clone();
                s[i] -= c;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<Int>(), r.clone()));
    out
}

fn highest_root(positive: &[Vec<Int>]) -> Vec<Int> {
    positive
        .iter()
        .max_by_key(|r| r.iter().sum::<Int>())
        .cloned()
        .unwrap_or_default()
}

fn connected(gram: &IntMatrix) -> bool {
    let n = gram.rows();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && gram[(i, j)] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Identifies the type of a connected finite-type Gram matrix.
pub fn identify(gram: &IntMatrix) -> Result<FiniteKind> {
    let n = gram.rows();
    ensure!(connected(gram), "diagram is not connected");
    let lens: Vec<Int> = (0..n).map(|i| gram[(i, i)]).collect();
    let max = *lens.iter().max().unwrap();
    let min = *lens.iter().min().unwrap();
    let degree = |i: usize| (0..n).filter(|&j| j != i && gram[(i, j)] != 0).count();
    let family = if n == 1 {
        Family::A
    } else if max == min {
        match (0..n).find(|&i| degree(i) == 3) {
            None => Family::A,
            Some(b) => {
                // arm lengths from the branch node
                let mut arms: Vec<usize> = (0..n)
                    .filter(|&j| j != b && gram[(b, j)] != 0)
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (b, start, 1);
                        loop {
                            let next = (0..n).find(|&k| k != prev && k != cur && gram[(cur, k)] != 0);
                            match next {
                                Some(k) => {
                                    prev = cur;
                                    cur = k;
                                    len += 1;
                                }
                                None => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                if arms[0] == 1 && arms[1] == 1 {
                    Family::D
                } else {
                    Family::E
                }
            }
        }
    } else if max == 3 * min {
        Family::G
    } else {
        let long = lens.iter().filter(|&&l| l == max).count();
        let short = n - long;
        match (long, short) {
            (2, 2) if n == 4 => Family::F,
            // rank 2: B2 has the long root first, C2 last
            (1, 1) if lens[1] == max => Family::C,
            (_, 1) => Family::B,
            (1, _) => Family::C,
            _ => return Err(Error::Invariant(format!("unrecognised diagram {gram:?}"))),
        }
    };
    FiniteKind::new(family, n)
}

/// Finite root system `Δ_f` with its derived invariants.
#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    pub kind: FiniteKind,
    pub gram: IntMatrix,
    pub cartan: IntMatrix,
    pub positive_roots: Vec<Vec<Int>>,
    pub highest_root: Vec<Int>,
    pub weyl_order: u128,
    pub connection_index: Int,
    pub long_simple_count: usize,
    /// `ω_j∨` in coordinates over the simple roots, dual to the simple roots
    /// under the form normalised so long roots have squared length 2.
    pub fundamental_coweights: Vec<Vec<Rational>>,
}

impl FiniteRootSystem {
    /// Builds the system of a connected finite-type Gram matrix.
    pub fn from_gram(gram: IntMatrix) -> Result<Self> {
        let kind = identify(&gram)?;
        let cartan = cartan_from_gram(&gram);
        let positive_roots = closure_positive(&gram);
        ensure!(
            positive_roots.len() == kind.positive_root_count(),
            "{kind}: reflection closure gave {} positive roots",
            positive_roots.len()
        );
        let highest_root = highest_root(&positive_roots);
        let n = gram.rows();
        let max = (0..n).map(|i| gram[(i, i)]).max().unwrap();
        let long_simple_count = (0..n).filter(|&i| gram[(i, i)] == max).count();
        let normalized: RatMatrix = gram.map(|&x| Rational::new(2 * x, max));
        let inv = normalized
            .inverse()
            .ok_or_else(|| Error::Invariant(format!("{kind}: singular Gram matrix")))?;
        let fundamental_coweights = (0..n).map(|i| inv.row(i).to_vec()).collect();
        Ok(FiniteRootSystem {
            kind,
            connection_index: cartan.determinant().abs(),
            cartan,
            gram,
            weyl_order: kind.weyl_order(),
            positive_roots,
            highest_root,
            long_simple_count,
            fundamental_coweights,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Normalised form `(u, v)` with long roots of squared length 2.
    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let n = self.rank();
        let max = (0..n).map(|i| self.gram[(i, i)]).max().unwrap();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += u[i] * v[j] * Rational::new(2 * self.gram[(i, j)], max);
            }
        }
        acc
    }
}

pub fn build_finite(kind: FiniteKind) -> Result<FiniteRootSystem> {
    let frs = FiniteRootSystem::from_gram(kind.gram())?;
    ensure!(frs.kind == kind, "built {} while asking for {kind}", frs.kind);
    Ok(frs)
}

/// An integer vector over `α_0, …, α_n`. Used for roots and for arbitrary
/// elements of the root lattice such as `δ` or sums of roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffineRoot(pub Vec<Int>);

impl AffineRoot {
    pub fn simple(nodes: usize, i: usize) -> Self {
        let mut v = vec![0; nodes];
        v[i] = 1;
        AffineRoot(v)
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn add(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &AffineRoot) -> AffineRoot {
        AffineRoot(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: Int) -> AffineRoot {
        AffineRoot(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> AffineRoot {
        self.scale(-1)
    }

    /// Adds `c · α_i` in place.
    pub fn add_simple(&mut self, i: usize, c: Int) {
        self.0[i] += c;
    }
}

impl fmt::Debug for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootClass {
    PositiveReal,
    NegativeReal,
    Imaginary,
    NotARoot,
}

/// Affine root system with a bounded window of real roots.
#[derive(Clone, Debug)]
pub struct AffineRootSystem {
    pub kind: AffineKind,
    pub gram: IntMatrix,
    pub cartan: IntMatrix,
    pub labels: Vec<Int>,
    /// Bound `B` on `|δ-coefficient|` of the generated real roots.
    pub window: Int,
    positive_real: Vec<AffineRoot>,
    real: HashSet<AffineRoot>,
    max_len: Int,
}

pub const DEFAULT_WINDOW_PER_TWIST: Int = 3;

pub fn build_affine(kind: AffineKind, window: Int) -> Result<AffineRootSystem> {
    let k = kind.twist as Int;
    if window < DEFAULT_WINDOW_PER_TWIST * k {
        return Err(Error::Input(format!("window {window} below 3k = {}", 3 * k)));
    }
    let gram = kind.gram();
    ensure!(gram.is_symmetric(), "{kind}: Gram matrix not symmetric");
    let cartan = cartan_from_gram(&gram);
    let labels = null_labels(&gram)?;
    let nodes = gram.rows();
    let max_len = (0..nodes).map(|i| gram[(i, i)]).max().unwrap();

    // Positive real roots, grown by height-increasing reflections. Each
    // coordinate is non-decreasing along such chains, so pruning on the
    // α_0-coefficient loses nothing below the bound.
    let c0_bound = window * labels[0];
    let mut seen: HashSet<AffineRoot> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..nodes {
        let e = AffineRoot::simple(nodes, i);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..nodes {
            let c: Int = (0..nodes).map(|j| cartan[(i, j)] * r.0[j]).sum();
            if c < 0 {
                let mut s = r.clone();
                s.add_simple(i, -c);
                if s.0[0] <= c0_bound && !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
    }
    let mut positive_real: Vec<AffineRoot> = seen.into_iter().collect();
    positive_real.sort_by_key(|r| (r.0.iter().sum::<Int>(), r.clone()));
    let mut real: HashSet<AffineRoot> = HashSet::with_capacity(2 * positive_real.len());
    for r in &positive_real {
        real.insert(r.clone());
        real.insert(r.neg());
    }
    let ars = AffineRootSystem { kind, gram, cartan, labels, window, positive_real, real, max_len };
    ensure!(
        ars.positive_real.iter().all(|r| !ars.is_multiple_of_delta(r)),
        "{kind}: imaginary vector generated as a real root"
    );
    Ok(ars)
}

pub fn build_affine_default(kind: AffineKind) -> Result<AffineRootSystem> {
    build_affine(kind, DEFAULT_WINDOW_PER_TWIST * kind.twist as Int)
}

/// Primitive positive integer null vector of a Gram matrix of affine type.
fn null_labels(gram: &IntMatrix) -> Result<Vec<Int>> {
    let nn = gram.rows();
    let rest: Vec<usize> = (1..nn).collect();
    let fin = gram.select(&rest, &rest).map(|&x| Rational::from_integer(x));
    let inv = fin
        .inverse()
        .ok_or_else(|| Error::Invariant("finite part of affine Gram matrix is singular".into()))?;
    let col: Vec<Rational> = rest.iter().map(|&i| Rational::from_integer(-gram[(i, 0)])).collect();
    let mut v = vec![Rational::from_integer(1)];
    v.extend(inv.mul_vec(&col));
    let denom = v.iter().fold(1, |acc: Int, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rational::from_integer(denom)).to_integer()).collect();
    let g = ints.iter().fold(0, |acc: Int, &x| acc.gcd(&x));
    let labels: Vec<Int> = ints.iter().map(|x| x / g).collect();
    ensure!(labels.iter().all(|&a| a > 0), "labels not positive: {labels:?}");
    ensure!(gram.mul_vec(&labels).iter().all(|&x| x == 0), "labels are not a null vector");
    Ok(labels)
}

impl AffineRootSystem {
    pub fn nodes(&self) -> usize {
        self.gram.rows()
    }

    /// Rank `n` of the finite part.
    pub fn rank(&self) -> usize {
        self.nodes() - 1
    }

    pub fn twist(&self) -> Int {
        self.kind.twist as Int
    }

    pub fn delta(&self) -> AffineRoot {
        AffineRoot(self.labels.clone())
    }

    pub fn simple(&self, i: usize) -> AffineRoot {
        AffineRoot::simple(self.nodes(), i)
    }

    /// `m` in `v = β + mδ` with `β` supported on `α_1, …, α_n`.
    pub fn delta_coeff(&self, v: &AffineRoot) -> Rational {
        Rational::new(v.0[0], self.labels[0])
    }

    pub fn in_window(&self, v: &AffineRoot) -> bool {
        v.0[0].abs() <= self.window * self.labels[0]
    }

    /// `⟨α_i∨, v⟩`.
    pub fn pairing(&self, i: usize, v: &AffineRoot) -> Int {
        self.cartan.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    pub fn reflect(&self, i: usize, v: &AffineRoot) -> AffineRoot {
        let mut out = v.clone();
        out.add_simple(i, -self.pairing(i, v));
        out
    }

    /// Invariant form in the integer scale of [`Self::gram`].
    pub fn form(&self, u: &AffineRoot, v: &AffineRoot) -> Int {
        dot_form(&self.gram, &u.0, &v.0)
    }

    /// Squared length normalised so that long real roots have length 2.
    pub fn sq_len(&self, v: &AffineRoot) -> Rational {
        Rational::new(2 * self.form(v, v), self.max_len)
    }

    pub fn is_long(&self, v: &AffineRoot) -> bool {
        self.form(v, v) == self.max_len
    }

    pub fn is_long_simple(&self, i: usize) -> bool {
        self.gram[(i, i)] == self.max_len
    }

    /// Symmetrizer `d_i` with `d_i · A[i][j]` symmetric, normalised as
    /// [`Self::sq_len`].
    pub fn symmetrizer(&self) -> Vec<Rational> {
        (0..self.nodes()).map(|i| Rational::new(self.gram[(i, i)], self.max_len)).collect()
    }

    pub fn is_multiple_of_delta(&self, v: &AffineRoot) -> bool {
        let m = Rational::new(v.0[0], self.labels[0]);
        m.is_integer() && v.0.iter().zip(&self.labels).all(|(c, a)| Rational::from_integer(*c) == m * Rational::from_integer(*a))
    }

    pub fn positive_real_roots(&self) -> &[AffineRoot] {
        &self.positive_real
    }

    pub fn is_real_root(&self, v: &AffineRoot) -> Result<bool> {
        if !self.in_window(v) {
            return Err(Error::OutOfWindow(v.0.clone()));
        }
        Ok(self.real.contains(v))
    }

    pub fn is_root(&self, v: &AffineRoot) -> Result<RootClass> {
        if v.len() != self.nodes() {
            return Err(Error::Input(format!("vector {v} has wrong length for {}", self.kind)));
        }
        if !self.in_window(v) {
            return Err(Error::OutOfWindow(v.0.clone()));
        }
        if v.is_zero() {
            return Ok(RootClass::NotARoot);
        }
        if self.is_multiple_of_delta(v) {
            return Ok(RootClass::Imaginary);
        }
        Ok(match self.real.contains(v) {
            false => RootClass::NotARoot,
            true if v.is_positive() => RootClass::PositiveReal,
            true => RootClass::NegativeReal,
        })
    }

    /// Whether `v` is a (real or imaginary) root.
    pub fn is_any_root(&self, v: &AffineRoot) -> Result<bool> {
        Ok(self.is_root(v)? != RootClass::NotARoot)
    }

    /// Whether `v` is a positive root (real or imaginary) or zero.
    pub fn is_positive_root_or_zero(&self, v: &AffineRoot) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        Ok(matches!(self.is_root(v)?, RootClass::PositiveReal)
            || (self.is_multiple_of_delta(v) && v.is_positive()))
    }

    /// Distinct squared lengths of the generated real roots.
    pub fn real_lengths(&self) -> Vec<Rational> {
        let mut lens: Vec<Rational> = self.positive_real.iter().map(|r| self.sq_len(r)).collect();
        lens.sort();
        lens.dedup();
        lens
    }

    /// `Δ_f`: the finite system on `α_1, …, α_n`.
    pub fn finite_part(&self) -> Result<FiniteRootSystem> {
        let rest: Vec<usize> = (1..self.nodes()).collect();
        FiniteRootSystem::from_gram(self.gram.select(&rest, &rest))
    }

    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        diagram_automorphisms(&self.gram)
    }
}

/// Diagram automorphisms: permutations `π` of the nodes with
/// `G[π(i)][π(j)] = G[i][j]`. Found by backtracking; sorted, so the identity
/// comes first.
pub fn diagram_automorphisms(gram: &IntMatrix) -> Vec<Vec<usize>> {
    fn extend(gram: &IntMatrix, i: usize, perm: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = gram.rows();
        if i == n {
            out.push(perm.to_vec());
            return;
        }
        for t in 0..n {
            if used[t] || gram[(i, i)] != gram[(t, t)] {
                continue;
            }
            if (0..i).all(|j| gram[(i, j)] == gram[(t, perm[j])]) {
                perm[i] = t;
                used[t] = true;
                extend(gram, i + 1, perm, used, out);
                used[t] = false;
            }
        }
    }
    let n = gram.rows();
    let mut out = Vec::new();
    extend(gram, 0, &mut vec![usize::MAX; n], &mut vec![false; n], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fk(s: &str) -> FiniteKind {
        s.parse().unwrap()
    }

    fn aff(s: &str, k: u8) -> AffineRootSystem {
        build_affine_default(AffineKind::new(fk(s), k).unwrap()).unwrap()
    }

    #[test]
    fn rank_validation() {
        assert!(FiniteKind::new(Family::D, 3).is_err());
        assert!(FiniteKind::new(Family::E, 9).is_err());
        assert!(FiniteKind::new(Family::B, 1).is_err());
        assert!("Z9".parse::<FiniteKind>().is_err());
        assert!("G3".parse::<FiniteKind>().is_err());
        assert_eq!(fk("e7").to_string(), "E7");
        assert!(AffineKind::new(fk("A1"), 2).is_err());
        assert!(AffineKind::new(fk("B3"), 2).is_err());
        assert!(AffineKind::new(fk("D4"), 3).is_err());
    }

    #[test]
    fn finite_examples() {
        let a2 = build_finite(fk("A2")).unwrap();
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.highest_root, vec![1, 1]);
        assert_eq!(a2.weyl_order, 6);
        assert_eq!(a2.connection_index, 3);

        let g2 = build_finite(fk("G2")).unwrap();
        assert_eq!(g2.positive_roots.len(), 6);
        assert_eq!(g2.weyl_order, 12);
        assert_eq!(g2.connection_index, 1);
        assert_eq!(g2.long_simple_count, 1);
        assert_eq!(g2.highest_root, vec![2, 3]);

        let f4 = build_finite(fk("F4")).unwrap();
        assert_eq!(f4.positive_roots.len(), 24);
        assert_eq!(f4.weyl_order, 1152);
        assert_eq!(f4.connection_index, 1);
        assert_eq!(f4.long_simple_count, 2);
    }

    #[test]
    fn connection_indices() {
        let cases = [
            ("A1", 2), ("A5", 6), ("B3", 2), ("C4", 2), ("D5", 4), ("D6", 4),
            ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1),
        ];
        for (s, l) in cases {
            let frs = build_finite(fk(s)).unwrap();
            assert_eq!(frs.connection_index, l, "{s}");
        }
    }

    #[test]
    fn coweights_are_dual() {
        for s in ["B3", "C3", "G2", "F4", "E6"] {
            let frs = build_finite(fk(s)).unwrap();
            let n = frs.rank();
            for i in 0..n {
                for j in 0..n {
                    let mut e = vec![Rational::zero(); n];
                    e[j] = Rational::from_integer(1);
                    let pair = frs.form(&frs.fundamental_coweights[i], &e);
                    let expect = if i == j { Rational::from_integer(1) } else { Rational::zero() };
                    assert_eq!(pair, expect, "{s} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn identify_roundtrip() {
        for k in FiniteKind::all_up_to(8) {
            assert_eq!(identify(&k.gram()).unwrap(), k);
        }
    }

    #[test]
    fn affine_labels() {
        assert_eq!(aff("A1", 1).labels, vec![1, 1]);
        assert_eq!(aff("G2", 1).labels, vec![1, 2, 3]);
        assert_eq!(aff("F4", 1).labels, vec![1, 2, 3, 4, 2]);
        assert_eq!(aff("E6", 1).labels, vec![1, 1, 2, 3, 2, 1, 2]);
        assert_eq!(aff("E7", 1).labels, vec![1, 2, 3, 4, 3, 2, 1, 2]);
        assert_eq!(aff("E8", 1).labels, vec![1, 2, 3, 4, 5, 6, 4, 2, 3]);
        assert_eq!(aff("B4", 1).labels, vec![1, 1, 2, 2, 2]);
        assert_eq!(aff("C3", 1).labels, vec![1, 2, 2, 1]);
        assert_eq!(aff("D5", 1).labels, vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(aff("A2", 2).labels, vec![2, 1]);
        assert_eq!(aff("A4", 2).labels, vec![2, 2, 1]);
        assert_eq!(aff("A5", 2).labels, vec![1, 1, 2, 1]);
        assert_eq!(aff("A3", 2).labels, vec![1, 1, 1]);
        assert_eq!(aff("D5", 2).labels, vec![1, 1, 1, 1, 1]);
        assert_eq!(aff("E6", 2).labels, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn twisted_finite_parts() {
        assert_eq!(aff("A4", 2).finite_part().unwrap().kind, fk("C2"));
        assert_eq!(aff("A7", 2).finite_part().unwrap().kind, fk("C4"));
        assert_eq!(aff("D6", 2).finite_part().unwrap().kind, fk("B5"));
        assert_eq!(aff("E6", 2).finite_part().unwrap().kind, fk("F4"));
    }

    #[test]
    fn a1_window_slice() {
        let a1 = aff("A1", 1);
        let zero_slice: Vec<_> = a1
            .positive_real_roots()
            .iter()
            .filter(|r| a1.delta_coeff(r).is_zero())
            .collect();
        assert_eq!(zero_slice, vec![&AffineRoot(vec![0, 1])]);
        // α_0 has δ-coefficient 1 in the split β + mδ
        assert!(a1.positive_real_roots().contains(&AffineRoot(vec![1, 0])));
    }

    #[test]
    fn is_root_examples() {
        let a1 = aff("A1", 1);
        assert_eq!(a1.is_root(&AffineRoot(vec![1, 1])).unwrap(), RootClass::Imaginary);
        assert_eq!(a1.is_root(&AffineRoot(vec![2, 1])).unwrap(), RootClass::PositiveReal);
        assert_eq!(a1.is_root(&AffineRoot(vec![1, -1])).unwrap(), RootClass::NotARoot);
        assert_eq!(a1.is_root(&AffineRoot(vec![-1, -2])).unwrap(), RootClass::NegativeReal);
        assert!(matches!(a1.is_root(&AffineRoot(vec![50, 49])), Err(Error::OutOfWindow(_))));
    }

    #[test]
    fn length_counts() {
        assert_eq!(aff("A4", 2).real_lengths().len(), 3);
        // a single middle length needs n >= 2
        assert_eq!(aff("A2", 2).real_lengths().len(), 2);
        assert_eq!(aff("A5", 2).real_lengths().len(), 2);
        assert_eq!(aff("G2", 1).real_lengths().len(), 2);
        assert_eq!(aff("E6", 1).real_lengths().len(), 1);
        assert_eq!(*aff("C3", 1).real_lengths().last().unwrap(), Rational::from_integer(2));
    }

    #[test]
    fn automorphism_group_orders() {
        let order = |s: &str, k: u8| aff(s, k).diagram_automorphisms().len();
        assert_eq!(order("A1", 1), 2);
        assert_eq!(order("A4", 1), 10);
        assert_eq!(order("B4", 1), 2);
        assert_eq!(order("C3", 1), 2);
        assert_eq!(order("D4", 1), 24);
        assert_eq!(order("D6", 1), 8);
        assert_eq!(order("E6", 1), 6);
        assert_eq!(order("E7", 1), 2);
        assert_eq!(order("E8", 1), 1);
        assert_eq!(order("F4", 1), 1);
        assert_eq!(order("A4", 2), 1);
        assert_eq!(order("A5", 2), 2);
        assert_eq!(order("D5", 2), 2);
        assert_eq!(order("E6", 2), 1);
    }
}
