//! Reference tables of counts, one row per involution class and diagram
//! index, stored as CSV and regenerated from the closed family formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::involution::InvolutionSpec;
use crate::rootsys::{AffineKind, FiniteKind};

/// The embedded table, columns
/// `affine_type,k,p_or_q,delta_f_type,g0_type,count`.
pub const GOLDEN_CSV: &str = include_str!("../data/golden.csv");

pub const GOLDEN_MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeIndex {
    P(usize),
    Q(usize),
}

impl fmt::Display for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeIndex::P(p) => write!(f, "p={p}"),
            NodeIndex::Q(q) => write!(f, "q={q}"),
        }
    }
}

impl FromStr for NodeIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad node index `{s}`"));
        let (tag, value) = s.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match tag.trim() {
            "p" => Ok(NodeIndex::P(value)),
            "q" => Ok(NodeIndex::Q(value)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub affine: AffineKind,
    pub index: NodeIndex,
    pub delta_f: String,
    /// Type of `g_0`, or of `[g_0, g_0]` for hermitian rows.
    pub g0: String,
    pub count: u128,
}

impl GoldenRow {
    pub fn k(&self) -> u8 {
        self.affine.twist()
    }

    pub fn spec(&self) -> Result<InvolutionSpec> {
        match self.index {
            NodeIndex::P(p) => InvolutionSpec::semisimple(self.affine, p),
            NodeIndex::Q(q) => InvolutionSpec::hermitian(self.affine.base(), q),
        }
    }

    pub fn to_csv_line(&self) -> String {
        format!("{},{},{},{},{},{}", self.affine, self.k(), self.index, self.delta_f, self.g0, self.count)
    }
}

pub fn parse_affine(s: &str) -> Result<AffineKind> {
    let (base, twist) = match s.split_once("^(") {
        Some((b, t)) => {
            let t = t.strip_suffix(')').ok_or_else(|| Error::UnknownType(s.to_string()))?;
            (b, t.parse::<u8>().map_err(|_| Error::UnknownType(s.to_string()))?)
        }
        None => (s, 1),
    };
    AffineKind::new(base.parse()?, twist)
}

pub fn parse_csv(text: &str) -> Result<Vec<GoldenRow>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Input("empty table".into()))?;
    if header.trim() != "affine_type,k,p_or_q,delta_f_type,g0_type,count" {
        return Err(Error::Input(format!("unexpected header `{header}`")));
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 6 {
                return Err(Error::Input(format!("bad row `{line}`")));
            }
            let affine = parse_affine(f[0])?;
            if f[1] != affine.twist().to_string() {
                return Err(Error::Input(format!("twist column disagrees in `{line}`")));
            }
            Ok(GoldenRow {
                affine,
                index: f[2].parse()?,
                delta_f: f[3].to_string(),
                g0: f[4].to_string(),
                count: f[5].parse().map_err(|_| Error::Input(format!("bad count in `{line}`")))?,
            })
        })
        .collect()
}

pub fn golden_rows() -> Vec<GoldenRow> {
    parse_csv(GOLDEN_CSV).expect("embedded table parses")
}

pub fn to_csv(rows: &[GoldenRow]) -> String {
    let mut out = String::from("affine_type,k,p_or_q,delta_f_type,g0_type,count\n");
    for r in rows {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn kind(family: char, rank: usize) -> FiniteKind {
    format!("{family}{rank}").parse().expect("valid type")
}

fn ty(family: char, rank: usize) -> String {
    format!("{family}{rank}")
}

/// `X_a x Y_b`, leaving out rank-zero factors.
fn product(parts: &[(char, usize)]) -> String {
    let parts: Vec<String> = parts.iter().filter(|(_, r)| *r > 0).map(|&(f, r)| ty(f, r)).collect();
    parts.join("x")
}

/// All rows with base rank at most `max_rank`, from the family formulas.
pub fn generate(max_rank: usize) -> Vec<GoldenRow> {
    let mut rows = Vec::new();
    let mut push = |affine: AffineKind, index: NodeIndex, delta_f: String, g0: String, count: u128| {
        rows.push(GoldenRow { affine, index, delta_f, g0, count });
    };
    let untw = |f: char, n: usize| AffineKind::untwisted(kind(f, n));
    let tw = |f: char, n: usize| AffineKind::new(kind(f, n), 2).expect("twisted type");
    let r = max_rank;

    // k = 1, a_p = 2
    for n in 2..=r {
        for p in 2..n {
            let g0 = product(&[('D', p), ('B', n - p)]);
            push(untw('B', n), NodeIndex::P(p), ty('B', n), g0, 4 * binom(n, p) - 1);
        }
        push(untw('B', n), NodeIndex::P(n), ty('B', n), ty('D', n), 2);
    }
    for n in 2..=r {
        for p in 1..n {
            push(untw('C', n), NodeIndex::P(p), ty('C', n), product(&[('C', p), ('C', n - p)]), binom(n, p));
        }
    }
    for n in 4..=r {
        for p in 2..=n - 2 {
            let g0 = product(&[('D', p), ('D', n - p)]);
            push(untw('D', n), NodeIndex::P(p), ty('D', n), g0, 4 * binom(n, p) - 1);
        }
    }
    let exceptional: [(char, usize, &[usize], &str, u128); 8] = [
        ('G', 2, &[1], "A1xA1", 5),
        ('F', 4, &[1], "A1xC3", 23),
        ('F', 4, &[4], "B4", 3),
        ('E', 6, &[2, 4, 6], "A1xA5", 71),
        ('E', 7, &[1, 5], "A1xD6", 125),
        ('E', 7, &[7], "A7", 143),
        ('E', 8, &[1], "A1xE7", 239),
        ('E', 8, &[7], "D8", 269),
    ];
    for (f, n, ps, g0, count) in exceptional {
        if n <= r {
            for &p in ps {
                push(untw(f, n), NodeIndex::P(p), ty(f, n), g0.to_string(), count);
            }
        }
    }

    // k = 2, a_p = 1
    for n in 1..=r / 2 {
        push(tw('A', 2 * n), NodeIndex::P(n), ty('C', n), ty('B', n), (1 << (n + 1)) - 1);
    }
    for n in 2..=r.div_ceil(2) {
        for p in [0, 1] {
            push(tw('A', 2 * n - 1), NodeIndex::P(p), ty('C', n), ty('C', n), 1 << (n - 1));
        }
        push(tw('A', 2 * n - 1), NodeIndex::P(n), ty('C', n), ty('D', n), (1 << (n + 1)) - 1);
    }
    for n in 3..r {
        for p in 1..n {
            let g0 = product(&[('B', p), ('B', n - p)]);
            push(tw('D', n + 1), NodeIndex::P(p), ty('B', n), g0, 4 * binom(n, p) - 1);
        }
        for p in [0, n] {
            push(tw('D', n + 1), NodeIndex::P(p), ty('B', n), ty('B', n), 2);
        }
    }
    if r >= 6 {
        push(tw('E', 6), NodeIndex::P(0), "F4".into(), "F4".into(), 4);
        push(tw('E', 6), NodeIndex::P(4), "F4".into(), "C4".into(), 23);
    }

    // hermitian, s_0 = s_q = 1
    for n in 1..=r {
        for q in 1..=n {
            let g0 = product(&[('A', q - 1), ('A', n - q)]);
            push(untw('A', n), NodeIndex::Q(q), ty('A', n), g0, binom(n + 1, q) + q as u128 * binom(n, q));
        }
    }
    for n in 2..=r {
        push(untw('B', n), NodeIndex::Q(1), ty('B', n), ty('B', n - 1), 4 * n as u128);
    }
    for n in 2..=r {
        push(untw('C', n), NodeIndex::Q(n), ty('C', n), ty('A', n - 1), (1 << (n - 1)) * (n as u128 + 2));
    }
    for n in 4..=r {
        push(untw('D', n), NodeIndex::Q(1), ty('D', n), ty('D', n - 1), 4 * n as u128);
        for q in [n - 1, n] {
            push(untw('D', n), NodeIndex::Q(q), ty('D', n), ty('A', n - 1), (1 << (n - 3)) * (n as u128 + 4));
        }
    }
    if r >= 6 {
        for q in [1, 5] {
            push(untw('E', 6), NodeIndex::Q(q), "E6".into(), "D5".into(), 63);
        }
    }
    if r >= 7 {
        push(untw('E', 7), NodeIndex::Q(6), "E7".into(), "E6".into(), 140);
    }
    rows
}

/// Sorted list of simple factors with low-rank coincidences identified,
/// so that `C2` and `B2`, `D3` and `A3`, `D2` and `A1xA1` compare equal.
/// A `+T1` centre marker is ignored.
pub fn canonical_type(s: &str) -> Vec<String> {
    let semisimple = s.split('+').next().unwrap_or("");
    let mut out = Vec::new();
    for part in semisimple.split('x').map(str::trim).filter(|p| !p.is_empty() && *p != "T1") {
        let (family, rank) = part.split_at(1);
        let rank: usize = match rank.parse() {
            Ok(r) => r,
            Err(_) => {
                out.push(part.to_string());
                continue;
            }
        };
        match (family, rank) {
            (_, 0) => {}
            ("B" | "C", 1) => out.push("A1".into()),
            ("C", 2) => out.push("B2".into()),
            ("D", 2) => out.extend(["A1".to_string(), "A1".to_string()]),
            ("D", 3) => out.push("A3".into()),
            _ => out.push(part.to_string()),
        }
    }
    out.sort();
    out
}

pub fn same_type(a: &str, b: &str) -> bool {
    canonical_type(a) == canonical_type(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_matches_generator() {
        assert_eq!(GOLDEN_CSV, to_csv(&generate(GOLDEN_MAX_RANK)));
        assert_eq!(golden_rows(), generate(GOLDEN_MAX_RANK));
    }

    #[test]
    fn rows_build_specs() {
        for row in golden_rows() {
            let spec = row.spec().unwrap_or_else(|e| panic!("{}: {e}", row.to_csv_line()));
            assert_eq!(spec.affine, row.affine);
        }
    }

    #[test]
    fn canonical_types() {
        assert!(same_type("C2xB2", "B2xB2"));
        assert!(same_type("D3", "A3"));
        assert!(same_type("D2", "A1xA1"));
        assert!(same_type("A0xA4", "A4+T1"));
        assert!(same_type("B1", "C1"));
        assert!(!same_type("B3", "C3"));
        assert_eq!(canonical_type("T1"), Vec::<String>::new());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_csv("nonsense\n").is_err());
        assert!(parse_affine("Z9^(1)").is_err());
        assert!("x=1".parse::<NodeIndex>().is_err());
        assert_eq!(parse_affine("A4^(2)").unwrap().to_string(), "A4^(2)");
    }

    #[test]
    fn sample_rows() {
        let rows = generate(8);
        let find = |a: &str, idx: NodeIndex| rows.iter().find(|r| r.affine.to_string() == a && r.index == idx).unwrap().count;
        assert_eq!(find("B3^(1)", NodeIndex::P(2)), 11);
        assert_eq!(find("A3^(1)", NodeIndex::Q(2)), 12);
        assert_eq!(find("C3^(1)", NodeIndex::Q(3)), 20);
        assert_eq!(find("D4^(2)", NodeIndex::P(0)), 2);
        assert_eq!(find("E8^(1)", NodeIndex::P(7)), 269);
    }
}
