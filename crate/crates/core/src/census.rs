//! Closed-form counts, coroot lattices, and cross-checked reports.
//!
//! Lattices are written in coordinates over the simple coroots
//! `α_1∨, …, α_n∨` of the finite part, one basis vector per row.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::involution::{classify_involutions, graded_data_with, CaseTag, GradedData, InvolutionSpec};
use crate::oracle::{enumerate_abelian_subalgebras, WeightSubset};
use crate::rootsys::{build_affine_default, AffineKind, AffineRoot, AffineRootSystem, FiniteKind, FiniteRootSystem};
use crate::weyl::enumerate_sigma_minuscule;
use crate::{Int, IntMatrix, RatMatrix, Rational};

/// The translation lattices of the affine Weyl group and of its subgroup
/// attached to a semisimple grading.
#[derive(Clone, Debug)]
pub struct CorootLattices {
    pub m: IntMatrix,
    pub m_sigma: IntMatrix,
    pub q_check: IntMatrix,
}

impl CorootLattices {
    pub fn new(gd: &GradedData, frs: &FiniteRootSystem) -> Result<Self> {
        ensure!(!gd.spec.case.is_hermitian(), "{}: lattices are defined for semisimple gradings", gd.spec);
        let ars = gd.roots.as_ref();
        let n = ars.rank();
        let k = gd.k();
        let max_f = (0..n).map(|i| frs.gram[(i, i)]).max().unwrap();
        let is_long_f = |i: usize| frs.gram[(i - 1, i - 1)] == max_f;

        let q_check = IntMatrix::identity(n);
        let m = if k == 1 || ars.labels[0] == 2 {
            q_check.clone()
        } else {
            diagonal((1..=n).map(|i| if is_long_f(i) { k } else { 1 }))
        };

        let theta = theta_coroot(ars)?;
        let mut rows = Vec::new();
        if ars.kind.is_a2n_twisted() {
            rows.push(theta.iter().map(|b| 4 * b).collect());
            for i in 1..n {
                rows.push(unit(n, i - 1, 2));
            }
        } else {
            for &i in &gd.pi0 {
                if i == 0 {
                    rows.push(theta.iter().map(|b| k * b).collect());
                } else {
                    rows.push(unit(n, i - 1, k));
                }
            }
        }
        ensure!(rows.len() == n, "{}: M_σ has {} generators for rank {n}", gd.spec, rows.len());
        Ok(CorootLattices { m, m_sigma: IntMatrix::from_rows(&rows), q_check })
    }

    pub fn index(&self) -> Result<Int> {
        lattice_index(&self.m, &self.m_sigma)
    }
}

fn unit(n: usize, i: usize, c: Int) -> Vec<Int> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn diagonal<I: IntoIterator<Item = Int>>(d: I) -> IntMatrix {
    let d: Vec<Int> = d.into_iter().collect();
    let n = d.len();
    let rows: Vec<Vec<Int>> = (0..n).map(|i| unit(n, i, d[i])).collect();
    IntMatrix::from_rows(&rows)
}

/// `θ∨` for `θ = δ − a_0 α_0`, over the simple coroots of the finite part.
pub fn theta_coroot(ars: &AffineRootSystem) -> Result<Vec<Int>> {
    let mut theta = ars.labels.clone();
    theta[0] = 0;
    let theta = AffineRoot(theta);
    let tt = ars.form(&theta, &theta);
    (1..ars.nodes())
        .map(|i| {
            let b = Rational::new(ars.labels[i] * ars.gram[(i, i)], tt);
            ensure!(b.is_integer(), "{}: θ∨ is not integral on α_{i}∨", ars.kind);
            Ok(b.to_integer())
        })
        .collect()
}

/// `[outer : inner]` for two full-rank lattices given by basis rows. The
/// determinant ratio is checked against the Smith invariants of `inner`
/// written in the basis of `outer`.
pub fn lattice_index(outer: &IntMatrix, inner: &IntMatrix) -> Result<Int> {
    let d_outer = outer.determinant();
    let d_inner = inner.determinant();
    if d_outer == 0 || d_inner == 0 {
        return Err(Error::Input("singular lattice basis".into()));
    }
    ensure!(d_inner % d_outer == 0, "determinant ratio {d_inner}/{d_outer} is not an integer");
    let index = (d_inner / d_outer).abs();
    let to_rat = |m: &IntMatrix| -> RatMatrix { m.map(|&x| Rational::from_integer(x)) };
    let inv = to_rat(outer).inverse().expect("nonsingular");
    let coords = &to_rat(inner) * &inv;
    ensure!((0..coords.rows()).all(|i| coords.row(i).iter().all(|x| x.is_integer())), "inner lattice is not contained in the outer one");
    let coords = coords.map(|x| x.to_integer());
    let product: Int = coords.smith_invariants().iter().product();
    ensure!(product == index, "Smith invariants give {product}, determinants give {index}");
    Ok(index)
}

/// Walls of `D_σ` and, for semisimple gradings, of `P_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDescription {
    pub d_walls: Vec<AffineRoot>,
    pub p_walls: Vec<AffineRoot>,
    /// Whether `α_p` is long, so that `P_σ` has one alcove more than `D_σ`.
    pub correction: Option<bool>,
}

pub fn polytope_description(gd: &GradedData) -> Result<PolytopeDescription> {
    let d_walls = gd.phi_sigma.clone();
    if gd.spec.case.is_hermitian() {
        return Ok(PolytopeDescription { d_walls, p_walls: Vec::new(), correction: None });
    }
    let p = gd.spec.p;
    let extra = gd.roots.simple(p).add(&gd.roots.delta().scale(gd.epsilons[p] * gd.spec.s[p]));
    let p_walls: Vec<AffineRoot> = d_walls.iter().filter(|a| **a != extra).cloned().collect();
    ensure!(p_walls.len() + 1 == d_walls.len(), "{}: expected exactly one wall outside P_σ", gd.spec);
    Ok(PolytopeDescription { d_walls, p_walls, correction: Some(gd.roots.is_long_simple(p)) })
}

/// The quantities entering the closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ingredients {
    pub a0: Int,
    pub k: Int,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub chi_long: Option<Int>,
    pub weyl_f: u128,
    pub weyl_sigma: u128,
    pub ell_f: Int,
    pub ell_sigma: Int,
    pub lattice_index: Option<Int>,
}

impl Ingredients {
    /// `[W_f : W_σ]`.
    pub fn weyl_index(&self) -> u128 {
        self.weyl_f / self.weyl_sigma
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCount {
    pub count: u128,
    pub ingredients: Ingredients,
}

/// Count of abelian `b_0`-stable subalgebras from group orders and
/// connection indices.
pub fn closed_form_count(gd: &GradedData, frs: &FiniteRootSystem) -> Result<FormulaCount> {
    let ars = gd.roots.as_ref();
    let n = ars.rank();
    ensure!(frs.rank() == n, "finite part has rank {} for {}", frs.rank(), gd.spec);
    let weyl_f = frs.weyl_order;
    let weyl_sigma = gd.w_sigma_order;
    ensure!(weyl_f.is_multiple_of(weyl_sigma), "{}: |W_σ| = {weyl_sigma} does not divide |W_f| = {weyl_f}", gd.spec);
    let weyl_index = weyl_f / weyl_sigma;
    let mut ing = Ingredients {
        a0: ars.labels[0],
        k: gd.k(),
        n,
        l: frs.long_simple_count,
        chi_long: None,
        weyl_f,
        weyl_sigma,
        ell_f: frs.connection_index,
        ell_sigma: gd.ell_sigma,
        lattice_index: None,
    };
    let count = if gd.spec.case.is_hermitian() {
        // |W_f|/|W_σ| · (1 + ℓ_σ/ℓ_f), both summands integral
        let second = Rational::from_integer(weyl_index as Int) * Rational::new(ing.ell_sigma, ing.ell_f);
        ensure!(second.is_integer(), "{}: hermitian count {second} is not integral", gd.spec);
        weyl_index + second.to_integer() as u128
    } else {
        let chi = Int::from(ars.is_long_simple(gd.spec.p));
        ing.chi_long = Some(chi);
        let index = CorootLattices::new(gd, frs)?.index()?;
        ing.lattice_index = Some(index);
        let k_pow = ing.k.pow((n - ing.l) as u32);
        let expected = ing.a0 * (chi + 1) * k_pow;
        ensure!(index == expected, "{}: [M:M_σ] = {index}, a_0(χ+1)k^(n−L) = {expected}", gd.spec);
        (index as u128) * weyl_index - chi as u128
    };
    ensure!(count >= 1, "{}: closed form gave {count}", gd.spec);
    Ok(FormulaCount { count, ingredients: ing })
}

/// Which counting methods a report runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Methods {
    pub minuscule: bool,
    pub oracle: bool,
}

impl Default for Methods {
    fn default() -> Self {
        Methods { minuscule: true, oracle: true }
    }
}

/// Cross-checked counts for one involution class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub base_type: String,
    pub affine_type: String,
    pub s: Vec<Int>,
    pub k: Int,
    pub case: CaseTag,
    pub p: usize,
    pub q: Option<usize>,
    pub g0: String,
    pub count_formula: u128,
    pub count_minuscule: Option<u128>,
    pub count_oracle: Option<u128>,
    pub ingredients: Ingredients,
    pub agree: bool,
}

impl CountReport {
    /// Canonical key of the class, used for cache file names.
    pub fn key(&self) -> String {
        spec_key(&self.affine_type, &self.s)
    }
}

pub fn spec_key(affine_type: &str, s: &[Int]) -> String {
    let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{}_s{}", affine_type.replace("^(", "-").replace(')', ""), s.join("-"))
}

/// Everything computed for one class, including the two families of sets.
#[derive(Clone, Debug)]
pub struct Census {
    pub report: CountReport,
    pub minuscule: Option<Vec<WeightSubset>>,
    pub oracle: Option<Vec<WeightSubset>>,
}

pub fn build_report(spec: &InvolutionSpec, methods: Methods) -> Result<CountReport> {
    let roots = Arc::new(build_affine_default(spec.affine)?);
    Ok(census_with(spec, roots, methods)?.report)
}

/// Runs the requested methods over a shared root window. When both
/// enumerations run, agreement also requires the two families to coincide.
pub fn census_with(spec: &InvolutionSpec, roots: Arc<AffineRootSystem>, methods: Methods) -> Result<Census> {
    let gd = graded_data_with(spec, roots)?;
    let frs = gd.roots.finite_part()?;
    let formula = closed_form_count(&gd, &frs)?;
    let minuscule = if methods.minuscule {
        let mut sets: Vec<WeightSubset> =
            enumerate_sigma_minuscule(&gd)?.into_iter().map(|w| WeightSubset::new(w.inversion_set)).collect();
        sets.sort();
        Some(sets)
    } else {
        None
    };
    let oracle = if methods.oracle { Some(enumerate_abelian_subalgebras(&gd)?) } else { None };
    let count_minuscule = minuscule.as_ref().map(|v| v.len() as u128);
    let count_oracle = oracle.as_ref().map(|v| v.len() as u128);
    let counts_agree = [count_minuscule, count_oracle].iter().flatten().all(|&c| c == formula.count);
    let families_agree = match (&minuscule, &oracle) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let report = CountReport {
        base_type: spec.base().to_string(),
        affine_type: spec.affine.to_string(),
        s: spec.s.clone(),
        k: spec.k(),
        case: spec.case,
        p: spec.p,
        q: spec.q,
        g0: gd.g0_type(),
        count_formula: formula.count,
        count_minuscule,
        count_oracle,
        ingredients: formula.ingredients,
        agree: counts_agree && families_agree,
    };
    Ok(Census { report, minuscule, oracle })
}

/// Reports for every class of `base`, building each root window once.
pub fn reports_for_base(base: FiniteKind, methods: Methods) -> Result<Vec<CountReport>> {
    let mut out = Vec::new();
    let mut cached: Option<(AffineKind, Arc<AffineRootSystem>)> = None;
    for spec in classify_involutions(base)? {
        let roots = match &cached {
            Some((kind, r)) if *kind == spec.affine => r.clone(),
            _ => {
                let r = Arc::new(build_affine_default(spec.affine)?);
                cached = Some((spec.affine, r.clone()));
                r
            }
        };
        out.push(census_with(&spec, roots, methods)?.report);
    }
    Ok(out)
}

/// `[W_f : W_σ]·[M : M_σ]`, the number of alcoves in `P_σ`.
pub fn p_sigma_alcoves(ing: &Ingredients) -> Option<u128> {
    ing.lattice_index.map(|i| ing.weyl_index() * i as u128)
}

/// The two summands of the hermitian closed form.
pub fn hermitian_split(ing: &Ingredients) -> Option<(u128, u128)> {
    let first = ing.weyl_index();
    let second = Rational::from_integer(first as Int) * Rational::new(ing.ell_sigma, ing.ell_f);
    (ing.chi_long.is_none() && second.is_integer() && second > Rational::zero())
        .then(|| (first, second.to_integer() as u128))
}

/// `kδ + α` and, for `α` not long, `δ + α` are roots or zero for every real
/// root `α` of the window whose shifts stay inside it. Returns the number of
/// checks made.
pub fn check_delta_shifts(ars: &AffineRootSystem) -> Result<usize> {
    let k = ars.twist();
    let delta = ars.delta();
    let bound = ars.window * ars.labels[0];
    let mut checks = 0;
    let mut roots: Vec<AffineRoot> = ars.positive_real_roots().to_vec();
    roots.extend(ars.positive_real_roots().iter().map(|r| r.neg()));
    for a in &roots {
        let mut shifts = vec![k];
        if !ars.is_long(a) && k != 1 {
            shifts.push(1);
        }
        for m in shifts {
            for sign in [1, -1] {
                let b = a.add(&delta.scale(sign * m));
                if b.coords()[0].abs() > bound {
                    continue;
                }
                ensure!(b.is_zero() || ars.is_real_root(&b)?, "{}: {a} shifted by {}δ is not a root", ars.kind, sign * m);
                checks += 1;
            }
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::graded_data;
    use crate::rootsys::build_finite;

    fn fk(s: &str) -> FiniteKind {
        s.parse().unwrap()
    }

    fn untwisted(s: &str, p: usize) -> InvolutionSpec {
        InvolutionSpec::semisimple(AffineKind::untwisted(fk(s)), p).unwrap()
    }

    fn twisted(s: &str, p: usize) -> InvolutionSpec {
        InvolutionSpec::semisimple(AffineKind::new(fk(s), 2).unwrap(), p).unwrap()
    }

    fn formula(spec: &InvolutionSpec) -> FormulaCount {
        let gd = graded_data(spec).unwrap();
        closed_form_count(&gd, &gd.roots.finite_part().unwrap()).unwrap()
    }

    #[test]
    fn closed_forms() {
        let f4 = formula(&untwisted("F4", 1));
        assert_eq!(f4.count, 23);
        assert_eq!((f4.ingredients.weyl_f, f4.ingredients.weyl_sigma), (1152, 96));
        assert_eq!(formula(&untwisted("E8", 7)).count, 269);
        let e6 = formula(&InvolutionSpec::hermitian(fk("E6"), 1).unwrap());
        assert_eq!(e6.count, 63);
        assert_eq!(hermitian_split(&e6.ingredients), Some((27, 36)));
        assert_eq!(formula(&InvolutionSpec::hermitian(fk("C3"), 3).unwrap()).count, 20);
    }

    #[test]
    fn lattice_indices() {
        let gd = graded_data(&untwisted("G2", 1)).unwrap();
        let frs = gd.roots.finite_part().unwrap();
        let lat = CorootLattices::new(&gd, &frs).unwrap();
        assert_eq!(lattice_index(&lat.q_check, &lat.m_sigma).unwrap(), 2);
        assert_eq!(lattice_index(&lat.m, &lat.m).unwrap(), 1);

        let gd = graded_data(&twisted("A4", 2)).unwrap();
        let frs = gd.roots.finite_part().unwrap();
        assert_eq!(CorootLattices::new(&gd, &frs).unwrap().index().unwrap(), 8);
    }

    #[test]
    fn singular_basis_is_rejected() {
        let z = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(matches!(lattice_index(&IntMatrix::identity(2), &z), Err(Error::Input(_))));
    }

    #[test]
    fn theta_coroot_examples() {
        let g2 = build_affine_default(AffineKind::untwisted(fk("G2"))).unwrap();
        assert_eq!(theta_coroot(&g2).unwrap(), vec![2, 1]);
        let a4 = build_affine_default(AffineKind::new(fk("A4"), 2).unwrap()).unwrap();
        assert_eq!(theta_coroot(&a4).unwrap(), vec![1, 1]);
    }

    #[test]
    fn polytopes() {
        let g2 = polytope_description(&graded_data(&untwisted("G2", 1)).unwrap()).unwrap();
        assert_eq!(g2.correction, Some(true));
        assert_eq!(g2.d_walls.len(), 5);
        assert!(!g2.p_walls.contains(&AffineRoot(vec![1, 3, 3])));
        let c4 = polytope_description(&graded_data(&untwisted("C4", 2)).unwrap()).unwrap();
        assert_eq!(c4.correction, Some(false));
        let a4 = polytope_description(&graded_data(&twisted("A4", 2)).unwrap()).unwrap();
        assert_eq!(a4.correction, Some(true));
    }

    #[test]
    fn reports() {
        let b3 = build_report(&untwisted("B3", 2), Methods::default()).unwrap();
        assert_eq!((b3.count_formula, b3.count_minuscule, b3.count_oracle), (11, Some(11), Some(11)));
        assert!(b3.agree);
        let d4 = build_report(&twisted("D4", 0), Methods::default()).unwrap();
        assert_eq!(d4.count_formula, 2);
        assert!(d4.agree);
        let a3 = build_report(&InvolutionSpec::hermitian(fk("A3"), 2).unwrap(), Methods::default()).unwrap();
        assert_eq!(a3.count_formula, 12);
        assert!(a3.agree);
    }

    #[test]
    fn report_json_fields() {
        let r = build_report(&untwisted("G2", 1), Methods::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut expected = vec![
            "base_type",
            "affine_type",
            "s",
            "k",
            "case",
            "p",
            "q",
            "g0",
            "count_formula",
            "count_minuscule",
            "count_oracle",
            "ingredients",
            "agree",
        ];
        expected.sort();
        let mut keys: Vec<&str> = keys.iter().map(|s| s.as_str()).collect();
        keys.sort();
        assert_eq!(keys, expected);
        assert_eq!(v["case"], "semisimple-k1");
        assert_eq!(v["ingredients"]["L"], 1);
    }

    #[test]
    fn finite_part_matches_build_finite() {
        let ars = build_affine_default(AffineKind::untwisted(fk("E7"))).unwrap();
        assert_eq!(ars.finite_part().unwrap().weyl_order, build_finite(fk("E7")).unwrap().weyl_order);
    }

    #[test]
    fn delta_shift_checks() {
        for kind in [AffineKind::untwisted(fk("B3")), AffineKind::new(fk("A4"), 2).unwrap()] {
            let ars = build_affine_default(kind).unwrap();
            assert!(check_delta_shifts(&ars).unwrap() > 0);
        }
    }
}
