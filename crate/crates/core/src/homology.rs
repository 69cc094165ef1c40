//! Basis presentations of rational homology with an intersection pairing and
//! a table of genus-zero 3-point Gromov-Witten structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::novikov::{parse_rational, Monomial};
use crate::Rational;

/// Label of the implicit zero curve class.
pub const ZERO_CLASS: &str = "0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub label: String,
    pub c1: i64,
    pub omega: Rational,
}

impl CurveClass {
    /// The Novikov weight `q^{-c1} t^{-omega}` attached to the class.
    pub fn weight(&self) -> Monomial {
        Monomial::new(-self.c1, -self.omega.clone())
    }
}

/// Key of a Gromov-Witten entry: curve class label and three basis indices.
pub type Gw3Key = (String, [usize; 3]);

/// One summand of a basis product: `coeff · e_out ⊗ weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTerm {
    pub out: usize,
    pub weight: Monomial,
    pub coeff: Rational,
}

#[derive(Debug)]
pub struct ManifoldModel {
    pub name: String,
    pub dim: i64,
    pub basis: Vec<BasisElement>,
    pub pairing: Matrix,
    pub classes: Vec<CurveClass>,
    /// Raw table as supplied; lookups accept any permutation of the indices.
    pub gw3: BTreeMap<Gw3Key, Rational>,
    inverse_pairing: OnceLock<Option<Matrix>>,
    products: OnceLock<Vec<Vec<Vec<ProductTerm>>>>,
}

impl PartialEq for ManifoldModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.basis == other.basis
            && self.pairing == other.pairing
            && self.classes == other.classes
            && self.gw3 == other.gw3
    }
}

impl ManifoldModel {
    pub fn new(
        name: impl Into<String>,
        dim: i64,
        basis: Vec<BasisElement>,
        pairing: Matrix,
        classes: Vec<CurveClass>,
        gw3: BTreeMap<Gw3Key, Rational>,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            basis,
            pairing,
            classes,
            gw3,
            inverse_pairing: OnceLock::new(),
            products: OnceLock::new(),
        }
    }

    /// A copy with every nonzero curve class removed: the classical
    /// intersection ring.
    pub fn classical(&self) -> Self {
        let gw3 = self
            .gw3
            .iter()
            .filter(|((c, _), _)| c == ZERO_CLASS)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Self::new(
            format!("{}-classical", self.name),
            self.dim,
            self.basis.clone(),
            self.pairing.clone(),
            Vec::new(),
            gw3,
        )
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    /// Index of the fundamental class, the unique basis element of top degree.
    pub fn fundamental_index(&self) -> Option<usize> {
        let mut it = self.basis.iter().enumerate().filter(|(_, b)| b.degree == self.dim);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn curve_class(&self, label: &str) -> Option<&CurveClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    fn class_weight(&self, label: &str) -> Option<Monomial> {
        if label == ZERO_CLASS {
            Some(Monomial::unit())
        } else {
            self.curve_class(label).map(CurveClass::weight)
        }
    }

    /// Looks up `GW(e_i, e_j, e_k; class)`, accepting the entry under any
    /// permutation of the indices.
    pub fn gw3(&self, class: &str, i: usize, j: usize, k: usize) -> Rational {
        let perms = [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]];
        for p in perms {
            if let Some(v) = self.gw3.get(&(class.to_string(), p)) {
                return v.clone();
            }
        }
        Rational::zero()
    }

    pub fn pairing_entry(&self, i: usize, j: usize) -> Rational {
        self.pairing
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn inverse_pairing(&self) -> Result<&Matrix> {
        self.inverse_pairing
            .get_or_init(|| linalg::invert(&self.pairing))
            .as_ref()
            .ok_or(Error::SingularPairing)
    }

    /// Structure constants of the quantum product on basis elements:
    /// `e_i * e_j = Σ coeff · e_out ⊗ weight`. The class-`A` part is resolved
    /// from its pairings with every basis element through the inverse
    /// pairing matrix.
    pub fn basis_product(&self, i: usize, j: usize) -> Result<&[ProductTerm]> {
        if let Some(p) = self.products.get() {
            return Ok(&p[i][j]);
        }
        let ginv = self.inverse_pairing()?.clone();
        let n = self.rank();
        let mut by_class: BTreeMap<&str, BTreeMap<[usize; 3], Rational>> = BTreeMap::new();
        for ((class, idx), v) in &self.gw3 {
            if v.is_zero() || idx.iter().any(|&x| x >= n) {
                continue;
            }
            let entry = by_class.entry(class.as_str()).or_default();
            // fill in every permutation, keeping an explicitly stored value
            for p in permutations(*idx) {
                if p == *idx || !self.gw3.contains_key(&(class.clone(), p)) {
                    entry.entry(p).or_insert_with(|| v.clone());
                }
            }
            entry.insert(*idx, v.clone());
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        for (class, entries) in &by_class {
            let Some(weight) = self.class_weight(class) else {
                continue;
            };
            for (a, row) in table.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    // x_m = Σ_l GW(a, b, l) Ginv[l][m]
                    let mut coeffs = vec![Rational::zero(); n];
                    for l in 0..n {
                        let Some(g) = entries.get(&[a, b, l]) else {
                            continue;
                        };
                        for (m, c) in coeffs.iter_mut().enumerate() {
                            if !ginv[l][m].is_zero() {
                                *c += g * &ginv[l][m];
                            }
                        }
                    }
                    for (m, c) in coeffs.into_iter().enumerate() {
                        if !c.is_zero() {
                            cell.push(ProductTerm { out: m, weight: weight.clone(), coeff: c });
                        }
                    }
                }
            }
        }
        let _ = self.products.set(table);
        Ok(&self.products.get().expect("just set")[i][j])
    }
}

fn permutations([i, j, k]: [usize; 3]) -> [[usize; 3]; 6] {
    [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]]
}

/// An element of `H_*(M; Q)` in the model basis.
#[derive(Debug, Clone)]
pub struct HomologyClass {
    pub model: Arc<ManifoldModel>,
    coeffs: BTreeMap<usize, Rational>,
}

impl PartialEq for HomologyClass {
    fn eq(&self, other: &Self) -> bool {
        same_model(&self.model, &other.model) && self.coeffs == other.coeffs
    }
}

pub fn same_model(a: &Arc<ManifoldModel>, b: &Arc<ManifoldModel>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl HomologyClass {
    pub fn zero(model: &Arc<ManifoldModel>) -> Self {
        Self { model: model.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(model: &Arc<ManifoldModel>, i: usize) -> Self {
        Self::from_coeffs(model, [(i, Rational::one())])
    }

    pub fn from_coeffs<I>(model: &Arc<ManifoldModel>, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut out = Self::zero(model);
        for (i, c) in coeffs {
            assert!(i < model.rank(), "basis index {i} out of range");
            let e = out.coeffs.entry(i).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(&i);
            }
        }
        out
    }

    /// Builds a class from `(label, coefficient)` pairs.
    pub fn from_labels<'a, I>(model: &Arc<ManifoldModel>, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let mut v = Vec::new();
        for (l, c) in items {
            v.push((model.index_of(l)?, c));
        }
        Ok(Self::from_coeffs(model, v))
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Common degree of the nonzero components, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.coeffs.keys().map(|&i| self.model.degree(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(&self.model, self.coeffs.iter().map(|(i, v)| (*i, v * c)))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} {}", c, self.model.basis[*i].label)?;
        }
        Ok(())
    }
}

/// Bilinear extension of the intersection pairing.
pub fn pairing_eval(a: &HomologyClass, b: &HomologyClass) -> Result<Rational> {
    if !same_model(&a.model, &b.model) {
        return Err(Error::ModelMismatch);
    }
    let mut acc = Rational::zero();
    for (i, x) in &a.coeffs {
        for (j, y) in &b.coeffs {
            let g = a.model.pairing_entry(*i, *j);
            if !g.is_zero() {
                acc += x * y * g;
            }
        }
    }
    Ok(acc)
}

/// The basis `{e_j^*}` with `pairing(e_i, e_j^*) = δ_ij`.
pub fn dual_basis(model: &Arc<ManifoldModel>) -> Result<Vec<HomologyClass>> {
    let ginv = model.inverse_pairing()?;
    // pairing(e_i, Σ_m D_jm e_m) = Σ_m D_jm G_im = δ_ij  =>  D_jm = Ginv_mj
    Ok((0..model.rank())
        .map(|j| HomologyClass::from_coeffs(model, (0..model.rank()).map(|m| (m, ginv[m][j].clone()))))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub model: String,
    pub violations: Vec<Violation>,
    /// `Some(c)` when `omega = c · c1` holds for every curve class.
    pub monotone_constant: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation { location: location.into(), message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "model {}: valid", self.model)?;
        } else {
            writeln!(f, "model {}: {} violation(s)", self.model, self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  [{}] {}", v.location, v.message)?;
            }
        }
        if let Some(c) = &self.monotone_constant {
            writeln!(f, "  monotone: omega = {c} * c1")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a model and reports each violation.
pub fn validate_model(model: &ManifoldModel) -> ValidationReport {
    let mut r = ValidationReport { model: model.name.clone(), ..Default::default() };
    let n = model.rank();
    let dim = model.dim;

    if dim < 0 || dim % 2 != 0 {
        r.flag("dim", format!("dimension {dim} is not a nonnegative even integer"));
    }
    for (i, b) in model.basis.iter().enumerate() {
        if b.degree % 2 != 0 || b.degree < 0 || b.degree > dim {
            r.flag(
                format!("basis[{i}] {}", b.label),
                format!("degree {} must be even and in [0, {dim}]", b.degree),
            );
        }
        if model.basis[..i].iter().any(|o| o.label == b.label) {
            r.flag(format!("basis[{i}]"), format!("duplicate label `{}`", b.label));
        }
    }
    let top = model.fundamental_index();
    if top.is_none() {
        r.flag("basis", "there must be exactly one basis element of top degree");
    }

    if model.pairing.len() != n || model.pairing.iter().any(|row| row.len() != n) {
        r.flag("pairing", format!("pairing must be a {n}x{n} matrix"));
    } else {
        for i in 0..n {
            for j in 0..n {
                let g = &model.pairing[i][j];
                if g.is_zero() {
                    continue;
                }
                if model.degree(i) + model.degree(j) != dim {
                    r.flag(
                        format!("pairing[{}][{}]", model.basis[i].label, model.basis[j].label),
                        "nonzero entry between classes whose degrees do not sum to dim",
                    );
                }
                if *g != model.pairing[j][i] {
                    r.flag(
                        format!("pairing[{}][{}]", model.basis[i].label, model.basis[j].label),
                        "pairing is not symmetric",
                    );
                }
            }
        }
        if linalg::invert(&model.pairing).is_none() {
            r.flag("pairing", "pairing is degenerate");
        }
    }

    let mut ratio: Option<Rational> = None;
    let mut monotone = !model.classes.is_empty();
    for (i, c) in model.classes.iter().enumerate() {
        if c.label == ZERO_CLASS {
            r.flag(format!("classes[{i}]"), "label `0` is reserved for the zero class");
        }
        if model.classes[..i].iter().any(|o| o.label == c.label) {
            r.flag(format!("classes[{i}]"), format!("duplicate class `{}`", c.label));
        }
        if c.omega <= Rational::zero() {
            r.flag(format!("classes[{i}] {}", c.label), "omega must be strictly positive");
        }
        if c.c1 == 0 {
            monotone = false;
        } else {
            let k = &c.omega / Rational::from_integer(c.c1.into());
            match &ratio {
                None => ratio = Some(k),
                Some(prev) if *prev != k => monotone = false,
                _ => {}
            }
        }
    }
    if monotone {
        if let Some(k) = ratio.filter(|k| *k > Rational::zero()) {
            r.monotone_constant = Some(k.to_string());
        }
    }

    for ((class, idx), v) in &model.gw3 {
        let loc = format!("gw3[{class}; {}, {}, {}]", idx[0], idx[1], idx[2]);
        if idx.iter().any(|&x| x >= n) {
            r.flag(loc, "basis index out of range");
            continue;
        }
        let c1 = if class == ZERO_CLASS {
            0
        } else if let Some(c) = model.curve_class(class) {
            c.c1
        } else {
            r.flag(loc, format!("unknown curve class `{class}`"));
            continue;
        };
        if !v.is_zero() {
            let deg: i64 = idx.iter().map(|&x| model.degree(x)).sum();
            if deg != 2 * dim - 2 * c1 {
                r.flag(
                    loc.clone(),
                    format!("degree sum {deg} violates the constraint {} = 2*dim - 2*c1", 2 * dim - 2 * c1),
                );
            }
        }
        for p in permutations(*idx) {
            if let Some(w) = model.gw3.get(&(class.clone(), p)) {
                if w != v && p > *idx {
                    r.flag(
                        loc.clone(),
                        format!("not symmetric: permutation ({}, {}, {}) has value {w}", p[0], p[1], p[2]),
                    );
                }
            }
        }
    }

    // zero-class entries against the fundamental class must reproduce the pairing
    if let (Some(t), true) = (top, model.pairing.len() == n) {
        for i in 0..n {
            for j in 0..n {
                let g = model.gw3(ZERO_CLASS, i, j, t);
                if g != model.pairing_entry(i, j) {
                    r.flag(
                        format!("gw3[0; {i}, {j}, {t}]"),
                        format!("classical triple with the fundamental class is {g}, pairing gives {}", model.pairing_entry(i, j)),
                    );
                }
            }
        }
    }
    r
}

/// Complex projective space `CP^n` with `ω(L) = 1` on the line class.
///
/// Basis `p_0..p_n` with `deg p_i = 2i`; curve classes `dL`, `d = 1..n`, with
/// `c1 = d(n+1)` and `ω = d`. Only `d = 0, 1` carry nonzero invariants: the
/// classical triple intersections (`i + j + k = 2n`) and the line count
/// (`i + j + k = n - 1`).
pub fn preset_cpn(n: usize) -> Result<ManifoldModel> {
    if n == 0 {
        return Err(Error::InvalidModel("cpn requires n >= 1".into()));
    }
    let ni = n as i64;
    let basis = (0..=n)
        .map(|i| BasisElement { label: format!("p{i}"), degree: 2 * i as i64 })
        .collect();
    let pairing = (0..=n)
        .map(|i| (0..=n).map(|j| if i + j == n { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let classes = (1..=ni)
        .map(|d| CurveClass {
            label: if d == 1 { "L".to_string() } else { format!("{d}L") },
            c1: d * (ni + 1),
            omega: Rational::from_integer(d.into()),
        })
        .collect();
    let mut gw3 = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                if i + j + k == 2 * n {
                    gw3.insert((ZERO_CLASS.to_string(), [i, j, k]), Rational::one());
                }
                if i + j + k + 1 == n {
                    gw3.insert(("L".to_string(), [i, j, k]), Rational::one());
                }
            }
        }
    }
    Ok(ManifoldModel::new(format!("cpn:{n}"), 2 * ni, basis, pairing, classes, gw3))
}

/// Serialized form of a model file (TOML), with exact rationals as strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub dim: i64,
    pub basis: BasisSection,
    pub pairing: PairingSection,
    #[serde(default)]
    pub classes: ClassesSection,
    #[serde(default)]
    pub gw3: Gw3Section,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSection {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingSection {
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassesSection {
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub c1: Vec<i64>,
    #[serde(default)]
    pub omega: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Gw3Section {
    #[serde(default)]
    pub entries: Vec<Gw3Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gw3Entry {
    pub class: String,
    pub at: [String; 3],
    pub value: String,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_model(self) -> Result<ManifoldModel> {
        let b = &self.basis;
        if b.labels.len() != b.degrees.len() {
            return Err(Error::Parse("basis labels and degrees differ in length".into()));
        }
        let basis: Vec<BasisElement> = b
            .labels
            .iter()
            .zip(&b.degrees)
            .map(|(l, d)| BasisElement { label: l.clone(), degree: *d })
            .collect();
        let pairing = self
            .pairing
            .rows
            .iter()
            .map(|row| row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix>>()?;
        let c = &self.classes;
        if c.labels.len() != c.c1.len() || c.labels.len() != c.omega.len() {
            return Err(Error::Parse("class labels, c1 and omega differ in length".into()));
        }
        let classes = c
            .labels
            .iter()
            .zip(&c.c1)
            .zip(&c.omega)
            .map(|((l, c1), w)| Ok(CurveClass { label: l.clone(), c1: *c1, omega: parse_rational(w)? }))
            .collect::<Result<Vec<_>>>()?;
        let index = |l: &str| {
            basis.iter().position(|b| b.label == l).ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut gw3 = BTreeMap::new();
        for e in &self.gw3.entries {
            let idx = [index(&e.at[0])?, index(&e.at[1])?, index(&e.at[2])?];
            gw3.insert((e.class.clone(), idx), parse_rational(&e.value)?);
        }
        Ok(ManifoldModel::new(self.name, self.dim, basis, pairing, classes, gw3))
    }

    pub fn from_model(m: &ManifoldModel) -> Self {
        Self {
            name: m.name.clone(),
            dim: m.dim,
            basis: BasisSection {
                labels: m.basis.iter().map(|b| b.label.clone()).collect(),
                degrees: m.basis.iter().map(|b| b.degree).collect(),
            },
            pairing: PairingSection {
                rows: m.pairing.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            },
            classes: ClassesSection {
                labels: m.classes.iter().map(|c| c.label.clone()).collect(),
                c1: m.classes.iter().map(|c| c.c1).collect(),
                omega: m.classes.iter().map(|c| c.omega.to_string()).collect(),
            },
            gw3: Gw3Section {
                entries: m
                    .gw3
                    .iter()
                    .map(|((class, idx), v)| Gw3Entry {
                        class: class.clone(),
                        at: idx.map(|i| m.basis[i].label.clone()),
                        value: v.to_string(),
                    })
                    .collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn cpn(n: usize) -> Arc<ManifoldModel> {
        Arc::new(preset_cpn(n).unwrap())
    }

    #[test]
    fn cp2_pairings() {
        let m = cpn(2);
        let pt = HomologyClass::basis(&m, 0);
        let line = HomologyClass::basis(&m, 1);
        let top = HomologyClass::basis(&m, 2);
        assert_eq!(pairing_eval(&pt, &top).unwrap(), rat(1, 1));
        assert_eq!(pairing_eval(&line, &line).unwrap(), rat(1, 1));
        assert_eq!(pairing_eval(&pt, &pt).unwrap(), rat(0, 1));
    }

    #[test]
    fn pairing_across_models_is_rejected() {
        let a = HomologyClass::basis(&cpn(1), 0);
        let b = HomologyClass::basis(&cpn(2), 0);
        assert_eq!(pairing_eval(&a, &b), Err(Error::ModelMismatch));
    }

    #[test]
    fn cpn_dual_basis_is_reversed_basis() {
        for n in 1..=5 {
            let m = cpn(n);
            let dual = dual_basis(&m).unwrap();
            for (i, d) in dual.iter().enumerate() {
                assert_eq!(*d, HomologyClass::basis(&m, n - i));
            }
        }
    }

    fn two_point_model(pairing: Matrix) -> ManifoldModel {
        let basis = vec![
            BasisElement { label: "a".into(), degree: 0 },
            BasisElement { label: "b".into(), degree: 0 },
        ];
        ManifoldModel::new("flat", 0, basis, pairing, vec![], BTreeMap::new())
    }

    #[test]
    fn identity_pairing_is_self_dual() {
        let m = Arc::new(two_point_model(linalg::identity(2)));
        let dual = dual_basis(&m).unwrap();
        assert_eq!(dual[0], HomologyClass::basis(&m, 0));
        assert_eq!(dual[1], HomologyClass::basis(&m, 1));
    }

    #[test]
    fn degenerate_pairing_is_singular() {
        let m = Arc::new(two_point_model(vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ]));
        assert_eq!(dual_basis(&m).unwrap_err(), Error::SingularPairing);
    }

    #[test]
    fn cpn_presets_validate() {
        for n in 1..=6 {
            let r = validate_model(&preset_cpn(n).unwrap());
            assert!(r.is_valid(), "{r}");
            assert_eq!(r.monotone_constant.as_deref(), Some(rat(1, n as i64 + 1).to_string().as_str()));
        }
    }

    #[test]
    fn cpn_line_counts() {
        let m1 = preset_cpn(1).unwrap();
        assert_eq!(m1.gw3("L", 0, 0, 0), rat(1, 1));
        assert_eq!(m1.gw3("L", 0, 0, 1), rat(0, 1));
        let m2 = preset_cpn(2).unwrap();
        assert_eq!(m2.gw3("L", 0, 0, 1), rat(1, 1));
        assert_eq!(m2.gw3("L", 1, 0, 0), rat(1, 1));
        for n in 1..=4 {
            let m = preset_cpn(n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    for k in 0..=n {
                        let expect = if i + j + k == 2 * n { 1 } else { 0 };
                        assert_eq!(m.gw3(ZERO_CLASS, i, j, k), rat(expect, 1));
                    }
                }
            }
        }
    }

    #[test]
    fn degree_defect_is_flagged() {
        let mut m = preset_cpn(2).unwrap();
        m.gw3.insert(("L".into(), [1, 1, 1]), rat(1, 1));
        let r = validate_model(&m);
        assert!(!r.is_valid());
        assert!(r.violations.iter().any(|v| v.message.contains("degree sum")));
    }

    #[test]
    fn asymmetry_is_flagged() {
        let mut m = preset_cpn(2).unwrap();
        m.gw3.insert(("L".into(), [1, 0, 0]), rat(2, 1));
        let r = validate_model(&m);
        assert!(r.violations.iter().any(|v| v.message.contains("not symmetric")), "{r}");
    }

    #[test]
    fn nonpositive_omega_is_flagged() {
        let mut m = preset_cpn(1).unwrap();
        m.classes[0].omega = rat(0, 1);
        assert!(!validate_model(&m).is_valid());
    }

    #[test]
    fn model_file_round_trip() {
        let m = preset_cpn(2).unwrap();
        let text = toml::to_string(&ModelFile::from_model(&m)).unwrap();
        let back = ModelFile::parse(&text).unwrap().into_model().unwrap();
        assert_eq!(back, m);
    }
}
