//! The quantum homology ring `QH_*(M; Λ) = H_*(M) ⊗ Λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::homology::{same_model, HomologyClass, ManifoldModel};
use crate::linalg::novikov_det;
use crate::novikov::NovikovScalar;
use crate::Rational;

#[derive(Debug, Clone)]
pub struct QuantumElement {
    pub model: Arc<ManifoldModel>,
    coeffs: BTreeMap<usize, NovikovScalar>,
}

impl PartialEq for QuantumElement {
    fn eq(&self, other: &Self) -> bool {
        same_model(&self.model, &other.model) && self.coeffs == other.coeffs
    }
}

/// Result of a degree query on a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDegree {
    Homogeneous(i64),
    Inhomogeneous,
}

impl QuantumElement {
    pub fn zero(model: &Arc<ManifoldModel>) -> Self {
        Self { model: model.clone(), coeffs: BTreeMap::new() }
    }

    /// The unit `[M]`.
    pub fn unit(model: &Arc<ManifoldModel>) -> Result<Self> {
        let top = model
            .fundamental_index()
            .ok_or_else(|| Error::InvalidModel("no fundamental class".into()))?;
        Ok(Self::basis(model, top))
    }

    pub fn basis(model: &Arc<ManifoldModel>, i: usize) -> Self {
        Self::from_terms(model, [(i, NovikovScalar::one())])
    }

    /// `e_i ⊗ s` summed over the input, collecting repeated indices.
    pub fn from_terms<I>(model: &Arc<ManifoldModel>, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, NovikovScalar)>,
    {
        let mut out = Self::zero(model);
        for (i, s) in terms {
            out.add_at(i, &s);
        }
        out
    }

    /// `e_i ⊗ q^q t^t`.
    pub fn monomial(model: &Arc<ManifoldModel>, i: usize, q: i64, t: Rational) -> Self {
        Self::from_terms(model, [(i, NovikovScalar::monomial(Rational::one(), q, t))])
    }

    /// `a ⊗ s` for a classical class `a`.
    pub fn from_class(a: &HomologyClass, s: &NovikovScalar) -> Self {
        Self::from_terms(
            &a.model,
            a.coeffs().iter().map(|(i, c)| (*i, s.scale(c))),
        )
    }

    fn add_at(&mut self, i: usize, s: &NovikovScalar) {
        assert!(i < self.model.rank(), "basis index {i} out of range");
        if s.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_default();
        *e += s;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, NovikovScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> NovikovScalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        let mut out = self.clone();
        for (i, s) in &other.coeffs {
            out.add_at(*i, s);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&NovikovScalar::constant(-Rational::one())))
    }

    /// Multiplication by a Novikov scalar.
    pub fn scale(&self, s: &NovikovScalar) -> Self {
        Self::from_terms(&self.model, self.coeffs.iter().map(|(i, c)| (*i, c * s)))
    }

    pub fn truncate(&self, floor: &Rational) -> Self {
        Self::from_terms(&self.model, self.coeffs.iter().map(|(i, c)| (*i, c.truncate(floor))))
    }

    /// Supremum of the `t` exponents over all components.
    pub fn valuation(&self) -> Result<Rational> {
        self.coeffs
            .values()
            .filter_map(|c| c.valuation().ok())
            .max()
            .ok_or(Error::ZeroElement)
    }

    /// Degree `deg e_i + 2l` shared by every term, or the inhomogeneous marker.
    pub fn qdegree(&self) -> Result<QDegree> {
        let mut degs = self.coeffs.iter().flat_map(|(i, c)| {
            let base = self.model.degree(*i);
            c.degrees().into_iter().map(move |d| base + d)
        });
        let first = degs.next().ok_or(Error::ZeroElement)?;
        Ok(if degs.all(|d| d == first) {
            QDegree::Homogeneous(first)
        } else {
            QDegree::Inhomogeneous
        })
    }

    /// Parses the line format produced by `Display`: one `label ⊗ (scalar)`
    /// per line, or the single line `0`.
    pub fn parse(model: &Arc<ManifoldModel>, text: &str) -> Result<Self> {
        let mut out = Self::zero(model);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line == "0" {
                continue;
            }
            let (label, scalar) = line
                .split_once('⊗')
                .ok_or_else(|| Error::Parse(format!("expected `label ⊗ (scalar)`, got `{line}`")))?;
            let scalar = scalar
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("scalar must be parenthesised in `{line}`")))?;
            out.add_at(model.index_of(label.trim())?, &scalar.parse()?);
        }
        Ok(out)
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return writeln!(f, "0");
        }
        for (i, c) in &self.coeffs {
            writeln!(f, "{} ⊗ ({})", self.model.basis[*i].label, c)?;
        }
        Ok(())
    }
}

/// The quantum product, extended Λ-bilinearly from the basis products.
pub fn qmul(a: &QuantumElement, b: &QuantumElement) -> Result<QuantumElement> {
    if !same_model(&a.model, &b.model) {
        return Err(Error::ModelMismatch);
    }
    let model = &a.model;
    let mut out = QuantumElement::zero(model);
    for (i, x) in &a.coeffs {
        for (j, y) in &b.coeffs {
            let xy = x * y;
            for term in model.basis_product(*i, *j)? {
                out.add_at(term.out, &xy.shift(&term.weight).scale(&term.coeff));
            }
        }
    }
    Ok(out)
}

/// Inverts `a` up to terms with `t` exponent below `t_floor`.
///
/// The multiplication operator of `a` is a square matrix over Λ. Its inverse
/// applied to `[M]` is computed by Cramer's rule: the cofactors are exact
/// finite sums, and the determinant `D` is inverted as a geometric series
/// `D^{-1} = d0^{-1} Σ_k (-(D - d0)/d0)^k`, where `d0` is the top-`t` slice of
/// `D` (which must be a single monomial). Each factor lowers `t` by at least
/// the gap between the two top `t` exponents of `D`, so the series is cut at
/// `t_floor` after finitely many steps. The returned `b` then satisfies
/// `truncate(a * b - [M], t_floor) = 0`, and is exact whenever `D` is a
/// monomial.
pub fn qinvert(a: &QuantumElement, t_floor: &Rational) -> Result<QuantumElement> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let model = &a.model;
    let n = model.rank();
    let not_invertible = |reason: &str| Error::NotInvertibleAtFloor {
        floor: t_floor.to_string(),
        reason: reason.to_string(),
    };
    let top = model
        .fundamental_index()
        .ok_or_else(|| Error::InvalidModel("no fundamental class".into()))?;

    // column j holds a * e_j
    let mut matrix = vec![vec![NovikovScalar::zero(); n]; n];
    for j in 0..n {
        let col = qmul(a, &QuantumElement::basis(model, j))?;
        for (i, s) in col.coeffs {
            matrix[i][j] = s;
        }
    }
    let det = novikov_det(&matrix);
    if det.is_zero() {
        return Err(not_invertible("multiplication operator is singular"));
    }
    let det_inv = invert_scalar(&det, t_floor).ok_or_else(|| {
        not_invertible("top-t slice of the determinant is not a single monomial")
    })?;

    let mut b = QuantumElement::zero(model);
    for i in 0..n {
        let mut m = matrix.clone();
        for (r, row) in m.iter_mut().enumerate() {
            row[i] = if r == top { NovikovScalar::one() } else { NovikovScalar::zero() };
        }
        let cofactor = novikov_det(&m);
        b.add_at(i, &(&cofactor * &det_inv));
    }

    Ok(b)
}

/// `S` with `d · S = 1 + (terms with t < floor)`, or `None` when the top slice
/// of `d` is not a monomial.
fn invert_scalar(d: &NovikovScalar, floor: &Rational) -> Option<NovikovScalar> {
    let lead = d.leading_slice();
    let (m, c) = lead.as_monomial()?;
    let lead_inv = NovikovScalar::monomial(
        Rational::one() / c,
        -m.q,
        -m.t.clone(),
    );
    let rest = d - &lead;
    if rest.is_zero() {
        return Some(lead_inv);
    }
    // u = -rest/lead has every t exponent strictly negative
    let u = -(&rest * &lead_inv);
    let mut sum = NovikovScalar::zero();
    // the constant term is always kept, even for a positive floor
    let floor = floor.min(&Rational::zero()).clone();
    let mut power = NovikovScalar::one();
    while !power.is_zero() {
        sum += &power;
        power = (&power * &u).truncate(&floor);
    }
    Some(&sum * &lead_inv)
}

/// Whether `s1 * s2` equals `expected` exactly.
pub fn seidel_product_check(
    s1: &QuantumElement,
    s2: &QuantumElement,
    expected: &QuantumElement,
) -> bool {
    matches!(qmul(s1, s2), Ok(p) if p == *expected)
}
