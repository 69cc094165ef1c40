//! The algebra `QH_*^B(M) = H_*(B × M) ⊗ Λ` carrying total quantum
//! characteristic classes of families over a base `B`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::base::{BaseClass, BaseModel};
use crate::error::{Error, Result};
use crate::homology::{dual_basis, pairing_eval, same_model, HomologyClass, ManifoldModel};
use crate::novikov::NovikovScalar;
use crate::quantum::{qmul, QuantumElement};
use crate::Rational;

/// An element of `H_*(B × M) ⊗ Λ` in the Künneth basis `b_β ⊗ e_φ`.
#[derive(Debug, Clone)]
pub struct QCClass {
    pub base: BaseModel,
    pub model: Arc<ManifoldModel>,
    coeffs: BTreeMap<(usize, usize), NovikovScalar>,
    /// `false` when lower `t`-order terms were not determined.
    pub complete: bool,
}

impl PartialEq for QCClass {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && same_model(&self.model, &other.model)
            && self.coeffs == other.coeffs
            && self.complete == other.complete
    }
}

impl QCClass {
    pub fn zero(base: &BaseModel, model: &Arc<ManifoldModel>) -> Self {
        Self { base: base.clone(), model: model.clone(), coeffs: BTreeMap::new(), complete: true }
    }

    /// `[B] ⊗ [M]`, the total class of a trivial family.
    pub fn unit(base: &BaseModel, model: &Arc<ManifoldModel>) -> Result<Self> {
        let top = model
            .fundamental_index()
            .ok_or_else(|| Error::InvalidModel("no fundamental class".into()))?;
        let mut c = Self::zero(base, model);
        c.add_term(base.fundamental_index(), top, &NovikovScalar::one());
        Ok(c)
    }

    /// `b ⊗ x` for a base class `b` and a quantum element `x`.
    pub fn tensor(base: &BaseModel, b: &BaseClass, x: &QuantumElement) -> Result<Self> {
        if !same_model(&b.model, base.homology()) {
            return Err(Error::ModelMismatch);
        }
        let mut c = Self::zero(base, &x.model);
        for (i, cb) in b.coeffs() {
            for (j, s) in x.coeffs() {
                c.add_term(*i, *j, &s.scale(cb));
            }
        }
        Ok(c)
    }

    pub fn add_term(&mut self, base_index: usize, fiber_index: usize, s: &NovikovScalar) {
        assert!(base_index < self.base.homology().rank(), "base index out of range");
        assert!(fiber_index < self.model.rank(), "fiber index out of range");
        if s.is_zero() {
            return;
        }
        let key = (base_index, fiber_index);
        let e = self.coeffs.entry(key).or_default();
        *e += s;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), NovikovScalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base || !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((b, f), s) in &other.coeffs {
            out.add_term(*b, *f, s);
        }
        out.complete = self.complete && other.complete;
        Ok(out)
    }

    pub fn scale(&self, s: &NovikovScalar) -> Self {
        let mut out = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for ((b, f), v) in &self.coeffs {
            out.add_term(*b, *f, &(v * s));
        }
        out
    }

    pub fn valuation(&self) -> Result<Rational> {
        self.coeffs
            .values()
            .filter_map(|s| s.valuation().ok())
            .max()
            .ok_or(Error::ZeroElement)
    }

    /// Parses the line format written by `Display`.
    pub fn parse(base: &BaseModel, model: &Arc<ManifoldModel>, text: &str) -> Result<Self> {
        let mut c = Self::zero(base, model);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(flag) = line.strip_prefix("complete:") {
                c.complete = match flag.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(Error::Parse(format!("bad completeness flag `{other}`"))),
                };
                continue;
            }
            if line == "0" {
                continue;
            }
            let mut parts = line.splitn(3, '⊗').map(str::trim);
            let (Some(b), Some(f), Some(s)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("expected `base ⊗ fiber ⊗ (scalar)`, got `{line}`")));
            };
            let s = s
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("scalar must be parenthesised in `{line}`")))?;
            c.add_term(base.homology().index_of(b)?, model.index_of(f)?, &s.parse()?);
        }
        Ok(c)
    }
}

impl fmt::Display for QCClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complete: {}", self.complete)?;
        if self.coeffs.is_empty() {
            return writeln!(f, "0");
        }
        let bl = &self.base.homology().basis;
        for ((b, m), s) in &self.coeffs {
            writeln!(f, "{} ⊗ {} ⊗ ({})", bl[*b].label, self.model.basis[*m].label, s)?;
        }
        Ok(())
    }
}

/// Evaluates the functional of `c` on a base class:
/// `c(a) = Σ_A Σ_i (b_A · (a ⊗ e_i^*)) e_i ⊗ e^A`, with the intersection
/// pairing of `B × M` split as a product of the two factors.
pub fn eval_functional(c: &QCClass, a: &BaseClass) -> Result<QuantumElement> {
    if !same_model(&a.model, c.base.homology()) {
        return Err(Error::ModelMismatch);
    }
    let duals = dual_basis(&c.model)?;
    let mut out = QuantumElement::zero(&c.model);
    for ((b, m), s) in &c.coeffs {
        let base_pairing = pairing_eval(&HomologyClass::basis(c.base.homology(), *b), a)?;
        if base_pairing.is_zero() {
            continue;
        }
        let fiber = HomologyClass::basis(&c.model, *m);
        for (i, dual) in duals.iter().enumerate() {
            let p = pairing_eval(&fiber, dual)?;
            if p.is_zero() {
                continue;
            }
            let coeff = &base_pairing * p;
            out = out.add(&QuantumElement::from_terms(&c.model, [(i, s.scale(&coeff))]))?;
        }
    }
    Ok(out)
}

/// Product on `QH_*^B(M)`: intersection product on the base factor, quantum
/// product on the fiber factor, Λ-bilinear.
pub fn qc_cup(x: &QCClass, y: &QCClass) -> Result<QCClass> {
    x.check_compatible(y)?;
    let base = x.base.homology();
    let mut out = QCClass::zero(&x.base, &x.model);
    out.complete = x.complete && y.complete;
    for ((b1, m1), s1) in &x.coeffs {
        for ((b2, m2), s2) in &y.coeffs {
            let base_terms = base.basis_product(*b1, *b2)?;
            if base_terms.is_empty() {
                continue;
            }
            let s = s1 * s2;
            for fiber_term in x.model.basis_product(*m1, *m2)? {
                let sf = s.shift(&fiber_term.weight).scale(&fiber_term.coeff);
                for bt in base_terms {
                    out.add_term(bt.out, fiber_term.out, &sf.scale(&bt.coeff));
                }
            }
        }
    }
    Ok(out)
}

/// Total class of a Whitney sum `P_1 ⊕ P_2`: the product of the total classes.
pub fn whitney_total(c1: &QCClass, c2: &QCClass) -> Result<QCClass> {
    qc_cup(c1, c2)
}

/// The operator `x ↦ c ∪ x` on `QH_*^B(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultOperator {
    pub class: QCClass,
}

impl MultOperator {
    pub fn new(class: &QCClass) -> Self {
        Self { class: class.clone() }
    }

    pub fn apply(&self, x: &QCClass) -> Result<QCClass> {
        qc_cup(&self.class, x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MultOperator) -> Result<MultOperator> {
        Ok(MultOperator::new(&qc_cup(&self.class, &other.class)?))
    }
}

pub fn mult_operator(c: &QCClass) -> MultOperator {
    MultOperator::new(c)
}

/// `Ψ(c) = c([B])`.
pub fn psi(c: &QCClass) -> Result<QuantumElement> {
    let fundamental = HomologyClass::basis(c.base.homology(), c.base.fundamental_index());
    eval_functional(c, &fundamental)
}

/// Image of a Pontryagin product under `Ψ`: the quantum product of the images.
pub fn pontryagin_psi(p1: &QuantumElement, p2: &QuantumElement) -> Result<QuantumElement> {
    qmul(p1, p2)
}

/// Compares the top classes `Ψ` of two independently supplied total classes.
pub fn top_classes_agree(c1: &QCClass, c2: &QCClass) -> Result<bool> {
    Ok(psi(c1)? == psi(c2)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DegreeAudit {
    pub violations: Vec<String>,
}

impl DegreeAudit {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DegreeAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "degree audit: clean");
        }
        writeln!(f, "degree audit: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks `deg(base) + deg(fiber) = 2n + m - 2l` for every stored term
/// `b ⊗ e ⊗ q^l t^ε`.
pub fn degree_audit(c: &QCClass, fiber_dim: i64, base_dim: i64) -> DegreeAudit {
    let mut audit = DegreeAudit::default();
    let bb = &c.base.homology().basis;
    for ((b, m), s) in &c.coeffs {
        let deg = bb[*b].degree + c.model.degree(*m);
        for (mono, _) in s.terms() {
            let expected = fiber_dim + base_dim - 2 * mono.q;
            if deg != expected {
                audit.violations.push(format!(
                    "{} ⊗ {} ⊗ q^{} t^{{{}}}: degree {deg}, expected {expected}",
                    bb[*b].label, c.model.basis[*m].label, mono.q, mono.t
                ));
            }
        }
    }
    audit
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `ν(c)`, a bound over the homotopy class of the family.
    HomotopyClass,
    /// `ν(Ψ(c))`, a bound over the bordism class of the family.
    BordismClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoferCertificate {
    pub bound: String,
    pub kind: BoundKind,
    pub source: String,
    /// Whether the class the valuation was taken of is fully determined.
    pub complete: bool,
}

impl HoferCertificate {
    pub fn bound(&self) -> Rational {
        self.bound.parse().expect("bound is rendered from a rational")
    }
}

/// Lower bound for the positive max-length measure from the valuation of the
/// total class (homotopy kind) or of its top class `Ψ` (bordism kind).
pub fn hofer_bound(c: &QCClass, kind: BoundKind) -> Result<HoferCertificate> {
    let (bound, source) = match kind {
        BoundKind::HomotopyClass => (c.valuation()?, "ν(c^q(P))".to_string()),
        BoundKind::BordismClass => (psi(c)?.valuation()?, "ν(Ψ(B, f))".to_string()),
    };
    Ok(HoferCertificate { bound: bound.to_string(), kind, source, complete: c.complete })
}
