//! Seidel elements of Hamiltonian circle actions, from the data at the
//! maximal fixed point set.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{HomologyClass, ManifoldModel};
use crate::novikov::{parse_rational, NovikovScalar};
use crate::obstruction::virtual_index;
use crate::quantum::QuantumElement;
use crate::{rat, Rational};

/// A lower-order term `a_B ⊗ q^{-m_max - c1} t^{h_max - omega}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Correction {
    pub class: HomologyClass,
    pub c1: i64,
    pub omega: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleAction {
    pub name: String,
    pub model: Arc<ManifoldModel>,
    /// Weights of the linearised action at `F_max`, one per complex
    /// direction; `0` along `F_max` itself.
    pub weights: Vec<i64>,
    pub f_max: HomologyClass,
    /// Maximum of the Hamiltonian normalised to have zero mean.
    pub h_max: Rational,
    /// `None` means only the leading term is known.
    pub corrections: Option<Vec<Correction>>,
}

impl CircleAction {
    pub fn m_max(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn is_semifree(&self) -> bool {
        self.weights.iter().all(|&k| k == 0 || k == -1)
    }

    /// Whether only the leading term of the Seidel element is available.
    pub fn is_leading_term_only(&self) -> bool {
        self.corrections.is_none()
    }

    /// Checks arity, sign of the weights and the degree of `[F_max]`.
    pub fn validate(&self) -> Result<()> {
        let n = (self.model.dim / 2) as usize;
        if self.weights.len() != n {
            return Err(Error::InvalidAction(format!(
                "{} weights given for a manifold of complex dimension {n}",
                self.weights.len()
            )));
        }
        if let Some((i, k)) = self.weights.iter().enumerate().find(|(_, &k)| k > 0) {
            return Err(Error::InvalidAction(format!("weight {k} at position {i} is positive")));
        }
        if !Arc::ptr_eq(&self.model, &self.f_max.model) && *self.model != *self.f_max.model {
            return Err(Error::InvalidAction("F_max class lives in another model".into()));
        }
        let zeros = self.weights.iter().filter(|&&k| k == 0).count() as i64;
        match self.f_max.degree() {
            None => Err(Error::InvalidAction("F_max must be a nonzero homogeneous class".into())),
            Some(d) if d != 2 * zeros => Err(Error::InvalidAction(format!(
                "F_max has degree {d} but {zeros} weight(s) vanish, so its degree must be {}",
                2 * zeros
            ))),
            Some(_) => Ok(()),
        }
    }

    /// Degree of the leading term, `deg [F_max] - 2 m_max`. It equals
    /// `2n + I(γ)` and is `2n` exactly for semifree maxima.
    pub fn leading_degree(&self) -> i64 {
        self.f_max.degree().unwrap_or(0) - 2 * self.m_max()
    }

    /// `2n + I(γ)`, the degree any Seidel-type class of this action carries.
    pub fn expected_degree(&self) -> Result<i64> {
        Ok(self.model.dim + virtual_index(&self.weights)?)
    }

    /// The trivial loop: all weights zero, `F_max = [M]`, `H = 0`.
    pub fn trivial(model: &Arc<ManifoldModel>) -> Result<Self> {
        let top = model
            .fundamental_index()
            .ok_or_else(|| Error::InvalidModel("no fundamental class".into()))?;
        Ok(Self {
            name: "trivial".into(),
            model: model.clone(),
            weights: vec![0; (model.dim / 2) as usize],
            f_max: HomologyClass::basis(model, top),
            h_max: Rational::zero(),
            corrections: None,
        })
    }

    /// Rotation of the first homogeneous coordinate of `CP^n`,
    /// `[z_0 : ... : z_n] ↦ [e^{2πiθ} z_0 : z_1 : ... : z_n]`.
    ///
    /// The maximum is the point `[1 : 0 : ... : 0]` with all weights `-1`.
    /// With `ω(L) = 1` the Hamiltonian is affine on the moment simplex and
    /// takes the values `x` at the maximum and `x - 1` at the other `n`
    /// vertices; zero mean over the simplex forces `x = n / (n + 1)`.
    pub fn cpn_rotation(model: &Arc<ManifoldModel>) -> Result<Self> {
        let n = cpn_order(model)?;
        Ok(Self {
            name: format!("rotation(cpn:{n})"),
            model: model.clone(),
            weights: vec![-1; n],
            f_max: HomologyClass::basis(model, 0),
            h_max: rat(n as i64, n as i64 + 1),
            corrections: None,
        })
    }

    /// The circle `[z_0 : z_1 : ...] ↦ [e^{iθ} z_0 : e^{-iθ} z_1 : z_2 : ...]`
    /// inside the `SU(2)` action on the first two coordinates of `CP^n`.
    ///
    /// Weights at the maximum `[1 : 0 : ... : 0]` are `(-2, -1, ..., -1)`.
    /// Along the fixed spheres of area 1 the Hamiltonian drops by the weight,
    /// so it takes the values `x`, `x - 2` and `x - 1` (the latter `n - 1`
    /// times); the vertex average vanishes for `x = 1`.
    pub fn cpn_su2(model: &Arc<ManifoldModel>) -> Result<Self> {
        let n = cpn_order(model)?;
        let mut weights = vec![-1; n];
        weights[0] = -2;
        Ok(Self {
            name: format!("su2(cpn:{n})"),
            model: model.clone(),
            weights,
            f_max: HomologyClass::basis(model, 0),
            h_max: Rational::one(),
            corrections: None,
        })
    }
}

fn cpn_order(model: &ManifoldModel) -> Result<usize> {
    model
        .name
        .strip_prefix("cpn:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::InvalidAction(format!("preset needs a cpn model, got {}", model.name)))
}

/// `[F_max] ⊗ q^{-m_max} t^{h_max}`.
pub fn seidel_leading(action: &CircleAction) -> Result<QuantumElement> {
    action.validate()?;
    let s = NovikovScalar::monomial(Rational::one(), -action.m_max(), action.h_max.clone());
    Ok(QuantumElement::from_class(&action.f_max, &s))
}

/// Leading term plus the supplied corrections
/// `a_B ⊗ q^{-m_max - c1(B)} t^{h_max - ω(B)}`.
pub fn seidel_full(action: &CircleAction) -> Result<QuantumElement> {
    let mut s = seidel_leading(action)?;
    for (index, c) in action.corrections.iter().flatten().enumerate() {
        if c.omega <= Rational::zero() {
            return Err(Error::CorrectionOrderViolation { index, omega: c.omega.to_string() });
        }
        let w = NovikovScalar::monomial(
            Rational::one(),
            -action.m_max() - c.c1,
            &action.h_max - &c.omega,
        );
        s = s.add(&QuantumElement::from_class(&c.class, &w))?;
    }
    Ok(s)
}

/// Lower bound for the positive Hofer length of the loop: the valuation of
/// its Seidel element.
pub fn loop_hofer_bound(action: &CircleAction) -> Result<Rational> {
    seidel_full(action)?.valuation()
}

/// `[action]` section of a scene file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionSection {
    #[serde(default = "default_name")]
    pub name: String,
    pub weights: Vec<i64>,
    pub h_max: String,
    /// Basis label → coefficient.
    pub f_max: BTreeMap<String, String>,
    #[serde(default)]
    pub corrections: Option<Vec<CorrectionSection>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionSection {
    pub class: BTreeMap<String, String>,
    pub c1: i64,
    pub omega: String,
}

fn default_name() -> String {
    "action".into()
}

fn class_from_map(model: &Arc<ManifoldModel>, m: &BTreeMap<String, String>) -> Result<HomologyClass> {
    let mut items = Vec::new();
    for (label, c) in m {
        items.push((model.index_of(label)?, parse_rational(c)?));
    }
    Ok(HomologyClass::from_coeffs(model, items))
}

impl ActionSection {
    pub fn into_action(self, model: &Arc<ManifoldModel>) -> Result<CircleAction> {
        let corrections = match self.corrections {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|c| {
                        Ok(Correction {
                            class: class_from_map(model, &c.class)?,
                            c1: c.c1,
                            omega: parse_rational(&c.omega)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(CircleAction {
            name: self.name,
            model: model.clone(),
            weights: self.weights,
            f_max: class_from_map(model, &self.f_max)?,
            h_max: parse_rational(&self.h_max)?,
            corrections,
        })
    }
}
