//! Parameter spaces `B` of families: a point, even spheres and complex
//! projective spaces, each with a one-generator cohomology ring and a homology
//! basis `b_0 = [pt], ..., b_top = [B]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{BasisElement, HomologyClass, ManifoldModel, ZERO_CLASS};
use crate::novikov::parse_rational;
use crate::Rational;

pub type BaseClass = HomologyClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Point,
    /// The sphere of the stored real dimension.
    Sphere,
    /// `CP^k` with `k` half the stored real dimension.
    Projective,
}

/// A base with cohomology `Q[u]/(u^{top+1})`, `deg u = gen_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseModel {
    pub kind: BaseKind,
    pub dim: i64,
    pub euler_of_y: BaseRingElement,
    homology: Arc<ManifoldModel>,
}

/// Element of the base cohomology ring, stored by powers of the generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseRingElement {
    coeffs: Vec<Rational>,
}

impl BaseModel {
    pub fn point() -> Self {
        Self::build(BaseKind::Point, 0).expect("point is valid")
    }

    pub fn sphere(dim: i64) -> Result<Self> {
        Self::build(BaseKind::Sphere, dim)
    }

    /// `CP^k`, of real dimension `2k`.
    pub fn projective(k: i64) -> Result<Self> {
        Self::build(BaseKind::Projective, 2 * k)
    }

    /// The 2-sphere carrying the Hopf bundle, whose Euler class is Poincaré
    /// dual to `-[pt]`.
    pub fn hopf_sphere() -> Self {
        Self::sphere(2)
            .and_then(|b| b.with_euler(&-Rational::one()))
            .expect("S^2 has a degree-2 generator")
    }

    fn build(kind: BaseKind, dim: i64) -> Result<Self> {
        let (top, gen_degree) = match kind {
            BaseKind::Point if dim == 0 => (0, 2),
            BaseKind::Sphere if dim >= 2 && dim % 2 == 0 => (1, dim),
            BaseKind::Projective if dim >= 2 && dim % 2 == 0 => ((dim / 2) as usize, 2),
            _ => {
                return Err(Error::InvalidBase(format!("{kind:?} of dimension {dim}")));
            }
        };
        let labels: Vec<String> = match kind {
            BaseKind::Point => vec!["pt".into()],
            BaseKind::Sphere => vec!["pt".into(), format!("S{dim}")],
            BaseKind::Projective => (0..=top)
                .map(|j| if j == 0 { "pt".into() } else { format!("CP{j}") })
                .collect(),
        };
        let basis = labels
            .into_iter()
            .enumerate()
            .map(|(j, label)| BasisElement { label, degree: j as i64 * gen_degree })
            .collect();
        let pairing = (0..=top)
            .map(|i| (0..=top).map(|j| if i + j == top { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        // b_i ∩ b_j = b_{i+j-top}, encoded as classical triple intersections
        let mut gw3 = BTreeMap::new();
        for i in 0..=top {
            for j in 0..=top {
                for k in 0..=top {
                    if i + j + k == 2 * top {
                        gw3.insert((ZERO_CLASS.to_string(), [i, j, k]), Rational::one());
                    }
                }
            }
        }
        let name = match kind {
            BaseKind::Point => "point".to_string(),
            BaseKind::Sphere => format!("sphere({dim})"),
            BaseKind::Projective => format!("projective({})", dim / 2),
        };
        let homology = Arc::new(ManifoldModel::new(name, dim, basis, pairing, vec![], gw3));
        Ok(Self {
            kind,
            dim,
            euler_of_y: BaseRingElement::zero(top),
            homology,
        })
    }

    /// Sets the Euler class of `Y → B` to `c · u` (degree 2).
    pub fn with_euler(mut self, c: &Rational) -> Result<Self> {
        self.euler_of_y = self.h2(c)?;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.homology.name
    }

    /// Power of the generator spanning the top degree.
    pub fn top(&self) -> usize {
        self.homology.rank() - 1
    }

    pub fn generator_degree(&self) -> i64 {
        match self.kind {
            BaseKind::Sphere => self.dim,
            _ => 2,
        }
    }

    /// The homology of `B` presented as a classical model.
    pub fn homology(&self) -> &Arc<ManifoldModel> {
        &self.homology
    }

    pub fn fundamental_index(&self) -> usize {
        self.top()
    }

    /// `c · u` when `u` has degree 2; only `0` otherwise.
    pub fn h2(&self, c: &Rational) -> Result<BaseRingElement> {
        let mut e = BaseRingElement::zero(self.top());
        if c.is_zero() {
            return Ok(e);
        }
        if self.generator_degree() != 2 || self.top() == 0 {
            return Err(Error::InvalidBase(format!("{} has no degree-2 cohomology", self.name())));
        }
        e.coeffs[1] = c.clone();
        Ok(e)
    }

    /// Poincaré dual of a cohomology element: `PD(u^j) = b_{top-j}`.
    pub fn poincare_dual(&self, e: &BaseRingElement) -> BaseClass {
        let top = self.top();
        HomologyClass::from_coeffs(
            &self.homology,
            e.coeffs.iter().enumerate().map(|(j, c)| (top - j, c.clone())),
        )
    }
}

impl BaseRingElement {
    pub fn zero(top: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); top + 1] }
    }

    pub fn one(top: usize) -> Self {
        let mut e = Self::zero(top);
        e.coeffs[0] = Rational::one();
        e
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Product in `Q[u]/(u^{top+1})`.
    pub fn mul(&self, other: &Self) -> Self {
        let top = self.coeffs.len() - 1;
        let mut out = Self::zero(top);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(top + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.coeffs.len() - 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for BaseRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} u")?,
                _ => write!(f, "{c} u^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `[base]` section of a scene file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseSection {
    pub kind: BaseKind,
    #[serde(default)]
    pub dim: i64,
    /// Coefficient of the degree-2 generator, as an exact rational string.
    #[serde(default = "zero_string")]
    pub euler_of_y: String,
}

fn zero_string() -> String {
    "0".into()
}

impl BaseSection {
    pub fn into_base(self) -> Result<BaseModel> {
        let base = match self.kind {
            BaseKind::Point => BaseModel::point(),
            BaseKind::Sphere => BaseModel::sphere(self.dim)?,
            BaseKind::Projective => BaseModel::projective(self.dim / 2)?,
        };
        if self.kind == BaseKind::Projective && self.dim % 2 != 0 {
            return Err(Error::InvalidBase(format!("projective base of odd dimension {}", self.dim)));
        }
        base.with_euler(&parse_rational(&self.euler_of_y)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{qmul, QuantumElement};
    use crate::rat;

    #[test]
    fn truncated_polynomial_ring() {
        let b = BaseModel::projective(2).unwrap();
        let h = b.h2(&rat(1, 1)).unwrap();
        assert_eq!(h.pow(2).coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(h.pow(3).is_zero());
        let s = BaseModel::sphere(2).unwrap();
        assert!(s.h2(&rat(1, 1)).unwrap().pow(2).is_zero());
        assert!(BaseModel::sphere(4).unwrap().h2(&rat(1, 1)).is_err());
        assert!(BaseModel::point().h2(&rat(1, 1)).is_err());
    }

    #[test]
    fn hopf_euler_class_is_dual_to_minus_point() {
        let b = BaseModel::hopf_sphere();
        let pd = b.poincare_dual(&b.euler_of_y);
        assert_eq!(pd, HomologyClass::basis(b.homology(), 0).scale(&rat(-1, 1)));
    }

    #[test]
    fn cap_products() {
        let s = BaseModel::sphere(2).unwrap();
        let pt = QuantumElement::basis(s.homology(), 0);
        let fund = QuantumElement::basis(s.homology(), 1);
        assert!(qmul(&pt, &pt).unwrap().is_zero());
        assert_eq!(qmul(&fund, &pt).unwrap(), pt);
        let p = BaseModel::projective(3).unwrap();
        let line = QuantumElement::basis(p.homology(), 1);
        let plane = QuantumElement::basis(p.homology(), 2);
        assert_eq!(qmul(&plane, &plane).unwrap(), line);
        assert_eq!(qmul(&line, &plane).unwrap(), QuantumElement::basis(p.homology(), 0));
        assert!(qmul(&line, &line).unwrap().is_zero());
        let pt0 = QuantumElement::basis(BaseModel::point().homology(), 0);
        assert_eq!(qmul(&pt0, &pt0).unwrap(), pt0);
    }

    #[test]
    fn invalid_bases() {
        assert!(BaseModel::sphere(3).is_err());
        assert!(BaseModel::projective(0).is_err());
    }
}
