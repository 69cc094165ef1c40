//! Virtual index and the Euler class of the obstruction bundle over the
//! moduli space of maximal sections, together with the leading-order
//! characteristic class it produces and the minimality criterion built on it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::base::{BaseModel, BaseRingElement};
use crate::error::{Error, Result};
use crate::novikov::NovikovScalar;
use crate::qcalg::QCClass;
use crate::seidel::CircleAction;
use crate::Rational;

/// `I(γ) = Σ_{k_i ≤ -1} 2(|k_i| - 1)`.
pub fn virtual_index(weights: &[i64]) -> Result<i64> {
    let mut total = 0;
    for (index, &k) in weights.iter().enumerate() {
        if k > 0 {
            return Err(Error::PositiveWeightAtMax { index, weight: k });
        }
        if k <= -1 {
            total += 2 * (k.abs() - 1);
        }
    }
    Ok(total)
}

/// `n_i = -k_i - 2`; the `i`-th block of the obstruction bundle has rank
/// `n_i + 1` when this is nonnegative and is absent otherwise.
pub fn block_sizes(weights: &[i64]) -> Vec<i64> {
    weights.iter().map(|k| -k - 2).collect()
}

/// Polynomial over `Q` in the free generators `eK, eL_1, ..., eL_n`, all of
/// degree 2. Exponent vectors are indexed `[eK, eL_1, ..., eL_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObstructionPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ObstructionPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The generator with index `var` (0 is `eK`).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Highest power of `eK` present.
    pub fn ek_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[0]).max().unwrap_or(0)
    }

    /// Coefficient of `eK^p`, a polynomial in the `eL_i` (with `eK` absent).
    pub fn ek_coefficient(&self, p: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[0] == p {
                let mut e = e.clone();
                e[0] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Substitutes a base cohomology class for every generator.
    pub fn evaluate(&self, values: &[BaseRingElement], top: usize) -> BaseRingElement {
        let mut acc = BaseRingElement::zero(top);
        for (e, c) in &self.terms {
            let mut term = BaseRingElement::one(top).scale(c);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&v.pow(k));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Display for ObstructionPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // higher total degree first, then by exponent vector descending
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                let name = if v == 0 { "eK".to_string() } else { format!("eL{v}") };
                match k {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&factors.join(" "))?;
            } else {
                write!(f, "{c} {}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

/// The Euler class of the obstruction bundle: the free product expansion and
/// its image in `H^*(B × F_max) = H^*(B)` (with `F_max` a point).
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionRingElement {
    pub free: ObstructionPoly,
    pub reduced: BaseRingElement,
    /// Values substituted for `[eK, eL_1, ..., eL_n]`.
    pub substitution: Vec<BaseRingElement>,
}

/// `e(E) = ∏_i ∏_{0 ≤ j ≤ n_i} ((j + 1) eK + eL_i)` with `n_i = -k_i - 2`,
/// reduced in the base ring after `eK ↦ e(Y → B)` and `eL_i ↦ c_i · u`.
pub fn euler_obstruction(
    action: &CircleAction,
    base: &BaseModel,
    el: &[Rational],
) -> Result<ObstructionRingElement> {
    virtual_index(&action.weights)?;
    if el.len() != action.weights.len() {
        return Err(Error::ArityMismatch { expected: action.weights.len(), got: el.len() });
    }
    let free = euler_product(&action.weights);
    let mut substitution = vec![base.euler_of_y.clone()];
    for c in el {
        substitution.push(base.h2(c)?);
    }
    let reduced = free.evaluate(&substitution, base.top());
    Ok(ObstructionRingElement { free, reduced, substitution })
}

/// The product of linear factors in the free polynomial ring.
pub fn euler_product(weights: &[i64]) -> ObstructionPoly {
    let nvars = weights.len() + 1;
    let ek = ObstructionPoly::var(nvars, 0);
    let mut e = ObstructionPoly::one(nvars);
    for (i, n) in block_sizes(weights).into_iter().enumerate() {
        let el = ObstructionPoly::var(nvars, i + 1);
        for j in 0..=n {
            // empty when n < 0
            let factor = ek.scale(&Rational::from_integer((j + 1).into())).add(&el);
            e = e.mul(&factor);
        }
    }
    e
}

/// Coefficients `a_p` of `e(E) = Σ_p eK^p · a_p`, from `p = I(γ)/2` down to 0.
pub fn expand_euler(e: &ObstructionRingElement) -> Vec<(u32, ObstructionPoly)> {
    let top = e.free.ek_degree();
    (0..=top).rev().map(|p| (p, e.free.ek_coefficient(p))).collect()
}

/// The images `eK^p ∪ a_p` in the base ring, same order as [`expand_euler`].
pub fn reduced_expansion(e: &ObstructionRingElement, top: usize) -> Vec<(u32, BaseRingElement)> {
    expand_euler(e)
        .into_iter()
        .map(|(p, a)| {
            let ek = e.substitution[0].pow(p);
            (p, ek.mul(&a.evaluate(&e.substitution, top)))
        })
        .collect()
}

/// Leading-order total class `PD_{B × F_max} e(E) ⊗ q^{-m_max} t^{h_max}` of
/// the family generated by the action over `B`; lower `t`-order terms are not
/// determined and the result is marked incomplete.
pub fn leading_qc_class(action: &CircleAction, base: &BaseModel, el: &[Rational]) -> Result<QCClass> {
    action.validate()?;
    if action.f_max.degree() != Some(0) {
        return Err(Error::UnsupportedFmax(format!(
            "F_max = {} is not a point class",
            action.f_max
        )));
    }
    let e = euler_obstruction(action, base, el)?;
    let pd = base.poincare_dual(&e.reduced);
    let weight = NovikovScalar::monomial(Rational::one(), -action.m_max(), action.h_max.clone());
    let mut class = QCClass::zero(base, &action.model);
    for (b, cb) in pd.coeffs() {
        for (f, cf) in action.f_max.coeffs() {
            class.add_term(*b, *f, &weight.scale(&(cb * cf)));
        }
    }
    class.complete = false;
    Ok(class)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityVerdict {
    pub certified: bool,
    pub virtual_index: i64,
    pub base_dim: i64,
    /// `e^{dim B / 2} ≠ 0`; `None` when `B` is a point.
    pub euler_power_nonzero: Option<bool>,
    /// The lower bound `h_max` on the positive max-length measure.
    pub bound: String,
}

impl fmt::Display for MinimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, d) = (self.virtual_index, self.base_dim);
        let index = if i == d {
            format!("I(γ)={i}=dim B")
        } else {
            format!("I(γ)={i}≠{d}=dim B")
        };
        let euler = match self.euler_power_nonzero {
            None => "dim B = 0".to_string(),
            Some(true) => format!("e^{} ≠ 0", d / 2),
            Some(false) => format!("e^{} = 0", d / 2),
        };
        if self.certified {
            write!(f, "CERTIFIED: {index}; {euler}; bound L^+ ≥ h_max = {}", self.bound)
        } else {
            write!(f, "NOT CERTIFIED: {index}; {euler}")
        }
    }
}

/// Certifies that the cycle induced by the action over `B` minimises the
/// positive max-length measure in its bordism class: `I(γ) = dim B` and
/// `e^{dim B / 2} ≠ 0` (or `dim B = 0`).
pub fn minimality_certificate(action: &CircleAction, base: &BaseModel) -> Result<MinimalityVerdict> {
    let index = virtual_index(&action.weights)?;
    let euler_power_nonzero = (base.dim != 0).then(|| {
        let k = (base.dim / 2) as u32;
        !base.euler_of_y.pow(k).is_zero()
    });
    let certified = index == base.dim && euler_power_nonzero.unwrap_or(true);
    Ok(MinimalityVerdict {
        certified,
        virtual_index: index,
        base_dim: base.dim,
        euler_power_nonzero,
        bound: action.h_max.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::preset_cpn;
    use crate::rat;
    use std::sync::Arc;

    #[test]
    fn index_examples() {
        assert_eq!(virtual_index(&[-2, -1, -1]).unwrap(), 2);
        assert_eq!(virtual_index(&[-1, -1, -1]).unwrap(), 0);
        assert_eq!(virtual_index(&[-3, -2]).unwrap(), 6);
        assert_eq!(
            virtual_index(&[-1, 2]),
            Err(Error::PositiveWeightAtMax { index: 1, weight: 2 })
        );
    }

    #[test]
    fn hopf_example_euler_class() {
        let m = Arc::new(preset_cpn(3).unwrap());
        let a = CircleAction::cpn_su2(&m).unwrap();
        let base = BaseModel::hopf_sphere();
        let e = euler_obstruction(&a, &base, &vec![rat(0, 1); 3]).unwrap();
        assert_eq!(e.free, ObstructionPoly::var(4, 0).add(&ObstructionPoly::var(4, 1)));
        assert_eq!(e.reduced, base.euler_of_y);
        let exp = expand_euler(&e);
        assert_eq!(exp, vec![(1, ObstructionPoly::one(4)), (0, ObstructionPoly::var(4, 1))]);
    }

    #[test]
    fn semifree_euler_class_is_one() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let a = CircleAction::cpn_rotation(&m).unwrap();
        let e = euler_obstruction(&a, &BaseModel::point(), &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(e.free, ObstructionPoly::one(3));
        assert_eq!(expand_euler(&e), vec![(0, ObstructionPoly::one(3))]);
    }

    #[test]
    fn weight_minus_three_over_projective_plane() {
        // oracle: eK = λh, eL = ch gives (λ + c)(2λ + c) h^2
        let m = Arc::new(preset_cpn(1).unwrap());
        let mut a = CircleAction::cpn_rotation(&m).unwrap();
        a.weights = vec![-3];
        let (lambda, c) = (rat(3, 2), rat(-2, 1));
        let base = BaseModel::projective(2).unwrap().with_euler(&lambda).unwrap();
        let e = euler_obstruction(&a, &base, std::slice::from_ref(&c)).unwrap();
        let expect = (&lambda + &c) * (rat(2, 1) * &lambda + &c);
        assert_eq!(e.reduced.coeffs(), &[rat(0, 1), rat(0, 1), expect]);
        let exp = expand_euler(&e);
        assert_eq!(exp[0], (2, ObstructionPoly::constant(2, rat(2, 1))));
        assert_eq!(e.free.to_string(), "2 eK^2 + 3 eK eL1 + eL1^2");
    }

    #[test]
    fn arity_is_checked() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let a = CircleAction::cpn_su2(&m).unwrap();
        assert_eq!(
            euler_obstruction(&a, &BaseModel::hopf_sphere(), &[rat(0, 1)]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn leading_class_over_hopf_sphere() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let a = CircleAction::cpn_su2(&m).unwrap();
        let base = BaseModel::hopf_sphere();
        let c = leading_qc_class(&a, &base, &[rat(0, 1), rat(0, 1)]).unwrap();
        let mut expect = QCClass::zero(&base, &m);
        expect.add_term(0, 0, &NovikovScalar::monomial(rat(-1, 1), 3, rat(1, 1)));
        assert_eq!(c.coeffs(), expect.coeffs());
        assert!(!c.complete);
    }

    #[test]
    fn leading_class_needs_point_fmax() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let a = CircleAction::trivial(&m).unwrap();
        assert!(matches!(
            leading_qc_class(&a, &BaseModel::point(), &[rat(0, 1), rat(0, 1)]),
            Err(Error::UnsupportedFmax(_))
        ));
    }

    #[test]
    fn vanishing_euler_class_gives_zero() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let a = CircleAction::cpn_su2(&m).unwrap();
        let base = BaseModel::sphere(2).unwrap();
        let c = leading_qc_class(&a, &base, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert!(c.is_zero());
        assert!(!c.complete);
    }

    #[test]
    fn certificates() {
        let m = Arc::new(preset_cpn(2).unwrap());
        let su2 = CircleAction::cpn_su2(&m).unwrap();
        let v = minimality_certificate(&su2, &BaseModel::hopf_sphere()).unwrap();
        assert!(v.certified);
        assert_eq!(v.to_string(), "CERTIFIED: I(γ)=2=dim B; e^1 ≠ 0; bound L^+ ≥ h_max = 1");
        let rot = CircleAction::cpn_rotation(&m).unwrap();
        assert!(!minimality_certificate(&rot, &BaseModel::hopf_sphere()).unwrap().certified);
        assert!(!minimality_certificate(&su2, &BaseModel::sphere(2).unwrap()).unwrap().certified);
        let point = minimality_certificate(&rot, &BaseModel::point()).unwrap();
        assert!(point.certified);
        assert_eq!(point.euler_power_nonzero, None);
    }
}
