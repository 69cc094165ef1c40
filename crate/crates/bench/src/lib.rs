//! Inputs shared by the criterion benchmarks in `benches/`.

use std::sync::Arc;

use qclass_core::{
    leading_qc_class, preset_cpn, rat, BaseModel, CircleAction, QCClass, QuantumElement,
};

/// The basis of `QH_*(CP^n)`.
pub fn cpn_basis(n: usize) -> Vec<QuantumElement> {
    let m = Arc::new(preset_cpn(n).expect("cpn preset"));
    (0..=n).map(|i| QuantumElement::basis(&m, i)).collect()
}

/// `[M] + [pt] q^3 t^{-1/2}` in `CP^3`, invertible as a series.
pub fn series_element() -> QuantumElement {
    let m = Arc::new(preset_cpn(3).expect("cpn preset"));
    QuantumElement::unit(&m)
        .expect("unit")
        .add(&QuantumElement::monomial(&m, 0, 3, rat(-1, 2)))
        .expect("same model")
}

/// A leading class over `CP^2` and its sum with the unit.
pub fn qc_pair() -> (QCClass, QCClass) {
    let m = Arc::new(preset_cpn(2).expect("cpn preset"));
    let base = BaseModel::projective(2).and_then(|b| b.with_euler(&rat(1, 1))).expect("base");
    let mut action = CircleAction::cpn_su2(&m).expect("su2 preset");
    action.weights = vec![-3, -1];
    let x = leading_qc_class(&action, &base, &[rat(1, 1), rat(0, 1)]).expect("leading class");
    let y = QCClass::unit(&base, &m).expect("unit").add(&x).expect("same model");
    (x, y)
}
