use std::sync::Arc;

use super::{ModuleLabel, WeightModule};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, UniPoly};
use crate::grouprep::{char_eval_unchecked, char_mul, check_character, Character};
use crate::hopfcore::{HopfPresentation, QuotientSpec};

fn ladder_weights<F: Field>(hopf: &HopfPresentation<F>, lambda: &Character<F::Elem>, d: usize) -> Vec<Character<F::Elem>> {
    let f = hopf.field();
    let mut out = Vec::with_capacity(d);
    let mut cur = lambda.clone();
    for _ in 0..d {
        out.push(cur.clone());
        cur = char_mul(f, hopf.chi(), &cur);
    }
    out
}

fn lambda_a_n<F: Field>(hopf: &HopfPresentation<F>, lambda: &Character<F::Elem>, n: u32) -> F::Elem {
    let f = hopf.field();
    f.pow(&char_eval_unchecked(f, lambda, hopf.a()), n as u64)
}

fn check_lambda<F: Field>(hopf: &HopfPresentation<F>, lambda: &Character<F::Elem>) -> Result<()> {
    hopf.require_weight_setting()?;
    check_character(hopf.field(), hopf.group(), lambda)
}

/// `V_λ`: `g·v = λ(g)v`, `x·v = 0`. Under `PowerCentral` this is a module
/// over the quotient only when `λ(a)ⁿ = 1`; [`verify`](WeightModule::verify)
/// reports the failure otherwise.
pub fn make_simple_onedim<F: Field>(hopf: &Arc<HopfPresentation<F>>, lambda: &Character<F::Elem>) -> Result<WeightModule<F>> {
    check_lambda(hopf, lambda)?;
    let f = hopf.field();
    WeightModule::new_unchecked(hopf.clone(), vec![lambda.clone()], Matrix::zeros(f, 1, 1))
}

/// `V_t(λ)`: basis `m_0, …, m_{t−1}` of weights `χⁱλ`, `x·m_i = m_{i+1}`,
/// `x·m_{t−1} = 0`.
pub fn make_serial<F: Field>(hopf: &Arc<HopfPresentation<F>>, lambda: &Character<F::Elem>, t: u32) -> Result<WeightModule<F>> {
    check_lambda(hopf, lambda)?;
    if t == 0 {
        return Err(Error::InvalidModule("V_t(λ) needs t ≥ 1".into()));
    }
    match hopf.quotient() {
        QuotientSpec::None => {}
        QuotientSpec::PowerZero(n) => {
            if t > *n {
                return Err(Error::InvalidModule(format!(
                    "V_{t}(λ) is not a module over the quotient by ⟨x^{n}⟩: need t ≤ {n}"
                )));
            }
        }
        QuotientSpec::PowerCentral(n, _) => {
            if t > *n {
                return Err(Error::InvalidModule(format!(
                    "V_{t}(λ) is not a module over the quotient: need t ≤ {n}"
                )));
            }
            if !hopf.field().is_one(&lambda_a_n(hopf, lambda, *n)) {
                return Err(Error::InvalidModule(format!(
                    "V_{t}(λ) is not a module over the quotient: need λ(a)^{n} = 1"
                )));
            }
        }
    }
    let f = hopf.field();
    let d = t as usize;
    let mut x = Matrix::zeros(f, d, d);
    for i in 0..d.saturating_sub(1) {
        x.set(i + 1, i, f.one());
    }
    WeightModule::new_unchecked(hopf.clone(), ladder_weights(hopf, lambda, d), x)
}

/// `V(λ, f^r)`: basis `m_0, …, m_{Ns−1}` with `N = deg f^r`, weights
/// `χⁱλ`, `x·m_i = m_{i+1}` and `x·m_{Ns−1} = Σ c_j m_{js}` where
/// `f^r = y^N − Σ c_j y^j`. Any monic `f` is accepted, including `y`.
pub fn make_block<F: Field>(
    hopf: &Arc<HopfPresentation<F>>,
    lambda: &Character<F::Elem>,
    f_poly: &UniPoly<F::Elem>,
    r: u32,
) -> Result<WeightModule<F>> {
    check_lambda(hopf, lambda)?;
    let f = hopf.field();
    if r == 0 {
        return Err(Error::InvalidModule("V(λ, f^r) needs r ≥ 1".into()));
    }
    if !f_poly.is_monic(f) || f_poly.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidModule(format!(
            "V(λ, f) needs f monic of degree ≥ 1, got {}",
            f_poly.format(f)
        )));
    }
    let s = hopf.s() as usize;
    let fr = f_poly.pow(f, r as u64);
    let big_n = fr.degree().expect("nonzero");
    let d = big_n * s;
    let mut x = Matrix::zeros(f, d, d);
    for i in 0..d - 1 {
        x.set(i + 1, i, f.one());
    }
    for j in 0..big_n {
        x.set(j * s, d - 1, f.neg(&fr.coeff(f, j)));
    }
    let m = WeightModule::new_unchecked(hopf.clone(), ladder_weights(hopf, lambda, d), x)?;
    if hopf.quotient().n().is_some() {
        if let Some(v) = m.verify().violations.first() {
            return Err(Error::InvalidModule(format!(
                "V(λ, {}) is not a module over the quotient: {}",
                fr.format(f),
                v.detail
            )));
        }
    }
    Ok(m)
}

/// The finite quotient of the Verma module `M(λ)` by the Hopf ideal.
pub fn make_verma_quotient<F: Field>(hopf: &Arc<HopfPresentation<F>>, lambda: &Character<F::Elem>) -> Result<WeightModule<F>> {
    check_lambda(hopf, lambda)?;
    match hopf.quotient() {
        QuotientSpec::None => Err(Error::Unsupported(
            "the Verma module of the unquotiented algebra is infinite-dimensional".into(),
        )),
        QuotientSpec::PowerZero(n) => make_serial(hopf, lambda, *n),
        QuotientSpec::PowerCentral(n, beta) => {
            let f = hopf.field();
            let lan = lambda_a_n(hopf, lambda, *n);
            if f.is_one(&lan) {
                make_serial(hopf, lambda, *n)
            } else {
                let c = f.mul(beta, &f.sub(&f.one(), &lan));
                make_block(hopf, lambda, &UniPoly::linear(f, &c), 1)
            }
        }
    }
}

/// The standard module carrying a label.
pub fn make_labeled<F: Field>(hopf: &Arc<HopfPresentation<F>>, label: &ModuleLabel<F::Elem>) -> Result<WeightModule<F>> {
    match label {
        ModuleLabel::Simple1 { lambda } => make_simple_onedim(hopf, lambda),
        ModuleLabel::Serial { lambda, t } => make_serial(hopf, lambda, *t),
        ModuleLabel::Block { coset, f, r } => make_block(hopf, &coset.rep, f, *r),
    }
}
