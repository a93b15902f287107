//! Zeeman games: 3- and 4-strategy games built from a prescribed spectrum
//! plus an anti-potential (cyclic) perturbation, in which a pure ESS can
//! coexist with an asymptotically stable interior rest point.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::bases::basis_n;
use crate::error::{GameError, Result};
use crate::game::projection_matrix;
use crate::game::MatrixGame;
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zeeman3Params {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zeeman4Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteriorType {
    Sink,
    Center,
    Source,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex<f64>> for ComplexValue {
    fn from(c: Complex<f64>) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeemanReport {
    /// Strategy (1-based) found to be a strict Nash equilibrium of the
    /// constructed matrix, hence an ESS.
    pub ess_strategy: Option<usize>,
    /// The ESS predicted by the parameter inequalities.
    pub closed_form_ess: Option<usize>,
    pub interior_type: InteriorType,
    /// Spectrum of the Jacobian `A / n` at the barycenter, sorted by real part.
    pub jacobian_eigenvalues: Vec<ComplexValue>,
}

/// `R = I - P + (cos t I + sin t N / sqrt 3) P` with `N` Rock-Paper-Scissors:
/// a rotation by `t` about the axis `1`.
pub fn rotation_matrix(theta: f64) -> DMatrix<f64> {
    let p = projection_matrix(3).expect("l = 3");
    let n = basis_n(3, 2, 3).expect("valid index");
    let id = DMatrix::<f64>::identity(3, 3);
    let rot = &id * theta.cos() + n * (theta.sin() / 3f64.sqrt());
    &id - &p + rot * p
}

fn eigvec3() -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 1.0, 1.0, 0.0, -2.0, 1.0, -1.0, 1.0])
}

fn cyclic3() -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[0.0, 1.0, -1.0, -1.0, 0.0, 1.0, 1.0, -1.0, 0.0])
}

fn invert(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone()
        .try_inverse()
        .expect("eigenvector matrix is invertible")
}

pub fn zeeman3(p: &Zeeman3Params) -> MatrixGame {
    let r = rotation_matrix(p.theta);
    let e = eigvec3();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        0.0,
        2.0 * p.alpha,
        2.0 * p.beta,
    ]));
    let a = &r * &e * d * invert(&e) * invert(&r) + cyclic3() * p.eta;
    MatrixGame::from_valid(a)
}

/// The `theta = 0` matrix written out entrywise.
pub fn zeeman3_closed_form_theta0(alpha: f64, beta: f64, eta: f64) -> DMatrix<f64> {
    let (a, b, e) = (alpha, beta, eta);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            3.0 * a + b,
            -2.0 * b + 3.0 * e,
            -3.0 * a + b - 3.0 * e,
            -2.0 * b - 3.0 * e,
            4.0 * b,
            -2.0 * b + 3.0 * e,
            -3.0 * a + b + 3.0 * e,
            -2.0 * b - 3.0 * e,
            3.0 * a + b,
        ],
    ) / 3.0
}

/// Jacobian of the replicator field at the barycenter, `A / n`, valid when
/// all row and column sums of `A` vanish.
pub fn jacobian_at_barycenter(g: &MatrixGame, tol: &Tolerances) -> Result<DMatrix<f64>> {
    let a = g.payoff();
    let n = g.strategies();
    let rows = a.column_sum().norm();
    let cols = a.row_sum().norm();
    let residual = rows.max(cols);
    if residual > tol.classify * g.norm() + tol.abs {
        return Err(GameError::Precondition {
            message: format!(
                "row/column sums must vanish: ||A1|| = {rows:e}, ||1^T A|| = {cols:e}"
            ),
            residual,
        });
    }
    Ok(a / n as f64)
}

/// Strategies `s` with `a(s, s) > a(k, s) + margin` for every `k != s`, 1-based.
pub fn strict_pure_nash(a: &DMatrix<f64>, margin: f64) -> Vec<usize> {
    let l = a.nrows();
    (0..l)
        .filter(|&s| (0..l).all(|k| k == s || a[(s, s)] > a[(k, s)] + margin))
        .map(|s| s + 1)
        .collect()
}

fn sorted_spectrum(j: &DMatrix<f64>) -> Vec<ComplexValue> {
    let mut ev: Vec<ComplexValue> = j
        .complex_eigenvalues()
        .iter()
        .map(|c| (*c).into())
        .collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}

fn scale(params: &[f64]) -> f64 {
    params.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

pub fn zeeman3_classify(p: &Zeeman3Params, tol: &Tolerances) -> ZeemanReport {
    let g = zeeman3(p);
    let s = scale(&[p.alpha, p.beta, p.eta]);
    let m1 = tol.classify * s;
    let m2 = tol.classify * s * s;

    let closed_form_ess =
        (-(p.alpha + p.beta) + m1 < p.eta && p.eta < 2.0 * p.alpha - m1).then_some(1);
    let ess_strategy = strict_pure_nash(g.payoff(), m1).first().copied();

    let disc = (p.alpha - p.beta).powi(2) - 3.0 * p.eta * p.eta;
    let trace = p.alpha + p.beta;
    let interior_type = if disc < -m2 {
        if trace < -m1 {
            InteriorType::Sink
        } else if trace > m1 {
            InteriorType::Source
        } else {
            InteriorType::Center
        }
    } else {
        InteriorType::Indeterminate
    };
    ZeemanReport {
        ess_strategy,
        closed_form_ess,
        interior_type,
        jacobian_eigenvalues: sorted_spectrum(&(g.payoff() / 3.0)),
    }
}

fn eigvec4() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0, 1.0, 1.0, 1.0, //
            1.0, 0.0, 0.0, -3.0, //
            1.0, 0.0, -2.0, 1.0, //
            1.0, -1.0, 1.0, 1.0,
        ],
    )
}

fn cyclic4() -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, 1.0, 0.0, -1.0, //
            -1.0, 0.0, 1.0, 0.0, //
            0.0, -1.0, 0.0, 1.0, //
            1.0, 0.0, -1.0, 0.0,
        ],
    )
}

pub fn zeeman4(p: &Zeeman4Params) -> MatrixGame {
    let e = eigvec4();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        0.0, p.alpha, p.beta, p.gamma,
    ]));
    let a = &e * d * invert(&e) + cyclic4() * p.eta;
    MatrixGame::from_valid(a)
}

/// Coefficients of `phi(t) = t^4 + c3 t^3 + c2 t^2 + c1 t + c0`, highest first.
pub fn zeeman4_char_poly(p: &Zeeman4Params) -> [f64; 5] {
    let Zeeman4Params {
        alpha: a,
        beta: b,
        gamma: c,
        eta: e,
    } = *p;
    let e2 = e * e;
    [
        1.0,
        -(a + b + c),
        a * b + b * c + c * a + 4.0 * e2,
        -a * b * c - (6.0 * a + 2.0 * b + 4.0 * c) * e2 / 3.0,
        0.0,
    ]
}

/// Characteristic polynomial `det(t I - A)` by Faddeev-LeVerrier, highest
/// degree first.
pub fn characteristic_polynomial(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut coeffs = vec![1.0];
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut c = 1.0;
    for k in 1..=n {
        m = a * &m + &id * c;
        c = -(a * &m).trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// The four Routh-Hurwitz inequalities for the cubic factor of `phi`, in the order
/// `alpha+beta+gamma < 0`, `alpha beta + beta gamma + gamma alpha + 4 eta^2 > 0`,
/// `3 alpha beta gamma + (6 alpha + 2 beta + 4 gamma) eta^2 < 0`, and the
/// Hurwitz determinant condition. All strict with margin `margin(degree)`.
pub fn routh_hurwitz_4(p: &Zeeman4Params, tol: &Tolerances) -> [bool; 4] {
    let [_, c3, c2, c1, _] = zeeman4_char_poly(p);
    let (a2, a1, a0) = (c3, c2, c1);
    let s = scale(&[p.alpha, p.beta, p.gamma, p.eta]);
    let m = |deg: i32| tol.classify * s.powi(deg);
    [a2 > m(1), a1 > m(2), a0 > m(3), a2 * a1 - a0 > m(3)]
}

pub fn zeeman4_classify(p: &Zeeman4Params, tol: &Tolerances) -> ZeemanReport {
    let g = zeeman4(p);
    let s = scale(&[p.alpha, p.beta, p.gamma, p.eta]);
    let m1 = tol.classify * s;
    let closed_form_ess =
        (p.gamma > m1 && -p.gamma + m1 < p.eta && p.eta < p.gamma - m1).then_some(2);
    let ess_strategy = strict_pure_nash(g.payoff(), m1).first().copied();

    let interior_type = if routh_hurwitz_4(p, tol).iter().all(|c| *c) {
        InteriorType::Sink
    } else {
        // all roots of the cubic in the right half plane
        let [_, a2, a1, a0, _] = zeeman4_char_poly(p);
        let m = |deg: i32| tol.classify * s.powi(deg);
        if -a2 > m(1) && a1 > m(2) && -a0 > m(3) && a2 * a1 - a0 < -m(3) {
            InteriorType::Source
        } else {
            InteriorType::Indeterminate
        }
    };
    ZeemanReport {
        ess_strategy,
        closed_form_ess,
        interior_type,
        jacobian_eigenvalues: sorted_spectrum(&(g.payoff() / 4.0)),
    }
}
