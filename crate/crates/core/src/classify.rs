//! Classification of games: potential / zero-sum criteria, stability
//! flags from the spectrum of the anti-zero-sum part, closed-form 3x3
//! criteria and the sign-pattern digraph of anti-potential games.
//!
//! Every threshold is `tol.classify * ||g||_F`, so all boolean outputs are
//! invariant under positive rescaling of the game.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::decompose::{decompose_bimatrix, decompose_matrix, gamma};
use crate::error::{GameError, Result};
use crate::game::{BimatrixGame, MatrixGame};
use crate::linalg::{symmetric_eigenvalues, tangent_basis};
use crate::tol::Tolerances;

/// Outcome of a cycle criterion, together with the component-norm test it
/// must agree with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub holds: bool,
    /// Largest absolute cycle residual.
    pub cycle_residual: f64,
    /// Norm of the component that must vanish (anti-potential or anti-zero-sum).
    pub component_norm: f64,
    pub component_test: bool,
    pub threshold: f64,
    /// Lexicographically first violating index tuple, 1-based.
    pub witness: Option<Vec<usize>>,
}

/// Games that admit the cycle characterizations of potential and zero-sum games.
pub trait CycleCriteria {
    fn frobenius_norm(&self) -> f64;
    /// Visits every potential-cycle residual with its 1-based index tuple.
    fn potential_cycles(&self, visit: &mut dyn FnMut(&[usize], f64));
    fn zero_sum_cycles(&self, visit: &mut dyn FnMut(&[usize], f64));
    fn anti_potential_norm(&self) -> f64;
    fn anti_zero_sum_norm(&self) -> f64;
}

impl CycleCriteria for MatrixGame {
    fn frobenius_norm(&self) -> f64 {
        self.norm()
    }

    fn potential_cycles(&self, visit: &mut dyn FnMut(&[usize], f64)) {
        let a = self.payoff();
        let l = self.strategies();
        for k in 0..l {
            for m in k + 1..l {
                for n in m + 1..l {
                    let r = a[(m, n)] - a[(k, n)] + a[(k, m)] - a[(n, m)] + a[(n, k)] - a[(m, k)];
                    visit(&[k + 1, m + 1, n + 1], r);
                }
            }
        }
    }

    fn zero_sum_cycles(&self, visit: &mut dyn FnMut(&[usize], f64)) {
        let a = self.payoff();
        let l = self.strategies();
        for i in 0..l {
            for j in i + 1..l {
                let r = a[(j, i)] - a[(i, i)] + a[(i, j)] - a[(j, j)];
                visit(&[i + 1, j + 1], r);
            }
        }
    }

    fn anti_potential_norm(&self) -> f64 {
        let g = gamma(self.payoff());
        (&g - g.transpose()).norm() * 0.5
    }

    fn anti_zero_sum_norm(&self) -> f64 {
        let g = gamma(self.payoff());
        (&g + g.transpose()).norm() * 0.5
    }
}

impl CycleCriteria for BimatrixGame {
    fn frobenius_norm(&self) -> f64 {
        self.norm()
    }

    fn potential_cycles(&self, visit: &mut dyn FnMut(&[usize], f64)) {
        let (a, b) = (self.a(), self.b());
        for_each_rectangle(self.shape(), |i, ip, j, jp| {
            let r = a[(ip, j)] - a[(i, j)] + b[(ip, jp)] - b[(ip, j)] + a[(i, jp)] - a[(ip, jp)]
                + b[(i, j)]
                - b[(i, jp)];
            visit(&[i + 1, ip + 1, j + 1, jp + 1], r);
        });
    }

    fn zero_sum_cycles(&self, visit: &mut dyn FnMut(&[usize], f64)) {
        let (a, b) = (self.a(), self.b());
        for_each_rectangle(self.shape(), |i, ip, j, jp| {
            let r = a[(ip, j)] - a[(i, j)] - b[(ip, jp)] + b[(ip, j)] + a[(i, jp)]
                - a[(ip, jp)]
                - b[(i, j)]
                + b[(i, jp)];
            visit(&[i + 1, ip + 1, j + 1, jp + 1], r);
        });
    }

    fn anti_potential_norm(&self) -> f64 {
        // ||((A-B)/2, -(A-B)/2)|| with bars = ||A-B|| / sqrt 2
        (gamma(self.a()) - gamma(self.b())).norm() / std::f64::consts::SQRT_2
    }

    fn anti_zero_sum_norm(&self) -> f64 {
        (gamma(self.a()) + gamma(self.b())).norm() / std::f64::consts::SQRT_2
    }
}

fn for_each_rectangle((lr, lc): (usize, usize), mut f: impl FnMut(usize, usize, usize, usize)) {
    for i in 0..lr {
        for ip in i + 1..lr {
            for j in 0..lc {
                for jp in j + 1..lc {
                    f(i, ip, j, jp);
                }
            }
        }
    }
}

fn run_criterion(
    norm: f64,
    component_norm: f64,
    tol: &Tolerances,
    cycles: impl FnOnce(&mut dyn FnMut(&[usize], f64)),
) -> CriterionReport {
    let threshold = tol.classify * norm;
    let mut worst = 0.0f64;
    let mut witness = None;
    cycles(&mut |idx, r| {
        worst = worst.max(r.abs());
        if witness.is_none() && r.abs() > threshold {
            witness = Some(idx.to_vec());
        }
    });
    CriterionReport {
        holds: worst <= threshold,
        cycle_residual: worst,
        component_norm,
        component_test: component_norm <= threshold,
        threshold,
        witness,
    }
}

pub fn is_potential<G: CycleCriteria + ?Sized>(g: &G, tol: &Tolerances) -> CriterionReport {
    run_criterion(g.frobenius_norm(), g.anti_potential_norm(), tol, |v| {
        g.potential_cycles(v)
    })
}

pub fn is_zero_sum<G: CycleCriteria + ?Sized>(g: &G, tol: &Tolerances) -> CriterionReport {
    run_criterion(g.frobenius_norm(), g.anti_zero_sum_norm(), tol, |v| {
        g.zero_sum_cycles(v)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub is_potential: bool,
    pub is_zero_sum: bool,
    pub is_null_stable: bool,
    pub is_stable: bool,
    pub is_strict_stable: bool,
    /// Eigenvalues of the anti-zero-sum part restricted to the tangent
    /// space of the simplex, ascending.
    pub tangent_eigenvalues: Vec<f64>,
    pub max_criterion_residual: f64,
    pub threshold: f64,
    /// First violated zero-sum cycle, 1-based.
    pub witness: Option<Vec<usize>>,
}

/// Stability flags of a symmetric game from the spectrum of its
/// anti-zero-sum component on `T Delta`.
pub fn stability_report(g: &MatrixGame, tol: &Tolerances) -> StabilityReport {
    let l = g.strategies();
    let s = decompose_matrix(g.payoff()).anti_zero_sum;
    let q = tangent_basis(l);
    let eig = symmetric_eigenvalues(q.transpose() * s * &q);
    let pot = is_potential(g, tol);
    let zs = is_zero_sum(g, tol);
    let threshold = tol.classify * g.norm();
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_abs = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    StabilityReport {
        is_potential: pot.holds,
        is_zero_sum: zs.holds,
        is_null_stable: max_abs <= threshold,
        is_stable: max <= threshold,
        is_strict_stable: max < -threshold,
        tangent_eigenvalues: eig,
        max_criterion_residual: pot.cycle_residual.max(zs.cycle_residual),
        threshold,
        witness: zs.witness,
    }
}

/// Stability of a bimatrix game. Eigenvalues of the symmetric part of the
/// embedded range component come in `+-` pairs, so the game is stable only
/// when it is null-stable.
pub fn bimatrix_stability(g: &BimatrixGame, tol: &Tolerances) -> StabilityReport {
    let (lr, lc) = g.shape();
    let d = decompose_bimatrix(g);
    let range = d.anti_zero_sum.add(&d.anti_potential).embed();
    let sym = (&range + range.transpose()) * 0.5;
    let (qr, qc) = (tangent_basis(lr), tangent_basis(lc));
    let mut q = DMatrix::zeros(lr + lc, lr + lc - 2);
    q.view_mut((0, 0), (lr, lr - 1)).copy_from(&qr);
    q.view_mut((lr, lr - 1), (lc, lc - 1)).copy_from(&qc);
    let eig = symmetric_eigenvalues(q.transpose() * sym * &q);
    let pot = is_potential(g, tol);
    let zs = is_zero_sum(g, tol);
    let threshold = tol.classify * g.norm();
    let max_abs = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    StabilityReport {
        is_potential: pot.holds,
        is_zero_sum: zs.holds,
        is_null_stable: max_abs <= threshold,
        is_stable: max_abs <= threshold,
        is_strict_stable: false,
        tangent_eigenvalues: eig,
        max_criterion_residual: pot.cycle_residual.max(zs.cycle_residual),
        threshold,
        witness: zs.witness,
    }
}

/// Strict stability of `[[-a-b, a, b], [a, -a-c, c], [b, c, -b-c]]`.
pub fn strict_stable_3(a: f64, b: f64, c: f64) -> bool {
    4.0 * a + b + c > 0.0 && a * b + b * c + c * a > 0.0
}

/// The symmetric 3x3 game with zero margins parameterized by `(a, b, c)`.
pub fn strict_stable_3_matrix(a: f64, b: f64, c: f64) -> MatrixGame {
    MatrixGame::from_valid(DMatrix::from_row_slice(
        3,
        3,
        &[-a - b, a, b, a, -a - c, c, b, c, -b - c],
    ))
}

/// Strict stability of the zero-diagonal symmetric game with off-diagonal
/// entries `beta12, beta13, beta23`.
pub fn strict_stable_offdiag_3(beta12: f64, beta13: f64, beta23: f64) -> bool {
    let sum = beta12 + beta13 + beta23;
    beta12 > 0.0 && sum * sum > 2.0 * (beta12 * beta12 + beta13 * beta13 + beta23 * beta23)
}

pub fn offdiag_3_matrix(beta12: f64, beta13: f64, beta23: f64) -> MatrixGame {
    MatrixGame::from_valid(DMatrix::from_row_slice(
        3,
        3,
        &[
            0.0, beta12, beta13, beta12, 0.0, beta23, beta13, beta23, 0.0,
        ],
    ))
}

/// `i -> j` whenever `a(i, j) = 1` (strategy `i` beats `j`), 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceDigraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl PreferenceDigraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for i in 1..=self.nodes {
            out.push_str(&format!("  {i};\n"));
        }
        for (i, j) in &self.edges {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == i).map(|e| e.1)
    }
}

/// Digraph of an antisymmetric matrix with entries in `{-1, 0, 1}`.
pub fn preference_digraph(g: &MatrixGame, tol: &Tolerances) -> Result<PreferenceDigraph> {
    let a = g.payoff();
    let l = g.strategies();
    let mut edges = Vec::new();
    for i in 0..l {
        for j in 0..l {
            let v = a[(i, j)];
            let s = v.round();
            if (v - s).abs() > tol.abs || s.abs() > 1.0 {
                return Err(GameError::Domain(format!(
                    "entry ({}, {}) = {v} is not in {{-1, 0, 1}}",
                    i + 1,
                    j + 1
                )));
            }
            if (v + a[(j, i)]).abs() > tol.abs {
                return Err(GameError::Domain(format!(
                    "matrix is not antisymmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if s == 1.0 {
                edges.push((i + 1, j + 1));
            }
        }
    }
    Ok(PreferenceDigraph { nodes: l, edges })
}
