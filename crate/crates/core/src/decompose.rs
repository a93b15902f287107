//! The projection `Gamma(A) = P A P` and the three-part orthogonal
//! decomposition `A = S + N + C` with `S` anti-zero-sum, `N` anti-potential
//! and `C` in the kernel of `Gamma`.

use nalgebra::DMatrix;

use crate::error::{GameError, Result};
use crate::game::{BimatrixGame, MatrixGame};
use crate::linalg::double_center;
use crate::tol::Tolerances;

/// Components of a symmetric game.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub anti_zero_sum: DMatrix<f64>,
    pub kernel: DMatrix<f64>,
    pub anti_potential: DMatrix<f64>,
    /// `||A - (S + C + N)||_F`.
    pub residual: f64,
}

impl Decomposition {
    /// Projection onto the potential games, `S + C`.
    pub fn potential_part(&self) -> DMatrix<f64> {
        &self.anti_zero_sum + &self.kernel
    }

    /// Projection onto the zero-sum games, `N + C`.
    pub fn zero_sum_part(&self) -> DMatrix<f64> {
        &self.anti_potential + &self.kernel
    }

    pub fn sum(&self) -> DMatrix<f64> {
        &self.anti_zero_sum + &self.kernel + &self.anti_potential
    }
}

/// Components of a bimatrix game, each stored as a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixDecomposition {
    pub anti_zero_sum: BimatrixGame,
    pub kernel: BimatrixGame,
    pub anti_potential: BimatrixGame,
    pub residual: f64,
}

impl BimatrixDecomposition {
    pub fn potential_part(&self) -> BimatrixGame {
        self.anti_zero_sum.add(&self.kernel)
    }

    pub fn zero_sum_part(&self) -> BimatrixGame {
        self.anti_potential.add(&self.kernel)
    }

    pub fn sum(&self) -> BimatrixGame {
        self.anti_zero_sum
            .add(&self.kernel)
            .add(&self.anti_potential)
    }
}

/// The four terms `PAP`, `(I-P)AP`, `PA(I-P)`, `(I-P)A(I-P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandholmSplit {
    pub range_part: DMatrix<f64>,
    pub left_kernel: DMatrix<f64>,
    pub right_kernel: DMatrix<f64>,
    pub both_kernel: DMatrix<f64>,
}

/// A kernel element written as passive + constant + offset.
///
/// The split is a representation, not a projection: the all-ones matrix lies
/// in both the passive and the constant span, and `offset` removes the
/// double count.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSplit {
    pub passive_part: DMatrix<f64>,
    pub constant_part: DMatrix<f64>,
    pub offset: DMatrix<f64>,
}

/// `P_r A P_c`. Works for any shape.
pub fn gamma(a: &DMatrix<f64>) -> DMatrix<f64> {
    double_center(a)
}

pub fn gamma_bimatrix(g: &BimatrixGame) -> BimatrixGame {
    BimatrixGame::from_valid(gamma(g.a()), gamma(g.b()))
}

pub fn decompose_symmetric(g: &MatrixGame) -> Decomposition {
    decompose_matrix(g.payoff())
}

/// Decomposes any square matrix without the `l >= 2` game invariant.
pub fn decompose_matrix(a: &DMatrix<f64>) -> Decomposition {
    assert!(a.is_square(), "decompose_matrix needs a square matrix");
    let ga = gamma(a);
    let gt = ga.transpose();
    let anti_zero_sum = (&ga + &gt) * 0.5;
    let anti_potential = (&ga - &gt) * 0.5;
    let kernel = a - &ga;
    let residual = (a - &anti_zero_sum - &kernel - &anti_potential).norm();
    Decomposition {
        anti_zero_sum,
        kernel,
        anti_potential,
        residual,
    }
}

pub fn decompose_bimatrix(g: &BimatrixGame) -> BimatrixDecomposition {
    let abar = gamma(g.a());
    let bbar = gamma(g.b());
    let plus = (&abar + &bbar) * 0.5;
    let minus = (&abar - &bbar) * 0.5;
    let anti_zero_sum = BimatrixGame::from_valid(plus.clone(), plus);
    let anti_potential = BimatrixGame::from_valid(minus.clone(), -minus);
    let kernel = BimatrixGame::from_valid(g.a() - &abar, g.b() - &bbar);
    let rebuilt = anti_zero_sum.add(&kernel).add(&anti_potential);
    let residual = g.sub(&rebuilt).norm();
    BimatrixDecomposition {
        anti_zero_sum,
        kernel,
        anti_potential,
        residual,
    }
}

pub fn sandholm_split(a: &DMatrix<f64>) -> SandholmSplit {
    let (r, c) = a.shape();
    let row_means = DMatrix::from_fn(r, c, |_, j| a.column(j).mean());
    let col_means = DMatrix::from_fn(r, c, |i, _| a.row(i).mean());
    let grand = DMatrix::from_element(r, c, a.mean());
    // (I-P) A = row of column means, A (I-P) = column of row means.
    let both_kernel = grand.clone();
    let left_kernel = &row_means - &grand;
    let right_kernel = &col_means - &grand;
    let range_part = a - &row_means - &col_means + &grand;
    SandholmSplit {
        range_part,
        left_kernel,
        right_kernel,
        both_kernel,
    }
}

/// Splits `c` with `Gamma(c) = 0` into passive, constant and offset parts.
pub fn kernel_split(c: &DMatrix<f64>, tol: &Tolerances) -> Result<KernelSplit> {
    let residual = gamma(c).norm();
    if residual > tol.classify * c.norm() + tol.abs {
        return Err(GameError::Precondition {
            message: "matrix is not in the kernel of Gamma".into(),
            residual,
        });
    }
    let (r, cols) = c.shape();
    let passive_part = DMatrix::from_fn(r, cols, |_, j| c.column(j).mean());
    let constant_part = DMatrix::from_fn(r, cols, |i, _| c.row(i).mean());
    let offset = DMatrix::from_element(r, cols, -c.mean());
    Ok(KernelSplit {
        passive_part,
        constant_part,
        offset,
    })
}

/// Returns `A` when `(A, B)` is a symmetric game, i.e. `A = B^T`.
pub fn symmetrize(g: &BimatrixGame, tol: &Tolerances) -> Result<MatrixGame> {
    let (lr, lc) = g.shape();
    if lr != lc {
        return Err(GameError::Dimension(format!(
            "a symmetric game needs l_r = l_c, got {lr}x{lc}"
        )));
    }
    let distance = (g.a() - g.b().transpose()).norm();
    if distance > tol.equality_bound(g.a().norm()) {
        return Err(GameError::NotSymmetric { distance });
    }
    Ok(MatrixGame::from_valid(g.a().clone()))
}
