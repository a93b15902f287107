//! Game value types, the trace inner product and the simplex projection.
//!
//! A symmetric two-player game is a single `l x l` payoff matrix; a bimatrix
//! game is a pair `(A, B)` of `l_r x l_c` matrices where `b(i, j)` is the
//! column player's payoff when the row player uses `i`. Both are plain values:
//! cloning is cheap relative to any analysis and they are `Send + Sync`.

use nalgebra::DMatrix;

use crate::error::{GameError, Result};
use crate::tol::Tolerances;

/// Symmetric two-player game given by one square payoff matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    payoff: DMatrix<f64>,
}

impl MatrixGame {
    /// Validates shape (square, at least 2 strategies) and finiteness.
    pub fn new(payoff: DMatrix<f64>) -> Result<Self> {
        if payoff.nrows() != payoff.ncols() {
            return Err(GameError::Dimension(format!(
                "payoff matrix must be square, got {}x{}",
                payoff.nrows(),
                payoff.ncols()
            )));
        }
        if payoff.nrows() < 2 {
            return Err(GameError::Domain(format!(
                "a game needs at least 2 strategies, got {}",
                payoff.nrows()
            )));
        }
        check_finite(&payoff, "payoff")?;
        Ok(Self { payoff })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(matrix_from_rows(rows)?)
    }

    /// Wraps a matrix already known to be a valid payoff (square, l >= 2).
    pub(crate) fn from_valid(payoff: DMatrix<f64>) -> Self {
        debug_assert!(payoff.is_square() && payoff.nrows() >= 2);
        Self { payoff }
    }

    pub fn strategies(&self) -> usize {
        self.payoff.nrows()
    }

    pub fn payoff(&self) -> &DMatrix<f64> {
        &self.payoff
    }

    pub fn into_payoff(self) -> DMatrix<f64> {
        self.payoff
    }

    /// Frobenius norm of the payoff matrix.
    pub fn norm(&self) -> f64 {
        self.payoff.norm()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_valid(&self.payoff * c)
    }

    /// The same game viewed as the bimatrix game `(A, A^T)`.
    pub fn to_bimatrix(&self) -> BimatrixGame {
        BimatrixGame::from_valid(self.payoff.clone(), self.payoff.transpose())
    }
}

/// Two-player game with row payoffs `a` and column payoffs `b`, both `l_r x l_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixGame {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
}

impl BimatrixGame {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(GameError::Dimension(format!(
                "payoff matrices must share a shape, got {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if a.nrows() < 2 || a.ncols() < 2 {
            return Err(GameError::Domain(format!(
                "each player needs at least 2 strategies, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        check_finite(&a, "A")?;
        check_finite(&b, "B")?;
        Ok(Self { a, b })
    }

    pub fn from_rows(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Self> {
        Self::new(matrix_from_rows(a)?, matrix_from_rows(b)?)
    }

    pub(crate) fn from_valid(a: DMatrix<f64>, b: DMatrix<f64>) -> Self {
        debug_assert_eq!(a.shape(), b.shape());
        Self { a, b }
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn row_strategies(&self) -> usize {
        self.a.nrows()
    }

    pub fn col_strategies(&self) -> usize {
        self.a.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    pub fn into_parts(self) -> (DMatrix<f64>, DMatrix<f64>) {
        (self.a, self.b)
    }

    /// Norm induced by the bimatrix inner product.
    pub fn norm(&self) -> f64 {
        (self.a.norm_squared() + self.b.norm_squared()).sqrt()
    }

    /// Block matrix `[[O_r, A], [B^T, O_c]]` of size `(l_r + l_c)^2`.
    pub fn embed(&self) -> DMatrix<f64> {
        let (lr, lc) = self.shape();
        let mut m = DMatrix::zeros(lr + lc, lr + lc);
        m.view_mut((0, lr), (lr, lc)).copy_from(&self.a);
        m.view_mut((lr, 0), (lc, lr)).copy_from(&self.b.transpose());
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_valid(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_valid(&self.a - &other.a, &self.b - &other.b)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_valid(&self.a * c, &self.b * c)
    }

    pub fn zeros(lr: usize, lc: usize) -> Self {
        Self::from_valid(DMatrix::zeros(lr, lc), DMatrix::zeros(lr, lc))
    }
}

/// Trace inner product `tr(A^T B) = sum_ij a_ij b_ij`.
pub fn inner_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(GameError::Dimension(format!(
            "inner product of {:?} and {:?} matrices",
            a.shape(),
            b.shape()
        )));
    }
    Ok(a.dot(b))
}

/// `<(A, B), (C, D)> = <A, C> + <B, D>`, equal to the trace form on block embeddings.
pub fn bimatrix_inner_product(g1: &BimatrixGame, g2: &BimatrixGame) -> Result<f64> {
    Ok(inner_product(&g1.a, &g2.a)? + inner_product(&g1.b, &g2.b)?)
}

/// Orthogonal projection `P = I - (1/l) 1 1^T` onto the tangent space of the simplex.
pub fn projection_matrix(l: usize) -> Result<DMatrix<f64>> {
    if l < 1 {
        return Err(GameError::Domain("projection needs l >= 1".into()));
    }
    let inv = 1.0 / l as f64;
    Ok(DMatrix::from_fn(l, l, |i, j| {
        if i == j {
            1.0 - inv
        } else {
            -inv
        }
    }))
}

/// Frobenius-distance equality `||a - b|| <= abs + rel * max(||a||, ||b||)`.
pub fn matrices_close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: &Tolerances) -> bool {
    a.shape() == b.shape() && (a - b).norm() <= tol.equality_bound(a.norm().max(b.norm()))
}

pub fn games_close(g1: &MatrixGame, g2: &MatrixGame, tol: &Tolerances) -> bool {
    matrices_close(&g1.payoff, &g2.payoff, tol)
}

pub(crate) fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(GameError::Dimension("matrix has no rows".into()));
    }
    let ncols = rows[0].len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(GameError::Dimension(format!(
            "row {} has {} entries, expected {}",
            i + 1,
            r.len(),
            ncols
        )));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

pub(crate) fn check_finite(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if let Some(pos) = m.iter().position(|v| !v.is_finite()) {
        let (r, c) = (pos % m.nrows(), pos / m.nrows());
        return Err(GameError::Domain(format!(
            "{what} entry ({}, {}) is not finite",
            r + 1,
            c + 1
        )));
    }
    Ok(())
}

/// Row-major nested vectors, used for serialization and display.
pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect()
}
