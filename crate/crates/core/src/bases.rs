//! Explicit generating matrices for each subspace of games, and subspace
//! dimensions.
//!
//! All strategy indices in this module are **1-based** so that the matrices
//! can be compared entry by entry with the usual textbook displays:
//!
//! * `K^(ij)`, `1 <= i < j <= l`: symmetric, zero row/column sums; spans the
//!   anti-zero-sum games.
//! * `N^(ij)`, `2 <= i < j <= l`: antisymmetric, zero row/column sums; its
//!   restriction to strategies `{1, i, j}` is Rock-Paper-Scissors. Spans the
//!   anti-potential games.
//! * `E_gamma^(j)` (ones in column `j`), `E_eta^(i)` (ones in row `i`): passive
//!   and constant games.
//! * `E_kappa^(ij)`: the 2x2 block `[[-1, 1], [1, -1]]` on rows `{i, i+1}` and
//!   columns `{j, j+1}`; spans the range of `A -> P A P`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::game::BimatrixGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    K,
    N,
    EGamma,
    EEta,
    EKappa,
    /// Extended Matching Pennies `(E_kappa, -E_kappa)`.
    MpAntiPotential,
    /// `(E_kappa, E_kappa)`.
    MpAntiZeroSum,
}

/// Dimensions of the subspaces of a game space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub total: usize,
    pub dim_potential: usize,
    pub dim_anti_potential: usize,
    pub dim_zero_sum: usize,
    pub dim_anti_zero_sum: usize,
    pub dim_kernel: usize,
    pub dim_range: usize,
}

pub fn basis_k(l: usize, i: usize, j: usize) -> Result<DMatrix<f64>> {
    if !(1 <= i && i < j && j <= l) {
        return Err(GameError::Domain(format!(
            "K^(ij) needs 1 <= i < j <= l, got i={i}, j={j}, l={l}"
        )));
    }
    let (i, j) = (i - 1, j - 1);
    let mut m = DMatrix::zeros(l, l);
    m[(i, i)] = -1.0;
    m[(j, j)] = -1.0;
    m[(i, j)] = 1.0;
    m[(j, i)] = 1.0;
    Ok(m)
}

pub fn basis_n(l: usize, i: usize, j: usize) -> Result<DMatrix<f64>> {
    if !(2 <= i && i < j && j <= l) {
        return Err(GameError::Domain(format!(
            "N^(ij) needs 2 <= i < j <= l, got i={i}, j={j}, l={l}"
        )));
    }
    let (i, j) = (i - 1, j - 1);
    let mut m = DMatrix::zeros(l, l);
    m[(0, i)] = -1.0;
    m[(0, j)] = 1.0;
    m[(i, 0)] = 1.0;
    m[(i, j)] = -1.0;
    m[(j, 0)] = -1.0;
    m[(j, i)] = 1.0;
    Ok(m)
}

/// `E_gamma`, `E_eta` or `E_kappa` of shape `l_r x l_c`.
///
/// `E_gamma^(j)` ignores `i`; `E_eta^(i)` ignores `j`. Matching-Pennies kinds
/// are pairs and must go through [`basis_pair`]; `K`/`N` through their own
/// constructors.
pub fn basis_e(
    kind: BasisKind,
    l_r: usize,
    l_c: usize,
    i: usize,
    j: usize,
) -> Result<DMatrix<f64>> {
    match kind {
        BasisKind::EGamma => {
            if !(1..=l_c).contains(&j) {
                return Err(GameError::Domain(format!(
                    "E_gamma^(j) needs 1 <= j <= {l_c}, got {j}"
                )));
            }
            let mut m = DMatrix::zeros(l_r, l_c);
            m.column_mut(j - 1).fill(1.0);
            Ok(m)
        }
        BasisKind::EEta => {
            if !(1..=l_r).contains(&i) {
                return Err(GameError::Domain(format!(
                    "E_eta^(i) needs 1 <= i <= {l_r}, got {i}"
                )));
            }
            let mut m = DMatrix::zeros(l_r, l_c);
            m.row_mut(i - 1).fill(1.0);
            Ok(m)
        }
        BasisKind::EKappa => {
            if !(1 <= i && i < l_r && 1 <= j && j < l_c) {
                return Err(GameError::Domain(format!(
                    "E_kappa^(ij) needs 1 <= i < {l_r} and 1 <= j < {l_c}, got i={i}, j={j}"
                )));
            }
            let (i, j) = (i - 1, j - 1);
            let mut m = DMatrix::zeros(l_r, l_c);
            m[(i, j)] = -1.0;
            m[(i, j + 1)] = 1.0;
            m[(i + 1, j)] = 1.0;
            m[(i + 1, j + 1)] = -1.0;
            Ok(m)
        }
        BasisKind::K => {
            if l_r != l_c {
                return Err(GameError::Dimension("K^(ij) is square".into()));
            }
            basis_k(l_r, i, j)
        }
        BasisKind::N => {
            if l_r != l_c {
                return Err(GameError::Dimension("N^(ij) is square".into()));
            }
            basis_n(l_r, i, j)
        }
        BasisKind::MpAntiPotential | BasisKind::MpAntiZeroSum => Err(GameError::Domain(
            "Matching Pennies bases are bimatrix pairs; use basis_pair".into(),
        )),
    }
}

/// Extended Matching Pennies pairs `(E_kappa, -E_kappa)` or `(E_kappa, E_kappa)`.
pub fn basis_pair(
    kind: BasisKind,
    l_r: usize,
    l_c: usize,
    i: usize,
    j: usize,
) -> Result<BimatrixGame> {
    let ek = basis_e(BasisKind::EKappa, l_r, l_c, i, j)?;
    match kind {
        BasisKind::MpAntiPotential => Ok(BimatrixGame::from_valid(ek.clone(), -ek)),
        BasisKind::MpAntiZeroSum => Ok(BimatrixGame::from_valid(ek.clone(), ek)),
        other => Err(GameError::Domain(format!(
            "{other:?} is not a bimatrix basis kind"
        ))),
    }
}

/// `{K^(ij) : 1 <= i < j <= l}`, spanning the anti-zero-sum games.
pub fn k_family(l: usize) -> Vec<DMatrix<f64>> {
    pairs(1, l)
        .map(|(i, j)| basis_k(l, i, j).expect("valid index"))
        .collect()
}

/// `{N^(ij) : 2 <= i < j <= l}`, spanning the anti-potential games.
pub fn n_family(l: usize) -> Vec<DMatrix<f64>> {
    pairs(2, l)
        .map(|(i, j)| basis_n(l, i, j).expect("valid index"))
        .collect()
}

/// `{E_kappa^(ij) : 1 <= i < l_r, 1 <= j < l_c}`, spanning the range of Gamma.
pub fn e_kappa_family(l_r: usize, l_c: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for i in 1..l_r {
        for j in 1..l_c {
            out.push(basis_e(BasisKind::EKappa, l_r, l_c, i, j).expect("valid index"));
        }
    }
    out
}

/// `{E_gamma^(j)}_j`: the passive games.
pub fn passive_family(l: usize) -> Vec<DMatrix<f64>> {
    (1..=l)
        .map(|j| basis_e(BasisKind::EGamma, l, l, 1, j).expect("valid index"))
        .collect()
}

/// `{E_eta^(i)}_{i != 1} U {E_gamma^(j)}_j`, a basis of the kernel of Gamma.
pub fn kernel_family(l: usize) -> Vec<DMatrix<f64>> {
    let mut out: Vec<_> = (2..=l)
        .map(|i| basis_e(BasisKind::EEta, l, l, i, 1).expect("valid index"))
        .collect();
    out.extend(passive_family(l));
    out
}

/// Generators of the potential games: all symmetric matrices plus passive games.
pub fn potential_generators(l: usize) -> Vec<DMatrix<f64>> {
    let mut out = symmetric_units(l);
    out.extend(passive_family(l));
    out
}

/// Generators of the zero-sum games: all antisymmetric matrices plus passive games.
pub fn zero_sum_generators(l: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for (i, j) in pairs(1, l) {
        let mut m = DMatrix::zeros(l, l);
        m[(i - 1, j - 1)] = 1.0;
        m[(j - 1, i - 1)] = -1.0;
        out.push(m);
    }
    out.extend(passive_family(l));
    out
}

fn symmetric_units(l: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for i in 0..l {
        for j in i..l {
            let mut m = DMatrix::zeros(l, l);
            m[(i, j)] = 1.0;
            m[(j, i)] = 1.0;
            out.push(m);
        }
    }
    out
}

/// `{(E_kappa, -E_kappa)}`: basis of bimatrix anti-potential games.
pub fn mp_anti_potential_family(l_r: usize, l_c: usize) -> Vec<BimatrixGame> {
    e_kappa_family(l_r, l_c)
        .into_iter()
        .map(|e| BimatrixGame::from_valid(e.clone(), -e))
        .collect()
}

/// `{(E_kappa, E_kappa)}`: basis of bimatrix anti-zero-sum games.
pub fn mp_anti_zero_sum_family(l_r: usize, l_c: usize) -> Vec<BimatrixGame> {
    e_kappa_family(l_r, l_c)
        .into_iter()
        .map(|e| BimatrixGame::from_valid(e.clone(), e))
        .collect()
}

/// Basis of the kernel of the bimatrix projection:
/// `(E_eta^(i), O)_{i != 1}`, `(E_gamma^(j), O)`, `(O, E_eta^(i))`, `(O, E_gamma^(j))_{j != 1}`.
pub fn bimatrix_kernel_family(l_r: usize, l_c: usize) -> Vec<BimatrixGame> {
    let z = || DMatrix::zeros(l_r, l_c);
    let eta = |i| basis_e(BasisKind::EEta, l_r, l_c, i, 1).expect("valid index");
    let gamma = |j| basis_e(BasisKind::EGamma, l_r, l_c, 1, j).expect("valid index");
    let mut out = Vec::new();
    out.extend((2..=l_r).map(|i| BimatrixGame::from_valid(eta(i), z())));
    out.extend((1..=l_c).map(|j| BimatrixGame::from_valid(gamma(j), z())));
    out.extend((1..=l_r).map(|i| BimatrixGame::from_valid(z(), eta(i))));
    out.extend((2..=l_c).map(|j| BimatrixGame::from_valid(z(), gamma(j))));
    out
}

pub fn dimensions(l: usize) -> Result<DimensionReport> {
    if l < 2 {
        return Err(GameError::Domain(format!(
            "dimensions need l >= 2, got {l}"
        )));
    }
    let total = l * l;
    let anti_potential = (l - 1) * (l - 2) / 2;
    let anti_zero_sum = (l - 1) * l / 2;
    let kernel = 2 * l - 1;
    Ok(DimensionReport {
        total,
        dim_potential: l * (l + 1) / 2 + l - 1,
        dim_anti_potential: anti_potential,
        dim_zero_sum: total - anti_zero_sum,
        dim_anti_zero_sum: anti_zero_sum,
        dim_kernel: kernel,
        dim_range: (l - 1) * (l - 1),
    })
}

pub fn bimatrix_dimensions(l_r: usize, l_c: usize) -> Result<DimensionReport> {
    if l_r < 2 || l_c < 2 {
        return Err(GameError::Domain(format!(
            "dimensions need l_r, l_c >= 2, got {l_r}, {l_c}"
        )));
    }
    let total = 2 * l_r * l_c;
    let mp = (l_r - 1) * (l_c - 1);
    let potential = l_r * l_c + l_r + l_c - 1;
    Ok(DimensionReport {
        total,
        dim_potential: potential,
        dim_anti_potential: mp,
        dim_zero_sum: potential,
        dim_anti_zero_sum: mp,
        dim_kernel: 2 * (l_r + l_c - 1),
        dim_range: 2 * mp,
    })
}

fn pairs(start: usize, l: usize) -> impl Iterator<Item = (usize, usize)> {
    (start..=l).flat_map(move |i| (i + 1..=l).map(move |j| (i, j)))
}
