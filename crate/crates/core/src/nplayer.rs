//! n-player games with a common strategy count `l`, stored as dense
//! payoff tensors.
//!
//! A tensor of shape `l^n` is a flat `Vec<f64>` in row-major order: player 1's
//! strategy is the most significant index, so for two players the layout is
//! exactly the row-major payoff matrix `a(i, j)`.

use nalgebra::DVector;

use crate::error::{GameError, Result};
use crate::game::BimatrixGame;
use crate::linalg::gram_projection;
use crate::tol::Tolerances;

/// Largest tensor (`l^n` entries) handled by the dense constructions.
pub const MAX_TENSOR_ENTRIES: usize = 4096;
/// Largest generating set fed to the Gram-matrix projection.
pub const MAX_GENERATORS: usize = 3000;

#[derive(Debug, Clone, PartialEq)]
pub struct TensorGame {
    n: usize,
    l: usize,
    payoffs: Vec<Vec<f64>>,
}

impl TensorGame {
    pub fn new(n: usize, l: usize, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if n < 2 || l < 2 {
            return Err(GameError::Domain(format!(
                "need n >= 2 players and l >= 2 strategies, got n={n}, l={l}"
            )));
        }
        let size = tensor_size(n, l)?;
        if payoffs.len() != n {
            return Err(GameError::Dimension(format!(
                "expected {n} payoff tensors, got {}",
                payoffs.len()
            )));
        }
        for (p, t) in payoffs.iter().enumerate() {
            if t.len() != size {
                return Err(GameError::Dimension(format!(
                    "payoff tensor of player {} has {} entries, expected {size}",
                    p + 1,
                    t.len()
                )));
            }
            if let Some(k) = t.iter().position(|v| !v.is_finite()) {
                return Err(GameError::Domain(format!(
                    "player {} payoff entry {k} is not finite",
                    p + 1
                )));
            }
        }
        Ok(Self { n, l, payoffs })
    }

    pub fn zeros(n: usize, l: usize) -> Result<Self> {
        let size = tensor_size(n, l)?;
        Self::new(n, l, vec![vec![0.0; size]; n])
    }

    pub fn from_bimatrix(g: &BimatrixGame) -> Result<Self> {
        let (lr, lc) = g.shape();
        if lr != lc {
            return Err(GameError::Dimension(format!(
                "tensor games need a common strategy count, got {lr}x{lc}"
            )));
        }
        let flat = |m: &nalgebra::DMatrix<f64>| m.transpose().as_slice().to_vec();
        Self::new(2, lr, vec![flat(g.a()), flat(g.b())])
    }

    pub fn to_bimatrix(&self) -> Result<BimatrixGame> {
        if self.n != 2 {
            return Err(GameError::Dimension(format!(
                "a {}-player game is not a bimatrix game",
                self.n
            )));
        }
        let m = |t: &[f64]| nalgebra::DMatrix::from_row_slice(self.l, self.l, t);
        BimatrixGame::new(m(&self.payoffs[0]), m(&self.payoffs[1]))
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn strategies(&self) -> usize {
        self.l
    }

    pub fn payoffs(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    /// Payoff of `player` (0-based) at a 0-based profile.
    pub fn payoff(&self, player: usize, profile: &[usize]) -> f64 {
        self.payoffs[player][flat_index(self.l, profile)]
    }

    pub fn norm(&self) -> f64 {
        self.payoffs
            .iter()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            l: self.l,
            payoffs: self
                .payoffs
                .iter()
                .map(|t| t.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(
            (self.n, self.l),
            (other.n, other.l),
            "tensor game shapes differ"
        );
        Self {
            n: self.n,
            l: self.l,
            payoffs: self
                .payoffs
                .iter()
                .zip(&other.payoffs)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect())
                .collect(),
        }
    }

    fn to_vector(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.n * self.payoffs[0].len(),
            self.payoffs.iter().flatten().copied(),
        )
    }

    fn from_vector(n: usize, l: usize, v: &DVector<f64>) -> Self {
        let size = v.len() / n;
        Self {
            n,
            l,
            payoffs: (0..n)
                .map(|p| v.as_slice()[p * size..(p + 1) * size].to_vec())
                .collect(),
        }
    }
}

fn tensor_size(n: usize, l: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| l.checked_pow(n))
        .ok_or_else(|| GameError::Capacity(format!("l^n overflows for n={n}, l={l}")))
}

fn guarded_size(n: usize, l: usize) -> Result<usize> {
    let size = tensor_size(n, l)?;
    if size > MAX_TENSOR_ENTRIES {
        return Err(GameError::Capacity(format!(
            "l^n = {size} exceeds the dense limit of {MAX_TENSOR_ENTRIES}"
        )));
    }
    Ok(size)
}

fn flat_index(l: usize, profile: &[usize]) -> usize {
    profile.iter().fold(0, |acc, i| acc * l + i)
}

fn profile_of(mut k: usize, n: usize, l: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = k % l;
        k /= l;
    }
    out
}

pub fn tensor_inner_product(g1: &TensorGame, g2: &TensorGame) -> Result<f64> {
    if (g1.n, g1.l) != (g2.n, g2.l) {
        return Err(GameError::Dimension(format!(
            "tensor games of shape (n={}, l={}) and (n={}, l={})",
            g1.n, g1.l, g2.n, g2.l
        )));
    }
    Ok(g1
        .payoffs
        .iter()
        .flatten()
        .zip(g2.payoffs.iter().flatten())
        .map(|(a, b)| a * b)
        .sum())
}

/// `dim M_n = l^n - 1 + n l^(n-1)`.
pub fn potential_dims(n: usize, l: usize) -> Result<usize> {
    if n < 2 || l < 2 {
        return Err(GameError::Domain(format!(
            "need n >= 2 and l >= 2, got n={n}, l={l}"
        )));
    }
    let ln = tensor_size(n, l)?;
    Ok(ln - 1 + n * (ln / l))
}

/// `dim M_n^perp = n l^n - dim M_n`.
pub fn anti_potential_dims(n: usize, l: usize) -> Result<usize> {
    let pot = potential_dims(n, l)?;
    let total = tensor_size(n, l)?
        .checked_mul(n)
        .ok_or_else(|| GameError::Capacity("n l^n overflows".into()))?;
    Ok(total - pot)
}

/// `dim N_n^perp = (l - 1)^n`.
pub fn anti_zero_sum_dims(n: usize, l: usize) -> Result<usize> {
    if n < 2 || l < 2 {
        return Err(GameError::Domain(format!(
            "need n >= 2 and l >= 2, got n={n}, l={l}"
        )));
    }
    tensor_size(n, l - 1)
}

type Cell = (i8, i8, i8);

// [player-1 row][player-3 block][player-2 column]
const M_TABLES: [[[[Cell; 2]; 2]; 2]; 5] = [
    [
        [[(-1, 1, 0), (1, -1, 0)], [(0, 0, 0), (0, 0, 0)]],
        [[(1, -1, 0), (-1, 1, 0)], [(0, 0, 0), (0, 0, 0)]],
    ],
    [
        [[(-1, 0, 1), (0, 0, 0)], [(1, 0, -1), (0, 0, 0)]],
        [[(1, 0, -1), (0, 0, 0)], [(-1, 0, 1), (0, 0, 0)]],
    ],
    [
        [[(0, 0, 0), (-1, 0, 1)], [(0, 0, 0), (1, 0, -1)]],
        [[(0, 0, 0), (1, 0, -1)], [(0, 0, 0), (-1, 0, 1)]],
    ],
    [
        [[(0, -1, 1), (0, 1, -1)], [(0, 1, -1), (0, -1, 1)]],
        [[(0, 0, 0), (0, 0, 0)], [(0, 0, 0), (0, 0, 0)]],
    ],
    [
        [[(0, 0, 0), (0, 0, 0)], [(0, 0, 0), (0, 0, 0)]],
        [[(0, -1, 1), (0, 1, -1)], [(0, 1, -1), (0, -1, 1)]],
    ],
];

fn game_from_table(t: &[[[Cell; 2]; 2]; 2]) -> TensorGame {
    let mut payoffs = vec![vec![0.0; 8]; 3];
    for i1 in 0..2 {
        for i3 in 0..2 {
            for i2 in 0..2 {
                let (a, b, c) = t[i1][i3][i2];
                let k = flat_index(2, &[i1, i2, i3]);
                payoffs[0][k] = a as f64;
                payoffs[1][k] = b as f64;
                payoffs[2][k] = c as f64;
            }
        }
    }
    TensorGame {
        n: 3,
        l: 2,
        payoffs,
    }
}

/// The five basis games `M_1, ..., M_5` of three-player two-strategy
/// anti-potential games: Matching Pennies between two players with the
/// third one null.
pub fn three_player_anti_potential_basis() -> Vec<TensorGame> {
    M_TABLES.iter().map(game_from_table).collect()
}

/// `M_6`: Matching Pennies between players 1 and 2 when player 3 plays
/// strategy 2.
pub fn three_player_m6() -> TensorGame {
    game_from_table(&[
        [[(0, 0, 0), (0, 0, 0)], [(-1, 1, 0), (1, -1, 0)]],
        [[(0, 0, 0), (0, 0, 0)], [(1, -1, 0), (-1, 1, 0)]],
    ])
}

/// Result of the exact zero-sum test.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumCheck {
    pub holds: bool,
    /// Largest absolute payoff sum over all profiles.
    pub max_profile_sum: f64,
    /// When `holds`: games `(Z_k, 0, ..., -Z_k, ..., 0)` pairing player 1
    /// with player `k = 2..n`, summing to the input.
    pub witness: Option<Vec<TensorGame>>,
}

/// Exact zero-sum test: the payoffs of every profile sum to zero.
pub fn is_exact_zero_sum_tensor(g: &TensorGame, tol: &Tolerances) -> ZeroSumCheck {
    let size = g.payoffs[0].len();
    let max_profile_sum = (0..size)
        .map(|k| g.payoffs.iter().map(|t| t[k]).sum::<f64>().abs())
        .fold(0.0, f64::max);
    let holds = max_profile_sum <= tol.classify * g.norm() + tol.abs;
    let witness = holds.then(|| {
        (1..g.n)
            .map(|k| {
                let mut payoffs = vec![vec![0.0; size]; g.n];
                payoffs[0] = g.payoffs[k].iter().map(|v| -v).collect();
                payoffs[k] = g.payoffs[k].clone();
                TensorGame {
                    n: g.n,
                    l: g.l,
                    payoffs,
                }
            })
            .collect()
    });
    ZeroSumCheck {
        holds,
        max_profile_sum,
        witness,
    }
}

/// The tensor `E_kappa^i` for a 0-based profile `i` with every `i_p >= 1`:
/// `(-1)^(n-1) prod_p (delta(j_p = i_p) - delta(j_p = 0))`.
fn e_kappa_tensor(n: usize, l: usize, i: &[usize]) -> Vec<f64> {
    let size = l.pow(n as u32);
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    (0..size)
        .map(|k| {
            let j = profile_of(k, n, l);
            j.iter().zip(i).fold(sign, |acc, (jp, ip)| {
                acc * if jp == ip {
                    1.0
                } else if *jp == 0 {
                    -1.0
                } else {
                    0.0
                }
            })
        })
        .collect()
}

/// Basis `{(E_kappa^i, ..., E_kappa^i)}` of the anti-zero-sum games, indexed
/// by profiles with every strategy `>= 2`, player 1 varying fastest.
pub fn anti_zero_sum_tensor_basis(n: usize, l: usize) -> Result<Vec<TensorGame>> {
    if n < 2 || l < 2 {
        return Err(GameError::Domain(format!(
            "need n >= 2 and l >= 2, got n={n}, l={l}"
        )));
    }
    guarded_size(n, l)?;
    let count = tensor_size(n, l - 1)?;
    Ok((0..count)
        .map(|k| {
            // player 1 fastest: reverse the row-major profile
            let mut idx = profile_of(k, n, l - 1);
            idx.reverse();
            let i: Vec<usize> = idx.into_iter().map(|v| v + 1).collect();
            let e = e_kappa_tensor(n, l, &i);
            TensorGame {
                n,
                l,
                payoffs: vec![e; n],
            }
        })
        .collect())
}

/// Passive tensors: player `q` gets ones along its own axis at a fixed
/// profile of the others.
pub fn passive_generators(n: usize, l: usize) -> Result<Vec<TensorGame>> {
    let size = guarded_size(n, l)?;
    let mut out = Vec::new();
    for q in 0..n {
        for rest in 0..size / l {
            let others = profile_of(rest, n - 1, l);
            let mut t = vec![0.0; size];
            for s in 0..l {
                let mut prof = others.clone();
                prof.insert(q, s);
                t[flat_index(l, &prof)] = 1.0;
            }
            let mut payoffs = vec![vec![0.0; size]; n];
            payoffs[q] = t;
            out.push(TensorGame { n, l, payoffs });
        }
    }
    Ok(out)
}

/// Identical-interest unit games plus passive games: spans `M_n`.
pub fn potential_generators(n: usize, l: usize) -> Result<Vec<TensorGame>> {
    let size = guarded_size(n, l)?;
    let mut out: Vec<TensorGame> = (0..size)
        .map(|k| {
            let mut e = vec![0.0; size];
            e[k] = 1.0;
            TensorGame {
                n,
                l,
                payoffs: vec![e; n],
            }
        })
        .collect();
    out.extend(passive_generators(n, l)?);
    Ok(out)
}

/// Pairs `(E, 0, ..., -E, ..., 0)` between player 1 and each other player
/// plus passive games: spans `N_n`.
pub fn zero_sum_generators(n: usize, l: usize) -> Result<Vec<TensorGame>> {
    let size = guarded_size(n, l)?;
    let mut out = Vec::new();
    for q in 1..n {
        for k in 0..size {
            let mut payoffs = vec![vec![0.0; size]; n];
            payoffs[0][k] = 1.0;
            payoffs[q][k] = -1.0;
            out.push(TensorGame { n, l, payoffs });
        }
    }
    out.extend(passive_generators(n, l)?);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorDecomposition {
    pub potential: TensorGame,
    pub anti_potential: TensorGame,
    pub zero_sum: TensorGame,
    pub anti_zero_sum: TensorGame,
}

const GRAM_CUTOFF: f64 = 1e-10;

fn project(g: &TensorGame, generators: &[TensorGame]) -> Result<TensorGame> {
    if generators.len() > MAX_GENERATORS {
        return Err(GameError::Capacity(format!(
            "{} generators exceed the Gram-matrix limit of {MAX_GENERATORS}",
            generators.len()
        )));
    }
    let gens: Vec<DVector<f64>> = generators.iter().map(TensorGame::to_vector).collect();
    let p = gram_projection(&gens, &g.to_vector(), GRAM_CUTOFF);
    Ok(TensorGame::from_vector(g.n, g.l, &p))
}

/// Orthogonal projections onto the potential and zero-sum subspaces and
/// their complements, by least squares over the generating sets.
pub fn decompose_tensor(g: &TensorGame) -> Result<TensorDecomposition> {
    let size = guarded_size(g.n, g.l)?;
    let needed = (g.n - 1) * size + g.n * (size / g.l);
    if needed > MAX_GENERATORS {
        return Err(GameError::Capacity(format!(
            "{needed} generators exceed the Gram-matrix limit of {MAX_GENERATORS}"
        )));
    }
    let potential = project(g, &potential_generators(g.n, g.l)?)?;
    let zero_sum = project(g, &zero_sum_generators(g.n, g.l)?)?;
    Ok(TensorDecomposition {
        anti_potential: g.sub(&potential),
        potential,
        anti_zero_sum: g.sub(&zero_sum),
        zero_sum,
    })
}
