#![allow(dead_code)]

use game_decomp::bases::{k_family, n_family, passive_family};
use game_decomp::{BimatrixGame, MatrixGame, SimplexPoint};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
}

pub fn random_game(rng: &mut impl Rng, l: usize) -> MatrixGame {
    MatrixGame::new(random_matrix(rng, l, l)).unwrap()
}

fn combo(rng: &mut impl Rng, family: &[DMatrix<f64>], l: usize) -> DMatrix<f64> {
    family.iter().fold(DMatrix::zeros(l, l), |acc, m| {
        acc + m * rng.random_range(-1.0..1.0)
    })
}

pub fn random_passive(rng: &mut impl Rng, l: usize) -> DMatrix<f64> {
    combo(rng, &passive_family(l), l)
}

pub fn random_anti_potential(rng: &mut impl Rng, l: usize) -> DMatrix<f64> {
    combo(rng, &n_family(l), l)
}

pub fn random_anti_zero_sum(rng: &mut impl Rng, l: usize) -> DMatrix<f64> {
    combo(rng, &k_family(l), l)
}

pub fn random_symmetric(rng: &mut impl Rng, l: usize) -> DMatrix<f64> {
    let m = random_matrix(rng, l, l);
    (&m + m.transpose()) * 0.5
}

pub fn random_antisymmetric(rng: &mut impl Rng, l: usize) -> DMatrix<f64> {
    let m = random_matrix(rng, l, l);
    (&m - m.transpose()) * 0.5
}

/// Symmetric plus passive.
pub fn random_potential_game(rng: &mut impl Rng, l: usize) -> MatrixGame {
    MatrixGame::new(random_symmetric(rng, l) + random_passive(rng, l)).unwrap()
}

/// Antisymmetric plus passive.
pub fn random_zero_sum_game(rng: &mut impl Rng, l: usize) -> MatrixGame {
    MatrixGame::new(random_antisymmetric(rng, l) + random_passive(rng, l)).unwrap()
}

pub fn random_bimatrix(rng: &mut impl Rng, lr: usize, lc: usize) -> BimatrixGame {
    BimatrixGame::new(random_matrix(rng, lr, lc), random_matrix(rng, lr, lc)).unwrap()
}

/// Interior point drawn uniformly from the simplex.
pub fn random_interior(rng: &mut impl Rng, l: usize) -> SimplexPoint {
    let e: Vec<f64> = (0..l)
        .map(|_| -rng.random_range(1e-9f64..1.0).ln())
        .collect();
    let s: f64 = e.iter().sum();
    SimplexPoint::from_slice(&e.iter().map(|v| v / s).collect::<Vec<_>>()).unwrap()
}

/// Random tangent vector `z` with `sum z_i = 0`.
pub fn random_tangent(rng: &mut impl Rng, l: usize) -> nalgebra::DVector<f64> {
    let z = nalgebra::DVector::from_fn(l, |_, _| rng.random_range(-1.0..1.0));
    let m = z.mean();
    z.add_scalar(-m)
}

pub fn matrix_strategy(min: usize, max: usize) -> impl Strategy<Value = DMatrix<f64>> {
    (min..=max).prop_flat_map(|l| {
        prop::collection::vec(-10.0f64..10.0, l * l).prop_map(move |v| DMatrix::from_vec(l, l, v))
    })
}

pub fn bimatrix_strategy(min: usize, max: usize) -> impl Strategy<Value = BimatrixGame> {
    (min..=max, min..=max).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(-10.0f64..10.0, r * c),
            prop::collection::vec(-10.0f64..10.0, r * c),
        )
            .prop_map(move |(a, b)| {
                BimatrixGame::new(DMatrix::from_vec(r, c, a), DMatrix::from_vec(r, c, b)).unwrap()
            })
    })
}

/// Least-squares projection of `target` onto the span of `family`.
pub fn ls_projection(family: &[DMatrix<f64>], target: &DMatrix<f64>) -> DMatrix<f64> {
    let (r, c) = target.shape();
    let basis = DMatrix::from_fn(r * c, family.len(), |i, k| family[k].as_slice()[i]);
    let t = nalgebra::DVector::from_column_slice(target.as_slice());
    let coef = basis.clone().svd(true, true).solve(&t, 1e-12).unwrap();
    DMatrix::from_column_slice(r, c, (basis * coef).as_slice())
}
