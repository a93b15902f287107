//! Batch versions of the per-game operations.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it the same functions run on plain iterators. Output
//! order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::classify::{stability_report, strict_stable_3, strict_stable_3_matrix, StabilityReport};
use crate::decompose::{decompose_symmetric, Decomposition};
use crate::dynamics::{integrate, SimplexPoint, Trajectory};
use crate::error::Result;
use crate::game::MatrixGame;
use crate::tol::Tolerances;

/// Order-preserving map, parallel when the `parallel` feature is enabled.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Always-sequential map, kept available for comparison in benchmarks.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn decompose_many(games: &[MatrixGame]) -> Vec<Decomposition> {
    par_map(games, decompose_symmetric)
}

pub fn stability_many(games: &[MatrixGame], tol: &Tolerances) -> Vec<StabilityReport> {
    par_map(games, |g| stability_report(g, tol))
}

/// Outcome of comparing the closed-form 3x3 criterion with the spectral test
/// over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridAgreement {
    pub checked: usize,
    /// Points skipped because a criterion expression lies within the band.
    pub skipped: usize,
    pub disagreements: usize,
}

/// Evaluates `strict_stable_3` and the spectral test on an `n^3` grid over
/// `[lo, hi]^3`, skipping points where `4a+b+c` or `ab+bc+ca` is within `band`
/// of zero.
pub fn strict_stable_3_grid(
    n: usize,
    lo: f64,
    hi: f64,
    band: f64,
    tol: &Tolerances,
) -> GridAgreement {
    let step = if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    };
    let coord = |k: usize| lo + step * k as f64;
    let planes: Vec<usize> = (0..n).collect();
    let per_plane = par_map(&planes, |&i| {
        let a = coord(i);
        let mut acc = GridAgreement {
            checked: 0,
            skipped: 0,
            disagreements: 0,
        };
        for j in 0..n {
            for k in 0..n {
                let (b, c) = (coord(j), coord(k));
                if (4.0 * a + b + c).abs() <= band || (a * b + b * c + c * a).abs() <= band {
                    acc.skipped += 1;
                    continue;
                }
                acc.checked += 1;
                let spectral =
                    stability_report(&strict_stable_3_matrix(a, b, c), tol).is_strict_stable;
                if spectral != strict_stable_3(a, b, c) {
                    acc.disagreements += 1;
                }
            }
        }
        acc
    });
    per_plane.into_iter().fold(
        GridAgreement {
            checked: 0,
            skipped: 0,
            disagreements: 0,
        },
        |x, y| GridAgreement {
            checked: x.checked + y.checked,
            skipped: x.skipped + y.skipped,
            disagreements: x.disagreements + y.disagreements,
        },
    )
}

/// Integrates one game from several starting points.
pub fn integrate_many(
    g: &MatrixGame,
    starts: &[SimplexPoint],
    t_end: f64,
    h: f64,
) -> Vec<Result<Trajectory>> {
    par_map(starts, |x0| integrate(g, x0, t_end, h))
}
