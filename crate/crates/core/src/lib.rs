//! Orthogonal decomposition of finite normal-form games.
//!
//! Every `l x l` payoff matrix splits uniquely into an anti-zero-sum part
//! (symmetric, zero margins), an anti-potential part (antisymmetric, zero
//! margins) and a part in the kernel of `A -> P A P`, where
//! `P = I - (1/l) 1 1^T`. The same holds for bimatrix games with
//! Matching-Pennies style bases. On top of that the crate classifies games
//! (potential, zero-sum, stable), evaluates and integrates replicator
//! dynamics, builds Zeeman games and handles small n-player tensor games.
//!
//! ```
//! use game_decomp::{decompose_symmetric, MatrixGame};
//!
//! let rps = MatrixGame::from_rows(&[
//!     vec![0.0, -1.0, 1.0],
//!     vec![1.0, 0.0, -1.0],
//!     vec![-1.0, 1.0, 0.0],
//! ])
//! .unwrap();
//! let d = decompose_symmetric(&rps);
//! assert!(d.anti_zero_sum.norm() < 1e-12);
//! assert!((d.anti_potential - rps.payoff()).norm() < 1e-12);
//! ```

pub mod bases;
pub mod batch;
pub mod classify;
pub mod decompose;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod linalg;
pub mod nplayer;
pub mod tol;
pub mod zeeman;

pub use bases::{
    basis_e, basis_k, basis_n, basis_pair, bimatrix_dimensions, dimensions, BasisKind,
    DimensionReport,
};
pub use classify::{
    bimatrix_stability, is_potential, is_zero_sum, preference_digraph, stability_report,
    strict_stable_3, strict_stable_offdiag_3, CriterionReport, PreferenceDigraph, StabilityReport,
};
pub use decompose::{
    decompose_bimatrix, decompose_symmetric, gamma, gamma_bimatrix, kernel_split, sandholm_split,
    symmetrize, BimatrixDecomposition, Decomposition, KernelSplit, SandholmSplit,
};
pub use dynamics::{
    divergence, divergence_bimatrix, field_split, integrate, integrate_bimatrix, log_integral,
    lyapunov_derivative, replicator_field, replicator_field_bimatrix, FieldSplit, SimplexPoint,
    Trajectory,
};
pub use error::{GameError, Result};
pub use game::{
    bimatrix_inner_product, inner_product, projection_matrix, BimatrixGame, MatrixGame,
};
pub use nplayer::{anti_potential_dims, decompose_tensor, tensor_inner_product, TensorGame};
pub use tol::Tolerances;
pub use zeeman::{
    jacobian_at_barycenter, rotation_matrix, zeeman3, zeeman3_classify, zeeman4, zeeman4_classify,
    InteriorType, Zeeman3Params, Zeeman4Params, ZeemanReport,
};
