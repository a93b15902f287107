//! Replicator dynamics on the simplex: field evaluation, the potential /
//! monotonic / conservative split, fixed-step RK4 integration and the
//! scalar diagnostics (`H = sum log x_i`, its derivative, divergence).

use nalgebra::{DMatrix, DVector};

use crate::decompose::decompose_matrix;
use crate::error::{GameError, Result};
use crate::game::{BimatrixGame, MatrixGame};
use crate::tol::Tolerances;

/// A point of the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    x: Vec<f64>,
}

impl SimplexPoint {
    /// Accepts entries `>= -tol.abs` summing to 1 within `tol.abs + tol.rel`;
    /// tiny negatives are clamped to 0.
    pub fn new(x: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if x.is_empty() {
            return Err(GameError::Domain("simplex point has no coordinates".into()));
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite() || *v < -tol.abs) {
            return Err(GameError::Domain(format!(
                "coordinate x{} = {} is negative or not finite",
                i + 1,
                x[i]
            )));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > tol.equality_bound(1.0) {
            return Err(GameError::Domain(format!(
                "coordinates sum to {sum}, not 1"
            )));
        }
        Ok(Self {
            x: x.into_iter().map(|v| v.max(0.0)).collect(),
        })
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        Self::new(x.to_vec(), &Tolerances::default())
    }

    pub fn barycenter(l: usize) -> Self {
        Self {
            x: vec![1.0 / l as f64; l],
        }
    }

    /// Vertex `e_i`, 1-based.
    pub fn vertex(l: usize, i: usize) -> Result<Self> {
        if !(1..=l).contains(&i) {
            return Err(GameError::Domain(format!(
                "vertex {i} out of range 1..={l}"
            )));
        }
        let mut x = vec![0.0; l];
        x[i - 1] = 1.0;
        Ok(Self { x })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.x)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_interior(&self) -> bool {
        self.x.iter().all(|v| *v > 0.0)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SimplexPoint>,
    /// `H(x) = sum log x_i` along the trajectory, when tracked.
    pub invariant_values: Option<Vec<f64>>,
}

impl Trajectory {
    /// Fills `invariant_values` with `H`; boundary states give `-inf`.
    pub fn track_log_integral(&mut self) {
        self.invariant_values = Some(self.states.iter().map(|s| log_sum(s.as_slice())).collect());
    }

    pub fn last(&self) -> &SimplexPoint {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }

    /// State at the first recorded time `>= t`.
    pub fn state_at(&self, t: f64) -> Option<&SimplexPoint> {
        let k = self.times.partition_point(|s| *s < t - 1e-12);
        self.states.get(k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixTrajectory {
    pub times: Vec<f64>,
    pub xs: Vec<SimplexPoint>,
    pub ys: Vec<SimplexPoint>,
    /// `H(x, y) = sum log x_i + sum log y_j`, when tracked.
    pub invariant_values: Option<Vec<f64>>,
}

impl BimatrixTrajectory {
    pub fn track_log_integral(&mut self) {
        self.invariant_values = Some(
            self.xs
                .iter()
                .zip(&self.ys)
                .map(|(x, y)| log_sum(x.as_slice()) + log_sum(y.as_slice()))
                .collect(),
        );
    }
}

/// The replicator field split into parts driven by the anti-zero-sum,
/// kernel and anti-potential components of the game.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSplit {
    pub potential_part: DVector<f64>,
    pub monotonic_part: DVector<f64>,
    pub conservative_part: DVector<f64>,
    /// Row payoffs of the constant game in the kernel, normalized to `eta_1 = 0`.
    pub eta: DVector<f64>,
}

impl FieldSplit {
    pub fn total(&self) -> DVector<f64> {
        &self.potential_part + &self.monotonic_part + &self.conservative_part
    }
}

fn check_len(l: usize, x: &SimplexPoint, what: &str) -> Result<()> {
    if x.len() != l {
        return Err(GameError::Dimension(format!(
            "{what} has {} coordinates, game has {l} strategies",
            x.len()
        )));
    }
    Ok(())
}

fn replicator(a: &DMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    let ax = a * x;
    let mean = x.dot(&ax);
    x.component_mul(&ax.add_scalar(-mean))
}

fn replicator_pair(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> (DVector<f64>, DVector<f64>) {
    let ay = a * y;
    let btx = b.tr_mul(x);
    let mx = x.dot(&ay);
    let my = y.dot(&btx);
    (
        x.component_mul(&ay.add_scalar(-mx)),
        y.component_mul(&btx.add_scalar(-my)),
    )
}

/// `x_i ((Ax)_i - x^T A x)`.
pub fn replicator_field(g: &MatrixGame, x: &SimplexPoint) -> Result<DVector<f64>> {
    check_len(g.strategies(), x, "x")?;
    Ok(replicator(g.payoff(), &x.to_vector()))
}

/// Two-population field `(x_i ((Ay)_i - x^T A y), y_j ((B^T x)_j - y^T B^T x))`.
pub fn replicator_field_bimatrix(
    g: &BimatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let (lr, lc) = g.shape();
    check_len(lr, x, "x")?;
    check_len(lc, y, "y")?;
    Ok(replicator_pair(
        g.a(),
        g.b(),
        &x.to_vector(),
        &y.to_vector(),
    ))
}

/// Splits the field of `A` minus its passive part. Passive games have a
/// vanishing field on the simplex, so the parts also sum to the field of `A`.
pub fn field_split(g: &MatrixGame, x: &SimplexPoint) -> Result<FieldSplit> {
    let l = g.strategies();
    check_len(l, x, "x")?;
    let d = decompose_matrix(g.payoff());
    let grand = d.kernel.mean();
    let mut eta = DVector::from_fn(l, |i, _| d.kernel.row(i).mean() - grand);
    let eta1 = eta[0];
    eta.add_scalar_mut(-eta1);

    let xv = x.to_vector();
    let mean_eta = eta.dot(&xv);
    Ok(FieldSplit {
        potential_part: replicator(&d.anti_zero_sum, &xv),
        monotonic_part: xv.component_mul(&eta.add_scalar(-mean_eta)),
        conservative_part: xv.component_mul(&(&d.anti_potential * &xv)),
        eta,
    })
}

fn log_sum(x: &[f64]) -> f64 {
    x.iter().map(|v| v.ln()).sum()
}

fn require_interior(x: &SimplexPoint) -> Result<()> {
    if let Some(i) = x.as_slice().iter().position(|v| *v <= 0.0) {
        return Err(GameError::Domain(format!(
            "x{} = 0: point is on the boundary, log undefined",
            i + 1
        )));
    }
    Ok(())
}

/// `H(x) = sum log x_i` at an interior point.
pub fn log_integral(x: &SimplexPoint) -> Result<f64> {
    require_interior(x)?;
    Ok(log_sum(x.as_slice()))
}

/// Time derivative of `H` along the flow: `sum_i (Ax)_i - l x^T A x`.
pub fn lyapunov_derivative(g: &MatrixGame, x: &SimplexPoint) -> Result<f64> {
    check_len(g.strategies(), x, "x")?;
    require_interior(x)?;
    let xv = x.to_vector();
    let ax = g.payoff() * &xv;
    Ok(ax.sum() - g.strategies() as f64 * xv.dot(&ax))
}

/// Divergence of the replicator field on the simplex:
/// `sum_k (Ax)_k - l <x, Ax> + sum_k x_k a_kk - <x, A^T x>`.
pub fn divergence(g: &MatrixGame, x: &SimplexPoint) -> Result<f64> {
    let l = g.strategies();
    check_len(l, x, "x")?;
    let a = g.payoff();
    let xv = x.to_vector();
    let ax = a * &xv;
    let atx = a.tr_mul(&xv);
    let diag: f64 = (0..l).map(|k| xv[k] * a[(k, k)]).sum();
    Ok(ax.sum() - l as f64 * xv.dot(&ax) + diag - xv.dot(&atx))
}

/// Divergence of the two-population field on `Delta_r x Delta_c`:
/// `sum_i (Ay)_i - l_r x^T A y + sum_j (B^T x)_j - l_c y^T B^T x`.
pub fn divergence_bimatrix(g: &BimatrixGame, x: &SimplexPoint, y: &SimplexPoint) -> Result<f64> {
    let (lr, lc) = g.shape();
    check_len(lr, x, "x")?;
    check_len(lc, y, "y")?;
    let (xv, yv) = (x.to_vector(), y.to_vector());
    let ay = g.a() * &yv;
    let btx = g.b().tr_mul(&xv);
    Ok(ay.sum() - lr as f64 * xv.dot(&ay) + btx.sum() - lc as f64 * yv.dot(&btx))
}

fn step_times(t_end: f64, h: f64) -> Result<Vec<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GameError::Domain(format!("step must be positive, got {h}")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(GameError::Domain(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    let ratio = t_end / h;
    let n = if (ratio - ratio.round()).abs() < 1e-9 {
        ratio.round()
    } else {
        ratio.ceil()
    } as usize;
    let n = n.max(1);
    let mut times: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    times.push(t_end);
    Ok(times)
}

fn rk4(f: &impl Fn(&DVector<f64>) -> DVector<f64>, x: &DVector<f64>, h: f64) -> DVector<f64> {
    let k1 = f(x);
    let k2 = f(&(x + &k1 * (h / 2.0)));
    let k3 = f(&(x + &k2 * (h / 2.0)));
    let k4 = f(&(x + &k3 * h));
    x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Clamps tiny negatives and renormalizes; `None` when a coordinate is
/// negative beyond `tol.abs`.
fn retract(mut x: DVector<f64>, tol: &Tolerances) -> Option<DVector<f64>> {
    if x.iter().any(|v| !v.is_finite() || *v < -tol.abs) {
        return None;
    }
    x.iter_mut().for_each(|v| *v = v.max(0.0));
    let s = x.sum();
    if s <= 0.0 {
        return None;
    }
    Some(x / s)
}

fn left_simplex(time: f64, last: &DVector<f64>) -> GameError {
    GameError::Integration {
        message: "a coordinate became negative beyond tolerance".into(),
        time,
        last_valid: last.iter().copied().collect(),
    }
}

/// Classical RK4 with fixed step `h` (the last step is shortened to land on
/// `t_end`), renormalizing onto the simplex after every step.
pub fn integrate(g: &MatrixGame, x0: &SimplexPoint, t_end: f64, h: f64) -> Result<Trajectory> {
    integrate_with_tol(g, x0, t_end, h, &Tolerances::default())
}

pub fn integrate_with_tol(
    g: &MatrixGame,
    x0: &SimplexPoint,
    t_end: f64,
    h: f64,
    tol: &Tolerances,
) -> Result<Trajectory> {
    check_len(g.strategies(), x0, "x0")?;
    let times = step_times(t_end, h)?;
    let a = g.payoff();
    let f = |x: &DVector<f64>| replicator(a, x);
    let mut x = x0.to_vector();
    let mut states = Vec::with_capacity(times.len());
    states.push(x0.clone());
    for w in times.windows(2) {
        let next = retract(rk4(&f, &x, w[1] - w[0]), tol).ok_or_else(|| left_simplex(w[1], &x))?;
        x = next;
        states.push(SimplexPoint {
            x: x.iter().copied().collect(),
        });
    }
    Ok(Trajectory {
        times,
        states,
        invariant_values: None,
    })
}

pub fn integrate_bimatrix(
    g: &BimatrixGame,
    x0: &SimplexPoint,
    y0: &SimplexPoint,
    t_end: f64,
    h: f64,
) -> Result<BimatrixTrajectory> {
    let (lr, lc) = g.shape();
    check_len(lr, x0, "x0")?;
    check_len(lc, y0, "y0")?;
    let tol = Tolerances::default();
    let times = step_times(t_end, h)?;
    let (a, b) = (g.a(), g.b());
    // stack (x, y) into one state vector
    let f = |z: &DVector<f64>| {
        let x = z.rows(0, lr).into_owned();
        let y = z.rows(lr, lc).into_owned();
        let (dx, dy) = replicator_pair(a, b, &x, &y);
        DVector::from_iterator(lr + lc, dx.iter().chain(dy.iter()).copied())
    };
    let mut z = DVector::from_iterator(lr + lc, x0.as_slice().iter().chain(y0.as_slice()).copied());
    let mut xs = vec![x0.clone()];
    let mut ys = vec![y0.clone()];
    for w in times.windows(2) {
        let stepped = rk4(&f, &z, w[1] - w[0]);
        let x = retract(stepped.rows(0, lr).into_owned(), &tol);
        let y = retract(stepped.rows(lr, lc).into_owned(), &tol);
        let (Some(x), Some(y)) = (x, y) else {
            return Err(left_simplex(w[1], &z));
        };
        xs.push(SimplexPoint {
            x: x.iter().copied().collect(),
        });
        ys.push(SimplexPoint {
            x: y.iter().copied().collect(),
        });
        z = DVector::from_iterator(lr + lc, x.iter().chain(y.iter()).copied());
    }
    Ok(BimatrixTrajectory {
        times,
        xs,
        ys,
        invariant_values: None,
    })
}
