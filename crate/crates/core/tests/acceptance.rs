//! Acceptance checks. Each criterion prints one PASS/FAIL line with the
//! measured quantities; the process exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use game_decomp::bases::{
    basis_n, bimatrix_kernel_family, k_family, kernel_family, mp_anti_potential_family,
    mp_anti_zero_sum_family, n_family, passive_family, potential_generators, zero_sum_generators,
};
use game_decomp::batch::{decompose_many, strict_stable_3_grid};
use game_decomp::decompose::decompose_matrix;
use game_decomp::dynamics::{divergence, integrate, lyapunov_derivative, SimplexPoint};
use game_decomp::linalg::numerical_rank;
use game_decomp::nplayer::{
    anti_zero_sum_tensor_basis, potential_generators as tensor_potential_generators,
    three_player_anti_potential_basis, three_player_m6,
};
use game_decomp::zeeman::{
    characteristic_polynomial, zeeman3_closed_form_theta0, zeeman4_char_poly,
};
use game_decomp::{
    anti_potential_dims, bimatrix_dimensions, bimatrix_stability, decompose_bimatrix,
    decompose_symmetric, dimensions, inner_product, is_potential, is_zero_sum, projection_matrix,
    stability_report, tensor_inner_product, zeeman3, zeeman3_classify, zeeman4, zeeman4_classify,
    BimatrixGame, InteriorType, MatrixGame, TensorGame, Tolerances, Zeeman3Params, Zeeman4Params,
};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Generalized Rock-Paper-Scissors: win `w`, loss `l`.
fn grps(w: f64, l: f64) -> MatrixGame {
    MatrixGame::from_rows(&[vec![0.0, -l, w], vec![w, 0.0, -l], vec![-l, w, 0.0]]).unwrap()
}

fn combo(r: &mut impl Rng, family: &[DMatrix<f64>], l: usize) -> DMatrix<f64> {
    family.iter().fold(DMatrix::zeros(l, l), |acc, m| {
        acc + m * r.random_range(-1.0..1.0)
    })
}

fn bimatrix_combo(r: &mut impl Rng, family: &[BimatrixGame], lr: usize, lc: usize) -> BimatrixGame {
    family.iter().fold(BimatrixGame::zeros(lr, lc), |acc, g| {
        acc.add(&g.scaled(r.random_range(-1.0..1.0)))
    })
}

fn tensor_columns(gs: &[TensorGame]) -> Vec<DMatrix<f64>> {
    gs.iter()
        .map(|g| {
            let v: Vec<f64> = g.payoffs().iter().flatten().copied().collect();
            DMatrix::from_column_slice(v.len(), 1, &v)
        })
        .collect()
}

fn pairs_to_stacks(gs: &[BimatrixGame]) -> Vec<DMatrix<f64>> {
    gs.iter()
        .map(|g| {
            let (r, c) = g.shape();
            DMatrix::from_fn(2 * r, c, |i, j| {
                if i < r {
                    g.a()[(i, j)]
                } else {
                    g.b()[(i - r, j)]
                }
            })
        })
        .collect()
}

fn c1_grps_decomposition() -> Outcome {
    let d = decompose_symmetric(&grps(2.0, 1.0));
    let n23 = basis_n(3, 2, 3).unwrap();
    let ap_err = (&d.anti_potential - n23 * 1.5).amax();
    let j_minus_i = (DMatrix::from_element(3, 3, 1.0) - DMatrix::<f64>::identity(3, 3)) * 0.5;
    let sym_err = (&d.kernel + &d.anti_zero_sum - j_minus_i).amax();
    outcome(
        ap_err <= 1e-12 && sym_err <= 1e-12,
        format!(
            "|AP - 1.5 N23|max = {ap_err:.2e}, |K + AZS - (J-I)/2|max = {sym_err:.2e} (tol 1e-12)"
        ),
    )
}

fn c2_dimensions() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for l in 2..=6usize {
        let d = dimensions(l).unwrap();
        let mut range = k_family(l);
        range.extend(n_family(l));
        let checks = [
            (
                "potential",
                numerical_rank(&potential_generators(l)),
                l * (l + 1) / 2 + l - 1,
                d.dim_potential,
            ),
            (
                "zero-sum",
                numerical_rank(&zero_sum_generators(l)),
                l * l - (l - 1) * l / 2,
                d.dim_zero_sum,
            ),
            (
                "kernel",
                numerical_rank(&kernel_family(l)),
                2 * l - 1,
                d.dim_kernel,
            ),
            (
                "range",
                numerical_rank(&range),
                (l - 1) * (l - 1),
                d.dim_range,
            ),
            (
                "anti-potential",
                numerical_rank(&n_family(l)),
                (l - 1) * (l - 2) / 2,
                d.dim_anti_potential,
            ),
            (
                "anti-zero-sum",
                numerical_rank(&k_family(l)),
                (l - 1) * l / 2,
                d.dim_anti_zero_sum,
            ),
            ("passive", numerical_rank(&passive_family(l)), l, l),
        ];
        for (name, rank, formula, reported) in checks {
            if rank != formula || reported != formula {
                bad.push(format!(
                    "l={l} {name}: rank {rank}, formula {formula}, reported {reported}"
                ));
            }
        }
    }
    for lr in 2..=3usize {
        for lc in 2..=3usize {
            let d = bimatrix_dimensions(lr, lc).unwrap();
            let mp = (lr - 1) * (lc - 1);
            let ap = numerical_rank(&pairs_to_stacks(&mp_anti_potential_family(lr, lc)));
            let azs = numerical_rank(&pairs_to_stacks(&mp_anti_zero_sum_family(lr, lc)));
            let ker = numerical_rank(&pairs_to_stacks(&bimatrix_kernel_family(lr, lc)));
            if ap != mp || azs != mp || d.dim_anti_potential != mp || ker != 2 * (lr + lc - 1) {
                bad.push(format!(
                    "({lr},{lc}): MP ranks {ap}/{azs}, kernel {ker}, expected {mp}"
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 1.0,
        if bad.is_empty() {
            format!("l = 2..6 and (lr,lc) in {{2,3}}^2 all exact, {secs:.3} s")
        } else {
            bad.join("; ")
        },
    )
}

fn c3_criteria_equivalence() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(3);
    let mut cases = 0usize;
    let mut agree = 0usize;
    let mut exact_ok = true;
    let mut tally = |pot: game_decomp::CriterionReport, zs: game_decomp::CriterionReport| {
        cases += 2;
        agree += usize::from(pot.holds == pot.component_test)
            + usize::from(zs.holds == zs.component_test);
    };
    for _ in 0..1000 {
        let g = random_game(&mut r, 5);
        tally(is_potential(&g, &tol), is_zero_sum(&g, &tol));
        let b = random_bimatrix(&mut r, 5, 5);
        tally(is_potential(&b, &tol), is_zero_sum(&b, &tol));
    }
    for k in 0..200 {
        let l = 2 + k % 5;
        let p = random_potential_game(&mut r, l);
        let z = random_zero_sum_game(&mut r, l);
        let (pp, pz) = (is_potential(&p, &tol), is_zero_sum(&p, &tol));
        let (zp, zz) = (is_potential(&z, &tol), is_zero_sum(&z, &tol));
        exact_ok &= pp.holds && zz.holds;
        tally(pp, pz);
        tally(zp, zz);

        let (lr, lc) = (2 + k % 4, 2 + (k / 4) % 4);
        let ker = bimatrix_combo(&mut r, &bimatrix_kernel_family(lr, lc), lr, lc);
        let bp = ker.add(&bimatrix_combo(
            &mut r,
            &mp_anti_zero_sum_family(lr, lc),
            lr,
            lc,
        ));
        let bz = ker.add(&bimatrix_combo(
            &mut r,
            &mp_anti_potential_family(lr, lc),
            lr,
            lc,
        ));
        let (bpp, bpz) = (is_potential(&bp, &tol), is_zero_sum(&bp, &tol));
        let (bzp, bzz) = (is_potential(&bz, &tol), is_zero_sum(&bz, &tol));
        exact_ok &= bpp.holds && bzz.holds;
        tally(bpp, bpz);
        tally(bzp, bzz);
    }
    outcome(
        agree == cases && exact_ok,
        format!(
            "cycle vs component agreement {agree}/{cases}, exact members recognized: {exact_ok}"
        ),
    )
}

fn quadratic_form_max(r: &mut impl Rng, a: &DMatrix<f64>) -> f64 {
    let l = a.nrows();
    let p = projection_matrix(l).unwrap();
    let pap = &p * a * &p;
    (0..100)
        .map(|_| {
            let x = DVector::from_fn(l, |_, _| r.random_range(-1.0..1.0));
            x.dot(&(&pap * &x)).abs()
        })
        .fold(0.0, f64::max)
}

fn c4_null_stable() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(4);
    let (mut zs_null, mut zs_quad_max) = (0usize, 0.0f64);
    let mut bi_null = 0usize;
    for k in 0..500 {
        let l = 2 + k % 6;
        let g = random_zero_sum_game(&mut r, l);
        zs_null += usize::from(stability_report(&g, &tol).is_null_stable);
        zs_quad_max = zs_quad_max.max(quadratic_form_max(&mut r, g.payoff()));
        let (lr, lc) = (2 + k % 4, 2 + (k / 4) % 4);
        let a = random_matrix(&mut r, lr, lc);
        let ker = bimatrix_combo(&mut r, &bimatrix_kernel_family(lr, lc), lr, lc);
        let b = BimatrixGame::new(a.clone(), -a).unwrap().add(&ker);
        bi_null += usize::from(bimatrix_stability(&b, &tol).is_null_stable);
    }
    let (mut other_null, mut other_quad_min, mut drawn) = (0usize, f64::INFINITY, 0usize);
    let mut bi_other_null = 0usize;
    while drawn < 500 {
        let l = 2 + drawn % 6;
        let g = random_game(&mut r, l);
        if decompose_symmetric(&g).anti_zero_sum.norm() <= 1e-3 {
            continue;
        }
        drawn += 1;
        other_null += usize::from(stability_report(&g, &tol).is_null_stable);
        other_quad_min = other_quad_min.min(quadratic_form_max(&mut r, g.payoff()));
        let (lr, lc) = (2 + drawn % 4, 2 + (drawn / 4) % 4);
        let b = random_bimatrix(&mut r, lr, lc);
        bi_other_null += usize::from(bimatrix_stability(&b, &tol).is_null_stable);
    }
    outcome(
        zs_null == 500 && bi_null == 500 && other_null == 0 && bi_other_null == 0 && zs_quad_max < 1e-10 && other_quad_min > 1e-10,
        format!(
            "zero-sum null-stable {zs_null}/500 (bimatrix {bi_null}/500), others null-stable {other_null}/500 \
             (bimatrix {bi_other_null}/500), max|<x,PAPx>| zero-sum {zs_quad_max:.2e}, min over others {other_quad_min:.2e}"
        ),
    )
}

fn c5_grps_boundary() -> Outcome {
    let tol = Tolerances::default();
    let strict = stability_report(&grps(2.0, 1.0), &tol);
    let null = stability_report(&grps(1.0, 1.0), &tol);
    let unstable = stability_report(&grps(1.0, 2.0), &tol);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let amax = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let pass = strict.is_strict_stable
        && max(&strict.tangent_eigenvalues) < -1e-9
        && null.is_null_stable
        && !null.is_strict_stable
        && amax(&null.tangent_eigenvalues) < 1e-9
        && !unstable.is_stable
        && max(&unstable.tangent_eigenvalues) > 1e-9;
    outcome(
        pass,
        format!(
            "eigenvalues (2,1) {:?}, (1,1) {:?}, (1,2) {:?}",
            strict.tangent_eigenvalues, null.tangent_eigenvalues, unstable.tangent_eigenvalues
        ),
    )
}

fn c6_closed_form_grid() -> Outcome {
    let start = Instant::now();
    let r = strict_stable_3_grid(50, -2.0, 2.0, 1e-6, &Tolerances::default());
    outcome(
        r.disagreements == 0 && r.checked + r.skipped == 125_000 && r.checked > 0,
        format!(
            "checked {}, skipped in band {}, disagreements {} ({:.2} s)",
            r.checked,
            r.skipped,
            r.disagreements,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c7_conservation() -> Outcome {
    let rps = MatrixGame::from_rows(&[
        vec![0.0, -1.0, 1.0],
        vec![1.0, 0.0, -1.0],
        vec![-1.0, 1.0, 0.0],
    ])
    .unwrap();
    let x0 = SimplexPoint::from_slice(&[0.5, 0.3, 0.2]).unwrap();
    let drift = match integrate(&rps, &x0, 50.0, 0.01) {
        Ok(mut t) => {
            t.track_log_integral();
            let h = t.invariant_values.unwrap();
            h.iter().map(|v| (v - h[0]).abs()).fold(0.0, f64::max)
        }
        Err(e) => return outcome(false, format!("integration failed: {e}")),
    };
    let mut r = rng(7);
    let mut div_max = 0.0f64;
    for k in 0..20 {
        let l = 3 + k % 4;
        let g = MatrixGame::new(random_anti_potential(&mut r, l)).unwrap();
        for _ in 0..100 {
            let x = random_interior(&mut r, l);
            div_max = div_max.max(divergence(&g, &x).unwrap().abs());
        }
    }
    outcome(
        drift < 1e-6 && div_max < 1e-12,
        format!(
            "max |H(t) - H(0)| = {drift:.2e} (tol 1e-6), max |div| = {div_max:.2e} (tol 1e-12)"
        ),
    )
}

fn lyapunov_class(r: &mut impl Rng, l: usize) -> MatrixGame {
    let k = k_family(l).iter().fold(DMatrix::zeros(l, l), |acc, m| {
        acc + m * r.random_range(0.05..2.0)
    });
    MatrixGame::new(k + combo(r, &n_family(l), l)).unwrap()
}

fn c8_lyapunov() -> Outcome {
    let mut r = rng(8);
    let mut min_lh = f64::INFINITY;
    for k in 0..100 {
        let l = 3 + k % 4;
        let g = lyapunov_class(&mut r, l);
        let bary = SimplexPoint::barycenter(l);
        for _ in 0..100 {
            let x = random_interior(&mut r, l);
            if x.distance(&bary) < 1e-6 {
                continue;
            }
            min_lh = min_lh.min(lyapunov_derivative(&g, &x).unwrap());
        }
    }
    let mut monotone = 0usize;
    let mut worst = String::new();
    for k in 0..10 {
        let l = 3 + k % 3;
        let g = if k == 0 {
            grps(2.0, 1.0)
        } else {
            lyapunov_class(&mut r, l)
        };
        let x0 = random_interior(&mut r, l);
        let bary = SimplexPoint::barycenter(l);
        let traj = integrate(&g, &x0, 20.0, 0.01).unwrap();
        let d: Vec<f64> = [1.0, 5.0, 10.0, 20.0]
            .iter()
            .map(|t| traj.state_at(*t).unwrap().distance(&bary))
            .collect();
        if d.windows(2).all(|w| w[1] < w[0] || w[1] < 1e-12) {
            monotone += 1;
        } else {
            worst = format!(", non-monotone distances {d:?}");
        }
    }
    outcome(
        min_lh > 0.0 && monotone == 10,
        format!("min dH/dt = {min_lh:.3e} over 100 games x 100 points, monotone trajectories {monotone}/10{worst}"),
    )
}

fn spectrum(a: &DMatrix<f64>) -> Vec<(f64, f64)> {
    let mut ev: Vec<(f64, f64)> = a
        .complex_eigenvalues()
        .iter()
        .map(|c| (c.re, c.im))
        .collect();
    ev.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    ev
}

fn c9_zeeman3() -> Outcome {
    let tol = Tolerances::default();
    let mut r = rng(9);
    let mut spec_err = 0.0f64;
    let mut closed_err = 0.0f64;
    let mut params = vec![(1.0, -2.0, 1.9)];
    params.extend((0..20).map(|_| {
        (
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
        )
    }));
    for &(alpha, beta, eta) in &params {
        let base = zeeman3(&Zeeman3Params {
            alpha,
            beta,
            eta,
            theta: 0.0,
        });
        closed_err =
            closed_err.max((base.payoff() - zeeman3_closed_form_theta0(alpha, beta, eta)).amax());
        let s0 = spectrum(base.payoff());
        for k in 1..=10 {
            let g = zeeman3(&Zeeman3Params {
                alpha,
                beta,
                eta,
                theta: 0.3 * k as f64,
            });
            for (a, b) in s0.iter().zip(spectrum(g.payoff())) {
                spec_err = spec_err.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
            }
        }
    }
    let p = Zeeman3Params {
        alpha: 1.0,
        beta: -2.0,
        eta: 1.9,
        theta: 0.0,
    };
    let rep = zeeman3_classify(&p, &tol);
    let max_re = rep
        .jacobian_eigenvalues
        .iter()
        .filter(|c| c.re.hypot(c.im) > 1e-9)
        .map(|c| c.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let nonzero = rep
        .jacobian_eigenvalues
        .iter()
        .filter(|c| c.re.hypot(c.im) > 1e-9)
        .count();
    outcome(
        spec_err < 1e-9
            && closed_err < 1e-12
            && rep.ess_strategy == Some(1)
            && rep.closed_form_ess == Some(1)
            && nonzero == 2
            && max_re < -1e-9,
        format!(
            "theta spectrum drift {spec_err:.2e}, closed form error {closed_err:.2e}, (1,-2,1.9): ESS {:?}, \
             max nonzero Re = {max_re:.4}, interior {:?}",
            rep.ess_strategy, rep.interior_type
        ),
    )
}

fn c10_zeeman4() -> Outcome {
    let tol = Tolerances::default();
    let p = Zeeman4Params {
        alpha: -2.5,
        beta: -2.5,
        gamma: 2.0,
        eta: 1.9,
    };
    let rep = zeeman4_classify(&p, &tol);
    let g = zeeman4(&p);
    let numeric = characteristic_polynomial(g.payoff());
    let display = zeeman4_char_poly(&p);
    let scale = display.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let poly_err = numeric
        .iter()
        .zip(display)
        .map(|(a, b)| (a - b).abs() / if b == 0.0 { scale } else { b.abs() })
        .fold(0.0, f64::max);
    let max_re = rep
        .jacobian_eigenvalues
        .iter()
        .filter(|c| c.re.hypot(c.im) > 1e-9)
        .map(|c| c.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let sink = rep.interior_type == InteriorType::Sink;
    outcome(
        rep.ess_strategy == Some(2) && poly_err < 1e-9 && sink == (max_re < 0.0) && sink,
        format!(
            "ESS {:?}, char poly rel error {poly_err:.2e}, coefficients {display:?}, interior {:?}, max nonzero Re = {max_re:.4}",
            rep.ess_strategy, rep.interior_type
        ),
    )
}

fn c11_nplayer() -> Outcome {
    let m = three_player_anti_potential_basis();
    let dims = anti_potential_dims(3, 2).unwrap();
    let rank = numerical_rank(&tensor_columns(&m));
    let gens = tensor_potential_generators(3, 2).unwrap();
    let ortho = m
        .iter()
        .flat_map(|mk| {
            gens.iter()
                .map(move |g| tensor_inner_product(mk, g).unwrap().abs())
        })
        .fold(0.0, f64::max);
    let m6 = m[0].sub(&m[1].sub(&m[2]).sub(&m[3]).add(&m[4]));
    let m6_ok = m6 == three_player_m6();
    let counts: Vec<(usize, usize, usize)> = [(2, 2), (3, 2), (4, 2), (2, 3)]
        .iter()
        .map(|&(n, l)| (n, l, anti_zero_sum_tensor_basis(n, l).unwrap().len()))
        .collect();
    let counts_ok = counts
        .iter()
        .all(|&(n, l, c)| c == (l - 1usize).pow(n as u32));
    outcome(
        dims == 5 && rank == 5 && ortho < 1e-12 && m6_ok && counts_ok,
        format!(
            "dim = {dims}, rank = {rank}, max |<M_k, potential>| = {ortho:.1e}, M6 identity {m6_ok}, \
             anti-zero-sum counts {counts:?}"
        ),
    )
}

fn c12_property_suite() -> Outcome {
    let mut r = rng(12);
    let games: Vec<MatrixGame> = (0..1000)
        .map(|k| {
            let l = 2 + k % 7;
            let scale = 10f64.powi(r.random_range(-2..3));
            MatrixGame::new(random_matrix(&mut r, l, l) * scale).unwrap()
        })
        .collect();
    let start = Instant::now();
    let decs = decompose_many(&games);
    let (mut res, mut orth, mut idem) = (0.0f64, 0.0f64, 0.0f64);
    for (g, d) in games.iter().zip(&decs) {
        let a = g.payoff();
        let n = g.norm();
        res = res.max((d.sum() - a).norm() / (1.0 + n));
        let parts = [&d.anti_zero_sum, &d.kernel, &d.anti_potential];
        for i in 0..3 {
            for j in i + 1..3 {
                let ip = inner_product(parts[i], parts[j]).unwrap().abs();
                orth = orth.max(if n > 0.0 { ip / (n * n) } else { ip });
            }
        }
        let again = [
            (
                decompose_matrix(&d.anti_zero_sum).anti_zero_sum,
                &d.anti_zero_sum,
            ),
            (decompose_matrix(&d.kernel).kernel, &d.kernel),
            (
                decompose_matrix(&d.anti_potential).anti_potential,
                &d.anti_potential,
            ),
        ];
        for (x, y) in again {
            idem = idem.max((x - y).norm() / (1.0 + n));
        }
    }
    let bi_games: Vec<BimatrixGame> = (0..1000)
        .map(|k| random_bimatrix(&mut r, 2 + k % 7, 2 + (k / 7) % 7))
        .collect();
    for g in &bi_games {
        let d = decompose_bimatrix(g);
        let n = g.norm();
        res = res.max(d.sum().sub(g).norm() / (1.0 + n));
        let parts = [&d.anti_zero_sum, &d.kernel, &d.anti_potential];
        for i in 0..3 {
            for j in i + 1..3 {
                let ip = game_decomp::bimatrix_inner_product(parts[i], parts[j])
                    .unwrap()
                    .abs();
                orth = orth.max(ip / (n * n));
            }
        }
        let dd = decompose_bimatrix(&d.anti_potential);
        idem = idem.max(dd.anti_potential.sub(&d.anti_potential).norm() / (1.0 + n));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        res < 1e-12 && orth < 1e-9 && idem < 1e-12 && secs < 10.0,
        format!(
            "reconstruction {res:.2e}/(1+|A|), orthogonality {orth:.2e}/|A|^2, idempotence {idem:.2e}, {secs:.2} s \
             (1000 symmetric + 1000 bimatrix)"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("gRPS decomposition", c1_grps_decomposition),
        ("dimension formulas", c2_dimensions),
        ("cycle criteria equivalence", c3_criteria_equivalence),
        ("null-stable iff zero-sum", c4_null_stable),
        ("gRPS stability boundary", c5_grps_boundary),
        ("3-strategy closed form grid", c6_closed_form_grid),
        ("conservation", c7_conservation),
        ("Lyapunov function", c8_lyapunov),
        ("Zeeman 3-strategy", c9_zeeman3),
        ("Zeeman 4-strategy", c10_zeeman4),
        ("n-player bases", c11_nplayer),
        ("decomposition property suite", c12_property_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {} [{:.2} s]",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
