use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use game_decomp::bases::{basis_e, basis_k, basis_n, BasisKind};
use game_decomp::batch::par_map;
use game_decomp::dynamics::{integrate_bimatrix, integrate_with_tol, log_integral};
use game_decomp::nplayer::{anti_zero_sum_dims, potential_dims};
use game_decomp::{
    anti_potential_dims, bimatrix_dimensions, bimatrix_inner_product, bimatrix_stability,
    decompose_bimatrix, decompose_symmetric, decompose_tensor, dimensions, field_split,
    inner_product, preference_digraph, replicator_field, replicator_field_bimatrix,
    stability_report, tensor_inner_product, zeeman3, zeeman3_classify, zeeman4, zeeman4_classify,
    SimplexPoint, TensorGame, Tolerances, Zeeman3Params, Zeeman4Params,
};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{BasisArg, Cli, Command, Coords, ZeemanCommand};
use crate::error::{CliError, Result};
use crate::gamefile::{Game, GameFile, Loaded};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decompose { files, pretty, .. } => decompose(&files, pretty),
        Command::Classify { files, tol } => classify(&files, tol),
        Command::Simulate {
            file,
            x0,
            y0,
            t_end,
            step,
            out,
            track_h,
        } => simulate(&file, x0, y0, t_end, step, out.as_deref(), track_h),
        Command::Field { file, x, y } => field(&file, x, y),
        Command::Zeeman { which } => zeeman(which),
        Command::Basis {
            kind,
            l,
            lr,
            lc,
            i,
            j,
        } => basis(kind, l, lr, lc, i, j),
        Command::Dims { l, lr, lc, n } => dims(l, lr, lc, n),
        Command::Digraph { file, out } => digraph(&file, out.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e))
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Pretty JSON with arrays of scalars kept on one line.
fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("report values serialize");
    let mut out = String::new();
    render(&value, 0, &mut out);
    out.push('\n');
    out
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", inner.join(", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::from(key.as_str()));
                render(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn load_all(files: &[PathBuf]) -> Result<Vec<Loaded>> {
    files.iter().map(|f| GameFile::read(f)).collect()
}

fn one_or_many(values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.into_iter().next().expect("one value")
    } else {
        Value::Array(values)
    }
}

fn decompose(files: &[PathBuf], pretty: bool) -> Result<()> {
    let loaded = load_all(files)?;
    let reports = par_map(&loaded, decomposition_report)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    if pretty {
        let text: String = loaded
            .iter()
            .zip(&reports)
            .map(|(l, r)| pretty_decomposition(l, r))
            .collect::<Vec<_>>()
            .join("\n");
        emit(None, &text)
    } else {
        emit(None, &to_json(&one_or_many(reports)))
    }
}

fn decomposition_report(l: &Loaded) -> Result<Value> {
    let labels = || l.labels.clone();
    let ctx = |e| CliError::game(l.name.clone(), e);
    Ok(match &l.game {
        Game::Symmetric(g) => {
            let d = decompose_symmetric(g);
            let parts = [&d.anti_zero_sum, &d.kernel, &d.anti_potential];
            let ip = |x: usize, y: usize| inner_product(parts[x], parts[y]).map(f64::abs);
            json!({
                "file": l.name,
                "kind": "symmetric",
                "components": {
                    "anti_zero_sum": GameFile::symmetric(&d.anti_zero_sum, labels()),
                    "kernel": GameFile::symmetric(&d.kernel, labels()),
                    "anti_potential": GameFile::symmetric(&d.anti_potential, labels()),
                },
                "norms": {
                    "game": g.norm(),
                    "anti_zero_sum": d.anti_zero_sum.norm(),
                    "kernel": d.kernel.norm(),
                    "anti_potential": d.anti_potential.norm(),
                },
                "orthogonality": {
                    "anti_zero_sum.kernel": ip(0, 1).map_err(ctx)?,
                    "anti_zero_sum.anti_potential": ip(0, 2).map_err(ctx)?,
                    "kernel.anti_potential": ip(1, 2).map_err(ctx)?,
                },
                "reconstruction_residual": (d.sum() - g.payoff()).norm(),
            })
        }
        Game::Bimatrix(g) => {
            let d = decompose_bimatrix(g);
            let parts = [&d.anti_zero_sum, &d.kernel, &d.anti_potential];
            let ip = |x: usize, y: usize| bimatrix_inner_product(parts[x], parts[y]).map(f64::abs);
            json!({
                "file": l.name,
                "kind": "bimatrix",
                "components": {
                    "anti_zero_sum": GameFile::bimatrix(&d.anti_zero_sum, labels()),
                    "kernel": GameFile::bimatrix(&d.kernel, labels()),
                    "anti_potential": GameFile::bimatrix(&d.anti_potential, labels()),
                },
                "norms": {
                    "game": g.norm(),
                    "anti_zero_sum": d.anti_zero_sum.norm(),
                    "kernel": d.kernel.norm(),
                    "anti_potential": d.anti_potential.norm(),
                },
                "orthogonality": {
                    "anti_zero_sum.kernel": ip(0, 1).map_err(ctx)?,
                    "anti_zero_sum.anti_potential": ip(0, 2).map_err(ctx)?,
                    "kernel.anti_potential": ip(1, 2).map_err(ctx)?,
                },
                "reconstruction_residual": d.sum().sub(g).norm(),
            })
        }
        Game::NPlayer(g) => {
            let d = decompose_tensor(g).map_err(ctx)?;
            let ip = |x: &TensorGame, y: &TensorGame| tensor_inner_product(x, y).map(f64::abs);
            let residual = g
                .sub(&d.potential.add(&d.anti_potential))
                .norm()
                .max(g.sub(&d.zero_sum.add(&d.anti_zero_sum)).norm());
            json!({
                "file": l.name,
                "kind": "nplayer",
                "components": {
                    "potential": GameFile::nplayer(&d.potential, labels()),
                    "anti_potential": GameFile::nplayer(&d.anti_potential, labels()),
                    "zero_sum": GameFile::nplayer(&d.zero_sum, labels()),
                    "anti_zero_sum": GameFile::nplayer(&d.anti_zero_sum, labels()),
                },
                "norms": {
                    "game": g.norm(),
                    "potential": d.potential.norm(),
                    "anti_potential": d.anti_potential.norm(),
                    "zero_sum": d.zero_sum.norm(),
                    "anti_zero_sum": d.anti_zero_sum.norm(),
                },
                "orthogonality": {
                    "potential.anti_potential": ip(&d.potential, &d.anti_potential).map_err(ctx)?,
                    "zero_sum.anti_zero_sum": ip(&d.zero_sum, &d.anti_zero_sum).map_err(ctx)?,
                },
                "reconstruction_residual": residual,
            })
        }
    })
}

fn format_matrix(
    out: &mut String,
    m: &DMatrix<f64>,
    rows: Option<&[String]>,
    cols: Option<&[String]>,
) {
    let width = rows.map_or(0, |r| r.iter().map(String::len).max().unwrap_or(0));
    if let Some(cols) = cols {
        let _ = write!(out, "    {:width$}", "");
        for c in cols {
            let _ = write!(out, " {c:>12}");
        }
        out.push('\n');
    }
    for i in 0..m.nrows() {
        let name = rows.map_or("", |r| r[i].as_str());
        let _ = write!(out, "    {name:width$}");
        for j in 0..m.ncols() {
            let _ = write!(out, " {:>12.6}", m[(i, j)]);
        }
        out.push('\n');
    }
}

fn pretty_decomposition(l: &Loaded, report: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ({})",
        l.name,
        report["kind"].as_str().unwrap_or("")
    );
    let labels = l.labels.as_deref();
    let (row_labels, col_labels) = match (&l.game, labels) {
        (Game::Bimatrix(g), Some(names)) => {
            let (r, _) = g.shape();
            (Some(&names[..r]), Some(&names[r..]))
        }
        (_, names) => (names, names),
    };
    let components = report["components"].as_object().expect("components object");
    for (name, comp) in components {
        let norm = report["norms"][name].as_f64().unwrap_or(f64::NAN);
        let _ = writeln!(out, "  {name}  (norm {norm:.6e})");
        let file: GameFile =
            serde_json::from_value(comp.clone()).expect("component is a game file");
        match (&file.a, &file.b, &file.payoffs) {
            (Some(a), b, _) => {
                let m = DMatrix::from_fn(a.len(), a[0].len(), |i, j| a[i][j]);
                if b.is_some() {
                    out.push_str("   A\n");
                }
                format_matrix(&mut out, &m, row_labels, col_labels);
                if let Some(b) = b {
                    let m = DMatrix::from_fn(b.len(), b[0].len(), |i, j| b[i][j]);
                    out.push_str("   B\n");
                    format_matrix(&mut out, &m, row_labels, col_labels);
                }
            }
            (None, _, Some(tensors)) => {
                for (p, t) in tensors.iter().enumerate() {
                    let _ = writeln!(out, "    player {}: {}", p + 1, t);
                }
            }
            _ => {}
        }
    }
    let _ = writeln!(out, "  orthogonality");
    for (k, v) in report["orthogonality"]
        .as_object()
        .expect("orthogonality object")
    {
        let _ = writeln!(out, "    {k:<30} {:.3e}", v.as_f64().unwrap_or(f64::NAN));
    }
    let _ = writeln!(
        out,
        "  reconstruction residual {:.3e}",
        report["reconstruction_residual"]
            .as_f64()
            .unwrap_or(f64::NAN)
    );
    out
}

fn classify(files: &[PathBuf], tol: f64) -> Result<()> {
    let tol = Tolerances::with_classify(tol).map_err(|e| CliError::game("--tol", e))?;
    let loaded = load_all(files)?;
    let reports = par_map(&loaded, |l| match &l.game {
        Game::Symmetric(g) => {
            Ok(serde_json::to_value(stability_report(g, &tol)).expect("report serializes"))
        }
        Game::Bimatrix(g) => {
            Ok(serde_json::to_value(bimatrix_stability(g, &tol)).expect("report serializes"))
        }
        Game::NPlayer(_) => Err(CliError::Invalid(format!(
            "{}: kind: classify supports symmetric and bimatrix games",
            l.name
        ))),
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    emit(None, &to_json(&one_or_many(reports)))
}

fn simplex_point(c: Coords, flag: &str) -> Result<SimplexPoint> {
    SimplexPoint::new(c.0, &Tolerances::default()).map_err(|e| CliError::game(flag, e))
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn finite(v: f64, flag: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Invalid(format!(
            "{flag}: must be finite, got {v}"
        )))
    }
}

fn simulate(
    file: &Path,
    x0: Coords,
    y0: Option<Coords>,
    t_end: f64,
    step: f64,
    out: Option<&Path>,
    track_h: bool,
) -> Result<()> {
    let loaded = GameFile::read(file)?;
    let t_end = finite(t_end, "--t-end")?;
    let step = finite(step, "--step")?;
    let mut csv = String::new();
    match &loaded.game {
        Game::Symmetric(g) => {
            if y0.is_some() {
                return Err(CliError::Invalid(
                    "--y0: only used for bimatrix games".into(),
                ));
            }
            let x0 = simplex_point(x0, "--x0")?;
            check_len(x0.len(), g.strategies(), "--x0")?;
            let tol = Tolerances::default();
            let traj = integrate_with_tol(g, &x0, t_end, step, &tol)
                .map_err(|e| CliError::game("simulate", e))?;
            header(&mut csv, g.strategies(), 0, track_h);
            for (t, x) in traj.times.iter().zip(&traj.states) {
                let h = track_h.then(|| log_integral(x).unwrap_or(f64::NEG_INFINITY));
                row(&mut csv, *t, x.as_slice(), &[], h);
            }
        }
        Game::Bimatrix(g) => {
            let (lr, lc) = g.shape();
            let y0 =
                y0.ok_or_else(|| CliError::Invalid("--y0: required for bimatrix games".into()))?;
            let x0 = simplex_point(x0, "--x0")?;
            let y0 = simplex_point(y0, "--y0")?;
            check_len(x0.len(), lr, "--x0")?;
            check_len(y0.len(), lc, "--y0")?;
            let traj = integrate_bimatrix(g, &x0, &y0, t_end, step)
                .map_err(|e| CliError::game("simulate", e))?;
            header(&mut csv, lr, lc, track_h);
            for ((t, x), y) in traj.times.iter().zip(&traj.xs).zip(&traj.ys) {
                let h = track_h.then(|| {
                    log_integral(x).unwrap_or(f64::NEG_INFINITY)
                        + log_integral(y).unwrap_or(f64::NEG_INFINITY)
                });
                row(&mut csv, *t, x.as_slice(), y.as_slice(), h);
            }
        }
        Game::NPlayer(_) => {
            return Err(CliError::Invalid(format!(
                "{}: kind: simulate supports symmetric and bimatrix games",
                loaded.name
            )))
        }
    }
    emit(out, &csv)
}

fn check_len(got: usize, expected: usize, flag: &str) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(CliError::Invalid(format!(
            "{flag}: expected {expected} coordinates, got {got}"
        )))
    }
}

fn header(csv: &mut String, lx: usize, ly: usize, track_h: bool) {
    csv.push('t');
    for i in 1..=lx {
        let _ = write!(csv, ",x{i}");
    }
    for j in 1..=ly {
        let _ = write!(csv, ",y{j}");
    }
    if track_h {
        csv.push_str(",H");
    }
    csv.push('\n');
}

fn row(csv: &mut String, t: f64, x: &[f64], y: &[f64], h: Option<f64>) {
    csv.push_str(&num(t));
    for v in x.iter().chain(y) {
        csv.push(',');
        csv.push_str(&num(*v));
    }
    if let Some(h) = h {
        csv.push(',');
        csv.push_str(&num(h));
    }
    csv.push('\n');
}

fn vector(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

fn field(file: &Path, x: Coords, y: Option<Coords>) -> Result<()> {
    let loaded = GameFile::read(file)?;
    let report = match &loaded.game {
        Game::Symmetric(g) => {
            if y.is_some() {
                return Err(CliError::Invalid(
                    "--y: only used for bimatrix games".into(),
                ));
            }
            let x = simplex_point(x, "--x")?;
            check_len(x.len(), g.strategies(), "--x")?;
            let f = replicator_field(g, &x).map_err(|e| CliError::game("--x", e))?;
            let s = field_split(g, &x).map_err(|e| CliError::game("--x", e))?;
            json!({
                "x": x.as_slice(),
                "field": vector(&f),
                "potential_part": vector(&s.potential_part),
                "monotonic_part": vector(&s.monotonic_part),
                "conservative_part": vector(&s.conservative_part),
                "eta": vector(&s.eta),
            })
        }
        Game::Bimatrix(g) => {
            let (lr, lc) = g.shape();
            let y =
                y.ok_or_else(|| CliError::Invalid("--y: required for bimatrix games".into()))?;
            let x = simplex_point(x, "--x")?;
            let y = simplex_point(y, "--y")?;
            check_len(x.len(), lr, "--x")?;
            check_len(y.len(), lc, "--y")?;
            let (fx, fy) =
                replicator_field_bimatrix(g, &x, &y).map_err(|e| CliError::game("field", e))?;
            json!({
                "x": x.as_slice(),
                "y": y.as_slice(),
                "x_field": vector(&fx),
                "y_field": vector(&fy),
            })
        }
        Game::NPlayer(_) => {
            return Err(CliError::Invalid(format!(
                "{}: kind: field supports symmetric and bimatrix games",
                loaded.name
            )))
        }
    };
    emit(None, &to_json(&report))
}

fn zeeman(which: ZeemanCommand) -> Result<()> {
    let tol = Tolerances::default();
    let (params, game, report, out) = match which {
        ZeemanCommand::Gen3 {
            alpha,
            beta,
            eta,
            theta,
            out,
        } => {
            let p = Zeeman3Params {
                alpha: finite(alpha, "--alpha")?,
                beta: finite(beta, "--beta")?,
                eta: finite(eta, "--eta")?,
                theta: finite(theta, "--theta")?,
            };
            let g = zeeman3(&p);
            let r = serde_json::to_value(zeeman3_classify(&p, &tol)).expect("report serializes");
            (
                serde_json::to_value(p).expect("params serialize"),
                g,
                r,
                out,
            )
        }
        ZeemanCommand::Gen4 {
            alpha,
            beta,
            gamma,
            eta,
            out,
        } => {
            let p = Zeeman4Params {
                alpha: finite(alpha, "--alpha")?,
                beta: finite(beta, "--beta")?,
                gamma: finite(gamma, "--gamma")?,
                eta: finite(eta, "--eta")?,
            };
            let g = zeeman4(&p);
            let r = serde_json::to_value(zeeman4_classify(&p, &tol)).expect("report serializes");
            (
                serde_json::to_value(p).expect("params serialize"),
                g,
                r,
                out,
            )
        }
    };
    let file = GameFile::symmetric(game.payoff(), None);
    match out {
        Some(path) => {
            emit(Some(&path), &to_json(&file))?;
            emit(
                None,
                &to_json(&json!({ "parameters": params, "report": report })),
            )
        }
        None => emit(
            None,
            &to_json(&json!({ "parameters": params, "game": file, "report": report })),
        ),
    }
}

fn required(v: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    v.ok_or_else(|| CliError::Invalid(format!("{flag}: required for basis {kind}")))
}

fn basis(
    kind: BasisArg,
    l: Option<usize>,
    lr: Option<usize>,
    lc: Option<usize>,
    i: Option<usize>,
    j: Option<usize>,
) -> Result<()> {
    let shape = match (l, lr, lc) {
        (_, Some(r), Some(c)) => (r, c),
        (Some(l), None, None) => (l, l),
        _ => {
            return Err(CliError::Invalid(
                "--l: give --l, or both --lr and --lc".into(),
            ))
        }
    };
    let name = format!("{kind:?}");
    let ctx = |e| CliError::game(format!("basis {name}"), e);
    let m = match kind {
        BasisArg::K | BasisArg::N => {
            if shape.0 != shape.1 {
                return Err(CliError::Invalid(format!(
                    "--lr: basis {name} is square, got {}x{}",
                    shape.0, shape.1
                )));
            }
            let (i, j) = (required(i, "--i", &name)?, required(j, "--j", &name)?);
            if kind == BasisArg::K {
                basis_k(shape.0, i, j)
            } else {
                basis_n(shape.0, i, j)
            }
        }
        BasisArg::Ek => basis_e(
            BasisKind::EKappa,
            shape.0,
            shape.1,
            required(i, "--i", &name)?,
            required(j, "--j", &name)?,
        ),
        BasisArg::Eg => basis_e(
            BasisKind::EGamma,
            shape.0,
            shape.1,
            1,
            required(j, "--j", &name)?,
        ),
        BasisArg::Ee => basis_e(
            BasisKind::EEta,
            shape.0,
            shape.1,
            required(i, "--i", &name)?,
            1,
        ),
    }
    .map_err(ctx)?;
    emit(None, &to_json(&game_decomp::game::matrix_to_rows(&m)))
}

fn dims(l: Option<usize>, lr: Option<usize>, lc: Option<usize>, n: Option<usize>) -> Result<()> {
    let ctx = |e| CliError::game("dims", e);
    let report = match (l, lr, lc, n) {
        (Some(l), _, _, Some(n)) => json!({
            "players": n,
            "strategies": l,
            "dim_potential": potential_dims(n, l).map_err(ctx)?,
            "dim_anti_potential": anti_potential_dims(n, l).map_err(ctx)?,
            "dim_anti_zero_sum": anti_zero_sum_dims(n, l).map_err(ctx)?,
        }),
        (_, Some(r), Some(c), None) => {
            serde_json::to_value(bimatrix_dimensions(r, c).map_err(ctx)?).expect("serializes")
        }
        (Some(l), None, None, None) => {
            serde_json::to_value(dimensions(l).map_err(ctx)?).expect("serializes")
        }
        _ => {
            return Err(CliError::Invalid(
                "--l: give --l, or both --lr and --lc".into(),
            ))
        }
    };
    emit(None, &to_json(&report))
}

fn dot_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn digraph(file: &Path, out: Option<&Path>) -> Result<()> {
    let loaded = GameFile::read(file)?;
    let Game::Symmetric(g) = &loaded.game else {
        return Err(CliError::Invalid(format!(
            "{}: kind: digraph needs a symmetric game",
            loaded.name
        )));
    };
    let d = preference_digraph(g, &Tolerances::default())
        .map_err(|e| CliError::game(loaded.name.clone(), e))?;
    let text = match &loaded.labels {
        None => d.to_dot(),
        Some(names) => {
            let mut s = String::from("digraph {\n");
            for (k, name) in names.iter().enumerate() {
                let _ = writeln!(s, "  {} [label={}];", k + 1, dot_string(name));
            }
            for (i, j) in &d.edges {
                let _ = writeln!(s, "  {i} -> {j};");
            }
            s.push_str("}\n");
            s
        }
    };
    emit(out, &text)
}
