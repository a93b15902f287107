//! The JSON game file format.
//!
//! ```json
//! {"kind": "symmetric", "A": [[0, -1, 1], [1, 0, -1], [-1, 1, 0]], "labels": ["R", "P", "S"]}
//! {"kind": "bimatrix", "A": [[1, -1], [-1, 1]], "B": [[-1, 1], [1, -1]]}
//! {"kind": "nplayer", "payoffs": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]}
//! ```
//!
//! For n-player games each entry of `payoffs` is one player's payoff tensor
//! as nested arrays, indexed by player 1's strategy first. Bimatrix labels
//! list the row strategies followed by the column strategies.

use std::path::Path;

use game_decomp::game::matrix_to_rows;
use game_decomp::{BimatrixGame, MatrixGame, TensorGame};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Symmetric,
    Bimatrix,
    Nplayer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub kind: Kind,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum Game {
    Symmetric(MatrixGame),
    Bimatrix(BimatrixGame),
    NPlayer(TensorGame),
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: String,
    pub game: Game,
    pub labels: Option<Vec<String>>,
}

impl GameFile {
    pub fn symmetric(a: &DMatrix<f64>, labels: Option<Vec<String>>) -> Self {
        Self {
            kind: Kind::Symmetric,
            a: Some(matrix_to_rows(a)),
            b: None,
            payoffs: None,
            labels,
        }
    }

    pub fn bimatrix(g: &BimatrixGame, labels: Option<Vec<String>>) -> Self {
        Self {
            kind: Kind::Bimatrix,
            a: Some(matrix_to_rows(g.a())),
            b: Some(matrix_to_rows(g.b())),
            payoffs: None,
            labels,
        }
    }

    pub fn nplayer(g: &TensorGame, labels: Option<Vec<String>>) -> Self {
        Self {
            kind: Kind::Nplayer,
            a: None,
            b: None,
            payoffs: Some(
                g.payoffs()
                    .iter()
                    .map(|t| nest(t, g.strategies()))
                    .collect(),
            ),
            labels,
        }
    }

    #[cfg(test)]
    pub fn from_game(game: &Game, labels: Option<Vec<String>>) -> Self {
        match game {
            Game::Symmetric(g) => Self::symmetric(g.payoff(), labels),
            Game::Bimatrix(g) => Self::bimatrix(g, labels),
            Game::NPlayer(g) => Self::nplayer(g, labels),
        }
    }

    pub fn read(path: &Path) -> Result<Loaded> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(&name, e))?;
        let file: GameFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{name}: malformed game file: {e}")))?;
        file.validate(name)
    }

    pub fn validate(self, name: String) -> Result<Loaded> {
        let invalid = |msg: String| CliError::Invalid(format!("{name}: {msg}"));
        let game = match self.kind {
            Kind::Symmetric => {
                forbid(self.b.is_some(), "B", "symmetric").map_err(invalid)?;
                forbid(self.payoffs.is_some(), "payoffs", "symmetric").map_err(invalid)?;
                let a = matrix_field("A", self.a.as_deref()).map_err(invalid)?;
                if a.nrows() != a.ncols() {
                    return Err(invalid(format!(
                        "A: symmetric games need a square matrix, got {}x{}",
                        a.nrows(),
                        a.ncols()
                    )));
                }
                Game::Symmetric(
                    MatrixGame::new(a).map_err(|e| CliError::game(format!("{name}: A"), e))?,
                )
            }
            Kind::Bimatrix => {
                forbid(self.payoffs.is_some(), "payoffs", "bimatrix").map_err(invalid)?;
                let a = matrix_field("A", self.a.as_deref()).map_err(invalid)?;
                let b = matrix_field("B", self.b.as_deref()).map_err(invalid)?;
                if a.shape() != b.shape() {
                    return Err(invalid(format!(
                        "B: shape {}x{} differs from A's {}x{}",
                        b.nrows(),
                        b.ncols(),
                        a.nrows(),
                        a.ncols()
                    )));
                }
                Game::Bimatrix(
                    BimatrixGame::new(a, b).map_err(|e| CliError::game(format!("{name}: B"), e))?,
                )
            }
            Kind::Nplayer => {
                forbid(self.a.is_some(), "A", "nplayer").map_err(invalid)?;
                forbid(self.b.is_some(), "B", "nplayer").map_err(invalid)?;
                let tensors = self
                    .payoffs
                    .as_deref()
                    .ok_or_else(|| invalid("payoffs: required for kind nplayer".into()))?;
                let (l, flat) = tensor_field(tensors).map_err(invalid)?;
                Game::NPlayer(
                    TensorGame::new(tensors.len(), l, flat)
                        .map_err(|e| CliError::game(format!("{name}: payoffs"), e))?,
                )
            }
        };
        if let Some(labels) = &self.labels {
            let expected = match &game {
                Game::Symmetric(g) => g.strategies(),
                Game::Bimatrix(g) => g.shape().0 + g.shape().1,
                Game::NPlayer(g) => g.strategies(),
            };
            if labels.len() != expected {
                return Err(invalid(format!(
                    "labels: expected {expected} names, got {}",
                    labels.len()
                )));
            }
        }
        Ok(Loaded {
            name,
            game,
            labels: self.labels,
        })
    }
}

fn forbid(present: bool, field: &str, kind: &str) -> std::result::Result<(), String> {
    if present {
        Err(format!("{field}: not allowed for kind {kind}"))
    } else {
        Ok(())
    }
}

fn matrix_field(
    field: &str,
    rows: Option<&[Vec<f64>]>,
) -> std::result::Result<DMatrix<f64>, String> {
    let rows = rows.ok_or_else(|| format!("{field}: required"))?;
    if rows.is_empty() || rows[0].is_empty() {
        return Err(format!("{field}: matrix is empty"));
    }
    let cols = rows[0].len();
    if let Some(k) = rows.iter().position(|r| r.len() != cols) {
        return Err(format!(
            "{field}: row {} has {} entries, expected {cols}",
            k + 1,
            rows[k].len()
        ));
    }
    Ok(DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

fn tensor_field(tensors: &[Value]) -> std::result::Result<(usize, Vec<Vec<f64>>), String> {
    let n = tensors.len();
    if n < 2 {
        return Err(format!("payoffs: need at least 2 players, got {n}"));
    }
    let l = match &tensors[0] {
        Value::Array(items) => items.len(),
        _ => return Err("payoffs[0]: expected a nested array".into()),
    };
    let flat = tensors
        .iter()
        .enumerate()
        .map(|(p, t)| {
            let mut out = Vec::new();
            flatten(t, n, l, &mut out, &format!("payoffs[{p}]"))?;
            Ok(out)
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    Ok((l, flat))
}

fn flatten(
    v: &Value,
    depth: usize,
    l: usize,
    out: &mut Vec<f64>,
    at: &str,
) -> std::result::Result<(), String> {
    if depth == 0 {
        return match v.as_f64() {
            Some(x) => {
                out.push(x);
                Ok(())
            }
            None => Err(format!("{at}: expected a number, got {v}")),
        };
    }
    let items = v
        .as_array()
        .ok_or_else(|| format!("{at}: expected an array nested {depth} more levels"))?;
    if items.len() != l {
        return Err(format!("{at}: has {} entries, expected {l}", items.len()));
    }
    for (k, item) in items.iter().enumerate() {
        flatten(item, depth - 1, l, out, &format!("{at}[{k}]"))?;
    }
    Ok(())
}

/// Nested arrays for a flat row-major tensor with `l` entries per axis.
pub fn nest(flat: &[f64], l: usize) -> Value {
    if flat.len() <= l {
        return Value::Array(flat.iter().map(|x| Value::from(*x)).collect());
    }
    let chunk = flat.len() / l;
    Value::Array(flat.chunks(chunk).map(|c| nest(c, l)).collect())
}
