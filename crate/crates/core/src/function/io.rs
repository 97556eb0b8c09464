//! Plain-text coefficient files.
//!
//! ```text
//! # comment
//! dim 2 degree 3 1
//! 1 0 2.0 1.0
//! 0 1 -1.0 0.0
//! ```
//!
//! The header gives the dimension and per-variable degree bounds; each
//! following line is `k_1 … k_n re im`. Unlisted coefficients are zero.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{CoeffFn, MultiIndex};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_coefficients(text: &str) -> Result<CoeffFn> {
    let mut header: Option<(usize, Vec<usize>)> = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match &header {
            None => {
                if tokens.len() < 4 || tokens[0] != "dim" || tokens[2] != "degree" {
                    return Err(parse_err(lineno, "expected header `dim n degree N_1 … N_n`"));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad dimension `{}`", tokens[1])))?;
                let degree = tokens[3..]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad degree `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if degree.len() != n {
                    return Err(parse_err(
                        lineno,
                        format!("header declares dim {n} but lists {} degree bounds", degree.len()),
                    ));
                }
                header = Some((n, degree));
            }
            Some((n, _)) => {
                if tokens.len() != n + 2 {
                    return Err(parse_err(
                        lineno,
                        format!("expected {} fields (k_1 … k_{n} re im), got {}", n + 2, tokens.len()),
                    ));
                }
                let k = tokens[..*n]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad index `{t}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let re: f64 = tokens[*n]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad real part `{}`", tokens[*n])))?;
                let im: f64 = tokens[n + 1]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad imaginary part `{}`", tokens[n + 1])))?;
                entries.push((MultiIndex(k), Complex64::new(re, im)));
            }
        }
    }
    let (n, degree) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    CoeffFn::from_sparse(&entries, n, &degree)
}

/// Writes every nonzero coefficient; zero functions produce a header only.
pub fn write_coefficients(f: &CoeffFn) -> String {
    let mut out = String::new();
    let degree: Vec<String> = f.degree().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "dim {} degree {}", f.dim(), degree.join(" "));
    for (k, a) in f.iter() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let idx: Vec<String> = k.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{} {:?} {:?}", idx.join(" "), a.re, a.im);
    }
    out
}
