//! File formats and configuration shared by the command-line tools.
//!
//! Matrix text format: first line `rows cols`, then `rows` lines of `cols`
//! whitespace-separated complex tokens shaped like `re{sign}imj`
//! (e.g. `0.5-0.5j`). Serialization uses 17 significant digits so parse and
//! serialize round-trip exactly.
//!
//! Ensemble JSON: `{"dims":[2,2],"items":[{"p":0.95,"vector":[[re,im],...]}]}`;
//! mixed members use `"matrix":[[[re,im],...],...]` instead of `"vector"`.

use crate::cmatrix::{CMatrix, CVector, Complex};
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Ensemble, EnsembleMember, PureState};
use serde::{Deserialize, Serialize};

/// Unit choices and seeds shared by every subcommand. Seed precedence:
/// command-line flag, then the QIT_SEED environment variable, then the
/// config file, then the default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub k_boltzmann: f64,
    pub hbar: f64,
    pub default_tolerance: f64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            k_boltzmann: 1.0,
            hbar: 1.0,
            default_tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.k_boltzmann <= 0.0 || !self.k_boltzmann.is_finite() {
            return Err(Error::Validation("k_boltzmann must be positive".into()));
        }
        if self.hbar <= 0.0 || !self.hbar.is_finite() {
            return Err(Error::Validation("hbar must be positive".into()));
        }
        if self.default_tolerance <= 0.0 || !self.default_tolerance.is_finite() {
            return Err(Error::Validation("default_tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Parse a config JSON document.
pub fn parse_config(json: &str) -> Result<Config> {
    let config: Config = serde_json::from_str(json)
        .map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    config.validate()?;
    Ok(config)
}

/// Resolve the effective config from an optional file body, the QIT_SEED
/// environment value and an optional command-line seed.
pub fn resolve_config(
    file_json: Option<&str>,
    env_seed: Option<&str>,
    cli_seed: Option<u64>,
) -> Result<Config> {
    let mut config = match file_json {
        Some(body) => parse_config(body)?,
        None => Config::default(),
    };
    if let Some(raw) = env_seed {
        config.seed = raw.trim().parse::<u64>().map_err(|_| {
            Error::Validation(format!("QIT_SEED must be a 64-bit integer, got {raw:?}"))
        })?;
    }
    if let Some(seed) = cli_seed {
        config.seed = seed;
    }
    Ok(config)
}

fn format_real(x: f64) -> String {
    format!("{:.16e}", x)
}

/// One complex entry as `re{sign}imj`.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}j", format_real(z.re), sign, format_real(z.im.abs()))
}

fn parse_complex(token: &str, line: usize, column: usize) -> Result<Complex> {
    let body = token.strip_suffix(['j', 'J']).ok_or_else(|| Error::Parse {
        line,
        column,
        message: format!("complex token {token:?} does not end in 'j'"),
    })?;
    // The split sign is the first +/- that is neither leading nor an
    // exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
        }
    }
    let split = split.ok_or_else(|| Error::Parse {
        line,
        column,
        message: format!("complex token {token:?} has no imaginary part"),
    })?;
    let re: f64 = body[..split].parse().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("bad real part in {token:?}"),
    })?;
    let im: f64 = body[split..].parse().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("bad imaginary part in {token:?}"),
    })?;
    Ok(Complex::new(re, im))
}

/// Parse the matrix text format.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "empty matrix file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let parse_dim = |s: Option<&str>, what: &str| -> Result<usize> {
        s.and_then(|t| t.parse::<usize>().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::Parse {
                line: header_no + 1,
                column: 1,
                message: format!("header must be 'rows cols', missing {what}"),
            })
    };
    let rows = parse_dim(parts.next(), "rows")?;
    let cols = parse_dim(parts.next(), "cols")?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: header_no + 1,
            column: 1,
            message: "header must be exactly 'rows cols'".into(),
        });
    }

    let mut data = Vec::with_capacity(rows * cols);
    for expected_row in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: header_no + 2 + expected_row,
            column: 1,
            message: format!("expected {rows} matrix rows, found {expected_row}"),
        })?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(Error::Parse {
                line: line_no + 1,
                column: 1,
                message: format!("expected {cols} entries, found {}", tokens.len()),
            });
        }
        for (col, token) in tokens.iter().enumerate() {
            data.push(parse_complex(token, line_no + 1, col + 1)?);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no + 1,
            column: 1,
            message: "trailing content after the last matrix row".into(),
        });
    }
    CMatrix::new(rows, cols, data)
}

/// Serialize to the matrix text format (the canonical form).
pub fn serialize_matrix(m: &CMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct EnsembleFile {
    dims: Vec<usize>,
    items: Vec<EnsembleItemFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EnsembleItemFile {
    p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

/// Parse an ensemble JSON document.
pub fn parse_ensemble(json: &str) -> Result<Ensemble> {
    let file: EnsembleFile = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut items = Vec::with_capacity(file.items.len());
    for (idx, item) in file.items.into_iter().enumerate() {
        let member = match (item.vector, item.matrix) {
            (Some(v), None) => {
                let data: Vec<Complex> = v.iter().map(|[re, im]| Complex::new(*re, *im)).collect();
                EnsembleMember::Pure(PureState::new(CVector::new(data)?, &file.dims)?)
            }
            (None, Some(rows)) => {
                let converted: Vec<Vec<Complex>> = rows
                    .iter()
                    .map(|row| row.iter().map(|[re, im]| Complex::new(*re, *im)).collect())
                    .collect();
                EnsembleMember::Mixed(DensityOperator::new(
                    CMatrix::from_rows(&converted)?,
                    &file.dims,
                )?)
            }
            _ => {
                return Err(Error::Validation(format!(
                    "item {idx} must carry exactly one of 'vector' or 'matrix'"
                )))
            }
        };
        items.push((item.p, member));
    }
    Ensemble::new(items)
}

/// Serialize an ensemble to the JSON schema (canonical form).
pub fn serialize_ensemble(ensemble: &Ensemble) -> Result<String> {
    let items = ensemble
        .items()
        .iter()
        .map(|(p, member)| match member {
            EnsembleMember::Pure(psi) => EnsembleItemFile {
                p: *p,
                vector: Some(psi.vector().entries().iter().map(|z| [z.re, z.im]).collect()),
                matrix: None,
            },
            EnsembleMember::Mixed(rho) => EnsembleItemFile {
                p: *p,
                vector: None,
                matrix: Some(
                    (0..rho.dim())
                        .map(|i| {
                            (0..rho.dim())
                                .map(|j| {
                                    let z = rho.matrix().get(i, j);
                                    [z.re, z.im]
                                })
                                .collect()
                        })
                        .collect(),
                ),
            },
        })
        .collect();
    let file = EnsembleFile {
        dims: ensemble.dims().to_vec(),
        items,
    };
    serde_json::to_string_pretty(&file)
        .map_err(|e| Error::Validation(format!("serialization failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity_matrix() {
        let m = parse_matrix("2 2\n1+0j 0+0j\n0+0j 1+0j").unwrap();
        assert_eq!(m.max_abs_diff(&CMatrix::identity(2).unwrap()), 0.0);
    }

    #[test]
    fn parse_handles_scientific_notation_and_negative_parts() {
        let m = parse_matrix("1 2\n1.5e-3-2.0e-4j -0.5+0.25j").unwrap();
        assert_eq!(m.get(0, 0), Complex::new(1.5e-3, -2.0e-4));
        assert_eq!(m.get(0, 1), Complex::new(-0.5, 0.25));
    }

    #[test]
    fn serialize_parse_round_trip_is_canonical() {
        let m = CMatrix::from_rows(&[
            vec![Complex::new(0.785, 0.0), Complex::new(0.405, -1.0 / 3.0)],
            vec![Complex::new(0.405, 1.0 / 3.0), Complex::new(0.215, 0.0)],
        ])
        .unwrap();
        let text = serialize_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back.max_abs_diff(&m), 0.0);
        // Canonical: serialize(parse(x)) == x.
        assert_eq!(serialize_matrix(&back), text);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_matrix("2 2\n1+0j 0+0j\n0+0j nope").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 2);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let err = parse_matrix("2 2\n1+0j 0+0j").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn parsed_reference_matrix_is_a_density_operator() {
        let text = "2 2\n0.785+0j 0.405+0j\n0.405+0j 0.215+0j";
        let m = parse_matrix(text).unwrap();
        assert!(m.is_density());
    }

    #[test]
    fn ensemble_round_trip() {
        let json = r#"{
            "dims": [2],
            "items": [
                {"p": 0.95, "vector": [[0.8944271909999159, 0.0], [0.4472135954999579, 0.0]]},
                {"p": 0.05, "vector": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]}
            ]
        }"#;
        let ensemble = parse_ensemble(json).unwrap();
        let rho = ensemble.to_density().unwrap();
        let expected = CMatrix::from_real_rows(&[vec![0.785, 0.405], vec![0.405, 0.215]]).unwrap();
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-9);

        let text = serialize_ensemble(&ensemble).unwrap();
        let back = parse_ensemble(&text).unwrap();
        assert_eq!(serialize_ensemble(&back).unwrap(), text);
    }

    #[test]
    fn ensemble_with_mixed_member() {
        let json = r#"{
            "dims": [2],
            "items": [
                {"p": 0.5, "vector": [[1.0, 0.0], [0.0, 0.0]]},
                {"p": 0.5, "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}
            ]
        }"#;
        let ensemble = parse_ensemble(json).unwrap();
        let rho = ensemble.to_density().unwrap();
        let expected = CMatrix::diagonal(&[0.75, 0.25]).unwrap();
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn bad_probability_sum_names_the_invariant() {
        let json = r#"{
            "dims": [2],
            "items": [
                {"p": 0.5, "vector": [[1.0, 0.0], [0.0, 0.0]]},
                {"p": 0.4, "vector": [[0.0, 0.0], [1.0, 0.0]]}
            ]
        }"#;
        let err = parse_ensemble(json).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("sum to 0.9"), "{msg}"),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn config_defaults_and_overrides() {
        let config = resolve_config(None, None, None).unwrap();
        assert_eq!(config.k_boltzmann, 1.0);
        assert_eq!(config.hbar, 1.0);
        assert_eq!(config.seed, 0);

        let file = r#"{"k_boltzmann": 1.380649e-23, "seed": 11}"#;
        let config = resolve_config(Some(file), None, None).unwrap();
        assert_eq!(config.seed, 11);
        assert!((config.k_boltzmann - 1.380649e-23).abs() < 1e-30);

        // Environment beats the file, the flag beats both.
        let config = resolve_config(Some(file), Some("22"), None).unwrap();
        assert_eq!(config.seed, 22);
        let config = resolve_config(Some(file), Some("22"), Some(33)).unwrap();
        assert_eq!(config.seed, 33);
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(parse_config(r#"{"hbar": -1.0}"#).is_err());
        assert!(resolve_config(None, Some("not-a-number"), None).is_err());
        assert!(parse_config(r#"{"unknown_field": 1}"#).is_err());
    }

    #[test]
    fn shipped_data_files_parse_and_round_trip() {
        let data_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        let mut seen = 0;
        for entry in std::fs::read_dir(&data_dir).expect("data directory exists") {
            let path = entry.unwrap().path();
            let body = std::fs::read_to_string(&path).unwrap();
            match path.extension().and_then(|e| e.to_str()) {
                Some("mat") => {
                    let m = parse_matrix(&body).unwrap();
                    let canonical = serialize_matrix(&m);
                    assert_eq!(serialize_matrix(&parse_matrix(&canonical).unwrap()), canonical);
                    seen += 1;
                }
                Some("json") => {
                    let e = parse_ensemble(&body).unwrap();
                    let canonical = serialize_ensemble(&e).unwrap();
                    assert_eq!(
                        serialize_ensemble(&parse_ensemble(&canonical).unwrap()).unwrap(),
                        canonical
                    );
                    seen += 1;
                }
                _ => {}
            }
        }
        assert!(seen >= 5, "expected the shipped sample files, found {seen}");
    }
}
