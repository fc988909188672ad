//! Shell-friendly mini-grammar for spaces and order elements, plus the
//! CLI error-to-exit-code mapping.

use std::fmt;

use spinx_core::{Error, OrderElement, Space};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FINDING: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn usage(msg: String) -> Self {
        CliError::Usage(msg)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpace(_)
            | Error::DimensionMismatch { .. }
            | Error::NonFinite
            | Error::InvalidGrid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// `lp:<p>:<dim>` (p a real ≥ 1 or `inf`), `hilbert:<dim>`, or
/// `weighted:<file.json>` where the file holds a space object
/// `{"kind": "weighted", "dim": n, "gram": [[...]]}`.
pub fn parse_space(spec: &str) -> Result<Space, CliError> {
    let bad = |msg: String| CliError::Usage(format!("invalid space spec {spec:?}: {msg}"));
    let mut parts = spec.splitn(2, ':');
    let kind = parts.next().unwrap_or_default();
    let rest = parts.next().unwrap_or_default();
    match kind {
        "lp" => {
            let (p_text, dim_text) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected lp:<p>:<dim>".into()))?;
            let p = if p_text == "inf" {
                f64::INFINITY
            } else {
                p_text.parse::<f64>().map_err(|e| bad(format!("bad exponent: {e}")))?
            };
            let dim =
                dim_text.parse::<usize>().map_err(|e| bad(format!("bad dimension: {e}")))?;
            Space::lp(p, dim).map_err(CliError::from)
        }
        "hilbert" => {
            let dim = rest.parse::<usize>().map_err(|e| bad(format!("bad dimension: {e}")))?;
            Space::hilbert(dim).map_err(CliError::from)
        }
        "weighted" => {
            if rest.is_empty() {
                return Err(bad("expected weighted:<file.json>".into()));
            }
            let text = std::fs::read_to_string(rest)
                .map_err(|e| bad(format!("cannot read {rest:?}: {e}")))?;
            serde_json::from_str::<Space>(&text).map_err(|e| bad(format!("bad space JSON: {e}")))
        }
        other => Err(bad(format!("unknown kind {other:?}"))),
    }
}

/// Order-element literal `"[c1,...,cn];alpha"`.
pub fn parse_element(space: &Space, text: &str) -> Result<OrderElement, CliError> {
    let bad = |msg: String| CliError::Usage(format!("invalid element {text:?}: {msg}"));
    let (coords_text, alpha_text) =
        text.split_once(';').ok_or_else(|| bad("expected \"[c1,...,cn];alpha\"".into()))?;
    let coords_text = coords_text.trim();
    let inner = coords_text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("coordinates must be bracketed".into()))?;
    let coords: Vec<f64> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("bad coordinate: {e}")))?
    };
    let alpha = alpha_text
        .trim()
        .parse::<f64>()
        .map_err(|e| bad(format!("bad scalar part: {e}")))?;
    space.element(&coords, alpha).map_err(CliError::from)
}
