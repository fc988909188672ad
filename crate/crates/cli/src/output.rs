//! Report rendering: versioned JSON envelope, CSV rows, and a human view.
//!
//! JSON field order follows struct declaration order, and every value in a
//! report is derived deterministically from the seed, so identical
//! invocations emit byte-identical documents.

use std::io::{IsTerminal, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use spinx_core::{CheckReport, OrderElement, SearchCertificate, SpectralData};

use crate::parse::CliError;

pub const SCHEMA: &str = "spinx-report/1";

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub enum Payload<'a> {
    Check(&'a CheckReport),
    Certificate(&'a SearchCertificate),
    Element(Box<OrderElement>),
    Spectral(Box<SpectralData>),
}

impl Payload<'_> {
    pub fn element(e: OrderElement) -> Self {
        Payload::Element(Box::new(e))
    }

    pub fn spectral(d: SpectralData) -> Self {
        Payload::Spectral(Box::new(d))
    }
}

pub struct Document<'a> {
    pub kind: &'static str,
    pub expected_all_pass: Option<bool>,
    pub payload: Payload<'a>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_all_pass: Option<bool>,
    report: &'a T,
}

impl Document<'_> {
    pub fn emit(&self, format: Format) -> Result<(), CliError> {
        let mut out = std::io::stdout().lock();
        match format {
            Format::Json => self.emit_json(&mut out),
            Format::Csv => self.emit_csv(&mut out),
            Format::Human => self.emit_human(&mut out),
        }
        .map_err(CliError::from)
    }

    fn emit_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        let text = match &self.payload {
            Payload::Check(r) => serde_json::to_string(&self.envelope(r)),
            Payload::Certificate(c) => serde_json::to_string(&self.envelope(c)),
            Payload::Element(e) => serde_json::to_string(&self.envelope(e.as_ref())),
            Payload::Spectral(d) => serde_json::to_string(&self.envelope(d.as_ref())),
        }
        .expect("reports serialize");
        writeln!(out, "{text}")
    }

    fn envelope<'a, T: Serialize>(&'a self, report: &'a T) -> Envelope<'a, T> {
        Envelope { schema: SCHEMA, kind: self.kind, expected_all_pass: self.expected_all_pass, report }
    }

    fn emit_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        match &self.payload {
            Payload::Check(r) => {
                writeln!(out, "id,pass,max_defect")?;
                for a in &r.axioms {
                    writeln!(out, "{},{},{}", a.id, a.pass, a.max_defect)?;
                }
                Ok(())
            }
            Payload::Certificate(c) => {
                writeln!(out, "resolution,min_defect,verdict")?;
                writeln!(out, "{},{},{:?}", c.resolution, c.min_defect, c.verdict)
            }
            Payload::Element(e) => {
                writeln!(out, "{},{}", join(e.v.as_slice()), e.alpha)
            }
            Payload::Spectral(d) => {
                writeln!(out, "lambda_minus,lambda_plus,p_alpha")?;
                writeln!(out, "{},{},{}", d.lambda_minus, d.lambda_plus, d.p.alpha)
            }
        }
    }

    fn emit_human(&self, out: &mut impl Write) -> std::io::Result<()> {
        let color = std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none();
        let verdict = |pass: bool| match (pass, color) {
            (true, true) => "\x1b[32mpass\x1b[0m".to_string(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".to_string(),
            (true, false) => "pass".to_string(),
            (false, false) => "FAIL".to_string(),
        };
        match &self.payload {
            Payload::Check(r) => {
                writeln!(out, "campaign {} on {} (seed {})", r.campaign, r.space, r.seed)?;
                for a in &r.axioms {
                    writeln!(out, "  {:32} {}  max defect {:.3e}", a.id, verdict(a.pass), a.max_defect)?;
                }
                if let Some(expected) = self.expected_all_pass {
                    writeln!(
                        out,
                        "overall: {} (expected all-pass: {expected})",
                        verdict(r.all_pass() == expected)
                    )?;
                }
                Ok(())
            }
            Payload::Certificate(c) => {
                writeln!(out, "sweep of {} at resolution {}", c.space, c.resolution)?;
                writeln!(out, "  min defect {:.6e} at", c.min_defect)?;
                writeln!(out, "  u = {:?}", c.argmin.u)?;
                writeln!(out, "  v = {:?}", c.argmin.v)?;
                writeln!(out, "  verdict: {:?}", c.verdict)
            }
            Payload::Element(e) => writeln!(out, "({:?}, {})", e.v.as_slice(), e.alpha),
            Payload::Spectral(d) => {
                writeln!(out, "lambda_minus = {}", d.lambda_minus)?;
                writeln!(out, "lambda_plus  = {}", d.lambda_plus)?;
                writeln!(out, "p = ({:?}, {})", d.p.v.as_slice(), d.p.alpha)
            }
        }
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Defect surface rows `theta_u,theta_v,defect` for external plotting.
pub fn write_surface_csv(path: &Path, surface: &[[f64; 3]]) -> Result<(), CliError> {
    let mut text = String::with_capacity(surface.len() * 32 + 32);
    text.push_str("theta_u,theta_v,defect\n");
    for row in surface {
        text.push_str(&format!("{},{},{}\n", row[0], row[1], row[2]));
    }
    std::fs::write(path, text).map_err(CliError::from)
}
