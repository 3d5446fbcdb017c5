use std::fmt::Write as _;
use std::io::Write;

use metrized_tau::TauResult;
use serde::Serialize;

use crate::compute::{KirchhoffReport, SpectrumReport};
use crate::error::CliError;
use crate::{Format, OutputArgs};

/// `1/x` with five decimals, the layout of the published tables.
pub fn reciprocal(x: f64) -> String {
    format!("1/{:.5}", 1.0 / x)
}

pub trait Render {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

pub fn emit<R: Render + Serialize>(out: &OutputArgs, report: &R) -> Result<(), CliError> {
    let body = match out.format {
        Format::Text => report.text(),
        Format::Csv => report.csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
pub struct TauReport {
    pub graph: String,
    #[serde(flatten)]
    pub result: TauResult,
}

impl Render for TauReport {
    fn text(&self) -> String {
        let r = &self.result;
        let mut s = String::new();
        let _ = writeln!(s, "graph: {} (v={}, e={}, genus={})", self.graph, r.v, r.e, r.genus);
        let _ = writeln!(s, "method: {}", r.method);
        let _ = writeln!(s, "tau = {:.7} ({})", r.tau, reciprocal(r.tau));
        let _ = writeln!(s, "first term = {:.10}, second term = {:.10}", r.first_term, r.second_term);
        if !r.normalized {
            let _ = writeln!(
                s,
                "total length = {}, tau/length = {:.7} ({})",
                r.diagnostics.total_length,
                r.normalized_tau(),
                reciprocal(r.normalized_tau())
            );
        }
        if let Some((lo, hi)) = r.diagnostics.trace_ci95 {
            let _ = writeln!(s, "tr(L+) 95% interval = [{lo:.6}, {hi:.6}]");
        }
        if let Some(note) = &r.diagnostics.note {
            let _ = writeln!(s, "note: {note}");
        }
        s
    }

    fn csv(&self) -> String {
        let r = &self.result;
        format!(
            "graph,v,e,genus,method,tau,reciprocal,first_term,second_term,total_length\n\
             \"{}\",{},{},{},{},{:e},{:.5},{:e},{:e},{:e}\n",
            self.graph,
            r.v,
            r.e,
            r.genus,
            r.method,
            r.tau,
            1.0 / r.tau,
            r.first_term,
            r.second_term,
            r.diagnostics.total_length
        )
    }
}

impl Render for KirchhoffReport {
    fn text(&self) -> String {
        let mut s = format!(
            "graph: {} (v={})\nKf = {:.10} ({} route{})\n",
            self.label,
            self.v,
            self.kirchhoff_index,
            self.route,
            if self.normalized { ", normalized" } else { "" }
        );
        if let Some((lo, hi)) = self.hex_bounds {
            let inside = lo <= self.kirchhoff_index && self.kirchhoff_index <= hi;
            let _ = writeln!(s, "published bracket [{lo:.4}, {hi:.4}]: {}", if inside { "inside" } else { "OUTSIDE" });
        }
        s
    }

    fn csv(&self) -> String {
        format!(
            "graph,v,kirchhoff_index,route\n\"{}\",{},{:e},{}\n",
            self.label, self.v, self.kirchhoff_index, self.route
        )
    }
}

impl Render for SpectrumReport {
    fn text(&self) -> String {
        let mut s = format!(
            "graph: {} ({} eigenvalues, {})\n",
            self.label,
            self.dim,
            if self.numeric { "numerical" } else { "closed form" }
        );
        if let Some(gap) = self.closed_form_gap {
            let _ = writeln!(s, "max gap to closed form: {gap:.3e}");
        }
        for (k, l) in self.eigenvalues.iter().enumerate() {
            let _ = writeln!(s, "{k:>6} {l:.12}");
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("index,eigenvalue\n");
        for (k, l) in self.eigenvalues.iter().enumerate() {
            let _ = writeln!(s, "{k},{l:e}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_layout() {
        assert_eq!(reciprocal(1.0 / 57.21661), "1/57.21661");
        assert_eq!(reciprocal(1.0 / 12.0), "1/12.00000");
    }
}
