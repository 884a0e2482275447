//! Serialisation of reports to the supported output formats.

use std::fmt::Write as _;

use clap::ValueEnum;

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::products::HadamardProductReport;
use crate::spectra::{round_sig, ChromaticRecord, ExactSpectrum, FloatSpectrum, HoffmanReport};
use crate::strategy::{Sampling, StrategyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
    Edgelist,
    Text,
}

/// Anything the CLI can print.
pub enum Report<'a> {
    Graph(&'a DenseGraph),
    Exact { spectrum: &'a ExactSpectrum, source: &'a str },
    Float { spectrum: &'a FloatSpectrum, source: &'a str },
    Hoffman(&'a HoffmanReport),
    Chromatic(&'a ChromaticRecord),
    Strategy(&'a StrategyReport),
    Product(&'a HadamardProductReport),
}

impl Report<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Report::Graph(_) => "graph",
            Report::Exact { .. } | Report::Float { .. } => "spectrum",
            Report::Hoffman(_) => "bound",
            Report::Chromatic(_) => "chromatic",
            Report::Strategy(_) => "strategy report",
            Report::Product(_) => "product report",
        }
    }

    fn is_graph(&self) -> bool {
        matches!(self, Report::Graph(_))
    }
}

/// Checks that `format` applies to reports of the given kind.
pub fn supports(graph: bool, format: OutputFormat) -> bool {
    match format {
        OutputFormat::Dot | OutputFormat::Edgelist => graph,
        OutputFormat::Csv => !graph,
        OutputFormat::Json | OutputFormat::Text => true,
    }
}

/// 12 significant digits; exponent notation outside `[1e-4, 1e15)`.
fn float(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit(report: &Report<'_>, format: OutputFormat) -> Result<String> {
    if !supports(report.is_graph(), format) {
        return Err(Error::Parameter(format!(
            "output format {format:?} is not available for a {}",
            report.kind()
        )));
    }
    let mut out = String::new();
    match (report, format) {
        (Report::Graph(g), OutputFormat::Json) => out = pretty(g.to_json()),
        (Report::Graph(g), OutputFormat::Dot) => out = g.to_dot(),
        (Report::Graph(g), OutputFormat::Edgelist) => out = g.to_edge_list(),
        (Report::Graph(g), _) => {
            let degree = g
                .regular_degree()
                .map_or_else(|| "irregular".to_string(), |d| format!("{d}-regular"));
            let _ = writeln!(
                out,
                "{} vertices, {} edges, {degree}, {} components",
                g.size(),
                g.edge_count(),
                crate::graph::count_components(g)
            );
        }

        (Report::Exact { spectrum, source }, OutputFormat::Json) => out = pretty(spectrum.to_json(source)),
        (Report::Exact { spectrum, .. }, OutputFormat::Csv) => {
            out.push_str("value,mult\n");
            for (v, m) in spectrum.iter() {
                let _ = writeln!(out, "{v},{m}");
            }
        }
        (Report::Exact { spectrum, source }, _) => {
            let parts: Vec<String> = spectrum.iter().map(|(v, m)| format!("{v}^{m}")).collect();
            let _ = writeln!(out, "{} ({source})", parts.join(" "));
        }

        (Report::Float { spectrum, source }, OutputFormat::Json) => out = pretty(spectrum.to_json(source)),
        (Report::Float { spectrum, .. }, OutputFormat::Csv) => {
            out.push_str("value,mult\n");
            for &(v, m) in &spectrum.entries {
                let _ = writeln!(out, "{},{m}", float(v));
            }
        }
        (Report::Float { spectrum, source }, _) => {
            let parts: Vec<String> =
                spectrum.entries.iter().map(|&(v, m)| format!("{}^{m}", float(v))).collect();
            let _ = writeln!(out, "{} ({source})", parts.join(" "));
        }

        (Report::Hoffman(h), OutputFormat::Json) => out = pretty(h.to_json()),
        (Report::Hoffman(h), OutputFormat::Csv) => {
            out.push_str("lambda_max,lambda_min,ratio,integer_bound\n");
            let _ = writeln!(out, "{},{},{},{}", h.lambda_max, h.lambda_min, h.ratio_bound, h.integer_bound);
        }
        (Report::Hoffman(h), _) => {
            let _ = writeln!(
                out,
                "Hoffman bound 1 + {}/{} = {} (~{}), chi_q >= {}",
                h.lambda_max,
                -&h.lambda_min,
                h.ratio_bound,
                float(h.ratio_f64()),
                h.integer_bound
            );
        }

        (Report::Chromatic(c), OutputFormat::Json) => out = pretty(c.to_json()),
        (Report::Chromatic(c), OutputFormat::Csv) => {
            out.push_str("n,chi_q,hoffman_bound,upper_bound,witness\n");
            let witness = c.witness.as_ref().map_or("none", |w| w.verdict());
            let _ = writeln!(out, "{},{},{},{},{witness}", c.n, c.value, c.lower.integer_bound, c.upper);
        }
        (Report::Chromatic(c), _) => {
            let witness = match &c.witness {
                Some(w) => format!(", verified {}", w.verdict()),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "chi_q(H_{}) = {} (lower: Hoffman {}, upper: {}-color strategy{witness})",
                c.n, c.value, c.lower.integer_bound, c.upper
            );
        }

        (Report::Strategy(s), OutputFormat::Json) => out = pretty(s.to_json()),
        (Report::Strategy(s), OutputFormat::Csv) => {
            out.push_str(
                "n,root_power,sampling,sample_count,seed,tolerance,completeness,projection,adjacent,synchronous,normalization,pairs_checked,verdict\n",
            );
            let (mode, count, seed) = sampling_fields(&s.sampling);
            let _ = writeln!(
                out,
                "{},{},{mode},{count},{seed},{},{},{},{},{},{},{},{}",
                s.n,
                s.root_power,
                float(s.tolerance),
                float(s.max_completeness_residual),
                float(s.max_projection_residual),
                float(s.max_adjacent_violation),
                float(s.max_synchronous_violation),
                float(s.max_normalization_residual),
                s.pairs_checked,
                s.verdict()
            );
        }
        (Report::Strategy(s), _) => {
            let (mode, count, seed) = sampling_fields(&s.sampling);
            let _ = writeln!(out, "N = {}, root power {}, {mode} {count} seed {seed}", s.n, s.root_power);
            for (name, v) in [
                ("completeness", s.max_completeness_residual),
                ("projection", s.max_projection_residual),
                ("adjacent same color", s.max_adjacent_violation),
                ("synchronous", s.max_synchronous_violation),
                ("normalization", s.max_normalization_residual),
            ] {
                let _ = writeln!(out, "  {name:<20} {}", float(v));
            }
            let _ = writeln!(out, "{} pairs checked, tolerance {}: {}", s.pairs_checked, float(s.tolerance), s.verdict());
        }

        (Report::Product(p), OutputFormat::Json) => out = pretty(p.to_json()),
        (Report::Product(p), OutputFormat::Csv) => {
            out.push_str("kind,n,m,lambda_max,lambda_min,ratio,integer_bound,lower_bound,exact\n");
            let h = &p.bound.hoffman;
            let exact = p.exact.as_ref().map_or(String::new(), |e| e.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{exact}",
                p.kind, p.n, p.m, h.lambda_max, h.lambda_min, h.ratio_bound, h.integer_bound, p.lower_bound
            );
        }
        (Report::Product(p), _) => {
            let h = &p.bound.hoffman;
            let _ = writeln!(
                out,
                "{} product of H_{} and H_{}: lambda_max {}, lambda_min {}, Hoffman {} (~{}), integer bound {}",
                p.kind,
                p.n,
                p.m,
                h.lambda_max,
                h.lambda_min,
                h.ratio_bound,
                float(h.ratio_f64()),
                h.integer_bound
            );
            let _ = write!(out, "chi_q >= {}", p.lower_bound);
            if let Some(e) = &p.exact {
                let _ = write!(out, ", exact value {e}");
            }
            out.push('\n');
        }
    }
    Ok(out)
}

fn sampling_fields(s: &Sampling) -> (&'static str, String, String) {
    match *s {
        Sampling::Exhaustive => ("exhaustive", String::new(), String::new()),
        Sampling::Sampled { count, seed } => ("sampled", count.to_string(), seed.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::hoffman_bound;

    #[test]
    fn hoffman_csv() {
        let s = ExactSpectrum::from_pairs([(6i64, 1u64), (0, 4), (-2, 3)]);
        let h = hoffman_bound(&s).unwrap();
        let csv = emit(&Report::Hoffman(&h), OutputFormat::Csv).unwrap();
        assert_eq!(csv, "lambda_max,lambda_min,ratio,integer_bound\n6,-2,4,4\n");
        assert!(emit(&Report::Hoffman(&h), OutputFormat::Dot).is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(float(2.0), "2");
        assert_eq!(float(-0.5), "-0.5");
        assert_eq!(float(1.0 / 3.0), "0.333333333333");
        assert_eq!(float(-4.07660016855e-16), "-4.07660016855e-16");
        assert_eq!(float(0.0), "0");
    }

    #[test]
    fn graph_formats() {
        let g = DenseGraph::from_edges(3, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(emit(&Report::Graph(&g), OutputFormat::Edgelist).unwrap(), "0 2\n1 2\n");
        assert!(matches!(emit(&Report::Graph(&g), OutputFormat::Csv), Err(Error::Parameter(_))));
    }
}
