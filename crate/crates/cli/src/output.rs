use std::fmt::Write;

use serde::Serialize;

use weyl_laplace::lie_basis::BasisJson;
use weyl_laplace::VerificationReport;

use crate::args::Format;
use crate::commands::{CharacterDocument, PolarDocument, SuiteDocument};

pub enum Document {
    Basis(BasisJson),
    Polar(PolarDocument),
    Suite(SuiteDocument),
    Character(CharacterDocument),
}

impl Document {
    pub fn pass(&self) -> bool {
        match self {
            Document::Basis(_) | Document::Polar(_) => true,
            Document::Suite(d) => d.pass,
            Document::Character(d) => d.pass,
        }
    }
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => match doc {
            Document::Basis(d) => json(d),
            Document::Polar(d) => json(d),
            Document::Suite(d) => json(d),
            Document::Character(d) => json(d),
        },
        Format::Csv => csv(doc),
        Format::Human => human(doc),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

const REPORT_HEADER: &str = "suite,check,samples,maxAbsErr,maxRelErr,tolerance,seed,pass";

fn report_row(out: &mut String, suite: &str, r: &VerificationReport) {
    let _ = writeln!(
        out,
        "{suite},\"{}\",{},{:e},{:e},{:e},{},{}",
        r.check, r.samples, r.max_abs_err, r.max_rel_err, r.tolerance, r.seed, r.pass
    );
}

fn csv(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Basis(b) => {
            out.push_str("label,row,col,re,im\n");
            for g in &b.generators {
                for (r, row) in g.matrix.iter().enumerate() {
                    for (c, [re, im]) in row.iter().enumerate() {
                        let _ = writeln!(out, "{},{},{},{re:e},{im:e}", g.label, r + 1, c + 1);
                    }
                }
            }
        }
        Document::Polar(p) => {
            out.push_str("field,row,col,re,im\n");
            for (i, t) in p.polar.theta.iter().enumerate() {
                let _ = writeln!(out, "theta,{},,{t:e},0", i + 1);
            }
            for (r, row) in p.polar.u.iter().enumerate() {
                for (c, [re, im]) in row.iter().enumerate() {
                    let _ = writeln!(out, "u,{},{},{re:e},{im:e}", r + 1, c + 1);
                }
            }
            let _ = writeln!(out, "minGap,,,{:e},0", p.polar.min_gap);
            let _ = writeln!(out, "regular,,,{},0", u8::from(p.polar.regular));
            let _ = writeln!(out, "reconstructionError,,,{:e},0", p.reconstruction_error);
        }
        Document::Suite(d) => {
            out.push_str(REPORT_HEADER);
            out.push('\n');
            for r in &d.reports {
                report_row(&mut out, &d.suite, r);
            }
        }
        Document::Character(d) => {
            out.push_str(REPORT_HEADER);
            out.push_str(",mean,std,oracle\n");
            let mut row = String::new();
            report_row(&mut row, &d.command, &d.report);
            let oracle = d.oracle.map(|o| format!("{o:e}")).unwrap_or_default();
            let _ = writeln!(out, "{},{:e},{:e},{oracle}", row.trim_end(), d.mean, d.std);
        }
    }
    out
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn short(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e9 {
        format!("{v}")
    } else {
        format!("{v:.10e}")
    }
}

fn human_report(out: &mut String, r: &VerificationReport) {
    let _ = writeln!(
        out,
        "{} {}: {} samples, max abs err {:.3e}, max rel err {:.3e}, tolerance {:e}",
        verdict(r.pass),
        r.check,
        r.samples,
        r.max_abs_err,
        r.max_rel_err,
        r.tolerance
    );
    for (k, v) in &r.values {
        let _ = writeln!(out, "    {k} = {}", short(*v));
    }
    for f in r.failures.iter().take(10) {
        let _ = writeln!(out, "    failed: {f}");
    }
    if r.failures.len() > 10 {
        let _ = writeln!(out, "    ... {} more failures", r.failures.len() - 10);
    }
}

fn human(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Basis(b) => {
            let _ = writeln!(out, "{}({}) basis, {} generators", b.kind, b.n, b.generators.len());
            for g in &b.generators {
                let _ = writeln!(out, "{}:", g.label);
                for row in &g.matrix {
                    let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.4}{im:+.4}i")).collect();
                    let _ = writeln!(out, "  [{}]", cells.join("  "));
                }
            }
        }
        Document::Polar(p) => {
            let _ = writeln!(out, "source: {}", p.source);
            let theta: Vec<String> = p.polar.theta.iter().map(|t| format!("{t:.12}")).collect();
            let _ = writeln!(out, "theta: [{}]", theta.join(", "));
            let _ = writeln!(out, "regular: {} (min gap {:.3e})", p.polar.regular, p.polar.min_gap);
            let _ = writeln!(out, "reconstruction error: {:.3e}", p.reconstruction_error);
            let _ = writeln!(out, "u:");
            for row in &p.polar.u {
                let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.6}{im:+.6}i")).collect();
                let _ = writeln!(out, "  [{}]", cells.join("  "));
            }
        }
        Document::Suite(d) => {
            let _ = writeln!(out, "suite {}: {}", d.suite, verdict(d.pass));
            for r in &d.reports {
                human_report(&mut out, r);
            }
        }
        Document::Character(d) => {
            let oracle = d.oracle.map(|o| format!("{o}")).unwrap_or_else(|| "none".into());
            let _ = writeln!(
                out,
                "partition {}: eigenvalue {:.8} (std {:.3e}), oracle {oracle}: {}",
                d.partition,
                d.mean,
                d.std,
                verdict(d.pass)
            );
            human_report(&mut out, &d.report);
        }
    }
    out
}
