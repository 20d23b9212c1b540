//! Text and JSON renderings of results.

use cartan_core::{
    Algebroid, AxiomReport, Chart, Expr, GradedElement, PoissonReport, PoissonStructure,
};
use serde_json::{json, Map, Value};

use crate::model::{render_algebroid, render_poisson};

/// What a command prints, in both forms.
pub struct Report {
    pub text: String,
    pub json: Value,
}

fn key(blade_key: String) -> String {
    if blade_key.is_empty() {
        "scalar".into()
    } else {
        blade_key
    }
}

fn tuple(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `degree → tuple → expression`.
pub fn components_json(x: &GradedElement, chart: &Chart) -> Value {
    let mut by_degree = Map::new();
    for (blade, f) in x.terms() {
        let entry = by_degree
            .entry(blade.degree().to_string())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = entry {
            m.insert(key(blade.key()), Value::String(f.to_string_in(chart)));
        }
    }
    Value::Object(by_degree)
}

fn element_lines(x: &GradedElement, chart: &Chart, indent: &str) -> String {
    if x.is_zero() {
        return format!("{indent}0\n");
    }
    x.entries(chart)
        .into_iter()
        .map(|(k, v)| format!("{indent}{k} = {v}\n"))
        .collect()
}

pub fn element(x: &GradedElement, chart: &Chart) -> Report {
    Report {
        text: format!("{}\n{}", x.variance().name(), element_lines(x, chart, "  ")),
        json: json!({
            "variance": x.variance().name(),
            "rank": x.rank(),
            "components": components_json(x, chart),
        }),
    }
}

pub fn expression(f: &Expr, chart: &Chart) -> Report {
    let s = f.to_string_in(chart);
    Report {
        text: format!("{s}\n"),
        json: json!({ "expression": s }),
    }
}

pub fn algebroid(a: &Algebroid) -> Value {
    let chart = a.chart();
    let mut anchor = Map::new();
    for r in 0..a.rank() {
        for i in 0..a.dim() {
            let f = a.anchor(r, i);
            if !f.is_zero() {
                anchor.insert(tuple(&[r, i]), Value::String(f.to_string_in(chart)));
            }
        }
    }
    let structure: Map<String, Value> = a
        .structure_table()
        .into_iter()
        .map(|((c, x, y), f)| (tuple(&[c, x, y]), Value::String(f.to_string_in(chart))))
        .collect();
    json!({
        "base": chart.names(),
        "rank": a.rank(),
        "anchor": anchor,
        "structure": structure,
    })
}

pub fn algebroid_report(a: &Algebroid) -> Report {
    Report {
        text: render_algebroid(a),
        json: algebroid(a),
    }
}

pub fn poisson(p: &PoissonStructure) -> Value {
    let chart = p.chart();
    let entries: Map<String, Value> = p
        .bivector()
        .terms()
        .map(|(b, f)| (b.key(), Value::String(f.to_string_in(chart))))
        .collect();
    json!({ "base": chart.names(), "bivector": entries })
}

pub fn poisson_report(p: &PoissonStructure) -> Report {
    Report {
        text: render_poisson(p),
        json: poisson(p),
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn axioms(report: &AxiomReport, a: &Algebroid) -> Report {
    let chart = a.chart();
    let mut text = format!("axioms: {}\n", verdict(report.passed));
    let mut anchor = Map::new();
    for (&(x, y), residual) in &report.anchor_residuals {
        let mut comps = Map::new();
        for (i, f) in residual.iter().enumerate() {
            if !f.is_zero() {
                let s = f.to_string_in(chart);
                text.push_str(&format!(
                    "anchor ({}): {} = {s}\n",
                    tuple(&[x, y]),
                    chart.name(i)
                ));
                comps.insert(chart.name(i).to_string(), Value::String(s));
            }
        }
        if !comps.is_empty() {
            anchor.insert(tuple(&[x, y]), Value::Object(comps));
        }
    }
    let mut jacobi = Map::new();
    for (&(x, y, z), residual) in &report.jacobi_residuals {
        if residual.is_zero() {
            continue;
        }
        text.push_str(&format!(
            "jacobi ({}): {}\n",
            tuple(&[x, y, z]),
            residual.render(chart)
        ));
        jacobi.insert(tuple(&[x, y, z]), components_json(residual, chart));
    }
    Report {
        text,
        json: json!({
            "axioms": verdict(report.passed),
            "anchor_residuals": anchor,
            "jacobi_residuals": jacobi,
        }),
    }
}

/// `poisson: PASS|FAIL`, then the nonzero `[Λ,Λ]` components and Jacobi defects.
pub fn poisson_check(label: &str, report: &PoissonReport, chart: &Chart) -> Report {
    let mut text = format!("{label}: {}\n", verdict(report.passed));
    if !report.residual.is_zero() {
        text.push_str(&format!("[L,L]: {}\n", report.residual.render(chart)));
    }
    let mut defects = Map::new();
    for (&(i, j, k), f) in &report.jacobi_defects {
        if f.is_zero() {
            continue;
        }
        let names = format!("{},{},{}", chart.name(i), chart.name(j), chart.name(k));
        let s = f.to_string_in(chart);
        text.push_str(&format!("jacobi {{{names}}} = {s}\n"));
        defects.insert(names, Value::String(s));
    }
    Report {
        text,
        json: json!({
            label: verdict(report.passed),
            "residual": components_json(&report.residual, chart),
            "jacobi_defects": defects,
        }),
    }
}

pub fn verdict_line(label: &str, passed: bool) -> String {
    format!("{label}: {}\n", verdict(passed))
}

pub fn verdict_value(passed: bool) -> Value {
    Value::String(verdict(passed).into())
}
