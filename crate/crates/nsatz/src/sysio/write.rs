use std::fmt::Write as _;

use nsatz_core::lowerbounds::LowerBoundReport;
use nsatz_core::{Certificate, Degree, EvalSet, FieldDesc, FieldElem, MinDegReport, MultiPoly, VerifyReport};

use super::SystemDoc;

fn point(field: &FieldDesc, pt: &[FieldElem]) -> String {
    let coords: Vec<String> = pt.iter().map(|c| field.display(c).to_string()).collect();
    format!("({})", coords.join(", "))
}

fn values(field: &FieldDesc, vs: &[FieldElem]) -> String {
    vs.iter().map(|v| field.display(v).to_string()).collect::<Vec<_>>().join(", ")
}

fn header(out: &mut String, field: &FieldDesc, vars: &[String]) {
    writeln!(out, "field {field}").unwrap();
    writeln!(out, "vars {}", vars.join(" ")).unwrap();
}

fn poly(p: &MultiPoly, vars: &[String]) -> String {
    p.display(vars).to_string()
}

/// Canonical system document: field, vars, P lines, Q, X, then images.
pub fn write_system(doc: &SystemDoc) -> String {
    let s = &doc.system;
    let mut out = String::new();
    header(&mut out, s.field(), &doc.vars);
    for p in s.generators() {
        writeln!(out, "P: {}", poly(p, &doc.vars)).unwrap();
    }
    writeln!(out, "Q: {}", poly(s.target(), &doc.vars)).unwrap();
    match s.domain() {
        EvalSet::All => out.push_str("X: all\n"),
        EvalSet::Points(pts) => {
            let list: Vec<String> = pts.iter().map(|pt| point(s.field(), pt)).collect();
            writeln!(out, "X: {}", list.join(", ")).unwrap();
        }
    }
    for set in s.images().unwrap_or_default() {
        writeln!(out, "images: {}", values(s.field(), set)).unwrap();
    }
    out
}

/// The system with every polynomial in normal form, followed by a degree
/// block in comments. Finite fields only.
pub fn reduced_system_text(doc: &SystemDoc) -> nsatz_core::Result<String> {
    let s = &doc.system;
    let gens = s.generators().iter().map(MultiPoly::normal_form).collect::<Result<Vec<_>, _>>()?;
    let target = s.target().normal_form()?;
    let mut reduced = nsatz_core::PolySystem::new(s.field(), s.nvars(), gens.clone(), target.clone(), s.domain().clone())?;
    if let Some(images) = s.images() {
        reduced = reduced.with_images(images.to_vec())?;
    }
    let mut out = write_system(&SystemDoc { vars: doc.vars.clone(), system: reduced });
    for (i, g) in gens.iter().enumerate() {
        writeln!(out, "# degree P{}: {}", i + 1, g.total_degree()).unwrap();
    }
    writeln!(out, "# degree Q: {}", target.total_degree()).unwrap();
    Ok(out)
}

fn degree_report(cert: &Certificate, i: usize) -> String {
    match &cert.reduced_degrees {
        Some(red) => format!("raw_degree: {} reduced_degree: {}", cert.raw_degrees[i], red[i]),
        None => format!("raw_degree: {}", cert.raw_degrees[i]),
    }
}

pub fn write_certificate(field: &FieldDesc, vars: &[String], cert: &Certificate) -> String {
    let mut out = String::new();
    header(&mut out, field, vars);
    writeln!(out, "mode: {}", cert.mode).unwrap();
    writeln!(out, "claimed_bound: {}", cert.claimed_bound).unwrap();
    writeln!(out, "containment: {}", if cert.containment_checked { "checked" } else { "unchecked" }).unwrap();
    for (i, r) in cert.cofactors.iter().enumerate() {
        writeln!(out, "R{}: {}", i + 1, poly(r, vars)).unwrap();
    }
    for i in 0..cert.cofactors.len() {
        writeln!(out, "report R{}: {}", i + 1, degree_report(cert, i)).unwrap();
    }
    out
}

pub fn certificate_kv(cert: &Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "mode = {}", cert.mode).unwrap();
    writeln!(out, "claimed_bound = {}", cert.claimed_bound).unwrap();
    writeln!(out, "containment = {}", if cert.containment_checked { "checked" } else { "unchecked" }).unwrap();
    writeln!(out, "cofactors = {}", cert.cofactors.len()).unwrap();
    writeln!(out, "max_raw_degree = {}", cert.max_raw_degree()).unwrap();
    if let Some(d) = cert.max_reduced_degree() {
        writeln!(out, "max_reduced_degree = {d}").unwrap();
    }
    for (i, d) in cert.raw_degrees.iter().enumerate() {
        writeln!(out, "R{}.raw_degree = {d}", i + 1).unwrap();
        if let Some(red) = &cert.reduced_degrees {
            writeln!(out, "R{}.reduced_degree = {}", i + 1, red[i]).unwrap();
        }
    }
    out
}

fn opt_degree(d: Option<Degree>) -> String {
    d.map_or_else(|| "none".to_string(), |d| d.to_string())
}

fn min_degree_value(r: &MinDegReport) -> String {
    match r.min_degree {
        Some(d) => d.to_string(),
        None => format!("none ≤ {}", r.dmax),
    }
}

pub fn min_degree_text(field: &FieldDesc, vars: &[String], r: &MinDegReport) -> String {
    let mut out = String::new();
    writeln!(out, "min_degree: {}", min_degree_value(r)).unwrap();
    writeln!(out, "dmax: {}", r.dmax).unwrap();
    writeln!(out, "construction_degree: {}", opt_degree(r.construction_degree)).unwrap();
    writeln!(out, "monomials: {}", r.monomial_count).unwrap();
    writeln!(out, "unknowns: {}", r.unknown_count).unwrap();
    writeln!(out, "equations: {}", r.equation_count).unwrap();
    if let Some(w) = &r.witness {
        out.push('\n');
        out.push_str(&write_certificate(field, vars, w));
    }
    out
}

pub fn min_degree_kv(r: &MinDegReport) -> String {
    let mut out = String::new();
    match r.min_degree {
        Some(d) => writeln!(out, "min_degree = {d}").unwrap(),
        None => out.push_str("min_degree = none\n"),
    }
    writeln!(out, "dmax = {}", r.dmax).unwrap();
    writeln!(out, "construction_degree = {}", opt_degree(r.construction_degree)).unwrap();
    writeln!(out, "monomials = {}", r.monomial_count).unwrap();
    writeln!(out, "unknowns = {}", r.unknown_count).unwrap();
    writeln!(out, "equations = {}", r.equation_count).unwrap();
    out
}

fn lower_bound_pairs(r: &LowerBoundReport) -> Vec<(&'static str, String)> {
    let mut v = vec![("instance", r.instance.clone())];
    let mut push = |k: &'static str, val: Option<String>| {
        if let Some(val) = val {
            v.push((k, val));
        }
    };
    push("q", r.q.map(|x| x.to_string()));
    push("p", r.p.map(|x| x.to_string()));
    push("k", r.k.map(|x| x.to_string()));
    push("t", r.t.map(|x| x.to_string()));
    push("b", r.b.map(|x| x.to_string()));
    push("claimed_lower_bound", Some(r.claimed_lower_bound.to_string()));
    push("normal_form_degree", r.normal_form_degree.map(|d| d.to_string()));
    push("top_coefficient", r.top_coefficient.map(|x| x.to_string()));
    push("lucas_nonzero", r.lucas_nonzero.map(|x| x.to_string()));
    push("oracle_min_degree", r.oracle_min_degree.map(|x| x.to_string()));
    push("construction_degree", r.construction_degree.map(|d| d.to_string()));
    push("leading_coefficient", r.leading_coefficient.as_ref().map(|c| c.to_string()));
    push("leading_nonzero", r.leading_nonzero.map(|x| x.to_string()));
    v
}

pub fn lower_bound_text(r: &LowerBoundReport) -> String {
    lower_bound_pairs(r).into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

pub fn lower_bound_kv(r: &LowerBoundReport) -> String {
    lower_bound_pairs(r).into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

fn verify_pairs(field: &FieldDesc, r: &VerifyReport) -> Vec<(String, String)> {
    let mut v = vec![
        ("verified".to_string(), r.ok.to_string()),
        ("functional".to_string(), r.functional_ok.to_string()),
        ("claimed_bound".to_string(), r.claimed_bound.to_string()),
    ];
    for (i, d) in r.degrees.iter().enumerate() {
        v.push((format!("R{}.degree", i + 1), d.to_string()));
    }
    if !r.degree_violations.is_empty() {
        let idx: Vec<String> = r.degree_violations.iter().map(|i| format!("R{}", i + 1)).collect();
        v.push(("degree_violations".to_string(), idx.join(" ")));
    }
    if let Some(pt) = &r.failing_point {
        v.push(("failing_point".to_string(), point(field, pt)));
    }
    v
}

pub fn verify_text(field: &FieldDesc, r: &VerifyReport) -> String {
    verify_pairs(field, r).into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

pub fn verify_kv(field: &FieldDesc, r: &VerifyReport) -> String {
    verify_pairs(field, r).into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}
