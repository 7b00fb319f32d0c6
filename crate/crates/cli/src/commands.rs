use std::io::Read;
use std::path::{Path, PathBuf};

use mrbl_core::algebra::{derived_algebra, leibniz_defect, mrb_defect, EntryMask, GridSearch};
use mrbl_core::cohomology::{
    classify_cochain, cohomology_dimensions, leibniz_cohomology, CohomologyOptions, ComplexSummary,
};
use mrbl_core::deformation::{deformation_residuals, gauge_step, infinitesimal};
use mrbl_core::extension::{
    cohomologous_gamma, extension_from_cocycle, extract_cocycle, iso_from_gamma, section_from_proj, validate_extension,
};
use mrbl_core::rep::{induced_rep, mrb_rep_defect, rep_defect};
use mrbl_core::{
    CocyclePair, CohomologyReport, Error, LeibnizAlgebra, Matrix, OperatorContext, Representation, Scalar,
};
use serde_json::{json, Value};

use crate::document::{
    entries_json, matrix_json, parse_json, representation_json, vector_json, AlgebraDocument, InputError, InputResult,
    Node,
};
use crate::report::Report;
use crate::supplement::{
    cocycle_json, deformation_json, extension_json, parse_cocycle, parse_deformation, parse_extension,
    trivializer_json, ExtensionFile,
};
use crate::{Command, DeformAction, ExtendAction};

fn read_file(path: &Path) -> InputResult<String> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> InputResult<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => read_file(p),
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|source| InputError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(text)
        }
    }
}

fn need<'a>(path: &'a Option<PathBuf>, flag: &str, action: &str) -> InputResult<&'a Path> {
    path.as_deref()
        .ok_or_else(|| InputError::Usage(format!("`{action}` needs --{flag} FILE")))
}

fn need_operator(doc: &AlgebraDocument, command: &str) -> InputResult<OperatorContext> {
    doc.operator.clone().ok_or_else(|| InputError::Parse {
        key: "operator".into(),
        message: format!("`{command}` needs an operator"),
    })
}

pub fn execute(command: &Command, echo: Vec<String>, stdin: &mut dyn Read) -> InputResult<Report> {
    let input = match command {
        Command::Check { input }
        | Command::Cohomology { input, .. }
        | Command::Derived { input }
        | Command::Search { input, .. }
        | Command::Deform { input, .. }
        | Command::Extend { input, .. } => input,
    };
    let doc = AlgebraDocument::parse(&read_input(input.as_ref(), stdin)?)?;
    let mut report = Report::new(echo, doc.digest());
    match command {
        Command::Check { .. } => check(&doc, &mut report),
        Command::Cohomology {
            max_degree,
            budget,
            representatives,
            ..
        } => {
            let options = CohomologyOptions {
                degree_bound: *max_degree,
                cell_budget: *budget,
                representatives: *representatives,
            };
            cohomology(&doc, *max_degree, &options, &mut report);
        }
        Command::Derived { .. } => derived(&doc, &mut report)?,
        Command::Search {
            weight,
            grid,
            mask,
            budget,
            ..
        } => search(&doc, weight, grid, mask.as_deref(), *budget, &mut report)?,
        Command::Deform {
            action, deformation, ..
        } => deform(&doc, *action, &read_file(deformation)?, &mut report)?,
        Command::Extend {
            action,
            cocycle,
            extension,
            other,
            ..
        } => match action {
            ExtendAction::Build => {
                let text = read_file(need(cocycle, "cocycle", "build")?)?;
                extend_build(&doc, &text, &mut report)?;
            }
            ExtendAction::Extract => {
                let text = read_file(need(extension, "extension", "extract")?)?;
                extend_extract(&doc, &text, &mut report)?;
            }
            ExtendAction::Compare => {
                let first = read_file(need(extension, "extension", "compare")?)?;
                let second = read_file(need(other, "other", "compare")?)?;
                extend_compare(&doc, &first, &second, &mut report)?;
            }
        },
    }
    Ok(report)
}

fn check(doc: &AlgebraDocument, report: &mut Report) {
    let a = &doc.algebra;
    let r = doc.rep();
    report.set(
        "representation",
        json!(if doc.is_regular_default() { "regular" } else { "given" }),
    );
    report.defects("leibniz", &leibniz_defect(a));
    if let Some(d) = report.attempt("representation", rep_defect(a, &r)) {
        report.defects("representation", &d);
    }
    if let Some(ctx) = &doc.operator {
        if let Some(d) = report.attempt("modified-rota-baxter", mrb_defect(a, ctx)) {
            report.defects("modified-rota-baxter", &d);
        }
        if let Some(d) = report.attempt("mrb-representation", mrb_rep_defect(a, ctx, &r)) {
            report.defects("mrb-representation", &d);
        }
    }
}

fn summary_json(s: &ComplexSummary) -> Value {
    let degrees: Vec<Value> = s
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "cochains": d.cochains,
                "cocycles": d.cocycles,
                "coboundaries": d.coboundaries,
                "cohomology": d.cohomology,
            })
        })
        .collect();
    let mut v = json!({"dims": s.dims(), "degrees": degrees});
    if let Some(reps) = &s.representatives {
        v["representatives"] = reps
            .iter()
            .map(|per| per.iter().map(|c| vector_json(c)).collect::<Vec<_>>())
            .collect();
    }
    v
}

fn cohomology_json(c: &CohomologyReport) -> Value {
    let mut v = json!({"maxDegree": c.max_degree, "leibniz": summary_json(&c.leibniz)});
    if let Some(op) = &c.operator {
        v["operator"] = summary_json(op);
    }
    if let Some(cone) = &c.cone {
        v["cone"] = summary_json(cone);
    }
    v
}

fn cohomology(doc: &AlgebraDocument, max_degree: usize, options: &CohomologyOptions, report: &mut Report) {
    let r = doc.rep();
    let result = match &doc.operator {
        Some(ctx) => cohomology_dimensions(&doc.algebra, ctx, &r, max_degree, options),
        None => leibniz_cohomology(&doc.algebra, &r, max_degree, options),
    };
    let Some(c) = report.attempt("cohomology", result) else {
        return;
    };
    report.set("cohomology", cohomology_json(&c));
    if let (Some(op), Some(cone)) = (&c.operator, &c.cone) {
        // dim H^n of the cone is bounded by dim H^n_Leib + dim H^{n-1}_op
        let (l, o, k) = (c.leibniz.dims(), op.dims(), cone.dims());
        let ok = (0..=max_degree).all(|n| k[n] <= l[n] + if n == 0 { 0 } else { o[n - 1] });
        report.check("cone-bound", ok, Value::Null);
    }
}

fn derived(doc: &AlgebraDocument, report: &mut Report) -> InputResult<()> {
    let ctx = need_operator(doc, "derived")?;
    let a = &doc.algebra;
    let Some(derived) = report.attempt("derived", derived_algebra(a, &ctx)) else {
        return Ok(());
    };
    report.defects("derived-leibniz", &leibniz_defect(&derived));
    if let Some(d) = report.attempt("derived-modified-rota-baxter", mrb_defect(&derived, &ctx)) {
        report.defects("derived-modified-rota-baxter", &d);
    }
    let Some(induced) = report.attempt("induced", induced_rep(a, &ctx, &doc.rep())) else {
        report.set(
            "document",
            AlgebraDocument {
                algebra: derived,
                operator: Some(ctx),
                representation: None,
            }
            .to_value(),
        );
        return Ok(());
    };
    if let Some(d) = report.attempt("induced-representation", rep_defect(&derived, &induced)) {
        report.defects("induced-representation", &d);
    }
    if let Some(d) = report.attempt("induced-mrb-representation", mrb_rep_defect(&derived, &ctx, &induced)) {
        report.defects("induced-mrb-representation", &d);
    }
    let out = AlgebraDocument {
        algebra: derived,
        operator: Some(ctx),
        representation: Some(induced),
    };
    report.set("document", out.to_value());
    Ok(())
}

fn parse_scalar_arg(text: &str, flag: &str) -> InputResult<Scalar> {
    text.parse().map_err(|e| InputError::Usage(format!("--{flag}: {e}")))
}

fn parse_mask(text: &str, d: usize) -> InputResult<EntryMask> {
    let value = parse_json(text)?;
    let root = Node::root(&value);
    let mut entries = Vec::with_capacity(d * d);
    for row in root.items_len(d)? {
        for e in row.items_len(d)? {
            entries.push(e.opt_scalar()?);
        }
    }
    Ok(EntryMask::new(d, entries).expect("shape checked while parsing"))
}

fn search(
    doc: &AlgebraDocument,
    weight: &str,
    grid: &str,
    mask: Option<&Path>,
    budget: u128,
    report: &mut Report,
) -> InputResult<()> {
    let weight = parse_scalar_arg(weight, "weight")?;
    let grid: Vec<Scalar> = grid
        .split(',')
        .map(|g| parse_scalar_arg(g, "grid"))
        .collect::<InputResult<_>>()?;
    let mask = mask
        .map(|p| read_file(p).and_then(|t| parse_mask(&t, doc.algebra.dim())))
        .transpose()?;
    let found = GridSearch { budget }.run(&doc.algebra, &weight, &grid, mask.as_ref());
    if let Some(found) = report.attempt("search", found) {
        report.set("count", json!(found.len()));
        report.set("solutions", found.iter().map(matrix_json).collect());
    }
    report.set("weight", vector_json(&[weight])[0].clone());
    report.set("grid", vector_json(&grid));
    Ok(())
}

fn regular(a: &LeibnizAlgebra, ctx: &OperatorContext) -> Representation {
    Representation::regular(a, ctx.operator.clone()).expect("regular representation has matching shapes")
}

fn deform(doc: &AlgebraDocument, action: DeformAction, text: &str, report: &mut Report) -> InputResult<()> {
    let file = parse_deformation(doc, text)?;
    let def = &file.deformation;
    let digest = doc.digest();
    match action {
        DeformAction::Verify => {
            for res in deformation_residuals(def) {
                let mut all = res.bracket.clone();
                all.extend(res.operator.clone());
                report.defects(&format!("order-{}", res.order), &all);
            }
        }
        DeformAction::Infinitesimal => {
            let Some(c) = report.attempt("infinitesimal", infinitesimal(def)) else {
                return Ok(());
            };
            let (a, ctx) = (def.algebra(), def.ctx());
            let d = a.dim();
            report.set("mu1", entries_json(c.leib.values(), d));
            report.set("k1", matrix_json(c.op.as_ref().expect("degree 2").values()));
            if let Some(cls) = report.attempt("classify", classify_cochain(a, ctx, &regular(a, ctx), &c)) {
                report.check("cocycle", cls.cocycle, Value::Null);
                report.set("coboundary", json!(cls.coboundary));
                let witness = cls.witness.map(|w| {
                    let x = w.op.as_ref().expect("degree 1").values().column(0);
                    trivializer_json(w.leib.values(), &x)
                });
                report.set("trivializer", witness.unwrap_or(Value::Null));
            }
        }
        DeformAction::Gauge => {
            let trivializer = match &file.trivializer {
                Some(t) => Some(t.clone()),
                None => {
                    let Some(c) = report.attempt("infinitesimal", infinitesimal(def)) else {
                        return Ok(());
                    };
                    let (a, ctx) = (def.algebra(), def.ctx());
                    let Some(cls) = report.attempt("classify", classify_cochain(a, ctx, &regular(a, ctx), &c)) else {
                        return Ok(());
                    };
                    report.check("coboundary", cls.coboundary, Value::Null);
                    cls.witness.map(|w| {
                        let x = w.op.as_ref().expect("degree 1").values().column(0);
                        (w.leib.values().clone(), x)
                    })
                }
            };
            let Some((psi1, x)) = trivializer else { return Ok(()) };
            report.set("trivializer", trivializer_json(&psi1, &x));
            if let Some(out) = report.attempt("gauge", gauge_step(def, &psi1, &x)) {
                report.check("gauge", out.mu(1).is_zero() && out.k(1).is_zero(), Value::Null);
                report.set("deformation", deformation_json(&digest, &out));
            }
        }
    }
    Ok(())
}

fn cocycle_result(doc: &AlgebraDocument, r: &Representation, c: &CocyclePair) -> Value {
    json!({"representation": representation_json(r), "cocycle": cocycle_json(&doc.digest(), c)})
}

fn extend_build(doc: &AlgebraDocument, text: &str, report: &mut Report) -> InputResult<()> {
    let ctx = need_operator(doc, "extend")?;
    let c = parse_cocycle(doc, text)?;
    let r = doc.rep();
    match extension_from_cocycle(&doc.algebra, &ctx, &r, &c) {
        Ok(e) => {
            report.defects("extension", &validate_extension(&e));
            report.set("extension", extension_json(&doc.digest(), &e, None));
        }
        Err(Error::NotACocycle(defects)) => report.defects("extension", &defects),
        Err(e) => report.error("extension", &e),
    }
    Ok(())
}

/// Validates and reads the cocycle through the file's section, or the
/// default one.
fn extract(file: &ExtensionFile, name: &str, report: &mut Report) -> Option<(Matrix, Representation, CocyclePair)> {
    let e = &file.extension;
    let defects = validate_extension(e);
    report.defects(name, &defects);
    if !defects.is_empty() {
        return None;
    }
    let s = match &file.section {
        Some(s) => s.clone(),
        None => report.attempt(name, section_from_proj(e))?,
    };
    let (r, c) = report.attempt(name, extract_cocycle(e, &s))?;
    Some((s, r, c))
}

fn extend_extract(doc: &AlgebraDocument, text: &str, report: &mut Report) -> InputResult<()> {
    let file = parse_extension(doc, text)?;
    if let Some((s, r, c)) = extract(&file, "extension", report) {
        let mut v = cocycle_result(doc, &r, &c);
        v["section"] = matrix_json(&s);
        report.set("extracted", v);
    }
    Ok(())
}

fn extend_compare(doc: &AlgebraDocument, first: &str, second: &str, report: &mut Report) -> InputResult<()> {
    let ctx = need_operator(doc, "extend")?;
    let (f1, f2) = (parse_extension(doc, first)?, parse_extension(doc, second)?);
    let (Some((_, r1, c1)), Some((_, r2, c2))) = (extract(&f1, "extension", report), extract(&f2, "other", report))
    else {
        return Ok(());
    };
    report.set(
        "extracted",
        json!([cocycle_result(doc, &r1, &c1), cocycle_result(doc, &r2, &c2)]),
    );
    report.check("same-representation", r1 == r2, Value::Null);
    if r1 != r2 {
        return Ok(());
    }
    let a = &doc.algebra;
    let Some(gamma) = report.attempt("cohomologous", cohomologous_gamma(a, &ctx, &r1, &c1, &c2)) else {
        return Ok(());
    };
    report.check("cohomologous", gamma.is_some(), Value::Null);
    let Some(gamma) = gamma else { return Ok(()) };
    report.set("gamma", matrix_json(&gamma));
    // ζ between the direct-sum models of the two cocycles
    let models =
        extension_from_cocycle(a, &ctx, &r1, &c1).and_then(|e1| Ok((e1, extension_from_cocycle(a, &ctx, &r1, &c2)?)));
    if let Some((e1, e2)) = report.attempt("isomorphism", models) {
        if let Some(zeta) = report.attempt("isomorphism", iso_from_gamma(&e1, &e2, &gamma)) {
            report.check("isomorphism", true, Value::Null);
            report.set("zeta", matrix_json(&zeta));
        }
    }
    Ok(())
}
