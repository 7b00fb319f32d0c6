//! Files that extend a base document: truncated deformations, cocycle pairs
//! and extensions. Each has a `base` key with the base document's digest.
//!
//! ```text
//! deformation  {"base", "order": N, "mu": [entries], "k": [matrix],
//!               "trivializer": {"psi1": matrix, "x": vector}}   (trivializer optional)
//! cocycle      {"base", "psi": [[i, j, a, "c"]], "chi": matrix}
//! extension    {"base", "dimV": m, "total": {"dim", "bracket"},
//!               "operator": {"weight", "matrix"}, "incl": matrix, "proj": matrix,
//!               "fiberOp": matrix, "section": matrix}             (section optional)
//! ```
//!
//! `mu` and `k` list the terms of orders `1..=N`. `psi[a]` is the `a`-th
//! coordinate in `V` of `ψ(e_i, e_j)`.

use mrbl_core::{CocyclePair, ExtensionData, Matrix, Scalar, TruncatedDeformation};
use serde_json::{json, Value};

use crate::document::{
    algebra_json, entries_json, matrix_json, operator_json, parse_algebra, parse_json, parse_operator, vector_json,
    AlgebraDocument, InputResult, Node,
};

fn require_operator(doc: &AlgebraDocument, what: &str) -> InputResult<mrbl_core::OperatorContext> {
    doc.operator.clone().ok_or_else(|| crate::document::InputError::Parse {
        key: "operator".into(),
        message: format!("the base document needs an operator for {what}"),
    })
}

pub struct DeformationFile {
    pub deformation: TruncatedDeformation,
    pub trivializer: Option<(Matrix, Vec<Scalar>)>,
}

pub fn parse_deformation(doc: &AlgebraDocument, text: &str) -> InputResult<DeformationFile> {
    let value = parse_json(text)?;
    let root = Node::root(&value);
    root.only(&["base", "order", "mu", "k", "trivializer"])?;
    doc.check_base(&root)?;
    let ctx = require_operator(doc, "deformations")?;
    let d = doc.algebra.dim();
    let order = root.get("order")?.usize()?;
    let mu = root
        .get("mu")?
        .items_len(order)?
        .iter()
        .map(|n| n.entries(d, d))
        .collect::<InputResult<Vec<_>>>()?;
    let k = root
        .get("k")?
        .items_len(order)?
        .iter()
        .map(|n| n.matrix(d, d))
        .collect::<InputResult<Vec<_>>>()?;
    let trivializer = match root.opt("trivializer")? {
        Some(t) => {
            t.only(&["psi1", "x"])?;
            Some((t.get("psi1")?.matrix(d, d)?, t.get("x")?.vector(d)?))
        }
        None => None,
    };
    let deformation = TruncatedDeformation::new(&doc.algebra, &ctx, mu, k).or_else(|e| root.fail(e.to_string()))?;
    Ok(DeformationFile {
        deformation,
        trivializer,
    })
}

pub fn deformation_json(base: &str, def: &TruncatedDeformation) -> Value {
    let d = def.algebra().dim();
    json!({
        "base": base,
        "order": def.order(),
        "mu": def.mus()[1..].iter().map(|m| entries_json(m, d)).collect::<Vec<_>>(),
        "k": def.ks()[1..].iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn trivializer_json(psi1: &Matrix, x: &[Scalar]) -> Value {
    json!({"psi1": matrix_json(psi1), "x": vector_json(x)})
}

/// Values lie in the representation of the base document.
pub fn parse_cocycle(doc: &AlgebraDocument, text: &str) -> InputResult<CocyclePair> {
    let value = parse_json(text)?;
    let root = Node::root(&value);
    root.only(&["base", "psi", "chi"])?;
    doc.check_base(&root)?;
    let (d, m) = (doc.algebra.dim(), doc.rep().dim_v());
    let psi = root.get("psi")?.entries(d, m)?;
    let chi = root.get("chi")?.matrix(m, d)?;
    CocyclePair::new(psi, chi).or_else(|e| root.fail(e.to_string()))
}

pub fn cocycle_json(base: &str, c: &CocyclePair) -> Value {
    json!({
        "base": base,
        "psi": entries_json(&c.psi, c.chi.cols()),
        "chi": matrix_json(&c.chi),
    })
}

pub struct ExtensionFile {
    pub extension: ExtensionData,
    pub section: Option<Matrix>,
}

pub fn parse_extension(doc: &AlgebraDocument, text: &str) -> InputResult<ExtensionFile> {
    let value = parse_json(text)?;
    let root = Node::root(&value);
    root.only(&[
        "base", "dimV", "total", "operator", "incl", "proj", "fiberOp", "section",
    ])?;
    doc.check_base(&root)?;
    let ctx = require_operator(doc, "extensions")?;
    let d = doc.algebra.dim();
    let m = root.get("dimV")?.usize()?;
    let total_node = root.get("total")?;
    let total = parse_algebra(&total_node)?;
    if total.dim() != d + m {
        return total_node.fail(format!("expected dimension {}", d + m));
    }
    let total_op = parse_operator(&root.get("operator")?, d + m)?;
    let incl = root.get("incl")?.matrix(d + m, m)?;
    let proj = root.get("proj")?.matrix(d, d + m)?;
    let fiber_op = root.get("fiberOp")?.matrix(m, m)?;
    let section = root.opt("section")?.map(|n| n.matrix(d + m, d)).transpose()?;
    let extension = ExtensionData::new(total, total_op, incl, proj, doc.algebra.clone(), ctx, fiber_op)
        .or_else(|e| root.fail(e.to_string()))?;
    Ok(ExtensionFile { extension, section })
}

pub fn extension_json(base: &str, e: &ExtensionData, section: Option<&Matrix>) -> Value {
    let mut v = json!({
        "base": base,
        "dimV": e.fiber_dim(),
        "total": algebra_json(e.total()),
        "operator": operator_json(e.total_op()),
        "incl": matrix_json(e.incl()),
        "proj": matrix_json(e.proj()),
        "fiberOp": matrix_json(e.fiber_op()),
    });
    if let Some(s) = section {
        v["section"] = matrix_json(s);
    }
    v
}
