//! JSON documents. Indices are 1-based and every rational is a string.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "algebra": {"dim": 3, "bracket": [[1, 1, 3, "1"]]},
//!   "operator": {"weight": "1", "matrix": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]},
//!   "representation": {"dimV": 1, "rhoL": [...], "rhoR": [...], "kV": [["2"]]}
//! }
//! ```
//!
//! `operator` and `representation` are optional. Supplementary files for
//! deformations, cocycles and extensions carry a `base` key holding the
//! digest of the document they were written against.

use std::collections::BTreeSet;

use mrbl_core::{LeibnizAlgebra, Matrix, OperatorContext, Representation, Scalar};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{key}: {message}")]
    Parse { key: String, message: String },
    #[error("{key}: index out of range: {message}")]
    IndexOutOfRange { key: String, message: String },
    #[error("{key}: duplicate entry ({i}, {j}, {k})")]
    DuplicateKey { key: String, i: usize, j: usize, k: usize },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{key}: written against base {found}, but the input document is {expected}")]
    DigestMismatch {
        key: String,
        found: String,
        expected: String,
    },
    #[error("{0}")]
    Usage(String),
}

pub type InputResult<T> = Result<T, InputError>;

/// A JSON value together with the key path that led to it, for error
/// context.
pub struct Node<'a> {
    value: &'a Value,
    key: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node {
            value,
            key: String::new(),
        }
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn fail<T>(&self, message: impl Into<String>) -> InputResult<T> {
        Err(InputError::Parse {
            key: self.key.clone(),
            message: message.into(),
        })
    }

    fn child(&self, value: &'a Value, name: String) -> Node<'a> {
        let key = if self.key.is_empty() {
            name
        } else {
            format!("{}.{name}", self.key)
        };
        Node { value, key }
    }

    fn object(&self) -> InputResult<&'a Map<String, Value>> {
        match self.value.as_object() {
            Some(m) => Ok(m),
            None => self.fail("expected an object"),
        }
    }

    /// Rejects keys outside `allowed`.
    pub fn only(&self, allowed: &[&str]) -> InputResult<()> {
        for k in self.object()?.keys() {
            if !allowed.contains(&k.as_str()) {
                return self.fail(format!("unknown key `{k}`"));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> InputResult<Node<'a>> {
        match self.opt(name)? {
            Some(n) => Ok(n),
            None => self.fail(format!("missing key `{name}`")),
        }
    }

    pub fn opt(&self, name: &str) -> InputResult<Option<Node<'a>>> {
        Ok(self
            .object()?
            .get(name)
            .filter(|v| !v.is_null())
            .map(|v| self.child(v, name.to_string())))
    }

    pub fn items(&self) -> InputResult<Vec<Node<'a>>> {
        match self.value.as_array() {
            Some(a) => Ok(a
                .iter()
                .enumerate()
                .map(|(i, v)| Node {
                    value: v,
                    key: format!("{}[{i}]", self.key),
                })
                .collect()),
            None => self.fail("expected an array"),
        }
    }

    pub fn items_len(&self, len: usize) -> InputResult<Vec<Node<'a>>> {
        let items = self.items()?;
        if items.len() != len {
            return self.fail(format!("expected {len} entries, found {}", items.len()));
        }
        Ok(items)
    }

    pub fn usize(&self) -> InputResult<usize> {
        match self.value.as_u64() {
            Some(n) => Ok(n as usize),
            None => self.fail("expected a non-negative integer"),
        }
    }

    pub fn string(&self) -> InputResult<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.fail("expected a string"),
        }
    }

    pub fn scalar(&self) -> InputResult<Scalar> {
        let text = self.string()?;
        text.parse().or_else(|e| self.fail(format!("{e}")))
    }

    /// `null` or a rational string.
    pub fn opt_scalar(&self) -> InputResult<Option<Scalar>> {
        if self.value.is_null() {
            Ok(None)
        } else {
            self.scalar().map(Some)
        }
    }

    /// A 1-based index in `1..=bound`, returned 0-based.
    pub fn index(&self, bound: usize) -> InputResult<usize> {
        let i = self.usize()?;
        if i == 0 || i > bound {
            return Err(InputError::IndexOutOfRange {
                key: self.key.clone(),
                message: format!("{i} not in 1..={bound}"),
            });
        }
        Ok(i - 1)
    }

    pub fn vector(&self, len: usize) -> InputResult<Vec<Scalar>> {
        self.items_len(len)?.iter().map(Node::scalar).collect()
    }

    pub fn matrix(&self, rows: usize, cols: usize) -> InputResult<Matrix> {
        let data = self
            .items_len(rows)?
            .iter()
            .map(|r| r.vector(cols))
            .collect::<InputResult<Vec<_>>>()?;
        Ok(Matrix::from_fn(rows, cols, |r, c| data[r][c].clone()))
    }

    /// Sparse `[i, j, k, "c"]` entries with `i, j <= d` and `k <= m`, as an
    /// `m x d^2` matrix whose column `i*d + j` is the value on `(e_i, e_j)`.
    pub fn entries(&self, d: usize, m: usize) -> InputResult<Matrix> {
        let mut out = Matrix::zeros(m, d * d);
        let mut seen = BTreeSet::new();
        for e in self.items()? {
            let f = e.items_len(4)?;
            let (i, j, k) = (f[0].index(d)?, f[1].index(d)?, f[2].index(m)?);
            if !seen.insert((i, j, k)) {
                return Err(InputError::DuplicateKey {
                    key: e.key.clone(),
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                });
            }
            out[(k, i * d + j)] = f[3].scalar()?;
        }
        Ok(out)
    }
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_json(m.row(r))).collect())
}

/// Nonzero entries of a `m x d^2` bilinear map as `[i, j, k, "c"]`.
pub fn entries_json(map: &Matrix, d: usize) -> Value {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..map.rows() {
                let c = &map[(k, i * d + j)];
                if !c.is_zero() {
                    out.push(json!([i + 1, j + 1, k + 1, c.to_string()]));
                }
            }
        }
    }
    Value::Array(out)
}

pub fn operator_json(ctx: &OperatorContext) -> Value {
    json!({"weight": scalar_json(&ctx.weight), "matrix": matrix_json(&ctx.operator)})
}

pub fn representation_json(r: &Representation) -> Value {
    json!({
        "dimV": r.dim_v(),
        "rhoL": r.rho_l().iter().map(matrix_json).collect::<Vec<_>>(),
        "rhoR": r.rho_r().iter().map(matrix_json).collect::<Vec<_>>(),
        "kV": matrix_json(r.k_v()),
    })
}

pub fn algebra_json(a: &LeibnizAlgebra) -> Value {
    json!({"dim": a.dim(), "bracket": entries_json(&a.bracket_cochain(), a.dim())})
}

pub fn parse_algebra(node: &Node) -> InputResult<LeibnizAlgebra> {
    node.only(&["dim", "bracket"])?;
    let d = node.get("dim")?.usize()?;
    let table = node.get("bracket")?.entries(d, d)?;
    LeibnizAlgebra::from_bracket_cochain(&table).or_else(|e| node.fail(e.to_string()))
}

pub fn parse_operator(node: &Node, d: usize) -> InputResult<OperatorContext> {
    node.only(&["weight", "matrix"])?;
    Ok(OperatorContext::new(
        node.get("matrix")?.matrix(d, d)?,
        node.get("weight")?.scalar()?,
    ))
}

pub fn parse_representation(node: &Node, d: usize) -> InputResult<Representation> {
    node.only(&["dimV", "rhoL", "rhoR", "kV"])?;
    let m = node.get("dimV")?.usize()?;
    let side = |name: &str| -> InputResult<Vec<Matrix>> {
        node.get(name)?.items_len(d)?.iter().map(|x| x.matrix(m, m)).collect()
    };
    let (l, r) = (side("rhoL")?, side("rhoR")?);
    let kv = node.get("kV")?.matrix(m, m)?;
    Representation::new(m, l, r, kv).or_else(|e| node.fail(e.to_string()))
}

/// Parses text into a JSON value, keeping serde's line and column context.
pub fn parse_json(text: &str) -> InputResult<Value> {
    Ok(serde_json::from_str(text)?)
}

/// Lowercase hex SHA-256 of the compact serialization.
pub fn digest_of(value: &Value) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

/// Pretty-printed with sorted keys and a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDocument {
    pub algebra: LeibnizAlgebra,
    pub operator: Option<OperatorContext>,
    pub representation: Option<Representation>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> InputResult<Self> {
        let value = parse_json(text)?;
        let root = Node::root(&value);
        root.only(&["field", "algebra", "operator", "representation"])?;
        let field = root.get("field")?;
        if field.string()? != "rational" {
            return field.fail("only the rational field is supported");
        }
        let algebra = parse_algebra(&root.get("algebra")?)?;
        let d = algebra.dim();
        let operator = root.opt("operator")?.map(|n| parse_operator(&n, d)).transpose()?;
        let representation = root
            .opt("representation")?
            .map(|n| parse_representation(&n, d))
            .transpose()?;
        Ok(AlgebraDocument {
            algebra,
            operator,
            representation,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut out = Map::new();
        out.insert("field".into(), json!("rational"));
        out.insert("algebra".into(), algebra_json(&self.algebra));
        if let Some(ctx) = &self.operator {
            out.insert("operator".into(), operator_json(ctx));
        }
        if let Some(r) = &self.representation {
            out.insert("representation".into(), representation_json(r));
        }
        Value::Object(out)
    }

    pub fn to_text(&self) -> String {
        render(&self.to_value())
    }

    pub fn digest(&self) -> String {
        digest_of(&self.to_value())
    }

    /// The explicit representation, or the regular one with `K_V = K`
    /// (zero when there is no operator).
    pub fn rep(&self) -> Representation {
        if let Some(r) = &self.representation {
            return r.clone();
        }
        let d = self.algebra.dim();
        let kv = self
            .operator
            .as_ref()
            .map_or_else(|| Matrix::zeros(d, d), |c| c.operator.clone());
        Representation::regular(&self.algebra, kv).expect("regular representation has matching shapes")
    }

    pub fn is_regular_default(&self) -> bool {
        self.representation.is_none()
    }

    /// Checks the `base` key of a supplementary file against this document.
    pub fn check_base(&self, node: &Node) -> InputResult<()> {
        let b = node.get("base")?;
        let found = b.string()?;
        let expected = self.digest();
        if found != expected {
            return Err(InputError::DigestMismatch {
                key: b.key().to_string(),
                found: found.to_string(),
                expected,
            });
        }
        Ok(())
    }
}
