//! Machine-readable reports. Keys are sorted, so identical runs produce
//! identical bytes.

use mrbl_core::{DefectReport, Error, Matrix};
use serde_json::{json, Map, Value};

use crate::document::{matrix_json, render, vector_json};

/// Residual as a vector when it is a column, otherwise as rows.
fn residual_json(m: &Matrix) -> Value {
    if m.cols() == 1 {
        vector_json(&m.column(0))
    } else {
        matrix_json(m)
    }
}

pub fn defects_json(report: &DefectReport) -> Value {
    Value::Array(
        report
            .entries()
            .iter()
            .map(|d| {
                json!({
                    "identity": d.section,
                    "args": d.args.iter().map(|a| a + 1).collect::<Vec<_>>(),
                    "residual": residual_json(&d.residual),
                })
            })
            .collect(),
    )
}

/// The defect report carried by an error, if any.
pub fn error_defects(e: &Error) -> Option<&DefectReport> {
    match e {
        Error::NotLeibniz(r)
        | Error::NotRotaBaxter(r)
        | Error::NotModifiedRotaBaxter(r)
        | Error::NotRepresentation(r)
        | Error::NotMRBRepresentation(r)
        | Error::NotRBRepresentation(r)
        | Error::NotAnExtension(r)
        | Error::NotACocycle(r) => Some(r),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    command: Vec<String>,
    digest: String,
    sections: Map<String, Value>,
    result: Map<String, Value>,
    failed: bool,
}

impl Report {
    pub fn new(command: Vec<String>, digest: String) -> Self {
        Report {
            command,
            digest,
            sections: Map::new(),
            result: Map::new(),
            failed: false,
        }
    }

    /// A check section that passes exactly when `report` is empty.
    pub fn defects(&mut self, name: &str, report: &DefectReport) {
        let status = if report.is_empty() { "pass" } else { "fail" };
        self.failed |= !report.is_empty();
        self.sections.insert(
            name.into(),
            json!({"status": status, "residuals": defects_json(report)}),
        );
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: Value) {
        self.failed |= !ok;
        let mut section = Map::new();
        section.insert("status".into(), json!(if ok { "pass" } else { "fail" }));
        if !detail.is_null() {
            section.insert("detail".into(), detail);
        }
        self.sections.insert(name.into(), Value::Object(section));
    }

    pub fn error(&mut self, name: &str, e: &Error) {
        self.failed = true;
        let mut section = Map::new();
        section.insert("status".into(), json!("error"));
        section.insert("message".into(), json!(e.to_string()));
        if let Some(r) = error_defects(e) {
            section.insert("residuals".into(), defects_json(r));
        }
        self.sections.insert(name.into(), Value::Object(section));
    }

    /// Records `Err` as an error section and passes `Ok` through.
    pub fn attempt<T>(&mut self, name: &str, r: mrbl_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(name, &e);
                None
            }
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.result.insert(key.into(), value);
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            1
        } else {
            0
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input": {"digest": self.digest},
            "status": if self.failed { "fail" } else { "pass" },
            "sections": self.sections,
            "result": self.result,
        })
    }

    pub fn render(&self) -> String {
        render(&self.to_value())
    }
}
