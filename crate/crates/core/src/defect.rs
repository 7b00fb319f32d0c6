use crate::linalg::{Matrix, Scalar};

/// One failing instance of an identity: the section naming the identity,
/// the 0-based basis arguments it was evaluated on, and the nonzero
/// residual (a column vector or a matrix on the module).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub section: &'static str,
    pub args: Vec<usize>,
    pub residual: Matrix,
}

/// Collected nonzero residuals; empty means every checked identity holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefectReport {
    entries: Vec<Defect>,
}

impl DefectReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the residual only if it is nonzero.
    pub fn record(&mut self, section: &'static str, args: Vec<usize>, residual: Matrix) {
        if !residual.is_zero() {
            self.entries.push(Defect {
                section,
                args,
                residual,
            });
        }
    }

    pub fn record_vec(&mut self, section: &'static str, args: Vec<usize>, residual: &[Scalar]) {
        if residual.iter().any(|x| !x.is_zero()) {
            self.record(section, args, Matrix::column_vector(residual));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Defect] {
        &self.entries
    }

    pub fn section<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Defect> + 'a {
        self.entries.iter().filter(move |d| d.section == name)
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.section(name).next().is_some()
    }

    pub fn extend(&mut self, other: DefectReport) {
        self.entries.extend(other.entries);
    }

    /// Same report with every section relabelled.
    pub fn relabel(mut self, section: &'static str) -> Self {
        for d in &mut self.entries {
            d.section = section;
        }
        self
    }
}
