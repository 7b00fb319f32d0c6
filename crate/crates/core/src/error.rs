use crate::defect::DefectReport;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("duplicate structure constant key ({0}, {1}, {2})")]
    DuplicateKey(usize, usize, usize),
    #[error("matrix is not surjective (rank {rank} < {rows} rows)")]
    NotSurjective { rank: usize, rows: usize },
    #[error("matrix is not injective (rank {rank} < {cols} columns)")]
    NotInjective { rank: usize, cols: usize },
    #[error("bracket does not satisfy the Leibniz identity")]
    NotLeibniz(DefectReport),
    #[error("operator is not a Rota-Baxter operator of the given weight")]
    NotRotaBaxter(DefectReport),
    #[error("operator is not a modified Rota-Baxter operator of the given weight")]
    NotModifiedRotaBaxter(DefectReport),
    #[error("maps do not form a Leibniz representation")]
    NotRepresentation(DefectReport),
    #[error("representation operator fails the modified Rota-Baxter compatibility")]
    NotMRBRepresentation(DefectReport),
    #[error("representation operator fails the Rota-Baxter compatibility")]
    NotRBRepresentation(DefectReport),
    #[error("search space of {required} candidates exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("degree {requested} exceeds the configured bound {bound}")]
    DegreeBound { requested: usize, bound: usize },
    #[error("truncated family is not a deformation through order {order}")]
    NotADeformation { order: usize },
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("formal isomorphism must start with the identity")]
    NotUnipotent,
    #[error("trivializer does not map to the infinitesimal under d^1")]
    NotACoboundaryWitness,
    #[error("data is not an abelian extension")]
    NotAnExtension(DefectReport),
    #[error("map is not a section of the projection")]
    NotASection,
    #[error("cochain pair is not a 2-cocycle")]
    NotACocycle(DefectReport),
    #[error("cocycles are not related by the given 1-cochain")]
    NotCohomologous,
    #[error("internal postcondition failed: {0}")]
    Postcondition(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
