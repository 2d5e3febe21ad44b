//! Matrix forms of a table and the checks each must pass.

mod canonical;
mod convert;
mod matrix;
mod report;
mod structure;
mod verify;

use thiserror::Error;

pub use canonical::{canonical_form, canonical_form_with_perm, equivalent};
pub use convert::{
    absorb_row_scale, allen_from_eigen, allen_from_fourier, eigen_from_allen, fourier_from_allen,
    fourier_from_allen_radicands, fourier_same,
};
pub use matrix::{inverse, mat_vec, DegreeVector, ExactMatrix, Role};
pub use report::{Check, VerificationReport};
pub use structure::{
    fourier_structure_constants, norms, structure_constants_lambda, structure_constants_n,
    StructureTensor, TensorKind,
};
pub use verify::{
    allen_integrality, as_integer, degrees_multiplicities, eigen_norms, entry_bound_holds,
    full_suite, involution, multiplicities, order_of, product_conventions, verify_allen,
    verify_allen_entries, verify_c_algebra, verify_fourier, verify_integral_fourier,
    verify_orthogonality, verify_self_duality,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry ({row},{col}) lies outside the declared field")]
    FieldMismatch { row: usize, col: usize },
    #[error("row scale must list one positive rational per row")]
    RowScaleMismatch,
    #[error("bad degree vector: {0}")]
    BadDegrees(String),
    #[error("first-column entry of row {0} is zero or not positive")]
    ZeroFirstColumnEntry(usize),
    #[error("column 0 entry of row {0} is not 1")]
    ColumnZeroNotOnes(usize),
    #[error("degree p_0{0} is not a positive rational")]
    NonPositiveDegree(usize),
    #[error("sqrt({radicand}) needed at index {index} is not in the field")]
    SqrtNotInField { index: usize, radicand: String },
    #[error("norm d_{index} = {value} is not rational")]
    IrrationalNorm { index: usize, value: String },
    #[error("eigenmatrix is singular")]
    SingularEigenmatrix,
    #[error("row {0} has zero norm")]
    ZeroNorm(usize),
}

impl TableError {
    /// Errors that come from needing a larger field.
    pub fn is_field_extension(&self) -> bool {
        matches!(
            self,
            TableError::SqrtNotInField { .. } | TableError::IrrationalNorm { .. }
        )
    }
}

#[cfg(test)]
mod tests;
