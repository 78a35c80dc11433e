//! Exact scalars and the generic finite-dimensional *-algebra substrate.

pub mod algebra;
pub mod linalg;
pub mod scalar;
pub mod wedderburn;

pub use algebra::{
    gram_matrix, gram_positivity, is_tracial, regular_representation, tensor_product,
    validate_algebra, AlgebraError, GramReport, LinearFunctional, Matrix, StarAlgebra,
    POSITIVITY_FLOOR,
};
pub use linalg::SparseVec;
pub use scalar::{Field, GaussRat, Laurent, Rational, Scalar, ScalarKind};
pub use wedderburn::{
    center_basis, wedderburn_blocks, BlockDecomposition, WedderburnConfig, WedderburnError,
    DEFAULT_SEED, DEFAULT_TOL,
};
