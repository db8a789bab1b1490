pub mod error;
pub mod exactpoly;
mod linalg;

pub use error::{Error, Result};
pub use exactpoly::{parse_poly, ArithOp, Exponent, Poly, PolyModP, Rational};
pub mod polyhedral;

pub use polyhedral::{
    build_delta1, dd_facets, enumerate_complement, newton_polyhedron, CompactFace, Delta1Region, HalfSpace,
    NewtonPolyhedron, Region,
};
pub mod fan;

pub use fan::{cone_multiplicity, cones_contained, dual_fan, refines, regularize, regularize_with, Fan};
pub mod nondegen;
pub use nondegen::{
    check_nondegenerate, torus_critical_search, NondegeneracyStatus, NondegeneracyVerdict, SearchConfig,
    SearchMode, Witness,
};
pub mod filtration;
pub use filtration::{
    in_sum_space, lemma1_verify, lemma23_verify, logform_basis, normalize_representative, split_by_support,
    IdealVariant, MonomialSumSpace, QuotientBasis,
};
pub mod logforms;
pub use logforms::{
    deformation_extension_check, form_valuation, is_log_form, ray_valuation, residue_class_equal,
    rounding_implication, DeformationInstance, LogFormChecker, LogFormRep,
};
