//! Jet calculus: formal vector fields, jet automorphisms, Taylor expansion
//! of differential operators and the flatness recursion.

mod ops;
mod series;

pub use ops::{
    taylor_product_residual,
    conjugate_by, default_frames, exact_chart, flatness_check, maurer_cartan_value, operator_seeds,
    taylor_of_operator, ChartJet, FlatnessReport, JetDiffOp, Reconstruction, Reconstructor, SeedFn,
};
pub use series::{
    aut_parameters, w_basis, w_bracket, w_dimension, FormalVectorFieldJet, Infinitesimal, JetAutomorphism, JetPoly,
    ScalarAlgebra,
};
