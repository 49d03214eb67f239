//! Exact q-calculus kernel: q-combinatorics, truncated power series,
//! bivariate polynomials, q-Bernoulli and q-Genocchi families of integer
//! order, and an engine that checks their identities by exact equality.

pub mod cli;
pub mod error;
pub mod families;
pub mod identities;
pub mod poly;
pub mod qarith;
pub mod series;

pub use error::{Error, Result};
pub use families::{
    classical_bernoulli, classical_genocchi, compute_numbers, compute_polys_direct,
    compute_polys_summation, FamilyId, FamilyKind, FamilyTable, TableRecord,
};
pub use identities::{
    all_pass, parse_suites, run_all, verify_classical_limits, verify_corollaries, verify_property1,
    verify_property2, verify_property3, verify_property4, verify_property5, verify_property6,
    verify_theorem_sp1, verify_theorem_sp11, Counterexample, FamilyStore, Grid, Side, Sp1Variant,
    Status, Suite, VerdictReport, Verifier,
};
pub use poly::{q_add_pow_poly, BiPoly, MonomialRecord, Var};
pub use qarith::{
    parse_scalar, q_add_pow, q_binomial, q_factorial, q_number, q_pochhammer, QCombinatorics,
    QContext, Scalar,
};
pub use series::{build_Eq, build_eq, Coefficient, FactorialForm, Series};
