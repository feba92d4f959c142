//! Exact arithmetic in F_q and in the quotient ring P_q(n).

mod field;
mod monomial;
mod poly;
mod restrict;
mod ring;
mod text;
mod transform;

pub use field::{is_prime, Field, FieldElement};
pub use monomial::{compare_graded_lex, monomial_product, Monomial, MonomialProduct};
pub use poly::{
    evaluate_all, interpolate, leading_monomial, mul_reduced, random_polynomial, Degree, EvalTable,
    Polynomial,
};
pub use restrict::{hyperplane_point, restrict, LinearForm};
pub use ring::{Ring, DEFAULT_CAP};
pub use text::{
    parse_eval_table, parse_eval_table_with_cap, parse_polynomial, parse_polynomial_with_cap,
    parse_u32_list,
};
pub(crate) use transform::{apply_axis, LineTransform};
