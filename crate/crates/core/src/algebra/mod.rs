//! Exact scalars, Laurent polynomials, rational functions and series.

pub mod gcd;
pub mod linsolve;
pub mod monomial;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod variable;

pub use linsolve::{solve_linear_exact, LinearSolution};
pub use monomial::Monomial;
pub use poly::{LaurentPolynomial, Poly};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use series::{series_exp, series_expand, TruncatedSeries};
pub use variable::{Family, Variable};
