pub mod cli;
pub mod enumerative;
pub mod error;
pub mod expr;
pub mod frobenius;
pub mod geometry;
pub mod linalg;
pub mod mpoly;
pub mod numberfield;
pub mod operator;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod registry;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use numberfield::{NumberField, NumberFieldElement};
pub use operator::{fit_operator, operator_equal, ThetaOperator, Transform};
pub use poly::Poly;
pub use rational::{Integer, Rational};
pub use series::Series;
