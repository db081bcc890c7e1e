//! Relation sets for quantum groups and iquantum groups, their evaluation
//! under the Hall-algebra maps, and the q-binomial identities behind the
//! rank-two iSerre relation.

mod identities;
mod ncexpr;
mod relations;
mod verify;

use thiserror::Error;

use crate::exactarith::ArithError;
use crate::ihallalg::IHallError;
use crate::repmod::RepError;

pub use identities::{
    aux_binomial_identities, check_t_constraint, first_aux_sides, p_tilde, second_aux_sum, tilde_t, verify_tilde_t_range,
    z_tilde,
};
pub use ncexpr::{NCExpr, Sym};
pub use relations::{is_finite_type, relation_set, RelationInstance, RelationSet, Style};
pub use verify::{
    evaluate, iserre_sum, split_rank_two, sss_formula, verify_drinfeld_double, verify_iserre, verify_presentation,
    verify_sss, DoubleEval, Evaluator, PsiEval,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IqgError {
    #[error(transparent)]
    Hall(#[from] IHallError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("symbol {0} has no image under this map")]
    UnsupportedSymbol(String),
}

impl From<RepError> for IqgError {
    fn from(e: RepError) -> Self {
        IqgError::Hall(IHallError::Rep(e))
    }
}
