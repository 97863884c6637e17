//! Exact continued fractions, the Jacobi-Perron algorithm, the modular group
//! and totally ordered dimension groups.
//!
//! Numbers are [`RealValue`]s: exact rationals, exact quadratic surds, or
//! precision-tracked intervals that refine on demand. Anything decided about
//! exact inputs is decided exactly; interval inputs either decide or report
//! [`Error::PrecisionExhausted`].
//!
//! ```
//! use perron::{cf_expand, RealValue};
//!
//! let phi = RealValue::surd(1, 1, 2, 5).unwrap();
//! assert_eq!(cf_expand(&phi, 10).unwrap().to_string(), "[1;(1)]");
//! ```

pub mod dimension_group;
pub mod error;
pub mod jacobi_perron;
pub mod json;
pub mod matrix;
pub mod modular_group;
pub mod realnum;
pub mod regular_cf;

use std::fmt;

pub use dimension_group::{
    build_module, cone_contains, order_iso, parse_module_literal, rank_from_topology, riesz_audit,
    simplicial_chain, state_eval, ChainSource, ConeSign, Dependence, GroupElement, IsoResult,
    ModuleRep, RieszReport, SimplicialChain,
};
pub use error::{Error, ErrorClass, Result};
pub use jacobi_perron::{
    jp_convergents, jp_expand, jp_reconstruct, jp_step, jp_step_matrix, JPConvergent,
    JPDigitVector, JPExpansion,
};
pub use matrix::{IntMatrix, UnimodularMatrix};
pub use modular_group::{
    axis_length, classify_element, fixed_points, gamma_membership, legendre_audit, AuditRecord,
    BoundaryPoint, CongruenceLevel, ElementClass,
};
pub use realnum::{
    parse_real, real_compare, real_floor, surd_normalize, PrecisionReal, QuadraticSurd, RealValue,
};
pub use regular_cf::{
    cf_convergents, cf_expand, factor_unimodular, gl2_equivalent, mobius_apply, CFExpansion,
    Convergent,
};

/// Three-valued answer of a semi-decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    /// Undecided within the budget; the string says what was seen.
    Unknown(String),
}

impl Decision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown(_) => "unknown",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/real-numbers.md")]
    mod real_numbers {}
    #[doc = include_str!("../../../book/src/continued-fractions.md")]
    mod continued_fractions {}
    #[doc = include_str!("../../../book/src/jacobi-perron.md")]
    mod jacobi_perron {}
    #[doc = include_str!("../../../book/src/modular-group.md")]
    mod modular_group {}
    #[doc = include_str!("../../../book/src/dimension-groups.md")]
    mod dimension_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
