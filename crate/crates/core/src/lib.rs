//! Polytomous item response models and mechanical checks of what makes them
//! ordinal.

pub mod error;
pub mod figures;
pub mod links;
pub mod models;
mod numeric;
pub mod ordering;
pub mod ordinality;
pub mod report;
pub mod spec;
pub mod strength;

pub use error::{Error, Result};
pub use links::Link;
pub use models::{
    AdjacentModel, BockModel, CumulativeModel, Family, IrTreeModel, Model, MultidimAdjacentModel,
    ProbabilityVector, SequentialModel, TabulatedModel, TraitPoint,
};
pub use spec::ModelSpec;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/concepts.md")]
    mod concepts {}
    #[doc = include_str!("../../../book/src/special-models.md")]
    mod special_models {}
    #[doc = include_str!("../../../book/src/strength.md")]
    mod strength {}
    #[doc = include_str!("../../../book/src/ordering.md")]
    mod ordering {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
