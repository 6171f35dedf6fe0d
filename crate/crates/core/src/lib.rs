//! Artinian graded algebras over exact fields: Gröbner bases, ideal operations,
//! Hilbert functions, Gorenstein constructions and generic initial ideals.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod gin;
pub mod groebner;
pub mod ideal;
pub mod ideal_ops;
pub mod invariants;
pub mod linalg;
pub mod quotient;

pub use algebra::*;
pub use constructions::recipe::run_recipe;
pub use constructions::{
    apolar_ideal, double_link_tower, embed, gorenstein_cut, group_table_algebra, link, link_general,
    nonunique_hf_pair, quadric_ci, tensor_algebras, CiStyle, DualForm, HfTarget, LinkStep,
};
pub use error::{Error, Result};
pub use experiments::{
    run_census, CensusConfig, CensusMode, CensusRecord, CensusRun, CensusSummary, Outcome,
};
pub use gin::{
    check_injectivity_conjecture, check_wlp, gin, gin_monomial_census, gin_rank, is_borel_fixed,
    reduction_number, times_l_rank, GinResult, RankMethod, RankReport,
};
pub use groebner::{groebner, groebner_polys, GbOptions, GroebnerBasis};
pub use ideal::{leading_term_ideal, Ideal, RingHeader};
pub use ideal_ops::{
    colon_form, colon_form_elimination, colon_form_linear, colon_ideal, general_linear_form,
    ideal_sum, intersect, GeneralForm, GenericityPolicy, LinearForm, Selection,
};
pub use invariants::{
    classify, hilbert_function, hvector, is_artinian, minimal_generator_counts, socle, HVector,
    QuadricClassification,
};
pub use linalg::Matrix;
pub use quotient::Quotient;
