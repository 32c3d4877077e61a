//! Multivariate Spearman-type rank statistics, their Pitman efficiencies and
//! the extremal alternatives obtained from Green functions.

pub mod dependence;
pub mod efficiency;
pub mod error;
pub mod green;
pub mod normal;
pub mod poly;
pub mod quadrature;
pub mod rank_stats;
pub mod seed;
pub mod sim;

pub use dependence::{sample, sample_gaussian_copula, validate, Builtin, DependenceFunction, ModelSpec, ValidationReport};
pub use efficiency::{report, AreTable, Efficiencies, EfficiencyReport, PowerCurve, Slopes};
pub use error::{Error, Result};
pub use green::{GreenKernel, Measure, OptimalFor, UpSetFamily};
pub use poly::Poly;
pub use quadrature::{FunctionalSet, Method, ResolvedFunctionals};
pub use rank_stats::{RankMatrix, SampleMatrix, StatKind, StatValue, Standardized, TiePolicy};
pub use sim::{Alternative, ExperimentPlan, ExperimentResult, GapRow, ModelSource};
