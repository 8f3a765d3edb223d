//! Classical, Bayesian and distributional t-tests built on exact central
//! and noncentral t kernels, plus the machinery to quantify how the
//! point-form Bayes factor and the classical p-value track each other
//! across a corpus of experiments.

pub mod bayes;
pub mod classical;
pub mod distributional;
pub mod equivalence;
pub mod error;
pub mod quad;
pub mod sim;
pub mod special;

pub use bayes::{BayesFactor, EffectPrior};
pub use classical::{
    PValue, SampleSummary, TStatistic, TwoSampleSummary, TwoSampleVariant,
};
pub use distributional::{DistributionalConfig, DistributionalResult};
pub use equivalence::{EquivalenceFit, EvaluatedRecord, ExperimentRecord, LineFit};
pub use error::{Error, Result};
pub use sim::{GenerativeModel, SimCorpus};
pub use special::{DegreesOfFreedom, EvalResult, NoncentralityParam};
