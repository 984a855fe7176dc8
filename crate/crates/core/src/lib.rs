//! Node-wise graph diffusion engine.
//!
//! Computes per-target-node representations on an undirected self-looped
//! graph by mixing transition-matrix powers with a general heat diffusion
//! weight per hop. Two propagation paths are provided: an exact truncated
//! matrix propagation and a random-walk sampler with a provable walk budget
//! for capturing all important neighbors. A small softmax classifier closes
//! the semi-supervised node-classification loop.

pub mod classifier;
pub mod error;
pub mod exact;
pub mod ghd;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod sampled;
pub mod spectral;
pub mod synth;

pub use classifier::{micro_f1, predict, train, LabeledSplit, LinearModel, TrainParams};
pub use error::{Error, Result};
pub use exact::{phi_exact, phi_totals, propagate_exact, Embedding, ExactPropagationPlan};
pub use ghd::{build_ghd_table, hkpr_weight, GhdTable};
pub use graph::{ConnectivityReport, FeatureMatrix, Graph, NodeId};
pub use pipeline::{
    run_pipeline, DiffusionConfig, LengthMode, PropagationMode, RunConfig, RunReport,
    TargetSelection,
};
pub use sampled::{
    neighbor_weight_profile, propagate_sampled, sample_target, walk_count, ProfileRow,
    SamplerConfig, WalkAccumulator,
};
pub use spectral::{
    diffusion_lengths, estimate_lambda_exact, tau_distance_exact, tau_distance_heuristic,
    DiffusionLengths, SpectralEstimate,
};
pub use synth::{generate_sbm_fixture, SbmFixture, SbmParams};
