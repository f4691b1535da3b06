//! Random-walk sampling, exact convolution powers, and the estimators for
//! drift, entropy and growth, plus geodesic-tracking diagnostics.

mod convolution;
mod estimators;
mod measure;
mod sampler;
mod tracking;

pub use convolution::{
    convolution_prefix, convolution_scan, exact_convolution, ConvolutionRow, ConvolutionTable,
};
pub use estimators::{
    drift_estimate, entropy_estimate, growth_rate_estimate, DriftReport, EntropyReport,
    EstimateWithError, GrowthReport,
};
pub use measure::{Admissibility, StepDistribution, ADMISSIBILITY_DEPTH};
pub use sampler::{sample_trajectory, walk_endpoint, walk_visit, Trajectory};
pub use tracking::{tracking_diagnostic, TrackingRow, TrackingTable};
