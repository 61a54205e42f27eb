use serde::{Deserialize, Serialize};

/// Every semidecision bound used by the pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Degree bound for fraction-field certificates and symmetrization probes.
    pub degree_bound: u32,
    /// Maximum number of critical pairs a single Gröbner computation may treat.
    pub gb_budget: usize,
    /// Largest degree `factor_univariate_q` accepts.
    pub factor_degree_cap: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { degree_bound: 6, gb_budget: 100_000, factor_degree_cap: 24, seed: 0 }
    }
}
