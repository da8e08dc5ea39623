use serde::Serialize;

/// Resource limits shared by the Groebner engine and the kernel algorithms.
///
/// Hitting a cap means the instance is too large for the configured budget,
/// not that an answer is wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Caps {
    /// S-pairs processed by one Buchberger run.
    pub max_pairs: usize,
    /// Total degree of any S-pair lcm or new basis element.
    pub max_degree: u32,
    /// Adjunction rounds of the slice-based kernel algorithm.
    pub max_rounds: usize,
    /// Degree bound of the linear kernel solve.
    pub kernel_degree: u32,
    /// Largest coefficient space the linear kernel solve may build.
    pub max_kernel_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_pairs: 100_000,
            max_degree: 60,
            max_rounds: 8,
            kernel_degree: 2,
            max_kernel_dim: 5_000,
        }
    }
}
