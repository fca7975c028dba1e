//! Size caps guarding the exponential pieces of the pipeline.

/// Environment variable overriding [`Limits::max_dim`].
pub const MAX_DIM_ENV: &str = "GRAYSTATE_MAX_DIM";

/// Default cap on the number of Gray code entries (2^24).
pub const DEFAULT_MAX_DIM: u128 = 1 << 24;

/// Default cap on dense state-vector length (2^26 complex entries).
pub const DEFAULT_MAX_STATE_LEN: usize = 1 << 26;

/// Default cap on the number of Bethe roots (9! permutation terms).
pub const DEFAULT_MAX_BETHE_K: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: u128,
    pub max_state_len: usize,
    pub max_bethe_k: usize,
    /// Node-expansion budget for the Warnsdorff backtracking search.
    pub max_search_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: DEFAULT_MAX_DIM,
            max_state_len: DEFAULT_MAX_STATE_LEN,
            max_bethe_k: DEFAULT_MAX_BETHE_K,
            max_search_steps: 50_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `max_dim` taken from `GRAYSTATE_MAX_DIM` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_DIM_ENV).ok().and_then(|v| v.trim().parse::<u128>().ok()) {
            limits.max_dim = cap;
        }
        limits
    }
}
