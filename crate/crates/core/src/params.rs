use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Evaluation parameters shared by the deterministic and stochastic operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// Scaling constant of the fluctuation term. Must satisfy `|k| < 1`.
    pub k: f64,
    /// Number of logarithmic recursion levels evaluated before grounding at 1.
    pub depth: usize,
    /// Half-width of the band around `t = 1` that returns the golden fixed value.
    pub eps_one: f64,
    /// Master seed for stochastic callers.
    pub seed: u64,
}

impl Params {
    pub const DEFAULT_EPS_ONE: f64 = 1e-12;
    pub const DEFAULT_DEPTH: usize = 6;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(k: f64, depth: usize) -> Result<Self> {
        let p = Params {
            k,
            depth,
            eps_one: Self::DEFAULT_EPS_ONE,
            seed: Self::DEFAULT_SEED,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_eps_one(mut self, eps_one: f64) -> Result<Self> {
        self.eps_one = eps_one;
        self.validate()?;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.k.is_finite() || self.k.abs() >= 1.0 {
            return domain(format!(
                "scaling constant k must satisfy |k| < 1, got {}",
                self.k
            ));
        }
        if !(self.eps_one > 0.0) || !self.eps_one.is_finite() {
            return domain(format!("eps_one must be positive, got {}", self.eps_one));
        }
        Ok(())
    }
}

impl Default for Params {
    fn default() -> Self {
        Params {
            k: 0.1,
            depth: Self::DEFAULT_DEPTH,
            eps_one: Self::DEFAULT_EPS_ONE,
            seed: Self::DEFAULT_SEED,
        }
    }
}
