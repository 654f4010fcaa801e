//! Resource ceilings on the ground-set size.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Default ceiling for enumeration; Bell(13) is roughly 2.7e7 faces.
pub const DEFAULT_MAX_N: usize = 12;

/// Blocks are stored as `u32` bit sets.
pub const HARD_MAX_N: usize = 32;

pub const MAX_N_ENV: &str = "PARTHOM_MAX_N";

/// Enumeration ceiling: `PARTHOM_MAX_N` when set and parseable, else
/// [`DEFAULT_MAX_N`]. Read once per process.
pub fn max_n() -> usize {
    static MAX: OnceLock<usize> = OnceLock::new();
    *MAX.get_or_init(|| {
        std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.min(HARD_MAX_N))
            .unwrap_or(DEFAULT_MAX_N)
    })
}

pub fn check_n(n: usize) -> Result<()> {
    check_n_against(n, max_n())
}

pub fn check_n_against(n: usize, max: usize) -> Result<()> {
    let max = max.min(HARD_MAX_N);
    if n > max {
        Err(Error::ResourceLimit { requested: n, max })
    } else {
        Ok(())
    }
}
