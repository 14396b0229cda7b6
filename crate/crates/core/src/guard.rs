//! Size limits for the brute-force enumerators.
//!
//! Every enumerator checks its input against a fixed limit before doing any
//! work. Setting `HURWITZ_ATLAS_GUARD_OVERRIDE=1` lifts all limits.

use crate::error::{Error, Result};

pub const OVERRIDE_ENV: &str = "HURWITZ_ATLAS_GUARD_OVERRIDE";

pub fn overridden() -> bool {
    std::env::var(OVERRIDE_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

/// Fails with [`Error::GuardExceeded`] if `value > limit`, unless overridden.
pub fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit && !overridden() {
        return Err(Error::GuardExceeded { what, value, limit });
    }
    Ok(())
}
