//! Memory caps shared by the table builder, subgroup enumeration and the dense oracle.

use crate::error::{Error, Result};

/// Default element cap for lookup tables and enumerated subgroups.
pub const DEFAULT_MEM_CAP: u64 = 1 << 22;

/// Default amplitude cap for dense states.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 14;

/// Environment variable overriding both caps.
pub const MEM_CAP_ENV: &str = "QGC_MEM_CAP";

fn env_cap() -> Option<u64> {
    std::env::var(MEM_CAP_ENV).ok()?.trim().parse().ok()
}

/// Cap on table and subgroup sizes, honoring `QGC_MEM_CAP`.
pub fn mem_cap() -> u64 {
    env_cap().unwrap_or(DEFAULT_MEM_CAP)
}

/// Cap on dense state dimension, honoring `QGC_MEM_CAP`.
pub fn oracle_cap() -> u64 {
    env_cap().unwrap_or(DEFAULT_ORACLE_CAP)
}

/// `d^n` as an exact integer, saturating at `u128::MAX`.
pub fn pow(d: u32, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(d as u128);
    }
    acc
}

pub(crate) fn check(what: &'static str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::Capacity { what, needed, cap })
    } else {
        Ok(())
    }
}
