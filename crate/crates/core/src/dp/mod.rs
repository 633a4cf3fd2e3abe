//! Dynamic-programming enumeration of consecutive-pattern avoiders.
//!
//! Two independent engines are provided. [`Engine::Ranks`] carries the ranks
//! of the last L-1 entries and computes every c_n up to N in a single pass,
//! modulo several word-sized primes, before reconstructing exact values; it
//! is the default. [`Engine::Frontier`] carries the window pattern together
//! with the sizes of the gaps between unused values, with exact big-integer
//! weights, one run per n; it is slower and serves as a cross-check.

mod cache;
mod frontier;
mod modular;
mod ranks;

use dashu::integer::UBig;

pub use cache::{CacheLookup, SeriesCache};
pub use frontier::{frontier_count, DPState, Frontier};
pub use modular::{is_prime, mul_mod, pow_mod, primes_below_2_62, Crt};

use crate::error::{Error, Result};
use crate::perm::Pattern;
use crate::series::CountSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    #[default]
    Ranks,
    Frontier,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Ranks => "ranks",
            Engine::Frontier => "frontier",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DpConfig {
    pub engine: Engine,
    /// Upper bound on working memory; the run stops at the last length that
    /// fits and reports the completed prefix.
    pub memory_cap_bytes: u128,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig { engine: Engine::Ranks, memory_cap_bytes: 2 << 30 }
    }
}

/// c_0..c_N for permutations avoiding `pat` consecutively.
pub fn count_series(pat: &Pattern, n: usize) -> Result<CountSeries> {
    count_series_with(pat, n, &DpConfig::default())
}

pub fn count_series_with(pat: &Pattern, n: usize, cfg: &DpConfig) -> Result<CountSeries> {
    let len = pat.len();
    if !(2..=6).contains(&len) {
        return Err(Error::InvalidInput(format!("pattern length {len} outside 2..=6")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let reach = (1..=n)
        .take_while(|&t| estimate_bytes(cfg.engine, len, t) <= cfg.memory_cap_bytes)
        .last()
        .unwrap_or(0);
    let provenance = format!("dp:{}:{pat}", cfg.engine.name());
    let counts = compute(pat, reach.max(1), cfg.engine)?;
    let series = CountSeries::new(counts, provenance)?;
    if reach < n {
        let series = series.prefix(reach);
        return Err(Error::BudgetExceeded {
            completed: Box::new(series),
            reason: format!(
                "n = {} needs about {} MiB, cap is {} MiB",
                reach + 1,
                estimate_bytes(cfg.engine, len, reach + 1) >> 20,
                cfg.memory_cap_bytes >> 20
            ),
        });
    }
    Ok(series)
}

fn compute(pat: &Pattern, n: usize, engine: Engine) -> Result<Vec<UBig>> {
    match engine {
        Engine::Ranks => ranks::counts_exact(pat, n).map_err(Error::Internal),
        Engine::Frontier => (0..=n).map(|k| frontier_count(pat, k)).collect(),
    }
}

/// Rough peak memory for reaching length t.
pub fn estimate_bytes(engine: Engine, len: usize, t: usize) -> u128 {
    let w = len - 1;
    match engine {
        Engine::Ranks => ranks::step_bytes(w, t),
        Engine::Frontier => {
            // (L-1)! windows times compositions of the unused values, two
            // maps alive, about 80 bytes per entry.
            let rest = t.saturating_sub(w) as u128;
            let mut comps = 1u128;
            for i in 1..=w as u128 {
                comps = comps * (rest + i) / i;
            }
            let windows: u128 = (1..=w as u128).product();
            2 * 80 * windows * comps
        }
    }
}

/// Looks the series up in `cache`, computing and storing it on a miss. A
/// corrupt entry is reported through `on_corrupt` and then recomputed.
pub fn cached_count_series(
    pat: &Pattern,
    n: usize,
    cfg: &DpConfig,
    cache: &SeriesCache,
    mut on_corrupt: impl FnMut(&std::path::Path, &str),
) -> Result<CountSeries> {
    match cache.load(pat, n, cfg.engine) {
        CacheLookup::Hit(s) => return Ok(s),
        CacheLookup::Miss => {}
        CacheLookup::Corrupt { path, reason } => on_corrupt(&path, &reason),
    }
    let s = count_series_with(pat, n, cfg)?;
    cache.store(pat, cfg.engine, &s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        let s = count_series(&pat("1423"), 3).unwrap();
        assert_eq!(s.counts(), &[1u32, 1, 2, 6].map(UBig::from)[..]);
        let s = count_series(&pat("1234"), 4).unwrap();
        assert_eq!(s.counts()[4], UBig::from(23u32));
        assert!(count_series(&pat("1234567"), 4).is_err());
    }

    #[test]
    fn engines_agree() {
        for p in ["1423", "2143", "12453"] {
            let cfg = DpConfig { engine: Engine::Frontier, ..DpConfig::default() };
            let a = count_series(&pat(p), 11).unwrap();
            let b = count_series_with(&pat(p), 11, &cfg).unwrap();
            assert_eq!(a.counts(), b.counts());
        }
    }

    #[test]
    fn budget_returns_prefix() {
        let cfg = DpConfig { engine: Engine::Ranks, memory_cap_bytes: 8 * (20u128.pow(3) + 21u128.pow(3)) };
        match count_series_with(&pat("1423"), 30, &cfg) {
            Err(Error::BudgetExceeded { completed, .. }) => {
                assert_eq!(completed.order(), 21);
                let full = count_series(&pat("1423"), 21).unwrap();
                assert_eq!(completed.counts(), full.counts());
            }
            other => panic!("{other:?}"),
        }
    }
}
