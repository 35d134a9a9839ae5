//! Search over the standard orderings of a matroid.
//!
//! Orderings are addressed by their mixed-radix index (see
//! [`StandardOrderings`]). A policy fixes the sequence of indices to visit;
//! a shard `i/m` takes the `i`-th of `m` contiguous slices of it. Results do
//! not depend on the worker count: chunks are evaluated in parallel but
//! merged in index order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::FieldTag;
use crate::matroid::io::MatroidDoc;
use crate::matroid::Matroid;
use crate::ordering::StandardOrderings;
use crate::poly::Verdict;

use super::check::{nbc_check, CheckOptions};
use super::theta::theta_unchecked;

/// Orderings evaluated between merges and checkpoints.
pub const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Policy {
    Exhaustive,
    Sample { count: u64, seed: u64 },
    FirstHit,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Exhaustive => f.write_str("exhaustive"),
            Policy::Sample { count, seed } => write!(f, "sample:{count}:{seed}"),
            Policy::FirstHit => f.write_str("first-hit"),
        }
    }
}

impl FromStr for Policy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad policy `{s}` (exhaustive, sample:N:SEED, first-hit)"));
        match s {
            "exhaustive" => Ok(Policy::Exhaustive),
            "first-hit" => Ok(Policy::FirstHit),
            _ => {
                let rest = s.strip_prefix("sample:").ok_or_else(bad)?;
                let (count, seed) = rest.split_once(':').ok_or_else(bad)?;
                Ok(Policy::Sample {
                    count: count.parse().map_err(|_| bad())?,
                    seed: seed.parse().map_err(|_| bad())?,
                })
            }
        }
    }
}

impl From<Policy> for String {
    fn from(p: Policy) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Policy {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Shard `index` of `count` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Shard {
    pub index: u64,
    pub count: u64,
}

impl Default for Shard {
    fn default() -> Self {
        Shard { index: 0, count: 1 }
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad shard `{s}` (expected i/m with 0 <= i < m)"));
        let (i, m) = s.split_once('/').ok_or_else(bad)?;
        let (index, count): (u64, u64) = (i.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?);
        if count == 0 || index >= count {
            return Err(bad());
        }
        Ok(Shard { index, count })
    }
}

impl From<Shard> for String {
    fn from(s: Shard) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for Shard {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub examined: u64,
    pub basis: u64,
    pub not_independent: u64,
    pub wrong_cardinality: u64,
    pub not_spanning: u64,
}

impl Tallies {
    fn add(&mut self, v: &Verdict) {
        self.examined += 1;
        match v {
            Verdict::Basis => self.basis += 1,
            Verdict::NotIndependent { .. } => self.not_independent += 1,
            Verdict::WrongCardinality { .. } => self.wrong_cardinality += 1,
            Verdict::NotSpanning { .. } => self.not_spanning += 1,
        }
    }

    pub fn not_basis(&self) -> u64 {
        self.examined - self.basis
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub ordering: Vec<String>,
}

/// Checkpoint file contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchState {
    pub matroid_hash: String,
    pub field: String,
    pub policy: Policy,
    pub shard: Shard,
    /// Cursor into the shard's slice of the policy sequence.
    pub next_index: u64,
    pub tallies: Tallies,
    pub first_witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub matroid_hash: String,
    pub field: String,
    pub policy: Policy,
    pub shard: Shard,
    /// Standard orderings of the matroid.
    pub orderings: u64,
    /// Orderings this shard is responsible for under the policy.
    pub in_scope: u64,
    pub tallies: Tallies,
    /// Smallest-index ordering with a basis verdict among those examined.
    pub first_witness: Option<Witness>,
    /// False when stopped by `limit` before the shard was exhausted.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub workers: usize,
    pub shard: Shard,
    /// Checkpoint file written after every chunk.
    pub checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint file if it exists.
    pub resume: bool,
    /// Stop after examining this many orderings in this run.
    pub limit: Option<u64>,
    pub timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            shard: Shard::default(),
            checkpoint: None,
            resume: false,
            limit: None,
            timing: false,
        }
    }
}

/// Hex SHA-256 of the matroid's canonical JSON document.
pub fn matroid_hash(m: &Matroid) -> String {
    let digest = Sha256::digest(MatroidDoc::from_matroid(m).to_json().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The policy's full index sequence, as a function from cursor to index.
enum Sequence {
    Range(u64),
    List(Vec<u64>),
}

impl Sequence {
    fn len(&self) -> u64 {
        match self {
            Sequence::Range(n) => *n,
            Sequence::List(v) => v.len() as u64,
        }
    }

    fn get(&self, i: u64) -> u64 {
        match self {
            Sequence::Range(_) => i,
            Sequence::List(v) => v[i as usize],
        }
    }
}

fn sequence(policy: Policy, total: u64) -> Result<Sequence> {
    Ok(match policy {
        Policy::Exhaustive | Policy::FirstHit => Sequence::Range(total),
        Policy::Sample { count, seed } => {
            if count >= total {
                Sequence::Range(total)
            } else {
                let len = usize::try_from(total).map_err(|_| Error::Overbudget(format!("{total} orderings")))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut v: Vec<u64> = rand::seq::index::sample(&mut rng, len, count as usize)
                    .into_iter()
                    .map(|i| i as u64)
                    .collect();
                v.sort_unstable();
                Sequence::List(v)
            }
        }
    })
}

fn write_state(path: &Path, state: &SearchState) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(state)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs the search. With `opts.resume` and an existing checkpoint, the run
/// continues where the checkpoint left off; the checkpoint must describe the
/// same matroid, field, policy and shard.
pub fn search_orderings(m: &Matroid, field: FieldTag, policy: Policy, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let field = field.checked()?;
    let all = StandardOrderings::new(m)?;
    let seq = sequence(policy, all.count())?;
    let (lo, hi) = {
        let len = seq.len() as u128;
        let s = opts.shard;
        (
            (len * s.index as u128 / s.count as u128) as u64,
            (len * (s.index + 1) as u128 / s.count as u128) as u64,
        )
    };
    let hash = matroid_hash(m);
    let mut state = SearchState {
        matroid_hash: hash.clone(),
        field: field.to_string(),
        policy,
        shard: opts.shard,
        next_index: 0,
        tallies: Tallies::default(),
        first_witness: None,
    };
    if let (true, Some(path)) = (opts.resume, &opts.checkpoint) {
        if path.exists() {
            let saved: SearchState = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if saved.matroid_hash != state.matroid_hash
                || saved.field != state.field
                || saved.policy != state.policy
                || saved.shard != state.shard
            {
                return Err(Error::BadParams(format!(
                    "checkpoint {} belongs to a different search",
                    path.display()
                )));
            }
            state = saved;
        }
    }
    // Fail early when no signing exists.
    if hi > lo {
        theta_unchecked(m, &all.decode(seq.get(lo))?, field)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::BadParams(e.to_string()))?;
    let check_opts = CheckOptions::fast();
    let scope = hi - lo;
    let mut budget = opts.limit.unwrap_or(u64::MAX);
    let stop_on_hit = policy == Policy::FirstHit;
    while state.next_index < scope && budget > 0 && !(stop_on_hit && state.first_witness.is_some()) {
        let take = (scope - state.next_index).min(CHUNK as u64).min(budget);
        let cursors: Vec<u64> = (state.next_index..state.next_index + take).collect();
        let verdicts: Vec<Result<Verdict>> = pool.install(|| {
            cursors
                .par_iter()
                .map(|&c| {
                    let so = all.decode(seq.get(lo + c))?;
                    Ok(nbc_check(m, &so, field, &check_opts)?.verdict)
                })
                .collect()
        });
        for (c, v) in cursors.iter().zip(verdicts) {
            let v = v?;
            state.tallies.add(&v);
            state.next_index = c + 1;
            budget -= 1;
            if v.is_basis() && state.first_witness.is_none() {
                let index = seq.get(lo + c);
                state.first_witness = Some(Witness {
                    index,
                    ordering: all.decode(index)?.ordering().labels(m).into_iter().map(String::from).collect(),
                });
                if stop_on_hit {
                    break;
                }
            }
        }
        if let Some(path) = &opts.checkpoint {
            write_state(path, &state)?;
        }
    }
    let complete = state.next_index == scope || (stop_on_hit && state.first_witness.is_some());
    Ok(SearchReport {
        matroid_hash: hash,
        field: field.to_string(),
        policy,
        shard: opts.shard,
        orderings: all.count(),
        in_scope: scope,
        tallies: state.tallies,
        first_witness: state.first_witness,
        complete,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangles() -> Matroid {
        let t1 = Matroid::uniform_with_labels(2, vec!["p".into(), "a".into(), "b".into()]).unwrap();
        let t2 = Matroid::uniform_with_labels(2, vec!["p".into(), "c".into(), "d".into()]).unwrap();
        crate::matroid::parallel_connection(&t1, &t2, "p").unwrap()
    }

    #[test]
    fn policies_parse() {
        for s in ["exhaustive", "first-hit", "sample:100:7"] {
            assert_eq!(s.parse::<Policy>().unwrap().to_string(), s);
        }
        assert!("sample:1".parse::<Policy>().is_err());
        assert_eq!("2/4".parse::<Shard>().unwrap(), Shard { index: 2, count: 4 });
        assert!("4/4".parse::<Shard>().is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let m = triangles();
        let one = search_orderings(&m, FieldTag::Gf2, Policy::Exhaustive, &SearchOptions::default()).unwrap();
        let four = search_orderings(
            &m,
            FieldTag::Gf2,
            Policy::Exhaustive,
            &SearchOptions {
                workers: 4,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(one.tallies, four.tallies);
        assert_eq!(one.first_witness, four.first_witness);
        assert_eq!(one.tallies.examined, one.orderings);
        assert!(one.tallies.basis > 0);
    }

    #[test]
    fn shards_partition_the_sequence() {
        let m = triangles();
        let whole = search_orderings(&m, FieldTag::Gf2, Policy::Sample { count: 20, seed: 3 }, &SearchOptions::default()).unwrap();
        let mut sum = Tallies::default();
        for i in 0..3 {
            let part = search_orderings(
                &m,
                FieldTag::Gf2,
                Policy::Sample { count: 20, seed: 3 },
                &SearchOptions {
                    shard: Shard { index: i, count: 3 },
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            sum.examined += part.tallies.examined;
            sum.basis += part.tallies.basis;
            sum.not_independent += part.tallies.not_independent;
            sum.wrong_cardinality += part.tallies.wrong_cardinality;
            sum.not_spanning += part.tallies.not_spanning;
        }
        assert_eq!(sum, whole.tallies);
        assert_eq!(whole.tallies.examined, 20);
    }

    #[test]
    fn resume_continues_from_checkpoint() {
        let m = triangles();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let opts = SearchOptions {
            checkpoint: Some(path.clone()),
            resume: true,
            limit: Some(10),
            ..SearchOptions::default()
        };
        let first = search_orderings(&m, FieldTag::Gf2, Policy::Exhaustive, &opts).unwrap();
        assert!(!first.complete);
        assert_eq!(first.tallies.examined, 10);
        let rest = search_orderings(
            &m,
            FieldTag::Gf2,
            Policy::Exhaustive,
            &SearchOptions {
                limit: None,
                ..opts.clone()
            },
        )
        .unwrap();
        assert!(rest.complete);
        let direct = search_orderings(&m, FieldTag::Gf2, Policy::Exhaustive, &SearchOptions::default()).unwrap();
        assert_eq!(rest.tallies, direct.tallies);
        assert_eq!(rest.first_witness, direct.first_witness);
        let other = search_orderings(&m, FieldTag::Rational, Policy::Exhaustive, &opts);
        assert!(matches!(other, Err(Error::BadParams(_))));
    }

    #[test]
    fn first_hit_stops_at_smallest_index() {
        let m = triangles();
        let hit = search_orderings(&m, FieldTag::Gf2, Policy::FirstHit, &SearchOptions { workers: 3, ..SearchOptions::default() }).unwrap();
        let w = hit.first_witness.clone().unwrap();
        assert_eq!(hit.tallies.examined, w.index + 1);
        assert_eq!(hit.tallies.basis, 1);
        assert!(hit.complete);
    }
}
