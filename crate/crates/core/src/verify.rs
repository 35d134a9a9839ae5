//! Reproduction suite: the nine acceptance criteria as runnable checks.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{f_h_vectors, h_recursion_check};
use crate::constructions::{named, phi_matroid, theta_matroid, Named, DUAL_K33_LOWER_IDEAL};
use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Gf2, PrimeField, Rationals};
use crate::matroid::{k_subsets, ElementSet, Matroid};
use crate::nbc::{
    decomposition_check, has_cocircuit_pair, lsop, nbc_check, search_orderings, CheckOptions, Policy, SearchOptions,
};
use crate::ordering::{Ordering, StandardOrdering, StandardOrderings};
use crate::poly::{BasisPath, Monomial};
use crate::signing::{check_basis_nonsingular, check_rank_identities, fundamental_matrices};

pub const R10_BASES: usize = 162;
pub const R10_ORDERINGS: u64 = 2_332_800;
pub const DUAL_K33_H_SUM: i64 = 20;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub r10_sample: u64,
    pub r10_seed: u64,
    /// Orderings from the same sample re-checked over ℚ.
    pub r10_rational: u64,
    /// Run all R10 orderings as well (criterion 4).
    pub r10_exhaustive: bool,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            r10_sample: 10_000,
            r10_seed: 1,
            r10_rational: 100,
            r10_exhaustive: false,
            workers: 4,
            checkpoint: None,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

pub const TITLES: [&str; 9] = [
    "free matroids U(n,n)",
    "circuits U(n-1,n)",
    "M*(K33) lower ideal",
    "R10 has no NBC basis",
    "theta and phi matroids",
    "rank identities and nonsingularity",
    "h recursion and L split",
    "oracle equivalence",
    "order invariance of f and h",
];

/// Runs criterion `id` (1..=9). Errors become failing outcomes.
pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionOutcome {
    let start = Instant::now();
    let res = match id {
        1 => free_matroids(),
        2 => circuits(),
        3 => dual_k33(),
        4 => r10(opts),
        5 => theta_phi(),
        6 => rank_identities(opts),
        7 => recursion_and_split(opts),
        8 => oracle_equivalence(opts),
        9 => order_invariance(opts),
        _ => Err(Error::BadParams(format!("no criterion {id}"))),
    };
    let (pass, detail) = match res {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("?"),
        pass,
        detail,
        elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionOutcome> {
    (1..=9).map(|i| run_criterion(i, opts)).collect()
}

type Outcome = Result<(bool, String)>;

const FIELDS: [FieldTag; 2] = [FieldTag::Gf2, FieldTag::Rational];

fn mons(v: &[&str]) -> Result<BTreeSet<Monomial>> {
    v.iter().map(|s| s.parse()).collect()
}

fn free_matroids() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=8 {
        let m = Matroid::uniform(n, n)?;
        let so = StandardOrdering::new(&m, Ordering::identity(n))?;
        for field in FIELDS {
            let t = lsop(&m, &so, field)?;
            let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let forms: Vec<String> = t.forms.iter().map(|f| f.form.clone()).collect();
            let r = nbc_check(&m, &so, field, &CheckOptions::default())?;
            if forms != vars || r.lower_ideal != vec![Monomial::one()] || !r.is_basis() {
                bad.push(format!("U({n},{n}) over {field}"));
            }
        }
    }
    Ok((bad.is_empty(), summary("n = 1..8 over GF(2) and Q", &bad)))
}

fn circuits() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=8 {
        let m = Matroid::uniform(n - 1, n)?;
        let so = StandardOrdering::new(&m, Ordering::identity(n))?;
        let mut h = vec![1i64; n - 1];
        h.push(0);
        let l: Vec<Monomial> = (0..n as u16 - 1).map(|e| Monomial::var_pow(0, e)).collect();
        for field in FIELDS {
            let r = nbc_check(&m, &so, field, &CheckOptions::default())?;
            if r.h != h || r.lower_ideal != l || !r.is_basis() {
                bad.push(format!("U({},{n}) over {field}: {}", n - 1, r.verdict));
            }
        }
    }
    Ok((bad.is_empty(), summary("n = 3..8 over GF(2) and Q", &bad)))
}

fn dual_k33() -> Outcome {
    let (m, so) = named(Named::DualK33)?;
    let so = so.expect("fixture ordering");
    let r = nbc_check(&m, &so, FieldTag::Gf2, &CheckOptions::default())?;
    let got: BTreeSet<Monomial> = r.lower_ideal.iter().cloned().collect();
    let want = mons(&DUAL_K33_LOWER_IDEAL)?;
    let pass = got == want && r.is_basis() && r.h_sum == DUAL_K33_H_SUM;
    Ok((
        pass,
        format!(
            "|L| = {}, L matches listed set: {}, verdict {}, sum h = {}",
            r.l_size,
            got == want,
            r.verdict,
            r.h_sum
        ),
    ))
}

fn r10(opts: &VerifyOptions) -> Outcome {
    let (m, _) = named(Named::R10)?;
    let bases = m.bases()?.len();
    let count = StandardOrderings::new(&m)?.count();
    let policy = Policy::Sample {
        count: opts.r10_sample,
        seed: opts.r10_seed,
    };
    let search = SearchOptions {
        workers: opts.workers,
        ..SearchOptions::default()
    };
    let s = search_orderings(&m, FieldTag::Gf2, policy, &search)?;
    let q = search_orderings(
        &m,
        FieldTag::Rational,
        Policy::Sample {
            count: opts.r10_rational,
            seed: opts.r10_seed,
        },
        &search,
    )?;
    let mut pass = bases == R10_BASES
        && count == R10_ORDERINGS
        && s.tallies.examined >= 10_000.min(opts.r10_sample)
        && s.tallies.basis == 0
        && q.tallies.basis == 0;
    let mut detail = format!(
        "{bases} bases, {count} standard orderings; GF(2) sample of {} (seed {}): {} basis; Q sample of {}: {} basis",
        s.tallies.examined, opts.r10_seed, s.tallies.basis, q.tallies.examined, q.tallies.basis
    );
    if opts.r10_exhaustive {
        let full = search_orderings(
            &m,
            FieldTag::Gf2,
            Policy::Exhaustive,
            &SearchOptions {
                checkpoint: opts.checkpoint.clone(),
                resume: opts.checkpoint.is_some(),
                ..search
            },
        )?;
        pass &= full.complete && full.tallies.examined == count && full.tallies.basis == 0;
        detail.push_str(&format!(
            "; exhaustive: {} examined, {} basis",
            full.tallies.examined, full.tallies.basis
        ));
    }
    Ok((pass, detail))
}

/// Compositions of `n` into `t` parts, each at least 2.
pub fn compositions(n: usize, t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in 2..=n {
        for mut rest in compositions(n - a, t - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Every composition with total at most 12 and at most four parts.
pub fn theta_phi_parameters() -> Vec<Vec<usize>> {
    (1..=4)
        .flat_map(|t| (2..=12).flat_map(move |s| compositions(s, t)))
        .collect()
}

fn theta_phi_fixtures() -> Result<Vec<(String, Matroid, StandardOrdering)>> {
    let mut out = Vec::new();
    for c in theta_phi_parameters() {
        let key = c.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let (m, so) = theta_matroid(&c)?;
        out.push((format!("theta {key}"), m, so));
        let (m, so) = phi_matroid(&c)?;
        out.push((format!("phi {key}"), m, so));
    }
    Ok(out)
}

fn theta_phi() -> Outcome {
    let fixtures = theta_phi_fixtures()?;
    let mut bad = Vec::new();
    for (name, m, so) in &fixtures {
        for field in FIELDS {
            let r = nbc_check(m, so, field, &CheckOptions::default())?;
            if !r.is_basis() {
                bad.push(format!("{name} over {field}: {}", r.verdict));
            }
        }
    }
    Ok((
        bad.is_empty(),
        summary(&format!("{} fixtures over GF(2) and Q", fixtures.len()), &bad),
    ))
}

/// Matroids used by the fixture-wide criteria, with a preferred ordering.
pub fn fixtures() -> Result<Vec<(String, Matroid, Option<StandardOrdering>)>> {
    let mut out = Vec::new();
    for (r, n) in [(1, 4), (2, 3), (3, 4), (4, 4), (5, 6)] {
        out.push((format!("U({r},{n})"), Matroid::uniform(r, n)?, None));
    }
    for name in Named::ALL {
        let (m, so) = named(name)?;
        out.push((name.to_string(), m, so));
    }
    let (m, so) = theta_matroid(&[2, 3, 3])?;
    out.push(("theta 2,3,3".into(), m, Some(so)));
    let (m, so) = phi_matroid(&[3, 3, 3])?;
    out.push(("phi 3,3,3".into(), m, Some(so)));
    Ok(out)
}

/// Up to `k` standard orderings with pairwise distinct bases: cobasis then
/// basis, each ascending.
fn orderings_for_bases(m: &Matroid, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<StandardOrdering>> {
    let mut bases = m.bases()?.to_vec();
    bases.shuffle(rng);
    bases
        .into_iter()
        .take(k)
        .map(|b| {
            let mut order: Vec<usize> = m.ground().difference(b).iter().collect();
            order.extend(b.iter());
            StandardOrdering::new(m, Ordering::new(order)?)
        })
        .collect()
}

fn rank_identities(opts: &VerifyOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for (name, m, _) in fixtures()? {
        let sos = orderings_for_bases(&m, 5, &mut rng)?;
        if sos.len() < 5.min(m.bases()?.len()) {
            bad.push(format!("{name}: too few bases"));
        }
        for so in &sos {
            for field in FIELDS {
                let rep = check_rank_identities(&m, so, field)?;
                if !rep.pass {
                    bad.push(format!("{name} over {field}: ranks {rep:?}"));
                }
                let (_, coc) = fundamental_matrices(&m, so, field)?;
                for s in k_subsets(m.n(), m.rank()) {
                    if check_basis_nonsingular(&m, &coc, s)? != m.is_basis(s) {
                        bad.push(format!("{name} over {field}: {}", m.display_set(s)));
                        break;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok((
        bad.is_empty(),
        summary(&format!("{checked} (fixture, basis, field) cases, all r-subsets swept"), &bad),
    ))
}

/// All standard orderings when there are at most `cap`, else a sample.
fn scan_orderings(m: &Matroid, cap: u64, rng: &mut ChaCha8Rng) -> Result<Vec<StandardOrdering>> {
    let all = StandardOrderings::new(m)?;
    if all.count() <= cap {
        return all.materialize(cap);
    }
    (0..cap).map(|_| all.decode(rng.gen_range(0..all.count()))).collect()
}

fn recursion_and_split(opts: &VerifyOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = Vec::new();
    let (mut elements, mut splits) = (0usize, 0usize);
    for (name, m, so) in fixtures()? {
        let ord = so.as_ref().map_or_else(|| Ordering::identity(m.n()), |s| s.ordering().clone());
        for e in 0..m.n() {
            if m.is_loop(e) || m.is_coloop(e) {
                continue;
            }
            elements += 1;
            if !h_recursion_check(&m, e, &ord)?.holds {
                bad.push(format!("{name}: h recursion at {}", m.labels()[e]));
            }
        }
        for so in scan_orderings(&m, 3000, &mut rng)? {
            if has_cocircuit_pair(&m, &so)? {
                splits += 1;
                if !decomposition_check(&m, &so)?.holds {
                    bad.push(format!("{name}: split fails for {}", so.ordering().to_label_string(&m)));
                }
            }
        }
    }
    let fixtures = theta_phi_fixtures()?;
    let mut without_pair = Vec::new();
    for (name, m, so) in &fixtures {
        if has_cocircuit_pair(m, so)? {
            splits += 1;
            if !decomposition_check(m, so)?.holds {
                bad.push(format!("{name}: split fails under its labelling"));
            }
        } else {
            without_pair.push(name.clone());
        }
    }
    let mut detail = format!(
        "h recursion at {elements} elements; split verified for {splits} hypothesis orderings; \
         {} of {} theta/phi labellings satisfy the 2-cocircuit hypothesis",
        fixtures.len() - without_pair.len(),
        fixtures.len()
    );
    if !without_pair.is_empty() {
        detail.push_str(&format!(
            "; {{e_n, e_(n-r)}} is not a cocircuit for e.g. {}",
            without_pair.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ));
    }
    Ok((bad.is_empty() && without_pair.is_empty(), with_failures(detail, &bad)))
}

fn oracle_equivalence(opts: &VerifyOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = Vec::new();
    let mut paths = 0usize;
    let both = CheckOptions {
        path: BasisPath::Both,
        ..CheckOptions::default()
    };
    for (name, m, so) in fixtures()? {
        let mut dual: Vec<ElementSet> = m.cocircuits()?.to_vec();
        let mut transversal = m.cocircuits_by_transversals()?;
        dual.sort();
        transversal.sort();
        if dual != transversal {
            bad.push(format!("{name}: cocircuit oracles differ"));
        }
        let mut sos = orderings_for_bases(&m, 3, &mut rng)?;
        sos.extend(so);
        for so in &sos {
            for field in FIELDS {
                match nbc_check(&m, so, field, &both) {
                    Ok(_) => paths += 1,
                    Err(Error::PathDisagreement(e)) => bad.push(format!("{name} over {field}: {e}")),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let mut trials = 0;
    for t in 0..100 {
        let ok = match t % 3 {
            0 => crate::poly::basis::path_agreement_trial(Gf2, &mut rng)?,
            1 => crate::poly::basis::path_agreement_trial(PrimeField::new(5)?, &mut rng)?,
            _ => crate::poly::basis::path_agreement_trial(Rationals, &mut rng)?,
        };
        trials += 1;
        if !ok {
            bad.push(format!("random ideal trial {t}"));
        }
    }
    Ok((
        bad.is_empty(),
        summary(
            &format!("cocircuit oracles on all fixtures; both basis tests on {paths} fixture orderings and {trials} random ideals"),
            &bad,
        ),
    ))
}

fn order_invariance(opts: &VerifyOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, m, _) in fixtures()? {
        let base = f_h_vectors(&m, &Ordering::identity(m.n()))?;
        for _ in 0..5 {
            let ord = Ordering::random(m.n(), &mut rng);
            let other = f_h_vectors(&m, &ord)?;
            count += 1;
            if other.f != base.f || other.h != base.h {
                bad.push(format!("{name} under {}", ord.to_label_string(&m)));
            }
        }
    }
    Ok((bad.is_empty(), summary(&format!("{count} reorderings"), &bad)))
}

fn summary(what: &str, bad: &[String]) -> String {
    with_failures(what.to_string(), bad)
}

fn with_failures(mut detail: String, bad: &[String]) -> String {
    if !bad.is_empty() {
        detail.push_str(&format!(
            "; {} failures: {}",
            bad.len(),
            bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        ));
    }
    detail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        // Compositions of n into t parts >= 2 number C(n-t-1, t-1).
        assert_eq!(compositions(6, 2).len(), 3);
        assert_eq!(compositions(12, 4).len(), 35);
        assert_eq!(theta_phi_parameters().len(), 210);
    }

    #[test]
    fn fast_criteria_pass() {
        let opts = VerifyOptions::default();
        for id in [1, 2, 3, 9] {
            let o = run_criterion(id, &opts);
            assert!(o.pass, "{o:?}");
        }
    }
}
