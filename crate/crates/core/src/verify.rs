//! Exhaustive oracles: minimum distance, list-decodability, and the harness
//! that checks the list-decoding bound against real codes.
//!
//! Radii convention: a code is list-decodable against `t_i` insertions and
//! `t_d` deletions when every received word `y` has at most `L` codewords in
//! its decoder ball `B_ID(y, t_d, t_i)`, i.e. codewords reachable from `y`
//! with at most `t_d` insertions and `t_i` deletions. Those are exactly the
//! codewords whose channel outputs (`t_i` insertions, `t_d` deletions)
//! include `y`, which is what the tally below enumerates.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::hypothesis_region;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::words::{
    distance_slices, in_insdel_ball, insdel_ball_raw, insdel_ball_size_estimate, Symbol, Word,
};

/// Channel outputs enumerated per codeword before giving up.
pub const DEFAULT_OUTPUT_CAP: u128 = 10_000_000;

/// Exact pairwise minimum of the Levenshtein distance.
pub fn min_levenshtein_distance(code: &Code) -> Result<usize> {
    if code.size() < 2 {
        return Err(Error::SingletonCode);
    }
    let cw = code.codewords();
    Ok((0..cw.len())
        .into_par_iter()
        .map(|i| {
            cw[i + 1..]
                .iter()
                .map(|b| distance_slices(cw[i].symbols(), b.symbols()))
                .min()
                .unwrap_or(usize::MAX)
        })
        .min()
        .expect("at least two codewords"))
}

/// Minimum distance if it is strictly above `floor`, stopping as soon as a
/// pair at distance `<= floor` shows up. `None` also for singleton codes.
pub fn min_distance_above(code: &Code, floor: usize) -> Option<usize> {
    let cw = code.codewords();
    if cw.len() < 2 {
        return None;
    }
    let mut best = usize::MAX;
    for i in 0..cw.len() {
        for b in &cw[i + 1..] {
            let d = distance_slices(cw[i].symbols(), b.symbols());
            if d <= floor {
                return None;
            }
            best = best.min(d);
        }
    }
    Some(best)
}

/// A received word together with every codeword in its decoder ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub received: Word,
    pub codewords: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decodable: bool,
    pub witness: Option<Witness>,
    pub insertions: usize,
    pub deletions: usize,
    pub list_size: usize,
}

fn check_radii(code: &Code, t_i: usize, t_d: usize, cap: u128) -> Result<()> {
    if t_d > code.length() {
        return Err(Error::TooManyDeletions {
            deletions: t_d,
            len: code.length(),
        });
    }
    let estimate = insdel_ball_size_estimate(code.length(), code.q(), t_i, t_d);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    Ok(())
}

fn check_list_size(list_size: usize) -> Result<()> {
    if list_size == 0 {
        return Err(Error::InvalidParameter("list size must be >= 1".into()));
    }
    Ok(())
}

/// Tally of how many codewords produce each channel output. Codewords are
/// sharded across the current rayon pool and the partial maps summed, so the
/// result does not depend on the number of workers.
fn channel_tally(code: &Code, t_i: usize, t_d: usize) -> HashMap<Vec<Symbol>, u32> {
    let q = code.q();
    code.codewords()
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<Symbol>, u32>, c| {
            for y in insdel_ball_raw(c.symbols(), q, t_i, t_d) {
                *acc.entry(y).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            let (small, mut big) = if a.len() < b.len() { (a, b) } else { (b, std::mem::take(&mut a)) };
            for (k, v) in small {
                *big.entry(k).or_insert(0) += v;
            }
            big
        })
}

/// Codewords `c` with `c` reachable from `received` by at most `t_d`
/// insertions and `t_i` deletions.
pub fn decoder_ball_members(code: &Code, received: &Word, t_i: usize, t_d: usize) -> Result<Vec<Word>> {
    code.codewords()
        .iter()
        .filter_map(|c| match in_insdel_ball(received, c, t_d, t_i) {
            Ok(true) => Some(Ok(c.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

pub fn list_decodable(code: &Code, t_i: usize, t_d: usize, list_size: usize) -> Result<Verdict> {
    list_decodable_capped(code, t_i, t_d, list_size, DEFAULT_OUTPUT_CAP)
}

/// Full census. When the code fails, the witness is the shortlex-smallest
/// received word with more than `list_size` codewords in its decoder ball.
pub fn list_decodable_capped(
    code: &Code,
    t_i: usize,
    t_d: usize,
    list_size: usize,
    cap: u128,
) -> Result<Verdict> {
    check_list_size(list_size)?;
    check_radii(code, t_i, t_d, cap)?;
    let tally = channel_tally(code, t_i, t_d);
    let worst = tally
        .into_iter()
        .filter(|(_, count)| *count as usize > list_size)
        .map(|(y, _)| Word::from_raw(y, code.q()))
        .min_by(|a, b| a.shortlex_cmp(b));
    let witness = match worst {
        Some(received) => {
            let codewords = decoder_ball_members(code, &received, t_i, t_d)?;
            Some(Witness { received, codewords })
        }
        None => None,
    };
    Ok(Verdict {
        decodable: witness.is_none(),
        witness,
        insertions: t_i,
        deletions: t_d,
        list_size,
    })
}

/// Verdict only, stopping at the first received word whose tally exceeds
/// `list_size`.
pub fn is_list_decodable(
    code: &Code,
    t_i: usize,
    t_d: usize,
    list_size: usize,
    cap: u128,
) -> Result<bool> {
    check_list_size(list_size)?;
    check_radii(code, t_i, t_d, cap)?;
    let mut tally: HashMap<Vec<Symbol>, u32> = HashMap::new();
    for c in code.codewords() {
        for y in insdel_ball_raw(c.symbols(), code.q(), t_i, t_d) {
            let count = tally.entry(y).or_insert(0);
            *count += 1;
            if *count as usize > list_size {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Re-checks a failing verdict with the membership predicate alone.
pub fn witness_is_valid(code: &Code, verdict: &Verdict) -> Result<bool> {
    let Some(w) = &verdict.witness else {
        return Ok(verdict.decodable);
    };
    if w.codewords.len() <= verdict.list_size {
        return Ok(false);
    }
    for c in &w.codewords {
        if !code.contains(c) || !in_insdel_ball(&w.received, c, verdict.deletions, verdict.insertions)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniqueDecodingReport {
    pub min_distance: usize,
    /// `floor((d - 1) / 2)`.
    pub radius: usize,
    /// `(t_i, t_d, decodable)` for every pair with `t_i + t_d <= radius`.
    pub checked: Vec<(usize, usize, bool)>,
    pub all_decodable: bool,
}

/// Confirms list size one at every split of the half-distance radius.
pub fn check_unique_vs_list(code: &Code) -> Result<UniqueDecodingReport> {
    let d = min_levenshtein_distance(code)?;
    let radius = (d - 1) / 2;
    let mut checked = Vec::new();
    for total in 0..=radius {
        for t_d in 0..=total.min(code.length()) {
            let t_i = total - t_d;
            let ok = is_list_decodable(code, t_i, t_d, 1, DEFAULT_OUTPUT_CAP)?;
            checked.push((t_i, t_d, ok));
        }
    }
    let all_decodable = checked.iter().all(|&(_, _, ok)| ok);
    Ok(UniqueDecodingReport {
        min_distance: d,
        radius,
        checked,
        all_decodable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremViolation {
    pub insertions: usize,
    pub deletions: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub size: usize,
    pub min_distance: usize,
    /// `d / (2n)` as an exact fraction.
    pub delta: String,
    pub list_size: usize,
    /// Every `(t_i, t_d)` inside the strict hypothesis region.
    pub region: Vec<(usize, usize)>,
    pub checked: usize,
    pub skipped: Vec<(usize, usize)>,
    pub violations: Vec<TheoremViolation>,
    pub note: Option<String>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks list-decodability at every integer radius pair the
/// bound promises. Any failure is a violation of the bound.
pub fn check_main_theorem(code: &Code, list_size: usize, cap: u128) -> Result<TheoremReport> {
    if list_size < 2 {
        return Err(Error::InvalidParameter("the bound needs list size >= 2".into()));
    }
    let d = min_levenshtein_distance(code)?;
    let n = code.length();
    let delta: Rational = rat(d as i64, 2 * n as i64);
    let region = hypothesis_region(&delta, list_size as u32, n)?;

    let outcomes: Vec<((usize, usize), Result<bool>)> = region
        .par_iter()
        .map(|&(t_i, t_d)| ((t_i, t_d), is_list_decodable(code, t_i, t_d, list_size, cap)))
        .collect();

    let mut skipped = Vec::new();
    let mut violations = Vec::new();
    let mut checked = 0;
    for ((t_i, t_d), outcome) in outcomes {
        match outcome {
            Ok(true) => checked += 1,
            Ok(false) => {
                checked += 1;
                let verdict = list_decodable_capped(code, t_i, t_d, list_size, cap)?;
                violations.push(TheoremViolation {
                    insertions: t_i,
                    deletions: t_d,
                    witness: verdict.witness,
                });
            }
            Err(Error::CapExceeded { .. }) => skipped.push((t_i, t_d)),
            Err(e) => return Err(e),
        }
    }

    let unique_only = delta <= rat(2, list_size as i64 + 1);
    let note = unique_only.then(|| {
        format!(
            "relative distance {delta} <= 2/(L+1): the list bound reduces to unique decoding here"
        )
    });
    Ok(TheoremReport {
        n,
        size: code.size(),
        min_distance: d,
        delta: delta.to_string(),
        list_size,
        region,
        checked,
        skipped,
        violations,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    /// `(center, t_i, t_d, word in the insdel ball but not the Levenshtein ball)`.
    pub failures: Vec<(Word, usize, usize, Word)>,
}

/// For each sampled `y` and `(t_i, t_d)`: the decoder ball
/// `B_ID(y, t_d, t_i)` lies inside the Levenshtein ball of radius
/// `t_i + t_d`. Deletion radii beyond `|y|` are clamped to `|y|`.
pub fn check_ball_containment(words: &[Word], radii: &[(usize, usize)]) -> ContainmentReport {
    let mut checked = 0;
    let mut failures = Vec::new();
    for y in words {
        for &(t_i, t_d) in radii {
            let inner = insdel_ball_raw(y.symbols(), y.q(), t_d, t_i.min(y.len()));
            let outer: BTreeSet<Vec<Symbol>> = {
                let mut all = BTreeSet::new();
                let radius = t_i + t_d;
                for del in 0..=radius.min(y.len()) {
                    all.extend(insdel_ball_raw(y.symbols(), y.q(), radius - del, del));
                }
                all
            };
            checked += 1;
            for z in inner {
                if !outer.contains(&z) {
                    failures.push((y.clone(), t_i, t_d, Word::from_raw(z, y.q())));
                }
            }
        }
    }
    failures.sort();
    ContainmentReport { checked, failures }
}

/// Compares, for one codeword `c`, the set of received words whose decoder
/// ball contains `c` (found by brute force over all candidate words and the
/// membership predicate) with the channel outputs of `c`.
pub fn direction_equivalence_holds(c: &Word, t_i: usize, t_d: usize) -> Result<bool> {
    let n = c.len();
    let channel: BTreeSet<Word> = insdel_ball_raw(c.symbols(), c.q(), t_i, t_d.min(n))
        .into_iter()
        .map(|y| Word::from_raw(y, c.q()))
        .collect();
    let mut decoder_side = BTreeSet::new();
    // one length beyond each end to catch any off-by-one in the radii
    for len in n.saturating_sub(t_d + 1)..=n + t_i + 1 {
        for y in Word::all_of_length(c.q(), len) {
            if in_insdel_ball(&y, c, t_d, t_i)? {
                decoder_side.insert(y);
            }
        }
    }
    Ok(channel == decoder_side)
}

/// Minimum distance of every binary VT code of length `n`, by residue.
pub fn vt_min_distances(n: usize) -> Result<Vec<(usize, Option<usize>)>> {
    (0..=n)
        .map(|a| {
            let code = crate::codes::vt_binary(n, a)?;
            Ok((a, min_levenshtein_distance(&code).ok()))
        })
        .collect()
}

/// Smallest `n <= n_max` for which some binary VT code has minimum distance
/// exactly four.
pub fn first_vt_length_with_distance_four(n_max: usize) -> Result<Option<usize>> {
    for n in 1..=n_max {
        if vt_min_distances(n)?.iter().any(|(_, d)| *d == Some(4)) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
