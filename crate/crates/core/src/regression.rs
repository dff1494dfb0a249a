//! The full acceptance suite as named, timed checks. Used by the `regress`
//! command and by the acceptance test target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    beta2, comparison_report, delta1, delta1_closed_form, hy_phi1, hy_phi2, list2_crossing, r_min, rho,
    rho_piecewise,
};
use crate::codes::{helberg, vt_binary, vt_qary, Code};
use crate::combinatorics::{
    binomial, claim8_sum, coefficient_a, coefficient_a_from_covers, count_v_covers, enumerate_v_covers,
    pairing_constant, phi_coefficients, PhiRow, DEFAULT_FAMILY_CAP,
};
use crate::error::Error;
use crate::figures::{emit_figure, FigureSpec};
use crate::rational::{int, rat, Rational};
use crate::verify::{
    check_ball_containment, check_main_theorem, direction_equivalence_holds, first_vt_length_with_distance_four,
    list_decodable, min_levenshtein_distance, DEFAULT_OUTPUT_CAP,
};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CheckOutcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    /// Passing and inside its time budget.
    pub fn ok(&self) -> bool {
        self.status != Status::Fail && self.within_limit()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.status == Status::Pass && !self.within_limit() {
            "FAIL (slow)".to_string()
        } else {
            self.status.to_string()
        };
        write!(
            f,
            "[{:>2}] {:<7} {} ({:.2?} / limit {:?}): {}",
            self.id, status, self.name, self.elapsed, self.limit, self.detail
        )
    }
}

/// Deliberate corruption used to prove the suite notices bad coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to `Phi_{r,j}` in the row for list size `list_size`.
    PhiCoefficient { list_size: u32, r: u32, j: u32 },
}

#[derive(Clone, Debug)]
pub struct RegressionConfig {
    pub seed: u64,
    pub cap: u128,
    /// Thread count compared against a single thread in the determinism check.
    pub workers: usize,
    pub fault: Option<Fault>,
}

impl Default for RegressionConfig {
    fn default() -> Self {
        Self {
            seed: 0x1d5_de1,
            cap: DEFAULT_OUTPUT_CAP,
            workers: std::thread::available_parallelism().map_or(4, |n| n.get()).max(2),
            fault: None,
        }
    }
}

pub const CHECK_NAMES: [&str; 11] = [
    "cover-count recursion matches enumeration",
    "inclusion-exclusion coefficients closed form",
    "alternating binomial sum equals one",
    "combination coefficient rows",
    "max form and piecewise form of rho agree",
    "comparison with the quadratic bound",
    "code family minimum distances",
    "list-decoding bound on concrete codes",
    "insdel ball inside Levenshtein ball",
    "decoder ball matches channel outputs",
    "determinism across runs and thread counts",
];

const LIMITS_SECS: [u64; 11] = [10, 30, 1, 5, 10, 5, 300, 1800, 60, 60, 120];

struct Partial {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Partial {
    Partial {
        status: Status::Pass,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Partial {
    Partial {
        status: Status::Fail,
        detail: detail.into(),
    }
}

/// Runs check `id` (1-based).
pub fn run_check(id: u8, config: &RegressionConfig) -> CheckOutcome {
    assert!((1..=11).contains(&id), "no check {id}");
    let start = Instant::now();
    let partial = match id {
        1 => cover_counts(),
        2 => coefficients_closed_form(),
        3 => claim_sum(),
        4 => phi_rows(config.fault),
        5 => rho_forms(),
        6 => hy_comparison(),
        7 => code_distances(),
        8 => theorem_harness(config),
        9 => containment(),
        10 => direction(),
        _ => determinism(config),
    };
    CheckOutcome {
        id,
        name: CHECK_NAMES[id as usize - 1],
        status: partial.status,
        detail: partial.detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(LIMITS_SECS[id as usize - 1]),
    }
}

pub fn run_all(config: &RegressionConfig) -> Vec<CheckOutcome> {
    (1..=11).map(|id| run_check(id, config)).collect()
}

fn cover_counts() -> Partial {
    let mut compared = 0;
    for j in 1..=5u32 {
        for v in 1..=j {
            let families = binomial(j.into(), v.into());
            let max_ell: u32 = families.try_into().expect("small");
            for ell in 1..=max_ell {
                let recursive = count_v_covers(j, ell, v);
                let direct = match enumerate_v_covers(j, ell, v, DEFAULT_FAMILY_CAP) {
                    Ok(c) => c,
                    Err(e) => return fail(format!("enumeration failed at ({j},{ell},{v}): {e}")),
                };
                if recursive != direct {
                    return fail(format!("A({j},{ell},{v}): recursion {recursive} vs enumeration {direct}"));
                }
                compared += 1;
            }
        }
    }
    pass(format!("{compared} triples agree"))
}

fn coefficients_closed_form() -> Partial {
    let mut compared = 0;
    for j in 2..=9u32 {
        for v in 1..=j {
            let signed = coefficient_a_from_covers(j, v);
            let closed = coefficient_a(j, v);
            let sign = if (j - v) % 2 == 0 { 1 } else { -1 };
            let direct = BigInt::from(sign) * binomial((j - 1).into(), (v - 1).into());
            if signed != closed || closed != direct {
                return fail(format!("A({j},{v}): cover sum {signed}, closed form {closed}, direct {direct}"));
            }
            compared += 1;
        }
    }
    pass(format!("{compared} pairs agree"))
}

fn claim_sum() -> Partial {
    let mut compared = 0;
    for j in 1..=30u32 {
        for v in 1..=j {
            match claim8_sum(j, v) {
                Ok(s) if s.is_one() => compared += 1,
                Ok(s) => return fail(format!("sum at ({j},{v}) is {s}")),
                Err(e) => return fail(format!("({j},{v}): {e}")),
            }
        }
    }
    pass(format!("{compared} pairs sum to 1"))
}

/// First problem found in a set of rows, checking both the structural
/// invariants and the pairing constant of consecutive tail terms.
pub fn phi_row_problems(rows: &[PhiRow]) -> Option<String> {
    for row in rows {
        if let Err(msg) = row.check_invariants() {
            return Some(format!("L={}: {msg}", row.list_size));
        }
        let (l, r) = (row.list_size, row.r);
        if r < 2 {
            continue;
        }
        for j in (r + 2..=l).filter(|j| (j - r) % 2 == 0) {
            let (lhs, rhs) = pairing_constant(r, j).expect("r >= 2, j >= r + 2");
            let from_row = int(i64::from(j) + 1) * row.get(j) + row.get(j + 1);
            if lhs != rhs || lhs != from_row {
                return Some(format!(
                    "L={l}: pairing constant at r={r}, j={j}: {lhs} / {rhs} / row gives {from_row}"
                ));
            }
            if rhs < int(3) {
                return Some(format!("L={l}: pairing constant at r={r}, j={j} is {rhs} < 3"));
            }
        }
    }
    None
}

fn phi_rows(fault: Option<Fault>) -> Partial {
    let mut rows = Vec::new();
    for l in 2..=12u32 {
        for r in 1..=l {
            match phi_coefficients(l, r) {
                Ok(row) => rows.push(row),
                Err(e) => return fail(format!("L={l}, r={r}: {e}")),
            }
        }
    }
    if let Some(Fault::PhiCoefficient { list_size, r, j }) = fault {
        if let Some(row) = rows.iter_mut().find(|row| row.list_size == list_size && row.r == r) {
            if let Some(c) = row.coefficients.get_mut(j as usize - 1) {
                *c += Rational::one();
            }
        }
    }
    match phi_row_problems(&rows) {
        Some(problem) => fail(problem),
        None => pass(format!("{} rows satisfy every invariant", rows.len())),
    }
}

/// Compares both forms of `rho` for one `(delta, L)`; returns the number of
/// points checked.
fn rho_forms_agree(delta: &Rational, l: u32) -> Result<usize, String> {
    let bound = rho_piecewise(delta, l).map_err(|e| format!("delta={delta}, L={l}: {e}"))?;
    let expected_pieces = (l - r_min(delta, l) + 1) as usize;
    if bound.pieces.len() != expected_pieces {
        return Err(format!(
            "delta={delta}, L={l}: {} pieces, expected {expected_pieces}",
            bound.pieces.len()
        ));
    }
    bound.check_structure().map_err(|msg| format!("delta={delta}, L={l}: {msg}"))?;
    let lo = Rational::one() - delta;
    for i in 0..1000i64 {
        let x = &lo + delta * rat(i, 999);
        match (rho(delta, l, &x), bound.eval(&x)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => return Err(format!("delta={delta}, L={l}, x={x}: {a:?} vs {b:?}")),
        }
    }
    Ok(1000)
}

fn rho_forms() -> Partial {
    let grid: Vec<(Rational, u32)> = (1..=20i64)
        .flat_map(|k| (2..=12u32).map(move |l| (rat(k, 21), l)))
        .collect();
    let results: Vec<Result<usize, String>> =
        grid.par_iter().map(|(delta, l)| rho_forms_agree(delta, *l)).collect();
    let mut points = 0;
    for r in results {
        match r {
            Ok(n) => points += n,
            Err(e) => return fail(e),
        }
    }
    pass(format!("{points} points over {} (delta, L) pairs agree exactly", grid.len()))
}

fn hy_comparison() -> Partial {
    let expected = (27.0 - 57f64.sqrt()) / 28.0;
    let (generic, closed) = (delta1(2), delta1_closed_form(2));
    if (generic - expected).abs() > 1e-9 || (closed - expected).abs() > 1e-9 {
        return fail(format!("threshold {generic} / {closed} vs {expected}"));
    }
    let report = match comparison_report(&rat(9, 10), 2) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    if report.p2_exact != Some(("7/10".into(), "1/5".into())) {
        return fail(format!("P2 = {:?}", report.p2_exact));
    }
    let alpha = list2_crossing(0.9);
    let Some((p1_tau, _)) = report.p1 else {
        return fail("no crossing found at delta = 0.9");
    };
    if (p1_tau - (1.0 - alpha)).abs() > 1e-6 {
        return fail(format!("P1 at {p1_tau}, expected {}", 1.0 - alpha));
    }
    // phi2 < phi1 on an exact grid of (x, 1 - delta) in (0,1)^2
    let mut grid = 0;
    for a in 1..40i64 {
        let delta = Rational::one() - rat(a, 40);
        for b in 1..40i64 {
            let x = rat(b, 40);
            for l in [2u32, 3, 5, 12] {
                let (p1, p2) = match (hy_phi1(&delta, &x), hy_phi2(&delta, l, &x)) {
                    (Ok(p1), Ok(p2)) => (p1, p2),
                    (e1, e2) => return fail(format!("evaluation failed: {e1:?} {e2:?}")),
                };
                if p2 >= p1 {
                    return fail(format!("phi2 >= phi1 at delta={delta}, x={x}, L={l}"));
                }
                grid += 1;
            }
        }
    }
    for l in 2..=50u32 {
        let b = beta2(l);
        if b >= f64::from(l - 1) / f64::from(l + 1) {
            return fail(format!("beta2({l}) = {b} too large"));
        }
    }
    pass(format!(
        "threshold {generic:.9}, P1 tau_D {p1_tau:.9}, P2 (7/10, 1/5), {grid} grid points with phi2 < phi1"
    ))
}

fn all_codes_distance_at_least(codes: impl IntoIterator<Item = Result<Code, Error>>, floor: usize) -> Result<usize, String> {
    let mut checked = 0;
    for code in codes {
        let code = code.map_err(|e| e.to_string())?;
        match min_levenshtein_distance(&code) {
            Ok(d) if d >= floor => checked += 1,
            Ok(d) => {
                return Err(format!(
                    "q={} n={} size {} has distance {d} < {floor}",
                    code.q(),
                    code.length(),
                    code.size()
                ))
            }
            // a single codeword has no pairs to violate anything
            Err(Error::SingletonCode) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(checked)
}

fn code_distances() -> Partial {
    let vt = (1..=10usize).flat_map(|n| (0..=n).map(move |a| vt_binary(n, a)));
    let vt = match all_codes_distance_at_least(vt, 4) {
        Ok(c) => c,
        Err(e) => return fail(format!("binary VT: {e}")),
    };
    let vtq = (2..=6usize).flat_map(|n| (0..n).flat_map(move |a| (0..3usize).map(move |b| vt_qary(n, 3, a, b))));
    let vtq = match all_codes_distance_at_least(vtq, 4) {
        Ok(c) => c,
        Err(e) => return fail(format!("ternary VT: {e}")),
    };
    let mut hb_codes = Vec::new();
    for n in 3..=8usize {
        let m = crate::codes::HelbergWeights::new(2, 2, n + 1).get(n + 1);
        let m: u64 = match m.try_into() {
            Ok(m) => m,
            Err(_) => return fail("Helberg modulus overflow"),
        };
        hb_codes.extend((0..m).map(|a| helberg(2, n, 2, a, None)));
    }
    let hb = match all_codes_distance_at_least(hb_codes, 6) {
        Ok(c) => c,
        Err(e) => return fail(format!("Helberg: {e}")),
    };
    let onset = match first_vt_length_with_distance_four(10) {
        Ok(Some(n)) => format!("; distance exactly 4 first at n={n}"),
        _ => String::new(),
    };
    pass(format!("{vt} binary VT, {vtq} ternary VT, {hb} Helberg codes{onset}"))
}

/// Distinct random words, sorted.
pub fn random_binary_code(rng: &mut ChaCha8Rng, n: usize, size: usize) -> Code {
    assert!(size <= 1 << n);
    let mut words = BTreeSet::new();
    while words.len() < size {
        let symbols: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        words.insert(symbols);
    }
    let words = words.into_iter().map(|s| Word::new(s, 2).expect("binary")).collect();
    Code::new(2, n, words).expect("distinct words")
}

/// The code/list-size pairs the bound is checked against.
pub fn theorem_cases(seed: u64) -> Vec<(String, Code, u32)> {
    let mut cases = Vec::new();
    for n in [6, 8] {
        for l in [2, 3] {
            cases.push((format!("VT_0({n})"), vt_binary(n, 0).expect("valid"), l));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..50 {
        let n = [5, 6, 7][rng.gen_range(0..3)];
        let size = rng.gen_range(4..=16);
        let l = [2, 3][rng.gen_range(0..2)];
        cases.push((format!("random #{i} (n={n}, size {size})"), random_binary_code(&mut rng, n, size), l));
    }
    cases
}

fn theorem_harness(config: &RegressionConfig) -> Partial {
    let mut pairs = 0;
    let mut skipped = 0;
    let mut nontrivial = 0;
    for (label, code, l) in theorem_cases(config.seed) {
        let report = match check_main_theorem(&code, l as usize, config.cap) {
            Ok(r) => r,
            Err(e) => return fail(format!("{label}, L={l}: {e}")),
        };
        if let Some(v) = report.violations.first() {
            return fail(format!(
                "{label}, L={l}: violation at t_i={}, t_d={}, witness {:?}",
                v.insertions, v.deletions, v.witness
            ));
        }
        pairs += report.checked;
        skipped += report.skipped.len();
        if report.region.iter().any(|&(t_i, _)| t_i > 0) {
            nontrivial += 1;
        }
    }
    let detail = format!(
        "54 codes, {pairs} radius pairs verified, {skipped} skipped by cap, {nontrivial} codes with insertions allowed"
    );
    if skipped > 0 {
        Partial {
            status: Status::Skipped,
            detail,
        }
    } else {
        pass(detail)
    }
}

fn words_up_to(q: u16, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|len| Word::all_of_length(q, len)).collect()
}

fn containment() -> Partial {
    let words = words_up_to(2, 3);
    let radii: Vec<(usize, usize)> = (0..=2).flat_map(|i| (0..=2).map(move |d| (i, d))).collect();
    let report = check_ball_containment(&words, &radii);
    match report.failures.first() {
        Some((y, t_i, t_d, z)) => fail(format!("y={y}, radii ({t_i},{t_d}): {z} escapes")),
        None => pass(format!("{} (word, radii) cases", report.checked)),
    }
}

fn direction() -> Partial {
    let mut cases = 0;
    for c in words_up_to(2, 4) {
        for t_i in 0..=2 {
            for t_d in 0..=2.min(c.len()) {
                match direction_equivalence_holds(&c, t_i, t_d) {
                    Ok(true) => cases += 1,
                    Ok(false) => return fail(format!("c={c}, t_i={t_i}, t_d={t_d}")),
                    Err(e) => return fail(e.to_string()),
                }
            }
        }
    }
    pass(format!("{cases} (codeword, radii) cases"))
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(|pool| pool.install(f))
        .map_err(|e| e.to_string())
}

/// Everything whose bytes must not depend on scheduling.
fn deterministic_artifacts(seed: u64, cap: u128) -> Vec<String> {
    let mut out = Vec::new();
    for spec in [FigureSpec::fig1_default(), FigureSpec::fig2_default(), FigureSpec::fig3_default()] {
        out.push(emit_figure(&spec, crate::figures::DEFAULT_POINTS).unwrap_or_else(|e| e.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense = random_binary_code(&mut rng, 7, 40);
    for (t_i, t_d, l) in [(1, 1, 2), (2, 1, 3), (1, 0, 1)] {
        out.push(format!("{:?}", list_decodable(&dense, t_i, t_d, l)));
    }
    for (_, code, l) in theorem_cases(seed).into_iter().take(8) {
        out.push(format!("{:?}", check_main_theorem(&code, l as usize, cap)));
    }
    out
}

fn determinism(config: &RegressionConfig) -> Partial {
    let single = match in_pool(1, || deterministic_artifacts(config.seed, config.cap)) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let again = match in_pool(1, || deterministic_artifacts(config.seed, config.cap)) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let many = match in_pool(config.workers, || deterministic_artifacts(config.seed, config.cap)) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    if single != again {
        return fail("two single-thread runs differ");
    }
    if let Some(i) = (0..single.len()).find(|&i| single[i] != many[i]) {
        return fail(format!("artifact {i} differs between 1 and {} threads", config.workers));
    }
    let bytes: usize = single.iter().map(String::len).sum();
    pass(format!("{} artifacts ({bytes} bytes) identical across runs and 1 vs {} threads", single.len(), config.workers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_checks_pass() {
        let config = RegressionConfig::default();
        for id in [1, 2, 3, 4, 6, 9] {
            let outcome = run_check(id, &config);
            assert_eq!(outcome.status, Status::Pass, "{outcome}");
        }
    }

    #[test]
    fn corrupted_coefficient_is_named() {
        let config = RegressionConfig {
            fault: Some(Fault::PhiCoefficient { list_size: 6, r: 2, j: 3 }),
            ..RegressionConfig::default()
        };
        let outcome = run_check(4, &config);
        assert_eq!(outcome.status, Status::Fail);
        assert!(outcome.detail.contains("L=6") && outcome.detail.contains("j=3"), "{}", outcome.detail);

        let config = RegressionConfig {
            fault: Some(Fault::PhiCoefficient { list_size: 8, r: 3, j: 6 }),
            ..RegressionConfig::default()
        };
        let outcome = run_check(4, &config);
        assert_eq!(outcome.status, Status::Fail);
        assert!(outcome.detail.contains("closed form"), "{}", outcome.detail);
    }

    #[test]
    fn theorem_cases_are_seeded() {
        let a: Vec<_> = theorem_cases(7).into_iter().map(|(_, c, l)| (c, l)).collect();
        let b: Vec<_> = theorem_cases(7).into_iter().map(|(_, c, l)| (c, l)).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 54);
        assert!(a[4..].iter().all(|(c, l)| (4..=16).contains(&c.size())
            && [5, 6, 7].contains(&c.length())
            && [2, 3].contains(l)));
    }

    #[test]
    fn outcome_line_mentions_status() {
        let outcome = run_check(3, &RegressionConfig::default());
        let line = outcome.to_string();
        assert!(line.starts_with("[ 3] PASS"), "{line}");
    }
}
