//! Code families against direct congruence/Hamming oracles, and the
//! list-decoding bound on codes with more distance than the acceptance set.

use std::collections::BTreeMap;

use insdel_core::codes::{
    helberg, rs_code, rs_search_eval_points, vt_binary, vt_qary, HelbergWeights, PrimeField,
};
use insdel_core::verify::{
    check_main_theorem, check_unique_vs_list, direction_equivalence_holds, min_levenshtein_distance,
    DEFAULT_OUTPUT_CAP,
};
use insdel_core::{Code, Word};

fn hamming(a: &Word, b: &Word) -> usize {
    a.symbols().iter().zip(b.symbols()).filter(|(x, y)| x != y).count()
}

fn min_hamming(code: &Code) -> usize {
    let cw = code.codewords();
    let mut best = usize::MAX;
    for i in 0..cw.len() {
        for b in &cw[i + 1..] {
            best = best.min(hamming(&cw[i], b));
        }
    }
    best
}

#[test]
fn binary_vt_matches_congruence_and_partitions() {
    for n in 1..=9usize {
        let mut owner = BTreeMap::new();
        for a in 0..=n {
            for c in vt_binary(n, a).unwrap().codewords() {
                let syndrome: usize = c.symbols().iter().enumerate().map(|(i, &x)| (i + 1) * x as usize).sum();
                assert_eq!(syndrome % (n + 1), a);
                assert!(owner.insert(c.clone(), a).is_none());
            }
        }
        assert_eq!(owner.len(), 1 << n);
    }
}

#[test]
fn ternary_vt_partitions_space() {
    for n in 2..=5usize {
        let mut total = 0;
        for a in 0..n {
            for b in 0..3 {
                let code = vt_qary(n, 3, a, b).map(|c| c.size()).unwrap_or(0);
                total += code;
            }
        }
        assert_eq!(total, 3usize.pow(n as u32));
    }
}

#[test]
fn constant_words_in_qary_vt() {
    // a constant word has every ascent indicator set, so its first syndrome is
    // 1 + 2 + ... + (n - 1)
    let (n, q) = (4usize, 3u16);
    for c in 0..q as u8 {
        let w = Word::new(vec![c; n], q).unwrap();
        let a = (n * (n - 1) / 2) % n;
        let b = (n * c as usize) % q as usize;
        assert!(vt_qary(n, q, a, b).unwrap().contains(&w));
    }
}

#[test]
fn ternary_helberg_distance() {
    for n in 3..=5usize {
        let m: u64 = HelbergWeights::new(3, 2, n + 1).get(n + 1).try_into().unwrap();
        for a in 0..m {
            let code = helberg(3, n, 2, a, None).unwrap();
            if code.size() >= 2 {
                assert!(min_levenshtein_distance(&code).unwrap() >= 6, "n={n} a={a}");
            }
        }
    }
}

#[test]
fn helberg_corrects_two_insdels() {
    let code = helberg(2, 5, 2, 0, None).unwrap();
    let report = check_unique_vs_list(&code).unwrap();
    assert!(report.all_decodable);
    assert_eq!(report.radius, 2);
}

#[test]
fn reed_solomon_is_mds() {
    for (p, n, k) in [(5u32, 4usize, 2usize), (5, 5, 3), (7, 5, 2), (7, 6, 3), (3, 3, 1)] {
        let field = PrimeField::new(p).unwrap();
        let code = rs_code(field, k, (0..n as u32).collect()).unwrap();
        assert_eq!(code.size(), (p as usize).pow(k as u32));
        assert_eq!(min_hamming(&code), n - k + 1, "p={p} n={n} k={k}");
    }
}

#[test]
fn reed_solomon_search_regression() {
    let field = PrimeField::new(7).unwrap();
    let report = rs_search_eval_points(field, 4, 1, 100_000, 3).unwrap();
    assert_eq!(report.achieved_distance, 8);
    assert!(report.met && report.exhaustive);

    let report = rs_search_eval_points(PrimeField::new(7).unwrap(), 4, 2, 100_000, 3).unwrap();
    assert!(report.exhaustive);
    assert_eq!(report.target, 4);
    let code = rs_code(PrimeField::new(7).unwrap(), 2, report.best_alpha.clone()).unwrap();
    assert_eq!(min_levenshtein_distance(&code).unwrap(), report.achieved_distance);
}

#[test]
fn bound_holds_on_helberg_codes() {
    for a in 0..88 {
        let code = helberg(2, 8, 2, a, None).unwrap();
        if code.size() < 2 {
            continue;
        }
        for l in [2, 3] {
            let report = check_main_theorem(&code, l, DEFAULT_OUTPUT_CAP).unwrap();
            assert!(report.holds(), "a={a} L={l}: {:?}", report.violations);
            assert!(report.skipped.is_empty());
        }
    }
}

#[test]
fn bound_holds_on_repetition_codes() {
    // constant words share no symbols, so the relative distance is one and the
    // region is as large as it gets
    let code = rs_code(PrimeField::new(5).unwrap(), 1, vec![0, 1, 2]).unwrap();
    for l in [2, 3] {
        let report = check_main_theorem(&code, l, DEFAULT_OUTPUT_CAP).unwrap();
        assert_eq!(report.delta, "1");
        assert!(report.region.iter().any(|&(t_i, _)| t_i >= 3));
        assert!(report.holds(), "L={l}: {:?}", report.violations);
    }
}

#[test]
fn bound_holds_on_searched_reed_solomon() {
    let field = PrimeField::new(5).unwrap();
    let found = rs_search_eval_points(field, 4, 2, 10_000, 11).unwrap();
    let code = rs_code(PrimeField::new(5).unwrap(), 2, found.best_alpha).unwrap();
    for l in [2, 3] {
        let report = check_main_theorem(&code, l, DEFAULT_OUTPUT_CAP).unwrap();
        assert!(report.holds(), "L={l}");
        assert!(report.checked > 0);
    }
}

#[test]
fn direction_equivalence_ternary() {
    for len in 0..=2 {
        for c in Word::all_of_length(3, len) {
            for t_i in 0..=2 {
                for t_d in 0..=len.min(2) {
                    assert!(direction_equivalence_holds(&c, t_i, t_d).unwrap(), "{c} {t_i} {t_d}");
                }
            }
        }
    }
}
