use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use insdel_core::bounds::{rho, rho_piecewise};
use insdel_core::codes::{helberg, vt_binary};
use insdel_core::combinatorics::{count_v_covers, phi_coefficients};
use insdel_core::rational::rat;
use insdel_core::verify::{list_decodable, min_levenshtein_distance};
use insdel_core::words::{insdel_ball, lcs_length};
use insdel_core::Word;

fn word(len: usize, q: u16, seed: u64) -> Word {
    let mut state = seed;
    let symbols = (0..len)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % u64::from(q)) as u8
        })
        .collect();
    Word::new(symbols, q).unwrap()
}

fn words(c: &mut Criterion) {
    let mut group = c.benchmark_group("lcs");
    for len in [16, 64, 256] {
        let (a, b) = (word(len, 4, 1), word(len, 4, 2));
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |bch, _| {
            bch.iter(|| lcs_length(black_box(&a), black_box(&b)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("insdel_ball");
    for (len, t_i, t_d) in [(8, 1, 1), (8, 2, 2), (12, 2, 1)] {
        let x = word(len, 2, 3);
        group.bench_function(format!("n{len}_i{t_i}_d{t_d}"), |bch| {
            bch.iter(|| insdel_ball(black_box(&x), t_i, t_d).unwrap().len())
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let vt = vt_binary(8, 0).unwrap();
    let hb = helberg(2, 8, 2, 0, None).unwrap();
    c.bench_function("min_distance_vt8", |bch| bch.iter(|| min_levenshtein_distance(black_box(&vt)).unwrap()));
    c.bench_function("list_decodable_vt8_1_1_L2", |bch| {
        bch.iter(|| list_decodable(black_box(&vt), 1, 1, 2).unwrap().decodable)
    });
    c.bench_function("list_decodable_helberg8_2_1_L2", |bch| {
        bch.iter(|| list_decodable(black_box(&hb), 2, 1, 2).unwrap().decodable)
    });
}

fn bounds(c: &mut Criterion) {
    let delta = rat(9, 10);
    let x = rat(37, 40);
    let mut group = c.benchmark_group("rho");
    for l in [2u32, 8, 32] {
        group.bench_with_input(BenchmarkId::new("max", l), &l, |bch, &l| {
            bch.iter(|| rho(black_box(&delta), l, black_box(&x)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("piecewise", l), &l, |bch, &l| {
            bch.iter(|| rho_piecewise(black_box(&delta), l).unwrap().eval(&x).unwrap())
        });
    }
    group.finish();

    c.bench_function("count_v_covers_12_3_5", |bch| bch.iter(|| count_v_covers(black_box(12), 3, 5)));
    c.bench_function("phi_row_L20_r7", |bch| bch.iter(|| phi_coefficients(black_box(20), 7).unwrap()));
}

criterion_group!(benches, words, verify, bounds);
criterion_main!(benches);
