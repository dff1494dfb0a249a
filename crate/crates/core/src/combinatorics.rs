//! Cover counting and the inclusion-exclusion coefficients behind the bound.
//!
//! A `v`-cover of size `ell` of `{1..j}` is a family of `ell` distinct
//! `v`-subsets whose union is the whole set. `A(j, ell, v)` counts them, and
//! the signed sum `A(j, v) = sum_ell (-1)^(ell-1) A(j, ell, v)` is the
//! coefficient of the `j`-fold intersection terms when the union of all
//! `v`-fold intersections is expanded by inclusion-exclusion.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{int, Rational};

/// Default limit on families examined by [`enumerate_v_covers`].
pub const DEFAULT_FAMILY_CAP: u128 = 100_000_000;

/// `C(n, k)` for a possibly huge `n`.
pub fn binomial_big(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    binomial_big(&BigInt::from(n), k)
}

fn sign(exponent: i64) -> BigInt {
    if exponent.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

type CoverKey = (u32, u32, u32);

static COVER_MEMO: LazyLock<Mutex<HashMap<CoverKey, BigInt>>> = LazyLock::new(Default::default);

/// Number of `v`-covers of size `ell` of a `j`-element set, by the
/// subtract-the-smaller-unions recursion. Zero for impossible parameters.
pub fn count_v_covers(j: u32, ell: u32, v: u32) -> BigInt {
    if j == 0 || ell == 0 || v == 0 {
        return BigInt::zero();
    }
    let subsets = binomial(j.into(), v.into());
    if BigInt::from(ell) > subsets || u64::from(ell) * u64::from(v) < u64::from(j) {
        return BigInt::zero();
    }
    let key = (j, ell, v);
    if let Some(hit) = COVER_MEMO.lock().expect("cover memo poisoned").get(&key) {
        return hit.clone();
    }
    let mut value = binomial_big(&subsets, ell.into());
    for t in 1..j {
        let sub = count_v_covers(t, ell, v);
        if !sub.is_zero() {
            value -= binomial(j.into(), t.into()) * sub;
        }
    }
    COVER_MEMO
        .lock()
        .expect("cover memo poisoned")
        .insert(key, value.clone());
    value
}

/// Brute-force oracle for [`count_v_covers`]: walks every `ell`-family of
/// `v`-subsets of `{0..j-1}` in lexicographic order and counts the covers.
pub fn enumerate_v_covers(j: u32, ell: u32, v: u32, cap: u128) -> Result<BigInt> {
    if j == 0 || ell == 0 || v == 0 {
        return Ok(BigInt::zero());
    }
    if j > 63 {
        return Err(invalid("enumeration supports j <= 63"));
    }
    let families = binomial_big(&binomial(j.into(), v.into()), ell.into());
    let estimate = families.to_u128().unwrap_or(u128::MAX);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    let full: u64 = (1u64 << j) - 1;
    let subsets: Vec<u64> = (0..j)
        .combinations(v as usize)
        .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect();
    let count = subsets
        .iter()
        .combinations(ell as usize)
        .filter(|family| family.iter().fold(0u64, |m, &&s| m | s) == full)
        .count();
    Ok(BigInt::from(count))
}

/// Closed form `A(j, v) = (-1)^(j-v) C(j-1, v-1)`; zero when `j < v`.
pub fn coefficient_a(j: u32, v: u32) -> BigInt {
    if v == 0 || j < v {
        return BigInt::zero();
    }
    sign(i64::from(j) - i64::from(v)) * binomial((j - 1).into(), (v - 1).into())
}

/// `A(j, v)` as the signed sum of cover counts.
pub fn coefficient_a_from_covers(j: u32, v: u32) -> BigInt {
    if v == 0 || j < v {
        return BigInt::zero();
    }
    let max_ell = binomial(j.into(), v.into())
        .to_u32()
        .expect("C(j, v) fits in u32 for supported j");
    (1..=max_ell)
        .map(|ell| sign(i64::from(ell) - 1) * count_v_covers(j, ell, v))
        .sum()
}

/// `sum_{t=1}^{j} (-1)^(t-v) C(j, t) C(t-1, v-1)`, which is identically one.
pub fn claim8_sum(j: u32, v: u32) -> Result<BigInt> {
    if v == 0 || j < v {
        return Err(invalid(format!("need 1 <= v <= j, got j={j} v={v}")));
    }
    Ok((1..=j)
        .map(|t| {
            sign(i64::from(t) - i64::from(v))
                * binomial(j.into(), t.into())
                * binomial((t - 1).into(), (v - 1).into())
        })
        .sum())
}

/// Weights `c_{r,u} = r + 1 - u` of the union sizes in the `r`-th linear
/// combination.
pub fn combination_weight(r: u32, u: u32) -> BigInt {
    BigInt::from(i64::from(r) + 1 - i64::from(u))
}

/// Coefficients of the `r`-th linear combination, expressed over the
/// intersection sums `Sigma_1 .. Sigma_{L+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiRow {
    pub list_size: u32,
    pub r: u32,
    /// `coefficients[j - 1]` is the coefficient of `Sigma_j`.
    #[serde(serialize_with = "serialize_rationals")]
    pub coefficients: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(
    values: &[Rational],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(|v| v.to_string()))
}

impl PhiRow {
    pub fn get(&self, j: u32) -> &Rational {
        &self.coefficients[(j - 1) as usize]
    }

    /// Checks every structural property the bound relies on. The error
    /// string names the first violated property.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let (l, r) = (self.list_size, self.r);
        if self.coefficients.len() != (l + 1) as usize {
            return Err(format!("row length {} != L+1", self.coefficients.len()));
        }
        if *self.get(1) != int(r.into()) {
            return Err(format!("phi[r={r}, j=1] = {} != r", self.get(1)));
        }
        if *self.get(2) != int(-1) {
            return Err(format!("phi[r={r}, j=2] = {} != -1", self.get(2)));
        }
        for j in 3..=(r + 1).min(l + 1) {
            if !self.get(j).is_zero() {
                return Err(format!("phi[r={r}, j={j}] = {} != 0", self.get(j)));
            }
        }
        for j in r + 2..=l + 1 {
            if r >= 2 {
                let closed = phi_closed_form(r, j).expect("r >= 2 and j >= r + 2");
                if *self.get(j) != closed {
                    return Err(format!(
                        "phi[r={r}, j={j}] = {} disagrees with closed form {closed}",
                        self.get(j)
                    ));
                }
            }
        }
        for j in r + 2..=l {
            if (j - r) % 2 == 0 {
                let (here, next) = (self.get(j), self.get(j + 1));
                if !(here.is_positive() && next.is_negative()) {
                    return Err(format!(
                        "sign pattern broken at r={r}, j={j}: {here} then {next}"
                    ));
                }
            }
        }
        if (l - r) % 2 == 1 && !self.get(l + 1).is_positive() {
            return Err(format!("phi[r={r}, j=L+1] = {} not positive", self.get(l + 1)));
        }
        Ok(())
    }
}

/// `Phi_{r,j} = sum_{u=1}^{min(r,j)} c_{r,u} (-1)^(j-u) C(j-1, u-1)` for
/// `j = 1..L+1`.
pub fn phi_coefficients(list_size: u32, r: u32) -> Result<PhiRow> {
    if list_size < 2 || r == 0 || r > list_size {
        return Err(invalid(format!(
            "phi row needs L >= 2 and 1 <= r <= L, got L={list_size} r={r}"
        )));
    }
    let coefficients = (1..=list_size + 1)
        .map(|j| {
            let value: BigInt = (1..=r.min(j))
                .map(|u| combination_weight(r, u) * coefficient_a(j, u))
                .sum();
            Rational::from_integer(value)
        })
        .collect();
    Ok(PhiRow {
        list_size,
        r,
        coefficients,
    })
}

/// `(-1)^(j-r) C(j-3, r-2) (r(j-2)/(r-1) - (j-1))`, valid for `r >= 2` and
/// `j >= r + 2`.
pub fn phi_closed_form(r: u32, j: u32) -> Option<Rational> {
    if r < 2 || j < r + 2 {
        return None;
    }
    let (rr, jj) = (i64::from(r), i64::from(j));
    let bracket = Rational::new(BigInt::from(rr * (jj - 2)), BigInt::from(rr - 1)) - int(jj - 1);
    let scale = sign(jj - rr) * binomial((j - 3).into(), (r - 2).into());
    Some(Rational::from_integer(scale) * bracket)
}

/// Both sides of the pairing constant used to show consecutive tail terms
/// sum to something non-negative:
/// `(j+1) C(j-3,r-2) (r(j-2)/(r-1)-(j-1)) - C(j-2,r-2) (r(j-1)/(r-1)-j)`
/// and `C(j-3,r-1) (j - (r-1)/(j-r-1))`. Requires `r >= 2`, `j >= r + 2`.
pub fn pairing_constant(r: u32, j: u32) -> Option<(Rational, Rational)> {
    if r < 2 || j < r + 2 {
        return None;
    }
    let (rr, jj) = (i64::from(r), i64::from(j));
    let frac = |num: i64, den: i64| Rational::new(BigInt::from(num), BigInt::from(den));
    let first = Rational::from_integer(BigInt::from(jj + 1) * binomial((j - 3).into(), (r - 2).into()))
        * (frac(rr * (jj - 2), rr - 1) - int(jj - 1));
    let second = Rational::from_integer(binomial((j - 2).into(), (r - 2).into()))
        * (frac(rr * (jj - 1), rr - 1) - int(jj));
    let lhs = first - second;
    let rhs = Rational::from_integer(binomial((j - 3).into(), (r - 1).into()))
        * (int(jj) - frac(rr - 1, jj - rr - 1));
    Some((lhs, rhs))
}
