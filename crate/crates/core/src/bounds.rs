//! The list-decoding lower bound `rho`, the competing quadratic (HY) bound,
//! the unique-decoding line, and where each one wins.
//!
//! `rho(delta, L, x) = max_{r=1..L} ((2L-r+1)/(L+1)) x - (L/r)(1-delta)` on
//! `x in [1-delta, 1]`, with `x = 1 - tau_D`. A code of relative distance
//! `delta` is list-decodable with list size `L` whenever `tau_D < delta` and
//! `tau_I < rho(delta, L, 1 - tau_D)`.
//!
//! Exact evaluation uses [`Rational`]; anything involving square roots
//! (thresholds, crossing points) is computed in `f64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{floor, int, rat, to_f64, Rational};

/// Tolerance documented for every square-root quantity in this module.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn check_list_size(list_size: u32) -> Result<()> {
    if list_size < 2 {
        return Err(domain(format!("list size must be >= 2, got {list_size}")));
    }
    Ok(())
}

fn check_open_delta(delta: &Rational) -> Result<()> {
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(())
}

/// Slope and intercept of the `r`-th linear candidate.
fn candidate(delta: &Rational, list_size: u32, r: u32) -> (Rational, Rational) {
    let l = i64::from(list_size);
    let r = i64::from(r);
    let slope = rat(2 * l - r + 1, l + 1);
    let intercept = -(rat(l, r) * (Rational::one() - delta));
    (slope, intercept)
}

/// The max-of-lines form. Accepts `delta = 1` as well, since codes whose
/// words share no symbols have relative distance exactly one.
pub fn rho(delta: &Rational, list_size: u32, x: &Rational) -> Result<Rational> {
    check_list_size(list_size)?;
    if !delta.is_positive() || *delta > Rational::one() {
        return Err(domain(format!("delta must lie in (0, 1], got {delta}")));
    }
    let lower = Rational::one() - delta;
    if *x < lower || *x > Rational::one() {
        return Err(domain(format!("x = {x} outside [{lower}, 1]")));
    }
    // Every candidate over the common denominator (L+1) * den(x) * den(1-delta)
    // * lcm(1..L), so the max is taken on integers and reduced once.
    let l = i64::from(list_size);
    let lcm = (1..=l).fold(BigInt::one(), |acc, r| acc.lcm(&BigInt::from(r)));
    let (a, b) = (x.numer(), x.denom());
    let (c, d) = (lower.numer(), lower.denom());
    let slope_part = a * d * &lcm;
    let intercept_part = c * b * BigInt::from(l * (l + 1));
    let best = (1..=l)
        .map(|r| &slope_part * (2 * l - r + 1) - &intercept_part * (&lcm / r))
        .max()
        .expect("list_size >= 2");
    Ok(Rational::new(best, BigInt::from(l + 1) * b * d * lcm))
}

/// One linear piece of `rho`, active on `(lower, upper]` (closed at the
/// left end for the first piece).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPiece {
    pub r: u32,
    pub lower: Rational,
    pub upper: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

impl LinearPiece {
    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

/// `rho` as explicit breakpoints and pieces, ordered by increasing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseBound {
    pub delta: Rational,
    pub list_size: u32,
    pub r_min: u32,
    pub pieces: Vec<LinearPiece>,
}

/// Where the `r`-th and `(r+1)`-th candidates cross:
/// `L(L+1) / (r(r+1)) * (1 - delta)`.
pub fn turning_point(delta: &Rational, list_size: u32, r: u32) -> Rational {
    let l = i64::from(list_size);
    let r = i64::from(r);
    rat(l * (l + 1), r * (r + 1)) * (Rational::one() - delta)
}

/// Smallest `r` whose turning point falls strictly below `x = 1`.
pub fn r_min(delta: &Rational, list_size: u32) -> u32 {
    (1..=list_size)
        .find(|&r| turning_point(delta, list_size, r) < Rational::one())
        .unwrap_or(list_size)
}

pub fn rho_piecewise(delta: &Rational, list_size: u32) -> Result<PiecewiseBound> {
    check_list_size(list_size)?;
    check_open_delta(delta)?;
    let r_min = r_min(delta, list_size);
    let pieces = (r_min..=list_size)
        .rev()
        .map(|r| {
            let lower = if r == list_size {
                Rational::one() - delta
            } else {
                turning_point(delta, list_size, r)
            };
            let upper = if r == r_min {
                Rational::one()
            } else {
                turning_point(delta, list_size, r - 1)
            };
            let (slope, intercept) = candidate(delta, list_size, r);
            LinearPiece {
                r,
                lower,
                upper,
                slope,
                intercept,
            }
        })
        .collect();
    Ok(PiecewiseBound {
        delta: delta.clone(),
        list_size,
        r_min,
        pieces,
    })
}

impl PiecewiseBound {
    pub fn piece_at(&self, x: &Rational) -> Result<&LinearPiece> {
        let first = &self.pieces[0];
        if *x == first.lower {
            return Ok(first);
        }
        self.pieces
            .iter()
            .find(|p| p.lower < *x && *x <= p.upper)
            .ok_or_else(|| domain(format!("x = {x} outside [{}, 1]", first.lower)))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        Ok(self.piece_at(x)?.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let piece = self
            .pieces
            .iter()
            .find(|p| x <= to_f64(&p.upper))
            .unwrap_or_else(|| self.pieces.last().expect("at least one piece"));
        to_f64(&piece.slope) * x + to_f64(&piece.intercept)
    }

    /// Checks that the pieces tile `[1 - delta, 1]` and join continuously.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let expected = (self.list_size - self.r_min + 1) as usize;
        if self.pieces.len() != expected {
            return Err(format!("{} pieces, expected {expected}", self.pieces.len()));
        }
        if self.pieces[0].lower != Rational::one() - &self.delta {
            return Err("first piece does not start at 1 - delta".into());
        }
        if self.pieces.last().map(|p| &p.upper) != Some(&Rational::one()) {
            return Err("last piece does not end at 1".into());
        }
        for pair in self.pieces.windows(2) {
            if pair[0].upper != pair[1].lower {
                return Err(format!("gap between pieces r={} and r={}", pair[0].r, pair[1].r));
            }
            if pair[0].eval(&pair[0].upper) != pair[1].eval(&pair[1].lower) {
                return Err(format!("discontinuity at x = {}", pair[0].upper));
            }
        }
        for p in &self.pieces {
            if p.lower >= p.upper {
                return Err(format!("empty piece r={}", p.r));
            }
        }
        Ok(())
    }
}

/// The half-distance line `tau_I < delta - tau_D`.
pub fn unique_decoding_limit(delta: &Rational, tau_d: &Rational) -> Result<Rational> {
    if tau_d.is_negative() || tau_d >= delta {
        return Err(domain(format!("need 0 <= tau_D < delta, got tau_D = {tau_d}, delta = {delta}")));
    }
    Ok(delta - tau_d)
}

/// `x^2 / (1 - delta) - x`.
pub fn hy_phi1(delta: &Rational, x: &Rational) -> Result<Rational> {
    check_open_delta(delta)?;
    Ok(x * x / (Rational::one() - delta) - x)
}

/// `((L+1)x^2 - (L+1)(1-delta)x + (1-delta) - 1) / (L(1-delta) + 1)`.
pub fn hy_phi2(delta: &Rational, list_size: u32, x: &Rational) -> Result<Rational> {
    check_open_delta(delta)?;
    check_list_size(list_size)?;
    let e = Rational::one() - delta;
    let l = int(list_size.into());
    let l1 = &l + Rational::one();
    let numer = &l1 * x * x - &l1 * &e * x + &e - Rational::one();
    Ok(numer / (l * &e + Rational::one()))
}

/// List size guaranteed by the quadratic bound, or `None` when `tau_I` is
/// outside the region where it applies.
pub fn hy_list_size(delta: &Rational, tau_i: &Rational, tau_d: &Rational) -> Result<Option<BigInt>> {
    check_open_delta(delta)?;
    if *tau_d >= Rational::one() {
        return Err(domain(format!("need tau_D < 1, got {tau_d}")));
    }
    let e = Rational::one() - delta;
    let room = (delta - tau_d) * (Rational::one() - tau_d);
    if *tau_i >= &room / &e {
        return Ok(None);
    }
    let denom = room - e * tau_i;
    Ok(Some(floor(&(delta * (Rational::one() + tau_i) / denom))))
}

/// `x = (L+1)/(L-1) (1-delta)`: beyond this point `rho` beats unique decoding.
pub fn unique_breakpoint(delta: &Rational, list_size: u32) -> Rational {
    let l = i64::from(list_size);
    rat(l + 1, l - 1) * (Rational::one() - delta)
}

/// Positive root of `(6L+2)e^2 + (L^2-4L+3)e - (L-1)^2 = 0`.
pub fn beta2(list_size: u32) -> f64 {
    let l = f64::from(list_size);
    (l - 1.0) / (4.0 * (3.0 * l + 1.0)) * (-(l - 3.0) + (l * l + 18.0 * l + 17.0).sqrt())
}

/// `1 - beta2` in closed form.
pub fn delta1_closed_form(list_size: u32) -> f64 {
    let l = f64::from(list_size);
    (l * l + 8.0 * l + 7.0 - (l - 1.0) * (l * l + 18.0 * l + 17.0).sqrt()) / (4.0 * (3.0 * l + 1.0))
}

/// Threshold above which `rho` beats the quadratic bound somewhere:
/// `max(2/(L+1), 1 - beta2)`.
pub fn delta1(list_size: u32) -> f64 {
    (2.0 / (f64::from(list_size) + 1.0)).max(1.0 - beta2(list_size))
}

/// Upper end of the winning `x` range for `L = 2`:
/// `(17e + 4 + sqrt(-143e^2 - 188e + 124)) / 18` with `e = 1 - delta`.
pub fn list2_crossing(delta: f64) -> f64 {
    let e = 1.0 - delta;
    (17.0 * e + 4.0 + (-143.0 * e * e - 188.0 * e + 124.0).sqrt()) / 18.0
}

pub(crate) fn phi2_f64(delta: f64, list_size: u32, x: f64) -> f64 {
    let e = 1.0 - delta;
    let l = f64::from(list_size);
    ((l + 1.0) * x * x - (l + 1.0) * e * x + e - 1.0) / (l * e + 1.0)
}

pub(crate) fn phi1_f64(delta: f64, x: f64) -> f64 {
    x * x / (1.0 - delta) - x
}

/// Where `rho` beats the quadratic bound for fixed `(delta, L)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub delta: f64,
    pub list_size: u32,
    pub delta1: f64,
    pub beta2: f64,
    /// Open interval of `tau_D` where `rho` is strictly larger than both
    /// quadratics. Its lower end is `0` when no crossing occurs before `x = 1`.
    pub interval: Option<(f64, f64)>,
    /// Crossing of `rho` and `phi2` with the smallest `tau_D`.
    pub p1: Option<(f64, f64)>,
    /// Where `rho` leaves the unique-decoding line.
    pub p2: Option<(f64, f64)>,
    /// `p2` in exact arithmetic, as `"num/den"` strings.
    pub p2_exact: Option<(String, String)>,
    /// Every `x` in `(breakpoint, 1]` where `rho - phi2` changes sign.
    pub crossings_x: Vec<f64>,
    pub multiple_crossings: bool,
}

/// Real roots of `a x^2 + b x + c` in ascending order.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a.abs() < f64::EPSILON {
        if b.abs() < f64::EPSILON {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // numerically stable pairing
    let t = -0.5 * (b + b.signum() * sq);
    let mut roots = if t == 0.0 { vec![0.0] } else { vec![t / a, c / t] };
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

pub fn comparison_report(delta: &Rational, list_size: u32) -> Result<ComparisonReport> {
    check_open_delta(delta)?;
    check_list_size(list_size)?;
    let d = to_f64(delta);
    let threshold = delta1(list_size);
    let xb_exact = unique_breakpoint(delta, list_size);

    let (p2, p2_exact) = if xb_exact < Rational::one() {
        let tau = Rational::one() - &xb_exact;
        let value = rat(2, i64::from(list_size) - 1) * (Rational::one() - delta);
        (
            Some((to_f64(&tau), to_f64(&value))),
            Some((tau.to_string(), value.to_string())),
        )
    } else {
        (None, None)
    };

    let mut report = ComparisonReport {
        delta: d,
        list_size,
        delta1: threshold,
        beta2: beta2(list_size),
        interval: None,
        p1: None,
        p2,
        p2_exact,
        crossings_x: Vec::new(),
        multiple_crossings: false,
    };
    if d <= threshold || xb_exact >= Rational::one() {
        return Ok(report);
    }

    // Sweep the pieces right of the breakpoint, solving phi2(x) = piece(x).
    let bound = rho_piecewise(delta, list_size)?;
    let xb = to_f64(&xb_exact);
    let e = 1.0 - d;
    let l = f64::from(list_size);
    let denom = l * e + 1.0;
    let gap = |t: f64| bound.eval_f64(t) - phi2_f64(d, list_size, t);
    let mut crossings = Vec::new();
    for piece in bound.pieces.iter().filter(|p| p.upper > xb_exact) {
        let (lo, hi) = (to_f64(&piece.lower).max(xb), to_f64(&piece.upper));
        let (slope, intercept) = (to_f64(&piece.slope), to_f64(&piece.intercept));
        let roots = quadratic_roots(
            l + 1.0,
            -(l + 1.0) * e - slope * denom,
            e - 1.0 - intercept * denom,
        );
        for x in roots {
            if x > lo && x <= hi {
                let before = gap(x - 1e-7);
                // a root exactly at x = 1 has nothing to its right
                let after = if x + 1e-7 <= 1.0 { gap(x + 1e-7) } else { -before };
                if (before > 0.0) != (after > 0.0) {
                    crossings.push(x);
                }
            }
        }
    }
    crossings.sort_by(f64::total_cmp);
    crossings.dedup_by(|a, b| (*a - *b).abs() < FLOAT_TOLERANCE);
    let x_hi = crossings.first().copied().unwrap_or(1.0);
    report.interval = Some(((1.0 - x_hi).max(0.0), 1.0 - xb));
    if !crossings.is_empty() {
        report.p1 = Some((1.0 - x_hi, bound.eval_f64(x_hi)));
    }
    report.multiple_crossings = crossings.len() > 1;
    report.crossings_x = crossings;
    Ok(report)
}

/// One sample of the bound curves at `x = 1 - tau_d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub tau_d: f64,
    pub rho: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub unique: f64,
}

/// Samples every bound on an evenly spaced exact grid of `tau_D in [0, delta]`.
///
/// With `alphabet = Some(q)` the domain is clipped to `tau_D <= (q-1)/q` and
/// insertion fractions are capped at `q - 1`.
pub fn bound_curve(
    delta: &Rational,
    list_size: u32,
    points: usize,
    alphabet: Option<u16>,
) -> Result<Vec<CurvePoint>> {
    check_open_delta(delta)?;
    check_list_size(list_size)?;
    if points < 2 {
        return Err(domain("need at least two sample points"));
    }
    let mut upper = delta.clone();
    let mut cap = f64::INFINITY;
    if let Some(q) = alphabet {
        let q = i64::from(q);
        upper = upper.min(rat(q - 1, q));
        cap = (q - 1) as f64;
    }
    let d = to_f64(delta);
    let steps = (points - 1) as i64;
    (0..=steps)
        .map(|i| {
            let tau = &upper * rat(i, steps);
            let x = Rational::one() - &tau;
            let rho_value = rho(delta, list_size, &x)?;
            let xf = to_f64(&x);
            Ok(CurvePoint {
                tau_d: to_f64(&tau),
                rho: to_f64(&rho_value).min(cap),
                phi1: phi1_f64(d, xf).min(cap),
                phi2: phi2_f64(d, list_size, xf).min(cap),
                unique: (d - to_f64(&tau)).min(cap),
            })
        })
        .collect()
}

/// Largest integer `t` with `t / n < bound`, or `None` if even `t = 0` fails.
pub fn max_integer_below(bound: &Rational, n: usize) -> Option<usize> {
    if !bound.is_positive() {
        return None;
    }
    let scaled = bound * int(n as i64);
    let fl = floor(&scaled);
    let t = if Rational::from_integer(fl.clone()) == scaled { fl - 1 } else { fl };
    usize::try_from(t).ok()
}

/// Integer radius pairs `(t_i, t_d)` satisfying the list-decoding
/// hypotheses strictly, for a length-`n` code of relative distance `delta`.
pub fn hypothesis_region(delta: &Rational, list_size: u32, n: usize) -> Result<Vec<(usize, usize)>> {
    check_list_size(list_size)?;
    let mut region = Vec::new();
    for t_d in 0..n {
        let tau_d = rat(t_d as i64, n as i64);
        if tau_d >= *delta {
            break;
        }
        let bound = rho(delta, list_size, &(Rational::one() - &tau_d))?;
        if let Some(max_ti) = max_integer_below(&bound, n) {
            region.extend((0..=max_ti).map(|t_i| (t_i, t_d)));
        }
    }
    Ok(region)
}

impl ComparisonReport {
    pub fn has_interval(&self) -> bool {
        self.interval.is_some()
    }
}

/// `true` when `rho` is strictly above `phi2` at the unique breakpoint.
pub fn rho_beats_phi2_at_breakpoint(delta: &Rational, list_size: u32) -> Result<bool> {
    let xb = unique_breakpoint(delta, list_size);
    if xb > Rational::one() {
        return Ok(false);
    }
    Ok(rho(delta, list_size, &xb)? > hy_phi2(delta, list_size, &xb)?)
}
