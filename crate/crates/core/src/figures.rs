//! CSV data behind the three standard plots: the bound comparison, the
//! family of piecewise curves, and the Reed-Solomon decodable region.
//!
//! Output depends only on the inputs; floats use Rust's shortest round-trip
//! formatting so the bytes are stable across runs and thread counts.

use std::fmt::Write as _;

use num_traits::One;

use crate::bounds::{bound_curve, comparison_report, phi1_f64, phi2_f64, rho, rho_piecewise};
use crate::error::{invalid, Result};
use crate::rational::{rat, to_f64, Rational};

pub const DEFAULT_POINTS: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FigureSpec {
    /// `rho`, both quadratics and the unique line against `tau_D`, with the
    /// `P1`/`P2` landmarks appended as marked rows.
    Comparison { delta: Rational, list_size: u32 },
    /// `rho` on `[1 - delta, 1]` for several list sizes.
    Curves { delta: Rational, list_sizes: Vec<u32> },
    /// Decodable `(tau_D, tau_I)` boundary for Reed-Solomon codes of each
    /// rate `R`, using relative distance `1 - 2R`.
    RsRegion { list_size: u32, rates: Vec<Rational> },
}

impl FigureSpec {
    pub fn fig1_default() -> Self {
        Self::Comparison {
            delta: rat(9, 10),
            list_size: 2,
        }
    }

    pub fn fig2_default() -> Self {
        Self::Curves {
            delta: rat(9, 10),
            list_sizes: (2..=10).collect(),
        }
    }

    pub fn fig3_default() -> Self {
        Self::RsRegion {
            list_size: 25,
            rates: (1..=4).map(|k| rat(k, 10)).collect(),
        }
    }
}

pub fn emit_figure(spec: &FigureSpec, points: usize) -> Result<String> {
    if points < 2 {
        return Err(invalid("need at least two grid points"));
    }
    match spec {
        FigureSpec::Comparison { delta, list_size } => comparison_csv(delta, *list_size, points),
        FigureSpec::Curves { delta, list_sizes } => curves_csv(delta, list_sizes, points),
        FigureSpec::RsRegion { list_size, rates } => rs_region_csv(*list_size, rates, points),
    }
}

fn comparison_csv(delta: &Rational, list_size: u32, points: usize) -> Result<String> {
    let mut out = String::from("tau_d,rho,phi1,phi2,unique,marker\n");
    for p in bound_curve(delta, list_size, points, None)? {
        writeln!(out, "{},{},{},{},{},", p.tau_d, p.rho, p.phi1, p.phi2, p.unique).unwrap();
    }
    let report = comparison_report(delta, list_size)?;
    let bound = rho_piecewise(delta, list_size)?;
    let d = to_f64(delta);
    for (name, point) in [("P1", report.p1), ("P2", report.p2)] {
        if let Some((tau_d, _)) = point {
            let x = 1.0 - tau_d;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                tau_d,
                bound.eval_f64(x),
                phi1_f64(d, x),
                phi2_f64(d, list_size, x),
                d - tau_d,
                name
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn curves_csv(delta: &Rational, list_sizes: &[u32], points: usize) -> Result<String> {
    if list_sizes.is_empty() {
        return Err(invalid("need at least one list size"));
    }
    let mut out = String::from("x");
    for l in list_sizes {
        write!(out, ",rho_L{l}").unwrap();
    }
    out.push('\n');
    let lo = Rational::one() - delta;
    let steps = (points - 1) as i64;
    for i in 0..=steps {
        let x = &lo + delta * rat(i, steps);
        write!(out, "{}", to_f64(&x)).unwrap();
        for &l in list_sizes {
            write!(out, ",{}", to_f64(&rho(delta, l, &x)?)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

fn rs_region_csv(list_size: u32, rates: &[Rational], points: usize) -> Result<String> {
    if rates.is_empty() {
        return Err(invalid("need at least one rate"));
    }
    let half = rat(1, 2);
    let mut out = String::from("rate,delta,tau_d,tau_i_max\n");
    for rate in rates {
        if *rate <= Rational::from_integer(0.into()) || *rate >= half {
            return Err(invalid(format!("rate {rate} must lie in (0, 1/2)")));
        }
        let delta = Rational::one() - rate * rat(2, 1);
        // tau_D ranges over [0, delta), the strict side of the hypothesis
        let steps = points as i64;
        for i in 0..steps {
            let tau = &delta * rat(i, steps);
            let value = rho(&delta, list_size, &(Rational::one() - &tau))?;
            writeln!(
                out,
                "{},{},{},{}",
                to_f64(rate),
                to_f64(&delta),
                to_f64(&tau),
                to_f64(&value)
            )
            .unwrap();
        }
    }
    Ok(out)
}
