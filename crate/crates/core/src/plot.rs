//! CSV plot data: a planar cross-section of the cone and the threshold pencil.
//!
//! The slice through the polarization `L` spanned by two basis vectors is
//! `{ L + x'·e_i + y'·e_j }`. Boundary rows are found by walking rays out of
//! `L` at evenly spaced angles until the first constraint vanishes; pencil
//! rows sample `s·L − K` on a rational grid around `t⁻`. Floating point is
//! only used for display coordinates; pencil feasibility is exact.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rat};
use crate::singularity::ConeSingularity;
use crate::surface::ConeModel;
use crate::threshold::{ThresholdProblem, feasible_at};

pub const HEADER: &str = "s,x,y,feasible";

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn bilinear(form: &[Vec<i64>], x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in form.iter().enumerate() {
        for (j, &f) in row.iter().enumerate() {
            acc += f as f64 * x[i] * y[j];
        }
    }
    acc
}

/// Smallest positive `r` where `c0 + c1·r + c2·r²` turns negative, given `c0 > 0`.
fn exit_root(c0: f64, c1: f64, c2: f64) -> Option<f64> {
    if c2.abs() < 1e-300 {
        return (c1 < 0.0).then(|| -c0 / c1);
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // numerically stable pair of roots
    let qv = -0.5 * (c1 + c1.signum() * sq);
    let mut roots = [qv / c2, if qv != 0.0 { c0 / qv } else { f64::INFINITY }];
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.into_iter().find(|&r| r > 0.0 && r.is_finite())
}

pub fn plot_data(c: &ConeSingularity, plane: (usize, usize), samples: usize) -> Result<String> {
    let surf = c.surface();
    let rank = surf.rank();
    let (i, j) = plane;
    if i >= rank || j >= rank || i == j {
        return Err(Error::InvalidArgument(format!(
            "plane ({i}, {j}) must name two distinct basis indices below {rank}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let form = surf.lattice().form();
    let centre: Vec<f64> = surf.polarization().coords.iter().map(to_f64).collect();

    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");

    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let mut dir = vec![0.0; rank];
        dir[i] = theta.cos();
        dir[j] = theta.sin();
        let exits: Vec<Option<f64>> = match surf.cone() {
            ConeModel::Quadratic { ample_selector } => {
                let h: Vec<f64> = ample_selector.coords.iter().map(to_f64).collect();
                vec![
                    exit_root(
                        bilinear(form, &centre, &centre),
                        2.0 * bilinear(form, &centre, &dir),
                        bilinear(form, &dir, &dir),
                    ),
                    exit_root(bilinear(form, &centre, &h), bilinear(form, &dir, &h), 0.0),
                ]
            }
            ConeModel::Polyhedral { inequalities } => inequalities
                .iter()
                .map(|l| {
                    let lf: Vec<f64> = l.iter().map(|&w| w as f64).collect();
                    let dot = |v: &[f64]| lf.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
                    exit_root(dot(&centre), dot(&dir), 0.0)
                })
                .collect(),
        };
        let Some(r) = exits.into_iter().flatten().reduce(f64::min) else {
            continue;
        };
        let _ = writeln!(
            out,
            "{:.12},{:.12},{:.12},boundary",
            theta,
            centre[i] + r * dir[i],
            centre[j] + r * dir[j]
        );
    }

    let problem = ThresholdProblem::new(
        surf.clone(),
        surf.polarization().clone(),
        surf.canonical_class().neg(),
    )?;
    let t = c.threshold_minus()?.t;
    let lo = Rat::from_integer(t.floor() - 1);
    let span = Rat::from_integer(BigInt::from(3));
    for k in 0..=samples {
        let s = &lo + &span * Rat::new(BigInt::from(k), BigInt::from(samples));
        let feasible = feasible_at(&problem, &QuadNum::rational(s.clone()))?;
        let point: Vec<Rat> = problem
            .direction()
            .coords
            .iter()
            .zip(&problem.offset().coords)
            .map(|(d, b)| &s * d + b)
            .collect();
        let _ = writeln!(
            out,
            "{:.12},{:.12},{:.12},{}",
            to_f64(&s),
            to_f64(&point[i]),
            to_f64(&point[j]),
            feasible
        );
    }
    Ok(out)
}
