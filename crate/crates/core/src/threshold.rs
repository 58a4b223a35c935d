//! One-parameter effectivity thresholds: `inf { s : s·D + B ∈ Eff }`.
//!
//! Every cone constraint restricted to the pencil `s ↦ s·D + B` is either
//! linear in `s` or, for the quadratic cone, the quadratic
//! `(D·D)s² + 2(D·B)s + (B·B) ≥ 0`. With `D` strictly interior all linear
//! constraints have positive slope and `D·D > 0`, so the feasible set is
//! `[ℓ, ∞) ∩ ((−∞, r₁] ∪ [r₂, ∞))` and its infimum is read off exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rat, int};
use crate::surface::{ConeModel, DivClass, SurfaceDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdProblem {
    surf: SurfaceDatum,
    direction: DivClass,
    offset: DivClass,
}

impl ThresholdProblem {
    pub fn new(surf: SurfaceDatum, direction: DivClass, offset: DivClass) -> Result<Self> {
        let rank = surf.rank();
        for c in [&direction, &offset] {
            if c.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: c.len(),
                });
            }
        }
        if !surf.cone().is_interior(surf.lattice(), &direction)? {
            return Err(Error::NotInterior("threshold direction".into()));
        }
        Ok(ThresholdProblem {
            surf,
            direction,
            offset,
        })
    }

    pub fn surface(&self) -> &SurfaceDatum {
        &self.surf
    }

    pub fn direction(&self) -> &DivClass {
        &self.direction
    }

    pub fn offset(&self) -> &DivClass {
        &self.offset
    }

    /// The cone constraints restricted to the pencil, as polynomials in `s`.
    pub fn constraints(&self) -> Result<PencilConstraints> {
        let lat = self.surf.lattice();
        let (d, b) = (&self.direction, &self.offset);
        Ok(match self.surf.cone() {
            ConeModel::Quadratic { ample_selector } => PencilConstraints {
                linear: vec![LinearConstraint {
                    slope: lat.pairing(d, ample_selector)?,
                    intercept: lat.pairing(b, ample_selector)?,
                }],
                quadratic: Some(QuadraticConstraint {
                    a: lat.pairing(d, d)?,
                    b: lat.pairing(d, b)? * int(2),
                    c: lat.pairing(b, b)?,
                }),
            },
            ConeModel::Polyhedral { inequalities } => PencilConstraints {
                linear: inequalities
                    .iter()
                    .map(|l| LinearConstraint {
                        slope: functional(l, d),
                        intercept: functional(l, b),
                    })
                    .collect(),
                quadratic: None,
            },
        })
    }
}

fn functional(l: &[i64], x: &DivClass) -> Rat {
    l.iter().zip(&x.coords).map(|(&w, c)| c * int(w)).sum()
}

/// `slope·s + intercept ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearConstraint {
    #[serde(serialize_with = "ser_rat")]
    pub slope: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub intercept: Rat,
}

impl LinearConstraint {
    /// The lower bound `−intercept / slope` (slope is positive for interior directions).
    pub fn bound(&self) -> Rat {
        -&self.intercept / &self.slope
    }
}

/// `a·s² + b·s + c ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticConstraint {
    #[serde(serialize_with = "ser_rat")]
    pub a: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub c: Rat,
}

impl QuadraticConstraint {
    /// Quarter discriminant `(b/2)² − a·c`.
    pub fn reduced_discriminant(&self) -> Rat {
        let half_b = &self.b / int(2);
        &half_b * &half_b - &self.a * &self.c
    }

    /// Real roots `r₁ ≤ r₂`, if any.
    pub fn roots(&self) -> Result<Option<(QuadNum, QuadNum)>> {
        let disc = self.reduced_discriminant();
        if disc.is_negative() {
            return Ok(None);
        }
        let sq = QuadNum::sqrt_rat(&disc)?.scale(&self.a.recip());
        let centre = QuadNum::rational(-&self.b / (int(2) * &self.a));
        Ok(Some((centre.try_sub(&sq)?, centre.try_add(&sq)?)))
    }

    pub fn eval(&self, s: &QuadNum) -> Result<QuadNum> {
        let s2 = s.try_mul(s)?;
        s2.scale(&self.a)
            .try_add(&s.scale(&self.b))
            .map(|x| x.add_rat(&self.c))
    }
}

pub(crate) fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilConstraints {
    pub linear: Vec<LinearConstraint>,
    pub quadratic: Option<QuadraticConstraint>,
}

impl PencilConstraints {
    /// Index and value of the tightest linear lower bound (lowest index on ties).
    pub fn linear_bound(&self) -> Option<(usize, Rat)> {
        let mut best: Option<(usize, Rat)> = None;
        for (i, c) in self.linear.iter().enumerate() {
            let b = c.bound();
            if best.as_ref().is_none_or(|(_, v)| b > *v) {
                best = Some((i, b));
            }
        }
        best
    }
}

/// Which constraint pins the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActiveConstraint {
    Linear(usize),
    Quadratic,
}

impl std::fmt::Display for ActiveConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActiveConstraint::Linear(i) => write!(f, "linear[{i}]"),
            ActiveConstraint::Quadratic => write!(f, "quadratic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdResult {
    pub t: QuadNum,
    pub attained: bool,
    pub active_constraint: ActiveConstraint,
    pub discriminant: u64,
    #[serde(skip)]
    pub constraints: PencilConstraints,
}

pub fn solve(p: &ThresholdProblem) -> Result<ThresholdResult> {
    let constraints = p.constraints()?;
    for c in &constraints.linear {
        if !c.slope.is_positive() {
            return Err(Error::InvariantViolation(
                "interior direction produced a non-increasing linear constraint".into(),
            ));
        }
    }
    let Some((idx, lower)) = constraints.linear_bound() else {
        return Err(Error::NotBoundedBelow);
    };
    let lower_q = QuadNum::rational(lower);

    let (t, active) = match &constraints.quadratic {
        None => (lower_q, ActiveConstraint::Linear(idx)),
        Some(quad) => {
            if !quad.a.is_positive() {
                return Err(Error::InvariantViolation(
                    "interior direction has non-positive square".into(),
                ));
            }
            match quad.roots()? {
                None => (lower_q, ActiveConstraint::Linear(idx)),
                Some((r1, r2)) => {
                    let inside_gap = lower_q.try_cmp(&r1)? == Ordering::Greater
                        && lower_q.try_cmp(&r2)? == Ordering::Less;
                    if inside_gap {
                        (r2, ActiveConstraint::Quadratic)
                    } else {
                        (lower_q, ActiveConstraint::Linear(idx))
                    }
                }
            }
        }
    };

    let result = ThresholdResult {
        discriminant: t.d(),
        t,
        attained: true,
        active_constraint: active,
        constraints,
    };
    if !feasible_at(p, &result.t)? {
        return Err(Error::InvariantViolation(format!(
            "threshold {} is not feasible",
            result.t
        )));
    }
    Ok(result)
}

/// Whether `s·D + B` lies in the closed cone.
pub fn feasible_at(p: &ThresholdProblem, s: &QuadNum) -> Result<bool> {
    let class: Vec<QuadNum> = p
        .direction
        .coords
        .iter()
        .zip(&p.offset.coords)
        .map(|(d, b)| s.scale(d).add_rat(b))
        .collect();
    p.surf.is_effective(&class)
}

/// Half-open grid cell `(lo, hi]` containing the threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Rat,
    pub hi: Rat,
}

impl Bracket {
    pub fn contains(&self, x: &QuadNum) -> bool {
        x.try_cmp(&QuadNum::rational(self.lo.clone())) == Ok(Ordering::Greater)
            && x.try_cmp(&QuadNum::rational(self.hi.clone())) != Ok(Ordering::Greater)
    }
}

/// Half-width `M` of the scan window `[−M, M]`: one plus the largest linear
/// bound magnitude plus the Cauchy bound of the quadratic.
pub fn scan_radius(constraints: &PencilConstraints) -> Rat {
    let mut m = Rat::zero();
    for c in &constraints.linear {
        let r = (&c.intercept / &c.slope).abs();
        if r > m {
            m = r;
        }
    }
    if let Some(q) = &constraints.quadratic {
        let cauchy = Rat::one() + (q.b.abs().max(q.c.abs())) / q.a.abs();
        if cauchy > m {
            m = cauchy;
        }
    }
    Rat::one() + m
}

/// Brute-force threshold bracket.
///
/// Walks the grid `s = j/N` upward from `−M` and returns the first cell where
/// membership of `s·D + B` flips from false to true. Membership is evaluated
/// directly on the class `j·D + N·B` (cone membership is scale invariant),
/// using integer forward differences for the intersection numbers.
pub fn bracket_oracle(p: &ThresholdProblem, resolution: u64) -> Result<Bracket> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be at least 1".into()));
    }
    let radius = scan_radius(&p.constraints()?);
    let n = BigInt::from(resolution);
    let start = -(radius.clone() * Rat::from_integer(n.clone())).ceil().to_integer();
    let end = (radius * Rat::from_integer(n.clone())).ceil().to_integer();

    // common denominator of the offset
    let den = p
        .offset
        .coords
        .iter()
        .chain(&p.direction.coords)
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_int = |c: &Rat| -> Result<i128> {
        (c * Rat::from_integer(den.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| Error::InvalidArgument("coordinates too large for the oracle".into()))
    };
    let step: Vec<i128> = p.direction.coords.iter().map(to_int).collect::<Result<_>>()?;
    let base: Vec<i128> = p.offset.coords.iter().map(to_int).collect::<Result<_>>()?;
    let start_i = start
        .to_i128()
        .ok_or_else(|| Error::InvalidArgument("scan window too large".into()))?;
    let end_i = end
        .to_i128()
        .ok_or_else(|| Error::InvalidArgument("scan window too large".into()))?;
    let n_i = resolution as i128;

    // class at the first grid point: start·D + N·B
    let first: Vec<i128> = step
        .iter()
        .zip(&base)
        .map(|(d, b)| d * start_i + b * n_i)
        .collect();
    let mut walker = GridWalker::new(p.surf.cone(), p.surf.lattice().form(), first, step)?;

    if walker.member() {
        return Err(Error::NotBoundedBelow);
    }
    let mut j = start_i;
    while j < end_i {
        walker.advance()?;
        j += 1;
        if walker.member() {
            return Ok(Bracket {
                lo: Rat::new(BigInt::from(j - 1), n.clone()),
                hi: Rat::new(BigInt::from(j), n),
            });
        }
    }
    Err(Error::Infeasible(
        "no feasibility flip on the scan window".into(),
    ))
}

/// Tracks the cone constraints at `x + k·step` under `k ↦ k + 1`.
struct GridWalker {
    linear: Vec<(i128, i128)>,
    quad: Option<QuadState>,
}

struct QuadState {
    sq: i128,
    cross: i128,
    step_sq: i128,
}

fn form_eval(form: &[Vec<i64>], x: &[i128], y: &[i128]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (i, row) in form.iter().enumerate() {
        for (j, &f) in row.iter().enumerate() {
            let t = (f as i128)
                .checked_mul(x[i])
                .and_then(|v| v.checked_mul(y[j]))
                .ok_or_else(overflow)?;
            acc = acc.checked_add(t).ok_or_else(overflow)?;
        }
    }
    Ok(acc)
}

fn overflow() -> Error {
    Error::InvalidArgument("integer overflow in grid oracle".into())
}

fn dot(l: &[i128], x: &[i128]) -> Result<i128> {
    l.iter().zip(x).try_fold(0i128, |acc, (a, b)| {
        a.checked_mul(*b)
            .and_then(|v| acc.checked_add(v))
            .ok_or_else(overflow)
    })
}

impl GridWalker {
    fn new(cone: &ConeModel, form: &[Vec<i64>], x: Vec<i128>, step: Vec<i128>) -> Result<Self> {
        match cone {
            ConeModel::Quadratic { ample_selector } => {
                let den = ample_selector
                    .coords
                    .iter()
                    .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                let h: Vec<i128> = ample_selector
                    .coords
                    .iter()
                    .map(|c| {
                        (c * Rat::from_integer(den.clone()))
                            .to_integer()
                            .to_i128()
                            .ok_or_else(overflow)
                    })
                    .collect::<Result<_>>()?;
                let h_form: Vec<i128> = (0..h.len())
                    .map(|j| {
                        let e: Vec<i128> = (0..h.len()).map(|k| i128::from(k == j)).collect();
                        form_eval(form, &h, &e)
                    })
                    .collect::<Result<_>>()?;
                Ok(GridWalker {
                    linear: vec![(dot(&h_form, &x)?, dot(&h_form, &step)?)],
                    quad: Some(QuadState {
                        sq: form_eval(form, &x, &x)?,
                        cross: form_eval(form, &x, &step)?,
                        step_sq: form_eval(form, &step, &step)?,
                    }),
                })
            }
            ConeModel::Polyhedral { inequalities } => {
                let linear = inequalities
                    .iter()
                    .map(|l| {
                        let l: Vec<i128> = l.iter().map(|&w| w as i128).collect();
                        Ok((dot(&l, &x)?, dot(&l, &step)?))
                    })
                    .collect::<Result<_>>()?;
                Ok(GridWalker { linear, quad: None })
            }
        }
    }

    fn member(&self) -> bool {
        self.linear.iter().all(|(v, _)| *v >= 0) && self.quad.as_ref().is_none_or(|q| q.sq >= 0)
    }

    fn advance(&mut self) -> Result<()> {
        for (v, dv) in &mut self.linear {
            *v = v.checked_add(*dv).ok_or_else(overflow)?;
        }
        if let Some(q) = &mut self.quad {
            // (x+D)² = x² + 2x·D + D²,  (x+D)·D = x·D + D²
            q.sq = q
                .sq
                .checked_add(2 * q.cross)
                .and_then(|v| v.checked_add(q.step_sq))
                .ok_or_else(overflow)?;
            q.cross = q.cross.checked_add(q.step_sq).ok_or_else(overflow)?;
        }
        Ok(())
    }
}
