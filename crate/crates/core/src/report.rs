//! Full singularity analysis and its JSON / text renderings.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rat};
use crate::singularity::{
    ConeSingularity, JumpingNumbers, LimitingRow, classify_thresholds, jumps_from, limiting_row,
    no_accumulation_check, val_minus_from,
};
use crate::threshold::ThresholdResult;

pub const DEFAULT_JUMP_COUNT: usize = 10;
pub const DEFAULT_LIMIT_ORDERS: [u64; 6] = [1, 2, 4, 8, 16, 32];

/// Exact value plus display forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumView {
    pub exact: QuadNum,
    pub display: String,
    pub approx: String,
}

impl From<&QuadNum> for NumView {
    fn from(x: &QuadNum) -> Self {
        NumView {
            exact: x.clone(),
            display: x.to_string(),
            approx: x.approx(6),
        }
    }
}

impl From<&Rat> for NumView {
    fn from(x: &Rat) -> Self {
        NumView::from(&QuadNum::rational(x.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdView {
    pub t: NumView,
    pub attained: bool,
    pub active_constraint: String,
    pub discriminant: u64,
}

impl From<&ThresholdResult> for ThresholdView {
    fn from(r: &ThresholdResult) -> Self {
        ThresholdView {
            t: NumView::from(&r.t),
            attained: r.attained,
            active_constraint: r.active_constraint.to_string(),
            discriminant: r.discriminant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitView {
    pub m: u64,
    pub t_m: NumView,
    pub val_m: NumView,
    pub gap: NumView,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub name: String,
    pub rank: usize,
    pub cover_degree: u32,
    pub t_minus: ThresholdView,
    pub t_plus: ThresholdView,
    pub val_minus: NumView,
    pub val_plus: NumView,
    pub val_minus_rational: bool,
    pub is_klt: bool,
    pub is_canonical: bool,
    pub is_terminal: bool,
    pub jumping_numbers: Vec<NumView>,
    pub jumping_irrational: bool,
    pub limiting_table: Vec<LimitView>,
}

/// Limiting table with the `0 ≤ t_m − t⁻ < 1/m` check applied to each row.
pub fn limiting_table(t_minus: &QuadNum, orders: &[u64]) -> Result<Vec<(LimitingRow, QuadNum)>> {
    orders
        .iter()
        .map(|&m| {
            if m == 0 {
                return Err(Error::InvalidArgument("m must be at least 1".into()));
            }
            let row = limiting_row(t_minus, m);
            let gap = QuadNum::rational(row.t_m.clone()).try_sub(t_minus)?;
            let bound = Rat::new(BigInt::from(1), BigInt::from(m));
            if gap.sign() == Ordering::Less
                || gap.try_cmp(&QuadNum::rational(bound))? != Ordering::Less
            {
                return Err(Error::InvariantViolation(format!(
                    "limiting gap {gap} at m = {m} is outside [0, 1/m)"
                )));
            }
            Ok((row, gap))
        })
        .collect()
}

pub fn analyze(c: &ConeSingularity) -> Result<SingularityReport> {
    analyze_with(c, DEFAULT_JUMP_COUNT, &DEFAULT_LIMIT_ORDERS)
}

pub fn analyze_with(
    c: &ConeSingularity,
    jump_count: usize,
    orders: &[u64],
) -> Result<SingularityReport> {
    let tm = c.threshold_minus()?;
    let tp = c.threshold_plus()?;
    let val_minus = val_minus_from(&tm.t);
    let val_plus = tp.t.add_rat(&Rat::from_integer((-1).into()));

    if tm.t.try_add(&tp.t)?.sign() == Ordering::Less {
        return Err(Error::InvariantViolation(format!(
            "t+ + t- < 0 ({} + {})",
            tp.t, tm.t
        )));
    }
    let class = classify_thresholds(&tm.t, &tp.t);
    if class.is_klt && !val_minus.is_rational() {
        return Err(Error::InvariantViolation(
            "klt singularity with irrational valuation".into(),
        ));
    }
    if class.is_terminal && !class.is_canonical {
        return Err(Error::InvariantViolation("terminal but not canonical".into()));
    }

    let JumpingNumbers { values, irrational } = jumps_from(&val_minus, jump_count);
    if !no_accumulation_check(&values) {
        return Err(Error::InvariantViolation("jumping numbers accumulate".into()));
    }
    let table = limiting_table(&tm.t, orders)?;

    let surf = c.surface();
    Ok(SingularityReport {
        name: c.label().to_string(),
        rank: surf.rank(),
        cover_degree: surf.cover_degree(),
        t_minus: ThresholdView::from(&tm),
        t_plus: ThresholdView::from(&tp),
        val_minus_rational: val_minus.is_rational(),
        val_minus: NumView::from(&val_minus),
        val_plus: NumView::from(&val_plus),
        is_klt: class.is_klt,
        is_canonical: class.is_canonical,
        is_terminal: class.is_terminal,
        jumping_numbers: values.iter().map(NumView::from).collect(),
        jumping_irrational: irrational,
        limiting_table: table
            .iter()
            .map(|(row, gap)| LimitView {
                m: row.m,
                t_m: NumView::from(&row.t_m),
                val_m: NumView::from(&row.val_m),
                gap: NumView::from(gap),
            })
            .collect(),
    })
}

fn both(n: &NumView) -> String {
    format!("{} ≈ {}", n.display, n.approx)
}

impl SingularityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "cone singularity: {}", self.name);
        let _ = writeln!(w, "  rank {}, cover degree {}", self.rank, self.cover_degree);
        for (label, t) in [("t-", &self.t_minus), ("t+", &self.t_plus)] {
            let _ = writeln!(
                w,
                "  {:<12} {}   [{}, d = {}]",
                label,
                both(&t.t),
                t.active_constraint,
                t.discriminant
            );
        }
        let rationality = if self.val_minus_rational { "rational" } else { "irrational" };
        let _ = writeln!(w, "  {:<12} {}   [{}]", "val(K-)", both(&self.val_minus), rationality);
        let _ = writeln!(w, "  {:<12} {}", "val(K)", both(&self.val_plus));
        let _ = writeln!(w, "  {:<12} {}", "klt", self.is_klt);
        let _ = writeln!(w, "  {:<12} {}", "canonical", self.is_canonical);
        let _ = writeln!(w, "  {:<12} {}", "terminal", self.is_terminal);
        let kind = if self.jumping_irrational { "irrational" } else { "rational" };
        let _ = writeln!(
            w,
            "jumping numbers (first {}, {kind}):",
            self.jumping_numbers.len()
        );
        for (i, j) in self.jumping_numbers.iter().enumerate() {
            let _ = writeln!(w, "  {:>3}  {}", i + 1, both(j));
        }
        let _ = writeln!(w, "limiting valuations:");
        let _ = write!(w, "{}", limit_table_text(&self.limiting_table));
        s
    }
}

pub fn limit_table_text(rows: &[LimitView]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "  {:>4}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}",
        "m", "t_m", "(approx)", "val_m", "(approx)", "gap"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "  {:>4}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}",
            r.m, r.t_m.display, r.t_m.approx, r.val_m.display, r.val_m.approx, r.gap.approx
        );
    }
    s
}
