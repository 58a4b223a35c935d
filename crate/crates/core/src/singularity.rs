//! Invariants of the cone singularity over a polarized surface, computed
//! along the exceptional divisor of the vertex blow-up (the negative section).
//!
//! Everything is driven by two thresholds of the pencil `sL ∓ K`:
//!
//! * `t⁻ = inf { s : sL − K effective }`, giving `val(K⁻) = −(1 + t⁻)`;
//! * `t⁺ = inf { s : sL + K effective }`, giving `val(K) = t⁺ − 1`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rat, int};
use crate::surface::SurfaceDatum;
use crate::threshold::{ThresholdProblem, ThresholdResult, solve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSingularity {
    surf: SurfaceDatum,
    label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub is_klt: bool,
    pub is_canonical: bool,
    pub is_terminal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitingRow {
    pub m: u64,
    pub t_m: Rat,
    pub val_m: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpingNumbers {
    pub values: Vec<QuadNum>,
    pub irrational: bool,
}

fn no_boundary(which: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Infeasible(msg) => {
            Error::NoBoundaryExists(format!("no class s·L {which} K is effective ({msg})"))
        }
        other => other,
    }
}

impl ConeSingularity {
    pub fn new(surf: SurfaceDatum, label: impl Into<String>) -> Self {
        ConeSingularity {
            surf,
            label: label.into(),
        }
    }

    pub fn surface(&self) -> &SurfaceDatum {
        &self.surf
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn problem(&self, sign: i64) -> Result<ThresholdProblem> {
        ThresholdProblem::new(
            self.surf.clone(),
            self.surf.polarization().clone(),
            self.surf.canonical_class().scale(&int(sign)),
        )
    }

    pub fn threshold_minus(&self) -> Result<ThresholdResult> {
        solve(&self.problem(-1)?).map_err(no_boundary("-"))
    }

    pub fn threshold_plus(&self) -> Result<ThresholdResult> {
        solve(&self.problem(1)?).map_err(no_boundary("+"))
    }

    /// `val(K⁻) = −(1 + t⁻)`.
    pub fn val_relative_canonical_minus(&self) -> Result<QuadNum> {
        Ok(val_minus_from(&self.threshold_minus()?.t))
    }

    /// `val(K) = t⁺ − 1`.
    pub fn val_relative_canonical_plus(&self) -> Result<QuadNum> {
        Ok(self.threshold_plus()?.t.add_rat(&int(-1)))
    }

    pub fn limiting_valuation(&self, m: u64) -> Result<LimitingRow> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        Ok(limiting_row(&self.threshold_minus()?.t, m))
    }

    pub fn classify(&self) -> Result<Classification> {
        let t_minus = self.threshold_minus()?.t;
        let t_plus = self.threshold_plus()?.t;
        Ok(classify_thresholds(&t_minus, &t_plus))
    }

    pub fn multiplier_ideal_order(&self, coeff: &QuadNum) -> Result<u64> {
        multiplier_order(&self.val_relative_canonical_minus()?, coeff)
    }

    pub fn jumping_numbers(&self, count: usize) -> Result<JumpingNumbers> {
        if count == 0 {
            return Err(Error::InvalidArgument("count must be at least 1".into()));
        }
        Ok(jumps_from(&self.val_relative_canonical_minus()?, count))
    }
}

pub(crate) fn val_minus_from(t_minus: &QuadNum) -> QuadNum {
    -t_minus.add_rat(&Rat::one())
}

/// `t_m = ⌈m·t⁻⌉ / m`, `val_m = −(1 + t_m)`.
pub(crate) fn limiting_row(t_minus: &QuadNum, m: u64) -> LimitingRow {
    let mq = Rat::from_integer(BigInt::from(m));
    let t_m = Rat::new(t_minus.scale(&mq).ceil(), BigInt::from(m));
    let val_m = -(&t_m + Rat::one());
    LimitingRow { m, t_m, val_m }
}

pub(crate) fn classify_thresholds(t_minus: &QuadNum, t_plus: &QuadNum) -> Classification {
    // canonical: t⁺ − 1 ≥ 0, terminal: t⁺ − 1 > 0
    let val_plus = t_plus.add_rat(&int(-1));
    Classification {
        is_klt: t_minus.sign() == Ordering::Less,
        is_canonical: val_plus.sign() != Ordering::Less,
        is_terminal: val_plus.sign() == Ordering::Greater,
    }
}

/// Vanishing order along the exceptional divisor of the multiplier ideal of
/// `k·P`: `max(0, −⌈val⁻ − k⌉)`.
pub fn multiplier_order(val_minus: &QuadNum, coeff: &QuadNum) -> Result<u64> {
    if coeff.sign() != Ordering::Greater {
        return Err(Error::InvalidArgument(format!("coefficient {coeff} must be positive")));
    }
    let c = val_minus.try_sub(coeff)?.ceil();
    if c.is_positive() {
        return Ok(0);
    }
    use num_traits::ToPrimitive;
    (-c).to_u64()
        .ok_or_else(|| Error::InvalidArgument("multiplier order overflows u64".into()))
}

/// First `count` positive numbers of the form `j + val⁻`, `j` an integer.
pub(crate) fn jumps_from(val_minus: &QuadNum, count: usize) -> JumpingNumbers {
    let first = (-val_minus).floor() + 1;
    let values = (0..count)
        .map(|i| val_minus.add_rat(&Rat::from_integer(&first + BigInt::from(i))))
        .collect();
    JumpingNumbers {
        values,
        irrational: !val_minus.is_rational(),
    }
}

/// True iff the list is positive, strictly increasing with gaps exactly one,
/// and every window `[0, T]` holds at most `⌈T⌉ + 1` entries.
pub fn no_accumulation_check(jumps: &[QuadNum]) -> bool {
    let one = QuadNum::from_int(1);
    for x in jumps {
        if x.sign() != Ordering::Greater {
            return false;
        }
    }
    for w in jumps.windows(2) {
        match w[1].try_sub(&w[0]) {
            Ok(gap) if gap == one => {}
            _ => return false,
        }
    }
    jumps.iter().all(|t| {
        let bound = t.ceil() + 1;
        let inside = jumps
            .iter()
            .filter(|x| x.try_cmp(t) != Ok(Ordering::Greater))
            .count();
        BigInt::from(inside) <= bound
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn val_a() -> QuadNum {
        QuadNum::new(rat(-23, 16), rat(-1, 16), 17)
    }

    #[test]
    fn multiplier_orders_on_abelian_cover_value() {
        let v = val_a();
        assert_eq!(multiplier_order(&v, &QuadNum::rational(rat(1, 10))).unwrap(), 1);
        let first_jump = QuadNum::new(rat(9, 16), rat(-1, 16), 17);
        assert_eq!(multiplier_order(&v, &first_jump).unwrap(), 2);
        assert!(multiplier_order(&v, &QuadNum::zero()).is_err());
    }

    #[test]
    fn small_coefficient_gives_order_one() {
        let eps = QuadNum::rational(rat(1, 1_000_000));
        assert_eq!(multiplier_order(&QuadNum::from_int(-1), &eps).unwrap(), 1);
        assert_eq!(multiplier_order(&val_a(), &eps).unwrap(), 1);
    }

    #[test]
    fn jumps_for_abelian_cover() {
        let j = jumps_from(&val_a(), 3);
        assert!(j.irrational);
        assert_eq!(
            j.values,
            vec![
                QuadNum::new(rat(9, 16), rat(-1, 16), 17),
                QuadNum::new(rat(25, 16), rat(-1, 16), 17),
                QuadNum::new(rat(41, 16), rat(-1, 16), 17),
            ]
        );
    }

    #[test]
    fn jumps_for_rational_value() {
        let j = jumps_from(&QuadNum::from_int(-1), 2);
        assert!(!j.irrational);
        assert_eq!(j.values, vec![QuadNum::from_int(1), QuadNum::from_int(2)]);
        // val⁻ = 0: first jump is 1, not 0
        let j = jumps_from(&QuadNum::zero(), 1);
        assert_eq!(j.values, vec![QuadNum::from_int(1)]);
    }

    #[test]
    fn limiting_rows() {
        let t = QuadNum::new(rat(7, 16), rat(1, 16), 17);
        let r1 = limiting_row(&t, 1);
        assert_eq!((r1.t_m.clone(), r1.val_m.clone()), (int(1), int(-2)));
        let r16 = limiting_row(&t, 16);
        assert_eq!((r16.t_m, r16.val_m), (rat(3, 4), rat(-7, 4)));
        let r = limiting_row(&QuadNum::zero(), 7);
        assert_eq!((r.t_m, r.val_m), (int(0), int(-1)));
    }

    #[test]
    fn accumulation_detection() {
        let adversarial: Vec<QuadNum> = [rat(1, 1), rat(3, 2), rat(7, 4), rat(15, 8)]
            .into_iter()
            .map(QuadNum::rational)
            .collect();
        assert!(!no_accumulation_check(&adversarial));
        assert!(no_accumulation_check(&jumps_from(&val_a(), 100).values));
        assert!(no_accumulation_check(&[]));
        assert!(!no_accumulation_check(&[QuadNum::from_int(0), QuadNum::from_int(1)]));
    }

    #[test]
    fn classification_boundaries() {
        let c = classify_thresholds(&QuadNum::zero(), &QuadNum::from_int(1));
        assert_eq!(
            c,
            Classification { is_klt: false, is_canonical: true, is_terminal: false }
        );
        let c = classify_thresholds(&QuadNum::from_int(-1), &QuadNum::from_int(2));
        assert!(c.is_klt && c.is_canonical && c.is_terminal);
    }
}
