#![allow(dead_code)]

use conesing::exactnum::{Rat, rat};
use conesing::presets::PresetId;
use conesing::singularity::ConeSingularity;
use conesing::surface::{ConeModel, DivClass, NsLattice, SurfaceDatum};
use conesing::threshold::{ThresholdProblem, scan_radius};
use rand::Rng;
use rand::rngs::StdRng;

/// Largest oracle window accepted for generated problems; keeps the grid
/// scan at N = 10⁶ affordable.
pub const MAX_RADIUS: i64 = 12;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn small_vec(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn small_rat(rng: &mut StdRng) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// `Pᵀ · diag(1, −a₂, …, −a_r) · P` for a random small integer `P`.
fn lorentzian_form(rng: &mut StdRng, rank: usize) -> Vec<Vec<i64>> {
    loop {
        let p: Vec<Vec<i64>> = (0..rank).map(|_| small_vec(rng, rank, -1, 2)).collect();
        let diag: Vec<i64> = (0..rank)
            .map(|i| if i == 0 { rng.gen_range(1..=2) } else { -rng.gen_range(1..=2) })
            .collect();
        let form: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| (0..rank).map(|k| p[k][i] * diag[k] * p[k][j]).sum())
                    .collect()
            })
            .collect();
        if NsLattice::new(labels(rank), form.clone()).is_ok() {
            return form;
        }
    }
}

fn interior_class(rng: &mut StdRng, lat: &NsLattice, cone: &ConeModel, lo: i64, hi: i64) -> DivClass {
    loop {
        let c = DivClass::from_ints(&small_vec(rng, lat.rank(), lo, hi));
        if cone.is_interior(lat, &c).unwrap() {
            return c;
        }
    }
}

/// Random surface with a quadratic (positive-nappe) cone. The canonical
/// class is either zero or a random class of the closed cone, the two
/// shapes that occur for abelian-type surfaces and their double covers.
pub fn random_quadratic_surface(rng: &mut StdRng) -> SurfaceDatum {
    loop {
        let rank = rng.gen_range(2..=4);
        let lat = NsLattice::new(labels(rank), lorentzian_form(rng, rank)).unwrap();
        let Some(h) = (0..200)
            .map(|_| DivClass::from_ints(&small_vec(rng, rank, -3, 3)))
            .find(|h| lat.pairing(h, h).unwrap() > Rat::from_integer(0.into()))
        else {
            continue;
        };
        let cone = ConeModel::Quadratic { ample_selector: h };
        let l = interior_class(rng, &lat, &cone, -3, 3);
        let k = if rng.gen_bool(0.3) {
            DivClass::zero(rank)
        } else {
            interior_class(rng, &lat, &cone, -3, 3)
        };
        let s = SurfaceDatum::new("random-quadratic", lat, cone, k, l).unwrap();
        if within_window(&s) {
            return s;
        }
    }
}

/// Random surface with a pointed rational polyhedral cone and an arbitrary
/// rational canonical class.
pub fn random_polyhedral_surface(rng: &mut StdRng) -> SurfaceDatum {
    loop {
        let rank = rng.gen_range(2..=3);
        let lat = NsLattice::new(labels(rank), lorentzian_form(rng, rank)).unwrap();
        let mut ineqs: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..rng.gen_range(0..=2) {
            ineqs.push(small_vec(rng, rank, -1, 3));
        }
        let cone = ConeModel::Polyhedral { inequalities: ineqs };
        let l = (0..200)
            .map(|_| DivClass::from_ints(&small_vec(rng, rank, 1, 4)))
            .find(|c| cone.is_interior(&lat, c).unwrap());
        let Some(l) = l else { continue };
        let k = DivClass::new((0..rank).map(|_| small_rat(rng)).collect());
        let Ok(s) = SurfaceDatum::new("random-polyhedral", lat, cone, k, l) else {
            continue;
        };
        if within_window(&s) {
            return s;
        }
    }
}

pub fn pencil(s: &SurfaceDatum, sign: i64) -> ThresholdProblem {
    ThresholdProblem::new(
        s.clone(),
        s.polarization().clone(),
        s.canonical_class().scale(&Rat::from_integer(sign.into())),
    )
    .unwrap()
}

fn within_window(s: &SurfaceDatum) -> bool {
    [-1, 1].iter().all(|&sign| {
        scan_radius(&pencil(s, sign).constraints().unwrap()) <= Rat::from_integer(MAX_RADIUS.into())
    })
}

/// Random threshold problem on a random surface with an arbitrary offset.
pub fn random_problem(rng: &mut StdRng) -> ThresholdProblem {
    let s = if rng.gen_bool(0.5) {
        random_quadratic_surface(rng)
    } else {
        random_polyhedral_surface(rng)
    };
    let b = DivClass::new((0..s.rank()).map(|_| small_rat(rng)).collect());
    ThresholdProblem::new(s.clone(), s.polarization().clone(), b).unwrap()
}

pub fn preset_a() -> ConeSingularity {
    PresetId::AbelianCover.build().unwrap()
}

pub fn preset_b() -> ConeSingularity {
    PresetId::P1xE { degree: 1 }.build().unwrap()
}

pub fn synthetic() -> ConeSingularity {
    "quadrant-synthetic:-1,-1".parse::<PresetId>().unwrap().build().unwrap()
}
