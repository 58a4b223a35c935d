use conesing::QuadNum;
use conesing::exactnum::{int, rat};
use conesing::surface::{ConeModel, DivClass, NsLattice, SurfaceDatum};
use proptest::prelude::*;

fn exe() -> SurfaceDatum {
    let lat = NsLattice::new(
        vec!["f1".into(), "f2".into(), "delta".into()],
        vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
    )
    .unwrap();
    SurfaceDatum::new(
        "ExE",
        lat,
        ConeModel::Quadratic {
            ample_selector: DivClass::from_ints(&[1, 1, 1]),
        },
        DivClass::zero(3),
        DivClass::from_ints(&[3, 6, 6]),
    )
    .unwrap()
}

fn quad(v: &[i64]) -> Vec<QuadNum> {
    v.iter().map(|&x| QuadNum::from_int(x)).collect()
}

/// Direct form of the nef criterion on E×E: xy + xz + yz ≥ 0 and x + y + z ≥ 0.
fn exe_criterion(v: &[i64]) -> bool {
    let (x, y, z) = (v[0], v[1], v[2]);
    x * y + x * z + y * z >= 0 && x + y + z >= 0
}

fn arb_class() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 3)
}

/// Members of the cone: nonnegative combinations of nef classes.
fn arb_member() -> impl Strategy<Value = Vec<i64>> {
    let gens = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 2, -1], [3, 6, -2]];
    prop::collection::vec(0i64..5, gens.len()).prop_map(move |w| {
        (0..3).map(|i| w.iter().zip(&gens).map(|(c, g)| c * g[i]).sum()).collect()
    })
}

#[test]
fn self_pairing_expands_to_symmetric_sum() {
    let s = exe();
    for v in [[1, 2, 3], [-4, 5, 0], [7, -1, -2]] {
        let c = DivClass::from_ints(&v);
        let expected = 2 * (v[0] * v[1] + v[0] * v[2] + v[1] * v[2]);
        assert_eq!(s.lattice().pairing(&c, &c).unwrap(), int(expected));
    }
}

#[test]
fn irrational_coordinates() {
    let s = exe();
    // (7+√17)/16 · L − K_W on the double cover sits on the boundary
    let w = s.double_cover(&DivClass::from_ints(&[6, 6, 0])).unwrap();
    let t = QuadNum::new(rat(7, 16), rat(1, 16), 17);
    let class: Vec<QuadNum> = w
        .polarization()
        .coords
        .iter()
        .zip(&w.canonical_class().coords)
        .map(|(l, k)| t.scale(l).add_rat(&-k.clone()))
        .collect();
    assert!(w.is_effective(&class).unwrap());
    let sq = w.lattice().pairing_quad(&class, &class).unwrap();
    assert!(sq.is_zero());
    let mixed = vec![QuadNum::new(rat(0, 1), rat(1, 1), 2), QuadNum::new(rat(0, 1), rat(1, 1), 3), QuadNum::zero()];
    assert!(w.is_effective(&mixed).is_err());
}

proptest! {
    #[test]
    fn membership_matches_criterion(v in arb_class()) {
        prop_assert_eq!(exe().is_effective(&quad(&v)).unwrap(), exe_criterion(&v));
    }

    #[test]
    fn scale_invariance(v in arb_class(), lambda in 1i64..9, denom in 1i64..9) {
        let s = exe();
        let base = s.is_effective(&quad(&v)).unwrap();
        let scaled: Vec<QuadNum> = v.iter().map(|&x| QuadNum::rational(rat(x * lambda, denom))).collect();
        prop_assert_eq!(s.is_effective(&scaled).unwrap(), base);
    }

    #[test]
    fn closed_under_addition(a in arb_member(), b in arb_member()) {
        let s = exe();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert!(s.is_effective(&quad(&sum)).unwrap());
    }

    #[test]
    fn negative_nappe_rejected(v in arb_class()) {
        let s = exe();
        let c = DivClass::from_ints(&v);
        let sq = s.lattice().pairing(&c, &c).unwrap();
        let sel = s.lattice().pairing(&c, &DivClass::from_ints(&[1, 1, 1])).unwrap();
        if sq >= int(0) && sel < int(0) {
            prop_assert!(!s.is_effective(&quad(&v)).unwrap());
        }
    }

    #[test]
    fn cover_doubles_pairings(branch in prop::collection::vec(1i64..6, 3)) {
        let s = exe();
        let h: Vec<i64> = branch.iter().map(|x| 2 * x).collect();
        let Ok(w) = s.double_cover(&DivClass::from_ints(&h)) else {
            // half-branch not ample on E×E: must be rejected for that reason only
            prop_assert!(!s.cone().is_interior(s.lattice(), &DivClass::from_ints(&branch)).unwrap());
            return Ok(());
        };
        for i in 0..3 {
            for j in 0..3 {
                let mut ei = vec![0; 3];
                let mut ej = vec![0; 3];
                ei[i] = 1;
                ej[j] = 1;
                let (ei, ej) = (DivClass::from_ints(&ei), DivClass::from_ints(&ej));
                prop_assert_eq!(
                    w.lattice().pairing(&ei, &ej).unwrap(),
                    s.lattice().pairing(&ei, &ej).unwrap() * int(2)
                );
            }
        }
        prop_assert_eq!(w.canonical_class(), &DivClass::from_ints(&branch));
    }
}
