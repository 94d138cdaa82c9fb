mod common;

use std::collections::BTreeMap;

use knotq::cohomology::{cocycle_space, coboundary, Cochain, CoefficientGroup};
use knotq::coloring::enumerate_colorings;
use knotq::invariants::*;
use knotq::moves::{apply_move, random_move};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::oracle::OracleDiagram;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn state_sums_match_oracle() {
    let fixtures = [("tetrahedral", "tetrahedral_z2"), ("dihedral4", "dihedral4_z2"), ("dihedral4", "dihedral4_q"), ("trivial2", "trivial2_psi")];
    for (qn, cn) in fixtures {
        let q = common::quandle(qn);
        let phi = common::cochain(cn, q.order());
        for (file, d) in common::corpus() {
            let ss = state_sum(&d, &q, &phi).unwrap();
            assert_eq!(ss.terms, OracleDiagram::new(&d).state_sum(&q, &phi), "{file}/{cn}");
            assert_eq!(weight_multiset(&d, &q, &phi).unwrap(), ss);
        }
    }
}

#[test]
fn tetrahedral_trefoil() {
    let q = common::quandle("tetrahedral");
    let phi = common::cochain("tetrahedral_z2", 4);
    let d = common::diagram("trefoil.pd");
    let ss = state_sum(&d, &q, &phi).unwrap();
    assert_eq!(ss.terms, BTreeMap::from([(r(0), 4), (r(1), 12)]));
    assert_eq!(ss.display(), "4 + 12·t^1");
    // constant colorings weigh zero, the others do not
    for c in enumerate_colorings(&d, &q) {
        let w = boltzmann_weight(&d, &q, &c, &phi).unwrap();
        assert_eq!(w.is_zero(), c.iter().all(|&x| x == c[0]));
    }
}

#[test]
fn coboundaries_count_colorings() {
    let q = common::quandle("dihedral3");
    let d = common::diagram("figure_eight.pd");
    let mut psi = Cochain::zero(3, 1, CoefficientGroup::ZMod(3));
    psi.set(&[2], r(1)).unwrap();
    let ss = state_sum(&d, &q, &coboundary(&q, &psi).unwrap()).unwrap();
    assert_eq!(ss.terms.keys().collect::<Vec<_>>(), vec![&r(0)]);
    assert_eq!(ss.total(), enumerate_colorings(&d, &q).len() as u64);
}

#[test]
fn hopf_partition_function() {
    let ss = state_sum(&common::diagram("hopf.json"), &common::quandle("trivial2"), &common::cochain("trivial2_psi", 2)).unwrap();
    assert_eq!(ss.terms, BTreeMap::from([(r(-1), 2), (r(0), 2)]));
    for (t, z) in partition_function(&ss, &[0.5, 1.0, 4.0], 1.0).unwrap() {
        let want = 2.0 + 2.0 * (1.0 / t).exp();
        assert!((z - want).abs() <= 1e-12 * want);
    }
    // k rescales T
    let a = partition_function(&ss, &[2.0], 1.0).unwrap()[0].1;
    let b = partition_function(&ss, &[1.0], 2.0).unwrap()[0].1;
    assert_eq!(a, b);
}

#[test]
fn symmetric_functions() {
    let ss = state_sum(&common::diagram("hopf.json"), &common::quandle("trivial2"), &common::cochain("trivial2_psi", 2)).unwrap();
    let weights = [(-1f64).exp(), (-1f64).exp(), 1.0, 1.0];
    for k in 1..=4 {
        let p = symmetric_function(&ss, SymmetricKind::Power, k).unwrap();
        let want: f64 = weights.iter().map(|w| w.powi(k as i32)).sum();
        assert!((p.value - want).abs() < 1e-12 * want);
    }
    // e_2 of {a,a,1,1}: a² + 4a + 1
    let a = (-1f64).exp();
    let e2 = symmetric_function(&ss, SymmetricKind::Elementary, 2).unwrap();
    assert!((e2.value - (a * a + 4.0 * a + 1.0)).abs() < 1e-12);
    assert_eq!(e2.terms[&r(-1)], BigInt::from(4));
    let e5 = symmetric_function(&ss, SymmetricKind::Elementary, 5).unwrap();
    assert!(e5.terms.is_empty() && e5.value == 0.0);
    assert_eq!(symmetric_function(&ss, SymmetricKind::Power, 0), Err(InvariantError::ZeroOrder));
}

#[test]
fn power_sums_survive_moves() {
    let q = common::quandle("dihedral4");
    let phi = common::cochain("dihedral4_q", 4);
    let mut d = common::diagram("figure_eight.pd");
    let before = symmetric_function(&state_sum(&d, &q, &phi).unwrap(), SymmetricKind::Power, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let spec = random_move(&d, &mut rng).unwrap();
        d = apply_move(&d, &spec).unwrap().diagram;
        let now = symmetric_function(&state_sum(&d, &q, &phi).unwrap(), SymmetricKind::Power, 3).unwrap();
        assert_eq!(now, before);
    }
}

#[test]
fn errors() {
    let q = common::quandle("dihedral3");
    let d = common::diagram("trefoil.pd");
    assert!(matches!(state_sum(&d, &q, &common::cochain("not_cocycle", 3)), Err(InvariantError::NotACocycle(_))));
    let one = Cochain::zero(3, 1, CoefficientGroup::Rational);
    assert_eq!(state_sum(&d, &q, &one), Err(InvariantError::ArityMismatch(1)));
    let z = state_sum(&d, &q, &common::cochain("zero_z3", 3)).unwrap();
    assert!(matches!(partition_function(&z, &[1.0], 1.0), Err(InvariantError::NonRationalExponents(_))));
    let zq = state_sum(&d, &q, &common::cochain("zero", 3)).unwrap();
    assert_eq!(partition_function(&zq, &[0.0], 1.0), Err(InvariantError::NonPositiveTemperature(0.0)));
    assert!(partition_function(&zq, &[1.0], -1.0).is_err());
    assert_eq!(temperature_grid(2.0, 1.0, 5, false), Err(InvariantError::InvalidGrid));
}

#[test]
fn grid_and_csv() {
    let g = temperature_grid(1.0, 100.0, 3, true).unwrap();
    assert_eq!((g[0], g[2]), (1.0, 100.0));
    assert!((g[1] - 10.0).abs() < 1e-12);
    assert_eq!(temperature_grid(1.0, 3.0, 3, false).unwrap(), vec![1.0, 2.0, 3.0]);
    assert_eq!(curve_to_csv(&[(1.0, 3.0), (2.5, 3.0)]), "T,Z\n1,3\n2.5,3\n");
}

#[test]
fn zmod_exponents_are_reduced() {
    let q = common::quandle("tetrahedral");
    for phi in cocycle_space(&q, 2, CoefficientGroup::ZMod(2)).unwrap() {
        let ss = state_sum(&common::diagram("granny.pd"), &q, &phi).unwrap();
        assert!(ss.terms.keys().all(|e| *e == r(0) || *e == r(1)));
    }
}

#[test]
fn coboundary_triviality() {
    let diagrams = ["trefoil.pd", "figure_eight.pd", "hopf.json", "granny.pd"].map(common::diagram);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for name in ["trivial2", "trivial3", "dihedral3", "dihedral4", "tetrahedral"] {
        let q = common::quandle(name);
        let n = q.order();
        let m = 3u64;
        let psis: Vec<Cochain> = if n <= 3 {
            // every 1-cochain with values in Z3
            (0..m.pow(n as u32))
                .map(|k| {
                    let mut psi = Cochain::zero(n, 1, CoefficientGroup::ZMod(m));
                    for x in 0..n {
                        psi.set(&[x], r(((k / m.pow(x as u32)) % m) as i64)).unwrap();
                    }
                    psi
                })
                .collect()
        } else {
            (0..20)
                .map(|_| {
                    let mut psi = Cochain::zero(n, 1, CoefficientGroup::ZMod(m));
                    for x in 0..n {
                        psi.set(&[x], r(rand::Rng::gen_range(&mut rng, 0..m as i64))).unwrap();
                    }
                    psi
                })
                .collect()
        };
        for psi in &psis {
            let phi = coboundary(&q, psi).unwrap();
            for d in &diagrams {
                let ss = state_sum(d, &q, &phi).unwrap();
                assert_eq!(ss.terms, BTreeMap::from([(r(0), enumerate_colorings(d, &q).len() as u64)]), "{name}");
            }
        }
    }
}
