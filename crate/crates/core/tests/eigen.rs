use spincm_core::linalg::q;
use spincm_core::opalg::{apply, gauge_compare, Gauge, RadialEngine};
use spincm_core::rootsys::{build_root_system, casimir_value, dominant_weights_up_to, Weight};
use spincm_core::spectrum::{
    character_section, default_grid, exact_inner, orthogonality, quadrature_inner, spectrum_table, standard_ops,
    verify_commutant, SpinSystem,
};

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

#[test]
fn characters_are_radial_eigenfunctions() {
    for n in [2, 3] {
        let rs = build_root_system(n).unwrap();
        let mut eng = RadialEngine::new(n, &Weight::zero(n - 1)).unwrap();
        let c2 = eng.casimir().unwrap();
        for lambda in dominant_weights_up_to(&rs, 2) {
            let chi = character_section(&rs, &lambda).unwrap();
            let z = casimir_value(&rs, &lambda).unwrap();
            assert!(apply(&c2, &chi).unwrap().sub_fourier(&chi.scale(&z)).is_zero(), "{lambda}");
        }
    }
}

#[test]
fn twisted_gauge_constant_is_half_rho_squared() {
    for (n, mu) in [(2, w(&[2])), (3, w(&[1, 1])), (3, w(&[0, 0]))] {
        let rs = build_root_system(n).unwrap();
        let mut eng = RadialEngine::new(n, &mu).unwrap();
        let (gauge, c0) = gauge_compare(&mut eng).unwrap().selected().unwrap();
        assert_eq!(gauge, Gauge::DeltaTwisted);
        assert_eq!(c0, rs.form(&rs.rho, &rs.rho) * q(1) / q(2));
    }
}

#[test]
fn eigenfunctions_satisfy_both_equations() {
    let sys = SpinSystem::new(3, &w(&[1, 1]), 400).unwrap();
    for lambda in [w(&[1, 0]), w(&[1, 1]), w(&[3, 0])] {
        for (a, f) in sys.eigenfunctions(&lambda).unwrap().iter().enumerate() {
            let rep = sys.verify(&lambda, a, f).unwrap();
            assert!(rep.radial_ok && rep.cm_ok && rep.weyl_equivariant, "{rep:?}");
        }
    }
}

#[test]
fn quadrature_matches_exact_contraction() {
    let sys = SpinSystem::new(2, &w(&[2]), 400).unwrap();
    let rs = sys.rs().clone();
    let f = &sys.eigenfunctions(&w(&[2])).unwrap()[0];
    let g = &sys.eigenfunctions(&w(&[3])).unwrap()[0];
    let grid = default_grid(&rs, f, f);
    let quad = quadrature_inner(&rs, f, f, grid).unwrap();
    let exact = exact_inner(&rs, f, f);
    assert!(exact[(0, 0)] > q(0));
    assert!((quad[0][0].re - spincm_core::linalg::q_to_f64(&exact[(0, 0)])).abs() < 1e-9);
    let cross = quadrature_inner(&rs, f, g, default_grid(&rs, f, g)).unwrap();
    assert!(cross[0][0].norm() < 1e-9);
}

#[test]
fn gram_is_block_diagonal() {
    let rep = orthogonality(3, &w(&[1, 1]), 1, None, 400).unwrap();
    assert!(rep.pass, "off {} dev {}", rep.max_off_block, rep.max_deviation);
    assert_eq!(rep.labels.len(), 4);
}

#[test]
fn spectrum_rows_and_monotone_energies() {
    let rows = spectrum_table(2, &w(&[2]), 4, true, 400).unwrap();
    let lambdas: Vec<String> = rows.iter().map(|r| r.lambda.to_string()).collect();
    assert_eq!(lambdas, ["1", "2", "3", "4"]);
    assert!(rows.iter().all(|r| r.multiplicity == 1 && r.verified == Some(true)));
    let energies: Vec<f64> = rows
        .iter()
        .map(|r| r.energy_num.parse::<f64>().unwrap() / r.energy_den.parse::<f64>().unwrap())
        .collect();
    assert!(energies.windows(2).all(|p| p[0] <= p[1]));
    let rows = spectrum_table(3, &w(&[1, 1]), 1, false, 400).unwrap();
    let adj = rows.iter().find(|r| r.lambda == w(&[1, 1])).unwrap();
    assert_eq!(adj.multiplicity, 2);
    assert!(spectrum_table(2, &w(&[1]), 2, false, 400).is_err());
}

#[test]
fn commutant_on_sl2() {
    let mut sys = SpinSystem::new(2, &w(&[2]), 400).unwrap();
    let ops = standard_ops(&mut sys, 3).unwrap();
    let rep = verify_commutant(&sys, 3, &ops).unwrap();
    assert!(rep.pass);
    assert!(rep.actions.iter().all(|a| a.scalar.is_some()));
}
