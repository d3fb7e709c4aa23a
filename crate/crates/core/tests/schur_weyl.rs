use spincm_core::linalg::QMatrix;
use spincm_core::rootsys::Weight;
use spincm_core::schurweyl::*;

#[test]
fn one_plus_p_for_all_partitions_up_to_four() {
    for n in 2..=4 {
        for p in partitions(n as u32, n) {
            let rep = check_t_equals_one_plus_p(n, &p).unwrap();
            assert!(rep.pass, "{p:?}: {rep:?}");
        }
    }
}

#[test]
fn t12_spectrum_on_standard_representation() {
    let t = t_matrix(3, &Weight(vec![1, 1]), 0, 1).unwrap();
    // eigenvalues {0, 2}: t(t - 2) = 0 with trace 2
    let two = QMatrix::identity(2).scale(&spincm_core::linalg::q(2));
    assert!((&t * &(&t - &two)).is_zero());
    assert_eq!(t.trace(), spincm_core::linalg::q(2));
}

#[test]
fn bracket_identity_on_catalog() {
    for (n, mu) in [(3, vec![1, 1]), (3, vec![3, 0]), (3, vec![2, 2]), (4, vec![1, 0, 1])] {
        let reports = check_bracket_all(n, &Weight(mu)).unwrap();
        assert!(reports.iter().all(|r| r.zero));
    }
}

#[test]
fn spin_chain_couplings() {
    let rep = spin_chain_potential_check(2).unwrap();
    assert!(rep.pass);
    let couplings: Vec<_> = rep.entries.iter().map(|e| e.couplings.clone().unwrap()).collect();
    assert_eq!(couplings, vec![vec!["2".to_string()], vec!["0".to_string()]]);
    assert!(spin_chain_potential_check(3).unwrap().pass);
}

#[test]
fn tensor_model_of_zero_weights() {
    for (n, big_n) in [(2, 2), (2, 4), (3, 3), (3, 6)] {
        let b = TensorZeroBasis::new(n, big_n).unwrap();
        assert_eq!(b.len() as u64, b.expected_len());
    }
}
