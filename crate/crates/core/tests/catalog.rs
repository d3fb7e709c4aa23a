use spincm_core::intertwine::{equivariance_residual, hom_dimension, hom_space, multiplicity_oracle};
use spincm_core::linalg::{q, QMatrix};
use spincm_core::repmodel::{build_irrep, check_relations, character, weight_multiplicity_oracle, zero_weight_space};
use spincm_core::rootsys::{build_root_system, casimir_value, dominant_weights_up_to, weyl_dim, Weight};

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn catalog() -> Vec<(usize, Weight)> {
    let mut out = Vec::new();
    for m in 1..=4 {
        out.push((2, w(&[m])));
    }
    for c in [[1, 0], [0, 1], [1, 1], [3, 0], [2, 1]] {
        out.push((3, w(&c)));
    }
    for c in [[1, 0, 0], [0, 1, 0], [1, 0, 1]] {
        out.push((4, w(&c)));
    }
    out
}

#[test]
fn catalog_irreps_satisfy_relations() {
    for (n, mu) in catalog() {
        let rs = build_root_system(n).unwrap();
        let v = build_irrep(n, &mu).unwrap();
        assert!(check_relations(&v).is_empty(), "{n} {mu}: {:?}", check_relations(&v));
        assert_eq!(v.dim as u64, weyl_dim(&rs, &mu).unwrap());
        let c = casimir_value(&rs, &mu).unwrap();
        assert_eq!(v.casimir_matrix(), QMatrix::identity(v.dim).scale(&c));
    }
}

#[test]
fn catalog_weights_match_freudenthal() {
    for (n, mu) in catalog() {
        let rs = build_root_system(n).unwrap();
        let v = build_irrep(n, &mu).unwrap();
        let ch = character(&rs, &mu).unwrap();
        for (nu, m) in v.weight_histogram() {
            assert_eq!(m as u64, ch.multiplicity(&rs, &nu), "{mu} at {nu}");
        }
        let zero = zero_weight_space(&v);
        assert_eq!(zero.dim() as u64, weight_multiplicity_oracle(n, &mu, &Weight::zero(n - 1)).unwrap());
    }
}

#[test]
fn root_vectors_close_to_coroots() {
    for (n, mu) in catalog() {
        let v = build_irrep(n, &mu).unwrap();
        for index in 0..v.rs.positive_roots.len() {
            let x = v.root_vector(spincm_core::rootsys::Root { index, positive: true });
            let y = v.root_vector(spincm_core::rootsys::Root { index, positive: false });
            assert_eq!(x.commutator(&y), v.coroot(index), "{mu} root {index}");
        }
    }
}

#[test]
fn weyl_lifts_form_symmetric_group_on_zero_weights() {
    for (n, mu) in catalog() {
        let v = build_irrep(n, &mu).unwrap();
        let zero = zero_weight_space(&v);
        if zero.is_empty() {
            continue;
        }
        let id = QMatrix::identity(zero.dim());
        let s = &zero.weyl_action;
        for i in 0..s.len() {
            assert_eq!(&s[i] * &s[i], id);
            for j in i + 1..s.len() {
                if j == i + 1 {
                    assert_eq!(&(&s[i] * &s[j]) * &s[i], &(&s[j] * &s[i]) * &s[j]);
                } else {
                    assert_eq!(&s[i] * &s[j], &s[j] * &s[i]);
                }
            }
        }
    }
}

#[test]
fn weyl_lifts_permute_weight_spaces() {
    let v = build_irrep(3, &w(&[2, 1])).unwrap();
    for i in 0..2 {
        let lift = v.weyl_lift(i);
        for b in 0..v.dim {
            let image = v.rs.reflect(&v.basis_weights[b], i);
            for r in 0..v.dim {
                if lift[(r, b)] != q(0) {
                    assert_eq!(v.basis_weights[r], image);
                }
            }
        }
    }
}

#[test]
fn intertwiner_counts_match_oracle() {
    for (n, mu) in [(2, w(&[2])), (2, w(&[4])), (3, w(&[1, 1])), (3, w(&[3, 0]))] {
        let rs = build_root_system(n).unwrap();
        for lambda in dominant_weights_up_to(&rs, 2) {
            let basis = hom_space(n, &lambda, &mu).unwrap();
            assert_eq!(basis.len() as u64, multiplicity_oracle(n, &lambda, &mu).unwrap(), "{lambda} {mu}");
            for k in &basis.maps {
                assert!(equivariance_residual(&basis.l, &basis.v, k).is_empty());
            }
        }
    }
}

#[test]
fn truncated_counts_beyond_cap() {
    let n = 3;
    let mu = w(&[1, 1]);
    for lambda in [w(&[3, 3]), w(&[3, 2]), w(&[0, 3])] {
        assert_eq!(
            hom_dimension(n, &lambda, &mu, 400).unwrap() as u64,
            multiplicity_oracle(n, &lambda, &mu).unwrap()
        );
    }
}

#[test]
fn casimir_reflection_invariance() {
    for n in 2..=4 {
        let rs = build_root_system(n).unwrap();
        for lambda in dominant_weights_up_to(&rs, 2) {
            let shifted = &lambda + &rs.rho;
            let norm = rs.form(&shifted, &shifted);
            for word in rs.weyl_group() {
                let image = rs.apply_word(&word, &shifted);
                assert_eq!(rs.form(&image, &image), norm);
            }
        }
    }
}
