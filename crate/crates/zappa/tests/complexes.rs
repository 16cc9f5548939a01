use zappa::abelian::AbelianGroup;
use zappa::catalog::{klein_pair, s3_group, s3_pair, swap_pair, trivial_g2_pair};
use zappa::category::{cyclic_group, DEFAULT_CAP};
use zappa::complexes::{
    categorical_complex, cells, degeneracy_matrix, diagonal_complex, diagonal_degeneracy_matrix,
    diagonal_face_matrix, face_matrix, DoubleComplex,
};
use zappa::matched_pair::model_pair;

fn groups(s: &[&str]) -> Vec<AbelianGroup> {
    s.iter().map(|g| g.parse().unwrap()).collect()
}

#[test]
fn cyclic_group_homology() {
    for n in [2, 3] {
        let cx = categorical_complex(&cyclic_group(n), 3, DEFAULT_CAP).unwrap();
        let z = format!("Z/{n}");
        assert_eq!(cx.homology_groups(3).unwrap(), groups(&["Z", &z, "0", &z]));
    }
}

#[test]
fn s3_homology() {
    let cx = categorical_complex(&s3_group(), 2, DEFAULT_CAP).unwrap();
    assert_eq!(cx.homology_groups(2).unwrap(), groups(&["Z", "Z/2", "0"]));
}

#[test]
fn simplicial_identities_categorical() {
    let c = s3_group();
    let cx = categorical_complex(&c, 2, DEFAULT_CAP).unwrap();
    // ∂^i ∂^j = ∂^{j−1} ∂^i for i < j, on C_3 → C_1
    let k = 1;
    for j in 0..=k + 2 {
        for i in 0..j {
            let lhs = face_matrix(&c, &cx, k, i).unwrap().mul(&face_matrix(&c, &cx, k + 1, j).unwrap());
            let rhs = face_matrix(&c, &cx, k, j - 1).unwrap().mul(&face_matrix(&c, &cx, k + 1, i).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    // ∂^i σ^j
    let k = 1;
    for j in 0..=k {
        for i in 0..=k + 1 {
            let m = face_matrix(&c, &cx, k, i).unwrap().mul(&degeneracy_matrix(&c, &cx, k, j).unwrap());
            if i == j || i == j + 1 {
                assert!(m.sub(&zappa::abelian::IntMatrix::identity(cx.dim(k))).is_zero());
            }
        }
    }
}

#[test]
fn double_complex_builds() {
    for mp in [s3_pair(), trivial_g2_pair(), swap_pair(), model_pair(2).pair, klein_pair()] {
        DoubleComplex::new(&mp, 2, DEFAULT_CAP).unwrap();
    }
}

#[test]
fn bisimplicial_anticommutation() {
    // signed vertical faces anticommute with horizontal ones: C_{1,2} → C_{0,1}
    let dc = DoubleComplex::new(&swap_pair(), 3, DEFAULT_CAP).unwrap();
    for i in 0..=2 {
        for j in 0..=1 {
            let hv = dc.h_face_matrix(0, 1, j).unwrap().mul(&dc.v_face_matrix(1, 1, i, true).unwrap());
            let vh = dc.v_face_matrix(0, 1, i, true).unwrap().mul(&dc.h_face_matrix(0, 2, j).unwrap());
            assert!(hv.add(&vh).is_zero(), "i={i} j={j}");
        }
    }
    for i in 0..=1 {
        for j in 0..=1 {
            let vh = dc.v_degeneracy_matrix(2, 1, i, true).unwrap().mul(&dc.h_degeneracy_matrix(1, 1, j).unwrap());
            let hv = dc.h_degeneracy_matrix(1, 2, j).unwrap().mul(&dc.v_degeneracy_matrix(1, 1, i, true).unwrap());
            assert!(vh.add(&hv).is_zero(), "i={i} j={j}");
        }
    }
}

#[test]
fn diagonal_and_total_agree_with_product() {
    for mp in [s3_pair(), trivial_g2_pair(), swap_pair(), klein_pair(), model_pair(2).pair] {
        let zs = mp.zappa_szep().unwrap();
        let prod = categorical_complex(&zs.category, 2, DEFAULT_CAP).unwrap().homology_groups(2).unwrap();
        let diag = diagonal_complex(&mp, 2, DEFAULT_CAP).unwrap().homology_groups(2).unwrap();
        let tot = DoubleComplex::new(&mp, 2, DEFAULT_CAP).unwrap().total().unwrap().homology_groups(2).unwrap();
        assert_eq!(prod, diag);
        assert_eq!(prod, tot);
    }
}

#[test]
fn diagonal_simplicial_identities() {
    let mp = s3_pair();
    let cx = diagonal_complex(&mp, 1, DEFAULT_CAP).unwrap();
    for j in 0..=2 {
        for i in 0..j {
            let lhs = diagonal_face_matrix(&mp, &cx, 0, i).unwrap().mul(&diagonal_face_matrix(&mp, &cx, 1, j).unwrap());
            let rhs =
                diagonal_face_matrix(&mp, &cx, 0, j - 1).unwrap().mul(&diagonal_face_matrix(&mp, &cx, 1, i).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
    let id = zappa::abelian::IntMatrix::identity(cx.dim(0));
    let f0 = diagonal_face_matrix(&mp, &cx, 0, 0).unwrap();
    let s0 = diagonal_degeneracy_matrix(&mp, &cx, 0, 0).unwrap();
    assert_eq!(f0.mul(&s0), id);
}

#[test]
fn cell_counts() {
    let mp = s3_pair();
    assert_eq!(cells(&mp, 2, 1, DEFAULT_CAP).unwrap().len(), 12);
    assert_eq!(cells(&mp, 0, 0, DEFAULT_CAP).unwrap().len(), 1);
    assert!(cells(&mp, 3, 3, 10).unwrap_err().is_cap());
}
