use zappa::abelian::AbelianGroup;
use zappa::catalog::{klein_pair, s3_pair, swap_pair, trivial_g2_pair};
use zappa::category::DEFAULT_CAP;
use zappa::complexes::DoubleComplex;
use zappa::matched_pair::model_pair;
use zappa::spectral::{compare_ranks, pages, two_row_check, Orientation};

#[test]
fn path_category_rows_vanish() {
    for mp in [swap_pair(), trivial_g2_pair()] {
        let dc = DoubleComplex::new(&mp, 4, DEFAULT_CAP).unwrap();
        let total = dc.total().unwrap();
        let vh = pages(&dc, Orientation::Vh).unwrap();
        for n in 0..=3 {
            for p in 0..=n {
                if n - p >= 2 {
                    assert!(vh.second.get(p, n - p).unwrap().is_trivial(), "({p},{})", n - p);
                }
            }
            let check = two_row_check(&dc, &total, &vh.second, n).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }
}

#[test]
fn page_one_differentials_square_to_zero() {
    // checked on construction; both orientations on a few pairs
    for mp in [s3_pair(), swap_pair(), klein_pair(), model_pair(2).pair] {
        let dc = DoubleComplex::new(&mp, 3, DEFAULT_CAP).unwrap();
        for o in [Orientation::Hv, Orientation::Vh] {
            let p = pages(&dc, o).unwrap();
            assert!(!p.first.differentials.is_empty());
        }
    }
}

#[test]
fn ranks_bound_homology() {
    for mp in [s3_pair(), swap_pair(), klein_pair()] {
        let dc = DoubleComplex::new(&mp, 3, DEFAULT_CAP).unwrap();
        let h = dc.total().unwrap().homology_groups(2).unwrap();
        for o in [Orientation::Hv, Orientation::Vh] {
            let e2 = pages(&dc, o).unwrap().second;
            for c in compare_ranks(&e2, &h) {
                assert!(c.e2_rank >= c.h_rank);
            }
        }
    }
}

#[test]
fn kunneth_page_two() {
    // trivially matched ℤ/2 × ℤ/2: E² = H_p(ℤ/2) ⊗ H_q(ℤ/2) ⊕ Tor terms live in E²
    let dc = DoubleComplex::new(&klein_pair(), 3, DEFAULT_CAP).unwrap();
    let e2 = pages(&dc, Orientation::Hv).unwrap().second;
    let z2: AbelianGroup = "Z/2".parse().unwrap();
    assert_eq!(e2.get(0, 0), Some(&AbelianGroup::free(1)));
    assert_eq!(e2.get(1, 0), Some(&z2));
    assert_eq!(e2.get(0, 1), Some(&z2));
    assert_eq!(e2.get(1, 1), Some(&z2));
    assert!(e2.render().contains("Z/2"));
}

#[test]
fn model_pair_page_two_is_acyclic() {
    let dc = DoubleComplex::new(&model_pair(2).pair, 3, DEFAULT_CAP).unwrap();
    for o in [Orientation::Hv, Orientation::Vh] {
        let e2 = pages(&dc, o).unwrap().second;
        for (&(p, q), g) in &e2.groups {
            if p + q > 0 {
                assert!(g.is_trivial(), "{o} ({p},{q}) = {g}");
            }
        }
    }
}
