use proptest::prelude::*;
use zappa::abelian::AbelianGroup;
use zappa::category::{path_category, DEFAULT_CAP};
use zappa::complexes::categorical_complex;
use zappa::gen::{random_dag, random_weighted_graph, strongly_connected_graph};
use zappa::odometer::{Path, Split, WeightedGraph, DEFAULT_GCD_BOUND};

fn loop_graph(p: u64) -> WeightedGraph {
    WeightedGraph::new(&["v"], &[("e", "v", "v", p)]).unwrap()
}

fn z(n: usize) -> AbelianGroup {
    AbelianGroup::free(n)
}

#[test]
fn single_loop_closed_forms() {
    let r = loop_graph(1).odometer_homology(DEFAULT_GCD_BOUND).unwrap();
    assert_eq!((r.h0.clone(), r.h1.resolved.clone(), r.h2.clone()), (z(1), Some(z(2)), z(1)));

    let r = loop_graph(2).odometer_homology(DEFAULT_GCD_BOUND).unwrap();
    assert_eq!((r.h0.clone(), r.h1.resolved.clone(), r.h2.clone()), (z(1), Some(z(1)), z(0)));
    assert_eq!(r.gcd.met_at, Some(1));

    // p = 4: the sequence 0 → ℤ → H₁ → ℤ/3 → 0 is reported, not resolved
    let r = loop_graph(4).odometer_homology(DEFAULT_GCD_BOUND).unwrap();
    assert_eq!(r.h1.quotient, AbelianGroup::cyclic(3));
    assert_eq!(r.h1.split, Split::Unknown);
    assert_eq!(r.h1.resolved, None);
    assert!(r.consistent);
}

#[test]
fn matrix_m_examples() {
    assert_eq!(loop_graph(5).matrix_m().to_dense_i64(), vec![vec![4]]);
    assert_eq!(loop_graph(1).matrix_m().to_dense_i64(), vec![vec![0]]);
}

#[test]
fn graph_homology_examples() {
    assert_eq!(loop_graph(3).graph_homology().unwrap(), (z(1), z(1)));
    let tree = WeightedGraph::new(&["a", "b", "c", "d"], &[("x", "b", "a", 1), ("y", "c", "a", 2), ("w", "d", "c", 1)])
        .unwrap();
    assert_eq!(tree.graph_homology().unwrap(), (z(1), z(0)));
}

#[test]
fn order_and_rho_examples() {
    let g = loop_graph(2);
    let e = g.edge_path(0);
    let xs = vec![g.odometer_path(e.clone(), 1).unwrap(), g.odometer_path(e.clone(), 0).unwrap()];
    let (order, rho) = g.order_and_rho(&xs).unwrap();
    assert_eq!(order, 4);
    assert_eq!(rho, vec![1, 1, 2]);
    assert_eq!(g.rho_by_orbit(&xs, 1000).unwrap(), Some(rho));

    let (order, rho) = g.order_and_rho(&xs[..1]).unwrap();
    assert_eq!((order, rho[0]), (2, 1));

    let g1 = loop_graph(1);
    let xs = vec![g1.odometer_path(g1.edge_path(0), 0).unwrap(); 3];
    assert_eq!(g1.order_and_rho(&xs).unwrap(), (1, vec![1; 4]));
}

#[test]
fn vertex_mismatch() {
    let g = WeightedGraph::new(&["u", "v"], &[("e", "u", "v", 2)]).unwrap();
    let xi = g.odometer_path(g.edge_path(0), 0).unwrap();
    assert!(matches!(g.act(0, 1, &xi), Err(zappa::Error::VertexMismatch(_))));
    assert!(g.act(1, 1, &xi).is_ok());
}

#[test]
fn theta_round_trip_and_special_case() {
    let g = WeightedGraph::new(&["v"], &[("e", "v", "v", 2), ("f", "v", "v", 3)]).unwrap();
    let xi = g.theta(&[(0, 1), (1, 2), (0, 0)]).unwrap();
    assert_eq!(xi.offset, 1 + 2 * 2);
    assert_eq!(g.theta_inverse(&xi), vec![(0, 1), (1, 2), (0, 0)]);
    // a ▷ (μ, 0) = ⌊a / p(μ)⌋
    let mu = g.path(&[0, 1]).unwrap();
    for a in -20..20 {
        let (y, c) = g.act(0, a, &g.odometer_path(mu.clone(), 0).unwrap()).unwrap();
        assert_eq!((y.offset, c), (a.rem_euclid(6), a.div_euclid(6)));
    }
}

#[test]
fn weight_one_delta_is_the_path_category_boundary() {
    for seed in 0..10 {
        let dag = random_dag(seed, 4, 0.5);
        let raw = zappa::odometer::RawWeightedGraph {
            vertices: dag.vertices.clone(),
            edges: dag
                .edges
                .iter()
                .map(|e| zappa::odometer::RawWeightedEdge { id: e.id.clone(), src: e.src.clone(), dst: e.dst.clone(), p: 1 })
                .collect(),
        };
        let g = WeightedGraph::from_raw(&raw).unwrap();
        let weighted = g.delta_complex(3, 3, true, DEFAULT_CAP).unwrap();
        let plain = g.delta_complex(3, 3, false, DEFAULT_CAP).unwrap();
        for k in 0..3 {
            assert_eq!(weighted.boundary(k), plain.boundary(k));
        }
        // length ≤ 3 covers every path of a 4-vertex DAG
        let cat = categorical_complex(&path_category(&dag).unwrap(), 2, DEFAULT_CAP).unwrap();
        assert_eq!(plain.homology_groups(2).unwrap(), cat.homology_groups(2).unwrap());
    }
}

#[test]
fn truncated_complexes_match_closed_forms() {
    // E^{vh,2}_{0,•} = (H_0(E), H_1(E), 0, …), E^{vh,2}_{1,•} = (coker M, ker M, 0, …)
    for seed in 0..12 {
        let g = random_weighted_graph(seed, 3, 4, 3);
        let (h0, h1) = g.graph_homology().unwrap();
        let (ker_m, coker_m) = g.m_kernel_cokernel();
        let plain = g.delta_complex(3, 3, false, DEFAULT_CAP).unwrap();
        let weighted = g.delta_complex(3, 3, true, DEFAULT_CAP).unwrap();
        assert_eq!(plain.homology_groups(2).unwrap(), vec![h0, h1, z(0)], "seed {seed}");
        assert_eq!(weighted.homology_groups(2).unwrap(), vec![coker_m, ker_m, z(0)], "seed {seed}");
    }
}

#[test]
fn decomposition_identity() {
    let r = loop_graph(2).verify_decomposition(3, DEFAULT_CAP).unwrap();
    assert!(r.holds(), "{r:?}");
    assert_eq!(r.checked, 3);
    for seed in 0..10 {
        let g = random_weighted_graph(seed, 4, 6, 3);
        let r = g.verify_decomposition(3, DEFAULT_CAP).unwrap();
        assert!(r.holds(), "seed {seed}: {r:?}");
    }
}

#[test]
fn strongly_connected_corollary() {
    for seed in 0..20 {
        let g = strongly_connected_graph(seed, 4, 3, 3);
        let chi = g.euler_characteristic();
        let r = g.odometer_homology(DEFAULT_GCD_BOUND).unwrap();
        assert_eq!(r.h0, z(1));
        assert_eq!(r.h1.sub, z((1 - chi) as usize));
        assert_eq!(r.h2, z((-chi) as usize), "seed {seed}");
        assert_eq!(r.h1.quotient.free_rank, 0);
        assert!(r.h1.quotient.torsion.len() <= 1, "coker M cyclic");
        assert!(r.consistent);
        assert_eq!(g.coker_m_by_paths(3).unwrap(), r.h1.quotient);
    }
    // all weights 1: H₁ = ℤ^{2−χ}, H₂ = ℤ^{1−χ}
    for seed in 0..10 {
        let g = strongly_connected_graph(seed, 4, 3, 1);
        let chi = g.euler_characteristic();
        let r = g.odometer_homology(DEFAULT_GCD_BOUND).unwrap();
        assert_eq!(r.h1.resolved, Some(z((2 - chi) as usize)));
        assert_eq!(r.h2, z((1 - chi) as usize));
    }
}

#[test]
fn json_round_trip() {
    let g = loop_graph(2);
    let s = serde_json::to_string(&g.to_raw()).unwrap();
    assert_eq!(WeightedGraph::from_json(&s).unwrap(), g);
    assert!(WeightedGraph::from_json(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","dst":"v","p":0}]}"#).is_err());
    assert!(WeightedGraph::from_json(r#"{"vertices":["v"],"edges":[{"id":"e","src":"v","dst":"w","p":1}]}"#).is_err());
}

fn arb_graph() -> impl Strategy<Value = WeightedGraph> {
    any::<u64>().prop_map(|s| random_weighted_graph(s, 3, 4, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_additive(g in arb_graph(), a in -50i128..50, b in -50i128..50, pick in any::<prop::sample::Index>(), m in any::<u64>()) {
        let paths: Vec<Path> = g.paths(3);
        let mu = pick.get(&paths).clone();
        let p = g.path_weight(&mu).unwrap();
        let xi = g.odometer_path(mu.clone(), (m as i128).rem_euclid(p)).unwrap();
        let (y, c1) = g.act(mu.r, b, &xi).unwrap();
        let (z, c2) = g.act(mu.r, a, &y).unwrap();
        let (w, c) = g.act(mu.r, a + b, &xi).unwrap();
        prop_assert_eq!(z, w);
        prop_assert_eq!(c1 + c2, c);
    }

    #[test]
    fn action_is_self_similar(g in arb_graph(), a in -50i128..50, seed in any::<u64>()) {
        // acting on (μ, m)(ν, n) is acting on (μ, m) then by the carry on (ν, n)
        let paths = g.paths(2);
        let mu = &paths[(seed % paths.len() as u64) as usize];
        let cont: Vec<&Path> = paths.iter().filter(|p| p.r == mu.s).collect();
        let nu = cont[((seed >> 20) % cont.len() as u64) as usize];
        let x = g.odometer_path(mu.clone(), (seed as i128 >> 3).rem_euclid(g.path_weight(mu).unwrap())).unwrap();
        let y = g.odometer_path(nu.clone(), (seed as i128 >> 9).rem_euclid(g.path_weight(nu).unwrap())).unwrap();
        let xy = g.compose_odometer(&x, &y).unwrap();
        let (x2, carry) = g.act(mu.r, a, &x).unwrap();
        let (y2, carry2) = g.act(mu.s, carry, &y).unwrap();
        let (xy2, carry3) = g.act(mu.r, a, &xy).unwrap();
        prop_assert_eq!(xy2, g.compose_odometer(&x2, &y2).unwrap());
        prop_assert_eq!(carry2, carry3);
    }

    #[test]
    fn order_and_rho_closed_forms_match_orbits(g in arb_graph(), seed in any::<u64>(), len in 1usize..4) {
        let paths = g.paths(2);
        let mut xs = Vec::new();
        let mut s = seed;
        let mut at: Option<usize> = None;
        for _ in 0..len {
            let cands: Vec<&Path> = paths.iter().filter(|p| at.is_none_or(|v| p.r == v)).collect();
            let mu = cands[(s % cands.len() as u64) as usize].clone();
            s /= 7;
            let off = (s as i128).rem_euclid(g.path_weight(&mu).unwrap());
            at = Some(mu.s);
            xs.push(g.odometer_path(mu, off).unwrap());
        }
        let (order, rho) = g.order_and_rho(&xs).unwrap();
        prop_assert_eq!(g.order_by_orbit(&xs, 10_000).unwrap(), Some(order));
        prop_assert_eq!(g.rho_by_orbit(&xs, 10_000).unwrap(), Some(rho));
    }

    #[test]
    fn coker_m_by_paths_agrees(g in arb_graph()) {
        prop_assert_eq!(g.coker_m_by_paths(3).unwrap(), g.m_kernel_cokernel().1);
    }
}
