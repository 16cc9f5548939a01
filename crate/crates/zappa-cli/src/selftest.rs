//! Seeded property suite behind `zappa selftest`. Output depends only on the
//! seed and the number of cases.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;
use zappa::catalog::self_similar_pair;
use zappa::category::{cyclic_group, path_category, FiniteCategory};
use zappa::chain_maps::Theories;
use zappa::cocycle::{coboundary, is_cohomologous, random_cochain1, validate_categorical_2cocycle, Coefficients};
use zappa::gen::{random_dag, random_weighted_graph, rng, strongly_connected_graph};

#[derive(Debug, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn render(&self) -> String {
        let mut s = format!("selftest seed {}\n", self.seed);
        for suite in &self.suites {
            let ok = suite.cases - suite.failures.len();
            writeln!(s, "  {:<24} {ok}/{}", suite.name, suite.cases).unwrap();
            for f in &suite.failures {
                writeln!(s, "    FAIL {f}").unwrap();
            }
        }
        s.push_str(if self.passed() { "all passed\n" } else { "FAILED\n" });
        s
    }
}

fn seeds(r: &mut impl Rng, n: usize) -> Vec<u64> {
    (0..n).map(|_| r.gen()).collect()
}

fn suite(name: &'static str, seeds: &[u64], mut case: impl FnMut(u64) -> Result<(), String>) -> Suite {
    let failures = seeds
        .iter()
        .filter_map(|&s| match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| case(s))) {
            Ok(Ok(())) => None,
            Ok(Err(e)) => Some(format!("seed {s}: {e}")),
            Err(_) => Some(format!("seed {s}: panicked")),
        })
        .collect();
    Suite { name, cases: seeds.len(), failures }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn category_round_trip(cat: &FiniteCategory) -> Result<(), String> {
    let back = FiniteCategory::from_raw(&cat.to_raw()).map_err(|e| e.to_string())?;
    check(back.to_raw() == cat.to_raw(), || "JSON round trip changed the category".into())
}

pub fn run(seed: u64, cases: usize, cap: u128) -> Summary {
    let mut r = rng(seed);
    let mut suites = Vec::new();

    suites.push(suite("path categories", &seeds(&mut r, cases), |s| {
        let cat = path_category(&random_dag(s, 5, 0.5)).map_err(|e| e.to_string())?;
        category_round_trip(&cat)?;
        let listed = cat.composable_tuples(3, cap).map_err(|e| e.to_string())?.len() as u128;
        check(listed == cat.count_tuples(3), || format!("{listed} triples listed, {} counted", cat.count_tuples(3)))
    }));

    suites.push(suite("theory comparison", &seeds(&mut r, cases), |s| {
        // ℤ/2 bundle over a random DAG fixing every edge; the restriction is
        // either trivial or the acting element itself
        let dag = random_dag(s, 4, 0.5);
        let flip = s % 2 == 1;
        let mp = self_similar_pair(&dag, &["e", "t"], &[vec![0, 1], vec![1, 0]], 0, |g, e| {
            (e, if flip { g } else { 0 })
        })
        .map_err(|e| e.to_string())?;
        let th = Theories::new(&mp, 1, cap).map_err(|e| e.to_string())?;
        let (pi, psi, nabla) =
            (th.pi().map_err(|e| e.to_string())?, th.psi().map_err(|e| e.to_string())?, th.eilenberg_zilber().map_err(|e| e.to_string())?);
        for k in 0..=1 {
            let hp = pi.on_homology(k, &th.diagonal, &th.product).map_err(|e| e.to_string())?;
            let hs = psi.on_homology(k, &th.product, &th.total).map_err(|e| e.to_string())?;
            let hn = nabla.on_homology(k, &th.total, &th.diagonal).map_err(|e| e.to_string())?;
            check(hp.is_isomorphism() && hs.is_isomorphism() && hn.is_isomorphism(), || format!("degree {k}: not iso"))?;
        }
        Ok(())
    }));

    suites.push(suite("odometer orbits", &seeds(&mut r, cases), |s| {
        let g = random_weighted_graph(s, 3, 4, 4);
        let paths = g.paths(2);
        let mu = paths[(s % paths.len() as u64) as usize].clone();
        let p = g.path_weight(&mu).map_err(|e| e.to_string())?;
        let xi = g.odometer_path(mu, (s as i128 >> 7).rem_euclid(p)).map_err(|e| e.to_string())?;
        let (order, rho) = g.order_and_rho(std::slice::from_ref(&xi)).map_err(|e| e.to_string())?;
        let orbit = g.order_by_orbit(std::slice::from_ref(&xi), 100_000).map_err(|e| e.to_string())?;
        check(orbit == Some(order), || format!("order {order} vs orbit {orbit:?}"))?;
        let by_orbit = g.rho_by_orbit(std::slice::from_ref(&xi), 100_000).map_err(|e| e.to_string())?;
        check(by_orbit.as_ref() == Some(&rho), || format!("rho {rho:?} vs orbit {by_orbit:?}"))
    }));

    suites.push(suite("odometer closed forms", &seeds(&mut r, cases), |s| {
        let g = strongly_connected_graph(s, 4, 3, 3);
        let report = g.odometer_homology(zappa::odometer::DEFAULT_GCD_BOUND).map_err(|e| e.to_string())?;
        check(report.consistent, || "closed forms inconsistent".into())?;
        let by_paths = g.coker_m_by_paths(3).map_err(|e| e.to_string())?;
        check(by_paths == report.h1.quotient, || format!("coker M {} vs {by_paths}", report.h1.quotient))
    }));

    suites.push(suite("coboundaries", &seeds(&mut r, cases), |s| {
        let cat = cyclic_group(2 + (s % 5) as usize);
        let n = 2 + (s >> 8) % 10;
        let b = random_cochain1(&cat, n, &mut rng(s));
        let c = coboundary(&cat, &b);
        validate_categorical_2cocycle(&cat, &c).map_err(|e| e.to_string())?;
        let res = is_cohomologous(&cat, &Default::default(), &c, Coefficients::Cyclic(n)).map_err(|e| e.to_string())?;
        check(res.is_yes(), || "d¹b not recognised as a coboundary".into())
    }));

    Summary { seed, suites }
}
