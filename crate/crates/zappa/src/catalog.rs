//! Standard small examples used by tests, the CLI and the corpus.

use std::collections::HashMap;

use crate::category::{cyclic_group, monoid_category, path_category, FiniteCategory, Graph, Morphism};
use crate::error::{Error, Result};
use crate::matched_pair::{MatchedPair, RawMatchedPair};

/// The chain graph `0 ← 1 ← 2` with edges `e0: 1 → 0`, `e1: 2 → 1`.
pub fn g2() -> Graph {
    Graph::new(&["0", "1", "2"], &[("e0", "1", "0"), ("e1", "2", "1")])
}

pub fn g2_category() -> FiniteCategory {
    path_category(&g2()).expect("acyclic")
}

/// `(C, C⁰)` over the path category of `G₂`.
pub fn trivial_g2_pair() -> MatchedPair {
    MatchedPair::trivial(&g2_category())
}

/// `ℤ/2 = {e, t}` as a one-object category.
pub fn z2_named() -> FiniteCategory {
    monoid_category(&["e", "t"], &[vec![0, 1], vec![1, 0]], 0).unwrap()
}

/// `ℤ/3 = {1, r, r2}` as a one-object category.
pub fn z3_named() -> FiniteCategory {
    monoid_category(&["1", "r", "r2"], &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 0).unwrap()
}

/// `S₃ = ℤ/3 ⋊ ℤ/2`: `C = ℤ/2` acts on `D = ℤ/3` by inversion, `▷` trivial.
pub fn s3_pair() -> MatchedPair {
    let c = z2_named();
    let d = z3_named();
    MatchedPair::new(c, d, |ci, di| Some(if ci == 0 { di } else { (3 - di) % 3 }), |ci, _| Some(ci)).unwrap()
}

/// `S₃` as permutations of `{0,1,2}`, built independently of any matched pair.
pub fn s3_group() -> FiniteCategory {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index: HashMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| index[&[a[b[0]], a[b[1]], a[b[2]]]]).collect())
        .collect();
    let names: Vec<String> = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    monoid_category(&refs, &table, 0).unwrap()
}

/// Trivially matched `ℤ/2 × ℤ/2`.
pub fn klein_pair() -> MatchedPair {
    MatchedPair::trivially_matched(&cyclic_group(2), &cyclic_group(2)).unwrap()
}

/// The S₃ pair with `t ◁ r` changed to `r`, which breaks MP2 at `(t, r, r)`.
pub fn mp2_broken() -> RawMatchedPair {
    let mut raw = s3_pair().to_raw();
    for row in raw.act_l.iter_mut() {
        if row[0] == "t" && row[1] == "r" {
            row[2] = "r".into();
        }
    }
    raw
}

/// A pair whose product is not left cancellative: `C = {1, c}` with `cc = c`
/// collapses `z, w` of the left-zero monoid `D = {1, z, w}` onto `z`.
pub fn collapsing_pair() -> MatchedPair {
    let c = monoid_category(&["1", "c"], &[vec![0, 1], vec![1, 1]], 0).unwrap();
    let d = monoid_category(&["1", "z", "w"], &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap();
    MatchedPair::new(c, d, |ci, di| Some(if ci == 1 && di == 2 { 1 } else { di }), |ci, _| Some(ci)).unwrap()
}

/// A group bundle: the group `elements` at every vertex, morphisms named
/// `{g}@{v}` and ordered vertex-major.
pub fn group_bundle(vertices: &[String], elements: &[&str], table: &[Vec<usize>], unit: usize) -> FiniteCategory {
    let n = elements.len();
    let morphisms = (0..vertices.len())
        .flat_map(|v| elements.iter().map(move |g| Morphism { id: format!("{g}@{}", vertices[v]), src: v, dst: v }))
        .collect();
    let identity = (0..vertices.len()).map(|v| v * n + unit).collect();
    FiniteCategory::build(vertices.to_vec(), morphisms, identity, |f, g| Some((f / n) * n + table[f % n][g % n]))
        .expect("group bundle")
}

/// Self-similar pair of a group bundle acting on the path category of an
/// acyclic graph. `act(g, e) = (g·e, g|e)` on group elements and edge
/// indices must preserve range and source; it is extended to paths
/// letter by letter. Edge ids must not contain `.`.
pub fn self_similar_pair<F>(
    graph: &Graph,
    elements: &[&str],
    table: &[Vec<usize>],
    unit: usize,
    mut act: F,
) -> Result<MatchedPair>
where
    F: FnMut(usize, usize) -> (usize, usize),
{
    let d = path_category(graph)?;
    let c = group_bundle(&graph.vertices, elements, table, unit);
    let n = elements.len();
    let nv = graph.vertices.len();
    let edge_of: HashMap<&str, usize> = graph.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let words: Vec<Vec<usize>> = (0..d.len())
        .map(|f| if f < nv { Vec::new() } else { d.mid(f).split('.').map(|e| edge_of[e]).collect() })
        .collect();
    let by_word: HashMap<Vec<usize>, usize> = words.iter().enumerate().skip(nv).map(|(i, w)| (w.clone(), i)).collect();
    let mut tl = HashMap::new();
    let mut tr = HashMap::new();
    for ci in 0..c.len() {
        let v = c.src(ci);
        for &di in d.arriving(v) {
            let mut g = ci % n;
            let mut word = Vec::with_capacity(words[di].len());
            for &e in &words[di] {
                let (e2, g2) = act(g, e);
                word.push(e2);
                g = g2;
            }
            let image = if word.is_empty() {
                Some(di)
            } else {
                by_word.get(&word).copied()
            };
            let image = image.ok_or_else(|| Error::ActionIllTyped(format!("{} ◁ {}", c.mid(ci), d.mid(di))))?;
            tl.insert((ci, di), image);
            tr.insert((ci, di), d.src(di) * n + g);
        }
    }
    MatchedPair::new(c, d, |ci, di| tl.get(&(ci, di)).copied(), |ci, di| tr.get(&(ci, di)).copied())
}

/// `ℤ/2` bundle over `u ⇇ v ← w` (edges `x, y: v → u`, `z: w → v`): `t`
/// swaps `x` and `y` carrying `t`, and fixes `z` with trivial restriction.
pub fn swap_pair() -> MatchedPair {
    let graph = Graph::new(&["u", "v", "w"], &[("x", "v", "u"), ("y", "v", "u"), ("z", "w", "v")]);
    self_similar_pair(&graph, &["e", "t"], &[vec![0, 1], vec![1, 0]], 0, |g, e| match (g, e) {
        (1, 0) => (1, 1),
        (1, 1) => (0, 1),
        (1, 2) => (2, 0),
        _ => (e, g),
    })
    .expect("swap pair")
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::*;

    #[test]
    fn s3_product_is_s3() {
        let zs = s3_pair().zappa_szep().unwrap();
        let g = s3_group();
        assert_eq!(zs.category.len(), 6);
        // some bijection carries one multiplication table onto the other
        let cat = &zs.category;
        let iso = (0..6).permutations(6).any(|p| {
            (0..6).all(|a| (0..6).all(|b| p[cat.compose(a, b).unwrap()] == g.compose(p[a], p[b]).unwrap()))
        });
        assert!(iso);
    }

    #[test]
    fn swap_pair_is_valid() {
        let mp = swap_pair();
        assert_eq!(mp.c().len(), 6);
        assert_eq!(mp.d().len(), 3 + 3 + 2);
    }
}
