//! Graphs of odometers.
//!
//! A finite directed graph `E` with weights `p: E¹ → ℕ∖{0}` determines a
//! matched pair: the ℤ-bundle `𝒢 = E⁰ × ℤ` acts on the path category `F*`
//! of the graph `F` with edges `(e, i)`, `i ∈ ℤ/p(e)`. Paths of `F` are
//! handled in coordinates `(μ, m)` with `μ ∈ E*` and `0 ≤ m < p(μ)`, where
//!
//! ```text
//! a ◁ (μ, m) = (μ, (a + m) mod p(μ))      a ▷ (μ, m) = ⌊(a + m) / p(μ)⌋
//! ```
//!
//! The pair is infinite, so homology is reported through closed forms in
//! the weighted incidence matrix `M(v, e) = p(e)[v = r(e)] − [v = s(e)]`,
//! cross-checked against length-truncations of the `Δ̃` complexes.
//!
//! Paths are written in composition order `μ = e_1 ⋯ e_k` with
//! `s(e_i) = r(e_{i+1})`; `r` is the range (`dst`), `s` the source (`src`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{homology_of, rank, AbelianGroup, IntMatrix, Lattice, SparseVec};
use crate::category::{Graph, GraphEdge};
use crate::complexes::{matrix_of, ChainComplex};
use crate::error::{Error, Result};

/// Default path-length bound for the parallel-path gcd search.
pub const DEFAULT_GCD_BOUND: usize = 6;

/// JSON form: `{ "vertices": [...], "edges": [{"id", "src", "dst", "p"}] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawWeightedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawWeightedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawWeightedEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    ends: Vec<(usize, usize)>,
    weights: Vec<u64>,
}

/// A path of `E`; `edges` is empty for the vertex path at `r = s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub edges: Vec<usize>,
    pub r: usize,
    pub s: usize,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { edges: Vec::new(), r: v, s: v }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self · other`, defined when `s(self) = r(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        (self.s == other.r).then(|| {
            let mut edges = self.edges.clone();
            edges.extend_from_slice(&other.edges);
            Path { edges, r: self.r, s: other.s }
        })
    }
}

/// A composable tuple `(μ_0, …, μ_{k−1})` of paths, `s(μ_i) = r(μ_{i+1})`;
/// empty at degree 0, where `r = s` is the vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathTuple {
    pub entries: Vec<Path>,
    pub r: usize,
    pub s: usize,
}

impl PathTuple {
    pub fn vertex(v: usize) -> Self {
        PathTuple { entries: Vec::new(), r: v, s: v }
    }

    pub fn new(entries: Vec<Path>) -> Result<Self> {
        let (Some(first), Some(last)) = (entries.first(), entries.last()) else {
            return Err(Error::NotComposable("empty tuple".into()));
        };
        if entries.windows(2).any(|w| w[0].s != w[1].r) {
            return Err(Error::NotComposable(format!("{entries:?}")));
        }
        Ok(PathTuple { r: first.r, s: last.s, entries })
    }

    pub fn total_len(&self) -> usize {
        self.entries.iter().map(Path::len).sum()
    }

    /// Face `∂_i`, `0 ≤ i ≤ k` for a `k`-tuple: drop the first entry, compose
    /// entries `i−1, i`, or drop the last entry.
    pub fn face(&self, i: usize) -> PathTuple {
        let k = self.entries.len();
        assert!(k >= 1 && i <= k, "face {i} of a {k}-tuple");
        let mut entries = self.entries.clone();
        if i == 0 {
            entries.remove(0);
            return PathTuple { r: entries.first().map_or(self.s, |p| p.r), s: self.s, entries };
        }
        if i == k {
            entries.pop();
            return PathTuple { r: self.r, s: entries.last().map_or(self.r, |p| p.s), entries };
        }
        let b = entries.remove(i);
        entries[i - 1] = entries[i - 1].compose(&b).expect("composable tuple");
        PathTuple { entries, r: self.r, s: self.s }
    }
}

/// A path of `F` in coordinates `(μ, m)`, `0 ≤ m < p(μ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OdometerPath {
    pub path: Path,
    pub offset: i128,
}

fn overflow() -> Error {
    Error::InvalidGraph("path weight overflows 128 bits".into())
}

impl WeightedGraph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str, u64)]) -> Result<Self> {
        Self::from_raw(&RawWeightedGraph {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(id, s, d, p)| RawWeightedEdge { id: id.into(), src: s.into(), dst: d.into(), p })
                .collect(),
        })
    }

    pub fn from_raw(raw: &RawWeightedGraph) -> Result<Self> {
        let graph = Graph {
            vertices: raw.vertices.clone(),
            edges: raw
                .edges
                .iter()
                .map(|e| GraphEdge { id: e.id.clone(), src: e.src.clone(), dst: e.dst.clone() })
                .collect(),
        };
        let ends = graph.indexed().map_err(|e| Error::InvalidGraph(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for e in &raw.edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate edge `{}`", e.id)));
            }
            if e.p == 0 {
                return Err(Error::InvalidGraph(format!("edge `{}` has weight 0", e.id)));
            }
        }
        let weights = raw.edges.iter().map(|e| e.p).collect();
        Ok(WeightedGraph { graph, ends, weights })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawWeightedGraph = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_raw(&raw)
    }

    pub fn to_raw(&self) -> RawWeightedGraph {
        RawWeightedGraph {
            vertices: self.graph.vertices.clone(),
            edges: self
                .graph
                .edges
                .iter()
                .zip(&self.weights)
                .map(|(e, &p)| RawWeightedEdge { id: e.id.clone(), src: e.src.clone(), dst: e.dst.clone(), p })
                .collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn src(&self, e: usize) -> usize {
        self.ends[e].0
    }

    pub fn dst(&self, e: usize) -> usize {
        self.ends[e].1
    }

    pub fn weight(&self, e: usize) -> u64 {
        self.weights[e]
    }

    /// `χ(E) = |E⁰| − |E¹|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    pub fn edge_path(&self, e: usize) -> Path {
        Path { edges: vec![e], r: self.dst(e), s: self.src(e) }
    }

    /// Path from an edge-id list in composition order.
    pub fn path(&self, edges: &[usize]) -> Result<Path> {
        let mut out: Option<Path> = None;
        for &e in edges {
            if e >= self.num_edges() {
                return Err(Error::IndexOutOfRange { index: e, max: self.num_edges().saturating_sub(1) });
            }
            let next = self.edge_path(e);
            out = Some(match out {
                None => next,
                Some(p) => p.compose(&next).ok_or_else(|| {
                    Error::NotComposable(format!("{} then {}", self.render(&p), self.graph.edges[e].id))
                })?,
            });
        }
        out.ok_or_else(|| Error::NotComposable("empty edge list".into()))
    }

    /// `p(μ)`, multiplicative, `1` on vertices.
    pub fn path_weight(&self, mu: &Path) -> Result<i128> {
        mu.edges.iter().try_fold(1i128, |acc, &e| acc.checked_mul(self.weights[e] as i128).ok_or_else(overflow))
    }

    pub fn render(&self, mu: &Path) -> String {
        if mu.is_vertex() {
            return self.graph.vertices[mu.r].clone();
        }
        mu.edges.iter().map(|&e| self.graph.edges[e].id.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn render_tuple(&self, t: &PathTuple) -> String {
        if t.entries.is_empty() {
            return self.graph.vertices[t.r].clone();
        }
        format!("({})", t.entries.iter().map(|p| self.render(p)).collect::<Vec<_>>().join(", "))
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &(s, d) in &self.ends {
                    let (a, b) = if forward { (s, d) } else { (d, s) };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }

    /// All paths of length at most `max_len`, vertices first, then by length.
    pub fn paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::vertex).collect();
        let mut layer: Vec<Path> = (0..self.num_edges()).map(|e| self.edge_path(e)).collect();
        for _ in 1..=max_len {
            let mut next = Vec::new();
            for p in &layer {
                for e in 0..self.num_edges() {
                    if self.dst(e) == p.s {
                        next.push(p.compose(&self.edge_path(e)).expect("composable"));
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
        }
        out
    }

    // --- the odometer action -------------------------------------------------

    pub fn odometer_path(&self, path: Path, offset: i128) -> Result<OdometerPath> {
        let p = self.path_weight(&path)?;
        if !(0..p).contains(&offset) {
            return Err(Error::IndexOutOfRange { index: offset.max(0) as usize, max: (p - 1) as usize });
        }
        Ok(OdometerPath { path, offset })
    }

    /// `Θ`: a path `(e_1, m_1) ⋯ (e_k, m_k)` of `F` in `(μ, m)` coordinates.
    pub fn theta(&self, f_edges: &[(usize, i128)]) -> Result<OdometerPath> {
        let edges: Vec<usize> = f_edges.iter().map(|x| x.0).collect();
        let path = self.path(&edges)?;
        let mut offset = 0i128;
        let mut scale = 1i128;
        for &(e, m) in f_edges {
            let p = self.weights[e] as i128;
            if !(0..p).contains(&m) {
                return Err(Error::IndexOutOfRange { index: m.max(0) as usize, max: (p - 1) as usize });
            }
            offset += m * scale;
            scale = scale.checked_mul(p).ok_or_else(overflow)?;
        }
        Ok(OdometerPath { path, offset })
    }

    /// Inverse of [`theta`](Self::theta).
    pub fn theta_inverse(&self, xi: &OdometerPath) -> Vec<(usize, i128)> {
        let mut m = xi.offset;
        xi.path
            .edges
            .iter()
            .map(|&e| {
                let p = self.weights[e] as i128;
                let digit = m.rem_euclid(p);
                m = m.div_euclid(p);
                (e, digit)
            })
            .collect()
    }

    /// Concatenation in `F*`: `(μ, m)(ν, n) = (μν, m + p(μ) n)`.
    pub fn compose_odometer(&self, a: &OdometerPath, b: &OdometerPath) -> Result<OdometerPath> {
        let path = a
            .path
            .compose(&b.path)
            .ok_or_else(|| Error::NotComposable(format!("{} then {}", self.render(&a.path), self.render(&b.path))))?;
        let shift = self.path_weight(&a.path)?.checked_mul(b.offset).ok_or_else(overflow)?;
        Ok(OdometerPath { path, offset: a.offset + shift })
    }

    /// `(v, a) ◁ ξ` and the carry `(v, a) ▷ ξ ∈ {s(ξ)} × ℤ`.
    pub fn act(&self, vertex: usize, a: i128, xi: &OdometerPath) -> Result<(OdometerPath, i128)> {
        if vertex != xi.path.r {
            return Err(Error::VertexMismatch(format!(
                "bundle element at {} acting on a path with range {}",
                self.graph.vertices.get(vertex).map_or("?", String::as_str),
                self.graph.vertices[xi.path.r]
            )));
        }
        let p = self.path_weight(&xi.path)?;
        let t = a.checked_add(xi.offset).ok_or_else(overflow)?;
        Ok((OdometerPath { path: xi.path.clone(), offset: t.rem_euclid(p) }, t.div_euclid(p)))
    }

    /// Diagonal action on a composable tuple; returns the final carry at
    /// `s(ξ_q)`.
    pub fn act_tuple(&self, vertex: usize, a: i128, xs: &[OdometerPath]) -> Result<(Vec<OdometerPath>, i128)> {
        check_odometer_tuple(xs)?;
        let (mut v, mut a) = (vertex, a);
        let mut out = Vec::with_capacity(xs.len());
        for x in xs {
            let (y, carry) = self.act(v, a, x)?;
            v = x.path.s;
            a = carry;
            out.push(y);
        }
        Ok((out, a))
    }

    /// `O(ξ_0, …, ξ_q) = p(ξ_0 ⋯ ξ_q)` and `ρ_i` for every face `∂_i`,
    /// `0 ≤ i ≤ q+1`: `1` except `ρ_{q+1} = p̄(ξ_q)` (dropping the last entry).
    pub fn order_and_rho(&self, xs: &[OdometerPath]) -> Result<(i128, Vec<i128>)> {
        check_odometer_tuple(xs)?;
        let order = xs.iter().try_fold(1i128, |acc, x| acc.checked_mul(self.path_weight(&x.path)?).ok_or_else(overflow))?;
        let mut rho = vec![1; xs.len() + 1];
        if let Some(last) = xs.last() {
            rho[xs.len()] = self.path_weight(&last.path)?;
        }
        Ok((order, rho))
    }

    /// `O(ξ) = min{n ≥ 1 : n ◁ ξ = ξ}` by iterating the action, up to `limit`.
    pub fn order_by_orbit(&self, xs: &[OdometerPath], limit: i128) -> Result<Option<i128>> {
        let Some(first) = xs.first() else { return Ok(Some(1)) };
        let v = first.path.r;
        let mut cur = xs.to_vec();
        for n in 1..=limit {
            cur = self.act_tuple(v, 1, &cur)?.0;
            if cur == xs {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// The `ρ_i` from their defining formulas: `ρ_0 = (O ▷ ξ_0)/O(∂_0 ξ)`,
    /// `ρ_i = O(ξ)/O(∂_i ξ)` otherwise, with orders found by orbit iteration.
    pub fn rho_by_orbit(&self, xs: &[OdometerPath], limit: i128) -> Result<Option<Vec<i128>>> {
        let Some(order) = self.order_by_orbit(xs, limit)? else { return Ok(None) };
        let k = xs.len();
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let face = self.odometer_face(xs, i)?;
            let Some(face_order) = self.order_by_orbit(&face, limit)? else { return Ok(None) };
            let numer = if i == 0 { self.act(xs[0].path.r, order, &xs[0])?.1 } else { order };
            if numer % face_order != 0 {
                return Ok(None);
            }
            out.push(numer / face_order);
        }
        Ok(Some(out))
    }

    fn odometer_face(&self, xs: &[OdometerPath], i: usize) -> Result<Vec<OdometerPath>> {
        let mut out = xs.to_vec();
        if i == 0 {
            out.remove(0);
        } else if i == xs.len() {
            out.pop();
        } else {
            let b = out.remove(i);
            out[i - 1] = self.compose_odometer(&out[i - 1], &b)?;
        }
        Ok(out)
    }

    // --- closed forms ---------------------------------------------------------

    /// `M(v, e) = p(e)[v = r(e)] − [v = s(e)]`, rows `E⁰`, columns `E¹`.
    pub fn matrix_m(&self) -> IntMatrix {
        let trip = self.ends.iter().enumerate().flat_map(|(e, &(s, d))| {
            [(d, e, BigInt::from(self.weights[e])), (s, e, BigInt::from(-1))]
        });
        IntMatrix::from_triplets(self.num_vertices(), self.num_edges(), trip)
    }

    /// Incidence boundary `∂e = s(e) − r(e)`.
    pub fn incidence(&self) -> IntMatrix {
        let trip = self
            .ends
            .iter()
            .enumerate()
            .flat_map(|(e, &(s, d))| [(s, e, BigInt::from(1)), (d, e, BigInt::from(-1))]);
        IntMatrix::from_triplets(self.num_vertices(), self.num_edges(), trip)
    }

    /// `(H₀(E), H₁(E))` of the graph.
    pub fn graph_homology(&self) -> Result<(AbelianGroup, AbelianGroup)> {
        Ok(coker_ker(&self.incidence()))
    }

    /// `(ker M, coker M)`.
    pub fn m_kernel_cokernel(&self) -> (AbelianGroup, AbelianGroup) {
        let (coker, ker) = coker_ker(&self.matrix_m());
        (ker, coker)
    }

    /// `ℤE⁰ / span{p(μ)r(μ) − s(μ) : 1 ≤ |μ| ≤ max_len}`; equals `coker M`.
    pub fn coker_m_by_paths(&self, max_len: usize) -> Result<AbelianGroup> {
        let n = self.num_vertices();
        let mut rel = Vec::new();
        for mu in self.paths(max_len).into_iter().filter(|p| !p.is_vertex()) {
            let w = self.path_weight(&mu)?;
            let mut v: BTreeMap<usize, BigInt> = BTreeMap::new();
            *v.entry(mu.r).or_default() += BigInt::from(w);
            *v.entry(mu.s).or_default() -= 1;
            rel.push(crate::abelian::matrix::canonical(v.into_iter().collect()));
        }
        homology_of(n, None, &IntMatrix::from_columns(n, rel)).map(|h| h.group)
    }

    /// Parallel-path gcd: `gcd{p(μ) − p(ν) : s(μ) = s(ν), r(μ) = r(ν)}` over
    /// paths of length `≤ ℓ`, for `ℓ = 0, …, bound`.
    pub fn gcd_criterion(&self, bound: usize) -> GcdCriterion {
        let n = self.num_vertices();
        // weights of paths of length exactly ℓ, keyed by (range, source)
        let mut layer: BTreeMap<(usize, usize), BTreeSet<u128>> = (0..n).map(|v| ((v, v), BTreeSet::from([1]))).collect();
        let mut all: BTreeMap<(usize, usize), BTreeSet<u128>> = layer.clone();
        let mut gcd = 0u128;
        let mut overflowed = false;
        let mut met_at = None;
        for len in 0..=bound {
            if len > 0 {
                let mut next: BTreeMap<(usize, usize), BTreeSet<u128>> = BTreeMap::new();
                for (&(r, s), ws) in &layer {
                    for (e, &(es, ed)) in self.ends.iter().enumerate() {
                        if ed != s {
                            continue;
                        }
                        for &w in ws {
                            match w.checked_mul(self.weights[e] as u128) {
                                Some(x) => {
                                    next.entry((r, es)).or_default().insert(x);
                                }
                                None => overflowed = true,
                            }
                        }
                    }
                }
                for (k, ws) in &next {
                    all.entry(*k).or_default().extend(ws.iter().copied());
                }
                layer = next;
            }
            for ws in all.values() {
                if let Some(&lo) = ws.first() {
                    gcd = ws.iter().fold(gcd, |g, &w| g.gcd(&(w - lo)));
                }
            }
            if gcd == 1 {
                met_at = Some(len);
                break;
            }
            if overflowed {
                break;
            }
        }
        GcdCriterion { bound, gcd: gcd.to_string(), met_at }
    }

    /// Homology of the odometer pair from the closed forms.
    pub fn odometer_homology(&self, gcd_bound: usize) -> Result<OdometerReport> {
        let (h0_e, h1_e) = self.graph_homology()?;
        let (ker_m, coker_m) = self.m_kernel_cokernel();
        let split = if coker_m.torsion.is_empty() { Split::Yes } else { Split::Unknown };
        let resolved = (split == Split::Yes).then(|| h1_e.direct_sum(&coker_m));
        let gcd = self.gcd_criterion(gcd_bound);
        let consistent = gcd.met_at.is_none() || coker_m.is_trivial();
        Ok(OdometerReport {
            h0: h0_e,
            h1: H1Sequence { sub: h1_e, quotient: coker_m, split, resolved },
            h2: ker_m,
            euler_characteristic: self.euler_characteristic(),
            strongly_connected: self.is_strongly_connected(),
            gcd,
            consistent,
        })
    }

    // --- Δ̃ complexes ----------------------------------------------------------

    /// Number of composable `k`-tuples of total length `≤ max_len`.
    pub fn count_tuples(&self, k: usize, max_len: usize) -> u128 {
        let n = self.num_vertices();
        // by_len[j][(r, s)] = number of paths of length j from s to r
        let mut by_len: Vec<HashMap<(usize, usize), u128>> = vec![(0..n).map(|v| ((v, v), 1)).collect()];
        for j in 1..=max_len {
            let mut next: HashMap<(usize, usize), u128> = HashMap::new();
            for (&(r, s), &c) in &by_len[j - 1] {
                for &(es, ed) in &self.ends {
                    if ed == s {
                        let x = next.entry((r, es)).or_default();
                        *x = x.saturating_add(c);
                    }
                }
            }
            by_len.push(next);
        }
        // ways[v][ℓ]: tuples of the remaining entries starting at range v with total ≤ ℓ
        let mut ways = vec![vec![1u128; max_len + 1]; n];
        for _ in 0..k {
            let mut next = vec![vec![0u128; max_len + 1]; n];
            for (j, paths) in by_len.iter().enumerate() {
                for (&(r, s), &c) in paths {
                    for l in j..=max_len {
                        next[r][l] = next[r][l].saturating_add(c.saturating_mul(ways[s][l - j]));
                    }
                }
            }
            ways = next;
        }
        if k == 0 {
            return n as u128;
        }
        ways.iter().fold(0u128, |a, w| a.saturating_add(w[max_len]))
    }

    /// Composable `k`-tuples of total length `≤ max_len`, sorted.
    pub fn tuples(&self, k: usize, max_len: usize, cap: u128) -> Result<Vec<PathTuple>> {
        let count = self.count_tuples(k, max_len);
        if count > cap {
            return Err(Error::DegreeTooLarge { degree: k, count, cap });
        }
        if k == 0 {
            return Ok((0..self.num_vertices()).map(PathTuple::vertex).collect());
        }
        let paths = self.paths(max_len);
        let mut from: Vec<Vec<&Path>> = vec![Vec::new(); self.num_vertices()];
        for p in &paths {
            from[p.r].push(p);
        }
        let mut partial: Vec<Vec<Path>> = paths.iter().map(|p| vec![p.clone()]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for t in &partial {
                let used: usize = t.iter().map(Path::len).sum();
                let s = t.last().unwrap().s;
                for p in &from[s] {
                    if used + p.len() <= max_len {
                        let mut u = t.clone();
                        u.push((*p).clone());
                        next.push(u);
                    }
                }
            }
            partial = next;
        }
        let mut out: Vec<PathTuple> = partial.into_iter().map(|t| PathTuple::new(t).expect("composable")).collect();
        out.sort();
        Ok(out)
    }

    /// `Δ̃(μ_0, …, μ_q) = Σ_{i ≤ q} (−1)^i ∂_i μ + (−1)^{q+1} p(μ_q) ∂_{q+1} μ`;
    /// with `weighted = false` every weight is taken to be 1.
    pub fn delta_tilde_of(&self, t: &PathTuple, weighted: bool) -> Result<Vec<(PathTuple, i64)>> {
        let k = t.entries.len();
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let coeff = if i == k && weighted {
                let w = self.path_weight(&t.entries[k - 1])?;
                i64::try_from(w).map_err(|_| overflow())?
            } else {
                1
            };
            out.push((t.face(i), sign * coeff));
        }
        Ok(out)
    }

    /// The truncated complex `ℤ(k-tuples of total length ≤ max_len)` in degrees
    /// `0..=top` with boundary `Δ̃` (or the plain categorical boundary of `E*`).
    pub fn delta_complex(&self, top: usize, max_len: usize, weighted: bool, cap: u128) -> Result<ChainComplex<PathTuple>> {
        let bases: Vec<Vec<PathTuple>> = (0..=top).map(|k| self.tuples(k, max_len, cap)).collect::<Result<_>>()?;
        let mut boundaries = Vec::with_capacity(top);
        for k in 0..top {
            let index: HashMap<PathTuple, usize> = bases[k].iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            let mut err = None;
            let m = matrix_of(&bases[k + 1], &index, bases[k].len(), |t| {
                self.delta_tilde_of(t, weighted).unwrap_or_else(|e| {
                    err = Some(e);
                    Vec::new()
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            boundaries.push(m);
        }
        let name = if weighted { "delta-tilde" } else { "path category" };
        ChainComplex::new(name, bases, boundaries)
    }

    /// `Δ̃_{1,q}` on `(q+1)`-tuples of total length `≤ max_len`.
    pub fn delta_tilde(&self, q: usize, max_len: usize, cap: u128) -> Result<IntMatrix> {
        let cx = self.delta_complex(q + 1, max_len, true, cap)?;
        Ok(cx.boundary(q).expect("materialised").clone())
    }

    /// Checks, for every path `μ` with `1 ≤ |μ| ≤ max_len`,
    /// `μ − Σ_i p(μ^{[i,|μ|]}) μ^i + Δ̃(μ^{[0,|μ|−1]}, μ^{|μ|}) ∈ span{Δ̃(α, β) : |αβ| < |μ|}`,
    /// and that `im Δ̃_{1,1} ∩ ℤE¹ = 0` on pairs of total length `≤ max_len`.
    pub fn verify_decomposition(&self, max_len: usize, cap: u128) -> Result<DecompositionReport> {
        let singles = self.tuples(1, max_len, cap)?;
        let pairs = self.tuples(2, max_len, cap)?;
        let index: HashMap<PathTuple, usize> = singles.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let dim = singles.len();
        let to_vec = |terms: Vec<(PathTuple, BigInt)>| {
            let mut v: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (t, c) in terms {
                *v.entry(index[&t]).or_default() += c;
            }
            crate::abelian::matrix::canonical(v.into_iter().collect())
        };
        let image = |t: &PathTuple| -> Result<SparseVec> {
            Ok(to_vec(self.delta_tilde_of(t, true)?.into_iter().map(|(t, c)| (t, BigInt::from(c))).collect()))
        };
        let single = |p: &Path| PathTuple::new(vec![p.clone()]).expect("single path");
        let mut checked = 0;
        let mut failures = Vec::new();
        for len in 1..=max_len {
            let span = Lattice::spanned_by(
                dim,
                pairs.iter().filter(|t| t.total_len() < len).map(image).collect::<Result<Vec<_>>>()?,
            );
            for t in singles.iter().filter(|t| t.total_len() == len) {
                let mu = &t.entries[0];
                let mut terms = vec![(t.clone(), BigInt::from(1))];
                for i in 0..len {
                    let suffix = Path { edges: mu.edges[i + 1..].to_vec(), r: self.src(mu.edges[i]), s: mu.s };
                    let w = self.path_weight(&suffix)?;
                    terms.push((single(&self.edge_path(mu.edges[i])), -BigInt::from(w)));
                }
                let prefix = Path { edges: mu.edges[..len - 1].to_vec(), r: mu.r, s: self.dst(mu.edges[len - 1]) };
                let last = self.edge_path(mu.edges[len - 1]);
                let split = PathTuple::new(vec![prefix, last])?;
                for (u, c) in self.delta_tilde_of(&split, true)? {
                    terms.push((u, BigInt::from(c)));
                }
                checked += 1;
                if !span.contains(&to_vec(terms)) {
                    failures.push(self.render(mu));
                }
            }
        }
        // im Δ̃_{1,1} ∩ ℤE¹ = 0 iff the ranks add up
        let im = IntMatrix::from_columns(dim, pairs.iter().map(image).collect::<Result<Vec<_>>>()?);
        let edges = IntMatrix::from_columns(
            dim,
            (0..self.num_edges()).map(|e| crate::abelian::matrix::unit(index[&single(&self.edge_path(e))])).collect(),
        );
        let intersection_trivial = rank(&im) + rank(&edges) == rank(&im.hstack(&edges));
        Ok(DecompositionReport { max_len, checked, failures, intersection_trivial })
    }
}

fn check_odometer_tuple(xs: &[OdometerPath]) -> Result<()> {
    if xs.windows(2).any(|w| w[0].path.s != w[1].path.r) {
        return Err(Error::NotComposable(format!("{xs:?}")));
    }
    Ok(())
}

/// `(coker A, ker A)` for an integer matrix `A`.
fn coker_ker(a: &IntMatrix) -> (AbelianGroup, AbelianGroup) {
    let coker = homology_of(a.rows(), None, a).expect("shapes match").group;
    let ker = homology_of(a.cols(), Some(a), &IntMatrix::zeros(a.cols(), 0)).expect("shapes match").group;
    (coker, ker)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::Yes => "yes",
            Split::No => "no",
            Split::Unknown => "unknown",
        })
    }
}

/// `0 → sub → H₁ → quotient → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Sequence {
    pub sub: AbelianGroup,
    pub quotient: AbelianGroup,
    pub split: Split,
    /// `sub ⊕ quotient` when the sequence is known to split.
    pub resolved: Option<AbelianGroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcdCriterion {
    pub bound: usize,
    /// gcd reached at the last length examined (`0` if no parallel pair differs).
    pub gcd: String,
    /// First path length at which the gcd became 1.
    pub met_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdometerReport {
    pub h0: AbelianGroup,
    pub h1: H1Sequence,
    pub h2: AbelianGroup,
    pub euler_characteristic: i64,
    pub strongly_connected: bool,
    pub gcd: GcdCriterion,
    /// False iff the gcd criterion is met but `coker M ≠ 0`.
    pub consistent: bool,
}

impl OdometerReport {
    pub fn render(&self) -> String {
        let h1 = match &self.h1.resolved {
            Some(g) => g.to_string(),
            None => format!("extension of {} by {}", self.h1.quotient, self.h1.sub),
        };
        let gcd = match self.gcd.met_at {
            Some(l) => format!("met at length {l}"),
            None => format!("not established ≤ {}", self.gcd.bound),
        };
        format!(
            "H0 = {}\nH1 = {h1}\n  0 -> {} -> H1 -> {} -> 0 (split: {})\nH2 = {}\nchi = {}, strongly connected: {}\ngcd criterion: {gcd}\n",
            self.h0, self.h1.sub, self.h1.quotient, self.h1.split, self.h2, self.euler_characteristic, self.strongly_connected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub max_len: usize,
    pub checked: usize,
    /// Paths for which the identity failed.
    pub failures: Vec<String>,
    pub intersection_trivial: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.intersection_trivial
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carry_example() {
        let g = WeightedGraph::new(&["v"], &[("e", "v", "v", 2)]).unwrap();
        let ee = g.path(&[0, 0]).unwrap();
        let xi = g.odometer_path(ee.clone(), 2).unwrap();
        let (y, carry) = g.act(0, 3, &xi).unwrap();
        assert_eq!((y.offset, carry), (1, 1));
        let (y, carry) = g.act(0, 4, &g.odometer_path(ee, 0).unwrap()).unwrap();
        assert_eq!((y.offset, carry), (0, 1));
    }

    #[test]
    fn m_for_a_single_edge() {
        let g = WeightedGraph::new(&["u", "v"], &[("e", "u", "v", 3)]).unwrap();
        assert_eq!(g.matrix_m().to_dense_i64(), vec![vec![-1], vec![3]]);
    }
}
