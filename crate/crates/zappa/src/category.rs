//! Finite small categories.
//!
//! Composition is written in diagram order: `compose(f, g)` is defined when
//! `src(f) = dst(g)` and is the composite "f after g", i.e. the product `fg`
//! of a composable pair `(f, g)`. A composable k-tuple `(c_1, …, c_k)` has
//! `src(c_i) = dst(c_{i+1})`. Degree-0 tuples are objects, and are distinct
//! from 1-tuples of identities.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the size of any enumerated basis.
pub const DEFAULT_CAP: u128 = 5_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A validated finite category. Objects and morphisms are addressed by their
/// position in the input lists; that order is the canonical basis order.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    table: Vec<u32>,
    into: Vec<Vec<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

/// A composable tuple; `entries` is empty for degree 0, in which case
/// `r = s` is the object itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComposableTuple {
    pub entries: Vec<usize>,
    pub r: usize,
    pub s: usize,
}

impl ComposableTuple {
    pub fn object(x: usize) -> Self {
        ComposableTuple { entries: Vec::new(), r: x, s: x }
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }
}

/// JSON description of a category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl FiniteCategory {
    /// Build a category from index data and a composition rule, then check
    /// the unit and associativity laws. `rule(f, g)` is only called on
    /// composable pairs.
    pub fn build<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut rule: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let mut cat = Self::skeleton(objects, morphisms, identity)?;
        let n = cat.morphisms.len();
        for f in 0..n {
            for &g in &cat.into[cat.morphisms[f].src] {
                match rule(f, g) {
                    Some(h) if h < n => cat.table[f * n + g] = h as u32,
                    Some(h) => return Err(Error::IndexOutOfRange { index: h, max: n }),
                    None => {
                        return Err(Error::CompositionUndefined {
                            f: cat.morphisms[f].id.clone(),
                            g: cat.morphisms[g].id.clone(),
                        })
                    }
                }
            }
        }
        cat.check_laws()?;
        Ok(cat)
    }

    fn skeleton(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<usize>) -> Result<Self> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateObject(o.clone()));
            }
        }
        let mut morphism_index = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= objects.len() || m.dst >= objects.len() {
                return Err(Error::UnknownObject(format!("endpoint of {}", m.id)));
            }
            if morphism_index.insert(m.id.clone(), i).is_some() {
                return Err(Error::DuplicateMorphism(m.id.clone()));
            }
        }
        if identity.len() != objects.len() {
            let missing = objects.get(identity.len()).cloned().unwrap_or_default();
            return Err(Error::MissingIdentity(missing));
        }
        for (x, &i) in identity.iter().enumerate() {
            match morphisms.get(i) {
                Some(m) if m.src == x && m.dst == x => {}
                Some(m) => {
                    return Err(Error::IdentityIllTyped { object: objects[x].clone(), morphism: m.id.clone() })
                }
                None => return Err(Error::MissingIdentity(objects[x].clone())),
            }
        }
        let n = morphisms.len();
        let mut into = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            into[m.dst].push(i);
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            table: vec![NONE; n * n],
            into,
            object_index,
            morphism_index,
        })
    }

    /// Parse and validate the JSON schema.
    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let objects = raw.objects.clone();
        let obj_pos: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let lookup_obj = |o: &str| obj_pos.get(o).copied().ok_or_else(|| Error::UnknownObject(o.to_string()));
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        for m in &raw.morphisms {
            morphisms.push(Morphism { id: m.id.clone(), src: lookup_obj(&m.src)?, dst: lookup_obj(&m.dst)? });
        }
        let mor_pos: HashMap<&str, usize> =
            raw.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let lookup_mor = |m: &str| mor_pos.get(m).copied().ok_or_else(|| Error::UnknownMorphism(m.to_string()));
        for k in raw.identities.keys() {
            lookup_obj(k)?;
        }
        let mut identity = Vec::with_capacity(objects.len());
        for o in &objects {
            let id = raw.identities.get(o).ok_or_else(|| Error::MissingIdentity(o.clone()))?;
            identity.push(lookup_mor(id)?);
        }
        let mut cat = Self::skeleton(objects, morphisms, identity)?;
        let n = cat.morphisms.len();
        for [f, g, h] in &raw.compose {
            let (fi, gi, hi) = (lookup_mor(f)?, lookup_mor(g)?, lookup_mor(h)?);
            let (mf, mg, mh) = (&cat.morphisms[fi], &cat.morphisms[gi], &cat.morphisms[hi]);
            if mf.src != mg.dst || mh.dst != mf.dst || mh.src != mg.src {
                return Err(Error::CompositionIllTyped { f: f.clone(), g: g.clone(), h: h.clone() });
            }
            let slot = &mut cat.table[fi * n + gi];
            if *slot != NONE && *slot != hi as u32 {
                return Err(Error::CompositionConflict { f: f.clone(), g: g.clone() });
            }
            *slot = hi as u32;
        }
        for f in 0..n {
            for &g in &cat.into[cat.morphisms[f].src] {
                if cat.table[f * n + g] == NONE {
                    return Err(Error::CompositionUndefined {
                        f: cat.morphisms[f].id.clone(),
                        g: cat.morphisms[g].id.clone(),
                    });
                }
            }
        }
        cat.check_laws()?;
        Ok(cat)
    }

    pub fn to_raw(&self) -> RawCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                id: m.id.clone(),
                src: self.objects[m.src].clone(),
                dst: self.objects[m.dst].clone(),
            })
            .collect();
        let identities = self
            .identity
            .iter()
            .enumerate()
            .map(|(x, &i)| (self.objects[x].clone(), self.morphisms[i].id.clone()))
            .collect();
        let mut compose = Vec::new();
        for f in 0..self.len() {
            for &g in self.arriving(self.src(f)) {
                let h = self.compose(f, g).expect("composable");
                compose.push([self.mid(f).to_string(), self.mid(g).to_string(), self.mid(h).to_string()]);
            }
        }
        RawCategory { objects: self.objects.clone(), morphisms, identities, compose }
    }

    fn check_laws(&self) -> Result<()> {
        for f in 0..self.len() {
            let m = &self.morphisms[f];
            if self.compose(self.identity[m.dst], f) != Some(f) {
                return Err(Error::UnitLawViolation(format!("id∘{} ≠ {}", m.id, m.id)));
            }
            if self.compose(f, self.identity[m.src]) != Some(f) {
                return Err(Error::UnitLawViolation(format!("{}∘id ≠ {}", m.id, m.id)));
            }
        }
        for f in 0..self.len() {
            for &g in self.arriving(self.src(f)) {
                let fg = self.compose(f, g).unwrap();
                for &h in self.arriving(self.src(g)) {
                    let gh = self.compose(g, h).unwrap();
                    if self.compose(fg, h) != self.compose(f, gh) {
                        return Err(Error::AssociativityViolation {
                            f: self.mid(f).to_string(),
                            g: self.mid(g).to_string(),
                            h: self.mid(h).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Number of morphisms.
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let m = &self.morphisms[f];
        m.src == m.dst && self.identity[m.src] == f
    }

    /// `f` after `g`; `None` unless `src(f) = dst(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.table[f * self.len() + g];
        (v != NONE).then_some(v as usize)
    }

    /// Composite of a nonempty composable list.
    pub fn compose_all(&self, fs: &[usize]) -> Option<usize> {
        let (&first, rest) = fs.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(acc, g))
    }

    /// Morphisms with the given codomain, in index order.
    pub fn arriving(&self, x: usize) -> &[usize] {
        &self.into[x]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    /// Identifier of morphism `f`.
    pub fn mid(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn is_composable(&self, entries: &[usize]) -> bool {
        entries.windows(2).all(|w| self.src(w[0]) == self.dst(w[1]))
    }

    /// Wrap a composable list (or an object, for the empty list) as a tuple.
    pub fn tuple(&self, entries: Vec<usize>, object: usize) -> ComposableTuple {
        match (entries.first(), entries.last()) {
            (Some(&a), Some(&b)) => ComposableTuple { r: self.dst(a), s: self.src(b), entries },
            _ => ComposableTuple::object(object),
        }
    }

    /// Exact number of composable k-tuples.
    pub fn count_tuples(&self, k: usize) -> u128 {
        if k == 0 {
            return self.num_objects() as u128;
        }
        self.counts_by_range(k).iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// Number of composable k-tuples with range `x`, for each object `x`.
    pub fn counts_by_range(&self, k: usize) -> Vec<u128> {
        let mut ways = vec![1u128; self.num_objects()];
        for _ in 0..k {
            ways = (0..self.num_objects())
                .map(|x| self.into[x].iter().fold(0u128, |a, &f| a.saturating_add(ways[self.src(f)])))
                .collect();
        }
        ways
    }

    /// Number of composable k-tuples with source `x`, for each object `x`.
    pub fn counts_by_source(&self, k: usize) -> Vec<u128> {
        let mut ways = vec![1u128; self.num_objects()];
        for _ in 0..k {
            let mut next = vec![0u128; self.num_objects()];
            for f in 0..self.len() {
                next[self.src(f)] = next[self.src(f)].saturating_add(ways[self.dst(f)]);
            }
            ways = next;
        }
        ways
    }

    /// Composable k-tuples in lexicographic order of morphism index.
    pub fn composable_tuples(&self, k: usize, cap: u128) -> Result<Vec<ComposableTuple>> {
        let count = self.count_tuples(k);
        if count > cap {
            return Err(Error::DegreeTooLarge { degree: k, count, cap });
        }
        if k == 0 {
            return Ok((0..self.num_objects()).map(ComposableTuple::object).collect());
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut stack = Vec::with_capacity(k);
        for f in 0..self.len() {
            stack.push(f);
            self.extend(&mut stack, k, &mut out);
            stack.pop();
        }
        Ok(out)
    }

    /// Composable k-tuples whose range is `x`, in lexicographic order.
    pub fn tuples_from(&self, x: usize, k: usize) -> Vec<ComposableTuple> {
        if k == 0 {
            return vec![ComposableTuple::object(x)];
        }
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(k);
        for &f in self.arriving(x) {
            stack.push(f);
            self.extend(&mut stack, k, &mut out);
            stack.pop();
        }
        out
    }

    fn extend(&self, stack: &mut Vec<usize>, k: usize, out: &mut Vec<ComposableTuple>) {
        if stack.len() == k {
            out.push(self.tuple(stack.clone(), 0));
            return;
        }
        let y = self.src(*stack.last().unwrap());
        for &g in self.arriving(y) {
            stack.push(g);
            self.extend(stack, k, out);
            stack.pop();
        }
    }
}

/// Validate a JSON category description.
pub fn validate_category(raw: &RawCategory) -> Result<FiniteCategory> {
    FiniteCategory::from_raw(raw)
}

/// Discrete category: identities only.
pub fn discrete(names: &[&str]) -> FiniteCategory {
    let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let morphisms = (0..objects.len())
        .map(|x| Morphism { id: format!("id_{}", objects[x]), src: x, dst: x })
        .collect();
    let identity = (0..objects.len()).collect();
    FiniteCategory::build(objects, morphisms, identity, |f, g| (f == g).then_some(f)).expect("discrete category")
}

/// A finite directed graph; edge `(id, src, dst)` goes from `src` to `dst`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl Graph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        Graph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(id, s, d)| GraphEdge { id: id.into(), src: s.into(), dst: d.into() })
                .collect(),
        }
    }

    /// Edges as index triples `(src, dst)`.
    pub fn indexed(&self) -> Result<Vec<(usize, usize)>> {
        let pos: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if pos.len() != self.vertices.len() {
            return Err(Error::DuplicateObject("vertex".into()));
        }
        self.edges
            .iter()
            .map(|e| {
                let s = *pos.get(e.src.as_str()).ok_or_else(|| Error::UnknownObject(e.src.clone()))?;
                let d = *pos.get(e.dst.as_str()).ok_or_else(|| Error::UnknownObject(e.dst.clone()))?;
                Ok((s, d))
            })
            .collect()
    }

    /// Some directed cycle, as a vertex list, if one exists.
    pub fn find_cycle(&self) -> Result<Option<Vec<String>>> {
        let edges = self.indexed()?;
        let n = self.vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        for &(s, d) in &edges {
            out_edges[s].push(d);
        }
        // 0 = unseen, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < out_edges[v].len() {
                    let w = out_edges[v][*next];
                    *next += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            let mut cycle = vec![self.vertices[w].clone()];
                            let mut u = v;
                            while u != w {
                                cycle.push(self.vertices[u].clone());
                                u = parent[u];
                            }
                            cycle.push(self.vertices[w].clone());
                            cycle.reverse();
                            return Ok(Some(cycle));
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(None)
    }
}

/// Path category of a finite acyclic graph. Paths are written in composition
/// order: `μ = e_1 e_2 ⋯ e_k` with `src(e_i) = dst(e_{i+1})`; identifiers are
/// edge ids joined by `.`, vertex paths are `id_v`.
pub fn path_category(graph: &Graph) -> Result<FiniteCategory> {
    if let Some(cycle) = graph.find_cycle()? {
        return Err(Error::CyclicGraph(cycle));
    }
    let edges = graph.indexed()?;
    let nv = graph.vertices.len();
    // paths by length; each path stored as edge index list
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            let s = edges[*p.last().unwrap()].0;
            for (e, &(_, d)) in edges.iter().enumerate() {
                if d == s {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        paths.append(&mut layer);
        layer = next;
    }
    let mut morphisms: Vec<Morphism> = (0..nv)
        .map(|v| Morphism { id: format!("id_{}", graph.vertices[v]), src: v, dst: v })
        .collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for p in &paths {
        let id = p.iter().map(|&e| graph.edges[e].id.as_str()).collect::<Vec<_>>().join(".");
        index.insert(p.clone(), morphisms.len());
        morphisms.push(Morphism { id, src: edges[*p.last().unwrap()].0, dst: edges[p[0]].1 });
    }
    let identity: Vec<usize> = (0..nv).collect();
    let n_id = nv;
    FiniteCategory::build(graph.vertices.clone(), morphisms, identity, |f, g| {
        if f < n_id {
            return Some(g);
        }
        if g < n_id {
            return Some(f);
        }
        let mut p = paths[f - n_id].clone();
        p.extend_from_slice(&paths[g - n_id]);
        index.get(&p).copied()
    })
}

/// One-object category of a monoid given by its multiplication table
/// `table[a][b] = a·b` over `elements`.
pub fn monoid_category(elements: &[&str], table: &[Vec<usize>], unit: usize) -> Result<FiniteCategory> {
    let n = elements.len();
    if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::TableNotTotal(format!("expected a {n}×{n} table over the elements")));
    }
    if unit >= n || (0..n).any(|a| table[unit][a] != a || table[a][unit] != a) {
        return Err(Error::NoUnit(elements.get(unit).map(|s| s.to_string()).unwrap_or_default()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::NotAssociative(elements[a].into(), elements[b].into(), elements[c].into()));
                }
            }
        }
    }
    let morphisms = elements.iter().map(|e| Morphism { id: e.to_string(), src: 0, dst: 0 }).collect();
    FiniteCategory::build(vec!["*".into()], morphisms, vec![unit], |f, g| Some(table[f][g]))
}

/// Cyclic group ℤ/n as a one-object category; element `k` is named `gk`
/// (so `g0` is the unit).
pub fn cyclic_group(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    monoid_category(&refs, &table, 0).expect("cyclic group")
}

/// Product category with componentwise composition. Objects and morphisms are
/// ordered lexicographically (first factor major).
pub fn product_category(a: &FiniteCategory, b: &FiniteCategory) -> FiniteCategory {
    let nb_obj = b.num_objects();
    let objects = a
        .objects()
        .iter()
        .flat_map(|x| b.objects().iter().map(move |y| format!("({x},{y})")))
        .collect();
    let nb = b.len();
    let mut morphisms = Vec::with_capacity(a.len() * nb);
    for f in 0..a.len() {
        for g in 0..nb {
            morphisms.push(Morphism {
                id: format!("({},{})", a.mid(f), b.mid(g)),
                src: a.src(f) * nb_obj + b.src(g),
                dst: a.dst(f) * nb_obj + b.dst(g),
            });
        }
    }
    let identity = (0..a.num_objects())
        .flat_map(|x| (0..nb_obj).map(move |y| (x, y)))
        .map(|(x, y)| a.identity(x) * nb + b.identity(y))
        .collect();
    FiniteCategory::build(objects, morphisms, identity, |f, g| {
        let h1 = a.compose(f / nb, g / nb)?;
        let h2 = b.compose(f % nb, g % nb)?;
        Some(h1 * nb + h2)
    })
    .expect("product of categories is a category")
}
