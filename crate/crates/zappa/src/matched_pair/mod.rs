//! Matched pairs `(C, D, ◁, ▷)`, factorisation rules and Zappa–Szép
//! products.
//!
//! `act_l(c, d) = c ◁ d ∈ D` and `act_r(c, d) = c ▷ d ∈ C`, both defined on
//! pairs with `s(c) = r(d)`. The product `C ⋈ D` has morphisms `(d, c)` with
//! `s(d) = r(c)` and composition `(d₁,c₁)(d₂,c₂) = (d₁(c₁◁d₂), (c₁▷d₂)c₂)`.

pub mod model;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::category::{ComposableTuple, FiniteCategory, Morphism, RawCategory};
use crate::error::{Error, Result};

pub use model::{induced_morphism, model_pair, ModelPair};

const NONE: u32 = u32::MAX;

/// JSON description of a matched pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawMatchedPair {
    #[serde(rename = "C")]
    pub c: RawCategory,
    #[serde(rename = "D")]
    pub d: RawCategory,
    #[serde(rename = "act_L")]
    pub act_l: Vec<[String; 3]>,
    #[serde(rename = "act_R")]
    pub act_r: Vec<[String; 3]>,
}

/// A validated matched pair.
pub struct MatchedPair {
    c: FiniteCategory,
    d: FiniteCategory,
    act_l: Vec<u32>,
    act_r: Vec<u32>,
    tuple_cache: RwLock<HashMap<(usize, usize), Arc<TupleAction>>>,
}

impl Clone for MatchedPair {
    fn clone(&self) -> Self {
        MatchedPair {
            c: self.c.clone(),
            d: self.d.clone(),
            act_l: self.act_l.clone(),
            act_r: self.act_r.clone(),
            tuple_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for MatchedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatchedPair")
            .field("objects", &self.c.objects())
            .field("C", &self.c.len())
            .field("D", &self.d.len())
            .finish()
    }
}

impl PartialEq for MatchedPair {
    fn eq(&self, other: &Self) -> bool {
        self.act_l == other.act_l
            && self.act_r == other.act_r
            && self.c.to_raw() == other.c.to_raw()
            && self.d.to_raw() == other.d.to_raw()
    }
}

impl MatchedPair {
    /// Build from action rules (called only on composable pairs) and
    /// validate every axiom.
    pub fn new<L, R>(c: FiniteCategory, d: FiniteCategory, mut act_l: L, mut act_r: R) -> Result<Self>
    where
        L: FnMut(usize, usize) -> Option<usize>,
        R: FnMut(usize, usize) -> Option<usize>,
    {
        if c.objects() != d.objects() {
            return Err(Error::ObjectMismatch);
        }
        let (nc, nd) = (c.len(), d.len());
        let mut tl = vec![NONE; nc * nd];
        let mut tr = vec![NONE; nc * nd];
        for ci in 0..nc {
            for &di in d.arriving(c.src(ci)) {
                let undefined = || Error::ActionUndefined { c: c.mid(ci).into(), d: d.mid(di).into() };
                let l = act_l(ci, di).ok_or_else(undefined)?;
                let r = act_r(ci, di).ok_or_else(undefined)?;
                if l >= nd || r >= nc {
                    return Err(Error::ActionIllTyped(format!("index out of range at ({}, {})", c.mid(ci), d.mid(di))));
                }
                tl[ci * nd + di] = l as u32;
                tr[ci * nd + di] = r as u32;
            }
        }
        let mp = MatchedPair { c, d, act_l: tl, act_r: tr, tuple_cache: RwLock::new(HashMap::new()) };
        mp.validate()?;
        Ok(mp)
    }

    /// Parse and validate the JSON schema.
    pub fn from_raw(raw: &RawMatchedPair) -> Result<Self> {
        let c = FiniteCategory::from_raw(&raw.c)?;
        let d = FiniteCategory::from_raw(&raw.d)?;
        if c.objects() != d.objects() {
            return Err(Error::ObjectMismatch);
        }
        let tl = Self::read_table(&c, &d, &raw.act_l, true)?;
        let tr = Self::read_table(&c, &d, &raw.act_r, false)?;
        Self::new(c, d, |ci, di| tl.get(&(ci, di)).copied(), |ci, di| tr.get(&(ci, di)).copied())
    }

    fn read_table(
        c: &FiniteCategory,
        d: &FiniteCategory,
        rows: &[[String; 3]],
        left: bool,
    ) -> Result<HashMap<(usize, usize), usize>> {
        let mut out = HashMap::new();
        for [cs, ds, vs] in rows {
            let ci = c.morphism_index(cs).ok_or_else(|| Error::UnknownMorphism(cs.clone()))?;
            let di = d.morphism_index(ds).ok_or_else(|| Error::UnknownMorphism(ds.clone()))?;
            if c.src(ci) != d.dst(di) {
                return Err(Error::ActionIllTyped(format!("({cs}, {ds}) is not composable")));
            }
            let vi = if left { d.morphism_index(vs) } else { c.morphism_index(vs) }
                .ok_or_else(|| Error::UnknownMorphism(vs.clone()))?;
            if let Some(prev) = out.insert((ci, di), vi) {
                if prev != vi {
                    let side = if left { "act_L" } else { "act_R" };
                    return Err(Error::ActionIllTyped(format!("conflicting {side} entries for ({cs}, {ds})")));
                }
            }
        }
        Ok(out)
    }

    pub fn to_raw(&self) -> RawMatchedPair {
        let (c, d) = (&self.c, &self.d);
        let mut act_l = Vec::new();
        let mut act_r = Vec::new();
        for ci in 0..c.len() {
            for &di in d.arriving(c.src(ci)) {
                act_l.push([c.mid(ci).into(), d.mid(di).into(), d.mid(self.act_l(ci, di)).into()]);
                act_r.push([c.mid(ci).into(), d.mid(di).into(), c.mid(self.act_r(ci, di)).into()]);
            }
        }
        RawMatchedPair { c: c.to_raw(), d: d.to_raw(), act_l, act_r }
    }

    fn validate(&self) -> Result<()> {
        let (c, d) = (&self.c, &self.d);
        let cn = |i: usize| c.mid(i).to_string();
        let dn = |i: usize| d.mid(i).to_string();
        // typing and MP1
        for ci in 0..c.len() {
            for &di in d.arriving(c.src(ci)) {
                let (l, r) = (self.act_l(ci, di), self.act_r(ci, di));
                if d.dst(l) != c.dst(ci) {
                    return Err(Error::ActionIllTyped(format!("r({} ◁ {}) ≠ r({})", cn(ci), dn(di), cn(ci))));
                }
                if c.src(r) != d.src(di) {
                    return Err(Error::ActionIllTyped(format!("s({} ▷ {}) ≠ s({})", cn(ci), dn(di), dn(di))));
                }
                if d.src(l) != c.dst(r) {
                    return Err(Error::MP1Violation { c: cn(ci), d: dn(di) });
                }
            }
        }
        // unit laws of both actions
        for di in 0..d.len() {
            let id = c.identity(d.dst(di));
            if self.act_l(id, di) != di {
                return Err(Error::NotAnAction(format!("1 ◁ {} ≠ {}", dn(di), dn(di))));
            }
            if self.act_r(id, di) != c.identity(d.src(di)) {
                return Err(Error::NotAnAction(format!("1 ▷ {} is not an identity", dn(di))));
            }
        }
        for ci in 0..c.len() {
            let id = d.identity(c.src(ci));
            if self.act_r(ci, id) != ci {
                return Err(Error::NotAnAction(format!("{} ▷ 1 ≠ {}", cn(ci), cn(ci))));
            }
            if self.act_l(ci, id) != d.identity(c.dst(ci)) {
                return Err(Error::NotAnAction(format!("{} ◁ 1 is not an identity", cn(ci))));
            }
        }
        // MP2, then the composition law of ▷
        for ci in 0..c.len() {
            for &d1 in d.arriving(c.src(ci)) {
                for &d2 in d.arriving(d.src(d1)) {
                    let d12 = d.compose(d1, d2).unwrap();
                    let r1 = self.act_r(ci, d1);
                    let rhs = d.compose(self.act_l(ci, d1), self.act_l(r1, d2));
                    if rhs != Some(self.act_l(ci, d12)) {
                        return Err(Error::MP2Violation { c: cn(ci), d1: dn(d1), d2: dn(d2) });
                    }
                    if self.act_r(ci, d12) != self.act_r(r1, d2) {
                        return Err(Error::NotAnAction(format!(
                            "{} ▷ ({}{}) ≠ ({} ▷ {}) ▷ {}",
                            cn(ci),
                            dn(d1),
                            dn(d2),
                            cn(ci),
                            dn(d1),
                            dn(d2)
                        )));
                    }
                }
            }
        }
        // MP3, then the composition law of ◁
        for c1 in 0..c.len() {
            for &c2 in c.arriving(c.src(c1)) {
                let c12 = c.compose(c1, c2).unwrap();
                for &di in d.arriving(c.src(c2)) {
                    let inner = self.act_l(c2, di);
                    let rhs = c.compose(self.act_r(c1, inner), self.act_r(c2, di));
                    if rhs != Some(self.act_r(c12, di)) {
                        return Err(Error::MP3Violation { c1: cn(c1), c2: cn(c2), d: dn(di) });
                    }
                    if self.act_l(c12, di) != self.act_l(c1, inner) {
                        return Err(Error::NotAnAction(format!(
                            "({}{}) ◁ {} ≠ {} ◁ ({} ◁ {})",
                            cn(c1),
                            cn(c2),
                            dn(di),
                            cn(c1),
                            cn(c2),
                            dn(di)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn c(&self) -> &FiniteCategory {
        &self.c
    }

    pub fn d(&self) -> &FiniteCategory {
        &self.d
    }

    pub fn num_objects(&self) -> usize {
        self.c.num_objects()
    }

    /// `c ◁ d`; panics unless `s(c) = r(d)`.
    pub fn act_l(&self, c: usize, d: usize) -> usize {
        let v = self.act_l[c * self.d.len() + d];
        assert!(v != NONE, "act_l on non-composable pair ({c}, {d})");
        v as usize
    }

    /// `c ▷ d`; panics unless `s(c) = r(d)`.
    pub fn act_r(&self, c: usize, d: usize) -> usize {
        let v = self.act_r[c * self.d.len() + d];
        assert!(v != NONE, "act_r on non-composable pair ({c}, {d})");
        v as usize
    }

    /// `c ◁ (d₁,…,d_q)` and `c ▷ (d₁,…,d_q)`: the D-tuple
    /// `(c◁d₁, (c▷d₁)◁d₂, …)` and the final `C`-morphism. For `q = 0` the
    /// result is the empty tuple and `c` itself.
    pub fn act_on_d_tuple(&self, c: usize, ds: &[usize]) -> (Vec<usize>, usize) {
        let mut cur = c;
        let mut out = Vec::with_capacity(ds.len());
        for &d in ds {
            out.push(self.act_l(cur, d));
            cur = self.act_r(cur, d);
        }
        (out, cur)
    }

    /// `(c₁,…,c_p) ◁ d` and `(c₁,…,c_p) ▷ d`: the final `D`-morphism
    /// `c₁◁(c₂◁(…◁d))` and the C-tuple `(c₁▷(c₂…◁d), …, c_p▷d)`.
    pub fn act_on_c_tuple(&self, cs: &[usize], d: usize) -> (usize, Vec<usize>) {
        let mut cur = d;
        let mut out = vec![0; cs.len()];
        for i in (0..cs.len()).rev() {
            out[i] = self.act_r(cs[i], cur);
            cur = self.act_l(cs[i], cur);
        }
        (cur, out)
    }

    /// Rewrite the word `c₁…c_m d₁…d_n` as `d′₁…d′_n c′₁…c′_m`, moving each
    /// `c` across the whole D-tuple, rightmost `c` first.
    pub fn cross(&self, cs: &[usize], ds: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut ds = ds.to_vec();
        let mut out = vec![0; cs.len()];
        for i in (0..cs.len()).rev() {
            let (nd, nc) = self.act_on_d_tuple(cs[i], &ds);
            ds = nd;
            out[i] = nc;
        }
        (ds, out)
    }

    /// Same rewrite, moving each `d` across the whole C-tuple, leftmost `d`
    /// first.
    pub fn cross_by_columns(&self, cs: &[usize], ds: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut cs = cs.to_vec();
        let mut out = Vec::with_capacity(ds.len());
        for &d in ds {
            let (nd, nc) = self.act_on_c_tuple(&cs, d);
            out.push(nd);
            cs = nc;
        }
        (out, cs)
    }

    /// Memoised tables of `⋈_{m,n}` on `C^m * D^n`.
    pub fn tuple_action(&self, m: usize, n: usize, cap: u128) -> Result<Arc<TupleAction>> {
        if let Some(t) = self.tuple_cache.read().unwrap().get(&(m, n)) {
            return Ok(t.clone());
        }
        let built = Arc::new(TupleAction::build(self, m, n, cap)?);
        let mut cache = self.tuple_cache.write().unwrap();
        Ok(cache.entry((m, n)).or_insert(built).clone())
    }

    pub fn to_factorisation_rule(&self) -> FactorisationRule {
        let nd = self.d.len();
        let mut table = vec![None; self.c.len() * nd];
        for ci in 0..self.c.len() {
            for &di in self.d.arriving(self.c.src(ci)) {
                table[ci * nd + di] = Some((self.act_l(ci, di), self.act_r(ci, di)));
            }
        }
        FactorisationRule { c: self.c.clone(), d: self.d.clone(), table }
    }

    pub fn from_factorisation_rule(fr: &FactorisationRule) -> Result<Self> {
        fr.validate()?;
        let nd = fr.d.len();
        Self::new(
            fr.c.clone(),
            fr.d.clone(),
            |c, d| fr.table[c * nd + d].map(|x| x.0),
            |c, d| fr.table[c * nd + d].map(|x| x.1),
        )
    }

    /// The Zappa–Szép product with its embeddings.
    pub fn zappa_szep(&self) -> Result<ZappaSzep> {
        ZappaSzep::build(self)
    }

    /// Whether `C ⋈ D` is left cancellative; on failure returns a witness
    /// `(f, g, h)` with `fg = fh` and `g ≠ h`.
    pub fn is_left_cancellative(&self) -> Result<(bool, Option<[String; 3]>)> {
        let zs = self.zappa_szep()?;
        let cat = &zs.category;
        for f in 0..cat.len() {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for &g in cat.arriving(cat.src(f)) {
                let fg = cat.compose(f, g).unwrap();
                if let Some(&h) = seen.get(&fg) {
                    return Ok((false, Some([cat.mid(f).into(), cat.mid(h).into(), cat.mid(g).into()])));
                }
                seen.insert(fg, g);
            }
        }
        Ok((true, None))
    }

    /// Derive a matched pair from a strict factorisation system `[D, C]` of
    /// `e`, given as the morphism indices of two wide subcategories.
    pub fn from_strict_factorisation(e: &FiniteCategory, c_sub: &[usize], d_sub: &[usize]) -> Result<Self> {
        let c = subcategory(e, c_sub)?;
        let d = subcategory(e, d_sub)?;
        // unique factorisation of every morphism of e
        let mut factor: HashMap<usize, (usize, usize)> = HashMap::new();
        for (dl, &dg) in d_sub.iter().enumerate() {
            for (cl, &cg) in c_sub.iter().enumerate() {
                if e.src(dg) != e.dst(cg) {
                    continue;
                }
                let g = e.compose(dg, cg).unwrap();
                if factor.insert(g, (dl, cl)).is_some() {
                    return Err(Error::FactorisationAmbiguous(e.mid(g).into()));
                }
            }
        }
        if let Some(g) = (0..e.len()).find(|g| !factor.contains_key(g)) {
            return Err(Error::FactorisationMissing(e.mid(g).into()));
        }
        let fac = |cl: usize, dl: usize| factor[&e.compose(c_sub[cl], d_sub[dl]).unwrap()];
        Self::new(c.clone(), d.clone(), |cl, dl| Some(fac(cl, dl).0), |cl, dl| Some(fac(cl, dl).1))
    }

    /// The pair `(C, C⁰)` with `c ◁ s(c) = r(c)` and `c ▷ s(c) = c`.
    pub fn trivial(c: &FiniteCategory) -> Self {
        let d = discrete_like(c);
        Self::new(c.clone(), d.clone(), |ci, _| Some(c.dst(ci)), |ci, _| Some(ci)).expect("trivial pair")
    }

    /// Trivial actions `c ◁ d = d`, `c ▷ d = c`; only valid when every
    /// morphism is an endomorphism (e.g. monoids).
    pub fn trivially_matched(c: &FiniteCategory, d: &FiniteCategory) -> Result<Self> {
        Self::new(c.clone(), d.clone(), |_, di| Some(di), |ci, _| Some(ci))
    }
}

/// Discrete category on the objects of `c`, reusing the identity ids of `c`.
fn discrete_like(c: &FiniteCategory) -> FiniteCategory {
    let morphisms = (0..c.num_objects())
        .map(|x| Morphism { id: c.mid(c.identity(x)).to_string(), src: x, dst: x })
        .collect();
    FiniteCategory::build(
        c.objects().to_vec(),
        morphisms,
        (0..c.num_objects()).collect(),
        |f, g| (f == g).then_some(f),
    )
    .expect("discrete category")
}

/// The subcategory on the given morphisms (which must contain all
/// identities and be closed under composition), keeping ids and order.
pub fn subcategory(e: &FiniteCategory, morphisms: &[usize]) -> Result<FiniteCategory> {
    let local: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut identity = Vec::with_capacity(e.num_objects());
    for x in 0..e.num_objects() {
        let id = e.identity(x);
        identity.push(*local.get(&id).ok_or_else(|| Error::MissingIdentity(e.objects()[x].clone()))?);
    }
    let ms = morphisms
        .iter()
        .map(|&g| Morphism { id: e.mid(g).into(), src: e.src(g), dst: e.dst(g) })
        .collect();
    FiniteCategory::build(e.objects().to_vec(), ms, identity, |f, g| {
        local.get(&e.compose(morphisms[f], morphisms[g])?).copied()
    })
}

/// Tables of the tuple crossing `⋈_{m,n}: C^m * D^n → D^n * C^m`.
#[derive(Debug, Clone)]
pub struct TupleAction {
    pub m: usize,
    pub n: usize,
    pub c_tuples: Vec<ComposableTuple>,
    pub d_tuples: Vec<ComposableTuple>,
    /// `(c-tuple index, d-tuple index) → (d-tuple index, c-tuple index)`.
    pub table: HashMap<(usize, usize), (usize, usize)>,
}

impl TupleAction {
    fn build(mp: &MatchedPair, m: usize, n: usize, cap: u128) -> Result<Self> {
        let c_tuples = mp.c.composable_tuples(m, cap)?;
        let d_tuples = mp.d.composable_tuples(n, cap)?;
        let pairs: u128 = {
            let by_src = tuple_counts(&c_tuples, mp.num_objects(), |t| t.s);
            let by_rng = tuple_counts(&d_tuples, mp.num_objects(), |t| t.r);
            by_src.iter().zip(&by_rng).map(|(a, b)| a * b).sum()
        };
        if pairs > cap {
            return Err(Error::DegreeTooLarge { degree: m + n, count: pairs, cap });
        }
        let c_index: HashMap<&[usize], usize> =
            c_tuples.iter().enumerate().map(|(i, t)| (t.entries.as_slice(), i)).collect();
        let d_index: HashMap<&[usize], usize> =
            d_tuples.iter().enumerate().map(|(i, t)| (t.entries.as_slice(), i)).collect();
        let mut d_from: Vec<Vec<usize>> = vec![Vec::new(); mp.num_objects()];
        for (i, t) in d_tuples.iter().enumerate() {
            d_from[t.r].push(i);
        }
        let mut table = HashMap::new();
        for (ci, ct) in c_tuples.iter().enumerate() {
            for &di in &d_from[ct.s] {
                let (nd, nc) = mp.cross(&ct.entries, &d_tuples[di].entries);
                table.insert((ci, di), (d_index[nd.as_slice()], c_index[nc.as_slice()]));
            }
        }
        Ok(TupleAction { m, n, c_tuples, d_tuples, table })
    }

    /// `(c-tuple) ◁ (d-tuple)` as a D-tuple index.
    pub fn act_l(&self, ci: usize, di: usize) -> Option<usize> {
        self.table.get(&(ci, di)).map(|x| x.0)
    }

    /// `(c-tuple) ▷ (d-tuple)` as a C-tuple index.
    pub fn act_r(&self, ci: usize, di: usize) -> Option<usize> {
        self.table.get(&(ci, di)).map(|x| x.1)
    }
}

fn tuple_counts(ts: &[ComposableTuple], n: usize, key: impl Fn(&ComposableTuple) -> usize) -> Vec<u128> {
    let mut out = vec![0u128; n];
    for t in ts {
        out[key(t)] += 1;
    }
    out
}

/// A factorisation rule `⋈: C * D → D * C`, `c ⋈ d = (d′, c′)`.
#[derive(Debug, Clone)]
pub struct FactorisationRule {
    pub c: FiniteCategory,
    pub d: FiniteCategory,
    /// Indexed by `c * |D| + d`; `None` off the composable pairs.
    pub table: Vec<Option<(usize, usize)>>,
}

impl PartialEq for FactorisationRule {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.c.to_raw() == other.c.to_raw() && self.d.to_raw() == other.d.to_raw()
    }
}

impl FactorisationRule {
    pub fn get(&self, c: usize, d: usize) -> Option<(usize, usize)> {
        self.table[c * self.d.len() + d]
    }

    /// Check FR1 (range/source matching) and FR2 (both squares).
    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.c, &self.d);
        if c.objects() != d.objects() {
            return Err(Error::ObjectMismatch);
        }
        let nd = d.len();
        if self.table.len() != c.len() * nd {
            return Err(Error::ShapeMismatch("factorisation table size".into()));
        }
        for ci in 0..c.len() {
            for di in 0..nd {
                let composable = c.src(ci) == d.dst(di);
                let entry = self.table[ci * nd + di];
                let fr1 = || Error::FR1Violation { c: c.mid(ci).into(), d: d.mid(di).into() };
                match (composable, entry) {
                    (false, None) => {}
                    (false, Some(_)) | (true, None) => return Err(fr1()),
                    (true, Some((dd, cc))) => {
                        if dd >= nd || cc >= c.len() {
                            return Err(fr1());
                        }
                        if d.dst(dd) != c.dst(ci) || c.src(cc) != d.src(di) || d.src(dd) != c.dst(cc) {
                            return Err(fr1());
                        }
                    }
                }
            }
        }
        let get = |ci: usize, di: usize| self.table[ci * nd + di].unwrap();
        for c1 in 0..c.len() {
            for &c2 in c.arriving(c.src(c1)) {
                let c12 = c.compose(c1, c2).unwrap();
                for &di in d.arriving(c.src(c2)) {
                    let (d2, c2p) = get(c2, di);
                    let (d3, c1p) = get(c1, d2);
                    if get(c12, di) != (d3, c.compose(c1p, c2p).unwrap()) {
                        return Err(Error::FR2Violation(format!(
                            "({}{}) ⋈ {}",
                            c.mid(c1),
                            c.mid(c2),
                            d.mid(di)
                        )));
                    }
                }
            }
        }
        for ci in 0..c.len() {
            for &d1 in d.arriving(c.src(ci)) {
                for &d2 in d.arriving(d.src(d1)) {
                    let (d1p, cp) = get(ci, d1);
                    let (d2p, cpp) = get(cp, d2);
                    if get(ci, d.compose(d1, d2).unwrap()) != (d.compose(d1p, d2p).unwrap(), cpp) {
                        return Err(Error::FR2Violation(format!(
                            "{} ⋈ ({}{})",
                            c.mid(ci),
                            d.mid(d1),
                            d.mid(d2)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `C ⋈ D` realised on pairs `(d, c)`, ordered lexicographically by
/// `(d, c)`.
#[derive(Debug, Clone)]
pub struct ZappaSzep {
    pub category: FiniteCategory,
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `ι_C(c) = (r(c), c)`.
    pub embed_c: Vec<usize>,
    /// `ι_D(d) = (d, s(d))`.
    pub embed_d: Vec<usize>,
}

impl ZappaSzep {
    fn build(mp: &MatchedPair) -> Result<Self> {
        let (c, d) = (&mp.c, &mp.d);
        let mut pairs = Vec::new();
        for di in 0..d.len() {
            for ci in 0..c.len() {
                if d.src(di) == c.dst(ci) {
                    pairs.push((di, ci));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let morphisms = pairs
            .iter()
            .map(|&(di, ci)| Morphism { id: format!("{}*{}", d.mid(di), c.mid(ci)), src: c.src(ci), dst: d.dst(di) })
            .collect();
        let identity = (0..mp.num_objects()).map(|x| index[&(d.identity(x), c.identity(x))]).collect();
        let category = FiniteCategory::build(c.objects().to_vec(), morphisms, identity, |f, g| {
            let (d1, c1) = pairs[f];
            let (d2, c2) = pairs[g];
            let nd = d.compose(d1, mp.act_l(c1, d2))?;
            let nc = c.compose(mp.act_r(c1, d2), c2)?;
            index.get(&(nd, nc)).copied()
        })?;
        let embed_c = (0..c.len()).map(|ci| index[&(d.identity(c.dst(ci)), ci)]).collect();
        let embed_d = (0..d.len()).map(|di| index[&(di, c.identity(d.src(di)))]).collect();
        Ok(ZappaSzep { category, pairs, index, embed_c, embed_d })
    }

    /// Index of the morphism `dc`.
    pub fn index_of(&self, d: usize, c: usize) -> Option<usize> {
        self.index.get(&(d, c)).copied()
    }
}

/// A morphism of matched pairs: functors on `C` and `D` agreeing on
/// objects and intertwining both actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPairMorphism {
    pub objects: Vec<usize>,
    pub on_c: Vec<usize>,
    pub on_d: Vec<usize>,
}

impl MatchedPairMorphism {
    /// Check functoriality and the intertwining conditions.
    pub fn verify(&self, src: &MatchedPair, tgt: &MatchedPair) -> Result<()> {
        check_functor(src.c(), tgt.c(), &self.objects, &self.on_c)?;
        check_functor(src.d(), tgt.d(), &self.objects, &self.on_d)?;
        for ci in 0..src.c.len() {
            for &di in src.d.arriving(src.c.src(ci)) {
                let (hc, hd) = (self.on_c[ci], self.on_d[di]);
                if tgt.act_l(hc, hd) != self.on_d[src.act_l(ci, di)]
                    || tgt.act_r(hc, hd) != self.on_c[src.act_r(ci, di)]
                {
                    return Err(Error::NotAnAction(format!(
                        "morphism does not intertwine the actions at ({}, {})",
                        src.c.mid(ci),
                        src.d.mid(di)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The induced functor on Zappa–Szép products, `dc ↦ h(d)h(c)`.
    pub fn on_zappa_szep(&self, src: &ZappaSzep, tgt: &ZappaSzep) -> Vec<usize> {
        src.pairs
            .iter()
            .map(|&(d, c)| tgt.index_of(self.on_d[d], self.on_c[c]).expect("images compose"))
            .collect()
    }
}

fn check_functor(a: &FiniteCategory, b: &FiniteCategory, objects: &[usize], map: &[usize]) -> Result<()> {
    let bad = |what: String| Err(Error::NotAnAction(format!("not a functor: {what}")));
    if map.len() != a.len() || objects.len() != a.num_objects() {
        return bad("table sizes".into());
    }
    for f in 0..a.len() {
        let h = map[f];
        if b.src(h) != objects[a.src(f)] || b.dst(h) != objects[a.dst(f)] {
            return bad(format!("{} is mapped ill-typed", a.mid(f)));
        }
        for &g in a.arriving(a.src(f)) {
            if b.compose(h, map[g]) != Some(map[a.compose(f, g).unwrap()]) {
                return bad(format!("({}, {})", a.mid(f), a.mid(g)));
            }
        }
    }
    for x in 0..a.num_objects() {
        if map[a.identity(x)] != b.identity(objects[x]) {
            return bad(format!("identity of {}", a.objects()[x]));
        }
    }
    Ok(())
}

/// Validate a JSON matched pair.
pub fn validate_matched_pair(raw: &RawMatchedPair) -> Result<MatchedPair> {
    MatchedPair::from_raw(raw)
}
