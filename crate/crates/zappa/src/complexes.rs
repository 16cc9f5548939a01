//! Chain complexes of finite categories and matched pairs.
//!
//! All complexes use full (unnormalised) simplicial chains. Boundaries are
//! `d_k: C_{k+1} → C_k`, columns indexed by the degree-`(k+1)` basis.
//!
//! A basis element of the matched complex `C_{p,q} = ℤ(C^p * D^q)` is a
//! [`Cell`]: a C-tuple of length `p`, a D-tuple of length `q`, and the object
//! `mid = s(c_{p−1}) = r(d_0)` between them (needed when either part is
//! empty).

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::{homology_of, AbelianGroup, IntMatrix, Subquotient};
use crate::category::{ComposableTuple, FiniteCategory};
use crate::error::{Error, Result};
use crate::matched_pair::MatchedPair;

/// A generator `[c_0,…,c_{p−1}; d_0,…,d_{q−1}]` of `C_{p,q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub mid: usize,
}

impl Cell {
    pub fn p(&self) -> usize {
        self.c.len()
    }

    pub fn q(&self) -> usize {
        self.d.len()
    }

    pub fn render(&self, mp: &MatchedPair) -> String {
        if self.c.is_empty() && self.d.is_empty() {
            return format!("[{}]", mp.c().objects()[self.mid]);
        }
        let cs: Vec<&str> = self.c.iter().map(|&c| mp.c().mid(c)).collect();
        let ds: Vec<&str> = self.d.iter().map(|&d| mp.d().mid(d)).collect();
        format!("[{};{}]", cs.join(","), ds.join(","))
    }
}

/// Render a tuple of a category.
pub fn render_tuple(cat: &FiniteCategory, t: &ComposableTuple) -> String {
    if t.entries.is_empty() {
        return format!("[{}]", cat.objects()[t.r]);
    }
    let names: Vec<&str> = t.entries.iter().map(|&f| cat.mid(f)).collect();
    format!("[{}]", names.join(","))
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Matrix of a map sending each source label to a signed sum of target
/// labels.
pub fn matrix_of<A, B, F>(src: &[A], tgt: &HashMap<B, usize>, rows: usize, mut f: F) -> IntMatrix
where
    B: Eq + Hash + Debug,
    F: FnMut(&A) -> Vec<(B, i64)>,
{
    let mut trip = Vec::new();
    for (j, a) in src.iter().enumerate() {
        for (b, v) in f(a) {
            let i = *tgt.get(&b).unwrap_or_else(|| panic!("{b:?} is not a basis element"));
            trip.push((i, j, BigInt::from(v)));
        }
    }
    IntMatrix::from_triplets(rows, src.len(), trip)
}

fn index_map<L: Clone + Eq + Hash>(basis: &[L]) -> HashMap<L, usize> {
    basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
}

/// A chain complex materialised in degrees `0..=top`.
#[derive(Debug, Clone)]
pub struct ChainComplex<L> {
    pub name: String,
    bases: Vec<Vec<L>>,
    index: Vec<HashMap<L, usize>>,
    boundaries: Vec<IntMatrix>,
}

impl<L: Clone + Eq + Hash> ChainComplex<L> {
    /// Assemble and check shapes and `d∘d = 0`.
    pub fn new(name: impl Into<String>, bases: Vec<Vec<L>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if bases.is_empty() || boundaries.len() + 1 != bases.len() {
            return Err(Error::ShapeMismatch("need one boundary per adjacent pair of degrees".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != bases[k].len() || d.cols() != bases[k + 1].len() {
                return Err(Error::ShapeMismatch(format!("d_{k} is {}×{}", d.rows(), d.cols())));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(Error::NotAComplex(k));
            }
        }
        let index = bases.iter().map(|b| index_map(b)).collect();
        Ok(ChainComplex { name: name.into(), bases, index, boundaries })
    }

    /// Highest materialised degree.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, k: usize) -> &[L] {
        &self.bases[k]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases[k].len()
    }

    pub fn index(&self, k: usize) -> &HashMap<L, usize> {
        &self.index[k]
    }

    pub fn index_of(&self, k: usize, label: &L) -> Option<usize> {
        self.index[k].get(label).copied()
    }

    /// `d_k: C_{k+1} → C_k`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        self.boundaries.get(k)
    }

    /// `H_k` with tracked generators; needs degree `k+1`.
    pub fn homology(&self, k: usize) -> Result<Subquotient> {
        if k + 1 > self.top() {
            return Err(Error::DegreeNotMaterialised(k + 1));
        }
        let d_out = if k == 0 { None } else { Some(&self.boundaries[k - 1]) };
        homology_of(self.dim(k), d_out, &self.boundaries[k])
    }

    /// `H_0, …, H_upto`.
    pub fn homology_groups(&self, upto: usize) -> Result<Vec<AbelianGroup>> {
        (0..=upto).map(|k| Ok(self.homology(k)?.group)).collect()
    }
}

/// JSON form of a complex: one label list per degree and the boundaries
/// `d_k` as `{rows, cols, entries: [[i, j, "v"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub name: String,
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix>,
}

impl<L: Clone + Eq + Hash> ChainComplex<L> {
    pub fn to_raw(&self, label: impl Fn(&L) -> String) -> RawComplex {
        RawComplex {
            name: self.name.clone(),
            bases: self.bases.iter().map(|b| b.iter().map(&label).collect()).collect(),
            boundaries: self.boundaries.clone(),
        }
    }
}

impl ChainComplex<String> {
    /// Rebuild from JSON, re-checking shapes, label uniqueness and `d∘d = 0`.
    pub fn from_raw(raw: &RawComplex) -> Result<Self> {
        for (k, b) in raw.bases.iter().enumerate() {
            if index_map(b).len() != b.len() {
                return Err(Error::Parse(format!("duplicate label in degree {k}")));
            }
        }
        ChainComplex::new(raw.name.clone(), raw.bases.clone(), raw.boundaries.clone())
    }
}

// ---------------------------------------------------------------------------
// categorical complex

/// Face `∂^i` of a tuple with `k+1 ≥ 1` entries, `0 ≤ i ≤ k+1`.
pub fn face(cat: &FiniteCategory, t: &ComposableTuple, i: usize) -> ComposableTuple {
    let n = t.entries.len();
    assert!(n >= 1 && i <= n, "face index {i} out of range for a {n}-tuple");
    let e = &t.entries;
    if i == 0 {
        cat.tuple(e[1..].to_vec(), cat.src(e[0]))
    } else if i == n {
        cat.tuple(e[..n - 1].to_vec(), cat.dst(e[n - 1]))
    } else {
        let mut out = e[..i - 1].to_vec();
        out.push(cat.compose(e[i - 1], e[i]).expect("composable tuple"));
        out.extend_from_slice(&e[i + 1..]);
        cat.tuple(out, t.r)
    }
}

/// Degeneracy `σ^i`: insert an identity at position `i`, `0 ≤ i ≤ k`.
pub fn degeneracy(cat: &FiniteCategory, t: &ComposableTuple, i: usize) -> ComposableTuple {
    let n = t.entries.len();
    assert!(i <= n, "degeneracy index {i} out of range for a {n}-tuple");
    let x = if i < n { cat.dst(t.entries[i]) } else { t.s };
    let mut out = t.entries.clone();
    out.insert(i, cat.identity(x));
    cat.tuple(out, x)
}

/// The categorical complex `C_•(C)` in degrees `0..=k_max + 1`.
pub fn categorical_complex(cat: &FiniteCategory, k_max: usize, cap: u128) -> Result<ChainComplex<ComposableTuple>> {
    let bases: Vec<Vec<ComposableTuple>> =
        (0..=k_max + 1).map(|k| cat.composable_tuples(k, cap)).collect::<Result<_>>()?;
    let index: Vec<HashMap<ComposableTuple, usize>> = bases.iter().map(|b| index_map(b)).collect();
    let boundaries = (0..=k_max)
        .map(|k| {
            matrix_of(&bases[k + 1], &index[k], bases[k].len(), |t| {
                (0..=k + 1).map(|i| (face(cat, t, i), sign(i))).collect()
            })
        })
        .collect();
    ChainComplex::new("categorical", bases, boundaries)
}

/// Matrix of `∂^i: C_{k+1} → C_k`.
pub fn face_matrix(cat: &FiniteCategory, cx: &ChainComplex<ComposableTuple>, k: usize, i: usize) -> Result<IntMatrix> {
    if k + 1 > cx.top() {
        return Err(Error::DegreeNotMaterialised(k + 1));
    }
    if i > k + 1 {
        return Err(Error::IndexOutOfRange { index: i, max: k + 1 });
    }
    Ok(matrix_of(cx.basis(k + 1), cx.index(k), cx.dim(k), |t| vec![(face(cat, t, i), 1)]))
}

/// Matrix of `σ^i: C_k → C_{k+1}`.
pub fn degeneracy_matrix(
    cat: &FiniteCategory,
    cx: &ChainComplex<ComposableTuple>,
    k: usize,
    i: usize,
) -> Result<IntMatrix> {
    if k + 1 > cx.top() {
        return Err(Error::DegreeNotMaterialised(k + 1));
    }
    if i > k {
        return Err(Error::IndexOutOfRange { index: i, max: k });
    }
    Ok(matrix_of(cx.basis(k), cx.index(k + 1), cx.dim(k + 1), |t| vec![(degeneracy(cat, t, i), 1)]))
}

// ---------------------------------------------------------------------------
// matched complex

/// Basis of `C_{p,q}`, sorted.
pub fn cells(mp: &MatchedPair, p: usize, q: usize, cap: u128) -> Result<Vec<Cell>> {
    let by_src = mp.c().counts_by_source(p);
    let by_rng = mp.d().counts_by_range(q);
    let count = by_src.iter().zip(&by_rng).fold(0u128, |a, (x, y)| a.saturating_add(x.saturating_mul(*y)));
    if count > cap {
        return Err(Error::DegreeTooLarge { degree: p + q, count, cap });
    }
    let cs = mp.c().composable_tuples(p, cap)?;
    let mut out = Vec::with_capacity(count as usize);
    for ct in &cs {
        for dt in mp.d().tuples_from(ct.s, q) {
            out.push(Cell { c: ct.entries.clone(), d: dt.entries, mid: ct.s });
        }
    }
    out.sort();
    Ok(out)
}

/// `∂^{h,i}: C_{p+1,q} → C_{p,q}`, `0 ≤ i ≤ p+1`.
pub fn h_face(mp: &MatchedPair, x: &Cell, i: usize) -> Cell {
    let n = x.c.len();
    assert!(n >= 1 && i <= n, "horizontal face {i} out of range");
    if i == 0 {
        Cell { c: x.c[1..].to_vec(), d: x.d.clone(), mid: x.mid }
    } else if i == n {
        let last = x.c[n - 1];
        let (d, _) = mp.act_on_d_tuple(last, &x.d);
        Cell { c: x.c[..n - 1].to_vec(), d, mid: mp.c().dst(last) }
    } else {
        let mut c = x.c[..i - 1].to_vec();
        c.push(mp.c().compose(x.c[i - 1], x.c[i]).expect("composable"));
        c.extend_from_slice(&x.c[i + 1..]);
        Cell { c, d: x.d.clone(), mid: x.mid }
    }
}

/// Unsigned `∂^{v,j}: C_{p,q+1} → C_{p,q}`, `0 ≤ j ≤ q+1`.
pub fn v_face(mp: &MatchedPair, x: &Cell, j: usize) -> Cell {
    let n = x.d.len();
    assert!(n >= 1 && j <= n, "vertical face {j} out of range");
    if j == 0 {
        let first = x.d[0];
        let (_, c) = mp.act_on_c_tuple(&x.c, first);
        Cell { c, d: x.d[1..].to_vec(), mid: mp.d().src(first) }
    } else if j == n {
        Cell { c: x.c.clone(), d: x.d[..n - 1].to_vec(), mid: x.mid }
    } else {
        let mut d = x.d[..j - 1].to_vec();
        d.push(mp.d().compose(x.d[j - 1], x.d[j]).expect("composable"));
        d.extend_from_slice(&x.d[j + 1..]);
        Cell { c: x.c.clone(), d, mid: x.mid }
    }
}

/// `σ^{h,i}: C_{p,q} → C_{p+1,q}`: identity inserted at C-position `i`.
pub fn h_degeneracy(mp: &MatchedPair, x: &Cell, i: usize) -> Cell {
    let n = x.c.len();
    assert!(i <= n, "horizontal degeneracy {i} out of range");
    let obj = if i < n { mp.c().dst(x.c[i]) } else { x.mid };
    let mut c = x.c.clone();
    c.insert(i, mp.c().identity(obj));
    Cell { c, d: x.d.clone(), mid: x.mid }
}

/// Unsigned `σ^{v,j}: C_{p,q} → C_{p,q+1}`: identity inserted at D-position `j`.
pub fn v_degeneracy(mp: &MatchedPair, x: &Cell, j: usize) -> Cell {
    let n = x.d.len();
    assert!(j <= n, "vertical degeneracy {j} out of range");
    let obj = if j == 0 { x.mid } else { mp.d().src(x.d[j - 1]) };
    let mut d = x.d.clone();
    d.insert(j, mp.d().identity(obj));
    Cell { c: x.c.clone(), d, mid: x.mid }
}

/// The matched double complex, materialised for total degree `≤ top`.
#[derive(Debug, Clone)]
pub struct DoubleComplex {
    pub mp: MatchedPair,
    pub top: usize,
    bases: HashMap<(usize, usize), Vec<Cell>>,
    index: HashMap<(usize, usize), HashMap<Cell, usize>>,
    dh: HashMap<(usize, usize), IntMatrix>,
    dv: HashMap<(usize, usize), IntMatrix>,
}

impl DoubleComplex {
    /// Build `C_{p,q}` for `p + q ≤ k_max + 1`, the boundaries, and check
    /// `d^h d^h = 0`, `d^v d^v = 0` and `d^h d^v = −d^v d^h`.
    pub fn new(mp: &MatchedPair, k_max: usize, cap: u128) -> Result<Self> {
        let top = k_max + 1;
        let mut bases = HashMap::new();
        let mut index = HashMap::new();
        for n in 0..=top {
            for p in 0..=n {
                let b = cells(mp, p, n - p, cap)?;
                index.insert((p, n - p), index_map(&b));
                bases.insert((p, n - p), b);
            }
        }
        let mut dc = DoubleComplex { mp: mp.clone(), top, bases, index, dh: HashMap::new(), dv: HashMap::new() };
        for n in 0..top {
            for p in 0..=n {
                let q = n - p;
                let h = dc.alternating(p, q, true);
                dc.dh.insert((p, q), h);
                let v = dc.alternating(p, q, false);
                dc.dv.insert((p, q), v);
            }
        }
        dc.check()?;
        Ok(dc)
    }

    fn alternating(&self, p: usize, q: usize, horizontal: bool) -> IntMatrix {
        let mp = &self.mp;
        if horizontal {
            matrix_of(&self.bases[&(p + 1, q)], &self.index[&(p, q)], self.dim(p, q), |x| {
                (0..=p + 1).map(|i| (h_face(mp, x, i), sign(i))).collect()
            })
        } else {
            let s = sign(p);
            matrix_of(&self.bases[&(p, q + 1)], &self.index[&(p, q)], self.dim(p, q), |x| {
                (0..=q + 1).map(|j| (v_face(mp, x, j), s * sign(j))).collect()
            })
        }
    }

    fn check(&self) -> Result<()> {
        for n in 2..=self.top {
            for p in 0..=n {
                let q = n - p;
                if p >= 2 && !self.dh[&(p - 2, q)].mul(&self.dh[&(p - 1, q)]).is_zero() {
                    return Err(Error::NotAComplex(n));
                }
                if q >= 2 && !self.dv[&(p, q - 2)].mul(&self.dv[&(p, q - 1)]).is_zero() {
                    return Err(Error::NotAComplex(n));
                }
                if p >= 1 && q >= 1 {
                    let hv = self.dh[&(p - 1, q - 1)].mul(&self.dv[&(p, q - 1)]);
                    let vh = self.dv[&(p - 1, q - 1)].mul(&self.dh[&(p - 1, q)]);
                    if !hv.add(&vh).is_zero() {
                        return Err(Error::NotAComplex(n));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self, p: usize, q: usize) -> &[Cell] {
        &self.bases[&(p, q)]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.bases[&(p, q)].len()
    }

    pub fn index(&self, p: usize, q: usize) -> &HashMap<Cell, usize> {
        &self.index[&(p, q)]
    }

    pub fn has(&self, p: usize, q: usize) -> bool {
        p + q <= self.top
    }

    fn need(&self, n: usize) -> Result<()> {
        if n > self.top {
            Err(Error::DegreeNotMaterialised(n))
        } else {
            Ok(())
        }
    }

    /// `d^h: C_{p+1,q} → C_{p,q}`.
    pub fn dh(&self, p: usize, q: usize) -> Result<&IntMatrix> {
        self.dh.get(&(p, q)).ok_or(Error::DegreeNotMaterialised(p + q + 1))
    }

    /// Signed `d^v: C_{p,q+1} → C_{p,q}`.
    pub fn dv(&self, p: usize, q: usize) -> Result<&IntMatrix> {
        self.dv.get(&(p, q)).ok_or(Error::DegreeNotMaterialised(p + q + 1))
    }

    /// `∂^{h,i}_{p,q}: C_{p+1,q} → C_{p,q}`.
    pub fn h_face_matrix(&self, p: usize, q: usize, i: usize) -> Result<IntMatrix> {
        self.need(p + q + 1)?;
        if i > p + 1 {
            return Err(Error::IndexOutOfRange { index: i, max: p + 1 });
        }
        Ok(matrix_of(self.basis(p + 1, q), self.index(p, q), self.dim(p, q), |x| vec![(h_face(&self.mp, x, i), 1)]))
    }

    /// `∂^{v,j}_{p,q}: C_{p,q+1} → C_{p,q}`, with the `(−1)^p` sign if `signed`.
    pub fn v_face_matrix(&self, p: usize, q: usize, j: usize, signed: bool) -> Result<IntMatrix> {
        self.need(p + q + 1)?;
        if j > q + 1 {
            return Err(Error::IndexOutOfRange { index: j, max: q + 1 });
        }
        let s = if signed { sign(p) } else { 1 };
        Ok(matrix_of(self.basis(p, q + 1), self.index(p, q), self.dim(p, q), |x| vec![(v_face(&self.mp, x, j), s)]))
    }

    /// `σ^{h,i}_{p,q}: C_{p,q} → C_{p+1,q}`.
    pub fn h_degeneracy_matrix(&self, p: usize, q: usize, i: usize) -> Result<IntMatrix> {
        self.need(p + q + 1)?;
        if i > p {
            return Err(Error::IndexOutOfRange { index: i, max: p });
        }
        Ok(matrix_of(self.basis(p, q), self.index(p + 1, q), self.dim(p + 1, q), |x| {
            vec![(h_degeneracy(&self.mp, x, i), 1)]
        }))
    }

    /// `σ^{v,j}_{p,q}: C_{p,q} → C_{p,q+1}`, with the `(−1)^p` sign if `signed`.
    pub fn v_degeneracy_matrix(&self, p: usize, q: usize, j: usize, signed: bool) -> Result<IntMatrix> {
        self.need(p + q + 1)?;
        if j > q {
            return Err(Error::IndexOutOfRange { index: j, max: q });
        }
        let s = if signed { sign(p) } else { 1 };
        Ok(matrix_of(self.basis(p, q), self.index(p, q + 1), self.dim(p, q + 1), |x| {
            vec![(v_degeneracy(&self.mp, x, j), s)]
        }))
    }

    /// Row `q`, degrees `0..=top−q`, with `d^h`.
    pub fn row(&self, q: usize) -> Result<ChainComplex<Cell>> {
        self.need(q)?;
        let n = self.top - q;
        let bases = (0..=n).map(|p| self.basis(p, q).to_vec()).collect();
        let ds = (0..n).map(|p| self.dh[&(p, q)].clone()).collect();
        ChainComplex::new(format!("row {q}"), bases, ds)
    }

    /// Column `p`, degrees `0..=top−p`, with signed `d^v`.
    pub fn column(&self, p: usize) -> Result<ChainComplex<Cell>> {
        self.need(p)?;
        let n = self.top - p;
        let bases = (0..=n).map(|q| self.basis(p, q).to_vec()).collect();
        let ds = (0..n).map(|q| self.dv[&(p, q)].clone()).collect();
        ChainComplex::new(format!("column {p}"), bases, ds)
    }

    /// Offsets of the `C_{p,k−p}` blocks inside `Tot_k`, by increasing `p`.
    pub fn total_offsets(&self, k: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(k + 2);
        let mut acc = 0;
        for p in 0..=k {
            off.push(acc);
            acc += self.dim(p, k - p);
        }
        off.push(acc);
        off
    }

    /// `Tot_k = ⊕_{p+q=k} C_{p,q}` with `d^Tot = d^h + d^v`, degrees
    /// `0..=top`.
    pub fn total(&self) -> Result<ChainComplex<Cell>> {
        let bases: Vec<Vec<Cell>> = (0..=self.top)
            .map(|k| (0..=k).flat_map(|p| self.basis(p, k - p).iter().cloned()).collect())
            .collect();
        let mut ds = Vec::with_capacity(self.top);
        for k in 0..self.top {
            let src = self.total_offsets(k + 1);
            let tgt = self.total_offsets(k);
            let mut m = IntMatrix::zeros(tgt[k + 1], src[k + 2]);
            for p in 0..=k + 1 {
                let q = k + 1 - p;
                if p >= 1 {
                    m.add_block(tgt[p - 1], src[p], &self.dh[&(p - 1, q)]);
                }
                if q >= 1 {
                    m.add_block(tgt[p], src[p], &self.dv[&(p, q - 1)]);
                }
            }
            ds.push(m);
        }
        ChainComplex::new("total", bases, ds)
    }
}

// ---------------------------------------------------------------------------
// diagonal complex

/// `∂^{Δ,i} = ∂^{h,i} ∘ ∂^{v,i}` (unsigned faces).
pub fn diagonal_face(mp: &MatchedPair, x: &Cell, i: usize) -> Cell {
    h_face(mp, &v_face(mp, x, i), i)
}

/// `σ^{Δ,i} = σ^{v,i} ∘ σ^{h,i}` (unsigned degeneracies).
pub fn diagonal_degeneracy(mp: &MatchedPair, x: &Cell, i: usize) -> Cell {
    v_degeneracy(mp, &h_degeneracy(mp, x, i), i)
}

/// The diagonal complex `C^Δ_k = C_{k,k}` in degrees `0..=k_max + 1`.
pub fn diagonal_complex(mp: &MatchedPair, k_max: usize, cap: u128) -> Result<ChainComplex<Cell>> {
    let bases: Vec<Vec<Cell>> = (0..=k_max + 1).map(|k| cells(mp, k, k, cap)).collect::<Result<_>>()?;
    let index: Vec<HashMap<Cell, usize>> = bases.iter().map(|b| index_map(b)).collect();
    let ds = (0..=k_max)
        .map(|k| {
            matrix_of(&bases[k + 1], &index[k], bases[k].len(), |x| {
                (0..=k + 1).map(|i| (diagonal_face(mp, x, i), sign(i))).collect()
            })
        })
        .collect();
    ChainComplex::new("diagonal", bases, ds)
}

/// Matrix of `∂^{Δ,i}: C^Δ_{k+1} → C^Δ_k`.
pub fn diagonal_face_matrix(mp: &MatchedPair, cx: &ChainComplex<Cell>, k: usize, i: usize) -> Result<IntMatrix> {
    if k + 1 > cx.top() {
        return Err(Error::DegreeNotMaterialised(k + 1));
    }
    if i > k + 1 {
        return Err(Error::IndexOutOfRange { index: i, max: k + 1 });
    }
    Ok(matrix_of(cx.basis(k + 1), cx.index(k), cx.dim(k), |x| vec![(diagonal_face(mp, x, i), 1)]))
}

/// Matrix of `σ^{Δ,i}: C^Δ_k → C^Δ_{k+1}`.
pub fn diagonal_degeneracy_matrix(
    mp: &MatchedPair,
    cx: &ChainComplex<Cell>,
    k: usize,
    i: usize,
) -> Result<IntMatrix> {
    if k + 1 > cx.top() {
        return Err(Error::DegreeNotMaterialised(k + 1));
    }
    if i > k {
        return Err(Error::IndexOutOfRange { index: i, max: k });
    }
    Ok(matrix_of(cx.basis(k), cx.index(k + 1), cx.dim(k + 1), |x| vec![(diagonal_degeneracy(mp, x, i), 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g2_category, s3_pair};
    use crate::category::{cyclic_group, DEFAULT_CAP};

    #[test]
    fn z2_boundary_example() {
        // d₁[a,a] = [a] − [aa] + [a] = 2[a] − [e]
        let z2 = cyclic_group(2);
        let cx = categorical_complex(&z2, 1, DEFAULT_CAP).unwrap();
        let aa = cx.index_of(2, &z2.tuple(vec![1, 1], 0)).unwrap();
        let a = cx.index_of(1, &z2.tuple(vec![1], 0)).unwrap();
        let e = cx.index_of(1, &z2.tuple(vec![0], 0)).unwrap();
        let d1 = cx.boundary(1).unwrap();
        assert_eq!(d1.get(a, aa), 2.into());
        assert_eq!(d1.get(e, aa), (-1).into());
    }

    #[test]
    fn g2_degree_zero() {
        let g = g2_category();
        let cx = categorical_complex(&g, 0, DEFAULT_CAP).unwrap();
        let pi = g.morphism_index("e0.e1").unwrap();
        let col = cx.index_of(1, &g.tuple(vec![pi], 0)).unwrap();
        let d0 = cx.boundary(0).unwrap();
        assert_eq!(d0.get(2, col), 1.into());
        assert_eq!(d0.get(0, col), (-1).into());
        assert_eq!(d0.get(1, col), 0.into());
    }

    #[test]
    fn last_horizontal_face_acts() {
        let mp = s3_pair();
        for x in cells(&mp, 2, 1, DEFAULT_CAP).unwrap() {
            let y = h_face(&mp, &x, 2);
            assert_eq!(y.c, vec![x.c[0]]);
            assert_eq!(y.d, vec![mp.act_l(x.c[1], x.d[0])]);
        }
    }

    #[test]
    fn s3_diagonal_degree_one() {
        assert_eq!(cells(&s3_pair(), 1, 1, DEFAULT_CAP).unwrap().len(), 6);
    }
}
