//! The natural chain maps between the three complexes of a matched pair:
//!
//! ```text
//!        Δ (AW)
//!   C^Δ ───────▶ C^Tot
//!    ▲ │ ◀─────── │ ▲
//!    │ │    ∇     │ │
//!  RΠ│ │Π      RΨ │ │Ψ
//!    │ ▼          ▼ │
//!        C^⋈
//! ```
//!
//! Every map is a matrix per degree; [`ChainMap::verify`] checks the
//! chain-map law exactly.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::abelian::{induced_hom, GroupHom, IntMatrix};
use crate::category::ComposableTuple;
use crate::complexes::{
    categorical_complex, diagonal_complex, h_degeneracy, h_face, matrix_of, v_degeneracy, v_face, Cell, ChainComplex,
    DoubleComplex,
};
use crate::error::{Error, Result};
use crate::matched_pair::{MatchedPair, MatchedPairMorphism, ZappaSzep};

/// A degree-wise family of matrices `f_k: A_k → B_k`, degrees `0..=top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub name: String,
    pub maps: Vec<IntMatrix>,
}

/// One degree of a dumped chain map, with basis labels on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMapDegree {
    pub degree: usize,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawChainMap {
    pub name: String,
    pub degrees: Vec<RawMapDegree>,
}

impl ChainMap {
    pub fn to_raw<A, B>(
        &self,
        src: &ChainComplex<A>,
        tgt: &ChainComplex<B>,
        src_label: impl Fn(&A) -> String,
        tgt_label: impl Fn(&B) -> String,
    ) -> RawChainMap
    where
        A: Clone + Eq + Hash,
        B: Clone + Eq + Hash,
    {
        let degrees = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| RawMapDegree {
                degree: k,
                source: src.basis(k).iter().map(&src_label).collect(),
                target: tgt.basis(k).iter().map(&tgt_label).collect(),
                matrix: m.clone(),
            })
            .collect();
        RawChainMap { name: self.name.clone(), degrees }
    }


    pub fn new(name: impl Into<String>, maps: Vec<IntMatrix>) -> Self {
        ChainMap { name: name.into(), maps }
    }

    pub fn identity<L: Clone + Eq + Hash>(cx: &ChainComplex<L>) -> Self {
        ChainMap::new("id", (0..=cx.top()).map(|k| IntMatrix::identity(cx.dim(k))).collect())
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn degree(&self, k: usize) -> Result<&IntMatrix> {
        self.maps.get(k).ok_or(Error::DegreeNotMaterialised(k))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let top = self.top().min(other.top());
        let maps = (0..=top).map(|k| self.maps[k].try_mul(&other.maps[k])).collect::<Result<_>>()?;
        Ok(ChainMap::new(format!("{}∘{}", self.name, other.name), maps))
    }

    /// Check shapes and `d^B_k f_{k+1} = f_k d^A_k`; the error names the
    /// first failing degree and a source basis element witnessing it.
    pub fn verify<A, B>(&self, src: &ChainComplex<A>, tgt: &ChainComplex<B>) -> Result<()>
    where
        A: Clone + Eq + Hash + Debug,
        B: Clone + Eq + Hash,
    {
        let top = self.top();
        if top > src.top() || top > tgt.top() {
            return Err(Error::DegreeNotMaterialised(top));
        }
        for (k, f) in self.maps.iter().enumerate() {
            if f.rows() != tgt.dim(k) || f.cols() != src.dim(k) {
                return Err(Error::ShapeMismatch(format!(
                    "{} in degree {k} is {}×{}, expected {}×{}",
                    self.name,
                    f.rows(),
                    f.cols(),
                    tgt.dim(k),
                    src.dim(k)
                )));
            }
        }
        for k in 0..top {
            let lhs = tgt.boundary(k).expect("materialised").mul(&self.maps[k + 1]);
            let rhs = self.maps[k].mul(src.boundary(k).expect("materialised"));
            let diff = lhs.sub(&rhs);
            if let Some(j) = diff.columns().iter().position(|c| !c.is_empty()) {
                return Err(Error::NotAChainMap(format!(
                    "{}: degree {} at {:?}",
                    self.name,
                    k + 1,
                    src.basis(k + 1)[j]
                )));
            }
        }
        Ok(())
    }

    /// The induced map `H_k(A) → H_k(B)`.
    pub fn on_homology<A, B>(&self, k: usize, src: &ChainComplex<A>, tgt: &ChainComplex<B>) -> Result<GroupHom>
    where
        A: Clone + Eq + Hash,
        B: Clone + Eq + Hash,
    {
        induced_hom(self.degree(k)?, &src.homology(k)?, &tgt.homology(k)?)
    }
}

/// The three complexes of a matched pair, materialised in degrees
/// `0..=k_max + 1`.
#[derive(Debug, Clone)]
pub struct Theories {
    pub mp: MatchedPair,
    pub zs: ZappaSzep,
    pub double: DoubleComplex,
    pub product: ChainComplex<ComposableTuple>,
    pub diagonal: ChainComplex<Cell>,
    pub total: ChainComplex<Cell>,
}

impl Theories {
    pub fn new(mp: &MatchedPair, k_max: usize, cap: u128) -> Result<Self> {
        let zs = mp.zappa_szep()?;
        let product = categorical_complex(&zs.category, k_max, cap)?;
        let double = DoubleComplex::new(mp, k_max, cap)?;
        let total = double.total()?;
        let diagonal = diagonal_complex(mp, k_max, cap)?;
        Ok(Theories { mp: mp.clone(), zs, double, product, diagonal, total })
    }

    pub fn top(&self) -> usize {
        self.product.top()
    }

    /// `∇: C^Tot → C^Δ`.
    pub fn eilenberg_zilber(&self) -> Result<ChainMap> {
        let f = self.build("∇", &self.total, &self.diagonal, |x| eilenberg_zilber_cell(&self.mp, x));
        f.verify(&self.total, &self.diagonal)?;
        Ok(f)
    }

    /// `Δ: C^Δ → C^Tot`.
    pub fn alexander_whitney(&self) -> Result<ChainMap> {
        let f = self.build("Δ", &self.diagonal, &self.total, |x| alexander_whitney_cell(&self.mp, x));
        f.verify(&self.diagonal, &self.total)?;
        Ok(f)
    }

    /// `Π: C^Δ → C^⋈`.
    pub fn pi(&self) -> Result<ChainMap> {
        let f = self.build("Π", &self.diagonal, &self.product, |x| vec![(pi_cell(&self.mp, &self.zs, x), 1)]);
        f.verify(&self.diagonal, &self.product)?;
        Ok(f)
    }

    /// `Ψ: C^⋈ → C^Tot`.
    pub fn psi(&self) -> Result<ChainMap> {
        let f = self.build("Ψ", &self.product, &self.total, |t| {
            psi_tuple(&self.mp, &self.zs, t).into_iter().map(|x| (x, 1)).collect()
        });
        f.verify(&self.product, &self.total)?;
        Ok(f)
    }

    /// `RΠ = ∇ ∘ Ψ: C^⋈ → C^Δ`.
    pub fn r_pi(&self) -> Result<ChainMap> {
        let mut f = self.eilenberg_zilber()?.compose(&self.psi()?)?;
        f.name = "RΠ".into();
        f.verify(&self.product, &self.diagonal)?;
        Ok(f)
    }

    /// `RΨ = Π ∘ ∇: C^Tot → C^⋈`.
    pub fn r_psi(&self) -> Result<ChainMap> {
        let mut f = self.pi()?.compose(&self.eilenberg_zilber()?)?;
        f.name = "RΨ".into();
        f.verify(&self.total, &self.product)?;
        Ok(f)
    }

    fn build<A, B, F>(&self, name: &str, src: &ChainComplex<A>, tgt: &ChainComplex<B>, mut f: F) -> ChainMap
    where
        A: Clone + Eq + Hash,
        B: Clone + Eq + Hash + Debug,
        F: FnMut(&A) -> Vec<(B, i64)>,
    {
        let maps = (0..=self.top()).map(|k| matrix_of(src.basis(k), tgt.index(k), tgt.dim(k), &mut f)).collect();
        ChainMap::new(name, maps)
    }
}

/// `∇_{p,q}` on a single cell: a signed sum over `(p,q)`-shuffles.
pub fn eilenberg_zilber_cell(mp: &MatchedPair, x: &Cell) -> Vec<(Cell, i64)> {
    let (p, q) = (x.p(), x.q());
    let n = p + q;
    let mut out: HashMap<Cell, i64> = HashMap::new();
    for vs in (0..n).combinations(p) {
        let hs: Vec<usize> = (0..n).filter(|i| !vs.contains(i)).collect();
        let inversions: usize = vs.iter().enumerate().map(|(i, &b)| b - i).sum();
        let mut y = x.clone();
        for &b in &vs {
            y = v_degeneracy(mp, &y, b);
        }
        for &b in &hs {
            y = h_degeneracy(mp, &y, b);
        }
        *out.entry(y).or_default() += if inversions % 2 == 0 { 1 } else { -1 };
    }
    out.into_iter().filter(|(_, v)| *v != 0).sorted().collect()
}

/// `Δ = ⊕_p Δ_{p,n−p}` on a single diagonal cell.
pub fn alexander_whitney_cell(mp: &MatchedPair, x: &Cell) -> Vec<(Cell, i64)> {
    let n = x.p();
    (0..=n)
        .map(|p| {
            let mut y = x.clone();
            for _ in 0..p {
                y = v_face(mp, &y, 0);
            }
            for _ in 0..n - p {
                let last = y.p();
                y = h_face(mp, &y, last);
            }
            (y, 1)
        })
        .collect()
}

/// Repeatedly replace adjacent `(c, d)` by `(c ◁ d, c ▷ d)` until every
/// D-letter precedes every C-letter. Letters are `(is_c, morphism)`.
pub fn sort_word(mp: &MatchedPair, word: &mut [(bool, usize)]) {
    loop {
        let mut changed = false;
        for i in 0..word.len().saturating_sub(1) {
            if word[i].0 && !word[i + 1].0 {
                let (c, d) = (word[i].1, word[i + 1].1);
                word[i] = (false, mp.act_l(c, d));
                word[i + 1] = (true, mp.act_r(c, d));
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// `Π_k` on the C- and D-parts of a diagonal cell, as `(d, c)` pairs.
pub fn pi_pairs(mp: &MatchedPair, cs: &[usize], ds: &[usize]) -> Vec<(usize, usize)> {
    let k = cs.len();
    if k == 0 {
        return Vec::new();
    }
    let inner = pi_pairs(mp, &cs[1..], &ds[..k - 1]);
    let mut word = Vec::with_capacity(2 * k);
    word.push(cs[0]);
    for (d, c) in inner {
        word.push(d);
        word.push(c);
    }
    word.push(ds[k - 1]);
    word.chunks(2).map(|w| (mp.act_l(w[0], w[1]), mp.act_r(w[0], w[1]))).collect()
}

/// `Π_k` on a diagonal cell: a single composable tuple of `C ⋈ D`.
pub fn pi_cell(mp: &MatchedPair, zs: &ZappaSzep, x: &Cell) -> ComposableTuple {
    let entries = pi_pairs(mp, &x.c, &x.d)
        .into_iter()
        .map(|(d, c)| zs.index_of(d, c).expect("(d, c) is composable"))
        .collect();
    zs.category.tuple(entries, x.mid)
}

/// `τ`: the D-part and C-part of the product of `(d_1c_1, …, d_qc_q)`.
pub fn tau(mp: &MatchedPair, pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut word: Vec<(bool, usize)> = pairs.iter().flat_map(|&(d, c)| [(false, d), (true, c)]).collect();
    sort_word(mp, &mut word);
    let q = pairs.len();
    (word[..q].iter().map(|l| l.1).collect(), word[q..].iter().map(|l| l.1).collect())
}

/// `Ψ_k = Σ_{p+q=k} Ψ_{p,q}` on a composable tuple of `C ⋈ D`: one cell per
/// split point.
pub fn psi_tuple(mp: &MatchedPair, zs: &ZappaSzep, t: &ComposableTuple) -> Vec<Cell> {
    let pairs: Vec<(usize, usize)> = t.entries.iter().map(|&g| zs.pairs[g]).collect();
    let k = pairs.len();
    (0..=k)
        .map(|p| {
            let (_, c) = tau(mp, &pairs[..p]);
            let (d, _) = tau(mp, &pairs[p..]);
            let mid = if p > 0 { zs.category.src(t.entries[p - 1]) } else { t.r };
            Cell { c, d, mid }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// functoriality

/// Image of a cell under a matched-pair morphism.
pub fn map_cell(h: &MatchedPairMorphism, x: &Cell) -> Cell {
    Cell {
        c: x.c.iter().map(|&c| h.on_c[c]).collect(),
        d: x.d.iter().map(|&d| h.on_d[d]).collect(),
        mid: h.objects[x.mid],
    }
}

/// Image of a composable tuple of `C ⋈ D` under a matched-pair morphism.
pub fn map_product_tuple(
    h: &MatchedPairMorphism,
    src: &ZappaSzep,
    tgt: &ZappaSzep,
    t: &ComposableTuple,
) -> ComposableTuple {
    let on = h.on_zappa_szep(src, tgt);
    tgt.category.tuple(t.entries.iter().map(|&g| on[g]).collect(), h.objects[t.r])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::s3_pair;
    use crate::category::DEFAULT_CAP;

    #[test]
    fn shuffle_signs_in_degree_two() {
        let mp = s3_pair();
        let x = Cell { c: vec![1], d: vec![1], mid: 0 };
        let out = eilenberg_zilber_cell(&mp, &x);
        assert_eq!(out.len(), 2);
        assert_eq!(out.iter().map(|t| t.1).sum::<i64>(), 0);
    }

    #[test]
    fn all_maps_are_chain_maps_on_s3() {
        let th = Theories::new(&s3_pair(), 2, DEFAULT_CAP).unwrap();
        th.eilenberg_zilber().unwrap();
        th.alexander_whitney().unwrap();
        th.pi().unwrap();
        th.psi().unwrap();
    }
}
