//! Sparse column echelon reduction over ℤ.
//!
//! Columns are reduced by their lowest nonzero row ("low"). When two columns
//! share a low, an extended-gcd unimodular step replaces them by one column
//! whose low entry is the gcd and one column with a strictly smaller low.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{lincomb, IntMatrix, SparseVec};

fn low(v: &SparseVec) -> Option<usize> {
    v.last().map(|e| e.0)
}

/// An echelon basis of a sublattice of `ℤ^dim`: basis vectors have pairwise
/// distinct lows.
#[derive(Debug, Clone, Default)]
pub struct Lattice {
    pub dim: usize,
    basis: Vec<SparseVec>,
    by_low: HashMap<usize, usize>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), by_low: HashMap::new() }
    }

    /// Lattice spanned by arbitrary generators.
    pub fn spanned_by<I: IntoIterator<Item = SparseVec>>(dim: usize, gens: I) -> Self {
        let mut l = Lattice::new(dim);
        for g in gens {
            l.insert(g);
        }
        l
    }

    /// The full lattice `ℤ^dim`.
    pub fn full(dim: usize) -> Self {
        Lattice::spanned_by(dim, (0..dim).map(super::matrix::unit))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Add a generator; returns false if it was already in the lattice.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut changed = false;
        while let Some(l) = low(&v) {
            let Some(&k) = self.by_low.get(&l) else {
                self.by_low.insert(l, self.basis.len());
                self.basis.push(v);
                return true;
            };
            let w = &self.basis[k];
            let a = &v.last().unwrap().1;
            let b = &w.last().unwrap().1;
            let (q, r) = a.div_rem(b);
            if r.is_zero() {
                v = lincomb(&BigInt::one(), &v, &-q, w);
            } else {
                let e = a.extended_gcd(b);
                let (ag, bg) = (a / &e.gcd, b / &e.gcd);
                let new_w = lincomb(&e.x, &v, &e.y, w);
                let new_v = lincomb(&bg, &v, &-ag, w);
                self.basis[k] = new_w;
                v = new_v;
                changed = true;
            }
        }
        changed
    }

    /// Integer coordinates of `x` in the echelon basis, or `None` if `x` is
    /// not in the lattice.
    pub fn coords(&self, x: &SparseVec) -> Option<SparseVec> {
        let mut x = x.clone();
        let mut out = Vec::new();
        while let Some(l) = low(&x) {
            let &k = self.by_low.get(&l)?;
            let w = &self.basis[k];
            let (q, r) = x.last().unwrap().1.div_rem(&w.last().unwrap().1);
            if !r.is_zero() {
                return None;
            }
            x = lincomb(&BigInt::one(), &x, &-&q, w);
            out.push((k, q));
        }
        out.sort_by_key(|e| e.0);
        Some(out)
    }

    pub fn contains(&self, x: &SparseVec) -> bool {
        self.coords(x).is_some()
    }

    /// Basis as matrix columns.
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, self.basis.clone())
    }
}

/// Echelon reduction of the columns of `m`, tracking the column transform.
pub struct ColumnReduction {
    /// Reduced columns `m·V`; zero columns are kernel directions.
    pub reduced: Vec<SparseVec>,
    /// Columns of the unimodular transform `V`.
    pub transform: Vec<SparseVec>,
}

/// Reduce the columns of `m` to echelon form (distinct lows for nonzero
/// columns), recording the transform so that the zero columns give a
/// saturated kernel basis.
pub fn reduce_columns(m: &IntMatrix) -> ColumnReduction {
    let n = m.cols();
    let mut reduced: Vec<SparseVec> = m.columns().to_vec();
    let mut transform: Vec<SparseVec> = (0..n).map(super::matrix::unit).collect();
    let mut by_low: HashMap<usize, usize> = HashMap::new();
    for j in 0..n {
        while let Some(l) = low(&reduced[j]) {
            let Some(&k) = by_low.get(&l) else {
                by_low.insert(l, j);
                break;
            };
            let a = reduced[j].last().unwrap().1.clone();
            let b = reduced[k].last().unwrap().1.clone();
            let (q, r) = a.div_rem(&b);
            if r.is_zero() {
                let nq = -q;
                reduced[j] = lincomb(&BigInt::one(), &reduced[j], &nq, &reduced[k]);
                transform[j] = lincomb(&BigInt::one(), &transform[j], &nq, &transform[k]);
            } else {
                let e = a.extended_gcd(&b);
                let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
                let nag = -ag;
                let wk = lincomb(&e.x, &reduced[j], &e.y, &reduced[k]);
                let wj = lincomb(&bg, &reduced[j], &nag, &reduced[k]);
                let tk = lincomb(&e.x, &transform[j], &e.y, &transform[k]);
                let tj = lincomb(&bg, &transform[j], &nag, &transform[k]);
                reduced[k] = wk;
                reduced[j] = wj;
                transform[k] = tk;
                transform[j] = tj;
            }
        }
    }
    ColumnReduction { reduced, transform }
}

/// A saturated basis of `ker m ⊂ ℤ^cols`.
pub fn kernel(m: &IntMatrix) -> Vec<SparseVec> {
    let r = reduce_columns(m);
    r.reduced
        .iter()
        .zip(r.transform)
        .filter(|(c, _)| c.is_empty())
        .map(|(_, t)| t)
        .collect()
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    Lattice::spanned_by(m.rows(), m.columns().iter().cloned()).rank()
}

/// Make the leading entries of a vector list positive (cosmetic
/// normalisation for reproducible output).
pub fn normalise_signs(vs: &mut [SparseVec]) {
    for v in vs {
        if v.last().is_some_and(|e| e.1.is_negative()) {
            for e in v.iter_mut() {
                e.1 = -&e.1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_incidence() {
        // triangle graph incidence: kernel rank 1
        let m = IntMatrix::from_dense(&[vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_empty());
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn saturation() {
        // ker [2 4] is spanned by (2,-1), not (4,-2)
        let m = IntMatrix::from_dense(&[vec![2, 4]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = super::super::matrix::sparse_to_dense(&k[0], 2)
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert!(v == vec![2, -1] || v == vec![-2, 1]);
    }

    #[test]
    fn coordinates() {
        let l = Lattice::spanned_by(2, vec![vec![(0, 2.into())], vec![(0, 1.into()), (1, 3.into())]]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&vec![(0, 3.into()), (1, 3.into())]));
        assert!(!l.contains(&vec![(0, 1.into())]));
        assert!(!l.contains(&vec![(1, 1.into())]));
    }
}
