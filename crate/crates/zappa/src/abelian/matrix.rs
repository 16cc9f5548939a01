use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse integer vector: `(index, value)` pairs, indices strictly
/// increasing, no zero values.
pub type SparseVec = Vec<(usize, BigInt)>;

/// `a·x + b·y`.
pub fn lincomb(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (idx, v) = if take_x {
            i += 1;
            (x[i - 1].0, a * &x[i - 1].1)
        } else if take_y {
            j += 1;
            (y[j - 1].0, b * &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, a * &x[i - 1].1 + b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

/// `y + a·x`.
pub fn axpy(y: &SparseVec, a: &BigInt, x: &SparseVec) -> SparseVec {
    lincomb(&BigInt::one(), y, a, x)
}

pub fn sparse_get(v: &SparseVec, i: usize) -> BigInt {
    v.binary_search_by_key(&i, |e| e.0).map(|p| v[p].1.clone()).unwrap_or_default()
}

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Unit vector `e_i`.
pub fn unit(i: usize) -> SparseVec {
    vec![(i, BigInt::one())]
}

/// Sparse integer matrix in compressed-column form.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { rows: n, columns: (0..n).map(unit).collect() }
    }

    /// Columns must already be canonical sparse vectors with indices < rows.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, v)| *i < rows && !v.is_zero())));
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        IntMatrix { rows, columns }
    }

    /// Build from triplets; repeated positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) outside {rows}×{cols}");
            columns[j].push((i, v));
        }
        for col in &mut columns {
            *col = canonical(std::mem::take(col));
        }
        IntMatrix { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_triplets(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v)))),
        )
    }

    pub fn from_dense_big(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        Self::from_triplets(
            rows,
            cols,
            data.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        sparse_get(&self.columns[j], i)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Nonzero entries in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Small-entry dense copy; panics if an entry does not fit.
    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        self.to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_i64().expect("entry fits i64")).collect())
            .collect()
    }

    /// `M·x`.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc: Vec<(usize, BigInt)> = Vec::new();
        for (j, a) in x {
            for (i, v) in &self.columns[*j] {
                acc.push((*i, a * v));
            }
        }
        canonical(acc)
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols() != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} times {}×{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(IntMatrix { rows: self.rows, columns: other.columns.iter().map(|c| self.apply(c)).collect() })
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.same_shape(other)?;
        let one = BigInt::one();
        Ok(IntMatrix {
            rows: self.rows,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| lincomb(&one, a, &one, b)).collect(),
        })
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, a: &BigInt) -> IntMatrix {
        if a.is_zero() {
            return IntMatrix::zeros(self.rows, self.cols());
        }
        IntMatrix {
            rows: self.rows,
            columns: self.columns.iter().map(|c| c.iter().map(|(i, v)| (*i, v * a)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        IntMatrix { rows: self.cols(), columns: cols }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        IntMatrix { rows: self.rows, columns }
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols(), other.cols(), "vstack column mismatch");
        let off = self.rows;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(i, v)| (i + off, v.clone()))).collect())
            .collect();
        IntMatrix { rows: self.rows + other.rows, columns }
    }

    /// Sub-block with the given row range and column range.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IntMatrix {
        let columns = self.columns[cols]
            .iter()
            .map(|c| c.iter().filter(|(i, _)| rows.contains(i)).map(|(i, v)| (i - rows.start, v.clone())).collect())
            .collect();
        IntMatrix { rows: rows.len(), columns }
    }

    /// Write `other` into a copy of `self` with top-left corner at `(r0, c0)`,
    /// adding to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, other: &IntMatrix) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols() <= self.cols());
        let one = BigInt::one();
        for (j, c) in other.columns.iter().enumerate() {
            let shifted: SparseVec = c.iter().map(|(i, v)| (i + r0, v.clone())).collect();
            let col = &mut self.columns[c0 + j];
            *col = lincomb(&one, col, &one, &shifted);
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.triplets().map(|(_, _, v)| v.abs()).max().unwrap_or_default()
    }

    fn same_shape(&self, other: &IntMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} vs {}×{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }
}

/// Sort, merge duplicates and drop zeros.
pub fn canonical(mut v: Vec<(usize, BigInt)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows <= 12 && self.cols() <= 12 {
            writeln!(f, "IntMatrix {}×{} [", self.rows, self.cols())?;
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
            write!(f, "]")
        } else {
            write!(f, "IntMatrix {}×{} ({} nonzeros)", self.rows, self.cols(), self.nnz())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMatrix {
            rows: self.rows,
            cols: self.cols(),
            entries: self.triplets().map(|(i, j, v)| (i, j, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMatrix::deserialize(d)?;
        // columns are allocated up front, so a hostile `cols` must not get through
        if raw.cols as u128 > crate::category::DEFAULT_CAP {
            return Err(D::Error::custom(format!("{} columns exceeds the limit of {}", raw.cols, crate::category::DEFAULT_CAP)));
        }
        let mut trip = Vec::with_capacity(raw.entries.len());
        for (i, j, v) in raw.entries {
            if i >= raw.rows || j >= raw.cols {
                return Err(D::Error::custom(format!("entry ({i}, {j}) outside {}×{}", raw.rows, raw.cols)));
            }
            let v: BigInt = v.parse().map_err(|_| D::Error::custom(format!("bad integer `{v}`")))?;
            trip.push((i, j, v));
        }
        Ok(IntMatrix::from_triplets(raw.rows, raw.cols, trip))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = IntMatrix::from_dense(&[vec![2, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntMatrix::from_dense(&[vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]]));
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        assert!(a.try_mul(&a).is_err());
    }

    #[test]
    fn triplets_merge_and_cancel() {
        let m = IntMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, BigInt::from(2)), (0, 0, BigInt::from(-2)), (1, 1, BigInt::from(5))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(5));
    }

    #[test]
    fn json_roundtrip() {
        let m = IntMatrix::from_dense(&[vec![0, -7], vec![123456789, 0]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[[1,0,"123456789"],[0,1,"-7"]]}"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":1,"cols":1,"entries":[[1,0,"1"]]}"#).is_err());
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":1,"cols":100000000000,"entries":[]}"#).is_err());
    }

    #[test]
    fn stacking() {
        let a = IntMatrix::from_dense(&[vec![1, 2]]);
        let b = IntMatrix::from_dense(&[vec![3, 4]]);
        assert_eq!(a.vstack(&b), IntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]));
        assert_eq!(a.hstack(&b), IntMatrix::from_dense(&[vec![1, 2, 3, 4]]));
        assert_eq!(a.vstack(&b).block(1..2, 0..2), b);
    }
}
