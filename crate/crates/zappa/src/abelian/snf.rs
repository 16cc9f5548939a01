//! Dense Smith normal form with optional transform tracking, and the linear
//! solvers built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub type Dense = Vec<Vec<BigInt>>;

/// Which transforms to accumulate.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
}

/// `U·M·V = D`, with `D` diagonal and `d_1 | d_2 | …` positive.
#[derive(Debug, Clone)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries; `diagonal.len()` is the rank.
    pub diagonal: Vec<BigInt>,
    pub u: Option<Dense>,
    pub u_inv: Option<Dense>,
    pub v: Option<Dense>,
    pub v_inv: Option<Dense>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix `D`.
    pub fn d(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.diagonal.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
    }

    pub fn u_matrix(&self) -> IntMatrix {
        IntMatrix::from_dense_big(self.rows, self.rows, self.u.as_ref().expect("U tracked"))
    }

    pub fn v_matrix(&self) -> IntMatrix {
        IntMatrix::from_dense_big(self.cols, self.cols, self.v.as_ref().expect("V tracked"))
    }

    pub fn u_inv_matrix(&self) -> IntMatrix {
        IntMatrix::from_dense_big(self.rows, self.rows, self.u_inv.as_ref().expect("U⁻¹ tracked"))
    }

    pub fn v_inv_matrix(&self) -> IntMatrix {
        IntMatrix::from_dense_big(self.cols, self.cols, self.v_inv.as_ref().expect("V⁻¹ tracked"))
    }
}

fn eye(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct State {
    a: Dense,
    u: Option<Dense>,
    u_inv: Option<Dense>,
    v: Option<Dense>,
    v_inv: Option<Dense>,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    /// row_i += k·row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        add_row_dense(&mut self.a, i, j, k);
        if let Some(u) = &mut self.u {
            add_row_dense(u, i, j, k);
        }
        if let Some(ui) = &mut self.u_inv {
            // column_j -= k·column_i
            for row in ui.iter_mut() {
                let t = &row[i] * k;
                row[j] -= t;
            }
        }
    }

    /// col_i += k·col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for row in self.a.iter_mut() {
            let t = &row[j] * k;
            row[i] += t;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let t = &row[j] * k;
                row[i] += t;
            }
        }
        if let Some(vi) = &mut self.v_inv {
            // row_j -= k·row_i
            let neg = -k;
            add_row_dense(vi, j, i, &neg);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }
}

fn add_row_dense(m: &mut Dense, i: usize, j: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let (src, dst) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d += s * k;
        }
    }
}

/// Smith normal form of a dense matrix.
pub fn smith_dense(a: Dense, rows: usize, cols: usize, track: Track) -> Smith {
    let mut st = State {
        a,
        u: track.u.then(|| eye(rows)),
        u_inv: track.u_inv.then(|| eye(rows)),
        v: track.v.then(|| eye(cols)),
        v_inv: track.v_inv.then(|| eye(cols)),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // pivot of minimal absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &st.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < st.a[bi][bj].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
                if best.is_some_and(|(bi, bj)| st.a[bi][bj].abs().is_one()) {
                    break;
                }
            }
            let Some((pi, pj)) = best else {
                return finish(st, rows, cols, diagonal);
            };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let p = st.a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if st.a[i][t].is_zero() {
                    continue;
                }
                let q = &st.a[i][t] / &p;
                st.add_row(i, t, &-q);
                dirty |= !st.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if st.a[t][j].is_zero() {
                    continue;
                }
                let q = &st.a[t][j] / &p;
                st.add_col(j, t, &-q);
                dirty |= !st.a[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&st.a[i][j] % &p).is_zero()));
            if let Some(i) = bad {
                st.add_row(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
        diagonal.push(st.a[t][t].clone());
    }
    finish(st, rows, cols, diagonal)
}

fn finish(st: State, rows: usize, cols: usize, diagonal: Vec<BigInt>) -> Smith {
    Smith { rows, cols, diagonal, u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv }
}

/// Smith normal form with all transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    smith_dense(m.to_dense(), m.rows(), m.cols(), Track::ALL)
}

/// Invariant factors only.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_dense(m.to_dense(), m.rows(), m.cols(), Track::NONE).diagonal
}

/// Outcome of a linear solve: a solution, or a certificate of infeasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve<T> {
    Solved(Vec<T>),
    /// A row vector `u` with `u·A ≡ 0` (in the relevant coefficients) but
    /// `u·b ≠ 0`.
    Infeasible(Vec<BigInt>),
}

impl<T> Solve<T> {
    pub fn solution(&self) -> Option<&[T]> {
        match self {
            Solve::Solved(x) => Some(x),
            Solve::Infeasible(_) => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Solve::Solved(_))
    }
}

fn check_len(a: &IntMatrix, n: usize) -> Result<()> {
    if a.rows() != n {
        return Err(Error::ShapeMismatch(format!("matrix has {} rows, right-hand side {}", a.rows(), n)));
    }
    Ok(())
}

fn mat_vec<T>(m: &Dense, x: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>,
    BigInt: Into<T>,
{
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, _)| !a.is_zero())
                .fold(T::zero(), |acc, (a, b)| acc + Into::<T>::into(a.clone()) * b)
        })
        .collect()
}

/// Integer solution of `A x = b`, free coordinates set to zero.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Solve<BigInt>> {
    check_len(a, b.len())?;
    let s = smith_dense(a.to_dense(), a.rows(), a.cols(), Track { u: true, v: true, ..Track::NONE });
    let u = s.u.as_ref().unwrap();
    let ub = mat_vec(u, b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = c.div_rem(&s.diagonal[i]);
            if !r.is_zero() {
                return Ok(Solve::Infeasible(u[i].clone()));
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Ok(Solve::Infeasible(u[i].clone()));
        }
    }
    Ok(Solve::Solved(mat_vec(s.v.as_ref().unwrap(), &y)))
}

/// Representative of `x` mod 1 in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Solve `A x ≡ b (mod ℤ)` with `x ∈ (ℚ/ℤ)^n`; entries of the answer lie in
/// `[0, 1)`. For `i < rank`, the canonical choice is `y_i = (Ub)_i / d_i`.
pub fn solve_mod1(a: &IntMatrix, b: &[BigRational]) -> Result<Solve<BigRational>> {
    check_len(a, b.len())?;
    let s = smith_dense(a.to_dense(), a.rows(), a.cols(), Track { u: true, v: true, ..Track::NONE });
    let u = s.u.as_ref().unwrap();
    let ub = mat_vec(u, b);
    let mut y = vec![BigRational::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank() {
            y[i] = frac(&(frac(c) / BigRational::from_integer(s.diagonal[i].clone())));
        } else if !frac(c).is_zero() {
            return Ok(Solve::Infeasible(u[i].clone()));
        }
    }
    Ok(Solve::Solved(mat_vec(s.v.as_ref().unwrap(), &y).iter().map(frac).collect()))
}

/// Solve `A x ≡ b (mod ℤ)` with both `b` and `x` in `((1/N)ℤ/ℤ)^*`, i.e.
/// with coefficients in the cyclic group of order `N`.
pub fn solve_mod_n(a: &IntMatrix, b: &[BigRational], n: u64) -> Result<Solve<BigRational>> {
    check_len(a, b.len())?;
    let big_n = BigInt::from(n);
    let n_rat = BigRational::from_integer(big_n.clone());
    for x in b {
        if !(x * &n_rat).is_integer() {
            return Err(Error::InvalidPhase(format!("{x} is not a multiple of 1/{n}")));
        }
    }
    let s = smith_dense(a.to_dense(), a.rows(), a.cols(), Track { u: true, v: true, ..Track::NONE });
    let u = s.u.as_ref().unwrap();
    let ub = mat_vec(u, b);
    let mut y = vec![BigRational::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let ai = (c * &n_rat).to_integer().mod_floor(&big_n);
        if i < s.rank() {
            let d = &s.diagonal[i];
            let g = d.gcd(&big_n);
            if !(&ai % &g).is_zero() {
                let scale = &big_n / &g;
                return Ok(Solve::Infeasible(u[i].iter().map(|x| x * &scale).collect()));
            }
            let m = &big_n / &g;
            let z = if m.is_one() {
                BigInt::zero()
            } else {
                let inv = mod_inverse(&(d / &g).mod_floor(&m), &m);
                ((&ai / &g) * inv).mod_floor(&m)
            };
            y[i] = BigRational::new(z, big_n.clone());
        } else if !ai.is_zero() {
            return Ok(Solve::Infeasible(u[i].clone()));
        }
    }
    Ok(Solve::Solved(mat_vec(s.v.as_ref().unwrap(), &y).iter().map(frac).collect()))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn diag_2_3() {
        let m = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, big(&[1, 6]));
        assert_eq!(s.u_matrix().mul(&m).mul(&s.v_matrix()), s.d());
        assert_eq!(s.u_matrix().mul(&s.u_inv_matrix()), IntMatrix::identity(2));
        assert_eq!(s.v_inv_matrix().mul(&s.v_matrix()), IntMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&m);
        assert!(s.diagonal.is_empty());
        assert_eq!(s.u_matrix(), IntMatrix::identity(2));
        assert_eq!(s.v_matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn integer_solve() {
        let two = IntMatrix::from_dense(&[vec![2]]);
        assert!(!solve_integer(&two, &big(&[3])).unwrap().is_solved());
        assert_eq!(solve_integer(&two, &big(&[4])).unwrap(), Solve::Solved(big(&[2])));
        let id = IntMatrix::identity(3);
        assert_eq!(solve_integer(&id, &big(&[1, -2, 5])).unwrap(), Solve::Solved(big(&[1, -2, 5])));
        let z = IntMatrix::zeros(1, 2);
        assert!(!solve_integer(&z, &big(&[1])).unwrap().is_solved());
        assert!(solve_integer(&z, &big(&[1, 2])).is_err());
    }

    #[test]
    fn mod1_solve() {
        let two = IntMatrix::from_dense(&[vec![2]]);
        assert_eq!(solve_mod1(&two, &[rat(1, 2)]).unwrap(), Solve::Solved(vec![rat(1, 4)]));
        let z = IntMatrix::zeros(1, 1);
        match solve_mod1(&z, &[rat(1, 3)]).unwrap() {
            Solve::Infeasible(u) => assert_eq!(u, big(&[1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mod_n_solve() {
        let two = IntMatrix::from_dense(&[vec![2]]);
        // with ℤ/2 coefficients, 2x = 1/2 has no solution
        match solve_mod_n(&two, &[rat(1, 2)], 2).unwrap() {
            Solve::Infeasible(u) => assert_eq!(u, big(&[1])),
            other => panic!("{other:?}"),
        }
        // with ℤ/4 coefficients it does
        let x = solve_mod_n(&two, &[rat(1, 2)], 4).unwrap();
        assert_eq!(x, Solve::Solved(vec![rat(1, 4)]));
        let three = IntMatrix::from_dense(&[vec![3]]);
        assert_eq!(solve_mod_n(&three, &[rat(1, 2)], 2).unwrap(), Solve::Solved(vec![rat(1, 2)]));
    }
}
