//! ℚ/ℤ-valued 2-cochains on categories and matched pairs.
//!
//! The circle group is modelled additively as ℚ/ℤ: a multiplicative identity
//! `∏ z_i^{±1} = 1` in 𝕋 becomes `Σ ±x_i ≡ 0 (mod 1)` under `z = e^{2πix}`,
//! and `z̄` becomes `−x`. Transcribed once here:
//!
//! * categorical 2-cocycle: `c(a,b) + c(ab,c') = c(b,c') + c(a,bc')`, and
//!   `c(ζ,η) = 0` if `ζ` or `η` is an identity;
//! * coboundary: `(d¹b)(ζ,η) = b(η) − b(ζη) + b(ζ)`;
//! * total 2-cocycle `φ = (φ₂₀, φ₁₁, φ₀₂)`, with `φ₂₀` and `φ₀₂` normalised
//!   categorical cocycles on `C` and `D`, `φ₁₁(h,λ) = 0` on identities, and
//!   for all `(h,λ,μ) ∈ C*D*D` and `(g,h,λ) ∈ C*C*D`
//!
//!   ```text
//!   (A)  φ₁₁(h▷λ,μ) − φ₁₁(h,λμ) + φ₁₁(h,λ) + φ₀₂(λ,μ) − φ₀₂(h◁(λ,μ)) = 0
//!   (B)  φ₂₀((g,h)▷λ) − φ₂₀(g,h) − φ₁₁(h,λ) + φ₁₁(gh,λ) − φ₁₁(g,h◁λ) = 0
//!   ```
//!
//!   This is [`Convention::Literal`]. Dualising the total differential
//!   `d^h + (−1)^p d^v` of [`crate::complexes`] instead gives the same
//!   conditions with `φ₁₁` negated, [`Convention::DualTotal`] (the default).
//! * transfer: `Ψ²(φ)(λg, μh) = φ₂₀(g▷μ, h) + φ₁₁(g,μ) + φ₀₂(λ, g◁μ)`.
//!
//! Here `g ◁ μ ∈ D` and `g ▷ μ ∈ C` are [`MatchedPair::act_l`] and
//! [`MatchedPair::act_r`], and `λg` is the Zappa–Szép morphism `(λ, g)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::snf::{smith_dense, Track};
use crate::abelian::{solve_mod1, solve_mod_n, IntMatrix, Solve};
use crate::category::FiniteCategory;
use crate::complexes::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::matched_pair::{MatchedPair, ZappaSzep};

/// An element of ℚ/ℤ, kept reduced in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(BigRational);

impl Phase {
    pub fn zero() -> Self {
        Phase(BigRational::zero())
    }

    /// Reduces any rational mod 1.
    pub fn new(x: BigRational) -> Self {
        Phase(&x - x.floor())
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        Phase::new(BigRational::new(a.into(), b.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Strict parse: `"0"` or a fraction `"a/b"` with `0 ≤ a/b < 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPhase(s.to_string());
        let t = s.trim();
        let x = match t.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        if x.is_negative() || x >= BigRational::one() {
            return Err(bad());
        }
        Ok(Phase(x))
    }

    /// `e^{2πix}` as `(re, im)`.
    pub fn to_circle(&self) -> (f64, f64) {
        let x = self.0.numer().to_string().parse::<f64>().unwrap_or(0.0)
            / self.0.denom().to_string().parse::<f64>().unwrap_or(1.0);
        let t = std::f64::consts::TAU * x;
        (t.cos(), t.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Phase::parse(s)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Phase::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &Phase {
    type Output = Phase;
    fn add(self, o: &Phase) -> Phase {
        Phase::new(&self.0 + &o.0)
    }
}

impl Sub for &Phase {
    type Output = Phase;
    fn sub(self, o: &Phase) -> Phase {
        Phase::new(&self.0 - &o.0)
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-&self.0)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        &self + &o
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        &self - &o
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        -&self
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(it: I) -> Phase {
        it.fold(Phase::zero(), |a, b| a + b)
    }
}

/// A 1-cochain on morphisms; absent entries are 0.
pub type Cochain1 = BTreeMap<usize, Phase>;
/// A 2-cochain on composable pairs `(ζ, η)`, `s(ζ) = r(η)`; absent entries are 0.
pub type Cochain2 = BTreeMap<(usize, usize), Phase>;

fn get1(b: &Cochain1, f: usize) -> Phase {
    b.get(&f).cloned().unwrap_or_default()
}

fn get2(c: &Cochain2, f: usize, g: usize) -> Phase {
    c.get(&(f, g)).cloned().unwrap_or_default()
}

fn sparse<K: Ord>(it: impl IntoIterator<Item = (K, Phase)>) -> BTreeMap<K, Phase> {
    it.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Composable pairs `(ζ, η)` with `s(ζ) = r(η)`, in index order.
pub fn composable_pairs(cat: &FiniteCategory) -> Vec<(usize, usize)> {
    let n = cat.len();
    (0..n).flat_map(|f| (0..n).filter(move |&g| cat.src(f) == cat.dst(g)).map(move |g| (f, g))).collect()
}

fn ids(cat: &FiniteCategory, fs: &[usize]) -> String {
    fs.iter().map(|&f| cat.mid(f)).collect::<Vec<_>>().join(", ")
}

/// `(d¹b)(ζ,η) = b(η) − b(ζη) + b(ζ)`.
pub fn coboundary(cat: &FiniteCategory, b: &Cochain1) -> Cochain2 {
    sparse(composable_pairs(cat).into_iter().map(|(f, g)| {
        let fg = cat.compose(f, g).expect("composable");
        ((f, g), get1(b, g) - get1(b, fg) + get1(b, f))
    }))
}

fn check_pairs(cat: &FiniteCategory, c: &Cochain2) -> Result<()> {
    for &(f, g) in c.keys() {
        if f >= cat.len() || g >= cat.len() {
            return Err(Error::IndexOutOfRange { index: f.max(g), max: cat.len().saturating_sub(1) });
        }
        if cat.src(f) != cat.dst(g) {
            return Err(Error::NotComposable(ids(cat, &[f, g])));
        }
    }
    Ok(())
}

/// Normalisation and the cocycle identity on every composable triple.
pub fn validate_categorical_2cocycle(cat: &FiniteCategory, c: &Cochain2) -> Result<()> {
    check_pairs(cat, c)?;
    for (&(f, g), v) in c {
        if !v.is_zero() && (cat.is_identity(f) || cat.is_identity(g)) {
            return Err(Error::CocycleViolation(format!("not normalised at ({})", ids(cat, &[f, g]))));
        }
    }
    for (f, g) in composable_pairs(cat) {
        let fg = cat.compose(f, g).expect("composable");
        for h in (0..cat.len()).filter(|&h| cat.src(g) == cat.dst(h)) {
            let gh = cat.compose(g, h).expect("composable");
            let lhs = get2(c, f, g) + get2(c, fg, h);
            let rhs = get2(c, g, h) + get2(c, f, gh);
            if lhs != rhs {
                return Err(Error::CocycleViolation(format!("cocycle identity fails at ({})", ids(cat, &[f, g, h]))));
            }
        }
    }
    Ok(())
}

/// Coefficient group inside ℚ/ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coefficients {
    #[default]
    QmodZ,
    /// `(1/n)ℤ/ℤ ≅ ℤ/n`.
    Cyclic(u64),
}

/// Outcome of a cohomologousness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cohomologous {
    /// A normalised `b` with `d¹b = c₂ − c₁`.
    Yes(Cochain1),
    /// A row vector `u` over composable pairs (in [`composable_pairs`] order)
    /// annihilating every coboundary but not `c₂ − c₁`.
    No(Vec<BigInt>),
}

impl Cohomologous {
    pub fn is_yes(&self) -> bool {
        matches!(self, Cohomologous::Yes(_))
    }
}

/// The matrix of `d¹` on normalised 1-cochains: rows composable pairs,
/// columns non-identity morphisms.
fn d1_matrix(cat: &FiniteCategory) -> (Vec<(usize, usize)>, Vec<usize>, IntMatrix) {
    let pairs = composable_pairs(cat);
    let cols: Vec<usize> = (0..cat.len()).filter(|&f| !cat.is_identity(f)).collect();
    let col_of: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, &f)| (f, j)).collect();
    let mut trip = Vec::new();
    for (i, &(f, g)) in pairs.iter().enumerate() {
        let fg = cat.compose(f, g).expect("composable");
        for (h, s) in [(g, 1), (fg, -1), (f, 1)] {
            if let Some(&j) = col_of.get(&h) {
                trip.push((i, j, BigInt::from(s)));
            }
        }
    }
    let m = IntMatrix::from_triplets(pairs.len(), cols.len(), trip);
    (pairs, cols, m)
}

/// Solve `d¹b = c₂ − c₁` for a normalised `b` with values in `coeffs`.
pub fn is_cohomologous(cat: &FiniteCategory, c1: &Cochain2, c2: &Cochain2, coeffs: Coefficients) -> Result<Cohomologous> {
    check_pairs(cat, c1)?;
    check_pairs(cat, c2)?;
    let (pairs, cols, a) = d1_matrix(cat);
    let rhs: Vec<BigRational> = pairs.iter().map(|&(f, g)| (get2(c2, f, g) - get2(c1, f, g)).0).collect();
    let sol = match coeffs {
        Coefficients::QmodZ => solve_mod1(&a, &rhs)?,
        Coefficients::Cyclic(n) => solve_mod_n(&a, &rhs, n)?,
    };
    Ok(match sol {
        Solve::Solved(x) => Cohomologous::Yes(sparse(cols.iter().zip(x).map(|(&f, v)| (f, Phase::new(v))))),
        Solve::Infeasible(u) => Cohomologous::No(u),
    })
}

/// How the mixed total-cocycle conditions are read; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    DualTotal,
    Literal,
}

/// `φ = (φ₂₀ on C², φ₁₁ on C*D keyed (c, d), φ₀₂ on D²)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TotalCochain {
    pub phi_20: Cochain2,
    pub phi_11: Cochain2,
    pub phi_02: Cochain2,
}

impl TotalCochain {
    /// Switch between the two conventions (negates `φ₁₁`).
    pub fn flip(&self) -> TotalCochain {
        TotalCochain {
            phi_20: self.phi_20.clone(),
            phi_11: self.phi_11.iter().map(|(k, v)| (*k, -v)).collect(),
            phi_02: self.phi_02.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        [&self.phi_20, &self.phi_11, &self.phi_02].iter().all(|m| m.values().all(Phase::is_zero))
    }
}

fn signed(x: Phase, conv: Convention) -> Phase {
    match conv {
        Convention::Literal => x,
        Convention::DualTotal => -x,
    }
}

/// Residuals of the mixed conditions (A) and (B), in the chosen convention,
/// as `(witness, value)` for every triple; all zero iff the conditions hold.
pub fn mixed_residuals(mp: &MatchedPair, phi: &TotalCochain, conv: Convention) -> Vec<(String, Phase)> {
    let (c, d) = (mp.c(), mp.d());
    let mut out = Vec::new();
    for h in 0..c.len() {
        for l in (0..d.len()).filter(|&l| c.src(h) == d.dst(l)) {
            for m in (0..d.len()).filter(|&m| d.src(l) == d.dst(m)) {
                let lm = d.compose(l, m).expect("composable");
                let e11 = get2(&phi.phi_11, mp.act_r(h, l), m) - get2(&phi.phi_11, h, lm) + get2(&phi.phi_11, h, l);
                let (hd, _) = mp.act_on_d_tuple(h, &[l, m]);
                let e02 = get2(&phi.phi_02, l, m) - get2(&phi.phi_02, hd[0], hd[1]);
                out.push((format!("(A) at ({}; {}, {})", c.mid(h), d.mid(l), d.mid(m)), signed(e11, conv) + e02));
            }
        }
    }
    for g in 0..c.len() {
        for h in (0..c.len()).filter(|&h| c.src(g) == c.dst(h)) {
            let gh = c.compose(g, h).expect("composable");
            for l in (0..d.len()).filter(|&l| c.src(h) == d.dst(l)) {
                let (_, gh_l) = mp.act_on_c_tuple(&[g, h], l);
                let e20 = get2(&phi.phi_20, gh_l[0], gh_l[1]) - get2(&phi.phi_20, g, h);
                let e11 = get2(&phi.phi_11, h, l) - get2(&phi.phi_11, gh, l) + get2(&phi.phi_11, g, mp.act_l(h, l));
                out.push((format!("(B) at ({}, {}; {})", c.mid(g), c.mid(h), d.mid(l)), e20 - signed(e11, conv)));
            }
        }
    }
    out
}

/// Full validation of a normalised total 2-cocycle.
pub fn validate_total_2cocycle(mp: &MatchedPair, phi: &TotalCochain, conv: Convention) -> Result<()> {
    let tag = |which: &str, e: Error| match e {
        Error::CocycleViolation(w) => Error::CocycleViolation(format!("{which}: {w}")),
        other => other,
    };
    validate_categorical_2cocycle(mp.c(), &phi.phi_20).map_err(|e| tag("phi_20", e))?;
    validate_categorical_2cocycle(mp.d(), &phi.phi_02).map_err(|e| tag("phi_02", e))?;
    let (c, d) = (mp.c(), mp.d());
    for (&(h, l), v) in &phi.phi_11 {
        if h >= c.len() || l >= d.len() {
            return Err(Error::IndexOutOfRange { index: h.max(l), max: c.len().max(d.len()).saturating_sub(1) });
        }
        if c.src(h) != d.dst(l) {
            return Err(Error::NotComposable(format!("{}, {}", c.mid(h), d.mid(l))));
        }
        if !v.is_zero() && (c.is_identity(h) || d.is_identity(l)) {
            return Err(Error::CocycleViolation(format!("phi_11: not normalised at ({}, {})", c.mid(h), d.mid(l))));
        }
    }
    if let Some((w, _)) = mixed_residuals(mp, phi, conv).into_iter().find(|(_, v)| !v.is_zero()) {
        return Err(Error::CocycleViolation(w));
    }
    Ok(())
}

/// `φ` evaluated on a generator of `Tot₂`.
fn total_value(phi: &TotalCochain, x: &Cell) -> Phase {
    match (x.c.as_slice(), x.d.as_slice()) {
        ([g, h], []) => get2(&phi.phi_20, *g, *h),
        ([g], [l]) => get2(&phi.phi_11, *g, *l),
        ([], [l, m]) => get2(&phi.phi_02, *l, *m),
        _ => Phase::zero(),
    }
}

/// `φ ∘ d^Tot` on every generator of `Tot₃`, computed from the total complex
/// (which must have degree 3 materialised). Zero iff `φ` is a cocycle for
/// [`Convention::DualTotal`].
pub fn total_coboundary_residual(phi: &TotalCochain, total: &ChainComplex<Cell>) -> Result<Vec<Phase>> {
    let d = total.boundary(2).ok_or(Error::DegreeNotMaterialised(3))?;
    let values: Vec<Phase> = total.basis(2).iter().map(|x| total_value(phi, x)).collect();
    Ok(d
        .columns()
        .iter()
        .map(|col| col.iter().map(|(i, a)| Phase::new(values[*i].value() * BigRational::from_integer(a.clone()))).sum())
        .collect())
}

/// `d¹_Tot(b_C, b_D)` in the chosen convention. In the dual-total one,
/// `φ₁₁(g,λ) = b_D(λ) − b_D(g◁λ) − b_C(g▷λ) + b_C(g)`.
pub fn total_coboundary(mp: &MatchedPair, b_c: &Cochain1, b_d: &Cochain1, conv: Convention) -> TotalCochain {
    let (c, d) = (mp.c(), mp.d());
    let mut phi_11 = Cochain2::new();
    for g in 0..c.len() {
        for l in (0..d.len()).filter(|&l| c.src(g) == d.dst(l)) {
            let v = get1(b_d, l) - get1(b_d, mp.act_l(g, l)) - get1(b_c, mp.act_r(g, l)) + get1(b_c, g);
            phi_11.insert((g, l), signed(-v, conv));
        }
    }
    TotalCochain { phi_20: coboundary(c, b_c), phi_11: sparse(phi_11), phi_02: coboundary(d, b_d) }
}

/// `Ψ²(φ)(λg, μh) = φ₂₀(g▷μ, h) + φ₁₁(g,μ) + φ₀₂(λ, g◁μ)` on composable
/// pairs of the Zappa–Szép product. With [`Convention::Literal`] the middle
/// term enters with the sign that makes `Ψ²` a cochain map for that reading,
/// i.e. `Ψ²_lit(φ) = Ψ²(φ.flip())`.
pub fn psi2(mp: &MatchedPair, zs: &ZappaSzep, phi: &TotalCochain, conv: Convention) -> Cochain2 {
    let cat = &zs.category;
    sparse(composable_pairs(cat).into_iter().map(|(x, y)| {
        let (l, g) = zs.pairs[x];
        let (m, h) = zs.pairs[y];
        let v = get2(&phi.phi_20, mp.act_r(g, m), h)
            + signed(-get2(&phi.phi_11, g, m), conv)
            + get2(&phi.phi_02, l, mp.act_l(g, m));
        ((x, y), v)
    }))
}

/// The displayed `Ψ²` formula applied verbatim (middle term `+φ₁₁`),
/// regardless of convention.
pub fn psi2_displayed(mp: &MatchedPair, zs: &ZappaSzep, phi: &TotalCochain) -> Cochain2 {
    psi2(mp, zs, phi, Convention::DualTotal)
}

// ---------------------------------------------------------------------------
// sampling

/// Uniform random element of `{x ∈ (ℤ/n)^rows : x·A ≡ 0, x_i = 0 for i ∈ zero}`,
/// returned as phases `x_i / n`.
fn random_kernel_mod_n<R: Rng>(a: &IntMatrix, zero: &[usize], n: u64, rng: &mut R) -> Vec<Phase> {
    let rows = a.rows();
    let pins = IntMatrix::from_columns(rows, zero.iter().map(|&i| crate::abelian::matrix::unit(i)).collect());
    let full = a.hstack(&pins);
    let s = smith_dense(full.to_dense(), rows, full.cols(), Track { u: true, ..Track::NONE });
    let u = s.u.expect("U tracked");
    let big_n = BigInt::from(n);
    let y: Vec<BigInt> = (0..rows)
        .map(|i| {
            let step = match s.diagonal.get(i) {
                Some(d) => &big_n / d.gcd(&big_n),
                None => BigInt::one(),
            };
            let k = (&big_n / &step).to_u64_digits().1.first().copied().unwrap_or(0).max(1);
            step * BigInt::from(rng.gen_range(0..k))
        })
        .collect();
    (0..rows)
        .map(|j| {
            let x: BigInt = (0..rows).map(|i| &y[i] * &u[i][j]).sum();
            Phase::new(BigRational::new(x.mod_floor(&big_n), big_n.clone()))
        })
        .collect()
}

/// Random normalised categorical 2-cocycle with values in `(1/n)ℤ/ℤ`.
pub fn random_categorical_cocycle<R: Rng>(cat: &FiniteCategory, n: u64, rng: &mut R) -> Cochain2 {
    let pairs = composable_pairs(cat);
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut trip = Vec::new();
    let mut col = 0;
    for &(f, g) in &pairs {
        let fg = cat.compose(f, g).expect("composable");
        for h in (0..cat.len()).filter(|&h| cat.src(g) == cat.dst(h)) {
            let gh = cat.compose(g, h).expect("composable");
            for (p, s) in [((g, h), 1), ((fg, h), -1), ((f, gh), 1), ((f, g), -1)] {
                trip.push((index[&p], col, BigInt::from(s)));
            }
            col += 1;
        }
    }
    let a = IntMatrix::from_triplets(pairs.len(), col, trip);
    let zero: Vec<usize> =
        pairs.iter().enumerate().filter(|(_, &(f, g))| cat.is_identity(f) || cat.is_identity(g)).map(|(i, _)| i).collect();
    let x = random_kernel_mod_n(&a, &zero, n, rng);
    sparse(pairs.into_iter().zip(x))
}

/// Random normalised total 2-cocycle with values in `(1/n)ℤ/ℤ`, sampled from
/// the kernel of the dual of `d^Tot₂` (degree 3 of `total` must be
/// materialised) and expressed in the chosen convention.
pub fn random_total_cocycle<R: Rng>(
    mp: &MatchedPair,
    total: &ChainComplex<Cell>,
    n: u64,
    conv: Convention,
    rng: &mut R,
) -> Result<TotalCochain> {
    let d = total.boundary(2).ok_or(Error::DegreeNotMaterialised(3))?;
    let basis = total.basis(2);
    let (c, dd) = (mp.c(), mp.d());
    let zero: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, x)| x.c.iter().any(|&f| c.is_identity(f)) || x.d.iter().any(|&f| dd.is_identity(f)))
        .map(|(i, _)| i)
        .collect();
    let x = random_kernel_mod_n(d, &zero, n, rng);
    let mut phi = TotalCochain::default();
    for (cell, v) in basis.iter().zip(x) {
        if v.is_zero() {
            continue;
        }
        match (cell.c.as_slice(), cell.d.as_slice()) {
            ([g, h], []) => phi.phi_20.insert((*g, *h), v),
            ([g], [l]) => phi.phi_11.insert((*g, *l), v),
            ([], [l, m]) => phi.phi_02.insert((*l, *m), v),
            _ => None,
        };
    }
    Ok(match conv {
        Convention::DualTotal => phi,
        Convention::Literal => phi.flip(),
    })
}

/// Random normalised 1-cochain with values in `(1/n)ℤ/ℤ`.
pub fn random_cochain1<R: Rng>(cat: &FiniteCategory, n: u64, rng: &mut R) -> Cochain1 {
    sparse(
        (0..cat.len())
            .filter(|&f| !cat.is_identity(f))
            .map(|f| (f, Phase::ratio(rng.gen_range(0..n as i64), n as i64))),
    )
}

// ---------------------------------------------------------------------------
// JSON

/// `{ "phi_20": [[g,h,"a/b"]], "phi_11": [[g,λ,"a/b"]], "phi_02": [[λ,μ,"a/b"]] }`,
/// entries by morphism id; absent entries are 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawTotalCochain {
    #[serde(default)]
    pub phi_20: Vec<(String, String, Phase)>,
    #[serde(default)]
    pub phi_11: Vec<(String, String, Phase)>,
    #[serde(default)]
    pub phi_02: Vec<(String, String, Phase)>,
}

/// `{ "c": [[ζ,η,"a/b"]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawCochain2 {
    #[serde(default)]
    pub c: Vec<(String, String, Phase)>,
}

fn morphism(cat: &FiniteCategory, id: &str) -> Result<usize> {
    cat.morphism_index(id).ok_or_else(|| Error::UnknownMorphism(id.to_string()))
}

fn table_from_raw(a: &FiniteCategory, b: &FiniteCategory, raw: &[(String, String, Phase)]) -> Result<Cochain2> {
    let mut out = Cochain2::new();
    for (f, g, v) in raw {
        let key = (morphism(a, f)?, morphism(b, g)?);
        if out.insert(key, v.clone()).is_some() {
            return Err(Error::Parse(format!("duplicate cochain entry ({f}, {g})")));
        }
    }
    Ok(sparse(out))
}

fn table_to_raw(a: &FiniteCategory, b: &FiniteCategory, t: &Cochain2) -> Vec<(String, String, Phase)> {
    t.iter().filter(|(_, v)| !v.is_zero()).map(|(&(f, g), v)| (a.mid(f).to_string(), b.mid(g).to_string(), v.clone())).collect()
}

impl TotalCochain {
    pub fn from_raw(mp: &MatchedPair, raw: &RawTotalCochain) -> Result<Self> {
        Ok(TotalCochain {
            phi_20: table_from_raw(mp.c(), mp.c(), &raw.phi_20)?,
            phi_11: table_from_raw(mp.c(), mp.d(), &raw.phi_11)?,
            phi_02: table_from_raw(mp.d(), mp.d(), &raw.phi_02)?,
        })
    }

    pub fn to_raw(&self, mp: &MatchedPair) -> RawTotalCochain {
        RawTotalCochain {
            phi_20: table_to_raw(mp.c(), mp.c(), &self.phi_20),
            phi_11: table_to_raw(mp.c(), mp.d(), &self.phi_11),
            phi_02: table_to_raw(mp.d(), mp.d(), &self.phi_02),
        }
    }
}

pub fn cochain2_from_raw(cat: &FiniteCategory, raw: &RawCochain2) -> Result<Cochain2> {
    table_from_raw(cat, cat, &raw.c)
}

pub fn cochain2_to_raw(cat: &FiniteCategory, c: &Cochain2) -> RawCochain2 {
    RawCochain2 { c: table_to_raw(cat, cat, c) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_arithmetic() {
        let a = Phase::ratio(3, 4);
        let b = Phase::ratio(1, 2);
        assert_eq!(&a + &b, Phase::ratio(1, 4));
        assert_eq!(&b - &a, Phase::ratio(3, 4));
        assert_eq!(-&b, b);
        assert_eq!(Phase::ratio(-1, 3).to_string(), "2/3");
    }

    #[test]
    fn phase_parse_is_strict() {
        assert_eq!("1/2".parse::<Phase>().unwrap(), Phase::ratio(1, 2));
        assert_eq!("2/4".parse::<Phase>().unwrap().to_string(), "1/2");
        assert!("0".parse::<Phase>().unwrap().is_zero());
        for bad in ["1", "3/2", "-1/2", "1/0", "x"] {
            assert!(bad.parse::<Phase>().is_err(), "{bad}");
        }
    }
}
