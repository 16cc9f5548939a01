use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{kernel, Lattice};
use super::matrix::{unit, IntMatrix, SparseVec};
use super::snf::{invariant_factors, smith_dense, Track};
use crate::error::{Error, Result};

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` in invariant
/// factor form (`d₁ | d₂ | …`, every `dᵢ ≥ 2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "big_list")]
    pub torsion: Vec<BigInt>,
}

mod big_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // Small invariants serialise as JSON numbers, huge ones as strings.
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Num {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| match u64::try_from(x) {
                Ok(n) => Num::Small(n),
                Err(_) => Num::Big(x.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        use serde::de::Error;
        Vec::<Num>::deserialize(d)?
            .into_iter()
            .map(|n| match n {
                Num::Small(x) => Ok(BigInt::from(x)),
                Num::Big(s) => s.parse().map_err(|_| D::Error::custom(format!("bad integer `{s}`"))),
            })
            .collect()
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic(0, &[BigInt::from(n)])
    }

    /// `ℤ^free ⊕ ⊕ ℤ/oᵢ` for arbitrary orders (0 means ℤ, 1 is dropped),
    /// brought to invariant factor form.
    pub fn from_cyclic(free: usize, orders: &[BigInt]) -> Self {
        let mut free = free;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                free += 1;
            } else if !o.abs().is_one() {
                finite.push(o.abs());
            }
        }
        let n = finite.len();
        let diag = IntMatrix::from_triplets(n, n, finite.into_iter().enumerate().map(|(i, o)| (i, i, o)));
        let torsion = invariant_factors(&diag).into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank: free, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    fn cyclic_parts(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank).chain(self.torsion.iter().cloned()).collect()
    }

    /// `A ⊗ B`.
    pub fn tensor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut free = 0;
        let mut orders = Vec::new();
        for a in self.cyclic_parts() {
            for b in other.cyclic_parts() {
                // ℤ/a ⊗ ℤ/b = ℤ/gcd(a, b) with ℤ = ℤ/0
                let g = a.gcd(&b);
                if g.is_zero() {
                    free += 1;
                } else {
                    orders.push(g);
                }
            }
        }
        Self::from_cyclic(free, &orders)
    }

    /// `Tor(A, B)`.
    pub fn tor(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_cyclic(0, &orders)
    }

    /// Parse `0`, `Z`, `Z^3 + Z/2 + Z/4`, …
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut free = 0;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                free += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free += r.parse::<usize>().map_err(|_| Error::Parse(format!("bad rank in `{part}`")))?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                orders.push(d.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad order in `{part}`")))?);
            } else {
                return Err(Error::Parse(format!("unrecognised summand `{part}`")));
            }
        }
        Ok(Self::from_cyclic(free, &orders))
    }
}

impl std::str::FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A subquotient `K / I` of `ℤ^ambient` with explicit generators and a
/// projection onto canonical coordinates. Generators come torsion first (in
/// increasing order), then free.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub group: AbelianGroup,
    pub ambient: usize,
    /// Generators as vectors of `K ⊂ ℤ^ambient`.
    pub generators: Vec<SparseVec>,
    /// Order of each generator; 0 for infinite order.
    pub orders: Vec<BigInt>,
    numer: Lattice,
    proj: Vec<Vec<BigInt>>,
}

impl Subquotient {
    /// `numer / span(denom)`; every denominator generator must lie in
    /// `numer`.
    pub fn new<I>(numer: Lattice, denom: I) -> Result<Self>
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let r = numer.rank();
        let mut rel = Lattice::new(r);
        for v in denom {
            let c = numer
                .coords(&v)
                .ok_or_else(|| Error::ShapeMismatch("relation outside the numerator lattice".into()))?;
            rel.insert(c);
        }
        let s = rel.rank();
        let dense = rel.to_matrix().to_dense();
        let smith = smith_dense(dense, r, s, Track { u: true, u_inv: true, ..Track::NONE });
        let u = smith.u.unwrap();
        let u_inv = smith.u_inv.unwrap();
        debug_assert_eq!(smith.diagonal.len(), s);
        let mut kept: Vec<(usize, BigInt)> = Vec::new();
        for (i, d) in smith.diagonal.iter().enumerate() {
            if !d.is_one() {
                kept.push((i, d.clone()));
            }
        }
        for i in s..r {
            kept.push((i, BigInt::zero()));
        }
        let basis = numer.basis();
        let mut generators = Vec::with_capacity(kept.len());
        let mut proj = Vec::with_capacity(kept.len());
        let mut orders = Vec::with_capacity(kept.len());
        for (i, d) in kept {
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            for (k, row) in u_inv.iter().enumerate() {
                let c = &row[i];
                if c.is_zero() {
                    continue;
                }
                acc.extend(basis[k].iter().map(|(j, v)| (*j, v * c)));
            }
            generators.push(super::matrix::canonical(acc));
            proj.push(u[i].clone());
            orders.push(d);
        }
        let group = AbelianGroup::from_cyclic(0, &orders);
        Ok(Subquotient { group, ambient: numer.dim, generators, orders, numer, proj })
    }

    /// Canonical coordinates of the class of `x`; `None` if `x ∉ K`.
    pub fn project(&self, x: &SparseVec) -> Option<Vec<BigInt>> {
        let c = self.numer.coords(x)?;
        Some(
            self.proj
                .iter()
                .zip(&self.orders)
                .map(|(row, d)| {
                    let v: BigInt = c.iter().map(|(k, a)| &row[*k] * a).sum();
                    if d.is_zero() {
                        v
                    } else {
                        v.mod_floor(d)
                    }
                })
                .collect(),
        )
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numer
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}

/// `H = ker(d_out) / im(d_in)` at a space of dimension `dim`. `d_out` maps
/// out of the space (absent in degree 0), `d_in` maps into it.
pub fn homology_of(dim: usize, d_out: Option<&IntMatrix>, d_in: &IntMatrix) -> Result<Subquotient> {
    if d_in.rows() != dim || d_out.is_some_and(|d| d.cols() != dim) {
        return Err(Error::ShapeMismatch("boundary shapes do not meet".into()));
    }
    let numer = match d_out {
        Some(d) => Lattice::spanned_by(dim, kernel(d)),
        None => Lattice::full(dim),
    };
    Subquotient::new(numer, d_in.columns().iter().cloned())
        .map_err(|_| Error::NotAComplex(0))
}

/// A homomorphism between groups with chosen cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    /// Columns are images of source generators in target coordinates.
    pub matrix: IntMatrix,
    pub source_orders: Vec<BigInt>,
    pub target_orders: Vec<BigInt>,
}

impl GroupHom {
    pub fn identity(orders: &[BigInt]) -> Self {
        GroupHom {
            matrix: IntMatrix::identity(orders.len()),
            source_orders: orders.to_vec(),
            target_orders: orders.to_vec(),
        }
    }

    /// Reduce entries modulo target orders.
    fn reduced(matrix: IntMatrix, target_orders: &[BigInt]) -> IntMatrix {
        let trip: Vec<_> = matrix
            .triplets()
            .map(|(i, j, v)| {
                let d = &target_orders[i];
                (i, j, if d.is_zero() { v.clone() } else { v.mod_floor(d) })
            })
            .collect();
        IntMatrix::from_triplets(matrix.rows(), matrix.cols(), trip)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        let m = self.matrix.try_mul(&other.matrix)?;
        Ok(GroupHom {
            matrix: Self::reduced(m, &self.target_orders),
            source_orders: other.source_orders.clone(),
            target_orders: self.target_orders.clone(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source_orders == self.target_orders
            && Self::reduced(self.matrix.clone(), &self.target_orders)
                == Self::reduced(IntMatrix::identity(self.source_orders.len()), &self.target_orders)
    }

    pub fn is_zero(&self) -> bool {
        Self::reduced(self.matrix.clone(), &self.target_orders).is_zero()
    }

    fn relations(orders: &[BigInt]) -> IntMatrix {
        let n = orders.len();
        IntMatrix::from_triplets(n, n, orders.iter().enumerate().map(|(i, d)| (i, i, d.clone())))
    }

    pub fn is_surjective(&self) -> bool {
        let n_b = self.target_orders.len();
        let m = self.matrix.hstack(&Self::relations(&self.target_orders));
        let d = invariant_factors(&m);
        d.len() == n_b && d.iter().all(|x| x.is_one())
    }

    pub fn is_injective(&self) -> bool {
        let n_a = self.source_orders.len();
        let m = self.matrix.hstack(&Self::relations(&self.target_orders).neg());
        kernel(&m).iter().all(|v| {
            v.iter().filter(|(i, _)| *i < n_a).all(|(i, x)| {
                let d = &self.source_orders[*i];
                !d.is_zero() && (x % d).is_zero()
            })
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    fn target_relations(&self) -> Vec<SparseVec> {
        self.target_orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| vec![(i, d.clone())])
            .collect()
    }

    /// The image as an abstract group.
    pub fn image(&self) -> Result<AbelianGroup> {
        let n = self.target_orders.len();
        let rel = self.target_relations();
        let numer = Lattice::spanned_by(n, self.matrix.columns().iter().cloned().chain(rel.iter().cloned()));
        Ok(Subquotient::new(numer, rel)?.group)
    }

    /// The cokernel as an abstract group.
    pub fn cokernel(&self) -> Result<AbelianGroup> {
        let n = self.target_orders.len();
        let denom = self.matrix.columns().iter().cloned().chain(self.target_relations());
        Ok(Subquotient::new(Lattice::full(n), denom)?.group)
    }

    /// Image of the class with source coordinates `x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let v = super::matrix::sparse_from_dense(x);
        let img = super::matrix::sparse_to_dense(&self.matrix.apply(&v), self.target_orders.len());
        img.into_iter()
            .zip(&self.target_orders)
            .map(|(y, d)| if d.is_zero() { y } else { y.mod_floor(d) })
            .collect()
    }
}

/// The map induced on subquotients by an integer matrix sending `src`'s
/// numerator into `tgt`'s numerator.
pub fn induced_hom(f: &IntMatrix, src: &Subquotient, tgt: &Subquotient) -> Result<GroupHom> {
    if f.cols() != src.ambient || f.rows() != tgt.ambient {
        return Err(Error::ShapeMismatch(format!(
            "map is {}×{}, homology ambients are {} → {}",
            f.rows(),
            f.cols(),
            src.ambient,
            tgt.ambient
        )));
    }
    let mut cols = Vec::with_capacity(src.generators.len());
    for g in &src.generators {
        let img = f.apply(g);
        let c = tgt
            .project(&img)
            .ok_or_else(|| Error::NotAChainMap("image of a cycle is not a cycle".into()))?;
        cols.push(super::matrix::sparse_from_dense(&c));
    }
    Ok(GroupHom {
        matrix: IntMatrix::from_columns(tgt.generators.len(), cols),
        source_orders: src.orders.clone(),
        target_orders: tgt.orders.clone(),
    })
}

/// Homology at `B` of `A --f--> B --g--> C` for groups presented by cyclic
/// generators (the maps are given on generators, as in [`GroupHom`]).
/// Either map may be absent at the ends of a complex.
pub fn middle_homology(
    b_orders: &[BigInt],
    f: Option<&GroupHom>,
    g: Option<&GroupHom>,
) -> Result<Subquotient> {
    let n_b = b_orders.len();
    let numer = match g {
        Some(g) => {
            if g.source_orders.as_slice() != b_orders {
                return Err(Error::ShapeMismatch("outgoing map has a different source".into()));
            }
            let m = g.matrix.hstack(&GroupHom::relations(&g.target_orders).neg());
            let gens = kernel(&m)
                .into_iter()
                .map(|v| v.into_iter().filter(|(i, _)| *i < n_b).collect::<SparseVec>());
            Lattice::spanned_by(n_b, gens)
        }
        None => Lattice::full(n_b),
    };
    let mut denom: Vec<SparseVec> = Vec::new();
    if let Some(f) = f {
        if f.target_orders.as_slice() != b_orders {
            return Err(Error::ShapeMismatch("incoming map has a different target".into()));
        }
        denom.extend(f.matrix.columns().iter().cloned());
    }
    for (i, d) in b_orders.iter().enumerate() {
        if !d.is_zero() {
            let mut e = unit(i);
            e[0].1 = d.clone();
            denom.push(e);
        }
    }
    Subquotient::new(numer, denom).map_err(|_| Error::NotAComplex(0))
}

/// Small helper: group order as `u64` when finite and small.
pub fn finite_order(g: &AbelianGroup) -> Option<u64> {
    (g.free_rank == 0).then(|| g.torsion_order().to_u64()).flatten()
}
