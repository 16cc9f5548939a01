//! First and second pages of the two spectral sequences of the matched
//! double complex.
//!
//! Positions are always `(p, q)` with `p` the C-degree and `q` the
//! D-degree. `hv` takes vertical (column) homology first, so
//! `E^{hv,1}_{p,q} = H_q(C_{p,•}, d^v)` with `d^1 = d̃^h`; `vh` takes row
//! homology first, `E^{vh,1}_{p,q} = H_p(C_{•,q}, d^h)` with `d^1 = d̃^v`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::abelian::{induced_hom, middle_homology, AbelianGroup, GroupHom, Subquotient};
use crate::complexes::{matrix_of, Cell, ChainComplex, DoubleComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Hv,
    Vh,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Hv => "hv",
            Orientation::Vh => "vh",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SpectralPage {
    pub orientation: Orientation,
    pub page: u8,
    pub groups: BTreeMap<(usize, usize), AbelianGroup>,
    /// Page-1 differentials keyed by their source position.
    pub differentials: BTreeMap<(usize, usize), GroupHom>,
}

impl SpectralPage {
    pub fn get(&self, p: usize, q: usize) -> Option<&AbelianGroup> {
        self.groups.get(&(p, q))
    }

    /// Positions with `p + q = k`, by increasing `p`.
    pub fn diagonal(&self, k: usize) -> Option<Vec<&AbelianGroup>> {
        (0..=k).map(|p| self.get(p, k - p)).collect()
    }

    /// Text grid with `q` increasing upwards.
    pub fn render(&self) -> String {
        let pmax = self.groups.keys().map(|k| k.0).max().unwrap_or(0);
        let qmax = self.groups.keys().map(|k| k.1).max().unwrap_or(0);
        let cell = |p, q| self.get(p, q).map(|g| g.to_string()).unwrap_or_else(|| ".".into());
        let width = self.groups.values().map(|g| g.to_string().chars().count()).max().unwrap_or(1).max(3);
        let mut out = format!("E^{{{},{}}}\n", self.orientation, self.page);
        for q in (0..=qmax).rev() {
            out.push_str(&format!("q={q:<2}|"));
            for p in 0..=pmax {
                out.push_str(&format!(" {:>width$}", cell(p, q)));
            }
            out.push('\n');
        }
        out.push_str("     ");
        for p in 0..=pmax {
            out.push_str(&format!(" {:>width$}", format!("p={p}")));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .groups
            .iter()
            .map(|(&(p, q), g)| serde_json::json!({ "p": p, "q": q, "group": g.to_string() }))
            .collect();
        serde_json::json!({ "orientation": self.orientation, "page": self.page, "cells": cells })
    }
}

/// Both pages of one orientation, keeping the page-1 subquotients.
pub struct Pages {
    pub first: SpectralPage,
    pub second: SpectralPage,
    e1: HashMap<(usize, usize), Subquotient>,
}

impl Pages {
    /// `E^1_{p,q}` with tracked generators.
    pub fn e1(&self, p: usize, q: usize) -> Option<&Subquotient> {
        self.e1.get(&(p, q))
    }
}

/// Pages 1 and 2. `E^1` is available for `p + q ≤ top − 1`, `E^2` for
/// `p + q ≤ top − 2`.
pub fn pages(dc: &DoubleComplex, orientation: Orientation) -> Result<Pages> {
    let top = dc.top;
    if top < 1 {
        return Err(Error::DegreeNotMaterialised(1));
    }
    let lines: Vec<ChainComplex<Cell>> = (0..top)
        .map(|i| match orientation {
            Orientation::Hv => dc.column(i),
            Orientation::Vh => dc.row(i),
        })
        .collect::<Result<_>>()?;
    let mut e1 = HashMap::new();
    for n in 0..top {
        for p in 0..=n {
            let q = n - p;
            let h = match orientation {
                Orientation::Hv => lines[p].homology(q)?,
                Orientation::Vh => lines[q].homology(p)?,
            };
            e1.insert((p, q), h);
        }
    }
    // d^1 out of (p,q): to (p−1,q) for hv, to (p,q−1) for vh
    let target = |p: usize, q: usize| match orientation {
        Orientation::Hv => p.checked_sub(1).map(|p1| (p1, q)),
        Orientation::Vh => q.checked_sub(1).map(|q1| (p, q1)),
    };
    let mut diffs = BTreeMap::new();
    for (&(p, q), src) in &e1 {
        let Some((p1, q1)) = target(p, q) else { continue };
        let m = match orientation {
            Orientation::Hv => dc.dh(p1, q1)?,
            Orientation::Vh => dc.dv(p1, q1)?,
        };
        diffs.insert((p, q), induced_hom(m, src, &e1[&(p1, q1)])?);
    }
    for (&(p, q), f) in &diffs {
        if let Some(g) = target(p, q).and_then(|t| diffs.get(&t)) {
            if !g.compose(f)?.is_zero() {
                return Err(Error::NotAComplex(p + q));
            }
        }
    }
    let mut e2 = BTreeMap::new();
    for (&(p, q), b) in &e1 {
        let incoming = match orientation {
            Orientation::Hv => (p + 1, q),
            Orientation::Vh => (p, q + 1),
        };
        let Some(f) = diffs.get(&incoming) else { continue };
        let g = diffs.get(&(p, q));
        e2.insert((p, q), middle_homology(&b.orders, Some(f), g)?.group);
    }
    let first = SpectralPage {
        orientation,
        page: 1,
        groups: e1.iter().map(|(k, s)| (*k, s.group.clone())).collect(),
        differentials: diffs,
    };
    let second = SpectralPage { orientation, page: 2, groups: e2, differentials: BTreeMap::new() };
    Ok(Pages { first, second, e1 })
}

pub fn page1(dc: &DoubleComplex, orientation: Orientation) -> Result<SpectralPage> {
    Ok(pages(dc, orientation)?.first)
}

pub fn page2(dc: &DoubleComplex, orientation: Orientation) -> Result<SpectralPage> {
    Ok(pages(dc, orientation)?.second)
}

/// Rank bookkeeping for a total-degree diagonal of `E^2`
/// against the homology it converges to.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub degree: usize,
    pub e2_rank: usize,
    pub h_rank: usize,
    /// `Σ rank E² ≥ rank H` always; equality is reported, not assumed.
    pub ranks_agree: bool,
}

pub fn compare_ranks(e2: &SpectralPage, h: &[AbelianGroup]) -> Vec<Comparison> {
    h.iter()
        .enumerate()
        .filter_map(|(k, hk)| {
            let diag = e2.diagonal(k)?;
            let e2_rank = diag.iter().map(|g| g.free_rank).sum();
            Some(Comparison { degree: k, e2_rank, h_rank: hk.free_rank, ranks_agree: e2_rank == hk.free_rank })
        })
        .collect()
}

/// The two-row exact sequence `0 → E^{vh,2}_{n,0} → H_n → E^{vh,2}_{n−1,1} → 0`
/// checked through the edge map `H_n(row 0) → H_n(Tot)`: its image must be
/// `E_{n,0}` and its cokernel `E_{n−1,1}`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoRowCheck {
    pub degree: usize,
    pub bottom: AbelianGroup,
    pub top: Option<AbelianGroup>,
    pub total: AbelianGroup,
    pub image: AbelianGroup,
    pub cokernel: AbelianGroup,
    pub holds: bool,
}

pub fn two_row_check(
    dc: &DoubleComplex,
    total: &ChainComplex<Cell>,
    e2: &SpectralPage,
    n: usize,
) -> Result<TwoRowCheck> {
    let bottom = e2.get(n, 0).cloned().ok_or(Error::DegreeNotMaterialised(n + 2))?;
    let top = if n == 0 { None } else { Some(e2.get(n - 1, 1).cloned().ok_or(Error::DegreeNotMaterialised(n + 2))?) };
    let row = dc.row(0)?;
    let incl = matrix_of(row.basis(n), total.index(n), total.dim(n), |x: &Cell| vec![(x.clone(), 1)]);
    let edge = induced_hom(&incl, &row.homology(n)?, &total.homology(n)?)?;
    let image = edge.image()?;
    let cokernel = edge.cokernel()?;
    let trivial = AbelianGroup::trivial();
    let holds = image == bottom && cokernel == *top.as_ref().unwrap_or(&trivial);
    Ok(TwoRowCheck { degree: n, bottom, top, total: total.homology(n)?.group, image, cokernel, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::trivial_g2_pair;
    use crate::category::DEFAULT_CAP;

    #[test]
    fn trivial_pair_rows_above_zero_vanish() {
        let dc = DoubleComplex::new(&trivial_g2_pair(), 3, DEFAULT_CAP).unwrap();
        let e2 = page2(&dc, Orientation::Vh).unwrap();
        for (&(_, q), g) in &e2.groups {
            if q >= 1 {
                assert!(g.is_trivial());
            }
        }
        assert_eq!(e2.get(0, 0), Some(&AbelianGroup::free(1)));
    }
}
