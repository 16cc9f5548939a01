//! Model matched pairs `(Eₙ, Fₙ)` on the staircase `Xₙ = {(p,q) : p+q ≤ n}`
//! and the induced morphisms `h_γ`.
//!
//! `E`-morphisms are `((p,q),(p′,q))` with `p ≤ p′` (range first), generated
//! by `e_{p,q} = ((p,q),(p+1,q))`; `F`-morphisms are `((p,q),(p,q′))` with
//! `q ≥ q′`, generated by `f_{p,q} = ((p,q+1),(p,q))`. The product is the
//! poset category `Γₙ` of pairs `(a, b)` with `a_L ≤ b_L`, `a_R ≥ b_R`.

use std::collections::HashMap;

use super::{MatchedPair, MatchedPairMorphism, ZappaSzep};
use crate::category::{ComposableTuple, FiniteCategory, Morphism};
use crate::error::{Error, Result};

pub type Point = (usize, usize);

#[derive(Debug, Clone)]
pub struct ModelPair {
    pub n: usize,
    pub points: Vec<Point>,
    pub pair: MatchedPair,
    pub zs: ZappaSzep,
    /// `Γₙ` with morphisms `(a, b)`.
    pub gamma: FiniteCategory,
    /// Object indices `(a, b)` of each `Γₙ` morphism.
    pub gamma_pairs: Vec<(usize, usize)>,
    /// The isomorphism `Eₙ ⋈ Fₙ → Γₙ` on morphisms.
    pub zs_to_gamma: Vec<usize>,
    point_index: HashMap<Point, usize>,
    e_index: HashMap<(usize, usize), usize>,
    f_index: HashMap<(usize, usize), usize>,
}

fn name(p: Point) -> String {
    format!("({},{})", p.0, p.1)
}

/// Build the model pair `(Eₙ, Fₙ)` together with `Γₙ`.
pub fn model_pair(n: usize) -> ModelPair {
    let points: Vec<Point> = (0..=n).flat_map(|p| (0..=n - p).map(move |q| (p, q))).collect();
    let point_index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let objects: Vec<String> = points.iter().map(|&x| name(x)).collect();

    // E: ((p,q),(p',q)), p ≤ p'
    let mut e_pairs = Vec::new();
    let mut f_pairs = Vec::new();
    let mut g_pairs = Vec::new();
    for (ai, &a) in points.iter().enumerate() {
        for (bi, &b) in points.iter().enumerate() {
            if a.1 == b.1 && a.0 <= b.0 {
                e_pairs.push((ai, bi));
            }
            if a.0 == b.0 && a.1 >= b.1 {
                f_pairs.push((ai, bi));
            }
            if a.0 <= b.0 && a.1 >= b.1 {
                g_pairs.push((ai, bi));
            }
        }
    }
    let poset = |prefix: &str, pairs: &[(usize, usize)]| -> (FiniteCategory, HashMap<(usize, usize), usize>) {
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let morphisms = pairs
            .iter()
            .map(|&(a, b)| Morphism { id: format!("{prefix}{}{}", name(points[a]), name(points[b])), src: b, dst: a })
            .collect();
        let identity = (0..points.len()).map(|x| index[&(x, x)]).collect();
        let cat = FiniteCategory::build(objects.clone(), morphisms, identity, |f, g| {
            let (a, b) = pairs[f];
            let (b2, c) = pairs[g];
            debug_assert_eq!(b, b2);
            index.get(&(a, c)).copied()
        })
        .expect("poset category");
        (cat, index)
    };
    let (e_cat, e_index) = poset("e", &e_pairs);
    let (f_cat, f_index) = poset("f", &f_pairs);
    let (gamma, g_index) = poset("g", &g_pairs);

    // e = ((p,q),(p',q)), f = ((p',q),(p',q2)):
    // e ◁ f = ((p,q),(p,q2)) and e ▷ f = ((p,q2),(p',q2))
    let pair = MatchedPair::new(
        e_cat,
        f_cat,
        |ei, fi| {
            let (a, _) = e_pairs[ei];
            let (_, b) = f_pairs[fi];
            let (p, q2) = (points[a].0, points[b].1);
            f_index.get(&(a, point_index[&(p, q2)])).copied()
        },
        |ei, fi| {
            let (a, _) = e_pairs[ei];
            let (_, b) = f_pairs[fi];
            let corner = point_index[&(points[a].0, points[b].1)];
            e_index.get(&(corner, b)).copied()
        },
    )
    .expect("model pair axioms");
    let zs = pair.zappa_szep().expect("model product");
    let zs_to_gamma = zs
        .pairs
        .iter()
        .map(|&(fi, ei)| {
            let (a, _) = f_pairs[fi];
            let (_, b) = e_pairs[ei];
            g_index[&(a, b)]
        })
        .collect();
    ModelPair { n, points, pair, zs, gamma, gamma_pairs: g_pairs, zs_to_gamma, point_index, e_index, f_index }
}

impl ModelPair {
    pub fn point(&self, p: usize, q: usize) -> Option<usize> {
        self.point_index.get(&(p, q)).copied()
    }

    /// The `E`-morphism `((p,q),(p′,q))`.
    pub fn e(&self, p: usize, p2: usize, q: usize) -> Option<usize> {
        self.e_index.get(&(self.point(p, q)?, self.point(p2, q)?)).copied()
    }

    /// The `F`-morphism `((p,q),(p,q′))`.
    pub fn f(&self, p: usize, q: usize, q2: usize) -> Option<usize> {
        self.f_index.get(&(self.point(p, q)?, self.point(p, q2)?)).copied()
    }

    /// Generator `e_{p,q} = ((p,q),(p+1,q))`.
    pub fn e_gen(&self, p: usize, q: usize) -> Option<usize> {
        self.e(p, p + 1, q)
    }

    /// Generator `f_{p,q} = ((p,q+1),(p,q))`.
    pub fn f_gen(&self, p: usize, q: usize) -> Option<usize> {
        self.f(p, q + 1, q)
    }

    /// The staircase tuple `x_k = (f_{i,2k−1−i} e_{i,2k−1−i})_{i<k}` of the
    /// product, for `n = 2k`.
    pub fn staircase(&self) -> Option<ComposableTuple> {
        if self.n % 2 != 0 {
            return None;
        }
        let k = self.n / 2;
        if k == 0 {
            return Some(ComposableTuple::object(0));
        }
        let entries: Option<Vec<usize>> = (0..k)
            .map(|i| {
                let q = 2 * k - 1 - i;
                self.zs.index_of(self.f_gen(i, q)?, self.e_gen(i, q)?)
            })
            .collect();
        Some(self.zs.category.tuple(entries?, 0))
    }
}

/// The unique matched-pair morphism `h_γ: (E_{2k}, F_{2k}) → (C, D)` sending
/// the staircase `x_k` to the composable `k`-tuple `γ` of `C ⋈ D`.
pub fn induced_morphism(
    mp: &MatchedPair,
    zs: &ZappaSzep,
    gamma: &ComposableTuple,
) -> Result<(ModelPair, MatchedPairMorphism)> {
    let cat = &zs.category;
    if !cat.is_composable(&gamma.entries) {
        return Err(Error::NotComposable(
            gamma.entries.iter().map(|&g| cat.mid(g).to_string()).collect::<Vec<_>>().join(", "),
        ));
    }
    let k = gamma.degree();
    let model = model_pair(2 * k);
    let (c, d) = (mp.c(), mp.d());
    if k == 0 {
        let x = gamma.r;
        let h = MatchedPairMorphism { objects: vec![x], on_c: vec![c.identity(x)], on_d: vec![d.identity(x)] };
        h.verify(&model.pair, mp)?;
        return Ok((model, h));
    }
    let n = 2 * k;
    let dc: Vec<(usize, usize)> = gamma.entries.iter().map(|&g| zs.pairs[g]).collect();
    let end = c.src(dc[k - 1].1);
    // images of generators, indexed by (p, q) with p + q ≤ n − 1
    let mut cg: HashMap<Point, usize> = HashMap::new();
    let mut dg: HashMap<Point, usize> = HashMap::new();
    for p in 0..n {
        let q = n - 1 - p;
        if p < k {
            dg.insert((p, q), dc[p].0);
            cg.insert((p, q), dc[p].1);
        } else {
            dg.insert((p, q), d.identity(end));
            cg.insert((p, q), c.identity(end));
        }
    }
    for s in (0..n - 1).rev() {
        for p in 0..=s {
            let q = s - p;
            let upper = cg[&(p, q + 1)];
            let right = dg[&(p + 1, q)];
            if c.src(upper) != d.dst(right) {
                return Err(Error::NotComposable(format!("staircase square at ({p},{q})")));
            }
            dg.insert((p, q), mp.act_l(upper, right));
            cg.insert((p, q), mp.act_r(upper, right));
        }
    }
    let objects: Vec<usize> = model
        .points
        .iter()
        .map(|&(p, q)| {
            if p + q < n {
                d.src(dg[&(p, q)])
            } else if q >= 1 {
                d.dst(dg[&(p, q - 1)])
            } else {
                c.src(cg[&(p - 1, 0)])
            }
        })
        .collect();
    let e_pairs = |i: usize| {
        let m = &model.pair.c().morphisms()[i];
        (model.points[m.dst], model.points[m.src])
    };
    let on_c: Vec<usize> = (0..model.pair.c().len())
        .map(|i| {
            let ((p, q), (p2, _)) = e_pairs(i);
            let gens: Vec<usize> = (p..p2).map(|t| cg[&(t, q)]).collect();
            if gens.is_empty() {
                Some(c.identity(objects[model.point(p, q).unwrap()]))
            } else {
                c.compose_all(&gens)
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::NotComposable("E-path image".into()))?;
    let on_d: Vec<usize> = (0..model.pair.d().len())
        .map(|i| {
            let m = &model.pair.d().morphisms()[i];
            let ((p, q), (_, q2)) = (model.points[m.dst], model.points[m.src]);
            let gens: Vec<usize> = (q2..q).rev().map(|t| dg[&(p, t)]).collect();
            if gens.is_empty() {
                Some(d.identity(objects[model.point(p, q).unwrap()]))
            } else {
                d.compose_all(&gens)
            }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::NotComposable("F-path image".into()))?;
    let h = MatchedPairMorphism { objects, on_c, on_d };
    h.verify(&model.pair, mp)?;
    Ok((model, h))
}
