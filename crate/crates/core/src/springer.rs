//! Cell combinatorics of affine Springer and Spaltenstein fibers for a split
//! regular element: the root sets E_x, cell dimensions, equivalence classes of
//! cells, the minimal alcove region and the one-dimensional torus orbits.

use std::collections::{HashSet, VecDeque};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::affweyl::{alcove_value, dot, simple_affine_root, AffineRoot, AffineWeylElement, NodeSet};
use crate::error::{Error, Result};
use crate::rootdata::{enumerate_weyl, RootDatum, WeylElement};

/// The finite set `(Φ⁺ - δ) ⊔ Φ⁻` containing every E_x, in a fixed order.
pub fn universe(rd: &RootDatum) -> Vec<AffineRoot> {
    let mut out: Vec<AffineRoot> = rd.positive_roots().iter().map(|a| AffineRoot::new(a.clone(), -1)).collect();
    out.extend(rd.positive_roots().iter().map(|a| AffineRoot::new(a.iter().map(|c| -c).collect(), 0)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDescriptor {
    pub x: AffineWeylElement,
    pub e_set: Vec<AffineRoot>,
    pub dim: usize,
}

/// Bitmask over [`universe`] of the roots sent to positive roots by `x`.
pub fn e_mask(rd: &RootDatum, x: &AffineWeylElement) -> Vec<u64> {
    let n = 2 * rd.num_positive_roots();
    let mut mask = vec![0u64; n.div_ceil(64)];
    let w = x.finite_part();
    let mu = x.translation_part();
    for (i, a) in rd.positive_roots().iter().enumerate() {
        let wa = w.act_root(a);
        let p = dot(&wa, mu);
        let wa_pos = rd.is_positive_root(&wa);
        // x(a - δ) = wa + (-1 - p)δ
        if -1 - p > 0 || (-1 - p == 0 && wa_pos) {
            mask[i / 64] |= 1 << (i % 64);
        }
        // x(-a) = -wa + p δ
        let j = i + rd.num_positive_roots();
        if p > 0 || (p == 0 && !wa_pos) {
            mask[j / 64] |= 1 << (j % 64);
        }
    }
    mask
}

pub fn e_set(rd: &RootDatum, x: &AffineWeylElement) -> CellDescriptor {
    let e_set: Vec<AffineRoot> = universe(rd)
        .into_iter()
        .filter(|b| x.act_affine_root(b).is_positive())
        .collect();
    CellDescriptor { x: x.clone(), dim: e_set.len(), e_set }
}

/// Whether the real affine root lies in the span of the simple affine roots in `j`.
pub fn in_parabolic(rd: &RootDatum, beta: &AffineRoot, j: NodeSet) -> bool {
    let k = beta.level;
    if k != 0 && !j.contains(0) {
        return false;
    }
    let theta = rd.highest_root();
    (0..rd.rank()).all(|i| beta.root[i] + k * theta[i] == 0 || j.contains(i + 1))
}

/// Dimension of the cell of `x` in the Spaltenstein fiber of parahoric type `j`,
/// by scanning the affine roots `γ = α + mδ` that can be positive with
/// `x⁻¹(γ)` in the universe.
pub fn cell_dim_spaltenstein(rd: &RootDatum, x: &AffineWeylElement, j: NodeSet) -> usize {
    let xi = x.inverse();
    let mu = x.translation_part();
    let span = 1 + rd.all_roots().iter().map(|a| dot(a, mu).abs()).max().unwrap_or(0);
    let mut count = 0;
    for a in rd.all_roots() {
        for m in -span..=span {
            let gamma = AffineRoot::new(a.clone(), m);
            if !gamma.is_positive() {
                continue;
            }
            let beta = xi.act_affine_root(&gamma);
            let up = beta.shift(1);
            if !beta.is_positive() && up.is_positive() && !in_parabolic(rd, &beta, j) && !in_parabolic(rd, &up, j) {
                count += 1;
            }
        }
    }
    count
}

/// All `tau_mu w` with `|mu_i| <= radius`.
pub fn window_elements(weyl: &[WeylElement], rank: usize, radius: i64) -> Vec<AffineWeylElement> {
    let mut out = Vec::new();
    for mu in box_points(rank, radius) {
        for w in weyl {
            out.push(AffineWeylElement::new(w.clone(), mu.clone()));
        }
    }
    out
}

pub(crate) fn box_points(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimClassReport {
    /// Distinct E-sets over the window of each radius `0..=radius`.
    pub counts: Vec<usize>,
    pub count: usize,
    /// The count did not change between the last two radii.
    pub stable: bool,
}

/// Number of distinct E_x over `x = tau_mu w` with `|mu_i| <= radius`.
pub fn sim_classes(rd: &RootDatum, radius: i64) -> Result<SimClassReport> {
    if radius < rd.coxeter_number() as i64 {
        return Err(Error::input(format!("window radius {radius} is below h = {}", rd.coxeter_number())));
    }
    let weyl = enumerate_weyl(rd)?;
    let r = rd.rank();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut counts = Vec::new();
    for k in 0..=radius {
        let shell: Vec<Vec<i64>> = box_points(r, k)
            .into_iter()
            .filter(|mu| mu.iter().map(|c| c.abs()).max().unwrap_or(0) == k)
            .collect();
        let masks: HashSet<Vec<u64>> = shell
            .par_iter()
            .flat_map_iter(|mu| {
                weyl.iter()
                    .map(|w| e_mask(rd, &AffineWeylElement::new(w.clone(), mu.clone())))
                    .collect::<Vec<_>>()
            })
            .collect();
        seen.extend(masks);
        counts.push(seen.len());
    }
    let count = *counts.last().expect("radius >= 0");
    let stable = counts.len() >= 2 && counts[counts.len() - 2] == count;
    Ok(SimClassReport { counts, count, stable })
}

/// Elements `y` of the affine Weyl group whose alcove `y(A_1)` has every simple
/// affine root value above `-1`, found by a walk through shared walls.
pub fn alcove_region_count(rd: &RootDatum) -> usize {
    alcove_region(rd).len()
}

pub fn alcove_region(rd: &RootDatum) -> Vec<AffineWeylElement> {
    let r = rd.rank();
    let simple: Vec<AffineRoot> = (0..=r).map(|i| simple_affine_root(rd, i, 1)).collect();
    let gens: Vec<AffineWeylElement> = (0..=r).map(|i| AffineWeylElement::simple(rd, i, 1)).collect();
    let minus_one = Rational64::from_integer(-1);
    let inside = |y: &AffineWeylElement| {
        let yi = y.inverse();
        simple.iter().all(|b| alcove_value(rd, &yi, b).expect("real root") > minus_one)
    };
    let start = AffineWeylElement::identity(r);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(y) = queue.pop_front() {
        for s in &gens {
            for z in [y.compose(s), s.compose(&y)] {
                if !seen.contains(&z) && inside(&z) {
                    seen.insert(z.clone());
                    queue.push_back(z);
                }
            }
        }
    }
    let mut out: Vec<AffineWeylElement> = seen.into_iter().collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaltensteinEdge {
    /// Minimal coset representative of the other fixed point.
    pub target: AffineWeylElement,
    /// Positive root labelling the torus orbit.
    pub root: Vec<i64>,
    /// `m` with the edge given by the reflection `s_{α + ℓ m δ}`.
    pub level: i64,
    /// Whether `m` is the maximum of the defining formula (as opposed to the
    /// edge arriving at `x` from the next level up).
    pub outgoing: bool,
}

/// One-dimensional torus orbits through the fixed point of `x` in the partial
/// affine flag variety of type `j` for the `ell`-dilated group. `x` must lie in
/// the `ell`-dilated extended affine Weyl group; it is first reduced to its
/// minimal coset representative.
pub fn spaltenstein_edges(
    rd: &RootDatum,
    x: &AffineWeylElement,
    j: NodeSet,
    ell: i64,
) -> Result<Vec<SpaltensteinEdge>> {
    if ell < 1 {
        return Err(Error::input("ell must be positive"));
    }
    let x1 = x
        .undilate(ell)
        .ok_or_else(|| Error::input(format!("{x} is not in the {ell}-dilated extended affine Weyl group")))?;
    let x1 = x1.reduce_to_min_coset_rep(rd, j);
    let w = x1.finite_part();
    let mu = x1.translation_part();
    let winv = w.inverse();
    let xi = x1.inverse();
    let span = 1 + rd.all_roots().iter().map(|a| dot(a, mu).abs()).max().unwrap_or(0);
    let mut out = Vec::new();
    for a in rd.positive_roots() {
        let wa = winv.act_root(a);
        // |b_i| <= θ_i for roots, so only levels -1, 0, 1 can lie in a parabolic
        if (-1..=1).any(|k| in_parabolic(rd, &AffineRoot::new(wa.clone(), k), j)) {
            continue;
        }
        let mut m = span;
        while xi.act_affine_root(&AffineRoot::new(a.clone(), m)).is_positive() {
            m -= 1;
            if m < -span {
                return Err(Error::invariant("level scan did not terminate"));
            }
        }
        for (lvl, outgoing) in [(m, true), (m + 1, false)] {
            let s = AffineWeylElement::reflection(rd, &AffineRoot::new(a.clone(), lvl))?;
            let y = s.compose(&x1).reduce_to_min_coset_rep(rd, j);
            out.push(SpaltensteinEdge { target: y.dilate(ell), root: a.clone(), level: lvl, outgoing });
        }
    }
    out.sort();
    Ok(out)
}

/// Curves `{x, s_{x(β)} x}` for `β ∈ E_x`: the torus orbits of the Iwahori cells.
pub fn iwahori_curves(rd: &RootDatum, x: &AffineWeylElement) -> Result<Vec<AffineWeylElement>> {
    e_set(rd, x)
        .e_set
        .iter()
        .map(|b| Ok(AffineWeylElement::reflection(rd, &x.act_affine_root(b))?.compose(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn rd(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_e_sets() {
        let a1 = rd("A1");
        assert_eq!(e_set(&a1, &AffineWeylElement::identity(1)).dim, 0);
        let s = AffineWeylElement::simple(&a1, 1, 1);
        assert_eq!(e_set(&a1, &s).e_set, vec![AffineRoot::new(vec![-1], 0)]);
        let t = AffineWeylElement::translation(vec![2]);
        assert_eq!(e_set(&a1, &t).e_set, vec![AffineRoot::new(vec![-1], 0)]);
    }

    #[test]
    fn mask_matches_set() {
        let b2 = rd("B2");
        let weyl = enumerate_weyl(&b2).unwrap();
        let u = universe(&b2);
        for x in window_elements(&weyl, 2, 2) {
            let mask = e_mask(&b2, &x);
            let from_mask: Vec<AffineRoot> =
                u.iter().enumerate().filter(|(i, _)| mask[i / 64] >> (i % 64) & 1 == 1).map(|(_, b)| b.clone()).collect();
            assert_eq!(from_mask, e_set(&b2, &x).e_set);
            assert_eq!(cell_dim_spaltenstein(&b2, &x, NodeSet::EMPTY), from_mask.len());
        }
    }

    #[test]
    fn class_counts() {
        let a1 = sim_classes(&rd("A1"), 3).unwrap();
        assert_eq!((a1.count, a1.stable), (3, true));
        let a2 = sim_classes(&rd("A2"), 3).unwrap();
        assert_eq!((a2.count, a2.stable), (16, true));
        assert!(sim_classes(&rd("A2"), 2).is_err());
    }

    #[test]
    fn alcove_regions() {
        assert_eq!(alcove_region_count(&rd("A1")), 3);
        assert_eq!(alcove_region_count(&rd("A2")), 16);
        assert!(alcove_region_count(&rd("G2")) <= 49);
    }

    #[test]
    fn identity_has_no_cell() {
        let a2 = rd("A2");
        for j in 0..8 {
            assert_eq!(cell_dim_spaltenstein(&a2, &AffineWeylElement::identity(2), NodeSet(j)), 0);
        }
    }

    #[test]
    fn a1_identity_edge() {
        let a1 = rd("A1");
        let edges = spaltenstein_edges(&a1, &AffineWeylElement::identity(1), NodeSet::EMPTY, 1).unwrap();
        let out: Vec<&SpaltensteinEdge> = edges.iter().filter(|e| e.outgoing).collect();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].level, -1);
        let expect = AffineWeylElement::reflection(&a1, &AffineRoot::new(vec![1], -1)).unwrap();
        assert_eq!(out[0].target, expect);
        assert_eq!(out[0].root, vec![1]);
        let finite = spaltenstein_edges(&a1, &AffineWeylElement::identity(1), NodeSet::finite(1), 1).unwrap();
        assert!(finite.is_empty());
    }

    #[test]
    fn edges_are_symmetric_and_match_iwahori_curves() {
        for t in ["A1", "A2", "B2"] {
            let d = rd(t);
            let weyl = enumerate_weyl(&d).unwrap();
            let window: HashSet<AffineWeylElement> = window_elements(&weyl, d.rank(), 2).into_iter().collect();
            let mut from_edges = HashSet::new();
            let mut from_curves = HashSet::new();
            for x in &window {
                for e in spaltenstein_edges(&d, x, NodeSet::EMPTY, 1).unwrap() {
                    let back = spaltenstein_edges(&d, &e.target, NodeSet::EMPTY, 1).unwrap();
                    assert!(back.iter().any(|f| f.target == *x && f.root == e.root && f.outgoing != e.outgoing));
                    if window.contains(&e.target) {
                        from_edges.insert(if *x < e.target { (x.clone(), e.target.clone()) } else { (e.target.clone(), x.clone()) });
                    }
                }
                for y in iwahori_curves(&d, x).unwrap() {
                    if window.contains(&y) {
                        from_curves.insert(if *x < y { (x.clone(), y.clone()) } else { (y, x.clone()) });
                    }
                }
            }
            assert_eq!(from_edges, from_curves, "{t}");
        }
    }

    #[test]
    fn parahoric_edges_are_symmetric() {
        let a2 = rd("A2");
        let weyl = enumerate_weyl(&a2).unwrap();
        for j in [NodeSet::from_nodes(&[1]), NodeSet::from_nodes(&[0]), NodeSet::finite(2)] {
            for x in window_elements(&weyl, 2, 1) {
                let x = x.reduce_to_min_coset_rep(&a2, j);
                for e in spaltenstein_edges(&a2, &x, j, 1).unwrap() {
                    assert!(e.target.is_min_coset_rep(&a2, j));
                    let back = spaltenstein_edges(&a2, &e.target, j, 1).unwrap();
                    assert!(back.iter().any(|f| f.target == x && f.root == e.root));
                }
            }
        }
    }

    #[test]
    fn dilated_edges() {
        let a1 = rd("A1");
        let edges = spaltenstein_edges(&a1, &AffineWeylElement::identity(1), NodeSet::EMPTY, 3).unwrap();
        let expect = AffineWeylElement::reflection(&a1, &AffineRoot::new(vec![1], -3)).unwrap();
        assert!(edges.iter().any(|e| e.outgoing && e.target == expect));
        assert!(spaltenstein_edges(&a1, &AffineWeylElement::translation(vec![1]), NodeSet::EMPTY, 3).is_err());
    }
}
