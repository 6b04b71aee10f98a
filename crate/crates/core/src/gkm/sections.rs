use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{monomials, TruncatedPoly};
use super::LabeledGraph;
use crate::affweyl::AffineWeylElement;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::rootdata::{RootDatum, WeylElement};

/// A polynomial per vertex of a graph, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub values: Vec<TruncatedPoly>,
}

impl Section {
    pub fn constant(graph: &LabeledGraph, order: u32, c: i64) -> Section {
        let p = TruncatedPoly::constant(graph.rank, order, BigRational::from_integer(BigInt::from(c)));
        Section { values: vec![p; graph.num_vertices()] }
    }

    pub fn add(&self, other: &Section) -> Section {
        Section { values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Section {
        Section { values: self.values.iter().map(|a| a.scale(c)).collect() }
    }
}

/// Whether every edge congruence `s(u) = s(v) mod alpha` holds.
pub fn is_section(graph: &LabeledGraph, s: &Section) -> bool {
    s.values.len() == graph.num_vertices()
        && graph.edges.iter().all(|e| s.values[e.from].sub(&s.values[e.to]).in_ideal(&e.root))
}

fn to_integer_row(entries: BTreeMap<usize, BigRational>) -> SparseRow {
    let lcm = entries.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    entries
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, (c * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect()
}

/// Congruence rows for the section space of `graph` truncated at `order`,
/// along a spanning forest of each label's edges.
fn congruence_rows(graph: &LabeledGraph, order: u32) -> (usize, Vec<SparseRow>) {
    let basis = monomials(graph.rank, order);
    let nm = basis.len();
    let labels: BTreeSet<&Vec<i64>> = graph.edges.iter().map(|e| &e.root).collect();
    let mut rows = Vec::new();
    for alpha in labels {
        let images: Vec<TruncatedPoly> = basis
            .iter()
            .map(|m| TruncatedPoly::monomial(graph.rank, order, m.clone(), BigRational::one()).restrict(alpha))
            .collect();
        let mut by_target: BTreeMap<Vec<u32>, Vec<(usize, BigRational)>> = BTreeMap::new();
        for (k, img) in images.iter().enumerate() {
            for (t, c) in img.terms() {
                by_target.entry(t.clone()).or_default().push((k, c.clone()));
            }
        }
        let mut parent: Vec<usize> = (0..graph.num_vertices()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in graph.edges.iter().filter(|e| &e.root == alpha) {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a == b {
                continue;
            }
            parent[a.max(b)] = a.min(b);
            for coeffs in by_target.values() {
                let mut entries = BTreeMap::new();
                for (k, c) in coeffs {
                    entries.insert(e.from * nm + k, c.clone());
                    entries.insert(e.to * nm + k, -c.clone());
                }
                rows.push(to_integer_row(entries));
            }
        }
    }
    (graph.num_vertices() * nm, rows)
}

/// Basis of the sections of `graph` with values truncated at `order`.
pub fn section_space(graph: &LabeledGraph, order: u32) -> Vec<Section> {
    let basis = monomials(graph.rank, order);
    let nm = basis.len();
    let (ncols, rows) = congruence_rows(graph, order);
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.nullspace(ncols)
        .into_iter()
        .map(|x| Section {
            values: (0..graph.num_vertices())
                .map(|v| {
                    let mut p = TruncatedPoly::zero(graph.rank, order);
                    for (k, m) in basis.iter().enumerate() {
                        let c = &x[v * nm + k];
                        if !c.is_zero() {
                            p = p.add(&TruncatedPoly::monomial(graph.rank, order, m.clone(), c.clone()));
                        }
                    }
                    p
                })
                .collect(),
        })
        .collect()
}

pub fn section_space_dim(graph: &LabeledGraph, order: u32) -> usize {
    let (ncols, rows) = congruence_rows(graph, order);
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ncols - ech.rank()
}

/// The substitution `x_i -> w(alpha_i)`; a ring automorphism with
/// `twist(wv) = twist(w) twist(v)`.
pub fn twist(w: &WeylElement, f: &TruncatedPoly) -> TruncatedPoly {
    let n = f.nvars();
    let images: Vec<TruncatedPoly> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            TruncatedPoly::linear(f.order(), &w.act_root(&e))
        })
        .collect();
    f.substitute(&images)
}

/// `(x s)(lambda) = twist(w, s(x⁻¹ • lambda))` where `w` is the finite part of
/// `x`; translations act trivially on the polynomials. The vertex set must be
/// stable under `x`.
pub fn left_action_apply(rd: &RootDatum, graph: &LabeledGraph, x: &AffineWeylElement, s: &Section) -> Result<Section> {
    left_action_transport(rd, graph, graph, x, s)
}

/// As [`left_action_apply`], from a section on `source` to one on `target`,
/// where `x⁻¹ • lambda` must be a vertex of `source` for every vertex `lambda`
/// of `target`.
pub fn left_action_transport(
    rd: &RootDatum,
    source: &LabeledGraph,
    target: &LabeledGraph,
    x: &AffineWeylElement,
    s: &Section,
) -> Result<Section> {
    if x.rank() != rd.rank() || s.values.len() != source.num_vertices() {
        return Err(Error::input("section and element do not match the graph"));
    }
    if !x.in_dilated_extended(source.ell) {
        return Err(Error::input(format!("{x} is not in the {}-dilated extended affine Weyl group", source.ell)));
    }
    let xi = x.inverse();
    let w = x.finite_part();
    let mut cache: HashMap<usize, TruncatedPoly> = HashMap::new();
    let values = target
        .vertices
        .iter()
        .map(|lam| {
            let pre = xi.act_dot(lam);
            let j = source
                .vertex_index(&pre)
                .ok_or_else(|| Error::input(format!("vertex {lam:?} has no preimage in the window")))?;
            Ok(cache.entry(j).or_insert_with(|| twist(w, &s.values[j])).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Section { values })
}

#[cfg(test)]
mod tests {
    use super::super::{build_gkm_graph_unchecked, EdgeKind, Window};
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn segment() -> LabeledGraph {
        LabeledGraph::from_parts(1, 1, vec![vec![0], vec![1]], vec![(0, 1, vec![1], EdgeKind::Gkm)])
    }

    #[test]
    fn small_section_spaces() {
        let g = segment();
        assert_eq!(section_space_dim(&g, 1), 1);
        assert_eq!(section_space_dim(&g, 2), 3);
        let free = LabeledGraph::from_parts(1, 1, vec![vec![0], vec![1], vec![2]], vec![]);
        assert_eq!(section_space_dim(&free, 1), 3);
        for s in section_space(&g, 3) {
            assert!(is_section(&g, &s));
        }
    }

    #[test]
    fn dimension_one_counts_components() {
        let a2 = rd("A2");
        let g = build_gkm_graph_unchecked(&a2, &[0, 0], 5, &Window::weyl_stable(&a2, 12)).unwrap();
        assert_eq!(section_space_dim(&g, 1), g.num_components());
    }

    #[test]
    fn twist_is_multiplicative() {
        let a2 = rd("A2");
        let f = TruncatedPoly::linear(3, &[1, 0]).mul(&TruncatedPoly::linear(3, &[2, -1]));
        let (s, t) = (a2.simple_reflection(0), a2.simple_reflection(1));
        assert_eq!(twist(&s.compose(&t), &f), twist(&s, &twist(&t, &f)));
        assert_eq!(twist(&s, &TruncatedPoly::linear(2, &[1, 0])), TruncatedPoly::linear(2, &[-1, 0]));
    }

    #[test]
    fn action_preserves_sections() {
        let a1 = rd("A1");
        let g = build_gkm_graph_unchecked(&a1, &[0], 3, &Window::weyl_stable(&a1, 20)).unwrap();
        let s = AffineWeylElement::simple(&a1, 1, 1);
        for sec in section_space(&g, 2) {
            let out = left_action_apply(&a1, &g, &s, &sec).unwrap();
            assert!(is_section(&g, &out));
            assert_eq!(left_action_apply(&a1, &g, &s, &out).unwrap(), sec);
        }
        let t = AffineWeylElement::translation(vec![3]);
        assert!(left_action_apply(&a1, &g, &t, &Section::constant(&g, 2, 1)).is_err());
        let bad = AffineWeylElement::translation(vec![1]);
        assert!(left_action_apply(&a1, &g, &bad, &Section::constant(&g, 2, 1)).is_err());
    }
}
