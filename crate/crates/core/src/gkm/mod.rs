//! GKM graphs of the components of affine Spaltenstein fibers, the congruence
//! graphs of the deformed block centers, and truncated section spaces.

mod poly;
mod sections;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

pub use poly::{monomials, TruncatedPoly};
pub use sections::{
    is_section, left_action_apply, left_action_transport, section_space, section_space_dim, twist, Section,
};

use crate::affweyl::{dot, AffineWeylElement};
use crate::blocks::BlockPoint;
use crate::error::{Error, Result};
use crate::rootdata::{enumerate_weyl, RootDatum};

/// The residue of `<alpha, mu + rho>` in `(0, ell]`.
pub fn n_alpha(mu: &[i64], alpha: &[i64], ell: i64) -> i64 {
    let n = (dot(alpha, mu) + alpha.iter().sum::<i64>()).rem_euclid(ell);
    if n == 0 {
        ell
    } else {
        n
    }
}

/// `mu - n_alpha(mu) coroot` unless `n_alpha(mu) = ell`, in which case `mu`.
pub fn alpha_down(rd: &RootDatum, mu: &[i64], alpha: &[i64], ell: i64) -> Vec<i64> {
    let n = n_alpha(mu, alpha, ell);
    if n == ell {
        return mu.to_vec();
    }
    let c = rd.coroot(alpha).expect("alpha is a root");
    mu.iter().zip(&c).map(|(m, k)| m - n * k).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Gkm,
    Center,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WindowShape {
    /// `|v_i - c_i| <= bound + guard` for every coordinate.
    Box,
    /// `|<alpha, v - c>| <= bound + guard` for every positive root; stable under
    /// the finite Weyl group when the center is zero.
    WeylStable,
}

/// Region of shifted coweights `v = lambda + rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub shape: WindowShape,
    pub bound: i64,
    pub guard: i64,
    pub center: Vec<i64>,
}

impl Window {
    /// Box window with the default guard `2 ell h`.
    pub fn boxed(rd: &RootDatum, ell: i64, bound: i64) -> Self {
        Window {
            shape: WindowShape::Box,
            bound,
            guard: 2 * ell * rd.coxeter_number() as i64,
            center: vec![0; rd.rank()],
        }
    }

    pub fn weyl_stable(rd: &RootDatum, radius: i64) -> Self {
        Window { shape: WindowShape::WeylStable, bound: radius, guard: 0, center: vec![0; rd.rank()] }
    }

    pub fn with_guard(mut self, guard: i64) -> Self {
        self.guard = guard;
        self
    }

    pub fn extent(&self) -> i64 {
        self.bound + self.guard
    }

    pub fn contains_shifted(&self, rd: &RootDatum, v: &[i64]) -> bool {
        let d: Vec<i64> = v.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        match self.shape {
            WindowShape::Box => d.iter().all(|c| c.abs() <= self.extent()),
            WindowShape::WeylStable => rd.positive_roots().iter().all(|a| dot(a, &d).abs() <= self.extent()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub root: Vec<i64>,
    pub kind: EdgeKind,
}

/// Coweights with edges labelled by positive roots.
#[derive(Clone, Debug, Serialize)]
pub struct LabeledGraph {
    pub rank: usize,
    pub ell: i64,
    pub vertices: Vec<Vec<i64>>,
    pub edges: Vec<GraphEdge>,
    pub window: Option<Window>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjacencyEntry {
    pub vertex: Vec<i64>,
    pub neighbors: Vec<(Vec<i64>, Vec<i64>)>,
}

impl LabeledGraph {
    /// Graph from explicit data; vertices are sorted and edges refer to the
    /// positions in the given vertex list.
    pub fn from_parts(rank: usize, ell: i64, vertices: Vec<Vec<i64>>, edges: Vec<(usize, usize, Vec<i64>, EdgeKind)>) -> Self {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut new_pos = vec![0; vertices.len()];
        for (k, &i) in order.iter().enumerate() {
            new_pos[i] = k;
        }
        let sorted: Vec<Vec<i64>> = order.iter().map(|&i| vertices[i].clone()).collect();
        let mut es: Vec<GraphEdge> = edges
            .into_iter()
            .map(|(f, t, root, kind)| GraphEdge { from: new_pos[f], to: new_pos[t], root, kind })
            .collect();
        es.sort();
        es.dedup();
        let index = sorted.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        LabeledGraph { rank, ell, vertices: sorted, edges: es, window: None, index }
    }

    pub fn vertex_index(&self, lambda: &[i64]) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Neighbors of a vertex along edges labelled `alpha`, in either direction.
    pub fn neighbors(&self, v: usize, alpha: &[i64]) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.root == alpha)
            .filter_map(|e| {
                if e.from == v {
                    Some(e.to)
                } else if e.to == v {
                    Some(e.from)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn adjacency(&self) -> Vec<AdjacencyEntry> {
        let mut adj: Vec<Vec<(Vec<i64>, Vec<i64>)>> = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.from].push((self.vertices[e.to].clone(), e.root.clone()));
            if e.kind == EdgeKind::Gkm {
                adj[e.to].push((self.vertices[e.from].clone(), e.root.clone()));
            }
        }
        self.vertices
            .iter()
            .zip(adj)
            .map(|(v, mut n)| {
                n.sort();
                n.dedup();
                AdjacencyEntry { vertex: v.clone(), neighbors: n }
            })
            .collect()
    }

    /// Connected components of the edges labelled `alpha` (all labels if `None`),
    /// as a component id per vertex.
    pub fn components(&self, alpha: Option<&[i64]>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            if alpha.is_none_or(|a| e.root == a) {
                uf.union(e.from, e.to);
            }
        }
        uf.labels()
    }

    pub fn num_components(&self) -> usize {
        let labels = self.components(None);
        labels.iter().collect::<BTreeSet<_>>().len()
    }

    /// Vertices whose `alpha`-string segment `lambda + t coroot`, `|t| <= 2 ell`,
    /// stays inside the window.
    pub fn core_vertices(&self, rd: &RootDatum, alpha: &[i64]) -> Result<Vec<usize>> {
        let window = self.window.as_ref().ok_or_else(|| Error::input("graph has no window"))?;
        let c = rd.coroot(alpha).ok_or_else(|| Error::input("label is not a root"))?;
        Ok((0..self.vertices.len())
            .filter(|&i| {
                (-2 * self.ell..=2 * self.ell).all(|t| {
                    let v: Vec<i64> = self.vertices[i].iter().zip(&c).map(|(l, k)| l + t * k + 1).collect();
                    window.contains_shifted(rd, &v)
                })
            })
            .collect())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

/// Coweights `lambda` with `lambda + rho` in `W(omega + rho) + ell Λ` and inside the window.
pub fn orbit_in_window(rd: &RootDatum, omega: &[i64], ell: i64, window: &Window) -> Result<Vec<Vec<i64>>> {
    let weyl = enumerate_weyl(rd)?;
    let v0: Vec<i64> = omega.iter().map(|c| c + 1).collect();
    let residues: BTreeSet<Vec<i64>> = weyl
        .iter()
        .map(|w| w.act_coweight(&v0).iter().map(|c| c.rem_euclid(ell)).collect())
        .collect();
    // simple roots are positive roots, so both shapes lie in the box of this extent
    let ext = window.extent();
    let r = rd.rank();
    let mut out = Vec::new();
    for res in residues {
        // v_i = res_i + ell k_i within [center_i - ext, center_i + ext]
        let ranges: Vec<(i64, i64)> = (0..r)
            .map(|i| {
                let lo = (window.center[i] - ext - res[i]).div_euclid(ell);
                let hi = (window.center[i] + ext - res[i]).div_euclid(ell);
                (lo, hi)
            })
            .collect();
        let mut k: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let v: Vec<i64> = (0..r).map(|i| res[i] + ell * k[i]).collect();
            if window.contains_shifted(rd, &v) {
                out.push(v.iter().map(|c| c - 1).collect());
            }
            let mut i = 0;
            while i < r {
                k[i] += 1;
                if k[i] <= ranges[i].1 {
                    break;
                }
                k[i] = ranges[i].0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_window(rd: &RootDatum, block: &BlockPoint, window: &Window) -> Result<()> {
    let min = block.ell * rd.coxeter_number() as i64;
    if window.bound < min {
        return Err(Error::input(format!("window bound {} is below ell * h = {min}", window.bound)));
    }
    if window.center.len() != rd.rank() {
        return Err(Error::input("window center has the wrong rank"));
    }
    Ok(())
}

/// GKM graph of the block `block` on a window: for every vertex and positive
/// root `alpha` with `<alpha, lambda + rho>` not divisible by `ell`, edges to
/// every `s_{alpha + ell m delta} • lambda` inside the window.
pub fn build_gkm_graph(rd: &RootDatum, block: &BlockPoint, window: &Window) -> Result<LabeledGraph> {
    check_window(rd, block, window)?;
    build_gkm_graph_unchecked(rd, &block.omega, block.ell, window)
}

pub(crate) fn build_gkm_graph_unchecked(
    rd: &RootDatum,
    omega: &[i64],
    ell: i64,
    window: &Window,
) -> Result<LabeledGraph> {
    let vertices = orbit_in_window(rd, omega, ell, window)?;
    let index: HashMap<Vec<i64>, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let reach = window.extent() + window.center.iter().map(|c| c.abs()).max().unwrap_or(0);
    let max_pairing = reach * rd.highest_root().iter().sum::<i64>();
    let mut edges = Vec::new();
    for (i, lam) in vertices.iter().enumerate() {
        for (a, c) in rd.positive_roots().iter().zip(rd.positive_coroots()) {
            let n = dot(a, lam) + a.iter().sum::<i64>();
            if n.rem_euclid(ell) == 0 {
                continue;
            }
            // s_{α+ℓmδ}•λ = λ - (n + ℓm) α̌ has pairing n - 2(n + ℓm), bounded by max_pairing
            let span = 2 * max_pairing / ell + 2;
            for m in -span..=span {
                let t = n + ell * m;
                let mu: Vec<i64> = lam.iter().zip(c).map(|(l, k)| l - t * k).collect();
                if let Some(&j) = index.get(&mu) {
                    if i < j {
                        edges.push((i, j, a.clone(), EdgeKind::Gkm));
                    }
                }
            }
        }
    }
    let mut g = LabeledGraph::from_parts(rd.rank(), ell, vertices, edges);
    g.window = Some(window.clone());
    Ok(g)
}

/// Congruence graph of the deformed block center: edges `(lambda, alpha↓lambda)`.
pub fn build_center_graph(rd: &RootDatum, block: &BlockPoint, window: &Window) -> Result<LabeledGraph> {
    check_window(rd, block, window)?;
    let vertices = orbit_in_window(rd, &block.omega, block.ell, window)?;
    let index: HashMap<Vec<i64>, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut edges = Vec::new();
    for (i, lam) in vertices.iter().enumerate() {
        for a in rd.positive_roots() {
            let d = alpha_down(rd, lam, a, block.ell);
            if d == *lam {
                continue;
            }
            if let Some(&j) = index.get(&d) {
                edges.push((i, j, a.clone(), EdgeKind::Center));
            }
        }
    }
    let mut g = LabeledGraph::from_parts(rd.rank(), block.ell, vertices, edges);
    g.window = Some(window.clone());
    Ok(g)
}

/// Whether the `alpha`-edge partitions of the two graphs agree on the core
/// vertices.
pub fn partitions_equivalent(rd: &RootDatum, gkm: &LabeledGraph, center: &LabeledGraph, alpha: &[i64]) -> Result<bool> {
    if gkm.vertices != center.vertices {
        return Err(Error::input("graphs have different vertex sets"));
    }
    let core = gkm.core_vertices(rd, alpha)?;
    if core.is_empty() {
        return Err(Error::input("no core vertices; enlarge the window"));
    }
    let a = gkm.components(Some(alpha));
    let b = center.components(Some(alpha));
    // same partition on the core iff the label pairs define a bijection
    let mut ab: HashMap<usize, usize> = HashMap::new();
    let mut ba: HashMap<usize, usize> = HashMap::new();
    for &v in &core {
        if *ab.entry(a[v]).or_insert(b[v]) != b[v] || *ba.entry(b[v]).or_insert(a[v]) != a[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `alpha↓` is `s_{alpha + ell m delta} •` for some `m` (checked, returning it).
pub fn alpha_down_reflection(rd: &RootDatum, mu: &[i64], alpha: &[i64], ell: i64) -> Option<AffineWeylElement> {
    let n = n_alpha(mu, alpha, ell);
    if n == ell {
        return None;
    }
    let full = dot(alpha, mu) + alpha.iter().sum::<i64>();
    // full - n = ell q, and s_{α+ℓmδ}•μ = μ - (full + ℓm)α̌ needs full + ℓm = n
    let m = -(full - n) / ell;
    AffineWeylElement::reflection(rd, &crate::affweyl::AffineRoot::new(alpha.to_vec(), ell * m)).ok()
}
