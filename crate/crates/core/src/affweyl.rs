//! Extended affine Weyl group elements `tau_mu w`, their actions on coweights
//! and affine roots, lengths, alcove values and minimal coset representatives.

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, WeylElement};

/// Default cap on the length passed to [`min_coset_reps`].
pub const MAX_COSET_LENGTH: usize = 200;
/// Default cap on the number of representatives produced by [`min_coset_reps`].
pub const MAX_COSET_REPS: usize = 2_000_000;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `root + level * delta`. The root is zero for imaginary roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub root: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(root: Vec<i64>, level: i64) -> Self {
        AffineRoot { root, level }
    }

    pub fn is_real(&self) -> bool {
        self.root.iter().any(|&c| c != 0)
    }

    /// Positive iff the level is positive, or zero with a positive finite part.
    /// Finite parts are roots, so a positive one has only nonnegative coordinates.
    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && self.is_real() && self.root.iter().all(|&c| c >= 0))
    }

    pub fn shift(&self, k: i64) -> AffineRoot {
        AffineRoot { root: self.root.clone(), level: self.level + k }
    }

    pub fn negate(&self) -> AffineRoot {
        AffineRoot { root: self.root.iter().map(|c| -c).collect(), level: -self.level }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:+}d", self.root, self.level)
    }
}

/// Set of nodes of the affine Dynkin diagram: bit 0 is the affine node,
/// bit `i` (for `i >= 1`) is the simple root `alpha_{i-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    /// All finite nodes, i.e. the finite Weyl group as a parabolic.
    pub fn finite(rank: usize) -> NodeSet {
        NodeSet(((1u32 << rank) - 1) << 1)
    }

    pub fn from_nodes(nodes: &[usize]) -> NodeSet {
        NodeSet(nodes.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, node: usize) -> bool {
        self.0 & (1 << node) != 0
    }

    pub fn insert(&mut self, node: usize) {
        self.0 |= 1 << node;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn nodes(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.nodes().map(|i| format!("s{i}")).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Simple affine root of node `i` for the `ell`-dilated group: `-theta + ell delta`
/// for node 0, `alpha_{i-1}` otherwise.
pub fn simple_affine_root(rd: &RootDatum, node: usize, ell: i64) -> AffineRoot {
    if node == 0 {
        AffineRoot::new(rd.highest_root().iter().map(|c| -c).collect(), ell)
    } else {
        AffineRoot::new(rd.simple_root(node - 1), 0)
    }
}

/// `x = tau_mu w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    w: WeylElement,
    mu: Vec<i64>,
}

impl AffineWeylElement {
    pub fn new(w: WeylElement, mu: Vec<i64>) -> Self {
        assert_eq!(w.rank(), mu.len(), "rank mismatch");
        AffineWeylElement { w, mu }
    }

    pub fn identity(rank: usize) -> Self {
        AffineWeylElement::new(WeylElement::identity(rank), vec![0; rank])
    }

    pub fn translation(mu: Vec<i64>) -> Self {
        AffineWeylElement::new(WeylElement::identity(mu.len()), mu)
    }

    pub fn finite(w: WeylElement) -> Self {
        let r = w.rank();
        AffineWeylElement::new(w, vec![0; r])
    }

    /// Reflection `s_{beta + m delta} = s_beta tau_{m coroot}` in a real affine root.
    pub fn reflection(rd: &RootDatum, beta: &AffineRoot) -> Result<Self> {
        let c = rd
            .coroot(&beta.root)
            .ok_or_else(|| Error::input(format!("{beta} is not a real affine root")))?;
        let w = WeylElement::reflection(&beta.root, &c);
        Ok(AffineWeylElement::new(w, c.iter().map(|x| -beta.level * x).collect()))
    }

    /// Simple reflection of a node of the `ell`-dilated affine diagram.
    pub fn simple(rd: &RootDatum, node: usize, ell: i64) -> Self {
        Self::reflection(rd, &simple_affine_root(rd, node, ell)).expect("simple affine roots are real")
    }

    /// Product of simple reflections `s_{i_1} ... s_{i_k}` of the `ell`-dilated diagram.
    pub fn from_word(rd: &RootDatum, word: &[usize], ell: i64) -> Self {
        word.iter().fold(Self::identity(rd.rank()), |acc, &i| acc.compose(&Self::simple(rd, i, ell)))
    }

    pub fn finite_part(&self) -> &WeylElement {
        &self.w
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.mu
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// `(tau_mu w)(tau_nu v) = tau_{mu + w nu} (w v)`.
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        let wnu = self.w.act_coweight(&other.mu);
        AffineWeylElement {
            w: self.w.compose(&other.w),
            mu: self.mu.iter().zip(&wnu).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> AffineWeylElement {
        let wi = self.w.inverse();
        let mu = wi.act_coweight(&self.mu).iter().map(|c| -c).collect();
        AffineWeylElement { w: wi, mu }
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.mu.iter().all(|&c| c == 0)
    }

    /// `w(lambda) + mu`.
    pub fn act_linear(&self, lambda: &[i64]) -> Vec<i64> {
        let wl = self.w.act_coweight(lambda);
        wl.iter().zip(&self.mu).map(|(a, b)| a + b).collect()
    }

    /// `x(lambda + rho) - rho` with `rho = (1, ..., 1)`.
    pub fn act_dot(&self, lambda: &[i64]) -> Vec<i64> {
        let shifted: Vec<i64> = lambda.iter().map(|c| c + 1).collect();
        self.act_linear(&shifted).iter().map(|c| c - 1).collect()
    }

    /// `w(beta) + (k - <w beta, mu>) delta`.
    pub fn act_affine_root(&self, beta: &AffineRoot) -> AffineRoot {
        let wb = self.w.act_root(&beta.root);
        let level = beta.level - dot(&wb, &self.mu);
        AffineRoot { root: wb, level }
    }

    /// Number of positive affine real roots sent to negative ones.
    pub fn length(&self, rd: &RootDatum) -> usize {
        let mut total = 0i64;
        for a in rd.positive_roots() {
            let wa = self.w.act_root(a);
            let p = dot(&wa, &self.mu);
            let wa_neg = !rd.is_positive_root(&wa);
            // beta = a (positive) and beta = -a (negative)
            total += (p + wa_neg as i64).max(0);
            total += (-p + (!wa_neg) as i64 - 1).max(0);
        }
        total as usize
    }

    /// `mu` lies in `ell` times the coweight lattice.
    pub fn in_dilated_extended(&self, ell: i64) -> bool {
        self.mu.iter().all(|c| c % ell == 0)
    }

    /// `mu` lies in `ell` times the coroot lattice.
    pub fn in_dilated_affine(&self, rd: &RootDatum, ell: i64) -> bool {
        if !self.in_dilated_extended(ell) {
            return false;
        }
        let scaled: Vec<i64> = self.mu.iter().map(|c| c / ell).collect();
        rd.in_coroot_lattice(&scaled)
    }

    /// Conjugate by the dilation `lambda -> ell lambda`: `(w, mu) -> (w, ell mu)`.
    pub fn dilate(&self, ell: i64) -> AffineWeylElement {
        AffineWeylElement { w: self.w.clone(), mu: self.mu.iter().map(|c| c * ell).collect() }
    }

    /// Inverse of [`Self::dilate`]; requires `mu` divisible by `ell`.
    pub fn undilate(&self, ell: i64) -> Option<AffineWeylElement> {
        self.in_dilated_extended(ell)
            .then(|| AffineWeylElement { w: self.w.clone(), mu: self.mu.iter().map(|c| c / ell).collect() })
    }

    /// Whether `x` is the shortest element of `x W_J` (level-one diagram).
    pub fn is_min_coset_rep(&self, rd: &RootDatum, j: NodeSet) -> bool {
        j.nodes().all(|i| self.act_affine_root(&simple_affine_root(rd, i, 1)).is_positive())
    }

    /// Shortest element of `x W_J`.
    pub fn reduce_to_min_coset_rep(&self, rd: &RootDatum, j: NodeSet) -> AffineWeylElement {
        let mut x = self.clone();
        'outer: loop {
            for i in j.nodes() {
                if !x.act_affine_root(&simple_affine_root(rd, i, 1)).is_positive() {
                    x = x.compose(&Self::simple(rd, i, 1));
                    continue 'outer;
                }
            }
            return x;
        }
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{:?}.{:?}", self.mu, self.w.coweight_matrix())
    }
}

pub fn act_linear(x: &AffineWeylElement, lambda: &[i64]) -> Vec<i64> {
    x.act_linear(lambda)
}

pub fn act_dot(x: &AffineWeylElement, lambda: &[i64]) -> Vec<i64> {
    x.act_dot(lambda)
}

pub fn act_affine_root(x: &AffineWeylElement, beta: &AffineRoot) -> AffineRoot {
    x.act_affine_root(beta)
}

/// Value of `x(beta)` at the point `rho/h + delta`, i.e. `beta` evaluated on the
/// barycentric point of the alcove `x^{-1}(A_1)`.
pub fn alcove_value(rd: &RootDatum, x: &AffineWeylElement, beta: &AffineRoot) -> Result<Rational64> {
    if !beta.is_real() {
        return Err(Error::input("alcove value of an imaginary root"));
    }
    let y = x.act_affine_root(beta);
    let h = rd.coxeter_number() as i64;
    let rho = rd.rho_check();
    Ok(Rational64::new(dot(&y.root, &rho) + y.level * h, h))
}

/// Minimal representatives of `W_af / W_J` grouped by length, for lengths up
/// to `max_length`.
pub fn min_coset_reps(rd: &RootDatum, j: NodeSet, max_length: usize) -> Result<Vec<Vec<AffineWeylElement>>> {
    if max_length > MAX_COSET_LENGTH {
        return Err(Error::resource(format!("max_length {max_length} exceeds {MAX_COSET_LENGTH}")));
    }
    let r = rd.rank();
    let gens: Vec<AffineWeylElement> = (0..=r).map(|i| AffineWeylElement::simple(rd, i, 1)).collect();
    let mut levels = vec![vec![AffineWeylElement::identity(r)]];
    let mut total = 1usize;
    for k in 0..max_length {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for x in &levels[k] {
            for s in &gens {
                let y = s.compose(x);
                if y.length(rd) == k + 1 && y.is_min_coset_rep(rd, j) && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        total += next.len();
        if total > MAX_COSET_REPS {
            return Err(Error::resource("too many coset representatives"));
        }
        next.sort();
        levels.push(next);
    }
    Ok(levels)
}
