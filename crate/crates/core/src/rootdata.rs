//! Irreducible finite root data with coweights in the fundamental-coweight
//! basis and roots in the simple-root basis, so that pairings are dot
//! products.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

/// Default cap on the size of enumerated Weyl groups.
pub const WEYL_BOUND: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Family plus rank, e.g. `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::input(format!("no irreducible type {family:?}{rank}")))
        }
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        use Family::*;
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            for family in [A, B, C, D, E, F, G] {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::input(format!("unknown Cartan type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::input(format!("bad rank in Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// Cartan matrix with `a_ij = <alpha_i, coroot_j>`.
pub fn cartan_matrix(t: CartanType) -> IntMatrix {
    let r = t.rank;
    let mut a = IntMatrix::identity(r);
    for i in 0..r {
        a.set(i, i, 2);
    }
    let link = |a: &mut IntMatrix, i: usize, j: usize, aij: i64, aji: i64| {
        a.set(i, j, aij);
        a.set(j, i, aji);
    };
    match t.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..r - 1 {
                link(&mut a, i, i + 1, -1, -1);
            }
        }
        Family::D => {
            for i in 0..r - 2 {
                link(&mut a, i, i + 1, -1, -1);
            }
            link(&mut a, r - 3, r - 1, -1, -1);
        }
        Family::E => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (1, 3)] {
                link(&mut a, i, j, -1, -1);
            }
            for k in 4..r - 1 {
                link(&mut a, k, k + 1, -1, -1);
            }
        }
    }
    match t.family {
        Family::B => link(&mut a, r - 2, r - 1, -2, -1),
        Family::C => link(&mut a, r - 2, r - 1, -1, -2),
        Family::F => link(&mut a, 1, 2, -2, -1),
        Family::G => link(&mut a, 0, 1, -1, -3),
        _ => {}
    }
    a
}

/// Element of the finite Weyl group, kept as its matrix on coweights
/// (`lambda -> coweight * lambda`) and on roots (`beta -> root * beta`).
/// The two are inverse transposes of each other.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElement {
    coweight: IntMatrix,
    root: IntMatrix,
}

impl WeylElement {
    pub fn identity(r: usize) -> Self {
        WeylElement { coweight: IntMatrix::identity(r), root: IntMatrix::identity(r) }
    }

    /// Reflection in the root `beta` with coroot `beta_check` (coweight coordinates).
    pub fn reflection(beta: &[i64], beta_check: &[i64]) -> Self {
        let r = beta.len();
        let mut m = IntMatrix::identity(r);
        let mut n = IntMatrix::identity(r);
        for j in 0..r {
            for k in 0..r {
                m.set(j, k, m.get(j, k) - beta_check[j] * beta[k]);
                n.set(j, k, n.get(j, k) - beta[j] * beta_check[k]);
            }
        }
        WeylElement { coweight: m, root: n }
    }

    pub fn rank(&self) -> usize {
        self.coweight.rows()
    }

    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.coweight
    }

    pub fn root_matrix(&self) -> &IntMatrix {
        &self.root
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { coweight: self.coweight.mul(&other.coweight), root: self.root.mul(&other.root) }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement { coweight: self.root.transpose(), root: self.coweight.transpose() }
    }

    pub fn act_coweight(&self, lambda: &[i64]) -> Vec<i64> {
        self.coweight.apply(lambda)
    }

    pub fn act_root(&self, beta: &[i64]) -> Vec<i64> {
        self.root.apply(beta)
    }

    /// Determinant on the coweight lattice, i.e. the sign character.
    pub fn sign(&self) -> i64 {
        self.coweight.det()
    }

    pub fn is_identity(&self) -> bool {
        self.coweight == IntMatrix::identity(self.rank())
    }
}

/// Connected component of a root subsystem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsystemComponent {
    pub cartan_type: CartanType,
    pub exponents: Vec<u64>,
    /// Simple roots of the component, in ambient simple-root coordinates.
    pub simple_roots: Vec<Vec<i64>>,
}

/// Decomposition of a closed root subsystem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsystemInfo {
    pub components: Vec<SubsystemComponent>,
    /// Exponents of all components together, sorted.
    pub exponents: Vec<u64>,
    pub group_order: u64,
}

impl SubsystemInfo {
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.cartan_type.to_string()).collect();
        parts.join("x")
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: IntMatrix,
    coroot_matrix: IntMatrix,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    coxeter_number: u64,
    exponents: Vec<u64>,
    weyl_order: u64,
    pi1_order: u64,
    pi1_invariants: Vec<u64>,
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Conjugate partition of the root height distribution.
fn exponents_of_heights(roots: &[Vec<i64>]) -> Vec<u64> {
    let max = roots.iter().map(|a| height(a)).max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max + 1];
    for a in roots {
        counts[height(a) as usize] += 1;
    }
    let first = counts.get(1).copied().unwrap_or(0);
    let mut ex: Vec<u64> = (1..=first)
        .map(|j| counts[1..].iter().filter(|&&c| c >= j).count() as u64)
        .collect();
    ex.sort_unstable();
    ex
}

pub fn build_root_datum(cartan_type: CartanType) -> Result<RootDatum> {
    RootDatum::new(cartan_type)
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let t = CartanType::new(cartan_type.family, cartan_type.rank)?;
        let r = t.rank;
        let cartan = cartan_matrix(t);
        let coroot_matrix = cartan.transpose();

        let mut positive_roots: Vec<Vec<i64>> = Vec::new();
        let mut positive_coroots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut a = vec![0; r];
            a[i] = 1;
            seen.insert(a.clone());
            queue.push_back((a, coroot_matrix.row(i).to_vec()));
        }
        while let Some((a, ac)) = queue.pop_front() {
            for i in 0..r {
                let p: i64 = (0..r).map(|k| a[k] * cartan.get(k, i)).sum();
                let q = ac[i];
                let mut b = a.clone();
                b[i] -= p;
                if b.iter().any(|&c| c < 0) || seen.contains(&b) {
                    continue;
                }
                let bc: Vec<i64> = (0..r).map(|j| ac[j] - q * coroot_matrix.get(i, j)).collect();
                seen.insert(b.clone());
                queue.push_back((b, bc));
            }
            positive_roots.push(a);
            positive_coroots.push(ac);
        }
        let mut order: Vec<usize> = (0..positive_roots.len()).collect();
        order.sort_by(|&x, &y| {
            let (a, b) = (&positive_roots[x], &positive_roots[y]);
            (height(a), b).cmp(&(height(b), a))
        });
        let positive_roots: Vec<Vec<i64>> = order.iter().map(|&i| positive_roots[i].clone()).collect();
        let positive_coroots: Vec<Vec<i64>> = order.iter().map(|&i| positive_coroots[i].clone()).collect();
        let index = positive_roots.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();

        let n = positive_roots.len() as u64;
        if !(2 * n).is_multiple_of(r as u64) {
            return Err(Error::invariant("2|Phi+|/r is not an integer"));
        }
        let coxeter_number = 2 * n / r as u64;
        let theta_height = positive_roots.iter().map(|a| height(a)).max().unwrap_or(0);
        if coxeter_number != theta_height as u64 + 1 {
            return Err(Error::invariant("Coxeter number disagrees with height of the highest root"));
        }
        let exponents = exponents_of_heights(&positive_roots);
        if exponents.len() != r || exponents.iter().sum::<u64>() != n {
            return Err(Error::invariant("exponent count or sum is wrong"));
        }
        let weyl_order = exponents.iter().map(|e| e + 1).product();
        let pi1_order = cartan.det().unsigned_abs();
        let snf = smith_normal_form(&coroot_matrix);
        let pi1_invariants: Vec<u64> =
            snf.diagonal.iter().map(|d| d.unsigned_abs()).filter(|&d| d != 1).collect();
        if pi1_invariants.iter().product::<u64>() != pi1_order {
            return Err(Error::invariant("Smith invariants do not multiply to det(Cartan)"));
        }

        Ok(RootDatum {
            cartan_type: t,
            cartan,
            coroot_matrix,
            positive_roots,
            positive_coroots,
            index,
            coxeter_number,
            exponents,
            weyl_order,
            pi1_order,
            pi1_invariants,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Row `i` is the simple coroot `i` in fundamental-coweight coordinates.
    pub fn coroot_matrix(&self) -> &IntMatrix {
        &self.coroot_matrix
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coroots matching `positive_roots` entry by entry.
    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of a positive root.
    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    /// Whether `beta` is a (positive or negative) root.
    pub fn is_root(&self, beta: &[i64]) -> bool {
        if self.index.contains_key(beta) {
            return true;
        }
        let neg: Vec<i64> = beta.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    /// Coroot of any root, positive or negative.
    pub fn coroot(&self, beta: &[i64]) -> Option<Vec<i64>> {
        if let Some(i) = self.root_index(beta) {
            return Some(self.positive_coroots[i].clone());
        }
        let neg: Vec<i64> = beta.iter().map(|c| -c).collect();
        self.root_index(&neg).map(|i| self.positive_coroots[i].iter().map(|c| -c).collect())
    }

    /// All roots: positive ones followed by their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|a| a.iter().map(|c| -c).collect::<Vec<_>>()));
        out
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut a = vec![0; self.rank()];
        a[i] = 1;
        a
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn rho_check(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_number
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn pi1_order(&self) -> u64 {
        self.pi1_order
    }

    /// Nontrivial invariant factors of the coweight lattice modulo the coroot lattice.
    pub fn pi1_invariants(&self) -> &[u64] {
        &self.pi1_invariants
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement::reflection(&self.simple_root(i), self.coroot_matrix.row(i))
    }

    /// Reflection in any root.
    pub fn reflection(&self, beta: &[i64]) -> Result<WeylElement> {
        let c = self
            .coroot(beta)
            .ok_or_else(|| Error::input(format!("{beta:?} is not a root")))?;
        Ok(WeylElement::reflection(beta, &c))
    }

    /// Coxeter element `s_1 s_2 ... s_r`.
    pub fn coxeter_element(&self) -> WeylElement {
        (0..self.rank()).fold(WeylElement::identity(self.rank()), |acc, i| {
            acc.compose(&self.simple_reflection(i))
        })
    }

    pub fn is_positive_root(&self, beta: &[i64]) -> bool {
        self.index.contains_key(beta)
    }

    /// Whether a coweight lies in the coroot lattice.
    pub fn in_coroot_lattice(&self, mu: &[i64]) -> bool {
        // mu = A c with A the Cartan matrix; solvable over Z iff the Smith
        // diagonal divides the transformed right-hand side
        let snf = smith_normal_form(&self.cartan);
        let rhs = snf.left.apply(mu);
        rhs.iter().zip(&snf.diagonal).all(|(v, d)| if *d == 0 { *v == 0 } else { v % d == 0 })
    }

    /// Exponents recomputed from the height distribution of the positive roots.
    pub fn exponents_from_heights(&self) -> Vec<u64> {
        exponents_of_heights(&self.positive_roots)
    }
}

pub fn exponents_from_heights(rd: &RootDatum) -> Vec<u64> {
    rd.exponents_from_heights()
}

/// Closure of the generators under composition, failing once `bound`
/// elements have been found.
pub fn generate_group(rank: usize, generators: &[WeylElement], bound: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(rank);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if seen.contains(&h) {
                continue;
            }
            if seen.len() >= bound {
                return Err(Error::resource(format!("group has more than {bound} elements")));
            }
            seen.insert(h.clone());
            out.push(h.clone());
            queue.push_back(h);
        }
    }
    out.sort();
    Ok(out)
}

pub fn enumerate_weyl(rd: &RootDatum) -> Result<Vec<WeylElement>> {
    enumerate_weyl_bounded(rd, WEYL_BOUND)
}

pub fn enumerate_weyl_bounded(rd: &RootDatum, bound: usize) -> Result<Vec<WeylElement>> {
    if rd.weyl_order() > bound as u64 {
        return Err(Error::resource(format!(
            "|W| = {} exceeds the bound {bound}",
            rd.weyl_order()
        )));
    }
    let gens: Vec<WeylElement> = (0..rd.rank()).map(|i| rd.simple_reflection(i)).collect();
    generate_group(rd.rank(), &gens, bound)
}

/// Group generated by the reflections in the given roots.
pub fn reflection_subgroup(rd: &RootDatum, roots: &[Vec<i64>]) -> Result<Vec<WeylElement>> {
    let gens = roots.iter().map(|b| rd.reflection(b)).collect::<Result<Vec<_>>>()?;
    generate_group(rd.rank(), &gens, WEYL_BOUND)
}

fn classify_component(n_pos: usize, cartan: &[Vec<i64>]) -> Result<CartanType> {
    let r = cartan.len();
    let multi = cartan.iter().flatten().any(|&a| a <= -2);
    let triple = cartan.iter().flatten().any(|&a| a == -3);
    let family = if triple {
        Family::G
    } else if !multi {
        if n_pos == r * (r + 1) / 2 {
            Family::A
        } else if r >= 4 && n_pos == r * (r - 1) {
            Family::D
        } else if (r, n_pos) == (6, 36) || (r, n_pos) == (7, 63) || (r, n_pos) == (8, 120) {
            Family::E
        } else {
            return Err(Error::invariant("unrecognized simply laced component"));
        }
    } else if r == 4 && n_pos == 24 {
        Family::F
    } else if n_pos == r * r {
        // cartan[i][j] = -2 means alpha_i is longer than alpha_j
        let mut long = vec![false; r];
        let mut known = vec![false; r];
        for i in 0..r {
            for j in 0..r {
                if cartan[i][j] == -2 {
                    long[i] = true;
                    known[i] = true;
                    known[j] = true;
                }
            }
        }
        // propagate along single bonds
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..r {
                for j in 0..r {
                    if cartan[i][j] == -1 && cartan[j][i] == -1 && known[i] && !known[j] {
                        long[j] = long[i];
                        known[j] = true;
                        changed = true;
                    }
                }
            }
        }
        let short = long.iter().filter(|&&l| !l).count();
        if r == 2 || short == 1 {
            Family::B
        } else {
            Family::C
        }
    } else {
        return Err(Error::invariant("unrecognized doubly laced component"));
    };
    CartanType::new(family, r)
}

/// Decomposes the subsystem spanned by a closed set of positive roots.
pub fn classify_subsystem(rd: &RootDatum, roots: &[Vec<i64>]) -> Result<SubsystemInfo> {
    let set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    for b in &set {
        if !rd.is_positive_root(b) {
            return Err(Error::input(format!("{b:?} is not a positive root")));
        }
    }
    for a in &set {
        let s = rd.reflection(a)?;
        for b in &set {
            let c = s.act_root(b);
            let c_pos = if rd.is_positive_root(&c) { c } else { c.iter().map(|x| -x).collect() };
            if !set.contains(&c_pos) {
                return Err(Error::input("root set is not closed under its reflections"));
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = set.iter().cloned().collect();
    pos.sort();
    // simple roots of the subsystem are its indecomposable positive roots
    let simple: Vec<Vec<i64>> = pos
        .iter()
        .filter(|g| {
            !pos.iter().any(|a| {
                let d: Vec<i64> = g.iter().zip(a).map(|(x, y)| x - y).collect();
                set.contains(&d)
            })
        })
        .cloned()
        .collect();
    let pair = |a: &[i64], b: &[i64]| -> i64 {
        let bc = rd.coroot(b).expect("root");
        a.iter().zip(&bc).map(|(x, y)| x * y).sum()
    };
    let k = simple.len();
    let mut comp = vec![usize::MAX; k];
    let mut ncomp = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if comp[j] == usize::MAX && pair(&simple[i], &simple[j]) != 0 {
                    comp[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut components = Vec::new();
    for c in 0..ncomp {
        let members: Vec<Vec<i64>> = (0..k).filter(|&i| comp[i] == c).map(|i| simple[i].clone()).collect();
        let cartan: Vec<Vec<i64>> = members
            .iter()
            .map(|a| members.iter().map(|b| pair(a, b)).collect())
            .collect();
        // heights relative to the component's simple roots, via the ambient basis
        let comp_roots: Vec<Vec<i64>> = pos
            .iter()
            .filter(|g| members.iter().any(|m| pair(g, m) != 0 || pair(m, g) != 0))
            .cloned()
            .collect();
        let heights = component_heights(&members, &comp_roots)?;
        let mut counts = vec![0usize; heights.iter().copied().max().unwrap_or(0) + 1];
        for h in &heights {
            counts[*h] += 1;
        }
        let exps: Vec<u64> = (1..=counts[1]).map(|j| counts[1..].iter().filter(|&&n| n >= j).count() as u64).collect();
        let t = classify_component(comp_roots.len(), &cartan)?;
        let mut exps = exps;
        exps.sort_unstable();
        components.push(SubsystemComponent { cartan_type: t, exponents: exps, simple_roots: members });
    }
    components.sort_by(|a, b| b.cartan_type.rank.cmp(&a.cartan_type.rank).then(a.cartan_type.cmp(&b.cartan_type)));
    let mut exponents: Vec<u64> = components.iter().flat_map(|c| c.exponents.iter().copied()).collect();
    exponents.sort_unstable();
    let group_order = exponents.iter().map(|e| e + 1).product();
    if components.iter().map(|c| c.simple_roots.len()).sum::<usize>() != k {
        return Err(Error::invariant("component bookkeeping"));
    }
    let total: usize = components
        .iter()
        .map(|c| c.exponents.iter().sum::<u64>() as usize)
        .sum();
    if total != pos.len() {
        return Err(Error::invariant("subsystem exponents do not sum to its number of positive roots"));
    }
    Ok(SubsystemInfo { components, exponents, group_order })
}

/// Heights of roots in the span of `simple`, by solving in the ambient basis.
fn component_heights(simple: &[Vec<i64>], roots: &[Vec<i64>]) -> Result<Vec<usize>> {
    let k = simple.len();
    let r = simple.first().map_or(0, Vec::len);
    // pick k coordinates on which the simple roots are independent, then solve exactly
    let mut out = Vec::with_capacity(roots.len());
    for g in roots {
        let mut rows: Vec<Vec<num_rational::BigRational>> = (0..r)
            .map(|j| {
                let mut row: Vec<num_rational::BigRational> =
                    simple.iter().map(|s| num_rational::BigRational::from_integer(s[j].into())).collect();
                row.push(num_rational::BigRational::from_integer(g[j].into()));
                row
            })
            .collect();
        let sol = solve_dense(&mut rows, k).ok_or_else(|| Error::invariant("root outside span of component"))?;
        let mut h = num_rational::BigRational::from_integer(0.into());
        for c in sol {
            if !c.is_integer() || c < num_rational::BigRational::from_integer(0.into()) {
                return Err(Error::invariant("root is not a nonnegative combination of component simple roots"));
            }
            h += c;
        }
        let h: i64 = num_traits::ToPrimitive::to_i64(&h.to_integer()).unwrap_or(0);
        out.push(h as usize);
    }
    Ok(out)
}

/// Solves an augmented system with `k` unknowns, returning the unique solution.
fn solve_dense(rows: &mut [Vec<num_rational::BigRational>], k: usize) -> Option<Vec<num_rational::BigRational>> {
    use num_traits::Zero;
    let n = rows.len();
    let mut piv_row = 0;
    let mut piv_cols = Vec::new();
    for c in 0..k {
        let Some(p) = (piv_row..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(piv_row, p);
        let lead = rows[piv_row][c].clone();
        for x in rows[piv_row].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..n {
            if i != piv_row && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=k {
                    let v = &rows[piv_row][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        piv_cols.push(c);
        piv_row += 1;
    }
    if piv_cols.len() != k || rows[piv_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k].clone()).collect())
}

/// Integer polynomial helpers for the Coxeter eigenvalue oracle; coefficient
/// vectors are little-endian.
mod intpoly {
    /// Exact division by a monic polynomial; `None` if there is a remainder.
    pub fn div_exact(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
        let mut rem = a.to_vec();
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return None;
        }
        let mut q = vec![0; rem.len() - db];
        for i in (0..q.len()).rev() {
            let c = rem[i + db];
            q[i] = c;
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= c * y;
            }
        }
        rem.iter().all(|&x| x == 0).then_some(q)
    }

    pub fn cyclotomic(m: usize) -> Vec<i128> {
        let mut p = vec![0i128; m + 1];
        p[0] = -1;
        p[m] = 1;
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic divides x^m - 1");
            }
        }
        p
    }

    /// Characteristic polynomial `det(x - M)` by Faddeev-LeVerrier.
    pub fn charpoly(m: &[Vec<i64>]) -> Vec<i128> {
        let n = m.len();
        let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let matmul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
                .collect()
        };
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut mk: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        for k in 1..=n {
            let am = matmul(&a, &mk);
            let tr: i128 = (0..n).map(|i| am[i][i]).sum();
            c[n - k] = -tr / k as i128;
            mk = am;
            for i in 0..n {
                mk[i][i] += c[n - k];
            }
        }
        c
    }
}

/// Exponents read off from the eigenvalues `exp(2 pi i e / h)` of a Coxeter
/// element, by factoring its characteristic polynomial into cyclotomics.
pub fn exponents_from_coxeter_element(rd: &RootDatum) -> Result<Vec<u64>> {
    let h = rd.coxeter_number() as usize;
    let c = rd.coxeter_element();
    let mut p = intpoly::charpoly(&c.coweight_matrix().to_rows());
    let mut exps = Vec::new();
    for m in (1..=h).filter(|m| h.is_multiple_of(*m)) {
        let phi = intpoly::cyclotomic(m);
        while let Some(q) = intpoly::div_exact(&p, &phi) {
            p = q;
            for e in 0..h {
                if h / num_integer::gcd(e, h) == m {
                    exps.push(e as u64);
                }
            }
        }
    }
    if p.len() != 1 {
        return Err(Error::invariant("Coxeter characteristic polynomial has a non-cyclotomic factor"));
    }
    exps.sort_unstable();
    if exps.contains(&0) {
        return Err(Error::invariant("Coxeter element has eigenvalue 1"));
    }
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_invariants() {
        let a1 = rd("A1");
        assert_eq!((a1.coxeter_number(), a1.exponents().to_vec(), a1.weyl_order(), a1.pi1_order()), (2, vec![1], 2, 2));
        let a2 = rd("A2");
        assert_eq!((a2.coxeter_number(), a2.exponents().to_vec(), a2.weyl_order(), a2.pi1_order()), (3, vec![1, 2], 6, 3));
        let g2 = rd("G2");
        assert_eq!((g2.coxeter_number(), g2.exponents().to_vec(), g2.weyl_order(), g2.pi1_order()), (6, vec![1, 5], 12, 1));
        assert_eq!(g2.highest_root(), &[3, 2]);
    }

    #[test]
    fn known_tables() {
        let cases: &[(&str, u64, &[u64], u64, u64)] = &[
            ("B3", 6, &[1, 3, 5], 48, 2),
            ("C3", 6, &[1, 3, 5], 48, 2),
            ("D4", 6, &[1, 3, 3, 5], 192, 4),
            ("F4", 12, &[1, 5, 7, 11], 1152, 1),
            ("E6", 12, &[1, 4, 5, 7, 8, 11], 51840, 3),
            ("E7", 18, &[1, 5, 7, 9, 11, 13, 17], 2903040, 2),
            ("E8", 30, &[1, 7, 11, 13, 17, 19, 23, 29], 696729600, 1),
        ];
        for &(t, h, ex, w, e) in cases {
            let d = rd(t);
            assert_eq!(d.coxeter_number(), h, "{t}");
            assert_eq!(d.exponents(), ex, "{t}");
            assert_eq!(d.weyl_order(), w, "{t}");
            assert_eq!(d.pi1_order(), e, "{t}");
        }
        assert_eq!(rd("D4").pi1_invariants(), &[2, 2]);
        assert_eq!(rd("D5").pi1_invariants(), &[4]);
        let a2 = rd("A2");
        assert!(a2.in_coroot_lattice(&[2, -1]));
        assert!(a2.in_coroot_lattice(&[3, 0]));
        assert!(!a2.in_coroot_lattice(&[1, 0]));
        assert!(rd("G2").in_coroot_lattice(&[1, 0]));
    }

    #[test]
    fn pairings_and_coroots() {
        for t in CartanType::all_up_to_rank(4) {
            let d = RootDatum::new(t).unwrap();
            let r = d.rank();
            for i in 0..r {
                for j in 0..r {
                    let p: i64 = d.simple_root(j).iter().zip(d.coroot_matrix().row(i)).map(|(a, b)| a * b).sum();
                    assert_eq!(p, d.cartan_matrix().get(j, i));
                }
            }
            for (a, ac) in d.positive_roots().iter().zip(d.positive_coroots()) {
                let p: i64 = a.iter().zip(ac).map(|(x, y)| x * y).sum();
                assert_eq!(p, 2, "{t}");
            }
        }
    }

    #[test]
    fn weyl_enumeration() {
        assert_eq!(enumerate_weyl(&rd("A1")).unwrap().len(), 2);
        assert_eq!(enumerate_weyl(&rd("B2")).unwrap().len(), 8);
        let a2 = rd("A2");
        let w = enumerate_weyl(&a2).unwrap();
        assert_eq!(w.len(), 6);
        let c = a2.simple_reflection(0).compose(&a2.simple_reflection(1));
        assert_eq!(c.act_coweight(&[3, 5]), vec![-8, 3]);
        assert!(w.contains(&c));
        assert!(matches!(enumerate_weyl_bounded(&rd("B3"), 10), Err(Error::ResourceExceeded(_))));
    }

    #[test]
    fn weyl_preserves_roots_and_pairing() {
        for t in ["A3", "B3", "C3", "G2"] {
            let d = rd(t);
            let roots: HashSet<Vec<i64>> = d.all_roots().into_iter().collect();
            for w in enumerate_weyl(&d).unwrap() {
                for a in &roots {
                    let wa = w.act_root(a);
                    assert!(roots.contains(&wa));
                    let lam = [2, -1, 3][..d.rank()].to_vec();
                    let wl = w.act_coweight(&lam);
                    let p1: i64 = wa.iter().zip(&wl).map(|(x, y)| x * y).sum();
                    let p0: i64 = a.iter().zip(&lam).map(|(x, y)| x * y).sum();
                    assert_eq!(p0, p1);
                }
            }
        }
    }

    #[test]
    fn exponent_oracles_agree() {
        for t in CartanType::all_up_to_rank(4) {
            let d = RootDatum::new(t).unwrap();
            assert_eq!(d.exponents_from_heights(), exponents_from_coxeter_element(&d).unwrap(), "{t}");
        }
        assert_eq!(rd("A3").exponents_from_heights(), vec![1, 2, 3]);
    }

    #[test]
    fn subsystems() {
        let a2 = rd("A2");
        let s = classify_subsystem(&a2, &[vec![1, 0]]).unwrap();
        assert_eq!((s.label(), s.exponents.clone(), s.group_order), ("A1".into(), vec![1], 2));
        let s = classify_subsystem(&a2, a2.positive_roots()).unwrap();
        assert_eq!((s.label(), s.group_order), ("A2".into(), 6));
        let b2 = rd("B2");
        let long = vec![vec![1, 0], vec![1, 2]];
        let s = classify_subsystem(&b2, &long).unwrap();
        assert_eq!((s.label(), s.group_order), ("A1xA1".into(), 4));
        assert!(classify_subsystem(&a2, &[vec![1, 0], vec![0, 1]]).is_err());
        let g2 = rd("G2");
        assert_eq!(classify_subsystem(&g2, g2.positive_roots()).unwrap().label(), "G2");
        let b3 = rd("B3");
        assert_eq!(classify_subsystem(&b3, b3.positive_roots()).unwrap().label(), "B3");
        let c3 = rd("C3");
        assert_eq!(classify_subsystem(&c3, c3.positive_roots()).unwrap().label(), "C3");
    }

    #[test]
    fn parses_types() {
        assert_eq!("g2".parse::<CartanType>().unwrap().to_string(), "G2");
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X1".parse::<CartanType>().is_err());
    }
}
