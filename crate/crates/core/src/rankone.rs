//! The rank-one quiver algebra on the vertices `-K..=K` over `Q[h]/h^N`, its
//! center, and the congruence description of central elements.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};

/// Basis paths. `I(k)` goes from `k` to `k+1`, `J(k)` from `k+1` to `k`;
/// `X(k)` is the loop `J(k) I(k)` at `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    One(i64),
    X(i64),
    I(i64),
    J(i64),
}

impl Path {
    fn source(self) -> i64 {
        match self {
            Path::One(k) | Path::X(k) | Path::I(k) => k,
            Path::J(k) => k + 1,
        }
    }

    fn target(self) -> i64 {
        match self {
            Path::One(k) | Path::X(k) | Path::J(k) => k,
            Path::I(k) => k + 1,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::One(k) => write!(f, "1_{k}"),
            Path::X(k) => write!(f, "x_{k}"),
            Path::I(k) => write!(f, "i_{k}"),
            Path::J(k) => write!(f, "j_{k}"),
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `a ∘ b` (apply `b` first) as terms `(coefficient, power of h, path)`.
fn path_product(a: Path, b: Path) -> Vec<(i64, u32, Path)> {
    use Path::*;
    if b.target() != a.source() {
        return vec![];
    }
    match (a, b) {
        (One(_), p) | (p, One(_)) => vec![(1, 0, p)],
        (X(k), X(_)) => vec![(sign(k + 1), 1, X(k))],
        (I(k), X(_)) => vec![(sign(k + 1), 1, I(k))],
        (X(_), I(_)) => vec![],
        (X(k), J(_)) => vec![(sign(k + 1), 1, J(k))],
        (J(_), X(_)) => vec![],
        (I(k), J(_)) => vec![(1, 0, X(k + 1)), (sign(k + 1), 1, One(k + 1))],
        (J(k), I(_)) => vec![(1, 0, X(k))],
        (I(_), I(_)) | (J(_), J(_)) => vec![],
    }
}

/// Elements are coefficient vectors indexed by `basis * N + power of h`.
#[derive(Clone, Debug)]
pub struct QuiverAlgebra {
    k: i64,
    n: u32,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coeffs: Vec<BigRational>,
}

pub fn build_algebra(k: i64, n: u32) -> Result<QuiverAlgebra> {
    QuiverAlgebra::new(k, n)
}

impl QuiverAlgebra {
    pub fn new(k: i64, n: u32) -> Result<Self> {
        if k < 2 || n < 2 {
            return Err(Error::input(format!("need K >= 2 and N >= 2, got K = {k}, N = {n}")));
        }
        let mut basis = Vec::new();
        for v in -k..=k {
            basis.push(Path::One(v));
            basis.push(Path::X(v));
        }
        for v in -k..k {
            basis.push(Path::I(v));
            basis.push(Path::J(v));
        }
        basis.sort();
        let index = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(QuiverAlgebra { k, n, basis, index })
    }

    pub fn vertex_bound(&self) -> i64 {
        self.k
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Dimension over the rationals.
    pub fn dim(&self) -> usize {
        self.basis.len() * self.n as usize
    }

    fn slot(&self, p: Path, hdeg: u32) -> usize {
        self.index[&p] * self.n as usize + hdeg as usize
    }

    pub fn zero(&self) -> Element {
        Element { coeffs: vec![BigRational::zero(); self.dim()] }
    }

    /// `h^hdeg p`.
    pub fn element(&self, p: Path, hdeg: u32) -> Element {
        let mut e = self.zero();
        if hdeg < self.n {
            e.coeffs[self.slot(p, hdeg)] = BigRational::one();
        }
        e
    }

    pub fn identity(&self) -> Element {
        let mut e = self.zero();
        for v in -self.k..=self.k {
            e.coeffs[self.slot(Path::One(v), 0)] = BigRational::one();
        }
        e
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.n as usize;
        let mut out = self.zero();
        let nz = |e: &Element| -> Vec<(usize, usize)> {
            e.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| (i / n, i % n)).collect()
        };
        let (sa, sb) = (nz(a), nz(b));
        for &(pa, da) in &sa {
            for &(pb, db) in &sb {
                let c = &a.coeffs[pa * n + da] * &b.coeffs[pb * n + db];
                for (coef, dh, p) in path_product(self.basis[pa], self.basis[pb]) {
                    let d = da + db + dh as usize;
                    if d < n {
                        out.coeffs[self.slot(p, d as u32)] += &c * BigRational::from_integer(BigInt::from(coef));
                    }
                }
            }
        }
        out
    }

    /// Checks `(ab)c = a(bc)` on all triples of basis paths.
    pub fn check_associative(&self) -> bool {
        let els: Vec<Element> = self.basis.iter().map(|&p| self.element(p, 0)).collect();
        let prods: Vec<Vec<Element>> = els.iter().map(|a| els.iter().map(|b| self.mul(a, b)).collect()).collect();
        let is_zero = |e: &Element| e.coeffs.iter().all(Zero::is_zero);
        for (a, row) in els.iter().zip(&prods) {
            for (ab, bc_row) in row.iter().zip(&prods) {
                if is_zero(ab) && bc_row.iter().all(is_zero) {
                    continue;
                }
                for (c, bc) in els.iter().zip(bc_row) {
                    if self.mul(ab, c) != self.mul(a, bc) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Generators used for the center: the idempotents and the arrows.
    pub fn generators(&self) -> Vec<Path> {
        self.basis.iter().copied().filter(|p| !matches!(p, Path::X(_))).collect()
    }

    /// The `h`-polynomial coefficient of `p` in `z`.
    pub fn component(&self, z: &Element, p: Path) -> Vec<BigRational> {
        let n = self.n as usize;
        let i = self.index[&p] * n;
        z.coeffs[i..i + n].to_vec()
    }

    /// Element with `z_k = a_k 1_k + b_k x_k`, polynomials in `h` given low degree first.
    pub fn from_components(&self, a: &[(i64, Vec<i64>)], b: &[(i64, Vec<i64>)]) -> Element {
        let mut z = self.zero();
        for (p, comps) in [(true, a), (false, b)] {
            for (k, poly) in comps {
                let path = if p { Path::One(*k) } else { Path::X(*k) };
                for (d, c) in poly.iter().enumerate() {
                    if d < self.n as usize {
                        z.coeffs[self.slot(path, d as u32)] = BigRational::from_integer(BigInt::from(*c));
                    }
                }
            }
        }
        z
    }

    pub fn is_central(&self, z: &Element) -> bool {
        self.generators().into_iter().all(|g| {
            let g = self.element(g, 0);
            self.mul(z, &g) == self.mul(&g, z)
        })
    }

    /// Interior vertices, at distance at least 2 from the cut.
    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        -(self.k - 2)..=(self.k - 2)
    }
}

/// Basis of the center: solutions of `z g = g z` for every generator `g`.
pub fn center_space(alg: &QuiverAlgebra) -> Vec<Element> {
    let dim = alg.dim();
    let mut ech = Echelon::new();
    let units: Vec<Element> = (0..dim)
        .map(|i| {
            let mut e = alg.zero();
            e.coeffs[i] = BigRational::one();
            e
        })
        .collect();
    for g in alg.generators() {
        let ge = alg.element(g, 0);
        // column i of the commutator map is [e_i, g]
        let cols: Vec<Element> = units.iter().map(|u| alg.sub(&alg.mul(u, &ge), &alg.mul(&ge, u))).collect();
        for r in 0..dim {
            let row: SparseRow = cols
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.coeffs[r].is_zero())
                .map(|(i, c)| (i, c.coeffs[r].to_integer()))
                .collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    ech.nullspace(dim).into_iter().map(|coeffs| Element { coeffs }).collect()
}

/// `a_k = a_{k+1} mod h` on consecutive interior vertices.
pub fn satisfies_congruence(alg: &QuiverAlgebra, z: &Element) -> bool {
    let interior: Vec<i64> = alg.interior().collect();
    interior.windows(2).all(|w| {
        alg.component(z, Path::One(w[0]))[0] == alg.component(z, Path::One(w[1]))[0]
    })
}

/// `a_k = a_{k+1} + (-1)^k h b_k` on consecutive interior vertices.
pub fn satisfies_recursion(alg: &QuiverAlgebra, z: &Element) -> bool {
    let n = alg.truncation() as usize;
    let interior: Vec<i64> = alg.interior().collect();
    interior.windows(2).all(|w| {
        let k = w[0];
        let (a0, a1, b) = (alg.component(z, Path::One(k)), alg.component(z, Path::One(k + 1)), alg.component(z, Path::X(k)));
        (0..n).all(|d| {
            let hb = if d == 0 { BigRational::zero() } else { &b[d - 1] * BigRational::from_integer(BigInt::from(sign(k))) };
            a0[d] == &a1[d] + hb
        })
    })
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Checks the interior components of `z z'` against
/// `a a' 1_k + (a b' + a' b + (-1)^{k+1} h b b') x_k`.
pub fn verify_product_rule(alg: &QuiverAlgebra, z: &Element, z2: &Element) -> bool {
    let prod = alg.mul(z, z2);
    let n = alg.truncation() as usize;
    alg.interior().all(|k| {
        let (a, b) = (alg.component(z, Path::One(k)), alg.component(z, Path::X(k)));
        let (a2, b2) = (alg.component(z2, Path::One(k)), alg.component(z2, Path::X(k)));
        let aa = poly_mul(&a, &a2);
        let bb = poly_mul(&b, &b2);
        let mut bx: Vec<BigRational> = poly_mul(&a, &b2).iter().zip(poly_mul(&a2, &b)).map(|(x, y)| x + y).collect();
        for d in 1..n {
            bx[d] += &bb[d - 1] * BigRational::from_integer(BigInt::from(sign(k + 1)));
        }
        alg.component(&prod, Path::One(k)) == aa && alg.component(&prod, Path::X(k)) == bx
    })
}

/// Dimension of the center restricted to the interior components `(a_k, b_k)`.
pub fn interior_center_dim(alg: &QuiverAlgebra, center: &[Element]) -> usize {
    let mut ech = Echelon::new();
    for z in center {
        let mut row = Vec::new();
        let mut col = 0;
        let mut scale = BigInt::one();
        for c in center_projection(alg, z) {
            scale = num_integer::Integer::lcm(&scale, c.denom());
        }
        for c in center_projection(alg, z) {
            if !c.is_zero() {
                row.push((col, (c * BigRational::from_integer(scale.clone())).to_integer()));
            }
            col += 1;
        }
        ech.insert(row);
    }
    ech.rank()
}

fn center_projection(alg: &QuiverAlgebra, z: &Element) -> Vec<BigRational> {
    alg.interior()
        .flat_map(|k| {
            let mut v = alg.component(z, Path::One(k));
            v.extend(alg.component(z, Path::X(k)));
            v
        })
        .collect()
}

/// Number of tuples `(a_k, b_k)` over `F_p[h]/h^N` on `len` consecutive
/// vertices (starting at an even vertex when `start_even`) satisfying
/// `a_k = a_{k+1} + (-1)^k h b_k`, by dynamic programming over `a_k`.
pub fn congruence_solution_count(len: usize, n: u32, p: u64, start_even: bool) -> Result<u128> {
    if len == 0 {
        return Ok(1);
    }
    let size = (p as u128).checked_pow(n).ok_or_else(|| Error::resource("state space too large"))?;
    if size > 1 << 20 {
        return Err(Error::resource("state space too large"));
    }
    let size = size as usize;
    let digits = |mut x: usize| -> Vec<u64> {
        (0..n)
            .map(|_| {
                let d = (x as u64) % p;
                x /= p as usize;
                d
            })
            .collect()
    };
    let encode = |v: &[u64]| -> usize { v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) };
    let mut counts = vec![1u128; size];
    for step in 0..len - 1 {
        let even = (step % 2 == 0) == start_even;
        let mut next = vec![0u128; size];
        for (a, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let av = digits(a);
            for b in 0..size {
                let bv = digits(b);
                // a_{k+1} = a_k - (-1)^k h b_k
                let a1: Vec<u64> = (0..n as usize)
                    .map(|d| {
                        let hb = if d == 0 { 0 } else { bv[d - 1] };
                        if even {
                            (av[d] + p - hb) % p
                        } else {
                            (av[d] + hb) % p
                        }
                    })
                    .collect();
                next[encode(&a1)] += c;
            }
        }
        counts = next;
    }
    // the last vertex's b is unconstrained
    Ok(counts.iter().sum::<u128>() * size as u128)
}

/// Exact base-`p` logarithm of the congruence count on the interior vertices.
pub fn congruence_dimension(alg: &QuiverAlgebra, p: u64) -> Result<usize> {
    let interior: Vec<i64> = alg.interior().collect();
    let count = congruence_solution_count(interior.len(), alg.truncation(), p, interior[0].rem_euclid(2) == 0)?;
    let mut c = count;
    let mut d = 0;
    while c > 1 {
        if c % p as u128 != 0 {
            return Err(Error::invariant("solution count is not a power of p"));
        }
        c /= p as u128;
        d += 1;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let a = build_algebra(2, 2).unwrap();
        assert_eq!(a.dim(), 2 * (2 * 5 + 2 * 4));
        assert!(build_algebra(1, 2).is_err());
    }

    #[test]
    fn relations() {
        let a = build_algebra(3, 3).unwrap();
        let e = |p| a.element(p, 0);
        let one = a.identity();
        for p in a.basis() {
            assert_eq!(a.mul(&one, &e(*p)), e(*p));
            assert_eq!(a.mul(&e(*p), &one), e(*p));
        }
        // i_0 j_0 = x_1 - h 1_1
        let lhs = a.mul(&e(Path::I(0)), &e(Path::J(0)));
        let mut rhs = e(Path::X(1));
        rhs.coeffs[a.slot(Path::One(1), 1)] = -BigRational::one();
        assert_eq!(lhs, rhs);
        for k in -1..=1 {
            let ij = a.mul(&e(Path::I(k - 1)), &e(Path::J(k - 1)));
            let ji = a.mul(&e(Path::J(k)), &e(Path::I(k)));
            let mut expect = a.zero();
            expect.coeffs[a.slot(Path::One(k), 1)] = BigRational::from_integer(BigInt::from(sign(k)));
            assert_eq!(a.sub(&ij, &ji), expect);
            assert!(a.mul(&e(Path::I(k + 1)), &e(Path::I(k))).coeffs.iter().all(Zero::is_zero));
        }
        assert!(a.check_associative());
    }

    #[test]
    fn center_dimension() {
        for (k, n) in [(2, 2), (3, 2), (3, 3)] {
            let a = build_algebra(k, n).unwrap();
            let c = center_space(&a);
            assert_eq!(c.len(), (2 * k as usize + 2) * n as usize);
            for z in &c {
                assert!(a.is_central(z));
            }
        }
    }

    #[test]
    fn explicit_central_element() {
        let a = build_algebra(5, 2).unwrap();
        let av: Vec<(i64, Vec<i64>)> = (-5..=5).map(|k| (k, vec![0, -k])).collect();
        let bv: Vec<(i64, Vec<i64>)> = (-5..=5).map(|k| (k, vec![sign(k)])).collect();
        let z = a.from_components(&av, &bv);
        assert!(a.is_central(&z));
        assert!(satisfies_congruence(&a, &z));
        assert!(verify_product_rule(&a, &z, &z));
    }

    #[test]
    fn congruence_count_matches_center() {
        let a = build_algebra(5, 3).unwrap();
        let c = center_space(&a);
        assert_eq!(interior_center_dim(&a, &c), 24);
        assert_eq!(congruence_dimension(&a, 3).unwrap(), 24);
    }
}
