//! Closed-form dimension counts and the brute-force oracles they are checked
//! against: fixed-point enumeration, Ehrhart fitting and the Bott series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::affweyl::{min_coset_reps, NodeSet};
use crate::blocks::{enumerate_xi_sc, xi_orbits};
use crate::error::{Error, Result};
use crate::rootdata::{classify_subsystem, reflection_subgroup, CartanType, Family, RootDatum, SubsystemInfo};

/// Largest `q^r` accepted by [`sign_multiplicity`].
pub const FIXED_POINT_BOUND: u64 = 10_000_000;

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::resource(format!("{x} does not fit in 64 bits")))
}

fn exact(num: BigInt, den: BigInt, what: &str) -> Result<i64> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::invariant(format!("{what}: {num}/{den} is not an integer")));
    }
    to_i64(&q)
}

/// `prod_i ((h+1) ell - h + e_i) / |W|`.
pub fn theorem_c_dim(rd: &RootDatum, ell: i64) -> Result<i64> {
    let h = rd.coxeter_number() as i64;
    let n = (h + 1) * ell - h;
    let num = rd.exponents().iter().fold(BigInt::one(), |acc, &e| acc * BigInt::from(n + e as i64));
    exact(num, BigInt::from(rd.weyl_order()), "closed form")
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `C((h+1) ell, h) / ((h+1) ell)` in type `A_r`, checked against
/// [`theorem_c_dim`].
pub fn type_a_binomial(r: usize, ell: i64) -> Result<i64> {
    let rd = RootDatum::new(CartanType::new(Family::A, r)?)?;
    let h = r as u64 + 1;
    if ell < 1 {
        return Err(Error::input(format!("ell = {ell} must be positive")));
    }
    let m = (h + 1) * ell as u64;
    let value = exact(binomial(m, h), BigInt::from(m), "binomial formula")?;
    let closed = theorem_c_dim(&rd, ell)?;
    if value != closed {
        return Err(Error::invariant(format!("binomial formula gives {value}, closed form {closed}")));
    }
    Ok(value)
}

/// `prod_{i <= j} (n + e^J_i) n^{r-j} / |W_J|` for a subsystem with `j`
/// exponents `e^J`. Requires `gcd(h, n) = 1`.
pub fn sommers_dim(rd: &RootDatum, sub: &SubsystemInfo, n: i64) -> Result<i64> {
    let h = rd.coxeter_number() as i64;
    if n < 1 || h.gcd(&n) != 1 {
        return Err(Error::input(format!("n = {n} must be positive and prime to h = {h}")));
    }
    let j = sub.exponents.len();
    let mut num = sub.exponents.iter().fold(BigInt::one(), |acc, &e| acc * BigInt::from(n + e as i64));
    num *= BigInt::from(n).pow((rd.rank() - j) as u32);
    exact(num, BigInt::from(sub.group_order), "subsystem formula")
}

/// `(1/|W'|) sum_{w in W'} det(w) #Fix(w, Λ/qΛ)` where `W'` is generated by the
/// reflections in `roots`.
pub fn sign_multiplicity(rd: &RootDatum, roots: &[Vec<i64>], q: i64) -> Result<i64> {
    let r = rd.rank() as u32;
    if q < 2 {
        return Err(Error::input(format!("modulus {q} must be at least 2")));
    }
    if (q as u64).checked_pow(r).is_none_or(|n| n > FIXED_POINT_BOUND) {
        return Err(Error::resource(format!("{q}^{r} points exceed {FIXED_POINT_BOUND}")));
    }
    let group = reflection_subgroup(rd, roots)?;
    let points = residues(rd.rank(), q);
    let total: i64 = group
        .iter()
        .map(|w| {
            let fixed = points
                .iter()
                .filter(|v| w.act_coweight(v).iter().zip(v.iter()).all(|(a, b)| (a - b).rem_euclid(q) == 0))
                .count() as i64;
            w.sign() * fixed
        })
        .sum();
    exact(BigInt::from(total), BigInt::from(group.len()), "sign multiplicity")
}

fn residues(rank: usize, q: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (0..q).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockContribution {
    pub omega: Vec<i64>,
    pub stabilizer_type: String,
    pub orbit_size: usize,
    pub sign_multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub cartan_type: String,
    pub ell: i64,
    pub closed_form: i64,
    pub sommers_route: i64,
    pub block_sum_route: i64,
    pub per_block: Vec<BlockContribution>,
    pub pass: bool,
}

/// Compares the closed form, the subsystem formula at `n = (h+1) ell - h`
/// for the full root system, and the sum of sign multiplicities over the
/// orbits of alcove points.
pub fn block_sum_identity(rd: &RootDatum, ell: i64, force: bool) -> Result<DimReport> {
    let orbits = xi_orbits(rd, ell, force)?;
    let h = rd.coxeter_number() as i64;
    let closed_form = theorem_c_dim(rd, ell)?;
    let full = classify_subsystem(rd, rd.positive_roots())?;
    let sommers_route = sommers_dim(rd, &full, (h + 1) * ell - h)?;
    let per_block = orbits
        .par_iter()
        .map(|orbit| {
            let p = &orbit[0];
            Ok(BlockContribution {
                omega: p.omega.clone(),
                stabilizer_type: p.stabilizer_type.clone(),
                orbit_size: orbit.len(),
                sign_multiplicity: sign_multiplicity(rd, &p.stabilizer_roots, h + 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let block_sum_route = per_block.iter().map(|b| b.sign_multiplicity).sum();
    Ok(DimReport {
        cartan_type: rd.cartan_type().to_string(),
        ell,
        closed_form,
        sommers_route,
        block_sum_route,
        pass: closed_form == sommers_route && sommers_route == block_sum_route,
        per_block,
    })
}

/// Number of alcove points of exact facet type `j` at `ell`.
pub fn facet_type_count(rd: &RootDatum, j: NodeSet, ell: i64) -> Result<usize> {
    Ok(enumerate_xi_sc(rd, ell, true)?.iter().filter(|p| p.facet_type == j).count())
}

/// Polynomial in `ell` with rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(x));
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Interpolating polynomial through the given points.
    pub fn interpolate(points: &[(i64, BigRational)]) -> Polynomial {
        let n = points.len();
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * BigRational::from_integer(BigInt::from(*xj));
                }
                basis = next;
                denom *= BigRational::from_integer(BigInt::from(xi - xj));
            }
            for (k, c) in basis.iter().enumerate() {
                coeffs[k] += c * yi / &denom;
            }
        }
        Polynomial { coeffs }
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let coef = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "l".to_string(),
                _ => format!("l^{k}"),
            };
            let sep = if coef.is_empty() || var.is_empty() { "" } else { " " };
            terms.push((sign, format!("{coef}{sep}{var}")));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (sign, t)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => write!(f, "-{t}")?,
                (0, _) => write!(f, "{t}")?,
                (_, s) => write!(f, " {s} {t}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EhrhartFit {
    pub facet_type: NodeSet,
    pub polynomial: Polynomial,
    pub samples: Vec<(i64, usize)>,
    pub held_out: usize,
}

/// Fits the facet-type count by a polynomial of degree `rank - |j|` through
/// the first samples and checks it exactly on the rest.
pub fn ehrhart_fit(rd: &RootDatum, j: NodeSet, samples: &[i64]) -> Result<EhrhartFit> {
    if j.len() > rd.rank() {
        return Err(Error::input(format!("facet type {j} has more than {} nodes", rd.rank())));
    }
    let dim = rd.rank() - j.len();
    if samples.len() < dim + 2 {
        return Err(Error::input(format!("need at least {} samples, got {}", dim + 2, samples.len())));
    }
    if samples.windows(3).any(|w| w[1] - w[0] != w[2] - w[1]) || samples.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::input("samples must form an increasing arithmetic progression"));
    }
    let counts = samples
        .par_iter()
        .map(|&l| facet_type_count(rd, j, l).map(|c| (l, c)))
        .collect::<Result<Vec<_>>>()?;
    let fit: Vec<(i64, BigRational)> = counts[..=dim]
        .iter()
        .map(|&(l, c)| (l, BigRational::from_integer(BigInt::from(c))))
        .collect();
    let polynomial = Polynomial::interpolate(&fit);
    if polynomial.degree() != Some(dim) {
        return Err(Error::invariant(format!("fit {polynomial} for facet type {j} does not have degree {dim}")));
    }
    for &(l, c) in &counts[dim + 1..] {
        if polynomial.eval(l) != BigRational::from_integer(BigInt::from(c)) {
            return Err(Error::invariant(format!("fit {polynomial} misses {c} points at ell = {l}")));
        }
    }
    Ok(EhrhartFit { facet_type: j, polynomial, held_out: counts.len() - dim - 1, samples: counts })
}

/// Facet types occurring among the alcove points at `ell`, sorted.
pub fn facet_types(rd: &RootDatum, ell: i64) -> Result<Vec<NodeSet>> {
    let mut types: Vec<NodeSet> = enumerate_xi_sc(rd, ell, true)?.iter().map(|p| p.facet_type).collect();
    types.sort();
    types.dedup();
    Ok(types)
}

/// Coefficients of `prod_i 1/(1 - q^{e_i})` up to `q^d`.
pub fn bott_series(exponents: &[u64], d: usize) -> Vec<u64> {
    let mut series = vec![0u64; d + 1];
    series[0] = 1;
    for &e in exponents {
        let e = e as usize;
        for k in e..=d {
            series[k] += series[k - e];
        }
    }
    series
}

/// Whether the minimal representatives of `W_af / W` of each length `k <= d`
/// are counted by [`bott_series`].
pub fn bott_check(rd: &RootDatum, d: usize) -> Result<bool> {
    if d > 30 {
        return Err(Error::input(format!("bott check degree {d} exceeds 30")));
    }
    let reps = min_coset_reps(rd, NodeSet::finite(rd.rank()), d)?;
    let series = bott_series(rd.exponents(), d);
    Ok(reps.iter().map(Vec::len).zip(&series).all(|(a, &b)| a as u64 == b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(theorem_c_dim(&rd("A1"), 3).unwrap(), 4);
        assert_eq!(theorem_c_dim(&rd("A2"), 5).unwrap(), 57);
        assert_eq!(theorem_c_dim(&rd("G2"), 7).unwrap(), 176);
        assert!(matches!(theorem_c_dim(&rd("A1"), 4), Err(Error::InvariantViolation(_))));
        assert_eq!(type_a_binomial(1, 3).unwrap(), 4);
        assert_eq!(type_a_binomial(1, 5).unwrap(), 7);
        assert_eq!(type_a_binomial(3, 5).unwrap(), 506);
    }

    #[test]
    fn subsystem_formula() {
        let a1 = rd("A1");
        let full = classify_subsystem(&a1, a1.positive_roots()).unwrap();
        assert_eq!(sommers_dim(&a1, &full, 7).unwrap(), 4);
        let a2 = rd("A2");
        let full = classify_subsystem(&a2, a2.positive_roots()).unwrap();
        assert_eq!(sommers_dim(&a2, &full, 17).unwrap(), 57);
        let empty = classify_subsystem(&a2, &[]).unwrap();
        assert_eq!(sommers_dim(&a2, &empty, 5).unwrap(), 25);
        assert!(sommers_dim(&a2, &empty, 6).is_err());
    }

    #[test]
    fn sign_multiplicities() {
        let a2 = rd("A2");
        assert_eq!(sign_multiplicity(&a2, a2.positive_roots(), 4).unwrap(), 1);
        assert_eq!(sign_multiplicity(&a2, &[vec![1, 0]], 4).unwrap(), 6);
        assert_eq!(sign_multiplicity(&a2, &[], 4).unwrap(), 16);
        assert!(sign_multiplicity(&a2, &[], 1).is_err());
    }

    #[test]
    fn block_sums() {
        let r = block_sum_identity(&rd("A1"), 3, false).unwrap();
        assert!(r.pass);
        assert_eq!(r.block_sum_route, 4);
        let r = block_sum_identity(&rd("A2"), 5, false).unwrap();
        assert!(r.pass);
        let mut parts: Vec<i64> = r.per_block.iter().map(|b| b.sign_multiplicity).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(parts, vec![16, 16, 6, 6, 6, 6, 1]);
        assert!(block_sum_identity(&rd("A1"), 4, false).is_err());
    }

    #[test]
    fn interpolation() {
        let pts: Vec<(i64, BigRational)> =
            [(1, 2), (2, 5), (3, 10)].iter().map(|&(x, y)| (x, BigRational::from_integer(BigInt::from(y)))).collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(4), BigRational::from_integer(BigInt::from(17)));
        assert_eq!(p.to_string(), "l^2 + 1");
    }

    #[test]
    fn ehrhart_small() {
        let a1 = rd("A1");
        let interior = ehrhart_fit(&a1, NodeSet::EMPTY, &[3, 5, 7, 9]).unwrap();
        assert_eq!(interior.polynomial.to_string(), "l - 1");
        let vertex = ehrhart_fit(&a1, NodeSet::from_nodes(&[1]), &[3, 5, 7]).unwrap();
        assert_eq!(vertex.polynomial.to_string(), "1");
        assert_eq!(facet_type_count(&rd("A2"), NodeSet::EMPTY, 5).unwrap(), 6);
    }

    #[test]
    fn bott() {
        assert_eq!(bott_series(&[1, 3], 6), vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(bott_check(&rd("A1"), 8).unwrap());
        assert!(bott_check(&rd("A2"), 6).unwrap());
        assert!(bott_check(&rd("A1"), 31).is_err());
    }
}
