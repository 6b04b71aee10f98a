use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial in `nvars` variables modulo all monomials of total degree
/// `>= order`. Variable `i` is the simple root `alpha_i` viewed as a linear form.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vectors of total degree `< order`, graded then lexicographic.
pub fn monomials(nvars: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..order {
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(vec![]);
            }
            continue;
        }
        rec(0, d, &mut cur, &mut out);
    }
    out
}

impl TruncatedPoly {
    pub fn zero(nvars: usize, order: u32) -> Self {
        TruncatedPoly { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: u32, c: BigRational) -> Self {
        let mut p = Self::zero(nvars, order);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(nvars: usize, order: u32, exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(nvars, order);
        p.add_term(exps, c);
        p
    }

    /// The linear form `sum_i coeffs[i] x_i`.
    pub fn linear(order: u32, coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, order);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, rat(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() || exps.iter().sum::<u32>() >= self.order {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TruncatedPoly) -> TruncatedPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TruncatedPoly) -> TruncatedPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedPoly {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &TruncatedPoly) -> TruncatedPoly {
        let mut out = Self::zero(self.nvars, self.order);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Replaces `x_i` by `images[i]` (polynomials in a possibly different set
    /// of variables, sharing the truncation order).
    pub fn substitute(&self, images: &[TruncatedPoly]) -> TruncatedPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target_vars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(target_vars, self.order);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_vars, self.order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Restriction to the hyperplane `alpha = 0`, eliminating the first
    /// variable with a nonzero coefficient in `alpha`.
    pub fn restrict(&self, alpha: &[i64]) -> TruncatedPoly {
        let p = alpha.iter().position(|&c| c != 0).expect("nonzero linear form");
        let images: Vec<TruncatedPoly> = (0..self.nvars)
            .map(|i| {
                if i == p {
                    let coeffs: Vec<BigRational> = (0..self.nvars)
                        .map(|j| if j == p { BigRational::zero() } else { rat(-alpha[j]) / rat(alpha[p]) })
                        .collect();
                    let mut q = Self::zero(self.nvars, self.order);
                    for (j, c) in coeffs.into_iter().enumerate() {
                        let mut e = vec![0; self.nvars];
                        e[j] = 1;
                        q.add_term(e, c);
                    }
                    q
                } else {
                    let mut e = vec![0; self.nvars];
                    e[i] = 1;
                    Self::monomial(self.nvars, self.order, e, BigRational::one())
                }
            })
            .collect();
        self.substitute(&images)
    }

    /// Membership in the ideal generated by the linear form `alpha`, modulo
    /// the truncation.
    pub fn in_ideal(&self, alpha: &[i64]) -> bool {
        self.restrict(alpha).is_zero()
    }
}

impl fmt::Debug for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 1).len(), 1);
        assert_eq!(monomials(2, 2).len(), 3);
        assert_eq!(monomials(2, 3).len(), 6);
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(1, 4), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn ideal_membership() {
        let a = TruncatedPoly::linear(3, &[1, 1]);
        let x = TruncatedPoly::linear(3, &[1, 0]);
        assert!(a.in_ideal(&[1, 1]));
        assert!(a.mul(&x).in_ideal(&[1, 1]));
        assert!(!x.in_ideal(&[1, 1]));
        // x^2 vanishes in the truncation at order 2
        let tr = TruncatedPoly::linear(2, &[1, 0]);
        assert!(tr.mul(&tr).is_zero());
    }

    #[test]
    fn substitution_composes() {
        let x = TruncatedPoly::linear(3, &[1, 0]);
        let y = TruncatedPoly::linear(3, &[0, 1]);
        let f = x.mul(&y).add(&x);
        let swap = [y.clone(), x.clone()];
        assert_eq!(f.substitute(&swap).substitute(&swap), f);
    }
}
