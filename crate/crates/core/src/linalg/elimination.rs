use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: `(column, coefficient)` pairs with strictly increasing
/// columns and nonzero coefficients.
pub type SparseRow = Vec<(usize, BigInt)>;

fn normalize(row: &mut SparseRow) {
    row.retain(|(_, c)| !c.is_zero());
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, c) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    let flip = first.1.is_negative();
    if !g.is_one() || flip {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
            if flip {
                *c = -&*c;
            }
        }
    }
}

/// `a * x - b * y`, both rows sorted.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        match (cx, cy) {
            (Some(p), Some(q)) if p == q => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((p, v));
                }
                i += 1;
                j += 1;
            }
            (Some(p), Some(q)) if p < q => {
                out.push((p, a * &x[i].1));
                i += 1;
            }
            (Some(p), None) => {
                out.push((p, a * &x[i].1));
                i += 1;
            }
            (_, Some(q)) => {
                out.push((q, -(b * &y[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Row echelon form built one row at a time with fraction-free updates.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        normalize(&mut row);
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let pc = &p[0].1;
                    let g = pc.gcd(&coeff);
                    row = combine(&(pc / &g), &row, &(&coeff / &g), p);
                    normalize(&mut row);
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Basis of the rational solutions of `row · x = 0` for every stored row,
    /// one vector per free column, in increasing free-column order.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); ncols];
                x[f] = BigRational::one();
                for (&c, row) in self.pivots.iter().rev() {
                    let mut s = BigRational::zero();
                    for (j, a) in row.iter().skip(1) {
                        if !x[*j].is_zero() {
                            s += &x[*j] * BigRational::from_integer(a.clone());
                        }
                    }
                    x[c] = -s / BigRational::from_integer(row[0].1.clone());
                }
                x
            })
            .collect()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn nullspace(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.nullspace(ncols)
}

/// Sparse row from a dense integer slice.
pub fn sparse_from_dense(v: &[i64]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, &c)| (i, BigInt::from(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dot(row: &[i64], x: &[BigRational]) -> BigRational {
        row.iter()
            .zip(x)
            .map(|(a, b)| BigRational::from_integer(BigInt::from(*a)) * b)
            .fold(BigRational::zero(), |s, t| s + t)
    }

    #[test]
    fn small_nullspace() {
        let rows = vec![sparse_from_dense(&[1, 2, 3]), sparse_from_dense(&[2, 4, 6])];
        assert_eq!(rank(rows.clone()), 1);
        let ns = nullspace(rows, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(dot(&[1, 2, 3], x).is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let rows = vec![sparse_from_dense(&[2, -1]), sparse_from_dense(&[-1, 2])];
        assert!(nullspace(rows, 2).is_empty());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 20)) {
            let dense: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let rows: Vec<SparseRow> = dense.iter().map(|r| sparse_from_dense(r)).collect();
            let rk = rank(rows.clone());
            let ns = nullspace(rows, 5);
            prop_assert_eq!(rk + ns.len(), 5);
            for x in &ns {
                for r in &dense {
                    prop_assert!(dot(r, x).is_zero());
                }
            }
        }
    }
}
