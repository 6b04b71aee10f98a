use super::IntMatrix;

/// `left * a * right == diag(diagonal)` with `left`, `right` unimodular and
/// each nonzero diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let (x, y) = (m.get(a, j), m.get(b, j));
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let (x, y) = (m.get(i, a), m.get(i, b));
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: i64) {
    for j in 0..m.cols() {
        let v = m.get(dst, j) - q * m.get(src, j);
        m.set(dst, j, v);
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: i64) {
    for i in 0..m.rows() {
        let v = m.get(i, dst) - q * m.get(i, src);
        m.set(i, dst, v);
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j);
        m.set(i, j, v);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = d.get(i, j).abs();
                    if v != 0 && best.is_none_or(|(bi, bj)| v < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut left, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut right, t, pj);

            let pivot = d.get(t, t);
            let mut dirty = false;
            for i in t + 1..rows {
                let q = d.get(i, t).div_euclid(pivot);
                if q != 0 {
                    row_axpy(&mut d, i, t, q);
                    row_axpy(&mut left, i, t, q);
                }
                dirty |= d.get(i, t) != 0;
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_euclid(pivot);
                if q != 0 {
                    col_axpy(&mut d, j, t, q);
                    col_axpy(&mut right, j, t, q);
                }
                dirty |= d.get(t, j) != 0;
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| d.get(i, j) % pivot != 0));
            match offender {
                Some(i) => {
                    row_axpy(&mut d, t, i, -1);
                    row_axpy(&mut left, t, i, -1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            negate_row(&mut d, t);
            negate_row(&mut left, t);
        }
    }

    SmithForm { diagonal: (0..n).map(|i| d.get(i, i)).collect(), left, right }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
/// Zero rows are dropped, pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`; two generating sets span the same lattice iff
/// their forms are equal.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                let v = m.get(i, c).abs();
                if v != 0 && best.is_none_or(|b| v < m.get(b, c).abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut m, r, b);
            let p = m.get(r, c);
            let mut done = true;
            for i in r + 1..rows {
                let q = m.get(i, c).div_euclid(p);
                if q != 0 {
                    row_axpy(&mut m, i, r, q);
                }
                done &= m.get(i, c) == 0;
            }
            if done {
                break;
            }
        }
        if m.get(r, c) != 0 {
            if m.get(r, c) < 0 {
                negate_row(&mut m, r);
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    for &(pr, pc) in &pivots {
        let p = m.get(pr, pc);
        for i in 0..pr {
            let q = m.get(i, pc).div_euclid(p);
            if q != 0 {
                row_axpy(&mut m, i, pr, q);
            }
        }
    }
    IntMatrix::from_rows(&m.to_rows()[..r])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_matrix(rows: usize, cols: usize, d: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[test]
    fn smith_of_a2_cartan() {
        let a = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![1, 3]);
    }

    #[test]
    fn hnf_identifies_equal_lattices() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        let b = IntMatrix::from_rows(&[vec![2, 2], vec![0, -2], vec![4, 0]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
    }

    proptest! {
        #[test]
        fn smith_reconstructs(entries in proptest::collection::vec(-6i64..7, 9)) {
            let a = IntMatrix::from_rows(&[entries[0..3].to_vec(), entries[3..6].to_vec(), entries[6..9].to_vec()]);
            let s = smith_normal_form(&a);
            let d = diag_matrix(3, 3, &s.diagonal);
            prop_assert_eq!(s.left.mul(&a).mul(&s.right), d);
            prop_assert_eq!(s.left.det().abs(), 1);
            prop_assert_eq!(s.right.det().abs(), 1);
            prop_assert_eq!(s.diagonal.iter().product::<i64>(), a.det().abs());
            for w in s.diagonal.windows(2) {
                if w[0] != 0 {
                    prop_assert_eq!(w[1] % w[0], 0);
                } else {
                    prop_assert_eq!(w[1], 0);
                }
            }
        }
    }
}
