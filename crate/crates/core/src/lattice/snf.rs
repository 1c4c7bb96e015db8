use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{determinant, Matrix};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, its diagonal
/// nonnegative and each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub v: Matrix,
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub diagonal: Vec<BigInt>,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    /// `D` as a full matrix.
    pub fn d(&self) -> Matrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diagonal.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }

    /// Checks `U A V = D`, unimodularity and the divisibility chain.
    pub fn verify(&self, a: &Matrix) -> bool {
        let unimodular = |m: &Matrix| determinant(m).abs().is_one();
        let chain = self
            .diagonal
            .windows(2)
            .all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        chain
            && self.diagonal.iter().all(|x| !x.is_negative())
            && unimodular(&self.u)
            && unimodular(&self.v)
            && mat_mul(&mat_mul(&self.u, a), &self.v) == self.d()
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut c = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    c[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    c
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form by alternating row and column Euclid steps.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    // Row op on D and U: row_i -= f * row_k.
    fn row_sub(m: &mut Matrix, i: usize, k: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let src = m[k].clone();
        for (x, y) in m[i].iter_mut().zip(src.iter()) {
            *x -= f * y;
        }
    }
    fn col_sub(m: &mut Matrix, j: usize, k: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for row in m.iter_mut() {
            let y = row[k].clone();
            row[j] -= f * y;
        }
    }
    fn col_swap(m: &mut Matrix, a: usize, b: usize) {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let f = d[i][t].div_floor(&d[t][t]);
                row_sub(&mut d, i, t, &f);
                row_sub(&mut u, i, t, &f);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = d[t][j].div_floor(&d[t][t]);
                col_sub(&mut d, j, t, &f);
                col_sub(&mut v, j, t, &f);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block; otherwise fold
            // an offending row into row t and continue reducing.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
    SmithForm {
        u,
        v,
        diagonal,
        rows,
        cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_examples() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.diagonal, [2, 6, 12].map(BigInt::from));

        let b = m(&[&[6, 4], &[4, 6]]);
        let s = smith_normal_form(&b);
        assert!(s.verify(&b));
        assert_eq!(s.diagonal, [2, 10].map(BigInt::from));
    }

    #[test]
    fn rectangular_and_singular() {
        let a = m(&[&[2, 4], &[1, 2], &[3, 6]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.diagonal, [1, 0].map(BigInt::from));
    }
}
