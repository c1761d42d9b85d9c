use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MatrixQ, Rational, SubspaceBasis, VecQ};

/// Clears denominators row by row and divides out the content.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// Fraction-free (Bareiss) forward elimination with first-nonzero pivoting.
/// Returns the pivot columns; rows below the rank are left zero.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let lhs = piv * &row[j];
                let v = if f.is_zero() {
                    lhs
                } else {
                    lhs - &f * &pivot_row[j]
                };
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &MatrixQ) -> (MatrixQ, Vec<usize>) {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| integer_row(m.row(r))).collect();
    let pivots = bareiss_forward(&mut a, cols);

    let mut rows: Vec<VecQ> = a
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let inv = rows[i][pc].recip();
        if !inv.is_one() {
            for x in rows[i].iter_mut().skip(pc) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (upper, lower) = rows.split_at_mut(i);
        let pivot_row = &lower[0];
        for row in upper.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    (
        MatrixQ::from_flat(m.rows(), cols, rows.into_iter().flatten().collect()),
        pivots,
    )
}

pub fn rank(m: &MatrixQ) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| integer_row(m.row(r))).collect();
    bareiss_forward(&mut a, m.cols()).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &MatrixQ) -> SubspaceBasis {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    SubspaceBasis::from_independent(cols, vectors)
}

/// Solves `a x = b` for a single right-hand side; `None` when inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &MatrixQ, b: &[Rational]) -> Option<VecQ> {
    let bm = MatrixQ::from_columns(&[b.to_vec()], a.rows());
    solve_matrix(a, &bm).map(|x| x.column(0))
}

/// Solves `a X = b` column-wise; `None` if any column is inconsistent.
pub fn solve_matrix(a: &MatrixQ, b: &MatrixQ) -> Option<MatrixQ> {
    assert_eq!(a.rows(), b.rows(), "solve shape");
    let n = a.cols();
    let aug = a.hstack(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = MatrixQ::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x[(p, c)] = r[(i, n + c)].clone();
        }
    }
    Some(x)
}
