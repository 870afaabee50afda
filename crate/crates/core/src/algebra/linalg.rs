//! Small dense exact linear algebra over the rationals.

use super::{AlgebraError, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("pivot is nonzero");
        for c in 0..m[row].len() {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = &f * &m[row][c];
                    m[r][c] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `a x = b` for any consistent system with a unique solution
/// (square or overdetermined).
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    let n = a.first().map_or(0, Vec::len);
    if a.len() != b.len() || a.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::Dimension(format!(
            "{}x{} system with rhs of length {}",
            a.len(),
            n,
            b.len()
        )));
    }
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(AlgebraError::Singular);
    }
    if aug[pivots.len()..].iter().any(|row| !row[n].is_zero()) {
        return Err(AlgebraError::Inconsistent);
    }
    Ok((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right null space of `a`.
pub fn nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            v
        })
        .collect()
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip().expect("pivot is nonzero");
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= &delta;
                }
            }
        }
    }
    det
}

/// Sylvester's criterion: the `k`-th leading principal minor has sign `(-1)^k`.
pub fn is_negative_definite(a: &Matrix) -> bool {
    (1..=a.len()).all(|k| {
        let minor: Matrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
        let d = determinant(&minor);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}
