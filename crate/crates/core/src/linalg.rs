//! Exact dense linear algebra over the rationals.
//!
//! Everything here works on small matrices (dimension at most ~10), so plain
//! Gauss-Jordan with full pivoting by magnitude is more than enough.

use crate::scalar::Rational;
use num_traits::{One, Signed, Zero};

pub type Vecq = Vec<Rational>;

pub fn zeros(n: usize) -> Vecq {
    vec![Rational::zero(); n]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vecq {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vecq {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rational]) -> Vecq {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vecq {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vecq]) -> (Vec<Vecq>, Vec<usize>) {
    if rows.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vecq> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vecq]) -> usize {
    rref(rows).1.len()
}

/// Basis of the null space of the linear map x -> (⟨row, x⟩)_rows.
pub fn null_space(rows: &[Vecq], dim: usize) -> Vec<Vecq> {
    if rows.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = zeros(dim);
                v[i] = Rational::one();
                v
            })
            .collect();
    }
    let (m, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zeros(dim);
        v[free] = Rational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Indices of a maximal linearly independent subset, scanned in order.
pub fn independent_subset(rows: &[Vecq]) -> Vec<usize> {
    let mut chosen: Vec<Vecq> = Vec::new();
    let mut idx = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        chosen.push(row.clone());
        if rank(&chosen) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Solve the square system given by `rows` for several right-hand sides at
/// once; returns None when the matrix is singular.
pub fn invert(rows: &[Vecq]) -> Option<Vec<Vecq>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return None;
    }
    // augment with the identity
    let mut m: Vec<Vecq> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Express `target` as a linear combination of `basis` vectors, if possible.
pub fn coordinates_in_span(basis: &[Vecq], target: &[Rational]) -> Option<Vecq> {
    if basis.is_empty() {
        return if is_zero_vec(target) { Some(Vec::new()) } else { None };
    }
    let dim = target.len();
    // Solve Bᵀ c = target by RREF of the augmented system.
    let mut rows: Vec<Vecq> = (0..dim)
        .map(|i| {
            let mut row: Vecq = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let k = basis.len();
    let (m, pivots) = rref(&mut rows);
    if pivots.contains(&k) {
        return None; // inconsistent
    }
    let mut coeffs = zeros(k);
    for (ri, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = m[ri][k].clone();
    }
    // With full column rank this is the unique solution; verify regardless.
    let mut recon = zeros(dim);
    for (c, b) in coeffs.iter().zip(basis) {
        recon = add(&recon, &scale(b, c));
    }
    if recon == target.to_vec() {
        Some(coeffs)
    } else {
        None
    }
}

/// Divide by the absolute value of the first nonzero entry. Canonical form
/// for a ray up to positive scaling.
pub fn normalize_ray(v: &[Rational]) -> Vecq {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(first) => {
            let s = first.abs();
            v.iter().map(|x| x / &s).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn v(xs: &[i64]) -> Vecq {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rref_rank_null() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn invert_roundtrip() {
        let rows = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = invert(&rows).unwrap();
        // A * A^{-1} = I
        for i in 0..2 {
            for j in 0..2 {
                let col: Vecq = (0..2).map(|k| inv[k][j].clone()).collect();
                let x = dot(&rows[i], &col);
                assert_eq!(x, if i == j { rat(1, 1) } else { rat(0, 1) });
            }
        }
        assert!(invert(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn span_coordinates() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = coordinates_in_span(&basis, &v(&[2, 3, 5])).unwrap();
        assert_eq!(c, vec![rat_int(2), rat_int(3)]);
        assert!(coordinates_in_span(&basis, &v(&[0, 0, 1])).is_none());
    }
}
