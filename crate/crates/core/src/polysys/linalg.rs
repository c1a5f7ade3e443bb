use crate::error::{Error, Result};
use crate::field::Field;

pub type Matrix3<T> = [[T; 3]; 3];

pub fn identity<T: Field>() -> Matrix3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { T::zero() }))
}

pub fn map_matrix<T, U, F: Fn(&T) -> U>(m: &Matrix3<T>, f: F) -> Matrix3<U> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&m[i][j])))
}

pub fn det<T: Field>(m: &Matrix3<T>) -> T {
    let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul_ref(&m[2][b]) - m[1][c].mul_ref(&m[2][d]);
    m[0][0].mul_ref(&minor(1, 2, 2, 1)) - m[0][1].mul_ref(&minor(0, 2, 2, 0)) + m[0][2].mul_ref(&minor(0, 1, 1, 0))
}

pub fn trace<T: Field>(m: &Matrix3<T>) -> T {
    m[0][0].clone() + m[1][1].clone() + m[2][2].clone()
}

/// Sum of the principal 2×2 minors.
pub fn principal_minor_sum<T: Field>(m: &Matrix3<T>) -> T {
    let pm = |i: usize, j: usize| m[i][i].mul_ref(&m[j][j]) - m[i][j].mul_ref(&m[j][i]);
    pm(0, 1) + pm(0, 2) + pm(1, 2)
}

pub fn inverse<T: Field>(m: &Matrix3<T>) -> Result<Matrix3<T>> {
    let d = det(m);
    let dinv = d.try_inv().ok_or(Error::SingularTransform)?;
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0].mul_ref(&m[r1][c1]) - m[r0][c1].mul_ref(&m[r1][c0]);
    // adjugate transposed cofactors
    let adj: Matrix3<T> = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    Ok(map_matrix(&adj, |x| x.mul_ref(&dinv)))
}

pub fn mat_mul<T: Field>(a: &Matrix3<T>, b: &Matrix3<T>) -> Matrix3<T> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = T::zero();
            for k in 0..3 {
                acc.mul_add_assign(&a[i][k], &b[k][j]);
            }
            acc
        })
    })
}

pub fn mat_vec<T: Field>(a: &Matrix3<T>, x: &[T; 3]) -> [T; 3] {
    std::array::from_fn(|i| {
        let mut acc = T::zero();
        for k in 0..3 {
            acc.mul_add_assign(&a[i][k], &x[k]);
        }
        acc
    })
}

pub fn cross<T: Field>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].mul_ref(&b[2]) - a[2].mul_ref(&b[1]),
        a[2].mul_ref(&b[0]) - a[0].mul_ref(&b[2]),
        a[0].mul_ref(&b[1]) - a[1].mul_ref(&b[0]),
    ]
}

/// Rank of a dense matrix by Gaussian elimination, with the pivot columns.
pub fn rank_with_pivots<T: Field>(rows: &[Vec<T>], tol: f64) -> (usize, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].approx_zero(tol)) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].try_inv().expect("nonzero pivot");
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul_ref(&inv);
            for j in c..ncols {
                let t = f.mul_ref(&m[r][j]);
                m[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Solve `a x = b` for square `a`; `None` if singular.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let nb = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<T>> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s.iter()).cloned().collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].try_inv()?;
        for j in 0..n + nb {
            m[c][j] = m[c][j].mul_ref(&inv);
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..n + nb {
                let t = f.mul_ref(&m[c][j]);
                m[i][j] -= t;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
