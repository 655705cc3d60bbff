use std::fmt;

/// Commutative ring with exact arithmetic.
///
/// `try_inv` returns the inverse of a unit. Fields answer for every nonzero
/// element, local rings (truncated series, nilpotent extensions) only for
/// elements with an invertible constant part.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
}

/// Solve `m * x = rhs` by Gaussian elimination with unit pivots.
///
/// Returns `None` when no unit pivot can be found in some column, which for a
/// field means the matrix is singular.
pub fn solve_linear<R: Ring>(m: &[Vec<R>], rhs: &[R]) -> Option<Vec<R>> {
    let n = m.len();
    let mut a: Vec<Vec<R>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let (piv, inv) = (col..n).find_map(|r| a[r][col].try_inv().map(|i| (r, i)))?;
        a.swap(col, piv);
        let prow: Vec<R> = a[col].iter().map(|v| v.mul(&inv)).collect();
        a[col] = prow;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=n {
                    let v = a[r][k].sub(&f.mul(&a[col][k]));
                    a[r][k] = v;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Inverse of a square matrix over a ring, if every pivot can be chosen a unit.
pub fn invert_matrix<R: Ring>(m: &[Vec<R>]) -> Option<Vec<Vec<R>>> {
    let n = m.len();
    let mut a: Vec<Vec<R>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| if i == j { R::one() } else { R::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let (piv, inv) = (col..n).find_map(|r| a[r][col].try_inv().map(|i| (r, i)))?;
        a.swap(col, piv);
        let prow: Vec<R> = a[col].iter().map(|v| v.mul(&inv)).collect();
        a[col] = prow;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..2 * n {
                    let v = a[r][k].sub(&f.mul(&a[col][k]));
                    a[r][k] = v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by cofactor expansion. Only meant for the tiny frame matrices.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        0 => R::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = R::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Cofactor matrix: `C[i][j] = (-1)^(i+j) det(minor_ij)`.
pub fn cofactors<R: Ring>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<R>> = (0..n)
                        .filter(|&r| r != i)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != j)
                                .map(|c| m[r][c].clone())
                                .collect()
                        })
                        .collect();
                    let d = determinant(&minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// Rank of a matrix over a field (every nonzero entry must be invertible).
pub fn rank<R: Ring>(m: &[Vec<R>]) -> usize {
    let mut a: Vec<Vec<R>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some((piv, inv)) = (r..rows).find_map(|i| a[i][col].try_inv().map(|v| (i, v))) else {
            continue;
        };
        a.swap(r, piv);
        let prow: Vec<R> = a[r].iter().map(|v| v.mul(&inv)).collect();
        a[r] = prow;
        for i in r + 1..rows {
            if !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for k in col..cols {
                    let v = a[i][k].sub(&f.mul(&a[r][k]));
                    a[i][k] = v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{x : m x = 0}` over a field.
pub fn kernel<R: Ring>(m: &[Vec<R>], cols: usize) -> Vec<Vec<R>> {
    let mut a: Vec<Vec<R>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some((piv, inv)) = (r..rows).find_map(|i| a[i][col].try_inv().map(|v| (i, v))) else {
            continue;
        };
        a.swap(r, piv);
        let prow: Vec<R> = a[r].iter().map(|v| v.mul(&inv)).collect();
        a[r] = prow;
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for k in col..cols {
                    let v = a[i][k].sub(&f.mul(&a[r][k]));
                    a[i][k] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![R::zero(); cols];
            v[f] = R::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f].neg();
            }
            v
        })
        .collect()
}
