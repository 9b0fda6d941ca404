//! Exact rational scalars and a few helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` (arbitrary precision, optional sign).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact determinant of a square rational matrix by fraction-free (Bareiss)
/// elimination on a cleared-denominator integer matrix.
pub fn determinant_bareiss(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Ok(Rat::one());
    }

    // Clear denominators row by row, remembering the scaling.
    let mut scale = Rat::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let mut lcm = BigInt::one();
        for x in row {
            lcm = num_integer::lcm(lcm, x.denom().clone());
        }
        scale *= Rat::from_integer(lcm.clone());
        a.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }

    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match pivot {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Rat::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det_int = a[n - 1][n - 1].clone();
    let det = Rat::from_integer(det_int) / scale;
    Ok(if sign < 0 { -det } else { det })
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn matrix_rank(m: &[Vec<Rat>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let pivot = (rank..rows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].clone();
        for j in col..cols {
            let v = &a[rank][j] / &inv;
            a[rank][j] = v;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..cols {
                    let v = &a[r][j] - &f * &a[rank][j];
                    a[r][j] = v;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Solves the square system `A x = b` exactly. Returns `None` when `A` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            let v = &m[col][j] / &inv;
            m[col][j] = v;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    let v = &m[r][j] - &f * &m[col][j];
                    m[r][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// One-dimensional kernel of a matrix with `cols = rows + 1`, i.e. the unique
/// (up to scale) linear dependence among the columns. Returns `None` when the
/// kernel is not one-dimensional.
pub fn unique_column_dependence(m: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let rows = m.len();
    if rows == 0 {
        return None;
    }
    let cols = m[0].len();
    if cols != rows + 1 {
        return None;
    }
    if matrix_rank(m) != rows {
        return None; // kernel dimension > 1
    }
    // Reduced row echelon form; the single free column yields the kernel vector.
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].clone();
        for j in 0..cols {
            let v = &a[r][j] / &inv;
            a[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut kernel = vec![Rat::zero(); cols];
    kernel[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        kernel[pc] = -a[row][free].clone();
    }
    Some(kernel)
}

/// Sign as -1, 0, +1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "5", "-3", "5/2", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("4/2").unwrap(), rat(2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        assert_eq!(determinant_bareiss(&m).unwrap(), rat(-2));
        let m = vec![
            vec![ratio(1, 2), rat(0), rat(1)],
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(2), rat(3)],
        ];
        // det = 1/2*(3-0) - 0 + 1*(2-0) = 7/2
        assert_eq!(determinant_bareiss(&m).unwrap(), ratio(7, 2));
    }

    #[test]
    fn rank_and_solve() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(matrix_rank(&m), 2);
        let a = vec![vec![rat(2), rat(0)], vec![rat(1), rat(3)]];
        let x = solve_square(&a, &[rat(4), rat(5)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
    }

    #[test]
    fn column_dependence_of_rank_deficient_union() {
        // columns: e1, e2, e1+e2  ->  dependence (1, 1, -1)
        let m = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        let dep = unique_column_dependence(&m).unwrap();
        let t = dep[2].clone();
        assert!(!t.is_zero());
        assert_eq!(dep[0], -t.clone());
        assert_eq!(dep[1], -t);
    }
}
