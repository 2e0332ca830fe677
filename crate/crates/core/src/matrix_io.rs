//! Exact rational matrices and their maximal minors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::Subset;
use crate::error::Error;
use crate::plucker::{normalize_projective, PluckerVector};
use crate::rational::Rational;

/// A `k × n` matrix over the rationals, `k ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
    n: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("matrix rows have different lengths".into()));
        }
        if rows.len() > n {
            return Err(Error::Malformed(format!("a {}×{n} matrix has more rows than columns", rows.len())));
        }
        Ok(RationalMatrix { rows, n })
    }

    /// Like [`new`](Self::new) with an explicit column count, so `k = 0` keeps its width.
    pub fn with_width(rows: Vec<Vec<Rational>>, n: usize) -> Result<Self, Error> {
        if rows.is_empty() {
            return Ok(RationalMatrix { rows, n });
        }
        let m = Self::new(rows)?;
        if m.n != n {
            return Err(Error::Malformed(format!("expected {n} columns, found {}", m.n)));
        }
        Ok(m)
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Square submatrix on the given 1-based columns.
    pub fn columns(&self, cols: &[usize]) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect()).collect()
    }
}

/// Determinant of a square rational matrix.
///
/// Each row is scaled to integers by the lcm of its denominators, then
/// sizes up to 3 are expanded by cofactors and larger ones go through
/// fraction-free Bareiss elimination.
pub fn determinant(square: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = square
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let det = if ints.len() <= 3 { cofactor_det(&ints) } else { bareiss_det(ints) };
    Rational::new(det, scale)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        size => {
            let mut total = BigInt::zero();
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][col] * cofactor_det(&minor);
                if col % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for p in 0..size - 1 {
        if m[p][p].is_zero() {
            match (p + 1..size).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[p][p].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// All maximal minors in lexicographic order of their columns, up to one
/// common positive factor (each row is first scaled to integers).
pub fn scaled_maximal_minors(matrix: &RationalMatrix) -> Vec<(Subset, BigInt)> {
    let ints: Vec<Vec<BigInt>> = matrix
        .rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    integer_maximal_minors(&ints, matrix.k(), matrix.n())
}

/// All maximal minors of an integer `k × n` matrix, in lexicographic order.
///
/// Expands along the last row, sharing the minors of the top `t` rows on
/// every `t`-subset of columns between all larger minors.
pub fn integer_maximal_minors(ints: &[Vec<BigInt>], k: usize, n: usize) -> Vec<(Subset, BigInt)> {
    assert!(n <= 64, "column subsets are bitmasks");
    // minors of the top t rows, keyed by column mask; zero minors are dropped
    let mut level: HashMap<u64, BigInt> = HashMap::from([(0, BigInt::one())]);
    for t in 0..k {
        let row = &ints[t];
        let mut next: HashMap<u64, BigInt> = HashMap::new();
        for (&mask, minor) in &level {
            for c in 0..n {
                if mask >> c & 1 == 1 || row[c].is_zero() {
                    continue;
                }
                // row t sits last; column c lands after the columns of mask below it
                let after = (mask >> c).count_ones();
                let term = minor * &row[c];
                let slot = next.entry(mask | 1 << c).or_insert_with(BigInt::zero);
                if after % 2 == 0 {
                    *slot += term;
                } else {
                    *slot -= term;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        level = next;
    }
    Subset::all(k, n)
        .map(|j| {
            let det = level.get(&j.mask()).cloned().unwrap_or_else(BigInt::zero);
            (j, det)
        })
        .collect()
}

/// Maximal minors of the matrix, normalized projectively.
pub fn plucker_from_matrix(matrix: &RationalMatrix) -> Result<PluckerVector, Error> {
    let (k, n) = (matrix.k(), matrix.n());
    let raw: Vec<(Subset, Rational)> = scaled_maximal_minors(matrix)
        .into_iter()
        .map(|(j, det)| (j, Rational::from_integer(det)))
        .collect();
    if raw.iter().all(|(_, v)| v.is_zero()) {
        return Err(Error::RankDeficient { k });
    }
    if let Some((j, _)) = raw.iter().find(|(_, v)| v.is_negative()) {
        // only a problem if some other minor is positive
        if raw.iter().any(|(_, v)| v.is_positive()) {
            return Err(Error::MixedSigns(format!("P_{{{j}}} and another minor have opposite signs")));
        }
    }
    normalize_projective(k, n, raw)
}
