//! Integer chain complexes, normalized chains of a simplicial set, and
//! homology via Smith normal form.
//!
//! The linear algebra is generic over the integer scalar through
//! `num-traits`/`num-integer`, so small complexes can run on `i64` while
//! anything that might see coefficient growth uses the arbitrary-precision
//! [`ChainInt`] alias. Torsion (e.g. the 2-torsion of a classifying space)
//! is exactly why this stays over the integers.

use crate::simplicial::TruncatedSimplicialSet;
use num_traits::{One, Signed};
use std::fmt;

/// Default scalar for normalized chains: arbitrary-precision integers.
pub type ChainInt = num_bigint::BigInt;

/// Scalar bound for the chain-complex lane.
pub trait ChainScalar: num_integer::Integer + Signed + Clone + fmt::Debug + fmt::Display {}
impl<T: num_integer::Integer + Signed + Clone + fmt::Debug + fmt::Display> ChainScalar for T {}

/// Dense row-major matrix over an integer scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: ChainScalar> IntMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix<T>) -> IntMatrix<T> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::<T>::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).clone() + a.clone() * other.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the
/// next, all positive. Row/column transforms are not tracked; homology
/// needs only the factors.
pub fn smith_invariant_factors<T: ChainScalar>(mut m: IntMatrix<T>) -> Vec<T> {
    let bound = m.rows.min(m.cols);
    let mut factors = Vec::new();
    for k in 0..bound {
        // pivot selection: smallest absolute nonzero in the trailing block
        let pivot = {
            let mut best: Option<(usize, usize)> = None;
            for r in k..m.rows {
                for c in k..m.cols {
                    if !m.get(r, c).is_zero()
                        && best
                            .map(|(br, bc)| m.get(r, c).abs() < m.get(br, bc).abs())
                            .unwrap_or(true)
                    {
                        best = Some((r, c));
                    }
                }
            }
            best
        };
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut m, k, pr);
        swap_cols(&mut m, k, pc);

        loop {
            // clear column k below the pivot by division with remainder
            let mut dirty = false;
            for r in k + 1..m.rows {
                if !m.get(r, k).is_zero() {
                    let q = m.get(r, k).clone() / m.get(k, k).clone();
                    if !q.is_zero() {
                        row_axpy(&mut m, r, k, &q);
                    }
                    if !m.get(r, k).is_zero() {
                        // remainder became the new, smaller pivot
                        swap_rows(&mut m, k, r);
                        dirty = true;
                    }
                }
            }
            for c in k + 1..m.cols {
                if !m.get(k, c).is_zero() {
                    let q = m.get(k, c).clone() / m.get(k, k).clone();
                    if !q.is_zero() {
                        col_axpy(&mut m, c, k, &q);
                    }
                    if !m.get(k, c).is_zero() {
                        swap_cols(&mut m, k, c);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility sweep so factors divide in order
            let mut fixed = false;
            'scan: for r in k + 1..m.rows {
                for c in k + 1..m.cols {
                    if !(m.get(r, c).clone() % m.get(k, k).clone()).is_zero() {
                        // fold the offending row into row k and restart
                        for cc in 0..m.cols {
                            let v = m.get(k, cc).clone() + m.get(r, cc).clone();
                            m.set(k, cc, v);
                        }
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if m.get(k, k).is_negative() {
            for c in 0..m.cols {
                let v = m.get(k, c).clone().neg();
                m.set(k, c, v);
            }
        }
        factors.push(m.get(k, k).clone());
    }
    factors
}

fn swap_rows<T: ChainScalar>(m: &mut IntMatrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        let x = m.get(a, c).clone();
        let y = m.get(b, c).clone();
        m.set(a, c, y);
        m.set(b, c, x);
    }
}

fn swap_cols<T: ChainScalar>(m: &mut IntMatrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows {
        let x = m.get(r, a).clone();
        let y = m.get(r, b).clone();
        m.set(r, a, y);
        m.set(r, b, x);
    }
}

/// row_r -= q * row_k
fn row_axpy<T: ChainScalar>(m: &mut IntMatrix<T>, r: usize, k: usize, q: &T) {
    for c in 0..m.cols {
        let v = m.get(r, c).clone() - q.clone() * m.get(k, c).clone();
        m.set(r, c, v);
    }
}

/// col_c -= q * col_k
fn col_axpy<T: ChainScalar>(m: &mut IntMatrix<T>, c: usize, k: usize, q: &T) {
    for r in 0..m.rows {
        let v = m.get(r, c).clone() - q.clone() * m.get(r, k).clone();
        m.set(r, c, v);
    }
}

/// A chain complex with integer boundary matrices. `boundaries[m]` maps
/// degree `m + 1` to degree `m`; d o d = 0 is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<T> {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix<T>>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary of boundary is nonzero between degrees {degree} and {}", degree.saturating_sub(2))]
    BoundarySquareNonzero { degree: usize },
    #[error("boundary matrix {index} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    BoundaryShape {
        index: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("degree {degree} out of range for homology (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
}

impl<T: ChainScalar> ChainComplex<T> {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix<T>>) -> Result<Self, ChainError> {
        assert_eq!(boundaries.len() + 1, ranks.len());
        for (m, b) in boundaries.iter().enumerate() {
            if b.rows != ranks[m] || b.cols != ranks[m + 1] {
                return Err(ChainError::BoundaryShape {
                    index: m,
                    rows: b.rows,
                    cols: b.cols,
                    expected_rows: ranks[m],
                    expected_cols: ranks[m + 1],
                });
            }
        }
        for m in 1..boundaries.len() {
            if !boundaries[m - 1].mul(&boundaries[m]).is_zero() {
                return Err(ChainError::BoundarySquareNonzero { degree: m + 1 });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Boundary from degree `m` to `m - 1`.
    pub fn boundary(&self, m: usize) -> &IntMatrix<T> {
        &self.boundaries[m - 1]
    }
}

/// An abelian group presented as a free rank plus invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
}

impl<T: ChainScalar> HomologyGroup<T> {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl<T: fmt::Display> fmt::Display for HomologyGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_m = ker d_m / im d_{m+1}` as invariant factors plus free rank.
/// The top degree is excluded: boundaries from above are unavailable there.
pub fn homology<T: ChainScalar>(
    complex: &ChainComplex<T>,
    m: usize,
) -> Result<HomologyGroup<T>, ChainError> {
    if m >= complex.top_degree() {
        return Err(ChainError::DegreeOutOfRange {
            degree: m,
            top: complex.top_degree(),
        });
    }
    let rank_dm = if m == 0 {
        0
    } else {
        smith_invariant_factors(complex.boundary(m).clone()).len()
    };
    let factors_above = smith_invariant_factors(complex.boundary(m + 1).clone());
    let free_rank = complex.ranks()[m] - rank_dm - factors_above.len();
    let torsion: Vec<T> = factors_above
        .into_iter()
        .filter(|d| *d > T::one())
        .collect();
    Ok(HomologyGroup { free_rank, torsion })
}

/// Normalized chains: degree-m basis is the non-degenerate m-simplices,
/// boundary is the alternating face sum with degenerate targets sent to 0.
/// A `BoundarySquareNonzero` error indicates the input was not simplicial.
pub fn normalized_chains(
    s: &TruncatedSimplicialSet,
) -> Result<ChainComplex<ChainInt>, ChainError> {
    let k = s.truncation();
    let degenerate = s.degenerate_flags();
    // position of each non-degenerate simplex in its degree's basis
    let mut basis_pos: Vec<Vec<Option<usize>>> = Vec::with_capacity(k + 1);
    let mut ranks = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let mut pos = vec![None; s.level_size(m)];
        let mut count = 0;
        for x in 0..s.level_size(m) {
            if !degenerate[m][x] {
                pos[x] = Some(count);
                count += 1;
            }
        }
        ranks.push(count);
        basis_pos.push(pos);
    }
    let mut boundaries = Vec::with_capacity(k);
    for m in 1..=k {
        let mut matrix = IntMatrix::<ChainInt>::zero(ranks[m - 1], ranks[m]);
        for x in 0..s.level_size(m) {
            let Some(col) = basis_pos[m][x] else { continue };
            for i in 0..=m {
                let y = s.face(m, i)[x];
                if let Some(row) = basis_pos[m - 1][y] {
                    let sign = if i % 2 == 0 {
                        ChainInt::one()
                    } else {
                        -ChainInt::one()
                    };
                    let v = matrix.get(row, col).clone() + sign;
                    matrix.set(row, col, v);
                }
            }
        }
        boundaries.push(matrix);
    }
    ChainComplex::new(ranks, boundaries)
}
