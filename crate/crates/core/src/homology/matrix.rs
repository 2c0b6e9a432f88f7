//! Sparse integer matrices and their Smith normal form.
//!
//! Unit pivots are eliminated first with unimodular column and row
//! operations, which preserves invariant factors; whatever is left has no
//! unit entry and goes through a dense arbitrary-precision reduction.

use std::fmt::{self, Debug, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

/// Integer coefficients usable in elimination. Fixed-width types report
/// overflow through the checked operations.
pub trait Coefficient:
  Clone + Debug + Send + Sync + Signed + Integer + CheckedMul + CheckedSub + Into<BigInt> + fmt::Display
{
}

impl<T> Coefficient for T where
  T: Clone + Debug + Send + Sync + Signed + Integer + CheckedMul + CheckedSub + Into<BigInt> + fmt::Display
{
}

/// Column-major sparse matrix; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
  rows: usize,
  columns: Vec<Vec<(u32, T)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

impl<T: Coefficient> SparseMatrix<T> {
  pub fn zeros(rows: usize, cols: usize) -> Self { Self { rows, columns: vec![Vec::new(); cols] } }

  /// Builds from unsorted columns, summing repeated rows and dropping zeros.
  pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, T)>>) -> Self {
    let columns = columns
      .into_iter()
      .map(|mut col| {
        assert!(col.iter().all(|&(r, _)| (r as usize) < rows), "row index out of range");
        col.sort_by_key(|e| e.0);
        let mut out: Vec<(u32, T)> = Vec::with_capacity(col.len());
        for (r, v) in col {
          match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = lv.clone() + v,
            _ => out.push((r, v)),
          }
        }
        out.retain(|(_, v)| !v.is_zero());
        out
      })
      .collect();
    Self { rows, columns }
  }

  pub fn from_dense(rows: &[Vec<T>]) -> Self {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let columns = (0..ncols)
      .map(|c| (0..nrows).filter(|&r| !rows[r][c].is_zero()).map(|r| (r as u32, rows[r][c].clone())).collect())
      .collect();
    Self { rows: nrows, columns }
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.columns.len() }

  pub fn nnz(&self) -> usize { self.columns.iter().map(Vec::len).sum() }

  pub fn column(&self, c: usize) -> &[(u32, T)] { &self.columns[c] }

  pub fn get(&self, r: usize, c: usize) -> T {
    let col = &self.columns[c];
    col.binary_search_by_key(&(r as u32), |e| e.0).map_or_else(|_| T::zero(), |i| col[i].1.clone())
  }

  pub fn push_column(&mut self, col: Vec<(u32, T)>) {
    let m = Self::from_columns(self.rows, vec![col]);
    self.columns.extend(m.columns);
  }

  /// `M x` for a sparse `x` given as `(column, value)` pairs.
  pub fn apply(&self, x: &[(u32, T)]) -> Vec<(u32, T)> {
    let mut acc: Vec<(u32, T)> = Vec::new();
    for (c, xv) in x {
      for (r, v) in &self.columns[*c as usize] {
        acc.push((*r, v.clone() * xv.clone()));
      }
    }
    Self::from_columns(self.rows, vec![acc]).columns.pop().unwrap_or_default()
  }

  pub fn to_bigint(&self) -> SparseMatrix<BigInt> {
    SparseMatrix {
      rows: self.rows,
      columns: self.columns.iter().map(|c| c.iter().map(|(r, v)| (*r, v.clone().into())).collect()).collect(),
    }
  }

  /// `row col value` per non-zero entry, column-major.
  pub fn to_coordinate_text(&self) -> String {
    let mut out = String::new();
    for (c, col) in self.columns.iter().enumerate() {
      for (r, v) in col {
        let _ = writeln!(out, "{r} {c} {v}");
      }
    }
    out
  }

  /// Eliminates unit pivots. Returns the number of pivots and the remaining
  /// non-zero columns, whose invariant factors complete those of `self`.
  pub fn eliminate_units(&self) -> Result<(usize, Vec<Vec<(u32, T)>>), Overflow> {
    let mut cols = self.columns.clone();
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); self.rows];
    for (c, col) in cols.iter().enumerate() {
      for (r, _) in col {
        occ[*r as usize].push(c as u32);
      }
    }
    let mut alive = vec![true; cols.len()];
    let mut pivots = 0;
    loop {
      let mut progress = false;
      for c in 0..cols.len() {
        if !alive[c] || cols[c].is_empty() {
          continue;
        }
        let Some((prow, pval)) = cols[c]
          .iter()
          .filter(|(_, v)| v.abs().is_one())
          .min_by_key(|(r, _)| occ[*r as usize].len())
          .map(|(r, v)| (*r, v.clone()))
        else {
          continue;
        };
        let pivot_col = std::mem::take(&mut cols[c]);
        alive[c] = false;
        pivots += 1;
        progress = true;
        for j in std::mem::take(&mut occ[prow as usize]) {
          let j = j as usize;
          if !alive[j] {
            continue;
          }
          let Ok(at) = cols[j].binary_search_by_key(&prow, |e| e.0) else { continue };
          // pivot is a unit, so it is its own inverse
          let factor = cols[j][at].1.clone() * pval.clone();
          let (merged, fresh) = axpy_column(&cols[j], &factor, &pivot_col)?;
          cols[j] = merged;
          for r in fresh {
            occ[r as usize].push(j as u32);
          }
        }
      }
      if !progress {
        break;
      }
    }
    let rest = cols.into_iter().zip(alive).filter(|(c, a)| *a && !c.is_empty()).map(|(c, _)| c).collect();
    Ok((pivots, rest))
  }
}

/// `a - f b` on sorted sparse columns, with the rows newly introduced.
fn axpy_column<T: Coefficient>(a: &[(u32, T)], f: &T, b: &[(u32, T)]) -> Result<(Vec<(u32, T)>, Vec<u32>), Overflow> {
  let mut out = Vec::with_capacity(a.len() + b.len());
  let mut fresh = Vec::new();
  let (mut i, mut j) = (0, 0);
  while i < a.len() || j < b.len() {
    let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
    let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
    if take_a {
      out.push(a[i].clone());
      i += 1;
    } else if take_b {
      let v = f.checked_mul(&b[j].1).ok_or(Overflow)?;
      out.push((b[j].0, T::zero().checked_sub(&v).ok_or(Overflow)?));
      fresh.push(b[j].0);
      j += 1;
    } else {
      let v = a[i].1.checked_sub(&f.checked_mul(&b[j].1).ok_or(Overflow)?).ok_or(Overflow)?;
      if !v.is_zero() {
        out.push((a[i].0, v));
      }
      i += 1;
      j += 1;
    }
  }
  Ok((out, fresh))
}

/// Invariant factors of a matrix: `rank` non-zero factors, all equal to one
/// except `torsion`, which lists those above one in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
  pub rank: usize,
  pub torsion: Vec<BigInt>,
}

impl SmithForm {
  pub fn factors(&self) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(); self.rank - self.torsion.len()];
    f.extend(self.torsion.iter().cloned());
    f
  }

  /// Product of the non-zero invariant factors.
  pub fn determinant_divisor(&self) -> BigInt { self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d) }
}

/// Smith normal form, retrying in arbitrary precision on overflow.
pub fn smith_normal_form<T: Coefficient>(m: &SparseMatrix<T>) -> SmithForm {
  match m.eliminate_units() {
    Ok((pivots, rest)) => finish(pivots, rest.into_iter().map(|c| c.into_iter().map(|(r, v)| (r, v.into())).collect())),
    Err(Overflow) => {
      let (pivots, rest) = m.to_bigint().eliminate_units().expect("arbitrary precision does not overflow");
      finish(pivots, rest.into_iter())
    }
  }
}

fn finish(pivots: usize, rest: impl Iterator<Item = Vec<(u32, BigInt)>>) -> SmithForm {
  let rest: Vec<Vec<(u32, BigInt)>> = rest.collect();
  let mut rows: Vec<u32> = rest.iter().flatten().map(|e| e.0).collect();
  rows.sort_unstable();
  rows.dedup();
  let mut dense = vec![vec![BigInt::zero(); rest.len()]; rows.len()];
  for (c, col) in rest.iter().enumerate() {
    for (r, v) in col {
      let ri = rows.binary_search(r).expect("row collected above");
      dense[ri][c] = v.clone();
    }
  }
  let diag = dense_smith(dense);
  let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
  SmithForm { rank: pivots + diag.len(), torsion }
}

/// Non-zero invariant factors of a dense matrix, by repeated reduction
/// against an entry of least absolute value.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
  let m = a.len();
  let n = a.first().map_or(0, Vec::len);
  let mut diag = Vec::new();
  for t in 0..m.min(n) {
    loop {
      let Some((pr, pc)) = (t..m)
        .flat_map(|r| (t..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !a[r][c].is_zero())
        .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].abs().cmp(&a[r2][c2].abs()))
      else {
        return finalize(diag);
      };
      a.swap(t, pr);
      for row in a.iter_mut() {
        row.swap(t, pc);
      }
      let p = a[t][t].clone();
      let mut clean = true;
      for r in t + 1..m {
        if a[r][t].is_zero() {
          continue;
        }
        let q = a[r][t].div_floor(&p);
        for c in t..n {
          let v = &a[t][c] * &q;
          a[r][c] -= v;
        }
        clean &= a[r][t].is_zero();
      }
      for c in t + 1..n {
        if a[t][c].is_zero() {
          continue;
        }
        let q = a[t][c].div_floor(&p);
        for row in a.iter_mut().skip(t) {
          let v = &row[t] * &q;
          row[c] -= v;
        }
        clean &= a[t][c].is_zero();
      }
      if !clean {
        continue;
      }
      if let Some(r) = (t + 1..m).find(|&r| (t + 1..n).any(|c| !a[r][c].is_multiple_of(&p))) {
        // fold the offending row in so that a smaller remainder appears
        for c in t..n {
          let v = a[r][c].clone();
          a[t][c] += v;
        }
        continue;
      }
      diag.push(p.abs());
      break;
    }
  }
  finalize(diag)
}

fn finalize(mut diag: Vec<BigInt>) -> Vec<BigInt> {
  diag.sort();
  diag
}

#[cfg(test)]
mod tests {
  use super::*;

  fn big(xs: &[i64]) -> Vec<BigInt> { xs.iter().map(|&x| BigInt::from(x)).collect() }

  #[test]
  fn small_examples() {
    let id = SparseMatrix::<i64>::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(smith_normal_form(&id).factors(), big(&[1, 1, 1]));
    let m = SparseMatrix::<i64>::from_dense(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_normal_form(&m).factors(), big(&[2, 4]));
    let z = SparseMatrix::<i64>::zeros(3, 2);
    assert_eq!(smith_normal_form(&z), SmithForm { rank: 0, torsion: vec![] });
  }

  #[test]
  fn divisibility_chain_is_restored() {
    let m = SparseMatrix::<i64>::from_dense(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(smith_normal_form(&m).factors(), big(&[1, 6]));
    let m = SparseMatrix::<i64>::from_dense(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
    assert_eq!(smith_normal_form(&m).factors(), big(&[2, 2, 60]));
  }

  #[test]
  fn overflow_falls_back_to_big_integers() {
    let huge = i64::MAX / 2;
    let m = SparseMatrix::<i64>::from_dense(&[vec![1, huge, 0], vec![huge, 0, 1], vec![0, 1, huge]]);
    let big_m = m.to_bigint();
    let exact = smith_normal_form(&big_m);
    assert_eq!(smith_normal_form(&m), exact);
    assert_eq!(exact.rank, 3);
  }

  #[test]
  fn coordinate_text() {
    let m = SparseMatrix::<i64>::from_dense(&[vec![0, -1], vec![3, 0]]);
    assert_eq!(m.to_coordinate_text(), "1 0 3\n0 1 -1\n");
    assert_eq!(m.nnz(), 2);
    assert_eq!(m.apply(&[(0, 2), (1, 1)]), vec![(0, -1), (1, 6)]);
  }
}
