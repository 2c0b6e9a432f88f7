//! Exact linear algebra over a prime field `F_p`.
//!
//! Subspaces are always kept in reduced row-echelon form with the leftmost-pivot
//! convention, so two equal subspaces have bitwise-equal representations and can
//! be used directly as hash keys.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted. Residues are stored as `u8`.
pub const MAX_PRIME: u32 = 97;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
  p: u8,
}

impl FieldSpec {
  pub fn new(p: u32) -> Result<Self> {
    if p < 2 || !is_prime(p) {
      return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
      return Err(Error::Guard(format!("modulus {p} exceeds the supported bound {MAX_PRIME}")));
    }
    Ok(Self { p: p as u8 })
  }

  #[inline]
  pub fn p(self) -> u32 { self.p as u32 }

  #[inline]
  pub fn add(self, a: u8, b: u8) -> u8 { ((a as u16 + b as u16) % self.p as u16) as u8 }

  #[inline]
  pub fn sub(self, a: u8, b: u8) -> u8 {
    ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
  }

  #[inline]
  pub fn mul(self, a: u8, b: u8) -> u8 { ((a as u16 * b as u16) % self.p as u16) as u8 }

  #[inline]
  pub fn neg(self, a: u8) -> u8 { if a == 0 { 0 } else { self.p - a } }

  /// Multiplicative inverse by Fermat; `a` must be non-zero.
  pub fn inv(self, a: u8) -> u8 {
    debug_assert!(a % self.p != 0);
    let mut result = 1u8;
    let mut base = a % self.p;
    let mut e = self.p as u32 - 2;
    while e > 0 {
      if e & 1 == 1 {
        result = self.mul(result, base);
      }
      base = self.mul(base, base);
      e >>= 1;
    }
    result
  }

  /// Reduces an arbitrary integer into `[0, p)`.
  pub fn residue(self, x: i64) -> u8 { x.rem_euclid(self.p as i64) as u8 }
}

pub fn is_prime(n: u32) -> bool {
  if n < 2 {
    return false;
  }
  let mut d = 2;
  while d * d <= n {
    if n % d == 0 {
      return false;
    }
    d += 1;
  }
  true
}

/// A vector of `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
  coords: Vec<u8>,
}

impl FpVector {
  pub fn zero(n: usize) -> Self { Self { coords: vec![0; n] } }

  pub fn unit(n: usize, i: usize) -> Self {
    let mut v = Self::zero(n);
    v.coords[i] = 1;
    v
  }

  /// Builds a vector from integers, reducing each coordinate mod `p`.
  pub fn from_ints(field: FieldSpec, xs: &[i64]) -> Self {
    Self { coords: xs.iter().map(|&x| field.residue(x)).collect() }
  }

  /// Builds a vector from residues that are already reduced.
  pub fn from_residues(field: FieldSpec, coords: Vec<u8>) -> Result<Self> {
    if let Some(&c) = coords.iter().find(|&&c| c as u32 >= field.p()) {
      return Err(Error::Parse(format!("coordinate {c} is not a residue mod {}", field.p())));
    }
    Ok(Self { coords })
  }

  #[inline]
  pub(crate) fn from_residues_unchecked(coords: Vec<u8>) -> Self { Self { coords } }

  pub fn dim(&self) -> usize { self.coords.len() }

  #[inline]
  pub fn coords(&self) -> &[u8] { &self.coords }

  #[inline]
  pub fn get(&self, i: usize) -> u8 { self.coords[i] }

  pub fn is_zero(&self) -> bool { self.coords.iter().all(|&c| c == 0) }

  pub fn add(&self, field: FieldSpec, other: &Self) -> Self {
    debug_assert_eq!(self.dim(), other.dim());
    Self { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| field.add(a, b)).collect() }
  }

  pub fn sub(&self, field: FieldSpec, other: &Self) -> Self {
    debug_assert_eq!(self.dim(), other.dim());
    Self { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| field.sub(a, b)).collect() }
  }

  pub fn neg(&self, field: FieldSpec) -> Self {
    Self { coords: self.coords.iter().map(|&a| field.neg(a)).collect() }
  }

  pub fn scale(&self, field: FieldSpec, s: u8) -> Self {
    Self { coords: self.coords.iter().map(|&a| field.mul(a, s)).collect() }
  }

  /// `self + s * other`
  pub fn axpy(&self, field: FieldSpec, s: u8, other: &Self) -> Self {
    Self {
      coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| field.add(a, field.mul(s, b))).collect(),
    }
  }

  /// Position of the first non-zero coordinate.
  pub fn leading(&self) -> Option<usize> { self.coords.iter().position(|&c| c != 0) }

  /// Dense index of this vector in `0..p^n` (first coordinate most significant).
  pub fn index(&self, field: FieldSpec) -> usize {
    self.coords.iter().fold(0usize, |acc, &c| acc * field.p() as usize + c as usize)
  }

  /// Inverse of [`FpVector::index`].
  pub fn from_index(field: FieldSpec, n: usize, mut index: usize) -> Self {
    let p = field.p() as usize;
    let mut coords = vec![0u8; n];
    for slot in coords.iter_mut().rev() {
      *slot = (index % p) as u8;
      index /= p;
    }
    Self { coords }
  }

  /// Iterates over every vector of `F_p^n` in index order.
  pub fn all(field: FieldSpec, n: usize) -> impl Iterator<Item = FpVector> {
    let total = (field.p() as usize).pow(n as u32);
    (0..total).map(move |i| FpVector::from_index(field, n, i))
  }
}

impl fmt::Display for FpVector {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in self.coords.iter().enumerate() {
      if i > 0 {
        write!(f, ",")?;
      }
      write!(f, "{c}")?;
    }
    write!(f, ")")
  }
}

/// A subspace of `F_p^n` stored by its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
  ambient_dim: usize,
  basis: Vec<FpVector>,
}

impl Subspace {
  pub fn zero(ambient_dim: usize) -> Self { Self { ambient_dim, basis: Vec::new() } }

  pub fn full(ambient_dim: usize) -> Self {
    Self { ambient_dim, basis: (0..ambient_dim).map(|i| FpVector::unit(ambient_dim, i)).collect() }
  }

  /// Canonical span of `vectors`. An empty list gives the zero subspace.
  pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[FpVector]) -> Result<Self> {
    if let Some(v) = vectors.iter().find(|v| v.dim() != ambient_dim) {
      return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.dim() });
    }
    let mut rows: Vec<FpVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    rref(field, &mut rows);
    Ok(Self { ambient_dim, basis: rows })
  }

  /// Wraps rows that are known to be in canonical form already.
  pub(crate) fn from_rref_unchecked(ambient_dim: usize, basis: Vec<FpVector>) -> Self { Self { ambient_dim, basis } }

  #[inline]
  pub fn ambient_dim(&self) -> usize { self.ambient_dim }

  #[inline]
  pub fn dim(&self) -> usize { self.basis.len() }

  #[inline]
  pub fn basis(&self) -> &[FpVector] { &self.basis }

  pub fn is_zero(&self) -> bool { self.basis.is_empty() }

  pub fn pivots(&self) -> Vec<usize> {
    self.basis.iter().map(|row| row.leading().expect("canonical rows are non-zero")).collect()
  }

  fn check_dim(&self, n: usize) -> Result<()> {
    if self.ambient_dim != n {
      return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: n });
    }
    Ok(())
  }

  /// Canonical coset representative of `v + self`: `v` with its pivot-column
  /// coordinates eliminated.
  pub fn reduce(&self, field: FieldSpec, v: &FpVector) -> Result<FpVector> {
    self.check_dim(v.dim())?;
    Ok(self.reduce_unchecked(field, v))
  }

  pub(crate) fn reduce_unchecked(&self, field: FieldSpec, v: &FpVector) -> FpVector {
    let mut out = v.clone();
    for row in &self.basis {
      let pivot = row.leading().unwrap();
      let c = out.coords[pivot];
      if c != 0 {
        out = out.axpy(field, field.neg(c), row);
      }
    }
    out
  }

  pub fn member(&self, field: FieldSpec, v: &FpVector) -> Result<bool> { Ok(self.reduce(field, v)?.is_zero()) }

  pub fn contains(&self, field: FieldSpec, other: &Subspace) -> Result<bool> {
    self.check_dim(other.ambient_dim)?;
    Ok(other.basis.iter().all(|v| self.reduce_unchecked(field, v).is_zero()))
  }

  pub fn sum(&self, field: FieldSpec, other: &Subspace) -> Result<Subspace> {
    self.check_dim(other.ambient_dim)?;
    let rows: Vec<FpVector> = self.basis.iter().chain(&other.basis).cloned().collect();
    Subspace::span(field, self.ambient_dim, &rows)
  }

  /// Span of `self` together with extra vectors.
  pub fn extend(&self, field: FieldSpec, extra: &[FpVector]) -> Result<Subspace> {
    let rows: Vec<FpVector> = self.basis.iter().chain(extra).cloned().collect();
    Subspace::span(field, self.ambient_dim, &rows)
  }

  /// Intersection via the kernel of `[A; B]^T`: a relation `x A + y B = 0`
  /// gives the common vector `x A`.
  pub fn intersection(&self, field: FieldSpec, other: &Subspace) -> Result<Subspace> {
    self.check_dim(other.ambient_dim)?;
    let stacked: Vec<FpVector> = self.basis.iter().chain(&other.basis).cloned().collect();
    let relations = left_kernel(field, &stacked, self.ambient_dim);
    let common: Vec<FpVector> = relations
      .iter()
      .map(|rel| {
        let mut acc = FpVector::zero(self.ambient_dim);
        for (i, row) in self.basis.iter().enumerate() {
          if rel.coords[i] != 0 {
            acc = acc.axpy(field, rel.coords[i], row);
          }
        }
        acc
      })
      .collect();
    Subspace::span(field, self.ambient_dim, &common)
  }

  /// Image of this subspace under a linear map given as a function on vectors.
  pub fn image<F>(&self, field: FieldSpec, target_dim: usize, f: F) -> Result<Subspace>
  where F: Fn(&FpVector) -> FpVector {
    let rows: Vec<FpVector> = self.basis.iter().map(f).collect();
    Subspace::span(field, target_dim, &rows)
  }

  /// All elements of the subspace, in the order of their coefficient tuples.
  pub fn elements(&self, field: FieldSpec) -> Vec<FpVector> {
    FpVector::all(field, self.dim())
      .map(|coeffs| {
        let mut acc = FpVector::zero(self.ambient_dim);
        for (i, row) in self.basis.iter().enumerate() {
          if coeffs.coords[i] != 0 {
            acc = acc.axpy(field, coeffs.coords[i], row);
          }
        }
        acc
      })
      .collect()
  }

  /// Writes the basis in the line-oriented text format.
  pub fn to_text(&self) -> String {
    let mut s = String::new();
    for row in &self.basis {
      for c in &row.coords {
        s.push(char::from_digit(*c as u32, 36).unwrap());
      }
      s.push('\n');
    }
    s.push('\n');
    s
  }

  /// Parses the text format: one basis row per line, digits `0..p-1`, a blank
  /// line (or end of input) terminates. The rows are canonicalized.
  pub fn from_text(field: FieldSpec, ambient_dim: usize, text: &str) -> Result<Subspace> {
    let rows = parse_rows(field, text)?;
    if let Some(row) = rows.iter().find(|r| r.dim() != ambient_dim) {
      return Err(Error::DimensionMismatch { expected: ambient_dim, found: row.dim() });
    }
    Subspace::span(field, ambient_dim, &rows)
  }
}

/// Parses digit rows until the first blank line.
pub fn parse_rows(field: FieldSpec, text: &str) -> Result<Vec<FpVector>> {
  let mut rows = Vec::new();
  for line in text.lines() {
    let line = line.trim();
    if line.is_empty() {
      break;
    }
    let coords = line
      .chars()
      .filter(|c| !c.is_whitespace())
      .map(|c| c.to_digit(36).map(|d| d as u8).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
      .collect::<Result<Vec<u8>>>()?;
    rows.push(FpVector::from_residues(field, coords)?);
  }
  Ok(rows)
}

/// In-place reduction to reduced row-echelon form; zero rows are dropped.
fn rref(field: FieldSpec, rows: &mut Vec<FpVector>) {
  let n = rows.first().map_or(0, |r| r.dim());
  let mut pivot_row = 0;
  for col in 0..n {
    let Some(found) = (pivot_row..rows.len()).find(|&i| rows[i].coords[col] != 0) else { continue };
    rows.swap(pivot_row, found);
    let inv = field.inv(rows[pivot_row].coords[col]);
    rows[pivot_row] = rows[pivot_row].scale(field, inv);
    let pivot = rows[pivot_row].clone();
    for (i, row) in rows.iter_mut().enumerate() {
      if i != pivot_row && row.coords[col] != 0 {
        let c = row.coords[col];
        *row = row.axpy(field, field.neg(c), &pivot);
      }
    }
    pivot_row += 1;
    if pivot_row == rows.len() {
      break;
    }
  }
  rows.truncate(pivot_row);
}

/// Basis of `{x : sum_i x_i rows_i = 0}`.
fn left_kernel(field: FieldSpec, rows: &[FpVector], n: usize) -> Vec<FpVector> {
  let m = rows.len();
  // Augment each row with an identity block, reduce on the left block.
  let mut aug: Vec<FpVector> = rows
    .iter()
    .enumerate()
    .map(|(i, r)| {
      let mut coords = r.coords.clone();
      coords.extend((0..m).map(|j| u8::from(i == j)));
      FpVector { coords }
    })
    .collect();
  rref(field, &mut aug);
  // rows whose left block vanished record the relations
  aug
    .into_iter()
    .filter(|row| row.leading().is_some_and(|l| l >= n))
    .map(|row| FpVector { coords: row.coords[n..].to_vec() })
    .collect()
}

/// The common kernel `{w : <f, w> = 0 for every f}` of a list of functionals.
pub fn common_kernel(field: FieldSpec, functionals: &[FpVector], n: usize) -> Result<Subspace> {
  if let Some(f) = functionals.iter().find(|f| f.dim() != n) {
    return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
  }
  let k = functionals.len();
  let columns: Vec<FpVector> =
    (0..n).map(|c| FpVector { coords: functionals.iter().map(|f| f.coords[c]).collect() }).collect();
  let kernel = left_kernel(field, &columns, k);
  Subspace::span(field, n, &kernel)
}

/// The linear map `V -> V/A` in coordinates: the non-pivot columns of the
/// canonical reduction modulo `A`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
  field: FieldSpec,
  kernel: Subspace,
  free_columns: Vec<usize>,
}

impl QuotientMap {
  pub fn new(field: FieldSpec, kernel: Subspace) -> Self {
    let pivots = kernel.pivots();
    let free_columns = (0..kernel.ambient_dim()).filter(|c| !pivots.contains(c)).collect();
    Self { field, kernel, free_columns }
  }

  pub fn source_dim(&self) -> usize { self.kernel.ambient_dim() }

  pub fn target_dim(&self) -> usize { self.free_columns.len() }

  pub fn kernel(&self) -> &Subspace { &self.kernel }

  pub fn apply(&self, v: &FpVector) -> Result<FpVector> {
    let reduced = self.kernel.reduce(self.field, v)?;
    Ok(FpVector { coords: self.free_columns.iter().map(|&c| reduced.coords[c]).collect() })
  }

  /// Image `(B + A)/A` of a subspace `B`.
  pub fn apply_subspace(&self, b: &Subspace) -> Result<Subspace> {
    let rows = b.basis().iter().map(|v| self.apply(v)).collect::<Result<Vec<_>>>()?;
    Subspace::span(self.field, self.target_dim(), &rows)
  }
}

/// Every subspace of `F_p^n` of dimension `k`, enumerated by pivot set and
/// then by free entries. The output is canonical and sorted.
pub fn subspaces_of_dim(field: FieldSpec, n: usize, k: usize) -> Vec<Subspace> {
  let mut out = Vec::new();
  if k > n {
    return out;
  }
  for pivots in combinations(n, k) {
    // free slots: (row i, column c) with c > pivots[i], c not a pivot
    let slots: Vec<(usize, usize)> = (0..k)
      .flat_map(|i| ((pivots[i] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
      .collect();
    for fill in FpVector::all(field, slots.len()) {
      let mut rows: Vec<FpVector> = pivots.iter().map(|&c| FpVector::unit(n, c)).collect();
      for (s, &(i, c)) in slots.iter().enumerate() {
        rows[i].coords[c] = fill.coords[s];
      }
      out.push(Subspace::from_rref_unchecked(n, rows));
    }
  }
  out.sort();
  out
}

/// Every subspace of `F_p^n`, grouped by dimension.
pub fn all_subspaces(field: FieldSpec, n: usize) -> Vec<Subspace> {
  (0..=n).flat_map(|k| subspaces_of_dim(field, n, k)).collect()
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
  fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
      out.push(cur.clone());
      return;
    }
    for i in start..n {
      cur.push(i);
      rec(i + 1, n, k, cur, out);
      cur.pop();
    }
  }
  let mut out = Vec::new();
  rec(0, n, k, &mut Vec::new(), &mut out);
  out
}

#[cfg(test)]
mod tests {
  use super::*;

  fn f(p: u32) -> FieldSpec { FieldSpec::new(p).unwrap() }

  fn v(field: FieldSpec, xs: &[i64]) -> FpVector { FpVector::from_ints(field, xs) }

  #[test]
  fn rejects_composite_modulus() {
    assert!(matches!(FieldSpec::new(4), Err(Error::NotPrime(4))));
    assert!(FieldSpec::new(1).is_err());
    assert!(FieldSpec::new(101).is_err());
  }

  #[test]
  fn canonicalize_examples() {
    let f2 = f(2);
    assert_eq!(Subspace::span(f2, 4, &[]).unwrap(), Subspace::zero(4));
    let s = Subspace::span(f2, 4, &[v(f2, &[1, 1, 0, 0]), v(f2, &[0, 1, 1, 0])]).unwrap();
    assert_eq!(s.basis(), &[v(f2, &[1, 0, 1, 0]), v(f2, &[0, 1, 1, 0])]);
    let f3 = f(3);
    let s = Subspace::span(f3, 2, &[v(f3, &[1, 0]), v(f3, &[2, 0])]).unwrap();
    assert_eq!(s.basis(), &[v(f3, &[1, 0])]);
  }

  #[test]
  fn dimension_mismatch_is_reported() {
    let f2 = f(2);
    let err = Subspace::span(f2, 3, &[v(f2, &[1, 0])]).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 2 }));
    let a = Subspace::full(2);
    assert!(a.reduce(f2, &v(f2, &[1, 0, 0])).is_err());
    assert!(a.sum(f2, &Subspace::zero(3)).is_err());
  }

  #[test]
  fn subspace_algebra_examples() {
    let f2 = f(2);
    let e = |i| FpVector::unit(4, i);
    let l1 = Subspace::span(f2, 4, &[e(0)]).unwrap();
    let l2 = Subspace::span(f2, 4, &[e(1)]).unwrap();
    assert_eq!(l1.sum(f2, &l2).unwrap(), Subspace::span(f2, 4, &[e(0), e(1)]).unwrap());
    let a = Subspace::span(f2, 4, &[e(0), e(1)]).unwrap();
    let b = Subspace::span(f2, 4, &[e(1), e(2)]).unwrap();
    assert_eq!(a.intersection(f2, &b).unwrap(), l2);
    let f3 = f(3);
    let diag = Subspace::span(f3, 2, &[v(f3, &[1, 1])]).unwrap();
    assert!(diag.member(f3, &v(f3, &[1, 1])).unwrap());
    assert!(diag.member(f3, &v(f3, &[2, 2])).unwrap());
    assert!(!diag.member(f3, &v(f3, &[1, 2])).unwrap());
  }

  #[test]
  fn reduce_mod_examples() {
    let f2 = f(2);
    let a = Subspace::span(f2, 4, &[v(f2, &[1, 0, 1, 0])]).unwrap();
    assert!(a.reduce(f2, &v(f2, &[1, 0, 1, 0])).unwrap().is_zero());
    let b = Subspace::span(f2, 4, &[v(f2, &[1, 0, 0, 0])]).unwrap();
    assert_eq!(b.reduce(f2, &v(f2, &[1, 1, 0, 0])).unwrap(), v(f2, &[0, 1, 0, 0]));
    let f3 = f(3);
    assert_eq!(Subspace::zero(2).reduce(f3, &v(f3, &[2, 1])).unwrap(), v(f3, &[2, 1]));
  }

  #[test]
  fn quotient_examples() {
    let f2 = f(2);
    let id = QuotientMap::new(f2, Subspace::zero(3));
    for x in FpVector::all(f2, 3) {
      assert_eq!(id.apply(&x).unwrap(), x);
    }
    let e1 = Subspace::span(f2, 2, &[FpVector::unit(2, 0)]).unwrap();
    let q = QuotientMap::new(f2, e1);
    assert_eq!(q.target_dim(), 1);
    assert_eq!(q.apply(&FpVector::unit(2, 1)).unwrap(), FpVector::unit(1, 0));
    let diag = Subspace::span(f2, 2, &[v(f2, &[1, 1])]).unwrap();
    assert_eq!(q.apply_subspace(&diag).unwrap(), Subspace::full(1));
  }

  #[test]
  fn text_format_roundtrip() {
    let f3 = f(3);
    let s = Subspace::span(f3, 3, &[v(f3, &[1, 2, 0]), v(f3, &[0, 1, 1])]).unwrap();
    let text = s.to_text();
    assert_eq!(Subspace::from_text(f3, 3, &text).unwrap(), s);
    assert!(Subspace::from_text(f3, 3, "103\n").is_err());
    assert!(Subspace::from_text(f3, 3, "10\n").is_err());
  }

  #[test]
  fn subspace_counts_are_gaussian_binomials() {
    // [4 choose 2]_2 = 35, [3 choose 1]_3 = 13
    assert_eq!(subspaces_of_dim(f(2), 4, 2).len(), 35);
    assert_eq!(subspaces_of_dim(f(3), 3, 1).len(), 13);
    assert_eq!(all_subspaces(f(2), 3).len(), 1 + 7 + 7 + 1);
  }

  #[test]
  fn dimension_formula_exhaustive() {
    for p in [2, 3] {
      let field = f(p);
      for n in 1..=(if p == 2 { 4 } else { 3 }) {
        let subs = all_subspaces(field, n);
        for a in &subs {
          for b in &subs {
            let s = a.sum(field, b).unwrap();
            let i = a.intersection(field, b).unwrap();
            assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            assert!(s.contains(field, a).unwrap() && a.contains(field, &i).unwrap());
          }
        }
      }
    }
  }

  #[test]
  fn coset_representatives_count() {
    let field = f(3);
    for a in all_subspaces(field, 3) {
      let reps: std::collections::HashSet<FpVector> =
        FpVector::all(field, 3).map(|x| a.reduce(field, &x).unwrap()).collect();
      assert_eq!(reps.len(), 3usize.pow(3 - a.dim() as u32));
    }
  }

  fn vectors(p: u32, n: usize, count: usize) -> impl proptest::strategy::Strategy<Value = Vec<FpVector>> {
    use proptest::prelude::*;
    prop::collection::vec(prop::collection::vec(0..p as u8, n), 0..=count)
      .prop_map(move |rows| rows.into_iter().map(|c| FpVector { coords: c }).collect())
  }

  proptest::proptest! {
    #[test]
    fn index_roundtrip(coords in proptest::collection::vec(0u8..3, 0..6)) {
      let f = FieldSpec::new(3).unwrap();
      let v = FpVector { coords };
      proptest::prop_assert_eq!(FpVector::from_index(f, v.dim(), v.index(f)), v);
    }

    #[test]
    fn dimension_formula(a in vectors(3, 4, 4), b in vectors(3, 4, 4)) {
      let f = FieldSpec::new(3).unwrap();
      let (a, b) = (Subspace::span(f, 4, &a).unwrap(), Subspace::span(f, 4, &b).unwrap());
      let (sum, meet) = (a.sum(f, &b).unwrap(), a.intersection(f, &b).unwrap());
      proptest::prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
      proptest::prop_assert!(sum.contains(f, &a).unwrap() && a.contains(f, &meet).unwrap() && b.contains(f, &meet).unwrap());
    }
  }
}
