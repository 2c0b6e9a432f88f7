use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simplices grouped by dimension; each `k`-simplex is a strictly increasing
/// `(k+1)`-tuple of vertices, and each dimension is sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
  vertex_count: usize,
  faces: Vec<Vec<u32>>,
}

impl SimplicialComplex {
  pub(crate) fn from_sorted_faces(vertex_count: usize, faces: Vec<Vec<u32>>) -> Self { Self { vertex_count, faces } }

  /// Validates an explicit simplex list, which must be closed under faces.
  pub fn from_simplices(simplices: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for mut s in simplices {
      if s.is_empty() {
        continue;
      }
      s.sort_unstable();
      if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::FaceClosure(format!("repeated vertex in {s:?}")));
      }
      let k = s.len() - 1;
      if by_dim.len() <= k {
        by_dim.resize_with(k + 1, BTreeSet::new);
      }
      by_dim[k].insert(s);
    }
    for k in 1..by_dim.len() {
      for s in &by_dim[k] {
        for drop in 0..s.len() {
          let mut face = s.clone();
          face.remove(drop);
          if !by_dim[k - 1].contains(&face) {
            return Err(Error::FaceClosure(format!("{face:?} missing from {s:?}")));
          }
        }
      }
    }
    Ok(Self::collect(by_dim))
  }

  /// All faces of the given facets.
  pub fn closure(facets: impl IntoIterator<Item = Vec<u32>>) -> Self {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for mut f in facets {
      f.sort_unstable();
      f.dedup();
      for mask in 1u64..(1 << f.len()) {
        let s: Vec<u32> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let k = s.len() - 1;
        if by_dim.len() <= k {
          by_dim.resize_with(k + 1, BTreeSet::new);
        }
        by_dim[k].insert(s);
      }
    }
    Self::collect(by_dim)
  }

  fn collect(by_dim: Vec<BTreeSet<Vec<u32>>>) -> Self {
    let vertex_count = by_dim.first().and_then(|v| v.last()).map_or(0, |v| v[0] as usize + 1);
    let faces = by_dim.into_iter().map(|set| set.into_iter().flatten().collect()).collect();
    Self { vertex_count, faces }
  }

  /// Number of vertex slots, including isolated indices of the source poset.
  pub fn vertex_count(&self) -> usize { self.vertex_count }

  /// Top dimension, or `None` for the empty complex.
  pub fn dim(&self) -> Option<usize> { self.faces.iter().rposition(|f| !f.is_empty()) }

  pub fn count(&self, k: usize) -> usize { self.faces.get(k).map_or(0, |f| f.len() / (k + 1)) }

  pub fn f_vector(&self) -> Vec<usize> { (0..self.dim().map_or(0, |d| d + 1)).map(|k| self.count(k)).collect() }

  pub fn simplex(&self, k: usize, i: usize) -> &[u32] { &self.faces[k][i * (k + 1)..(i + 1) * (k + 1)] }

  pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[u32]> {
    self.faces.get(k).map_or(&[][..], Vec::as_slice).chunks_exact(k + 1)
  }

  pub fn all_simplices(&self) -> impl Iterator<Item = &[u32]> {
    self.faces.iter().enumerate().flat_map(|(k, f)| f.chunks_exact(k + 1))
  }

  /// Position of `simplex` within its dimension.
  pub fn find(&self, simplex: &[u32]) -> Option<usize> {
    let k = simplex.len().checked_sub(1)?;
    let flat = self.faces.get(k)?;
    let n = flat.len() / (k + 1);
    let at = |i: usize| &flat[i * (k + 1)..(i + 1) * (k + 1)];
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
      let mid = (lo + hi) / 2;
      match at(mid).cmp(simplex) {
        std::cmp::Ordering::Less => lo = mid + 1,
        std::cmp::Ordering::Equal => return Some(mid),
        std::cmp::Ordering::Greater => hi = mid,
      }
    }
    None
  }

  /// One simplex per line: dimension, then its vertices.
  pub fn to_text(&self) -> String {
    let mut out = String::new();
    for s in self.all_simplices() {
      let _ = write!(out, "{}", s.len() - 1);
      for v in s {
        let _ = write!(out, " {v}");
      }
      out.push('\n');
    }
    out
  }

  pub fn from_text(text: &str) -> Result<Self> {
    let mut simplices = Vec::new();
    for (n, line) in text.lines().enumerate() {
      let line = line.trim();
      if line.is_empty() {
        continue;
      }
      let nums = line
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1))))
        .collect::<Result<Vec<u32>>>()?;
      let (&k, verts) = nums.split_first().expect("line is non-empty");
      if verts.len() != k as usize + 1 {
        return Err(Error::Parse(format!("line {}: dimension {k} with {} vertices", n + 1, verts.len())));
      }
      simplices.push(verts.to_vec());
    }
    Self::from_simplices(simplices)
  }
}
