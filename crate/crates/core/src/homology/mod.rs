//! Integer simplicial homology of order complexes.

mod matrix;
mod pi1;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

pub use matrix::{dense_smith, smith_normal_form, Coefficient, Overflow, SmithForm, SparseMatrix};
pub use pi1::{pi1_report, Pi1Outcome, Pi1Report, TIETZE_BUDGET};

use crate::error::{Error, Result};
use crate::posets::{JVertex, Poset, PosetMap, SimplicialComplex};

/// Boundary matrices `d_k: C_k -> C_{k-1}` of a simplicial complex, with
/// `d_{k-1} d_k = 0` checked at construction.
#[derive(Clone, Debug)]
pub struct ChainComplex {
  complex: SimplicialComplex,
  boundaries: Vec<SparseMatrix<i64>>,
}

impl ChainComplex {
  pub fn new(complex: SimplicialComplex) -> Result<Self> {
    let top = complex.dim().map_or(0, |d| d + 1);
    let boundaries: Vec<SparseMatrix<i64>> = (1..top)
      .into_par_iter()
      .map(|k| {
        let columns = complex
          .simplices(k)
          .map(|s| {
            (0..=k)
              .map(|i| {
                let face: Vec<u32> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                let row = complex.find(&face).ok_or_else(|| Error::FaceClosure(format!("{face:?} of {s:?}")))?;
                Ok((row as u32, if i % 2 == 0 { 1 } else { -1 }))
              })
              .collect::<Result<Vec<_>>>()
          })
          .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(complex.count(k - 1), columns))
      })
      .collect::<Result<Vec<_>>>()?;
    let cc = Self { complex, boundaries };
    for k in 2..top {
      let (outer, inner) = (cc.boundary(k - 1), cc.boundary(k));
      if (0..inner.cols()).any(|c| !outer.apply(inner.column(c)).is_empty()) {
        return Err(Error::FaceClosure(format!("boundary squares to non-zero in degree {k}")));
      }
    }
    Ok(cc)
  }

  pub fn complex(&self) -> &SimplicialComplex { &self.complex }

  /// `d_k` for `k >= 1`; empty beyond the top dimension.
  pub fn boundary(&self, k: usize) -> &SparseMatrix<i64> { &self.boundaries[k - 1] }

  fn boundary_or_zero(&self, k: usize) -> SparseMatrix<i64> {
    match self.boundaries.get(k.wrapping_sub(1)) {
      Some(m) if k >= 1 => m.clone(),
      _ => SparseMatrix::zeros(self.complex.count(k.saturating_sub(1)), self.complex.count(k)),
    }
  }

  pub fn counts(&self) -> Vec<usize> { self.complex.f_vector() }
}

/// `H_k` as a free rank plus invariant factors above one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
  pub degree: i64,
  pub betti: usize,
  pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
  pub fn is_zero(&self) -> bool { self.betti == 0 && self.torsion.is_empty() }

  pub fn is_free(&self) -> bool { self.torsion.is_empty() }
}

impl std::fmt::Display for HomologyGroup {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    let mut parts = Vec::new();
    match self.betti {
      0 => {}
      1 => parts.push("Z".to_string()),
      b => parts.push(format!("Z^{b}")),
    }
    parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() { write!(f, "0") } else { write!(f, "{}", parts.join(" + ")) }
  }
}

impl Serialize for HomologyGroup {
  fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let mut s = serializer.serialize_struct("HomologyGroup", 3)?;
    s.serialize_field("degree", &self.degree)?;
    s.serialize_field("betti", &self.betti)?;
    s.serialize_field("torsion", &Factors(&self.torsion))?;
    s.end()
  }
}

pub(crate) fn serialize_factors<S: Serializer>(factors: &[BigInt], serializer: S) -> std::result::Result<S::Ok, S::Error> {
  Factors(factors).serialize(serializer)
}

struct Factors<'a>(&'a [BigInt]);

impl Serialize for Factors<'_> {
  fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(self.0.iter().map(number::Number::from))
  }
}

mod number {
  use super::*;

  /// A factor written as an integer when it fits, as a decimal string otherwise.
  pub enum Number {
    Small(u64),
    Large(String),
  }

  impl From<&BigInt> for Number {
    fn from(d: &BigInt) -> Self { d.to_u64().map_or_else(|| Number::Large(d.to_string()), Number::Small) }
  }

  impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
      match self {
        Number::Small(n) => serializer.serialize_u64(*n),
        Number::Large(s) => serializer.serialize_str(s),
      }
    }
  }
}

/// Homology in degrees `0..=dim`. Reduced homology augments degree 0 and
/// reports `H_{-1} = Z` for the empty complex.
pub fn homology(cc: &ChainComplex, reduced: bool) -> Vec<HomologyGroup> {
  let top = cc.complex.dim();
  homology_through(cc, reduced, top.unwrap_or(0))
}

/// Homology in degrees `0..=max_degree` only.
pub fn homology_through(cc: &ChainComplex, reduced: bool, max_degree: usize) -> Vec<HomologyGroup> {
  let Some(top) = cc.complex.dim() else {
    return if reduced { vec![HomologyGroup { degree: -1, betti: 1, torsion: Vec::new() }] } else { Vec::new() };
  };
  let max_degree = max_degree.min(top);
  let forms: Vec<SmithForm> =
    (1..=max_degree + 1).into_par_iter().map(|k| smith_normal_form(&cc.boundary_or_zero(k))).collect();
  let rank = |k: usize| -> usize {
    match k {
      0 => usize::from(reduced),
      k => forms[k - 1].rank,
    }
  };
  (0..=max_degree)
    .map(|k| HomologyGroup {
      degree: k as i64,
      betti: cc.complex.count(k) - rank(k) - rank(k + 1),
      torsion: forms[k].torsion.clone(),
    })
    .collect()
}

/// Rank of `H~_i`, with every degree absent from `groups` read as zero.
pub fn reduced_betti(groups: &[HomologyGroup], degree: i64) -> usize {
  groups.iter().find(|g| g.degree == degree).map_or(0, |g| g.betti)
}

pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
  c.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

/// A `k`-chain as sorted `(simplex, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
  pub degree: usize,
  pub coefficients: Vec<(u32, i64)>,
}

impl Cycle {
  /// Checks `d z = 0`.
  pub fn new(cc: &ChainComplex, degree: usize, coefficients: Vec<(u32, i64)>) -> Result<Self> {
    let z = SparseMatrix::from_columns(cc.complex.count(degree), vec![coefficients]);
    let coefficients = z.column(0).to_vec();
    if degree > 0 && !cc.boundary_or_zero(degree).apply(&coefficients).is_empty() {
      return Err(Error::NotACycle);
    }
    Ok(Self { degree, coefficients })
  }

  pub fn is_zero(&self) -> bool { self.coefficients.is_empty() }
}

/// The chain map induced by a poset map between order complexes; simplices
/// whose image repeats a vertex are degenerate and dropped.
pub fn pushforward(map: &PosetMap, source: &ChainComplex, target: &ChainComplex, z: &Cycle) -> Result<Cycle> {
  let k = z.degree;
  let mut out = Vec::new();
  for &(s, c) in &z.coefficients {
    let image: Vec<u32> = source.complex.simplex(k, s as usize).iter().map(|&v| map.apply(v)).collect();
    if image.windows(2).any(|w| w[0] >= w[1]) {
      continue;
    }
    let t = target.complex.find(&image).ok_or_else(|| Error::NotInPoset(format!("simplex {image:?}")))?;
    out.push((t as u32, c));
  }
  Cycle::new(target, k, out)
}

/// Whether a cycle bounds, from ranks over `Q` and, over `Z`, from the
/// product of invariant factors of `d_{k+1}` and `[d_{k+1} | z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCertificate {
  pub rank_boundary: usize,
  pub rank_augmented: usize,
  pub rational_boundary: bool,
  pub integral_boundary: bool,
}

pub fn is_boundary(cc: &ChainComplex, z: &Cycle) -> BoundaryCertificate {
  let d = cc.boundary_or_zero(z.degree + 1);
  let mut augmented = d.clone();
  augmented.push_column(z.coefficients.clone());
  let (plain, aug) = rayon::join(|| smith_normal_form(&d), || smith_normal_form(&augmented));
  let rational = plain.rank == aug.rank;
  BoundaryCertificate {
    rank_boundary: plain.rank,
    rank_augmented: aug.rank,
    rational_boundary: rational,
    integral_boundary: rational && plain.determinant_divisor() == aug.determinant_divisor(),
  }
}

/// Fundamental cycle of the subdivided join sphere: a flag
/// `c_0 < ... < c_r` of chains of `J` gets the parity of the order in which
/// it adds the join factors, times `-1` for each first vertex of a factor
/// in `c_r`.
pub fn fundamental_cycle(j: &Poset<JVertex>, sd: &Poset<Vec<u32>>, cc: &ChainComplex) -> Result<Cycle> {
  let r = j.labels().iter().map(|v| v.factor).max().ok_or(Error::Orientation)?;
  let mut coefficients = Vec::new();
  for (i, flag) in cc.complex.simplices(r).enumerate() {
    let chains: Vec<&Vec<u32>> = flag.iter().map(|&c| sd.label(c)).collect();
    let mut order = Vec::with_capacity(r + 1);
    let mut prev: &[u32] = &[];
    for c in &chains {
      let added: Vec<u32> = c.iter().copied().filter(|v| !prev.contains(v)).collect();
      if added.len() != 1 {
        return Err(Error::Orientation);
      }
      order.push(j.label(added[0]).factor);
      prev = c;
    }
    let mut sign = permutation_sign(&order);
    for &v in chains[r] {
      if !j.label(v).bar {
        sign = -sign;
      }
    }
    coefficients.push((i as u32, sign));
  }
  Cycle::new(cc, r, coefficients).map_err(|_| Error::Orientation)
}

fn permutation_sign(xs: &[usize]) -> i64 {
  let inversions = (0..xs.len()).flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j))).filter(|&(i, j)| xs[i] > xs[j]).count();
  if inversions % 2 == 0 { 1 } else { -1 }
}

/// Number of simplices of each degree carrying a non-zero coefficient.
pub fn support_size(z: &Cycle) -> usize { z.coefficients.iter().filter(|(_, c)| !c.is_zero()).count() }
