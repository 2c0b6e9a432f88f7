//! Closed-form counts: isotropic subspaces, Steinberg dimensions and the
//! number of spheres in `C_{H(V)} I(V)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fplinalg::FieldSpec;

fn power(p: u32, e: usize) -> BigInt { BigInt::from(p).pow(e) }

/// `N_j`, the number of `j`-dimensional isotropic subspaces of a
/// non-degenerate `2r`-dimensional symplectic space over `F_p`.
pub fn n_isotropic(p: u32, r: usize, j: usize) -> Result<BigInt> {
  FieldSpec::new(p)?;
  if j > r {
    return Err(Error::InvalidParameters(format!("j = {j} exceeds r = {r}")));
  }
  let mut num = BigInt::one();
  let mut den = BigInt::one();
  for t in 0..j {
    num *= power(p, 2 * r - t) - power(p, t);
    den *= power(p, j) - power(p, t);
  }
  let (q, rem) = num.div_rem(&den);
  if !rem.is_zero() {
    return Err(Error::Formula(format!("N_{j} for p = {p}, r = {r} is not an integer")));
  }
  Ok(q)
}

/// `D = p^(m^2)`, with `m = r - j`.
pub fn steinberg_dim(p: u32, m: usize) -> BigInt { power(p, m * m) }

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeCount {
  pub p: u32,
  pub r: usize,
  #[serde(serialize_with = "as_string")]
  pub d: BigInt,
  #[serde(serialize_with = "as_string")]
  pub euler: BigInt,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> { s.collect_str(x) }

fn sign(e: usize) -> BigInt { if e % 2 == 0 { BigInt::one() } else { -BigInt::one() } }

/// `d(p, r)`, evaluated from the closed display and from the alternating sum
/// over `j`; the two must agree.
pub fn wedge_count(p: u32, r: usize) -> Result<WedgeCount> {
  if r == 0 {
    return Err(Error::InvalidParameters("r must be at least 1".into()));
  }
  // (-1)^r d + 1
  let mut closed = sign(r) * power(p, 2 * r + 1 + r * r);
  for j in 1..=r {
    closed += sign(r - j) * power(p, 2 * r + 1 - j + (r - j) * (r - j)) * n_isotropic(p, r, j)?;
  }
  let mut alternating = BigInt::zero();
  for j in 0..=r {
    alternating += sign(r - j) * power(p, 2 * r + 1 - j) * n_isotropic(p, r, j)? * steinberg_dim(p, r - j);
  }
  if closed != alternating {
    return Err(Error::Formula(format!("closed form {closed} differs from alternating sum {alternating}")));
  }
  let d = sign(r) * (&closed - BigInt::one());
  if d < BigInt::zero() {
    return Err(Error::Formula(format!("negative wedge count {d}")));
  }
  Ok(WedgeCount { p, r, d, euler: closed })
}

/// Rows `p,r,j,N_j,D_j` followed by the row `p,r,d,chi`.
pub fn csv_rows(p: u32, r: usize) -> Result<Vec<String>> {
  let mut rows = vec!["p,r,j,n_j,d_j".to_string()];
  for j in 0..=r {
    rows.push(format!("{p},{r},{j},{},{}", n_isotropic(p, r, j)?, steinberg_dim(p, r - j)));
  }
  let w = wedge_count(p, r)?;
  rows.push("p,r,d,chi".to_string());
  rows.push(format!("{p},{r},{},{}", w.d, w.euler));
  Ok(rows)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn isotropic_counts() {
    assert_eq!(n_isotropic(2, 1, 1).unwrap(), BigInt::from(3));
    assert_eq!(n_isotropic(2, 2, 1).unwrap(), BigInt::from(15));
    assert_eq!(n_isotropic(2, 2, 2).unwrap(), BigInt::from(15));
    assert_eq!(n_isotropic(3, 2, 2).unwrap(), BigInt::from(40));
    assert_eq!(n_isotropic(5, 2, 0).unwrap(), BigInt::one());
    assert!(n_isotropic(2, 1, 2).is_err());
  }

  #[test]
  fn steinberg() {
    assert_eq!(steinberg_dim(2, 2), BigInt::from(16));
    assert_eq!(steinberg_dim(7, 0), BigInt::one());
    assert_eq!(steinberg_dim(3, 1), BigInt::from(3));
  }

  #[test]
  fn wedge_counts() {
    let cases = [(2, 1, 5, -4), (3, 1, 46, -45), (2, 2, 151, 152), (3, 2, 11042, 11043)];
    for (p, r, d, chi) in cases {
      let w = wedge_count(p, r).unwrap();
      assert_eq!((w.d, w.euler), (BigInt::from(d), BigInt::from(chi)));
    }
  }

  #[test]
  fn rank_one_closed_form() {
    // d(p, 1) = 1 + p^4 - p^3 - p^2
    for p in [2u32, 3, 5, 7] {
      let q = i64::from(p);
      assert_eq!(wedge_count(p, 1).unwrap().d, BigInt::from(1 + q.pow(4) - q.pow(3) - q.pow(2)));
    }
  }

  #[test]
  fn csv_layout() {
    let rows = csv_rows(2, 1).unwrap();
    assert_eq!(rows, vec!["p,r,j,n_j,d_j", "2,1,0,1,2", "2,1,1,3,1", "p,r,d,chi", "2,1,5,-4"]);
  }
}
