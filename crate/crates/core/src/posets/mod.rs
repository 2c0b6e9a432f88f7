//! Finite posets and their order complexes.
//!
//! A [`Poset`] stores its elements in a linear extension: `x_i < x_j` implies
//! `i < j`. Strict chains are then increasing index tuples, which is the
//! vertex order used for every simplex of an order complex.

mod complex;
mod coset;
mod maps;

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

pub use complex::SimplicialComplex;
pub use coset::{
  coset_image_map, collection_vee, embed_subspaces, proper_nonzero_subspaces, proper_subspaces, subspace_poset,
  subspace_vee, CosetLabel, CosetPoset, MAX_COSETS,
};
pub use maps::{theta_bar, theta_v, tau_tilde, TauTilde, ThetaBar, ThetaV};

use crate::error::{Error, Result};
use crate::fplinalg::FpVector;
use crate::symgeom::SymplecticSpace;

/// Default bound on the number of chains in an order complex.
pub const MAX_CHAINS: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct Poset<L> {
  labels: Vec<L>,
  up: Vec<Vec<u32>>,
  down_len: Vec<u32>,
  index: HashMap<L, u32>,
}

impl<L: Clone + Eq + Hash> Poset<L> {
  /// Builds a poset from strict up-sets given in the order of `labels`.
  /// Elements are renumbered into a linear extension; antisymmetry and
  /// transitivity are checked on every pair.
  pub fn from_upsets(labels: Vec<L>, mut ups: Vec<Vec<u32>>) -> Result<Self> {
    let n = labels.len();
    if ups.len() != n {
      return Err(Error::InvalidOrder(format!("{} up-sets for {n} elements", ups.len())));
    }
    for (i, up) in ups.iter_mut().enumerate() {
      up.sort_unstable();
      up.dedup();
      if up.binary_search(&(i as u32)).is_ok() || up.last().is_some_and(|&j| j as usize >= n) {
        return Err(Error::InvalidOrder(format!("bad up-set at element {i}")));
      }
    }
    for (i, up) in ups.iter().enumerate() {
      for &j in up {
        let above = &ups[j as usize];
        if above.binary_search(&(i as u32)).is_ok() {
          return Err(Error::InvalidOrder(format!("elements {i} and {j} are mutually below each other")));
        }
        if !above.iter().all(|k| up.binary_search(k).is_ok()) {
          return Err(Error::InvalidOrder(format!("transitivity fails above {i} < {j}")));
        }
      }
    }
    let mut down_len = vec![0u32; n];
    for up in &ups {
      for &j in up {
        down_len[j as usize] += 1;
      }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (down_len[i], i));
    let mut position = vec![0u32; n];
    for (new, &old) in order.iter().enumerate() {
      position[old] = new as u32;
    }
    let mut new_labels = Vec::with_capacity(n);
    let mut new_up = Vec::with_capacity(n);
    let mut new_down = Vec::with_capacity(n);
    let mut slots: Vec<Option<L>> = labels.into_iter().map(Some).collect();
    for &old in &order {
      new_labels.push(slots[old].take().expect("each label moved once"));
      let mut up: Vec<u32> = ups[old].iter().map(|&j| position[j as usize]).collect();
      up.sort_unstable();
      new_up.push(up);
      new_down.push(down_len[old]);
    }
    let mut index = HashMap::with_capacity(n);
    for (i, l) in new_labels.iter().enumerate() {
      if index.insert(l.clone(), i as u32).is_some() {
        return Err(Error::InvalidOrder("duplicate labels".into()));
      }
    }
    Ok(Self { labels: new_labels, up: new_up, down_len: new_down, index })
  }

  /// Materializes `leq` on all pairs.
  pub fn from_relation<F>(labels: Vec<L>, leq: F) -> Result<Self>
  where
    L: Sync,
    F: Fn(&L, &L) -> bool + Sync,
  {
    let ups = (0..labels.len())
      .into_par_iter()
      .map(|i| {
        (0..labels.len())
          .filter(|&j| j != i && leq(&labels[i], &labels[j]))
          .map(|j| j as u32)
          .collect()
      })
      .collect();
    Self::from_upsets(labels, ups)
  }

  pub fn antichain(labels: Vec<L>) -> Result<Self> {
    let n = labels.len();
    Self::from_upsets(labels, vec![Vec::new(); n])
  }

  pub fn len(&self) -> usize { self.labels.len() }

  pub fn is_empty(&self) -> bool { self.labels.is_empty() }

  pub fn label(&self, i: u32) -> &L { &self.labels[i as usize] }

  pub fn labels(&self) -> &[L] { &self.labels }

  pub fn index_of(&self, label: &L) -> Option<u32> { self.index.get(label).copied() }

  /// Strict up-set of `i`, sorted.
  pub fn up(&self, i: u32) -> &[u32] { &self.up[i as usize] }

  pub fn down_len(&self, i: u32) -> usize { self.down_len[i as usize] as usize }

  #[inline]
  pub fn leq(&self, i: u32, j: u32) -> bool { i == j || (i < j && self.up[i as usize].binary_search(&j).is_ok()) }

  /// Number of comparable pairs `i < j`.
  pub fn relation_size(&self) -> usize { self.up.iter().map(Vec::len).sum() }

  pub fn has_terminal(&self) -> bool { self.down_len.iter().any(|&d| d as usize + 1 == self.len()) }

  pub fn has_initial(&self) -> bool { self.up.iter().any(|u| u.len() + 1 == self.len()) }

  /// The induced subposet on the elements accepted by `keep`.
  pub fn subposet(&self, keep: impl Fn(u32) -> bool) -> Poset<L> {
    let mut position = vec![u32::MAX; self.len()];
    let mut kept = Vec::new();
    for i in 0..self.len() as u32 {
      if keep(i) {
        position[i as usize] = kept.len() as u32;
        kept.push(i);
      }
    }
    let labels: Vec<L> = kept.iter().map(|&i| self.labels[i as usize].clone()).collect();
    let up: Vec<Vec<u32>> = kept
      .iter()
      .map(|&i| self.up[i as usize].iter().map(|&j| position[j as usize]).filter(|&j| j != u32::MAX).collect())
      .collect();
    let mut down_len = vec![0u32; kept.len()];
    for u in &up {
      for &j in u {
        down_len[j as usize] += 1;
      }
    }
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
    Poset { labels, up, down_len, index }
  }

  /// Number of strict chains, without materializing them.
  pub fn chain_count(&self) -> u128 {
    let mut from = vec![0u128; self.len()];
    for i in (0..self.len()).rev() {
      from[i] = 1 + self.up[i].iter().map(|&j| from[j as usize]).sum::<u128>();
    }
    from.iter().sum()
  }

  /// The order complex: `k`-simplices are strict chains `x_0 < ... < x_k`.
  pub fn order_complex(&self) -> Result<SimplicialComplex> { self.order_complex_bounded(MAX_CHAINS) }

  pub fn order_complex_bounded(&self, max_chains: usize) -> Result<SimplicialComplex> {
    let total = self.chain_count();
    if total > max_chains as u128 {
      return Err(Error::Guard(format!("{total} chains exceed {max_chains}")));
    }
    let up = &self.up;
    let per_vertex: Vec<Vec<Vec<u32>>> = (0..self.len() as u32)
      .into_par_iter()
      .map(|v| {
        let mut out = Vec::new();
        let mut stack = vec![v];
        extend_chains(up, &mut stack, &mut out);
        out
      })
      .collect();
    let depth = per_vertex.iter().map(Vec::len).max().unwrap_or(0);
    let mut faces = vec![Vec::new(); depth];
    for chains in per_vertex {
      for (k, flat) in chains.into_iter().enumerate() {
        faces[k].extend(flat);
      }
    }
    Ok(SimplicialComplex::from_sorted_faces(self.len(), faces))
  }
}

/// Depth-first emission of the chains starting with `stack`, lexicographic
/// within each length.
fn extend_chains(up: &[Vec<u32>], stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
  let k = stack.len() - 1;
  if out.len() <= k {
    out.push(Vec::new());
  }
  out[k].extend_from_slice(stack);
  let top = *stack.last().expect("chains are non-empty");
  for &next in &up[top as usize] {
    stack.push(next);
    extend_chains(up, stack, out);
    stack.pop();
  }
}

/// The poset of non-empty chains of `poset` ordered by inclusion.
pub fn barycentric<L: Clone + Eq + Hash>(poset: &Poset<L>) -> Result<Poset<Vec<u32>>> {
  let complex = poset.order_complex()?;
  let chains: Vec<Vec<u32>> = complex.all_simplices().map(<[u32]>::to_vec).collect();
  Poset::from_relation(chains, |a, b| a.len() < b.len() && is_sorted_subset(a, b))
}

fn is_sorted_subset(a: &[u32], b: &[u32]) -> bool {
  let mut it = b.iter();
  a.iter().all(|x| it.by_ref().any(|y| y == x))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Joined<A, B> {
  Lower(A),
  Upper(B),
}

/// `P * Q`: every element of `P` lies below every element of `Q`.
pub fn join<A, B>(p: &Poset<A>, q: &Poset<B>) -> Result<Poset<Joined<A, B>>>
where
  A: Clone + Eq + Hash,
  B: Clone + Eq + Hash,
{
  let offset = p.len() as u32;
  let upper: Vec<u32> = (offset..offset + q.len() as u32).collect();
  let mut labels: Vec<Joined<A, B>> = p.labels().iter().cloned().map(Joined::Lower).collect();
  labels.extend(q.labels().iter().cloned().map(Joined::Upper));
  let mut ups: Vec<Vec<u32>> = (0..p.len() as u32).map(|i| [p.up(i), &upper].concat()).collect();
  ups.extend((0..q.len() as u32).map(|i| q.up(i).iter().map(|&j| j + offset).collect()));
  Poset::from_upsets(labels, ups)
}

/// `P * S^0`.
pub fn suspension<L: Clone + Eq + Hash>(p: &Poset<L>) -> Result<Poset<Joined<L, u8>>> {
  join(p, &Poset::antichain(vec![0u8, 1])?)
}

/// A vertex of `J = {x, xbar} * {x_1, xbar_1} * ... * {x_r, xbar_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JVertex {
  /// 0 for `{x, xbar}`, `i` for `{x_i, xbar_i}`.
  pub factor: usize,
  pub bar: bool,
  pub vector: FpVector,
}

/// `J` with `x = sum (x_i + xbar_i)` and `xbar = 0`; its nerve is an
/// `r`-sphere.
pub fn sphere_j(space: &SymplecticSpace) -> Result<Poset<JVertex>> {
  let field = space.field();
  let r = space.r();
  if r == 0 {
    return Err(Error::InvalidParameters("J needs r >= 1".into()));
  }
  let x = (0..r).fold(FpVector::zero(space.dim()), |acc, i| acc.add(field, &space.x(i)).add(field, &space.xbar(i)));
  let mut labels = vec![
    JVertex { factor: 0, bar: false, vector: x },
    JVertex { factor: 0, bar: true, vector: FpVector::zero(space.dim()) },
  ];
  for i in 0..r {
    labels.push(JVertex { factor: i + 1, bar: false, vector: space.x(i) });
    labels.push(JVertex { factor: i + 1, bar: true, vector: space.xbar(i) });
  }
  Poset::from_relation(labels, |a, b| a.factor < b.factor)
}

/// An order-preserving map, stored as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
  image: Vec<u32>,
}

impl PosetMap {
  /// Checks `x <= y => f(x) <= f(y)` on every comparable pair.
  pub fn new<A, B>(source: &Poset<A>, target: &Poset<B>, image: Vec<u32>) -> Result<Self>
  where
    A: Clone + Eq + Hash,
    B: Clone + Eq + Hash,
  {
    if image.len() != source.len() {
      return Err(Error::DimensionMismatch { expected: source.len(), found: image.len() });
    }
    if let Some(&bad) = image.iter().find(|&&y| y as usize >= target.len()) {
      return Err(Error::NotInPoset(format!("image index {bad}")));
    }
    for i in 0..source.len() as u32 {
      for &j in source.up(i) {
        if !target.leq(image[i as usize], image[j as usize]) {
          return Err(Error::NotOrderPreserving(format!("{i} < {j} maps to an incomparable pair")));
        }
      }
    }
    Ok(Self { image })
  }

  pub fn image(&self) -> &[u32] { &self.image }

  #[inline]
  pub fn apply(&self, i: u32) -> u32 { self.image[i as usize] }

  /// `other` after `self`.
  pub fn then(&self, other: &PosetMap) -> PosetMap {
    PosetMap { image: self.image.iter().map(|&i| other.apply(i)).collect() }
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberSide {
  /// `{x : f(x) <= y}`
  Under,
  /// `{x : f(x) >= y}`
  Over,
}

pub fn fiber<A, B>(map: &PosetMap, source: &Poset<A>, target: &Poset<B>, y: u32, side: FiberSide) -> Result<Poset<A>>
where
  A: Clone + Eq + Hash,
  B: Clone + Eq + Hash,
{
  if y as usize >= target.len() {
    return Err(Error::NotInPoset(format!("{y}")));
  }
  Ok(source.subposet(|x| match side {
    FiberSide::Under => target.leq(map.apply(x), y),
    FiberSide::Over => target.leq(y, map.apply(x)),
  }))
}

#[cfg(test)]
mod tests {
  use super::*;

  fn chain(n: usize) -> Poset<usize> { Poset::from_relation((0..n).collect(), |a, b| a <= b).unwrap() }

  #[test]
  fn linear_extension_order() {
    let p = Poset::from_relation(vec![3usize, 2, 1, 0], |a, b| a <= b).unwrap();
    assert_eq!(p.labels(), &[0, 1, 2, 3]);
    for i in 0..4 {
      for j in 0..4 {
        assert_eq!(p.leq(i, j), i <= j);
      }
    }
  }

  #[test]
  fn rejects_non_orders() {
    let cyclic = Poset::from_upsets(vec![0, 1], vec![vec![1], vec![0]]);
    assert!(matches!(cyclic, Err(Error::InvalidOrder(_))));
    let intransitive = Poset::from_upsets(vec![0, 1, 2], vec![vec![1], vec![2], vec![]]);
    assert!(matches!(intransitive, Err(Error::InvalidOrder(_))));
  }

  #[test]
  fn chain_order_complex_is_a_full_simplex() {
    let c = chain(4).order_complex().unwrap();
    assert_eq!(c.f_vector(), vec![4, 6, 4, 1]);
    assert_eq!(chain(4).chain_count(), 15);
  }

  #[test]
  fn suspension_of_two_points_is_a_square() {
    let s = suspension(&Poset::antichain(vec![0u8, 1]).unwrap()).unwrap();
    assert_eq!(s.len(), 4);
    assert_eq!(s.order_complex().unwrap().f_vector(), vec![4, 4]);
  }

  #[test]
  fn sphere_j_combinatorics() {
    for r in 1..=3 {
      let j = sphere_j(&SymplecticSpace::standard(2, r, 0).unwrap()).unwrap();
      let c = j.order_complex().unwrap();
      assert_eq!(j.len(), 2 * (r + 1));
      assert_eq!(c.count(r), 1 << (r + 1));
      let chi: i64 = c.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
      assert_eq!(chi, 1 + if r % 2 == 0 { 1 } else { -1 });
    }
  }

  #[test]
  fn join_face_numbers_convolve() {
    let a = Poset::antichain(vec![0u8, 1]).unwrap();
    let b = Poset::antichain(vec![0u8, 1, 2]).unwrap();
    let j = join(&a, &b).unwrap();
    // f-vectors with the empty face: (1,2) * (1,3) = (1,5,6)
    assert_eq!(j.order_complex().unwrap().f_vector(), vec![5, 6]);
  }

  #[test]
  fn barycentric_of_a_chain() {
    let sd = barycentric(&chain(2)).unwrap();
    assert_eq!(sd.len(), 3);
    assert_eq!(sd.order_complex().unwrap().f_vector(), vec![3, 2]);
    assert!(sd.has_terminal());
  }

  #[test]
  fn fibers_and_terminal_objects() {
    let p = chain(3);
    let id = PosetMap::new(&p, &p, vec![0, 1, 2]).unwrap();
    let under = fiber(&id, &p, &p, 1, FiberSide::Under).unwrap();
    assert_eq!(under.labels(), &[0, 1]);
    assert!(under.has_terminal() && under.has_initial());
    let over = fiber(&id, &p, &p, 1, FiberSide::Over).unwrap();
    assert_eq!(over.labels(), &[1, 2]);
    assert!(!Poset::antichain(vec![0, 1]).unwrap().has_terminal());
  }

  #[test]
  fn order_reversing_maps_are_rejected() {
    let p = chain(2);
    assert!(matches!(PosetMap::new(&p, &p, vec![1, 0]), Err(Error::NotOrderPreserving(_))));
    assert!(PosetMap::new(&p, &p, vec![1, 1]).is_ok());
  }

  #[test]
  fn chain_guard() {
    assert!(matches!(chain(10).order_complex_bounded(100), Err(Error::Guard(_))));
  }
}
