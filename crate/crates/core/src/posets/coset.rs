use std::collections::HashMap;
use std::sync::Arc;

use super::{Poset, PosetMap};
use crate::error::{Error, Result};
use crate::fplinalg::{all_subspaces, FieldSpec, Subspace};
use crate::groups::{GroupModel, SubgroupSet};

/// Bound on the number of cosets in a coset poset.
pub const MAX_COSETS: usize = 100_000;

/// The coset `rep * A` with `A` the `member`-th subgroup of the collection and
/// `rep` its minimal element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
  pub member: u32,
  pub rep: u32,
}

/// `C_G F`, or the relative `C_{xH} F` of cosets meeting `xH`, ordered by
/// inclusion.
#[derive(Clone, Debug)]
pub struct CosetPoset {
  group: Arc<GroupModel>,
  collection: Vec<SubgroupSet>,
  members: HashMap<Vec<u32>, u32>,
  poset: Poset<CosetLabel>,
}

impl CosetPoset {
  pub fn new(group: impl Into<Arc<GroupModel>>, collection: Vec<SubgroupSet>) -> Result<Self> {
    Self::build(group.into(), collection, None)
  }

  /// Cosets `gA` with `gA` meeting `x H`.
  pub fn relative(
    group: impl Into<Arc<GroupModel>>,
    collection: Vec<SubgroupSet>,
    x: u32,
    h: &SubgroupSet,
  ) -> Result<Self> {
    Self::build(group.into(), collection, Some((x, h)))
  }

  fn build(group: Arc<GroupModel>, collection: Vec<SubgroupSet>, restrict: Option<(u32, &SubgroupSet)>) -> Result<Self> {
    let n = group.order();
    let mut members = HashMap::with_capacity(collection.len());
    for (i, a) in collection.iter().enumerate() {
      group.check_parent(a)?;
      if members.insert(a.members().to_vec(), i as u32).is_some() {
        return Err(Error::InvalidParameters("collection has repeated members".into()));
      }
    }
    if let Some((_, h)) = restrict {
      group.check_parent(h)?;
    }
    let total: usize = collection.iter().map(|a| n / a.order()).sum();
    if total > MAX_COSETS {
      return Err(Error::Guard(format!("{total} cosets exceed {MAX_COSETS}")));
    }
    let above: Vec<Vec<usize>> = collection
      .iter()
      .enumerate()
      .map(|(i, a)| (0..collection.len()).filter(|&j| j != i && a.is_subset(&collection[j])).collect())
      .collect();

    let mut labels = Vec::with_capacity(total);
    for (m, a) in collection.iter().enumerate() {
      let mut seen = vec![false; n];
      for g in 0..n as u32 {
        if seen[g as usize] {
          continue;
        }
        // scanning in index order, the first unseen element is the minimum of its coset
        let elements: Vec<u32> = a.members().iter().map(|&x| group.mul(g, x)).collect();
        for &e in &elements {
          seen[e as usize] = true;
        }
        let meets = restrict.map_or(true, |(x, h)| {
          let xi = group.inv(x);
          elements.iter().any(|&e| h.contains(group.mul(xi, e)))
        });
        if meets {
          labels.push(CosetLabel { member: m as u32, rep: g });
        }
      }
    }
    let position: HashMap<CosetLabel, u32> = labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
    let ups = labels
      .iter()
      .map(|l| {
        above[l.member as usize]
          .iter()
          .map(|&j| {
            let key = CosetLabel { member: j as u32, rep: group.coset_rep(l.rep, &collection[j]) };
            position.get(&key).copied().ok_or_else(|| Error::NotInPoset(format!("{key:?}")))
          })
          .collect::<Result<Vec<u32>>>()
      })
      .collect::<Result<Vec<_>>>()?;
    let poset = Poset::from_upsets(labels, ups)?;
    Ok(Self { group, collection, members, poset })
  }

  pub fn group(&self) -> &GroupModel { &self.group }

  pub fn group_arc(&self) -> Arc<GroupModel> { Arc::clone(&self.group) }

  pub fn collection(&self) -> &[SubgroupSet] { &self.collection }

  pub fn poset(&self) -> &Poset<CosetLabel> { &self.poset }

  pub fn len(&self) -> usize { self.poset.len() }

  pub fn is_empty(&self) -> bool { self.poset.is_empty() }

  pub fn subgroup(&self, i: u32) -> &SubgroupSet { &self.collection[self.poset.label(i).member as usize] }

  pub fn member_of(&self, a: &SubgroupSet) -> Option<u32> { self.members.get(a.members()).copied() }

  /// The element `g A_member`, if present.
  pub fn coset_of(&self, g: u32, member: u32) -> Option<u32> {
    let a = self.collection.get(member as usize)?;
    self.poset.index_of(&CosetLabel { member, rep: self.group.coset_rep(g, a) })
  }

  pub fn elements(&self, i: u32) -> Vec<u32> {
    let l = self.poset.label(i);
    self.group.coset_elements(l.rep, &self.collection[l.member as usize])
  }
}

/// The map `gA -> f(g) f(A)` induced by a homomorphism given on element
/// indices.
pub fn coset_image_map(source: &CosetPoset, target: &CosetPoset, hom: &[u32]) -> Result<PosetMap> {
  if hom.len() != source.group().order() {
    return Err(Error::DimensionMismatch { expected: source.group().order(), found: hom.len() });
  }
  let member_images = source
    .collection()
    .iter()
    .map(|a| {
      let mut img: Vec<u32> = a.members().iter().map(|&x| hom[x as usize]).collect();
      img.sort_unstable();
      img.dedup();
      target.members.get(&img).copied().ok_or_else(|| Error::NotInPoset("image subgroup outside the collection".into()))
    })
    .collect::<Result<Vec<u32>>>()?;
  let image = source
    .poset()
    .labels()
    .iter()
    .map(|l| {
      let m = member_images[l.member as usize];
      target.coset_of(hom[l.rep as usize], m).ok_or_else(|| Error::NotInPoset(format!("image of {l:?}")))
    })
    .collect::<Result<Vec<u32>>>()?;
  PosetMap::new(source.poset(), target.poset(), image)
}

/// Embeds subspaces as subgroups `{(a, 0)}` or vector subgroups.
pub fn embed_subspaces(group: &GroupModel, field: FieldSpec, subspaces: &[Subspace]) -> Result<Vec<SubgroupSet>> {
  subspaces.iter().map(|s| group.embed_subspace(field, s)).collect()
}

/// `F^{vee H} = { A in F : AH = G }`, decided by `|A||H| / |A cap H| = |G|`.
pub fn collection_vee(group: &GroupModel, collection: &[SubgroupSet], h: &SubgroupSet) -> Result<Vec<SubgroupSet>> {
  group.check_parent(h)?;
  Ok(
    collection
      .iter()
      .filter(|a| a.order() * h.order() == group.order() * a.intersection(group, h).order())
      .cloned()
      .collect(),
  )
}

/// `{ A : A + W = V }`.
pub fn subspace_vee(field: FieldSpec, subspaces: &[Subspace], w: &Subspace) -> Result<Vec<Subspace>> {
  let mut out = Vec::new();
  for a in subspaces {
    if a.sum(field, w)?.dim() == w.ambient_dim() {
      out.push(a.clone());
    }
  }
  Ok(out)
}

/// `T(F_p^n)`: every proper subspace, the zero subspace included.
pub fn proper_subspaces(field: FieldSpec, n: usize) -> Vec<Subspace> {
  all_subspaces(field, n).into_iter().filter(|s| s.dim() < n).collect()
}

/// `T°(F_p^n)`: proper non-zero subspaces.
pub fn proper_nonzero_subspaces(field: FieldSpec, n: usize) -> Vec<Subspace> {
  all_subspaces(field, n).into_iter().filter(|s| s.dim() > 0 && s.dim() < n).collect()
}

/// Subspaces ordered by inclusion.
pub fn subspace_poset(field: FieldSpec, subspaces: Vec<Subspace>) -> Result<Poset<Subspace>> {
  Poset::from_relation(subspaces, |a, b| b.contains(field, a).unwrap_or(false))
}
