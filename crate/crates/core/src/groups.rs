//! Finite groups as frozen multiplication tables.
//!
//! Elements are dense indices into a sorted element table and subgroups are
//! bitsets over those indices. Heisenberg and extraspecial groups are built as
//! pairs `(v, t)` in `V x Z/p` with a bilinear cocycle `c`:
//! `(v1, t1)(v2, t2) = (v1 + v2, c(v1, v2) + t1 + t2)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::fplinalg::{FieldSpec, FpVector, Subspace};
use crate::symgeom::{AlternatingForm, SymplecticSpace};

/// Desk-scale bound on group orders (`3^6`).
pub const MAX_GROUP_ORDER: usize = 729;

/// Associativity is checked on all triples up to this order, sampled above.
const EXHAUSTIVE_AXIOM_ORDER: usize = 243;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementRepr {
  /// `(v, t)` in `V x Z/p`.
  Pair { v: FpVector, t: u8 },
  /// A vector of an elementary abelian group.
  Vector(FpVector),
  /// `(e, e')` in a product, by element index of the factor.
  Product(u32, u32),
}

impl fmt::Display for ElementRepr {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      ElementRepr::Pair { v, t } => write!(f, "({v},{t})"),
      ElementRepr::Vector(v) => write!(f, "{v}"),
      ElementRepr::Product(a, b) => write!(f, "[{a},{b}]"),
    }
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtraspecialVariant {
  /// Odd `p`, exponent `p`.
  ExponentP,
  /// `p = 2`, central product of `D8`s.
  Plus,
  /// `p = 2`, one `Q8` factor.
  Minus,
}

/// The surjection `nu: G -> V` onto a vector space, with the kernel
/// coordinate of each kernel element.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
  pub field: FieldSpec,
  pub dim: usize,
  /// `nu(g)` for each element index.
  pub images: Vec<FpVector>,
  /// For elements of `ker nu`, their coordinate in `Z/p`.
  pub kernel_coord: Vec<Option<u8>>,
}

#[derive(Clone, Debug)]
pub struct GroupModel {
  id: u64,
  name: String,
  elements: Vec<ElementRepr>,
  table: Vec<u32>,
  inverse: Vec<u32>,
  identity: u32,
  center: Vec<u32>,
  quotient: Option<FrattiniQuotient>,
  index: HashMap<ElementRepr, u32>,
}

impl GroupModel {
  /// Freezes a multiplication table and checks the group axioms.
  pub fn from_table(
    name: impl Into<String>,
    elements: Vec<ElementRepr>,
    table: Vec<u32>,
    quotient: Option<FrattiniQuotient>,
  ) -> Result<Self> {
    let n = elements.len();
    if n == 0 || n > MAX_GROUP_ORDER {
      return Err(Error::Guard(format!("group order {n} outside 1..={MAX_GROUP_ORDER}")));
    }
    if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
      return Err(Error::GroupAxiom("table is not a closed n x n operation".into()));
    }
    let identity = (0..n)
      .find(|&e| (0..n).all(|g| table[e * n + g] as usize == g && table[g * n + e] as usize == g))
      .ok_or_else(|| Error::GroupAxiom("no identity".into()))? as u32;
    let mut inverse = vec![0u32; n];
    for (g, slot) in inverse.iter_mut().enumerate() {
      *slot = (0..n)
        .find(|&h| table[g * n + h] == identity && table[h * n + g] == identity)
        .ok_or_else(|| Error::GroupAxiom(format!("element {g} has no inverse")))? as u32;
    }
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let assoc = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
    if n <= EXHAUSTIVE_AXIOM_ORDER {
      for a in 0..n {
        for b in 0..n {
          for c in 0..n {
            if !assoc(a, b, c) {
              return Err(Error::GroupAxiom(format!("not associative on ({a},{b},{c})")));
            }
          }
        }
      }
    } else {
      let mut state = 0x9E37_79B9_7F4A_7C15u64;
      let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n as u64) as usize
      };
      for _ in 0..200_000 {
        let (a, b, c) = (next(), next(), next());
        if !assoc(a, b, c) {
          return Err(Error::GroupAxiom(format!("not associative on ({a},{b},{c})")));
        }
      }
    }
    let center = (0..n as u32)
      .filter(|&z| (0..n).all(|g| mul(z as usize, g) == mul(g, z as usize)))
      .collect();
    let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
    let group = Self {
      id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
      name: name.into(),
      elements,
      table,
      inverse,
      identity,
      center,
      quotient,
      index,
    };
    if let Some(q) = &group.quotient {
      group.check_quotient(q)?;
    }
    Ok(group)
  }

  fn check_quotient(&self, q: &FrattiniQuotient) -> Result<()> {
    let n = self.order();
    if q.images.len() != n || q.kernel_coord.len() != n {
      return Err(Error::Homomorphism("quotient data has the wrong length".into()));
    }
    for a in 0..n {
      for b in 0..n {
        let lhs = &q.images[self.mul(a as u32, b as u32) as usize];
        if *lhs != q.images[a].add(q.field, &q.images[b]) {
          return Err(Error::Homomorphism(format!("nu is not a homomorphism on ({a},{b})")));
        }
      }
    }
    for g in 0..n {
      if q.images[g].is_zero() != q.kernel_coord[g].is_some() {
        return Err(Error::Homomorphism("kernel coordinates disagree with nu".into()));
      }
      if q.kernel_coord[g].is_some() && !self.center.contains(&(g as u32)) {
        return Err(Error::Homomorphism("kernel of nu is not central".into()));
      }
    }
    Ok(())
  }

  /// Pairs `(v, t)` with `(v1, t1)(v2, t2) = (v1 + v2, c(v1, v2) + t1 + t2)`.
  pub fn from_cocycle<C>(name: impl Into<String>, field: FieldSpec, dim: usize, cocycle: C) -> Result<Self>
  where C: Fn(&FpVector, &FpVector) -> u8 {
    let p = field.p() as usize;
    let nv = p.checked_pow(dim as u32).filter(|&nv| nv * p <= MAX_GROUP_ORDER).ok_or_else(|| {
      Error::Guard(format!("group of order {p}^{} exceeds {MAX_GROUP_ORDER}", dim + 1))
    })?;
    let vectors: Vec<FpVector> = FpVector::all(field, dim).collect();
    let n = nv * p;
    let encode = |v: usize, t: usize| v * p + t;
    let mut table = vec![0u32; n * n];
    for (i, v1) in vectors.iter().enumerate() {
      for (j, v2) in vectors.iter().enumerate() {
        let c = cocycle(v1, v2) as usize;
        let sum = v1.add(field, v2).index(field);
        for t1 in 0..p {
          for t2 in 0..p {
            table[encode(i, t1) * n + encode(j, t2)] = encode(sum, (c + t1 + t2) % p) as u32;
          }
        }
      }
    }
    let mut elements = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    let mut kernel_coord = Vec::with_capacity(n);
    for v in &vectors {
      for t in 0..p {
        elements.push(ElementRepr::Pair { v: v.clone(), t: t as u8 });
        images.push(v.clone());
        kernel_coord.push(v.is_zero().then_some(t as u8));
      }
    }
    let quotient = FrattiniQuotient { field, dim, images, kernel_coord };
    Self::from_table(name, elements, table, Some(quotient))
  }

  /// The additive group of `F_p^n`.
  pub fn vector_space(field: FieldSpec, n: usize) -> Result<Self> {
    let p = field.p() as usize;
    let size = p.checked_pow(n as u32).filter(|&s| s <= MAX_GROUP_ORDER).ok_or_else(|| {
      Error::Guard(format!("vector space {p}^{n} exceeds {MAX_GROUP_ORDER}"))
    })?;
    let vectors: Vec<FpVector> = FpVector::all(field, n).collect();
    let mut table = vec![0u32; size * size];
    for (i, a) in vectors.iter().enumerate() {
      for (j, b) in vectors.iter().enumerate() {
        table[i * size + j] = a.add(field, b).index(field) as u32;
      }
    }
    let kernel_coord = vectors.iter().map(|v| v.is_zero().then_some(0)).collect();
    let quotient = FrattiniQuotient { field, dim: n, images: vectors.clone(), kernel_coord };
    let elements = vectors.into_iter().map(ElementRepr::Vector).collect();
    Self::from_table(format!("F_{p}^{n}"), elements, table, Some(quotient))
  }

  pub fn id(&self) -> u64 { self.id }

  pub fn name(&self) -> &str { &self.name }

  #[inline]
  pub fn order(&self) -> usize { self.elements.len() }

  #[inline]
  pub fn mul(&self, a: u32, b: u32) -> u32 { self.table[a as usize * self.order() + b as usize] }

  #[inline]
  pub fn inv(&self, a: u32) -> u32 { self.inverse[a as usize] }

  pub fn identity(&self) -> u32 { self.identity }

  pub fn element(&self, g: u32) -> &ElementRepr { &self.elements[g as usize] }

  pub fn elements(&self) -> &[ElementRepr] { &self.elements }

  pub fn index_of(&self, e: &ElementRepr) -> Option<u32> { self.index.get(e).copied() }

  pub fn center(&self) -> &[u32] { &self.center }

  pub fn quotient(&self) -> Option<&FrattiniQuotient> { self.quotient.as_ref() }

  pub fn is_abelian(&self) -> bool { self.center.len() == self.order() }

  /// `[a, b] = a b a^-1 b^-1`
  pub fn commutator(&self, a: u32, b: u32) -> u32 {
    self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
  }

  pub fn pow(&self, g: u32, k: usize) -> u32 { (0..k).fold(self.identity, |acc, _| self.mul(acc, g)) }

  pub fn element_order(&self, g: u32) -> usize {
    let mut x = g;
    let mut k = 1;
    while x != self.identity {
      x = self.mul(x, g);
      k += 1;
    }
    k
  }

  /// Element of a pair model, by its coordinates.
  pub fn pair(&self, v: &FpVector, t: u8) -> Option<u32> {
    self.index_of(&ElementRepr::Pair { v: v.clone(), t })
  }

  pub fn commute(&self, a: u32, b: u32) -> bool { self.mul(a, b) == self.mul(b, a) }

  pub fn whole(&self) -> SubgroupSet { SubgroupSet::from_members(self, (0..self.order() as u32).collect()) }

  pub fn trivial(&self) -> SubgroupSet { SubgroupSet::from_members(self, vec![self.identity]) }

  /// Subgroup generated by `gens`.
  pub fn generate(&self, gens: &[u32]) -> SubgroupSet {
    let n = self.order();
    let mut seen = vec![false; n];
    seen[self.identity as usize] = true;
    let mut queue: VecDeque<u32> = VecDeque::from([self.identity]);
    let mut members = vec![self.identity];
    while let Some(x) = queue.pop_front() {
      for &g in gens {
        let y = self.mul(x, g);
        if !seen[y as usize] {
          seen[y as usize] = true;
          members.push(y);
          queue.push_back(y);
        }
      }
    }
    members.sort_unstable();
    SubgroupSet::from_members(self, members)
  }

  pub fn derived_subgroup(&self) -> SubgroupSet {
    let n = self.order() as u32;
    let comms: Vec<u32> =
      (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
    self.generate(&comms)
  }

  /// Checks that `members` is a subgroup and wraps it.
  pub fn subgroup(&self, mut members: Vec<u32>) -> Result<SubgroupSet> {
    members.sort_unstable();
    members.dedup();
    let set = SubgroupSet::from_members(self, members);
    if !set.contains(self.identity) {
      return Err(Error::GroupAxiom("subgroup misses the identity".into()));
    }
    for &a in set.members() {
      if !set.contains(self.inv(a)) {
        return Err(Error::GroupAxiom("subgroup not closed under inverses".into()));
      }
      for &b in set.members() {
        if !set.contains(self.mul(a, b)) {
          return Err(Error::GroupAxiom("subgroup not closed under multiplication".into()));
        }
      }
    }
    Ok(set)
  }

  /// `{(a, 0) : a in I}` in a pair model; `I` must be isotropic for the
  /// cocycle so that this is a subgroup.
  pub fn embed_subspace(&self, field: FieldSpec, space: &Subspace) -> Result<SubgroupSet> {
    let members = space
      .elements(field)
      .into_iter()
      .map(|v| {
        self
          .index_of(&ElementRepr::Pair { v: v.clone(), t: 0 })
          .or_else(|| self.index_of(&ElementRepr::Vector(v.clone())))
          .ok_or_else(|| Error::DimensionMismatch { expected: self.vector_dim(), found: v.dim() })
      })
      .collect::<Result<Vec<u32>>>()?;
    self.subgroup(members).map_err(|_| Error::NotIsotropic(format!("{space:?}")))
  }

  fn vector_dim(&self) -> usize { self.quotient.as_ref().map_or(0, |q| q.dim) }

  pub fn check_parent(&self, s: &SubgroupSet) -> Result<()> {
    if s.group_id != self.id {
      return Err(Error::ParentMismatch);
    }
    Ok(())
  }

  /// Canonical representative: the minimal index in `g A`.
  pub fn coset_rep(&self, g: u32, a: &SubgroupSet) -> u32 {
    a.members().iter().map(|&x| self.mul(g, x)).min().expect("subgroups are non-empty")
  }

  pub fn coset(&self, g: u32, a: &SubgroupSet) -> Result<GroupCoset> {
    self.check_parent(a)?;
    Ok(GroupCoset { subgroup: a.clone(), rep: self.coset_rep(g, a) })
  }

  /// `c1` is contained in `c2` iff `A1` is in `A2` and `rep1` lies in `c2`.
  pub fn coset_inclusion(&self, c1: &GroupCoset, c2: &GroupCoset) -> Result<bool> {
    self.check_parent(&c1.subgroup)?;
    self.check_parent(&c2.subgroup)?;
    Ok(c1.subgroup.is_subset(&c2.subgroup) && c2.subgroup.contains(self.mul(self.inv(c2.rep), c1.rep)))
  }

  /// Elements of the coset `g A`, sorted.
  pub fn coset_elements(&self, g: u32, a: &SubgroupSet) -> Vec<u32> {
    let mut out: Vec<u32> = a.members().iter().map(|&x| self.mul(g, x)).collect();
    out.sort_unstable();
    out
  }
}

/// A subgroup as a sorted member list plus a membership bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
  group_id: u64,
  members: Vec<u32>,
  bits: Vec<u64>,
}

impl SubgroupSet {
  fn from_members(group: &GroupModel, members: Vec<u32>) -> Self {
    let mut bits = vec![0u64; group.order().div_ceil(64)];
    for &m in &members {
      bits[m as usize / 64] |= 1 << (m % 64);
    }
    Self { group_id: group.id, members, bits }
  }

  pub fn group_id(&self) -> u64 { self.group_id }

  pub fn members(&self) -> &[u32] { &self.members }

  pub fn order(&self) -> usize { self.members.len() }

  #[inline]
  pub fn contains(&self, g: u32) -> bool { self.bits[g as usize / 64] >> (g % 64) & 1 == 1 }

  pub fn is_subset(&self, other: &SubgroupSet) -> bool {
    self.group_id == other.group_id && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
  }

  pub fn intersection(&self, group: &GroupModel, other: &SubgroupSet) -> SubgroupSet {
    SubgroupSet::from_members(group, self.members.iter().copied().filter(|&g| other.contains(g)).collect())
  }

  pub fn is_abelian(&self, group: &GroupModel) -> bool {
    self.members.iter().enumerate().all(|(i, &a)| self.members[i + 1..].iter().all(|&b| group.commute(a, b)))
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupCoset {
  pub subgroup: SubgroupSet,
  pub rep: u32,
}

/// The Heisenberg group `V x Z/p` with `(v1 + v2, b(v1, v2) + t1 + t2)`.
///
/// For `p = 2` the commutator `2 b(v1, v2)` vanishes and the model is
/// elementary abelian.
pub fn heisenberg(space: &SymplecticSpace) -> Result<GroupModel> {
  let form = space.form().clone();
  GroupModel::from_cocycle(
    format!("H(F_{}^{})", space.p(), space.dim()),
    space.field(),
    space.dim(),
    move |u, v| form.eval(u, v),
  )
}

/// Extraspecial group of order `p^(2r+1)` from an upper-triangular cocycle on
/// the symplectic basis. `Minus` adds the diagonal terms on the last
/// hyperbolic pair so that the squaring map is anisotropic there.
pub fn extraspecial(p: u32, r: usize, variant: ExtraspecialVariant) -> Result<GroupModel> {
  let field = FieldSpec::new(p)?;
  match (variant, p) {
    (ExtraspecialVariant::ExponentP, 2) => {
      return Err(Error::InvalidParameters("exponent-p extraspecial groups need odd p".into()))
    }
    (ExtraspecialVariant::Plus | ExtraspecialVariant::Minus, p) if p != 2 => {
      return Err(Error::InvalidParameters("plus/minus extraspecial groups need p = 2".into()))
    }
    _ => {}
  }
  if r == 0 {
    return Err(Error::InvalidParameters("extraspecial groups need r >= 1".into()));
  }
  let name = match variant {
    ExtraspecialVariant::ExponentP => format!("{p}^(1+{})", 2 * r),
    ExtraspecialVariant::Plus => format!("2^(1+{})+", 2 * r),
    ExtraspecialVariant::Minus => format!("2^(1+{})-", 2 * r),
  };
  let minus = variant == ExtraspecialVariant::Minus;
  GroupModel::from_cocycle(name, field, 2 * r, move |u, v| {
    let mut c = 0u8;
    for i in 0..r {
      c = field.add(c, field.mul(u.get(i), v.get(r + i)));
    }
    if minus {
      let (x, xb) = (r - 1, 2 * r - 1);
      c = field.add(c, field.mul(u.get(x), v.get(x)));
      c = field.add(c, field.mul(u.get(xb), v.get(xb)));
    }
    c
  })
}

/// The form `b(v, w) = [lift v, lift w]` on the quotient, checked against
/// every choice of lifts.
pub fn commutator_form(group: &GroupModel) -> Result<AlternatingForm> {
  let q = group
    .quotient()
    .ok_or_else(|| Error::InvalidParameters("group has no vector-space quotient".into()))?;
  let field = q.field;
  let p = field.p() as usize;
  let kernel_size = q.kernel_coord.iter().filter(|c| c.is_some()).count();
  if kernel_size != p && kernel_size != 1 {
    return Err(Error::InvalidParameters(format!("quotient kernel has order {kernel_size}, expected {p}")));
  }
  let mut lifts: HashMap<&FpVector, Vec<u32>> = HashMap::new();
  for (g, v) in q.images.iter().enumerate() {
    lifts.entry(v).or_default().push(g as u32);
  }
  let vectors: Vec<FpVector> = FpVector::all(field, q.dim).collect();
  let value = |v: &FpVector, w: &FpVector| -> Result<u8> {
    let mut seen: Option<u8> = None;
    for &a in &lifts[v] {
      for &b in &lifts[w] {
        let c = q.kernel_coord[group.commutator(a, b) as usize].ok_or(Error::LiftDependence)?;
        match seen {
          Some(s) if s != c => return Err(Error::LiftDependence),
          _ => seen = Some(c),
        }
      }
    }
    Ok(seen.unwrap_or(0))
  };
  let basis: Vec<FpVector> = (0..q.dim).map(|i| FpVector::unit(q.dim, i)).collect();
  let mut gram = vec![vec![0u8; q.dim]; q.dim];
  for i in 0..q.dim {
    for j in 0..q.dim {
      gram[i][j] = value(&basis[i], &basis[j])?;
    }
  }
  let form = AlternatingForm::new(field, gram)?;
  for v in &vectors {
    for w in &vectors {
      if value(v, w)? != form.eval(v, w) {
        return Err(Error::LiftDependence);
      }
    }
  }
  Ok(form)
}

/// All abelian subgroups, trivial subgroup included, sorted by order and
/// then by member list.
pub fn abelian_subgroups(group: &GroupModel) -> Result<Vec<SubgroupSet>> {
  if group.order() > MAX_GROUP_ORDER {
    return Err(Error::Guard(format!("group order {} exceeds {MAX_GROUP_ORDER}", group.order())));
  }
  let n = group.order() as u32;
  let mut seen: HashSet<Vec<u64>> = HashSet::new();
  let start = group.trivial();
  seen.insert(start.bits.clone());
  let mut queue = VecDeque::from([start]);
  let mut out = Vec::new();
  while let Some(a) = queue.pop_front() {
    for g in 0..n {
      if a.contains(g) || !a.members().iter().all(|&x| group.commute(x, g)) {
        continue;
      }
      // <A, g> = union of g^k A for an abelian extension
      let mut members = a.members().to_vec();
      let mut power = g;
      while !a.contains(power) {
        members.extend(a.members().iter().map(|&x| group.mul(power, x)));
        power = group.mul(power, g);
      }
      members.sort_unstable();
      members.dedup();
      let b = SubgroupSet::from_members(group, members);
      if seen.insert(b.bits.clone()) {
        queue.push_back(b);
      }
    }
    out.push(a);
  }
  out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.members.cmp(&y.members)));
  Ok(out)
}

/// `pi = { (e, e') : e e' in [E, E] }` with the embedding `iota(a) = (a, a^-1)`.
#[derive(Clone, Debug)]
pub struct PiGroup {
  pub group: GroupModel,
  factor_order: usize,
  /// `(e, e')` for each element of `pi`.
  pub pairs: Vec<(u32, u32)>,
  lookup: Vec<Option<u32>>,
}

impl PiGroup {
  pub fn element(&self, e: u32, e2: u32) -> Option<u32> { self.lookup[e as usize * self.factor_order + e2 as usize] }

  /// `iota(A) = { (a, a^-1) : a in A }`
  pub fn iota(&self, base: &GroupModel, a: &SubgroupSet) -> Result<SubgroupSet> {
    base.check_parent(a)?;
    let members = a
      .members()
      .iter()
      .map(|&x| self.element(x, base.inv(x)).expect("(a, a^-1) lies in pi"))
      .collect();
    self.group.subgroup(members)
  }
}

pub fn make_pi(base: &GroupModel) -> Result<PiGroup> {
  let derived = base.derived_subgroup();
  let m = base.order();
  let mut pairs = Vec::new();
  for e in 0..m as u32 {
    for e2 in 0..m as u32 {
      if derived.contains(base.mul(e, e2)) {
        pairs.push((e, e2));
      }
    }
  }
  let n = pairs.len();
  if n > MAX_GROUP_ORDER {
    return Err(Error::Guard(format!("pi has order {n}, above {MAX_GROUP_ORDER}")));
  }
  let mut lookup = vec![None; m * m];
  for (i, &(e, e2)) in pairs.iter().enumerate() {
    lookup[e as usize * m + e2 as usize] = Some(i as u32);
  }
  let mut table = vec![0u32; n * n];
  for (i, &(a, a2)) in pairs.iter().enumerate() {
    for (j, &(b, b2)) in pairs.iter().enumerate() {
      let prod = lookup[base.mul(a, b) as usize * m + base.mul(a2, b2) as usize]
        .ok_or_else(|| Error::GroupAxiom("pi is not closed".into()))?;
      table[i * n + j] = prod;
    }
  }
  let elements = pairs.iter().map(|&(a, b)| ElementRepr::Product(a, b)).collect();
  let group = GroupModel::from_table(format!("pi({})", base.name()), elements, table, None)?;
  Ok(PiGroup { group, factor_order: m, pairs, lookup })
}

/// Outcome of the exhaustive check of `phi(e, e') = (nu(e), e e')`.
#[derive(Clone, Debug)]
pub struct PhiReport {
  /// `phi` as element indices of the Heisenberg group.
  pub images: Vec<u32>,
  pub homomorphism_failures: usize,
  pub surjective: bool,
  pub kernel: Vec<u32>,
  /// The kernel equals `{ (z, z^-1) : z central }`.
  pub kernel_is_central_diagonal: bool,
}

impl PhiReport {
  pub fn passed(&self, p: u32) -> bool {
    self.homomorphism_failures == 0
      && self.surjective
      && self.kernel_is_central_diagonal
      && self.kernel.len() == p as usize
  }
}

/// Evaluates `phi: pi -> H(V)` on every element and checks it on every pair.
/// `heis` must be the Heisenberg group of the commutator form of `base`.
pub fn phi_map(pi: &PiGroup, base: &GroupModel, heis: &GroupModel) -> Result<PhiReport> {
  let q = base.quotient().ok_or_else(|| Error::InvalidParameters("base group has no quotient".into()))?;
  let images = pi
    .pairs
    .iter()
    .map(|&(e, e2)| {
      let t = q.kernel_coord[base.mul(e, e2) as usize]
        .ok_or_else(|| Error::Homomorphism("e e' is not in the kernel of nu".into()))?;
      heis.pair(&q.images[e as usize], t).ok_or_else(|| Error::Homomorphism("target is not a matching pair model".into()))
    })
    .collect::<Result<Vec<u32>>>()?;
  let n = pi.group.order() as u32;
  let mut failures = 0;
  for a in 0..n {
    for b in 0..n {
      if images[pi.group.mul(a, b) as usize] != heis.mul(images[a as usize], images[b as usize]) {
        failures += 1;
      }
    }
  }
  let hit: HashSet<u32> = images.iter().copied().collect();
  let kernel: Vec<u32> = (0..n).filter(|&g| images[g as usize] == heis.identity()).collect();
  let mut diagonal: Vec<u32> = base
    .center()
    .iter()
    .map(|&z| pi.element(z, base.inv(z)).expect("(z, z^-1) lies in pi"))
    .collect();
  diagonal.sort_unstable();
  Ok(PhiReport {
    images,
    homomorphism_failures: failures,
    surjective: hit.len() == heis.order(),
    kernel_is_central_diagonal: kernel == diagonal,
    kernel,
  })
}
