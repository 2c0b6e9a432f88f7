use std::collections::{HashMap, HashSet};

use super::coset::{embed_subspaces, proper_subspaces, subspace_poset, CosetPoset};
use super::{barycentric, sphere_j, JVertex, Poset, PosetMap};
use crate::error::{Error, Result};
use crate::fplinalg::{FieldSpec, FpVector, QuotientMap, Subspace};
use crate::groups::{heisenberg, ElementRepr, GroupModel};
use crate::symgeom::{IsotropicDims, SymplecticSpace};

/// `theta_v(A) = (-v + A) cap W` from `T(V)^{vee W}` to `C_W T(W)` and
/// `s_v(w + A) = <v + w, A>` back. With a line `U` in `W` both sides are
/// restricted to subspaces meeting `U` trivially.
#[derive(Clone, Debug)]
pub struct ThetaV {
  field: FieldSpec,
  w: Subspace,
  /// `T(V)^{vee W}` or `T(V)^W_U`.
  pub source: Poset<Subspace>,
  /// `C_W T(W)` or `C_W T(W)_{wedge U}`, in coordinates of the echelon basis of `W`.
  pub target: CosetPoset,
  /// Subspaces of `W` in those coordinates, parallel to `target.collection()`.
  pub target_subspaces: Vec<Subspace>,
  pub theta: PosetMap,
  pub s: PosetMap,
}

pub fn theta_v(field: FieldSpec, w: &Subspace, v: &FpVector, u: Option<&Subspace>) -> Result<ThetaV> {
  let n = w.ambient_dim();
  if n == 0 || w.dim() + 1 != n {
    return Err(Error::InvalidParameters("W must be a hyperplane".into()));
  }
  if v.dim() != n {
    return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
  }
  if w.member(field, v)? {
    return Err(Error::Hypothesis("v lies in W".into()));
  }
  if let Some(u) = u {
    if u.dim() != 1 || !w.contains(field, u)? {
      return Err(Error::InvalidParameters("U must be a line inside W".into()));
    }
  }
  let pivots = w.pivots();
  let to_w = |x: &FpVector| FpVector::from_residues(field, pivots.iter().map(|&i| x.get(i)).collect());
  let from_w = |c: &FpVector| {
    w.basis().iter().zip(c.coords()).fold(FpVector::zero(n), |acc, (b, &ci)| acc.axpy(field, ci, b))
  };
  let to_w_subspace = |s: &Subspace| -> Result<Subspace> {
    let basis = s.basis().iter().map(to_w).collect::<Result<Vec<_>>>()?;
    Subspace::span(field, n - 1, &basis)
  };
  let u_w = u.map(to_w_subspace).transpose()?;

  let mut sources = Vec::new();
  for a in proper_subspaces(field, n) {
    if a.sum(field, w)?.dim() == n && u.map_or(Ok(true), |u| a.intersection(field, u).map(|x| x.is_zero()))? {
      sources.push(a);
    }
  }
  let source = subspace_poset(field, sources)?;

  let mut target_subspaces = Vec::new();
  for b in proper_subspaces(field, n - 1) {
    if u_w.as_ref().map_or(Ok(true), |u| b.intersection(field, u).map(|x| x.is_zero()))? {
      target_subspaces.push(b);
    }
  }
  let group = GroupModel::vector_space(field, n - 1)?;
  let collection = embed_subspaces(&group, field, &target_subspaces)?;
  let target = CosetPoset::new(group, collection)?;
  let member: HashMap<&Subspace, u32> = target_subspaces.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();

  let quotient = QuotientMap::new(field, w.clone());
  let qv = quotient.apply(v)?.get(0);
  let theta_image = source
    .labels()
    .iter()
    .map(|a| {
      let (b, qb) = a
        .basis()
        .iter()
        .map(|b| (b, quotient.apply(b).map(|q| q.get(0))))
        .find(|(_, q)| !matches!(q, Ok(0)))
        .expect("A is not inside W");
      let a0 = b.scale(field, field.mul(qv, field.inv(qb?)));
      let rep = to_w(&a0.sub(field, v))?;
      let inside = to_w_subspace(&a.intersection(field, w)?)?;
      let m = *member.get(&inside).ok_or_else(|| Error::NotInPoset(format!("{inside:?}")))?;
      target.coset_of(rep.index(field) as u32, m).ok_or_else(|| Error::NotInPoset("theta_v image".into()))
    })
    .collect::<Result<Vec<u32>>>()?;
  let s_image = target
    .poset()
    .labels()
    .iter()
    .map(|l| {
      let wv = from_w(&FpVector::from_index(field, n - 1, l.rep as usize));
      let mut gens: Vec<FpVector> = target_subspaces[l.member as usize].basis().iter().map(from_w).collect();
      gens.push(v.add(field, &wv));
      let a = Subspace::span(field, n, &gens)?;
      source.index_of(&a).ok_or_else(|| Error::NotInPoset(format!("s_v image {a:?}")))
    })
    .collect::<Result<Vec<u32>>>()?;
  let theta = PosetMap::new(&source, target.poset(), theta_image)?;
  let s = PosetMap::new(target.poset(), &source, s_image)?;
  Ok(ThetaV { field, w: w.clone(), source, target, target_subspaces, theta, s })
}

impl ThetaV {
  pub fn field(&self) -> FieldSpec { self.field }

  pub fn hyperplane(&self) -> &Subspace { &self.w }

  /// Violations of `theta s(c) >= c` and of `s theta(B) <= B`.
  pub fn comparability_failures(&self) -> (usize, usize) {
    let t = self.target.poset();
    let up = (0..t.len() as u32).filter(|&c| !t.leq(c, self.theta.apply(self.s.apply(c)))).count();
    let down = (0..self.source.len() as u32).filter(|&b| !self.source.leq(self.s.apply(self.theta.apply(b)), b)).count();
    (up, down)
  }
}

/// `theta-bar: I(V)^{vee H(x^perp)} -> C_{H(Z)} I(Z)` and its inverse
/// `s-bar`, where `x`, `xbar` is the last hyperbolic pair and `Z` is spanned
/// by the remaining basis vectors, identified with `x^perp / <x>`.
#[derive(Clone, Debug)]
pub struct ThetaBar {
  space: SymplecticSpace,
  quotient: SymplecticSpace,
  /// Isotropic subspaces not contained in `x^perp`.
  pub source: Poset<Subspace>,
  pub target: CosetPoset,
  /// Isotropic subspaces of `Z`, parallel to `target.collection()`.
  pub target_subspaces: Vec<Subspace>,
  pub theta: PosetMap,
  pub s: PosetMap,
}

pub fn theta_bar(space: &SymplecticSpace) -> Result<ThetaBar> {
  let field = space.field();
  let r = space.r();
  if r < 2 || space.radical_dim() != 0 {
    return Err(Error::InvalidParameters("theta-bar needs a non-degenerate space with r >= 2".into()));
  }
  if space.form() != SymplecticSpace::standard_over(field, r, 0)?.form() {
    return Err(Error::InvalidParameters("theta-bar needs the standard symplectic basis".into()));
  }
  let quotient = SymplecticSpace::standard_over(field, r - 1, 0)?;
  let x = space.x(r - 1);
  let xbar = space.xbar(r - 1);
  let project = |u: &FpVector| project_last_pair(u, r);

  let sources: Vec<Subspace> = space
    .enumerate_isotropic(IsotropicDims::All)
    .into_iter()
    .filter(|a| a.basis().iter().any(|c| space.b(c, &x) != 0))
    .collect();
  let source = subspace_poset(field, sources)?;

  let target_subspaces = quotient.enumerate_isotropic(IsotropicDims::All);
  let group = heisenberg(&quotient)?;
  let collection = embed_subspaces(&group, field, &target_subspaces)?;
  let target = CosetPoset::new(group, collection)?;
  let member: HashMap<&Subspace, u32> = target_subspaces.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();

  let x_perp = space.perp(&space.span(&[x.clone()])?)?;
  let minus_one = field.neg(1);
  let theta_image = source
    .labels()
    .iter()
    .map(|a| {
      let c = a.basis().iter().find(|c| space.b(c, &x) != 0).expect("A is not inside x^perp");
      // b(a, x) = b(xbar, x) = -1
      let a0 = c.scale(field, field.mul(minus_one, field.inv(space.b(c, &x))));
      let u0 = a0.sub(field, &xbar);
      let t0 = space.b(&a0, &xbar);
      let inside = a.intersection(field, &x_perp)?;
      let projected = quotient.span(&inside.basis().iter().map(project).collect::<Vec<_>>())?;
      let m = *member.get(&projected).ok_or_else(|| Error::NotInPoset(format!("{projected:?}")))?;
      let g = target.group().pair(&project(&u0), t0).expect("pair lies in H(Z)");
      target.coset_of(g, m).ok_or_else(|| Error::NotInPoset("theta-bar image".into()))
    })
    .collect::<Result<Vec<u32>>>()?;

  let mut tb = ThetaBar {
    space: space.clone(),
    quotient,
    source,
    target,
    target_subspaces,
    theta: PosetMap { image: Vec::new() },
    s: PosetMap { image: Vec::new() },
  };
  let s_image = (0..tb.target.len() as u32)
    .map(|i| {
      let l = *tb.target.poset().label(i);
      let ElementRepr::Pair { v, t } = tb.target.group().element(l.rep).clone() else {
        unreachable!("Heisenberg elements are pairs")
      };
      let a = tb.sbar_formula(&v, t, l.member)?;
      tb.source.index_of(&a).ok_or_else(|| Error::NotInPoset(format!("s-bar image {a:?}")))
    })
    .collect::<Result<Vec<u32>>>()?;
  tb.theta = PosetMap::new(&tb.source, tb.target.poset(), theta_image)?;
  tb.s = PosetMap::new(tb.target.poset(), &tb.source, s_image)?;
  Ok(tb)
}

fn project_last_pair(u: &FpVector, r: usize) -> FpVector {
  let coords: Vec<u8> = (0..2 * r).filter(|&i| i != r - 1 && i != 2 * r - 1).map(|i| u.get(i)).collect();
  FpVector::from_residues_unchecked(coords)
}

impl ThetaBar {
  pub fn space(&self) -> &SymplecticSpace { &self.space }

  pub fn quotient(&self) -> &SymplecticSpace { &self.quotient }

  /// `Z -> V`, zero on the last hyperbolic pair.
  pub fn lift(&self, z: &FpVector) -> FpVector {
    let r = self.space.r();
    let mut coords = vec![0u8; 2 * r];
    for i in 0..r - 1 {
      coords[i] = z.get(i);
      coords[r + i] = z.get(r - 1 + i);
    }
    FpVector::from_residues_unchecked(coords)
  }

  pub fn project(&self, u: &FpVector) -> FpVector { project_last_pair(u, self.space.r()) }

  /// `<xbar + t x + w, b(w, a) x + a : a in A>` for the coset `(w, t) A`.
  pub fn sbar_formula(&self, w: &FpVector, t: u8, member: u32) -> Result<Subspace> {
    let field = self.space.field();
    let r = self.space.r();
    let x = self.space.x(r - 1);
    let wl = self.lift(w);
    let mut gens = vec![self.space.xbar(r - 1).axpy(field, t, &x).add(field, &wl)];
    for a in self.target_subspaces[member as usize].basis() {
      let al = self.lift(a);
      gens.push(al.axpy(field, self.space.b(&wl, &al), &x));
    }
    self.space.span(&gens)
  }

  /// Cosets whose `s-bar` value depends on the chosen element.
  pub fn sbar_independence_failures(&self) -> Result<usize> {
    let mut failures = 0;
    for i in 0..self.target.len() as u32 {
      let member = self.target.poset().label(i).member;
      let expected = self.source.label(self.s.apply(i));
      for g in self.target.elements(i) {
        let ElementRepr::Pair { v, t } = self.target.group().element(g) else { unreachable!() };
        if self.sbar_formula(v, *t, member)? != *expected {
          failures += 1;
          break;
        }
      }
    }
    Ok(failures)
  }

  /// Violations of `s-bar theta-bar = id` and `theta-bar s-bar = id`.
  pub fn roundtrip_failures(&self) -> (usize, usize) {
    let st = (0..self.source.len() as u32).filter(|&a| self.s.apply(self.theta.apply(a)) != a).count();
    let ts = (0..self.target.len() as u32).filter(|&c| self.theta.apply(self.s.apply(c)) != c).count();
    (st, ts)
  }
}

/// `tau-tilde: sd J -> C_{H(V)} I(V)` realized as `theta-bar` after the
/// chamber map `tau-bar` into `I(V')^{vee H(x_0^perp)}`, with
/// `V' = <x_0, xbar_0> + V`.
#[derive(Clone, Debug)]
pub struct TauTilde {
  pub j: Poset<JVertex>,
  pub sd: Poset<Vec<u32>>,
  pub thetabar: ThetaBar,
  /// `tau-bar`, into `thetabar.source`.
  pub tau_bar: PosetMap,
  pub tau: PosetMap,
}

pub fn tau_tilde(p: u32, r: usize) -> Result<TauTilde> {
  let base = SymplecticSpace::standard(p, r, 0)?;
  let j = sphere_j(&base)?;
  let sd = barycentric(&j)?;
  let big = SymplecticSpace::standard(p, r + 1, 0)?;
  let thetabar = theta_bar(&big)?;
  let field = big.field();
  let x0 = big.x(r);
  let xbar0 = big.xbar(r);
  let lifted: Vec<FpVector> = j
    .labels()
    .iter()
    .map(|jv| {
      let v = thetabar.lift(&jv.vector).add(field, &xbar0);
      if jv.factor == 0 && !jv.bar { v.add(field, &x0) } else { v }
    })
    .collect();
  let tau_bar_image = sd
    .labels()
    .iter()
    .map(|chain| {
      let gens: Vec<FpVector> = chain.iter().map(|&i| lifted[i as usize].clone()).collect();
      let a = big.span(&gens)?;
      if !big.is_isotropic(&a) {
        return Err(Error::NotIsotropic(format!("chamber image of {chain:?} at p = {p}")));
      }
      thetabar.source.index_of(&a).ok_or_else(|| Error::NotInPoset(format!("{a:?}")))
    })
    .collect::<Result<Vec<u32>>>()?;
  let tau_bar = PosetMap::new(&sd, &thetabar.source, tau_bar_image)?;
  let tau = tau_bar.then(&thetabar.theta);
  let tau = PosetMap::new(&sd, thetabar.target.poset(), tau.image)?;
  Ok(TauTilde { j, sd, thetabar, tau_bar, tau })
}

impl TauTilde {
  /// Chains whose image does not project onto `j_1 + <j_k - j_1>` in `V`.
  pub fn support_failures(&self) -> Result<usize> {
    let target = &self.thetabar.target;
    let field = self.thetabar.quotient().field();
    let mut failures = 0;
    for (i, chain) in self.sd.labels().iter().enumerate() {
      let js: Vec<&FpVector> = chain.iter().map(|&k| &self.j.label(k).vector).collect();
      let diffs: Vec<FpVector> = js[1..].iter().map(|v| v.sub(field, js[0])).collect();
      let span = self.thetabar.quotient().span(&diffs)?;
      let affine: HashSet<FpVector> = span.elements(field).iter().map(|d| d.add(field, js[0])).collect();
      let support: HashSet<FpVector> = target
        .elements(self.tau.apply(i as u32))
        .into_iter()
        .map(|g| match target.group().element(g) {
          ElementRepr::Pair { v, .. } => v.clone(),
          _ => unreachable!(),
        })
        .collect();
      if support != affine {
        failures += 1;
      }
    }
    Ok(failures)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn unit(n: usize, i: usize) -> FpVector { FpVector::unit(n, i) }

  #[test]
  fn theta_v_on_the_plane() {
    let f = FieldSpec::new(2).unwrap();
    let w = Subspace::span(f, 2, &[unit(2, 0)]).unwrap();
    let tv = theta_v(f, &w, &unit(2, 1), None).unwrap();
    let diag = Subspace::span(f, 2, &[FpVector::from_ints(f, &[1, 1])]).unwrap();
    let i = tv.source.index_of(&diag).unwrap();
    let c = tv.theta.apply(i);
    let label = tv.target.poset().label(c);
    assert!(tv.target_subspaces[label.member as usize].is_zero());
    assert_eq!(label.rep, 1);
    assert_eq!(tv.s.apply(c), i);
    assert_eq!(tv.comparability_failures(), (0, 0));
  }

  #[test]
  fn theta_v_comparabilities_exhaustive_small() {
    for p in [2, 3] {
      let f = FieldSpec::new(p).unwrap();
      for n in 1..=3 {
        for w in crate::fplinalg::subspaces_of_dim(f, n, n - 1) {
          for v in FpVector::all(f, n).filter(|v| !w.member(f, v).unwrap()) {
            let tv = theta_v(f, &w, &v, None).unwrap();
            assert_eq!(tv.comparability_failures(), (0, 0));
          }
        }
      }
    }
  }

  #[test]
  fn theta_v_rejects_v_in_w() {
    let f = FieldSpec::new(3).unwrap();
    let w = Subspace::span(f, 2, &[unit(2, 0)]).unwrap();
    assert!(matches!(theta_v(f, &w, &unit(2, 0), None), Err(Error::Hypothesis(_))));
  }

  #[test]
  fn restricted_theta_v_in_dimension_two() {
    let f = FieldSpec::new(3).unwrap();
    let w = Subspace::span(f, 2, &[unit(2, 0)]).unwrap();
    let tv = theta_v(f, &w, &unit(2, 1), Some(&w)).unwrap();
    // p lines other than W on one side, p points of W on the other
    assert_eq!(tv.source.len(), 3);
    assert_eq!(tv.target.len(), 3);
    assert_eq!(tv.comparability_failures(), (0, 0));
  }

  #[test]
  fn sbar_examples() {
    let s = SymplecticSpace::standard(2, 2, 0).unwrap();
    let tb = theta_bar(&s).unwrap();
    let f = s.field();
    let zero_member = tb.target_subspaces.iter().position(Subspace::is_zero).unwrap() as u32;
    let at = |w: &FpVector| {
      let g = tb.target.group().pair(w, 0).unwrap();
      tb.target.coset_of(g, zero_member).unwrap()
    };
    let origin = at(&FpVector::zero(2));
    assert_eq!(tb.source.label(tb.s.apply(origin)), &s.span(&[s.xbar(1)]).unwrap());
    let c = at(&unit(2, 0));
    let a = tb.s.apply(c);
    assert_eq!(tb.source.label(a), &s.span(&[s.xbar(1).add(f, &s.x(0))]).unwrap());
    assert_eq!(tb.theta.apply(a), c);
  }

  #[test]
  fn thetabar_sbar_are_inverse() {
    for p in [2, 3] {
      let tb = theta_bar(&SymplecticSpace::standard(p, 2, 0).unwrap()).unwrap();
      assert_eq!(tb.source.len(), tb.target.len());
      assert_eq!(tb.roundtrip_failures(), (0, 0));
      assert_eq!(tb.sbar_independence_failures().unwrap(), 0);
    }
  }

  #[test]
  fn tau_tilde_at_two() {
    let tt = tau_tilde(2, 2).unwrap();
    assert_eq!(tt.sd.len(), 26);
    assert_eq!(tt.support_failures().unwrap(), 0);
    let target = &tt.thetabar.target;
    let xbar_chain = tt.j.labels().iter().position(|v| v.factor == 0 && v.bar).unwrap() as u32;
    let x1 = tt.j.labels().iter().position(|v| v.factor == 1 && !v.bar).unwrap() as u32;
    let single = tt.sd.index_of(&vec![xbar_chain]).unwrap();
    let image = tt.tau.apply(single);
    assert_eq!(target.elements(image), vec![target.group().identity()]);
    let pair = tt.sd.index_of(&vec![xbar_chain, x1]).unwrap();
    let line = tt.thetabar.quotient().span(&[tt.j.label(x1).vector.clone()]).unwrap();
    let expected = target.group().embed_subspace(target.group().quotient().unwrap().field, &line).unwrap();
    assert_eq!(target.elements(tt.tau.apply(pair)), expected.members());
  }

  #[test]
  fn tau_tilde_needs_characteristic_two() {
    assert!(matches!(tau_tilde(3, 2), Err(Error::NotIsotropic(_))));
  }

  #[test]
  fn literal_zero_lifts_are_not_order_preserving() {
    // (j_1, 0) <j_k - j_1> misses (j_2, 0) when b(j_1, j_2) != 0
    let tt = tau_tilde(2, 2).unwrap();
    let target = &tt.thetabar.target;
    let g = target.group();
    let space = tt.thetabar.quotient();
    let field = space.field();
    let image: Vec<u32> = tt
      .sd
      .labels()
      .iter()
      .map(|chain| {
        let js: Vec<&FpVector> = chain.iter().map(|&k| &tt.j.label(k).vector).collect();
        let diffs: Vec<FpVector> = js[1..].iter().map(|v| v.sub(field, js[0])).collect();
        let sub = g.embed_subspace(field, &space.span(&diffs).unwrap()).unwrap();
        let m = target.member_of(&sub).unwrap();
        target.coset_of(g.pair(js[0], 0).unwrap(), m).unwrap()
      })
      .collect();
    assert!(matches!(PosetMap::new(&tt.sd, target.poset(), image), Err(Error::NotOrderPreserving(_))));
  }
}
