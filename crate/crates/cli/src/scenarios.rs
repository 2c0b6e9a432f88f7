use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use isocoset::fplinalg::{subspaces_of_dim, FieldSpec, FpVector, Subspace};
use isocoset::formulas::{n_isotropic, steinberg_dim, wedge_count};
use isocoset::groups::{
  abelian_subgroups, commutator_form, extraspecial, heisenberg, make_pi, phi_map, ElementRepr, ExtraspecialVariant,
  GroupModel, SubgroupSet,
};
use isocoset::homology::{
  euler_characteristic, fundamental_cycle, homology, is_boundary, pi1_report, pushforward, ChainComplex, HomologyGroup,
  Pi1Outcome,
};
use isocoset::posets::{
  coset_image_map, collection_vee, embed_subspaces, fiber, proper_nonzero_subspaces, proper_subspaces, tau_tilde,
  theta_bar, theta_v, CosetPoset, FiberSide, Poset,
};
use isocoset::symgeom::{IsotropicDims, SymplecticSpace};
use isocoset::{Error, Result};

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
  Heisenberg,
  Plus,
  Minus,
  ExponentP,
  #[value(name = "Q8", alias = "q8")]
  #[serde(rename = "Q8")]
  Q8,
  #[value(name = "D8", alias = "d8")]
  #[serde(rename = "D8")]
  D8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollectionKind {
  /// `T(V)`, every proper subspace.
  Subspaces,
  /// `T°(V)`, which lacks the trivial subgroup.
  NonzeroSubspaces,
  /// `I(V)` inside `H(V)`.
  Isotropic,
}

/// Parameters shared by the scenarios after validation.
#[derive(Clone, Debug)]
pub struct Params {
  pub p: u32,
  pub r: usize,
  pub dim: Option<usize>,
  pub group: Option<GroupKind>,
  pub collection: CollectionKind,
  pub long: bool,
}

/// Desk-scale guard: `p <= 5`, `1 <= r <= 2`, and `r = 3` only with `--long`.
pub fn guard(params: &Params) -> Result<()> {
  FieldSpec::new(params.p)?;
  if params.p > 5 {
    return Err(Error::Guard(format!("p = {} exceeds 5", params.p)));
  }
  match params.r {
    0 => Err(Error::InvalidParameters("r must be at least 1".into())),
    1 | 2 => Ok(()),
    3 if params.long => Ok(()),
    3 => Err(Error::Guard("r = 3 needs --long".into())),
    r => Err(Error::Guard(format!("r = {r} exceeds 3"))),
  }
}

/// Errors that mean the scenario was refused rather than failed.
pub fn is_refusal(e: &Error) -> bool {
  matches!(e, Error::Guard(_) | Error::Hypothesis(_) | Error::InvalidParameters(_) | Error::NotPrime(_) | Error::NotIsotropic(_))
}

pub fn build_group(kind: GroupKind, p: u32, r: usize) -> Result<GroupModel> {
  match kind {
    GroupKind::Heisenberg => heisenberg(&SymplecticSpace::standard(p, r, 0)?),
    GroupKind::Plus => extraspecial(p, r, ExtraspecialVariant::Plus),
    GroupKind::Minus => extraspecial(p, r, ExtraspecialVariant::Minus),
    GroupKind::ExponentP => extraspecial(p, r, ExtraspecialVariant::ExponentP),
    GroupKind::Q8 => extraspecial(2, 1, ExtraspecialVariant::Minus),
    GroupKind::D8 => extraspecial(2, 1, ExtraspecialVariant::Plus),
  }
}

fn require_extraspecial(e: &GroupModel) -> Result<()> {
  let q = e.quotient().ok_or_else(|| Error::Hypothesis(format!("{} has no elementary abelian quotient", e.name())))?;
  if e.is_abelian() || e.center().len() != q.field.p() as usize {
    return Err(Error::Hypothesis(format!("{} is not extraspecial", e.name())));
  }
  Ok(())
}

fn reduced<L: Clone + Eq + std::hash::Hash>(p: &Poset<L>) -> Result<Vec<HomologyGroup>> {
  Ok(homology(&ChainComplex::new(p.order_complex()?)?, true))
}

/// Non-zero reduced groups as `H<i>=...` strings.
fn signature(h: &[HomologyGroup]) -> Vec<String> {
  h.iter().filter(|g| !g.is_zero()).map(|g| format!("H{}={}", g.degree, g)).collect()
}

fn rank(h: &[HomologyGroup], degree: i64) -> usize { h.iter().find(|g| g.degree == degree).map_or(0, |g| g.betti) }

fn isotropic_cosets(group: &GroupModel, space: &SymplecticSpace) -> Result<CosetPoset> {
  let coll = embed_subspaces(group, space.field(), &space.enumerate_isotropic(IsotropicDims::All))?;
  CosetPoset::new(group.clone(), coll)
}

fn commutator_space(e: &GroupModel) -> Result<SymplecticSpace> { Ok(SymplecticSpace::from_form(commutator_form(e)?)) }

/// `H~_i = 0` below `top`, `H~_top = Z^d` free, and the `pi_1` report for `top >= 2`.
fn sphere_checks(poset: &Poset<impl Clone + Eq + std::hash::Hash>, top: usize, d: usize, checks: &mut Vec<Check>) -> Result<()> {
  let complex = poset.order_complex()?;
  let cc = ChainComplex::new(complex.clone())?;
  let h = homology(&cc, true);
  let below: Vec<String> = h.iter().filter(|g| (g.degree as usize) < top && !g.is_zero()).map(|g| format!("H{}={}", g.degree, g)).collect();
  checks.push(Check::equal("lower reduced homology", Vec::<String>::new(), below));
  let top_group = h.iter().find(|g| g.degree == top as i64);
  checks.push(Check::equal(format!("rank of H{top}"), d, top_group.map_or(0, |g| g.betti)));
  checks.push(Check::holds(format!("H{top} is free"), top_group.map_or(true, |g| g.is_free()), "free", top_group.map(|g| g.to_string())));
  let above: Vec<String> = h.iter().filter(|g| g.degree as usize > top && !g.is_zero()).map(|g| format!("H{}={}", g.degree, g)).collect();
  checks.push(Check::equal("higher reduced homology", Vec::<String>::new(), above));
  let alternating: i64 = h.iter().map(|g| if g.degree % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
  checks.push(Check::equal("Euler characteristic matches Betti numbers", euler_characteristic(&complex) - 1, alternating));
  if top >= 2 {
    let report = pi1_report(&complex);
    let abelian_trivial = report.abelianization_rank == 0 && report.abelianization_torsion.is_empty();
    checks.push(match report.outcome {
      Pi1Outcome::Trivial => Check::holds("pi1", true, "trivial", &report),
      Pi1Outcome::Unknown if abelian_trivial => Check::unknown("pi1", "trivial", &report),
      _ => Check::holds("pi1", false, "trivial", &report),
    });
  }
  Ok(())
}

pub fn sphericity(params: &Params) -> Result<Vec<Check>> {
  let kind = params.group.unwrap_or(GroupKind::Heisenberg);
  let mut checks = Vec::new();
  if kind == GroupKind::Heisenberg {
    let space = SymplecticSpace::standard(params.p, params.r, 0)?;
    let poset = isotropic_cosets(&heisenberg(&space)?, &space)?;
    let w = wedge_count(params.p, params.r)?;
    let complex = poset.poset().order_complex()?;
    checks.push(Check::equal("Euler characteristic", w.euler.to_string(), euler_characteristic(&complex).to_string()));
    let d: usize = w.d.try_into().map_err(|_| Error::Guard("d does not fit in usize".into()))?;
    sphere_checks(poset.poset(), params.r, d, &mut checks)?;
    return Ok(checks);
  }
  let e = build_group(kind, params.p, params.r)?;
  require_extraspecial(&e)?;
  let space = commutator_space(&e)?;
  if space.r() < 2 {
    return Err(Error::Hypothesis("sphericity of C_pi A(E) needs r >= 2".into()));
  }
  let pi = make_pi(&e)?;
  let lifted = abelian_subgroups(&e)?.iter().map(|a| pi.iota(&e, a)).collect::<Result<Vec<SubgroupSet>>>()?;
  let poset = CosetPoset::new(pi.group.clone(), lifted)?;
  let d: usize = wedge_count(space.p(), space.r())?.d.try_into().map_err(|_| Error::Guard("d too large".into()))?;
  sphere_checks(poset.poset(), space.r(), d, &mut checks)?;
  Ok(checks)
}

pub fn reduction(params: &Params) -> Result<Vec<Check>> {
  let e = build_group(params.group.unwrap_or(GroupKind::Q8), params.p, params.r)?;
  require_extraspecial(&e)?;
  let q = e.quotient().expect("checked above").clone();
  let space = commutator_space(&e)?;
  let src = CosetPoset::new(e.clone(), abelian_subgroups(&e)?)?;
  let v = GroupModel::vector_space(q.field, q.dim)?;
  let dst = isotropic_cosets(&v, &space)?;
  let hom: Vec<u32> = q.images.iter().map(|x| x.index(q.field) as u32).collect();
  let nu = coset_image_map(&src, &dst, &hom)?;
  let mut missing = 0;
  for y in 0..dst.len() as u32 {
    if !fiber(&nu, src.poset(), dst.poset(), y, FiberSide::Under)?.has_terminal() {
      missing += 1;
    }
  }
  let (hs, ht) = (reduced(src.poset())?, reduced(dst.poset())?);
  Ok(vec![
    Check::equal("fibers of nu-hat without terminal object", 0, missing),
    Check::equal("reduced homology of C_E A(E) against C_V I(V)", signature(&ht), signature(&hs)),
  ])
}

struct SplitInstance {
  group: Arc<GroupModel>,
  collection: Vec<SubgroupSet>,
  h: SubgroupSet,
  g: u32,
}

fn split_instance(params: &Params) -> Result<SplitInstance> {
  let p = params.p;
  match params.collection {
    CollectionKind::Subspaces | CollectionKind::NonzeroSubspaces => {
      let n = params.dim.unwrap_or(3);
      if !(2..=4).contains(&n) {
        return Err(Error::Guard(format!("dim = {n} outside 2..=4")));
      }
      let f = FieldSpec::new(p)?;
      let group = Arc::new(GroupModel::vector_space(f, n)?);
      let subs = if params.collection == CollectionKind::Subspaces { proper_subspaces(f, n) } else { proper_nonzero_subspaces(f, n) };
      let collection = embed_subspaces(&group, f, &subs)?;
      let w = Subspace::span(f, n, &(0..n - 1).map(|i| FpVector::unit(n, i)).collect::<Vec<_>>())?;
      let h = group.embed_subspace(f, &w)?;
      let g = FpVector::unit(n, n - 1).index(f) as u32;
      Ok(SplitInstance { group, collection, h, g })
    }
    CollectionKind::Isotropic => {
      let space = SymplecticSpace::standard(p, params.r, 0)?;
      let group = Arc::new(heisenberg(&space)?);
      let collection = embed_subspaces(&group, space.field(), &space.enumerate_isotropic(IsotropicDims::All))?;
      let x = space.x(params.r - 1);
      let members = (0..group.order() as u32)
        .filter(|&e| matches!(group.element(e), ElementRepr::Pair { v, .. } if space.b(v, &x) == 0))
        .collect();
      let h = group.subgroup(members)?;
      let g = group.pair(&space.xbar(params.r - 1), 0).expect("standard basis vector");
      Ok(SplitInstance { group, collection, h, g })
    }
  }
}

/// The hypotheses: `H` normal of index `p` with `g` outside it, and `F`
/// containing the trivial subgroup and a subgroup not inside `H`.
fn check_split_hypotheses(inst: &SplitInstance, p: u32) -> Result<()> {
  let (group, h) = (&inst.group, &inst.h);
  if group.order() != h.order() * p as usize || h.contains(inst.g) {
    return Err(Error::Hypothesis("H must have index p with g outside H".into()));
  }
  let normal = (0..group.order() as u32).all(|x| h.members().iter().all(|&y| h.contains(group.mul(group.mul(x, y), group.inv(x)))));
  if !normal {
    return Err(Error::Hypothesis("H is not normal".into()));
  }
  if !inst.collection.iter().any(|a| a.order() == 1) {
    return Err(Error::Hypothesis("the collection does not contain the trivial subgroup".into()));
  }
  if inst.collection.iter().all(|a| a.is_subset(h)) {
    return Err(Error::Hypothesis("every subgroup of the collection lies in H".into()));
  }
  Ok(())
}

pub fn split_seq(params: &Params) -> Result<Vec<Check>> {
  let inst = split_instance(params)?;
  check_split_hypotheses(&inst, params.p)?;
  let p = params.p as usize;
  let whole = reduced(CosetPoset::new(inst.group.clone(), inst.collection.clone())?.poset())?;
  let vee = collection_vee(&inst.group, &inst.collection, &inst.h)?;
  let vee_h = reduced(CosetPoset::new(inst.group.clone(), vee)?.poset())?;
  let relative = (1..=p)
    .map(|k| reduced(CosetPoset::relative(inst.group.clone(), inst.collection.clone(), inst.group.pow(inst.g, k), &inst.h)?.poset()))
    .collect::<Result<Vec<_>>>()?;
  let top = whole.iter().chain(&vee_h).map(|x| x.degree).max().unwrap_or(0) + 1;
  let mut checks = vec![Check::holds("hypotheses", true, "satisfied", "satisfied")];
  for i in 1..=top {
    let lhs = rank(&whole, i) as i64;
    let rhs = (p as i64 - 1) * rank(&vee_h, i - 1) as i64 - relative.iter().map(|r| rank(r, i - 1) as i64).sum::<i64>();
    checks.push(Check::equal(format!("rank identity in degree {i}"), lhs, rhs));
  }
  Ok(checks)
}

pub fn maps(params: &Params) -> Result<Vec<Check>> {
  let f = FieldSpec::new(params.p)?;
  let n = params.dim.unwrap_or((2 * params.r).min(4));
  if !(2..=4).contains(&n) {
    return Err(Error::Guard(format!("dim = {n} outside 2..=4")));
  }
  let mut checks = Vec::new();
  let (mut up, mut down, mut pairs) = (0, 0, 0);
  let (mut rup, mut rdown, mut restricted) = (0, 0, 0);
  for w in subspaces_of_dim(f, n, n - 1) {
    let outside: Vec<FpVector> = FpVector::all(f, n).filter(|v| !w.member(f, v).unwrap_or(true)).collect();
    for v in &outside {
      let (a, b) = theta_v(f, &w, v, None)?.comparability_failures();
      up += a;
      down += b;
      pairs += 1;
    }
    for u in subspaces_of_dim(f, n, 1) {
      if w.contains(f, &u)? {
        let (a, b) = theta_v(f, &w, &outside[0], Some(&u))?.comparability_failures();
        rup += a;
        rdown += b;
        restricted += 1;
      }
    }
  }
  checks.push(Check::equal(format!("theta_v s_v >= id over {pairs} (W, v)"), 0, up));
  checks.push(Check::equal(format!("s_v theta_v <= id over {pairs} (W, v)"), 0, down));
  checks.push(Check::equal(format!("restricted comparabilities over {restricted} (W, U)"), [0, 0], [rup, rdown]));
  if params.r >= 2 {
    let tb = theta_bar(&SymplecticSpace::standard(params.p, params.r, 0)?)?;
    let (st, ts) = tb.roundtrip_failures();
    checks.push(Check::equal("s-bar theta-bar = id", 0, st));
    checks.push(Check::equal("theta-bar s-bar = id", 0, ts));
    checks.push(Check::equal("s-bar formula independent of representative", 0, tb.sbar_independence_failures()?));
  } else {
    checks.push(Check::skipped("s-bar theta-bar", "needs r >= 2"));
  }
  Ok(checks)
}

pub fn tau(params: &Params) -> Result<Vec<Check>> {
  let t = tau_tilde(params.p, params.r)?;
  let sd_cc = ChainComplex::new(t.sd.order_complex()?)?;
  let z = fundamental_cycle(&t.j, &t.sd, &sd_cc)?;
  let target = ChainComplex::new(t.thetabar.target.poset().order_complex()?)?;
  let image = pushforward(&t.tau, &sd_cc, &target, &z)?;
  let cert = is_boundary(&target, &image);
  let top = homology(&target, true).into_iter().find(|g| g.degree == params.r as i64);
  Ok(vec![
    Check::equal("chains mapping onto j1 + <j_k - j1>", 0, t.support_failures()?),
    Check::equal("fundamental cycle support", sd_cc.complex().count(params.r), z.coefficients.len()),
    Check::holds("pushforward is non-zero", !image.is_zero(), "non-zero", image.coefficients.len()),
    Check::holds("pushforward is not a boundary", !cert.rational_boundary, "rank [d|z] > rank d", &cert),
    Check::holds(
      "top homology of the target is free",
      top.as_ref().map_or(true, |g| g.is_free()),
      "free",
      top.map(|g| g.to_string()),
    ),
  ])
}

pub fn formulas(params: &Params) -> Result<Vec<Check>> {
  let (p, r) = (params.p, params.r);
  let w = wedge_count(p, r)?;
  let alternating: BigInt = (0..=r)
    .map(|j| {
      let sign = if (r - j) % 2 == 0 { 1 } else { -1 };
      Ok(BigInt::from(sign) * BigInt::from(p).pow((2 * r + 1 - j) as u32) * n_isotropic(p, r, j)? * steinberg_dim(p, r - j))
    })
    .sum::<Result<BigInt>>()?;
  let mut checks = vec![
    Check::equal("Euler characteristic, closed form against alternating sum", alternating.to_string(), w.euler.to_string()),
  ];
  let space = SymplecticSpace::standard(p, r, 0)?;
  for j in 0..=r {
    let formula = n_isotropic(p, r, j)?;
    let count = space.enumerate_isotropic(IsotropicDims::Exactly(j)).len();
    checks.push(Check::equal(format!("N_{j} against enumeration"), formula.to_string(), count.to_string()));
  }
  match heisenberg(&space).and_then(|g| isotropic_cosets(&g, &space)).and_then(|c| Ok(c.poset().order_complex()?)) {
    Ok(c) => checks.push(Check::equal("Euler characteristic from simplex counts", w.euler.to_string(), euler_characteristic(&c).to_string())),
    Err(e) if is_refusal(&e) => checks.push(Check::skipped("Euler characteristic from simplex counts", e.to_string())),
    Err(e) => return Err(e),
  }
  Ok(checks)
}

pub fn pi_phi(params: &Params) -> Result<Vec<Check>> {
  let e = build_group(params.group.unwrap_or(GroupKind::Q8), params.p, params.r)?;
  require_extraspecial(&e)?;
  let p = e.quotient().expect("checked above").field.p();
  let pi = make_pi(&e)?;
  let heis = heisenberg(&commutator_space(&e)?)?;
  let report = phi_map(&pi, &e, &heis)?;
  // phi(a, a^-1) = (nu(a), 1), so the kernel on iota(A) is iota(A cap Z)
  let (mut wrong_kernel, mut injective) = (0, 0);
  let subgroups = abelian_subgroups(&e)?;
  for a in &subgroups {
    let lifted = pi.iota(&e, a)?;
    let kernel = lifted.members().iter().filter(|&&x| report.images[x as usize] == heis.identity()).count();
    let central = a.members().iter().filter(|x| e.center().contains(x)).count();
    if kernel != central {
      wrong_kernel += 1;
    }
    if kernel == 1 {
      injective += 1;
    }
  }
  let noncentral = subgroups.iter().filter(|a| a.members().iter().filter(|x| e.center().contains(x)).count() == 1).count();
  Ok(vec![
    Check::equal("order of pi", (e.order() * e.order()) / (e.order() / e.derived_subgroup().order()), pi.group.order()),
    Check::equal("homomorphism failures", 0, report.homomorphism_failures),
    Check::equal("surjective", true, report.surjective),
    Check::equal("kernel is {(z, z^-1)}", true, report.kernel_is_central_diagonal),
    Check::equal("kernel order", p, report.kernel.len()),
    Check::equal("abelian subgroups where ker(phi iota) differs from A cap Z", 0, wrong_kernel),
    Check::equal("phi iota injective exactly on A with A cap Z = 1", noncentral, injective),
  ])
}

pub fn almost(params: &Params) -> Result<Vec<Check>> {
  let big = SymplecticSpace::standard(params.p, params.r, 1)?;
  let small = SymplecticSpace::standard(params.p, params.r, 0)?;
  let f = big.field();
  let n = small.dim();
  let g_big = GroupModel::vector_space(f, big.dim())?;
  let g_small = GroupModel::vector_space(f, n)?;
  let src = isotropic_cosets(&g_big, &big)?;
  let dst = isotropic_cosets(&g_small, &small)?;
  // q drops the radical coordinate
  let hom: Vec<u32> = FpVector::all(f, big.dim())
    .map(|v| FpVector::from_residues(f, v.coords()[..n].to_vec()).map(|w| w.index(f) as u32))
    .collect::<Result<_>>()?;
  let q = coset_image_map(&src, &dst, &hom)?;
  let mut missing = 0;
  for y in 0..dst.len() as u32 {
    if !fiber(&q, src.poset(), dst.poset(), y, FiberSide::Under)?.has_terminal() {
      missing += 1;
    }
  }
  let (hs, ht) = (reduced(src.poset())?, reduced(dst.poset())?);
  Ok(vec![
    Check::equal("radical dimension", 1, big.radical_dim()),
    Check::equal("fibers of q-hat without terminal object", 0, missing),
    Check::equal("reduced homology of C_V' I(V') against C_V I(V)", signature(&ht), signature(&hs)),
  ])
}
