//! Acceptance criteria, one line each. Exact integer comparisons throughout.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use isocoset::fplinalg::{all_subspaces, subspaces_of_dim, FieldSpec, FpVector, Subspace};
use isocoset::formulas::{n_isotropic, wedge_count};
use isocoset::groups::{
  abelian_subgroups, commutator_form, extraspecial, heisenberg, make_pi, phi_map, ExtraspecialVariant, GroupModel,
  SubgroupSet,
};
use isocoset::homology::{euler_characteristic, fundamental_cycle, homology, is_boundary, pushforward, ChainComplex, HomologyGroup};
use isocoset::posets::{
  coset_image_map, collection_vee, embed_subspaces, fiber, proper_nonzero_subspaces, proper_subspaces, subspace_poset,
  tau_tilde, theta_bar, theta_v, CosetPoset, FiberSide, Poset,
};
use isocoset::symgeom::{IsotropicDims, SymplecticSpace};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome { if ok { Ok(detail) } else { Err(detail) } }

fn reduced<L: Clone + Eq + std::hash::Hash>(p: &Poset<L>) -> Vec<HomologyGroup> {
  homology(&ChainComplex::new(p.order_complex().expect("chain guard")).expect("chain complex"), true)
}

/// Non-zero groups only, so that complexes of different dimension compare.
fn signature(h: &[HomologyGroup]) -> Vec<String> {
  h.iter().filter(|g| !g.is_zero()).map(|g| format!("H{}={}", g.degree, g)).collect()
}

fn rank(h: &[HomologyGroup], degree: i64) -> usize { h.iter().find(|g| g.degree == degree).map_or(0, |g| g.betti) }

fn heis_isotropic(space: &SymplecticSpace) -> CosetPoset {
  let g = heisenberg(space).unwrap();
  let coll = embed_subspaces(&g, space.field(), &space.enumerate_isotropic(IsotropicDims::All)).unwrap();
  CosetPoset::new(g, coll).unwrap()
}

fn vector_cosets(field: FieldSpec, n: usize, subspaces: &[Subspace]) -> CosetPoset {
  let g = GroupModel::vector_space(field, n).unwrap();
  let coll = embed_subspaces(&g, field, subspaces).unwrap();
  CosetPoset::new(g, coll).unwrap()
}

/// Concentrated in `top` and free.
fn spherical(h: &[HomologyGroup], top: i64) -> bool {
  h.iter().all(|g| g.is_free() && (g.degree == top || g.is_zero()))
}

fn test_groups() -> Vec<(&'static str, GroupModel)> {
  vec![
    ("Q8", extraspecial(2, 1, ExtraspecialVariant::Minus).unwrap()),
    ("D8", extraspecial(2, 1, ExtraspecialVariant::Plus).unwrap()),
    ("E+(32)", extraspecial(2, 2, ExtraspecialVariant::Plus).unwrap()),
    ("E-(32)", extraspecial(2, 2, ExtraspecialVariant::Minus).unwrap()),
    ("H(F3^2)", heisenberg(&SymplecticSpace::standard(3, 1, 0).unwrap()).unwrap()),
  ]
}

fn commutator_space(e: &GroupModel) -> SymplecticSpace { SymplecticSpace::from_form(commutator_form(e).unwrap()) }

fn wedge_count_homology() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for (p, r) in [(2, 1), (3, 1), (2, 2)] {
    let start = Instant::now();
    let h = reduced(heis_isotropic(&SymplecticSpace::standard(p, r, 0).unwrap()).poset());
    let elapsed = start.elapsed();
    let d = wedge_count(p, r).unwrap().d.to_usize().unwrap();
    let top = r as i64;
    let good = spherical(&h, top) && rank(&h, top) == d && (r < 2 || elapsed < Duration::from_secs(60));
    ok &= good;
    notes.push(format!("({p},{r}) d={d} {:?} {:.2}s", signature(&h), elapsed.as_secs_f64()));
  }
  check(ok, notes.join("; "))
}

fn euler_identity() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for (p, r, limit) in [(2, 2, 60), (3, 2, 120)] {
    let start = Instant::now();
    let c = heis_isotropic(&SymplecticSpace::standard(p, r, 0).unwrap()).poset().order_complex().unwrap();
    let chi = euler_characteristic(&c);
    let elapsed = start.elapsed();
    let expected = wedge_count(p, r).unwrap().euler;
    ok &= BigInt::from(chi) == expected && elapsed < Duration::from_secs(limit);
    notes.push(format!("({p},{r}) f={:?} chi={chi} formula={expected}", c.f_vector()));
  }
  check(ok, notes.join("; "))
}

fn reduction() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for (name, e) in test_groups() {
    let q = e.quotient().unwrap().clone();
    let space = commutator_space(&e);
    let subs = abelian_subgroups(&e).unwrap();
    let src = CosetPoset::new(e, subs).unwrap();
    let dst = vector_cosets(q.field, q.dim, &space.enumerate_isotropic(IsotropicDims::All));
    let hom: Vec<u32> = q.images.iter().map(|x| x.index(q.field) as u32).collect();
    let nu = coset_image_map(&src, &dst, &hom).unwrap();
    let missing = (0..dst.len() as u32)
      .filter(|&y| !fiber(&nu, src.poset(), dst.poset(), y, FiberSide::Under).unwrap().has_terminal())
      .count();
    let (hs, ht) = (reduced(src.poset()), reduced(dst.poset()));
    ok &= missing == 0 && signature(&hs) == signature(&ht);
    notes.push(format!("{name}: fibers without terminal={missing} {:?}", signature(&hs)));
  }
  check(ok, notes.join("; "))
}

fn covering() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for v in [ExtraspecialVariant::Plus, ExtraspecialVariant::Minus] {
    let e = extraspecial(2, 2, v).unwrap();
    let subs = abelian_subgroups(&e).unwrap();
    let base = CosetPoset::new(e.clone(), subs.clone()).unwrap();
    let h = homology(&ChainComplex::new(base.poset().order_complex().unwrap()).unwrap(), false);
    let h1_is_zp = h[1].betti == 0 && h[1].torsion == vec![BigInt::from(2)];
    let pi = make_pi(&e).unwrap();
    let lifted: Vec<SubgroupSet> = subs.iter().map(|a| pi.iota(&e, a).unwrap()).collect();
    let cover = reduced(CosetPoset::new(pi.group.clone(), lifted).unwrap().poset());
    let heis = reduced(heis_isotropic(&commutator_space(&e)).poset());
    ok &= h1_is_zp && signature(&cover) == signature(&heis);
    notes.push(format!("{}: H1={} cover {:?} vs {:?}", e.name(), h[1], signature(&cover), signature(&heis)));
  }
  check(ok, notes.join("; "))
}

fn map_identities() -> Outcome {
  let mut theta_failures = (0usize, 0usize);
  let mut pairs = 0usize;
  for p in [2u32, 3] {
    let f = FieldSpec::new(p).unwrap();
    for n in 2..=4 {
      for w in subspaces_of_dim(f, n, n - 1) {
        for v in FpVector::all(f, n).filter(|v| !w.member(f, v).unwrap()) {
          let t = theta_v(f, &w, &v, None).unwrap();
          let (a, b) = t.comparability_failures();
          theta_failures.0 += a;
          theta_failures.1 += b;
          pairs += 1;
        }
      }
    }
  }
  let mut roundtrip = (0usize, 0usize);
  for p in [2u32, 3] {
    let tb = theta_bar(&SymplecticSpace::standard(p, 2, 0).unwrap()).unwrap();
    let (a, b) = tb.roundtrip_failures();
    roundtrip.0 += a;
    roundtrip.1 += b;
  }
  check(
    theta_failures == (0, 0) && roundtrip == (0, 0),
    format!("theta_v/s_v over {pairs} (W, v) pairs: failures {theta_failures:?}; s-bar/theta-bar failures {roundtrip:?}"),
  )
}

/// `rank H~_i(C_G F) = (p-1) rank H~_{i-1}(C_G F^{vee H}) - sum_k rank H~_{i-1}(C_{g^k H} F)`.
fn split_identity(group: Arc<GroupModel>, coll: Vec<SubgroupSet>, h: &SubgroupSet, g: u32, p: usize) -> Result<String, String> {
  let whole = reduced(CosetPoset::new(group.clone(), coll.clone()).unwrap().poset());
  let vee = collection_vee(&group, &coll, h).unwrap();
  let vee_h = reduced(CosetPoset::new(group.clone(), vee).unwrap().poset());
  let relative: Vec<Vec<HomologyGroup>> = (1..=p)
    .map(|k| reduced(CosetPoset::relative(group.clone(), coll.clone(), group.pow(g, k), h).unwrap().poset()))
    .collect();
  let top = whole.iter().chain(&vee_h).map(|x| x.degree).max().unwrap_or(0) + 1;
  let mut bad = Vec::new();
  for i in 1..=top {
    let lhs = rank(&whole, i) as i64;
    let rhs = (p as i64 - 1) * rank(&vee_h, i - 1) as i64 - relative.iter().map(|r| rank(r, i - 1) as i64).sum::<i64>();
    if lhs != rhs {
      bad.push(format!("i={i}: {lhs} vs {rhs}"));
    }
  }
  if bad.is_empty() { Ok(format!("{:?}", signature(&whole))) } else { Err(bad.join(",")) }
}

fn split_sequence() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for p in [2u32, 3] {
    let f = FieldSpec::new(p).unwrap();
    for n in [2usize, 3] {
      let group = Arc::new(GroupModel::vector_space(f, n).unwrap());
      let coll = embed_subspaces(&group, f, &proper_subspaces(f, n)).unwrap();
      let mut cases = 0;
      for w in subspaces_of_dim(f, n, n - 1) {
        let h = group.embed_subspace(f, &w).unwrap();
        let g = FpVector::all(f, n).find(|v| !w.member(f, v).unwrap()).unwrap().index(f) as u32;
        match split_identity(group.clone(), coll.clone(), &h, g, p as usize) {
          Ok(_) => cases += 1,
          Err(e) => {
            ok = false;
            notes.push(format!("T(F_{p}^{n}) W={w:?}: {e}"));
          }
        }
      }
      notes.push(format!("T(F_{p}^{n}) {cases} hyperplanes"));
    }
  }
  let space = SymplecticSpace::standard(2, 2, 0).unwrap();
  let group = Arc::new(heisenberg(&space).unwrap());
  let coll = embed_subspaces(&group, space.field(), &space.enumerate_isotropic(IsotropicDims::All)).unwrap();
  let x = space.x(1);
  let members: Vec<u32> = (0..group.order() as u32)
    .filter(|&e| match group.element(e) {
      isocoset::groups::ElementRepr::Pair { v, .. } => space.b(v, &x) == 0,
      _ => false,
    })
    .collect();
  let h = group.subgroup(members).unwrap();
  let g = group.pair(&space.xbar(1), 0).unwrap();
  match split_identity(group, coll, &h, g, 2) {
    Ok(s) => notes.push(format!("I(V) (2,2) {s}")),
    Err(e) => {
      ok = false;
      notes.push(format!("I(V) (2,2): {e}"));
    }
  }
  check(ok, notes.join("; "))
}

fn nontrivial_class() -> Outcome {
  let start = Instant::now();
  let t = tau_tilde(2, 2).map_err(|e| e.to_string())?;
  let sd_cc = ChainComplex::new(t.sd.order_complex().unwrap()).unwrap();
  let z = fundamental_cycle(&t.j, &t.sd, &sd_cc).map_err(|e| e.to_string())?;
  let target = ChainComplex::new(t.thetabar.target.poset().order_complex().unwrap()).unwrap();
  let image = pushforward(&t.tau, &sd_cc, &target, &z).map_err(|e| e.to_string())?;
  let cert = is_boundary(&target, &image);
  let elapsed = start.elapsed();
  check(
    !image.is_zero() && !cert.rational_boundary && elapsed < Duration::from_secs(60),
    format!(
      "support {} simplices, rank d3={} rank [d3|z]={} {:.2}s",
      image.coefficients.len(),
      cert.rank_boundary,
      cert.rank_augmented,
      elapsed.as_secs_f64()
    ),
  )
}

fn counting() -> Outcome {
  let mut cases: Vec<(u32, usize)> = [2, 3, 5].iter().flat_map(|&p| (1..=2).map(move |r| (p, r))).collect();
  cases.push((2, 3));
  let mut bad = Vec::new();
  let mut checked = 0;
  for (p, r) in cases {
    let space = SymplecticSpace::standard(p, r, 0).unwrap();
    for j in 0..=r {
      let brute = space.enumerate_isotropic(IsotropicDims::Exactly(j)).len();
      checked += 1;
      if BigInt::from(brute) != n_isotropic(p, r, j).unwrap() {
        bad.push(format!("({p},{r},{j})"));
      }
    }
  }
  check(bad.is_empty(), format!("{checked} (p,r,j) triples, mismatches {bad:?}"))
}

fn phi() -> Outcome {
  let mut notes = Vec::new();
  let mut ok = true;
  for (name, e) in test_groups() {
    let p = e.quotient().unwrap().field.p();
    let pi = make_pi(&e).unwrap();
    let heis = heisenberg(&commutator_space(&e)).unwrap();
    let report = phi_map(&pi, &e, &heis).unwrap();
    ok &= report.passed(p);
    notes.push(format!(
      "{name}: |pi|={} failures={} kernel={}",
      pi.group.order(),
      report.homomorphism_failures,
      report.kernel.len()
    ));
  }
  check(ok, notes.join("; "))
}

fn classical_sphericity() -> Outcome {
  let mut bad = Vec::new();
  let mut checked = 0;
  for p in [2u32, 3] {
    let f = FieldSpec::new(p).unwrap();
    for n in 1..=4usize {
      if n >= 2 {
        let building = subspace_poset(f, proper_nonzero_subspaces(f, n)).unwrap();
        checked += 1;
        if !spherical(&reduced(&building), n as i64 - 2) {
          bad.push(format!("T°(F_{p}^{n})"));
        }
      }
      let affine = vector_cosets(f, n, &proper_subspaces(f, n));
      checked += 1;
      if !spherical(&reduced(affine.poset()), n as i64 - 1) {
        bad.push(format!("C_V T(F_{p}^{n})"));
      }
      if n >= 2 {
        for w in subspaces_of_dim(f, n, n - 1) {
          for u in subspaces_of_dim(f, n, 1).into_iter().filter(|u| w.contains(f, u).unwrap()) {
            let sub: Vec<Subspace> = all_subspaces(f, n)
              .into_iter()
              .filter(|a| {
                a.dim() < n && a.sum(f, &w).unwrap().dim() == n && a.intersection(f, &u).unwrap().is_zero()
              })
              .collect();
            checked += 1;
            if !spherical(&reduced(&subspace_poset(f, sub).unwrap()), n as i64 - 2) {
              bad.push(format!("T(F_{p}^{n})^W_U"));
            }
          }
        }
      }
    }
  }
  check(bad.is_empty(), format!("{checked} posets, failures {bad:?}"))
}

fn main() {
  let criteria: [(&str, fn() -> Outcome); 10] = [
    ("wedge count of C_H(V) I(V)", wedge_count_homology),
    ("Euler identity", euler_identity),
    ("reduction along nu-hat", reduction),
    ("covering consistency", covering),
    ("map identities", map_identities),
    ("split sequence ranks", split_sequence),
    ("non-trivial class from tau-tilde", nontrivial_class),
    ("isotropic subspace counts", counting),
    ("phi homomorphism", phi),
    ("classical sphericity", classical_sphericity),
  ];
  let mut failed = 0;
  for (i, (name, run)) in criteria.iter().enumerate() {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
      Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
      Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
      Err(detail) => {
        failed += 1;
        println!("criterion {:>2} FAIL {name} ({secs:.2}s): {detail}", i + 1);
      }
    }
  }
  println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
  if failed > 0 {
    std::process::exit(1);
  }
}
