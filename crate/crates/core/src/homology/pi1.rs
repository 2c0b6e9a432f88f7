//! Edge-path presentations of the fundamental group and Tietze reduction.

use num_bigint::BigInt;
use serde::Serialize;

use super::matrix::{smith_normal_form, SparseMatrix};
use crate::posets::SimplicialComplex;

/// Letters written during substitution before the reduction gives up.
pub const TIETZE_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pi1Outcome {
  Trivial,
  Free,
  Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi1Report {
  pub outcome: Pi1Outcome,
  /// Generators of the edge-path presentation before reduction.
  pub generators: usize,
  pub relators: usize,
  /// Generators left when reduction stopped.
  pub remaining: usize,
  pub remaining_relators: usize,
  pub steps: usize,
  pub abelianization_rank: usize,
  #[serde(serialize_with = "super::serialize_factors")]
  pub abelianization_torsion: Vec<BigInt>,
}

type Word = Vec<i32>;

fn free_reduce(w: &mut Word) {
  let mut out: Word = Vec::with_capacity(w.len());
  for &x in w.iter() {
    if out.last() == Some(&-x) {
      out.pop();
    } else {
      out.push(x);
    }
  }
  let (mut i, mut j) = (0, out.len());
  while j > i + 1 && out[i] == -out[j - 1] {
    i += 1;
    j -= 1;
  }
  *w = out[i..j].to_vec();
}

fn inverse(w: &[i32]) -> Word { w.iter().rev().map(|&x| -x).collect() }

/// Presentation of `pi_1` at vertex 0 from a spanning tree of the 1-skeleton,
/// reduced by repeatedly solving the shortest relator for a generator that
/// occurs in it once.
pub fn pi1_report(complex: &SimplicialComplex) -> Pi1Report {
  let n = complex.vertex_count();
  let edges: Vec<&[u32]> = complex.simplices(1).collect();
  let mut adjacency = vec![Vec::new(); n];
  for (e, s) in edges.iter().enumerate() {
    adjacency[s[0] as usize].push((s[1] as usize, e));
    adjacency[s[1] as usize].push((s[0] as usize, e));
  }
  let mut seen = vec![false; n];
  let mut in_tree = vec![false; edges.len()];
  if n > 0 {
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
      for &(u, e) in &adjacency[v] {
        if !seen[u] {
          seen[u] = true;
          in_tree[e] = true;
          queue.push_back(u);
        }
      }
    }
  }
  // generator ids start at 1 so that the sign carries the exponent
  let mut id = vec![0i32; edges.len()];
  let mut generators = 0usize;
  for e in 0..edges.len() {
    if !in_tree[e] && seen[edges[e][0] as usize] {
      generators += 1;
      id[e] = generators as i32;
    }
  }
  let letter = |a: u32, b: u32| -> i32 {
    let e = complex.find(&[a, b]).expect("edge of a triangle");
    id[e]
  };
  let mut relators: Vec<Word> = complex
    .simplices(2)
    .filter(|t| seen[t[0] as usize])
    .map(|t| {
      let mut w: Word = [letter(t[0], t[1]), letter(t[1], t[2]), -letter(t[0], t[2])].into_iter().filter(|&x| x != 0).collect();
      free_reduce(&mut w);
      w
    })
    .filter(|w| !w.is_empty())
    .collect();
  let relator_count = relators.len();
  let (abelianization_rank, abelianization_torsion) = abelianize(generators, &relators);

  let mut alive = generators;
  let mut steps = 0usize;
  let mut written = 0usize;
  loop {
    relators.retain(|w| !w.is_empty());
    if alive == 0 || relators.is_empty() {
      break;
    }
    let pick = relators
      .iter()
      .enumerate()
      .filter_map(|(i, w)| {
        let g = w.iter().find(|&&x| w.iter().filter(|&&y| y.abs() == x.abs()).count() == 1)?;
        Some((w.len(), i, *g))
      })
      .min();
    let Some((_, i, g)) = pick else { break };
    let w = relators.swap_remove(i);
    let at = w.iter().position(|&x| x == g).unwrap();
    // u g v = 1 gives g = u^-1 v^-1
    let mut value = inverse(&w[..at]);
    value.extend(inverse(&w[at + 1..]));
    let value = if g > 0 { value } else { inverse(&value) };
    let target = g.abs();
    for r in relators.iter_mut() {
      if !r.iter().any(|x| x.abs() == target) {
        continue;
      }
      let mut next = Vec::with_capacity(r.len());
      for &x in r.iter() {
        if x == target {
          next.extend_from_slice(&value);
        } else if x == -target {
          next.extend(inverse(&value));
        } else {
          next.push(x);
        }
      }
      written += next.len();
      free_reduce(&mut next);
      *r = next;
    }
    alive -= 1;
    steps += 1;
    if written > TIETZE_BUDGET {
      break;
    }
  }
  relators.retain(|w| !w.is_empty());
  let outcome = match (alive, relators.len()) {
    (0, _) => Pi1Outcome::Trivial,
    (_, 0) => Pi1Outcome::Free,
    _ => Pi1Outcome::Unknown,
  };
  Pi1Report {
    outcome,
    generators,
    relators: relator_count,
    remaining: alive,
    remaining_relators: relators.len(),
    steps,
    abelianization_rank,
    abelianization_torsion,
  }
}

fn abelianize(generators: usize, relators: &[Word]) -> (usize, Vec<BigInt>) {
  let columns = relators
    .iter()
    .map(|w| {
      let mut exps = std::collections::BTreeMap::<u32, i64>::new();
      for &x in w {
        *exps.entry(x.unsigned_abs() - 1).or_default() += i64::from(x.signum());
      }
      exps.into_iter().filter(|&(_, c)| c != 0).collect()
    })
    .collect();
  let snf = smith_normal_form(&SparseMatrix::<i64>::from_columns(generators, columns));
  (generators - snf.rank, snf.torsion)
}
