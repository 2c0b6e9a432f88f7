//! Alternating forms over `F_p`, orthogonal complements and isotropic subspaces.
//!
//! Forms may be degenerate: the radical `V^perp` is allowed to be non-zero,
//! which is how the almost extraspecial case is modelled.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fplinalg::{common_kernel, parse_rows, FieldSpec, FpVector, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
  field: FieldSpec,
  gram: Vec<Vec<u8>>,
  radical_dim: usize,
}

impl AlternatingForm {
  /// Validates that `gram` is alternating: zero diagonal and `g[i][j] = -g[j][i]`.
  pub fn new(field: FieldSpec, gram: Vec<Vec<u8>>) -> Result<Self> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
      if row.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: row.len() });
      }
      if row[i] != 0 {
        return Err(Error::InvalidParameters(format!("gram diagonal entry {i} is non-zero")));
      }
      for (j, &g) in row.iter().enumerate() {
        if g as u32 >= field.p() || field.add(g, gram[j][i]) != 0 {
          return Err(Error::InvalidParameters(format!("gram entries ({i},{j}) are not alternating")));
        }
      }
    }
    let mut form = Self { field, gram, radical_dim: 0 };
    form.radical_dim = form.radical().dim();
    Ok(form)
  }

  pub fn zero(field: FieldSpec, n: usize) -> Self { Self { field, gram: vec![vec![0; n]; n], radical_dim: n } }

  pub fn field(&self) -> FieldSpec { self.field }

  pub fn dim(&self) -> usize { self.gram.len() }

  pub fn gram(&self) -> &[Vec<u8>] { &self.gram }

  pub fn radical_dim(&self) -> usize { self.radical_dim }

  pub fn is_degenerate(&self) -> bool { self.radical_dim > 0 }

  /// `b(u, v) = u^T G v`
  pub fn eval(&self, u: &FpVector, v: &FpVector) -> u8 {
    let f = self.field;
    let mut acc = 0u8;
    for (i, row) in self.gram.iter().enumerate() {
      let ui = u.get(i);
      if ui == 0 {
        continue;
      }
      for (j, &g) in row.iter().enumerate() {
        if g != 0 {
          acc = f.add(acc, f.mul(ui, f.mul(g, v.get(j))));
        }
      }
    }
    acc
  }

  /// The functional `w -> b(w, a)` as a coefficient vector.
  fn right_functional(&self, a: &FpVector) -> FpVector {
    let f = self.field;
    let coords = self
      .gram
      .iter()
      .map(|row| row.iter().enumerate().fold(0u8, |acc, (j, &g)| f.add(acc, f.mul(g, a.get(j)))))
      .collect();
    FpVector::from_residues(f, coords).expect("reduced residues")
  }

  pub fn radical(&self) -> Subspace { self.perp(&Subspace::full(self.dim())).expect("same ambient space") }

  /// `A^perp = { w : b(w, a) = 0 for all a in A }`
  pub fn perp(&self, a: &Subspace) -> Result<Subspace> {
    if a.ambient_dim() != self.dim() {
      return Err(Error::DimensionMismatch { expected: self.dim(), found: a.ambient_dim() });
    }
    let functionals: Vec<FpVector> = a.basis().iter().map(|v| self.right_functional(v)).collect();
    common_kernel(self.field, &functionals, self.dim())
  }

  pub fn is_isotropic(&self, a: &Subspace) -> bool {
    let basis = a.basis();
    basis.iter().enumerate().all(|(i, u)| basis[i + 1..].iter().all(|w| self.eval(u, w) == 0))
  }

  /// Gram matrix as digit rows, same layout as the subspace text format.
  pub fn to_text(&self) -> String {
    let mut s = String::new();
    for row in &self.gram {
      s.extend(row.iter().map(|&c| char::from_digit(c as u32, 36).unwrap()));
      s.push('\n');
    }
    s.push('\n');
    s
  }

  pub fn from_text(field: FieldSpec, text: &str) -> Result<Self> {
    let rows = parse_rows(field, text)?;
    Self::new(field, rows.into_iter().map(|r| r.coords().to_vec()).collect())
  }
}

/// Which isotropic subspaces to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotropicDims {
  Exactly(usize),
  All,
}

/// `F_p^{2r + k}` with the standard symplectic form on the first `2r`
/// coordinates and a `k`-dimensional radical.
///
/// Basis order: `x_1..x_r, xbar_1..xbar_r, z_1..z_k`.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
  field: FieldSpec,
  r: usize,
  radical_dim: usize,
  form: AlternatingForm,
}

impl SymplecticSpace {
  /// `b(x_i, xbar_i) = 1`, `b(xbar_i, x_i) = -1`, all other basis pairs zero.
  pub fn standard(p: u32, r: usize, radical_dim: usize) -> Result<Self> {
    let field = FieldSpec::new(p)?;
    Self::standard_over(field, r, radical_dim)
  }

  pub fn standard_over(field: FieldSpec, r: usize, radical_dim: usize) -> Result<Self> {
    let n = 2 * r + radical_dim;
    let mut gram = vec![vec![0u8; n]; n];
    for i in 0..r {
      gram[i][r + i] = 1;
      gram[r + i][i] = field.neg(1);
    }
    let form = AlternatingForm::new(field, gram)?;
    debug_assert_eq!(form.radical_dim(), radical_dim);
    Ok(Self { field, r, radical_dim, form })
  }

  /// A space carrying an arbitrary alternating form. `r` is half the rank of the form.
  pub fn from_form(form: AlternatingForm) -> Self {
    let radical_dim = form.radical_dim();
    let r = (form.dim() - radical_dim) / 2;
    Self { field: form.field(), r, radical_dim, form }
  }

  pub fn field(&self) -> FieldSpec { self.field }

  pub fn p(&self) -> u32 { self.field.p() }

  pub fn r(&self) -> usize { self.r }

  pub fn radical_dim(&self) -> usize { self.radical_dim }

  pub fn dim(&self) -> usize { self.form.dim() }

  pub fn form(&self) -> &AlternatingForm { &self.form }

  pub fn b(&self, u: &FpVector, v: &FpVector) -> u8 { self.form.eval(u, v) }

  /// `x_i`, zero-based.
  pub fn x(&self, i: usize) -> FpVector { FpVector::unit(self.dim(), i) }

  /// `xbar_i`, zero-based.
  pub fn xbar(&self, i: usize) -> FpVector { FpVector::unit(self.dim(), self.r + i) }

  pub fn basis_labels(&self) -> Vec<String> {
    (1..=self.r)
      .map(|i| format!("x{i}"))
      .chain((1..=self.r).map(|i| format!("xbar{i}")))
      .chain((1..=self.radical_dim).map(|i| format!("z{i}")))
      .collect()
  }

  pub fn perp(&self, a: &Subspace) -> Result<Subspace> { self.form.perp(a) }

  pub fn is_isotropic(&self, a: &Subspace) -> bool { self.form.is_isotropic(a) }

  pub fn span(&self, vectors: &[FpVector]) -> Result<Subspace> { Subspace::span(self.field, self.dim(), vectors) }

  /// Canonically sorted list of isotropic subspaces, built by extending
  /// isotropic subspaces `I` by vectors of `I^perp` outside `I`.
  pub fn enumerate_isotropic(&self, dims: IsotropicDims) -> Vec<Subspace> {
    let max_dim = self.r + self.radical_dim;
    let target = match dims {
      IsotropicDims::Exactly(j) if j > max_dim => return Vec::new(),
      IsotropicDims::Exactly(j) => j,
      IsotropicDims::All => max_dim,
    };
    let field = self.field;
    let mut level = vec![Subspace::zero(self.dim())];
    let mut all = if dims == IsotropicDims::All { level.clone() } else { Vec::new() };
    for _ in 0..target {
      let mut next: HashSet<Subspace> = HashSet::new();
      for i in &level {
        let perp = self.perp(i).expect("same ambient space");
        for v in perp.elements(field) {
          // one representative per coset of I inside I^perp
          if v.is_zero() || i.reduce_unchecked(field, &v) != v {
            continue;
          }
          next.insert(i.extend(field, &[v]).expect("same ambient space"));
        }
      }
      let mut sorted: Vec<Subspace> = next.into_iter().collect();
      sorted.sort();
      level = sorted;
      if dims == IsotropicDims::All {
        all.extend(level.iter().cloned());
      }
    }
    match dims {
      IsotropicDims::All => all,
      IsotropicDims::Exactly(_) => level,
    }
  }
}
