//! Finite-dimensional nilpotent Lie algebras with exact structure constants.
//!
//! Elements are dense coefficient vectors in the declared basis. A Lie algebra
//! with coefficients in a commutative algebra `A` is represented directly as
//! the Lie algebra `g ⊗ A` (see [`LieAlgebra::tensor`]), so everything below
//! applies unchanged to it.

mod algebra;
mod bch;
pub mod examples;
mod extension;

pub use algebra::CoefficientAlgebra;
pub use extension::ExtensionDatum;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn vneg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vaxpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *a += &(c * v);
        }
    }
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `table[i * dim + j]` lists the nonzero coefficients of `[e_i, e_j]`.
    table: Vec<Vec<(usize, Scalar)>>,
    class: usize,
    rep: Option<Vec<Matrix>>,
    dynkin: OnceLock<Vec<(Scalar, Vec<bool>)>>,
}

impl LieAlgebra {
    /// Builds the table as given, filling `[e_j, e_i] = −[e_i, e_j]` only where
    /// the partner entry is absent. No validation happens here.
    pub fn from_entries_unchecked(names: Vec<String>, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let dim = names.len();
        let mut raw: Vec<Vector> = vec![zeros(dim); dim * dim];
        let mut given = vec![false; dim * dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Input(format!("bracket entry ({i},{j},{k}) outside basis of size {dim}")));
            }
            raw[i * dim + j][*k] += c;
            given[i * dim + j] = true;
        }
        for i in 0..dim {
            for j in 0..dim {
                if given[i * dim + j] && !given[j * dim + i] {
                    raw[j * dim + i] = vneg(&raw[i * dim + j]);
                }
            }
        }
        let table = raw.into_iter().map(sparse).collect();
        Ok(LieAlgebra { names, table, class: 0, rep: None, dynkin: OnceLock::new() })
    }

    /// Validated constructor: antisymmetry, Jacobi and nilpotency are checked,
    /// and the class is recomputed (and compared with `declared`, if given).
    pub fn new(names: Vec<String>, entries: &[(usize, usize, usize, Scalar)], declared: Option<usize>) -> Result<Self> {
        let mut uniq = names.clone();
        uniq.sort();
        uniq.dedup();
        if uniq.len() != names.len() {
            return Err(Error::Input("basis names are not unique".into()));
        }
        let mut l = Self::from_entries_unchecked(names, entries)?;
        let report = l.jacobi_check();
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        let class = l.compute_class()?;
        if let Some(d) = declared {
            if d != class {
                return Err(Error::Invariant(format!("declared class {d} but lower central series gives {class}")));
            }
        }
        l.class = class;
        Ok(l)
    }

    pub fn abelian(names: &[&str]) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), &[], None).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_representation(mut self, rep: Vec<Matrix>) -> Self {
        assert_eq!(rep.len(), self.dim());
        self.rep = Some(rep);
        self
    }

    pub fn representation(&self) -> Option<&[Matrix]> {
        self.rep.as_deref()
    }

    /// The attached representation is a faithful homomorphism into nilpotent matrices.
    pub fn check_representation(&self) -> Vec<String> {
        let Some(rep) = self.rep.as_deref() else {
            return vec![];
        };
        let n = rep[0].rows;
        let mut out = Vec::new();
        let combine = |v: &[Scalar]| v.iter().zip(rep).fold(Matrix::zeros(n, n), |m, (c, r)| m.add(&r.scale(c)));
        for i in 0..self.dim() {
            let mut p = rep[i].clone();
            for _ in 0..n {
                p = p.mul(&rep[i]);
            }
            if !p.is_zero() {
                out.push(format!("ρ({}) is not nilpotent", self.names[i]));
            }
            for j in i + 1..self.dim() {
                let comm = rep[i].mul(&rep[j]).sub(&rep[j].mul(&rep[i]));
                if comm != combine(&self.bracket(&unit_vector(self.dim(), i), &unit_vector(self.dim(), j))) {
                    out.push(format!("ρ[{}, {}] ≠ [ρ({0}), ρ({1})]", self.names[i], self.names[j]));
                }
            }
        }
        let flat: Vec<Vector> = rep.iter().map(|m| (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect()).collect();
        if row_basis(&flat, n * n).len() < self.dim() {
            out.push("representation is not faithful".into());
        }
        out
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let dim = self.dim();
        let mut out = zeros(dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * dim + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Structure constants as `(i, j, k, c)` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for (k, c) in &self.table[i * dim + j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    /// Antisymmetry and Jacobi violations on basis pairs and triples.
    pub fn jacobi_check(&self) -> Vec<String> {
        let dim = self.dim();
        let mut report = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let a = self.bracket(&unit_vector(dim, i), &unit_vector(dim, j));
                let b = self.bracket(&unit_vector(dim, j), &unit_vector(dim, i));
                if !is_zero_vec(&vadd(&a, &b)) {
                    report.push(format!("antisymmetry fails at ({}, {})", self.names[i], self.names[j]));
                }
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let (x, y, z) = (unit_vector(dim, i), unit_vector(dim, j), unit_vector(dim, k));
                    let s = vadd(
                        &vadd(&self.bracket(&self.bracket(&x, &y), &z), &self.bracket(&self.bracket(&y, &z), &x)),
                        &self.bracket(&self.bracket(&z, &x), &y),
                    );
                    if !is_zero_vec(&s) {
                        report.push(format!(
                            "Jacobi fails at ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        report
    }

    /// Spanning vectors (in reduced echelon form) of the terms `γ₁ ⊇ γ₂ ⊇ …`
    /// of the lower central series, ending with the first zero term.
    pub fn lower_central_series(&self) -> Result<Vec<Vec<Vector>>> {
        let dim = self.dim();
        let mut series = vec![(0..dim).map(|i| unit_vector(dim, i)).collect::<Vec<_>>()];
        loop {
            let last = series.last().unwrap();
            if last.is_empty() {
                return Ok(series);
            }
            let mut gens = Vec::new();
            for i in 0..dim {
                for v in last {
                    let b = self.bracket(&unit_vector(dim, i), v);
                    if !is_zero_vec(&b) {
                        gens.push(b);
                    }
                }
            }
            let next = row_basis(&gens, dim);
            if next.len() == last.len() {
                return Err(Error::Invariant(format!(
                    "lower central series stabilizes at dimension {} (not nilpotent)",
                    next.len()
                )));
            }
            series.push(next);
        }
    }

    fn compute_class(&self) -> Result<usize> {
        let series = self.lower_central_series()?;
        // series = [γ₁, …, γ_{c+1} = 0]; the zero algebra gets class 1.
        Ok((series.len() - 1).max(1))
    }

    /// `w(e_i)` = largest `p` with `e_i ∈ γ_p`.
    pub fn weights(&self) -> Vec<usize> {
        let series = self.lower_central_series().expect("validated nilpotent");
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                let e = unit_vector(dim, i);
                let mut w = 1;
                for (p, span) in series.iter().enumerate().skip(1) {
                    if in_span(span, &e, dim) {
                        w = p + 1;
                    }
                }
                w
            })
            .collect()
    }

    /// Whether every term of the lower central series is spanned by the basis
    /// vectors it contains.
    pub fn has_adapted_basis(&self) -> bool {
        let series = self.lower_central_series().expect("validated nilpotent");
        let w = self.weights();
        series.iter().enumerate().all(|(p, span)| w.iter().filter(|&&x| x > p).count() == span.len())
    }

    /// `g ⊗ A` with basis `e_i ⊗ a_r` at index `i * dim(A) + r`.
    pub fn tensor(&self, a: &CoefficientAlgebra) -> LieAlgebra {
        let (dg, da) = (self.dim(), a.dim());
        let mut names = Vec::with_capacity(dg * da);
        for gi in &self.names {
            for an in a.names() {
                if a.dim() == 1 {
                    names.push(gi.clone());
                } else {
                    names.push(format!("{gi}⊗{an}"));
                }
            }
        }
        let mut entries = Vec::new();
        for i in 0..dg {
            for j in 0..dg {
                for (k, c) in self.basis_bracket(i, j) {
                    for r in 0..da {
                        for s in 0..da {
                            for (t, m) in a.product_basis(r, s) {
                                entries.push((i * da + r, j * da + s, k * da + t, c * m));
                            }
                        }
                    }
                }
            }
        }
        let mut l = LieAlgebra::from_entries_unchecked(names, &entries).expect("indices in range");
        l.class = l.compute_class().expect("tensor of nilpotent by finite-dimensional commutative is nilpotent");
        l
    }

    /// `ad_x^s(y) / s!` summed over `s ≥ 0`.
    pub fn exp_ad(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = y.to_vec();
        let mut term = y.to_vec();
        for s in 1..=self.class.max(1) + 1 {
            term = vscale(&self.bracket(x, &term), &Scalar::frac(1, s as i64));
            if is_zero_vec(&term) {
                break;
            }
            out = vadd(&out, &term);
        }
        out
    }

    /// Parses `"x + 1/2 z - 3 y"` style linear combinations of basis names.
    pub fn parse_element(&self, text: &str) -> Result<Vector> {
        parse_combination(&self.names, text)
    }

    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_combination(&self.names, v)
    }
}

fn sparse(v: Vector) -> Vec<(usize, Scalar)> {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Reduced echelon basis of the span of `vs`.
pub fn row_basis(vs: &[Vector], dim: usize) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vs);
    let r = m.rref().len();
    (0..r).map(|i| (0..dim).map(|j| m.get(i, j).clone()).collect()).collect()
}

pub fn in_span(span: &[Vector], v: &[Scalar], dim: usize) -> bool {
    let mut rows = span.to_vec();
    rows.push(v.to_vec());
    row_basis(&rows, dim).len() == span.len()
}

pub fn parse_combination(names: &[String], text: &str) -> Result<Vector> {
    let mut out = zeros(names.len());
    let t = text.trim();
    if t == "0" || t.is_empty() {
        return Ok(out);
    }
    // split into signed chunks
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let mut prev_slash = false;
    for ch in t.chars() {
        if (ch == '+' || ch == '-') && !prev_slash {
            if !cur.trim().is_empty() {
                chunks.push((neg, cur.trim().to_string()));
                cur.clear();
                neg = ch == '-';
            } else if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev_slash = ch == '/';
        }
    }
    if !cur.trim().is_empty() {
        chunks.push((neg, cur.trim().to_string()));
    }
    for (neg, chunk) in chunks {
        let parts: Vec<&str> = chunk.split(|c: char| c.is_whitespace() || c == '*').filter(|s| !s.is_empty()).collect();
        let (coef, name) = match parts.as_slice() {
            [name] if names.iter().any(|n| n == name) => (Scalar::one(), *name),
            [c, name] => (c.parse::<Scalar>()?, *name),
            _ => return Err(Error::Parse(format!("cannot read term '{chunk}'"))),
        };
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown basis element '{name}'")))?;
        out[i] += &if neg { -coef } else { coef };
    }
    Ok(out)
}

pub fn format_combination(names: &[String], v: &[Scalar]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = if c.is_negative() { -c } else { c.clone() };
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs} "));
        }
        s.push_str(&names[i]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests;
