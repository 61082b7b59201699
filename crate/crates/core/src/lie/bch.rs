//! Baker-Campbell-Hausdorff product.
//!
//! Dynkin's formula
//! `log(e^X e^Y) = Σ_n (−1)^{n−1}/n Σ [X^{r₁}Y^{s₁}⋯X^{r_n}Y^{s_n}] / (N · Π rᵢ! sᵢ!)`
//! with right-nested brackets and `N = Σ (rᵢ + sᵢ)`, truncated at total degree
//! equal to the nilpotency class.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::{is_zero_vec, vaxpy, zeros, LieAlgebra, Vector};

/// `(coefficient, word)` pairs; `false` stands for `X`, `true` for `Y`.
fn dynkin_terms(max_degree: usize) -> Vec<(Scalar, Vec<bool>)> {
    let mut acc: std::collections::BTreeMap<Vec<bool>, Scalar> = std::collections::BTreeMap::new();
    // blocks (r_i, s_i) with r_i + s_i ≥ 1, total ≤ max_degree
    fn rec(
        blocks: &mut Vec<(usize, usize)>,
        total: usize,
        max: usize,
        acc: &mut std::collections::BTreeMap<Vec<bool>, Scalar>,
    ) {
        if !blocks.is_empty() {
            let n = blocks.len() as i64;
            let mut denom = Scalar::from_int(total as i64) * Scalar::from_int(n);
            let mut word = Vec::with_capacity(total);
            for &(r, s) in blocks.iter() {
                denom = denom * Scalar::factorial(r) * Scalar::factorial(s);
                word.extend(std::iter::repeat(false).take(r));
                word.extend(std::iter::repeat(true).take(s));
            }
            // a right-nested bracket vanishes if the last two letters agree
            let vanishes = word.len() >= 2 && word[word.len() - 1] == word[word.len() - 2];
            if !vanishes {
                let c = Scalar::sign(n - 1) / denom;
                let e = acc.entry(word).or_insert_with(Scalar::zero);
                *e += &c;
            }
        }
        for r in 0..=(max - total) {
            for s in 0..=(max - total - r) {
                if r + s == 0 {
                    continue;
                }
                blocks.push((r, s));
                rec(blocks, total + r + s, max, acc);
                blocks.pop();
            }
        }
    }
    rec(&mut Vec::new(), 0, max_degree, &mut acc);
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
}

impl LieAlgebra {
    fn dynkin(&self) -> &[(Scalar, Vec<bool>)] {
        self.dynkin.get_or_init(|| dynkin_terms(self.class().max(1)))
    }

    /// `a ∗ b = log(exp(a) exp(b))`.
    pub fn bch(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        if is_zero_vec(a) {
            return b.to_vec();
        }
        if is_zero_vec(b) {
            return a.to_vec();
        }
        for (c, word) in self.dynkin() {
            let mut v = if *word.last().unwrap() { b.to_vec() } else { a.to_vec() };
            for &letter in word.iter().rev().skip(1) {
                v = self.bracket(if letter { b } else { a }, &v);
                if is_zero_vec(&v) {
                    break;
                }
            }
            vaxpy(&mut out, c, &v);
        }
        out
    }

    /// Group inverse in log coordinates.
    pub fn bch_inverse(&self, a: &[Scalar]) -> Vector {
        a.iter().map(|x| -x).collect()
    }

    /// `log(exp(ρ(a)) exp(ρ(b)))` read back through the faithful representation.
    pub fn bch_matrix(&self, a: &[Scalar], b: &[Scalar]) -> Option<Vector> {
        let rep = self.representation()?;
        let to_matrix = |v: &[Scalar]| {
            let mut m = Matrix::zeros(rep[0].rows, rep[0].cols);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&rep[i].scale(c));
                }
            }
            m
        };
        let prod = to_matrix(a).exp_nilpotent().mul(&to_matrix(b).exp_nilpotent());
        let log = prod.log_unipotent();
        // solve Σ v_i ρ(e_i) = log entrywise
        let n = rep[0].rows * rep[0].cols;
        let mut sys = Matrix::zeros(n, self.dim());
        let mut rhs = Vec::with_capacity(n);
        for r in 0..rep[0].rows {
            for c in 0..rep[0].cols {
                let row = r * rep[0].cols + c;
                for (i, m) in rep.iter().enumerate() {
                    sys.set(row, i, m.get(r, c).clone());
                }
                rhs.push(log.get(r, c).clone());
            }
        }
        sys.solve(&rhs)
    }
}
