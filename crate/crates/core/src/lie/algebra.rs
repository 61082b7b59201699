use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::{is_zero_vec, unit_vector, vsub, zeros, Vector};

/// Finite-dimensional commutative unital algebra given by its multiplication
/// table on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientAlgebra {
    names: Vec<String>,
    unit: usize,
    /// `mult[r * dim + s]` = nonzero coefficients of `a_r a_s`.
    mult: Vec<Vec<(usize, Scalar)>>,
    /// Basis elements spanning a declared nilpotent ideal.
    nilpotent: Vec<usize>,
}

impl CoefficientAlgebra {
    pub fn new(
        names: Vec<String>,
        unit: usize,
        products: &[(usize, usize, usize, Scalar)],
        nilpotent: Vec<usize>,
    ) -> Result<Self> {
        let dim = names.len();
        if unit >= dim {
            return Err(Error::Input("unit index outside basis".into()));
        }
        let mut dense = vec![zeros(dim); dim * dim];
        for r in 0..dim {
            dense[unit * dim + r][r] = Scalar::one();
            dense[r * dim + unit][r] = Scalar::one();
        }
        for (r, s, t, c) in products {
            if *r >= dim || *s >= dim || *t >= dim {
                return Err(Error::Input(format!("product entry ({r},{s},{t}) outside basis")));
            }
            if *r == unit || *s == unit {
                continue;
            }
            dense[r * dim + s][*t] += c;
            if r != s {
                dense[s * dim + r][*t] += c;
            }
        }
        let mult = dense
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let a = CoefficientAlgebra { names, unit, mult, nilpotent };
        let report = a.check();
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        Ok(a)
    }

    pub fn scalars() -> Self {
        CoefficientAlgebra::new(vec!["1".into()], 0, &[], vec![]).unwrap()
    }

    /// `k[ε]/ε²`.
    pub fn dual_numbers() -> Self {
        CoefficientAlgebra::new(vec!["1".into(), "ε".into()], 0, &[], vec![1]).unwrap()
    }

    /// `k^n` with orthogonal idempotents `e_1 … e_n`; the unit is their sum,
    /// so the basis is `(1, e_2, …, e_n)` with `e_1 = 1 − Σ e_i`.
    pub fn split(n: usize) -> Self {
        let mut names = vec!["1".to_string()];
        let mut products = Vec::new();
        for i in 1..n {
            names.push(format!("e{}", i + 1));
            products.push((i, i, i, Scalar::one()));
        }
        CoefficientAlgebra::new(names, 0, &products, vec![]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn nilpotent_ideal(&self) -> &[usize] {
        &self.nilpotent
    }

    pub fn product_basis(&self, r: usize, s: usize) -> &[(usize, Scalar)] {
        &self.mult[r * self.dim() + s]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim());
        for (r, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (t, c) in self.product_basis(r, s) {
                    out[*t] += &(&(a * b) * c);
                }
            }
        }
        out
    }

    pub fn check(&self) -> Vec<String> {
        let dim = self.dim();
        let e = |i| unit_vector(dim, i);
        let mut report = Vec::new();
        for r in 0..dim {
            for s in 0..dim {
                if !is_zero_vec(&vsub(&self.mul(&e(r), &e(s)), &self.mul(&e(s), &e(r)))) {
                    report.push(format!("not commutative at ({}, {})", self.names[r], self.names[s]));
                }
                for t in 0..dim {
                    let lhs = self.mul(&self.mul(&e(r), &e(s)), &e(t));
                    let rhs = self.mul(&e(r), &self.mul(&e(s), &e(t)));
                    if !is_zero_vec(&vsub(&lhs, &rhs)) {
                        report.push(format!(
                            "not associative at ({}, {}, {})",
                            self.names[r], self.names[s], self.names[t]
                        ));
                    }
                }
            }
        }
        // the declared ideal must be closed under multiplication and nilpotent
        let mut power: Vec<Vector> = self.nilpotent.iter().map(|&i| e(i)).collect();
        for _ in 0..=dim {
            let mut next = Vec::new();
            for p in &power {
                for &i in &self.nilpotent {
                    let v = self.mul(p, &e(i));
                    if !is_zero_vec(&v) {
                        next.push(v);
                    }
                }
            }
            power = next;
        }
        if !power.is_empty() {
            report.push("declared ideal is not nilpotent".into());
        }
        report
    }

    /// Checks that `m` (a `dim(target) × dim(self)` matrix) is a unital algebra
    /// homomorphism `self → target`.
    pub fn check_homomorphism(&self, target: &CoefficientAlgebra, m: &Matrix) -> Vec<String> {
        let mut report = Vec::new();
        if m.rows != target.dim() || m.cols != self.dim() {
            report.push("restriction matrix has the wrong shape".into());
            return report;
        }
        let dim = self.dim();
        if m.apply(&unit_vector(dim, self.unit)) != unit_vector(target.dim(), target.unit) {
            report.push("restriction does not preserve the unit".into());
        }
        for r in 0..dim {
            for s in 0..dim {
                let lhs = m.apply(&self.mul(&unit_vector(dim, r), &unit_vector(dim, s)));
                let rhs = target.mul(&m.apply(&unit_vector(dim, r)), &m.apply(&unit_vector(dim, s)));
                if lhs != rhs {
                    report.push(format!("restriction not multiplicative at ({}, {})", self.names[r], self.names[s]));
                }
            }
        }
        report
    }
}
