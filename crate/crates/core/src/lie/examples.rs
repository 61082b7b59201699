//! The test algebras and extensions used throughout.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::{ExtensionDatum, LieAlgebra};

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m
}

/// `[x, y] = z`, with the faithful representation by 3×3 matrices.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(names(&["x", "y", "z"]), &[(0, 1, 2, Scalar::one())], Some(2))
        .unwrap()
        .with_representation(vec![elementary(3, 0, 1), elementary(3, 1, 2), elementary(3, 0, 2)])
}

/// Strictly upper-triangular `n × n` matrices with basis `E_ij` (`i < j`),
/// ordered by `j − i` so that the basis is adapted to the lower central series.
pub fn upper_triangular(n: usize) -> LieAlgebra {
    let mut pairs = Vec::new();
    for gap in 1..n {
        for i in 0..(n - gap) {
            pairs.push((i, i + gap));
        }
    }
    let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
    let mut entries = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
            if j == k {
                entries.push((a, b, idx((i, l)).unwrap(), Scalar::one()));
            }
            if l == i {
                entries.push((a, b, idx((k, j)).unwrap(), -Scalar::one()));
            }
        }
    }
    let ns: Vec<String> = pairs.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    let rep = pairs.iter().map(|&(i, j)| elementary(n, i, j)).collect();
    LieAlgebra::new(ns, &entries, Some(n - 1)).unwrap().with_representation(rep)
}

/// Free nilpotent Lie algebra of class 3 on `x, y`:
/// `z = [x,y]`, `u = [x,z]`, `v = [y,z]`.
pub fn free_nilpotent_2_3() -> LieAlgebra {
    let one = Scalar::one();
    LieAlgebra::new(
        names(&["x", "y", "z", "u", "v"]),
        &[(0, 1, 2, one.clone()), (0, 2, 3, one.clone()), (1, 2, 4, one)],
        Some(3),
    )
    .unwrap()
}

/// The three algebras of the test suite, with display names.
pub fn test_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("heisenberg", heisenberg()),
        ("upper-triangular-4", upper_triangular(4)),
        ("free-nilpotent-2-3", free_nilpotent_2_3()),
    ]
}

/// `g = span(x, y)` abelian, `h = span(w)`, `c(x, y) = w`, `b = 0`;
/// `g̃` is the Heisenberg algebra.
pub fn heisenberg_extension() -> ExtensionDatum {
    let g = LieAlgebra::abelian(&["x", "y"]);
    let h = LieAlgebra::abelian(&["w"]);
    ExtensionDatum::new(g, h, &[], &[(0, 1, 0, Scalar::one())]).unwrap()
}

/// `g = span(x1, x2)` abelian, `h = span(y, w)` abelian,
/// `b(x1)(y) = w`, `c(x1, x2) = y`.
pub fn noncentral_extension() -> ExtensionDatum {
    let g = LieAlgebra::abelian(&["x1", "x2"]);
    let h = LieAlgebra::abelian(&["y", "w"]);
    ExtensionDatum::new(g, h, &[(0, 0, 1, Scalar::one())], &[(0, 1, 0, Scalar::one())]).unwrap()
}
