use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lie::{unit_vector, CoefficientAlgebra, LieAlgebra, Vector};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Bitmask of a set of opens.
pub type Face = u32;

pub fn face_of(vs: &[usize]) -> Face {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn vertices(face: Face) -> Vec<usize> {
    (0..32).filter(|v| face & (1 << v) != 0).collect()
}

pub fn dim_of(face: Face) -> usize {
    face.count_ones() as usize - 1
}

/// Positions of the vertices of `sub` inside the sorted vertex list of `face`.
pub fn positions(sub: Face, face: Face) -> Vec<usize> {
    vertices(face).iter().enumerate().filter(|(_, v)| sub & (1 << **v) != 0).map(|(p, _)| p).collect()
}

/// The nerve of a finite cover together with a coefficient algebra per face
/// and restriction homomorphisms along face inclusions.
#[derive(Clone, Debug)]
pub struct CoverNerve {
    opens: Vec<String>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    algebras: Vec<CoefficientAlgebra>,
    /// `(τ, σ)` for every `τ ⊊ σ`: a `dim A_σ × dim A_τ` matrix.
    restrictions: HashMap<(Face, Face), Matrix>,
}

impl CoverNerve {
    /// `restrictions` lists codimension-one maps `(τ, σ, matrix)`; absent ones
    /// default to the identity when the algebras have equal dimension.
    pub fn new(
        opens: Vec<String>,
        faces: Vec<Vec<usize>>,
        algebras: Vec<CoefficientAlgebra>,
        restrictions: Vec<(Vec<usize>, Vec<usize>, Matrix)>,
    ) -> Result<Self> {
        if opens.is_empty() || opens.len() > 16 {
            return Err(Error::Input("a cover needs between 1 and 16 opens".into()));
        }
        if faces.len() != algebras.len() {
            return Err(Error::Input("one coefficient algebra per face is required".into()));
        }
        let mut list: Vec<(Face, CoefficientAlgebra)> = Vec::new();
        for (f, a) in faces.iter().zip(algebras) {
            if f.is_empty() || f.iter().any(|&v| v >= opens.len()) {
                return Err(Error::Input(format!("face {f:?} is empty or names an unknown open")));
            }
            let m = face_of(f);
            if m.count_ones() as usize != f.len() {
                return Err(Error::Input(format!("face {f:?} repeats an open")));
            }
            if list.iter().any(|(g, _)| *g == m) {
                return Err(Error::Input(format!("face {f:?} listed twice")));
            }
            list.push((m, a));
        }
        list.sort_by_key(|(m, _)| (m.count_ones(), *m));
        let faces: Vec<Face> = list.iter().map(|(m, _)| *m).collect();
        let algebras: Vec<CoefficientAlgebra> = list.into_iter().map(|(_, a)| a).collect();
        let index: HashMap<Face, usize> = faces.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        for &m in &faces {
            for v in vertices(m) {
                let t = m & !(1 << v);
                if t != 0 && !index.contains_key(&t) {
                    return Err(Error::Input(format!("faces are not downward closed: {:?} lacks {:?}", vertices(m), vertices(t))));
                }
            }
        }
        let mut given: HashMap<(Face, Face), Matrix> = HashMap::new();
        for (t, s, mat) in restrictions {
            let (t, s) = (face_of(&t), face_of(&s));
            if !index.contains_key(&t) || !index.contains_key(&s) || t & !s != 0 || (s & !t).count_ones() != 1 {
                return Err(Error::Input(format!("restriction {:?} → {:?} is not a codimension-one face inclusion", vertices(t), vertices(s))));
            }
            given.insert((t, s), mat);
        }
        let mut nerve = CoverNerve { opens, faces, index, algebras, restrictions: HashMap::new() };
        for &s in &nerve.faces.clone() {
            for v in vertices(s) {
                let t = s & !(1 << v);
                if t == 0 {
                    continue;
                }
                let mat = match given.remove(&(t, s)) {
                    Some(m) => m,
                    None if nerve.algebra(t).dim() == nerve.algebra(s).dim() => Matrix::identity(nerve.algebra(s).dim()),
                    None => {
                        return Err(Error::Input(format!(
                            "restriction {:?} → {:?} missing and the algebras differ",
                            vertices(t),
                            vertices(s)
                        )))
                    }
                };
                let report = nerve.algebra(t).check_homomorphism(nerve.algebra(s), &mat);
                if !report.is_empty() {
                    return Err(Error::Invariant(format!("{:?} → {:?}: {}", vertices(t), vertices(s), report.join("; "))));
                }
                nerve.restrictions.insert((t, s), mat);
            }
        }
        let report = nerve.functoriality();
        if !report.is_empty() {
            return Err(Error::Invariant(report.join("; ")));
        }
        nerve.compose_restrictions();
        Ok(nerve)
    }

    fn functoriality(&self) -> Vec<String> {
        let mut out = Vec::new();
        for &s in &self.faces {
            let vs = vertices(s);
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    let t = s & !(1 << u) & !(1 << v);
                    if t == 0 {
                        continue;
                    }
                    let (tu, tv) = (t | (1 << u), t | (1 << v));
                    let a = self.restrictions[&(tu, s)].mul(&self.restrictions[&(t, tu)]);
                    let b = self.restrictions[&(tv, s)].mul(&self.restrictions[&(t, tv)]);
                    if a != b {
                        out.push(format!("restrictions {:?} → {:?} depend on the path", vertices(t), vs));
                    }
                }
            }
        }
        out
    }

    fn compose_restrictions(&mut self) {
        for &s in &self.faces.clone() {
            let mut subs: Vec<Face> = self.faces.iter().copied().filter(|&t| t != s && t & !s == 0).collect();
            subs.sort_by_key(|t| std::cmp::Reverse(t.count_ones()));
            for t in subs {
                if self.restrictions.contains_key(&(t, s)) {
                    continue;
                }
                let v = vertices(s & !t)[0];
                let tv = t | (1 << v);
                let m = self.restrictions[&(tv, s)].mul(&self.restrictions[&(t, tv)]);
                self.restrictions.insert((t, s), m);
            }
        }
    }

    /// Every face carries `a`; all restrictions are identities.
    pub fn constant(n_opens: usize, faces: Vec<Vec<usize>>, a: &CoefficientAlgebra) -> Result<Self> {
        let algebras = vec![a.clone(); faces.len()];
        let opens = (0..n_opens).map(|i| format!("U{i}")).collect();
        CoverNerve::new(opens, faces, algebras, vec![])
    }

    /// All nonempty subsets of `top`, closed downward.
    pub fn closure(tops: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut set = std::collections::BTreeSet::new();
        for t in tops {
            let m = face_of(t);
            let mut sub = m;
            while sub != 0 {
                set.insert(sub);
                sub = (sub - 1) & m;
            }
        }
        let mut out: Vec<Face> = set.into_iter().collect();
        out.sort_by_key(|m| (m.count_ones(), *m));
        out.into_iter().map(vertices).collect()
    }

    pub fn edge(a: &CoefficientAlgebra) -> Self {
        Self::constant(2, Self::closure(&[vec![0, 1]]), a).expect("valid")
    }

    pub fn triangle(a: &CoefficientAlgebra) -> Self {
        Self::constant(3, Self::closure(&[vec![0, 1, 2]]), a).expect("valid")
    }

    pub fn triangle_boundary(a: &CoefficientAlgebra) -> Self {
        Self::constant(3, Self::closure(&[vec![0, 1], vec![0, 2], vec![1, 2]]), a).expect("valid")
    }

    pub fn tetrahedron_boundary(a: &CoefficientAlgebra) -> Self {
        let tops = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        Self::constant(4, Self::closure(&tops), a).expect("valid")
    }

    /// Opens `0, 1 = ±x`, `2, 3 = ±y`, `4, 5 = ±z`; eight triangles.
    pub fn octahedron_triangles() -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    out.push(vec![a, b, c]);
                }
            }
        }
        out
    }

    pub fn octahedron(a: &CoefficientAlgebra) -> Self {
        Self::constant(6, Self::closure(&Self::octahedron_triangles()), a).expect("valid")
    }

    /// The octahedral nerve with the coefficients of a double cover branched
    /// over the opens `0 … 3`: those carry `k`, every other face carries
    /// `k × k` (two sheets), and the sheets are exchanged along the
    /// inclusions `02 ⊂ 024` and `13 ⊂ 134`. The Čech cohomology is that of
    /// a torus.
    pub fn octahedron_double_cover() -> Self {
        let faces = Self::closure(&Self::octahedron_triangles());
        let k = CoefficientAlgebra::scalars();
        let kk = CoefficientAlgebra::split(2);
        let algebras = faces.iter().map(|f| if f.len() == 1 && f[0] < 4 { k.clone() } else { kk.clone() }).collect();
        let diag = Matrix::from_rows(&[vec![Scalar::one()], vec![Scalar::zero()]]);
        let swap = Matrix::from_rows(&[vec![Scalar::one(), Scalar::one()], vec![Scalar::zero(), -Scalar::one()]]);
        let mut res = Vec::new();
        for f in &faces {
            if f.len() == 2 {
                for &v in f {
                    if v < 4 {
                        res.push((vec![v], f.clone(), diag.clone()));
                    }
                }
            }
        }
        res.push((vec![0, 2], vec![0, 2, 4], swap.clone()));
        res.push((vec![1, 3], vec![1, 3, 4], swap));
        let opens = ["+x", "-x", "+y", "-y", "+z", "-z"].iter().map(|s| s.to_string()).collect();
        CoverNerve::new(opens, faces, algebras, res).expect("valid")
    }

    pub fn opens(&self) -> &[String] {
        &self.opens
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, q: usize) -> Vec<Face> {
        self.faces.iter().copied().filter(|f| dim_of(*f) == q).collect()
    }

    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| dim_of(*f)).max().unwrap_or(0)
    }

    pub fn contains(&self, face: Face) -> bool {
        self.index.contains_key(&face)
    }

    pub fn algebra(&self, face: Face) -> &CoefficientAlgebra {
        &self.algebras[self.index[&face]]
    }

    /// The restriction `A_τ → A_σ` for `τ ⊆ σ`.
    pub fn restriction(&self, tau: Face, sigma: Face) -> Matrix {
        if tau == sigma {
            return Matrix::identity(self.algebra(sigma).dim());
        }
        self.restrictions[&(tau, sigma)].clone()
    }

    /// Faces of dimension one more than `tau` that contain it, with the
    /// position of the added vertex.
    pub fn cofaces(&self, tau: Face) -> Vec<(Face, usize)> {
        let mut out = Vec::new();
        for v in 0..self.opens.len() {
            if tau & (1 << v) != 0 {
                continue;
            }
            let s = tau | (1 << v);
            if self.contains(s) {
                out.push((s, (s & ((1 << v) - 1)).count_ones() as usize));
            }
        }
        out
    }

    /// `x ∈ L ⊗ A_τ ↦ x|_σ ∈ L ⊗ A_σ` in the index convention `i · dim A + r`.
    pub fn restrict(&self, dim_l: usize, x: &[Scalar], tau: Face, sigma: Face) -> Vector {
        let m = self.restriction(tau, sigma);
        let (dt, ds) = (m.cols, m.rows);
        let mut out = vec![Scalar::zero(); dim_l * ds];
        for i in 0..dim_l {
            let v = m.apply(&x[i * dt..(i + 1) * dt]);
            out[i * ds..(i + 1) * ds].clone_from_slice(&v);
        }
        out
    }

    /// The unit `1 ∈ A_σ` tensored into `L ⊗ A_σ`: `x ↦ x ⊗ 1`.
    pub fn constant_section(&self, x: &[Scalar], face: Face) -> Vector {
        let a = self.algebra(face);
        let one = unit_vector(a.dim(), a.unit());
        let mut out = Vec::with_capacity(x.len() * a.dim());
        for c in x {
            out.extend(one.iter().map(|u| u * c));
        }
        out
    }

    pub fn face_name(&self, face: Face) -> String {
        vertices(face).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_face(&self, text: &str) -> Result<Face> {
        let mut vs = Vec::new();
        for tok in text.split_whitespace() {
            let v = match tok.parse::<usize>() {
                Ok(v) => v,
                Err(_) => self.opens.iter().position(|o| o == tok).ok_or_else(|| Error::Input(format!("unknown open {tok:?}")))?,
            };
            vs.push(v);
        }
        let f = face_of(&vs);
        if vs.is_empty() || !self.contains(f) {
            return Err(Error::Input(format!("{text:?} is not a face of the nerve")));
        }
        Ok(f)
    }
}

/// The semicosimplicial Lie algebra `q ↦ ∏_{|σ| = q+1} g ⊗ A_σ`.
pub struct Semicosimplicial<'a> {
    pub nerve: &'a CoverNerve,
    pub lie: &'a LieAlgebra,
}

/// An element of one level: a vector per face.
pub type Level = BTreeMap<Face, Vector>;

impl<'a> Semicosimplicial<'a> {
    pub fn new(nerve: &'a CoverNerve, lie: &'a LieAlgebra) -> Self {
        Semicosimplicial { nerve, lie }
    }

    pub fn level_dim(&self, q: usize) -> usize {
        self.nerve.faces_of_dim(q).iter().map(|f| self.lie.dim() * self.nerve.algebra(*f).dim()).sum()
    }

    /// `∂_k: L_{q−1} → L_q`, `(∂_k β)_σ = β_{σ minus its k-th vertex}|_σ`.
    pub fn coface(&self, k: usize, q: usize, beta: &Level) -> Level {
        let mut out = Level::new();
        for s in self.nerve.faces_of_dim(q) {
            let vs = vertices(s);
            if k >= vs.len() {
                continue;
            }
            let t = s & !(1 << vs[k]);
            if let Some(b) = beta.get(&t) {
                out.insert(s, self.nerve.restrict(self.lie.dim(), b, t, s));
            }
        }
        out
    }

    /// `∂_{k+1}∂_l = ∂_l∂_k` for `k ≥ l` on basis elements of every level.
    pub fn check_identities(&self) -> Vec<String> {
        let mut out = Vec::new();
        for q in 0..self.nerve.dim().saturating_sub(1) {
            for t in self.nerve.faces_of_dim(q) {
                let d = self.lie.dim() * self.nerve.algebra(t).dim();
                for i in 0..d {
                    let beta: Level = [(t, unit_vector(d, i))].into_iter().collect();
                    for l in 0..=q + 1 {
                        for k in l..=q + 1 {
                            let a = self.coface(k + 1, q + 2, &self.coface(l, q + 1, &beta));
                            let b = self.coface(l, q + 2, &self.coface(k, q + 1, &beta));
                            if a != b {
                                out.push(format!("∂_{}∂_{} ≠ ∂_{}∂_{} on face {}", k + 1, l, l, k, self.nerve.face_name(t)));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
