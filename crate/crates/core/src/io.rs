//! JSON documents for Lie algebras, extensions, covers and cochains.
//!
//! Scalars are strings `"p/q"`. Elements are either a combination of basis
//! names (`"x + 1/2 z"`, with `x⊗ε`-style names on faces with non-trivial
//! coefficients) or an array of coordinates. Faces are written as
//! space-separated open indices or names, e.g. `"0 1"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::descent::{dim_of, vertices, CoverNerve, Cochain};
use crate::error::{Error, Result};
use crate::lie::{format_combination, parse_combination, CoefficientAlgebra, ExtensionDatum, LieAlgebra, Vector};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub type Entry = (usize, usize, usize, Scalar);

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LieDoc {
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    /// Matrices of a faithful representation, one per basis element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl LieDoc {
    pub fn build(&self) -> Result<LieAlgebra> {
        let lie = LieAlgebra::new(self.basis.clone(), &self.brackets, self.class)?;
        match &self.representation {
            None => Ok(lie),
            Some(rep) if rep.len() != lie.dim() => Err(Error::Dimension(format!("{} representation matrices for {} basis elements", rep.len(), lie.dim()))),
            Some(rep) => {
                let ms: Vec<Matrix> = rep.iter().map(|m| Matrix::from_rows(m)).collect();
                if ms.iter().any(|m| m.rows == 0 || m.rows != m.cols || m.rows != ms[0].rows) {
                    return Err(Error::Dimension("representation matrices must be square of one size".into()));
                }
                let lie = lie.with_representation(ms);
                let report = lie.check_representation();
                if !report.is_empty() {
                    return Err(Error::Invariant(report.join("; ")));
                }
                Ok(lie)
            }
        }
    }

    pub fn from_lie(lie: &LieAlgebra) -> Self {
        let brackets = lie.entries().into_iter().filter(|e| e.0 < e.1).collect();
        LieDoc { basis: lie.names().to_vec(), brackets, class: Some(lie.class()), representation: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExtensionDoc {
    pub g: LieDoc,
    pub h: LieDoc,
    #[serde(default)]
    pub b: Vec<Entry>,
    #[serde(default)]
    pub c: Vec<Entry>,
}

impl ExtensionDoc {
    pub fn build(&self) -> Result<ExtensionDatum> {
        ExtensionDatum::new(self.g.build()?, self.h.build()?, &self.b, &self.c)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraDoc {
    pub basis: Vec<String>,
    #[serde(default)]
    pub unit: usize,
    #[serde(default)]
    pub products: Vec<Entry>,
    #[serde(default)]
    pub nilpotent: Vec<usize>,
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<CoefficientAlgebra> {
        CoefficientAlgebra::new(self.basis.clone(), self.unit, &self.products, self.nilpotent.clone())
    }

    pub fn from_algebra(a: &CoefficientAlgebra) -> Self {
        let u = a.unit();
        let mut products = Vec::new();
        for r in 0..a.dim() {
            for s in r..a.dim() {
                if r != u && s != u {
                    products.extend(a.product_basis(r, s).iter().map(|(t, c)| (r, s, *t, c.clone())));
                }
            }
        }
        AlgebraDoc { basis: a.names().to_vec(), unit: u, products, nilpotent: a.nilpotent_ideal().to_vec() }
    }
}

/// `"scalars"`, `"dual-numbers"`, `"split-N"`, or a key of `algebras`.
fn builtin_algebra(name: &str) -> Option<CoefficientAlgebra> {
    match name {
        "scalars" => Some(CoefficientAlgebra::scalars()),
        "dual-numbers" => Some(CoefficientAlgebra::dual_numbers()),
        _ => name.strip_prefix("split-").and_then(|n| n.parse().ok()).filter(|&n| n >= 1).map(CoefficientAlgebra::split),
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct CoefficientsDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub faces: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RestrictionDoc {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Vec<Scalar>>,
}

/// A cover: either `builtin` (`edge`, `triangle`, `triangle-boundary`,
/// `tetrahedron-boundary`, `octahedron`, `octahedron-double-cover`) with the
/// default coefficient algebra, or explicit opens and faces.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct CoverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opens: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientsDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restrictions: Vec<RestrictionDoc>,
}

fn parse_vertices(opens: &[String], text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .ok()
                .filter(|&v| v < opens.len())
                .or_else(|| opens.iter().position(|o| o == tok))
                .ok_or_else(|| Error::Input(format!("unknown open {tok:?} in face {text:?}")))
        })
        .collect()
}

impl CoverDoc {
    pub fn build(&self) -> Result<CoverNerve> {
        let coeffs = self.coefficients.clone().unwrap_or_default();
        let resolve = |name: &str| -> Result<CoefficientAlgebra> {
            match coeffs.algebras.get(name) {
                Some(doc) => doc.build(),
                None => builtin_algebra(name).ok_or_else(|| Error::Input(format!("unknown coefficient algebra {name:?}"))),
            }
        };
        let default = resolve(coeffs.default.as_deref().unwrap_or("scalars"))?;
        if let Some(b) = &self.builtin {
            if !coeffs.faces.is_empty() || !self.restrictions.is_empty() || !self.faces.is_empty() {
                return Err(Error::Input("a builtin cover takes only a default coefficient algebra".into()));
            }
            return match b.as_str() {
                "edge" => Ok(CoverNerve::edge(&default)),
                "triangle" => Ok(CoverNerve::triangle(&default)),
                "triangle-boundary" => Ok(CoverNerve::triangle_boundary(&default)),
                "tetrahedron-boundary" => Ok(CoverNerve::tetrahedron_boundary(&default)),
                "octahedron" => Ok(CoverNerve::octahedron(&default)),
                "octahedron-double-cover" => Ok(CoverNerve::octahedron_double_cover()),
                _ => Err(Error::Input(format!("unknown builtin cover {b:?}"))),
            };
        }
        let mut faces = self.faces.clone();
        for f in &mut faces {
            f.sort_unstable();
        }
        let mut algebras = vec![default; faces.len()];
        for (text, name) in &coeffs.faces {
            let mut f = parse_vertices(&self.opens, text)?;
            f.sort_unstable();
            let i = faces.iter().position(|g| *g == f).ok_or_else(|| Error::Input(format!("coefficients given on {text:?}, which is not a listed face")))?;
            algebras[i] = resolve(name)?;
        }
        let mut res = Vec::new();
        for r in &self.restrictions {
            if r.matrix.is_empty() {
                return Err(Error::Input(format!("empty restriction matrix {} → {}", r.from, r.to)));
            }
            res.push((parse_vertices(&self.opens, &r.from)?, parse_vertices(&self.opens, &r.to)?, Matrix::from_rows(&r.matrix)));
        }
        CoverNerve::new(self.opens.clone(), faces, algebras, res)
    }

    /// The explicit document of a nerve: every face, its algebra, and every
    /// non-identity codimension-one restriction.
    pub fn from_nerve(nerve: &CoverNerve) -> Self {
        let mut coeffs = CoefficientsDoc { default: Some("scalars".into()), ..Default::default() };
        let mut named: Vec<CoefficientAlgebra> = Vec::new();
        let mut restrictions = Vec::new();
        for &f in nerve.faces() {
            let a = nerve.algebra(f);
            if *a != CoefficientAlgebra::scalars() {
                let i = named.iter().position(|b| b == a).unwrap_or_else(|| {
                    named.push(a.clone());
                    named.len() - 1
                });
                coeffs.faces.insert(nerve.face_name(f), format!("A{i}"));
            }
            for (s, _) in nerve.cofaces(f) {
                let m = nerve.restriction(f, s);
                if m.rows == m.cols && m == Matrix::identity(m.rows) {
                    continue;
                }
                let matrix = (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect()).collect();
                restrictions.push(RestrictionDoc { from: nerve.face_name(f), to: nerve.face_name(s), matrix });
            }
        }
        for (i, a) in named.iter().enumerate() {
            coeffs.algebras.insert(format!("A{i}"), AlgebraDoc::from_algebra(a));
        }
        let faces = nerve.faces().iter().map(|&f| vertices(f)).collect();
        CoverDoc { builtin: None, opens: nerve.opens().to_vec(), faces, coefficients: Some(coeffs), restrictions }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElementDoc {
    Text(String),
    Coords(Vec<Scalar>),
}

impl ElementDoc {
    pub fn parse(&self, names: &[String]) -> Result<Vector> {
        match self {
            ElementDoc::Text(t) => parse_combination(names, t),
            ElementDoc::Coords(v) if v.len() == names.len() => Ok(v.clone()),
            ElementDoc::Coords(v) => Err(Error::Dimension(format!("{} coordinates given, expected {}", v.len(), names.len()))),
        }
    }
}

/// Cochain file: `{ "edges": { "i j": element } }` for degree one and
/// `{ "vertices": { "i": element } }` for degree zero.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct CochainDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertices: BTreeMap<String, ElementDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, ElementDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub triangles: BTreeMap<String, ElementDoc>,
}

impl CochainDoc {
    fn part(&self, q: usize) -> &BTreeMap<String, ElementDoc> {
        match q {
            0 => &self.vertices,
            1 => &self.edges,
            _ => &self.triangles,
        }
    }

    /// Values in `L ⊗ A_σ` on every `q`-face; missing faces are an error
    /// unless `allow_missing`, in which case they are zero.
    pub fn to_cochain(&self, nerve: &CoverNerve, lie: &LieAlgebra, q: usize, allow_missing: bool) -> Result<Cochain> {
        let mut out = Cochain::new();
        for (text, el) in self.part(q) {
            let f = nerve.parse_face(text)?;
            if dim_of(f) != q {
                return Err(Error::Input(format!("{text:?} is not a {q}-face")));
            }
            let names = lie.tensor(nerve.algebra(f)).names().to_vec();
            let v = el.parse(&names).map_err(|e| Error::Input(format!("value on {text:?}: {e}")))?;
            if out.insert(f, v).is_some() {
                return Err(Error::Input(format!("face {text:?} given twice")));
            }
        }
        for f in nerve.faces_of_dim(q) {
            if !out.contains_key(&f) {
                if !allow_missing {
                    return Err(Error::Input(format!("no value on {{{}}}", nerve.face_name(f))));
                }
                out.insert(f, vec![Scalar::zero(); lie.dim() * nerve.algebra(f).dim()]);
            }
        }
        Ok(out)
    }

    pub fn from_cochain(nerve: &CoverNerve, lie: &LieAlgebra, x: &Cochain) -> Self {
        let mut out = CochainDoc::default();
        for (f, v) in x {
            let names = lie.tensor(nerve.algebra(*f)).names().to_vec();
            let text = format_combination(&names, v);
            let slot = match dim_of(*f) {
                0 => &mut out.vertices,
                1 => &mut out.edges,
                _ => &mut out.triangles,
            };
            slot.insert(nerve.face_name(*f), ElementDoc::Text(text));
        }
        out
    }
}
