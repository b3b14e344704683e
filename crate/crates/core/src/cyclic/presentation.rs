//! Finite algebras and finite graded categories given by structure constants.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{normalize, SparseVec};
use crate::error::{Error, Result};
use crate::scalars::GaussianRational as F;
use crate::text::parse_scalar;

/// A coefficient in a file: a JSON integer or a scalar string like `"3/2 - 1/2i"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub F);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_integer().and_then(|k| i64::try_from(k).ok()) {
            Some(k) => s.serialize_i64(k),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(Coeff(F::from_int(k))),
            Raw::Text(t) => parse_scalar(&t)
                .ok()
                .and_then(|s| s.as_constant())
                .map(Coeff)
                .ok_or_else(|| serde::de::Error::custom(format!("`{t}` is not a Gaussian rational"))),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidPresentation(msg.into())
}

/// Shared internal form: basis morphisms with endpoints and degrees, and a
/// composition table `comp[l·M + r] = l∘r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Quiver {
    pub objects: usize,
    pub src: Vec<u32>,
    pub tgt: Vec<u32>,
    pub deg: Vec<i32>,
    pub comp: Vec<SparseVec>,
    pub identity: Option<Vec<SparseVec>>,
}

impl Quiver {
    pub fn size(&self) -> usize {
        self.src.len()
    }

    pub fn compose(&self, l: u32, r: u32) -> &[(u32, F)] {
        &self.comp[l as usize * self.size() + r as usize]
    }

    fn compose_vec(&self, a: &[(u32, F)], b: &[(u32, F)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, z) in self.compose(*i, *j) {
                    out.push((*k, &(x * y) * z));
                }
            }
        }
        normalize(out)
    }

    fn basis(&self, i: usize) -> SparseVec {
        vec![(i as u32, F::one())]
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.size();
        for a in 0..m {
            for b in 0..m {
                if self.src[a] != self.tgt[b] {
                    continue;
                }
                let ab = self.compose(a as u32, b as u32).to_vec();
                for c in 0..m {
                    if self.src[b] != self.tgt[c] {
                        continue;
                    }
                    let lhs = self.compose_vec(&ab, &self.basis(c));
                    let rhs = self.compose_vec(&self.basis(a), self.compose(b as u32, c as u32));
                    if lhs != rhs {
                        return Err(invalid(format!("associativity fails on basis triple ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<()> {
        let Some(ids) = &self.identity else { return Ok(()) };
        for (x, id) in ids.iter().enumerate() {
            for (k, _) in id {
                let k = *k as usize;
                if self.src[k] as usize != x || self.tgt[k] as usize != x || self.deg[k] != 0 {
                    return Err(invalid(format!(
                        "identity of object {x} uses basis element {k}, which is not a degree-0 endomorphism"
                    )));
                }
            }
            for f in 0..self.size() {
                if self.tgt[f] as usize == x && self.compose_vec(id, &self.basis(f)) != self.basis(f) {
                    return Err(invalid(format!("left unit law fails for basis element {f}")));
                }
                if self.src[f] as usize == x && self.compose_vec(&self.basis(f), id) != self.basis(f) {
                    return Err(invalid(format!("right unit law fails for basis element {f}")));
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional algebra: basis e_0..e_{N−1}, e_i·e_j = Σ_k c_{ijk} e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    names: Vec<String>,
    quiver: Quiver,
}

/// File form of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    #[serde(default)]
    pub unit: Option<Vec<Coeff>>,
    pub mult: Vec<(usize, usize, usize, Coeff)>,
}

impl AlgebraPresentation {
    /// Validates associativity and, if a unit is given, the unit laws.
    pub fn new(names: Vec<String>, unit: Option<Vec<F>>, mult: Vec<(usize, usize, usize, F)>) -> Result<Self> {
        let n = names.len();
        let mut comp = vec![Vec::new(); n * n];
        for (row, (i, j, k, v)) in mult.into_iter().enumerate() {
            if i >= n || j >= n || k >= n {
                return Err(invalid(format!("mult entry {row}: index out of range for dimension {n}")));
            }
            comp[i * n + j].push((k as u32, v));
        }
        let identity = match unit {
            Some(u) if u.len() != n => {
                return Err(invalid(format!("unit has {} coefficients, dimension is {n}", u.len())))
            }
            Some(u) => Some(vec![normalize(
                u.into_iter().enumerate().map(|(i, x)| (i as u32, x)).collect(),
            )]),
            None => None,
        };
        let quiver = Quiver {
            objects: 1,
            src: vec![0; n],
            tgt: vec![0; n],
            deg: vec![0; n],
            comp: comp.into_iter().map(normalize).collect(),
            identity,
        };
        quiver.check_associative()?;
        quiver.check_identities()?;
        Ok(AlgebraPresentation { names, quiver })
    }

    pub fn from_file(f: AlgebraFile) -> Result<Self> {
        let unit = f.unit.map(|u| u.into_iter().map(|c| c.0).collect());
        let mult = f.mult.into_iter().map(|(i, j, k, v)| (i, j, k, v.0)).collect();
        Self::new(f.basis, unit, mult)
    }

    pub fn to_file(&self) -> AlgebraFile {
        let n = self.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.product(i, j) {
                    mult.push((i, j, *k as usize, Coeff(v.clone())));
                }
            }
        }
        AlgebraFile {
            basis: self.names.clone(),
            unit: self.unit().map(|u| u.into_iter().map(Coeff).collect()),
            mult,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_unital(&self) -> bool {
        self.quiver.identity.is_some()
    }

    /// The unit as a dense coefficient vector.
    pub fn unit(&self) -> Option<Vec<F>> {
        self.quiver.identity.as_ref().map(|ids| {
            let mut u = vec![F::zero(); self.dim()];
            for (k, x) in &ids[0] {
                u[*k as usize] = x.clone();
            }
            u
        })
    }

    /// e_i·e_j as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &[(u32, F)] {
        self.quiver.compose(i as u32, j as u32)
    }

    pub(crate) fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// M_n(A) with basis E_{pq}⊗e_i at index (p·n + q)·N + i.
    pub fn matrix_algebra(&self, n: usize) -> AlgebraPresentation {
        let dim = self.dim();
        let idx = |p: usize, q: usize, i: usize| (p * n + q) * dim + i;
        let mut names = Vec::with_capacity(n * n * dim);
        for p in 0..n {
            for q in 0..n {
                for name in &self.names {
                    names.push(format!("E{}{}*{name}", p + 1, q + 1));
                }
            }
        }
        let mut mult = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for i in 0..dim {
                        for j in 0..dim {
                            for (k, v) in self.product(i, j) {
                                mult.push((idx(p, q, i), idx(q, r, j), idx(p, r, *k as usize), v.clone()));
                            }
                        }
                    }
                }
            }
        }
        let unit = self.unit().map(|u| {
            let mut out = vec![F::zero(); n * n * dim];
            for p in 0..n {
                for (i, x) in u.iter().enumerate() {
                    out[idx(p, p, i)] = x.clone();
                }
            }
            out
        });
        AlgebraPresentation::new(names, unit, mult).expect("matrix algebra over a valid algebra is valid")
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra of dimension {} with basis [{}]", self.dim(), self.names.join(", "))
    }
}

/// A finite graded category: basis morphisms with endpoints and degrees, a
/// differential of degree +1 and a composition tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategoryPresentation {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    quiver: Quiver,
    differential: Vec<SparseVec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub degree: i32,
}

/// File form of a category. `composition` rows (l, r, k, v) mean l∘r ∋ v·k,
/// where r: X → Y and l: Y → Z; `differential` rows (f, g, v) mean d f ∋ v·g.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismRecord>,
    #[serde(default)]
    pub identities: Option<Vec<Vec<(usize, Coeff)>>>,
    #[serde(default)]
    pub differential: Vec<(usize, usize, Coeff)>,
    pub composition: Vec<(usize, usize, usize, Coeff)>,
}

impl DgCategoryPresentation {
    pub fn from_file(f: CategoryFile) -> Result<Self> {
        let obj: HashMap<&str, u32> = f.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect();
        if obj.len() != f.objects.len() {
            return Err(invalid("duplicate object names"));
        }
        let lookup = |name: &str, what: &str, row: usize| {
            obj.get(name)
                .copied()
                .ok_or_else(|| invalid(format!("morphism {row}: unknown {what} object `{name}`")))
        };
        let m = f.morphisms.len();
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        let mut deg = Vec::with_capacity(m);
        for (row, rec) in f.morphisms.iter().enumerate() {
            src.push(lookup(&rec.source, "source", row)?);
            tgt.push(lookup(&rec.target, "target", row)?);
            deg.push(rec.degree);
        }
        let mut comp = vec![Vec::new(); m * m];
        for (row, (l, r, k, v)) in f.composition.into_iter().enumerate() {
            if l >= m || r >= m || k >= m {
                return Err(invalid(format!("composition entry {row}: index out of range")));
            }
            if src[l] != tgt[r] || src[k] != src[r] || tgt[k] != tgt[l] {
                return Err(invalid(format!("composition entry {row}: endpoints do not match")));
            }
            if deg[k] != deg[l] + deg[r] {
                return Err(invalid(format!("composition entry {row}: degree is not additive")));
            }
            comp[l * m + r].push((k as u32, v.0));
        }
        let mut differential = vec![Vec::new(); m];
        for (row, (a, b, v)) in f.differential.into_iter().enumerate() {
            if a >= m || b >= m {
                return Err(invalid(format!("differential entry {row}: index out of range")));
            }
            if src[a] != src[b] || tgt[a] != tgt[b] || deg[b] != deg[a] + 1 {
                return Err(invalid(format!(
                    "differential entry {row}: must preserve endpoints and raise degree by 1"
                )));
            }
            differential[a].push((b as u32, v.0));
        }
        let identity = match f.identities {
            None => None,
            Some(ids) if ids.len() != f.objects.len() => {
                return Err(invalid("need exactly one identity per object"));
            }
            Some(ids) => {
                let mut out = Vec::new();
                for (x, id) in ids.into_iter().enumerate() {
                    if id.iter().any(|(k, _)| *k >= m) {
                        return Err(invalid(format!("identity of object {x}: index out of range")));
                    }
                    out.push(normalize(id.into_iter().map(|(k, c)| (k as u32, c.0)).collect()));
                }
                Some(out)
            }
        };
        let quiver = Quiver {
            objects: f.objects.len(),
            src,
            tgt,
            deg,
            comp: comp.into_iter().map(normalize).collect(),
            identity,
        };
        let cat = DgCategoryPresentation {
            object_names: f.objects,
            morphism_names: f.morphisms.into_iter().map(|r| r.name).collect(),
            differential: differential.into_iter().map(normalize).collect(),
            quiver,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn to_file(&self) -> CategoryFile {
        let q = &self.quiver;
        let m = q.size();
        let morphisms = (0..m)
            .map(|i| MorphismRecord {
                name: self.morphism_names[i].clone(),
                source: self.object_names[q.src[i] as usize].clone(),
                target: self.object_names[q.tgt[i] as usize].clone(),
                degree: q.deg[i],
            })
            .collect();
        let mut composition = Vec::new();
        for l in 0..m {
            for r in 0..m {
                for (k, v) in q.compose(l as u32, r as u32) {
                    composition.push((l, r, *k as usize, Coeff(v.clone())));
                }
            }
        }
        let differential = self
            .differential
            .iter()
            .enumerate()
            .flat_map(|(a, col)| col.iter().map(move |(b, v)| (a, *b as usize, Coeff(v.clone()))))
            .collect();
        let identities = q.identity.as_ref().map(|ids| {
            ids.iter()
                .map(|id| id.iter().map(|(k, v)| (*k as usize, Coeff(v.clone()))).collect())
                .collect()
        });
        CategoryFile {
            objects: self.object_names.clone(),
            morphisms,
            identities,
            differential,
            composition,
        }
    }

    fn d(&self, v: &[(u32, F)]) -> SparseVec {
        let mut out = Vec::new();
        for (k, x) in v {
            for (j, y) in &self.differential[*k as usize] {
                out.push((*j, x * y));
            }
        }
        normalize(out)
    }

    fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        let m = q.size();
        for f in 0..m {
            if !self.d(&self.d(&q.basis(f))).is_empty() {
                return Err(invalid(format!("d² ≠ 0 on morphism {f}")));
            }
        }
        for f in 0..m {
            for g in 0..m {
                if q.src[f] != q.tgt[g] {
                    continue;
                }
                let lhs = self.d(q.compose(f as u32, g as u32));
                let sign = if q.deg[f].rem_euclid(2) == 0 { F::one() } else { -F::one() };
                let mut rhs = q.compose_vec(&self.d(&q.basis(f)), &q.basis(g));
                for (k, x) in q.compose_vec(&q.basis(f), &self.d(&q.basis(g))) {
                    rhs.push((k, &sign * &x));
                }
                if lhs != normalize(rhs) {
                    return Err(invalid(format!("Leibniz rule fails on ({f}, {g})")));
                }
            }
        }
        q.check_associative()?;
        q.check_identities()?;
        if let Some(ids) = &q.identity {
            for (x, id) in ids.iter().enumerate() {
                if !self.d(id).is_empty() {
                    return Err(invalid(format!("d(id) ≠ 0 on object {x}")));
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.object_names
    }

    pub fn morphisms(&self) -> &[String] {
        &self.morphism_names
    }

    pub fn degree(&self, f: usize) -> i32 {
        self.quiver.deg[f]
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|c| !c.is_empty())
    }

    pub fn is_unital(&self) -> bool {
        self.quiver.identity.is_some()
    }

    pub(crate) fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// The one-object category with End = A in degree 0.
    pub fn one_object(a: &AlgebraPresentation) -> DgCategoryPresentation {
        let n = a.dim();
        let morphisms = a
            .names()
            .iter()
            .map(|name| MorphismRecord { name: name.clone(), source: "*".into(), target: "*".into(), degree: 0 })
            .collect();
        let file = CategoryFile {
            objects: vec!["*".into()],
            morphisms,
            identities: a.unit().map(|u| {
                vec![u
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, Coeff(x)))
                    .collect()]
            }),
            differential: Vec::new(),
            composition: (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .flat_map(|(i, j)| a.product(i, j).iter().map(move |(k, v)| (i, j, *k as usize, Coeff(v.clone()))))
                .collect(),
        };
        DgCategoryPresentation::from_file(file).expect("a valid algebra gives a valid category")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_associative() {
        // e0·e0 = e1, e1·e0 = e0, everything else zero: (e0e0)e0 = e0 but e0(e0e0) = 0.
        let m = vec![(0, 0, 1, F::one()), (1, 0, 0, F::one())];
        let err = AlgebraPresentation::new(vec!["a".into(), "b".into()], None, m).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
    }

    #[test]
    fn rejects_bad_unit() {
        let m = vec![(0, 0, 0, F::one())];
        assert!(AlgebraPresentation::new(vec!["1".into()], Some(vec![F::from_int(2)]), m.clone()).is_err());
        assert!(AlgebraPresentation::new(vec!["1".into()], Some(vec![F::one()]), m).is_ok());
    }

    #[test]
    fn file_roundtrip() {
        let src = r#"{"basis":["1","x"],"unit":[1,0],"mult":[[0,0,0,1],[0,1,1,1],[1,0,1,"1"]]}"#;
        let a = AlgebraPresentation::from_file(serde_json::from_str(src).unwrap()).unwrap();
        assert_eq!(a.dim(), 2);
        let back = AlgebraPresentation::from_file(a.to_file()).unwrap();
        assert_eq!(a, back);
        let m2 = a.matrix_algebra(2);
        assert_eq!(m2.dim(), 8);
        assert!(m2.is_unital());
    }

    #[test]
    fn category_validation() {
        let src = r#"{
            "objects": ["X"],
            "morphisms": [{"name":"1","source":"X","target":"X","degree":0},
                          {"name":"e","source":"X","target":"X","degree":1}],
            "identities": [[[0, 1]]],
            "composition": [[0,0,0,1],[0,1,1,1],[1,0,1,1]]
        }"#;
        let c = DgCategoryPresentation::from_file(serde_json::from_str(src).unwrap()).unwrap();
        assert_eq!(c.degree(1), 1);
        assert!(!c.has_differential());
        let bad = src.replace("[1,0,1,1]]", "[1,0,1,1],[1,1,0,1]]");
        assert!(DgCategoryPresentation::from_file(serde_json::from_str(&bad).unwrap()).is_err());
        let back = DgCategoryPresentation::from_file(c.to_file()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn differential_checks() {
        // X with basis 1 (deg 0), e (deg −1), f (deg 0) and d e = f: Leibniz forces
        // the composition table to be compatible.
        let src = r#"{
            "objects": ["X"],
            "morphisms": [{"name":"1","source":"X","target":"X","degree":0},
                          {"name":"e","source":"X","target":"X","degree":-1},
                          {"name":"f","source":"X","target":"X","degree":0}],
            "identities": [[[0, 1]]],
            "differential": [[1, 2, 1]],
            "composition": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1]]
        }"#;
        let c = DgCategoryPresentation::from_file(serde_json::from_str(src).unwrap()).unwrap();
        assert!(c.has_differential());
        let bad = src.replace("[[1, 2, 1]]", "[[0, 1, 1]]");
        assert!(DgCategoryPresentation::from_file(serde_json::from_str(&bad).unwrap()).is_err());
    }
}
