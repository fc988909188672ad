//! Pluggable normed-space backends: ℓ_p^n, Euclidean, and weighted
//! inner-product spaces, with the geometric predicates the rest of the
//! library is parameterized over.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::report::{AxiomCheck, CheckReport};
use crate::rng::DetRng;
use crate::tol::Tol;
use crate::Result;

/// Finite-dimensional coordinate vector with real entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut c = vec![0.0; dim];
        c[i] = 1.0;
        Vector(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scale(&self, k: f64) -> Vector {
        Vector(self.0.iter().map(|x| k * x).collect())
    }

    /// `self + k · other` in one pass.
    pub fn add_scaled(&self, k: f64, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Euclidean dot product of the coordinates.
    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector(coords)
    }
}

impl From<&[f64]> for Vector {
    fn from(coords: &[f64]) -> Self {
        Vector(coords.to_vec())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// Symmetric positive-definite Gram matrix backing a weighted inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    dim: usize,
    entries: Vec<f64>, // row-major, dim × dim
}

impl Gram {
    fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    fn quad_form(&self, u: &Vector, v: &Vector) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            let mut row = 0.0;
            for j in 0..self.dim {
                row += self.get(i, j) * v[j];
            }
            acc += u[i] * row;
        }
        acc
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    /// Plain Cholesky; `None` when a pivot fails, i.e. the matrix is not
    /// positive definite.
    fn cholesky_ok(&self) -> bool {
        let n = self.dim;
        let mut l = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 {
                        return false;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Inner {
    Lp { p: f64, dim: usize },
    Hilbert { dim: usize },
    Weighted(Gram),
}

/// Descriptor of the underlying normed space `V`.
///
/// Supplies the norm, the inner product where one exists, and geometric
/// predicates (strict convexity, parallelogram defect, ⊥₂). Values are
/// immutable after construction and all operations are pure, so spaces can be
/// shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Space {
    inner: Inner,
}

impl Space {
    /// ℓ_p^n. `p` may be any real ≥ 1 or `f64::INFINITY` for the max norm.
    pub fn lp(p: f64, dim: usize) -> Result<Space> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidSpace(format!("lp exponent must be ≥ 1, got {p}")));
        }
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        Ok(Space { inner: Inner::Lp { p, dim } })
    }

    /// Euclidean ℝ^n. Identical to `lp(2, dim)` for norm purposes, but also
    /// carries its inner product.
    pub fn hilbert(dim: usize) -> Result<Space> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        Ok(Space { inner: Inner::Hilbert { dim } })
    }

    /// Inner-product space ⟨u, v⟩ = uᵀ G v for a symmetric positive-definite
    /// Gram matrix `G`.
    pub fn weighted(gram: Vec<Vec<f64>>) -> Result<Space> {
        let dim = gram.len();
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be positive".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &gram {
            if row.len() != dim {
                return Err(Error::InvalidSpace("gram matrix must be square".into()));
            }
            for &x in row {
                if !x.is_finite() {
                    return Err(Error::NonFinite);
                }
                entries.push(x);
            }
        }
        let g = Gram { dim, entries };
        let scale = g.entries.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for i in 0..dim {
            for j in 0..i {
                if (g.get(i, j) - g.get(j, i)).abs() > 1e-12 * (1.0 + scale) {
                    return Err(Error::InvalidSpace("gram matrix must be symmetric".into()));
                }
            }
        }
        if !g.cholesky_ok() {
            return Err(Error::InvalidSpace("gram matrix must be positive definite".into()));
        }
        Ok(Space { inner: Inner::Weighted(g) })
    }

    /// The Hilbertian plane `{(α, β, α+β)} ⊂ ℓ₄³` in its `(α, β)` chart:
    /// ⟨(α,β), (γ,δ)⟩ = (1/√2)·{2(αγ + βδ) + (αδ + βγ)}. The associated norm
    /// agrees with ‖·‖₄ of the embedded point; see [`h1_embed`].
    pub fn h1() -> Space {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Space::weighted(vec![vec![2.0 * s, s], vec![s, 2.0 * s]])
            .expect("h1 gram is positive definite")
    }

    pub fn dim(&self) -> usize {
        match &self.inner {
            Inner::Lp { dim, .. } | Inner::Hilbert { dim } => *dim,
            Inner::Weighted(g) => g.dim,
        }
    }

    /// The exponent when this is an ℓ_p space.
    pub fn lp_exponent(&self) -> Option<f64> {
        match &self.inner {
            Inner::Lp { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// Whether the norm comes from an inner product.
    pub fn is_hilbertian(&self) -> bool {
        match &self.inner {
            Inner::Hilbert { .. } | Inner::Weighted(_) => true,
            Inner::Lp { p, .. } => *p == 2.0,
        }
    }

    fn assert_dim(&self, v: &Vector) {
        assert_eq!(self.dim(), v.dim(), "vector does not belong to this space");
    }

    /// Validating vector constructor for externally supplied coordinates.
    pub fn vector(&self, coords: &[f64]) -> Result<Vector> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(coords.to_vec()))
    }

    /// Norm of `v` in this space. Zero exactly when `v = 0`.
    pub fn norm(&self, v: &Vector) -> f64 {
        self.assert_dim(v);
        match &self.inner {
            Inner::Hilbert { .. } => euclid(v),
            Inner::Lp { p, .. } => {
                if *p == 2.0 {
                    euclid(v)
                } else if *p == 1.0 {
                    v.iter().map(|x| x.abs()).sum()
                } else if p.is_infinite() {
                    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
                } else {
                    // Scale out the largest entry so x^p cannot overflow.
                    let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                    if m == 0.0 {
                        return 0.0;
                    }
                    let s: f64 = v.iter().map(|x| (x.abs() / m).powf(*p)).sum();
                    m * s.powf(1.0 / p)
                }
            }
            Inner::Weighted(g) => g.quad_form(v, v).max(0.0).sqrt(),
        }
    }

    pub fn normalize(&self, v: &Vector) -> Result<Vector> {
        let n = self.norm(v);
        if n == 0.0 {
            return Err(Error::ZeroElement);
        }
        Ok(v.scale(1.0 / n))
    }

    /// Inner product, defined for Hilbert, weighted, and ℓ₂ spaces.
    pub fn try_inner(&self, u: &Vector, v: &Vector) -> Result<f64> {
        self.assert_dim(u);
        self.assert_dim(v);
        match &self.inner {
            Inner::Hilbert { .. } => Ok(u.dot(v)),
            Inner::Lp { p, .. } if *p == 2.0 => Ok(u.dot(v)),
            Inner::Weighted(g) => Ok(g.quad_form(u, v)),
            Inner::Lp { .. } => Err(Error::UnsupportedSpace),
        }
    }

    /// `‖u+v‖² + ‖u−v‖² − 2‖u‖² − 2‖v‖²`; identically zero exactly on
    /// Hilbertian spaces.
    pub fn parallelogram_defect(&self, u: &Vector, v: &Vector) -> f64 {
        let np = self.norm(&(u + v));
        let nm = self.norm(&(u - v));
        let nu = self.norm(u);
        let nv = self.norm(v);
        np * np + nm * nm - 2.0 * nu * nu - 2.0 * nv * nv
    }

    /// Max over the grid of `|‖u+kv‖² − ‖u‖² − k²‖v‖²|`: the Pythagorean
    /// defect of the pair. Zero for all `k` means `u ⊥₂ v`.
    pub fn perp2_defect(&self, u: &Vector, v: &Vector, k_grid: &[f64]) -> f64 {
        let nu2 = {
            let n = self.norm(u);
            n * n
        };
        let nv2 = {
            let n = self.norm(v);
            n * n
        };
        let mut worst = 0.0f64;
        for &k in k_grid {
            let n = self.norm(&u.add_scaled(k, v));
            worst = worst.max((n * n - nu2 - k * k * nv2).abs());
        }
        worst
    }

    /// `u ⊥₂ v` verdict over the grid, with the defect that produced it.
    pub fn perp2_check(&self, u: &Vector, v: &Vector, k_grid: &[f64], tol: Tol) -> (bool, f64) {
        let defect = self.perp2_defect(u, v, k_grid);
        let nu = self.norm(u);
        let nv = self.norm(v);
        let kmax = k_grid.iter().fold(1.0f64, |m, k| m.max(k.abs()));
        let scale = (nu + kmax * nv).powi(2);
        (defect <= tol.eff(scale), defect)
    }

    /// Analytic strict-convexity verdict: ℓ_p is strictly convex iff
    /// `1 < p < ∞`; inner-product norms always are.
    pub fn strictly_convex(&self) -> bool {
        match &self.inner {
            Inner::Hilbert { .. } | Inner::Weighted(_) => true,
            Inner::Lp { p, .. } => *p > 1.0 && p.is_finite(),
        }
    }

    /// Randomized hunt for flat segments on the unit sphere.
    ///
    /// Samples pairs of distinct unit vectors and flags a witness whenever a
    /// well-separated pair has a midpoint of norm 1. A deterministic battery
    /// of basis and corner pairs runs first so the witness on ℓ₁/ℓ_∞ does not
    /// depend on sampling luck. The verdict agrees with
    /// [`Space::strictly_convex`] on every ℓ_p space.
    pub fn strict_convexity_probe(&self, sample_pairs: usize, seed: u64, tol: Tol) -> CheckReport {
        let dim = self.dim();
        let mut witness: Option<(Vector, Vector)> = None;
        let mut flattest = 0.0f64;

        let consider = |u: &Vector, v: &Vector, witness: &mut Option<(Vector, Vector)>, flattest: &mut f64| {
            let sep = self.norm(&(u - v));
            if sep < 0.5 {
                return;
            }
            let mid = self.norm(&(u + v).scale(0.5));
            *flattest = flattest.max(mid);
            if mid >= 1.0 - tol.eff(1.0) && witness.is_none() {
                *witness = Some((u.clone(), v.clone()));
            }
        };

        // Battery: normalized basis pairs, plus sign-corner pairs which are
        // the flat directions of the max norm.
        let mut battery: Vec<(Vector, Vector)> = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                battery.push((Vector::basis(dim, i), Vector::basis(dim, j)));
            }
        }
        let ones = Vector::new(vec![1.0; dim]);
        for j in 1..dim {
            let mut c = vec![1.0; dim];
            c[j] = -1.0;
            battery.push((ones.clone(), Vector::new(c)));
        }
        for (a, b) in &battery {
            let (Ok(u), Ok(v)) = (self.normalize(a), self.normalize(b)) else { continue };
            consider(&u, &v, &mut witness, &mut flattest);
        }

        let root = DetRng::new(seed);
        for i in 0..sample_pairs {
            let mut rng = root.fork(i as u64);
            let a = Vector::new(rng.coords(dim, 1.0));
            let b = Vector::new(rng.coords(dim, 1.0));
            let (Ok(u), Ok(v)) = (self.normalize(&a), self.normalize(&b)) else { continue };
            consider(&u, &v, &mut witness, &mut flattest);
        }

        let pass = witness.is_none();
        let witness_json = witness.map(|(u, v)| {
            serde_json::json!({ "u": u.as_slice(), "v": v.as_slice() })
        });
        CheckReport {
            campaign: "strict-convexity-probe".into(),
            space: self.clone(),
            axioms: vec![AxiomCheck {
                id: "no-flat-segment".into(),
                pass,
                witness: witness_json,
                max_defect: flattest,
            }],
            seed,
        }
    }
}

fn euclid(v: &Vector) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Chart-to-ambient embedding for [`Space::h1`]: `(α, β) ↦ (α, β, α+β)`,
/// landing in ℓ₄³.
pub fn h1_embed(alpha: f64, beta: f64) -> Vector {
    Vector::new(vec![alpha, beta, alpha + beta])
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner {
            Inner::Lp { p, dim } if p.is_infinite() => write!(f, "lp:inf:{dim}"),
            Inner::Lp { p, dim } => write!(f, "lp:{p}:{dim}"),
            Inner::Hilbert { dim } => write!(f, "hilbert:{dim}"),
            Inner::Weighted(g) => write!(f, "weighted:{}", g.dim),
        }
    }
}

// Wire format: {"kind": "lp"|"hilbert"|"weighted", "p": number|"inf",
// "dim": n, "gram": [[...]]}.
#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<PRepr>,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PRepr {
    Num(f64),
    Word(String),
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.inner {
            Inner::Lp { p, dim } => SpaceRepr {
                kind: "lp".into(),
                p: Some(if p.is_infinite() { PRepr::Word("inf".into()) } else { PRepr::Num(*p) }),
                dim: *dim,
                gram: None,
            },
            Inner::Hilbert { dim } => {
                SpaceRepr { kind: "hilbert".into(), p: None, dim: *dim, gram: None }
            }
            Inner::Weighted(g) => {
                SpaceRepr { kind: "weighted".into(), p: None, dim: g.dim, gram: Some(g.rows()) }
            }
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = SpaceRepr::deserialize(de)?;
        let fail = |e: Error| D::Error::custom(e.to_string());
        match repr.kind.as_str() {
            "lp" => {
                let p = match repr.p {
                    Some(PRepr::Num(x)) => x,
                    Some(PRepr::Word(w)) if w == "inf" => f64::INFINITY,
                    Some(PRepr::Word(w)) => {
                        return Err(D::Error::custom(format!("unknown exponent {w:?}")))
                    }
                    None => return Err(D::Error::custom("lp space requires \"p\"")),
                };
                Space::lp(p, repr.dim).map_err(fail)
            }
            "hilbert" => Space::hilbert(repr.dim).map_err(fail),
            "weighted" => {
                let gram = repr
                    .gram
                    .ok_or_else(|| D::Error::custom("weighted space requires \"gram\""))?;
                if gram.len() != repr.dim {
                    return Err(D::Error::custom("gram size does not match dim"));
                }
                Space::weighted(gram).map_err(fail)
            }
            other => Err(D::Error::custom(format!("unknown space kind {other:?}"))),
        }
    }
}
