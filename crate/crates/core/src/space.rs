//! Scalars and vectors over K = R or C.
//!
//! Scalars are always complex; the real case is the zero-imaginary-part
//! subset, and [`Vector::to_real`] is the gate that rejects anything else.

use std::f64::consts::TAU;
use std::ops::{Add, Index, IndexMut, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Scalar = Complex64;

/// Principal argument in `[0, 2π)`.
pub fn arg(z: Scalar) -> f64 {
    if z == Scalar::new(0.0, 0.0) {
        return 0.0;
    }
    let t = z.im.atan2(z.re);
    if t < 0.0 {
        let r = t + TAU;
        // t + TAU can round up to exactly TAU for tiny negative t
        if r >= TAU {
            0.0
        } else {
            r
        }
    } else {
        t
    }
}

/// Unit-modulus phase `e^{i arg z}`; 1 for z = 0.
pub fn phase(z: Scalar) -> Scalar {
    let r = z.norm();
    if r == 0.0 {
        Scalar::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// Whether the two fields of scalars are in play for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// A vector in K^n, n >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Vector(coords))
    }

    pub(crate) fn from_vec(coords: Vec<Scalar>) -> Self {
        debug_assert!(!coords.is_empty());
        Vector(coords)
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Scalar::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::from_vec(vec![Scalar::new(0.0, 0.0); dim.max(1)])
    }

    /// The i-th standard basis vector of K^dim.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Real coordinates, rejecting any nonzero imaginary part.
    pub fn to_real(&self) -> Result<Vec<f64>> {
        if !self.is_real() {
            return Err(Error::ComplexInput("this operation works over the real field only"));
        }
        Ok(self.0.iter().map(|z| z.re).collect())
    }

    pub fn scale(&self, alpha: Scalar) -> Vector {
        Vector::from_vec(self.0.iter().map(|&z| alpha * z).collect())
    }

    pub fn scale_real(&self, alpha: f64) -> Vector {
        Vector::from_vec(self.0.iter().map(|&z| z * alpha).collect())
    }

    /// Bilinear pairing Σ x_i y_i (no conjugation).
    pub fn pair(&self, other: &Vector) -> Scalar {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// (1-t) self + t other.
    pub fn lerp(&self, other: &Vector, t: f64) -> Vector {
        Vector::from_vec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a * (1.0 - t) + b * t)
                .collect(),
        )
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in vector addition");
        Vector::from_vec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in vector subtraction");
        Vector::from_vec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Wire form of a scalar: either a bare real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ScalarRepr> for Scalar {
    fn from(r: ScalarRepr) -> Scalar {
        match r {
            ScalarRepr::Real(x) => Scalar::new(x, 0.0),
            ScalarRepr::Pair([re, im]) => Scalar::new(re, im),
        }
    }
}

/// Serialize scalars as `[re, im]`.
pub fn scalars_to_pairs(z: &[Scalar]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

pub mod serde_scalars {
    //! `[[re, im], ...]` (de)serialization for scalar lists; bare reals are
    //! accepted on input.
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        scalars_to_pairs(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        let raw: Vec<ScalarRepr> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(Scalar::from).collect())
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_scalars::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = serde_scalars::deserialize(d)?;
        Vector::new(coords).map_err(serde::de::Error::custom)
    }
}
