//! Finite-support functions F(A), the embedding Ψ₀ : F(A) × F(B) → F(A×B)
//! and linearization of bilinear maps through it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::space::{Scalar, ScalarRepr};

/// A point of an index set. Pairs order lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index {
    Int(i64),
    Str(String),
    Pair(Box<Index>, Box<Index>),
}

impl Index {
    pub fn pair(a: Index, b: Index) -> Index {
        Index::Pair(Box::new(a), Box::new(b))
    }

    fn atom(s: &str) -> Result<Index> {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty index".into()));
        }
        Ok(Index::from(s))
    }

    fn is_atom(&self) -> bool {
        !matches!(self, Index::Pair(..))
    }
}

impl From<i64> for Index {
    fn from(i: i64) -> Self {
        Index::Int(i)
    }
}

impl From<&str> for Index {
    fn from(s: &str) -> Self {
        s.parse::<i64>().map(Index::Int).unwrap_or_else(|_| Index::Str(s.to_string()))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Int(i) => write!(f, "{i}"),
            Index::Str(s) => f.write_str(s),
            Index::Pair(a, b) => write!(f, "{a}|{b}"),
        }
    }
}

impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Index> {
        match s.split_once('|') {
            Some((a, b)) if !b.contains('|') => Ok(Index::pair(Index::atom(a)?, Index::atom(b)?)),
            Some(_) => Err(Error::InvalidInput(format!("index `{s}` nests pairs"))),
            None => Index::atom(s),
        }
    }
}

/// f : A → S with finitely many nonzero values. Zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSupportFunction<S> {
    support: BTreeMap<Index, S>,
}

impl<S> Default for FiniteSupportFunction<S> {
    fn default() -> Self {
        FiniteSupportFunction { support: BTreeMap::new() }
    }
}

impl<S: Clone + Zero> FiniteSupportFunction<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// e_α.
    pub fn unit(alpha: impl Into<Index>) -> Self
    where
        S: num_traits::One,
    {
        Self::from_pairs([(alpha.into(), S::one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Index, S)>) -> Self {
        let mut f = Self::default();
        for (k, v) in pairs {
            f.add_at(k, v);
        }
        f
    }

    fn add_at(&mut self, k: Index, v: S) {
        let cur = self.support.remove(&k).unwrap_or_else(S::zero);
        let sum = cur + v;
        if !sum.is_zero() {
            self.support.insert(k, sum);
        }
    }

    pub fn get(&self, k: &Index) -> S {
        self.support.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> &BTreeMap<Index, S> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn scale(&self, a: &S) -> Self
    where
        S: Mul<Output = S>,
    {
        Self::from_pairs(self.support.iter().map(|(k, v)| (k.clone(), a.clone() * v.clone())))
    }
}

impl<S: Clone + Zero> Add for &FiniteSupportFunction<S> {
    type Output = FiniteSupportFunction<S>;
    fn add(self, rhs: Self) -> FiniteSupportFunction<S> {
        let mut out = self.clone();
        for (k, v) in &rhs.support {
            out.add_at(k.clone(), v.clone());
        }
        out
    }
}

impl Serialize for FiniteSupportFunction<Scalar> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        // keys are written in Index order, so pairs come out lexicographically
        use serde::ser::SerializeMap;
        struct Keys<'a>(&'a BTreeMap<Index, Scalar>);
        impl Serialize for Keys<'_> {
            fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.to_string(), &[v.re, v.im])?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("support", &Keys(&self.support))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for FiniteSupportFunction<Scalar> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            support: BTreeMap<String, ScalarRepr>,
        }
        let r = Repr::deserialize(d)?;
        let mut pairs = Vec::with_capacity(r.support.len());
        for (k, v) in r.support {
            let idx: Index = k.parse().map_err(D::Error::custom)?;
            let z = Scalar::from(v);
            if !z.is_finite() {
                return Err(D::Error::custom("non-finite value"));
            }
            pairs.push((idx, z));
        }
        Ok(FiniteSupportFunction::from_pairs(pairs))
    }
}

/// Ψ₀(f, g)(α, β) = f(α) g(β).
pub fn tensor_embed<S>(f: &FiniteSupportFunction<S>, g: &FiniteSupportFunction<S>) -> Result<FiniteSupportFunction<S>>
where
    S: Clone + Zero + Mul<Output = S>,
{
    if f.support.keys().chain(g.support.keys()).any(|k| !k.is_atom()) {
        return Err(Error::InvalidInput("tensor_embed expects functions on plain index sets".into()));
    }
    let mut out = FiniteSupportFunction::default();
    for (a, fa) in &f.support {
        for (b, gb) in &g.support {
            out.add_at(Index::pair(a.clone(), b.clone()), fa.clone() * gb.clone());
        }
    }
    Ok(out)
}

/// ψ given on unit-vector pairs: ψ(e_α, e_β).
pub type BasisValues<S> = BTreeMap<(Index, Index), S>;

/// ψ(f, g) = Σ f(α) g(β) ψ(e_α, e_β), the bilinear extension of basis values.
pub fn bilinear_extension<S>(psi: &BasisValues<S>, f: &FiniteSupportFunction<S>, g: &FiniteSupportFunction<S>) -> Result<S>
where
    S: Clone + Zero + Mul<Output = S>,
{
    let mut s = S::zero();
    for (a, fa) in &f.support {
        for (b, gb) in &g.support {
            let v = psi
                .get(&(a.clone(), b.clone()))
                .ok_or_else(|| Error::MissingValue(format!("psi(e_{a}, e_{b})")))?;
            s = s + fa.clone() * gb.clone() * v.clone();
        }
    }
    Ok(s)
}

/// The linear map T on F(A×B) with T(e_(α,β)) = ψ(e_α, e_β).
#[derive(Debug, Clone, PartialEq)]
pub struct Linearization<S> {
    a: Vec<Index>,
    b: Vec<Index>,
    values: BTreeMap<Index, S>,
}

impl<S: Clone + Zero + Mul<Output = S>> Linearization<S> {
    pub fn apply(&self, h: &FiniteSupportFunction<S>) -> Result<S> {
        let mut s = S::zero();
        for (k, v) in &h.support {
            let t = self
                .values
                .get(k)
                .ok_or_else(|| Error::InvalidInput(format!("index {k} lies outside A×B")))?;
            s = s + v.clone() * t.clone();
        }
        Ok(s)
    }

    pub fn on_basis(&self, a: &Index, b: &Index) -> Option<&S> {
        self.values.get(&Index::pair(a.clone(), b.clone()))
    }

    pub fn index_sets(&self) -> (&[Index], &[Index]) {
        (&self.a, &self.b)
    }

    /// Any map agreeing with `self` on every e_(α,β) agrees with it on each
    /// element of `samples`, by expansion in that basis.
    pub fn agrees_with<F>(&self, other: F, samples: &[FiniteSupportFunction<S>]) -> Result<bool>
    where
        F: Fn(&FiniteSupportFunction<S>) -> S,
        S: PartialEq + num_traits::One,
    {
        for a in &self.a {
            for b in &self.b {
                let e = FiniteSupportFunction::unit(Index::pair(a.clone(), b.clone()));
                if other(&e) != self.apply(&e)? {
                    return Ok(false);
                }
            }
        }
        for h in samples {
            let expanded = h
                .support
                .iter()
                .fold(S::zero(), |acc, (k, v)| acc + v.clone() * other(&FiniteSupportFunction::unit(k.clone())));
            if expanded != self.apply(h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn tensor_linearize<S>(psi: &BasisValues<S>, a: &[Index], b: &[Index]) -> Result<Linearization<S>>
where
    S: Clone + Zero,
{
    let mut values = BTreeMap::new();
    for x in a {
        for y in b {
            let v = psi
                .get(&(x.clone(), y.clone()))
                .ok_or_else(|| Error::MissingValue(format!("psi(e_{x}, e_{y})")))?;
            values.insert(Index::pair(x.clone(), y.clone()), v.clone());
        }
    }
    Ok(Linearization {
        a: a.to_vec(),
        b: b.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationReport {
    pub basis_pairs: usize,
    pub random_pairs: usize,
    pub max_error: f64,
}

/// Compares T(Ψ₀(f, g)) with ψ(f, g) on every basis pair and on `extra`.
pub fn check_factorization(
    t: &Linearization<Scalar>,
    psi: &BasisValues<Scalar>,
    extra: &[(FiniteSupportFunction<Scalar>, FiniteSupportFunction<Scalar>)],
) -> Result<FactorizationReport> {
    let mut max_error: f64 = 0.0;
    let mut basis_pairs = 0;
    for x in &t.a {
        for y in &t.b {
            let (f, g) = (FiniteSupportFunction::unit(x.clone()), FiniteSupportFunction::unit(y.clone()));
            let lhs = t.apply(&tensor_embed(&f, &g)?)?;
            let rhs = bilinear_extension(psi, &f, &g)?;
            max_error = max_error.max((lhs - rhs).norm());
            basis_pairs += 1;
        }
    }
    for (f, g) in extra {
        let lhs = t.apply(&tensor_embed(f, g)?)?;
        let rhs = bilinear_extension(psi, f, g)?;
        let scale = rhs.norm().max(1.0);
        max_error = max_error.max((lhs - rhs).norm() / scale);
    }
    Ok(FactorizationReport {
        basis_pairs,
        random_pairs: extra.len(),
        max_error,
    })
}
