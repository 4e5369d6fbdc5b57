//! Finite-dimensional commutative unital `F_p`-algebras presented by
//! structure constants over a distinguished basis.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::field::{PrimeField, Scalar};
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// Whether a constructor re-checks the ring axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Full,
    /// For algebras that are correct by construction (tensor, product, quotient).
    Skip,
}

#[derive(PartialEq, Eq, Hash)]
struct AlgebraData {
    field: PrimeField,
    dim: usize,
    /// `mul[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i * b_j`.
    mul: Vec<Scalar>,
    one: Vec<Scalar>,
    labels: Option<Vec<String>>,
}

/// Cheap to clone; the structure constants are shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    inner: Arc<AlgebraData>,
}

impl FiniteAlgebra {
    /// Builds and fully validates an algebra from a nested `c[i][j][k]` table.
    pub fn from_structure_constants(
        field: PrimeField,
        dim: usize,
        mul: &[Vec<Vec<u32>>],
        one: &[u32],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if mul.len() != dim || one.len() != dim {
            return Err(Error::Shape(format!(
                "expected {dim} rows and a unit of length {dim}"
            )));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in mul {
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "structure constant row of length {}",
                    row.len()
                )));
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(Error::Shape(format!(
                        "structure constant vector of length {}",
                        entry.len()
                    )));
                }
                for &v in entry {
                    flat.push(field.check(v)?);
                }
            }
        }
        let one = one
            .iter()
            .map(|&v| field.check(v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(field, dim, flat, one, labels, Validation::Full)
    }

    pub fn from_parts(
        field: PrimeField,
        dim: usize,
        mul: Vec<Scalar>,
        one: Vec<Scalar>,
        labels: Option<Vec<String>>,
        validation: Validation,
    ) -> Result<Self> {
        if mul.len() != dim * dim * dim || one.len() != dim {
            return Err(Error::Shape(
                "structure constants do not match dimension".into(),
            ));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(Error::Shape(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )));
            }
            let mut seen = std::collections::BTreeSet::new();
            for s in l {
                if !seen.insert(s) {
                    return Err(Error::DuplicateLabel(s.clone()));
                }
            }
        }
        let a = FiniteAlgebra {
            inner: Arc::new(AlgebraData {
                field,
                dim,
                mul,
                one,
                labels,
            }),
        };
        if validation == Validation::Full {
            a.validate()?;
        }
        Ok(a)
    }

    /// The zero ring over `field`.
    pub fn zero_ring(field: PrimeField) -> Self {
        Self::from_parts(field, 0, Vec::new(), Vec::new(), None, Validation::Skip)
            .expect("zero ring")
    }

    /// Checks commutativity, associativity on all basis triples and the unit law.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return Err(Error::NotCommutative { i, j });
                }
            }
        }
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis(i)).collect();
        let products: Vec<Vec<Vec<Scalar>>> = (0..n)
            .map(|i| (0..n).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul(&products[i][j], &basis[k]);
                    let right = self.mul(&basis[i], &products[j][k]);
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        for (i, b) in basis.iter().enumerate() {
            if &self.mul(self.one(), b) != b {
                return Err(Error::BadUnit { basis: i });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.inner.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn one(&self) -> &[Scalar] {
        &self.inner.one
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.inner.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.inner.labels {
            Some(l) => l[i].clone(),
            None => format!("b{i}"),
        }
    }

    pub fn with_labels(&self, labels: Option<Vec<String>>) -> Result<Self> {
        let d = &self.inner;
        Self::from_parts(
            d.field,
            d.dim,
            d.mul.clone(),
            d.one.clone(),
            labels,
            Validation::Skip,
        )
    }

    /// Coordinates of `b_i * b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        let start = (i * n + j) * n;
        &self.inner.mul[start..start + n]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let n = self.dim();
        self.inner.mul[(i * n + j) * n + k]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![0; self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn is_zero_ring(&self) -> bool {
        self.dim() == 0
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    pub fn scale(&self, c: Scalar, x: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        x.iter().map(|&a| f.mul(c, a)).collect()
    }

    /// The scalar `c` viewed as the algebra element `c * 1`.
    pub fn scalar(&self, c: Scalar) -> Vec<Scalar> {
        self.scale(c, self.one())
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        debug_assert!(x.len() == n && y.len() == n);
        let p = self.p() as u64;
        let mut acc = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi as u64 * yj as u64) % p;
                for (a, &s) in acc.iter_mut().zip(self.basis_product(i, j)) {
                    *a += c * s as u64;
                }
            }
            for a in acc.iter_mut() {
                *a %= p;
            }
        }
        acc.into_iter().map(|a| (a % p) as Scalar).collect()
    }

    /// `a^e` by square-and-multiply; `a^0 = 1`.
    pub fn power(&self, a: &[Scalar], mut e: u64) -> Vec<Scalar> {
        let mut base = a.to_vec();
        let mut acc = self.one().to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of multiplication by `a`.
    pub fn multiplication_matrix(&self, a: &[Scalar]) -> FpMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis(j)))
            .collect();
        FpMatrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Matrix of the Frobenius `a -> a^p`; column `i` is `b_i^p`.
    pub fn frobenius_matrix(&self) -> FpMatrix {
        let p = self.p() as u64;
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|i| self.power(&self.basis(i), p))
            .collect();
        FpMatrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// `p^dim`, saturating.
    pub fn cardinality(&self) -> u128 {
        (self.p() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Element with base-`p` digits of `index`, least significant coordinate last,
    /// so increasing indices enumerate coordinate vectors lexicographically.
    pub fn element_from_index(&self, mut index: u128) -> Vec<Scalar> {
        let p = self.p() as u128;
        let mut v = self.zero();
        for slot in v.iter_mut().rev() {
            *slot = (index % p) as Scalar;
            index /= p;
        }
        v
    }

    /// All elements in lexicographic order; callers enforce size caps.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.cardinality()).map(move |i| self.element_from_index(i))
    }

    /// SHA-256 over the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_vec(&AlgebraJson::from(self)).expect("serializable");
        hex::encode(Sha256::digest(&json))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraJson::from(self)).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_str(s)?;
        raw.try_into()
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra({}, dim {})", self.field(), self.dim())
    }
}

/// The on-disk shape: arrays row-major, entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub dim: usize,
    pub one: Vec<u32>,
    pub mul: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&FiniteAlgebra> for AlgebraJson {
    fn from(a: &FiniteAlgebra) -> Self {
        let n = a.dim();
        AlgebraJson {
            p: a.p(),
            dim: n,
            one: a.one().iter().map(|&v| v as u32).collect(),
            mul: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| a.basis_product(i, j).iter().map(|&v| v as u32).collect())
                        .collect()
                })
                .collect(),
            labels: a.inner.labels.clone(),
        }
    }
}

impl TryFrom<AlgebraJson> for FiniteAlgebra {
    type Error = Error;
    fn try_from(raw: AlgebraJson) -> Result<Self> {
        let field = PrimeField::new(raw.p)?;
        FiniteAlgebra::from_structure_constants(field, raw.dim, &raw.mul, &raw.one, raw.labels)
    }
}

impl Serialize for FiniteAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AlgebraJson::deserialize(d)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}
