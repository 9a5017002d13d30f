//! The JSON interchange format for algebras.
//!
//! A document stores the base field, the parity vector, the nonzero
//! structure constants as `[i, j, [[k, "c"], ...]]` entries and optionally
//! Cartan generators and free-form metadata. Scalars are strings holding a
//! decimal integer or `num/den`. The canonical form has sorted keys,
//! products sorted by `(i, j, k)`, reduced scalars and no zero entries;
//! [`AlgebraDocument::to_canonical_json`] writes it compactly with a
//! trailing newline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{Field, FieldDescriptor, FieldError, PrimeField, Rationals, Scalar};
use crate::superalg::{AlgebraError, Parity, Superalgebra};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),
    #[error("dim is {dim} but the parity vector has {len} entries")]
    DimMismatch { dim: usize, len: usize },
    #[error("parity entry {index} is {value}, expected 0 or 1")]
    BadParity { index: usize, value: u8 },
    #[error("product [{i}, {j}] -> {k}: index out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("product [{i}, {j}] -> {k} violates the grading")]
    Grading { i: usize, j: usize, k: usize },
    #[error("bad scalar in product [{i}, {j}] -> {k}")]
    Scalar { i: usize, j: usize, k: usize, source: FieldError },
    #[error("cartan vector {index} has length {got}, expected {dim}")]
    CartanLength { index: usize, got: usize, dim: usize },
    #[error("bad scalar in cartan vector {index}")]
    CartanScalar { index: usize, source: FieldError },
    #[error("meta.basis has {got} names, expected {dim}")]
    NameCount { got: usize, dim: usize },
    #[error("unknown field {0:?}; expected \"Q\" or {{\"Fp\": p}}")]
    UnknownField(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `"Q"` or `{"Fp": p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldSpec {
    pub fn from_descriptor(d: FieldDescriptor) -> Self {
        match d {
            FieldDescriptor::Rationals => FieldSpec::Named("Q".into()),
            FieldDescriptor::PrimeField(p) => FieldSpec::Prime { fp: p as u64 },
        }
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor, DocumentError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(FieldDescriptor::Rationals),
            FieldSpec::Named(s) => Err(DocumentError::UnknownField(s.clone())),
            FieldSpec::Prime { fp } => Ok(PrimeField::new(*fp)?.descriptor()),
        }
    }
}

/// Parses the command-line spelling `Q` or `Fp:p`.
pub fn parse_field_flag(s: &str) -> Result<FieldDescriptor, DocumentError> {
    match s.strip_prefix("Fp:") {
        Some(p) => {
            let p: u64 = p.parse().map_err(|_| DocumentError::UnknownField(s.to_string()))?;
            Ok(PrimeField::new(p)?.descriptor())
        }
        None if s == "Q" => Ok(FieldDescriptor::Rationals),
        None => Err(DocumentError::UnknownField(s.to_string())),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `[i, j, [[k, "c"], ...]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry(pub usize, pub usize, pub Vec<(usize, String)>);

/// Fields are declared in key order so the serialized form is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<String>>>,
    pub dim: usize,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
    pub parity: Vec<u8>,
    pub products: Vec<ProductEntry>,
}

/// An algebra read from a document, still unvalidated.
#[derive(Debug, Clone)]
pub struct Loaded<F: Field> {
    pub algebra: Superalgebra<F>,
    pub cartan: Option<Vec<Vec<F::Elem>>>,
    pub meta: Meta,
}

/// A loaded algebra over whichever field the document (or an override)
/// names.
#[derive(Debug, Clone)]
pub enum AnyLoaded {
    Q(Loaded<Rationals>),
    Fp(Loaded<PrimeField>),
}

impl AlgebraDocument {
    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Builds the document of an algebra, names going into `meta.basis`.
    pub fn from_algebra<F: Field>(alg: &Superalgebra<F>, cartan: Option<&[Vec<F::Elem>]>, mut meta: Meta) -> Self {
        let mut products = Vec::new();
        for (i, j, cell) in alg.entries() {
            let mut row: Vec<(usize, String)> = cell.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.to_string())).collect();
            row.sort_by_key(|(k, _)| *k);
            if !row.is_empty() {
                products.push(ProductEntry(i, j, row));
            }
        }
        products.sort_by_key(|p| (p.0, p.1));
        if meta.basis.is_none() {
            meta.basis = alg.names().map(|n| n.to_vec());
        }
        let meta = if meta == Meta::default() { None } else { Some(meta) };
        AlgebraDocument {
            cartan: cartan.map(|vs| vs.iter().map(|v| v.iter().map(|c| c.to_string()).collect()).collect()),
            dim: alg.dim(),
            field: FieldSpec::from_descriptor(alg.field().descriptor()),
            meta,
            parity: alg.parity().iter().map(|p| p.bit()).collect(),
            products,
        }
    }

    /// Interprets the document over `field`, checking indices, scalars and
    /// the grading. The super Leibniz identity is not checked here.
    pub fn to_algebra<F: Field>(&self, field: F) -> Result<Loaded<F>, DocumentError> {
        let dim = self.dim;
        if self.parity.len() != dim {
            return Err(DocumentError::DimMismatch { dim, len: self.parity.len() });
        }
        let parity: Vec<Parity> = self
            .parity
            .iter()
            .enumerate()
            .map(|(index, &value)| Parity::from_bit(value).ok_or(DocumentError::BadParity { index, value }))
            .collect::<Result<_, _>>()?;
        let mut entries = Vec::new();
        for ProductEntry(i, j, row) in &self.products {
            for (k, s) in row {
                let (i, j, k) = (*i, *j, *k);
                if i >= dim || j >= dim || k >= dim {
                    return Err(DocumentError::IndexOutOfRange { i, j, k, dim });
                }
                let c = field.parse(s).map_err(|source| DocumentError::Scalar { i, j, k, source })?;
                if !c.is_zero() && parity[k] != parity[i] + parity[j] {
                    return Err(DocumentError::Grading { i, j, k });
                }
                entries.push((i, j, k, c));
            }
        }
        let mut algebra = Superalgebra::new(field.clone(), parity, entries)?;
        let meta = self.meta.clone().unwrap_or_default();
        if let Some(names) = &meta.basis {
            if names.len() != dim {
                return Err(DocumentError::NameCount { got: names.len(), dim });
            }
            algebra = algebra.with_names(names.clone())?;
        }
        let cartan = match &self.cartan {
            None => None,
            Some(vs) => Some(
                vs.iter()
                    .enumerate()
                    .map(|(index, v)| {
                        if v.len() != dim {
                            return Err(DocumentError::CartanLength { index, got: v.len(), dim });
                        }
                        v.iter().map(|s| field.parse(s).map_err(|source| DocumentError::CartanScalar { index, source })).collect()
                    })
                    .collect::<Result<Vec<Vec<F::Elem>>, _>>()?,
            ),
        };
        Ok(Loaded { algebra, cartan, meta })
    }

    /// Loads over the document's field, or over `field` when given.
    pub fn load(&self, field: Option<FieldDescriptor>) -> Result<AnyLoaded, DocumentError> {
        match field.map_or_else(|| self.field.descriptor(), Ok)? {
            FieldDescriptor::Rationals => Ok(AnyLoaded::Q(self.to_algebra(Rationals)?)),
            FieldDescriptor::PrimeField(p) => Ok(AnyLoaded::Fp(self.to_algebra(PrimeField::new(p as u64)?)?)),
        }
    }

    /// `save ∘ load` over the document's own field.
    pub fn canonicalize(&self) -> Result<Self, DocumentError> {
        fn back<F: Field>(l: &Loaded<F>) -> AlgebraDocument {
            AlgebraDocument::from_algebra(&l.algebra, l.cartan.as_deref(), l.meta.clone())
        }
        Ok(match self.load(None)? {
            AnyLoaded::Q(l) => back(&l),
            AnyLoaded::Fp(l) => back(&l),
        })
    }
}
