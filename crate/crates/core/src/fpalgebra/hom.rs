//! Unital ring homomorphisms between finite algebras, and their exhaustive
//! enumeration.

use std::fmt;

use super::algebra::FiniteAlgebra;
use super::field::Scalar;
use super::matrix::FpMatrix;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// An `F_p`-linear map, validated as a unital ring map. The matrix is
/// `target.dim x source.dim`; column `i` is the image of `b_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraHom {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    matrix: FpMatrix,
}

impl AlgebraHom {
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, matrix: FpMatrix) -> Result<Self> {
        let h = Self::new_unchecked(source, target, matrix)?;
        h.validate()?;
        Ok(h)
    }

    /// Shape and field checks only.
    pub fn new_unchecked(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        matrix: FpMatrix,
    ) -> Result<Self> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch {
                left: source.p(),
                right: target.p(),
            });
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(AlgebraHom {
            source,
            target,
            matrix,
        })
    }

    pub fn from_images(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        images: &[Vec<Scalar>],
    ) -> Result<Self> {
        let m = FpMatrix::from_columns(source.field(), target.dim(), images);
        Self::new(source, target, m)
    }

    pub fn identity(a: &FiniteAlgebra) -> Self {
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            matrix: FpMatrix::identity(a.field(), a.dim()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.apply(self.source.one()) != self.target.one() {
            return Err(Error::InvalidHom("unit not preserved".into()));
        }
        let n = self.source.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| self.matrix.column(i)).collect();
        for i in 0..n {
            for j in i..n {
                let lhs = self.matrix.apply(self.source.basis_product(i, j));
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "not multiplicative on (b{i}, b{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraHom) -> Result<AlgebraHom> {
        if first.target != self.source {
            return Err(Error::InvalidHom(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(AlgebraHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// Same source and target up to content, ignoring labels.
    pub fn same_map(&self, other: &AlgebraHom) -> bool {
        self.matrix == other.matrix
    }
}

impl fmt::Debug for AlgebraHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraHom(dim {} -> dim {}, {:?})",
            self.source.dim(),
            self.target.dim(),
            self.matrix.to_rows()
        )
    }
}

/// All unital ring maps `source -> target`, sorted lexicographically by the
/// row-major matrix.
///
/// Images of basis elements are chosen one at a time; every multiplicativity
/// or unit constraint is checked as soon as all basis elements it involves
/// have images, which prunes the `|target|^dim(source)` candidate space down to
/// a small search tree for the algebras at hand.
pub fn enumerate_homs(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Vec<AlgebraHom>> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch {
            left: source.p(),
            right: target.p(),
        });
    }
    let n = source.dim();
    let m = target.dim();
    let field = source.field();
    if n == 0 {
        // Unit must go to unit: only possible into the zero ring.
        return Ok(if m == 0 {
            vec![AlgebraHom::new_unchecked(
                source.clone(),
                target.clone(),
                FpMatrix::zeros(field, 0, 0),
            )?]
        } else {
            Vec::new()
        });
    }
    let card = target.cardinality();
    if card > limits.max_elements {
        return Err(Error::EnumerationCapExceeded {
            what: format!("elements of a dim-{m} algebra over {field}"),
            size: card,
            cap: limits.max_elements,
        });
    }
    let candidates: Vec<Vec<Scalar>> = target.elements().collect();

    // Constraints become checkable at the step where their last basis index is assigned.
    #[derive(Clone, Copy)]
    enum Constraint {
        Unit,
        Product(usize, usize),
    }
    let support_max = |v: &[Scalar]| v.iter().rposition(|&c| c != 0);
    let mut ready: Vec<Vec<Constraint>> = vec![Vec::new(); n];
    ready[support_max(source.one()).unwrap_or(0)].push(Constraint::Unit);
    for i in 0..n {
        for j in i..n {
            let step = support_max(source.basis_product(i, j)).map_or(j, |s| s.max(j));
            ready[step].push(Constraint::Product(i, j));
        }
    }

    let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut found = Vec::new();
    let mut nodes = 0u64;

    let combine = |images: &[Vec<Scalar>], coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![0; m];
        for (img, &c) in images.iter().zip(coeffs) {
            if c != 0 {
                for (o, &v) in out.iter_mut().zip(img) {
                    *o = field.add(*o, field.mul(c, v));
                }
            }
        }
        out
    };

    fn search(
        step: usize,
        n: usize,
        images: &mut Vec<Vec<Scalar>>,
        candidates: &[Vec<Scalar>],
        ready: &[Vec<Constraint>],
        check: &dyn Fn(&[Vec<Scalar>], Constraint) -> bool,
        nodes: &mut u64,
        cap: u64,
        found: &mut Vec<Vec<Vec<Scalar>>>,
    ) -> bool {
        if step == n {
            found.push(images.clone());
            return true;
        }
        for c in candidates {
            *nodes += 1;
            if *nodes > cap {
                return false;
            }
            images.push(c.clone());
            if ready[step].iter().all(|&k| check(images, k)) {
                let ok = search(
                    step + 1,
                    n,
                    images,
                    candidates,
                    ready,
                    check,
                    nodes,
                    cap,
                    found,
                );
                if !ok {
                    return false;
                }
            }
            images.pop();
        }
        true
    }

    let check = |images: &[Vec<Scalar>], c: Constraint| -> bool {
        match c {
            Constraint::Unit => combine(images, &source.one()[..images.len()]) == target.one(),
            Constraint::Product(i, j) => {
                let lhs = target.mul(&images[i], &images[j]);
                let rhs = combine(images, &source.basis_product(i, j)[..images.len()]);
                lhs == rhs
            }
        }
    };

    let mut raw = Vec::new();
    let completed = search(
        0,
        n,
        &mut images,
        &candidates,
        &ready,
        &check,
        &mut nodes,
        limits.max_search_nodes,
        &mut raw,
    );
    if !completed {
        return Err(Error::EnumerationCapExceeded {
            what: "homomorphism search nodes".into(),
            size: nodes as u128,
            cap: limits.max_search_nodes as u128,
        });
    }
    for imgs in raw {
        let matrix = FpMatrix::from_columns(field, m, &imgs);
        found.push(AlgebraHom::new_unchecked(
            source.clone(),
            target.clone(),
            matrix,
        )?);
    }
    found.sort_by_key(|h| h.matrix.to_rows());
    Ok(found)
}
