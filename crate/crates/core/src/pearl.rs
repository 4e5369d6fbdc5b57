//! The pearl `A°` of a finite `F_p`-algebra (its largest p-Boolean
//! subalgebra, i.e. the fixed points of the Frobenius) and the universal
//! p-Boolean quotient `Q(A) = A / (a^p - a)`, with checks of their universal
//! properties.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpalgebra::{
    corestrict, enumerate_homs, quotient_by_ideal, relative_tensor, span_algebra, AlgebraHom,
    FiniteAlgebra, FpMatrix, Scalar, Subalgebra,
};
use crate::limits::Limits;

/// A finite algebra certified to satisfy `a^p = a` for every element.
///
/// The Frobenius is `F_p`-linear, so it is enough that it fixes a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBooleanAlgebra {
    algebra: FiniteAlgebra,
}

impl PBooleanAlgebra {
    pub fn certify(algebra: FiniteAlgebra) -> Result<Self> {
        match p_boolean_witness(&algebra) {
            None => Ok(PBooleanAlgebra { algebra }),
            Some(witness) => Err(Error::NotPBoolean { witness }),
        }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn into_inner(self) -> FiniteAlgebra {
        self.algebra
    }
}

/// First basis element `b` with `b^p != b`, if any.
pub fn p_boolean_witness(a: &FiniteAlgebra) -> Option<usize> {
    let fr = a.frobenius_matrix();
    (0..a.dim()).find(|&i| fr.column(i) != a.basis(i))
}

pub fn is_p_boolean(a: &FiniteAlgebra) -> bool {
    p_boolean_witness(a).is_none()
}

#[derive(Clone, Debug)]
pub struct PearlResult {
    ambient: FiniteAlgebra,
    sub: Subalgebra,
    pearl: PBooleanAlgebra,
}

impl PearlResult {
    pub fn ambient(&self) -> &FiniteAlgebra {
        &self.ambient
    }

    pub fn pearl_algebra(&self) -> &PBooleanAlgebra {
        &self.pearl
    }

    pub fn inclusion(&self) -> &AlgebraHom {
        &self.sub.inclusion
    }

    pub fn dim(&self) -> usize {
        self.sub.algebra.dim()
    }

    /// Echelon basis of the fixed subspace, in ambient coordinates.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.sub.subspace.basis()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.sub.subspace.contains(x)
    }

    pub fn as_subalgebra(&self) -> &Subalgebra {
        &self.sub
    }

    pub fn to_json(&self) -> PearlJson {
        PearlJson {
            ambient_hash: self.ambient.content_hash(),
            ambient_dim: self.ambient.dim(),
            dim: self.dim(),
            basis: self.basis().to_vec(),
            inclusion: self.inclusion().matrix().clone(),
            algebra: self.sub.algebra.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PearlJson {
    pub ambient_hash: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub inclusion: FpMatrix,
    pub algebra: FiniteAlgebra,
}

/// `A° = ker(Frobenius - 1)` on its reduced echelon basis.
pub fn pearl(a: &FiniteAlgebra) -> Result<PearlResult> {
    let fixed = a
        .frobenius_matrix()
        .sub(&FpMatrix::identity(a.field(), a.dim()))
        .kernel();
    let sub = span_algebra(a, &fixed, a.one())?;
    sub.inclusion
        .validate()
        .map_err(|_| Error::InternalClosureFailure)?;
    let pearl =
        PBooleanAlgebra::certify(sub.algebra.clone()).map_err(|_| Error::InternalClosureFailure)?;
    Ok(PearlResult {
        ambient: a.clone(),
        sub,
        pearl,
    })
}

#[derive(Clone, Debug)]
pub struct StoneQuotient {
    pub algebra: PBooleanAlgebra,
    pub projection: AlgebraHom,
}

/// `Q(A) = A / (b^p - b : b in the basis)`.
///
/// In characteristic `p` the map `a -> a^p - a` is additive, so the basis
/// generators span the same ideal as all `a^p - a`.
pub fn stone_quotient(a: &FiniteAlgebra) -> Result<StoneQuotient> {
    let p = a.p() as u64;
    let gens: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| a.sub(&a.power(&a.basis(i), p), &a.basis(i)))
        .collect();
    let q = quotient_by_ideal(a, &gens)?;
    let algebra = PBooleanAlgebra::certify(q.algebra).map_err(|_| Error::InternalClosureFailure)?;
    Ok(StoneQuotient {
        algebra,
        projection: q.projection,
    })
}

/// Outcome of comparing two hom-sets that a universal property says are in
/// bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomBijectionVerdict {
    pub holds: bool,
    /// Size of the hom-set on the `A` side (`Hom(B, A)` or `Hom(A, B)`).
    pub direct: usize,
    /// Size of the hom-set through the universal object.
    pub universal: usize,
    pub counterexample: Option<String>,
}

/// Checks that composing with `A° -> A` is a bijection `Hom(B, A°) -> Hom(B, A)`.
pub fn check_pearl_universal(
    b: &PBooleanAlgebra,
    a: &FiniteAlgebra,
    limits: &Limits,
) -> Result<HomBijectionVerdict> {
    let pr = pearl(a)?;
    let direct = enumerate_homs(b.algebra(), a, limits)?;
    let through = enumerate_homs(b.algebra(), &pr.sub.algebra, limits)?;
    let mut counterexample = None;
    for h in &direct {
        if let Some(i) = (0..h.source().dim()).find(|&i| !pr.contains(&h.matrix().column(i))) {
            counterexample = Some(format!(
                "hom {:?} sends b{i} outside the pearl",
                h.matrix().to_rows()
            ));
            break;
        }
    }
    let mut images: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(through.len());
    for g in &through {
        images.push(pr.inclusion().compose(g)?.matrix().to_rows());
    }
    images.sort();
    let distinct = {
        let mut d = images.clone();
        d.dedup();
        d.len() == images.len()
    };
    let mut direct_rows: Vec<_> = direct.iter().map(|h| h.matrix().to_rows()).collect();
    direct_rows.sort();
    if counterexample.is_none() && !distinct {
        counterexample = Some("two homs into the pearl agree after inclusion".into());
    }
    if counterexample.is_none() && images != direct_rows {
        counterexample = Some("hom-sets differ after composing with the inclusion".into());
    }
    Ok(HomBijectionVerdict {
        holds: counterexample.is_none(),
        direct: direct.len(),
        universal: through.len(),
        counterexample,
    })
}

/// Checks that precomposing with `A -> Q(A)` is a bijection `Hom(Q(A), B) -> Hom(A, B)`.
pub fn check_q_universal(
    a: &FiniteAlgebra,
    b: &PBooleanAlgebra,
    limits: &Limits,
) -> Result<HomBijectionVerdict> {
    let q = stone_quotient(a)?;
    let direct = enumerate_homs(a, b.algebra(), limits)?;
    let through = enumerate_homs(q.algebra.algebra(), b.algebra(), limits)?;
    let mut images = through
        .iter()
        .map(|g| Ok(g.compose(&q.projection)?.matrix().to_rows()))
        .collect::<Result<Vec<_>>>()?;
    images.sort();
    let mut dedup = images.clone();
    dedup.dedup();
    let mut direct_rows: Vec<_> = direct.iter().map(|h| h.matrix().to_rows()).collect();
    direct_rows.sort();
    let counterexample = if dedup.len() != images.len() {
        Some("precomposition with the projection is not injective".into())
    } else if images != direct_rows {
        Some("some hom A -> B does not factor through Q(A)".into())
    } else {
        None
    };
    Ok(HomBijectionVerdict {
        holds: counterexample.is_none(),
        direct: direct.len(),
        universal: through.len(),
        counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonVerdict {
    /// `dim B° ⊗_A B°`
    pub source_dim: usize,
    /// `dim (B ⊗_A B)°`
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// Builds the canonical map `B° ⊗_A B° -> (B ⊗_A B)°` for an injective
/// `f: A -> B` out of a p-Boolean `A`, and reports whether it is injective and
/// surjective. Injectivity of `f` stands in for faithful flatness, which for
/// p-Boolean `A` is equivalent.
pub fn check_pearl_comparison(
    a: &PBooleanAlgebra,
    f: &AlgebraHom,
    limits: &Limits,
) -> Result<ComparisonVerdict> {
    if f.source() != a.algebra() {
        return Err(Error::SourceMismatch);
    }
    if !f.is_injective() {
        return Err(Error::NotInjectiveInput);
    }
    let b = f.target();
    let field = b.field();
    let pb = pearl(b)?;
    let f_pearl = corestrict(f, pb.as_subalgebra())?;
    let bp = &pb.sub.algebra;
    let (src_tensor, src) = relative_tensor(bp, bp, &f_pearl, &f_pearl, limits)?;
    let (_, tgt) = relative_tensor(b, b, f, f, limits)?;
    let tgt_pearl = pearl(&tgt.algebra)?;

    let free = src.ideal.free_columns();
    let m = bp.dim();
    let cols = free
        .iter()
        .map(|&c| {
            let (i, j) = (c / m, c % m);
            let x = pb.inclusion().matrix().column(i);
            let y = pb.inclusion().matrix().column(j);
            let lifted = crate::fpalgebra::kron(field, &x, &y);
            let image = tgt.projection.apply(&lifted);
            tgt_pearl.sub.subspace.coordinates(&image)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::InternalClosureFailure)?;
    debug_assert_eq!(src_tensor.algebra.dim(), m * m);
    let matrix = FpMatrix::from_columns(field, tgt_pearl.dim(), &cols);
    let comparison = AlgebraHom::new(src.algebra.clone(), tgt_pearl.sub.algebra.clone(), matrix)
        .map_err(|_| Error::InternalClosureFailure)?;
    Ok(ComparisonVerdict {
        source_dim: src.algebra.dim(),
        target_dim: tgt_pearl.dim(),
        injective: comparison.is_injective(),
        surjective: comparison.is_surjective(),
    })
}
