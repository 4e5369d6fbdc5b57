//! Standard constructions: function algebras, univariate quotients, products,
//! tensor products, quotients by ideals and subalgebras.

use super::algebra::{FiniteAlgebra, Validation};
use super::field::{PrimeField, Scalar};
use super::hom::AlgebraHom;
use super::matrix::{FpMatrix, Subspace};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// `F_p^S` with pointwise multiplication on the indicator basis.
pub fn function_algebra(field: PrimeField, labels: &[String]) -> Result<FiniteAlgebra> {
    let n = labels.len();
    let mut mul = vec![0; n * n * n];
    for i in 0..n {
        mul[(i * n + i) * n + i] = 1;
    }
    let labels = if n == 0 { None } else { Some(labels.to_vec()) };
    FiniteAlgebra::from_parts(field, n, mul, vec![1; n], labels, Validation::Skip)
}

/// `F_p^{{s0, ..., s(n-1)}}`.
pub fn function_algebra_n(field: PrimeField, n: usize) -> FiniteAlgebra {
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    function_algebra(field, &labels).expect("generated labels are distinct")
}

/// The base field as a one-dimensional algebra.
pub fn base_field(field: PrimeField) -> FiniteAlgebra {
    FiniteAlgebra::from_parts(field, 1, vec![1], vec![1], None, Validation::Skip)
        .expect("base field")
}

/// `F_p[x]/(f)` on the basis `1, x, ..., x^(deg f - 1)`.
pub fn univariate_quotient(f: &Poly, var: &str) -> Result<FiniteAlgebra> {
    let deg = match f.degree() {
        None | Some(0) => return Err(Error::ZeroDegree),
        Some(d) => d,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = f.field();
    // x^k mod f for k < 2 deg - 1
    let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * deg);
    let mut cur = vec![0; deg];
    cur[0] = 1;
    for _ in 0..(2 * deg - 1) {
        powers.push(cur.clone());
        // multiply by x and reduce with x^deg = -(f_0 + ... + f_{deg-1} x^{deg-1})
        let top = cur[deg - 1];
        for k in (1..deg).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (k, slot) in cur.iter_mut().enumerate() {
                *slot = field.sub(*slot, field.mul(top, f.coeff(k)));
            }
        }
    }
    let mut mul = Vec::with_capacity(deg * deg * deg);
    for i in 0..deg {
        for j in 0..deg {
            mul.extend_from_slice(&powers[i + j]);
        }
    }
    let mut one = vec![0; deg];
    one[0] = 1;
    let labels = (0..deg)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        })
        .collect();
    FiniteAlgebra::from_parts(field, deg, mul, one, Some(labels), Validation::Skip)
}

fn same_field(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<PrimeField> {
    if a.field() != b.field() {
        Err(Error::FieldMismatch {
            left: a.p(),
            right: b.p(),
        })
    } else {
        Ok(a.field())
    }
}

fn check_dim(dim: usize, limits: &Limits) -> Result<()> {
    if dim > limits.max_dim {
        Err(Error::DimCapExceeded {
            dim,
            cap: limits.max_dim,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    pub left: AlgebraHom,
    pub right: AlgebraHom,
}

/// `A x B` with block-diagonal structure constants and both projections.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<Product> {
    let field = same_field(a, b)?;
    let (n, m) = (a.dim(), b.dim());
    let d = n + m;
    check_dim(d, limits)?;
    let mut mul = vec![0; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mul[(i * d + j) * d + k] = a.structure_constant(i, j, k);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                mul[((n + i) * d + (n + j)) * d + (n + k)] = b.structure_constant(i, j, k);
            }
        }
    }
    let mut one = a.one().to_vec();
    one.extend_from_slice(b.one());
    let labels = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => {
            let all: Vec<String> = la
                .iter()
                .map(|s| format!("{s}.0"))
                .chain(lb.iter().map(|s| format!("{s}.1")))
                .collect();
            Some(all)
        }
        _ => None,
    };
    let algebra = FiniteAlgebra::from_parts(field, d, mul, one, labels, Validation::Skip)?;
    let mut pl = FpMatrix::zeros(field, n, d);
    for i in 0..n {
        pl.set(i, i, 1);
    }
    let mut pr = FpMatrix::zeros(field, m, d);
    for i in 0..m {
        pr.set(i, n + i, 1);
    }
    Ok(Product {
        left: AlgebraHom::new_unchecked(algebra.clone(), a.clone(), pl)?,
        right: AlgebraHom::new_unchecked(algebra.clone(), b.clone(), pr)?,
        algebra,
    })
}

#[derive(Debug, Clone)]
pub struct Tensor {
    pub algebra: FiniteAlgebra,
    /// `a -> a ⊗ 1`
    pub left: AlgebraHom,
    /// `b -> 1 ⊗ b`
    pub right: AlgebraHom,
}

/// Coordinates of `x ⊗ y` on the Kronecker basis `b_i ⊗ b'_j` (index `i * dim_B + j`).
pub fn kron(field: PrimeField, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        for &b in y {
            out.push(field.mul(a, b));
        }
    }
    out
}

/// `A ⊗ B` on the Kronecker basis together with both coprojections.
pub fn tensor(a: &FiniteAlgebra, b: &FiniteAlgebra, limits: &Limits) -> Result<Tensor> {
    let field = same_field(a, b)?;
    let (n, m) = (a.dim(), b.dim());
    let d = n * m;
    check_dim(d, limits)?;
    let mut mul = vec![0; d * d * d];
    for i in 0..n {
        for j in 0..n {
            let ca = a.basis_product(i, j);
            for k in 0..m {
                for l in 0..m {
                    let prod = kron(field, ca, b.basis_product(k, l));
                    let row = (i * m + k) * d + (j * m + l);
                    mul[row * d..(row + 1) * d].copy_from_slice(&prod);
                }
            }
        }
    }
    let one = kron(field, a.one(), b.one());
    let labels = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => Some(
            la.iter()
                .flat_map(|s| lb.iter().map(move |t| format!("{s}⊗{t}")))
                .collect(),
        ),
        _ => None,
    };
    let algebra = FiniteAlgebra::from_parts(field, d, mul, one, labels, Validation::Skip)?;
    let left_cols: Vec<Vec<Scalar>> = (0..n).map(|i| kron(field, &a.basis(i), b.one())).collect();
    let right_cols: Vec<Vec<Scalar>> = (0..m).map(|j| kron(field, a.one(), &b.basis(j))).collect();
    Ok(Tensor {
        left: AlgebraHom::new_unchecked(
            a.clone(),
            algebra.clone(),
            FpMatrix::from_columns(field, d, &left_cols),
        )?,
        right: AlgebraHom::new_unchecked(
            b.clone(),
            algebra.clone(),
            FpMatrix::from_columns(field, d, &right_cols),
        )?,
        algebra,
    })
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    pub projection: AlgebraHom,
    pub ideal: Subspace,
}

/// The smallest ideal containing `gens`: span closure under multiplication by
/// every basis element, iterated until the span stabilizes.
pub fn ideal_closure(a: &FiniteAlgebra, gens: &[Vec<Scalar>]) -> Subspace {
    let n = a.dim();
    let mut ideal = Subspace::span(a.field(), n, gens);
    loop {
        let products: Vec<Vec<Scalar>> = ideal
            .basis()
            .iter()
            .flat_map(|v| (0..n).map(move |k| a.mul(v, &a.basis(k))))
            .collect();
        if !ideal.extend(&products) {
            return ideal;
        }
    }
}

/// `A / I` for the ideal generated by `gens`, with the projection.
///
/// The quotient basis is the images of the basis vectors at the non-pivot
/// columns of the echelon basis of `I`.
pub fn quotient_by_ideal(a: &FiniteAlgebra, gens: &[Vec<Scalar>]) -> Result<Quotient> {
    let field = a.field();
    let ideal = ideal_closure(a, gens);
    let free = ideal.free_columns();
    let d = free.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.reduce(v);
        free.iter().map(|&c| r[c]).collect()
    };
    let mut mul = Vec::with_capacity(d * d * d);
    for &i in &free {
        for &j in &free {
            mul.extend(project(a.basis_product(i, j)));
        }
    }
    let one = project(a.one());
    let labels = a
        .labels()
        .map(|l| free.iter().map(|&c| l[c].clone()).collect());
    let labels = if d == 0 { None } else { labels };
    let algebra = FiniteAlgebra::from_parts(field, d, mul, one, labels, Validation::Skip)?;
    let cols: Vec<Vec<Scalar>> = (0..a.dim()).map(|k| project(&a.basis(k))).collect();
    let projection = AlgebraHom::new_unchecked(
        a.clone(),
        algebra.clone(),
        FpMatrix::from_columns(field, d, &cols),
    )?;
    Ok(Quotient {
        algebra,
        projection,
        ideal,
    })
}

/// `(B ⊗ C) / (f(a) ⊗ 1 - 1 ⊗ g(a) : a in a basis of A)` with the quotient map
/// from `B ⊗ C`.
pub fn relative_tensor(
    b: &FiniteAlgebra,
    c: &FiniteAlgebra,
    f: &AlgebraHom,
    g: &AlgebraHom,
    limits: &Limits,
) -> Result<(Tensor, Quotient)> {
    same_field(b, c)?;
    same_field(f.source(), b)?;
    if f.source() != g.source() {
        return Err(Error::SourceMismatch);
    }
    if f.target() != b || g.target() != c {
        return Err(Error::InvalidHom(
            "relative tensor maps must land in the factors".into(),
        ));
    }
    let t = tensor(b, c, limits)?;
    let field = b.field();
    let gens: Vec<Vec<Scalar>> = (0..f.source().dim())
        .map(|i| {
            let x = f.matrix().column(i);
            let y = g.matrix().column(i);
            let l = kron(field, &x, c.one());
            let r = kron(field, b.one(), &y);
            t.algebra.sub(&l, &r)
        })
        .collect();
    let q = quotient_by_ideal(&t.algebra, &gens)?;
    Ok((t, q))
}

#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    /// Inclusion into the ambient algebra.
    pub inclusion: AlgebraHom,
    pub subspace: Subspace,
}

/// The subspace spanned by `vectors`, made into an algebra with unit `unit`
/// and structure constants induced from the ambient product, on its echelon
/// basis. Fails with `InternalClosureFailure` when the span is not closed
/// under multiplication or `unit` is not in it.
///
/// With `unit = 1_A` this is a subalgebra; with an idempotent `e` and a span of
/// the form `eA` it is the corner ring `eA` (whose inclusion is multiplicative
/// but not unital, so the inclusion is built unchecked).
pub fn span_algebra(
    ambient: &FiniteAlgebra,
    vectors: &[Vec<Scalar>],
    unit: &[Scalar],
) -> Result<Subalgebra> {
    let field = ambient.field();
    let sub = Subspace::span(field, ambient.dim(), vectors);
    let d = sub.dim();
    let basis = sub.basis().to_vec();
    let mut mul = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            let prod = ambient.mul(x, y);
            mul.extend(
                sub.coordinates(&prod)
                    .ok_or(Error::InternalClosureFailure)?,
            );
        }
    }
    let one = sub.coordinates(unit).ok_or(Error::InternalClosureFailure)?;
    let algebra = FiniteAlgebra::from_parts(field, d, mul, one, None, Validation::Skip)?;
    let inclusion =
        AlgebraHom::new_unchecked(algebra.clone(), ambient.clone(), sub.basis_matrix())?;
    Ok(Subalgebra {
        algebra,
        inclusion,
        subspace: sub,
    })
}

/// Lifts a hom `f: X -> A` whose image lies in the subalgebra to `X -> sub`.
pub fn corestrict(f: &AlgebraHom, sub: &Subalgebra) -> Result<AlgebraHom> {
    let cols = (0..f.source().dim())
        .map(|i| sub.subspace.coordinates(&f.matrix().column(i)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidHom("image leaves the subalgebra".into()))?;
    let m = FpMatrix::from_columns(f.source().field(), sub.algebra.dim(), &cols);
    AlgebraHom::new(f.source().clone(), sub.algebra.clone(), m)
}
