//! Idempotents and connected components of `Spec A`.
//!
//! Idempotents of `A` are the clopens of `Spec A`; the primitive ones index
//! its connected components. They are found two ways: by brute-force
//! enumeration, and by splitting the unit of the pearl with the orthogonal
//! idempotent systems attached to its elements.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpalgebra::{
    product, span_algebra, univariate_quotient, AlgebraHom, FiniteAlgebra, FpMatrix, Poly, Scalar,
};
use crate::limits::Limits;
use crate::pearl::{pearl, PBooleanAlgebra};

/// Coordinate vector of an element `e` with `e * e = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Idempotent(Vec<Scalar>);

impl Idempotent {
    pub fn new(a: &FiniteAlgebra, v: Vec<Scalar>) -> Result<Self> {
        if v.len() != a.dim() || a.mul(&v, &v) != v {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent(v))
    }

    /// A 0/1 vector, idempotent in any function algebra `F_p^S`.
    pub fn indicator(v: Vec<Scalar>) -> Result<Self> {
        if v.iter().any(|&c| c > 1) {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent(v))
    }

    pub fn vector(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Every idempotent of `a`, in lexicographic order of coordinates.
pub fn enumerate_idempotents(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Idempotent>> {
    let card = a.cardinality();
    if card > limits.max_elements {
        return Err(Error::EnumerationCapExceeded {
            what: format!("elements of a dim-{} algebra over {}", a.dim(), a.field()),
            size: card,
            cap: limits.max_elements,
        });
    }
    Ok(a.elements()
        .filter(|e| &a.mul(e, e) == e)
        .map(Idempotent)
        .collect())
}

/// The complete orthogonal system `e_0, ..., e_{p-1}` with `e_i` the indicator
/// of `{a = i}`: `e_i = 1 - (a - i)^(p-1)` for `i >= 1` and `e_0 = 1 - Σ e_i`.
/// Satisfies `a = Σ i e_i`.
pub fn split_by_element(b: &PBooleanAlgebra, a: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
    let alg = b.algebra();
    let f = alg.field();
    let p = alg.p();
    if a.len() != alg.dim() {
        return Err(Error::Shape("element length does not match algebra".into()));
    }
    let one = alg.one().to_vec();
    let mut system = vec![alg.zero(); p as usize];
    for i in 1..p {
        let shifted = alg.sub(a, &alg.scalar(i as Scalar));
        system[i as usize] = alg.sub(&one, &alg.power(&shifted, (p - 1) as u64));
    }
    let rest = system[1..]
        .iter()
        .fold(alg.zero(), |acc, e| alg.add(&acc, e));
    system[0] = alg.sub(&one, &rest);

    for (i, e) in system.iter().enumerate() {
        if &alg.mul(e, e) != e {
            return Err(Error::SystemValidationFailure(format!(
                "e_{i} is not idempotent"
            )));
        }
        for (j, g) in system.iter().enumerate().skip(i + 1) {
            if alg.mul(e, g).iter().any(|&c| c != 0) {
                return Err(Error::SystemValidationFailure(format!("e_{i} e_{j} != 0")));
            }
        }
    }
    let recombined = system.iter().enumerate().fold(alg.zero(), |acc, (i, e)| {
        alg.add(&acc, &alg.scale(f.reduce(i as u64), e))
    });
    if recombined != a {
        return Err(Error::SystemValidationFailure("a != Σ i e_i".into()));
    }
    Ok(system)
}

/// The `c` with `x = c * e`, if `x` is a scalar multiple of the nonzero `e`.
pub(crate) fn scalar_multiple(a: &FiniteAlgebra, e: &[Scalar], x: &[Scalar]) -> Option<Scalar> {
    let k = e.iter().position(|&c| c != 0)?;
    let f = a.field();
    let c = f.mul(x[k], f.inv(e[k])?);
    (a.scale(c, e) == x).then_some(c)
}

/// Ordering used for primitive idempotents: descending lexicographic, which
/// lists the indicator basis of `F_p^S` in basis order.
fn canonical_order(list: &mut [Idempotent]) {
    list.sort_by(|x, y| y.cmp(x));
}

/// Primitive idempotents of a p-Boolean algebra by recursive splitting.
///
/// Starting from the partition `{1}`, any block `e` on which some basis
/// element acts non-scalarly is refined by the idempotent system of that
/// element. The pivot is the first such basis element.
pub fn primitive_idempotents(b: &PBooleanAlgebra) -> Result<Vec<Idempotent>> {
    let alg = b.algebra();
    if alg.is_zero_ring() {
        return Ok(Vec::new());
    }
    let mut blocks: Vec<Vec<Scalar>> = vec![alg.one().to_vec()];
    loop {
        let mut refined = Vec::with_capacity(blocks.len());
        let mut changed = false;
        for e in &blocks {
            let pivot = (0..alg.dim())
                .find(|&j| scalar_multiple(alg, e, &alg.mul(e, &alg.basis(j))).is_none());
            match pivot {
                None => refined.push(e.clone()),
                Some(j) => {
                    changed = true;
                    for part in split_by_element(b, &alg.basis(j))? {
                        let piece = alg.mul(e, &part);
                        if piece.iter().any(|&c| c != 0) {
                            refined.push(piece);
                        }
                    }
                }
            }
        }
        blocks = refined;
        if !changed {
            break;
        }
    }
    if blocks.len() != alg.dim() {
        return Err(Error::SystemValidationFailure(format!(
            "found {} primitive idempotents in a dim-{} p-Boolean algebra",
            blocks.len(),
            alg.dim()
        )));
    }
    let mut out: Vec<Idempotent> = blocks.into_iter().map(Idempotent).collect();
    canonical_order(&mut out);
    Ok(out)
}

/// The minimal nonzero members of a family of idempotents under `e <= f iff ef = e`.
pub fn minimal_nonzero(a: &FiniteAlgebra, list: &[Idempotent]) -> Vec<Idempotent> {
    let lat = IdempotentLattice::new(a);
    let mut out: Vec<Idempotent> = list
        .iter()
        .filter(|e| !e.is_zero())
        .filter(|e| {
            !list
                .iter()
                .any(|f| !f.is_zero() && f != *e && lat.leq(f, e))
        })
        .cloned()
        .collect();
    canonical_order(&mut out);
    out
}

#[derive(Clone, Debug)]
pub struct PiZeroResult {
    pub components: Vec<Idempotent>,
    /// The corner rings `e_i A`, each with unit `e_i`.
    pub factors: Vec<FiniteAlgebra>,
    pub product: FiniteAlgebra,
    /// `A -> Π e_i A`, `x -> (e_i x)_i`.
    pub reconstruction: AlgebraHom,
}

#[derive(Debug, Clone, Serialize)]
pub struct PiZeroJson {
    pub components: Vec<Idempotent>,
    pub factor_dims: Vec<usize>,
    pub factors: Vec<FiniteAlgebra>,
    pub reconstruction: FpMatrix,
}

impl PiZeroResult {
    pub fn to_json(&self) -> PiZeroJson {
        PiZeroJson {
            components: self.components.clone(),
            factor_dims: self.factors.iter().map(|f| f.dim()).collect(),
            factors: self.factors.clone(),
            reconstruction: self.reconstruction.matrix().clone(),
        }
    }

    /// The component partition of `Spec A` as an undirected DOT graph.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  node [shape=box];");
        let _ = writeln!(s, "  spec [label=\"Spec A\", shape=ellipse];");
        for (i, (e, f)) in self.components.iter().zip(&self.factors).enumerate() {
            let _ = writeln!(
                s,
                "  c{i} [label=\"e{i} = {:?}\\ndim e{i}A = {}\"];",
                e.vector(),
                f.dim()
            );
            let _ = writeln!(s, "  spec -- c{i};");
        }
        s.push_str("}\n");
        s
    }
}

/// Connected components of `Spec A` from the primitive idempotents of `A°`.
pub fn pi_zero(a: &FiniteAlgebra) -> Result<PiZeroResult> {
    let pr = pearl(a)?;
    let comps = primitive_idempotents(pr.pearl_algebra())?;
    let mut components: Vec<Idempotent> = comps
        .iter()
        .map(|e| Idempotent(pr.inclusion().apply(e.vector())))
        .collect();
    canonical_order(&mut components);

    let mut factors = Vec::with_capacity(components.len());
    let mut subspaces = Vec::with_capacity(components.len());
    for e in &components {
        let span: Vec<Vec<Scalar>> = (0..a.dim())
            .map(|j| a.mul(e.vector(), &a.basis(j)))
            .collect();
        let corner = span_algebra(a, &span, e.vector())?;
        factors.push(corner.algebra);
        subspaces.push(corner.subspace);
    }
    let unbounded = Limits {
        max_dim: usize::MAX,
        ..Limits::default()
    };
    let mut prod = FiniteAlgebra::zero_ring(a.field());
    for f in &factors {
        prod = product(&prod, f, &unbounded)?.algebra;
    }
    let cols = (0..a.dim())
        .map(|j| {
            let x = a.basis(j);
            let mut col = Vec::with_capacity(a.dim());
            for (e, sub) in components.iter().zip(&subspaces) {
                col.extend(
                    sub.coordinates(&a.mul(e.vector(), &x))
                        .ok_or(Error::InternalClosureFailure)?,
                );
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = FpMatrix::from_columns(a.field(), prod.dim(), &cols);
    let reconstruction = AlgebraHom::new(a.clone(), prod.clone(), matrix)?;
    if !reconstruction.is_bijective() {
        return Err(Error::SystemValidationFailure(
            "reconstruction map is not bijective".into(),
        ));
    }
    Ok(PiZeroResult {
        components,
        factors,
        product: prod,
        reconstruction,
    })
}

/// Boolean lattice operations on the idempotents of one algebra; they model
/// the clopens of `Spec A`.
pub struct IdempotentLattice<'a> {
    algebra: &'a FiniteAlgebra,
}

impl<'a> IdempotentLattice<'a> {
    pub fn new(algebra: &'a FiniteAlgebra) -> Self {
        IdempotentLattice { algebra }
    }

    pub fn element(&self, v: Vec<Scalar>) -> Result<Idempotent> {
        Idempotent::new(self.algebra, v)
    }

    pub fn top(&self) -> Idempotent {
        Idempotent(self.algebra.one().to_vec())
    }

    pub fn bottom(&self) -> Idempotent {
        Idempotent(self.algebra.zero())
    }

    pub fn meet(&self, e: &Idempotent, f: &Idempotent) -> Idempotent {
        Idempotent(self.algebra.mul(&e.0, &f.0))
    }

    /// `e + f - ef`
    pub fn join(&self, e: &Idempotent, f: &Idempotent) -> Idempotent {
        let a = self.algebra;
        Idempotent(a.sub(&a.add(&e.0, &f.0), &a.mul(&e.0, &f.0)))
    }

    pub fn complement(&self, e: &Idempotent) -> Idempotent {
        let a = self.algebra;
        Idempotent(a.sub(a.one(), &e.0))
    }

    pub fn leq(&self, e: &Idempotent, f: &Idempotent) -> bool {
        self.algebra.mul(&e.0, &f.0) == e.0
    }
}

fn check_degree(f: &Poly) -> Result<usize> {
    let deg = f.degree().unwrap_or(0);
    if deg > 64 {
        return Err(Error::DimCapExceeded { dim: deg, cap: 64 });
    }
    Ok(deg)
}

/// `dim (F_p[x]/(f))°`: the number of distinct irreducible factors of `f`.
pub fn factor_count_via_pearl(f: &Poly) -> Result<usize> {
    check_degree(f)?;
    Ok(pearl(&univariate_quotient(f, "x")?)?.dim())
}

/// Irreducible factors of a squarefree monic `f`, split with `gcd(f, a - c)`
/// for a non-scalar pearl element `a` until every factor has a
/// one-dimensional pearl. Sorted by degree, then coefficients.
pub fn factor_via_pearl(f: &Poly) -> Result<Vec<Poly>> {
    check_degree(f)?;
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ZeroDegree);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.derivative();
    if d.is_zero() || f.gcd(&d).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    let mut out = Vec::new();
    split_recursive(f, &mut out)?;
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(out)
}

fn split_recursive(g: &Poly, out: &mut Vec<Poly>) -> Result<()> {
    let a = univariate_quotient(g, "x")?;
    let pr = pearl(&a)?;
    let field = g.field();
    let Some(elem) = pr
        .basis()
        .iter()
        .find(|v| scalar_multiple(&a, a.one(), v).is_none())
    else {
        out.push(g.clone());
        return Ok(());
    };
    let rep = Poly::new(field, elem.clone());
    let mut parts = 0;
    for c in field.elements() {
        let h = g.gcd(&rep.sub(&Poly::constant(field, c)));
        if h.degree().unwrap_or(0) > 0 {
            parts += 1;
            split_recursive(&h, out)?;
        }
    }
    if parts < 2 {
        return Err(Error::SystemValidationFailure(
            "non-scalar pearl element failed to split".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalgebra::{function_algebra_n, tensor, PrimeField};

    fn field(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u32, c: &[i64]) -> Poly {
        Poly::from_i64(field(p), c)
    }

    fn quot(p: u32, c: &[i64]) -> FiniteAlgebra {
        univariate_quotient(&poly(p, c), "x").unwrap()
    }

    fn pb(a: FiniteAlgebra) -> PBooleanAlgebra {
        PBooleanAlgebra::certify(a).unwrap()
    }

    fn vecs(list: &[Idempotent]) -> Vec<Vec<Scalar>> {
        list.iter().map(|e| e.vector().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let l = Limits::default();
        assert_eq!(
            enumerate_idempotents(&function_algebra_n(field(2), 2), &l)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            vecs(&enumerate_idempotents(&quot(2, &[1, 1, 1]), &l).unwrap()),
            vec![vec![0, 0], vec![1, 0]]
        );
        assert_eq!(
            vecs(&enumerate_idempotents(&quot(2, &[0, 0, 1]), &l).unwrap()),
            vec![vec![0, 0], vec![1, 0]]
        );
        let big = function_algebra_n(field(2), 13);
        assert!(matches!(
            enumerate_idempotents(&big, &l),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let b = pb(function_algebra_n(field(3), 3));
        let sys = split_by_element(&b, &[0, 1, 2]).unwrap();
        assert_eq!(sys, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let b2 = pb(function_algebra_n(field(2), 2));
        let sys = split_by_element(&b2, &[1, 0]).unwrap();
        assert_eq!(sys, vec![vec![0, 1], vec![1, 0]]);

        let b5 = pb(function_algebra_n(field(5), 2));
        let sys = split_by_element(&b5, &[0, 0]).unwrap();
        assert_eq!(sys[0], vec![1, 1]);
        assert!(sys[1..].iter().all(|e| e == &vec![0, 0]));
    }

    #[test]
    fn primitive_examples() {
        let s3 = pb(function_algebra_n(field(2), 3));
        assert_eq!(
            vecs(&primitive_idempotents(&s3).unwrap()),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );

        let a = quot(2, &[0, 1, 0, 1]);
        let p = pearl(&a).unwrap();
        assert_eq!(primitive_idempotents(p.pearl_algebra()).unwrap().len(), 2);

        let f4 = quot(2, &[1, 1, 1]);
        let ff = tensor(&f4, &f4, &Limits::default()).unwrap().algebra;
        let p = pearl(&ff).unwrap();
        assert_eq!(primitive_idempotents(p.pearl_algebra()).unwrap().len(), 2);

        assert!(
            primitive_idempotents(&pb(FiniteAlgebra::zero_ring(field(3))))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn pi_zero_examples() {
        let r = pi_zero(&quot(2, &[0, 1, 0, 1])).unwrap();
        assert_eq!(r.components.len(), 2);
        let mut dims: Vec<usize> = r.factors.iter().map(|f| f.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);

        for a in [quot(2, &[1, 1, 1]), quot(2, &[0, 0, 1])] {
            let r = pi_zero(&a).unwrap();
            assert_eq!(r.components.len(), 1);
            assert_eq!(r.factors[0].dim(), a.dim());
            assert_eq!(r.components[0].vector(), a.one());
        }

        let s = function_algebra_n(field(3), 4);
        let r = pi_zero(&s).unwrap();
        assert_eq!(r.components.len(), 4);
        assert!(r.factors.iter().all(|f| f.dim() == 1));
        assert_eq!(r.reconstruction.matrix(), &FpMatrix::identity(field(3), 4));
    }

    #[test]
    fn pi_zero_components_are_orthogonal_and_factors_connected() {
        let l = Limits::default();
        let a = quot(3, &[0, 1, 0, 2, 0, 1]); // x(x^2+1)^2 over F_3
        let r = pi_zero(&a).unwrap();
        let total = r
            .components
            .iter()
            .fold(a.zero(), |acc, e| a.add(&acc, e.vector()));
        assert_eq!(total, a.one());
        for (i, e) in r.components.iter().enumerate() {
            for f in &r.components[i + 1..] {
                assert!(a.mul(e.vector(), f.vector()).iter().all(|&c| c == 0));
            }
        }
        for f in &r.factors {
            assert_eq!(enumerate_idempotents(f, &l).unwrap().len(), 2);
        }
        assert_eq!(r.factors.iter().map(|f| f.dim()).sum::<usize>(), a.dim());
    }

    #[test]
    fn lattice_examples() {
        let s = function_algebra_n(field(2), 2);
        let lat = IdempotentLattice::new(&s);
        let e = lat.element(vec![1, 0]).unwrap();
        let f = lat.element(vec![0, 1]).unwrap();
        assert_eq!(lat.complement(&lat.complement(&e)), e);
        assert_eq!(lat.join(&e, &f).vector(), &[1, 1]);
        assert!(lat.leq(&e, &lat.top()));
        assert!(lat.leq(&lat.bottom(), &e));
        assert_eq!(lat.element(vec![1, 0]).unwrap(), e);
        let a = quot(2, &[0, 0, 1]);
        assert_eq!(
            IdempotentLattice::new(&a).element(vec![0, 1]).unwrap_err(),
            Error::NotIdempotent
        );
    }

    #[test]
    fn join_generates_the_ideal_of_both() {
        // For idempotents a, b the ideal (a, b) equals the principal ideal (a + b - ab).
        let l = Limits::default();
        let f4 = quot(2, &[1, 1, 1]);
        let alg = product(
            &product(&f4, &quot(2, &[0, 0, 1]), &l).unwrap().algebra,
            &function_algebra_n(field(2), 2),
            &l,
        )
        .unwrap()
        .algebra;
        let lat = IdempotentLattice::new(&alg);
        let idem = enumerate_idempotents(&alg, &l).unwrap();
        for a in &idem {
            for b in &idem {
                let j = lat.join(a, b);
                let both = crate::fpalgebra::ideal_closure(
                    &alg,
                    &[a.vector().to_vec(), b.vector().to_vec()],
                );
                let single = crate::fpalgebra::ideal_closure(&alg, &[j.vector().to_vec()]);
                assert_eq!(both, single);
            }
        }
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(
            factor_count_via_pearl(&poly(2, &[1, 1, 0, 1, 1])).unwrap(),
            2
        );
        assert_eq!(factor_count_via_pearl(&poly(2, &[1, 1, 1])).unwrap(), 1);
        assert_eq!(factor_count_via_pearl(&poly(3, &[-1, 0, 1])).unwrap(), 2);
        assert_eq!(
            factor_count_via_pearl(&poly(3, &[1, 0, 2])).unwrap_err(),
            Error::NotMonic
        );
    }

    #[test]
    fn factor_examples() {
        let fs = factor_via_pearl(&poly(2, &[0, 1, 1])).unwrap();
        assert_eq!(fs, vec![poly(2, &[0, 1]), poly(2, &[1, 1])]);

        let irr = poly(2, &[1, 1, 0, 0, 1]); // x^4+x+1
        assert_eq!(factor_via_pearl(&irr).unwrap(), vec![irr.clone()]);

        let fs = factor_via_pearl(&poly(3, &[0, -1, 0, 1])).unwrap();
        assert_eq!(
            fs,
            vec![poly(3, &[0, 1]), poly(3, &[1, 1]), poly(3, &[2, 1])]
        );

        assert_eq!(
            factor_via_pearl(&poly(2, &[1, 0, 1])).unwrap_err(),
            Error::NotSquarefree
        );
        assert_eq!(
            factor_via_pearl(&poly(3, &[1, 0, 0, 1])).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn factor_product_recovers_input() {
        // (x^2+1)(x^2+x+2)(x+1) over F_3, all irreducible
        let f = poly(3, &[1, 0, 1])
            .mul(&poly(3, &[2, 1, 1]))
            .mul(&poly(3, &[1, 1]));
        let fs = factor_via_pearl(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(
            fs.iter()
                .fold(Poly::constant(field(3), 1), |acc, g| acc.mul(g)),
            f
        );
    }
}
