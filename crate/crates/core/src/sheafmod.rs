//! Modules over `F_p^S` as S-indexed families of vector spaces.
//!
//! A module is given by its projector family `ρ_s = ρ(χ_s)`; a sheaf by a
//! basis of each stalk inside a common total space. Tensor products over
//! `F_p^S` are the image of `Σ ρ_s ⊗ σ_s` inside `M ⊗ N`.

use serde::Serialize;

use crate::duality::FiniteSetObj;
use crate::error::{Error, Result};
use crate::fpalgebra::{function_algebra, FiniteAlgebra, FpMatrix, PrimeField, Scalar, Subspace};

/// The point set of `a` if it has the structure constants of `F_p^S`.
fn function_algebra_points(a: &FiniteAlgebra) -> Result<FiniteSetObj> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let want = (i == j && j == k) as u32;
                if a.structure_constant(i, j, k) as u32 != want {
                    return Err(Error::InvalidModule(format!("b{i} b{j} is not diagonal")));
                }
            }
        }
    }
    if a.one().iter().any(|&c| c != 1) {
        return Err(Error::InvalidModule(
            "unit is not the all-ones vector".into(),
        ));
    }
    FiniteSetObj::new((0..n).map(|i| a.label(i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSModule {
    algebra: FiniteAlgebra,
    points: FiniteSetObj,
    dim: usize,
    projectors: Vec<FpMatrix>,
}

impl CSModule {
    /// Checks `ρ_s² = ρ_s`, `ρ_s ρ_t = 0` for `s != t`, and `Σ ρ_s = I`.
    pub fn new(algebra: FiniteAlgebra, dim: usize, projectors: Vec<FpMatrix>) -> Result<Self> {
        let points = function_algebra_points(&algebra)?;
        let field = algebra.field();
        if projectors.len() != points.len() {
            return Err(Error::InvalidModule(format!(
                "{} projectors for {} points",
                projectors.len(),
                points.len()
            )));
        }
        for (s, r) in projectors.iter().enumerate() {
            if r.rows() != dim || r.cols() != dim || r.field() != field {
                return Err(Error::InvalidModule(format!(
                    "projector {s} is not a {dim}x{dim} matrix over {field}"
                )));
            }
            if r.mul(r) != *r {
                return Err(Error::InvalidModule(format!(
                    "projector {s} is not idempotent"
                )));
            }
            for (t, q) in projectors.iter().enumerate().skip(s + 1) {
                if !r.mul(q).is_zero() || !q.mul(r).is_zero() {
                    return Err(Error::InvalidModule(format!(
                        "projectors {s} and {t} are not orthogonal"
                    )));
                }
            }
        }
        let sum = projectors
            .iter()
            .fold(FpMatrix::zeros(field, dim, dim), |acc, r| acc.add(r));
        if sum != FpMatrix::identity(field, dim) {
            return Err(Error::InvalidModule(
                "projectors do not sum to the identity".into(),
            ));
        }
        Ok(CSModule {
            algebra,
            points,
            dim,
            projectors,
        })
    }

    /// `F_p^S` acting on itself.
    pub fn free(field: PrimeField, s: &FiniteSetObj) -> Result<Self> {
        let algebra = function_algebra(field, s.elements())?;
        let n = s.len();
        let projectors = (0..n)
            .map(|i| {
                let mut m = FpMatrix::zeros(field, n, n);
                m.set(i, i, 1);
                m
            })
            .collect();
        CSModule::new(algebra, n, projectors)
    }

    pub fn zero(field: PrimeField, s: &FiniteSetObj) -> Result<Self> {
        let algebra = function_algebra(field, s.elements())?;
        CSModule::new(algebra, 0, vec![FpMatrix::zeros(field, 0, 0); s.len()])
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn points(&self) -> &FiniteSetObj {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projector(&self, s: usize) -> &FpMatrix {
        &self.projectors[s]
    }

    pub fn projectors(&self) -> &[FpMatrix] {
        &self.projectors
    }

    /// `ρ(Σ c_s χ_s) = Σ c_s ρ_s`.
    pub fn action(&self, element: &[Scalar]) -> Result<FpMatrix> {
        if element.len() != self.points.len() {
            return Err(Error::Shape(
                "element length does not match the point count".into(),
            ));
        }
        let f = self.field();
        let mut out = FpMatrix::zeros(f, self.dim, self.dim);
        for (s, &c) in element.iter().enumerate() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let v = f.add(out.get(i, j), f.mul(c, self.projectors[s].get(i, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn stalk_dims(&self) -> Vec<usize> {
        self.projectors.iter().map(|r| r.rank()).collect()
    }

    /// `dim χ_U M`
    pub fn sections_dim(&self, u: &[usize]) -> Result<usize> {
        let u = self.check_subset(u)?;
        Ok(u.iter().map(|&s| self.projectors[s].rank()).sum())
    }

    fn check_subset(&self, u: &[usize]) -> Result<Vec<usize>> {
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        if let Some(&s) = u.iter().find(|&&s| s >= self.points.len()) {
            return Err(Error::InvalidModule(format!(
                "point index {s} outside a {}-point set",
                self.points.len()
            )));
        }
        Ok(u)
    }
}

#[derive(Serialize)]
pub struct CSModuleJson {
    pub p: u32,
    pub algebra_hash: String,
    pub points: FiniteSetObj,
    pub module_dim: usize,
    pub projectors: Vec<FpMatrix>,
}

impl CSModule {
    pub fn to_json(&self) -> CSModuleJson {
        CSModuleJson {
            p: self.algebra.p(),
            algebra_hash: self.algebra.content_hash(),
            points: self.points.clone(),
            module_dim: self.dim,
            projectors: self.projectors.clone(),
        }
    }
}

/// A stalk basis per point, as the columns of `stalks[s]` in a common space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafOnFiniteSet {
    field: PrimeField,
    points: FiniteSetObj,
    total_dim: usize,
    stalks: Vec<FpMatrix>,
}

impl SheafOnFiniteSet {
    /// The stalk columns must together form a basis of the total space.
    pub fn new(
        field: PrimeField,
        points: FiniteSetObj,
        total_dim: usize,
        stalks: Vec<FpMatrix>,
    ) -> Result<Self> {
        if stalks.len() != points.len() {
            return Err(Error::InvalidSheaf(format!(
                "{} stalks for {} points",
                stalks.len(),
                points.len()
            )));
        }
        if stalks
            .iter()
            .any(|d| d.rows() != total_dim || d.field() != field)
        {
            return Err(Error::InvalidSheaf(format!(
                "stalk bases must live in F_{}^{total_dim}",
                field.p()
            )));
        }
        let sum: usize = stalks.iter().map(|d| d.cols()).sum();
        if sum != total_dim {
            return Err(Error::InvalidSheaf(format!(
                "stalk dims sum to {sum}, total is {total_dim}"
            )));
        }
        if joined(field, total_dim, &stalks).rank() != total_dim {
            return Err(Error::InvalidSheaf(
                "stalk subspaces are not independent".into(),
            ));
        }
        Ok(SheafOnFiniteSet {
            field,
            points,
            total_dim,
            stalks,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn points(&self) -> &FiniteSetObj {
        &self.points
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn stalk(&self, s: usize) -> &FpMatrix {
        &self.stalks[s]
    }

    pub fn stalk_dims(&self) -> Vec<usize> {
        self.stalks.iter().map(|d| d.cols()).collect()
    }

    /// `dim F(U) = Σ_{s ∈ U} dim F_s`.
    pub fn sections_dim(&self, u: &[usize]) -> usize {
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        u.iter()
            .filter_map(|&s| self.stalks.get(s))
            .map(|d| d.cols())
            .sum()
    }

    /// Same stalk subspaces, bases allowed to differ.
    pub fn equivalent(&self, other: &SheafOnFiniteSet) -> bool {
        self.field == other.field
            && self.points == other.points
            && self.total_dim == other.total_dim
            && self
                .stalks
                .iter()
                .zip(&other.stalks)
                .all(|(a, b)| Subspace::column_space(a) == Subspace::column_space(b))
    }
}

#[derive(Serialize)]
pub struct SheafJson {
    pub p: u32,
    pub points: FiniteSetObj,
    pub total_dim: usize,
    pub stalk_dims: Vec<usize>,
    /// Stalk basis vectors, one list per point.
    pub bases: Vec<Vec<Vec<Scalar>>>,
}

impl SheafOnFiniteSet {
    pub fn to_json(&self) -> SheafJson {
        SheafJson {
            p: self.field.p(),
            points: self.points.clone(),
            total_dim: self.total_dim,
            stalk_dims: self.stalk_dims(),
            bases: self.stalks.iter().map(|d| d.columns()).collect(),
        }
    }
}

fn joined(field: PrimeField, rows: usize, blocks: &[FpMatrix]) -> FpMatrix {
    let cols: Vec<Vec<Scalar>> = blocks.iter().flat_map(|d| d.columns()).collect();
    FpMatrix::from_columns(field, rows, &cols)
}

/// Stalk at `s` is `im ρ_s`, with its reduced row echelon basis.
pub fn module_to_sheaf(m: &CSModule) -> SheafOnFiniteSet {
    let field = m.field();
    let stalks = m
        .projectors
        .iter()
        .map(|r| FpMatrix::from_columns(field, m.dim, Subspace::column_space(r).basis()))
        .collect();
    SheafOnFiniteSet {
        field,
        points: m.points.clone(),
        total_dim: m.dim,
        stalks,
    }
}

/// `ρ_s = E P_s E⁻¹` with `E` the joined stalk bases and `P_s` the block selector.
pub fn sheaf_to_module(f: &SheafOnFiniteSet) -> Result<CSModule> {
    let field = f.field;
    let n = f.total_dim;
    let e = joined(field, n, &f.stalks);
    let e_inv = e
        .inverse()
        .ok_or_else(|| Error::InvalidSheaf("stalk bases are not independent".into()))?;
    let mut offset = 0;
    let projectors = f
        .stalks
        .iter()
        .map(|d| {
            let mut sel = FpMatrix::zeros(field, n, n);
            for k in offset..offset + d.cols() {
                sel.set(k, k, 1);
            }
            offset += d.cols();
            e.mul(&sel).mul(&e_inv)
        })
        .collect();
    CSModule::new(function_algebra(field, f.points.elements())?, n, projectors)
}

/// Restriction of the commuting projectors to their joint invariant subspace
/// `im P`, in the reduced basis of `im P`.
fn restrict_operators(
    field: PrimeField,
    p: &FpMatrix,
    ops: &[&FpMatrix],
) -> Result<(Subspace, Vec<FpMatrix>)> {
    let image = Subspace::column_space(p);
    let r = image.dim();
    let restricted = ops
        .iter()
        .map(|op| {
            let cols = image
                .basis()
                .iter()
                .map(|b| {
                    image
                        .coordinates(&op.apply(b))
                        .ok_or(Error::InternalClosureFailure)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FpMatrix::from_columns(field, r, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((image, restricted))
}

/// `χ_U M` as a module over `F_p^U`. `u` lists point indices.
pub fn restrict_to_clopen(m: &CSModule, u: &[usize]) -> Result<CSModule> {
    let u = m.check_subset(u)?;
    let field = m.field();
    let p = u
        .iter()
        .fold(FpMatrix::zeros(field, m.dim, m.dim), |acc, &s| {
            acc.add(&m.projectors[s])
        });
    let ops: Vec<&FpMatrix> = u.iter().map(|&s| &m.projectors[s]).collect();
    let (image, projectors) = restrict_operators(field, &p, &ops)?;
    let labels: Vec<String> = u.iter().map(|&s| m.points.label(s).to_string()).collect();
    CSModule::new(function_algebra(field, &labels)?, image.dim(), projectors)
}

fn same_base(m: &CSModule, n: &CSModule) -> Result<()> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// The tensor of `M` and `N` over `F_p^S`, with the subspace of `M ⊗ N` it occupies.
fn tensor_with_image(m: &CSModule, n: &CSModule) -> Result<(CSModule, Subspace)> {
    same_base(m, n)?;
    let field = m.field();
    let kron: Vec<FpMatrix> = m
        .projectors
        .iter()
        .zip(&n.projectors)
        .map(|(r, s)| r.kronecker(s))
        .collect();
    let total = m.dim * n.dim;
    let p = kron
        .iter()
        .fold(FpMatrix::zeros(field, total, total), |acc, k| acc.add(k));
    let (image, projectors) = restrict_operators(field, &p, &kron.iter().collect::<Vec<_>>())?;
    Ok((
        CSModule::new(m.algebra.clone(), image.dim(), projectors)?,
        image,
    ))
}

/// `M ⊗_{F_p^S} N`, stalkwise `M_s ⊗ N_s`.
pub fn tensor_modules(m: &CSModule, n: &CSModule) -> Result<CSModule> {
    Ok(tensor_with_image(m, n)?.0)
}

/// An `F_p^S`-linear map, `f ρ_s = ρ'_s f` for every point.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: CSModule,
    target: CSModule,
    matrix: FpMatrix,
}

impl ModuleHom {
    pub fn new(source: CSModule, target: CSModule, matrix: FpMatrix) -> Result<Self> {
        same_base(&source, &target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::InvalidModule(
                "module map has the wrong shape".into(),
            ));
        }
        for (r, q) in source.projectors.iter().zip(&target.projectors) {
            if matrix.mul(r) != q.mul(&matrix) {
                return Err(Error::InvalidModule(
                    "map does not commute with the action".into(),
                ));
            }
        }
        Ok(ModuleHom {
            source,
            target,
            matrix,
        })
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    /// `f ⊗ id_N: M ⊗ N -> M' ⊗ N`.
    pub fn tensor_right(&self, n: &CSModule) -> Result<ModuleHom> {
        let (src, src_image) = tensor_with_image(&self.source, n)?;
        let (tgt, tgt_image) = tensor_with_image(&self.target, n)?;
        let lifted = self.matrix.kronecker(&FpMatrix::identity(n.field(), n.dim));
        let cols = src_image
            .basis()
            .iter()
            .map(|b| {
                tgt_image
                    .coordinates(&lifted.apply(b))
                    .ok_or(Error::InternalClosureFailure)
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleHom::new(
            src,
            tgt,
            FpMatrix::from_columns(n.field(), tgt_image.dim(), &cols),
        )
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MonoidalVerdict {
    pub holds: bool,
    pub stalks_multiply: bool,
    pub symmetric: bool,
    pub restriction_commutes: bool,
    pub clopens_checked: usize,
    pub counterexamples: Vec<String>,
}

/// Stalk dimensions of `M ⊗ N` are pointwise products, `M ⊗ N` and `N ⊗ M`
/// agree, and `χ_U (M ⊗ N) = χ_U M ⊗ χ_U N` on every listed clopen.
pub fn check_monoidal_equivalence(
    m: &CSModule,
    n: &CSModule,
    clopens: &[Vec<usize>],
) -> Result<MonoidalVerdict> {
    let mut v = MonoidalVerdict {
        stalks_multiply: true,
        symmetric: true,
        restriction_commutes: true,
        ..Default::default()
    };
    let mn = tensor_modules(m, n)?;
    let nm = tensor_modules(n, m)?;
    let products: Vec<usize> = m
        .stalk_dims()
        .iter()
        .zip(n.stalk_dims())
        .map(|(a, b)| a * b)
        .collect();
    let got = module_to_sheaf(&mn).stalk_dims();
    if got != products {
        v.stalks_multiply = false;
        v.counterexamples
            .push(format!("stalks of M⊗N are {got:?}, expected {products:?}"));
    }
    if module_to_sheaf(&nm).stalk_dims() != got {
        v.symmetric = false;
        v.counterexamples
            .push("M⊗N and N⊗M have different stalks".into());
    }
    for u in clopens {
        v.clopens_checked += 1;
        let left = restrict_to_clopen(&mn, u)?;
        let right = tensor_modules(&restrict_to_clopen(m, u)?, &restrict_to_clopen(n, u)?)?;
        if left.algebra != right.algebra || left.stalk_dims() != right.stalk_dims() {
            v.restriction_commutes = false;
            v.counterexamples
                .push(format!("restriction to {u:?} does not commute with tensor"));
        }
    }
    v.holds = v.stalks_multiply && v.symmetric && v.restriction_commutes;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn ab() -> FiniteSetObj {
        FiniteSetObj::new(vec!["a".into(), "b".into()]).unwrap()
    }

    fn diag(field: PrimeField, d: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x as Scalar);
        }
        m
    }

    fn module(field: PrimeField, dims: &[usize]) -> CSModule {
        let s = FiniteSetObj::standard(dims.len());
        let total: usize = dims.iter().sum();
        let mut offset = 0;
        let stalks = dims
            .iter()
            .map(|&d| {
                let cols: Vec<Vec<Scalar>> = (offset..offset + d)
                    .map(|k| (0..total).map(|i| (i == k) as Scalar).collect())
                    .collect();
                offset += d;
                FpMatrix::from_columns(field, total, &cols)
            })
            .collect();
        sheaf_to_module(&SheafOnFiniteSet::new(field, s, total, stalks).unwrap()).unwrap()
    }

    fn diag_example() -> CSModule {
        let k = f(2);
        CSModule::new(
            function_algebra(k, ab().elements()).unwrap(),
            3,
            vec![diag(k, &[1, 1, 0]), diag(k, &[0, 0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn validator_rejects_bad_projectors() {
        let k = f(3);
        let alg = function_algebra(k, ab().elements()).unwrap();
        let bad = |ps: Vec<FpMatrix>| CSModule::new(alg.clone(), 2, ps).unwrap_err();
        assert!(matches!(
            bad(vec![diag(k, &[2, 0]), diag(k, &[0, 1])]),
            Error::InvalidModule(_)
        ));
        assert!(matches!(
            bad(vec![diag(k, &[1, 0]), diag(k, &[1, 1])]),
            Error::InvalidModule(_)
        ));
        assert!(matches!(
            bad(vec![diag(k, &[1, 0]), diag(k, &[0, 0])]),
            Error::InvalidModule(_)
        ));
        let poly = crate::fpalgebra::univariate_quotient(
            &crate::fpalgebra::Poly::from_i64(k, &[0, 0, 1]),
            "x",
        )
        .unwrap();
        assert!(matches!(
            CSModule::new(poly, 1, vec![diag(k, &[1]); 2]),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn module_to_sheaf_examples() {
        assert_eq!(module_to_sheaf(&diag_example()).stalk_dims(), vec![2, 1]);
        let free = CSModule::free(f(3), &FiniteSetObj::standard(3)).unwrap();
        assert_eq!(module_to_sheaf(&free).stalk_dims(), vec![1, 1, 1]);
        let zero = CSModule::zero(f(3), &FiniteSetObj::standard(2)).unwrap();
        assert_eq!(module_to_sheaf(&zero).stalk_dims(), vec![0, 0]);
    }

    #[test]
    fn sheaf_to_module_examples() {
        let m = diag_example();
        assert_eq!(sheaf_to_module(&module_to_sheaf(&m)).unwrap(), m);

        let k = f(5);
        let single = FiniteSetObj::standard(1);
        let sheaf = SheafOnFiniteSet::new(k, single, 2, vec![FpMatrix::identity(k, 2)]).unwrap();
        assert_eq!(
            sheaf_to_module(&sheaf).unwrap().projector(0),
            &FpMatrix::identity(k, 2)
        );

        let m = module(f(2), &[0, 2]);
        assert!(m.projector(0).is_zero());
    }

    #[test]
    fn round_trip_non_diagonal() {
        let k = f(3);
        // stalks spanned by (1,1,0), (0,1,1) and (1,0,0)
        let a = FpMatrix::from_columns(k, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = FpMatrix::from_columns(k, 3, &[vec![1, 0, 0]]);
        let sheaf = SheafOnFiniteSet::new(k, ab(), 3, vec![a, b]).unwrap();
        let m = sheaf_to_module(&sheaf).unwrap();
        assert!(module_to_sheaf(&m).equivalent(&sheaf));
        assert_eq!(sheaf_to_module(&module_to_sheaf(&m)).unwrap(), m);

        let dependent = FpMatrix::from_columns(k, 3, &[vec![1, 1, 0], vec![2, 2, 0]]);
        let err = SheafOnFiniteSet::new(
            k,
            ab(),
            3,
            vec![dependent, FpMatrix::from_columns(k, 3, &[vec![1, 0, 0]])],
        );
        assert!(matches!(err, Err(Error::InvalidSheaf(_))));
    }

    #[test]
    fn restriction_examples() {
        let m = diag_example();
        assert_eq!(restrict_to_clopen(&m, &[0, 1]).unwrap(), m);
        let empty = restrict_to_clopen(&m, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        assert!(empty.algebra().is_zero_ring());
        let a = restrict_to_clopen(&m, &[0]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.points().elements(), &["a"]);
    }

    #[test]
    fn tensor_examples() {
        let k = f(3);
        let m = module(k, &[2, 1]);
        let n = module(k, &[1, 2]);
        let t = tensor_modules(&m, &n).unwrap();
        assert_eq!(t.stalk_dims(), vec![2, 2]);
        assert_eq!(t.dim(), 4);

        let free = CSModule::free(k, &FiniteSetObj::standard(2)).unwrap();
        assert_eq!(
            tensor_modules(&m, &free).unwrap().stalk_dims(),
            m.stalk_dims()
        );
        assert_eq!(tensor_modules(&m, &module(k, &[0, 0])).unwrap().dim(), 0);

        let other = CSModule::free(f(2), &FiniteSetObj::standard(2)).unwrap();
        assert_eq!(
            tensor_modules(&m, &other).unwrap_err(),
            Error::AlgebraMismatch
        );
    }

    #[test]
    fn monoidal_examples() {
        let k = f(2);
        let all: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 1]];
        let v = check_monoidal_equivalence(&module(k, &[2, 1]), &module(k, &[1, 2]), &all).unwrap();
        assert!(v.holds, "{:?}", v.counterexamples);

        let r = module(k, &[2, 2, 2]);
        let s = module(k, &[3, 3, 3]);
        assert_eq!(tensor_modules(&r, &s).unwrap().stalk_dims(), vec![6, 6, 6]);
        let v = check_monoidal_equivalence(&r, &s, &[vec![]]).unwrap();
        assert!(v.holds);
        assert_eq!(
            restrict_to_clopen(&tensor_modules(&r, &s).unwrap(), &[])
                .unwrap()
                .dim(),
            0
        );
    }

    #[test]
    fn additivity_on_disjoint_clopens() {
        let m = diag_example();
        let sheaf = module_to_sheaf(&m);
        assert_eq!(
            sheaf.sections_dim(&[0, 1]),
            sheaf.sections_dim(&[0]) + sheaf.sections_dim(&[1])
        );
        assert_eq!(m.sections_dim(&[0, 1]).unwrap(), 3);
    }

    #[test]
    fn tensoring_preserves_injective_maps() {
        let k = f(3);
        let small = module(k, &[1, 1]);
        let big = module(k, &[2, 1]);
        // include stalk a as the first basis vector, stalk b as the third
        let inc = FpMatrix::from_columns(k, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        let hom = ModuleHom::new(small, big, inc).unwrap();
        assert!(hom.is_injective());
        for n in [module(k, &[1, 2]), module(k, &[0, 3]), module(k, &[2, 0])] {
            assert!(hom.tensor_right(&n).unwrap().is_injective());
        }
        let wrong = FpMatrix::from_columns(k, 3, &[vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(ModuleHom::new(module(k, &[1, 1]), module(k, &[2, 1]), wrong).is_err());
    }

    #[test]
    fn action_is_linear_in_the_element() {
        let m = diag_example();
        assert_eq!(m.action(&[1, 1]).unwrap(), FpMatrix::identity(f(2), 3));
        assert_eq!(m.action(&[1, 0]).unwrap(), *m.projector(0));
    }
}
