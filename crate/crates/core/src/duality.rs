//! Stone duality between finite sets and finite p-Boolean algebras.
//!
//! `S -> F_p^S` and `B -> Spec B` are mutually inverse contravariant
//! functors. Points of `Spec B` are primitive idempotents, each carrying its
//! evaluation hom `B -> F_p`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fpalgebra::{
    base_field, enumerate_homs, function_algebra, AlgebraHom, FiniteAlgebra, FpMatrix, PrimeField,
    Scalar,
};
use crate::limits::Limits;
use crate::pearl::PBooleanAlgebra;
use crate::spectrum::{primitive_idempotents, scalar_multiple, Idempotent};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FiniteSetObj {
    elements: Vec<String>,
}

impl FiniteSetObj {
    pub fn new(elements: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateLabel(e.clone()));
            }
        }
        Ok(FiniteSetObj { elements })
    }

    /// `{s0, ..., s(n-1)}`
    pub fn standard(n: usize) -> Self {
        FiniteSetObj {
            elements: (0..n).map(|i| format!("s{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

/// A total function between finite sets, stored by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMap {
    source: FiniteSetObj,
    target: FiniteSetObj,
    assignment: Vec<usize>,
}

impl SetMap {
    pub fn new(source: FiniteSetObj, target: FiniteSetObj, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidSetMap(format!(
                "assignment has {} entries for a {}-element source",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&t) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::InvalidSetMap(format!(
                "image index {t} outside a {}-element target",
                target.len()
            )));
        }
        Ok(SetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn from_labels(
        source: FiniteSetObj,
        target: FiniteSetObj,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (s, t) in pairs {
            let i = source
                .index_of(s)
                .ok_or_else(|| Error::InvalidSetMap(format!("unknown source label {s}")))?;
            let j = target
                .index_of(t)
                .ok_or_else(|| Error::InvalidSetMap(format!("unknown target label {t}")))?;
            assignment[i] = Some(j);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::InvalidSetMap(format!("{} has no image", source.label(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        SetMap::new(source, target, assignment)
    }

    pub fn identity(s: &FiniteSetObj) -> Self {
        SetMap {
            source: s.clone(),
            target: s.clone(),
            assignment: (0..s.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSetObj {
        &self.source
    }

    pub fn target(&self) -> &FiniteSetObj {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &SetMap) -> Result<SetMap> {
        if first.target != self.source {
            return Err(Error::InvalidSetMap(
                "composition of non-composable maps".into(),
            ));
        }
        let assignment = first
            .assignment
            .iter()
            .map(|&i| self.assignment[i])
            .collect();
        Ok(SetMap {
            source: first.source.clone(),
            target: self.target.clone(),
            assignment,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.assignment.iter().all(|t| seen.insert(*t))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<usize> = self.assignment.iter().copied().collect();
        hit.len() == self.target.len()
    }

    /// Every map `s -> t`, each assignment read as a base-`|t|` numeral with
    /// the last source element least significant.
    pub fn all_maps(s: &FiniteSetObj, t: &FiniteSetObj) -> Vec<SetMap> {
        let (m, n) = (s.len(), t.len());
        if n == 0 {
            return if m == 0 {
                vec![SetMap::identity(s)]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        let mut a = vec![0usize; m];
        loop {
            out.push(SetMap {
                source: s.clone(),
                target: t.clone(),
                assignment: a.clone(),
            });
            let mut k = m;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                a[k] += 1;
                if a[k] < n {
                    break;
                }
                a[k] = 0;
            }
        }
    }

    /// Bipartite DOT graph with source elements on the left.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=LR;");
        let _ = writeln!(s, "  subgraph cluster_source {{ label=\"source\";");
        for (i, l) in self.source.elements.iter().enumerate() {
            let _ = writeln!(s, "    s{i} [label=\"{}\"];", l.replace('"', "'"));
        }
        let _ = writeln!(s, "  }}");
        let _ = writeln!(s, "  subgraph cluster_target {{ label=\"target\";");
        for (j, l) in self.target.elements.iter().enumerate() {
            let _ = writeln!(s, "    t{j} [label=\"{}\"];", l.replace('"', "'"));
        }
        let _ = writeln!(s, "  }}");
        for (i, &j) in self.assignment.iter().enumerate() {
            let _ = writeln!(s, "  s{i} -> t{j};");
        }
        s.push_str("}\n");
        s
    }
}

impl Serialize for SetMap {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            source: &'a [String],
            target: &'a [String],
            assignment: Vec<(&'a str, &'a str)>,
        }
        Repr {
            source: &self.source.elements,
            target: &self.target.elements,
            assignment: self
                .assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.source.label(i), self.target.label(j)))
                .collect(),
        }
        .serialize(ser)
    }
}

fn functions_on(field: PrimeField, s: &FiniteSetObj) -> FiniteAlgebra {
    function_algebra(field, s.elements()).expect("labels of a FiniteSetObj are distinct")
}

/// `F_p^S` with basis labelled by `S`.
pub fn dual_of_set(field: PrimeField, s: &FiniteSetObj) -> PBooleanAlgebra {
    PBooleanAlgebra::certify(functions_on(field, s)).expect("function algebras are p-Boolean")
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub points: FiniteSetObj,
    pub idempotents: Vec<Idempotent>,
    /// `φ_e: B -> F_p`, `x -> c` where `e x = c e`.
    pub point_homs: Vec<AlgebraHom>,
}

impl Spectrum {
    pub fn point_of_idempotent(&self, e: &Idempotent) -> Option<usize> {
        self.idempotents.iter().position(|f| f == e)
    }
}

/// Points of `Spec B`. A point whose idempotent is a basis vector takes that
/// basis label; otherwise it is named `pt{i}`.
pub fn spectrum_of_p_boolean(b: &PBooleanAlgebra) -> Result<Spectrum> {
    let alg = b.algebra();
    let idempotents = primitive_idempotents(b)?;
    let k = base_field(alg.field());
    let mut point_homs = Vec::with_capacity(idempotents.len());
    for e in &idempotents {
        let row = (0..alg.dim())
            .map(|j| {
                scalar_multiple(alg, e.vector(), &alg.mul(e.vector(), &alg.basis(j)))
                    .ok_or(Error::ScalarResolutionFailure)
            })
            .collect::<Result<Vec<Scalar>>>()?;
        let matrix = FpMatrix::from_rows(alg.field(), alg.dim(), &[row]);
        point_homs.push(AlgebraHom::new(alg.clone(), k.clone(), matrix)?);
    }
    let named: Vec<String> = idempotents
        .iter()
        .enumerate()
        .map(|(i, e)| {
            basis_index(e.vector())
                .map(|j| alg.label(j))
                .unwrap_or_else(|| format!("pt{i}"))
        })
        .collect();
    let points = FiniteSetObj::new(named).unwrap_or_else(|_| FiniteSetObj {
        elements: (0..idempotents.len()).map(|i| format!("pt{i}")).collect(),
    });
    Ok(Spectrum {
        points,
        idempotents,
        point_homs,
    })
}

fn basis_index(v: &[Scalar]) -> Option<usize> {
    let mut nz = v.iter().enumerate().filter(|(_, &c)| c != 0);
    match (nz.next(), nz.next()) {
        (Some((j, 1)), None) => Some(j),
        _ => None,
    }
}

/// Matrix of `f^*: F_p^T -> F_p^S`: entry `(s, t)` is 1 iff `f(s) = t`.
pub fn dual_matrix(field: PrimeField, f: &SetMap) -> FpMatrix {
    let mut m = FpMatrix::zeros(field, f.source.len(), f.target.len());
    for (s, &t) in f.assignment.iter().enumerate() {
        m.set(s, t, 1);
    }
    m
}

/// Precomposition with `f`, sending the indicator of `t` to the indicator of `f⁻¹(t)`.
pub fn dualize_set_map(field: PrimeField, f: &SetMap) -> AlgebraHom {
    let src = functions_on(field, &f.target);
    let tgt = functions_on(field, &f.source);
    AlgebraHom::new_unchecked(src, tgt, dual_matrix(field, f))
        .expect("shape matches by construction")
}

/// `Spec C -> Spec B` for `g: B -> C`: the point `e` of `C` goes to the
/// unique primitive `e'` of `B` with `e g(e') = e`.
pub fn dualize_alg_hom(g: &AlgebraHom) -> Result<SetMap> {
    let b = PBooleanAlgebra::certify(g.source().clone())?;
    let c = PBooleanAlgebra::certify(g.target().clone())?;
    let spec_b = spectrum_of_p_boolean(&b)?;
    let spec_c = spectrum_of_p_boolean(&c)?;
    let images: Vec<Vec<Scalar>> = spec_b
        .idempotents
        .iter()
        .map(|e| g.apply(e.vector()))
        .collect();
    let calg = c.algebra();
    let assignment = spec_c
        .idempotents
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut hits = images
                .iter()
                .enumerate()
                .filter(|(_, ge)| calg.mul(e.vector(), ge) == e.vector());
            match (hits.next(), hits.next()) {
                (Some((j, _)), None) => Ok(j),
                _ => Err(Error::NoPreimagePoint(i)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SetMap::new(spec_c.points, spec_b.points, assignment)
}

/// `B -> F_p^{Spec B}`, `x -> (φ_e(x))_e`.
pub fn evaluation_map(b: &PBooleanAlgebra, spec: &Spectrum) -> Result<AlgebraHom> {
    let alg = b.algebra();
    let field = alg.field();
    let target = functions_on(field, &spec.points);
    let rows: Vec<Vec<Scalar>> = spec
        .point_homs
        .iter()
        .map(|h| h.matrix().row(0).to_vec())
        .collect();
    let matrix = FpMatrix::from_rows(field, alg.dim(), &rows);
    AlgebraHom::new(alg.clone(), target, matrix)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DualityVerdict {
    pub holds: bool,
    pub points_bijective: bool,
    pub evaluation_iso: bool,
    pub naturality: bool,
    pub counterexamples: Vec<String>,
}

/// `σ_S: S -> Spec F_p^S`, the label `s` going to the point carried by its indicator.
fn canonical_points(field: PrimeField, s: &FiniteSetObj) -> Result<(Spectrum, Vec<usize>)> {
    let spec = spectrum_of_p_boolean(&dual_of_set(field, s))?;
    let sigma = (0..s.len())
        .map(|i| {
            let mut ind = vec![0; s.len()];
            ind[i] = 1;
            spec.idempotents
                .iter()
                .position(|e| e.vector() == ind.as_slice())
                .ok_or(Error::NoPreimagePoint(i))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((spec, sigma))
}

/// Unit and counit of the duality at `S`, plus naturality of both along
/// each sample map.
pub fn check_duality_round_trip(
    field: PrimeField,
    s: &FiniteSetObj,
    samples: &[SetMap],
) -> Result<DualityVerdict> {
    let mut v = DualityVerdict {
        points_bijective: true,
        evaluation_iso: true,
        naturality: true,
        ..Default::default()
    };

    let (spec, sigma) = canonical_points(field, s)?;
    let distinct: HashSet<usize> = sigma.iter().copied().collect();
    if spec.points.len() != s.len() || distinct.len() != s.len() {
        v.points_bijective = false;
        v.counterexamples.push(format!(
            "|Spec F_p^S| = {} but |S| = {}",
            spec.points.len(),
            s.len()
        ));
    }
    for (i, &pt) in sigma.iter().enumerate() {
        if spec.points.label(pt) != s.label(i) {
            v.points_bijective = false;
            v.counterexamples.push(format!(
                "point of {} is labelled {}",
                s.label(i),
                spec.points.label(pt)
            ));
        }
    }

    let b = dual_of_set(field, s);
    let ev = evaluation_map(&b, &spec)?;
    if !ev.is_bijective() {
        v.evaluation_iso = false;
        v.counterexamples
            .push("evaluation F_p^S -> F_p^{Spec F_p^S} is not bijective".into());
    }

    for f in samples {
        let (_, sx) = canonical_points(field, &f.source)?;
        let (_, sy) = canonical_points(field, &f.target)?;
        let g = dualize_set_map(field, f);
        let spec_g = dualize_alg_hom(&g)?;
        for i in 0..f.source.len() {
            if spec_g.apply(sx[i]) != sy[f.apply(i)] {
                v.naturality = false;
                v.counterexamples
                    .push(format!("Spec(f^*) ∘ σ != σ ∘ f at {}", f.source.label(i)));
            }
        }
        let bx = dual_of_set(field, &f.target);
        let by = dual_of_set(field, &f.source);
        let ev_b = evaluation_map(&bx, &spectrum_of_p_boolean(&bx)?)?;
        let ev_c = evaluation_map(&by, &spectrum_of_p_boolean(&by)?)?;
        let back = dual_matrix(field, &spec_g);
        let left = ev_c.matrix().mul(g.matrix());
        let right = back.mul(ev_b.matrix());
        if left != right {
            v.naturality = false;
            v.counterexamples
                .push("ev ∘ f^* != Spec(f^*)^* ∘ ev".into());
        }
    }
    v.holds = v.points_bijective && v.evaluation_iso && v.naturality;
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct FullFaithfulnessVerdict {
    pub holds: bool,
    pub expected: u128,
    pub set_maps: usize,
    pub homs: usize,
    pub injective: bool,
    pub surjective: bool,
    pub counterexample: Option<String>,
}

/// `f -> f^*` is a bijection `Hom(S, T) -> Hom(F_p^T, F_p^S)`, the right side
/// enumerated by the general hom search.
pub fn check_full_faithfulness(
    field: PrimeField,
    s: &FiniteSetObj,
    t: &FiniteSetObj,
    limits: &Limits,
) -> Result<FullFaithfulnessVerdict> {
    let expected = (t.len() as u128)
        .checked_pow(s.len() as u32)
        .unwrap_or(u128::MAX);
    if expected > limits.max_elements {
        return Err(Error::EnumerationCapExceeded {
            what: format!("maps from a {}-set to a {}-set", s.len(), t.len()),
            size: expected,
            cap: limits.max_elements,
        });
    }
    let maps = SetMap::all_maps(s, t);
    let homs = enumerate_homs(&functions_on(field, t), &functions_on(field, s), limits)?;
    let enumerated: HashMap<&FpMatrix, usize> = homs
        .iter()
        .enumerate()
        .map(|(i, h)| (h.matrix(), i))
        .collect();

    let mut hit = vec![false; homs.len()];
    let mut injective = true;
    let mut counterexample = None;
    for f in &maps {
        let m = dual_matrix(field, f);
        match enumerated.get(&m) {
            Some(&i) if hit[i] => {
                injective = false;
                counterexample.get_or_insert_with(|| format!("two set maps dualize to hom #{i}"));
            }
            Some(&i) => hit[i] = true,
            None => {
                injective = false;
                counterexample.get_or_insert_with(|| {
                    format!("f^* for {:?} is not an enumerated hom", f.assignment)
                });
            }
        }
    }
    let surjective = hit.iter().all(|&h| h);
    if !surjective {
        counterexample.get_or_insert_with(|| "an enumerated hom is not dual to any set map".into());
    }
    let holds =
        injective && surjective && maps.len() as u128 == expected && homs.len() as u128 == expected;
    Ok(FullFaithfulnessVerdict {
        holds,
        expected,
        set_maps: maps.len(),
        homs: homs.len(),
        injective,
        surjective,
        counterexample,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FunctorLawVerdict {
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<String>,
}

/// `id^* = id` and `(g ∘ f)^* = f^* ∘ g^*` for all `f: S -> T`, `g: T -> U`.
pub fn check_functor_laws(
    field: PrimeField,
    s: &FiniteSetObj,
    t: &FiniteSetObj,
    u: &FiniteSetObj,
) -> FunctorLawVerdict {
    let mut v = FunctorLawVerdict::default();
    for x in [s, t, u] {
        if dual_matrix(field, &SetMap::identity(x)) != FpMatrix::identity(field, x.len()) {
            v.counterexample
                .get_or_insert_with(|| format!("id^* != id on a {}-set", x.len()));
        }
    }
    let gs = SetMap::all_maps(t, u);
    let g_duals: Vec<FpMatrix> = gs.iter().map(|g| dual_matrix(field, g)).collect();
    for f in SetMap::all_maps(s, t) {
        let fd = dual_matrix(field, &f);
        for (g, gd) in gs.iter().zip(&g_duals) {
            v.pairs_checked += 1;
            let gf = g.compose(&f).expect("composable by construction");
            if dual_matrix(field, &gf) != fd.mul(gd) {
                v.counterexample.get_or_insert_with(|| {
                    format!(
                        "(g∘f)^* != f^*∘g^* for f={:?} g={:?}",
                        f.assignment, g.assignment
                    )
                });
            }
        }
    }
    v.holds = v.counterexample.is_none();
    v
}

/// Convenience for JSON output of `Spec B`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumJson {
    pub points: FiniteSetObj,
    pub idempotents: Vec<Idempotent>,
    pub point_homs: Vec<Vec<Scalar>>,
}

impl From<&Spectrum> for SpectrumJson {
    fn from(s: &Spectrum) -> Self {
        SpectrumJson {
            points: s.points.clone(),
            idempotents: s.idempotents.clone(),
            point_homs: s
                .point_homs
                .iter()
                .map(|h| h.matrix().row(0).to_vec())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalgebra::{tensor, univariate_quotient, Poly};
    use crate::pearl::pearl;

    fn field(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn set(labels: &[&str]) -> FiniteSetObj {
        FiniteSetObj::new(labels.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn finite_set_rejects_duplicates() {
        assert_eq!(
            FiniteSetObj::new(vec!["a".into(), "a".into()]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        let s = set(&["a", "b"]);
        assert!(matches!(
            SetMap::new(s.clone(), s.clone(), vec![0, 2]),
            Err(Error::InvalidSetMap(_))
        ));
        assert!(matches!(
            SetMap::new(s.clone(), s, vec![0]),
            Err(Error::InvalidSetMap(_))
        ));
    }

    #[test]
    fn dual_of_set_examples() {
        let b = dual_of_set(field(2), &set(&["a", "b", "c"]));
        assert_eq!(b.algebra().dim(), 3);
        assert_eq!(b.algebra().label(1), "b");
        assert!(dual_of_set(field(2), &set(&[])).algebra().is_zero_ring());
        assert_eq!(dual_of_set(field(5), &set(&["x"])).algebra().one(), &[1]);
    }

    #[test]
    fn spectrum_examples() {
        let b = dual_of_set(field(2), &set(&["a", "b"]));
        let spec = spectrum_of_p_boolean(&b).unwrap();
        assert_eq!(spec.points.elements(), &["a", "b"]);
        let projs: Vec<_> = spec
            .point_homs
            .iter()
            .map(|h| h.matrix().row(0).to_vec())
            .collect();
        assert_eq!(projs, vec![vec![1, 0], vec![0, 1]]);
        let enumerated =
            enumerate_homs(b.algebra(), &base_field(field(2)), &Limits::default()).unwrap();
        assert_eq!(enumerated.len(), 2);
        for h in &spec.point_homs {
            assert!(enumerated.iter().any(|g| g.same_map(h)));
        }

        let one = spectrum_of_p_boolean(&dual_of_set(field(3), &set(&["x"]))).unwrap();
        assert_eq!(one.point_homs[0].matrix(), &FpMatrix::identity(field(3), 1));

        let f4 = univariate_quotient(&Poly::from_i64(field(2), &[1, 1, 1]), "x").unwrap();
        let ff = tensor(&f4, &f4, &Limits::default()).unwrap().algebra;
        let pr = pearl(&ff).unwrap();
        assert_eq!(
            spectrum_of_p_boolean(pr.pearl_algebra())
                .unwrap()
                .points
                .len(),
            2
        );
    }

    #[test]
    fn dualize_set_map_examples() {
        let s = set(&["a", "b"]);
        let id = dualize_set_map(field(2), &SetMap::identity(&s));
        assert_eq!(id.matrix(), &FpMatrix::identity(field(2), 2));

        let pt = set(&["*"]);
        let collapse = SetMap::new(s.clone(), pt.clone(), vec![0, 0]).unwrap();
        let diag = dualize_set_map(field(3), &collapse);
        diag.validate().unwrap();
        assert_eq!(diag.apply(&[1]), vec![1, 1]);

        let back = dualize_alg_hom(&diag).unwrap();
        assert_eq!(back, collapse);
    }

    #[test]
    fn dualize_alg_hom_examples() {
        let s2 = set(&["a", "b"]);
        let id = AlgebraHom::identity(dual_of_set(field(2), &s2).algebra());
        assert_eq!(dualize_alg_hom(&id).unwrap(), SetMap::identity(&s2));

        // F_2^2 -> F_2^3 duplicating the second coordinate
        let s3 = set(&["a", "b", "c"]);
        let f = SetMap::new(s3.clone(), s2.clone(), vec![0, 1, 1]).unwrap();
        let g = dualize_set_map(field(2), &f);
        assert!(g.is_injective());
        let spec_map = dualize_alg_hom(&g).unwrap();
        assert!(spec_map.is_surjective());
        assert_eq!(spec_map, f);

        let f4 = univariate_quotient(&Poly::from_i64(field(2), &[1, 1, 1]), "x").unwrap();
        assert!(matches!(
            dualize_alg_hom(&AlgebraHom::identity(&f4)),
            Err(Error::NotPBoolean { .. })
        ));
    }

    #[test]
    fn round_trip_small_sets() {
        for p in [2, 3] {
            for n in 0..=4 {
                let s = FiniteSetObj::standard(n);
                let samples: Vec<SetMap> = (0..=2)
                    .flat_map(|m| SetMap::all_maps(&s, &FiniteSetObj::standard(m)))
                    .collect();
                let v = check_duality_round_trip(field(p), &s, &samples).unwrap();
                assert!(v.holds, "p={p} n={n}: {:?}", v.counterexamples);
            }
        }
    }

    #[test]
    fn full_faithfulness_examples() {
        let l = Limits::default();
        let v = check_full_faithfulness(
            field(2),
            &FiniteSetObj::standard(2),
            &FiniteSetObj::standard(3),
            &l,
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!((v.set_maps, v.homs), (9, 9));

        let v = check_full_faithfulness(
            field(3),
            &FiniteSetObj::standard(2),
            &FiniteSetObj::standard(0),
            &l,
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!((v.set_maps, v.homs), (0, 0));

        let v = check_full_faithfulness(
            field(2),
            &FiniteSetObj::standard(0),
            &FiniteSetObj::standard(3),
            &l,
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!((v.set_maps, v.homs), (1, 1));

        let tight = Limits {
            max_elements: 8,
            ..Limits::default()
        };
        let err = check_full_faithfulness(
            field(2),
            &FiniteSetObj::standard(2),
            &FiniteSetObj::standard(3),
            &tight,
        );
        assert!(matches!(
            err,
            Err(Error::EnumerationCapExceeded { size: 9, .. })
        ));
    }

    #[test]
    fn functor_laws_small() {
        let v = check_functor_laws(
            field(2),
            &FiniteSetObj::standard(2),
            &FiniteSetObj::standard(3),
            &FiniteSetObj::standard(2),
        );
        assert!(v.holds);
        assert_eq!(v.pairs_checked, 9 * 8);
    }

    #[test]
    fn set_map_json_and_dot() {
        let f = SetMap::new(set(&["a", "b"]), set(&["*"]), vec![0, 0]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"source":["a","b"],"target":["*"],"assignment":[["a","*"],["b","*"]]}"#
        );
        let dot = f.to_dot("collapse");
        assert!(dot.contains("s1 -> t0;"));
    }
}
