//! Light profinite sets truncated to finite towers `S_0 <- S_1 <- ... <- S_d`.
//!
//! Every statement here is made at the truncation depth `d`. Closed sets are
//! subtowers closed under the image condition `τ(T_{n+1}) = T_n`. Open sets
//! are monotone cylinder families with `τ⁻¹(A_n) ⊆ A_{n+1}`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::duality::{dualize_set_map, FiniteSetObj, SetMap};
use crate::error::{Error, Result};
use crate::fpalgebra::{function_algebra, AlgebraHom, FiniteAlgebra, FpMatrix, PrimeField, Scalar};
use crate::spectrum::Idempotent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<FiniteSetObj>,
    transitions: Vec<Vec<usize>>,
    surjective: bool,
}

impl Tower {
    /// `transitions[n]` lists `τ_n(x)` for each `x ∈ S_{n+1}`. When
    /// `surjective` is set every `τ_n` must be onto.
    pub fn new(
        levels: Vec<FiniteSetObj>,
        transitions: Vec<Vec<usize>>,
        surjective: bool,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidTower("a tower has at least one level".into()));
        }
        if transitions.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} transitions, got {}",
                levels.len(),
                levels.len() - 1,
                transitions.len()
            )));
        }
        for (n, tau) in transitions.iter().enumerate() {
            SetMap::new(levels[n + 1].clone(), levels[n].clone(), tau.clone())
                .map_err(|e| Error::InvalidTower(format!("τ_{n}: {e}")))?;
            if surjective {
                let mut hit = vec![false; levels[n].len()];
                tau.iter().for_each(|&x| hit[x] = true);
                if let Some(x) = hit.iter().position(|h| !h) {
                    return Err(Error::InvalidTower(format!(
                        "τ_{n} misses {}",
                        levels[n].label(x)
                    )));
                }
            }
        }
        Ok(Tower {
            levels,
            transitions,
            surjective,
        })
    }

    /// Level `n` is `{0..b-1}^n` in lexicographic order; `τ` drops the last digit.
    pub fn tree(branching: usize, depth: usize) -> Self {
        let mut levels = vec![FiniteSetObj::new(vec!["ε".to_string()]).expect("one label")];
        let mut transitions = Vec::with_capacity(depth);
        for n in 0..depth {
            let parent = &levels[n];
            let mut labels = Vec::with_capacity(parent.len() * branching);
            let mut tau = Vec::with_capacity(parent.len() * branching);
            for (i, l) in parent.elements().iter().enumerate() {
                let stem = if n == 0 { "" } else { l.as_str() };
                for digit in 0..branching {
                    labels.push(format!("{stem}{digit}"));
                    tau.push(i);
                }
            }
            levels.push(FiniteSetObj::new(labels).expect("tree labels are distinct"));
            transitions.push(tau);
        }
        Tower {
            levels,
            transitions,
            surjective: branching > 0 || depth == 0,
        }
    }

    pub fn cantor(depth: usize) -> Self {
        Tower::tree(2, depth)
    }

    /// The same set at every level with identity transitions.
    pub fn constant(s: &FiniteSetObj, depth: usize) -> Self {
        Tower {
            levels: vec![s.clone(); depth + 1],
            transitions: vec![(0..s.len()).collect(); depth],
            surjective: true,
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Result<&FiniteSetObj> {
        self.levels.get(n).ok_or(Error::LevelOutOfRange {
            level: n,
            depth: self.depth(),
        })
    }

    pub fn levels(&self) -> &[FiniteSetObj] {
        &self.levels
    }

    pub fn transition(&self, n: usize) -> &[usize] {
        &self.transitions[n]
    }

    pub fn transition_map(&self, n: usize) -> Result<SetMap> {
        if n >= self.depth() {
            return Err(Error::LevelOutOfRange {
                level: n + 1,
                depth: self.depth(),
            });
        }
        SetMap::new(
            self.levels[n + 1].clone(),
            self.levels[n].clone(),
            self.transitions[n].clone(),
        )
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// The image of `x ∈ S_n` in `S_m` for `m <= n`.
    pub fn project(&self, n: usize, m: usize, mut x: usize) -> usize {
        for k in (m..n).rev() {
            x = self.transitions[k][x];
        }
        x
    }

    /// `S_n -> S_m` as a set map.
    pub fn composite_map(&self, n: usize, m: usize) -> Result<SetMap> {
        self.level(n)?;
        if m > n {
            return Err(Error::LevelOutOfRange { level: m, depth: n });
        }
        let assignment = (0..self.levels[n].len())
            .map(|x| self.project(n, m, x))
            .collect();
        SetMap::new(self.levels[n].clone(), self.levels[m].clone(), assignment)
    }

    /// `u ∈ F_p^{S_m}` pulled back to level `n >= m`.
    pub fn pullback(&self, m: usize, n: usize, u: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(m, u)?;
        self.level(n)?;
        if m > n {
            return Err(Error::LevelOutOfRange { level: m, depth: n });
        }
        Ok((0..self.levels[n].len())
            .map(|x| u[self.project(n, m, x)])
            .collect())
    }

    fn check_vector(&self, m: usize, u: &[Scalar]) -> Result<()> {
        let lvl = self.level(m)?;
        if u.len() != lvl.len() {
            return Err(Error::Shape(format!(
                "vector of length {} at a level of size {}",
                u.len(),
                lvl.len()
            )));
        }
        Ok(())
    }

    /// Layered tree, one rank per level, edges from child to parent.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=TB;");
        for (n, lvl) in self.levels.iter().enumerate() {
            let ids: Vec<String> = (0..lvl.len()).map(|i| format!("l{n}_{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join("; "));
            for (i, l) in lvl.elements().iter().enumerate() {
                let _ = writeln!(s, "  l{n}_{i} [label=\"{}\"];", l.replace('"', "'"));
            }
        }
        for (n, tau) in self.transitions.iter().enumerate() {
            for (x, &y) in tau.iter().enumerate() {
                let _ = writeln!(s, "  l{}_{x} -> l{n}_{y};", n + 1);
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize)]
struct TowerJson<'a> {
    depth: usize,
    levels: &'a [FiniteSetObj],
    transitions: &'a [Vec<usize>],
}

impl Serialize for Tower {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TowerJson {
            depth: self.depth(),
            levels: &self.levels,
            transitions: &self.transitions,
        }
        .serialize(ser)
    }
}

/// Levelwise maps `f_n: S_n -> T_n` commuting with the transitions.
#[derive(Clone, Debug)]
pub struct TowerMap {
    source: Tower,
    target: Tower,
    level_maps: Vec<SetMap>,
}

impl TowerMap {
    pub fn new(source: Tower, target: Tower, level_maps: Vec<Vec<usize>>) -> Result<Self> {
        if source.depth() != target.depth() {
            return Err(Error::InvalidTower("tower maps need equal depths".into()));
        }
        if level_maps.len() != source.levels.len() {
            return Err(Error::InvalidTower("one level map per level".into()));
        }
        let maps = level_maps
            .into_iter()
            .enumerate()
            .map(|(n, a)| SetMap::new(source.levels[n].clone(), target.levels[n].clone(), a))
            .collect::<Result<Vec<_>>>()?;
        for n in 0..source.depth() {
            for x in 0..source.levels[n + 1].len() {
                if maps[n].apply(source.transitions[n][x])
                    != target.transitions[n][maps[n + 1].apply(x)]
                {
                    return Err(Error::InvalidTower(format!(
                        "square at level {n} fails at {}",
                        source.levels[n + 1].label(x)
                    )));
                }
            }
        }
        Ok(TowerMap {
            source,
            target,
            level_maps: maps,
        })
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn level_map(&self, n: usize) -> &SetMap {
        &self.level_maps[n]
    }

    /// `f_n^*: F_p^{T_n} -> F_p^{S_n}` at every level.
    pub fn dualize(&self, field: PrimeField) -> Vec<AlgebraHom> {
        self.level_maps
            .iter()
            .map(|f| dualize_set_map(field, f))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TowerLevelAlgebra {
    pub algebra: FiniteAlgebra,
    /// `τ_n^*: F_p^{S_n} -> F_p^{S_{n+1}}`, absent at the top level.
    pub transition: Option<AlgebraHom>,
}

pub fn tower_function_algebra(t: &Tower, n: usize, field: PrimeField) -> Result<TowerLevelAlgebra> {
    let lvl = t.level(n)?;
    let algebra = function_algebra(field, lvl.elements())?;
    let transition = if n < t.depth() {
        Some(dualize_set_map(field, &t.transition_map(n)?))
    } else {
        None
    };
    Ok(TowerLevelAlgebra {
        algebra,
        transition,
    })
}

/// Equality of `(m, u)` and `(n, v)` in `colim F_p^{S_k}` at this depth.
pub fn colimit_element_eq(
    t: &Tower,
    field: PrimeField,
    (m, u): (usize, &[Scalar]),
    (n, v): (usize, &[Scalar]),
) -> Result<bool> {
    let top = m.max(n);
    let pu = t.pullback(m, top, u)?;
    let pv = t.pullback(n, top, v)?;
    Ok(pu
        .iter()
        .zip(&pv)
        .all(|(&a, &b)| field.reduce(a as u64) == field.reduce(b as u64)))
}

fn membership(t: &Tower, subsets: &[Vec<usize>]) -> Result<Vec<Vec<bool>>> {
    if subsets.len() != t.levels.len() {
        return Err(Error::InvalidSubtower(format!(
            "{} subsets for {} levels",
            subsets.len(),
            t.levels.len()
        )));
    }
    subsets
        .iter()
        .enumerate()
        .map(|(n, sub)| {
            let mut mask = vec![false; t.levels[n].len()];
            for &x in sub {
                *mask.get_mut(x).ok_or_else(|| {
                    Error::InvalidSubtower(format!("index {x} outside level {n}"))
                })? = true;
            }
            Ok(mask)
        })
        .collect()
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

fn complement_mask(mask: &[Vec<bool>]) -> Vec<Vec<bool>> {
    mask.iter()
        .map(|m| m.iter().map(|b| !b).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSubtower {
    ambient: Tower,
    mask: Vec<Vec<bool>>,
}

/// First level `n` with `τ_n(T_{n+1}) != T_n`.
fn image_failure(t: &Tower, mask: &[Vec<bool>]) -> Option<usize> {
    (0..t.depth()).find(|&n| {
        let mut img = vec![false; t.levels[n].len()];
        for (x, &inside) in mask[n + 1].iter().enumerate() {
            if inside {
                img[t.transitions[n][x]] = true;
            }
        }
        img != mask[n]
    })
}

impl ClosedSubtower {
    pub fn new(ambient: Tower, subsets: &[Vec<usize>]) -> Result<Self> {
        let mask = membership(&ambient, subsets)?;
        if let Some(n) = image_failure(&ambient, &mask) {
            return Err(Error::InvalidSubtower(format!(
                "τ_{n}(T_{}) != T_{n}",
                n + 1
            )));
        }
        Ok(ClosedSubtower { ambient, mask })
    }

    /// The subtower whose top level is `top`, lower levels being its images.
    pub fn from_top(ambient: Tower, top: &[usize]) -> Result<Self> {
        let d = ambient.depth();
        let mut mask: Vec<Vec<bool>> = ambient
            .levels
            .iter()
            .map(|l| vec![false; l.len()])
            .collect();
        for &x in top {
            *mask[d]
                .get_mut(x)
                .ok_or_else(|| Error::InvalidSubtower(format!("index {x} outside level {d}")))? =
                true;
        }
        for n in (0..d).rev() {
            for x in 0..mask[n + 1].len() {
                if mask[n + 1][x] {
                    mask[n][ambient.transitions[n][x]] = true;
                }
            }
        }
        Ok(ClosedSubtower { ambient, mask })
    }

    /// Normalizes arbitrary levelwise subsets through the image of the top level.
    pub fn normalize(ambient: Tower, subsets: &[Vec<usize>]) -> Result<Self> {
        membership(&ambient, subsets)?;
        let top = subsets[ambient.depth()].clone();
        ClosedSubtower::from_top(ambient, &top)
    }

    pub fn ambient(&self) -> &Tower {
        &self.ambient
    }

    pub fn contains(&self, n: usize, x: usize) -> bool {
        self.mask[n][x]
    }

    pub fn level(&self, n: usize) -> Vec<usize> {
        indices(&self.mask[n])
    }

    pub fn levels(&self) -> Vec<Vec<usize>> {
        self.mask.iter().map(|m| indices(m)).collect()
    }

    /// `χ_{T_n} ∈ F_p^{S_n}`.
    pub fn indicator(&self, n: usize) -> Result<Vec<Scalar>> {
        self.ambient.level(n)?;
        Ok(self.mask[n].iter().map(|&b| b as Scalar).collect())
    }

    /// `T` as a tower in its own right; its transitions are onto.
    pub fn as_tower(&self) -> Tower {
        let levels: Vec<FiniteSetObj> = self
            .mask
            .iter()
            .enumerate()
            .map(|(n, m)| {
                FiniteSetObj::new(
                    indices(m)
                        .into_iter()
                        .map(|x| self.ambient.levels[n].label(x).to_string())
                        .collect(),
                )
                .expect("sublist of distinct labels")
            })
            .collect();
        let position: Vec<Vec<usize>> = self
            .mask
            .iter()
            .map(|m| {
                let mut pos = vec![usize::MAX; m.len()];
                for (k, x) in indices(m).into_iter().enumerate() {
                    pos[x] = k;
                }
                pos
            })
            .collect();
        let transitions = (0..self.ambient.depth())
            .map(|n| {
                indices(&self.mask[n + 1])
                    .into_iter()
                    .map(|x| position[n][self.ambient.transitions[n][x]])
                    .collect()
            })
            .collect();
        Tower {
            levels,
            transitions,
            surjective: true,
        }
    }
}

impl Serialize for ClosedSubtower {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.levels().serialize(ser)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenCylinderFamily {
    ambient: Tower,
    mask: Vec<Vec<bool>>,
}

/// First level `n` with `τ_n⁻¹(A_n) ⊄ A_{n+1}`.
fn monotone_failure(t: &Tower, mask: &[Vec<bool>]) -> Option<usize> {
    (0..t.depth())
        .find(|&n| (0..mask[n + 1].len()).any(|x| mask[n][t.transitions[n][x]] && !mask[n + 1][x]))
}

impl OpenCylinderFamily {
    pub fn new(ambient: Tower, subsets: &[Vec<usize>]) -> Result<Self> {
        let mask = membership(&ambient, subsets)?;
        if let Some(n) = monotone_failure(&ambient, &mask) {
            return Err(Error::InvalidSubtower(format!(
                "τ_{n}⁻¹(A_{n}) is not contained in A_{}",
                n + 1
            )));
        }
        Ok(OpenCylinderFamily { ambient, mask })
    }

    /// The cylinder over `χ ∈ F_p^{S_n}` (with 0/1 entries): empty below `n`,
    /// `π⁻¹` of the support at and above `n`.
    pub fn from_idempotent(ambient: Tower, n: usize, chi: &[Scalar]) -> Result<Self> {
        ambient.check_vector(n, chi)?;
        if chi.iter().any(|&c| c > 1) {
            return Err(Error::NotIdempotent);
        }
        let mask = (0..ambient.levels.len())
            .map(|m| {
                (0..ambient.levels[m].len())
                    .map(|x| m >= n && chi[ambient.project(m, n, x)] == 1)
                    .collect()
            })
            .collect();
        Ok(OpenCylinderFamily { ambient, mask })
    }

    pub fn ambient(&self) -> &Tower {
        &self.ambient
    }

    pub fn contains(&self, n: usize, x: usize) -> bool {
        self.mask[n][x]
    }

    pub fn level(&self, n: usize) -> Vec<usize> {
        indices(&self.mask[n])
    }

    pub fn levels(&self) -> Vec<Vec<usize>> {
        self.mask.iter().map(|m| indices(m)).collect()
    }
}

impl Serialize for OpenCylinderFamily {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.levels().serialize(ser)
    }
}

/// `A_n = S_n ∖ T_n`.
pub fn complement_closed(t: &ClosedSubtower) -> Result<OpenCylinderFamily> {
    let mask = complement_mask(&t.mask);
    if let Some(n) = monotone_failure(&t.ambient, &mask) {
        return Err(Error::InvalidSubtower(format!(
            "complement is not monotone at level {n}"
        )));
    }
    Ok(OpenCylinderFamily {
        ambient: t.ambient.clone(),
        mask,
    })
}

/// `T_n = S_n ∖ A_n`. Fails with `InvalidAtDepth` where some point
/// outside `A_n` has all its children inside `A_{n+1}`.
pub fn complement_open(u: &OpenCylinderFamily) -> Result<ClosedSubtower> {
    let mask = complement_mask(&u.mask);
    if let Some(n) = image_failure(&u.ambient, &mask) {
        return Err(Error::InvalidAtDepth {
            level: n,
            depth: u.ambient.depth(),
        });
    }
    Ok(ClosedSubtower {
        ambient: u.ambient.clone(),
        mask,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClopenIdempotent {
    pub level: usize,
    pub idempotent: Idempotent,
}

/// The smallest `n` with `τ_m⁻¹(A_m) = A_{m+1}` for all `n <= m < d`, with
/// `χ_{A_n}`, the same 0/1 vector over every `F_p`. A depth-0 tower has every family stable at level 0.
pub fn clopen_to_idempotent(u: &OpenCylinderFamily) -> Result<ClopenIdempotent> {
    let t = &u.ambient;
    let d = t.depth();
    let stable_at = |m: usize| {
        (0..t.levels[m + 1].len()).all(|x| u.mask[m][t.transitions[m][x]] == u.mask[m + 1][x])
    };
    let mut n = d;
    while n > 0 && stable_at(n - 1) {
        n -= 1;
    }
    if d > 0 && n == d {
        return Err(Error::NotClopenAtThisDepth(d));
    }
    let chi: Vec<Scalar> = u.mask[n].iter().map(|&b| b as Scalar).collect();
    Ok(ClopenIdempotent {
        level: n,
        idempotent: Idempotent::indicator(chi)?,
    })
}

/// Restriction `F_p^{S_n} -> F_p^{T_n}`, checked surjective and natural in `n`.
pub fn closed_to_quotient_algebra(
    t: &ClosedSubtower,
    n: usize,
    field: PrimeField,
) -> Result<AlgebraHom> {
    let restriction = |m: usize| -> Result<AlgebraHom> {
        let src = function_algebra(field, t.ambient.level(m)?.elements())?;
        let sub = t.level(m);
        let tgt = function_algebra(
            field,
            &sub.iter()
                .map(|&x| t.ambient.levels[m].label(x).to_string())
                .collect::<Vec<_>>(),
        )?;
        let mut mat = FpMatrix::zeros(field, sub.len(), src.dim());
        for (k, &x) in sub.iter().enumerate() {
            mat.set(k, x, 1);
        }
        AlgebraHom::new(src, tgt, mat)
    };
    let hom = restriction(n)?;
    if !hom.is_surjective() {
        return Err(Error::InvalidHom("restriction is not surjective".into()));
    }
    if n < t.ambient.depth() {
        let upper = restriction(n + 1)?;
        let amb = tower_function_algebra(&t.ambient, n, field)?
            .transition
            .expect("below top");
        let sub = tower_function_algebra(&t.as_tower(), n, field)?
            .transition
            .expect("below top");
        if upper.matrix().mul(amb.matrix()) != sub.matrix().mul(hom.matrix()) {
            return Err(Error::InvalidHom(
                "restriction does not commute with transitions".into(),
            ));
        }
    }
    Ok(hom)
}
