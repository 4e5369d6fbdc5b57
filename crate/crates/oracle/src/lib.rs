//! Brute-force reference computations, written without the main library.
//!
//! Everything here is deliberately naive: polynomials are plain coefficient
//! vectors, algebras are flat multiplication tables, and every count comes
//! from exhaustive search or trial division.

/// Polynomials over `F_p` as ascending coefficient vectors with no trailing zeros.
pub mod poly {
    pub fn trim(mut f: Vec<u32>) -> Vec<u32> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn degree(f: &[u32]) -> Option<usize> {
        f.iter().rposition(|&c| c != 0)
    }

    pub fn mul(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        trim(out)
    }

    fn inv(p: u32, a: u32) -> u32 {
        (1..p).find(|&b| a * b % p == 1).expect("nonzero residue")
    }

    /// `(q, r)` with `f = q g + r`, `deg r < deg g`. Panics on `g = 0`.
    pub fn div_rem(p: u32, f: &[u32], g: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let dg = degree(g).expect("division by zero polynomial");
        let lead_inv = inv(p, g[dg]);
        let mut r = trim(f.to_vec());
        let mut q = vec![0u32; r.len().saturating_sub(dg).max(1)];
        while let Some(dr) = degree(&r) {
            if dr < dg {
                break;
            }
            let c = r[dr] * lead_inv % p;
            q[dr - dg] = c;
            for (k, &b) in g.iter().enumerate() {
                let idx = dr - dg + k;
                r[idx] = (r[idx] + p - c * b % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn divides(p: u32, g: &[u32], f: &[u32]) -> bool {
        div_rem(p, f, g).1.is_empty()
    }

    /// All monic polynomials of degree exactly `d`.
    pub fn monic_of_degree(p: u32, d: usize) -> Vec<Vec<u32>> {
        let count = (p as usize).pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut f = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    f.push((idx % p as usize) as u32);
                    idx /= p as usize;
                }
                f.push(1);
                f
            })
            .collect()
    }
}

/// Monic irreducibles over `F_p` of degree `1..=max_deg`, grouped by degree.
/// A candidate survives when no smaller irreducible of degree at most half
/// its own divides it.
pub fn irreducible_sieve(p: u32, max_deg: usize) -> Vec<Vec<Vec<u32>>> {
    let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_deg + 1];
    for d in 1..=max_deg {
        let found: Vec<Vec<u32>> = poly::monic_of_degree(p, d)
            .into_iter()
            .filter(|f| !(1..=d / 2).any(|e| by_degree[e].iter().any(|g| poly::divides(p, g, f))))
            .collect();
        by_degree[d] = found;
    }
    by_degree
}

/// Number of distinct monic irreducible factors of a monic `f` with `deg f <= 10`.
///
/// Trial division removes every irreducible of degree at most 5. What is
/// left has no factor of degree at most 5, so it is 1 or irreducible.
pub fn distinct_irreducible_factors(p: u32, f: &[u32], sieve: &[Vec<Vec<u32>>]) -> usize {
    let mut rest = poly::trim(f.iter().map(|&c| c % p).collect());
    let deg = poly::degree(&rest).expect("nonzero polynomial");
    assert!(deg <= 10, "oracle handles degree at most 10");
    assert!(sieve.len() > 5, "sieve must reach degree 5");
    let mut count = 0;
    for level in sieve.iter().skip(1).take(5) {
        for g in level {
            if poly::divides(p, g, &rest) {
                count += 1;
                while poly::divides(p, g, &rest) {
                    rest = poly::div_rem(p, &rest, g).0;
                }
            }
        }
    }
    if poly::degree(&rest).unwrap_or(0) > 0 {
        count += 1;
    }
    count
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `F_{p^a} ⊗ F_{p^b} ≅ F_{p^lcm}^gcd(a,b)`: its number of connected components.
pub fn galois_tensor_components(a: usize, b: usize) -> usize {
    gcd(a, b)
}

/// A commutative algebra as a raw table: `mul[(i*n + j)*n + k]` is the
/// coefficient of `b_k` in `b_i b_j`.
#[derive(Clone, Debug)]
pub struct Table {
    pub p: u32,
    pub dim: usize,
    pub mul: Vec<u32>,
    pub one: Vec<u32>,
}

impl Table {
    /// `F_p^n` with diagonal idempotent basis.
    pub fn functions(p: u32, n: usize) -> Self {
        let mut mul = vec![0; n * n * n];
        for i in 0..n {
            mul[(i * n + i) * n + i] = 1;
        }
        Table {
            p,
            dim: n,
            mul,
            one: vec![1; n],
        }
    }

    /// `F_p[x]/(f)` for monic `f`, basis `1, x, ..., x^(d-1)`.
    pub fn univariate(p: u32, f: &[u32]) -> Self {
        let d = poly::degree(f).expect("nonzero modulus");
        let mut mul = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let mut mono = vec![0; i + j + 1];
                mono[i + j] = 1;
                let r = poly::div_rem(p, &mono, f).1;
                for (k, &c) in r.iter().enumerate() {
                    mul[(i * d + j) * d + k] = c;
                }
            }
        }
        let mut one = vec![0; d];
        if d > 0 {
            one[0] = 1;
        }
        Table {
            p,
            dim: d,
            mul,
            one,
        }
    }

    /// Block-diagonal product, basis of `self` first.
    pub fn product(&self, other: &Table) -> Self {
        let (m, n) = (self.dim, other.dim);
        let t = m + n;
        let mut mul = vec![0; t * t * t];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    mul[(i * t + j) * t + k] = self.mul[(i * m + j) * m + k];
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mul[((m + i) * t + m + j) * t + m + k] = other.mul[(i * n + j) * n + k];
                }
            }
        }
        let mut one = self.one.clone();
        one.extend(&other.one);
        Table {
            p: self.p,
            dim: t,
            mul,
            one,
        }
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.dim;
        let mut out = vec![0u32; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % self.p;
                for k in 0..n {
                    out[k] = (out[k] + c * self.mul[(i * n + j) * n + k]) % self.p;
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[u32], e: u32) -> Vec<u32> {
        let mut acc = self.one.clone();
        for _ in 0..e {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// Every element, last coordinate varying fastest.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let count = (self.p as usize).pow(self.dim as u32);
        (0..count)
            .map(|mut idx| {
                let mut v = vec![0u32; self.dim];
                for k in (0..self.dim).rev() {
                    v[k] = (idx % self.p as usize) as u32;
                    idx /= self.p as usize;
                }
                v
            })
            .collect()
    }

    pub fn idempotents(&self) -> Vec<Vec<u32>> {
        self.elements()
            .into_iter()
            .filter(|e| &self.multiply(e, e) == e)
            .collect()
    }

    /// Nonzero idempotents `e` with no nonzero idempotent `f != e` satisfying `fe = f`.
    pub fn primitive_idempotents(&self) -> Vec<Vec<u32>> {
        let idem = self.idempotents();
        let nonzero: Vec<&Vec<u32>> = idem.iter().filter(|e| e.iter().any(|&c| c != 0)).collect();
        nonzero
            .iter()
            .filter(|e| {
                !nonzero
                    .iter()
                    .any(|f| f != *e && &self.multiply(f, e) == *f)
            })
            .map(|e| (*e).clone())
            .collect()
    }

    /// `|{x : x^p = x}|`, a power of `p` whose exponent is the pearl dimension.
    pub fn frobenius_fixed_count(&self) -> usize {
        self.elements()
            .into_iter()
            .filter(|x| &self.power(x, self.p) == x)
            .count()
    }

    pub fn frobenius_fixed_dim(&self) -> usize {
        let mut c = self.frobenius_fixed_count();
        let mut d = 0;
        while c > 1 {
            assert_eq!(c % self.p as usize, 0, "fixed points form a subspace");
            c /= self.p as usize;
            d += 1;
        }
        d
    }

    /// Number of unital multiplicative linear maps `self -> target`, by
    /// trying every assignment of basis images.
    pub fn count_homs(&self, target: &Table) -> usize {
        let elems = target.elements();
        let n = self.dim;
        let mut count = 0;
        let mut choice = vec![0usize; n];
        let total = elems.len().pow(n as u32);
        for mut idx in 0..total {
            for c in choice.iter_mut().rev() {
                *c = idx % elems.len();
                idx /= elems.len();
            }
            let image = |x: &[u32]| {
                let mut out = vec![0u32; target.dim];
                for (i, &xi) in x.iter().enumerate() {
                    for (k, &v) in elems[choice[i]].iter().enumerate() {
                        out[k] = (out[k] + xi * v) % self.p;
                    }
                }
                out
            };
            if image(&self.one) != target.one {
                continue;
            }
            let ok = (0..n).all(|i| {
                (i..n).all(|j| {
                    let mut bi = vec![0; n];
                    bi[i] = 1;
                    let mut bj = vec![0; n];
                    bj[j] = 1;
                    image(&self.multiply(&bi, &bj)) == target.multiply(&image(&bi), &image(&bj))
                })
            });
            if ok {
                count += 1;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_p
        let s2 = irreducible_sieve(2, 5);
        assert_eq!(
            s2.iter().map(|v| v.len()).collect::<Vec<_>>(),
            vec![0, 2, 1, 2, 3, 6]
        );
        let s3 = irreducible_sieve(3, 4);
        assert_eq!(
            s3.iter().map(|v| v.len()).collect::<Vec<_>>(),
            vec![0, 3, 3, 8, 18]
        );
    }

    #[test]
    fn factor_counts() {
        let s = irreducible_sieve(2, 5);
        assert_eq!(distinct_irreducible_factors(2, &[1, 1, 0, 1, 1], &s), 2);
        assert_eq!(distinct_irreducible_factors(2, &[0, 0, 0, 1], &s), 1);
        // x^10+1 = (x+1)^2 (x^4+x^3+x^2+x+1)^2
        assert_eq!(
            distinct_irreducible_factors(2, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1], &s),
            2
        );
        let s3 = irreducible_sieve(3, 5);
        assert_eq!(distinct_irreducible_factors(3, &[0, 2, 0, 1], &s3), 3);
    }

    #[test]
    fn tables() {
        let f4 = Table::univariate(2, &[1, 1, 1]);
        assert_eq!(f4.idempotents().len(), 2);
        assert_eq!(f4.frobenius_fixed_dim(), 1);
        let s = Table::functions(3, 2);
        assert_eq!(s.primitive_idempotents(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.count_homs(&Table::functions(3, 1)), 2);
        assert_eq!(f4.count_homs(&Table::functions(2, 1)), 0);
        assert_eq!(f4.count_homs(&f4), 2);
        let prod = Table::univariate(2, &[0, 0, 1]).product(&Table::functions(2, 1));
        assert_eq!(prod.frobenius_fixed_dim(), 2);
    }
}
