#![allow(dead_code)]

use stone_core::fpalgebra::{
    function_algebra_n, product, univariate_quotient, FiniteAlgebra, Poly, PrimeField,
};
use stone_core::Limits;
use stone_oracle::Table;

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn quot(p: u32, coeffs: &[i64]) -> FiniteAlgebra {
    univariate_quotient(&Poly::from_i64(field(p), coeffs), "x").unwrap()
}

pub fn prod(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    product(a, b, &Limits::default()).unwrap().algebra
}

/// Small algebras over F_2 and F_3 of dimension at most 4, covering fields,
/// nilpotents, products and function algebras.
pub fn corpus() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("F2", quot(2, &[0, 1])),
        ("F2^2", function_algebra_n(field(2), 2)),
        ("F4", quot(2, &[1, 1, 1])),
        ("F2[x]/x^2", quot(2, &[0, 0, 1])),
        ("F2[x]/(x^3+x)", quot(2, &[0, 1, 0, 1])),
        ("F8", quot(2, &[1, 1, 0, 1])),
        (
            "F2[x]/x^2 x F2",
            prod(&quot(2, &[0, 0, 1]), &quot(2, &[0, 1])),
        ),
        (
            "F4 x F2^2",
            prod(&quot(2, &[1, 1, 1]), &function_algebra_n(field(2), 2)),
        ),
        ("F3", quot(3, &[0, 1])),
        ("F9", quot(3, &[1, 0, 1])),
        ("F3[x]/x^2", quot(3, &[0, 0, 1])),
        ("F3[x]/(x^3-x)", quot(3, &[0, -1, 0, 1])),
        ("F3[x]/(x^2(x+1))", quot(3, &[0, 0, 1, 1])),
        ("F9 x F3", prod(&quot(3, &[1, 0, 1]), &quot(3, &[0, 1]))),
    ]
}

/// The raw multiplication table handed to the oracle.
pub fn table_of(a: &FiniteAlgebra) -> Table {
    let n = a.dim();
    let mut mul = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                mul[(i * n + j) * n + k] = a.structure_constant(i, j, k) as u32;
            }
        }
    }
    Table {
        p: a.p(),
        dim: n,
        mul,
        one: a.one().iter().map(|&c| c as u32).collect(),
    }
}
