use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{Parity, SuperAlgebra};

use super::Derivation;

// Block order: Z, w1Z, w2Z, w3Z (even), xZ, x1Z, x2Z, x3Z (odd).
const X: usize = 4;

fn w(i: usize) -> usize {
    i
}

fn xi(i: usize) -> usize {
    X + i
}

/// `x_{i×j}` as `(negate, k)` for `i ≠ j`, using the cyclic cross product
/// (`x_{3×1} = x_2`); with `x_{1×3} = x_2` the result is not Jordan.
fn cross(i: usize, j: usize) -> Option<(bool, usize)> {
    match (i, j) {
        (1, 2) => Some((false, 3)),
        (2, 1) => Some((true, 3)),
        (1, 3) => Some((true, 2)),
        (3, 1) => Some((false, 2)),
        (2, 3) => Some((false, 1)),
        (3, 2) => Some((true, 1)),
        _ => None,
    }
}

fn block_name(block: usize, f: &str) -> String {
    let prefix = match block {
        0 => "",
        1 => "w1",
        2 => "w2",
        3 => "w3",
        4 => "x",
        5 => "x1",
        6 => "x2",
        _ => "x3",
    };
    match (prefix, f) {
        ("", _) => f.to_string(),
        (_, "1") => prefix.to_string(),
        _ => format!("{prefix} {f}"),
    }
}

/// The Cheng–Kac superalgebra `CK(Z, d)` of dimension `8·dim Z`.
///
/// Basis vector `b·f` (block `b`, `f` a basis vector of `Z`) has index
/// `b·dim Z + f`, blocks ordered `1, w1, w2, w3, x, x1, x2, x3`.
pub fn cheng_kac(z: &SuperAlgebra, d: &Derivation) -> Result<SuperAlgebra> {
    if z.parities().iter().any(|p| p.is_odd()) {
        return Err(Error::Requirement("purely even"));
    }
    if z.supercommutativity_violation().is_some() {
        return Err(Error::Requirement("commutative"));
    }
    if z.find_unit().is_none() {
        return Err(Error::NotUnital);
    }
    let n = z.dim();
    if d.matrix().rows() != n {
        return Err(Error::Dimension {
            expected: n,
            got: d.matrix().rows(),
        });
    }
    let field = z.field();
    let idx = |block: usize, f: usize| block * n + f;
    let mut parity = Vec::with_capacity(8 * n);
    let mut names = Vec::with_capacity(8 * n);
    for block in 0..8 {
        for f in 0..n {
            parity.push(if block < X { Parity::Even } else { Parity::Odd });
            names.push(block_name(block, z.name(f)));
        }
    }

    let dz: Vec<Vec<Scalar>> = (0..n).map(|c| d.image(c)).collect();
    // Products in Z of basis vectors and of derivative images.
    let fg = |f: usize, g: usize| -> Vec<(usize, Scalar)> { z.product(f, g).to_vec() };
    let f_dg = |f: usize, g: usize| -> Vec<(usize, Scalar)> {
        sparse(z.mul_basis_left(f, &dz[g]))
    };
    let df_g = |f: usize, g: usize| -> Vec<(usize, Scalar)> {
        sparse(z.mul_basis_right(&dz[f], g))
    };

    let mut entries: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    let mut put = |l: usize, r: usize, block: usize, terms: &[(usize, Scalar)], negate: bool| {
        for (k, c) in terms {
            entries.push((l, r, idx(block, *k), if negate { -c } else { c.clone() }));
        }
    };
    for f in 0..n {
        for g in 0..n {
            let prod = fg(f, g);
            // Even part: Z-linear, w_i w_j = 0 for i ≠ j, w_i² = -1.
            put(idx(0, f), idx(0, g), 0, &prod, false);
            for i in 1..=3 {
                put(idx(0, f), idx(w(i), g), w(i), &prod, false);
                put(idx(w(i), f), idx(0, g), w(i), &prod, false);
                put(idx(w(i), f), idx(w(i), g), 0, &prod, true);
            }
            // Odd times even, then even times odd by commutativity.
            let mut odd_even = |l: usize, r: usize, block: usize, terms: &[(usize, Scalar)], negate: bool| {
                put(l, r, block, terms, negate);
                put(r, l, block, terms, negate);
            };
            odd_even(idx(X, f), idx(0, g), X, &prod, false);
            for i in 1..=3 {
                odd_even(idx(xi(i), f), idx(0, g), xi(i), &prod, false);
                odd_even(idx(X, f), idx(w(i), g), xi(i), &f_dg(f, g), false);
                for j in 1..=3 {
                    if let Some((neg, k)) = cross(i, j) {
                        odd_even(idx(xi(i), f), idx(w(j), g), xi(k), &prod, neg);
                    }
                }
            }
            // Odd times odd.
            let mut bracket = df_g(f, g);
            for (k, c) in f_dg(f, g) {
                bracket.push((k, -c));
            }
            put(idx(X, f), idx(X, g), 0, &bracket, false);
            for j in 1..=3 {
                put(idx(X, f), idx(xi(j), g), w(j), &prod, true);
                put(idx(xi(j), f), idx(X, g), w(j), &prod, false);
            }
        }
    }
    SuperAlgebra::new(field, parity, Some(names), entries)
}

fn sparse(v: Vec<Scalar>) -> Vec<(usize, Scalar)> {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}
