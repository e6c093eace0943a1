use crate::constructions::grassmann;
use crate::error::{Error, Result};

use super::{signed, Parity, SuperAlgebra};

fn joined_name(a: &str, b: &str) -> String {
    match (a, b) {
        (_, "1") => a.to_string(),
        ("1", _) => b.to_string(),
        _ => format!("{a} {b}"),
    }
}

/// Graded tensor product: `(a⊗b)(c⊗d) = (-1)^{p(b)p(c)} ac⊗bd`.
///
/// Basis vector `e_i⊗f_j` has index `i·dim(B) + j`.
pub fn tensor_super(a: &SuperAlgebra, b: &SuperAlgebra) -> Result<SuperAlgebra> {
    if a.field() != b.field() {
        return Err(Error::Field(a.field(), b.field()));
    }
    let nb = b.dim();
    let idx = |i: usize, j: usize| i * nb + j;
    let mut parity = Vec::with_capacity(a.dim() * nb);
    let mut names = Vec::with_capacity(a.dim() * nb);
    for i in 0..a.dim() {
        for j in 0..nb {
            parity.push(a.parity(i) + b.parity(j));
            names.push(joined_name(a.name(i), b.name(j)));
        }
    }
    let mut entries = Vec::new();
    for (i, k, ta) in a.nonzero_products() {
        for (j, l, tb) in b.nonzero_products() {
            let negate = b.parity(j).koszul(a.parity(k));
            for (r, ca) in ta {
                for (s, cb) in tb {
                    entries.push((idx(i, j), idx(k, l), idx(*r, *s), signed(negate, &(ca * cb))));
                }
            }
        }
    }
    SuperAlgebra::new(a.field(), parity, Some(names), entries)
}

/// `a∘b = ½(ab + (-1)^{p(a)p(b)} ba)`.
pub fn plus(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    let field = a.field();
    let half = field.half();
    let mut entries = Vec::new();
    for (i, j, t) in a.nonzero_products() {
        for (k, c) in t {
            entries.push((i, j, *k, &half * c));
            let negate = a.parity(i).koszul(a.parity(j));
            entries.push((j, i, *k, signed(negate, &(&half * c))));
        }
    }
    SuperAlgebra::new(field, a.parities().to_vec(), Some(a.names().to_vec()), entries)
}

/// Even part of `G(n)⊗A`, as an ungraded (all even) algebra.
///
/// Basis vectors are `g⊗e_i` with `p(g) = p(e_i)`, ordered by `i` then `g`.
pub fn envelope(a: &SuperAlgebra, n: usize) -> Result<SuperAlgebra> {
    let g = grassmann(n, a.field());
    let mut index = vec![vec![usize::MAX; g.dim()]; a.dim()];
    let mut names = Vec::new();
    for (i, row) in index.iter_mut().enumerate() {
        for (h, slot) in row.iter_mut().enumerate() {
            if g.parity(h) == a.parity(i) {
                *slot = names.len();
                names.push(format!("{}⊗{}", g.name(h), a.name(i)));
            }
        }
    }
    let mut entries = Vec::new();
    for (i, j, ta) in a.nonzero_products() {
        for (g1, g2, tg) in g.nonzero_products() {
            let (u, v) = (index[i][g1], index[j][g2]);
            if u == usize::MAX || v == usize::MAX {
                continue;
            }
            let negate = a.parity(i).koszul(g.parity(g2));
            for (k, ca) in ta {
                for (h, cg) in tg {
                    entries.push((u, v, index[*k][*h], signed(negate, &(ca * cg))));
                }
            }
        }
    }
    let dim = names.len();
    SuperAlgebra::new(a.field(), vec![Parity::Even; dim], Some(names), entries)
}
