use crate::error::{Error, Result};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::scalar::{FieldDesc, Scalar};
use crate::superalgebra::{Parity, SuperAlgebra};

use super::Superinvolution;

fn require_char3(field: FieldDesc) -> Result<()> {
    if field.characteristic() != 3 {
        return Err(Error::Characteristic {
            expected: 3,
            got: field.characteristic(),
        });
    }
    Ok(())
}

fn diagonal_involution(alg: &SuperAlgebra, signs: &[i64]) -> Result<Superinvolution> {
    let n = alg.dim();
    let mut m = Matrix::zeros(alg.field(), n, n);
    for (i, s) in signs.iter().enumerate() {
        m.set(i, i, alg.field().from_i64(*s));
    }
    Superinvolution::new(alg, m)
}

/// `B(1,2) = F·1 + F·x + F·y` with `xy = -yx = 1`, over characteristic 3,
/// and its superinvolution `(a+m)* = a - m`.
pub fn b12(field: FieldDesc) -> Result<(SuperAlgebra, Superinvolution)> {
    require_char3(field)?;
    let one = field.one();
    let entries = vec![
        (0, 0, 0, one.clone()),
        (0, 1, 1, one.clone()),
        (1, 0, 1, one.clone()),
        (0, 2, 2, one.clone()),
        (2, 0, 2, one.clone()),
        (1, 2, 0, one.clone()),
        (2, 1, 0, -&one),
    ];
    let alg = SuperAlgebra::new(
        field,
        vec![Parity::Even, Parity::Odd, Parity::Odd],
        Some(vec!["1".into(), "x".into(), "y".into()]),
        entries,
    )?;
    let star = diagonal_involution(&alg, &[1, -1, -1])?;
    Ok((alg, star))
}

/// `B(4,2) = M_2(F) + F·m1 + F·m2` over characteristic 3, with
/// `e_ij·m_k = δ_ik m_j`, `m·a = ā·m` for the symplectic involution `ā`,
/// `m1² = -e21`, `m2² = e12`, `m1m2 = e11`, `m2m1 = -e22`;
/// superinvolution `(a+m)* = ā - m`.
pub fn b42(field: FieldDesc) -> Result<(SuperAlgebra, Superinvolution)> {
    require_char3(field)?;
    // e11, e12, e21, e22, m1, m2
    let e = |i: usize, j: usize| 2 * (i - 1) + (j - 1);
    let m = |k: usize| 3 + k;
    let bar: [(i64, usize); 4] = [(1, e(2, 2)), (-1, e(1, 2)), (-1, e(2, 1)), (1, e(1, 1))];
    let c = |v: i64| field.from_i64(v);
    let mut entries = Vec::new();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for l in 1..=2 {
            entries.push((e(i, j), e(j, l), e(i, l), c(1)));
        }
        // e_ij·m_i = m_j
        entries.push((e(i, j), m(i), m(j), c(1)));
    }
    // m_k·a = ā·m_k
    for (a, (s, abar)) in bar.iter().enumerate() {
        let (bi, bj) = (abar / 2 + 1, abar % 2 + 1);
        for k in 1..=2 {
            if bi == k {
                entries.push((m(k), a, m(bj), c(*s)));
            }
        }
    }
    entries.push((m(1), m(1), e(2, 1), c(-1)));
    entries.push((m(2), m(2), e(1, 2), c(1)));
    entries.push((m(1), m(2), e(1, 1), c(1)));
    entries.push((m(2), m(1), e(2, 2), c(-1)));
    let alg = SuperAlgebra::new(
        field,
        vec![
            Parity::Even,
            Parity::Even,
            Parity::Even,
            Parity::Even,
            Parity::Odd,
            Parity::Odd,
        ],
        Some(["e11", "e12", "e21", "e22", "m1", "m2"].map(String::from).to_vec()),
        entries,
    )?;
    let mut star = Matrix::zeros(field, 6, 6);
    for (a, (s, abar)) in bar.iter().enumerate() {
        star.set(*abar, a, c(*s));
    }
    star.set(m(1), m(1), c(-1));
    star.set(m(2), m(2), c(-1));
    let star = Superinvolution::new(&alg, star)?;
    Ok((alg, star))
}

/// A 3×3 matrix over B, entries stored row-major as coordinate vectors.
type BMatrix = Vec<Vec<Scalar>>;

/// Hermitian 3×3 matrices over `B` (entry `(j,i)` is `(entry (i,j))*`)
/// under `X∘Y = ½(XY + (-1)^{p(X)p(Y)} YX)`.
///
/// Basis: `E_ii(s)` for `s` in a basis of the star-fixed part of B, then
/// `E_ij(b) + E_ji(b*)` for `i < j` and `b` in the basis of B.
pub fn h3(b: &SuperAlgebra, star: &Superinvolution) -> Result<SuperAlgebra> {
    let field = b.field();
    let nb = b.dim();
    let zero_entry = vec![field.zero(); nb];
    let mut basis: Vec<(BMatrix, Parity, String)> = Vec::new();

    // Star-fixed vectors of each parity.
    let mut fixed: Vec<(Vec<Scalar>, Parity)> = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let idx = b.indices_of(p);
        let mut eq = Matrix::zeros(field, nb, idx.len());
        for (c, &i) in idx.iter().enumerate() {
            let img = star.map().image_of_basis(i);
            for r in 0..nb {
                let v = &img.coords()[r] - &(if r == i { field.one() } else { field.zero() });
                eq.set(r, c, v);
            }
        }
        for v in eq.kernel().vectors() {
            let mut full = zero_entry.clone();
            for (c, &i) in idx.iter().enumerate() {
                full[i] = v[c].clone();
            }
            fixed.push((full, p));
        }
    }
    let entry_name = |v: &[Scalar]| b.format(&b.element(v.to_vec()).expect("valid"));
    for d in 0..3 {
        for (v, p) in &fixed {
            let mut x = vec![zero_entry.clone(); 9];
            x[d * 3 + d] = v.clone();
            basis.push((x, *p, format!("E{}{}({})", d + 1, d + 1, entry_name(v))));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for k in 0..nb {
            let mut x = vec![zero_entry.clone(); 9];
            x[i * 3 + j] = b.basis(k).into_coords();
            x[j * 3 + i] = star.map().image_of_basis(k).into_coords();
            basis.push((x, b.parity(k), format!("E{}{}({})", i + 1, j + 1, b.name(k))));
        }
    }

    let flat = |x: &BMatrix| -> Vec<Scalar> { x.iter().flatten().cloned().collect() };
    let span = SubspaceBasis::from_vectors(
        field,
        9 * nb,
        &basis.iter().map(|(x, _, _)| flat(x)).collect::<Vec<_>>(),
    )?;
    if span.dim() != basis.len() {
        return Err(Error::Internal("hermitian basis is dependent".into()));
    }
    // Coordinates relative to our basis, via the RREF span.
    let to_rref: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|(x, _, _)| span.coordinates(&flat(x)).expect("member"))
        .collect();
    let coord_change = Matrix::from_rows(field, to_rref)?.transpose();
    let coord_change_inv = invert(&coord_change)?;

    let matmul = |x: &BMatrix, y: &BMatrix| -> BMatrix {
        let mut out = vec![zero_entry.clone(); 9];
        for r in 0..3 {
            for c in 0..3 {
                for m in 0..3 {
                    let prod = b.mul_coords(&x[r * 3 + m], &y[m * 3 + c]);
                    for (o, p) in out[r * 3 + c].iter_mut().zip(prod) {
                        *o = &*o + &p;
                    }
                }
            }
        }
        out
    };
    let half = field.half();
    let dim = basis.len();
    let mut entries = Vec::new();
    for u in 0..dim {
        for v in 0..dim {
            let (x, px, _) = &basis[u];
            let (y, py, _) = &basis[v];
            let xy = flat(&matmul(x, y));
            let yx = flat(&matmul(y, x));
            let sym: Vec<Scalar> = xy
                .iter()
                .zip(&yx)
                .map(|(a, c)| &half * &(if px.koszul(*py) { a - c } else { a + c }))
                .collect();
            if sym.iter().all(Scalar::is_zero) {
                continue;
            }
            let Some(rc) = span.coordinates(&sym) else {
                return Err(Error::Superinvolution(
                    "symmetrized product left the hermitian matrices".into(),
                ));
            };
            let coords = coord_change_inv.mul_vec(&rc)?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((u, v, k, c));
                }
            }
        }
    }
    let parity = basis.iter().map(|(_, p, _)| *p).collect();
    let names = basis.into_iter().map(|(_, _, s)| s).collect();
    SuperAlgebra::new(field, parity, Some(names), entries)
}

fn invert(m: &Matrix) -> Result<Matrix> {
    let n = m.rows();
    let field = m.field();
    let mut aug = Matrix::zeros(field, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, field.one());
    }
    let (red, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Internal("singular change of basis".into()));
    }
    let mut inv = Matrix::zeros(field, n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, red.get(r, n + c).clone());
        }
    }
    Ok(inv)
}
