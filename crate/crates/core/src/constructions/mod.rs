//! Named algebras, derivations, brackets and involutions.

mod bracket;
mod cheng_kac;
mod hermitian;

pub use bracket::{kantor_double, poisson_grassmann, vector_bracket, Bracket};
pub use cheng_kac::cheng_kac;
pub use hermitian::{b12, b42, h3};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldDesc, Scalar};
use crate::superalgebra::{tensor_super, Element, LinearMap, Parity, SuperAlgebra};

/// Largest number of Grassmann generators accepted by [`grassmann`].
pub const MAX_GRASSMANN_GENERATORS: usize = 12;
/// Largest dimension accepted for truncated polynomial algebras.
pub const MAX_TRUNCATED_DIM: usize = 4096;

fn subset_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("ξ{}", b + 1))
        .collect()
}

/// The Grassmann algebra on `n` odd generators.
///
/// Basis: subsets of generators ordered by size, then lexicographically.
///
/// # Panics
/// If `n` exceeds [`MAX_GRASSMANN_GENERATORS`].
pub fn grassmann(n: usize, field: FieldDesc) -> SuperAlgebra {
    assert!(n <= MAX_GRASSMANN_GENERATORS, "too many Grassmann generators");
    let masks = grassmann_masks(n);
    let mut index = vec![0; 1 << n];
    for (i, m) in masks.iter().enumerate() {
        index[*m] = i;
    }
    let parity = masks.iter().map(|m| Parity::from_bit(m.count_ones() as u8)).collect();
    let names = masks.iter().map(|m| subset_name(*m)).collect();
    let mut entries = Vec::new();
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // Each pair (a in s, b in t) with a > b costs one transposition.
            let swaps: u32 = (0..n).filter(|b| t >> b & 1 == 1).map(|b| (s >> (b + 1)).count_ones()).sum();
            let c = if swaps.is_multiple_of(2) { field.one() } else { -field.one() };
            entries.push((i, j, index[s | t], c));
        }
    }
    SuperAlgebra::new(field, parity, Some(names), entries).expect("grassmann table is graded")
}

/// Generator subsets (bit `b` = `ξ_{b+1}`) in basis order.
pub(crate) fn grassmann_masks(n: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (0..1usize << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), lex_key(*m, n)));
    masks
}

fn lex_key(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|b| mask >> b & 1 == 1).collect()
}

/// The associative algebra of `n × n` matrices, all even, basis `E_ij`.
pub fn full_matrix_algebra(n: usize, field: FieldDesc) -> SuperAlgebra {
    let idx = |i: usize, j: usize| i * n + j;
    let mut names = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                entries.push((idx(i, j), idx(j, l), idx(i, l), field.one()));
            }
        }
    }
    SuperAlgebra::new(field, vec![Parity::Even; n * n], Some(names), entries).expect("even table")
}

/// An even derivation `D(ab) = D(a)b + aD(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    map: LinearMap,
}

impl Derivation {
    /// Validates the Leibniz rule on every basis pair.
    pub fn new(alg: &SuperAlgebra, matrix: Matrix) -> Result<Self> {
        let map = LinearMap::new(alg, Parity::Even, matrix)?;
        let n = alg.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|c| map.matrix().column(c)).collect();
        for i in 0..n {
            for j in 0..n {
                let mut prod = vec![alg.field().zero(); n];
                for (k, c) in alg.product(i, j) {
                    for (r, s) in images[*k].iter().enumerate() {
                        prod[r] = &prod[r] + &(s * c);
                    }
                }
                let rhs_a = alg.mul_basis_right(&images[i], j);
                let rhs_b = alg.mul_basis_left(i, &images[j]);
                let ok = prod
                    .iter()
                    .zip(rhs_a.iter().zip(&rhs_b))
                    .all(|(l, (a, b))| *l == a + b);
                if !ok {
                    return Err(Error::Leibniz { i, j });
                }
            }
        }
        Ok(Derivation { map })
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.matrix()
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.map.apply(e)
    }

    pub(crate) fn image(&self, c: usize) -> Vec<Scalar> {
        self.map.matrix().column(c)
    }
}

/// `B(m) = F_p[a_1..a_m | a_i^p = 0]` together with its monomial indexing.
///
/// Monomial `a^α` has index `Σ α_i p^{i-1}`.
#[derive(Debug, Clone)]
pub struct TruncatedPoly {
    m: usize,
    p: u64,
    algebra: SuperAlgebra,
}

/// Builds `B(m)` over `F_p`.
pub fn truncated_poly(m: usize, p: u64) -> Result<TruncatedPoly> {
    let field = FieldDesc::prime(p)?;
    if m == 0 {
        return Err(Error::Parameter("B(m) needs m >= 1".into()));
    }
    let dim = (p as usize).checked_pow(m as u32).filter(|d| *d <= MAX_TRUNCATED_DIM);
    let Some(dim) = dim else {
        return Err(Error::Parameter(format!("B({m}) over F{p} is too large")));
    };
    let shape = TruncatedShape { m, p };
    let names = (0..dim).map(|i| shape.name(i)).collect();
    let mut entries = Vec::new();
    for i in 0..dim {
        let ai = shape.exponents(i);
        for j in 0..dim {
            let aj = shape.exponents(j);
            let sum: Vec<u64> = ai.iter().zip(&aj).map(|(x, y)| x + y).collect();
            if sum.iter().all(|e| *e < p) {
                entries.push((i, j, shape.index(&sum), field.one()));
            }
        }
    }
    let algebra = SuperAlgebra::new(field, vec![Parity::Even; dim], Some(names), entries)?;
    Ok(TruncatedPoly { m, p, algebra })
}

#[derive(Clone, Copy)]
struct TruncatedShape {
    m: usize,
    p: u64,
}

impl TruncatedShape {
    fn exponents(&self, mut idx: usize) -> Vec<u64> {
        let mut e = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            e.push(idx as u64 % self.p);
            idx /= self.p as usize;
        }
        e
    }

    fn index(&self, exps: &[u64]) -> usize {
        exps.iter().rev().fold(0, |acc, e| acc * self.p as usize + *e as usize)
    }

    fn name(&self, idx: usize) -> String {
        let e = self.exponents(idx);
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, x)| **x > 0)
            .map(|(i, x)| {
                let var = if self.m == 1 { "a".to_string() } else { format!("a{}", i + 1) };
                if *x == 1 {
                    var
                } else {
                    format!("{var}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl TruncatedPoly {
    fn shape(&self) -> TruncatedShape {
        TruncatedShape { m: self.m, p: self.p }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> SuperAlgebra {
        self.algebra
    }

    /// Exponent vector of basis monomial `idx`.
    pub fn exponents(&self, idx: usize) -> Vec<u64> {
        self.shape().exponents(idx)
    }

    /// Basis index of `a^exps`; `None` if an exponent reaches `p`.
    pub fn index_of(&self, exps: &[u64]) -> Option<usize> {
        if exps.len() != self.m || exps.iter().any(|e| *e >= self.p) {
            return None;
        }
        Some(self.shape().index(exps))
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.m {
            return Err(Error::Parameter(format!(
                "variable index {i} outside 1..={}",
                self.m
            )));
        }
        Ok(())
    }

    /// `∂/∂a_i` with `i` counted from 1.
    pub fn partial_derivative(&self, i: usize) -> Result<Derivation> {
        self.check_var(i)?;
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let mut mat = Matrix::zeros(field, n, n);
        for c in 0..n {
            let mut e = self.exponents(c);
            if e[i - 1] > 0 {
                let coeff = field.from_i64(e[i - 1] as i64);
                e[i - 1] -= 1;
                mat.set(self.shape().index(&e), c, coeff);
            }
        }
        Derivation::new(&self.algebra, mat)
    }

    /// `Σ_k (a_1⋯a_{k-1})^{p-1} ∂_k`.
    ///
    /// Equals `∂` for `m = 1`. Its kernel is `F·1` for every `m`, so
    /// `B(m)` has no proper invariant ideals under it.
    pub fn special_derivation(&self) -> Result<Derivation> {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let mut mat = Matrix::zeros(field, n, n);
        for k in 1..=self.m {
            let d = self.partial_derivative(k)?;
            let mut coef = vec![0u64; self.m];
            for c in coef.iter_mut().take(k - 1) {
                *c = self.p - 1;
            }
            let g = self.shape().index(&coef);
            for c in 0..n {
                let image = d.image(c);
                let shifted = self.algebra.mul_basis_left(g, &image);
                for (r, s) in shifted.into_iter().enumerate() {
                    if !s.is_zero() {
                        let v = mat.get(r, c) + &s;
                        mat.set(r, c, v);
                    }
                }
            }
        }
        Derivation::new(&self.algebra, mat)
    }
}

/// `B(m,n) = B(m) ⊗ G(n)`.
pub fn b_mn(m: usize, n: usize, p: u64) -> Result<SuperAlgebra> {
    if n > MAX_GRASSMANN_GENERATORS {
        return Err(Error::Parameter(format!("G({n}) is too large")));
    }
    let b = truncated_poly(m, p)?;
    let g = grassmann(n, b.algebra().field());
    tensor_super(b.algebra(), &g)
}

/// An even map with `(a*)* = a` and `(ab)* = (-1)^{p(a)p(b)} b*a*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superinvolution {
    map: LinearMap,
}

impl Superinvolution {
    pub fn new(alg: &SuperAlgebra, matrix: Matrix) -> Result<Self> {
        let map = LinearMap::new(alg, Parity::Even, matrix)?;
        if map.compose(&map) != LinearMap::identity(alg) {
            return Err(Error::Superinvolution("the map is not an involution".into()));
        }
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = map.apply(&alg.multiply(&alg.basis(i), &alg.basis(j))?);
                let mut rhs = alg.multiply(&map.image_of_basis(j), &map.image_of_basis(i))?;
                if alg.parity(i).koszul(alg.parity(j)) {
                    rhs = rhs.scale(&-alg.field().one());
                }
                if lhs != rhs {
                    return Err(Error::Superinvolution(format!(
                        "({}·{})* differs from ±{}*·{}*",
                        alg.name(i),
                        alg.name(j),
                        alg.name(j),
                        alg.name(i)
                    )));
                }
            }
        }
        Ok(Superinvolution { map })
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.map.apply(e)
    }
}
