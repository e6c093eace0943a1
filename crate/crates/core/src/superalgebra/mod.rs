//! ℤ₂-graded algebras given by sparse structure constants.

mod identity;
mod ops;
mod poly;

pub use identity::{verify_superidentity, IdentityReport, SuperIdentity, Witness};
pub use ops::{envelope, plus, tensor_super};
pub use poly::{FreeSuperPoly, Monomial, Var, DEGREE_BOUND};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldDesc, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{p·q}` as a boolean "negate".
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    // addition in ℤ₂
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Applies a Koszul sign to a scalar.
pub(crate) fn signed(negate: bool, s: &Scalar) -> Scalar {
    if negate {
        -s
    } else {
        s.clone()
    }
}

/// A finite-dimensional superalgebra `A = A₀ ⊕ A₁` with basis `e_0..e_{n-1}`.
///
/// `product(i, j)` lists the nonzero `(k, c)` with `e_i·e_j = Σ c·e_k`;
/// absent entries mean a zero product. Every stored constant respects the
/// grading.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    field: FieldDesc,
    parity: Vec<Parity>,
    names: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl SuperAlgebra {
    /// Builds an algebra from `(i, j, k, c)` contributions, summing repeats.
    pub fn new(
        field: FieldDesc,
        parity: Vec<Parity>,
        names: Option<Vec<String>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = parity.len();
        if n == 0 {
            return Err(Error::Parameter("a superalgebra needs dimension >= 1".into()));
        }
        let names = match names {
            Some(v) if v.len() != n => {
                return Err(Error::Dimension {
                    expected: n,
                    got: v.len(),
                })
            }
            Some(v) => v,
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n * n];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(Error::Index { index: idx, dim: n });
                }
            }
            if c.field() != field {
                return Err(Error::Field(field, c.field()));
            }
            if c.is_zero() {
                continue;
            }
            let slot = acc[i * n + j].entry(k).or_insert_with(|| field.zero());
            *slot = &*slot + &c;
        }
        let mut table = Vec::with_capacity(n * n);
        for (idx, m) in acc.into_iter().enumerate() {
            let (i, j) = (idx / n, idx % n);
            let terms: Vec<(usize, Scalar)> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            for (k, _) in &terms {
                if parity[*k] != parity[i] + parity[j] {
                    return Err(Error::Grading { i, j, k: *k });
                }
            }
            table.push(terms);
        }
        Ok(SuperAlgebra {
            field,
            parity,
            names,
            table,
        })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    /// Structure constants of `e_i·e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero basis products `(i, j, terms)` in row-major order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Scalar)])> {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(move |(idx, t)| (idx / n, idx % n, t.as_slice()))
    }

    pub fn indices_of(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == p).collect()
    }

    pub fn even_dim(&self) -> usize {
        self.indices_of(Parity::Even).len()
    }

    pub fn odd_dim(&self) -> usize {
        self.indices_of(Parity::Odd).len()
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut coords = vec![self.field.zero(); self.dim()];
        coords[i] = self.field.one();
        Element { coords }
    }

    pub fn zero_element(&self) -> Element {
        Element {
            coords: vec![self.field.zero(); self.dim()],
        }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        if let Some(s) = coords.iter().find(|s| s.field() != self.field) {
            return Err(Error::Field(self.field, s.field()));
        }
        Ok(Element { coords })
    }

    pub(crate) fn check_element(&self, e: &Element) -> Result<()> {
        if e.coords.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: e.coords.len(),
            });
        }
        match e.coords.first() {
            Some(s) if s.field() != self.field => Err(Error::Field(self.field, s.field())),
            _ => Ok(()),
        }
    }

    /// Bilinear product of two elements.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(Element {
            coords: self.mul_coords(&u.coords, &v.coords),
        })
    }

    pub(crate) fn mul_coords(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let t = self.product(i, j);
                if t.is_empty() {
                    continue;
                }
                let uv = ui * vj;
                for (k, c) in t {
                    out[*k] = &out[*k] + &(&uv * c);
                }
            }
        }
        out
    }

    /// `e_i · v` for a basis element on the left.
    pub(crate) fn mul_basis_left(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] = &out[*k] + &(vj * c);
            }
        }
        out
    }

    /// `v · e_j` for a basis element on the right.
    pub(crate) fn mul_basis_right(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] = &out[*k] + &(vi * c);
            }
        }
        out
    }

    /// Renders an element with basis names, e.g. `2·a^2 + x`.
    pub fn format(&self, e: &Element) -> String {
        let parts: Vec<String> = e
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[i].clone()
                } else {
                    format!("{}·{}", c, self.names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// First basis pair violating `e_i e_j = (-1)^{p(i)p(j)} e_j e_i`.
    pub fn supercommutativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let negate = self.parity[i].koszul(self.parity[j]);
                let lhs = self.product(i, j);
                let rhs: Vec<(usize, Scalar)> = self
                    .product(j, i)
                    .iter()
                    .map(|(k, c)| (*k, signed(negate, c)))
                    .collect();
                if lhs != rhs.as_slice() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Solves `u·e_i = e_i = e_i·u` for all `i`.
    pub fn find_unit(&self) -> Option<Element> {
        use crate::linalg::EchelonBuilder;
        let n = self.dim();
        // Unknowns u_0..u_{n-1} and a homogenizing t at column n.
        let mut sys = EchelonBuilder::new(self.field, n + 1);
        for i in 0..n {
            for side in 0..2 {
                let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
                for m in 0..n {
                    let t = if side == 0 { self.product(m, i) } else { self.product(i, m) };
                    for (k, c) in t {
                        rows[*k].push((m, c.clone()));
                    }
                }
                rows[i].push((n, -self.field.one()));
                for row in rows {
                    sys.push(&row);
                }
            }
        }
        let rref = sys.rref();
        if rref.pivots.contains(&n) {
            return None;
        }
        if rref.pivots.len() != n {
            return None;
        }
        let mut coords = vec![self.field.zero(); n];
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if let Some((_, s)) = row.iter().find(|(c, _)| *c == n) {
                coords[p] = -s;
            }
        }
        Some(Element { coords })
    }

    /// The left multiplication `y ↦ z·y`.
    pub fn left_mult(&self, z: &Element) -> Result<LinearMap> {
        self.check_element(z)?;
        let parity = z.homogeneous_parity(self).ok_or(Error::NotHomogeneous)?;
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for c in 0..n {
            let col = self.mul_coords(&z.coords, &self.basis(c).coords);
            for (r, s) in col.into_iter().enumerate() {
                m.set(r, c, s);
            }
        }
        LinearMap::new(self, parity, m)
    }
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SuperAlgebra(dim {} = {}|{} over {})",
            self.dim(),
            self.even_dim(),
            self.odd_dim(),
            self.field
        )
    }
}

/// A coordinate vector over an algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Parity of a homogeneous element; `Some(Even)` for zero, `None` when
    /// both parts are nonzero.
    pub fn homogeneous_parity(&self, alg: &SuperAlgebra) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(alg.parity(i)),
                Some(p) if p != alg.parity(i) => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn add(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }
}

/// A homogeneous linear endomorphism; column `c` of the matrix is the image
/// of `e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    parity: Parity,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(alg: &SuperAlgebra, parity: Parity, matrix: Matrix) -> Result<Self> {
        let n = alg.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: matrix.rows().max(matrix.cols()),
            });
        }
        if matrix.field() != alg.field() {
            return Err(Error::Field(alg.field(), matrix.field()));
        }
        for r in 0..n {
            for c in 0..n {
                if !matrix.get(r, c).is_zero() && alg.parity(r) != alg.parity(c) + parity {
                    return Err(Error::MapParity { row: r, col: c });
                }
            }
        }
        Ok(LinearMap { parity, matrix })
    }

    pub fn identity(alg: &SuperAlgebra) -> Self {
        LinearMap {
            parity: Parity::Even,
            matrix: Matrix::identity(alg.field(), alg.dim()),
        }
    }

    pub fn zero(alg: &SuperAlgebra, parity: Parity) -> Self {
        LinearMap {
            parity,
            matrix: Matrix::zeros(alg.field(), alg.dim(), alg.dim()),
        }
    }

    /// Builds the map from the images of the basis vectors.
    pub fn from_images(alg: &SuperAlgebra, parity: Parity, images: &[Element]) -> Result<Self> {
        let n = alg.dim();
        if images.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: images.len(),
            });
        }
        let mut m = Matrix::zeros(alg.field(), n, n);
        for (c, img) in images.iter().enumerate() {
            alg.check_element(img)?;
            for (r, s) in img.coords().iter().enumerate() {
                m.set(r, c, s.clone());
            }
        }
        LinearMap::new(alg, parity, m)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, e: &Element) -> Element {
        Element {
            coords: self.matrix.mul_vec(e.coords()).expect("dimension checked"),
        }
    }

    pub fn image_of_basis(&self, c: usize) -> Element {
        Element {
            coords: self.matrix.column(c),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            parity: self.parity + other.parity,
            matrix: self.matrix.mul(&other.matrix).expect("same size"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grassmann, truncated_poly};

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn grading_is_enforced() {
        let q = FieldDesc::Rationals;
        let r = SuperAlgebra::new(
            q,
            vec![Parity::Even, Parity::Odd],
            None,
            vec![(0, 1, 0, q.one())],
        );
        assert_eq!(r, Err(Error::Grading { i: 0, j: 1, k: 0 }));
    }

    #[test]
    fn zero_constants_are_dropped() {
        let q = FieldDesc::Rationals;
        let a = SuperAlgebra::new(
            q,
            vec![Parity::Even],
            None,
            vec![(0, 0, 0, q.one()), (0, 0, 0, -q.one())],
        )
        .unwrap();
        assert!(a.product(0, 0).is_empty());
        assert_eq!(a.nonzero_products().count(), 0);
    }

    #[test]
    fn grassmann_products_anticommute() {
        let g = grassmann(2, FieldDesc::Rationals);
        let x1 = g.basis(1);
        let x2 = g.basis(2);
        let a = g.multiply(&x1, &x2).unwrap();
        let b = g.multiply(&x2, &x1).unwrap();
        assert_eq!(g.format(&a), "ξ1ξ2");
        assert_eq!(b, a.scale(&-FieldDesc::Rationals.one()));
    }

    #[test]
    fn truncation_kills_cube() {
        let b = truncated_poly(1, 3).unwrap();
        let alg = b.algebra();
        let a = alg.basis(1);
        let a2 = alg.basis(2);
        assert!(alg.multiply(&a, &a2).unwrap().is_zero());
        let unit = alg.find_unit().unwrap();
        assert_eq!(alg.multiply(&unit, &a2).unwrap(), a2);
    }

    #[test]
    fn unit_detection() {
        let g = grassmann(3, f(5));
        assert_eq!(g.find_unit().unwrap(), g.basis(0));
        let zero = SuperAlgebra::new(f(5), vec![Parity::Even; 2], None, vec![]).unwrap();
        assert!(zero.find_unit().is_none());
    }

    #[test]
    fn supercommutativity_examples() {
        assert!(grassmann(3, FieldDesc::Rationals).supercommutativity_violation().is_none());
        let m2 = crate::constructions::full_matrix_algebra(2, FieldDesc::Rationals);
        assert!(m2.supercommutativity_violation().is_some());
    }

    #[test]
    fn left_mult_examples() {
        let g = grassmann(2, f(3));
        let unit = g.find_unit().unwrap();
        assert_eq!(g.left_mult(&unit).unwrap(), LinearMap::identity(&g));
        let z = g.left_mult(&g.zero_element()).unwrap();
        assert!(z.matrix().is_zero());
        let mixed = g.basis(0).add(&g.basis(1));
        assert_eq!(g.left_mult(&mixed), Err(Error::NotHomogeneous));
        let l = g.left_mult(&g.basis(1)).unwrap();
        assert_eq!(l.parity(), Parity::Odd);
    }

    #[test]
    fn map_homogeneity_checked() {
        let g = grassmann(1, FieldDesc::Rationals);
        let mut m = Matrix::zeros(g.field(), 2, 2);
        m.set(1, 0, g.field().one());
        assert!(LinearMap::new(&g, Parity::Odd, m.clone()).is_ok());
        assert_eq!(
            LinearMap::new(&g, Parity::Even, m),
            Err(Error::MapParity { row: 1, col: 0 })
        );
    }
}
