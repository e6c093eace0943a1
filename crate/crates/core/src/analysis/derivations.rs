//! δ-(super)derivations, centroids and triviality reports.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Matrix, SubspaceBasis};
use crate::scalar::{FieldDesc, Scalar};
use crate::superalgebra::{LinearMap, Parity, SuperAlgebra};

/// Which maps are unknowns: all of them (plain δ-derivations), or the
/// homogeneous maps of one parity (δ-superderivations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapParity {
    Any,
    Even,
    Odd,
}

impl MapParity {
    pub fn homogeneous(self) -> Option<Parity> {
        match self {
            MapParity::Any => None,
            MapParity::Even => Some(Parity::Even),
            MapParity::Odd => Some(Parity::Odd),
        }
    }
}

impl From<Parity> for MapParity {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => MapParity::Even,
            Parity::Odd => MapParity::Odd,
        }
    }
}

impl fmt::Display for MapParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapParity::Any => "any",
            MapParity::Even => "even",
            MapParity::Odd => "odd",
        })
    }
}

/// A subspace of linear maps `A → A`, stored in coordinates over the
/// matrix entries allowed by the parity.
#[derive(Debug, Clone)]
pub struct MapSpace {
    n: usize,
    parity: MapParity,
    unknowns: Vec<(usize, usize)>,
    basis: SubspaceBasis,
}

fn allowed_entries(alg: &SuperAlgebra, parity: MapParity) -> Vec<(usize, usize)> {
    let n = alg.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let ok = match parity.homogeneous() {
                None => true,
                Some(p) => alg.parity(r) == alg.parity(c) + p,
            };
            if ok {
                out.push((r, c));
            }
        }
    }
    out
}

impl MapSpace {
    pub fn parity(&self) -> MapParity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Entry positions `(row, col)` that are coordinates of this space.
    pub fn unknowns(&self) -> &[(usize, usize)] {
        &self.unknowns
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    fn to_matrix(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.basis.field(), self.n, self.n);
        for ((r, c), s) in self.unknowns.iter().zip(v) {
            if !s.is_zero() {
                m.set(*r, *c, s.clone());
            }
        }
        m
    }

    /// Coordinates of a matrix in this space's unknowns, or `None` if it has
    /// a nonzero entry outside them.
    fn coords_of(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let mut seen = 0usize;
        let v: Vec<Scalar> = self
            .unknowns
            .iter()
            .map(|(r, c)| {
                let s = m.get(*r, *c).clone();
                if !s.is_zero() {
                    seen += 1;
                }
                s
            })
            .collect();
        let total = m.as_flat().iter().filter(|s| !s.is_zero()).count();
        (seen == total).then_some(v)
    }

    /// Basis maps as `n × n` matrices (column `c` is the image of `e_c`).
    pub fn matrices(&self) -> Vec<Matrix> {
        self.basis.vectors().iter().map(|v| self.to_matrix(v)).collect()
    }

    /// Basis maps as homogeneous linear maps; fails for `MapParity::Any`.
    pub fn maps(&self, alg: &SuperAlgebra) -> Result<Vec<LinearMap>> {
        let p = self.parity.homogeneous().ok_or(Error::NotHomogeneous)?;
        self.matrices().into_iter().map(|m| LinearMap::new(alg, p, m)).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.rows() == self.n && self.coords_of(m).is_some_and(|v| self.basis.contains(&v))
    }

    /// The same subspace embedded in the full flattened `n²` matrix space.
    pub fn flattened(&self) -> SubspaceBasis {
        let vecs: Vec<Vec<Scalar>> = self.matrices().iter().map(|m| m.as_flat().to_vec()).collect();
        SubspaceBasis::from_vectors(self.basis.field(), self.n * self.n, &vecs).expect("sizes match")
    }

    fn intersection(&self, other: &MapSpace) -> MapSpace {
        debug_assert_eq!(self.unknowns, other.unknowns);
        MapSpace {
            n: self.n,
            parity: self.parity,
            unknowns: self.unknowns.clone(),
            basis: self.basis.intersection(&other.basis).expect("same ambient"),
        }
    }
}

/// One linear relation `a·φ(xy) + b·φ(x)y + c·(-1)^{p(x)p(φ)} xφ(y) = 0`.
struct Relation {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

fn solve(alg: &SuperAlgebra, parity: MapParity, relations: &[Relation]) -> MapSpace {
    let n = alg.dim();
    let unknowns = allowed_entries(alg, parity);
    let mut col_of = vec![usize::MAX; n * n];
    for (idx, (r, c)) in unknowns.iter().enumerate() {
        col_of[r * n + c] = idx;
    }
    let col = |r: usize, c: usize| -> Option<usize> {
        let v = col_of[r * n + c];
        (v != usize::MAX).then_some(v)
    };
    let mut sys = EchelonBuilder::new(alg.field(), unknowns.len());
    let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    'outer: for rel in relations {
        for i in 0..n {
            let sign_odd = match parity.homogeneous() {
                Some(p) => alg.parity(i).koszul(p),
                None => false,
            };
            let c_signed = if sign_odd { -&rel.c } else { rel.c.clone() };
            for j in 0..n {
                rows.clear();
                if !rel.a.is_zero() {
                    for (l, s) in alg.product(i, j) {
                        let coef = &rel.a * s;
                        for k in 0..n {
                            if let Some(u) = col(k, *l) {
                                rows.entry(k).or_default().push((u, coef.clone()));
                            }
                        }
                    }
                }
                if !rel.b.is_zero() {
                    for r in 0..n {
                        if let Some(u) = col(r, i) {
                            for (k, s) in alg.product(r, j) {
                                rows.entry(*k).or_default().push((u, &rel.b * s));
                            }
                        }
                    }
                }
                if !c_signed.is_zero() {
                    for r in 0..n {
                        if let Some(u) = col(r, j) {
                            for (k, s) in alg.product(i, r) {
                                rows.entry(*k).or_default().push((u, &c_signed * s));
                            }
                        }
                    }
                }
                for row in rows.values() {
                    sys.push(row);
                }
                if sys.rank() == unknowns.len() {
                    break 'outer;
                }
            }
        }
    }
    let field = alg.field();
    let null = sys.rref().null_space(field);
    let basis = SubspaceBasis::from_vectors(field, unknowns.len(), &null).expect("sizes match");
    MapSpace {
        n,
        parity,
        unknowns,
        basis,
    }
}

fn check_field(alg: &SuperAlgebra, s: &Scalar) -> Result<()> {
    if s.field() != alg.field() {
        return Err(Error::Field(alg.field(), s.field()));
    }
    Ok(())
}

fn delta_relation(field: FieldDesc, delta: &Scalar) -> Relation {
    Relation {
        a: field.one(),
        b: -delta,
        c: -delta,
    }
}

/// All linear maps with `φ(xy) = δ(φ(x)y + xφ(y))`.
pub fn delta_derivations(alg: &SuperAlgebra, delta: &Scalar) -> Result<MapSpace> {
    check_field(alg, delta)?;
    Ok(solve(alg, MapParity::Any, &[delta_relation(alg.field(), delta)]))
}

/// Homogeneous maps of parity `π` with
/// `φ(xy) = δ(φ(x)y + (-1)^{p(x)π} xφ(y))`.
pub fn delta_superderivations(alg: &SuperAlgebra, delta: &Scalar, parity: Parity) -> Result<MapSpace> {
    check_field(alg, delta)?;
    Ok(solve(alg, parity.into(), &[delta_relation(alg.field(), delta)]))
}

/// Solver dispatch on [`MapParity`].
pub fn delta_space(alg: &SuperAlgebra, delta: &Scalar, parity: MapParity) -> Result<MapSpace> {
    match parity.homogeneous() {
        None => delta_derivations(alg, delta),
        Some(p) => delta_superderivations(alg, delta, p),
    }
}

fn centroid_relations(field: FieldDesc) -> [Relation; 2] {
    [
        Relation {
            a: field.one(),
            b: -field.one(),
            c: field.zero(),
        },
        Relation {
            a: field.one(),
            b: field.zero(),
            c: -field.one(),
        },
    ]
}

/// Maps with `χ(ab) = χ(a)b = aχ(b)`.
pub fn centroid(alg: &SuperAlgebra) -> MapSpace {
    solve(alg, MapParity::Any, &centroid_relations(alg.field()))
}

/// Homogeneous maps of parity `π` with `χ(ab) = χ(a)b = (-1)^{p(a)π} aχ(b)`.
pub fn supercentroid(alg: &SuperAlgebra, parity: Parity) -> MapSpace {
    solve(alg, parity.into(), &centroid_relations(alg.field()))
}

fn centroid_space(alg: &SuperAlgebra, parity: MapParity) -> MapSpace {
    match parity.homogeneous() {
        None => centroid(alg),
        Some(p) => supercentroid(alg, p),
    }
}

/// Checks the δ-relation for a matrix on every basis pair; `sign_parity`
/// selects the Koszul sign of a homogeneous map (`None` for plain maps).
fn satisfies(alg: &SuperAlgebra, m: &Matrix, delta: &Scalar, sign_parity: Option<Parity>) -> bool {
    let n = alg.dim();
    let images: Vec<Vec<Scalar>> = (0..n).map(|c| m.column(c)).collect();
    for i in 0..n {
        let negate = sign_parity.is_some_and(|p| alg.parity(i).koszul(p));
        for j in 0..n {
            let mut lhs = vec![alg.field().zero(); n];
            for (l, s) in alg.product(i, j) {
                for (r, v) in images[*l].iter().enumerate() {
                    lhs[r] = &lhs[r] + &(v * s);
                }
            }
            let a = alg.mul_basis_right(&images[i], j);
            let b = alg.mul_basis_left(i, &images[j]);
            for r in 0..n {
                let second = if negate { -&b[r] } else { b[r].clone() };
                if lhs[r] != delta * &(&a[r] + &second) {
                    return false;
                }
            }
        }
    }
    true
}

/// Pointwise check of `f(xy) = δ(f(x)y + (-1)^{p(x)p(f)} xf(y))`.
pub fn is_delta_superderivation(alg: &SuperAlgebra, f: &LinearMap, delta: &Scalar) -> Result<bool> {
    check_field(alg, delta)?;
    if f.matrix().rows() != alg.dim() {
        return Err(Error::Dimension {
            expected: alg.dim(),
            got: f.matrix().rows(),
        });
    }
    Ok(satisfies(alg, f.matrix(), delta, Some(f.parity())))
}

/// Pointwise check of `φ(xy) = δ(φ(x)y + xφ(y))` for an arbitrary matrix.
pub fn is_delta_derivation(alg: &SuperAlgebra, m: &Matrix, delta: &Scalar) -> Result<bool> {
    check_field(alg, delta)?;
    if m.rows() != alg.dim() || m.cols() != alg.dim() {
        return Err(Error::Dimension {
            expected: alg.dim(),
            got: m.rows(),
        });
    }
    Ok(satisfies(alg, m, delta, None))
}

/// Split of a δ-(super)derivation space into trivial and nontrivial parts.
#[derive(Debug, Clone)]
pub struct TrivialityReport {
    pub delta: Scalar,
    pub parity: MapParity,
    pub space_dim: usize,
    pub trivial_dim: usize,
    pub nontrivial_dim: usize,
    /// Representatives of a basis of the quotient by the trivial part.
    pub nontrivial_generators: Vec<Matrix>,
}

/// Solves for the δ-space and splits off the (super)centroid part.
///
/// For `δ ∈ {0, 1}` every solution counts as trivial.
pub fn classify(alg: &SuperAlgebra, delta: &Scalar, parity: MapParity) -> Result<TrivialityReport> {
    let space = delta_space(alg, delta, parity)?;
    let field = alg.field();
    let degenerate = delta.is_zero() || delta == &field.one();
    let trivial = if degenerate {
        space.clone()
    } else {
        space.intersection(&centroid_space(alg, parity))
    };
    let mut span = trivial.basis().builder();
    let mut nontrivial_generators = Vec::new();
    for v in space.basis().vectors() {
        if span.push_dense(v) {
            nontrivial_generators.push(space.to_matrix(v));
        }
    }
    Ok(TrivialityReport {
        delta: delta.clone(),
        parity,
        space_dim: space.dim(),
        trivial_dim: trivial.dim(),
        nontrivial_dim: space.dim() - trivial.dim(),
        nontrivial_generators,
    })
}
