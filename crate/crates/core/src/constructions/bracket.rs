use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{signed, Element, SuperAlgebra};

use super::{grassmann, grassmann_masks, Derivation};

/// A graded bilinear bracket `{·,·}` on a superalgebra Γ.
///
/// The table is stored as a [`SuperAlgebra`] on Γ's graded space, so the
/// grading `{Γ_i, Γ_j} ⊆ Γ_{i+j}` is enforced on construction. Super-skewness
/// is a property to check ([`Bracket::skew_violation`]), not an invariant,
/// so that malformed brackets can still be loaded and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    gamma: SuperAlgebra,
    table: SuperAlgebra,
}

impl Bracket {
    /// Builds `{e_i, e_j} = Σ c·e_k` from `(i, j, k, c)` contributions.
    pub fn new(
        gamma: &SuperAlgebra,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let table = SuperAlgebra::new(
            gamma.field(),
            gamma.parities().to_vec(),
            Some(gamma.names().to_vec()),
            entries,
        )?;
        Ok(Bracket {
            gamma: gamma.clone(),
            table,
        })
    }

    /// Wraps a bracket table given as an algebra on the same graded space.
    pub fn from_table(gamma: &SuperAlgebra, table: SuperAlgebra) -> Result<Self> {
        if table.field() != gamma.field() || table.parities() != gamma.parities() {
            return Err(Error::BracketMismatch);
        }
        let table = table.with_names(gamma.names().to_vec())?;
        Ok(Bracket {
            gamma: gamma.clone(),
            table,
        })
    }

    pub fn zero(gamma: &SuperAlgebra) -> Self {
        Bracket::new(gamma, []).expect("empty table")
    }

    pub fn gamma(&self) -> &SuperAlgebra {
        &self.gamma
    }

    /// The bracket viewed as a product on Γ's space.
    pub fn table(&self) -> &SuperAlgebra {
        &self.table
    }

    pub fn term(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.table.product(i, j)
    }

    pub fn apply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.table.multiply(a, b)
    }

    /// First basis pair with `{e_i,e_j} ≠ -(-1)^{p(i)p(j)} {e_j,e_i}`.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        let n = self.table.dim();
        for i in 0..n {
            for j in i..n {
                let negate = !self.table.parity(i).koszul(self.table.parity(j));
                let rhs: Vec<(usize, Scalar)> = self
                    .term(j, i)
                    .iter()
                    .map(|(k, c)| (*k, signed(negate, c)))
                    .collect();
                if self.term(i, j) != rhs.as_slice() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_super_skew(&self) -> bool {
        self.skew_violation().is_none()
    }
}

/// `{a,b} = D(a)b - aD(b)`.
pub fn vector_bracket(gamma: &SuperAlgebra, d: &Derivation) -> Result<Bracket> {
    let n = gamma.dim();
    if d.matrix().rows() != n {
        return Err(Error::Dimension {
            expected: n,
            got: d.matrix().rows(),
        });
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|c| d.image(c)).collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let l = gamma.mul_basis_right(&images[i], j);
            let r = gamma.mul_basis_left(i, &images[j]);
            for (k, (x, y)) in l.iter().zip(&r).enumerate() {
                let c = x - y;
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    Bracket::new(gamma, entries)
}

/// The Poisson bracket `{f,g} = (-1)^{p(f)+1} Σ_i ∂_i(f) ∂_i(g)` on `G(n)`,
/// with left derivatives `∂_i(ξ_S) = (-1)^{#{s∈S : s<i}} ξ_{S∖i}`.
///
/// The sign makes the bracket super-skew, with `{ξ_i, ξ_i} = 1`.
pub fn poisson_grassmann(n: usize, field: crate::scalar::FieldDesc) -> Result<Bracket> {
    if n == 0 {
        return Err(Error::Parameter("the Poisson bracket needs n >= 1".into()));
    }
    if n > super::MAX_GRASSMANN_GENERATORS {
        return Err(Error::Parameter(format!("G({n}) is too large")));
    }
    let g = grassmann(n, field);
    let masks = grassmann_masks(n);
    let mut index = vec![0; 1 << n];
    for (i, m) in masks.iter().enumerate() {
        index[*m] = i;
    }
    let below = |s: usize, b: usize| (s & ((1 << b) - 1)).count_ones();
    let mut entries = Vec::new();
    for (u, &s) in masks.iter().enumerate() {
        for (v, &t) in masks.iter().enumerate() {
            let common = s & t;
            for b in (0..n).filter(|b| common >> b & 1 == 1) {
                let flips = below(s, b) + below(t, b) + s.count_ones() + 1;
                let sign = flips % 2 == 1;
                let (ls, lt) = (index[s & !(1 << b)], index[t & !(1 << b)]);
                for (k, c) in g.product(ls, lt) {
                    entries.push((u, v, *k, signed(sign, c)));
                }
            }
        }
    }
    Bracket::new(&g, entries)
}

/// The Kantor double `J(Γ, {,}) = Γ ⊕ Γx`.
///
/// `a·b = ab`, `a·bx = (ab)x`, `ax·b = (-1)^{p(b)} (ab)x`,
/// `ax·bx = (-1)^{p(b)} {a,b}`. Basis: Γ's basis, then `e_i x`;
/// `p(e_i x) = p(e_i) + 1`.
pub fn kantor_double(gamma: &SuperAlgebra, br: &Bracket) -> Result<SuperAlgebra> {
    if br.gamma() != gamma {
        return Err(Error::BracketMismatch);
    }
    if gamma.find_unit().is_none() {
        return Err(Error::NotUnital);
    }
    let n = gamma.dim();
    let mut parity = gamma.parities().to_vec();
    parity.extend(gamma.parities().iter().map(|p| *p + crate::superalgebra::Parity::Odd));
    let mut names = gamma.names().to_vec();
    names.extend(gamma.names().iter().map(|s| if s == "1" { "x".to_string() } else { format!("{s} x") }));
    let mut entries = Vec::new();
    for (i, j, t) in gamma.nonzero_products() {
        let negate = gamma.parity(j).is_odd();
        for (k, c) in t {
            entries.push((i, j, *k, c.clone()));
            entries.push((i, n + j, n + *k, c.clone()));
            entries.push((n + i, j, n + *k, signed(negate, c)));
        }
    }
    for (i, j, t) in br.table().nonzero_products() {
        let negate = gamma.parity(j).is_odd();
        for (k, c) in t {
            entries.push((n + i, n + j, *k, signed(negate, c)));
        }
    }
    SuperAlgebra::new(gamma.field(), parity, Some(names), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::truncated_poly;
    use crate::scalar::FieldDesc;
    use crate::superalgebra::{verify_superidentity, SuperIdentity};

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn b1_bracket(p: u64) -> (SuperAlgebra, Bracket) {
        let b = truncated_poly(1, p).unwrap();
        let d = b.partial_derivative(1).unwrap();
        let br = vector_bracket(b.algebra(), &d).unwrap();
        (b.into_algebra(), br)
    }

    #[test]
    fn vector_bracket_examples() {
        let (g, br) = b1_bracket(3);
        let one = g.basis(0);
        let a = g.basis(1);
        let a2 = g.basis(2);
        assert_eq!(br.apply(&one, &a).unwrap(), one.scale(&-f(3).one()));
        assert!(br.apply(&a, &a).unwrap().is_zero());
        assert_eq!(br.apply(&a, &a2).unwrap(), a2.scale(&f(3).from_i64(2)));
        assert!(br.is_super_skew());
    }

    #[test]
    fn poisson_examples() {
        let br = poisson_grassmann(2, FieldDesc::Rationals).unwrap();
        let g = br.gamma();
        let x = |s: &str| g.basis(g.names().iter().position(|n| n == s).unwrap());
        assert_eq!(br.apply(&x("ξ1"), &x("ξ1")).unwrap(), x("1"));
        assert!(br.apply(&x("1"), &x("ξ1ξ2")).unwrap().is_zero());
        let v = br.apply(&x("ξ1ξ2"), &x("ξ1")).unwrap();
        assert_eq!(v, x("ξ2").scale(&-FieldDesc::Rationals.one()));
        assert!(br.is_super_skew());
    }

    #[test]
    fn flipped_bracket_is_not_skew() {
        let b = truncated_poly(1, 3).unwrap();
        let g = b.algebra();
        let d = b.partial_derivative(1).unwrap();
        let mut entries = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let l = g.mul_basis_right(&d.image(i), j);
                let r = g.mul_basis_left(i, &d.image(j));
                for (k, (x, y)) in l.iter().zip(&r).enumerate() {
                    entries.push((i, j, k, x + y));
                }
            }
        }
        let br = Bracket::new(g, entries).unwrap();
        assert_eq!(br.skew_violation(), Some((0, 1)));
    }

    #[test]
    fn kantor_double_examples() {
        for p in [3, 5] {
            let (g, br) = b1_bracket(p);
            let j = kantor_double(&g, &br).unwrap();
            assert_eq!(j.dim(), 2 * p as usize);
            let x = |s: &str| j.basis(j.names().iter().position(|n| n == s).unwrap());
            assert_eq!(j.multiply(&x("1"), &x("x")).unwrap(), x("x"));
            assert_eq!(j.multiply(&x("x"), &x("1")).unwrap(), x("x"));
            assert_eq!(j.multiply(&x("x"), &x("a x")).unwrap(), x("1").scale(&-f(p).one()));
            assert!(j.multiply(&x("a x"), &x("a x")).unwrap().is_zero());
            assert_eq!(j.find_unit().unwrap(), x("1"));
            assert!(j.supercommutativity_violation().is_none());
            let r = verify_superidentity(&j, SuperIdentity::SupercommutativeJordan).unwrap();
            assert!(r.holds, "{:?}", r.witness);
        }
    }

    #[test]
    fn poisson_double_is_jordan() {
        let br = poisson_grassmann(2, FieldDesc::Rationals).unwrap();
        let j = kantor_double(br.gamma(), &br).unwrap();
        assert_eq!(j.dim(), 8);
        assert!(verify_superidentity(&j, SuperIdentity::SupercommutativeJordan).unwrap().holds);
    }

    #[test]
    fn kantor_double_errors() {
        let (g, br) = b1_bracket(3);
        let other = truncated_poly(1, 5).unwrap();
        assert_eq!(kantor_double(other.algebra(), &br), Err(Error::BracketMismatch));
        let zero = SuperAlgebra::new(f(3), g.parities().to_vec(), None, []).unwrap();
        let zb = Bracket::zero(&zero);
        assert_eq!(kantor_double(&zero, &zb), Err(Error::NotUnital));
    }
}
