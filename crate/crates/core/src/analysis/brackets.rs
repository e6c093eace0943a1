//! Validators and invariants of brackets on supercommutative algebras.

use std::fmt;

use crate::constructions::{Bracket, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{subspace_compare, Comparison, EchelonBuilder, Matrix, SubspaceBasis};
use crate::scalar::Scalar;
use crate::superalgebra::{verify_superidentity, Element, Parity, SuperAlgebra, SuperIdentity};

use super::derivations::delta_superderivations;

/// A subspace of algebra elements split into its even and odd parts.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    pub even: SubspaceBasis,
    pub odd: SubspaceBasis,
}

impl GradedSubspace {
    pub fn part(&self, p: Parity) -> &SubspaceBasis {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    /// Whether both homogeneous components of `e` lie in the subspace.
    pub fn contains(&self, alg: &SuperAlgebra, e: &Element) -> bool {
        let split = |p: Parity| -> Vec<Scalar> {
            e.coords()
                .iter()
                .enumerate()
                .map(|(i, c)| if alg.parity(i) == p { c.clone() } else { alg.field().zero() })
                .collect()
        };
        self.even.contains(&split(Parity::Even)) && self.odd.contains(&split(Parity::Odd))
    }

    /// Homogeneous basis elements, even ones first.
    pub fn elements(&self, alg: &SuperAlgebra) -> Vec<(Parity, Element)> {
        let mut out = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            for v in self.part(p).vectors() {
                out.push((p, alg.element(v.clone()).expect("ambient matches")));
            }
        }
        out
    }
}

/// Why a bracket check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketWitness {
    pub law: &'static str,
    pub args: Vec<String>,
    /// Left side minus right side, rendered with basis names.
    pub residual: String,
}

impl fmt::Display for BracketWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}): residual {}", self.law, self.args.join(", "), self.residual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub holds: bool,
    pub witness: Option<BracketWitness>,
}

impl BracketCheck {
    fn pass() -> Self {
        BracketCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(w: BracketWitness) -> Self {
        BracketCheck {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Evaluation helpers on coordinate vectors of Γ.
pub(crate) struct Ctx<'a> {
    pub gamma: &'a SuperAlgebra,
    pub br: &'a Bracket,
    pub unit: Vec<Scalar>,
    /// `D(e_i) = {e_i, 1}`.
    pub d: Vec<Vec<Scalar>>,
}

impl<'a> Ctx<'a> {
    pub fn new(gamma: &'a SuperAlgebra, br: &'a Bracket) -> Result<Self> {
        if br.gamma() != gamma {
            return Err(Error::BracketMismatch);
        }
        let unit = gamma.find_unit().ok_or(Error::NotUnital)?.into_coords();
        let mut ctx = Ctx {
            gamma,
            br,
            unit,
            d: Vec::new(),
        };
        ctx.d = (0..gamma.dim())
            .map(|i| ctx.bracket(&ctx.basis(i), &ctx.unit))
            .collect();
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.gamma.dim()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.gamma.field().zero(); self.n()]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        self.gamma.basis(i).into_coords()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.gamma.mul_coords(a, b)
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.br.table().mul_coords(a, b)
    }

    /// `D(v) = {v, 1}`.
    pub fn der(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.d[i]) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    pub fn d_matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(self.gamma.field(), n, n);
        for (c, col) in self.d.iter().enumerate() {
            for (r, s) in col.iter().enumerate() {
                m.set(r, c, s.clone());
            }
        }
        m
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        self.gamma.format(&self.gamma.element(v.to_vec()).expect("dimension"))
    }
}

pub(crate) fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn sign(negate: bool, v: Vec<Scalar>) -> Vec<Scalar> {
    if negate {
        v.iter().map(|x| -x).collect()
    } else {
        v
    }
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// The map `a ↦ {a, 1}`, validated as a derivation of Γ.
pub fn bracket_derivation(gamma: &SuperAlgebra, br: &Bracket) -> Result<Derivation> {
    let ctx = Ctx::new(gamma, br)?;
    Derivation::new(gamma, ctx.d_matrix())
}

/// `Φ = {α homogeneous : {α,a} = D(α)a - αD(a) for all a}` with `D(a) = {a,1}`.
pub fn compute_phi(gamma: &SuperAlgebra, br: &Bracket) -> Result<GradedSubspace> {
    let ctx = Ctx::new(gamma, br)?;
    Ok(phi_from_ctx(&ctx))
}

pub(crate) fn phi_from_ctx(ctx: &Ctx) -> GradedSubspace {
    let gamma = ctx.gamma;
    let n = ctx.n();
    let field = gamma.field();
    let mut parts = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let idx = gamma.indices_of(p);
        // Column t of the defect for basis vector e_{idx[t]} paired with e_j.
        let mut sys = EchelonBuilder::new(field, idx.len());
        for j in 0..n {
            let ej = ctx.basis(j);
            let dj = &ctx.d[j];
            let cols: Vec<Vec<Scalar>> = idx
                .iter()
                .map(|&i| {
                    let ei = ctx.basis(i);
                    let lhs = ctx.bracket(&ei, &ej);
                    let rhs = sub(&ctx.mul(&ctx.d[i], &ej), &ctx.mul(&ei, dj));
                    sub(&lhs, &rhs)
                })
                .collect();
            for k in 0..n {
                let row: Vec<(usize, Scalar)> = cols
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c[k].is_zero())
                    .map(|(t, c)| (t, c[k].clone()))
                    .collect();
                if !row.is_empty() {
                    sys.push(&row);
                }
            }
        }
        let null = sys.rref().null_space(field);
        let embedded: Vec<Vec<Scalar>> = null
            .into_iter()
            .map(|v| {
                let mut full = vec![field.zero(); n];
                for (t, &i) in idx.iter().enumerate() {
                    full[i] = v[t].clone();
                }
                full
            })
            .collect();
        parts.push(SubspaceBasis::from_vectors(field, n, &embedded).expect("sizes match"));
    }
    let odd = parts.pop().expect("two parts");
    let even = parts.pop().expect("two parts");
    GradedSubspace { even, odd }
}

fn names(gamma: &SuperAlgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| gamma.name(i).to_string()).collect()
}

fn skew_check(ctx: &Ctx) -> Option<BracketWitness> {
    let (i, j) = ctx.br.skew_violation()?;
    let gamma = ctx.gamma;
    let negate = !gamma.parity(i).koszul(gamma.parity(j));
    let l = ctx.bracket(&ctx.basis(i), &ctx.basis(j));
    let r = sign(negate, ctx.bracket(&ctx.basis(j), &ctx.basis(i)));
    Some(BracketWitness {
        law: "super-skewness",
        args: names(gamma, &[i, j]),
        residual: ctx.format(&sub(&l, &r)),
    })
}

/// `{a,bc} - {a,b}c - (-1)^{p(a)p(b)} b{a,c} + t·{a,1}bc` on basis triples,
/// with `t = 1` for the Jordan form and `t = 0` for the Poisson form.
fn leibniz_check(ctx: &Ctx, with_d: bool, law: &'static str) -> Option<BracketWitness> {
    let gamma = ctx.gamma;
    let n = ctx.n();
    for a in 0..n {
        let ea = ctx.basis(a);
        for b in 0..n {
            let eb = ctx.basis(b);
            let ab = ctx.bracket(&ea, &eb);
            for c in 0..n {
                let ec = ctx.basis(c);
                let bc = ctx.mul(&eb, &ec);
                let lhs = ctx.bracket(&ea, &bc);
                let mut rhs = ctx.mul(&ab, &ec);
                let term = ctx.mul(&eb, &ctx.bracket(&ea, &ec));
                rhs = add(&rhs, &sign(gamma.parity(a).koszul(gamma.parity(b)), term));
                if with_d {
                    rhs = sub(&rhs, &ctx.mul(&ctx.d[a], &bc));
                }
                let res = sub(&lhs, &rhs);
                if !is_zero(&res) {
                    return Some(BracketWitness {
                        law,
                        args: names(gamma, &[a, b, c]),
                        residual: ctx.format(&res),
                    });
                }
            }
        }
    }
    None
}

/// The second bracket identity of a Jordan bracket:
/// `{a,{b,c}} = {{a,b},c} + (-1)^{p(a)p(b)}{b,{a,c}} + {a,1}{b,c}
///   + (-1)^{p(a)(p(b)+p(c))}{b,1}{c,a} + (-1)^{p(c)(p(a)+p(b))}{c,1}{a,b}`.
fn jacobi_check(ctx: &Ctx) -> Option<BracketWitness> {
    let gamma = ctx.gamma;
    let n = ctx.n();
    let p = |i: usize| gamma.parity(i);
    for a in 0..n {
        let ea = ctx.basis(a);
        for b in 0..n {
            let eb = ctx.basis(b);
            let ab = ctx.bracket(&ea, &eb);
            for c in 0..n {
                let ec = ctx.basis(c);
                let bc = ctx.bracket(&eb, &ec);
                let lhs = ctx.bracket(&ea, &bc);
                let mut rhs = ctx.bracket(&ab, &ec);
                let t2 = ctx.bracket(&eb, &ctx.bracket(&ea, &ec));
                rhs = add(&rhs, &sign(p(a).koszul(p(b)), t2));
                rhs = add(&rhs, &ctx.mul(&ctx.d[a], &bc));
                let t4 = ctx.mul(&ctx.d[b], &ctx.bracket(&ec, &ea));
                rhs = add(&rhs, &sign(p(a).koszul(p(b) + p(c)), t4));
                let t5 = ctx.mul(&ctx.d[c], &ab);
                rhs = add(&rhs, &sign(p(c).koszul(p(a) + p(b)), t5));
                let res = sub(&lhs, &rhs);
                if !is_zero(&res) {
                    return Some(BracketWitness {
                        law: "bracket Jacobi rule",
                        args: names(gamma, &[a, b, c]),
                        residual: ctx.format(&res),
                    });
                }
            }
        }
    }
    None
}

fn require_supercommutative(gamma: &SuperAlgebra) -> Result<()> {
    if gamma.supercommutativity_violation().is_some() {
        return Err(Error::Requirement("supercommutative"));
    }
    Ok(())
}

/// Super-skewness plus both Jordan bracket identities on basis triples.
///
/// Γ must be unital and supercommutative; associativity is assumed.
pub fn is_jordan_bracket(gamma: &SuperAlgebra, br: &Bracket) -> Result<BracketCheck> {
    require_supercommutative(gamma)?;
    let ctx = Ctx::new(gamma, br)?;
    let w = skew_check(&ctx)
        .or_else(|| leibniz_check(&ctx, true, "bracket Leibniz rule"))
        .or_else(|| jacobi_check(&ctx));
    Ok(w.map_or_else(BracketCheck::pass, BracketCheck::fail))
}

/// The Leibniz rule without the `{a,1}` term, plus the Lie superalgebra laws
/// for the bracket (checked on generic elements).
pub fn is_poisson_bracket(gamma: &SuperAlgebra, br: &Bracket) -> Result<BracketCheck> {
    require_supercommutative(gamma)?;
    let ctx = Ctx::new(gamma, br)?;
    if let Some(w) = leibniz_check(&ctx, false, "Poisson Leibniz rule") {
        return Ok(BracketCheck::fail(w));
    }
    let lie = verify_superidentity(br.table(), SuperIdentity::Lie)?;
    Ok(match lie.witness {
        None => BracketCheck::pass(),
        Some(w) => BracketCheck::fail(BracketWitness {
            law: "Lie superalgebra laws",
            args: Vec::new(),
            residual: w.to_string(),
        }),
    })
}

/// Comparison of the ½-superderivations of a Kantor double with a space of
/// left multiplications.
#[derive(Debug, Clone)]
pub struct RSpaceReport {
    pub parity: Parity,
    pub solver_dim: usize,
    pub multiplication_dim: usize,
    pub comparison: Comparison,
}

impl RSpaceReport {
    pub fn equal(&self) -> bool {
        self.comparison.relation == crate::linalg::Inclusion::Equal
    }
}

/// Embeds an element of Γ into the first `dim Γ` coordinates of the double.
fn embed(j: &SuperAlgebra, gamma: &SuperAlgebra, v: &[Scalar]) -> Element {
    let mut coords = vec![j.field().zero(); j.dim()];
    coords[..gamma.dim()].clone_from_slice(v);
    j.element(coords).expect("dimension")
}

fn compare_with_multiplications(
    j: &SuperAlgebra,
    gamma: &SuperAlgebra,
    parity: Parity,
    generators: &[Vec<Scalar>],
) -> Result<RSpaceReport> {
    if j.dim() != 2 * gamma.dim() || j.field() != gamma.field() {
        return Err(Error::BracketMismatch);
    }
    let half = j.field().half();
    let solver = delta_superderivations(j, &half, parity)?.flattened();
    let mut flats = Vec::new();
    for v in generators {
        let r = j.left_mult(&embed(j, gamma, v))?;
        flats.push(r.matrix().as_flat().to_vec());
    }
    let mult = SubspaceBasis::from_vectors(j.field(), j.dim() * j.dim(), &flats)?;
    Ok(RSpaceReport {
        parity,
        solver_dim: solver.dim(),
        multiplication_dim: mult.dim(),
        comparison: subspace_compare(&solver, &mult)?,
    })
}

/// Compares the even ½-superderivations of `j = J(Γ, br)` with
/// `span{R_z : z ∈ Γ₀}`.
pub fn check_r_space(j: &SuperAlgebra, gamma: &SuperAlgebra, br: &Bracket) -> Result<RSpaceReport> {
    if br.gamma() != gamma {
        return Err(Error::BracketMismatch);
    }
    let gens: Vec<Vec<Scalar>> = gamma
        .indices_of(Parity::Even)
        .into_iter()
        .map(|i| gamma.basis(i).into_coords())
        .collect();
    compare_with_multiplications(j, gamma, Parity::Even, &gens)
}

/// Compares the parity-`π` ½-superderivations of `j = J(Γ, br)` with
/// `span{R_α : α ∈ Φ_π}`.
pub fn check_phi_space(
    j: &SuperAlgebra,
    gamma: &SuperAlgebra,
    br: &Bracket,
    parity: Parity,
) -> Result<RSpaceReport> {
    let phi = compute_phi(gamma, br)?;
    compare_with_multiplications(j, gamma, parity, phi.part(parity).vectors())
}
