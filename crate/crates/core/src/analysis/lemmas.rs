use crate::constructions::Bracket;
use crate::error::Result;
use crate::linalg::{EchelonBuilder, SubspaceBasis};
use crate::scalar::Scalar;
use crate::superalgebra::Parity;

use super::brackets::{phi_from_ctx, sub, Ctx, GradedSubspace};

/// Highest power of D used by the `D^k(α)` identity.
const MAX_POWER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const PRODUCT_SPAN: &str = "product span";
pub const PHI_D_STABLE: &str = "phi stable under D";
pub const D_POWER_IDENTITY: &str = "D^k(alpha) identity";
pub const D_COMPATIBLE: &str = "D compatible with bracket";
pub const KERNEL_INVERTIBLE: &str = "phi kernel invertible";

fn check(name: &'static str, witness: Option<String>) -> LemmaCheck {
    LemmaCheck {
        name,
        holds: witness.is_none(),
        witness,
    }
}

/// Structural properties expected of a Jordan bracket whose double is simple:
/// `Γ{Γ,Γ} = Γ`, `D(Φ) ⊆ Φ`, `D^k(α){b,c} = D^k(α)(D(b)c - bD(c))`,
/// `D{b,c} = {Db,c} + {b,Dc}`, and every nonzero `α ∈ Φ` with `D(α) = 0`
/// is even and invertible.
pub fn lemma_suite(gamma: &crate::superalgebra::SuperAlgebra, br: &Bracket) -> Result<LemmaReport> {
    let ctx = Ctx::new(gamma, br)?;
    let phi = phi_from_ctx(&ctx);
    let checks = vec![
        check(PRODUCT_SPAN, product_span(&ctx)),
        check(PHI_D_STABLE, phi_stable(&ctx, &phi)),
        check(D_POWER_IDENTITY, power_identity(&ctx, &phi)),
        check(D_COMPATIBLE, compatibility(&ctx)),
        check(KERNEL_INVERTIBLE, kernel_invertible(&ctx, &phi)?),
    ];
    Ok(LemmaReport { checks })
}

fn product_span(ctx: &Ctx) -> Option<String> {
    let n = ctx.n();
    let mut span = EchelonBuilder::new(ctx.gamma.field(), n);
    'outer: for j in 0..n {
        for k in 0..n {
            let b = ctx.bracket(&ctx.basis(j), &ctx.basis(k));
            for i in 0..n {
                span.push_dense(&ctx.mul(&ctx.basis(i), &b));
                if span.rank() == n {
                    break 'outer;
                }
            }
        }
    }
    (span.rank() < n).then(|| format!("dim Γ{{Γ,Γ}} = {} < {}", span.rank(), n))
}

fn phi_stable(ctx: &Ctx, phi: &GradedSubspace) -> Option<String> {
    for (_, a) in phi.elements(ctx.gamma) {
        let d = ctx.der(a.coords());
        let image = ctx.gamma.element(d).expect("dimension");
        if !phi.contains(ctx.gamma, &image) {
            return Some(format!(
                "D({}) = {} is not in Φ",
                ctx.gamma.format(&a),
                ctx.gamma.format(&image)
            ));
        }
    }
    None
}

fn power_identity(ctx: &Ctx, phi: &GradedSubspace) -> Option<String> {
    let n = ctx.n();
    for (_, a) in phi.elements(ctx.gamma) {
        let mut dk = a.coords().to_vec();
        for k in 1..=MAX_POWER {
            dk = ctx.der(&dk);
            if dk.iter().all(Scalar::is_zero) {
                break;
            }
            for b in 0..n {
                for c in 0..n {
                    let (eb, ec) = (ctx.basis(b), ctx.basis(c));
                    let lhs = ctx.mul(&dk, &ctx.bracket(&eb, &ec));
                    let inner = sub(&ctx.mul(&ctx.d[b], &ec), &ctx.mul(&eb, &ctx.d[c]));
                    let res = sub(&lhs, &ctx.mul(&dk, &inner));
                    if !res.iter().all(Scalar::is_zero) {
                        return Some(format!(
                            "α = {}, k = {k}, (b, c) = ({}, {}): residual {}",
                            ctx.gamma.format(&a),
                            ctx.gamma.name(b),
                            ctx.gamma.name(c),
                            ctx.format(&res)
                        ));
                    }
                }
            }
        }
    }
    None
}

fn compatibility(ctx: &Ctx) -> Option<String> {
    let n = ctx.n();
    for b in 0..n {
        for c in 0..n {
            let (eb, ec) = (ctx.basis(b), ctx.basis(c));
            let lhs = ctx.der(&ctx.bracket(&eb, &ec));
            let rhs = super::brackets::add(&ctx.bracket(&ctx.d[b], &ec), &ctx.bracket(&eb, &ctx.d[c]));
            let res = sub(&lhs, &rhs);
            if !res.iter().all(Scalar::is_zero) {
                return Some(format!(
                    "(b, c) = ({}, {}): residual {}",
                    ctx.gamma.name(b),
                    ctx.gamma.name(c),
                    ctx.format(&res)
                ));
            }
        }
    }
    None
}

fn kernel_invertible(ctx: &Ctx, phi: &GradedSubspace) -> Result<Option<String>> {
    let gamma = ctx.gamma;
    let n = ctx.n();
    let d = ctx.d_matrix();
    let kernel = d.kernel();
    for p in [Parity::Even, Parity::Odd] {
        let part: &SubspaceBasis = phi.part(p);
        if part.dim() == 0 {
            continue;
        }
        let meet = part.intersection(&kernel)?;
        for v in meet.vectors() {
            let a = gamma.element(v.clone())?;
            if p.is_odd() {
                return Ok(Some(format!("{} is odd", gamma.format(&a))));
            }
            if gamma.left_mult(&a)?.matrix().rank() < n {
                return Ok(Some(format!("{} is not invertible", gamma.format(&a))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{poisson_grassmann, truncated_poly, vector_bracket};
    use crate::scalar::FieldDesc;

    #[test]
    fn vector_bracket_passes_everything() {
        for (m, p) in [(1, 3), (1, 5), (2, 3)] {
            let b = truncated_poly(m, p).unwrap();
            let br = vector_bracket(b.algebra(), &b.special_derivation().unwrap()).unwrap();
            let r = lemma_suite(b.algebra(), &br).unwrap();
            assert!(r.all_hold(), "B({m}) p={p}: {r:?}");
        }
    }

    #[test]
    fn poisson_passes() {
        let br = poisson_grassmann(2, FieldDesc::Rationals).unwrap();
        assert!(lemma_suite(br.gamma(), &br).unwrap().all_hold());
    }

    #[test]
    fn zero_bracket_fails_product_span() {
        let b = truncated_poly(1, 3).unwrap();
        let r = lemma_suite(b.algebra(), &Bracket::zero(b.algebra())).unwrap();
        let c = r.get(PRODUCT_SPAN).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.as_deref(), Some("dim Γ{Γ,Γ} = 0 < 3"));
        // Φ is all of Γ and ker D too, so a is a non-invertible kernel element.
        assert!(!r.get(KERNEL_INVERTIBLE).unwrap().holds);
    }
}
