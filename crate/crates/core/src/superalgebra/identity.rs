//! Checks graded identities by evaluating them on generic elements of the
//! Grassmann envelope, i.e. over free supercommutative coefficients.

use std::fmt;

use crate::error::Result;
use crate::scalar::Scalar;

use super::poly::{FreeSuperPoly, Var};
use super::SuperAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuperIdentity {
    Associative,
    /// Supercommutativity plus `(x²y)x = x²(yx)` in the envelope.
    SupercommutativeJordan,
    Alternative,
    /// Super-anticommutativity plus the super Jacobi identity.
    Lie,
}

impl fmt::Display for SuperIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuperIdentity::Associative => "associative",
            SuperIdentity::SupercommutativeJordan => "jordan",
            SuperIdentity::Alternative => "alternative",
            SuperIdentity::Lie => "lie",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Two basis vectors whose products differ by more than the Koszul sign.
    NotSupercommutative { left: String, right: String },
    /// A surviving coefficient of the identity evaluated on generic elements.
    Polynomial {
        law: &'static str,
        coordinate: String,
        monomial: String,
        coefficient: Scalar,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotSupercommutative { left, right } => {
                write!(f, "{left}·{right} != ±{right}·{left}")
            }
            Witness::Polynomial {
                law,
                coordinate,
                monomial,
                coefficient,
            } => write!(
                f,
                "{law}: coefficient {coefficient} of {monomial} in coordinate {coordinate}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: SuperIdentity,
    pub holds: bool,
    pub witness: Option<Witness>,
}

type Generic = Vec<FreeSuperPoly>;

const SLOTS: [&str; 3] = ["x", "y", "z"];

struct Envelope<'a> {
    alg: &'a SuperAlgebra,
}

impl<'a> Envelope<'a> {
    fn generic(&self, slot: usize) -> Generic {
        let n = self.alg.dim();
        (0..n)
            .map(|i| FreeSuperPoly::var(self.alg.field(), Var::new((slot * n + i) as u32, self.alg.parity(i))))
            .collect()
    }

    fn mul(&self, u: &Generic, v: &Generic) -> Result<Generic> {
        let alg = self.alg;
        let mut out: Generic = (0..alg.dim()).map(|_| FreeSuperPoly::zero(alg.field())).collect();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let negate = alg.parity(i).koszul(alg.parity(j));
                for (k, c) in alg.product(i, j) {
                    let c = if negate { -c } else { c.clone() };
                    out[*k].add_product(ui, vj, &c)?;
                }
            }
        }
        Ok(out)
    }

    fn sub(&self, u: &Generic, v: &Generic) -> Generic {
        let minus = -self.alg.field().one();
        u.iter()
            .zip(v)
            .map(|(a, b)| {
                let mut d = a.clone();
                d.add_scaled(b, &minus);
                d
            })
            .collect()
    }

    fn add(&self, u: &Generic, v: &Generic) -> Generic {
        let one = self.alg.field().one();
        u.iter()
            .zip(v)
            .map(|(a, b)| {
                let mut d = a.clone();
                d.add_scaled(b, &one);
                d
            })
            .collect()
    }

    fn witness(&self, law: &'static str, g: &Generic) -> Option<Witness> {
        let n = self.alg.dim();
        for (k, poly) in g.iter().enumerate() {
            if let Some((m, c)) = poly.sorted_terms().into_iter().next() {
                let monomial = FreeSuperPoly::format_monomial(m, |v| {
                    let idx = v.index() as usize;
                    format!("{}[{}]", SLOTS[idx / n], self.alg.name(idx % n))
                });
                return Some(Witness::Polynomial {
                    law,
                    coordinate: self.alg.name(k).to_string(),
                    monomial,
                    coefficient: c.clone(),
                });
            }
        }
        None
    }
}

/// Decides whether `alg` satisfies the graded version of `identity`.
pub fn verify_superidentity(alg: &SuperAlgebra, identity: SuperIdentity) -> Result<IdentityReport> {
    let env = Envelope { alg };
    let report = |witness: Option<Witness>| IdentityReport {
        identity,
        holds: witness.is_none(),
        witness,
    };
    let x = env.generic(0);
    let y = env.generic(1);
    match identity {
        SuperIdentity::Associative => {
            let z = env.generic(2);
            let l = env.mul(&env.mul(&x, &y)?, &z)?;
            let r = env.mul(&x, &env.mul(&y, &z)?)?;
            Ok(report(env.witness("associativity", &env.sub(&l, &r))))
        }
        SuperIdentity::SupercommutativeJordan => {
            if let Some((i, j)) = alg.supercommutativity_violation() {
                return Ok(report(Some(Witness::NotSupercommutative {
                    left: alg.name(i).to_string(),
                    right: alg.name(j).to_string(),
                })));
            }
            let x2 = env.mul(&x, &x)?;
            let l = env.mul(&env.mul(&x2, &y)?, &x)?;
            let r = env.mul(&x2, &env.mul(&y, &x)?)?;
            Ok(report(env.witness("jordan identity", &env.sub(&l, &r))))
        }
        SuperIdentity::Alternative => {
            let xx = env.mul(&x, &x)?;
            let yy = env.mul(&y, &y)?;
            let xy = env.mul(&x, &y)?;
            let left = env.sub(&env.mul(&xx, &y)?, &env.mul(&x, &xy)?);
            if let Some(w) = env.witness("left alternativity", &left) {
                return Ok(report(Some(w)));
            }
            let right = env.sub(&env.mul(&xy, &y)?, &env.mul(&x, &yy)?);
            Ok(report(env.witness("right alternativity", &right)))
        }
        SuperIdentity::Lie => {
            let xx = env.mul(&x, &x)?;
            if let Some(w) = env.witness("anticommutativity", &xx) {
                return Ok(report(Some(w)));
            }
            let z = env.generic(2);
            let a = env.mul(&env.mul(&x, &y)?, &z)?;
            let b = env.mul(&env.mul(&y, &z)?, &x)?;
            let c = env.mul(&env.mul(&z, &x)?, &y)?;
            let sum = env.add(&env.add(&a, &b), &c);
            Ok(report(env.witness("jacobi identity", &sum)))
        }
    }
}
