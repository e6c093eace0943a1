use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::Bracket;
use crate::error::{Error, Result};
use crate::linalg::{operator_closure, spin, Matrix, SubspaceBasis};
use crate::scalar::Scalar;
use crate::superalgebra::{Parity, SuperAlgebra};

/// Random homogeneous seeds tried per parity after the basis vectors.
const RANDOM_SEEDS: usize = 8;

/// Outcome of the bracket-simplicity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplicityCertificate {
    /// The operators `L_a`, `{a,·}` generate all of `End(Γ)`.
    Simple { closure_dim: usize },
    /// A proper nonzero graded subspace stable under both families.
    NotSimple { witness: SubspaceBasis },
    /// Neither a full closure nor an invariant subspace was found.
    Unknown { closure_dim: usize },
}

impl SimplicityCertificate {
    pub fn verdict(&self) -> &'static str {
        match self {
            SimplicityCertificate::Simple { .. } => "simple",
            SimplicityCertificate::NotSimple { .. } => "not simple",
            SimplicityCertificate::Unknown { .. } => "unknown",
        }
    }
}

fn operators(gamma: &SuperAlgebra, br: &Bracket) -> Result<Vec<Matrix>> {
    let mut ops = Vec::with_capacity(2 * gamma.dim());
    for i in 0..gamma.dim() {
        let e = gamma.basis(i);
        ops.push(gamma.left_mult(&e)?.matrix().clone());
        ops.push(br.table().left_mult(&e)?.matrix().clone());
    }
    // Zero operators contribute nothing to either test.
    ops.retain(|m| !m.is_zero());
    Ok(ops)
}

/// Looks for a graded ideal `B` of Γ with `{Γ,B} ⊆ B`.
///
/// Full closure proves there is none. Otherwise spins basis vectors and
/// random homogeneous combinations (seeded) under the operators.
pub fn bracket_simple_certificate(gamma: &SuperAlgebra, br: &Bracket, seed: u64) -> Result<SimplicityCertificate> {
    if br.gamma() != gamma {
        return Err(Error::BracketMismatch);
    }
    let n = gamma.dim();
    let field = gamma.field();
    let ops = operators(gamma, br)?;
    let closure = operator_closure(field, n, &ops)?;
    if closure.dim() == n * n {
        return Ok(SimplicityCertificate::Simple {
            closure_dim: closure.dim(),
        });
    }
    let try_seed = |v: Vec<Scalar>| -> Result<Option<SubspaceBasis>> {
        let s = spin(field, n, &[v], &ops)?;
        Ok((s.dim() > 0 && s.dim() < n).then_some(s))
    };
    for i in 0..n {
        if let Some(w) = try_seed(gamma.basis(i).into_coords())? {
            return Ok(SimplicityCertificate::NotSimple { witness: w });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [Parity::Even, Parity::Odd] {
        let idx = gamma.indices_of(p);
        if idx.len() < 2 {
            continue;
        }
        for _ in 0..RANDOM_SEEDS {
            let mut v = vec![field.zero(); n];
            for &i in &idx {
                v[i] = field.from_i64(rng.gen_range(-3..=3));
            }
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            if let Some(w) = try_seed(v)? {
                return Ok(SimplicityCertificate::NotSimple { witness: w });
            }
        }
    }
    Ok(SimplicityCertificate::Unknown {
        closure_dim: closure.dim(),
    })
}
