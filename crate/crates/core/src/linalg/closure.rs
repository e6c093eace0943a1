use std::collections::VecDeque;

use super::{EchelonBuilder, LinalgError, Matrix, SubspaceBasis};
use crate::scalar::{FieldDesc, Scalar};

/// Smallest subspace containing `seeds` and invariant under every operator.
pub fn spin(
    field: FieldDesc,
    dim: usize,
    seeds: &[Vec<Scalar>],
    operators: &[Matrix],
) -> Result<SubspaceBasis, LinalgError> {
    for op in operators {
        if op.rows() != dim || op.cols() != dim {
            return Err(LinalgError::Dimension {
                expected: dim,
                got: op.rows().max(op.cols()),
            });
        }
        if op.field() != field {
            return Err(LinalgError::Field(field, op.field()));
        }
    }
    let mut span = EchelonBuilder::new(field, dim);
    let mut queue = VecDeque::new();
    for s in seeds {
        if s.len() != dim {
            return Err(LinalgError::Dimension {
                expected: dim,
                got: s.len(),
            });
        }
        if span.push_dense(s) {
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if span.rank() == dim {
            break;
        }
        for op in operators {
            let w = op.mul_vec(&v)?;
            if span.push_dense(&w) {
                queue.push_back(w);
            }
        }
    }
    Ok(SubspaceBasis::from_builder(&span))
}

/// The unital associative algebra generated by square matrices, as a
/// subspace of the flattened (row-major) `n x n` matrix space.
pub fn operator_closure(field: FieldDesc, n: usize, generators: &[Matrix]) -> Result<SubspaceBasis, LinalgError> {
    for g in generators {
        if g.rows() != g.cols() {
            return Err(LinalgError::NotSquare(g.rows(), g.cols()));
        }
        if g.rows() != n {
            return Err(LinalgError::Dimension {
                expected: n,
                got: g.rows(),
            });
        }
        if g.field() != field {
            return Err(LinalgError::Field(field, g.field()));
        }
    }
    let mut span = EchelonBuilder::new(field, n * n);
    let mut queue = VecDeque::new();
    let id = Matrix::identity(field, n);
    span.push_dense(id.as_flat());
    queue.push_back(id);
    // Every word in the generators is reached by left multiplication.
    while let Some(m) = queue.pop_front() {
        if span.rank() == n * n {
            break;
        }
        for g in generators {
            let w = g.mul(&m)?;
            if span.push_dense(w.as_flat()) {
                queue.push_back(w);
            }
        }
    }
    Ok(SubspaceBasis::from_builder(&span))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDesc = FieldDesc::Rationals;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Q.zero(); n];
        v[i] = Q.one();
        v
    }

    #[test]
    fn spin_examples() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(spin(Q, 3, &[e(3, 0)], std::slice::from_ref(&id)).unwrap().dim(), 1);

        // e0 -> e1 -> e2 -> e0
        let shift = Matrix::from_i64(Q, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(spin(Q, 3, &[e(3, 0)], std::slice::from_ref(&shift)).unwrap().dim(), 3);
        assert_eq!(spin(Q, 3, &[], &[shift]).unwrap().dim(), 0);
    }

    #[test]
    fn spin_result_is_invariant() {
        let a = Matrix::from_i64(Q, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 3]]);
        let s = spin(Q, 4, &[e(4, 1)], std::slice::from_ref(&a)).unwrap();
        assert_eq!(s.dim(), 2);
        for v in s.vectors() {
            assert!(s.contains(&a.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn closure_examples() {
        let id = Matrix::identity(Q, 2);
        assert_eq!(operator_closure(Q, 2, &[id]).unwrap().dim(), 1);
        let d = Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]);
        assert_eq!(operator_closure(Q, 2, &[d]).unwrap().dim(), 2);
        let e12 = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(Q, &[&[0, 0], &[1, 0]]);
        assert_eq!(operator_closure(Q, 2, &[e12, e21]).unwrap().dim(), 4);
    }

    #[test]
    fn closure_is_product_closed() {
        let e12 = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let d = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 5]]);
        let c = operator_closure(Q, 3, &[e12, d]).unwrap();
        let mats: Vec<Matrix> = c
            .vectors()
            .iter()
            .map(|v| Matrix::from_flat(Q, 3, 3, v.clone()).unwrap())
            .collect();
        for a in &mats {
            for b in &mats {
                assert!(c.contains(a.mul(b).unwrap().as_flat()));
            }
        }
    }

    #[test]
    fn mismatched_sizes_error() {
        let id2 = Matrix::identity(Q, 2);
        assert!(spin(Q, 3, &[e(3, 0)], std::slice::from_ref(&id2)).is_err());
        assert!(operator_closure(Q, 3, &[id2]).is_err());
        let rect = Matrix::zeros(Q, 2, 3);
        assert!(matches!(operator_closure(Q, 2, &[rect]), Err(LinalgError::NotSquare(2, 3))));
    }
}
