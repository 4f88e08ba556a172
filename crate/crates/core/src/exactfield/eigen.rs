use super::field::FieldElement;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// One simultaneous eigenspace: basis columns and one eigenvalue per operator.
#[derive(Clone, Debug)]
pub struct JointEigenspace {
    pub eigenvalues: Vec<FieldElement>,
    pub basis: Matrix,
}

/// Eigenspaces of a single split semisimple operator restricted to nothing.
fn eigen_split(op: &Matrix) -> Result<Vec<(FieldElement, Matrix)>> {
    let ctx = op.ctx();
    let n = op.rows();
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in ctx.elements() {
        let shifted = op.sub(&Matrix::identity(ctx, n).scale(lambda));
        let k = shifted.kernel();
        if k.cols() > 0 {
            total += k.cols();
            out.push((lambda, k));
        }
        if total == n {
            break;
        }
    }
    if total != n {
        return Err(Error::EnlargeField);
    }
    Ok(out)
}

/// Decompose `F^n` into simultaneous eigenspaces of pairwise commuting,
/// diagonalizable operators.
pub fn joint_eigenspaces(ops: &[Matrix]) -> Result<Vec<JointEigenspace>> {
    let first = ops.first().ok_or_else(|| Error::InvalidArgument("no operators".into()))?;
    let n = first.rows();
    let ctx = first.ctx();
    for (i, a) in ops.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::Shape("operators must be square of equal size".into()));
        }
        for b in &ops[i + 1..] {
            if !a.commutator(b).is_zero() {
                return Err(Error::NonCommuting);
            }
        }
    }
    let mut parts = vec![JointEigenspace { eigenvalues: vec![], basis: Matrix::identity(ctx, n) }];
    for op in ops {
        let mut next = Vec::new();
        for part in parts {
            // restriction of op to the invariant subspace spanned by part.basis
            let image = op.mul(&part.basis);
            let restricted = part
                .basis
                .coordinates(&image)
                .ok_or_else(|| Error::InvalidArgument("subspace not invariant".into()))?;
            for (lambda, k) in eigen_split(&restricted)? {
                let mut ev = part.eigenvalues.clone();
                ev.push(lambda);
                next.push(JointEigenspace { eigenvalues: ev, basis: part.basis.mul(&k) });
            }
        }
        parts = next;
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldCtx;

    #[test]
    fn identity_has_one_eigenspace() {
        let f = FieldCtx::new(3, 2).unwrap();
        let parts = joint_eigenspaces(&[Matrix::identity(f, 4)]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].eigenvalues, vec![f.one()]);
        assert_eq!(parts[0].basis.cols(), 4);
    }

    #[test]
    fn non_split_operator_is_rejected() {
        // x^2 + 1 has no root over F_3
        let f = FieldCtx::new(3, 1).unwrap();
        let rot = Matrix::from_ints(f, 2, 2, &[0, -1, 1, 0]);
        assert_eq!(joint_eigenspaces(&[rot]).unwrap_err(), Error::EnlargeField);
        let nil = Matrix::from_ints(f, 2, 2, &[0, 1, 0, 0]);
        assert_eq!(joint_eigenspaces(&[nil]).unwrap_err(), Error::EnlargeField);
    }

    #[test]
    fn non_commuting_is_rejected() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = Matrix::from_ints(f, 2, 2, &[1, 0, 0, 2]);
        let b = Matrix::from_ints(f, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(joint_eigenspaces(&[a, b]).unwrap_err(), Error::NonCommuting);
    }
}
