use num_rational::Ratio;
use num_traits::Signed;

use super::matrix::{ExactMatrix, Role};
use super::structure::norms;
use super::TableError;
use crate::exactnum::{sqrt_in_field, Int, Quad};

/// `s_ij = S_ij / S_i0`; the row normalisers cancel.
pub fn allen_from_fourier<T: Int>(f: &ExactMatrix<T>) -> Result<ExactMatrix<T>, TableError> {
    let r = f.rank();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let head = f.get(i, 0);
        if !head.is_positive_real() {
            return Err(TableError::ZeroFirstColumnEntry(i));
        }
        let inv = head.try_recip().unwrap();
        rows.push((0..r).map(|j| f.get(i, j) * &inv).collect());
    }
    Ok(f.replace_entries(rows, Role::Allen))
}

/// `p_ij = s_ij * s_0j`.
pub fn eigen_from_allen<T: Int>(s: &ExactMatrix<T>) -> Result<ExactMatrix<T>, TableError> {
    let r = s.rank();
    if let Some(i) = (0..r).find(|&i| !s.get(i, 0).is_one()) {
        return Err(TableError::ColumnZeroNotOnes(i));
    }
    let rows = (0..r)
        .map(|i| (0..r).map(|j| s.get(i, j) * s.get(0, j)).collect())
        .collect();
    Ok(s.replace_entries(rows, Role::Eigen))
}

fn positive_rational<T: Int>(x: &Quad<T>) -> Option<Ratio<T>> {
    x.as_rational().filter(|q| q.is_positive()).cloned()
}

/// `s_ij = p_ij / sqrt(p_0j)`, each square root taken inside the table's field.
pub fn allen_from_eigen<T: Int>(p: &ExactMatrix<T>) -> Result<ExactMatrix<T>, TableError> {
    let r = p.rank();
    if let Some(i) = (0..r).find(|&i| !p.get(i, 0).is_one()) {
        return Err(TableError::ColumnZeroNotOnes(i));
    }
    let mut inv_roots = Vec::with_capacity(r);
    for j in 0..r {
        let k = positive_rational(p.get(0, j)).ok_or(TableError::NonPositiveDegree(j))?;
        let root = sqrt_in_field(&k, p.disc()).ok_or_else(|| TableError::SqrtNotInField {
            index: j,
            radicand: k.to_string(),
        })?;
        inv_roots.push(root.try_recip().unwrap());
    }
    let rows = (0..r)
        .map(|i| (0..r).map(|j| p.get(i, j) * &inv_roots[j]).collect())
        .collect();
    Ok(p.replace_entries(rows, Role::Allen))
}

/// Fourier matrix `S_ij = s_ij / sqrt(d_i)` kept entirely as row radicands:
/// entries are `s` itself and `row_scale = d`. Never needs a field extension.
pub fn fourier_from_allen_radicands<T: Int>(
    s: &ExactMatrix<T>,
) -> Result<ExactMatrix<T>, TableError> {
    let d = norms(s);
    let mut scale = Vec::with_capacity(d.len());
    for (i, x) in d.iter().enumerate() {
        let q = positive_rational(x).ok_or_else(|| TableError::IrrationalNorm {
            index: i,
            value: x.pretty(),
        })?;
        scale.push(q);
    }
    s.replace_entries(s.entries().to_vec(), Role::Fourier)
        .with_row_scale(scale)
}

/// Moves every row radicand whose square root lies in the field into the
/// entries. Rows that cannot be absorbed keep their radicand.
pub fn absorb_row_scale<T: Int>(f: &ExactMatrix<T>) -> ExactMatrix<T> {
    let Some(scale) = f.row_scale() else {
        return f.clone();
    };
    let r = f.rank();
    let mut rows = Vec::with_capacity(r);
    let mut rest = Vec::with_capacity(r);
    for i in 0..r {
        match sqrt_in_field(&scale[i], f.disc()) {
            Some(root) => {
                let inv = root.try_recip().unwrap();
                rows.push((0..r).map(|j| f.get(i, j) * &inv).collect());
                rest.push(Ratio::from_integer(T::one()));
            }
            None => {
                rows.push(f.entries()[i].clone());
                rest.push(scale[i].clone());
            }
        }
    }
    f.replace_entries(rows, Role::Fourier)
        .with_row_scale(rest)
        .expect("radicands stay positive")
}

/// `S_ij = s_ij / sqrt(d_i)` with every `sqrt(d_i)` in the table's field.
pub fn fourier_from_allen<T: Int>(s: &ExactMatrix<T>) -> Result<ExactMatrix<T>, TableError> {
    let f = absorb_row_scale(&fourier_from_allen_radicands(s)?);
    if let Some(scale) = f.row_scale() {
        let i = scale
            .iter()
            .position(|q| q != &Ratio::from_integer(T::one()))
            .unwrap();
        return Err(TableError::SqrtNotInField {
            index: i,
            radicand: scale[i].to_string(),
        });
    }
    Ok(f)
}

/// Entrywise squares `S_ij^2 = E_ij^2 / r_i`; equal Fourier matrices have
/// equal squares and equal signs, which lets differently scaled encodings
/// be compared without radicals.
pub fn fourier_same<T: Int>(a: &ExactMatrix<T>, b: &ExactMatrix<T>) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let r = a.rank();
    for i in 0..r {
        let ra = Quad::rational(a.scale_of(i));
        let rb = Quad::rational(b.scale_of(i));
        for j in 0..r {
            let (x, y) = (a.get(i, j), b.get(i, j));
            if x.is_zero() != y.is_zero() {
                return false;
            }
            if x.is_zero() {
                continue;
            }
            let lhs = x.try_mul(x).and_then(|xx| xx.try_mul(&rb));
            let rhs = y.try_mul(y).and_then(|yy| yy.try_mul(&ra));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return false,
            }
            // x / y must be a positive real multiple
            match x.try_div(y) {
                Ok(q) if q.is_positive_real() => {}
                _ => return false,
            }
        }
    }
    true
}
