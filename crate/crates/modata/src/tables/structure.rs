use super::matrix::{inverse, mat_vec, ExactMatrix};
use super::TableError;
use crate::exactnum::{Int, Quad};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    N,
    Lambda,
}

/// Rank-3 tensor of structure constants, indexed `[i][j][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor<T: Int> {
    rank: usize,
    values: Vec<Quad<T>>,
    kind: TensorKind,
}

impl<T: Int> StructureTensor<T> {
    fn build(rank: usize, kind: TensorKind, f: impl Fn(usize, usize, usize) -> Quad<T>) -> Self {
        let mut values = Vec::with_capacity(rank * rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    values.push(f(i, j, k));
                }
            }
        }
        StructureTensor { rank, values, kind }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Quad<T> {
        &self.values[(i * self.rank + j) * self.rank + k]
    }

    /// Index triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let r = self.rank;
        (0..r).flat_map(move |i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
    }
}

/// Hermitian row norms `d_i = sum_j |s_ij|^2`.
pub fn norms<T: Int>(s: &ExactMatrix<T>) -> Vec<Quad<T>> {
    s.entries()
        .iter()
        .map(|row| row.iter().map(|x| x.abs_squared()).sum())
        .collect()
}

/// `N_ijk = sum_l s_li s_lj conj(s_lk) / d_l` for an Allen matrix.
pub fn structure_constants_n<T: Int>(s: &ExactMatrix<T>) -> Result<StructureTensor<T>, TableError> {
    let d = norms(s);
    if let Some(i) = d.iter().position(|x| x.is_zero()) {
        return Err(TableError::ZeroNorm(i));
    }
    let inv_d: Vec<Quad<T>> = d.iter().map(|x| x.try_recip().unwrap()).collect();
    let e = s.entries();
    Ok(StructureTensor::build(
        s.rank(),
        TensorKind::N,
        |i, j, k| {
            (0..s.rank())
                .map(|l| &e[l][i] * &e[l][j] * e[l][k].conj() * &inv_d[l])
                .sum()
        },
    ))
}

/// `N_ijk` of a Fourier matrix kept as entries `E` with row radicands `r`:
/// `sum_l E_li E_lj conj(E_lk) / (r_l E_l0)`, which involves no radicals.
pub fn fourier_structure_constants<T: Int>(
    f: &ExactMatrix<T>,
) -> Result<StructureTensor<T>, TableError> {
    let e = f.entries();
    let mut weights = Vec::with_capacity(f.rank());
    for l in 0..f.rank() {
        let denom = Quad::rational(f.scale_of(l)) * &e[l][0];
        weights.push(
            denom
                .try_recip()
                .map_err(|_| TableError::ZeroFirstColumnEntry(l))?,
        );
    }
    Ok(StructureTensor::build(
        f.rank(),
        TensorKind::N,
        |i, j, k| {
            (0..f.rank())
                .map(|l| &e[l][i] * &e[l][j] * e[l][k].conj() * &weights[l])
                .sum()
        },
    ))
}

/// `lambda_ijk` from `b_i o b_j = sum_k lambda_ijk b_k`, the `b` being the
/// columns of `P`; solved exactly against `P^{-1}`.
pub fn structure_constants_lambda<T: Int>(
    p: &ExactMatrix<T>,
) -> Result<StructureTensor<T>, TableError> {
    let inv = inverse(p.entries()).ok_or(TableError::SingularEigenmatrix)?;
    let r = p.rank();
    let e = p.entries();
    let mut solved = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let prod: Vec<Quad<T>> = (0..r).map(|l| &e[l][i] * &e[l][j]).collect();
            solved.push(mat_vec(&inv, &prod));
        }
    }
    Ok(StructureTensor::build(r, TensorKind::Lambda, |i, j, k| {
        solved[i * r + j][k].clone()
    }))
}
