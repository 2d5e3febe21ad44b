use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::TableError;
use crate::exactnum::{squarefree_split, Int, Quad};

/// Which of the three matrix forms a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Fourier,
    Allen,
    Eigen,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Fourier => "fourier",
            Role::Allen => "allen",
            Role::Eigen => "eigen",
        }
    }

    pub fn from_name(s: &str) -> Option<Role> {
        match s {
            "fourier" => Some(Role::Fourier),
            "allen" => Some(Role::Allen),
            "eigen" => Some(Role::Eigen),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Square matrix over a single quadratic field.
///
/// Fourier matrices whose row normalisers leave the field keep them as
/// `row_scale`: the represented matrix is `entries[i][j] / sqrt(row_scale[i])`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix<T: Int> {
    entries: Vec<Vec<Quad<T>>>,
    disc: Option<T>,
    role: Role,
    row_scale: Option<Vec<Ratio<T>>>,
}

impl<T: Int> ExactMatrix<T> {
    pub fn new(
        entries: Vec<Vec<Quad<T>>>,
        disc: Option<T>,
        role: Role,
    ) -> Result<Self, TableError> {
        let r = entries.len();
        if r == 0 {
            return Err(TableError::Empty);
        }
        if entries.iter().any(|row| row.len() != r) {
            return Err(TableError::NotSquare);
        }
        let disc = match disc {
            Some(d) => {
                let (_, free) = squarefree_split(&d);
                if free.is_zero() || free.is_one() {
                    None
                } else {
                    Some(free)
                }
            }
            None => None,
        };
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if let Some(d) = x.disc() {
                    if Some(d) != disc.as_ref() {
                        return Err(TableError::FieldMismatch { row: i, col: j });
                    }
                }
            }
        }
        Ok(ExactMatrix {
            entries,
            disc,
            role,
            row_scale: None,
        })
    }

    /// Builds from small integers, for fixtures and tests.
    pub fn from_ints(rows: &[&[i64]], disc: Option<T>, role: Role) -> Result<Self, TableError> {
        Self::new(
            rows.iter()
                .map(|row| row.iter().map(|&x| Quad::from_int(x)).collect())
                .collect(),
            disc,
            role,
        )
    }

    pub fn with_row_scale(mut self, scale: Vec<Ratio<T>>) -> Result<Self, TableError> {
        if scale.len() != self.rank() || scale.iter().any(|q| !q.is_positive()) {
            return Err(TableError::RowScaleMismatch);
        }
        if scale.iter().all(|q| q.is_one()) {
            self.row_scale = None;
        } else {
            self.row_scale = Some(scale);
        }
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn disc(&self) -> Option<&T> {
        self.disc.as_ref()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn entries(&self) -> &[Vec<Quad<T>>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Quad<T> {
        &self.entries[i][j]
    }

    pub fn row_scale(&self) -> Option<&[Ratio<T>]> {
        self.row_scale.as_deref()
    }

    /// Row normaliser radicand `r_i` (1 when absent).
    pub fn scale_of(&self, i: usize) -> Ratio<T> {
        self.row_scale
            .as_ref()
            .map(|s| s[i].clone())
            .unwrap_or_else(Ratio::one)
    }

    pub fn with_role(&self, role: Role) -> Self {
        let mut m = self.clone();
        m.role = role;
        m
    }

    pub fn with_disc(&self, disc: Option<T>) -> Result<Self, TableError> {
        let mut m = Self::new(self.entries.clone(), disc, self.role)?;
        m.row_scale = self.row_scale.clone();
        Ok(m)
    }

    pub fn map_entries(&self, f: impl Fn(usize, usize, &Quad<T>) -> Quad<T>) -> Self {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| f(i, j, x)).collect())
            .collect();
        ExactMatrix {
            entries,
            disc: self.disc.clone(),
            role: self.role,
            row_scale: self.row_scale.clone(),
        }
    }

    pub(crate) fn replace_entries(&self, entries: Vec<Vec<Quad<T>>>, role: Role) -> Self {
        ExactMatrix {
            entries,
            disc: self.disc.clone(),
            role,
            row_scale: None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_real())
    }

    /// Row 0, the degree vector of an eigenmatrix.
    pub fn first_row(&self) -> Vec<Quad<T>> {
        self.entries[0].clone()
    }

    pub fn column(&self, j: usize) -> Vec<Quad<T>> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    /// Rational degrees `p_0j`, when row 0 is rational and positive.
    pub fn degrees(&self) -> Option<Vec<Ratio<T>>> {
        self.entries[0]
            .iter()
            .map(|x| x.as_rational().filter(|q| q.is_positive()).cloned())
            .collect()
    }

    /// Applies the simultaneous permutation `perm` (new index -> old index).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let entries = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        ExactMatrix {
            entries,
            disc: self.disc.clone(),
            role: self.role,
            row_scale: self
                .row_scale
                .as_ref()
                .map(|s| perm.iter().map(|&i| s[i].clone()).collect()),
        }
    }

    /// Checks the column/row shape that the role promises.
    pub fn role_invariant_holds(&self) -> bool {
        let r = self.rank();
        match self.role {
            Role::Allen => (0..r).all(|i| self.entries[i][0].is_one()),
            Role::Eigen => {
                (0..r).all(|i| self.entries[i][0].is_one())
                    && self.entries[0].iter().all(|x| x.is_positive_real())
            }
            Role::Fourier => (0..r).all(|i| self.entries[i][0].is_positive_real()),
        }
    }

    /// Plain-text grid, one row per line.
    pub fn render_rows(&self) -> String {
        self.entries
            .iter()
            .map(|row| row.iter().map(|x| x.pretty()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// One-line bracketed form, e.g. `[[1,1],[1,-1]]`.
    pub fn compact(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| {
                format!(
                    "[{}]",
                    row.iter().map(|x| x.pretty()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Degrees `k_0 = 1, k_1, ...` with order `n = sum k_i` and norms `n / k_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegreeVector<T: Int> {
    degrees: Vec<Ratio<T>>,
    order: Ratio<T>,
    norms: Vec<Ratio<T>>,
}

impl<T: Int> DegreeVector<T> {
    pub fn new(degrees: Vec<Ratio<T>>) -> Result<Self, TableError> {
        if degrees.is_empty() || !degrees[0].is_one() {
            return Err(TableError::BadDegrees("k_0 must be 1".into()));
        }
        if let Some(i) = degrees.iter().position(|k| !k.is_positive()) {
            return Err(TableError::BadDegrees(format!("k_{i} is not positive")));
        }
        let order = degrees.iter().fold(Ratio::zero(), |acc, k| acc + k);
        let norms = degrees.iter().map(|k| &order / k).collect();
        Ok(DegreeVector {
            degrees,
            order,
            norms,
        })
    }

    pub fn from_ints(ks: &[i64]) -> Result<Self, TableError> {
        Self::new(
            ks.iter()
                .map(|&k| Ratio::from_integer(T::from_i64(k).unwrap()))
                .collect(),
        )
    }

    pub fn degrees(&self) -> &[Ratio<T>] {
        &self.degrees
    }

    pub fn order(&self) -> &Ratio<T> {
        &self.order
    }

    pub fn norms(&self) -> &[Ratio<T>] {
        &self.norms
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Integer degrees, if every degree is an integer.
    pub fn integer_degrees(&self) -> Option<Vec<T>> {
        self.degrees
            .iter()
            .map(|k| k.is_integer().then(|| k.to_integer()))
            .collect()
    }
}

impl<T: Int> fmt::Display for DegreeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse<T: Int>(m: &[Vec<Quad<T>>]) -> Option<Vec<Vec<Quad<T>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Quad<T>>> = m.to_vec();
    let mut inv: Vec<Vec<Quad<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Quad::one() } else { Quad::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].try_recip().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &p;
        }
        for x in inv[col].iter_mut() {
            *x = &*x * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let s = &f * &a[col][c];
                a[r][c] = &a[r][c] - &s;
                let t = &f * &inv[col][c];
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec<T: Int>(m: &[Vec<Quad<T>>], v: &[Quad<T>]) -> Vec<Quad<T>> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
