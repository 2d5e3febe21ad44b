#![allow(dead_code)]

//! Floating-point oracle used only by tests: recomputes quantities by a
//! different route so exact results can be cross-checked.

use num_traits::ToPrimitive;

use modata::tables::ExactMatrix;
use modata::{Integer, QuadNum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C(pub f64, pub f64);

impl C {
    pub fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    pub fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    pub fn conj(self) -> C {
        C(self.0, -self.1)
    }
    pub fn div(self, o: C) -> C {
        let m = o.0 * o.0 + o.1 * o.1;
        self.mul(o.conj()).mul(C(1.0 / m, 0.0))
    }
    pub fn sqrt_real(x: f64) -> C {
        C(x.sqrt(), 0.0)
    }
    pub fn close(self, o: C) -> bool {
        (self.0 - o.0).abs() < 1e-9 && (self.1 - o.1).abs() < 1e-9
    }
}

pub fn to_c(q: &QuadNum) -> C {
    let a = q.rat().to_f64().unwrap();
    let b = q.surd().to_f64().unwrap();
    match q.disc().map(|d| d.to_f64().unwrap()) {
        None => C(a, 0.0),
        Some(d) if d > 0.0 => C(a + b * d.sqrt(), 0.0),
        Some(d) => C(a, b * (-d).sqrt()),
    }
}

pub fn to_grid(m: &ExactMatrix<Integer>) -> Vec<Vec<C>> {
    m.entries()
        .iter()
        .map(|row| row.iter().map(to_c).collect())
        .collect()
}

/// Fourier matrix from an eigenmatrix by explicit square roots.
pub fn fourier_of_eigen(p: &[Vec<C>]) -> Vec<Vec<C>> {
    let r = p.len();
    let s: Vec<Vec<C>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| p[i][j].div(C::sqrt_real(p[0][j].0)))
                .collect()
        })
        .collect();
    s.iter()
        .map(|row| {
            let d: f64 = row.iter().map(|x| x.mul(x.conj()).0).sum();
            row.iter().map(|x| x.div(C::sqrt_real(d))).collect()
        })
        .collect()
}

/// Verlinde-type `N_ijk = sum_l S_li S_lj conj(S_lk) / S_l0`.
pub fn n_tensor(s: &[Vec<C>]) -> Vec<Vec<Vec<C>>> {
    let r = s.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| {
                            (0..r).fold(C(0.0, 0.0), |acc, l| {
                                acc.add(s[l][i].mul(s[l][j]).mul(s[l][k].conj()).div(s[l][0]))
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `lambda_ijk` by Cramer-free elimination on `P x = b_i o b_j`.
pub fn lambda_tensor(p: &[Vec<C>]) -> Vec<Vec<Vec<C>>> {
    let r = p.len();
    let solve = |rhs: Vec<C>| -> Vec<C> {
        let mut a: Vec<Vec<C>> = p.to_vec();
        let mut b = rhs;
        for col in 0..r {
            let piv = (col..r)
                .max_by(|&x, &y| {
                    let nx = a[x][col].0.hypot(a[x][col].1);
                    let ny = a[y][col].0.hypot(a[y][col].1);
                    nx.partial_cmp(&ny).unwrap()
                })
                .unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in 0..r {
                if row == col {
                    continue;
                }
                let f = a[row][col].div(a[col][col]);
                for c in 0..r {
                    let t = f.mul(a[col][c]);
                    a[row][c] = a[row][c].add(C(-t.0, -t.1));
                }
                let t = f.mul(b[col]);
                b[row] = b[row].add(C(-t.0, -t.1));
            }
        }
        (0..r).map(|i| b[i].div(a[i][i])).collect()
    };
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| solve((0..r).map(|l| p[l][i].mul(p[l][j])).collect()))
                .collect()
        })
        .collect()
}

pub fn is_near_integer(x: C) -> bool {
    x.1.abs() < 1e-9 && (x.0 - x.0.round()).abs() < 1e-9
}
