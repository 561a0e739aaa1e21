use std::sync::Arc;

use num_traits::{One, Zero};

use super::frame::VariableFrame;
use super::polynomial::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Invertible linear substitution `x_i -> sum_j m[i][j] x_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearChange {
    frame: Arc<VariableFrame>,
    matrix: Vec<Vec<Rational>>,
}

/// Determinant by Gaussian elimination over the rationals.
pub(crate) fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let v = &factor * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl LinearChange {
    pub fn new(frame: &Arc<VariableFrame>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = frame.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::MatrixShape {
                rows: matrix.len(),
                cols: matrix.first().map_or(0, Vec::len),
                expected: n,
            });
        }
        if determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange {
            frame: frame.clone(),
            matrix,
        })
    }

    pub fn from_integers(frame: &Arc<VariableFrame>, rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|&v| super::polynomial::rational(v)).collect())
            .collect();
        Self::new(frame, m)
    }

    pub fn identity(frame: &Arc<VariableFrame>) -> Self {
        let n = frame.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        LinearChange {
            frame: frame.clone(),
            matrix,
        }
    }

    /// Reordering of coordinates: the new `k`-th coordinate is the variable
    /// `order[k]`. Substituting turns the old variable `order[k]` into the
    /// new `k`-th variable.
    pub fn reordering(frame: &Arc<VariableFrame>, order: &[&str]) -> Result<Self> {
        let n = frame.len();
        if order.len() != n {
            return Err(Error::Frame(format!(
                "ordering lists {} of {} variables",
                order.len(),
                n
            )));
        }
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for (k, name) in order.iter().enumerate() {
            let old = frame
                .index_of(name)
                .ok_or_else(|| Error::Frame(format!("unknown variable '{name}'")))?;
            matrix[old][k] = Rational::one();
        }
        Self::new(frame, matrix)
    }

    pub fn frame(&self) -> &Arc<VariableFrame> {
        &self.frame
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.frame)
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.matrix)
    }

    pub fn inverse(&self) -> LinearChange {
        let matrix = inverse(&self.matrix).expect("invertible by construction");
        LinearChange {
            frame: self.frame.clone(),
            matrix,
        }
    }

    pub fn transpose(&self) -> LinearChange {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i].clone()).collect())
            .collect();
        LinearChange {
            frame: self.frame.clone(),
            matrix,
        }
    }

    /// Composite substitution: applying `self.then(other)` equals applying
    /// `self` and then `other`.
    pub fn then(&self, other: &LinearChange) -> LinearChange {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.matrix[i][k] * &other.matrix[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        LinearChange {
            frame: self.frame.clone(),
            matrix,
        }
    }

    /// Images of the frame variables under the substitution.
    pub fn images(&self) -> Vec<Polynomial> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Polynomial::zero(&self.frame), |acc, (j, c)| {
                        &acc + &Polynomial::var(&self.frame, j).scale(c)
                    })
            })
            .collect()
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.frame() != &self.frame {
            return Err(Error::FrameMismatch);
        }
        p.substitute(&self.images())
    }
}

/// Applies `change` to `p`.
pub fn apply_linear_change(p: &Polynomial, change: &LinearChange) -> Result<Polynomial> {
    change.apply(p)
}
