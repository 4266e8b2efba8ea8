//! Multiplicatively skew-symmetric matrices stored by their exponents, the
//! bicharacter they define, symmetrization scalars and the exponential
//! matrix calculus.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalarfield::ScalarExp;

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<Rational64>>;

/// The matrix `(q^{E_kj})`, stored as the additively skew-symmetric `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpMatrix {
    e: RatMatrix,
}

impl ExpMatrix {
    pub fn new(e: RatMatrix) -> Result<Self> {
        let n = e.len();
        for (k, row) in e.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("row {k} has length {}", row.len())));
            }
            if !row[k].is_zero() {
                return Err(Error::Dimension(format!("nonzero diagonal entry at {k}")));
            }
            for j in 0..k {
                if row[j] != -e[j][k] {
                    return Err(Error::Dimension(format!(
                        "entries ({k},{j}) and ({j},{k}) are not opposite"
                    )));
                }
            }
        }
        Ok(ExpMatrix { e })
    }

    pub fn zeros(n: usize) -> Self {
        ExpMatrix {
            e: vec![vec![Rational64::zero(); n]; n],
        }
    }

    /// Builds the matrix from the entries strictly below the diagonal:
    /// `lower[k][j] = E_kj` for `j < k`.
    pub fn from_lower(lower: &[Vec<Rational64>]) -> Result<Self> {
        let n = lower.len();
        let mut e = vec![vec![Rational64::zero(); n]; n];
        for k in 0..n {
            if lower[k].len() < k {
                return Err(Error::Dimension(format!("lower row {k} is too short")));
            }
            for j in 0..k {
                e[k][j] = lower[k][j];
                e[j][k] = -lower[k][j];
            }
        }
        Ok(ExpMatrix { e })
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.e
    }

    pub fn get(&self, k: usize, j: usize) -> Rational64 {
        self.e[k][j]
    }

    /// Exponent of `Ω(f, g)`; panics on a length mismatch.
    pub fn pair(&self, f: &[i64], g: &[i64]) -> Rational64 {
        assert!(f.len() == self.n() && g.len() == self.n(), "vector length mismatch");
        let mut acc = Rational64::zero();
        for (k, &fk) in f.iter().enumerate() {
            if fk == 0 {
                continue;
            }
            let mut row = Rational64::zero();
            for (j, &gj) in g.iter().enumerate() {
                if gj != 0 {
                    row += self.e[k][j] * gj;
                }
            }
            acc += row * fk;
        }
        acc
    }

    /// `Ω_M(f, g) = q^{fᵀ E g}`.
    pub fn omega(&self, f: &[i64], g: &[i64]) -> Result<ScalarExp> {
        if f.len() != self.n() || g.len() != self.n() {
            return Err(Error::Dimension(format!(
                "omega on vectors of length {} and {} for size {}",
                f.len(),
                g.len(),
                self.n()
            )));
        }
        Ok(ScalarExp::new(self.pair(f, g)))
    }

    /// Exponent of the symmetrization scalar `S_M(f) = q^{-Σ_{j<k} E_jk m_j m_k}`.
    pub fn symmetrization_exp(&self, f: &[i64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for j in 0..f.len() {
            if f[j] == 0 {
                continue;
            }
            for k in j + 1..f.len() {
                if f[k] != 0 {
                    acc -= self.e[j][k] * (f[j] * f[k]);
                }
            }
        }
        acc
    }

    pub fn symmetrization(&self, f: &[i64]) -> ScalarExp {
        ScalarExp::new(self.symmetrization_exp(f))
    }

    /// The matrix with every exponent multiplied by `c`.
    pub fn scaled(&self, c: Rational64) -> Self {
        ExpMatrix {
            e: self.e.iter().map(|row| row.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// `{}^{σᵀ}E^{σ}` for an integer matrix `σ`.
    pub fn transform(&self, sigma: &IntMatrix) -> Result<Self> {
        let st = transpose(sigma);
        let e = exp_mat_product(&st, &self.e, sigma)?;
        ExpMatrix::new(e)
    }

    /// `(E_σ)_{lj} = E_{σ(l)σ(j)}` for a permutation in one-line form (0-based).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut e = vec![vec![Rational64::zero(); n]; n];
        for l in 0..n {
            for j in 0..n {
                e[l][j] = self.e[perm[l]][perm[j]];
            }
        }
        ExpMatrix { e }
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        self.permuted(idx)
    }
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// `{}^{A}E^{C}`: the additive form `(A E C)_{il} = Σ_{j,k} a_ij E_jk c_kl`.
pub fn exp_mat_product(a: &IntMatrix, e: &RatMatrix, c: &IntMatrix) -> Result<RatMatrix> {
    let n = e.len();
    let p = e.first().map_or(0, |r| r.len());
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("left factor does not compose".into()));
    }
    if e.iter().any(|row| row.len() != p) || c.len() != p {
        return Err(Error::Dimension("right factor does not compose".into()));
    }
    let s = c.first().map_or(0, |r| r.len());
    if c.iter().any(|row| row.len() != s) {
        return Err(Error::Dimension("ragged right factor".into()));
    }
    let mut ec = vec![vec![Rational64::zero(); s]; n];
    for j in 0..n {
        for k in 0..p {
            if e[j][k].is_zero() {
                continue;
            }
            for l in 0..s {
                if c[k][l] != 0 {
                    ec[j][l] += e[j][k] * c[k][l];
                }
            }
        }
    }
    let mut out = vec![vec![Rational64::zero(); s]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for j in 0..n {
            if row[j] == 0 {
                continue;
            }
            for l in 0..s {
                out[i][l] += ec[j][l] * row[j];
            }
        }
    }
    Ok(out)
}

/// `S_M(f)` as a free function.
pub fn symmetrization(m: &ExpMatrix, f: &[i64]) -> ScalarExp {
    m.symmetrization(f)
}

/// `Ω_M(f, g)` as a free function.
pub fn omega(m: &ExpMatrix, f: &[i64], g: &[i64]) -> Result<ScalarExp> {
    m.omega(f, g)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let s = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..s)
                .map(|l| row.iter().zip(b.iter()).map(|(x, brow)| x * brow[l]).sum())
                .collect()
        })
        .collect()
}

pub fn int_mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Permutation matrix with `P e_k = e_{perm[k]}`.
pub fn perm_matrix(perm: &[usize]) -> IntMatrix {
    let n = perm.len();
    let mut m = vec![vec![0; n]; n];
    for (k, &pk) in perm.iter().enumerate() {
        m[pk][k] = 1;
    }
    m
}
