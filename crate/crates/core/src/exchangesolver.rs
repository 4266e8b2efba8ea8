//! Exchange matrices as the unique integral solutions of the scalar and
//! grading constraints, by exact rational elimination.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bicharacter::{ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::mutation::{compatibility_check, find_skew_symmetrizer, skew_symmetrizable, ExchangeMatrix};
use crate::orealgebra::Presentation;
use crate::primeseq::{all_interval_primes, level_symmetrizer, pi_f_data, rescale_generators, EtaData};
use crate::scalarfield::ScalarExp;
use crate::xicombinatorics::{frame_for_tau, TauFrame};

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Converts back to a small rational; `None` on overflow.
pub fn small(r: &BigRational) -> Option<Rational64> {
    Some(Rational64::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

/// `A x = rhs` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub a: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

/// Reduced row echelon form of an augmented system.
struct Echelon {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    pivots: Vec<usize>,
    cols: usize,
}

impl LinearSystem {
    pub fn new(a: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Result<Self> {
        if a.len() != rhs.len() {
            return Err(Error::Dimension("row count and right-hand side differ".into()));
        }
        let cols = a.first().map_or(0, |r| r.len());
        if a.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged coefficient matrix".into()));
        }
        Ok(LinearSystem { a, rhs })
    }

    pub fn from_small(a: &[Vec<Rational64>], rhs: &[Rational64]) -> Self {
        LinearSystem {
            a: a.iter().map(|r| r.iter().copied().map(big).collect()).collect(),
            rhs: rhs.iter().copied().map(big).collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, |r| r.len())
    }

    fn echelon(&self) -> Echelon {
        let cols = self.cols();
        let mut rows = self.a.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            // Pivot on the entry of smallest height to keep numbers small.
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].numer().abs() + rows[i][c].denom());
            let Some(p) = pick else { continue };
            rows.swap(r, p);
            rhs.swap(r, p);
            let inv = BigRational::one() / rows[r][c].clone();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            rhs[r] = &rhs[r] * &inv;
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for j in c..cols {
                    let t = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
                let t = &f * &rhs[r];
                rhs[i] = &rhs[i] - &t;
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            rows,
            rhs,
            pivots,
            cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn rank_of(rows: &[Vec<Rational64>]) -> usize {
        let rhs = vec![Rational64::zero(); rows.len()];
        LinearSystem::from_small(rows, &rhs).rank()
    }

    /// A particular solution and a basis of the null space, or `None` when
    /// the system is inconsistent.
    pub fn solve_general(&self) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
        let e = self.echelon();
        let rank = e.pivots.len();
        if e.rhs[rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); e.cols];
        for (i, &c) in e.pivots.iter().enumerate() {
            x[c] = e.rhs[i].clone();
        }
        let free: Vec<usize> = (0..e.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut null = Vec::new();
        for &f in &free {
            let mut v = vec![BigRational::zero(); e.cols];
            v[f] = BigRational::one();
            for (i, &c) in e.pivots.iter().enumerate() {
                v[c] = -e.rows[i][f].clone();
            }
            null.push(v);
        }
        Some((x, null))
    }

    /// The unique solution; errors when there is none or more than one.
    pub fn solve_unique(&self) -> Result<Vec<BigRational>> {
        let (x, null) = self
            .solve_general()
            .ok_or_else(|| Error::LinearSystem("no solution".into()))?;
        if !null.is_empty() {
            return Err(Error::LinearSystem(format!(
                "solution space has dimension {}",
                null.len()
            )));
        }
        Ok(x)
    }
}

/// The column `b^l` solving `Ω_r(b, e_j) = 1` for `j ≠ l`,
/// `Ω_r(b, e_l)^2 = λ*_l` and `W b = 0`, where the columns of `weights` are
/// the gradings of the frame images.
pub fn solve_bcolumn(r: &ExpMatrix, weights: &IntMatrix, lambda_star_l: ScalarExp, l: usize) -> Result<Vec<i64>> {
    let n = r.n();
    if l >= n {
        return Err(Error::Dimension(format!("index {} out of range", l + 1)));
    }
    if weights.iter().any(|w| w.len() != n) {
        return Err(Error::Dimension(
            "weight rows must have one entry per frame index".into(),
        ));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut a = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..n {
        a.push((0..n).map(|i| &two * &big(r.get(i, j))).collect());
        rhs.push(if j == l {
            big(lambda_star_l.exp)
        } else {
            BigRational::zero()
        });
    }
    for w in weights {
        a.push(w.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
        rhs.push(BigRational::zero());
    }
    let x = LinearSystem::new(a, rhs)?.solve_unique()?;
    x.iter()
        .map(|v| {
            if v.is_integer() {
                v.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::LinearSystem("entry out of range".into()))
            } else {
                Err(Error::LinearSystem(format!("non-integral solution entry {v}")))
            }
        })
        .collect()
}

/// Solves every column `l ∈ ex`, then checks compatibility and the
/// skew-symmetrizability of the principal part. `lambda_star` is indexed by
/// frame index; `d` (when given) is indexed by frame index as well.
pub fn solve_exchange_matrix(
    r: &ExpMatrix,
    weights: &IntMatrix,
    lambda_star: &[ScalarExp],
    ex: &[usize],
    d: Option<&[i64]>,
) -> Result<ExchangeMatrix> {
    let n = r.n();
    let cols = ex
        .iter()
        .map(|&l| solve_bcolumn(r, weights, lambda_star[l], l))
        .collect::<Result<Vec<_>>>()?;
    let b = ExchangeMatrix::from_columns(n, ex.to_vec(), &cols)?;
    compatibility_check(r, &b)?;
    let ok = match d {
        Some(d) => {
            let dd: Vec<i64> = ex.iter().map(|&k| d[k]).collect();
            skew_symmetrizable(&b, &dd)
        }
        None => find_skew_symmetrizer(&b).is_some(),
    };
    if !ok {
        return Err(Error::Check("principal part is not skew-symmetrizable".into()));
    }
    Ok(b)
}

/// `d_{η(k)}` per generator, from the level-set symmetrizer.
pub fn d_per_index(p: &Presentation, eta: &EtaData) -> Result<Vec<i64>> {
    let d = level_symmetrizer(p, eta)?;
    Ok(eta.eta.iter().map(|e| d[e]).collect())
}

/// `B̃_τ` for a frame `M_τ`. Frame index `a` lies in the level set of `a`,
/// so `λ*`, `ex` and `d` are read off at `a` directly.
pub fn btilde_for_tau(p: &Presentation, eta: &EtaData, frame: &TauFrame, d: &[i64]) -> Result<ExchangeMatrix> {
    solve_exchange_matrix(&frame.r, &frame.weights, p.lambda_star(), &eta.ex(), Some(d))
}

/// `b_{(r-1)n+c, (r'-1)n+c'}`: `±1` for horizontal, vertical and main-diagonal
/// neighbours, `0` otherwise. Columns are the indices with `r < m`, `c < n`.
pub fn quantum_matrix_btilde(m: usize, n: usize) -> ExchangeMatrix {
    let idx = |r: usize, c: usize| r * n + c;
    let ex: Vec<usize> = (0..m.saturating_sub(1))
        .flat_map(|r| (0..n - 1).map(move |c| idx(r, c)))
        .collect();
    let cols: Vec<Vec<i64>> = ex
        .iter()
        .map(|&k| {
            let (r1, c1) = ((k / n) as i64, (k % n) as i64);
            (0..m * n)
                .map(|row| {
                    let (dr, dc) = ((row / n) as i64 - r1, (row % n) as i64 - c1);
                    match (dr, dc) {
                        (0, 1) | (0, -1) => -dc,
                        (1, 0) | (-1, 0) => -dr,
                        (1, 1) | (-1, -1) => dr,
                        _ => 0,
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix::from_columns(m * n, ex, &cols).expect("shapes agree")
}

/// Outcome of the first-column identity on `[i, s(i)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstColumn {
    pub i: usize,
    pub top: usize,
    /// `f_[i,s(i)]`, local coordinates.
    pub f: Vec<i64>,
    /// `-Σ_{l ∈ P} b_{l,1} ē_l`, local coordinates.
    pub formula: Vec<i64>,
}

impl FirstColumn {
    pub fn holds(&self) -> bool {
        self.f == self.formula
    }
}

/// Treats `R_[i,s(i)]` as a standalone algebra (so `s(1) = N` there), solves
/// its first exchange column, and evaluates
/// `f_[1,N] = -Σ_{l ∈ P} b_{l1} ē_l` with `P = {l ∈ [2, N-1] : s(l) = +∞}`.
pub fn first_column_crosscheck(p: &Presentation, eta: &EtaData, i: usize) -> Result<FirstColumn> {
    let top = eta.s[i].ok_or_else(|| Error::Dimension(format!("s({}) is +infinity", i + 1)))?;
    let local = p.restrict(i, top)?;
    let resc = rescale_generators(&local)?;
    let lp = &resc.presentation;
    let le = &resc.primes.eta;
    let t = lp.n();
    if le.s[0] != Some(t - 1) {
        return Err(Error::Check(format!("s(1) != N on [{}, {}]", i + 1, top + 1)));
    }
    let (_, f) = pi_f_data(p, &all_interval_primes(p, eta)?, i, 1)?;
    let f_local = f[i..=top].to_vec();
    let frame = frame_for_tau(lp, &resc.intervals, &(0..t).collect::<Vec<_>>())?;
    let d = d_per_index(lp, le)?;
    let b = btilde_for_tau(lp, le, &frame, &d)?;
    let b1 = b
        .column(0)
        .ok_or_else(|| Error::Check("index 1 is not exchangeable".into()))?;
    let mut formula = vec![0i64; t];
    for l in (1..t - 1).filter(|&l| le.s[l].is_none()) {
        for (x, y) in formula.iter_mut().zip(le.ebar(l)) {
            *x -= b1[l] * y;
        }
    }
    Ok(FirstColumn {
        i,
        top,
        f: f_local,
        formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn unique_and_degenerate_systems() {
        let sys = LinearSystem::from_small(&[vec![r(1), r(1)], vec![r(1), r(-1)]], &[r(3), r(1)]);
        let x = sys.solve_unique().unwrap();
        assert_eq!(
            x,
            vec![BigRational::from_integer(2.into()), BigRational::from_integer(1.into())]
        );
        let sing = LinearSystem::from_small(&[vec![r(1), r(1)], vec![r(2), r(2)]], &[r(1), r(2)]);
        assert!(sing.solve_unique().is_err());
        assert_eq!(sing.solve_general().unwrap().1.len(), 1);
        let bad = LinearSystem::from_small(&[vec![r(1), r(1)], vec![r(2), r(2)]], &[r(1), r(3)]);
        assert!(bad.solve_general().is_none());
    }

    #[test]
    fn empty_ex_gives_empty_matrix() {
        let b = solve_exchange_matrix(&ExpMatrix::zeros(3), &vec![], &[ScalarExp::one(); 3], &[], None).unwrap();
        assert!(b.ex.is_empty());
    }
}
