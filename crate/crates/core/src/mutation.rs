//! Compatible pairs, matrix mutation, mutation of the frame matrix, quantum
//! seeds and seed mutation.

use num_rational::Rational64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bicharacter::{int_mat_mul, transpose, unit, ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::exchangesolver::{small, LinearSystem};
use crate::qtorus::{frame_value_nonneg, Ambient, ToricFrame};
use crate::scalarfield::{Coeff, ScalarExp};

/// An `N × |ex|` integer matrix whose columns are labelled by `ex`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    pub n: usize,
    pub ex: Vec<usize>,
    pub b: IntMatrix,
}

impl ExchangeMatrix {
    pub fn new(n: usize, ex: Vec<usize>, b: IntMatrix) -> Result<Self> {
        if b.len() != n || b.iter().any(|r| r.len() != ex.len()) {
            return Err(Error::Dimension(format!("exchange matrix must be {n} x {}", ex.len())));
        }
        if ex.iter().any(|&k| k >= n) || ex.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Dimension("ex must be increasing and within range".into()));
        }
        Ok(ExchangeMatrix { n, ex, b })
    }

    pub fn empty(n: usize) -> Self {
        ExchangeMatrix {
            n,
            ex: Vec::new(),
            b: vec![Vec::new(); n],
        }
    }

    /// Builds the matrix from its columns `b^k`, `k ∈ ex`.
    pub fn from_columns(n: usize, ex: Vec<usize>, cols: &[Vec<i64>]) -> Result<Self> {
        let mut b = vec![vec![0; ex.len()]; n];
        for (c, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(Error::Dimension("column length".into()));
            }
            for i in 0..n {
                b[i][c] = col[i];
            }
        }
        ExchangeMatrix::new(n, ex, b)
    }

    pub fn position(&self, k: usize) -> Option<usize> {
        self.ex.iter().position(|&e| e == k)
    }

    /// The column `b^k`.
    pub fn column(&self, k: usize) -> Option<Vec<i64>> {
        let c = self.position(k)?;
        Some(self.b.iter().map(|r| r[c]).collect())
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.ex.len())
            .map(|c| self.b.iter().map(|r| r[c]).collect())
            .collect()
    }

    /// Entry `b_{ij}` for a row `i` and an exchangeable label `j`.
    pub fn entry(&self, i: usize, j: usize) -> Option<i64> {
        self.position(j).map(|c| self.b[i][c])
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational64>> = self
            .b
            .iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        LinearSystem::rank_of(&rows)
    }
}

/// Checks `Ω_r(b^k, e_j) = 1` for `k ∈ ex, j ≠ k` and `Ω_r(b^k, e_k) ≠ 1`; returns
/// the diagonal values `t_kk` in the order of `ex`.
pub fn compatibility_check(r: &ExpMatrix, b: &ExchangeMatrix) -> Result<Vec<ScalarExp>> {
    if r.n() != b.n {
        return Err(Error::Dimension(format!(
            "matrix of size {} with exchange matrix of {} rows",
            r.n(),
            b.n
        )));
    }
    let mut diag = Vec::with_capacity(b.ex.len());
    for (c, &k) in b.ex.iter().enumerate() {
        let col: Vec<i64> = b.b.iter().map(|row| row[c]).collect();
        for j in 0..b.n {
            let t = r.pair(&col, &unit(b.n, j));
            if j != k && !t.is_zero() {
                return Err(Error::Incompatible(format!("t_({},{}) = q^{t} != 1", k + 1, j + 1)));
            }
            if j == k {
                if t.is_zero() {
                    return Err(Error::Incompatible(format!("t_({0},{0}) = 1", k + 1)));
                }
                diag.push(ScalarExp::new(t));
            }
        }
    }
    Ok(diag)
}

/// `d_k b_kj = -d_j b_jk` for all `k, j ∈ ex`; `d` is indexed like `ex`.
pub fn skew_symmetrizable(b: &ExchangeMatrix, d: &[i64]) -> bool {
    if d.len() != b.ex.len() || d.iter().any(|&x| x <= 0) {
        return false;
    }
    for (ck, &k) in b.ex.iter().enumerate() {
        for (cj, &j) in b.ex.iter().enumerate() {
            if d[ck] * b.b[k][cj] != -d[cj] * b.b[j][ck] {
                return false;
            }
        }
    }
    true
}

/// Positive integers `d` (indexed like `ex`) making the principal part
/// skew-symmetrizable, if they exist.
pub fn find_skew_symmetrizer(b: &ExchangeMatrix) -> Option<Vec<i64>> {
    let m = b.ex.len();
    let mut d: Vec<Option<Rational64>> = vec![None; m];
    for start in 0..m {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational64::from_integer(1));
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            let dc = d[c].unwrap();
            let k = b.ex[c];
            for (cj, &j) in b.ex.iter().enumerate() {
                let bkj = b.b[k][cj];
                let bjk = b.b[j][c];
                if bkj == 0 && bjk == 0 {
                    continue;
                }
                if bkj == 0 || bjk == 0 || bkj.signum() == bjk.signum() {
                    return None;
                }
                let dj = dc * Rational64::new(bkj, -bjk);
                match d[cj] {
                    None => {
                        d[cj] = Some(dj);
                        stack.push(cj);
                    }
                    Some(v) if v != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let l = d.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.unwrap().denom()));
    let out: Vec<i64> = d.iter().map(|x| (x.unwrap() * l).to_integer()).collect();
    skew_symmetrizable(b, &out).then_some(out)
}

/// The sign `ε` in the factorization `μ_k(B̃) = E_ε B̃ F_ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The matrices `E_ε` (`N × N`) and `F_ε` (`|ex| × |ex|`).
pub fn mutation_factors(b: &ExchangeMatrix, k: usize, eps: Sign) -> Result<(IntMatrix, IntMatrix)> {
    let ck = b.position(k).ok_or(Error::NotExchangeable(k + 1))?;
    let e = eps.value();
    let n = b.n;
    let m = b.ex.len();
    let mut em = vec![vec![0; n]; n];
    for i in 0..n {
        em[i][i] = 1;
        if i != k {
            em[i][k] = (-e * b.b[i][ck]).max(0);
        }
    }
    em[k][k] = -1;
    let mut fm = vec![vec![0; m]; m];
    for i in 0..m {
        fm[i][i] = 1;
    }
    for j in 0..m {
        if j != ck {
            fm[ck][j] = (e * b.b[k][j]).max(0);
        }
    }
    fm[ck][ck] = -1;
    Ok((em, fm))
}

/// `μ_k(B̃) = E_ε B̃ F_ε` together with `E_ε` and `F_ε`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize, eps: Sign) -> Result<(ExchangeMatrix, IntMatrix, IntMatrix)> {
    let (em, fm) = mutation_factors(b, k, eps)?;
    let nb = int_mat_mul(&int_mat_mul(&em, &b.b), &fm);
    Ok((
        ExchangeMatrix {
            n: b.n,
            ex: b.ex.clone(),
            b: nb,
        },
        em,
        fm,
    ))
}

/// `μ_k(r) = {}^{E_εᵀ} r^{E_ε}`; requires `(r, B̃)` compatible.
pub fn mutate_r(r: &ExpMatrix, b: &ExchangeMatrix, k: usize, eps: Sign) -> Result<ExpMatrix> {
    compatibility_check(r, b)?;
    let (em, _) = mutation_factors(b, k, eps)?;
    r.transform(&em)
}

/// A toric frame with a compatible exchange matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed<E> {
    pub frame: ToricFrame<E>,
    pub b: ExchangeMatrix,
}

/// `[g]_+` and `-[g]_-`, both nonnegative.
pub fn split_signs(g: &[i64]) -> (Vec<i64>, Vec<i64>) {
    (
        g.iter().map(|&x| x.max(0)).collect(),
        g.iter().map(|&x| (-x).max(0)).collect(),
    )
}

/// The right side of the exchange relation,
/// `M(e_k) μ_k(M)(e_k) = Ω_r(e_k, [b^k]_+) M([b^k]_+) + Ω_r(e_k, -[b^k]_-) M(-[b^k]_-)`.
pub fn exchange_numerator<A: Ambient>(amb: &A, seed: &Seed<A::Elem>, k: usize) -> Result<A::Elem> {
    let col = seed.b.column(k).ok_or(Error::NotExchangeable(k + 1))?;
    let (plus, minus) = split_signs(&col);
    let ek = unit(seed.b.n, k);
    let mut out = amb.zero();
    for a in [plus, minus] {
        let w = seed.frame.r.pair(&ek, &a);
        let term = frame_value_nonneg(amb, &seed.frame, &a);
        out = amb.add(&out, &amb.scale(&Coeff::qpow(w), &term));
    }
    Ok(out)
}

/// `μ_k(S)`: the image at `k` becomes `M(-e_k + [b^k]_+) + M(-e_k - [b^k]_-)`,
/// computed as an exact left quotient by `M(e_k)`.
pub fn mutate_seed<A: Ambient>(amb: &A, seed: &Seed<A::Elem>, k: usize) -> Result<Seed<A::Elem>> {
    let numerator = exchange_numerator(amb, seed, k)?;
    let new_k = amb.left_div(&seed.frame.images[k], &numerator)?;
    let r = mutate_r(&seed.frame.r, &seed.b, k, Sign::Plus)?;
    let (b, _, _) = mutate_matrix(&seed.b, k, Sign::Plus)?;
    let mut images = seed.frame.images.clone();
    images[k] = new_k;
    Ok(Seed {
        frame: ToricFrame { r, images },
        b,
    })
}

/// A random compatible pair of size `n` with `m` exchangeable indices,
/// together with the skew-symmetrizer of its principal part.
///
/// Panics when `m = n` is odd: the principal part is then an odd skew
/// matrix up to scaling, so full rank is impossible.
pub fn random_compatible_pair<R: Rng>(rng: &mut R, n: usize, m: usize) -> (ExpMatrix, ExchangeMatrix, Vec<i64>) {
    assert!(m <= n && n > 0);
    assert!(m < n || m % 2 == 0, "no full-rank pair with m = n odd");
    loop {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let mut ex: Vec<usize> = idx[..m].to_vec();
        ex.sort_unstable();
        let d: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let mut s = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let v = rng.gen_range(-2..=2);
                s[i][j] = v;
                s[j][i] = -v;
            }
        }
        let mut b = vec![vec![0i64; m]; n];
        for (ci, &i) in ex.iter().enumerate() {
            for cj in 0..m {
                // B = S D, so D B = D S D is skew-symmetric.
                b[i][cj] = s[ci][cj] * d[cj];
            }
        }
        for i in 0..n {
            if ex.contains(&i) {
                continue;
            }
            for cj in 0..m {
                b[i][cj] = rng.gen_range(-2..=2);
            }
        }
        let bt = ExchangeMatrix { n, ex: ex.clone(), b };
        if bt.rank() < m {
            continue;
        }
        let scale = Rational64::new(rng.gen_range(1..=3), rng.gen_range(1..=2));
        if let Some(r) = solve_compatible_r(rng, &bt, &d, scale) {
            return (r, bt, d);
        }
    }
}

/// A random skew matrix `r` with `Ω_r(b^k, e_j) = q^{δ_kj scale d_k}`.
fn solve_compatible_r<R: Rng>(rng: &mut R, b: &ExchangeMatrix, d: &[i64], scale: Rational64) -> Option<ExpMatrix> {
    let n = b.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (c, &k) in b.ex.iter().enumerate() {
        for j in 0..n {
            let mut row = vec![Rational64::zero(); pairs.len()];
            for (p, &(a, bb)) in pairs.iter().enumerate() {
                // r_{a,bb} = x_p, r_{bb,a} = -x_p; the equation is Σ_i b_ic r_ij.
                if bb == j {
                    row[p] += Rational64::from_integer(b.b[a][c]);
                }
                if a == j {
                    row[p] -= Rational64::from_integer(b.b[bb][c]);
                }
            }
            rows.push(row);
            rhs.push(if j == k { scale * d[c] } else { Rational64::zero() });
        }
    }
    let sys = LinearSystem::from_small(&rows, &rhs);
    let (part, null) = sys.solve_general()?;
    let mut x = part.iter().map(small).collect::<Option<Vec<_>>>()?;
    for v in &null {
        let c = Rational64::new(rng.gen_range(-2..=2), rng.gen_range(1..=2));
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += c * small(vi)?;
        }
    }
    let mut e = vec![vec![Rational64::zero(); n]; n];
    for (p, &(a, bb)) in pairs.iter().enumerate() {
        e[a][bb] = x[p];
        e[bb][a] = -x[p];
    }
    ExpMatrix::new(e).ok()
}

/// The Fomin–Zelevinsky entrywise rule, used as an independent route.
pub fn fz_mutation(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    let ck = b.position(k).ok_or(Error::NotExchangeable(k + 1))?;
    let mut nb = b.b.clone();
    for i in 0..b.n {
        for (cj, _) in b.ex.iter().enumerate() {
            nb[i][cj] = if i == k || cj == ck {
                -b.b[i][cj]
            } else {
                let bik = b.b[i][ck];
                let bkj = b.b[k][cj];
                b.b[i][cj] + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
        }
    }
    Ok(ExchangeMatrix {
        n: b.n,
        ex: b.ex.clone(),
        b: nb,
    })
}

/// The transpose of the columns as rows, for display.
pub fn columns_as_rows(b: &ExchangeMatrix) -> IntMatrix {
    transpose(&b.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::Torus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vacuous_and_failing_compatibility() {
        let r = ExpMatrix::zeros(3);
        assert!(compatibility_check(&r, &ExchangeMatrix::empty(3)).unwrap().is_empty());
        let b = ExchangeMatrix::new(3, vec![0], vec![vec![0], vec![1], vec![0]]).unwrap();
        let err = compatibility_check(&r, &b).unwrap_err();
        assert!(matches!(err, Error::Incompatible(_)));
    }

    #[test]
    fn skew_symmetrizable_examples() {
        let zero = ExchangeMatrix::new(2, vec![0, 1], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(skew_symmetrizable(&zero, &[1, 5]));
        let bad = ExchangeMatrix::new(2, vec![0, 1], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!skew_symmetrizable(&bad, &[1, 1]));
        let b2 = ExchangeMatrix::new(2, vec![0, 1], vec![vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(find_skew_symmetrizer(&b2), Some(vec![1, 2]));
    }

    #[test]
    fn single_column_flip() {
        let b = ExchangeMatrix::new(4, vec![0], vec![vec![0], vec![-1], vec![-1], vec![1]]).unwrap();
        let (m, _, _) = mutate_matrix(&b, 0, Sign::Plus).unwrap();
        assert_eq!(m.column(0).unwrap(), vec![0, 1, 1, -1]);
        assert!(mutate_matrix(&b, 1, Sign::Plus).is_err());
    }

    #[test]
    fn random_pairs_and_seed_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (r, b, d) = random_compatible_pair(&mut rng, 5, 3);
            assert!(skew_symmetrizable(&b, &d));
            let t = compatibility_check(&r, &b).unwrap();
            let k = b.ex[1];
            assert_eq!(mutate_matrix(&b, k, Sign::Plus).unwrap().0, fz_mutation(&b, k).unwrap());
            let torus = Torus::new(r.clone());
            let seed = Seed {
                frame: torus.identity_frame(),
                b: b.clone(),
            };
            let s1 = mutate_seed(&torus, &seed, k).unwrap();
            assert_eq!(compatibility_check(&s1.frame.r, &s1.b).unwrap(), t);
            let s2 = mutate_seed(&torus, &s1, k).unwrap();
            assert_eq!(s2, seed);
        }
    }
}
