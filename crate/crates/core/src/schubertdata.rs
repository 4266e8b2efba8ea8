//! Root-system combinatorics of quantum Schubert cells: roots of a reduced
//! word, the exchange matrix `B̃^w`, the frame matrix `r(M^w)` and their
//! compatibility. Cartan matrices follow Bourbaki numbering with
//! `c_ij = ⟨α_i^∨, α_j⟩`.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::bicharacter::{ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::exchangesolver::LinearSystem;
use crate::mutation::{skew_symmetrizable, ExchangeMatrix};

/// A finite-type Cartan matrix with `d_i = ‖α_i‖²/2` (short roots have
/// `d = 1`) and the Gram matrix `⟨ϖ_i, ϖ_j⟩ = (D C^{-1})_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub name: String,
    pub cartan: IntMatrix,
    pub d: Vec<i64>,
    pub gram: Vec<Vec<Rational64>>,
}

impl CartanData {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("no simple Lie algebra of type {letter}{rank}"));
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(bad());
        }
        let n = rank;
        let mut c = vec![vec![0i64; n]; n];
        let mut link = |a: usize, b: usize, c_ab: i64, c_ba: i64| {
            c[a][b] = c_ab;
            c[b][a] = c_ba;
        };
        match letter {
            'A' | 'B' | 'C' => {
                for i in 0..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                if letter == 'B' {
                    link(n - 2, n - 1, -1, -2);
                } else if letter == 'C' {
                    link(n - 2, n - 1, -2, -1);
                }
            }
            'D' => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            'E' => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            'F' => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            _ => link(0, 1, -3, -1),
        }
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let d: Vec<i64> = match letter {
            'B' => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            'C' => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
            'F' => vec![2, 2, 1, 1],
            'G' => vec![1, 3],
            _ => vec![1; n],
        };
        Self::from_matrix(format!("{letter}{rank}"), c, d)
    }

    /// Validates symmetrizability and positive definiteness, then inverts.
    pub fn from_matrix(name: String, cartan: IntMatrix, d: Vec<i64>) -> Result<Self> {
        let n = cartan.len();
        for i in 0..n {
            for j in 0..n {
                if d[i] * cartan[i][j] != d[j] * cartan[j][i] {
                    return Err(Error::Dimension(format!("{name}: D C is not symmetric")));
                }
            }
        }
        // Positive leading minors of D C certify finite type.
        let sym: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer(d[i] * cartan[i][j])).collect())
            .collect();
        for k in 1..=n {
            let minor: Vec<Vec<Rational64>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
            if rat_det(minor) <= Rational64::zero() {
                return Err(Error::Dimension(format!("{name} is not of finite type")));
            }
        }
        let mut gram = vec![vec![Rational64::zero(); n]; n];
        for j in 0..n {
            // Column j of C^{-1}: C x = e_j.
            let a: Vec<Vec<Rational64>> = cartan
                .iter()
                .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
                .collect();
            let rhs: Vec<Rational64> = (0..n).map(|i| Rational64::from_integer(i64::from(i == j))).collect();
            let x = LinearSystem::from_small(&a, &rhs).solve_unique()?;
            for i in 0..n {
                let xi = crate::exchangesolver::small(&x[i]).ok_or_else(|| Error::Dimension("overflow".into()))?;
                gram[i][j] = xi * d[i];
            }
        }
        Ok(CartanData { name, cartan, d, gram })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `⟨λ, μ⟩` for weights in fundamental-weight coordinates.
    pub fn pair_weights(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let n = self.rank();
        let mut s = Rational64::zero();
        for i in 0..n {
            for j in 0..n {
                s += self.gram[i][j] * (a[i] * b[j]);
            }
        }
        s
    }

    /// `⟨α, β⟩ = Σ a_i b_j d_i c_ij` for roots in simple-root coordinates.
    pub fn pair_roots(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * b[j] * self.d[i] * self.cartan[i][j])
            .sum()
    }

    /// `s_i` on simple-root coordinates: `v - ⟨α_i^∨, v⟩ α_i`.
    pub fn reflect_root(&self, i: usize, v: &mut [i64]) {
        let k: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * v[j]).sum();
        v[i] -= k;
    }

    /// `s_i` on fundamental-weight coordinates: `λ - λ_i α_i`.
    pub fn reflect_weight(&self, i: usize, v: &mut [i64]) {
        let li = v[i];
        for (j, x) in v.iter_mut().enumerate() {
            *x -= li * self.cartan[j][i];
        }
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.rank()) {
            Some(i) => Err(Error::Word(format!("letter {} out of range for {}", i + 1, self.name))),
            None => Ok(()),
        }
    }
}

fn rat_det(mut a: Vec<Vec<Rational64>>) -> Rational64 {
    let n = a.len();
    let mut det = Rational64::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational64::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = f * a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// `β_k = w_{≤k-1} α_{i_k}` in simple-root coordinates (0-based letters);
/// errors when the word is not reduced.
pub fn roots_for_word(c: &CartanData, word: &[usize]) -> Result<Vec<Vec<i64>>> {
    c.check_word(word)?;
    let n = c.rank();
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(word.len());
    for (k, &ik) in word.iter().enumerate() {
        let mut v = vec![0; n];
        v[ik] = 1;
        for &i in word[..k].iter().rev() {
            c.reflect_root(i, &mut v);
        }
        if v.iter().any(|&x| x < 0) || out.contains(&v) {
            return Err(Error::Word(format!("word is not reduced at position {}", k + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

/// All reduced words of length exactly `len`, in lexicographic order.
pub fn reduced_words(c: &CartanData, len: usize) -> Vec<Vec<usize>> {
    // w(α_i) > 0 decides whether w s_i is longer; w is tracked by the images
    // of the simple roots.
    fn go(c: &CartanData, len: usize, word: &mut Vec<usize>, images: Vec<Vec<i64>>, out: &mut Vec<Vec<usize>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        let n = c.rank();
        for i in 0..n {
            if images[i].iter().any(|&x| x < 0) {
                continue;
            }
            // (w s_i)(α_j) = w(α_j - c_ij α_i)
            let next: Vec<Vec<i64>> = (0..n)
                .map(|j| (0..n).map(|t| images[j][t] - c.cartan[i][j] * images[i][t]).collect())
                .collect();
            word.push(i);
            go(c, len, word, next, out);
            word.pop();
        }
    }
    let n = c.rank();
    let id: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|t| i64::from(t == j)).collect()).collect();
    let mut out = Vec::new();
    go(c, len, &mut Vec::new(), id, &mut out);
    out
}

/// Per-position data of a reduced word.
#[derive(Clone, Debug)]
pub struct WordData {
    pub word: Vec<usize>,
    pub roots: Vec<Vec<i64>>,
    pub p: Vec<Option<usize>>,
    pub s: Vec<Option<usize>>,
    /// `w_{≤k-1} ϖ_{i_k}` and `w ϖ_{i_k}` in fundamental-weight coordinates.
    pub prefix_weight: Vec<Vec<i64>>,
    pub full_weight: Vec<Vec<i64>>,
}

impl WordData {
    pub fn new(c: &CartanData, word: &[usize]) -> Result<Self> {
        let roots = roots_for_word(c, word)?;
        let n = c.rank();
        let act = |prefix: &[usize], i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            for &j in prefix.iter().rev() {
                c.reflect_weight(j, &mut v);
            }
            v
        };
        let len = word.len();
        let p = (0..len).map(|k| (0..k).rev().find(|&j| word[j] == word[k])).collect();
        let s = (0..len).map(|k| (k + 1..len).find(|&j| word[j] == word[k])).collect();
        Ok(WordData {
            word: word.to_vec(),
            roots,
            p,
            s,
            prefix_weight: (0..len).map(|k| act(&word[..k], word[k])).collect(),
            full_weight: (0..len).map(|k| act(word, word[k])).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Columns: `{k : p(k) ≠ -∞}`.
    pub fn ex(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.p[k].is_some()).collect()
    }

    /// `λ_kj = q^{-⟨β_k, β_j⟩}` as an exponent matrix.
    pub fn lambda(&self, c: &CartanData) -> ExpMatrix {
        let n = self.len();
        let e = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let v = Rational64::from_integer(c.pair_roots(&self.roots[k], &self.roots[j]));
                        match k.cmp(&j) {
                            std::cmp::Ordering::Greater => -v,
                            std::cmp::Ordering::Less => v,
                            std::cmp::Ordering::Equal => Rational64::zero(),
                        }
                    })
                    .collect()
            })
            .collect();
        ExpMatrix::new(e).expect("skew by construction")
    }
}

/// `b_jk = 1` if `j = p(k)`, `-1` if `j = s(k)`, `c_{i_j i_k}` if
/// `p(j) < p(k) < j < k`, `-c_{i_j i_k}` if `p(k) < p(j) < k < j`, else `0`.
pub fn btilde_w(c: &CartanData, word: &[usize]) -> Result<ExchangeMatrix> {
    let wd = WordData::new(c, word)?;
    Ok(btilde_from(c, &wd))
}

fn btilde_from(c: &CartanData, wd: &WordData) -> ExchangeMatrix {
    let n = wd.len();
    // -∞ sorts below every index.
    let pv = |x: usize| wd.p[x].map_or(-1, |v| v as i64);
    let ex = wd.ex();
    let cols: Vec<Vec<i64>> = ex
        .iter()
        .map(|&k| {
            (0..n)
                .map(|j| {
                    let (jj, kk) = (j as i64, k as i64);
                    if wd.p[k] == Some(j) {
                        1
                    } else if wd.s[k] == Some(j) {
                        -1
                    } else if pv(j) < pv(k) && pv(k) < jj && jj < kk {
                        c.cartan[wd.word[j]][wd.word[k]]
                    } else if pv(k) < pv(j) && pv(j) < kk && kk < jj {
                        -c.cartan[wd.word[j]][wd.word[k]]
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix::from_columns(n, ex, &cols).expect("shapes agree")
}

fn add(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

/// `r(M^w)_jk = ½⟨(w_{≤j-1} + w)ϖ_{i_j}, (w_{≤k-1} - w)ϖ_{i_k}⟩` for `j < k`,
/// extended skew-symmetrically (exponents of `q`).
pub fn r_of_mw(c: &CartanData, word: &[usize]) -> Result<ExpMatrix> {
    Ok(r_from(c, &WordData::new(c, word)?))
}

fn r_from(c: &CartanData, wd: &WordData) -> ExpMatrix {
    let n = wd.len();
    let half = Rational64::new(1, 2);
    let mut e = vec![vec![Rational64::zero(); n]; n];
    for j in 0..n {
        for k in j + 1..n {
            let a = add(&wd.prefix_weight[j], &wd.full_weight[j], 1);
            let b = add(&wd.prefix_weight[k], &wd.full_weight[k], -1);
            let v = c.pair_weights(&a, &b) * half;
            e[j][k] = v;
            e[k][j] = -v;
        }
    }
    ExpMatrix::new(e).expect("skew by construction")
}

/// Result of the compatibility check for one word.
#[derive(Clone, Debug)]
pub struct UwReport {
    pub word: Vec<usize>,
    pub btilde: ExchangeMatrix,
    pub r: ExpMatrix,
    /// `(k, l)` pairs violating `Ω_r(b^k, e_l) = q_{i_k}^{-δ_kl}`.
    pub scalar_failures: Vec<(usize, usize)>,
    /// Columns with nonzero grading `Σ_j b_jk (w - w_{≤j-1}) ϖ_{i_j}`.
    pub grading_failures: Vec<usize>,
    pub skew_symmetrizable: bool,
}

impl UwReport {
    pub fn passed(&self) -> bool {
        self.scalar_failures.is_empty() && self.grading_failures.is_empty() && self.skew_symmetrizable
    }
}

pub fn verify_uw_compat(c: &CartanData, word: &[usize]) -> Result<UwReport> {
    let wd = WordData::new(c, word)?;
    let b = btilde_from(c, &wd);
    let r = r_from(c, &wd);
    let n = wd.len();
    let mut scalar_failures = Vec::new();
    let mut grading_failures = Vec::new();
    for (col, &k) in b.ex.iter().enumerate() {
        let bk: Vec<i64> = (0..n).map(|j| b.b[j][col]).collect();
        for l in 0..n {
            let mut el = vec![0; n];
            el[l] = 1;
            let want = Rational64::from_integer(if k == l { -c.d[wd.word[k]] } else { 0 });
            if r.pair(&bk, &el) != want {
                scalar_failures.push((k, l));
            }
        }
        let mut g = vec![0i64; c.rank()];
        for j in 0..n {
            g = add(&g, &add(&wd.full_weight[j], &wd.prefix_weight[j], -1), bk[j]);
        }
        if g.iter().any(|&x| x != 0) {
            grading_failures.push(k);
        }
    }
    let d: Vec<i64> = b.ex.iter().map(|&k| c.d[wd.word[k]]).collect();
    let skew = skew_symmetrizable(&b, &d);
    Ok(UwReport {
        word: word.to_vec(),
        btilde: b,
        r,
        scalar_failures,
        grading_failures,
        skew_symmetrizable: skew,
    })
}

/// Checks every reduced word of length `1..=max_len`; returns the number of
/// words checked and the failing ones.
pub fn verify_all_words(c: &CartanData, max_len: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    use rayon::prelude::*;
    let words: Vec<Vec<usize>> = (1..=max_len).flat_map(|l| reduced_words(c, l)).collect();
    let bad = words
        .par_iter()
        .map(|w| verify_uw_compat(c, w).map(|r| (!r.passed()).then(|| w.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok((words.len(), bad.into_iter().flatten().collect()))
}

/// Index bijections `σ` (0-based, `σ[j]` is the Schubert index matched to
/// generator `j`) with `B̃^w_{σ(j), σ(k)} = B̃_{j,k}` and
/// `λ^w_{σ(j)σ(k)} = λ_{jk}^ε` for a common `ε = ±1`, found by brute force.
pub fn match_indices(
    bw: &ExchangeMatrix,
    lambda_w: &ExpMatrix,
    b: &ExchangeMatrix,
    lambda: &ExpMatrix,
) -> Vec<(Vec<usize>, i64)> {
    let n = b.n;
    if bw.n != n || bw.ex.len() != b.ex.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |s| {
        for eps in [1i64, -1] {
            let lam_ok = (0..n).all(|j| (0..n).all(|k| lambda_w.get(s[j], s[k]) == lambda.get(j, k) * eps));
            let b_ok = lam_ok
                && b.ex
                    .iter()
                    .all(|&k| bw.position(s[k]).is_some() && (0..n).all(|j| bw.entry(s[j], s[k]) == b.entry(j, k)));
            if b_ok {
                out.push((s.to_vec(), eps));
            }
        }
    });
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Parses `"1,2,1"` or `"1 2 1"` into 0-based letters.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Error::Parse(format!("bad letter {t:?} in word"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_roots_and_column() {
        let c = CartanData::new('A', 2).unwrap();
        assert_eq!(
            roots_for_word(&c, &[0, 1, 0]).unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![0, 1]]
        );
        assert!(roots_for_word(&c, &[0, 0]).is_err());
        let b = btilde_w(&c, &[0, 1, 0]).unwrap();
        assert_eq!(b.ex, vec![2]);
        assert_eq!(b.column(2).unwrap(), vec![1, -1, 0]);
        let rep = verify_uw_compat(&c, &[0, 1, 0]).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn gram_matches_hand_values() {
        // A2: ⟨ϖ_1, ϖ_1⟩ = 2/3, ⟨ϖ_1, ϖ_2⟩ = 1/3.
        let c = CartanData::new('A', 2).unwrap();
        assert_eq!(c.gram[0][0], Rational64::new(2, 3));
        assert_eq!(c.gram[0][1], Rational64::new(1, 3));
        // B2, α_2 short: D C^{-1} = [[2, 1], [1, 1]].
        let b2 = CartanData::new('B', 2).unwrap();
        assert_eq!(b2.gram[0][0], Rational64::from_integer(2));
        assert_eq!(b2.gram[1][1], Rational64::from_integer(1));
        assert_eq!(b2.gram[0][1], Rational64::from_integer(1));
        assert!(CartanData::new('D', 3).is_err());
        assert!(CartanData::from_matrix("aff".into(), vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).is_err());
    }

    #[test]
    fn word_counts() {
        // |W(A2)| = 6; the longest element has two reduced words.
        let c = CartanData::new('A', 2).unwrap();
        assert_eq!(reduced_words(&c, 3), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(reduced_words(&c, 4).is_empty());
        let g = CartanData::new('G', 2).unwrap();
        assert_eq!(reduced_words(&g, 6).len(), 2);
        assert!(verify_uw_compat(&g, &[0, 1, 0, 1, 0, 1]).unwrap().passed());
    }

    #[test]
    fn distinct_letters_give_no_columns() {
        let c = CartanData::new('A', 3).unwrap();
        assert!(btilde_w(&c, &[0, 1, 2]).unwrap().ex.is_empty());
        assert_eq!(parse_word("2, 1 3").unwrap(), vec![1, 0, 2]);
        assert!(parse_word("0").is_err());
    }
}
