//! The permutations `Ξ_N` whose prefixes are intervals, the chain `Γ_N`,
//! the reordering `τ_•`, the toric frames `M_τ` and the interval frames
//! `M_[i,s^m(i)]`.

use crate::bicharacter::{unit, ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::exchangesolver::btilde_for_tau;
use crate::mutation::{mutate_matrix, mutate_seed, ExchangeMatrix, Seed, Sign};
use crate::orealgebra::{PBWElement, Presentation};
use crate::primeseq::{pi_f_data, EtaData, IntervalPrimes};
use crate::qtorus::{frame_value_nonneg, Ambient, ToricFrame};
use crate::scalarfield::Coeff;

/// Whether `τ([1,k])` is an interval for every `k` (0-based one-line form).
pub fn is_xi(tau: &[usize]) -> bool {
    let n = tau.len();
    let mut seen = vec![false; n];
    let (mut lo, mut hi) = (usize::MAX, 0);
    for (k, &t) in tau.iter().enumerate() {
        if t >= n || seen[t] {
            return false;
        }
        seen[t] = true;
        if k == 0 {
            lo = t;
            hi = t;
        } else if t + 1 == lo {
            lo = t;
        } else if t == hi + 1 {
            hi = t;
        } else {
            return false;
        }
    }
    true
}

/// All of `Ξ_N`, in lexicographic order of one-line forms.
pub fn enumerate_xi(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, cur: &mut Vec<usize>, lo: usize, hi: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        if lo > 0 {
            cur.push(lo - 1);
            extend(n, cur, lo - 1, hi, out);
            cur.pop();
        }
        if hi + 1 < n {
            cur.push(hi + 1);
            extend(n, cur, lo, hi + 1, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        extend(n, &mut vec![start], start, start, &mut out);
    }
    out.sort();
    out
}

/// `τ_{i,j} = [i+1, ..., j, i, j+1, ..., N, i-1, ..., 1]` for `1 ≤ i ≤ j ≤ N`
/// (1-based arguments, 0-based output).
pub fn tau_ij(n: usize, i: usize, j: usize) -> Vec<usize> {
    assert!(1 <= i && i <= j && j <= n);
    let mut v: Vec<usize> = (i + 1..=j).collect();
    v.push(i);
    v.extend(j + 1..=n);
    v.extend((1..i).rev());
    v.into_iter().map(|x| x - 1).collect()
}

/// `Γ_N`: `id = τ_{1,1} ≺ τ_{1,2} ≺ ... ≺ τ_{1,N} = τ_{2,2} ≺ ... ≺ τ_{N-1,N} = w∘`,
/// `N(N-1)/2 + 1` distinct elements.
pub fn gamma_chain(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for i in 1..n {
        for j in i + 1..=n {
            out.push(tau_ij(n, i, j));
        }
    }
    out
}

/// The position `k` with `τ' = τ (k, k+1)`, if the two differ by one
/// adjacent transposition.
pub fn adjacent_swap(tau: &[usize], tau2: &[usize]) -> Option<usize> {
    let diff: Vec<usize> = (0..tau.len()).filter(|&k| tau[k] != tau2[k]).collect();
    match diff.as_slice() {
        [a, b] if *b == a + 1 && tau[*a] == tau2[*b] && tau[*b] == tau2[*a] => Some(*a),
        _ => None,
    }
}

/// `τ_•`: within each level set of `η`, sends `τ(k_i)` (`k_1 < k_2 < ...`) to
/// the `i`-th smallest element of the level set.
pub fn tau_bullet(eta: &[i64], tau: &[usize]) -> Vec<usize> {
    let n = tau.len();
    let mut out = vec![0; n];
    let mut values: Vec<i64> = eta.to_vec();
    values.sort_unstable();
    values.dedup();
    for a in values {
        let listed: Vec<usize> = tau.iter().copied().filter(|&t| eta[t] == a).collect();
        let mut sorted = listed.clone();
        sorted.sort_unstable();
        for (t, s) in listed.into_iter().zip(sorted) {
            out[t] = s;
        }
    }
    out
}

/// The frame `M_τ` with images `ȳ_{τ, (τ_•τ)^{-1}(a)}` in the PBW algebra.
#[derive(Clone, Debug)]
pub struct TauFrame {
    pub tau: Vec<usize>,
    pub tau_bullet: Vec<usize>,
    /// `π = τ_•τ` as a map from positions to frame indices.
    pub pi: Vec<usize>,
    /// The level-set interval `[a, b]` of the image at each frame index.
    pub intervals: Vec<(usize, usize)>,
    /// `e_[a,b]` for each frame index.
    pub supports: Vec<Vec<i64>>,
    /// Grading of each image, one column per frame index.
    pub weights: IntMatrix,
    pub r: ExpMatrix,
    pub images: Vec<PBWElement>,
}

impl TauFrame {
    pub fn toric(&self) -> ToricFrame<PBWElement> {
        ToricFrame {
            r: self.r.clone(),
            images: self.images.clone(),
        }
    }
}

/// The interval of `ȳ_{τ,k}`: `[p^m(τ(k)), τ(k)]` when `τ(k) ≥ τ(1)` and
/// `[τ(k), s^m(τ(k))]` otherwise, with `m` maximal inside `τ([1,k])`.
pub fn tau_interval(eta: &EtaData, tau: &[usize], k: usize) -> (usize, usize) {
    let lo = *tau[..=k].iter().min().expect("nonempty");
    let hi = *tau[..=k].iter().max().expect("nonempty");
    let t = tau[k];
    let inside = |x: Option<usize>| x.filter(|&v| lo <= v && v <= hi);
    if t >= tau[0] {
        let mut a = t;
        while let Some(b) = inside(eta.p[a]) {
            a = b;
        }
        (a, t)
    } else {
        let mut b = t;
        while let Some(c) = inside(eta.s[b]) {
            b = c;
        }
        (t, b)
    }
}

/// Builds `M_τ` on a presentation satisfying the `π` normalization. The
/// matrix is computed from `ν_τ` and `η∘τ`, then conjugated by `τ_•τ`; it is
/// cross-checked against `Ω_ν` of the image supports.
pub fn frame_for_tau(p: &Presentation, iv: &IntervalPrimes, tau: &[usize]) -> Result<TauFrame> {
    let n = p.n();
    let eta = &iv.eta;
    if tau.len() != n || !is_xi(tau) {
        return Err(Error::Dimension(format!("{:?} is not in Xi_{n}", one_based(tau))));
    }
    let tb = tau_bullet(&eta.eta, tau);
    let pi: Vec<usize> = tau.iter().map(|&t| tb[t]).collect();
    let mut pi_inv = vec![0; n];
    for (k, &a) in pi.iter().enumerate() {
        pi_inv[a] = k;
    }
    let nu = p.nu();
    let nu_tau = nu.permuted(tau);
    let eta_tau = EtaData::from_eta(tau.iter().map(|&t| eta.eta[t]).collect());
    let ebar_tau: Vec<Vec<i64>> = (0..n).map(|l| eta_tau.ebar(l)).collect();
    let mut intervals = vec![(0, 0); n];
    let mut supports = vec![Vec::new(); n];
    let mut images = vec![PBWElement::zero(); n];
    for a in 0..n {
        let k = pi_inv[a];
        let (lo, hi) = tau_interval(eta, tau, k);
        let support = eta.e_interval(lo, hi);
        let mut pushed = vec![0; n];
        for (l, &v) in ebar_tau[k].iter().enumerate() {
            pushed[tau[l]] += v;
        }
        if pushed != support {
            return Err(Error::Check(format!(
                "image {} of tau {:?} has unexpected support",
                a + 1,
                one_based(tau)
            )));
        }
        intervals[a] = (lo, hi);
        supports[a] = support;
        images[a] = iv.ybar(&nu, lo, hi)?;
    }
    let mut r = vec![vec![num_rational::Rational64::default(); n]; n];
    for a in 0..n {
        for b in 0..n {
            r[a][b] = nu_tau.pair(&ebar_tau[pi_inv[a]], &ebar_tau[pi_inv[b]]);
            if r[a][b] != nu.pair(&supports[a], &supports[b]) {
                return Err(Error::Check(format!(
                    "r_tau entry ({}, {}) disagrees with the supports",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    let mut weights = vec![vec![0; n]; p.weights().len()];
    for a in 0..n {
        let w = p.weight_of_vec(&supports[a]);
        if p.weight_of(&images[a])?.as_ref() != Some(&w) {
            return Err(Error::Check(format!(
                "image {} is not homogeneous of the expected weight",
                a + 1
            )));
        }
        for (row, &x) in w.iter().enumerate() {
            weights[row][a] = x;
        }
    }
    Ok(TauFrame {
        tau: tau.to_vec(),
        tau_bullet: tb,
        pi,
        intervals,
        supports,
        weights,
        r: ExpMatrix::new(r)?,
        images,
    })
}

pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// `M_τ(e_a) M_τ(e_b) = Ω_{r_τ}(e_a, e_b)^2 M_τ(e_b) M_τ(e_a)` for all pairs.
pub fn check_frame_commutation(p: &Presentation, f: &TauFrame) -> Result<()> {
    let n = p.n();
    for a in 0..n {
        for b in 0..a {
            let w = f.r.pair(&unit(n, a), &unit(n, b)) * 2;
            let lhs = p.mul(&f.images[a], &f.images[b]);
            let rhs = p.mul(&f.images[b], &f.images[a]).scale(&Coeff::qpow(w));
            if lhs != rhs {
                return Err(Error::Check(format!(
                    "images {} and {} do not quasi-commute",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    Ok(())
}

/// One transition `τ → τ' = τ(k, k+1)` along `Γ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub tau: Vec<usize>,
    pub next: Vec<usize>,
    pub k: usize,
    /// `k_• = τ_•τ(k)` when `η(τ(k)) = η(τ(k+1))`.
    pub mutated_at: Option<usize>,
}

/// Frames and exchange matrices for every element of `Γ_N`.
pub fn gamma_seeds(p: &Presentation, iv: &IntervalPrimes, d: &[i64]) -> Result<Vec<(TauFrame, ExchangeMatrix)>> {
    use rayon::prelude::*;
    gamma_chain(p.n())
        .par_iter()
        .map(|tau| {
            let f = frame_for_tau(p, iv, tau)?;
            let b = btilde_for_tau(p, &iv.eta, &f, d)?;
            Ok((f, b))
        })
        .collect()
}

/// Checks each consecutive pair of `Γ_N`: equal seeds when the swapped
/// indices lie in different level sets, and otherwise
/// `M_{τ'} = μ_{k_•}(M_τ)`, `B̃_{τ'} = μ_{k_•}(B̃_τ)` with the mutated image
/// obtained by exact left division in the algebra.
pub fn verify_chain(p: &Presentation, seeds: &[(TauFrame, ExchangeMatrix)]) -> Result<Vec<ChainStep>> {
    let eta = p.eta().map(|e| e.to_vec());
    let mut steps = Vec::new();
    for w in seeds.windows(2) {
        let (fa, ba) = &w[0];
        let (fb, bb) = &w[1];
        let k = adjacent_swap(&fa.tau, &fb.tau).ok_or_else(|| {
            Error::Check(format!(
                "{:?} and {:?} are not adjacent",
                one_based(&fa.tau),
                one_based(&fb.tau)
            ))
        })?;
        let eta = eta.clone().unwrap_or_else(|| (0..p.n() as i64).collect());
        let same = eta[fa.tau[k]] == eta[fa.tau[k + 1]];
        let step = ChainStep {
            tau: fa.tau.clone(),
            next: fb.tau.clone(),
            k,
            mutated_at: same.then(|| fa.pi[k]),
        };
        let label = format!("{:?} -> {:?}", one_based(&fa.tau), one_based(&fb.tau));
        if !same {
            if fa.images != fb.images || fa.r != fb.r || ba != bb {
                return Err(Error::Check(format!(
                    "{label}: seeds differ across distinct level sets"
                )));
            }
        } else {
            let kb = fa.pi[k];
            let seed = Seed {
                frame: fa.toric(),
                b: ba.clone(),
            };
            let mu = mutate_seed(p, &seed, kb)?;
            if mu.frame.images != fb.images {
                return Err(Error::Check(format!("{label}: mutated images differ at {}", kb + 1)));
            }
            if mu.frame.r != fb.r {
                return Err(Error::Check(format!("{label}: mutated matrix r differs")));
            }
            let (mb, _, _) = mutate_matrix(ba, kb, Sign::Plus)?;
            if &mb != bb || &mu.b != bb {
                return Err(Error::Check(format!("{label}: mutated exchange matrix differs")));
            }
        }
        steps.push(step);
    }
    Ok(steps)
}

/// For each generator, a `τ ∈ Γ_N` and frame index whose image is a scalar
/// multiple of `x_k`.
pub fn generator_coverage(p: &Presentation, seeds: &[(TauFrame, ExchangeMatrix)]) -> Vec<Option<(Vec<usize>, usize)>> {
    (0..p.n())
        .map(|k| {
            let x = p.generator(k);
            seeds.iter().find_map(|(f, _)| {
                f.images
                    .iter()
                    .position(|im| {
                        im.terms.len() == 1 && im.leading().is_some_and(|(m, _)| *m == x.leading().unwrap().0.clone())
                    })
                    .map(|a| (f.tau.clone(), a))
            })
        })
        .collect()
}

/// The frame `M_[i,s^m(i)]` on the generators `x_i..x_{s^m(i)}` (local
/// indices), with `e'_k` recorded as global vectors.
#[derive(Clone, Debug)]
pub struct IntervalFrame {
    pub lo: usize,
    pub hi: usize,
    pub m: usize,
    pub eprime: Vec<Vec<i64>>,
    pub r: ExpMatrix,
    pub images: Vec<PBWElement>,
    /// `g_[i,s^m(i)]` in local coordinates.
    pub g: Vec<i64>,
    pub f: Vec<i64>,
}

pub fn interval_frame(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<IntervalFrame> {
    let eta = &iv.eta;
    let n = p.n();
    let top = eta
        .s_pow(i, m)
        .ok_or_else(|| Error::Dimension(format!("s^{m}({}) is +infinity", i + 1)))?;
    if m == 0 {
        return Err(Error::Dimension("interval frames need m >= 1".into()));
    }
    let prev = eta.s_pow(i, m - 1).expect("below top");
    let nu = p.nu();
    let t = top - i + 1;
    let mut eprime = Vec::with_capacity(t);
    let mut images = Vec::with_capacity(t);
    for k in i..=top {
        let (a, b) = if k == i {
            (i, prev)
        } else if k == top {
            (i, top)
        } else {
            (eta.p_pow(k, eta.o_minus_from(i + 1, k)).expect("within range"), k)
        };
        eprime.push(eta.e_interval(a, b));
        images.push(iv.ybar(&nu, a, b)?);
    }
    let mut r = vec![vec![num_rational::Rational64::default(); t]; t];
    for a in 0..t {
        for b in 0..t {
            r[a][b] = nu.pair(&eprime[a], &eprime[b]);
        }
    }
    let r = ExpMatrix::new(r)?;
    // The same matrix as the restriction of ν reindexed by σ(e_k) = e'_k.
    let idx: Vec<usize> = (i..=top).collect();
    let sigma: IntMatrix = (0..t)
        .map(|row| (0..t).map(|col| eprime[col][i + row]).collect())
        .collect();
    if nu.restrict(&idx).transform(&sigma)? != r {
        return Err(Error::Check(format!(
            "interval frame matrix for [{}, {}] disagrees with nu_sigma",
            i + 1,
            top + 1
        )));
    }
    let (_, f) = pi_f_data(p, iv, i, m)?;
    let chain: Vec<usize> = (0..=m).map(|l| eta.s_pow(i, l).expect("in range")).collect();
    let pset: Vec<usize> = (i..=top)
        .filter(|k| !chain.contains(k) && eta.s[*k].map_or(true, |s| s > top))
        .collect();
    let mut g = vec![0; t];
    let mut rebuilt = vec![0; n];
    for &k in &pset {
        g[k - i] = f[k];
        for (x, y) in rebuilt.iter_mut().zip(&eprime[k - i]) {
            *x += f[k] * y;
        }
    }
    if rebuilt != f {
        return Err(Error::Check(format!(
            "f_[{}, {}] is not a combination of the e'_k",
            i + 1,
            top + 1
        )));
    }
    Ok(IntervalFrame {
        lo: i,
        hi: top,
        m,
        eprime,
        r,
        images,
        g,
        f,
    })
}

/// `M(e_i) ȳ_[s(i),s^m(i)] = Ω_r(e_i, a) M(a) + Ω_r(e_i, g) M(g)`, the
/// interval mutation identity multiplied on the left by `M(e_i)`, with
/// `a = e_{s^{m-1}(i)} + e_{s^m(i)}` (`m > 1`) or `e_{s(i)}` (`m = 1`).
pub fn check_interval_mutation(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<()> {
    let fr = interval_frame(p, iv, i, m)?;
    let t = fr.hi - fr.lo + 1;
    let eta = &iv.eta;
    let si = eta.s[i].expect("m >= 1");
    let mut a = vec![0i64; t];
    a[fr.hi - i] = 1;
    if m > 1 {
        a[eta.s_pow(i, m - 1).expect("in range") - i] = 1;
    }
    let tf = ToricFrame {
        r: fr.r.clone(),
        images: fr.images.clone(),
    };
    let e0 = unit(t, 0);
    let lhs = p.mul(&fr.images[0], &iv.ybar(&p.nu(), si, fr.hi)?);
    let ma = frame_value_nonneg(p, &tf, &a).scale(&Coeff::qpow(fr.r.pair(&e0, &a)));
    let mg = frame_value_nonneg(p, &tf, &fr.g).scale(&Coeff::qpow(fr.r.pair(&e0, &fr.g)));
    if lhs != Ambient::add(p, &ma, &mg) {
        return Err(Error::Check(format!(
            "interval mutation identity fails at ({}, {m})",
            i + 1
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_sizes() {
        assert_eq!(enumerate_xi(2), vec![vec![0, 1], vec![1, 0]]);
        for n in 1..=7 {
            let xi = enumerate_xi(n);
            assert_eq!(xi.len(), 1 << (n - 1));
            assert!(xi.contains(&(0..n).collect()));
        }
    }

    #[test]
    fn gamma_for_three() {
        let g = gamma_chain(3);
        assert_eq!(g, vec![vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(gamma_chain(1), vec![vec![0]]);
        let g6 = gamma_chain(6);
        assert_eq!(g6.len(), 16);
        assert_eq!(g6.last().unwrap(), &vec![5, 4, 3, 2, 1, 0]);
        assert!(g6.windows(2).all(|w| adjacent_swap(&w[0], &w[1]).is_some()));
        assert!(g6.iter().all(|t| is_xi(t)));
    }

    #[test]
    fn bullet_example() {
        let eta = [1, 2, 3, 1, 2, 1];
        let tau = [2, 3, 1, 4, 0, 5];
        let tb = tau_bullet(&eta, &tau);
        assert_eq!(tb, vec![3, 1, 2, 0, 4, 5]);
        assert_eq!(tau_bullet(&eta, &[0, 1, 2, 3, 4, 5]), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(tau_bullet(&[0, 1, 2], &[2, 1, 0]), vec![0, 1, 2]);
    }
}
