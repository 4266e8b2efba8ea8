//! The sequence of homogeneous prime elements of a CGL extension, the
//! level-set data `η, p, s`, interval primes `y_[i,s^m(i)]`, the normal
//! elements `u_[i,s^m(i)]` with their leading data, and the rescaling of the
//! generators that normalizes `π_[i,s(i)]`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bicharacter::{unit, ExpMatrix};
use crate::error::{Error, Result};
use crate::orealgebra::{Mono, PBWElement, Presentation};
use crate::scalarfield::{coeff_div, Coeff, ScalarExp};

/// `η` with its predecessor and successor functions (`None` is `∓∞`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaData {
    pub eta: Vec<i64>,
    pub p: Vec<Option<usize>>,
    pub s: Vec<Option<usize>>,
}

impl EtaData {
    pub fn from_eta(eta: Vec<i64>) -> Self {
        let n = eta.len();
        let p = (0..n).map(|k| (0..k).rev().find(|&j| eta[j] == eta[k])).collect();
        let s = (0..n).map(|k| (k + 1..n).find(|&j| eta[j] == eta[k])).collect();
        EtaData { eta, p, s }
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn p_pow(&self, k: usize, m: usize) -> Option<usize> {
        (0..m).try_fold(k, |acc, _| self.p[acc])
    }

    pub fn s_pow(&self, k: usize, m: usize) -> Option<usize> {
        (0..m).try_fold(k, |acc, _| self.s[acc])
    }

    /// `O_-(k) = max{m : p^m(k) ≠ -∞}`.
    pub fn o_minus(&self, k: usize) -> usize {
        let mut m = 0;
        while self.p_pow(k, m + 1).is_some() {
            m += 1;
        }
        m
    }

    /// `O_+(k) = max{m : s^m(k) ≠ +∞}`.
    pub fn o_plus(&self, k: usize) -> usize {
        let mut m = 0;
        while self.s_pow(k, m + 1).is_some() {
            m += 1;
        }
        m
    }

    /// `O_-^j(l) = max{m : p^m(l) ≥ j}` for `j ≤ l`.
    pub fn o_minus_from(&self, j: usize, l: usize) -> usize {
        let mut m = 0;
        while self.p_pow(l, m + 1).is_some_and(|x| x >= j) {
            m += 1;
        }
        m
    }

    /// `ē_k = Σ_{m ≤ O_-(k)} e_{p^m(k)}`.
    pub fn ebar(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; self.n()];
        let mut cur = Some(k);
        while let Some(c) = cur {
            v[c] = 1;
            cur = self.p[c];
        }
        v
    }

    /// `e_[a,b]`: the indicator of the level set of `a` between `a` and `b`;
    /// zero when `b < a`.
    pub fn e_interval(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0; self.n()];
        let mut cur = Some(a);
        while let Some(c) = cur.filter(|&c| c <= b) {
            v[c] = 1;
            cur = self.s[c];
        }
        v
    }

    /// Whether `b = s^m(a)` for some `m ≥ 0`.
    pub fn same_chain(&self, a: usize, b: usize) -> bool {
        a <= b && self.eta[a] == self.eta[b]
    }

    /// `P(k) = {j < k : s(j) ≥ k}` (0-based; `k` generators adjoined).
    pub fn p_set(&self, k: usize) -> Vec<usize> {
        (0..k).filter(|&j| self.s[j].map_or(true, |s| s >= k)).collect()
    }

    pub fn rank(&self) -> usize {
        self.p_set(self.n()).len()
    }

    /// `ex = {k : s(k) ≠ +∞}`.
    pub fn ex(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.s[k].is_some()).collect()
    }

    pub fn level_sets(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, &e) in self.eta.iter().enumerate() {
            out.entry(e).or_default().push(k);
        }
        out
    }

    /// Whether `other` has the same level sets.
    pub fn same_partition(&self, other: &[i64]) -> bool {
        other.len() == self.n()
            && (0..self.n()).all(|k| (0..self.n()).all(|j| (self.eta[k] == self.eta[j]) == (other[k] == other[j])))
    }

    /// The data of `R_[lo,hi]`.
    pub fn restrict(&self, lo: usize, hi: usize) -> EtaData {
        EtaData::from_eta(self.eta[lo..=hi].to_vec())
    }
}

/// `y_1..y_N`, the elements `c_k` and `ȳ_k = S_ν(ē_k) y_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeSequence {
    pub eta: EtaData,
    pub y: Vec<PBWElement>,
    pub c: Vec<Option<PBWElement>>,
    pub ybar: Vec<PBWElement>,
}

/// Whether `y x_i` is a scalar multiple of `x_i y` for all `i ≤ k`.
fn is_normal(p: &Presentation, y: &PBWElement, k: usize) -> bool {
    if y.is_zero() {
        return false;
    }
    (0..=k).all(|i| {
        let x = p.generator(i);
        let a = p.mul(y, &x);
        let b = p.mul(&x, y);
        match (a.leading(), b.leading()) {
            (Some((fa, ca)), Some((fb, cb))) if fa == fb => match coeff_div(ca, cb) {
                Ok(r) => a == b.scale(&r),
                Err(_) => false,
            },
            _ => false,
        }
    })
}

fn ensure_laurent(a: &PBWElement, what: &str) -> Result<()> {
    if a.terms.values().all(|c| c.is_laurent()) {
        Ok(())
    } else {
        Err(Error::Primes(format!(
            "{what} has a coefficient that is not a Laurent polynomial"
        )))
    }
}

/// The prime elements of the CGL extension given by `p`. The level sets of
/// `η` are inferred; a supplied `η` is checked against them.
pub fn compute_primes(p: &Presentation) -> Result<PrimeSequence> {
    let n = p.n();
    let lam = p.lambda();
    let mut eta = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut y: Vec<PBWElement> = Vec::with_capacity(n);
    let mut c: Vec<Option<PBWElement>> = Vec::with_capacity(n);
    let mut fresh = 0;
    for k in 0..n {
        if (0..k).all(|j| p.delta(k, j).is_zero()) {
            eta[k] = fresh;
            fresh += 1;
            y.push(p.generator(k));
            c.push(None);
            continue;
        }
        let ek = unit(n, k);
        let lam_k_minus_1 = &Coeff::qpow(p.lambda_k()[k].exp) - &Coeff::one();
        let mut found = Vec::new();
        for j in (0..k).filter(|&j| !pred[..k].contains(&Some(j))) {
            let d = p.delta_of(k, &y[j])?;
            if d.is_zero() {
                continue;
            }
            let mut ebar_j = vec![0; n];
            let mut cur = Some(j);
            while let Some(x) = cur {
                ebar_j[x] = 1;
                cur = pred[x];
            }
            let alpha = Coeff::qpow(lam.pair(&ek, &ebar_j));
            let inv = (&alpha * &lam_k_minus_1).inv().ok_or(Error::DivisionByZero)?;
            let ck = d.scale(&inv);
            ensure_laurent(&ck, &format!("c_{}", k + 1))?;
            let cand = p.mul(&y[j], &p.generator(k)).sub(&ck);
            if is_normal(p, &cand, k) {
                found.push((j, ck, cand));
            }
        }
        if found.len() != 1 {
            return Err(Error::Primes(format!(
                "{} normal candidates for y_{}",
                found.len(),
                k + 1
            )));
        }
        let (j, ck, cand) = found.pop().expect("one candidate");
        pred[k] = Some(j);
        eta[k] = eta[j];
        y.push(cand);
        c.push(Some(ck));
    }
    let mut data = EtaData::from_eta(eta);
    if let Some(given) = p.eta() {
        if !data.same_partition(given) {
            return Err(Error::Check(
                "supplied eta has different level sets than the inferred one".into(),
            ));
        }
        data = EtaData::from_eta(given.to_vec());
    }
    for (k, yk) in y.iter().enumerate() {
        let expect = Mono::from_i64(&data.ebar(k))?;
        match yk.leading() {
            Some((f, cf)) if *f == expect && cf.is_one() => {}
            _ => return Err(Error::Primes(format!("lt(y_{}) is not x^ebar", k + 1))),
        }
    }
    let nu = p.nu();
    let ybar = y
        .iter()
        .enumerate()
        .map(|(k, yk)| yk.scale(&Coeff::qpow(nu.symmetrization_exp(&data.ebar(k)))))
        .collect();
    Ok(PrimeSequence { eta: data, y, c, ybar })
}

/// `y_k y_j = Ω_λ(ē_k, ē_j) y_j y_k` for all pairs.
pub fn check_quasi_commutation(p: &Presentation, seq: &PrimeSequence) -> Result<()> {
    let n = p.n();
    for k in 0..n {
        for j in 0..k {
            let w = p.lambda().pair(&seq.eta.ebar(k), &seq.eta.ebar(j));
            let lhs = p.mul(&seq.y[k], &seq.y[j]);
            let rhs = p.mul(&seq.y[j], &seq.y[k]).scale(&Coeff::qpow(w));
            if lhs != rhs {
                return Err(Error::Check(format!(
                    "y_{} and y_{} do not quasi-commute",
                    k + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// The primes of `R_[j,k]` in local indices.
pub fn interval_primes(p: &Presentation, j: usize, k: usize) -> Result<PrimeSequence> {
    compute_primes(&p.restrict(j, k)?)
}

/// The primes of every `R_[i,N]`, giving all `y_[a,b]` with `η(a) = η(b)`.
#[derive(Clone, Debug)]
pub struct IntervalPrimes {
    pub eta: EtaData,
    pub local: Vec<PrimeSequence>,
}

/// Builds `R_[i,N]` for every `i` (in parallel) and checks that its level
/// sets are the restrictions of the global ones.
pub fn all_interval_primes(p: &Presentation, eta: &EtaData) -> Result<IntervalPrimes> {
    let n = p.n();
    let local = (0..n)
        .into_par_iter()
        .map(|i| interval_primes(p, i, n - 1))
        .collect::<Result<Vec<_>>>()?;
    for (i, seq) in local.iter().enumerate() {
        if !seq.eta.same_partition(&eta.eta[i..]) {
            return Err(Error::Primes(format!(
                "level sets of R_[{}, {n}] are not restricted from R",
                i + 1
            )));
        }
    }
    Ok(IntervalPrimes {
        eta: eta.clone(),
        local,
    })
}

impl IntervalPrimes {
    pub fn n(&self) -> usize {
        self.eta.n()
    }

    /// `y_[a,b]` for `a ≤ b` in one level set, and `1` for the empty
    /// interval `b < a`.
    pub fn y(&self, a: usize, b: usize) -> Result<PBWElement> {
        let n = self.n();
        if b < a {
            return Ok(PBWElement::constant(n, Coeff::one()));
        }
        if !self.eta.same_chain(a, b) {
            return Err(Error::Dimension(format!(
                "[{}, {}] is not an interval of a level set",
                a + 1,
                b + 1
            )));
        }
        Ok(self.local[a].y[b - a].embed(a, n))
    }

    /// `ȳ_[a,b] = S_ν(e_[a,b]) y_[a,b]`.
    pub fn ybar(&self, nu: &ExpMatrix, a: usize, b: usize) -> Result<PBWElement> {
        let e = self.eta.e_interval(a, b);
        Ok(self.y(a, b)?.scale(&Coeff::qpow(nu.symmetrization_exp(&e))))
    }

    fn s_pow_checked(&self, i: usize, m: usize) -> Result<usize> {
        self.eta
            .s_pow(i, m)
            .ok_or_else(|| Error::Dimension(format!("s^{m}({}) is +infinity", i + 1)))
    }

    /// `e_[s(i), s^{m-1}(i)]`, empty for `m = 1`.
    fn inner(&self, i: usize, m: usize) -> Result<Vec<i64>> {
        Ok(match self.eta.s[i] {
            Some(si) if m >= 2 => self.eta.e_interval(si, self.s_pow_checked(i, m - 1)?),
            _ => vec![0; self.n()],
        })
    }
}

/// `u_[i,s^m(i)] = y_[i,s^{m-1}] y_[s(i),s^m] - Ω_λ(e_i, e_[s(i),s^{m-1}]) y_[s(i),s^{m-1}] y_[i,s^m]`,
/// with `u_[i,i] = 1`.
pub fn u_element(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<PBWElement> {
    if m == 0 {
        return Ok(p.constant(Coeff::one()));
    }
    let top = iv.s_pow_checked(i, m)?;
    let prev = iv.s_pow_checked(i, m - 1)?;
    let si = iv.s_pow_checked(i, 1)?;
    let w = p.lambda().pair(&unit(p.n(), i), &iv.inner(i, m)?);
    let a = p.mul(&iv.y(i, prev)?, &iv.y(si, top)?);
    let b = p.mul(&iv.y(si, prev)?, &iv.y(i, top)?);
    Ok(a.sub(&b.scale(&Coeff::qpow(w))))
}

/// The second expression for `u_[i,s^m(i)]`, with
/// `Ω_λ(e_{s^m(i)}, e_[s(i),s^{m-1}(i)])^{-1} y_[i,s^m] y_[s(i),s^{m-1}]`.
pub fn u_element_alt(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<PBWElement> {
    if m == 0 {
        return Ok(p.constant(Coeff::one()));
    }
    let top = iv.s_pow_checked(i, m)?;
    let prev = iv.s_pow_checked(i, m - 1)?;
    let si = iv.s_pow_checked(i, 1)?;
    let w = p.lambda().pair(&unit(p.n(), top), &iv.inner(i, m)?);
    let a = p.mul(&iv.y(i, prev)?, &iv.y(si, top)?);
    let b = p.mul(&iv.y(i, top)?, &iv.y(si, prev)?);
    Ok(a.sub(&b.scale(&Coeff::qpow(-w))))
}

/// `lt(u_[i,s^m(i)]) = π x^f`.
pub fn pi_f_data(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<(Coeff, Vec<i64>)> {
    let u = u_element(p, iv, i, m)?;
    let (f, c) = u
        .leading()
        .ok_or_else(|| Error::Check(format!("u_[{}, s^{m}] vanishes", i + 1)))?;
    Ok((c.clone(), f.to_i64()))
}

/// Every `(i, m)` with `m ≥ 1` and `s^m(i) ≤ N`.
pub fn chain_pairs(eta: &EtaData) -> Vec<(usize, usize)> {
    (0..eta.n())
        .flat_map(|i| (1..=eta.o_plus(i)).map(move |m| (i, m)))
        .collect()
}

fn lt_ratio(a: &PBWElement, b: &PBWElement) -> Option<Coeff> {
    match (a.leading(), b.leading()) {
        (Some((fa, ca)), Some((fb, cb))) if fa == fb => coeff_div(ca, cb).ok(),
        _ => None,
    }
}

/// `θ_m = (λ*_i)^{-1} Ω_λ(e_[s²(i),s^m(i)], 2e_i + 2e_{s(i)}) Ω_λ(e_{s^m(i)}, e_i)^{-1} Ω_λ(e_{s(i)}, e_i)`.
pub fn theta(p: &Presentation, eta: &EtaData, i: usize, m: usize) -> Result<Rational64> {
    let n = p.n();
    let lam = p.lambda();
    let si = eta.s[i].ok_or(Error::NotExchangeable(i + 1))?;
    let sm = eta.s_pow(i, m).ok_or(Error::NotExchangeable(i + 1))?;
    let inner = match eta.s[si] {
        Some(s2) if m >= 2 => eta.e_interval(s2, sm),
        _ => vec![0; n],
    };
    let two: Vec<i64> = (0..n).map(|k| 2 * i64::from(k == i || k == si)).collect();
    Ok(
        -p.lambda_star()[i].exp + lam.pair(&inner, &two) - lam.pair(&unit(n, sm), &unit(n, i))
            + lam.pair(&unit(n, si), &unit(n, i)),
    )
}

/// `lt(u_[s(i),s^m] u_[i,s^{m+1}]) = θ_m lt(u_[i,s^m] u_[s(i),s^{m+1}])` when
/// `s^{m+1}(i) ≤ N`.
pub fn check_u_product(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<()> {
    let si = iv.s_pow_checked(i, 1)?;
    iv.s_pow_checked(i, m + 1)?;
    let lhs = p.mul(&u_element(p, iv, si, m - 1)?, &u_element(p, iv, i, m + 1)?);
    let rhs = p.mul(&u_element(p, iv, i, m)?, &u_element(p, iv, si, m)?);
    let th = Coeff::qpow(theta(p, &iv.eta, i, m)?);
    match lt_ratio(&lhs, &rhs) {
        Some(r) if r == th => Ok(()),
        other => Err(Error::Check(format!(
            "u-product identity at ({}, {m}): ratio {:?}, theta {th}",
            i + 1,
            other.map(|c| c.to_string())
        ))),
    }
}

/// `π_[s(i),s^m] π_[i,s^{m+1}] = (λ*_i)^{-δ_{m,1}} Ω_λ(e_{s^m(i)}, e_{s(i)}) π_[i,s^m] π_[s(i),s^{m+1}]`.
pub fn check_pi_recursion(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<()> {
    let n = p.n();
    let si = iv.s_pow_checked(i, 1)?;
    let sm = iv.s_pow_checked(i, m)?;
    iv.s_pow_checked(i, m + 1)?;
    let pi = |a, k| pi_f_data(p, iv, a, k).map(|x| x.0);
    let lhs = &pi(si, m - 1)? * &pi(i, m + 1)?;
    let mut e = p.lambda().pair(&unit(n, sm), &unit(n, si));
    if m == 1 {
        e -= p.lambda_star()[i].exp;
    }
    let rhs = (&pi(i, m)? * &pi(si, m)?).mul_qpow(e);
    if lhs != rhs {
        return Err(Error::Check(format!("pi recursion fails at ({}, {m})", i + 1)));
    }
    Ok(())
}

/// `λ*_i = Ω_λ(e_i, f_[i,s(i)] - e_{s(i)})`.
pub fn check_lambda_star(p: &Presentation, iv: &IntervalPrimes, i: usize) -> Result<()> {
    let n = p.n();
    let si = iv.s_pow_checked(i, 1)?;
    let (_, mut f) = pi_f_data(p, iv, i, 1)?;
    f[si] -= 1;
    let got = p.lambda().pair(&unit(n, i), &f);
    if got != p.lambda_star()[i].exp {
        return Err(Error::Check(format!(
            "lambda*_{} = q^{} but the u data gives q^{got}",
            i + 1,
            p.lambda_star()[i].exp
        )));
    }
    Ok(())
}

fn minus_e_plus(n: usize, i: usize, f: &[i64]) -> Vec<i64> {
    let mut v = f.to_vec();
    v.resize(n, 0);
    v[i] -= 1;
    v
}

/// The normalization `π_[i,s(i)] = S_ν(-e_i + f_[i,s(i)])` for all
/// exchangeable `i`.
pub fn check_pi_normalized(p: &Presentation, iv: &IntervalPrimes) -> Result<()> {
    let nu = p.nu();
    for i in iv.eta.ex() {
        let (pi, f) = pi_f_data(p, iv, i, 1)?;
        let want = Coeff::qpow(nu.symmetrization_exp(&minus_e_plus(p.n(), i, &f)));
        if pi != want {
            return Err(Error::Check(format!("pi_[{0}, s({0})] = {pi}, expected {want}", i + 1)));
        }
    }
    Ok(())
}

/// After normalization, `π_[i,s^m] = S_ν(e_[s(i),s^m])^{-2} S_ν(-e_i + f_[i,s^m])`.
pub fn check_pi_general(p: &Presentation, iv: &IntervalPrimes, i: usize, m: usize) -> Result<()> {
    let nu = p.nu();
    let si = iv.s_pow_checked(i, 1)?;
    let sm = iv.s_pow_checked(i, m)?;
    let (pi, f) = pi_f_data(p, iv, i, m)?;
    let e = -nu.symmetrization_exp(&iv.eta.e_interval(si, sm)) * 2 + nu.symmetrization_exp(&minus_e_plus(p.n(), i, &f));
    if pi != Coeff::qpow(e) {
        return Err(Error::Check(format!("pi_[{}, s^{m}] = {pi}, expected q^{e}", i + 1)));
    }
    Ok(())
}

/// The normalized generators `x'_k = γ_k x_k` and their prime data.
#[derive(Clone, Debug)]
pub struct Rescaling {
    pub gamma: Vec<Coeff>,
    pub presentation: Presentation,
    pub primes: PrimeSequence,
    pub intervals: IntervalPrimes,
}

/// `γ_i = 1` when `p(i) = -∞`, otherwise
/// `γ_i = γ_{p(i)}^{-1} γ^{f_[p(i),i]} π_[p(i),i]^{-1} S_ν(-e_{p(i)} + f_[p(i),i])`;
/// the normalization is verified on the rescaled presentation.
pub fn rescale_generators(p: &Presentation) -> Result<Rescaling> {
    let n = p.n();
    let seq = compute_primes(p)?;
    let iv = all_interval_primes(p, &seq.eta)?;
    let nu = p.nu();
    let mut gamma = vec![Coeff::one(); n];
    for i in 0..n {
        let Some(j) = seq.eta.p[i] else { continue };
        let (pi, f) = pi_f_data(p, &iv, j, 1)?;
        let mut g = gamma[j].inv().ok_or(Error::DivisionByZero)?;
        for (k, &m) in f.iter().enumerate() {
            if m != 0 {
                g = &g * &gamma[k].pow(m);
            }
        }
        let s = Coeff::qpow(nu.symmetrization_exp(&minus_e_plus(n, j, &f)));
        gamma[i] = coeff_div(&(&g * &s), &pi)?;
    }
    let (presentation, primes, intervals) = if gamma.iter().all(|g| g.is_one()) {
        (p.clone(), seq, iv)
    } else {
        let q = p.rescaled(&gamma)?;
        let s = compute_primes(&q)?;
        let v = all_interval_primes(&q, &s.eta)?;
        (q, s, v)
    };
    check_pi_normalized(&presentation, &intervals)?;
    Ok(Rescaling {
        gamma,
        presentation,
        primes,
        intervals,
    })
}

/// Positive integers `d_n` (keyed by `η` value) with
/// `λ_k^{d_{η(l)}} = λ_l^{d_{η(k)}}` whenever `p(k), p(l) ≠ -∞`; level sets
/// without such `k` get `1`.
pub fn level_symmetrizer(p: &Presentation, eta: &EtaData) -> Result<BTreeMap<i64, i64>> {
    let mut val: BTreeMap<i64, Rational64> = BTreeMap::new();
    for k in (0..p.n()).filter(|&k| eta.p[k].is_some()) {
        let e = p.lambda_k()[k].exp;
        match val.get(&eta.eta[k]) {
            Some(&v) if v != e => {
                return Err(Error::Check(format!(
                    "lambda_k differs within the level set of {}",
                    k + 1
                )))
            }
            _ => {
                val.insert(eta.eta[k], e);
            }
        }
    }
    let mut out: BTreeMap<i64, i64> = eta.eta.iter().map(|&e| (e, 1)).collect();
    if let Some(&first) = val.values().next() {
        if val.values().any(|v| v.is_positive() != first.is_positive()) {
            return Err(Error::Check(
                "lambda_k exponents of mixed sign across level sets".into(),
            ));
        }
        let g_num = val.values().fold(0i64, |g, v| num_integer::gcd(g, *v.numer()));
        let g_den = val.values().fold(1i64, |l, v| num_integer::lcm(l, *v.denom()));
        let g = Rational64::new(g_num.abs(), g_den);
        for (&e, &v) in &val {
            let d = (v / g).abs();
            debug_assert!(d.is_integer() && !d.is_zero());
            out.insert(e, d.to_integer());
        }
    }
    Ok(out)
}

/// `Ω_λ(a, b)` as a scalar.
pub fn omega_lambda(p: &Presentation, a: &[i64], b: &[i64]) -> ScalarExp {
    ScalarExp::new(p.lambda().pair(a, b))
}
