//! Iterated Ore extensions given by a presentation table, with arithmetic in
//! the PBW basis `x^f = x_1^{m_1} ... x_N^{m_N}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_rational::Rational64;
use num_traits::Zero;
use rand::Rng;
use serde::Deserialize;

use crate::bicharacter::{ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::qtorus::Ambient;
use crate::scalarfield::{int, parse_exponent, parse_rational, Coeff, ScalarExp};

/// An exponent vector, ordered reverse-lexicographically: the last
/// coordinate is compared first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn zero(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        Mono(v)
    }

    pub fn from_i64(f: &[i64]) -> Result<Self> {
        f.iter()
            .map(|&x| u32::try_from(x).map_err(|_| Error::Dimension(format!("negative exponent {x}"))))
            .collect::<Result<Vec<_>>>()
            .map(Mono)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| i64::from(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn min_index(&self) -> Option<usize> {
        self.0.iter().position(|&x| x > 0)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&x| x > 0)
    }

    pub fn add(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn bump(&self, k: usize, by: i32) -> Mono {
        let mut v = self.0.clone();
        v[k] = (v[k] as i32 + by) as u32;
        Mono(v)
    }
}

/// A finite sum `Σ c_f x^f` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PBWElement {
    pub terms: BTreeMap<Mono, Coeff>,
}

impl fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(None))
    }
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(None))
    }
}

impl PBWElement {
    pub fn zero() -> Self {
        PBWElement { terms: BTreeMap::new() }
    }

    pub fn monomial(f: Mono, c: Coeff) -> Self {
        let mut out = PBWElement::zero();
        out.add_term(f, c);
        out
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        PBWElement::monomial(Mono::zero(n), c)
    }

    pub fn generator(n: usize, k: usize) -> Self {
        PBWElement::monomial(Mono::unit(n, k), Coeff::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: Mono, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&f) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&f);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(f, c);
            }
        }
    }

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> PBWElement {
        if c.is_zero() {
            return PBWElement::zero();
        }
        PBWElement {
            terms: self.terms.iter().map(|(f, v)| (f.clone(), v * c)).collect(),
        }
    }

    /// The `≺`-largest term.
    pub fn leading(&self) -> Option<(&Mono, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Smallest interval of generator indices containing the support.
    pub fn support_range(&self) -> Option<(usize, usize)> {
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut any = false;
        for f in self.terms.keys() {
            if let (Some(a), Some(b)) = (f.min_index(), f.max_index()) {
                lo = lo.min(a);
                hi = hi.max(b);
                any = true;
            }
        }
        any.then_some((lo, hi))
    }

    /// Whether every monomial only involves generators in `lo..=hi`.
    pub fn supported_in(&self, lo: usize, hi: usize) -> bool {
        self.terms
            .keys()
            .all(|f| f.0.iter().enumerate().all(|(i, &m)| m == 0 || (lo <= i && i <= hi)))
    }

    /// Restricts exponent vectors to the coordinates `lo..=hi`.
    pub fn project(&self, lo: usize, hi: usize) -> PBWElement {
        debug_assert!(self.supported_in(lo, hi));
        PBWElement {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (Mono(f.0[lo..=hi].to_vec()), c.clone()))
                .collect(),
        }
    }

    /// Places a local element at offset `lo` inside `n` generators.
    pub fn embed(&self, lo: usize, n: usize) -> PBWElement {
        let mut out = PBWElement::zero();
        for (f, c) in &self.terms {
            let mut v = vec![0; n];
            v[lo..lo + f.0.len()].copy_from_slice(&f.0);
            out.add_term(Mono(v), c.clone());
        }
        out
    }

    /// Terms in descending order as `(f, coefficient)` pairs.
    pub fn dump(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(f, c)| (f.0.clone(), c.to_string()))
            .collect()
    }

    pub fn render(&self, labels: Option<&[String]>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (f, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &m) in f.0.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let name = labels.map_or_else(|| format!("x{}", i + 1), |l| l[i].clone());
                mono.push(if m == 1 { name } else { format!("{name}^{m}") });
            }
            let cs = c.to_string();
            let cpart = if cs.contains(' ') && !cs.starts_with('(') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match (mono.is_empty(), cpart.as_str()) {
                (true, _) => cpart,
                (false, "1") => mono.join(" "),
                (false, "-1") => format!("-{}", mono.join(" ")),
                (false, _) => format!("{cpart} {}", mono.join(" ")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// A presentation `K[x_1][x_2; σ_2, δ_2] ... [x_N; σ_N, δ_N]` with
/// `σ_k(x_j) = λ_kj x_j` and the table `δ_k(x_j)` for `j < k`.
pub struct Presentation {
    n: usize,
    lambda: ExpMatrix,
    delta: Vec<Vec<PBWElement>>,
    weights: IntMatrix,
    lambda_k: Vec<ScalarExp>,
    lambda_star: Vec<ScalarExp>,
    eta: Option<Vec<i64>>,
    labels: Vec<String>,
    memo: RwLock<HashMap<(Mono, Mono), PBWElement>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            n: self.n,
            lambda: self.lambda.clone(),
            delta: self.delta.clone(),
            weights: self.weights.clone(),
            lambda_k: self.lambda_k.clone(),
            lambda_star: self.lambda_star.clone(),
            eta: self.eta.clone(),
            labels: self.labels.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("n", &self.n)
            .field("lambda", &self.lambda)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// The raw data of a presentation; `delta[k][j]` is `δ_k(x_j)` for `j < k`.
#[derive(Clone, Debug)]
pub struct PresentationData {
    pub lambda: ExpMatrix,
    pub delta: Vec<Vec<PBWElement>>,
    pub weights: IntMatrix,
    pub lambda_k: Vec<ScalarExp>,
    pub lambda_star: Vec<ScalarExp>,
    pub eta: Option<Vec<i64>>,
    pub labels: Option<Vec<String>>,
}

impl Presentation {
    /// Validates the table: each `δ_k(x_j)` lies in `R_[j+1,k-1]` (so every
    /// monomial is `≺ e_j + e_k` and rewriting terminates) and is homogeneous
    /// of weight `χ_k + χ_j`; `λ_k` and `λ*_k` are not `1`.
    pub fn new(data: PresentationData) -> Result<Self> {
        let n = data.lambda.n();
        if data.delta.len() != n || data.delta.iter().enumerate().any(|(k, row)| row.len() != k) {
            return Err(Error::Presentation("delta table must have k entries in row k".into()));
        }
        if data.weights.iter().any(|w| w.len() != n) {
            return Err(Error::Presentation("every weight row needs N entries".into()));
        }
        if data.lambda_k.len() != n || data.lambda_star.len() != n {
            return Err(Error::Presentation("lambda_k and lambda_star need N entries".into()));
        }
        if let Some(k) = (0..n).find(|&k| data.lambda_k[k].is_one() || data.lambda_star[k].is_one()) {
            return Err(Error::Presentation(format!(
                "lambda_{0} or lambda*_{0} equals 1",
                k + 1
            )));
        }
        if data.eta.as_ref().is_some_and(|e| e.len() != n) {
            return Err(Error::Presentation("eta needs N entries".into()));
        }
        let labels = match data.labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::Presentation("labels need N entries".into())),
            None => (1..=n).map(|k| format!("x{k}")).collect(),
        };
        let p = Presentation {
            n,
            lambda: data.lambda,
            delta: data.delta,
            weights: data.weights,
            lambda_k: data.lambda_k,
            lambda_star: data.lambda_star,
            eta: data.eta,
            labels,
            memo: RwLock::new(HashMap::new()),
        };
        for k in 0..n {
            for j in 0..k {
                let d = &p.delta[k][j];
                if d.is_zero() {
                    continue;
                }
                if d.terms.keys().any(|f| f.0.len() != n) {
                    return Err(Error::Presentation(format!(
                        "delta_{}(x_{}) has wrong length",
                        k + 1,
                        j + 1
                    )));
                }
                if k == j + 1 || !d.supported_in(j + 1, k - 1) {
                    return Err(Error::Presentation(format!(
                        "delta_{}(x_{}) is not supported on x_{}..x_{}",
                        k + 1,
                        j + 1,
                        j + 2,
                        k
                    )));
                }
                let target: Vec<i64> = (0..p.weights.len())
                    .map(|r| p.weights[r][k] + p.weights[r][j])
                    .collect();
                if d.terms.keys().any(|f| p.weight_of_mono(f) != target) {
                    return Err(Error::Presentation(format!(
                        "delta_{}(x_{}) is not homogeneous",
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &ExpMatrix {
        &self.lambda
    }

    /// `ν` with `ν_kj^2 = λ_kj`, by halving exponents.
    pub fn nu(&self) -> ExpMatrix {
        self.lambda.scaled(Rational64::new(1, 2))
    }

    pub fn delta(&self, k: usize, j: usize) -> &PBWElement {
        &self.delta[k][j]
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    pub fn lambda_k(&self) -> &[ScalarExp] {
        &self.lambda_k
    }

    pub fn lambda_star(&self) -> &[ScalarExp] {
        &self.lambda_star
    }

    pub fn eta(&self) -> Option<&[i64]> {
        self.eta.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn data(&self) -> PresentationData {
        PresentationData {
            lambda: self.lambda.clone(),
            delta: self.delta.clone(),
            weights: self.weights.clone(),
            lambda_k: self.lambda_k.clone(),
            lambda_star: self.lambda_star.clone(),
            eta: self.eta.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn generator(&self, k: usize) -> PBWElement {
        PBWElement::generator(self.n, k)
    }

    pub fn constant(&self, c: Coeff) -> PBWElement {
        PBWElement::constant(self.n, c)
    }

    /// Whether every `δ_k` vanishes.
    pub fn is_quantum_affine_space(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(|d| d.is_zero()))
    }

    pub fn weight_of_mono(&self, f: &Mono) -> Vec<i64> {
        self.weights
            .iter()
            .map(|row| row.iter().zip(&f.0).map(|(w, &m)| w * i64::from(m)).sum())
            .collect()
    }

    /// Grading of an integer combination of generator weights.
    pub fn weight_of_vec(&self, f: &[i64]) -> Vec<i64> {
        self.weights
            .iter()
            .map(|row| row.iter().zip(f).map(|(w, m)| w * m).sum())
            .collect()
    }

    /// The common weight of all terms, or `None` when `a` is inhomogeneous.
    pub fn weight_of(&self, a: &PBWElement) -> Result<Option<Vec<i64>>> {
        let mut it = a.terms.keys();
        let first = it.next().ok_or_else(|| Error::Check("weight of zero".into()))?;
        let w = self.weight_of_mono(first);
        Ok(it.all(|f| self.weight_of_mono(f) == w).then_some(w))
    }

    /// Exponent of the scalar in `lt(x^f x^g) = (Π_{k>j} λ_kj^{m_k m'_j}) x^{f+g}`.
    pub fn lt_product_exp(&self, f: &Mono, g: &Mono) -> Rational64 {
        let mut acc = Rational64::zero();
        for k in 0..self.n {
            if f.0[k] == 0 {
                continue;
            }
            for j in 0..k {
                if g.0[j] != 0 {
                    acc += self.lambda.get(k, j) * i64::from(f.0[k] * g.0[j]);
                }
            }
        }
        acc
    }

    fn memo_get(&self, key: &(Mono, Mono)) -> Option<PBWElement> {
        self.memo.read().expect("memo lock").get(key).cloned()
    }

    /// `x^a x^b` in normal form.
    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> PBWElement {
        let (Some(ka), Some(jb)) = (a.max_index(), b.min_index()) else {
            return PBWElement::monomial(a.add(b), Coeff::one());
        };
        if ka <= jb {
            return PBWElement::monomial(a.add(b), Coeff::one());
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.memo_get(&key) {
            return v;
        }
        let out = if a.0.iter().sum::<u32>() == 1 {
            // x_k x_j x^{b'} = λ_kj x_j (x_k x^{b'}) + δ_k(x_j) x^{b'}.
            let (k, j) = (ka, jb);
            let rest = b.bump(j, -1);
            let t = self.mono_mul(a, &rest);
            let lam = Coeff::qpow(self.lambda.get(k, j));
            let mut out = PBWElement::zero();
            for (g, c) in &t.terms {
                debug_assert!(g.min_index().map_or(true, |i| i >= j));
                out.add_term(g.bump(j, 1), c * &lam);
            }
            let d = &self.delta[k][j];
            if !d.is_zero() {
                out = out.add(&self.mul(d, &PBWElement::monomial(rest, Coeff::one())));
            }
            out
        } else {
            let head = a.bump(ka, -1);
            let t = self.mono_mul(&Mono::unit(self.n, ka), b);
            let mut out = PBWElement::zero();
            for (g, c) in &t.terms {
                for (h, c2) in &self.mono_mul(&head, g).terms {
                    out.add_term(h.clone(), c * c2);
                }
            }
            out
        };
        self.memo.write().expect("memo lock").insert(key, out.clone());
        out
    }

    /// The normal form of `a b`.
    pub fn mul(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for (f, cf) in &a.terms {
            for (g, cg) in &b.terms {
                let cc = cf * cg;
                for (h, c) in &self.mono_mul(f, g).terms {
                    out.add_term(h.clone(), &cc * c);
                }
            }
        }
        out
    }

    /// `σ_k(a)` for `a ∈ R_{k-1}`: `σ_k(x^f) = q^{Σ_j E_kj m_j} x^f`.
    pub fn sigma(&self, k: usize, a: &PBWElement) -> Result<PBWElement> {
        if k >= self.n {
            return Err(Error::Dimension(format!("generator {} out of range", k + 1)));
        }
        if k > 0 && !a.supported_in(0, k - 1) || k == 0 && a.support_range().is_some() {
            return Err(Error::Presentation(format!("argument is not in R_{k}")));
        }
        let mut out = PBWElement::zero();
        for (f, c) in &a.terms {
            let e: Rational64 = (0..k).map(|j| self.lambda.get(k, j) * i64::from(f.0[j])).sum();
            out.add_term(f.clone(), c.mul_qpow(e));
        }
        Ok(out)
    }

    /// `(σ_k(a), δ_k(a))` with `δ_k(a) = x_k a - σ_k(a) x_k`.
    pub fn apply_sigma_delta(&self, k: usize, a: &PBWElement) -> Result<(PBWElement, PBWElement)> {
        let s = self.sigma(k, a)?;
        let xk = self.generator(k);
        let d = self.mul(&xk, a).sub(&self.mul(&s, &xk));
        Ok((s, d))
    }

    /// `x_k` acting by left multiplication minus its `σ`-twisted right action,
    /// for any `k` and homogeneous `a` supported below `k`.
    pub fn delta_of(&self, k: usize, a: &PBWElement) -> Result<PBWElement> {
        Ok(self.apply_sigma_delta(k, a)?.1)
    }

    /// `(ab)c == a(bc)` on `samples` random triples of monomials of total
    /// degree at most `deg`.
    pub fn check_associativity<R: Rng>(&self, rng: &mut R, samples: usize, deg: u32) -> Result<()> {
        let rand_mono = |rng: &mut R| {
            let mut v = vec![0u32; self.n];
            for _ in 0..rng.gen_range(1..=deg.max(1)) {
                v[rng.gen_range(0..self.n)] += 1;
            }
            PBWElement::monomial(Mono(v), Coeff::one())
        };
        for _ in 0..samples {
            let (a, b, c) = (rand_mono(rng), rand_mono(rng), rand_mono(rng));
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                return Err(Error::Presentation(format!("associativity fails on {a}, {b}, {c}")));
            }
        }
        Ok(())
    }

    /// The presentation of `R_[lo,hi]` on the generators `x_lo..x_hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<Presentation> {
        if lo > hi || hi >= self.n {
            return Err(Error::Dimension(format!(
                "interval [{}, {}] out of range",
                lo + 1,
                hi + 1
            )));
        }
        let idx: Vec<usize> = (lo..=hi).collect();
        let delta = idx
            .iter()
            .map(|&k| {
                idx.iter()
                    .take_while(|&&j| j < k)
                    .map(|&j| self.delta[k][j].project(lo, hi))
                    .collect()
            })
            .collect();
        Presentation::new(PresentationData {
            lambda: self.lambda.restrict(&idx),
            delta,
            weights: self.weights.iter().map(|r| r[lo..=hi].to_vec()).collect(),
            lambda_k: self.lambda_k[lo..=hi].to_vec(),
            lambda_star: self.lambda_star[lo..=hi].to_vec(),
            eta: self.eta.as_ref().map(|e| e[lo..=hi].to_vec()),
            labels: Some(self.labels[lo..=hi].to_vec()),
        })
    }

    /// The presentation in the generators `x'_k = γ_k x_k`:
    /// `δ'_k(x'_j) = γ_k γ_j Σ c_f γ^{-f} x'^f`.
    pub fn rescaled(&self, gamma: &[Coeff]) -> Result<Presentation> {
        if gamma.len() != self.n || gamma.iter().any(|g| g.is_zero()) {
            return Err(Error::Presentation("rescaling needs N nonzero scalars".into()));
        }
        let inv: Vec<Coeff> = gamma.iter().map(|g| g.inv().expect("nonzero")).collect();
        let delta = (0..self.n)
            .map(|k| {
                (0..k)
                    .map(|j| {
                        let mut out = PBWElement::zero();
                        for (f, c) in &self.delta[k][j].terms {
                            let mut s = &(&gamma[k] * &gamma[j]) * c;
                            for (i, &m) in f.0.iter().enumerate() {
                                if m > 0 {
                                    s = &s * &inv[i].pow(i64::from(m));
                                }
                            }
                            out.add_term(f.clone(), s);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let mut data = self.data();
        data.delta = delta;
        Presentation::new(data)
    }

    /// Rewrites an element given in the generators `x_k` in terms of
    /// `x'_k = γ_k x_k`.
    pub fn to_rescaled(&self, gamma: &[Coeff], a: &PBWElement) -> PBWElement {
        let mut out = PBWElement::zero();
        for (f, c) in &a.terms {
            let mut s = c.clone();
            for (i, &m) in f.0.iter().enumerate() {
                if m > 0 {
                    s = &s * &gamma[i].inv().expect("nonzero").pow(i64::from(m));
                }
            }
            out.add_term(f.clone(), s);
        }
        out
    }

    pub fn render(&self, a: &PBWElement) -> String {
        a.render(Some(&self.labels))
    }
}

impl Ambient for Presentation {
    type Elem = PBWElement;

    fn one(&self) -> PBWElement {
        self.constant(Coeff::one())
    }

    fn zero(&self) -> PBWElement {
        PBWElement::zero()
    }

    fn is_zero(&self, a: &PBWElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        a.add(b)
    }

    fn scale(&self, c: &Coeff, a: &PBWElement) -> PBWElement {
        a.scale(c)
    }

    fn mul(&self, a: &PBWElement, b: &PBWElement) -> PBWElement {
        Presentation::mul(self, a, b)
    }

    /// Exact left division; `≺` is a well-order and
    /// `lt(d x^g) = q^{..} lt(d) x^g`, so the remainder strictly decreases.
    fn left_div(&self, d: &PBWElement, x: &PBWElement) -> Result<PBWElement> {
        let (df, dc) = match d.leading() {
            Some((f, c)) => (f.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = x.clone();
        let mut quot = PBWElement::zero();
        while let Some((l, lc)) = rem.leading().map(|(a, b)| (a.clone(), b.clone())) {
            let g =
                l.0.iter()
                    .zip(&df.0)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect::<Option<Vec<u32>>>()
                    .map(Mono)
                    .ok_or_else(|| Error::InexactDivision("leading monomial is not divisible".into()))?;
            let c = lc.checked_div(&dc.mul_qpow(self.lt_product_exp(&df, &g)))?;
            let term = PBWElement::monomial(g.clone(), c.clone());
            rem = rem.sub(&Presentation::mul(self, d, &term));
            quot.add_term(g, c);
        }
        Ok(quot)
    }
}

/// `O_q(M_{m,n})` with `x_{(r-1)n+c} = t_rc`.
pub fn quantum_matrix_preset(m: usize, n: usize) -> Result<Presentation> {
    if m == 0 || n == 0 {
        return Err(Error::Dimension("quantum matrices need m, n >= 1".into()));
    }
    let big_n = m * n;
    let pos = |k: usize| (k / n, k % n);
    let idx = |r: usize, c: usize| r * n + c;
    let mut lower = vec![Vec::new(); big_n];
    let mut delta = vec![Vec::new(); big_n];
    let q_minus = Coeff::laurent(&[
        (int_big(-1), Rational64::from_integer(1)),
        (int_big(1), Rational64::from_integer(-1)),
    ]);
    for k in 0..big_n {
        let (rk, ck) = pos(k);
        for j in 0..k {
            let (rj, cj) = pos(j);
            let e = if rk == rj || ck == cj { -1 } else { 0 };
            lower[k].push(Rational64::from_integer(e));
            let mut d = PBWElement::zero();
            if rk > rj && ck > cj {
                // t_kl t_ij = t_ij t_kl - (q - q^{-1}) t_il t_kj.
                let mut f = vec![0u32; big_n];
                f[idx(rj, ck)] += 1;
                f[idx(rk, cj)] += 1;
                d.add_term(Mono(f), q_minus.clone());
            }
            delta[k].push(d);
        }
    }
    let mut weights = vec![vec![0i64; big_n]; m + n];
    for k in 0..big_n {
        let (r, c) = pos(k);
        weights[r][k] += 1;
        weights[m + c][k] -= 1;
    }
    Presentation::new(PresentationData {
        lambda: ExpMatrix::from_lower(&lower)?,
        delta,
        weights,
        lambda_k: vec![ScalarExp::from_int(-2); big_n],
        lambda_star: vec![ScalarExp::from_int(2); big_n],
        eta: Some((0..big_n).map(|k| pos(k).1 as i64 - pos(k).0 as i64).collect()),
        labels: Some(
            (0..big_n)
                .map(|k| format!("t{}{}", pos(k).0 + 1, pos(k).1 + 1))
                .collect(),
        ),
    })
}

fn int_big(a: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(a.into())
}

fn permutations(l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(l - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, l - 1);
            out.push(v);
        }
    }
    out
}

/// `Δ_{I,J} = Σ_σ (-q)^{ℓ(σ)} t_{i_1 j_σ(1)} ... t_{i_l j_σ(l)}` in `O_q(M_{m,n})`
/// (0-based, increasing row and column sets).
pub fn quantum_minor(p: &Presentation, m: usize, n: usize, rows: &[usize], cols: &[usize]) -> Result<PBWElement> {
    if p.n() != m * n || rows.len() != cols.len() || rows.iter().any(|&r| r >= m) || cols.iter().any(|&c| c >= n) {
        return Err(Error::Dimension("minor does not fit the matrix".into()));
    }
    let mut out = PBWElement::zero();
    for perm in permutations(rows.len()) {
        let inv = (0..perm.len())
            .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut term = p.constant(
            Coeff::qpow(Rational64::from_integer(inv as i64)).scale(&int_big(if inv % 2 == 0 { 1 } else { -1 })),
        );
        for (a, &r) in rows.iter().enumerate() {
            term = p.mul(&term, &p.generator(r * n + cols[perm[a]]));
        }
        out = out.add(&term);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Lit {
    Int(i64),
    Str(String),
}

impl Lit {
    fn exponent(&self) -> Result<Rational64> {
        match self {
            Lit::Int(i) => Ok(Rational64::from_integer(*i)),
            Lit::Str(s) => parse_exponent(s),
        }
    }

    fn rational(&self) -> Result<num_rational::BigRational> {
        match self {
            Lit::Int(i) => Ok(int_big(*i)),
            Lit::Str(s) => parse_rational(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermConfig {
    f: Vec<u32>,
    /// `[[exponent, rational], ...]` meaning `Σ c q^e`.
    coeff: Vec<(Lit, Lit)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaConfig {
    k: usize,
    j: usize,
    terms: Vec<TermConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationConfig {
    n: usize,
    lambda: Vec<Vec<Lit>>,
    weights: Vec<Vec<i64>>,
    lambda_k: Vec<Lit>,
    lambda_star: Vec<Lit>,
    eta: Option<Vec<i64>>,
    labels: Option<Vec<String>>,
    #[serde(default)]
    delta: Vec<DeltaConfig>,
}

impl Presentation {
    /// Parses a presentation from TOML. `lambda` holds the exponents of
    /// `λ_kj` below the diagonal, row by row; `delta` entries use 1-based
    /// `k > j`. The table is checked for associativity on a random sample.
    pub fn from_toml(text: &str) -> Result<Presentation> {
        let cfg: PresentationConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = cfg.n;
        if cfg.lambda.len() != n {
            return Err(Error::Parse(format!("lambda needs {n} rows")));
        }
        let lower = cfg
            .lambda
            .iter()
            .map(|row| row.iter().map(Lit::exponent).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut delta: Vec<Vec<PBWElement>> = (0..n).map(|k| vec![PBWElement::zero(); k]).collect();
        for d in &cfg.delta {
            if d.j == 0 || d.j >= d.k || d.k > n {
                return Err(Error::Parse(format!(
                    "delta entry ({}, {}) needs 1 <= j < k <= {n}",
                    d.k, d.j
                )));
            }
            let mut el = PBWElement::zero();
            for t in &d.terms {
                if t.f.len() != n {
                    return Err(Error::Parse("delta monomials need N exponents".into()));
                }
                let terms = t
                    .coeff
                    .iter()
                    .map(|(e, c)| Ok((c.rational()?, e.exponent()?)))
                    .collect::<Result<Vec<_>>>()?;
                el.add_term(Mono(t.f.clone()), Coeff::laurent(&terms));
            }
            delta[d.k - 1][d.j - 1] = el;
        }
        let exps = |v: &[Lit]| {
            v.iter()
                .map(|l| l.exponent().map(ScalarExp::new))
                .collect::<Result<Vec<_>>>()
        };
        let p = Presentation::new(PresentationData {
            lambda: ExpMatrix::from_lower(&lower)?,
            delta,
            weights: cfg.weights,
            lambda_k: exps(&cfg.lambda_k)?,
            lambda_star: exps(&cfg.lambda_star)?,
            eta: cfg.eta,
            labels: cfg.labels,
        })?;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
        p.check_associativity(&mut rng, 64, 3)?;
        Ok(p)
    }
}
