//! Based quantum tori, their Laurent elements, and toric frames realized in
//! an ambient algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bicharacter::{transpose, ExpMatrix, IntMatrix};
use crate::error::{Error, Result};
use crate::scalarfield::Coeff;

/// An algebra in which frame images live. `left_div(d, x)` returns the `y`
/// with `d * y = x`, or an error when no such element exists in the algebra.
pub trait Ambient {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Coeff, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn left_div(&self, d: &Self::Elem, x: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&crate::scalarfield::int(-1), b))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// A finite sum `Σ c_f Y^(f)` in the based quantum torus with matrix `base`.
#[derive(Clone, PartialEq)]
pub struct TorusElement {
    pub base: Arc<ExpMatrix>,
    pub terms: BTreeMap<Vec<i64>, Coeff>,
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

impl TorusElement {
    pub fn zero(base: Arc<ExpMatrix>) -> Self {
        TorusElement {
            base,
            terms: BTreeMap::new(),
        }
    }

    /// `c Y^(f)`.
    pub fn monomial(base: Arc<ExpMatrix>, f: Vec<i64>, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(f, c);
        }
        TorusElement { base, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: Vec<i64>, c: Coeff) {
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

    /// Lex-largest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &Coeff)> {
        self.terms.iter().next_back()
    }
}

/// `a * b` under `Y^(f) Y^(g) = Ω_r(f,g) Y^(f+g)`.
pub fn torus_mul(a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
    if a.base != b.base {
        return Err(Error::Dimension("torus elements over different bases".into()));
    }
    let mut out = TorusElement::zero(a.base.clone());
    for (f, cf) in &a.terms {
        for (g, cg) in &b.terms {
            let w = a.base.pair(f, g);
            let h: Vec<i64> = f.iter().zip(g).map(|(x, y)| x + y).collect();
            out.add_term(h, (cf * cg).mul_qpow(w));
        }
    }
    Ok(out)
}

/// The based quantum torus with matrix `base`, as an ambient algebra.
#[derive(Clone, Debug)]
pub struct Torus {
    pub base: Arc<ExpMatrix>,
}

impl Torus {
    pub fn new(base: ExpMatrix) -> Self {
        Torus { base: Arc::new(base) }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn y(&self, f: Vec<i64>) -> TorusElement {
        TorusElement::monomial(self.base.clone(), f, Coeff::one())
    }

    /// The frame `e_k -> Y^(e_k)` with matrix `base`.
    pub fn identity_frame(&self) -> ToricFrame<TorusElement> {
        let n = self.n();
        let images = (0..n).map(|k| self.y(crate::bicharacter::unit(n, k))).collect();
        ToricFrame {
            r: (*self.base).clone(),
            images,
        }
    }
}

impl Ambient for Torus {
    type Elem = TorusElement;

    fn one(&self) -> TorusElement {
        self.y(vec![0; self.n()])
    }

    fn zero(&self) -> TorusElement {
        TorusElement::zero(self.base.clone())
    }

    fn is_zero(&self, a: &TorusElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &TorusElement, b: &TorusElement) -> TorusElement {
        let mut out = a.clone();
        for (f, c) in &b.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &Coeff, a: &TorusElement) -> TorusElement {
        if c.is_zero() {
            return self.zero();
        }
        TorusElement {
            base: a.base.clone(),
            terms: a.terms.iter().map(|(f, v)| (f.clone(), v * c)).collect(),
        }
    }

    fn mul(&self, a: &TorusElement, b: &TorusElement) -> TorusElement {
        torus_mul(a, b).expect("elements of one torus")
    }

    /// Exact left division by leading terms in the lex order; quotient
    /// exponents are confined to the box `[min x - min d, max x - max d]`.
    fn left_div(&self, d: &TorusElement, x: &TorusElement) -> Result<TorusElement> {
        let n = self.n();
        let (dl, dc) = match d.leading() {
            Some((f, c)) => (f.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        if x.is_zero() {
            return Ok(self.zero());
        }
        let bounds = |e: &TorusElement| {
            let mut lo = vec![i64::MAX; n];
            let mut hi = vec![i64::MIN; n];
            for f in e.terms.keys() {
                for i in 0..n {
                    lo[i] = lo[i].min(f[i]);
                    hi[i] = hi[i].max(f[i]);
                }
            }
            (lo, hi)
        };
        let (xlo, xhi) = bounds(x);
        let (dlo, dhi) = bounds(d);
        let mut rem = x.clone();
        let mut quot = self.zero();
        while let Some((l, lc)) = rem.leading().map(|(a, b)| (a.clone(), b.clone())) {
            let t: Vec<i64> = l.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let inside = (0..n).all(|i| t[i] >= xlo[i] - dlo[i] && t[i] <= xhi[i] - dhi[i]);
            if !inside {
                return Err(Error::InexactDivision("torus element is not a left multiple".into()));
            }
            let w = self.base.pair(&dl, &t);
            let c = lc.checked_div(&dc.mul_qpow(w))?;
            let term = TorusElement::monomial(self.base.clone(), t.clone(), c.clone());
            rem = self.sub(&rem, &self.mul(d, &term));
            quot.add_term(t, c);
        }
        Ok(quot)
    }
}

/// A toric frame: the images of `e_1..e_N` in an ambient algebra and its matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricFrame<E> {
    pub r: ExpMatrix,
    pub images: Vec<E>,
}

impl<E> ToricFrame<E> {
    pub fn n(&self) -> usize {
        self.images.len()
    }
}

/// `M(f) = S_r(f) M(e_1)^{m_1} ... M(e_N)^{m_N}` for `f >= 0`.
pub fn frame_value_nonneg<A: Ambient>(amb: &A, m: &ToricFrame<A::Elem>, f: &[i64]) -> A::Elem {
    debug_assert!(f.iter().all(|&x| x >= 0));
    let mut acc = amb.one();
    for (k, &mk) in f.iter().enumerate() {
        if mk > 0 {
            acc = amb.mul(&acc, &amb.pow(&m.images[k], mk as u32));
        }
    }
    amb.scale(&Coeff::qpow(m.r.symmetrization_exp(f)), &acc)
}

/// `M(f)` for any integer vector. Negative parts are handled through
/// `M(f) = Ω_r(-f⁻, f⁺)^{-1} M(f⁻)^{-1} M(f⁺)`, which requires the left
/// division by `M(f⁻)` to be exact in the ambient algebra.
pub fn frame_value<A: Ambient>(amb: &A, m: &ToricFrame<A::Elem>, f: &[i64]) -> Result<A::Elem> {
    if f.len() != m.n() {
        return Err(Error::Dimension(format!(
            "vector of length {} for a frame of size {}",
            f.len(),
            m.n()
        )));
    }
    let pos: Vec<i64> = f.iter().map(|&x| x.max(0)).collect();
    let neg: Vec<i64> = f.iter().map(|&x| (-x).max(0)).collect();
    let mp = frame_value_nonneg(amb, m, &pos);
    if neg.iter().all(|&x| x == 0) {
        return Ok(mp);
    }
    let mn = frame_value_nonneg(amb, m, &neg);
    let q = amb.left_div(&mn, &mp)?;
    let minus_neg: Vec<i64> = neg.iter().map(|x| -x).collect();
    let w = m.r.pair(&minus_neg, &pos);
    Ok(amb.scale(&Coeff::qpow(-w), &q))
}

/// Integer determinant by fraction-free elimination.
pub fn int_det(a: &IntMatrix) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// The frame `Mσ`: images `M(σ e_k)` and matrix `{}^{σᵀ}r^{σ}`.
pub fn reindex_frame<A: Ambient>(amb: &A, m: &ToricFrame<A::Elem>, sigma: &IntMatrix) -> Result<ToricFrame<A::Elem>> {
    let n = m.n();
    if sigma.len() != n || sigma.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("reindexing matrix has the wrong shape".into()));
    }
    let det = int_det(sigma);
    if det != 1 && det != -1 {
        return Err(Error::NotUnimodular(format!("determinant {det}")));
    }
    let cols = transpose(sigma);
    let images = cols
        .iter()
        .map(|c| frame_value(amb, m, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(ToricFrame {
        r: m.r.transform(sigma)?,
        images,
    })
}
