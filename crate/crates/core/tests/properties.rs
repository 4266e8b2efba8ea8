use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcluster::bicharacter::{identity, int_mat_mul, int_mat_vec, IntMatrix};
use qcluster::exchangesolver::{d_per_index, solve_bcolumn};
use qcluster::mutation::{
    compatibility_check, fz_mutation, mutate_matrix, mutate_r, mutate_seed, random_compatible_pair, Seed, Sign,
};
use qcluster::orealgebra::{quantum_matrix_preset, Mono, PBWElement, Presentation};
use qcluster::primeseq::rescale_generators;
use qcluster::qtorus::{frame_value, reindex_frame, torus_mul, Ambient, Torus, TorusElement};
use qcluster::scalarfield::{Coeff, ScalarExp};
use qcluster::xicombinatorics::{frame_for_tau, gamma_seeds};
use qcluster::ExpMatrix;

fn half(e: i64) -> Rational64 {
    Rational64::new(e, 2)
}

fn laurent() -> impl Strategy<Value = Coeff> {
    prop::collection::vec((-3i64..=3, -6i64..=6), 0..4).prop_map(|ts| {
        let terms: Vec<(BigRational, Rational64)> = ts
            .into_iter()
            .map(|(a, e)| (BigRational::from_integer(BigInt::from(a)), half(e)))
            .collect();
        Coeff::laurent(&terms)
    })
}

/// Quotients of Laurent polynomials, so denominators are exercised.
fn coeff() -> impl Strategy<Value = Coeff> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a.checked_div(&b).unwrap() })
}

fn skew(n: usize) -> impl Strategy<Value = ExpMatrix> {
    prop::collection::vec(-4i64..=4, n * (n - 1) / 2).prop_map(move |v| {
        let mut lower = vec![Vec::new(); n];
        let mut it = v.into_iter();
        for (k, row) in lower.iter_mut().enumerate() {
            row.extend((0..k).map(|_| half(it.next().unwrap())));
        }
        ExpMatrix::from_lower(&lower).unwrap()
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -1i64..=1), 0..2 * n).prop_map(move |ops| {
        ops.into_iter().fold(identity(n), |s, (i, j, c)| {
            let mut e = identity(n);
            if i == j {
                e[i][i] = -1;
            } else {
                e[i][j] = c;
            }
            int_mat_mul(&s, &e)
        })
    })
}

fn torus_element(base: Arc<ExpMatrix>) -> impl Strategy<Value = TorusElement> {
    let n = base.n();
    prop::collection::vec((vector(n), -2i64..=2), 0..3).prop_map(move |ts| {
        let mut out = TorusElement::zero(base.clone());
        for (f, c) in ts {
            out.add_term(f, qcluster::scalarfield::int(c));
        }
        out
    })
}

fn pbw(n: usize, lo: usize, hi: usize) -> impl Strategy<Value = PBWElement> {
    prop::collection::vec((prop::collection::vec(0u32..=1, n), -2i64..=2), 1..3).prop_map(move |ts| {
        let mut out = PBWElement::zero();
        for (mut f, c) in ts {
            for (k, x) in f.iter_mut().enumerate() {
                if k < lo || k > hi {
                    *x = 0;
                }
            }
            out.add_term(Mono(f), qcluster::scalarfield::int(c));
        }
        out
    })
}

fn preset_2x3() -> Presentation {
    quantum_matrix_preset(2, 3).unwrap()
}

proptest! {
    #[test]
    fn coeff_field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_embedding_is_multiplicative(s in -12i64..=12, t in -12i64..=12) {
        let (s, t) = (ScalarExp::new(Rational64::new(s, 3)), ScalarExp::new(half(t)));
        prop_assert_eq!((s * t).to_coeff(), &s.to_coeff() * &t.to_coeff());
        prop_assert_eq!(s.inv().to_coeff(), s.to_coeff().inv().unwrap());
    }

    #[test]
    fn omega_is_bimultiplicative(m in skew(5), f in vector(5), f2 in vector(5), g in vector(5)) {
        let sum: Vec<i64> = f.iter().zip(&f2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(m.pair(&sum, &g), m.pair(&f, &g) + m.pair(&f2, &g));
        prop_assert_eq!(m.pair(&g, &sum), m.pair(&g, &f) + m.pair(&g, &f2));
        prop_assert_eq!(m.pair(&f, &g), -m.pair(&g, &f));
    }

    #[test]
    fn omega_under_reindexing(m in skew(4), s in unimodular(4), f in vector(4), g in vector(4)) {
        let ms = m.transform(&s).unwrap();
        prop_assert_eq!(ms.pair(&f, &g), m.pair(&int_mat_vec(&s, &f), &int_mat_vec(&s, &g)));
    }

    #[test]
    fn symmetrization_splits(m in skew(6), f in vector(6), g in vector(6), cut in 0usize..=6) {
        // supp(f) precedes supp(g).
        let f: Vec<i64> = f.iter().enumerate().map(|(k, &x)| if k < cut { x } else { 0 }).collect();
        let g: Vec<i64> = g.iter().enumerate().map(|(k, &x)| if k >= cut { x } else { 0 }).collect();
        let fg: Vec<i64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        prop_assert_eq!(m.symmetrization_exp(&fg), m.symmetrization_exp(&f) + m.symmetrization_exp(&g) - m.pair(&f, &g));
    }
}

fn torus_triples() -> impl Strategy<Value = (TorusElement, TorusElement, TorusElement)> {
    skew(3).prop_flat_map(|m| {
        let base = Arc::new(m);
        (
            torus_element(base.clone()),
            torus_element(base.clone()),
            torus_element(base),
        )
    })
}

proptest! {
    #[test]
    fn torus_ring_axioms((a, b, c) in torus_triples()) {
        let mul = |x: &TorusElement, y: &TorusElement| torus_mul(x, y).unwrap();
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        let mut bc = b.clone();
        for (f, k) in &c.terms {
            bc.add_term(f.clone(), k.clone());
        }
        let mut rhs = mul(&a, &b);
        for (f, k) in mul(&a, &c).terms {
            rhs.add_term(f, k);
        }
        prop_assert_eq!(mul(&a, &bc), rhs);
    }

    #[test]
    fn frame_value_is_twisted_additive(m in skew(4), f in vector(4), g in vector(4)) {
        let t = Torus::new(m.clone());
        let id = t.identity_frame();
        let fg: Vec<i64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let lhs = frame_value(&t, &id, &fg).unwrap();
        let prod = t.mul(&frame_value(&t, &id, &f).unwrap(), &frame_value(&t, &id, &g).unwrap());
        let rhs = t.scale(&Coeff::qpow(-m.pair(&f, &g)), &prod);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reindexing_round_trip(m in skew(4), s in unimodular(4)) {
        let t = Torus::new(m);
        let id = t.identity_frame();
        let once = reindex_frame(&t, &id, &s).unwrap();
        let inv = invert(&s);
        prop_assert_eq!(reindex_frame(&t, &once, &inv).unwrap(), id);
    }
}

fn invert(s: &IntMatrix) -> IntMatrix {
    // Columns of the inverse solve s x = e_j; entries are integral since
    // det s = ±1, so Cramer's rule over i128 stays exact.
    let n = s.len();
    let det = qcluster::qtorus::int_det(s);
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| s[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[i][j] = (sign * qcluster::qtorus::int_det(&minor) / det) as i64;
        }
    }
    out
}

/// `(n, m)` with a full-rank compatible pair possible.
fn shape() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=8)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_map(|(n, m)| if m == n && m % 2 == 1 { (n, m - 1) } else { (n, m) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pair_mutation_laws((n, m) in shape(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, b, _) = random_compatible_pair(&mut rng, n, m);
        let k = b.ex[pick.index(b.ex.len())];
        let t = compatibility_check(&r, &b).unwrap();
        let (b1, _, _) = mutate_matrix(&b, k, Sign::Plus).unwrap();
        prop_assert_eq!(&b1, &mutate_matrix(&b, k, Sign::Minus).unwrap().0);
        prop_assert_eq!(&b1, &fz_mutation(&b, k).unwrap());
        prop_assert_eq!(b1.rank(), m);
        let r1 = mutate_r(&r, &b, k, Sign::Plus).unwrap();
        prop_assert_eq!(&r1, &mutate_r(&r, &b, k, Sign::Minus).unwrap());
        prop_assert_eq!(compatibility_check(&r1, &b1).unwrap(), t);
        prop_assert_eq!(mutate_matrix(&b1, k, Sign::Plus).unwrap().0, b.clone());
        prop_assert_eq!(mutate_r(&r1, &b1, k, Sign::Plus).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Paths stay short: expansions grow quickly with each exchange.
    #[test]
    fn seed_mutation_is_involutive_and_laurent(
        n in 2usize..=4,
        seed in any::<u64>(),
        path in prop::collection::vec(any::<prop::sample::Index>(), 1..3),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if n % 2 == 1 { n - 1 } else { n };
        let (r, b, _) = random_compatible_pair(&mut rng, n, m);
        let t = Torus::new(r);
        let mut s = Seed { frame: t.identity_frame(), b };
        for idx in path {
            let k = s.b.ex[idx.index(s.b.ex.len())];
            let next = mutate_seed(&t, &s, k).unwrap();
            prop_assert_eq!(&mutate_seed(&t, &next, k).unwrap(), &s);
            for img in &next.frame.images {
                prop_assert!(img.terms.values().all(|c| c.is_laurent()));
            }
            s = next;
        }
    }

    #[test]
    fn pbw_associativity(a in pbw(6, 0, 5), b in pbw(6, 0, 5), c in pbw(6, 0, 5)) {
        let p = preset_2x3();
        prop_assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)));
    }

    #[test]
    fn pbw_homogeneity(f in prop::collection::vec(0u32..=2, 6), g in prop::collection::vec(0u32..=2, 6)) {
        let p = preset_2x3();
        let (f, g) = (Mono(f), Mono(g));
        let prod = p.mono_mul(&f, &g);
        let want: Vec<i64> = p.weight_of_mono(&f).iter().zip(p.weight_of_mono(&g)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(p.weight_of(&prod).unwrap(), Some(want));
    }

    #[test]
    fn pbw_interval_closure((lo, hi, a, b) in interval_pair()) {
        let p = preset_2x3();
        prop_assert!(p.mul(&a, &b).supported_in(lo, hi));
    }
}

fn interval_pair() -> impl Strategy<Value = (usize, usize, PBWElement, PBWElement)> {
    (0usize..6)
        .prop_flat_map(|lo| (Just(lo), lo..6))
        .prop_flat_map(|(lo, hi)| (Just(lo), Just(hi), pbw(6, lo, hi), pbw(6, lo, hi)))
}

#[test]
fn solver_columns_are_unique() {
    // Perturbing λ* makes the system inconsistent or moves the solution.
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let resc = rescale_generators(&quantum_matrix_preset(m, n).unwrap()).unwrap();
        let p = &resc.presentation;
        let f = frame_for_tau(p, &resc.intervals, &(0..p.n()).collect::<Vec<_>>()).unwrap();
        for &l in &resc.primes.eta.ex() {
            let base = solve_bcolumn(&f.r, &f.weights, p.lambda_star()[l], l).unwrap();
            for delta in [half(1), half(-2), Rational64::new(1, 3)] {
                let moved = ScalarExp::new(p.lambda_star()[l].exp + delta);
                if let Ok(other) = solve_bcolumn(&f.r, &f.weights, moved, l) {
                    assert_ne!(other, base);
                }
            }
        }
    }
}

#[test]
fn every_chain_seed_is_compatible() {
    for (m, n) in [(2, 3), (3, 3)] {
        let resc = rescale_generators(&quantum_matrix_preset(m, n).unwrap()).unwrap();
        let p = &resc.presentation;
        let d = d_per_index(p, &resc.primes.eta).unwrap();
        for (f, b) in gamma_seeds(p, &resc.intervals, &d).unwrap() {
            let t = compatibility_check(&f.r, &b).unwrap();
            for (c, &k) in b.ex.iter().enumerate() {
                // t_kk^2 = λ* at the frame index.
                assert_eq!(t[c].exp * 2, p.lambda_star()[k].exp, "{m}x{n}, tau {:?}", f.tau);
            }
        }
    }
}
