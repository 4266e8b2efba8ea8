//! One line per acceptance criterion. Everything is exact; the only
//! tolerances are the wall-clock limits below.

use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcluster::bicharacter::{identity, int_mat_mul, int_mat_vec, unit, IntMatrix};
use qcluster::exchangesolver::{btilde_for_tau, d_per_index, first_column_crosscheck, quantum_matrix_btilde};
use qcluster::mutation::{
    compatibility_check, mutate_matrix, mutate_r, mutate_seed, random_compatible_pair, Seed, Sign,
};
use qcluster::orealgebra::{quantum_matrix_preset, Mono, PBWElement, Presentation};
use qcluster::primeseq::{
    chain_pairs, check_pi_normalized, check_u_product, compute_primes, pi_f_data, rescale_generators, u_element,
    EtaData,
};
use qcluster::qtorus::{frame_value, reindex_frame, Ambient, ToricFrame, Torus};
use qcluster::scalarfield::Coeff;
use qcluster::schubertdata::{btilde_w, match_indices, reduced_words, verify_all_words, CartanData, WordData};
use qcluster::xicombinatorics::{
    check_interval_mutation, frame_for_tau, gamma_chain, gamma_seeds, generator_coverage, verify_chain,
};

const LIMIT_2X2: Duration = Duration::from_secs(1);
const LIMIT_3X3: Duration = Duration::from_secs(30);
const LIMIT_SCHUBERT: Duration = Duration::from_secs(60);
const MUTATION_CASES: usize = 1200;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(e: i64) -> Coeff {
    Coeff::qpow(Rational64::from_integer(e))
}

/// `Δ_{I,J} = Σ_σ (-q)^{ℓ(σ)} t_{i_1 j_σ(1)} ... t_{i_l j_σ(l)}`. With rows
/// increasing each product is already an ordered monomial, so no
/// multiplication is needed.
fn solid_minor(m: usize, n: usize, rows: &[usize], cols: &[usize]) -> PBWElement {
    let l = rows.len();
    let mut out = PBWElement::zero();
    let mut perm: Vec<usize> = (0..l).collect();
    loop {
        let inv = (0..l)
            .flat_map(|a| (a + 1..l).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count() as i64;
        let mut f = vec![0u32; m * n];
        for a in 0..l {
            f[rows[a] * n + cols[perm[a]]] += 1;
        }
        let sign = if inv % 2 == 0 { Coeff::one() } else { Coeff::one().neg() };
        out.add_term(Mono(f), &sign * &q(inv));
        // next permutation
        let Some(i) = (0..l.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..l).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

fn solid_minor_ending(m: usize, n: usize, r: usize, c: usize) -> PBWElement {
    let l = r.min(c);
    solid_minor(m, n, &(r - l..=r).collect::<Vec<_>>(), &(c - l..=c).collect::<Vec<_>>())
}

/// The neighbour pattern, evaluated independently of the library version.
fn closed_form(m: usize, n: usize) -> (Vec<usize>, IntMatrix) {
    let mut ex = Vec::new();
    for r in 0..m - 1 {
        for c in 0..n - 1 {
            ex.push(r * n + c);
        }
    }
    let mut b = vec![vec![0i64; ex.len()]; m * n];
    for (col, &k) in ex.iter().enumerate() {
        let (r2, c2) = ((k / n) as i64, (k % n) as i64);
        for (row, line) in b.iter_mut().enumerate() {
            let (r, c) = ((row / n) as i64, (row % n) as i64);
            line[col] = if r == r2 && (c2 - c).abs() == 1 {
                c2 - c
            } else if c == c2 && (r2 - r).abs() == 1 {
                r2 - r
            } else if (r - r2).abs() == 1 && r - r2 == c - c2 {
                r - r2
            } else {
                0
            };
        }
    }
    (ex, b)
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (m, n, limit) in [(2, 2, LIMIT_2X2), (2, 3, LIMIT_3X3), (3, 3, LIMIT_3X3)] {
        let t = Instant::now();
        let p = quantum_matrix_preset(m, n).map_err(|e| e.to_string())?;
        let seq = compute_primes(&p).map_err(|e| e.to_string())?;
        let el = t.elapsed();
        ensure(el < limit, || format!("{m}x{n} took {el:?}"))?;
        for k in 0..m * n {
            let (r, c) = (k / n, k % n);
            ensure(seq.y[k] == solid_minor_ending(m, n, r, c), || {
                format!("{m}x{n}: y_{} is not a solid minor", k + 1)
            })?;
            // η(k) = c - r up to relabeling: compare level sets.
            for j in 0..m * n {
                let same = (c as i64 - r as i64) == ((j % n) as i64 - (j / n) as i64);
                ensure((seq.eta.eta[k] == seq.eta.eta[j]) == same, || {
                    format!("{m}x{n}: level sets differ")
                })?;
            }
        }
        let eta = EtaData::from_eta((0..m * n).map(|k| (k % n) as i64 - (k / n) as i64).collect());
        ensure(seq.eta.rank() == m + n - 1, || {
            format!("{m}x{n}: rank {}", seq.eta.rank())
        })?;
        for k in 0..m * n {
            let (f, c) = seq.y[k].leading().ok_or("zero prime")?;
            ensure(f.to_i64() == eta.ebar(k) && c.is_one(), || {
                format!("{m}x{n}: lt(y_{})", k + 1)
            })?;
        }
        notes.push(format!("{m}x{n} {el:.2?}"));
    }
    // The 2x2 determinant by hand: t11 t22 - q t12 t21.
    let p = quantum_matrix_preset(2, 2).unwrap();
    let seq = compute_primes(&p).unwrap();
    let mut delta = PBWElement::zero();
    delta.add_term(Mono(vec![1, 0, 0, 1]), Coeff::one());
    delta.add_term(Mono(vec![0, 1, 1, 0]), q(1).neg());
    ensure(seq.y[3] == delta, || "2x2 determinant".into())?;
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let p = quantum_matrix_preset(m, n).unwrap();
        let resc = rescale_generators(&p).map_err(|e| e.to_string())?;
        ensure(resc.gamma.iter().all(|g| g.is_one()), || {
            format!("{m}x{n}: gamma is not 1")
        })?;
        check_pi_normalized(&resc.presentation, &resc.intervals).map_err(|e| e.to_string())?;
        let iv = &resc.intervals;
        for i in (0..m * n).filter(|&i| iv.eta.s[i].is_some()) {
            let mut want = PBWElement::zero();
            let mut f = vec![0u32; m * n];
            f[i + 1] = 1;
            f[i + n] = 1;
            want.add_term(Mono(f.clone()), q(1));
            let u = u_element(&p, iv, i, 1).map_err(|e| e.to_string())?;
            ensure(u == want, || format!("{m}x{n}: u at {}", i + 1))?;
            let (pi, ff) = pi_f_data(&p, iv, i, 1).map_err(|e| e.to_string())?;
            ensure(pi == q(1), || format!("{m}x{n}: pi at {}", i + 1))?;
            ensure(ff == f.iter().map(|&x| x as i64).collect::<Vec<_>>(), || {
                format!("{m}x{n}: f at {}", i + 1)
            })?;
            // S_ν(-e_i + e_{i+1} + e_{i+n}) with ν = λ/2, summed by hand.
            let mut v = vec![0i64; m * n];
            v[i] = -1;
            v[i + 1] = 1;
            v[i + n] = 1;
            let nu = p.nu();
            let mut s = Rational64::from_integer(0);
            for a in 0..m * n {
                for b in a + 1..m * n {
                    s -= nu.get(a, b) * (v[a] * v[b]);
                }
            }
            ensure(Coeff::qpow(s) == pi, || format!("{m}x{n}: normalization at {}", i + 1))?;
            count += 1;
        }
    }
    Ok(format!("{count} intervals"))
}

fn initial(p: &Presentation) -> Result<(Presentation, Seed<PBWElement>), String> {
    let resc = rescale_generators(p).map_err(|e| e.to_string())?;
    let q = resc.presentation.clone();
    let eta = &resc.primes.eta;
    let d = d_per_index(&q, eta).map_err(|e| e.to_string())?;
    let f = frame_for_tau(&q, &resc.intervals, &(0..q.n()).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let b = btilde_for_tau(&q, eta, &f, &d).map_err(|e| e.to_string())?;
    Ok((q, Seed { frame: f.toric(), b }))
}

fn criterion_3() -> Outcome {
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let (_, seed) = initial(&quantum_matrix_preset(m, n).unwrap())?;
        let (ex, b) = closed_form(m, n);
        ensure(seed.b.ex == ex && seed.b.b == b, || {
            format!("{m}x{n}: solver differs from the closed form")
        })?;
        ensure(seed.b == quantum_matrix_btilde(m, n), || {
            format!("{m}x{n}: library closed form differs")
        })?;
    }
    let (_, seed) = initial(&quantum_matrix_preset(2, 2).unwrap())?;
    ensure(seed.b.column(0) == Some(vec![0, -1, -1, 1]), || "b^1".into())?;
    Ok("2x2, 2x3, 3x3 entrywise".into())
}

fn criterion_4() -> Outcome {
    let (p, seed) = initial(&quantum_matrix_preset(2, 2).unwrap())?;
    let mu = mutate_seed(&p, &seed, 0).map_err(|e| e.to_string())?;
    ensure(mu.frame.images[0] == p.generator(3), || {
        format!("mu_1 gives {}", p.render(&mu.frame.images[0]))
    })?;
    // Only the sum lies in R: M(-e1 + f) = Ω_r(-e1, f)^{-1} M(e1)^{-1} M(f).
    let part = |f: &[i64]| -> Result<PBWElement, String> {
        let w = seed.frame.r.pair(&[-1, 0, 0, 0], f);
        Ok(frame_value(&p, &seed.frame, f)
            .map_err(|e| e.to_string())?
            .scale(&Coeff::qpow(-w)))
    };
    let sum = part(&[0, 0, 0, 1])?.add(&part(&[0, 1, 1, 0])?);
    let direct = p.left_div(&seed.frame.images[0], &sum).map_err(|e| e.to_string())?;
    ensure(direct == p.generator(3), || {
        "M(-e1+e4) + M(-e1+e2+e3) is not t22".into()
    })?;
    // t11 t22 - q t12 t21 = Δ through the multiplication.
    let lhs = p
        .mul(&p.generator(0), &p.generator(3))
        .sub(&p.mul(&p.generator(1), &p.generator(2)).scale(&q(1)));
    ensure(lhs == solid_minor(2, 2, &[0, 1], &[0, 1]), || {
        "determinant identity".into()
    })?;
    // M(e_1) t22 = Ω_r(e_1, e_4) M(e_4) + Ω_r(e_1, e_2 + e_3) M(e_2 + e_3).
    let r = &seed.frame.r;
    let e1 = unit(4, 0);
    let m4 = seed.frame.images[3].scale(&Coeff::qpow(r.pair(&e1, &unit(4, 3))));
    let f23 = vec![0, 1, 1, 0];
    let m23 = frame_value(&p, &seed.frame, &f23).map_err(|e| e.to_string())?;
    let m23 = m23.scale(&Coeff::qpow(r.pair(&e1, &f23)));
    ensure(p.mul(&seed.frame.images[0], &p.generator(3)) == m4.add(&m23), || {
        "exchange relation".into()
    })?;

    let (p3, s3) = initial(&quantum_matrix_preset(3, 3).unwrap())?;
    for &k in &s3.b.ex {
        let mu = mutate_seed(&p3, &s3, k).map_err(|e| format!("3x3 at {}: {e}", k + 1))?;
        let img = &mu.frame.images[k];
        ensure(!img.is_zero() && img.terms.values().all(|c| c.is_laurent()), || {
            format!("3x3 at {}", k + 1)
        })?;
        ensure(p3.mul(&s3.frame.images[k], img) != PBWElement::zero(), || {
            "zero product".into()
        })?;
    }
    Ok(format!("2x2 gives t22; 3x3 polynomial at {} indices", s3.b.ex.len()))
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut s = identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = identity(n);
        if i == j {
            e[i][i] = -1;
        } else {
            e[i][j] = rng.gen_range(-1..=1);
        }
        s = int_mat_mul(&s, &e);
    }
    s
}

/// Inverse of a unimodular matrix by exact elimination.
fn inverse(s: &IntMatrix) -> IntMatrix {
    let n = s.len();
    let mut a: Vec<Vec<Rational64>> = s
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational64> = r.iter().map(|&x| Rational64::from_integer(x)).collect();
            row.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Rational64::from_integer(0)).unwrap();
        a.swap(c, p);
        let inv = Rational64::from_integer(1) / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for k in 0..2 * n {
                    let t = f * a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    a.iter()
        .map(|r| r[n..].iter().map(|x| x.to_integer()).collect())
        .collect()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20261015);
    let mut torus_seeds = 0;
    for case in 0..MUTATION_CASES {
        let n = rng.gen_range(2..=8);
        // m = n odd admits no full-rank pair.
        let mx = match rng.gen_range(1..=n) {
            m if m == n && m % 2 == 1 => m - 1,
            m => m,
        };
        let (r, b, _) = random_compatible_pair(&mut rng, n, mx);
        let k = b.ex[rng.gen_range(0..b.ex.len())];
        let t = compatibility_check(&r, &b).map_err(|e| format!("case {case}: {e}"))?;
        let (b1, _, _) = mutate_matrix(&b, k, Sign::Plus).map_err(|e| e.to_string())?;
        let (b1m, _, _) = mutate_matrix(&b, k, Sign::Minus).map_err(|e| e.to_string())?;
        ensure(b1 == b1m, || format!("case {case}: matrix sign dependence"))?;
        let r1 = mutate_r(&r, &b, k, Sign::Plus).map_err(|e| e.to_string())?;
        let r1m = mutate_r(&r, &b, k, Sign::Minus).map_err(|e| e.to_string())?;
        ensure(r1 == r1m, || format!("case {case}: r sign dependence"))?;
        let t1 = compatibility_check(&r1, &b1).map_err(|e| format!("case {case}: {e}"))?;
        ensure(t == t1, || format!("case {case}: t changed"))?;
        let (b2, _, _) = mutate_matrix(&b1, k, Sign::Plus).map_err(|e| e.to_string())?;
        let r2 = mutate_r(&r1, &b1, k, Sign::Plus).map_err(|e| e.to_string())?;
        ensure(b2 == b && r2 == r, || {
            format!("case {case}: pair mutation is not involutive")
        })?;
        if n <= 5 {
            let torus = Torus::new(r.clone());
            let seed = Seed {
                frame: torus.identity_frame(),
                b: b.clone(),
            };
            let s1 = mutate_seed(&torus, &seed, k).map_err(|e| format!("case {case}: {e}"))?;
            let s2 = mutate_seed(&torus, &s1, k).map_err(|e| format!("case {case}: {e}"))?;
            ensure(s2 == seed, || format!("case {case}: seed mutation is not involutive"))?;
            torus_seeds += 1;
        }
        // Y^(f) = Y_σ^(σ^{-1} f).
        let torus = Torus::new(r.clone());
        let id: ToricFrame<_> = torus.identity_frame();
        let sigma = random_unimodular(&mut rng, n);
        let reindexed = reindex_frame(&torus, &id, &sigma).map_err(|e| e.to_string())?;
        let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let g = int_mat_vec(&inverse(&sigma), &f);
        let lhs = torus.y(f.clone());
        let rhs = frame_value(&torus, &reindexed, &g).map_err(|e| e.to_string())?;
        ensure(Ambient::sub(&torus, &lhs, &rhs).is_zero(), || {
            format!("case {case}: GL_N invariance")
        })?;
    }
    Ok(format!("{MUTATION_CASES} pairs, {torus_seeds} torus seeds"))
}

fn criterion_6() -> Outcome {
    let (p, _) = initial(&quantum_matrix_preset(2, 3).unwrap())?;
    let resc = rescale_generators(&p).map_err(|e| e.to_string())?;
    let d = d_per_index(&p, &resc.primes.eta).map_err(|e| e.to_string())?;
    let seeds = gamma_seeds(&p, &resc.intervals, &d).map_err(|e| e.to_string())?;
    ensure(seeds.len() == 16 && gamma_chain(6).len() == 16, || "chain size".into())?;
    let steps = verify_chain(&p, &seeds).map_err(|e| e.to_string())?;
    let muts = steps.iter().filter(|s| s.mutated_at.is_some()).count();
    // Pairs in one level set of η(k) = c - r: (1,5), (2,6).
    ensure(muts == 2, || format!("{muts} mutation steps"))?;
    Ok(format!("16 seeds, {} transitions, {muts} mutations", steps.len()))
}

fn criterion_7() -> Outcome {
    let (p, _) = initial(&quantum_matrix_preset(3, 3).unwrap())?;
    let resc = rescale_generators(&p).map_err(|e| e.to_string())?;
    let d = d_per_index(&p, &resc.primes.eta).map_err(|e| e.to_string())?;
    let seeds = gamma_seeds(&p, &resc.intervals, &d).map_err(|e| e.to_string())?;
    let cov = generator_coverage(&p, &seeds);
    for (k, c) in cov.iter().enumerate() {
        let (tau, a) = c.as_ref().ok_or_else(|| format!("x_{} not covered", k + 1))?;
        let f = seeds.iter().find(|(f, _)| &f.tau == tau).unwrap();
        ensure(f.0.images[*a] == p.generator(k), || {
            format!("x_{} only up to a scalar", k + 1)
        })?;
    }
    Ok(format!("{} generators over {} seeds", cov.len(), seeds.len()))
}

fn criterion_8() -> Outcome {
    let p = quantum_matrix_preset(3, 3).unwrap();
    let resc = rescale_generators(&p).map_err(|e| e.to_string())?;
    let (q, iv, eta) = (&resc.presentation, &resc.intervals, &resc.primes.eta);
    let pairs = chain_pairs(eta);
    let (mut n1, mut n2) = (0, 0);
    for &(i, m) in &pairs {
        let top = eta.s_pow(i, m).unwrap();
        // Interval primes are the minors spanned by the corners i and top.
        let minor = solid_minor(
            3,
            3,
            &(i / 3..=top / 3).collect::<Vec<_>>(),
            &(i % 3..=top % 3).collect::<Vec<_>>(),
        );
        ensure(iv.y(i, top).unwrap() == minor, || format!("y_[{}, {}]", i + 1, top + 1))?;
        check_interval_mutation(q, iv, i, m).map_err(|e| e.to_string())?;
        n1 += 1;
        if eta.s_pow(i, m + 1).is_some() {
            check_u_product(q, iv, i, m).map_err(|e| e.to_string())?;
            n2 += 1;
        }
    }
    ensure(n2 > 0, || "no case for the leading-term identity".into())?;
    Ok(format!("{n1} interval identities, {n2} leading-term identities"))
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let p = quantum_matrix_preset(m, n).unwrap();
        let eta = compute_primes(&p).map_err(|e| e.to_string())?.eta;
        for i in (0..m * n).filter(|&i| eta.s[i].is_some()) {
            let fc = first_column_crosscheck(&p, &eta, i).map_err(|e| e.to_string())?;
            let mut f = vec![0i64; n + 2];
            f[1] = 1;
            f[n] = 1;
            ensure(fc.holds() && fc.f == f, || format!("{m}x{n} at {}: {:?}", i + 1, fc))?;
            count += 1;
        }
    }
    Ok(format!("{count} intervals"))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let a2 = CartanData::new('A', 2).unwrap();
    let b = btilde_w(&a2, &[0, 1, 0]).map_err(|e| e.to_string())?;
    ensure(b.ex == vec![2] && b.column(2) == Some(vec![1, -1, 0]), || {
        "A2 column".into()
    })?;
    // Reduced words of the longest element: 16 in A3, 2 in B2 and G2.
    let a3 = CartanData::new('A', 3).unwrap();
    ensure(
        reduced_words(&a3, 6).len() == 16 && reduced_words(&a3, 7).is_empty(),
        || "A3 word count".into(),
    )?;
    let b2 = CartanData::new('B', 2).unwrap();
    let g2 = CartanData::new('G', 2).unwrap();
    ensure(
        reduced_words(&b2, 4).len() == 2 && reduced_words(&g2, 6).len() == 2,
        || "B2/G2 word count".into(),
    )?;
    let mut total = 0;
    for (l, r) in [
        ('A', 1),
        ('A', 2),
        ('A', 3),
        ('A', 4),
        ('B', 2),
        ('B', 3),
        ('C', 3),
        ('D', 4),
        ('G', 2),
    ] {
        let c = CartanData::new(l, r).unwrap();
        let (count, bad) = verify_all_words(&c, 8).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || {
            format!("{l}{r}: {} failing words, first {:?}", bad.len(), bad[0])
        })?;
        total += count;
    }
    // The 2x2 quantum matrices as the Schubert cell of s2 s1 s3 s2 in A3.
    let word = [1, 0, 2, 1];
    let wd = WordData::new(&a3, &word).unwrap();
    let p = quantum_matrix_preset(2, 2).unwrap();
    let maps = match_indices(
        &btilde_w(&a3, &word).unwrap(),
        &wd.lambda(&a3),
        &quantum_matrix_btilde(2, 2),
        p.lambda(),
    );
    ensure(maps.contains(&(vec![3, 2, 1, 0], -1)), || {
        format!("index maps {maps:?}")
    })?;
    let el = t.elapsed();
    ensure(el < LIMIT_SCHUBERT, || format!("took {el:?}"))?;
    Ok(format!(
        "{total} words of length <= 8 in {el:.2?}; A3 to 2x2 via j -> 5 - j with q -> 1/q"
    ))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("quantum-matrix primes", criterion_1),
        ("u, pi, f data and normalization", criterion_2),
        ("exchange matrix equals closed form", criterion_3),
        ("exchange relation in the algebra", criterion_4),
        ("mutation property suite", criterion_5),
        ("chain law on 2x3", criterion_6),
        ("cluster-variable coverage on 3x3", criterion_7),
        ("interval mutation and leading-term identities", criterion_8),
        ("first-column formula", criterion_9),
        ("Schubert combinatorics", criterion_10),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        match res {
            Ok(note) => println!("[{:>2}] PASS {name}: {note} ({el:.2?})", i + 1),
            Err(e) => {
                all = false;
                println!("[{:>2}] FAIL {name}: {e} ({el:.2?})", i + 1);
            }
        }
    }
    // Structural statements are not computable; they stand on the checks above.
    println!(
        "[11] {} structural statements substituted by criteria 1-10",
        if all { "PASS" } else { "FAIL" }
    );
    if !all {
        std::process::exit(1);
    }
}
