//! The verification suite behind the `verify` command: every structural
//! identity the library can check on one algebra, each reported separately.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exchangesolver::{btilde_for_tau, d_per_index, first_column_crosscheck, quantum_matrix_btilde};
use crate::mutation::{mutate_seed, Seed};
use crate::orealgebra::{quantum_minor, Presentation};
use crate::primeseq::{
    chain_pairs, check_lambda_star, check_pi_general, check_pi_recursion, check_quasi_commutation, check_u_product,
    rescale_generators, u_element, u_element_alt, Rescaling,
};
use crate::schubertdata::{verify_uw_compat, CartanData};
use crate::xicombinatorics::{
    check_frame_commutation, check_interval_mutation, frame_for_tau, gamma_seeds, generator_coverage, verify_chain,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<String>) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Runs every check over `(i, m)` pairs in parallel and joins the failures.
fn all_pairs(pairs: &[(usize, usize)], f: impl Fn(usize, usize) -> Result<()> + Sync) -> Result<String> {
    let errs: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(i, m)| f(i, m).err().map(|e| e.to_string()))
        .collect();
    if errs.is_empty() {
        Ok(format!("{} cases", pairs.len()))
    } else {
        Err(Error::Check(errs.join("; ")))
    }
}

/// The full suite on a presentation. `matrix` names the `O_q(M_{m,n})`
/// shape when the presentation is that preset, enabling closed-form
/// comparisons.
pub fn verify_presentation(p: &Presentation, rng_seed: u64, matrix: Option<(usize, usize)>) -> Report {
    let mut rep = Report::default();
    rep.run("associativity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        p.check_associativity(&mut rng, 64, 3)
            .map(|_| "64 random triples".into())
    });
    let resc = match rescale_generators(p) {
        Ok(r) => r,
        Err(e) => {
            rep.checks.push(CheckResult {
                name: "primes and normalization".into(),
                passed: false,
                detail: e.to_string(),
            });
            return rep;
        }
    };
    rep.run("primes and normalization", || {
        Ok(format!(
            "rank {}, {} exchangeable, rescaled: {}",
            resc.primes.eta.rank(),
            resc.primes.eta.ex().len(),
            !resc.gamma.iter().all(|g| g.is_one())
        ))
    });
    suite_on_normalized(&mut rep, p, &resc, matrix);
    rep
}

fn suite_on_normalized(rep: &mut Report, original: &Presentation, resc: &Rescaling, matrix: Option<(usize, usize)>) {
    let p = &resc.presentation;
    let iv = &resc.intervals;
    let eta = &resc.primes.eta;
    let n = p.n();
    rep.run("quasi-commutation of primes", || {
        check_quasi_commutation(p, &resc.primes).map(|_| String::new())
    });
    rep.run("leading terms of primes", || {
        for (k, y) in resc.primes.y.iter().enumerate() {
            let (f, c) = y.leading().ok_or(Error::Check(format!("y_{} is zero", k + 1)))?;
            if f.to_i64() != eta.ebar(k) || !c.is_one() {
                return Err(Error::Check(format!("lt(y_{}) is not x^ebar", k + 1)));
            }
        }
        Ok(format!("{n} primes"))
    });
    if let Some((m, nn)) = matrix {
        rep.run("primes are solid quantum minors", || {
            for k in 0..n {
                let (r, c) = (k / nn, k % nn);
                let l = r.min(c);
                let rows: Vec<usize> = (r - l..=r).collect();
                let cols: Vec<usize> = (c - l..=c).collect();
                if resc.primes.y[k] != quantum_minor(p, m, nn, &rows, &cols)? {
                    return Err(Error::Check(format!(
                        "y_{} is not the solid minor ending at ({}, {})",
                        k + 1,
                        r + 1,
                        c + 1
                    )));
                }
            }
            Ok(format!("{n} minors"))
        });
    }
    let pairs = chain_pairs(eta);
    let longer: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(i, m)| eta.s_pow(i, m + 1).is_some())
        .collect();
    rep.run("two forms of u agree", || {
        all_pairs(&pairs, |i, m| {
            if u_element(p, iv, i, m)? == u_element_alt(p, iv, i, m)? {
                Ok(())
            } else {
                Err(Error::Check(format!("u differs at ({}, {m})", i + 1)))
            }
        })
    });
    rep.run("lambda* from u data", || {
        all_pairs(&pairs, |i, m| if m == 1 { check_lambda_star(p, iv, i) } else { Ok(()) })
    });
    rep.run("pi recursion", || {
        all_pairs(&longer, |i, m| check_pi_recursion(p, iv, i, m))
    });
    rep.run("pi after normalization", || {
        all_pairs(&pairs, |i, m| check_pi_general(p, iv, i, m))
    });
    rep.run("leading-term product identity", || {
        all_pairs(&longer, |i, m| check_u_product(p, iv, i, m))
    });
    rep.run("interval mutation identity", || {
        all_pairs(&pairs, |i, m| check_interval_mutation(p, iv, i, m))
    });
    let d = match d_per_index(p, eta) {
        Ok(d) => d,
        Err(e) => {
            rep.checks.push(CheckResult {
                name: "level-set symmetrizer".into(),
                passed: false,
                detail: e.to_string(),
            });
            return;
        }
    };
    let initial =
        frame_for_tau(p, iv, &(0..n).collect::<Vec<_>>()).and_then(|f| btilde_for_tau(p, eta, &f, &d).map(|b| (f, b)));
    rep.run("exchange matrix", || {
        let (_, b) = initial.as_ref().map_err(Clone::clone)?;
        if let Some((m, nn)) = matrix {
            if b != &quantum_matrix_btilde(m, nn) {
                return Err(Error::Check("solver and closed form differ".into()));
            }
            return Ok(format!("{} columns, equal to the closed form", b.ex.len()));
        }
        Ok(format!("{} columns", b.ex.len()))
    });
    rep.run("one-step mutations stay in the algebra", || {
        let (f, b) = initial.as_ref().map_err(Clone::clone)?;
        let seed = Seed {
            frame: f.toric(),
            b: b.clone(),
        };
        let errs: Vec<String> =
            b.ex.par_iter()
                .filter_map(|&k| {
                    let res = mutate_seed(p, &seed, k).and_then(|mu| {
                        if mu.frame.images[k].terms.values().any(|c| !c.is_laurent()) {
                            return Err(Error::Check(format!(
                                "mutation at {} has non-Laurent coefficients",
                                k + 1
                            )));
                        }
                        let back = mutate_seed(p, &mu, k)?;
                        if back != seed {
                            return Err(Error::Check(format!("mutation at {} is not involutive", k + 1)));
                        }
                        Ok(())
                    });
                    res.err().map(|e| e.to_string())
                })
                .collect();
        if errs.is_empty() {
            Ok(format!("{} indices", b.ex.len()))
        } else {
            Err(Error::Check(errs.join("; ")))
        }
    });
    rep.run("first-column formula", || {
        let errs: Vec<String> = eta
            .ex()
            .par_iter()
            .filter_map(|&i| match first_column_crosscheck(original, eta, i) {
                Ok(fc) if fc.holds() => None,
                Ok(fc) => Some(format!(
                    "[{}, {}]: f {:?}, formula {:?}",
                    i + 1,
                    fc.top + 1,
                    fc.f,
                    fc.formula
                )),
                Err(e) => Some(e.to_string()),
            })
            .collect();
        if errs.is_empty() {
            Ok(format!("{} intervals", eta.ex().len()))
        } else {
            Err(Error::Check(errs.join("; ")))
        }
    });
    let seeds = gamma_seeds(p, iv, &d);
    rep.run("frame quasi-commutation", || {
        let s = seeds.as_ref().map_err(Clone::clone)?;
        for (f, _) in s {
            check_frame_commutation(p, f)?;
        }
        Ok(format!("{} frames", s.len()))
    });
    rep.run("chain law", || {
        let s = seeds.as_ref().map_err(Clone::clone)?;
        let steps = verify_chain(p, s)?;
        let muts = steps.iter().filter(|s| s.mutated_at.is_some()).count();
        Ok(format!("{} steps, {muts} mutations", steps.len()))
    });
    rep.run("generator coverage", || {
        let s = seeds.as_ref().map_err(Clone::clone)?;
        let cov = generator_coverage(p, s);
        match cov.iter().position(Option::is_none) {
            Some(k) => Err(Error::Check(format!(
                "x_{} is not a cluster variable of the chain",
                k + 1
            ))),
            None => Ok(format!("{n} generators")),
        }
    });
}

pub fn verify_schubert(c: &CartanData, word: &[usize]) -> Report {
    let mut rep = Report::default();
    rep.run("schubert compatibility", || {
        let r = verify_uw_compat(c, word)?;
        if r.passed() {
            Ok(format!("{} columns", r.btilde.ex.len()))
        } else {
            Err(Error::Check(format!(
                "scalar failures {:?}, grading failures {:?}, skew-symmetrizable {}",
                r.scalar_failures, r.grading_failures, r.skew_symmetrizable
            )))
        }
    });
    rep
}
