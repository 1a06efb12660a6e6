//! Seeded generators of relevant L-parameters and standard triples.
//!
//! Case `i` draws from its own `ChaCha8` stream seeded with `seed + i`, so a
//! corpus is identical under every execution strategy.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lparam::{
    assemble, classify, new_lparameter, Block, GLnLParameter, GLnStandardTriple, GaloisTypeLabel, Mode, Segment,
};
use crate::par::{self, Execution};
use crate::rational::Rational;

const NAMES: [&str; 4] = ["triv", "chi", "rho", "sigma"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub cases: usize,
    /// Largest `n`; every case has `n ≤ n_max`.
    pub n_max: usize,
    /// Index `d` of each case is drawn from this list.
    pub ds: Vec<usize>,
    pub max_denominator: i64,
    /// Exponent numerators are drawn from `-max_numerator..=max_numerator`.
    pub max_numerator: i64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { seed: 0, cases: 10_000, n_max: 12, ds: vec![1, 2, 3], max_denominator: 6, max_numerator: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzCase {
    pub index: usize,
    pub parameter: GLnLParameter,
    pub triple: GLnStandardTriple,
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64))
}

fn exponent(rng: &mut (impl Rng + ?Sized), cfg: &FuzzConfig) -> Rational {
    let den = rng.gen_range(1..=cfg.max_denominator.max(1));
    let num = rng.gen_range(-cfg.max_numerator..=cfg.max_numerator);
    Rational::new(num, den)
}

/// Segments of total dimension `dim`, each of dimension divisible by `d`.
/// `dim` must be a multiple of `d`.
fn relevant_segments(
    rng: &mut impl Rng,
    dim: usize,
    d: usize,
    mut exp: impl FnMut(&mut dyn RngCore) -> Rational,
) -> Vec<Segment> {
    let mut left = dim / d;
    let mut out = Vec::new();
    while left > 0 {
        let size = d * rng.gen_range(1..=left);
        left -= size / d;
        let divisors: Vec<usize> = (1..=size).filter(|k| size.is_multiple_of(*k)).collect();
        let rho_dim = *divisors.choose(rng).expect("size is positive");
        let name = NAMES[rng.gen_range(0..NAMES.len())];
        out.push(Segment::new(size / rho_dim, GaloisTypeLabel::new(name, rho_dim), exp(rng)));
    }
    out
}

fn pick_d(rng: &mut impl Rng, cfg: &FuzzConfig) -> usize {
    let ds: Vec<usize> = cfg.ds.iter().copied().filter(|&d| d >= 1 && d <= cfg.n_max).collect();
    *ds.choose(rng).unwrap_or(&1)
}

/// A relevant parameter. Exponents repeat often enough to produce blocks
/// with several segments.
pub fn parameter(rng: &mut impl Rng, cfg: &FuzzConfig) -> GLnLParameter {
    let d = pick_d(rng, cfg);
    let n = d * rng.gen_range(1..=cfg.n_max / d);
    let mut pool: Vec<Rational> = Vec::new();
    let segments = relevant_segments(rng, n, d, |r| {
        if !pool.is_empty() && r.gen_bool(0.5) {
            pool[r.gen_range(0..pool.len())]
        } else if r.gen_bool(0.2) {
            Rational::from_integer(0)
        } else {
            let e = exponent(r, cfg);
            pool.push(e);
            e
        }
    });
    new_lparameter(n, d, segments).expect("generator respects the dimension identity")
}

/// A valid standard triple in canonical form.
pub fn triple(rng: &mut impl Rng, cfg: &FuzzConfig) -> GLnStandardTriple {
    let d = pick_d(rng, cfg);
    let mut units = rng.gen_range(1..=cfg.n_max / d);
    let mut ms = Vec::new();
    while units > 0 {
        let m = rng.gen_range(1..=units);
        ms.push(m);
        units -= m;
    }
    let mut betas: Vec<Rational> = Vec::new();
    while betas.len() < ms.len() {
        let b = exponent(rng, cfg);
        if !betas.contains(&b) {
            betas.push(b);
        }
    }
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let blocks = ms
        .into_iter()
        .zip(betas)
        .map(|(m, beta)| {
            let tempered = relevant_segments(rng, m * d, d, |_| Rational::from_integer(0));
            Block { m, tempered, beta }
        })
        .collect();
    GLnStandardTriple::new(d, blocks).expect("generator respects the triple invariants")
}

pub fn case(cfg: &FuzzConfig, index: usize) -> FuzzCase {
    let mut rng = rng_for(cfg.seed, index);
    let parameter = parameter(&mut rng, cfg);
    let triple = triple(&mut rng, cfg);
    FuzzCase { index, parameter, triple }
}

pub fn corpus(cfg: &FuzzConfig, exec: Execution) -> Vec<FuzzCase> {
    par::map_range(exec, cfg.cases, |i| case(cfg, i))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripFailure {
    pub index: usize,
    pub mode: Mode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<RoundTripFailure>,
}

/// `assemble ∘ classify = id` on parameters and `classify ∘ assemble = id`
/// on triples, in both modes.
pub fn check_case(c: &FuzzCase) -> Vec<RoundTripFailure> {
    let mut out = Vec::new();
    for mode in [Mode::Quotient, Mode::Sub] {
        let fail = |message: String| RoundTripFailure { index: c.index, mode, message };
        match classify(&c.parameter, mode).and_then(|t| assemble(&t, mode)) {
            Ok(back) if back == c.parameter => {}
            Ok(back) => out.push(fail(format!("parameter {} came back as {}", c.parameter, back))),
            Err(e) => out.push(fail(format!("parameter {}: {e}", c.parameter))),
        }
        match assemble(&c.triple, mode).and_then(|p| classify(&p, mode)) {
            Ok(back) if back == c.triple => {}
            Ok(back) => out.push(fail(format!("triple {} came back as {}", c.triple, back))),
            Err(e) => out.push(fail(format!("triple {}: {e}", c.triple))),
        }
    }
    out
}

pub fn roundtrip(cfg: &FuzzConfig, exec: Execution) -> RoundTripReport {
    let per_case = par::map_range(exec, cfg.cases, |i| check_case(&case(cfg, i)));
    let passed = per_case.iter().filter(|f| f.is_empty()).count();
    RoundTripReport { seed: cfg.seed, cases: cfg.cases, passed, failures: per_case.into_iter().flatten().collect() }
}
