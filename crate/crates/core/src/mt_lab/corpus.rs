//! Seeded test functions: Gaussian bumps, Hermite-Gaussian products and
//! radial rings, all effectively compactly supported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::PlaneFn;

/// One summand of a corpus function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Term {
    /// `A exp(-|x - c|²/(2w²))`.
    Gaussian { center: [f64; 2], width: f64, amplitude: f64 },
    /// `A H_m(x/s) H_n(y/s) exp(-|x|²/(2s²))` with physicists' Hermite polynomials.
    Hermite { m: u32, n: u32, scale: f64, amplitude: f64 },
    /// `A exp(-q²/2)` with `q = (|x|² - R²)/w²`.
    Ring { radius: f64, width: f64, amplitude: f64 },
}

/// `(H_n(x), H_n'(x))`.
fn hermite(n: u32, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    (cur, 2.0 * n as f64 * prev)
}

impl Term {
    fn eval(&self, x: [f64; 2]) -> (f64, [f64; 2]) {
        match *self {
            Term::Gaussian { center, width, amplitude } => {
                let d = [x[0] - center[0], x[1] - center[1]];
                let k = 0.5 / (width * width);
                let e = amplitude * (-k * (d[0] * d[0] + d[1] * d[1])).exp();
                (e, [-2.0 * k * d[0] * e, -2.0 * k * d[1] * e])
            }
            Term::Hermite { m, n, scale, amplitude } => {
                let (u, v) = (x[0] / scale, x[1] / scale);
                let (hm, dhm) = hermite(m, u);
                let (hn, dhn) = hermite(n, v);
                let e = amplitude * (-0.5 * (u * u + v * v)).exp();
                if e == 0.0 {
                    return (0.0, [0.0, 0.0]);
                }
                let value = hm * hn * e;
                let gx = (dhm - u * hm) * hn * e / scale;
                let gy = hm * (dhn - v * hn) * e / scale;
                (value, [gx, gy])
            }
            Term::Ring { radius, width, amplitude } => {
                let w2 = width * width;
                let q = (x[0] * x[0] + x[1] * x[1] - radius * radius) / w2;
                let e = amplitude * (-0.5 * q * q).exp();
                let g = -q * e * 2.0 / w2;
                (e, [g * x[0], g * x[1]])
            }
        }
    }

    fn is_radial(&self) -> bool {
        match *self {
            Term::Gaussian { center, .. } => center == [0.0, 0.0],
            Term::Hermite { m, n, .. } => m == 0 && n == 0,
            Term::Ring { .. } => true,
        }
    }
}

/// A finite sum of [`Term`]s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusFn {
    pub id: usize,
    pub terms: Vec<Term>,
}

impl CorpusFn {
    /// Radially symmetric about the origin.
    pub fn is_radial(&self) -> bool {
        self.terms.iter().all(Term::is_radial)
    }
}

impl PlaneFn for CorpusFn {
    fn value(&self, x: [f64; 2]) -> f64 {
        self.terms.iter().map(|t| t.eval(x).0).sum()
    }

    fn gradient(&self, x: [f64; 2]) -> [f64; 2] {
        self.terms.iter().fold([0.0, 0.0], |acc, t| {
            let g = t.eval(x).1;
            [acc[0] + g[0], acc[1] + g[1]]
        })
    }
}

fn random_term(rng: &mut ChaCha8Rng) -> Term {
    if rng.gen_bool(0.6) {
        Term::Gaussian {
            center: [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)],
            width: rng.gen_range(0.3..1.0),
            amplitude: rng.gen_range(-2.0..2.0),
        }
    } else {
        let m = rng.gen_range(0..=3);
        Term::Hermite {
            m,
            n: rng.gen_range(0..=3 - m),
            scale: rng.gen_range(0.5..1.2),
            amplitude: rng.gen_range(-1.0..1.0),
        }
    }
}

fn random_radial_term(rng: &mut ChaCha8Rng) -> Term {
    if rng.gen_bool(0.5) {
        Term::Gaussian { center: [0.0, 0.0], width: rng.gen_range(0.3..1.5), amplitude: rng.gen_range(-2.0..2.0) }
    } else {
        Term::Ring {
            radius: rng.gen_range(0.3..2.0),
            width: rng.gen_range(0.4..1.2),
            amplitude: rng.gen_range(-2.0..2.0),
        }
    }
}

/// `n` functions of one to three terms each, determined by `seed`.
pub fn corpus(seed: u64, n: usize) -> Vec<CorpusFn> {
    build(seed, n, random_term)
}

/// `n` radially symmetric functions, determined by `seed`.
pub fn radial_corpus(seed: u64, n: usize) -> Vec<CorpusFn> {
    build(seed, n, random_radial_term)
}

fn build(seed: u64, n: usize, term: fn(&mut ChaCha8Rng) -> Term) -> Vec<CorpusFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|id| {
            let k = rng.gen_range(1..=3);
            CorpusFn { id, terms: (0..k).map(|_| term(&mut rng)).collect() }
        })
        .collect()
}
