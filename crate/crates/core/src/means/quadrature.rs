//! Adaptive Gauss–Kronrod quadrature over the circle.
//!
//! Panels are seeded at the evaluator's feature angles (nearby zeros,
//! boundary singularities) and bisected globally, worst panel first, so
//! refinement proceeds geometrically toward each logarithmic singularity.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Maximum bisection depth below the initial panel width.
pub const MAX_DEPTH: u32 = 48;
const MAX_PANELS: usize = 4_000_000;
const INITIAL_PANELS: usize = 64;

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    depth: u32,
    est: Vec<f64>,
    err: Vec<f64>,
}

struct Scored {
    score: f64,
    index: usize,
}

impl PartialEq for Scored {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Scored {}
impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Scored {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then(other.index.cmp(&self.index))
    }
}

/// Integrals over `[0, 2π)` of a vector-valued integrand.
#[derive(Debug, Clone)]
pub struct Integrals {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub panels: usize,
}

pub(crate) fn gauss_kronrod<F>(f: &F, a: f64, b: f64, dim: usize) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(f64, &mut [f64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for (k, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let nodes: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &sign in nodes {
            f(center + sign * half * x, &mut buf);
            for c in 0..dim {
                kronrod[c] += w * buf[c];
                if k % 2 == 1 {
                    gauss[c] += WG[k / 2] * buf[c];
                }
            }
        }
    }
    let est: Vec<f64> = kronrod.iter().map(|v| v * half).collect();
    let err: Vec<f64> = kronrod
        .iter()
        .zip(&gauss)
        .map(|(k, g)| ((k - g) * half).abs())
        .collect();
    (est, err)
}

/// Integrates `f` (writing `dim` components) over the circle.
///
/// `targets(totals)` returns the admissible absolute error of every
/// component given the current estimates; refinement stops once each
/// component's summed error estimate is within its target.
pub fn integrate_circle<F, T>(
    f: &F,
    dim: usize,
    breakpoints: &[f64],
    targets: T,
) -> Result<Integrals>
where
    F: Fn(f64, &mut [f64]),
    T: Fn(&[f64]) -> Vec<f64>,
{
    let mut edges: Vec<f64> = breakpoints
        .iter()
        .map(|&b| crate::angle::normalize(b))
        .collect();
    edges.push(0.0);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    edges.push(TAU);
    let coarse = TAU / INITIAL_PANELS as f64;
    let min_width = coarse * (-f64::from(MAX_DEPTH)).exp2();

    let mut panels: Vec<Panel> = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        let pieces = ((b - a) / coarse).ceil().max(1.0) as usize;
        let h = (b - a) / pieces as f64;
        for i in 0..pieces {
            let lo = a + h * i as f64;
            let hi = if i + 1 == pieces {
                b
            } else {
                a + h * (i + 1) as f64
            };
            let (est, err) = gauss_kronrod(f, lo, hi, dim);
            panels.push(Panel {
                a: lo,
                b: hi,
                depth: 0,
                est,
                err,
            });
        }
    }

    let mut total_est = vec![0.0; dim];
    let mut total_err = vec![0.0; dim];
    for p in &panels {
        for c in 0..dim {
            total_est[c] += p.est[c];
            total_err[c] += p.err[c];
        }
    }
    let score = |p: &Panel, tgt: &[f64]| {
        (0..dim)
            .map(|c| p.err[c] / tgt[c].max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    };
    let mut tgt = targets(&total_est);
    let mut heap: BinaryHeap<Scored> = panels
        .iter()
        .enumerate()
        .map(|(index, p)| Scored {
            score: score(p, &tgt),
            index,
        })
        .collect();

    let mut iterations = 0usize;
    loop {
        if iterations.is_multiple_of(1024) {
            // re-accumulate to stop drift in the running totals
            for c in 0..dim {
                total_est[c] = panels.iter().map(|p| p.est[c]).sum();
                total_err[c] = panels.iter().map(|p| p.err[c]).sum();
            }
        }
        iterations += 1;
        tgt = targets(&total_est);
        if (0..dim).all(|c| total_err[c] <= tgt[c]) {
            break;
        }
        let Some(Scored { index, .. }) = heap.pop() else {
            break;
        };
        let parent = panels[index].clone();
        let mid = 0.5 * (parent.a + parent.b);
        if parent.b - parent.a < 2.0 * min_width || parent.depth >= MAX_DEPTH {
            return Err(Error::Quadrature(format!(
                "refinement depth cap reached near angle {mid}"
            )));
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Quadrature("panel budget exhausted".into()));
        }
        let (le, lr) = gauss_kronrod(f, parent.a, mid, dim);
        let (re, rr) = gauss_kronrod(f, mid, parent.b, dim);
        for c in 0..dim {
            total_est[c] += le[c] + re[c] - parent.est[c];
            total_err[c] += lr[c] + rr[c] - parent.err[c];
        }
        panels[index] = Panel {
            a: parent.a,
            b: mid,
            depth: parent.depth + 1,
            est: le,
            err: lr,
        };
        panels.push(Panel {
            a: mid,
            b: parent.b,
            depth: parent.depth + 1,
            est: re,
            err: rr,
        });
        let right = panels.len() - 1;
        heap.push(Scored {
            score: score(&panels[index], &tgt),
            index,
        });
        heap.push(Scored {
            score: score(&panels[right], &tgt),
            index: right,
        });
    }

    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut values = Vec::with_capacity(dim);
    let mut errors = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut v = CompensatedSum::new();
        let mut e = CompensatedSum::new();
        for p in &panels {
            v.add(p.est[c]);
            e.add(p.err[c]);
        }
        values.push(v.value());
        errors.push(e.value());
    }
    Ok(Integrals {
        values,
        errors,
        panels: panels.len(),
    })
}
