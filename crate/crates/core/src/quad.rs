//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

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
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    pub evals: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Seg {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Seg {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Seg {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Integrate `f` over `[a, b]` until the estimated error drops below
/// `max(abs_tol, rel_tol·|value|)` or `max_segments` bisections are spent.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult {
    if a == b {
        return QuadResult { value: 0.0, error: 0.0, converged: true, evals: 0 };
    }
    let (v, e) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Seg { a, b, val: v, err: e });
    let mut total = v;
    let mut err = e;
    let mut evals = 15;
    let mut segs = 1;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if segs >= max_segments {
            return QuadResult { value: total, error: err, converged: false, evals };
        }
        let s = heap.pop().expect("heap never empty");
        let m = 0.5 * (s.a + s.b);
        if m <= s.a || m >= s.b {
            // Interval collapsed to machine resolution.
            heap.push(s);
            return QuadResult { value: total, error: err, converged: false, evals };
        }
        let (v1, e1) = gk15(&f, s.a, m);
        let (v2, e2) = gk15(&f, m, s.b);
        evals += 30;
        segs += 1;
        total += v1 + v2 - s.val;
        err += e1 + e2 - s.err;
        heap.push(Seg { a: s.a, b: m, val: v1, err: e1 });
        heap.push(Seg { a: m, b: s.b, val: v2, err: e2 });
    }
    // Re-sum to shed the drift from incremental updates.
    let mut vs: Vec<&Seg> = heap.iter().collect();
    vs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = crate::kahan::ksum(vs.iter().map(|s| s.val));
    let error = vs.iter().map(|s| s.err).sum();
    QuadResult { value, error, converged: true, evals }
}

/// Integrate over consecutive pieces `[p_0, p_1], [p_1, p_2], ...`, splitting
/// the tolerance evenly. Useful when the integrand has known kinks.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult {
    let k = points.len().saturating_sub(1).max(1) as f64;
    let mut out = QuadResult { value: 0.0, error: 0.0, converged: true, evals: 0 };
    let mut acc = crate::kahan::KahanSum::new();
    for w in points.windows(2) {
        let r = integrate(&f, w[0], w[1], abs_tol / k, rel_tol, max_segments);
        acc.add(r.value);
        out.error += r.error;
        out.evals += r.evals;
        out.converged &= r.converged;
    }
    out.value = acc.value();
    out
}
