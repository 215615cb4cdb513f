//! Floating-point mirror of the exact checks: adaptive Gauss–Kronrod
//! quadrature of weighted inner products and numeric boundary limits at
//! infinite endpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::bochner::{ClassificationRecord, Endpoint};
use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::weight::{Direction, WeightForm};

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Maximum number of integrand evaluations per integral.
    pub budget: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { budget: DEFAULT_BUDGET }
    }
}

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
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: `(kronrod, |kronrod - gauss|, ∫|f|)`.
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let (f1, f2) = (f(c - dx), f(c + dx));
        k += WGK[i] * (f1 + f2);
        abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            g += WG[i / 2] * (f1 + f2);
        }
    }
    (k * h, ((k - g) * h).abs(), abs * h.abs())
}

struct Panel {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive bisection over several pieces, each integrated in its
/// own variable on `[a, b]`.
fn adaptive(
    pieces: &[(f64, f64, usize)],
    f: &dyn Fn(usize, f64) -> f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let mut settled = (0.0, 0.0, 0.0);
    for (idx, &(a, b, subdivisions)) in pieces.iter().enumerate() {
        let g = |x: f64| f(idx, x);
        let n = subdivisions.max(1);
        for s in 0..n {
            let lo = a + (b - a) * s as f64 / n as f64;
            let hi = a + (b - a) * (s + 1) as f64 / n as f64;
            let (value, error, abs) = gk15(&g, lo, hi);
            evaluations += 15;
            heap.push(Panel {
                piece: idx,
                a: lo,
                b: hi,
                value,
                error,
                abs,
            });
        }
    }
    loop {
        let (mut value, mut error, mut abs) = settled;
        for p in heap.iter() {
            value += p.value;
            error += p.error;
            abs += p.abs;
        }
        let floor = 50.0 * f64::EPSILON * abs;
        if error <= abs_tol.max(floor) || heap.is_empty() {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        if evaluations + 30 > budget {
            return Err(Error::BudgetExceeded {
                budget,
                estimate: error,
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.a + worst.b);
        let roundoff = worst.error <= 100.0 * f64::EPSILON * worst.abs;
        if roundoff || !(mid > worst.a && mid < worst.b) {
            settled.0 += worst.value;
            settled.1 += worst.error;
            settled.2 += worst.abs;
            continue;
        }
        let g = |x: f64| f(worst.piece, x);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, abs) = gk15(&g, lo, hi);
            heap.push(Panel {
                piece: worst.piece,
                a: lo,
                b: hi,
                value,
                error,
                abs,
            });
        }
        evaluations += 30;
    }
}

/// How a piece of the integration range is parametrised.
#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `x = endpoint + sign·u^k`, `u ∈ [0, u_max]`; `factor` indexes the
    /// power factor sitting at the endpoint.
    Endpoint {
        endpoint: f64,
        sign: f64,
        k: i32,
        factor: Option<usize>,
        u_max: f64,
    },
    Plain {
        a: f64,
        b: f64,
    },
}

impl Piece {
    fn range(&self) -> (f64, f64) {
        match *self {
            Piece::Endpoint { u_max, .. } => (0.0, u_max),
            Piece::Plain { a, b } => (a, b),
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn to_f64_coeffs(p: &Polynomial) -> Vec<f64> {
    p.coeffs().iter().map(Rational::to_f64).collect()
}

/// Coefficients split as `hi + lo` doubles, evaluated by compensated
/// Horner: the result is as accurate as double-double evaluation followed by
/// one rounding.
struct DdPoly {
    hi: Vec<f64>,
    lo: Vec<f64>,
}

impl DdPoly {
    fn new(p: &Polynomial) -> Self {
        let (hi, lo) = p
            .coeffs()
            .iter()
            .map(|c| {
                let h = c.to_f64();
                let rest = Rational::from_f64_exact(h).map_or(0.0, |h| (c - &h).to_f64());
                (h, rest)
            })
            .unzip();
        DdPoly { hi, lo }
    }

    fn eval(&self, x: f64) -> f64 {
        let (mut s, mut e) = (0.0f64, 0.0f64);
        for (h, l) in self.hi.iter().zip(&self.lo).rev() {
            // (s, e) * x
            let p = s * x;
            let perr = s.mul_add(x, -p);
            let plo = e.mul_add(x, perr);
            // + (h, l)
            let sum = p + h;
            let bb = sum - p;
            let serr = (p - (sum - bb)) + (h - bb);
            let lo = plo + serr + l;
            s = sum + lo;
            e = lo - (s - sum);
        }
        s + e
    }
}

/// `ln |w·poly|` bound at `x` used for truncation.
fn log_envelope(w: &WeightForm, abs_coeffs: &[f64], x: f64) -> f64 {
    let poly = abs_coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * x.abs().powi(k as i32))
        .sum::<f64>()
        .max(1.0);
    w.ln_eval_f64(x, None) + poly.ln()
}

/// Distance from `from` in direction `dir` beyond which the envelope stays
/// below `target`: bracketed by doubling, then bisected.
fn truncation_point(w: &WeightForm, abs_coeffs: &[f64], from: f64, dir: f64, target: f64) -> Result<f64> {
    let env = |t: f64| log_envelope(w, abs_coeffs, from + dir * t);
    let below = |t: f64| env(t) < target && env(2.0 * t) < env(t);
    let mut t = 1.0;
    let mut prev = 0.0;
    for _ in 0..64 {
        if below(t) {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if below(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(from + dir * hi);
        }
        prev = t;
        t *= 2.0;
    }
    Err(Error::PreconditionViolation(format!(
        "weight {w} does not decay in the {} direction",
        if dir > 0.0 { "+inf" } else { "-inf" }
    )))
}

/// Real critical points of `ln w` (zeros of the numerator of its
/// derivative, degree ≤ 2).
fn critical_points(w: &WeightForm) -> Vec<f64> {
    let num = w.log_derivative().num().clone();
    let c = to_f64_coeffs(&num);
    match num.deg() {
        Some(1) => vec![-c[0] / c[1]],
        Some(2) => {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            if disc < 0.0 {
                Vec::new()
            } else {
                let s = disc.sqrt();
                vec![(-c[1] - s) / (2.0 * c[2]), (-c[1] + s) / (2.0 * c[2])]
            }
        }
        _ => Vec::new(),
    }
}

/// Exponent `k` of the substitution `x = e ± u^k` at an endpoint where the
/// weight behaves like `|x - e|^s`: `k` is the denominator of `s + 1`
/// (at least 2), which makes the transformed integrand smooth.
fn substitution_power(s: &Rational) -> i32 {
    let d: i32 = (s + &Rational::one()).denom().try_into().unwrap_or(2);
    d.max(2)
}

struct Layout {
    pieces: Vec<Piece>,
}

fn endpoint_piece(w: &WeightForm, e: &Rational, sign: f64, length: f64) -> Piece {
    let s = w.exponent_at(e);
    let k = substitution_power(&s);
    let factor = w
        .power_factors
        .iter()
        .position(|f| &f.root == e && !f.exponent.is_zero());
    Piece::Endpoint {
        endpoint: e.to_f64(),
        sign,
        k,
        factor,
        u_max: length.powf(1.0 / k as f64),
    }
}

fn plain_pieces(a: f64, b: f64, breaks: &[f64]) -> Vec<Piece> {
    let mut pts = vec![a];
    pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.windows(2)
        .filter(|p| p[1] > p[0])
        .map(|p| Piece::Plain { a: p[0], b: p[1] })
        .collect()
}

fn layout(rec: &ClassificationRecord, w: &WeightForm, abs_coeffs: &[f64], ln_target: f64) -> Result<Layout> {
    let crit = critical_points(w);
    let inside = |x: f64| {
        let lo_ok = rec.interval.lo.finite().is_none_or(|l| x > l.to_f64());
        let hi_ok = rec.interval.hi.finite().is_none_or(|h| x < h.to_f64());
        lo_ok && hi_ok
    };
    let crit: Vec<f64> = crit.into_iter().filter(|&x| inside(x)).collect();
    let peak = |default: f64| {
        crit.iter()
            .copied()
            .chain(std::iter::once(default))
            .max_by(|a, b| w.ln_eval_f64(*a, None).total_cmp(&w.ln_eval_f64(*b, None)))
            .unwrap_or(default)
    };
    let pieces = match (&rec.interval.lo, &rec.interval.hi) {
        (Endpoint::Finite(lo), Endpoint::Finite(hi)) => {
            let half = 0.5 * (hi.to_f64() - lo.to_f64());
            vec![endpoint_piece(w, lo, 1.0, half), endpoint_piece(w, hi, -1.0, half)]
        }
        (Endpoint::Finite(lo), Endpoint::PosInfinity) => {
            let l = lo.to_f64();
            let from = peak(l + 1.0).max(l + 1.0);
            let cut = truncation_point(w, abs_coeffs, from, 1.0, ln_target)?;
            let mut v = vec![endpoint_piece(w, lo, 1.0, 1.0)];
            v.extend(plain_pieces(l + 1.0, cut, &crit));
            v
        }
        (Endpoint::NegInfinity, Endpoint::Finite(hi)) => {
            let h = hi.to_f64();
            let from = peak(h - 1.0).min(h - 1.0);
            let cut = truncation_point(w, abs_coeffs, from, -1.0, ln_target)?;
            let mut v = plain_pieces(cut, h - 1.0, &crit);
            v.push(endpoint_piece(w, hi, -1.0, 1.0));
            v
        }
        (Endpoint::NegInfinity, Endpoint::PosInfinity) => {
            let from = peak(0.0);
            let left = truncation_point(w, abs_coeffs, from, -1.0, ln_target)?;
            let right = truncation_point(w, abs_coeffs, from, 1.0, ln_target)?;
            plain_pieces(left, right, &[from])
        }
        _ => {
            return Err(Error::PreconditionViolation(format!(
                "malformed interval {}",
                rec.interval
            )))
        }
    };
    Ok(Layout { pieces })
}

/// `∫ w·poly` over the record's interval.
fn integrate(
    rec: &ClassificationRecord,
    w: &WeightForm,
    factors: &[&Polynomial],
    abs_tol: f64,
    ln_target: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let product = factors.iter().fold(Polynomial::one(), |acc, f| &acc * *f);
    let abs_coeffs: Vec<f64> = to_f64_coeffs(&product).iter().map(|c| c.abs()).collect();
    let evals: Vec<DdPoly> = factors.iter().map(|f| DdPoly::new(f)).collect();
    let poly_at = |x: f64| evals.iter().map(|p| p.eval(x)).product::<f64>();
    let lay = layout(rec, w, &abs_coeffs, ln_target)?;
    let f = |idx: usize, u: f64| -> f64 {
        match lay.pieces[idx] {
            Piece::Endpoint {
                endpoint,
                sign,
                k,
                factor,
                ..
            } => {
                let dist = u.powi(k);
                let x = endpoint + sign * dist;
                let ln_w = w.ln_eval_f64(x, factor.map(|i| (i, dist)));
                let jac = k as f64 * u.powi(k - 1);
                ln_w.exp() * poly_at(x) * jac
            }
            Piece::Plain { .. } => w.ln_eval_f64(u, None).exp() * poly_at(u),
        }
    };
    let pieces: Vec<(f64, f64, usize)> = lay
        .pieces
        .iter()
        .map(|p| {
            let (a, b) = p.range();
            let n = match p {
                Piece::Plain { .. } => 8,
                Piece::Endpoint { .. } => 2,
            };
            (a, b, n)
        })
        .collect();
    adaptive(&pieces, &f, abs_tol, opts.budget)
}

/// `∫ p P Q / ∫ p` over the record's interval, with the default budget.
pub fn quad_inner_product(rec: &ClassificationRecord, p: &Polynomial, q: &Polynomial, tol: f64) -> Result<QuadResult> {
    quad_inner_product_with(rec, p, q, tol, &QuadOptions::default())
}

pub fn quad_inner_product_with(
    rec: &ClassificationRecord,
    p: &Polynomial,
    q: &Polynomial,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    rec.require_admissible()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::PreconditionViolation(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let w = rec
        .weight
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolation("record carries no weight".into()))?;

    // The mass sets the scale for both the truncation and the tolerance.
    let ref_ln = reference_log_weight(rec, w);
    let ln_target = (tol * 1e-3).ln() + ref_ln - 1e3f64.ln();
    let mass = integrate(rec, w, &[], 0.0, ln_target, opts)
        .or_else(|_| integrate(rec, w, &[], tol * 1e-3 * ref_ln.exp(), ln_target, opts))?;
    if mass.value.is_nan() || mass.value <= 0.0 {
        return Err(Error::PreconditionViolation("weight integral is not positive".into()));
    }
    if *p == Polynomial::one() && *q == Polynomial::one() {
        return Ok(QuadResult {
            value: 1.0,
            error_estimate: mass.error_estimate / mass.value,
            evaluations: mass.evaluations,
        });
    }
    let ln_target = (tol * 1e-3 * mass.value).ln();
    let num = integrate(rec, w, &[p, q], 0.1 * tol * mass.value, ln_target, opts)?;
    let value = num.value / mass.value;
    Ok(QuadResult {
        value,
        error_estimate: num.error_estimate / mass.value + value.abs() * mass.error_estimate / mass.value,
        evaluations: num.evaluations + mass.evaluations,
    })
}

/// `ln w` at its largest critical point inside the interval, or next to
/// the finite end.
fn reference_log_weight(rec: &ClassificationRecord, w: &WeightForm) -> f64 {
    let mut candidates = critical_points(w);
    match (&rec.interval.lo, &rec.interval.hi) {
        (Endpoint::Finite(lo), Endpoint::Finite(hi)) => candidates.push(0.5 * (lo.to_f64() + hi.to_f64())),
        (Endpoint::Finite(lo), _) => candidates.push(lo.to_f64() + 1.0),
        (_, Endpoint::Finite(hi)) => candidates.push(hi.to_f64() - 1.0),
        _ => candidates.push(0.0),
    }
    candidates
        .into_iter()
        .filter(|&x| {
            rec.interval.lo.finite().is_none_or(|l| x > l.to_f64())
                && rec.interval.hi.finite().is_none_or(|h| x < h.to_f64())
        })
        .map(|x| w.ln_eval_f64(x, None))
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Decaying,
    Diverging,
    Indeterminate,
}

impl Trend {
    pub fn name(self) -> &'static str {
        match self {
            Trend::Decaying => "decaying",
            Trend::Diverging => "diverging",
            Trend::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrend {
    /// `(x, |p a (u y' - u' y)|(x))` along the ladder.
    pub samples: Vec<(f64, f64)>,
    pub terminal: f64,
    pub trend: Trend,
}

/// Largest `|x|` on the sample ladder.
pub const LADDER_END: f64 = 64.0;

/// Samples `|p·a·(u y' - u' y)|` for `u = x^i`, `y = x^j` on the geometric
/// ladder `1 ..= 64` in `direction`; values are formed in log space.
pub fn boundary_limit(
    rec: &ClassificationRecord,
    i: usize,
    j: usize,
    direction: Direction,
    samples: usize,
) -> Result<BoundaryTrend> {
    let infinite = match direction {
        Direction::PosInfinity => rec.interval.hi == Endpoint::PosInfinity,
        Direction::NegInfinity => rec.interval.lo == Endpoint::NegInfinity,
    };
    if !infinite {
        return Err(Error::PreconditionViolation(format!(
            "interval {} has no endpoint at {}",
            rec.interval,
            direction.name()
        )));
    }
    let w = rec
        .weight
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolation("record carries no weight".into()))?;
    let a = to_f64_coeffs(&rec.a);
    let n = samples.max(3);
    let factor = j as f64 - i as f64;
    let points: Vec<(f64, f64, f64)> = (0..n)
        .map(|k| {
            let x = direction.sign() * LADDER_END.powf(k as f64 / (n - 1) as f64);
            let ln = if factor == 0.0 || i + j == 0 {
                f64::NEG_INFINITY
            } else {
                w.ln_eval_f64(x, None)
                    + horner(&a, x).abs().ln()
                    + factor.abs().ln()
                    + (i + j - 1) as f64 * x.abs().ln()
            };
            (x, ln, ln.exp())
        })
        .collect();
    let lns: Vec<f64> = points.iter().map(|p| p.1).collect();
    let tail = &lns[lns.len() - 3..];
    let terminal = points.last().map(|p| p.2).unwrap_or(0.0);
    let trend = if tail.iter().all(|v| *v == f64::NEG_INFINITY) || (tail[0] > tail[1] && tail[1] > tail[2]) {
        Trend::Decaying
    } else if tail[0] < tail[1] && tail[1] < tail[2] {
        Trend::Diverging
    } else {
        Trend::Indeterminate
    };
    Ok(BoundaryTrend {
        samples: points.iter().map(|p| (p.0, p.2)).collect(),
        terminal,
        trend,
    })
}
