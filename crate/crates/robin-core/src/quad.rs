//! Adaptive Gauss–Kronrod quadrature.
//!
//! One 15-point Kronrod rule (7-point Gauss embedded) plus worst-interval
//! bisection. The default tolerance budget is the one every kernel formula
//! in this crate is specified against: absolute 1e-10, relative 1e-9.

use crate::error::{Error, Result};

/// Tolerance budget for an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            abs: 1e-10,
            rel: 1e-9,
        }
    }
}

impl Tol {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tol { abs, rel }
    }

    fn budget(&self, estimate: f64) -> f64 {
        self.abs.max(self.rel * estimate.abs())
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss weights, from QUADPACK's dqk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_95,
    0.417_959_183_673_469_4,
];

/// Result of one panel evaluation.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = fc * WGK[7];
    let mut gauss = 0.0;
    let mut resabs = kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        kronrod += WGK[i] * (f1 + f2);
        resabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }

    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for (i, &v) in fv.iter().enumerate().take(7) {
        resasc += WGK[i] * ((v - mean).abs() + (fv[14 - i] - mean).abs());
    }

    let value = kronrod * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();

    // QUADPACK error rescaling: sharpen the raw Gauss/Kronrod difference.
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if floor > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }

    Panel { a, b, value, err }
}

/// Adaptively integrate `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tol) -> Result<f64> {
    integrate_ctx(&f, a, b, tol, "integrate")
}

pub(crate) fn integrate_ctx<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tol,
    context: &'static str,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    const MAX_PANELS: usize = 4000;
    let mut panels = vec![gk15(f, a, b)];

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if !total.is_finite() {
            return Err(Error::QuadNonConvergence {
                context,
                err: f64::INFINITY,
                tol: tol.budget(0.0),
            });
        }
        let budget = tol.budget(total);
        if err <= budget {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadNonConvergence {
                context,
                err,
                tol: budget,
            });
        }
        // split the worst panel
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval exhausted at machine resolution; keep its estimate
            panels.push(p);
            let err: f64 = panels.iter().map(|q| q.err).sum();
            let total: f64 = panels.iter().map(|q| q.value).sum();
            if err <= 10.0 * tol.budget(total) {
                return Ok(total);
            }
            return Err(Error::QuadNonConvergence {
                context,
                err,
                tol: tol.budget(total),
            });
        }
        panels.push(gk15(f, p.a, mid));
        panels.push(gk15(f, mid, p.b));
    }
}

/// Integrate `f` over `[a, ∞)` for an integrand that decays at infinity.
///
/// The tail is scanned in blocks whose width starts at `scale` and grows
/// geometrically; scanning stops once two consecutive blocks contribute
/// below the tolerance floor. `scale` should match the decay length of the
/// integrand (`1/kappa` for the exponential memories in this crate).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, tol: Tol) -> Result<f64> {
    let scale = if scale.is_finite() && scale > 0.0 {
        scale
    } else {
        1.0
    };
    let block_tol = Tol::new(tol.abs * 0.1, tol.rel * 0.1);
    let mut total = 0.0;
    let mut lo = a;
    let mut width = 5.0 * scale;
    let mut quiet = 0;
    for _ in 0..200 {
        let hi = lo + width;
        let part = integrate_ctx(&f, lo, hi, block_tol, "integrate_to_inf")?;
        total += part;
        if part.abs() <= 0.05 * tol.budget(total) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 1.5;
    }
    Err(Error::QuadNonConvergence {
        context: "integrate_to_inf: tail did not settle",
        err: f64::INFINITY,
        tol: tol.budget(total),
    })
}

/// Integrate an oscillatory integrand by splitting `[a, b]` into cells no
/// wider than `cell` (typically one oscillation period) before adapting.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cell: f64,
    tol: Tol,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let n = (((b - a) / cell).ceil() as usize).clamp(1, 200_000);
    let cell_tol = Tol::new(tol.abs / (n as f64).sqrt().max(1.0), tol.rel);
    let step = (b - a) / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let lo = a + step * i as f64;
        let hi = if i + 1 == n { b } else { lo + step };
        total += integrate_ctx(&f, lo, hi, cell_tol, "integrate_oscillatory")?;
    }
    Ok(total)
}
