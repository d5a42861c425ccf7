//! Adaptive Simpson quadrature.

/// Default recursion depth limit.
pub const MAX_DEPTH: u32 = 40;

/// `∫_a^b f` to relative tolerance `rel_tol`.
///
/// The tolerance is measured against a coarse estimate of `∫|f|`, so integrals
/// that cancel to (nearly) zero still terminate.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64
where
    F: Fn(f64) -> f64 + ?Sized,
{
    if a == b {
        return 0.0;
    }
    // Seed on a coarse composite grid so a single period cannot alias the error estimate.
    const PANELS: usize = 8;
    let h = (b - a) / PANELS as f64;
    let mut panels = Vec::with_capacity(PANELS);
    let mut abs_scale = 0.0;
    for k in 0..PANELS {
        let lo = a + h * k as f64;
        let hi = if k + 1 == PANELS { b } else { lo + h };
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        abs_scale += (hi - lo) / 6.0 * (flo.abs() + 4.0 * fmid.abs() + fhi.abs());
        panels.push((lo, hi, flo, fmid, fhi));
    }
    let eps = rel_tol * abs_scale.max(f64::MIN_POSITIVE);
    let panel_eps = eps / PANELS as f64;
    panels
        .into_iter()
        .map(|(lo, hi, flo, fmid, fhi)| {
            let whole = simpson(lo, hi, flo, fmid, fhi);
            refine(f, lo, hi, flo, fmid, fhi, whole, panel_eps, max_depth)
        })
        .sum()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        refine(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
            + refine(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    }
}
