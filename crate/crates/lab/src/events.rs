//! Sudden death, revivals, oscillation period and damping rate of a
//! correlation series.

use serde::Serialize;

use milburn_core::CorrelationSample;

/// Default tolerance on `C` for "zero". Concurrence is clamped to exact
/// zero, so this only absorbs round-off.
pub const DEATH_TOL: f64 = 1e-9;

/// Peaks smaller than this fraction of the signal range above both
/// neighbouring minima are treated as numerical ripple.
const PROMINENCE_FRACTION: f64 = 1e-10;

/// Envelope peaks below this fraction of the largest are not fitted.
const ENVELOPE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventReport {
    pub sudden_death_time: Option<f64>,
    pub revival_intervals: Vec<(f64, f64)>,
    pub period_estimate: Option<f64>,
    pub envelope_rate: Option<f64>,
}

/// A refined local maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub t: f64,
    pub value: f64,
}

/// Local maxima of `y` on the uniform grid `t`, located by a parabola
/// through each maximum and its two neighbours. Plateaus count once.
pub fn find_peaks(t: &[f64], y: &[f64]) -> Vec<Peak> {
    let n = y.len().min(t.len());
    if n < 3 {
        return Vec::new();
    }
    let (lo, hi) = y[..n]
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let floor = PROMINENCE_FRACTION * (hi - lo);

    // Candidate maxima, then prominence against the minima between them.
    let mut cand = Vec::new();
    let mut k = 1;
    while k + 1 < n {
        if y[k] > y[k - 1] {
            let mut j = k;
            while j + 1 < n && y[j + 1] == y[k] {
                j += 1;
            }
            if j + 1 < n && y[j + 1] < y[k] {
                cand.push((k + j) / 2);
            }
            k = j + 1;
        } else {
            k += 1;
        }
    }
    let min_between = |a: usize, b: usize| y[a..=b].iter().copied().fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    for (i, &k) in cand.iter().enumerate() {
        let left = if i == 0 { 0 } else { cand[i - 1] };
        let right = cand.get(i + 1).copied().unwrap_or(n - 1);
        let base = min_between(left, k).max(min_between(k, right));
        if y[k] - base <= floor {
            continue;
        }
        let (a, b, c) = (y[k - 1], y[k], y[k + 1]);
        let curv = a - 2.0 * b + c;
        let (dk, value) = if curv < 0.0 {
            let d = 0.5 * (a - c) / curv;
            (d, b - 0.25 * (a - c) * d)
        } else {
            (0.0, b)
        };
        let step = t[k + 1] - t[k];
        out.push(Peak { t: t[k] + dk * step, value });
    }
    out
}

/// Mean spacing of successive peaks, ignoring spacings more than 25% away
/// from the median (a missed or split peak). `None` below 3 peaks.
pub fn period_from_peaks(peaks: &[Peak]) -> Option<f64> {
    if peaks.len() < 3 {
        return None;
    }
    let gaps: Vec<f64> = peaks.windows(2).map(|w| w[1].t - w[0].t).collect();
    let mut sorted = gaps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let kept: Vec<f64> = gaps.into_iter().filter(|g| (g - median).abs() <= 0.25 * median).collect();
    (!kept.is_empty()).then(|| kept.iter().sum::<f64>() / kept.len() as f64)
}

/// Decay rate `r` of `A·e^{−rt}` from a least-squares line through
/// `(t, ln value)` of the peaks above the floor. `None` below 3 peaks.
pub fn envelope_from_peaks(peaks: &[Peak]) -> Option<f64> {
    let top = peaks.iter().map(|p| p.value).fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = peaks
        .iter()
        .filter(|p| p.value > ENVELOPE_FLOOR * top && p.value > 0.0)
        .map(|p| (p.t, p.value.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let (mt, my) = pts.iter().fold((0.0, 0.0), |(a, b), (t, y)| (a + t / n, b + y / n));
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, y)| (a + (t - mt) * (y - my), b + (t - mt) * (t - mt)));
    (sxx > 0.0).then(|| -sxy / sxx)
}

/// Period of `y` and decay rate of `|y − baseline|`.
pub fn analyze_signal(t: &[f64], y: &[f64], baseline: f64) -> (Option<f64>, Option<f64>) {
    let period = period_from_peaks(&find_peaks(t, y));
    let dev: Vec<f64> = y.iter().map(|v| (v - baseline).abs()).collect();
    (period, envelope_from_peaks(&find_peaks(t, &dev)))
}

/// Events of `C` (death, revival) and of `N₂` (period, envelope). The
/// envelope is measured against `steady_min_hs`, or the last sample when
/// that is not given.
pub fn detect_events(series: &[CorrelationSample], tol: f64, steady_min_hs: Option<f64>) -> EventReport {
    let mut report = EventReport {
        sudden_death_time: None,
        revival_intervals: Vec::new(),
        period_estimate: None,
        envelope_rate: None,
    };
    let Some(last) = series.last() else {
        return report;
    };

    if last.concurrence <= tol {
        let start = series.iter().rposition(|s| s.concurrence > tol).map_or(0, |k| k + 1);
        report.sudden_death_time = Some(series[start].t);
    }

    let mut seen_zero = false;
    let mut open: Option<(f64, f64)> = None;
    for s in series {
        if s.concurrence > tol {
            if let Some(iv) = open.as_mut() {
                iv.1 = s.t;
            } else if seen_zero {
                open = Some((s.t, s.t));
            }
        } else {
            seen_zero = true;
            report.revival_intervals.extend(open.take());
        }
    }
    report.revival_intervals.extend(open);

    let t: Vec<f64> = series.iter().map(|s| s.t).collect();
    let y: Vec<f64> = series.iter().map(|s| s.min_hs).collect();
    let (period, rate) = analyze_signal(&t, &y, steady_min_hs.unwrap_or(last.min_hs));
    report.period_estimate = period;
    report.envelope_rate = rate;
    report
}

/// Total time with `C > tol`, counting each sample as its grid cell.
pub fn entangled_measure(series: &[CorrelationSample], tol: f64) -> f64 {
    series
        .windows(2)
        .filter(|w| w[0].concurrence > tol)
        .map(|w| w[1].t - w[0].t)
        .sum()
}
