//! Small statistical toolbox for the experiment drivers: empirical-CDF
//! distances, chi-square uniformity, histograms, and running moments.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::{Error, Result};

/// Kolmogorov–Smirnov statistic of a sample against a reference CDF:
/// the largest vertical distance between the empirical CDF and `cdf`.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::DegenerateInput(
            "KS statistic of an empty sample".into(),
        ));
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("KS sample contains NaN"));
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let below = (i as f64) / n;
        let above = (i as f64 + 1.0) / n;
        d = d.max((f - below).abs()).max((f - above).abs());
    }
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov statistic: the largest vertical distance
/// between the two empirical CDFs.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::DegenerateInput(
            "KS statistic of an empty sample".into(),
        ));
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).expect("KS sample contains NaN"));
    sb.sort_by(|x, y| x.partial_cmp(y).expect("KS sample contains NaN"));
    let (na, nb) = (sa.len() as f64, sb.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < sa.len() && j < sb.len() {
        // Step past every copy of the smaller value in both samples before
        // comparing: both empirical CDFs jump at that point, and measuring
        // mid-jump would misread ties as distance.
        let x = sa[i].min(sb[j]);
        while i < sa.len() && sa[i] == x {
            i += 1;
        }
        while j < sb.len() && sb[j] == x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Pearson chi-square test of equiprobable bins: returns the statistic and
/// its p-value under the chi-square law with `bins - 1` degrees of freedom.
pub fn chi2_uniform(counts: &[usize]) -> Result<(f64, f64)> {
    if counts.len() < 2 {
        return Err(Error::DegenerateInput(
            "chi-square test needs at least two bins".into(),
        ));
    }
    let total: usize = counts.iter().sum();
    if total == 0 {
        return Err(Error::DegenerateInput(
            "chi-square test of empty counts".into(),
        ));
    }
    let expected = total as f64 / counts.len() as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let delta = c as f64 - expected;
            delta * delta / expected
        })
        .sum();
    let dof = (counts.len() - 1) as f64;
    let law = ChiSquared::new(dof)
        .map_err(|e| Error::NumericalFailure(format!("chi-square law: {e}")))?;
    Ok((chi2, law.sf(chi2)))
}

/// Equal-width histogram over `[lo, hi)`; the second return value counts
/// points that fell outside the range.
pub fn histogram(data: &[f64], lo: f64, hi: f64, bins: usize) -> (Vec<usize>, usize) {
    assert!(bins > 0 && hi > lo, "histogram needs bins > 0 and hi > lo");
    let mut counts = vec![0usize; bins];
    let mut outside = 0usize;
    let scale = bins as f64 / (hi - lo);
    for &x in data {
        if x >= lo && x < hi {
            let mut bin = ((x - lo) * scale) as usize;
            // Rounding at the upper edge of the top bin.
            if bin >= bins {
                bin = bins - 1;
            }
            counts[bin] += 1;
        } else {
            outside += 1;
        }
    }
    (counts, outside)
}

/// Sample mean and the standard error of the mean.
pub fn mean_and_se(data: &[f64]) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::DegenerateInput("mean of an empty sample".into()));
    }
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    if data.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = data.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Least-squares fit of `ln y = ln alpha - beta x` over points with `y > 0`;
/// `None` when fewer than two usable points remain.
pub fn exponential_decay_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, y)| y > 0.0)
        .map(|&(x, y)| (x, y.ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Some((intercept.exp(), -slope))
}
