use faer::{c64, Mat, MatRef};

/// Largest absolute column sum.
pub(crate) fn norm_1(m: MatRef<'_, c64>) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm(g: MatRef<'_, c64>) -> Mat<c64> {
    assert_eq!(g.nrows(), g.ncols(), "expm needs a square matrix");
    let n = g.nrows();
    let norm = norm_1(g);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings);
    let scaled = Mat::from_fn(n, n, |i, j| g[(i, j)] * scale);

    let mut result = Mat::<c64>::identity(n, n);
    let mut term = Mat::<c64>::identity(n, n);
    for k in 1..=40 {
        let next = &term * &scaled;
        term = Mat::from_fn(n, n, |i, j| next[(i, j)] / k as f64);
        result += &term;
        if norm_1(term.as_ref()) <= 1e-18 * norm_1(result.as_ref()) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
