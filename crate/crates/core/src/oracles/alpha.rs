/// The function minimised in [`alpha_c`].
pub fn alpha_objective(c: f64, x: f64) -> f64 {
    let y = (-c * (1.0 - x)).exp();
    2.0 - (-c * y).exp() - (1.0 + c * (1.0 - x)) * y
}

/// Limiting matching fraction: `nu(G) / (n/2)` for average degree `c`,
/// the minimum over `x ∈ [0, 1]` of [`alpha_objective`]. Coarse grid scan
/// followed by golden-section search around the best grid cell.
pub fn alpha_c(c: f64) -> f64 {
    const GRID: usize = 2000;
    let h = |x: f64| alpha_objective(c, x);
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..=GRID {
        let v = h(i as f64 / GRID as f64);
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    let mut a = best.saturating_sub(1) as f64 / GRID as f64;
    let mut b = (best + 1).min(GRID) as f64 / GRID as f64;
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (h(x1), h(x2));
    while b - a > 1e-12 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = h(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = h(x2);
        }
    }
    [best_val, f1, f2, h(a), h(b)].into_iter().fold(f64::INFINITY, f64::min)
}
