//! Two-dimensional Nelder-Mead simplex minimization.
//!
//! Used as the derivative-free fallback for the implicit hodograph solves
//! when damped Newton stalls. Standard reflection/expansion/contraction
//! coefficients.

pub struct SimplexResult {
    pub x: [f64; 2],
    pub value: f64,
    pub iterations: usize,
}

pub fn minimize2(
    f: impl Fn(&[f64; 2]) -> f64,
    start: [f64; 2],
    scale: f64,
    tol: f64,
    max_iter: usize,
) -> SimplexResult {
    let mut pts = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ];
    let mut vals = [f(&pts[0]), f(&pts[1]), f(&pts[2])];

    let mut iters = 0;
    while iters < max_iter {
        iters += 1;
        // order: pts[0] best, pts[2] worst
        let mut idx = [0, 1, 2];
        idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];

        let spread = (vals[2] - vals[0]).abs();
        let size = (pts[2][0] - pts[0][0]).abs()
            + (pts[2][1] - pts[0][1]).abs()
            + (pts[1][0] - pts[0][0]).abs()
            + (pts[1][1] - pts[0][1]).abs();
        if spread < tol && size < tol.sqrt() * 1e-2 {
            break;
        }

        let centroid = [0.5 * (pts[0][0] + pts[1][0]), 0.5 * (pts[0][1] + pts[1][1])];
        let refl = [2.0 * centroid[0] - pts[2][0], 2.0 * centroid[1] - pts[2][1]];
        let fr = f(&refl);
        if fr < vals[0] {
            let exp = [3.0 * centroid[0] - 2.0 * pts[2][0], 3.0 * centroid[1] - 2.0 * pts[2][1]];
            let fe = f(&exp);
            if fe < fr {
                pts[2] = exp;
                vals[2] = fe;
            } else {
                pts[2] = refl;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = refl;
            vals[2] = fr;
        } else {
            let con = [
                centroid[0] + 0.5 * (pts[2][0] - centroid[0]),
                centroid[1] + 0.5 * (pts[2][1] - centroid[1]),
            ];
            let fc = f(&con);
            if fc < vals[2] {
                pts[2] = con;
                vals[2] = fc;
            } else {
                // shrink toward the best vertex
                for k in 1..3 {
                    pts[k] = [
                        pts[0][0] + 0.5 * (pts[k][0] - pts[0][0]),
                        pts[0][1] + 0.5 * (pts[k][1] - pts[0][1]),
                    ];
                    vals[k] = f(&pts[k]);
                }
            }
        }
    }
    let mut best = 0;
    for k in 1..3 {
        if vals[k] < vals[best] {
            best = k;
        }
    }
    SimplexResult { x: pts[best], value: vals[best], iterations: iters }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |x: &[f64; 2]| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let r = minimize2(f, [0.0, 0.0], 0.5, 1e-24, 500);
        assert!((r.x[0] - 1.5).abs() < 1e-7);
        assert!((r.x[1] + 0.5).abs() < 1e-7);
    }
}
