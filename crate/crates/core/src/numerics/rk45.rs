//! Adaptive Cash-Karp Runge-Kutta integration for small fixed-size systems.

/// Outcome of one adaptive integration run.
pub struct Integration<const N: usize> {
    /// Accepted (t, state) samples including the initial point.
    pub samples: Vec<(f64, [f64; N])>,
    /// True if the stop predicate fired before reaching `t_end`.
    pub stopped: bool,
}

/// Integrate `y' = f(t, y)` from `(t0, y0)` towards `t_end` (either
/// direction) with Cash-Karp 4(5) step control. `stop` is checked on every
/// accepted step; returning true halts the run (used for blow-up detection).
pub fn integrate_adaptive<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    rtol: f64,
    atol: f64,
    stop: impl Fn(f64, &[f64; N]) -> bool,
) -> Integration<N> {
    const A2: f64 = 0.2;
    const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
    const A4: [f64; 3] = [0.3, -0.9, 1.2];
    const A5: [f64; 4] = [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0];
    const A6: [f64; 5] = [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ];
    const B5: [f64; 6] = [37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0];
    const B4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        0.25,
    ];

    let dir = (t_end - t0).signum();
    let mut t = t0;
    let mut y = y0;
    let mut h = dir * 1e-3 * (1.0 + (t_end - t0).abs()).min(1.0);
    let mut samples = vec![(t, y)];
    let mut stopped = false;

    let axpy = |y: &[f64; N], coeffs: &[f64], ks: &[[f64; N]], h: f64| {
        let mut out = *y;
        for (c, k) in coeffs.iter().zip(ks) {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
        out
    };

    while (t_end - t) * dir > 0.0 {
        if (t + h - t_end) * dir > 0.0 {
            h = t_end - t;
        }
        let k1 = f(t, &y);
        let k2 = f(t + A2 * h, &axpy(&y, &[A2], &[k1], h));
        let k3 = f(t + 0.3 * h, &axpy(&y, &A3, &[k1, k2], h));
        let k4 = f(t + 0.6 * h, &axpy(&y, &A4, &[k1, k2, k3], h));
        let k5 = f(t + h, &axpy(&y, &A5, &[k1, k2, k3, k4], h));
        let k6 = f(t + 0.875 * h, &axpy(&y, &A6, &[k1, k2, k3, k4, k5], h));
        let ks = [k1, k2, k3, k4, k5, k6];
        let y5 = axpy(&y, &B5, &ks, h);
        let y4 = axpy(&y, &B4, &ks, h);

        let mut err: f64 = 0.0;
        for i in 0..N {
            let sc = atol + rtol * y[i].abs().max(y5[i].abs());
            err = err.max(((y5[i] - y4[i]) / sc).abs());
        }
        if !err.is_finite() {
            // step exploded; shrink hard
            h *= 0.1;
            if h.abs() < 1e-14 {
                stopped = true;
                break;
            }
            continue;
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            samples.push((t, y));
            if stop(t, &y) {
                stopped = true;
                break;
            }
            let fac = (0.9 * err.powf(-0.2)).min(5.0).max(0.2);
            h *= fac;
        } else {
            h *= (0.9 * err.powf(-0.25)).max(0.1);
            if h.abs() < 1e-14 {
                stopped = true;
                break;
            }
        }
    }
    Integration { samples, stopped }
}
