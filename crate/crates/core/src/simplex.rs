//! Nelder–Mead simplex minimization.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions<T> {
    /// Stop when every vertex is within this distance (max-norm) of the best one.
    pub xtol: T,
    /// Stop when the objective spread across vertices falls to this value.
    pub ftol: T,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T, const N: usize> {
    pub x: [T; N],
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from the simplex `x0, x0 + step_k e_k`.
///
/// `f` may return `+∞` to mark infeasible points; such vertices are never
/// accepted over finite ones.
pub fn nelder_mead<T, F, const N: usize>(
    mut f: F,
    x0: [T; N],
    step: [T; N],
    opts: &SimplexOptions<T>,
) -> Minimum<T, N>
where
    T: Real,
    F: FnMut(&[T; N]) -> T,
{
    let (alpha, gamma, rho, shrink) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
    let mut pts: Vec<[T; N]> = Vec::with_capacity(N + 1);
    pts.push(x0);
    for k in 0..N {
        let mut v = x0;
        v[k] = v[k] + step[k];
        pts.push(v);
    }
    let mut vals: Vec<T> = pts.iter().map(|p| sanitize(f(p))).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=N).collect();
        order.sort_by(|&a, &b| {
            vals[a]
                .partial_cmp(&vals[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        pts = order.iter().map(|&i| pts[i]).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let best = pts[0];
        let size = pts[1..]
            .iter()
            .flat_map(|p| (0..N).map(move |k| (p[k] - best[k]).abs()))
            .fold(T::zero(), T::max);
        let spread = vals[N] - vals[0];
        if size <= opts.xtol || (vals[N].is_finite() && spread <= opts.ftol) {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = [T::zero(); N];
        for p in &pts[..N] {
            for k in 0..N {
                centroid[k] = centroid[k] + p[k];
            }
        }
        let n = T::from_usize(N).expect("dimension fits");
        for c in centroid.iter_mut() {
            *c = *c / n;
        }
        let along = |t: T| {
            let mut v = [T::zero(); N];
            for k in 0..N {
                v[k] = centroid[k] + t * (pts[N][k] - centroid[k]);
            }
            v
        };

        let xr = along(-alpha);
        let fr = sanitize(f(&xr));
        if fr < vals[0] {
            let xe = along(-gamma);
            let fe = sanitize(f(&xe));
            if fe < fr {
                pts[N] = xe;
                vals[N] = fe;
            } else {
                pts[N] = xr;
                vals[N] = fr;
            }
            continue;
        }
        if fr < vals[N - 1] {
            pts[N] = xr;
            vals[N] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[N] {
            let x = along(-rho);
            (x, sanitize(f(&x)))
        } else {
            let x = along(rho);
            (x, sanitize(f(&x)))
        };
        if fc < vals[N].min(fr) {
            pts[N] = xc;
            vals[N] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..=N {
            for k in 0..N {
                pts[i][k] = best[k] + shrink * (pts[i][k] - best[k]);
            }
            vals[i] = sanitize(f(&pts[i]));
        }
    }
    let best = (0..=N)
        .min_by(|&a, &b| {
            vals[a]
                .partial_cmp(&vals[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    Minimum {
        x: pts[best],
        value: vals[best],
        iterations,
        converged,
    }
}

fn sanitize<T: Real>(v: T) -> T {
    if v.is_nan() {
        T::infinity()
    } else {
        v
    }
}
