//! Bracketed scalar root finding.

use crate::scalar::Real;

/// Brent's method on a bracket `[a, b]` with `f(a)` and `f(b)` of opposite sign.
///
/// Stops when the bracket is narrower than `xtol` (plus a few ulps of the
/// root) or `f` hits zero exactly. Returns `None` when the inputs do not
/// bracket a sign change.
pub fn brent<T, F>(mut f: F, a: T, b: T, xtol: T, max_iter: usize) -> Option<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Some(a);
    }
    if fb == T::zero() {
        return Some(b);
    }
    if fa.is_nan() || fb.is_nan() || (fa > T::zero()) == (fb > T::zero()) {
        return None;
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (two * m * s, T::one() - s)
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                (
                    s * (two * m * qa * (qa - r) - (b - a) * (r - T::one())),
                    (qa - T::one()) * (r - T::one()) * (s - T::one()),
                )
            };
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let min1 = T::lit(3.0) * m * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol {
            b + d
        } else if m > T::zero() {
            b + tol
        } else {
            b - tol
        };
        fb = f(b);
        if fb.is_nan() {
            return None;
        }
    }
    Some(b)
}

/// Uniform scan of `f` over `n` equal subintervals of `[lo, hi]`; returns
/// every subinterval whose endpoint values change sign (zero counts as a change).
pub fn sign_changes<T, F>(mut f: F, lo: T, hi: T, n: usize) -> Vec<(T, T)>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let step = (hi - lo) / T::from_usize(n).expect("scan count fits");
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for k in 1..=n {
        let x1 = if k == n {
            hi
        } else {
            lo + step * T::from_usize(k).expect("scan index fits")
        };
        let f1 = f(x1);
        if f0.is_finite()
            && f1.is_finite()
            && (f0 == T::zero() || (f0 > T::zero()) != (f1 > T::zero()))
        {
            out.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let r = brent(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 100).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cubic_and_reversed_bracket() {
        let f = |x: f64| (x - 0.3) * (x + 1.0) * (x - 2.0);
        let r = brent(f, 1.0, 0.0, 1e-13, 100).unwrap();
        assert!((r - 0.3).abs() < 1e-13);
    }

    #[test]
    fn no_bracket() {
        assert_eq!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 50), None);
    }

    #[test]
    fn steep_function() {
        let r = brent(|x: f64| (x - 1e-3).tanh() * 1e6, -1.0, 1.0, 1e-15, 200).unwrap();
        assert!((r - 1e-3).abs() < 1e-14);
    }

    #[test]
    fn single_precision() {
        let r = brent(|x: f32| x.cos() - x, 0.0, 1.0, 1e-6, 100).unwrap();
        assert!((r - 0.739_085_1).abs() < 1e-5);
    }

    #[test]
    fn scan_finds_all_roots_of_sine() {
        let brackets = sign_changes(|x: f64| x.sin(), 0.5, 10.0, 100);
        assert_eq!(brackets.len(), 3);
        let roots: Vec<f64> = brackets
            .into_iter()
            .map(|(a, b)| brent(|x: f64| x.sin(), a, b, 1e-14, 100).unwrap())
            .collect();
        for (k, r) in roots.iter().enumerate() {
            assert!((r - (k as f64 + 1.0) * std::f64::consts::PI).abs() < 1e-13);
        }
    }
}
