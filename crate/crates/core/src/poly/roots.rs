//! Complex roots of integer polynomials by Aberth–Ehrlich iteration followed
//! by Newton polishing.

use num_complex::Complex64;

use super::{big_to_f64, UnivarPoly};

const MAX_ITERATIONS: usize = 2000;

/// Relative residual `|f(z)| / sum |c_k| |z|^k`.
pub fn relative_residual(f: &UnivarPoly, z: Complex64) -> f64 {
    let scale = f.magnitude_at(z);
    if scale == 0.0 {
        return 0.0;
    }
    f.eval_complex(z).norm() / scale
}

/// All complex roots of `f`, with multiplicity. Intended for square-free
/// inputs; repeated roots converge only linearly.
pub fn find_roots(f: &UnivarPoly) -> Vec<Complex64> {
    let Some(n) = f.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let low = f.low_degree();
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let f = f.shift_down(low);
    let n = n - low;
    if n == 0 {
        return roots;
    }
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|c| Complex64::new(big_to_f64(c), 0.0))
        .collect();
    roots.extend(find_roots_complex(&coeffs));
    roots
}

/// Roots of a polynomial with complex coefficients, ascending order. The
/// leading coefficient must be nonzero and the constant term should be too.
pub fn find_roots_complex(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let dcoeffs: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    // Initial guesses on a circle whose radius matches the geometric mean of
    // the root moduli, rotated off the real axis.
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let p = horner(&monic, z[i]);
            let dp = horner(&dcoeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in &mut z {
        *zi = polish(&monic, &dcoeffs, *zi);
    }
    z
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn polish(coeffs: &[Complex64], dcoeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let p = horner(coeffs, z);
        let dp = horner(dcoeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.norm() < 1e-17 * z.norm().max(1.0) {
            break;
        }
        let candidate = z - step;
        if horner(coeffs, candidate).norm() >= p.norm() {
            break;
        }
        z = candidate;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_simple_polynomials() {
        let f = UnivarPoly::from_i64(&[-2, 0, 1]);
        let mut rs: Vec<f64> = find_roots(&f).iter().map(|z| z.re).collect();
        rs.sort_by(f64::total_cmp);
        assert!((rs[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((rs[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn residuals_are_small_for_high_degree() {
        // v^61 + v + 3
        let mut c = vec![0i64; 62];
        c[0] = 3;
        c[1] = 1;
        c[61] = 1;
        let f = UnivarPoly::from_i64(&c);
        let roots = find_roots(&f);
        assert_eq!(roots.len(), 61);
        for z in roots {
            assert!(relative_residual(&f, z) < 1e-10, "residual at {z}");
        }
    }

    #[test]
    fn zero_roots_are_reported() {
        let f = UnivarPoly::from_i64(&[0, 0, -1, 1]);
        let roots = find_roots(&f);
        assert_eq!(roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert_eq!(roots.len(), 3);
    }
}
