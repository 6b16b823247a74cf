//! Closed-form kernels: the Cauchy kernel and its y-derivatives on the
//! imaginary axis, the modified (integrability-corrected) kernel, the
//! Poisson kernel, and the exact Fourier transforms of all of them.

use num_complex::Complex64;

use crate::error::{CharFnError, Result};

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// d^n/dy^n of 1/(iy - t): equals (-i)^n n! (iy - t)^{-(n+1)}.
pub fn cauchy_kernel_dy(n: usize, y: f64, t: f64) -> Result<Complex64> {
    if y == 0.0 {
        return Err(CharFnError::OnRealAxis);
    }
    let base = Complex64::new(-t, y);
    let neg_i_pow = Complex64::new(0.0, -1.0).powu(n as u32);
    Ok(neg_i_pow * factorial(n) * base.powi(-(n as i32 + 1)))
}

/// The modified Cauchy kernel 1/(iy - t) + t/(t^2 + 1), in the combined
/// form (1 + ity) / ((iy - t)(1 + t^2)) which avoids the cancellation of
/// the two 1/t tails at large |t|.
pub fn modified_cauchy_kernel(y: f64, t: f64) -> Complex64 {
    let numer = Complex64::new(1.0, t * y);
    let denom = Complex64::new(-t, y) * (1.0 + t * t);
    numer / denom
}

/// Same, at a general off-axis point z.
pub fn modified_cauchy_kernel_at(z: Complex64, t: f64) -> Complex64 {
    1.0 / (z - t) + t / (t * t + 1.0)
}

/// Exact Fourier transform of the modified kernel against e^{ixt},
/// as a function of the spectral location x:
///
///   y > 0:  2*[x >= 0] e^{-yx} - sign(x) e^{-|x|}   (1 at x = 0)
///   y < 0: -2*[x <= 0] e^{-yx} - sign(x) e^{-|x|}   (-1 at x = 0)
///
/// The jump at x = 0 carries half weight, which is exactly the stated
/// special value.
pub fn modified_kernel_fourier(y: f64, x: f64) -> f64 {
    if y > 0.0 {
        if x == 0.0 {
            1.0
        } else {
            let ind = if x > 0.0 { 2.0 * (-y * x).exp() } else { 0.0 };
            ind - sign(x) * (-x.abs()).exp()
        }
    } else {
        if x == 0.0 {
            -1.0
        } else {
            let ind = if x < 0.0 { -2.0 * (-y * x).exp() } else { 0.0 };
            ind - sign(x) * (-x.abs()).exp()
        }
    }
}

/// n-th y-derivative of `modified_kernel_fourier` for n >= 1. The
/// sign(x) e^{-|x|} correction is y-independent, so only the indicator
/// part survives.
pub fn modified_kernel_fourier_dy(n: usize, y: f64, x: f64) -> f64 {
    if n == 0 {
        return modified_kernel_fourier(y, x);
    }
    if y > 0.0 {
        if x > 0.0 {
            2.0 * (-x).powi(n as i32) * (-y * x).exp()
        } else {
            0.0
        }
    } else if x < 0.0 {
        -2.0 * (-x).powi(n as i32) * (-y * x).exp()
    } else {
        0.0
    }
}

/// Principal-value Fourier transform of the plain Cauchy kernel
/// (i/pi)/(iy - t) against e^{ixt}, as a function of the location x.
pub fn cauchy_kernel_fourier(y: f64, x: f64) -> f64 {
    if y > 0.0 {
        if x == 0.0 {
            1.0
        } else if x > 0.0 {
            2.0 * (-y * x).exp()
        } else {
            0.0
        }
    } else if x == 0.0 {
        -1.0
    } else if x < 0.0 {
        -2.0 * (-y * x).exp()
    } else {
        0.0
    }
}

pub fn cauchy_kernel_fourier_dy(n: usize, y: f64, x: f64) -> f64 {
    if n == 0 {
        return cauchy_kernel_fourier(y, x);
    }
    if y > 0.0 {
        if x > 0.0 {
            2.0 * (-x).powi(n as i32) * (-y * x).exp()
        } else {
            0.0
        }
    } else if x < 0.0 {
        -2.0 * (-x).powi(n as i32) * (-y * x).exp()
    } else {
        0.0
    }
}

/// Poisson kernel P_y(t) = y / (pi (t^2 + y^2)), y > 0.
pub fn poisson_kernel(y: f64, t: f64) -> f64 {
    y / (std::f64::consts::PI * (t * t + y * y))
}

/// n-th y-derivative of the Poisson kernel, through the identity
/// P_y(t) = -(1/pi) Im[1/(iy - t)].
pub fn poisson_kernel_dy(n: usize, y: f64, t: f64) -> Result<f64> {
    let k = cauchy_kernel_dy(n, y, t)?;
    Ok(-k.im / std::f64::consts::PI)
}

/// Fourier transform of the Poisson kernel: e^{-y|x|}, with y-derivatives
/// (-|x|)^n e^{-y|x|}.
pub fn poisson_kernel_fourier_dy(n: usize, y: f64, x: f64) -> f64 {
    let a = x.abs();
    (-a).powi(n as i32) * (-y * a).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn order_zero_at_origin() {
        // 1/(i) = -i
        let k = cauchy_kernel_dy(0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(k.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn order_one_at_origin() {
        // (-i) * 1! * (i)^{-2} = i
        let k = cauchy_kernel_dy(1, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(k.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn order_two_matches_finite_difference() {
        let h = 1e-4;
        for &(y, t) in &[(1.3, 0.7), (0.4, -2.1), (2.0, 5.0)] {
            let d2 = cauchy_kernel_dy(2, y, t).unwrap();
            let fd = (cauchy_kernel_dy(1, y + h, t).unwrap()
                - cauchy_kernel_dy(1, y - h, t).unwrap())
                / (2.0 * h);
            assert_relative_eq!(d2.re, fd.re, max_relative = 1e-6);
            assert_relative_eq!(d2.im, fd.im, max_relative = 1e-6);
        }
    }

    #[test]
    fn real_axis_is_rejected() {
        assert!(matches!(
            cauchy_kernel_dy(0, 0.0, 1.0),
            Err(CharFnError::OnRealAxis)
        ));
    }

    #[test]
    fn modified_kernel_combined_form_matches_sum() {
        for &(y, t) in &[(1.0, 0.5), (-2.0, 3.0), (0.3, -7.0)] {
            let combined = modified_cauchy_kernel(y, t);
            let direct = 1.0 / Complex64::new(-t, y) + t / (t * t + 1.0);
            assert_abs_diff_eq!(combined.re, direct.re, epsilon = 1e-14);
            assert_abs_diff_eq!(combined.im, direct.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn fourier_special_values_at_zero() {
        assert_eq!(modified_kernel_fourier(1.0, 0.0), 1.0);
        assert_eq!(modified_kernel_fourier(-1.0, 0.0), -1.0);
        assert_eq!(cauchy_kernel_fourier(3.0, 0.0), 1.0);
        assert_eq!(cauchy_kernel_fourier(-3.0, 0.0), -1.0);
    }

    #[test]
    fn fourier_values_off_zero() {
        let e1 = (-1.0f64).exp();
        // y=1, x=1: 2e^{-1} - e^{-1} = e^{-1}
        assert_abs_diff_eq!(modified_kernel_fourier(1.0, 1.0), e1, epsilon = 1e-15);
        // y=1, x=-1: e^{-1} (indicator part vanishes, -sign(-1) = +1)
        assert_abs_diff_eq!(modified_kernel_fourier(1.0, -1.0), e1, epsilon = 1e-15);
        // y=-1, x=-1: -2e^{-1} + e^{-1} = -e^{-1}
        assert_abs_diff_eq!(modified_kernel_fourier(-1.0, -1.0), -e1, epsilon = 1e-15);
        // y=2, x=1: 2e^{-2} - e^{-1}
        assert_abs_diff_eq!(
            modified_kernel_fourier(2.0, 1.0),
            2.0 * (-2.0f64).exp() - e1,
            epsilon = 1e-15
        );
    }

    #[test]
    fn fourier_dy_matches_finite_difference() {
        let h = 1e-5;
        for &(y, x) in &[(1.0, 0.7), (0.5, 2.0), (-1.5, -0.4)] {
            let d1 = modified_kernel_fourier_dy(1, y, x);
            let fd = (modified_kernel_fourier(y + h, x) - modified_kernel_fourier(y - h, x))
                / (2.0 * h);
            assert_relative_eq!(d1, fd, max_relative = 1e-8, epsilon = 1e-12);
        }
    }

    #[test]
    fn poisson_kernel_derivative_identity() {
        // n = 0 must reproduce the kernel itself.
        for &(y, t) in &[(0.5, 1.0), (2.0, -3.0)] {
            assert_abs_diff_eq!(
                poisson_kernel_dy(0, y, t).unwrap(),
                poisson_kernel(y, t),
                epsilon = 1e-15
            );
        }
        // n = 1 against a finite difference.
        let (y, t, h) = (1.2, 0.8, 1e-5);
        let fd = (poisson_kernel(y + h, t) - poisson_kernel(y - h, t)) / (2.0 * h);
        assert_relative_eq!(poisson_kernel_dy(1, y, t).unwrap(), fd, max_relative = 1e-8);
    }
}
