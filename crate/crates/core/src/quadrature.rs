//! Numerical integration: adaptive 15-point Gauss-Kronrod in one dimension
//! and a product Gauss-Legendre x trapezoid rule on the unit sphere.
//!
//! The volume integrands in this crate are smooth per radial branch (constant
//! inside the sphere, r^-6 tail outside) and low-degree polynomials in the
//! direction cosines, so the product angular rule is exact and the radial
//! adaptivity converges quickly.

use crate::error::PhysicsError;
use crate::vec3::Vec3;

/// 15-point Kronrod abscissae on [0, 1] (positive half). Published values,
/// kept at full printed precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

/// Kronrod weights matching `XGK`.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Embedded 7-point Gauss weights (abscissae XGK[1], XGK[3], XGK[5], XGK[7]).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 15(7) panel. Returns (kronrod, |kronrod - gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];

    for (k, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }

    kronrod *= half;
    gauss *= half;
    ((kronrod), (kronrod - gauss).abs())
}

/// Controls for the adaptive integrator and the sphere rule.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of interval bisections.
    pub max_intervals: usize,
    /// Gauss-Legendre nodes in cos(theta).
    pub n_theta: usize,
    /// Equally spaced azimuthal nodes.
    pub n_phi: usize,
    /// Exterior radial truncation, in units of the sphere radius.
    pub r_max_factor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_intervals: 2000,
            n_theta: 12,
            n_phi: 12,
            r_max_factor: 1e3,
        }
    }
}

/// Result of an adaptive integration: value and achieved error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Adaptively integrate `f` over [a, b] by bisecting the worst panel until
/// the summed error estimate meets `abs_tol + rel_tol * |integral|`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, PhysicsError> {
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }

    let (value, err) = gk15(&f, a, b);
    let mut panels = vec![Panel { a, b, value, err }];

    for _ in 0..spec.max_intervals {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        let tol = spec.abs_tol + spec.rel_tol * total.abs();
        if total_err <= tol {
            return Ok(QuadratureResult {
                value: total,
                error_estimate: total_err,
            });
        }
        // split the panel with the largest error estimate
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("non-empty panel list");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        let (v1, e1) = gk15(&f, a, mid);
        let (v2, e2) = gk15(&f, mid, b);
        panels.push(Panel {
            a,
            b: mid,
            value: v1,
            err: e1,
        });
        panels.push(Panel {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
    }

    let total: f64 = panels.iter().map(|p| p.value).sum();
    let total_err: f64 = panels.iter().map(|p| p.err).sum();
    Err(PhysicsError::QuadratureNonConvergence {
        achieved: total_err,
        requested: spec.abs_tol + spec.rel_tol * total.abs(),
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// A quadrature node on the unit sphere: direction and weight. Weights sum
/// to 4*pi.
#[derive(Debug, Clone, Copy)]
pub struct SphereNode {
    pub dir: Vec3,
    pub weight: f64,
}

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) and equally
/// spaced azimuth. Exact for polynomials of degree <= 2*n_theta - 1 in
/// cos(theta) and trigonometric degree < n_phi in phi.
pub fn sphere_rule(n_theta: usize, n_phi: usize) -> Vec<SphereNode> {
    let (u, wu) = gauss_legendre(n_theta);
    let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    for (ui, wi) in u.iter().zip(wu.iter()) {
        let sin_t = (1.0 - ui * ui).sqrt();
        for j in 0..n_phi {
            let phi = dphi * j as f64;
            nodes.push(SphereNode {
                dir: [sin_t * phi.cos(), sin_t * phi.sin(), *ui],
                weight: wi * dphi,
            });
        }
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integrates_polynomial_exactly() {
        let spec = QuadratureSpec::default();
        let r = integrate_adaptive(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &spec).unwrap();
        // exact: 4 - 4 + 2 = 2
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn integrates_inverse_power_tail() {
        let spec = QuadratureSpec::default();
        let r = integrate_adaptive(|x| x.powi(-4), 1.0, 1000.0, &spec).unwrap();
        let exact = (1.0 - 1000.0f64.powi(-3)) / 3.0;
        assert_relative_eq!(r.value, exact, max_relative = 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec {
            rel_tol: 1e-15,
            max_intervals: 3,
            ..Default::default()
        };
        // integrable endpoint singularity, far too few panels allowed
        let r = integrate_adaptive(|x| x.abs().sqrt().recip(), 1e-12, 1.0, &spec);
        assert!(matches!(
            r,
            Err(PhysicsError::QuadratureNonConvergence { .. })
        ));
    }

    #[test]
    fn gauss_legendre_integrates_high_degree() {
        let (x, w) = gauss_legendre(8);
        // integral of x^14 over [-1,1] = 2/15, degree 14 <= 2*8-1
        let approx_int: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert_relative_eq!(approx_int, 2.0 / 15.0, max_relative = 1e-13);
    }

    #[test]
    fn sphere_rule_weights_and_moments() {
        let nodes = sphere_rule(8, 8);
        let total: f64 = nodes.iter().map(|n| n.weight).sum();
        assert_relative_eq!(total, 4.0 * std::f64::consts::PI, max_relative = 1e-13);
        // second moment of each direction cosine is 4*pi/3
        for axis in 0..3 {
            let m2: f64 = nodes
                .iter()
                .map(|n| n.weight * n.dir[axis] * n.dir[axis])
                .sum();
            assert_relative_eq!(m2, 4.0 * std::f64::consts::PI / 3.0, max_relative = 1e-12);
        }
        // cross moments vanish
        let mxy: f64 = nodes.iter().map(|n| n.weight * n.dir[0] * n.dir[1]).sum();
        assert!(mxy.abs() < 1e-13);
    }
}
