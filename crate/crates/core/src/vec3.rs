//! Minimal real/complex 3-vector helpers.
//!
//! Field points and dipole moments are plain `[f64; 3]` / `[Complex64; 3]`
//! arrays; the handful of products needed by the field formulas live here.

use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];

pub const ZERO_C: CVec3 = [Complex64::new(0.0, 0.0); 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn unit(a: Vec3) -> Vec3 {
    let n = norm(a);
    scale(a, 1.0 / n)
}

pub fn cdot(a: CVec3, b: CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cscale(a: CVec3, s: Complex64) -> CVec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn cadd(a: CVec3, b: CVec3) -> CVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn csub(a: CVec3, b: CVec3) -> CVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn c_from_real(a: Vec3) -> CVec3 {
    [a[0].into(), a[1].into(), a[2].into()]
}

/// Euclidean norm of a complex vector, sqrt(sum |a_i|^2).
pub fn cnorm(a: CVec3) -> f64 {
    (a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()).sqrt()
}

pub fn ccross(a: CVec3, b: CVec3) -> CVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Cross product n x v for a real n and complex v.
pub fn cross_rn(n: Vec3, v: CVec3) -> CVec3 {
    ccross(c_from_real(n), v)
}

/// Component of v along the real unit vector n.
pub fn cdot_rn(n: Vec3, v: CVec3) -> Complex64 {
    c_from_real(n)[0] * v[0] + Complex64::from(n[1]) * v[1] + Complex64::from(n[2]) * v[2]
}
