use rand::Rng;

use crate::error::{Error, Result};
use crate::symplectic::{Mat2, SpMat};

use super::complex::{real, to_f64, Complex};

type CMat = [[Complex; 2]; 2];

fn cmat_int(m: &Mat2) -> CMat {
    m.map(|r| r.map(|x| Complex::from_f64(x as f64, 0.0)))
}

fn cmat_mul(x: &CMat, y: &CMat) -> CMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j])))
}

fn cmat_add(x: &CMat, y: &CMat) -> CMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &x[i][j] + &y[i][j]))
}

fn cmat_det(x: &CMat) -> Complex {
    &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0])
}

fn cmat_inverse(x: &CMat) -> CMat {
    let r = cmat_det(x).recip();
    [[&x[1][1] * &r, -&(&x[0][1] * &r)], [-&(&x[1][0] * &r), &x[0][0] * &r]]
}

/// A point `Z = (z₀ z₁; z₁ z₂)` of the Siegel upper half-space of degree two.
#[derive(Clone, Debug)]
pub struct SiegelPoint {
    z: [Complex; 3],
}

impl SiegelPoint {
    pub fn new(z0: Complex, z1: Complex, z2: Complex) -> Result<Self> {
        let y0 = to_f64(&z0.im);
        let y1 = to_f64(&z1.im);
        let y2 = to_f64(&z2.im);
        if !(y0 > 0.0 && y0 * y2 - y1 * y1 > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(SiegelPoint { z: [z0, z1, z2] })
    }

    pub fn from_f64(z: [(f64, f64); 3]) -> Result<Self> {
        let [a, b, c] = z.map(|(re, im)| Complex::from_f64(re, im));
        SiegelPoint::new(a, b, c)
    }

    pub fn diagonal(t1: (f64, f64), t2: (f64, f64)) -> Result<Self> {
        SiegelPoint::from_f64([t1, (0.0, 0.0), t2])
    }

    /// `i · diag(y, y)`.
    pub fn scalar(y: f64) -> Self {
        SiegelPoint::diagonal((0.0, y), (0.0, y)).expect("y > 0")
    }

    pub fn entries(&self) -> &[Complex; 3] {
        &self.z
    }

    fn matrix(&self) -> CMat {
        [[self.z[0].clone(), self.z[1].clone()], [self.z[1].clone(), self.z[2].clone()]]
    }

    pub fn imag(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| to_f64(&self.z[i].im))
    }

    /// Smallest eigenvalue of `Y = Im Z`.
    pub fn min_eigenvalue(&self) -> f64 {
        let [a, b, c] = self.imag();
        let mean = (a + c) / 2.0;
        let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
        let lo = mean - rad;
        // the product form keeps the small root accurate when a·c ≫ b²
        if lo > 0.0 {
            (a * c - b * b) / (mean + rad)
        } else {
            lo
        }
    }

    pub fn max_eigenvalue(&self) -> f64 {
        let [a, b, c] = self.imag();
        (a + c) / 2.0 + (((a - c) / 2.0).powi(2) + b * b).sqrt()
    }

    /// `(z₀, −z₁, z₂)`.
    pub fn negate_offdiag(&self) -> Self {
        SiegelPoint { z: [self.z[0].clone(), -&self.z[1], self.z[2].clone()] }
    }

    /// `det(CZ + D)`.
    pub fn automorphy(&self, m: &SpMat) -> Complex {
        let czd = cmat_add(&cmat_mul(&cmat_int(&m.c()), &self.matrix()), &cmat_int(&m.d()));
        cmat_det(&czd)
    }

    /// `M·Z = (AZ + B)(CZ + D)⁻¹`.
    pub fn act(&self, m: &SpMat) -> Result<Self> {
        let z = self.matrix();
        let num = cmat_add(&cmat_mul(&cmat_int(&m.a()), &z), &cmat_int(&m.b()));
        let den = cmat_add(&cmat_mul(&cmat_int(&m.c()), &z), &cmat_int(&m.d()));
        let w = cmat_mul(&num, &cmat_inverse(&den));
        let off = (&w[0][1] + &w[1][0]).scale(&real(0.5));
        SiegelPoint::new(w[0][0].clone(), off, w[1][1].clone())
    }

    /// Real parts uniform in `[−½, ½]`, `Y` with diagonal in `[lo, hi]` and
    /// off-diagonal at most `spread` in modulus.
    pub fn random<R: Rng>(rng: &mut R, lo: f64, hi: f64, spread: f64) -> Self {
        let x: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-0.5..=0.5));
        let y0 = rng.gen_range(lo..=hi);
        let y2 = rng.gen_range(lo..=hi);
        let y1 = rng.gen_range(-spread..=spread);
        SiegelPoint::from_f64([(x[0], y0), (x[1], y1), (x[2], y2)]).expect("diagonally dominant")
    }

    /// A random point with `λ_min(Y) ≥ ½`.
    pub fn sample<R: Rng>(rng: &mut R) -> Self {
        SiegelPoint::random(rng, 0.8, 1.6, 0.3)
    }
}
