use std::collections::HashMap;

use crate::chargeom::Char;
use crate::error::{Error, Result};
use crate::qseries::{theta_qexp, QSeries};

use super::complex::{real, Complex};
use super::siegel::SiegelPoint;

/// Largest lattice radius `R` (in `|g|_∞`) a single evaluation may use.
pub const MAX_RADIUS: u64 = 12;

/// Default bound on the dropped part of a truncated q-expansion.
pub const DROPPED_LIMIT: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    /// Bound on `|θ − value|` from the lattice points outside the box.
    pub tail_bound: f64,
    pub radius: u64,
}

/// `Σ_{k > r} 8k e^{−πλ(k−½)²}`, bounding all lattice points with `|g|_∞ > r`.
pub fn gaussian_tail(lambda: f64, r: u64) -> f64 {
    let mut sum = 0.0;
    let mut k = r + 1;
    loop {
        let t = 8.0 * k as f64 * (-std::f64::consts::PI * lambda * (k as f64 - 0.5).powi(2)).exp();
        sum += t;
        if t == 0.0 || t < sum * 1e-18 {
            return sum;
        }
        k += 1;
    }
}

/// Smallest radius whose tail is at most `tol`.
pub fn radius_for(lambda: f64, tol: f64) -> Result<u64> {
    if !(lambda > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let mut r = 1;
    while gaussian_tail(lambda, r) > tol {
        r += 1;
        if r > MAX_RADIUS {
            // report the radius that would have been needed
            while gaussian_tail(lambda, r) > tol && r < 10_000 {
                r += 1;
            }
            return Err(Error::RadiusTooLarge(r));
        }
    }
    Ok(r)
}

/// `θ[m](Z) = Σ_g e^{πi(Z[g + a/2] + ᵗb(g + a/2))}` by direct summation.
///
/// With `x = 2g + a` the summand is `α^{x₁²} β^{x₁x₂} γ^{x₂²} i^{b·x}` where
/// `α = e^{πiz₀/4}`, `β = e^{πiz₁/2}`, `γ = e^{πiz₂/4}`.
pub fn theta_eval(m: Char, z: &SiegelPoint, tol: f64) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    // a relative margin absorbs the f64 rounding of the eigenvalue
    let lambda = z.min_eigenvalue() * (1.0 - 1e-9);
    let r = radius_for(lambda, tol)? as i64;
    let [z0, z1, z2] = z.entries();
    let alpha = z0.scale(&real(0.25)).exp_pi_i();
    let beta = z1.scale(&real(0.5)).exp_pi_i();
    let gamma = z2.scale(&real(0.25)).exp_pi_i();
    let [a1, a2] = m.a().map(i64::from);
    let [b1, b2] = m.b().map(i64::from);
    let xs = |a: i64| (-r..=r).map(move |g| 2 * g + a).collect::<Vec<_>>();
    let (xs1, xs2) = (xs(a1), xs(a2));
    let col: Vec<Complex> = xs2.iter().map(|&x| gamma.powi(x * x)).collect();
    let mut total = Complex::zero();
    for &x1 in &xs1 {
        let bx = beta.powi(x1);
        let step = &bx * &bx;
        let mut cross = bx.powi(xs2[0]);
        let mut row = Complex::zero();
        for (j, &x2) in xs2.iter().enumerate() {
            row = &row + &(&cross * &col[j]).mul_i_pow(b2 * x2);
            cross = &cross * &step;
        }
        total = &total + &(&row * &alpha.powi(x1 * x1)).mul_i_pow(b1 * x1);
    }
    Ok(EvalResult { value: total, tail_bound: gaussian_tail(lambda, r as u64), radius: r as u64 })
}

/// `Π θ[mᵢ](Z)` with a first-order bound on the propagated tails.
pub fn theta_product(chars: &[Char], z: &SiegelPoint, tol: f64) -> Result<EvalResult> {
    let evals = chars.iter().map(|&m| theta_eval(m, z, tol)).collect::<Result<Vec<_>>>()?;
    let mut value = Complex::one();
    for e in &evals {
        value = &value * &e.value;
    }
    let mut bound = 0.0;
    for (i, e) in evals.iter().enumerate() {
        let others: f64 =
            evals.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, o)| o.value.abs() + o.tail_bound).product();
        bound += e.tail_bound * others;
    }
    let radius = evals.iter().map(|e| e.radius).max().unwrap_or(0);
    Ok(EvalResult { value, tail_bound: bound, radius })
}

/// `Σ c · q₀ⁿ⁰ q₁ⁿ¹ q₂ⁿ²` with `q₀ = e^{πi(z₀+z₁)/4}`, `q₁ = e^{−πiz₁/4}`,
/// `q₂ = e^{πi(z₂+z₁)/4}`.
pub fn eval_series(s: &QSeries, z: &SiegelPoint) -> Complex {
    let [z0, z1, z2] = z.entries();
    let quarter = real(0.25);
    let q =
        [(z0 + z1).scale(&quarter).exp_pi_i(), (-z1).scale(&quarter).exp_pi_i(), (z2 + z1).scale(&quarter).exp_pi_i()];
    let mut powers: [HashMap<u32, Complex>; 3] = Default::default();
    let mut pow =
        |axis: usize, n: u32| -> Complex { powers[axis].entry(n).or_insert_with(|| q[axis].powi(n as i64)).clone() };
    let mut total = Complex::zero();
    for (e, c) in s.terms() {
        let t = &(&pow(0, e.n0) * &pow(1, e.n1)) * &pow(2, e.n2);
        total = &total + &(&t * &Complex::from_cyc(c));
    }
    total
}

/// Bound on `Σ |summand|` over the lattice vectors `x ≡ a mod 2` with
/// `x₁² + x₂² > N`, which are exactly the terms a truncation at `N` drops.
pub fn dropped_bound(m: Char, z: &SiegelPoint, n: u32) -> f64 {
    let lambda = z.min_eigenvalue() * (1.0 - 1e-9);
    if !(lambda > 0.0) {
        return f64::INFINITY;
    }
    let box_radius = 2 * MAX_RADIUS as i64 + 1;
    let [a1, a2] = m.a().map(i64::from);
    let mut sum = 0.0;
    for x1 in (-box_radius..=box_radius).filter(|x| (x - a1).rem_euclid(2) == 0) {
        for x2 in (-box_radius..=box_radius).filter(|x| (x - a2).rem_euclid(2) == 0) {
            let s = x1 * x1 + x2 * x2;
            if s > n as i64 {
                sum += (-std::f64::consts::PI * lambda * s as f64 / 4.0).exp();
            }
        }
    }
    // integer vectors with |x|_∞ = k > box_radius number 8k and have |x|² ≥ k²
    let mut k = box_radius + 1;
    loop {
        let t = 8.0 * k as f64 * (-std::f64::consts::PI * lambda * (k * k) as f64 / 4.0).exp();
        sum += t;
        if t == 0.0 || t < sum * 1e-18 {
            return sum;
        }
        k += 1;
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub series: Complex,
    pub lattice: Complex,
    pub deviation: f64,
    pub dropped_bound: f64,
    pub tail_bound: f64,
}

impl ConsistencyReport {
    /// The deviation lies within the combined error bounds.
    pub fn consistent(&self) -> bool {
        self.deviation <= self.dropped_bound + self.tail_bound + 1e-30
    }
}

/// The truncated q-expansion of `θ[m]` evaluated at `Z` against the lattice sum.
pub fn series_numeric_consistency(m: Char, z: &SiegelPoint, n: u32, max_dropped: f64) -> Result<ConsistencyReport> {
    let dropped = dropped_bound(m, z, n);
    if dropped > max_dropped {
        return Err(Error::NotCertifiable { bound: dropped, limit: max_dropped });
    }
    let lattice = theta_eval(m, z, 1e-30)?;
    let series = eval_series(&theta_qexp(m, n), z);
    Ok(ConsistencyReport {
        deviation: series.distance(&lattice.value),
        series,
        lattice: lattice.value,
        dropped_bound: dropped,
        tail_bound: lattice.tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chargeom::{enumerate_even, enumerate_odd};

    fn c(s: &str) -> Char {
        Char::parse(s).unwrap()
    }

    fn jacobi(y: f64) -> f64 {
        (-30i32..=30).map(|n| (-std::f64::consts::PI * y * (n * n) as f64).exp()).sum()
    }

    #[test]
    fn null_value_at_i() {
        let v = theta_eval(c("0000"), &SiegelPoint::scalar(1.0), 1e-20).unwrap();
        let (re, im) = v.value.to_f64();
        assert!((re - 1.1803406).abs() < 1e-6, "{re}");
        assert!((re - jacobi(1.0).powi(2)).abs() < 1e-14);
        assert!(im.abs() < 1e-25);
        assert!(v.tail_bound < 1e-20);
    }

    #[test]
    fn null_value_at_2i() {
        let v = theta_eval(c("0000"), &SiegelPoint::scalar(2.0), 1e-20).unwrap();
        let (re, _) = v.value.to_f64();
        assert!((re - jacobi(2.0).powi(2)).abs() < 1e-14);
        assert!((re - 1.0074837).abs() < 1e-6);
    }

    #[test]
    fn odd_values_vanish() {
        let z = SiegelPoint::from_f64([(0.3, 1.1), (-0.2, 0.25), (0.1, 0.9)]).unwrap();
        for m in enumerate_odd() {
            assert!(theta_eval(m, &z, 1e-20).unwrap().value.abs() < 1e-20, "{m}");
        }
    }

    #[test]
    fn radius_budget() {
        assert!(radius_for(0.5, 1e-30).unwrap() <= MAX_RADIUS);
        assert!(matches!(radius_for(0.01, 1e-20), Err(Error::RadiusTooLarge(r)) if r > MAX_RADIUS));
        let thin = SiegelPoint::diagonal((0.0, 0.01), (0.0, 1.0)).unwrap();
        assert!(matches!(theta_eval(c("0000"), &thin, 1e-20), Err(Error::RadiusTooLarge(_))));
    }

    #[test]
    fn even_series_agree_at_3i() {
        let z = SiegelPoint::scalar(3.0);
        for m in enumerate_even() {
            let r = series_numeric_consistency(m, &z, 12, DROPPED_LIMIT).unwrap();
            assert!(r.deviation < 1e-8, "{m}: {}", r.deviation);
            assert!(r.consistent(), "{m}: {r:?}");
        }
    }

    #[test]
    fn null_series_at_5i() {
        let r = series_numeric_consistency(c("0000"), &SiegelPoint::scalar(5.0), 12, DROPPED_LIMIT).unwrap();
        assert!(r.deviation < 1e-12);
    }

    #[test]
    fn constant_term_approaches_the_cusp() {
        assert!(matches!(
            series_numeric_consistency(c("0000"), &SiegelPoint::scalar(3.0), 0, DROPPED_LIMIT),
            Err(Error::NotCertifiable { .. })
        ));
        let devs: Vec<f64> = [1.0, 2.0, 4.0, 8.0]
            .iter()
            .map(|&y| series_numeric_consistency(c("0000"), &SiegelPoint::scalar(y), 0, 1.0).unwrap().deviation)
            .collect();
        assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
    }

    #[test]
    fn series_with_real_parts() {
        let z = SiegelPoint::from_f64([(0.31, 3.2), (-0.17, 0.4), (0.05, 2.9)]).unwrap();
        for m in enumerate_even() {
            let r = series_numeric_consistency(m, &z, 16, DROPPED_LIMIT).unwrap();
            assert!(r.consistent(), "{m}: {r:?}");
        }
    }
}
