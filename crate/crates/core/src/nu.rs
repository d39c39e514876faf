//! Nikiforov-Uvarov reduction of
//! `psi'' + (tau~/sigma) psi' + (sigma~/sigma^2) psi = 0`.
//!
//! With `pi = (sigma' - tau~)/2 ± sqrt(((sigma' - tau~)/2)^2 - sigma~ + k sigma)`
//! linear, `tau = tau~ + 2 pi` and `lambda = k + pi'`, polynomial solutions
//! exist when `lambda = lambda_n = -n tau' - n(n-1)/2 sigma''`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on the perfect-square (zero discriminant) condition.
pub const PERFECT_SQUARE_TOL: f64 = 1e-10;

/// `c2 z^2 + c1 z + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Quadratic {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }

    pub fn eval(&self, z: f64) -> f64 {
        (self.c2 * z + self.c1) * z + self.c0
    }

    pub fn derivative(&self) -> Linear {
        Linear::new(2.0 * self.c2, self.c1)
    }

    pub fn is_zero(&self) -> bool {
        self.c2 == 0.0 && self.c1 == 0.0 && self.c0 == 0.0
    }
}

/// `slope z + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Linear {
    pub slope: f64,
    pub intercept: f64,
}

impl Linear {
    pub fn new(slope: f64, intercept: f64) -> Self {
        Self { slope, intercept }
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.slope * z + self.intercept
    }

    /// Zero of the polynomial, if it has exactly one.
    pub fn root(&self) -> Option<f64> {
        (self.slope != 0.0).then(|| -self.intercept / self.slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NUProblem {
    pub sigma: Quadratic,
    pub sigma_tilde: Quadratic,
    pub tau_tilde: Linear,
    pub interval: (f64, f64),
}

impl NUProblem {
    pub fn new(
        sigma: Quadratic,
        sigma_tilde: Quadratic,
        tau_tilde: Linear,
        interval: (f64, f64),
    ) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::InvalidParameter("sigma must not vanish".into()));
        }
        if !(interval.0 < interval.1) {
            return Err(Error::InvalidParameter(format!(
                "empty interval ({}, {})",
                interval.0, interval.1
            )));
        }
        Ok(Self {
            sigma,
            sigma_tilde,
            tau_tilde,
            interval,
        })
    }

    /// The radial Woods-Saxon equation in `z = 1/(1 + e^((r-R0)/a))`:
    /// `sigma = z(1-z)`, `sigma~ = -eps^2 + beta^2 z - gamma^2 z^2`, `tau~ = 1 - 2z`.
    pub fn woods_saxon(eps2: f64, beta2: f64, gamma2: f64) -> Self {
        Self {
            sigma: Quadratic::new(-1.0, 1.0, 0.0),
            sigma_tilde: Quadratic::new(-gamma2, beta2, -eps2),
            tau_tilde: Linear::new(-2.0, 1.0),
            interval: (0.0, 1.0),
        }
    }

    /// `(sigma' - tau~)/2`.
    fn half_difference(&self) -> Linear {
        let ds = self.sigma.derivative();
        Linear::new(
            0.5 * (ds.slope - self.tau_tilde.slope),
            0.5 * (ds.intercept - self.tau_tilde.intercept),
        )
    }

    /// Radicand under the square root at fixed `k`.
    fn radicand(&self, k: f64) -> Quadratic {
        let base = self.radicand_base();
        Quadratic::new(
            base.c2 + k * self.sigma.c2,
            base.c1 + k * self.sigma.c1,
            base.c0 + k * self.sigma.c0,
        )
    }

    /// `((sigma' - tau~)/2)^2 - sigma~` (the k-independent part).
    fn radicand_base(&self) -> Quadratic {
        let p = self.half_difference();
        Quadratic::new(
            p.slope * p.slope - self.sigma_tilde.c2,
            2.0 * p.slope * p.intercept - self.sigma_tilde.c1,
            p.intercept * p.intercept - self.sigma_tilde.c0,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NUBranch {
    pub k: f64,
    pub pi: Linear,
    /// Sign in front of the square root.
    pub sign: i8,
    pub tau: Linear,
    pub lambda: f64,
}

/// Coefficients `(A, B, C)` of the quadratic in `k` whose roots make the
/// radicand's discriminant vanish.
fn k_equation(problem: &NUProblem) -> (f64, f64, f64) {
    let u = problem.radicand_base();
    let s = problem.sigma;
    let a = s.c1 * s.c1 - 4.0 * s.c2 * s.c0;
    let b = 2.0 * u.c1 * s.c1 - 4.0 * (u.c2 * s.c0 + s.c2 * u.c0);
    let c = u.c1 * u.c1 - 4.0 * u.c2 * u.c0;
    (a, b, c)
}

pub fn nu_k_candidates(problem: &NUProblem) -> Result<Vec<f64>> {
    let (a, b, c) = k_equation(problem);
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Err(Error::DegenerateProblem);
    }
    let tiny = 1e-14 * scale;
    if a.abs() <= tiny {
        if b.abs() <= tiny {
            // Constant non-zero discriminant: no k works.
            return Ok(Vec::new());
        }
        return Ok(vec![-c / b]);
    }
    let disc = b * b - 4.0 * a * c;
    let disc_scale = (b * b).max((4.0 * a * c).abs());
    if disc < 0.0 {
        if disc.abs() <= PERFECT_SQUARE_TOL * disc_scale {
            return Ok(vec![-b / (2.0 * a)]);
        }
        return Ok(Vec::new());
    }
    if disc <= PERFECT_SQUARE_TOL * disc_scale {
        return Ok(vec![-b / (2.0 * a)]);
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let (k1, k2) = if q == 0.0 {
        (0.0, 0.0)
    } else {
        (q / a, c / q)
    };
    let mut ks = vec![k1, k2];
    ks.sort_by(f64::total_cmp);
    Ok(ks)
}

/// `pi(z)` for a perfect-square `k` and a choice of root sign.
pub fn nu_pi_for_k(problem: &NUProblem, k: f64, sign: i8) -> Result<Linear> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!("sign must be ±1, got {sign}")));
    }
    let p = problem.half_difference();
    let r = problem.radicand(k);
    let disc = r.c1 * r.c1 - 4.0 * r.c2 * r.c0;
    // Magnitude of the terms the radicand is assembled from. Cancellation
    // between them leaves rounding noise of this size in every coefficient.
    let base = problem.radicand_base();
    let sigma = problem.sigma;
    let natural = [
        base.c2,
        base.c1,
        base.c0,
        k * sigma.c2,
        k * sigma.c1,
        k * sigma.c0,
    ]
    .iter()
    .fold(0.0f64, |m, v| m.max(v.abs()));
    if natural == 0.0 {
        return Ok(p);
    }
    if disc.abs() > PERFECT_SQUARE_TOL * natural * natural {
        return Err(Error::NotPerfectSquare { k, discriminant: disc });
    }
    let s = f64::from(sign);
    // Leading coefficient vanishes: the radicand is the constant r0.
    if r.c2.abs() <= 1e-12 * natural {
        if r.c0 < 0.0 {
            return Err(Error::NotPerfectSquare { k, discriminant: disc });
        }
        return Ok(Linear::new(p.slope, p.intercept + s * r.c0.sqrt()));
    }
    if r.c2 < 0.0 {
        // r2 (z + r1/(2 r2))^2 with r2 < 0 has no real square root.
        return Err(Error::NotPerfectSquare { k, discriminant: disc });
    }
    let root = r.c2.sqrt();
    Ok(Linear::new(
        p.slope + s * root,
        p.intercept + s * r.c1 / (2.0 * root),
    ))
}

fn make_branch(problem: &NUProblem, k: f64, sign: i8) -> Result<NUBranch> {
    let pi = nu_pi_for_k(problem, k, sign)?;
    let tau = Linear::new(
        problem.tau_tilde.slope + 2.0 * pi.slope,
        problem.tau_tilde.intercept + 2.0 * pi.intercept,
    );
    Ok(NUBranch {
        k,
        pi,
        sign,
        tau,
        lambda: k + pi.slope,
    })
}

/// `Phi = exp(∫ pi/sigma)` behaves like `|z - e|^(pi(e)/sigma'(e))` near a
/// simple zero `e` of sigma; it has to stay finite there.
fn phi_finite_at_endpoints(problem: &NUProblem, pi: &Linear) -> bool {
    let ds = problem.sigma.derivative();
    let scale = problem.sigma.c2.abs() + problem.sigma.c1.abs() + problem.sigma.c0.abs();
    [problem.interval.0, problem.interval.1].iter().all(|&e| {
        if !e.is_finite() || problem.sigma.eval(e).abs() > 1e-12 * scale.max(1.0) {
            return true;
        }
        let slope = ds.eval(e);
        if slope == 0.0 {
            return true;
        }
        pi.eval(e) / slope >= -1e-12
    })
}

fn branch_admissible(problem: &NUProblem, branch: &NUBranch) -> bool {
    if !(branch.tau.slope < 0.0) {
        return false;
    }
    let Some(root) = branch.tau.root() else {
        return false;
    };
    root > problem.interval.0 && root < problem.interval.1 && phi_finite_at_endpoints(problem, &branch.pi)
}

/// Picks the unique branch with `tau' < 0`, the zero of `tau` inside the
/// interval and a finite `Phi` at the interval ends.
pub fn nu_select_branch(problem: &NUProblem) -> Result<NUBranch> {
    let mut admissible: Vec<NUBranch> = Vec::new();
    for k in nu_k_candidates(problem)? {
        for sign in [1i8, -1] {
            let Ok(branch) = make_branch(problem, k, sign) else {
                continue;
            };
            if !branch_admissible(problem, &branch) {
                continue;
            }
            let duplicate = admissible.iter().any(|b| {
                (b.pi.slope - branch.pi.slope).abs() <= 1e-12 * (1.0 + b.pi.slope.abs())
                    && (b.pi.intercept - branch.pi.intercept).abs()
                        <= 1e-12 * (1.0 + b.pi.intercept.abs())
                    && (b.k - branch.k).abs() <= 1e-12 * (1.0 + b.k.abs())
            });
            if !duplicate {
                admissible.push(branch);
            }
        }
    }
    match admissible.len() {
        0 => Err(Error::NoValidBranch),
        1 => Ok(admissible[0]),
        count => Err(Error::AmbiguousBranch { count }),
    }
}

/// `lambda_n = -n tau' - n(n-1)/2 sigma''`.
pub fn nu_lambda_n(branch: &NUBranch, problem: &NUProblem, n: u32) -> f64 {
    let n = f64::from(n);
    -n * branch.tau.slope - 0.5 * n * (n - 1.0) * 2.0 * problem.sigma.c2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const Q: f64 = 0.173_205_080_756_887_72; // sqrt(0.03)

    fn instance() -> NUProblem {
        NUProblem::woods_saxon(0.04, 0.03, 0.02)
    }

    #[test]
    fn k_candidates_match_closed_form() {
        let ks = nu_k_candidates(&instance()).unwrap();
        assert_eq!(ks.len(), 2);
        let (eps, b2) = (0.2, 0.03);
        assert_relative_eq!(ks[0], b2 - 2.0 * eps * eps - 2.0 * eps * Q, epsilon = 1e-14);
        assert_relative_eq!(ks[1], b2 - 2.0 * eps * eps + 2.0 * eps * Q, epsilon = 1e-14);
        assert!((ks[0] + 0.11928).abs() < 5e-6);
        assert!((ks[1] - 0.01928).abs() < 5e-6);
    }

    #[test]
    fn free_instance_has_double_zero_k() {
        let p = NUProblem::woods_saxon(0.0, 0.0, 0.0);
        assert_eq!(nu_k_candidates(&p).unwrap(), vec![0.0]);
        // sigma' = tau~ here, so the radicand is k sigma and pi vanishes at k = 0.
        let pi = nu_pi_for_k(&p, 0.0, 1).unwrap();
        assert_eq!(pi, Linear::new(0.0, 0.0));
    }

    #[test]
    fn no_real_k() {
        // sigma = z, sigma~ = 1 - z^2, tau~ = 1: radicand z^2 + k z - 1 has
        // discriminant k^2 + 4 > 0 for every real k.
        let p = NUProblem::new(
            Quadratic::new(0.0, 1.0, 0.0),
            Quadratic::new(-1.0, 0.0, 1.0),
            Linear::new(0.0, 1.0),
            (0.0, 1.0),
        )
        .unwrap();
        let (a, b, c) = k_equation(&p);
        assert!(b * b - 4.0 * a * c < 0.0);
        assert!(nu_k_candidates(&p).unwrap().is_empty());
        // sigma = 1, sigma~ = z, tau~ = 0: discriminant is the constant 1.
        let p = NUProblem::new(
            Quadratic::new(0.0, 0.0, 1.0),
            Quadratic::new(0.0, 1.0, 0.0),
            Linear::new(0.0, 0.0),
            (0.0, 1.0),
        )
        .unwrap();
        assert!(nu_k_candidates(&p).unwrap().is_empty());
    }

    #[test]
    fn degenerate_problem_detected() {
        // sigma = 1, sigma~ = 0, tau~ = 0: radicand k is constant for every k.
        let p = NUProblem::new(
            Quadratic::new(0.0, 0.0, 1.0),
            Quadratic::new(0.0, 0.0, 0.0),
            Linear::new(0.0, 0.0),
            (0.0, 1.0),
        )
        .unwrap();
        assert_eq!(nu_k_candidates(&p), Err(Error::DegenerateProblem));
    }

    #[test]
    fn invalid_problems_rejected() {
        let s = Quadratic::new(0.0, 0.0, 0.0);
        assert!(NUProblem::new(s, s, Linear::new(0.0, 1.0), (0.0, 1.0)).is_err());
        let s = Quadratic::new(-1.0, 1.0, 0.0);
        assert!(NUProblem::new(s, s, Linear::new(0.0, 1.0), (1.0, 1.0)).is_err());
    }

    #[test]
    fn pi_for_smaller_k() {
        let p = instance();
        let k = nu_k_candidates(&p).unwrap()[0];
        let minus = nu_pi_for_k(&p, k, -1).unwrap();
        assert_relative_eq!(minus.intercept, 0.2, epsilon = 1e-12);
        assert_relative_eq!(minus.slope, -(0.2 + Q), epsilon = 1e-12);
        assert!((minus.slope + 0.373205).abs() < 5e-7);
        let plus = nu_pi_for_k(&p, k, 1).unwrap();
        assert_relative_eq!(plus.intercept, -0.2, epsilon = 1e-12);
        assert_relative_eq!(plus.slope, 0.2 + Q, epsilon = 1e-12);
    }

    #[test]
    fn pi_rejects_non_square_k() {
        let err = nu_pi_for_k(&instance(), 0.5, 1).unwrap_err();
        assert!(matches!(err, Error::NotPerfectSquare { .. }));
        assert!(nu_pi_for_k(&instance(), -0.11928, 2).is_err());
    }

    #[test]
    fn selected_branch_on_instance() {
        let p = instance();
        let b = nu_select_branch(&p).unwrap();
        assert_eq!(b.sign, -1);
        assert_relative_eq!(b.k, 0.03 - 0.08 - 0.4 * Q, epsilon = 1e-13);
        assert_relative_eq!(b.tau.intercept, 1.4, epsilon = 1e-13);
        assert_relative_eq!(b.tau.slope, -2.0 * (1.2 + Q), epsilon = 1e-13);
        assert!((b.tau.slope + 2.74641).abs() < 5e-6);
        assert!((b.tau.root().unwrap() - 0.50975).abs() < 1e-5);
        assert_relative_eq!(b.lambda, 0.03 - 0.08 - 0.4 * Q - 0.2 - Q, epsilon = 1e-13);
        assert!((b.lambda + 0.49249).abs() < 5e-6);
    }

    #[test]
    fn selection_rules_exclude_candidates() {
        let p = instance();
        let k = nu_k_candidates(&p).unwrap();
        // (smaller k, +): Phi ~ z^(-eps) diverges at z = 0.
        let b = make_branch(&p, k[0], 1).unwrap();
        assert!(b.tau.slope > 0.0 || !phi_finite_at_endpoints(&p, &b.pi));
        assert!(!branch_admissible(&p, &b));
        // A tau with positive slope.
        let up = NUBranch {
            tau: Linear::new(1.0, -0.5),
            ..b
        };
        assert!(!branch_admissible(&p, &up));
        // A decreasing tau whose zero lies outside (0, 1).
        let outside = NUBranch {
            tau: Linear::new(-1.0, 2.0),
            pi: Linear::new(-0.1, 0.2),
            ..b
        };
        assert!(!branch_admissible(&p, &outside));
    }

    #[test]
    fn no_valid_branch() {
        let p = NUProblem::new(
            Quadratic::new(0.0, 0.0, 1.0),
            Quadratic::new(0.0, 1.0, 0.0),
            Linear::new(0.0, 0.0),
            (0.0, 1.0),
        )
        .unwrap();
        assert_eq!(nu_select_branch(&p), Err(Error::NoValidBranch));
    }

    #[test]
    fn lambda_n_values() {
        let p = instance();
        let b = nu_select_branch(&p).unwrap();
        assert_eq!(nu_lambda_n(&b, &p, 0), 0.0);
        assert_relative_eq!(nu_lambda_n(&b, &p, 1), 2.0 * (0.2 + Q) + 2.0, epsilon = 1e-13);
        assert!((nu_lambda_n(&b, &p, 1) - 2.74641).abs() < 5e-6);
        assert_relative_eq!(
            nu_lambda_n(&b, &p, 3),
            2.0 * (0.2 + Q) * 3.0 + 12.0,
            epsilon = 1e-13
        );
    }

    proptest! {
        #[test]
        fn branch_reconstruction(eps in 0.01f64..3.0, q in 0.01f64..3.0, gamma2 in 0.001f64..10.0) {
            let beta2 = eps * eps + gamma2 - q * q;
            let p = NUProblem::woods_saxon(eps * eps, beta2, gamma2);
            let b = nu_select_branch(&p).unwrap();
            prop_assert!((b.tau.slope - (p.tau_tilde.slope + 2.0 * b.pi.slope)).abs() <= 1e-12);
            prop_assert!((b.tau.intercept - (p.tau_tilde.intercept + 2.0 * b.pi.intercept)).abs() <= 1e-12);
            prop_assert!((b.lambda - (b.k + b.pi.slope)).abs() <= 1e-12);
        }

        #[test]
        fn quantization_identity(eps in 0.01f64..2.0, q in 0.01f64..2.0, n in 0u32..6) {
            // gamma^2 chosen so that eps + q + n + 1/2 = sqrt(1 + 4 gamma^2)/2.
            let s = 2.0 * (eps + q + f64::from(n)) + 1.0;
            let gamma2 = (s * s - 1.0) / 4.0;
            let beta2 = eps * eps + gamma2 - q * q;
            let p = NUProblem::woods_saxon(eps * eps, beta2, gamma2);
            let b = nu_select_branch(&p).unwrap();
            let gap = b.lambda - nu_lambda_n(&b, &p, n);
            prop_assert!(gap.abs() <= 1e-10 * (1.0 + gamma2), "gap {gap:e}");
            let residual = eps + q + f64::from(n) + 0.5 - (1.0 + 4.0 * gamma2).sqrt() / 2.0;
            prop_assert!(residual.abs() <= 1e-10);
        }
    }
}
