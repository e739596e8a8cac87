use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{l_one_chi, lambda0_solve};
use crate::error::Result;
use crate::exact::{
    chebyshev_lambda, f2_coeff, factorial, hecke_power_expansion,
    hecke_power_expansion_by_division, lambda_one_coefficient, lambda_square_power_expansion,
    petersson_main_coeff, s_beta, s_beta_scaled, s_beta_within_unit, HECKE_MAX, LAMBDA_SQUARE_MAX,
    REFERENCE_S_BETA,
};
use crate::geometry::cap_area;
use crate::harmonic::{
    hilb_approx, legendre_eval, parseval_partial_sums, shc_transform_closed,
    shc_transform_quadrature, transform_table,
};

use super::config::ExperimentConfig;
use super::{Outcome, EXIT_OK, EXIT_VERIFY_FAILED};

/// Cap radii exercised by the transform and Parseval checks.
pub const TEST_RADII: [f64; 4] = [0.05, 0.3, 1.0, 2.5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub group: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub items: Vec<VerifyItem>,
}

struct Suite {
    group: Option<String>,
    items: Vec<VerifyItem>,
}

impl Suite {
    fn check(&mut self, group: &str, name: &str, f: impl FnOnce() -> (bool, String)) {
        if self.group.as_deref().is_some_and(|g| g != group) {
            return;
        }
        let start = Instant::now();
        let (pass, detail) = f();
        self.items.push(VerifyItem {
            group: group.into(),
            name: name.into(),
            pass,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn first_failure(range: impl Iterator<Item = u32>, ok: impl Fn(u32) -> bool) -> Option<u32> {
    range.into_iter().find(|&b| !ok(b))
}

/// `sup |P_m(cos θ) − hilb_approx(m, θ)| / θ²` over `θ ∈ [0.01, 0.5]` on a
/// uniform grid and `1 ≤ m ≤ 1/θ`.
pub fn hilb_regime_sup(steps: usize) -> f64 {
    let mut sup = 0.0f64;
    for i in 0..=steps {
        let theta = 0.01 + (0.5 - 0.01) * i as f64 / steps as f64;
        let m_max = (1.0 / theta).floor() as usize;
        let p = legendre_eval(m_max, theta.cos()).expect("cos θ ∈ [−1, 1]");
        for (m, pm) in p.iter().enumerate() {
            let h = hilb_approx(m, theta).expect("θ inside the Hilb range");
            sup = sup.max((pm - h).abs() / (theta * theta));
        }
    }
    sup
}

/// Smallest degree whose cumulative Parseval sum reaches `(1 − target)·σ`,
/// searching up to `limit`, and the largest overshoot above `σ` seen.
pub fn parseval_reach(radius: f64, target: f64, limit: usize) -> (Option<usize>, f64) {
    let area = cap_area(radius).expect("radius in (0, π]");
    let sums = parseval_partial_sums(&transform_table(radius, limit).expect("radius in (0, π]"));
    let reach = sums.iter().position(|s| *s >= (1.0 - target) * area);
    let overshoot = sums.iter().map(|s| s - area).fold(f64::NEG_INFINITY, f64::max);
    (reach, overshoot)
}

pub fn cmd_verify(config: &ExperimentConfig) -> Result<Outcome> {
    let tol = config.tolerance_scale;
    let mut suite = Suite {
        group: config.group.clone(),
        items: Vec::new(),
    };

    suite.check("exact", "s_beta_table", || {
        let mut bad = Vec::new();
        for (beta, &(num, den)) in REFERENCE_S_BETA.iter().enumerate() {
            let got = s_beta(beta as u32);
            let want = BigRational::new(BigInt::from(num), BigInt::from(den));
            if got != want {
                bad.push(format!(
                    "β={beta}: computed {} reference {}",
                    ratio_str(&got),
                    ratio_str(&want)
                ));
            }
        }
        let matched = REFERENCE_S_BETA.len() - bad.len();
        let mut detail = format!("{matched}/{} match", REFERENCE_S_BETA.len());
        if !bad.is_empty() {
            detail.push_str("; ");
            detail.push_str(&bad.join("; "));
        }
        (bad.is_empty(), detail)
    });

    let beta_max = config.beta_max;
    suite.check("exact", "s_beta_within_unit", || {
        match first_failure(0..=beta_max, s_beta_within_unit) {
            None => (true, format!("|S_β| ≤ 1 for β ≤ {beta_max}")),
            Some(b) => (false, format!("|S_{b}| = {} > 1", ratio_str(&s_beta(b)))),
        }
    });

    suite.check("exact", "s_beta_scaled", || {
        let limit = 300;
        match first_failure(0..=limit, |b| {
            s_beta(b) * BigRational::from_integer(factorial(b))
                == BigRational::from_integer(s_beta_scaled(b))
        }) {
            None => (true, format!("β!·S_β = Σ(−1)^k C(β,k) k!/(⌊k/2⌋!)² for β ≤ {limit}")),
            Some(b) => (false, format!("mismatch at β = {b}")),
        }
    });

    suite.check("exact", "hecke_expansion", || {
        match first_failure(0..=HECKE_MAX, |n| {
            let closed = hecke_power_expansion(n);
            closed.verify() && closed == hecke_power_expansion_by_division(n)
        }) {
            None => (true, format!("λ(p)^n expansion exact for n ≤ {HECKE_MAX}")),
            Some(n) => (false, format!("expansion fails at n = {n}")),
        }
    });

    suite.check("exact", "petersson_main_coeff", || {
        let limit = 200;
        match first_failure(0..=limit, |b| {
            let lhs = lambda_one_coefficient(&chebyshev_lambda(1).pow(b));
            BigRational::from_integer(lhs) == petersson_main_coeff(b)
        }) {
            None => (true, format!("λ(1)-coefficient of λ(p)^β for β ≤ {limit}")),
            Some(b) => (false, format!("mismatch at β = {b}")),
        }
    });

    suite.check("exact", "f2_coeff", || {
        match first_failure(0..=LAMBDA_SQUARE_MAX, |b| {
            let coords = lambda_square_power_expansion(b);
            coords.get(&0).cloned().unwrap_or_default() == f2_coeff(b)
        }) {
            None => (
                true,
                format!("λ(1)-coefficient of λ(p²)^β for β ≤ {LAMBDA_SQUARE_MAX}"),
            ),
            Some(b) => (false, format!("mismatch at β = {b}")),
        }
    });

    suite.check("harmonic", "transform_closed_vs_quadrature", || {
        let limit = 1e-9 * tol;
        let mut worst = 0.0f64;
        for r in TEST_RADII {
            for m in 0..=500 {
                let a = shc_transform_closed(m, r).expect("valid radius");
                let b = shc_transform_quadrature(m, r).expect("valid radius");
                worst = worst.max((a - b).abs());
            }
        }
        (worst <= limit, format!("max difference {worst:e} (tolerance {limit:e})"))
    });

    suite.check("harmonic", "transform_h0", || {
        let limit = 1e-12 * tol;
        let worst = TEST_RADII
            .iter()
            .map(|&r| (shc_transform_closed(0, r).unwrap() - 2.0 * std::f64::consts::PI * (1.0 - r.cos())).abs())
            .fold(0.0, f64::max);
        (worst <= limit, format!("max |h(0) − 2π(1 − cos R)| = {worst:e}"))
    });

    suite.check("harmonic", "parseval", || {
        let mut ok = true;
        let mut parts = Vec::new();
        for r in TEST_RADII {
            let (reach, over) = parseval_reach(r, 1e-3, 50_000);
            let good = reach.is_some() && over <= 1e-9 * tol;
            ok &= good;
            match reach {
                Some(m) => parts.push(format!("R={r}: m={m}, overshoot {over:e}")),
                None => parts.push(format!("R={r}: not reached by m=50000")),
            }
        }
        (ok, parts.join("; "))
    });

    suite.check("harmonic", "hilb_regime", || {
        let sup = hilb_regime_sup(500);
        (sup <= 10.0 * tol, format!("sup |P_m − Hilb|/θ² = {sup:.6}"))
    });

    suite.check("arithmetic", "lambda0", || {
        let l = lambda0_solve();
        let res = ((-l).exp() - l - 0.5 * l * l).abs();
        (
            res <= 1e-13 * tol && format!("{l:.4}") == "0.4912",
            format!("λ₀ = {l:.16}, residual {res:e}"),
        )
    });

    suite.check("arithmetic", "l_one_chi", || {
        use std::f64::consts::PI;
        let a = l_one_chi(4, 1_000_000).expect("valid");
        let b = l_one_chi(3, 1_000_000).expect("valid");
        let ea = (a.value - PI / 4.0).abs();
        let eb = (b.value - PI / (3.0 * 3f64.sqrt())).abs();
        let limit = 1e-5 * tol;
        (
            ea <= limit && eb <= limit,
            format!("|L(1,χ₋₄) − π/4| = {ea:e}, |L(1,χ₋₃) − π/(3√3)| = {eb:e}"),
        )
    });

    let failed = suite.items.iter().filter(|i| !i.pass).count();
    let report = VerifyReport {
        passed: suite.items.len() - failed,
        failed,
        items: suite.items,
    };
    let output = match config.format {
        super::Format::Json => super::to_json(&report),
        super::Format::Csv => {
            let mut s = String::from("group,name,pass,detail\n");
            for i in &report.items {
                s.push_str(&format!(
                    "{},{},{},\"{}\"\n",
                    i.group,
                    i.name,
                    i.pass,
                    i.detail.replace('"', "'")
                ));
            }
            s
        }
    };
    let warnings = report
        .items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| format!("FAILED {}/{}: {}", i.group, i.name, i.detail))
        .collect();
    Ok(Outcome {
        output,
        warnings,
        exit_code: if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
