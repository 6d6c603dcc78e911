//! One function per subcommand. Each suite echoes its effective parameters
//! into the report's key-value map, runs the checks, and returns findings
//! plus the per-prime or per-sample CSV table.
//!
//! Check ids are stable wire identifiers; the prefix groups related
//! statements (`L3.x`/`T1.x`/`T2.x` for the bound chain, `S1` for the
//! definitional identities: Parseval's `M_2`, the ensemble limits, the
//! pair-family recursion). The README maps every id to the statement it
//! verifies.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use fekete_core::{
    arc_classify, build_certificate, c_delta, certificate_sweep, empirical_midpoint_fraction,
    fekete, find_roots, gp_sieve_coefficients, large_sieve_check, legendre, littlewood_ensemble_values,
    locate_zeros, m0_from_roots, m0_uniform, mq_uniform, primes_in_range, rudin_shapiro,
    sign_agreements, Certificate, Error, MahlerMethod, Prime, Result, SplitMix64,
    ROOTS_ROUTE_MAX_P,
};

use crate::report::{num, verdict, Finding, Status, Table};

/// Effective-parameter map echoed into the JSON report (sorted keys).
pub type Params = BTreeMap<String, serde_json::Value>;

/// What a suite hands back to the report writer.
pub struct SuiteOutput {
    pub findings: Vec<Finding>,
    pub table: Table,
}

const FULL_CIRCLE: (f64, f64) = (0.0, 2.0 * PI);

/// Nodes for an `M_0` quadrature that tracks the roots route to about
/// `1e-3` relative: 256 nodes per coefficient, floor 2^16. The floor
/// matters — thinner grids miss the near-circle zero spikes of the
/// character polynomials and bias the geometric mean high.
fn m0_nodes(degree: usize) -> usize {
    (256 * degree.max(1)).next_power_of_two().max(1 << 16)
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

fn fmt_err(x: f64) -> String {
    format!("{x:e}")
}

// ---------------------------------------------------------------------------
// gauss

pub fn gauss(pmin: u64, pmax: u64, tol: f64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("pmin".into(), json!(pmin));
    params.insert("pmax".into(), json!(pmax));
    params.insert("tol".into(), json!(tol));
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }

    struct Row {
        p: u64,
        modulus_err: f64,
        signed_err: f64,
        at_one: f64,
    }

    let primes = primes_in_range(pmin, pmax)?;
    let rows: Vec<Row> = primes
        .par_iter()
        .map(|&p| -> Result<Row> {
            let f = fekete(p);
            let sqrt_p = (p.get() as f64).sqrt();
            let root = if p.is_one_mod_four() {
                Complex64::new(sqrt_p, 0.0)
            } else {
                Complex64::new(0.0, sqrt_p)
            };
            let grid = f.eval_roots_of_unity(p.index(), 0.0)?;
            let mut modulus_err = 0.0f64;
            let mut signed_err = 0.0f64;
            for (j, v) in grid.values.iter().enumerate().skip(1) {
                modulus_err = modulus_err.max((v.norm() - sqrt_p).abs());
                let expected = root * f64::from(legendre(j as i64, p));
                signed_err = signed_err.max((v - expected).norm());
            }
            Ok(Row {
                p: p.get(),
                modulus_err,
                signed_err,
                at_one: grid.values[0].norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&["p", "max_modulus_error", "max_signed_error", "at_one_value"]);
    let mut worst_signed = 0.0f64;
    let mut worst_at_one = 0.0f64;
    for r in &rows {
        let sqrt_p = (r.p as f64).sqrt();
        worst_signed = worst_signed.max(r.signed_err / sqrt_p);
        worst_at_one = worst_at_one.max(r.at_one / sqrt_p);
        table.push(vec![
            r.p.to_string(),
            fmt_err(r.modulus_err),
            fmt_err(r.signed_err),
            fmt_err(r.at_one),
        ]);
    }

    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "L3.1-gauss",
                verdict(worst_signed <= tol),
                num(worst_signed),
                Some(0.0),
                Some(tol),
            ),
            Finding::new(
                "L3.1-at-one",
                verdict(worst_at_one <= tol),
                num(worst_at_one),
                Some(0.0),
                Some(tol),
            ),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// mahler

pub fn mahler(
    pmin: u64,
    pmax: u64,
    tol_m2: f64,
    tol_cross: f64,
    params: &mut Params,
) -> Result<SuiteOutput> {
    params.insert("pmin".into(), json!(pmin));
    params.insert("pmax".into(), json!(pmax));
    params.insert("tol_m2".into(), json!(tol_m2));
    params.insert("tol_cross".into(), json!(tol_cross));

    struct Row {
        p: u64,
        m2: f64,
        m2_rel: f64,
        m0_quad: f64,
        m0_roots: Option<f64>,
        cross_gap: Option<f64>,
        ratio: f64,
    }

    let primes = primes_in_range(pmin, pmax)?;
    let rows: Vec<Row> = primes
        .par_iter()
        .map(|&p| -> Result<Row> {
            let f = fekete(p);
            let m2 = mq_uniform(&f, 2.0, FULL_CIRCLE, 2 * p.index() + 2)?.value;
            let m2_exact = ((p.get() - 1) as f64).sqrt();
            let m0_quad = m0_uniform(&f, FULL_CIRCLE, m0_nodes(f.degree()))?.value;
            let (m0_roots, cross_gap) = if p.get() <= ROOTS_ROUTE_MAX_P {
                let via_roots = m0_from_roots(&find_roots(&f)?).value;
                (Some(via_roots), Some((via_roots - m0_quad).abs() / m0_quad))
            } else {
                (None, None)
            };
            Ok(Row {
                p: p.get(),
                m2,
                m2_rel: (m2 - m2_exact).abs() / m2_exact,
                m0_quad,
                m0_roots,
                cross_gap,
                ratio: m0_quad / (p.get() as f64).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&[
        "p",
        "m2",
        "m2_rel_error",
        "m0_quadrature",
        "m0_roots",
        "m0_cross_gap",
        "m0_over_sqrt_p",
    ]);
    let mut worst_m2 = 0.0f64;
    let mut worst_cross: Option<f64> = None;
    let mut min_ratio = f64::INFINITY;
    for r in &rows {
        worst_m2 = worst_m2.max(r.m2_rel);
        if let Some(g) = r.cross_gap {
            worst_cross = Some(worst_cross.unwrap_or(0.0).max(g));
        }
        min_ratio = min_ratio.min(r.ratio);
        table.push(vec![
            r.p.to_string(),
            fmt(r.m2),
            fmt_err(r.m2_rel),
            fmt(r.m0_quad),
            r.m0_roots.map(fmt).unwrap_or_default(),
            r.cross_gap.map(fmt_err).unwrap_or_default(),
            fmt(r.ratio),
        ]);
    }

    let cross_finding = match worst_cross {
        Some(worst) => Finding::new(
            "S1-m0-cross",
            verdict(worst <= tol_cross),
            num(worst),
            Some(0.0),
            Some(tol_cross),
        ),
        // No prime in range is small enough for the roots route; nothing
        // was crosschecked, so there is nothing to pass or fail.
        None => Finding::new("S1-m0-cross", Status::Observe, None, Some(0.0), Some(tol_cross)),
    };

    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "S1-m2",
                verdict(worst_m2 <= tol_m2),
                num(worst_m2),
                Some(0.0),
                Some(tol_m2),
            ),
            cross_finding,
            Finding::new("T1.2-m0-floor", Status::Observe, num(min_ratio), Some(0.5), None),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// zeros

pub fn zeros(
    pmin: u64,
    pmax: u64,
    refinement: usize,
    bisect_tol: f64,
    params: &mut Params,
) -> Result<SuiteOutput> {
    params.insert("pmin".into(), json!(pmin));
    params.insert("pmax".into(), json!(pmax));
    params.insert("refinement".into(), json!(refinement));
    params.insert("bisect_tol".into(), json!(bisect_tol));

    struct Row {
        p: u64,
        count: usize,
        floor: u64,
        fraction: f64,
        signs: u64,
    }

    let primes = primes_in_range(pmin, pmax)?;
    let rows: Vec<Row> = primes
        .par_iter()
        .map(|&p| -> Result<Row> {
            let zeros = locate_zeros(p, refinement, bisect_tol)?;
            Ok(Row {
                p: p.get(),
                count: zeros.len(),
                floor: (p.get() - 3) / 2,
                fraction: zeros.len() as f64 / p.get() as f64,
                signs: sign_agreements(p),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&["p", "zero_count", "floor", "fraction", "sign_agreements"]);
    let mut worst_margin = i64::MAX;
    let mut sign_mismatches = 0u64;
    for r in &rows {
        worst_margin = worst_margin.min(r.count as i64 - r.floor as i64);
        if r.signs != r.floor {
            sign_mismatches += 1;
        }
        table.push(vec![
            r.p.to_string(),
            r.count.to_string(),
            r.floor.to_string(),
            fmt(r.fraction),
            r.signs.to_string(),
        ]);
    }
    // The asymptotic zero fraction is best seen at the largest prime.
    let kappa = rows.last().map(|r| r.fraction);

    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "L3.7-count",
                verdict(worst_margin >= 0),
                num(worst_margin as f64),
                Some(0.0),
                None,
            ),
            Finding::new(
                "L3.7-signs",
                verdict(sign_mismatches == 0),
                num(sign_mismatches as f64),
                Some(0.0),
                None,
            ),
            Finding::new("S1-kappa", Status::Observe, kappa.and_then(num), Some(0.5), None),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// arcs

pub fn arcs(p: u64, delta: f64, gamma: f64, eta: f64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("p".into(), json!(p));
    params.insert("delta".into(), json!(delta));
    params.insert("gamma".into(), json!(gamma));
    params.insert("eta".into(), json!(eta));

    let prime = Prime::new(p)?;
    let classification = arc_classify(prime, delta, gamma, eta)?;
    let zeros = locate_zeros(prime, 4, 1e-12)?;

    // Cross-module consistency: an arc certified zero-free on its inner
    // window must not contain a located zero there. Zeros within the
    // bisection slack of the window edge are not counted as violations.
    let pf = p as f64;
    let half_window = eta / (2.0 * PI * pf);
    let edge_slack = 2e-12;
    let mut violations = 0usize;
    for &t in &zeros {
        let k = (t * pf).floor() as usize;
        if k >= classification.reports.len() {
            continue;
        }
        let center = (2 * k + 1) as f64 / (2.0 * pf);
        if classification.reports[k].nonvanishing && (t - center).abs() < half_window - edge_slack
        {
            violations += 1;
        }
    }

    let mut table = Table::new(&["k", "center_value", "deriv_max", "nonvanishing", "has_zero_in_ik"]);
    for r in &classification.reports {
        table.push(vec![
            r.k.to_string(),
            fmt(r.center_value),
            fmt(r.deriv_max),
            r.nonvanishing.to_string(),
            r.has_zero_in_ik.to_string(),
        ]);
    }

    let loud_arcs = classification.reports.len() - classification.n_small_deriv;
    let budget = pf / 16.0;
    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "L3.10-arc-budget",
                verdict(loud_arcs as f64 <= budget),
                num(loud_arcs as f64),
                Some(budget),
                None,
            ),
            Finding::new(
                "L3.11-qualifying",
                Status::Observe,
                num(classification.n_qualifying as f64 / pf),
                None,
                None,
            ),
            Finding::new(
                "L3.11-consistency",
                verdict(violations == 0),
                num(violations as f64),
                Some(0.0),
                None,
            ),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// sieve

pub fn sieve(cases: usize, pmax: u64, seed: u64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("cases".into(), json!(cases));
    params.insert("pmax".into(), json!(pmax));

    let mut table = Table::new(&["kind", "id", "terms", "angles", "lhs", "rhs", "lhs_over_rhs", "holds"]);
    let mut rng = SplitMix64::new(seed);
    let mut worst_random = 0.0f64;
    let mut random_failures = 0usize;
    for case in 0..cases {
        let n = (rng.next_u64() % 13) as usize;
        let coeffs: Vec<Complex64> = (0..2 * n + 1)
            .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
            .collect();
        let m = 1 + (rng.next_u64() % 20) as usize;
        let mut angles: Vec<f64> = (0..m).map(|_| 2.0 * PI * rng.next_f64()).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let check = large_sieve_check(&coeffs, &angles)?;
        worst_random = worst_random.max(check.lhs / check.rhs);
        if !check.holds {
            random_failures += 1;
        }
        table.push(vec![
            "random".into(),
            case.to_string(),
            (2 * n + 1).to_string(),
            angles.len().to_string(),
            fmt(check.lhs),
            fmt(check.rhs),
            fmt(check.lhs / check.rhs),
            check.holds.to_string(),
        ]);
    }

    // The derivative-chain instance: slot-weighted character coefficients
    // sampled at the p arc centers.
    let mut worst_chain = 0.0f64;
    let mut chain_failures = 0usize;
    for &p in &primes_in_range(3, pmax)? {
        let coeffs = gp_sieve_coefficients(p);
        let centers: Vec<f64> = (0..p.get())
            .map(|k| (2 * k + 1) as f64 * PI / p.get() as f64)
            .collect();
        let check = large_sieve_check(&coeffs, &centers)?;
        worst_chain = worst_chain.max(check.lhs / check.rhs);
        if !check.holds {
            chain_failures += 1;
        }
        table.push(vec![
            "gp".into(),
            p.get().to_string(),
            coeffs.len().to_string(),
            centers.len().to_string(),
            fmt(check.lhs),
            fmt(check.rhs),
            fmt(check.lhs / check.rhs),
            check.holds.to_string(),
        ]);
    }

    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "L3.6-sieve-random",
                verdict(random_failures == 0),
                num(worst_random),
                Some(1.0),
                Some(1e-9),
            ),
            Finding::new(
                "L3.6-sieve-gp",
                verdict(chain_failures == 0),
                num(worst_chain),
                Some(1.0),
                Some(1e-9),
            ),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// cdelta

pub fn cdelta(delta: f64, tol: f64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("delta".into(), json!(delta));
    params.insert("tol".into(), json!(tol));

    let plus = c_delta(delta, tol)?;
    let minus = c_delta(-delta, tol)?;
    params.insert("value".into(), json!(plus.value));
    params.insert("truncation_K".into(), json!(plus.truncation_k));
    params.insert("cutoff_X".into(), json!(plus.cutoff_x));

    // Each side is accurate to about `tol`, so the reflection identity
    // c(delta) + c(-delta) = 1 can drift by a small multiple of it.
    let reflection_gap = (plus.value + minus.value - 1.0).abs();
    let reflection_tol = 4.0 * tol;

    let mut table = Table::new(&["delta", "value", "truncation_K", "cutoff_X", "quad_tol"]);
    for side in [&plus, &minus] {
        table.push(vec![
            fmt(side.delta),
            fmt(side.value),
            side.truncation_k.to_string(),
            fmt(side.cutoff_x),
            fmt_err(side.quad_tol),
        ]);
    }

    Ok(SuiteOutput {
        findings: vec![
            Finding::new("L3.8-value", Status::Observe, num(plus.value), None, Some(tol)),
            Finding::new(
                "L3.8-reflection",
                verdict(reflection_gap <= reflection_tol),
                num(reflection_gap),
                Some(0.0),
                Some(reflection_tol),
            ),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// distribution

pub fn distribution(
    p: u64,
    delta: f64,
    tol: f64,
    band: f64,
    params: &mut Params,
) -> Result<SuiteOutput> {
    params.insert("p".into(), json!(p));
    params.insert("delta".into(), json!(delta));
    params.insert("tol".into(), json!(tol));
    params.insert("band".into(), json!(band));
    if !(band > 0.0) {
        return Err(Error::Domain(format!("band must be positive, got {band}")));
    }

    let prime = Prime::new(p)?;
    let empirical = empirical_midpoint_fraction(prime, delta)?;
    let limit = c_delta(delta, tol)?;
    let gap = (empirical.fraction - limit.value).abs();

    let mut table = Table::new(&["p", "delta", "below", "ties", "fraction", "c_delta", "abs_gap"]);
    table.push(vec![
        p.to_string(),
        fmt(delta),
        empirical.below.to_string(),
        empirical.ties.to_string(),
        fmt(empirical.fraction),
        fmt(limit.value),
        fmt_err(gap),
    ]);

    Ok(SuiteOutput {
        findings: vec![Finding::new(
            "L3.8-fraction",
            verdict(gap <= band),
            num(empirical.fraction),
            num(limit.value),
            Some(band),
        )],
        table,
    })
}

// ---------------------------------------------------------------------------
// ensemble

/// Euler-Mascheroni constant (not yet stable in `std`).
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Limit of the normalized measure mean: `Gamma(1 + q/2)^{1/q}` for
/// `q > 0`, its `q -> 0` limit `e^{-gamma/2}` for the Mahler case.
fn ensemble_limit(q: f64) -> f64 {
    if q == 0.0 {
        (-EULER_GAMMA / 2.0).exp()
    } else {
        statrs::function::gamma::gamma(1.0 + q / 2.0).powf(1.0 / q)
    }
}

pub fn ensemble(
    n: usize,
    q: f64,
    samples: usize,
    seed: u64,
    params: &mut Params,
) -> Result<SuiteOutput> {
    params.insert("n".into(), json!(n));
    params.insert("q".into(), json!(q));
    params.insert("samples".into(), json!(samples));

    let values = littlewood_ensemble_values(n, q, samples, seed)?;
    let mean = values.iter().sum::<f64>() / samples as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (samples as f64 - 1.0);
    let stderr = (var / samples as f64).sqrt();

    let limit = ensemble_limit(q);
    let tol = 0.05 * limit;
    // The limit is asymptotic in n; at small degrees or thin sampling the
    // band is not guaranteed, so record without judging.
    let in_banded_regime = n >= 32 && samples >= 1000;
    let status = if in_banded_regime {
        verdict((mean - limit).abs() <= tol)
    } else {
        Status::Observe
    };

    let mut table = Table::new(&["sample", "value"]);
    for (i, v) in values.iter().enumerate() {
        table.push(vec![i.to_string(), fmt(*v)]);
    }

    Ok(SuiteOutput {
        findings: vec![
            Finding::new("S1-ensemble", status, num(mean), num(limit), Some(tol)),
            Finding::new("S1-ensemble-stderr", Status::Observe, num(stderr), None, None),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// rs

pub fn rs(nmax: u32, tol: f64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("nmax".into(), json!(nmax));
    params.insert("tol".into(), json!(tol));
    if nmax == 0 {
        return Err(Error::Domain("need nmax >= 1".into()));
    }

    let mut table = Table::new(&["n", "degree", "flatness_rel_error", "m0", "m0_over_sqrt_cap"]);
    let mut worst_identity = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    for n in 1..=nmax {
        let (p_n, q_n) = rudin_shapiro(n)?;
        let cap = 1usize << n;
        let grid_p = p_n.eval_roots_of_unity(4 * cap, 0.0)?;
        let grid_q = q_n.eval_roots_of_unity(4 * cap, 0.0)?;
        let target = (2 * cap) as f64;
        let rel = grid_p
            .values
            .iter()
            .zip(&grid_q.values)
            .map(|(a, b)| ((a.norm_sqr() + b.norm_sqr()) - target).abs() / target)
            .fold(0.0, f64::max);
        let m0 = m0_uniform(&p_n, FULL_CIRCLE, m0_nodes(p_n.degree()))?.value;
        let ratio = m0 / (cap as f64).sqrt();
        worst_identity = worst_identity.max(rel);
        min_ratio = min_ratio.min(ratio);
        table.push(vec![
            n.to_string(),
            (cap - 1).to_string(),
            fmt_err(rel),
            fmt(m0),
            fmt(ratio),
        ]);
    }

    Ok(SuiteOutput {
        findings: vec![
            Finding::new(
                "S1-rs-identity",
                verdict(worst_identity <= tol),
                num(worst_identity),
                Some(0.0),
                Some(tol),
            ),
            Finding::new(
                "T1.5-rs-floor",
                verdict(min_ratio >= 0.5),
                num(min_ratio),
                Some(0.5),
                None,
            ),
        ],
        table,
    })
}

// ---------------------------------------------------------------------------
// certify / report

fn certificate_header() -> [&'static str; 15] {
    [
        "p",
        "m",
        "g_at_one",
        "delta",
        "n_big_center",
        "eta",
        "k_zeros",
        "gauss_product",
        "bound",
        "direct_m0",
        "m0_method",
        "m0_crosscheck_gap",
        "ratio",
        "holds",
        "degenerate",
    ]
}

fn certificate_row(c: &Certificate) -> Vec<String> {
    let method = match c.m0_method {
        MahlerMethod::UniformQuadrature => "uniform_quadrature",
        MahlerMethod::RootsJensen => "roots_jensen",
        MahlerMethod::ProductBound => "product_bound",
    };
    vec![
        c.p.to_string(),
        c.m.to_string(),
        c.g_at_one.to_string(),
        fmt(c.delta),
        c.n_big_center.to_string(),
        fmt(c.eta),
        c.k_zeros.to_string(),
        fmt(c.gauss_product),
        fmt(c.bound),
        fmt(c.direct_m0),
        method.to_string(),
        fmt_err(c.m0_crosscheck_gap),
        fmt(c.ratio),
        c.holds.to_string(),
        c.degenerate.to_string(),
    ]
}

/// Findings shared by `certify` (one prime) and `report` (a sweep). The
/// margin checks `ratio > 1/2` and `k/p >= 1/4` are the measured shape of
/// the asymptotic statement; below p = 101 they are recorded without
/// pass/fail semantics because the statement makes no promise there.
fn certificate_findings(
    smallest_p: u64,
    all_hold: bool,
    n_holds: usize,
    n_expected: usize,
    min_ratio: f64,
    min_kzero_fraction: f64,
    max_multiplicity: u32,
) -> Vec<Finding> {
    let in_margin_regime = smallest_p >= 101;
    let margin_status = |ok: bool| {
        if in_margin_regime {
            verdict(ok)
        } else {
            Status::Observe
        }
    };
    vec![
        Finding::new(
            "T2.1-certificate",
            verdict(all_hold),
            num(n_holds as f64),
            Some(n_expected as f64),
            None,
        ),
        Finding::new(
            "T2.1-ratio",
            margin_status(min_ratio > 0.5),
            num(min_ratio),
            Some(0.5),
            None,
        ),
        Finding::new(
            "T2.1-kzeros",
            margin_status(min_kzero_fraction >= 0.25),
            num(min_kzero_fraction),
            Some(0.25),
            None,
        ),
        Finding::new(
            "T2.1-multiplicity",
            Status::Observe,
            num(f64::from(max_multiplicity)),
            None,
            None,
        ),
    ]
}

pub fn certify(p: u64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("p".into(), json!(p));
    let prime = Prime::new(p)?;
    let cert = build_certificate(prime)?;
    params.insert(
        "certificate".into(),
        serde_json::to_value(&cert).expect("certificate fields are finite"),
    );

    let mut table = Table::new(&certificate_header());
    table.push(certificate_row(&cert));

    let mut findings = certificate_findings(
        cert.p,
        cert.holds,
        usize::from(cert.holds),
        1,
        cert.ratio,
        cert.k_zeros as f64 / cert.p as f64,
        cert.m,
    );
    if cert.degenerate {
        findings.push(Finding::new(
            "T2.1-degenerate",
            Status::Observe,
            Some(1.0),
            None,
            None,
        ));
    }
    Ok(SuiteOutput { findings, table })
}

pub fn sweep_report(pmin: u64, pmax: u64, params: &mut Params) -> Result<SuiteOutput> {
    params.insert("pmin".into(), json!(pmin));
    params.insert("pmax".into(), json!(pmax));

    let sweep = certificate_sweep(pmin, pmax)?;
    for (p, message) in &sweep.errors {
        eprintln!("certificate construction failed at p={p}: {message}");
    }

    let mut table = Table::new(&certificate_header());
    for c in &sweep.certificates {
        table.push(certificate_row(c));
    }

    let built = sweep.certificates.len();
    let expected = built + sweep.errors.len();
    let all_hold = sweep.errors.is_empty() && built > 0 && sweep.n_holds == built;
    Ok(SuiteOutput {
        findings: certificate_findings(
            pmin.max(11),
            all_hold,
            sweep.n_holds,
            expected,
            sweep.min_ratio,
            sweep.min_kzero_fraction,
            sweep.max_multiplicity,
        ),
        table,
    })
}
