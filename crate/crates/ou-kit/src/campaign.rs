//! Seeded randomized verification campaigns over rings and configurations.
//!
//! Trials are independent tasks keyed by (check, ring, m, n, trial index,
//! seed); results are merged in deterministic index order, so the same seed
//! and configuration produce a byte-identical report body at any parallelism
//! degree. Wall-clock timings live outside the body. Every recorded
//! counterexample can be re-run standalone through [`replay_counterexample`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::matrix::{Mat, RowVec};
use crate::quadratic::{FormParameterMode, HeisenbergElement, OddQuadraticSpace};
use crate::ring::{check_involution_axioms, Ring, RingDescriptor};
use crate::vaserstein::{
    is_symplectic, psi_tilde, psi_tilde_prime, symplectic_pair, HyperbolicFormData,
};
use crate::words::{
    closed_form_preimage, decompose_elementary, decompose_word, factorize_eta, factorize_theta,
    generator_preimage, ElementaryWord, Side,
};
use crate::{Error, Result};

/// One selectable check suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Axioms,
    Forms,
    ThetaEta,
    Theorem32,
    Decompose,
    Symplectic,
    Diagnostics,
}

impl CheckKind {
    pub fn all() -> Vec<CheckKind> {
        vec![
            CheckKind::Axioms,
            CheckKind::Forms,
            CheckKind::ThetaEta,
            CheckKind::Theorem32,
            CheckKind::Decompose,
            CheckKind::Symplectic,
            CheckKind::Diagnostics,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Axioms => "axioms",
            CheckKind::Forms => "forms",
            CheckKind::ThetaEta => "theta-eta",
            CheckKind::Theorem32 => "theorem32",
            CheckKind::Decompose => "decompose",
            CheckKind::Symplectic => "symplectic",
            CheckKind::Diagnostics => "diagnostics",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckKind> {
        match s {
            "axioms" => Ok(CheckKind::Axioms),
            "forms" => Ok(CheckKind::Forms),
            "theta-eta" => Ok(CheckKind::ThetaEta),
            "theorem32" => Ok(CheckKind::Theorem32),
            "decompose" => Ok(CheckKind::Decompose),
            "symplectic" => Ok(CheckKind::Symplectic),
            "diagnostics" => Ok(CheckKind::Diagnostics),
            other => Err(Error::Config(format!("unknown check `{other}`"))),
        }
    }
}

/// Deliberate defect injection for negative-control runs: flips the sign of
/// the (2,1) entry of ψ̃_r before the recursion product check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    PsiSignFlip,
}

impl Fault {
    pub fn name(&self) -> &'static str {
        match self {
            Fault::PsiSignFlip => "psi-sign",
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fault> {
        match s {
            "psi-sign" => Ok(Fault::PsiSignFlip),
            other => Err(Error::Config(format!("unknown fault `{other}`"))),
        }
    }
}

/// Campaign parameters. The same config and seed reproduce identical report
/// bodies at any `jobs` value.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub rings: Vec<Ring>,
    pub m_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub jobs: usize,
    pub checks: Vec<CheckKind>,
    pub fault: Option<Fault>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            rings: Ring::shipped(),
            m_values: vec![1, 2, 3],
            n_values: vec![0, 1, 2, 3],
            trials: 100,
            seed: 42,
            jobs: 1,
            checks: CheckKind::all(),
            fault: None,
        }
    }
}

/// A failed trial with enough data to re-run it standalone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub ring: String,
    pub m: usize,
    pub n: usize,
    pub trial: usize,
    pub trials: usize,
    pub seed: u64,
    pub fault: Option<String>,
    pub message: String,
    pub inputs: Vec<(String, String)>,
}

/// Result of one (check, ring, m, n) unit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub ring: String,
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub failures: Vec<Counterexample>,
    pub observations: Vec<String>,
}

/// Deterministic part of a campaign report: everything except wall time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportBody {
    pub format_version: u32,
    pub seed: u64,
    pub trials: usize,
    pub rings: Vec<String>,
    pub m_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub checks: Vec<String>,
    pub fault: Option<String>,
    pub results: Vec<CheckReport>,
}

/// Full campaign outcome: deterministic body plus per-unit timings.
#[derive(Debug, Clone)]
pub struct Report {
    pub body: ReportBody,
    pub timings_ms: Vec<(String, u128)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.body.results.iter().all(|r| r.failures.is_empty())
    }

    pub fn total_failures(&self) -> usize {
        self.body.results.iter().map(|r| r.failures.len()).sum()
    }

    /// Canonical JSON of the deterministic body.
    pub fn body_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per unit, for terminal output.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.body.results {
            let state = if r.failures.is_empty() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{state}  {:<11} ring={:<8} m={} n={} trials={} failures={}\n",
                r.check,
                r.ring,
                r.m,
                r.n,
                r.trials,
                r.failures.len()
            ));
            for obs in &r.observations {
                out.push_str(&format!("      note: {obs}\n"));
            }
        }
        out
    }
}

/// FNV-1a mix of the campaign seed and trial coordinates.
fn trial_seed(seed: u64, label: &str, ring: &Ring, m: usize, n: usize, trial: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(&seed.to_le_bytes());
    eat(label.as_bytes());
    eat(ring.to_string().as_bytes());
    eat(&(m as u64).to_le_bytes());
    eat(&(n as u64).to_le_bytes());
    eat(&(trial as u64).to_le_bytes());
    h
}

fn trial_rng(seed: u64, label: &str, ring: &Ring, m: usize, n: usize, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, label, ring, m, n, trial))
}

/// A random product of elementary matrices together with its tracked
/// inverse; always invertible by construction.
pub fn random_invertible(
    ring: &Ring,
    size: usize,
    steps: usize,
    rng: &mut impl Rng,
) -> (Mat, Mat) {
    let mut g = Mat::identity(ring.clone(), size);
    let mut g_inv = Mat::identity(ring.clone(), size);
    if size < 2 {
        return (g, g_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(1..=size);
        let mut j = rng.gen_range(1..=size);
        while j == i {
            j = rng.gen_range(1..=size);
        }
        let a = ring.sample(rng);
        if rng.gen_bool(0.5) {
            g.left_mul_elementary(i, j, &a).expect("valid indices");
            g_inv
                .right_mul_elementary(i, j, &ring.neg(&a))
                .expect("valid indices");
        } else {
            g.right_mul_elementary(i, j, &a).expect("valid indices");
            g_inv
                .left_mul_elementary(i, j, &ring.neg(&a))
                .expect("valid indices");
        }
    }
    (g, g_inv)
}

/// A fixed invertible anti-Hermitian seed of the requested size, with its
/// inverse: ψ̃-blocks for even sizes, and a diag(w) corner over quad:±1 for
/// odd sizes. None when the instance has no such seed.
fn anti_hermitian_seed(ring: &Ring, size: usize) -> Option<(Mat, Mat)> {
    if size % 2 == 0 {
        return Some((
            psi_tilde(ring, size / 2).expect("psi builder"),
            psi_tilde_prime(ring, size / 2).expect("psi builder"),
        ));
    }
    match ring.descriptor() {
        RingDescriptor::Quadratic { disc } if disc.abs() == 1 => {
            let w = ring.from_pair(0.into(), 1.into()).expect("quad has w");
            let w_inv = ring.try_inverse(&w)?;
            let corner = Mat::new(ring.clone(), 1, 1, vec![w]).expect("1x1");
            let corner_inv = Mat::new(ring.clone(), 1, 1, vec![w_inv]).expect("1x1");
            let seed = corner.perp(&psi_tilde(ring, size / 2).expect("psi")).expect("perp");
            let seed_inv = corner_inv
                .perp(&psi_tilde_prime(ring, size / 2).expect("psi"))
                .expect("perp");
            Some((seed, seed_inv))
        }
        _ => None,
    }
}

/// Random invertible anti-Hermitian matrix with its inverse, as the form
/// pullback λ⁻¹·g*·A·g of an anti-Hermitian seed A along a random unimodular
/// g. Returns None when no seed exists for (ring, size).
pub fn random_anti_hermitian(
    ring: &Ring,
    size: usize,
    rng: &mut impl Rng,
) -> Option<(Mat, Mat)> {
    let (seed, seed_inv) = anti_hermitian_seed(ring, size)?;
    let (g, g_inv) = random_invertible(ring, size, 2 * size, rng);
    let li = ring.lambda_inv();
    let phi = g
        .conj_transpose()
        .mul(&seed)
        .and_then(|x| x.mul(&g))
        .expect("shapes agree")
        .scale(&li);
    let phi_inv = g_inv
        .mul(&seed_inv)
        .and_then(|x| x.mul(&g_inv.conj_transpose()))
        .expect("shapes agree")
        .scale(&li);
    debug_assert!(phi.is_anti_hermitian());
    debug_assert!(phi.mul(&phi_inv).expect("shapes").is_identity());
    Some((phi, phi_inv))
}

/// Random invertible alternating matrix with its inverse, for the symplectic
/// construction. Identity-involution rings and even sizes only.
pub fn random_alternating(ring: &Ring, size: usize, rng: &mut impl Rng) -> Option<(Mat, Mat)> {
    if !ring.is_identity_involution() || size == 0 || size % 2 != 0 {
        return None;
    }
    let pair = random_anti_hermitian(ring, size, rng)?;
    debug_assert!(pair.0.is_alternating());
    Some(pair)
}

fn lambda_is_one(ring: &Ring) -> bool {
    ring.is_one(&ring.lambda())
}

#[allow(clippy::too_many_arguments)]
fn make_ce(
    check: CheckKind,
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
    fault: Option<Fault>,
    message: impl Into<String>,
    inputs: Vec<(String, String)>,
) -> Counterexample {
    Counterexample {
        check: check.name().to_string(),
        ring: ring.to_string(),
        m,
        n,
        trial,
        trials,
        seed,
        fault: fault.map(|f| f.name().to_string()),
        message: message.into(),
        inputs,
    }
}

fn random_vec(ring: &Ring, len: usize, rng: &mut impl Rng) -> RowVec {
    RowVec::new(ring.clone(), (0..len).map(|_| ring.sample(rng)).collect())
}

/// Form data with a trial-independent random invertible φ, reproducible from
/// the campaign seed alone.
fn config_form_data(
    seed: u64,
    label: &str,
    ring: &Ring,
    m: usize,
    n: usize,
) -> Result<HyperbolicFormData> {
    let mut rng = trial_rng(seed, label, ring, m, n, usize::MAX);
    let (phi, phi_inv) = random_invertible(ring, n, 2 * n, &mut rng);
    HyperbolicFormData::assemble(ring, m, n, phi, Some(phi_inv))
}

fn config_form_data_anti_hermitian(
    seed: u64,
    label: &str,
    ring: &Ring,
    m: usize,
    n: usize,
) -> Result<Option<HyperbolicFormData>> {
    let mut rng = trial_rng(seed, label, ring, m, n, usize::MAX - 1);
    match random_anti_hermitian(ring, n, &mut rng) {
        Some((phi, phi_inv)) => Ok(Some(HyperbolicFormData::assemble(
            ring,
            m,
            n,
            phi,
            Some(phi_inv),
        )?)),
        None => Ok(None),
    }
}

/// Runs one trial of a trial-family check; Ok(None) means the trial passed.
#[allow(clippy::too_many_arguments)]
fn run_trial(
    check: CheckKind,
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
    fault: Option<Fault>,
) -> Result<Option<Counterexample>> {
    match check {
        CheckKind::Forms => {
            if (m, n) == (0, 0) {
                forms_core_trial(ring, trial, trials, seed, fault)
            } else {
                forms_assemble_trial(ring, m, n, trial, trials, seed)
            }
        }
        CheckKind::ThetaEta => theta_eta_trial(ring, m, n, trial, trials, seed),
        CheckKind::Theorem32 => theorem32_trial(ring, m, n, trial, trials, seed),
        CheckKind::Decompose => decompose_trial(ring, m, n, trial, trials, seed),
        CheckKind::Symplectic => symplectic_trial(ring, n, trial, trials, seed),
        CheckKind::Axioms | CheckKind::Diagnostics => Err(Error::Config(format!(
            "{} runs as a batch unit, not per-trial",
            check.name()
        ))),
    }
}

fn forms_core_trial(
    ring: &Ring,
    trial: usize,
    trials: usize,
    seed: u64,
    fault: Option<Fault>,
) -> Result<Option<Counterexample>> {
    let mut rng = trial_rng(seed, "forms", ring, 0, 0, trial);
    let fail = |message: String, inputs: Vec<(String, String)>| {
        Ok(Some(make_ce(
            CheckKind::Forms,
            ring,
            0,
            0,
            trial,
            trials,
            seed,
            fault,
            message,
            inputs,
        )))
    };

    // Recursion product at one rank per trial (faultable).
    let r = trial % 7;
    let mut p = psi_tilde(ring, r)?;
    if fault == Some(Fault::PsiSignFlip) && r >= 1 {
        let flipped = ring.neg(p.at(1, 0));
        p.set(1, 0, flipped);
    }
    if !p.mul(&psi_tilde_prime(ring, r)?)?.is_identity() {
        return fail(
            "psi_tilde(r) * psi_tilde_prime(r) != I".into(),
            vec![("r".into(), r.to_string())],
        );
    }

    // Heisenberg group laws on the rank-2 hyperbolic space.
    let space = OddQuadraticSpace::hyperbolic(ring, 2, None, FormParameterMode::Max)?;
    let dim = space.dim();
    let za = HeisenbergElement::new(random_vec(ring, dim, &mut rng), ring.sample(&mut rng));
    let zb = HeisenbergElement::new(random_vec(ring, dim, &mut rng), ring.sample(&mut rng));
    let zc = HeisenbergElement::new(random_vec(ring, dim, &mut rng), ring.sample(&mut rng));
    let assoc_l = space.h_add(&space.h_add(&za, &zb)?, &zc)?;
    let assoc_r = space.h_add(&za, &space.h_add(&zb, &zc)?)?;
    if assoc_l != assoc_r {
        return fail(
            "Heisenberg addition is not associative".into(),
            vec![
                ("z1".into(), za.to_string()),
                ("z2".into(), zb.to_string()),
                ("z3".into(), zc.to_string()),
            ],
        );
    }
    let id = space.h_identity();
    if space.h_add(&za, &id)? != za || space.h_add(&id, &za)? != za {
        return fail("Heisenberg identity fails".into(), vec![("z".into(), za.to_string())]);
    }
    let neg = space.h_neg(&za)?;
    if space.h_add(&za, &neg)? != id || space.h_add(&neg, &za)? != id {
        return fail("Heisenberg inverse fails".into(), vec![("z".into(), za.to_string())]);
    }
    let tr_sum = space.h_trace(&space.h_add(&za, &zb)?)?;
    let tr_parts = ring.add(&space.h_trace(&za)?, &space.h_trace(&zb)?);
    if tr_sum != tr_parts {
        return fail(
            "trace is not a homomorphism".into(),
            vec![("z1".into(), za.to_string()), ("z2".into(), zb.to_string())],
        );
    }
    let s = ring.sample(&mut rng);
    let act_l = space.h_act(&space.h_add(&za, &zb)?, &s)?;
    let act_r = space.h_add(&space.h_act(&za, &s)?, &space.h_act(&zb, &s)?)?;
    if act_l != act_r {
        return fail(
            "R-action does not distribute over the Heisenberg sum".into(),
            vec![
                ("z1".into(), za.to_string()),
                ("z2".into(), zb.to_string()),
                ("s".into(), s.to_string()),
            ],
        );
    }

    // L_min ⊆ L_max on rings that ship a decider.
    if !matches!(ring.descriptor(), RingDescriptor::Twisted) {
        let s = ring.sample(&mut rng);
        let member = HeisenbergElement::new(
            RowVec::zeros(ring.clone(), dim),
            ring.add(&s, &ring.conj(&s)),
        );
        let min_space = OddQuadraticSpace::hyperbolic(ring, 2, None, FormParameterMode::Min)?;
        if !min_space.param_contains(&member)? || !space.param_contains(&member)? {
            return fail(
                "L_min member rejected".into(),
                vec![("zeta".into(), member.to_string())],
            );
        }
    }

    // ESD transvection: basis-line data is admissible by construction.
    let signed = [1i64, -1, 2, -2];
    let i = signed[rng.gen_range(0..4)];
    let j = match i.abs() {
        1 => [2i64, -2][rng.gen_range(0..2)],
        _ => [1i64, -1][rng.gen_range(0..2)],
    };
    let v1 = space.basis_signed(i)?.scale(&ring.sample(&mut rng));
    let v2 = space.basis_signed(j)?.scale(&ring.sample(&mut rng));
    let s = ring.sample(&mut rng);
    let r_par = ring.add(&s, &ring.conj(&s));
    let esd = space.esd_matrix(&v1, &v2, &r_par)?;
    if !space.preserves_form(&esd)? {
        return fail(
            "ESD matrix does not preserve the form".into(),
            vec![
                ("v1".into(), v1.to_string()),
                ("v2".into(), v2.to_string()),
                ("r".into(), r_par.to_string()),
            ],
        );
    }
    if !space.equiv_identity_mod_param(&esd)? {
        return fail(
            "ESD matrix is not identity-equivalent mod the parameter".into(),
            vec![("v1".into(), v1.to_string()), ("v2".into(), v2.to_string())],
        );
    }

    // Short transvections preserve the form.
    let mut jj = signed[rng.gen_range(0..4)];
    while jj == i || jj == -i {
        jj = signed[rng.gen_range(0..4)];
    }
    let t = space.transvection_short(i, jj, &ring.sample(&mut rng))?;
    if !space.preserves_form(&t)? {
        return fail(
            "short transvection does not preserve the form".into(),
            vec![("i".into(), i.to_string()), ("j".into(), jj.to_string())],
        );
    }

    // Long transvection along an isotropic line orthogonal to e_i.
    let other = if i.abs() == 1 { 2i64 } else { 1i64 };
    let lv = space.basis_signed(other)?.scale(&ring.sample(&mut rng));
    let ls = ring.sample(&mut rng);
    let lr = ring.add(&ls, &ring.conj(&ls));
    let lt = space.transvection_long(i, &lv, &lr)?;
    if !space.preserves_form(&lt)? {
        return fail(
            "long transvection does not preserve the form".into(),
            vec![("i".into(), i.to_string()), ("v".into(), lv.to_string())],
        );
    }

    Ok(None)
}

fn forms_assemble_trial(
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let mut rng = trial_rng(seed, "forms-assemble", ring, m, n, trial);
    let use_anti_hermitian = trial % 2 == 1;
    let (phi, phi_inv, tier) = if use_anti_hermitian {
        match random_anti_hermitian(ring, n, &mut rng) {
            Some((p, pi)) => (p, pi, "anti-hermitian"),
            None => {
                let (p, pi) = random_invertible(ring, n, 2 * n, &mut rng);
                (p, pi, "generic")
            }
        }
    } else {
        let (p, pi) = random_invertible(ring, n, 2 * n, &mut rng);
        (p, pi, "generic")
    };
    let phi_is_ah = phi.is_anti_hermitian();
    let data = match HyperbolicFormData::assemble(ring, m, n, phi, Some(phi_inv)) {
        Ok(d) => d,
        Err(e) => {
            return Ok(Some(make_ce(
                CheckKind::Forms,
                ring,
                m,
                n,
                trial,
                trials,
                seed,
                None,
                format!("assemble failed: {e}"),
                vec![("tier".into(), tier.into())],
            )))
        }
    };
    let fail = |message: String| {
        Ok(Some(make_ce(
            CheckKind::Forms,
            ring,
            m,
            n,
            trial,
            trials,
            seed,
            None,
            message,
            vec![("tier".into(), tier.into())],
        )))
    };
    if !data.psi().mul(data.psi_inv())?.is_identity()
        || !data.psi_inv().mul(data.psi())?.is_identity()
    {
        return fail("Psi * Psi_inv != I".into());
    }
    if *data.psi() != psi_tilde(ring, m)?.perp(data.phi())? {
        return fail("Psi != psi_tilde(m) perp phi".into());
    }
    if phi_is_ah && !data.psi().is_anti_hermitian() {
        return fail("Psi not anti-Hermitian although phi is".into());
    }
    Ok(None)
}

fn theta_eta_trial(
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let data = config_form_data(seed, "theta-eta-phi", ring, m, n)?;
    let mut rng = trial_rng(seed, "theta-eta", ring, m, n, trial);
    let nd = data.n_dim();
    let v = random_vec(ring, nd, &mut rng);
    let w = random_vec(ring, nd, &mut rng);
    let fail = |message: String| {
        Ok(Some(make_ce(
            CheckKind::ThetaEta,
            ring,
            m,
            n,
            trial,
            trials,
            seed,
            None,
            message,
            vec![("v".into(), v.to_string()), ("w".into(), w.to_string())],
        )))
    };

    let theta_v = data.theta(&v)?;
    let eta_v = data.eta(&v)?;
    if theta_v != data.theta_explicit(&v)? {
        return fail("theta(v) != theta_explicit(v)".into());
    }
    if eta_v != data.eta_explicit(&v)? {
        return fail("eta(v) != eta_explicit(v)".into());
    }
    let sum = v.add(&w)?;
    if theta_v.mul(&data.theta(&w)?)? != data.theta(&sum)? {
        return fail("theta(v)·theta(w) != theta(v+w)".into());
    }
    if eta_v.mul(&data.eta(&w)?)? != data.eta(&sum)? {
        return fail("eta(v)·eta(w) != eta(v+w)".into());
    }
    if !theta_v.mul(&data.theta(&v.neg())?)?.is_identity() {
        return fail("theta(v)·theta(-v) != I".into());
    }
    if !eta_v.mul(&data.eta(&v.neg())?)?.is_identity() {
        return fail("eta(v)·eta(-v) != I".into());
    }
    // a_1 never matters.
    let mut v_zeroed = v.clone();
    v_zeroed.set(0, ring.zero());
    if data.theta(&v_zeroed)? != theta_v || data.eta(&v_zeroed)? != eta_v {
        return fail("first coordinate of v affected theta/eta".into());
    }
    Ok(None)
}

fn theorem32_trial(
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let data = config_form_data(seed, "theorem32-phi", ring, m, n)?;
    let mut rng = trial_rng(seed, "theorem32", ring, m, n, trial);
    let nd = data.n_dim();
    let v = random_vec(ring, nd, &mut rng);
    let fail = |message: String, inputs: Vec<(String, String)>| {
        Ok(Some(make_ce(
            CheckKind::Theorem32,
            ring,
            m,
            n,
            trial,
            trials,
            seed,
            None,
            message,
            inputs,
        )))
    };

    // Forward: the printed factorizations evaluate back to theta/eta.
    if factorize_theta(&data, &v)?.evaluate()? != data.theta(&v)? {
        return fail(
            "factorize_theta(v) does not evaluate to theta(v)".into(),
            vec![("v".into(), v.to_string())],
        );
    }
    if factorize_eta(&data, &v)?.evaluate()? != data.eta(&v)? {
        return fail(
            "factorize_eta(v) does not evaluate to eta(v)".into(),
            vec![("v".into(), v.to_string())],
        );
    }

    // Converse, normative: solver preimages hit the generators exactly.
    if nd >= 2 {
        let i = rng.gen_range(2..=nd);
        let a = ring.sample(&mut rng);
        let pre = generator_preimage(&data, Side::Row, i, &a)?;
        if data.theta(&pre)? != Mat::elementary(ring, nd, 1, i, &a)? {
            return fail(
                "theta(preimage) != E_{1,i}(a)".into(),
                vec![("i".into(), i.to_string()), ("a".into(), a.to_string())],
            );
        }
        let pre = generator_preimage(&data, Side::Column, i, &a)?;
        if data.eta(&pre)? != Mat::elementary(ring, nd, i, 1, &a)? {
            return fail(
                "eta(preimage) != E_{i,1}(a)".into(),
                vec![("i".into(), i.to_string()), ("a".into(), a.to_string())],
            );
        }

        // Closed forms agree with the solver on the hyperbolic range.
        if m >= 2 {
            let i = rng.gen_range(2..=(2 * m - 1));
            let a = ring.sample(&mut rng);
            for side in [Side::Row, Side::Column] {
                if closed_form_preimage(&data, side, i, &a)?
                    != generator_preimage(&data, side, i, &a)?
                {
                    return fail(
                        "closed-form preimage differs from solver on hyperbolic index".into(),
                        vec![("i".into(), i.to_string()), ("a".into(), a.to_string())],
                    );
                }
            }
        }
    }

    // Closed forms on the φ-range: exact when λ = 1 and φ is anti-Hermitian.
    if n >= 1 && lambda_is_one(ring) {
        if let Some(data_ah) =
            config_form_data_anti_hermitian(seed, "theorem32-phi-ah", ring, m, n)?
        {
            let k = rng.gen_range(1..=n);
            let i = 2 * m - 1 + k;
            let a = ring.sample(&mut rng);
            let v_row = closed_form_preimage(&data_ah, Side::Row, i, &a)?;
            if data_ah.theta(&v_row)? != Mat::elementary(ring, nd, 1, i, &a)? {
                return fail(
                    "phi-range closed form (row) misses E_{1,i}(a) on anti-Hermitian phi".into(),
                    vec![("i".into(), i.to_string()), ("a".into(), a.to_string())],
                );
            }
            let v_col = closed_form_preimage(&data_ah, Side::Column, i, &a)?;
            if data_ah.eta(&v_col)? != Mat::elementary(ring, nd, i, 1, &a)? {
                return fail(
                    "phi-range closed form (column) misses E_{i,1}(a) on anti-Hermitian phi"
                        .into(),
                    vec![("i".into(), i.to_string()), ("a".into(), a.to_string())],
                );
            }
        }
    }

    Ok(None)
}

fn decompose_trial(
    ring: &Ring,
    m: usize,
    n: usize,
    trial: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let data = config_form_data(seed, "decompose-phi", ring, m, n)?;
    let mut rng = trial_rng(seed, "decompose", ring, m, n, trial);
    let nd = data.n_dim();

    // Round-trip every position with one random coefficient per trial.
    for i in 1..=nd {
        for j in 1..=nd {
            if i == j {
                continue;
            }
            let a = ring.sample(&mut rng);
            let word = decompose_elementary(&data, i, j, &a)?;
            if word.len() > 4 || word.evaluate(&data)? != Mat::elementary(ring, nd, i, j, &a)? {
                return Ok(Some(make_ce(
                    CheckKind::Decompose,
                    ring,
                    m,
                    n,
                    trial,
                    trials,
                    seed,
                    None,
                    "decompose_elementary round-trip failed",
                    vec![
                        ("i".into(), i.to_string()),
                        ("j".into(), j.to_string()),
                        ("a".into(), a.to_string()),
                    ],
                )));
            }
        }
    }

    // Random word decomposition with peephole normalization.
    if nd >= 2 {
        let mut word = ElementaryWord::new(ring.clone(), nd);
        for _ in 0..10 {
            let i = rng.gen_range(1..=nd);
            let mut j = rng.gen_range(1..=nd);
            while j == i {
                j = rng.gen_range(1..=nd);
            }
            word.push(i, j, ring.sample(&mut rng))?;
        }
        let gen = decompose_word(&data, &word)?;
        if gen.len() > 4 * word.len() || gen.evaluate(&data)? != word.evaluate()? {
            return Ok(Some(make_ce(
                CheckKind::Decompose,
                ring,
                m,
                n,
                trial,
                trials,
                seed,
                None,
                "decompose_word round-trip failed",
                vec![("word_len".into(), word.len().to_string())],
            )));
        }
    }

    Ok(None)
}

fn symplectic_trial(
    ring: &Ring,
    size: usize,
    trial: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let mut rng = trial_rng(seed, "symplectic", ring, 0, size, trial);
    let (phi, phi_inv) = random_alternating(ring, size, &mut rng).ok_or_else(|| {
        Error::Config(format!("no alternating forms of size {size} over `{ring}`"))
    })?;
    let v = random_vec(ring, size - 1, &mut rng);
    let pair = symplectic_pair(&phi, &phi_inv, &v)?;
    let lower_ok = is_symplectic(&phi, &pair.m_lower)?;
    let upper_ok = is_symplectic(&phi, &pair.m_upper)?;
    if !lower_ok || !upper_ok {
        return Ok(Some(make_ce(
            CheckKind::Symplectic,
            ring,
            0,
            size,
            trial,
            trials,
            seed,
            None,
            "bordered matrix is not symplectic for phi",
            vec![
                ("v".into(), v.to_string()),
                ("phi".into(), format!("{phi}")),
                ("lower_ok".into(), lower_ok.to_string()),
            ],
        )));
    }
    Ok(None)
}

fn axioms_unit(ring: &Ring, trials: usize, seed: u64, fault: Option<Fault>) -> CheckReport {
    let report = check_involution_axioms(ring, trials, trial_seed(seed, "axioms", ring, 0, 0, 0));
    let failures = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            make_ce(
                CheckKind::Axioms,
                ring,
                0,
                0,
                0,
                trials,
                seed,
                fault,
                format!("axiom failed: {}", c.name),
                c.counterexample
                    .iter()
                    .map(|ce| ("counterexample".to_string(), ce.clone()))
                    .collect(),
            )
        })
        .collect();
    CheckReport {
        check: CheckKind::Axioms.name().into(),
        ring: ring.to_string(),
        m: 0,
        n: 0,
        trials,
        failures,
        observations: Vec::new(),
    }
}

fn diagnostics_unit(ring: &Ring, m: usize, n: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut observations = Vec::new();
    let data = config_form_data(seed, "diagnostics-phi", ring, m, n)?;
    let mut rng = trial_rng(seed, "diagnostics", ring, m, n, 0);
    let nd = data.n_dim();
    let samples = trials.min(200);
    let mut scaled_hits = 0usize;
    let mut gram_hits = 0usize;
    for _ in 0..samples {
        let v = random_vec(ring, nd, &mut rng);
        for mat in [data.l_of(&v)?, data.l_star_of(&v)?] {
            let (scaled, gram) = data.psi_sandwich_diagnostic(&mat)?;
            scaled_hits += usize::from(scaled);
            gram_hits += usize::from(gram);
        }
    }
    observations.push(format!(
        "L(v)/L(v)* sandwich M*·(λ⁻¹Ψ)·M: fixes λ⁻¹Ψ in {scaled_hits}/{} cases, equals Ψ in {gram_hits}/{} cases",
        2 * samples,
        2 * samples
    ));

    // λ ≠ 1 instances: how the printed φ-range closed forms scale.
    if !lambda_is_one(ring) && n >= 1 {
        if let Some(data_ah) =
            config_form_data_anti_hermitian(seed, "diagnostics-phi-ah", ring, m, n)?
        {
            let nd = data_ah.n_dim();
            let lambda = ring.lambda();
            let mut match_counts = [0usize; 3];
            let probes = samples.min(50);
            for _ in 0..probes {
                let k = rng.gen_range(1..=n);
                let i = 2 * m - 1 + k;
                let a = ring.sample(&mut rng);
                let got = data_ah.theta(&closed_form_preimage(&data_ah, Side::Row, i, &a)?)?;
                let mut scaled = a.clone();
                for count in &mut match_counts {
                    if got == Mat::elementary(ring, nd, 1, i, &scaled)? {
                        *count += 1;
                    }
                    scaled = ring.mul(&lambda, &scaled);
                }
            }
            observations.push(format!(
                "φ-range closed form over λ≠1: θ(v) matched E(a) {}x, E(λa) {}x, E(λ²a) {}x of {probes} probes",
                match_counts[0], match_counts[1], match_counts[2]
            ));
        } else {
            observations.push(
                "φ-range closed form over λ≠1: no anti-Hermitian φ of this size, skipped".into(),
            );
        }
    }

    Ok(CheckReport {
        check: CheckKind::Diagnostics.name().into(),
        ring: ring.to_string(),
        m,
        n,
        trials: samples,
        failures: Vec::new(),
        observations,
    })
}

/// Executes the selected check suites; deterministic for a fixed seed.
pub fn run_campaign(config: &CampaignConfig) -> Result<Report> {
    if config.trials == 0 {
        return Err(Error::Config("trials must be >= 1".into()));
    }
    if config.jobs == 0 {
        return Err(Error::Config("jobs must be >= 1".into()));
    }
    if config.rings.is_empty() {
        return Err(Error::Config("at least one ring is required".into()));
    }
    if config.m_values.contains(&0) {
        return Err(Error::Config("m values must be >= 1".into()));
    }
    let mut checks: Vec<CheckKind> = Vec::new();
    for c in &config.checks {
        if !checks.contains(c) {
            checks.push(*c);
        }
    }
    if checks.is_empty() {
        return Err(Error::Config("at least one check is required".into()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut results = Vec::new();
    let mut timings = Vec::new();

    for check in &checks {
        // (ring, m, n) units per check, in deterministic order.
        let mut units: Vec<(Ring, usize, usize)> = Vec::new();
        match check {
            CheckKind::Axioms => {
                for ring in &config.rings {
                    units.push((ring.clone(), 0, 0));
                }
            }
            CheckKind::Forms => {
                for ring in &config.rings {
                    units.push((ring.clone(), 0, 0));
                    for &m in &config.m_values {
                        for &n in &config.n_values {
                            units.push((ring.clone(), m, n));
                        }
                    }
                }
            }
            CheckKind::ThetaEta | CheckKind::Theorem32 | CheckKind::Decompose
            | CheckKind::Diagnostics => {
                for ring in &config.rings {
                    for &m in &config.m_values {
                        for &n in &config.n_values {
                            units.push((ring.clone(), m, n));
                        }
                    }
                }
            }
            CheckKind::Symplectic => {
                for ring in &config.rings {
                    if ring.is_identity_involution() {
                        units.push((ring.clone(), 0, 4));
                        units.push((ring.clone(), 0, 6));
                    }
                }
            }
        }

        for (ring, m, n) in units {
            let started = Instant::now();
            let report = match check {
                CheckKind::Axioms => axioms_unit(&ring, config.trials, config.seed, config.fault),
                CheckKind::Diagnostics => {
                    diagnostics_unit(&ring, m, n, config.trials, config.seed)?
                }
                _ => {
                    let trials = config.trials;
                    let seed = config.seed;
                    let fault = config.fault;
                    let check = *check;
                    let ring_ref = &ring;
                    let outcomes: Result<Vec<Option<Counterexample>>> = pool.install(|| {
                        (0..trials)
                            .into_par_iter()
                            .map(|t| run_trial(check, ring_ref, m, n, t, trials, seed, fault))
                            .collect()
                    });
                    let failures: Vec<Counterexample> =
                        outcomes?.into_iter().flatten().collect();
                    CheckReport {
                        check: check.name().into(),
                        ring: ring.to_string(),
                        m,
                        n,
                        trials,
                        failures,
                        observations: Vec::new(),
                    }
                }
            };
            timings.push((
                format!("{}/{}/m{}/n{}", check.name(), ring, m, n),
                started.elapsed().as_millis(),
            ));
            results.push(report);
        }
    }

    Ok(Report {
        body: ReportBody {
            format_version: 1,
            seed: config.seed,
            trials: config.trials,
            rings: config.rings.iter().map(Ring::to_string).collect(),
            m_values: config.m_values.clone(),
            n_values: config.n_values.clone(),
            checks: checks.iter().map(|c| c.name().to_string()).collect(),
            fault: config.fault.map(|f| f.name().to_string()),
            results,
        },
        timings_ms: timings,
    })
}

/// Re-runs the single trial recorded in a counterexample; returns true when
/// the failure reproduces.
pub fn replay_counterexample(ce: &Counterexample) -> Result<bool> {
    let check = CheckKind::from_str(&ce.check)?;
    let ring = Ring::from_descriptor(&ce.ring)?;
    let fault = ce.fault.as_deref().map(Fault::from_str).transpose()?;
    match check {
        CheckKind::Axioms => {
            let report = axioms_unit(&ring, ce.trials, ce.seed, fault);
            Ok(!report.failures.is_empty())
        }
        CheckKind::Diagnostics => Ok(false),
        _ => Ok(run_trial(check, &ring, ce.m, ce.n, ce.trial, ce.trials, ce.seed, fault)?
            .is_some()),
    }
}
