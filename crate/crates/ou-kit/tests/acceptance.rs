//! Acceptance suite: every identity the library claims, exercised at full
//! trial counts over all shipped ring instances, with a wall-clock budget
//! per criterion. Arithmetic is exact, so every comparison is equality.
//!
//! Runs as a sequential harness (`cargo test -p ou-kit --test acceptance`)
//! and prints one pass/fail line per criterion; budgets are measured with
//! the whole machine available to each criterion.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ou_kit::campaign::{
    random_alternating, random_invertible, run_campaign, CampaignConfig, CheckKind,
};
use ou_kit::matrix::{Mat, RowVec};
use ou_kit::quadratic::{FormParameterMode, HeisenbergElement, OddQuadraticSpace};
use ou_kit::ring::{check_involution_axioms, Ring, RingDescriptor};
use ou_kit::vaserstein::{
    is_symplectic, psi_tilde, psi_tilde_prime, symplectic_pair, HyperbolicFormData,
};
use ou_kit::words::{
    closed_form_preimage, decompose_elementary, factorize_eta, factorize_theta,
    generator_preimage, Side,
};

const M_VALUES: [usize; 3] = [1, 2, 3];
const N_VALUES: [usize; 4] = [0, 1, 2, 3];

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion}: PASS ({:.2}s, budget {:.0}s)", elapsed.as_secs_f64(), budget.as_secs_f64());
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} >= {budget:?}"
    );
}

fn random_vec(ring: &Ring, len: usize, rng: &mut impl Rng) -> RowVec {
    RowVec::new(ring.clone(), (0..len).map(|_| ring.sample(rng)).collect())
}

/// Form data with a reproducible random invertible phi for one config.
fn config_data(ring: &Ring, m: usize, n: usize, salt: u64) -> HyperbolicFormData {
    let mut rng = ChaCha8Rng::seed_from_u64(salt ^ ((m as u64) << 8) ^ (n as u64));
    let (phi, phi_inv) = random_invertible(ring, n, 2 * n, &mut rng);
    HyperbolicFormData::assemble(ring, m, n, phi, Some(phi_inv)).expect("assembles")
}

fn criterion_01_pseudo_involution_axioms() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        let report = check_involution_axioms(&ring, 1000, 42);
        assert!(report.all_passed(), "{report}");
    }
    finish("1 (pseudo-involution axioms, 4 instances x 1000 samples)", started, Duration::from_secs(5));
}

fn criterion_02_form_recursions() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        for r in 0..=6 {
            let prod = psi_tilde(&ring, r)
                .unwrap()
                .mul(&psi_tilde_prime(&ring, r).unwrap())
                .unwrap();
            assert!(prod.is_identity(), "psi product at rank {r} over {ring}");
        }
        for m in M_VALUES {
            for n in N_VALUES {
                let data = config_data(&ring, m, n, 0xF0);
                assert!(
                    data.psi().mul(data.psi_inv()).unwrap().is_identity(),
                    "Psi*Psi_inv over {ring}, m={m}, n={n}"
                );
                assert!(
                    data.psi_inv().mul(data.psi()).unwrap().is_identity(),
                    "Psi_inv*Psi over {ring}, m={m}, n={n}"
                );
            }
        }
    }
    finish("2 (form recursions and Psi inverses)", started, Duration::from_secs(10));
}

fn criterion_03_display_oracle() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        for m in M_VALUES {
            for n in N_VALUES {
                let data = config_data(&ring, m, n, 0x03);
                let nd = data.n_dim();
                let failures: usize = (0..1000usize)
                    .into_par_iter()
                    .map(|t| {
                        let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
                        let v = random_vec(&ring, nd, &mut rng);
                        let ok = data.theta(&v).unwrap() == data.theta_explicit(&v).unwrap()
                            && data.eta(&v).unwrap() == data.eta_explicit(&v).unwrap();
                        usize::from(!ok)
                    })
                    .sum();
                assert_eq!(failures, 0, "display oracle over {ring}, m={m}, n={n}");
            }
        }
    }
    finish("3 (display oracle, 1000 v per config)", started, Duration::from_secs(30));
}

fn criterion_04_factorization_forward() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        for m in M_VALUES {
            for n in N_VALUES {
                let data = config_data(&ring, m, n, 0x04);
                let nd = data.n_dim();
                let failures: usize = (0..1000usize)
                    .into_par_iter()
                    .map(|t| {
                        let mut rng = ChaCha8Rng::seed_from_u64(t as u64 + 7000);
                        let v = random_vec(&ring, nd, &mut rng);
                        let ok = factorize_theta(&data, &v).unwrap().evaluate().unwrap()
                            == data.theta(&v).unwrap()
                            && factorize_eta(&data, &v).unwrap().evaluate().unwrap()
                                == data.eta(&v).unwrap();
                        usize::from(!ok)
                    })
                    .sum();
                assert_eq!(failures, 0, "forward factorization over {ring}, m={m}, n={n}");
            }
        }
    }
    finish("4 (theta/eta factorizations, 1000 v per config)", started, Duration::from_secs(30));
}

fn criterion_05_decomposition_converse() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        for m in M_VALUES {
            for n in N_VALUES {
                let data = config_data(&ring, m, n, 0x05);
                let nd = data.n_dim();
                let mut pairs = Vec::new();
                for i in 1..=nd {
                    for j in 1..=nd {
                        if i != j {
                            pairs.push((i, j));
                        }
                    }
                }
                let failures: usize = pairs
                    .par_iter()
                    .map(|&(i, j)| {
                        let mut rng =
                            ChaCha8Rng::seed_from_u64((i as u64) << 32 | (j as u64) << 16);
                        let mut bad = 0;
                        for _ in 0..100 {
                            let a = ring.sample(&mut rng);
                            let word = decompose_elementary(&data, i, j, &a).unwrap();
                            let ok = word.len() <= 4
                                && word.evaluate(&data).unwrap()
                                    == Mat::elementary(&ring, nd, i, j, &a).unwrap();
                            bad += usize::from(!ok);
                        }
                        bad
                    })
                    .sum();
                assert_eq!(failures, 0, "decomposition over {ring}, m={m}, n={n}");
            }
        }
    }
    finish(
        "5 (decompose_elementary round-trip, all (i,j) x 100 a per config)",
        started,
        Duration::from_secs(60),
    );
}

fn criterion_06_closed_form_preimages() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x06);

    // Hyperbolic index range: every shipped commutative ring, random phi.
    for ring in Ring::shipped() {
        for m in [2usize, 3] {
            for n in [0usize, 2] {
                let data = config_data(&ring, m, n, 0x06);
                let nd = data.n_dim();
                for i in 2..=(2 * m - 1) {
                    for _ in 0..25 {
                        let a = ring.sample(&mut rng);
                        let row = closed_form_preimage(&data, Side::Row, i, &a).unwrap();
                        assert_eq!(
                            row,
                            generator_preimage(&data, Side::Row, i, &a).unwrap(),
                            "row closed form over {ring}, m={m}, n={n}, i={i}"
                        );
                        assert_eq!(
                            data.theta(&row).unwrap(),
                            Mat::elementary(&ring, nd, 1, i, &a).unwrap()
                        );
                        let col = closed_form_preimage(&data, Side::Column, i, &a).unwrap();
                        assert_eq!(
                            col,
                            generator_preimage(&data, Side::Column, i, &a).unwrap(),
                            "column closed form over {ring}, m={m}, n={n}, i={i}"
                        );
                        assert_eq!(
                            data.eta(&col).unwrap(),
                            Mat::elementary(&ring, nd, i, 1, &a).unwrap()
                        );
                    }
                }
            }
        }
    }

    // phi-range: the pinned anti-Hermitian tier with lambda = 1.
    let z = Ring::integers();
    let phi = Mat::from_i64_rows(&z, &[&[0, 1], &[-1, 0]]);
    let data = HyperbolicFormData::assemble(&z, 2, 2, phi, None).unwrap();
    for i in 4..=5 {
        for _ in 0..100 {
            let a = z.sample(&mut rng);
            let row = closed_form_preimage(&data, Side::Row, i, &a).unwrap();
            assert_eq!(data.theta(&row).unwrap(), Mat::elementary(&z, 5, 1, i, &a).unwrap());
            let col = closed_form_preimage(&data, Side::Column, i, &a).unwrap();
            assert_eq!(data.eta(&col).unwrap(), Mat::elementary(&z, 5, i, 1, &a).unwrap());
        }
    }

    let q = Ring::quadratic(-1);
    let w = q.parse("0+1w").unwrap();
    let phi = Mat::new(q.clone(), 1, 1, vec![w]).unwrap();
    let data = HyperbolicFormData::assemble(&q, 2, 1, phi, None).unwrap();
    for _ in 0..100 {
        let a = q.sample(&mut rng);
        let row = closed_form_preimage(&data, Side::Row, 4, &a).unwrap();
        assert_eq!(data.theta(&row).unwrap(), Mat::elementary(&q, 4, 1, 4, &a).unwrap());
        let col = closed_form_preimage(&data, Side::Column, 4, &a).unwrap();
        assert_eq!(data.eta(&col).unwrap(), Mat::elementary(&q, 4, 4, 1, &a).unwrap());
    }

    finish("6 (paper closed-form preimages)", started, Duration::from_secs(10));
}

fn criterion_07_homomorphism_laws() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        for m in M_VALUES {
            for n in N_VALUES {
                let data = config_data(&ring, m, n, 0x07);
                let nd = data.n_dim();
                let failures: usize = (0..1000usize)
                    .into_par_iter()
                    .map(|t| {
                        let mut rng = ChaCha8Rng::seed_from_u64(t as u64 + 90_000);
                        let v = random_vec(&ring, nd, &mut rng);
                        let w = random_vec(&ring, nd, &mut rng);
                        let sum = v.add(&w).unwrap();
                        let theta_v = data.theta(&v).unwrap();
                        let eta_v = data.eta(&v).unwrap();
                        let ok = theta_v.mul(&data.theta(&w).unwrap()).unwrap()
                            == data.theta(&sum).unwrap()
                            && eta_v.mul(&data.eta(&w).unwrap()).unwrap()
                                == data.eta(&sum).unwrap()
                            && theta_v.mul(&data.theta(&v.neg()).unwrap()).unwrap().is_identity()
                            && eta_v.mul(&data.eta(&v.neg()).unwrap()).unwrap().is_identity();
                        usize::from(!ok)
                    })
                    .sum();
                assert_eq!(failures, 0, "homomorphism laws over {ring}, m={m}, n={n}");
            }
        }
    }
    finish("7 (theta/eta homomorphism and inverse laws)", started, Duration::from_secs(10));
}

fn criterion_08_symplectic_membership() {
    let started = Instant::now();
    for ring in [Ring::integers(), Ring::modular(7).unwrap()] {
        for size in [4usize, 6] {
            let failures: usize = (0..1000usize)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(t as u64 + 31_000);
                    let (phi, phi_inv) = random_alternating(&ring, size, &mut rng).unwrap();
                    let v = random_vec(&ring, size - 1, &mut rng);
                    let pair = symplectic_pair(&phi, &phi_inv, &v).unwrap();
                    let ok = is_symplectic(&phi, &pair.m_lower).unwrap()
                        && is_symplectic(&phi, &pair.m_upper).unwrap();
                    usize::from(!ok)
                })
                .sum();
            assert_eq!(failures, 0, "symplectic membership over {ring}, size {size}");
        }
    }
    finish("8 (symplectic membership, 1000 v per ring and size)", started, Duration::from_secs(15));
}

fn criterion_09_heisenberg_esd_suite() {
    let started = Instant::now();
    for ring in Ring::shipped() {
        let space = OddQuadraticSpace::hyperbolic(&ring, 2, None, FormParameterMode::Max).unwrap();
        let dim = space.dim();
        let has_decider = !matches!(ring.descriptor(), RingDescriptor::Twisted);
        let min_space = if has_decider {
            Some(OddQuadraticSpace::hyperbolic(&ring, 2, None, FormParameterMode::Min).unwrap())
        } else {
            None
        };
        let failures: usize = (0..1000usize)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(t as u64 + 52_000);
                let sample = |rng: &mut ChaCha8Rng| {
                    HeisenbergElement::new(random_vec(&ring, dim, rng), ring.sample(rng))
                };
                let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));

                // Group axioms and the trace homomorphism.
                let id = space.h_identity();
                let assoc = space.h_add(&space.h_add(&a, &b).unwrap(), &c).unwrap()
                    == space.h_add(&a, &space.h_add(&b, &c).unwrap()).unwrap();
                let unit = space.h_add(&a, &id).unwrap() == a && space.h_add(&id, &a).unwrap() == a;
                let neg = space.h_neg(&a).unwrap();
                let inverse = space.h_add(&a, &neg).unwrap() == id
                    && space.h_add(&neg, &a).unwrap() == id;
                let tr_hom = space.h_trace(&space.h_add(&a, &b).unwrap()).unwrap()
                    == ring.add(&space.h_trace(&a).unwrap(), &space.h_trace(&b).unwrap());

                // L_min ⊆ L_max: minimal members always kill the trace.
                let s = ring.sample(&mut rng);
                let member = HeisenbergElement::new(
                    RowVec::zeros(ring.clone(), dim),
                    ring.add(&s, &ring.conj(&s)),
                );
                let mut containment =
                    ring.is_zero(&space.h_trace(&member).unwrap());
                if let Some(min_space) = &min_space {
                    containment = containment
                        && min_space.param_contains(&member).unwrap()
                        && space.param_contains(&member).unwrap();
                }

                // ESD isometry on admissible data.
                let signed = [1i64, -1, 2, -2];
                let i = signed[rng.gen_range(0..4)];
                let j = match i.abs() {
                    1 => [2i64, -2][rng.gen_range(0..2)],
                    _ => [1i64, -1][rng.gen_range(0..2)],
                };
                let v1 = space.basis_signed(i).unwrap().scale(&ring.sample(&mut rng));
                let v2 = space.basis_signed(j).unwrap().scale(&ring.sample(&mut rng));
                let s = ring.sample(&mut rng);
                let r = ring.add(&s, &ring.conj(&s));
                let esd = space.esd_matrix(&v1, &v2, &r).unwrap();
                let isometry = space.preserves_form(&esd).unwrap()
                    && space.equiv_identity_mod_param(&esd).unwrap();

                // Elementary transvections are isometries too.
                let mut jj = signed[rng.gen_range(0..4)];
                while jj == i || jj == -i {
                    jj = signed[rng.gen_range(0..4)];
                }
                let short = space
                    .transvection_short(i, jj, &ring.sample(&mut rng))
                    .unwrap();
                let other = if i.abs() == 1 { 2 } else { 1 };
                let lv = space.basis_signed(other).unwrap().scale(&ring.sample(&mut rng));
                let ls = ring.sample(&mut rng);
                let lr = ring.add(&ls, &ring.conj(&ls));
                let long = space.transvection_long(i, &lv, &lr).unwrap();
                let transvections = space.preserves_form(&short).unwrap()
                    && space.preserves_form(&long).unwrap();

                let ok = assoc && unit && inverse && tr_hom && containment && isometry
                    && transvections;
                usize::from(!ok)
            })
            .sum();
        assert_eq!(failures, 0, "Heisenberg/ESD suite over {ring}");
    }
    finish("9 (Heisenberg/ESD suite, 1000 trials per instance)", started, Duration::from_secs(20));
}

fn criterion_10_report_determinism() {
    let started = Instant::now();
    let mut config = CampaignConfig {
        rings: Ring::shipped(),
        m_values: vec![1, 2],
        n_values: vec![0, 1],
        trials: 25,
        seed: 42,
        jobs: 1,
        checks: CheckKind::all(),
        fault: None,
    };
    let serial = run_campaign(&config).unwrap();
    assert!(serial.passed(), "{}", serial.summary());
    config.jobs = 8;
    let parallel = run_campaign(&config).unwrap();
    assert_eq!(
        serial.body_string(),
        parallel.body_string(),
        "report bodies differ between jobs=1 and jobs=8"
    );
    finish("10 (byte-identical report bodies at parallelism 1 and 8)", started, Duration::from_secs(60));
}

fn main() {
    let criteria: &[(&str, fn())] = &[
        ("criterion_01_pseudo_involution_axioms", criterion_01_pseudo_involution_axioms),
        ("criterion_02_form_recursions", criterion_02_form_recursions),
        ("criterion_03_display_oracle", criterion_03_display_oracle),
        ("criterion_04_factorization_forward", criterion_04_factorization_forward),
        ("criterion_05_decomposition_converse", criterion_05_decomposition_converse),
        ("criterion_06_closed_form_preimages", criterion_06_closed_form_preimages),
        ("criterion_07_homomorphism_laws", criterion_07_homomorphism_laws),
        ("criterion_08_symplectic_membership", criterion_08_symplectic_membership),
        ("criterion_09_heisenberg_esd_suite", criterion_09_heisenberg_esd_suite),
        ("criterion_10_report_determinism", criterion_10_report_determinism),
    ];
    let mut failed = 0usize;
    for (name, run) in criteria {
        if std::panic::catch_unwind(run).is_err() {
            println!("{name}: FAIL");
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
