//! Rings with a pseudo-involution and the shipped concrete instances.
//!
//! A pseudo-involution is an additive map `r ↦ bar(r)` with `bar(bar(r)) = r`
//! and `bar(r1·r2) = bar(r2)·λ⁻¹·bar(r1)`, where `λ = bar(1)` is a unit. All
//! shipped instances are commutative with λ central, so the twisted
//! anti-multiplicativity collapses to `bar(r1·r2) = λ⁻¹·bar(r1)·bar(r2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Identifies a shipped ring instance. Descriptor string grammar:
/// `int` | `mod:<n>` | `quad:<D>` | `twisted`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    /// ℤ with the identity involution.
    Integers,
    /// ℤ/n with the identity involution; elements canonicalized to `[0, n)`.
    Mod { modulus: u64 },
    /// ℤ[w]/(w² = D) with `bar(a + bw) = a − bw`, so λ = 1.
    Quadratic { disc: i64 },
    /// ℤ[w]/(w² = −1) with `bar(r) = w·conj(r)`, so λ = bar(1) = w ≠ 1.
    Twisted,
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "int"),
            RingDescriptor::Mod { modulus } => write!(f, "mod:{modulus}"),
            RingDescriptor::Quadratic { disc } => write!(f, "quad:{disc}"),
            RingDescriptor::Twisted => write!(f, "twisted"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "int" {
            return Ok(RingDescriptor::Integers);
        }
        if s == "twisted" {
            return Ok(RingDescriptor::Twisted);
        }
        if let Some(rest) = s.strip_prefix("mod:") {
            let modulus: u64 = rest
                .parse()
                .map_err(|_| Error::Descriptor(format!("bad modulus in `{s}`")))?;
            if modulus == 0 {
                return Err(Error::Descriptor("modulus must be positive".into()));
            }
            return Ok(RingDescriptor::Mod { modulus });
        }
        if let Some(rest) = s.strip_prefix("quad:") {
            let disc: i64 = rest
                .parse()
                .map_err(|_| Error::Descriptor(format!("bad discriminant in `{s}`")))?;
            return Ok(RingDescriptor::Quadratic { disc });
        }
        Err(Error::Descriptor(format!(
            "`{s}` is not one of int | mod:<n> | quad:<D> | twisted"
        )))
    }
}

/// A ring element, stored as `a + b·w`. Integer kinds keep `b = 0`; the `mod:n`
/// kind keeps `a` reduced into `[0, n)`. Equality is structural on this
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    pub(crate) a: BigInt,
    pub(crate) b: BigInt,
}

impl Elem {
    pub fn coeffs(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }
}

/// Canonical literal: plain integer when the `w`-part vanishes, otherwise
/// `a+bw` / `a-bw`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, self.b.magnitude())
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

/// A concrete ring instance: descriptor plus all element operations. Values
/// are immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    desc: RingDescriptor,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.desc.fmt(f)
    }
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        if let RingDescriptor::Mod { modulus } = &desc {
            if *modulus == 0 {
                return Err(Error::Descriptor("modulus must be positive".into()));
            }
        }
        Ok(Ring { desc })
    }

    pub fn integers() -> Ring {
        Ring { desc: RingDescriptor::Integers }
    }

    pub fn modular(modulus: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::Mod { modulus })
    }

    pub fn quadratic(disc: i64) -> Ring {
        Ring { desc: RingDescriptor::Quadratic { disc } }
    }

    pub fn twisted() -> Ring {
        Ring { desc: RingDescriptor::Twisted }
    }

    /// Parses a descriptor string (`int` | `mod:<n>` | `quad:<D>` | `twisted`).
    pub fn from_descriptor(s: &str) -> Result<Ring> {
        Ring::new(s.parse()?)
    }

    /// All four shipped instances, in a fixed order.
    pub fn shipped() -> Vec<Ring> {
        vec![
            Ring::integers(),
            Ring::modular(6).unwrap(),
            Ring::quadratic(-1),
            Ring::twisted(),
        ]
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    /// True when bar is the identity map (λ = 1 and conj does nothing).
    pub fn is_identity_involution(&self) -> bool {
        matches!(
            self.desc,
            RingDescriptor::Integers | RingDescriptor::Mod { .. }
        )
    }

    /// All shipped instances are commutative with λ central.
    pub fn is_commutative(&self) -> bool {
        true
    }

    fn has_w(&self) -> bool {
        matches!(
            self.desc,
            RingDescriptor::Quadratic { .. } | RingDescriptor::Twisted
        )
    }

    /// w² as an integer, for the kinds that carry a `w`.
    fn disc(&self) -> Option<i64> {
        match self.desc {
            RingDescriptor::Quadratic { disc } => Some(disc),
            RingDescriptor::Twisted => Some(-1),
            _ => None,
        }
    }

    fn canon(&self, mut e: Elem) -> Elem {
        if let RingDescriptor::Mod { modulus } = &self.desc {
            let n = BigInt::from(*modulus);
            e.a = e.a.mod_floor(&n);
            e.b = BigInt::zero();
        }
        e
    }

    pub fn zero(&self) -> Elem {
        Elem { a: BigInt::zero(), b: BigInt::zero() }
    }

    pub fn one(&self) -> Elem {
        self.canon(Elem { a: BigInt::one(), b: BigInt::zero() })
    }

    /// Embeds a machine integer.
    pub fn from_i64(&self, v: i64) -> Elem {
        self.canon(Elem { a: BigInt::from(v), b: BigInt::zero() })
    }

    /// Builds an element from coefficients of `a + bw`. Rejects a nonzero
    /// `w`-part on rings without one.
    pub fn from_pair(&self, a: BigInt, b: BigInt) -> Result<Elem> {
        if !b.is_zero() && !self.has_w() {
            return Err(Error::Parse(format!(
                "ring `{self}` has no w component"
            )));
        }
        Ok(self.canon(Elem { a, b }))
    }

    /// λ = bar(1): the distinguished unit of the pseudo-involution.
    pub fn lambda(&self) -> Elem {
        match self.desc {
            RingDescriptor::Twisted => Elem { a: BigInt::zero(), b: BigInt::one() },
            _ => self.one(),
        }
    }

    pub fn lambda_inv(&self) -> Elem {
        match self.desc {
            RingDescriptor::Twisted => Elem { a: BigInt::zero(), b: -BigInt::one() },
            _ => self.one(),
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        e.a.is_zero() && e.b.is_zero()
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        self.canon(Elem { a: &x.a + &y.a, b: &x.b + &y.b })
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.canon(Elem { a: &x.a - &y.a, b: &x.b - &y.b })
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        self.canon(Elem { a: -&x.a, b: -&x.b })
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match self.disc() {
            None => self.canon(Elem { a: &x.a * &y.a, b: BigInt::zero() }),
            Some(d) => {
                let d = BigInt::from(d);
                let a = &x.a * &y.a + d * (&x.b * &y.b);
                let b = &x.a * &y.b + &x.b * &y.a;
                self.canon(Elem { a, b })
            }
        }
    }

    /// The pseudo-involution `r ↦ bar(r)`.
    pub fn conj(&self, x: &Elem) -> Elem {
        match self.desc {
            RingDescriptor::Integers | RingDescriptor::Mod { .. } => x.clone(),
            RingDescriptor::Quadratic { .. } => Elem { a: x.a.clone(), b: -&x.b },
            // bar(a+bw) = w·(a−bw) = b + aw when w² = −1.
            RingDescriptor::Twisted => Elem { a: x.b.clone(), b: x.a.clone() },
        }
    }

    /// Multiplicative inverse, when the element is a unit.
    pub fn try_inverse(&self, x: &Elem) -> Option<Elem> {
        match &self.desc {
            RingDescriptor::Integers => {
                if x.a.magnitude().is_one() {
                    Some(x.clone())
                } else {
                    None
                }
            }
            RingDescriptor::Mod { modulus } => {
                let n = BigInt::from(*modulus);
                let ext = x.a.extended_gcd(&n);
                if ext.gcd.is_one() {
                    Some(self.canon(Elem { a: ext.x, b: BigInt::zero() }))
                } else {
                    None
                }
            }
            RingDescriptor::Quadratic { .. } | RingDescriptor::Twisted => {
                // a + bw is a unit iff its norm a² − D·b² is ±1, and then the
                // inverse is ±(a − bw).
                let d = BigInt::from(self.disc().unwrap());
                let norm = &x.a * &x.a - d * (&x.b * &x.b);
                if norm.is_one() {
                    Some(Elem { a: x.a.clone(), b: -&x.b })
                } else if (-&norm).is_one() {
                    Some(Elem { a: -&x.a, b: x.b.clone() })
                } else {
                    None
                }
            }
        }
    }

    /// Decides `r ∈ {s + bar(s) : s}` for the instances where the image is
    /// known in closed form. The twisted instance ships no decider.
    pub fn min_part_contains(&self, r: &Elem) -> Result<bool> {
        match &self.desc {
            RingDescriptor::Integers => Ok(r.b.is_zero() && r.a.is_even()),
            RingDescriptor::Mod { modulus } => {
                // {2k mod n}: everything when n is odd, the even residues otherwise.
                Ok(modulus % 2 == 1 || r.a.is_even())
            }
            RingDescriptor::Quadratic { .. } => Ok(r.b.is_zero() && r.a.is_even()),
            RingDescriptor::Twisted => Err(Error::UndecidableParam { ring: self.to_string() }),
        }
    }

    /// Solves `r − bar(r) = u` for `r`, when possible. Used by samplers that
    /// need parameter-admissible Heisenberg pairs.
    pub fn solve_trace_equation(&self, u: &Elem) -> Option<Elem> {
        match &self.desc {
            RingDescriptor::Integers | RingDescriptor::Mod { .. } => {
                if self.is_zero(u) {
                    Some(self.zero())
                } else {
                    None
                }
            }
            RingDescriptor::Quadratic { .. } => {
                // r − bar(r) = 2·b_r·w.
                if u.a.is_zero() && u.b.is_even() {
                    Some(Elem { a: BigInt::zero(), b: &u.b / 2 })
                } else {
                    None
                }
            }
            RingDescriptor::Twisted => {
                // r − bar(r) = (a_r − b_r)·(1 − w).
                if u.b == -&u.a {
                    Some(Elem { a: u.a.clone(), b: BigInt::zero() })
                } else {
                    None
                }
            }
        }
    }

    /// Draws a small random element; coefficients stay single-digit so that
    /// literals remain readable and products exactly checkable.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.desc {
            RingDescriptor::Integers => self.from_i64(rng.gen_range(-9..=9)),
            RingDescriptor::Mod { modulus } => {
                let hi = (*modulus).min(1 << 32);
                self.canon(Elem { a: BigInt::from(rng.gen_range(0..hi)), b: BigInt::zero() })
            }
            RingDescriptor::Quadratic { .. } | RingDescriptor::Twisted => Elem {
                a: BigInt::from(rng.gen_range(-9..=9)),
                b: BigInt::from(rng.gen_range(-9..=9)),
            },
        }
    }

    /// Parses an element literal: a decimal integer, or `a+bw` / `a-bw` on
    /// rings with a `w` component. Output of [`Elem::to_string`] always parses
    /// back to the same element.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty element literal".into()));
        }
        if let Some(body) = s.strip_suffix('w') {
            if !self.has_w() {
                return Err(Error::Parse(format!(
                    "literal `{s}` has a w component but ring `{self}` does not"
                )));
            }
            // Split a±bw at the sign of b: the last '+'/'-' not in position 0.
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| bytes[i] == b'+' || bytes[i] == b'-')
                .ok_or_else(|| {
                    Error::Parse(format!("literal `{s}`: expected the form a+bw or a-bw"))
                })?;
            let a_str = &body[..split];
            let b_str = &body[split..];
            let a = parse_bigint(a_str, s)?;
            let b = parse_bigint(b_str, s)?;
            Ok(self.canon(Elem { a, b }))
        } else {
            let a = parse_bigint(s, s)?;
            Ok(self.canon(Elem { a, b: BigInt::zero() }))
        }
    }

    /// Canonical literal of an element (inverse of [`Ring::parse`]).
    pub fn format(&self, e: &Elem) -> String {
        e.to_string()
    }
}

fn parse_bigint(part: &str, whole: &str) -> Result<BigInt> {
    let digits = part.strip_prefix('+').unwrap_or(part);
    if digits.is_empty() || digits == "-" {
        return Err(Error::Parse(format!(
            "literal `{whole}`: missing integer coefficient"
        )));
    }
    BigInt::from_str(digits)
        .map_err(|_| Error::Parse(format!("literal `{whole}`: bad integer `{part}`")))
}

/// Outcome of one axiom, with a printable counterexample on failure.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Result of the pseudo-involution axiom suite on one ring instance.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub ring: String,
    pub sample_count: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "axiom suite for `{}` ({} samples, seed {})",
            self.ring, self.sample_count, self.seed
        )?;
        for c in &self.checks {
            match (&c.passed, &c.counterexample) {
                (true, _) => writeln!(f, "  pass  {}", c.name)?,
                (false, Some(ce)) => writeln!(f, "  FAIL  {} [{}]", c.name, ce)?,
                (false, None) => writeln!(f, "  FAIL  {}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Checks the pseudo-involution axioms on `sample_count` random draws.
/// Deterministic for a fixed seed.
pub fn check_involution_axioms(ring: &Ring, sample_count: usize, seed: u64) -> AxiomReport {
    check_axioms_with_conj(ring, sample_count, seed, Ring::conj)
}

/// Same suite with an injectable bar map, so broken involutions can be used
/// as negative controls.
pub(crate) fn check_axioms_with_conj(
    ring: &Ring,
    sample_count: usize,
    seed: u64,
    conj: impl Fn(&Ring, &Elem) -> Elem,
) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = ring.lambda();
    let lambda_inv = ring.lambda_inv();

    let mut involutive = AxiomCheck { name: "bar(bar(r)) = r", passed: true, counterexample: None };
    let mut additive = AxiomCheck {
        name: "bar(r1+r2) = bar(r1)+bar(r2)",
        passed: true,
        counterexample: None,
    };
    let mut multiplicative = AxiomCheck {
        name: "bar(r1*r2) = bar(r2)*lambda_inv*bar(r1)",
        passed: true,
        counterexample: None,
    };
    let mut commutative =
        AxiomCheck { name: "r1*r2 = r2*r1", passed: true, counterexample: None };

    for _ in 0..sample_count {
        let r1 = ring.sample(&mut rng);
        let r2 = ring.sample(&mut rng);
        if involutive.passed {
            let twice = conj(ring, &conj(ring, &r1));
            if twice != r1 {
                involutive.passed = false;
                involutive.counterexample = Some(format!("r = {r1}, bar(bar(r)) = {twice}"));
            }
        }
        if additive.passed {
            let lhs = conj(ring, &ring.add(&r1, &r2));
            let rhs = ring.add(&conj(ring, &r1), &conj(ring, &r2));
            if lhs != rhs {
                additive.passed = false;
                additive.counterexample = Some(format!("r1 = {r1}, r2 = {r2}"));
            }
        }
        if multiplicative.passed {
            let lhs = conj(ring, &ring.mul(&r1, &r2));
            let rhs = ring.mul(&ring.mul(&conj(ring, &r2), &lambda_inv), &conj(ring, &r1));
            if lhs != rhs {
                multiplicative.passed = false;
                multiplicative.counterexample =
                    Some(format!("r1 = {r1}, r2 = {r2}, lhs = {lhs}, rhs = {rhs}"));
            }
        }
        if commutative.passed {
            let lhs = ring.mul(&r1, &r2);
            let rhs = ring.mul(&r2, &r1);
            if lhs != rhs {
                commutative.passed = false;
                commutative.counterexample = Some(format!("r1 = {r1}, r2 = {r2}"));
            }
        }
    }

    // Structural facts about λ, checked once.
    let lambda_is_bar_one = conj(ring, &ring.one()) == lambda;
    let unit_ok = ring.is_one(&ring.mul(&lambda, &lambda_inv))
        && ring.is_one(&ring.mul(&lambda_inv, &lambda));
    let lambda_unit = AxiomCheck {
        name: "lambda = bar(1) and lambda*lambda_inv = 1",
        passed: lambda_is_bar_one && unit_ok,
        counterexample: (!(lambda_is_bar_one && unit_ok))
            .then(|| format!("lambda = {lambda}, lambda_inv = {lambda_inv}")),
    };
    let bar_lambda = conj(ring, &lambda);
    let bar_lambda_one = AxiomCheck {
        name: "bar(lambda) = 1",
        passed: ring.is_one(&bar_lambda),
        counterexample: (!ring.is_one(&bar_lambda)).then(|| format!("bar(lambda) = {bar_lambda}")),
    };
    let bar_li = conj(ring, &lambda_inv);
    let lambda_sq = ring.mul(&lambda, &lambda);
    let bar_lambda_inv = AxiomCheck {
        name: "bar(lambda_inv) = lambda^2",
        passed: bar_li == lambda_sq,
        counterexample: (bar_li != lambda_sq)
            .then(|| format!("bar(lambda_inv) = {bar_li}, lambda^2 = {lambda_sq}")),
    };

    AxiomReport {
        ring: ring.to_string(),
        sample_count,
        seed,
        checks: vec![
            involutive,
            additive,
            multiplicative,
            commutative,
            lambda_unit,
            bar_lambda_one,
            bar_lambda_inv,
        ],
    }
}
