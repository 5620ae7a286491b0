//! Odd quadratic spaces: Gram-matrix form evaluation, the Heisenberg group,
//! form parameters, ESD transvections, and elementary transvections.
//!
//! The form convention is `⟨x,y⟩ = Σ bar(x_i)·λ⁻¹·gram_{ij}·y_j`, fixed so
//! that `⟨e_1,e_{−1}⟩ = gram_{12} = 1` reproduces the hyperbolic pair. On the
//! standard hyperbolic basis the ordering is `(e_1, e_{−1}, …, e_m, e_{−m},
//! V_0-basis)` with 1-based positions `pos(k) = 2k−1`, `pos(−k) = 2k`; this is
//! the unique ordering under which the Gram matrix is `ψ̃_m ⊥ φ`.

use std::fmt;

use crate::matrix::{same_ring, Mat, RowVec};
use crate::ring::{Elem, Ring};
use crate::vaserstein::psi_tilde;
use crate::{Error, Result};

/// Which shipped form parameter the space carries: the minimal one
/// `{(0, s + bar(s))}` or the trace kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormParameterMode {
    Min,
    Max,
}

/// An element (v, r) of the Heisenberg group 𝔥 = V × R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergElement {
    pub v: RowVec,
    pub r: Elem,
}

impl HeisenbergElement {
    pub fn new(v: RowVec, r: Elem) -> HeisenbergElement {
        HeisenbergElement { v, r }
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.r)
    }
}

/// An odd quadratic space: a ring instance, an anti-Hermitian Gram matrix,
/// and a form parameter mode. Immutable and safe to share across threads.
#[derive(Debug, Clone)]
pub struct OddQuadraticSpace {
    ring: Ring,
    gram: Mat,
    mode: FormParameterMode,
    /// Set when the leading 2m×2m block is the standard hyperbolic ψ̃_m and
    /// the basis follows the standard ordering.
    hyperbolic_rank: Option<usize>,
}

impl OddQuadraticSpace {
    /// Wraps an arbitrary anti-Hermitian Gram matrix.
    pub fn new(gram: Mat, mode: FormParameterMode) -> Result<OddQuadraticSpace> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "gram matrix must be square, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_anti_hermitian() {
            return Err(Error::Precondition(
                "gram matrix is not anti-Hermitian: gram_ji != -bar(gram_ij)".into(),
            ));
        }
        let ring = gram.ring().clone();
        Ok(OddQuadraticSpace { ring, gram, mode, hyperbolic_rank: None })
    }

    /// The standard odd hyperbolic space ℍ^m ⊕ V_0 with Gram matrix
    /// ψ̃_m ⊥ φ. `v0_gram` may be omitted for a purely hyperbolic space.
    pub fn hyperbolic(
        ring: &Ring,
        m: usize,
        v0_gram: Option<Mat>,
        mode: FormParameterMode,
    ) -> Result<OddQuadraticSpace> {
        if m == 0 {
            return Err(Error::Config("hyperbolic rank m must be >= 1".into()));
        }
        let phi = v0_gram.unwrap_or_else(|| Mat::empty(ring.clone()));
        same_ring(ring, phi.ring())?;
        let gram = psi_tilde(ring, m)?.perp(&phi)?;
        let mut space = OddQuadraticSpace::new(gram, mode)?;
        space.hyperbolic_rank = Some(m);
        Ok(space)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn mode(&self) -> FormParameterMode {
        self.mode
    }

    pub fn hyperbolic_rank(&self) -> Option<usize> {
        self.hyperbolic_rank
    }

    /// Basis vector by signed index: `i = k` maps to 1-based position 2k−1,
    /// `i = −k` to position 2k, for 1 ≤ k ≤ m.
    pub fn basis_signed(&self, i: i64) -> Result<RowVec> {
        let m = self.hyperbolic_rank.ok_or_else(|| {
            Error::Precondition("space has no standard hyperbolic basis".into())
        })? as i64;
        if i == 0 || i.abs() > m {
            return Err(Error::IndexOutOfRange(format!(
                "signed basis index {i} with hyperbolic rank {m}"
            )));
        }
        let pos0 = if i > 0 { 2 * i - 2 } else { -2 * i - 1 } as usize;
        Ok(RowVec::unit(self.ring.clone(), self.dim(), pos0))
    }

    fn check_len(&self, v: &RowVec) -> Result<()> {
        same_ring(&self.ring, v.ring())?;
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// ⟨x,y⟩ = Σ bar(x_i)·λ⁻¹·gram_{ij}·y_j.
    pub fn form(&self, x: &RowVec, y: &RowVec) -> Result<Elem> {
        self.check_len(x)?;
        self.check_len(y)?;
        let gx = x.conj().mul_mat(&self.gram)?;
        let mut acc = self.ring.zero();
        for j in 0..self.dim() {
            acc = self.ring.add(&acc, &self.ring.mul(gx.at(j), y.at(j)));
        }
        Ok(self.ring.mul(&self.ring.lambda_inv(), &acc))
    }

    pub fn h_identity(&self) -> HeisenbergElement {
        HeisenbergElement::new(RowVec::zeros(self.ring.clone(), self.dim()), self.ring.zero())
    }

    /// (v1,r) ∔ (v2,s) = (v1+v2, r+s+⟨v1,v2⟩).
    pub fn h_add(
        &self,
        z1: &HeisenbergElement,
        z2: &HeisenbergElement,
    ) -> Result<HeisenbergElement> {
        let cross = self.form(&z1.v, &z2.v)?;
        Ok(HeisenbergElement::new(
            z1.v.add(&z2.v)?,
            self.ring.add(&self.ring.add(&z1.r, &z2.r), &cross),
        ))
    }

    /// ∸(v,r) = (−v, −r+⟨v,v⟩).
    pub fn h_neg(&self, z: &HeisenbergElement) -> Result<HeisenbergElement> {
        let self_form = self.form(&z.v, &z.v)?;
        Ok(HeisenbergElement::new(z.v.neg(), self.ring.sub(&self_form, &z.r)))
    }

    /// Right R-action (v,r) ↼ s = (v·s, bar(s)·λ⁻¹·r·s).
    pub fn h_act(&self, z: &HeisenbergElement, s: &Elem) -> Result<HeisenbergElement> {
        self.check_len(&z.v)?;
        let scaled = self.ring.mul(
            &self.ring.mul(&self.ring.conj(s), &self.ring.lambda_inv()),
            &self.ring.mul(&z.r, s),
        );
        Ok(HeisenbergElement::new(z.v.scale(s), scaled))
    }

    /// tr(v,r) = r − bar(r) − ⟨v,v⟩; a group homomorphism 𝔥 → R.
    pub fn h_trace(&self, z: &HeisenbergElement) -> Result<Elem> {
        let self_form = self.form(&z.v, &z.v)?;
        Ok(self
            .ring
            .sub(&self.ring.sub(&z.r, &self.ring.conj(&z.r)), &self_form))
    }

    /// Literal membership in the shipped parameter sets: the trace kernel in
    /// `Max` mode, `{(0, s + bar(s))}` in `Min` mode. `Min` mode needs a
    /// per-instance decider and errors on rings that ship none.
    pub fn param_contains(&self, z: &HeisenbergElement) -> Result<bool> {
        match self.mode {
            FormParameterMode::Max => Ok(self.ring.is_zero(&self.h_trace(z)?)),
            FormParameterMode::Min => {
                if !z.v.is_zero() {
                    return Ok(false);
                }
                self.ring.min_part_contains(&z.r)
            }
        }
    }

    /// The standard hyperbolic quadratic value q(v) = Σ bar(v_{2k−1})·λ⁻¹·v_{2k}
    /// over the hyperbolic coordinate pairs.
    fn std_quadratic_value(&self, v: &RowVec, m: usize) -> Elem {
        let li = self.ring.lambda_inv();
        let mut acc = self.ring.zero();
        for k in 0..m {
            let term = self.ring.mul(
                &self.ring.mul(&self.ring.conj(v.at(2 * k)), &li),
                v.at(2 * k + 1),
            );
            acc = self.ring.add(&acc, &term);
        }
        acc
    }

    /// Membership of (v, r) in the form parameter 𝔏 of the space, used as the
    /// ESD admissibility gate. In `Max` mode this is the trace kernel. In
    /// `Min` mode on a standard hyperbolic space, 𝔏 is the parameter generated
    /// by the minimal part together with the hyperbolic basis pairs (e_i, 0):
    /// the V_0 coordinates must vanish and r must differ from the standard
    /// quadratic value of v by an element of the minimal part. Without a
    /// standard basis, `Min` mode falls back to literal minimal membership.
    pub fn param_admissible(&self, z: &HeisenbergElement) -> Result<bool> {
        match self.mode {
            FormParameterMode::Max => Ok(self.ring.is_zero(&self.h_trace(z)?)),
            FormParameterMode::Min => match self.hyperbolic_rank {
                Some(m) => {
                    if (2 * m..self.dim()).any(|p| !self.ring.is_zero(z.v.at(p))) {
                        return Ok(false);
                    }
                    let q = self.std_quadratic_value(&z.v, m);
                    self.ring.min_part_contains(&self.ring.sub(&z.r, &q))
                }
                None => self.param_contains(z),
            },
        }
    }

    fn check_esd_preconditions(&self, v1: &RowVec, v2: &RowVec, r: &Elem) -> Result<()> {
        self.check_len(v1)?;
        self.check_len(v2)?;
        let pairing = self.form(v1, v2)?;
        if !self.ring.is_zero(&pairing) {
            return Err(Error::Precondition(format!(
                "ESD orthogonality: <v1,v2> = {pairing} != 0"
            )));
        }
        let z1 = HeisenbergElement::new(v1.clone(), self.ring.zero());
        if !self.param_admissible(&z1)? {
            return Err(Error::Precondition(
                "ESD parameter membership: (v1, 0) is not in the form parameter".into(),
            ));
        }
        let z2 = HeisenbergElement::new(v2.clone(), r.clone());
        if !self.param_admissible(&z2)? {
            return Err(Error::Precondition(
                "ESD parameter membership: (v2, r) is not in the form parameter".into(),
            ));
        }
        Ok(())
    }

    fn esd_apply_unchecked(
        &self,
        v1: &RowVec,
        v2: &RowVec,
        r: &Elem,
        w: &RowVec,
    ) -> Result<RowVec> {
        let f2 = self.form(v2, w)?;
        let f1 = self.form(v1, w)?;
        let coeff = self
            .ring
            .mul(&self.ring.lambda_inv(), &self.ring.add(&f2, &self.ring.mul(r, &f1)));
        w.add(&v1.scale(&coeff))?.add(&v2.scale(&f1))
    }

    /// T_{v1,v2}(r)(w) = w + v1·λ⁻¹(⟨v2,w⟩ + r⟨v1,w⟩) + v2·⟨v1,w⟩, after
    /// checking ⟨v1,v2⟩ = 0 and that (v1,0), (v2,r) lie in the form parameter.
    pub fn esd_apply(
        &self,
        v1: &RowVec,
        v2: &RowVec,
        r: &Elem,
        w: &RowVec,
    ) -> Result<RowVec> {
        self.check_len(w)?;
        self.check_esd_preconditions(v1, v2, r)?;
        self.esd_apply_unchecked(v1, v2, r, w)
    }

    /// Matrix of the ESD transvection: column j is the image of the j-th
    /// basis vector.
    pub fn esd_matrix(&self, v1: &RowVec, v2: &RowVec, r: &Elem) -> Result<Mat> {
        self.check_esd_preconditions(v1, v2, r)?;
        let n = self.dim();
        let mut out = Mat::zero(self.ring.clone(), n, n);
        for j in 0..n {
            let image = self.esd_apply_unchecked(
                v1,
                v2,
                r,
                &RowVec::unit(self.ring.clone(), n, j),
            )?;
            for i in 0..n {
                out.set(i, j, image.at(i).clone());
            }
        }
        Ok(out)
    }

    /// Matrix form of ⟨Mx, My⟩ = ⟨x, y⟩ on basis vectors:
    /// conj_transpose(M)·λ⁻¹·gram·M = gram. For λ = 1 this is the familiar
    /// sandwich invariance of the Gram matrix.
    pub fn preserves_form(&self, m: &Mat) -> Result<bool> {
        same_ring(&self.ring, m.ring())?;
        if (m.rows(), m.cols()) != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a space of dimension {}",
                m.rows(),
                m.cols(),
                self.dim()
            )));
        }
        let twisted_gram = self.gram.scale(&self.ring.lambda_inv());
        let sandwich = m.conj_transpose().mul(&twisted_gram)?.mul(m)?;
        Ok(sandwich == self.gram)
    }

    /// Diagnostic for the odd unitary group's second condition: checks
    /// (f(e_p) − e_p, ⟨e_p − f(e_p), e_p⟩) ∈ 𝔏 on basis vectors. Only the
    /// trace-kernel parameter is decidable here, so `Max` mode is required.
    pub fn equiv_identity_mod_param(&self, m: &Mat) -> Result<bool> {
        if self.mode != FormParameterMode::Max {
            return Err(Error::Precondition(
                "identity-equivalence diagnostic is available only in L_max mode".into(),
            ));
        }
        same_ring(&self.ring, m.ring())?;
        for p in 0..self.dim() {
            let e = RowVec::unit(self.ring.clone(), self.dim(), p);
            let fe = m.col(p);
            let diff = fe.add(&e.neg())?;
            let scalar = self.form(&diff.neg(), &e)?;
            if !self.param_contains(&HeisenbergElement::new(diff, scalar))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn epsilon(&self, i: i64) -> Elem {
        if i > 0 {
            self.ring.lambda_inv()
        } else {
            self.ring.from_i64(-1)
        }
    }

    /// Short elementary transvection T_{i,j}(r) = T_{e_{−j}, −e_i·r·ε_j}(0)
    /// for signed indices with j ≠ ±i.
    pub fn transvection_short(&self, i: i64, j: i64, r: &Elem) -> Result<Mat> {
        if j == i || j == -i {
            return Err(Error::Precondition(format!(
                "short transvection needs j != ±i, got i = {i}, j = {j}"
            )));
        }
        let v1 = self.basis_signed(-j)?;
        let v2 = self
            .basis_signed(i)?
            .scale(&self.ring.mul(r, &self.epsilon(j)))
            .neg();
        self.esd_matrix(&v1, &v2, &self.ring.zero())
    }

    /// Long elementary transvection
    /// T_i(v, r) = T_{e_i, v·ε_{−i}}(−bar(ε_{−i})·λ⁻¹·r·ε_{−i}) for (v, r) in
    /// the form parameter and v orthogonal to e_i. ESD preconditions on the
    /// substituted arguments are re-checked and propagate as errors.
    pub fn transvection_long(&self, i: i64, v: &RowVec, r: &Elem) -> Result<Mat> {
        self.check_len(v)?;
        let e_i = self.basis_signed(i)?;
        let pairing = self.form(&e_i, v)?;
        if !self.ring.is_zero(&pairing) {
            return Err(Error::Precondition(format!(
                "long transvection: <e_i, v> = {pairing} != 0"
            )));
        }
        if !self.param_contains(&HeisenbergElement::new(v.clone(), r.clone()))? {
            return Err(Error::Precondition(
                "long transvection: (v, r) is not in the form parameter".into(),
            ));
        }
        let s = self.epsilon(-i);
        let scalar = self.ring.neg(&self.ring.mul(
            &self.ring.mul(&self.ring.conj(&s), &self.ring.lambda_inv()),
            &self.ring.mul(r, &s),
        ));
        self.esd_matrix(&e_i, &v.scale(&s), &scalar)
    }
}
