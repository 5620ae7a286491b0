//! Builders for the recursive form matrices ψ̃_r / ψ̃'_r, the assembled block
//! data (c, μ, d, ρ, Ψ, Ψ⁻¹), the Vaserstein-type matrices θ(v), η(v), L(v),
//! L(v)*, and the original symplectic α/β construction.
//!
//! θ(v) = I + dᵀ·v̄·μ differs from the identity only in row 1, and
//! η(v) = I − λ⁻¹·ρ·v̄ᵀ·c only in column 1. The first coordinate of v never
//! affects either: the first column of μ and the first row of ρ are zero.
//! `theta_explicit` / `eta_explicit` rebuild the same matrices entry by entry
//! from their printed closed forms and serve as independent oracles.

use crate::matrix::{same_ring, Mat, RowVec};
use crate::ring::{Elem, Ring};
use crate::{Error, Result};

/// ψ̃_r: the 2r×2r standard hyperbolic form matrix,
/// ψ̃_1 = [[0, 1], [−λ, 0]] and ψ̃_r = ψ̃_1 ⊥ ψ̃_{r−1}. r = 0 gives the 0×0
/// matrix (the recursion's silent base).
pub fn psi_tilde(ring: &Ring, r: usize) -> Result<Mat> {
    let one = ring.one();
    let neg_lambda = ring.neg(&ring.lambda());
    let block = Mat::from_rows(
        ring.clone(),
        vec![vec![ring.zero(), one], vec![neg_lambda, ring.zero()]],
    )?;
    let mut out = Mat::empty(ring.clone());
    for _ in 0..r {
        out = block.perp(&out)?;
    }
    Ok(out)
}

/// ψ̃'_r: the inverse family, ψ̃'_1 = [[0, −λ⁻¹], [1, 0]] with the same
/// perp recursion; ψ̃_r · ψ̃'_r = I_{2r}.
pub fn psi_tilde_prime(ring: &Ring, r: usize) -> Result<Mat> {
    let one = ring.one();
    let neg_lambda_inv = ring.neg(&ring.lambda_inv());
    let block = Mat::from_rows(
        ring.clone(),
        vec![vec![ring.zero(), neg_lambda_inv], vec![one, ring.zero()]],
    )?;
    let mut out = Mat::empty(ring.clone());
    for _ in 0..r {
        out = block.perp(&out)?;
    }
    Ok(out)
}

/// [[corner, top], [leftᵀ, body]] with a 1×1 corner.
fn bordered(corner: Elem, top: &RowVec, left: &RowVec, body: &Mat) -> Result<Mat> {
    let ring = body.ring().clone();
    let n = body.rows();
    if top.len() != n || left.len() != n || !body.is_square() {
        return Err(Error::DimensionMismatch("bordered block assembly".into()));
    }
    let mut out = Mat::zero(ring, n + 1, n + 1);
    out.set(0, 0, corner);
    for j in 0..n {
        out.set(0, j + 1, top.at(j).clone());
        out.set(j + 1, 0, left.at(j).clone());
        for i in 0..n {
            out.set(i + 1, j + 1, body.at(i, j).clone());
        }
    }
    Ok(out)
}

/// The assembled form data for hyperbolic rank m and a V₀ form matrix φ of
/// size n: N = n+2m−1, the border vectors c, d, the interior blocks μ, ρ, and
/// Ψ = [[0, c], [−λcᵀ, μ]] with Ψ⁻¹ = [[0, d], [−λdᵀ, ρ]].
///
/// φ must be invertible but is not required to be anti-Hermitian; θ/η and
/// their factorizations are insensitive to that, and only the closed-form
/// preimage oracles restrict it.
#[derive(Debug, Clone)]
pub struct HyperbolicFormData {
    ring: Ring,
    m: usize,
    n: usize,
    phi: Mat,
    phi_inv: Mat,
    c: RowVec,
    d: RowVec,
    mu: Mat,
    rho: Mat,
    psi: Mat,
    psi_inv: Mat,
}

impl HyperbolicFormData {
    pub fn assemble(
        ring: &Ring,
        m: usize,
        n: usize,
        phi: Mat,
        phi_inv: Option<Mat>,
    ) -> Result<HyperbolicFormData> {
        if m == 0 {
            return Err(Error::Config("hyperbolic rank m must be >= 1".into()));
        }
        same_ring(ring, phi.ring())?;
        if (phi.rows(), phi.cols()) != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "phi must be {n}x{n}, got {}x{}",
                phi.rows(),
                phi.cols()
            )));
        }
        let phi_inv = match phi_inv {
            Some(p) => {
                same_ring(ring, p.ring())?;
                p
            }
            None => phi.inverse()?,
        };
        if (phi_inv.rows(), phi_inv.cols()) != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "phi_inv must be {n}x{n}, got {}x{}",
                phi_inv.rows(),
                phi_inv.cols()
            )));
        }
        if !phi.mul(&phi_inv)?.is_identity() || !phi_inv.mul(&phi)?.is_identity() {
            return Err(Error::Precondition("phi_inv is not a two-sided inverse of phi".into()));
        }

        let big_n = n + 2 * m - 1;
        let mut c = RowVec::zeros(ring.clone(), big_n);
        c.set(0, ring.one());
        let mut d = RowVec::zeros(ring.clone(), big_n);
        d.set(0, ring.neg(&ring.lambda_inv()));

        let zero1 = Mat::zero(ring.clone(), 1, 1);
        let mu = zero1.perp(&psi_tilde(ring, m - 1)?)?.perp(&phi)?;
        let rho = zero1.perp(&psi_tilde_prime(ring, m - 1)?)?.perp(&phi_inv)?;

        let neg_lambda = ring.neg(&ring.lambda());
        let psi = bordered(ring.zero(), &c, &c.scale(&neg_lambda), &mu)?;
        let psi_inv = bordered(ring.zero(), &d, &d.scale(&neg_lambda), &rho)?;

        // Construction invariants: the bordered assembly must agree with the
        // orthogonal-sum form ψ̃_m ⊥ φ, and Ψ·Ψ⁻¹ = I.
        let direct = psi_tilde(ring, m)?.perp(&phi)?;
        if psi != direct {
            return Err(Error::Precondition(
                "block assembly of Psi disagrees with psi_tilde(m) perp phi".into(),
            ));
        }
        if !psi.mul(&psi_inv)?.is_identity() {
            return Err(Error::Precondition("Psi * Psi_inv != I".into()));
        }

        Ok(HyperbolicFormData { ring: ring.clone(), m, n, phi, phi_inv, c, d, mu, rho, psi, psi_inv })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Hyperbolic rank m.
    pub fn rank(&self) -> usize {
        self.m
    }

    /// dim V₀ = n.
    pub fn v0_dim(&self) -> usize {
        self.n
    }

    /// N = n + 2m − 1: the size of θ/η and the length of their argument.
    pub fn n_dim(&self) -> usize {
        self.n + 2 * self.m - 1
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn phi_inv(&self) -> &Mat {
        &self.phi_inv
    }

    pub fn c(&self) -> &RowVec {
        &self.c
    }

    pub fn d(&self) -> &RowVec {
        &self.d
    }

    pub fn mu(&self) -> &Mat {
        &self.mu
    }

    pub fn rho(&self) -> &Mat {
        &self.rho
    }

    pub fn psi(&self) -> &Mat {
        &self.psi
    }

    pub fn psi_inv(&self) -> &Mat {
        &self.psi_inv
    }

    fn check_vec(&self, v: &RowVec) -> Result<()> {
        same_ring(&self.ring, v.ring())?;
        if v.len() != self.n_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} where N = {}",
                v.len(),
                self.n_dim()
            )));
        }
        Ok(())
    }

    /// θ(v) = I_N + dᵀ·v̄·μ.
    pub fn theta(&self, v: &RowVec) -> Result<Mat> {
        self.check_vec(v)?;
        let row = v.conj().mul_mat(&self.mu)?;
        let perturbation = Mat::outer(&self.d, &row)?;
        Mat::identity(self.ring.clone(), self.n_dim()).add(&perturbation)
    }

    /// η(v) = I_N − λ⁻¹·ρ·v̄ᵀ·c.
    pub fn eta(&self, v: &RowVec) -> Result<Mat> {
        self.check_vec(v)?;
        let col = self.rho.mul_col(&v.conj())?.scale(&self.ring.lambda_inv());
        let perturbation = Mat::outer(&col, &self.c)?;
        Mat::identity(self.ring.clone(), self.n_dim()).sub(&perturbation)
    }

    /// θ(v) rebuilt entry by entry from the printed display; oracle for
    /// [`Self::theta`]. Row 1 reads
    /// (1, ā₃, −λ⁻¹ā₂, …, ā_{2m−1}, −λ⁻¹ā_{2m−2}, −λ⁻¹Σ_j ā_{2m−1+j}·φ_{jk}).
    pub fn theta_explicit(&self, v: &RowVec) -> Result<Mat> {
        self.check_vec(v)?;
        let ring = &self.ring;
        let li = ring.lambda_inv();
        let mut out = Mat::identity(ring.clone(), self.n_dim());
        for k in 1..self.m {
            // column 2k (1-based): ā_{2k+1}; column 2k+1: −λ⁻¹·ā_{2k}.
            out.set(0, 2 * k - 1, ring.conj(v.at(2 * k)));
            out.set(0, 2 * k, ring.neg(&ring.mul(&li, &ring.conj(v.at(2 * k - 1)))));
        }
        for k in 1..=self.n {
            let mut acc = ring.zero();
            for j in 1..=self.n {
                let term = ring.mul(
                    &ring.conj(v.at(2 * self.m - 2 + j)),
                    self.phi.at(j - 1, k - 1),
                );
                acc = ring.add(&acc, &term);
            }
            out.set(0, 2 * self.m - 2 + k, ring.neg(&ring.mul(&li, &acc)));
        }
        Ok(out)
    }

    /// η(v) rebuilt entry by entry from the printed display; oracle for
    /// [`Self::eta`]. Column 1 reads
    /// (1, λ⁻²ā₃, −λ⁻¹ā₂, …, λ⁻²ā_{2m−1}, −λ⁻¹ā_{2m−2}, −λ⁻¹Σ_j ā_{2m−1+j}·(φ⁻¹)_{kj})ᵀ.
    pub fn eta_explicit(&self, v: &RowVec) -> Result<Mat> {
        self.check_vec(v)?;
        let ring = &self.ring;
        let li = ring.lambda_inv();
        let li2 = ring.mul(&li, &li);
        let mut out = Mat::identity(ring.clone(), self.n_dim());
        for k in 1..self.m {
            // row 2k (1-based): λ⁻²·ā_{2k+1}; row 2k+1: −λ⁻¹·ā_{2k}.
            out.set(2 * k - 1, 0, ring.mul(&li2, &ring.conj(v.at(2 * k))));
            out.set(2 * k, 0, ring.neg(&ring.mul(&li, &ring.conj(v.at(2 * k - 1)))));
        }
        for k in 1..=self.n {
            let mut acc = ring.zero();
            for j in 1..=self.n {
                let term = ring.mul(
                    &ring.conj(v.at(2 * self.m - 2 + j)),
                    self.phi_inv.at(k - 1, j - 1),
                );
                acc = ring.add(&acc, &term);
            }
            out.set(2 * self.m - 2 + k, 0, ring.neg(&ring.mul(&li, &acc)));
        }
        Ok(out)
    }

    /// L(v) = [[1, 0], [vᵀ, θ(v)]], size N+1.
    pub fn l_of(&self, v: &RowVec) -> Result<Mat> {
        let theta = self.theta(v)?;
        bordered(
            self.ring.one(),
            &RowVec::zeros(self.ring.clone(), self.n_dim()),
            v,
            &theta,
        )
    }

    /// L(v)* = [[1, v], [0, η(v)]], size N+1.
    pub fn l_star_of(&self, v: &RowVec) -> Result<Mat> {
        let eta = self.eta(v)?;
        bordered(
            self.ring.one(),
            v,
            &RowVec::zeros(self.ring.clone(), self.n_dim()),
            &eta,
        )
    }

    /// Observational sandwich for L(v)-type matrices M of size N+1: returns
    /// (conj_transpose(M)·λ⁻¹Ψ·M == λ⁻¹Ψ, conj_transpose(M)·λ⁻¹Ψ·M == Ψ).
    /// The second equality is the basis-vector isometry condition
    /// ⟨Mx, My⟩ = ⟨x, y⟩; the two coincide when λ = 1. Neither is an
    /// acceptance gate: the hypotheses under which L(v) is unitary are not
    /// part of this construction.
    pub fn psi_sandwich_diagnostic(&self, m: &Mat) -> Result<(bool, bool)> {
        same_ring(&self.ring, m.ring())?;
        let size = self.n_dim() + 1;
        if (m.rows(), m.cols()) != (size, size) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix against Psi of size {}",
                m.rows(),
                m.cols(),
                size
            )));
        }
        let scaled = self.psi.scale(&self.ring.lambda_inv());
        let sandwich = m.conj_transpose().mul(&scaled)?.mul(m)?;
        Ok((sandwich == scaled, sandwich == self.psi))
    }
}

/// Output of the symplectic Vaserstein construction for an invertible
/// alternating form.
#[derive(Debug, Clone)]
pub struct SymplecticPair {
    pub alpha: Mat,
    pub beta: Mat,
    pub m_lower: Mat,
    pub m_upper: Mat,
}

/// For an invertible alternating φ = [[0, −c], [cᵀ, μ]] of size 2n with
/// φ⁻¹ = [[0, d], [−dᵀ, ρ]], builds α = I + dᵀ·v·μ and β = I − ρ·vᵀ·c
/// together with the bordered matrices [[1,0],[vᵀ,α]] and [[1,−v],[0,β]];
/// both satisfy Mᵀ·φ·M = φ. Requires the identity involution.
///
/// The upper border carries −v: with β as written, the block conditions are
/// cβ = c and βᵀμβ = μ + cᵀv − vᵀc, and only the −v border cancels the
/// cross terms (the +v border leaves a 2(cᵀv − vᵀc) defect).
pub fn symplectic_pair(phi: &Mat, phi_inv: &Mat, v: &RowVec) -> Result<SymplecticPair> {
    let ring = phi.ring().clone();
    if !ring.is_identity_involution() {
        return Err(Error::Precondition(format!(
            "symplectic construction needs the identity involution, ring is `{ring}`"
        )));
    }
    same_ring(&ring, phi_inv.ring())?;
    same_ring(&ring, v.ring())?;
    if !phi.is_alternating() {
        return Err(Error::Precondition("phi is not alternating".into()));
    }
    let size = phi.rows();
    if size < 2 || size % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "alternating form must have positive even size, got {size}"
        )));
    }
    if (phi_inv.rows(), phi_inv.cols()) != (size, size)
        || !phi.mul(phi_inv)?.is_identity()
        || !phi_inv.mul(phi)?.is_identity()
    {
        return Err(Error::Precondition("phi_inv is not a two-sided inverse of phi".into()));
    }
    if !ring.is_zero(phi_inv.at(0, 0)) {
        return Err(Error::Precondition(
            "block shapes inconsistent: phi_inv has a nonzero corner".into(),
        ));
    }
    let n_tail = size - 1;
    if v.len() != n_tail {
        return Err(Error::DimensionMismatch(format!(
            "v must have length {n_tail}, got {}",
            v.len()
        )));
    }

    let d = RowVec::new(ring.clone(), (0..n_tail).map(|j| phi_inv.at(0, j + 1).clone()).collect());
    let c = RowVec::new(
        ring.clone(),
        (0..n_tail).map(|j| ring.neg(phi.at(0, j + 1))).collect(),
    );
    let mu = phi.block(1, 1, n_tail, n_tail)?;
    let rho = phi_inv.block(1, 1, n_tail, n_tail)?;

    let alpha = Mat::identity(ring.clone(), n_tail).add(&Mat::outer(&d, &v.mul_mat(&mu)?)?)?;
    let beta = Mat::identity(ring.clone(), n_tail).sub(&Mat::outer(&rho.mul_col(v)?, &c)?)?;

    let m_lower = bordered(ring.one(), &RowVec::zeros(ring.clone(), n_tail), v, &alpha)?;
    let m_upper = bordered(ring.one(), &v.neg(), &RowVec::zeros(ring.clone(), n_tail), &beta)?;

    Ok(SymplecticPair { alpha, beta, m_lower, m_upper })
}

/// Mᵀ·φ·M = φ.
pub fn is_symplectic(phi: &Mat, m: &Mat) -> Result<bool> {
    let sandwich = m.transpose().mul(phi)?.mul(m)?;
    Ok(sandwich == *phi)
}
