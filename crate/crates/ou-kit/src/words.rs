//! Words in elementary generators and in the θ/η generators, with exact
//! evaluation, the factorizations of θ(v)/η(v) into E_{1,*}/E_{*,1} letters,
//! preimage computation, and the constructive decomposition of arbitrary
//! elementary words into θ/η words.
//!
//! The normative preimage of E_{1,i}(a) / E_{i,1}(a) is a linear solve
//! against the invertible tail block diag(ψ̃'_{m−1}, φ⁻¹) (row side) or
//! diag(ψ̃_{m−1}, φ) (column side); it meets the exact postcondition for
//! every invertible φ. The printed closed forms are kept as a conditional
//! oracle: they agree on the hyperbolic index range over every shipped
//! commutative ring, and on the φ-range exactly when λ = 1 and φ is
//! anti-Hermitian.

use crate::matrix::{same_ring, Mat, RowVec};
use crate::ring::{Elem, Ring};
use crate::vaserstein::{psi_tilde, psi_tilde_prime, HyperbolicFormData};
use crate::{Error, Result};

/// One elementary letter E_{i,j}(a) with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryLetter {
    pub i: usize,
    pub j: usize,
    pub a: Elem,
}

/// An ordered word in elementary generators of a fixed size over a fixed
/// ring; evaluation is the ordered matrix product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryWord {
    ring: Ring,
    size: usize,
    letters: Vec<ElementaryLetter>,
}

impl ElementaryWord {
    pub fn new(ring: Ring, size: usize) -> ElementaryWord {
        ElementaryWord { ring, size, letters: Vec::new() }
    }

    pub fn push(&mut self, i: usize, j: usize, a: Elem) -> Result<()> {
        if i == j {
            return Err(Error::DiagonalIndex { i });
        }
        if i < 1 || i > self.size || j < 1 || j > self.size {
            return Err(Error::IndexOutOfRange(format!(
                "letter E_({i},{j}) in size {}",
                self.size
            )));
        }
        self.letters.push(ElementaryLetter { i, j, a });
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn letters(&self) -> &[ElementaryLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The ordered product of the letters, via elementary column operations.
    pub fn evaluate(&self) -> Result<Mat> {
        let mut out = Mat::identity(self.ring.clone(), self.size);
        for l in &self.letters {
            out.right_mul_elementary(l.i, l.j, &l.a)?;
        }
        Ok(out)
    }
}

/// A letter in the θ/η generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorLetter {
    Theta(RowVec),
    Eta(RowVec),
}

impl GeneratorLetter {
    pub fn vector(&self) -> &RowVec {
        match self {
            GeneratorLetter::Theta(v) | GeneratorLetter::Eta(v) => v,
        }
    }

    fn same_tag(&self, other: &GeneratorLetter) -> bool {
        matches!(
            (self, other),
            (GeneratorLetter::Theta(_), GeneratorLetter::Theta(_))
                | (GeneratorLetter::Eta(_), GeneratorLetter::Eta(_))
        )
    }
}

/// An ordered word in the θ/η generators for a fixed form configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    ring: Ring,
    n_dim: usize,
    letters: Vec<GeneratorLetter>,
}

impl GeneratorWord {
    pub fn new(ring: Ring, n_dim: usize) -> GeneratorWord {
        GeneratorWord { ring, n_dim, letters: Vec::new() }
    }

    pub fn push(&mut self, letter: GeneratorLetter) -> Result<()> {
        same_ring(&self.ring, letter.vector().ring())?;
        if letter.vector().len() != self.n_dim {
            return Err(Error::DimensionMismatch(format!(
                "letter vector of length {} where N = {}",
                letter.vector().len(),
                self.n_dim
            )));
        }
        self.letters.push(letter);
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The ordered product θ/η(v₁)·…·θ/η(v_k).
    pub fn evaluate(&self, data: &HyperbolicFormData) -> Result<Mat> {
        if data.n_dim() != self.n_dim {
            return Err(Error::DimensionMismatch(format!(
                "word over N = {} evaluated against form data with N = {}",
                self.n_dim,
                data.n_dim()
            )));
        }
        let mut out = Mat::identity(self.ring.clone(), self.n_dim);
        for l in &self.letters {
            let factor = match l {
                GeneratorLetter::Theta(v) => data.theta(v)?,
                GeneratorLetter::Eta(v) => data.eta(v)?,
            };
            out = out.mul(&factor)?;
        }
        Ok(out)
    }

    /// Peephole normalization: adjacent same-tag letters merge by vector
    /// addition (the homomorphism law) and zero vectors are dropped.
    /// Evaluation is preserved.
    pub fn normalized(&self) -> GeneratorWord {
        let mut out: Vec<GeneratorLetter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if l.vector().is_zero() {
                continue;
            }
            match out.last() {
                Some(top) if top.same_tag(l) => {
                    let merged = top.vector().add(l.vector()).expect("same config");
                    out.pop();
                    if !merged.is_zero() {
                        out.push(match l {
                            GeneratorLetter::Theta(_) => GeneratorLetter::Theta(merged),
                            GeneratorLetter::Eta(_) => GeneratorLetter::Eta(merged),
                        });
                    }
                }
                _ => out.push(l.clone()),
            }
        }
        GeneratorWord { ring: self.ring.clone(), n_dim: self.n_dim, letters: out }
    }
}

/// Which family of generators a preimage targets: row for E_{1,i}(a) = θ(v),
/// column for E_{i,1}(a) = η(v).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

/// The factorization of θ(v) into elementary letters, exactly as the product
///   Π E_{1,2k}(ā_{2k+1}) · Π E_{1,2k+1}(−λ⁻¹ā_{2k}) · Π E_{1,2m−1+k}(−λ⁻¹Σ_j ā_{2m−1+j}φ_{jk}).
/// Zero-coefficient letters are kept; evaluation reproduces θ(v) exactly.
pub fn factorize_theta(data: &HyperbolicFormData, v: &RowVec) -> Result<ElementaryWord> {
    let ring = data.ring();
    same_ring(ring, v.ring())?;
    let n_dim = data.n_dim();
    if v.len() != n_dim {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} where N = {n_dim}",
            v.len()
        )));
    }
    let m = data.rank();
    let n = data.v0_dim();
    let li = ring.lambda_inv();
    let mut word = ElementaryWord::new(ring.clone(), n_dim);
    for k in 1..m {
        word.push(1, 2 * k, ring.conj(v.at(2 * k)))?;
    }
    for k in 1..m {
        word.push(1, 2 * k + 1, ring.neg(&ring.mul(&li, &ring.conj(v.at(2 * k - 1)))))?;
    }
    for k in 1..=n {
        let mut acc = ring.zero();
        for j in 1..=n {
            acc = ring.add(
                &acc,
                &ring.mul(&ring.conj(v.at(2 * m - 2 + j)), data.phi().at(j - 1, k - 1)),
            );
        }
        word.push(1, 2 * m - 1 + k, ring.neg(&ring.mul(&li, &acc)))?;
    }
    Ok(word)
}

/// The factorization of η(v) into column letters, as the product
///   Π E_{2k,1}(λ⁻²ā_{2k+1}) · Π E_{2k+1,1}(−λ⁻¹ā_{2k}) · Π E_{2m−1+k,1}(−λ⁻¹Σ_j ā_{2m−1+j}(φ⁻¹)_{kj}).
pub fn factorize_eta(data: &HyperbolicFormData, v: &RowVec) -> Result<ElementaryWord> {
    let ring = data.ring();
    same_ring(ring, v.ring())?;
    let n_dim = data.n_dim();
    if v.len() != n_dim {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} where N = {n_dim}",
            v.len()
        )));
    }
    let m = data.rank();
    let n = data.v0_dim();
    let li = ring.lambda_inv();
    let li2 = ring.mul(&li, &li);
    let mut word = ElementaryWord::new(ring.clone(), n_dim);
    for k in 1..m {
        word.push(2 * k, 1, ring.mul(&li2, &ring.conj(v.at(2 * k))))?;
    }
    for k in 1..m {
        word.push(2 * k + 1, 1, ring.neg(&ring.mul(&li, &ring.conj(v.at(2 * k - 1)))))?;
    }
    for k in 1..=n {
        let mut acc = ring.zero();
        for j in 1..=n {
            acc = ring.add(
                &acc,
                &ring.mul(&ring.conj(v.at(2 * m - 2 + j)), data.phi_inv().at(k - 1, j - 1)),
            );
        }
        word.push(2 * m - 1 + k, 1, ring.neg(&ring.mul(&li, &acc)))?;
    }
    Ok(word)
}

fn check_preimage_index(data: &HyperbolicFormData, i: usize) -> Result<()> {
    if i < 2 || i > data.n_dim() {
        return Err(Error::IndexOutOfRange(format!(
            "preimage index {i} must lie in [2, {}]",
            data.n_dim()
        )));
    }
    Ok(())
}

/// The v with θ(v) = E_{1,i}(a) (row side) or η(v) = E_{i,1}(a) (column
/// side), exactly, for any invertible φ. Solved on coordinates 2..N against
/// the invertible tail block; v₁ = 0.
pub fn generator_preimage(
    data: &HyperbolicFormData,
    side: Side,
    i: usize,
    a: &Elem,
) -> Result<RowVec> {
    check_preimage_index(data, i)?;
    let ring = data.ring();
    let m = data.rank();
    let n_dim = data.n_dim();
    let neg_lambda_a = ring.mul(&ring.neg(&ring.lambda()), a);
    // Tail coordinates are 2..N (1-based); the target has `a` at position i.
    let tail = match side {
        Side::Row => {
            // vbar_tail = -lambda·a · (row i-2 of diag(psi'_{m-1}, phi_inv)).
            let block_inv = psi_tilde_prime(ring, m - 1)?.perp(data.phi_inv())?;
            block_inv.row(i - 2).scale(&neg_lambda_a)
        }
        Side::Column => {
            // vbar_tail = -lambda·a · (column i-2 of diag(psi_{m-1}, phi)).
            let block_inv = psi_tilde(ring, m - 1)?.perp(data.phi())?;
            block_inv.col(i - 2).scale(&neg_lambda_a)
        }
    };
    let mut v = RowVec::zeros(ring.clone(), n_dim);
    for p in 0..tail.len() {
        v.set(p + 1, ring.conj(tail.at(p)));
    }
    Ok(v)
}

/// The printed closed-form preimages. On the hyperbolic index range
/// (2 ≤ i ≤ 2m−1) these agree with [`generator_preimage`] over every shipped
/// commutative ring; on the φ-range they reproduce E_{1,i}(a) / E_{i,1}(a)
/// only when λ = 1 and φ is anti-Hermitian, and are kept as an oracle for
/// exactly that tier.
pub fn closed_form_preimage(
    data: &HyperbolicFormData,
    side: Side,
    i: usize,
    a: &Elem,
) -> Result<RowVec> {
    check_preimage_index(data, i)?;
    let ring = data.ring();
    let m = data.rank();
    let n = data.v0_dim();
    let li = ring.lambda_inv();
    let li2 = ring.mul(&li, &li);
    let a_bar = ring.conj(a);
    let mut v = RowVec::zeros(ring.clone(), data.n_dim());
    if i < 2 * m {
        if i % 2 == 0 {
            // E_{1,2k}(a) = θ(ā·e_{2k+1});  E_{2k,1}(a) = η(λ⁻²·ā·e_{2k+1}).
            let coeff = match side {
                Side::Row => a_bar,
                Side::Column => ring.mul(&li2, &a_bar),
            };
            v.set(i, coeff);
        } else {
            // E_{1,2k+1}(a) = θ(−λ⁻¹·ā·e_{2k}); the η form is identical.
            v.set(i - 2, ring.neg(&ring.mul(&li, &a_bar)));
        }
    } else {
        let k = i - (2 * m - 1);
        debug_assert!(k >= 1 && k <= n);
        for j in 1..=n {
            let phi_coeff = match side {
                Side::Row => data.phi_inv().at(j - 1, k - 1),
                Side::Column => data.phi().at(k - 1, j - 1),
            };
            v.set(2 * m - 2 + j, ring.mul(&li2, &ring.mul(phi_coeff, &a_bar)));
        }
    }
    Ok(v)
}

/// Expresses E_{i,j}(a) as a θ/η word of length at most 4: a single preimage
/// letter when i = 1 or j = 1, and otherwise the Steinberg commutator
/// E_{i,j}(a) = E_{i,1}(a)·E_{1,j}(1)·E_{i,1}(−a)·E_{1,j}(−1) with each
/// factor replaced by its preimage letter.
pub fn decompose_elementary(
    data: &HyperbolicFormData,
    i: usize,
    j: usize,
    a: &Elem,
) -> Result<GeneratorWord> {
    let n_dim = data.n_dim();
    if i == j {
        return Err(Error::DiagonalIndex { i });
    }
    if i < 1 || i > n_dim || j < 1 || j > n_dim {
        return Err(Error::IndexOutOfRange(format!(
            "elementary position ({i},{j}) in size {n_dim}"
        )));
    }
    let ring = data.ring();
    let mut word = GeneratorWord::new(ring.clone(), n_dim);
    if i == 1 {
        word.push(GeneratorLetter::Theta(generator_preimage(data, Side::Row, j, a)?))?;
    } else if j == 1 {
        word.push(GeneratorLetter::Eta(generator_preimage(data, Side::Column, i, a)?))?;
    } else {
        let one = ring.one();
        word.push(GeneratorLetter::Eta(generator_preimage(data, Side::Column, i, a)?))?;
        word.push(GeneratorLetter::Theta(generator_preimage(data, Side::Row, j, &one)?))?;
        word.push(GeneratorLetter::Eta(generator_preimage(
            data,
            Side::Column,
            i,
            &ring.neg(a),
        )?))?;
        word.push(GeneratorLetter::Theta(generator_preimage(
            data,
            Side::Row,
            j,
            &ring.neg(&one),
        )?))?;
    }
    Ok(word)
}

/// Decomposes a whole elementary word letter by letter, then normalizes with
/// the peephole merge; evaluation matches the elementary word exactly.
pub fn decompose_word(data: &HyperbolicFormData, w: &ElementaryWord) -> Result<GeneratorWord> {
    same_ring(data.ring(), w.ring())?;
    if w.size() != data.n_dim() {
        return Err(Error::DimensionMismatch(format!(
            "word size {} against form data with N = {}",
            w.size(),
            data.n_dim()
        )));
    }
    let mut out = GeneratorWord::new(data.ring().clone(), data.n_dim());
    for l in w.letters() {
        for g in decompose_elementary(data, l.i, l.j, &l.a)?.letters {
            out.push(g)?;
        }
    }
    Ok(out.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn data_z_2_1() -> HyperbolicFormData {
        let z = Ring::integers();
        let phi = Mat::from_i64_rows(&z, &[&[1]]);
        HyperbolicFormData::assemble(&z, 2, 1, phi, None).unwrap()
    }

    #[test]
    fn factorize_theta_worked_example() {
        let data = data_z_2_1();
        let z = data.ring().clone();
        let v = RowVec::from_i64(&z, &[5, 7, 11, 13]);
        let word = factorize_theta(&data, &v).unwrap();
        let letters: Vec<(usize, usize, Elem)> =
            word.letters().iter().map(|l| (l.i, l.j, l.a.clone())).collect();
        assert_eq!(
            letters,
            vec![
                (1, 2, z.from_i64(11)),
                (1, 3, z.from_i64(-7)),
                (1, 4, z.from_i64(-13)),
            ]
        );
        assert_eq!(word.evaluate().unwrap(), data.theta(&v).unwrap());

        // v = 0 keeps the letters but zeroes every coefficient.
        let zero = RowVec::zeros(z.clone(), 4);
        let word = factorize_theta(&data, &zero).unwrap();
        assert_eq!(word.len(), 3);
        assert!(word.letters().iter().all(|l| z.is_zero(&l.a)));
        assert!(word.evaluate().unwrap().is_identity());
    }

    #[test]
    fn factorize_collapses_at_rank_one() {
        let z = Ring::integers();
        let phi = Mat::from_i64_rows(&z, &[&[0, 1], &[-1, 0]]);
        let data = HyperbolicFormData::assemble(&z, 1, 2, phi, None).unwrap();
        let v = RowVec::from_i64(&z, &[4, 5, 6]);
        let word = factorize_theta(&data, &v).unwrap();
        // No hyperbolic letters at m = 1, only the two φ-block letters.
        assert_eq!(word.len(), 2);
        assert!(word.letters().iter().all(|l| l.i == 1 && l.j >= 2));
        assert_eq!(word.evaluate().unwrap(), data.theta(&v).unwrap());
    }

    #[test]
    fn factorizations_match_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for ring in Ring::shipped() {
            for m in 1..=3usize {
                for n in 0..=2usize {
                    let (phi, phi_inv) =
                        crate::campaign::random_invertible(&ring, n, 2 * n, &mut rng);
                    let data =
                        HyperbolicFormData::assemble(&ring, m, n, phi, Some(phi_inv)).unwrap();
                    for _ in 0..20 {
                        let v = RowVec::new(
                            ring.clone(),
                            (0..data.n_dim()).map(|_| ring.sample(&mut rng)).collect(),
                        );
                        assert_eq!(
                            factorize_theta(&data, &v).unwrap().evaluate().unwrap(),
                            data.theta(&v).unwrap(),
                            "theta over {ring}, m={m}, n={n}"
                        );
                        assert_eq!(
                            factorize_eta(&data, &v).unwrap().evaluate().unwrap(),
                            data.eta(&v).unwrap(),
                            "eta over {ring}, m={m}, n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn preimage_worked_examples() {
        let data = data_z_2_1();
        let z = data.ring().clone();

        let v = generator_preimage(&data, Side::Row, 2, &z.from_i64(3)).unwrap();
        assert_eq!(v, RowVec::from_i64(&z, &[0, 0, 3, 0]));
        assert_eq!(
            data.theta(&v).unwrap(),
            Mat::elementary(&z, 4, 1, 2, &z.from_i64(3)).unwrap()
        );

        let v = generator_preimage(&data, Side::Row, 3, &z.from_i64(3)).unwrap();
        assert_eq!(v, RowVec::from_i64(&z, &[0, -3, 0, 0]));

        // phi-range index through the linear solve.
        let phi = Mat::from_i64_rows(&z, &[&[0, 1], &[-1, 0]]);
        let data = HyperbolicFormData::assemble(&z, 2, 2, phi, None).unwrap();
        let v = generator_preimage(&data, Side::Row, 4, &z.from_i64(5)).unwrap();
        assert_eq!(
            data.theta(&v).unwrap(),
            Mat::elementary(&z, 5, 1, 4, &z.from_i64(5)).unwrap()
        );

        assert!(generator_preimage(&data, Side::Row, 1, &z.one()).is_err());
        assert!(generator_preimage(&data, Side::Row, 6, &z.one()).is_err());
    }

    #[test]
    fn solver_preimages_are_exact_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for ring in Ring::shipped() {
            for m in 1..=3usize {
                for n in 0..=2usize {
                    let (phi, phi_inv) =
                        crate::campaign::random_invertible(&ring, n, 2 * n, &mut rng);
                    let data =
                        HyperbolicFormData::assemble(&ring, m, n, phi, Some(phi_inv)).unwrap();
                    let nd = data.n_dim();
                    for i in 2..=nd {
                        let a = ring.sample(&mut rng);
                        let v = generator_preimage(&data, Side::Row, i, &a).unwrap();
                        assert_eq!(
                            data.theta(&v).unwrap(),
                            Mat::elementary(&ring, nd, 1, i, &a).unwrap(),
                            "row preimage over {ring}, m={m}, n={n}, i={i}"
                        );
                        let v = generator_preimage(&data, Side::Column, i, &a).unwrap();
                        assert_eq!(
                            data.eta(&v).unwrap(),
                            Mat::elementary(&ring, nd, i, 1, &a).unwrap(),
                            "column preimage over {ring}, m={m}, n={n}, i={i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_agree_on_hyperbolic_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for ring in Ring::shipped() {
            for m in 2..=3usize {
                let (phi, phi_inv) = crate::campaign::random_invertible(&ring, 2, 4, &mut rng);
                let data =
                    HyperbolicFormData::assemble(&ring, m, 2, phi, Some(phi_inv)).unwrap();
                for i in 2..=(2 * m - 1) {
                    for side in [Side::Row, Side::Column] {
                        let a = ring.sample(&mut rng);
                        let closed = closed_form_preimage(&data, side, i, &a).unwrap();
                        let solved = generator_preimage(&data, side, i, &a).unwrap();
                        assert_eq!(closed, solved, "over {ring}, m={m}, i={i}, {side:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_on_phi_range_need_anti_hermitian_phi() {
        // The pinned tier: phi = [[0,1],[-1,0]] over the integers and
        // phi = [[w]] over quad:-1; both have lambda = 1.
        let z = Ring::integers();
        let phi = Mat::from_i64_rows(&z, &[&[0, 1], &[-1, 0]]);
        let data = HyperbolicFormData::assemble(&z, 2, 2, phi, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for i in 4..=5 {
            for side in [Side::Row, Side::Column] {
                let a = z.sample(&mut rng);
                let closed = closed_form_preimage(&data, side, i, &a).unwrap();
                let target = match side {
                    Side::Row => Mat::elementary(&z, 5, 1, i, &a).unwrap(),
                    Side::Column => Mat::elementary(&z, 5, i, 1, &a).unwrap(),
                };
                let got = match side {
                    Side::Row => data.theta(&closed).unwrap(),
                    Side::Column => data.eta(&closed).unwrap(),
                };
                assert_eq!(got, target, "i={i}, {side:?}");
            }
        }

        let q = Ring::quadratic(-1);
        let w = q.parse("0+1w").unwrap();
        let phi = Mat::new(q.clone(), 1, 1, vec![w]).unwrap();
        let data = HyperbolicFormData::assemble(&q, 2, 1, phi, None).unwrap();
        for side in [Side::Row, Side::Column] {
            let a = q.parse("2-3w").unwrap();
            let closed = closed_form_preimage(&data, side, 4, &a).unwrap();
            let target = match side {
                Side::Row => Mat::elementary(&q, 4, 1, 4, &a).unwrap(),
                Side::Column => Mat::elementary(&q, 4, 4, 1, &a).unwrap(),
            };
            let got = match side {
                Side::Row => data.theta(&closed).unwrap(),
                Side::Column => data.eta(&closed).unwrap(),
            };
            assert_eq!(got, target, "{side:?}");
        }
    }

    #[test]
    fn decompose_single_letters() {
        let data = data_z_2_1();
        let z = data.ring().clone();

        let word = decompose_elementary(&data, 1, 2, &z.from_i64(5)).unwrap();
        assert_eq!(word.len(), 1);
        assert_eq!(
            word.letters()[0],
            GeneratorLetter::Theta(RowVec::from_i64(&z, &[0, 0, 5, 0]))
        );

        let word = decompose_elementary(&data, 2, 1, &z.from_i64(5)).unwrap();
        assert_eq!(word.len(), 1);
        assert_eq!(
            word.letters()[0],
            GeneratorLetter::Eta(RowVec::from_i64(&z, &[0, 0, 5, 0]))
        );
    }

    #[test]
    fn decompose_steinberg_commutator() {
        let data = data_z_2_1();
        let z = data.ring().clone();
        let word = decompose_elementary(&data, 2, 3, &z.from_i64(5)).unwrap();
        let expect = [
            GeneratorLetter::Eta(RowVec::from_i64(&z, &[0, 0, 5, 0])),
            GeneratorLetter::Theta(RowVec::from_i64(&z, &[0, -1, 0, 0])),
            GeneratorLetter::Eta(RowVec::from_i64(&z, &[0, 0, -5, 0])),
            GeneratorLetter::Theta(RowVec::from_i64(&z, &[0, 1, 0, 0])),
        ];
        assert_eq!(word.letters(), &expect[..]);
        assert_eq!(
            word.evaluate(&data).unwrap(),
            Mat::elementary(&z, 4, 2, 3, &z.from_i64(5)).unwrap()
        );
    }

    #[test]
    fn decompose_round_trip_all_positions() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for ring in Ring::shipped() {
            for (m, n) in [(1usize, 2usize), (2, 1), (3, 0)] {
                let (phi, phi_inv) =
                    crate::campaign::random_invertible(&ring, n, 2 * n, &mut rng);
                let data =
                    HyperbolicFormData::assemble(&ring, m, n, phi, Some(phi_inv)).unwrap();
                let nd = data.n_dim();
                for i in 1..=nd {
                    for j in 1..=nd {
                        if i == j {
                            continue;
                        }
                        let a = ring.sample(&mut rng);
                        let word = decompose_elementary(&data, i, j, &a).unwrap();
                        assert!(word.len() <= 4);
                        assert_eq!(
                            word.evaluate(&data).unwrap(),
                            Mat::elementary(&ring, nd, i, j, &a).unwrap(),
                            "over {ring}, m={m}, n={n}, ({i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_word_merges_adjacent_rows() {
        let data = data_z_2_1();
        let z = data.ring().clone();
        let mut w = ElementaryWord::new(z.clone(), 4);
        w.push(1, 2, z.from_i64(3)).unwrap();
        w.push(1, 3, z.from_i64(4)).unwrap();
        let gen = decompose_word(&data, &w).unwrap();
        // Both preimages are THETA letters and merge into one.
        assert_eq!(gen.len(), 1);
        assert!(matches!(gen.letters()[0], GeneratorLetter::Theta(_)));
        assert_eq!(gen.evaluate(&data).unwrap(), w.evaluate().unwrap());

        let empty = ElementaryWord::new(z.clone(), 4);
        let gen = decompose_word(&data, &empty).unwrap();
        assert!(gen.is_empty());
        assert!(gen.evaluate(&data).unwrap().is_identity());
    }

    #[test]
    fn decompose_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let m7 = Ring::modular(7).unwrap();
        let data = HyperbolicFormData::assemble(
            &m7,
            2,
            2,
            crate::campaign::random_invertible(&m7, 2, 4, &mut rng).0,
            None,
        )
        .unwrap();
        assert_eq!(data.n_dim(), 5);
        for _ in 0..20 {
            use rand::Rng;
            let mut w = ElementaryWord::new(m7.clone(), 5);
            for _ in 0..10 {
                let i = rng.gen_range(1..=5);
                let mut j = rng.gen_range(1..=5);
                while j == i {
                    j = rng.gen_range(1..=5);
                }
                w.push(i, j, m7.sample(&mut rng)).unwrap();
            }
            let gen = decompose_word(&data, &w).unwrap();
            assert!(gen.len() <= 40);
            assert_eq!(gen.evaluate(&data).unwrap(), w.evaluate().unwrap());

            // Normalization is idempotent and preserves evaluation.
            let renorm = gen.normalized();
            assert_eq!(renorm, gen);
        }
    }
}
