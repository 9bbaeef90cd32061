//! Reproducible test-pair generation and the executable H₂⊗H₃ worked
//! example.
//!
//! Randomness comes from a hand-rolled SplitMix64 so that a
//! [`GeneratorSpec`] yields byte-identical output on every platform and
//! release. Exact mode draws unitaries from a closed family with entries
//! in Q(i) (signed permutations, {±1, ±i} phases, Pythagorean rotations);
//! dense mode adds tangent-half-angle rotations, which reach arbitrary
//! rational points on the circle.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::adjoint::{apply_local_unitary, LocalUnitary};
use crate::basis::HermitianBasis;
use crate::bloch::{decompose, reconstruct, BlochTriple, DensityMatrix};
use crate::mat::Mat;
use crate::scalar::{Backend, ComplexScalar, ExactScalar};
use crate::{Error, Result};

/// SplitMix64 (Steele–Lea–Flood): the fixed 64-bit splittable generator
/// behind all seeded sampling here.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Independent child stream.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }

    /// Rational with numerator in [−9, 9] and denominator in [1, 9].
    pub fn small_rational(&mut self) -> BigRational {
        let num = self.below(19) as i64 - 9;
        let den = self.below(9) as i64 + 1;
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    Equivalent,
    Perturbed,
    Independent,
}

impl PairMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "equivalent" => Ok(PairMode::Equivalent),
            "perturbed" => Ok(PairMode::Perturbed),
            "independent" => Ok(PairMode::Independent),
            other => Err(Error::InvalidInput(format!(
                "unknown mode '{other}' (expected equivalent, perturbed, independent)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PairMode::Equivalent => "equivalent",
            PairMode::Perturbed => "perturbed",
            PairMode::Independent => "independent",
        }
    }
}

/// Deterministic recipe for a generated pair: same spec, same bytes out.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub d1: usize,
    pub d2: usize,
    pub seed: u64,
    pub mode: PairMode,
    pub backend: Backend,
}

#[derive(Clone, Debug)]
pub struct GeneratedPair {
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    /// The conjugating pair in `Equivalent` mode; absent otherwise.
    pub witnesses: Option<(LocalUnitary, LocalUnitary)>,
}

fn random_complex(rng: &mut SplitMix64) -> ComplexScalar {
    ComplexScalar::new(
        ExactScalar::from_big_rational(rng.small_rational()),
        ExactScalar::from_big_rational(rng.small_rational()),
    )
}

/// Random state as normalized M·M† (PSD and trace-one by construction).
pub fn random_density(d1: usize, d2: usize, rng: &mut SplitMix64) -> Result<DensityMatrix> {
    let d = d1 * d2;
    loop {
        let m = Mat::from_fn(d, d, |_, _| random_complex(rng));
        let gram = m.matmul(&m.conj_transpose());
        let tr = gram.trace();
        if tr.re.is_zero() {
            continue; // the zero draw; try again
        }
        let scale = ComplexScalar::real(tr.re.inv()?);
        return DensityMatrix::new(d1, d2, gram.scale(&scale));
    }
}

/// Hypotenuse triples used for exact rotations.
const PYTHAGOREAN: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)];

fn givens(d: usize, i: usize, j: usize, cos: BigRational, sin: BigRational) -> Mat<ComplexScalar> {
    let mut m = Mat::<ComplexScalar>::identity(d);
    let c = ExactScalar::from_big_rational(cos);
    let s = ExactScalar::from_big_rational(sin);
    m[(i, i)] = ComplexScalar::real(c.clone());
    m[(j, j)] = ComplexScalar::real(c);
    m[(i, j)] = ComplexScalar::real(s.clone());
    m[(j, i)] = ComplexScalar::real(-&s);
    m
}

/// Random member of the exact unitary family. Dense mode swaps the fixed
/// Pythagorean cosines for tangent-half-angle rationals
/// (cos = (1−t²)/(1+t²), sin = 2t/(1+t²)).
pub fn random_exact_unitary(d: usize, rng: &mut SplitMix64, dense: bool) -> Result<LocalUnitary> {
    // signed permutation
    let mut perm: Vec<usize> = (0..d).collect();
    for k in (1..d).rev() {
        let swap = rng.below((k + 1) as u64) as usize;
        perm.swap(k, swap);
    }
    let mut u = Mat::<ComplexScalar>::zeros(d, d);
    for (row, &col) in perm.iter().enumerate() {
        let sign = if rng.below(2) == 0 { 1 } else { -1 };
        u[(row, col)] = ComplexScalar::from_int(sign);
    }

    // diagonal phase from {1, i, −1, −i}
    let mut phase = Mat::<ComplexScalar>::zeros(d, d);
    for k in 0..d {
        phase[(k, k)] = match rng.below(4) {
            0 => ComplexScalar::one(),
            1 => ComplexScalar::i(),
            2 => ComplexScalar::from_int(-1),
            _ => -&ComplexScalar::i(),
        };
    }
    u = u.matmul(&phase);

    // one or two plane rotations
    let rotations = 1 + rng.below(2);
    for _ in 0..rotations {
        let i = rng.below(d as u64) as usize;
        let mut j = rng.below(d as u64) as usize;
        if i == j {
            j = (j + 1) % d;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (cos, sin) = if dense {
            let mut t = rng.small_rational();
            if t.is_zero() {
                t = BigRational::one();
            }
            let t2 = &t * &t;
            let denom = &t2 + BigRational::one();
            (
                (BigRational::one() - &t2) / denom.clone(),
                (BigRational::from_integer(2.into()) * t) / denom,
            )
        } else {
            let (a, b, c) = PYTHAGOREAN[rng.below(PYTHAGOREAN.len() as u64) as usize];
            let sign = if rng.below(2) == 0 { 1 } else { -1 };
            (
                BigRational::new(a.into(), c.into()),
                BigRational::new((sign * b).into(), c.into()),
            )
        };
        u = u.matmul(&givens(d, lo, hi, cos, sin));
    }

    LocalUnitary::new(u)
}

/// Draws a pair of states per the spec. `Equivalent` returns
/// `(ρ, (U₁⊗U₂)ρ(U₁⊗U₂)†)` with the witnesses; `Perturbed` additionally
/// bumps one W entry of the second state by 1/100; `Independent` draws two
/// unrelated states.
pub fn generate_pair(spec: &GeneratorSpec) -> Result<GeneratedPair> {
    if spec.d1 < 2 || spec.d2 < 2 {
        return Err(Error::InvalidInput(format!(
            "factor dimensions must be at least 2, got {}x{}",
            spec.d1, spec.d2
        )));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let dense = !spec.backend.is_exact();
    let rho_a = random_density(spec.d1, spec.d2, &mut rng)?;

    match spec.mode {
        PairMode::Independent => {
            let rho_b = random_density(spec.d1, spec.d2, &mut rng)?;
            Ok(GeneratedPair {
                rho_a,
                rho_b,
                witnesses: None,
            })
        }
        PairMode::Equivalent => {
            let u1 = random_exact_unitary(spec.d1, &mut rng, dense)?;
            let u2 = random_exact_unitary(spec.d2, &mut rng, dense)?;
            let rho_b = apply_local_unitary(&rho_a, &u1, &u2)?;
            Ok(GeneratedPair {
                rho_a,
                rho_b,
                witnesses: Some((u1, u2)),
            })
        }
        PairMode::Perturbed => {
            let u1 = random_exact_unitary(spec.d1, &mut rng, dense)?;
            let u2 = random_exact_unitary(spec.d2, &mut rng, dense)?;
            let moved = apply_local_unitary(&rho_a, &u1, &u2)?;
            let b1 = HermitianBasis::gellmann(spec.d1)?.into_shared();
            let b2 = HermitianBasis::gellmann(spec.d2)?.into_shared();
            let t = decompose(&moved, &b1, &b2)?;
            let i = rng.below(t.m() as u64) as usize;
            let j = rng.below(t.n() as u64) as usize;
            let mut w = t.w().clone();
            w[(i, j)] = &w[(i, j)] + &ExactScalar::rational(1, 100)?;
            let perturbed = BlochTriple::new(t.u().to_vec(), t.v().to_vec(), w)?
                .with_bases(Arc::clone(&b1), Arc::clone(&b2))?;
            let rho_b = reconstruct(&perturbed)?;
            Ok(GeneratedPair {
                rho_a,
                rho_b,
                witnesses: None,
            })
        }
    }
}

/// The worked H₂⊗H₃ example, parameterized by rational p ∈ [0, 1]: the
/// two states, their displayed triples, and the conjugating U₁, U₂ —
/// everything exact, in the example's own basis ordering.
#[derive(Clone, Debug)]
pub struct PaperFixture {
    pub rho: DensityMatrix,
    pub rho_prime: DensityMatrix,
    pub triple: BlochTriple,
    pub triple_prime: BlochTriple,
    pub u1: LocalUnitary,
    pub u2: LocalUnitary,
    pub basis1: Arc<HermitianBasis>,
    pub basis2: Arc<HermitianBasis>,
}

fn ket_bra(d: usize, i: usize, j: usize) -> Mat<ComplexScalar> {
    let mut m = Mat::<ComplexScalar>::zeros(d, d);
    m[(i, j)] = ComplexScalar::one();
    m
}

fn real_scaled(m: &Mat<ComplexScalar>, s: &ExactScalar) -> Mat<ComplexScalar> {
    m.scale(&ComplexScalar::real(s.clone()))
}

/// The example's qubit basis: identity, then the *diagonal* element first,
/// then the symmetric element, then `(i|0⟩⟨1| − i|1⟩⟨0|)/√2` (note the
/// sign relative to the standard antisymmetric convention).
pub fn example_qubit_basis() -> Result<Arc<HermitianBasis>> {
    let inv_sqrt2 = ExactScalar::sqrt(2)?.inv()?;
    let id = real_scaled(&Mat::identity(2), &inv_sqrt2);
    let diag = real_scaled(
        &ket_bra(2, 0, 0).sub(&ket_bra(2, 1, 1)),
        &inv_sqrt2,
    );
    let sym = real_scaled(&ket_bra(2, 0, 1).add(&ket_bra(2, 1, 0)), &inv_sqrt2);
    let mut asym = Mat::<ComplexScalar>::zeros(2, 2);
    asym[(0, 1)] = ComplexScalar::new(ExactScalar::zero(), inv_sqrt2.clone());
    asym[(1, 0)] = ComplexScalar::new(ExactScalar::zero(), -&inv_sqrt2);
    Ok(HermitianBasis::custom_labeled(
        vec![id, diag, sym, asym],
        vec![
            "id/sqrt(2)".into(),
            "diag".into(),
            "sym(0,1)".into(),
            "asym'(0,1)".into(),
        ],
    )?
    .into_shared())
}

/// The example's qutrit basis in physics ordering; the identity is
/// normalized to I₃/√3 so the basis is genuinely orthonormal.
pub fn example_qutrit_basis() -> Result<Arc<HermitianBasis>> {
    let inv_sqrt2 = ExactScalar::sqrt(2)?.inv()?;
    let inv_sqrt3 = ExactScalar::sqrt(3)?.inv()?;
    let inv_sqrt6 = ExactScalar::sqrt(6)?.inv()?;
    let sym = |i, j| real_scaled(&ket_bra(3, i, j).add(&ket_bra(3, j, i)), &inv_sqrt2);
    let asym = |i: usize, j: usize| {
        let mut m = Mat::<ComplexScalar>::zeros(3, 3);
        m[(i, j)] = ComplexScalar::new(ExactScalar::zero(), -&inv_sqrt2);
        m[(j, i)] = ComplexScalar::new(ExactScalar::zero(), inv_sqrt2.clone());
        m
    };
    let id = real_scaled(&Mat::identity(3), &inv_sqrt3);
    let diag3 = real_scaled(&ket_bra(3, 0, 0).sub(&ket_bra(3, 1, 1)), &inv_sqrt2);
    let diag8 = {
        let base = ket_bra(3, 0, 0)
            .add(&ket_bra(3, 1, 1))
            .sub(&ket_bra(3, 2, 2).scale(&ComplexScalar::from_int(2)));
        real_scaled(&base, &inv_sqrt6)
    };
    Ok(HermitianBasis::custom_labeled(
        vec![
            id,
            sym(0, 1),
            asym(0, 1),
            diag3,
            sym(0, 2),
            asym(0, 2),
            sym(1, 2),
            asym(1, 2),
            diag8,
        ],
        (0..9).map(|k| format!("lambda{k}")).collect(),
    )?
    .into_shared())
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn paper_fixture(p: &BigRational) -> Result<PaperFixture> {
    if p.is_negative() || p > &BigRational::one() {
        return Err(Error::InvalidInput(format!("p = {p} is outside [0, 1]")));
    }
    let basis1 = example_qubit_basis()?;
    let basis2 = example_qutrit_basis()?;

    let one_minus_p = BigRational::one() - p;
    let q = |r: BigRational| ExactScalar::from_big_rational(r);
    let zero = ExactScalar::zero;

    // μ = ((1−p)/3, 0, 0), ν = (0, 0, −(1−p)/2, 0, 0, 0, 0, 1/(2√3))
    let u = vec![q(&one_minus_p * rat(1, 3)), zero(), zero()];
    let mut v = vec![zero(); 8];
    v[2] = q(-&one_minus_p * rat(1, 2));
    v[7] = ExactScalar::sqrt_scaled(rat(1, 6), 3)?; // 1/(2√3) = √3/6

    let mut w = Mat::<ExactScalar>::zeros(3, 8);
    w[(0, 2)] = q((p * rat(2, 1) - BigRational::one()) * rat(1, 2)); // (2p−1)/2
    w[(0, 7)] = ExactScalar::sqrt_scaled(&one_minus_p * rat(1, 6), 3)?; // (1−p)/(2√3)
    w[(1, 0)] = q(p * rat(1, 2));
    w[(2, 1)] = q(p * rat(1, 2));

    // primed displays
    let u_p = vec![zero(), zero(), q(&one_minus_p * rat(1, 3))];
    let mut v_p = vec![zero(); 8];
    v_p[2] = q(&one_minus_p * rat(1, 2));
    v_p[7] = ExactScalar::sqrt_scaled(rat(1, 6), 3)?;

    let mut w_p = Mat::<ExactScalar>::zeros(3, 8);
    w_p[(0, 1)] = q(-(p * rat(1, 2)));
    w_p[(1, 0)] = q(-(p * rat(1, 2)));
    w_p[(2, 2)] = q(-((p * rat(2, 1) - BigRational::one()) * rat(1, 2)));
    w_p[(2, 7)] = ExactScalar::sqrt_scaled(&one_minus_p * rat(1, 6), 3)?;

    let triple = BlochTriple::new(u, v, w)?
        .with_bases(Arc::clone(&basis1), Arc::clone(&basis2))?;
    let triple_prime = BlochTriple::new(u_p, v_p, w_p)?
        .with_bases(Arc::clone(&basis1), Arc::clone(&basis2))?;

    let rho = reconstruct(&triple)?;
    let rho_prime = reconstruct(&triple_prime)?;

    // U₁ = (1/√2)((1, i), (−i, −1)), U₂ = the (01) swap on the qutrit
    let h = ExactScalar::sqrt(2)?.inv()?;
    let mut u1 = Mat::<ComplexScalar>::zeros(2, 2);
    u1[(0, 0)] = ComplexScalar::real(h.clone());
    u1[(0, 1)] = ComplexScalar::new(ExactScalar::zero(), h.clone());
    u1[(1, 0)] = ComplexScalar::new(ExactScalar::zero(), -&h);
    u1[(1, 1)] = ComplexScalar::real(-&h);
    let u1 = LocalUnitary::new(u1)?;

    let mut u2 = Mat::<ComplexScalar>::zeros(3, 3);
    u2[(0, 1)] = ComplexScalar::one();
    u2[(1, 0)] = ComplexScalar::one();
    u2[(2, 2)] = ComplexScalar::one();
    let u2 = LocalUnitary::new(u2)?;

    Ok(PaperFixture {
        rho,
        rho_prime,
        triple,
        triple_prime,
        u1,
        u2,
        basis1,
        basis2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjoint::adjoint_matrix;

    fn sc(t: &str) -> ExactScalar {
        ExactScalar::parse(t).unwrap()
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0 (SplitMix64 reference sequence)
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(rng.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(rng.next_u64(), 0x06C45D188009454F);
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = GeneratorSpec {
            d1: 2,
            d2: 3,
            seed: 42,
            mode: PairMode::Equivalent,
            backend: Backend::Exact,
        };
        let a = generate_pair(&spec).unwrap();
        let b = generate_pair(&spec).unwrap();
        assert_eq!(a.rho_a, b.rho_a);
        assert_eq!(a.rho_b, b.rho_b);
        assert_eq!(
            a.witnesses.as_ref().unwrap().0.entries(),
            b.witnesses.as_ref().unwrap().0.entries()
        );
    }

    #[test]
    fn generated_states_are_valid() {
        for seed in 0..5 {
            let spec = GeneratorSpec {
                d1: 2,
                d2: 2,
                seed,
                mode: PairMode::Independent,
                backend: Backend::Exact,
            };
            let pair = generate_pair(&spec).unwrap();
            let report =
                crate::bloch::validate_density(pair.rho_a.entries(), &Default::default());
            assert!(report.hermitian && report.trace_is_one && report.psd_within_tolerance);
        }
    }

    #[test]
    fn dense_family_is_exactly_unitary() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10 {
            // constructor verifies exact unitarity
            random_exact_unitary(3, &mut rng, true).unwrap();
        }
    }

    #[test]
    fn fixture_rejects_p_outside_range() {
        assert!(paper_fixture(&rat(3, 2)).is_err());
        assert!(paper_fixture(&rat(-1, 2)).is_err());
        assert!(paper_fixture(&rat(1, 1)).is_ok());
        assert!(paper_fixture(&rat(0, 1)).is_ok());
    }

    #[test]
    fn fixture_half_matches_displays() {
        let f = paper_fixture(&rat(1, 2)).unwrap();
        // W(ρ) row 2 at p = 1/2 is (1/4, 0, …, 0)
        assert_eq!(f.triple.w()[(1, 0)], sc("1/4"));
        for j in 1..8 {
            assert!(f.triple.w()[(1, j)].is_zero());
        }
        // μ(ρ) = (1/6, 0, 0)
        assert_eq!(f.triple.u()[0], sc("1/6"));
        // ν(ρ)₈ = 1/(2√3) = √3/6
        assert_eq!(f.triple.v()[7], sc("1/6*sqrt(3)"));
    }

    #[test]
    fn fixture_p1_degenerates() {
        let f = paper_fixture(&rat(1, 1)).unwrap();
        assert!(f.triple.u().iter().all(ExactScalar::is_zero));
        assert_eq!(f.triple.v()[7], sc("1/6*sqrt(3)"));
        assert!(f.triple.v()[..7].iter().all(ExactScalar::is_zero));
    }

    #[test]
    fn fixture_roundtrips_through_decompose() {
        let f = paper_fixture(&rat(1, 4)).unwrap();
        let t = decompose(&f.rho, &f.basis1, &f.basis2).unwrap();
        assert_eq!(t, f.triple);
        let tp = decompose(&f.rho_prime, &f.basis1, &f.basis2).unwrap();
        assert_eq!(tp, f.triple_prime);
    }

    #[test]
    fn fixture_unitaries_connect_the_states() {
        // the displayed primed triple really is the U₁⊗U₂ conjugate
        for p in [rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)] {
            let f = paper_fixture(&p).unwrap();
            let moved = apply_local_unitary(&f.rho, &f.u1, &f.u2).unwrap();
            assert_eq!(moved, f.rho_prime, "p = {p}");
        }
    }

    #[test]
    fn fixture_adjoints_transform_triples() {
        let f = paper_fixture(&rat(1, 3)).unwrap();
        let a = adjoint_matrix(&f.u1, &f.basis1).unwrap();
        let b = adjoint_matrix(&f.u2, &f.basis2).unwrap();
        let t2 = crate::adjoint::transform_triple(&f.triple, &a, &b).unwrap();
        assert_eq!(t2, f.triple_prime);
        // the true A (derived, not the displayed one): λ₁ ↦ +λ₃
        assert_eq!(a.entries()[(0, 2)], sc("1"));
        assert_eq!(a.entries()[(1, 1)], sc("-1"));
        assert_eq!(a.entries()[(2, 0)], sc("1"));
    }
}
