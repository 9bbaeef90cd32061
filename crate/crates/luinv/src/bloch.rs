//! Bloch matrix triples of bipartite density matrices.
//!
//! A state ρ on C^{d₁}⊗C^{d₂} expands in a tensor Gell-Mann basis as
//!
//! ```text
//! ρ = I/(d₁d₂) + Σᵢ uᵢ λᵢ⊗λ₀ + Σⱼ vⱼ λ₀⊗λⱼ + Σᵢⱼ wᵢⱼ λᵢ⊗λⱼ
//! ```
//!
//! with `uᵢ = tr(ρ(λᵢ⊗λ₀))`, `vⱼ = tr(ρ(λ₀⊗λⱼ))`, `wᵢⱼ = tr(ρ(λᵢ⊗λⱼ))`.
//! The triple `(W, u, v)` carries everything the equivalence criteria need.

use std::sync::Arc;

use crate::basis::HermitianBasis;
use crate::mat::Mat;
use crate::scalar::{ComplexScalar, ExactScalar, Tolerance};
use crate::{dim_mismatch, Error, Result};

/// Hermitian, trace-one matrix on a declared tensor factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    d1: usize,
    d2: usize,
    entries: Mat<ComplexScalar>,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace exactly. Positive
    /// semidefiniteness is *not* enforced here; see [`validate_density`].
    pub fn new(d1: usize, d2: usize, entries: Mat<ComplexScalar>) -> Result<Self> {
        let d = d1 * d2;
        if d1 < 2 || d2 < 2 {
            return Err(Error::InvalidInput(format!(
                "factor dimensions must be at least 2, got {d1}x{d2}"
            )));
        }
        if entries.rows() != d || entries.cols() != d {
            return dim_mismatch(format!(
                "density matrix is {}x{}, expected {d}x{d} for factors {d1}⊗{d2}",
                entries.rows(),
                entries.cols()
            ));
        }
        if entries != entries.conj_transpose() {
            return Err(Error::NotHermitian { index: 0 });
        }
        let tr = entries.trace();
        if !tr.is_real() || !tr.re.is_one() {
            return Err(Error::TraceNotOne(format!("{} + ({})i", tr.re, tr.im)));
        }
        Ok(Self { d1, d2, entries })
    }

    /// Maximally mixed state I/(d₁d₂).
    pub fn maximally_mixed(d1: usize, d2: usize) -> Result<Self> {
        let d = d1 * d2;
        let coeff = ExactScalar::from_int(d as i64).inv()?;
        let mut m = Mat::<ComplexScalar>::zeros(d, d);
        for k in 0..d {
            m[(k, k)] = ComplexScalar::real(coeff.clone());
        }
        Self::new(d1, d2, m)
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn entries(&self) -> &Mat<ComplexScalar> {
        &self.entries
    }
}

/// The Bloch triple (W, u, v) of a state, with `m = d₁²−1`, `n = d₂²−1`.
///
/// Entries are real elements of the exact field. The bases used for the
/// decomposition are carried along when known so that [`reconstruct`] is
/// self-contained; triples read from JSON default to the standard
/// Gell-Mann bases of the inferred dimensions.
#[derive(Clone, Debug)]
pub struct BlochTriple {
    u: Vec<ExactScalar>,
    v: Vec<ExactScalar>,
    w: Mat<ExactScalar>,
    basis1: Option<Arc<HermitianBasis>>,
    basis2: Option<Arc<HermitianBasis>>,
}

impl PartialEq for BlochTriple {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && self.w == other.w
    }
}

impl BlochTriple {
    pub fn new(u: Vec<ExactScalar>, v: Vec<ExactScalar>, w: Mat<ExactScalar>) -> Result<Self> {
        if w.rows() != u.len() || w.cols() != v.len() {
            return dim_mismatch(format!(
                "W is {}x{} but |u| = {}, |v| = {}",
                w.rows(),
                w.cols(),
                u.len(),
                v.len()
            ));
        }
        if dim_from_bloch_len(u.len()).is_none() || dim_from_bloch_len(v.len()).is_none() {
            return Err(Error::InvalidInput(format!(
                "Bloch lengths must be d²−1 for some d ≥ 2, got m = {}, n = {}",
                u.len(),
                v.len()
            )));
        }
        Ok(Self {
            u,
            v,
            w,
            basis1: None,
            basis2: None,
        })
    }

    pub fn with_bases(
        mut self,
        basis1: Arc<HermitianBasis>,
        basis2: Arc<HermitianBasis>,
    ) -> Result<Self> {
        if basis1.dim() * basis1.dim() - 1 != self.m() || basis2.dim() * basis2.dim() - 1 != self.n()
        {
            return dim_mismatch("basis dimensions do not match triple shape".to_string());
        }
        self.basis1 = Some(basis1);
        self.basis2 = Some(basis2);
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.u.len()
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn d1(&self) -> usize {
        dim_from_bloch_len(self.m()).expect("validated at construction")
    }

    pub fn d2(&self) -> usize {
        dim_from_bloch_len(self.n()).expect("validated at construction")
    }

    pub fn u(&self) -> &[ExactScalar] {
        &self.u
    }

    pub fn v(&self) -> &[ExactScalar] {
        &self.v
    }

    pub fn w(&self) -> &Mat<ExactScalar> {
        &self.w
    }

    pub fn basis1(&self) -> Option<&Arc<HermitianBasis>> {
        self.basis1.as_ref()
    }

    pub fn basis2(&self) -> Option<&Arc<HermitianBasis>> {
        self.basis2.as_ref()
    }

    /// |u|² as an exact field element.
    pub fn u_norm_sqr(&self) -> ExactScalar {
        dot(&self.u, &self.u)
    }

    pub fn v_norm_sqr(&self) -> ExactScalar {
        dot(&self.v, &self.v)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.m() == other.m() && self.n() == other.n()
    }
}

pub(crate) fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

fn dim_from_bloch_len(len: usize) -> Option<usize> {
    let d = ((len + 1) as f64).sqrt().round() as usize;
    (d >= 2 && d * d == len + 1).then_some(d)
}

/// Exact trace pairing tr(ρ·(A⊗B)); errors if the result has a nonzero
/// imaginary part (which signals non-Hermitian input).
fn real_pairing(
    rho: &DensityMatrix,
    a: &Mat<ComplexScalar>,
    b: &Mat<ComplexScalar>,
    i: usize,
    j: usize,
) -> Result<ExactScalar> {
    let k = a.kron(b);
    let t = rho.entries.trace_of_product(&k);
    if !t.im.is_zero() {
        return Err(Error::NonRealCoefficient {
            i,
            j,
            im: t.im.to_string(),
        });
    }
    Ok(t.re)
}

/// Decomposes ρ into its Bloch triple with respect to the given bases.
pub fn decompose(
    rho: &DensityMatrix,
    basis1: &Arc<HermitianBasis>,
    basis2: &Arc<HermitianBasis>,
) -> Result<BlochTriple> {
    if basis1.dim() != rho.d1() || basis2.dim() != rho.d2() {
        return dim_mismatch(format!(
            "state is {}⊗{} but bases have dims {} and {}",
            rho.d1(),
            rho.d2(),
            basis1.dim(),
            basis2.dim()
        ));
    }
    let m = basis1.len() - 1;
    let n = basis2.len() - 1;
    let lambda0_1 = basis1.element(0);
    let lambda0_2 = basis2.element(0);

    let mut u = Vec::with_capacity(m);
    for i in 1..=m {
        u.push(real_pairing(rho, basis1.element(i), lambda0_2, i, 0)?);
    }
    let mut v = Vec::with_capacity(n);
    for j in 1..=n {
        v.push(real_pairing(rho, lambda0_1, basis2.element(j), 0, j)?);
    }
    let mut w = Mat::<ExactScalar>::zeros(m, n);
    for i in 1..=m {
        for j in 1..=n {
            w[(i - 1, j - 1)] = real_pairing(rho, basis1.element(i), basis2.element(j), i, j)?;
        }
    }

    BlochTriple::new(u, v, w)?.with_bases(Arc::clone(basis1), Arc::clone(basis2))
}

/// Rebuilds the density matrix from a triple (the expansion sum). Hermitian
/// and trace-one by construction.
pub fn reconstruct(triple: &BlochTriple) -> Result<DensityMatrix> {
    let basis1 = match triple.basis1() {
        Some(b) => Arc::clone(b),
        None => HermitianBasis::gellmann(triple.d1())?.into_shared(),
    };
    let basis2 = match triple.basis2() {
        Some(b) => Arc::clone(b),
        None => HermitianBasis::gellmann(triple.d2())?.into_shared(),
    };
    let d = triple.d1() * triple.d2();

    let mut acc = Mat::<ComplexScalar>::zeros(d, d);
    let inv_d = ExactScalar::from_int(d as i64).inv()?;
    for k in 0..d {
        acc[(k, k)] = ComplexScalar::real(inv_d.clone());
    }
    let lambda0_1 = basis1.element(0);
    let lambda0_2 = basis2.element(0);

    for (i, ui) in triple.u().iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let term = basis1.element(i + 1).kron(lambda0_2);
        acc = acc.add(&term.scale(&ComplexScalar::real(ui.clone())));
    }
    for (j, vj) in triple.v().iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        let term = lambda0_1.kron(basis2.element(j + 1));
        acc = acc.add(&term.scale(&ComplexScalar::real(vj.clone())));
    }
    for i in 0..triple.m() {
        for j in 0..triple.n() {
            let wij = &triple.w()[(i, j)];
            if wij.is_zero() {
                continue;
            }
            let term = basis1.element(i + 1).kron(basis2.element(j + 1));
            acc = acc.add(&term.scale(&ComplexScalar::real(wij.clone())));
        }
    }

    DensityMatrix::new(triple.d1(), triple.d2(), acc)
}

/// Diagnostic report from [`validate_density`].
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub hermitian: bool,
    pub trace: String,
    pub trace_is_one: bool,
    pub min_eigenvalue: f64,
    pub psd_within_tolerance: bool,
}

/// Reports Hermiticity (exact), trace (exact), and the minimum float
/// eigenvalue. A PSD failure is advisory: every criterion is well-defined
/// on any Hermitian trace-one matrix.
pub fn validate_density(entries: &Mat<ComplexScalar>, tol: &Tolerance) -> DensityReport {
    let hermitian = *entries == entries.conj_transpose();
    let tr = entries.trace();
    let trace_is_one = tr.is_real() && tr.re.is_one();
    let re = entries.map(|z| z.re.to_f64());
    let im = entries.map(|z| z.im.to_f64());
    let min_eigenvalue = crate::mat::hermitian_eigenvalues(&re, &im)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    DensityReport {
        hermitian,
        trace: format!("{} + ({})i", tr.re, tr.im),
        trace_is_one,
        min_eigenvalue,
        psd_within_tolerance: min_eigenvalue >= -tol.absolute.max(1e-9),
    }
}
