//! Local unitary action and the induced orthogonal action on Bloch triples.
//!
//! Conjugating a basis element by a unitary, `UλᵢU†`, stays in the span of
//! the basis with *real* coefficients, and the coefficient matrix is
//! orthogonal. The triple of a conjugated state then transforms by
//! `u ↦ Aᵗu`, `v ↦ Bᵗv`, `W ↦ AᵗWB`. Quasi-LU witnesses use the
//! convention `u₂ = O₁u₁`, `v₂ = O₂v₁`, `W₂ = O₁W₁O₂ᵗ` (so `O = Aᵗ`);
//! both conventions are supported, selected by [`WitnessConvention`].

use std::sync::Arc;

use crate::basis::HermitianBasis;
use crate::bloch::{BlochTriple, DensityMatrix};
use crate::mat::Mat;
use crate::scalar::{Backend, ComplexScalar, ExactScalar};
use crate::{dim_mismatch, Error, Result};

/// Unitary on one tensor factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitary {
    entries: Mat<ComplexScalar>,
}

impl LocalUnitary {
    pub fn new(entries: Mat<ComplexScalar>) -> Result<Self> {
        Self::new_with_backend(entries, &Backend::Exact)
    }

    pub fn new_with_backend(entries: Mat<ComplexScalar>, backend: &Backend) -> Result<Self> {
        if !entries.is_square() {
            return dim_mismatch("unitary must be square".to_string());
        }
        let product = entries.matmul(&entries.conj_transpose());
        let id = Mat::<ComplexScalar>::identity(entries.rows());
        let ok = match backend {
            Backend::Exact => product == id,
            Backend::Float(_) => product
                .entries()
                .all(|(i, j, z)| backend.complex_eq(z, &id[(i, j)])),
        };
        if !ok {
            return Err(Error::NotUnitary);
        }
        Ok(Self { entries })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            entries: Mat::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Mat<ComplexScalar> {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        Self {
            entries: self.entries.conj_transpose(),
        }
    }

    /// Composition `self · rhs` (matrix product).
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return dim_mismatch("composing unitaries of different dimension".to_string());
        }
        Ok(Self {
            entries: self.entries.matmul(&rhs.entries),
        })
    }
}

/// Real matrix with `OOᵗ = OᵗO = I`, exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalWitness {
    entries: Mat<ExactScalar>,
}

impl OrthogonalWitness {
    pub fn new(entries: Mat<ExactScalar>) -> Result<Self> {
        Self::new_with_backend(entries, &Backend::Exact)
    }

    pub fn new_with_backend(entries: Mat<ExactScalar>, backend: &Backend) -> Result<Self> {
        if !entries.is_square() {
            return dim_mismatch("orthogonal witness must be square".to_string());
        }
        let id = Mat::<ExactScalar>::identity(entries.rows());
        let ok = |p: Mat<ExactScalar>| {
            p.entries()
                .all(|(i, j, x)| backend.scalar_eq(x, &id[(i, j)]))
        };
        if !ok(entries.matmul(&entries.transpose())) || !ok(entries.transpose().matmul(&entries)) {
            return Err(Error::NotOrthogonal);
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: Mat::identity(n),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Mat<ExactScalar> {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self {
            entries: self.entries.transpose(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.neg(),
        }
    }
}

/// Coefficient matrix of the adjoint action of `U` on the traceless part of
/// the basis: `M[i][j] = tr(UλᵢU†·λⱼ)` for `i, j ≥ 1`, so that
/// `UλᵢU† = Σⱼ M[i][j] λⱼ`. The result is verified exactly real and
/// orthogonal.
pub fn adjoint_matrix(u: &LocalUnitary, basis: &HermitianBasis) -> Result<OrthogonalWitness> {
    if u.dim() != basis.dim() {
        return dim_mismatch(format!(
            "unitary dim {} vs basis dim {}",
            u.dim(),
            basis.dim()
        ));
    }
    let m = basis.len() - 1;
    let udag = u.entries().conj_transpose();
    let mut out = Mat::<ExactScalar>::zeros(m, m);
    for i in 1..=m {
        let conj = u
            .entries()
            .matmul(basis.element(i))
            .matmul(&udag);
        for j in 1..=m {
            let t = conj.trace_of_product(basis.element(j));
            if !t.im.is_zero() {
                return Err(Error::NonRealCoefficient {
                    i,
                    j,
                    im: t.im.to_string(),
                });
            }
            out[(i - 1, j - 1)] = t.re;
        }
    }
    OrthogonalWitness::new(out)
}

/// `(U₁⊗U₂) ρ (U₁⊗U₂)†`, exact.
pub fn apply_local_unitary(
    rho: &DensityMatrix,
    u1: &LocalUnitary,
    u2: &LocalUnitary,
) -> Result<DensityMatrix> {
    if u1.dim() != rho.d1() || u2.dim() != rho.d2() {
        return dim_mismatch(format!(
            "state is {}⊗{} but unitaries have dims {} and {}",
            rho.d1(),
            rho.d2(),
            u1.dim(),
            u2.dim()
        ));
    }
    let big = u1.entries().kron(u2.entries());
    let conj = big.matmul(rho.entries()).matmul(&big.conj_transpose());
    DensityMatrix::new(rho.d1(), rho.d2(), conj)
}

/// Applies the §-transformation law to a triple: `u′ = Aᵗu`, `v′ = Bᵗv`,
/// `W′ = AᵗWB`.
pub fn transform_triple(
    t: &BlochTriple,
    a: &OrthogonalWitness,
    b: &OrthogonalWitness,
) -> Result<BlochTriple> {
    if a.size() != t.m() || b.size() != t.n() {
        return dim_mismatch(format!(
            "witness sizes {}x{} do not match triple shape {}x{}",
            a.size(),
            b.size(),
            t.m(),
            t.n()
        ));
    }
    let at = a.entries().transpose();
    let u = mat_vec(&at, t.u());
    let v = mat_vec(&b.entries().transpose(), t.v());
    let w = at.matmul(t.w()).matmul(b.entries());
    let triple = BlochTriple::new(u, v, w)?;
    match (t.basis1(), t.basis2()) {
        (Some(b1), Some(b2)) => triple.with_bases(Arc::clone(b1), Arc::clone(b2)),
        _ => Ok(triple),
    }
}

fn mat_vec(m: &Mat<ExactScalar>, x: &[ExactScalar]) -> Vec<ExactScalar> {
    (0..m.rows())
        .map(|i| {
            let mut acc = ExactScalar::zero();
            for (j, xj) in x.iter().enumerate() {
                if !m[(i, j)].is_zero() && !xj.is_zero() {
                    acc += &(&m[(i, j)] * xj);
                }
            }
            acc
        })
        .collect()
}

/// Which side of the convention clash a witness pair uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessConvention {
    /// Quasi-LU definition: `u₂ = O₁u₁`, `v₂ = O₂v₁`, `W₂ = O₁W₁O₂ᵗ`.
    #[default]
    QuasiLu,
    /// Adjoint-action law: `u₂ = Aᵗu₁`, `v₂ = Bᵗv₁`, `W₂ = AᵗW₁B`
    /// (equivalent to `QuasiLu` with `O = Aᵗ`).
    AdjointAction,
}

/// Checks whether `(O₁, O₂)` witnesses quasi-LU equivalence of the two
/// triples under the selected convention.
pub fn verify_witness(
    t1: &BlochTriple,
    t2: &BlochTriple,
    o1: &OrthogonalWitness,
    o2: &OrthogonalWitness,
    convention: WitnessConvention,
    backend: &Backend,
) -> Result<bool> {
    if !t1.same_shape(t2) {
        return dim_mismatch("triples have different shapes".to_string());
    }
    if o1.size() != t1.m() || o2.size() != t1.n() {
        return dim_mismatch("witness sizes do not match triples".to_string());
    }
    let (m1, m2) = match convention {
        WitnessConvention::QuasiLu => (o1.entries().clone(), o2.entries().clone()),
        WitnessConvention::AdjointAction => {
            (o1.entries().transpose(), o2.entries().transpose())
        }
    };
    let u_ok = mat_vec(&m1, t1.u())
        .iter()
        .zip(t2.u())
        .all(|(a, b)| backend.scalar_eq(a, b));
    let v_ok = mat_vec(&m2, t1.v())
        .iter()
        .zip(t2.v())
        .all(|(a, b)| backend.scalar_eq(a, b));
    let w_image = m1.matmul(t1.w()).matmul(&m2.transpose());
    let w_ok = w_image
        .entries()
        .all(|(i, j, x)| backend.scalar_eq(x, &t2.w()[(i, j)]));
    Ok(u_ok && v_ok && w_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{decompose, reconstruct};

    fn sc(t: &str) -> ExactScalar {
        ExactScalar::parse(t).unwrap()
    }

    fn qubit_basis() -> Arc<HermitianBasis> {
        HermitianBasis::gellmann(2).unwrap().into_shared()
    }

    #[test]
    fn identity_has_identity_adjoint() {
        let b = qubit_basis();
        let a = adjoint_matrix(&LocalUnitary::identity(2), &b).unwrap();
        assert_eq!(*a.entries(), Mat::identity(3));
    }

    #[test]
    fn phase_gate_rotates_xy_plane() {
        // U = diag(1, i): fixes σz, rotates the (σx, σy) plane by π/2.
        // Standard basis order: [id, sym, asym, diag].
        let b = qubit_basis();
        let mut m = Mat::<ComplexScalar>::zeros(2, 2);
        m[(0, 0)] = ComplexScalar::one();
        m[(1, 1)] = ComplexScalar::i();
        let u = LocalUnitary::new(m).unwrap();
        let a = adjoint_matrix(&u, &b).unwrap();
        // sym ↦ −asym? compute: U σx U† = diag-phase conjugation sends
        // |0⟩⟨1| ↦ −i|0⟩⟨1|, so (|0⟩⟨1|+|1⟩⟨0|)/√2 ↦ (σy-like with our
        // −i(|0⟩⟨1|−|1⟩⟨0|)/√2 sign convention): expect sym ↦ asym,
        // asym ↦ −sym, diag fixed.
        let expect = Mat::from_rows(vec![
            vec![sc("0"), sc("1"), sc("0")],
            vec![sc("-1"), sc("0"), sc("0")],
            vec![sc("0"), sc("0"), sc("1")],
        ]);
        assert_eq!(*a.entries(), expect);
    }

    #[test]
    fn adjoint_is_orthogonal_for_exact_unitaries() {
        let b = qubit_basis();
        // a Pythagorean rotation: [[3/5, 4/5], [−4/5, 3/5]]
        let rot = Mat::from_rows(vec![
            vec![
                ComplexScalar::real(sc("3/5")),
                ComplexScalar::real(sc("4/5")),
            ],
            vec![
                ComplexScalar::real(sc("-4/5")),
                ComplexScalar::real(sc("3/5")),
            ],
        ]);
        let u = LocalUnitary::new(rot).unwrap();
        // construction itself verifies orthogonality exactly
        adjoint_matrix(&u, &b).unwrap();
    }

    #[test]
    fn functoriality_order() {
        // adjoint(U·V) = adjoint(V)·adjoint(U) with our row-coefficient
        // convention.
        let b = qubit_basis();
        let mut pm = Mat::<ComplexScalar>::zeros(2, 2);
        pm[(0, 1)] = ComplexScalar::one();
        pm[(1, 0)] = ComplexScalar::from_int(-1);
        let u = LocalUnitary::new(pm).unwrap();
        let mut dm = Mat::<ComplexScalar>::zeros(2, 2);
        dm[(0, 0)] = ComplexScalar::one();
        dm[(1, 1)] = ComplexScalar::i();
        let v = LocalUnitary::new(dm).unwrap();
        let uv = u.compose(&v).unwrap();
        let lhs = adjoint_matrix(&uv, &b).unwrap();
        let rhs = adjoint_matrix(&v, &b)
            .unwrap()
            .entries()
            .matmul(adjoint_matrix(&u, &b).unwrap().entries());
        assert_eq!(*lhs.entries(), rhs);
    }

    #[test]
    fn unitary_roundtrip_on_state() {
        let b = qubit_basis();
        let mut m = Mat::<ComplexScalar>::zeros(2, 2);
        m[(0, 0)] = ComplexScalar::real(sc("1/2*sqrt(2)"));
        m[(0, 1)] = ComplexScalar::new(ExactScalar::zero(), sc("1/2*sqrt(2)"));
        m[(1, 0)] = ComplexScalar::new(ExactScalar::zero(), sc("-1/2*sqrt(2)"));
        m[(1, 1)] = ComplexScalar::real(sc("-1/2*sqrt(2)"));
        let u1 = LocalUnitary::new(m).unwrap();
        let u2 = LocalUnitary::identity(2);
        let mut rho_m = Mat::<ComplexScalar>::zeros(4, 4);
        rho_m[(0, 0)] = ComplexScalar::real(sc("1/2"));
        rho_m[(3, 3)] = ComplexScalar::real(sc("1/2"));
        rho_m[(0, 3)] = ComplexScalar::real(sc("1/4"));
        rho_m[(3, 0)] = ComplexScalar::real(sc("1/4"));
        let rho = DensityMatrix::new(2, 2, rho_m).unwrap();

        let moved = apply_local_unitary(&rho, &u1, &u2).unwrap();
        let back = apply_local_unitary(&moved, &u1.dagger(), &u2.dagger()).unwrap();
        assert_eq!(back, rho);

        // consistency: transform_triple(decompose(ρ), A, B) = decompose(ρ')
        let a = adjoint_matrix(&u1, &b).unwrap();
        let bmat = adjoint_matrix(&u2, &b).unwrap();
        let t = decompose(&rho, &b, &b).unwrap();
        let t_direct = decompose(&moved, &b, &b).unwrap();
        let t_transformed = transform_triple(&t, &a, &bmat).unwrap();
        assert_eq!(t_direct, t_transformed);
        assert_eq!(reconstruct(&t_transformed).unwrap(), moved);

        // witness check in both conventions
        assert!(verify_witness(
            &t,
            &t_direct,
            &a.transpose(),
            &bmat.transpose(),
            WitnessConvention::QuasiLu,
            &Backend::Exact
        )
        .unwrap());
        assert!(verify_witness(
            &t,
            &t_direct,
            &a,
            &bmat,
            WitnessConvention::AdjointAction,
            &Backend::Exact
        )
        .unwrap());
    }

    #[test]
    fn transform_preserves_norms() {
        let b = qubit_basis();
        let mut pm = Mat::<ComplexScalar>::zeros(2, 2);
        pm[(0, 1)] = ComplexScalar::i();
        pm[(1, 0)] = ComplexScalar::one();
        let u = LocalUnitary::new(pm).unwrap();
        let a = adjoint_matrix(&u, &b).unwrap();

        let t = BlochTriple::new(
            vec![sc("1/2"), sc("-1/3"), sc("1/7")],
            vec![sc("2/5"), sc("0"), sc("-1")],
            Mat::from_rows(vec![
                vec![sc("1"), sc("0"), sc("1/2")],
                vec![sc("0"), sc("-1/3"), sc("0")],
                vec![sc("1/5"), sc("0"), sc("2")],
            ]),
        )
        .unwrap();
        let t2 = transform_triple(&t, &a, &a).unwrap();
        assert_eq!(t.u_norm_sqr(), t2.u_norm_sqr());
        assert_eq!(t.v_norm_sqr(), t2.v_norm_sqr());
        let frob = |w: &Mat<ExactScalar>| w.matmul(&w.transpose()).trace();
        assert_eq!(frob(t.w()), frob(t2.w()));
    }

    #[test]
    fn negated_witness_fails_when_u_nonzero() {
        let t = BlochTriple::new(
            vec![sc("1/2"), sc("0"), sc("0")],
            vec![sc("0"), sc("0"), sc("0")],
            Mat::zeros(3, 3),
        )
        .unwrap();
        let o = OrthogonalWitness::identity(3);
        assert!(verify_witness(
            &t,
            &t,
            &o,
            &o,
            WitnessConvention::QuasiLu,
            &Backend::Exact
        )
        .unwrap());
        assert!(!verify_witness(
            &t,
            &t,
            &o.neg(),
            &o.neg(),
            WitnessConvention::QuasiLu,
            &Backend::Exact
        )
        .unwrap());
    }

    #[test]
    fn non_unitary_rejected() {
        let mut m = Mat::<ComplexScalar>::zeros(2, 2);
        m[(0, 0)] = ComplexScalar::from_int(2);
        m[(1, 1)] = ComplexScalar::one();
        assert!(matches!(LocalUnitary::new(m), Err(Error::NotUnitary)));
    }
}
