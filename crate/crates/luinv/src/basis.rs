//! Orthonormal Hermitian (generalized Gell-Mann) operator bases.
//!
//! A [`HermitianBasis`] for dimension `d` holds `d²` Hermitian matrices,
//! pairwise orthonormal under the trace form `⟨X, Y⟩ = tr(XY)`, with the
//! normalized identity `I_d/√d` at index 0. All entry arithmetic is exact.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::mat::Mat;
use crate::scalar::{Backend, ComplexScalar, ExactScalar};
use crate::{Error, Result};

/// Ordered orthonormal Hermitian basis of d×d matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<Mat<ComplexScalar>>,
    labels: Vec<String>,
}

impl HermitianBasis {
    /// The standard generalized Gell-Mann basis: normalized identity, then
    /// symmetric off-diagonal pairs `(|i⟩⟨j|+|j⟩⟨i|)/√2` for i < j in lex
    /// order, then antisymmetric pairs `−i(|i⟩⟨j|−|j⟩⟨i|)/√2`, then the
    /// traceless diagonal elements normalized to unit trace norm.
    pub fn gellmann(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::BasisDimension(d));
        }
        let mut elements = Vec::with_capacity(d * d);
        let mut labels = Vec::with_capacity(d * d);

        // I_d/√d
        let inv_sqrt_d = ExactScalar::sqrt(d as u64)?.inv()?;
        let mut id = Mat::<ComplexScalar>::zeros(d, d);
        for k in 0..d {
            id[(k, k)] = ComplexScalar::real(inv_sqrt_d.clone());
        }
        elements.push(id);
        labels.push(format!("id/sqrt({d})"));

        let inv_sqrt2 = ExactScalar::sqrt(2)?.inv()?;

        // (|i⟩⟨j| + |j⟩⟨i|)/√2
        for i in 0..d {
            for j in (i + 1)..d {
                let mut m = Mat::<ComplexScalar>::zeros(d, d);
                m[(i, j)] = ComplexScalar::real(inv_sqrt2.clone());
                m[(j, i)] = ComplexScalar::real(inv_sqrt2.clone());
                elements.push(m);
                labels.push(format!("sym({i},{j})"));
            }
        }

        // −i(|i⟩⟨j| − |j⟩⟨i|)/√2: entry (i,j) = −i/√2, entry (j,i) = i/√2
        for i in 0..d {
            for j in (i + 1)..d {
                let mut m = Mat::<ComplexScalar>::zeros(d, d);
                m[(i, j)] = ComplexScalar::new(ExactScalar::zero(), -&inv_sqrt2);
                m[(j, i)] = ComplexScalar::new(ExactScalar::zero(), inv_sqrt2.clone());
                elements.push(m);
                labels.push(format!("asym({i},{j})"));
            }
        }

        // (Σ_{a<k} |a⟩⟨a| − k|k⟩⟨k|)/√(k(k+1)) for k = 1..d−1
        for k in 1..d {
            let norm = ExactScalar::sqrt((k * (k + 1)) as u64)?.inv()?;
            let mut m = Mat::<ComplexScalar>::zeros(d, d);
            for a in 0..k {
                m[(a, a)] = ComplexScalar::real(norm.clone());
            }
            m[(k, k)] = ComplexScalar::real(
                norm.scale(&BigRational::from_integer(BigInt::from(-(k as i64)))),
            );
            elements.push(m);
            labels.push(format!("diag({k})"));
        }

        Ok(Self {
            dim: d,
            elements,
            labels,
        })
    }

    /// Wraps an explicitly ordered list after validating Hermiticity and
    /// exact orthonormality. Labels default to positional names.
    pub fn custom(matrices: Vec<Mat<ComplexScalar>>) -> Result<Self> {
        let labels = (0..matrices.len()).map(|k| format!("custom({k})")).collect();
        Self::custom_labeled(matrices, labels)
    }

    pub fn custom_labeled(matrices: Vec<Mat<ComplexScalar>>, labels: Vec<String>) -> Result<Self> {
        let d2 = matrices.len();
        let d = (d2 as f64).sqrt().round() as usize;
        if d < 2 || d * d != d2 {
            return Err(Error::InvalidInput(format!(
                "a basis for dimension d needs d² elements, got {d2}"
            )));
        }
        for (idx, m) in matrices.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return dim_mismatch_basis(idx, d, m);
            }
            if *m != m.conj_transpose() {
                return Err(Error::NotHermitian { index: idx });
            }
        }
        let basis = Self {
            dim: d,
            elements: matrices,
            labels,
        };
        basis.check_orthonormal(&Backend::Exact)?;
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Mat<ComplexScalar> {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Mat<ComplexScalar>] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// True iff all d⁴ trace pairings equal δᵢⱼ (within tolerance in float
    /// mode).
    pub fn verify_orthonormal(&self, backend: &Backend) -> bool {
        self.check_orthonormal(backend).is_ok()
    }

    fn check_orthonormal(&self, backend: &Backend) -> Result<()> {
        for i in 0..self.elements.len() {
            for j in i..self.elements.len() {
                let t = self.elements[i].trace_of_product(&self.elements[j]);
                let expected = if i == j {
                    ComplexScalar::one()
                } else {
                    ComplexScalar::zero()
                };
                if !backend.complex_eq(&t, &expected) {
                    return Err(Error::NotOrthonormal {
                        i,
                        j,
                        value: format!("{} + ({})i", t.re, t.im),
                    });
                }
            }
        }
        Ok(())
    }

    /// Shared handle; bases are immutable, so clones of the Arc are cheap
    /// to pass around.
    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

fn dim_mismatch_basis(idx: usize, d: usize, m: &Mat<ComplexScalar>) -> Result<HermitianBasis> {
    crate::dim_mismatch(format!(
        "basis element {idx} is {}x{}, expected {d}x{d}",
        m.rows(),
        m.cols()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Tolerance;

    fn sc(t: &str) -> ExactScalar {
        ExactScalar::parse(t).unwrap()
    }

    #[test]
    fn qubit_basis_elements() {
        let b = HermitianBasis::gellmann(2).unwrap();
        assert_eq!(b.len(), 4);
        // (|0⟩⟨0|−|1⟩⟨1|)/√2 is the last element (diagonal)
        let diag = b.element(3);
        assert_eq!(diag[(0, 0)].re, sc("1/2*sqrt(2)"));
        assert_eq!(diag[(1, 1)].re, sc("-1/2*sqrt(2)"));
        // (|0⟩⟨1|+|1⟩⟨0|)/√2
        let sym = b.element(1);
        assert_eq!(sym[(0, 1)].re, sc("1/2*sqrt(2)"));
        assert_eq!(sym[(1, 0)].re, sc("1/2*sqrt(2)"));
    }

    #[test]
    fn qutrit_last_diagonal() {
        let b = HermitianBasis::gellmann(3).unwrap();
        assert_eq!(b.len(), 9);
        let last = b.element(8);
        // (|0⟩⟨0|+|1⟩⟨1|−2|2⟩⟨2|)/√6
        let expect = sc("1/6*sqrt(6)");
        assert_eq!(last[(0, 0)].re, expect);
        assert_eq!(last[(1, 1)].re, expect);
        assert_eq!(last[(2, 2)].re, sc("-1/3*sqrt(6)"));
    }

    #[test]
    fn identity_element_normalized() {
        for d in 2..=4 {
            let b = HermitianBasis::gellmann(d).unwrap();
            let id = b.element(0);
            let t = id.trace_of_product(id);
            assert_eq!(t, ComplexScalar::one());
        }
    }

    #[test]
    fn orthonormal_d2_to_d4() {
        for d in 2..=4 {
            let b = HermitianBasis::gellmann(d).unwrap();
            assert!(b.verify_orthonormal(&Backend::Exact), "d = {d}");
        }
    }

    #[test]
    fn traceless_off_identity() {
        for d in 2..=4 {
            let b = HermitianBasis::gellmann(d).unwrap();
            for i in 1..b.len() {
                assert!(b.element(i).trace().is_zero(), "d = {d}, element {i}");
            }
        }
    }

    #[test]
    fn scaled_element_fails_verification() {
        let b = HermitianBasis::gellmann(2).unwrap();
        let mut elems = b.elements().to_vec();
        elems[2] = elems[2].scale(&ComplexScalar::from_int(2));
        assert!(HermitianBasis::custom(elems.clone()).is_err());
        let broken = HermitianBasis {
            dim: 2,
            elements: elems,
            labels: vec![String::new(); 4],
        };
        assert!(!broken.verify_orthonormal(&Backend::Exact));
        // but a generous float tolerance still rejects a 2x scale
        assert!(!broken.verify_orthonormal(&Backend::Float(Tolerance::default())));
    }

    #[test]
    fn custom_rejects_non_hermitian() {
        let mut elems = HermitianBasis::gellmann(2).unwrap().elements().to_vec();
        elems[1][(0, 1)] = ComplexScalar::i();
        assert!(matches!(
            HermitianBasis::custom(elems),
            Err(Error::NotHermitian { index: 1 })
        ));
    }

    #[test]
    fn custom_accepts_standard_basis() {
        let b = HermitianBasis::gellmann(3).unwrap();
        let again = HermitianBasis::custom(b.elements().to_vec()).unwrap();
        assert_eq!(again.elements(), b.elements());
    }

    #[test]
    fn gellmann_rejects_d_below_2() {
        assert!(matches!(
            HermitianBasis::gellmann(1),
            Err(Error::BasisDimension(1))
        ));
    }

    #[test]
    fn completeness_expansion() {
        // H = Σ tr(Hλᵢ)·λᵢ for a rational-entry Hermitian H
        let b = HermitianBasis::gellmann(3).unwrap();
        let mut h = Mat::<ComplexScalar>::zeros(3, 3);
        h[(0, 0)] = ComplexScalar::from_int(2);
        h[(1, 1)] = ComplexScalar::real(sc("-1/3"));
        h[(2, 2)] = ComplexScalar::real(sc("5/7"));
        h[(0, 1)] = ComplexScalar::new(sc("1/2"), sc("3/4"));
        h[(1, 0)] = h[(0, 1)].conj();
        h[(1, 2)] = ComplexScalar::new(sc("-2"), sc("1/5"));
        h[(2, 1)] = h[(1, 2)].conj();

        let mut rebuilt = Mat::<ComplexScalar>::zeros(3, 3);
        for e in b.elements() {
            let coeff = h.trace_of_product(e);
            rebuilt = rebuilt.add(&e.scale(&coeff));
        }
        assert_eq!(rebuilt, h);
    }
}
