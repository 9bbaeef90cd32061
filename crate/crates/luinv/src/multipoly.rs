//! Sparse multivariate polynomials in the variables (x, x₁, x₂, x₃) over
//! the exact scalar field, plus the determinant routines behind the Albert
//! invariant.
//!
//! Monomials are kept in graded lexicographic order; serialization walks
//! them descending, so equal polynomials print identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::mat::{Mat, Ring};
use crate::scalar::ExactScalar;

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["x", "x1", "x2", "x3"];

/// Exponent vector over (x, x₁, x₂, x₃).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(idx: usize) -> Mono {
        let mut e = [0u16; NVARS];
        e[idx] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let mut e = [0u16; NVARS];
        for k in 0..NVARS {
            e[k] = self.0[k] + rhs.0[k];
        }
        Mono(e)
    }

    pub fn try_div(&self, rhs: &Mono) -> Option<Mono> {
        let mut e = [0u16; NVARS];
        for k in 0..NVARS {
            e[k] = self.0[k].checked_sub(rhs.0[k])?;
        }
        Some(Mono(e))
    }
}

/// Graded lexicographic order: total degree first, then lex.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, ExactScalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        Self { terms }
    }

    pub fn var(idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(idx), ExactScalar::one());
        Self { terms }
    }

    pub fn monomial(mono: Mono, coeff: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Mono) -> ExactScalar {
        self.terms.get(mono).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &ExactScalar)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Mono, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    fn insert(&mut self, mono: Mono, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (*m, k.scale(q))).collect(),
        }
    }

    /// Exact division; `None` when the divisor does not divide exactly
    /// (never expected on the Bareiss path).
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(dm)?;
            let qc = rc * &dc_inv;
            let qterm = Self::monomial(qm, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Substitutes exact values for a subset of the variables.
    pub fn specialize(&self, assignment: &[Option<ExactScalar>; NVARS]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (k, slot) in assignment.iter().enumerate() {
                if let Some(val) = slot {
                    for _ in 0..m.0[k] {
                        coeff = &coeff * val;
                    }
                    mono.0[k] = 0;
                }
            }
            out.insert(mono, coeff);
        }
        out
    }

    pub fn eval(&self, values: &[ExactScalar; NVARS]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for k in 0..NVARS {
                for _ in 0..m.0[k] {
                    term = &term * &values[k];
                }
            }
            acc += &term;
        }
        acc
    }

    /// Multiplies each term by `x_var^(target − total_degree)`; panics if a
    /// term already exceeds the target degree.
    pub fn homogenize(&self, var: usize, target: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = m.total_degree();
            assert!(t <= target, "term degree exceeds homogenization target");
            let mut mono = *m;
            mono.0[var] += (target - t) as u16;
            out.insert(mono, c.clone());
        }
        out
    }

    /// First monomial (descending canonical order) whose coefficients
    /// differ between the two polynomials, with both values.
    pub fn first_difference(
        &self,
        other: &Self,
        eq: impl Fn(&ExactScalar, &ExactScalar) -> bool,
    ) -> Option<(Mono, ExactScalar, ExactScalar)> {
        let mut monos: Vec<Mono> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        monos.sort_unstable();
        monos.dedup();
        for m in monos.into_iter().rev() {
            let a = self.coefficient(&m);
            let b = other.coefficient(&m);
            if !eq(&a, &b) {
                return Some((m, a, b));
            }
        }
        None
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
}

pub fn format_monomial(m: &Mono) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(VAR_NAMES[k].to_string()),
            _ => parts.push(format!("{}^{}", VAR_NAMES[k], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms_desc().enumerate() {
            let cs = coeff.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                // multi-term radical sums keep their own sign structure and
                // get parenthesized below
                Some(rest) if coeff.radicands().count() == 1 => (true, rest.to_string()),
                _ => (false, cs),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono_str = format_monomial(mono);
            let needs_parens = mag.contains(' ');
            if mono_str.is_empty() {
                if needs_parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag == "1" {
                write!(f, "{mono_str}")?;
            } else if needs_parens {
                write!(f, "({mag})*{mono_str}")?;
            } else {
                write!(f, "{mag}*{mono_str}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Fraction-free (Bareiss) determinant over the polynomial ring.
pub fn det_bareiss(m: &Mat<MultiPoly>) -> MultiPoly {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(r) = ((k + 1)..n).find(|&r| !a[(r, k)].is_zero()) else {
                return MultiPoly::zero();
            };
            a.swap_rows(k, r);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[(k, k)]
                    .mul(&a[(i, j)])
                    .sub(&a[(i, k)].mul(&a[(k, j)]));
                a[(i, j)] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
        }
        for i in (k + 1)..n {
            a[(i, k)] = MultiPoly::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Exact determinant over the scalar field by Gaussian elimination.
pub fn det_field(m: &Mat<ExactScalar>) -> ExactScalar {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = ExactScalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
            return ExactScalar::zero();
        };
        if p != k {
            a.swap_rows(k, p);
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det = &det * &pivot;
        let pinv = pivot.inv().expect("nonzero pivot");
        for i in (k + 1)..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = &a[(i, k)] * &pinv;
            for j in k..n {
                let t = &factor * &a[(k, j)];
                let cur = a[(i, j)].clone();
                a[(i, j)] = &cur - &t;
            }
        }
    }
    det
}

/// Newton interpolation in variable `var` through `(points[i], values[i])`;
/// values may themselves be polynomials in later variables.
pub fn newton_interpolate(points: &[BigRational], values: &[MultiPoly], var: usize) -> MultiPoly {
    assert_eq!(points.len(), values.len());
    let n = points.len();
    let mut dd: Vec<MultiPoly> = values.to_vec();
    for level in 1..n {
        for i in ((level)..n).rev() {
            let diff = dd[i].sub(&dd[i - 1]);
            let span = &points[i] - &points[i - level];
            dd[i] = diff.scale_rational(&span.recip());
        }
    }
    // Horner form over (X − points[i])
    let x = MultiPoly::var(var);
    let mut acc = dd[n - 1].clone();
    for i in (0..n - 1).rev() {
        let shift = x.sub(&MultiPoly::constant(ExactScalar::from_big_rational(
            points[i].clone(),
        )));
        acc = acc.mul(&shift).add(&dd[i]);
    }
    acc
}

/// det(xI − x₁C₁ − x₂C₂ − x₃C₃) by dehomogenized evaluation at a rational
/// grid and tensor Newton interpolation, then rehomogenization in `x`.
///
/// The grid takes `deg+1` points per variable where `deg` is the matrix
/// dimension — the a-priori per-variable degree bound of the determinant.
pub fn det_linear_pencil_interpolated(
    c1: &Mat<ExactScalar>,
    c2: &Mat<ExactScalar>,
    c3: &Mat<ExactScalar>,
) -> MultiPoly {
    let n = c1.rows();
    assert!(c1.is_square() && c2.is_square() && c3.is_square());
    assert!(c2.rows() == n && c3.rows() == n);
    let points: Vec<BigRational> = (0..=n as i64)
        .map(|k| BigRational::from_integer(BigInt::from(k)))
        .collect();
    let npts = points.len();

    // values[i][j][k] = det(I − p_i·C₁ − p_j·C₂ − p_k·C₃)
    let scaled = |c: &Mat<ExactScalar>, q: &BigRational| c.map(|x| x.scale(q));
    let mut per_i: Vec<MultiPoly> = Vec::with_capacity(npts);
    for pi in &points {
        let si = scaled(c1, pi);
        let mut per_j: Vec<MultiPoly> = Vec::with_capacity(npts);
        for pj in &points {
            let sj = scaled(c2, pj);
            let mut per_k: Vec<MultiPoly> = Vec::with_capacity(npts);
            for pk in &points {
                let sk = scaled(c3, pk);
                let m = Mat::<ExactScalar>::identity(n)
                    .sub(&si)
                    .sub(&sj)
                    .sub(&sk);
                per_k.push(MultiPoly::constant(det_field(&m)));
            }
            per_j.push(newton_interpolate(&points, &per_k, 3));
        }
        per_i.push(newton_interpolate(&points, &per_j, 2));
    }
    let dehom = newton_interpolate(&points, &per_i, 1);
    dehom.homogenize(0, n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::mat_from_i64;

    fn sc(t: &str) -> ExactScalar {
        ExactScalar::parse(t).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let x = Mono::var(0);
        let x1 = Mono::var(1);
        let x_sq = x.mul(&x);
        assert!(x > x1); // same degree, lex
        assert!(x_sq > x); // higher degree wins
    }

    #[test]
    fn arithmetic_and_display() {
        let p = MultiPoly::var(0)
            .mul(&MultiPoly::var(0))
            .sub(&MultiPoly::var(1).scale(&sc("1/2")));
        assert_eq!(p.to_string(), "x^2 - 1/2*x1");
        let q = p.mul(&p);
        assert_eq!(q.to_string(), "x^4 - x^2*x1 + 1/4*x1^2");
    }

    #[test]
    fn display_radical_coefficients() {
        let p = MultiPoly::monomial(Mono::var(0), sc("sqrt(3)"))
            .add(&MultiPoly::constant(sc("1/2 - sqrt(2)")));
        assert_eq!(p.to_string(), "sqrt(3)*x + (1/2 - sqrt(2))");
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = MultiPoly::var(0).add(&MultiPoly::var(1));
        let b = MultiPoly::var(0).sub(&MultiPoly::constant(sc("2")));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(prod.exact_div(&MultiPoly::var(2)).is_none());
    }

    #[test]
    fn bareiss_matches_small_hand_determinant() {
        // det [[x, 1], [1, x]] = x² − 1
        let x = MultiPoly::var(0);
        let one = MultiPoly::one();
        let m = Mat::from_rows(vec![
            vec![x.clone(), one.clone()],
            vec![one.clone(), x.clone()],
        ]);
        let det = det_bareiss(&m);
        let expect = x.mul(&x).sub(&one);
        assert_eq!(det, expect);
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        // det [[0, 1], [1, 0]] = −1
        let m = Mat::from_rows(vec![
            vec![MultiPoly::zero(), MultiPoly::one()],
            vec![MultiPoly::one(), MultiPoly::zero()],
        ]);
        assert_eq!(det_bareiss(&m), MultiPoly::one().neg());
    }

    #[test]
    fn field_det_matches_integer_det() {
        let m = mat_from_i64(&[&[2, 1, 0], &[1, -1, 3], &[0, 2, 1]]);
        // det = 2(−1−6) − 1(1−0) + 0 = −15
        assert_eq!(det_field(&m), sc("-15"));
    }

    #[test]
    fn interpolated_det_matches_bareiss() {
        let c1 = mat_from_i64(&[&[1, 2, 0], &[2, -1, 1], &[0, 1, 3]]);
        let c2 = mat_from_i64(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 2]]);
        let c3 = mat_from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let n = 3;
        let mut sym = Mat::<MultiPoly>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut e = MultiPoly::zero();
                if i == j {
                    e = e.add(&MultiPoly::var(0));
                }
                e = e.sub(&MultiPoly::var(1).scale(&c1[(i, j)]));
                e = e.sub(&MultiPoly::var(2).scale(&c2[(i, j)]));
                e = e.sub(&MultiPoly::var(3).scale(&c3[(i, j)]));
                sym[(i, j)] = e;
            }
        }
        let direct = det_bareiss(&sym);
        let interp = det_linear_pencil_interpolated(&c1, &c2, &c3);
        assert_eq!(direct, interp);
    }

    #[test]
    fn newton_interpolation_univariate() {
        // f(t) = t² − 3t + 2 through t = 0, 1, 2
        let points: Vec<BigRational> = (0..=2)
            .map(|k| BigRational::from_integer(BigInt::from(k)))
            .collect();
        let values: Vec<MultiPoly> = [2i64, 0, 0]
            .iter()
            .map(|&v| MultiPoly::constant(ExactScalar::from_int(v)))
            .collect();
        let p = newton_interpolate(&points, &values, 1);
        let x1 = MultiPoly::var(1);
        let expect = x1
            .mul(&x1)
            .sub(&x1.scale(&sc("3")))
            .add(&MultiPoly::constant(sc("2")));
        assert_eq!(p, expect);
    }
}
