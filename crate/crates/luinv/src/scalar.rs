//! Exact arithmetic in multi-quadratic extension fields Q(√n₁,…,√nₖ).
//!
//! An [`ExactScalar`] is a finite sum `Σ cᵣ·√r` over squarefree radicands
//! `r ≥ 1` with nonzero rational coefficients `cᵣ` (radicand 1 is the
//! rational part). The representation is canonical: radicands are kept
//! squarefree and sorted, coefficients in lowest terms, zero coefficients
//! dropped. Addition and multiplication are closed; inversion solves the
//! multiplication-by-`a` linear system on the Q-basis of the subfield
//! generated by the radicands present in `a`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Splits `n ≥ 1` as `n = f²·s` with `s` squarefree; returns `(s, f)`.
///
/// Trial division is fine here: radicands come from Gell-Mann
/// normalizations and user input, and stay small.
pub fn squarefree_reduce(n: u64) -> (u64, u64) {
    assert!(n >= 1, "radicand must be positive");
    let mut s = n;
    let mut f = 1u64;
    let mut d = 2u64;
    while d * d <= s {
        while s % (d * d) == 0 {
            s /= d * d;
            f *= d;
        }
        d += 1;
    }
    (s, f)
}

/// Product of two squarefree radicands: `√a·√b = f·√s`; returns `(s, f)`.
fn squarefree_mul(a: u64, b: u64) -> (u64, u64) {
    // For squarefree a, b: ab = g²·(a/g)(b/g) with g = gcd(a, b), and the
    // cofactor product is squarefree because a/g and b/g are coprime.
    let g = a.gcd(&b);
    ((a / g) * (b / g), g)
}

/// Element of a multi-quadratic extension field Q(√n₁,…,√nₖ).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    /// radicand (squarefree, ≥ 1; 1 = rational part) → nonzero coefficient
    terms: BTreeMap<u64, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_big_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Rational `num/den`. Errors on a zero denominator.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_big_rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_big_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    /// `√n` with the square factor extracted, e.g. `√12 = 2√3`.
    pub fn sqrt(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRadicand);
        }
        let (s, f) = squarefree_reduce(n);
        let mut terms = BTreeMap::new();
        terms.insert(s, BigRational::from_integer(BigInt::from(f)));
        Ok(Self { terms })
    }

    /// `c·√n` for rational `c`.
    pub fn sqrt_scaled(c: BigRational, n: u64) -> Result<Self> {
        Ok(Self::sqrt(n)? * Self::from_big_rational(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().map_or(false, |q| q.is_one())
    }

    /// The rational value if no genuine radical is present.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Radicands present (squarefree, ascending; 1 = rational part).
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, radicand: u64) -> BigRational {
        self.terms.get(&radicand).cloned().unwrap_or_else(BigRational::zero)
    }

    fn insert_term(terms: &mut BTreeMap<u64, BigRational>, radicand: u64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(radicand) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Double-precision image. Approximate by construction.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&r, c)| c.to_f64().unwrap_or(f64::NAN) * (r as f64).sqrt())
            .sum()
    }

    /// Multiplicative inverse via the linear system of multiplication-by-`self`
    /// on the Q-basis of the subfield its radicands generate.
    pub fn inv(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Single-term fast path: (c·√r)⁻¹ = (1/(c·r))·√r.
        if self.terms.len() == 1 {
            let (&r, c) = self.terms.iter().next().unwrap();
            let coeff = (BigRational::from_integer(BigInt::from(r)) * c).recip();
            let mut terms = BTreeMap::new();
            terms.insert(r, coeff);
            return Ok(ExactScalar { terms });
        }

        // Close the radicand set under squarefree products: an F₂-vector
        // space of size 2^k, small in practice.
        let mut basis: Vec<u64> = vec![1];
        for &r in self.terms.keys() {
            if !basis.contains(&r) {
                basis.push(r);
            }
        }
        loop {
            let mut added = false;
            let snapshot = basis.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let (s, _) = squarefree_mul(a, b);
                    if !basis.contains(&s) {
                        basis.push(s);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        basis.sort_unstable();
        let index = |r: u64| basis.binary_search(&r).expect("closed basis");
        let k = basis.len();

        // Column g of the matrix is self·√g expressed on the basis.
        let mut mat = vec![vec![BigRational::zero(); k]; k];
        for (j, &g) in basis.iter().enumerate() {
            for (&r, c) in &self.terms {
                let (s, f) = squarefree_mul(r, g);
                mat[index(s)][j] += c * BigRational::from_integer(BigInt::from(f));
            }
        }
        let mut rhs = vec![BigRational::zero(); k];
        rhs[index(1)] = BigRational::one();

        // Exact Gaussian elimination over Q.
        for col in 0..k {
            let pivot_row = (col..k)
                .find(|&r| !mat[r][col].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            mat.swap(col, pivot_row);
            rhs.swap(col, pivot_row);
            let pinv = mat[col][col].recip();
            for x in mat[col].iter_mut() {
                *x *= &pinv;
            }
            rhs[col] *= &pinv;
            for row in 0..k {
                if row != col && !mat[row][col].is_zero() {
                    let factor = mat[row][col].clone();
                    for c2 in col..k {
                        let t = &mat[col][c2] * &factor;
                        mat[row][c2] -= t;
                    }
                    let t = &rhs[col] * &factor;
                    rhs[row] -= t;
                }
            }
        }

        let mut terms = BTreeMap::new();
        for (i, &g) in basis.iter().enumerate() {
            Self::insert_term(&mut terms, g, rhs[i].clone());
        }
        Ok(ExactScalar { terms })
    }

    pub fn div(&self, rhs: &ExactScalar) -> Result<ExactScalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Scale by a plain rational (cheaper than a full multiply).
    pub fn scale(&self, q: &BigRational) -> ExactScalar {
        if q.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(&r, c)| (r, c * q)).collect(),
        }
    }

    /// Parses the scalar grammar: a signed sum of terms, each `R`,
    /// `R*sqrt(N)`, or `sqrt(N)`, with `R` an integer or `int/int`.
    pub fn parse(text: &str) -> Result<ExactScalar> {
        Parser::new(text).parse_scalar()
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

/// Canonical serialization: ascending radicands, rational part first,
/// " + " / " - " separators, e.g. `1/2 - 1/3*sqrt(2)`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&r, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if r == 1 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{}*sqrt({r})", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (&r, c) in &rhs.terms {
            ExactScalar::insert_term(&mut terms, r, c.clone());
        }
        ExactScalar { terms }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (&r, c) in &rhs.terms {
            ExactScalar::insert_term(&mut terms, r, -c.clone());
        }
        ExactScalar { terms }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut terms = BTreeMap::new();
        for (&ra, ca) in &self.terms {
            for (&rb, cb) in &rhs.terms {
                let (s, f) = squarefree_mul(ra, rb);
                let coeff = ca * cb * BigRational::from_integer(BigInt::from(f));
                ExactScalar::insert_term(&mut terms, s, coeff);
            }
        }
        ExactScalar { terms }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(&r, c)| (r, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident, $ty:ty) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add, ExactScalar);
forward_owned_binop!(Sub, sub, ExactScalar);
forward_owned_binop!(Mul, mul, ExactScalar);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (&r, c) in &rhs.terms {
            ExactScalar::insert_term(&mut self.terms, r, c.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (&r, c) in &rhs.terms {
            ExactScalar::insert_term(&mut self.terms, r, -c.clone());
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

/// Complex number over the exact field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexScalar {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl ComplexScalar {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(ExactScalar::one(), ExactScalar::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(ExactScalar::zero(), ExactScalar::one())
    }

    pub fn real(re: ExactScalar) -> Self {
        Self::new(re, ExactScalar::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(ExactScalar::from_int(n))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|² = re² + im², always in the same field.
    pub fn norm_sqr(&self) -> ExactScalar {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<ComplexScalar> {
        let n = self.norm_sqr().inv()?;
        Ok(ComplexScalar::new(&self.re * &n, &(-&self.im) * &n))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} , {}·i)", self.re, self.im)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-&self.re, -&self.im)
    }
}

forward_owned_binop!(Add, add, ComplexScalar);
forward_owned_binop!(Sub, sub, ComplexScalar);
forward_owned_binop!(Mul, mul, ComplexScalar);

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

impl From<ExactScalar> for ComplexScalar {
    fn from(re: ExactScalar) -> Self {
        ComplexScalar::real(re)
    }
}

/// Comparison tolerances for the floating backend. The exact backend
/// ignores them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            relative: 1e-9,
            absolute: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn close(&self, a: f64, b: f64) -> bool {
        let diff = (a - b).abs();
        diff <= self.absolute || diff <= self.relative * a.abs().max(b.abs())
    }
}

/// Equality policy: exact field comparison, or tolerance-based comparison
/// of double-precision images.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Backend {
    #[default]
    Exact,
    Float(Tolerance),
}

impl Backend {
    pub fn float_default() -> Self {
        Backend::Float(Tolerance::default())
    }

    pub fn scalar_eq(&self, a: &ExactScalar, b: &ExactScalar) -> bool {
        match self {
            Backend::Exact => a == b,
            Backend::Float(tol) => tol.close(a.to_f64(), b.to_f64()),
        }
    }

    pub fn scalar_is_zero(&self, a: &ExactScalar) -> bool {
        match self {
            Backend::Exact => a.is_zero(),
            Backend::Float(tol) => tol.close(a.to_f64(), 0.0),
        }
    }

    pub fn complex_eq(&self, a: &ComplexScalar, b: &ComplexScalar) -> bool {
        self.scalar_eq(&a.re, &b.re) && self.scalar_eq(&a.im, &b.im)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Backend::Exact)
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::ScalarSyntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn parse_scalar(&mut self) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(self.err("empty scalar"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            if self.eat(b'-') {
                negative = true;
            } else if self.eat(b'+') {
                if first {
                    // A leading '+' sign is allowed.
                } else {
                    // separator already consumed below; '+' here only on first term
                }
            } else if !first {
                return Err(self.err("expected '+' or '-'"));
            }
            self.skip_ws();
            let term = self.parse_term()?;
            if negative {
                acc -= &term;
            } else {
                acc += &term;
            }
            first = false;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') | Some(b'-') => continue,
                Some(_) => return Err(self.err("expected '+', '-', or end of input")),
            }
        }
        Ok(acc)
    }

    /// term := sqrt(N) | R [ '*' sqrt(N) ]
    fn parse_term(&mut self) -> Result<ExactScalar> {
        if self.looking_at_sqrt() {
            let rad = self.parse_sqrt()?;
            return ExactScalar::sqrt(rad);
        }
        let q = self.parse_rational()?;
        self.skip_ws();
        if self.eat(b'*') {
            self.skip_ws();
            if !self.looking_at_sqrt() {
                return Err(self.err("expected sqrt(...) after '*'"));
            }
            let rad = self.parse_sqrt()?;
            ExactScalar::sqrt_scaled(q, rad)
        } else {
            Ok(ExactScalar::from_big_rational(q))
        }
    }

    fn looking_at_sqrt(&self) -> bool {
        self.text[self.pos..].starts_with("sqrt")
    }

    fn parse_sqrt(&mut self) -> Result<u64> {
        self.pos += 4; // "sqrt"
        self.skip_ws();
        self.expect(b'(')?;
        self.skip_ws();
        let n = self.parse_uint()?;
        if n == 0 {
            return Err(Error::ZeroRadicand);
        }
        self.skip_ws();
        self.expect(b')')?;
        Ok(n)
    }

    fn parse_uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn parse_bigint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(self.text[start..self.pos]
            .parse::<BigInt>()
            .expect("digits parse as BigInt"))
    }

    /// R := int [ '/' int ], denominator > 0
    fn parse_rational(&mut self) -> Result<BigRational> {
        let numer = self.parse_bigint()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let denom = self.parse_bigint()?;
            if denom.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        ExactScalar::parse(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let half_sqrt3 = s("1/2*sqrt(3)");
        assert_eq!(half_sqrt3.coefficient(3), BigRational::new(1.into(), 2.into()));
        assert_eq!(half_sqrt3.radicands().collect::<Vec<_>>(), vec![3]);

        // √12 = 2√3
        let r12 = s("sqrt(12)");
        assert_eq!(r12, s("2*sqrt(3)"));

        // like-term merge
        assert_eq!(s("1/2 + 1/2"), ExactScalar::one());
    }

    #[test]
    fn parse_errors_report_position() {
        match ExactScalar::parse("1/2 + @") {
            Err(Error::ScalarSyntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            ExactScalar::parse("1/0"),
            Err(Error::ZeroDenominator)
        ));
        assert!(matches!(
            ExactScalar::parse("sqrt(0)"),
            Err(Error::ZeroRadicand)
        ));
        assert!(ExactScalar::parse("").is_err());
        assert!(ExactScalar::parse("1 + ").is_err());
    }

    #[test]
    fn mul_reduces_radicands() {
        assert_eq!(&s("sqrt(2)") * &s("sqrt(3)"), s("sqrt(6)"));
        assert_eq!(&s("sqrt(2)") * &s("sqrt(2)"), s("2"));
        assert_eq!(&s("sqrt(6)") * &s("sqrt(10)"), s("2*sqrt(15)"));
    }

    #[test]
    fn inv_golden_plus_sqrt2() {
        // (1+√2)(−1+√2) = 1
        let a = s("1 + sqrt(2)");
        let inv = a.inv().unwrap();
        assert_eq!(inv, s("-1 + sqrt(2)"));
        assert_eq!(&a * &inv, ExactScalar::one());
    }

    #[test]
    fn inv_three_radicals() {
        let a = s("1 + sqrt(2) + sqrt(3) - 2/7*sqrt(6)");
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, ExactScalar::one());
    }

    #[test]
    fn inv_zero_fails() {
        assert!(matches!(
            ExactScalar::zero().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn to_f64_values() {
        assert_eq!(s("1/2").to_f64(), 0.5);
        assert!((s("sqrt(2)").to_f64() - 1.4142135623730951).abs() < 1e-15);
        assert!((s("1/2*sqrt(3)").to_f64() - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn squarefree_reduce_examples() {
        assert_eq!(squarefree_reduce(12), (3, 2));
        assert_eq!(squarefree_reduce(1), (1, 1));
        assert_eq!(squarefree_reduce(18), (2, 3));
        assert_eq!(squarefree_reduce(49), (1, 7));
    }

    #[test]
    fn canonical_display_roundtrip() {
        for text in [
            "0",
            "1/2",
            "-1/2",
            "sqrt(2)",
            "-sqrt(2)",
            "1/2 - 1/3*sqrt(2)",
            "2 + sqrt(2) - 5/7*sqrt(30)",
        ] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(s(&v.to_string()), v);
        }
        // non-canonical inputs serialize canonically
        assert_eq!(s("1*sqrt(2)").to_string(), "sqrt(2)");
        assert_eq!(s("sqrt(8)").to_string(), "2*sqrt(2)");
    }

    #[test]
    fn complex_arithmetic() {
        let z = ComplexScalar::new(s("1/2"), s("1/2*sqrt(3)"));
        let w = &z * &z.conj();
        assert_eq!(w.re, ExactScalar::one());
        assert!(w.im.is_zero());
        assert_eq!(z.norm_sqr(), ExactScalar::one());
        let zi = z.inv().unwrap();
        assert_eq!(&z * &zi, ComplexScalar::one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn backend_float_tolerance() {
        let b = Backend::float_default();
        assert!(b.scalar_eq(&s("1/3"), &s("333333333333/999999999999")));
        assert!(!b.scalar_eq(&s("1/3"), &s("1/2")));
        assert!(Backend::Exact.scalar_eq(&s("1/3"), &s("1/3")));
    }
}
