//! The Kronecker pencil λW + uvᵗ and its Smith normal form over K[λ].
//!
//! Polynomials live over the exact scalar field, so rank and divisibility
//! decisions are genuine. The Smith diagonal is monic-normalized; the
//! pencil's diagonal is an invariant of quasi-LU equivalence and the basis
//! of the `snf` criterion.

use std::fmt;

use crate::bloch::BlochTriple;
use crate::invariants::{Outcome, Verdict, Witness};
use crate::mat::{Mat, Ring};
use crate::scalar::{Backend, ExactScalar};
use crate::{dim_mismatch, Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        let mut p = Self { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial c·λ^deg.
    pub fn monomial(c: ExactScalar, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); deg + 1];
        coeffs[deg] = c;
        Self { coeffs }
    }

    /// λ·w + c — the degree-≤1 pencil entry.
    pub fn linear(c: ExactScalar, w: ExactScalar) -> Self {
        let mut p = Self {
            coeffs: vec![c, w],
        };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<ExactScalar>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, ExactScalar::is_one)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    /// Monic normalization (identity on the zero polynomial).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, at: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Parses the scalar grammar extended with the variable token `l`
    /// (factors `R`, `sqrt(N)`, `l`, `l^k` joined by `*`).
    pub fn parse(text: &str) -> Result<Poly> {
        PolyParser::new(text).parse()
    }
}

/// Euclidean division: `a = q·b + r` with `deg r < deg b`, exact over the
/// field. Errors on a zero divisor.
pub fn poly_divmod(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let Some(db) = b.degree() else {
        return Err(Error::ZeroPolynomialDivision);
    };
    let lb_inv = b.leading().unwrap().inv()?;
    let mut rem = a.clone();
    let mut quot = Poly::zero();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let factor = rem.leading().unwrap() * &lb_inv;
        let step = Poly::monomial(factor, dr - db);
        rem = rem.sub(&step.mul(b));
        quot = quot.add(&step);
    }
    Ok((quot, rem))
}

/// Monic greatest common divisor (Euclid over the field).
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = poly_divmod(&x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x.monic()
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for deg in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[deg];
            if c.is_zero() {
                continue;
            }
            // one printed term per radical component, highest degree first
            for r in c.radicands() {
                let q = c.coefficient(r);
                let neg = q < num_rational::BigRational::from_integer(0.into());
                let mag = if neg { -q.clone() } else { q.clone() };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mut parts: Vec<String> = Vec::new();
                let mag_is_one = mag == num_rational::BigRational::from_integer(1.into());
                if !mag_is_one || (r == 1 && deg == 0) {
                    parts.push(if mag.denom() == &num_bigint::BigInt::from(1) {
                        mag.numer().to_string()
                    } else {
                        format!("{}/{}", mag.numer(), mag.denom())
                    });
                }
                if r != 1 {
                    parts.push(format!("sqrt({r})"));
                }
                if deg == 1 {
                    parts.push("l".to_string());
                } else if deg > 1 {
                    parts.push(format!("l^{deg}"));
                }
                if parts.is_empty() {
                    parts.push("1".to_string());
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

struct PolyParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::ScalarSyntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn parse(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        self.skip_ws();
        if self.rest().is_empty() {
            return Err(self.err("empty polynomial"));
        }
        loop {
            self.skip_ws();
            let negative = if self.eat("-") {
                true
            } else {
                let _ = self.eat("+");
                false
            };
            self.skip_ws();
            let term = self.parse_term()?;
            acc = if negative { acc.sub(&term) } else { acc.add(&term) };
            self.skip_ws();
            match self.rest().chars().next() {
                None => break,
                Some('+') | Some('-') => continue,
                Some(_) => return Err(self.err("expected '+', '-', or end of input")),
            }
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*; factor := R | sqrt(N) | l[^k]
    fn parse_term(&mut self) -> Result<Poly> {
        let mut coeff = ExactScalar::one();
        let mut degree = 0usize;
        loop {
            self.skip_ws();
            if self.eat("sqrt") {
                self.skip_ws();
                if !self.eat("(") {
                    return Err(self.err("expected '(' after sqrt"));
                }
                self.skip_ws();
                let n = self.parse_uint()?;
                if n == 0 {
                    return Err(Error::ZeroRadicand);
                }
                self.skip_ws();
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                coeff = &coeff * &ExactScalar::sqrt(n)?;
            } else if self.eat("l") {
                if self.eat("^") {
                    degree += self.parse_uint()? as usize;
                } else {
                    degree += 1;
                }
            } else if self
                .rest()
                .chars()
                .next()
                .map_or(false, |c| c.is_ascii_digit())
            {
                let q = self.parse_rational()?;
                coeff = coeff.scale(&q);
            } else {
                return Err(self.err("expected a factor (rational, sqrt(N), or l)"));
            }
            self.skip_ws();
            if !self.eat("*") {
                break;
            }
        }
        Ok(Poly::monomial(coeff, degree))
    }

    fn parse_uint(&mut self) -> Result<u64> {
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("integer out of range"))
    }

    fn parse_rational(&mut self) -> Result<num_rational::BigRational> {
        let n = self.parse_uint()?;
        self.skip_ws();
        if self.eat("/") {
            self.skip_ws();
            let d = self.parse_uint()?;
            if d == 0 {
                return Err(Error::ZeroDenominator);
            }
            Ok(num_rational::BigRational::new(n.into(), d.into()))
        } else {
            Ok(num_rational::BigRational::from_integer(n.into()))
        }
    }
}

/// The Kronecker pencil λW + uvᵗ: entry (i,j) is `wᵢⱼ·λ + uᵢvⱼ`.
pub fn kronecker_pencil(t: &BlochTriple) -> Mat<Poly> {
    Mat::from_fn(t.m(), t.n(), |i, j| {
        Poly::linear(&t.u()[i] * &t.v()[j], t.w()[(i, j)].clone())
    })
}

/// Smith normal form of a polynomial matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<Poly>,
    pub rank: usize,
    pub shape: (usize, usize),
    /// `(P, Q)` with `P·M·Q` equal to the embedded diagonal, when requested.
    pub transforms: Option<(Mat<Poly>, Mat<Poly>)>,
}

impl SmithForm {
    /// The diagonal embedded in the ambient shape.
    pub fn embedded(&self) -> Mat<Poly> {
        let mut m = Mat::<Poly>::zeros(self.shape.0, self.shape.1);
        for (k, d) in self.diagonal.iter().enumerate() {
            m[(k, k)] = d.clone();
        }
        m
    }
}

fn row_sub_mul(a: &mut Mat<Poly>, r: usize, t: usize, q: &Poly) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        let sub = q.mul(&a[(t, j)]);
        if !sub.is_zero() {
            a[(r, j)] = a[(r, j)].sub(&sub);
        }
    }
}

fn col_sub_mul(a: &mut Mat<Poly>, c: usize, t: usize, q: &Poly) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let sub = q.mul(&a[(i, t)]);
        if !sub.is_zero() {
            a[(i, c)] = a[(i, c)].sub(&sub);
        }
    }
}

fn row_add(a: &mut Mat<Poly>, dst: usize, src: usize) {
    for j in 0..a.cols() {
        a[(dst, j)] = a[(dst, j)].add(&a[(src, j)]);
    }
}

/// Minimal-degree nonzero pivot in the trailing submatrix, ties broken by
/// smallest (row, col).
fn select_pivot(a: &Mat<Poly>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if let Some(d) = a[(i, j)].degree() {
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Elimination to Smith normal form over K[λ]. Diagonal entries come out
/// monic and form a divisibility chain. When `keep_transforms` is set, the
/// accumulated `P`, `Q` satisfy `P·M·Q = S` with constant nonzero
/// determinants.
pub fn smith_normal_form(m: &Mat<Poly>, keep_transforms: bool) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut p = keep_transforms.then(|| Mat::<Poly>::identity(rows));
    let mut q = keep_transforms.then(|| Mat::<Poly>::identity(cols));
    let mut t = 0;

    while t < rows.min(cols) {
        let Some((pi, pj)) = select_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(q) = q.as_mut() {
            q.swap_cols(t, pj);
        }

        'reduce: loop {
            // clear column t
            loop {
                let mut swapped = false;
                for r in (t + 1)..rows {
                    if a[(r, t)].is_zero() {
                        continue;
                    }
                    let (quot, rem) = poly_divmod(&a[(r, t)], &a[(t, t)]).expect("nonzero pivot");
                    row_sub_mul(&mut a, r, t, &quot);
                    if let Some(p) = p.as_mut() {
                        row_sub_mul(p, r, t, &quot);
                    }
                    if !rem.is_zero() {
                        a.swap_rows(r, t);
                        if let Some(p) = p.as_mut() {
                            p.swap_rows(r, t);
                        }
                        swapped = true;
                    }
                }
                if !swapped {
                    break;
                }
            }
            // clear row t; a column swap may dirty the column again
            let mut dirtied_column = false;
            loop {
                let mut swapped = false;
                for c in (t + 1)..cols {
                    if a[(t, c)].is_zero() {
                        continue;
                    }
                    let (quot, rem) = poly_divmod(&a[(t, c)], &a[(t, t)]).expect("nonzero pivot");
                    col_sub_mul(&mut a, c, t, &quot);
                    if let Some(q) = q.as_mut() {
                        col_sub_mul(q, c, t, &quot);
                    }
                    if !rem.is_zero() {
                        a.swap_cols(c, t);
                        if let Some(q) = q.as_mut() {
                            q.swap_cols(c, t);
                        }
                        swapped = true;
                        dirtied_column = true;
                    }
                }
                if !swapped {
                    break;
                }
            }
            if dirtied_column {
                continue 'reduce;
            }
            // pivot row and column are clear; force divisibility of the
            // remaining submatrix by the pivot
            let mut fixed = false;
            'sweep: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    let (_, rem) = poly_divmod(&a[(i, j)], &a[(t, t)]).expect("nonzero pivot");
                    if !rem.is_zero() {
                        row_add(&mut a, t, i);
                        if let Some(p) = p.as_mut() {
                            row_add(p, t, i);
                        }
                        fixed = true;
                        break 'sweep;
                    }
                }
            }
            if !fixed {
                break 'reduce;
            }
        }
        t += 1;
    }

    // monic normalization by row scaling
    let mut diagonal = Vec::with_capacity(t);
    for k in 0..t {
        let lc = a[(k, k)].leading().expect("pivot nonzero").clone();
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let scale = Poly::constant(lc_inv);
        for j in 0..cols {
            a[(k, j)] = a[(k, j)].mul(&scale);
        }
        if let Some(p) = p.as_mut() {
            for j in 0..rows {
                p[(k, j)] = p[(k, j)].mul(&scale);
            }
        }
        diagonal.push(a[(k, k)].clone());
    }

    SmithForm {
        diagonal,
        rank: t,
        shape: (rows, cols),
        transforms: p.zip(q),
    }
}

/// Necessary-condition check: monic Smith diagonals of the two pencils
/// must agree.
pub fn snf_check(t1: &BlochTriple, t2: &BlochTriple, backend: &Backend) -> Result<Verdict> {
    if !t1.same_shape(t2) {
        return dim_mismatch("snf_check requires equal (m, n)".to_string());
    }
    let s1 = smith_normal_form(&kronecker_pencil(t1), false);
    let s2 = smith_normal_form(&kronecker_pencil(t2), false);
    let name = "snf";
    let k = s1.diagonal.len().max(s2.diagonal.len());
    for idx in 0..k {
        let lhs = s1.diagonal.get(idx);
        let rhs = s2.diagonal.get(idx);
        let equal = match (lhs, rhs) {
            (Some(a), Some(b)) => poly_eq(a, b, backend),
            _ => false,
        };
        if !equal {
            return Ok(Verdict::new(
                name,
                Outcome::Inequivalent(Witness::SmithDiagonal {
                    index: idx,
                    lhs: lhs.map_or("<absent>".to_string(), Poly::to_string),
                    rhs: rhs.map_or("<absent>".to_string(), Poly::to_string),
                }),
                format!("Smith diagonals differ at index {idx}"),
            ));
        }
    }
    Ok(Verdict::new(
        name,
        Outcome::Consistent { bound: None },
        format!(
            "identical monic Smith diagonal of length {} (necessary condition)",
            s1.rank
        ),
    ))
}

pub(crate) fn poly_eq(a: &Poly, b: &Poly, backend: &Backend) -> bool {
    match backend {
        Backend::Exact => a == b,
        Backend::Float(_) => {
            let n = a.coeffs().len().max(b.coeffs().len());
            (0..n).all(|k| backend.scalar_eq(&a.coeff(k), &b.coeff(k)))
        }
    }
}

/// Verifies `O₁XO₂ᵗ = X′` and `O₁YO₂ᵗ = Y′` jointly through the pencil
/// specializations λ = 0 and λ = 1.
pub fn pencil_split_check(
    x: &Mat<ExactScalar>,
    x_prime: &Mat<ExactScalar>,
    y: &Mat<ExactScalar>,
    y_prime: &Mat<ExactScalar>,
    o1: &crate::adjoint::OrthogonalWitness,
    o2: &crate::adjoint::OrthogonalWitness,
    backend: &Backend,
) -> Result<bool> {
    let shape_ok = x.rows() == y.rows()
        && x.cols() == y.cols()
        && x_prime.rows() == x.rows()
        && x_prime.cols() == x.cols()
        && y_prime.rows() == y.rows()
        && y_prime.cols() == y.cols()
        && o1.size() == x.rows()
        && o2.size() == x.cols();
    if !shape_ok {
        return dim_mismatch("pencil_split_check shapes are incompatible".to_string());
    }
    let conj = |m: &Mat<ExactScalar>| o1.entries().matmul(m).matmul(&o2.entries().transpose());
    let eq = |a: &Mat<ExactScalar>, b: &Mat<ExactScalar>| {
        a.entries().all(|(i, j, v)| backend.scalar_eq(v, &b[(i, j)]))
    };
    // λ = 0 gives the X identity; λ = 1 gives X + Y, whose difference is Y.
    let at_zero = eq(&conj(x), x_prime);
    let at_one = eq(&conj(&x.add(y)), &x_prime.add(y_prime));
    Ok(at_zero && at_one)
}

/// Monic gcd of all k×k minors; the determinantal-divisor oracle used to
/// cross-check the elimination.
pub fn determinantal_divisor(m: &Mat<Poly>, k: usize) -> Poly {
    assert!(k >= 1);
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    let mut acc = Poly::zero();
    for rsel in combinations(&rows, k) {
        for csel in combinations(&cols, k) {
            let sub = Mat::from_fn(k, k, |i, j| m[(rsel[i], csel[j])].clone());
            let d = det_poly(&sub);
            if !d.is_zero() {
                acc = poly_gcd(&acc, &d);
                if acc.degree() == Some(0) {
                    return Poly::one();
                }
            }
        }
    }
    acc.monic()
}

/// Division-free determinant of a polynomial matrix (Laplace expansion with
/// column-subset memoization; fine for the small sizes used here).
pub fn det_poly(m: &Mat<Poly>) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut memo: std::collections::HashMap<u32, Poly> = std::collections::HashMap::new();
    det_poly_rec(m, 0, (1u32 << n) - 1, &mut memo)
}

fn det_poly_rec(
    m: &Mat<Poly>,
    row: usize,
    colmask: u32,
    memo: &mut std::collections::HashMap<u32, Poly>,
) -> Poly {
    if colmask == 0 {
        return Poly::one();
    }
    if let Some(hit) = memo.get(&colmask) {
        return hit.clone();
    }
    let mut acc = Poly::zero();
    let mut sign = false;
    for j in 0..m.cols() {
        if colmask & (1 << j) == 0 {
            continue;
        }
        if !m[(row, j)].is_zero() {
            let sub = det_poly_rec(m, row + 1, colmask & !(1 << j), memo);
            let term = m[(row, j)].mul(&sub);
            acc = if sign { acc.sub(&term) } else { acc.add(&term) };
        }
        sign = !sign;
    }
    memo.insert(colmask, acc.clone());
    acc
}

pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[idx + 1..], k - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// SNF via the determinantal-divisor formula dₖ = Δₖ/Δₖ₋₁ — an independent
/// oracle for [`smith_normal_form`].
pub fn smith_diagonal_by_minors(m: &Mat<Poly>) -> Vec<Poly> {
    let max_k = m.rows().min(m.cols());
    let mut diagonal = Vec::new();
    let mut prev = Poly::one();
    for k in 1..=max_k {
        let delta = determinantal_divisor(m, k);
        if delta.is_zero() {
            break;
        }
        let (q, r) = poly_divmod(&delta, &prev).expect("Δₖ₋₁ divides Δₖ");
        assert!(r.is_zero(), "determinantal divisors violate divisibility");
        diagonal.push(q.monic());
        prev = delta;
    }
    diagonal
}
