//! Homogeneous forms with exact rational coefficients and variance tracking.
//!
//! A [`Form`] is a sparse homogeneous polynomial. Its `variance` records
//! which side of the pairing it lives on: `Primal` forms are polynomials in
//! `x0..x9` (elements of S^•V, functions on V̌), `Dual` forms are
//! polynomials in `y0..y9` (elements of S^•V̌, functions on V). The polar
//! pairing is only defined between opposite variances and the tag is
//! enforced everywhere, so the two sides cannot be confused silently.
//!
//! All values are immutable; every operation is a pure function.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{factorial, format_scalar, Scalar};

/// Which side of the polar pairing a form lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    /// Element of S^•V; written in the variables `x0..x9`.
    Primal,
    /// Element of S^•V̌; written in the variables `y0..y9`.
    Dual,
}

impl Variance {
    pub fn opposite(self) -> Variance {
        match self {
            Variance::Primal => Variance::Dual,
            Variance::Dual => Variance::Primal,
        }
    }

    /// Variable letter used by the canonical grammar.
    pub fn letter(self) -> char {
        match self {
            Variance::Primal => 'x',
            Variance::Dual => 'y',
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variance::Primal => write!(f, "primal"),
            Variance::Dual => write!(f, "dual"),
        }
    }
}

/// Exponent vector of a monomial. Total degree is the sum of entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn constant(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    /// The monomial x_i.
    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if b > a {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// α! = Π αᵢ!
    pub fn factorial_weight(&self) -> BigInt {
        self.exps.iter().map(|&e| factorial(e)).product()
    }

    /// Π αᵢ·(αᵢ−1)···(αᵢ−βᵢ+1); zero unless β divides α.
    pub fn falling_weight(&self, beta: &Monomial) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.exps.iter().zip(&beta.exps) {
            acc *= crate::scalar::falling(a, b);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// multinomial(deg; α) = deg! / Π αᵢ!
    pub fn multinomial(&self) -> BigInt {
        factorial(self.degree()) / self.factorial_weight()
    }
}

// Canonical order: by total degree, then x0-heavy monomials first within a
// degree (graded-lexicographic with x0 > x1 > …). BTreeMap iteration and
// `monomial_basis` both follow it, so serialization is deterministic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree `degree`, in
/// canonical order.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_basis(&mut out, &mut current, 0, degree);
    out
}

fn fill_basis(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_basis(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Errors from form construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormError {
    VarianceMismatch { left: Variance, right: Variance },
    ArityMismatch { left: usize, right: usize },
    DegreeMismatch { left: u32, right: u32 },
    NotHomogeneous { expected: u32, found: u32 },
    WrongDegree { expected: u32, found: u32 },
    ZeroLinearForm,
    EmptyPoint,
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::VarianceMismatch { left, right } => {
                write!(f, "variance mismatch: {left} vs {right}")
            }
            FormError::ArityMismatch { left, right } => {
                write!(f, "arity mismatch: {left} variables vs {right}")
            }
            FormError::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            FormError::NotHomogeneous { expected, found } => {
                write!(f, "mixed-degree terms: expected degree {expected}, found {found}")
            }
            FormError::WrongDegree { expected, found } => {
                write!(f, "wrong degree: expected {expected}, found {found}")
            }
            FormError::ZeroLinearForm => write!(f, "linear form must have a nonzero coefficient"),
            FormError::EmptyPoint => write!(f, "point must have at least one coordinate"),
        }
    }
}

impl std::error::Error for FormError {}

/// A sparse homogeneous form. Zero coefficients are never stored, and the
/// zero form is canonical: empty coefficient map and degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    degree: u32,
    variance: Variance,
    coeffs: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero(nvars: usize, variance: Variance) -> Form {
        Form {
            nvars,
            degree: 0,
            variance,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, variance: Variance, c: Scalar) -> Form {
        let mut f = Form::zero(nvars, variance);
        if !c.is_zero() {
            f.coeffs.insert(Monomial::constant(nvars), c);
        }
        f
    }

    /// Build a form from monomial/coefficient pairs. All monomials must
    /// have the same arity and total degree; zero coefficients are dropped
    /// after accumulation.
    pub fn from_terms<I>(nvars: usize, variance: Variance, terms: I) -> Result<Form, FormError>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut coeffs: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (mono, c) in terms {
            if mono.nvars() != nvars {
                return Err(FormError::ArityMismatch {
                    left: nvars,
                    right: mono.nvars(),
                });
            }
            let d = mono.degree();
            match degree {
                None => degree = Some(d),
                Some(expected) if expected != d => {
                    return Err(FormError::NotHomogeneous { expected, found: d })
                }
                _ => {}
            }
            let entry = coeffs.entry(mono).or_insert_with(Scalar::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let degree = if coeffs.is_empty() { 0 } else { degree.unwrap_or(0) };
        Ok(Form {
            nvars,
            degree,
            variance,
            coeffs,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.coeffs.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient vector with respect to an explicit basis.
    pub fn coeff_vec(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    fn check_compatible(&self, other: &Form) -> Result<(), FormError> {
        if self.variance != other.variance {
            return Err(FormError::VarianceMismatch {
                left: self.variance,
                right: other.variance,
            });
        }
        if self.nvars != other.nvars {
            return Err(FormError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Exact sum. The zero form is compatible with any degree.
    pub fn add(&self, other: &Form) -> Result<Form, FormError> {
        self.check_compatible(other)?;
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(FormError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut coeffs = self.coeffs.clone();
        for (mono, c) in &other.coeffs {
            let entry = coeffs.entry(mono.clone()).or_insert_with(Scalar::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let degree = if coeffs.is_empty() {
            0
        } else {
            self.degree.max(other.degree)
        };
        Ok(Form {
            nvars: self.nvars,
            degree,
            variance: self.variance,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Form) -> Result<Form, FormError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.variance);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            variance: self.variance,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Exact product; degree is the sum of the degrees (the zero form
    /// absorbs everything).
    pub fn mul(&self, other: &Form) -> Result<Form, FormError> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Form::zero(self.nvars, self.variance));
        }
        let mut coeffs: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let m = ma.mul(mb);
                let entry = coeffs.entry(m).or_insert_with(Scalar::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Form {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            variance: self.variance,
            coeffs,
        })
    }

    /// Substitute the coordinates of `point` for the variables. The point
    /// lives in the space of opposite variance; here it is just a
    /// coordinate vector of matching arity.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, FormError> {
        if point.len() != self.nvars {
            return Err(FormError::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut total = Scalar::zero();
        for (mono, c) in &self.coeffs {
            let mut term = c.clone();
            for (coord, &e) in point.iter().zip(mono.exps()) {
                if e > 0 {
                    term *= pow_scalar(coord, e);
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_form(self))
    }
}

fn pow_scalar(base: &Scalar, e: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// A form of degree exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(Form);

impl LinearForm {
    /// Linear form Σ cᵢ·vᵢ from its coefficient vector; at least one
    /// coefficient must be nonzero.
    pub fn from_coeffs(variance: Variance, coeffs: &[Scalar]) -> Result<LinearForm, FormError> {
        if coeffs.is_empty() {
            return Err(FormError::EmptyPoint);
        }
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(FormError::ZeroLinearForm);
        }
        let nvars = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(nvars, i), c.clone()));
        Ok(LinearForm(Form::from_terms(nvars, variance, terms)?))
    }

    pub fn from_form(form: Form) -> Result<LinearForm, FormError> {
        if form.degree() != 1 || form.is_zero() {
            return Err(FormError::WrongDegree {
                expected: 1,
                found: form.degree(),
            });
        }
        Ok(LinearForm(form))
    }

    pub fn form(&self) -> &Form {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn variance(&self) -> Variance {
        self.0.variance()
    }

    /// Dense coefficient vector.
    pub fn coeffs(&self) -> Vec<Scalar> {
        let n = self.0.nvars();
        (0..n)
            .map(|i| self.0.coeff(&Monomial::var(n, i)))
            .collect()
    }

    /// H^m by multinomial expansion.
    pub fn power(&self, m: u32) -> Form {
        let n = self.0.nvars();
        if m == 0 {
            return Form::constant(n, self.0.variance(), Scalar::one());
        }
        let h = self.coeffs();
        let mut terms = Vec::new();
        for mono in monomial_basis(n, m) {
            let mut coeff = Scalar::from(mono.multinomial());
            for (c, &e) in h.iter().zip(mono.exps()) {
                if e > 0 {
                    if c.is_zero() {
                        coeff = Scalar::zero();
                        break;
                    }
                    coeff *= pow_scalar(c, e);
                }
            }
            if !coeff.is_zero() {
                terms.push((mono, coeff));
            }
        }
        Form::from_terms(n, self.0.variance(), terms).expect("homogeneous by construction")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical serialization: terms in graded-lexicographic order, `^` for
/// exponents > 1, coefficients ±1 elided, no whitespace. `parse` inverts
/// this exactly.
pub fn format_form(form: &Form) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let letter = form.variance().letter();
    let mut out = String::new();
    for (i, (mono, coeff)) in form.terms().enumerate() {
        let negative = coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let abs = coeff.abs();
        let constant = mono.degree() == 0;
        if constant {
            out.push_str(&format_scalar(&abs));
            continue;
        }
        let mut wrote_coeff = false;
        if !abs.is_one() {
            out.push_str(&format_scalar(&abs));
            wrote_coeff = true;
        }
        let mut first_var = true;
        for (v, &e) in mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote_coeff || !first_var {
                out.push('*');
            }
            first_var = false;
            wrote_coeff = true;
            out.push(letter);
            out.push_str(&v.to_string());
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

/// Parse error with the byte offset where parsing failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
    variance: Variance,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError {
            position: start,
            message: "integer out of range".to_string(),
        })
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let n = self.digits()?;
        u32::try_from(&n).map_err(|_| ParseError {
            position: self.pos,
            message: "exponent out of range".to_string(),
        })
    }

    /// rational := ['-'] digits ['/' digits]
    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let mut numer = self.digits()?;
        if negative {
            numer = -numer;
        }
        let denom = if self.peek() == Some(b'/') {
            self.bump();
            let start = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(ParseError {
                    position: start,
                    message: "zero denominator".to_string(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        Ok(Scalar::new(numer, denom))
    }

    /// var := letter digit, where letter matches the declared variance.
    fn variable(&mut self) -> Result<usize, ParseError> {
        let letter = self.variance.letter() as u8;
        match self.peek() {
            Some(b) if b == letter => {
                self.bump();
            }
            Some(b) if b == self.variance.opposite().letter() as u8 => {
                return self.err(format!(
                    "variable of the wrong variance: expected `{}`",
                    letter as char
                ));
            }
            _ => return self.err(format!("expected variable `{}N`", letter as char)),
        }
        let pos = self.pos;
        match self.bump() {
            Some(d) if d.is_ascii_digit() => {
                let index = (d - b'0') as usize;
                if index >= self.nvars {
                    return Err(ParseError {
                        position: pos,
                        message: format!(
                            "variable index {} out of range (nvars = {})",
                            index, self.nvars
                        ),
                    });
                }
                Ok(index)
            }
            _ => Err(ParseError {
                position: pos,
                message: "expected single-digit variable index".to_string(),
            }),
        }
    }

    /// powers := var ('^' int)? ('*' var ('^' int)?)*
    fn powers(&mut self) -> Result<Monomial, ParseError> {
        let mut exps = vec![0u32; self.nvars];
        loop {
            let v = self.variable()?;
            let e = if self.peek() == Some(b'^') {
                self.bump();
                self.small_int()?
            } else {
                1
            };
            exps[v] += e;
            if self.peek() == Some(b'*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(Monomial::new(exps))
    }

    /// term := rational ['*' powers] | powers
    fn term(&mut self) -> Result<(Monomial, Scalar), ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'-' => {
                let c = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.bump();
                    let mono = self.powers()?;
                    Ok((mono, c))
                } else {
                    Ok((Monomial::constant(self.nvars), c))
                }
            }
            _ => {
                let mono = self.powers()?;
                Ok((mono, Scalar::one()))
            }
        }
    }

    fn form(&mut self) -> Result<Form, ParseError> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        let leading_negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let (mono, mut c) = self.term()?;
        if leading_negative {
            c = -c;
        }
        terms.push((mono, c));
        while let Some(op) = self.peek() {
            let sign = match op {
                b'+' => Scalar::one(),
                b'-' => -Scalar::one(),
                _ => return self.err(format!("unexpected character `{}`", op as char)),
            };
            self.bump();
            let (mono, c) = self.term()?;
            terms.push((mono, c * sign));
        }
        let degree0 = terms[0].0.degree();
        for (mono, _) in &terms {
            if mono.degree() != degree0 {
                return Err(ParseError {
                    position: self.pos,
                    message: FormError::NotHomogeneous {
                        expected: degree0,
                        found: mono.degree(),
                    }
                    .to_string(),
                });
            }
        }
        // "0" parses to the zero form; any all-cancelling input normalizes
        // the same way.
        Form::from_terms(self.nvars, self.variance, terms).map_err(|e| ParseError {
            position: self.pos,
            message: e.to_string(),
        })
    }
}

/// Parse the canonical grammar:
///
/// ```text
/// form     := ['-'] term (('+'|'-') term)*
/// term     := rational ['*' powers] | powers
/// powers   := var ('^' int)? ('*' var ('^' int)?)*
/// rational := int ['/' posint]
/// ```
///
/// Primal forms use `x0..x9`, dual forms `y0..y9`. Whitespace between
/// tokens is accepted on input and never produced on output.
pub fn parse_form(text: &str, nvars: usize, variance: Variance) -> Result<Form, ParseError> {
    if nvars == 0 || nvars > 10 {
        return Err(ParseError {
            position: 0,
            message: format!("nvars must be between 1 and 10, got {nvars}"),
        });
    }
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        nvars,
        variance,
    };
    let form = parser.form()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return parser.err("trailing input");
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, scalar};

    fn q(text: &str) -> Form {
        parse_form(text, 2, Variance::Primal).unwrap()
    }

    #[test]
    fn parse_quartic_two_terms() {
        let f = q("x0^4 + 2*x0^3*x1");
        assert_eq!(f.degree(), 4);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Monomial::new(vec![3, 1])), scalar(2));
    }

    #[test]
    fn parse_zero() {
        let f = q("0");
        assert!(f.is_zero());
        assert_eq!(f.degree(), 0);
        assert_eq!(format_form(&f), "0");
    }

    #[test]
    fn parse_dual_rational_coeff() {
        let f = parse_form("1/2*y0^2*y1^2", 2, Variance::Dual).unwrap();
        assert_eq!(f.coeff(&Monomial::new(vec![2, 2])), ratio(1, 2));
        assert_eq!(f.variance(), Variance::Dual);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_form("x2", 2, Variance::Primal).is_err());
        assert!(parse_form("y0", 2, Variance::Primal).is_err());
        assert!(parse_form("x0^2+x1", 2, Variance::Primal).is_err());
        assert!(parse_form("x0+", 2, Variance::Primal).is_err());
        assert!(parse_form("1/0", 2, Variance::Primal).is_err());
        let err = parse_form("x0*?", 2, Variance::Primal).unwrap_err();
        assert!(err.position > 0);
    }

    #[test]
    fn leading_minus() {
        let f = q("-x0^2+x0*x1");
        assert_eq!(f.coeff(&Monomial::new(vec![2, 0])), scalar(-1));
        assert_eq!(format_form(&f), "-x0^2+x0*x1");
    }

    #[test]
    fn format_orders_graded_lex() {
        let f = q("x1^4+x0^4+2*x0*x1^3+6*x0^2*x1^2");
        assert_eq!(format_form(&f), "x0^4+6*x0^2*x1^2+2*x0*x1^3+x1^4");
    }

    #[test]
    fn multiply_difference_of_squares() {
        let a = q("x0+x1");
        let b = q("x0-x1");
        assert_eq!(a.mul(&b).unwrap(), q("x0^2-x1^2"));
    }

    #[test]
    fn add_cancels_to_zero() {
        let f = q("x0^3+2*x0*x1^2");
        let sum = f.add(&f.scale(&scalar(-1))).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum, Form::zero(2, Variance::Primal));
    }

    #[test]
    fn multiply_monomials() {
        let a = q("x0^2");
        let b = q("x1^2");
        assert_eq!(a.mul(&b).unwrap(), q("x0^2*x1^2"));
    }

    #[test]
    fn power_binomial_square() {
        let h = LinearForm::from_coeffs(Variance::Primal, &[scalar(1), scalar(1)]).unwrap();
        assert_eq!(h.power(2), q("x0^2+2*x0*x1+x1^2"));
        let x = LinearForm::from_coeffs(Variance::Primal, &[scalar(1), scalar(0)]).unwrap();
        assert_eq!(x.power(4), q("x0^4"));
    }

    #[test]
    fn power_matches_repeated_multiply() {
        let h = LinearForm::from_coeffs(Variance::Primal, &[scalar(1), scalar(-1)]).unwrap();
        let expected = q("x0^4-4*x0^3*x1+6*x0^2*x1^2-4*x0*x1^3+x1^4");
        assert_eq!(h.power(4), expected);
        let mut by_mul = Form::constant(2, Variance::Primal, scalar(1));
        for _ in 0..4 {
            by_mul = by_mul.mul(h.form()).unwrap();
        }
        assert_eq!(by_mul, expected);
    }

    #[test]
    fn evaluate_cases() {
        let f = q("x0^2+x1^2");
        assert_eq!(f.evaluate(&[scalar(1), scalar(1)]).unwrap(), scalar(2));
        let zero = Form::zero(2, Variance::Primal);
        assert_eq!(zero.evaluate(&[scalar(7), scalar(-3)]).unwrap(), scalar(0));
        // direct substitution: 1 - 2 - 2 + 1 = -2 (the conjugacy diagonal
        // -24 = 12·F(1,-1) pins the same value)
        let g = q("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        assert_eq!(g.evaluate(&[scalar(1), scalar(-1)]).unwrap(), scalar(-2));
        assert!(f.evaluate(&[scalar(1)]).is_err());
    }

    #[test]
    fn variance_is_enforced() {
        let f = q("x0^2");
        let g = parse_form("y0^2", 2, Variance::Dual).unwrap();
        assert!(matches!(
            f.add(&g),
            Err(FormError::VarianceMismatch { .. })
        ));
        assert!(f.mul(&g).is_err());
    }

    #[test]
    fn basis_order_matches_canonical_iteration() {
        let basis = monomial_basis(3, 2);
        let exps: Vec<_> = basis.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
        let mut sorted = basis.clone();
        sorted.sort();
        assert_eq!(sorted, basis);
    }
}
