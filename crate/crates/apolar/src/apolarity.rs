//! The differential pairing between S^•V̌ and S^•V.
//!
//! A form G of one variance acts on a form F of the opposite variance by
//! substituting ∂/∂(i-th variable) for the i-th variable of G. The pairing
//! carries no multinomial rescaling: ⟨y^α, x^β⟩ = α!·δ_{αβ}, so
//! ⟨Ψ, H^m⟩ = m!·Ψ(h) for a linear form H with coefficient vector h, and
//! the diagonal of the conjugacy biform of a quartic is 12·F̌.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactla::RationalMatrix;
use crate::forms::{monomial_basis, Form, FormError, LinearForm, Monomial, Variance};
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApolarityError {
    Form(FormError),
    DegreeExceeds { operator: u32, target: u32 },
    UnequalDegrees { left: u32, right: u32 },
    OddDegree { degree: u32 },
    NotPrimal,
    NotQuartic { degree: u32 },
    ZeroPoint,
    BadPoint { expected: usize, found: usize },
}

impl fmt::Display for ApolarityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApolarityError::Form(e) => e.fmt(f),
            ApolarityError::DegreeExceeds { operator, target } => {
                write!(f, "operator degree {operator} exceeds target degree {target}")
            }
            ApolarityError::UnequalDegrees { left, right } => {
                write!(f, "full pairing needs equal degrees, got {left} and {right}")
            }
            ApolarityError::OddDegree { degree } => {
                write!(f, "non-degeneracy is defined for even degree, got {degree}")
            }
            ApolarityError::NotPrimal => write!(f, "expected a primal form"),
            ApolarityError::NotQuartic { degree } => {
                write!(f, "expected a quartic, got degree {degree}")
            }
            ApolarityError::ZeroPoint => write!(f, "point must be a nonzero coordinate vector"),
            ApolarityError::BadPoint { expected, found } => {
                write!(f, "point has {found} coordinates, expected {expected}")
            }
        }
    }
}

impl std::error::Error for ApolarityError {}

impl From<FormError> for ApolarityError {
    fn from(e: FormError) -> Self {
        ApolarityError::Form(e)
    }
}

fn check_opposite(g: &Form, f: &Form) -> Result<(), ApolarityError> {
    if g.variance() == f.variance() {
        return Err(FormError::VarianceMismatch {
            left: g.variance(),
            right: f.variance(),
        }
        .into());
    }
    if g.nvars() != f.nvars() {
        return Err(FormError::ArityMismatch {
            left: g.nvars(),
            right: f.nvars(),
        }
        .into());
    }
    Ok(())
}

/// The polar P_G(F) = G(∂)F, of degree deg F − deg G and the variance of F.
pub fn polarize(g: &Form, f: &Form) -> Result<Form, ApolarityError> {
    check_opposite(g, f)?;
    if g.is_zero() || f.is_zero() {
        return Ok(Form::zero(f.nvars(), f.variance()));
    }
    if g.degree() > f.degree() {
        return Err(ApolarityError::DegreeExceeds {
            operator: g.degree(),
            target: f.degree(),
        });
    }
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    for (beta, gc) in g.terms() {
        for (gamma, fc) in f.terms() {
            if let Some(diff) = gamma.checked_sub(beta) {
                let weight = gamma.falling_weight(beta);
                if !weight.is_zero() {
                    terms.push((diff, gc * fc * Scalar::from(weight)));
                }
            }
        }
    }
    Ok(Form::from_terms(f.nvars(), f.variance(), terms)?)
}

/// Full-degree pairing ⟨G, F⟩ = G(∂)F for forms of equal degree and
/// opposite variance. Pairing anything with the zero form gives 0.
pub fn apolar_pair(g: &Form, f: &Form) -> Result<Scalar, ApolarityError> {
    check_opposite(g, f)?;
    if g.is_zero() || f.is_zero() {
        return Ok(Scalar::zero());
    }
    if g.degree() != f.degree() {
        return Err(ApolarityError::UnequalDegrees {
            left: g.degree(),
            right: f.degree(),
        });
    }
    let mut total = Scalar::zero();
    for (alpha, gc) in g.terms() {
        let fc = f.coeff(alpha);
        if !fc.is_zero() {
            total += gc * fc * Scalar::from(alpha.factorial_weight());
        }
    }
    Ok(total)
}

/// Matrix of the operator Ψ ↦ P_Ψ(F) from degree-k forms of the opposite
/// variance to degree-(deg F − k) forms of F's variance. Both bases are in
/// canonical graded-lexicographic order, and the column for a source
/// monomial Ψ is the coefficient vector of Ψ(∂)F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalecticantMap {
    pub source_degree: u32,
    pub target_degree: u32,
    pub source_variance: Variance,
    pub target_variance: Variance,
    pub source_basis: Vec<Monomial>,
    pub target_basis: Vec<Monomial>,
    pub matrix: RationalMatrix,
}

impl CatalecticantMap {
    pub fn is_square(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// The degree-k catalecticant of F. For F of even degree 2k the middle map
/// (k = deg F / 2) is square.
pub fn catalecticant(f: &Form, k: u32) -> Result<CatalecticantMap, ApolarityError> {
    if k > f.degree() && !f.is_zero() {
        return Err(ApolarityError::DegreeExceeds {
            operator: k,
            target: f.degree(),
        });
    }
    let m = if f.is_zero() { k } else { f.degree() };
    let source_basis = monomial_basis(f.nvars(), k);
    let target_basis = monomial_basis(f.nvars(), m - k);
    let mut matrix = RationalMatrix::zeros(target_basis.len(), source_basis.len());
    for (col, beta) in source_basis.iter().enumerate() {
        for (row, alpha) in target_basis.iter().enumerate() {
            let gamma = alpha.mul(beta);
            let c = f.coeff(&gamma);
            if !c.is_zero() {
                *matrix.at_mut(row, col) = c * Scalar::from(gamma.falling_weight(beta));
            }
        }
    }
    Ok(CatalecticantMap {
        source_degree: k,
        target_degree: m - k,
        source_variance: f.variance().opposite(),
        target_variance: f.variance(),
        source_basis,
        target_basis,
        matrix,
    })
}

/// Non-degeneracy: the middle catalecticant of an even-degree form is
/// invertible.
pub fn is_nondegenerate(f: &Form) -> Result<bool, ApolarityError> {
    if f.degree() % 2 != 0 {
        return Err(ApolarityError::OddDegree { degree: f.degree() });
    }
    if f.is_zero() {
        return Ok(false);
    }
    let cat = catalecticant(f, f.degree() / 2)?;
    Ok(cat.rank() == cat.matrix.cols())
}

/// Basis of the degree-k component of the apolar ideal of F: the kernel of
/// the degree-k catalecticant, returned as forms of the opposite variance.
pub fn apolar_component(f: &Form, k: u32) -> Result<Vec<Form>, ApolarityError> {
    let cat = catalecticant(f, k)?;
    let mut out = Vec::new();
    for vec in cat.matrix.kernel_basis() {
        let terms = cat
            .source_basis
            .iter()
            .cloned()
            .zip(vec)
            .filter(|(_, c)| !c.is_zero());
        out.push(Form::from_terms(f.nvars(), cat.source_variance, terms)?);
    }
    Ok(out)
}

fn check_point(f: &Form, q: &[Scalar]) -> Result<(), ApolarityError> {
    if q.len() != f.nvars() {
        return Err(ApolarityError::BadPoint {
            expected: f.nvars(),
            found: q.len(),
        });
    }
    if q.iter().all(Scalar::is_zero) {
        return Err(ApolarityError::ZeroPoint);
    }
    Ok(())
}

fn check_primal_quartic(f_check: &Form) -> Result<(), ApolarityError> {
    if f_check.variance() != Variance::Primal {
        return Err(ApolarityError::NotPrimal);
    }
    if f_check.degree() != 4 && !f_check.is_zero() {
        return Err(ApolarityError::NotQuartic {
            degree: f_check.degree(),
        });
    }
    Ok(())
}

/// The polar quadric D̃_q = P_{H_q²}(F̌), where H_q is the dual linear form
/// with coefficient vector q. Scales by λ² under q ↦ λq.
pub fn polar_quadric(f_check: &Form, q: &[Scalar]) -> Result<Form, ApolarityError> {
    check_primal_quartic(f_check)?;
    check_point(f_check, q)?;
    let h = LinearForm::from_coeffs(Variance::Dual, q)?;
    polarize(&h.power(2), f_check)
}

/// The conjugacy value D̃_p(q). Symmetric in p and q, and equal to
/// 12·F̌(p) on the diagonal.
pub fn conjugacy(f_check: &Form, p: &[Scalar], q: &[Scalar]) -> Result<Scalar, ApolarityError> {
    let quadric = polar_quadric(f_check, p)?;
    check_point(f_check, q)?;
    Ok(quadric.evaluate(q)?)
}

/// The symmetric (2,2)-biform C(p,q) = D̃_p(q) of a primal quartic,
/// expanded symbolically: keys are (p-monomial, q-monomial) pairs of
/// degree (2,2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiForm {
    nvars: usize,
    coeffs: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl BiForm {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, p_mono: &Monomial, q_mono: &Monomial) -> Scalar {
        self.coeffs
            .get(&(p_mono.clone(), q_mono.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn evaluate(&self, p: &[Scalar], q: &[Scalar]) -> Result<Scalar, ApolarityError> {
        let eval_mono = |mono: &Monomial, point: &[Scalar]| -> Scalar {
            let mut acc = crate::scalar::scalar(1);
            for (c, &e) in point.iter().zip(mono.exps()) {
                for _ in 0..e {
                    acc *= c;
                }
            }
            acc
        };
        if p.len() != self.nvars || q.len() != self.nvars {
            return Err(ApolarityError::BadPoint {
                expected: self.nvars,
                found: if p.len() != self.nvars { p.len() } else { q.len() },
            });
        }
        let mut total = Scalar::zero();
        for ((pm, qm), c) in &self.coeffs {
            total += c * eval_mono(pm, p) * eval_mono(qm, q);
        }
        Ok(total)
    }

    /// C(p,p) as a primal quartic in p; equals 12·F̌ for the biform of F̌.
    pub fn diagonal(&self) -> Form {
        let terms = self
            .coeffs
            .iter()
            .map(|((pm, qm), c)| (pm.mul(qm), c.clone()));
        Form::from_terms(self.nvars, Variance::Primal, terms)
            .expect("diagonal of a (2,2) biform is homogeneous of degree 4")
    }

    /// The biform is symmetric: C(p,q) = C(q,p) coefficientwise.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|((pm, qm), c)| {
            self.coeffs.get(&(qm.clone(), pm.clone())) == Some(c)
        })
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let write_mono = |out: &mut String, letter: char, mono: &Monomial| {
            for (v, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                out.push('*');
                out.push(letter);
                out.push_str(&v.to_string());
                if e > 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        };
        let mut first = true;
        for ((pm, qm), c) in &self.coeffs {
            let mut term = String::new();
            term.push_str(&format_scalar(c));
            write_mono(&mut term, 'p', pm);
            write_mono(&mut term, 'q', qm);
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if term.starts_with('-') {
                write!(f, "{term}")?;
            } else {
                write!(f, "+{term}")?;
            }
        }
        Ok(())
    }
}

/// Expand the bi-homogenization C(p,q) = Σ_{i,j} q_i q_j (∂_i∂_j F̌)(p) of a
/// primal quartic.
pub fn biform(f_check: &Form) -> Result<BiForm, ApolarityError> {
    check_primal_quartic(f_check)?;
    let n = f_check.nvars();
    let mut coeffs: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let op = Form::from_terms(
                n,
                Variance::Dual,
                [(
                    Monomial::var(n, i).mul(&Monomial::var(n, j)),
                    crate::scalar::scalar(if i == j { 1 } else { 2 }),
                )],
            )?;
            let second = polarize(&op, f_check)?;
            if second.is_zero() {
                continue;
            }
            let q_mono = Monomial::var(n, i).mul(&Monomial::var(n, j));
            for (alpha, c) in second.terms() {
                let entry = coeffs
                    .entry((alpha.clone(), q_mono.clone()))
                    .or_insert_with(Scalar::zero);
                *entry += c;
            }
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(BiForm { nvars: n, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form;
    use crate::scalar::scalar;

    fn primal(text: &str) -> Form {
        parse_form(text, 2, Variance::Primal).unwrap()
    }

    fn dual(text: &str) -> Form {
        parse_form(text, 2, Variance::Dual).unwrap()
    }

    fn pt(coords: &[i64]) -> Vec<Scalar> {
        coords.iter().map(|&c| scalar(c)).collect()
    }

    #[test]
    fn polarize_single_derivative() {
        let f = primal("x0^3*x1");
        let g = dual("y0");
        assert_eq!(polarize(&g, &f).unwrap(), primal("3*x0^2*x1"));
    }

    #[test]
    fn polarize_mixed_second_derivative() {
        let f = primal("x0^2*x1^2");
        let g = dual("y0*y1");
        assert_eq!(polarize(&g, &f).unwrap(), primal("4*x0*x1"));
        // agrees with two successive single derivatives
        let step = polarize(&dual("y1"), &polarize(&dual("y0"), &f).unwrap()).unwrap();
        assert_eq!(step, primal("4*x0*x1"));
    }

    #[test]
    fn polarize_sum_operator() {
        let f = primal("x0^4+x1^4");
        let g = dual("y0^2+y1^2");
        assert_eq!(polarize(&g, &f).unwrap(), primal("12*x0^2+12*x1^2"));
    }

    #[test]
    fn polarize_rejects_bad_degrees_and_variance() {
        let f = primal("x0^2");
        assert!(matches!(
            polarize(&dual("y0^3"), &f),
            Err(ApolarityError::DegreeExceeds { .. })
        ));
        assert!(polarize(&primal("x0"), &f).is_err());
    }

    #[test]
    fn pair_monomials() {
        assert_eq!(apolar_pair(&dual("y0^2"), &primal("x0^2")).unwrap(), scalar(2));
        assert_eq!(apolar_pair(&dual("y0*y1"), &primal("x0^2")).unwrap(), scalar(0));
    }

    #[test]
    fn pair_matches_power_oracle() {
        // ⟨Ψ, H^m⟩ = m!·Ψ(h) with Ψ = (y0+y1)², H = x0+x1: 2!·2² = 8
        let psi = dual("y0^2+2*y0*y1+y1^2");
        let h = primal("x0^2+2*x0*x1+x1^2");
        assert_eq!(apolar_pair(&psi, &h).unwrap(), scalar(8));
    }

    #[test]
    fn pair_is_symmetric_between_variances() {
        let g = dual("y0^2+3*y0*y1");
        let f = primal("x0^2-x0*x1+2*x1^2");
        assert_eq!(
            apolar_pair(&g, &f).unwrap(),
            apolar_pair(&f, &g).unwrap()
        );
    }

    #[test]
    fn middle_catalecticant_worked_example() {
        let f = primal("x0^4+x1^4+x0^2*x1^2");
        let cat = catalecticant(&f, 2).unwrap();
        let expected = RationalMatrix::from_i64(&[&[12, 0, 2], &[0, 4, 0], &[2, 0, 12]]);
        assert_eq!(cat.matrix, expected);
        assert_eq!(cat.matrix.det().unwrap(), scalar(560));
        assert_eq!(
            cat.source_basis,
            vec![
                Monomial::new(vec![2, 0]),
                Monomial::new(vec![1, 1]),
                Monomial::new(vec![0, 2])
            ]
        );
    }

    #[test]
    fn catalecticant_columns_rederive_by_polarize() {
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        let cat = catalecticant(&f, 2).unwrap();
        for (col, beta) in cat.source_basis.iter().enumerate() {
            let psi = Form::from_terms(2, Variance::Dual, [(beta.clone(), scalar(1))]).unwrap();
            let polar = polarize(&psi, &f).unwrap();
            let expected = polar.coeff_vec(&cat.target_basis);
            for (row, want) in expected.iter().enumerate() {
                assert_eq!(cat.matrix.at(row, col), want);
            }
        }
    }

    #[test]
    fn rank_one_for_pure_power() {
        let cat = catalecticant(&primal("x0^4"), 2).unwrap();
        assert_eq!(cat.rank(), 1);
    }

    #[test]
    fn nondegeneracy_cases() {
        assert!(is_nondegenerate(&primal("x0^4+x1^4+x0^2*x1^2")).unwrap());
        assert!(!is_nondegenerate(&primal("x0^4")).unwrap());
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        assert!(is_nondegenerate(&f).unwrap());
        assert_eq!(
            catalecticant(&f, 2).unwrap().matrix.det().unwrap(),
            scalar(-1728)
        );
        assert!(matches!(
            is_nondegenerate(&primal("x0^3")),
            Err(ApolarityError::OddDegree { .. })
        ));
    }

    #[test]
    fn apolar_components() {
        let quintic = primal("x0^5+x1^5");
        let k2 = apolar_component(&quintic, 2).unwrap();
        assert_eq!(k2, vec![dual("y0*y1")]);
        let k1 = apolar_component(&primal("x0^4"), 1).unwrap();
        assert_eq!(k1, vec![dual("y1")]);
        // generic binary quintic: nothing at k=2, one cubic at k=3
        let generic = primal("x0^5+3*x0^4*x1-2*x0^3*x1^2+x0^2*x1^3+7*x0*x1^4-x1^5");
        assert!(apolar_component(&generic, 2).unwrap().is_empty());
        assert_eq!(apolar_component(&generic, 3).unwrap().len(), 1);
    }

    #[test]
    fn polar_quadric_worked_examples() {
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        assert_eq!(
            polar_quadric(&f, &pt(&[1, 0])).unwrap(),
            primal("12*x0^2+12*x0*x1")
        );
        assert!(polar_quadric(&primal("x0^4"), &pt(&[0, 1]))
            .unwrap()
            .is_zero());
        assert_eq!(polar_quadric(&f, &pt(&[1, -1])).unwrap(), primal("24*x0*x1"));
        assert!(matches!(
            polar_quadric(&f, &pt(&[0, 0])),
            Err(ApolarityError::ZeroPoint)
        ));
    }

    #[test]
    fn conjugacy_worked_examples() {
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        assert_eq!(conjugacy(&f, &pt(&[1, 0]), &pt(&[0, 1])).unwrap(), scalar(0));
        assert_eq!(conjugacy(&f, &pt(&[1, 0]), &pt(&[1, 0])).unwrap(), scalar(12));
        assert_eq!(
            conjugacy(&f, &pt(&[0, 1]), &pt(&[1, -1])).unwrap(),
            scalar(0)
        );
    }

    #[test]
    fn conjugacy_scales_quadratically() {
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        let base = conjugacy(&f, &pt(&[2, 3]), &pt(&[1, -2])).unwrap();
        let scaled = conjugacy(&f, &pt(&[2, 3]), &pt(&[3, -6])).unwrap();
        assert_eq!(scaled, base * scalar(9));
    }

    #[test]
    fn biform_pure_power() {
        let b = biform(&primal("x0^4")).unwrap();
        let p2 = Monomial::new(vec![2, 0]);
        assert_eq!(b.coeff(&p2, &p2), scalar(12));
        assert_eq!(b.terms().count(), 1);
    }

    #[test]
    fn biform_worked_example() {
        let f = primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4");
        let b = biform(&f).unwrap();
        assert!(b.is_symmetric());
        // C((s,t),(u,v)) = 12(s²+st)u² + 12(s²+t²)uv + 12(st+t²)v²
        let s2 = Monomial::new(vec![2, 0]);
        let st = Monomial::new(vec![1, 1]);
        let t2 = Monomial::new(vec![0, 2]);
        assert_eq!(b.coeff(&s2, &s2), scalar(12));
        assert_eq!(b.coeff(&st, &s2), scalar(12));
        assert_eq!(b.coeff(&s2, &st), scalar(12));
        assert_eq!(b.coeff(&t2, &st), scalar(12));
        assert_eq!(b.coeff(&st, &t2), scalar(12));
        assert_eq!(b.coeff(&t2, &t2), scalar(12));
        assert_eq!(b.coeff(&t2, &s2), scalar(0));
        // diagonal = 12·F̌
        assert_eq!(b.diagonal(), f.scale(&scalar(12)));
        // matches pointwise conjugacy
        let p = pt(&[3, -2]);
        let q = pt(&[1, 5]);
        assert_eq!(
            b.evaluate(&p, &q).unwrap(),
            conjugacy(&f, &p, &q).unwrap()
        );
    }

    #[test]
    fn adjunction_on_samples() {
        // ⟨G·G′, F⟩ = ⟨G′, P_G(F)⟩
        let f = primal("x0^4+2*x0^3*x1-x0^2*x1^2+5*x0*x1^3+1/2*x1^4");
        let g = dual("y0^2-3*y0*y1");
        let gp = dual("y0*y1+2*y1^2");
        let lhs = apolar_pair(&g.mul(&gp).unwrap(), &f).unwrap();
        let rhs = apolar_pair(&gp, &polarize(&g, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn ternary_generic_quartic_rank_six() {
        let f = parse_form(
            "x0^4+x1^4+x2^4+x0^3*x1+2*x0^2*x1*x2-x1^2*x2^2+3*x0*x1*x2^2+x0*x1^3",
            3,
            Variance::Primal,
        )
        .unwrap();
        let cat = catalecticant(&f, 2).unwrap();
        assert_eq!(cat.matrix.rows(), 6);
        assert_eq!(cat.matrix.cols(), 6);
        assert_eq!(cat.rank(), 6);
    }
}
