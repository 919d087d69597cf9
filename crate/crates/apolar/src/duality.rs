//! Dual quartics and power-sum certificates.
//!
//! A non-degenerate even-degree form F may admit a *dual form* Ω of the
//! opposite variance whose middle catalecticant operator is exactly the
//! inverse of F's. Existence is decided by linear solvability: the operator
//! equation A_Ω = A_F⁻¹ is linear in Ω's coefficients, and the solution is
//! unique when it exists. For quartic dual pairs (F̌, F) the conjugacy
//! values of F̌ govern which point tuples certify a power-sum
//! representation of F, and both directions of that equivalence are
//! checkable here in exact arithmetic.

use std::fmt;

use num_traits::{One, Zero};

use crate::apolarity::{
    catalecticant, conjugacy, is_nondegenerate, polar_quadric, polarize, ApolarityError,
};
use crate::exactla::{LinAlgError, RationalMatrix};
use crate::forms::{monomial_basis, Form, FormError, LinearForm, Variance};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityError {
    Apolarity(ApolarityError),
    LinAlg(LinAlgError),
    /// Middle catalecticant is not invertible; carries its rank.
    Degenerate { rank: usize },
    NotQuartic { degree: u32 },
    /// Composition of the two operator matrices is not κ·identity; carries
    /// the first offending entry.
    CompositionNotScalar { row: usize, col: usize },
    /// The polar-quadric sample check failed at this point.
    SampleMismatch { point: Vec<Scalar> },
    /// Σ αᵢHᵢ^m = F has no exact solution.
    Inconsistent,
    /// The system is solvable, but only with α = 0 at this index: F is
    /// representable by fewer points.
    ZeroAlpha { index: usize },
    LengthMismatch { points: usize, alphas: usize },
    BadCompanion,
}

impl fmt::Display for DualityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualityError::Apolarity(e) => e.fmt(f),
            DualityError::LinAlg(e) => e.fmt(f),
            DualityError::Degenerate { rank } => {
                write!(f, "form is degenerate: middle catalecticant has rank {rank}")
            }
            DualityError::NotQuartic { degree } => {
                write!(f, "expected a quartic, got degree {degree}")
            }
            DualityError::CompositionNotScalar { row, col } => write!(
                f,
                "composed catalecticant operators are not a scalar multiple of the identity \
                 (first offending entry at row {row}, column {col})"
            ),
            DualityError::SampleMismatch { point } => {
                let coords: Vec<String> =
                    point.iter().map(crate::scalar::format_scalar).collect();
                write!(
                    f,
                    "polar-quadric check failed at sample point ({})",
                    coords.join(",")
                )
            }
            DualityError::Inconsistent => {
                write!(f, "form is not representable by these points: system inconsistent")
            }
            DualityError::ZeroAlpha { index } => write!(
                f,
                "representable only with α = 0 at point {index}: fewer points suffice"
            ),
            DualityError::LengthMismatch { points, alphas } => {
                write!(f, "{points} points but {alphas} coefficients")
            }
            DualityError::BadCompanion => write!(
                f,
                "companion must be a quartic of the opposite variance and matching arity"
            ),
        }
    }
}

impl std::error::Error for DualityError {}

impl From<ApolarityError> for DualityError {
    fn from(e: ApolarityError) -> Self {
        DualityError::Apolarity(e)
    }
}

impl From<FormError> for DualityError {
    fn from(e: FormError) -> Self {
        DualityError::Apolarity(ApolarityError::Form(e))
    }
}

impl From<LinAlgError> for DualityError {
    fn from(e: LinAlgError) -> Self {
        DualityError::LinAlg(e)
    }
}

/// The dual form of a non-degenerate even-degree form: the unique Ω of
/// opposite variance with catalecticant operator exactly inverse to F's,
/// when the defining linear system is solvable. `Ok(None)` means F is
/// non-degenerate but the inverse operator is not a catalecticant.
pub fn dual_form(f: &Form) -> Result<Option<Form>, DualityError> {
    if f.degree() % 2 != 0 || f.is_zero() {
        return Err(ApolarityError::OddDegree { degree: f.degree() }.into());
    }
    let k = f.degree() / 2;
    let cat = catalecticant(f, k)?;
    let rank = cat.rank();
    if rank < cat.matrix.cols() {
        return Err(DualityError::Degenerate { rank });
    }
    let inverse = cat.matrix.inverse()?;
    // Entry (σ, β) of Ω's operator is w_{σ+β}·(σ+β)!/σ!, so each entry of
    // the inverse pins the coefficient w_{σ+β}; the system is solvable
    // exactly when all pins agree.
    let basis = monomial_basis(f.nvars(), k);
    let mut coeffs: std::collections::BTreeMap<crate::forms::Monomial, Scalar> =
        std::collections::BTreeMap::new();
    for (row, sigma) in basis.iter().enumerate() {
        for (col, beta) in basis.iter().enumerate() {
            let gamma = sigma.mul(beta);
            let weight = Scalar::from(gamma.falling_weight(beta));
            debug_assert!(!weight.is_zero());
            let w = inverse.at(row, col) / weight;
            match coeffs.get(&gamma) {
                None => {
                    coeffs.insert(gamma, w);
                }
                Some(existing) if *existing != w => return Ok(None),
                Some(_) => {}
            }
        }
    }
    let omega = Form::from_terms(
        f.nvars(),
        f.variance().opposite(),
        coeffs.into_iter().filter(|(_, c)| !c.is_zero()),
    )?;
    Ok(Some(omega))
}

/// A verified dual pair: ap_F ∘ ap_{F̌} = κ·identity exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    pub f_check: Form,
    pub f: Form,
    pub kappa: Scalar,
}

/// Deterministic sample points used by the polar-quadric re-check.
fn sample_points(nvars: usize) -> Vec<Vec<Scalar>> {
    let one = Scalar::one;
    let mut points = Vec::new();
    for i in 0..nvars {
        let mut p = vec![Scalar::zero(); nvars];
        p[i] = one();
        points.push(p);
    }
    for i in 0..nvars {
        for j in i + 1..nvars {
            let mut p = vec![Scalar::zero(); nvars];
            p[i] = one();
            p[j] = one();
            points.push(p.clone());
            p[j] = -one();
            points.push(p);
        }
    }
    points.push(vec![one(); nvars]);
    points
}

/// Check that (F̌, F) is a dual pair: (a) the composed operator matrices
/// equal κ·identity exactly, (b) on sample points q, P_{D̃_q}(F) is the
/// same multiple κ of H_q².
pub fn verify_dual_pair(f_check: &Form, f: &Form) -> Result<DualPair, DualityError> {
    if f_check.degree() != 4 || f_check.is_zero() {
        return Err(DualityError::NotQuartic {
            degree: f_check.degree(),
        });
    }
    if f.degree() != 4 || f.is_zero() {
        return Err(DualityError::NotQuartic { degree: f.degree() });
    }
    if f_check.variance() != Variance::Primal {
        return Err(ApolarityError::NotPrimal.into());
    }
    if f.variance() != Variance::Dual || f.nvars() != f_check.nvars() {
        return Err(FormError::VarianceMismatch {
            left: f_check.variance(),
            right: f.variance(),
        }
        .into());
    }
    let a = catalecticant(f, 2)?.matrix;
    let b = catalecticant(f_check, 2)?.matrix;
    let composed = a.mul(&b)?;
    let kappa = match composed.scalar_multiple_of_identity() {
        Some(k) if !k.is_zero() => k,
        _ => {
            let (row, col) = first_nonscalar_entry(&composed);
            return Err(DualityError::CompositionNotScalar { row, col });
        }
    };
    for q in sample_points(f.nvars()) {
        let quadric = polar_quadric(f_check, &q)?;
        let lhs = polarize(&quadric, f)?;
        let h = LinearForm::from_coeffs(Variance::Dual, &q)?;
        let rhs = h.power(2).scale(&kappa);
        if lhs != rhs {
            return Err(DualityError::SampleMismatch { point: q });
        }
    }
    Ok(DualPair {
        f_check: f_check.clone(),
        f: f.clone(),
        kappa,
    })
}

fn first_nonscalar_entry(m: &RationalMatrix) -> (usize, usize) {
    let c = m.at(0, 0).clone();
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            let expected = if row == col { &c } else { &Scalar::zero() };
            if m.at(row, col) != expected {
                return (row, col);
            }
        }
    }
    (0, 0)
}

/// Result of checking a point tuple for mutual conjugacy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateTupleReport {
    /// Full n×n matrix of conjugacy values C[i][j] = D̃_{pᵢ}(pⱼ).
    pub matrix: RationalMatrix,
    /// All off-diagonal entries zero and all diagonal entries nonzero.
    pub pass: bool,
    pub offdiag_failures: Vec<(usize, usize)>,
    pub zero_diagonal: Vec<usize>,
    /// Whether {Hᵢ²} are linearly independent in S²V̌.
    pub squares_independent: bool,
}

/// Evaluate the conjugacy matrix of a point tuple against a primal quartic
/// and report the polar-n-hedron verdict. Failures are carried in the
/// report, not raised as errors.
pub fn conjugate_tuple_check(
    f_check: &Form,
    points: &[Vec<Scalar>],
) -> Result<ConjugateTupleReport, DualityError> {
    assert!(!points.is_empty(), "need at least one point");
    let n = points.len();
    let mut matrix = RationalMatrix::zeros(n, n);
    for i in 0..n {
        let quadric = polar_quadric(f_check, &points[i])?;
        for j in 0..n {
            *matrix.at_mut(i, j) = quadric.evaluate(&points[j])?;
        }
    }
    let mut offdiag_failures = Vec::new();
    let mut zero_diagonal = Vec::new();
    for i in 0..n {
        if matrix.at(i, i).is_zero() {
            zero_diagonal.push(i);
        }
        for j in 0..n {
            if i != j && !matrix.at(i, j).is_zero() {
                offdiag_failures.push((i, j));
            }
        }
    }
    let squares_independent = squares_rank(f_check.nvars(), Variance::Dual, points)? == n;
    Ok(ConjugateTupleReport {
        pass: offdiag_failures.is_empty() && zero_diagonal.is_empty(),
        matrix,
        offdiag_failures,
        zero_diagonal,
        squares_independent,
    })
}

fn squares_rank(
    nvars: usize,
    variance: Variance,
    points: &[Vec<Scalar>],
) -> Result<usize, DualityError> {
    let basis = monomial_basis(nvars, 2);
    let rows: Result<Vec<Vec<Scalar>>, DualityError> = points
        .iter()
        .map(|p| {
            let h = LinearForm::from_coeffs(variance, p)?;
            Ok(h.power(2).coeff_vec(&basis))
        })
        .collect();
    Ok(RationalMatrix::from_rows(rows?).rank())
}

/// An exact power-sum certificate: Σ αᵢ·Hᵢ^m = F with every αᵢ nonzero,
/// together with whatever conjugacy evidence was requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumCertificate {
    pub form: Form,
    pub points: Vec<Vec<Scalar>>,
    pub alphas: Vec<Scalar>,
    /// Present when the companion F̌ verifies as a dual pair with F.
    pub kappa: Option<Scalar>,
    /// Present when a companion F̌ was supplied and deg F = 4.
    pub conjugacy_matrix: Option<RationalMatrix>,
    /// Named boolean checks, in a stable order.
    pub checks: Vec<(String, bool)>,
}

impl PowerSumCertificate {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

/// Solve Σ αᵢ·Hᵢ^m = F exactly and certify the representation.
///
/// Returns a certificate only when the system is solvable with *all*
/// αᵢ ≠ 0; a solvable system whose solutions force some αᵢ = 0 is
/// reported distinctly from an inconsistent one. With a companion F̌ (for
/// quartics) the conjugacy matrix of the points is attached, and when the
/// tuple size equals dim S² the apolarity cross-check — every quartic
/// through the points pairs to zero with F — is run as a kernel
/// containment.
pub fn vsp_certify(
    f: &Form,
    points: &[Vec<Scalar>],
    companion: Option<&Form>,
) -> Result<PowerSumCertificate, DualityError> {
    assert!(!points.is_empty(), "need at least one point");
    let m = f.degree();
    let n = points.len();
    let nvars = f.nvars();
    let basis = monomial_basis(nvars, m);
    let powers: Result<Vec<Form>, DualityError> = points
        .iter()
        .map(|p| {
            let h = LinearForm::from_coeffs(f.variance(), p)?;
            Ok(h.power(m))
        })
        .collect();
    let powers = powers?;
    let mut system = RationalMatrix::zeros(basis.len(), n);
    for (col, power) in powers.iter().enumerate() {
        for (row, c) in power.coeff_vec(&basis).into_iter().enumerate() {
            *system.at_mut(row, col) = c;
        }
    }
    let rhs = f.coeff_vec(&basis);
    let particular = system.solve(&rhs)?.ok_or(DualityError::Inconsistent)?;
    let kernel = system.kernel_basis();
    let alphas = nonzero_solution(&particular, &kernel)?;

    // re-synthesize and compare exactly; the certificate carries the verdict
    let mut synthesized = Form::zero(nvars, f.variance());
    for (alpha, power) in alphas.iter().zip(&powers) {
        synthesized = synthesized.add(&power.scale(alpha))?;
    }
    let residual_zero = &synthesized == f;
    let mut checks = vec![
        ("residual_zero".to_string(), residual_zero),
        (
            "alphas_all_nonzero".to_string(),
            alphas.iter().all(|a| !a.is_zero()),
        ),
    ];

    let mut kappa = None;
    let mut conjugacy_matrix = None;
    if let Some(f_check) = companion {
        if m != 4
            || f_check.degree() != 4
            || f_check.nvars() != nvars
            || f_check.variance() != f.variance().opposite()
        {
            return Err(DualityError::BadCompanion);
        }
        let report = conjugate_tuple_check(f_check, points)?;
        checks.push((
            "conjugacy_off_diagonal_zero".to_string(),
            report.offdiag_failures.is_empty(),
        ));
        checks.push((
            "conjugacy_diagonal_nonzero".to_string(),
            report.zero_diagonal.is_empty(),
        ));
        checks.push(("squares_independent".to_string(), report.squares_independent));
        conjugacy_matrix = Some(report.matrix);
        kappa = verify_dual_pair(f_check, f).ok().map(|pair| pair.kappa);
        checks.push(("dual_pair".to_string(), kappa.is_some()));
        let dim_s2 = monomial_basis(nvars, 2).len();
        if n == dim_s2 {
            checks.push((
                "apolar_quartics_annihilate".to_string(),
                quartics_through_points_annihilate(f, points)?,
            ));
        }
    }

    Ok(PowerSumCertificate {
        form: f.clone(),
        points: points.to_vec(),
        alphas,
        kappa,
        conjugacy_matrix,
        checks,
    })
}

/// Pick a solution of the affine system with every coordinate nonzero, or
/// report the index that is forced to zero.
fn nonzero_solution(
    particular: &[Scalar],
    kernel: &[Vec<Scalar>],
) -> Result<Vec<Scalar>, DualityError> {
    let n = particular.len();
    for i in 0..n {
        let forced = particular[i].is_zero() && kernel.iter().all(|k| k[i].is_zero());
        if forced {
            return Err(DualityError::ZeroAlpha { index: i });
        }
    }
    if kernel.is_empty() || particular.iter().all(|a| !a.is_zero()) {
        return Ok(particular.to_vec());
    }
    // No coordinate is forced to zero, so a fully nonzero solution exists.
    // Walk the moment curve t = (r, r², …): each bad hyperplane meets it in
    // at most deg = dim kernel points, so n·deg + 1 values of r suffice.
    let d = kernel.len();
    for r in 1..=(n * d + 1) {
        let r = crate::scalar::scalar(r as i64);
        let mut candidate = particular.to_vec();
        let mut weight = r.clone();
        for k in kernel {
            for (c, kc) in candidate.iter_mut().zip(k) {
                *c += &weight * kc;
            }
            weight *= &r;
        }
        if candidate.iter().all(|a| !a.is_zero()) {
            return Ok(candidate);
        }
    }
    unreachable!("moment-curve search is exhaustive for non-forced systems")
}

/// Kernel containment for the apolarity cross-check: every quartic G with
/// G(pᵢ) = 0 for all i satisfies ⟨G, F⟩ = 0.
fn quartics_through_points_annihilate(
    f: &Form,
    points: &[Vec<Scalar>],
) -> Result<bool, DualityError> {
    let nvars = f.nvars();
    let basis = monomial_basis(nvars, 4);
    let mut eval_rows: Vec<Vec<Scalar>> = Vec::with_capacity(points.len() + 1);
    for p in points {
        let row = basis
            .iter()
            .map(|mono| {
                let mut acc = Scalar::one();
                for (c, &e) in p.iter().zip(mono.exps()) {
                    for _ in 0..e {
                        acc *= c;
                    }
                }
                acc
            })
            .collect();
        eval_rows.push(row);
    }
    let eval = RationalMatrix::from_rows(eval_rows.clone());
    // the pairing functional G ↦ ⟨G, F⟩ in the same coordinates
    let pairing_row: Vec<Scalar> = basis
        .iter()
        .map(|mono| f.coeff(mono) * Scalar::from(mono.factorial_weight()))
        .collect();
    eval_rows.push(pairing_row);
    let stacked = RationalMatrix::from_rows(eval_rows);
    Ok(stacked.rank() == eval.rank())
}

/// Report accompanying a synthesized power sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisReport {
    pub form: Form,
    /// For even m: whether {Hᵢ^{m/2}} are linearly independent.
    pub half_powers_independent: Option<bool>,
    /// For even m: whether the synthesized form is non-degenerate.
    pub nondegenerate: Option<bool>,
}

/// Σ αᵢ·Hᵢ^m on the dual side: points are coefficient vectors of dual
/// linear forms.
pub fn power_sum_synthesize(
    points: &[Vec<Scalar>],
    alphas: &[Scalar],
    m: u32,
) -> Result<SynthesisReport, DualityError> {
    if points.len() != alphas.len() {
        return Err(DualityError::LengthMismatch {
            points: points.len(),
            alphas: alphas.len(),
        });
    }
    assert!(m >= 1, "power-sum degree must be at least 1");
    assert!(!points.is_empty(), "need at least one point");
    let nvars = points[0].len();
    let mut form = Form::zero(nvars, Variance::Dual);
    for (p, alpha) in points.iter().zip(alphas) {
        let h = LinearForm::from_coeffs(Variance::Dual, p)?;
        form = form.add(&h.power(m).scale(alpha))?;
    }
    let (half_powers_independent, nondegenerate) = if m % 2 == 0 {
        let basis = monomial_basis(nvars, m / 2);
        let rows: Result<Vec<Vec<Scalar>>, DualityError> = points
            .iter()
            .map(|p| {
                let h = LinearForm::from_coeffs(Variance::Dual, p)?;
                Ok(h.power(m / 2).coeff_vec(&basis))
            })
            .collect();
        let independent = RationalMatrix::from_rows(rows?).rank() == points.len();
        let nondeg = !form.is_zero() && is_nondegenerate(&form)?;
        (Some(independent), Some(nondeg))
    } else {
        (None, None)
    };
    Ok(SynthesisReport {
        form,
        half_powers_independent,
        nondegenerate,
    })
}

/// The conjugacy value of a primal quartic at a pair of points, re-exposed
/// with this module's error type because certificates speak its language.
pub fn conjugacy_value(
    f_check: &Form,
    p: &[Scalar],
    q: &[Scalar],
) -> Result<Scalar, DualityError> {
    Ok(conjugacy(f_check, p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form;
    use crate::scalar::{ratio, scalar};

    fn primal(text: &str) -> Form {
        parse_form(text, 2, Variance::Primal).unwrap()
    }

    fn dual(text: &str) -> Form {
        parse_form(text, 2, Variance::Dual).unwrap()
    }

    fn pts(coords: &[&[i64]]) -> Vec<Vec<Scalar>> {
        coords
            .iter()
            .map(|p| p.iter().map(|&c| scalar(c)).collect())
            .collect()
    }

    fn worked_f_check() -> Form {
        primal("x0^4+2*x0^3*x1+2*x0*x1^3+x1^4")
    }

    fn worked_dual() -> Form {
        dual("1/288*y0^4+1/72*y0^3*y1-1/48*y0^2*y1^2+1/72*y0*y1^3+1/288*y1^4")
    }

    #[test]
    fn dual_form_worked_example() {
        let omega = dual_form(&worked_f_check()).unwrap().unwrap();
        assert_eq!(omega, worked_dual());
    }

    #[test]
    fn dual_form_absent_for_c_equals_one() {
        assert_eq!(dual_form(&primal("x0^4+x1^4+x0^2*x1^2")).unwrap(), None);
    }

    #[test]
    fn dual_form_of_a_quadric() {
        let omega = dual_form(&primal("x0^2+x1^2")).unwrap().unwrap();
        assert_eq!(omega, dual("1/4*y0^2+1/4*y1^2"));
    }

    #[test]
    fn dual_form_rejects_degenerate() {
        assert_eq!(
            dual_form(&primal("x0^4")),
            Err(DualityError::Degenerate { rank: 1 })
        );
    }

    #[test]
    fn verify_worked_pair() {
        let pair = verify_dual_pair(&worked_f_check(), &worked_dual()).unwrap();
        assert_eq!(pair.kappa, scalar(1));
        let doubled = worked_dual().scale(&scalar(2));
        let pair2 = verify_dual_pair(&worked_f_check(), &doubled).unwrap();
        assert_eq!(pair2.kappa, scalar(2));
    }

    #[test]
    fn verify_rejects_non_pair() {
        let err = verify_dual_pair(&primal("x0^4+x1^4+x0^2*x1^2"), &worked_dual()).unwrap_err();
        assert!(matches!(err, DualityError::CompositionNotScalar { .. }));
    }

    #[test]
    fn dual_form_is_an_involution() {
        let f_check = worked_f_check();
        let omega = dual_form(&f_check).unwrap().unwrap();
        let back = dual_form(&omega).unwrap().unwrap();
        assert_eq!(back, f_check);
    }

    #[test]
    fn conjugate_tuple_worked_examples() {
        let f_check = worked_f_check();
        let good = conjugate_tuple_check(&f_check, &pts(&[&[1, 0], &[0, 1], &[1, -1]])).unwrap();
        assert!(good.pass);
        assert!(good.squares_independent);
        let diag: Vec<Scalar> = (0..3).map(|i| good.matrix.at(i, i).clone()).collect();
        assert_eq!(diag, vec![scalar(12), scalar(12), scalar(-24)]);

        let bad = conjugate_tuple_check(&f_check, &pts(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(!bad.pass);
        assert!(bad.offdiag_failures.contains(&(0, 2)));
        assert_eq!(bad.matrix.at(0, 2), &scalar(24));

        // single point with F̌(q) ≠ 0 passes trivially: diagonal 12·F̌(q)
        let single = conjugate_tuple_check(&f_check, &pts(&[&[1, 0]])).unwrap();
        assert!(single.pass);
        assert_eq!(single.matrix.at(0, 0), &scalar(12));
    }

    #[test]
    fn certify_worked_example() {
        let cert = vsp_certify(
            &worked_dual(),
            &pts(&[&[1, 0], &[0, 1], &[1, -1]]),
            Some(&worked_f_check()),
        )
        .unwrap();
        assert_eq!(
            cert.alphas,
            vec![ratio(1, 144), ratio(1, 144), ratio(-1, 288)]
        );
        assert_eq!(cert.kappa, Some(scalar(1)));
        assert!(cert.checks.iter().all(|(_, ok)| *ok));
        // certificate constancy: αᵢ·Cᵢᵢ = 1/12 for every i
        let c = cert.conjugacy_matrix.as_ref().unwrap();
        for (i, alpha) in cert.alphas.iter().enumerate() {
            assert_eq!(alpha * c.at(i, i), ratio(1, 12));
        }
    }

    #[test]
    fn certify_single_power() {
        let cert = vsp_certify(&dual("y0^4"), &pts(&[&[1, 0]]), None).unwrap();
        assert_eq!(cert.alphas, vec![scalar(1)]);
    }

    #[test]
    fn certify_inconsistent_tuple() {
        let err =
            vsp_certify(&worked_dual(), &pts(&[&[1, 0], &[0, 1], &[1, 1]]), None).unwrap_err();
        assert_eq!(err, DualityError::Inconsistent);
    }

    #[test]
    fn certify_reports_zero_alpha_distinctly() {
        // y0⁴ over {(1,0),(0,1)}: solvable, but only with α₂ = 0.
        let err = vsp_certify(&dual("y0^4"), &pts(&[&[1, 0], &[0, 1]]), None).unwrap_err();
        assert_eq!(err, DualityError::ZeroAlpha { index: 1 });
    }

    #[test]
    fn certify_alpha_scaling() {
        let f = worked_dual();
        let base = vsp_certify(&f, &pts(&[&[1, 0], &[0, 1], &[1, -1]]), None).unwrap();
        let scaled = vsp_certify(&f, &pts(&[&[1, 0], &[0, 1], &[2, -2]]), None).unwrap();
        assert_eq!(scaled.alphas[2], base.alphas[2].clone() / scalar(16));
        assert_eq!(scaled.alphas[0], base.alphas[0]);
    }

    #[test]
    fn synthesize_quintic_powers() {
        let report =
            power_sum_synthesize(&pts(&[&[1, 0], &[0, 1]]), &[scalar(1), scalar(1)], 5).unwrap();
        assert_eq!(report.form, dual("y0^5+y1^5"));
        assert_eq!(report.half_powers_independent, None);
    }

    #[test]
    fn synthesize_reproduces_worked_dual() {
        let report = power_sum_synthesize(
            &pts(&[&[1, 0], &[0, 1], &[1, -1]]),
            &[ratio(1, 144), ratio(1, 144), ratio(-1, 288)],
            4,
        )
        .unwrap();
        assert_eq!(report.form, worked_dual());
        assert_eq!(report.half_powers_independent, Some(true));
        assert_eq!(report.nondegenerate, Some(true));
    }

    #[test]
    fn synthesize_six_ternary_points_nondegenerate() {
        let points = pts(&[
            &[3, 1, -2],
            &[1, 4, 1],
            &[-2, 3, 5],
            &[1, -1, 2],
            &[5, 2, 3],
            &[2, -3, 1],
        ]);
        let alphas = vec![scalar(1); 6];
        let report = power_sum_synthesize(&points, &alphas, 4).unwrap();
        assert_eq!(report.nondegenerate, Some(true));
        assert_eq!(report.half_powers_independent, Some(true));
    }

    #[test]
    fn certify_mismatched_companion_is_rejected() {
        let err = vsp_certify(
            &worked_dual(),
            &pts(&[&[1, 0], &[0, 1], &[1, -1]]),
            Some(&worked_dual()),
        )
        .unwrap_err();
        assert_eq!(err, DualityError::BadCompanion);
    }
}
