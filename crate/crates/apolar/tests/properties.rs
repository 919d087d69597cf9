//! Randomized exact properties of the core algebra.

use proptest::prelude::*;

use apolar::apolarity::{apolar_pair, biform, catalecticant, conjugacy, polarize};
use apolar::exactla::{det_by_cofactors, RationalMatrix};
use apolar::forms::{format_form, monomial_basis, parse_form, Form, LinearForm, Variance};
use apolar::scalar::Scalar;
use apolar::secants::terracini_dim;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=10)
        .prop_map(|(n, d)| Scalar::new(BigInt::from(n), BigInt::from(d)))
}

fn form_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = Form> {
    let basis = monomial_basis(nvars, degree);
    let len = basis.len();
    proptest::collection::vec(scalar_strategy(), len).prop_map(move |coeffs| {
        Form::from_terms(
            nvars,
            Variance::Primal,
            basis.iter().cloned().zip(coeffs),
        )
        .unwrap()
    })
}

fn dual_form_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = Form> {
    let basis = monomial_basis(nvars, degree);
    proptest::collection::vec(scalar_strategy(), basis.len()).prop_map(move |coeffs| {
        Form::from_terms(nvars, Variance::Dual, basis.iter().cloned().zip(coeffs)).unwrap()
    })
}

fn point_strategy(nvars: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar_strategy(), nvars)
        .prop_filter("nonzero point", |p| p.iter().any(|c| !c.is_zero()))
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(scalar_strategy(), rows * cols).prop_map(move |data| {
        let rows_vec: Vec<Vec<Scalar>> = data.chunks(cols).map(|c| c.to_vec()).collect();
        RationalMatrix::from_rows(rows_vec)
    })
}

proptest! {
    #[test]
    fn add_commutes_and_associates(
        a in form_strategy(2, 3),
        b in form_strategy(2, 3),
        c in form_strategy(2, 3),
    ) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn multiply_distributes_over_add(
        a in form_strategy(2, 2),
        b in form_strategy(2, 3),
        c in form_strategy(2, 3),
    ) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_matches_repeated_multiply(
        coeffs in proptest::collection::vec(scalar_strategy(), 3),
        m in 0u32..=6,
    ) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let h = LinearForm::from_coeffs(Variance::Primal, &coeffs).unwrap();
        let mut by_mul = Form::constant(3, Variance::Primal, Scalar::one());
        for _ in 0..m {
            by_mul = by_mul.mul(h.form()).unwrap();
        }
        prop_assert_eq!(h.power(m), by_mul);
    }

    #[test]
    fn power_coefficients_are_multinomial(
        coeffs in proptest::collection::vec(scalar_strategy(), 2),
        m in 1u32..=6,
    ) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let h = LinearForm::from_coeffs(Variance::Primal, &coeffs).unwrap();
        let p = h.power(m);
        for mono in monomial_basis(2, m) {
            let mut expected = Scalar::from(mono.multinomial());
            for (c, &e) in coeffs.iter().zip(mono.exps()) {
                for _ in 0..e {
                    expected *= c;
                }
            }
            prop_assert_eq!(p.coeff(&mono), expected);
        }
    }

    #[test]
    fn parse_format_round_trip(f in form_strategy(3, 4)) {
        let text = format_form(&f);
        let back = parse_form(&text, 3, Variance::Primal).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn inverse_is_exact(m in matrix_strategy(4, 4)) {
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(4));
            prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(4));
        }
    }

    #[test]
    fn rank_nullity_theorem(m in matrix_strategy(4, 6)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_normalized_and_annihilated(m in matrix_strategy(3, 5)) {
        for v in m.kernel_basis() {
            let image = m.mul_vec(&v).unwrap();
            prop_assert!(image.iter().all(Scalar::is_zero));
            let first = v.iter().find(|c| !c.is_zero()).unwrap();
            prop_assert_eq!(first, &Scalar::one());
        }
    }

    #[test]
    fn det_matches_cofactor_oracle(m in matrix_strategy(4, 4)) {
        prop_assert_eq!(m.det().unwrap(), det_by_cofactors(&m).unwrap());
    }

    #[test]
    fn solve_solutions_verify(m in matrix_strategy(3, 4), b in proptest::collection::vec(scalar_strategy(), 3)) {
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }

    #[test]
    fn adjunction_identity(
        f in form_strategy(2, 4),
        g in dual_form_strategy(2, 1),
        gp in dual_form_strategy(2, 3),
    ) {
        let lhs = apolar_pair(&g.mul(&gp).unwrap(), &f).unwrap();
        let rhs = apolar_pair(&gp, &polarize(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_of_powers_is_evaluation(
        coeffs in proptest::collection::vec(scalar_strategy(), 2),
        m in 1u32..=6,
    ) {
        prop_assume!(coeffs.iter().any(|c| !c.is_zero()));
        let h = LinearForm::from_coeffs(Variance::Primal, &coeffs).unwrap();
        let hm = h.power(m);
        let m_factorial = Scalar::from(apolar::scalar::factorial(m));
        for mono in monomial_basis(2, m) {
            let psi = Form::from_terms(2, Variance::Dual, [(mono.clone(), Scalar::one())]).unwrap();
            let lhs = apolar_pair(&psi, &hm).unwrap();
            let mut value = Scalar::one();
            for (c, &e) in coeffs.iter().zip(mono.exps()) {
                for _ in 0..e {
                    value *= c;
                }
            }
            prop_assert_eq!(lhs, &m_factorial * value);
        }
    }

    #[test]
    fn conjugacy_is_symmetric(
        f in form_strategy(2, 4),
        p in point_strategy(2),
        q in point_strategy(2),
    ) {
        prop_assert_eq!(
            conjugacy(&f, &p, &q).unwrap(),
            conjugacy(&f, &q, &p).unwrap()
        );
    }

    #[test]
    fn conjugacy_diagonal_is_twelve_f(
        f in form_strategy(3, 4),
        p in point_strategy(3),
    ) {
        let lhs = conjugacy(&f, &p, &p).unwrap();
        let rhs = f.evaluate(&p).unwrap() * apolar::scalar::scalar(12);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn biform_matches_conjugacy_and_is_symmetric(
        f in form_strategy(2, 4),
        p in point_strategy(2),
        q in point_strategy(2),
    ) {
        let b = biform(&f).unwrap();
        prop_assert!(b.is_symmetric());
        prop_assert_eq!(b.evaluate(&p, &q).unwrap(), conjugacy(&f, &p, &q).unwrap());
        prop_assert_eq!(b.diagonal(), f.scale(&apolar::scalar::scalar(12)));
    }

    #[test]
    fn catalecticant_columns_rederive(f in form_strategy(2, 4), k in 0u32..=4) {
        let cat = catalecticant(&f, k).unwrap();
        for (col, beta) in cat.source_basis.iter().enumerate() {
            let psi = Form::from_terms(2, Variance::Dual, [(beta.clone(), Scalar::one())]).unwrap();
            let polar = polarize(&psi, &f).unwrap();
            let expected = polar.coeff_vec(&cat.target_basis);
            for (row, want) in expected.iter().enumerate() {
                prop_assert_eq!(cat.matrix.at(row, col), want);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn larger_inverses_are_exact(n in 8usize..=12, seed_data in proptest::collection::vec(-9i64..=9, 144)) {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        // diagonal boost makes most draws invertible
                        let base = seed_data[r * 12 + c];
                        let v = if r == c { base + 20 } else { base };
                        apolar::scalar::scalar(v)
                    })
                    .collect()
            })
            .collect();
        let m = RationalMatrix::from_rows(rows);
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(n));
        }
    }

    #[test]
    fn terracini_bounded_and_seed_stable(n in 1usize..=5, seed in 0u64..500) {
        let out = terracini_dim(3, 2, n, seed);
        prop_assert!(out.rank <= out.expected);
        prop_assert_eq!(out, terracini_dim(3, 2, n, seed));
    }
}
