//! Property tests for the exact-arithmetic kernels: cyclotomic canonical
//! forms, character evaluation, Smith normal form invariance, and discrete
//! valuations.

use cayley_smith::arith::valuation_bigint;
use cayley_smith::cayley::{ConnectingSet, MatrixCombo};
use cayley_smith::cyclotomic::CyclotomicInteger;
use cayley_smith::group::GroupSpec;
use cayley_smith::locfield::{PrimeContext, Valuation};
use cayley_smith::matrix::IntegerMatrix;
use cayley_smith::snf::smith_normal_form;
use cayley_smith::spectral;
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_modulus() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15])
}

fn working_form(m: u64, coeffs: &[i64]) -> CyclotomicInteger {
    CyclotomicInteger::from_working(
        m,
        coeffs
            .iter()
            .take(m as usize)
            .map(|&c| BigInt::from(c))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(
        m in small_modulus(),
        xs in prop::collection::vec(-9i64..=9, 15),
        ys in prop::collection::vec(-9i64..=9, 15),
        zs in prop::collection::vec(-9i64..=9, 15),
    ) {
        let x = working_form(m, &xs);
        let y = working_form(m, &ys);
        let z = working_form(m, &zs);
        // Associativity and distributivity survive canonicalization.
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn cyclotomic_integer_roundtrip(m in small_modulus(), n in -1000i64..=1000) {
        let v = CyclotomicInteger::from_integer(m, BigInt::from(n));
        prop_assert_eq!(v.as_integer(), Some(BigInt::from(n)));
    }

    #[test]
    fn character_multiplicativity(
        orders in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5]), 1..=3),
        chi_seed in any::<u64>(),
        a_seed in any::<u64>(),
        b_seed in any::<u64>(),
    ) {
        let spec = GroupSpec::new(orders).unwrap();
        let size = spec.size();
        let chi_idx = (chi_seed % size) as usize;
        let chi = spec.enumerate_characters().into_iter().nth(chi_idx).unwrap();
        let a = spec.element_at((a_seed % size) as usize);
        let b = spec.element_at((b_seed % size) as usize);
        let m = spec.exponent();
        let lhs = spec.char_exponent_unchecked(&chi, &spec.mul(&a, &b));
        let rhs = (spec.char_exponent_unchecked(&chi, &a)
            + spec.char_exponent_unchecked(&chi, &b)) % m;
        prop_assert_eq!(lhs, rhs);
        let vinv = spec.char_exponent_unchecked(&chi, &spec.inverse(&a));
        let v = spec.char_exponent_unchecked(&chi, &a);
        prop_assert_eq!((vinv + v) % m, 0);
    }

    #[test]
    fn snf_invariant_under_unimodular_transforms(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-9i64..=9, 16),
        ops in prop::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8),
    ) {
        let m_rows: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&m_rows);
        let base = smith_normal_form(&m, false).unwrap();

        // Transposition.
        let transposed = smith_normal_form(&m.transpose(), false).unwrap();
        prop_assert_eq!(&base.diagonal, &transposed.diagonal);

        // Random unimodular row/column shears.
        let mut u = IntegerMatrix::identity(rows).unwrap();
        let mut v = IntegerMatrix::identity(cols).unwrap();
        for &(i, j, c) in &ops {
            let (i_r, j_r) = (i % rows, j % rows);
            if i_r != j_r {
                let mut shear = IntegerMatrix::identity(rows).unwrap();
                *shear.at_mut(i_r, j_r) = BigInt::from(c);
                u = shear.mul(&u);
            }
            let (i_c, j_c) = (i % cols, j % cols);
            if i_c != j_c {
                let mut shear = IntegerMatrix::identity(cols).unwrap();
                *shear.at_mut(i_c, j_c) = BigInt::from(-c);
                v = v.mul(&shear);
            }
        }
        let transformed = smith_normal_form(&u.mul(&m).mul(&v), false).unwrap();
        prop_assert_eq!(&base.diagonal, &transformed.diagonal);
    }

    #[test]
    fn snf_transforms_multiply_back(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-20i64..=20, 16),
    ) {
        let m_rows: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&m_rows);
        let snf = smith_normal_form(&m, true).unwrap();
        let p = snf.p.as_ref().unwrap();
        let q = snf.q.as_ref().unwrap();
        prop_assert_eq!(p.determinant().magnitude().clone(), BigInt::from(1u32).into_parts().1);
        prop_assert_eq!(q.determinant().magnitude().clone(), BigInt::from(1u32).into_parts().1);
        let product = p.mul(&m).mul(q);
        for i in 0..rows {
            for j in 0..cols {
                let expected = if i == j { snf.diagonal[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(product.at(i, j), &expected);
            }
        }
    }

    #[test]
    fn valuations_are_additive(
        ctx_choice in prop::sample::select(vec![(2u64, 7u64), (3, 7), (5, 4), (7, 12), (3, 8)]),
        x_coeffs in prop::collection::vec(-6i64..=6, 12),
        y_coeffs in prop::collection::vec(-6i64..=6, 12),
    ) {
        let (p, m) = ctx_choice;
        let ctx = PrimeContext::new(p, m).unwrap();
        let x = working_form(m, &x_coeffs);
        let y = working_form(m, &y_coeffs);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let vx = ctx.valuation(&x).unwrap().finite().unwrap();
        let vy = ctx.valuation(&y).unwrap().finite().unwrap();
        let vxy = ctx.valuation(&(&x * &y)).unwrap().finite().unwrap();
        prop_assert_eq!(vxy, vx + vy);

        // Ultrametric inequality, with equality at distinct valuations.
        let sum = &x + &y;
        let vsum = ctx.valuation(&sum).unwrap();
        match vsum {
            Valuation::Infinite => prop_assert_eq!(vx, vy),
            Valuation::Finite(v) => {
                prop_assert!(v >= vx.min(vy));
                if vx != vy {
                    prop_assert_eq!(v, vx.min(vy));
                }
            }
        }
    }

    #[test]
    fn valuation_of_integers_is_p_adic(
        ctx_choice in prop::sample::select(vec![(2u64, 7u64), (3, 7), (5, 4), (7, 12)]),
        n in -4000i64..=4000,
    ) {
        prop_assume!(n != 0);
        let (p, m) = ctx_choice;
        let ctx = PrimeContext::new(p, m).unwrap();
        let x = CyclotomicInteger::from_integer(m, BigInt::from(n));
        let v = ctx.valuation(&x).unwrap().finite().unwrap();
        prop_assert_eq!(v, valuation_bigint(&BigInt::from(n), p));
    }

    #[test]
    fn spectrum_sums_and_trace(
        orders in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4]), 1..=3),
        c0 in -4i64..=4,
        cks in prop::collection::vec(-4i64..=4, 1..=3),
    ) {
        let spec = GroupSpec::new(orders).unwrap();
        let n = spec.rank();
        let mut terms = Vec::new();
        let mut identity_total = c0;
        for (k, &c) in cks.iter().enumerate() {
            let k = k % (n + 1);
            terms.push((c, ConnectingSet::weight_class(&spec, k).unwrap()));
            if k == 0 {
                identity_total += c;
            }
        }
        let combo = MatrixCombo { identity_coeff: c0, terms };
        let s = spectral::spectrum_via_characters(&spec, &combo).unwrap();
        prop_assert_eq!(s.total_multiplicity(), spec.size());
        // Diagonal entries of the combo are identical, so the trace is
        // |G| times the coefficient mass at the identity.
        prop_assert_eq!(s.trace(), BigInt::from(spec.size()) * BigInt::from(identity_total));
        // Weight-class unions always produce integer spectra.
        prop_assert!(s.integer_entries().is_some());
    }
}

/// Exact character orthogonality over a handful of groups: the cyclotomic
/// sum over the group vanishes for distinct characters and equals |G| on
/// the diagonal.
#[test]
fn character_orthogonality_exact() {
    for orders in [vec![2u64], vec![3], vec![2, 2], vec![2, 3], vec![4, 2]] {
        let spec = GroupSpec::new(orders.clone()).unwrap();
        let m = spec.exponent();
        let chars = spec.enumerate_characters();
        let elems = spec.enumerate_elements();
        for chi in &chars {
            for psi in &chars {
                let mut working = vec![BigInt::from(0); m as usize];
                for g in &elems {
                    let t_chi = spec.char_exponent_unchecked(chi, g);
                    let t_psi = spec.char_exponent_unchecked(psi, g);
                    working[((t_chi + m - t_psi) % m) as usize] += 1;
                }
                let sum = CyclotomicInteger::from_working(m, working);
                if chi == psi {
                    assert_eq!(sum.as_integer(), Some(BigInt::from(spec.size())));
                } else {
                    assert!(sum.is_zero(), "orders {orders:?}: nonzero off-diagonal");
                }
            }
        }
    }
}
