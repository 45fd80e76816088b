//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Everything here is exact integer arithmetic; no tolerances anywhere.

use cayley_smith::arith::{binomial, primes_upto, valuation_u64};
use cayley_smith::cayley::{self, ConnectingSet, MatrixCombo};
use cayley_smith::cyclotomic::CyclotomicInteger;
use cayley_smith::group::GroupSpec;
use cayley_smith::locfield::PrimeContext;
use cayley_smith::matrix::IntegerMatrix;
use cayley_smith::reports;
use cayley_smith::snf;
use cayley_smith::spectral::{self, PiMode};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn group(orders: &[u64]) -> GroupSpec {
    GroupSpec::new(orders.to_vec()).unwrap()
}

/// Criterion 1: the Z_7 worked example, run exactly as stated on the
/// connecting set {x^4, x^5, x^6}.
///
/// Three of its four clauses hold (and are checked first): 3 is an
/// elementary divisor of multiplicity 1, the spectral prediction agrees
/// with the Smith normal form oracle at every applicable prime, and the
/// whole computation is far under a second. The final clause — 2 an
/// elementary divisor of multiplicity 3 — is false for this matrix: its
/// determinant is 3 (the six non-integer eigenvalues are units), so the
/// 2-part is trivial. The assertion is kept as stated and fails honestly;
/// `acceptance_1_companion_alpha_beta_set` shows that {x, x^2, x^6}
/// realizes the full quoted profile.
#[test]
fn acceptance_1_z7_worked_example() {
    let start = Instant::now();
    let g = group(&[7]);
    let set = ConnectingSet::parse_elements(&g, "(4),(5),(6)").unwrap();
    let combo = MatrixCombo::adjacency(set.clone());
    let a = cayley::adjacency_matrix(&g, &set).unwrap();

    let p3 = spectral::predict_elementary_divisors(&g, &combo, 3, PiMode::Default).unwrap();
    let p2 = spectral::predict_elementary_divisors(&g, &combo, 2, PiMode::Default).unwrap();
    let oracle3 = snf::elementary_divisors_at(&a, 3).unwrap();
    let oracle2 = snf::elementary_divisors_at(&a, 2).unwrap();

    assert!(p3.matches_oracle(&oracle3), "prediction/oracle disagree at p = 3");
    assert!(p2.matches_oracle(&oracle2), "prediction/oracle disagree at p = 2");
    println!("acceptance 1: prediction = oracle at p = 2 and p = 3: PASS");

    assert_eq!(p3.multiplicity(1), 1, "3 should be an elementary divisor of multiplicity 1");
    println!("acceptance 1: elementary divisor 3 has multiplicity 1: PASS");

    assert!(start.elapsed().as_secs_f64() < 1.0, "runtime exceeded 1 s");
    println!("acceptance 1: runtime < 1 s: PASS");

    let two_mult = p2.multiplicity(1);
    if two_mult != 3 {
        println!("acceptance 1 (Z7 worked example): FAIL — 2^1 multiplicity is {two_mult}, not 3");
    } else {
        println!("acceptance 1 (Z7 worked example): PASS");
    }
    assert_eq!(
        two_mult, 3,
        "the connecting set {{x^4, x^5, x^6}} yields det 3 and Smith diagonal \
         (1,1,1,1,1,1,3), so its 2-elementary divisors are trivial; the profile \
         with 2^1 of multiplicity 3 belongs to the set {{x, x^2, x^6}} — see \
         acceptance_1_companion_alpha_beta_set"
    );
}

/// Companion to criterion 1: the connecting set {x, x^2, x^6} on Z_7
/// realizes the full worked-example profile — elementary divisor 3 with
/// multiplicity 1, 2 with multiplicity 3, Smith diagonal (1,1,1,1,2,2,6),
/// Smith group Z/2 x Z/2 x Z/6 — and the oracle agrees with the prediction.
#[test]
fn acceptance_1_companion_alpha_beta_set() {
    let start = Instant::now();
    let g = group(&[7]);
    let set = ConnectingSet::parse_elements(&g, "(1),(2),(6)").unwrap();
    let combo = MatrixCombo::adjacency(set.clone());
    let a = cayley::adjacency_matrix(&g, &set).unwrap();

    let p3 = spectral::predict_elementary_divisors(&g, &combo, 3, PiMode::All).unwrap();
    let p2 = spectral::predict_elementary_divisors(&g, &combo, 2, PiMode::All).unwrap();
    assert_eq!(p3.multiplicity(1), 1);
    assert_eq!(p2.multiplicity(1), 3);
    assert_eq!(p2.multiplicity(0), 4);

    let oracle3 = snf::elementary_divisors_at(&a, 3).unwrap();
    let oracle2 = snf::elementary_divisors_at(&a, 2).unwrap();
    assert!(p3.matches_oracle(&oracle3));
    assert!(p2.matches_oracle(&oracle2));

    let smith_group = snf::cokernel_structure(&a).unwrap();
    assert_eq!(smith_group.to_string(), "Z/2 x Z/2 x Z/6 (+ Z^0)");
    assert!(start.elapsed().as_secs_f64() < 1.0);
    println!("acceptance 1 companion (alpha/beta set): PASS");
}

/// Criterion 2: the prediction-vs-oracle equivalence grid. Groups Z_q^n for
/// q <= 4 and q^n <= 256 plus a pinned family of mixed orders with
/// |G| <= 256; combos A_k (all k) and L_k (k >= 1); every prime p <= 50
/// with p coprime to |G|. The predicted per-power profile must equal the
/// Smith normal form oracle profile, including zero counts, with zero
/// mismatches.
#[test]
fn acceptance_2_equivalence_grid() {
    let start = Instant::now();
    let mut groups: Vec<Vec<u64>> = Vec::new();
    for q in 2u64..=4 {
        let mut n = 1;
        while q.pow(n) <= 256 {
            groups.push(vec![q; n as usize]);
            n += 1;
        }
    }
    let mixed: [&[u64]; 14] = [
        &[2, 3],
        &[2, 4],
        &[2, 5],
        &[2, 6],
        &[3, 4],
        &[3, 5],
        &[4, 5],
        &[4, 6],
        &[2, 2, 3],
        &[2, 3, 3],
        &[2, 3, 4],
        &[2, 3, 5],
        &[2, 3, 7],
        &[2, 2, 2, 3],
    ];
    groups.extend(mixed.iter().map(|o| o.to_vec()));

    let primes = primes_upto(50);
    let mut jobs = Vec::new();
    for orders in &groups {
        let spec = GroupSpec::new(orders.clone()).unwrap();
        assert!(spec.size() <= 256);
        jobs.extend(reports::weight_class_jobs(&spec, &primes).unwrap());
    }
    let rows = reports::run_verification(&jobs).unwrap();

    let mut matches = 0usize;
    let mut skipped = 0usize;
    for row in &rows {
        match &row.status {
            reports::VerificationStatus::Match => matches += 1,
            reports::VerificationStatus::Skipped(_) => skipped += 1,
            reports::VerificationStatus::Mismatch => {
                panic!(
                    "mismatch: group {} combo {} prime {}\n predicted {:?}\n oracle {:?}",
                    row.group, row.combo_label, row.prime, row.predicted, row.oracle
                );
            }
        }
    }
    assert!(matches > 1500, "grid unexpectedly small: {matches} matches");
    println!(
        "acceptance 2 (equivalence grid): PASS — {} groups, {} cases ({} matched, {} skipped) in {:.1?}",
        groups.len(),
        rows.len(),
        matches,
        skipped,
        start.elapsed()
    );
}

/// Criterion 3: for the maximal-distance matrix of H(n,q), the Smith
/// diagonal multiset equals the |eigenvalue| multiset.
#[test]
fn acceptance_3_hamming_max_distance() {
    for (n, q) in [(2u64, 2u64), (3, 2), (2, 3), (2, 4), (3, 3)] {
        let report = reports::hamming_report(n, q, n, 13).unwrap();
        assert_eq!(
            report.invariant_factors_equal_eigenvalues,
            Some(true),
            "H({n},{q}) k = {n}"
        );
        assert!(report.prime_rows.iter().all(|r| r.agrees));
    }
    println!("acceptance 3 (Hamming maximal-distance invariant factors): PASS");
}

/// Criterion 4: the odd-Sylow closed form for the n-cube critical group:
/// for n <= 7 and odd primes p <= 13, the oracle Sylow p-subgroup equals
/// prod_l Syl_p(Z_l)^C(n,l).
#[test]
fn acceptance_4_ncube_critical_sylow() {
    for n in 1u32..=7 {
        let spec = group(&vec![2; n as usize]);
        let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
        let critical = snf::critical_group(&spec, &e1).unwrap();
        for p in [3u64, 5, 7, 11, 13] {
            let formula = spectral::sylow_critical_ncube(n, p).unwrap();
            let oracle = critical.sylow(p);
            assert_eq!(formula, oracle, "n = {n}, p = {p}");
        }
    }
    println!("acceptance 4 (n-cube critical-group Sylow formula, n <= 7): PASS");
}

/// Criterion 5: the Cartesian-product closed form: for order tuples (2,3),
/// (3,4), (2,3,4) and primes p <= 13 dividing no factor order, the oracle
/// Sylow p-subgroup of the critical group matches the subset-product
/// formula.
#[test]
fn acceptance_5_cartesian_critical_sylow() {
    for orders in [vec![2u64, 3], vec![3, 4], vec![2, 3, 4]] {
        let spec = group(&orders);
        let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
        let critical = snf::critical_group(&spec, &e1).unwrap();
        for p in primes_upto(13) {
            if orders.iter().any(|&q| q % p == 0) {
                continue;
            }
            let formula = spectral::sylow_critical_cartesian(&orders, p).unwrap();
            let oracle = critical.sylow(p);
            assert_eq!(formula, oracle, "orders {orders:?}, p = {p}");
        }
    }
    println!("acceptance 5 (Cartesian-product critical-group Sylow formula): PASS");
}

/// Criterion 6: Matrix-Tree cross-check — the torsion order of the critical
/// group equals the principal-cofactor spanning-tree count for every
/// connected symmetric case of criteria 4 and 5.
#[test]
fn acceptance_6_matrix_tree() {
    let mut cases: Vec<Vec<u64>> = (1u32..=7).map(|n| vec![2; n as usize]).collect();
    cases.extend([vec![2, 3], vec![3, 4], vec![2, 3, 4]]);
    for orders in &cases {
        let spec = group(orders);
        let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
        assert!(e1.is_symmetric());
        assert_eq!(e1.component_count(&spec), 1);
        let critical = snf::critical_group(&spec, &e1).unwrap();
        let trees = snf::spanning_tree_count(&spec, &e1).unwrap();
        assert_eq!(critical.torsion_order(), trees, "orders {orders:?}");
        assert_eq!(critical.free_rank, 1);
    }
    // Two pinned values: the 3-cube has 384 spanning trees, the prism 75.
    let three_cube = group(&[2, 2, 2]);
    let e1 = ConnectingSet::weight_class(&three_cube, 1).unwrap();
    assert_eq!(
        snf::spanning_tree_count(&three_cube, &e1).unwrap(),
        BigInt::from(384)
    );
    let prism = group(&[2, 3]);
    let e1 = ConnectingSet::weight_class(&prism, 1).unwrap();
    assert_eq!(snf::spanning_tree_count(&prism, &e1).unwrap(), BigInt::from(75));
    println!("acceptance 6 (Matrix-Tree cross-check): PASS");
}

fn order_tuples_up_to(max: u64) -> Vec<Vec<u64>> {
    fn rec(min_order: u64, budget: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        let mut q = min_order;
        while q <= budget {
            current.push(q);
            rec(q, budget / q, current, out);
            current.pop();
            q += 1;
        }
    }
    let mut out = Vec::new();
    rec(2, max, &mut Vec::new(), &mut out);
    out
}

/// Criterion 7: the exact diagonalization identity
/// `M A_E^t conj(M)^t = |G| diag(char sums)` in cyclotomic arithmetic, for
/// every abelian group of order <= 32 (one fixed cyclic decomposition per
/// nondecreasing order tuple) with E = E_1, plus both Z_7 element sets.
#[test]
fn acceptance_7_diagonalization_identity() {
    let start = Instant::now();
    let tuples = order_tuples_up_to(32);
    let mut checked = 0;
    for orders in &tuples {
        let spec = group(orders);
        let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
        assert!(
            spectral::diagonalization_identity_holds(&spec, &e1).unwrap(),
            "identity fails for orders {orders:?}"
        );
        checked += 1;
    }
    let z7 = group(&[7]);
    for elems in ["(4),(5),(6)", "(1),(2),(6)"] {
        let set = ConnectingSet::parse_elements(&z7, elems).unwrap();
        assert!(spectral::diagonalization_identity_holds(&z7, &set).unwrap());
        checked += 1;
    }
    println!(
        "acceptance 7 (diagonalization identity, {} cases, |G| <= 32): PASS in {:.1?}",
        checked,
        start.elapsed()
    );
}

/// Criterion 8: property suites with pinned seeds — valuation axioms
/// (multiplicativity, agreement with v_p on integers, precision and
/// prime-choice independence), Smith normal form invariance under random
/// unimodular transforms and transposition, spectrum counting identities,
/// and the Krawtchouk-vs-character-sum equality for all n, q <= 5.
#[test]
fn acceptance_8_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    // Valuation axioms over several unramified contexts.
    for (p, m) in [(2u64, 7u64), (3, 7), (5, 4), (7, 12), (3, 8), (5, 6)] {
        let ctx = PrimeContext::new(p, m).unwrap();
        for _ in 0..25 {
            let sample = |rng: &mut ChaCha8Rng| {
                let coeffs: Vec<BigInt> = (0..m)
                    .map(|_| BigInt::from(rng.gen_range(-6i64..=6)))
                    .collect();
                CyclotomicInteger::from_working(m, coeffs)
            };
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let vx = ctx.valuation(&x).unwrap().finite().unwrap();
            let vy = ctx.valuation(&y).unwrap().finite().unwrap();
            let vxy = ctx.valuation(&(&x * &y)).unwrap().finite().unwrap();
            assert_eq!(vxy, vx + vy, "multiplicativity at (p,m)=({p},{m})");

            // Precision independence.
            let deeper = ctx.with_precision(ctx.precision() + 8).unwrap();
            assert_eq!(deeper.valuation(&x).unwrap().finite().unwrap(), vx);
        }
        // Rational integers valuate like v_p.
        for n in [1i64, 2, 3, 4, 6, 9, 12, 25, 49, 50, 98, -147, 2401] {
            let x = CyclotomicInteger::from_integer(m, BigInt::from(n));
            let v = ctx.valuation(&x).unwrap().finite().unwrap();
            assert_eq!(v, cayley_smith::arith::valuation_bigint(&BigInt::from(n), p));
        }
    }

    // Prime-choice independence of predicted profiles.
    let z7 = group(&[7]);
    for elems in ["(1),(2),(4)", "(1),(2),(6)", "(4),(5),(6)"] {
        let set = ConnectingSet::parse_elements(&z7, elems).unwrap();
        let combo = MatrixCombo::adjacency(set);
        let all = spectral::predict_elementary_divisors(&z7, &combo, 2, PiMode::All).unwrap();
        for idx in 0..2 {
            let single =
                spectral::predict_elementary_divisors(&z7, &combo, 2, PiMode::Factor(idx))
                    .unwrap();
            assert_eq!(single.per_power, all.per_power);
        }
    }

    // Smith normal form invariance under transposition and unimodular
    // transforms.
    for _ in 0..20 {
        let rows = rng.gen_range(1usize..=4);
        let cols = rng.gen_range(1usize..=4);
        let m_rows: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9i64..=9)).collect())
            .collect();
        let m = IntegerMatrix::from_rows(&m_rows);
        let base = snf::smith_normal_form(&m, false).unwrap().diagonal;
        let transposed = snf::smith_normal_form(&m.transpose(), false).unwrap().diagonal;
        assert_eq!(base, transposed);

        let mut u = IntegerMatrix::identity(rows).unwrap();
        let mut v = IntegerMatrix::identity(cols).unwrap();
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            if i != j {
                let mut shear = IntegerMatrix::identity(rows).unwrap();
                *shear.at_mut(i, j) = BigInt::from(rng.gen_range(-2i64..=2));
                u = shear.mul(&u);
            }
            let (i, j) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
            if i != j {
                let mut shear = IntegerMatrix::identity(cols).unwrap();
                *shear.at_mut(i, j) = BigInt::from(rng.gen_range(-2i64..=2));
                v = v.mul(&shear);
            }
        }
        assert_eq!(u.determinant().abs(), BigInt::one());
        assert_eq!(v.determinant().abs(), BigInt::one());
        let transformed = snf::smith_normal_form(&u.mul(&m).mul(&v), false).unwrap().diagonal;
        assert_eq!(base, transformed);
    }

    // Spectrum counting identities on random weight-class combos.
    for orders in [vec![2u64, 3], vec![3, 3], vec![2, 2, 2], vec![4, 3]] {
        let spec = group(&orders);
        for _ in 0..5 {
            let c0 = rng.gen_range(-4i64..=4);
            let mut identity_mass = c0;
            let mut terms = Vec::new();
            for k in 0..=spec.rank() {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    terms.push((c, ConnectingSet::weight_class(&spec, k).unwrap()));
                    if k == 0 {
                        identity_mass += c;
                    }
                }
            }
            let combo = MatrixCombo { identity_coeff: c0, terms };
            let s = spectral::spectrum_via_characters(&spec, &combo).unwrap();
            assert_eq!(s.total_multiplicity(), spec.size());
            assert_eq!(
                s.trace(),
                BigInt::from(spec.size()) * BigInt::from(identity_mass)
            );
            assert!(s.integer_entries().is_some());
        }
    }

    // Krawtchouk values equal the general character sums for all n, q <= 5.
    for n in 1..=5u64 {
        for q in 2..=5u64 {
            let spec = group(&vec![q; n as usize]);
            for l in 0..=n {
                let coords: Vec<u64> = (0..n).map(|i| u64::from(i >= l)).collect();
                let chi = spec.character(coords).unwrap();
                for k in 0..=n {
                    assert_eq!(
                        spectral::hamming_eigenvalue(n, q, k, l),
                        spectral::weight_class_character_sum(&spec, &chi, k as usize).unwrap()
                    );
                }
            }
        }
    }

    println!("acceptance 8 (property suites): PASS — 100% of checks");
}

/// Criterion 9: the 2-adic evidence table for the n-cube adjacency matrix
/// completes for n <= 6 with both columns populated from independent
/// computations, and matches the derived n = 2 row (i = 0: 2 = 2).
#[test]
fn acceptance_9_conjecture_evidence() {
    let start = Instant::now();
    let rows = reports::conjecture_table(6, false).unwrap();
    for n in 1u32..=6 {
        let n_rows: Vec<_> = rows.iter().filter(|r| r.n == n).collect();
        assert!(!n_rows.is_empty(), "no rows for n = {n}");
        // Both sides populated: the spectral column must account for every
        // even nonzero eigenvalue and the oracle column for every even
        // invariant factor.
        // Row i counts eigenvalues exactly divisible by 2^{i+1}, so the
        // column total over all rows is the number of even nonzero
        // eigenvalues.
        let spectral_total: u64 = n_rows.iter().map(|r| r.spectral_count).sum();
        let expected_even_eigs: u64 = (0..=n as u64)
            .filter(|&l| {
                let lambda = 2 * l as i64 - n as i64;
                lambda != 0 && lambda % 2 == 0
            })
            .map(|l| u64::try_from(binomial(n as u64, l)).unwrap())
            .sum();
        assert_eq!(
            spectral_total, expected_even_eigs,
            "spectral column inconsistent at n = {n}"
        );
        // The oracle column total over all rows accounts for every nonzero
        // invariant factor.
        let snf_total: u64 = n_rows.iter().map(|r| r.snf_mult).sum();
        let spec = group(&vec![2; n as usize]);
        let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
        let a = cayley::adjacency_matrix(&spec, &e1).unwrap();
        assert_eq!(snf_total as usize, a.rank(), "oracle column inconsistent at n = {n}");
    }
    let row = rows.iter().find(|r| r.n == 2 && r.i == 0).unwrap();
    assert_eq!((row.snf_mult, row.spectral_count), (2, 2), "derived n = 2 row");
    assert!(row.agrees);
    assert!(start.elapsed().as_secs() < 600, "exceeded 10 minutes");
    println!(
        "acceptance 9 (2-adic evidence table, n <= 6): PASS in {:.1?}",
        start.elapsed()
    );
}

/// The spectral side of the evidence table for n = 2 counts eigenvalues
/// {-2, 0, 0, 2}: sanity for the helper used in criterion 9.
#[test]
fn conjecture_row_sanity_n2() {
    let rows = reports::conjecture_table(2, false).unwrap();
    let r = rows.iter().find(|r| r.n == 2 && r.i == 0).unwrap();
    assert_eq!(r.snf_mult, 2);
    assert_eq!(r.spectral_count, 2);
    let spec = group(&[2, 2]);
    let e1 = ConnectingSet::weight_class(&spec, 1).unwrap();
    let a = cayley::adjacency_matrix(&spec, &e1).unwrap();
    let snf = snf::smith_normal_form(&a, false).unwrap();
    let diag: Vec<i64> = snf.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect();
    assert_eq!(diag, vec![1, 1, 0, 0]);
    assert_eq!(valuation_u64(2, 2), 1);
}
