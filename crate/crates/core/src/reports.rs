//! Report builders behind the command-line front end: prediction-vs-oracle
//! verification grids, n-cube / Hamming / Cartesian-product family reports,
//! and the 2-adic evidence table for the n-cube Smith group.
//!
//! Everything here returns plain data; rendering (JSON or tables) lives in
//! the CLI crate.

use crate::arith::{primes_upto, valuation_bigint};
use crate::cayley::{self, ConnectingSet, MatrixCombo};
use crate::error::Result;
use crate::group::GroupSpec;
use crate::snf::{
    self, AbelianGroupStructure, ElementaryDivisorProfile, SmithDecomposition,
};
use crate::spectral::{self, PiMode, PredictedProfile};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

/// One (group, combo) verification job, checked at several primes.
#[derive(Debug, Clone)]
pub struct VerificationJob {
    pub group: GroupSpec,
    pub combo: MatrixCombo,
    pub label: String,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationStatus {
    Match,
    Mismatch,
    Skipped(String),
}

impl std::fmt::Display for VerificationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerificationStatus::Match => write!(f, "MATCH"),
            VerificationStatus::Mismatch => write!(f, "MISMATCH"),
            VerificationStatus::Skipped(reason) => write!(f, "SKIPPED({reason})"),
        }
    }
}

/// One row of a verification grid: a (group, combo, prime) case with the
/// spectral prediction, the Smith normal form oracle, and the verdict.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub group: String,
    pub combo_label: String,
    pub prime: u64,
    pub predicted: Option<PredictedProfile>,
    pub oracle: Option<ElementaryDivisorProfile>,
    pub status: VerificationStatus,
}

/// The standard per-group job list: adjacency matrices `A_k` of every weight
/// class and Laplacians `L_k` of the nonempty ones.
pub fn weight_class_jobs(group: &GroupSpec, primes: &[u64]) -> Result<Vec<VerificationJob>> {
    let n = group.rank();
    let mut jobs = Vec::new();
    for k in 0..=n {
        let set = ConnectingSet::weight_class(group, k)?;
        jobs.push(VerificationJob {
            group: group.clone(),
            combo: MatrixCombo::adjacency(set),
            label: format!("A{k}"),
            primes: primes.to_vec(),
        });
    }
    for k in 1..=n {
        let set = ConnectingSet::weight_class(group, k)?;
        jobs.push(VerificationJob {
            group: group.clone(),
            combo: MatrixCombo::laplacian(set),
            label: format!("L{k}"),
            primes: primes.to_vec(),
        });
    }
    Ok(jobs)
}

/// Run the verification jobs; cases are independent and run concurrently.
/// Per job the spectrum and the Smith normal form are computed once and
/// reused across primes.
pub fn run_verification(jobs: &[VerificationJob]) -> Result<Vec<VerificationReport>> {
    let nested: Vec<Result<Vec<VerificationReport>>> =
        jobs.par_iter().map(run_single_job).collect();
    let mut out = Vec::new();
    for group in nested {
        out.extend(group?);
    }
    Ok(out)
}

fn run_single_job(job: &VerificationJob) -> Result<Vec<VerificationReport>> {
    let size = job.group.size();
    let applicable: Vec<u64> = job.primes.iter().copied().filter(|p| size % p != 0).collect();
    let mut spectrum = None;
    let mut diagonal: Option<Vec<BigInt>> = None;
    if !applicable.is_empty() {
        spectrum = Some(spectral::spectrum_via_characters(&job.group, &job.combo)?);
        let matrix = cayley::combo_matrix(&job.group, &job.combo)?;
        diagonal = Some(snf::smith_normal_form(&matrix, false)?.diagonal);
    }
    let mut out = Vec::with_capacity(job.primes.len());
    for &p in &job.primes {
        if size % p == 0 {
            out.push(VerificationReport {
                group: job.group.to_string(),
                combo_label: job.label.clone(),
                prime: p,
                predicted: None,
                oracle: None,
                status: VerificationStatus::Skipped(format!("{p} divides |G| = {size}")),
            });
            continue;
        }
        let predicted = spectral::predict_with_spectrum(
            &job.group,
            spectrum.as_ref().unwrap(),
            p,
            PiMode::Default,
        )?;
        let oracle =
            ElementaryDivisorProfile::from_diagonal(diagonal.as_ref().unwrap(), p);
        let status = if predicted.matches_oracle(&oracle) {
            VerificationStatus::Match
        } else {
            VerificationStatus::Mismatch
        };
        out.push(VerificationReport {
            group: job.group.to_string(),
            combo_label: job.label.clone(),
            prime: p,
            predicted: Some(predicted),
            oracle: Some(oracle),
            status,
        });
    }
    Ok(out)
}

/// Prediction-vs-oracle comparison at one prime.
#[derive(Debug, Clone)]
pub struct PrimeComparison {
    pub p: u64,
    pub predicted: PredictedProfile,
    pub oracle: ElementaryDivisorProfile,
    pub agrees: bool,
}

/// Sylow comparison at one prime: closed-form prediction vs oracle Sylow
/// subgroup of the critical group.
#[derive(Debug, Clone)]
pub struct SylowComparison {
    pub p: u64,
    pub formula: AbelianGroupStructure,
    pub oracle: AbelianGroupStructure,
    pub agrees: bool,
}

/// Everything the n-cube report checks and displays.
#[derive(Debug, Clone)]
pub struct NcubeReport {
    pub n: u32,
    pub adjacency_spectrum: Vec<(BigInt, BigInt)>,
    pub laplacian_spectrum: Vec<(BigInt, BigInt)>,
    pub adjacency_diagonal: Vec<BigInt>,
    pub laplacian_diagonal: Vec<BigInt>,
    pub two_rank_adjacency: u64,
    pub two_rank_laplacian: u64,
    /// Odd n: the adjacency matrix is nonsingular with odd invariant factors.
    pub odd_case_holds: Option<bool>,
    /// Even n: 2-rank(A) = 2-rank(L) = 2^{n-1}.
    pub even_case_holds: Option<bool>,
    /// Largest i with L ≡ A mod 2^i.
    pub congruence_exponent: u32,
    /// Multiplicities of 2^j, j < congruence_exponent, agree between A and L.
    pub congruence_multiplicities_agree: bool,
    /// Odd-part elementary divisors of A: prediction vs oracle.
    pub odd_prime_rows: Vec<PrimeComparison>,
    pub critical_group: AbelianGroupStructure,
    pub spanning_trees: BigInt,
    pub sylow_rows: Vec<SylowComparison>,
}

pub fn ncube_report(n: u32, max_prime: u64) -> Result<NcubeReport> {
    let group = GroupSpec::new(vec![2; n as usize])?;
    let e1 = ConnectingSet::weight_class(&group, 1)?;
    let a = cayley::adjacency_matrix(&group, &e1)?;
    let l = cayley::laplacian(&group, &e1)?;
    let a_snf = snf::smith_normal_form(&a, false)?;
    let l_snf = snf::smith_normal_form(&l, false)?;

    let two_rank = |snf: &SmithDecomposition| -> u64 {
        snf.diagonal
            .iter()
            .filter(|d| !d.is_zero() && d.is_odd())
            .count() as u64
    };
    let two_rank_adjacency = two_rank(&a_snf);
    let two_rank_laplacian = two_rank(&l_snf);
    debug_assert_eq!(two_rank_adjacency as usize, a.rank_mod_p(2));
    debug_assert_eq!(two_rank_laplacian as usize, l.rank_mod_p(2));

    let odd_case_holds = (n % 2 == 1).then(|| {
        a_snf.zero_count() == 0 && a_snf.diagonal.iter().all(|d| d.is_odd())
    });
    let even_case_holds = (n % 2 == 0).then(|| {
        let half = 1u64 << (n - 1);
        two_rank_adjacency == half && two_rank_laplacian == half
    });

    // L - A = nI - 2A; the congruence level is v_2 of the entry gcd.
    let mut entry_gcd = BigInt::zero();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let d = l.at(i, j) - a.at(i, j);
            entry_gcd = entry_gcd.gcd(&d);
        }
    }
    let congruence_exponent = if entry_gcd.is_zero() {
        u32::MAX
    } else {
        valuation_bigint(&entry_gcd, 2)
    };
    let a_profile2 = ElementaryDivisorProfile::from_diagonal(&a_snf.diagonal, 2);
    let l_profile2 = ElementaryDivisorProfile::from_diagonal(&l_snf.diagonal, 2);
    let congruence_multiplicities_agree = (0..congruence_exponent.min(64))
        .all(|j| a_profile2.multiplicity(j) == l_profile2.multiplicity(j));

    let spectrum = spectral::spectrum_via_characters(&group, &MatrixCombo::adjacency(e1.clone()))?;
    let mut odd_prime_rows = Vec::new();
    for p in primes_upto(max_prime) {
        if p == 2 {
            continue;
        }
        let predicted = spectral::predict_with_spectrum(&group, &spectrum, p, PiMode::Default)?;
        let oracle = ElementaryDivisorProfile::from_diagonal(&a_snf.diagonal, p);
        let agrees = predicted.matches_oracle(&oracle);
        odd_prime_rows.push(PrimeComparison { p, predicted, oracle, agrees });
    }

    let critical_group = AbelianGroupStructure::from_smith_diagonal(&l_snf.diagonal, l.rows());
    let spanning_trees = snf::spanning_tree_count(&group, &e1)?;
    let mut sylow_rows = Vec::new();
    for p in primes_upto(max_prime) {
        if p == 2 {
            continue;
        }
        let formula = spectral::sylow_critical_ncube(n, p)?;
        let oracle = critical_group.sylow(p);
        let agrees = formula == oracle;
        sylow_rows.push(SylowComparison { p, formula, oracle, agrees });
    }

    Ok(NcubeReport {
        n,
        adjacency_spectrum: spectral::cartesian_adjacency_spectrum(&vec![2; n as usize]),
        laplacian_spectrum: spectral::cartesian_laplacian_spectrum(&vec![2; n as usize]),
        adjacency_diagonal: a_snf.diagonal,
        laplacian_diagonal: l_snf.diagonal,
        two_rank_adjacency,
        two_rank_laplacian,
        odd_case_holds,
        even_case_holds,
        congruence_exponent,
        congruence_multiplicities_agree,
        odd_prime_rows,
        critical_group,
        spanning_trees,
        sylow_rows,
    })
}

/// Hamming scheme report for the distance-`k` matrix of `H(n,q)`.
#[derive(Debug, Clone)]
pub struct HammingReport {
    pub n: u64,
    pub q: u64,
    pub k: u64,
    /// Closed-form spectrum, aggregated over equal values.
    pub spectrum: Vec<(BigInt, BigInt)>,
    pub diagonal: Vec<BigInt>,
    pub prime_rows: Vec<PrimeComparison>,
    /// For k = n: the invariant factors equal the eigenvalues (up to sign).
    pub invariant_factors_equal_eigenvalues: Option<bool>,
}

pub fn hamming_report(n: u64, q: u64, k: u64, max_prime: u64) -> Result<HammingReport> {
    let group = GroupSpec::new(vec![q; n as usize])?;
    let set = ConnectingSet::weight_class(&group, k as usize)?;
    let combo = MatrixCombo::adjacency(set);

    let mut grouped: std::collections::BTreeMap<BigInt, BigInt> = std::collections::BTreeMap::new();
    for l in 0..=n {
        let value = spectral::hamming_eigenvalue(n, q, k, l);
        let mult = spectral::hamming_multiplicity(n, q, l);
        *grouped.entry(value).or_insert_with(BigInt::zero) += mult;
    }
    let spectrum: Vec<(BigInt, BigInt)> = grouped.into_iter().collect();

    let matrix = cayley::combo_matrix(&group, &combo)?;
    let diagonal = snf::smith_normal_form(&matrix, false)?.diagonal;

    let char_spectrum = spectral::spectrum_via_characters(&group, &combo)?;
    let mut prime_rows = Vec::new();
    for p in primes_upto(max_prime) {
        if group.size() % p == 0 {
            continue;
        }
        let predicted = spectral::predict_with_spectrum(&group, &char_spectrum, p, PiMode::Default)?;
        let oracle = ElementaryDivisorProfile::from_diagonal(&diagonal, p);
        let agrees = predicted.matches_oracle(&oracle);
        prime_rows.push(PrimeComparison { p, predicted, oracle, agrees });
    }

    let invariant_factors_equal_eigenvalues = (k == n).then(|| {
        let mut eigen_abs: Vec<BigInt> = Vec::new();
        for (value, mult) in &spectrum {
            let count = u64::try_from(mult).expect("multiplicity fits u64");
            for _ in 0..count {
                eigen_abs.push(num_traits::Signed::abs(value));
            }
        }
        eigen_abs.sort();
        let mut diag_sorted = diagonal.clone();
        diag_sorted.sort();
        eigen_abs == diag_sorted
    });

    Ok(HammingReport {
        n,
        q,
        k,
        spectrum,
        diagonal,
        prime_rows,
        invariant_factors_equal_eigenvalues,
    })
}

/// Cartesian product of complete graphs: spectra, critical group, and the
/// closed-form Sylow predictions.
#[derive(Debug, Clone)]
pub struct CartesianReport {
    pub orders: Vec<u64>,
    pub adjacency_spectrum: Vec<(BigInt, BigInt)>,
    pub laplacian_spectrum: Vec<(BigInt, BigInt)>,
    pub critical_group: AbelianGroupStructure,
    pub spanning_trees: BigInt,
    pub matrix_tree_agrees: bool,
    pub sylow_rows: Vec<SylowComparison>,
}

pub fn cartesian_report(orders: &[u64], max_prime: u64) -> Result<CartesianReport> {
    let group = GroupSpec::new(orders.to_vec())?;
    let e1 = ConnectingSet::weight_class(&group, 1)?;
    let critical_group = snf::critical_group(&group, &e1)?;
    let spanning_trees = snf::spanning_tree_count(&group, &e1)?;
    let matrix_tree_agrees = critical_group.torsion_order() == spanning_trees;
    let mut sylow_rows = Vec::new();
    for p in primes_upto(max_prime) {
        if orders.iter().any(|&q| q % p == 0) {
            continue;
        }
        let formula = spectral::sylow_critical_cartesian(orders, p)?;
        let oracle = critical_group.sylow(p);
        let agrees = formula == oracle;
        sylow_rows.push(SylowComparison { p, formula, oracle, agrees });
    }
    Ok(CartesianReport {
        orders: orders.to_vec(),
        adjacency_spectrum: spectral::cartesian_adjacency_spectrum(orders),
        laplacian_spectrum: spectral::cartesian_laplacian_spectrum(orders),
        critical_group,
        spanning_trees,
        matrix_tree_agrees,
        sylow_rows,
    })
}

/// One row of the 2-adic evidence table for the n-cube adjacency matrix:
/// the multiplicity of `2^i` among the invariant factors (oracle) next to
/// the number of eigenvalues exactly divisible by `2^{i+1}` (spectral side).
/// Both columns are computed independently; the command reports evidence
/// and draws no verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: u32,
    pub i: u32,
    pub snf_mult: u64,
    pub spectral_count: u64,
    pub agrees: bool,
}

/// Evidence table for n = 1..=n_max. With `use_padic`, the invariant-factor
/// side uses the single-prime elimination instead of the full Smith normal
/// form.
pub fn conjecture_table(n_max: u32, use_padic: bool) -> Result<Vec<ConjectureRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let group = GroupSpec::new(vec![2; n as usize])?;
        let e1 = ConnectingSet::weight_class(&group, 1)?;
        let a = cayley::adjacency_matrix(&group, &e1)?;
        let profile = if use_padic {
            snf::elementary_divisors_via_padic(&a, 2)?
        } else {
            snf::elementary_divisors_at(&a, 2)?
        };
        // Spectral side: eigenvalues 2l - n with multiplicity C(n,l).
        let mut by_valuation: std::collections::BTreeMap<u32, u64> = std::collections::BTreeMap::new();
        for (value, mult) in spectral::cartesian_adjacency_spectrum(&vec![2; n as usize]) {
            if value.is_zero() {
                continue;
            }
            let v = valuation_bigint(&value, 2);
            *by_valuation.entry(v).or_insert(0) += u64::try_from(&mult).expect("fits u64");
        }
        let max_snf = profile.multiplicities.keys().max().copied().unwrap_or(0);
        let max_spec = by_valuation.keys().max().map_or(0, |&v| v.saturating_sub(1));
        let i_max = max_snf.max(max_spec).max(1);
        for i in 0..=i_max {
            let snf_mult = profile.multiplicity(i);
            let spectral_count = by_valuation.get(&(i + 1)).copied().unwrap_or(0);
            rows.push(ConjectureRow {
                n,
                i,
                snf_mult,
                spectral_count,
                agrees: snf_mult == spectral_count,
            });
        }
    }
    Ok(rows)
}
