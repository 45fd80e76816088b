//! JSON and plain-table rendering of report data.
//!
//! JSON objects are built as `serde_json::Value` maps (sorted keys), with
//! big integers serialized as decimal strings, so re-parsing and
//! re-serializing a report is byte-identical.

use cayley_smith::reports::{
    CartesianReport, ConjectureRow, HammingReport, NcubeReport, PrimeComparison,
    SylowComparison, VerificationReport, VerificationStatus,
};
use cayley_smith::snf::{AbelianGroupStructure, ElementaryDivisorProfile, SmithDecomposition};
use cayley_smith::spectral::{PredictedProfile, Spectrum};
use cayley_smith::{GroupSpec, IntegerMatrix};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn big_vec(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

fn pair_list(pairs: &[(BigInt, BigInt)]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|(v, m)| json!({"value": big(v), "multiplicity": big(m)}))
            .collect(),
    )
}

pub fn group_json(spec: &GroupSpec) -> Value {
    json!({
        "orders": spec.orders(),
        "size": spec.size(),
        "exponent": spec.exponent(),
    })
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|e| {
            let mut obj = Map::new();
            obj.insert("m".into(), json!(e.value.modulus()));
            obj.insert(
                "coeffs".into(),
                Value::Array(e.value.coeffs().iter().map(big).collect()),
            );
            if let Some(n) = e.value.as_integer() {
                obj.insert("integer".into(), big(&n));
            }
            obj.insert("multiplicity".into(), json!(e.multiplicity));
            Value::Object(obj)
        })
        .collect();
    json!({
        "group_size": s.group_size,
        "entries": entries,
        "trace": big(&s.trace()),
    })
}

pub fn predicted_json(p: &PredictedProfile) -> Value {
    let per_power: Map<String, Value> = p
        .per_power
        .iter()
        .map(|(i, c)| (i.to_string(), json!(c)))
        .collect();
    json!({
        "p": p.p,
        "per_power": per_power,
        "zero_eigenvalues": p.infinite_count,
        "pi": p.pi_choice.to_string(),
    })
}

pub fn oracle_json(p: &ElementaryDivisorProfile) -> Value {
    let mult: Map<String, Value> = p
        .multiplicities
        .iter()
        .map(|(i, c)| (i.to_string(), json!(c)))
        .collect();
    json!({
        "p": p.p,
        "per_power": mult,
        "zero_count": p.zero_count,
    })
}

pub fn structure_json(s: &AbelianGroupStructure) -> Value {
    json!({
        "invariant_factors": big_vec(&s.invariant_factors),
        "free_rank": s.free_rank,
        "display": s.to_string(),
    })
}

pub fn snf_json(snf: &SmithDecomposition) -> Value {
    let mut obj = Map::new();
    obj.insert("diagonal".into(), big_vec(&snf.diagonal));
    obj.insert("rank".into(), json!(snf.rank()));
    obj.insert("zero_count".into(), json!(snf.zero_count()));
    if let Some(p) = &snf.p {
        obj.insert("p".into(), matrix_json(p));
    }
    if let Some(q) = &snf.q {
        obj.insert("q".into(), matrix_json(q));
    }
    Value::Object(obj)
}

pub fn matrix_json(m: &IntegerMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(big).collect()))
            .collect(),
    )
}

pub fn verification_json(rows: &[VerificationReport]) -> Value {
    let mut matches = 0u64;
    let mut mismatches = 0u64;
    let mut skipped = 0u64;
    let row_values: Vec<Value> = rows
        .iter()
        .map(|r| {
            match r.status {
                VerificationStatus::Match => matches += 1,
                VerificationStatus::Mismatch => mismatches += 1,
                VerificationStatus::Skipped(_) => skipped += 1,
            }
            let mut obj = Map::new();
            obj.insert("group".into(), json!(r.group));
            obj.insert("combo".into(), json!(r.combo_label));
            obj.insert("prime".into(), json!(r.prime));
            obj.insert("status".into(), json!(r.status.to_string()));
            if let Some(p) = &r.predicted {
                obj.insert("predicted".into(), predicted_json(p));
            }
            if let Some(o) = &r.oracle {
                obj.insert("oracle".into(), oracle_json(o));
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "rows": row_values,
        "counts": {"match": matches, "mismatch": mismatches, "skipped": skipped},
    })
}

fn prime_rows_json(rows: &[PrimeComparison]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "p": r.p,
                    "predicted": predicted_json(&r.predicted),
                    "oracle": oracle_json(&r.oracle),
                    "agrees": r.agrees,
                })
            })
            .collect(),
    )
}

fn sylow_rows_json(rows: &[SylowComparison]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "p": r.p,
                    "formula": structure_json(&r.formula),
                    "oracle": structure_json(&r.oracle),
                    "agrees": r.agrees,
                })
            })
            .collect(),
    )
}

pub fn ncube_json(r: &NcubeReport) -> Value {
    json!({
        "n": r.n,
        "adjacency_spectrum": pair_list(&r.adjacency_spectrum),
        "laplacian_spectrum": pair_list(&r.laplacian_spectrum),
        "adjacency_diagonal": big_vec(&r.adjacency_diagonal),
        "laplacian_diagonal": big_vec(&r.laplacian_diagonal),
        "two_rank_adjacency": r.two_rank_adjacency,
        "two_rank_laplacian": r.two_rank_laplacian,
        "odd_case_holds": r.odd_case_holds,
        "even_case_holds": r.even_case_holds,
        "congruence_exponent": r.congruence_exponent,
        "congruence_multiplicities_agree": r.congruence_multiplicities_agree,
        "odd_prime_divisors": prime_rows_json(&r.odd_prime_rows),
        "critical_group": structure_json(&r.critical_group),
        "spanning_trees": big(&r.spanning_trees),
        "sylow_checks": sylow_rows_json(&r.sylow_rows),
    })
}

pub fn hamming_json(r: &HammingReport) -> Value {
    json!({
        "n": r.n,
        "q": r.q,
        "k": r.k,
        "spectrum": pair_list(&r.spectrum),
        "diagonal": big_vec(&r.diagonal),
        "prime_rows": prime_rows_json(&r.prime_rows),
        "invariant_factors_equal_eigenvalues": r.invariant_factors_equal_eigenvalues,
    })
}

pub fn cartesian_json(r: &CartesianReport) -> Value {
    json!({
        "orders": r.orders,
        "adjacency_spectrum": pair_list(&r.adjacency_spectrum),
        "laplacian_spectrum": pair_list(&r.laplacian_spectrum),
        "critical_group": structure_json(&r.critical_group),
        "spanning_trees": big(&r.spanning_trees),
        "matrix_tree_agrees": r.matrix_tree_agrees,
        "sylow_checks": sylow_rows_json(&r.sylow_rows),
    })
}

pub fn conjecture_json(rows: &[ConjectureRow]) -> Value {
    json!({
        "note": "evidence table: both columns computed independently; no verdict",
        "rows": rows.iter().map(|r| json!({
            "n": r.n,
            "i": r.i,
            "snf_mult": r.snf_mult,
            "spectral_count": r.spectral_count,
            "agrees": r.agrees,
        })).collect::<Vec<Value>>(),
    })
}

/// Minimal aligned-column text table.
pub fn format_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.len());
            }
        }
    }
    let render_row = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:width$}", c, width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = String::new();
    let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    out.push_str(&render_row(&header_cells));
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    out.push('\n');
    for row in rows {
        out.push_str(&render_row(row));
        out.push('\n');
    }
    out
}

pub fn verification_table(rows: &[VerificationReport]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.combo_label.clone(),
                r.prime.to_string(),
                r.status.to_string(),
            ]
        })
        .collect();
    format_table(&["group", "combo", "prime", "status"], &body)
}

pub fn spectrum_table(s: &Spectrum) -> String {
    let body: Vec<Vec<String>> = s
        .entries
        .iter()
        .map(|e| {
            let shown = match e.value.as_integer() {
                Some(n) => n.to_string(),
                None => e.value.to_string(),
            };
            vec![shown, e.multiplicity.to_string()]
        })
        .collect();
    format_table(&["eigenvalue", "multiplicity"], &body)
}

pub fn conjecture_text_table(rows: &[ConjectureRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.i.to_string(),
                r.snf_mult.to_string(),
                r.spectral_count.to_string(),
                if r.agrees { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let mut out = String::from("evidence table (no verdict): multiplicity of 2^i vs eigenvalues exactly divisible by 2^{i+1}\n");
    out.push_str(&format_table(
        &["n", "i", "snf_mult", "spectral_count", "agrees"],
        &body,
    ));
    out
}
