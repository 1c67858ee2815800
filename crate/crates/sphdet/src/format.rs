//! JSON, CSV and Markdown encodings of exact values and Hessian tables.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sphdet_core::hessians::{conjecture_prediction, HessianCell};
use sphdet_core::scalar::rational_from_parts;
use sphdet_core::{ExactScalar, PoleRational, Sign};

/// Digits after the decimal point in `approx` fields unless overridden.
pub const DEFAULT_DIGITS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed rational {num}/{den}")]
    BadRational { num: String, den: String },
    #[error("unknown sign symbol {0:?}")]
    BadSign(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "md" => Ok(OutputFormat::Md),
            other => Err(format!("unknown format {other:?}, expected json|csv|md")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub pi2_power: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub terms: Vec<TermJson>,
    pub approx: String,
}

impl ScalarJson {
    pub fn encode(x: &ExactScalar, digits: usize) -> Self {
        let terms = x
            .terms()
            .map(|(p, c)| TermJson { pi2_power: p, num: c.numer().to_string(), den: c.denom().to_string() })
            .collect();
        ScalarJson { terms, approx: x.to_decimal_string(digits) }
    }

    pub fn decode(&self) -> Result<ExactScalar, FormatError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = rational_from_parts(&t.num, &t.den)
                .ok_or_else(|| FormatError::BadRational { num: t.num.clone(), den: t.den.clone() })?;
            terms.push((t.pi2_power, c));
        }
        Ok(ExactScalar::from_terms(terms))
    }
}

pub fn scalar_to_json(x: &ExactScalar, digits: usize) -> String {
    serde_json::to_string(&ScalarJson::encode(x, digits)).expect("plain data serializes")
}

pub fn scalar_from_json(s: &str) -> Result<ExactScalar, FormatError> {
    serde_json::from_str::<ScalarJson>(s)?.decode()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub n: u32,
    pub k: u64,
    pub value: ScalarJson,
    pub per_phi2: ScalarJson,
    pub sign: String,
}

impl CellJson {
    pub fn encode(c: &HessianCell, digits: usize) -> Self {
        CellJson {
            n: c.n,
            k: c.k,
            value: ScalarJson::encode(&c.value, digits),
            per_phi2: ScalarJson::encode(&c.per_phi2, digits),
            sign: c.sign.symbol().to_string(),
        }
    }

    pub fn decode(&self) -> Result<HessianCell, FormatError> {
        Ok(HessianCell {
            n: self.n,
            k: self.k,
            value: self.value.decode()?,
            per_phi2: self.per_phi2.decode()?,
            sign: Sign::from_symbol(&self.sign).ok_or_else(|| FormatError::BadSign(self.sign.clone()))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleTermJson {
    pub ell: u64,
    pub order: u32,
    pub numerator: ScalarJson,
}

/// Debug view of a pole-decomposed summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleRationalJson {
    pub poly_part: Vec<ScalarJson>,
    pub pole_terms: Vec<PoleTermJson>,
}

impl PoleRationalJson {
    pub fn encode(p: &PoleRational<ExactScalar>, digits: usize) -> Self {
        PoleRationalJson {
            poly_part: p.poly_part.coeffs().iter().map(|c| ScalarJson::encode(c, digits)).collect(),
            pole_terms: p
                .pole_terms
                .iter()
                .map(|t| PoleTermJson { ell: t.ell, order: t.order, numerator: ScalarJson::encode(&t.numerator, digits) })
                .collect(),
        }
    }
}

/// Value printed in the `sign` columns; `?` where no prediction applies.
fn predicted_symbol(n: u32, k: u64) -> &'static str {
    conjecture_prediction(n, k).map(Sign::symbol).unwrap_or("?")
}

pub fn cells_json(cells: &[HessianCell], digits: usize) -> String {
    let rows: Vec<CellJson> = cells.iter().map(|c| CellJson::encode(c, digits)).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn cells_csv(cells: &[HessianCell], digits: usize) -> String {
    let mut out = String::from("n,k,value_exact,value_approx,sign,predicted_sign\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},\"{}\",{},{},{}",
            c.n,
            c.k,
            c.value,
            c.value.to_decimal_string(digits),
            c.sign.symbol(),
            predicted_symbol(c.n, c.k)
        );
    }
    out
}

/// Sign grid split into the `1 < k < n−1` and `k ≥ n−1` regimes, each cell
/// `computed/predicted`, followed by a mismatch count.
pub fn cells_markdown(cells: &[HessianCell]) -> String {
    let mut ns: Vec<u32> = cells.iter().map(|c| c.n).collect();
    ns.dedup();
    let mut ks: Vec<u64> = cells.iter().map(|c| c.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut out = String::new();
    for (title, low) in [("1 < k < n-1", true), ("k >= n-1", false)] {
        let _ = writeln!(out, "### {title}\n");
        out.push_str("| n |");
        for k in &ks {
            let _ = write!(out, " k={k} |");
        }
        out.push_str("\n|---|");
        for _ in &ks {
            out.push_str("---|");
        }
        out.push('\n');
        for &n in &ns {
            let _ = write!(out, "| {n} |");
            for &k in &ks {
                let in_regime = if low { k + 1 < n as u64 } else { k + 1 >= n as u64 };
                match cells.iter().find(|c| c.n == n && c.k == k) {
                    Some(c) if in_regime => {
                        let _ = write!(out, " {}/{} |", c.sign.symbol(), predicted_symbol(n, k));
                    }
                    _ => out.push_str("  |"),
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    let _ = writeln!(out, "mismatches: {}", mismatches(cells).len());
    out
}

pub fn render_cells(cells: &[HessianCell], format: OutputFormat, digits: usize) -> String {
    match format {
        OutputFormat::Json => cells_json(cells, digits),
        OutputFormat::Csv => cells_csv(cells, digits),
        OutputFormat::Md => cells_markdown(cells),
    }
}

/// Cells whose sign differs from the predicted one.
pub fn mismatches(cells: &[HessianCell]) -> Vec<&HessianCell> {
    cells.iter().filter(|c| conjecture_prediction(c.n, c.k).is_some_and(|p| p != c.sign)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sphdet_core::scalar::rat;

    #[test]
    fn scalar_shape() {
        let x = ExactScalar::from_terms([(1, rat(3, 2)), (0, rat(115, 16))]);
        let v: serde_json::Value = serde_json::from_str(&scalar_to_json(&x, 6)).unwrap();
        assert_eq!(v["terms"][0]["pi2_power"], 0);
        assert_eq!(v["terms"][0]["num"], "115");
        assert_eq!(v["terms"][1]["den"], "2");
        assert_eq!(v["approx"], "21.991907");
        assert_eq!(scalar_from_json(&scalar_to_json(&x, 6)).unwrap(), x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(scalar_from_json(r#"{"terms":[{"pi2_power":0,"num":"1","den":"0"}],"approx":"0"}"#).is_err());
        assert!(scalar_from_json(r#"{"terms":[{"pi2_power":0,"num":"x","den":"1"}],"approx":"0"}"#).is_err());
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
