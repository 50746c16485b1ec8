//! File formats: filter-bank JSON, signal CSV, pyramid directories and 2-D matrices.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::filterbank::{CoefficientPyramid, FilterBank};
use crate::separable2d::FiniteSequence2D;
use crate::sequences::FiniteSequence;

/// `{offset, taps}` as stored in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub offset: i64,
    pub taps: Vec<f64>,
}

impl From<&FiniteSequence> for SequenceFile {
    fn from(s: &FiniteSequence) -> Self {
        SequenceFile {
            offset: s.offset(),
            taps: s.taps().to_vec(),
        }
    }
}

impl SequenceFile {
    fn to_sequence(&self) -> Result<FiniteSequence, CliError> {
        if self.taps.is_empty() {
            return Err(CliError::Input("sequence has no taps".into()));
        }
        FiniteSequence::try_new(self.offset, self.taps.clone()).map_err(CliError::from)
    }
}

/// JSON form of a filter bank. Floats are written as the shortest round-trip decimal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterBankFile {
    pub name: String,
    pub lowpass: SequenceFile,
    pub highpass: Vec<SequenceFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl FilterBankFile {
    pub fn from_bank(bank: &FilterBank, provenance: Option<String>) -> Self {
        FilterBankFile {
            name: bank.name().to_string(),
            lowpass: bank.lowpass().into(),
            highpass: bank.highpass().iter().map(SequenceFile::from).collect(),
            provenance,
        }
    }

    pub fn to_bank(&self) -> Result<FilterBank, CliError> {
        let h = self.lowpass.to_sequence()?;
        let g = self
            .highpass
            .iter()
            .map(SequenceFile::to_sequence)
            .collect::<Result<Vec<_>, _>>()?;
        FilterBank::new(self.name.clone(), h, g).map_err(CliError::from)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("filter bank JSON: {e}")))
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, renamed on success.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `out` or, when absent, to standard output.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{what}: cannot parse {s:?} as a number")))?;
    if !v.is_finite() {
        return Err(CliError::Input(format!("{what}: non-finite value {s:?}")));
    }
    Ok(v)
}

/// Parses `index,value` rows in any order. Lines starting with `#` and an `index,value`
/// header are skipped; duplicate indices are rejected.
pub fn parse_signal_csv(text: &str) -> Result<FiniteSequence, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut values = BTreeMap::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("signal CSV: {e}")))?;
        if rec.len() != 2 {
            return Err(CliError::Input(format!(
                "signal CSV row {}: expected 2 columns, got {}",
                line + 1,
                rec.len()
            )));
        }
        if line == 0 && rec[0].eq_ignore_ascii_case("index") {
            continue;
        }
        let k: i64 = rec[0]
            .parse()
            .map_err(|_| CliError::Input(format!("signal CSV: bad index {:?}", &rec[0])))?;
        let v = parse_f64(&rec[1], "signal CSV")?;
        if values.insert(k, v).is_some() {
            return Err(CliError::Input(format!("signal CSV: duplicate index {k}")));
        }
    }
    if values.is_empty() {
        return Err(CliError::Input("signal CSV has no rows".into()));
    }
    let pairs: Vec<(i64, f64)> = values.into_iter().collect();
    Ok(FiniteSequence::from_pairs(&pairs))
}

pub fn format_signal_csv(x: &FiniteSequence) -> String {
    let mut s = String::from("index,value\n");
    for (k, v) in x.iter() {
        s.push_str(&format!("{k},{v}\n"));
    }
    s
}

/// `# offset=<int>` followed by one value per line.
pub fn format_branch(x: &FiniteSequence) -> String {
    let mut s = format!("# offset={}\n", x.offset());
    for v in x.taps() {
        s.push_str(&format!("{v}\n"));
    }
    s
}

pub fn parse_branch(text: &str) -> Result<FiniteSequence, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty branch file".into()))?;
    let offset: i64 = header
        .strip_prefix("# offset=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| CliError::Input(format!("branch header {header:?} is not `# offset=<int>`")))?;
    let taps = lines
        .map(|l| parse_f64(l, "branch file"))
        .collect::<Result<Vec<_>, _>>()?;
    if taps.is_empty() {
        return Err(CliError::Input("branch file has no values".into()));
    }
    Ok(FiniteSequence::new(offset, taps))
}

pub fn detail_file_name(j: usize, l: usize) -> String {
    format!("detail_j{j}_l{l}.csv")
}

pub fn write_pyramid(dir: &Path, pyr: &CoefficientPyramid) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for j in 1..=pyr.order() {
        for l in 1..=pyr.branches() {
            write_atomic(&dir.join(detail_file_name(j, l)), &format_branch(pyr.detail(j, l)))?;
        }
    }
    write_atomic(&dir.join("approx.csv"), &format_branch(pyr.approximation()))
}

/// Reads `detail_j<j>_l<ℓ>.csv` and `approx.csv`; the order and branch count come from the names.
pub fn read_pyramid(dir: &Path) -> Result<CoefficientPyramid, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut found = BTreeMap::new();
    for e in entries {
        let e = e.map_err(|e| CliError::Io(e.to_string()))?;
        let name = e.file_name().to_string_lossy().into_owned();
        let Some(rest) = name.strip_prefix("detail_j").and_then(|r| r.strip_suffix(".csv")) else {
            continue;
        };
        let Some((j, l)) = rest.split_once("_l") else { continue };
        let (Ok(j), Ok(l)) = (j.parse::<usize>(), l.parse::<usize>()) else { continue };
        found.insert((j, l), e.path());
    }
    let order = found.keys().map(|k| k.0).max().unwrap_or(0);
    let branches = found.keys().map(|k| k.1).max().unwrap_or(0);
    if order == 0 || branches == 0 || found.len() != order * branches {
        return Err(CliError::Input(format!(
            "{}: detail files do not form a complete j × ℓ grid",
            dir.display()
        )));
    }
    let mut details = Vec::with_capacity(order);
    for j in 1..=order {
        let mut lv = Vec::with_capacity(branches);
        for l in 1..=branches {
            lv.push(parse_branch(&read_text(&found[&(j, l)])?)?);
        }
        details.push(lv);
    }
    let approx = parse_branch(&read_text(&dir.join("approx.csv"))?)?;
    CoefficientPyramid::new(details, approx).map_err(CliError::from)
}

/// Plain-text matrix with a `# offset=<r>,<c>` header and whitespace-separated rows.
pub fn parse_matrix(text: &str) -> Result<FiniteSequence2D, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty matrix file".into()))?;
    let offset = header
        .strip_prefix("# offset=")
        .and_then(|v| v.split_once(','))
        .and_then(|(r, c)| Some((r.trim().parse().ok()?, c.trim().parse().ok()?)))
        .ok_or_else(|| {
            CliError::Input(format!("matrix header {header:?} is not `# offset=<r>,<c>`"))
        })?;
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for l in lines {
        let row = l
            .split_whitespace()
            .map(|t| parse_f64(t, "matrix"))
            .collect::<Result<Vec<_>, _>>()?;
        if *cols.get_or_insert(row.len()) != row.len() {
            return Err(CliError::Input("matrix rows have different lengths".into()));
        }
        data.extend(row);
        rows += 1;
    }
    let cols = cols.ok_or_else(|| CliError::Input("matrix has no rows".into()))?;
    if cols == 0 {
        return Err(CliError::Input("matrix has no columns".into()));
    }
    Ok(FiniteSequence2D::new(offset, rows, cols, data))
}

pub fn format_matrix(x: &FiniteSequence2D) -> String {
    let (r0, c0) = x.offset();
    let (_, cols) = x.shape();
    let mut s = format!("# offset={r0},{c0}\n");
    for row in x.data().chunks(cols) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}
