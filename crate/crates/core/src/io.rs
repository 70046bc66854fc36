//! Measured point-data ingest, emission, and analysis grouping.
//!
//! The CSV schema is
//! `frequency_ghz,distance_m,path_loss_db,condition[,tag columns...]`
//! with a required header row, `#` comment lines ignored, `.` as the only
//! decimal separator, and `condition` in {LOS, NLOS} (case-insensitive).
//! The four schema columns may appear in any order; every other column is
//! preserved as a per-sample tag. Rows violating the sample invariants are
//! rejected with a line number and reason, never silently dropped.
//!
//! Published point-data releases rarely use these exact headers; a
//! [`ColumnMap`] renames external columns onto the schema at load time.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::models::Condition;
use crate::sample::PathLossSample;

/// The schema columns, in canonical emission order.
pub const CSV_COLUMNS: [&str; 4] = ["frequency_ghz", "distance_m", "path_loss_db", "condition"];

/// Frequencies closer than this are the same measured center frequency.
pub const FREQUENCY_MATCH_TOLERANCE_GHZ: f64 = 1e-9;

/// Errors raised while loading or grouping sample files.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv parse failure: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing or unknown header: {0}")]
    Header(String),
    #[error("empty input: no data rows")]
    Empty,
    #[error("invalid band set: {0}")]
    Band(String),
    #[error("invalid column map: {0}")]
    ColumnMap(String),
}

/// A rejected input row.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RowDiagnostic {
    /// 1-based line number in the source file.
    pub line: u64,
    pub message: String,
}

/// Loaded samples plus row-level rejection diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub samples: Vec<PathLossSample>,
    /// Free-text source label (file name, campaign, ...).
    pub provenance: String,
    pub diagnostics: Vec<RowDiagnostic>,
}

impl SampleSet {
    pub fn from_samples(samples: Vec<PathLossSample>, provenance: &str) -> SampleSet {
        SampleSet {
            samples,
            provenance: provenance.to_string(),
            diagnostics: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// A named set of measured center frequencies pooled for a
/// multi-frequency fit.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BandSet {
    pub name: String,
    pub member_frequencies_ghz: Vec<f64>,
}

impl BandSet {
    /// Builds a duplicate-free, non-empty band.
    pub fn new(name: &str, frequencies_ghz: &[f64]) -> Result<BandSet, LoadError> {
        if frequencies_ghz.is_empty() {
            return Err(LoadError::Band(format!("band '{name}' has no frequencies")));
        }
        let mut members: Vec<f64> = Vec::new();
        for &f in frequencies_ghz {
            if !(f.is_finite() && f > 0.0) {
                return Err(LoadError::Band(format!(
                    "band '{name}' member {f} is not a positive frequency"
                )));
            }
            if members
                .iter()
                .any(|&m| (m - f).abs() <= FREQUENCY_MATCH_TOLERANCE_GHZ)
            {
                return Err(LoadError::Band(format!(
                    "band '{name}' lists {f} GHz twice"
                )));
            }
            members.push(f);
        }
        Ok(BandSet {
            name: name.to_string(),
            member_frequencies_ghz: members,
        })
    }

    /// The upper mid-band pool: 6.75 and 16.95 GHz.
    pub fn preset_7_24() -> BandSet {
        BandSet::new("7-24", &[6.75, 16.95]).expect("preset is valid")
    }

    /// The full-range pool: 6.75, 16.95, 28 and 73 GHz.
    pub fn preset_0_5_100() -> BandSet {
        BandSet::new("0.5-100", &[6.75, 16.95, 28.0, 73.0]).expect("preset is valid")
    }

    /// Parses a preset name or a comma-separated custom frequency list.
    pub fn parse(text: &str) -> Result<BandSet, LoadError> {
        match text.trim() {
            "7-24" => Ok(BandSet::preset_7_24()),
            "0.5-100" => Ok(BandSet::preset_0_5_100()),
            custom => {
                let freqs = custom
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|e| LoadError::Band(format!("cannot parse '{custom}': {e}")))?;
                BandSet::new(custom, &freqs)
            }
        }
    }

    pub fn contains(&self, frequency_ghz: f64) -> bool {
        self.member_frequencies_ghz
            .iter()
            .any(|&m| (m - frequency_ghz).abs() <= FREQUENCY_MATCH_TOLERANCE_GHZ)
    }
}

/// Column-rename table mapping external headers onto the schema.
///
/// The map file is plain text: one `external_name,schema_name` pair per
/// line, `#` comments and blank lines ignored. An optional `from,to`
/// header line is skipped.
#[derive(Debug, Clone, Default)]
pub struct ColumnMap {
    renames: BTreeMap<String, String>,
}

impl ColumnMap {
    pub fn from_reader<R: Read>(reader: R) -> Result<ColumnMap, LoadError> {
        let mut text = String::new();
        BufReader::new(reader).read_to_string(&mut text)?;
        let mut renames = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "from,to" {
                continue;
            }
            let (from, to) = line.split_once(',').ok_or_else(|| {
                LoadError::ColumnMap(format!("line {}: expected 'from,to', got '{line}'", i + 1))
            })?;
            renames.insert(from.trim().to_string(), to.trim().to_string());
        }
        Ok(ColumnMap { renames })
    }

    pub fn from_path(path: &Path) -> Result<ColumnMap, LoadError> {
        ColumnMap::from_reader(File::open(path)?)
    }

    fn apply<'a>(&'a self, name: &'a str) -> &'a str {
        self.renames.get(name).map(String::as_str).unwrap_or(name)
    }
}

/// Loads the schema CSV from a reader.
pub fn load_csv<R: Read>(reader: R, provenance: &str) -> Result<SampleSet, LoadError> {
    load_csv_with_map(reader, &ColumnMap::default(), provenance)
}

/// Loads a CSV whose headers are renamed through `map` before schema
/// matching.
pub fn load_csv_with_map<R: Read>(
    reader: R,
    map: &ColumnMap,
    provenance: &str,
) -> Result<SampleSet, LoadError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let headers: Vec<String> = {
        let raw = rdr.headers()?;
        raw.iter().map(|h| map.apply(h).to_string()).collect()
    };
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(LoadError::Empty);
    }
    let mut schema_idx = [usize::MAX; 4];
    for (col, name) in CSV_COLUMNS.iter().enumerate() {
        let mut found = headers.iter().enumerate().filter(|(_, h)| h == name);
        match (found.next(), found.next()) {
            (Some((i, _)), None) => schema_idx[col] = i,
            (None, _) => {
                return Err(LoadError::Header(format!(
                    "required column '{name}' not found in [{}]",
                    headers.join(", ")
                )))
            }
            (Some(_), Some(_)) => {
                return Err(LoadError::Header(format!("column '{name}' appears twice")))
            }
        }
    }
    let tag_columns: Vec<(usize, String)> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| !schema_idx.contains(i))
        .map(|(i, h)| (i, h.clone()))
        .collect();

    let mut samples = Vec::new();
    let mut diagnostics = Vec::new();
    let mut saw_rows = false;
    for record in rdr.records() {
        let record = record?;
        saw_rows = true;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != headers.len() {
            diagnostics.push(RowDiagnostic {
                line,
                message: format!(
                    "expected {} fields, got {}",
                    headers.len(),
                    record.len()
                ),
            });
            continue;
        }
        match parse_record(&record, &schema_idx, &tag_columns) {
            Ok(sample) => samples.push(sample),
            Err(message) => diagnostics.push(RowDiagnostic { line, message }),
        }
    }
    if !saw_rows {
        return Err(LoadError::Empty);
    }
    Ok(SampleSet {
        samples,
        provenance: provenance.to_string(),
        diagnostics,
    })
}

/// Loads the schema CSV from a file path, with the path as provenance.
pub fn load_csv_path(path: &Path) -> Result<SampleSet, LoadError> {
    load_csv(File::open(path)?, &path.display().to_string())
}

fn parse_record(
    record: &csv::StringRecord,
    schema_idx: &[usize; 4],
    tag_columns: &[(usize, String)],
) -> Result<PathLossSample, String> {
    let field = |i: usize| record.get(i).unwrap_or("");
    let number = |i: usize, name: &str| -> Result<f64, String> {
        field(i)
            .parse::<f64>()
            .map_err(|_| format!("{name} is not a number: '{}'", field(i)))
    };
    let frequency_ghz = number(schema_idx[0], CSV_COLUMNS[0])?;
    let distance_m = number(schema_idx[1], CSV_COLUMNS[1])?;
    let path_loss_db = number(schema_idx[2], CSV_COLUMNS[2])?;
    let condition = Condition::parse(field(schema_idx[3]))
        .ok_or_else(|| format!("condition must be LOS or NLOS, got '{}'", field(schema_idx[3])))?;
    let mut sample = PathLossSample::new(frequency_ghz, distance_m, path_loss_db, condition);
    sample.validate()?;
    for (i, name) in tag_columns {
        let value = field(*i);
        if !value.is_empty() {
            sample.tags.insert(name.clone(), value.to_string());
        }
    }
    Ok(sample)
}

/// Emits samples in the schema CSV format, prefixed with `#` comment lines.
///
/// Tag columns are the sorted union of tag keys across the samples; floats
/// are written shortest-round-trip so a reload reproduces them exactly.
pub fn write_csv<W: Write>(
    samples: &[PathLossSample],
    mut writer: W,
    comments: &[String],
) -> std::io::Result<()> {
    for c in comments {
        writeln!(writer, "# {c}")?;
    }
    let mut tag_keys: Vec<&str> = samples
        .iter()
        .flat_map(|s| s.tags.keys().map(String::as_str))
        .collect();
    tag_keys.sort_unstable();
    tag_keys.dedup();

    let mut wtr = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = CSV_COLUMNS.to_vec();
    header.extend(&tag_keys);
    wtr.write_record(&header)?;
    for s in samples {
        let mut fields = vec![
            s.frequency_ghz.to_string(),
            s.distance_m.to_string(),
            s.path_loss_db.to_string(),
            s.condition.to_string(),
        ];
        for key in &tag_keys {
            fields.push(s.tags.get(*key).cloned().unwrap_or_default());
        }
        wtr.write_record(&fields)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Grouping key produced by [`partition`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupKey {
    /// Set when grouping by frequency.
    pub frequency_ghz: Option<f64>,
    /// Set when grouping by condition.
    pub condition: Option<Condition>,
}

impl std::fmt::Display for GroupKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.frequency_ghz, self.condition) {
            (Some(freq), Some(cond)) => write!(f, "{freq} GHz {cond}"),
            (Some(freq), None) => write!(f, "{freq} GHz"),
            (None, Some(cond)) => write!(f, "{cond}"),
            (None, None) => write!(f, "all"),
        }
    }
}

/// Disjoint groups covering the (band-filtered) input.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Non-empty groups ordered by (frequency, condition).
    pub groups: Vec<(GroupKey, Vec<PathLossSample>)>,
    /// Empty-group notices (e.g. a band member frequency matching nothing).
    pub warnings: Vec<String>,
}

/// Splits a sample set along the requested dimensions.
///
/// With `band` given, only samples at a member frequency (exact match at
/// [`FREQUENCY_MATCH_TOLERANCE_GHZ`]) are kept; members matching nothing
/// produce warnings, not errors. The returned groups are disjoint and
/// their union is the filtered input.
pub fn partition(
    set: &SampleSet,
    by_condition: bool,
    by_frequency: bool,
    band: Option<&BandSet>,
) -> Partition {
    let mut warnings = Vec::new();
    let filtered: Vec<&PathLossSample> = match band {
        None => set.samples.iter().collect(),
        Some(band) => {
            for &member in &band.member_frequencies_ghz {
                if !set
                    .samples
                    .iter()
                    .any(|s| (s.frequency_ghz - member).abs() <= FREQUENCY_MATCH_TOLERANCE_GHZ)
                {
                    warnings.push(format!(
                        "band '{}': no samples at member frequency {member} GHz",
                        band.name
                    ));
                }
            }
            set.samples
                .iter()
                .filter(|s| band.contains(s.frequency_ghz))
                .collect()
        }
    };

    // distinct frequencies at the matching tolerance, in ascending order
    let mut freq_reps: Vec<f64> = Vec::new();
    if by_frequency {
        for s in &filtered {
            if !freq_reps
                .iter()
                .any(|&m| (m - s.frequency_ghz).abs() <= FREQUENCY_MATCH_TOLERANCE_GHZ)
            {
                freq_reps.push(s.frequency_ghz);
            }
        }
        freq_reps.sort_by(f64::total_cmp);
    }

    let key_of = |s: &PathLossSample| GroupKey {
        frequency_ghz: by_frequency.then(|| {
            *freq_reps
                .iter()
                .find(|&&m| (m - s.frequency_ghz).abs() <= FREQUENCY_MATCH_TOLERANCE_GHZ)
                .expect("every sample frequency has a representative")
        }),
        condition: by_condition.then_some(s.condition),
    };

    let mut groups: Vec<(GroupKey, Vec<PathLossSample>)> = Vec::new();
    for s in filtered {
        let key = key_of(s);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(s.clone()),
            None => groups.push((key, vec![s.clone()])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| {
        let fa = a.frequency_ghz.unwrap_or(0.0);
        let fb = b.frequency_ghz.unwrap_or(0.0);
        fa.total_cmp(&fb).then(a.condition.cmp(&b.condition))
    });
    Partition { groups, warnings }
}
