//! Delimited-text formats for chambers, societies, series and reports.
//!
//! All tabular files are UTF-8 comma-separated values with a single header
//! row and `.` as the decimal point:
//!
//! * chamber: `id,x1,...,xm,group` — an empty group field or the literal
//!   `IND` marks an independent member;
//! * society: `name,weight,x1,...,xm`;
//! * series: `l,n,p_euc,p_man,p_cheb`.
//!
//! Reports are emitted either as JSON
//! (`{"center":[...],"n":...,"dim":...,"values":{...},"modified":{...}}`)
//! or as a one-row CSV. Report reals are rendered with six decimals, which
//! round-trips within 1e-6; chamber and society writers use the shortest
//! exact representation, so their round trip is lossless. Parse errors
//! carry the 1-based line number of the offending row (the header is
//! line 1).

use std::collections::HashSet;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::experiments::SeriesRow;
use crate::grouping::{Affiliation, Chamber, Individual};
use crate::index::{MetricValues, PolarizationReport};
use crate::metric::Metric;
use crate::society::{Group, Position, Society};

/// Sentinel accepted in the chamber `group` column for independents, in
/// addition to an empty field.
pub const INDEPENDENT_SENTINEL: &str = "IND";

#[derive(Debug, Error)]
pub enum DataError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    Chamber,
    Society,
}

/// Expected shape of a tabular file: what it holds and how many axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSchema {
    pub kind: DatasetKind,
    pub dim: usize,
}

impl DatasetSchema {
    pub fn chamber(dim: usize) -> Self {
        DatasetSchema {
            kind: DatasetKind::Chamber,
            dim,
        }
    }

    pub fn society(dim: usize) -> Self {
        DatasetSchema {
            kind: DatasetKind::Society,
            dim,
        }
    }

    /// Column names, in order, that a file of this schema must carry.
    pub fn columns(&self) -> Vec<String> {
        let coords = (1..=self.dim).map(|j| format!("x{j}"));
        match self.kind {
            DatasetKind::Chamber => std::iter::once("id".to_string())
                .chain(coords)
                .chain(std::iter::once("group".to_string()))
                .collect(),
            DatasetKind::Society => ["name", "weight"]
                .into_iter()
                .map(str::to_string)
                .chain(coords)
                .collect(),
        }
    }

    /// Recovers the schema (in particular the dimensionality) from a
    /// header row.
    pub fn from_header(kind: DatasetKind, header: &[&str]) -> Result<Self, DataError> {
        let fixed = match kind {
            DatasetKind::Chamber => 2, // id ... group
            DatasetKind::Society => 2, // name weight ...
        };
        let dim = header.len().saturating_sub(fixed);
        if dim == 0 {
            return Err(DataError::Parse {
                row: 1,
                message: format!("header {header:?} has no coordinate columns"),
            });
        }
        let schema = DatasetSchema { kind, dim };
        let expected = schema.columns();
        if header != expected.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(DataError::Parse {
                row: 1,
                message: format!("header {header:?} does not match expected {expected:?}"),
            });
        }
        Ok(schema)
    }
}

fn csv_reader<R: Read>(source: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source)
}

fn record_line(record: &csv::StringRecord) -> usize {
    record.position().map_or(0, |p| p.line() as usize)
}

fn parse_real(field: &str, column: &str, row: usize) -> Result<f64, DataError> {
    field.parse::<f64>().map_err(|_| DataError::Parse {
        row,
        message: format!("column '{column}': cannot parse '{field}' as a number"),
    })
}

fn check_header<R: Read>(
    reader: &mut csv::Reader<R>,
    schema: &DatasetSchema,
) -> Result<(), DataError> {
    let mut record = csv::StringRecord::new();
    let got = reader.read_record(&mut record).map_err(csv_error)?;
    let expected = schema.columns();
    if !got {
        return Err(DataError::Parse {
            row: 1,
            message: format!("empty input, expected header {expected:?}"),
        });
    }
    let header: Vec<&str> = record.iter().collect();
    if header != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(DataError::Parse {
            row: 1,
            message: format!("header {header:?} does not match expected {expected:?}"),
        });
    }
    Ok(())
}

fn csv_error(err: csv::Error) -> DataError {
    let row = match err.position() {
        Some(p) => p.line() as usize,
        None => 0,
    };
    DataError::Parse {
        row,
        message: err.to_string(),
    }
}

fn expect_fields(
    record: &csv::StringRecord,
    expected: usize,
    row: usize,
) -> Result<(), DataError> {
    if record.len() != expected {
        return Err(DataError::Parse {
            row,
            message: format!("expected {expected} fields, got {}", record.len()),
        });
    }
    Ok(())
}

/// Reads a chamber file (`id,x1,...,xm,group`).
pub fn read_chamber<R: Read>(source: R, schema: &DatasetSchema) -> Result<Chamber, DataError> {
    let mut reader = csv_reader(source);
    check_header(&mut reader, schema)?;
    let columns = schema.columns();
    let mut members = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let row = record_line(&record);
        expect_fields(&record, schema.dim + 2, row)?;
        let id = record.get(0).unwrap_or("").to_string();
        if id.is_empty() {
            return Err(DataError::Parse {
                row,
                message: "member id must not be empty".into(),
            });
        }
        if !seen.insert(id.clone()) {
            return Err(DataError::Parse {
                row,
                message: format!("duplicate id '{id}'"),
            });
        }
        let mut coords = Vec::with_capacity(schema.dim);
        for j in 0..schema.dim {
            coords.push(parse_real(record.get(j + 1).unwrap(), &columns[j + 1], row)?);
        }
        let group = record.get(schema.dim + 1).unwrap_or("");
        let affiliation = if group.is_empty() || group == INDEPENDENT_SENTINEL {
            Affiliation::Independent
        } else {
            Affiliation::Union(group.to_string())
        };
        members.push(Individual::new(id, coords, affiliation));
    }
    Chamber::new(schema.dim, members).map_err(DataError::Domain)
}

/// Parses a society file (`name,weight,x1,...,xm`) without validating the
/// resulting society. Most callers want [`read_society`]; this entry point
/// exists for diagnostics and for rescaling out-of-cube data.
pub fn parse_society<R: Read>(source: R, schema: &DatasetSchema) -> Result<Society, DataError> {
    let mut reader = csv_reader(source);
    check_header(&mut reader, schema)?;
    let columns = schema.columns();
    let mut groups = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let row = record_line(&record);
        expect_fields(&record, schema.dim + 2, row)?;
        let label = record.get(0).unwrap_or("").to_string();
        let weight = parse_real(record.get(1).unwrap(), &columns[1], row)?;
        let mut coords = Vec::with_capacity(schema.dim);
        for j in 0..schema.dim {
            coords.push(parse_real(record.get(j + 2).unwrap(), &columns[j + 2], row)?);
        }
        groups.push(Group {
            label,
            weight,
            position: Position::new(coords),
        });
    }
    Ok(Society::new(schema.dim, groups))
}

/// Reads and validates a society file.
pub fn read_society<R: Read>(source: R, schema: &DatasetSchema) -> Result<Society, DataError> {
    let society = parse_society(source, schema)?;
    let violations = society.validate();
    if !violations.is_empty() {
        return Err(DataError::Domain(Error::InvalidSociety(violations)));
    }
    Ok(society)
}

/// Writes a chamber in the format [`read_chamber`] accepts, losslessly.
pub fn write_chamber<W: Write>(sink: W, chamber: &Chamber) -> Result<(), DataError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer
        .write_record(&DatasetSchema::chamber(chamber.dim()).columns())
        .map_err(csv_error)?;
    for member in chamber.members() {
        let mut record = Vec::with_capacity(chamber.dim() + 2);
        record.push(member.id.clone());
        for &c in member.position.coords() {
            record.push(c.to_string());
        }
        record.push(match &member.affiliation {
            Affiliation::Union(label) => label.clone(),
            Affiliation::Independent => String::new(),
        });
        writer.write_record(&record).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes a society in the format [`read_society`] accepts, losslessly.
pub fn write_society<W: Write>(sink: W, society: &Society) -> Result<(), DataError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer
        .write_record(&DatasetSchema::society(society.dim).columns())
        .map_err(csv_error)?;
    for group in &society.groups {
        let mut record = Vec::with_capacity(society.dim + 2);
        record.push(group.label.clone());
        record.push(group.weight.to_string());
        for &c in group.position.coords() {
            record.push(c.to_string());
        }
        writer.write_record(&record).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes a convergence series as plot-ready CSV (`l,n,p_euc,p_man,p_cheb`).
pub fn write_series<W: Write>(mut sink: W, rows: &[SeriesRow]) -> Result<(), DataError> {
    writeln!(sink, "l,n,p_euc,p_man,p_cheb")?;
    for row in rows {
        writeln!(
            sink,
            "{},{},{:.6},{:.6},{:.6}",
            row.l, row.n, row.p_euc, row.p_man, row.p_cheb
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Which metrics a rendered report includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricSelection {
    All,
    One(Metric),
}

impl MetricSelection {
    fn contains(self, metric: Metric) -> bool {
        match self {
            MetricSelection::All => true,
            MetricSelection::One(chosen) => chosen == metric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub metrics: MetricSelection,
    pub include_modified: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            metrics: MetricSelection::All,
            include_modified: true,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct MetricDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    euclidean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    manhattan: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chebyshev: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ReportDoc {
    center: Vec<f64>,
    n: usize,
    dim: usize,
    values: MetricDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modified: Option<MetricDoc>,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn metric_doc(values: &MetricValues, selection: MetricSelection) -> MetricDoc {
    let pick = |metric: Metric| selection.contains(metric).then(|| round6(values.get(metric)));
    MetricDoc {
        euclidean: pick(Metric::Euclidean),
        manhattan: pick(Metric::Manhattan),
        chebyshev: pick(Metric::Chebyshev),
    }
}

/// Renders a full report (all metrics, both families).
pub fn write_report<W: Write>(
    sink: W,
    report: &PolarizationReport,
    format: ReportFormat,
) -> Result<(), DataError> {
    write_report_with(sink, report, format, &ReportOptions::default())
}

/// Renders a report with an explicit metric/family selection.
pub fn write_report_with<W: Write>(
    mut sink: W,
    report: &PolarizationReport,
    format: ReportFormat,
    options: &ReportOptions,
) -> Result<(), DataError> {
    match format {
        ReportFormat::Json => {
            let doc = ReportDoc {
                center: report.center.coords().iter().copied().map(round6).collect(),
                n: report.n,
                dim: report.dim,
                values: metric_doc(&report.values, options.metrics),
                modified: options
                    .include_modified
                    .then(|| metric_doc(&report.modified, options.metrics)),
            };
            serde_json::to_writer(&mut sink, &doc)
                .map_err(|e| DataError::Io(std::io::Error::other(e)))?;
            writeln!(sink)?;
        }
        ReportFormat::Csv => {
            let selected: Vec<Metric> = Metric::ALL
                .into_iter()
                .filter(|&m| options.metrics.contains(m))
                .collect();
            let mut columns = vec!["n".to_string(), "dim".to_string()];
            columns.extend((1..=report.dim).map(|j| format!("c{j}")));
            columns.extend(selected.iter().map(|m| format!("p_{}", short_name(*m))));
            if options.include_modified {
                columns.extend(selected.iter().map(|m| format!("p_mod_{}", short_name(*m))));
            }
            writeln!(sink, "{}", columns.join(","))?;
            let mut fields = vec![report.n.to_string(), report.dim.to_string()];
            fields.extend(report.center.coords().iter().map(|c| format!("{c:.6}")));
            fields.extend(selected.iter().map(|m| format!("{:.6}", report.values.get(*m))));
            if options.include_modified {
                fields.extend(
                    selected
                        .iter()
                        .map(|m| format!("{:.6}", report.modified.get(*m))),
                );
            }
            writeln!(sink, "{}", fields.join(","))?;
        }
    }
    Ok(())
}

fn short_name(metric: Metric) -> &'static str {
    match metric {
        Metric::Euclidean => "euc",
        Metric::Manhattan => "man",
        Metric::Chebyshev => "cheb",
    }
}

/// Reads back a full JSON report (all six values present).
pub fn read_report_json(bytes: &[u8]) -> Result<PolarizationReport, DataError> {
    let doc: ReportDoc = serde_json::from_slice(bytes).map_err(|e| DataError::Parse {
        row: e.line(),
        message: e.to_string(),
    })?;
    let values = metric_values(&doc.values, "values")?;
    let modified_doc = doc.modified.ok_or_else(|| DataError::Parse {
        row: 0,
        message: "report is missing the 'modified' family".into(),
    })?;
    let modified = metric_values(&modified_doc, "modified")?;
    Ok(PolarizationReport {
        center: Position::new(doc.center),
        n: doc.n,
        dim: doc.dim,
        values,
        modified,
    })
}

fn metric_values(doc: &MetricDoc, family: &str) -> Result<MetricValues, DataError> {
    let take = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| DataError::Parse {
            row: 0,
            message: format!("report field {family}.{name} is missing"),
        })
    };
    Ok(MetricValues {
        euclidean: take(doc.euclidean, "euclidean")?,
        manhattan: take(doc.manhattan, "manhattan")?,
        chebyshev: take(doc.chebyshev, "chebyshev")?,
    })
}

/// One published per-year row of the reference table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub year: i32,
    pub center: Position,
    pub p_euc: f64,
    pub p_man: f64,
    pub p_cheb: f64,
}

const REFERENCE_TABLE: [(i32, f64, f64, f64, f64, f64); 10] = [
    (1994, 0.6746, 0.5523, 0.3479, 0.3136, 0.4487),
    (1995, 0.7668, 0.7231, 0.2190, 0.1876, 0.2919),
    (1996, 0.7251, 0.5329, 0.4154, 0.3780, 0.5334),
    (1997, 0.6430, 0.6181, 0.4683, 0.3865, 0.6298),
    (1998, 0.7121, 0.5378, 0.3563, 0.2920, 0.4821),
    (1999, 0.6922, 0.6160, 0.3442, 0.2913, 0.4602),
    (2000, 0.4948, 0.5469, 0.3722, 0.3175, 0.4949),
    (2001, 0.5110, 0.5890, 0.3857, 0.3191, 0.5218),
    (2002, 0.4564, 0.6124, 0.4805, 0.3818, 0.6561),
    (2003, 0.4530, 0.5169, 0.4796, 0.3797, 0.6654),
];

/// The bundled per-year polarization table for the 1994-2003 lower-house
/// analysis (two-dimensional political map, groups-points framework).
///
/// The underlying member coordinates were never published, so these rows
/// serve as an ordering/fixture reference only; they cannot be re-derived
/// here.
pub fn load_reference_table() -> Vec<Table1Row> {
    REFERENCE_TABLE
        .iter()
        .map(|&(year, cx, cy, p_euc, p_man, p_cheb)| Table1Row {
            year,
            center: Position::new(vec![cx, cy]),
            p_euc,
            p_man,
            p_cheb,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::index::polarization_report;

    const CHAMBER_CSV: &str = "\
id,x1,x2,group
d1,0.4,0.5,X
d2,0.5,0.5,
d3,0.9,0.9,IND
d4,0.1,0.2,Y
";

    const SOCIETY_CSV: &str = "\
name,weight,x1,x2
A,0.5,0,0
B,0.25,1,0
C,0.25,1,1
";

    #[test]
    fn chamber_rows_parse_with_sentinels() {
        let chamber = read_chamber(CHAMBER_CSV.as_bytes(), &DatasetSchema::chamber(2)).unwrap();
        assert_eq!(chamber.dim(), 2);
        assert_eq!(chamber.members().len(), 4);
        let d1 = chamber.member("d1").unwrap();
        assert_eq!(d1.position.coords(), &[0.4, 0.5]);
        assert_eq!(d1.affiliation, Affiliation::Union("X".into()));
        assert!(chamber.member("d2").unwrap().affiliation.is_independent());
        assert!(chamber.member("d3").unwrap().affiliation.is_independent());
    }

    #[test]
    fn duplicate_id_reports_the_row() {
        let input = "id,x1,group\nd1,0.5,X\nd1,0.6,Y\n";
        let err = read_chamber(input.as_bytes(), &DatasetSchema::chamber(1)).unwrap_err();
        match err {
            DataError::Parse { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("duplicate id 'd1'"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_number_reports_row_and_column() {
        let input = "name,weight,x1\nA,half,0.5\n";
        let err = read_society(input.as_bytes(), &DatasetSchema::society(1)).unwrap_err();
        match err {
            DataError::Parse { row, message } => {
                assert_eq!(row, 2);
                assert!(message.contains("weight"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_field_count_reports_the_row() {
        let input = "id,x1,x2,group\nd1,0.5,X\n";
        let err = read_chamber(input.as_bytes(), &DatasetSchema::chamber(2)).unwrap_err();
        match err {
            DataError::Parse { row, .. } => assert_eq!(row, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn header_mismatch_is_row_one() {
        let input = "id,y1,group\nd1,0.5,X\n";
        let err = read_chamber(input.as_bytes(), &DatasetSchema::chamber(1)).unwrap_err();
        match err {
            DataError::Parse { row, .. } => assert_eq!(row, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn society_file_matches_worked_example() {
        let society = read_society(SOCIETY_CSV.as_bytes(), &DatasetSchema::society(2)).unwrap();
        assert_eq!(society.groups.len(), 3);
        assert_eq!(society.groups[0].label, "A");
        assert_eq!(society.groups[0].weight, 0.5);
        assert_eq!(society.groups[2].position.coords(), &[1.0, 1.0]);
    }

    #[test]
    fn near_unit_weight_sum_is_accepted() {
        let input = "name,weight,x1\nA,0.4999999999,0\nB,0.5,1\n";
        let society = read_society(input.as_bytes(), &DatasetSchema::society(1)).unwrap();
        assert_eq!(society.groups.len(), 2);
    }

    #[test]
    fn bad_weight_sum_is_a_domain_error() {
        let input = "name,weight,x1\nA,0.4,0\nB,0.4,1\n";
        let err = read_society(input.as_bytes(), &DatasetSchema::society(1)).unwrap_err();
        assert!(matches!(err, DataError::Domain(Error::InvalidSociety(_))));
        // parse_society still yields the raw data for diagnostics
        let raw = parse_society(input.as_bytes(), &DatasetSchema::society(1)).unwrap();
        assert_eq!(raw.groups.len(), 2);
    }

    #[test]
    fn chamber_round_trip_is_lossless() {
        let chamber = read_chamber(CHAMBER_CSV.as_bytes(), &DatasetSchema::chamber(2)).unwrap();
        let mut buffer = Vec::new();
        write_chamber(&mut buffer, &chamber).unwrap();
        let back = read_chamber(buffer.as_slice(), &DatasetSchema::chamber(2)).unwrap();
        assert_eq!(chamber, back);
    }

    #[test]
    fn society_round_trip_is_lossless() {
        let society = Society::new(
            2,
            vec![
                Group::new("A", 1.0 / 3.0, vec![0.123456789012345, 0.5]),
                Group::new("B", 2.0 / 3.0, vec![0.9, 1.0]),
            ],
        );
        let mut buffer = Vec::new();
        write_society(&mut buffer, &society).unwrap();
        let back = read_society(buffer.as_slice(), &DatasetSchema::society(2)).unwrap();
        assert_eq!(society, back);
    }

    #[test]
    fn report_json_has_stable_shape_and_six_decimals() {
        let society = read_society(SOCIETY_CSV.as_bytes(), &DatasetSchema::society(2)).unwrap();
        let report = polarization_report(&society).unwrap();
        let mut buffer = Vec::new();
        write_report(&mut buffer, &report, ReportFormat::Json).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(
            text,
            "{\"center\":[0.5,0.25],\"n\":3,\"dim\":2,\
             \"values\":{\"euclidean\":0.911616,\"manhattan\":0.875,\"chebyshev\":1.125},\
             \"modified\":{\"euclidean\":0.607744,\"manhattan\":0.583333,\"chebyshev\":0.75}}\n"
        );
    }

    #[test]
    fn report_json_round_trips_within_tolerance() {
        let society = read_society(SOCIETY_CSV.as_bytes(), &DatasetSchema::society(2)).unwrap();
        let report = polarization_report(&society).unwrap();
        let mut buffer = Vec::new();
        write_report(&mut buffer, &report, ReportFormat::Json).unwrap();
        let back = read_report_json(&buffer).unwrap();
        assert_eq!(back.n, report.n);
        assert_eq!(back.dim, report.dim);
        for (a, b) in back.center.coords().iter().zip(report.center.coords()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-6);
        }
        for metric in Metric::ALL {
            assert_abs_diff_eq!(
                back.values.get(metric),
                report.values.get(metric),
                epsilon = 1e-6
            );
            assert_abs_diff_eq!(
                back.modified.get(metric),
                report.modified.get(metric),
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn report_csv_is_one_header_and_one_row() {
        let society = read_society(SOCIETY_CSV.as_bytes(), &DatasetSchema::society(2)).unwrap();
        let report = polarization_report(&society).unwrap();
        let mut buffer = Vec::new();
        write_report(&mut buffer, &report, ReportFormat::Csv).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0],
            "n,dim,c1,c2,p_euc,p_man,p_cheb,p_mod_euc,p_mod_man,p_mod_cheb"
        );
        assert_eq!(
            lines[1],
            "3,2,0.500000,0.250000,0.911616,0.875000,1.125000,0.607744,0.583333,0.750000"
        );
    }

    #[test]
    fn report_options_select_metrics_and_families() {
        let society = read_society(SOCIETY_CSV.as_bytes(), &DatasetSchema::society(2)).unwrap();
        let report = polarization_report(&society).unwrap();
        let options = ReportOptions {
            metrics: MetricSelection::One(Metric::Manhattan),
            include_modified: false,
        };
        let mut buffer = Vec::new();
        write_report_with(&mut buffer, &report, ReportFormat::Json, &options).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(
            text,
            "{\"center\":[0.5,0.25],\"n\":3,\"dim\":2,\"values\":{\"manhattan\":0.875}}\n"
        );

        let mut buffer = Vec::new();
        write_report_with(&mut buffer, &report, ReportFormat::Csv, &options).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(text, "n,dim,c1,c2,p_man\n3,2,0.500000,0.250000,0.875000\n");
    }

    #[test]
    fn series_csv_format() {
        let rows = vec![SeriesRow {
            l: 2,
            n: 4,
            p_euc: 1.0,
            p_man: 1.0,
            p_cheb: 1.0,
        }];
        let mut buffer = Vec::new();
        write_series(&mut buffer, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buffer).unwrap(),
            "l,n,p_euc,p_man,p_cheb\n2,4,1.000000,1.000000,1.000000\n"
        );
    }

    #[test]
    fn reference_table_is_exactly_as_published() {
        let table = load_reference_table();
        assert_eq!(table.len(), 10);
        let first = &table[0];
        assert_eq!(first.year, 1994);
        assert_eq!(first.center.coords(), &[0.6746, 0.5523]);
        assert_eq!(
            (first.p_euc, first.p_man, first.p_cheb),
            (0.3479, 0.3136, 0.4487)
        );
        let last = &table[9];
        assert_eq!(last.year, 2003);
        assert_eq!(last.center.coords(), &[0.4530, 0.5169]);
        assert_eq!(
            (last.p_euc, last.p_man, last.p_cheb),
            (0.4796, 0.3797, 0.6654)
        );
        let years: Vec<i32> = table.iter().map(|r| r.year).collect();
        assert_eq!(years, (1994..=2003).collect::<Vec<_>>());
    }

    #[test]
    fn reference_table_satisfies_the_ordering_invariant() {
        for row in load_reference_table() {
            assert!(
                row.p_cheb > row.p_euc && row.p_euc > row.p_man,
                "year {}",
                row.year
            );
            for &c in row.center.coords() {
                assert!((0.0..=1.0).contains(&c));
            }
        }
    }

    #[test]
    fn schema_inference_from_headers() {
        let schema =
            DatasetSchema::from_header(DatasetKind::Chamber, &["id", "x1", "x2", "group"]).unwrap();
        assert_eq!(schema, DatasetSchema::chamber(2));
        let schema =
            DatasetSchema::from_header(DatasetKind::Society, &["name", "weight", "x1"]).unwrap();
        assert_eq!(schema, DatasetSchema::society(1));
        assert!(DatasetSchema::from_header(DatasetKind::Society, &["name", "weight"]).is_err());
        assert!(DatasetSchema::from_header(DatasetKind::Chamber, &["id", "a", "group"]).is_err());
    }
}
