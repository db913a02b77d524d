//! Result containers and their CSV / json-map encodings.
//!
//! CSV files start with `#` metadata lines (tool version, config hash,
//! operation, units) followed by a header row and one record per point.
//! Numbers use Rust's shortest round-trip scientific notation, so parsing a
//! file back reproduces every value bit for bit. json-map files hold the same
//! metadata plus axis arrays and row-major value arrays; non-finite values
//! become `null` there.

use serde::{Deserialize, Serialize};

use crate::config::Format;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = concat!("qcnr ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub config_sha256: String,
    pub operation: String,
}

impl Provenance {
    pub fn new(config_sha256: String, operation: &str) -> Self {
        Self { tool_version: TOOL_VERSION.to_owned(), config_sha256, operation: operation.to_owned() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self { name: name.into(), unit: unit.into() }
    }
}

/// Rectangular numeric table with one optional failure message per row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub provenance: Provenance,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    pub failures: Vec<Option<String>>,
}

impl ResultTable {
    pub fn new(provenance: Provenance, columns: Vec<Column>) -> Self {
        Self { provenance, columns, rows: Vec::new(), failures: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>, failure: Option<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
        self.failures.push(failure);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

/// Values over an `x × y` grid, row-major with one row per `y`:
/// element `(ix, iy)` is at `iy * nx + ix`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapResult {
    pub provenance: Provenance,
    pub x: Axis,
    pub y: Axis,
    pub amplitude: Vec<f64>,
    pub phase: Option<Vec<f64>>,
    /// Failed `x` columns and their error messages.
    pub missing: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(ResultTable),
    Map(MapResult),
}

impl Output {
    pub fn provenance(&self) -> &Provenance {
        match self {
            Output::Table(t) => &t.provenance,
            Output::Map(m) => &m.provenance,
        }
    }

    /// Number of points (rows or map columns) that failed.
    pub fn failure_count(&self) -> usize {
        match self {
            Output::Table(t) => t.failures.iter().filter(|f| f.is_some()).count(),
            Output::Map(m) => m.missing.len(),
        }
    }

    pub fn point_count(&self) -> usize {
        match self {
            Output::Table(t) => t.rows.len(),
            Output::Map(m) => m.x.values.len(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing metadata line `# {0}:`")]
    MissingMeta(&'static str),
    #[error("bad number `{0}`")]
    Number(String),
    #[error("{0}")]
    Shape(String),
}

pub fn export(output: &Output, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => to_csv(output).into_bytes(),
        Format::JsonMap => to_json(output).into_bytes(),
    }
}

pub fn parse(bytes: &[u8], format: Format) -> Result<Output, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::Shape(e.to_string()))?;
    match format {
        Format::Csv => from_csv(text),
        Format::JsonMap => from_json(text),
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn parse_num(s: &str) -> Result<f64, ParseError> {
    s.parse().map_err(|_| ParseError::Number(s.to_owned()))
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn meta_lines(p: &Provenance, kind: &str) -> String {
    format!(
        "# tool: {}\n# config_sha256: {}\n# operation: {}\n# kind: {kind}\n",
        p.tool_version, p.config_sha256, p.operation
    )
}

fn write_record(w: &mut csv::Writer<Vec<u8>>, values: &[f64], failure: Option<&str>) {
    let mut rec: Vec<String> = values.iter().map(|&v| num(v)).collect();
    rec.push(failure.unwrap_or("").to_owned());
    w.write_record(&rec).expect("in-memory write");
}

pub fn to_csv(output: &Output) -> String {
    let mut w = csv_writer();
    let head = match output {
        Output::Table(t) => {
            let names: Vec<&str> = t.columns.iter().map(|c| c.name.as_str()).chain(["failure"]).collect();
            w.write_record(&names).expect("in-memory write");
            for (row, failure) in t.rows.iter().zip(&t.failures) {
                write_record(&mut w, row, failure.as_deref());
            }
            let units: Vec<&str> = t.columns.iter().map(|c| c.unit.as_str()).chain(["text"]).collect();
            format!("{}# units: {}\n", meta_lines(&t.provenance, "table"), units.join(","))
        }
        Output::Map(m) => {
            let (nx, ny) = (m.x.values.len(), m.y.values.len());
            w.write_record([m.x.name.as_str(), m.y.name.as_str(), "amplitude", "phase", "failure"])
                .expect("in-memory write");
            for iy in 0..ny {
                for ix in 0..nx {
                    let k = iy * nx + ix;
                    let phase = m.phase.as_ref().map_or(f64::NAN, |p| p[k]);
                    let failure = m.missing.iter().find(|(i, _)| *i == ix).map(|(_, e)| e.as_str());
                    write_record(&mut w, &[m.x.values[ix], m.y.values[iy], m.amplitude[k], phase], failure);
                }
            }
            let phase_unit = if m.phase.is_some() { "rad" } else { "none" };
            format!(
                "{}# shape: {ny},{nx}\n# units: {},{},1,{phase_unit},text\n",
                meta_lines(&m.provenance, "map"),
                m.x.unit,
                m.y.unit
            )
        }
    };
    head + &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn from_csv(text: &str) -> Result<Output, ParseError> {
    let meta = |key: &'static str| {
        text.lines()
            .take_while(|l| l.starts_with('#'))
            .find_map(|l| l.strip_prefix("# ")?.strip_prefix(key)?.strip_prefix(": ").map(str::to_owned))
            .ok_or(ParseError::MissingMeta(key))
    };
    let provenance =
        Provenance { tool_version: meta("tool")?, config_sha256: meta("config_sha256")?, operation: meta("operation")? };
    let units: Vec<String> = meta("units")?.split(',').map(str::to_owned).collect();
    let kind = meta("kind")?;

    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let names: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if names.len() != units.len() || names.last().map(String::as_str) != Some("failure") {
        return Err(ParseError::Shape("header and units disagree".into()));
    }
    let width = names.len() - 1;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = (0..width).map(|i| parse_num(&rec[i])).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        failures.push(Some(&rec[width]).filter(|s| !s.is_empty()).map(str::to_owned));
    }

    if kind == "table" {
        let columns = names[..width].iter().zip(&units).map(|(n, u)| Column::new(n.clone(), u.clone())).collect();
        return Ok(Output::Table(ResultTable { provenance, columns, rows, failures }));
    }
    let shape = meta("shape")?;
    let (ny, nx) = shape
        .split_once(',')
        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .ok_or_else(|| ParseError::Shape(format!("bad shape `{shape}`")))?;
    if rows.len() != nx * ny || width != 4 {
        return Err(ParseError::Shape(format!("expected {} rows of 4 values", nx * ny)));
    }
    let x = Axis { name: names[0].clone(), unit: units[0].clone(), values: rows[..nx].iter().map(|r| r[0]).collect() };
    let y = Axis { name: names[1].clone(), unit: units[1].clone(), values: rows.iter().step_by(nx).map(|r| r[1]).collect() };
    let phase = (units[3] != "none").then(|| rows.iter().map(|r| r[3]).collect());
    let missing = failures[..nx].iter().enumerate().filter_map(|(ix, f)| Some((ix, f.clone()?))).collect();
    Ok(Output::Map(MapResult { provenance, x, y, amplitude: rows.iter().map(|r| r[2]).collect(), phase, missing }))
}

type Values = Vec<Option<f64>>;

fn to_values(v: &[f64]) -> Values {
    v.iter().map(|&x| x.is_finite().then_some(x)).collect()
}

fn from_values(v: Values) -> Vec<f64> {
    v.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect()
}

#[derive(Serialize, Deserialize)]
struct JsonAxis {
    name: String,
    unit: String,
    values: Values,
}

#[derive(Serialize, Deserialize)]
struct JsonColumn {
    name: String,
    unit: String,
    values: Values,
}

#[derive(Serialize, Deserialize)]
struct JsonMissing {
    index: usize,
    error: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonBody {
    Table {
        columns: Vec<JsonColumn>,
        failures: Vec<Option<String>>,
    },
    Map {
        x_axis: JsonAxis,
        y_axis: JsonAxis,
        /// `[len(y_axis), len(x_axis)]`
        shape: [usize; 2],
        amplitude: Values,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        phase: Option<Values>,
        missing: Vec<JsonMissing>,
    },
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    schema_version: u32,
    #[serde(flatten)]
    provenance: Provenance,
    #[serde(flatten)]
    body: JsonBody,
}

pub fn to_json(output: &Output) -> String {
    let body = match output {
        Output::Table(t) => JsonBody::Table {
            columns: t
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| JsonColumn {
                    name: c.name.clone(),
                    unit: c.unit.clone(),
                    values: to_values(&t.rows.iter().map(|r| r[i]).collect::<Vec<_>>()),
                })
                .collect(),
            failures: t.failures.clone(),
        },
        Output::Map(m) => {
            let axis = |a: &Axis| JsonAxis { name: a.name.clone(), unit: a.unit.clone(), values: to_values(&a.values) };
            JsonBody::Map {
                x_axis: axis(&m.x),
                y_axis: axis(&m.y),
                shape: [m.y.values.len(), m.x.values.len()],
                amplitude: to_values(&m.amplitude),
                phase: m.phase.as_deref().map(to_values),
                missing: m.missing.iter().map(|(i, e)| JsonMissing { index: *i, error: e.clone() }).collect(),
            }
        }
    };
    let doc = JsonDoc { schema_version: SCHEMA_VERSION, provenance: output.provenance().clone(), body };
    serde_json::to_string_pretty(&doc).expect("json encoding of plain data") + "\n"
}

fn from_json(text: &str) -> Result<Output, ParseError> {
    let doc: JsonDoc = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(ParseError::Shape(format!("unsupported schema_version {}", doc.schema_version)));
    }
    Ok(match doc.body {
        JsonBody::Table { columns, failures } => {
            let n = failures.len();
            let mut rows = vec![Vec::with_capacity(columns.len()); n];
            let mut header = Vec::new();
            for c in columns {
                if c.values.len() != n {
                    return Err(ParseError::Shape(format!("column `{}` is not {n} long", c.name)));
                }
                for (row, v) in rows.iter_mut().zip(from_values(c.values)) {
                    row.push(v);
                }
                header.push(Column::new(c.name, c.unit));
            }
            Output::Table(ResultTable { provenance: doc.provenance, columns: header, rows, failures })
        }
        JsonBody::Map { x_axis, y_axis, shape, amplitude, phase, missing } => {
            let axis = |a: JsonAxis| Axis { name: a.name, unit: a.unit, values: from_values(a.values) };
            let (x, y) = (axis(x_axis), axis(y_axis));
            let len = x.values.len() * y.values.len();
            if shape != [y.values.len(), x.values.len()] || amplitude.len() != len {
                return Err(ParseError::Shape("values do not match the axes".into()));
            }
            Output::Map(MapResult {
                provenance: doc.provenance,
                x,
                y,
                amplitude: from_values(amplitude),
                phase: phase.map(from_values),
                missing: missing.into_iter().map(|m| (m.index, m.error)).collect(),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Output {
        let mut t = ResultTable::new(
            Provenance::new("ab".repeat(32), "demo"),
            vec![Column::new("cpb.flux", "Phi0"), Column::new("E_J", "Hz")],
        );
        t.push(vec![0.1, 1.0 / 3.0], None);
        t.push(vec![f64::MIN_POSITIVE, -2.5e-300], None);
        t.push(vec![0.3, f64::NAN], Some("bad point, \"quoted\"".into()));
        Output::Table(t)
    }

    fn map() -> Output {
        Output::Map(MapResult {
            provenance: Provenance::new("cd".repeat(32), "single_tone_map"),
            x: Axis { name: "cpb.flux".into(), unit: "Phi0".into(), values: vec![0.0, 0.5, 1.0] },
            y: Axis { name: "omega".into(), unit: "Hz".into(), values: vec![1.9e9, 1.94e9] },
            amplitude: vec![0.1, f64::NAN, 0.7 / 3.0, 1e-17, f64::NAN, 0.2],
            phase: Some(vec![-1.0, f64::NAN, 3.1, 0.0, f64::NAN, -0.0]),
            missing: vec![(1, "dimension cap".into())],
        })
    }

    fn same_bits(a: &Output, b: &Output) -> bool {
        let bits = |v: &[f64]| v.iter().map(|x| if x.is_nan() { u64::MAX } else { x.to_bits() }).collect::<Vec<_>>();
        match (a, b) {
            (Output::Table(a), Output::Table(b)) => {
                a.provenance == b.provenance
                    && a.columns == b.columns
                    && a.failures == b.failures
                    && a.rows.len() == b.rows.len()
                    && a.rows.iter().zip(&b.rows).all(|(x, y)| bits(x) == bits(y))
            }
            (Output::Map(a), Output::Map(b)) => {
                a.provenance == b.provenance
                    && a.missing == b.missing
                    && bits(&a.x.values) == bits(&b.x.values)
                    && bits(&a.y.values) == bits(&b.y.values)
                    && bits(&a.amplitude) == bits(&b.amplitude)
                    && a.phase.as_deref().map(bits) == b.phase.as_deref().map(bits)
            }
            _ => false,
        }
    }

    #[test]
    fn round_trips_are_bit_exact() {
        for out in [table(), map()] {
            for format in [Format::Csv, Format::JsonMap] {
                let back = parse(&export(&out, format), format).unwrap();
                assert!(same_bits(&out, &back), "{format:?}: {back:?}");
            }
        }
    }

    #[test]
    fn csv_layout() {
        let text = to_csv(&table());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(concat!("# tool: qcnr ", env!("CARGO_PKG_VERSION"))));
        assert!(text.contains(&format!("# config_sha256: {}\n", "ab".repeat(32))));
        assert!(text.contains("# units: Phi0,Hz,text\n"));
        assert!(text.contains("\ncpb.flux,E_J,failure\n1e-1,3.333333333333333e-1,\n"));
    }

    #[test]
    fn json_map_values_cover_the_grid() {
        let text = to_json(&map());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["kind"], "map");
        assert_eq!(v["amplitude"].as_array().unwrap().len(), 3 * 2);
        assert_eq!(v["shape"], serde_json::json!([2, 3]));
    }
}
