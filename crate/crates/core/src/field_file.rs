//! Flat-file formats for sampled fields and loops.
//!
//! JSON lines: an optional header `{"meta": {"m": .., "n": .., "adjacency": "path" | [[a, b], ..]}}`
//! followed by one `{"point": [..], "tuple": [..]}` object per sample. Real
//! tuples are arrays of numbers; complex tuples are arrays of `[re, im]` pairs.
//! Numbers are written in shortest round-trip form, so parsing and writing a
//! file reproduces every value bit for bit.
//!
//! CSV (real tuples only): a header row naming point columns `p*` followed by
//! tuple columns `t*`, then one sample per row.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::metric::UnorderedTuple;
use crate::monodromy::ComplexLoop;
use crate::selection::{path_edges, LiftedField, SampledField};
use crate::tuple::{ComplexTuple, RealTuple};

#[derive(Clone, Debug, PartialEq)]
pub enum Adjacency {
    Path,
    Edges(Vec<(usize, usize)>),
}

impl Adjacency {
    pub fn edges(&self, len: usize) -> Vec<(usize, usize)> {
        match self {
            Adjacency::Path => path_edges(len),
            Adjacency::Edges(e) => e.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Adjacency::Path => json!("path"),
            Adjacency::Edges(e) => Value::Array(e.iter().map(|&(a, b)| json!([a, b])).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldTuples {
    Real(Vec<RealTuple>),
    Complex(Vec<ComplexTuple>),
}

impl FieldTuples {
    pub fn len(&self) -> usize {
        match self {
            FieldTuples::Real(v) => v.len(),
            FieldTuples::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, FieldTuples::Complex(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldFile {
    pub m: usize,
    pub n: usize,
    pub adjacency: Adjacency,
    pub points: Vec<Vec<f64>>,
    pub tuples: FieldTuples,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn as_number(v: &Value, line: usize, what: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| parse_err(line, format!("{what} must be a number, got {v}")))?;
    if !x.is_finite() {
        return Err(parse_err(line, format!("{what} is not finite")));
    }
    Ok(x)
}

fn number_array(v: &Value, line: usize, what: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| parse_err(line, format!("\"{what}\" must be an array")))?
        .iter()
        .map(|x| as_number(x, line, what))
        .collect()
}

fn complex_array(v: &[Value], line: usize) -> Result<Vec<Complex64>> {
    v.iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok(Complex64::new(
                as_number(re, line, "real part")?,
                as_number(im, line, "imaginary part")?,
            )),
            _ => Err(parse_err(line, "complex entries must be [re, im] pairs")),
        })
        .collect()
}

fn parse_edges(v: &Value, line: usize) -> Result<Adjacency> {
    if v.as_str() == Some("path") {
        return Ok(Adjacency::Path);
    }
    let list = v
        .as_array()
        .ok_or_else(|| parse_err(line, "adjacency must be \"path\" or a list of edges"))?;
    list.iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([a, b]) => match (a.as_u64(), b.as_u64()) {
                (Some(a), Some(b)) => Ok((a as usize, b as usize)),
                _ => Err(parse_err(line, "edge endpoints must be non-negative integers")),
            },
            _ => Err(parse_err(line, "edges must be [a, b] pairs")),
        })
        .collect::<Result<Vec<_>>>()
        .map(Adjacency::Edges)
}

struct Meta {
    m: Option<usize>,
    n: Option<usize>,
    adjacency: Adjacency,
}

fn parse_meta(v: &Value, line: usize) -> Result<Meta> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err(line, "\"meta\" must be an object"))?;
    let count = |key: &str| -> Result<Option<usize>> {
        obj.get(key)
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| parse_err(line, format!("meta \"{key}\" must be an integer")))
            })
            .transpose()
    };
    Ok(Meta {
        m: count("m")?,
        n: count("n")?,
        adjacency: obj
            .get("adjacency")
            .map(|a| parse_edges(a, line))
            .transpose()?
            .unwrap_or(Adjacency::Path),
    })
}

impl FieldFile {
    /// Parses a JSON-lines document. Blank lines are ignored; errors carry
    /// 1-based line numbers.
    pub fn parse_jsonl(text: &str) -> Result<Self> {
        let mut meta: Option<Meta> = None;
        let mut points = Vec::new();
        let mut real = Vec::new();
        let mut complex = Vec::new();
        let mut mode_complex: Option<bool> = None;
        let mut shape: Option<(usize, usize)> = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let value: Value =
                serde_json::from_str(raw).map_err(|e| parse_err(line, e.to_string()))?;
            let obj = value
                .as_object()
                .ok_or_else(|| parse_err(line, "each line must be a JSON object"))?;
            if let Some(m) = obj.get("meta") {
                if meta.is_some() || shape.is_some() {
                    return Err(parse_err(line, "meta header must be the first line"));
                }
                meta = Some(parse_meta(m, line)?);
                continue;
            }

            let point = number_array(
                obj.get("point")
                    .ok_or_else(|| parse_err(line, "missing \"point\""))?,
                line,
                "point",
            )?;
            let tuple = obj
                .get("tuple")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err(line, "missing or non-array \"tuple\""))?;
            let is_complex = tuple.first().is_some_and(Value::is_array);
            match mode_complex {
                None => mode_complex = Some(is_complex),
                Some(c) if c != is_complex && !tuple.is_empty() => {
                    return Err(parse_err(line, "mixed real and complex tuples"))
                }
                _ => {}
            }
            let n = tuple.len();
            match shape {
                None => {
                    if let Some(meta) = &meta {
                        if meta.m.is_some_and(|m| m != point.len()) {
                            return Err(parse_err(line, "point dimension disagrees with meta m"));
                        }
                        if meta.n.is_some_and(|mn| mn != n) {
                            return Err(parse_err(line, "tuple length disagrees with meta n"));
                        }
                    }
                    shape = Some((point.len(), n));
                }
                Some((m0, n0)) => {
                    if point.len() != m0 {
                        return Err(parse_err(
                            line,
                            format!("point has dimension {}, expected {m0}", point.len()),
                        ));
                    }
                    if n != n0 {
                        return Err(parse_err(line, format!("tuple has length {n}, expected {n0}")));
                    }
                }
            }
            if mode_complex == Some(true) {
                complex.push(
                    ComplexTuple::new(complex_array(tuple, line)?)
                        .map_err(|e| parse_err(line, e.to_string()))?,
                );
            } else {
                real.push(
                    RealTuple::new(number_array(&Value::Array(tuple.clone()), line, "tuple")?)
                        .map_err(|e| parse_err(line, e.to_string()))?,
                );
            }
            points.push(point);
        }

        let (m, n) = shape.ok_or(Error::Empty("field file has no samples"))?;
        let adjacency = meta.map_or(Adjacency::Path, |m| m.adjacency);
        let tuples = if mode_complex == Some(true) {
            FieldTuples::Complex(complex)
        } else {
            FieldTuples::Real(real)
        };
        let file = Self {
            m,
            n,
            adjacency,
            points,
            tuples,
        };
        file.check_edges()?;
        Ok(file)
    }

    /// Parses the real-only CSV layout.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .clone();
        let m = headers.iter().take_while(|h| h.starts_with('p')).count();
        let n = headers.len() - m;
        if n == 0 || !headers.iter().skip(m).all(|h| h.starts_with('t')) {
            return Err(parse_err(
                1,
                "header must name point columns p* followed by tuple columns t*",
            ));
        }
        let mut points = Vec::new();
        let mut tuples = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                parse_err(line, e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let values = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| parse_err(line, format!("invalid number '{f}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            points.push(values[..m].to_vec());
            tuples.push(RealTuple::new(values[m..].to_vec())?);
        }
        if tuples.is_empty() {
            return Err(Error::Empty("field file has no samples"));
        }
        Ok(Self {
            m,
            n,
            adjacency: Adjacency::Path,
            points,
            tuples: FieldTuples::Real(tuples),
        })
    }

    /// Reads a file, choosing CSV for a `.csv` extension and JSON lines otherwise.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            Self::parse_csv(&text)
        } else {
            Self::parse_jsonl(&text)
        }
    }

    fn check_edges(&self) -> Result<()> {
        let len = self.tuples.len();
        if let Adjacency::Edges(edges) = &self.adjacency {
            if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= len || b >= len) {
                return Err(Error::InvalidField(format!(
                    "edge ({a}, {b}) references a missing sample"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Sampled quotient field; complex files are refused.
    pub fn to_sampled_field(&self) -> Result<SampledField> {
        match &self.tuples {
            FieldTuples::Real(t) => SampledField::new(
                self.m,
                self.points.clone(),
                t.iter().cloned().map(UnorderedTuple::new).collect(),
                self.adjacency.edges(t.len()),
            ),
            FieldTuples::Complex(_) => Err(Error::InvalidField(
                "complex tuples cannot be lifted by sorting; use the holonomy command".into(),
            )),
        }
    }

    /// Samples in file order as a closed loop.
    pub fn to_loop(&self) -> Result<ComplexLoop> {
        match &self.tuples {
            FieldTuples::Real(t) => ComplexLoop::from_real(t),
            FieldTuples::Complex(t) => ComplexLoop::new(t.clone()),
        }
    }

    pub fn from_lifted(f: &LiftedField, adjacency: Adjacency) -> Self {
        Self {
            m: f.dim_m(),
            n: f.values().first().map_or(0, RealTuple::len),
            adjacency,
            points: f.points().to_vec(),
            tuples: FieldTuples::Real(f.values().to_vec()),
        }
    }

    /// Header line plus one line per sample, each terminated by `\n`.
    pub fn to_jsonl(&self) -> String {
        let mut meta = Map::new();
        meta.insert("adjacency".into(), self.adjacency.to_json());
        meta.insert("m".into(), json!(self.m));
        meta.insert("n".into(), json!(self.n));
        let mut out = json!({ "meta": meta }).to_string();
        out.push('\n');
        for i in 0..self.len() {
            let tuple = match &self.tuples {
                FieldTuples::Real(t) => json!(t[i].as_slice()),
                FieldTuples::Complex(t) => Value::Array(
                    t[i].as_slice().iter().map(|z| json!([z.re, z.im])).collect(),
                ),
            };
            out.push_str(&json!({ "point": self.points[i], "tuple": tuple }).to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_file_with_header() {
        let text = r#"{"meta": {"m": 1, "n": 2, "adjacency": [[0, 1]]}}
{"point": [0.0], "tuple": [3, 1]}

{"point": [1.0], "tuple": [0.5, -2.25]}
"#;
        let f = FieldFile::parse_jsonl(text).unwrap();
        assert_eq!((f.m, f.n, f.len()), (1, 2, 2));
        assert_eq!(f.adjacency, Adjacency::Edges(vec![(0, 1)]));
        let phi = f.to_sampled_field().unwrap();
        assert_eq!(phi.values()[0].canonical().as_slice(), &[1.0, 3.0]);
    }

    #[test]
    fn parses_complex_file() {
        let text = "{\"point\": [0], \"tuple\": [[1, 0], [-1, 0]]}\n";
        let f = FieldFile::parse_jsonl(text).unwrap();
        assert!(f.tuples.is_complex());
        assert!(f.to_sampled_field().is_err());
        assert_eq!(f.to_loop().unwrap().n(), 2);
    }

    #[test]
    fn reports_line_numbers() {
        let text = "{\"point\": [0], \"tuple\": [1, 2]}\n{\"point\": [1], \"tuple\": [1, 2, 3]}\n";
        assert!(matches!(
            FieldFile::parse_jsonl(text),
            Err(Error::Parse { line: 2, .. })
        ));
        let text = "{\"point\": [0], \"tuple\": [1, 2]}\nnot json\n";
        assert!(matches!(
            FieldFile::parse_jsonl(text),
            Err(Error::Parse { line: 2, .. })
        ));
        let text = "{\"point\": [0], \"tuple\": [1, 2]}\n{\"point\": [0], \"tuple\": [[1, 0], [2, 0]]}\n";
        assert!(matches!(
            FieldFile::parse_jsonl(text),
            Err(Error::Parse { line: 2, .. })
        ));
        let text = "{\"meta\": {\"n\": 3}}\n{\"point\": [0], \"tuple\": [1, 2]}\n";
        assert!(matches!(
            FieldFile::parse_jsonl(text),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_empty_and_dangling_edges() {
        assert!(FieldFile::parse_jsonl("\n\n").is_err());
        let text = "{\"meta\": {\"adjacency\": [[0, 5]]}}\n{\"point\": [0], \"tuple\": [1]}\n";
        assert!(matches!(FieldFile::parse_jsonl(text), Err(Error::InvalidField(_))));
    }

    #[test]
    fn jsonl_round_trip_is_bit_exact() {
        let text = "{\"point\": [0.1], \"tuple\": [0.30000000000000004, 1e-300, -7.125]}\n\
                    {\"point\": [0.2], \"tuple\": [2.5, 3.0, 1.7976931348623157e308]}\n";
        let f = FieldFile::parse_jsonl(text).unwrap();
        let written = f.to_jsonl();
        let again = FieldFile::parse_jsonl(&written).unwrap();
        assert_eq!(again, f);
        assert_eq!(again.to_jsonl(), written);
    }

    #[test]
    fn csv_layout() {
        let text = "p0,p1,t0,t1,t2\n0,0,3,1,2\n1,0,1,1,1\n";
        let f = FieldFile::parse_csv(text).unwrap();
        assert_eq!((f.m, f.n, f.len()), (2, 3, 2));
        assert!(FieldFile::parse_csv("a,b\n1,2\n").is_err());
        assert!(matches!(
            FieldFile::parse_csv("p0,t0\n0,1\n1,x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
