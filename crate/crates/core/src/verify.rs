//! Parameter grids, verification reports and the sweep driver behind
//! `reciplab verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::{int, parse_cyclotomic, parse_rational, Cyclotomic, Rational, Scalar};
use crate::barnes::barnes_fe;
use crate::characters::enumerate_characters;
use crate::dedekind::{th11_residual, twisted_residuals, Residual, Th4Context, TwistOutcome};
use crate::error::Error;
use crate::hardy::{apostol_reciprocity, m5_residual, remark2_first, remark2_second};
use crate::hq::{distribution_residual, HqParams};
use crate::lerch::multiple_l_neg;
use crate::padic::{th13_residual, th19_residual, valuation_of, witt_residual, PadicResidual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Th11,
    Th4,
    Twisted,
    Th20,
    Distribution,
    Witt,
    Th13,
    Th19,
    Apostol,
    Remark2,
    M5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Th11,
        TheoremId::Th4,
        TheoremId::Twisted,
        TheoremId::Th20,
        TheoremId::Distribution,
        TheoremId::Witt,
        TheoremId::Th13,
        TheoremId::Th19,
        TheoremId::Apostol,
        TheoremId::Remark2,
        TheoremId::M5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Th11 => "th11",
            TheoremId::Th4 => "th4",
            TheoremId::Twisted => "twisted",
            TheoremId::Th20 => "th20",
            TheoremId::Distribution => "distribution",
            TheoremId::Witt => "witt",
            TheoremId::Th13 => "th13",
            TheoremId::Th19 => "th19",
            TheoremId::Apostol => "apostol",
            TheoremId::Remark2 => "remark2",
            TheoremId::M5 => "m5",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedPole,
    /// A reported mismatch in a claim that is evaluated but not enforced.
    Finding,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedPole => "skipped-pole",
            Status::Finding => "finding",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    fn new(theorem: impl Into<String>, params: Map<String, Value>, status: Status) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            params,
            lhs: None,
            rhs: None,
            residual: None,
            status,
            detail: None,
            elapsed_ms: None,
        }
    }

    fn from_error(theorem: impl Into<String>, params: Map<String, Value>, e: &Error) -> Self {
        let status = match e {
            Error::PoleAtOne(_) | Error::DegenerateParams(_) => Status::SkippedPole,
            _ => Status::Fail,
        };
        VerificationReport { detail: Some(e.to_string()), ..Self::new(theorem, params, status) }
    }

    fn exact<F: Scalar>(theorem: &str, params: Map<String, Value>, r: crate::Result<Residual<F>>) -> Self {
        match r {
            Ok(r) => {
                let status = if r.holds() { Status::Pass } else { Status::Fail };
                VerificationReport {
                    lhs: Some(r.lhs.to_json()),
                    rhs: Some(r.rhs.to_json()),
                    residual: Some(r.residual().to_json()),
                    ..Self::new(theorem, params, status)
                }
            }
            Err(e) => Self::from_error(theorem, params, &e),
        }
    }

    fn padic(theorem: &str, params: Map<String, Value>, r: crate::Result<PadicResidual>, bound: i64) -> Self {
        match r {
            Ok(r) => {
                let v = r.valuation();
                let status = if v >= bound { Status::Pass } else { Status::Fail };
                VerificationReport {
                    lhs: Some(r.lhs.to_json()),
                    rhs: Some(r.rhs.to_json()),
                    residual: Some(r.residual.to_json()),
                    detail: Some(format!("valuation {v}, bound {bound}")),
                    ..Self::new(theorem, params, status)
                }
            }
            Err(e) => Self::from_error(theorem, params, &e),
        }
    }

    /// `theorem k=v ...: status`.
    pub fn summary(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect();
        let mut line = format!("{} {}: {}", self.theorem, params.join(" "), self.status);
        if let Some(d) = &self.detail {
            line.push_str(&format!(" ({d})"));
        }
        line
    }
}

pub fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ConfigError {
    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        ConfigError { line, column, message: message.into() }
    }

    fn for_key(src: &str, key: &str, message: impl Into<String>) -> Self {
        let mut offset = 0;
        for l in src.split_inclusive('\n') {
            let t = l.trim_start();
            if let Some(rest) = t.strip_prefix(key) {
                if rest.trim_start().starts_with('=') {
                    return Self::at(src, offset + (l.len() - t.len()), message);
                }
            }
            offset += l.len();
        }
        ConfigError { line: 0, column: 0, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl ParamValue {
    fn to_json(&self) -> Value {
        match self {
            ParamValue::Int(i) => json!(i),
            ParamValue::Text(s) => json!(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Int,
    /// Element of a cyclotomic field.
    Scalar,
    Rational,
    /// Comma-separated positive integers.
    Tuple,
    /// A rational, or `1+p`.
    PadicBase,
}

impl Kind {
    fn check(self, s: &str) -> Result<(), String> {
        match self {
            Kind::Int => unreachable!(),
            Kind::Scalar => parse_cyclotomic(s).map(|_| ()).map_err(|e| e.to_string()),
            Kind::Rational => parse_rational(s).map(|_| ()).map_err(|e| e.to_string()),
            Kind::Tuple => parse_tuple(s).map(|_| ()),
            Kind::PadicBase if s.replace(' ', "") == "1+p" => Ok(()),
            Kind::PadicBase => parse_rational(s).map(|_| ()).map_err(|e| e.to_string()),
        }
    }
}

fn parse_tuple(s: &str) -> Result<Vec<u64>, String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad entry `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.is_empty() || v.contains(&0) {
        return Err(format!("`{s}` must list positive integers"));
    }
    Ok(v)
}

fn ints(r: std::ops::RangeInclusive<i64>) -> Vec<ParamValue> {
    r.map(ParamValue::Int).collect()
}

fn texts(v: &[&str]) -> Vec<ParamValue> {
    v.iter().map(|s| ParamValue::Text(s.to_string())).collect()
}

fn tuples(r_max: usize, a_max: u64) -> Vec<ParamValue> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..r_max {
        cur = cur.iter().flat_map(|t| (1..=a_max).map(move |a| [t.clone(), vec![a]].concat())).collect();
        out.extend(cur.iter().map(|t| {
            ParamValue::Text(t.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        }));
    }
    out
}

/// Axis names, kinds and default values; the defaults are the acceptance grids.
fn axes(t: TheoremId) -> Vec<(&'static str, Kind, Vec<ParamValue>)> {
    use Kind::*;
    match t {
        TheoremId::Th11 => vec![
            ("n", Int, ints(0..=6)),
            ("h", Int, ints(1..=10)),
            ("k", Int, ints(1..=10)),
            ("u", Scalar, texts(&["2", "3", "-2", "5/2", "-1/2"])),
        ],
        TheoremId::Th4 => vec![
            ("n", Int, ints(0..=4)),
            ("h", Int, ints(1..=8)),
            ("k", Int, ints(1..=8)),
            ("u", Scalar, texts(&["2", "3"])),
            ("fmax", Int, ints(12..=12)),
        ],
        TheoremId::Twisted => vec![
            ("n", Int, ints(0..=3)),
            ("h", Int, ints(1..=20)),
            ("k", Int, ints(1..=20)),
            ("hkmax", Int, ints(20..=20)),
        ],
        TheoremId::Th20 => vec![
            ("n", Int, ints(0..=5)),
            ("a", Tuple, tuples(3, 4)),
            ("u", Scalar, texts(&["2", "-3", "5/2", "z5"])),
            ("x", Rational, texts(&["0", "1/2", "7/3"])),
        ],
        TheoremId::Distribution => vec![
            ("n", Int, ints(0..=5)),
            ("m", Int, ints(1..=4)),
            ("h", Int, ints(1..=3)),
            ("d", Int, ints(1..=6)),
            ("x", Rational, texts(&["0", "1/2"])),
        ],
        TheoremId::Witt => vec![
            ("p", Int, vec![ParamValue::Int(5), ParamValue::Int(7)]),
            ("q", PadicBase, texts(&["1+p"])),
            ("h", Int, ints(1..=2)),
            ("n", Int, ints(0..=6)),
            ("level", Int, ints(1..=5)),
        ],
        TheoremId::Th13 | TheoremId::Th19 => {
            let mut v = vec![
                ("p", Int, ints(5..=5)),
                ("q", PadicBase, texts(&["6"])),
                ("b", Int, vec![ParamValue::Int(5), ParamValue::Int(10)]),
                ("a", Int, ints(1..=9)),
                ("m", Int, vec![ParamValue::Int(3), ParamValue::Int(7)]),
                ("h", Int, ints(1..=2)),
                ("prec", Int, vec![ParamValue::Int(4), ParamValue::Int(6)]),
                ("cutoff", Int, vec![ParamValue::Int(4), ParamValue::Int(6)]),
                ("slack", Int, ints(2..=2)),
            ];
            if t == TheoremId::Th19 {
                v.push(("i", Int, ints(1..=2)));
            }
            v
        }
        TheoremId::Apostol => vec![
            ("n", Int, vec![1, 3, 5, 7].into_iter().map(ParamValue::Int).collect()),
            ("h", Int, ints(1..=10)),
            ("k", Int, ints(1..=10)),
        ],
        TheoremId::Remark2 | TheoremId::M5 => {
            vec![("n", Int, ints(0..=4)), ("h", Int, ints(1..=15)), ("k", Int, ints(1..=15))]
        }
    }
}

/// One grid point: axis name to value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point(BTreeMap<String, ParamValue>);

impl Point {
    fn int(&self, key: &str) -> i64 {
        match self.0.get(key) {
            Some(ParamValue::Int(i)) => *i,
            other => panic!("axis {key} is not an integer: {other:?}"),
        }
    }

    fn text(&self, key: &str) -> &str {
        match self.0.get(key) {
            Some(ParamValue::Text(s)) => s,
            other => panic!("axis {key} is not text: {other:?}"),
        }
    }

    fn params(&self) -> Map<String, Value> {
        self.0.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()
    }
}

fn usize_of(i: i64) -> usize {
    usize::try_from(i).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    theorem: TheoremId,
    axes: BTreeMap<String, Vec<ParamValue>>,
}

impl Grid {
    pub fn default_for(theorem: TheoremId) -> Self {
        let axes = axes(theorem).into_iter().map(|(n, _, v)| (n.to_string(), v)).collect();
        Grid { theorem, axes }
    }

    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    /// Replaces one axis; values are checked as in a config file.
    pub fn with_axis(mut self, name: &str, values: Vec<ParamValue>) -> Result<Self, ConfigError> {
        let kind = axes(self.theorem)
            .into_iter()
            .find(|(n, _, _)| *n == name)
            .map(|(_, k, _)| k)
            .ok_or_else(|| ConfigError { line: 0, column: 0, message: format!("unknown parameter `{name}`") })?;
        let values = normalize_axis(kind, values).map_err(|m| ConfigError { line: 0, column: 0, message: m })?;
        self.axes.insert(name.to_string(), values);
        Ok(self)
    }

    /// Reads a flat TOML grid. `theorem` names the identity unless given by
    /// the caller; every other key is an axis holding an integer, a list, or a
    /// range string such as `"1..=6"`.
    pub fn parse(src: &str, theorem: Option<TheoremId>) -> Result<Self, ConfigError> {
        let table: toml::Table = src.parse().map_err(|e: toml::de::Error| {
            let offset = e.span().map_or(0, |s| s.start);
            ConfigError::at(src, offset, e.message().to_string())
        })?;
        let named = match table.get("theorem") {
            None => None,
            Some(toml::Value::String(s)) => {
                Some(s.parse::<TheoremId>().map_err(|m| ConfigError::for_key(src, "theorem", m))?)
            }
            Some(_) => return Err(ConfigError::for_key(src, "theorem", "`theorem` must be a string")),
        };
        let theorem = match (theorem, named) {
            (Some(a), Some(b)) if a != b => {
                return Err(ConfigError::for_key(src, "theorem", format!("grid is for `{b}`, not `{a}`")))
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(ConfigError { line: 1, column: 1, message: "missing `theorem` key".into() }),
        };
        let mut grid = Grid::default_for(theorem);
        let specs = axes(theorem);
        for (key, value) in &table {
            if key == "theorem" {
                continue;
            }
            let Some((_, kind, _)) = specs.iter().find(|(n, _, _)| n == key) else {
                let known: Vec<&str> = specs.iter().map(|(n, _, _)| *n).collect();
                return Err(ConfigError::for_key(
                    src,
                    key,
                    format!("unknown parameter `{key}` for {theorem} (expected one of {})", known.join(", ")),
                ));
            };
            let values = read_axis(*kind, value)
                .and_then(|v| normalize_axis(*kind, v))
                .map_err(|m| ConfigError::for_key(src, key, format!("`{key}`: {m}")))?;
            grid.axes.insert(key.clone(), values);
        }
        Ok(grid)
    }

    /// Admissible points in lexicographic order of axis name, then value.
    pub fn points(&self) -> Vec<Point> {
        let mut points = vec![BTreeMap::new()];
        for (name, values) in &self.axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(name.clone(), v.clone());
                        q
                    })
                })
                .collect();
        }
        points.into_iter().map(Point).filter(|p| admissible(self.theorem, p)).collect()
    }
}

fn read_axis(kind: Kind, v: &toml::Value) -> Result<Vec<ParamValue>, String> {
    match v {
        toml::Value::Integer(i) if kind == Kind::Int => Ok(vec![ParamValue::Int(*i)]),
        toml::Value::String(s) if kind == Kind::Int => parse_range(s),
        toml::Value::Integer(i) => Ok(vec![ParamValue::Text(i.to_string())]),
        toml::Value::String(s) => Ok(vec![ParamValue::Text(s.clone())]),
        toml::Value::Array(items) => {
            let mut out = Vec::new();
            for item in items {
                match item {
                    toml::Value::Array(_) => return Err("nested lists are not allowed".into()),
                    other => out.extend(read_axis(kind, other)?),
                }
            }
            Ok(out)
        }
        other => Err(format!("unsupported value `{other}`")),
    }
}

fn parse_range(s: &str) -> Result<Vec<ParamValue>, String> {
    let bad = || format!("`{s}` is not an integer range like `1..=6`");
    let (lo, hi, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        return s.trim().parse().map(|i| vec![ParamValue::Int(i)]).map_err(|_| bad());
    };
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    let hi = if inclusive { hi } else { hi - 1 };
    if hi < lo {
        return Err(format!("range `{s}` is empty"));
    }
    Ok(ints(lo..=hi))
}

fn normalize_axis(kind: Kind, mut values: Vec<ParamValue>) -> Result<Vec<ParamValue>, String> {
    if values.is_empty() {
        return Err("empty list".into());
    }
    for v in &values {
        match (kind, v) {
            (Kind::Int, ParamValue::Int(_)) => {}
            (Kind::Int, ParamValue::Text(s)) => return Err(format!("`{s}` is not an integer")),
            (k, ParamValue::Text(s)) => k.check(s)?,
            (_, ParamValue::Int(i)) => return Err(format!("{i} must be given as a string")),
        }
    }
    if kind == Kind::Int {
        values.sort();
    }
    let mut seen = Vec::with_capacity(values.len());
    values.retain(|v| {
        let fresh = !seen.contains(v);
        seen.push(v.clone());
        fresh
    });
    Ok(values)
}

fn coprime(a: i64, b: i64) -> bool {
    a.gcd(&b) == 1
}

fn admissible(t: TheoremId, p: &Point) -> bool {
    let nonneg = |k: &str| p.0.get(k).is_none_or(|v| !matches!(v, ParamValue::Int(i) if *i < 0));
    if !["n", "m"].iter().all(|k| nonneg(k)) {
        return false;
    }
    match t {
        TheoremId::Th11 | TheoremId::Th4 | TheoremId::Apostol => {
            let (h, k) = (p.int("h"), p.int("k"));
            h > 0 && k > 0 && coprime(h, k) && (t != TheoremId::Apostol || p.int("n") % 2 == 1)
        }
        TheoremId::Twisted => {
            let (h, k) = (p.int("h"), p.int("k"));
            h > 0 && k > 0 && coprime(h, k) && h * k >= 3 && h * k <= p.int("hkmax")
        }
        TheoremId::Distribution => p.int("m") >= 1 && p.int("d") >= 1 && p.int("h") != 0,
        TheoremId::Witt => p.int("p") > 2 && p.int("level") >= 0,
        TheoremId::Th13 | TheoremId::Th19 => {
            let (pr, a, b, m) = (p.int("p"), p.int("a"), p.int("b"), p.int("m"));
            pr > 2
                && b > 0
                && b % pr == 0
                && 0 < a
                && a < b
                && coprime(a, b)
                && (m + 1) % (pr - 1) == 0
                && p.int("cutoff") >= 0
        }
        TheoremId::Remark2 => {
            let (h, k) = (p.int("h"), p.int("k"));
            h > 0 && k > 0 && h % 2 == 0 && k % 2 == 1 && coprime(h, k)
        }
        TheoremId::M5 => {
            let (h, k) = (p.int("h"), p.int("k"));
            h > 0 && k > 0 && k % 2 == 1 && coprime(h, k)
        }
        TheoremId::Th20 => true,
    }
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn padic_base(s: &str, p: i64) -> Rational {
    if s.replace(' ', "") == "1+p" {
        int(1 + p)
    } else {
        parse_rational(s).expect("checked when the grid was read")
    }
}

/// Every report for one grid point.
pub fn evaluate(t: TheoremId, point: &Point) -> Vec<VerificationReport> {
    let params = point.params();
    let name = t.name();
    match t {
        TheoremId::Th11 => {
            let u = parse_cyclotomic(point.text("u")).expect("checked");
            vec![VerificationReport::exact(
                name,
                params,
                th11_residual(usize_of(point.int("n")), point.int("h"), point.int("k"), &u),
            )]
        }
        TheoremId::Th4 => {
            let u = parse_cyclotomic(point.text("u")).expect("checked");
            let (h, k) = (point.int("h") as u64, point.int("k") as u64);
            let ctx = match Th4Context::new(usize_of(point.int("n")), h, k, &u) {
                Ok(c) => c,
                Err(e) => return vec![VerificationReport::from_error(name, params, &e)],
            };
            let mut out = Vec::new();
            for f in divisors(h * k).into_iter().filter(|&f| f as i64 <= point.int("fmax")) {
                let chars = match enumerate_characters(f) {
                    Ok(c) => c,
                    Err(e) => {
                        out.push(VerificationReport::from_error(name, params.clone(), &e));
                        continue;
                    }
                };
                for chi in chars {
                    let mut p = params.clone();
                    p.insert("f".into(), json!(f));
                    p.insert("chi".into(), json!(chi.index()));
                    out.push(VerificationReport::exact(name, p, ctx.residual(&chi)));
                }
            }
            out
        }
        TheoremId::Twisted => {
            let (h, k) = (point.int("h") as u64, point.int("k") as u64);
            let mut out = Vec::new();
            for d in divisors(h * k - 1).into_iter().filter(|&d| d > 1) {
                let mut pd = params.clone();
                pd.insert("d".into(), json!(d));
                match twisted_residuals(usize_of(point.int("n")), h, k, d) {
                    Err(e) => out.push(VerificationReport::from_error(name, pd, &e)),
                    Ok(entries) => {
                        for e in entries {
                            let mut p = pd.clone();
                            p.insert("j".into(), json!(e.j));
                            p.insert(
                                "chi".into(),
                                e.character.map_or(Value::Null, |(f, i)| json!(format!("{f}#{i}"))),
                            );
                            out.push(match e.outcome {
                                TwistOutcome::Evaluated(r) => VerificationReport::exact(name, p, Ok(r)),
                                TwistOutcome::Skipped(why) => VerificationReport {
                                    detail: Some(why),
                                    ..VerificationReport::new(name, p, Status::SkippedPole)
                                },
                            });
                        }
                    }
                }
            }
            out
        }
        TheoremId::Th20 => {
            let a = parse_tuple(point.text("a")).expect("checked");
            let u = parse_cyclotomic(point.text("u")).expect("checked");
            let x = parse_rational(point.text("x")).expect("checked");
            let n = usize_of(point.int("n"));
            let r = (|| {
                let mut factor = Cyclotomic::one();
                for &aj in &a {
                    factor = factor * &(Cyclotomic::one() - &u.powi(-(aj as i64))?);
                }
                let lhs = factor * &multiple_l_neg(n, &x, &u, &a)?;
                let rhs = barnes_fe(n, &a, &u, &Cyclotomic::from_rational(&x))?;
                Ok(Residual { lhs, rhs })
            })();
            vec![VerificationReport::exact(name, params, r)]
        }
        TheoremId::Distribution => {
            let d = point.int("d") as u64;
            let x = parse_rational(point.text("x")).expect("checked");
            let mut out = Vec::new();
            for j in 0..d {
                let mut p = params.clone();
                p.insert("j".into(), json!(j));
                let zeta = Cyclotomic::root_of_unity(d, j as i64);
                let r = HqParams::new(point.int("h"), zeta).and_then(|hp| {
                    distribution_residual(usize_of(point.int("n")), &x, &hp, point.int("m") as u64)
                });
                out.push(match r {
                    Ok(r) => {
                        let status = if r.holds() { Status::Pass } else { Status::Fail };
                        let j = r.to_json();
                        VerificationReport {
                            lhs: Some(j["lhs"].clone()),
                            rhs: Some(j["rhs"].clone()),
                            residual: Some(j["residual"].clone()),
                            ..VerificationReport::new(name, p, status)
                        }
                    }
                    Err(e) => VerificationReport::from_error(name, p, &e),
                });
            }
            out
        }
        TheoremId::Witt => {
            let pr = point.int("p");
            let (n, level) = (usize_of(point.int("n")), point.int("level"));
            let q = padic_base(point.text("q"), pr);
            let bound = level - valuation_of(n as u64 + 1, pr as u64) - 1;
            vec![VerificationReport::padic(
                name,
                params,
                witt_residual(n, point.int("h"), &q, pr as u64, level as u32),
                bound,
            )]
        }
        TheoremId::Th13 | TheoremId::Th19 => {
            let pr = point.int("p");
            let q = padic_base(point.text("q"), pr);
            let (prec, cutoff) = (point.int("prec"), point.int("cutoff"));
            let bound = prec.min(cutoff) - point.int("slack");
            let (m, a, b, h) = (usize_of(point.int("m")), point.int("a"), point.int("b"), point.int("h"));
            let r = if t == TheoremId::Th13 {
                th13_residual(m, a, b, h, &q, pr as u64, prec, usize_of(cutoff))
            } else {
                th19_residual(m, a, b, h, &q, pr as u64, prec, usize_of(cutoff), point.int("i").unsigned_abs())
            };
            vec![VerificationReport::padic(name, params, r, bound)]
        }
        TheoremId::Apostol => vec![VerificationReport::exact(
            name,
            params,
            apostol_reciprocity(usize_of(point.int("n")), point.int("h"), point.int("k")),
        )],
        TheoremId::Remark2 => {
            let (n, h, k) = (usize_of(point.int("n")), point.int("h"), point.int("k"));
            let first = VerificationReport::exact("remark2.first", params.clone(), remark2_first(n, h, k));
            let mut second = VerificationReport::exact("remark2.second", params, remark2_second(n, h, k));
            if second.status == Status::Fail && second.lhs.is_some() {
                second.status = Status::Finding;
                second.detail = Some("sides differ".into());
            }
            vec![first, second]
        }
        TheoremId::M5 => vec![VerificationReport::exact(
            name,
            params,
            m5_residual(usize_of(point.int("n")), point.int("h"), point.int("k")),
        )],
    }
}

/// Totals by status.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped_pole: usize,
    pub finding: usize,
}

impl SweepSummary {
    pub fn record(&mut self, r: &VerificationReport) {
        match r.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::SkippedPole => self.skipped_pole += 1,
            Status::Finding => self.finding += 1,
        }
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pass, {} fail, {} skipped-pole, {} finding",
            self.pass, self.fail, self.skipped_pole, self.finding
        )
    }
}

/// Evaluates the grid on `jobs` threads and hands reports to `sink` in grid
/// order.
pub fn run_sweep(
    grid: &Grid,
    jobs: usize,
    timing: bool,
    mut sink: impl FnMut(&VerificationReport),
) -> crate::Result<SweepSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(e.to_string()))?;
    let points = grid.points();
    let t = grid.theorem();
    let mut summary = SweepSummary::default();
    for chunk in points.chunks(64 * jobs.max(1)) {
        let batch: Vec<Vec<VerificationReport>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|p| {
                    let start = Instant::now();
                    let mut reports = evaluate(t, p);
                    if timing {
                        let ms = start.elapsed().as_secs_f64() * 1e3;
                        for r in &mut reports {
                            r.elapsed_ms = Some(ms);
                        }
                    }
                    reports
                })
                .collect()
        });
        for r in batch.iter().flatten() {
            summary.record(r);
            sink(r);
        }
    }
    Ok(summary)
}

/// Collects a whole sweep.
pub fn sweep(grid: &Grid, jobs: usize) -> crate::Result<(Vec<VerificationReport>, SweepSummary)> {
    let mut out = Vec::new();
    let summary = run_sweep(grid, jobs, false, |r| out.push(r.clone()))?;
    Ok((out, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_th11_grid() {
        let src = "theorem = \"th11\"\nn = \"0..=2\"\nh = \"1..=4\"\nk = [1, 2, 3, 4]\nu = [\"2\"]\n";
        let grid = Grid::parse(src, None).unwrap();
        let (reports, summary) = sweep(&grid, 2).unwrap();
        assert_eq!(summary.pass, reports.len());
        assert_eq!(reports.len(), 3 * 11);
        assert_eq!(reports[0].params["h"], json!(1));
        assert_eq!(reports[0].params["k"], json!(1));
        assert_eq!(reports[0].params["n"], json!(0));
        assert_eq!(reports[1].params["n"], json!(1));
    }

    #[test]
    fn pole_points_are_skipped() {
        let grid = Grid::default_for(TheoremId::Th11)
            .with_axis("n", vec![ParamValue::Int(1)])
            .unwrap()
            .with_axis("u", vec![ParamValue::Text("z3".into()), ParamValue::Text("2".into())])
            .unwrap()
            .with_axis("h", vec![ParamValue::Int(1)])
            .unwrap()
            .with_axis("k", vec![ParamValue::Int(3)])
            .unwrap();
        let (reports, summary) = sweep(&grid, 1).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].status, Status::SkippedPole);
        assert_eq!(reports[1].status, Status::Pass);
        assert!(summary.ok());
    }

    #[test]
    fn config_errors_carry_positions() {
        let e = Grid::parse("theorem = \"th99\"\n", None).unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert!(e.message.contains("th99"));
        let e = Grid::parse("theorem = \"th11\"\n\n  w = [1]\n", None).unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = Grid::parse("theorem = \"th11\"\nn = [1, 2\n", None).unwrap_err();
        assert_eq!(e.line, 2);
        let e = Grid::parse("n = \"1..x\"\n", Some(TheoremId::Th11)).unwrap_err();
        assert!(e.message.contains("range"));
        let e = Grid::parse("u = [\"2/0\"]\n", Some(TheoremId::Th11)).unwrap_err();
        assert_eq!(e.line, 1);
        assert!(Grid::parse("theorem = \"th4\"\n", Some(TheoremId::Th11)).is_err());
        assert!(Grid::parse("n = 1\n", None).is_err());
    }

    #[test]
    fn reports_are_deterministic_across_job_counts() {
        let grid = Grid::parse("n = \"0..=2\"\nh = \"1..=5\"\nk = \"1..=5\"\nu = [\"3\", \"z4\"]\n", Some(TheoremId::Th11))
            .unwrap();
        let one: Vec<String> = sweep(&grid, 1).unwrap().0.iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        let four: Vec<String> = sweep(&grid, 4).unwrap().0.iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        assert_eq!(one, four);
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
            assert!(!Grid::default_for(t).points().is_empty(), "{t}");
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn remark2_second_is_reported_not_failed() {
        let grid = Grid::parse("n = 1\nh = 2\nk = 3\n", Some(TheoremId::Remark2)).unwrap();
        let (reports, summary) = sweep(&grid, 1).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].status, Status::Pass);
        assert_eq!(reports[1].status, Status::Finding);
        assert!(summary.ok());
    }
}
