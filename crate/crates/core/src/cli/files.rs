//! JSON interchange formats: algebra files (optionally with a Hopf block),
//! group tables, pairing matrices and fusion data.
//!
//! Objects are written with sorted keys, sparse entries sorted by their
//! indices, zero entries omitted and rationals as lowest-terms `"p/q"`
//! strings, so saving a loaded canonical file reproduces it byte for byte.

use serde_json::{json, Map, Value};

use crate::finalg::algebra::{AlgebraError, StarAlgebra};
use crate::finalg::linalg::{sparse_from_dense, Accumulator, SparseVec};
use crate::finalg::scalar::{
    format_rational, parse_rational, GaussRat, Laurent, Scalar, ScalarKind,
};
use crate::fusion_zero::{FusionDatum, Sign};
use crate::hopf::{GroupTable, HopfStarAlgebra, PairingMatrix};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct FileError(pub String);

impl FileError {
    fn new(msg: impl Into<String>) -> Self {
        FileError(msg.into())
    }
}

impl From<AlgebraError> for FileError {
    fn from(e: AlgebraError) -> Self {
        FileError(e.to_string())
    }
}

/// Pretty JSON with a trailing newline; keys come out sorted because
/// `serde_json::Map` is ordered.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value, FileError> {
    serde_json::from_str(text).map_err(|e| FileError::new(format!("invalid JSON: {e}")))
}

/// Scalars that can be written into sparse entries. A Gaussian rational
/// occupies two trailing fields (`"re"`, `"im"`); a Laurent polynomial one
/// field holding a list of `{"exp", "re", "im"}` objects.
pub trait FileScalar: Scalar {
    const WIDTH: usize;
    fn encode(&self) -> Vec<Value>;
    fn decode(fields: &[Value]) -> Result<Self, FileError>;
}

fn rational_field(v: &Value) -> Result<crate::finalg::scalar::Rational, FileError> {
    let s = v
        .as_str()
        .ok_or_else(|| FileError::new(format!("expected a rational string, got {v}")))?;
    parse_rational(s).map_err(|e| FileError::new(e.to_string()))
}

impl FileScalar for GaussRat {
    const WIDTH: usize = 2;

    fn encode(&self) -> Vec<Value> {
        vec![
            json!(format_rational(&self.re)),
            json!(format_rational(&self.im)),
        ]
    }

    fn decode(fields: &[Value]) -> Result<Self, FileError> {
        Ok(GaussRat::new(
            rational_field(&fields[0])?,
            rational_field(&fields[1])?,
        ))
    }
}

impl FileScalar for Laurent {
    const WIDTH: usize = 1;

    fn encode(&self) -> Vec<Value> {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"exp": e, "re": format_rational(&c.re), "im": format_rational(&c.im)}))
            .collect();
        vec![Value::Array(terms)]
    }

    fn decode(fields: &[Value]) -> Result<Self, FileError> {
        let terms = fields[0]
            .as_array()
            .ok_or_else(|| FileError::new("Laurent coefficient must be a list of terms"))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(Value::as_i64)
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| FileError::new(format!("Laurent term without integer exp: {t}")))?;
            let re = rational_field(t.get("re").unwrap_or(&Value::Null))?;
            let im = rational_field(t.get("im").unwrap_or(&Value::Null))?;
            out.push((exp, GaussRat::new(re, im)));
        }
        Ok(Laurent::from_terms(out))
    }
}

fn entry<S: FileScalar>(indices: &[usize], c: &S) -> Value {
    let mut v: Vec<Value> = indices.iter().map(|&i| json!(i)).collect();
    v.extend(c.encode());
    Value::Array(v)
}

/// Parses sparse entries of the form `[i₁, …, i_k, <scalar fields>]`.
fn entries<S: FileScalar>(
    v: Option<&Value>,
    k: usize,
    what: &str,
) -> Result<Vec<(Vec<usize>, S)>, FileError> {
    let list = v
        .and_then(Value::as_array)
        .ok_or_else(|| FileError::new(format!("`{what}` must be a list")))?;
    let mut out = Vec::with_capacity(list.len());
    for e in list {
        let arr = e
            .as_array()
            .filter(|a| a.len() == k + S::WIDTH)
            .ok_or_else(|| {
                FileError::new(format!(
                    "`{what}` entry {e} must have {} fields",
                    k + S::WIDTH
                ))
            })?;
        let idx = arr[..k]
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                FileError::new(format!("`{what}` entry {e} has a non-index position"))
            })?;
        out.push((idx, S::decode(&arr[k..])?));
    }
    Ok(out)
}

fn check_range(idx: &[usize], bound: usize, what: &str) -> Result<(), FileError> {
    match idx.iter().find(|&&i| i >= bound) {
        Some(i) => Err(FileError::new(format!(
            "`{what}` index {i} out of range for dimension {bound}"
        ))),
        None => Ok(()),
    }
}

fn check_version(v: &Value) -> Result<(), FileError> {
    match v.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(()),
        Some(other) => Err(FileError::new(format!(
            "unsupported format_version {other}"
        ))),
        None => Err(FileError::new("missing integer `format_version`")),
    }
}

/// Either a bare algebra or a Hopf algebra, over one scalar kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Doc<S> {
    Plain(StarAlgebra<S>),
    Hopf(HopfStarAlgebra<S>),
}

impl<S: Scalar> Doc<S> {
    pub fn algebra(&self) -> &StarAlgebra<S> {
        match self {
            Doc::Plain(a) => a,
            Doc::Hopf(h) => h.algebra(),
        }
    }

    pub fn hopf(&self) -> Option<&HopfStarAlgebra<S>> {
        match self {
            Doc::Plain(_) => None,
            Doc::Hopf(h) => Some(h),
        }
    }
}

/// A loaded algebra file of either scalar kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyDoc {
    Gauss(Doc<GaussRat>),
    Laurent(Doc<Laurent>),
}

impl AnyDoc {
    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyDoc::Gauss(_) => ScalarKind::GaussianRational,
            AnyDoc::Laurent(_) => ScalarKind::Laurent,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyDoc::Gauss(d) => doc_to_json(d),
            AnyDoc::Laurent(d) => doc_to_json(d),
        }
    }
}

pub fn doc_to_json<S: FileScalar>(d: &Doc<S>) -> Value {
    match d {
        Doc::Plain(a) => algebra_to_json(a, None),
        Doc::Hopf(h) => algebra_to_json(h.algebra(), Some(h)),
    }
}

pub fn algebra_to_json<S: FileScalar>(
    a: &StarAlgebra<S>,
    hopf: Option<&HopfStarAlgebra<S>>,
) -> Value {
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.mul_basis(i, j) {
                mult.push(entry(&[i, j, *k], c));
            }
        }
    }
    let unit: Vec<Value> = sparse_from_dense(a.unit())
        .iter()
        .map(|(k, c)| entry(&[*k], c))
        .collect();
    let star: Vec<Value> = (0..n)
        .flat_map(|i| a.star_basis(i).iter().map(move |(k, c)| entry(&[i, *k], c)))
        .collect();
    let mut obj = Map::new();
    obj.insert("format_version".into(), json!(FORMAT_VERSION));
    obj.insert("scalar".into(), json!(S::KIND.as_str()));
    obj.insert("dim".into(), json!(n));
    obj.insert("basis_labels".into(), json!(a.labels()));
    obj.insert("mult".into(), Value::Array(mult));
    obj.insert("unit".into(), Value::Array(unit));
    obj.insert("star".into(), Value::Array(star));
    if let Some(h) = hopf {
        let comult: Vec<Value> = (0..n)
            .flat_map(|i| {
                h.comult_basis(i)
                    .iter()
                    .map(move |(jk, c)| entry(&[i, jk / n, jk % n], c))
            })
            .collect();
        let counit: Vec<Value> = sparse_from_dense(h.counit())
            .iter()
            .map(|(k, c)| entry(&[*k], c))
            .collect();
        let antipode: Vec<Value> = (0..n)
            .flat_map(|i| {
                h.antipode_basis(i)
                    .iter()
                    .map(move |(k, c)| entry(&[i, *k], c))
            })
            .collect();
        obj.insert(
            "hopf".into(),
            json!({"comult": comult, "counit": counit, "antipode": antipode}),
        );
    }
    Value::Object(obj)
}

fn dense_from_entries<S: Scalar>(
    es: Vec<(Vec<usize>, S)>,
    n: usize,
    what: &str,
) -> Result<Vec<S>, FileError> {
    let mut acc = Accumulator::new();
    for (idx, c) in es {
        check_range(&idx, n, what)?;
        acc.add(idx[0], &c);
    }
    Ok(crate::finalg::linalg::dense_from_sparse(&acc.finish(), n))
}

fn grouped<S: Scalar>(
    es: Vec<(Vec<usize>, S)>,
    groups: usize,
    flatten: impl Fn(&[usize]) -> usize,
) -> Vec<SparseVec<S>> {
    let mut out = vec![Accumulator::new(); groups];
    for (idx, c) in es {
        out[idx[0]].add(flatten(&idx[1..]), &c);
    }
    out.into_iter().map(Accumulator::finish).collect()
}

fn load_doc<S: FileScalar>(v: &Value) -> Result<Doc<S>, FileError> {
    let labels: Vec<String> = v
        .get("basis_labels")
        .and_then(Value::as_array)
        .ok_or_else(|| FileError::new("`basis_labels` must be a list of strings"))?
        .iter()
        .map(|l| l.as_str().map(str::to_string))
        .collect::<Option<_>>()
        .ok_or_else(|| FileError::new("`basis_labels` must be a list of strings"))?;
    let n = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FileError::new("missing integer `dim`"))? as usize;
    if labels.len() != n {
        return Err(FileError::new(format!(
            "`dim` is {n} but there are {} basis labels",
            labels.len()
        )));
    }
    let mult = entries::<S>(v.get("mult"), 3, "mult")?;
    for (idx, _) in &mult {
        check_range(idx, n, "mult")?;
    }
    let products = grouped(
        mult.into_iter()
            .map(|(idx, c)| (vec![idx[0] * n + idx[1], idx[2]], c))
            .collect(),
        n * n,
        |r| r[0],
    );
    let unit = dense_from_entries(entries::<S>(v.get("unit"), 1, "unit")?, n, "unit")?;
    let star = entries::<S>(v.get("star"), 2, "star")?;
    for (idx, _) in &star {
        check_range(idx, n, "star")?;
    }
    let stars = grouped(star, n, |r| r[0]);
    let alg = StarAlgebra::new(labels, products, unit, stars)?;
    let Some(h) = v.get("hopf") else {
        return Ok(Doc::Plain(alg));
    };
    let comult = entries::<S>(h.get("comult"), 3, "hopf.comult")?;
    for (idx, _) in &comult {
        check_range(idx, n, "hopf.comult")?;
    }
    let comult = grouped(comult, n, |r| r[0] * n + r[1]);
    let counit = dense_from_entries(
        entries::<S>(h.get("counit"), 1, "hopf.counit")?,
        n,
        "hopf.counit",
    )?;
    let antipode = entries::<S>(h.get("antipode"), 2, "hopf.antipode")?;
    for (idx, _) in &antipode {
        check_range(idx, n, "hopf.antipode")?;
    }
    let antipode = grouped(antipode, n, |r| r[0]);
    Ok(Doc::Hopf(HopfStarAlgebra::new(
        alg, comult, counit, antipode,
    )?))
}

/// Parses an algebra file of either scalar kind.
pub fn parse_algebra(text: &str) -> Result<AnyDoc, FileError> {
    let v = parse_json(text)?;
    check_version(&v)?;
    match v.get("scalar").and_then(Value::as_str) {
        Some("gaussian_rational") => Ok(AnyDoc::Gauss(load_doc(&v)?)),
        Some("laurent") => Ok(AnyDoc::Laurent(load_doc(&v)?)),
        Some(other) => Err(FileError::new(format!("unknown scalar kind `{other}`"))),
        None => Err(FileError::new("missing `scalar`")),
    }
}

/// Group table: either a bare `n×n` index matrix, or an object with
/// `table` and optional `names`.
pub fn parse_group(text: &str) -> Result<GroupTable, FileError> {
    let v = parse_json(text)?;
    let (table_v, names_v) = match &v {
        Value::Array(_) => (&v, None),
        Value::Object(o) => (
            o.get("table")
                .ok_or_else(|| FileError::new("group file needs `table`"))?,
            o.get("names"),
        ),
        _ => return Err(FileError::new("group file must be a matrix or an object")),
    };
    let table: Vec<Vec<usize>> = table_v
        .as_array()
        .ok_or_else(|| FileError::new("`table` must be a list of rows"))?
        .iter()
        .map(|row| {
            row.as_array()?
                .iter()
                .map(|x| x.as_u64().map(|u| u as usize))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()
        .ok_or_else(|| FileError::new("`table` entries must be non-negative integers"))?;
    let group = match names_v {
        None => GroupTable::new(table),
        Some(nv) => {
            let names = nv
                .as_array()
                .and_then(|a| {
                    a.iter()
                        .map(|x| x.as_str().map(str::to_string))
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| FileError::new("`names` must be a list of strings"))?;
            GroupTable::with_names(table, names)
        }
    };
    group.map_err(|e| FileError::new(e.to_string()))
}

pub fn group_to_json(g: &GroupTable) -> Value {
    json!({"format_version": FORMAT_VERSION, "names": g.names(), "table": g.rows()})
}

/// Pairing file: `{"format_version", "dim", "entries": [[i, j, re, im], …]}`.
pub fn parse_pairing(text: &str) -> Result<PairingMatrix<GaussRat>, FileError> {
    let v = parse_json(text)?;
    check_version(&v)?;
    let n = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FileError::new("missing integer `dim`"))? as usize;
    let mut m = vec![vec![GaussRat::from_i64(0); n]; n];
    for (idx, c) in entries::<GaussRat>(v.get("entries"), 2, "entries")? {
        check_range(&idx, n, "entries")?;
        m[idx[0]][idx[1]] = m[idx[0]][idx[1]].clone() + &c;
    }
    Ok(PairingMatrix::new(m))
}

pub fn pairing_to_json(p: &PairingMatrix<GaussRat>) -> Value {
    let n = p.entries.len();
    let es: Vec<Value> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !num_traits::Zero::is_zero(&p.entries[i][j]))
        .map(|(i, j)| entry(&[i, j], &p.entries[i][j]))
        .collect();
    json!({"format_version": FORMAT_VERSION, "dim": n, "entries": es})
}

fn sector_str(s: (Sign, Sign)) -> String {
    format!("{}{}", s.0, s.1)
}

/// Fusion file: labels with sectors (`"++"`, `"+-"`, `"-+"`, `"--"`),
/// entries `[a, b, c, N]`, `bar` and the two units.
pub fn parse_fusion(text: &str) -> Result<FusionDatum, FileError> {
    let v = parse_json(text)?;
    check_version(&v)?;
    let label_list = v
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| FileError::new("`labels` must be a list"))?;
    let mut labels = Vec::new();
    let mut sectors = Vec::new();
    for l in label_list {
        let name = l
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| FileError::new(format!("label {l} needs a string `name`")))?;
        let sec = l
            .get("sector")
            .and_then(Value::as_str)
            .ok_or_else(|| FileError::new(format!("label {l} needs a string `sector`")))?;
        let chars: Vec<char> = sec.chars().collect();
        let parsed = match chars.as_slice() {
            [a, b] => Sign::from_char(*a).zip(Sign::from_char(*b)),
            _ => None,
        };
        sectors.push(parsed.ok_or_else(|| FileError::new(format!("bad sector `{sec}`")))?);
        labels.push(name.to_string());
    }
    let fusion = v
        .get("fusion")
        .and_then(Value::as_array)
        .ok_or_else(|| FileError::new("`fusion` must be a list"))?
        .iter()
        .map(|e| {
            let a = e.as_array().filter(|a| a.len() == 4)?;
            let x: Vec<u64> = a.iter().map(Value::as_u64).collect::<Option<_>>()?;
            Some((x[0] as usize, x[1] as usize, x[2] as usize, x[3]))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            FileError::new("`fusion` entries must be [a, b, c, N] with non-negative integers")
        })?;
    let bar = v
        .get("bar")
        .and_then(Value::as_array)
        .and_then(|a| {
            a.iter()
                .map(|x| x.as_u64().map(|u| u as usize))
                .collect::<Option<Vec<_>>>()
        })
        .ok_or_else(|| FileError::new("`bar` must be a list of label indices"))?;
    let unit = |k: &str| {
        v.get("units")
            .and_then(|u| u.get(k))
            .and_then(Value::as_u64)
            .map(|u| u as usize)
            .ok_or_else(|| FileError::new(format!("`units.{k}` must be a label index")))
    };
    FusionDatum::new(labels, sectors, fusion, bar, unit("plus")?, unit("minus")?)
        .map_err(|e| FileError::new(e.to_string()))
}

pub fn fusion_to_json(d: &FusionDatum) -> Value {
    let labels: Vec<Value> = d
        .labels()
        .iter()
        .zip(d.sectors())
        .map(|(l, s)| json!({"name": l, "sector": sector_str(*s)}))
        .collect();
    let fusion: Vec<Value> = d
        .fusion_entries()
        .into_iter()
        .map(|(a, b, c, n)| json!([a, b, c, n]))
        .collect();
    json!({
        "format_version": FORMAT_VERSION,
        "labels": labels,
        "fusion": fusion,
        "bar": d.bar(),
        "units": {"plus": d.unit(Sign::Plus), "minus": d.unit(Sign::Minus)},
    })
}
