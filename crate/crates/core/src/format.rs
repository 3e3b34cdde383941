//! JSON documents for monoids, maps, semibiproducts, action systems and
//! census entries.
//!
//! A monoid is written either as a registry name (`"M"`) or inline as
//! `{"labels": [...], "table": [[...]]}` with the identity at index 0.
//! Action-system matrices are indexed `rho[x][b]`, `phi[b][x]` and
//! `gamma[b][b']`. Writers emit a registry name whenever the table equals a
//! registered one, so parsing and re-writing a document is canonical.

use serde::{Deserialize, Serialize};

use crate::action::{ActionSystem, SyntheticRealization};
use crate::enumeration::CensusEntry;
use crate::error::{Error, Result};
use crate::monoid::{Homomorphism, Monoid, MonoidTable, PointedMap};
use crate::registry::Registry;
use crate::semibiproduct::Semibiproduct;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidDoc {
    Name(String),
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        table: Vec<Vec<usize>>,
    },
}

impl MonoidDoc {
    pub fn resolve(&self, registry: &Registry) -> Result<Monoid> {
        match self {
            MonoidDoc::Name(n) => registry.get(n),
            MonoidDoc::Table { labels, table } => MonoidTable::new(table.clone(), labels.clone()),
        }
    }

    pub fn from_monoid(registry: &Registry, m: &MonoidTable) -> Self {
        match registry.name_of(m) {
            Some(n) => MonoidDoc::Name(n.to_string()),
            None => MonoidDoc::Table { labels: m.labels().map(<[String]>::to_vec), table: m.rows() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapDoc {
    pub dom: MonoidDoc,
    pub cod: MonoidDoc,
    pub values: Vec<usize>,
}

impl MapDoc {
    pub fn resolve(&self, registry: &Registry) -> Result<PointedMap> {
        let dom = field("dom", self.dom.resolve(registry))?;
        let cod = field("cod", self.cod.resolve(registry))?;
        field("values", PointedMap::new(dom, cod, self.values.clone()))
    }

    pub fn from_map(registry: &Registry, f: &PointedMap) -> Self {
        MapDoc {
            dom: MonoidDoc::from_monoid(registry, f.dom()),
            cod: MonoidDoc::from_monoid(registry, f.cod()),
            values: f.values().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemibiproductDoc {
    #[serde(rename = "X")]
    pub x: MonoidDoc,
    #[serde(rename = "A")]
    pub a: MonoidDoc,
    #[serde(rename = "B")]
    pub b: MonoidDoc,
    pub p: Vec<usize>,
    pub k: Vec<usize>,
    pub q: Vec<usize>,
    pub s: Vec<usize>,
    /// Pairs `(x, b)` behind each element of `A`, present for realizations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Vec<[usize; 2]>>,
}

impl SemibiproductDoc {
    pub fn resolve(&self, registry: &Registry) -> Result<Semibiproduct> {
        let x = field("X", self.x.resolve(registry))?;
        let a = field("A", self.a.resolve(registry))?;
        let b = field("B", self.b.resolve(registry))?;
        let p = field("p", Homomorphism::new(a.clone(), b.clone(), self.p.clone()))?;
        let k = field("k", Homomorphism::new(x.clone(), a.clone(), self.k.clone()))?;
        let q = field("q", PointedMap::new(a.clone(), x.clone(), self.q.clone()))?;
        let s = field("s", PointedMap::new(b, a, self.s.clone()))?;
        Semibiproduct::new(p, k, q, s)
    }

    pub fn from_semibiproduct(registry: &Registry, sbp: &Semibiproduct) -> Self {
        SemibiproductDoc {
            x: MonoidDoc::from_monoid(registry, sbp.x()),
            a: MonoidDoc::from_monoid(registry, sbp.a()),
            b: MonoidDoc::from_monoid(registry, sbp.b()),
            p: sbp.p().values().to_vec(),
            k: sbp.k().values().to_vec(),
            q: sbp.q().values().to_vec(),
            s: sbp.s().values().to_vec(),
            carrier: None,
        }
    }

    pub fn from_realization(registry: &Registry, real: &SyntheticRealization) -> Self {
        let mut doc = Self::from_semibiproduct(registry, &real.semibiproduct());
        doc.carrier = Some(real.carrier.iter().map(|&(x, b)| [x, b]).collect());
        doc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionSystemDoc {
    #[serde(rename = "X")]
    pub x: MonoidDoc,
    #[serde(rename = "B")]
    pub b: MonoidDoc,
    pub rho: Vec<Vec<usize>>,
    pub phi: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<usize>>,
}

impl ActionSystemDoc {
    pub fn resolve(&self, registry: &Registry) -> Result<ActionSystem> {
        let x = field("X", self.x.resolve(registry))?;
        let b = field("B", self.b.resolve(registry))?;
        ActionSystem::new(x, b, self.rho.clone(), self.phi.clone(), self.gamma.clone())
    }

    pub fn from_system(registry: &Registry, t: &ActionSystem) -> Self {
        ActionSystemDoc {
            x: MonoidDoc::from_monoid(registry, t.x()),
            b: MonoidDoc::from_monoid(registry, t.b()),
            rho: t.rho_rows(),
            phi: t.phi_rows(),
            gamma: t.gamma_rows(),
        }
    }
}

/// One line of census output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusEntryDoc {
    pub item: usize,
    #[serde(rename = "X")]
    pub x: MonoidDoc,
    #[serde(rename = "B")]
    pub b: MonoidDoc,
    pub rho: Vec<Vec<usize>>,
    pub phi: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<usize>>,
    pub tags: Vec<&'static str>,
    pub realization_size: usize,
    pub canonical_key: String,
}

impl CensusEntryDoc {
    pub fn from_entry(registry: &Registry, item: usize, e: &CensusEntry) -> Self {
        let sys = ActionSystemDoc::from_system(registry, &e.system);
        CensusEntryDoc {
            item,
            x: sys.x,
            b: sys.b,
            rho: sys.rho,
            phi: sys.phi,
            gamma: sys.gamma,
            tags: e.tags.iter().map(|t| t.as_str()).collect(),
            realization_size: e.realization_size,
            canonical_key: hex::encode(&e.canonical_key),
        }
    }
}

/// Prefixes an error with the document field it came from.
fn field<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("field `{name}`: {msg}")),
        other => Error::Parse(format!("field `{name}`: {other}")),
    })
}

pub fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses newline-separated JSON documents, skipping blank lines.
pub fn parse_lines<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

/// Single-line JSON with a trailing newline.
pub fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_doc_names_and_inline_tables() {
        let reg = Registry::new();
        let m: MonoidDoc = parse(r#""M""#).unwrap();
        assert_eq!(m.resolve(&reg).unwrap().size(), 2);
        let inline: MonoidDoc = parse(r#"{"table": [[0,1],[1,1]]}"#).unwrap();
        let resolved = inline.resolve(&reg).unwrap();
        assert_eq!(MonoidDoc::from_monoid(&reg, &resolved), MonoidDoc::Name("M".into()));
        let labeled: MonoidDoc = parse(r#"{"labels": ["e","a","b"], "table": [[0,1,2],[1,1,1],[2,2,2]]}"#).unwrap();
        let m3 = labeled.resolve(&reg).unwrap();
        assert_eq!(m3.label(2), "b");
        assert_eq!(MonoidDoc::from_monoid(&reg, &m3), labeled);
    }

    #[test]
    fn errors_name_the_field() {
        let reg = Registry::new();
        let doc: SemibiproductDoc =
            parse(r#"{"X":"G","A":"G","B":"G","p":[0,1],"k":[0,1],"q":[0,1],"s":[0,2]}"#).unwrap();
        let err = doc.resolve(&reg).unwrap_err();
        assert!(err.to_string().contains("field `s`"), "{err}");
        let doc: ActionSystemDoc = parse(r#"{"X":"Q","B":"G","rho":[],"phi":[],"gamma":[]}"#).unwrap();
        assert!(doc.resolve(&reg).unwrap_err().to_string().contains("field `X`"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse::<ActionSystemDoc>("{\n  \"X\": \"M\",\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_lines::<MonoidDoc>("\"M\"\n\n[1,\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn map_doc_round_trip() {
        let reg = Registry::new();
        let doc: MapDoc = parse(r#"{"dom":"Z4","cod":"G","values":[0,1,0,1]}"#).unwrap();
        let f = doc.resolve(&reg).unwrap();
        assert!(f.is_homomorphism());
        assert_eq!(MapDoc::from_map(&reg, &f), doc);
    }
}
