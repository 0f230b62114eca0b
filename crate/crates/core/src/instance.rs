//! The JSON instance file format and dispatch over its gain groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::GainSignedGraph;
use crate::graph::EdgeKind;
use crate::group::{AbelianGroup, Integers, IntegersMod, Rationals};
use crate::signed::Sign;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    Link,
    Loop,
    Half,
    Loose,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: usize,
    pub kind: KindName,
    /// Two entries for links and loops, one for half edges, none for loose edges.
    pub ends: Vec<usize>,
    pub sign: i64,
    /// One end sign per entry of `ends`.
    pub tau: Vec<i64>,
    pub gain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub group: String,
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InstanceFile {
    /// Parse JSON text. Syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let f: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", f.version)));
        }
        Ok(f)
    }

    /// Canonical text: header fields one per line, then one compact line per edge.
    pub fn to_json(&self) -> String {
        let mut s = format!("{{\n  \"version\": {},\n  \"group\": {},\n  \"n\": {},\n", self.version, compact(&self.group), self.n);
        if self.edges.is_empty() {
            s += "  \"edges\": []";
        } else {
            s += "  \"edges\": [\n";
            let lines: Vec<String> = self.edges.iter().map(|e| format!("    {}", compact(e))).collect();
            s += &lines.join(",\n");
            s += "\n  ]";
        }
        if let Some(note) = &self.note {
            s += &format!(",\n  \"note\": {}", compact(note));
        }
        s += "\n}\n";
        s
    }

    pub fn to_graph(&self) -> Result<AnyGraph> {
        let group = self.group.trim();
        if group == "Z" {
            return Ok(AnyGraph::Z(build(Integers, self)?));
        }
        if group == "Q" {
            return Ok(AnyGraph::Q(build(Rationals, self)?));
        }
        if let Some(m) = group.strip_prefix("Zmod") {
            let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad modulus in group {group:?}")))?;
            return Ok(AnyGraph::Zmod(build(IntegersMod::new(m)?, self)?));
        }
        Err(Error::Parse(format!("unknown group {group:?}; expected \"Z\", \"Q\" or \"Zmod m\"")))
    }

    /// Serialize a graph. The extra point has no file representation.
    pub fn from_graph<G: AbelianGroup>(u: &GainSignedGraph<G>) -> Result<Self> {
        if u.extra_point().is_some() {
            return Err(Error::ExtraPoint);
        }
        let g = u.group();
        let edges = (0..u.m())
            .map(|e| {
                let t = |slot| u.tau(e, slot).value();
                let (kind, ends, tau) = match u.kind(e) {
                    EdgeKind::Link(a, b) => (KindName::Link, vec![a, b], vec![t(0), t(1)]),
                    EdgeKind::Loop(a) => (KindName::Loop, vec![a, a], vec![t(0), t(1)]),
                    EdgeKind::Half(a) => (KindName::Half, vec![a], vec![t(0)]),
                    EdgeKind::Loose => (KindName::Loose, vec![], vec![]),
                };
                EdgeRecord { id: e, kind, ends, sign: u.sign(e).value(), tau, gain: g.format(u.gain(e)) }
            })
            .collect();
        Ok(InstanceFile { version: FORMAT_VERSION, group: g.name(), n: u.n(), edges, note: None })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn build<G: AbelianGroup>(group: G, f: &InstanceFile) -> Result<GainSignedGraph<G>> {
    let mut u = GainSignedGraph::new(group.clone(), f.n);
    for (pos, r) in f.edges.iter().enumerate() {
        let bad = |reason: String| Error::InvalidEdge { edge: r.id, reason };
        if r.id != pos {
            return Err(bad(format!("ids must be 0, 1, 2, ... in order; found {} at position {pos}", r.id)));
        }
        let sign = Sign::from_value(r.sign).ok_or_else(|| bad(format!("sign must be 1 or -1, got {}", r.sign)))?;
        let mut tau = [Sign::Plus; 2];
        for (k, &t) in r.tau.iter().enumerate().take(2) {
            tau[k] = Sign::from_value(t).ok_or_else(|| bad(format!("tau entries must be 1 or -1, got {t}")))?;
        }
        let arity = match r.kind {
            KindName::Link | KindName::Loop => 2,
            KindName::Half => 1,
            KindName::Loose => 0,
        };
        if r.ends.len() != arity || r.tau.len() != arity {
            return Err(bad(format!("a {:?} edge needs {arity} ends and {arity} tau entries", r.kind).to_lowercase()));
        }
        let kind = match r.kind {
            KindName::Link if r.ends[0] == r.ends[1] => return Err(bad("a link needs two distinct ends".into())),
            KindName::Link => EdgeKind::Link(r.ends[0], r.ends[1]),
            KindName::Loop if r.ends[0] != r.ends[1] => return Err(bad("both ends of a loop are the same vertex".into())),
            KindName::Loop => EdgeKind::Loop(r.ends[0]),
            KindName::Half if sign != Sign::Minus => return Err(bad("half edges have sign -1".into())),
            KindName::Half => EdgeKind::Half(r.ends[0]),
            KindName::Loose if sign != Sign::Plus => return Err(bad("loose edges have sign +1".into())),
            KindName::Loose => EdgeKind::Loose,
        };
        let gain = group.parse(&r.gain).map_err(|e| bad(e.to_string()))?;
        u.add_edge(kind, sign, tau, gain)?;
    }
    Ok(u)
}

/// A graph over whichever group an instance file names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGraph {
    Z(GainSignedGraph<Integers>),
    Q(GainSignedGraph<Rationals>),
    Zmod(GainSignedGraph<IntegersMod>),
}

/// Run the same generic code on whichever graph is inside an [`AnyGraph`].
#[macro_export]
macro_rules! with_graph {
    ($g:expr, $u:ident => $body:expr) => {
        match $g {
            $crate::instance::AnyGraph::Z($u) => $body,
            $crate::instance::AnyGraph::Q($u) => $body,
            $crate::instance::AnyGraph::Zmod($u) => $body,
        }
    };
}

impl AnyGraph {
    pub fn parse(text: &str) -> Result<Self> {
        InstanceFile::parse(text)?.to_graph()
    }

    pub fn n(&self) -> usize {
        with_graph!(self, u => u.n())
    }

    pub fn m(&self) -> usize {
        with_graph!(self, u => u.m())
    }

    pub fn group_name(&self) -> String {
        with_graph!(self, u => u.group().name())
    }

    pub fn to_instance(&self) -> Result<InstanceFile> {
        with_graph!(self, u => InstanceFile::from_graph(u))
    }
}

impl From<GainSignedGraph<Integers>> for AnyGraph {
    fn from(u: GainSignedGraph<Integers>) -> Self {
        AnyGraph::Z(u)
    }
}

impl From<GainSignedGraph<Rationals>> for AnyGraph {
    fn from(u: GainSignedGraph<Rationals>) -> Self {
        AnyGraph::Q(u)
    }
}

impl From<GainSignedGraph<IntegersMod>> for AnyGraph {
    fn from(u: GainSignedGraph<IntegersMod>) -> Self {
        AnyGraph::Zmod(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{gain_graph_strategy, int, zmod_graph_strategy};
    use proptest::prelude::*;

    const TRIANGLE: &str = r#"{
  "version": 1,
  "group": "Z",
  "n": 3,
  "edges": [
    {"id": 0, "kind": "link", "ends": [0, 1], "sign": -1, "tau": [1, 1], "gain": "1"},
    {"id": 1, "kind": "link", "ends": [1, 2], "sign": -1, "tau": [1, 1], "gain": "1"},
    {"id": 2, "kind": "link", "ends": [0, 2], "sign": -1, "tau": [-1, -1], "gain": "-1"}
  ]
}"#;

    #[test]
    fn parses_a_triangle() {
        let AnyGraph::Z(u) = AnyGraph::parse(TRIANGLE).unwrap() else { panic!("wrong group") };
        assert_eq!((u.n(), u.m()), (3, 3));
        assert_eq!(u.gain(2), &int(-1));
        assert_eq!(u.tau(2, 0), Sign::Minus);
    }

    #[test]
    fn canonical_text_is_stable() {
        let f = InstanceFile::parse(TRIANGLE).unwrap();
        let text = f.to_graph().unwrap().to_instance().unwrap().to_json();
        assert_eq!(InstanceFile::parse(&text).unwrap(), f);
        assert_eq!(AnyGraph::parse(&text).unwrap().to_instance().unwrap().to_json(), text);
    }

    #[test]
    fn rejects_bad_edges() {
        let edit = |from: &str, to: &str| AnyGraph::parse(&TRIANGLE.replacen(from, to, 1));
        // τ·τ must equal −σ.
        assert!(matches!(edit(r#""tau": [1, 1]"#, r#""tau": [1, -1]"#), Err(Error::InvalidEdge { edge: 0, .. })));
        assert!(matches!(edit(r#""id": 1"#, r#""id": 5"#), Err(Error::InvalidEdge { .. })));
        assert!(matches!(edit(r#""ends": [0, 1]"#, r#""ends": [0, 7]"#), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(edit(r#""gain": "1""#, r#""gain": "x""#), Err(Error::InvalidEdge { .. })));
        assert!(matches!(edit(r#""group": "Z""#, r#""group": "R""#), Err(Error::Parse(_))));
        assert!(matches!(edit(r#""version": 1"#, r#""version": 2"#), Err(Error::Parse(_))));
        assert!(matches!(edit(r#""n": 3"#, r#""n": 3, "extra": 0"#), Err(Error::Parse(_))));

        let half = r#"{"version":1,"group":"Q","n":1,"edges":[{"id":0,"kind":"half","ends":[0],"sign":1,"tau":[1],"gain":"1/2"}]}"#;
        assert!(AnyGraph::parse(half).is_err());
        assert!(AnyGraph::parse(&half.replace(r#""sign":1"#, r#""sign":-1"#)).is_ok());
        let loose = r#"{"version":1,"group":"Zmod 3","n":0,"edges":[{"id":0,"kind":"loose","ends":[],"sign":-1,"tau":[],"gain":"4"}]}"#;
        assert!(AnyGraph::parse(loose).is_err());
        let AnyGraph::Zmod(u) = AnyGraph::parse(&loose.replace(r#""sign":-1"#, r#""sign":1"#)).unwrap() else { panic!() };
        assert_eq!(u.gain(0), &1);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = AnyGraph::parse("{\n  \"version\": 1,\n  oops").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn extra_point_is_not_serializable() {
        let u = GainSignedGraph::new(Integers, 1).extended();
        assert_eq!(InstanceFile::from_graph(&u), Err(Error::ExtraPoint));
    }

    proptest! {
        #[test]
        fn round_trip_integers(u in gain_graph_strategy(4, 6, 3)) {
            let text = InstanceFile::from_graph(&u).unwrap().to_json();
            prop_assert_eq!(AnyGraph::parse(&text).unwrap(), AnyGraph::Z(u));
        }

        #[test]
        fn round_trip_zmod(u in zmod_graph_strategy(4, 6, 6)) {
            let text = InstanceFile::from_graph(&u).unwrap().to_json();
            let back = AnyGraph::parse(&text).unwrap();
            prop_assert_eq!(back.to_instance().unwrap().to_json(), text);
            prop_assert_eq!(back, AnyGraph::Zmod(u));
        }
    }
}
