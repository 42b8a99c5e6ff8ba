//! Text, JSON and DOT serialization.
//!
//! The text poset format: the first data line is `n <count>`, every
//! following line is `cover <a> <b>` or the shorthand `a < b`; `#`
//! starts a comment. JSON shapes round-trip for posets, ideals,
//! independent set lists and forests.

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::forest::{DescentData, PForest};
use crate::genfun::{FactoredGF, GfFactor, GfTerm, QPoly};
use crate::ideal_graph::IdealGraph;
use crate::mis::{self, MaxIndSet, Scope};
use crate::poset::{Ideal, Poset};
use crate::verify::{CheckStatus, VerificationReport};

/// Parsed poset together with the reduction warnings.
#[derive(Debug)]
pub struct ParseReport {
    pub poset: Poset,
    pub implied_pairs: Vec<(u32, u32)>,
    pub duplicate_pairs: Vec<(u32, u32)>,
}

pub fn parse_poset_text(src: &str) -> Result<ParseReport> {
    let mut n: Option<u32> = None;
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let fields: Vec<&str> = data.split_whitespace().collect();
        let parse_elem = |s: &str| -> Result<u32> {
            s.parse::<u32>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a positive integer, got {s:?}"),
            })
        };
        match fields.as_slice() {
            ["n", count] => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate n line".to_string(),
                    });
                }
                n = Some(parse_elem(count)?);
            }
            ["cover", a, b] => {
                if n.is_none() {
                    return Err(Error::Parse {
                        line,
                        msg: "cover line before the n line".to_string(),
                    });
                }
                pairs.push((parse_elem(a)?, parse_elem(b)?));
            }
            [a, "<", b] => {
                if n.is_none() {
                    return Err(Error::Parse {
                        line,
                        msg: "relation line before the n line".to_string(),
                    });
                }
                pairs.push((parse_elem(a)?, parse_elem(b)?));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unrecognized line {data:?}"),
                });
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing n line".to_string(),
    })?;
    let build = Poset::build(n, &pairs)?;
    Ok(ParseReport {
        poset: build.poset,
        implied_pairs: build.implied_pairs,
        duplicate_pairs: build.duplicate_pairs,
    })
}

pub fn poset_to_text(p: &Poset) -> String {
    let mut out = format!("n {}\n", p.n());
    for &(a, b) in p.covers() {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out
}

fn set_to_vec(s: &ElemSet) -> Vec<u32> {
    s.elems().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: u32,
    pub covers: Vec<(u32, u32)>,
}

pub fn poset_to_json(p: &Poset) -> PosetJson {
    PosetJson {
        n: p.n(),
        covers: p.covers().to_vec(),
    }
}

pub fn poset_from_json(j: &PosetJson) -> Result<Poset> {
    Poset::new(j.n, &j.covers)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealsJson {
    pub n: u32,
    pub ideals: Vec<Vec<u32>>,
}

pub fn ideals_to_json(n: u32, ideals: &[Ideal]) -> IdealsJson {
    IdealsJson {
        n,
        ideals: ideals.iter().map(|j| set_to_vec(j.members())).collect(),
    }
}

pub fn ideals_from_json(p: &Poset, j: &IdealsJson) -> Result<Vec<Ideal>> {
    j.ideals
        .iter()
        .map(|elems| Ideal::new(p, ElemSet::from_elems(j.n, elems.iter().copied())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalJson {
    pub edges: Vec<(u32, u32)>,
    pub components: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: u32,
    pub ideals: Vec<Vec<u32>>,
    pub edges: Vec<(u32, u32)>,
    pub components: Vec<Vec<u32>>,
    pub principal: PrincipalJson,
}

pub fn graph_to_json(g: &IdealGraph) -> GraphJson {
    GraphJson {
        n: g.n(),
        ideals: g.ideals().iter().map(|j| set_to_vec(j.members())).collect(),
        edges: g.edges().to_vec(),
        components: g.components().to_vec(),
        principal: PrincipalJson {
            edges: g.principal().edges.clone(),
            components: g.principal().components.clone(),
        },
    }
}

/// One independent set: its member ideals as element lists, the
/// component it belongs to (absent for global sets), and for global
/// sets the label map as (element, ideal) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<u32>,
    pub members: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(u32, Vec<u32>)>>,
}

pub fn mis_to_json(p: &Poset, g: &IdealGraph, m: &MaxIndSet) -> Result<MisJson> {
    let members = m
        .members()
        .iter()
        .map(|&v| set_to_vec(g.ideal(v).members()))
        .collect();
    let (component, labels) = match m.scope() {
        Scope::Component(r) => (Some(r), None),
        Scope::Global => {
            let lm = mis::label_map(p, g, m)?;
            let pairs = (1..=p.n())
                .map(|e| {
                    let v = m.members()[lm.member_of_element(e)];
                    (e, set_to_vec(g.ideal(v).members()))
                })
                .collect();
            (None, Some(pairs))
        }
    };
    Ok(MisJson {
        component,
        members,
        labels,
    })
}

pub fn mis_from_json(g: &IdealGraph, j: &MisJson) -> Result<MaxIndSet> {
    let mut members = Vec::with_capacity(j.members.len());
    for elems in &j.members {
        let set = ElemSet::from_elems(g.n(), elems.iter().copied());
        let v = g.vertex_of_set(&set).ok_or_else(|| Error::NotAConnectedIdeal {
            set: format!("{set}"),
        })?;
        members.push(v);
    }
    members.sort_unstable();
    members.dedup();
    if members.len() != j.members.len() {
        return Err(Error::Invalid {
            msg: "independent set lists a member twice".to_string(),
        });
    }
    let scope = match j.component {
        Some(r) => Scope::Component(r),
        None => Scope::Global,
    };
    Ok(MaxIndSet::from_sorted_members(members, scope))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisListsJson {
    pub components: Vec<Vec<MisJson>>,
    pub global: Vec<MisJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub parents: Vec<u32>,
    pub descent_elements: Vec<u32>,
    pub descent_ideals: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestsJson {
    pub n: u32,
    pub forests: Vec<ForestJson>,
}

pub fn forest_to_json(f: &PForest, dd: &DescentData) -> ForestJson {
    ForestJson {
        parents: f.parents().to_vec(),
        descent_elements: dd.elements.clone(),
        descent_ideals: dd.ideals.iter().map(|j| set_to_vec(j.members())).collect(),
    }
}

pub fn forest_from_json(p: &Poset, j: &ForestJson) -> Result<PForest> {
    PForest::new(p, j.parents.clone())
}

/// Indented tree rendering, roots first, children sorted by label.
pub fn forest_to_text(f: &PForest) -> String {
    let n = f.n() as usize;
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 1..=n as u32 {
        if let Some(parent) = f.parent(i) {
            children[(parent - 1) as usize].push(i);
        }
    }
    let mut out = String::new();
    fn emit(node: u32, depth: usize, children: &[Vec<u32>], out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&node.to_string());
        out.push('\n');
        for &c in &children[(node - 1) as usize] {
            emit(c, depth + 1, children, out);
        }
    }
    for root in f.roots() {
        emit(root, 0, &children, &mut out);
    }
    out
}

fn one() -> i64 {
    1
}

fn is_one(c: &i64) -> bool {
    *c == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfTermJson {
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub coefficient: i64,
    pub numerator_ideals: Vec<Vec<u32>>,
    pub denominator_ideals: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfFactorJson {
    pub terms: Vec<GfTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredGFJson {
    pub n: u32,
    pub components: Vec<GfFactorJson>,
}

pub fn factored_to_json(gf: &FactoredGF) -> FactoredGFJson {
    FactoredGFJson {
        n: gf.n,
        components: gf
            .factors
            .iter()
            .map(|f| GfFactorJson {
                terms: f
                    .terms
                    .iter()
                    .map(|t| GfTermJson {
                        coefficient: t.coefficient,
                        numerator_ideals: t.numerator_ideals.iter().map(set_to_vec).collect(),
                        denominator_ideals: t.denominator_ideals.iter().map(set_to_vec).collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn factored_from_json(j: &FactoredGFJson) -> FactoredGF {
    FactoredGF {
        n: j.n,
        factors: j
            .components
            .iter()
            .enumerate()
            .map(|(r, f)| GfFactor {
                component: r as u32,
                terms: f
                    .terms
                    .iter()
                    .map(|t| GfTerm {
                        coefficient: t.coefficient,
                        numerator_ideals: t
                            .numerator_ideals
                            .iter()
                            .map(|e| ElemSet::from_elems(j.n, e.iter().copied()))
                            .collect(),
                        denominator_ideals: t
                            .denominator_ideals
                            .iter()
                            .map(|e| ElemSet::from_elems(j.n, e.iter().copied()))
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolyJson {
    /// Decimal coefficient strings, index = exponent.
    pub coefficients: Vec<String>,
}

pub fn qpoly_to_json(poly: &QPoly) -> QPolyJson {
    QPolyJson {
        coefficients: poly.coeffs().iter().map(|c| c.to_string()).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationJson {
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

pub fn verification_to_json(report: &VerificationReport) -> VerificationJson {
    VerificationJson {
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                status: match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                }
                .to_string(),
                detail: c.detail.clone(),
                millis: c.millis,
            })
            .collect(),
    }
}

fn dot_label(set: &ElemSet) -> String {
    format!("{set}")
}

/// DOT rendering of the intersection graph, one cluster per component.
pub fn graph_to_dot(g: &IdealGraph) -> String {
    let mut out = String::from("graph ideal_intersection {\n");
    for (r, comp) in g.components().iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{r} {{\n"));
        out.push_str(&format!("    label=\"component {r}\";\n"));
        for &v in comp {
            out.push_str(&format!(
                "    v{v} [label=\"{}\"];\n",
                dot_label(g.ideal(v).members())
            ));
        }
        out.push_str("  }\n");
    }
    for &(a, b) in g.edges() {
        out.push_str(&format!("  v{a} -- v{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the induced subgraph on principal ideals, nodes
/// named by element.
pub fn principal_to_dot(g: &IdealGraph) -> String {
    let mut out = String::from("graph principal_ideals {\n");
    for (r, comp) in g.principal().components.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{r} {{\n"));
        out.push_str(&format!("    label=\"component {r}\";\n"));
        for &e in comp {
            let v = g.principal_vertex(e);
            out.push_str(&format!(
                "    p{e} [label=\"{}\"];\n",
                dot_label(g.ideal(v).members())
            ));
        }
        out.push_str("  }\n");
    }
    for &(a, b) in &g.principal().edges {
        out.push_str(&format!("  p{a} -- p{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{enumerate_pforests, mis_descents};
    use crate::ideal_graph::ideal_graph;
    use crate::mis::{component_mis_lists, enumerate_global_mis};
    use crate::poset::sample6;

    #[test]
    fn text_format_round_trip_and_errors() {
        let src = "# six elements\nn 6\ncover 3 1\ncover 4 1\n1 < 2\ncover 4 5\ncover 6 4\n";
        let report = parse_poset_text(src).unwrap();
        assert_eq!(report.poset.covers(), sample6().covers());
        assert!(report.implied_pairs.is_empty());

        let echoed = parse_poset_text(&poset_to_text(&report.poset)).unwrap();
        assert_eq!(echoed.poset.covers(), report.poset.covers());

        for (src, bad_line) in [
            ("cover 1 2\nn 2\n", 1),
            ("n 2\nn 3\n", 2),
            ("n 2\ncover one 2\n", 2),
            ("n 2\nhello\n", 2),
        ] {
            match parse_poset_text(src) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, bad_line),
                other => panic!("expected a parse error, got {other:?}"),
            }
        }
        assert!(matches!(
            parse_poset_text("# nothing\n"),
            Err(Error::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn json_round_trips() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();

        let pj = poset_to_json(&p);
        let text = serde_json::to_string(&pj).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(poset_from_json(&back).unwrap().covers(), p.covers());

        let ij = ideals_to_json(p.n(), g.ideals());
        let text = serde_json::to_string(&ij).unwrap();
        let back: IdealsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ideals_from_json(&p, &back).unwrap(), g.ideals());

        for m in enumerate_global_mis(&g, 1 << 16).unwrap() {
            let mj = mis_to_json(&p, &g, &m).unwrap();
            assert!(mj.labels.is_some());
            let text = serde_json::to_string(&mj).unwrap();
            let back: MisJson = serde_json::from_str(&text).unwrap();
            assert_eq!(mis_from_json(&g, &back).unwrap(), m);
        }
        let lists = component_mis_lists(&g, 1 << 16).unwrap();
        let mj = mis_to_json(&p, &g, &lists[3][0]).unwrap();
        assert_eq!(mj.component, Some(3));
        assert!(mj.labels.is_none());
        let back: MisJson = serde_json::from_str(&serde_json::to_string(&mj).unwrap()).unwrap();
        assert_eq!(mis_from_json(&g, &back).unwrap(), lists[3][0]);

        for f in enumerate_pforests(&p, &g, 1 << 16).unwrap() {
            let m = crate::forest::forest_to_mis(&g, &f).unwrap();
            let dd = mis_descents(&p, &g, &m).unwrap();
            let fj = forest_to_json(&f, &dd);
            let text = serde_json::to_string(&fj).unwrap();
            let back: ForestJson = serde_json::from_str(&text).unwrap();
            assert_eq!(forest_from_json(&p, &back).unwrap(), f);
        }
    }

    #[test]
    fn coefficient_of_one_is_omitted() {
        let term = GfTermJson {
            coefficient: 1,
            numerator_ideals: vec![],
            denominator_ideals: vec![vec![1]],
        };
        let text = serde_json::to_string(&term).unwrap();
        assert!(!text.contains("coefficient"));
        let back: GfTermJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.coefficient, 1);

        let negated = GfTermJson {
            coefficient: -1,
            ..term
        };
        let text = serde_json::to_string(&negated).unwrap();
        assert!(text.contains("\"coefficient\":-1"));
    }

    #[test]
    fn forest_text_rendering() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let forests = enumerate_pforests(&p, &g, 1 << 16).unwrap();
        // First forest in parent order: [2,2,1,5,1,4], one tree rooted at 2.
        let text = forest_to_text(&forests[0]);
        assert_eq!(text, "2\n  1\n    3\n    5\n      4\n        6\n");
    }

    #[test]
    fn dot_outputs_are_stable() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let dot = graph_to_dot(&g);
        assert!(dot.starts_with("graph ideal_intersection {"));
        assert!(dot.contains("v3 [label=\"{4,5,6}\"]"));
        assert!(dot.contains("v3 -- v4;"));
        assert_eq!(dot, graph_to_dot(&g));

        let hdot = principal_to_dot(&g);
        assert!(hdot.contains("p1 [label=\"{1,3,4,6}\"]"));
        assert!(hdot.contains("p1 -- p5;"));
        assert_eq!(hdot.matches("subgraph").count(), 4);
    }
}
