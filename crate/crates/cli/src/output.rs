//! Report structs for both output formats. JSON comes straight from serde
//! with struct field order, so it is schema-stable; the text renderers are
//! the human-readable default.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit<T: Serialize>(format: Format, report: &T, render: impl Fn() -> String) {
    match format {
        Format::Text => print!("{}", render()),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("reports serialize")
            );
        }
    }
}

#[derive(Serialize)]
pub struct CheckVertex {
    pub name: String,
    pub indegree: usize,
    pub lambda: usize,
    pub full: bool,
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub target: String,
    pub paths: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub flame: bool,
    pub vertices: Vec<CheckVertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessOut>>,
}

impl CheckReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "flame: {}\n",
            if self.flame { "yes" } else { "no" }
        ));
        for v in &self.vertices {
            out.push_str(&format!(
                "vertex {}: indegree {} lambda {} {}\n",
                v.name,
                v.indegree,
                v.lambda,
                if v.full { "ok" } else { "DEFICIENT" }
            ));
        }
        if let Some(witnesses) = &self.witnesses {
            for w in witnesses {
                for path in &w.paths {
                    out.push_str(&format!("path {}: {}\n", w.target, path.join(" ")));
                }
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct OrderStep {
    pub edge: String,
    pub role: String,
}

#[derive(Serialize)]
pub struct OrderReport {
    pub order: Vec<OrderStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl OrderReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.order {
            out.push_str(&format!("{} {}\n", s.edge, s.role));
        }
        if self.verified == Some(true) {
            out.push_str("verified: ok\n");
        }
        out
    }
}

#[derive(Serialize)]
pub struct ExtractReport {
    pub edges: Vec<String>,
}

impl ExtractReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(e);
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
pub struct FillReport {
    pub set: Vec<String>,
    pub closure: Vec<String>,
}

impl FillReport {
    pub fn render(&self) -> String {
        format!("{}\n", self.closure.join(" "))
    }
}

#[derive(Serialize)]
pub struct TightReport {
    pub vertex: String,
    pub tight_set: Vec<String>,
    pub cut: Vec<String>,
}

impl TightReport {
    pub fn render(&self) -> String {
        format!("{}\n", self.tight_set.join(" "))
    }
}

#[derive(Serialize)]
pub struct InsertReport {
    pub edge: String,
    pub insertable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<OrderStep>>,
}

impl InsertReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "insertable: {}\n",
            if self.insertable { "yes" } else { "no" }
        );
        if let Some(seq) = &self.sequence {
            for s in seq {
                out.push_str(&format!("{} {}\n", s.edge, s.role));
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct EdgeOut {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Serialize)]
pub struct GraphReport {
    pub root: String,
    pub edges: Vec<EdgeOut>,
}

impl GraphReport {
    pub fn render(&self) -> String {
        let mut out = format!("root {}\n", self.root);
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.id, e.tail, e.head));
        }
        out
    }
}

#[derive(Serialize)]
pub struct LayerOut {
    pub index: usize,
    pub flame: bool,
    pub connectivity: bool,
    pub branching: bool,
    pub spanning_arborescence: Option<bool>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ChainOut {
    pub pass: bool,
    pub layers: Vec<LayerOut>,
}

impl ChainOut {
    pub fn render(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        for l in &self.layers {
            out.push_str(&format!(
                "layer {}: flame={} connectivity={} branching={} arborescence={} {}\n",
                l.index,
                yn(l.flame),
                yn(l.connectivity),
                yn(l.branching),
                l.spanning_arborescence
                    .map_or("n/a".to_string(), |b| yn(b).to_string()),
                if l.pass { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "chain: {}\n",
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }
}
