//! JSON documents: named quantales, categories, functors, relations,
//! squares, submonad specs and sequences, resolved and validated.

use std::collections::BTreeMap;
use std::sync::Arc;

use enriched::lawvere::CauchySequenceSpec;
use enriched::monadkit::{CommutingSquare, SpecKind, SubmonadSpec};
use enriched::{builtin, make_finite_quantale, CatRef, QElem, Quantale, QuantaleKind, VCategory, VFunctor, VRelation};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quantales: Vec<QuantaleRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategoryRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub squares: Vec<SquareRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub submonad_specs: Vec<SpecRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequences: Vec<SequenceRecord>,
}

/// Either `builtin` (with `size` for the chains) or an explicit finite
/// table. The residuation is always derived, so `hom` is rejected.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Vec<String>>,
    /// Pairs `[a, b]` with `a ≤ b`; the order is their reflexive-transitive closure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing, deserialize_with = "present")]
    pub hom: Option<Value>,
}

/// Records a key as present even when its value is `null`.
fn present<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Value>, D::Error> {
    Value::deserialize(d).map(Some)
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryRecord {
    pub name: String,
    pub quantale: String,
    pub objects: Vec<String>,
    /// Row-major, `matrix[i][j] = X(objects[i], objects[j])`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorRecord {
    pub name: String,
    pub dom: String,
    pub cod: String,
    /// Image of each domain object, in declared order.
    pub map: Vec<String>,
}

/// A V-relation `dom ⇸ cod` with rows indexed by `dom`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub matrix: Vec<Vec<String>>,
}

/// `l: W → Z`, `g: W → X`, `f: X → Y`, `h: Z → Y`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SquareRecord {
    pub name: String,
    pub l: String,
    pub g: String,
    pub f: String,
    pub h: String,
}

/// `kind` is `all`, `right_adjoints`, `ball_image` or `table`; tables
/// list member presheaves per category.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecRecord {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceRecord {
    pub name: String,
    pub category: String,
    pub points: Vec<String>,
    #[serde(default)]
    pub stable_from: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub rel: VRelation,
    pub dom: CatRef,
    pub cod: CatRef,
}

#[derive(Clone, Default)]
pub struct Workspace {
    pub quantales: BTreeMap<String, Quantale>,
    pub categories: BTreeMap<String, CatRef>,
    /// Quantale record name of each category.
    pub category_quantale: BTreeMap<String, String>,
    pub functors: BTreeMap<String, VFunctor>,
    pub relations: BTreeMap<String, Relation>,
    pub squares: BTreeMap<String, CommutingSquare>,
    pub specs: BTreeMap<String, SubmonadSpec>,
    pub sequences: BTreeMap<String, (CatRef, CauchySequenceSpec)>,
}

pub fn parse_document(path: &str, text: &str) -> CliResult<Document> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}

pub fn parse_workspace(paths: &[String]) -> CliResult<Workspace> {
    let mut docs = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Io {
            path: p.clone(),
            message: e.to_string(),
        })?;
        docs.push(parse_document(p, &text)?);
    }
    Workspace::from_documents(docs)
}

fn insert<T>(map: &mut BTreeMap<String, T>, kind: &str, name: &str, value: T) -> CliResult<()> {
    if map.insert(name.to_string(), value).is_some() {
        return Err(CliError::validation(format!("{kind} {name}"), "duplicate name"));
    }
    Ok(())
}

fn parse_matrix(q: &Quantale, record: &str, rows: usize, cols: usize, m: &[Vec<String>]) -> CliResult<Vec<Vec<QElem>>> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::validation(record, format!("matrix must be {rows}×{cols}")));
    }
    m.iter()
        .map(|r| {
            r.iter()
                .map(|s| q.parse_elem(s).map_err(|e| CliError::validation(record, e)))
                .collect()
        })
        .collect()
}

fn resolve_quantale(r: &QuantaleRecord) -> CliResult<Quantale> {
    let who = format!("quantale {}", r.name);
    if r.hom.is_some() {
        return Err(CliError::validation(who, "hom is derived from the tensor and may not be given"));
    }
    if let Some(kind) = &r.builtin {
        if r.carrier.is_some() || r.leq.is_some() || r.tensor.is_some() || r.unit.is_some() {
            return Err(CliError::validation(who, "a builtin takes only a size"));
        }
        return builtin(kind, r.size).map_err(|e| CliError::validation(who, e));
    }
    let (Some(carrier), Some(tensor), Some(unit)) = (&r.carrier, &r.tensor, &r.unit) else {
        return Err(CliError::validation(who, "needs builtin, or carrier, leq, tensor and unit"));
    };
    let pos = |s: &str| {
        carrier
            .iter()
            .position(|c| c == s)
            .ok_or_else(|| CliError::validation(format!("quantale {}", r.name), format!("{s:?} is not in the carrier")))
    };
    let leq = r
        .leq
        .iter()
        .flatten()
        .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let table = tensor
        .iter()
        .map(|row| row.iter().map(|s| pos(s)).collect())
        .collect::<CliResult<Vec<Vec<usize>>>>()?;
    make_finite_quantale(&r.name, carrier.clone(), &leq, table, pos(unit)?).map_err(|e| CliError::validation(who, e))
}

impl Workspace {
    pub fn from_documents(docs: Vec<Document>) -> CliResult<Workspace> {
        let mut ws = Workspace::default();
        for r in docs.iter().flat_map(|d| &d.quantales) {
            let q = resolve_quantale(r)?;
            insert(&mut ws.quantales, "quantale", &r.name, q)?;
        }
        for r in docs.iter().flat_map(|d| &d.categories) {
            let q = ws.quantale(&r.quantale)?.clone();
            let who = format!("category {}", r.name);
            let n = r.objects.len();
            let m = parse_matrix(&q, &who, n, n, &r.matrix)?;
            let x = VCategory::new(&r.name, &q, r.objects.clone(), m).map_err(|e| CliError::validation(&who, e))?;
            insert(&mut ws.categories, "category", &r.name, Arc::new(x))?;
            ws.category_quantale.insert(r.name.clone(), r.quantale.clone());
        }
        for r in docs.iter().flat_map(|d| &d.functors) {
            let (x, y) = (ws.category(&r.dom)?.clone(), ws.category(&r.cod)?.clone());
            let who = format!("functor {}", r.name);
            if r.map.len() != x.len() {
                return Err(CliError::validation(who, format!("map needs {} entries", x.len())));
            }
            let map = r
                .map
                .iter()
                .map(|s| y.index_of(s).ok_or_else(|| CliError::unresolved("object", s)))
                .collect::<CliResult<Vec<_>>>()?;
            let f = VFunctor::new(&r.name, &x, &y, map).map_err(|e| CliError::validation(&who, e))?;
            insert(&mut ws.functors, "functor", &r.name, f)?;
        }
        for r in docs.iter().flat_map(|d| &d.relations) {
            let (x, y) = (ws.category(&r.dom)?.clone(), ws.category(&r.cod)?.clone());
            let who = format!("relation {}", r.name);
            enriched::vcat::same_quantale(x.quantale(), y.quantale()).map_err(|e| CliError::validation(&who, e))?;
            let m = parse_matrix(x.quantale(), &who, x.len(), y.len(), &r.matrix)?;
            let rel = VRelation::from_matrix(x.quantale(), m, y.len()).map_err(|e| CliError::validation(&who, e))?;
            insert(&mut ws.relations, "relation", &r.name, Relation { rel, dom: x, cod: y })?;
        }
        for r in docs.iter().flat_map(|d| &d.squares) {
            let get = |n: &str| ws.functor(n).cloned();
            let sq = CommutingSquare::new(get(&r.l)?, get(&r.g)?, get(&r.f)?, get(&r.h)?)
                .map_err(|e| CliError::validation(format!("square {}", r.name), e))?;
            insert(&mut ws.squares, "square", &r.name, sq)?;
        }
        for r in docs.iter().flat_map(|d| &d.submonad_specs) {
            let spec = ws.resolve_spec(r)?;
            insert(&mut ws.specs, "spec", &r.name, spec)?;
        }
        for r in docs.iter().flat_map(|d| &d.sequences) {
            let x = ws.category(&r.category)?.clone();
            for p in &r.points {
                if x.index_of(p).is_none() {
                    return Err(CliError::unresolved("object", p));
                }
            }
            let seq = CauchySequenceSpec {
                points: r.points.clone(),
                stable_from: r.stable_from,
            };
            insert(&mut ws.sequences, "sequence", &r.name, (x, seq))?;
        }
        Ok(ws)
    }

    fn resolve_spec(&self, r: &SpecRecord) -> CliResult<SubmonadSpec> {
        let who = format!("spec {}", r.name);
        let kind = match r.kind.as_str() {
            "all" => SpecKind::All,
            "right_adjoints" => SpecKind::RightAdjoints,
            "ball_image" => SpecKind::BallImage,
            "table" => {
                let members = r
                    .members
                    .as_ref()
                    .ok_or_else(|| CliError::validation(&who, "a table spec needs members"))?;
                let mut table = BTreeMap::new();
                for (c, vs) in members {
                    let x = self.category(c)?;
                    let parsed = parse_matrix(x.quantale(), &who, vs.len(), x.len(), vs)?;
                    for v in &parsed {
                        if !enriched::presheaf::is_presheaf(x, v) {
                            return Err(CliError::validation(&who, format!("a member for {c} is not a presheaf")));
                        }
                    }
                    table.insert(c.clone(), parsed);
                }
                SpecKind::UserTable(table)
            }
            other => return Err(CliError::validation(who, format!("unknown kind {other:?}"))),
        };
        if r.kind != "table" && r.members.is_some() {
            return Err(CliError::validation(who, "only table specs list members"));
        }
        Ok(SubmonadSpec::new(&r.name, kind))
    }

    pub fn quantale(&self, name: &str) -> CliResult<&Quantale> {
        self.quantales.get(name).ok_or_else(|| CliError::unresolved("quantale", name))
    }

    pub fn category(&self, name: &str) -> CliResult<&CatRef> {
        self.categories.get(name).ok_or_else(|| CliError::unresolved("category", name))
    }

    pub fn functor(&self, name: &str) -> CliResult<&VFunctor> {
        self.functors.get(name).ok_or_else(|| CliError::unresolved("functor", name))
    }

    pub fn relation(&self, name: &str) -> CliResult<&Relation> {
        self.relations.get(name).ok_or_else(|| CliError::unresolved("relation", name))
    }

    pub fn square(&self, name: &str) -> CliResult<&CommutingSquare> {
        self.squares.get(name).ok_or_else(|| CliError::unresolved("square", name))
    }

    /// Workspace specs first, then the builtins `all`, `right_adjoints`
    /// and `ball_image`.
    pub fn spec(&self, name: &str) -> CliResult<SubmonadSpec> {
        if let Some(s) = self.specs.get(name) {
            return Ok(s.clone());
        }
        match name {
            "all" => Ok(SubmonadSpec::all()),
            "right_adjoints" => Ok(SubmonadSpec::right_adjoints()),
            "ball_image" => Ok(SubmonadSpec::ball_image()),
            _ => Err(CliError::unresolved("spec", name)),
        }
    }

    pub fn sequence(&self, name: &str) -> CliResult<&(CatRef, CauchySequenceSpec)> {
        self.sequences.get(name).ok_or_else(|| CliError::unresolved("sequence", name))
    }

    /// Record name of the quantale of a category.
    pub fn quantale_name_of(&self, x: &VCategory) -> Option<&str> {
        self.category_quantale.get(x.name()).map(String::as_str)
    }
}

pub fn quantale_record(name: &str, q: &Quantale) -> QuantaleRecord {
    let simple = |kind: &str, size: Option<u32>| QuantaleRecord {
        name: name.to_string(),
        builtin: Some(kind.to_string()),
        size,
        carrier: None,
        leq: None,
        tensor: None,
        unit: None,
        hom: None,
    };
    match q.kind() {
        QuantaleKind::Boolean2 => simple("boolean2", None),
        QuantaleKind::GoedelChain(n) => simple("goedel_chain", Some(n)),
        QuantaleKind::LukasiewiczChain(n) => simple("lukasiewicz_chain", Some(n)),
        QuantaleKind::ExtRealPlus => simple("ext_real_plus", None),
        QuantaleKind::UnitIntervalProduct => simple("unit_interval_product", None),
        QuantaleKind::LukasiewiczRational => simple("lukasiewicz_rational", None),
        QuantaleKind::Finite => {
            let c = q.carrier().expect("finite quantales have a carrier");
            let leq = c
                .iter()
                .flat_map(|&a| c.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| a != b && q.leq(a, b))
                .map(|(a, b)| (q.label(a), q.label(b)))
                .collect();
            QuantaleRecord {
                name: name.to_string(),
                builtin: None,
                size: None,
                carrier: Some(c.iter().map(|&e| q.label(e)).collect()),
                leq: Some(leq),
                tensor: Some(c.iter().map(|&a| c.iter().map(|&b| q.label(q.tensor(a, b))).collect()).collect()),
                unit: Some(q.label(q.unit())),
                hom: None,
            }
        }
    }
}

pub fn category_record(x: &VCategory, quantale: &str) -> CategoryRecord {
    let q = x.quantale();
    CategoryRecord {
        name: x.name().to_string(),
        quantale: quantale.to_string(),
        objects: x.objects().to_vec(),
        matrix: (0..x.len()).map(|a| x.row(a).iter().map(|&e| q.label(e)).collect()).collect(),
    }
}

pub fn functor_record(f: &VFunctor) -> FunctorRecord {
    FunctorRecord {
        name: f.name().to_string(),
        dom: f.dom().name().to_string(),
        cod: f.cod().name().to_string(),
        map: f.map().iter().map(|&i| f.cod().label(i).to_string()).collect(),
    }
}

/// A document holding a computed category, its base and the maps between
/// them, ready to be parsed back.
pub fn emit_document(ws: &Workspace, base: &VCategory, built: &[&VCategory], functors: &[&VFunctor]) -> CliResult<Value> {
    let qname = ws
        .quantale_name_of(base)
        .ok_or_else(|| CliError::unresolved("category", base.name()))?;
    let mut cats = vec![category_record(base, qname)];
    cats.extend(built.iter().map(|c| category_record(c, qname)));
    let doc = Document {
        quantales: vec![quantale_record(qname, ws.quantale(qname)?)],
        categories: cats,
        functors: functors.iter().map(|f| functor_record(f)).collect(),
        ..Document::default()
    };
    Ok(json!(doc))
}
