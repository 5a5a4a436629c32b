//! File formats: triadic context JSON, context family JSON and the Burmeister
//! `.cxt` format for dyadic contexts.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::context::{AttrSet, ContextFamily, FormalContext, TriadicContext};
use crate::error::{Error, Result};

/// `{"objects":[..],"attributes":[..],"conditions":[..],"incidence":[["g","m","b"],..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriadicFile {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub conditions: Vec<String>,
    pub incidence: Vec<(String, String, String)>,
}

impl TryFrom<TriadicFile> for TriadicContext {
    type Error = Error;

    fn try_from(f: TriadicFile) -> Result<Self> {
        TriadicContext::from_names(&f.objects, &f.attributes, &f.conditions, &f.incidence)
    }
}

impl From<TriadicContext> for TriadicFile {
    fn from(t: TriadicContext) -> Self {
        let incidence = t
            .triples()
            .map(|(g, m, b)| {
                (
                    t.objects()[g].clone(),
                    t.attributes()[m].clone(),
                    t.conditions()[b].clone(),
                )
            })
            .collect();
        TriadicFile {
            objects: t.objects().to_vec(),
            attributes: t.attributes().to_vec(),
            conditions: t.conditions().to_vec(),
            incidence,
        }
    }
}

/// A dyadic context as JSON: `{"objects":[..],"attributes":[..],"incidence":[["g","m"],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalContextFile {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<(String, String)>,
}

impl TryFrom<FormalContextFile> for FormalContext {
    type Error = Error;

    fn try_from(f: FormalContextFile) -> Result<Self> {
        check_duplicate_pairs(&f.incidence)?;
        FormalContext::from_names(&f.objects, &f.attributes, &f.incidence)
    }
}

impl From<FormalContext> for FormalContextFile {
    fn from(c: FormalContext) -> Self {
        FormalContextFile {
            objects: c.objects().to_vec(),
            attributes: c.attributes().to_vec(),
            incidence: pairs_of(&c),
        }
    }
}

fn pairs_of(c: &FormalContext) -> Vec<(String, String)> {
    c.rows()
        .iter()
        .enumerate()
        .flat_map(|(g, row)| {
            row.iter()
                .map(move |&m| (c.objects()[g].clone(), c.attributes()[m].clone()))
        })
        .collect()
}

fn check_duplicate_pairs(pairs: &[(String, String)]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in pairs {
        if !seen.insert(p) {
            return Err(Error::invalid(format!(
                "duplicate incidence ({:?}, {:?})",
                p.0, p.1
            )));
        }
    }
    Ok(())
}

/// One member of a [`FamilyFile`]. `attributes` is optional; when present it
/// must repeat the family's attribute list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMemberFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<Vec<String>>,
    pub objects: Vec<String>,
    pub incidence: Vec<(String, String)>,
}

/// `{"attributes":[..],"members":{"<id>":{"objects":[..],"incidence":[["g","m"],..]}}}`.
/// Member order is the key order of `members`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub attributes: Vec<String>,
    pub members: serde_json::Map<String, serde_json::Value>,
}

impl TryFrom<FamilyFile> for ContextFamily {
    type Error = Error;

    fn try_from(f: FamilyFile) -> Result<Self> {
        let mut members = Vec::with_capacity(f.members.len());
        for (id, value) in f.members {
            let m: FamilyMemberFile = serde_json::from_value(value)
                .map_err(|e| Error::invalid(format!("member {id:?}: {e}")))?;
            if let Some(attrs) = &m.attributes {
                if attrs != &f.attributes {
                    return Err(Error::invalid(format!(
                        "member {id:?} does not share the family's attribute list"
                    )));
                }
            }
            check_duplicate_pairs(&m.incidence)
                .map_err(|e| Error::invalid(format!("member {id:?}: {e}")))?;
            let ctx = FormalContext::from_names(&m.objects, &f.attributes, &m.incidence)
                .map_err(|e| Error::invalid(format!("member {id:?}: {e}")))?;
            members.push((id, ctx));
        }
        ContextFamily::new(f.attributes, members)
    }
}

impl From<ContextFamily> for FamilyFile {
    fn from(fam: ContextFamily) -> Self {
        let members = fam
            .members()
            .map(|(id, ctx)| {
                let m = FamilyMemberFile {
                    attributes: None,
                    objects: ctx.objects().to_vec(),
                    incidence: pairs_of(ctx),
                };
                (
                    id.to_owned(),
                    serde_json::to_value(m).expect("member serializes"),
                )
            })
            .collect();
        FamilyFile {
            attributes: fam.attributes().to_vec(),
            members,
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    let line = (e.line() > 0).then_some(e.line());
    // serde reports conversion failures from try_from as data errors
    Error::parse(line, e.to_string())
}

pub fn parse_triadic_json(text: &str) -> Result<TriadicContext> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn parse_family_json(text: &str) -> Result<ContextFamily> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn parse_context_json(text: &str) -> Result<FormalContext> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn triadic_to_json(t: &TriadicContext) -> String {
    serde_json::to_string_pretty(t).expect("context serializes")
}

pub fn family_to_json(f: &ContextFamily) -> String {
    serde_json::to_string_pretty(f).expect("family serializes")
}

/// Any of the supported context files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextDocument {
    Dyadic(FormalContext),
    Triadic(TriadicContext),
    Family(ContextFamily),
}

/// Parses a context file, detecting the format from its content.
pub fn parse_any(text: &str) -> Result<ContextDocument> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('B') && !trimmed.starts_with('{') {
        return parse_burmeister(text).map(ContextDocument::Dyadic);
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(Some(1), "expected a JSON object"))?;
    if obj.contains_key("members") {
        parse_family_json(text).map(ContextDocument::Family)
    } else if obj.contains_key("conditions") {
        parse_triadic_json(text).map(ContextDocument::Triadic)
    } else {
        parse_context_json(text).map(ContextDocument::Dyadic)
    }
}

/// Parses a Burmeister `.cxt` file.
///
/// Layout: `B`, a name line (usually blank), `|G|`, `|M|`, optional blank
/// lines, the object names, the attribute names, then one row per object with
/// `X` for an incidence and `.` otherwise.
pub fn parse_burmeister(text: &str) -> Result<FormalContext> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .collect();
    let mut it = lines.into_iter().peekable();
    match it.next() {
        Some((_, l)) if l.trim() == "B" => {}
        Some((n, _)) => return Err(Error::parse(Some(n), "expected \"B\" header")),
        None => return Err(Error::parse(None, "empty input")),
    }
    it.next()
        .ok_or_else(|| Error::parse(None, "missing name line"))?;

    let mut next_number = |what: &str| -> Result<usize> {
        loop {
            let (n, l) = it
                .next()
                .ok_or_else(|| Error::parse(None, format!("missing {what}")))?;
            if l.trim().is_empty() {
                continue;
            }
            return l
                .trim()
                .parse()
                .map_err(|_| Error::parse(Some(n), format!("expected {what}, found {l:?}")));
        }
    };
    let n_objects = next_number("object count")?;
    let n_attributes = next_number("attribute count")?;

    while it.peek().is_some_and(|(_, l)| l.trim().is_empty()) {
        it.next();
    }
    let mut take_names = |count: usize, what: &str| -> Result<Vec<String>> {
        (0..count)
            .map(|_| {
                it.next()
                    .map(|(_, l)| l.trim().to_owned())
                    .ok_or_else(|| Error::parse(None, format!("missing {what} name")))
            })
            .collect()
    };
    let objects = take_names(n_objects, "object")?;
    let attributes = take_names(n_attributes, "attribute")?;

    let mut rows = Vec::with_capacity(n_objects);
    for object in &objects {
        let (n, l) = it
            .next()
            .ok_or_else(|| Error::parse(None, format!("missing row for object {object:?}")))?;
        let cells: Vec<char> = l.trim().chars().collect();
        if cells.len() != n_attributes {
            return Err(Error::parse(
                Some(n),
                format!("row has {} cells, expected {n_attributes}", cells.len()),
            ));
        }
        let mut row = AttrSet::new();
        for (m, c) in cells.into_iter().enumerate() {
            match c {
                'X' | 'x' => {
                    row.insert(m);
                }
                '.' => {}
                other => {
                    return Err(Error::parse(Some(n), format!("unexpected cell {other:?}")));
                }
            }
        }
        rows.push(row);
    }
    if let Some((n, l)) = it.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(Some(n), format!("trailing content {l:?}")));
    }
    FormalContext::from_rows(objects, attributes, rows)
}

/// Writes a context in Burmeister format.
pub fn to_burmeister(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    out.push_str(&format!(
        "{}\n{}\n\n",
        ctx.objects().len(),
        ctx.attributes().len()
    ));
    for g in ctx.objects() {
        out.push_str(g);
        out.push('\n');
    }
    for m in ctx.attributes() {
        out.push_str(m);
        out.push('\n');
    }
    for row in ctx.rows() {
        for m in 0..ctx.attributes().len() {
            out.push(if row.contains(&m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}
