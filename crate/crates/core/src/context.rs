//! Dyadic and triadic formal contexts.
//!
//! Objects, attributes and conditions are addressed by their position in the
//! context's identifier lists. The attribute order is the order in which the
//! attributes were given and is the order every lectic enumeration uses.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{FamilyFile, FormalContextFile, TriadicFile};

/// Set of attribute indices.
pub type AttrSet = BTreeSet<usize>;
/// Set of object indices.
pub type ObjectSet = BTreeSet<usize>;
/// Set of condition (or expert) indices.
pub type ConditionSet = BTreeSet<usize>;

/// The set `{0, .., n-1}`.
pub fn full_set(n: usize) -> BTreeSet<usize> {
    (0..n).collect()
}

fn check_unique(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if name.is_empty() {
            return Err(Error::invalid(format!("empty {kind} identifier")));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::invalid(format!(
                "duplicate {kind} identifier {name:?}"
            )));
        }
    }
    Ok(())
}

fn check_bounds(kind: &str, set: &BTreeSet<usize>, len: usize) -> Result<()> {
    match set.iter().next_back() {
        Some(&max) if max >= len => Err(Error::invalid(format!(
            "unknown {kind} index {max} (have {len})"
        ))),
        _ => Ok(()),
    }
}

fn lookup(kind: &str, names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::invalid(format!("unknown {kind} {name:?}")))
}

/// Intersection of all rows that contain `x`; the full attribute set when no
/// row does. This is `x''` in the context made of exactly these rows.
pub fn row_closure<'a, I>(rows: I, x: &AttrSet, n_attributes: usize) -> AttrSet
where
    I: IntoIterator<Item = &'a AttrSet>,
{
    let mut out: Option<AttrSet> = None;
    for row in rows {
        if !x.is_subset(row) {
            continue;
        }
        out = Some(match out {
            None => row.clone(),
            Some(acc) => acc.intersection(row).copied().collect(),
        });
    }
    out.unwrap_or_else(|| full_set(n_attributes))
}

/// A dyadic formal context `(G, M, I)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormalContextFile", into = "FormalContextFile")]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttrSet>,
}

impl FormalContext {
    /// Builds a context from object rows (one attribute set per object).
    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttrSet>,
    ) -> Result<Self> {
        check_unique("object", &objects)?;
        check_unique("attribute", &attributes)?;
        if rows.len() != objects.len() {
            return Err(Error::invalid(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        for row in &rows {
            check_bounds("attribute", row, attributes.len())?;
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
        })
    }

    /// Builds a context from `(object, attribute)` index pairs.
    pub fn new<I>(objects: Vec<String>, attributes: Vec<String>, incidence: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![AttrSet::new(); objects.len()];
        for (g, m) in incidence {
            if g >= objects.len() || m >= attributes.len() {
                return Err(Error::invalid(format!("incidence ({g}, {m}) out of range")));
            }
            rows[g].insert(m);
        }
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from `(object name, attribute name)` pairs.
    pub fn from_names<S, T, U>(
        objects: &[S],
        attributes: &[T],
        incidence: &[(U, U)],
    ) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
        U: AsRef<str>,
    {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_owned()).collect();
        let attributes: Vec<String> = attributes.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut pairs = Vec::with_capacity(incidence.len());
        for (g, m) in incidence {
            pairs.push((
                lookup("object", &objects, g.as_ref())?,
                lookup("attribute", &attributes, m.as_ref())?,
            ));
        }
        Self::new(objects, attributes, pairs)
    }

    /// A context without objects.
    pub fn empty(attributes: Vec<String>) -> Result<Self> {
        Self::from_rows(Vec::new(), attributes, Vec::new())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn rows(&self) -> &[AttrSet] {
        &self.rows
    }

    /// Attribute set of object `g`.
    pub fn row(&self, g: usize) -> &AttrSet {
        &self.rows[g]
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows.get(g).is_some_and(|r| r.contains(&m))
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    /// Resolves attribute names to an index set.
    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttrSet> {
        names
            .iter()
            .map(|n| lookup("attribute", &self.attributes, n.as_ref()))
            .collect()
    }

    /// Resolves object names to an index set.
    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        names
            .iter()
            .map(|n| lookup("object", &self.objects, n.as_ref()))
            .collect()
    }

    /// Attribute names of `set`, in context order.
    pub fn attribute_names(&self, set: &AttrSet) -> Vec<&str> {
        set.iter().map(|&m| self.attributes[m].as_str()).collect()
    }

    /// Appends an object. Fails when the name is taken or the row references
    /// unknown attributes.
    pub fn push_object(&mut self, name: impl Into<String>, row: AttrSet) -> Result<usize> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::invalid("empty object identifier"));
        }
        if self.object_index(&name).is_some() {
            return Err(Error::invalid(format!(
                "duplicate object identifier {name:?}"
            )));
        }
        check_bounds("attribute", &row, self.attributes.len())?;
        self.objects.push(name);
        self.rows.push(row);
        Ok(self.objects.len() - 1)
    }

    /// `A'`: the attributes shared by all objects in `objs`.
    pub fn derive_attributes(&self, objs: &ObjectSet) -> Result<AttrSet> {
        check_bounds("object", objs, self.objects.len())?;
        Ok(self.intent_of(objs))
    }

    /// `B'`: the objects having every attribute in `attrs`.
    pub fn derive_objects(&self, attrs: &AttrSet) -> Result<ObjectSet> {
        check_bounds("attribute", attrs, self.attributes.len())?;
        Ok(self.extent_of(attrs))
    }

    /// `B''`.
    pub fn closure(&self, attrs: &AttrSet) -> Result<AttrSet> {
        check_bounds("attribute", attrs, self.attributes.len())?;
        Ok(self.close(attrs))
    }

    pub(crate) fn intent_of(&self, objs: &ObjectSet) -> AttrSet {
        let mut out = full_set(self.attributes.len());
        for &g in objs {
            out.retain(|m| self.rows[g].contains(m));
        }
        out
    }

    pub(crate) fn extent_of(&self, attrs: &AttrSet) -> ObjectSet {
        (0..self.objects.len())
            .filter(|&g| attrs.is_subset(&self.rows[g]))
            .collect()
    }

    pub(crate) fn close(&self, attrs: &AttrSet) -> AttrSet {
        row_closure(&self.rows, attrs, self.attributes.len())
    }

    /// Stacks contexts over the same attribute list. Objects are renamed
    /// `"<index>:<name>"` after the position of their source context.
    pub fn subposition(parts: &[&FormalContext]) -> Result<FormalContext> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("subposition of an empty list"))?;
        let mut objects = Vec::new();
        let mut rows = Vec::new();
        for (i, ctx) in parts.iter().enumerate() {
            if ctx.attributes != first.attributes {
                return Err(Error::invalid(format!(
                    "context {i} has a different attribute list"
                )));
            }
            for (g, name) in ctx.objects.iter().enumerate() {
                objects.push(format!("{i}:{name}"));
                rows.push(ctx.rows[g].clone());
            }
        }
        FormalContext::from_rows(objects, first.attributes.clone(), rows)
    }
}

/// One object described under every condition: the table `(M, B, I)` an
/// expert supplies as a triadic counterexample. `table[b]` is the attribute
/// set the object has under condition `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRow {
    pub name: String,
    pub table: Vec<AttrSet>,
}

impl ObjectRow {
    pub fn new(name: impl Into<String>, table: Vec<AttrSet>) -> Self {
        ObjectRow {
            name: name.into(),
            table,
        }
    }

    /// Builds a row from `(attribute, condition)` index pairs.
    pub fn from_pairs<I>(name: impl Into<String>, n_conditions: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut table = vec![AttrSet::new(); n_conditions];
        for (m, b) in pairs {
            if b >= table.len() {
                table.resize(b + 1, AttrSet::new());
            }
            table[b].insert(m);
        }
        ObjectRow::new(name, table)
    }

    /// `(attribute, condition)` pairs, ordered by condition then attribute.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.table
            .iter()
            .enumerate()
            .flat_map(|(b, row)| row.iter().map(move |&m| (m, b)))
    }
}

/// A triadic context `(G, M, B, Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriadicFile", into = "TriadicFile")]
pub struct TriadicContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    conditions: Vec<String>,
    // table[g][b] = attributes of g under b
    table: Vec<Vec<AttrSet>>,
}

impl TriadicContext {
    /// Builds a context from `(object, attribute, condition)` index triples.
    /// Duplicate triples are rejected.
    pub fn new<I>(
        objects: Vec<String>,
        attributes: Vec<String>,
        conditions: Vec<String>,
        incidence: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        check_unique("object", &objects)?;
        check_unique("attribute", &attributes)?;
        check_unique("condition", &conditions)?;
        let mut table = vec![vec![AttrSet::new(); conditions.len()]; objects.len()];
        for (g, m, b) in incidence {
            if g >= objects.len() || m >= attributes.len() || b >= conditions.len() {
                return Err(Error::invalid(format!(
                    "incidence ({g}, {m}, {b}) out of range"
                )));
            }
            if !table[g][b].insert(m) {
                return Err(Error::invalid(format!(
                    "duplicate incidence ({:?}, {:?}, {:?})",
                    objects[g], attributes[m], conditions[b]
                )));
            }
        }
        Ok(TriadicContext {
            objects,
            attributes,
            conditions,
            table,
        })
    }

    /// Builds a context from name triples.
    pub fn from_names<S: AsRef<str>>(
        objects: &[S],
        attributes: &[S],
        conditions: &[S],
        incidence: &[(S, S, S)],
    ) -> Result<Self> {
        let own = |v: &[S]| v.iter().map(|s| s.as_ref().to_owned()).collect::<Vec<_>>();
        let (objects, attributes, conditions) = (own(objects), own(attributes), own(conditions));
        let mut triples = Vec::with_capacity(incidence.len());
        for (g, m, b) in incidence {
            triples.push((
                lookup("object", &objects, g.as_ref())?,
                lookup("attribute", &attributes, m.as_ref())?,
                lookup("condition", &conditions, b.as_ref())?,
            ));
        }
        Self::new(objects, attributes, conditions, triples)
    }

    /// A triadic context without objects.
    pub fn empty(attributes: Vec<String>, conditions: Vec<String>) -> Result<Self> {
        Self::new(Vec::new(), attributes, conditions, std::iter::empty())
    }

    /// Re-stacks condition contexts sharing objects and attributes.
    pub fn from_slices(conditions: Vec<String>, slices: &[FormalContext]) -> Result<Self> {
        if slices.len() != conditions.len() {
            return Err(Error::invalid("one slice per condition required"));
        }
        let first = slices
            .first()
            .ok_or_else(|| Error::invalid("no condition contexts"))?;
        let mut triples = Vec::new();
        for (b, s) in slices.iter().enumerate() {
            if s.objects != first.objects || s.attributes != first.attributes {
                return Err(Error::invalid(format!(
                    "slice {b} differs in objects or attributes"
                )));
            }
            for (g, row) in s.rows.iter().enumerate() {
                triples.extend(row.iter().map(|&m| (g, m, b)));
            }
        }
        Self::new(
            first.objects.clone(),
            first.attributes.clone(),
            conditions,
            triples,
        )
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn conditions(&self) -> &[String] {
        &self.conditions
    }

    pub fn condition_index(&self, name: &str) -> Option<usize> {
        self.conditions.iter().position(|c| c == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Attributes of object `g` under condition `b`.
    pub fn row(&self, g: usize, b: usize) -> &AttrSet {
        &self.table[g][b]
    }

    pub fn object_row(&self, g: usize) -> ObjectRow {
        ObjectRow::new(self.objects[g].clone(), self.table[g].clone())
    }

    pub fn incident(&self, g: usize, m: usize, b: usize) -> bool {
        self.table
            .get(g)
            .and_then(|t| t.get(b))
            .is_some_and(|r| r.contains(&m))
    }

    /// All `(object, attribute, condition)` triples.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.table.iter().enumerate().flat_map(|(g, per_b)| {
            per_b
                .iter()
                .enumerate()
                .flat_map(move |(b, row)| row.iter().map(move |&m| (g, m, b)))
        })
    }

    /// The condition context `K_b`.
    pub fn slice(&self, b: usize) -> Result<FormalContext> {
        if b >= self.conditions.len() {
            return Err(Error::invalid(format!("unknown condition index {b}")));
        }
        Ok(FormalContext {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            rows: self.table.iter().map(|t| t[b].clone()).collect(),
        })
    }

    pub fn slice_named(&self, condition: &str) -> Result<FormalContext> {
        self.slice(lookup("condition", &self.conditions, condition)?)
    }

    pub fn slices(&self) -> Vec<FormalContext> {
        (0..self.conditions.len())
            .map(|b| self.slice(b).expect("index in range"))
            .collect()
    }

    /// Rows of the subposition of the condition contexts in `conds`.
    pub fn rows_under<'a>(
        &'a self,
        conds: &'a ConditionSet,
    ) -> impl Iterator<Item = &'a AttrSet> + 'a {
        self.table
            .iter()
            .flat_map(move |t| conds.iter().map(move |&b| &t[b]))
    }

    /// Appends an object given by its full table.
    pub fn push_object(&mut self, row: ObjectRow) -> Result<usize> {
        if row.name.is_empty() {
            return Err(Error::invalid("empty object identifier"));
        }
        if self.object_index(&row.name).is_some() {
            return Err(Error::invalid(format!(
                "duplicate object identifier {:?}",
                row.name
            )));
        }
        if row.table.len() != self.conditions.len() {
            return Err(Error::invalid(
                "object table does not cover every condition",
            ));
        }
        for r in &row.table {
            check_bounds("attribute", r, self.attributes.len())?;
        }
        self.objects.push(row.name);
        self.table.push(row.table);
        Ok(self.objects.len() - 1)
    }
}

/// A family of formal contexts over one shared attribute list. Members model
/// conditions or experts; their object sets may differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyFile", into = "FamilyFile")]
pub struct ContextFamily {
    attributes: Vec<String>,
    members: Vec<(String, FormalContext)>,
}

impl ContextFamily {
    pub fn new(attributes: Vec<String>, members: Vec<(String, FormalContext)>) -> Result<Self> {
        check_unique("attribute", &attributes)?;
        let ids: Vec<String> = members.iter().map(|(id, _)| id.clone()).collect();
        check_unique("member", &ids)?;
        for (id, ctx) in &members {
            if ctx.attributes != attributes {
                return Err(Error::invalid(format!(
                    "member {id:?} does not share the family's attribute list"
                )));
            }
        }
        Ok(ContextFamily {
            attributes,
            members,
        })
    }

    /// A family of empty contexts, one per member id.
    pub fn empty(attributes: Vec<String>, ids: Vec<String>) -> Result<Self> {
        let members = ids
            .into_iter()
            .map(|id| Ok((id, FormalContext::empty(attributes.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(attributes, members)
    }

    /// The condition contexts of `t`, keyed by condition name.
    pub fn from_triadic(t: &TriadicContext) -> Self {
        ContextFamily {
            attributes: t.attributes.clone(),
            members: t.conditions.iter().cloned().zip(t.slices()).collect(),
        }
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_ids(&self) -> Vec<String> {
        self.members.iter().map(|(id, _)| id.clone()).collect()
    }

    pub fn member_index(&self, id: &str) -> Option<usize> {
        self.members.iter().position(|(m, _)| m == id)
    }

    pub fn member(&self, i: usize) -> &FormalContext {
        &self.members[i].1
    }

    pub fn member_mut(&mut self, i: usize) -> &mut FormalContext {
        &mut self.members[i].1
    }

    pub fn members(&self) -> impl Iterator<Item = (&str, &FormalContext)> {
        self.members.iter().map(|(id, c)| (id.as_str(), c))
    }

    /// Rows of the subposition of the members in `ids`.
    pub fn rows_under<'a>(
        &'a self,
        ids: &'a ConditionSet,
    ) -> impl Iterator<Item = &'a AttrSet> + 'a {
        ids.iter().flat_map(move |&e| self.members[e].1.rows.iter())
    }

    /// Subposition of the members in `ids`, in member order.
    pub fn subposition(&self, ids: &ConditionSet) -> Result<FormalContext> {
        check_bounds("member", ids, self.members.len())?;
        let parts: Vec<&FormalContext> = ids.iter().map(|&e| &self.members[e].1).collect();
        if parts.is_empty() {
            return FormalContext::empty(self.attributes.clone());
        }
        FormalContext::subposition(&parts)
    }
}
