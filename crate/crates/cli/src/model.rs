//! Model files: one algebroid and/or one Poisson structure plus named elements.
//!
//! ```text
//! [algebroid]
//! base = [ "x1", "x2" ]
//! rank = 2
//! anchor[1][1] = "1"
//! C[3][1][2] = "x1"
//!
//! [poisson]
//! base = [ "x1", "x2", "x3" ]
//! L[1][2] = "x3"
//!
//! [multivector P]
//! 1,2 = "x1"
//!
//! [form eta]
//! scalar = "x2^2"
//! ```
//!
//! Indices are one-based. Missing entries are zero. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;

use cartan_core::algebroid::StructureTable;
use cartan_core::{
    Algebroid, Blade, Chart, Error as CoreError, Expr, GradedElement, PoissonStructure, Variance,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ModelError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ModelError {
    ModelError {
        line,
        column,
        message: message.into(),
    }
}

/// A named element block. Entries are stored as canonical expression text
/// so they can be rebound to whichever chart a command works in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementBlock {
    pub name: String,
    pub variance: Variance,
    pub entries: Vec<(Blade, String)>,
}

impl ElementBlock {
    /// Parses the entries against `chart` as an element of rank `rank`.
    pub fn bind(&self, chart: &Chart, rank: usize) -> Result<GradedElement, String> {
        let mut out = GradedElement::zero(self.variance, rank);
        for (blade, text) in &self.entries {
            if blade.max_index().is_some_and(|m| m >= rank) {
                return Err(format!(
                    "{} `{}`: index {} exceeds rank {rank}",
                    self.variance.name(),
                    self.name,
                    blade.key()
                ));
            }
            let f = chart.parse(text).map_err(|e| {
                format!(
                    "{} `{}` entry {}: {e}",
                    self.variance.name(),
                    self.name,
                    entry_key(*blade)
                )
            })?;
            out.add_term(*blade, f);
        }
        Ok(out)
    }
}

fn entry_key(blade: Blade) -> String {
    if blade.degree() == 0 {
        "scalar".into()
    } else {
        blade.key()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    pub algebroid: Option<Algebroid>,
    pub poisson: Option<PoissonStructure>,
    pub elements: Vec<ElementBlock>,
}

impl Model {
    pub fn element(&self, name: &str) -> Option<&ElementBlock> {
        self.elements.iter().find(|e| e.name == name)
    }

    /// Chart and rank that element blocks are validated against: the
    /// algebroid if present, else the tangent bundle of the Poisson chart.
    pub fn element_context(&self) -> Option<(&Chart, usize)> {
        match (&self.algebroid, &self.poisson) {
            (Some(a), _) => Some((a.chart(), a.rank())),
            (None, Some(p)) => Some((p.chart(), p.dim())),
            (None, None) => None,
        }
    }

    /// Canonical text; `parse(&m.save()) == m`.
    pub fn save(&self) -> String {
        let mut blocks = Vec::new();
        if let Some(a) = &self.algebroid {
            blocks.push(render_algebroid(a));
        }
        if let Some(p) = &self.poisson {
            blocks.push(render_poisson(p));
        }
        for e in &self.elements {
            let mut s = format!("[{} {}]\n", e.variance.name(), e.name);
            for (blade, text) in &e.entries {
                s.push_str(&format!("{} = \"{text}\"\n", entry_key(*blade)));
            }
            blocks.push(s);
        }
        blocks.join("\n")
    }
}

fn render_base(chart: &Chart) -> String {
    let names: Vec<String> = chart.names().iter().map(|n| format!("\"{n}\"")).collect();
    if names.is_empty() {
        "base = [ ]\n".into()
    } else {
        format!("base = [ {} ]\n", names.join(", "))
    }
}

pub fn render_algebroid(a: &Algebroid) -> String {
    let chart = a.chart();
    let mut s = String::from("[algebroid]\n");
    s.push_str(&render_base(chart));
    s.push_str(&format!("rank = {}\n", a.rank()));
    for r in 0..a.rank() {
        for i in 0..a.dim() {
            let f = a.anchor(r, i);
            if !f.is_zero() {
                s.push_str(&format!(
                    "anchor[{}][{}] = \"{}\"\n",
                    r + 1,
                    i + 1,
                    f.to_string_in(chart)
                ));
            }
        }
    }
    for ((c, x, y), f) in a.structure_table() {
        s.push_str(&format!(
            "C[{}][{}][{}] = \"{}\"\n",
            c + 1,
            x + 1,
            y + 1,
            f.to_string_in(chart)
        ));
    }
    s
}

pub fn render_poisson(p: &PoissonStructure) -> String {
    let chart = p.chart();
    let mut s = String::from("[poisson]\n");
    s.push_str(&render_base(chart));
    for (blade, f) in p.bivector().terms() {
        let ij = blade.indices();
        s.push_str(&format!(
            "L[{}][{}] = \"{}\"\n",
            ij[0] + 1,
            ij[1] + 1,
            f.to_string_in(chart)
        ));
    }
    s
}

/// A `key = value` line with the columns where key and value start.
struct Entry {
    line: usize,
    key: String,
    key_col: usize,
    value: String,
    value_col: usize,
    quoted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Algebroid,
    Poisson,
    Element(Variance),
}

struct Section {
    kind: Kind,
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_string = !in_string,
            '#' if !in_string => return &line[..i],
            _ => {}
        }
    }
    line
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn parse_header(text: &str, line_no: usize, col: usize) -> Result<(Kind, String), ModelError> {
    let inner = text.trim();
    let mut words = inner.split_whitespace();
    let kind = match words.next() {
        Some("algebroid") => Kind::Algebroid,
        Some("poisson") => Kind::Poisson,
        Some("multivector") => Kind::Element(Variance::Multivector),
        Some("form") => Kind::Element(Variance::Form),
        _ => return Err(err(line_no, col, format!("unknown section `[{inner}]`"))),
    };
    let name = words.next().unwrap_or("").to_string();
    if words.next().is_some() {
        return Err(err(
            line_no,
            col,
            format!("malformed section header `[{inner}]`"),
        ));
    }
    match kind {
        Kind::Element(_) => {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(err(
                    line_no,
                    col,
                    format!("section `[{inner}]` needs an identifier name"),
                ));
            }
        }
        _ if !name.is_empty() => {
            return Err(err(
                line_no,
                col,
                format!("section `[{inner}]` takes no name"),
            ));
        }
        _ => {}
    }
    Ok((kind, name))
}

fn split_sections(text: &str) -> Result<Vec<Section>, ModelError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let start = line.len() - line.trim_start().len();
        let col = column_of(raw, start);
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(inner) = rest.strip_suffix(']') else {
                return Err(err(line_no, col, "unterminated section header"));
            };
            let (kind, name) = parse_header(inner, line_no, col)?;
            sections.push(Section {
                kind,
                name,
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(err(line_no, col, "entry outside of any section"));
        };
        let Some(eq) = line.find('=') else {
            return Err(err(line_no, col, "expected `key = value`"));
        };
        let key = line[..eq].trim().to_string();
        if key.is_empty() {
            return Err(err(line_no, col, "missing key before `=`"));
        }
        let after = &line[eq + 1..];
        let value_start = eq + 1 + (after.len() - after.trim_start().len());
        let value = after.trim();
        if value.is_empty() {
            return Err(err(
                line_no,
                column_of(raw, eq) + 1,
                format!("missing value for `{key}`"),
            ));
        }
        let mut value_col = column_of(raw, value_start);
        let (value, quoted) = if let Some(body) = value.strip_prefix('"') {
            let Some(body) = body.strip_suffix('"') else {
                return Err(err(line_no, value_col, "unterminated string"));
            };
            if body.contains('"') {
                return Err(err(line_no, value_col, "unexpected `\"` inside string"));
            }
            value_col += 1;
            (body.to_string(), true)
        } else {
            (value.to_string(), false)
        };
        section.entries.push(Entry {
            line: line_no,
            key,
            key_col: col,
            value,
            value_col,
            quoted,
        });
    }
    Ok(sections)
}

fn parse_list(entry: &Entry) -> Result<Vec<String>, ModelError> {
    let body = entry
        .value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .filter(|_| !entry.quoted)
        .ok_or_else(|| {
            err(
                entry.line,
                entry.value_col,
                format!("`{}` expects a list like [ \"x1\", \"x2\" ]", entry.key),
            )
        })?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|item| {
            let item = item.trim();
            item.strip_prefix('"')
                .and_then(|i| i.strip_suffix('"'))
                .map(str::to_string)
                .ok_or_else(|| {
                    err(
                        entry.line,
                        entry.value_col,
                        format!("`{}`: list items must be quoted names", entry.key),
                    )
                })
        })
        .collect()
}

/// Parses `name[i][j]...` into one-based indices.
fn indexed_key(key: &str, name: &str, count: usize) -> Option<Vec<usize>> {
    let mut rest = key.strip_prefix(name)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let inner = rest.strip_prefix('[')?;
        let close = inner.find(']')?;
        out.push(inner[..close].trim().parse().ok()?);
        rest = &inner[close + 1..];
    }
    rest.is_empty().then_some(out)
}

fn parse_expr(entry: &Entry, chart: &Chart) -> Result<Expr, ModelError> {
    chart.parse(&entry.value).map_err(|e| match e {
        CoreError::Syntax { position, message } => err(
            entry.line,
            entry.value_col + position,
            format!("`{}`: {message}", entry.key),
        ),
        other => err(
            entry.line,
            entry.value_col,
            format!("`{}`: {other}", entry.key),
        ),
    })
}

fn check_unique(entries: &[Entry]) -> Result<(), ModelError> {
    let mut seen = BTreeMap::new();
    for e in entries {
        let normalized: String = e.key.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(first) = seen.insert(normalized, e.line) {
            return Err(err(
                e.line,
                e.key_col,
                format!("duplicate key `{}` (first on line {first})", e.key),
            ));
        }
    }
    Ok(())
}

fn take_base(section: &Section) -> Result<Chart, ModelError> {
    let entry = section
        .entries
        .iter()
        .find(|e| e.key == "base")
        .ok_or_else(|| err(section.line, 1, "section is missing `base`"))?;
    let names = parse_list(entry)?;
    Chart::new(names).map_err(|e| err(entry.line, entry.value_col, format!("`base`: {e}")))
}

fn one_based(entry: &Entry, index: usize, bound: usize, what: &str) -> Result<usize, ModelError> {
    if index == 0 || index > bound {
        return Err(err(
            entry.line,
            entry.key_col,
            format!(
                "`{}`: {what} index {index} is outside 1..={bound}",
                entry.key
            ),
        ));
    }
    Ok(index - 1)
}

fn build_algebroid(section: &Section) -> Result<Algebroid, ModelError> {
    check_unique(&section.entries)?;
    let chart = take_base(section)?;
    let rank_entry = section
        .entries
        .iter()
        .find(|e| e.key == "rank")
        .ok_or_else(|| err(section.line, 1, "[algebroid] is missing `rank`"))?;
    let rank: usize = rank_entry.value.parse().map_err(|_| {
        err(
            rank_entry.line,
            rank_entry.value_col,
            "`rank` expects a non-negative integer",
        )
    })?;
    let n = chart.dim();
    let mut anchor = vec![vec![Expr::zero(); n]; rank];
    let mut structure = StructureTable::new();
    for e in &section.entries {
        if e.key == "base" || e.key == "rank" {
            continue;
        }
        if let Some(ix) = indexed_key(&e.key, "anchor", 2) {
            let a = one_based(e, ix[0], rank, "section")?;
            let i = one_based(e, ix[1], n, "coordinate")?;
            anchor[a][i] = parse_expr(e, &chart)?;
        } else if let Some(ix) = indexed_key(&e.key, "C", 3) {
            let c = one_based(e, ix[0], rank, "section")?;
            let a = one_based(e, ix[1], rank, "section")?;
            let b = one_based(e, ix[2], rank, "section")?;
            if a >= b {
                return Err(err(
                    e.line,
                    e.key_col,
                    format!("`{}`: lower indices must be strictly increasing", e.key),
                ));
            }
            let f = parse_expr(e, &chart)?;
            if !f.is_zero() {
                structure.insert((c, a, b), f);
            }
        } else {
            return Err(err(
                e.line,
                e.key_col,
                format!("unknown key `{}` in [algebroid]", e.key),
            ));
        }
    }
    Algebroid::new(chart, rank, anchor, structure)
        .map_err(|e| err(section.line, 1, format!("[algebroid]: {e}")))
}

fn build_poisson(section: &Section) -> Result<PoissonStructure, ModelError> {
    check_unique(&section.entries)?;
    let chart = take_base(section)?;
    let n = chart.dim();
    let mut entries = BTreeMap::new();
    for e in &section.entries {
        if e.key == "base" {
            continue;
        }
        let Some(ix) = indexed_key(&e.key, "L", 2) else {
            return Err(err(
                e.line,
                e.key_col,
                format!("unknown key `{}` in [poisson]", e.key),
            ));
        };
        let i = one_based(e, ix[0], n, "coordinate")?;
        let j = one_based(e, ix[1], n, "coordinate")?;
        if i >= j {
            return Err(err(
                e.line,
                e.key_col,
                format!("`{}`: indices must be strictly increasing", e.key),
            ));
        }
        let f = parse_expr(e, &chart)?;
        if !f.is_zero() {
            entries.insert((i, j), f);
        }
    }
    PoissonStructure::from_entries(chart, &entries)
        .map_err(|e| err(section.line, 1, format!("[poisson]: {e}")))
}

fn parse_tuple(entry: &Entry, rank: usize) -> Result<Blade, ModelError> {
    if entry.key == "scalar" {
        return Ok(Blade::EMPTY);
    }
    let bad = || {
        err(
            entry.line,
            entry.key_col,
            format!(
                "`{}` is not `scalar` or an increasing tuple like 1,3",
                entry.key
            ),
        )
    };
    let mut indices = Vec::new();
    for part in entry.key.split(',') {
        let i: usize = part.trim().parse().map_err(|_| bad())?;
        indices.push(one_based(entry, i, rank, "tuple")?);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(
            entry.line,
            entry.key_col,
            format!("`{}`: tuple indices must be strictly increasing", entry.key),
        ));
    }
    Blade::from_indices(&indices).ok_or_else(bad)
}

fn build_element(
    section: &Section,
    variance: Variance,
    context: Option<(&Chart, usize)>,
) -> Result<ElementBlock, ModelError> {
    check_unique(&section.entries)?;
    let Some((chart, rank)) = context else {
        return Err(err(
            section.line,
            1,
            "element blocks need an [algebroid] or [poisson] section",
        ));
    };
    let mut entries = Vec::new();
    for e in &section.entries {
        let blade = parse_tuple(e, rank)?;
        let f = parse_expr(e, chart)?;
        entries.push((blade, f));
    }
    // Normalize order and collapse spelling variants of the same tuple.
    let mut by_blade: BTreeMap<Blade, Expr> = BTreeMap::new();
    for (b, f) in entries {
        if by_blade.insert(b, f).is_some() {
            return Err(err(
                section.line,
                1,
                format!("duplicate tuple {} in `{}`", b.key(), section.name),
            ));
        }
    }
    Ok(ElementBlock {
        name: section.name.clone(),
        variance,
        entries: by_blade
            .into_iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(b, f)| (b, f.to_string_in(chart)))
            .collect(),
    })
}

pub fn parse(text: &str) -> Result<Model, ModelError> {
    let sections = split_sections(text)?;
    let mut model = Model::default();
    let mut seen_algebroid = None;
    let mut seen_poisson = None;
    for s in &sections {
        match s.kind {
            Kind::Algebroid => {
                if let Some(first) = seen_algebroid.replace(s.line) {
                    return Err(err(
                        s.line,
                        1,
                        format!("duplicate [algebroid] section (first on line {first})"),
                    ));
                }
                model.algebroid = Some(build_algebroid(s)?);
            }
            Kind::Poisson => {
                if let Some(first) = seen_poisson.replace(s.line) {
                    return Err(err(
                        s.line,
                        1,
                        format!("duplicate [poisson] section (first on line {first})"),
                    ));
                }
                model.poisson = Some(build_poisson(s)?);
            }
            Kind::Element(_) => {}
        }
    }
    let mut names = BTreeMap::new();
    for s in &sections {
        if let Kind::Element(variance) = s.kind {
            if let Some(first) = names.insert(s.name.clone(), s.line) {
                return Err(err(
                    s.line,
                    1,
                    format!("duplicate element `{}` (first on line {first})", s.name),
                ));
            }
            let block = build_element(s, variance, model.element_context())?;
            model.elements.push(block);
        }
    }
    Ok(model)
}

pub fn load(path: &std::path::Path) -> Result<Model, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}
