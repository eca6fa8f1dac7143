use std::collections::BTreeMap;
use std::path::Path;

use crate::{parse_pd, LinkDiagram, LinkError};

/// Named PD codes, one `name<TAB>pd` record per line, `#` starting a comment.
#[derive(Debug, Clone, Default)]
pub struct KnotTable {
    entries: BTreeMap<String, String>,
}

pub fn parse_table(text: &str) -> Result<KnotTable, LinkError> {
    let mut entries = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, pd) = line
            .split_once('\t')
            .ok_or_else(|| LinkError::MalformedToken(line.to_string()))?;
        entries.insert(name.trim().to_string(), pd.trim().to_string());
    }
    Ok(KnotTable { entries })
}

impl KnotTable {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn pd(&self, name: &str) -> Option<&str> {
        self.entries.get(name).map(String::as_str)
    }

    /// Resolves a name expression: a table name, `m(expr)` for the mirror,
    /// or `expr|expr` (also written `expr ⊔ expr`) for a split union.
    pub fn lookup(&self, expr: &str) -> Result<LinkDiagram, LinkError> {
        let expr = expr.trim();
        if let Some(pos) = top_level_union(expr) {
            let (lhs, rhs) = expr.split_at(pos);
            let sep = rhs.chars().next().map(char::len_utf8).unwrap_or(1);
            let a = self.lookup(lhs)?;
            let b = self.lookup(&rhs[sep..])?;
            return Ok(a.split_union(&b));
        }
        if let Some(inner) = expr.strip_prefix("m(").and_then(|s| s.strip_suffix(')')) {
            return Ok(self.lookup(inner)?.mirror());
        }
        let pd = self.pd(expr).ok_or_else(|| LinkError::UnknownName(expr.to_string()))?;
        parse_pd(pd)
    }
}

fn top_level_union(expr: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in expr.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' | '⊔' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Reads a table file and resolves `name` in it.
pub fn load_named(table_path: impl AsRef<Path>, name: &str) -> Result<LinkDiagram, LinkError> {
    let path = table_path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LinkError::IoFailure {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_table(&text)?.lookup(name)
}
