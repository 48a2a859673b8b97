//! Embedded reference values, one row per value with its provenance tag.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};

pub const REFERENCE_DATA: &str = include_str!("../data/reference_values.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    Printed,
    /// Kept verbatim although the printed digits are known to be wrong.
    PrintedTypo,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Printed => "printed",
            Tag::PrintedTypo => "printed-typo",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub label: String,
    pub value: f64,
    pub tag: Tag,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReferenceTable {
    pub id: u8,
    /// Columns in file order with their rows in node order.
    pub columns: Vec<(String, Vec<ReferenceRow>)>,
    pub counts: BTreeMap<String, usize>,
}

impl ReferenceTable {
    pub fn column(&self, name: &str) -> Option<&[ReferenceRow]> {
        self.columns
            .iter()
            .find(|(c, _)| c == name)
            .map(|(_, rows)| rows.as_slice())
    }
}

fn bad(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Config {
        path: "reference_values.txt".into(),
        msg: format!("line {line}: {}", msg.into()),
    }
}

pub fn parse(text: &str) -> CliResult<BTreeMap<u8, ReferenceTable>> {
    let mut tables: BTreeMap<u8, ReferenceTable> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let id = |s: &str| s.parse::<u8>().map_err(|_| bad(i + 1, format!("bad table id {s:?}")));
        match fields.as_slice() {
            ["count", table, column, n] => {
                let n = n.parse().map_err(|_| bad(i + 1, format!("bad count {n:?}")))?;
                let t = tables.entry(id(table)?).or_default();
                t.counts.insert(column.to_string(), n);
            }
            [table, column, label, value, tag] => {
                let value = value
                    .parse()
                    .map_err(|_| bad(i + 1, format!("bad value {value:?}")))?;
                let tag = match *tag {
                    "printed" => Tag::Printed,
                    "printed-typo" => Tag::PrintedTypo,
                    other => return Err(bad(i + 1, format!("unknown tag {other:?}"))),
                };
                let t = tables.entry(id(table)?).or_default();
                let row = ReferenceRow {
                    label: label.to_string(),
                    value,
                    tag,
                };
                match t.columns.iter_mut().find(|(c, _)| c == column) {
                    Some((_, rows)) => rows.push(row),
                    None => t.columns.push((column.to_string(), vec![row])),
                }
            }
            _ => return Err(bad(i + 1, format!("unexpected row {line:?}"))),
        }
    }
    for (id, t) in tables.iter_mut() {
        t.id = *id;
    }
    Ok(tables)
}

pub fn reference_table(id: u8) -> CliResult<ReferenceTable> {
    parse(REFERENCE_DATA)?
        .remove(&id)
        .ok_or_else(|| CliError::Usage(format!("no reference table {id}; choose 1, 2, 3 or 4")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_parses() {
        let tables = parse(REFERENCE_DATA).unwrap();
        assert_eq!(tables.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let t1 = &tables[&1];
        assert_eq!(t1.column("pdm").unwrap().len(), 6);
        assert_eq!(t1.column("cm").unwrap().len(), 14);
        assert_eq!(t1.counts["cm"], 14);
        let typos: Vec<_> = tables
            .values()
            .flat_map(|t| t.columns.iter().flat_map(|(_, r)| r.iter()))
            .filter(|r| r.tag == Tag::PrintedTypo)
            .collect();
        assert_eq!(typos.len(), 1);
        assert_eq!(typos[0].value, -109.9940489854443);
        let t3 = &tables[&3];
        let names: Vec<_> = t3.columns.iter().map(|(c, _)| c.as_str()).collect();
        assert_eq!(names, ["c0", "c2", "c10", "sech6"]);
        assert!(t3.counts.is_empty());
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(parse("1 pdm E 1.0 guessed\n").is_err());
        assert!(parse("1 pdm E\n").is_err());
        assert!(parse("count x pdm 3\n").is_err());
    }
}
