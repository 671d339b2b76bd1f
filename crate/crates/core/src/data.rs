//! Typed view of `data/tables.toml`, the single file holding every
//! list and table transcribed by hand.

use std::sync::OnceLock;

use serde::Deserialize;

const SOURCE: &str = include_str!("../data/tables.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct Tables {
    pub expected: Vec<ExpectedList>,
    pub witness: Vec<WitnessEntry>,
    pub anchor: Vec<AnchorEntry>,
    pub proved: Vec<ProvedEntry>,
    pub conjectured: Vec<ConjecturedEntry>,
    pub table: Vec<TableEntry>,
    pub erratum: Vec<Erratum>,
    pub identities: Vec<IdentityFamily>,
    pub pair_sums: PairSums,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedList {
    pub list: String,
    pub family: String,
    pub entries: Vec<ExpectedEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedEntry {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: Option<u32>,
    pub display: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct WitnessEntry {
    pub source: String,
    pub form: String,
    pub value: u64,
    /// Set for entries that depend on one reading of an ambiguous passage.
    pub reading: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AnchorEntry {
    pub source: String,
    pub fixed: String,
    pub d: u32,
    pub target: u64,
    pub stated_cap: u32,
    pub stated_set: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ProvedEntry {
    pub form: String,
    pub display: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ConjecturedEntry {
    pub form: String,
    #[serde(default)]
    pub gp_display: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub constraint: Option<TableConstraint>,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableConstraint {
    pub kind: String,
    pub at_least: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Erratum {
    pub table: String,
    pub printed: String,
    pub corrected: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct IdentityFamily {
    pub name: String,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PairSums {
    pub max_index: i64,
    pub range: [u64; 2],
    pub extra: Vec<u64>,
    pub excluded: Vec<u64>,
}

pub fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| toml::from_str(SOURCE).expect("embedded tables.toml is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        let t = tables();
        let sizes: Vec<(&str, usize)> = t.expected.iter().map(|l| (l.list.as_str(), l.entries.len())).collect();
        assert_eq!(sizes, [("1.1", 7), ("1.2", 37), ("1.3i", 51), ("1.3ii", 18), ("liouville", 7)]);
        assert_eq!(t.proved.len(), 20);
        assert_eq!(t.conjectured.len(), 58);
        assert_eq!(t.anchor.len(), 33);
        assert_eq!(t.table.len(), 4);
    }
}
