use std::fmt::Write as _;

use branching_core::branching::Subgroup;
use branching_core::catalog::ModuleDescriptor;
use branching_core::decomposer::{DecompositionCertificate, GridReport};
use branching_core::weights::{MultiplicityTable, TableKey, U2Variant, Weight};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Serialize)]
pub struct Entry {
    hw: Weight,
    mult: u64,
}

/// Table output: `{module, subgroup, variant, maxNorm, entries, certificate}`.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableDoc {
    module: String,
    subgroup: Option<Subgroup>,
    variant: Option<U2Variant>,
    max_norm: u32,
    entries: Vec<Entry>,
    certificate: Option<serde_json::Value>,
}

pub fn table_doc<K: TableKey>(
    module: &ModuleDescriptor,
    subgroup: Option<Subgroup>,
    variant: Option<U2Variant>,
    table: &MultiplicityTable<K>,
    certificate: Option<serde_json::Value>,
) -> TableDoc {
    TableDoc {
        module: module.to_string(),
        subgroup,
        variant,
        max_norm: table.region(),
        entries: table
            .iter()
            .map(|(k, m)| Entry { hw: k.hw(), mult: *m })
            .collect(),
        certificate,
    }
}

impl TableDoc {
    pub fn render(&self, format: Format) -> serde_json::Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Tsv => {
                let mut s = String::from("x\ty\tmult\n");
                for e in &self.entries {
                    let _ = writeln!(s, "{}\t{}\t{}", e.hw.x, e.hw.y, e.mult);
                }
                s
            }
        })
    }
}

pub fn summands_tsv(cert: &DecompositionCertificate) -> String {
    let mut s = String::from("module\tx\ty\tmult\n");
    for d in &cert.summands {
        let _ = writeln!(s, "{}\t{}\t{}\t{}", d.module, d.minimal_type.x, d.minimal_type.y, d.mult);
    }
    let _ = writeln!(s, "# exact={} residual_keys={}", cert.exact, cert.residual.len());
    s
}

pub fn grid_tsv(report: &GridReport) -> String {
    let mut s = String::from("side\tx\ty\tsummand\n");
    for (side, pairs) in [("sp", &report.sp_bijection), ("gl", &report.gl_bijection)] {
        for p in pairs {
            let _ = writeln!(s, "{side}\t{}\t{}\t{}", p.ktype.x, p.ktype.y, p.summand);
        }
    }
    s
}
