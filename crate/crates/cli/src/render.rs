//! Text, JSON and TeX renderers for tables and resolutions.
//!
//! Row order is fixed everywhere: `j` ascending down the page, the
//! homological columns `i = 0` then `i = 1`, with the `i = 1` column
//! offset by one internal degree (the classical Betti-table layout).

use serde::Serialize;

use cubic_mcm::betti::{BettiTable, ObjectDescriptor, ResolutionStep, Variant};
use cubic_mcm::charge::Charge;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tex,
}

#[derive(Serialize)]
pub struct ChargeJson {
    pub r: i64,
    pub d: i64,
}

impl From<Charge> for ChargeJson {
    fn from(c: Charge) -> Self {
        ChargeJson { r: c.r, d: c.d }
    }
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Generic => "generic",
        Variant::Atiyah => "atiyah",
        Variant::SpecialS => "special",
    }
}

#[derive(Serialize)]
pub struct WindowEntryJson {
    pub i: u8,
    pub j: i64,
    pub count: u64,
}

#[derive(Serialize)]
pub struct BettiJson {
    pub charge: ChargeJson,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub internal_shift: Option<i64>,
    /// Rows `j = 0, 1, 2` of the classical layout: `[beta[0][j], beta[1][j+1]]`.
    pub rows: Vec<[u64; 2]>,
    pub window: Vec<WindowEntryJson>,
}

/// The three classical display rows of a window.
pub fn layout_rows(table: &BettiTable) -> Vec<[u64; 2]> {
    (0..3)
        .map(|j| [table.at(0, j), table.at(1, j + 1)])
        .collect()
}

pub fn betti_json(
    charge: Charge,
    variant: Variant,
    lambda: Option<&str>,
    shift: Option<i64>,
    table: &BettiTable,
) -> String {
    let doc = BettiJson {
        charge: charge.into(),
        variant: variant_name(variant).to_string(),
        lambda: lambda.map(str::to_string),
        internal_shift: shift,
        rows: layout_rows(table),
        window: table
            .window()
            .map(|(i, j, count)| WindowEntryJson { i, j, count })
            .collect(),
    };
    to_json(&doc)
}

pub fn betti_text(
    charge: Charge,
    variant: Variant,
    lambda: Option<&str>,
    shift: Option<i64>,
    table: &BettiTable,
) -> String {
    let mut out = format!("charge {charge}, variant {}", variant_name(variant));
    if let Some(l) = lambda {
        out.push_str(&format!(", point {l}"));
    }
    if let Some(s) = shift {
        out.push_str(&format!(", internal shift {s}"));
    }
    out.push('\n');
    out.push_str("  j   i=0   i=1\n");
    for (j, row) in layout_rows(table).iter().enumerate() {
        out.push_str(&format!("{j:>3} {:>5} {:>5}\n", row[0], row[1]));
    }
    out
}

pub fn betti_tex(table: &BettiTable) -> String {
    let mut out = String::from("\\begin{array}{r|rr}\nj & i=0 & i=1 \\\\ \\hline\n");
    for (j, row) in layout_rows(table).iter().enumerate() {
        out.push_str(&format!("{j} & {} & {} \\\\\n", row[0], row[1]));
    }
    out.push_str("\\end{array}\n");
    out
}

#[derive(Serialize)]
pub struct SummandJson {
    pub degree: i64,
    pub count: u64,
}

#[derive(Serialize)]
pub struct PositionJson {
    pub position: i64,
    pub summands: Vec<SummandJson>,
}

#[derive(Serialize)]
pub struct ResolutionJson {
    pub charge: ChargeJson,
    pub variant: String,
    pub steps: u32,
    pub positions: Vec<PositionJson>,
}

/// One position as a direct sum of twisted free modules, e.g.
/// `R(-1)^3 + R(-2)`.
pub fn step_text(step: &ResolutionStep) -> String {
    if step.is_empty() {
        return "0".to_string();
    }
    step.iter()
        .map(|&(j, v)| {
            let base = format!("R({})", -j);
            if v == 1 {
                base
            } else {
                format!("{base}^{v}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn resolution_text(desc: &ObjectDescriptor, res: &[(i64, ResolutionStep)]) -> String {
    let mut out = format!(
        "charge {}, variant {}\n",
        desc.charge(),
        variant_name(desc.variant())
    );
    for (i, step) in res {
        out.push_str(&format!("i = {i:>3}: {}\n", step_text(step)));
    }
    out
}

pub fn resolution_json(
    desc: &ObjectDescriptor,
    steps: u32,
    res: &[(i64, ResolutionStep)],
) -> String {
    let doc = ResolutionJson {
        charge: desc.charge().into(),
        variant: variant_name(desc.variant()).to_string(),
        steps,
        positions: res
            .iter()
            .map(|(i, step)| PositionJson {
                position: *i,
                summands: step
                    .iter()
                    .map(|&(degree, count)| SummandJson { degree, count })
                    .collect(),
            })
            .collect(),
    };
    to_json(&doc)
}

/// Staircase array: one row per internal level `j - i`, one column per
/// homological position, ranks at the occupied cells.
pub fn resolution_tex(res: &[(i64, ResolutionStep)]) -> String {
    let mut levels: Vec<i64> = res
        .iter()
        .flat_map(|(i, step)| step.iter().map(move |&(j, _)| j - i))
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let mut out = format!("\\begin{{array}}{{*{{{}}}{{c}}}}\n", res.len());
    for level in &levels {
        let cells: Vec<String> = res
            .iter()
            .map(|(i, step)| {
                step.iter()
                    .find(|&&(j, _)| j - i == *level)
                    .map(|&(_, v)| v.to_string())
                    .unwrap_or_default()
            })
            .collect();
        out.push_str(&cells.join(" & "));
        out.push_str(" \\\\\n");
    }
    // Mark the column of homological degree zero.
    let marker: Vec<String> = res
        .iter()
        .map(|(i, _)| {
            if *i == 0 {
                "[0]".to_string()
            } else {
                String::new()
            }
        })
        .collect();
    out.push_str(&marker.join(" & "));
    out.push_str(" \\\\\n\\end{array}\n");
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
