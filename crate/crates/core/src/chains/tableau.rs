use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Chain, ChainError};
use crate::poset::{BoxShape, Partition, PosetError};

const CELL: usize = 24;

/// A chain drawn in its box: the start's diagram plus, for each step `t`,
/// the label `t` in the cell added at that step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTableau {
    pub shape: BoxShape,
    pub base: Partition,
    /// `(row, column)`, both 1-based, to step index.
    pub labels: BTreeMap<(usize, usize), usize>,
}

impl ChainTableau {
    pub fn label_at(&self, row: usize, col: usize) -> Option<usize> {
        self.labels.get(&(row, col)).copied()
    }

    pub fn max_label(&self) -> usize {
        self.labels.values().copied().max().unwrap_or(0)
    }

    fn is_base(&self, row: usize, col: usize) -> bool {
        col <= self.base.part(row - 1) as usize
    }

    fn labels_by_step(&self) -> Vec<[usize; 3]> {
        let mut v: Vec<_> = self.labels.iter().map(|(&(r, c), &t)| [r, c, t]).collect();
        v.sort_by_key(|x| x[2]);
        v
    }
}

impl Serialize for ChainTableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChainTableau", 3)?;
        st.serialize_field("box", &self.shape)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("labels", &self.labels_by_step())?;
        st.end()
    }
}

pub fn tableau_of_chain(chain: &Chain, shape: BoxShape) -> Result<ChainTableau, ChainError> {
    chain.check_saturated()?;
    let base = chain.start().clone();
    if !base.fits(shape) || !chain.end().fits(shape) {
        return Err(PosetError::WrongLength { expected: shape.m(), found: base.len() }.into());
    }
    let mut labels = BTreeMap::new();
    for (t, w) in chain.elements.windows(2).enumerate() {
        let row = w[0].added_row(&w[1]).expect("checked saturated");
        labels.insert((row + 1, w[1].part(row) as usize), t + 1);
    }
    Ok(ChainTableau { shape, base, labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Json,
}

pub fn render(t: &ChainTableau, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(t),
        RenderFormat::Svg => render_svg_document(std::slice::from_ref(t)),
        RenderFormat::Json => serde_json::to_string(t).expect("tableau serializes"),
    }
}

fn render_ascii(t: &ChainTableau) -> String {
    let w = t.max_label().to_string().len().max(2);
    let mut out = String::new();
    for row in 1..=t.shape.m() {
        out.push('|');
        for col in 1..=t.shape.n() {
            if t.is_base(row, col) {
                out.push_str(&"#".repeat(w));
            } else if let Some(label) = t.label_at(row, col) {
                let _ = write!(out, "{label:>w$}");
            } else {
                out.push_str(&" ".repeat(w));
            }
            out.push('|');
        }
        out.push('\n');
    }
    out
}

fn svg_group(out: &mut String, t: &ChainTableau, y0: usize) {
    let _ = writeln!(out, r#"  <g transform="translate(0,{y0})">"#);
    for row in 1..=t.shape.m() {
        for col in 1..=t.shape.n() {
            let (x, y) = ((col - 1) * CELL, (row - 1) * CELL);
            let fill = if t.is_base(row, col) { "#c0c0c0" } else { "#ffffff" };
            let _ = writeln!(
                out,
                r##"    <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#000000"/>"##
            );
            if let Some(label) = t.label_at(row, col) {
                let _ = writeln!(
                    out,
                    r#"    <text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-size="12">{label}</text>"#,
                    x + CELL / 2,
                    y + CELL / 2
                );
            }
        }
    }
    out.push_str("  </g>\n");
}

/// Standalone SVG with the tableaux stacked top to bottom.
pub fn render_svg_document(tableaux: &[ChainTableau]) -> String {
    let width = tableaux.iter().map(|t| t.shape.n() * CELL).max().unwrap_or(0);
    let mut offsets = Vec::with_capacity(tableaux.len());
    let mut height = 0;
    for (i, t) in tableaux.iter().enumerate() {
        if i > 0 {
            height += CELL;
        }
        offsets.push(height);
        height += t.shape.m() * CELL;
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (t, y0) in tableaux.iter().zip(offsets) {
        svg_group(&mut out, t, y0);
    }
    out.push_str("</svg>\n");
    out
}
