//! The layered diagram of `π_ω = ψ_ω ∗ χ`: one column per elementary block
//! `s_i` (in word order) followed by `ℓ` torus columns.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::WeylDecomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Identity,
    /// `√(I−q^{2N+2}) S` at level `i` of an `s_i` block.
    MinusHoriz,
    /// `S* √(I−q^{2N+2})` at level `i+1` of an `s_i` block.
    PlusHoriz,
    /// `−q^{N+1}`, level `i → i+1`.
    UpDiag,
    /// `q^N`, level `i+1 → i`.
    DownDiag,
    /// `S*` on `ℓ²(ℤ)`, level `r` of torus column `r`.
    PlusZ,
    /// `S` on `ℓ²(ℤ)`, level `r+1` of torus column `r`.
    MinusZ,
}

impl EdgeKind {
    pub fn is_diagonal(self) -> bool {
        matches!(self, EdgeKind::UpDiag | EdgeKind::DownDiag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LabelSign {
    Plus,
    Minus,
}

/// A labelled horizontal arrow of the block `s_generator` in string `string`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub string: usize,
    pub generator: usize,
    pub sign: LabelSign,
}

impl EdgeLabel {
    pub fn both(string: usize, generator: usize) -> [EdgeLabel; 2] {
        [LabelSign::Plus, LabelSign::Minus].map(|sign| EdgeLabel { string, generator, sign })
    }

    /// Both labels of every block `s_i`, `i ∈ generators`, in every string.
    pub fn all_for_generators(d: &WeylDecomposition, generators: &BTreeSet<usize>) -> BTreeSet<EdgeLabel> {
        generators.iter().flat_map(|&i| d.j_set(i).into_iter().flat_map(move |k| EdgeLabel::both(k, i))).collect()
    }

    /// Every labelled horizontal of the diagram.
    pub fn all(d: &WeylDecomposition) -> BTreeSet<EdgeLabel> {
        Self::all_for_generators(d, &(1..=d.ell()).collect())
    }

    /// Both labels of every block in strings `k > r`, plus blocks `i > n` in string `r`.
    pub fn above(d: &WeylDecomposition, r: usize, n: usize) -> BTreeSet<EdgeLabel> {
        let mut out = BTreeSet::new();
        for k in r..=d.t() {
            for &i in d.string(k) {
                if k > r || i > n {
                    out.extend(EdgeLabel::both(k, i));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    /// Elementary block `s_generator` of string `string`, acting on coordinate slot `slot`.
    Block { string: usize, generator: usize, slot: usize },
    /// Torus column `index` acting on `(0, index)`.
    Torus { index: usize, slot: usize },
}

impl Column {
    pub fn slot(&self) -> usize {
        match *self {
            Column::Block { slot, .. } | Column::Torus { slot, .. } => slot,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    decomposition: WeylDecomposition,
    columns: Vec<Column>,
    removed: BTreeSet<EdgeLabel>,
}

pub fn build_diagram(d: &WeylDecomposition, removed: &BTreeSet<EdgeLabel>) -> Result<Diagram> {
    for label in removed {
        if !d.contains(label.string, label.generator) {
            return Err(Error::UnknownEdgeLabel { string: label.string, generator: label.generator });
        }
    }
    let sys = d.coords();
    let mut columns = Vec::with_capacity(d.length() + d.ell());
    for k in (1..=d.t()).rev() {
        for &i in d.string(k) {
            let slot = sys.slot(crate::lattice::Coord::new(k, i)).expect("block coordinate");
            columns.push(Column::Block { string: k, generator: i, slot });
        }
    }
    for r in 1..=d.ell() {
        let slot = sys.slot(crate::lattice::Coord::torus(r)).expect("torus coordinate");
        columns.push(Column::Torus { index: r, slot });
    }
    Ok(Diagram { decomposition: d.clone(), columns, removed: removed.clone() })
}

impl Diagram {
    pub fn decomposition(&self) -> &WeylDecomposition {
        &self.decomposition
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn removed(&self) -> &BTreeSet<EdgeLabel> {
        &self.removed
    }

    pub fn levels(&self) -> usize {
        self.decomposition.ell() + 1
    }

    pub fn block_count(&self) -> usize {
        self.columns.iter().filter(|c| matches!(c, Column::Block { .. })).count()
    }

    pub fn torus_count(&self) -> usize {
        self.columns.len() - self.block_count()
    }

    fn has_label(&self, string: usize, generator: usize, sign: LabelSign) -> bool {
        !self.removed.contains(&EdgeLabel { string, generator, sign })
    }

    /// Outgoing edges at `level` of column `col`, horizontals first.
    pub fn edges_from(&self, col: usize, level: usize) -> Vec<(EdgeKind, usize)> {
        match self.columns[col] {
            Column::Block { string, generator: i, .. } => {
                let mut out = Vec::with_capacity(2);
                if level == i {
                    if self.has_label(string, i, LabelSign::Minus) {
                        out.push((EdgeKind::MinusHoriz, i));
                    }
                    out.push((EdgeKind::UpDiag, i + 1));
                } else if level == i + 1 {
                    if self.has_label(string, i, LabelSign::Plus) {
                        out.push((EdgeKind::PlusHoriz, i + 1));
                    }
                    out.push((EdgeKind::DownDiag, i));
                } else {
                    out.push((EdgeKind::Identity, level));
                }
                out
            }
            Column::Torus { index: r, .. } => {
                let kind = if level == r {
                    EdgeKind::PlusZ
                } else if level == r + 1 {
                    EdgeKind::MinusZ
                } else {
                    EdgeKind::Identity
                };
                vec![(kind, level)]
            }
        }
    }

    /// Number of labelled horizontals still present.
    pub fn labelled_horizontals(&self) -> usize {
        2 * self.block_count() - self.removed.len()
    }

    /// ASCII picture: one row per level (top is `ℓ+1`), `o` nodes, `---`
    /// unlabelled arrows, `(+)`/`(-)` labelled ones, blanks for removed
    /// labels, and ` X ` for the crossing pair `/` (up) and `\` (down).
    /// A `|` separates the `ℕ` blocks from the torus columns.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let levels = self.levels();
        for level in (1..=levels).rev() {
            let _ = write!(out, "{level:>3} ");
            for (c, col) in self.columns.iter().enumerate() {
                if matches!(col, Column::Torus { index: 1, .. }) {
                    out.push('|');
                }
                out.push('o');
                out.push_str(&self.horizontal_glyph(c, level));
            }
            out.push_str("o\n");
            if level > 1 {
                out.push_str("    ");
                for col in &self.columns {
                    if matches!(col, Column::Torus { index: 1, .. }) {
                        out.push('|');
                    }
                    out.push(' ');
                    match *col {
                        Column::Block { generator, .. } if generator + 1 == level => out.push_str(" X "),
                        _ => out.push_str("   "),
                    }
                }
                out.push('\n');
            }
        }
        out.push_str("    ");
        for col in &self.columns {
            if matches!(col, Column::Torus { index: 1, .. }) {
                out.push('|');
            }
            match *col {
                Column::Block { generator, .. } => {
                    let _ = write!(out, "{:<4}", format!("s{generator}"));
                }
                Column::Torus { index, .. } => {
                    let _ = write!(out, "{:<4}", format!("z{index}"));
                }
            }
        }
        out.push('\n');
        out
    }

    fn horizontal_glyph(&self, col: usize, level: usize) -> String {
        let edges = self.edges_from(col, level);
        let horizontal = edges.iter().find(|(_, to)| *to == level).map(|(k, _)| *k);
        match horizontal {
            Some(EdgeKind::Identity) => "---",
            Some(EdgeKind::PlusHoriz) | Some(EdgeKind::PlusZ) => "(+)",
            Some(EdgeKind::MinusHoriz) | Some(EdgeKind::MinusZ) => "(-)",
            _ => "   ",
        }
        .to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(text: &str, ell: usize) -> WeylDecomposition {
        WeylDecomposition::from_word_text(text, ell).unwrap()
    }

    #[test]
    fn smallest_diagram() {
        let d = omega("s1", 1);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        assert_eq!(g.block_count(), 1);
        assert_eq!(g.torus_count(), 1);
        assert_eq!(g.labelled_horizontals(), 2);
        assert_eq!(g.edges_from(1, 1), vec![(EdgeKind::PlusZ, 1)]);
        assert_eq!(g.edges_from(1, 2), vec![(EdgeKind::MinusZ, 2)]);
    }

    #[test]
    fn rank_four_layout() {
        let d = omega("(s2 s3 s4)(s3)(s2)(s1)", 4);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        assert_eq!(g.block_count(), 6);
        assert_eq!(g.torus_count(), 4);
    }

    #[test]
    fn removing_singleton_labels() {
        let d = omega("(s2 s3 s4)(s3)(s2)(s1)", 4);
        let singles = d.singleton_generators();
        assert_eq!(singles, [1, 4].into_iter().collect());
        let removed = EdgeLabel::all_for_generators(&d, &singles);
        let expected: BTreeSet<_> = EdgeLabel::both(1, 1).into_iter().chain(EdgeLabel::both(4, 4)).collect();
        assert_eq!(removed, expected);
        let g = build_diagram(&d, &removed).unwrap();
        assert_eq!(g.labelled_horizontals(), 8);
        // s4 of string 4 is the third column; level 5 can only go down
        assert_eq!(g.edges_from(2, 5), vec![(EdgeKind::DownDiag, 4)]);
    }

    #[test]
    fn unknown_label_is_rejected() {
        let d = omega("s1", 1);
        let removed = EdgeLabel::both(2, 1).into_iter().collect();
        assert_eq!(build_diagram(&d, &removed).unwrap_err(), Error::UnknownEdgeLabel { string: 2, generator: 1 });
    }

    #[test]
    fn render_s1() {
        let d = omega("s1", 1);
        let g = build_diagram(&d, &BTreeSet::new()).unwrap();
        let expected = "  2 o(+)|o(-)o\n      X |    \n  1 o(-)|o(+)o\n    s1  |z1  \n";
        assert_eq!(g.render(), expected);
    }
}
