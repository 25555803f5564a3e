//! DOT and egg-box renderings. Every listing is ordered by id.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::category::SubobjectCategory;
use crate::icc::Icc;
use crate::semigroup::{green_classes, starred_relation, Elem, FiniteSemigroup, Side};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as nodes, every morphism (identities included) as an edge.
/// Inclusions are drawn dashed, isomorphisms bold.
pub fn category_dot(cat: &SubobjectCategory, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for c in cat.objects() {
        writeln!(out, "  o{c} [label={}];", quote(cat.object_name(c))).unwrap();
    }
    for f in cat.morphisms() {
        let flags = cat.flags(f);
        let style = if flags.inclusion {
            "dashed"
        } else if flags.isomorphism {
            "bold"
        } else {
            "solid"
        };
        writeln!(out, "  o{} -> o{} [label={}, style={style}];", cat.dom(f), cat.cod(f), quote(cat.morphism_name(f))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Objects of 𝓘(Ω) as nodes, its morphisms as edges. The covering pairs of ω
/// on objects are drawn as dotted, undirected edges.
pub fn icc_dot(icc: &Icc, cat: &SubobjectCategory, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    for (i, &(c, d)) in icc.objects.iter().enumerate() {
        writeln!(out, "  e{i} [label={}];", quote(&format!("({}, {d})", cat.object_name(c)))).unwrap();
    }
    for m in &icc.morphisms {
        writeln!(out, "  e{} -> e{} [label={}];", m.dom, m.cod, quote(cat.morphism_name(m.u))).unwrap();
    }
    let k = icc.num_objects();
    for e in 0..k {
        for f in 0..k {
            let covers = e != f
                && icc.omega(e, f)
                && !(0..k).any(|g| g != e && g != f && icc.omega(e, g) && icc.omega(g, f));
            if covers {
                writeln!(out, "  e{e} -> e{f} [style=dotted, arrowhead=none];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// One 𝒟-class: rows are ℛ-classes, columns ℒ-classes, cells ℋ-classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DClassBox {
    pub cells: Vec<Vec<Vec<Elem>>>,
    pub idempotents: Vec<Elem>,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eggbox {
    pub d_classes: Vec<DClassBox>,
    /// Least member of each element's ℒ*-class.
    pub l_star: Vec<Elem>,
    /// Least member of each element's ℛ*-class.
    pub r_star: Vec<Elem>,
    pub names: Vec<String>,
}

pub fn eggbox(s: &FiniteSemigroup) -> Eggbox {
    let g = green_classes(s);
    let d_classes = g
        .d
        .classes
        .iter()
        .map(|dc| {
            let mut rows: Vec<Elem> = dc.iter().map(|&a| g.r.class_of[a]).collect();
            let mut cols: Vec<Elem> = dc.iter().map(|&a| g.l.class_of[a]).collect();
            rows.sort_unstable();
            rows.dedup();
            cols.sort_unstable();
            cols.dedup();
            let cells = rows
                .iter()
                .map(|&r| {
                    cols.iter()
                        .map(|&l| dc.iter().copied().filter(|&a| g.r.class_of[a] == r && g.l.class_of[a] == l).collect())
                        .collect()
                })
                .collect();
            let idempotents: Vec<Elem> = dc.iter().copied().filter(|&a| s.is_idempotent(a)).collect();
            DClassBox { cells, regular: !idempotents.is_empty(), idempotents }
        })
        .collect();
    Eggbox {
        d_classes,
        l_star: starred_relation(s, Side::Left).class_of,
        r_star: starred_relation(s, Side::Right).class_of,
        names: s.elements().map(|a| s.name(a)).collect(),
    }
}

impl Eggbox {
    /// Plain-text grid; idempotents are starred, `[L*, R*]` classes follow each name.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, dc) in self.d_classes.iter().enumerate() {
            writeln!(out, "D-class {i}{}", if dc.regular { "" } else { " (non-regular)" }).unwrap();
            let cell = |h: &[Elem]| {
                h.iter()
                    .map(|&a| {
                        let mark = if dc.idempotents.contains(&a) { "*" } else { "" };
                        format!("{}{mark}[{},{}]", self.names[a], self.names[self.l_star[a]], self.names[self.r_star[a]])
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let grid: Vec<Vec<String>> = dc.cells.iter().map(|row| row.iter().map(|h| cell(h)).collect()).collect();
            let width = grid.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(0);
            for row in &grid {
                let line: Vec<String> = row.iter().map(|c| format!("{c:<width$}")).collect();
                writeln!(out, "| {} |", line.join(" | ")).unwrap();
            }
        }
        out
    }

    /// One HTML-table node per 𝒟-class.
    pub fn render_dot(&self, title: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(title)).unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (i, dc) in self.d_classes.iter().enumerate() {
            let mut label = String::from("<TABLE BORDER=\"0\" CELLBORDER=\"1\" CELLSPACING=\"0\">");
            for row in &dc.cells {
                label.push_str("<TR>");
                for h in row {
                    let text: Vec<String> = h
                        .iter()
                        .map(|&a| {
                            let n = html_escape(&self.names[a]);
                            if dc.idempotents.contains(&a) {
                                format!("{n}*")
                            } else {
                                n
                            }
                        })
                        .collect();
                    label.push_str(&format!("<TD>{}</TD>", text.join(" ")));
                }
                label.push_str("</TR>");
            }
            label.push_str("</TABLE>");
            writeln!(out, "  d{i} [label=<{label}>];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::build_ideal_category;
    use crate::preset::Preset;

    #[test]
    fn b2_eggbox() {
        let e = eggbox(&Preset::BrandtB2.build());
        assert_eq!(e.d_classes.len(), 2);
        assert_eq!(e.d_classes[0].cells, vec![vec![vec![0], vec![1]], vec![vec![2], vec![3]]]);
        assert_eq!(e.d_classes[1].cells, vec![vec![vec![4]]]);
        assert!(e.render_text().contains("e11*"));
    }

    #[test]
    fn sl2_category_dot_counts() {
        let cat = build_ideal_category(&Preset::SemilatticeChain(2).build(), Side::Left);
        let dot = category_dot(&cat, "L(SL2)");
        assert_eq!(dot.matches(" [label=").count() - dot.matches("->").count(), 2);
        assert_eq!(dot.matches("->").count(), 5);
    }
}
