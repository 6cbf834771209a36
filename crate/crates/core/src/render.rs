//! String-diagram output. Each slice is one column; wires run left to right
//! from the domain to the codomain.

use std::fmt::Write as _;

use crate::error::Result;
use crate::strict::{seq_normal_form, MorD, ObjD, SliceGen};
use crate::terms::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoxKind {
    Generator,
    Pack,
    Unpack,
    UnitIntro,
    UnitElim,
}

impl BoxKind {
    pub fn class(self) -> &'static str {
        match self {
            BoxKind::Generator => "generator",
            BoxKind::Pack => "pack",
            BoxKind::Unpack => "unpack",
            BoxKind::UnitIntro => "unit-intro",
            BoxKind::UnitElim => "unit-elim",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub input: ObjD,
    pub output: ObjD,
    /// Index of the first wire the box touches.
    pub offset: usize,
    pub arity_in: usize,
    pub arity_out: usize,
    pub kind: BoxKind,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLayout {
    pub dom: ObjD,
    pub cod: ObjD,
    pub columns: Vec<Column>,
}

impl DiagramLayout {
    pub fn count(&self, kind: BoxKind) -> usize {
        self.columns.iter().filter(|c| c.kind == kind).count()
    }

    pub fn adapter_count(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| c.kind != BoxKind::Generator)
            .count()
    }
}

pub fn layout(t: &MorD, sig: &Signature) -> Result<DiagramLayout> {
    let nf = seq_normal_form(t, sig)?;
    let columns = nf
        .slices
        .iter()
        .map(|s| {
            let (kind, label) = match &s.gen {
                SliceGen::Lift { mor, .. } => (BoxKind::Generator, mor.to_string()),
                SliceGen::Pack(..) => (BoxKind::Pack, "pack".to_string()),
                SliceGen::Unpack(..) => (BoxKind::Unpack, "unpack".to_string()),
                SliceGen::UnitIntro => (BoxKind::UnitIntro, "unit+".to_string()),
                SliceGen::UnitElim => (BoxKind::UnitElim, "unit-".to_string()),
            };
            Column {
                input: s.dom(),
                output: s.cod(),
                offset: s.offset(),
                arity_in: s.gen.dom_len(),
                arity_out: s.gen.cod_len(),
                kind,
                label,
            }
        })
        .collect();
    Ok(DiagramLayout {
        cod: nf.cod(),
        dom: nf.dom,
        columns,
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn dot_shape(kind: BoxKind) -> &'static str {
    match kind {
        BoxKind::Generator => "box",
        BoxKind::Pack => "triangle",
        BoxKind::Unpack => "invtriangle",
        BoxKind::UnitIntro | BoxKind::UnitElim => "circle",
    }
}

/// Graphviz document with one node per box and one edge per wire segment.
pub fn emit_dot(l: &DiagramLayout) -> String {
    let mut out = String::from("digraph diagram {\n  rankdir=LR;\n");
    let mut src: Vec<String> = Vec::new();
    for (j, w) in l.dom.wires().iter().enumerate() {
        let _ = writeln!(out, "  in{j} [shape=point, label=\"\", xlabel=\"{}\"];", escape(&w.to_string()));
        src.push(format!("in{j}"));
    }
    let mut edges = String::new();
    for (i, c) in l.columns.iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{i} [shape={}, class=\"{}\", label=\"{}\"];",
            dot_shape(c.kind),
            c.kind.class(),
            escape(&c.label)
        );
        for j in c.offset..c.offset + c.arity_in {
            let _ = writeln!(
                edges,
                "  {} -> c{i} [label=\"{}\"];",
                src[j],
                escape(&c.input.wires()[j].to_string())
            );
        }
        src.splice(
            c.offset..c.offset + c.arity_in,
            std::iter::repeat(format!("c{i}")).take(c.arity_out),
        );
    }
    for (j, w) in l.cod.wires().iter().enumerate() {
        let _ = writeln!(out, "  out{j} [shape=point, label=\"\"];");
        let _ = writeln!(edges, "  {} -> out{j} [label=\"{}\"];", src[j], escape(&w.to_string()));
    }
    out.push_str(&edges);
    out.push_str("}\n");
    out
}

const STEP: i64 = 100;
const ROW: i64 = 40;
const TOP: i64 = 30;

fn row(j: usize) -> i64 {
    TOP + ROW * j as i64
}

/// SVG 1.1 on a fixed grid.
pub fn emit_svg(l: &DiagramLayout) -> String {
    let n = l.columns.len() as i64;
    let rows = std::iter::once(l.dom.len())
        .chain(l.columns.iter().map(|c| c.output.len()))
        .max()
        .unwrap_or(0)
        .max(1);
    let width = STEP * (n + 1) + 80;
    let height = row(rows) + 10;
    let x = |k: i64| 40 + STEP * k;
    let mut body = String::new();
    let line = |body: &mut String, x1: i64, y1: i64, x2: i64, y2: i64| {
        let _ = writeln!(body, "  <line class=\"wire\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
    };
    for (j, w) in l.dom.wires().iter().enumerate() {
        let _ = writeln!(body, "  <text class=\"label\" x=\"2\" y=\"{}\">{}</text>", row(j) - 4, escape(&w.to_string()));
    }
    for (i, c) in l.columns.iter().enumerate() {
        let (x0, x1) = (x(i as i64), x(i as i64 + 1));
        let cx = (x0 + x1) / 2;
        let touched = if c.arity_in > 0 { c.arity_in } else { c.arity_out };
        let cy = if touched == 0 {
            row(c.offset)
        } else {
            (row(c.offset) + row(c.offset + touched - 1)) / 2
        };
        for j in 0..c.input.len() {
            if j < c.offset {
                line(&mut body, x0, row(j), x1, row(j));
            } else if j >= c.offset + c.arity_in {
                let k = j - c.arity_in + c.arity_out;
                line(&mut body, x0, row(j), x1, row(k));
            } else {
                line(&mut body, x0, row(j), cx - 14, cy);
            }
        }
        for k in c.offset..c.offset + c.arity_out {
            line(&mut body, cx + 14, cy, x1, row(k));
        }
        let class = c.kind.class();
        match c.kind {
            BoxKind::Generator => {
                let _ = writeln!(
                    body,
                    "  <rect class=\"glyph {class}\" x=\"{}\" y=\"{}\" width=\"28\" height=\"28\"/>",
                    cx - 14,
                    cy - 14
                );
            }
            BoxKind::Pack => {
                let _ = writeln!(
                    body,
                    "  <polygon class=\"glyph {class}\" points=\"{},{} {},{} {},{}\"/>",
                    cx - 14, cy - 14, cx - 14, cy + 14, cx + 14, cy
                );
            }
            BoxKind::Unpack => {
                let _ = writeln!(
                    body,
                    "  <polygon class=\"glyph {class}\" points=\"{},{} {},{} {},{}\"/>",
                    cx + 14, cy - 14, cx + 14, cy + 14, cx - 14, cy
                );
            }
            BoxKind::UnitIntro | BoxKind::UnitElim => {
                let _ = writeln!(body, "  <circle class=\"glyph {class}\" cx=\"{cx}\" cy=\"{cy}\" r=\"8\"/>");
            }
        }
        let _ = writeln!(
            body,
            "  <text class=\"box-label\" x=\"{cx}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            cy - 18,
            escape(&c.label)
        );
    }
    let xe = x(n);
    for (j, w) in l.cod.wires().iter().enumerate() {
        line(&mut body, xe, row(j), xe + 40, row(j));
        let _ = writeln!(
            body,
            "  <text class=\"label\" x=\"{}\" y=\"{}\">{}</text>",
            xe + 4,
            row(j) - 4,
            escape(&w.to_string())
        );
    }
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n\
         <style>.wire {{ stroke: black; }} .glyph {{ fill: white; stroke: black; }} text {{ font: 10px sans-serif; }}</style>\n\
         {body}</svg>\n"
    )
}

/// Number of glyphs of one kind in an emitted document.
pub fn count_glyphs(doc: &str, kind: BoxKind) -> usize {
    let svg = format!("class=\"glyph {}\"", kind.class());
    let dot = format!("class=\"{}\"", kind.class());
    doc.matches(&svg).count() + doc.matches(&dot).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::ObjC;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_base("A").unwrap();
        s.add_base("B").unwrap();
        s
    }

    #[test]
    fn identity_has_no_columns() {
        let l = layout(&MorD::id(vec![ObjC::base("A")]), &sig()).unwrap();
        assert!(l.columns.is_empty());
        assert_eq!(l.dom.len(), 1);
        assert!(emit_svg(&l).contains("<svg"));
        assert!(emit_dot(&l).contains("in0 -> out0"));
    }

    #[test]
    fn pack_is_one_column() {
        let t = MorD::Pack(ObjC::base("A"), ObjC::base("B"));
        let l = layout(&t, &sig()).unwrap();
        assert_eq!(l.columns.len(), 1);
        assert_eq!((l.columns[0].input.len(), l.columns[0].output.len()), (2, 1));
        for doc in [emit_dot(&l), emit_svg(&l)] {
            assert_eq!(count_glyphs(&doc, BoxKind::Pack), 1);
            assert_eq!(count_glyphs(&doc, BoxKind::Unpack), 0);
        }
    }

    #[test]
    fn empty_diagram_is_a_document() {
        let l = layout(&MorD::Id(ObjD::empty()), &sig()).unwrap();
        let svg = emit_svg(&l);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(emit_dot(&l), "digraph diagram {\n  rankdir=LR;\n}\n");
    }

    #[test]
    fn emission_is_deterministic() {
        let t = MorD::comp(
            MorD::tensor(MorD::UnitIntro, MorD::Pack(ObjC::base("A"), ObjC::base("B"))),
            MorD::tensor(MorD::UnitElim, MorD::id(vec![ObjC::tensor(ObjC::base("A"), ObjC::base("B"))])),
        );
        let l = layout(&t, &sig()).unwrap();
        assert_eq!(emit_svg(&l), emit_svg(&l.clone()));
        assert_eq!(emit_dot(&l), emit_dot(&l.clone()));
        assert_eq!(count_glyphs(&emit_svg(&l), BoxKind::UnitIntro), 1);
        assert_eq!(count_glyphs(&emit_dot(&l), BoxKind::UnitElim), 1);
    }
}
