//! SVG and ASCII pictures of diagrams and morphisms.

use std::fmt::Write;

use tlcore::diagram::{Diagram, Node};
use tlcore::morphism::Morphism;

const GAP: f64 = 30.0;
const WIDTH: f64 = 120.0;
const MARGIN: f64 = 20.0;
const LABEL: f64 = 24.0;

fn node_y(j: usize) -> f64 {
    MARGIN + LABEL + GAP * j as f64
}

/// One diagram as SVG path data inside a box whose left column sits at `x0`.
fn diagram_svg(out: &mut String, d: &Diagram, x0: f64) {
    let x1 = x0 + WIDTH;
    let rows = d.dst().max(d.src()).max(1);
    let h = GAP * (rows - 1) as f64;
    let top = node_y(0) - GAP / 2.0;
    let _ = writeln!(
        out,
        r##"  <rect x="{x0}" y="{top}" width="{WIDTH}" height="{}" fill="none" stroke="#bbb"/>"##,
        h + GAP
    );
    let xy = |n: Node| match n {
        Node::Left(j) => (x0, node_y(j)),
        Node::Right(j) => (x1, node_y(j)),
    };
    let mut seen = vec![false; d.size()];
    for p in 0..d.size() {
        let a = d.node(p);
        match d.partner(a) {
            None => {
                let (x, y) = xy(a);
                let _ = writeln!(out, r##"  <circle cx="{x}" cy="{y}" r="3" fill="white" stroke="black"/>"##);
            }
            Some(b) => {
                let q = d.pos(b);
                if seen[q] {
                    continue;
                }
                seen[p] = true;
                seen[q] = true;
                let ((xa, ya), (xb, yb)) = (xy(a), xy(b));
                let path = match (a, b) {
                    (Node::Left(_), Node::Right(_)) | (Node::Right(_), Node::Left(_)) => {
                        let m = (xa + xb) / 2.0;
                        format!("M{xa},{ya} C{m},{ya} {m},{yb} {xb},{yb}")
                    }
                    _ => {
                        let bulge = (yb - ya).abs() * 0.6 + 8.0;
                        let xc = if xa == x0 { xa + bulge } else { xa - bulge };
                        format!("M{xa},{ya} C{xc},{ya} {xc},{yb} {xb},{yb}")
                    }
                };
                let _ = writeln!(out, r##"  <path d="{path}" fill="none" stroke="black" stroke-width="2"/>"##);
            }
        }
    }
    for j in 0..d.dst() {
        let _ = writeln!(out, r##"  <circle cx="{x0}" cy="{}" r="1.5" fill="black"/>"##, node_y(j));
    }
    for j in 0..d.src() {
        let _ = writeln!(out, r##"  <circle cx="{x1}" cy="{}" r="1.5" fill="black"/>"##, node_y(j));
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A self-contained SVG document with one panel per term.
pub fn svg(f: &Morphism) -> String {
    let terms: Vec<(&Diagram, String)> = f.terms().map(|(d, c)| (d, c.to_text())).collect();
    let rows = f.dst().max(f.src()).max(1);
    let panel = WIDTH + 2.0 * MARGIN + 40.0;
    let w = MARGIN * 2.0 + panel * terms.len().max(1) as f64;
    let h = node_y(rows - 1) + GAP / 2.0 + MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="11">"#
    );
    if terms.is_empty() {
        let _ = writeln!(out, r#"  <text x="{MARGIN}" y="{}">0</text>"#, MARGIN + 12.0);
    }
    for (i, (d, c)) in terms.iter().enumerate() {
        let x0 = MARGIN + 20.0 + panel * i as f64;
        let sign = if i > 0 { "+ " } else { "" };
        let _ = writeln!(out, r#"  <text x="{}" y="{}">{}({})</text>"#, x0 - 20.0, MARGIN + 8.0, sign, escape(c));
        diagram_svg(&mut out, d, x0);
    }
    out.push_str("</svg>\n");
    out
}

fn describe(d: &Diagram, n: Node) -> String {
    let name = |n: Node| match n {
        Node::Left(j) => format!("L{}", j + 1),
        Node::Right(j) => format!("R{}", j + 1),
    };
    match d.partner(n) {
        None => format!("{} .", name(n)),
        Some(m) => format!("{} - {}", name(n), name(m)),
    }
}

/// Rows of the two columns with each node's partner; `.` marks a vacancy.
pub fn ascii(f: &Morphism) -> String {
    let mut out = format!("{} <- {}{}\n", f.dst(), f.src(), if f.is_dilute() { " (dilute)" } else { "" });
    if f.is_zero() {
        out.push_str("0\n");
        return out;
    }
    for (i, (d, c)) in f.terms().enumerate() {
        let _ = writeln!(out, "{}({}) * {}", if i > 0 { "+ " } else { "" }, c.to_text(), d.to_text());
        let rows = d.dst().max(d.src());
        for j in 0..rows {
            let l = if j < d.dst() { describe(d, Node::Left(j)) } else { String::new() };
            let r = if j < d.src() { describe(d, Node::Right(j)) } else { String::new() };
            let _ = writeln!(out, "    {:<12}| {}", l, r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_has_two_panels() {
        let t = Morphism::t(1, 2).unwrap();
        let s = svg(&t);
        assert_eq!(s.matches("<rect").count(), 2);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        let a = ascii(&t);
        assert!(a.contains("L1 - L2") && a.contains("L1 - R1"));
    }

    #[test]
    fn vacancies_drawn_hollow() {
        let d = Morphism::identity(1, true);
        assert!(svg(&d).contains(r#"fill="white""#));
        assert!(ascii(&d).contains("L1 ."));
    }
}
