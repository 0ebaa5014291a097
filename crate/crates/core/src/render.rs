//! Line-graph renderings of landscapes: letters as vertices on their height
//! row, anchors as edge labels.

use std::fmt::Write;

use crate::landscape::Landscape;

/// One text row per height level, highest first.
pub fn ascii(l: &Landscape) -> String {
    let top = l.height();
    let mut cols: Vec<(u32, String)> = Vec::new();
    for (i, g) in l.letters().iter().enumerate() {
        if i > 0 {
            let (h0, h1) = (l.letters()[i - 1].height(), g.height());
            let a = &l.anchors()[i - 1];
            let label = if h1 > h0 { format!("/{a}") } else { format!("{a}\\") };
            cols.push((h0.min(h1), label));
        }
        cols.push((g.height(), g.text().to_string()));
    }
    let width = top.to_string().len();
    let mut out = String::new();
    for row in (0..=top).rev() {
        let mut line = format!("{row:>width$} |");
        for (h, text) in &cols {
            line.push(' ');
            if *h == row {
                line.push_str(text);
            } else {
                line.extend(std::iter::repeat_n(' ', text.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const GRID: u32 = 40;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('\'', "&#39;")
}

/// SVG 1.1 on a fixed 40px grid.
pub fn svg(l: &Landscape) -> String {
    let top = l.height();
    let n = l.letters().len() as u32;
    let (w, h) = (GRID * (2 * n + 1), GRID * (top + 3));
    let x = |i: usize| GRID * (2 * i as u32 + 1);
    let y = |ht: u32| GRID * (top - ht + 2);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r##"<g stroke="#bbb" stroke-dasharray="4 4">"##);
    for ht in 0..=top {
        let _ = writeln!(s, r#"<line x1="0" y1="{0}" x2="{w}" y2="{0}"/>"#, y(ht));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g font-family="monospace" font-size="10" text-anchor="middle">"#);
    for ht in 0..=top {
        let _ = writeln!(s, r#"<text x="8" y="{}" text-anchor="start">{ht}</text>"#, y(ht) - 4);
    }
    for (i, g) in l.letters().iter().enumerate().skip(1) {
        let prev = &l.letters()[i - 1];
        let (x0, y0, x1, y1) = (x(i - 1), y(prev.height()), x(i), y(g.height()));
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text class="anchor" x="{}" y="{}">{}</text>"#,
            (x0 + x1) / 2,
            (y0 + y1) / 2 - 4,
            esc(&l.anchors()[i - 1].to_string())
        );
    }
    for (i, g) in l.letters().iter().enumerate() {
        let (cx, cy) = (x(i), y(g.height()));
        let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>"#);
        let _ = writeln!(s, r#"<text class="letter" x="{cx}" y="{}">{}</text>"#, cy + 16, esc(g.text()));
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

pub fn json(l: &Landscape) -> String {
    serde_json::to_string_pretty(&l.to_json()).unwrap()
}
