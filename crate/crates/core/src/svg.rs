//! SVG drawings of two-dimensional patterns and elements.
//!
//! Axis 1 runs left to right and axis 2 top to bottom, so the block
//! `(e,0)` is the upper half of the square.

use std::fmt::Write as _;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::word::Word;

/// Side of one square in SVG user units.
pub const SQUARE: f64 = 256.0;
const MARGIN: f64 = 16.0;
const GAP: f64 = 48.0;

/// `(start, length)` of a word's dyadic interval inside `[0, 1)`.
pub fn interval(w: &Word) -> (f64, f64) {
    let mut start = 0.0;
    let mut len = 1.0;
    for &b in w.bits() {
        len /= 2.0;
        if b == 1 {
            start += len;
        }
    }
    (start, len)
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn draw_square(out: &mut String, p: &Pattern, labels: &[usize], offset_x: f64) {
    let _ = writeln!(
        out,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        num(offset_x),
        num(MARGIN),
        num(SQUARE),
        num(SQUARE)
    );
    for (block, label) in p.blocks().iter().zip(labels) {
        let (x, w) = interval(block.word(0));
        let (y, h) = interval(block.word(1));
        let (px, py, pw, ph) = (offset_x + x * SQUARE, MARGIN + y * SQUARE, w * SQUARE, h * SQUARE);
        let _ = writeln!(
            out,
            r#"  <rect class="block" x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="1"/>"#,
            num(px),
            num(py),
            num(pw),
            num(ph)
        );
        let font = (pw.min(ph) * 0.4).clamp(4.0, 24.0);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="{}" text-anchor="middle" dominant-baseline="central">{label}</text>"#,
            num(px + pw / 2.0),
            num(py + ph / 2.0),
            num(font)
        );
    }
}

fn document(width: f64, body: &str) -> String {
    let height = SQUARE + 2.0 * MARGIN;
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         {body}</svg>\n",
        w = num(width),
        h = num(height),
    )
}

/// One square with every block outlined and labeled by its label.
pub fn render_pattern(p: &Pattern) -> Result<String> {
    if p.arity() != 2 {
        return Err(Error::UnsupportedArity(p.arity()));
    }
    let labels: Vec<usize> = (0..p.len()).collect();
    let mut body = String::new();
    draw_square(&mut body, p, &labels, MARGIN);
    Ok(document(SQUARE + 2.0 * MARGIN, &body))
}

/// Domain and range side by side; range block `sigma(i)` carries label `i`.
pub fn render_element(e: &Element) -> Result<String> {
    if e.arity() != 2 {
        return Err(Error::UnsupportedArity(e.arity()));
    }
    let domain_labels: Vec<usize> = (0..e.len()).collect();
    let mut range_labels = vec![0; e.len()];
    for (i, &j) in e.sigma().iter().enumerate() {
        range_labels[j] = i;
    }
    let mut body = String::new();
    draw_square(&mut body, e.domain(), &domain_labels, MARGIN);
    let arrow_y = MARGIN + SQUARE / 2.0;
    let _ = writeln!(
        body,
        r#"  <path d="M {} {} L {} {}" stroke="black" stroke-width="2" fill="none"/>"#,
        num(MARGIN + SQUARE + 8.0),
        num(arrow_y),
        num(MARGIN + SQUARE + GAP - 8.0),
        num(arrow_y)
    );
    draw_square(&mut body, e.range(), &range_labels, MARGIN + SQUARE + GAP);
    Ok(document(2.0 * SQUARE + GAP + 2.0 * MARGIN, &body))
}
