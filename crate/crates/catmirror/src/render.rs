//! Deterministic SVG chord diagrams (polygon in blue, odd tree in green,
//! even tree in red, vertex 1 at the bottom, labels counterclockwise) and
//! DOT emitters for ternary trees and chain-decomposed ditrees. Output is
//! hand-emitted text, byte-stable for identical input and options.

use crate::error::{Error, Result};
use crate::model::{NctLabeledTree, Pcdd, QuadDissection, TernaryTree};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub labels: bool,
    pub size: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            labels: true,
            size: 400.0,
        }
    }
}

struct Canvas {
    body: String,
    opts: RenderOptions,
    count: u32,
}

impl Canvas {
    fn new(opts: RenderOptions, count: u32) -> Self {
        Canvas {
            body: String::new(),
            opts,
            count,
        }
    }

    /// Position of label `v` (1-based) on the circle, vertex 1 at the
    /// bottom, labels counterclockwise.
    fn point(&self, v: u32) -> (f64, f64) {
        let c = self.opts.size / 2.0;
        let r = self.opts.size * 0.4;
        let ang = -std::f64::consts::FRAC_PI_2
            + (v as f64 - 1.0) * std::f64::consts::TAU / self.count as f64;
        (c + r * ang.cos(), c - r * ang.sin())
    }

    fn label_point(&self, v: u32) -> (f64, f64) {
        let c = self.opts.size / 2.0;
        let (x, y) = self.point(v);
        let (dx, dy) = (x - c, y - c);
        let len = (dx * dx + dy * dy).sqrt();
        (x + dx / len * 14.0, y + dy / len * 14.0)
    }

    fn line(&mut self, a: u32, b: u32, color: &str) {
        let (x1, y1) = self.point(a);
        let (x2, y2) = self.point(b);
        writeln!(
            self.body,
            r#"<line x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}" stroke="{color}" stroke-width="1.5"/>"#
        )
        .unwrap();
    }

    fn dots_and_labels(&mut self) {
        for v in 1..=self.count {
            let (x, y) = self.point(v);
            writeln!(
                self.body,
                r#"<circle cx="{x:.4}" cy="{y:.4}" r="3" fill="black"/>"#
            )
            .unwrap();
        }
        if self.opts.labels {
            for v in 1..=self.count {
                let (x, y) = self.label_point(v);
                writeln!(
                    self.body,
                    r#"<text x="{x:.4}" y="{y:.4}" font-size="11" text-anchor="middle" dominant-baseline="middle">{v}</text>"#
                )
                .unwrap();
            }
        }
    }

    fn finish(self) -> String {
        let s = self.opts.size;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s:.0} {s:.0}\" width=\"{s:.0}\" height=\"{s:.0}\">\n{}</svg>\n",
            self.body
        )
    }
}

/// A tree alone, as green chords on its circle.
pub fn render_nct_svg(t: &NctLabeledTree, opts: RenderOptions) -> String {
    let mut canvas = Canvas::new(opts, t.n());
    for &(a, b) in t.edges() {
        canvas.line(a, b, "green");
    }
    canvas.dots_and_labels();
    canvas.finish()
}

/// A dissection alone: the polygon and its diagonals in blue.
pub fn render_qd_svg(q: &QuadDissection, opts: RenderOptions) -> String {
    let mut canvas = Canvas::new(opts, q.polygon_size());
    let two_n = q.polygon_size();
    for v in 1..=two_n {
        canvas.line(v, v % two_n + 1, "blue");
    }
    for &(a, b) in q.diagonals() {
        canvas.line(a, b, "blue");
    }
    canvas.dots_and_labels();
    canvas.finish()
}

/// Overlay of a dissection (blue) with a tree on the odd vertices (green,
/// tree vertex `i` at polygon vertex `2i-1`) and one on the even vertices
/// (red, at `2i`).
pub fn render_overlay_svg(
    q: &QuadDissection,
    odd: &NctLabeledTree,
    even: &NctLabeledTree,
    opts: RenderOptions,
) -> Result<String> {
    if odd.n() != q.n() || even.n() != q.n() {
        return Err(Error::Argument(format!(
            "overlay sizes differ: dissection {}, trees {} and {}",
            q.n(),
            odd.n(),
            even.n()
        )));
    }
    let mut canvas = Canvas::new(opts, q.polygon_size());
    let two_n = q.polygon_size();
    for v in 1..=two_n {
        canvas.line(v, v % two_n + 1, "blue");
    }
    for &(a, b) in q.diagonals() {
        canvas.line(a, b, "blue");
    }
    for &(a, b) in odd.edges() {
        canvas.line(2 * a - 1, 2 * b - 1, "green");
    }
    for &(a, b) in even.edges() {
        canvas.line(2 * a, 2 * b, "red");
    }
    canvas.dots_and_labels();
    Ok(canvas.finish())
}

/// A ternary tree as a digraph with children in left/middle/right order.
pub fn render_ternary_dot(t: &TernaryTree) -> String {
    let mut out = String::from("digraph ternary {\n  ordering=out;\n  node [shape=circle];\n");
    let mut next = 0u32;
    emit_ternary(t, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn emit_ternary(t: &TernaryTree, next: &mut u32, out: &mut String) -> u32 {
    let id = *next;
    *next += 1;
    match t {
        TernaryTree::Leaf => {
            writeln!(out, "  n{id} [label=\"*\" shape=plaintext];").unwrap();
        }
        TernaryTree::Node(l, m, r) => {
            writeln!(out, "  n{id} [label=\"\"];").unwrap();
            for child in [l, m, r] {
                let cid = emit_ternary(child, next, out);
                writeln!(out, "  n{id} -> n{cid};").unwrap();
            }
        }
    }
    id
}

const CHAIN_COLORS: [&str; 8] = [
    "red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta",
];

/// A chain-decomposed ditree: darts as directed edges colored by their
/// chain, the flag chain drawn thick, trivial chains listed in the graph
/// label.
pub fn render_pcdd_dot(p: &Pcdd) -> String {
    let mut out = String::from("digraph pcdd {\n  rankdir=BT;\n  node [shape=circle];\n");
    let flag_text: Vec<String> = p.flag_chain().iter().map(|v| v.to_string()).collect();
    writeln!(
        out,
        "  label=\"flag = chain {} [{}]\";",
        p.flag(),
        flag_text.join(" ")
    )
    .unwrap();
    for v in 0..p.m() {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for (ci, chain) in p.chains().iter().enumerate() {
        let color = CHAIN_COLORS[ci % CHAIN_COLORS.len()];
        if chain.len() == 1 {
            writeln!(out, "  // chain {ci} is trivial at {}", chain[0]).unwrap();
        }
        let width = if ci == p.flag() { 2.5 } else { 1.0 };
        for w in chain.windows(2) {
            writeln!(
                out,
                "  v{} -> v{} [color={color} penwidth={width}];",
                w[0], w[1]
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
