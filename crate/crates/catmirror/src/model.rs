//! The four combinatorial families as validated value types, plus the
//! geometric predicates (chord crossing, cell extraction) and the dihedral
//! group acting on polygon labels.
//!
//! Conventions: polygon vertices are labeled `1..=2n` counterclockwise with
//! vertex 1 at the bottom; tree vertices are labeled `1..=n` the same way.
//! All predicates are purely combinatorial, coordinates only exist in the
//! renderer.

use crate::error::{Error, Result};

/// Outcome of validating a raw structure: empty means every invariant holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self, kind: &'static str) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Invalid {
                kind,
                violations: self.violations,
            })
        }
    }
}

/// True iff the chords `{a,b}` and `{c,d}` of a `cycle_len`-gon cross, i.e.
/// exactly one of `c`, `d` lies strictly between `a` and `b` in cyclic order.
pub fn chords_cross(a: u32, b: u32, c: u32, d: u32, cycle_len: u32) -> Result<bool> {
    for v in [a, b, c, d] {
        if v < 1 || v > cycle_len {
            return Err(Error::Argument(format!(
                "label {v} out of range 1..={cycle_len}"
            )));
        }
    }
    if a == b || c == d || a == c || a == d || b == c || b == d {
        return Err(Error::Argument(format!(
            "chords {a}-{b} and {c}-{d} share an endpoint"
        )));
    }
    Ok(strictly_between(a, b, c, cycle_len) != strictly_between(a, b, d, cycle_len))
}

/// True iff walking counterclockwise from `a` to `b` passes `x` strictly.
fn strictly_between(a: u32, b: u32, x: u32, cycle_len: u32) -> bool {
    let span = (b + cycle_len - a) % cycle_len;
    let off = (x + cycle_len - a) % cycle_len;
    off > 0 && off < span
}

/// A labeled tree on `n` boundary vertices whose chord-drawn edges are
/// pairwise non-crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NctLabeledTree {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl NctLabeledTree {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let edges = normalize_pairs(edges);
        validate_nct(n, &edges).into_result("non-crossing tree")?;
        Ok(NctLabeledTree { n, edges })
    }

    /// The one-vertex tree.
    pub fn single() -> Self {
        NctLabeledTree {
            n: 1,
            edges: vec![],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Rebuilds the tree after an arbitrary relabeling of the vertices.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        NctLabeledTree::new(self.n, self.edges.iter().map(|&(a, b)| (f(a), f(b))))
    }
}

fn normalize_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = pairs
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Checks the tree invariants on raw parts; `edges` must be normalized
/// (sorted, `i < j`).
pub fn validate_nct(n: u32, edges: &[(u32, u32)]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if n < 1 {
        report.violations.push("vertex count must be >= 1".into());
        return report;
    }
    for &(a, b) in edges {
        if a < 1 || b > n || a == b {
            report
                .violations
                .push(format!("edge {a}-{b} has labels outside 1..={n}"));
            return report;
        }
    }
    if edges.len() as u32 != n - 1 {
        report
            .violations
            .push(format!("expected {} edges, found {}", n - 1, edges.len()));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let shared = a == c || a == d || b == c || b == d;
            if !shared && chords_cross(a, b, c, d, n).unwrap_or(false) {
                report
                    .violations
                    .push(format!("edges {a}-{b} and {c}-{d} cross"));
            }
        }
    }
    if n >= 1 && !is_connected(n, edges) {
        report.violations.push("edge set is not connected".into());
    }
    report
}

fn is_connected(n: u32, edges: &[(u32, u32)]) -> bool {
    if n == 0 {
        return false;
    }
    let n = n as usize;
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        if a as usize <= n && b as usize <= n {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
    }
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1usize];
    seen[1] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    count == n
}

/// A `2n`-gon dissected by `n-2` pairwise non-crossing diagonals into `n-1`
/// quadrilateral cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadDissection {
    n: u32,
    diagonals: Vec<(u32, u32)>,
}

impl QuadDissection {
    pub fn new(n: u32, diagonals: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let diagonals = normalize_pairs(diagonals);
        validate_qd(n, &diagonals).into_result("quadrangular dissection")?;
        Ok(QuadDissection { n, diagonals })
    }

    /// The bigon: two boundary vertices, no diagonals, no cells.
    pub fn bigon() -> Self {
        QuadDissection {
            n: 1,
            diagonals: vec![],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of polygon vertices, `2n`.
    pub fn polygon_size(&self) -> u32 {
        2 * self.n
    }

    pub fn diagonals(&self) -> &[(u32, u32)] {
        &self.diagonals
    }
}

/// Checks the dissection invariants on raw parts (normalized `diagonals`).
pub fn validate_qd(n: u32, diagonals: &[(u32, u32)]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if n < 1 {
        report.violations.push("n must be >= 1".into());
        return report;
    }
    let two_n = 2 * n;
    for &(a, b) in diagonals {
        if a < 1 || b > two_n || a == b {
            report
                .violations
                .push(format!("diagonal {a}-{b} has labels outside 1..={two_n}"));
            return report;
        }
    }
    let expected = n.saturating_sub(2);
    if diagonals.len() as u32 != expected {
        report.violations.push(format!(
            "expected {} diagonals, found {}",
            expected,
            diagonals.len()
        ));
    }
    for &(a, b) in diagonals {
        let gap = (b - a) % two_n;
        if gap == 1 || gap == two_n - 1 {
            report
                .violations
                .push(format!("{a}-{b} joins adjacent polygon vertices"));
        }
        if (a + b) % 2 == 0 {
            report
                .violations
                .push(format!("{a}-{b} joins vertices of the same parity"));
        }
    }
    for (i, &(a, b)) in diagonals.iter().enumerate() {
        for &(c, d) in &diagonals[i + 1..] {
            let shared = a == c || a == d || b == c || b == d;
            if !shared && chords_cross(a, b, c, d, two_n).unwrap_or(false) {
                report
                    .violations
                    .push(format!("diagonals {a}-{b} and {c}-{d} cross"));
            }
        }
    }
    if report.is_ok() {
        if let Err(e) = cells_of(n, diagonals) {
            report
                .violations
                .push(format!("cell extraction failed: {e}"));
        }
    }
    report
}

/// The quadrilateral cells of a dissection, each a 4-tuple of polygon
/// vertices in counterclockwise cyclic order starting at the smallest
/// corner; cells sorted by their corner tuples.
///
/// Computed by recursive polygon splitting: pick any diagonal, split the
/// cyclic vertex list, recurse; a piece of four vertices is a cell.
pub fn cells(q: &QuadDissection) -> Result<Vec<[u32; 4]>> {
    cells_of(q.n, q.diagonals())
}

fn cells_of(n: u32, diagonals: &[(u32, u32)]) -> Result<Vec<[u32; 4]>> {
    if n == 1 {
        return Ok(vec![]);
    }
    let boundary: Vec<u32> = (1..=2 * n).collect();
    let mut out = Vec::with_capacity(n as usize - 1);
    split_cells(&boundary, diagonals, &mut out)?;
    for cell in &mut out {
        let min_pos = (0..4).min_by_key(|&i| cell[i]).unwrap();
        cell.rotate_left(min_pos);
    }
    out.sort_unstable();
    Ok(out)
}

fn split_cells(poly: &[u32], diagonals: &[(u32, u32)], out: &mut Vec<[u32; 4]>) -> Result<()> {
    // find a diagonal with both endpoints on this sub-polygon
    let pos_of = |v: u32| poly.iter().position(|&x| x == v);
    for &(a, b) in diagonals {
        if let (Some(i), Some(j)) = (pos_of(a), pos_of(b)) {
            let (i, j) = (i.min(j), i.max(j));
            if j - i == 1 || (i == 0 && j == poly.len() - 1) {
                continue; // a side of this sub-polygon, not a splitting chord
            }
            let first: Vec<u32> = poly[i..=j].to_vec();
            let mut second: Vec<u32> = poly[j..].to_vec();
            second.extend_from_slice(&poly[..=i]);
            split_cells(&first, diagonals, out)?;
            split_cells(&second, diagonals, out)?;
            return Ok(());
        }
    }
    if poly.len() == 4 {
        out.push([poly[0], poly[1], poly[2], poly[3]]);
        Ok(())
    } else {
        Err(Error::NotQuadrangular(poly.len()))
    }
}

/// The recursive ternary tree: a leaf, or a node with ordered left, middle
/// and right children. Leaves count `2m + 1` where `m` is the number of
/// internal vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TernaryTree {
    Leaf,
    Node(Box<TernaryTree>, Box<TernaryTree>, Box<TernaryTree>),
}

impl TernaryTree {
    pub fn node(left: TernaryTree, middle: TernaryTree, right: TernaryTree) -> Self {
        TernaryTree::Node(Box::new(left), Box::new(middle), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TernaryTree::Leaf)
    }

    pub fn internal_count(&self) -> u32 {
        match self {
            TernaryTree::Leaf => 0,
            TernaryTree::Node(l, m, r) => {
                1 + l.internal_count() + m.internal_count() + r.internal_count()
            }
        }
    }

    pub fn leaf_count(&self) -> u32 {
        2 * self.internal_count() + 1
    }
}

pub fn validate_ternary(_t: &TernaryTree) -> ValidationReport {
    // leaves = 2m + 1 holds by construction of the recursive type
    ValidationReport::default()
}

/// A flagged perfectly chain-decomposed binary ditree.
///
/// Vertices are `0..m`; `darts` are ordered pairs; `chains` partition the
/// darts into directed paths (trivial one-vertex chains allowed) with every
/// vertex on exactly two chains counted with multiplicity; `flag` indexes
/// the distinguished chain.
///
/// `m = 0` is the empty structure (one empty chain which is the flag);
/// `m = 1` with no darts is the point (two identical trivial chains).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pcdd {
    m: usize,
    darts: Vec<(usize, usize)>,
    chains: Vec<Vec<usize>>,
    flag: usize,
}

impl Pcdd {
    pub fn from_parts(
        m: usize,
        darts: impl IntoIterator<Item = (usize, usize)>,
        chains: impl IntoIterator<Item = Vec<usize>>,
        flag: usize,
    ) -> Result<Self> {
        let mut darts: Vec<(usize, usize)> = darts.into_iter().collect();
        let chains: Vec<Vec<usize>> = chains.into_iter().collect();
        validate_pcdd(m, &darts, &chains, flag).into_result("pcdd")?;
        darts.sort_unstable();
        // normalize chain order; the flag follows its chain, ties resolved
        // to the first equal chain (only the point has duplicate chains)
        let flag_content = chains[flag].clone();
        let mut chains = chains;
        chains.sort();
        let flag = chains.iter().position(|c| *c == flag_content).unwrap();
        Ok(Pcdd {
            m,
            darts,
            chains,
            flag,
        })
    }

    /// The empty structure.
    pub fn empty() -> Self {
        Pcdd {
            m: 0,
            darts: vec![],
            chains: vec![vec![]],
            flag: 0,
        }
    }

    /// The single-vertex structure with two trivial chains.
    pub fn point() -> Self {
        Pcdd {
            m: 1,
            darts: vec![],
            chains: vec![vec![0], vec![0]],
            flag: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn darts(&self) -> &[(usize, usize)] {
        &self.darts
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn flag(&self) -> usize {
        self.flag
    }

    pub fn flag_chain(&self) -> &[usize] {
        &self.chains[self.flag]
    }
}

/// Checks the chain-decomposition invariants on raw parts.
pub fn validate_pcdd(
    m: usize,
    darts: &[(usize, usize)],
    chains: &[Vec<usize>],
    flag: usize,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    if flag >= chains.len() {
        report
            .violations
            .push(format!("flag index {flag} out of range"));
        return report;
    }
    if m == 0 {
        if !darts.is_empty() || chains.len() != 1 || !chains[0].is_empty() {
            report
                .violations
                .push("empty structure must have no darts and one empty chain".into());
        }
        return report;
    }
    for &(u, v) in darts {
        if u >= m || v >= m || u == v {
            report
                .violations
                .push(format!("dart {u}>{v} has labels outside 0..{m}"));
            return report;
        }
    }
    // underlying graph is a tree
    let mut und: Vec<(usize, usize)> = darts.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    und.sort_unstable();
    und.dedup();
    if und.len() != darts.len() || darts.len() != m - 1 {
        report.violations.push(format!(
            "expected {} distinct tree edges, found {}",
            m - 1,
            darts.len()
        ));
    }
    let mut adj = vec![Vec::new(); m];
    for &(u, v) in &und {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if count != m {
        report
            .violations
            .push("underlying graph is not connected".into());
    }
    // degree bounds
    let mut indeg = vec![0u32; m];
    let mut outdeg = vec![0u32; m];
    for &(u, v) in darts {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    for v in 0..m {
        if indeg[v] > 2 || outdeg[v] > 2 {
            report
                .violations
                .push(format!("vertex {v} exceeds in/out degree 2"));
        }
    }
    // chains are directed paths partitioning the darts, two per vertex
    let dart_set: std::collections::HashSet<(usize, usize)> = darts.iter().copied().collect();
    let mut dart_used = std::collections::HashMap::new();
    let mut membership = vec![0u32; m];
    for chain in chains {
        if chain.is_empty() {
            report
                .violations
                .push("empty chain only allowed in the empty structure".into());
            continue;
        }
        let mut in_chain = std::collections::HashSet::new();
        for &v in chain {
            if v >= m {
                report
                    .violations
                    .push(format!("chain vertex {v} out of range"));
                return report;
            }
            if !in_chain.insert(v) {
                report.violations.push(format!("chain revisits vertex {v}"));
            }
            membership[v] += 1;
        }
        for w in chain.windows(2) {
            let d = (w[0], w[1]);
            if !dart_set.contains(&d) {
                report
                    .violations
                    .push(format!("chain step {}>{} is not a dart", d.0, d.1));
            }
            *dart_used.entry(d).or_insert(0u32) += 1;
        }
    }
    for &(u, v) in darts {
        match dart_used.get(&(u, v)) {
            Some(1) => {}
            other => report.violations.push(format!(
                "dart {u}>{v} belongs to {} chains",
                other.copied().unwrap_or(0)
            )),
        }
    }
    for (v, &count) in membership.iter().enumerate() {
        if count != 2 {
            report
                .violations
                .push(format!("vertex {v} lies on {count} chains, expected 2"));
        }
    }
    report
}

/// An element `delta^k r^f` of the dihedral group acting on the labels of a
/// `two_n`-gon: `delta` is the one-step rotation `v -> v-1` and `r` the
/// reflection `v -> 3-v` across the axis through the midpoints of the sides
/// `1 2` and `n+1 n+2`. Application order is `r` first, then the rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    two_n: u32,
    k: u32,
    f: bool,
}

impl DihedralElement {
    pub fn new(two_n: u32, k: i64, f: bool) -> Result<Self> {
        if two_n < 2 || !two_n.is_multiple_of(2) {
            return Err(Error::Argument(format!(
                "polygon size {two_n} must be a positive even number"
            )));
        }
        let k = k.rem_euclid(two_n as i64) as u32;
        Ok(DihedralElement { two_n, k, f })
    }

    pub fn identity(two_n: u32) -> Self {
        DihedralElement {
            two_n,
            k: 0,
            f: false,
        }
    }

    /// Rotation by one step (`pi/n` radians), `v -> v-1`.
    pub fn delta(two_n: u32) -> Self {
        DihedralElement {
            two_n,
            k: 1,
            f: false,
        }
    }

    /// The side-midpoint reflection, `v -> 3-v`.
    pub fn reflection_r(two_n: u32) -> Self {
        DihedralElement {
            two_n,
            k: 0,
            f: true,
        }
    }

    /// The vertex-1 reflection `v -> 2-v`, equal to `delta . r`.
    pub fn reflection_s(two_n: u32) -> Self {
        DihedralElement {
            two_n,
            k: 1,
            f: true,
        }
    }

    pub fn two_n(&self) -> u32 {
        self.two_n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_reflection(&self) -> bool {
        self.f
    }

    /// Image of the polygon label `v` (in `1..=two_n`).
    pub fn apply_vertex(&self, v: u32) -> u32 {
        let n = self.two_n;
        debug_assert!((1..=n).contains(&v));
        let w = if self.f { (3 + 2 * n - v) % n } else { v % n };
        let w = (w + n - self.k % n) % n;
        if w == 0 {
            n
        } else {
            w
        }
    }

    /// Relabels every diagonal endpoint of `q`.
    pub fn apply(&self, q: &QuadDissection) -> Result<QuadDissection> {
        if self.two_n != q.polygon_size() {
            return Err(Error::Argument(format!(
                "group element for a {}-gon applied to a {}-gon",
                self.two_n,
                q.polygon_size()
            )));
        }
        QuadDissection::new(
            q.n(),
            q.diagonals()
                .iter()
                .map(|&(a, b)| (self.apply_vertex(a), self.apply_vertex(b))),
        )
    }

    /// Group composition: `compose(g, h)` acts as `g` after `h`.
    pub fn compose(&self, other: &DihedralElement) -> Result<DihedralElement> {
        if self.two_n != other.two_n {
            return Err(Error::Argument("mismatched group parameters".into()));
        }
        let n = self.two_n as i64;
        let (k1, k2) = (self.k as i64, other.k as i64);
        let k = if self.f { k1 - k2 } else { k1 + k2 };
        DihedralElement::new(self.two_n, k.rem_euclid(n), self.f ^ other.f)
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.f {
            *self
        } else {
            DihedralElement {
                two_n: self.two_n,
                k: (self.two_n - self.k) % self.two_n,
                f: false,
            }
        }
    }
}
