//! The arrows of the commutative square between the four families, the
//! fusion/decomposition machinery on trees and chain-decomposed ditrees, and
//! the encoding of self-dual ternary trees.
//!
//! The maps here are pinned to one another: `sigma` must agree with
//! `psi . phi_inv` extensionally, and `tau . medial` must agree with `sigma`.
//! The decomposition conventions below (which piece is left/middle/right and
//! how pieces are relabeled) are exactly the ones that make this hold; the
//! test suites check it exhaustively through seven vertices.

use crate::error::{Error, Result};
use crate::model::{cells, NctLabeledTree, Pcdd, QuadDissection, TernaryTree};
use crate::symmetry;
use std::collections::HashMap;

/// Maps a dissection to the non-crossing tree of its odd cell diagonals:
/// every cell has two odd and two even corners; the chord joining the odd
/// corners, relabeled `2i-1 -> i`, is an edge of the tree.
pub fn phi(q: &QuadDissection) -> Result<NctLabeledTree> {
    if q.n() == 1 {
        return Ok(NctLabeledTree::single());
    }
    let mut edges = Vec::new();
    for cell in cells(q)? {
        let odd: Vec<u32> = cell.iter().copied().filter(|v| v % 2 == 1).collect();
        if odd.len() != 2 {
            return Err(Error::Reconstruction(format!(
                "cell {cell:?} does not have two odd corners"
            )));
        }
        edges.push((odd[0].div_ceil(2), odd[1].div_ceil(2)));
    }
    NctLabeledTree::new(q.n(), edges)
}

/// The companion construction with even corners, relabeled `2i -> i`.
pub(crate) fn even_tree(q: &QuadDissection) -> Result<NctLabeledTree> {
    if q.n() == 1 {
        return Ok(NctLabeledTree::single());
    }
    let mut edges = Vec::new();
    for cell in cells(q)? {
        let even: Vec<u32> = cell.iter().copied().filter(|v| v % 2 == 0).collect();
        if even.len() != 2 {
            return Err(Error::Reconstruction(format!(
                "cell {cell:?} does not have two even corners"
            )));
        }
        edges.push((even[0] / 2, even[1] / 2));
    }
    NctLabeledTree::new(q.n(), edges)
}

/// Inverse of [`phi`], built by the same root-cell recursion that drives
/// [`sigma`]: the tree decomposes at the edge from vertex 1 to its smallest
/// neighbor, and the three pieces fill the three arcs around the root cell.
pub fn phi_inv(t: &NctLabeledTree) -> QuadDissection {
    let diags = phi_inv_diagonals(t);
    QuadDissection::new(t.n(), diags).expect("phi_inv produces a valid dissection")
}

fn phi_inv_diagonals(t: &NctLabeledTree) -> Vec<(u32, u32)> {
    let n = t.n();
    if n == 1 {
        return Vec::new();
    }
    let parts = decompose(t);
    let (a, b, c) = (parts.left.n(), parts.middle.n(), parts.right.n());
    let m = b + c;
    let mut diags = Vec::new();
    // sides of the root cell {1, 2, 2c+1, 2m} that are proper diagonals
    if c >= 2 {
        diags.push((2, 2 * c + 1));
    }
    if b >= 2 {
        diags.push((2 * c + 1, 2 * m));
    }
    if a >= 2 {
        diags.push((1, 2 * m));
    }
    // right piece occupies the arc [2 .. 2c+1]
    for (u, v) in phi_inv_diagonals(&parts.right) {
        let f = |x: u32| if x == 1 { 2 * c + 1 } else { x };
        diags.push((f(u), f(v)));
    }
    // middle piece occupies [2c+1 .. 2m], rotated one step
    let span = 2 * b;
    for (u, v) in phi_inv_diagonals(&parts.middle) {
        let f = |x: u32| {
            let x = x % span + 1; // one-step rotation inside the piece
            if x == 1 {
                2 * m
            } else {
                x + 2 * c - 1
            }
        };
        diags.push((f(u), f(v)));
    }
    // left piece occupies [2m .. 2n] plus vertex 1
    for (u, v) in phi_inv_diagonals(&parts.left) {
        let f = |x: u32| if x == 1 { 1 } else { x + 2 * m - 2 };
        diags.push((f(u), f(v)));
    }
    diags
}

/// The three natural pieces of a tree around the edge `{1, k}` where `k` is
/// the smallest neighbor of vertex 1. Every piece is relabeled so that its
/// attachment vertex becomes 1:
///
/// * right: the part on `[2 ..= k]` (`k -> 1`, other labels kept),
/// * middle: the part on `[k ..= m]` (`v -> v-k+1`), `m` the largest vertex
///   reachable from `k` without the edge `{1, k}`,
/// * left: vertex 1 with everything on `[m+1 ..= n]` (`v -> v-m+1`).
struct Decomposition {
    left: NctLabeledTree,
    middle: NctLabeledTree,
    right: NctLabeledTree,
}

fn decompose(t: &NctLabeledTree) -> Decomposition {
    let n = t.n();
    debug_assert!(n >= 2);
    let k = t.neighbors(1)[0];
    // component of k after removing {1, k}; always the interval [2 ..= m]
    let mut seen = vec![false; n as usize + 1];
    let mut stack = vec![k];
    seen[k as usize] = true;
    while let Some(v) = stack.pop() {
        for w in t.neighbors(v) {
            if (v, w) == (k, 1) {
                continue;
            }
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    let m = (2..=n).filter(|&v| seen[v as usize]).max().unwrap_or(k);
    debug_assert!((2..=m).all(|v| seen[v as usize]));

    let mut right_edges = Vec::new();
    let mut middle_edges = Vec::new();
    let mut left_edges = Vec::new();
    for &(u, v) in t.edges() {
        if (u, v) == (1, k) {
            continue;
        }
        if u >= 2 && v <= k {
            let f = |x: u32| if x == k { 1 } else { x };
            right_edges.push((f(u), f(v)));
        } else if u >= k && v <= m {
            middle_edges.push((u - k + 1, v - k + 1));
        } else {
            let f = |x: u32| if x == 1 { 1 } else { x - m + 1 };
            left_edges.push((f(u), f(v)));
        }
    }
    let mk = |size: u32, edges: Vec<(u32, u32)>| {
        NctLabeledTree::new(size, edges).expect("tree piece is valid")
    };
    Decomposition {
        left: mk(n - m + 1, left_edges),
        middle: mk(m - k + 1, middle_edges),
        right: mk(k - 1, right_edges),
    }
}

/// Reassembles [`decompose`]'s natural pieces into one tree.
fn assemble(
    left: &NctLabeledTree,
    middle: &NctLabeledTree,
    right: &NctLabeledTree,
) -> NctLabeledTree {
    let (a, b, c) = (left.n(), middle.n(), right.n());
    let n = a + b + c - 1;
    let k = c + 1;
    let m = b + c;
    let mut edges = vec![(1, k)];
    for &(u, v) in right.edges() {
        let f = |x: u32| if x == 1 { k } else { x };
        edges.push((f(u), f(v)));
    }
    for &(u, v) in middle.edges() {
        edges.push((u + k - 1, v + k - 1));
    }
    for &(u, v) in left.edges() {
        let f = |x: u32| if x == 1 { 1 } else { x + m - 1 };
        edges.push((f(u), f(v)));
    }
    NctLabeledTree::new(n, edges).expect("fusion produces a valid tree")
}

/// An ordered triple of trees that reassembles under [`fuse_nct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NctTriple {
    pub left: NctLabeledTree,
    pub middle: NctLabeledTree,
    pub right: NctLabeledTree,
}

/// Splits a tree at the edge from vertex 1 to its smallest neighbor. The
/// middle piece carries an extra inverse-rotation twist so that [`sigma`]
/// is the plain recursion over this decomposition.
pub fn unfuse_nct(t: &NctLabeledTree) -> Result<NctTriple> {
    if t.n() < 2 {
        return Err(Error::Argument("cannot unfuse a single-vertex tree".into()));
    }
    let parts = decompose(t);
    Ok(NctTriple {
        left: parts.left,
        middle: symmetry::nct_delta(&parts.middle, true),
        right: parts.right,
    })
}

/// Inverse of [`unfuse_nct`].
pub fn fuse_nct(triple: &NctTriple) -> NctLabeledTree {
    let middle = symmetry::nct_delta(&triple.middle, false);
    assemble(&triple.left, &middle, &triple.right)
}

/// The recursive bijection onto ternary trees; agrees with
/// `psi . phi_inv` on every input.
pub fn sigma(t: &NctLabeledTree) -> TernaryTree {
    if t.n() == 1 {
        return TernaryTree::Leaf;
    }
    let triple = unfuse_nct(t).expect("n >= 2");
    TernaryTree::node(
        sigma(&triple.left),
        sigma(&triple.middle),
        sigma(&triple.right),
    )
}

/// Inverse of [`sigma`].
pub fn sigma_inv(t: &TernaryTree) -> NctLabeledTree {
    match t {
        TernaryTree::Leaf => NctLabeledTree::single(),
        TernaryTree::Node(l, m, r) => fuse_nct(&NctTriple {
            left: sigma_inv(l),
            middle: sigma_inv(m),
            right: sigma_inv(r),
        }),
    }
}

/// Maps a dissection to its dual ternary tree: the root is the cell
/// touching the polygon side `1 2`, and a cell entered through a side has
/// its remaining sides, in counterclockwise order, as right, middle and
/// left children. Polygon sides become leaves, diagonals recurse.
pub fn psi(q: &QuadDissection) -> Result<TernaryTree> {
    if q.n() == 1 {
        return Ok(TernaryTree::Leaf);
    }
    let cs = cells(q)?;
    let mut by_side: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    for (i, cell) in cs.iter().enumerate() {
        for j in 0..4 {
            let (a, b) = (cell[j], cell[(j + 1) % 4]);
            by_side.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    let two_n = q.polygon_size();
    let root = by_side
        .get(&(1, 2))
        .and_then(|v| v.first().copied())
        .ok_or_else(|| Error::Reconstruction("no cell touches the side 1 2".into()))?;
    Ok(psi_cell(&cs, &by_side, two_n, root, (1, 2)))
}

fn psi_cell(
    cs: &[[u32; 4]],
    by_side: &HashMap<(u32, u32), Vec<usize>>,
    two_n: u32,
    idx: usize,
    entry: (u32, u32),
) -> TernaryTree {
    let cell = cs[idx];
    let pos = (0..4)
        .find(|&j| {
            let (a, b) = (cell[j], cell[(j + 1) % 4]);
            (a.min(b), a.max(b)) == entry
        })
        .expect("entry side lies on the cell");
    let child = |offset: usize| -> TernaryTree {
        let (a, b) = (cell[(pos + offset) % 4], cell[(pos + offset + 1) % 4]);
        let side = (a.min(b), a.max(b));
        let gap = (side.1 - side.0) % two_n;
        if gap == 1 || gap == two_n - 1 {
            TernaryTree::Leaf
        } else {
            let other = by_side[&side]
                .iter()
                .copied()
                .find(|&i| i != idx)
                .expect("a diagonal borders two cells");
            psi_cell(cs, by_side, two_n, other, side)
        }
    };
    TernaryTree::node(child(3), child(2), child(1))
}

/// Inverse of [`psi`] by arc spans: the `2m+1` leaves receive the polygon
/// sides `2 3, 3 4, ...` in right-middle-left preorder (the missing side
/// `1 2` faces the root), each subtree spans the contiguous arc of its
/// leaves, and every non-root internal node contributes the chord closing
/// its arc.
pub fn psi_inv(t: &TernaryTree) -> QuadDissection {
    let n = t.internal_count() + 1;
    if n == 1 {
        return QuadDissection::bigon();
    }
    let two_n = 2 * n;
    let mut diags = Vec::new();
    span(t, 2, true, two_n, &mut diags);
    QuadDissection::new(n, diags).expect("psi_inv produces a valid dissection")
}

fn span(t: &TernaryTree, start: u32, root: bool, two_n: u32, diags: &mut Vec<(u32, u32)>) -> u32 {
    match t {
        TernaryTree::Leaf => start + 1,
        TernaryTree::Node(l, m, r) => {
            let x = span(r, start, false, two_n, diags);
            let y = span(m, x, false, two_n, diags);
            let end = span(l, y, false, two_n, diags);
            if !root {
                let reduce = |v: u32| (v - 1) % two_n + 1;
                diags.push((reduce(start), reduce(end)));
            }
            end
        }
    }
}

/// The medial construction: one ditree vertex per tree edge (numbered by
/// sorted edge order), one chain per tree vertex (its incident edges,
/// ordered counterclockwise starting just after the boundary), darts
/// between consecutive edges of a chain, flag the chain of vertex 1.
pub fn medial(t: &NctLabeledTree) -> Pcdd {
    let n = t.n();
    if n == 1 {
        return Pcdd::empty();
    }
    let edges = t.edges();
    let id = |u: u32, v: u32| {
        let e = (u.min(v), u.max(v));
        edges.binary_search(&e).expect("edge of the tree")
    };
    let mut darts = Vec::new();
    let mut chains = Vec::new();
    for v in 1..=n {
        let mut nbrs = t.neighbors(v);
        nbrs.sort_unstable_by_key(|&w| (w + n - v) % n);
        let chain: Vec<usize> = nbrs.iter().map(|&w| id(v, w)).collect();
        for w in chain.windows(2) {
            darts.push((w[0], w[1]));
        }
        chains.push(chain);
    }
    Pcdd::from_parts(n as usize - 1, darts, chains, 0).expect("medial image is valid")
}

/// Inverse of [`medial`], by the unique fusion decomposition.
pub fn medial_inv(p: &Pcdd) -> Result<NctLabeledTree> {
    if p.is_empty() {
        return Ok(NctLabeledTree::single());
    }
    let (l, m, r) = unfuse_parts(p)?;
    Ok(assemble(
        &medial_inv(&l)?,
        &medial_inv(&m)?,
        &medial_inv(&r)?,
    ))
}

/// Renumbers a valid structure into canonical form (vertex ids are the
/// sorted-edge ranks of the corresponding tree).
pub(crate) fn canonicalize_pcdd(p: &Pcdd) -> Result<Pcdd> {
    Ok(medial(&medial_inv(p)?))
}

/// Splits a non-empty structure at the first vertex of its flag. Pieces
/// come back in canonical numbering.
pub fn unfuse_pcdd(p: &Pcdd) -> Result<(Pcdd, Pcdd, Pcdd)> {
    let (l, m, r) = unfuse_parts(p)?;
    Ok((
        canonicalize_pcdd(&l)?,
        canonicalize_pcdd(&m)?,
        canonicalize_pcdd(&r)?,
    ))
}

/// Raw decomposition; piece numbering preserves the relative order of the
/// original vertex ids.
pub(crate) fn unfuse_parts(p: &Pcdd) -> Result<(Pcdd, Pcdd, Pcdd)> {
    if p.is_empty() {
        return Err(Error::Argument("cannot unfuse the empty structure".into()));
    }
    let flag_idx = p.flag();
    let flag = p.flag_chain();
    let v0 = flag[0];
    let other_idx = p
        .chains()
        .iter()
        .enumerate()
        .position(|(i, c)| i != flag_idx && c.contains(&v0))
        .expect("every vertex lies on two chains");
    let other = &p.chains()[other_idx];
    let pos = other.iter().position(|&x| x == v0).unwrap();
    let f_l: Vec<usize> = flag[1..].to_vec();
    let f_m: Vec<usize> = other[..pos].to_vec();
    let f_r: Vec<usize> = other[pos + 1..].to_vec();

    // connected components after deleting v0
    let mut comp = vec![usize::MAX; p.m()];
    let mut next = 0;
    for start in 0..p.m() {
        if start == v0 || comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(v) = stack.pop() {
            for &(x, y) in p.darts() {
                for (s, t) in [(x, y), (y, x)] {
                    if s == v && t != v0 && comp[t] == usize::MAX {
                        comp[t] = next;
                        stack.push(t);
                    }
                }
            }
        }
        next += 1;
    }

    let build = |piece_flag: &[usize]| -> Result<Pcdd> {
        if piece_flag.is_empty() {
            return Ok(Pcdd::empty());
        }
        let c = comp[piece_flag[0]];
        let verts: Vec<usize> = (0..p.m()).filter(|&v| v != v0 && comp[v] == c).collect();
        let renum: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let darts: Vec<(usize, usize)> = p
            .darts()
            .iter()
            .filter(|&&(u, v)| renum.contains_key(&u) && renum.contains_key(&v))
            .map(|&(u, v)| (renum[&u], renum[&v]))
            .collect();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for (i, chain) in p.chains().iter().enumerate() {
            if i == flag_idx || i == other_idx {
                continue;
            }
            if renum.contains_key(&chain[0]) {
                chains.push(chain.iter().map(|v| renum[v]).collect());
            }
        }
        let flag_pos = chains.len();
        chains.push(piece_flag.iter().map(|v| renum[v]).collect());
        Pcdd::from_parts(verts.len(), darts, chains, flag_pos)
            .map_err(|e| Error::Reconstruction(format!("decomposition piece is not coherent: {e}")))
    };
    Ok((build(&f_l)?, build(&f_m)?, build(&f_r)?))
}

/// The fusion of three structures around a fresh vertex: darts from the new
/// vertex to the first flag vertices of the left and right parts, a dart
/// from the last flag vertex of the middle part into the new vertex, the
/// two severed chains re-threaded through it, and the flag continuing into
/// the left part.
pub fn fuse_pcdd(l: &Pcdd, m: &Pcdd, r: &Pcdd) -> Pcdd {
    let (ml, mm, mr) = (l.m(), m.m(), r.m());
    let v0 = mm;
    let off_r = mm + 1;
    let off_l = mm + 1 + mr;
    let total = mm + mr + ml + 1;

    let mut darts: Vec<(usize, usize)> = Vec::new();
    darts.extend(m.darts().iter().copied());
    darts.extend(r.darts().iter().map(|&(u, v)| (u + off_r, v + off_r)));
    darts.extend(l.darts().iter().map(|&(u, v)| (u + off_l, v + off_l)));
    if !m.is_empty() {
        darts.push((*m.flag_chain().last().unwrap(), v0));
    }
    if !r.is_empty() {
        darts.push((v0, r.flag_chain()[0] + off_r));
    }
    if !l.is_empty() {
        darts.push((v0, l.flag_chain()[0] + off_l));
    }

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut add_non_flag = |p: &Pcdd, off: usize| {
        for (i, chain) in p.chains().iter().enumerate() {
            if i != p.flag() {
                chains.push(chain.iter().map(|&v| v + off).collect());
            }
        }
    };
    add_non_flag(m, 0);
    add_non_flag(r, off_r);
    add_non_flag(l, off_l);
    let mut through: Vec<usize> = m.flag_chain().to_vec();
    through.push(v0);
    through.extend(r.flag_chain().iter().map(|&v| v + off_r));
    chains.push(through);
    let flag_pos = chains.len();
    let mut new_flag = vec![v0];
    new_flag.extend(l.flag_chain().iter().map(|&v| v + off_l));
    chains.push(new_flag);

    let raw = Pcdd::from_parts(total, darts, chains, flag_pos).expect("fusion is valid");
    canonicalize_pcdd(&raw).expect("fusion is reconstructible")
}

/// The recursive bijection onto ternary trees; satisfies
/// `tau . medial = sigma`.
pub fn tau(p: &Pcdd) -> Result<TernaryTree> {
    if p.is_empty() {
        return Ok(TernaryTree::Leaf);
    }
    let (l, m, r) = unfuse_parts(p)?;
    Ok(TernaryTree::node(
        tau(&l)?,
        tau(&symmetry::pcdd_bar(&m)?)?,
        tau(&r)?,
    ))
}

/// Image of [`beta_encode`]: one ternary tree for an even number of
/// internal vertices, an ordered pair for an odd number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaImage {
    Tree(TernaryTree),
    Pair(TernaryTree, TernaryTree),
}

/// Encodes a self-dual ternary tree with `m` internal vertices as a ternary
/// tree with `m/2` internal vertices (`m` even) or an ordered pair with
/// `(m-1)/2` internal vertices in total (`m` odd). A self-dual tree is
/// `Node(t0, t1, t0*)` with `t1` self-dual; the recursion alternates
/// parity through `t1`.
pub fn beta_encode(t: &TernaryTree) -> Result<BetaImage> {
    if symmetry::ternary_star(t) != *t {
        return Err(Error::Argument("tree is not self-dual".into()));
    }
    Ok(encode_self_dual(t))
}

fn encode_self_dual(t: &TernaryTree) -> BetaImage {
    match t {
        TernaryTree::Leaf => BetaImage::Tree(TernaryTree::Leaf),
        TernaryTree::Node(t0, t1, _) => {
            if t.internal_count().is_multiple_of(2) {
                match encode_self_dual(t1) {
                    BetaImage::Pair(u, v) => {
                        BetaImage::Tree(TernaryTree::node((**t0).clone(), u, v))
                    }
                    BetaImage::Tree(_) => unreachable!("middle has odd internal count"),
                }
            } else {
                match encode_self_dual(t1) {
                    BetaImage::Tree(w) => BetaImage::Pair((**t0).clone(), w),
                    BetaImage::Pair(..) => unreachable!("middle has even internal count"),
                }
            }
        }
    }
}

/// Inverse of [`beta_encode`].
pub fn beta_decode(image: &BetaImage) -> TernaryTree {
    match image {
        BetaImage::Tree(TernaryTree::Leaf) => TernaryTree::Leaf,
        BetaImage::Tree(TernaryTree::Node(t0, u, v)) => {
            let t1 = beta_decode(&BetaImage::Pair((**u).clone(), (**v).clone()));
            let star = symmetry::ternary_star(t0);
            TernaryTree::node((**t0).clone(), t1, star)
        }
        BetaImage::Pair(t0, w) => {
            let t1 = beta_decode(&BetaImage::Tree(w.clone()));
            let star = symmetry::ternary_star(t0);
            TernaryTree::node(t0.clone(), t1, star)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TernaryTree as T;

    fn nct(n: u32, edges: &[(u32, u32)]) -> NctLabeledTree {
        NctLabeledTree::new(n, edges.iter().copied()).unwrap()
    }

    fn qd(n: u32, diags: &[(u32, u32)]) -> QuadDissection {
        QuadDissection::new(n, diags.iter().copied()).unwrap()
    }

    fn sexp(s: &str) -> T {
        crate::codec::parse_ternary(s).unwrap()
    }

    #[test]
    fn phi_figure_instance() {
        let q = qd(5, &[(1, 4), (5, 8), (5, 10)]);
        assert_eq!(phi(&q).unwrap(), nct(5, &[(1, 2), (1, 3), (3, 4), (3, 5)]));
    }

    #[test]
    fn phi_square_and_hexagon() {
        assert_eq!(phi(&qd(2, &[])).unwrap(), nct(2, &[(1, 2)]));
        assert_eq!(phi(&qd(3, &[(2, 5)])).unwrap(), nct(3, &[(1, 3), (2, 3)]));
    }

    #[test]
    fn phi_inv_figure_instance() {
        let t = nct(5, &[(1, 2), (1, 3), (3, 4), (3, 5)]);
        assert_eq!(phi_inv(&t), qd(5, &[(1, 4), (5, 8), (5, 10)]));
    }

    #[test]
    fn phi_inv_small() {
        assert_eq!(phi_inv(&nct(2, &[(1, 2)])), qd(2, &[]));
        assert_eq!(phi_inv(&nct(3, &[(1, 3), (2, 3)])), qd(3, &[(2, 5)]));
        assert_eq!(phi_inv(&NctLabeledTree::single()), QuadDissection::bigon());
    }

    #[test]
    fn psi_figure_instance() {
        let q = qd(5, &[(1, 4), (5, 8), (5, 10)]);
        assert_eq!(psi(&q).unwrap(), sexp("((* (* * (* * *)) *) * *)"));
    }

    #[test]
    fn psi_small() {
        assert_eq!(psi(&qd(2, &[])).unwrap(), sexp("(* * *)"));
        assert_eq!(psi(&qd(3, &[(3, 6)])).unwrap(), sexp("(* (* * *) *)"));
    }

    #[test]
    fn psi_inv_examples() {
        assert_eq!(psi_inv(&sexp("(* * (* * *))")), qd(3, &[(2, 5)]));
        assert_eq!(psi_inv(&sexp("(* * *)")), qd(2, &[]));
        assert_eq!(
            psi_inv(&sexp("((* (* * (* * *)) *) * *)")),
            qd(5, &[(1, 4), (5, 8), (5, 10)])
        );
    }

    #[test]
    fn unfuse_examples() {
        let tr = unfuse_nct(&nct(3, &[(1, 2), (2, 3)])).unwrap();
        assert_eq!(tr.left, NctLabeledTree::single());
        assert_eq!(tr.middle, nct(2, &[(1, 2)]));
        assert_eq!(tr.right, NctLabeledTree::single());

        let tr = unfuse_nct(&nct(3, &[(1, 2), (1, 3)])).unwrap();
        assert_eq!(tr.left, nct(2, &[(1, 2)]));
        assert_eq!(tr.middle, NctLabeledTree::single());
        assert_eq!(tr.right, NctLabeledTree::single());

        let tr = unfuse_nct(&nct(4, &[(1, 2), (2, 3), (2, 4)])).unwrap();
        assert_eq!(tr.middle, nct(3, &[(1, 3), (2, 3)]));
    }

    #[test]
    fn unfuse_rejects_single_vertex() {
        assert!(unfuse_nct(&NctLabeledTree::single()).is_err());
    }

    #[test]
    fn fuse_inverts_unfuse_small() {
        for n in 2..=6 {
            for t in crate::generators::gen_ncts(n) {
                let triple = unfuse_nct(&t).unwrap();
                assert_eq!(fuse_nct(&triple), t, "fuse(unfuse) on {t:?}");
            }
        }
    }

    #[test]
    fn sigma_matches_psi_phi_inv_oracle() {
        assert_eq!(sigma(&nct(3, &[(1, 2), (2, 3)])), sexp("(* (* * *) *)"));
        assert_eq!(sigma(&nct(3, &[(1, 2), (1, 3)])), sexp("((* * *) * *)"));
        assert_eq!(sigma(&nct(3, &[(1, 3), (2, 3)])), sexp("(* * (* * *))"));
        // the witnesses that pin the decomposition conventions
        assert_eq!(
            sigma(&nct(4, &[(1, 2), (2, 3), (3, 4)])),
            sexp("(* ((* * *) * *) *)")
        );
        assert_eq!(
            sigma(&nct(4, &[(1, 4), (2, 3), (3, 4)])),
            sexp("(* * (* * (* * *)))")
        );
    }

    #[test]
    fn sigma_equals_psi_phi_inv_exhaustively() {
        for n in 1..=6 {
            for t in crate::generators::gen_ncts(n) {
                assert_eq!(sigma(&t), psi(&phi_inv(&t)).unwrap(), "tree {t:?}");
                assert_eq!(sigma_inv(&sigma(&t)), t);
            }
        }
    }

    #[test]
    fn medial_examples() {
        let p = medial(&nct(3, &[(1, 2), (2, 3)]));
        assert_eq!(p.m(), 2);
        assert_eq!(p.darts(), &[(1, 0)]);
        assert_eq!(p.chains(), &[vec![0], vec![1], vec![1, 0]]);
        assert_eq!(p.flag_chain(), &[0]);
        assert_eq!(medial(&nct(2, &[(1, 2)])), Pcdd::point());
        assert_eq!(medial(&NctLabeledTree::single()), Pcdd::empty());
    }

    #[test]
    fn medial_inv_round_trip() {
        for n in 1..=6 {
            for t in crate::generators::gen_ncts(n) {
                assert_eq!(medial_inv(&medial(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn fusion_examples() {
        let e = Pcdd::empty();
        let p = Pcdd::point();
        assert_eq!(fuse_pcdd(&e, &e, &e), p);
        assert_eq!(unfuse_pcdd(&p).unwrap(), (e.clone(), e.clone(), e.clone()));
        assert_eq!(fuse_pcdd(&e, &p, &e), medial(&nct(3, &[(1, 2), (2, 3)])));
    }

    #[test]
    fn fuse_pcdd_inverts_unfuse() {
        for n in 2..=6 {
            for t in crate::generators::gen_ncts(n) {
                let p = medial(&t);
                let (l, m, r) = unfuse_pcdd(&p).unwrap();
                assert_eq!(fuse_pcdd(&l, &m, &r), p);
            }
        }
    }

    #[test]
    fn medial_is_a_fusion_homomorphism() {
        // the middle piece re-enters in its natural orientation
        for n in 2..=6 {
            for t in crate::generators::gen_ncts(n) {
                let triple = unfuse_nct(&t).unwrap();
                let natural_middle = symmetry::nct_delta(&triple.middle, false);
                let rhs = fuse_pcdd(
                    &medial(&triple.left),
                    &medial(&natural_middle),
                    &medial(&triple.right),
                );
                assert_eq!(medial(&t), rhs, "tree {t:?}");
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&Pcdd::empty()).unwrap(), T::Leaf);
        assert_eq!(tau(&Pcdd::point()).unwrap(), sexp("(* * *)"));
        assert_eq!(
            tau(&medial(&nct(4, &[(1, 2), (2, 3), (2, 4)]))).unwrap(),
            sexp("(* (* * (* * *)) *)")
        );
    }

    #[test]
    fn tau_medial_equals_sigma() {
        for n in 1..=6 {
            for t in crate::generators::gen_ncts(n) {
                assert_eq!(tau(&medial(&t)).unwrap(), sigma(&t), "tree {t:?}");
            }
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_encode(&T::Leaf).unwrap(), BetaImage::Tree(T::Leaf));
        assert_eq!(
            beta_encode(&sexp("(* (* * *) *)")).unwrap(),
            BetaImage::Tree(sexp("(* * *)"))
        );
        assert!(beta_encode(&sexp("((* * *) * *)")).is_err());
    }

    #[test]
    fn beta_image_over_self_dual_m4() {
        let images: Vec<BetaImage> = crate::generators::gen_self_dual_ternary(4)
            .map(|t| beta_encode(&t).unwrap())
            .collect();
        assert_eq!(images.len(), 3);
        let trees: Vec<&TernaryTree> = images
            .iter()
            .map(|i| match i {
                BetaImage::Tree(t) => t,
                _ => panic!("even size must encode to a single tree"),
            })
            .collect();
        assert_eq!(trees.iter().map(|t| t.internal_count()).max(), Some(2));
        for img in &images {
            assert_eq!(beta_encode(&beta_decode(img)).unwrap(), *img);
        }
    }
}
