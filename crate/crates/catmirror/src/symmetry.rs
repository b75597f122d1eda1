//! Duality and symmetry operators on all four families: reflections,
//! rotations and the mind-body duality on non-crossing trees, the recursive
//! left/right swap on ternary trees, and the chain-switching duality on
//! flagged chain-decomposed ditrees.

use crate::bijections;
use crate::error::{Error, Result};
use crate::model::{DihedralElement, NctLabeledTree, Pcdd, TernaryTree};
use std::collections::HashMap;

type Dart = (usize, usize);

fn mod1(x: i64, n: u32) -> u32 {
    (x - 1).rem_euclid(n as i64) as u32 + 1
}

/// The reflection across the diameter through vertex 1: `i -> n+2-i`.
pub fn nct_reflect_s(t: &NctLabeledTree) -> NctLabeledTree {
    let n = t.n();
    t.relabel(|i| mod1(n as i64 + 2 - i as i64, n))
        .expect("relabeling preserves validity")
}

/// Rotation by `j` steps: `i -> i - j`.
pub fn nct_rotate(t: &NctLabeledTree, j: i64) -> NctLabeledTree {
    let n = t.n();
    t.relabel(|i| mod1(i as i64 - j, n))
        .expect("relabeling preserves validity")
}

/// Full label reversal `i -> n+1-i`.
pub fn nct_rev(t: &NctLabeledTree) -> NctLabeledTree {
    let n = t.n();
    t.relabel(|i| n + 1 - i)
        .expect("relabeling preserves validity")
}

/// The descended one-step rotation: the tree formed by the even cell
/// diagonals of `phi_inv(t)`. With `inverse` set, its inverse (conjugate of
/// the opposite polygon rotation).
pub fn nct_delta(t: &NctLabeledTree, inverse: bool) -> NctLabeledTree {
    if t.n() == 1 {
        return NctLabeledTree::single();
    }
    let q = bijections::phi_inv(t);
    if inverse {
        let rho_inv = DihedralElement::delta(q.polygon_size()).inverse();
        bijections::phi(&rho_inv.apply(&q).expect("same polygon"))
            .expect("rotation preserves validity")
    } else {
        bijections::even_tree(&q).expect("dissection has even diagonals")
    }
}

/// Mind-body duality `t* = s(delta(t))`; an involution.
pub fn nct_star(t: &NctLabeledTree) -> NctLabeledTree {
    nct_reflect_s(&nct_delta(t, false))
}

/// The companion duality `s(delta_inv(t))`; an involution.
pub fn nct_barstar(t: &NctLabeledTree) -> NctLabeledTree {
    nct_reflect_s(&nct_delta(t, true))
}

/// Recursive left/right swap; an involution preserving internal count.
pub fn ternary_star(t: &TernaryTree) -> TernaryTree {
    match t {
        TernaryTree::Leaf => TernaryTree::Leaf,
        TernaryTree::Node(l, m, r) => {
            TernaryTree::node(ternary_star(r), ternary_star(m), ternary_star(l))
        }
    }
}

enum FlagAnchor {
    /// New flag starts where the old flag started.
    Start,
    /// Mirrored rule: ends where the old flag ended, incoming darts.
    End,
}

/// Mind-body duality on chain decompositions: at every internal vertex the
/// incoming darts are re-paired with the outgoing darts the opposite way;
/// the new flag starts at the old flag's first vertex, continuing along the
/// outgoing dart the old flag did not use when there is one.
pub fn pcdd_star(p: &Pcdd) -> Result<Pcdd> {
    pcdd_dual(p, FlagAnchor::Start, true)
}

/// The companion duality with the mirrored flag rule (chain ends and
/// incoming darts in place of starts and outgoing darts).
pub fn pcdd_barstar(p: &Pcdd) -> Result<Pcdd> {
    pcdd_dual(p, FlagAnchor::End, true)
}

/// The mirrored-flag variant that keeps the original chain decomposition.
/// Not conjugate to [`nct_barstar`] under the medial map; kept so the
/// verification report can demonstrate the failure.
pub fn pcdd_barstar_keep_chains(p: &Pcdd) -> Result<Pcdd> {
    pcdd_dual(p, FlagAnchor::End, false)
}

/// The bar operator, realized by conjugating the inverse descended rotation
/// through the medial bijection. This is the unique choice among the label
/// symmetries that makes `tau` commute with `sigma`.
pub fn pcdd_bar(p: &Pcdd) -> Result<Pcdd> {
    let t = bijections::medial_inv(p)?;
    Ok(bijections::medial(&nct_delta(&t, true)))
}

fn pcdd_dual(p: &Pcdd, anchor: FlagAnchor, switch_chains: bool) -> Result<Pcdd> {
    if p.is_empty() {
        return Ok(Pcdd::empty());
    }
    let m = p.m();
    let mut ins: Vec<Vec<Dart>> = vec![Vec::new(); m];
    let mut outs: Vec<Vec<Dart>> = vec![Vec::new(); m];
    for &(u, v) in p.darts() {
        outs[u].push((u, v));
        ins[v].push((u, v));
    }
    for v in 0..m {
        ins[v].sort_unstable();
        outs[v].sort_unstable();
    }

    let new_chains = if switch_chains {
        // the old pairing: chain step x -> v -> y pairs (x,v) with (v,y)
        let mut old_pairs: HashMap<usize, Vec<(Dart, Dart)>> = HashMap::new();
        for chain in p.chains() {
            for w in chain.windows(3) {
                old_pairs
                    .entry(w[1])
                    .or_default()
                    .push(((w[0], w[1]), (w[1], w[2])));
            }
        }
        let mut next: HashMap<Dart, Dart> = HashMap::new();
        for v in 0..m {
            let (i, o) = (&ins[v], &outs[v]);
            if i.is_empty() || o.is_empty() {
                continue; // not internal, nothing to switch
            }
            let old = old_pairs.remove(&v).unwrap_or_default();
            match (i.len(), o.len()) {
                (1, 1) => {
                    if old.is_empty() {
                        next.insert(i[0], o[0]);
                    } // else: previously joined, now severed
                }
                (2, 1) => {
                    let used = old_single(&old, v)?.0;
                    let other = if i[0] == used { i[1] } else { i[0] };
                    next.insert(other, o[0]);
                }
                (1, 2) => {
                    let used = old_single(&old, v)?.1;
                    let other = if o[0] == used { o[1] } else { o[0] };
                    next.insert(i[0], other);
                }
                (2, 2) => {
                    if old.len() != 2 {
                        return Err(Error::Reconstruction(format!(
                            "vertex {v} misses a full pairing"
                        )));
                    }
                    next.insert(old[0].0, old[1].1);
                    next.insert(old[1].0, old[0].1);
                }
                _ => unreachable!("validated degree bounds"),
            }
        }
        rebuild_chains(m, p.darts(), &next)
    } else {
        p.chains().to_vec()
    };

    // flag rule
    let old_flag = p.flag_chain();
    let (anchor_v, old_anchor_count, flag_dart, candidates) = match anchor {
        FlagAnchor::Start => {
            let a = old_flag[0];
            let count = p.chains().iter().filter(|c| c.first() == Some(&a)).count();
            let fd = (old_flag.len() >= 2).then(|| (old_flag[0], old_flag[1]));
            (a, count, fd, outs[a].clone())
        }
        FlagAnchor::End => {
            let a = *old_flag.last().unwrap();
            let count = p.chains().iter().filter(|c| c.last() == Some(&a)).count();
            let fd = (old_flag.len() >= 2)
                .then(|| (old_flag[old_flag.len() - 2], old_flag[old_flag.len() - 1]));
            (a, count, fd, ins[a].clone())
        }
    };
    let starts_at = |c: &Vec<usize>| match anchor {
        FlagAnchor::Start => c.first() == Some(&anchor_v),
        FlagAnchor::End => c.last() == Some(&anchor_v),
    };
    let first_dart_is = |c: &Vec<usize>, d: (usize, usize)| match anchor {
        FlagAnchor::Start => c.len() >= 2 && (c[0], c[1]) == d,
        FlagAnchor::End => c.len() >= 2 && (c[c.len() - 2], c[c.len() - 1]) == d,
    };
    let new_flag = if old_anchor_count == 1 {
        let hits: Vec<usize> = (0..new_chains.len())
            .filter(|&i| starts_at(&new_chains[i]))
            .collect();
        match hits.as_slice() {
            [i] => *i,
            _ => {
                return Err(Error::Reconstruction(format!(
                    "expected a unique chain at vertex {anchor_v}, found {}",
                    hits.len()
                )))
            }
        }
    } else {
        let other_dart = candidates.iter().copied().find(|&d| Some(d) != flag_dart);
        match other_dart {
            Some(d) => (0..new_chains.len())
                .find(|&i| first_dart_is(&new_chains[i], d))
                .ok_or_else(|| {
                    Error::Reconstruction(format!("no chain uses dart {d:?} as its flag edge"))
                })?,
            None => (0..new_chains.len())
                .find(|&i| new_chains[i] == [anchor_v])
                .ok_or_else(|| {
                    Error::Reconstruction(format!("no trivial chain at vertex {anchor_v}"))
                })?,
        }
    };

    let raw = Pcdd::from_parts(m, p.darts().iter().copied(), new_chains, new_flag)?;
    bijections::canonicalize_pcdd(&raw)
}

fn old_single(old: &[(Dart, Dart)], v: usize) -> Result<(Dart, Dart)> {
    match old {
        [pair] => Ok(*pair),
        _ => Err(Error::Reconstruction(format!(
            "vertex {v} has {} pairings, expected 1",
            old.len()
        ))),
    }
}

fn rebuild_chains(m: usize, darts: &[Dart], next: &HashMap<Dart, Dart>) -> Vec<Vec<usize>> {
    let successors: std::collections::HashSet<Dart> = next.values().copied().collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut heads: Vec<Dart> = darts
        .iter()
        .copied()
        .filter(|d| !successors.contains(d))
        .collect();
    heads.sort_unstable();
    for head in heads {
        let mut seq = vec![head.0, head.1];
        let mut cur = head;
        while let Some(&nxt) = next.get(&cur) {
            seq.push(nxt.1);
            cur = nxt;
        }
        chains.push(seq);
    }
    let mut membership = vec![0u32; m];
    for chain in &chains {
        for &v in chain {
            membership[v] += 1;
        }
    }
    for (v, &count) in membership.iter().enumerate() {
        for _ in count..2 {
            chains.push(vec![v]);
        }
    }
    chains
}
