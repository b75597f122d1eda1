//! Exhaustive, deterministic generation of the four families at a given
//! size, and the exact generalized Catalan count behind them.
//!
//! Dissections are produced by the unique root-cell factorization (the cell
//! touching the polygon side `1 2` splits the polygon into three smaller
//! dissections), so no deduplication is ever needed; the other families are
//! images of that enumeration. Every generator yields its family in a
//! canonical sorted order.

use crate::bijections::{medial, phi};
use crate::error::{Error, Result};
use crate::model::{NctLabeledTree, Pcdd, QuadDissection, TernaryTree};
use crate::symmetry::ternary_star;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The generalized Catalan number `C(3(n-1), n-1) / (2n-1)` counting all
/// four families at size `n`.
pub fn nu(n: u32) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::Argument("size must be at least 1".into()));
    }
    let top = binomial(3 * (n as u64 - 1), n as u64 - 1);
    let d = BigUint::from(2 * n as u64 - 1);
    debug_assert!((&top % &d).is_zero());
    Ok(top / d)
}

/// Diagonal lists of all dissections at sizes `1..=n`, in local labels.
fn diagonal_lists(n: u32) -> Vec<Vec<Vec<(u32, u32)>>> {
    let mut memo: Vec<Vec<Vec<(u32, u32)>>> = vec![Vec::new(), vec![Vec::new()]];
    for size in 2..=n {
        let mut level = Vec::new();
        for c in 1..size {
            for b in 1..=size - c {
                let a = size + 1 - b - c;
                if a < 1 {
                    continue;
                }
                let mm = b + c;
                for ql in &memo[a as usize] {
                    for qm in &memo[b as usize] {
                        for qr in &memo[c as usize] {
                            let mut diags = Vec::with_capacity(size as usize - 2);
                            if c >= 2 {
                                diags.push((2, 2 * c + 1));
                            }
                            if b >= 2 {
                                diags.push((2 * c + 1, 2 * mm));
                            }
                            if a >= 2 {
                                diags.push((1, 2 * mm));
                            }
                            for &(u, v) in qr {
                                let f = |x: u32| if x == 1 { 2 * c + 1 } else { x };
                                diags.push((f(u), f(v)));
                            }
                            for &(u, v) in qm {
                                let f = |x: u32| if x == 1 { 2 * mm } else { x + 2 * c - 1 };
                                diags.push((f(u), f(v)));
                            }
                            for &(u, v) in ql {
                                let f = |x: u32| if x == 1 { 1 } else { x + 2 * mm - 2 };
                                diags.push((f(u), f(v)));
                            }
                            level.push(diags);
                        }
                    }
                }
            }
        }
        memo.push(level);
    }
    memo
}

/// All dissections of the `2n`-gon, sorted.
pub fn gen_dissections(n: u32) -> impl Iterator<Item = QuadDissection> {
    assert!(n >= 1, "size must be at least 1");
    let mut memo = diagonal_lists(n);
    let mut out: Vec<QuadDissection> = memo
        .swap_remove(n as usize)
        .into_iter()
        .map(|d| QuadDissection::new(n, d).expect("generated dissection is valid"))
        .collect();
    out.sort_unstable();
    out.into_iter()
}

/// All non-crossing trees on `n` vertices, sorted by edge list.
pub fn gen_ncts(n: u32) -> impl Iterator<Item = NctLabeledTree> {
    let mut out: Vec<NctLabeledTree> = gen_dissections(n)
        .map(|q| phi(&q).expect("generated dissection maps to a tree"))
        .collect();
    out.sort_unstable();
    out.into_iter()
}

fn ternary_lists(m: u32) -> Vec<Vec<TernaryTree>> {
    let mut memo: Vec<Vec<TernaryTree>> = vec![vec![TernaryTree::Leaf]];
    for size in 1..=m {
        let mut level = Vec::new();
        for i in 0..size {
            for j in 0..size - i {
                let k = size - 1 - i - j;
                for l in &memo[i as usize] {
                    for mid in &memo[j as usize] {
                        for r in &memo[k as usize] {
                            level.push(TernaryTree::node(l.clone(), mid.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        memo.push(level);
    }
    memo
}

/// All ternary trees with `m` internal vertices, sorted.
pub fn gen_ternary(m: u32) -> impl Iterator<Item = TernaryTree> {
    let mut out = ternary_lists(m).swap_remove(m as usize);
    out.sort_unstable();
    out.into_iter()
}

/// All flagged chain-decomposed ditrees on `m` vertices, sorted; medial
/// images of the trees on `m+1` vertices.
pub fn gen_pcdds(m: u32) -> impl Iterator<Item = Pcdd> {
    let mut out: Vec<Pcdd> = gen_ncts(m + 1).map(|t| medial(&t)).collect();
    out.sort_unstable();
    out.into_iter()
}

/// All self-dual ternary trees with `m` internal vertices, generated
/// structurally as `Node(t0, t1, t0*)` with `t1` self-dual.
pub fn gen_self_dual_ternary(m: u32) -> impl Iterator<Item = TernaryTree> {
    let ternary = ternary_lists(m.saturating_sub(1));
    let mut self_dual: Vec<Vec<TernaryTree>> = vec![vec![TernaryTree::Leaf]];
    for size in 1..=m {
        let mut level = Vec::new();
        let mut a = 0;
        while 1 + 2 * a < size + 1 {
            let b = size - 1 - 2 * a;
            for t0 in &ternary[a as usize] {
                for t1 in &self_dual[b as usize] {
                    level.push(TernaryTree::node(t0.clone(), t1.clone(), ternary_star(t0)));
                }
            }
            a += 1;
        }
        self_dual.push(level);
    }
    let mut out = self_dual.swap_remove(m as usize);
    out.sort_unstable();
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_qd;

    #[test]
    fn nu_values() {
        assert_eq!(nu(1).unwrap(), BigUint::from(1u32));
        assert_eq!(nu(5).unwrap(), BigUint::from(55u32));
        assert_eq!(nu(6).unwrap(), BigUint::from(273u32));
        assert!(nu(0).is_err());
    }

    #[test]
    fn nu_satisfies_fusion_recursion() {
        for n in 2..=12u32 {
            let mut sum = BigUint::zero();
            for a in 1..n {
                for b in 1..n {
                    let c = (n + 1).saturating_sub(a + b);
                    if c >= 1 {
                        sum += nu(a).unwrap() * nu(b).unwrap() * nu(c).unwrap();
                    }
                }
            }
            assert_eq!(sum, nu(n).unwrap(), "recursion at {n}");
        }
    }

    #[test]
    fn gen_ncts_small() {
        let n2: Vec<_> = gen_ncts(2).collect();
        assert_eq!(n2, vec![NctLabeledTree::new(2, [(1, 2)]).unwrap()]);
        let n3: Vec<_> = gen_ncts(3).collect();
        assert_eq!(
            n3,
            vec![
                NctLabeledTree::new(3, [(1, 2), (1, 3)]).unwrap(),
                NctLabeledTree::new(3, [(1, 2), (2, 3)]).unwrap(),
                NctLabeledTree::new(3, [(1, 3), (2, 3)]).unwrap(),
            ]
        );
    }

    #[test]
    fn gen_ncts_matches_spanning_tree_filter() {
        // independent oracle: every edge subset that is a non-crossing
        // spanning tree, by brute force over all chord subsets
        for n in 2..=6u32 {
            let mut chords = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    chords.push((a, b));
                }
            }
            let mut expected = Vec::new();
            for mask in 0u32..1 << chords.len() {
                if mask.count_ones() != n - 1 {
                    continue;
                }
                let edges: Vec<(u32, u32)> = chords
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                if crate::model::validate_nct(n, &edges).is_ok() {
                    expected.push(NctLabeledTree::new(n, edges).unwrap());
                }
            }
            expected.sort_unstable();
            let generated: Vec<_> = gen_ncts(n).collect();
            assert_eq!(generated, expected, "n = {n}");
        }
    }

    #[test]
    fn gen_dissections_small() {
        let q3: Vec<_> = gen_dissections(3).collect();
        assert_eq!(
            q3,
            vec![
                QuadDissection::new(3, [(1, 4)]).unwrap(),
                QuadDissection::new(3, [(2, 5)]).unwrap(),
                QuadDissection::new(3, [(3, 6)]).unwrap(),
            ]
        );
        assert_eq!(
            gen_dissections(2).collect::<Vec<_>>(),
            vec![QuadDissection::new(2, []).unwrap()]
        );
        let fig = QuadDissection::new(5, [(1, 4), (5, 8), (5, 10)]).unwrap();
        assert!(gen_dissections(5).any(|q| q == fig));
    }

    #[test]
    fn generated_families_have_nu_cardinality() {
        for n in 1..=7u32 {
            let count = nu(n).unwrap();
            assert_eq!(BigUint::from(gen_ncts(n).count()), count);
            assert_eq!(BigUint::from(gen_dissections(n).count()), count);
            assert_eq!(BigUint::from(gen_ternary(n - 1).count()), count);
            assert_eq!(BigUint::from(gen_pcdds(n - 1).count()), count);
        }
    }

    #[test]
    fn generated_dissections_are_valid_and_distinct() {
        for n in 1..=6u32 {
            let all: Vec<_> = gen_dissections(n).collect();
            for q in &all {
                assert!(validate_qd(q.n(), q.diagonals()).is_ok());
            }
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn gen_ternary_small() {
        assert_eq!(gen_ternary(0).collect::<Vec<_>>(), vec![TernaryTree::Leaf]);
        assert_eq!(gen_ternary(2).count(), 3);
        let p: Vec<_> = gen_pcdds(1).collect();
        assert_eq!(p, vec![Pcdd::point()]);
    }

    #[test]
    fn gen_self_dual_examples() {
        assert_eq!(
            gen_self_dual_ternary(0).collect::<Vec<_>>(),
            vec![TernaryTree::Leaf]
        );
        let m2: Vec<_> = gen_self_dual_ternary(2).collect();
        assert_eq!(
            m2,
            vec![crate::codec::parse_ternary("(* (* * *) *)").unwrap()]
        );
        assert_eq!(gen_self_dual_ternary(5).count(), 7);
    }

    #[test]
    fn gen_self_dual_matches_star_filter() {
        for m in 0..=7u32 {
            let structural: Vec<_> = gen_self_dual_ternary(m).collect();
            let filtered: Vec<_> = gen_ternary(m).filter(|t| ternary_star(t) == *t).collect();
            assert_eq!(structural, filtered, "m = {m}");
        }
    }
}
