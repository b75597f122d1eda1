//! Property tests over randomly drawn members of the exhaustively
//! generated families.

use catmirror::bijections::{fuse_nct, unfuse_nct};
use catmirror::codec::{self, Object};
use catmirror::generators::{gen_dissections, gen_ncts, gen_pcdds, gen_ternary};
use catmirror::symmetry::{nct_barstar, nct_rotate, nct_star, ternary_star};
use catmirror::{DihedralElement, NctLabeledTree, Pcdd, QuadDissection, TernaryTree};
use proptest::prelude::*;
use std::sync::OnceLock;

fn trees() -> &'static Vec<NctLabeledTree> {
    static POOL: OnceLock<Vec<NctLabeledTree>> = OnceLock::new();
    POOL.get_or_init(|| {
        (1..=6)
            .flat_map(|n| gen_ncts(n).collect::<Vec<_>>())
            .collect()
    })
}

fn dissections() -> &'static Vec<QuadDissection> {
    static POOL: OnceLock<Vec<QuadDissection>> = OnceLock::new();
    POOL.get_or_init(|| {
        (1..=6)
            .flat_map(|n| gen_dissections(n).collect::<Vec<_>>())
            .collect()
    })
}

fn ternaries() -> &'static Vec<TernaryTree> {
    static POOL: OnceLock<Vec<TernaryTree>> = OnceLock::new();
    POOL.get_or_init(|| {
        (0..=5)
            .flat_map(|m| gen_ternary(m).collect::<Vec<_>>())
            .collect()
    })
}

fn pcdds() -> &'static Vec<Pcdd> {
    static POOL: OnceLock<Vec<Pcdd>> = OnceLock::new();
    POOL.get_or_init(|| {
        (0..=5)
            .flat_map(|m| gen_pcdds(m).collect::<Vec<_>>())
            .collect()
    })
}

proptest! {
    #[test]
    fn text_round_trip_any_object(which in 0usize..4, idx in any::<prop::sample::Index>()) {
        let obj = match which {
            0 => Object::Nct(idx.get(trees()).clone()),
            1 => Object::Qd(idx.get(dissections()).clone()),
            2 => Object::Ternary(idx.get(ternaries()).clone()),
            _ => Object::Pcdd(idx.get(pcdds()).clone()),
        };
        let line = codec::format_object(&obj);
        prop_assert_eq!(codec::parse_line(&line).unwrap(), obj.clone());
        let json = codec::to_json(&obj).to_string();
        prop_assert_eq!(codec::parse_json(&json).unwrap(), obj);
    }

    #[test]
    fn fusion_round_trip(idx in any::<prop::sample::Index>()) {
        let t = idx.get(trees());
        if t.n() >= 2 {
            let triple = unfuse_nct(t).unwrap();
            prop_assert_eq!(&fuse_nct(&triple), t);
            let again = unfuse_nct(&fuse_nct(&triple)).unwrap();
            prop_assert_eq!(again, triple);
        }
    }

    #[test]
    fn dihedral_action_laws(
        idx in any::<prop::sample::Index>(),
        k1 in 0i64..16, f1 in any::<bool>(),
        k2 in 0i64..16, f2 in any::<bool>(),
    ) {
        let q = idx.get(dissections());
        let two_n = q.polygon_size();
        let g = DihedralElement::new(two_n, k1, f1).unwrap();
        let h = DihedralElement::new(two_n, k2, f2).unwrap();
        let composed = g.compose(&h).unwrap();
        prop_assert_eq!(
            composed.apply(q).unwrap(),
            g.apply(&h.apply(q).unwrap()).unwrap()
        );
        prop_assert_eq!(
            g.inverse().apply(&g.apply(q).unwrap()).unwrap(),
            q.clone()
        );
        prop_assert_eq!(
            DihedralElement::identity(two_n).apply(q).unwrap(),
            q.clone()
        );
    }

    #[test]
    fn dualities_are_involutions(idx in any::<prop::sample::Index>()) {
        let t = idx.get(trees());
        prop_assert_eq!(nct_star(&nct_star(t)), t.clone());
        prop_assert_eq!(nct_barstar(&nct_barstar(t)), t.clone());
        prop_assert_eq!(nct_rotate(&nct_rotate(t, 3), -3), t.clone());
    }

    #[test]
    fn ternary_star_involution_preserves_size(idx in any::<prop::sample::Index>()) {
        let t = idx.get(ternaries());
        let starred = ternary_star(t);
        prop_assert_eq!(starred.internal_count(), t.internal_count());
        prop_assert_eq!(ternary_star(&starred), t.clone());
    }
}
