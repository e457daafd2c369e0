use std::collections::BTreeSet;

use proptest::prelude::*;
use superhom::delta::{from_simplicial, is_regular, simplicial_closure, validate_delta};
use superhom::homology::{
    embedded_betti, sup_betti, ChainComplex, EmbeddedChainData, HomologyMode,
};
use superhom::{FieldSpec, GradedSubset, SubspaceBasis, SuperHypergraph, VertexOrder};

fn hyperedges() -> impl Strategy<Value = Vec<BTreeSet<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..5), 1..10)
}

fn hypergraph(sets: &[BTreeSet<usize>], order: &VertexOrder) -> SuperHypergraph<Vec<usize>> {
    let x = from_simplicial(&simplicial_closure(sets), order).unwrap();
    let marked: BTreeSet<Vec<usize>> = sets.iter().map(|s| order.sorted(s)).collect();
    let h = GradedSubset::from_cells(x.all_cells().filter(|&c| marked.contains(x.label(c))));
    SuperHypergraph::new(x, h).unwrap()
}

proptest! {
    #[test]
    fn closure_is_down_closed_and_minimal(sets in hyperedges()) {
        let closed = simplicial_closure(&sets);
        let all: BTreeSet<&BTreeSet<usize>> = closed.iter().collect();
        for s in &sets {
            prop_assert!(all.contains(s));
        }
        for s in &closed {
            prop_assert!(sets.iter().any(|t| s.is_subset(t)));
            for v in s {
                let mut face = s.clone();
                face.remove(v);
                prop_assert!(face.is_empty() || all.contains(&face));
            }
        }
        let x = from_simplicial(&closed, &VertexOrder::identity(6)).unwrap();
        prop_assert!(validate_delta(&x).is_ok());
        prop_assert!(is_regular(&SuperHypergraph::whole(x)));
    }

    #[test]
    fn infimum_below_marked_below_supremum(sets in hyperedges(), gf2 in any::<bool>()) {
        let field = if gf2 { FieldSpec::Gf2 } else { FieldSpec::Rational };
        let sh = hypergraph(&sets, &VertexOrder::identity(6));
        let c = ChainComplex::from_delta(&sh.x, field).unwrap();
        let data = EmbeddedChainData::compute(&c, &sh.h).unwrap();
        for n in 0..sh.x.num_dims() {
            let coords = SubspaceBasis::coordinate(field, sh.x.count(n), sh.h.dim_set(n).iter().copied());
            prop_assert!(data.inf[n].is_subspace_of(&coords));
            prop_assert!(coords.is_subspace_of(&data.sup[n]));
            if n > 0 {
                let d = c.boundary(n);
                for v in data.inf[n].vectors() {
                    prop_assert!(data.inf[n - 1].contains(&d.mul_vec(v)));
                }
            }
        }
        let inf = embedded_betti(&sh, field, HomologyMode::Absolute).unwrap();
        prop_assert_eq!(inf, sup_betti(&sh, field).unwrap());
    }

    #[test]
    fn vertex_order_does_not_change_betti(sets in hyperedges(), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let a = hypergraph(&sets, &VertexOrder::identity(6));
        let b = hypergraph(&sets, &VertexOrder::from_sequence(perm).unwrap());
        for mode in HomologyMode::ALL {
            let ba = embedded_betti(&a, FieldSpec::Rational, mode).unwrap();
            let bb = embedded_betti(&b, FieldSpec::Rational, mode).unwrap();
            prop_assert_eq!(ba, bb);
        }
    }

    #[test]
    fn fully_marked_is_ordinary_homology(sets in hyperedges()) {
        let x = from_simplicial(&simplicial_closure(&sets), &VertexOrder::identity(6)).unwrap();
        let sh = SuperHypergraph::whole(x);
        let emb = embedded_betti(&sh, FieldSpec::Gf2, HomologyMode::Absolute).unwrap();
        let amb = embedded_betti(&sh, FieldSpec::Gf2, HomologyMode::Ambient).unwrap();
        prop_assert_eq!(emb, amb);
        let rel = embedded_betti(&sh, FieldSpec::Gf2, HomologyMode::Relative).unwrap();
        prop_assert!(rel.is_zero());
    }
}
