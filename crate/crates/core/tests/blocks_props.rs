use num_bigint::BigInt;
use num_integer::Integer;
use pseudou::conformal_blocks::*;
use pseudou::cyclo_exact::RootOfUnity;
use pseudou::recurrences::{builtin_spec, extend};

fn k33() -> TrivalentGraph {
    TrivalentGraph::new(6, vec![(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
}

fn prism() -> TrivalentGraph {
    TrivalentGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
}

fn graphs(g: usize) -> Vec<TrivalentGraph> {
    match g {
        2 => vec![TrivalentGraph::theta(), TrivalentGraph::dumbbell(), TrivalentGraph::chain(2)],
        3 => vec![TrivalentGraph::tripod(), TrivalentGraph::k4(), TrivalentGraph::chain(3)],
        4 => vec![TrivalentGraph::chain(4), k33(), prism()],
        _ => unreachable!(),
    }
}

#[test]
fn graph_independence() {
    for g in 2..=4 {
        for p in [5u64, 7, 9] {
            if g == 4 && p == 9 {
                continue;
            }
            for z in primitive_classes(p) {
                let tables = SignTables::new(p, z).unwrap();
                let recs: Vec<_> = graphs(g).iter().map(|gr| signature_with(gr, &tables).unwrap()).collect();
                for r in &recs[1..] {
                    assert_eq!((&r.n, &r.sigma), (&recs[0].n, &recs[0].sigma), "g={g}, p={p}, {z}");
                }
                assert_eq!(recs[0].n, dim_blocks(g, p).unwrap());
            }
        }
    }
}

#[test]
fn even_level_counts_are_graph_independent() {
    for g in 2..=4 {
        for k in 2..=6u64 {
            let counts: Vec<BigInt> =
                graphs(g).iter().map(|gr| count_admissible(gr, k, ColorRule::Even)).collect();
            assert!(counts.iter().all(|c| *c == counts[0]), "g={g}, k={k}: {counts:?}");
            assert_eq!(Some(counts[0].clone()), zagier(g, k));
        }
    }
}

#[test]
fn signature_bookkeeping() {
    for p in [5u64, 7, 9, 11, 13] {
        for g in 1..=3 {
            for z in primitive_classes(p) {
                let r = signature(g, p, z).unwrap();
                assert_eq!(&r.h_plus + &r.h_minus, r.n);
                assert_eq!(&r.h_plus - &r.h_minus, r.sigma);
                assert!(r.sigma.is_odd() == r.n.is_odd(), "sigma and N differ mod 2");
                assert!(r.sigma <= r.n && -&r.sigma <= r.n);
                let conj = signature(g, p, z.conj()).unwrap();
                assert_eq!(conj.sigma, r.sigma);
            }
        }
    }
}

#[test]
fn unitary_class_is_definite() {
    for p in [5u64, 7, 9, 11, 13] {
        for g in 1..=3 {
            let r = signature(g, p, unitary_class(p)).unwrap();
            assert_eq!(r.sigma, r.n, "p={p}, g={g}");
        }
    }
}

#[test]
fn genus_one_is_positive() {
    for p in [5u64, 7, 9, 11] {
        for z in primitive_classes(p) {
            let r = signature(1, p, z).unwrap();
            assert_eq!(r.h_minus, BigInt::from(0));
            assert_eq!(r.n, BigInt::from((p - 1) / 2));
        }
    }
}

#[test]
fn enumeration_continues_the_recurrence() {
    // one term past the range used in the acceptance checks
    for (p, e) in [(5u64, 1u64), (5, 3)] {
        let seq = extend(&builtin_spec(p, e).unwrap(), 6);
        let z = RootOfUnity::new(2 * p, e as i64).unwrap();
        assert_eq!(signature(6, p, z).unwrap().sigma, seq[5]);
    }
}

#[test]
fn level_five_dimensions() {
    for g in 1..=9 {
        let n = dim_blocks(g, 5).unwrap();
        assert_eq!(n, n5_recurrence(g));
        let rel = (n5_closed_form(g) - n.to_string().parse::<f64>().unwrap()).abs() / n5_closed_form(g);
        assert!(rel < 1e-9);
    }
}

#[test]
fn invalid_inputs() {
    assert!(signature(2, 5, RootOfUnity::new(10, 2).unwrap()).is_err());
    assert!(signature(2, 5, RootOfUnity::new(12, 1).unwrap()).is_err());
    assert!(dim_blocks(0, 5).is_err());
    assert!(dim_blocks(2, 2).is_err());
    assert!(TrivalentGraph::new(2, vec![(0, 1), (0, 1)]).is_err());
}
