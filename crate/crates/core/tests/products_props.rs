use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qchrom::products::{product_degree, LexParams};
use qchrom::{
    build_cayley, build_hadamard, dense_spectrum, hadamard_product_chromatic, product_bound,
    product_connection_set, product_graph, product_spectrum, spectrum_by_characters, Ambient,
    CayleyGraphSpec, Component, ConnectionSet, HadamardParams, ProductKind,
};

fn spec(dim: usize, mask: u64) -> CayleyGraphSpec {
    let words = (1..1u64 << dim).filter(|w| mask >> (w - 1) & 1 == 1);
    let conn = ConnectionSet::from_bits(dim, words).unwrap();
    CayleyGraphSpec::new(dim, conn, Ambient::Coordinates).unwrap()
}

fn random_spec(rng: &mut ChaCha8Rng, dim: usize) -> CayleyGraphSpec {
    let nonzero = (1u64 << dim) - 1;
    spec(dim, rng.gen_range(1..1u64 << nonzero))
}

fn assert_consistent(a: &CayleyGraphSpec, b: &CayleyGraphSpec, kind: ProductKind) {
    let via_sets = build_cayley(&product_connection_set(a, b, kind).unwrap()).unwrap();
    let via_graphs = product_graph(&build_cayley(a).unwrap(), &build_cayley(b).unwrap(), kind).unwrap();
    assert!(via_sets.same_adjacency(&via_graphs), "{kind}");
}

#[test]
fn connection_set_products_match_graph_products_3x3() {
    let specs: Vec<CayleyGraphSpec> = (1..1u64 << 7).map(|m| spec(3, m)).collect();
    let graphs: Vec<_> = specs.iter().map(|s| build_cayley(s).unwrap()).collect();
    for kind in ProductKind::ALL {
        for (a, ga) in specs.iter().zip(&graphs) {
            for (b, gb) in specs.iter().zip(&graphs) {
                let via_sets = build_cayley(&product_connection_set(a, b, kind).unwrap()).unwrap();
                assert!(via_sets.same_adjacency(&product_graph(ga, gb, kind).unwrap()));
            }
        }
    }
}

#[test]
fn connection_set_products_match_graph_products_5x3_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let a = random_spec(&mut rng, 5);
        let b = random_spec(&mut rng, 3);
        for kind in ProductKind::ALL {
            assert_consistent(&a, &b, kind);
            assert_consistent(&b, &a, kind);
        }
    }
}

#[test]
fn product_spectrum_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (da, db) in [(3, 3), (2, 4), (3, 2)] {
        for _ in 0..6 {
            let a = random_spec(&mut rng, da);
            let b = random_spec(&mut rng, db);
            let (sa, sb) = (spectrum_by_characters(&a).unwrap(), spectrum_by_characters(&b).unwrap());
            let lex = LexParams::from_spec(&b);
            for kind in ProductKind::ALL {
                let exact = product_spectrum(&sa, &sb, kind, Some(&lex)).unwrap();
                let g = product_graph(&build_cayley(&a).unwrap(), &build_cayley(&b).unwrap(), kind).unwrap();
                assert!(dense_spectrum(&g, 1e-6).unwrap().matches(&exact, 1e-8), "{kind}");
            }
        }
    }
}

#[test]
fn hadamard_products_match_dense_oracle() {
    let spec4 = CayleyGraphSpec::hadamard_even(4).unwrap();
    let s4 = spectrum_by_characters(&spec4).unwrap();
    let g4 = build_hadamard(HadamardParams::new(4, Component::Even)).unwrap();
    let lex = LexParams::hadamard(4).unwrap();
    for kind in ProductKind::ALL {
        let exact = product_spectrum(&s4, &s4, kind, Some(&lex)).unwrap();
        let g = product_graph(&g4, &g4, kind).unwrap();
        assert!(dense_spectrum(&g, 1e-6).unwrap().matches(&exact, 1e-8), "{kind}");
    }
}

#[test]
fn degrees_follow_the_product_rules() {
    for (n, m) in [(4usize, 4usize), (4, 8), (8, 4)] {
        let g = build_hadamard(HadamardParams::new(n, Component::Even)).unwrap();
        let h = build_hadamard(HadamardParams::new(m, Component::Even)).unwrap();
        let (dg, dh) = (g.regular_degree().unwrap(), h.regular_degree().unwrap());
        for kind in ProductKind::ALL {
            let p = product_graph(&g, &h, kind).unwrap();
            assert_eq!(p.regular_degree(), Some(product_degree(kind, dg, dh, h.size())), "{kind} {n} {m}");
        }
    }
}

#[test]
fn categorical_bound_is_min_order() {
    for (n, m) in [(4usize, 4usize), (8, 4), (8, 8), (12, 4), (12, 8)] {
        let r = hadamard_product_chromatic(n, m, ProductKind::Categorical).unwrap();
        assert_eq!(r.bound.integer_bound(), &BigInt::from(n.min(m)));
        assert!(r.bound.hoffman.ratio_bound.is_integer());
        assert_eq!(r.exact, Some(BigInt::from(n.min(m))));
    }
}

#[test]
fn lexicographic_bound_exceeds_first_factor() {
    for (n, m) in [(8usize, 4usize), (12, 4), (12, 8)] {
        let r = hadamard_product_chromatic(n, m, ProductKind::Lexicographic).unwrap();
        assert!(r.bound.integer_bound() >= &BigInt::from(n + 1));
        assert_eq!(r.exceeds_first_factor, Some(true));
    }
}

#[test]
fn bound_fields_are_consistent() {
    let s8 = spectrum_by_characters(&CayleyGraphSpec::hadamard_even(8).unwrap()).unwrap();
    let s4 = spectrum_by_characters(&CayleyGraphSpec::hadamard_even(4).unwrap()).unwrap();
    let lex = LexParams::hadamard(4).unwrap();
    for kind in ProductKind::ALL {
        let r = product_bound(kind, &s8, &s4, Some(&lex)).unwrap();
        assert_eq!(r.product_spectrum.total(), s8.total() * s4.total());
        assert_eq!(r.hoffman, qchrom::hoffman_bound(&r.product_spectrum).unwrap());
    }
}
