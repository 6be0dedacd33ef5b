mod common;

use common::{e, edge_ids, load, question, w, FIXTURES};
use splitkit::engine::{amalgamate, check_criterion, chain_certificate, mod_witness, twist_orbit_distinct, verify_chain};
use splitkit::{Automorphism, ChainCertificate, Subgraph, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn placement_dichotomy() {
    let s = load("placement_loop");
    let v = check_criterion(&s.graph, &question(&s, "b", "c")).unwrap();
    assert!(!v.criterion_met);
    let (i, j) = v.failures[0];
    let meet = v.b_blocks[i].subgraph.intersection(&v.c_blocks[j].subgraph);
    assert_eq!(edge_ids(&s.graph, &meet), ["e_UZ", "e_VZ"]);

    let s = load("placement_edge");
    let v = check_criterion(&s.graph, &question(&s, "b", "c")).unwrap();
    assert!(v.criterion_met);
    assert!(v.certificate.is_some());
}

#[test]
fn star_verdict_and_chain() {
    let s = load("star");
    let q = question(&s, "b", "c");
    let v = check_criterion(&s.graph, &q).unwrap();
    assert!(v.criterion_met, "{:?}", v.failures);
    let cert = chain_certificate(&s.graph, &q).unwrap().expect("chain");
    eprintln!("{}", cert.to_json(&s.graph));
    assert_eq!(cert.chain.len(), 3);
}

#[test]
fn chain_fixture_order() {
    let s = load("chain");
    let q = question(&s, "b", "c");
    let v = check_criterion(&s.graph, &q).unwrap();
    assert!(v.criterion_met, "{:?}", v.failures);
    let cert = chain_certificate(&s.graph, &q).unwrap().expect("chain");
    eprintln!("{}", cert.to_json(&s.graph));
    assert!(verify_chain(&s.graph, &cert));
}

#[test]
fn star_witness_grid() {
    let s = load("star");
    let g = &s.graph;
    let q = question(&s, "b", "c");
    let edges = ["e_RZ", "e_VZ", "e_ZW", "e_UZ"].map(|x| e(g, x));
    let z = w(g, "z");
    let b = w(g, "w");
    for k in 0..625 {
        let ks = [k % 5, k / 5 % 5, k / 25 % 5, k / 125].map(|x| x as i64 - 2);
        let twists: Vec<(usize, i64)> = edges.iter().copied().zip(ks).collect();
        let alpha = mod_witness(g, &q, &twists, &z.pow(-ks[0])).unwrap().unwrap_or_else(|| panic!("{ks:?}"));
        assert_eq!(alpha.apply_all(&q.c).unwrap(), q.c);
        assert_eq!(alpha.apply(&b).unwrap(), b.conjugate_by(&z.pow(ks[2] - ks[0])));
        assert_eq!(alpha.apply(&w(g, "t")).unwrap(), w(g, "t").mul(&z.pow(ks[0] - ks[2])));
    }
}

#[test]
fn twist_examples() {
    let s = load("star");
    let g = &s.graph;
    let tau = Automorphism::dehn_twist(g, e(g, "e_ZW"), 1).unwrap();
    for x in ["z", "r", "u", "v", "t"] {
        assert_eq!(tau.apply(&w(g, x)).unwrap(), w(g, x));
    }
    assert_eq!(tau.apply(&w(g, "w")).unwrap(), w(g, "zwZ"));
    assert_eq!(Automorphism::dehn_twist(g, e(g, "e_ZW"), 0).unwrap(), Automorphism::identity(g.rank()));
    assert!(Automorphism::dehn_twist(g, e(g, "e_t"), 1).is_err());
    let a = Automorphism::dehn_twist(g, e(g, "e_RZ"), 2).unwrap();
    let b = Automorphism::dehn_twist(g, e(g, "e_RZ"), -5).unwrap();
    assert_eq!(a.compose(&b).unwrap(), Automorphism::dehn_twist(g, e(g, "e_RZ"), -3).unwrap());
}

#[test]
fn edge_placement_amalgam() {
    let s = load("placement_edge");
    let am = amalgamate(&s.graph, &s.graph).unwrap();
    let g = &am.graph;
    assert_eq!(g.rank(), 5);
    assert!(g.validate_normalized().passed());
    let b = s.tuple("b").unwrap().to_vec();
    let c2: Vec<Word> = s.tuple("c").unwrap().iter().map(|x| am.rename(x)).collect();
    let q = splitkit::Question::new(&s.params, &b, &c2, s.options);
    assert!(check_criterion(g, &q).unwrap().criterion_met);
    let b2: Vec<Word> = b.iter().map(|x| am.rename(x)).collect();
    assert_ne!(b2, b);
    let mismatch = load("star");
    assert!(amalgamate(&s.graph, &mismatch.graph).is_err());
}

#[test]
fn star_orbit() {
    let s = load("star");
    let g = &s.graph;
    let (r, x) = (w(g, "r"), w(g, "w"));
    assert!(twist_orbit_distinct(g, e(g, "e_ZW"), (&r, &x), 8).unwrap());
    assert!(twist_orbit_distinct(g, e(g, "e_ZW"), (&r, &x), 0).unwrap());
    let z = w(g, "z");
    assert!(twist_orbit_distinct(g, e(g, "e_ZW"), (&z, &z.pow(2)), 3).is_err());
}

#[test]
fn criterion_is_symmetric() {
    for name in FIXTURES {
        let s = load(name);
        let q = question(&s, "b", "c");
        let ab = check_criterion(&s.graph, &q).unwrap().criterion_met;
        let ba = check_criterion(&s.graph, &q.swapped()).unwrap().criterion_met;
        assert_eq!(ab, ba, "{name}");
    }
}

#[test]
fn certificates_whenever_criterion_holds() {
    for name in FIXTURES {
        let s = load(name);
        let v = check_criterion(&s.graph, &question(&s, "b", "c")).unwrap();
        if v.criterion_met {
            assert!(verify_chain(&s.graph, v.certificate.as_ref().expect(name)), "{name}");
        }
    }
}

#[test]
fn c_inside_parameters_gives_two_step_chain() {
    let s = load("star");
    let q = splitkit::Question::new(&s.params, s.tuple("b").unwrap(), &[w(&s.graph, "rr")], s.options);
    let cert = chain_certificate(&s.graph, &q).unwrap().unwrap();
    assert_eq!(cert.chain.len(), 2);
    assert_eq!(cert.b_parts, vec![vec![w(&s.graph, "w")]]);
}

fn tampered(cert: &ChainCertificate, f: impl FnOnce(&mut ChainCertificate)) -> ChainCertificate {
    let mut c = cert.clone();
    f(&mut c);
    c
}

#[test]
fn verify_chain_rejects_planted_violations() {
    let s = load("chain");
    let g = &s.graph;
    let cert = chain_certificate(g, &question(&s, "b", "c")).unwrap().unwrap();
    // non-monotone
    assert!(!verify_chain(g, &tampered(&cert, |c| c.chain.swap(2, 3))));
    // the block of gdG pulled down to the first b stratum straddles Δ₂
    assert!(!verify_chain(g, &tampered(&cert, |c| {
        let moved = c.b_parts[2].clone();
        c.b_parts[1].extend(moved);
        c.b_parts[2].clear();
    })));
    // a term missing from every part
    assert!(!verify_chain(g, &tampered(&cert, |c| c.c_parts[1].clear())));
    // Δ₀ not the base vertex
    assert!(!verify_chain(g, &tampered(&cert, |c| c.chain[0] = Subgraph::whole(g))));
    // a stratum whose F_A part is disconnected
    assert!(!verify_chain(g, &tampered(&cert, |c| {
        let mut d = c.chain[3].clone();
        d.edges.remove(&e(g, "e3"));
        c.chain[3] = d;
    })));
    assert!(verify_chain(g, &cert));
}

#[test]
fn witness_trivial_cases() {
    let s = load("star");
    let g = &s.graph;
    let q = question(&s, "b", "c");
    let alpha = mod_witness(g, &q, &[], &Word::identity()).unwrap().unwrap();
    assert_eq!(alpha, Automorphism::identity(g.rank()));
    let twists: Vec<(usize, i64)> = ["e_RZ", "e_VZ", "e_ZW", "e_UZ"].iter().map(|x| (e(g, x), 5)).collect();
    let alpha = mod_witness(g, &q, &twists, &w(g, "z").pow(-5)).unwrap().unwrap();
    let theta = Automorphism::twist_product(g, &twists, &w(g, "z").pow(-5)).unwrap();
    assert_eq!(alpha.apply_all(&q.c).unwrap(), q.c);
    assert_eq!(alpha.apply_all(&q.b).unwrap(), theta.apply_all(&q.b).unwrap());
    // the loop placement fails the criterion, so no witness is promised
    let s = load("placement_loop");
    assert!(mod_witness(&s.graph, &question(&s, "b", "c"), &[], &Word::identity()).unwrap().is_none());
}

#[test]
fn automorphism_inverse_roundtrip() {
    let s = load("star");
    let g = &s.graph;
    let phi = Automorphism::twist_product(g, &[(e(g, "e_ZW"), 2), (e(g, "e_UZ"), -1)], &w(g, "rt")).unwrap();
    let inv = phi.inverse().unwrap();
    assert_eq!(phi.compose(&inv).unwrap(), Automorphism::identity(g.rank()));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let x = common::oracle::random_word(&mut rng, g.rank(), 12);
        assert_eq!(inv.apply(&phi.apply(&x).unwrap()).unwrap(), x);
    }
    assert!(Automorphism::identity(2).apply(&w(g, "t")).is_err());
    assert!(Automorphism::new(vec![w(g, "z"), w(g, "z")]).is_err());
}

#[test]
fn twists_are_automorphisms_fixing_roots() {
    for name in FIXTURES {
        let s = load(name);
        let g = &s.graph;
        for f in g.fa_edges() {
            for k in [-3, -1, 1, 2] {
                let tau = Automorphism::dehn_twist(g, f, k).unwrap();
                assert!(tau.is_automorphism(), "{name} {}", g.edge(f).id);
                let (rho, _) = splitkit::word::root(&g.edge(f).generator).unwrap();
                assert_eq!(tau.apply(&rho).unwrap(), rho);
            }
        }
    }
}
