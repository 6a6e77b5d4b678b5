mod common;

use concordance_lab::builder::braid_closure;
use concordance_lab::certificate::CrossingChangeCertificate;
use concordance_lab::diagram::Diagram;
use concordance_lab::engine::{Certificate, External, KnowledgeBase, Obstruction, Verdict};
use concordance_lab::factor::factor_integer_poly;
use concordance_lab::families::{atlas, pretzel_knot, pretzel_matrix, twist_knot, twist_matrix, Clasp, ATLAS_NAMES};
use concordance_lab::invariants::{alexander_polynomial, arf, levine_tristram, signature};
use concordance_lab::moves::{apply_move, simplifying_moves, third_moves, DEFAULT_R3_BUDGET};
use concordance_lab::poly::{IntPoly, LaurentPoly};
use concordance_lab::seifert::SeifertMatrix;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_knot, rng};

type Fingerprint = (LaurentPoly, i64, u8, Vec<Option<i64>>);

/// Concordance-relevant invariants that any two Seifert matrices of the same
/// knot must share.
fn fingerprint(v: &SeifertMatrix) -> Fingerprint {
    let lt = [(1, 7), (2, 7), (3, 7), (1, 3), (5, 12), (1, 10)]
        .iter()
        .map(|&(a, b)| levine_tristram(v, &BigRational::new(a.into(), b.into())).ok())
        .collect();
    (alexander_polynomial(v), signature(v).0, arf(v), lt)
}

fn of_diagram(d: &Diagram) -> Fingerprint {
    fingerprint(&SeifertMatrix::from_diagram(d).unwrap())
}

fn clasp() -> impl Strategy<Value = Clasp> {
    prop_oneof![Just(Clasp::Plus), Just(Clasp::Minus)]
}

fn odd() -> impl Strategy<Value = i64> {
    (-10i64..10).prop_map(|k| 2 * k + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_expands_back(
        roots in prop::collection::vec(-6i64..6, 0..4),
        quad in prop::collection::vec((1i64..4, -5i64..5, 1i64..6), 0..3),
        content in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-6)],
    ) {
        let mut p = IntPoly::from_i64(&[content]);
        for r in &roots {
            p = &p * &IntPoly::from_i64(&[-r, 1]);
        }
        for (a, b, c) in &quad {
            p = &p * &IntPoly::from_i64(&[*c, *b, *a]);
        }
        let f = factor_integer_poly(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
        for (g, e) in &f.factors {
            prop_assert!(*e >= 1 && g.degree() >= 1);
            prop_assert!(g.lc() > 0.into());
            prop_assert_eq!(g.content(), 1.into());
        }
        let linear: usize = f.factors.iter().filter(|(g, _)| g.degree() == 1).map(|(_, e)| e).sum();
        prop_assert!(linear >= roots.len());
    }

    #[test]
    fn twist_diagram_agrees_with_formula(n in -20i64..=20, c in clasp()) {
        let (d, v) = twist_knot(n, c);
        prop_assert_eq!(of_diagram(&d), fingerprint(&v));
        prop_assert_eq!(v, twist_matrix(n, c));
    }

    #[test]
    fn pretzel_diagram_agrees_with_formula(p in odd(), q in odd(), r in odd()) {
        let (d, v) = pretzel_knot(p, q, r).unwrap();
        prop_assert_eq!(of_diagram(&d), fingerprint(&v));
        prop_assert_eq!(v, pretzel_matrix(p, q, r).unwrap());
    }

    #[test]
    fn mirrored_twist_knot_swaps_clasp_and_twist_sign(n in -40i64..=40, c in clasp()) {
        let m = twist_matrix(n, c).mirror();
        let (delta, sig, a, lt) = fingerprint(&m);
        let (delta2, sig2, a2, lt2) = fingerprint(&twist_matrix(-n, c.flip()));
        prop_assert_eq!((delta, sig, a, lt), (delta2, sig2, a2, lt2.clone()));
        let (_, sig0, _, lt0) = fingerprint(&twist_matrix(n, c));
        prop_assert_eq!(sig0, -sig2);
        let negated: Vec<Option<i64>> = lt0.iter().map(|x| x.map(|y| -y)).collect();
        prop_assert_eq!(negated, lt2);
    }

    #[test]
    fn signature_and_arf_are_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (
            SeifertMatrix::from_diagram(&random_knot(&mut r, 8)).unwrap(),
            SeifertMatrix::from_diagram(&random_knot(&mut r, 8)).unwrap(),
        );
        let s = a.block_sum(&b);
        prop_assert_eq!(signature(&s).0, signature(&a).0 + signature(&b).0);
        prop_assert_eq!(arf(&s), arf(&a) ^ arf(&b));
        for t in [2, 3, -2] {
            let t = t.into();
            prop_assert_eq!(
                alexander_polynomial(&s).eval(&t),
                alexander_polynomial(&a).eval(&t) * alexander_polynomial(&b).eval(&t)
            );
        }
    }
}

#[test]
fn third_moves_and_simplifications_preserve_invariants() {
    let mut r = rng(71);
    let mut moved = 0;
    for _ in 0..150 {
        let d = random_knot(&mut r, 12);
        let base = of_diagram(&d);
        for m in third_moves(&d).into_iter().chain(simplifying_moves(&d)) {
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(of_diagram(&e), base, "{m:?} on {:?}", d.pd_i64());
            moved += 1;
        }
    }
    assert!(moved > 100, "only {moved} moves exercised");
}

#[test]
fn atlas_invariants_survive_other_diagrams_and_kinks() {
    let kink = braid_closure(2, &[(0, 1)]).unwrap();
    let neg_kink = braid_closure(2, &[(0, -1)]).unwrap();
    for name in ATLAS_NAMES {
        let a = atlas(name).unwrap();
        let want = fingerprint(&a.matrix);
        for d in &a.diagrams {
            assert_eq!(of_diagram(d), want, "{name}");
            assert_eq!(of_diagram(&d.connected_sum(&kink)), want, "{name} with a kink");
            assert_eq!(of_diagram(&kink.connected_sum(&d.connected_sum(&neg_kink))), want, "{name} with two kinks");
            assert_eq!(of_diagram(&d.canonical()), want, "{name} relabelled");
        }
    }
}

/// The inputs a caller can feed the engine about one knot.
#[derive(Clone, Debug)]
enum Input {
    Cert(CrossingChangeCertificate),
    Invariants(SeifertMatrix),
    Obstruction(Obstruction),
}

fn feed(kb: &mut KnowledgeBase, knot: &str, inputs: &[Input]) {
    for i in inputs {
        match i {
            Input::Cert(c) => {
                kb.register_certificate(knot, &Certificate::CrossingChange { certificate: c.clone() }).unwrap();
            }
            Input::Invariants(v) => {
                kb.register_invariants(knot, v).unwrap();
            }
            Input::Obstruction(o) => {
                kb.register_obstruction(knot, o).unwrap();
            }
        }
    }
}

fn verdicts(kb: &KnowledgeBase, knot: &str) -> Vec<(String, Verdict)> {
    kb.deduce(knot).unwrap().entries.iter().map(|e| (e.set.to_string(), e.verdict)).collect()
}

fn engine_inputs(name: &str) -> Vec<Input> {
    let a = atlas(name).unwrap();
    let mut out: Vec<Input> = a.certificates.iter().cloned().map(Input::Cert).collect();
    out.push(Input::Invariants(a.matrix.clone()));
    // tau(right-handed trefoil) = 1
    if name == "trefoil_rh" {
        out.push(Input::Obstruction(Obstruction::External { external: External::TauPositive, citation: "tau".into() }));
    }
    out
}

#[test]
fn deduction_is_order_independent_and_monotone() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for name in ATLAS_NAMES {
        let inputs = engine_inputs(name);
        let mut kb = KnowledgeBase::new(6, false);
        feed(&mut kb, name, &inputs);
        let full = verdicts(&kb, name);
        for _ in 0..6 {
            let mut shuffled = inputs.clone();
            shuffled.shuffle(&mut r);
            let mut kb = KnowledgeBase::new(6, false);
            feed(&mut kb, name, &shuffled);
            assert_eq!(verdicts(&kb, name), full, "{name}: order changed the verdicts");

            for cut in 0..shuffled.len() {
                let mut kb = KnowledgeBase::new(6, false);
                feed(&mut kb, name, &shuffled[..cut]);
                for ((set, v), (_, w)) in verdicts(&kb, name).iter().zip(&full) {
                    assert!(*v == Verdict::Unknown || v == w, "{name}: {set} was {v}, became {w}");
                }
            }
        }
    }
}

#[test]
fn certificate_search_is_deterministic() {
    let d = atlas("figure_eight").unwrap().diagrams[0].clone();
    let a = CrossingChangeCertificate::search_signed(&d, Some(1), 2, DEFAULT_R3_BUDGET);
    let b = CrossingChangeCertificate::search_signed(&d, Some(1), 2, DEFAULT_R3_BUDGET);
    assert_eq!(a.map(|c| c.switches), b.map(|c| c.switches));
}
