//! Regression table of the worked examples: each check rebuilds a knot,
//! computes its invariants or runs the deduction engine, and compares with
//! the known answer.

use serde::Serialize;

use crate::certificate::CrossingChangeCertificate;
use crate::engine::{Certificate, External, Family, KnowledgeBase, Node, Obstruction, Verdict, DEFAULT_BOUND};
use crate::error::Result;
use crate::families::{
    atlas, pretzel_knot, twist_certificates, twist_matrix, whitehead_double_matrix, Clasp, ATLAS_NAMES,
};
use crate::invariants::{alexander_polynomial, arf, determinant, fox_milnor, signature};
use crate::tower::CassonTower;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn s(f: Family, n: u32) -> Node {
    Node::set(f, n)
}

/// Knowledge base holding an atlas knot's diagram-derived facts: every
/// one-crossing certificate and every obstruction its Seifert matrix gives.
pub fn atlas_kb(name: &str, kb: &mut KnowledgeBase) -> Result<()> {
    let a = atlas(name)?;
    if name == "unknot" {
        kb.register_slice(name, "crossingless diagram")?;
    }
    for c in &a.certificates {
        kb.register_certificate(name, &Certificate::CrossingChange { certificate: c.clone() })?;
    }
    kb.register_invariants(name, &a.matrix)?;
    Ok(())
}

fn twist_kb(n: i64, clasp: Clasp, kb: &mut KnowledgeBase) -> Result<String> {
    let name = format!("T{clasp}_{n}");
    for c in twist_certificates(n, clasp) {
        kb.register_certificate(&name, &Certificate::CrossingChange { certificate: c })?;
    }
    kb.register_invariants(&name, &twist_matrix(n, clasp))?;
    Ok(name)
}

fn is_pronic(n: i64) -> bool {
    (0..=n.abs()).any(|l| l * (l + 1) == n)
}

pub fn checks() -> Vec<Check> {
    let mut out = vec![];

    out.push(check("every knot lies in C_1", || {
        let kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        let d = kb.deduce("any knot")?;
        Ok((d.verdict(s(Family::C, 1)) == Verdict::Member, "C_1 is identified with ALL".into()))
    }));

    out.push(check("figure-eight lies in C+_1 and C-_1", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        atlas_kb("figure_eight", &mut kb)?;
        let d = kb.deduce("figure_eight")?;
        let ok =
            d.verdict(s(Family::Cplus, 1)) == Verdict::Member && d.verdict(s(Family::Cminus, 1)) == Verdict::Member;
        Ok((ok, "one positive and one negative crossing change each unknot it".into()))
    }));

    out.push(check("figure-eight does not lie in C_2", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        atlas_kb("figure_eight", &mut kb)?;
        let d = kb.deduce("figure_eight")?;
        let a = arf(&atlas("figure_eight")?.matrix);
        let ok = a == 1
            && [s(Family::C, 2), s(Family::Cplus, 2), s(Family::Cminus, 2), s(Family::G, 2), s(Family::F, 0)]
                .iter()
                .all(|&n| d.verdict(n) == Verdict::NonMember);
        Ok((ok, format!("Arf = {a}")))
    }));

    out.push(check("figure-eight lies in P_0 and N_0", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        atlas_kb("figure_eight", &mut kb)?;
        let d = kb.deduce("figure_eight")?;
        Ok((
            d.verdict(s(Family::P, 0)) == Verdict::Member && d.verdict(s(Family::N, 0)) == Verdict::Member,
            String::new(),
        ))
    }));

    out.push(check("twist knots: clasp change gives C±_1; for n > 0, T+_n also lies in C-_1", || {
        let mut bad = vec![];
        for n in -6..=6 {
            for clasp in [Clasp::Plus, Clasp::Minus] {
                let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
                let name = twist_kb(n, clasp, &mut kb)?;
                let d = kb.deduce(&name)?;
                let own = if clasp == Clasp::Plus { Family::Cplus } else { Family::Cminus };
                let mut ok = d.verdict(s(own, 1)) == Verdict::Member;
                if (clasp == Clasp::Plus && n > 0) || (clasp == Clasp::Minus && n < 0) {
                    ok &= d.verdict(s(Family::Cplus, 1)) == Verdict::Member
                        && d.verdict(s(Family::Cminus, 1)) == Verdict::Member;
                }
                if !ok {
                    bad.push(name);
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "n in [-6, 6]".into() } else { format!("failed: {bad:?}") }))
    }));

    out.push(check("Arf(T±_n) = n mod 2", || {
        let ok =
            (0..=100).all(|n| [Clasp::Plus, Clasp::Minus].iter().all(|&c| arf(&twist_matrix(n, c)) as i64 == n % 2));
        Ok((ok, "n in [0, 100]".into()))
    }));

    out.push(check("T+_n is algebraically slice exactly when n = l(l+1)", || {
        let mut bad = vec![];
        for n in -100..=100 {
            let plus = fox_milnor(&alexander_polynomial(&twist_matrix(n, Clasp::Plus)))?;
            let minus = fox_milnor(&alexander_polynomial(&twist_matrix(n, Clasp::Minus)))?;
            if plus != (n >= 0 && is_pronic(n)) || minus != (n <= 0 && is_pronic(-n)) {
                bad.push(n);
            }
        }
        Ok((
            bad.is_empty(),
            format!("n in [-100, 100], T-_n slice-flagged exactly when n = -l(l+1); mismatches {bad:?}"),
        ))
    }));

    out.push(check("T±_n for even n lies in C2±_0; odd n does not", || {
        let mut bad = vec![];
        for n in -6i64..=6 {
            for clasp in [Clasp::Plus, Clasp::Minus] {
                let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
                let name = twist_kb(n, clasp, &mut kb)?;
                let fam = if clasp == Clasp::Plus { Family::C2plus } else { Family::C2minus };
                if n % 2 == 0 {
                    kb.register_certificate(
                        &name,
                        &Certificate::Curated {
                            set: s(fam, 0),
                            citation: "height-two tower for even twist knots".into(),
                        },
                    )?;
                }
                let d = kb.deduce(&name)?;
                let want = if n % 2 == 0 { Verdict::Member } else { Verdict::NonMember };
                if d.verdict(s(fam, 0)) != want {
                    bad.push(name);
                }
            }
        }
        Ok((bad.is_empty(), format!("failed: {bad:?}")))
    }));

    out.push(check("T+_n for even n not of the form l(l+1) lies in C2+_0 but not C2+_1", || {
        let mut bad = vec![];
        for n in [4i64, 8, 10, 14, 16, 18] {
            let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
            let name = twist_kb(n, Clasp::Plus, &mut kb)?;
            kb.register_certificate(
                &name,
                &Certificate::Curated {
                    set: s(Family::C2plus, 0),
                    citation: "height-two tower for even twist knots".into(),
                },
            )?;
            let d = kb.deduce(&name)?;
            if d.verdict(s(Family::C2plus, 0)) != Verdict::Member
                || d.verdict(s(Family::C2plus, 1)) != Verdict::NonMember
                || d.verdict(s(Family::C2, 1)) != Verdict::NonMember
            {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("failed n: {bad:?}")))
    }));

    out.push(check("T+_3 is not in C_3, C2_1 or G_3", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        let name = twist_kb(3, Clasp::Plus, &mut kb)?;
        let d = kb.deduce(&name)?;
        let det = determinant(&twist_matrix(3, Clasp::Plus));
        let ok = [s(Family::C, 3), s(Family::C2, 1), s(Family::G, 3), s(Family::F, 1)]
            .iter()
            .all(|&n| d.verdict(n) == Verdict::NonMember)
            && d.verdict(s(Family::Cplus, 1)) == Verdict::Member;
        Ok((ok, format!("determinant {det} is not a square")))
    }));

    out.push(check("twisted Whitehead doubles: Arf = n mod 2, sliceness exactly at n = l(l+1)", || {
        let ok = (0..=40).all(|n| {
            let v = whitehead_double_matrix(n, Clasp::Plus);
            arf(&v) as i64 == n % 2 && fox_milnor(&alexander_polynomial(&v)).unwrap() == is_pronic(n)
        });
        Ok((ok, "the form does not depend on the companion".into()))
    }));

    out.push(check("Wh+_0 of an even-twisted double lies in C+_3 and every P_n", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        kb.register_certificate(
            "Wh_2(K)",
            &Certificate::Curated { set: s(Family::C2, 0), citation: "twisted doubles with even twisting".into() },
        )?;
        kb.whitehead_lift("Wh_2(K)", "Wh+_0(Wh_2(K))", Clasp::Plus)?;
        let d = kb.deduce("Wh+_0(Wh_2(K))")?;
        let ok = d.verdict(s(Family::Cplus, 3)) == Verdict::Member
            && (0..=DEFAULT_BOUND).all(|n| {
                d.verdict(s(Family::P, n)) == Verdict::Member && d.verdict(s(Family::C2plus, n)) == Verdict::Member
            });
        Ok((ok, format!("P_n for all n <= {DEFAULT_BOUND}")))
    }));

    out.push(check("Wh-_0 of the left-handed trefoil is not in P_0", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        let k = "Wh-_0(LHT)";
        kb.whitehead_lift("LHT", k, Clasp::Minus)?;
        kb.register_invariants(k, &whitehead_double_matrix(0, Clasp::Minus))?;
        let before = kb.deduce(k)?.verdict(s(Family::P, 0));
        kb.register_obstruction(
            k,
            &Obstruction::External { external: External::DInvariantPositive, citation: "d-invariant argument".into() },
        )?;
        let d = kb.deduce(k)?;
        let ok = before == Verdict::Unknown
            && d.verdict(s(Family::P, 0)) == Verdict::NonMember
            && d.verdict(s(Family::Cplus, 1)) == Verdict::NonMember
            && d.verdict(s(Family::Cminus, 2)) == Verdict::Member;
        Ok((ok, "in C-_2 by lifting, not in C+_1".into()))
    }));

    out.push(check("pretzel (-3,5,7): determinant 1, P_0 undecided until a d-invariant fact", || {
        let (_, v) = pretzel_knot(-3, 5, 7)?;
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        let k = "P(-3,5,7)";
        kb.register_invariants(k, &v)?;
        let before = kb.deduce(k)?.verdict(s(Family::P, 0));
        kb.register_obstruction(
            k,
            &Obstruction::External { external: External::DInvariantPositive, citation: "d-invariant argument".into() },
        )?;
        let after = kb.deduce(k)?.verdict(s(Family::P, 0));
        let det = determinant(&v);
        let ok = det == 1.into()
            && alexander_polynomial(&v).is_one()
            && before == Verdict::Unknown
            && after == Verdict::NonMember;
        Ok((ok, format!("determinant {det}; P_0 {before} then {after}")))
    }));

    out.push(check("positive-braid trefoil lies in C+_1 and P_0 but not N_0", || {
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        kb.register_certificate(
            "trefoil_rh",
            &Certificate::Curated {
                set: Node::Pred(crate::engine::Predicate::PositiveBraid),
                citation: "closure of s1^3".into(),
            },
        )?;
        kb.register_invariants("trefoil_rh", &atlas("trefoil_rh")?.matrix)?;
        let d = kb.deduce("trefoil_rh")?;
        let ok = d.verdict(s(Family::Cplus, 1)) == Verdict::Member
            && d.verdict(s(Family::P, 0)) == Verdict::Member
            && d.verdict(s(Family::N, 0)) == Verdict::NonMember
            && d.verdict(s(Family::Cminus, 1)) == Verdict::NonMember;
        Ok((ok, format!("signature {}", signature(&atlas("trefoil_rh")?.matrix).0)))
    }));

    out.push(check("single-kink tower of height 4 gives 1, 2, 4, 8 genus-one surfaces", || {
        let g = CassonTower::single_kink(4, Clasp::Plus).to_grope()?;
        let counts: Vec<usize> = (1..=4).map(|k| g.stage(k).len()).collect();
        let ok = counts == [1, 2, 4, 8] && (1..=4).all(|k| g.stage(k).iter().all(|x| x.genus == 1));
        Ok((ok, format!("stage counts {counts:?}")))
    }));

    out.push(check("blowing up a positive height-4 tower gives P_2", || {
        let t = CassonTower::single_kink(4, Clasp::Plus);
        let c = t.blow_up_certificate()?;
        let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        kb.register_certificate("K", &Certificate::Positivity { certificate: c.clone() })?;
        let d = kb.deduce("K")?;
        Ok((c.asserted_level == 2 && d.verdict(s(Family::P, 2)) == Verdict::Member, format!("b2 = {}", c.b2)))
    }));

    out.push(check("lattice inclusions hold and the quotient is a partial order", || {
        let kb = KnowledgeBase::new(DEFAULT_BOUND, false);
        let l = &kb.lattice;
        let mut ok = l.cycles().is_empty();
        for n in 0..=DEFAULT_BOUND - 2 {
            ok &= l.subset_of(s(Family::Cplus, n + 2), s(Family::C2plus, n))?;
            ok &= l.subset_of(s(Family::C2plus, n), s(Family::P, n))?;
            ok &= l.subset_of(s(Family::C, n + 2), s(Family::G, n + 2))?;
            ok &= l.subset_of(s(Family::G, n + 2), s(Family::F, n))?;
            ok &= l.subset_of(s(Family::C2, n), s(Family::G2, n))?;
            ok &= l.subset_of(s(Family::G2, n), s(Family::F, n))?;
        }
        Ok((ok, format!("{} canonical nodes, {} edges", l.len(), l.edges.len())))
    }));

    out.push(check("mirroring swaps signed verdicts on the atlas", || {
        let mut bad = vec![];
        for name in ATLAS_NAMES {
            let mut kb = KnowledgeBase::new(DEFAULT_BOUND, false);
            atlas_kb(name, &mut kb)?;
            let a = atlas(name)?;
            let mname = format!("mirror {name}");
            let md = a.diagrams[0].mirror();
            if name == "unknot" {
                kb.register_slice(&mname, "crossingless diagram")?;
            }
            for s in [Some(1), Some(-1)] {
                if let Some(c) = CrossingChangeCertificate::search_signed(&md, s, 1, crate::moves::DEFAULT_R3_BUDGET) {
                    kb.register_certificate(&mname, &Certificate::CrossingChange { certificate: c })?;
                }
            }
            kb.register_invariants(&mname, &a.matrix.mirror())?;
            let d = kb.deduce(name)?;
            let m = kb.deduce(&mname)?;
            for e in &d.entries {
                if m.verdict(e.set.mirror()) != e.verdict {
                    bad.push(format!("{name} {}", e.set));
                }
            }
        }
        Ok((bad.is_empty(), format!("mismatches: {bad:?}")))
    }));

    out
}

pub fn render(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{mark}  {}", c.name));
        if !c.detail.is_empty() {
            s.push_str(&format!("  ({})", c.detail));
        }
        s.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    s
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        let c = super::checks();
        let failed: Vec<_> = c.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
