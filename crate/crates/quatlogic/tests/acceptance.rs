//! Acceptance suite: one test per criterion, each printed as its own
//! pass/fail line by the harness. Expected values are frozen from the
//! operator truth tables and the closed-form bounds; netlists and
//! expressions are always checked against exhaustive tabulation.

use quatlogic::algebra::{apply_dyadic, apply_unary, OperatorKind, Qudit};
use quatlogic::circuits::{
    bitswap_from_equality, decoder, demux, equality_netlist, max_reference, min_reference, mux,
    unary_equality, EqualityVariant,
};
use quatlogic::netlist::{
    form1_bounds, form2_bounds, lower_sop, worst_case_table, LowerOptions, Netlist,
};
use quatlogic::sop::{
    decompose_form2, minimize_exact, synthesize_form1, synthesize_form2, SopExpr,
};
use quatlogic::table::{input_vectors, QFunction};
use quatlogic::SopForm;

fn q(v: u8) -> Qudit {
    Qudit::new(v).unwrap()
}

/// The full verification corpus: every 1-variable function, 200 seeded
/// 2-variable functions and 25 seeded 3-variable functions.
fn corpus() -> Vec<QFunction> {
    let mut functions = Vec::new();
    for code in 0..256usize {
        let outputs = (0..4)
            .map(|row| q(((code >> (2 * row)) & 3) as u8))
            .collect();
        functions.push(QFunction::from_rows(1, outputs).unwrap());
    }
    for seed in 0..200 {
        functions.push(QFunction::random(2, seed).unwrap());
    }
    for seed in 0..25 {
        functions.push(QFunction::random(3, seed).unwrap());
    }
    functions
}

fn assert_expr_matches(expr: &SopExpr, f: &QFunction, context: &str) {
    assert_eq!(&expr.to_function().unwrap(), f, "{context}");
}

#[test]
fn criterion_01_operator_semantics() {
    let unary: [(OperatorKind, [u8; 4]); 4] = [
        (OperatorKind::Not, [3, 2, 1, 0]),
        (OperatorKind::Outward, [3, 3, 0, 0]),
        (OperatorKind::Bitswap, [0, 2, 1, 3]),
        (OperatorKind::Inward, [2, 2, 1, 1]),
    ];
    for (op, expected) in unary {
        for a in Qudit::ALL {
            assert_eq!(
                apply_unary(op, a).unwrap().value(),
                expected[a.value() as usize],
                "{op} {a}"
            );
        }
    }
    // row-major over (A, B)
    let dyadic: [(OperatorKind, [u8; 16]); 9] = [
        (
            OperatorKind::And,
            [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3],
        ),
        (
            OperatorKind::Or,
            [0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3],
        ),
        (
            OperatorKind::Xor,
            [0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0],
        ),
        (
            OperatorKind::Equality,
            [3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3],
        ),
        (
            OperatorKind::Min,
            [0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 2, 2, 0, 1, 2, 3],
        ),
        (
            OperatorKind::Max,
            [0, 1, 2, 3, 1, 1, 2, 3, 2, 2, 2, 3, 3, 3, 3, 3],
        ),
        (
            OperatorKind::Xnor,
            [3, 2, 1, 0, 2, 3, 0, 1, 1, 0, 3, 2, 0, 1, 2, 3],
        ),
        (
            OperatorKind::Nand,
            [3, 3, 3, 3, 3, 2, 3, 2, 3, 3, 1, 1, 3, 2, 1, 0],
        ),
        (
            OperatorKind::Nor,
            [3, 2, 1, 0, 2, 2, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
        ),
    ];
    for (op, expected) in dyadic {
        for a in Qudit::ALL {
            for b in Qudit::ALL {
                assert_eq!(
                    apply_dyadic(op, a, b).unwrap().value(),
                    expected[(a.value() * 4 + b.value()) as usize],
                    "{op}({a},{b})"
                );
            }
        }
    }
    // the derived operators are complements of their base operators
    for a in Qudit::ALL {
        for b in Qudit::ALL {
            assert_eq!(a.nand(b), a.and(b).complement());
            assert_eq!(a.nor(b), a.or(b).complement());
            assert_eq!(a.xnor(b), a.xor(b).complement());
        }
    }
}

#[test]
fn criterion_02_algebra_laws() {
    let all = Qudit::ALL;
    for a in all {
        // complement
        assert_eq!(a | a.complement(), q(3));
        assert_eq!(a & a.complement(), q(0));
        // boundedness
        assert_eq!(a | q(0), a);
        assert_eq!(a & q(3), a);
        assert_eq!(a | q(3), q(3));
        assert_eq!(a & q(0), q(0));
        // idempotency
        assert_eq!(a | a, a);
        assert_eq!(a & a, a);
        // involution of NOT and bitswap
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.bitswap().bitswap(), a);
        // NAND/NOR universality: complement from either
        assert_eq!(a.complement(), a.nand(a));
        assert_eq!(a.complement(), a.nor(a));
        // order exchanges with NOT
        assert_eq!(a.complement().inward(), a.inward().complement());
        assert_eq!(a.complement().outward(), a.outward().complement());
        assert_eq!(a.complement().bitswap(), a.bitswap().complement());
        // bitswap/inward exchange holds exactly on asymmetric inputs
        assert_eq!(
            a.bitswap().inward() == a.inward().bitswap(),
            !a.is_symmetric(),
            "bitswap/inward at {a}"
        );
        // bitswap/outward exchange holds exactly on symmetric inputs
        assert_eq!(
            a.outward().bitswap() == a.bitswap().outward(),
            a.is_symmetric(),
            "bitswap/outward at {a}"
        );
        // inward/outward order can never be exchanged
        assert_ne!(a.outward().inward(), a.inward().outward(), "at {a}");
        // binary bitswap characterization
        if a.is_symmetric() {
            assert_eq!(a.bitswap(), a);
        } else {
            assert_eq!(a.bitswap(), a.complement());
        }
        // functional inverters linked through XOR with 1
        assert_eq!(a.outward(), a.inward() ^ q(1));
        assert_eq!(a.inward(), a.outward() ^ q(1));
    }
    for a in all {
        for b in all {
            // commutativity
            assert_eq!(a | b, b | a);
            assert_eq!(a & b, b & a);
            // bitswap distributes over OR and AND
            assert_eq!((a | b).bitswap(), a.bitswap() | b.bitswap());
            assert_eq!((a & b).bitswap(), a.bitswap() & b.bitswap());
            // De Morgan with NOT
            assert_eq!((a | b).complement(), a.complement() & b.complement());
            assert_eq!((a & b).complement(), a.complement() | b.complement());
            // De Morgan with the outward inverter
            assert_eq!((a | b).outward(), a.outward() & b.outward());
            assert_eq!((a & b).outward(), a.outward() | b.outward());
            // NAND/NOR universality for AND and OR
            assert_eq!(a & b, a.nor(a).nor(b.nor(b)));
            assert_eq!(a | b, a.nand(a).nand(b.nand(b)));
            // absorption
            assert_eq!(a | (a & b), a);
            assert_eq!(a & (a | b), a);
            // elimination
            assert_eq!(a | (a.complement() & b), a | b);
            assert_eq!(a & (a.complement() | b), a & b);
        }
    }
    for a in all {
        for b in all {
            for c in all {
                // associativity
                assert_eq!(a | (b | c), (a | b) | c);
                assert_eq!(a & (b & c), (a & b) & c);
                // distributivity, both directions
                assert_eq!(a | (b & c), (a | b) & (a | c));
                assert_eq!(a & (b | c), (a & b) | (a & c));
                // consensus
                assert_eq!(
                    (a & b) | (a.complement() & c) | (b & c),
                    (a & b) | (a.complement() & c)
                );
                assert_eq!(
                    (a | b) & (a.complement() | c) & (b | c),
                    (a | b) & (a.complement() | c)
                );
                // interchange
                assert_eq!(
                    (a & b) | (a.complement() & c),
                    (a | c) & (a.complement() | b)
                );
                assert_eq!(
                    (a | b) & (a.complement() | c),
                    (a & c) | (a.complement() & b)
                );
            }
        }
    }
    // the inward inverter admits no bitwise expansion: a witness pair where
    // (A.B)' differs from A'.B'
    let witness = Qudit::ALL.iter().any(|&a| {
        Qudit::ALL
            .iter()
            .any(|&b| (a & b).inward() != a.inward() & b.inward())
    });
    assert!(witness);
}

#[test]
fn criterion_03_synthesis_round_trip() {
    for f in corpus() {
        let form1 = synthesize_form1(&f);
        let form2 = synthesize_form2(&f).unwrap();
        assert_expr_matches(&form1, &f, "form1 expression");
        assert_expr_matches(&form2, &f, "form2 expression");
        let form1_variants = [form1.clone(), form1.peephole_inverters()];
        let form2_variants = [form2.clone(), form2.peephole_inverters()];
        for v1 in [2, 3, 4] {
            for v2 in [2, 3, 4] {
                for expand_equality in [false, true] {
                    for use_minmax in [false, true] {
                        let options = LowerOptions {
                            v1,
                            v2,
                            expand_equality,
                            use_minmax,
                        };
                        for expr in &form1_variants {
                            let nl = lower_sop(expr, &options).unwrap();
                            assert_eq!(nl.tabulate().unwrap(), f, "form1 {options:?}");
                        }
                        if use_minmax {
                            continue;
                        }
                        for expr in &form2_variants {
                            let nl = lower_sop(expr, &options).unwrap();
                            assert_eq!(nl.tabulate().unwrap(), f, "form2 {options:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_04_worked_examples() {
    let min_table = QFunction::tabulate(2, |x| x[0].min(x[1])).unwrap();
    let max_table = QFunction::tabulate(2, |x| x[0].max(x[1])).unwrap();

    let synthesized_min = synthesize_form2(&min_table).unwrap();
    let reference_min = min_reference();
    for x in input_vectors(2) {
        assert_eq!(
            synthesized_min.eval(&x).unwrap(),
            reference_min.eval(&x).unwrap(),
            "MIN at {x:?}"
        );
    }
    let synthesized_max = synthesize_form2(&max_table).unwrap();
    let reference_max = max_reference();
    for x in input_vectors(2) {
        assert_eq!(
            synthesized_max.eval(&x).unwrap(),
            reference_max.eval(&x).unwrap(),
            "MAX at {x:?}"
        );
    }
    assert_expr_matches(&reference_min, &min_table, "MIN reference");
    assert_expr_matches(&reference_max, &max_table, "MAX reference");

    // minimized cover sizes are no larger than the hand covers
    let (min_low, min_high) = decompose_form2(&min_table);
    assert!(minimize_exact(&min_low).unwrap().len() <= 3);
    assert!(minimize_exact(&min_high).unwrap().len() <= 1);
    let (max_low, max_high) = decompose_form2(&max_table);
    assert!(minimize_exact(&max_low).unwrap().len() <= 4);
    assert!(minimize_exact(&max_high).unwrap().len() <= 2);
}

#[test]
fn criterion_05_tree_size_and_depth() {
    fn ceil_log(base: usize, n: usize) -> usize {
        let mut depth = 0;
        let mut capacity = 1usize;
        while capacity < n {
            capacity *= base;
            depth += 1;
        }
        depth
    }
    for fanin in 2..=8usize {
        for leaves in 2..=64usize {
            let mut nl = Netlist::new(fanin, fanin).unwrap();
            let inputs: Vec<_> = (0..leaves)
                .map(|i| nl.add_input(&format!("I{i}")).unwrap())
                .collect();
            let root = nl.add_tree(OperatorKind::And, &inputs, fanin).unwrap();
            nl.set_output("F", root).unwrap();
            assert_eq!(
                nl.gate_count(),
                (leaves - 1).div_ceil(fanin - 1),
                "gate count at n={leaves} v={fanin}"
            );
            assert_eq!(
                nl.depth(),
                ceil_log(fanin, leaves),
                "depth at n={leaves} v={fanin}"
            );
        }
    }
}

#[test]
fn criterion_06_bound_soundness() {
    // the checkerboard worst case at fan-in 2
    let worst = worst_case_table(2, SopForm::Form2).unwrap();
    let bounds = form2_bounds(2, 2, 2);
    assert_eq!((bounds.gates, bounds.depth), (71, 9));
    let nl = lower_sop(&synthesize_form2(&worst).unwrap(), &LowerOptions::default()).unwrap();
    assert!(nl.gate_count() <= 71, "got {}", nl.gate_count());
    assert!(nl.depth() <= 9, "got {}", nl.depth());
    assert_eq!(nl.tabulate().unwrap(), worst);

    // every corpus function respects its form's bounds at every fan-in
    for f in corpus() {
        let form1 = synthesize_form1(&f);
        let form2 = synthesize_form2(&f).unwrap();
        for v1 in [2, 3, 4] {
            for v2 in [2, 3, 4] {
                let options = LowerOptions {
                    v1,
                    v2,
                    ..LowerOptions::default()
                };
                let nl = lower_sop(&form1, &options).unwrap();
                let bounds = form1_bounds(f.arity(), v1, v2, 1, 1);
                assert!(nl.gate_count() <= bounds.gates, "form1 gates v=({v1},{v2})");
                assert!(nl.depth() <= bounds.depth, "form1 depth v=({v1},{v2})");
                let nl = lower_sop(&form2, &options).unwrap();
                let bounds = form2_bounds(f.arity(), v1, v2);
                assert!(nl.gate_count() <= bounds.gates, "form2 gates v=({v1},{v2})");
                assert!(nl.depth() <= bounds.depth, "form2 depth v=({v1},{v2})");
            }
        }
    }
}

#[test]
fn criterion_07_decoder_demux_mux() {
    // 1-selector decoder, demux and mux against their truth tables
    let dec = decoder(1, 2).unwrap();
    for s in Qudit::ALL {
        let out = dec.simulate(&[("S".into(), s)]).unwrap();
        for (j, (_, value)) in out.iter().enumerate() {
            let expected = if j == s.value() as usize { q(3) } else { q(0) };
            assert_eq!(*value, expected, "decoder S={s} line {j}");
        }
    }
    let dmx = demux(1, 2).unwrap();
    for s in Qudit::ALL {
        for d in Qudit::ALL {
            let out = dmx.simulate(&[("S".into(), s), ("D".into(), d)]).unwrap();
            for (j, (_, value)) in out.iter().enumerate() {
                let expected = if j == s.value() as usize { d } else { q(0) };
                assert_eq!(*value, expected, "demux S={s} D={d} line {j}");
            }
        }
    }
    let mx = mux(1, 2, 2).unwrap();
    for s in Qudit::ALL {
        for bank in input_vectors(4) {
            let mut bindings = vec![("S".to_string(), s)];
            for (j, d) in bank.iter().enumerate() {
                bindings.push((format!("D{j}"), *d));
            }
            let out = mx.simulate(&bindings).unwrap();
            assert_eq!(out[0].1, bank[s.value() as usize], "mux S={s} D={bank:?}");
        }
    }

    // 2-to-16 decoder: 8 shared equality gates and 16 two-input ANDs
    let dec2 = decoder(2, 2).unwrap();
    assert_eq!(dec2.gate_count_of(OperatorKind::Equality), 8);
    assert_eq!(dec2.gate_count_of(OperatorKind::And), 16);
    assert_eq!(dec2.gate_count(), 24);

    // 2-to-16 demux at fan-in 3: the same, with three-input output ANDs
    let dmx2 = demux(2, 3).unwrap();
    assert_eq!(dmx2.gate_count_of(OperatorKind::Equality), 8);
    let fanins = dmx2.fanins_of(OperatorKind::And);
    assert_eq!(fanins.len(), 16);
    assert!(fanins.iter().all(|&f| f == 3));

    // 16-to-1 mux: the OR stage at fan-in 2 adds exactly 15 gates
    let mx2 = mux(2, 3, 2).unwrap();
    assert_eq!(mx2.gate_count_of(OperatorKind::Or), 15);

    // one-hot property for every selector binding, 1 and 2 selectors
    for n in 1..=2usize {
        let dec = decoder(n, 4).unwrap();
        let names: Vec<String> = dec.input_names().iter().map(|s| s.to_string()).collect();
        for x in input_vectors(n) {
            let bindings: Vec<(String, Qudit)> =
                names.iter().cloned().zip(x.iter().copied()).collect();
            let out = dec.simulate(&bindings).unwrap();
            let threes = out.iter().filter(|(_, v)| *v == q(3)).count();
            let zeros = out.iter().filter(|(_, v)| *v == q(0)).count();
            assert_eq!(threes, 1, "one-hot at {x:?}");
            assert_eq!(zeros, out.len() - 1, "one-hot at {x:?}");
        }
    }
}

#[test]
fn criterion_08_equality_realizations() {
    let reference = QFunction::tabulate(2, |x| x[0].equality(x[1])).unwrap();
    for variant in EqualityVariant::ALL {
        let nl = equality_netlist(variant, 2, 2).unwrap();
        assert_eq!(nl.tabulate().unwrap(), reference, "{variant:?}");
    }
    let swap = bitswap_from_equality().unwrap();
    for a in Qudit::ALL {
        let out = swap.simulate(&[("A".into(), a)]).unwrap();
        assert_eq!(out[0].1, a.bitswap(), "bitswap at {a}");
    }
    for constant in [q(0), q(3)] {
        let nl = unary_equality(constant).unwrap();
        for a in Qudit::ALL {
            let out = nl.simulate(&[("A".into(), a)]).unwrap();
            assert_eq!(out[0].1, a.equality(constant), "E(.,{constant}) at {a}");
        }
    }
}

#[test]
fn criterion_09_minmax_equivalence() {
    for a in Qudit::ALL {
        for b in Qudit::ALL {
            let excluded = (a.value(), b.value()) == (1, 2) || (a.value(), b.value()) == (2, 1);
            if excluded {
                assert_ne!(a.min(b), a & b, "MIN must differ at ({a},{b})");
                assert_ne!(a.max(b), a | b, "MAX must differ at ({a},{b})");
            } else {
                assert_eq!(a.min(b), a & b, "MIN at ({a},{b})");
                assert_eq!(a.max(b), a | b, "MAX at ({a},{b})");
            }
        }
    }
    // form-I netlists keep their function under MIN/MAX substitution
    for f in corpus() {
        let expr = synthesize_form1(&f);
        let plain = lower_sop(&expr, &LowerOptions::default()).unwrap();
        let minmax = lower_sop(
            &expr,
            &LowerOptions {
                use_minmax: true,
                ..LowerOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain.tabulate().unwrap(), minmax.tabulate().unwrap());
        assert_eq!(minmax.gate_count_of(OperatorKind::And), 0);
        assert_eq!(minmax.gate_count_of(OperatorKind::Or), 0);
    }
}

#[test]
fn criterion_10_peephole() {
    for f in corpus() {
        for expr in [synthesize_form1(&f), synthesize_form2(&f).unwrap()] {
            let rewritten = expr.peephole_inverters();
            assert_eq!(
                rewritten.to_function().unwrap(),
                f,
                "peephole changed a truth table"
            );
            for v in [2, 3, 4] {
                let options = LowerOptions {
                    v1: v,
                    v2: v,
                    ..LowerOptions::default()
                };
                let before = lower_sop(&expr, &options).unwrap().gate_count();
                let after = lower_sop(&rewritten, &options).unwrap().gate_count();
                assert!(
                    after <= before,
                    "peephole increased gate count ({before} -> {after}) at v={v}"
                );
            }
        }
    }
}
