use proptest::prelude::*;

use tusv::sieve::{check_nonrep, first_witness, form_mask, non_representables};
use tusv::{Domain, Generator, GeneratorKind, TernaryForm};

fn generator() -> impl Strategy<Value = Generator> {
    let kind = prop_oneof![
        Just(GeneratorKind::Square),
        Just(GeneratorKind::Triangular),
        (3u32..20).prop_map(GeneratorKind::Polygonal),
        (3u32..20).prop_map(GeneratorKind::SecondPolygonal),
        (1u32..30, 1u32..9).prop_map(|(c, d)| GeneratorKind::GenPoly { c, d }),
    ];
    let domain = prop_oneof![4 => Just(Domain::Naturals), 1 => Just(Domain::Integers)];
    (kind, 1u32..8, domain).prop_map(|(k, c, d)| Generator::new(k, c, d).unwrap())
}

fn form() -> impl Strategy<Value = TernaryForm> {
    (generator(), generator(), generator()).prop_map(|(a, b, c)| TernaryForm::new([a, b, c]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_invariant(f in form(), perm in 0usize..6) {
        let [a, b, c] = *f.terms();
        let orders = [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
        let g = TernaryForm::new(orders[perm]);
        prop_assert_eq!(form_mask(&f, 10_000).unwrap(), form_mask(&g, 10_000).unwrap());
    }

    #[test]
    fn prefix_stable(f in form(), m in 0u64..3000) {
        let big = form_mask(&f, 3000).unwrap();
        prop_assert_eq!(big.prefix(m), form_mask(&f, m).unwrap());
    }

    #[test]
    fn certificate_agrees_with_sieve(f in form(), n in 0u64..400) {
        let report = non_representables(&f, n).unwrap();
        let c = check_nonrep(&f, n).unwrap();
        prop_assert_eq!(c.is_nonrepresentable(), report.witnesses.contains(&n));
        if let Some([x, y, z]) = c.representation {
            let [g0, g1, g2] = f.terms();
            prop_assert_eq!(g0.eval(x).unwrap() + g1.eval(y).unwrap() + g2.eval(z).unwrap(), n as i64);
        }
    }

    #[test]
    fn first_witness_is_head(f in form(), n in 0u64..20_000) {
        let report = non_representables(&f, n).unwrap();
        prop_assert_eq!(first_witness(&f, n).unwrap(), report.witnesses.first().copied());
    }
}
