//! Every gluing of a few copies of a short cyclically reduced word must pass
//! the full certificate check, with the turn-graph counts exact.

use num_bigint::BigInt;
use sclkit::fatgraph::{all_gluings, factor_contribution};
use sclkit::*;

const CASES: &[(&str, usize, &[usize])] = &[
    ("abAB", 2, &[1, 2, 3]),
    ("aabAAB", 2, &[1, 2]),
    ("abABAbaB", 2, &[1]),
    ("aabbAABB", 2, &[1]),
    ("abcABC", 3, &[1, 2]),
];

#[test]
fn all_gluings_are_certified() {
    for &(text, rank, degrees) in CASES {
        let sig = FactorSignature::free(rank).unwrap();
        let g = parse_word(text, &sig).unwrap();
        let len = g.unit_letters().len();
        for &n in degrees {
            let gluings = all_gluings(&g, n).unwrap();
            assert!(!gluings.is_empty(), "{text} x{n}");
            for fg in gluings {
                let report = certificate_check(&fg, &g);
                assert!(report.passed(), "{text} x{n}:\n{fg}{:?}", report.failures());
                assert_eq!(report.degree, Some(n));
                assert_eq!(report.valence_sum, n * len);
                assert_eq!(
                    report.descending_count,
                    Some(n * (len / 2 - 1)),
                    "{text} x{n}:\n{fg}"
                );
                assert!(-report.euler_characteristic >= n as i64);
                assert!(fg.num_vertices() <= n * (len / 2 - 1));

                // the parsed printout is the same fatgraph
                assert_eq!(
                    Fatgraph::parse(&fg.to_string()).unwrap().to_string(),
                    fg.to_string()
                );

                if rank == 2 {
                    let [a, b] = factor_contribution(&fg, &g).unwrap();
                    let total = a.contribution + b.contribution;
                    assert_eq!(
                        total,
                        Rational::from_integer(BigInt::from(-report.euler_characteristic))
                    );
                }
            }
        }
    }
}
