use super::*;
use crate::ring::validate::validate_ring;

fn zmod(n: u64) -> Arc<FiniteRing> {
    build_zmod(n, DEFAULT_ORDER_CAP).unwrap()
}

#[test]
fn zmod_one_is_the_zero_ring() {
    let r = zmod(1);
    assert_eq!(r.order(), 1);
    assert_eq!(r.zero(), r.one());
}

#[test]
fn zmod_four_arithmetic() {
    let r = zmod(4);
    assert_eq!(r.mul(2, 2), 0);
    assert_eq!(r.mul(3, 3), 1);
}

#[test]
fn zmod_six_idempotents_match_direct_enumeration() {
    // oracle: plain integer arithmetic mod 6
    let expected: Vec<usize> = (0..6).filter(|x| (x * x) % 6 == *x).collect();
    assert_eq!(expected, vec![0, 1, 3, 4]);
    let r = zmod(6);
    let got: Vec<usize> = r.elements().filter(|&x| r.mul(x, x) == x).collect();
    assert_eq!(got, expected);
}

#[test]
fn one_by_one_matrix_ring_is_the_base() {
    let base = zmod(2);
    let m = build_matrix_ring(&base, 1, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(m.order(), 2);
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(m.mul(x, y), base.mul(x, y));
            assert_eq!(m.add(x, y), base.add(x, y));
        }
    }
}

#[test]
fn m2_f2_has_six_units() {
    // oracle: 2x2 matrices over F2 with nonzero determinant, counted with
    // plain integer arithmetic
    let mut invertible = 0;
    for bits in 0..16u32 {
        let (a, b, c, d) = (bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1);
        if (a * d + b * c) % 2 == 1 {
            invertible += 1;
        }
    }
    assert_eq!(invertible, 6);

    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(m.order(), 16);
    let units = m
        .elements()
        .filter(|&x| {
            m.elements()
                .any(|y| m.mul(x, y) == m.one() && m.mul(y, x) == m.one())
        })
        .count();
    assert_eq!(units, invertible);
}

#[test]
fn m2_z4_has_order_256() {
    let m = build_matrix_ring(&zmod(4), 2, 4096).unwrap();
    assert_eq!(m.order(), 256);
}

#[test]
fn matrix_ring_cap_is_enforced() {
    let err = build_matrix_ring(&zmod(4), 2, 100).unwrap_err();
    assert!(matches!(err, RingError::CapExceeded { order: 256, cap: 100 }));
}

#[test]
fn triangular_rings() {
    let t1 = build_upper_triangular(&zmod(2), 1, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(t1.order(), 2);
    let t2 = build_upper_triangular(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(t2.order(), 8);
    let t3 = build_upper_triangular(&zmod(3), 2, DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(t3.order(), 27);
    // units of tri(2, Z/3): both diagonal entries invertible mod 3
    let units = t3
        .elements()
        .filter(|&x| {
            t3.elements()
                .any(|y| t3.mul(x, y) == t3.one() && t3.mul(y, x) == t3.one())
        })
        .count();
    assert_eq!(units, 2 * 2 * 3);
}

#[test]
fn product_rings() {
    let p = build_product(&zmod(2), &zmod(2), DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(p.order(), 4);
    let idems = p.elements().filter(|&x| p.mul(x, x) == x).count();
    assert_eq!(idems, 4);

    let q = build_product(&zmod(1), &zmod(5), DEFAULT_ORDER_CAP).unwrap();
    let base = zmod(5);
    assert_eq!(q.order(), 5);
    for x in 0..5 {
        for y in 0..5 {
            assert_eq!(q.mul(x, y), base.mul(x, y));
        }
    }

    let pr = build_product(&zmod(2), &zmod(4), DEFAULT_ORDER_CAP).unwrap();
    let units: Vec<String> = pr
        .elements()
        .filter(|&x| {
            pr.elements()
                .any(|y| pr.mul(x, y) == pr.one() && pr.mul(y, x) == pr.one())
        })
        .map(|x| pr.label(x).to_string())
        .collect();
    assert_eq!(units, vec!["(1,1)", "(1,3)"]);
}

#[test]
fn corner_rings() {
    let r = zmod(6);
    let full = build_corner(&r, r.one()).unwrap();
    assert_eq!(full.order(), 6);
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(full.mul(x, y), r.mul(x, y));
        }
    }

    let zero = build_corner(&r, r.zero()).unwrap();
    assert_eq!(zero.order(), 1);

    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    let e11 = m.parse_element("[[1,0],[0,0]]").unwrap();
    let c = build_corner(&m, e11.index).unwrap();
    assert_eq!(c.order(), 2);
    assert_eq!(c.mul(c.one(), c.one()), c.one());
    assert_eq!(c.add(c.one(), c.one()), c.zero());

    let not_idem = m.parse_element("[[0,1],[0,0]]").unwrap();
    assert!(matches!(
        build_corner(&m, not_idem.index),
        Err(RingError::NotIdempotent(_))
    ));
}

#[test]
fn corner_multiplication_agrees_with_parent_through_injection() {
    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    for e in m.elements().filter(|&e| m.mul(e, e) == e) {
        let c = build_corner(&m, e).unwrap();
        let reps = c.corner_reps();
        for x in 0..c.order() {
            for y in 0..c.order() {
                assert_eq!(reps[c.mul(x, y)], m.mul(reps[x], reps[y]));
                assert_eq!(reps[c.add(x, y)], m.add(reps[x], reps[y]));
            }
        }
    }
}

#[test]
fn pow_and_matrix_units() {
    let r6 = zmod(6);
    assert_eq!(r6.pow(2, 3), 8 % 6);
    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    let e11 = m.parse_element("[[1,0],[0,0]]").unwrap().index;
    let e12 = m.parse_element("[[0,1],[0,0]]").unwrap().index;
    assert_eq!(m.mul(e11, e12), e12);
    assert_eq!(m.mul(e12, e11), m.zero());
}

#[test]
fn element_ops_are_ring_checked() {
    let r4 = zmod(4);
    let r6 = zmod(6);
    let a = r4.element(2);
    let b = r6.element(2);
    assert!(matches!(a.mul(&b), Err(RingError::RingMismatch)));
    assert!(matches!(a.pow(-1), Err(RingError::NegativeExponent(-1))));
    assert_eq!(a.pow(0).unwrap().index, r4.one());
    assert_eq!(a.add(&r4.element(3)).unwrap().index, 1);
}

#[test]
fn validate_accepts_good_rings_and_catches_corruption() {
    assert!(validate_ring(&zmod(6)).valid);

    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    let e11 = m.parse_element("[[1,0],[0,0]]").unwrap();
    let corner = build_corner(&m, e11.index).unwrap();
    assert!(validate_ring(&corner).valid);

    // corrupt mul[2][3] of Z/4 to break associativity
    let r = zmod(4);
    let n = r.order();
    let add: Vec<u16> = (0..n * n)
        .map(|i| r.add(i / n, i % n) as u16)
        .collect();
    let mut mul: Vec<u16> = (0..n * n)
        .map(|i| r.mul(i / n, i % n) as u16)
        .collect();
    mul[2 * n + 3] = 1;
    let bad = from_raw_tables(n, add, mul, 1, "table:corrupt".into()).unwrap();
    let report = validate_ring(&bad);
    assert!(!report.valid);
    assert!(report.describe().contains('('), "witness triple: {}", report.describe());
}

#[test]
fn parse_format_round_trip_examples() {
    let r6 = zmod(6);
    assert_eq!(r6.parse_element("5").unwrap().index, 5);
    assert!(r6.parse_element("6").is_err());
    assert!(r6.parse_element("x").is_err());

    let m = build_matrix_ring(&zmod(2), 2, DEFAULT_ORDER_CAP).unwrap();
    let e11 = m.parse_element("[[1,0],[0,0]]").unwrap();
    assert_eq!(e11.label(), "[[1,0],[0,0]]");

    let p = build_product(&zmod(2), &zmod(4), DEFAULT_ORDER_CAP).unwrap();
    let u = p.parse_element("(1,3)").unwrap();
    assert_eq!(u.label(), "(1,3)");
}

#[test]
fn parse_format_round_trips_for_every_registry_element() {
    for ring in crate::verifier::build_registry(DEFAULT_ORDER_CAP).unwrap() {
        for x in ring.elements() {
            let back = ring.parse_element(ring.label(x)).unwrap();
            assert_eq!(back.index, x, "round trip in {}", ring.spec());
        }
    }
}

#[test]
fn ring_spec_grammar() {
    let spec: RingSpec = "corner:mat:2:zmod:2:[[1,0],[0,0]]".parse().unwrap();
    assert_eq!(spec.to_string(), "corner:mat:2:zmod:2:[[1,0],[0,0]]");
    let ring = spec.build(DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(ring.order(), 2);

    let spec: RingSpec = "prod:zmod:2,zmod:4".parse().unwrap();
    assert_eq!(spec.build(DEFAULT_ORDER_CAP).unwrap().order(), 8);

    let nested: RingSpec = "prod:prod:zmod:2,zmod:3,zmod:5".parse().unwrap();
    assert_eq!(nested.build(DEFAULT_ORDER_CAP).unwrap().order(), 30);

    assert!("zmod".parse::<RingSpec>().is_err());
    assert!("ring:5".parse::<RingSpec>().is_err());
    assert!("zmod:4trailing".parse::<RingSpec>().is_err());
    assert!("zmod:0".parse::<RingSpec>().unwrap().build(16).is_err());
}

#[test]
fn spec_round_trips_through_display() {
    for spec in crate::verifier::registry_specs() {
        let reparsed: RingSpec = spec.to_string().parse().unwrap();
        assert_eq!(reparsed, spec);
    }
}

#[test]
fn exhaustive_axioms_hold_for_all_registry_rings() {
    for ring in crate::verifier::build_registry(DEFAULT_ORDER_CAP).unwrap() {
        let report = validate_ring(&ring);
        assert!(report.valid, "{}: {}", ring.spec(), report.describe());
    }
}
