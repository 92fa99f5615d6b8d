use cealg::algfile;
use cealg::random::Sampler;
use cealg::tduality::{btfold, validate_config};
use cealg::twisted::{gauge_transform, twisted_d};
use cealg::{library, Element, Parity, Presentation, Scalar, TwistSpec, TwistedCochain};
use proptest::prelude::*;

const PRESENTATIONS: &[&str] = &["lS4", "lS5", "btfold", "tfold_fp", "cyc_lS4", "heis3", "sm9A"];

fn presentation(name: &str) -> Presentation {
    library::get(name).unwrap()
}

fn parity(bit: bool) -> Parity {
    if bit {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn koszul(a: &Element, b: &Element) -> Scalar {
    match (a.bidegree(), b.bidegree()) {
        (Some((da, pa)), Some((db, pb))) if (da * db + pa.bit() * pb.bit()) % 2 == 1 => Scalar::from_int(-1),
        _ => Scalar::one(),
    }
}

fn sign_of_degree(a: &Element) -> Scalar {
    match a.bidegree() {
        Some((d, _)) if d % 2 == 1 => Scalar::from_int(-1),
        _ => Scalar::one(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity(seed: u64, which in 0..PRESENTATIONS.len(), da in 0u32..5, db in 0u32..5, pa: bool, pb: bool) {
        let p = presentation(PRESENTATIONS[which]);
        let mut s = Sampler::new(seed);
        let a = s.element(p.algebra(), da, Some(parity(pa)), 3);
        let b = s.element(p.algebra(), db, Some(parity(pb)), 3);
        prop_assert_eq!(&a * &b, (&b * &a).scale(&koszul(&a, &b)));
    }

    #[test]
    fn associativity(seed: u64, which in 0..PRESENTATIONS.len(), degrees in proptest::array::uniform3(0u32..4)) {
        let p = presentation(PRESENTATIONS[which]);
        let mut s = Sampler::new(seed);
        let [a, b, c] = degrees.map(|d| s.element(p.algebra(), d, None, 3));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn leibniz_and_square_zero(seed: u64, which in 0..PRESENTATIONS.len(), da in 0u32..5, db in 0u32..5) {
        let p = presentation(PRESENTATIONS[which]);
        let mut s = Sampler::new(seed);
        let a = s.element(p.algebra(), da, None, 3);
        let b = s.element(p.algebra(), db, None, 3);
        let rhs = &p.d(&a) * &b + (&a * &p.d(&b)).scale(&sign_of_degree(&a));
        prop_assert_eq!(p.d(&(&a * &b)), rhs);
        prop_assert!(p.d(&p.d(&a)).is_zero());
    }

    #[test]
    fn display_parses_back(seed: u64, which in 0..PRESENTATIONS.len(), degree in 0u32..6) {
        let p = presentation(PRESENTATIONS[which]);
        let mut s = Sampler::new(seed);
        let a = s.element(p.algebra(), degree, None, 4);
        prop_assert_eq!(Element::parse(p.algebra(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn twisted_square_is_multiplication_by_da(seed: u64, degree in -2i64..3) {
        let g = btfold();
        let a = g.element("y3").unwrap();
        let t = TwistSpec::unchecked(&g, &a).unwrap();
        let mut s = Sampler::new(seed);
        let w = s.cochain(g.algebra(), degree, 7, 3);
        let twice = twisted_d(&t, &twisted_d(&t, &w).unwrap()).unwrap();
        let da = g.d(&a);
        let expected = TwistedCochain::new(g.algebra(), degree + 2, w.components().map(|(m, e)| (m - 1, &da * e))).unwrap();
        prop_assert_eq!(twice, expected);
    }

    #[test]
    fn twisted_differential_squares_to_zero(seed: u64, degree in -2i64..3) {
        let p = presentation("p1");
        let a = p.element("y3 - y1c*x2t").unwrap();
        let t = TwistSpec::new(&p, &a).unwrap();
        let mut s = Sampler::new(seed);
        let w = s.cochain(p.algebra(), degree, 7, 3);
        prop_assert!(twisted_d(&t, &twisted_d(&t, &w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn gauge_conjugates_twists(seed: u64, degree in -2i64..3) {
        let p = presentation("heis3");
        let mut s = Sampler::new(seed);
        let a = p.element("e1*e2*e3").unwrap();
        let b = s.element(p.algebra(), 2, Some(Parity::Even), 3);
        let shifted = TwistSpec::new(&p, &(&a + &p.d(&b))).unwrap();
        let t = TwistSpec::new(&p, &a).unwrap();
        let w = s.cochain(p.algebra(), degree, 3, 3);
        let lhs = gauge_transform(&b, &twisted_d(&shifted, &w).unwrap()).unwrap();
        let rhs = twisted_d(&t, &gauge_transform(&b, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = gauge_transform(&-&b, &gauge_transform(&b, &w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn fm_transform_is_linear_and_intertwines(seed: u64, degree in -1i64..3) {
        let g = btfold();
        let cfg = validate_config(&g, &g.gen("x2c").unwrap(), &g.gen("x2t").unwrap(), &g.gen("y3").unwrap()).unwrap();
        let q = cfg.derive_quintuple(("e1c", "e1t")).unwrap();
        let phi = q.quintuple();
        let alg = phi.side1().base().algebra();
        let mut s = Sampler::new(seed);
        let v = s.cochain(alg, degree, 6, 3);
        let w = s.cochain(alg, degree, 6, 3);
        let c = s.coefficient(alg.field());
        let combined = v.checked_add(&w.scale(&c)).unwrap();
        let lhs = phi.transform(&combined).unwrap();
        let rhs = phi.transform(&v).unwrap().checked_add(&phi.transform(&w).unwrap().scale(&c)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sign = phi.intertwining_sign(&v).unwrap();
        prop_assert!(sign == Some(-1) || sign == Some(0), "sign {:?}", sign);
    }

    #[test]
    fn library_dump_round_trips(which in 0..PRESENTATIONS.len()) {
        let p = presentation(PRESENTATIONS[which]);
        let loaded = algfile::load(&algfile::dump(&p, &[])).unwrap();
        prop_assert_eq!(loaded.presentation, p);
    }
}
