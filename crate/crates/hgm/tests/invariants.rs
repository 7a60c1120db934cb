use proptest::prelude::*;

use hgm::engine::{hgm_padic_streaming, HgmSum};
use hgm::hgdata::congruent_mod_l;
use hgm::padic::PadicNum;
use hgm::recognize::recognize_rational;
use hgm::{HgData, Q};

const DENS: [i64; 7] = [2, 3, 4, 5, 6, 8, 12];

fn datum() -> impl Strategy<Value = HgData> {
    (0..DENS.len(), prop::array::uniform4(0i64..24)).prop_map(|(i, e)| {
        let n = DENS[i];
        HgData::new(
            vec![Q::new(e[0] % n, n), Q::new(e[1] % n, n)],
            vec![Q::new(e[2] % n, n), Q::new(e[3] % n, n)],
        )
        .unwrap()
    })
}

fn generic() -> impl Strategy<Value = HgData> {
    datum().prop_filter("generic", |d| d.is_generic())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_mod_l_is_an_equivalence(a in datum(), b in datum(), c in datum(), l in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assert!(congruent_mod_l(&a, &a, l));
        prop_assert_eq!(congruent_mod_l(&a, &b, l), congruent_mod_l(&b, &a, l));
        if congruent_mod_l(&a, &b, l) && congruent_mod_l(&b, &c, l) {
            prop_assert!(congruent_mod_l(&a, &c, l));
        }
    }

    #[test]
    fn zero_twist_is_identity(d in datum()) {
        prop_assert_eq!(d.twist(Q::from_integer(0)), d.clone());
        prop_assert_eq!(d.twist(Q::from_integer(3)), d.clone());
        prop_assert_eq!(d.inverse().inverse(), d);
    }

    #[test]
    fn hodge_ignores_input_order(d in generic(), j in 1i64..13) {
        let (a, b) = (d.alpha(), d.beta());
        let swapped = HgData::new(vec![a[1], a[0]], vec![b[1], b[0]]).unwrap();
        let n = d.n() as i64;
        prop_assume!(num_integer::gcd(j, n) == 1);
        prop_assert_eq!(d.zigzag_hodge(j).unwrap(), swapped.zigzag_hodge(j).unwrap());
    }

    #[test]
    fn rationals_round_trip(num in -400i64..400, den in 1i64..400, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let x = Q::new(num, den);
        prop_assume!(den % p as i64 != 0);
        // p^k well above 2 * 400^2 so the reconstruction is unique
        let k = (2.0 * 400f64 * 400.0).log(p as f64).ceil() as u32 + 1;
        let v = PadicNum::from_rational(x, p, k).unwrap();
        prop_assert_eq!(recognize_rational(&v).unwrap(), x);
    }
}

#[test]
fn streaming_matches_table() {
    let cases = [
        ("1/8,7/8;3/8,5/8", 9, 7, 2),
        ("1/5,4/5;3/5,1", 2, 11, 1),
        ("1/2,1/2;1,1", 5, 13, 2),
    ];
    for (s, z, p, f) in cases {
        let d = HgData::parse(s).unwrap();
        let z = Q::from_integer(z);
        let stored = HgmSum::new(&d, p, f, 3).unwrap().eval(z).unwrap();
        let streamed = hgm_padic_streaming(&d, z, p, f, 3).unwrap();
        assert!(
            stored.eq_mod(&streamed).unwrap(),
            "{s} p={p} f={f}: {stored} vs {streamed}"
        );
    }
}
