use std::sync::Arc;

use proptest::prelude::*;

use soergel::complex::{find_homotopy_equivalence, gaussian_eliminate, tensor_r_complexes, SearchOptions};
use soergel::rouquier::{cabled_crossing, rouquier};
use soergel::{BraidWord, Complex, HeckeElement};

fn braid_word(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..strands, any::<bool>()), 0..=max_len)
        .prop_map(move |letters| BraidWord::new(strands, letters).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rouquier_is_multiplicative(a in braid_word(3, 3), b in braid_word(3, 3)) {
        let whole = rouquier(&a.concat(&b)).unwrap();
        let product = tensor_r_complexes(&rouquier(&a).unwrap(), &rouquier(&b).unwrap()).unwrap();
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn braid_image_is_multiplicative(a in braid_word(4, 4), b in braid_word(4, 4)) {
        let whole = HeckeElement::braid_image(&a.concat(&b));
        let product = HeckeElement::braid_image(&a).mul(&HeckeElement::braid_image(&b));
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn inverse_words_cancel_in_hecke(w in braid_word(3, 6)) {
        let product = HeckeElement::braid_image(&w).mul(&HeckeElement::braid_image(&w.inverse()));
        prop_assert!(product.sub(&HeckeElement::one(3)).is_zero());
    }

    #[test]
    fn euler_characteristic_matches(w in braid_word(3, 4)) {
        let c = rouquier(&w).unwrap();
        prop_assert!(c.verify().is_ok());
        prop_assert_eq!(c.euler_characteristic().unwrap(), HeckeElement::braid_image(&w));
    }
}

#[test]
fn cabled_crossing_inverts() {
    for (m, n) in [(1, 1), (1, 2), (2, 1)] {
        let x = cabled_crossing(m, n, true).unwrap();
        let y = cabled_crossing(n, m, false).unwrap();
        let both = Arc::new(tensor_r_complexes(&x, &y).unwrap());
        let (reduced, _) = gaussian_eliminate(&both, true).unwrap();
        assert_eq!(reduced.to_string(), "R @ 0", "X_{{{},{}}}", m, n);
        if m + n == 2 {
            let unit = Arc::new(Complex::unit(2));
            let res = find_homotopy_equivalence(&both, &unit, &SearchOptions::default()).unwrap();
            assert!(res.equivalence.unwrap().verify().is_ok());
        }
    }
}

#[test]
fn serialization_is_deterministic() {
    let w = BraidWord::parse(3, "s1 s2' s1").unwrap();
    let a = serde_json::to_string(&rouquier(&w).unwrap()).unwrap();
    let b = serde_json::to_string(&rouquier(&w).unwrap()).unwrap();
    assert_eq!(a, b);
    let back: BraidWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
    assert_eq!(back, w);
}

#[test]
fn parse_errors_are_located() {
    match BraidWord::parse(3, "s1 s9") {
        Err(soergel::Error::Parse { column, .. }) => assert!(column > 1),
        other => panic!("{:?}", other),
    }
}
