use proptest::prelude::*;
use rug::{Float, Rational};
use zeta_workbench::bell::{
    bell_complete_partition, bell_complete_recurrence, bell_complete_sequence, bell_forward, bell_invert, BellInput,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::from((p, q)))
}

fn args(len: usize) -> impl Strategy<Value = BellInput<Rational>> {
    prop::collection::vec(rational(), len).prop_map(BellInput::exact)
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from(rug::Integer::from(rug::Integer::binomial_u(n as u32, k as u32)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_sum_matches_recurrence(x in args(12), n in 0usize..=12) {
        let a = bell_complete_partition(&x, n).unwrap();
        let b = bell_complete_recurrence(&x, n).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn alternating_arguments_flip_odd_orders(x in args(10)) {
        let plain = bell_complete_sequence(&x, 10).unwrap();
        let alt = bell_complete_sequence(&x.alternated(), 10).unwrap();
        for n in 0..=10 {
            let expected = if n % 2 == 0 { plain[n].clone() } else { Rational::from(-&plain[n]) };
            prop_assert_eq!(&alt[n], &expected);
        }
    }

    #[test]
    fn sum_of_arguments_is_a_binomial_convolution(x in args(8), y in args(8)) {
        let sum = BellInput::exact(
            x.entries.iter().zip(&y.entries).map(|(a, b)| Rational::from(a + b)).collect(),
        );
        let ys = bell_complete_sequence(&sum, 8).unwrap();
        let yx = bell_complete_sequence(&x, 8).unwrap();
        let yy = bell_complete_sequence(&y, 8).unwrap();
        for n in 0..=8 {
            let mut acc = Rational::new();
            for i in 0..=n {
                acc += binomial(n, i) * Rational::from(&yx[i] * &yy[n - i]);
            }
            prop_assert_eq!(&ys[n], &acc);
        }
    }

    #[test]
    fn inversion_round_trips(x in args(9)) {
        let y = BellInput::exact(bell_forward(&x).unwrap());
        prop_assert_eq!(bell_invert(&y).unwrap(), x.entries);
    }

    #[test]
    fn float_path_tracks_exact_path(x in args(10)) {
        let bits = 200;
        let xf = BellInput::real(bits, x.entries.iter().map(|q| Float::with_val(bits, q)).collect());
        let exact = bell_complete_sequence(&x, 10).unwrap();
        let approx = bell_complete_sequence(&xf, 10).unwrap();
        for (e, a) in exact.iter().zip(&approx) {
            let e = Float::with_val(bits, e);
            let scale = Float::with_val(bits, e.abs_ref()).max(&Float::with_val(bits, 1));
            let err = Float::with_val(bits, &e - a).abs() / scale;
            prop_assert!(err < 1e-50);
        }
    }
}

#[test]
fn all_ones_give_bell_numbers() {
    let x = BellInput::from_integers(&[1; 10]);
    let ys = bell_complete_sequence(&x, 10).unwrap();
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    for (y, b) in ys.iter().zip(bell) {
        assert_eq!(*y, b);
    }
}

#[test]
fn too_few_arguments_is_an_error() {
    let x = BellInput::from_integers(&[1, 2]);
    assert!(bell_complete_partition(&x, 3).is_err());
    assert!(bell_invert(&BellInput::exact(vec![])).is_err());
}
