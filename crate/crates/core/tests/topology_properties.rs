use proptest::prelude::*;

use einstein4::topology::{enumerate_homeotypes, hitchin_gate, window_gate, Branch};

fn parity_pair() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..40, -20i64..20).prop_map(|(chi, tau)| if (chi - tau).rem_euclid(2) == 0 { (chi, tau) } else { (chi + 1, tau) })
}

proptest! {
    #[test]
    fn window_is_orientation_symmetric((chi, tau) in parity_pair()) {
        prop_assert_eq!(window_gate(chi, tau).unwrap().ok, window_gate(chi, -tau).unwrap().ok);
        prop_assert_eq!(hitchin_gate(chi, tau).unwrap().ok, hitchin_gate(chi, -tau).unwrap().ok);
    }

    #[test]
    fn hitchin_is_weaker_than_window((chi, tau) in parity_pair()) {
        if window_gate(chi, tau).unwrap().ok {
            prop_assert!(hitchin_gate(chi, tau).unwrap().ok);
        }
    }

    #[test]
    fn parity_mismatch_is_rejected(chi in -10i64..40, tau in -20i64..20) {
        let odd = (chi - tau).rem_euclid(2) == 1;
        prop_assert_eq!(window_gate(chi, tau).is_err(), odd);
    }
}

#[test]
fn enumeration_matches_the_window() {
    let classes = enumerate_homeotypes();
    for h in &classes {
        let passes = window_gate(h.chi, h.tau).unwrap().ok;
        assert!(passes || h.branch == Branch::SelfDual, "{h:?}");
    }
    // every unoriented (b+, b-) passing the window is listed
    for b_plus in 0..12u32 {
        for b_minus in 0..=b_plus {
            let (chi, tau) = (2 + (b_plus + b_minus) as i64, b_plus as i64 - b_minus as i64);
            if window_gate(chi, tau).unwrap().ok {
                assert!(classes.iter().any(|h| (h.b_plus, h.b_minus) == (b_plus, b_minus)), "({b_plus}, {b_minus})");
            }
        }
    }
}
