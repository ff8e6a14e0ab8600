use moment_models::canonical::{
    euclid_decompose, hamiltonian_from_moments, hamiltonian_to_kl, kl_to_hamiltonian, weyl_tail,
    weyl_tail_recursion, AngleData,
};
use moment_models::exact_core::{poly_divmod, ratio, Polynomial, RationalFunction};
use moment_models::jacobi_weyl::{m_continued_fraction, m_poly_ratio, m_resolvent};
use moment_models::moments::{classify, hankel_ledger, moments_from_measure, DiscreteMeasure};
use moment_models::orthopoly::{first_kind_determinant, jacobi_from_moments, recurrence_polys};
use moment_models::strings::{
    kl_from_ledger, kl_from_moments, m_truncated_exact, stieltjes_from_moments, string_weyl_ratfun,
    trace_sums, Cell, KreinLangerString, StringEnd,
};
use moment_models::{ComplexValue, Measure, Poly, RatFun, Rational};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn positive_rat() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 0..=max_len).prop_map(Polynomial::new)
}

/// Measures with 1..=max_atoms atoms at distinct rational points; about
/// half of them are symmetric, which makes some `Δ_{1,n}` vanish.
fn measure(max_atoms: usize) -> impl Strategy<Value = Measure> {
    let atoms = prop::collection::btree_map((-20i64..=20, 1i64..=3), positive_rat(), 1..=max_atoms);
    (atoms, any::<bool>()).prop_map(|(atoms, symmetric)| {
        let mut out: std::collections::BTreeMap<Rational, Rational> = Default::default();
        for ((p, q), w) in atoms {
            let x = ratio(p, q);
            if symmetric {
                if x < ratio(0, 1) {
                    continue;
                }
                out.entry(-x.clone()).or_insert_with(|| w.clone());
            }
            out.entry(x).or_insert(w);
        }
        if out.is_empty() {
            out.insert(ratio(0, 1), ratio(1, 1));
        }
        DiscreteMeasure::new(out.into_iter().collect()).unwrap()
    })
}

fn cell() -> impl Strategy<Value = Cell<Rational>> {
    (
        positive_rat(),
        rat(),
        prop_oneof![Just(ratio(0, 1)), positive_rat()],
    )
        .prop_map(|(l, w, u)| {
            if w == ratio(0, 1) && u == ratio(0, 1) {
                Cell::new(l, ratio(1, 1), u)
            } else {
                Cell::new(l, w, u)
            }
        })
}

fn finished_string() -> impl Strategy<Value = KreinLangerString<Rational>> {
    (
        prop::collection::vec(cell(), 0..=5),
        prop::option::of(positive_rat()),
    )
        .prop_map(|(cells, tail)| {
            let end = match tail {
                Some(l) => StringEnd::Finite(l),
                None if cells.is_empty() => StringEnd::Finite(ratio(1, 1)),
                None => StringEnd::Infinite,
            };
            KreinLangerString::new(cells, end).unwrap()
        })
}

fn samples() -> [ComplexValue; 3] {
    [
        ComplexValue::new(0.0, 1.0),
        ComplexValue::new(0.0, 2.0),
        ComplexValue::new(-1.0, 1.0),
    ]
}

fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn divmod_reconstructs(a in poly(6), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = poly_divmod(&a, &b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn plucker_identity(mu in measure(6)) {
        let k = mu.len();
        let s = moments_from_measure(&mu, 2 * k + 2).unwrap();
        let ledger = hankel_ledger(&s, k).unwrap();
        for n in 0..k as isize {
            let lhs = ledger.d1(n + 1).unwrap() * ledger.dm1(n).unwrap()
                - ledger.d1(n).unwrap() * ledger.dm1(n + 1).unwrap();
            let d0 = ledger.d0(n).unwrap();
            prop_assert_eq!(lhs, d0.clone() * d0);
        }
    }

    #[test]
    fn rank_equals_atom_count(mu in measure(6)) {
        let s = moments_from_measure(&mu, 2 * mu.len() + 3).unwrap();
        prop_assert_eq!(classify(&s).unwrap().finite_rank, Some(mu.len()));
    }

    #[test]
    fn determinant_matches_recurrence(mu in measure(6)) {
        let n = mu.len().min(8);
        let s = moments_from_measure(&mu, 2 * n + 2).unwrap();
        let jacobi = jacobi_from_moments(&s, n - 1).unwrap();
        let (p, _) = recurrence_polys(&jacobi, n).unwrap();
        for (k, pk) in p.iter().enumerate() {
            prop_assert_eq!(&first_kind_determinant(&s, k).unwrap(), pk);
        }
    }

    #[test]
    fn weyl_routes_agree_and_are_herglotz(mu in measure(6)) {
        let n = mu.len();
        let s = moments_from_measure(&mu, 2 * n + 1).unwrap();
        let jacobi = jacobi_from_moments(&s, n - 1).unwrap();
        for z in samples() {
            let a = m_resolvent(&jacobi, n, z).unwrap();
            let b = m_poly_ratio(&s, n, z).unwrap();
            let c = m_continued_fraction(&jacobi, n, z).unwrap();
            prop_assert!(rel(a, b) <= 1e-10 && rel(a, c) <= 1e-10, "{} {} {}", a, b, c);
            prop_assert!(a.im > 0.0);
            let conj = m_resolvent(&jacobi, n, z.conj()).unwrap();
            prop_assert!(rel(conj, a.conj()) <= 1e-12);
        }
    }

    #[test]
    fn euclid_reexpands_exactly(mu in measure(5)) {
        let mut f = RatFun::zero();
        for (x, w) in mu.atoms() {
            let term = RationalFunction::new(
                Polynomial::constant(w.clone()),
                Polynomial::linear(x.clone(), ratio(-1, 1)),
            ).unwrap();
            f = &f + &term;
        }
        let string = euclid_decompose(&f).unwrap();
        prop_assert!(string.is_finished());
        prop_assert_eq!(string_weyl_ratfun(&string).unwrap(), f);
    }

    #[test]
    fn finite_rank_routes_agree(mu in measure(5)) {
        let s = moments_from_measure(&mu, 2 * mu.len() + 1).unwrap();
        let euclid = kl_from_moments(&s, 10).unwrap();
        prop_assert!(euclid.is_finished());
        prop_assert_eq!(kl_from_ledger(&s, 10).unwrap(), euclid);
    }

    #[test]
    fn commutative_square(mu in measure(7)) {
        prop_assume!(mu.len() >= 7);
        let s = moments_from_measure(&mu, 13).unwrap();
        let h = hamiltonian_from_moments(&s, 6).unwrap();
        let via_h = hamiltonian_to_kl(&h).unwrap();
        let direct = kl_from_moments(&s, via_h.len()).unwrap();
        prop_assert_eq!(via_h, direct);
    }

    #[test]
    fn trace_identities_vanish(mu in measure(7)) {
        prop_assume!(mu.len() >= 5);
        let s = moments_from_measure(&mu, 2 * mu.len() + 1).unwrap();
        let string = kl_from_moments(&s, 10).unwrap();
        for j in 0..string.len() {
            let r = trace_sums(&s, &string, j).unwrap();
            prop_assert!(r.all_zero(), "j = {}: {:?}", j, r);
        }
    }

    #[test]
    fn positive_support_gives_stieltjes(mu in measure(6)) {
        let shifted: Vec<_> = mu.atoms().iter().map(|(x, w)| (x.clone() + ratio(21, 1), w.clone())).collect();
        let mu = DiscreteMeasure::new(shifted).unwrap();
        let s = moments_from_measure(&mu, 2 * mu.len() + 1).unwrap();
        let kl = kl_from_moments(&s, 10).unwrap();
        let st = stieltjes_from_moments(&s, 10).unwrap();
        prop_assert!(kl.cells().iter().all(|c| c.upsilon == ratio(0, 1)));
        prop_assert_eq!(&kl, st.string());
    }

    #[test]
    fn string_routes_agree_exactly(string in finished_string()) {
        for j in 0..=string.len() {
            let (cf, ode) = m_truncated_exact(&string, j).unwrap();
            prop_assert_eq!(cf, ode);
        }
    }

    #[test]
    fn string_hamiltonian_maps_are_inverse(string in finished_string()) {
        let h = kl_to_hamiltonian(&string).unwrap();
        prop_assert_eq!(hamiltonian_to_kl(&h).unwrap(), string.clone());
        prop_assert_eq!(kl_to_hamiltonian(&hamiltonian_to_kl(&h).unwrap()).unwrap(), h.clone());
        for iv in h.intervals() {
            let (sin2, cos_sin, cos2) = iv.angle.trig();
            prop_assert_eq!(sin2.clone() + cos2.clone(), ratio(1, 1));
            prop_assert_eq!(cos_sin.clone() * cos_sin, sin2 * cos2);
        }
        if let Some(total) = h.total_length() {
            let mut w = ratio(0, 1);
            let mut side = ratio(0, 1);
            for c in string.cells() {
                side += c.l.clone() * (ratio(1, 1) + w.clone() * w.clone()) + c.upsilon.clone();
                w += c.omega.clone();
            }
            if let StringEnd::Finite(l) = string.end() {
                side += l.clone() * (ratio(1, 1) + w.clone() * w);
            }
            prop_assert_eq!(total, side);
        }
    }

    #[test]
    fn hamiltonian_recursion_matches_transfer(string in finished_string()) {
        let h = kl_to_hamiltonian(&string).unwrap();
        for z in [ComplexValue::new(0.0, 1.0), ComplexValue::new(0.0, 2.0)] {
            for n in 0..h.len() {
                let a = weyl_tail(&h, z, n).unwrap();
                let b = weyl_tail_recursion(&h, z, n).unwrap();
                prop_assert!(rel(a, b) <= 1e-9, "n = {}: {} vs {}", n, a, b);
            }
        }
    }

    #[test]
    fn angle_windows_increase(string in finished_string()) {
        let h = kl_to_hamiltonian(&string).unwrap();
        let r: Vec<f64> = h.intervals().iter().map(|iv| iv.angle.radians()).collect();
        for pair in r.windows(2) {
            prop_assert!(pair[1] > pair[0] && pair[1] - pair[0] < std::f64::consts::PI);
        }
        prop_assert_eq!(&h.intervals()[0].angle, &AngleData::right_angle());
    }
}
