use abelian_fourier::random::{random_function, seeded_rng};
use abelian_fourier::{
    build_reference_operator, is_automorphism, random_automorphism, recover, Form, GFunction, Group,
    RecoverOptions, Side,
};
use proptest::prelude::*;

fn orders() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=12, 1..=3).prop_filter("size", |o| o.iter().product::<usize>() <= 256)
}

fn group_and_seed() -> impl Strategy<Value = (Group, u64)> {
    (orders(), any::<u64>()).prop_map(|(o, seed)| (Group::new(&o).unwrap(), seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_coordinates_round_trip((g, _) in group_and_seed(), pick in any::<prop::sample::Index>()) {
        let j = pick.index(g.size());
        let e = g.element_of(j).unwrap();
        prop_assert_eq!(g.index_of(&e).unwrap(), j);
        let neg = g.neg_index(j);
        prop_assert_eq!(g.add_index(j, neg), 0);
    }

    #[test]
    fn fft_agrees_with_direct_sum((g, seed) in group_and_seed()) {
        let f = random_function(&g, Side::Primal, &mut seeded_rng(seed));
        let fast = f.fft_forward().unwrap();
        prop_assert!(fast.max_abs_diff(&f.dft_naive().unwrap()) <= 1e-9 * (1.0 + f.norm_1()));
        prop_assert!(fast.fft_inverse().unwrap().max_abs_diff(&f) <= 1e-9);
    }

    #[test]
    fn plancherel((g, seed) in group_and_seed()) {
        let f = random_function(&g, Side::Primal, &mut seeded_rng(seed));
        let fh = f.fft_forward().unwrap();
        prop_assert!((fh.norm_2() - f.norm_2()).abs() <= 1e-9 * (1.0 + f.norm_2()));
    }

    #[test]
    fn convolution_is_commutative_and_fast_path_agrees((g, seed) in group_and_seed(), side in prop_oneof![Just(Side::Primal), Just(Side::Dual)]) {
        let mut rng = seeded_rng(seed);
        let (a, b) = (random_function(&g, side, &mut rng), random_function(&g, side, &mut rng));
        let ab = a.convolve(&b).unwrap();
        prop_assert!(ab.max_abs_diff(&b.convolve(&a).unwrap()) <= 1e-9);
        prop_assert!(ab.max_abs_diff(&a.convolve_fast(&b).unwrap()) <= 1e-9);
    }

    #[test]
    fn involution_laws((g, seed) in group_and_seed()) {
        let mut rng = seeded_rng(seed);
        let (a, b) = (random_function(&g, Side::Primal, &mut rng), random_function(&g, Side::Primal, &mut rng));
        prop_assert_eq!(a.star().star(), a.clone());
        let lhs = a.convolve(&b).unwrap().star();
        prop_assert!(lhs.max_abs_diff(&a.star().convolve(&b.star()).unwrap()) <= 1e-9);
        prop_assert!(a.star().fft_forward().unwrap().max_abs_diff(&a.fft_forward().unwrap().conj()) <= 1e-9);
    }

    #[test]
    fn automorphisms_form_a_group((g, seed) in group_and_seed()) {
        let a = random_automorphism(&g, seed).unwrap();
        let b = random_automorphism(&g, seed.wrapping_add(1)).unwrap();
        prop_assert!(is_automorphism(a.perm(), &g).unwrap());
        prop_assert!(is_automorphism(a.compose(&b).unwrap().perm(), &g).unwrap());
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn reference_operators_are_recovered((g, seed) in group_and_seed(), conj in any::<bool>(), t_form in any::<bool>()) {
        let psi = random_automorphism(&g, seed).unwrap();
        let form = if t_form { Form::T } else { Form::U };
        let op = build_reference_operator(&g, &psi, conj, form).unwrap();
        let report = recover(&op, &RecoverOptions { parallel: false, ..RecoverOptions::default() }).unwrap();
        prop_assert!(report.matches(&psi, conj));
    }

    #[test]
    fn point_mass_transforms_have_unit_modulus((g, _) in group_and_seed(), pick in any::<prop::sample::Index>()) {
        let spectrum = GFunction::delta(&g, pick.index(g.size())).fft_forward().unwrap();
        prop_assert!(spectrum.values().iter().all(|v| (v.norm() - 1.0).abs() <= 1e-12));
    }
}
