use std::collections::BTreeSet;

use mixcay::cayley::{eigenvalue_of_kind, SpectrumKind};
use mixcay::integrality::adjacency_decomposition_holds;
use mixcay::{
    a_eigenvalue, atom_of, build_matrices, classify, divisors_mod3, divisors_not3, eclass_of, enumerate_hs_integral,
    exact_spectrum, f_g_values, hs_eigenvalue, in_boolean_algebra, in_skew_family, simple_part_eigenvalue,
    skew_part_eigenvalue, ConnectionSet, CycloNum, ElementSet, ExactScalar, GroupElement, GroupSpec, Rational,
};
use proptest::prelude::*;

type C = CycloNum<Rational>;

const MODULI: &[&[u64]] = &[&[3], &[4], &[6], &[9], &[12], &[2, 6], &[3, 3], &[2, 2, 3], &[3, 9], &[5, 6]];

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    proptest::sample::select(MODULI).prop_map(|m| GroupSpec::new(m).unwrap())
}

fn group_and_subset() -> impl Strategy<Value = (GroupSpec, ElementSet)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.order() as usize;
        (Just(g), proptest::collection::vec(any::<bool>(), n))
    })
    .prop_map(|(g, bits)| {
        let set = g
            .elements()
            .zip(bits)
            .filter(|(x, b)| *b && !x.is_zero())
            .map(|(x, _)| x)
            .collect();
        (g, set)
    })
}

fn cyclo_strategy(max_order: u64) -> impl Strategy<Value = C> {
    (1..=max_order).prop_flat_map(|n| {
        proptest::collection::vec(-10i64..=10, n as usize).prop_map(move |c| C::from_exponent_counts(n, &c))
    })
}

fn same_order_pair(max_order: u64) -> impl Strategy<Value = (C, C)> {
    (1..=max_order).prop_flat_map(|n| {
        (
            proptest::collection::vec(-10i64..=10, n as usize),
            proptest::collection::vec(-10i64..=10, n as usize),
        )
            .prop_map(move |(a, b)| (C::from_exponent_counts(n, &a), C::from_exponent_counts(n, &b)))
    })
}

// --- abelian group -------------------------------------------------------

proptest! {
    #[test]
    fn group_arithmetic(g in group_strategy(), i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let n = g.order() as usize;
        let (x, y, z) = (g.element_at(i % n), g.element_at(j % n), g.element_at(k % n));
        prop_assert_eq!(g.neg(&g.neg(&x)), x.clone());
        prop_assert_eq!(g.add(&g.add(&x, &y), &z), g.add(&x, &g.add(&y, &z)));
        prop_assert!(g.add(&x, &g.neg(&x)).is_zero());
    }

    #[test]
    fn characters_are_symmetric_homomorphisms(g in group_strategy(), i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let n = g.order() as usize;
        let big_n = g.root_order();
        let (a, x, y) = (g.element_at(i % n), g.element_at(j % n), g.element_at(k % n));
        prop_assert_eq!(g.character_exponent(&a, &x), g.character_exponent(&x, &a));
        prop_assert_eq!(
            g.character_exponent(&a, &g.add(&x, &y)),
            (g.character_exponent(&a, &x) + g.character_exponent(&a, &y)) % big_n
        );
        prop_assert_eq!(g.order_of(&x) * g.character_exponent(&a, &x) % big_n, 0);
    }
}

#[test]
fn m_classes_partition_cyclic_subgroup() {
    for m in MODULI {
        let g = GroupSpec::new(m).unwrap();
        for x in g.gamma3() {
            let classes: Vec<ElementSet> = (0..3).map(|r| g.m_class(&x, r).unwrap()).collect();
            let total: usize = classes.iter().map(BTreeSet::len).sum();
            let union: ElementSet = classes.iter().flatten().cloned().collect();
            let subgroup: ElementSet = (0..g.order_of(&x)).map(|k| g.scale(k as i64, &x)).collect();
            assert_eq!(total, union.len(), "disjoint");
            assert_eq!(union, subgroup);
            for a in &classes[0] {
                for r in [1, 2] {
                    let shifted: ElementSet = classes[r].iter().map(|s| g.add(a, s)).collect();
                    assert_eq!(shifted, classes[r]);
                }
            }
            assert_eq!(g.neg_set(&classes[1]), classes[2]);
        }
    }
}

// --- cyclotomic ----------------------------------------------------------

proptest! {
    #[test]
    fn reduction_is_a_ring_homomorphism((z, w) in same_order_pair(36)) {
        let r = z.reduce();
        prop_assert_eq!(r.reduce().coeffs().to_vec(), r.coeffs().to_vec());
        prop_assert_eq!(
            (&z * &w).reduce().coeffs().to_vec(),
            (&z.reduce() * &w.reduce()).reduce().coeffs().to_vec()
        );
        prop_assert_eq!(
            (&z + &w).reduce().coeffs().to_vec(),
            (&z.reduce() + &w.reduce()).reduce().coeffs().to_vec()
        );
    }

    #[test]
    fn field_axioms((z, w) in same_order_pair(24), k in -5i64..5) {
        let n = z.order();
        let u = C::root(n, k).unwrap();
        prop_assert_eq!(&z * &w, &w * &z);
        prop_assert_eq!(&z * &(&w + &u), &(&z * &w) + &(&z * &u));
        prop_assert_eq!(z.conj().conj(), z.clone());
        prop_assert!((&z * &z.conj()).is_real());
        prop_assert!((&z - &z).is_zero());
    }

    #[test]
    fn mixed_orders_lift_to_lcm(z in cyclo_strategy(12), w in cyclo_strategy(12)) {
        let s = &z + &w;
        let l = num_integer::lcm(z.order(), w.order());
        prop_assert_eq!(s.order(), l);
        prop_assert!((s.to_complex() - (z.to_complex() + w.to_complex())).norm() < 1e-9);
    }

    #[test]
    fn integers_are_eisenstein(z in cyclo_strategy(36)) {
        let real = &z + &z.conj();
        if let Some(n) = real.as_integer() {
            prop_assert_eq!(real.as_eisenstein(), Some((n, 0)));
        }
        let k = C::from_int(z.order(), 7);
        prop_assert_eq!(k.as_eisenstein(), Some((7, 0)));
    }

    #[test]
    fn conjugation_detects_reality(z in cyclo_strategy(36)) {
        prop_assert_eq!(z.is_real(), z.to_complex().im.abs() < 1e-9);
        let r = &z + &z.conj();
        prop_assert!(r.is_real());
        prop_assert!(r.to_complex().im.abs() < 1e-9);
    }
}

#[test]
fn reduction_preserves_numeric_value() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=36u64);
        let counts: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        let z = C::from_exponent_counts(n, &counts);
        let diff = (z.to_complex() - z.reduce().to_complex()).norm();
        assert!(diff < 1e-9, "order {n}: {diff}");
    }
}

#[test]
fn eisenstein_integers_are_recognised_exactly() {
    for n in [3u64, 6, 12, 18, 36] {
        let w3 = C::root(n, (n / 3) as i64).unwrap();
        for a in -4..=4 {
            for b in -4..=4 {
                let z = &C::from_int(n, a) + &w3.scale(&Rational::from_int(b));
                assert_eq!(z.as_eisenstein(), Some((a, b)));
                let half = z.scale(&Rational::new(1, 2));
                if a % 2 != 0 || b % 2 != 0 {
                    assert_eq!(half.as_eisenstein(), None);
                }
            }
        }
    }
    let i = C::root(12, 3).unwrap();
    assert_eq!(i.as_eisenstein(), None);
    assert_eq!(C::root(4, 1).unwrap().as_eisenstein(), None);
}

// --- atoms ---------------------------------------------------------------

#[test]
fn atoms_partition_the_group() {
    for m in MODULI {
        let g = GroupSpec::new(m).unwrap();
        let mut seen = ElementSet::new();
        let mut count = 0;
        for x in g.elements() {
            let atom = atom_of(&g, &x);
            assert!(atom.contains(&x));
            for y in &atom {
                assert_eq!(atom_of(&g, y), atom);
            }
            if seen.insert(atom.first().unwrap().clone()) {
                count += atom.len();
            }
        }
        assert_eq!(count as u64, g.order());
    }
}

#[test]
fn atoms_split_into_two_eclasses() {
    for m in MODULI {
        let g = GroupSpec::new(m).unwrap();
        for x in g.gamma3() {
            let plus = eclass_of(&g, &x).unwrap();
            let minus = eclass_of(&g, &g.neg(&x)).unwrap();
            assert!(plus.is_disjoint(&minus));
            let union: ElementSet = plus.union(&minus).cloned().collect();
            assert_eq!(union, atom_of(&g, &x));
            assert_eq!(g.neg_set(&plus), minus);
        }
    }
}

#[test]
fn m_class_decomposes_into_eclasses_and_atoms() {
    for m in [&[9u64][..], &[12], &[18], &[3, 9]] {
        let g = GroupSpec::new(m).unwrap();
        for x in g.gamma3() {
            let gg = g.order_of(&x) / 3;
            let via = |pos: &[u64], neg: &[u64]| -> ElementSet {
                let mut out = ElementSet::new();
                for &h in pos {
                    out.extend(eclass_of(&g, &g.scale(h as i64, &x)).unwrap());
                }
                for &h in neg {
                    out.extend(eclass_of(&g, &g.scale(-(h as i64), &x)).unwrap());
                }
                out
            };
            let d1 = divisors_mod3(gg, 1).unwrap();
            let d2 = divisors_mod3(gg, 2).unwrap();
            assert_eq!(g.m_class(&x, 1).unwrap(), via(&d1, &d2), "M_1, {g} {x}");
            assert_eq!(g.m_class(&x, 2).unwrap(), via(&d2, &d1), "M_2, {g} {x}");
            let atoms: ElementSet = divisors_not3(gg)
                .into_iter()
                .flat_map(|h| atom_of(&g, &g.scale(h as i64, &x)))
                .collect();
            let m12: ElementSet = g.m_class(&x, 1).unwrap().union(&g.m_class(&x, 2).unwrap()).cloned().collect();
            assert_eq!(m12, atoms, "M_1 u M_2, {g} {x}");
        }
    }
}

fn same_cyclic_subgroup(g: &GroupSpec, x: &GroupElement, y: &GroupElement) -> bool {
    atom_of(g, x).contains(y)
}

proptest! {
    #[test]
    fn boolean_membership_is_symmetric_closure((g, s) in group_and_subset()) {
        let closed = s.iter().all(|x| g.elements().filter(|y| same_cyclic_subgroup(&g, x, y)).all(|y| s.contains(&y)));
        let symmetric = s.iter().all(|x| s.contains(&g.neg(x)));
        let d = in_boolean_algebra(&g, &s);
        prop_assert_eq!(d.is_some(), closed && symmetric);
        if let Some(d) = d {
            prop_assert_eq!(d.union(), s.clone());
            let total: usize = d.classes.iter().map(BTreeSet::len).sum();
            prop_assert_eq!(total, s.len());
        }
    }

    #[test]
    fn skew_family_symmetrizes_into_boolean_algebra((g, s) in group_and_subset()) {
        if let Some(d) = in_skew_family(&g, &s) {
            prop_assert_eq!(d.union(), s.clone());
            let both: ElementSet = s.union(&g.neg_set(&s)).cloned().collect();
            prop_assert!(in_boolean_algebra(&g, &both).is_some());
            prop_assert!(s.iter().all(|x| g.in_gamma3(x)));
        }
    }
}

// --- cayley --------------------------------------------------------------

proptest! {
    #[test]
    fn spectral_invariants((g, s) in group_and_subset()) {
        let cs = ConnectionSet::new(&g, s).unwrap();
        let m = build_matrices(&cs);
        prop_assert!(m.is_hermitian());
        let hs = exact_spectrum::<Rational>(&cs, SpectrumKind::Hs);
        prop_assert!(hs.trace().is_zero());
        for alpha in g.elements() {
            let gamma: C = hs_eigenvalue(&cs, &alpha);
            let mu: C = skew_part_eigenvalue(&cs, &alpha);
            let lambda: C = simple_part_eigenvalue(&cs, &alpha);
            prop_assert!(gamma.is_real());
            prop_assert!(mu.is_real());
            prop_assert_eq!(&lambda + &mu, gamma.clone());
            let lambda_neg: C = simple_part_eigenvalue(&cs, &g.neg(&alpha));
            prop_assert_eq!(lambda, lambda_neg);
            if cs.is_symmetric() {
                let adj: C = a_eigenvalue(&cs, &alpha);
                prop_assert_eq!(gamma, adj);
            }
            let via_kind: C = eigenvalue_of_kind(&cs, SpectrumKind::Adjacency, &alpha);
            prop_assert_eq!(via_kind, a_eigenvalue::<Rational>(&cs, &alpha));
        }
    }

    #[test]
    fn f_and_g_decompose_adjacency_eigenvalues((g, s) in group_and_subset()) {
        let cs = ConnectionSet::new(&g, s).unwrap();
        for alpha in g.elements() {
            let (f, gv) = f_g_values::<Rational>(&cs, &alpha);
            prop_assert!(f.is_real());
            prop_assert!(gv.is_real());
            prop_assert!(adjacency_decomposition_holds::<Rational>(&cs, &alpha));
            if cs.is_oriented() {
                prop_assert!(f.is_zero());
            } else if cs.is_symmetric() {
                prop_assert!(gv.is_zero());
                prop_assert_eq!(f, a_eigenvalue::<Rational>(&cs, &alpha));
            }
        }
    }

    #[test]
    fn three_way_agreement((g, s) in group_and_subset()) {
        let r = classify::<Rational>(&g, s).unwrap();
        prop_assert!(r.consistency, "{:?}", r.set);
    }
}

// --- integrality ---------------------------------------------------------

fn all_group_presentations_up_to(order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 1..=order {
        out.push(GroupSpec::new(&[n]).unwrap());
    }
    for a in 2..=order {
        for b in a..=order {
            if a * b <= order {
                out.push(GroupSpec::new(&[a, b]).unwrap());
            }
            for c in b..=order {
                if a * b * c <= order {
                    out.push(GroupSpec::new(&[a, b, c]).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_equals_spectral_filter_for_small_groups() {
    for g in all_group_presentations_up_to(12) {
        let nonzero: Vec<GroupElement> = g.elements().filter(|x| !x.is_zero()).collect();
        let k = nonzero.len();
        let mut spectral: BTreeSet<ElementSet> = BTreeSet::new();
        for mask in 0u32..(1 << k) {
            let s: ElementSet = nonzero
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect();
            let cs = ConnectionSet::new(&g, s.clone()).unwrap();
            if exact_spectrum::<Rational>(&cs, SpectrumKind::Hs).all_integers() {
                spectral.insert(s);
            }
        }
        let constructed: Vec<ElementSet> = enumerate_hs_integral(&g, u64::MAX).map(|cs| cs.members().clone()).collect();
        let as_set: BTreeSet<ElementSet> = constructed.iter().cloned().collect();
        assert_eq!(as_set.len(), constructed.len(), "{g}: duplicate sets");
        assert_eq!(as_set, spectral, "{g}");
    }
}

#[test]
fn oriented_sets_without_order_three_elements() {
    for m in [&[4u64][..], &[8], &[2, 4], &[5], &[10]] {
        let g = GroupSpec::new(m).unwrap();
        assert!(g.gamma3().is_empty());
        let nonzero: Vec<GroupElement> = g.elements().filter(|x| !x.is_zero()).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            let s: ElementSet = nonzero
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect();
            let cs = ConnectionSet::new(&g, s.clone()).unwrap();
            if !cs.is_oriented() {
                continue;
            }
            let r = classify::<Rational>(&g, s.clone()).unwrap();
            assert_eq!(r.hs_verdict_spectral, s.is_empty(), "{g} {:?}", cs.to_spec_string());
            assert!(r.consistency);
        }
    }
}

#[test]
fn oriented_integral_sets_have_integer_g() {
    let g = GroupSpec::new(&[9]).unwrap();
    let oriented: Vec<ConnectionSet> = enumerate_hs_integral(&g, u64::MAX).filter(|cs| cs.is_oriented()).collect();
    assert_eq!(oriented.len(), 9);
    for cs in oriented {
        for alpha in g.elements() {
            let (f, gv) = f_g_values::<Rational>(&cs, &alpha);
            assert!(f.is_zero());
            assert!(gv.as_integer().is_some(), "{} alpha={alpha}", cs.to_spec_string());
        }
    }
}

#[test]
fn big_rational_backend_agrees() {
    let g = GroupSpec::new(&[3, 3]).unwrap();
    let s: ElementSet = [g.element(&[0, 1]).unwrap(), g.element(&[2, 0]).unwrap()].into();
    let small = classify::<Rational>(&g, s.clone()).unwrap();
    let big = classify::<mixcay::BigRational>(&g, s).unwrap();
    let a: Vec<Option<i64>> = small.hs_spectrum.values().map(|v| v.as_integer()).collect();
    let b: Vec<Option<i64>> = big.hs_spectrum.values().map(|v| v.as_integer()).collect();
    assert_eq!(a, b);
    assert_eq!(Rational::from_int(2).to_ratio_string(), "2/1");
}
