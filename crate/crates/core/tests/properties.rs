use std::collections::BTreeSet;
use std::sync::OnceLock;

use kostant::classical::{
    enumerate_parabolics, parabolic_roots, project_unchecked, reductive_part, root_spaces, t_root_system,
    ParabolicDatum, DEFAULT_ENUMERATION_CAP,
};
use kostant::invariants::{
    invariants_up_to_degree, is_weyl_invariant, module_character, strip_down_decompose, sym_power_character,
    t_level_zero_sum, trivial_count, trivial_multiplicity, GradedModule,
};
use kostant::positivity::{
    build_relation, check_positive_system, extend_to_order, find_parabolic_containing, pair, phi_cut, saturate,
    vertex_key, zero_in_positive_span, ConeOutcome, ContainmentOutcome, OrderOutcome,
};
use kostant::rational::{int, rat, Rational, Vector};
use kostant::roots::{fundamental_weights, generate_roots, weyl_dimension, LieType};
use kostant::verify::{bookkeeping_holds, grid, projection_discrepancies};
use proptest::prelude::*;

fn small_grid() -> &'static [ParabolicDatum] {
    static GRID: OnceLock<Vec<ParabolicDatum>> = OnceLock::new();
    GRID.get_or_init(|| grid(&[LieType::Gl, LieType::B, LieType::C, LieType::D], Some(3)))
}

fn full_grid() -> &'static [ParabolicDatum] {
    static GRID: OnceLock<Vec<ParabolicDatum>> = OnceLock::new();
    GRID.get_or_init(kostant::verify::default_grid)
}

fn subset(rsh: &[Vector], mask: u64) -> Vec<Vector> {
    rsh.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, v)| v.clone()).collect()
}

fn datum_with_subset(data: &'static [ParabolicDatum]) -> impl Strategy<Value = (ParabolicDatum, Vec<Vector>)> {
    (0..data.len(), any::<u64>()).prop_map(move |(i, mask)| {
        let d = data[i].clone();
        let s = subset(&t_root_system(&d).vectors(), mask);
        (d, s)
    })
}

fn root_system_type() -> impl Strategy<Value = (LieType, usize)> {
    prop_oneof![
        (1usize..=8).prop_map(|n| (LieType::A, n)),
        (2usize..=8).prop_map(|n| (LieType::B, n)),
        (2usize..=8).prop_map(|n| (LieType::C, n)),
        (3usize..=8).prop_map(|n| (LieType::D, n)),
        Just((LieType::G2, 2)),
        Just((LieType::F4, 4)),
        Just((LieType::E6, 6)),
        Just((LieType::E7, 7)),
        Just((LieType::E8, 8)),
    ]
}

fn closed_form(t: LieType, n: usize) -> usize {
    match t {
        LieType::A => n * (n + 1),
        LieType::B | LieType::C => 2 * n * n,
        LieType::D => 2 * n * (n - 1),
        LieType::G2 => 12,
        LieType::F4 => 48,
        LieType::E6 => 72,
        LieType::E7 => 126,
        LieType::E8 => 240,
        LieType::Gl => n * (n - 1),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn root_systems_are_closed((t, n) in root_system_type()) {
        let rs = generate_roots(t, n).unwrap();
        let all: BTreeSet<&Vector> = rs.all_roots.iter().collect();
        prop_assert_eq!(rs.all_roots.len(), closed_form(t, n));
        for a in &rs.all_roots {
            prop_assert!(all.contains(&-a));
        }
        for a in &rs.all_roots {
            for b in rs.simple_roots.iter().chain(rs.all_roots.iter().take(12)) {
                prop_assert!(all.contains(&rs.reflect(a, b)));
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual((t, n) in root_system_type()) {
        let rs = generate_roots(t, n).unwrap();
        let w = fundamental_weights(&rs).unwrap();
        for (i, row) in w.iter().enumerate() {
            let mut omega = Vector::zero(rs.ambient_dim(), rs.basis);
            for (c, a) in row.iter().zip(&rs.simple_roots) {
                omega = &omega + &a.scale(*c);
            }
            for (j, a) in rs.simple_roots.iter().enumerate() {
                prop_assert_eq!(rs.coroot_pairing(&omega, a), int((i == j) as i128));
            }
        }
        prop_assert_eq!(weyl_dimension(&rs, &Vector::zero(rs.ambient_dim(), rs.basis)).unwrap(), 1);
        // The adjoint module: |Δ| root spaces plus the Cartan subalgebra.
        let adjoint = weyl_dimension(&rs, &rs.highest_root).unwrap();
        prop_assert_eq!(adjoint as usize, rs.all_roots.len() + rs.rank);
    }

    #[test]
    fn rational_identities_are_exact(a in -1_000_000_000i64..1_000_000_000, b in 1i64..1_000_000_000) {
        prop_assume!(a != 0);
        let x = rat(a as i128, b as i128);
        prop_assert_eq!(x * x.recip(), int(1));
        prop_assert_eq!((x + x) / int(2), x);
    }

    #[test]
    fn projections_and_dimensions(i in 0..full_grid().len()) {
        let d = &full_grid()[i];
        prop_assert!(projection_discrepancies(d).is_empty());
        prop_assert!(bookkeeping_holds(d));
        let r = t_root_system(d);
        for t in &r.troots {
            let j = r.index_of(&-&t.delta);
            prop_assert!(j.is_some());
            prop_assert_eq!(r.troots[j.unwrap()].dim, t.dim);
        }
    }

    #[test]
    fn parabolics_contain_the_reductive_part(i in 0..small_grid().len()) {
        let d = &small_grid()[i];
        let s_roots: BTreeSet<Vector> = reductive_part(d).roots.into_iter().collect();
        let p = parabolic_roots(d);
        prop_assert!(s_roots.is_subset(&p));
        for a in p.difference(&s_roots) {
            prop_assert!(!project_unchecked(d, a).is_zero());
        }
        for q in enumerate_parabolics(d, DEFAULT_ENUMERATION_CAP).unwrap() {
            let q_roots: BTreeSet<Vector> = reductive_part(&q).roots.into_iter().collect();
            prop_assert_eq!(&q_roots, &s_roots);
        }
    }

    #[test]
    fn saturation_is_a_closure((d, s) in datum_with_subset(full_grid())) {
        let rsh = t_root_system(&d).vectors();
        let sat = saturate(&rsh, &s);
        prop_assert!(s.iter().all(|v| sat.contains(v)));
        prop_assert_eq!(saturate(&rsh, &sat), sat);
    }

    #[test]
    fn cone_certificates_are_valid((d, s) in datum_with_subset(full_grid())) {
        prop_assume!(!s.is_empty());
        match zero_in_positive_span(&s) {
            ConeOutcome::ZeroInCone(c) => {
                let k = d.k();
                let mut sum = Vector::zero(k, s[0].basis);
                let mut total = int(0);
                for (nu, x) in &c.coefficients {
                    prop_assert!(*x >= int(0));
                    sum = &sum + &nu.scale(*x);
                    total += x;
                }
                prop_assert!(sum.is_zero());
                prop_assert_eq!(total, int(1));
            }
            ConeOutcome::Separated(phi) => {
                for nu in &s {
                    prop_assert!(pair(&phi, nu) >= int(1));
                }
            }
        }
    }

    #[test]
    fn witnesses_are_sound((d, s) in datum_with_subset(full_grid())) {
        let rsh = t_root_system(&d).vectors();
        let s_roots: BTreeSet<Vector> = reductive_part(&d).roots.into_iter().collect();
        match find_parabolic_containing(&d, &s).unwrap() {
            ContainmentOutcome::Contained(w) => {
                let t: BTreeSet<Vector> = w
                    .roots
                    .iter()
                    .filter(|a| !s_roots.contains(*a))
                    .map(|a| project_unchecked(&d, a))
                    .collect();
                let t: Vec<Vector> = t.into_iter().collect();
                prop_assert!(check_positive_system(&t, &rsh));
                prop_assert!(s.iter().all(|v| t.contains(v)));
                let spaces = root_spaces(&d);
                for nu in &s {
                    prop_assert!(spaces[nu].iter().all(|a| w.roots.contains(a)));
                }
                if d.is_signed() {
                    let order = &w.order.total_order;
                    let negated: Vec<_> = order.iter().rev().map(|&(i, e)| (i, -e)).collect();
                    prop_assert_eq!(&negated, order);
                }
            }
            ContainmentOutcome::Cycle(c) => {
                prop_assert!(!c.is_empty());
                prop_assert_eq!(c.cycle.first(), c.cycle.last());
                prop_assert!(c.witnesses.iter().all(|w| s.contains(w)));
            }
        }
    }

    #[test]
    fn orders_are_deterministic((d, s) in datum_with_subset(small_grid())) {
        let g = build_relation(&d, &s).unwrap();
        if let OrderOutcome::Order(w) = extend_to_order(&g) {
            let keys: BTreeSet<_> = w.total_order.iter().map(|&v| vertex_key(v)).collect();
            prop_assert_eq!(keys.len(), w.total_order.len());
        }
        prop_assert_eq!(extend_to_order(&g), extend_to_order(&g));
    }

    #[test]
    fn positive_systems_are_saturated(i in 0..full_grid().len(), coeffs in prop::collection::vec(-50i64..50, 4)) {
        let d = &full_grid()[i];
        let rsh = t_root_system(d).vectors();
        let phi: Vec<Rational> = (0..d.k()).map(|j| int(coeffs[j % 4] as i128 * 7 + j as i128)).collect();
        if let Some(t) = phi_cut(&phi, &rsh) {
            prop_assert!(check_positive_system(&t, &rsh));
            prop_assert_eq!(saturate(&rsh, &t), t);
        }
    }

    #[test]
    fn axiom_positive_systems_are_saturated((d, t) in datum_with_subset(full_grid())) {
        let rsh = t_root_system(&d).vectors();
        if check_positive_system(&t, &rsh) {
            let mut sorted = t.clone();
            sorted.sort();
            prop_assert_eq!(saturate(&rsh, &t), sorted);
        }
    }

    #[test]
    fn t_level_matches_the_cone((d, s) in datum_with_subset(full_grid())) {
        prop_assume!(!s.is_empty());
        let gm = GradedModule::classical(&d).unwrap();
        let vs = gm.int_troots(&gm.indices(&s).unwrap());
        let zero_sum = t_level_zero_sum(&vs, 4 * d.k() + 4);
        prop_assert_eq!(zero_sum.is_some(), zero_in_positive_span(&s).is_feasible());
    }

    #[test]
    fn oracles_agree_on_trivial_multiplicity((d, s) in datum_with_subset(small_grid()), k in 0usize..=4) {
        let gm = GradedModule::classical(&d).unwrap();
        let ch = sym_power_character(&module_character(&gm, &s).unwrap(), k, 20_000);
        prop_assume!(ch.is_ok());
        let ch = ch.unwrap();
        let alternation = trivial_multiplicity(&ch, &gm.structure).unwrap();
        let strip = trivial_count(&strip_down_decompose(&ch, &gm.structure).unwrap());
        prop_assert_eq!(alternation, strip);
    }

    #[test]
    fn characters_are_weyl_invariant((d, s) in datum_with_subset(small_grid())) {
        let gm = GradedModule::classical(&d).unwrap();
        let ch = module_character(&gm, &s).unwrap();
        prop_assert!(is_weyl_invariant(&ch, &gm.structure));
        let r = invariants_up_to_degree(&gm, &s, 2, 1_000_000).unwrap();
        prop_assert_eq!(r.degrees[0].dim, 1);
    }

    #[test]
    fn strip_down_conserves_dimension((d, s) in datum_with_subset(small_grid()), k in 0usize..=3) {
        let gm = GradedModule::classical(&d).unwrap();
        let ch = sym_power_character(&module_character(&gm, &s).unwrap(), k, 20_000);
        prop_assume!(ch.is_ok());
        let ch = ch.unwrap();
        let dec = strip_down_decompose(&ch, &gm.structure).unwrap();
        let total: u128 = dec.iter().map(|(mu, m)| m * gm.structure.weyl_dimension(mu).unwrap()).sum();
        prop_assert_eq!(total, ch.dim());
    }

    #[test]
    fn invariants_pass_to_the_saturation((d, s) in datum_with_subset(small_grid())) {
        let gm = GradedModule::classical(&d).unwrap();
        let sat = saturate(&gm.troots, &s);
        let at_s = invariants_up_to_degree(&gm, &s, 6, 1_000_000);
        let at_sat = invariants_up_to_degree(&gm, &sat, 6, 1_000_000);
        if let (Ok(a), Ok(b)) = (at_s, at_sat) {
            if !a.all_zero_above_zero() {
                prop_assert!(!b.all_zero_above_zero());
            }
        }
    }
}
