use proptest::prelude::*;

use sphere_lattice::arith::kronecker;
use sphere_lattice::harmonics::legendre_p;
use sphere_lattice::lattice::{enumerate, is_three_square_representable, pair_table};
use sphere_lattice::spatial::{
    count_in, covering_radius, riesz_energy, ripley_k, AnnulusSpec, CapIndex, UnitPointSet,
};
use sphere_lattice::twosquares::{for_each_member, is_sum_two_squares};

fn representable() -> impl Strategy<Value = u64> {
    (3u64..4000).prop_filter("sum of three squares", |&n| is_three_square_representable(n))
}

fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(z, phi)| {
        let r = (1.0 - z * z).sqrt();
        [r * phi.cos(), r * phi.sin(), z]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_multiplicative_in_bottom(d in -500i128..500, m in 1i128..300, k in 1i128..300) {
        prop_assume!(d.rem_euclid(4) <= 1);
        prop_assert_eq!(kronecker(d, m * k), kronecker(d, m) * kronecker(d, k));
    }

    #[test]
    fn pair_shells_are_additive(n in representable(), a in 0u64..8, b in 0u64..8, c in 0u64..8) {
        let mut cuts = [a, b, c].map(|x| (x * n / 2) as f64);
        cuts.sort_by(f64::total_cmp);
        let [a, b, c] = cuts;
        let tab = pair_table(n);
        let b_int = b as i64;
        let on_b = if a < b && b < c && b_int % 2 == 0 { tab.get(n as i64 - b_int / 2) } else { 0 };
        prop_assert_eq!(tab.shell_sum(a, c), tab.shell_sum(a, b) + on_b + tab.shell_sum(b, c));
    }

    #[test]
    fn pair_table_is_symmetric_with_square_total(n in representable()) {
        let tab = pair_table(n);
        let big_n = enumerate(n).len() as u64;
        prop_assert_eq!(tab.total(), big_n * big_n);
        for (&t, &c) in &tab.entries {
            prop_assert_eq!(tab.get(-t), c);
        }
    }

    #[test]
    fn cap_index_matches_scan(
        n in representable(),
        center in unit_vector(),
        r1 in 0.0f64..1.5,
        width in 0.0f64..1.5,
    ) {
        let pts = UnitPointSet::from_lattice(&enumerate(n));
        let spec = AnnulusSpec::new(r1, (r1 + width).min(2.0)).unwrap();
        let index = CapIndex::new(&pts);
        prop_assert_eq!(index.count(&center, &spec), count_in(&pts, &center, &spec));
    }

    #[test]
    fn lattice_points_hit_annulus_boundaries_consistently(n in representable(), t_idx in any::<prop::sample::Index>()) {
        // Centers at lattice points put other points exactly on annulus edges.
        let set = enumerate(n);
        let pts = UnitPointSet::from_lattice(&set);
        let tab = pair_table(n);
        let ts: Vec<i64> = tab.entries.keys().copied().collect();
        let t = ts[t_idx.index(ts.len())];
        let rho = (2.0 * (n as i64 - t) as f64 / n as f64).sqrt().min(2.0);
        let spec = AnnulusSpec::new(0.0, rho).unwrap();
        let index = CapIndex::new(&pts);
        let c = pts.points[0];
        prop_assert_eq!(index.count(&c, &spec), count_in(&pts, &c, &spec));
    }

    #[test]
    fn statistics_are_antipodally_invariant(n in representable(), r in 0.05f64..1.5) {
        let pts = UnitPointSet::from_lattice(&enumerate(n));
        let anti = pts.antipodal();
        prop_assert_eq!(ripley_k(&pts, r).unwrap().k, ripley_k(&anti, r).unwrap().k);
        let e = riesz_energy(&pts, 1.0).unwrap().value;
        let ea = riesz_energy(&anti, 1.0).unwrap().value;
        prop_assert!((e - ea).abs() <= 1e-12 * e);
        if pts.len() >= 6 {
            let c = covering_radius(&pts).unwrap();
            let ca = covering_radius(&anti).unwrap();
            prop_assert!((c - ca).abs() < 1e-12);
        }
    }

    #[test]
    fn sieve_agrees_with_factorization(lo in 0u64..2_000_000, len in 1u64..5000) {
        let mut got = Vec::new();
        for_each_member(lo, lo + len, |m| got.push(m));
        let want: Vec<u64> = (lo..lo + len).filter(|&m| is_sum_two_squares(m)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn legendre_is_bounded(m in 0usize..400, t in -1.0f64..=1.0) {
        let p = legendre_p(m, t).unwrap();
        prop_assert!(p.abs() <= 1.0 + 1e-12);
    }
}
