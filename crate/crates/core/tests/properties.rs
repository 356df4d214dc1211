mod common;

use basecondary::basecondary as bc;
use basecondary::fiber_morse::{self, MorseConfig};
use basecondary::geometry::{self, PointConfig};
use basecondary::rational::{dot, frac, int};
use basecondary::secondary;
use basecondary::setfun;
use basecondary::subset::Subset;
use basecondary::tropical::{self, TropicalPolynomial};
use basecondary::Rational;
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn ratio() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(p, q)| frac(p, q))
}

fn small_q(r: &mut rand_chacha::ChaCha8Rng, range: i64) -> Rational {
    frac(r.random_range(-range..=range), r.random_range(1..=4))
}

fn generic_gamma(r: &mut rand_chacha::ChaCha8Rng, c: &PointConfig) -> Vec<Rational> {
    loop {
        let g: Vec<Rational> = (0..c.len()).map(|_| small_q(r, 40)).collect();
        if bc::is_generic(c, &g).unwrap() {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oriented_volume_flips_under_transpositions(seed in any::<u64>(), n in 1usize..=3, i in 0usize..4, j in 0usize..4) {
        let mut r = rng(seed, 0);
        let pts: Vec<Vec<Rational>> = (0..=n).map(|_| (0..n).map(|_| small_q(&mut r, 9)).collect()).collect();
        let (i, j) = (i % (n + 1), j % (n + 1));
        prop_assume!(i != j);
        let mut swapped = pts.clone();
        swapped.swap(i, j);
        let v = geometry::oriented_volume(&pts).unwrap();
        prop_assert_eq!(&v, &simplex_det(&pts));
        prop_assert_eq!(geometry::oriented_volume(&swapped).unwrap(), -v);
    }

    #[test]
    fn circuit_is_an_affine_relation(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed, 1);
        let c = random_config(&mut r, n, n + 2, 6);
        let labels: Vec<usize> = (0..n + 2).collect();
        let Ok(circ) = geometry::find_circuit(&labels, c.points()) else {
            return Ok(());
        };
        let lam: Rational = circ.positive.iter().map(|(_, l)| l.clone()).sum();
        let mu: Rational = circ.negative.iter().map(|(_, m)| m.clone()).sum();
        prop_assert_eq!(lam, mu);
        for k in 0..n {
            let lhs: Rational = circ.positive.iter().map(|(i, l)| l * &c.point(*i)[k]).sum();
            let rhs: Rational = circ.negative.iter().map(|(i, m)| m * &c.point(*i)[k]).sum();
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert!(circ.positive.iter().chain(&circ.negative).all(|(_, x)| is_positive(x)));
        prop_assert_eq!(circ.positive.len() + circ.negative.len() + circ.zero.len(), n + 2);
    }

    #[test]
    fn lovasz_homogeneous_and_extends_f(seed in any::<u64>(), m in 1usize..=6, t in ratio()) {
        let mut r = rng(seed, 2);
        let f = random_table(&mut r, m);
        let x: Vec<Rational> = (0..m).map(|_| small_q(&mut r, 20)).collect();
        let tx: Vec<Rational> = x.iter().map(|v| v * &t).collect();
        prop_assert_eq!(setfun::lovasz_extension(&f, &tx).unwrap(), t * setfun::lovasz_extension(&f, &x).unwrap());
        let s = Subset(r.random_range(0..1u64 << m));
        let ind: Vec<Rational> = (0..m).map(|i| if s.contains(i) { int(1) } else { int(0) }).collect();
        prop_assert_eq!(setfun::lovasz_extension(&f, &ind).unwrap(), f.evaluate(s).unwrap());
    }

    #[test]
    fn lovasz_translation_and_ties(seed in any::<u64>(), m in 2usize..=6) {
        let mut r = rng(seed, 3);
        let f = random_table(&mut r, m);
        let mut x: Vec<Rational> = (0..m).map(|_| small_q(&mut r, 6)).collect();
        // force a tie
        x[1] = x[0].clone();
        let c = small_q(&mut r, 10);
        let shifted: Vec<Rational> = x.iter().map(|v| v + &c).collect();
        let base = setfun::lovasz_extension(&f, &x).unwrap();
        let full = f.evaluate(Subset::full(m)).unwrap();
        prop_assert_eq!(setfun::lovasz_extension(&f, &shifted).unwrap(), &base + c * full);
        prop_assert_eq!(&base, &lovasz_level_sets(&f, &x));
        let mut perm = x.clone();
        perm.swap(0, 1);
        prop_assert_eq!(setfun::lovasz_extension(&f, &perm).unwrap(), base);
    }

    #[test]
    fn lovasz_convex_iff_submodular(seed in any::<u64>(), m in 2usize..=5) {
        let mut r = rng(seed, 4);
        let f = random_submodular(&mut r, m);
        for _ in 0..10 {
            let x: Vec<Rational> = (0..m).map(|_| small_q(&mut r, 10)).collect();
            let y: Vec<Rational> = (0..m).map(|_| small_q(&mut r, 10)).collect();
            let mid: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| (a + b) / int(2)).collect();
            let lhs = int(2) * setfun::lovasz_extension(&f, &mid).unwrap();
            prop_assert!(lhs <= setfun::lovasz_extension(&f, &x).unwrap() + setfun::lovasz_extension(&f, &y).unwrap());
        }
        for order in permutations(m).iter().take(6) {
            let v = setfun::greedy_vertex(&f, order).unwrap();
            prop_assert!(setfun::submodular_polyhedron_contains(&f, &v).unwrap());
        }
    }

    #[test]
    fn basecondary_homogeneous_local_and_linear(seed in any::<u64>(), n in 0usize..=2, t in ratio()) {
        let mut r = rng(seed, 5);
        let m = r.random_range(n + 2..=n + 4);
        let c = random_config(&mut r, n, m, 5);
        let f = random_table(&mut r, m);
        let h = random_table(&mut r, m);
        let g = generic_gamma(&mut r, &c);
        let b = bc::eval_general(&c, &f, &g).unwrap();
        let tg: Vec<Rational> = g.iter().map(|v| v * &t).collect();
        prop_assert_eq!(bc::eval_general(&c, &f, &tg).unwrap(), &t * &b);
        prop_assert_eq!(bc::eval_generic(&c, &f, &tg).unwrap(), &t * &b);

        // values on sets of size at most n do not matter
        let small: Vec<(Subset, Rational)> = Subset::all(m)
            .filter(|s| !s.is_empty() && s.len() <= n)
            .map(|s| (s, small_q(&mut r, 30)))
            .collect();
        prop_assert_eq!(bc::eval_general(&c, &f.perturbed(&small).unwrap(), &g).unwrap(), b.clone());

        let sum = table_from(m, |s| f.evaluate(s).unwrap() + h.evaluate(s).unwrap());
        prop_assert_eq!(
            bc::eval_general(&c, &sum, &g).unwrap(),
            b + bc::eval_general(&c, &h, &g).unwrap()
        );
    }

    #[test]
    fn subdivision_ignores_affine_changes(seed in any::<u64>(), n in 1usize..=2, t in ratio()) {
        let mut r = rng(seed, 6);
        let m = r.random_range(n + 2..=n + 4);
        let c = random_config(&mut r, n, m, 5);
        let g: Vec<Rational> = (0..m).map(|_| small_q(&mut r, 30)).collect();
        let lin: Vec<Rational> = (0..n).map(|_| small_q(&mut r, 5)).collect();
        let k = small_q(&mut r, 5);
        let moved: Vec<Rational> = (0..m).map(|i| &t * &g[i] + dot(&lin, c.point(i)) + &k).collect();
        let a = secondary::regular_subdivision(&c, &g).unwrap();
        prop_assert_eq!(secondary::regular_subdivision(&c, &moved).unwrap(), a);
    }

    #[test]
    fn iterated_support_is_homogeneous(seed in any::<u64>(), shift in 1i64..=6) {
        let mut r = rng(seed, 7);
        let m = r.random_range(2..=5);
        let a: Vec<i64> = random_line(&mut r, m, 7).into_iter().filter(|&x| x != 0).collect();
        let Ok(cfg) = MorseConfig::new(&a) else { return Ok(()); };
        let g: Vec<Rational> = (0..a.len()).map(|_| frac(r.random_range(0..=12), r.random_range(1..=3))).collect();
        let up: Vec<Rational> = g.iter().map(|v| v + int(shift)).collect();
        let one = vec![int(1); a.len()];
        let h1 = fiber_morse::iterated_fiber_support(&cfg, &one).unwrap();
        prop_assert_eq!(
            fiber_morse::iterated_fiber_support(&cfg, &up).unwrap() - fiber_morse::iterated_fiber_support(&cfg, &g).unwrap(),
            int(shift) * h1
        );
    }

    #[test]
    fn tropical_shift_equivariance(seed in any::<u64>()) {
        let mut r = rng(seed, 8);
        let k = r.random_range(2..=6);
        let a = random_line(&mut r, k, 8);
        let c: Vec<Rational> = (0..k).map(|_| small_q(&mut r, 8)).collect();
        let p = TropicalPolynomial::new(a, c).unwrap();
        let s = small_q(&mut r, 10);
        let t = small_q(&mut r, 10);
        let q = p.shifted(&s, &t);
        let before = tropical::critical_points(&p);
        let after = tropical::critical_points(&q);
        prop_assert_eq!(before.len(), after.len());
        for (x, y) in before.iter().zip(&after) {
            prop_assert_eq!(&y.location, &(&x.location - &t));
            prop_assert_eq!(&y.value, &(&x.value + &s));
        }
        prop_assert_eq!(tropical::is_morse(&p).morse, tropical::is_morse(&q).morse);
    }
}
