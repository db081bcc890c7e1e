use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn rf(terms: &[(i32, i64)]) -> RationalFunction {
    RationalFunction::from_poly(LaurentPoly::from_terms(terms.iter().copied()))
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn t_minus_1() -> RationalFunction {
    rf(&[(1, 1), (0, -1)])
}

fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(Partition::all).collect()
}

#[test]
fn partition_combinatorics() {
    let l = Partition::parse("3,1,1").unwrap();
    assert_eq!(l.size(), 5);
    assert_eq!(l.n(), 3);
    assert_eq!(l.multiplicities().into_iter().collect::<Vec<_>>(), vec![(1, 2), (3, 1)]);
    assert_eq!(Partition::parse("").unwrap(), Partition::default());
    assert_eq!(Partition::parse("2,0").unwrap(), p(&[2]));
    assert!(Partition::parse("1,2").is_err());
    assert!(Partition::parse("x").is_err());
    let counts: Vec<usize> = (0..=7).map(|n| Partition::all(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    assert!(p(&[3]).dominates(&p(&[2, 1])));
    assert!(!p(&[3, 1, 1, 1]).dominates(&p(&[2, 2, 2])));
    assert!(!p(&[2, 2, 2]).dominates(&p(&[3, 1, 1, 1])));
    assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
}

#[test]
fn hall_littlewood_examples() {
    for k in 1..=5u32 {
        assert_eq!(hl_q(&p(&[k])), SymFun::q(k as i64));
        assert_eq!(ihl_q(&[k as i64]), SymFun::q(k as i64));
    }
    let q11 = SymFun::q(1).mul(&SymFun::q(1)).add(&SymFun::q(2).scale(&t_minus_1()));
    assert_eq!(hl_q(&p(&[1, 1])), q11);
    let q21 = SymFun::q(2).mul(&SymFun::q(1)).add(&SymFun::q(3).scale(&t_minus_1()));
    assert_eq!(hl_q(&p(&[2, 1])), q21);
    let iq11 = q11.add(&SymFun::theta().scale(&t_minus_1()));
    assert_eq!(ihl_q(&[1, 1]), iq11);
    assert_eq!(ihl_q(&[1, 1]).to_string(), "q_1^2 + (t - 1)*q_2 + (t - 1)*theta");
    assert_eq!(hl_q(&Partition::default()), SymFun::one());
    // Raising can move weight into a negative slot; a negative tail sum cannot be repaired.
    assert_eq!(ihl_q(&[-1, 2]), SymFun::q(1).scale(&rf(&[(2, 1), (0, -1)])));
    assert_eq!(ihl_q(&[2, -3]), SymFun::zero());
}

#[test]
fn b_coefficients_and_p() {
    assert_eq!(b_coeff(&p(&[1, 1])), &rf(&[(0, 1), (1, -1)]) * &rf(&[(0, 1), (2, -1)]));
    assert_eq!(b_coeff(&p(&[2, 1])), rf(&[(0, 1), (1, -2), (2, 1)]));
    assert_eq!(b_coeff(&p(&[1])), rf(&[(0, 1), (1, -1)]));
    let one_minus_t = rf(&[(0, 1), (1, -1)]);
    assert_eq!(hl_p(&p(&[1])), SymFun::q(1).scale(&one_minus_t.recip().unwrap()));
    for l in partitions_up_to(5) {
        assert_eq!(hl_p(&l).scale(&b_coeff(&l)), hl_q(&l), "{l}");
    }
}

#[test]
fn generating_function_oracle_matches_operators() {
    for l in partitions_up_to(5) {
        let oracle = ihl_genfun_coeff(&l, 5).unwrap();
        assert_eq!(ihl_q(&l.as_i64()), oracle, "{l}");
        assert_eq!(hl_q(&l), oracle.at_theta_zero(), "{l}");
    }
    assert_eq!(ihl_genfun_coeff(&p(&[1]), 1).unwrap(), SymFun::q(1));
    assert_eq!(
        ihl_genfun_coeff(&p(&[2, 1]), 2),
        Err(SymError::Truncation { bound: 2, weight: 3 })
    );
    // A larger bound changes nothing.
    assert_eq!(ihl_genfun_coeff(&p(&[2, 2]), 9).unwrap(), ihl_q(&[2, 2]));
}

#[test]
fn theta_zero_gives_hall_littlewood() {
    for l in partitions_up_to(6) {
        assert_eq!(ihl_q(&l.as_i64()).at_theta_zero(), hl_q(&l), "{l}");
    }
}

#[test]
fn triangularity_in_dominance_order() {
    for l in partitions_up_to(5) {
        let f = hl_q(&l);
        assert_eq!(f.coeff(0, l.parts()), RationalFunction::one(), "{l}");
        for ((th, idx), c) in f.terms() {
            assert_eq!(*th, 0);
            let mu = Partition::new(idx.clone()).unwrap();
            if mu == l {
                continue;
            }
            assert!(mu.dominates(&l), "{mu} under {l}");
            let at_one = c.eval(&r(1, 1)).unwrap();
            assert!(at_one == r(0, 1) && c.denominator().as_constant().is_some(), "{c:?}");
        }
        // At t = 0 the leading term survives.
        assert_eq!(f.at_t(&r(0, 1)).unwrap().coeff(0, l.parts()), RationalFunction::one());
    }
}

#[test]
fn theta_grading() {
    for l in partitions_up_to(6) {
        let f = ihl_q(&l.as_i64());
        for th in 0..=f.theta_degree().unwrap_or(0) {
            let comp = f.theta_component(th);
            if !comp.is_zero() {
                assert_eq!(comp.q_degrees(), vec![l.size() - 2 * th], "{l} theta^{th}");
            }
        }
    }
}

#[test]
fn ihl_functions_are_linearly_independent() {
    let ls = partitions_up_to(5);
    let funs: Vec<SymFun> = ls
        .iter()
        .map(|l| ihl_q(&l.as_i64()).at_theta(&r(2, 7)).at_t(&r(1, 3)).unwrap())
        .collect();
    let mut keys: Vec<SymKey> = funs.iter().flat_map(|f| f.terms().map(|(k, _)| k.clone())).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<BigRational>> = funs
        .iter()
        .map(|f| keys.iter().map(|(th, idx)| f.coeff(*th, idx).eval(&r(0, 1)).unwrap()).collect())
        .collect();
    assert_eq!(rank_rational(rows), ls.len());
}

#[test]
fn rational_solver() {
    let a = vec![vec![r(0, 1), r(1, 1)], vec![r(2, 1), r(1, 1)]];
    assert_eq!(solve_rational(a, vec![r(3, 1), r(5, 1)]), Some(vec![r(1, 1), r(3, 1)]));
    let singular = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
    assert_eq!(solve_rational(singular.clone(), vec![r(1, 1), r(1, 1)]), None);
    assert_eq!(rank_rational(singular), 1);
}

#[test]
fn steinitz_small_products() {
    let mut jm = JordanModules::new(2);
    assert_eq!(jm.hall_number(&p(&[2]), &p(&[1]), &p(&[1])).unwrap(), BigInt::from(1));
    assert_eq!(jm.hall_number(&p(&[1, 1]), &p(&[1]), &p(&[1])).unwrap(), BigInt::from(3));
    for total in 0..=4u32 {
        for a in 0..=total {
            for mu in Partition::all(a) {
                for nu in Partition::all(total - a) {
                    let rep = steinitz_product_check(&mu, &nu, 2, 6).unwrap();
                    assert!(rep.all_ok(), "{rep:?}");
                }
            }
        }
    }
    assert!(matches!(
        steinitz_product_check(&p(&[4]), &p(&[3]), 2, 6),
        Err(SymError::Capacity(_))
    ));
}

#[test]
fn automorphism_counts() {
    for l in partitions_up_to(4) {
        let rep = aut_formula_check(&l, 2).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
    }
}

#[test]
fn jordan_isomorphism_small() {
    for l in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[1, 1, 1])] {
        let rep = jordan_iso_check(&l, 2).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
    }
    let mut jh = JordanIHall::new(2);
    let c = jh.express(&p(&[2])).unwrap();
    assert_eq!(c, vec![((p(&[2]), 0), r(1, 1))]);
}

fn shuffled(ops: &mut Vec<Op>, seed: u64) {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    ops.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
}

fn small_partition() -> impl Strategy<Value = Partition> {
    (0u32..=5).prop_flat_map(|n| {
        let all = Partition::all(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_order_does_not_matter(l in small_partition(), seed in any::<u64>()) {
        let n = l.len();
        let mut raise: Vec<Op> = Vec::new();
        let mut both: Vec<Op> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                raise.push(Op::Raise(i, j));
                both.push(Op::Raise(i, j));
                both.push(Op::Lower(i, j));
            }
        }
        shuffled(&mut raise, seed);
        shuffled(&mut both, seed ^ 0x5eed);
        prop_assert_eq!(operator_expand(&l.as_i64(), &raise), hl_q(&l));
        prop_assert_eq!(operator_expand(&l.as_i64(), &both), ihl_q(&l.as_i64()));
    }

    #[test]
    fn expansion_terminates_on_compositions(alpha in prop::collection::vec(-2i64..=4, 0..=4)) {
        let f = ihl_q(&alpha);
        let total: i64 = alpha.iter().sum();
        for ((th, idx), _) in f.terms() {
            let deg: i64 = idx.iter().map(|&x| x as i64).sum();
            prop_assert_eq!(deg + 2 * (*th as i64), total);
        }
    }
}
