use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::quiver::validate_iquiver;
use crate::repmod::{decompose, ModCat};

fn split(q: Quiver) -> IQuiver {
    IQuiver::split(q)
}

/// `1 <- 2 -> 3` with `tau` swapping 1 and 3; the sinks form one orbit.
fn qs_sinks() -> IQuiver {
    let q = Quiver::new(&["1", "2", "3"], &[("2", "1", "a"), ("2", "3", "b")], false).unwrap();
    validate_iquiver(q, &[2, 1, 0], None).unwrap()
}

/// `1 -> 2 <- 3` with `tau` swapping 1 and 3; the middle vertex is a split sink.
fn qa3() -> IQuiver {
    let q = Quiver::new(&["1", "2", "3"], &[("1", "2", "a"), ("3", "2", "b")], false).unwrap();
    validate_iquiver(q, &[2, 1, 0], None).unwrap()
}

fn a3() -> IQuiver {
    let q = Quiver::new(&["1", "2", "3"], &[("1", "2", "a"), ("2", "3", "b")], false).unwrap();
    split(q)
}

fn sink_of(iq: &IQuiver) -> usize {
    (0..iq.n()).find(|&v| is_sink(&iq.quiver, v)).unwrap()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn assert_report(rep: &Report) {
    assert!(rep.all_ok(), "{}", rep.to_text());
}

#[test]
fn reflected_quiver_reverses_arrows_at_the_orbit() {
    let r = reflect_iquiver(&qs_sinks(), 0).unwrap();
    assert!(is_source(&r.quiver, 0) && is_source(&r.quiver, 2));
    let back = reflect_iquiver(&r, 0).unwrap();
    assert_eq!(back.quiver, qs_sinks().quiver);
    assert_eq!(reflect_dims(&qs_sinks(), 0, &[1, 1, 0]), vec![0, 1, 1]);
    assert_eq!(reflect_dims(&split(Quiver::linear_a(2)), 1, &[1, 1]), vec![1, 0]);
}

#[test]
fn simple_at_the_sink_is_killed() {
    for iq in [split(Quiver::linear_a(2)), qs_sinks(), qa3()] {
        let l = sink_of(&iq);
        let r = Reflection::new(iq.clone(), l, 2, Direction::Sink).unwrap();
        let s = FqRep::simple(&r.src.bq, 2, l);
        assert!(r.functor(&s).is_zero());
    }
}

#[test]
fn projective_of_a2_goes_to_a_simple() {
    let r = Reflection::new(split(Quiver::linear_a(2)), 1, 2, Direction::Sink).unwrap();
    let p = r.src.kq.classes_of_dims(&[1, 1]).unwrap();
    let ind: Vec<usize> = p.into_iter().filter(|&c| decompose(&r.src.kq.bq, &r.src.kq.class(c).rep).unwrap().len() == 1).collect();
    assert_eq!(ind.len(), 1);
    let f = r.functor(&r.src.lift(&r.src.kq.class(ind[0]).rep));
    assert_eq!(f.dims, vec![1, 0]);
}

#[test]
fn dimension_law_for_indecomposables() {
    let kron = split(Quiver::kronecker());
    for iq in [split(Quiver::linear_a(2)), a3(), kron, qs_sinks(), qa3()] {
        let l = sink_of(&iq);
        let r = Reflection::new(iq.clone(), l, 2, Direction::Sink).unwrap();
        let kq = &r.src.kq;
        let mut seen = 0;
        for id in kq.enumerate_isoclasses(4).unwrap() {
            let rep = &kq.class(id).rep;
            if rep.is_zero() || decompose(&kq.bq, rep).unwrap().len() != 1 {
                continue;
            }
            let f = r.functor(&r.src.lift(rep));
            f.validate(&r.dst.bq).unwrap();
            let d = rep.dims_i64();
            if d.iter().sum::<i64>() == 1 && (d[l] == 1 || d[iq.tau[l]] == 1) {
                assert!(f.is_zero());
                continue;
            }
            assert_eq!(f.dims_i64(), r.reflect_dims(&d), "{:?}", rep);
            assert_eq!(decompose(&r.dst.bq, &f).unwrap().len(), 1);
            seen += 1;
        }
        assert!(seen > 0);
    }
}

#[test]
fn resolutions_are_exact_and_scalars_match_the_closed_form() {
    for iq in [split(Quiver::linear_a(2)), qs_sinks(), qa3(), split(Quiver::kronecker())] {
        let l = sink_of(&iq);
        let r = Reflection::new(iq.clone(), l, 3, Direction::Sink).unwrap();
        let mut mods: Vec<FqRep> = r.src.kq.enumerate_isoclasses(3).unwrap().into_iter().map(|c| r.src.lift(&r.src.kq.class(c).rep)).collect();
        mods.extend((0..iq.n()).map(|i| r.src.generalized_simple(i)));
        for m in mods {
            let (x, t) = r.resolution(&m).unwrap();
            assert!(in_torsion_class(&iq, &r.src.bq, l, &x));
            assert!(in_torsion_class(&iq, &r.src.bq, l, &t));
            let dx: Vec<usize> = m.dims.iter().zip(&t.dims).map(|(a, b)| a + b).collect();
            assert_eq!(x.dims, dx);
            let c = r.resolution_scalar(&m, &x, &t).unwrap();
            assert_eq!(c, r.sink_prefactor(&m, &t));
        }
    }
}

#[test]
fn gamma_on_generalized_simples_and_sink_simples() {
    for q in [2, 3] {
        for iq in [split(Quiver::linear_a(2)), qs_sinks(), qa3(), split(Quiver::kronecker())] {
            let l = sink_of(&iq);
            let n = iq.n();
            let r = Reflection::new(iq.clone(), l, q, Direction::Sink).unwrap();
            for i in 0..n {
                let g = r.gamma_module(&r.src.generalized_simple(i)).unwrap();
                assert_eq!(g, r.dst.torus(r.reflect_dims(&unit(n, i))));
            }
            let tl = iq.tau[l];
            let inv_e: Vec<i64> = unit(n, l).iter().map(|x| -x).collect();
            let mut expect = r.dst.mul(&r.dst.torus(inv_e), &r.dst.simple(tl)).unwrap();
            if tl != l {
                expect = expect.scale(&QuadCoeff::v_pow(1, q));
            }
            assert_eq!(r.gamma(&r.src.simple(l)).unwrap(), expect);
            if tl != l {
                let inv_t: Vec<i64> = unit(n, tl).iter().map(|x| -x).collect();
                let e2 = r.dst.mul(&r.dst.torus(inv_t), &r.dst.simple(l)).unwrap().scale(&QuadCoeff::v_pow(1, q));
                assert_eq!(r.gamma(&r.src.simple(tl)).unwrap(), e2);
            }
        }
    }
}

#[test]
fn braidsplit_formula_on_rank_two() {
    for a in 1..=2usize {
        // a arrows j -> i, i the sink
        let q = Quiver::rank_two(0, a);
        let iq = split(q);
        let (i, j) = (0, 1);
        assert!(is_sink(&iq.quiver, i));
        let r = Reflection::new(iq.clone(), i, 2, Direction::Sink).unwrap();
        let h = &r.dst;
        let qq = h.q();
        let c = -(a as i64);
        let one_minus_q = QuadCoeff::from_int(1 - qq as i64, qq);
        let lhs = r.gamma(&r.src.simple(j)).unwrap();
        for p in [Parity::Even, Parity::Odd] {
            let other = p.plus(c);
            let mut rhs = IHallElement::zero();
            let m = a as i64;
            for rr in 0..=m {
                let s = m - rr;
                let w = h.mul_all(&[&h.idivided_power(i, rr as u32, p).unwrap(), &h.simple(j), &h.idivided_power(i, s as u32, other).unwrap()]).unwrap();
                let coef = &QuadCoeff::v_pow(rr as i32, qq) * &one_minus_q.pow(c as i32).unwrap();
                let coef = if rr % 2 == 1 { coef.scale(&(-num_rational::BigRational::from_integer(1.into()))) } else { coef };
                rhs = rhs.add(&w.scale(&coef));
            }
            for t in 1..=m / 2 {
                for rr in 0..=m - 2 * t {
                    let s = m - 2 * t - rr;
                    if Parity::of(rr) != p {
                        continue;
                    }
                    let w = h
                        .mul_all(&[
                            &h.idivided_power(i, rr as u32, p).unwrap(),
                            &h.simple(j),
                            &h.idivided_power(i, s as u32, other).unwrap(),
                            &h.torus(vec![t, 0]),
                        ])
                        .unwrap();
                    let mut coef = &QuadCoeff::v_pow(rr as i32, qq) * &one_minus_q.pow((c + 2 * t) as i32).unwrap();
                    if p == Parity::Odd {
                        coef = coef.scale(&(-num_rational::BigRational::from_integer(1.into())));
                    }
                    rhs = rhs.add(&w.scale(&coef));
                }
            }
            assert_eq!(lhs, rhs, "a={a} p={p:?}: {} vs {}", h.render(&lhs), h.render(&rhs));
        }
    }
}

#[test]
fn gamma_is_multiplicative() {
    for iq in [split(Quiver::linear_a(2)), qs_sinks(), qa3()] {
        let l = sink_of(&iq);
        let n = iq.n();
        let r = Reflection::new(iq.clone(), l, 2, Direction::Sink).unwrap();
        let h = &r.src;
        let mut gens: Vec<IHallElement> = (0..n).map(|i| h.simple(i)).collect();
        gens.extend((0..n).map(|i| h.torus(unit(n, i))));
        gens.extend((0..n).map(|i| h.torus(unit(n, i).iter().map(|x| -x).collect())));
        for x in &gens {
            for y in &gens {
                let lhs = r.gamma(&h.mul(x, y).unwrap()).unwrap();
                let rhs = r.dst.mul(&r.gamma(x).unwrap(), &r.gamma(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let classes = h.kq.enumerate_isoclasses(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = *classes.choose(&mut rng).unwrap();
            let b = *classes.choose(&mut rng).unwrap();
            let (x, y) = (h.basis(a, vec![0; n]), h.basis(b, vec![0; n]));
            let lhs = r.gamma(&h.mul(&x, &y).unwrap()).unwrap();
            let rhs = r.dst.mul(&r.gamma(&x).unwrap(), &r.gamma(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{} * {}", h.kq.class(a).label, h.kq.class(b).label);
        }
    }
}

#[test]
fn braid_operator_examples() {
    let a2 = split(Quiver::linear_a(2));
    let t = braid_t(&a2, 0, Sym::B(0), Parity::Even).unwrap();
    let expect = NCExpr::word(RationalFunction::v_pow(-2).scale(&num_rational::BigRational::from_integer((-1).into())), vec![Sym::TkInv(0), Sym::B(0)]);
    assert_eq!(t, expect);
    let t = braid_t(&qs_sinks(), 0, Sym::B(0), Parity::Even).unwrap();
    assert_eq!(t, NCExpr::mono(&[Sym::TkInv(0), Sym::B(2)]).scale(&RationalFunction::from_int(-1)));
    let pair = split(Quiver::new::<&str>(&["1", "2"], &[], false).unwrap());
    assert_eq!(braid_t(&pair, 0, Sym::B(1), Parity::Odd).unwrap(), NCExpr::atom(Sym::B(1)));
    let loopy = validate_iquiver(Quiver::rank_two(1, 1), &[1, 0], None).unwrap();
    assert!(matches!(braid_t(&loopy, 0, Sym::B(0), Parity::Even), Err(ReflectError::NotInTauBar(_, -2))));
}

#[test]
fn commuting_square_holds() {
    for p in [Parity::Even, Parity::Odd] {
        assert_report(&verify_commuting_square(&split(Quiver::linear_a(2)), 1, 2, p).unwrap());
        assert_report(&verify_commuting_square(&qa3(), 1, 2, p).unwrap());
        assert_report(&verify_commuting_square(&split(Quiver::kronecker()), 1, 2, p).unwrap());
    }
    assert_report(&verify_commuting_square(&qs_sinks(), 0, 2, Parity::Even).unwrap());
    assert_report(&verify_commuting_square(&qs_sinks(), 0, 3, Parity::Even).unwrap());
}

#[test]
fn source_reflection_inverts_sink_reflection() {
    for iq in [split(Quiver::linear_a(2)), qs_sinks(), qa3()] {
        let l = sink_of(&iq);
        let r = Reflection::new(iq, l, 2, Direction::Sink).unwrap();
        assert_report(&verify_inverse(&r).unwrap());
        let back = Reflection::between(r.dst.clone(), r.src.clone(), l, Direction::Source).unwrap();
        for id in r.src.kq.enumerate_isoclasses(3).unwrap() {
            let m = r.src.lift(&r.src.kq.class(id).rep);
            if !in_torsion_class(&r.src.iq, &r.src.bq, l, &m) {
                continue;
            }
            let round = back.functor(&r.functor(&m));
            assert!(r.src.kq.is_isomorphic(&r.src.kq.class(id).rep, &r.src.kq.class(r.src.kq.identify(&round).unwrap()).rep).unwrap());
        }
    }
}

#[test]
fn functor_is_fully_faithful_on_torsion_class() {
    for iq in [split(Quiver::linear_a(2)), qs_sinks()] {
        let l = sink_of(&iq);
        let r = Reflection::new(iq.clone(), l, 2, Direction::Sink).unwrap();
        let cat = ModCat::new(r.src.bq.clone(), 2);
        let ts: Vec<FqRep> = cat
            .enumerate_isoclasses(3)
            .unwrap()
            .into_iter()
            .map(|c| cat.class(c).rep.clone())
            .filter(|m| in_torsion_class(&iq, &r.src.bq, l, m))
            .collect();
        assert!(ts.len() > 3);
        for m in &ts {
            for n in &ts {
                let (fm, fn_) = (r.functor(m), r.functor(n));
                assert_eq!(hom_dim(&r.src.bq, m, n), hom_dim(&r.dst.bq, &fm, &fn_));
            }
        }
    }
}
