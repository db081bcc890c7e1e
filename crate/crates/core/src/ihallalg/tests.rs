use super::*;
use crate::quiver::{validate_iquiver, Quiver};

fn qa3() -> IQuiver {
    let q = Quiver::new(&["1", "2", "3"], &[("1", "2", "a"), ("3", "2", "b")], false).unwrap();
    validate_iquiver(q, &[2, 1, 0], None).unwrap()
}

fn rat(n: i64, d: i64, q: u32) -> QuadCoeff {
    QuadCoeff::from_rational(BigRational::new(n.into(), d.into()), q)
}

fn vp(e: i32, q: u32) -> QuadCoeff {
    QuadCoeff::v_pow(e, q)
}

#[test]
fn reduce_generalized_simples_and_simples() {
    for iq in [IQuiver::split(Quiver::linear_a(2)), qa3(), IQuiver::split(Quiver::jordan())] {
        let h = IHall::new(iq, 2);
        for i in 0..h.n() {
            let r = h.reduce(&h.generalized_simple(i)).unwrap();
            assert_eq!(r, Reduced { scalar: QuadCoeff::one(2), x: h.kq.zero_id(), alpha: h.unit(i, 1) });
            let s = h.lift(&h.kq.simple(i));
            let r = h.reduce(&s).unwrap();
            assert_eq!(r, Reduced { scalar: QuadCoeff::one(2), x: h.kq.simple_id(i), alpha: h.zero_alpha() });
        }
    }
}

#[test]
fn reduce_projective_quotient_on_split_a2() {
    // U_1 / S_2: basis x, eps x at vertex 1 and a x at vertex 2.
    let h = IHall::new(IQuiver::split(Quiver::linear_a(2)), 3);
    let mut m = FqRep::zero_with_dims(&h.bq, 3, vec![2, 1]);
    m.maps[0] = Mat::from_rows(&[vec![1, 0]], 3);
    m.maps[h.bq.eps[0]] = Mat::from_rows(&[vec![0, 0], vec![1, 0]], 3);
    m.validate(&h.bq).unwrap();
    let want = h.mul(&h.simple(1), &h.generator(IGen::E(0))).unwrap();
    assert_eq!(h.class_of(&m).unwrap(), want);
    assert_eq!(want, h.basis(h.kq.simple_id(1), vec![1, 0]));
}

#[test]
fn torus_is_a_group() {
    let h = IHall::new(qa3(), 2);
    let a = h.torus(vec![1, -2, 0]);
    let b = h.torus(vec![0, 3, -1]);
    assert_eq!(h.mul(&a, &b).unwrap(), h.torus(vec![1, 1, -1]));
    let e = h.generator(IGen::E(2));
    let ei = h.generator(IGen::KInv(2));
    assert_eq!(h.mul(&e, &ei).unwrap(), h.one());
}

#[test]
fn simple_times_multiple_on_split_point() {
    for q in [2, 3] {
        let h = IHall::new(IQuiver::split(Quiver::point()), q);
        let s = h.simple(0);
        for m in 0..=3usize {
            let ms = h.kq.identify(&multiple_of_simple(&h.kq, 0, m)).unwrap();
            let got = h.mul(&s, &h.basis(ms, vec![0])).unwrap();
            let up = h.kq.identify(&multiple_of_simple(&h.kq, 0, m + 1)).unwrap();
            let mut want = IHallElement::term(up, vec![0], vp(-(m as i32), q));
            if m > 0 {
                let down = h.kq.identify(&multiple_of_simple(&h.kq, 0, m - 1)).unwrap();
                want.add_term((down, vec![1]), &(&vp(m as i32, q) - &vp(-(m as i32), q)));
            }
            assert_eq!(got, want, "m={m} q={q}");
        }
    }
}

#[test]
fn serre_defect_on_split_a2() {
    for q in [2, 3] {
        let h = IHall::new(IQuiver::split(Quiver::linear_a(2)), q);
        let (s1, s2) = (h.simple(0), h.simple(1));
        let br = &vp(1, q) + &vp(-1, q);
        let coef = &rat(-((q as i64 - 1) * (q as i64 - 1)), 1, q) * &vp(-1, q);
        for (a, b, i) in [(&s1, &s2, 0usize), (&s2, &s1, 1usize)] {
            let lhs = h
                .mul_all(&[b, a, a])
                .unwrap()
                .sub(&h.mul_all(&[a, b, a]).unwrap().scale(&br))
                .add(&h.mul_all(&[a, a, b]).unwrap());
            let rhs = h.mul(b, &h.generator(IGen::E(i))).unwrap().scale(&coef);
            assert_eq!(lhs, rhs, "q={q} i={i}");
        }
    }
}

#[test]
fn idivided_power_small_cases() {
    let q = 3;
    let h = IHall::new(IQuiver::split(Quiver::point()), q);
    for p in [Parity::Even, Parity::Odd] {
        assert_eq!(h.idivided_power(0, 1, p).unwrap(), h.simple(0));
        assert_eq!(h.idivided_power(0, 0, p).unwrap(), h.one());
    }
    let two = h.kq.identify(&multiple_of_simple(&h.kq, 0, 2)).unwrap();
    let b2 = specialize_poly(&q_int(2), q).inv().unwrap();
    let mut want = IHallElement::term(two, vec![0], &vp(-1, q) * &b2);
    want.add_term((h.kq.zero_id(), vec![1]), &(&(&vp(1, q) - &vp(-1, q)) * &b2));
    assert_eq!(h.idivided_power(0, 2, Parity::Even).unwrap(), want);
}

#[test]
fn idivided_power_closed_form_matches_definition() {
    for q in [2, 3] {
        let h = IHall::new(IQuiver::split(Quiver::point()), q);
        for n in 0..=6 {
            for p in [Parity::Even, Parity::Odd] {
                assert_eq!(
                    h.idivided_power(0, n, p).unwrap(),
                    h.idivided_power_by_definition(0, n, p).unwrap(),
                    "n={n} {p:?} q={q}"
                );
            }
        }
    }
}

#[test]
fn idivided_power_recursions() {
    let q = 2;
    let h = IHall::new(IQuiver::split(Quiver::point()), q);
    let s = h.simple(0);
    let k = h.torus(vec![1]);
    let qi = |n: i64| specialize_poly(&q_int(n), q);
    let vmv = &vp(1, q) - &vp(-1, q);
    let c = &vp(1, q) * &(&vmv * &vmv);
    for m in 0..=3i64 {
        let dp = |n: i64, p| h.idivided_power(0, n as u32, p).unwrap();
        assert_eq!(h.mul(&s, &dp(2 * m, Parity::Odd)).unwrap(), dp(2 * m + 1, Parity::Odd).scale(&qi(2 * m + 1)));
        let lhs = h.mul(&s, &dp(2 * m + 1, Parity::Odd)).unwrap();
        let rhs = dp(2 * m + 2, Parity::Odd)
            .scale(&qi(2 * m + 2))
            .sub(&h.mul(&dp(2 * m, Parity::Odd), &k).unwrap().scale(&(&c * &qi(2 * m + 1))));
        assert_eq!(lhs, rhs);
        if m >= 1 {
            assert_eq!(h.mul(&s, &dp(2 * m - 1, Parity::Even)).unwrap(), dp(2 * m, Parity::Even).scale(&qi(2 * m)));
            let lhs = h.mul(&s, &dp(2 * m, Parity::Even)).unwrap();
            let rhs = dp(2 * m + 1, Parity::Even)
                .scale(&qi(2 * m + 1))
                .sub(&h.mul(&dp(2 * m - 1, Parity::Even), &k).unwrap().scale(&(&c * &qi(2 * m))));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn psi_images() {
    let q = 3;
    let h = IHall::new(IQuiver::split(Quiver::linear_a(2)), q);
    assert_eq!(h.psi_image(TuiGen::K(0)).unwrap(), h.torus(vec![1, 0]).scale(&rat(-1, 3, q)));
    assert_eq!(h.psi_image(TuiGen::B(1)).unwrap(), h.simple(1).scale(&rat(-1, 2, q)));
    let k = h.psi_image(TuiGen::K(1)).unwrap();
    let ki = h.psi_image(TuiGen::KInv(1)).unwrap();
    assert_eq!(h.mul(&k, &ki).unwrap(), h.one());
    // Split tk_i are central.
    for i in 0..2 {
        for j in 0..2 {
            let (b, t) = (h.psi_image(TuiGen::B(j)).unwrap(), h.psi_image(TuiGen::K(i)).unwrap());
            assert_eq!(h.mul(&b, &t).unwrap(), h.mul(&t, &b).unwrap());
        }
    }

    let h = IHall::new(qa3(), q);
    assert_eq!(h.psi_image(TuiGen::B(2)).unwrap(), h.simple(2).scale(&vp(1, q).scale(&BigRational::new(1.into(), 2.into()))));
    assert_eq!(h.psi_image(TuiGen::B(0)).unwrap(), h.simple(0).scale(&rat(-1, 2, q)));
    assert_eq!(h.psi_image(TuiGen::K(0)).unwrap(), h.torus(vec![1, 0, 0]));
}

#[test]
fn quasi_split_commutator() {
    for q in [2, 3] {
        let h = IHall::new(qa3(), q);
        let (s1, s3) = (h.simple(0), h.simple(2));
        let lhs = h.mul(&s3, &s1).unwrap().sub(&h.mul(&s1, &s3).unwrap());
        let rhs = h.torus(vec![0, 0, 1]).sub(&h.torus(vec![1, 0, 0])).scale(&QuadCoeff::from_int(q as i64 - 1, q));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn associativity_on_generators() {
    let split_kr = IQuiver::split(Quiver::kronecker());
    for (iq, qs) in [
        (IQuiver::split(Quiver::linear_a(2)), vec![2, 3]),
        (qa3(), vec![2, 3]),
        (split_kr, vec![2]),
    ] {
        for q in qs {
            let h = IHall::new(iq.clone(), q);
            let mut gens = Vec::new();
            for i in 0..h.n() {
                gens.extend([h.generator(IGen::S(i)), h.generator(IGen::E(i)), h.generator(IGen::KInv(i))]);
            }
            for a in &gens {
                for b in &gens {
                    for c in &gens {
                        let l = h.mul(&h.mul(a, b).unwrap(), c).unwrap();
                        let r = h.mul(a, &h.mul(b, c).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }
}

#[test]
fn torus_commutation_on_basis() {
    let h = IHall::new(qa3(), 2);
    let fd = h.iq.form_data();
    let ids = h.kq.enumerate_isoclasses(2).unwrap();
    for i in 0..3 {
        let e = h.generator(IGen::E(i));
        let ei = h.generator(IGen::KInv(i));
        for &x in &ids {
            let d = h.kq.class(x).rep.dims_i64();
            let b = h.basis(x, vec![0, 1, 0]);
            let conj = h.mul_all(&[&e, &b, &ei]).unwrap();
            let ex = fd.symmetrized_form(&d, &h.unit(h.iq.tau[i], 1)) - fd.symmetrized_form(&d, &h.unit(i, 1));
            assert_eq!(conj, b.scale(&vp(ex as i32, 2)));
        }
    }
}

#[test]
fn top_degree_matches_kq_hall_product() {
    for iq in [IQuiver::split(Quiver::linear_a(2)), qa3(), IQuiver::split(Quiver::jordan())] {
        let h = IHall::new(iq, 2);
        let hall = h.kq_hall();
        let ids = h.kq.enumerate_isoclasses(2).unwrap();
        for &x in &ids {
            for &y in &ids {
                let p = h.mul(&h.basis(x, h.zero_alpha()), &h.basis(y, h.zero_alpha())).unwrap();
                let top: Vec<i64> = h.kq.class(x).rep.dims_i64().iter().zip(h.kq.class(y).rep.dims_i64()).map(|(a, b)| a + b).collect();
                let mut top_part = crate::hallcore::HallElement::zero();
                for ((z, al), c) in &p.terms {
                    let d = h.kq.class(*z).rep.dims_i64();
                    assert!(d.iter().zip(&top).all(|(a, b)| a <= b));
                    if d == top {
                        assert!(al.iter().all(|&a| a == 0));
                        top_part.add_term(*z, c);
                    }
                }
                let want = hall
                    .mul(&crate::hallcore::HallElement::basis(x, 2), &crate::hallcore::HallElement::basis(y, 2))
                    .unwrap();
                assert_eq!(top_part, want);
            }
        }
    }
}

#[test]
fn normal_form_bookkeeping() {
    for (iq, max) in [(IQuiver::split(Quiver::linear_a(2)), 4), (IQuiver::split(Quiver::jordan()), 4)] {
        let h = IHall::new(iq, 2);
        let cat = ModCat::new(h.bq.clone(), 2);
        for id in cat.enumerate_isoclasses(max).unwrap() {
            let m = cat.class(id).rep.clone();
            let r = h.reduce(&m).unwrap();
            let xd = h.kq.class(r.x).rep.dims_i64();
            let res = h.iq.torus_res(&r.alpha);
            let want: Vec<i64> = xd.iter().zip(&res).map(|(a, b)| a + b).collect();
            assert_eq!(m.dims_i64(), want);
            let again = h.reduce(&h.lift(&h.kq.class(r.x).rep)).unwrap();
            assert_eq!(again, Reduced { scalar: QuadCoeff::one(2), x: r.x, alpha: h.zero_alpha() });
        }
    }
}

#[test]
fn json_and_render() {
    let h = IHall::new(IQuiver::split(Quiver::point()), 2);
    let x = h.mul(&h.simple(0), &h.simple(0)).unwrap();
    let s = h.render(&x);
    assert!(s.contains("K{1}"), "{s}");
    let j: serde_json::Value = serde_json::from_str(&h.to_json(&x)).unwrap();
    assert_eq!(j.as_array().unwrap().len(), 2);
}

#[test]
fn generator_parsing() {
    let h = IHall::new(qa3(), 2);
    assert_eq!(h.parse_generator("S2").unwrap(), IGen::S(1));
    assert_eq!(h.parse_generator("E3").unwrap(), IGen::E(2));
    assert_eq!(h.parse_generator("K1^-1").unwrap(), IGen::KInv(0));
    assert!(h.parse_generator("X1").is_err());
}
