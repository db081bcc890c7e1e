use num_bigint::BigInt;

use super::*;
use crate::linalg::Mat;
use crate::quiver::{bound_quiver, BoundQuiver, IQuiver, Quiver};

fn a2() -> BoundQuiver {
    BoundQuiver::path_algebra(Quiver::linear_a(2))
}

fn i2(bq: &BoundQuiver, q: u32) -> FqRep {
    let mut m = FqRep::zero_with_dims(bq, q, vec![1, 1]);
    m.maps[0] = Mat::identity(1);
    m
}

/// Nilpotent Jordan module with the given block sizes.
fn jordan_module(bq: &BoundQuiver, q: u32, blocks: &[usize]) -> FqRep {
    let n: usize = blocks.iter().sum();
    let mut m = FqRep::zero_with_dims(bq, q, vec![n]);
    let mut off = 0;
    for &b in blocks {
        for k in 1..b {
            m.maps[0].set(off + k, off + k - 1, 1);
        }
        off += b;
    }
    m
}

#[test]
fn hom_dimensions_on_a2() {
    let bq = a2();
    let i = i2(&bq, 2);
    let s1 = FqRep::simple(&bq, 2, 0);
    let s2 = FqRep::simple(&bq, 2, 1);
    assert_eq!(hom_dim(&bq, &i, &s1), 1);
    assert_eq!(hom_dim(&bq, &i, &s2), 0);
    let id = hom_space(&bq, &i, &i);
    assert_eq!(id.len(), 1);
}

#[test]
fn isomorphism_tests() {
    let bq = a2();
    let s1 = FqRep::simple(&bq, 3, 0);
    let s2 = FqRep::simple(&bq, 3, 1);
    let cat = ModCat::new(bq.clone(), 3);
    assert!(cat.is_isomorphic(&s1, &s1).unwrap());
    assert!(!cat.is_isomorphic(&s1.direct_sum(&s2), &i2(&bq, 3)).unwrap());
    let j = BoundQuiver::path_algebra(Quiver::jordan());
    let jc = ModCat::new(j.clone(), 2);
    let a = jordan_module(&j, 2, &[2]);
    let mut b = FqRep::zero_with_dims(&j, 2, vec![2]);
    b.maps[0] = Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2);
    assert!(jc.is_isomorphic(&a, &b).unwrap());
    assert!(!jc.is_isomorphic(&a, &jordan_module(&j, 2, &[1, 1])).unwrap());
}

#[test]
fn isoclass_counts() {
    let j = ModCat::new(BoundQuiver::path_algebra(Quiver::jordan()), 2);
    let nonzero = j.enumerate_isoclasses(2).unwrap().len() - 1;
    assert_eq!(nonzero, 3);
    let a = ModCat::new(a2(), 2);
    assert_eq!(a.classes_of_dims(&[1, 1]).unwrap().len(), 2);
    let split = ModCat::new(bound_quiver(&IQuiver::split(Quiver::linear_a(2))), 3);
    assert_eq!(split.classes_of_dims(&[1, 0]).unwrap().len(), 1);
    // Jordan partitions of 4 and Kronecker dimension (1,1): q+1 regular simples
    // plus the preprojective-injective pair is q + 1 + 1 classes.
    assert_eq!(j.classes_of_dims(&[4]).unwrap().len(), 5);
    let kr = ModCat::new(BoundQuiver::path_algebra(Quiver::kronecker()), 3);
    assert_eq!(kr.classes_of_dims(&[1, 1]).unwrap().len(), 5);
}

#[test]
fn automorphism_counts() {
    for q in [2u32, 3] {
        let pt = BoundQuiver::path_algebra(Quiver::point());
        let cat = ModCat::new(pt.clone(), q);
        let s = cat.simple(0);
        let qq = BigInt::from(q);
        assert_eq!(cat.aut_count_rep(&s).unwrap(), &qq - 1);
        let ss = s.direct_sum(&s);
        let gl2 = (&qq * &qq - 1) * (&qq * &qq - &qq);
        assert_eq!(cat.aut_count_rep(&ss).unwrap(), gl2);
        assert_eq!(aut_count_by_enumeration(&pt, &ss).unwrap(), gl2);
    }
    let j = BoundQuiver::path_algebra(Quiver::jordan());
    let cat = ModCat::new(j.clone(), 2);
    let m = jordan_module(&j, 2, &[2, 1]);
    assert_eq!(cat.aut_count_rep(&m).unwrap(), BigInt::from(8));
    assert_eq!(aut_count_by_enumeration(&j, &m).unwrap(), BigInt::from(8));
}

#[test]
fn hall_numbers_and_extensions() {
    for q in [2u32, 3] {
        let j = BoundQuiver::path_algebra(Quiver::jordan());
        let cat = ModCat::new(j.clone(), q);
        let s = cat.identify(&jordan_module(&j, q, &[1])).unwrap();
        let ss = cat.identify(&jordan_module(&j, q, &[1, 1])).unwrap();
        assert_eq!(cat.hall_number(ss, s, s).unwrap(), BigInt::from(q + 1));

        let bq = a2();
        let cat = ModCat::new(bq.clone(), q);
        let (s1, s2) = (cat.simple_id(0), cat.simple_id(1));
        let i = cat.identify(&i2(&bq, q)).unwrap();
        assert_eq!(cat.hall_number(i, s1, s2).unwrap(), BigInt::from(1));
        assert_eq!(cat.hall_number(i, s2, s2).unwrap(), BigInt::from(0));
        assert_eq!(cat.ext1_with_middle(s1, s2, i).unwrap(), BigInt::from(q - 1));

        let pt = BoundQuiver::path_algebra(Quiver::point());
        let cat = ModCat::new(pt.clone(), q);
        let s = cat.simple_id(0);
        let two = cat.identify(&cat.simple(0).direct_sum(&cat.simple(0))).unwrap();
        assert_eq!(cat.ext1_with_middle(s, s, two).unwrap(), BigInt::from(1));
    }
}

/// Counts middle terms over extension classes directly from cocycles.
fn ext_counts_by_cocycles(cat: &ModCat, m: usize, n: usize) -> std::collections::HashMap<usize, u64> {
    let (mr, nr) = (cat.class(m).rep.clone(), cat.class(n).rep.clone());
    let ext = ext_data(&cat.bq, &mr, &nr);
    let mut out = std::collections::HashMap::new();
    for c in ext.classes(cat.q) {
        let e = extension_module(&cat.bq, &mr, &nr, &ext, &c);
        *out.entry(cat.identify(&e).unwrap()).or_insert(0) += 1;
    }
    out
}

#[test]
fn riedtmann_peng_matches_cocycles() {
    for quiver in [Quiver::linear_a(2), Quiver::jordan()] {
        let cat = ModCat::new(BoundQuiver::path_algebra(quiver), 2);
        let all = cat.enumerate_isoclasses(3).unwrap();
        for &m in &all {
            for &n in &all {
                if cat.class(m).total_dim() + cat.class(n).total_dim() > 3 {
                    continue;
                }
                let direct = ext_counts_by_cocycles(&cat, m, n);
                let dims: Vec<usize> = cat
                    .class(m)
                    .dims()
                    .iter()
                    .zip(cat.class(n).dims())
                    .map(|(a, b)| a + b)
                    .collect();
                for l in cat.classes_of_dims(&dims).unwrap() {
                    let rp = cat.ext1_with_middle(m, n, l).unwrap();
                    let d = direct.get(&l).copied().unwrap_or(0);
                    assert_eq!(rp, BigInt::from(d), "m={m} n={n} l={l}");
                }
            }
        }
    }
}

#[test]
fn hereditary_euler_identity() {
    for quiver in [Quiver::linear_a(2), Quiver::kronecker(), Quiver::linear_a(3)] {
        let fd = quiver.form_data();
        let cat = ModCat::new(BoundQuiver::path_algebra(quiver), 2);
        let all = cat.enumerate_isoclasses(4).unwrap();
        for &m in &all {
            for &n in &all {
                let (mc, nc) = (cat.class(m), cat.class(n));
                if mc.total_dim() + nc.total_dim() > 4 {
                    continue;
                }
                let ext = ext_data(&cat.bq, &mc.rep, &nc.rep);
                let h = cat.hom_dim(&mc.rep, &nc.rep) as i64;
                let lhs = h - ext.ext_dim() as i64;
                assert_eq!(lhs, fd.euler_form(&mc.rep.dims_i64(), &nc.rep.dims_i64()));
            }
        }
    }
}
