//! Hopf algebra morphisms given as matrices, and isomorphisms out of Taft
//! algebras found by searching group-like/skew-primitive frames.

use crate::error::Result;
use crate::grouplike::find_group_likes;
use crate::hopf::{Elem, HopfData, Tensor2};
use crate::linalg::Mat;
use crate::scalar::CycScalar;
use crate::zoo;

/// Checks that `f` (columns are images of basis elements) is a bijective
/// Hopf algebra map `a → b`. Returns the first violated law.
pub fn verify_hopf_morphism(f: &Mat, a: &HopfData, b: &HopfData) -> std::result::Result<(), String> {
    if f.rows() != b.dim || f.cols() != a.dim {
        return Err(format!("shape {}×{} does not match {}→{}", f.rows(), f.cols(), a.dim, b.dim));
    }
    if f.inverse().is_err() {
        return Err("not bijective".into());
    }
    let img: Vec<Elem> = (0..a.dim).map(|i| Elem(f.column(i))).collect();
    if b.apply(f, &a.one()) != b.one() {
        return Err("unit not preserved".into());
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            if b.apply(f, &a.mul_basis(i, j)) != b.mul_unchecked(&img[i], &img[j]) {
                return Err(format!("not multiplicative at ({i},{j})"));
            }
        }
    }
    for k in 0..a.dim {
        if a.comult(&a.basis(k)).map(f, f) != b.comult(&img[k]) {
            return Err(format!("not comultiplicative at {k}"));
        }
        if b.counit(&img[k]) != a.counit.0[k] {
            return Err(format!("counit not preserved at {k}"));
        }
        if b.antipode(&img[k]) != b.apply(f, &a.antipode(&a.basis(k))) {
            return Err(format!("antipode not preserved at {k}"));
        }
    }
    Ok(())
}

/// An isomorphism `taft(n, q) → target`, sending `g ↦ c` for a group-like
/// `c` of order `n` and `x ↦ v` for a `(1, c)`-skew-primitive `v` with
/// `vc = q·cv`.
pub fn find_taft_isomorphism(n: u32, q: &CycScalar, target: &HopfData) -> Result<Option<Mat>> {
    let src = zoo::taft(n, q)?;
    let nn = n as usize;
    if target.dim != nn * nn {
        return Ok(None);
    }
    let one = target.one();
    for c in find_group_likes(target)? {
        let mut p = c.clone();
        let mut order = 1;
        while p != one && order <= nn {
            p = target.mul_unchecked(&p, &c);
            order += 1;
        }
        if order != nn {
            continue;
        }
        for v in skew_primitives(target, &c, q) {
            let mut cols = vec![Vec::new(); nn * nn];
            let mut xj = one.clone();
            for j in 0..nn {
                let mut gi = one.clone();
                for i in 0..nn {
                    cols[j * nn + i] = target.mul_unchecked(&gi, &xj).0;
                    gi = target.mul_unchecked(&gi, &c);
                }
                xj = target.mul_unchecked(&xj, &v);
            }
            let f = Mat::from_columns(&cols)?;
            if verify_hopf_morphism(&f, &src, target).is_ok() {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

/// Kernel basis of `Δv = v⊗1 + c⊗v`, `vc − q·cv = 0`.
fn skew_primitives(h: &HopfData, c: &Elem, q: &CycScalar) -> Vec<Elem> {
    let n = h.dim;
    let one = h.one();
    let mut columns: Vec<Vec<CycScalar>> = Vec::with_capacity(n);
    for k in 0..n {
        let e = h.basis(k);
        let mut t = h.comult(&e);
        let rhs = Tensor2::simple(&e, &one);
        let rhs2 = Tensor2::simple(c, &e);
        for (&(i, j), s) in rhs.0.iter().chain(rhs2.0.iter()) {
            t.add_term(i, j, -s);
        }
        let mut col = vec![CycScalar::zero(); n * n + n];
        for (&(i, j), s) in &t.0 {
            col[i * n + j] = s.clone();
        }
        let comm = h.mul_unchecked(&e, c).sub(&h.mul_unchecked(c, &e).scale(q));
        for (r, s) in comm.0.into_iter().enumerate() {
            col[n * n + r] = s;
        }
        columns.push(col);
    }
    Mat::from_columns(&columns).expect("equal lengths").null_space().into_iter().map(Elem).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_hopf;
    use crate::zoo::Group;

    #[test]
    fn sweedler_is_self_dual() {
        let h = zoo::sweedler();
        let d = dual_hopf(&h);
        let f = find_taft_isomorphism(2, &CycScalar::from_int(-1), &d).unwrap().expect("isomorphism");
        assert!(verify_hopf_morphism(&f, &h, &d).is_ok());
    }

    #[test]
    fn z6_is_z2_times_z3() {
        let z6 = zoo::group_algebra(&Group::cyclic(6));
        let prod = zoo::tensor_product(&zoo::group_algebra(&Group::cyclic(2)), &zoo::group_algebra(&Group::cyclic(3)));
        let mut f = Mat::zeros(6, 6);
        for k in 0..6 {
            f.set((k % 2) * 3 + k % 3, k, CycScalar::one());
        }
        assert!(verify_hopf_morphism(&f, &z6, &prod).is_ok());
        // Identity matching is not a morphism.
        assert!(verify_hopf_morphism(&Mat::identity(6), &z6, &prod).is_err());
    }

    #[test]
    fn group_algebra_of_s3_is_not_a_taft_algebra() {
        let h = zoo::group_algebra(&Group::symmetric3());
        assert_eq!(find_taft_isomorphism(3, &CycScalar::zeta(3, 1), &h).unwrap(), None);
    }
}
