//! Finite-dimensional Hopf (*-)algebras given by structure constants, and
//! exact verification of their axioms on every basis tuple.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{dot, Mat, Tensor3};
use crate::report::{Check, Report};
use crate::scalar::CycScalar;

/// Coordinate vector of an algebra element.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem(pub Vec<CycScalar>);

/// Values of a linear functional on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional(pub Vec<CycScalar>);

macro_rules! vector_ops {
    ($t:ident) => {
        impl $t {
            pub fn zero(n: usize) -> Self {
                $t(vec![CycScalar::zero(); n])
            }

            pub fn basis(n: usize, i: usize) -> Self {
                let mut v = vec![CycScalar::zero(); n];
                v[i] = CycScalar::one();
                $t(v)
            }

            pub fn from_ints(vals: &[i64]) -> Self {
                $t(vals.iter().map(|&v| CycScalar::from_int(v)).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[CycScalar] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(CycScalar::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $t(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, s: &CycScalar) -> Self {
                $t(self.0.iter().map(|a| a * s).collect())
            }

            pub fn conj(&self) -> Self {
                $t(self.0.iter().map(CycScalar::conj).collect())
            }

            /// Index of the first nonzero coordinate.
            pub fn first_nonzero(&self) -> Option<usize> {
                self.0.iter().position(|c| !c.is_zero())
            }
        }
    };
}
vector_ops!(Elem);
vector_ops!(Functional);

impl Functional {
    pub fn eval(&self, a: &Elem) -> CycScalar {
        dot(&self.0, &a.0)
    }

    /// The same coordinates read as an element (of the dual algebra).
    pub fn as_elem(&self) -> Elem {
        Elem(self.0.clone())
    }
}

impl Elem {
    /// The same coordinates read as a functional (on the dual algebra).
    pub fn as_functional(&self) -> Functional {
        Functional(self.0.clone())
    }
}

/// Sparse element of `A ⊗ A`, keyed by basis index pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tensor2(pub BTreeMap<(usize, usize), CycScalar>);

impl Tensor2 {
    pub fn add_term(&mut self, i: usize, j: usize, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&(i, j)) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.0.remove(&(i, j));
                } else {
                    *v = s;
                }
            }
            None => {
                self.0.insert((i, j), c);
            }
        }
    }

    pub fn simple(a: &Elem, b: &Elem) -> Tensor2 {
        let mut t = Tensor2::default();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    t.add_term(i, j, x * y);
                }
            }
        }
        t
    }

    pub fn flip(&self) -> Tensor2 {
        let mut t = Tensor2::default();
        for (&(i, j), c) in &self.0 {
            t.add_term(j, i, c.clone());
        }
        t
    }

    /// `(L ⊗ R)` applied with column-convention matrices.
    pub fn map(&self, left: &Mat, right: &Mat) -> Tensor2 {
        let mut t = Tensor2::default();
        for (&(i, j), c) in &self.0 {
            for a in 0..left.rows() {
                let l = left.get(a, i);
                if l.is_zero() {
                    continue;
                }
                for b in 0..right.rows() {
                    let r = right.get(b, j);
                    if !r.is_zero() {
                        t.add_term(a, b, &(c * l) * r);
                    }
                }
            }
        }
        t
    }

    /// `(ι ⊗ f)`: contracts the right leg.
    pub fn contract_right(&self, f: &Functional, n: usize) -> Elem {
        let mut out = Elem::zero(n);
        for (&(i, j), c) in &self.0 {
            let v = &f.0[j];
            if !v.is_zero() {
                out.0[i] = &out.0[i] + &(c * v);
            }
        }
        out
    }

    /// `(f ⊗ ι)`: contracts the left leg.
    pub fn contract_left(&self, f: &Functional, n: usize) -> Elem {
        let mut out = Elem::zero(n);
        for (&(i, j), c) in &self.0 {
            let v = &f.0[i];
            if !v.is_zero() {
                out.0[j] = &out.0[j] + &(c * v);
            }
        }
        out
    }

    pub fn scale(&self, s: &CycScalar) -> Tensor2 {
        let mut t = Tensor2::default();
        for (&(i, j), c) in &self.0 {
            t.add_term(i, j, c * s);
        }
        t
    }
}

/// Sparse element of `A ⊗ A ⊗ A`.
type Tensor3Elem = BTreeMap<(usize, usize, usize), CycScalar>;

fn add3(t: &mut Tensor3Elem, key: (usize, usize, usize), c: CycScalar) {
    if c.is_zero() {
        return;
    }
    let entry = t.entry(key).or_insert_with(CycScalar::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        t.remove(&key);
    }
}

/// A finite-dimensional Hopf algebra by structure constants.
///
/// * `e_i e_j = Σ_k mult[i][j][k] e_k`
/// * `Δ(e_k) = Σ_{i,j} comult[k][i][j] e_i ⊗ e_j`
/// * `S(e_i) = Σ_k antipode[k][i] e_k` (columns are images)
/// * `a* = star · conj(a)` when a *-structure is present
#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    pub name: String,
    pub dim: usize,
    pub field_order: u32,
    pub mult: Tensor3,
    pub unit: Elem,
    pub comult: Tensor3,
    pub counit: Functional,
    pub antipode: Mat,
    pub star: Option<Mat>,
}

impl HopfData {
    /// Checks that every component has the declared dimension.
    pub fn check_shapes(&self) -> Result<()> {
        let n = self.dim;
        let mismatch = |got: usize| Err(Error::DimMismatch { expected: n, got });
        if self.mult.dim() != n {
            return mismatch(self.mult.dim());
        }
        if self.comult.dim() != n {
            return mismatch(self.comult.dim());
        }
        if self.unit.dim() != n {
            return mismatch(self.unit.dim());
        }
        if self.counit.dim() != n {
            return mismatch(self.counit.dim());
        }
        if self.antipode.rows() != n || self.antipode.cols() != n {
            return mismatch(self.antipode.rows());
        }
        if let Some(s) = &self.star {
            if s.rows() != n || s.cols() != n {
                return mismatch(s.rows());
            }
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Elem {
        Elem::basis(self.dim, i)
    }

    pub fn one(&self) -> Elem {
        self.unit.clone()
    }

    /// Product of two elements.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        for v in [a, b] {
            if v.dim() != self.dim {
                return Err(Error::DimMismatch { expected: self.dim, got: v.dim() });
            }
        }
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero(self.dim);
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in self.mult.slice(i) {
                let y = &b.0[*j];
                if !y.is_zero() {
                    out.0[*k] = &out.0[*k] + &(&(x * y) * c);
                }
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Elem {
        let mut out = Elem::zero(self.dim);
        for (jj, k, c) in self.mult.slice(i) {
            if *jj == j {
                out.0[*k] = c.clone();
            }
        }
        out
    }

    /// Product of three or more elements, left to right.
    pub fn mul_all(&self, elems: &[&Elem]) -> Elem {
        let mut acc = self.one();
        for e in elems {
            acc = self.mul_unchecked(&acc, e);
        }
        acc
    }

    pub fn comult(&self, a: &Elem) -> Tensor2 {
        let mut t = Tensor2::default();
        for (k, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, j, c) in self.comult.slice(k) {
                t.add_term(*i, *j, x * c);
            }
        }
        t
    }

    pub fn counit(&self, a: &Elem) -> CycScalar {
        self.counit.eval(a)
    }

    pub fn antipode(&self, a: &Elem) -> Elem {
        Elem(self.antipode.mul_vec(&a.0).expect("antipode shape checked"))
    }

    pub fn apply(&self, m: &Mat, a: &Elem) -> Elem {
        Elem(m.mul_vec(&a.0).expect("square matrix of algebra dimension"))
    }

    /// `a*`, when a *-structure is present.
    pub fn star(&self, a: &Elem) -> Option<Elem> {
        self.star
            .as_ref()
            .map(|s| Elem(s.mul_vec(&a.conj().0).expect("star shape checked")))
    }

    /// Product in `A ⊗ A`.
    pub fn mul_tensor2(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut t = Tensor2::default();
        for (&(a, b), c) in &x.0 {
            for (&(p, q), d) in &y.0 {
                let cd = c * d;
                for (j1, k1, m1) in self.mult.slice(a) {
                    if *j1 != p {
                        continue;
                    }
                    for (j2, k2, m2) in self.mult.slice(b) {
                        if *j2 == q {
                            t.add_term(*k1, *k2, &(&cd * m1) * m2);
                        }
                    }
                }
            }
        }
        t
    }

    /// Conjugate-linear `(x ⊗ y)* = x* ⊗ y*`.
    pub fn star_tensor2(&self, x: &Tensor2) -> Option<Tensor2> {
        let s = self.star.as_ref()?;
        let mut t = Tensor2::default();
        for (&(i, j), c) in &x.0 {
            let cc = c.conj();
            for a in 0..self.dim {
                let sa = s.get(a, i);
                if sa.is_zero() {
                    continue;
                }
                for b in 0..self.dim {
                    let sb = s.get(b, j);
                    if !sb.is_zero() {
                        t.add_term(a, b, &(&cc * sa) * sb);
                    }
                }
            }
        }
        Some(t)
    }

    /// Multiplication `m: A ⊗ A → A`.
    pub fn multiply_legs(&self, x: &Tensor2) -> Elem {
        let mut out = Elem::zero(self.dim);
        for (&(i, j), c) in &x.0 {
            for (jj, k, m) in self.mult.slice(i) {
                if *jj == j {
                    out.0[*k] = &out.0[*k] + &(c * m);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &Elem) -> Mat {
        let cols: Vec<Vec<CycScalar>> =
            (0..self.dim).map(|j| self.mul_unchecked(a, &self.basis(j)).0).collect();
        Mat::from_columns(&cols).expect("columns share the algebra dimension")
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &Elem) -> Mat {
        let cols: Vec<Vec<CycScalar>> =
            (0..self.dim).map(|j| self.mul_unchecked(&self.basis(j), a).0).collect();
        Mat::from_columns(&cols).expect("columns share the algebra dimension")
    }

    pub fn antipode_inverse(&self) -> Result<Mat> {
        self.antipode.inverse()
    }

    /// `S²` as a matrix.
    pub fn antipode_squared(&self) -> Mat {
        self.antipode.mul(&self.antipode).expect("square antipode")
    }

    pub fn is_group_like(&self, h: &Elem) -> bool {
        self.counit(h).is_one() && self.comult(h) == Tensor2::simple(h, h)
    }

    /// Embeds every scalar into `Q(ζ_order)` when possible, producing a
    /// canonical representation for output.
    pub fn with_field_order(&self, order: u32) -> HopfData {
        let lift = |c: &CycScalar| c.embed(order);
        let lift_mat = |m: &Mat| {
            Mat::from_rows(m.to_rows().iter().map(|r| r.iter().map(lift).collect()).collect())
                .expect("rectangular rows")
        };
        HopfData {
            name: self.name.clone(),
            dim: self.dim,
            field_order: order,
            mult: self.mult.map_entries(lift),
            unit: Elem(self.unit.0.iter().map(lift).collect()),
            comult: self.comult.map_entries(lift),
            counit: Functional(self.counit.0.iter().map(lift).collect()),
            antipode: lift_mat(&self.antipode),
            star: self.star.as_ref().map(lift_mat),
        }
    }
}

fn idx3(t: &str, i: usize, j: usize, k: usize) -> String {
    format!("{t} at basis triple ({i},{j},{k})")
}

/// Associativity and unit laws on all basis triples.
pub fn verify_algebra(h: &HopfData) -> Report {
    const REF: &str = "(ab)c=a(bc),1a=a1=a";
    let n = h.dim;
    let prods: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| h.mul_basis(i, j)).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = h.mul_unchecked(&prods[i][j], &h.basis(k));
                let right = h.mul_unchecked(&h.basis(i), &prods[j][k]);
                if left != right {
                    return Report::single(Check::fail("hopf.algebra", REF, idx3("associativity fails", i, j, k)));
                }
            }
        }
    }
    for i in 0..n {
        let e = h.basis(i);
        if h.mul_unchecked(&h.unit, &e) != e || h.mul_unchecked(&e, &h.unit) != e {
            return Report::single(Check::fail("hopf.algebra", REF, format!("unit law fails at e{i}")));
        }
    }
    Report::single(Check::pass("hopf.algebra", REF))
}

fn comult_left_leg(h: &HopfData, t: &Tensor2) -> Tensor3Elem {
    // (Δ ⊗ ι)
    let mut out = Tensor3Elem::new();
    for (&(a, b), c) in &t.0 {
        for (i, j, d) in h.comult.slice(a) {
            add3(&mut out, (*i, *j, b), c * d);
        }
    }
    out
}

fn comult_right_leg(h: &HopfData, t: &Tensor2) -> Tensor3Elem {
    // (ι ⊗ Δ)
    let mut out = Tensor3Elem::new();
    for (&(a, b), c) in &t.0 {
        for (i, j, d) in h.comult.slice(b) {
            add3(&mut out, (a, *i, *j), c * d);
        }
    }
    out
}

/// Coassociativity and counit laws on every basis element.
pub fn verify_coalgebra(h: &HopfData) -> Report {
    const REF: &str = "(Δ⊗ι)Δ=(ι⊗Δ)Δ,(ε⊗ι)Δ=(ι⊗ε)Δ=ι";
    for k in 0..h.dim {
        let e = h.basis(k);
        let d = h.comult(&e);
        if comult_left_leg(h, &d) != comult_right_leg(h, &d) {
            return Report::single(Check::fail("hopf.coalgebra", REF, format!("coassociativity fails at e{k}")));
        }
        if d.contract_left(&h.counit, h.dim) != e || d.contract_right(&h.counit, h.dim) != e {
            return Report::single(Check::fail("hopf.coalgebra", REF, format!("counit law fails at e{k}")));
        }
    }
    Report::single(Check::pass("hopf.coalgebra", REF))
}

/// `Δ` and `ε` are unital algebra maps.
pub fn verify_bialgebra(h: &HopfData) -> Report {
    const REF: &str = "Δ(ab)=Δ(a)Δ(b),Δ(1)=1⊗1,ε(ab)=ε(a)ε(b),ε(1)=1";
    let n = h.dim;
    let deltas: Vec<Tensor2> = (0..n).map(|i| h.comult(&h.basis(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let p = h.mul_basis(i, j);
            if h.comult(&p) != h.mul_tensor2(&deltas[i], &deltas[j]) {
                return Report::single(Check::fail(
                    "hopf.bialgebra",
                    REF,
                    format!("Δ not multiplicative at (e{i},e{j})"),
                ));
            }
            if h.counit(&p) != &h.counit.0[i] * &h.counit.0[j] {
                return Report::single(Check::fail(
                    "hopf.bialgebra",
                    REF,
                    format!("ε not multiplicative at (e{i},e{j})"),
                ));
            }
        }
    }
    if h.comult(&h.unit) != Tensor2::simple(&h.unit, &h.unit) {
        return Report::single(Check::fail("hopf.bialgebra", REF, "Δ(1) ≠ 1⊗1"));
    }
    if !h.counit(&h.unit).is_one() {
        return Report::single(Check::fail("hopf.bialgebra", REF, "ε(1) ≠ 1"));
    }
    Report::single(Check::pass("hopf.bialgebra", REF))
}

/// Antipode identities on every basis element, invertibility of `S`, and the
/// derived properties `S(1)=1`, `ε∘S=ε`, `Δ∘S=(S⊗S)∘flip∘Δ`.
pub fn verify_antipode(h: &HopfData) -> Report {
    const REF: &str = "m(S⊗ι)Δ(a)=ε(a)1=m(ι⊗S)Δ(a)";
    const REF_DERIVED: &str = "S(1)=1,ε∘S=ε,Δ∘S=(S⊗S)∘flip∘Δ";
    let n = h.dim;
    let id = Mat::identity(n);
    let mut report = Report::new();
    let mut failure = None;
    for k in 0..n {
        let e = h.basis(k);
        let d = h.comult(&e);
        let expect = h.unit.scale(&h.counit.0[k]);
        let left = h.multiply_legs(&d.map(&h.antipode, &id));
        let right = h.multiply_legs(&d.map(&id, &h.antipode));
        if left != expect {
            failure = Some(format!("m(S⊗ι)Δ(e{k}) ≠ ε(e{k})1"));
            break;
        }
        if right != expect {
            failure = Some(format!("m(ι⊗S)Δ(e{k}) ≠ ε(e{k})1"));
            break;
        }
    }
    if failure.is_none() && h.antipode.inverse().is_err() {
        failure = Some("antipode matrix is singular".into());
    }
    report.push(Check::from_failure("hopf.antipode", REF, failure));

    let mut derived = None;
    if h.antipode(&h.unit) != h.unit {
        derived = Some("S(1) ≠ 1".to_string());
    }
    for k in 0..n {
        if derived.is_some() {
            break;
        }
        let e = h.basis(k);
        let se = h.antipode(&e);
        if h.counit(&se) != h.counit.0[k] {
            derived = Some(format!("ε(S(e{k})) ≠ ε(e{k})"));
        } else if h.comult(&se) != h.comult(&e).flip().map(&h.antipode, &h.antipode) {
            derived = Some(format!("Δ(S(e{k})) ≠ (S⊗S)flipΔ(e{k})"));
        }
    }
    report.push(Check::from_failure("hopf.antipode-properties", REF_DERIVED, derived));
    report
}

/// *-structure compatibility: involutive, anti-multiplicative, `Δ` and `ε`
/// are *-maps, and `S(a)* = S⁻¹(a*)`.
pub fn verify_star(h: &HopfData) -> Result<Report> {
    const REF: &str = "(a*)*=a,(ab)*=b*a*,Δ(a*)=Δ(a)*,ε(a*)=conj(ε(a)),S(a)*=S⁻¹(a*)";
    if h.star.is_none() {
        return Err(Error::NoStarStructure);
    }
    let n = h.dim;
    let star = |a: &Elem| h.star(a).expect("star present");
    let s_inv = match h.antipode.inverse() {
        Ok(m) => m,
        Err(_) => {
            return Ok(Report::single(Check::fail("hopf.star", REF, "antipode is not invertible")));
        }
    };
    let fail = |why: String| Ok(Report::single(Check::fail("hopf.star", REF, why)));
    let stars: Vec<Elem> = (0..n).map(|i| star(&h.basis(i))).collect();
    for i in 0..n {
        let e = h.basis(i);
        if star(&stars[i]) != e {
            return fail(format!("(e{i}*)* ≠ e{i}"));
        }
        if h.comult(&stars[i]) != h.star_tensor2(&h.comult(&e)).expect("star present") {
            return fail(format!("Δ(e{i}*) ≠ Δ(e{i})*"));
        }
        if h.counit(&stars[i]) != h.counit.0[i].conj() {
            return fail(format!("ε(e{i}*) ≠ conj ε(e{i})"));
        }
        if star(&h.antipode(&e)) != h.apply(&s_inv, &stars[i]) {
            return fail(format!("S(e{i})* ≠ S⁻¹(e{i}*)"));
        }
        for j in 0..n {
            let lhs = star(&h.mul_basis(i, j));
            let rhs = h.mul_unchecked(&stars[j], &stars[i]);
            if lhs != rhs {
                return fail(format!("(e{i}e{j})* ≠ e{j}*e{i}*"));
            }
        }
    }
    Ok(Report::single(Check::pass("hopf.star", REF)))
}

/// Runs algebra, coalgebra, bialgebra and antipode verification in order,
/// stopping after the first failing stage.
pub fn verify_hopf(h: &HopfData) -> Report {
    let mut report = Report::new();
    if let Err(e) = h.check_shapes() {
        report.push(Check::fail("hopf.shape", "dim-consistency", e.to_string()));
        return report;
    }
    for stage in [verify_algebra, verify_coalgebra, verify_bialgebra, verify_antipode] {
        let r = stage(h);
        let failed = r.any_failed();
        report.extend(r);
        if failed {
            break;
        }
    }
    report
}
