//! Standard examples compiled to structure constants.
//!
//! Basis orderings are fixed: group elements follow the Cayley-table order;
//! Taft algebras use `g^i x^j` at index `j·n + i` (so `H₄` reads
//! `1, g, x, gx`); tensor products use `e_i ⊗ f_j` at index `i·dim₂ + j`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hopf::{Elem, Functional, HopfData, Tensor2};
use crate::linalg::{Mat, Tensor3};
use crate::scalar::CycScalar;

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl Group {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidCayleyTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCayleyTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidCayleyTable(format!("entry {bad} out of range in row {i}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidCayleyTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidCayleyTable("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidCayleyTable(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(Group { name: name.to_string(), table, identity, inverses })
    }

    /// Whitespace-separated rows of element indices; `#` starts a comment.
    pub fn parse_table(name: &str, text: &str) -> Result<Group> {
        let mut table = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidCayleyTable(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Group::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Group {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Group::from_table(&format!("Z{n}"), table).expect("cyclic table is a group")
    }

    /// Permutations of three points in lexicographic order, composed as
    /// `(pq)(x) = p(q(x))`.
    pub fn symmetric3() -> Group {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = [p[q[0]], p[q[1]], p[q[2]]];
                        perms.iter().position(|s| *s == r).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        Group::from_table("S3", table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.table {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn inversion_matrix(g: &Group) -> Mat {
    let n = g.order();
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        m.set(g.inverse(i), i, CycScalar::one());
    }
    m
}

/// The group algebra `C[G]` with `Δ(g) = g⊗g`, `S(g) = g⁻¹`, `g* = g⁻¹`.
pub fn group_algebra(g: &Group) -> HopfData {
    let n = g.order();
    let mut mult = Tensor3::zeros(n);
    let mut comult = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            mult.set(i, j, g.mul(i, j), CycScalar::one());
        }
        comult.set(i, i, i, CycScalar::one());
    }
    let s = inversion_matrix(g);
    HopfData {
        name: format!("C[{}]", g.name),
        dim: n,
        field_order: 1,
        mult,
        unit: Elem::basis(n, g.identity()),
        comult,
        counit: Functional(vec![CycScalar::one(); n]),
        antipode: s.clone(),
        star: Some(s),
    }
}

/// Functions on `G` with pointwise product and `Δ(f)(p,q) = f(pq)`, in the
/// basis of indicator functions.
pub fn function_algebra(g: &Group) -> HopfData {
    let n = g.order();
    let mut mult = Tensor3::zeros(n);
    let mut comult = Tensor3::zeros(n);
    for i in 0..n {
        mult.set(i, i, i, CycScalar::one());
        for j in 0..n {
            comult.set(g.mul(i, j), i, j, CycScalar::one());
        }
    }
    HopfData {
        name: format!("C({})", g.name),
        dim: n,
        field_order: 1,
        mult,
        unit: Elem(vec![CycScalar::one(); n]),
        comult,
        counit: Functional::basis(n, g.identity()),
        antipode: inversion_matrix(g),
        star: Some(Mat::identity(n)),
    }
}

/// The one-dimensional Hopf algebra `C`.
pub fn trivial() -> HopfData {
    group_algebra(&Group::from_table("1", vec![vec![0]]).expect("trivial group"))
}

fn is_primitive_root(q: &CycScalar, n: u32) -> bool {
    let mut p = CycScalar::one();
    for k in 1..=n {
        p = &p * q;
        if p.is_one() {
            return k == n;
        }
    }
    false
}

/// Taft algebra `T_{n²}(q)`: `g^n = 1`, `x^n = 0`, `xg = q·gx`,
/// `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`.
pub fn taft(n: u32, q: &CycScalar) -> Result<HopfData> {
    if n < 2 || !is_primitive_root(q, n) {
        return Err(Error::NotPrimitiveRoot(n));
    }
    let q = q.simplify();
    let nn = n as usize;
    let dim = nn * nn;
    let idx = |i: usize, j: usize| j * nn + i;
    let q_pows: Vec<CycScalar> = (0..nn).map(|k| q.pow(k as u64)).collect();

    let mut mult = Tensor3::zeros(dim);
    for a in 0..nn {
        for b in 0..nn {
            for c in 0..nn {
                for d in 0..nn {
                    if b + d >= nn {
                        continue;
                    }
                    // x^b g^c = q^{bc} g^c x^b
                    let coef = q_pows[(b * c) % nn].clone();
                    mult.set(idx(a, b), idx(c, d), idx((a + c) % nn, b + d), coef);
                }
            }
        }
    }
    let mut h = HopfData {
        name: format!("taft({n},{})", q.to_text(q.order())?),
        dim,
        field_order: q.order(),
        mult,
        unit: Elem::basis(dim, idx(0, 0)),
        comult: Tensor3::zeros(dim),
        counit: Functional::zero(dim),
        antipode: Mat::zeros(dim, dim),
        star: None,
    };
    let g = h.basis(idx(1, 0));
    let x = h.basis(idx(0, 1));
    let one = h.one();
    let delta_g = Tensor2::simple(&g, &g);
    let mut delta_x = Tensor2::simple(&x, &one);
    for (&(i, j), c) in &Tensor2::simple(&g, &x).0 {
        delta_x.add_term(i, j, c.clone());
    }
    let g_last = h.mul_all(&vec![&g; nn - 1]);
    let s_g = g_last.clone();
    let s_x = h.mul_unchecked(&g_last, &x).scale(&CycScalar::from_int(-1));

    let mut comult = Tensor3::zeros(dim);
    let mut antipode = Mat::zeros(dim, dim);
    let mut counit = Functional::zero(dim);
    for a in 0..nn {
        for b in 0..nn {
            let k = idx(a, b);
            let mut d = Tensor2::simple(&one, &one);
            for _ in 0..a {
                d = h.mul_tensor2(&d, &delta_g);
            }
            for _ in 0..b {
                d = h.mul_tensor2(&d, &delta_x);
            }
            for (&(i, j), c) in &d.0 {
                comult.set(k, i, j, c.clone());
            }
            // S is an anti-homomorphism: S(g^a x^b) = S(x)^b S(g)^a.
            let mut s = one.clone();
            for _ in 0..b {
                s = h.mul_unchecked(&s, &s_x);
            }
            for _ in 0..a {
                s = h.mul_unchecked(&s, &s_g);
            }
            for (r, v) in s.0.into_iter().enumerate() {
                antipode.set(r, k, v);
            }
            if b == 0 {
                counit.0[k] = CycScalar::one();
            }
        }
    }
    h.comult = comult;
    h.antipode = antipode;
    h.counit = counit;
    Ok(h)
}

/// Sweedler's four-dimensional Hopf algebra `H₄` on the basis `1, g, x, gx`,
/// with the *-structure `g* = g`, `x* = x`.
pub fn sweedler() -> HopfData {
    let mut h = taft(2, &CycScalar::from_int(-1)).expect("-1 is a primitive square root of unity");
    h.name = "sweedler".into();
    let mut star = Mat::identity(4);
    // (gx)* = x* g* = xg = -gx
    star.set(3, 3, CycScalar::from_int(-1));
    h.star = Some(star);
    h
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (r2, c2) = (b.rows(), b.cols());
    let mut m = Mat::zeros(a.rows() * r2, a.cols() * c2);
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let x = a.get(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..r2 {
                for j2 in 0..c2 {
                    let y = b.get(i2, j2);
                    if !y.is_zero() {
                        m.set(i1 * r2 + i2, j1 * c2 + j2, x * y);
                    }
                }
            }
        }
    }
    m
}

fn kron_tensor(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let d2 = b.dim();
    let mut t = Tensor3::zeros(a.dim() * d2);
    for i1 in 0..a.dim() {
        for (j1, k1, x) in a.slice(i1) {
            for i2 in 0..d2 {
                for (j2, k2, y) in b.slice(i2) {
                    t.set(i1 * d2 + i2, j1 * d2 + j2, k1 * d2 + k2, x * y);
                }
            }
        }
    }
    t
}

fn kron_vec(a: &[CycScalar], b: &[CycScalar]) -> Vec<CycScalar> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// The tensor product Hopf algebra on `e_i ⊗ f_j`.
pub fn tensor_product(h1: &HopfData, h2: &HopfData) -> HopfData {
    let star = match (&h1.star, &h2.star) {
        (Some(a), Some(b)) => Some(kron(a, b)),
        _ => None,
    };
    HopfData {
        name: format!("{}⊗{}", h1.name, h2.name),
        dim: h1.dim * h2.dim,
        field_order: h1.field_order.lcm(&h2.field_order),
        mult: kron_tensor(&h1.mult, &h2.mult),
        unit: Elem(kron_vec(&h1.unit.0, &h2.unit.0)),
        comult: kron_tensor(&h1.comult, &h2.comult),
        counit: Functional(kron_vec(&h1.counit.0, &h2.counit.0)),
        antipode: kron(&h1.antipode, &h2.antipode),
        star,
    }
}

/// Every algebra the verifiers are exercised against.
pub fn standard_zoo() -> Vec<HopfData> {
    let z2 = Group::cyclic(2);
    let z3 = Group::cyclic(3);
    let z6 = Group::cyclic(6);
    let s3 = Group::symmetric3();
    let h4 = sweedler();
    let mut out = Vec::new();
    for g in [&z2, &z3, &z6, &s3] {
        out.push(group_algebra(g));
    }
    for g in [&z2, &z3, &z6, &s3] {
        out.push(function_algebra(g));
    }
    out.push(h4.clone());
    out.push(taft(2, &CycScalar::from_int(-1)).expect("taft(2)"));
    out.push(taft(3, &CycScalar::zeta(3, 1)).expect("taft(3)"));
    out.push(taft(3, &CycScalar::zeta(3, 2)).expect("taft(3)"));
    out.push(tensor_product(&group_algebra(&z2), &group_algebra(&z3)));
    out.push(tensor_product(&h4, &group_algebra(&z2)));
    out.push(tensor_product(&h4, &h4));
    out
}

/// Looks up a constructor by name. `q` is read in `Q(ζ_n)` for Taft algebras.
pub fn by_name(name: &str, n: Option<u32>, q: Option<&str>, cayley: Option<&Group>) -> Result<HopfData> {
    match name {
        "sweedler" | "h4" => Ok(sweedler()),
        "taft" => {
            let n = n.unwrap_or(3);
            let q = match q {
                Some(txt) => CycScalar::parse(txt, n)?,
                None => CycScalar::zeta(n, 1),
            };
            taft(n, &q)
        }
        "trivial" => Ok(trivial()),
        "group" | "function" => {
            let g = match (cayley, n) {
                (Some(g), _) => g.clone(),
                (None, Some(n)) => Group::cyclic(n as usize),
                (None, None) => return Err(Error::InvalidCayleyTable("a Cayley table or --n is required".into())),
            };
            Ok(if name == "group" { group_algebra(&g) } else { function_algebra(&g) })
        }
        "s3" => Ok(group_algebra(&Group::symmetric3())),
        _ => Err(Error::InvalidCayleyTable(format!("unknown constructor {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{verify_hopf, verify_star};

    #[test]
    fn bad_tables() {
        assert!(Group::from_table("x", vec![]).is_err());
        assert!(Group::from_table("x", vec![vec![0, 1], vec![1]]).is_err());
        assert!(Group::from_table("x", vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(Group::parse_table("x", "0 1\n1 0\n").is_ok());
        assert!(Group::parse_table("x", "0 1\n1 q\n").is_err());
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = Group::symmetric3();
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
        assert_eq!(Group::parse_table("S3", &g.to_text()).unwrap().table(), g.table());
    }

    #[test]
    fn every_zoo_entry_is_a_hopf_algebra() {
        for h in standard_zoo() {
            let r = verify_hopf(&h);
            assert!(r.all_passed(), "{}: {:?}", h.name, r.first_failure());
            if h.star.is_some() {
                assert!(verify_star(&h).unwrap().all_passed(), "{}", h.name);
            }
        }
    }

    #[test]
    fn taft_two_is_sweedler() {
        let t = taft(2, &CycScalar::from_int(-1)).unwrap();
        let h = sweedler();
        assert_eq!(t.mult, h.mult);
        assert_eq!(t.comult, h.comult);
        assert_eq!(t.unit, h.unit);
        assert_eq!(t.counit, h.counit);
        assert_eq!(t.antipode, h.antipode);
        assert_eq!(t.field_order, 1);
    }

    #[test]
    fn sweedler_antipode_and_square() {
        let h = sweedler();
        let x = h.basis(2);
        let gx = h.basis(3);
        assert_eq!(h.antipode(&x), gx.scale(&CycScalar::from_int(-1)));
        let s2 = h.antipode_squared();
        assert_eq!(h.apply(&s2, &x), x.scale(&CycScalar::from_int(-1)));
        assert_eq!(h.apply(&s2, &h.basis(1)), h.basis(1));
    }

    #[test]
    fn taft_requires_primitive_root() {
        assert!(matches!(taft(3, &CycScalar::one()), Err(Error::NotPrimitiveRoot(3))));
        assert!(taft(4, &CycScalar::from_int(-1)).is_err());
        let t9 = taft(3, &CycScalar::zeta(3, 1)).unwrap();
        assert_eq!(t9.dim, 9);
        assert_eq!(t9.field_order, 3);
        assert_eq!(t9.antipode_squared().multiplicative_order(20), Some(3));
    }

    #[test]
    fn s3_group_algebra_is_noncommutative_and_cocommutative() {
        let h = group_algebra(&Group::symmetric3());
        let n = h.dim;
        assert!((0..n).any(|i| (0..n).any(|j| h.mul_basis(i, j) != h.mul_basis(j, i))));
        assert!((0..n).all(|k| h.comult(&h.basis(k)) == h.comult(&h.basis(k)).flip()));
    }
}
