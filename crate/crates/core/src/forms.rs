//! Binary cubic forms a x^3 + b x^2 y + c x y^2 + d y^3 over a coefficient
//! ring: discriminant, GL2 action, root counting and splitting types modulo
//! a prime, the Levi-Delone-Faddeev ring, maximality at a prime, and the
//! discriminant-reducing maximalization loop.

use std::sync::Arc;

use serde::ser::SerializeSeq;

use crate::error::{Error, Result};
use crate::ffpoly::fq::{Fq, FqElem};
use crate::ffpoly::poly::Poly;
use crate::ffpoly::residue::{RPoly, ResidueRing};
use crate::ring::{PolyRing, Ring};

/// Binary cubic form with coefficients in some ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CubicForm<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E> CubicForm<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        CubicForm { a, b, c, d }
    }

    pub fn coeffs(&self) -> [&E; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl CubicForm<Poly> {
    pub fn from_ints(fq: &Fq, a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Self {
        CubicForm::new(
            Poly::from_ints(fq, a),
            Poly::from_ints(fq, b),
            Poly::from_ints(fq, c),
            Poly::from_ints(fq, d),
        )
    }

    /// Largest coefficient degree (-1 for the zero form).
    pub fn max_deg(&self) -> i64 {
        self.coeffs().iter().map(|p| p.degi()).max().unwrap()
    }
}

impl serde::Serialize for CubicForm<Poly> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for p in self.coeffs() {
            seq.serialize_element(&p.c)?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for CubicForm<Poly> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<Vec<FqElem>> = serde::Deserialize::deserialize(d)?;
        if v.len() != 4 {
            return Err(serde::de::Error::custom("expected [a,b,c,d]"));
        }
        let mut it = v.into_iter().map(Poly::from_coeffs);
        Ok(CubicForm::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }
}

/// Disc(f) = b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d.
pub fn discriminant<R: Ring>(ring: &R, f: &CubicForm<R::Elem>) -> R::Elem {
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let b2c2 = ring.mul(&ring.mul(b, b), &ring.mul(c, c));
    let ac3 = ring.mul(a, &ring.mul(c, &ring.mul(c, c)));
    let b3d = ring.mul(&ring.mul(b, &ring.mul(b, b)), d);
    let a2d2 = ring.mul(&ring.mul(a, a), &ring.mul(d, d));
    let abcd = ring.mul(&ring.mul(a, b), &ring.mul(c, d));
    let mut acc = b2c2;
    acc = ring.sub(&acc, &ring.scale_int(4, &ac3));
    acc = ring.sub(&acc, &ring.scale_int(4, &b3d));
    acc = ring.sub(&acc, &ring.scale_int(27, &a2d2));
    ring.add(&acc, &ring.scale_int(18, &abcd))
}

/// Evaluate f(x, y).
pub fn eval_form<R: Ring>(ring: &R, f: &CubicForm<R::Elem>, x: &R::Elem, y: &R::Elem) -> R::Elem {
    let x2 = ring.mul(x, x);
    let y2 = ring.mul(y, y);
    let mut acc = ring.mul(&f.a, &ring.mul(&x2, x));
    acc = ring.add(&acc, &ring.mul(&f.b, &ring.mul(&x2, y)));
    acc = ring.add(&acc, &ring.mul(&f.c, &ring.mul(x, &y2)));
    ring.add(&acc, &ring.mul(&f.d, &ring.mul(&y2, y)))
}

/// 2x2 matrix over the coefficient ring with cached determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Elem<E> {
    pub m: [[E; 2]; 2],
    pub det: E,
}

impl<E: Clone> Gl2Elem<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, m: [[E; 2]; 2]) -> Self {
        let det = ring.sub(&ring.mul(&m[0][0], &m[1][1]), &ring.mul(&m[0][1], &m[1][0]));
        Gl2Elem { m, det }
    }

    pub fn compose<R: Ring<Elem = E>>(ring: &R, g: &Self, h: &Self) -> Self {
        let mut m: Vec<E> = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                let x = ring.add(
                    &ring.mul(&g.m[i][0], &h.m[0][j]),
                    &ring.mul(&g.m[i][1], &h.m[1][j]),
                );
                m.push(x);
            }
        }
        let m = [[m[0].clone(), m[1].clone()], [m[2].clone(), m[3].clone()]];
        Gl2Elem::new(ring, m)
    }
}

/// The twisted action (g f)(x, y) = det(g)^(-1) f((x, y) g).
///
/// The determinant need not be a unit as long as every coefficient of
/// f((x,y)g) is exactly divisible by it (the spec's diag(t, 1) example);
/// otherwise the action leaves the ring and is rejected.
pub fn gl2_act<R: Ring>(
    ring: &R,
    g: &Gl2Elem<R::Elem>,
    f: &CubicForm<R::Elem>,
) -> Result<CubicForm<R::Elem>> {
    if ring.is_zero(&g.det) {
        return Err(Error::BadDeterminant);
    }
    // (x, y) g = (p x + r y, s x + t y) with rows (p, s) over (r, t).
    let (p, s) = (&g.m[0][0], &g.m[0][1]);
    let (r, t) = (&g.m[1][0], &g.m[1][1]);
    // Substitute into f and expand; collect coefficients of x^3, x^2 y, ...
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let m3 = |u: &R::Elem, v: &R::Elem, w: &R::Elem| ring.mul(u, &ring.mul(v, w));
    // New a = f(p, s).
    let na = {
        let mut acc = m3(a, p, &ring.mul(p, p));
        acc = ring.add(&acc, &m3(b, p, &ring.mul(p, s)));
        acc = ring.add(&acc, &m3(c, p, &ring.mul(s, s)));
        ring.add(&acc, &m3(d, s, &ring.mul(s, s)))
    };
    // New d = f(r, t).
    let nd = {
        let mut acc = m3(a, r, &ring.mul(r, r));
        acc = ring.add(&acc, &m3(b, r, &ring.mul(r, t)));
        acc = ring.add(&acc, &m3(c, r, &ring.mul(t, t)));
        ring.add(&acc, &m3(d, t, &ring.mul(t, t)))
    };
    // New b: coefficient of x^2 y.
    let nb = {
        let mut acc = ring.scale_int(3, &m3(a, &ring.mul(p, p), r));
        let t1 = ring.add(
            &ring.scale_int(2, &ring.mul(p, &ring.mul(s, r))),
            &ring.mul(&ring.mul(p, p), t),
        );
        acc = ring.add(&acc, &ring.mul(b, &t1));
        let t2 = ring.add(
            &ring.mul(&ring.mul(s, s), r),
            &ring.scale_int(2, &ring.mul(p, &ring.mul(s, t))),
        );
        acc = ring.add(&acc, &ring.mul(c, &t2));
        ring.add(&acc, &ring.scale_int(3, &m3(d, &ring.mul(s, s), t)))
    };
    // New c: coefficient of x y^2.
    let nc = {
        let mut acc = ring.scale_int(3, &m3(a, p, &ring.mul(r, r)));
        let t1 = ring.add(
            &ring.mul(&ring.mul(r, r), s),
            &ring.scale_int(2, &ring.mul(p, &ring.mul(r, t))),
        );
        acc = ring.add(&acc, &ring.mul(b, &t1));
        let t2 = ring.add(
            &ring.mul(&ring.mul(t, t), p),
            &ring.scale_int(2, &ring.mul(s, &ring.mul(r, t))),
        );
        acc = ring.add(&acc, &ring.mul(c, &t2));
        ring.add(&acc, &ring.scale_int(3, &m3(d, &ring.mul(t, t), s)))
    };
    let mut out = Vec::with_capacity(4);
    for coeff in [na, nb, nc, nd] {
        match ring.div_exact(&coeff, &g.det) {
            Some(x) => out.push(x),
            None => return Err(Error::NonIntegralAction),
        }
    }
    let mut it = out.into_iter();
    Ok(CubicForm::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ))
}

// --- splitting types --------------------------------------------------------

/// Factorization shape of a form modulo a prime (or of a prime in a cubic
/// field): five nonzero orbits plus the zero form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SplittingType {
    /// Three distinct roots in P^1.
    Split111,
    /// One root and an irreducible quadratic factor.
    Split21,
    /// Irreducible cubic.
    Split3,
    /// Double root plus a distinct simple root.
    Ram121,
    /// Triple root.
    Ram13,
    /// The zero form.
    Zero,
}

impl SplittingType {
    pub const NONZERO: [SplittingType; 5] = [
        SplittingType::Split111,
        SplittingType::Split21,
        SplittingType::Split3,
        SplittingType::Ram121,
        SplittingType::Ram13,
    ];

    pub fn is_unramified(self) -> bool {
        matches!(
            self,
            SplittingType::Split111 | SplittingType::Split21 | SplittingType::Split3
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            SplittingType::Split111 => "(111)",
            SplittingType::Split21 => "(21)",
            SplittingType::Split3 => "(3)",
            SplittingType::Ram121 => "(1^21)",
            SplittingType::Ram13 => "(1^3)",
            SplittingType::Zero => "(0)",
        }
    }

    pub fn parse(s: &str) -> Option<SplittingType> {
        let s = s.trim();
        Some(match s {
            "(111)" | "111" => SplittingType::Split111,
            "(21)" | "21" => SplittingType::Split21,
            "(3)" | "3" => SplittingType::Split3,
            "(1^21)" | "1^21" | "(121)" => SplittingType::Ram121,
            "(1^3)" | "1^3" | "(13)" => SplittingType::Ram13,
            "(0)" | "0" => SplittingType::Zero,
            _ => return None,
        })
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A point of P^1(R/P): either [t : 1] or [1 : 0].
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(Poly),
    Infinity,
}

/// The form reduced modulo P, as polynomial data over the residue field.
fn dehomogenize(ring: &ResidueRing, f: &CubicForm<Poly>) -> RPoly {
    RPoly::from_coeffs(
        ring,
        vec![f.d.clone(), f.c.clone(), f.b.clone(), f.a.clone()],
    )
}

/// Roots of f mod P in P^1(R/P) with multiplicities; the zero form has every
/// point as a root (multiplicity 0 by convention here, callers use
/// [`omega_p`] for counts).
pub fn roots_p1(ring: &ResidueRing, f: &CubicForm<Poly>) -> Vec<(ProjPoint, u32)> {
    let u = dehomogenize(ring, f);
    if u.is_zero() {
        // Zero form: all of P^1, reported without multiplicities.
        let mut out: Vec<(ProjPoint, u32)> = ring
            .elements()
            .map(|t| (ProjPoint::Finite(t), 0))
            .collect();
        out.push((ProjPoint::Infinity, 0));
        return out;
    }
    let mut out = Vec::new();
    let inf_mult = 3 - u.degi() as u32;
    if inf_mult > 0 {
        out.push((ProjPoint::Infinity, inf_mult));
    }
    for (r, m) in ring.rp_roots(&u) {
        out.push((ProjPoint::Finite(r), m));
    }
    out
}

/// omega_P(f): number of distinct roots in P^1(R/P), with the zero form
/// counting the whole projective line |P| + 1.
pub fn omega_p(ring: &ResidueRing, f: &CubicForm<Poly>) -> u64 {
    let u = dehomogenize(ring, f);
    if u.is_zero() {
        return ring.size() as u64 + 1;
    }
    let mut count = if u.degi() < 3 { 1 } else { 0 };
    // Distinct finite roots: deg gcd(u, x^Q - x).
    let xq = ring.rp_powmod(&ring.rp_x(), ring.size(), &u);
    let lin = ring.rp_gcd(&ring.rp_sub(&xq, &ring.rp_x()), &u);
    count += lin.degi().max(0) as u64;
    count
}

/// Splitting type of f modulo the irreducible P.
pub fn classify_mod_p(fq: &Fq, f: &CubicForm<Poly>, p: &Poly) -> SplittingType {
    let ring = ResidueRing::new(arc_fq(fq), p.clone());
    classify_in_residue(&ring, f)
}

fn arc_fq(fq: &Fq) -> Arc<Fq> {
    Fq::new(fq.q).expect("context exists")
}

/// Same as [`classify_mod_p`] with a prebuilt residue ring (hot path).
pub fn classify_in_residue(ring: &ResidueRing, f: &CubicForm<Poly>) -> SplittingType {
    let u = dehomogenize(ring, f);
    if u.is_zero() {
        return SplittingType::Zero;
    }
    let distinct = omega_p_from_dehom(ring, &u);
    // Squarefree iff the form discriminant is nonzero mod P.
    let disc = residue_discriminant(ring, f);
    if disc.is_zero() {
        // A repeated linear factor over a perfect field is rational, so the
        // distinct-root count separates the two ramified shapes.
        match distinct {
            2 => SplittingType::Ram121,
            1 => SplittingType::Ram13,
            n => unreachable!("singular cubic with {n} distinct roots"),
        }
    } else {
        match distinct {
            3 => SplittingType::Split111,
            1 => SplittingType::Split21,
            0 => SplittingType::Split3,
            n => unreachable!("separable cubic with {n} rational roots"),
        }
    }
}

fn omega_p_from_dehom(ring: &ResidueRing, u: &RPoly) -> u64 {
    let count = if u.degi() < 3 { 1u64 } else { 0 };
    let xq = ring.rp_powmod(&ring.rp_x(), ring.size(), u);
    let lin = ring.rp_gcd(&ring.rp_sub(&xq, &ring.rp_x()), u);
    count + lin.degi().max(0) as u64
}

/// Discriminant of the reduction of f, computed inside the residue ring.
fn residue_discriminant(ring: &ResidueRing, f: &CubicForm<Poly>) -> Poly {
    let fq = &*ring.fq;
    let (a, b, c, d) = (
        ring.reduce(&f.a),
        ring.reduce(&f.b),
        ring.reduce(&f.c),
        ring.reduce(&f.d),
    );
    let bc = ring.mul(&b, &c);
    let b2c2 = ring.mul(&bc, &bc);
    let ac3 = ring.mul(&a, &ring.mul(&c, &ring.mul(&c, &c)));
    let b3d = ring.mul(&ring.mul(&b, &ring.mul(&b, &b)), &d);
    let ad = ring.mul(&a, &d);
    let a2d2 = ring.mul(&ad, &ad);
    let abcd = ring.mul(&ad, &bc);
    let mut acc = b2c2;
    acc = ring.sub(&acc, &fq.p_scale(&ac3, fq.int(4)));
    acc = ring.sub(&acc, &fq.p_scale(&b3d, fq.int(4)));
    acc = ring.sub(&acc, &fq.p_scale(&a2d2, fq.int(27)));
    ring.reduce(&ring.add(&acc, &fq.p_scale(&abcd, fq.int(18))))
}

// --- the Levi-Delone-Faddeev ring -------------------------------------------

/// Cubic ring on basis <1, omega, theta> given by its multiplication table:
/// each product stored as coordinates in that basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicRing<E> {
    /// omega * theta
    pub wt: [E; 3],
    /// omega^2
    pub w2: [E; 3],
    /// theta^2
    pub t2: [E; 3],
}

/// Multiplication table attached to a form: omega*theta = -ad,
/// omega^2 = -ac - b omega + a theta, theta^2 = -bd - d omega + c theta.
pub fn ldf_ring<R: Ring>(ring: &R, f: &CubicForm<R::Elem>) -> CubicRing<R::Elem> {
    let z = ring.zero();
    let neg_ad = ring.neg(&ring.mul(&f.a, &f.d));
    CubicRing {
        wt: [neg_ad, z.clone(), z.clone()],
        w2: [
            ring.neg(&ring.mul(&f.a, &f.c)),
            ring.neg(&f.b),
            f.a.clone(),
        ],
        t2: [
            ring.neg(&ring.mul(&f.b, &f.d)),
            ring.neg(&f.d),
            f.c.clone(),
        ],
    }
}

impl<E: Clone> CubicRing<E> {
    /// Product of two elements in coordinates (x0 + x1 omega + x2 theta).
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, x: &[E; 3], y: &[E; 3]) -> [E; 3] {
        let mut out = [ring.zero(), ring.zero(), ring.zero()];
        // 1 * components.
        for i in 0..3 {
            out[i] = ring.add(&out[i], &ring.mul(&x[0], &y[i]));
        }
        out[1] = ring.add(&out[1], &ring.mul(&x[1], &y[0]));
        out[2] = ring.add(&out[2], &ring.mul(&x[2], &y[0]));
        // omega^2, theta^2, omega*theta contributions.
        let ww = ring.mul(&x[1], &y[1]);
        let tt = ring.mul(&x[2], &y[2]);
        let wt = ring.add(&ring.mul(&x[1], &y[2]), &ring.mul(&x[2], &y[1]));
        for i in 0..3 {
            out[i] = ring.add(&out[i], &ring.mul(&ww, &self.w2[i]));
            out[i] = ring.add(&out[i], &ring.mul(&tt, &self.t2[i]));
            out[i] = ring.add(&out[i], &ring.mul(&wt, &self.wt[i]));
        }
        out
    }

    /// Trace of multiplication by an element.
    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R, x: &[E; 3]) -> E {
        // Tr(1) = 3, Tr(omega) = w2[1] (the omega-coordinate of omega^2)
        // plus contribution of wt; computed from the regular representation.
        let e0 = [ring.one(), ring.zero(), ring.zero()];
        let e1 = [ring.zero(), ring.one(), ring.zero()];
        let e2 = [ring.zero(), ring.zero(), ring.one()];
        let c0 = self.mul(ring, x, &e0);
        let c1 = self.mul(ring, x, &e1);
        let c2 = self.mul(ring, x, &e2);
        ring.add(&c0[0], &ring.add(&c1[1], &c2[2]))
    }

    /// Determinant of the trace form Tr(e_i e_j): the ring discriminant.
    pub fn trace_form_disc<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let basis = [
            [ring.one(), ring.zero(), ring.zero()],
            [ring.zero(), ring.one(), ring.zero()],
            [ring.zero(), ring.zero(), ring.one()],
        ];
        let mut m: Vec<Vec<E>> = Vec::with_capacity(3);
        for ei in &basis {
            let mut row = Vec::with_capacity(3);
            for ej in &basis {
                let prod = self.mul(ring, ei, ej);
                row.push(self.trace(ring, &prod));
            }
            m.push(row);
        }
        det3(ring, &m)
    }
}

fn det3<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let term = |i: usize, j: usize, k: usize| {
        ring.mul(&m[0][i], &ring.mul(&m[1][j], &m[2][k]))
    };
    let mut acc = term(0, 1, 2);
    acc = ring.add(&acc, &term(1, 2, 0));
    acc = ring.add(&acc, &term(2, 0, 1));
    acc = ring.sub(&acc, &term(2, 1, 0));
    acc = ring.sub(&acc, &term(1, 0, 2));
    ring.sub(&acc, &term(0, 2, 1))
}

// --- maximality --------------------------------------------------------------

/// Witness of nonmaximality at a prime.
#[derive(Clone, Debug)]
pub enum FailingRoot {
    /// The form vanishes identically mod P; the ring sits inside the ring of
    /// f / P with index P^2.
    FormDivisible,
    /// A repeated root passing the mod-P^2 lifting criterion.
    Root(ProjPoint),
}

/// Whether the cubic ring of `f` is maximal at the irreducible `P`.
///
/// Nonmaximal iff f = 0 mod P, or some repeated root alpha of f mod P
/// satisfies, after a GL2(R) move sending alpha to [0:1], P | c and P^2 | d.
pub fn is_maximal_at(fq: &Arc<Fq>, f: &CubicForm<Poly>, p: &Poly) -> Result<bool> {
    let pring = PolyRing(fq.clone());
    if discriminant(&pring, f).is_zero() {
        return Err(Error::SingularForm);
    }
    Ok(failing_root_at(fq, f, p).is_none())
}

/// The nonmaximality witness at P, if any.
pub fn failing_root_at(fq: &Arc<Fq>, f: &CubicForm<Poly>, p: &Poly) -> Option<FailingRoot> {
    let ring = ResidueRing::new(fq.clone(), p.clone());
    let u = dehomogenize(&ring, f);
    if u.is_zero() {
        return Some(FailingRoot::FormDivisible);
    }
    let p2ring = ResidueRing::new(fq.clone(), fq.p_mul(p, p));
    // Repeated roots: [1:0] when the dehomogenization drops degree by >= 2,
    // finite ones from the repeated part of u.  For p >= 5 a vanishing
    // derivative forces u constant, so gcd(u, u') captures them all.
    let mut candidates: Vec<ProjPoint> = Vec::new();
    if u.degi() <= 1 {
        candidates.push(ProjPoint::Infinity);
    }
    let du = ring.rp_derivative(&u);
    if !du.is_zero() {
        let rep = ring.rp_gcd(&u, &du);
        if rep.degi() >= 1 {
            for (r, _) in ring.rp_roots(&rep) {
                candidates.push(ProjPoint::Finite(r));
            }
        }
    }
    for point in candidates {
        if double_root_lifts(fq, &p2ring, f, p, &point) {
            return Some(FailingRoot::Root(point));
        }
    }
    None
}

/// The [0:1]-criterion after moving `point` there: P | c' and P^2 | d'.
fn double_root_lifts(
    fq: &Fq,
    p2ring: &ResidueRing,
    f: &CubicForm<Poly>,
    p: &Poly,
    point: &ProjPoint,
) -> bool {
    let (cp, dp) = match point {
        ProjPoint::Infinity => (fq.p_neg(&f.b), fq.p_neg(&f.a)),
        ProjPoint::Finite(t0) => {
            // Shear x -> x + t0 y: c' = 3 a t0^2 + 2 b t0 + c, d' = f(t0, 1).
            let t = t0;
            let t2 = p2ring.mul(t, t);
            let mut cp = p2ring.mul(&Poly::constant(fq.int(3)), &p2ring.mul(&f.a, &t2));
            cp = p2ring.add(&cp, &p2ring.mul(&Poly::constant(fq.int(2)), &p2ring.mul(&f.b, t)));
            cp = p2ring.add(&cp, &f.c);
            let mut dp = p2ring.mul(&f.a, &p2ring.mul(&t2, t));
            dp = p2ring.add(&dp, &p2ring.mul(&f.b, &t2));
            dp = p2ring.add(&dp, &p2ring.mul(&f.c, t));
            dp = p2ring.add(&dp, &f.d);
            (cp, dp)
        }
    };
    let cp_div = fq.p_rem(&p2ring.reduce(&cp), p).is_zero();
    let dp_div = p2ring.reduce(&dp).is_zero();
    cp_div && dp_div
}

/// Maximality of a residue form modulo P^2 (all lifts share the answer).
/// `false` also for forms vanishing mod P.
pub fn residue_form_maximal(fq: &Arc<Fq>, f: &CubicForm<Poly>, p: &Poly) -> bool {
    let ring = ResidueRing::new(fq.clone(), p.clone());
    let u = dehomogenize(&ring, f);
    if u.is_zero() {
        return false;
    }
    let p2ring = ResidueRing::new(fq.clone(), fq.p_mul(p, p));
    let mut candidates: Vec<ProjPoint> = Vec::new();
    if u.degi() <= 1 {
        candidates.push(ProjPoint::Infinity);
    }
    let du = ring.rp_derivative(&u);
    let rep = if du.is_zero() { u.clone() } else { ring.rp_gcd(&u, &du) };
    if rep.degi() >= 1 {
        for (r, _) in ring.rp_roots(&rep) {
            candidates.push(ProjPoint::Finite(r));
        }
    }
    !candidates
        .iter()
        .any(|pt| double_root_lifts(fq, &p2ring, f, p, pt))
}

/// Repeatedly strips index factors until the form is maximal at every prime.
/// Returns the maximal form and the index, with
/// Disc(input) = index^2 * Disc(output).
pub fn maximalize(fq: &Arc<Fq>, f: &CubicForm<Poly>, seed: u64) -> Result<(CubicForm<Poly>, Poly)> {
    let pring = PolyRing(fq.clone());
    let disc = discriminant(&pring, f);
    if disc.is_zero() {
        return Err(Error::SingularForm);
    }
    let fac = fq.p_factor(&disc, seed)?;
    let mut work = f.clone();
    let mut index = Poly::one();
    for (p, mut e) in fac.factors {
        while e >= 2 {
            match failing_root_at(fq, &work, &p) {
                None => break,
                Some(FailingRoot::Root(point)) => {
                    work = strip_index_at(fq, &work, &p, &point);
                    index = fq.p_mul(&index, &p);
                    e -= 2;
                }
                Some(FailingRoot::FormDivisible) => {
                    // f = P f'; the ring is R + P * C(f') of index P^2, and
                    // Disc drops by P^4.
                    work = CubicForm::new(
                        fq.p_div_exact(&work.a, &p).expect("P | a"),
                        fq.p_div_exact(&work.b, &p).expect("P | b"),
                        fq.p_div_exact(&work.c, &p).expect("P | c"),
                        fq.p_div_exact(&work.d, &p).expect("P | d"),
                    );
                    index = fq.p_mul(&index, &fq.p_mul(&p, &p));
                    e -= 4;
                }
            }
        }
    }
    Ok((work, index))
}

/// One index-stripping step: move the failing root to [0:1], then replace
/// (a, b, c, d) by (P a, b, c / P, d / P^2), dividing Disc by P^2.
fn strip_index_at(fq: &Fq, f: &CubicForm<Poly>, p: &Poly, point: &ProjPoint) -> CubicForm<Poly> {
    let moved = match point {
        ProjPoint::Infinity => CubicForm::new(
            fq.p_neg(&f.d),
            fq.p_neg(&f.c),
            fq.p_neg(&f.b),
            fq.p_neg(&f.a),
        ),
        ProjPoint::Finite(t0) => {
            // Shear x -> x + t0 y over R.
            let t = t0;
            let three = Poly::constant(fq.int(3));
            let two = Poly::constant(fq.int(2));
            let a = f.a.clone();
            let b = fq.p_add(&fq.p_mul(&three, &fq.p_mul(&f.a, t)), &f.b);
            let c = {
                let mut acc = fq.p_mul(&three, &fq.p_mul(&f.a, &fq.p_mul(t, t)));
                acc = fq.p_add(&acc, &fq.p_mul(&two, &fq.p_mul(&f.b, t)));
                fq.p_add(&acc, &f.c)
            };
            let d = {
                let mut acc = fq.p_mul(&f.a, &fq.p_mul(t, &fq.p_mul(t, t)));
                acc = fq.p_add(&acc, &fq.p_mul(&f.b, &fq.p_mul(t, t)));
                acc = fq.p_add(&acc, &fq.p_mul(&f.c, t));
                fq.p_add(&acc, &f.d)
            };
            CubicForm::new(a, b, c, d)
        }
    };
    let c_over = fq.p_div_exact(&moved.c, p).expect("criterion guarantees P | c");
    let d_over = fq
        .p_div_exact(&moved.d, &fq.p_mul(p, p))
        .expect("criterion guarantees P^2 | d");
    CubicForm::new(fq.p_mul(&moved.a, p), moved.b, c_over, d_over)
}

// --- irreducibility and the Galois test --------------------------------------

/// Whether the form is irreducible over K = F_q(T): no root in P^1(K).
pub fn is_irreducible_over_k(fq: &Arc<Fq>, f: &CubicForm<Poly>, seed: u64) -> Result<bool> {
    let pring = PolyRing(fq.clone());
    if discriminant(&pring, f).is_zero() {
        return Err(Error::SingularForm);
    }
    if f.a.is_zero() {
        return Ok(false); // [1:0] is a root
    }
    // Monic model x^3 + b x^2 + ac x + a^2 d; rational roots lie in R.
    let b = f.b.clone();
    let ac = fq.p_mul(&f.a, &f.c);
    let a2d = fq.p_mul(&fq.p_mul(&f.a, &f.a), &f.d);
    if a2d.is_zero() {
        return Ok(false); // root x = 0, i.e. d = 0
    }
    let eval = |r: &Poly| -> Poly {
        let r2 = fq.p_mul(r, r);
        let mut acc = fq.p_mul(&r2, r);
        acc = fq.p_add(&acc, &fq.p_mul(&b, &r2));
        acc = fq.p_add(&acc, &fq.p_mul(&ac, r));
        fq.p_add(&acc, &a2d)
    };
    // Cheap filter: a reduction with no root certifies irreducibility.
    for t in 0..fq.q.min(8) {
        let p1 = Poly::from_coeffs(vec![fq.el(t), FqElem::ONE]);
        let ring = ResidueRing::new(fq.clone(), p1);
        let u = RPoly::from_coeffs(
            &ring,
            vec![a2d.clone(), ac.clone(), b.clone(), Poly::one()],
        );
        if omega_p_from_dehom(&ring, &u) == 0 && u.degi() == 3 {
            return Ok(true);
        }
    }
    // Exact root search: any root divides a^2 d.
    let fac = fq.p_factor(&a2d, seed)?;
    let mut divisors = vec![Poly::one()];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut power = d.clone();
            next.push(d.clone());
            for _ in 0..*e {
                power = fq.p_mul(&power, p);
                next.push(power.clone());
            }
        }
        divisors = next;
    }
    for d in &divisors {
        for u in fq.nonzero_elements() {
            let r = fq.p_scale(d, u);
            if eval(&r).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A maximal irreducible form is Galois (C3 closure) iff its discriminant is
/// a square in R.
pub fn is_galois(fq: &Arc<Fq>, f: &CubicForm<Poly>, seed: u64) -> Result<bool> {
    if !is_irreducible_over_k(fq, f, seed)? {
        return Err(Error::ReducibleForm);
    }
    let pring = PolyRing(fq.clone());
    let disc = discriminant(&pring, f);
    Ok(fq.p_sqrt(&disc).is_some())
}
