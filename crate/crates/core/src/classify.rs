//! Canonical equivalence-class labels, representative lists and class counts.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::invariants::{
    class2_witness, fst_ram_type, mu_squared, omega, quad_pair, subclass, theta, to_fst,
    FstParams, Subclass,
};
use crate::poly::Poly;
use crate::projline::{all_points, Moebius, ProjPoint};
use crate::ramify::RamType;
use crate::ratfun::{CoarseClass, RatFun};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ClassLabel {
    ISep,
    IInsep,
    /// `(X³ + t)/X` with `t` in the cube transversal.
    IIA(FieldElem),
    /// `(X³ + X² + t)/X`.
    IIB(FieldElem),
    /// Keyed by θ.
    IIIa(FieldElem),
    /// Keyed by μ².
    IIIb(FieldElem),
    /// The θ = 27 classes of characteristic ≥ 5, keyed by ramification type.
    IIIWild27(RamType),
    /// Characteristic 2, keyed by θ.
    IIIEvenTheta(FieldElem),
    /// The single wild class of characteristic 3.
    IIIP3d,
}

impl ClassLabel {
    pub fn coarse(&self) -> CoarseClass {
        match self {
            ClassLabel::ISep | ClassLabel::IInsep => CoarseClass::I,
            ClassLabel::IIA(_) | ClassLabel::IIB(_) => CoarseClass::II,
            _ => CoarseClass::III,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ClassLabel::ISep => "I-sep",
            ClassLabel::IInsep => "I-insep",
            ClassLabel::IIA(_) => "II-A",
            ClassLabel::IIB(_) => "II-B",
            ClassLabel::IIIa(_) => "III-a",
            ClassLabel::IIIb(_) => "III-b",
            ClassLabel::IIIWild27(_) => "III-wild27",
            ClassLabel::IIIEvenTheta(_) => "III-evenθ",
            ClassLabel::IIIP3d => "III-p3d",
        }
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        let e = |x: &FieldElem| ctx.format_elem(*x);
        match self {
            ClassLabel::IIA(t) | ClassLabel::IIB(t) => format!("{}(t={})", self.kind(), e(t)),
            ClassLabel::IIIa(x) | ClassLabel::IIIEvenTheta(x) => {
                format!("{}(θ={})", self.kind(), e(x))
            }
            ClassLabel::IIIb(m) => format!("{}(μ²={})", self.kind(), e(m)),
            ClassLabel::IIIWild27(rt) => format!("{}{}", self.kind(), rt),
            _ => self.kind().to_string(),
        }
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> Value {
        let e = |x: &FieldElem| ctx.format_elem(*x);
        match self {
            ClassLabel::IIA(t) | ClassLabel::IIB(t) => json!({"kind": self.kind(), "t": e(t)}),
            ClassLabel::IIIa(x) | ClassLabel::IIIEvenTheta(x) => {
                json!({"kind": self.kind(), "theta": e(x)})
            }
            ClassLabel::IIIb(m) => json!({"kind": self.kind(), "mu2": e(m)}),
            ClassLabel::IIIWild27(rt) => json!({"kind": self.kind(), "ram": rt.to_string()}),
            _ => json!({"kind": self.kind()}),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::IIA(x)
            | ClassLabel::IIB(x)
            | ClassLabel::IIIa(x)
            | ClassLabel::IIIb(x)
            | ClassLabel::IIIEvenTheta(x) => write!(f, "{}(#{})", self.kind(), x.index()),
            ClassLabel::IIIWild27(rt) => write!(f, "{}{}", self.kind(), rt),
            _ => f.write_str(self.kind()),
        }
    }
}

pub fn classify(ctx: &FieldCtx, f: &RatFun) -> Result<ClassLabel> {
    match f.coarse_class(ctx)? {
        CoarseClass::I => Ok(if f.is_separable(ctx) {
            ClassLabel::ISep
        } else {
            ClassLabel::IInsep
        }),
        CoarseClass::II => class2_canonical(ctx, f),
        CoarseClass::III => {
            let sp = to_fst(ctx, f)?;
            class3_label(ctx, sp)
        }
    }
}

/// Label of `f_{s,t}` for a Class III point of Ω.
pub fn class3_label(ctx: &FieldCtx, sp: FstParams) -> Result<ClassLabel> {
    if ctx.p() == 2 {
        if class2_witness(ctx, sp).is_some() {
            return Err(Error::WrongClass("f_{s,t} lies in Class II".into()));
        }
        return Ok(ClassLabel::IIIEvenTheta(theta(ctx, sp)));
    }
    match subclass(ctx, sp) {
        Subclass::IIEscape => Err(Error::WrongClass("f_{s,t} lies in Class II".into())),
        Subclass::IIIa => Ok(ClassLabel::IIIa(theta(ctx, sp))),
        Subclass::IIIb => Ok(ClassLabel::IIIb(mu_squared(ctx, &quad_pair(ctx, sp)?)?)),
        Subclass::IIIc | Subclass::IIId if ctx.p() == 3 => Ok(ClassLabel::IIIP3d),
        Subclass::IIIc | Subclass::IIId => Ok(ClassLabel::IIIWild27(fst_ram_type(ctx, sp)?)),
    }
}

pub fn class2_canonical(ctx: &FieldCtx, f: &RatFun) -> Result<ClassLabel> {
    let alpha = first_fiber_of_size(ctx, f, 2)?;
    class2_canonical_at(ctx, f, alpha)
}

fn first_fiber_of_size(ctx: &FieldCtx, f: &RatFun, k: usize) -> Result<ProjPoint> {
    let class = f.coarse_class(ctx)?;
    f.fibers(ctx)
        .into_iter()
        .find(|(_, v)| v.len() == k)
        .map(|(a, _)| a)
        .ok_or_else(|| Error::WrongClass(format!("no fiber of size {k} (class {class})")))
}

/// Order of vanishing of `g` at `x`.
fn zero_order(ctx: &FieldCtx, g: &RatFun, x: ProjPoint) -> usize {
    match x {
        ProjPoint::Infinity => g.den().degree().unwrap_or(0) - g.num().degree().unwrap_or(0),
        ProjPoint::Finite(a) => {
            let lin = Poly::linear(ctx, a);
            let mut n = g.num().clone();
            let mut k = 0;
            while let Ok((qq, r)) = n.divrem(ctx, &lin) {
                if !r.is_zero() || n.is_zero() {
                    break;
                }
                n = qq;
                k += 1;
            }
            k
        }
    }
}

/// The Class II reduction to `(X³ + sX² + t)/X` starting from the size-2
/// fiber over `alpha`.
pub fn class2_canonical_at(ctx: &FieldCtx, f: &RatFun, alpha: ProjPoint) -> Result<ClassLabel> {
    let (s, t) = class2_normal_form(ctx, f, alpha)?;
    if s.is_zero() {
        let c = ctx.cube_class_rep(t).expect("t ≠ 0");
        Ok(ClassLabel::IIA(c))
    } else {
        Ok(ClassLabel::IIB(ctx.div(t, ctx.powu(s, 3)).expect("s ≠ 0")))
    }
}

/// `(s, t)` with `f ~ (X³ + sX² + t)/X`.
pub fn class2_normal_form(
    ctx: &FieldCtx,
    f: &RatFun,
    alpha: ProjPoint,
) -> Result<(FieldElem, FieldElem)> {
    let pre = f.fiber(ctx, alpha);
    if pre.len() != 2 {
        return Err(Error::WrongClass("the chosen value has no fiber of size 2".into()));
    }
    let to_zero = match alpha {
        ProjPoint::Finite(a) => Moebius::translation(ctx.neg(a)),
        ProjPoint::Infinity => Moebius::reciprocal(),
    };
    let g = f.post_compose(ctx, &to_zero);
    let (r, r2) = if zero_order(ctx, &g, pre[0]) == 2 {
        (pre[0], pre[1])
    } else {
        (pre[1], pre[0])
    };
    if zero_order(ctx, &g, r) != 2 || zero_order(ctx, &g, r2) != 1 {
        return Err(Error::Internal("size-2 fiber without a double point".into()));
    }
    let w = all_points(ctx)
        .into_iter()
        .find(|&x| x != r && x != r2)
        .expect("|P¹| ≥ 3");
    let h = g.pre_compose(ctx, &Moebius::from_three(ctx, r, r2, w)?);
    let inv = Moebius::reciprocal();
    let flip = Moebius::from_ints(ctx, [[-1, 1], [0, 1]])?;
    let k = h.pre_compose(ctx, &inv).post_compose(ctx, &inv).pre_compose(ctx, &flip);
    if k.den() != &Poly::x() || k.num().degree() != Some(3) {
        return Err(Error::Internal(format!(
            "Class II chain ended at {}",
            k.display(ctx)
        )));
    }
    let n = k.num().monic(ctx);
    Ok((n.coeff(2), n.coeff(0)))
}

/// `(X³ + t)/X`.
pub fn class2a_form(ctx: &FieldCtx, t: FieldElem) -> RatFun {
    RatFun::new(ctx, Poly::new(vec![t, ctx.zero(), ctx.zero(), ctx.one()]), Poly::x())
        .expect("t ≠ 0")
}

/// `(X³ + X² + t)/X`.
pub fn class2b_form(ctx: &FieldCtx, t: FieldElem) -> RatFun {
    RatFun::new(ctx, Poly::new(vec![t, ctx.zero(), ctx.one(), ctx.one()]), Poly::x())
        .expect("t ≠ 0")
}

fn nonsquare(ctx: &FieldCtx, x: FieldElem) -> bool {
    !x.is_zero() && !ctx.is_square(x).expect("nonzero")
}

/// Class I representatives: one, or two when `q ≡ 3 (mod 6)`.
pub fn class1_representatives(ctx: &FieldCtx) -> Result<Vec<RatFun>> {
    let q = ctx.q();
    let x3 = Poly::monomial(ctx.one(), 3);
    let mut out = Vec::new();
    match q % 6 {
        1 => {
            let b = ctx
                .nonzero_elements()
                .find(|&b| nonsquare(ctx, ctx.neg(b)))
                .expect("nonsquares exist");
            let a = ctx.div(ctx.from_int(9), b).expect("b ≠ 0");
            let num = Poly::new(vec![ctx.zero(), a, ctx.zero(), ctx.one()]);
            let den = Poly::new(vec![ctx.one(), ctx.zero(), b]);
            out.push(RatFun::new(ctx, num, den)?);
        }
        2 | 5 => out.push(RatFun::from_poly(ctx, x3)?),
        3 => {
            out.push(RatFun::from_poly(ctx, x3.clone())?);
            let a = ctx
                .nonzero_elements()
                .find(|&a| nonsquare(ctx, ctx.neg(a)))
                .expect("nonsquares exist");
            out.push(RatFun::from_poly(ctx, x3.add(ctx, &Poly::monomial(a, 1)))?);
        }
        _ => {
            let b0 = ctx
                .nonzero_elements()
                .find(|&b| ctx.trace_q_over_2(b) == Ok(1))
                .expect("trace-one elements exist");
            let ib = ctx.inv(b0).expect("b₀ ≠ 0");
            let a1 = ctx.add(b0, ib);
            let a2 = ctx.add(ctx.one(), ib);
            let num = Poly::new(vec![ctx.zero(), a1, a2, ctx.one()]);
            let den = Poly::new(vec![b0, ctx.one(), ctx.one()]);
            out.push(RatFun::new(ctx, num, den)?);
        }
    }
    Ok(out)
}

/// What a scan of Ω is looking for.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Target {
    Theta(FieldElem),
    Mu2(FieldElem),
}

/// The scan-least Class III point of Ω carrying each wanted key.
fn scan_omega(ctx: &FieldCtx, wanted: &[Target]) -> BTreeMap<Target, FstParams> {
    let pts = omega(ctx);
    let key = |sp: FstParams| -> Option<Target> {
        if ctx.p() == 2 {
            return class2_witness(ctx, sp)
                .is_none()
                .then(|| Target::Theta(theta(ctx, sp)));
        }
        match subclass(ctx, sp) {
            Subclass::IIIa => Some(Target::Theta(theta(ctx, sp))),
            Subclass::IIIb => quad_pair(ctx, sp)
                .ok()
                .and_then(|qp| mu_squared(ctx, &qp).ok())
                .map(Target::Mu2),
            _ => None,
        }
    };
    let found: Vec<(Target, FstParams)> = pts
        .par_chunks(256)
        .flat_map_iter(|chunk| {
            let mut local: BTreeMap<Target, FstParams> = BTreeMap::new();
            for &sp in chunk {
                if let Some(k) = key(sp) {
                    if wanted.contains(&k) {
                        local.entry(k).or_insert(sp);
                    }
                }
            }
            local.into_iter()
        })
        .collect();
    let mut out: BTreeMap<Target, FstParams> = BTreeMap::new();
    for (k, sp) in found {
        out.entry(k).and_modify(|v| *v = (*v).min(sp)).or_insert(sp);
    }
    out
}

/// Class III representatives as `f_{s,t}` parameter points.
pub fn class3_representatives(ctx: &FieldCtx) -> Result<Vec<(ClassLabel, FstParams)>> {
    let c = |k| ctx.from_int(k);
    let mut out = Vec::new();
    let missing = |what: String| Error::Internal(format!("no Ω witness for {what}"));
    if ctx.p() == 2 {
        let wanted: Vec<Target> = ctx.nonzero_elements().map(Target::Theta).collect();
        let hits = scan_omega(ctx, &wanted);
        for th in ctx.nonzero_elements() {
            let sp = *hits
                .get(&Target::Theta(th))
                .ok_or_else(|| missing(format!("θ = {}", ctx.format_elem(th))))?;
            out.push((ClassLabel::IIIEvenTheta(th), sp));
        }
        return Ok(out);
    }
    let nonsq: Vec<FieldElem> = ctx.nonzero_elements().filter(|&x| nonsquare(ctx, x)).collect();
    let mu2s: Vec<FieldElem> = ctx
        .nonzero_elements()
        .filter(|&x| ctx.is_square(x) == Ok(true) && x != c(1) && x != c(9))
        .collect();
    let mut wanted: Vec<Target> = nonsq.iter().map(|&a| Target::Theta(ctx.add(c(27), a))).collect();
    wanted.extend(mu2s.iter().map(|&b| Target::Mu2(b)));
    let hits = scan_omega(ctx, &wanted);
    for &a in &nonsq {
        let th = ctx.add(c(27), a);
        let sp = *hits
            .get(&Target::Theta(th))
            .ok_or_else(|| missing(format!("θ = {}", ctx.format_elem(th))))?;
        out.push((ClassLabel::IIIa(th), sp));
    }
    for &b in &mu2s {
        let sp = *hits
            .get(&Target::Mu2(b))
            .ok_or_else(|| missing(format!("μ² = {}", ctx.format_elem(b))))?;
        out.push((ClassLabel::IIIb(b), sp));
    }
    if ctx.p() == 3 {
        let sp = FstParams::from_ints(ctx, 0, 1)?;
        out.push((ClassLabel::IIIP3d, sp));
    } else {
        let u = ctx
            .elements()
            .find(|&u| nonsquare(ctx, ctx.add(ctx.sub(c(1), u), ctx.square(u))))
            .ok_or_else(|| missing("γ_u".into()))?;
        let gamma = FstParams::new(
            ctx,
            ctx.mul(c(3), ctx.mul(u, ctx.sub(u, c(1)))),
            ctx.neg(ctx.powu(u, 3)),
        )?;
        let special = FstParams::from_ints(ctx, -3, 1)?;
        for sp in [gamma, special] {
            out.push((ClassLabel::IIIWild27(fst_ram_type(ctx, sp)?), sp));
        }
    }
    Ok(out)
}

/// One representative per equivalence class, labelled, in class order.
pub fn representatives(ctx: &FieldCtx) -> Result<Vec<(ClassLabel, RatFun)>> {
    let mut out = Vec::new();
    for f in class1_representatives(ctx)? {
        out.push((classify(ctx, &f)?, f));
    }
    for t in ctx.cube_transversal() {
        out.push((ClassLabel::IIA(t), class2a_form(ctx, t)));
    }
    for t in ctx.nonzero_elements() {
        out.push((ClassLabel::IIB(t), class2b_form(ctx, t)));
    }
    for (label, sp) in class3_representatives(ctx)? {
        out.push((label, sp.ratfun(ctx)));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Counts {
    pub n_i: u64,
    pub n_ii: u64,
    pub n_iii: u64,
    pub total: u64,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N_I={} N_II={} N_III={} N={}",
            self.n_i, self.n_ii, self.n_iii, self.total
        )
    }
}

/// Closed-form class counts.
pub fn counts(ctx: &FieldCtx) -> Counts {
    let q = ctx.q() as u64;
    let n_i = if q % 6 == 3 { 2 } else { 1 };
    let n_ii = if q % 3 == 1 { q + 2 } else { q };
    let n_iii = q - 1;
    Counts {
        n_i,
        n_ii,
        n_iii,
        total: n_i + n_ii + n_iii,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::enumerate_pgl;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn field(p: u64, n: usize) -> FieldCtx {
        FieldCtx::new(p, n, None).unwrap()
    }

    #[test]
    fn class_one_examples() {
        let f5 = fp(5);
        let x3 = RatFun::from_ints(&f5, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(classify(&f5, &x3).unwrap(), ClassLabel::ISep);
        let f9 = field(3, 2);
        let x3 = RatFun::from_ints(&f9, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(classify(&f9, &x3).unwrap(), ClassLabel::IInsep);
    }

    #[test]
    fn class_two_examples() {
        let f7 = fp(7);
        for t in f7.nonzero_elements() {
            assert_eq!(classify(&f7, &class2b_form(&f7, t)).unwrap(), ClassLabel::IIB(t));
            let c = f7.cube_class_rep(t).unwrap();
            assert_eq!(classify(&f7, &class2a_form(&f7, t)).unwrap(), ClassLabel::IIA(c));
        }
        let cube = f7.from_int(6);
        assert_eq!(classify(&f7, &class2a_form(&f7, cube)).unwrap(), ClassLabel::IIA(f7.one()));
    }

    #[test]
    fn even_table_row() {
        for n in [2, 3, 4] {
            let ctx = field(2, n);
            for c in ctx.elements().skip(2) {
                let num = Poly::new(vec![c, ctx.zero(), ctx.zero(), ctx.one()]);
                let den = Poly::new(vec![c, ctx.one()]);
                let f = RatFun::new(&ctx, num, den).unwrap();
                let c1 = ctx.add(ctx.one(), c);
                let t = ctx.square(ctx.div(c1, c).unwrap());
                assert_eq!(classify(&ctx, &f).unwrap(), ClassLabel::IIB(t));
                if n == 2 {
                    assert_eq!(t, ctx.inv(ctx.square(c1)).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_two_is_choice_free() {
        for ctx in [fp(5), fp(7), field(2, 2), field(3, 2)] {
            let pgl = enumerate_pgl(&ctx);
            for t in ctx.nonzero_elements() {
                for base in [class2a_form(&ctx, t), class2b_form(&ctx, t)] {
                    let want = classify(&ctx, &base).unwrap();
                    for (i, phi) in pgl.iter().enumerate().step_by(5) {
                        let f = base.transform(&ctx, &pgl[(3 * i + 1) % pgl.len()], phi);
                        for (alpha, pre) in f.fibers(&ctx) {
                            if pre.len() == 2 {
                                assert_eq!(class2_canonical_at(&ctx, &f, alpha).unwrap(), want);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wild_example() {
        let f5 = fp(5);
        let sp = FstParams::from_ints(&f5, -3, 1).unwrap();
        assert_eq!(
            classify(&f5, &sp.ratfun(&f5)).unwrap(),
            ClassLabel::IIIWild27(RamType::parse("3/2,3/2").unwrap())
        );
    }

    #[test]
    fn count_examples() {
        let c = |p, n| counts(&field(p, n));
        let t = |c: Counts| (c.n_i, c.n_ii, c.n_iii, c.total);
        assert_eq!(t(c(7, 1)), (1, 9, 6, 16));
        assert_eq!(t(c(3, 2)), (2, 9, 8, 19));
        assert_eq!(t(c(2, 2)), (1, 6, 3, 10));
        assert_eq!(c(7, 1).to_string(), "N_I=1 N_II=9 N_III=6 N=16");
    }

    #[test]
    fn representative_census() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4), (5, 2), (3, 3)] {
            let ctx = field(p, n);
            let reps = representatives(&ctx).unwrap();
            assert_eq!(reps.len() as u64, counts(&ctx).total, "q = {}", ctx.q());
            let mut labels: Vec<&ClassLabel> = reps.iter().map(|(l, _)| l).collect();
            labels.sort();
            labels.dedup();
            assert_eq!(labels.len(), reps.len());
            for (label, f) in &reps {
                assert_eq!(&classify(&ctx, f).unwrap(), label, "q = {}", ctx.q());
            }
        }
        assert_eq!(representatives(&field(3, 3)).unwrap().len(), 55);
        assert_eq!(representatives(&field(5, 2)).unwrap().len(), 52);
        assert_eq!(representatives(&fp(5)).unwrap().len(), 10);
    }

    #[test]
    fn label_is_invariant_under_random_transforms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in [fp(5), fp(7), field(3, 2), field(2, 3)] {
            let pgl = enumerate_pgl(&ctx);
            let q = ctx.q();
            let mut done = 0;
            while done < 150 {
                let num: Vec<FieldElem> = (0..4).map(|_| ctx.elem(rng.gen_range(0..q))).collect();
                let den: Vec<FieldElem> = (0..4).map(|_| ctx.elem(rng.gen_range(0..q))).collect();
                let Ok(f) = RatFun::new(&ctx, Poly::new(num), Poly::new(den)) else {
                    continue;
                };
                if f.degree() != 3 {
                    continue;
                }
                let psi = &pgl[rng.gen_range(0..pgl.len())];
                let phi = &pgl[rng.gen_range(0..pgl.len())];
                assert_eq!(
                    classify(&ctx, &f).unwrap(),
                    classify(&ctx, &f.transform(&ctx, psi, phi)).unwrap()
                );
                done += 1;
            }
        }
    }

    #[test]
    fn degree_checked() {
        let f5 = fp(5);
        let f = RatFun::from_ints(&f5, &[0, 1], &[1]).unwrap();
        assert_eq!(classify(&f5, &f), Err(Error::WrongDegree(1)));
    }
}
