//! Ramification points and ramification types of separable cubic maps.
//!
//! Indices come straight from valuations in the extension field containing
//! the point, which stays correct for wild ramification in characteristic 3.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// Where a ramification point sits: `∞`, or a closed point given by its
/// monic minimal polynomial over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Locus {
    Finite(Poly),
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RamPoint {
    pub locus: Locus,
    pub degree: u32,
    pub index: u32,
}

/// Multiset of `e/d` tags; a closed point of degree `d` contributes `d` tags.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RamType(Vec<(u32, u32)>);

impl RamType {
    pub fn new(mut tags: Vec<(u32, u32)>) -> Self {
        tags.sort();
        RamType(tags)
    }

    /// `(index, degree)` pairs, sorted.
    pub fn tags(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|&(e, _)| e).collect()
    }

    pub fn has_tag(&self, e: u32, d: u32) -> bool {
        self.0.contains(&(e, d))
    }

    /// Parses `3/2,3/2` or `(3/2,3/2)`.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let tags = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                let (e, d) = t
                    .trim()
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("bad ramification tag {t:?}")))?;
                let e = e.trim().parse().map_err(|_| Error::Parse(format!("bad index {e:?}")))?;
                let d = d.trim().parse().map_err(|_| Error::Parse(format!("bad degree {d:?}")))?;
                Ok((e, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RamType::new(tags))
    }
}

impl fmt::Display for RamType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<String> = self.0.iter().map(|(e, d)| format!("{e}/{d}")).collect();
        write!(f, "({})", tags.join(","))
    }
}

/// A point of `P¹` over the degree-`m` extension: `root` lives in the big
/// field of `ctx.extension(m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtPoint {
    Finite { m: usize, root: FieldElem },
    Infinity,
}

fn multiplicity_at(ctx: &FieldCtx, f: &Poly, r: FieldElem) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::Inseparable);
    }
    let lin = Poly::linear(ctx, r);
    let mut g = f.clone();
    let mut k = 0;
    loop {
        let (qq, rem) = g.divrem(ctx, &lin)?;
        if !rem.is_zero() {
            return Ok(k);
        }
        g = qq;
        k += 1;
    }
}

/// `X^d f(1/X)`.
fn reversed(f: &Poly, d: usize) -> Poly {
    let mut c = f.coeffs().to_vec();
    c.resize(d + 1, FieldElem::ZERO);
    c.reverse();
    Poly::new(c)
}

/// Ramification index of `f` at a point, from the local valuation of
/// `f - f(r)` (or of `1/f` at a pole), after moving `∞` to `0` if needed.
pub fn ram_index_at(ctx: &FieldCtx, f: &RatFun, pt: ExtPoint) -> Result<u32> {
    if !f.is_separable(ctx) {
        return Err(Error::Inseparable);
    }
    match pt {
        ExtPoint::Finite { m, root } => {
            let ext = ctx.extension(m)?;
            let big = ext.big();
            let n = ext.embed_poly(f.num());
            let d = ext.embed_poly(f.den());
            let dr = d.eval(big, root);
            if dr.is_zero() {
                multiplicity_at(big, &d, root)
            } else {
                let c = big.div(n.eval(big, root), dr).expect("nonzero");
                multiplicity_at(big, &n.sub(big, &d.scale(big, c)), root)
            }
        }
        ExtPoint::Infinity => {
            let deg = f.degree();
            let n = reversed(f.num(), deg);
            let d = reversed(f.den(), deg);
            let z = FieldElem::ZERO;
            let d0 = d.eval(ctx, z);
            if d0.is_zero() {
                multiplicity_at(ctx, &d, z)
            } else {
                let c = ctx.div(n.eval(ctx, z), d0).expect("nonzero");
                multiplicity_at(ctx, &n.sub(ctx, &d.scale(ctx, c)), z)
            }
        }
    }
}

/// Ramification points found among the roots of `critical` (every finite
/// ramification point must be one), plus `∞`.
pub fn ram_points_from(ctx: &FieldCtx, f: &RatFun, critical: &Poly) -> Result<Vec<RamPoint>> {
    if !f.is_separable(ctx) {
        return Err(Error::Inseparable);
    }
    let mut out = Vec::new();
    if !critical.is_constant() {
        for (g, _) in critical.factor(ctx)? {
            let m = g.degree().expect("nonconstant factor");
            let (_, roots) = g.roots_in_extension(ctx, m)?;
            let root = *roots
                .first()
                .ok_or_else(|| Error::Internal("irreducible factor without roots".into()))?;
            let e = ram_index_at(ctx, f, ExtPoint::Finite { m, root })?;
            if e > 1 {
                out.push(RamPoint {
                    locus: Locus::Finite(g),
                    degree: m as u32,
                    index: e,
                });
            }
        }
    }
    let e = ram_index_at(ctx, f, ExtPoint::Infinity)?;
    if e > 1 {
        out.push(RamPoint {
            locus: Locus::Infinity,
            degree: 1,
            index: e,
        });
    }
    Ok(out)
}

pub fn ram_points(ctx: &FieldCtx, f: &RatFun) -> Result<Vec<RamPoint>> {
    ram_points_from(ctx, f, &f.wronskian(ctx))
}

pub fn type_of(points: &[RamPoint]) -> RamType {
    let mut tags = Vec::new();
    for pt in points {
        for _ in 0..pt.degree {
            tags.push((pt.index, pt.degree));
        }
    }
    RamType::new(tags)
}

/// The ramification type of a separable degree-3 map, checked against the
/// list of possible types for the characteristic.
pub fn ram_type(ctx: &FieldCtx, f: &RatFun) -> Result<RamType> {
    if f.degree() != 3 {
        return Err(Error::WrongDegree(f.degree()));
    }
    let rt = type_of(&ram_points(ctx, f)?);
    if !validate_ram_type(ctx.p(), &rt) {
        return Err(Error::Internal(format!("impossible ramification type {rt}")));
    }
    Ok(rt)
}

/// Membership in the list of possible ramification types of a separable
/// cubic in characteristic `p` (degrees are not constrained).
pub fn validate_ram_type(p: u32, rt: &RamType) -> bool {
    let mut idx = rt.indices();
    idx.sort();
    let allowed: &[&[u32]] = match p {
        2 => &[&[2], &[2, 2], &[2, 3], &[3, 3]],
        3 => &[&[2, 2, 2, 2], &[2, 3], &[3]],
        _ => &[&[2, 2, 2, 2], &[2, 2, 3], &[3, 3]],
    };
    allowed.contains(&idx.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::{enumerate_pgl, Moebius};
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn fst(ctx: &FieldCtx, s: i64, t: i64) -> RatFun {
        RatFun::from_ints(ctx, &[t, s, 0, 1], &[0, -1, 1]).unwrap()
    }

    #[test]
    fn wronskian_examples() {
        let f5 = fp(5);
        let x3 = RatFun::from_ints(&f5, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(x3.wronskian(&f5), Poly::from_ints(&f5, &[0, 0, 3]));
        let f3 = fp(3);
        assert!(RatFun::from_ints(&f3, &[0, 0, 0, 1], &[1]).unwrap().wronskian(&f3).is_zero());
        let f7 = fp(7);
        let (s, t) = (3i64, 5i64);
        let g = Poly::from_ints(&f7, &[t, -2 * t, -s, -2, 1]);
        let w = fst(&f7, s, t).wronskian(&f7);
        assert_eq!(w.monic(&f7), g);
    }

    #[test]
    fn index_examples() {
        let f7 = fp(7);
        let x3 = RatFun::from_ints(&f7, &[0, 0, 0, 1], &[1]).unwrap();
        let zero = ExtPoint::Finite { m: 1, root: FieldElem::ZERO };
        assert_eq!(ram_index_at(&f7, &x3, zero).unwrap(), 3);
        assert_eq!(ram_index_at(&f7, &x3, ExtPoint::Infinity).unwrap(), 3);
        let f5 = fp(5);
        let f12 = fst(&f5, 1, 2);
        let two = ExtPoint::Finite { m: 1, root: f5.from_int(2) };
        assert_eq!(ram_index_at(&f5, &f12, two).unwrap(), 3);
        let f3 = fp(3);
        let insep = RatFun::from_ints(&f3, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(ram_index_at(&f3, &insep, ExtPoint::Infinity), Err(Error::Inseparable));
    }

    #[test]
    fn type_examples() {
        let f5 = fp(5);
        assert_eq!(ram_type(&f5, &fst(&f5, -3, 1)).unwrap(), RamType::parse("3/2,3/2").unwrap());
        let f7 = fp(7);
        assert_eq!(ram_type(&f7, &fst(&f7, -3, 1)).unwrap(), RamType::parse("3/1,3/1").unwrap());
        assert_eq!(
            ram_type(&f5, &fst(&f5, 1, 2)).unwrap(),
            RamType::parse("(2/2,2/2,3/1)").unwrap()
        );
        assert_eq!(ram_type(&f5, &fst(&f5, 1, 2)).unwrap().to_string(), "(2/2,2/2,3/1)");
        let x3 = RatFun::from_ints(&f7, &[0, 0, 0, 1], &[1]).unwrap();
        assert_eq!(ram_type(&f7, &x3).unwrap(), RamType::parse("3/1,3/1").unwrap());
    }

    #[test]
    fn validation_examples() {
        assert!(validate_ram_type(5, &RamType::parse("2/2,2/2,3/1").unwrap()));
        assert!(validate_ram_type(3, &RamType::parse("2/1,2/1,2/1,2/1").unwrap()));
        assert!(!validate_ram_type(5, &RamType::parse("2/1,3/1").unwrap()));
        assert!(validate_ram_type(2, &RamType::parse("2/1").unwrap()));
        assert!(validate_ram_type(3, &RamType::parse("3/1").unwrap()));
    }

    #[test]
    fn wild_points_have_higher_wronskian_multiplicity() {
        let f3 = fp(3);
        let f01 = fst(&f3, 0, 1);
        let w = f01.wronskian(&f3);
        let pts = ram_points(&f3, &f01).unwrap();
        assert_eq!(type_of(&pts), RamType::parse("3/1").unwrap());
        for pt in pts {
            if let Locus::Finite(g) = pt.locus {
                let mult = w.factor(&f3).unwrap().into_iter().find(|(h, _)| *h == g).unwrap().1;
                assert!(mult >= 2);
            }
        }
    }

    #[test]
    fn tame_points_follow_e_minus_one() {
        for p in [5u64, 7, 11] {
            let ctx = fp(p);
            for s in 0..p as i64 {
                for t in 1..p as i64 {
                    if (1 + s + t) % p as i64 == 0 {
                        continue;
                    }
                    let f = fst(&ctx, s, t);
                    let w = f.wronskian(&ctx);
                    let fac = w.factor(&ctx).unwrap();
                    for pt in ram_points(&ctx, &f).unwrap() {
                        let Locus::Finite(g) = pt.locus else { continue };
                        let mult = fac.iter().find(|(h, _)| *h == g).unwrap().1;
                        assert_eq!(mult as u32, pt.index - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn ram_type_invariant_on_small_orbit() {
        let f5 = fp(5);
        let f = fst(&f5, 1, 2);
        let rt = ram_type(&f5, &f).unwrap();
        let pgl = enumerate_pgl(&f5);
        for (i, phi) in pgl.iter().enumerate().step_by(7) {
            let psi = pgl[(i * 13 + 5) % pgl.len()];
            assert_eq!(ram_type(&f5, &f.transform(&f5, &psi, phi)).unwrap(), rt);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ram_type_is_invariant((p, n) in prop::sample::select(vec![(2u64, 1usize), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (2, 3), (11, 1)]),
                                  c in prop::array::uniform8(any::<u32>()), m in prop::array::uniform8(any::<u32>())) {
            let ctx = FieldCtx::new(p, n, None).unwrap();
            let e = |i: u32| FieldElem::from_index(i % ctx.q());
            let Ok(f) = RatFun::new(&ctx, Poly::new(vec![e(c[0]), e(c[1]), e(c[2]), e(c[3])]), Poly::new(vec![e(c[4]), e(c[5]), e(c[6]), e(c[7])])) else { return Ok(()); };
            prop_assume!(f.degree() == 3 && f.is_separable(&ctx));
            let (Ok(psi), Ok(phi)) = (Moebius::new(&ctx, e(m[0]), e(m[1]), e(m[2]), e(m[3])), Moebius::new(&ctx, e(m[4]), e(m[5]), e(m[6]), e(m[7]))) else { return Ok(()); };
            let rt = ram_type(&ctx, &f).unwrap();
            prop_assert_eq!(ram_type(&ctx, &f.transform(&ctx, &psi, &phi)).unwrap(), rt);
        }
    }
}
