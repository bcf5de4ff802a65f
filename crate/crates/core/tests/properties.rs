use proptest::prelude::*;

use carlitz_core::algebra::{carlitz_action, CarlitzPoly, FieldElem, FieldSpec, Poly};
use carlitz_core::goss::{lfunction_direct, lfunction_exact, CharacterIndex};
use carlitz_core::local::{LaurentElem, Valuation, ZpApprox};
use carlitz_core::sinnott::sinnott_map;
use carlitz_core::stickelberger::{theta_series, GroupRing, GroupRingElem};
use carlitz_core::Context;

fn theta3() -> Context {
    Context::new(&FieldSpec::prime(3), &[0, 1]).unwrap()
}

fn quad3() -> Context {
    Context::new(&FieldSpec::prime(3), &[1, 0, 1]).unwrap()
}

fn f9() -> Context {
    Context::new(&FieldSpec::f9(), &[3, 1]).unwrap()
}

fn contexts() -> Vec<Context> {
    vec![theta3(), quad3(), Context::new(&FieldSpec::prime(5), &[0, 1]).unwrap(), f9()]
}

fn poly_in(c: &Context, v: &[u32]) -> Poly {
    let q = c.q() as u32;
    Poly::from_coeffs(v.iter().map(|&x| FieldElem(x % q)).collect())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(k in 0usize..4, a in coeffs(6), b in coeffs(6), c in coeffs(6)) {
        let ctx = &contexts()[k];
        let r = ctx.ring();
        let (a, b, c) = (poly_in(ctx, &a), poly_in(ctx, &b), poly_in(ctx, &c));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        if !b.is_zero() {
            let (qt, rm) = r.divrem(&a, &b).unwrap();
            prop_assert_eq!(r.add(&r.mul(&qt, &b), &rm), a.clone());
            prop_assert!(rm.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }

    #[test]
    fn carlitz_is_a_ring_map(k in 0usize..3, a in coeffs(4), b in coeffs(4)) {
        let ctx = &contexts()[k];
        let r = ctx.ring();
        let (a, b) = (poly_in(ctx, &a), poly_in(ctx, &b));
        let (pa, pb) = (carlitz_action(r, &a), carlitz_action(r, &b));
        prop_assert_eq!(carlitz_action(r, &r.add(&a, &b)), pa.add(r, &pb));
        prop_assert_eq!(carlitz_action(r, &r.mul(&a, &b)), pa.compose(r, &pb));
        if let Some(d) = a.degree() {
            prop_assert_eq!(pa.tau_coeffs.len(), d + 1);
            prop_assert_eq!(&pa.tau_coeffs[0], &a);
        }
    }

    #[test]
    fn teichmuller_decomposition(k in 0usize..4, a in coeffs(8), b in coeffs(8), m in 1u32..6) {
        let ctx = &contexts()[k];
        let padic = ctx.padic();
        let (x, y) = (padic.elem(&poly_in(ctx, &a), m), padic.elem(&poly_in(ctx, &b), m));
        prop_assume!(padic.is_unit(&x) && padic.is_unit(&y));
        let (wx, ux) = (padic.teichmuller(&x).unwrap(), padic.one_unit_part(&x).unwrap());
        prop_assert_eq!(padic.mul(&wx, &ux), x.clone());
        prop_assert!(padic.is_one_unit(&ux));
        let xy = padic.mul(&x, &y);
        let (wy, uy) = (padic.teichmuller(&y).unwrap(), padic.one_unit_part(&y).unwrap());
        prop_assert_eq!(padic.teichmuller(&xy).unwrap(), padic.mul(&wx, &wy));
        prop_assert_eq!(padic.one_unit_part(&xy).unwrap(), padic.mul(&ux, &uy));
    }

    #[test]
    fn zp_exponent_laws(k in 0usize..4, t in coeffs(6), y1 in 0u64..10_000, y2 in 0u64..10_000, digits in 1u32..4) {
        let ctx = &contexts()[k];
        let padic = ctx.padic();
        let p = ctx.p();
        let m = 6;
        let u = padic.add(&padic.one(m), &padic.mul(&padic.elem(&poly_in(ctx, &t), m), &padic.elem(ctx.pi(), m)));
        let pm = u64::from(p).pow(digits);
        let (a, b) = (ZpApprox::new(p, y1 % pm, digits).unwrap(), ZpApprox::new(p, y2 % pm, digits).unwrap());
        let lhs = padic.pow_zp(&u, &a.add(&b)).unwrap();
        let rhs = padic.mul(&padic.pow_zp(&u, &a).unwrap(), &padic.pow_zp(&u, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
        // u^{p^j} ≡ 1 mod π^{p^j}
        for j in 0..3u32 {
            let e = u64::from(p).pow(j);
            let v = padic.pow_int(&padic.truncate(&u, m).unwrap(), e);
            let diff = padic.sub(&v, &padic.one(m));
            prop_assert!(padic.valuation(&diff).is_at_least(e.min(u64::from(m)) as i64));
        }
    }

    #[test]
    fn laurent_exponent_laws(t in coeffs(5), y1 in 0u64..81, y2 in 0u64..81) {
        let ctx = theta3();
        let lr = ctx.laurent();
        let mut cs = vec![FieldElem::ONE];
        cs.extend(t.iter().map(|&x| FieldElem(x % 3)));
        let u = LaurentElem::from_coeffs(0, cs, Some(20));
        let (a, b) = (ZpApprox::new(3, y1, 4).unwrap(), ZpApprox::new(3, y2, 4).unwrap());
        let lhs = lr.pow_zp(&u, &a.add(&b)).unwrap();
        let rhs = lr.mul(&lr.pow_zp(&u, &a).unwrap(), &lr.pow_zp(&u, &b).unwrap());
        let prec = lhs.abs_prec().unwrap_or(i64::MAX).min(rhs.abs_prec().unwrap_or(i64::MAX));
        prop_assert!(prec <= 20);
        prop_assert_eq!(lhs.truncate(prec), rhs.truncate(prec));
    }

    #[test]
    fn lfunction_methods_agree(k in 0usize..2, i in 0u64..8, y in 0u64..81, m in 1u32..6) {
        let ctx = [theta3(), quad3()][k].clone();
        let i = CharacterIndex::reduce(&ctx, i as i64);
        let y = ZpApprox::new(3, y, 4).unwrap();
        let exact = lfunction_exact(&ctx, i, &y, m).unwrap();
        let direct = lfunction_direct(&ctx, i, &y, m, exact.len() + 1).unwrap();
        prop_assert_eq!(exact, direct);
    }

    #[test]
    fn group_ring_axioms(n in 1u32..3, seed in prop::collection::vec(0u32..9, 27)) {
        let ctx = theta3();
        let r = GroupRing::new(&ctx, n).unwrap();
        let size = r.group().order();
        let elem = |off: usize| -> GroupRingElem {
            r.from_dense(&(0..size).map(|g| FieldElem(seed[(g * 7 + off) % seed.len()] % 3)).collect::<Vec<_>>())
        };
        let (a, b, c) = (elem(0), elem(5), elem(11));
        prop_assert_eq!(r.mul(&r.mul(&a, &b).unwrap(), &c).unwrap(), r.mul(&a, &r.mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(
            r.mul(&a, &r.add(&b, &c).unwrap()).unwrap(),
            r.add(&r.mul(&a, &b).unwrap(), &r.mul(&a, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(r.mul(&a, &r.one()).unwrap(), a.clone());
        prop_assert_eq!(r.mul(&a, &b).unwrap(), r.mul(&b, &a).unwrap());
        // projection is a ring map
        let lower = GroupRing::new(&ctx, n - 1).unwrap();
        prop_assert_eq!(
            r.project(&r.mul(&a, &b).unwrap(), &lower).unwrap(),
            lower.mul(&r.project(&a, &lower).unwrap(), &r.project(&b, &lower).unwrap()).unwrap()
        );
        // Sinnott map is a ring map
        let (sa, sb, sab) = (sinnott_map(&ctx, &a).unwrap(), sinnott_map(&ctx, &b).unwrap(), sinnott_map(&ctx, &r.mul(&a, &b).unwrap()).unwrap());
        for y in 0..sa.values.len() {
            prop_assert_eq!(&sab.values[y], &ctx.padic().mul(&sa.values[y], &sb.values[y]));
        }
    }

    #[test]
    fn serde_round_trips(a in coeffs(6), m in 1u32..5) {
        let ctx = quad3();
        let x = ctx.padic().elem(&poly_in(&ctx, &a), m);
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<carlitz_core::local::PadicElem>(&s).unwrap(), x.clone());
        let l = LaurentElem::from_poly(&poly_in(&ctx, &a)).truncate(3);
        let s = serde_json::to_string(&l).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentElem>(&s).unwrap(), l);
        let v = ctx.padic().valuation(&x);
        let s = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Valuation>(&s).unwrap(), v);
    }
}

#[test]
fn carlitz_prime_reduces_to_frobenius() {
    for ctx in contexts() {
        let r = ctx.ring();
        let phi = carlitz_action(r, ctx.pi()).reduce(r, ctx.pi());
        let mut want = vec![Poly::zero(); ctx.d() as usize + 1];
        want[ctx.d() as usize] = Poly::one();
        assert_eq!(phi, CarlitzPoly { tau_coeffs: want });
    }
}

#[test]
fn theta_coefficients_stable_under_cutoff() {
    for ctx in [theta3(), quad3()] {
        for i in CharacterIndex::all(&ctx) {
            for n in 0..=1 {
                let a = theta_series(&ctx, n, i, 4).unwrap();
                let b = theta_series(&ctx, n, i, 7).unwrap();
                assert_eq!(a.coeffs[..], b.coeffs[..=4]);
            }
        }
    }
}
