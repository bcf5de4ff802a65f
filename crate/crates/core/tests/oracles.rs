//! Worked examples checked against naive oracles written here, sharing no
//! code with the library beyond constructing inputs.

use carlitz_core::algebra::{carlitz_action, FieldElem, FieldSpec, Poly, PolyRing};
use carlitz_core::goss::{
    bernoulli_goss, lfunction_exact, power_sum, zeta_neg, zeta_poly, CharacterIndex,
};
use carlitz_core::invariants::{m_invariant, MValue};
use carlitz_core::local::{sgn_and_one_unit_infty, LaurentElem, ZpApprox};
use carlitz_core::sinnott::{kernel_witness, sinnott_map};
use carlitz_core::stickelberger::{frobenius_decompose, theta_series, theta_sharp_at_one, GroupRing};
use carlitz_core::Context;

// ---- naive F_p[θ] arithmetic on integer vectors ----

fn trim(mut v: Vec<i64>, p: i64) -> Vec<i64> {
    for x in v.iter_mut() {
        *x = x.rem_euclid(p);
    }
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn nmul(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out, p)
}

fn nadd(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect(), p)
}

fn npow(a: &[i64], k: u64, p: i64) -> Vec<i64> {
    (0..k).fold(vec![1], |acc, _| nmul(&acc, a, p))
}

fn ntrunc(a: &[i64], len: usize) -> Vec<i64> {
    let mut v: Vec<i64> = a.iter().take(len).copied().collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic `m`, by schoolbook long division.
fn nrem(a: &[i64], m: &[i64], p: i64) -> Vec<i64> {
    let mut r = trim(a.to_vec(), p);
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, x) in m.iter().enumerate() {
            r[shift + i] -= c * x;
        }
        r = trim(r, p);
    }
    r
}

fn monics(p: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let total = (p as usize).pow(n as u32);
    for idx in 0..total {
        let mut v = Vec::with_capacity(n + 1);
        let mut k = idx;
        for _ in 0..n {
            v.push((k % p as usize) as i64);
            k /= p as usize;
        }
        v.push(1);
        out.push(v);
    }
    out
}

fn ints(a: &Poly) -> Vec<i64> {
    a.to_ints().into_iter().map(i64::from).collect()
}

fn ctx(p: u32, pi: &[u64]) -> Context {
    Context::new(&FieldSpec::prime(p), pi).unwrap()
}

fn poly(c: &Context, v: &[u64]) -> Poly {
    c.poly(v).unwrap()
}

#[test]
fn product_and_gcd_examples() {
    let c = ctx(3, &[0, 1]);
    let r = c.ring();
    let prod = r.mul(&poly(&c, &[1, 1]), &poly(&c, &[2, 1]));
    assert_eq!(ints(&prod), nmul(&[1, 1], &[2, 1], 3));
    assert_eq!(ints(&prod), vec![2, 0, 1]);
    assert!(r.gcd(&poly(&c, &[1, 0, 1]), &Poly::theta()).is_one());
}

#[test]
fn irreducibility_against_trial_division() {
    let c = ctx(3, &[0, 1]);
    for n in 1..=4 {
        for f in monics(3, n) {
            let reducible = (1..=n / 2).any(|k| monics(3, k).iter().any(|g| nrem(&f, g, 3).is_empty()));
            let fp = c.ring().from_ints(&f.iter().map(|&x| x as u64).collect::<Vec<_>>()).unwrap();
            assert_eq!(c.ring().is_irreducible(&fp), !reducible, "{f:?}");
        }
    }
}

fn necklace(q: i64, n: i64) -> i64 {
    fn mobius(mut n: i64) -> i64 {
        let mut res = 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                res = -res;
            }
            d += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    }
    (1..=n).filter(|d| n % d == 0).map(|d| mobius(n / d) * q.pow(d as u32)).sum::<i64>() / n
}

#[test]
fn irreducible_counts_match_necklaces() {
    for (spec, q) in [(FieldSpec::prime(3), 3), (FieldSpec::prime(5), 5), (FieldSpec::f9(), 9)] {
        let ring = PolyRing::new(spec.build().unwrap());
        let top = if q == 3 { 6 } else { 4 };
        for n in 1..=top {
            assert_eq!(ring.monic_irreducibles_of_degree(n).len() as i64, necklace(q, n as i64), "q={q} n={n}");
        }
    }
    let ring = PolyRing::new(FieldSpec::prime(3).build().unwrap());
    let all = ring.monic_irreducibles(1);
    assert_eq!(all.iter().map(ints).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
}

#[test]
fn carlitz_theta_squared_by_substitution() {
    // Φ_θ(x) = θx + x^3, substituted into itself as polynomials in x over F_3[θ].
    let p = 3;
    let phi: Vec<(u64, Vec<i64>)> = vec![(1, vec![0, 1]), (3, vec![1])];
    // Φ_θ(Φ_θ(x)) = θ Φ_θ(x) + Φ_θ(x)^3, and (u + v)^3 = u^3 + v^3 in characteristic 3.
    let mut terms: std::collections::BTreeMap<u64, Vec<i64>> = Default::default();
    for (e, c) in &phi {
        let t = terms.entry(*e).or_default();
        *t = nadd(t, &nmul(&[0, 1], c, p), p);
    }
    for (e, c) in &phi {
        let t = terms.entry(e * 3).or_default();
        *t = nadd(t, &npow(c, 3, p), p);
    }
    let c = ctx(3, &[0, 1]);
    let phi2 = carlitz_action(c.ring(), &poly(&c, &[0, 0, 1]));
    let got: Vec<(u64, Vec<i64>)> =
        phi2.tau_coeffs.iter().enumerate().map(|(k, a)| (3u64.pow(k as u32), ints(a))).collect();
    let want: Vec<(u64, Vec<i64>)> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
    assert_eq!(got, want);
    assert_eq!(want, vec![(1, vec![0, 0, 1]), (3, vec![0, 1, 0, 1]), (9, vec![1])]);
    assert_eq!(carlitz_action(c.ring(), &Poly::one()).tau_coeffs, vec![Poly::one()]);
}

#[test]
fn inverse_mod_theta_cubed_by_search() {
    let c = ctx(3, &[0, 1]);
    let a = c.padic().elem(&poly(&c, &[1, 1]), 3);
    let inv = c.padic().inv(&a).unwrap();
    let found: Vec<Vec<i64>> = (0..27)
        .map(|k| vec![k % 3, (k / 3) % 3, k / 9])
        .map(|v| trim(v, 3))
        .filter(|b| ntrunc(&nmul(&[1, 1], b, 3), 3) == vec![1])
        .collect();
    assert_eq!(found, vec![ints(inv.rep())]);
    assert_eq!(ints(inv.rep()), vec![1, 2, 1]);
    let two = c.padic().inv(&c.padic().elem(&poly(&c, &[2]), 4)).unwrap();
    assert_eq!(ints(two.rep()), vec![2]);
}

#[test]
fn teichmuller_by_search() {
    // ω(a) is the unique b mod θ^3 with b^3 = b and b ≡ a mod θ.
    let c = ctx(3, &[0, 1]);
    for a in [vec![2u64, 1], vec![1, 1], vec![2, 2, 1]] {
        let x = c.padic().elem(&poly(&c, &a), 3);
        let w = c.padic().teichmuller(&x).unwrap();
        let found: Vec<Vec<i64>> = (0..27)
            .map(|k| trim(vec![k % 3, (k / 3) % 3, k / 9], 3))
            .filter(|b| ntrunc(&npow(b, 3, 3), 3) == *b && b.first() == Some(&(a[0] as i64)))
            .collect();
        assert_eq!(found, vec![ints(w.rep())], "a = {a:?}");
        let u = c.padic().one_unit_part(&x).unwrap();
        assert_eq!(ntrunc(&nmul(&ints(w.rep()), &ints(u.rep()), 3), 3), trim(a.iter().map(|&v| v as i64).collect(), 3));
    }
    let x = c.padic().elem(&poly(&c, &[2, 1]), 3);
    assert_eq!(ints(c.padic().one_unit_part(&x).unwrap().rep()), vec![1, 2]);
}

fn binom_mod_p(n: u64, k: u64, p: u64) -> i64 {
    // Lucas
    let (mut n, mut k, mut r) = (n, k, 1u64);
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        r = r * c % p;
        n /= p;
        k /= p;
    }
    r as i64
}

#[test]
fn zp_powers_by_binomial_series() {
    // u^y = Σ_n binom(y, n) (u - 1)^n, truncated mod θ^M
    let c = ctx(3, &[0, 1]);
    let cases = [(vec![1u64, 1], 3u64, 2u32, 9u32), (vec![1, 1], 1, 1, 3), (vec![1, 1], 4, 1, 3), (vec![1, 2, 1], 17, 3, 9)];
    for (u, y, digits, m) in cases {
        let t: Vec<i64> = ntrunc(&nadd(&u.iter().map(|&v| v as i64).collect::<Vec<_>>(), &[-1], 3), 99);
        let mut acc = vec![];
        for n in 0..=m as u64 {
            let b = binom_mod_p(y, n, 3);
            acc = nadd(&acc, &nmul(&[b], &npow(&t, n, 3), 3), 3);
        }
        let want = ntrunc(&acc, m.min(3u32.pow(digits)) as usize);
        let got = c
            .padic()
            .pow_zp(&c.padic().elem(&poly(&c, &u), m), &ZpApprox::new(3, y % 3u64.pow(digits), digits).unwrap())
            .unwrap();
        assert_eq!(ints(got.rep()), want, "u={u:?} y={y}");
    }
    let e = c.padic().pow_zp_to(&c.padic().elem(&poly(&c, &[1, 1]), 9), &ZpApprox::new(3, 1, 1).unwrap(), 4);
    assert!(e.is_err());
}

#[test]
fn infinity_sign_and_one_unit() {
    let c = ctx(3, &[0, 1]);
    let (s, u) = sgn_and_one_unit_infty(c.field(), &poly(&c, &[1, 2])).unwrap();
    assert_eq!(s, FieldElem(2));
    assert_eq!(u, LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(2)], None));
    let lr = c.laurent();
    let one_plus_t = LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(1)], None);
    let cube = lr.pow_zp(&one_plus_t, &ZpApprox::new(3, 3, 2).unwrap()).unwrap();
    assert_eq!(cube.truncate(9), LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(0), FieldElem(0), FieldElem(1)], Some(9)));
    let sq = lr.pow_zp(&one_plus_t.truncate(2), &ZpApprox::new(3, 2, 1).unwrap()).unwrap();
    assert_eq!(sq, LaurentElem::from_coeffs(0, vec![FieldElem(1), FieldElem(2)], Some(2)));
}

#[test]
fn power_sums_and_bernoulli_by_enumeration() {
    let c = ctx(3, &[0, 1]);
    for n in 0..=2usize {
        for j in 0..=10u64 {
            let naive = monics(3, n).iter().fold(vec![], |acc, a| nadd(&acc, &npow(a, j, 3), 3));
            assert_eq!(ints(&power_sum(&c, n, j)), naive, "S_{n}({j})");
        }
    }
    assert_eq!(ints(&power_sum(&c, 1, 2)), vec![2]);
    let z2 = zeta_poly(&c, 2);
    assert_eq!(z2.coeffs().iter().map(ints).collect::<Vec<_>>(), vec![vec![1], vec![2]]);
    for j in 0..=2 {
        assert!(bernoulli_goss(&c, j).is_one());
    }
    assert!(zeta_neg(&c, 2).is_zero());
    assert!(zeta_neg(&c, 1).is_one());
    assert!(zeta_neg(&c, 0).is_one());
}

#[test]
fn lfunction_small_example() {
    let c = ctx(3, &[0, 1]);
    let i = CharacterIndex::new(&c, 1).unwrap();
    let l = lfunction_exact(&c, i, &ZpApprox::new(3, 1, 1).unwrap(), 3).unwrap();
    let got: Vec<Vec<i64>> = l.coeffs().iter().map(|x| ints(x.rep())).collect();
    // 1 - θX
    assert_eq!(got, vec![vec![1], vec![0, 2]]);
}

#[test]
fn frobenius_decomposition_reconstructs() {
    let c = ctx(3, &[1, 0, 1]);
    let padic = c.padic();
    for k in 1..=3 {
        for q in c.irreducibles(k).iter().filter(|q| *q != c.pi()) {
            let (delta, g) = frobenius_decompose(&c, q, 2).unwrap();
            let w = c.teichmuller_lift(delta, 3).unwrap();
            let back = padic.mul(&w, &padic.elem(&g.rep, 3));
            assert_eq!(back, padic.elem(q, 3));
            assert_eq!(nrem(&ints(&g.rep), &[1, 0, 1], 3), vec![1]);
        }
    }
}

#[test]
fn group_ring_norm_examples() {
    let c = ctx(3, &[0, 1]);
    let r = GroupRing::new(&c, 1).unwrap();
    let norm = r.norm_element();
    for g in 0..3 {
        let gam = r.basis(g);
        assert_eq!(r.mul(&norm, &gam).unwrap(), norm);
        assert!(r.mul(&r.sub(&gam, &r.one()).unwrap(), &norm).unwrap().is_zero());
    }
}

#[test]
fn theta_level_zero_first_coefficient() {
    let c = ctx(3, &[0, 1]);
    let i = CharacterIndex::new(&c, 1).unwrap();
    // X^1 coefficient: Σ_{c ∈ {1,2}} c^{-1} over the linear primes θ+1, θ+2
    let oracle = (1..3).map(|x: i64| if x == 1 { 1 } else { 2 }).sum::<i64>() % 3;
    let t = theta_series(&c, 0, i, 4).unwrap();
    assert_eq!(oracle, 0);
    assert!(t.coeffs[1].is_zero());
    assert_eq!(t.coeffs[0], GroupRing::new(&c, 0).unwrap().one());
    let c2 = ctx(3, &[1, 0, 1]);
    assert!(theta_sharp_at_one(&c2, 0, CharacterIndex::new(&c2, 2).unwrap(), None).is_ok());
}

#[test]
fn sinnott_norm_vanishes_and_q5_witness() {
    let c = ctx(3, &[0, 1]);
    let r = GroupRing::new(&c, 1).unwrap();
    assert!(sinnott_map(&c, &r.norm_element()).unwrap().is_zero());

    // x1 + x2 + x3 = 0 and 0·x1 + 1·x2 + 2·x3 = 0 over F_5, x3 = 1
    let sols: Vec<[u32; 3]> = (0..125u32)
        .map(|k| [k % 5, (k / 5) % 5, k / 25])
        .filter(|x| x[2] == 1 && (x[0] + x[1] + x[2]) % 5 == 0 && (x[1] + 2 * x[2]) % 5 == 0)
        .collect();
    let c5 = ctx(5, &[0, 1]);
    let w = kernel_witness(&c5, 1).unwrap();
    let coeffs: Vec<u32> = w.terms().values().map(|x| x.0).collect();
    assert_eq!(sols, vec![[1, 3, 1]]);
    assert_eq!(coeffs, sols[0].to_vec());
    assert!(sinnott_map(&c5, &w).unwrap().is_zero());
}

// ---- F_9 = F_3[θ]/(θ² + 1) by hand, for residues of Bernoulli-Goss numbers ----

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
struct F9(i64, i64);

impl F9 {
    fn add(self, o: F9) -> F9 {
        F9((self.0 + o.0).rem_euclid(3), (self.1 + o.1).rem_euclid(3))
    }
    fn mul(self, o: F9) -> F9 {
        // θ² = -1
        F9((self.0 * o.0 - self.1 * o.1).rem_euclid(3), (self.0 * o.1 + self.1 * o.0).rem_euclid(3))
    }
    fn pow(self, k: u64) -> F9 {
        (0..k).fold(F9(1, 0), |a, _| a.mul(self))
    }
    fn scale(self, k: i64) -> F9 {
        F9((self.0 * k).rem_euclid(3), (self.1 * k).rem_euclid(3))
    }
}

fn reduce_f9(a: &[i64]) -> F9 {
    let r = nrem(a, &[1, 0, 1], 3);
    F9(*r.first().unwrap_or(&0), *r.get(1).unwrap_or(&0))
}

/// `β(j) mod 𝔭` for `π = θ² + 1`, from residues of the power sums.
fn beta_residue(j: u64) -> F9 {
    let mut top = 0;
    while 3u64.pow(top + 1) <= j + 1 {
        top += 1;
    }
    let s: Vec<F9> = (0..=top as usize)
        .map(|n| monics(3, n).iter().fold(F9(0, 0), |acc, a| acc.add(reduce_f9(a).pow(j))))
        .collect();
    if j >= 1 && j.is_multiple_of(2) {
        // -Z'(1, j)
        s.iter().enumerate().fold(F9(0, 0), |acc, (n, x)| acc.add(x.scale(-(n as i64))))
    } else {
        s.iter().fold(F9(0, 0), |acc, x| acc.add(*x))
    }
}

#[test]
fn m_invariant_zero_matches_unit_bernoulli_numbers() {
    let c = ctx(3, &[1, 0, 1]);
    for i in CharacterIndex::all(&c) {
        let first_unit = (1..=80u64).filter(|j| j % 8 == i.value()).find(|&j| beta_residue(j) != F9(0, 0));
        let r = m_invariant(&c, i, None, 64).unwrap();
        assert_eq!(r.value == MValue::Resolved(0), first_unit.is_some(), "i = {}", i.value());
        if r.value == MValue::Resolved(0) {
            assert_eq!(r.certificate.witness_j, first_unit, "i = {}", i.value());
        }
    }
}
