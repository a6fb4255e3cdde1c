use blobcell::blob::{
    basis_vec, blob_act, blob_generator, blob_mul, enumerate_blob_diagrams, enumerate_blob_half,
    gram_blob, gram_blob_vec, signed_lambdas,
};
use blobcell::coxeter::{
    all_words, bruhat_leq, bruhat_lt, bruhat_subword_oracle, cell_order_key, phi_colored,
    psi_colored, word_mul, Gen, PositiveRoot,
};
use blobcell::jantzen::{
    cell_layers, delta_alpha_dim, graded_dim_cell, graded_dim_delta_w, CellContext,
};
use blobcell::poly::rat;
use blobcell::tl::{
    binomial, enumerate_tl_diagrams, enumerate_tl_half, gram_tl_vec, tl_act, tl_generator, tl_mul,
    TLModuleVec,
};
use blobcell::{BivarPoly, LaurentPoly, Monomial};
use proptest::prelude::*;
use proptest::sample::Index;

fn poly(max_deg: u32) -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -6i64..=6, 1i64..=4), 0..6).prop_map(
        move |ts| {
            BivarPoly::from_terms(
                ts.into_iter()
                    .filter(|(a, b, _, _)| a + b <= max_deg)
                    .map(|(a, b, n, d)| (Monomial::new(a, b), rat(n, d))),
            )
        },
    )
}

fn homogeneous(deg: u32) -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((0..=deg, -6i64..=6), 1..4).prop_map(move |ts| {
        BivarPoly::from_terms(
            ts.into_iter()
                .map(|(a, n)| (Monomial::new(a, deg - a), rat(n, 1))),
        )
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6).prop_map(|ts| {
        let mut p = LaurentPoly::zero();
        for (e, c) in ts {
            p.add_term(e, c);
        }
        p
    })
}

fn cell() -> impl Strategy<Value = (usize, i64)> {
    (0usize..=5, any::<Index>()).prop_map(|(n, i)| {
        let ls = signed_lambdas(n);
        (n, ls[i.index(ls.len())])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(3), q in poly(3), r in poly(3)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division(p in poly(3), d in poly(3)) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).divexact(&d).unwrap(), Some(p));
    }

    #[test]
    fn substitution_is_multiplicative(p in poly(3), q in poly(3), a in poly(1), b in poly(1)) {
        prop_assert_eq!((&p * &q).substitute(&a, &b), &p.substitute(&a, &b) * &q.substitute(&a, &b));
    }

    #[test]
    fn homogeneous_products(p in homogeneous(2), q in homogeneous(3)) {
        let pq = &p * &q;
        if !pq.is_zero() {
            prop_assert_eq!(pq.homogeneous_degree(), Some(p.homogeneous_degree().unwrap() + q.homogeneous_degree().unwrap()));
        }
    }

    #[test]
    fn poly_text_and_json_round_trip(p in poly(4)) {
        prop_assert_eq!(p.to_string().parse::<BivarPoly>().unwrap(), p.clone());
        let js = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<BivarPoly>(&js).unwrap(), p);
    }

    #[test]
    fn laurent_round_trip(p in laurent()) {
        prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p.clone());
        let js = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&js).unwrap(), p);
    }

    #[test]
    fn tl_associative(n in 1usize..=7, i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let ds = enumerate_tl_diagrams(n);
        let e = |x: Index| TLModuleVec::basis(ds[x.index(ds.len())].clone());
        let (a, b, c) = (e(i), e(j), e(k));
        prop_assert_eq!(
            tl_mul(&tl_mul(&a, &b).unwrap(), &c).unwrap(),
            tl_mul(&a, &tl_mul(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn blob_associative(n in 1usize..=5, i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let ds = enumerate_blob_diagrams(n);
        let e = |x: Index| blobcell::blob::BlobElement::basis(ds[x.index(ds.len())].clone());
        let (a, b, c) = (e(i), e(j), e(k));
        prop_assert_eq!(
            blob_mul(&blob_mul(&a, &b).unwrap(), &c).unwrap(),
            blob_mul(&a, &blob_mul(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn tl_form_invariant(n in 2usize..=7, l in any::<Index>(), g in any::<Index>(), s in any::<Index>(), t in any::<Index>()) {
        let lambda = l.index(n / 2 + 1) * 2 + n % 2;
        let basis = enumerate_tl_half(n, lambda).unwrap();
        let u = TLModuleVec::basis(basis[s.index(basis.len())].diagram().clone());
        let v = TLModuleVec::basis(basis[t.index(basis.len())].diagram().clone());
        let a = tl_generator(n, 1 + g.index(n - 1));
        prop_assert_eq!(
            gram_tl_vec(&tl_act(&a, &u, lambda).unwrap(), &v, lambda).unwrap(),
            gram_tl_vec(&u, &tl_act(&a.star(), &v, lambda).unwrap(), lambda).unwrap()
        );
        prop_assert_eq!(gram_tl_vec(&u, &v, lambda).unwrap(), gram_tl_vec(&v, &u, lambda).unwrap());
    }

    #[test]
    fn blob_form_invariant((n, lambda) in cell(), g in any::<Index>(), s in any::<Index>(), t in any::<Index>()) {
        prop_assume!(n >= 1);
        let basis = enumerate_blob_half(n, lambda).unwrap().basis;
        let (hs, ht) = (&basis[s.index(basis.len())], &basis[t.index(basis.len())]);
        let st = gram_blob(hs, ht).unwrap();
        prop_assert_eq!(&st, &gram_blob(ht, hs).unwrap());
        prop_assert!(st.is_zero() || st.is_homogeneous());
        let a = blob_generator(n, g.index(n));
        let (u, v) = (basis_vec(hs), basis_vec(ht));
        prop_assert_eq!(
            gram_blob_vec(&blob_act(&a, &u, lambda).unwrap(), &v, lambda).unwrap(),
            gram_blob_vec(&u, &blob_act(&a, &v, lambda).unwrap(), lambda).unwrap()
        );
    }

    #[test]
    fn bruhat_matches_subwords(i in any::<Index>(), j in any::<Index>()) {
        let ws = all_words(10);
        let (u, v) = (&ws[i.index(ws.len())], &ws[j.index(ws.len())]);
        prop_assert_eq!(bruhat_leq(u, v), bruhat_subword_oracle(u, v));
    }

    #[test]
    fn psi_phi_inverse(n in 1usize..=10, a in any::<Index>(), b in any::<Index>(), t in any::<bool>()) {
        let color = if t { Gen::T } else { Gen::S };
        let ls = signed_lambdas(n - 1);
        let (l1, l2) = (ls[a.index(ls.len())], ls[b.index(ls.len())]);
        let v1 = phi_colored(l1, n, color).unwrap();
        let v2 = phi_colored(l2, n, color).unwrap();
        prop_assert_eq!(psi_colored(&v1, color).unwrap(), l1);
        prop_assert_eq!(bruhat_leq(&v1, &v2), cell_order_key(l1) <= cell_order_key(l2));
    }

    #[test]
    fn graded_dims_specialize((n, lambda) in cell()) {
        let k = (n - lambda.unsigned_abs() as usize) / 2;
        let d = graded_dim_cell(n, lambda).unwrap();
        prop_assert_eq!(d.eval_at_one() as u64, binomial(n as u64, k as i64));
    }

    #[test]
    fn layers_decrease((n, lambda) in cell()) {
        let layers = cell_layers(n, lambda).unwrap();
        for pair in layers.windows(2) {
            prop_assert!(pair[1].dim.le_coefficientwise(&pair[0].dim));
        }
    }

    #[test]
    fn delta_alpha_is_a_shifted_cell(i in any::<Index>(), j in any::<Index>()) {
        let ws: Vec<_> = all_words(7).into_iter().filter(|w| !w.is_identity()).collect();
        let w = &ws[i.index(ws.len())];
        let below: Vec<_> = all_words(w.len()).into_iter().filter(|v| bruhat_leq(v, w)).collect();
        let v = &below[j.index(below.len())];
        let ctx = CellContext::new(w.clone(), v.clone()).unwrap();
        for alpha in PositiveRoot::all_up_to(w.len() as u32) {
            let sv = word_mul(&alpha.reflection(), v);
            let expect = if bruhat_lt(v, &sv) && bruhat_leq(&sv, w) {
                let c = CellContext::new(w.clone(), sv.clone()).unwrap();
                graded_dim_delta_w(&c).unwrap().shift(sv.len() as i64 - v.len() as i64)
            } else {
                LaurentPoly::zero()
            };
            prop_assert_eq!(delta_alpha_dim(&ctx, alpha).unwrap(), expect, "w={} v={} alpha={}", w, v, alpha);
        }
    }
}

#[test]
fn tl_cellular_count() {
    for n in 0..=10usize {
        let total: u64 = (n % 2..=n)
            .step_by(2)
            .map(|l| (enumerate_tl_half(n, l).unwrap().len() as u64).pow(2))
            .sum();
        assert_eq!(total, blobcell::tl::catalan(n as u64));
    }
}
