//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.
#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use blobcell::blob::{
    enumerate_blob_diagrams, enumerate_blob_half, gram_matrix_blob, signed_lambdas,
};
use blobcell::gram::{beta, beta_closed, beta_recursion_check, gram_blocks};
use blobcell::jw::jw;
use blobcell::poly::{int, rat};
use blobcell::suite;
use blobcell::tl::{enumerate_tl_diagrams, tl_generator, tl_identity};
use blobcell::{BivarPoly, Monomial, Result};

fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=n {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[n]
}

fn pascal(rows: usize) -> Vec<Vec<u64>> {
    let mut t: Vec<Vec<u64>> = vec![vec![1]];
    for n in 1..=rows {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| {
                let a = if k > 0 { prev[k - 1] } else { 0 };
                let b = if k < n { prev[k] } else { 0 };
                a + b
            })
            .collect();
        t.push(row);
    }
    t
}

fn ax(i: i64) -> BivarPoly {
    BivarPoly::linear(i, i - 1)
}

fn ay(i: i64) -> BivarPoly {
    BivarPoly::linear(i - 1, i)
}

fn product<I: IntoIterator<Item = BivarPoly>>(it: I) -> BivarPoly {
    it.into_iter().fold(BivarPoly::one(), |a, b| &a * &b)
}

fn c1() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let p = pascal(12);
    for n in 0..=8 {
        if enumerate_tl_diagrams(n).len() as u64 != catalan(n) {
            bad.push(format!("TL_{}", n));
        }
    }
    for n in 0..=6 {
        if enumerate_blob_diagrams(n).len() as u64 != p[2 * n][n] {
            bad.push(format!("B_{}", n));
        }
    }
    for n in 0..=10 {
        for l in signed_lambdas(n) {
            let k = (n - l.unsigned_abs() as usize) / 2;
            if enumerate_blob_half(n, l)?.len() as u64 != p[n][k] {
                bad.push(format!("cell ({},{})", n, l));
            }
        }
    }
    Ok((bad.is_empty(), format!("mismatches: {:?}", bad)))
}

fn c2() -> Result<(bool, String)> {
    suite::check_relations(6)
}

fn c3() -> Result<(bool, String)> {
    let (pass, detail) = suite::check_jw(7)?;
    let j2 = tl_identity(2).add(&tl_generator(2, 1).scale(&rat(1, 2)));
    let small = *jw(1)? == tl_identity(1) && *jw(2)? == j2;
    Ok((
        pass && small,
        format!("{}; JW_1, JW_2 explicit: {}", detail, small),
    ))
}

fn c4() -> Result<(bool, String)> {
    let p = pascal(9);
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=9usize {
        for l in signed_lambdas(n) {
            let a = l.abs();
            let k = (n - a as usize) / 2;
            let ki = k as i64;
            let roots = if l >= 0 {
                &product((a + 2..=a + ki + 1).map(ax)) * &product((1..=ki).map(ay))
            } else {
                &product((1..=ki + 1).map(ax)) * &product((a + 1..=a + ki).map(ay))
            };
            let expect = roots.scale(&rat(1, p[n][k] as i64));
            let got = beta(k, l)?;
            count += 1;
            if got != expect || beta_closed(k, l) != expect {
                bad.push(format!("beta({},{})", k, l));
            }
            if k >= 1 && l >= 1 {
                let nn = n as i64;
                let f = (&ay(ki) * &ay(ki)).scale(&rat(ki * ki, nn * (nn - 1)));
                let rhs = &beta(k, l - 1)? + &(&f * &beta(k - 1, l)?);
                if got != rhs || !beta_recursion_check(k, l)? {
                    bad.push(format!("recursion ({},{})", k, l));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} pairs, failures: {:?}", count, bad),
    ))
}

fn c5() -> Result<(bool, String)> {
    let golden: Vec<(i64, Vec<(usize, BivarPoly)>)> = vec![
        (
            1,
            vec![
                (5, BivarPoly::one()),
                (4, &ax(3) * &ay(1)),
                (1, product([ax(3), ax(4), ay(1), ay(2)])),
            ],
        ),
        (
            -1,
            vec![
                (5, ax(1)),
                (4, product([ax(1), ax(2), ay(2)])),
                (1, product([ax(1), ax(2), ax(3), ay(2), ay(3)])),
            ],
        ),
        (-3, vec![(4, ax(1)), (1, product([ax(1), ax(2), ay(4)]))]),
    ];
    let mut bad = Vec::new();
    for (l, expect) in golden {
        let blocks = gram_blocks(5, l)?;
        let sizes: Vec<usize> = blocks.iter().map(|b| b.multiplicity).collect();
        let want: Vec<usize> = expect.iter().map(|e| e.0).collect();
        if sizes != want {
            bad.push(format!("M(5,{}) sizes {:?}", l, sizes));
            continue;
        }
        for (b, (_, c)) in blocks.iter().zip(&expect) {
            // equal up to a nonzero rational: compare monic forms
            if b.c.is_zero() || b.c.monic() != c.monic() {
                bad.push(format!("M(5,{}) block {}: {}", l, b.index, b.c));
            }
        }
    }
    let target = BivarPoly::from_terms([(Monomial::new(1, 1), int(-2))]);
    let g = gram_matrix_blob(5, 1)?;
    if !(0..g.len()).any(|i| g[i][i] == target) {
        bad.push("-2xy not on the diagonal of the (5,1) Gram matrix".into());
    }
    Ok((bad.is_empty(), format!("failures: {:?}", bad)))
}

fn c6() -> Result<(bool, String)> {
    let (o, od) = suite::check_orthogonality(7)?;
    let (s, sd) = suite::check_specialization(6)?;
    Ok((
        o && s,
        format!("orthogonality: {}; specialization: {}", od, sd),
    ))
}

fn c7() -> Result<(bool, String)> {
    Ok(suite::check_coxeter(10))
}

fn c8() -> Result<(bool, String)> {
    suite::check_sum_formula(9, 5)
}

fn c9() -> Result<(bool, String)> {
    suite::check_smith(5)
}

fn c10() -> Result<(bool, String)> {
    suite::check_heads(9)
}

type Check = fn() -> Result<(bool, String)>;

fn main() {
    let criteria: [(&str, Check, u64); 10] = [
        ("dimension counts", c1, 10),
        ("defining relations", c2, 10),
        ("Jones-Wenzl", c3, 30),
        ("beta closed form and recursion", c4, 120),
        ("golden Gram matrices", c5, 10),
        ("orthogonality, filtration and specialization", c6, 60),
        ("Coxeter layer", c7, 10),
        ("graded sum formula", c8, 120),
        ("Jantzen normal-form oracle", c9, 60),
        ("head count", c10, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let in_time = took < Duration::from_secs(*limit);
        let (pass, detail) = match res {
            Ok((p, d)) => (p && in_time, d),
            Err(e) => (false, format!("error: {}", e)),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {} [{:.2?} / {}s] {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            took,
            limit,
            detail
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
