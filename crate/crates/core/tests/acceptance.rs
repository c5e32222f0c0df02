mod common;

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use common::{Class, Form};
use pisys::catalog::{self, serial_gcm};
use pisys::criteria::{self, Reason};
use pisys::families::{self, from_edges};
use pisys::maximality::{self, Budgets};
use pisys::principles::{self, PrincipleApplication, StarCase};
use pisys::roots::RootContext;
use pisys::search::{self, Certificate, SearchOutcome};
use pisys::Gcm;
use rand::seq::SliceRandom;
use rand::Rng;

fn report(name: &str, started: Instant, limit: Option<Duration>, result: Result<String, String>) {
    let elapsed = started.elapsed();
    let over = limit.is_some_and(|l| elapsed > l);
    let (ok, detail) = match result {
        Ok(d) if !over => (true, d),
        Ok(d) => (false, format!("{d}; took {elapsed:.1?}, limit {:?}", limit.unwrap())),
        Err(d) => (false, d),
    };
    let line = format!("{} {name} [{elapsed:.2?}] {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "{line}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mins(m: u64) -> Option<Duration> {
    Some(Duration::from_secs(60 * m))
}

#[test]
fn criterion_1_catalog_counts() {
    let t = Instant::now();
    let r = (|| {
        let all = catalog::enumerate_hyperbolic(3, 10, false).map_err(|e| e.to_string())?;
        let sym = all.iter().filter(|e| e.symmetrizable).count();
        ensure(all.len() == 238 && sym == 142, || format!("got {} diagrams, {sym} symmetrizable", all.len()))?;
        Ok(format!("{} hyperbolic diagrams of ranks 3-10, {sym} symmetrizable", all.len()))
    })();
    report("1 catalog counts", t, mins(10), r);
}

#[test]
fn criterion_2_maximality() {
    let t = Instant::now();
    let cat = catalog::standard_catalog();
    let rep = maximality::order_report(&cat, &Budgets::default());
    let r = (|| {
        let per_rank: Vec<(usize, usize)> = rep.summary.iter().map(|(r, s)| (*r, s.maximal)).filter(|x| x.1 > 0).collect();
        let total: usize = per_rank.iter().map(|x| x.1).sum();
        let want = vec![(3, 5), (4, 9), (6, 5), (10, 3)];
        ensure(per_rank == want && rep.undecided() == 0, || {
            format!("maximal per rank {per_rank:?}, undecided {}", rep.undecided())
        })?;
        Ok(format!("{total} maximal, per rank {per_rank:?}, 0 undecided"))
    })();
    report("2 maximality", t, mins(30), r);
}

#[test]
fn criterion_3_determinants() {
    let t = Instant::now();
    let r = (|| {
        for n in 2..=10usize {
            let d = families::overextended('A', n).unwrap().det();
            ensure(d == (-(n as i64 + 1)).into(), || format!("det A{n}++ = {d}"))?;
        }
        for n in 4..=10usize {
            let d = families::overextended('D', n).unwrap().det();
            ensure(d == (-4).into(), || format!("det D{n}++ = {d}"))?;
        }
        for n in 3..=10usize {
            let d = families::e_series(n + 2).unwrap().det();
            ensure(d == (7 - n as i64).into(), || format!("det E{} = {d}", n + 2))?;
        }
        Ok("A_n++ (n=2..10), D_n++ (n=4..10), E_{n+2} (n=3..10)".into())
    })();
    report("3 determinant identities", t, Some(Duration::from_secs(1)), r);
}

#[test]
fn criterion_4_necessary_checks() {
    let t = Instant::now();
    let r = (|| {
        let det_refuted = |a: &Gcm, b: &Gcm| {
            criteria::necessary_checks(a, b)
                .map(|r| r.is_refuted() && r.reasons.iter().any(|x| matches!(x, Reason::DetNotMultiple { .. })))
                .unwrap_or(false)
        };
        for n in 16..=24 {
            let e = families::e_series(n + 2).unwrap();
            ensure(det_refuted(&e, &families::overextended('A', n).unwrap()), || format!("A{n}++ in E{}", n + 2))?;
        }
        for n in 12..=24 {
            let e = families::e_series(n + 2).unwrap();
            ensure(det_refuted(&e, &families::overextended('D', n).unwrap()), || format!("D{n}++ in E{}", n + 2))?;
        }
        let g2 = families::g2();
        let mut count = 0;
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4"] {
            let x = families::finite(name).unwrap();
            let ok = criteria::necessary_checks(&x, &g2).unwrap().reasons.contains(&Reason::RootLengthRatio);
            ensure(ok, || format!("G2 in {name} not refuted by root lengths"))?;
            count += 1;
        }
        Ok(format!("determinant refutations for n=16..24 (A) and n=12..24 (D); G2 refuted in {count} finite types"))
    })();
    report("4 necessary-condition reproductions", t, None, r);
}

fn rows(g: &Gcm) -> Vec<Vec<i64>> {
    g.rows()
}

#[test]
fn criterion_5_mod_d() {
    let t = Instant::now();
    let r = (|| {
        let a1 = families::a(1).unwrap();
        let a2 = families::a(2).unwrap();
        let a2a1 = from_edges(3, &[(0, 1, -1, -1)]);
        let a1a1 = Gcm::identity_type(2);
        let cases = [
            (&a1, 2, rows(&a2), false),
            (&a2, 2, rows(&a2a1), false),
            (&a1, 3, rows(&a1a1), false),
            (&a2, 2, rows(&a2), true),
        ];
        for (y, d, m, want) in cases {
            let got = criteria::mod_d_realizable(y, d, &m).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("mod_d_realizable({y:?}, {d}, {m:?}) = {got}"))?;
        }
        for (x, b) in [(219, 163), (218, 162)] {
            let ruling = criteria::forbidden_check(&serial_gcm(x).unwrap(), &serial_gcm(b).unwrap()).unwrap();
            ensure(ruling.is_refuted(), || format!("G{b} in G{x} not refuted"))?;
        }
        Ok("four mod-d cases; G163 not below G219, G162 not below G218".into())
    })();
    report("5 mod-d obstructions", t, Some(Duration::from_secs(1)), r);
}

fn cert(app: pisys::Result<PrincipleApplication>) -> Result<Certificate, String> {
    let app = app.map_err(|e| format!("{e:?}"))?;
    let c = Certificate::from_principle(&app);
    let v = search::verify(&c);
    ensure(v.ok, || format!("{:?}", v.reasons))?;
    Ok(c)
}

fn is_type(c: &Certificate, serial: u32) -> Result<(), String> {
    let want = serial_gcm(serial).unwrap();
    ensure(c.target.is_isomorphic(&want).unwrap(), || format!("type is {:?}, not G{serial}", c.target.edge_list()))
}

fn in_ambient(c: &Certificate, serial: u32) -> Result<(), String> {
    let want = serial_gcm(serial).unwrap();
    ensure(c.ambient.is_isomorphic(&want).unwrap(), || format!("ambient is not G{serial}"))
}

#[test]
fn criterion_6_constructions() {
    let t = Instant::now();
    let g = |s| serial_gcm(s).unwrap();
    let mut items: Vec<(&str, Result<String, String>)> = Vec::new();

    items.push(("G207 <= G219 (A)", cert(principles::apply_a(&g(219), 1, 0)).and_then(|c| is_type(&c, 207).map(|_| String::new()))));
    items.push(("G150 <= G159 (A)", cert(principles::apply_a(&g(159), 1, 0)).and_then(|c| is_type(&c, 150).map(|_| String::new()))));
    items.push((
        "G129 <= G159 (B, long root of G2)",
        cert(principles::apply_b_at(&g(159), &[1, 2, 3], 2)).and_then(|c| is_type(&c, 129).map(|_| String::new())),
    ));
    items.push(("G130 <= G160 (B, short root of G2)", {
        let b = principles::apply_b_at(&g(160), &[1, 2, 3], 2);
        let s = search::find_pisystem_default(&g(160), &g(130));
        match (b, s) {
            (Ok(app), _) => cert(Ok(app)).and_then(|c| is_type(&c, 130).map(|_| String::new())),
            (Err(e), Ok(SearchOutcome::Found(c))) => {
                ensure(search::verify(&c).ok, || "search certificate does not verify".into())
                    .map(|_| format!("principle B gives {e:?}; certified by search instead"))
            }
            (Err(e), s) => Err(format!(
                "principle B gives {e:?}; search gives {}",
                s.map(|o| format!("{:?}", std::mem::discriminant(&o))).unwrap_or_else(|e| e.to_string())
            )),
        }
    }));
    items.push(("G222 <= G226 <= G231 <= G236 (C)", (|| {
        let c1 = cert(principles::apply_c(&g(236), &[4, 5]))?;
        is_type(&c1, 231)?;
        let c2 = cert(principles::apply_c(&c1.target, &[4, 5]))?;
        is_type(&c2, 226)?;
        let c3 = cert(principles::apply_c(&c2.target, &[4, 5]))?;
        is_type(&c3, 222)?;
        let all = search::compose(&search::compose(&c1, &c2).map_err(|e| e.to_string())?, &c3).map_err(|e| e.to_string())?;
        ensure(search::verify(&all).ok, || "composed chain does not verify".into())?;
        Ok("composed G222 <= G236 verifies".into())
    })()));
    items.push((
        "G106 from G163 (B then D)",
        cert(principles::apply_b_then_d(&g(163), &[1, 2, 3], &[1, 0, 0], &[3])).and_then(|c| is_type(&c, 106).map(|_| String::new())),
    ));
    items.push(("G220 <= G218 (E)", cert(principles::apply_e(&g(218), 3, 4)).and_then(|c| is_type(&c, 220).map(|_| String::new()))));
    items.push(("G161 <= G160 (E)", cert(principles::apply_e(&g(160), 2, 3)).and_then(|c| is_type(&c, 161).map(|_| String::new()))));
    items.push(("G90 <= G123 (E on rank 3)", (|| {
        let mut n = 0;
        for e in catalog::enumerate_hyperbolic(3, 3, true).unwrap() {
            let x = &e.gcm;
            for p in 0..3 {
                for q in 0..3 {
                    if p != q && x.get(q, p) == -1 && x.get(p, q) < -1 {
                        cert(principles::apply_e(x, p, q))?;
                        n += 1;
                    }
                }
            }
        }
        Ok(format!("{n} applications on rank-3 diagrams verify (these two serials are not reconstructible)"))
    })()));
    items.push(("G212 <= G223 (B, C, E chain)", (|| {
        let b = cert(principles::apply_b_at(&g(223), &[1, 2, 3, 4, 5, 6], 5))?;
        let c = cert(principles::apply_c(&b.target, &[0, 1]))?;
        let bc = search::compose(&b, &c).map_err(|e| e.to_string())?;
        let e = cert(principles::apply_e(&c.target, 0, 4)).or_else(|_| cert(principles::apply_e(&c.target, 3, 4)))?;
        let chain = search::compose(&bc, &e).map_err(|e| e.to_string())?;
        ensure(search::verify(&chain).ok, || "chain does not verify".into())?;
        let found = search::find_pisystem_default(&g(223), &g(212)).map_err(|e| e.to_string())?;
        let c = found.certificate().ok_or("search did not certify G212 <= G223")?;
        ensure(search::verify(&c).ok, || "search certificate does not verify".into())?;
        Ok(format!(
            "relation certified by search; the chain composes and verifies with type det {}{}",
            chain.target.det(),
            if chain.target.is_isomorphic(&g(212)).unwrap() { "" } else { " (not the drawn G212)" }
        ))
    })()));
    for (case, amb, tgt) in [(StarCase::I, 157, 91), (StarCase::II, 191, 158), (StarCase::III, 160, 172), (StarCase::IV, 218, 214)] {
        let r = cert(principles::apply_star(&g(amb), case)).and_then(|c| {
            in_ambient(&c, amb)?;
            is_type(&c, tgt)?;
            Ok(String::new())
        });
        items.push((["star I: G91 <= G157", "star II: G158 <= G191", "star III: G172 <= G160", "star IV: G214 <= G218"][case as usize], r));
    }

    let mut failed = Vec::new();
    for (name, r) in &items {
        let line = match r {
            Ok(d) => format!("  ok   {name} {d}\n"),
            Err(d) => {
                failed.push(*name);
                format!("  fail {name}: {d}\n")
            }
        };
        let _ = std::io::stderr().write_all(line.as_bytes());
    }
    let r = if failed.is_empty() {
        Ok(format!("{} constructions verified", items.len()))
    } else {
        Err(format!("{} of {} constructions fail: {}", failed.len(), items.len(), failed.join(", ")))
    };
    report("6 named constructions", t, mins(1), r);
}

#[test]
fn criterion_7_e10() {
    let t = Instant::now();
    let r = (|| {
        let e10 = families::e_series(10).unwrap();
        for s in ['A', 'D'] {
            let b = families::overextended(s, 8).unwrap();
            let out = search::find_pisystem_default(&e10, &b).map_err(|e| e.to_string())?;
            let c = out.certificate().ok_or(format!("{s}8++ not found"))?;
            ensure(search::verify(&c).ok, || format!("{s}8++ certificate does not verify"))?;
        }
        Ok("A8++ and D8++ certified in E10".into())
    })();
    report("7 E10 embeddings", t, mins(10), r);
}

/// (X, Y, d) with the divisibility hypothesis, drawn from the catalog and
/// the finite types with a multiple edge.
fn bar_setups() -> Vec<(Gcm, Vec<usize>, i64)> {
    let mut xs: Vec<Gcm> = catalog::enumerate_hyperbolic(3, 6, true).unwrap().into_iter().map(|e| e.gcm).collect();
    for name in ["B3", "B4", "C3", "C4", "F4", "G2"] {
        xs.push(families::finite(name).unwrap());
    }
    let mut out = Vec::new();
    for x in xs {
        let n = x.rank();
        for d in [2, 3] {
            for mask in 1u32..(1 << n) - 1 {
                let y: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                if criteria::divisibility_hypothesis(&x, &y, d).is_ok() {
                    out.push((x.clone(), y, d));
                }
            }
        }
    }
    out
}

#[test]
fn criterion_8a_bar_reduce() {
    let t = Instant::now();
    let setups = bar_setups();
    let mut rng = common::rng(8);
    let r = (|| {
        let mut done = 0;
        while done < 1000 {
            let (x, y, d) = setups.choose(&mut rng).unwrap();
            let ctx = RootContext::new(x.clone()).unwrap();
            let f = Form::new(x);
            let m = rng.gen_range(1..=4);
            let sigma: Vec<Vec<i64>> = (0..m)
                .map(|_| {
                    let p = *y.choose(&mut rng).unwrap();
                    let mut s = vec![0; x.rank()];
                    s[p] = if rng.gen_bool(0.5) { 1 } else { -1 };
                    let w = common::random_word(&mut rng, x.rank(), 7);
                    common::apply_word(x, &w, &s)
                })
                .collect();
            let bar = criteria::bar_reduce(&ctx, y, *d, &sigma).map_err(|e| e.to_string())?;
            let before = f.matrix(&sigma);
            for (i, row) in before.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    ensure((v - bar.matrix[i][j]) % d == 0, || format!("{x:?} Y={y:?} d={d}: {before:?} vs {:?}", bar.matrix))?;
                }
            }
            ensure(bar.matrix == f.matrix(&bar.roots), || "reduced matrix is not the pairing of the reduced roots".into())?;
            for b in &bar.roots {
                ensure(b.iter().enumerate().all(|(i, &c)| c == 0 || y.contains(&i)), || "reduced root leaves Y".into())?;
                ensure(common::classify_vector(x, b) == Class::Real, || "reduced vector is not a real root".into())?;
            }
            done += 1;
        }
        Ok(format!("{done} instances over {} (X, Y, d) setups", setups.len()))
    })();
    report("8a bar reduction congruence", t, mins(15), r);
}

#[test]
fn criterion_8b_root_membership() {
    let t = Instant::now();
    let r = (|| {
        let cat = catalog::enumerate_hyperbolic(3, 10, true).unwrap();
        let mut rng = common::rng(80);
        let mut ambients: Vec<Gcm> = Vec::new();
        for rank in 3..=10 {
            let of_rank: Vec<&Gcm> = cat.iter().filter(|e| e.rank == rank).map(|e| &e.gcm).collect();
            ambients.extend(of_rank.choose_multiple(&mut rng, 4).map(|g| (*g).clone()));
        }
        for name in ["A4", "B3", "G2", "F4", "E8", "A3^(1)", "G2^(1)", "D4^(3)", "A4^(2)", "E8^(1)"] {
            ambients.push(families::by_name(name).unwrap());
        }
        let mut checked = 0usize;
        for a in &ambients {
            let ctx = RootContext::new(a.clone()).unwrap();
            let oracle = common::real_roots_upto(a, 10);
            let bfs: HashSet<Vec<i64>> = ctx.real_roots_bounded(Some(10)).unwrap().into_iter().collect();
            ensure(bfs == oracle, || format!("{a:?}: enumeration differs from oracle"))?;
            let n = a.rank();
            let mut v = vec![0i64; n];
            // all nonnegative vectors of height 1..=10
            let mut each = |x: &[i64]| -> Result<(), String> {
                let got = ctx.is_root(x).map_err(|e| e.to_string())?;
                let want = common::classify_vector(a, x);
                let same = matches!(
                    (got, want),
                    (pisys::roots::RootStatus::RealRoot, Class::Real)
                        | (pisys::roots::RootStatus::ImaginaryRoot, Class::Imaginary)
                        | (pisys::roots::RootStatus::NotRoot, Class::Not)
                );
                ensure(same, || format!("{a:?} at {x:?}: {got:?} vs {want:?}"))?;
                ensure(bfs.contains(x) == (want == Class::Real), || format!("{x:?} membership"))?;
                Ok(())
            };
            fn walk(i: usize, left: i64, v: &mut Vec<i64>, f: &mut dyn FnMut(&[i64]) -> Result<(), String>, count: &mut usize) -> Result<(), String> {
                if i == v.len() {
                    if left < 10 {
                        *count += 1;
                        f(v)?;
                    }
                    return Ok(());
                }
                for c in 0..=left {
                    v[i] = c;
                    walk(i + 1, left - c, v, f, count)?;
                }
                v[i] = 0;
                Ok(())
            }
            walk(0, 10, &mut v, &mut each, &mut checked)?;
            // mixed-sign vectors are never roots
            for _ in 0..2000 {
                let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                if x.iter().any(|&c| c > 0) && x.iter().any(|&c| c < 0) {
                    let got = ctx.is_root(&x).unwrap();
                    ensure(got == pisys::roots::RootStatus::NotRoot, || format!("{a:?}: mixed {x:?} gives {got:?}"))?;
                }
            }
        }
        Ok(format!("{} ambients, {checked} lattice points up to height 10", ambients.len()))
    })();
    report("8b root membership oracle", t, mins(15), r);
}

#[test]
fn criterion_8c_principle_applications() {
    let t = Instant::now();
    let r = (|| {
        let cat = catalog::enumerate_hyperbolic(3, 10, true).unwrap();
        let mut pool: Vec<Certificate> = Vec::new();
        for e in &cat {
            pool.extend(maximality::principle_moves(&e.gcm));
        }
        let mut rng = common::rng(800);
        let sample: Vec<&Certificate> = pool.choose_multiple(&mut rng, 200).collect();
        for c in &sample {
            let f = Form::new(&c.ambient);
            let m = f.matrix(&c.roots);
            ensure(m == c.target.rows(), || format!("{:?}: pairing {m:?} vs predicted {:?}", c.provenance, c.target.rows()))?;
            ensure(common::is_pi_system(&c.ambient, &c.roots), || format!("{:?}: not a pi-system", c.provenance))?;
            ensure(common::rank(&c.roots) == c.roots.len(), || format!("{:?}: dependent", c.provenance))?;
        }
        Ok(format!("{} applications sampled from {}", sample.len(), pool.len()))
    })();
    report("8c principle applications", t, mins(15), r);
}

#[test]
fn criterion_8d_antisymmetry() {
    let t = Instant::now();
    let r = (|| {
        let cat = catalog::enumerate_hyperbolic(3, 10, true).unwrap();
        let mut rng = common::rng(8000);
        let with_partner: Vec<usize> = (0..cat.len())
            .filter(|&i| cat.iter().enumerate().any(|(j, e)| j != i && e.rank == cat[i].rank && e.det == cat[i].det))
            .collect();
        let sample: Vec<usize> = with_partner.choose_multiple(&mut rng, 20).copied().collect();
        ensure(sample.len() == 20, || format!("only {} ambients have a same-rank same-det partner", sample.len()))?;
        let mut pairs = 0;
        for &i in &sample {
            let ctx = RootContext::new(cat[i].gcm.clone()).unwrap();
            for (j, e) in cat.iter().enumerate() {
                if j == i || e.rank != cat[i].rank || e.det != cat[i].det {
                    continue;
                }
                let out = search::search_raw(&ctx, &e.gcm, 8, 10_000_000).map_err(|e| e.to_string())?;
                ensure(!matches!(out, SearchOutcome::Found(_)), || format!("#{j} found below #{i}"))?;
                ensure(!matches!(out, SearchOutcome::BudgetExhausted), || format!("#{j} in #{i}: budget exhausted"))?;
                pairs += 1;
            }
        }
        Ok(format!("{pairs} same-rank same-det pairs over 20 ambients, none certified"))
    })();
    report("8d anti-symmetry spot check", t, mins(15), r);
}
