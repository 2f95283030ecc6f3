//! One PASS/FAIL line per acceptance criterion. Counts and time limits
//! are pinned below; a panic inside a check counts as FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use noether::axioms::axiom_suite;
use noether::gen::{random_quotient_triple, random_zigzag, Pool};
use noether::groups::{self, groups_up_to_8};
use noether::lemma::{
    four_dual_roles, salamander, sample_instance, template, verify_lemma, Diagram, SampleOptions,
};
use noether::pyramid::{build_pyramid, induced_morphism, quotient_iso, Apex, BuildOptions, BuildOrder};
use noether::report::Status;
use noether::slominski::{mask_of, Algebra, Hom, SlominskiForm};
use noether::zigzag::{decide_induction, image_maps, induced_relation};
use noether::{dualize, Form};

const AXIOM_TIME: Duration = Duration::from_secs(10);
const SNAKE_TIME: Duration = Duration::from_secs(1);
const SNAKE_ORDERS: [usize; 6] = [1, 1, 2, 2, 2, 2];
const HIT_ZIGZAGS: usize = 200;
const HIT_MAX_LEN: usize = 6;
const PYRAMID_ZIGZAGS: usize = 50;
const LEMMA_INSTANCES: usize = 100;
const LEMMAS: [&str; 7] = ["four", "five", "3x3", "short-five", "spider", "incomplete-snail", "square-exact"];
const QUOTIENT_TRIPLES: usize = 100;
const SALAMANDER_COMPLEXES: usize = 20;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axioms() -> Verdict {
    let start = Instant::now();
    let mut n = 0;
    for g in groups_up_to_8() {
        let form = SlominskiForm::full(vec![g.clone()]);
        let r = axiom_suite(&form, true);
        ensure(r.passed(), || format!("{}: {}", g.name(), r.failures().next().unwrap()))?;
        let r = axiom_suite(&dualize(&form), true);
        ensure(r.passed(), || format!("dual {}: {}", g.name(), r.failures().next().unwrap()))?;
        n += 2;
    }
    let t = start.elapsed();
    ensure(t < AXIOM_TIME, || format!("took {t:?}"))?;
    Ok(format!("{n} forms with Axiom 6 in {t:.2?}"))
}

fn d8_snake() -> Verdict {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/d8_snake.nf");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_noether")).arg("snake").arg(&fixture).output().unwrap();
    let t = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("exit {:?}: {text}", out.status.code()))?;
    let orders: Vec<usize> =
        text.lines().take(6).map(|l| l.rsplit(' ').next().unwrap().parse().unwrap()).collect();
    ensure(orders == SNAKE_ORDERS, || format!("orders {orders:?}"))?;
    let exact = text.lines().filter(|l| l.starts_with("PASS exact:")).count();
    ensure(exact == 4, || format!("{exact} exact lines"))?;
    ensure(t < SNAKE_TIME, || format!("took {t:?}"))?;

    let form = SlominskiForm::open();
    let d8 = groups::d8();
    let b = d8.sub_index(mask_of(&[0, 4])).unwrap();
    let v = d8.sub_index(mask_of(&[0, 2, 4, 6])).unwrap();
    ensure(!d8.is_normal_subalgebra(d8.sub_mask(b)), || "{e,b} normal in D8".into())?;
    ensure(form.is_relatively_normal(&d8, b, v), || "{e,b} not normal relative to V".into())?;
    Ok(format!("orders {orders:?}, 4 exact, {t:.2?}"))
}

fn hit() -> Verdict {
    let form = SlominskiForm::open();
    let mut pool = Pool::small_groups();
    let mut rng = StdRng::seed_from_u64(101);
    let mut induced = 0;
    for k in 0..HIT_ZIGZAGS {
        let len = rng.gen_range(0..=HIT_MAX_LEN);
        let z = random_zigzag(&mut rng, &mut pool, len);
        let verdict = decide_induction(&form, &z);
        let rel = induced_relation(&z);
        ensure(verdict.induces() == rel.is_function(), || format!("zigzag {k}: verdict disagrees"))?;
        if let Some(m) = verdict.morphism() {
            induced += 1;
            let (x, y) = (z.start(), z.end());
            for a in form.subs(x) {
                ensure(y.sub_index(rel.image(x.sub_mask(a))) == Some(m.dimg[a]), || format!("zigzag {k}: image"))?;
            }
            for b in form.subs(y) {
                ensure(x.sub_index(rel.preimage(y.sub_mask(b))) == Some(m.iimg[b]), || {
                    format!("zigzag {k}: preimage")
                })?;
            }
        }
    }
    Ok(format!("{HIT_ZIGZAGS} zigzags, {induced} induce"))
}

fn pyramids() -> Verdict {
    let form = SlominskiForm::open();
    let mut pool = Pool::small_groups();
    let mut rng = StdRng::seed_from_u64(202);
    let orders = [
        BuildOptions { order: BuildOrder::Layered, apex: Apex::Quotient },
        BuildOptions { order: BuildOrder::Diagonal, apex: Apex::Quotient },
        BuildOptions { order: BuildOrder::Diagonal, apex: Apex::Image },
    ];
    let (mut tried, mut done) = (0, 0);
    while done < PYRAMID_ZIGZAGS {
        tried += 1;
        ensure(tried < 50 * PYRAMID_ZIGZAGS, || format!("only {done} inducing zigzags"))?;
        let len = rng.gen_range(1..=HIT_MAX_LEN);
        let z = random_zigzag(&mut rng, &mut pool, len);
        let Some(m) = decide_induction(&form, &z).morphism().cloned() else {
            continue;
        };
        for opts in orders {
            let p = build_pyramid(&form, &z, opts).map_err(|e| e.to_string())?;
            let r = p.check_invariants(&form);
            ensure(r.passed(), || format!("zigzag {done} {opts:?}: {}", r.failures().next().unwrap()))?;
            ensure(r.status("diamonds") == Some(Status::Pass), || "diamonds not checked".into())?;
            let f = induced_morphism(&form, &z, opts).map_err(|e| e.to_string())?;
            let maps = image_maps(&form, &f);
            ensure(maps.dimg == m.dimg && maps.iimg == m.iimg, || format!("zigzag {done} {opts:?}: maps differ"))?;
        }
        done += 1;
    }
    Ok(format!("{done} inducing zigzags of {tried}, {} builds", done * orders.len()))
}

fn lemma_corpus() -> Verdict {
    let form = SlominskiForm::open();
    let mut pool = Pool::lemma_pool();
    let mut parts = 0;
    for (k, name) in LEMMAS.iter().enumerate() {
        let t = template(name).unwrap();
        for (j, part) in t.parts.iter().enumerate() {
            let mut rng = StdRng::seed_from_u64(300 + 10 * k as u64 + j as u64);
            for i in 0..LEMMA_INSTANCES {
                let d = sample_instance(&mut rng, &mut pool, &t, Some(&part.name), SampleOptions::default())
                    .ok_or_else(|| format!("{name} {}: no instance {i}", part.name))?;
                let o = verify_lemma(&form, &t, &d).map_err(|e| e.to_string())?;
                let p = o.part(&part.name).unwrap();
                ensure(p.applicable, || format!("{name} {}: instance {i} not valid", part.name))?;
                ensure(p.holds, || format!("{name} {}: REFUTED on {d:?}", part.name))?;
            }
            parts += 1;
        }
    }
    let t = template("four").unwrap();
    let dual = dualize(&form);
    let (objs, arrows) = four_dual_roles();
    let mut rng = StdRng::seed_from_u64(399);
    for i in 0..LEMMA_INSTANCES {
        let d = sample_instance(&mut rng, &mut pool, &t, Some("ii"), SampleOptions::default())
            .ok_or_else(|| format!("four ii: no instance {i}"))?;
        let a = verify_lemma(&form, &t, &d).map_err(|e| e.to_string())?;
        let b = verify_lemma(&dual, &t, &d.rebind(&objs, &arrows)).map_err(|e| e.to_string())?;
        let (pa, pb) = (a.part("ii").unwrap(), b.part("i").unwrap());
        ensure(pa == &noether::lemma::PartOutcome { name: "ii".into(), ..pb.clone() }, || {
            format!("four duality differs on instance {i}")
        })?;
    }
    Ok(format!("{parts} parts x {LEMMA_INSTANCES} instances, four duality x {LEMMA_INSTANCES}"))
}

fn quotients() -> Verdict {
    let form = SlominskiForm::open();
    // Uniform triples rarely have W non-normal in X; the second pool puts
    // a non-abelian group in every domain.
    let nonabelian = Pool::new(vec![groups::by_name("S3").unwrap(), groups::d8()]);
    let (mut total, mut normal) = (0, 0);
    for (seed, mut pool) in [(404, Pool::small_groups()), (405, nonabelian)] {
        let mut rng = StdRng::seed_from_u64(seed);
        for k in 0..QUOTIENT_TRIPLES {
            let (f, w, x) = random_quotient_triple(&mut rng, &mut pool);
            let q = quotient_iso(&form, &f, w, x).map_err(|e| format!("triple {k}: {e}"))?;
            ensure(q.holds(), || format!("triple {k}: {f:?} W={w} X={x}"))?;
            normal += q.w_normal as usize;
            total += 1;
        }
    }
    ensure(normal < total, || "no triple with W non-normal in X".into())?;
    Ok(format!("{total} triples, {} with W not normal in X", total - normal))
}

fn hom(dom: &Arc<Algebra>, cod: &Arc<Algebra>, map: &[usize]) -> Hom {
    Hom::new("h", dom.clone(), cod.clone(), map.to_vec()).unwrap()
}

/// A double complex whose middle homology is `Ker e / Im d` with `Im d`
/// the non-normal `{e,b}` of D8.
fn unguarded() -> Diagram<Arc<Algebra>, Hom> {
    let (one, z2, d8) = (groups::trivial(), groups::cyclic(2), groups::d8());
    let mut d = Diagram::new("double-complex").arrow("d", hom(&z2, &d8, &[0, 4]));
    for (name, dom, cod) in [
        ("a", &one, &one),
        ("k", &one, &one),
        ("e", &d8, &one),
        ("s", &one, &one),
        ("l", &one, &one),
        ("t", &one, &one),
        ("m", &one, &one),
        ("c", &one, &d8),
        ("j", &one, &z2),
        ("v", &one, &one),
        ("f", &d8, &one),
        ("g", &one, &one),
        ("n", &one, &one),
        ("u", &one, &one),
    ] {
        d = d.arrow(name, hom(dom, cod, &vec![0; dom.order()]));
    }
    d
}

fn salamanders() -> Verdict {
    let form = SlominskiForm::open();
    let t = template("double-complex").unwrap();
    let mut rng = StdRng::seed_from_u64(505);
    let mut pool = Pool::elementary_abelian();
    for i in 0..SALAMANDER_COMPLEXES {
        let d = sample_instance(&mut rng, &mut pool, &t, None, SampleOptions::default())
            .ok_or_else(|| format!("no complex {i}"))?;
        let out = salamander(&form, &d).map_err(|e| e.to_string())?;
        ensure(out.passed(), || format!("complex {i}: {}", out.report))?;
    }
    let out = salamander(&form, &unguarded()).map_err(|e| e.to_string())?;
    ensure(out.sequence.is_none(), || "unguarded complex gave a sequence".into())?;
    let undefined: Vec<&str> = out
        .report
        .lines
        .iter()
        .filter(|l| l.status == Status::Fail && l.name.starts_with("defined:"))
        .map(|l| l.name.as_str())
        .collect();
    ensure(!undefined.is_empty(), || "no undefinedness reported".into())?;
    // Complexes with non-normal images: every outcome is a report.
    let mut pool = Pool::lemma_pool();
    let mut reported = 0;
    for i in 0..SALAMANDER_COMPLEXES {
        let d = sample_instance(&mut rng, &mut pool, &t, None, SampleOptions::default())
            .ok_or_else(|| format!("no mixed complex {i}"))?;
        let out = salamander(&form, &d).map_err(|e| e.to_string())?;
        ensure(out.passed() || !out.report.passed(), || format!("mixed complex {i}: silent failure"))?;
        reported += !out.passed() as usize;
    }
    Ok(format!(
        "{SALAMANDER_COMPLEXES} exact; unguarded reports {}; {reported} of {SALAMANDER_COMPLEXES} mixed reported",
        undefined.join(" ")
    ))
}

fn rml() -> Verdict {
    let form = SlominskiForm::open();
    let (mut triples, mut qualifying) = (0, 0);
    for g in groups_up_to_8() {
        for a in form.subs(&g) {
            for b in form.subs(&g) {
                for c in form.subs(&g) {
                    triples += 1;
                    match form.restricted_modular_law_check(&g, a, b, c) {
                        Some(true) => qualifying += 1,
                        Some(false) => return Err(format!("{}: ({a}, {b}, {c})", g.name())),
                        None => {}
                    }
                }
            }
        }
    }
    Ok(format!("{qualifying} qualifying of {triples} triples"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("axiom-conformance", axioms),
        ("d8-snake", d8_snake),
        ("hit-relation-oracle", hit),
        ("pyramid-uniqueness", pyramids),
        ("lemma-corpus", lemma_corpus),
        ("quotient-isomorphism", quotients),
        ("salamander", salamanders),
        ("restricted-modular-law", rml),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match v {
            Ok(msg) => println!("PASS {name}: {msg} [{t:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} [{t:.2?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
