use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use noether::gen::Pool;
use noether::groups;
use noether::lemma::{
    dragon, four_dual_roles, generalized_snail, goursat, is_exact_at, salamander, sample_instance, snake,
    strongly_short_exact_check, template, verify_lemma, Assertion, Diagram, Instance, SampleOptions, Template,
};
use noether::report::Status;
use noether::slominski::{Algebra, Hom, SlominskiForm};
use noether::{dualize, Form};

fn hom(name: &str, dom: &Arc<Algebra>, cod: &Arc<Algebra>, map: &[usize]) -> Hom {
    Hom::new(name, dom.clone(), cod.clone(), map.to_vec()).unwrap()
}

fn zero(name: &str, dom: &Arc<Algebra>, cod: &Arc<Algebra>) -> Hom {
    hom(name, dom, cod, &vec![cod.zero(); dom.order()])
}

fn nontrivial(d: &Instance) -> bool {
    let nz = d.arrows.values().filter(|h| h.map().iter().any(|&x| x != 0)).count();
    nz * 4 >= d.arrows.len()
}

struct Tally {
    found: usize,
    applicable: usize,
    refuted: usize,
    nontrivial: usize,
}

fn tally(t: &Template, part: &str, n: usize, seed: u64, pool: &mut Pool) -> Tally {
    let form = SlominskiForm::open();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Tally { found: 0, applicable: 0, refuted: 0, nontrivial: 0 };
    for _ in 0..n {
        let Some(d) = sample_instance(&mut rng, pool, t, Some(part), SampleOptions::default()) else {
            continue;
        };
        out.found += 1;
        out.nontrivial += nontrivial(&d) as usize;
        let o = verify_lemma(&form, t, &d).unwrap();
        let p = o.part(part).unwrap();
        out.applicable += p.applicable as usize;
        if p.refuted() {
            out.refuted += 1;
            eprintln!("{} {part} refuted:\n{:?}", t.name, o.report);
        }
    }
    out
}

fn no_refutations(name: &str, n: usize) {
    let t = template(name).unwrap();
    let mut pool = Pool::lemma_pool();
    for (k, p) in t.parts.iter().enumerate() {
        let r = tally(&t, &p.name, n, 11 + k as u64, &mut pool);
        assert_eq!(r.found, n, "{name} {}", p.name);
        assert_eq!(r.applicable, n, "{name} {}", p.name);
        assert_eq!(r.refuted, 0, "{name} {}", p.name);
        assert!(r.nontrivial * 4 >= n, "{name} {}: only {} nontrivial", p.name, r.nontrivial);
    }
}

#[test]
fn four() {
    no_refutations("four", 100);
}

#[test]
fn five() {
    no_refutations("five", 100);
}

#[test]
fn three_by_three() {
    no_refutations("3x3", 100);
}

#[test]
fn short_five() {
    no_refutations("short-five", 100);
}

#[test]
fn spider() {
    no_refutations("spider", 100);
}

#[test]
fn incomplete_snail() {
    no_refutations("incomplete-snail", 100);
}

#[test]
fn square_exact() {
    no_refutations("square-exact", 100);
}

#[test]
fn diamond() {
    no_refutations("diamond", 100);
}

#[test]
fn double_diamond() {
    no_refutations("double-diamond", 100);
}

#[test]
fn baby_dragon() {
    no_refutations("baby-dragon", 100);
}

#[test]
fn strongly_short_exact() {
    no_refutations("strongly-short-exact", 100);
}

#[test]
fn dragons() {
    for m in 1..=2 {
        no_refutations(&format!("dragon:{m}"), 100);
    }
    let t = dragon(3);
    let mut pool = Pool::lemma_pool();
    for p in ["i", "ii"] {
        let r = tally(&t, p, 20, 5, &mut pool);
        assert_eq!((r.found, r.refuted), (20, 0));
    }
}

/// Dropping a needed hypothesis must let the sampler find a refutation.
#[test]
fn sampler_finds_refutations() {
    let mut t = template("short-five").unwrap();
    let i = t.parts.iter().position(|p| p.name == "i").unwrap();
    t.parts[i].hypotheses.retain(|h| h.to_string() != "injective s");
    assert_eq!(t.parts[i].hypotheses.len(), 1);
    let r = tally(&t, "i", 200, 3, &mut Pool::lemma_pool());
    assert!(r.refuted > 0);
}

/// Part (ii) on a diagram is part (i) on the mirrored diagram over the
/// dual form, down to the computed details.
#[test]
fn four_is_self_dual() {
    let t = template("four").unwrap();
    let form = SlominskiForm::open();
    let dual = dualize(&form);
    let (objs, arrows) = four_dual_roles();
    let mut pool = Pool::lemma_pool();
    let mut rng = StdRng::seed_from_u64(21);
    for (primal, mirrored) in [("ii", "i"), ("i", "ii")] {
        for _ in 0..100 {
            let d = sample_instance(&mut rng, &mut pool, &t, Some(primal), SampleOptions::default()).unwrap();
            let a = verify_lemma(&form, &t, &d).unwrap();
            let b = verify_lemma(&dual, &t, &d.rebind(&objs, &arrows)).unwrap();
            assert!(b.hypotheses);
            let (pa, pb) = (a.part(primal).unwrap(), b.part(mirrored).unwrap());
            assert_eq!((pa.applicable, pa.holds), (pb.applicable, pb.holds));
            assert_eq!(pa.details, pb.details);
        }
    }
}

#[test]
fn exactness_is_self_dual() {
    let form = SlominskiForm::open();
    let dual = dualize(&form);
    let mut pool = Pool::small_groups();
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..500 {
        let n = pool.len();
        let (a, b, c) = (
            rand::Rng::gen_range(&mut rng, 0..n),
            rand::Rng::gen_range(&mut rng, 0..n),
            rand::Rng::gen_range(&mut rng, 0..n),
        );
        let f = pool.random_hom(&mut rng, a, b);
        let g = pool.random_hom(&mut rng, b, c);
        assert_eq!(is_exact_at(&form, &f, &g).unwrap(), is_exact_at(&dual, &g, &f).unwrap());
    }
}

/// Rows `1 -> Z2 -> Z2`, `Z2 -> Z2^2 -> Z2`, `Z2 -> Z2 -> 1` with exact
/// columns. The middle row is not exact because `y.x` is not zero.
fn three_by_three_counterexample() -> Diagram<Arc<Algebra>, Hom> {
    let (one, z2, k4) = (groups::trivial(), groups::cyclic(2), groups::elementary_abelian_2(2));
    Diagram::new("3x3")
        .arrow("f", zero("f", &one, &z2))
        .arrow("g", hom("g", &z2, &z2, &[0, 1]))
        .arrow("s", zero("s", &one, &z2))
        .arrow("i", hom("i", &z2, &z2, &[0, 1]))
        .arrow("t", hom("t", &z2, &k4, &[0, 2]))
        .arrow("j", hom("j", &k4, &z2, &[0, 1, 0, 1]))
        .arrow("u", hom("u", &z2, &z2, &[0, 1]))
        .arrow("k", zero("k", &z2, &one))
        .arrow("x", hom("x", &z2, &k4, &[0, 3]))
        .arrow("y", hom("y", &k4, &z2, &[0, 0, 1, 1]))
        .arrow("m", hom("m", &z2, &z2, &[0, 1]))
        .arrow("n", zero("n", &z2, &one))
}

#[test]
fn three_by_three_middle_needs_zero_composite() {
    let form = SlominskiForm::open();
    let d = three_by_three_counterexample();
    let t = template("3x3").unwrap();
    let o = verify_lemma(&form, &t, &d).unwrap();
    assert!(o.hypotheses);
    let middle = o.part("middle").unwrap();
    assert!(!middle.applicable && !middle.refuted());
    assert_eq!(o.report.status("middle:hyp:zero(y.x)"), Some(Status::Skip));

    let mut weak = t.clone();
    let k = weak.parts.iter().position(|p| p.name == "middle").unwrap();
    weak.parts[k].hypotheses.retain(|h| !matches!(h, Assertion::Prop(..)));
    let o = verify_lemma(&form, &weak, &d).unwrap();
    assert!(o.part("middle").unwrap().refuted());
    assert_eq!(o.report.status("middle:short-exact(x,y)"), Some(Status::Fail));
}

/// `B = <b>` inside `V = <a^2, b>` inside `D8`: the rows `B -> V -> V/B`
/// and `V -> D8 -> D8/V`, with the inclusions down and zero on the right.
fn d8_snake() -> Diagram<Arc<Algebra>, Hom> {
    let d8 = groups::d8();
    let (v, f1) = d8.subalgebra(0b0101_0101).unwrap();
    let (b, incl_b) = d8.subalgebra(0b0001_0001).unwrap();
    // V keeps the order e, a^2, b, a^2 b.
    let f = hom("f", &b, &v, &[0, 2]);
    assert!(f.then(&f1) == incl_b);
    let (vb, g) = v.quotient(0b0101);
    let (d8v, g1) = d8.quotient(0b0101_0101);
    Diagram::new("snake")
        .arrow("f", f.clone())
        .arrow("g", g)
        .arrow("f'", f1.clone().with_name("f'"))
        .arrow("g'", g1)
        .arrow("alpha", f)
        .arrow("beta", f1)
        .arrow("gamma", zero("gamma", &vb, &d8v))
}

#[test]
fn snake_over_d8() {
    let form = SlominskiForm::open();
    let out = snake(&form, &d8_snake()).unwrap();
    assert!(out.passed(), "{:?}", out.report);
    let seq = out.sequence.unwrap();
    let orders: Vec<usize> = seq.nodes.iter().map(|n| n.object(&form).order()).collect();
    assert_eq!(orders, [1, 1, 2, 2, 2, 2]);
    for k in 1..5 {
        assert_eq!(out.report.status(&format!("exact:{}", out.names[k])), Some(Status::Pass));
    }
    // The connecting map is an isomorphism Ker gamma -> Coker alpha.
    let delta = &seq.maps[2];
    assert_eq!(delta.kernel(form.bottom(&seq.nodes[3].object(&form))), form.bottom(&seq.nodes[2].object(&form)));
    assert_eq!(delta.image(form.top(&seq.nodes[2].object(&form))), form.top(&seq.nodes[3].object(&form)));
}

fn sequences_exact(
    lemma: &str,
    pool: &mut Pool,
    n: usize,
    run: impl Fn(&SlominskiForm, &Instance) -> noether::lemma::SequenceOutcome<Arc<Algebra>, Hom>,
) {
    let form = SlominskiForm::open();
    let t = template(lemma).unwrap();
    let mut rng = StdRng::seed_from_u64(13);
    let mut rich = 0;
    for _ in 0..n {
        let d = sample_instance(&mut rng, pool, &t, None, SampleOptions::default()).unwrap();
        rich += nontrivial(&d) as usize;
        let out = run(&form, &d);
        assert!(out.passed(), "{lemma}: {:?}\n{d:?}", out.report);
    }
    assert!(rich * 4 >= n, "{lemma}: only {rich} nontrivial");
}

#[test]
fn snake_sequences_are_exact() {
    sequences_exact("snake", &mut Pool::lemma_pool(), 100, |f, d| snake(f, d).unwrap());
}

#[test]
fn generalized_snail_sequences_are_exact() {
    sequences_exact("generalized-snail", &mut Pool::lemma_pool(), 100, |f, d| generalized_snail(f, d).unwrap());
}

#[test]
fn salamander_sequences_are_exact() {
    sequences_exact("double-complex", &mut Pool::elementary_abelian(), 100, |f, d| salamander(f, d).unwrap());
}

/// `b` spans a non-normal subgroup of D8, so `Ker e / Im d` is undefined.
#[test]
fn salamander_reports_undefined_homology() {
    let form = SlominskiForm::open();
    let (one, z2, d8) = (groups::trivial(), groups::cyclic(2), groups::d8());
    let mut d = Diagram::new("double-complex").arrow("d", hom("d", &z2, &d8, &[0, 4]));
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
        d = d.arrow(name, zero(name, dom, cod));
    }
    let out = salamander(&form, &d).unwrap();
    assert!(out.sequence.is_none());
    let line = out.report.get("defined:A_h").unwrap();
    assert_eq!(line.status, Status::Fail);
    let w = line.witness.as_deref().unwrap();
    assert!(w.contains("not normal"), "{w}");
    assert_eq!(out.report.status("defined:A_box"), Some(Status::Fail));
    assert_eq!(out.report.status("defined:box_D"), Some(Status::Pass));
}

/// `Z2 -> Z4 -> Z2` in both rows, doubling in the middle.
#[test]
fn goursat_over_z4() {
    let form = SlominskiForm::open();
    let (z2, z4) = (groups::cyclic(2), groups::cyclic(4));
    let l = hom("l", &z2, &z4, &[0, 2]);
    let m = hom("m", &z4, &z2, &[0, 1, 0, 1]);
    let d = Diagram::new("goursat")
        .arrow("l", l.clone())
        .arrow("m", m.clone())
        .arrow("l'", l.with_name("l'"))
        .arrow("m'", m.with_name("m'"))
        .arrow("alpha", zero("alpha", &z2, &z2))
        .arrow("beta", hom("beta", &z4, &z4, &[0, 2, 0, 2]))
        .arrow("gamma", zero("gamma", &z2, &z2));
    let out = goursat(&form, &d).unwrap();
    assert!(out.report.passed(), "{:?}", out.report);
    let q = out.iso.unwrap();
    assert!(q.holds());
    let iso = q.iso.unwrap();
    assert_eq!((iso.dom.order(), iso.cod.order()), (2, 2));
}

#[test]
fn goursat_sampled() {
    let form = SlominskiForm::open();
    let t = template("goursat").unwrap();
    let mut pool = Pool::lemma_pool();
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..100 {
        let d = sample_instance(&mut rng, &mut pool, &t, Some("i"), SampleOptions::default()).unwrap();
        let out = goursat(&form, &d).unwrap();
        assert!(out.report.passed(), "{:?}", out.report);
        assert!(out.iso.unwrap().holds());
    }
}

#[test]
fn strongly_short_exact_needs_trivial_ends() {
    let form = SlominskiForm::open();
    let (one, z2, z4) = (groups::trivial(), groups::cyclic(2), groups::cyclic(4));
    let o = zero("o", &one, &z2);
    let f = hom("f", &z2, &z4, &[0, 2]);
    let g = hom("g", &z4, &z2, &[0, 1, 0, 1]);
    let o1 = zero("o'", &z2, &one);
    let r = strongly_short_exact_check(&form, &o, &f, &g, &o1).unwrap();
    assert!(r.exact && r.short_exact && !r.refuted());
    assert!(strongly_short_exact_check(&form, &zero("o", &z2, &z2), &f, &g, &o1).is_err());
}
