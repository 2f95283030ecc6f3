use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::Index;
use rand::rngs::StdRng;
use rand::SeedableRng;

use noether::form::dualize;
use noether::gen::{random_zigzag, Pool};
use noether::groups::groups_up_to_8;
use noether::slominski::{enumerate_homs, mask_elements, Algebra, Hom, SlominskiForm};
use noether::text::Workspace;
use noether::zigzag::{chase_backward, chase_forward};
use noether::Form;

fn groups() -> &'static [Arc<Algebra>] {
    static G: std::sync::OnceLock<Vec<Arc<Algebra>>> = std::sync::OnceLock::new();
    G.get_or_init(groups_up_to_8)
}

fn group(i: Index) -> Arc<Algebra> {
    groups()[i.index(groups().len())].clone()
}

fn hom(a: Index, b: Index, f: Index) -> Hom {
    let homs = enumerate_homs(&group(a), &group(b));
    homs[f.index(homs.len())].clone()
}

fn sub(x: &Algebra, i: Index) -> usize {
    i.index(x.subalgebras().len())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn subalgebras_form_a_lattice(g in any::<Index>(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let f = SlominskiForm::open();
        let x = group(g);
        let (a, b, c) = (sub(&x, a), sub(&x, b), sub(&x, c));
        prop_assert_eq!(f.join(&x, a, b), f.join(&x, b, a));
        prop_assert_eq!(f.meet(&x, a, b), f.meet(&x, b, a));
        prop_assert_eq!(f.join(&x, a, f.join(&x, b, c)), f.join(&x, f.join(&x, a, b), c));
        prop_assert_eq!(f.meet(&x, a, f.meet(&x, b, c)), f.meet(&x, f.meet(&x, a, b), c));
        prop_assert_eq!(f.join(&x, a, f.meet(&x, a, b)), a);
        prop_assert_eq!(f.meet(&x, a, f.join(&x, a, b)), a);
        prop_assert_eq!(f.leq(&x, a, b), f.join(&x, a, b) == b);
        prop_assert!(f.leq(&x, f.bottom(&x), a) && f.leq(&x, a, f.top(&x)));
        // Meets are intersections.
        prop_assert_eq!(x.sub_mask(f.meet(&x, a, b)), x.sub_mask(a) & x.sub_mask(b));
    }

    #[test]
    fn images_form_a_galois_connection(
        g in any::<Index>(), h in any::<Index>(), k in any::<Index>(), a in any::<Index>(), b in any::<Index>(),
    ) {
        let form = SlominskiForm::open();
        let f = hom(g, h, k);
        let (x, y) = (f.dom().clone(), f.cod().clone());
        let (a, b) = (sub(&x, a), sub(&y, b));
        prop_assert_eq!(form.leq(&y, form.dimg(&f, a), b), form.leq(&x, a, form.iimg(&f, b)));
        prop_assert_eq!(form.dimg(&f, form.iimg(&f, b)), form.meet(&y, b, form.image(&f)));
        prop_assert_eq!(form.iimg(&f, form.dimg(&f, a)), form.join(&x, a, form.kernel(&f)));
        prop_assert_eq!(y.sub_mask(form.dimg(&f, a)), f.image_mask(x.sub_mask(a)));
        prop_assert_eq!(x.sub_mask(form.iimg(&f, b)), f.preimage_mask(y.sub_mask(b)));
    }

    #[test]
    fn images_are_functorial(
        g in any::<Index>(), h in any::<Index>(), k in any::<Index>(),
        i in any::<Index>(), j in any::<Index>(), a in any::<Index>(), c in any::<Index>(),
    ) {
        let form = SlominskiForm::open();
        let f = hom(g, h, i);
        let gs = enumerate_homs(f.cod(), &group(k));
        let g2 = gs[j.index(gs.len())].clone();
        let gf = form.compose(&g2, &f).unwrap();
        prop_assert_eq!(gf.clone(), f.then(&g2));
        let a = sub(f.dom(), a);
        let c = sub(g2.cod(), c);
        prop_assert_eq!(form.dimg(&gf, a), form.dimg(&g2, form.dimg(&f, a)));
        prop_assert_eq!(form.iimg(&gf, c), form.iimg(&f, form.iimg(&g2, c)));
    }

    #[test]
    fn dual_is_an_involution(
        g in any::<Index>(), h in any::<Index>(), k in any::<Index>(), a in any::<Index>(), b in any::<Index>(),
    ) {
        let form = SlominskiForm::open();
        let dual = dualize(&form);
        let twice = dualize(&dual);
        let f = hom(g, h, k);
        let (x, y) = (f.dom().clone(), f.cod().clone());
        let (a, b) = (sub(&x, a), sub(&x, b));
        prop_assert_eq!(dual.leq(&x, a, b), form.leq(&x, b, a));
        prop_assert_eq!(dual.join(&x, a, b), form.meet(&x, a, b));
        prop_assert_eq!(dual.top(&x), form.bottom(&x));
        prop_assert_eq!(twice.leq(&x, a, b), form.leq(&x, a, b));
        prop_assert_eq!(twice.join(&x, a, b), form.join(&x, a, b));
        prop_assert_eq!(dual.dom(&f), y.clone());
        prop_assert_eq!(dual.kernel(&f), form.image(&f));
        prop_assert_eq!(dual.image(&f), form.kernel(&f));
        prop_assert_eq!(dual.is_normal(&x, a), form.is_conormal(&x, a));
        prop_assert_eq!(twice.is_normal(&x, a), form.is_normal(&x, a));
        for c in form.subs(&y) {
            prop_assert_eq!(dual.dimg(&f, c), form.iimg(&f, c));
            prop_assert_eq!(twice.iimg(&f, c), form.iimg(&f, c));
        }
    }

    #[test]
    fn generated_congruences_are_congruences(g in any::<Index>(), pairs in prop::collection::vec(any::<(Index, Index)>(), 0..3)) {
        let x = group(g);
        let n = x.order();
        let pairs: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (a.index(n), b.index(n))).collect();
        let c = x.generate_congruence(&pairs);
        for &(a, b) in &pairs {
            prop_assert!(c.related(a, b));
        }
        let mut union = 0u64;
        for m in &c.classes {
            prop_assert_eq!(union & m, 0);
            union |= m;
        }
        prop_assert_eq!(union, x.full_mask());
        for a in 0..n {
            for b in mask_elements(c.classes[c.class_of[a]]) {
                for y in 0..n {
                    prop_assert!(c.related(x.p(a, y), x.p(b, y)));
                    prop_assert!(c.related(x.d(a, y), x.d(b, y)));
                    prop_assert!(c.related(x.d(y, a), x.d(y, b)));
                }
            }
        }
        // In a group the class of the identity is a normal subgroup whose
        // quotient has the same classes.
        let z = c.classes[c.class_of[x.zero()]];
        prop_assert!(x.is_normal_subalgebra(z));
        let (q, proj) = x.quotient(z);
        prop_assert_eq!(q.order(), c.classes.len());
        prop_assert_eq!(proj.preimage_mask(1 << q.zero()), z);
    }

    #[test]
    fn restricted_modular_law(g in any::<Index>(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let form = SlominskiForm::open();
        let x = group(g);
        let (a, b, c) = (sub(&x, a), sub(&x, b), sub(&x, c));
        let c = form.join(&x, a, c);
        prop_assert_ne!(form.restricted_modular_law_check(&x, a, b, c), Some(false));
        // Every subgroup is conormal, so normal B always qualifies.
        if x.is_normal_id(b) {
            prop_assert_eq!(form.restricted_modular_law_check(&x, a, b, c), Some(true));
        }
    }

    #[test]
    fn chasing_the_opposite_zigzag(seed in any::<u64>(), len in 0usize..6, a in any::<Index>(), b in any::<Index>()) {
        let form = SlominskiForm::open();
        let mut pool = Pool::small_groups();
        let mut rng = StdRng::seed_from_u64(seed);
        let z = random_zigzag(&mut rng, &mut pool, len);
        let a0 = sub(z.start(), a);
        prop_assert_eq!(chase_forward(&form, &z, a0), chase_backward(&form, &z.opposite(), a0));
        // Chasing is monotone.
        let j = form.join(z.start(), a0, sub(z.start(), b));
        prop_assert!(form.leq(z.end(), chase_forward(&form, &z, a0), chase_forward(&form, &z, j)));
    }

    #[test]
    fn workspace_text_round_trips(picks in prop::collection::vec(any::<(Index, Index, Index)>(), 1..4)) {
        let mut ws = Workspace::default();
        for (k, (a, b, f)) in picks.iter().enumerate() {
            let h = hom(*a, *b, *f);
            for x in [h.dom(), h.cod()] {
                ws.algebras.insert(x.name().to_string(), x.clone());
            }
            ws.homs.insert(format!("h{k}"), h.with_name(format!("h{k}")));
        }
        let text = ws.to_text();
        let back = Workspace::parse_str(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert!(back == ws);
    }
}
