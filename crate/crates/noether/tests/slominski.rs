use std::sync::Arc;

use noether::axioms::axiom_suite;
use noether::groups::{self, cyclic, d8};
use noether::slominski::{mask_of, Algebra};
use noether::{dualize, enumerate_homs, Form, SlominskiForm};

fn full_form(g: &Arc<Algebra>) -> SlominskiForm {
    SlominskiForm::full(vec![g.clone()])
}

#[test]
fn subalgebra_counts() {
    assert_eq!(cyclic(4).subalgebras().len(), 3);
    assert_eq!(d8().subalgebras().len(), 10);
    assert_eq!(groups::trivial().subalgebras().len(), 1);
}

#[test]
fn hom_counts() {
    assert_eq!(enumerate_homs(&cyclic(2), &cyclic(2)).len(), 2);
    assert_eq!(enumerate_homs(&cyclic(4), &cyclic(2)).len(), 2);
    assert_eq!(enumerate_homs(&d8(), &groups::trivial()).len(), 1);
}

#[test]
fn z4_arithmetic() {
    let z4 = cyclic(4);
    assert_eq!(z4.d(1, 3), 2);
    let c = z4.generate_congruence(&[(2, 0)]);
    assert_eq!(c.classes, vec![mask_of(&[0, 2]), mask_of(&[1, 3])]);
}

#[test]
fn d8_subgroups() {
    let g = d8();
    let b = mask_of(&[0, 4]);
    let v = mask_of(&[0, 4, 2, 6]);
    assert_eq!(g.closure(b | mask_of(&[2])), v);
    assert!(!g.is_normal_subalgebra(b));
    assert!(g.is_normal_subalgebra(v));
    let (q, _) = g.quotient(v);
    assert_eq!(q.order(), 2);
}

#[test]
fn axiom_suite_every_small_group() {
    for g in groups::groups_up_to_8() {
        let form = full_form(&g);
        let r = axiom_suite(&form, true);
        assert!(r.passed(), "{}:\n{}", g.name(), r);
        let r = axiom_suite(&dualize(&form), true);
        assert!(r.passed(), "dual {}:\n{}", g.name(), r);
    }
}

#[test]
fn form_basics() {
    let f = SlominskiForm::open();
    let g = d8();
    assert!(f.is_normal(&g, f.top(&g)));
    assert!(f.is_conormal(&g, f.bottom(&g)));
}
