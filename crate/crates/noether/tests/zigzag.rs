use rand::rngs::StdRng;
use rand::SeedableRng;

use noether::gen::{random_zigzag, Pool};
use noether::pyramid::{build_pyramid, Apex, BuildOptions, BuildOrder};
use noether::slominski::SlominskiForm;
use noether::zigzag::{
    chase_backward, chase_forward, collapse, decide_induction, image_maps, induced_relation, is_collapsible,
};
use noether::Form;

#[test]
fn hit_matches_relation() {
    let form = SlominskiForm::open();
    let mut pool = Pool::small_groups();
    let mut rng = StdRng::seed_from_u64(7);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..300 {
        let len = rand::Rng::gen_range(&mut rng, 0..=6);
        let z = random_zigzag(&mut rng, &mut pool, len);
        let hit = decide_induction(&form, &z);
        let rel = induced_relation(&z);
        assert_eq!(hit.induces(), rel.is_function(), "{z:?}");
        if let Some(m) = hit.morphism() {
            yes += 1;
            let x0 = z.start();
            for a in form.subs(x0) {
                let img = rel.image(x0.sub_mask(a));
                assert_eq!(z.end().sub_index(img), Some(m.dimg[a]));
            }
            for b in form.subs(z.end()) {
                let pre = rel.preimage(z.end().sub_mask(b));
                assert_eq!(x0.sub_index(pre), Some(m.iimg[b]));
            }
            for opts in [
                BuildOptions::default(),
                BuildOptions { order: BuildOrder::Diagonal, apex: Apex::Image },
            ] {
                let p = build_pyramid(&form, &z, opts).unwrap();
                assert!(p.check_invariants(&form).passed());
                let h = p.principal_horizontal(&form);
                assert!(is_collapsible(&form, &h));
                let f = collapse(&form, &h).unwrap();
                let maps = image_maps(&form, &f);
                assert_eq!(maps.dimg, m.dimg);
                assert_eq!(maps.iimg, m.iimg);
                assert_eq!(f.map().to_vec(), rel.as_map().unwrap());
            }
        } else {
            no += 1;
        }
        let _ = chase_forward(&form, &z, 0);
        let _ = chase_backward(&form, &z, 0);
    }
    println!("induced {yes}, not induced {no}");
    assert!(yes > 30 && no > 30);
}
