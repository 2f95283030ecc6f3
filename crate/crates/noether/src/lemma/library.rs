//! The built-in lemma templates.

use std::fmt::Write;

use super::template::Template;

const FOUR: &str = "
lemma four
object A B C D A' B' C' D'
arrow f A B
arrow g B C
arrow h C D
arrow x A' B'
arrow y B' C'
arrow z C' D'
arrow s A A'
arrow t B B'
arrow u C C'
arrow v D D'
assume commute t.f = x.s
assume commute u.g = y.t
assume commute v.h = z.u
assume exact f g
assume exact g h
assume exact x y
assume exact y z
assume surjective s
assume injective v
part i
conclude eq img(g,ker(t)) = ker(u)
part ii
conclude eq pre(y,im(u)) = im(t)
";

const FIVE: &str = "
lemma five
object A B C D E A' B' C' D' E'
arrow f A B
arrow g B C
arrow h C D
arrow m D E
arrow x A' B'
arrow y B' C'
arrow z C' D'
arrow n D' E'
arrow s A A'
arrow t B B'
arrow u C C'
arrow v D D'
arrow w E E'
assume commute t.f = x.s
assume commute u.g = y.t
assume commute v.h = z.u
assume commute w.m = n.v
assume exact f g
assume exact g h
assume exact h m
assume exact x y
assume exact y z
assume exact z n
part i
assume surjective s
assume injective t
assume injective v
conclude injective u
part ii
assume injective w
assume surjective t
assume surjective v
conclude surjective u
part iii
assume iso t
assume iso v
assume surjective s
assume injective w
conclude iso u
";

const THREE_BY_THREE: &str = "
lemma 3x3
object A B C A' B' C' A'' B'' C''
arrow f A B
arrow g B C
arrow x A' B'
arrow y B' C'
arrow m A'' B''
arrow n B'' C''
arrow s A A'
arrow i A' A''
arrow t B B'
arrow j B' B''
arrow u C C'
arrow k C' C''
assume commute t.f = x.s
assume commute u.g = y.t
assume commute j.x = m.i
assume commute k.y = n.j
assume short-exact s i
assume short-exact t j
assume short-exact u k
part upper
assume short-exact x y
assume short-exact m n
conclude short-exact f g
part lower
assume short-exact f g
assume short-exact x y
conclude short-exact m n
part middle
assume short-exact f g
assume short-exact m n
assume zero y.x
conclude short-exact x y
";

const SHORT_FIVE: &str = "
lemma short-five
object A B C A' B' C'
arrow f A B
arrow g B C
arrow x A' B'
arrow y B' C'
arrow s A A'
arrow t B B'
arrow u C C'
assume commute t.f = x.s
assume commute u.g = y.t
assume short-exact f g
assume short-exact x y
part i
assume injective s
assume injective u
conclude injective t
part ii
assume surjective s
assume surjective u
conclude surjective t
part iii
assume iso s
assume iso u
conclude iso t
";

const SPIDER: &str = "
lemma spider
object V W X Y Z
arrow f V W
arrow g V X
arrow h X W
arrow i X Z
arrow j Y X
arrow k Y Z
assume commute f = h.g
assume commute k = i.j
assume short-exact g i
assume short-exact j h
part i
assume iso k
conclude iso f
";

const INCOMPLETE_SNAIL: &str = "
lemma incomplete-snail
object W1 W2 X Y1 Y2 Z
arrow x W1 W2
arrow g W1 X
arrow b X W2
arrow d X Y2
arrow a Y1 X
arrow e Y1 Y2
arrow f Y2 Z
arrow y W2 Z
assume commute x = b.g
assume commute e = d.a
assume commute y.b = f.d
assume surjective b
assume exact g d
assume exact a b
assume exact e f
part i
conclude exact x y
";

const SQUARE_EXACT: &str = "
lemma square-exact
object A B C A' B' C'
arrow f A B
arrow g B C
arrow m A' B'
arrow n B' C'
arrow x A A'
arrow y B B'
arrow z C C'
assume commute y.f = m.x
assume commute z.g = n.y
assume surjective x
assume injective z
part i
assume surjective y
assume exact f g
conclude exact m n
part ii
assume injective y
assume exact m n
conclude exact f g
";

const DIAMOND: &str = "
lemma diamond
object A B C D E F G H
arrow f A H
arrow g A B
arrow a H B
arrow c H F
arrow x H G
arrow d B D
arrow u B C
arrow y G F
arrow v C D
arrow b F D
arrow m F E
arrow n D E
assume commute g = a.f
assume commute d.a = b.c
assume commute c = y.x
assume commute d = v.u
assume commute m = n.b
assume exact f x
assume exact y m
assume exact g u
assume exact v n
assume surjective x
assume injective v
part i
assume injective a
conclude injective y
part ii
assume surjective b
conclude surjective u
";

const DOUBLE_DIAMOND: &str = "
lemma double-diamond
object A B C D G H I J
arrow a A D
arrow b A B
arrow c G J
arrow d G H
arrow p D B
arrow u D C
arrow q B J
arrow v B C
arrow r J H
arrow x J I
arrow y H I
assume commute p.a = b
assume commute v.p = u
assume commute r.c = d
assume commute y.r = x
assume exact p q
assume exact q r
part i
assume surjective u
assume injective v
assume injective y
conclude injective x
part ii
assume surjective a
assume surjective c
assume injective d
conclude surjective b
";

const BABY_DRAGON: &str = "
lemma baby-dragon
object A B C S T U V A' B' C'
arrow f A S
arrow g A T
arrow m B T
arrow n B U
arrow z C U
arrow alpha C V
arrow beta S A'
arrow h T A'
arrow o T B'
arrow p U B'
arrow y U C'
arrow x V C'
assume commute beta.f = h.g
assume commute o.m = p.n
assume commute y.z = x.alpha
assume surjective f
assume injective g
assume injective n
assume surjective o
assume surjective y
assume injective x
assume exact g o
assume exact m h
assume exact n y
assume exact z p
part i
assume injective alpha
conclude injective beta
part ii
assume surjective beta
conclude surjective alpha
";

const SNAKE: &str = "
lemma snake
object A B C A' B' C'
arrow f A B
arrow g B C
arrow f' A' B'
arrow g' B' C'
arrow alpha A A'
arrow beta B B'
arrow gamma C C'
assume commute beta.f = f'.alpha
assume commute gamma.g = g'.beta
assume exact f g
assume exact f' g'
assume surjective g
assume injective f'
assume conormal ker(alpha)
assume conormal ker(beta)
assume conormal ker(gamma)
assume normal im(alpha)
assume normal im(beta)
assume normal im(gamma)
";

const GOURSAT: &str = "
lemma goursat
object A B C D E F
arrow l A B
arrow m B C
arrow l' D E
arrow m' E F
arrow alpha A D
arrow beta B E
arrow gamma C F
assume commute beta.l = l'.alpha
assume commute gamma.m = m'.beta
assume exact l m
assume exact l' m'
assume conormal ker(gamma.m)
part i
conclude relnormal im(beta.l) in meet(im(beta),im(l'))
conclude relnormal join(ker(beta),ker(m)) in ker(gamma.m)
";

const GENERALIZED_SNAIL: &str = "
lemma generalized-snail
object A B C A0 B0
arrow f A B
arrow alpha A A0
arrow beta B B0
arrow gamma A C
arrow f0' C B
arrow beta' C A0
arrow f0 A0 B0
assume commute f = f0'.gamma
assume commute alpha = beta'.gamma
assume commute beta.f0' = f0.beta'
assume conormal ker(gamma)
assume conormal ker(alpha)
assume conormal ker(beta')
assume normal im(gamma)
assume normal im(alpha)
assume normal im(beta')
";

/// One cell of a double complex around `C` (above `A`), `A`, `B` (right
/// of `A`) and `D` (below `B`). `P0` .. `P8` are the surrounding
/// objects.
const DOUBLE_COMPLEX: &str = "
lemma double-complex
object C A B D P0 P1 P2 P3 P4 P5 P6 P8
arrow a P1 C
arrow k C P2
arrow d P3 A
arrow e A B
arrow s B P4
arrow l P5 D
arrow t D P6
arrow m P0 C
arrow c C A
arrow j P1 P3
arrow v P2 B
arrow f A P5
arrow g B D
arrow n P4 P6
arrow u D P8
assume zero k.a
assume zero e.d
assume zero s.e
assume zero t.l
assume zero c.m
assume zero f.c
assume zero g.v
assume zero u.g
assume commute c.a = d.j
assume commute v.k = e.c
assume commute g.e = l.f
assume commute n.s = t.g
";

const STRONGLY_SHORT_EXACT: &str = "
lemma strongly-short-exact
object Z A B C Z'
arrow o Z A
arrow f A B
arrow g B C
arrow o' C Z'
assume eq top(Z) = bot(Z)
assume eq top(Z') = bot(Z')
assume exact o f
assume exact f g
assume exact g o'
part i
conclude short-exact f g
";

/// Names accepted by [`template`]; `dragon` also takes `dragon:<m>`.
pub const NAMES: &[&str] = &[
    "four",
    "five",
    "3x3",
    "short-five",
    "spider",
    "incomplete-snail",
    "square-exact",
    "diamond",
    "double-diamond",
    "baby-dragon",
    "dragon",
    "snake",
    "goursat",
    "generalized-snail",
    "double-complex",
    "strongly-short-exact",
];

pub fn template(name: &str) -> Option<Template> {
    let text = match name {
        "four" => FOUR,
        "five" => FIVE,
        "3x3" => THREE_BY_THREE,
        "short-five" => SHORT_FIVE,
        "spider" => SPIDER,
        "incomplete-snail" => INCOMPLETE_SNAIL,
        "square-exact" => SQUARE_EXACT,
        "diamond" => DIAMOND,
        "double-diamond" => DOUBLE_DIAMOND,
        "baby-dragon" => BABY_DRAGON,
        "snake" => SNAKE,
        "goursat" => GOURSAT,
        "generalized-snail" => GENERALIZED_SNAIL,
        "double-complex" => DOUBLE_COMPLEX,
        "strongly-short-exact" => STRONGLY_SHORT_EXACT,
        "dragon" => return Some(dragon(2)),
        _ => {
            let m = name.strip_prefix("dragon:")?.parse().ok().filter(|&m| m >= 1)?;
            return Some(dragon(m));
        }
    };
    Some(Template::parse(text).expect("built-in templates parse"))
}

/// The dragon with `m + 1` nodes on its upper spine `t0 .. tm`.
pub fn dragon(m: usize) -> Template {
    assert!(m >= 1);
    let mut s = format!("lemma dragon:{m}\nobject N Q P E H G Q' P' N' H' G' E'");
    for k in 0..=m {
        write!(s, " t{k} b{k}").unwrap();
    }
    for k in 0..=m + 1 {
        write!(s, " s{k}").unwrap();
    }
    s.push('\n');
    for k in 0..=m {
        writeln!(s, "arrow x{} t{k} s{k}", 2 * k + 1).unwrap();
        writeln!(s, "arrow x{} t{k} s{}", 2 * k + 2, k + 1).unwrap();
        writeln!(s, "arrow y{} s{k} b{k}", 2 * k + 1).unwrap();
        writeln!(s, "arrow y{} s{} b{k}", 2 * k + 2, k + 1).unwrap();
    }
    let ends = [
        ("a", "N", "Q"),
        ("b", "N", "P"),
        ("c", "Q", "t0"),
        ("d", "P", "t0"),
        ("e", "E", "H"),
        ("f", "E", "G"),
        ("g", "H", &format!("t{m}")),
        ("h", "G", &format!("t{m}")),
        ("i", "b0", "Q'"),
        ("j", "b0", "P'"),
        ("k", "Q'", "N'"),
        ("l", "P'", "N'"),
        ("mm", &format!("b{m}"), "H'"),
        ("o", &format!("b{m}"), "G'"),
        ("p", "H'", "E'"),
        ("q", "G'", "E'"),
    ];
    for (n, d, c) in ends {
        writeln!(s, "arrow {n} {d} {c}").unwrap();
    }
    s.push_str("assume commute c.a = d.b\nassume commute g.e = h.f\n");
    s.push_str("assume commute k.i = l.j\nassume commute p.mm = q.o\n");
    for k in 0..=m {
        let (a, b) = (2 * k + 1, 2 * k + 2);
        writeln!(s, "assume commute y{a}.x{a} = y{b}.x{b}").unwrap();
    }
    s.push_str("assume surjective x1\n");
    for k in 1..m {
        writeln!(s, "assume injective x{}\nassume surjective y{}", 2 * k + 2, 2 * k + 1).unwrap();
    }
    writeln!(s, "assume injective y{}", 2 * m + 2).unwrap();
    s.push_str("assume exact c x2\nassume exact d x1\n");
    for k in 1..=m {
        writeln!(s, "assume exact x{} y{}", 2 * k, 2 * k + 1).unwrap();
        writeln!(s, "assume exact x{} y{}", 2 * k + 1, 2 * k).unwrap();
    }
    writeln!(s, "assume exact g x{}\nassume exact h x{}", 2 * m + 2, 2 * m + 1).unwrap();
    s.push_str("assume exact y1 j\nassume exact y2 i\n");
    writeln!(s, "assume exact y{} o\nassume exact y{} mm", 2 * m + 1, 2 * m + 2).unwrap();
    s.push_str("part i\nassume surjective a\nassume surjective e\nconclude injective y1\n");
    writeln!(s, "part ii\nassume injective l\nassume injective q\nconclude surjective x{}", 2 * m + 2).unwrap();
    Template::parse(&s).expect("dragon template parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for n in NAMES {
            let t = template(n).unwrap();
            assert_eq!(Template::parse(&t.to_string()).unwrap(), t);
        }
        for m in 1..5 {
            let t = dragon(m);
            assert_eq!(t.arrows.len(), 4 * (m + 1) + 16);
        }
        assert!(template("dragon:0").is_none());
        assert!(template("nope").is_none());
    }
}
