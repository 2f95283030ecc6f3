//! Small groups as Słomiński algebras.
//!
//! Element numbering is fixed so that fixtures and tests can refer to
//! elements by index. For the dihedral groups, `a^i b^j` is element
//! `i + n j`; for direct products `(g, h)` is `g * |H| + h`.

use std::sync::Arc;

use crate::slominski::Algebra;

fn build(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> Arc<Algebra> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    Algebra::from_group(name, &table, 0).expect("built-in table is a group")
}

pub fn trivial() -> Arc<Algebra> {
    build("1", 1, |_, _| 0)
}

pub fn cyclic(n: usize) -> Arc<Algebra> {
    build(&format!("Z{n}"), n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n` with `o(a) = n`, `o(b) = 2`, `ba = a^-1 b`.
pub fn dihedral(n: usize) -> Arc<Algebra> {
    let name = if n == 3 { "S3".to_string() } else { format!("D{}", 2 * n) };
    build(&name, 2 * n, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        let k = if j == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((j + l) % 2)
    })
}

/// Quaternion group. Element `4s + u` is `(-1)^s` times unit `u` of
/// `1, i, j, k`.
pub fn quaternion() -> Arc<Algebra> {
    // unit products as (sign, unit)
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    build("Q8", 8, |x, y| {
        let (s, u) = (x / 4, x % 4);
        let (t, v) = (y / 4, y % 4);
        let (r, w) = T[u][v];
        4 * ((s + t + r) % 2) + w
    })
}

pub fn product(g: &Algebra, h: &Algebra) -> Arc<Algebra> {
    let m = h.order();
    build(&format!("{}x{}", g.name(), h.name()), g.order() * m, |x, y| {
        g.p(x / m, y / m) * m + h.p(x % m, y % m)
    })
}

pub fn elementary_abelian_2(k: u32) -> Arc<Algebra> {
    match k {
        0 => trivial(),
        1 => cyclic(2),
        _ => {
            let mut g = cyclic(2);
            for _ in 1..k {
                g = product(&g, &cyclic(2));
            }
            g
        }
    }
}

pub fn d8() -> Arc<Algebra> {
    dihedral(4)
}

/// One representative of every isomorphism class of groups of order at
/// most 8.
pub fn groups_up_to_8() -> Vec<Arc<Algebra>> {
    vec![
        trivial(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        elementary_abelian_2(2),
        cyclic(5),
        cyclic(6),
        dihedral(3),
        cyclic(7),
        cyclic(8),
        product(&cyclic(4), &cyclic(2)),
        elementary_abelian_2(3),
        d8(),
        quaternion(),
    ]
}

pub fn by_name(name: &str) -> Option<Arc<Algebra>> {
    groups_up_to_8().into_iter().find(|g| g.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_presentation() {
        let g = d8();
        let (a, b) = (1, 4);
        assert_eq!(g.p(a, g.p(a, g.p(a, a))), 0);
        assert_eq!(g.p(b, b), 0);
        // ba = a^-1 b = a^3 b
        assert_eq!(g.p(b, a), 7);
        assert_eq!(g.p(a, b), 5);
        assert_eq!(g.p(2, b), 6);
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let (i, j, k, m1) = (1, 2, 3, 4);
        assert_eq!(q.p(i, j), k);
        assert_eq!(q.p(j, i), 4 + k);
        assert_eq!(q.p(i, i), m1);
        assert_eq!(q.p(k, k), m1);
    }

    #[test]
    fn orders() {
        let orders: Vec<usize> = groups_up_to_8().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
    }
}
