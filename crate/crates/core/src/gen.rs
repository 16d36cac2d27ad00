//! Deterministic generators of small V-categories, functors and commuting
//! squares for exhaustive and seeded checks.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::quantale::{QElem, Quantale};
use crate::vcat::{CatRef, VCategory, VFunctor};

fn names(n: usize) -> Vec<String> {
    const BASE: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    (0..n)
        .map(|i| BASE.get(i).map_or_else(|| format!("o{i}"), |s| s.to_string()))
        .collect()
}

/// Every V-category on `n` labelled objects, in lexicographic order of the
/// row-major hom matrix. Intended for tiny `|V|^(n²)`.
pub fn all_categories(q: &Quantale, n: usize) -> Result<Vec<VCategory>> {
    let carrier = q.require_enumerable()?;
    let cells = n * n;
    let mut out = Vec::new();
    let mut cur = vec![q.bottom(); cells];
    let mut digits = vec![0usize; cells];
    loop {
        for i in 0..cells {
            cur[i] = carrier[digits[i]];
        }
        let diag_ok = (0..n).all(|x| q.above_unit(cur[x * n + x]));
        if diag_ok {
            let m = (0..n).map(|x| cur[x * n..(x + 1) * n].to_vec()).collect();
            if let Ok(c) = VCategory::new(&format!("cat{}", out.len()), q, names(n), m) {
                out.push(c);
            }
        }
        // increment, last cell fastest
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < carrier.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The least V-category structure above a matrix: raises the diagonal to
/// `k` and closes under `a(x,y) ⊗ a(y,z) ≤ a(x,z)`.
pub fn close(q: &Quantale, n: usize, mut m: Vec<QElem>) -> Vec<QElem> {
    for x in 0..n {
        m[x * n + x] = q.join(m[x * n + x], q.unit());
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = q.tensor(m[x * n + y], m[y * n + z]);
                    let j = q.join(m[x * n + z], t);
                    if j != m[x * n + z] {
                        m[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

/// A random V-category on `n` objects drawn from `elems`, closed up.
pub fn random_category(q: &Quantale, n: usize, elems: &[QElem], rng: &mut ChaCha8Rng, name: &str) -> VCategory {
    let raw = (0..n * n).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
    let m = close(q, n, raw);
    let matrix = (0..n).map(|x| m[x * n..(x + 1) * n].to_vec()).collect();
    VCategory::new(name, q, names(n), matrix).expect("closure yields a V-category")
}

/// Every V-functor `X → Y`.
pub fn all_functors(x: &CatRef, y: &CatRef) -> Vec<VFunctor> {
    let (n, m) = (x.len(), y.len());
    let mut out = Vec::new();
    if m == 0 && n > 0 {
        return out;
    }
    let mut map = vec![0usize; n];
    loop {
        if let Ok(f) = VFunctor::new(&format!("f{}", out.len()), x, y, map.clone()) {
            out.push(f);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

/// A deterministic family of small categories over a finite quantale:
/// `E`, discrete and indiscrete pairs, every two-object category with
/// one-sided or symmetric homs, and seeded random closures on up to
/// `max_n` objects. Deduplicated by hom matrix.
pub fn family(q: &Quantale, max_n: usize, random: usize, seed: u64) -> Vec<CatRef> {
    let carrier = q.carrier().expect("family needs an enumerable quantale");
    let mut out: Vec<VCategory> = vec![VCategory::unit(q)];
    out.push(VCategory::discrete(q, names(2)).renamed("D2"));
    let k = q.unit();
    out.push(VCategory::new("I2", q, names(2), vec![vec![k, k], vec![k, k]]).expect("indiscrete"));
    for &v in &carrier {
        for sym in [false, true] {
            let back = if sym { v } else { q.bottom() };
            let m = vec![vec![k, v], vec![back, k]];
            if let Ok(c) = VCategory::new(&format!("T{}{}", q.label(v), if sym { "s" } else { "" }), q, names(2), m) {
                out.push(c);
            }
        }
    }
    if max_n >= 3 {
        let chain = (0..3)
            .map(|i| (0..3).map(|j| if i <= j { k } else { q.bottom() }).collect())
            .collect();
        out.push(VCategory::new("C3", q, names(3), chain).expect("3-chain"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let n = rng.gen_range(2..=max_n.max(2));
        out.push(random_category(q, n, &carrier, &mut rng, &format!("R{i}")));
    }
    let mut seen = HashSet::new();
    out.into_iter()
        .filter(|c| seen.insert((c.len(), c.matrix())))
        .map(Arc::new)
        .collect()
}

/// Pullback in `Cats_V` of `f: X → Y` and `h: Z → Y`: pairs `(x, z)` with
/// `fx = hz`, hom `X(x,x') ∧ Z(z,z')`, with its two projections.
pub fn pullback(f: &VFunctor, h: &VFunctor) -> Option<(VFunctor, VFunctor)> {
    let (x, z) = (f.dom(), h.dom());
    let q = x.quantale();
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..z.len()).map(move |c| (a, c)))
        .filter(|&(a, c)| f.apply(a) == h.apply(c))
        .collect();
    if pairs.is_empty() {
        return None;
    }
    let objects = pairs
        .iter()
        .map(|&(a, c)| format!("({},{})", x.label(a), z.label(c)))
        .collect();
    let matrix = pairs
        .iter()
        .map(|&(a, c)| pairs.iter().map(|&(a2, c2)| q.meet(x.hom(a, a2), z.hom(c, c2))).collect())
        .collect();
    let w = Arc::new(VCategory::new("W", q, objects, matrix).expect("pullback is a V-category"));
    let l = VFunctor::new("l", &w, z, pairs.iter().map(|p| p.1).collect()).expect("projection");
    let g = VFunctor::new("g", &w, x, pairs.iter().map(|p| p.0).collect()).expect("projection");
    Some((l, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin;

    #[test]
    fn boolean_preorders() {
        let q = builtin("boolean2", None).unwrap();
        // oracle: labelled preorders on 1, 2, 3 points: 1, 4, 29
        assert_eq!(all_categories(&q, 1).unwrap().len(), 1);
        assert_eq!(all_categories(&q, 2).unwrap().len(), 4);
        assert_eq!(all_categories(&q, 3).unwrap().len(), 29);
    }

    #[test]
    fn family_is_valid_and_deterministic() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let a = family(&q, 3, 6, 11);
        let b = family(&q, 3, 6, 11);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            x.check_axioms().unwrap();
            assert_eq!(x.matrix(), y.matrix());
        }
    }

    #[test]
    fn functor_count() {
        let q = builtin("boolean2", None).unwrap();
        let c: Vec<CatRef> = all_categories(&q, 2).unwrap().into_iter().map(Arc::new).collect();
        // chain a ≤ b: monotone self-maps are 3 of 4
        let chain = c.iter().find(|x| x.le(0, 1) && !x.le(1, 0)).unwrap();
        assert_eq!(all_functors(chain, chain).len(), 3);
    }
}
