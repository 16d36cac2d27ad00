//! Finite V-categories and V-functors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};

/// A finite V-category: objects with a hom matrix satisfying (R) and (T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCategory {
    name: String,
    q: Quantale,
    objects: Vec<String>,
    hom: Vec<QElem>,
}

pub type CatRef = Arc<VCategory>;

impl VCategory {
    /// Validates `(R)` and `(T)`, reporting the first failing instance in
    /// index order.
    pub fn new(name: &str, q: &Quantale, objects: Vec<String>, matrix: Vec<Vec<QElem>>) -> Result<Self> {
        let n = objects.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedMatrix(format!("{name}: expected {n} × {n}")));
        }
        let hom: Vec<QElem> = matrix.into_iter().flatten().collect();
        if let Some(e) = hom.iter().find(|e| !q.contains(**e)) {
            return Err(Error::ForeignElement(format!("{e:?}"), q.name().to_string()));
        }
        let cat = VCategory {
            name: name.to_string(),
            q: q.clone(),
            objects,
            hom,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    /// Builds from a flat row-major matrix known to satisfy the axioms.
    pub(crate) fn trusted(name: &str, q: &Quantale, objects: Vec<String>, hom: Vec<QElem>) -> Self {
        debug_assert_eq!(hom.len(), objects.len() * objects.len());
        VCategory {
            name: name.to_string(),
            q: q.clone(),
            objects,
            hom,
        }
    }

    /// Re-checks reflexivity and transitivity.
    pub fn check_axioms(&self) -> Result<()> {
        let q = &self.q;
        let n = self.len();
        for x in 0..n {
            if !q.above_unit(self.hom(x, x)) {
                return Err(Error::ReflexivityFail(self.objects[x].clone()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let a = self.hom(x, y);
                for z in 0..n {
                    if !q.leq(q.tensor(a, self.hom(y, z)), self.hom(x, z)) {
                        return Err(Error::TransitivityFail(
                            self.objects[x].clone(),
                            self.objects[y].clone(),
                            self.objects[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> QElem {
        self.hom[x * self.len() + y]
    }

    pub fn matrix(&self) -> Vec<Vec<QElem>> {
        (0..self.len()).map(|x| self.row(x)).collect()
    }

    /// `a(x, −)`.
    pub fn row(&self, x: usize) -> Vec<QElem> {
        (0..self.len()).map(|y| self.hom(x, y)).collect()
    }

    /// `a(−, y)`, i.e. the representable presheaf `y^*`.
    pub fn column(&self, y: usize) -> Vec<QElem> {
        (0..self.len()).map(|x| self.hom(x, y)).collect()
    }

    /// Underlying order: `x ≤ y` iff `k ≤ a(x, y)`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.q.above_unit(self.hom(x, y))
    }

    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// First pair `x ≠ y` with `x ≃ y`, if any.
    pub fn separation_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.iso(x, y))
    }

    pub fn is_separated(&self) -> bool {
        self.separation_witness().is_none()
    }

    pub fn opposite(&self) -> VCategory {
        let n = self.len();
        let hom = (0..n * n).map(|i| self.hom(i % n, i / n)).collect();
        VCategory::trusted(&format!("{}^op", self.name), &self.q, self.objects.clone(), hom)
    }

    /// `X ⊗ Y` on pairs, indexed `x * |Y| + y`.
    pub fn tensor_product(&self, other: &VCategory) -> Result<VCategory> {
        same_quantale(&self.q, &other.q)?;
        let q = &self.q;
        let (n, m) = (self.len(), other.len());
        let objects = (0..n * m)
            .map(|i| format!("({},{})", self.objects[i / m], other.objects[i % m]))
            .collect();
        let mut hom = Vec::with_capacity(n * m * n * m);
        for i in 0..n * m {
            for j in 0..n * m {
                hom.push(q.tensor(self.hom(i / m, j / m), other.hom(i % m, j % m)));
            }
        }
        Ok(VCategory::trusted(&format!("{}⊗{}", self.name, other.name), q, objects, hom))
    }

    /// Full subcategory on the given objects, in the given order.
    pub fn full_subcategory(&self, name: &str, keep: &[usize]) -> VCategory {
        let objects = keep.iter().map(|&i| self.objects[i].clone()).collect();
        let hom = keep.iter().flat_map(|&i| keep.iter().map(move |&j| self.hom(i, j))).collect();
        VCategory::trusted(name, &self.q, objects, hom)
    }

    /// The one-object category `E` with hom `k`.
    pub fn unit(q: &Quantale) -> VCategory {
        VCategory::trusted("E", q, vec!["*".into()], vec![q.unit()])
    }

    /// `k` on the diagonal, `⊥` elsewhere.
    pub fn discrete(q: &Quantale, objects: Vec<String>) -> VCategory {
        let n = objects.len();
        let hom = (0..n * n)
            .map(|i| if i / n == i % n { q.unit() } else { q.bottom() })
            .collect();
        VCategory::trusted("discrete", q, objects, hom)
    }

    /// `(V, hom)` for an enumerable quantale.
    pub fn hom_self(q: &Quantale) -> Result<VCategory> {
        let c = q.require_enumerable()?;
        let objects = c.iter().map(|&e| q.label(e)).collect();
        let hom = c.iter().flat_map(|&u| c.iter().map(move |&w| q.hom(u, w))).collect();
        Ok(VCategory::trusted("V", q, objects, hom))
    }

    /// `(S, hom)` for a finite set of quantale elements closed enough for
    /// transitivity; validated.
    pub fn hom_on(q: &Quantale, elems: &[QElem]) -> Result<VCategory> {
        let objects = elems.iter().map(|&e| q.label(e)).collect();
        let matrix = elems.iter().map(|&u| elems.iter().map(|&w| q.hom(u, w)).collect()).collect();
        VCategory::new("V|S", q, objects, matrix)
    }
}

pub fn same_quantale(a: &Quantale, b: &Quantale) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::QuantaleMismatch(a.name().to_string(), b.name().to_string()))
    }
}

/// A map between finite V-categories, stored as object indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFunctor {
    name: String,
    dom: CatRef,
    cod: CatRef,
    map: Vec<usize>,
}

impl VFunctor {
    /// Validates `(C)`: `a(x, x') ≤ b(fx, fx')`.
    pub fn new(name: &str, dom: &CatRef, cod: &CatRef, map: Vec<usize>) -> Result<Self> {
        let f = Self::raw(name, dom, cod, map)?;
        if let Some((x, y)) = f.functor_witness() {
            return Err(Error::NotAFunctor(dom.label(x).into(), dom.label(y).into()));
        }
        Ok(f)
    }

    /// A map of objects that need not be a V-functor.
    pub fn raw(name: &str, dom: &CatRef, cod: &CatRef, map: Vec<usize>) -> Result<Self> {
        same_quantale(dom.quantale(), cod.quantale())?;
        if map.len() != dom.len() || map.iter().any(|&y| y >= cod.len()) {
            return Err(Error::MalformedMatrix(format!("{name}: map is not total into {}", cod.name())));
        }
        Ok(VFunctor {
            name: name.to_string(),
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub(crate) fn trusted(name: &str, dom: &CatRef, cod: &CatRef, map: Vec<usize>) -> Self {
        VFunctor {
            name: name.to_string(),
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        }
    }

    pub fn identity(x: &CatRef) -> Self {
        Self::trusted("1", x, x, (0..x.len()).collect())
    }

    /// `g ∘ f`.
    pub fn then(&self, g: &VFunctor) -> Result<VFunctor> {
        if *self.cod != *g.dom {
            return Err(Error::ShapeMismatch(format!("cannot compose {} with {}", self.name, g.name)));
        }
        let map = self.map.iter().map(|&y| g.map[y]).collect();
        Ok(Self::trusted(&format!("{}∘{}", g.name, self.name), &self.dom, &g.cod, map))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn dom(&self) -> &CatRef {
        &self.dom
    }

    pub fn cod(&self) -> &CatRef {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// First pair violating `(C)`.
    pub fn functor_witness(&self) -> Option<(usize, usize)> {
        let q = self.dom.quantale();
        let n = self.dom.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| !q.leq(self.dom.hom(x, y), self.cod.hom(self.map[x], self.map[y])))
    }

    pub fn is_functor(&self) -> bool {
        self.functor_witness().is_none()
    }

    /// `a(x, x') = b(fx, fx')` for all pairs.
    pub fn is_fully_faithful(&self) -> bool {
        let n = self.dom.len();
        (0..n).all(|x| (0..n).all(|y| self.dom.hom(x, y) == self.cod.hom(self.map[x], self.map[y])))
    }

    /// `b(y, y') = ⋁ₓ b(y, fx) ⊗ b(fx, y')`.
    pub fn is_fully_dense(&self) -> bool {
        let b = &self.cod;
        let q = b.quantale();
        (0..b.len()).all(|y| {
            (0..b.len()).all(|z| {
                let j = q.join_all(self.map.iter().map(|&fx| q.tensor(b.hom(y, fx), b.hom(fx, z))));
                j == b.hom(y, z)
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// `f ≤ g` iff `k ≤ Y(fx, gx)` for all `x`.
pub fn functor_leq(f: &VFunctor, g: &VFunctor) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::ShapeMismatch(format!("{} and {} are not parallel", f.name, g.name)));
    }
    Ok((0..f.dom.len()).all(|x| f.cod.le(f.map[x], g.map[x])))
}

/// Checks `X(x, g y) = Y(f x, y)` for all `x, y`; returns the first failing
/// pair. When the equality holds both maps are V-functors, which is asserted.
pub fn check_adjunction(f: &VFunctor, g: &VFunctor) -> Result<Option<(usize, usize)>> {
    if f.dom != g.cod || f.cod != g.dom {
        return Err(Error::ShapeMismatch(format!("{} and {} are not opposite", f.name, g.name)));
    }
    let (x_cat, y_cat) = (&f.dom, &f.cod);
    for x in 0..x_cat.len() {
        for y in 0..y_cat.len() {
            if x_cat.hom(x, g.map[y]) != y_cat.hom(f.map[x], y) {
                return Ok(Some((x, y)));
            }
        }
    }
    assert!(f.is_functor() && g.is_functor(), "adjoint maps must be V-functors");
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn two_chain() -> CatRef {
        let q = builtin("boolean2", None).unwrap();
        let (o, i) = (q.elem("0"), q.elem("1"));
        Arc::new(VCategory::new("C2", &q, labels(&["x", "y"]), vec![vec![i, i], vec![o, i]]).unwrap())
    }

    #[test]
    fn lukasiewicz_example_validates() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let m = vec![
            vec![q.elem("1"), q.elem("1/2")],
            vec![q.elem("0"), q.elem("1")],
        ];
        VCategory::new("X", &q, labels(&["p", "q"]), m).unwrap();
        let bad = vec![
            vec![q.elem("1/2"), q.elem("1/2")],
            vec![q.elem("0"), q.elem("1")],
        ];
        assert_eq!(
            VCategory::new("X", &q, labels(&["p", "q"]), bad).unwrap_err(),
            Error::ReflexivityFail("p".into())
        );
    }

    #[test]
    fn transitivity_witness() {
        let q = builtin("boolean2", None).unwrap();
        let (o, i) = (q.elem("0"), q.elem("1"));
        let m = vec![vec![i, i, o], vec![o, i, i], vec![o, o, i]];
        assert_eq!(
            VCategory::new("X", &q, labels(&["a", "b", "c"]), m).unwrap_err(),
            Error::TransitivityFail("a".into(), "b".into(), "c".into())
        );
    }

    #[test]
    fn opposite_and_tensor() {
        let c = two_chain();
        assert_eq!(c.opposite().opposite().matrix(), c.matrix());
        assert!(c.opposite().le(1, 0));
        let p = c.tensor_product(&c).unwrap();
        p.check_axioms().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.le(i, j), c.le(i / 2, j / 2) && c.le(i % 2, j % 2));
            }
        }
        let e = VCategory::unit(c.quantale());
        let ce = c.tensor_product(&e).unwrap();
        assert_eq!(ce.matrix(), c.matrix());
    }

    #[test]
    fn separation() {
        let q = builtin("goedel_chain", Some(2)).unwrap();
        let d = VCategory::discrete(&q, labels(&["p", "q"]));
        assert!(d.is_separated());
        let k = q.unit();
        let ind = VCategory::new("I", &q, labels(&["p", "q"]), vec![vec![k, k], vec![k, k]]).unwrap();
        assert_eq!(ind.separation_witness(), Some((0, 1)));
        for name in ["boolean2", "goedel_chain", "lukasiewicz_chain"] {
            let size = (name != "boolean2").then_some(3);
            let v = VCategory::hom_self(&builtin(name, size).unwrap()).unwrap();
            v.check_axioms().unwrap();
            assert!(v.is_separated());
        }
    }

    #[test]
    fn hom_self_goedel() {
        let q = builtin("goedel_chain", Some(2)).unwrap();
        let v = VCategory::hom_self(&q).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.hom(2, 1), q.elem("1/2"));
        assert_eq!(v.row(2), q.carrier().unwrap());
        assert!(matches!(
            VCategory::hom_self(&builtin("ext_real_plus", None).unwrap()),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn functors() {
        let c = two_chain();
        let id = VFunctor::identity(&c);
        assert!(id.is_fully_faithful() && id.is_fully_dense());
        assert!(functor_leq(&id, &id).unwrap());
        let swap = VFunctor::new("s", &c, &c, vec![1, 0]).unwrap_err();
        assert_eq!(swap, Error::NotAFunctor("x".into(), "y".into()));
        let top = VFunctor::new("t", &c, &c, vec![1, 1]).unwrap();
        assert!(!top.is_fully_faithful());
        assert!(functor_leq(&id, &top).unwrap());
        assert!(!functor_leq(&top, &id).unwrap());
    }

    #[test]
    fn adjunction_over_ext_real_plus() {
        let q = builtin("ext_real_plus", None).unwrap();
        let elems: Vec<QElem> = ["0", "1", "2"].iter().map(|s| q.elem(s)).collect();
        let x = Arc::new(VCategory::hom_on(&q, &elems).unwrap());
        // f = (−) + 1 capped at 2, g = hom(1, −) = (−) ⊖ 1
        let f = VFunctor::raw("f", &x, &x, vec![1, 2, 2]).unwrap();
        let g = VFunctor::raw("g", &x, &x, vec![0, 0, 1]).unwrap();
        // oracle: X(u, g v) = (v ⊖ 1) ⊖ u and X(f u, v) = v ⊖ min(u + 1, 2)
        let holds = (0..3).all(|u| (0..3).all(|v| {
            let lhs = (v as i64 - 1).max(0).saturating_sub(u as i64).max(0);
            let rhs = (v as i64 - (u as i64 + 1).min(2)).max(0);
            lhs == rhs
        }));
        assert_eq!(check_adjunction(&f, &g).unwrap().is_none(), holds);
        assert_eq!(check_adjunction(&VFunctor::identity(&x), &VFunctor::identity(&x)).unwrap(), None);
    }

    #[test]
    fn non_monotone_map_fails_adjunction() {
        let c = two_chain();
        let swap = VFunctor::raw("s", &c, &c, vec![1, 0]).unwrap();
        assert!(check_adjunction(&swap, &swap).unwrap().is_some());
    }
}
