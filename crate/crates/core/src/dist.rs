//! V-relations and V-distributors between finite V-categories.
//!
//! A relation `r: X ⇸ Y` is stored as a row-major `|X| × |Y|` matrix with
//! `r[x][y] = r(x, y)`. Composition follows the diagrammatic convention of the
//! theory: `compose(s, r) = s · r` is "first `r`, then `s`".

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};
use crate::vcat::{same_quantale, CatRef, VCategory, VFunctor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRelation {
    q: Quantale,
    rows: usize,
    cols: usize,
    data: Vec<QElem>,
}

impl VRelation {
    pub fn new(q: &Quantale, rows: usize, cols: usize, data: Vec<QElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows} × {cols} relation",
                data.len()
            )));
        }
        if let Some(e) = data.iter().find(|e| !q.contains(**e)) {
            return Err(Error::ForeignElement(format!("{e:?}"), q.name().to_string()));
        }
        Ok(VRelation {
            q: q.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_matrix(q: &Quantale, m: Vec<Vec<QElem>>, cols: usize) -> Result<Self> {
        let rows = m.len();
        if m.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("rows must have {cols} entries")));
        }
        Self::new(q, rows, cols, m.into_iter().flatten().collect())
    }

    fn build(q: &Quantale, rows: usize, cols: usize, f: impl Fn(usize, usize) -> QElem) -> Self {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        VRelation {
            q: q.clone(),
            rows,
            cols,
            data,
        }
    }

    /// A presheaf `X ⇸ E` as a column.
    pub fn column_vec(q: &Quantale, v: &[QElem]) -> Self {
        Self::build(q, v.len(), 1, |x, _| v[x])
    }

    /// A relation `E ⇸ X` as a row.
    pub fn row_vec(q: &Quantale, v: &[QElem]) -> Self {
        Self::build(q, 1, v.len(), |_, x| v[x])
    }

    /// `k` on the diagonal, `⊥` elsewhere.
    pub fn identity(q: &Quantale, n: usize) -> Self {
        Self::build(q, n, n, |i, j| if i == j { q.unit() } else { q.bottom() })
    }

    /// The hom matrix of `X`, the identity distributor on `X`.
    pub fn hom_of(x: &VCategory) -> Self {
        Self::build(x.quantale(), x.len(), x.len(), |i, j| x.hom(i, j))
    }

    /// The graph `f_∘` of a map `f: {0..n} → {0..m}`.
    pub fn graph(q: &Quantale, map: &[usize], m: usize) -> Self {
        Self::build(q, map.len(), m, |x, y| if map[x] == y { q.unit() } else { q.bottom() })
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> QElem {
        self.data[x * self.cols + y]
    }

    pub fn data(&self) -> &[QElem] {
        &self.data
    }

    pub fn row(&self, x: usize) -> Vec<QElem> {
        self.data[x * self.cols..(x + 1) * self.cols].to_vec()
    }

    pub fn column(&self, y: usize) -> Vec<QElem> {
        (0..self.rows).map(|x| self.get(x, y)).collect()
    }

    /// `r°(y, x) = r(x, y)`.
    pub fn involution(&self) -> Self {
        Self::build(&self.q, self.cols, self.rows, |y, x| self.get(x, y))
    }

    /// First entry where `self ≰ other`.
    pub fn leq_witness(&self, other: &VRelation) -> Result<Option<(usize, usize)>> {
        self.same_shape(other)?;
        Ok((0..self.rows * self.cols)
            .find(|&i| !self.q.leq(self.data[i], other.data[i]))
            .map(|i| (i / self.cols, i % self.cols)))
    }

    pub fn leq(&self, other: &VRelation) -> Result<bool> {
        Ok(self.leq_witness(other)?.is_none())
    }

    fn same_shape(&self, other: &VRelation) -> Result<()> {
        same_quantale(&self.q, &other.q)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{} × {} vs {} × {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// `(s · r)(x, z) = ⋁_y r(x, y) ⊗ s(y, z)` for `r: X ⇸ Y`, `s: Y ⇸ Z`.
pub fn compose(s: &VRelation, r: &VRelation) -> Result<VRelation> {
    same_quantale(&s.q, &r.q)?;
    if r.cols != s.rows {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {} × {} after {} × {}",
            s.rows, s.cols, r.rows, r.cols
        )));
    }
    let q = &r.q;
    Ok(VRelation::build(q, r.rows, s.cols, |x, z| {
        q.join_all((0..r.cols).map(|y| q.tensor(r.get(x, y), s.get(y, z))))
    }))
}

/// `[φ, ψ](y, z) = ⋀_x hom(φ(x, y), ψ(x, z))` for `φ: X ⇸ Y`, `ψ: X ⇸ Z`.
pub fn right_extension(phi: &VRelation, psi: &VRelation) -> Result<VRelation> {
    same_quantale(&phi.q, &psi.q)?;
    if phi.rows != psi.rows {
        return Err(Error::ShapeMismatch(format!(
            "right extension needs a common domain ({} vs {})",
            phi.rows, psi.rows
        )));
    }
    let q = &phi.q;
    Ok(VRelation::build(q, phi.cols, psi.cols, |y, z| {
        q.meet_all((0..phi.rows).map(|x| q.hom(phi.get(x, y), psi.get(x, z))))
    }))
}

/// A relation together with the categories it is a distributor between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VDistributor {
    rel: VRelation,
    dom: CatRef,
    cod: CatRef,
}

impl Deref for VDistributor {
    type Target = VRelation;
    fn deref(&self) -> &VRelation {
        &self.rel
    }
}

impl VDistributor {
    pub fn relation(&self) -> &VRelation {
        &self.rel
    }

    pub fn into_relation(self) -> VRelation {
        self.rel
    }

    pub fn dom(&self) -> &CatRef {
        &self.dom
    }

    pub fn cod(&self) -> &CatRef {
        &self.cod
    }
}

/// Checks the bimodule laws `φ · a ≤ φ` and `b · φ ≤ φ` for `φ: X ⇸ Y`.
pub fn distributor_witness(r: &VRelation, x: &VCategory, y: &VCategory) -> Result<()> {
    same_quantale(&r.q, x.quantale())?;
    same_quantale(&r.q, y.quantale())?;
    if r.rows != x.len() || r.cols != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "relation is {} × {}, categories have {} and {} objects",
            r.rows,
            r.cols,
            x.len(),
            y.len()
        )));
    }
    let q = &r.q;
    for a in 0..x.len() {
        for a2 in 0..x.len() {
            let h = x.hom(a, a2);
            for b in 0..y.len() {
                if !q.leq(q.tensor(h, r.get(a2, b)), r.get(a, b)) {
                    return Err(Error::LeftActionFail(
                        x.label(a).into(),
                        x.label(a2).into(),
                        y.label(b).into(),
                    ));
                }
            }
        }
    }
    for a in 0..x.len() {
        for b in 0..y.len() {
            let v = r.get(a, b);
            for b2 in 0..y.len() {
                if !q.leq(q.tensor(v, y.hom(b, b2)), r.get(a, b2)) {
                    return Err(Error::RightActionFail(
                        x.label(a).into(),
                        y.label(b).into(),
                        y.label(b2).into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `φ: X ⇸ Y` is a distributor iff `(x, y) ↦ φ(x, y)` is a V-functor
/// `X^op ⊗ Y → (V, hom)`. Needs an enumerable quantale.
pub fn distributor_via_functor(r: &VRelation, x: &VCategory, y: &VCategory) -> Result<bool> {
    let q = &r.q;
    let v = std::sync::Arc::new(VCategory::hom_self(q)?);
    let src = std::sync::Arc::new(x.opposite().tensor_product(y)?);
    let map = (0..r.rows * r.cols)
        .map(|i| q.index_of(r.data[i]).expect("entry of an enumerable quantale"))
        .collect();
    Ok(VFunctor::raw("φ", &src, &v, map)?.is_functor())
}

/// Validates `r` as a distributor `X ⇸ Y`. Over enumerable quantales the
/// verdict is cross-checked against the functor criterion.
pub fn validate_distributor(r: &VRelation, x: &CatRef, y: &CatRef) -> Result<VDistributor> {
    let laws = distributor_witness(r, x, y);
    if r.q.is_enumerable() {
        assert_eq!(
            laws.is_ok(),
            distributor_via_functor(r, x, y)?,
            "bimodule laws and functor criterion disagree"
        );
    }
    laws?;
    Ok(VDistributor {
        rel: r.clone(),
        dom: x.clone(),
        cod: y.clone(),
    })
}

fn trusted(rel: VRelation, dom: &CatRef, cod: &CatRef) -> VDistributor {
    VDistributor {
        rel,
        dom: dom.clone(),
        cod: cod.clone(),
    }
}

/// `f_*(x, y) = Y(fx, y)`, a distributor `X ⇸ Y`.
pub fn star_lower(f: &VFunctor) -> VDistributor {
    let (x, y) = (f.dom(), f.cod());
    let rel = VRelation::build(x.quantale(), x.len(), y.len(), |a, b| y.hom(f.apply(a), b));
    trusted(rel, x, y)
}

/// `f^*(y, x) = Y(y, fx)`, a distributor `Y ⇸ X`.
pub fn star_upper(f: &VFunctor) -> VDistributor {
    let (x, y) = (f.dom(), f.cod());
    let rel = VRelation::build(x.quantale(), y.len(), x.len(), |b, a| y.hom(b, f.apply(a)));
    trusted(rel, y, x)
}

/// The identity distributor on `X`.
pub fn identity_distributor(x: &CatRef) -> VDistributor {
    trusted(VRelation::hom_of(x), x, x)
}

/// Outcome of [`check_adjoint_pair`]: first failures of unit and counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointPairCheck {
    pub unit_witness: Option<(usize, usize)>,
    pub counit_witness: Option<(usize, usize)>,
}

impl AdjointPairCheck {
    pub fn holds(&self) -> bool {
        self.unit_witness.is_none() && self.counit_witness.is_none()
    }
}

/// For `ψ: A ⇸ B` (left) and `φ: B ⇸ A` (right) checks `1_A ≤ φ · ψ` and
/// `ψ · φ ≤ 1_B`.
pub fn check_adjoint_pair(psi: &VRelation, phi: &VRelation, a: &VCategory, b: &VCategory) -> Result<AdjointPairCheck> {
    if (psi.rows, psi.cols) != (a.len(), b.len()) || (phi.rows, phi.cols) != (b.len(), a.len()) {
        return Err(Error::ShapeMismatch("adjoint pair needs A ⇸ B and B ⇸ A".into()));
    }
    let unit = VRelation::hom_of(a).leq_witness(&compose(phi, psi)?)?;
    let counit = compose(psi, phi)?.leq_witness(&VRelation::hom_of(b))?;
    Ok(AdjointPairCheck {
        unit_witness: unit,
        counit_witness: counit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::builtin;
    use std::sync::Arc;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn min_plus_product() {
        let q = builtin("ext_real_plus", None).unwrap();
        let e = |s: &str| q.elem(s);
        let r = VRelation::new(&q, 2, 2, vec![e("1"), e("3"), e("2"), e("0")]).unwrap();
        let s = VRelation::new(&q, 2, 1, vec![e("4"), e("1")]).unwrap();
        let c = compose(&s, &r).unwrap();
        assert_eq!(c.get(0, 0), e("4"));
        assert_eq!(c.get(1, 0), e("1"));
    }

    #[test]
    fn boolean_composition_is_relational() {
        let q = builtin("boolean2", None).unwrap();
        let (o, i) = (q.elem("0"), q.elem("1"));
        let r = VRelation::new(&q, 2, 3, vec![i, o, o, o, i, i]).unwrap();
        let s = VRelation::new(&q, 3, 2, vec![o, i, o, o, i, o]).unwrap();
        let c = compose(&s, &r).unwrap();
        // oracle: ordinary relational composition
        for x in 0..2 {
            for z in 0..2 {
                let related = (0..3).any(|y| r.get(x, y) == i && s.get(y, z) == i);
                assert_eq!(c.get(x, z) == i, related);
            }
        }
        assert_eq!(compose(&VRelation::identity(&q, 3), &r).unwrap(), r);
        assert_eq!(r.involution().involution(), r);
    }

    #[test]
    fn graph_adjunction() {
        let q = builtin("goedel_chain", Some(2)).unwrap();
        let f = VRelation::graph(&q, &[0, 0, 1], 2);
        let fo = f.involution();
        assert!(compose(&f, &fo).unwrap().leq(&VRelation::identity(&q, 2)).unwrap());
        assert!(VRelation::identity(&q, 3).leq(&compose(&fo, &f).unwrap()).unwrap());
        assert_eq!(VRelation::graph(&q, &[0, 1], 2), VRelation::identity(&q, 2));
    }

    fn chain() -> CatRef {
        let q = builtin("boolean2", None).unwrap();
        let (o, i) = (q.elem("0"), q.elem("1"));
        Arc::new(VCategory::new("C", &q, labels(&["x", "y"]), vec![vec![i, i], vec![o, i]]).unwrap())
    }

    #[test]
    fn distributors() {
        let c = chain();
        let q = c.quantale().clone();
        validate_distributor(&VRelation::hom_of(&c), &c, &c).unwrap();
        let e = Arc::new(VCategory::unit(&q));
        let (o, i) = (q.elem("0"), q.elem("1"));
        // φ(x) = 0, φ(y) = 1 is not a presheaf: x ≤ y forces φ(x) ≥ φ(y)
        let bad = VRelation::column_vec(&q, &[o, i]);
        assert_eq!(
            validate_distributor(&bad, &c, &e).unwrap_err(),
            Error::LeftActionFail("x".into(), "y".into(), "*".into())
        );
        let f = VFunctor::new("f", &e, &c, vec![1]).unwrap();
        validate_distributor(&star_lower(&f), &e, &c).unwrap();
        validate_distributor(&star_upper(&f), &c, &e).unwrap();
        assert_eq!(star_upper(&f).column(0), c.column(1));
    }

    #[test]
    fn companions_are_adjoint() {
        let c = chain();
        let f = VFunctor::new("f", &c, &c, vec![1, 1]).unwrap();
        let lo = star_lower(&f);
        let up = star_upper(&f);
        assert!(check_adjoint_pair(&lo, &up, &c, &c).unwrap().holds());
        let id = VFunctor::identity(&c);
        assert_eq!(star_lower(&id).relation(), &VRelation::hom_of(&c));
        assert_eq!(star_upper(&id).relation(), &VRelation::hom_of(&c));
    }

    #[test]
    fn metric_adjoint_pair() {
        let q = builtin("ext_real_plus", None).unwrap();
        let (z, one) = (q.elem("0"), q.elem("1"));
        let x = VCategory::new("X", &q, labels(&["p", "q"]), vec![vec![z, one], vec![one, z]]).unwrap();
        let e = VCategory::unit(&q);
        let phi = VRelation::column_vec(&q, &[z, one]);
        let psi = VRelation::row_vec(&q, &[z, one]);
        let check = check_adjoint_pair(&psi, &phi, &e, &x).unwrap();
        // oracle: unit inf(0+0, 1+1) = 0; counit φ(x) + ψ(x') ≥ d(x, x')
        assert!(check.holds());
        let bottom = VRelation::column_vec(&q, &[q.bottom(), q.bottom()]);
        assert!(check_adjoint_pair(&psi, &bottom, &e, &x).unwrap().unit_witness.is_some());
    }

    #[test]
    fn right_extension_identity_weight() {
        let c = chain();
        let q = c.quantale().clone();
        let psi = VRelation::column_vec(&q, &[q.elem("1"), q.elem("0")]);
        assert_eq!(right_extension(&VRelation::hom_of(&c), &psi).unwrap(), psi);
    }
}
