//! Weighted colimits, cocompleteness, Eilenberg-Moore algebras of presheaf
//! submonads, the minimum characterization of algebras, homomorphisms, and
//! injectivity with respect to T-embeddings.

use std::sync::Arc;

use serde::Serialize;

use crate::dist::{right_extension, star_lower, VRelation};
use crate::error::{Error, Result};
use crate::gen::all_functors;
use crate::monadkit::SubmonadSpec;
use crate::presheaf::{pf_vec, presheaf_hom, vector_label, PresheafCategory};
use crate::quantale::QElem;
use crate::report::{Check, Mode, Verdict};
use crate::vcat::{check_adjunction, CatRef, VCategory, VFunctor};

/// Default bound on `|X|^|B|` for the injectivity search.
pub const EXTENSION_BUDGET: u64 = 100_000;

/// Objects `z` with `Z(z, −) = row`.
pub fn representatives(z: &VCategory, row: &[QElem]) -> Vec<usize> {
    (0..z.len()).filter(|&c| z.row(c) == row).collect()
}

/// A colimit `g: Y → Z` with the objects where the representative was not
/// unique.
#[derive(Clone, Debug)]
pub struct WeightedColimit {
    pub g: VFunctor,
    pub multiple: Vec<usize>,
}

/// The first `y` whose row of `[φ, f_*]` is not representable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoColimit {
    pub y: String,
}

/// The colimit of `f: X → Z` weighted by `φ: X ⇸ Y`: `g` with
/// `g_* = [φ, f_*]`, searched row by row.
pub fn weighted_colimit(
    phi: &VRelation,
    y: &CatRef,
    f: &VFunctor,
) -> Result<std::result::Result<WeightedColimit, NoColimit>> {
    let z = f.cod();
    let ext = right_extension(phi, star_lower(f).relation())?;
    if ext.rows() != y.len() {
        return Err(Error::ShapeMismatch(format!("weight has {} columns, {} has {}", ext.rows(), y.name(), y.len())));
    }
    let mut map = Vec::with_capacity(y.len());
    let mut multiple = Vec::new();
    for t in 0..y.len() {
        let reps = representatives(z, &ext.row(t));
        match reps.first() {
            Some(&c) => map.push(c),
            None => return Ok(Err(NoColimit { y: y.label(t).to_string() })),
        }
        if reps.len() > 1 {
            multiple.push(t);
        }
    }
    let g = VFunctor::new("g", y, z, map)?;
    assert_eq!(star_lower(&g).relation(), &ext, "g_* must equal [φ, f_*]");
    Ok(Ok(WeightedColimit { g, multiple }))
}

/// Representative of `[φ, (1_X)_*]` for a presheaf `φ`, preferring `x`
/// when `φ = x^*`.
fn self_representative(x: &VCategory, phi: &[QElem]) -> Option<usize> {
    let q = x.quantale();
    let row = right_extension(&VRelation::column_vec(q, phi), &VRelation::hom_of(x))
        .expect("shapes agree")
        .row(0);
    let reps = representatives(x, &row);
    reps.iter()
        .copied()
        .find(|&c| x.column(c) == phi)
        .or_else(|| reps.first().copied())
}

fn members(spec: &SubmonadSpec, x: &CatRef, budget: u64) -> Result<PresheafCategory> {
    let px = PresheafCategory::build(x, budget)?;
    let mut keep = Vec::new();
    for v in px.vectors() {
        if spec.member(x, v)? {
            keep.push(v.clone());
        }
    }
    Ok(PresheafCategory::from_vectors(x, &format!("T{}", x.name()), keep))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocompletenessReport {
    pub category: String,
    pub spec: String,
    pub members: usize,
    /// Member weights whose `[φ, (1_Z)_*]` has no representative.
    pub failures: Vec<String>,
}

impl CocompletenessReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Z` is T-cocomplete when `[φ, (1_Z)_*]` is representable for every
/// `φ ∈ TZ`.
pub fn cocompleteness_check(z: &CatRef, spec: &SubmonadSpec, budget: u64) -> Result<CocompletenessReport> {
    let tz = members(spec, z, budget)?;
    let e = Arc::new(VCategory::unit(z.quantale()));
    let id = VFunctor::identity(z);
    let mut failures = Vec::new();
    for phi in tz.vectors() {
        if weighted_colimit(&VRelation::column_vec(z.quantale(), phi), &e, &id)?.is_err() {
            failures.push(vector_label(z.quantale(), phi));
        }
    }
    Ok(CocompletenessReport {
        category: z.name().to_string(),
        spec: spec.name.clone(),
        members: tz.len(),
        failures,
    })
}

/// An Eilenberg-Moore algebra `α: TX → X` of a presheaf submonad.
#[derive(Clone, Debug)]
pub struct AlgebraStructure {
    pub spec: String,
    pub carrier: CatRef,
    pub tx: PresheafCategory,
    /// `α(φ)` per member, in the order of `tx`.
    pub alpha: Vec<usize>,
    /// Members whose representative was not unique.
    pub multiple: Vec<usize>,
    /// `α·η_X ≃ 1_X`.
    pub unit_retraction: bool,
    /// `α ⊣ η_X`.
    pub left_adjoint: bool,
    /// `[φ, a](∗, x) = TX(φ, x^*) = X(α(φ), x)` entrywise.
    pub remark_consistent: bool,
}

impl AlgebraStructure {
    pub fn apply(&self, phi: &[QElem]) -> Option<usize> {
        self.tx.index_of(phi).map(|i| self.alpha[i])
    }

    pub fn functor(&self) -> VFunctor {
        VFunctor::raw("α", self.tx.cat(), &self.carrier, self.alpha.clone()).expect("total map")
    }
}

/// Extracts `α(φ)` as the representative of `[φ, (1_X)_*]`; the error lists
/// every unrepresentable member.
pub fn algebra_extract(
    x: &CatRef,
    spec: &SubmonadSpec,
    budget: u64,
) -> Result<std::result::Result<AlgebraStructure, Vec<String>>> {
    let q = x.quantale();
    let tx = members(spec, x, budget)?;
    let mut alpha = Vec::with_capacity(tx.len());
    let mut multiple = Vec::new();
    let mut missing = Vec::new();
    for (i, phi) in tx.vectors().iter().enumerate() {
        match self_representative(x, phi) {
            Some(c) => {
                if (0..x.len()).filter(|&d| x.iso(c, d)).count() > 1 {
                    multiple.push(i);
                }
                alpha.push(c);
            }
            None => missing.push(vector_label(q, phi)),
        }
    }
    if !missing.is_empty() {
        return Ok(Err(missing));
    }
    let tcat = tx.cat().clone();
    let unit_retraction = (0..x.len()).all(|c| match tx.index_of(&x.column(c)) {
        Some(i) => x.iso(alpha[i], c),
        None => false,
    });
    let left_adjoint = match tx.yoneda() {
        Ok(eta) => {
            let a = VFunctor::raw("α", &tcat, x, alpha.clone())?;
            check_adjunction(&a, &eta)?.is_none()
        }
        Err(_) => false,
    };
    let remark_consistent = tx.vectors().iter().enumerate().all(|(i, phi)| {
        let row = right_extension(&VRelation::column_vec(q, phi), &VRelation::hom_of(x))
            .expect("shapes agree")
            .row(0);
        (0..x.len()).all(|c| {
            let t = presheaf_hom(q, phi, &x.column(c));
            row[c] == t && t == x.hom(alpha[i], c)
        })
    });
    Ok(Ok(AlgebraStructure {
        spec: spec.name.clone(),
        carrier: x.clone(),
        tx,
        alpha,
        multiple,
        unit_retraction,
        left_adjoint,
        remark_consistent,
    }))
}

/// `min{x : φ ≤ x^*}` in the order of `X`; the lowest index among tied
/// minima.
pub fn min_point(x: &VCategory, phi: &[QElem]) -> Option<usize> {
    let q = x.quantale();
    let above: Vec<usize> = (0..x.len())
        .filter(|&c| (0..x.len()).all(|y| q.leq(phi[y], x.hom(y, c))))
        .collect();
    above.iter().copied().find(|&m| above.iter().all(|&s| x.le(m, s)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinReport {
    /// `x_φ` per member of `TX`, as labels.
    pub x_phi: Vec<String>,
    /// `X(x, x_φ) ⊗ TX(φ, ρ) ≤ X(x, x_ρ)` for all `x, φ, ρ`.
    pub condition_2: bool,
    /// `x_{ρ₁} ≃ x_ρ` for `ρ₁ = ⋁_φ X(−, x_φ) ⊗ TX(φ, ρ)`.
    pub condition_2_prime: bool,
    #[serde(skip)]
    pub indices: Vec<usize>,
}

impl MinReport {
    pub fn holds(&self) -> bool {
        self.condition_2
    }
}

/// The minimum characterization of T-algebras. Fails with `NoMinimum` on
/// the first member whose upper set has no least element.
pub fn min_characterization(x: &CatRef, spec: &SubmonadSpec, budget: u64) -> Result<MinReport> {
    let q = x.quantale();
    let tx = members(spec, x, budget)?;
    let mut idx = Vec::with_capacity(tx.len());
    for phi in tx.vectors() {
        idx.push(min_point(x, phi).ok_or_else(|| Error::NoMinimum(vector_label(q, phi)))?);
    }
    let t = tx.cat();
    let n = tx.len();
    let condition_2 = (0..x.len()).all(|c| {
        (0..n).all(|p| (0..n).all(|r| q.leq(q.tensor(x.hom(c, idx[p]), t.hom(p, r)), x.hom(c, idx[r]))))
    });
    let condition_2_prime = (0..n).all(|r| {
        let rho1: Vec<QElem> = (0..x.len())
            .map(|c| q.join_all((0..n).map(|p| q.tensor(x.hom(c, idx[p]), t.hom(p, r)))))
            .collect();
        matches!(min_point(x, &rho1), Some(m) if x.iso(m, idx[r]))
    });
    Ok(MinReport {
        x_phi: idx.iter().map(|&c| x.label(c).to_string()).collect(),
        condition_2,
        condition_2_prime,
        indices: idx,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    /// `β·Tf ≤ f·α`.
    pub lax: bool,
    /// `β(φ·f^*) ≥ f(α(φ))` as well, so both sides agree up to `≃`.
    pub strict: bool,
    pub witness: Option<String>,
}

/// Compares `β(φ·f^*)` with `f(α(φ))` over every member `φ`. The lax
/// inequality is a theorem for V-functors and is asserted.
pub fn t_homomorphism_check(f: &VFunctor, alg_x: &AlgebraStructure, alg_y: &AlgebraStructure) -> Result<HomomorphismReport> {
    if alg_x.spec != alg_y.spec {
        return Err(Error::SpecMismatch(alg_x.spec.clone(), alg_y.spec.clone()));
    }
    if f.dom() != &alg_x.carrier || f.cod() != &alg_y.carrier {
        return Err(Error::ShapeMismatch(format!("{} does not run between the algebra carriers", f.name())));
    }
    let y = f.cod();
    let q = y.quantale();
    let mut lax = true;
    let mut strict = true;
    let mut witness = None;
    for (i, phi) in alg_x.tx.vectors().iter().enumerate() {
        let image = pf_vec(f, phi);
        let b = alg_y.apply(&image).ok_or_else(|| {
            Error::MultiplicationEscapesT(format!("T{} sends {} outside TY", f.name(), vector_label(q, phi)))
        })?;
        let fa = f.apply(alg_x.alpha[i]);
        lax &= y.le(b, fa);
        if !y.le(fa, b) {
            strict = false;
            witness.get_or_insert_with(|| vector_label(q, phi));
        }
    }
    if f.is_functor() {
        assert!(lax, "β·Tf ≤ f·α must hold for the V-functor {}", f.name());
    }
    Ok(HomomorphismReport {
        lax,
        strict: lax && strict,
        witness,
    })
}

/// Every V-functor `u: A → X` extends along `h: A → B` to some `v: B → X`
/// with `v·h ≃ u`; exhaustive within the budget on `|X|^|B|`.
pub fn injectivity_check(x: &CatRef, h: &VFunctor, budget: u64) -> Result<Check> {
    let (a, b) = (h.dom(), h.cod());
    let size = (x.len() as u64).checked_pow(b.len() as u32).filter(|&s| s <= budget);
    if size.is_none() {
        return Ok(Check::new(
            "injective",
            Verdict::unchecked(format!("{}^{} extensions exceed {budget}", x.len(), b.len())),
            Mode::Skipped,
        ));
    }
    let extensions = all_functors(b, x);
    for u in all_functors(a, x) {
        let ok = extensions
            .iter()
            .any(|v| (0..a.len()).all(|c| x.iso(v.apply(h.apply(c)), u.apply(c))));
        if !ok {
            return Ok(Check::exhaustive(
                "injective",
                Verdict::Fail {
                    witness: format!("{} along {}", u.map().iter().map(|&c| x.label(c)).collect::<Vec<_>>().join(","), h.name()),
                },
            ));
        }
    }
    Ok(Check::exhaustive("injective", Verdict::Pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::DEFAULT_BUDGET;
    use crate::quantale::builtin;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn chain3() -> CatRef {
        let q = builtin("boolean2", None).unwrap();
        let m = (0..3)
            .map(|i| (0..3).map(|j| if i <= j { q.top() } else { q.bottom() }).collect())
            .collect();
        Arc::new(VCategory::new("C3", &q, labels(&["x", "y", "z"]), m).unwrap())
    }

    #[test]
    fn point_weight_gives_the_point() {
        let c = chain3();
        let q = c.quantale().clone();
        let e = Arc::new(VCategory::unit(&q));
        let f = VFunctor::identity(&c);
        for x in 0..3 {
            let g = weighted_colimit(&VRelation::column_vec(&q, &c.column(x)), &e, &f)
                .unwrap()
                .unwrap();
            assert_eq!(g.g.map(), &[x]);
        }
    }

    #[test]
    fn hom_self_join_formula() {
        for (kind, n) in [("boolean2", None), ("goedel_chain", Some(2)), ("lukasiewicz_chain", Some(2))] {
            let q = builtin(kind, n).unwrap();
            let v = Arc::new(VCategory::hom_self(&q).unwrap());
            let c = q.carrier().unwrap();
            let alg = algebra_extract(&v, &SubmonadSpec::all(), DEFAULT_BUDGET).unwrap().unwrap();
            for (i, phi) in alg.tx.vectors().iter().enumerate() {
                // oracle: ⋁_v φ(v) ⊗ v
                let j = q.join_all(c.iter().enumerate().map(|(k, &u)| q.tensor(phi[k], u)));
                assert_eq!(c[alg.alpha[i]], j);
            }
            assert!(alg.unit_retraction && alg.left_adjoint && alg.remark_consistent);
            assert!(cocompleteness_check(&v, &SubmonadSpec::all(), DEFAULT_BUDGET).unwrap().holds());
        }
    }

    #[test]
    fn discrete_pair_has_no_top_colimit() {
        let q = builtin("boolean2", None).unwrap();
        let d = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let e = Arc::new(VCategory::unit(&q));
        let top = VRelation::column_vec(&q, &[q.top(), q.top()]);
        let r = weighted_colimit(&top, &e, &VFunctor::identity(&d)).unwrap();
        assert_eq!(r.unwrap_err().y, "*");
        assert!(!cocompleteness_check(&d, &SubmonadSpec::all(), DEFAULT_BUDGET).unwrap().holds());
        assert!(algebra_extract(&d, &SubmonadSpec::all(), DEFAULT_BUDGET).unwrap().is_err());
        assert!(matches!(
            min_characterization(&d, &SubmonadSpec::all(), DEFAULT_BUDGET),
            Err(Error::NoMinimum(_))
        ));
    }

    #[test]
    fn min_of_down_set() {
        let c = chain3();
        let q = c.quantale().clone();
        let phi = [q.top(), q.top(), q.bottom()];
        assert_eq!(min_point(&c, &phi), Some(1));
        for x in 0..3 {
            assert_eq!(min_point(&c, &c.column(x)), Some(x));
        }
        let r = min_characterization(&c, &SubmonadSpec::all(), DEFAULT_BUDGET).unwrap();
        assert!(r.condition_2 && r.condition_2_prime);
    }

    #[test]
    fn collapse_is_lax_only() {
        let q = builtin("boolean2", None).unwrap();
        let c3 = chain3();
        let c2 = Arc::new(
            VCategory::new("C2", &q, labels(&["0", "1"]), vec![vec![q.top(), q.top()], vec![q.bottom(), q.top()]]).unwrap(),
        );
        let spec = SubmonadSpec::all();
        let a3 = algebra_extract(&c3, &spec, DEFAULT_BUDGET).unwrap().unwrap();
        let a2 = algebra_extract(&c2, &spec, DEFAULT_BUDGET).unwrap().unwrap();
        // sends the bottom x to 1: the empty join is not preserved
        let f = VFunctor::new("f", &c3, &c2, vec![1, 1, 1]).unwrap();
        let r = t_homomorphism_check(&f, &a3, &a2).unwrap();
        assert!(r.lax && !r.strict);
        assert!(r.witness.is_some());
        let g = VFunctor::new("g", &c3, &c2, vec![0, 1, 1]).unwrap();
        assert!(t_homomorphism_check(&g, &a3, &a2).unwrap().strict);
        let id = VFunctor::identity(&c3);
        assert!(t_homomorphism_check(&id, &a3, &a3).unwrap().strict);
    }

    #[test]
    fn complete_lattice_is_injective() {
        let q = builtin("boolean2", None).unwrap();
        let c3 = chain3();
        let d = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let e = Arc::new(VCategory::unit(&q));
        let h = VFunctor::new("h", &e, &d, vec![0]).unwrap();
        assert!(injectivity_check(&c3, &h, EXTENSION_BUDGET).unwrap().verdict.passed());
        let inc = VFunctor::new("i", &d, &c3, vec![0, 2]).unwrap();
        // the discrete pair is not an algebra and fails to extend
        assert!(injectivity_check(&d, &inc, EXTENSION_BUDGET).unwrap().verdict.failed());
    }
}
