//! The Lawvere monad: right adjoint presheaves found by exhaustive search,
//! Lawvere completeness and completion, L-dense points, and eventually
//! constant Cauchy sequences in finite generalized metric spaces.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::colimit::representatives;
use crate::dist::{check_adjoint_pair, right_extension, VRelation};
use crate::error::{Error, Result};
use crate::monadkit::{t_embedding_check, SubmonadSpec};
use crate::presheaf::{candidate_count, enumerate_presheaves, vector_label, PresheafCategory};
use crate::quantale::{QElem, QuantaleKind};
use crate::vcat::{CatRef, VCategory, VFunctor};

/// A right adjoint presheaf `φ: X ⇸ E` with its left adjoint `ψ: E ⇸ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointPair {
    pub phi: Vec<QElem>,
    pub psi: Vec<QElem>,
    /// An object `x` with `φ = x^*`, if any.
    pub representative: Option<usize>,
}

/// `ψ(x) ⊗ a(x, x') ≤ ψ(x')`.
fn is_copresheaf(x: &VCategory, psi: &[QElem]) -> bool {
    let q = x.quantale();
    (0..x.len()).all(|a| (0..x.len()).all(|b| q.leq(q.tensor(psi[a], x.hom(a, b)), psi[b])))
}

/// Every right adjoint presheaf on `X`, certified by searching all vectors
/// `ψ ∈ V^X` that are distributors `E ⇸ X` for the unit and counit.
pub fn enumerate_l(x: &CatRef, budget: u64) -> Result<Vec<AdjointPair>> {
    let q = x.quantale();
    let carrier = q.require_enumerable()?;
    candidate_count(q, x.len(), budget)?;
    let e = VCategory::unit(q);
    let presheaves = enumerate_presheaves(x, budget)?;
    let n = x.len();
    let mut out = Vec::new();
    for phi in presheaves {
        let col = VRelation::column_vec(q, &phi);
        let mut digits = vec![0usize; n];
        let found = loop {
            let psi: Vec<QElem> = digits.iter().map(|&d| carrier[d]).collect();
            if is_copresheaf(x, &psi)
                && check_adjoint_pair(&VRelation::row_vec(q, &psi), &col, &e, x)?.holds()
            {
                break Some(psi);
            }
            let mut i = n;
            let more = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < carrier.len() {
                    break true;
                }
                digits[i] = 0;
            };
            if !more {
                break None;
            }
        };
        if let Some(psi) = found {
            let representative = (0..n).find(|&c| x.column(c) == phi);
            out.push(AdjointPair { phi, psi, representative });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LCompleteReport {
    pub holds: bool,
    /// First right adjoint presheaf that is not representable.
    pub witness: Option<String>,
    pub members: usize,
}

/// `X` is Lawvere complete when every right adjoint presheaf is some `x^*`.
pub fn is_l_complete(x: &CatRef, budget: u64) -> Result<LCompleteReport> {
    let pairs = enumerate_l(x, budget)?;
    let witness = pairs
        .iter()
        .find(|p| p.representative.is_none())
        .map(|p| vector_label(x.quantale(), &p.phi));
    Ok(LCompleteReport {
        holds: witness.is_none(),
        witness,
        members: pairs.len(),
    })
}

/// `LX` with its unit, and the facts the construction guarantees.
#[derive(Clone, Debug)]
pub struct LawvereCompletion {
    pub lx: PresheafCategory,
    pub pairs: Vec<AdjointPair>,
    pub unit: VFunctor,
    pub unit_fully_faithful: bool,
    pub unit_bijective: bool,
    /// `LX` is itself Lawvere complete, so `L(LX) ≅ LX` via its unit.
    pub idempotent: bool,
}

pub fn lawvere_completion(x: &CatRef, budget: u64) -> Result<LawvereCompletion> {
    let pairs = enumerate_l(x, budget)?;
    let lx = PresheafCategory::from_vectors(x, &format!("L{}", x.name()), pairs.iter().map(|p| p.phi.clone()).collect());
    let unit = lx.yoneda()?;
    let unit_fully_faithful = unit.is_fully_faithful();
    let unit_bijective = unit.is_injective() && lx.len() == x.len();
    let idempotent = is_l_complete(lx.cat(), budget)?.holds;
    Ok(LawvereCompletion {
        lx,
        pairs,
        unit,
        unit_fully_faithful,
        unit_bijective,
        idempotent,
    })
}

/// A finite sequence of object labels, constant from `stable_from` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchySequenceSpec {
    pub points: Vec<String>,
    pub stable_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyPair {
    /// `φ = lim X(−, x_n)`.
    pub phi: Vec<String>,
    /// `ψ = lim X(x_n, −)`.
    pub psi: Vec<String>,
    pub certified: bool,
    /// Representative of `[φ, (1_X)_*]`.
    pub representative: Option<String>,
    pub limit: String,
}

/// The adjoint pair of an eventually constant sequence over `[0,∞]_+`.
/// Both limits are read off at the stabilization point.
pub fn cauchy_pair(x: &CatRef, seq: &CauchySequenceSpec) -> Result<CauchyPair> {
    let q = x.quantale();
    if q.kind() != QuantaleKind::ExtRealPlus {
        return Err(Error::WrongQuantale {
            expected: "ext_real_plus".into(),
            got: q.kind().to_string(),
        });
    }
    let s = seq
        .stable_from
        .ok_or_else(|| Error::NotEventuallyConstant("no stabilization index".into()))?;
    if s >= seq.points.len() {
        return Err(Error::NotEventuallyConstant(format!("index {s} is past the end")));
    }
    let tail = &seq.points[s..];
    if let Some(p) = tail.iter().find(|p| *p != &tail[0]) {
        return Err(Error::NotEventuallyConstant(format!("{p} follows {} after index {s}", tail[0])));
    }
    for p in &seq.points {
        if x.index_of(p).is_none() {
            return Err(Error::BadParameter(format!("{p} is not an object of {}", x.name())));
        }
    }
    let l = x.index_of(&tail[0]).expect("checked");
    let phi = x.column(l);
    let psi = x.row(l);
    let e = VCategory::unit(q);
    let certified = check_adjoint_pair(&VRelation::row_vec(q, &psi), &VRelation::column_vec(q, &phi), &e, x)?.holds();
    let row = right_extension(&VRelation::column_vec(q, &phi), &VRelation::hom_of(x))?.row(0);
    let representative = representatives(x, &row).first().map(|&c| x.label(c).to_string());
    let label = |v: &[QElem]| v.iter().map(|&e| q.label(e)).collect();
    Ok(CauchyPair {
        phi: label(&phi),
        psi: label(&psi),
        certified,
        representative,
        limit: tail[0].clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LDenseReport {
    /// `y ≤ x` for every `x`.
    pub l_dense: bool,
    /// `y ≃ x` for every `x`.
    pub fully_dense: bool,
    /// `y: E → X` is an L-embedding by the general criterion.
    pub t_embedding: bool,
}

pub fn l_dense_point_check(x: &CatRef, y: usize) -> Result<LDenseReport> {
    let q = x.quantale();
    if !q.is_integral() {
        return Err(Error::NotIntegral(q.name().to_string()));
    }
    let e = Arc::new(VCategory::unit(q));
    let point = VFunctor::new(x.label(y), &e, x, vec![y])?;
    Ok(LDenseReport {
        l_dense: (0..x.len()).all(|c| x.le(y, c)),
        fully_dense: point.is_fully_dense(),
        t_embedding: t_embedding_check(&SubmonadSpec::right_adjoints(), &point)?.holds(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monadkit::submonad_build;
    use crate::presheaf::DEFAULT_BUDGET;
    use crate::quantale::builtin;
    use crate::scalar::Ext;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn representables_are_members() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let (h, o) = (q.elem("1/2"), q.elem("1"));
        let x = Arc::new(VCategory::new("X", &q, labels(&["p", "q"]), vec![vec![o, h], vec![h, o]]).unwrap());
        let pairs = enumerate_l(&x, DEFAULT_BUDGET).unwrap();
        for c in 0..2 {
            let p = pairs.iter().find(|p| p.phi == x.column(c)).unwrap();
            assert_eq!(p.psi, x.row(c));
        }
        let closed = submonad_build(&SubmonadSpec::right_adjoints(), &x, DEFAULT_BUDGET).unwrap();
        let searched: Vec<Vec<QElem>> = pairs.iter().map(|p| p.phi.clone()).collect();
        assert_eq!(closed.tx.vectors(), &searched[..]);
    }

    #[test]
    fn boolean_chain_is_complete() {
        let q = builtin("boolean2", None).unwrap();
        let x = Arc::new(
            VCategory::new("C", &q, labels(&["x", "y"]), vec![vec![q.top(), q.top()], vec![q.bottom(), q.top()]]).unwrap(),
        );
        let c = lawvere_completion(&x, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.lx.len(), 2);
        assert!(c.unit_fully_faithful && c.unit_bijective && c.idempotent);
        assert!(is_l_complete(&x, DEFAULT_BUDGET).unwrap().holds);
    }

    #[test]
    fn cauchy_pairs() {
        let q = builtin("ext_real_plus", None).unwrap();
        let one = QElem::Num(Ext::int(1));
        let zero = QElem::Num(Ext::zero());
        let x = Arc::new(VCategory::new("M", &q, labels(&["a", "b"]), vec![vec![zero, one], vec![one, zero]]).unwrap());
        let seq = CauchySequenceSpec {
            points: labels(&["a", "a", "b", "b", "b"]),
            stable_from: Some(2),
        };
        let p = cauchy_pair(&x, &seq).unwrap();
        assert_eq!(p.phi, labels(&["1", "0"]));
        assert_eq!(p.psi, labels(&["1", "0"]));
        assert!(p.certified);
        assert_eq!(p.representative.as_deref(), Some("b"));
        let bad = CauchySequenceSpec {
            points: labels(&["a", "b", "a"]),
            stable_from: Some(1),
        };
        assert!(matches!(cauchy_pair(&x, &bad), Err(Error::NotEventuallyConstant(_))));
        let none = CauchySequenceSpec {
            points: labels(&["a"]),
            stable_from: None,
        };
        assert!(matches!(cauchy_pair(&x, &none), Err(Error::NotEventuallyConstant(_))));
    }

    #[test]
    fn dense_points() {
        let q = builtin("boolean2", None).unwrap();
        let x = Arc::new(
            VCategory::new("C", &q, labels(&["x", "y"]), vec![vec![q.top(), q.top()], vec![q.bottom(), q.top()]]).unwrap(),
        );
        let bottom = l_dense_point_check(&x, 0).unwrap();
        assert!(bottom.l_dense && bottom.t_embedding && !bottom.fully_dense);
        let top = l_dense_point_check(&x, 1).unwrap();
        assert!(!top.l_dense && !top.t_embedding);
        let k = q.unit();
        let ind = Arc::new(VCategory::new("I", &q, labels(&["p", "q"]), vec![vec![k, k], vec![k, k]]).unwrap());
        for y in 0..2 {
            let r = l_dense_point_check(&ind, y).unwrap();
            assert!(r.l_dense && r.fully_dense && r.t_embedding);
        }
    }
}
