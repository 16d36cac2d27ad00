//! Formal balls: the extended ball monad `B̄` (all radii) and the ball monad
//! `B` (radii other than `⊥`), their comparison with presheaves, tensored
//! categories and ball algebras, cancellativity and B-embeddings.

use std::sync::Arc;

use serde::Serialize;

use crate::dist::right_extension;
use crate::dist::VRelation;
use crate::error::{Error, Result};
use crate::gen;
use crate::monadkit::{MonadData, MorphismInstance};
use crate::quantale::{QElem, Quantale};
use crate::report::{Check, Verdict};
use crate::vcat::{check_adjunction, CatRef, VCategory, VFunctor};

/// `B̄X((x,r),(y,s)) = hom(r, X(x,y) ⊗ s)`, evaluated on demand.
pub fn ball_hom(x: &VCategory, a: usize, r: QElem, b: usize, s: QElem) -> QElem {
    let q = x.quantale();
    q.hom(r, q.tensor(x.hom(a, b), s))
}

/// A materialized ball category over a finite radius set. Ball `(x, r_j)`
/// has index `x · |radii| + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCategory {
    base: CatRef,
    extended: bool,
    radii: Vec<QElem>,
    cat: CatRef,
}

impl BallCategory {
    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn cat(&self) -> &CatRef {
        &self.cat
    }

    pub fn radii(&self) -> &[QElem] {
        &self.radii
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn len(&self) -> usize {
        self.cat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }

    pub fn index(&self, x: usize, r: QElem) -> Option<usize> {
        self.radii.iter().position(|&s| s == r).map(|j| x * self.radii.len() + j)
    }

    pub fn ball(&self, i: usize) -> (usize, QElem) {
        let m = self.radii.len();
        (i / m, self.radii[i % m])
    }

    /// `η_X(x) = (x, k)`.
    pub fn unit(&self) -> Result<VFunctor> {
        let k = self.base.quantale().unit();
        let map = (0..self.base.len())
            .map(|x| self.index(x, k))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadParameter("radius set lacks the unit".into()))?;
        Ok(VFunctor::trusted("η", &self.base, &self.cat, map))
    }
}

/// `B̄X` (extended) or `BX` over the whole carrier.
pub fn ball_category(x: &CatRef, extended: bool) -> Result<BallCategory> {
    let q = x.quantale();
    let radii: Vec<QElem> = q
        .require_enumerable()?
        .into_iter()
        .filter(|&r| extended || r != q.bottom())
        .collect();
    ball_category_with_radii(x, &radii, extended)
}

/// A ball category on an explicit finite radius set, required for
/// non-enumerable quantales.
pub fn ball_category_with_radii(x: &CatRef, radii: &[QElem], extended: bool) -> Result<BallCategory> {
    let q = x.quantale();
    if let Some(&r) = radii.iter().find(|&&r| !q.contains(r)) {
        return Err(Error::ForeignElement(format!("{r:?}"), q.name().to_string()));
    }
    if !extended && radii.contains(&q.bottom()) {
        return Err(Error::BadParameter("radius ⊥ is excluded from B".into()));
    }
    let mut objects = Vec::with_capacity(x.len() * radii.len());
    let mut matrix = Vec::with_capacity(x.len() * radii.len());
    for a in 0..x.len() {
        for &r in radii {
            objects.push(format!("({},{})", x.label(a), q.label(r)));
            let row = (0..x.len())
                .flat_map(|b| radii.iter().map(move |&s| (b, s)))
                .map(|(b, s)| ball_hom(x, a, r, b, s))
                .collect();
            matrix.push(row);
        }
    }
    let name = format!("{}{}", if extended { "B̄" } else { "B" }, x.name());
    let cat = Arc::new(VCategory::new(&name, q, objects, matrix)?);
    Ok(BallCategory {
        base: x.clone(),
        extended,
        radii: radii.to_vec(),
        cat,
    })
}

/// `Bf(x, r) = (f x, r)`.
pub fn ball_map(f: &VFunctor, bx: &BallCategory, by: &BallCategory) -> Result<VFunctor> {
    if bx.base() != f.dom() || by.base() != f.cod() || bx.radii != by.radii {
        return Err(Error::ShapeMismatch(format!("B{} needs balls over its domain and codomain", f.name())));
    }
    let m = bx.radii.len();
    let map = (0..bx.len()).map(|i| f.apply(i / m) * m + i % m).collect();
    Ok(VFunctor::trusted(&format!("B{}", f.name()), bx.cat(), by.cat(), map))
}

/// `μ_X((x,r),s) = (x, r ⊗ s)`.
pub fn ball_mult(bx: &BallCategory, bbx: &BallCategory) -> Result<VFunctor> {
    if bbx.base() != bx.cat() {
        return Err(Error::ShapeMismatch("multiplication needs balls over balls".into()));
    }
    let q = bx.base.quantale();
    let map = (0..bbx.len())
        .map(|i| {
            let (b, s) = bbx.ball(i);
            let (x, r) = bx.ball(b);
            bx.index(x, q.tensor(r, s))
                .ok_or_else(|| Error::MultiplicationEscapesT(bbx.cat().label(i).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VFunctor::trusted("μ", bbx.cat(), bx.cat(), map))
}

/// `BX`, `BBX` and the monad structure maps at one V-category.
#[derive(Clone, Debug)]
pub struct BallTower {
    pub bx: BallCategory,
    pub bbx: BallCategory,
    pub unit: VFunctor,
    pub t_unit: VFunctor,
    pub unit_t: VFunctor,
    pub mult: VFunctor,
}

impl BallTower {
    pub fn build(x: &CatRef, extended: bool) -> Result<Self> {
        let bx = ball_category(x, extended)?;
        let bbx = ball_category(bx.cat(), extended)?;
        let unit = bx.unit()?;
        let unit_t = bbx.unit()?;
        let t_unit = ball_map(&unit, &bx, &bbx)?;
        let mult = ball_mult(&bx, &bbx)?;
        Ok(BallTower {
            bx,
            bbx,
            unit,
            t_unit,
            unit_t,
            mult,
        })
    }

    pub fn monad_data(&self) -> MonadData {
        MonadData {
            unit: self.unit.clone(),
            t_unit: self.t_unit.clone(),
            unit_t: self.unit_t.clone(),
            mult: self.mult.clone(),
        }
    }

    /// `μ·Bη = 1`, `μ·ηB = 1` and associativity, the last by tracking
    /// `(((x,r),s),t)` through both composites without materializing `BBBX`.
    pub fn monad_laws(&self) -> Vec<Check> {
        let q = self.bx.base.quantale();
        let n = self.bx.len();
        let left = (0..n).find(|&i| self.mult.apply(self.t_unit.apply(i)) != i);
        let right = (0..n).find(|&i| self.mult.apply(self.unit_t.apply(i)) != i);
        let mut assoc = None;
        'outer: for i in 0..self.bbx.len() {
            let (b, s) = self.bbx.ball(i);
            let (x, r) = self.bx.ball(b);
            for &t in &self.bx.radii {
                let lhs = self.bx.index(x, q.tensor(q.tensor(r, s), t));
                let rhs = self.bx.index(x, q.tensor(r, q.tensor(s, t)));
                if lhs != rhs {
                    assoc = Some(format!("(({}, {}), {})", self.bbx.cat().label(i), q.label(s), q.label(t)));
                    break 'outer;
                }
            }
        }
        let lbl = |o: Option<usize>| o.map(|i| self.bx.cat().label(i).to_string());
        vec![
            Check::exhaustive("μ·Bη = 1", Verdict::from_witness(lbl(left))),
            Check::exhaustive("μ·ηB = 1", Verdict::from_witness(lbl(right))),
            Check::exhaustive("μ·Bμ = μ·μB", Verdict::from_witness(assoc)),
        ]
    }

    /// `σ: B̄ → P` at this V-category, ready for
    /// [`crate::monadkit::monad_morphism_check`].
    pub fn morphism_instance(&self) -> MorphismInstance {
        MorphismInstance {
            eta: self.unit.clone(),
            mu: self.mult.clone(),
            sigma: sigma_ball(&self.bx),
            sigma_t: sigma_ball(&self.bbx),
        }
    }
}

/// `σ_X(x,r)(y) = X(y,x) ⊗ r` for every ball.
pub fn sigma_ball(bx: &BallCategory) -> Vec<Vec<QElem>> {
    let x = bx.base();
    let q = x.quantale();
    (0..bx.len())
        .map(|i| {
            let (c, r) = bx.ball(i);
            (0..x.len()).map(|y| q.tensor(x.hom(y, c), r)).collect()
        })
        .collect()
}

/// The naturality square of `η` at `f`: `(η_X, f, η_Y, Bf)`.
pub fn eta_naturality_square(f: &VFunctor, bx: &BallCategory, by: &BallCategory) -> Result<[VFunctor; 4]> {
    Ok([bx.unit()?, f.clone(), by.unit()?, ball_map(f, bx, by)?])
}

/// A computed tensor `x ⊕ r` for every object and radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorAction {
    #[serde(skip)]
    pub radii: Vec<QElem>,
    /// `table[x][j] = x ⊕ radii[j]`.
    pub table: Vec<Vec<usize>>,
    /// `(x, j)` where several objects qualified.
    pub multiple: Vec<(usize, usize)>,
}

impl TensorAction {
    pub fn apply(&self, x: usize, r: QElem) -> Option<usize> {
        self.radii.iter().position(|&s| s == r).map(|j| self.table[x][j])
    }
}

/// First `(x, r)` for which no `x ⊕ r` exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotTensored {
    pub x: String,
    pub r: String,
}

/// Searches `x ⊕ r` with `X(x ⊕ r, y) = hom(r, X(x, y))` for all `y`. For
/// `r = k` the object `x` itself is preferred; otherwise the lowest index
/// wins and the tie is recorded.
pub fn tensored_check(x: &VCategory, radii: &[QElem]) -> std::result::Result<TensorAction, NotTensored> {
    let q = x.quantale();
    let mut table = vec![Vec::with_capacity(radii.len()); x.len()];
    let mut multiple = Vec::new();
    for (a, row) in table.iter_mut().enumerate() {
        for (j, &r) in radii.iter().enumerate() {
            let sols: Vec<usize> = (0..x.len())
                .filter(|&z| (0..x.len()).all(|y| x.hom(z, y) == q.hom(r, x.hom(a, y))))
                .collect();
            let pick = if r == q.unit() && sols.contains(&a) {
                a
            } else {
                match sols.first() {
                    Some(&z) => z,
                    None => {
                        return Err(NotTensored {
                            x: x.label(a).to_string(),
                            r: q.label(r),
                        })
                    }
                }
            };
            if sols.len() > 1 {
                multiple.push((a, j));
            }
            row.push(pick);
        }
    }
    Ok(TensorAction {
        radii: radii.to_vec(),
        table,
        multiple,
    })
}

/// `α(x, r)` as the representative of `[σ_X(x,r), (1_X)_*]`, computed by
/// right extension; `None` when some weight has no colimit.
pub fn algebra_via_colimits(bx: &BallCategory) -> Option<Vec<usize>> {
    let x = bx.base();
    let q = x.quantale();
    let a = VRelation::hom_of(x);
    sigma_ball(bx)
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let row = right_extension(&VRelation::column_vec(q, w), &a).expect("shapes agree").row(0);
            let (c, r) = bx.ball(i);
            let sols: Vec<usize> = (0..x.len()).filter(|&z| x.row(z) == row).collect();
            if r == q.unit() && sols.contains(&c) {
                Some(c)
            } else {
                sols.first().copied()
            }
        })
        .collect()
}

/// Backtracking search for a V-functor `α: BX → X` with `α(x, k) = x`,
/// visiting at most `budget` partial assignments.
pub fn find_algebra_structure(bx: &BallCategory, budget: u64) -> Result<Option<Vec<usize>>> {
    let x = bx.base();
    let b = bx.cat();
    let k = x.quantale().unit();
    let q = x.quantale();
    let n = bx.len();
    let mut alpha = vec![usize::MAX; n];
    let fixed: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let (c, r) = bx.ball(i);
            (r == k).then_some(c)
        })
        .collect();
    let mut visited = 0u64;
    fn consistent(b: &VCategory, x: &VCategory, q: &Quantale, alpha: &[usize], i: usize) -> bool {
        (0..=i).all(|j| {
            q.leq(b.hom(i, j), x.hom(alpha[i], alpha[j])) && q.leq(b.hom(j, i), x.hom(alpha[j], alpha[i]))
        })
    }
    // iterative depth-first search over ball indices
    let mut i = 0usize;
    let mut next = vec![0usize; n + 1];
    loop {
        if i == n {
            return Ok(Some(alpha));
        }
        let candidates: Vec<usize> = match fixed[i] {
            Some(c) => vec![c],
            None => (0..x.len()).collect(),
        };
        let mut advanced = false;
        while next[i] < candidates.len() {
            visited += 1;
            if visited > budget {
                return Err(Error::BudgetExceeded {
                    needed: format!("more than {budget} partial maps"),
                    budget,
                });
            }
            alpha[i] = candidates[next[i]];
            next[i] += 1;
            if consistent(b, x, q, &alpha, i) {
                advanced = true;
                break;
            }
        }
        if advanced {
            i += 1;
            next[i] = 0;
        } else {
            next[i] = 0;
            alpha[i] = usize::MAX;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
        }
    }
}

/// Verdicts of the ball algebra conditions for one structure map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallAlgebraReport {
    pub functor: bool,
    /// `α(x,k) = x` and `α(x, r⊗s) ≃ α(α(x,r), s)` whenever `r⊗s` is a radius.
    pub cond_ii: bool,
    /// `α(x,k) = x` and `X(x, α(x,r)) ≥ r` for `r ≠ ⊥`.
    pub cond_iii: bool,
    /// `α(x,k) = x`.
    pub cond_iv: bool,
    /// `α ⊣ η_X` and `α·η_X = 1`, decided only for V-functors.
    pub adjunction: Option<bool>,
}

impl BallAlgebraReport {
    pub fn agree(&self) -> bool {
        !self.functor
            || (self.cond_ii == self.cond_iii
                && self.cond_iii == self.cond_iv
                && self.adjunction == Some(self.cond_iv))
    }

    pub fn holds(&self) -> bool {
        self.functor && self.cond_ii && self.cond_iii && self.cond_iv
    }
}

pub fn ball_algebra_check(bx: &BallCategory, alpha: &[usize]) -> Result<BallAlgebraReport> {
    let x = bx.base();
    let q = x.quantale();
    let k = q.unit();
    let f = VFunctor::raw("α", bx.cat(), x, alpha.to_vec())?;
    let functor = f.is_functor();
    let at = |c: usize, r: QElem| bx.index(c, r).map(|i| alpha[i]);
    let cond_iv = (0..x.len()).all(|c| at(c, k) == Some(c));
    let cond_ii = cond_iv
        && (0..x.len()).all(|c| {
            bx.radii.iter().all(|&r| {
                bx.radii.iter().all(|&s| match (at(c, q.tensor(r, s)), at(c, r)) {
                    (Some(lhs), Some(mid)) => match at(mid, s) {
                        Some(rhs) => x.iso(lhs, rhs),
                        None => true,
                    },
                    _ => true,
                })
            })
        });
    let cond_iii = cond_iv
        && (0..x.len()).all(|c| {
            bx.radii
                .iter()
                .filter(|&&r| r != q.bottom())
                .all(|&r| q.leq(r, x.hom(c, at(c, r).expect("radius present"))))
        });
    let adjunction = if functor {
        let eta = bx.unit()?;
        Some(check_adjunction(&f, &eta)?.is_none() && cond_iv)
    } else {
        None
    };
    Ok(BallAlgebraReport {
        functor,
        cond_ii,
        cond_iii,
        cond_iv,
        adjunction,
    })
}

/// The structure map `α(x, r) = x ⊕ r` of an action.
pub fn action_as_alpha(bx: &BallCategory, act: &TensorAction) -> Vec<usize> {
    (0..bx.len())
        .map(|i| {
            let (c, r) = bx.ball(i);
            act.apply(c, r).expect("action covers the radii")
        })
        .collect()
}

/// The identities an action satisfies: `x ⊕ k = x`,
/// `x ⊕ (r⊗s) ≃ (x ⊕ r) ⊕ s`, `X(x, x ⊕ r) ≥ r` for `r ≠ ⊥`, and
/// `(x ⊕ −) ⊣ X(x, −)` between `(V, hom)` and `X` when the radii are the
/// whole carrier.
pub fn action_identities(x: &CatRef, act: &TensorAction) -> Result<Vec<Check>> {
    let q = x.quantale();
    let k = q.unit();
    let lbl = |c: usize, r: QElem| format!("({}, {})", x.label(c), q.label(r));
    let unit = (0..x.len()).find(|&c| act.apply(c, k) != Some(c)).map(|c| lbl(c, k));
    let mut assoc = None;
    let mut bound = None;
    for c in 0..x.len() {
        for &r in &act.radii {
            let xr = act.apply(c, r).expect("radius present");
            if r != q.bottom() && bound.is_none() && !q.leq(r, x.hom(c, xr)) {
                bound = Some(lbl(c, r));
            }
            for &s in &act.radii {
                if let (Some(lhs), Some(rhs)) = (act.apply(c, q.tensor(r, s)), act.apply(xr, s)) {
                    if assoc.is_none() && !x.iso(lhs, rhs) {
                        assoc = Some(format!("({}, {}, {})", x.label(c), q.label(r), q.label(s)));
                    }
                }
            }
        }
    }
    let mut checks = vec![
        Check::exhaustive("x ⊕ k = x", Verdict::from_witness(unit)),
        Check::exhaustive("x ⊕ (r⊗s) = (x ⊕ r) ⊕ s", Verdict::from_witness(assoc)),
        Check::exhaustive("X(x, x ⊕ r) ≥ r", Verdict::from_witness(bound)),
    ];
    if let Some(carrier) = q.carrier().filter(|c| c == &act.radii) {
        let v = Arc::new(VCategory::hom_self(q)?);
        let mut fail = None;
        for c in 0..x.len() {
            let plus = VFunctor::raw("x⊕−", &v, x, act.table[c].clone())?;
            let hom_map = (0..x.len())
                .map(|y| carrier.iter().position(|&e| e == x.hom(c, y)).expect("carrier element"))
                .collect();
            let hom = VFunctor::raw("X(x,−)", x, &v, hom_map)?;
            if check_adjunction(&plus, &hom)?.is_some() {
                fail = Some(x.label(c).to_string());
                break;
            }
        }
        checks.push(Check::exhaustive("(x ⊕ −) ⊣ X(x, −)", Verdict::from_witness(fail)));
    }
    Ok(checks)
}

/// Lax and strict morphism conditions for a map between tensored categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallMorphismReport {
    pub monotone: bool,
    /// Monotone and `f(x) ⊕ r ≤ f(x ⊕ r)` everywhere.
    pub lax: bool,
    /// `f(x ⊕ r) ≃ f(x) ⊕ r` everywhere.
    pub strict: bool,
    /// Independent V-functor test of the same map.
    pub is_functor: bool,
}

pub fn ball_morphism_check(f: &VFunctor, ax: &TensorAction, ay: &TensorAction) -> Result<BallMorphismReport> {
    if ax.radii != ay.radii {
        return Err(Error::ShapeMismatch("actions use different radii".into()));
    }
    let (x, y) = (f.dom(), f.cod());
    let n = x.len();
    let monotone = (0..n).all(|a| (0..n).all(|b| !x.le(a, b) || y.le(f.apply(a), f.apply(b))));
    let mut ineq = true;
    let mut strict = true;
    for a in 0..n {
        for (j, _) in ax.radii.iter().enumerate() {
            let lhs = ay.table[f.apply(a)][j];
            let rhs = f.apply(ax.table[a][j]);
            ineq &= y.le(lhs, rhs);
            strict &= y.iso(lhs, rhs);
        }
    }
    Ok(BallMorphismReport {
        monotone,
        lax: monotone && ineq,
        strict: monotone && strict,
        is_functor: f.is_functor(),
    })
}

/// Agreement of cancellativity, separation of `BV`, and preservation of
/// separation by `B` on generated separated categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellativityReport {
    pub cancellative: bool,
    pub cancellative_witness: Option<(String, String)>,
    pub bv_separated: bool,
    pub bv_witness: Option<(String, String)>,
    pub preserves_separation: bool,
    pub preservation_witness: Option<String>,
    pub instances: usize,
}

impl CancellativityReport {
    pub fn agree(&self) -> bool {
        self.cancellative == self.bv_separated && self.bv_separated == self.preserves_separation
    }
}

pub fn cancellativity_consequences(q: &Quantale, seed: u64) -> Result<CancellativityReport> {
    q.require_enumerable()?;
    if !q.is_integral() {
        return Err(Error::NotIntegral(q.name().to_string()));
    }
    let flags = q.flags();
    let v = Arc::new(VCategory::hom_self(q)?);
    let bv = ball_category(&v, false)?;
    let sep = |b: &BallCategory| {
        b.cat()
            .separation_witness()
            .map(|(i, j)| (b.cat().label(i).to_string(), b.cat().label(j).to_string()))
    };
    let bv_witness = sep(&bv);
    let mut instances = 0;
    let mut preservation_witness = None;
    let mut family = gen::family(q, 3, 8, seed);
    family.push(v.clone());
    for x in family.iter().filter(|x| x.is_separated()) {
        instances += 1;
        if let Some((a, b)) = sep(&ball_category(x, false)?) {
            preservation_witness = Some(format!("B{}: {a} ≃ {b}", x.name()));
            break;
        }
    }
    Ok(CancellativityReport {
        cancellative: flags.cancellative,
        cancellative_witness: flags.cancellative_witness,
        bv_separated: bv_witness.is_none(),
        bv_witness,
        preserves_separation: preservation_witness.is_none(),
        preservation_witness,
        instances,
    })
}

/// Result of [`b_embedding_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BEmbeddingReport {
    pub fully_faithful: bool,
    /// `ȳ` per object of `Y` (as an object of `X`) when unique.
    pub bar: Vec<Option<String>>,
    /// First `y` with no or several `z` satisfying the factorization.
    pub witness: Option<String>,
    /// `B̄h ⊣ B̄h♯` and `B̄h♯·B̄h = 1` for `B̄h♯(y,r) = (ȳ, Y(ȳ,y) ⊗ r)`.
    pub sharp_adjoint: Option<bool>,
    /// A right adjoint left inverse of `B̄h` found by direct search.
    pub searched_adjoint: bool,
    /// `k_y = Y(y_k, y)`, the factorization through `y_k`, and
    /// `B̄Y((x,r),(y,r)) = B̄Y((x,r),(y_r,r_y))`, on the searched adjoint.
    pub factorization: Option<bool>,
}

impl BEmbeddingReport {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.witness.is_none()
    }
}

/// Recognizes B-embeddings by the factorization criterion
/// `Y(x,y) = Y(x,z) ⊗ Y(z,y)` with a unique `z ∈ X`, and cross-checks it
/// against a direct search for the right adjoint of `B̄h`.
pub fn b_embedding_check(h: &VFunctor) -> Result<BEmbeddingReport> {
    let (x, y) = (h.dom(), h.cod());
    let q = x.quantale();
    q.require_enumerable()?;
    let flags = q.flags();
    if !flags.integral {
        return Err(Error::PreconditionFail(format!("{} is not integral", q.name())));
    }
    if !flags.cancellative {
        return Err(Error::PreconditionFail(format!("{} is not cancellative", q.name())));
    }
    for c in [x, y] {
        if let Some((a, b)) = c.separation_witness() {
            return Err(Error::PreconditionFail(format!(
                "{} is not separated ({} ≃ {})",
                c.name(),
                c.label(a),
                c.label(b)
            )));
        }
    }
    let fully_faithful = h.is_fully_faithful();
    let mut bar = Vec::with_capacity(y.len());
    let mut witness = None;
    for t in 0..y.len() {
        let zs: Vec<usize> = (0..x.len())
            .filter(|&z| (0..x.len()).all(|a| y.hom(h.apply(a), t) == q.tensor(y.hom(h.apply(a), h.apply(z)), y.hom(h.apply(z), t))))
            .collect();
        if zs.len() == 1 {
            bar.push(Some(zs[0]));
        } else {
            bar.push(None);
            if witness.is_none() {
                witness = Some(format!("{} has {} candidates", y.label(t), zs.len()));
            }
        }
    }

    let bx = ball_category(x, true)?;
    let by = ball_category(y, true)?;
    let bh = ball_map(h, &bx, &by)?;
    let sharp_adjoint = if bar.iter().all(Option::is_some) && fully_faithful {
        let map = (0..by.len())
            .map(|i| {
                let (t, r) = by.ball(i);
                let z = bar[t].expect("all present");
                bx.index(z, q.tensor(y.hom(h.apply(z), t), r)).expect("full carrier")
            })
            .collect();
        let sharp = VFunctor::raw("B̄h♯", by.cat(), bx.cat(), map)?;
        let left_inverse = (0..bx.len()).all(|i| sharp.apply(bh.apply(i)) == i);
        Some(left_inverse && check_adjunction(&bh, &sharp)?.is_none())
    } else {
        None
    };

    // right adjoint of B̄h by search: g(b) with B̄X(a, g b) = B̄Y(B̄h a, b)
    let search: Option<Vec<usize>> = (0..by.len())
        .map(|b| (0..bx.len()).find(|&g| (0..bx.len()).all(|a| bx.cat().hom(a, g) == by.cat().hom(bh.apply(a), b))))
        .collect();
    let searched_adjoint =
        matches!(&search, Some(g) if (0..bx.len()).all(|a| bx.cat().iso(g[bh.apply(a)], a)));
    let factorization = search.as_ref().filter(|_| searched_adjoint).map(|g| {
        let k = q.unit();
        (0..y.len()).all(|t| {
            let (yk, ky) = bx.ball(g[by.index(t, k).expect("unit radius")]);
            let hyk = h.apply(yk);
            ky == y.hom(hyk, t)
                && (0..x.len()).all(|a| {
                    let ha = h.apply(a);
                    y.hom(ha, t) == q.tensor(y.hom(ha, hyk), y.hom(hyk, t))
                        && bx.radii.iter().all(|&r| {
                            let (yr, ry) = bx.ball(g[by.index(t, r).expect("radius")]);
                            ball_hom(y, ha, r, t, r) == ball_hom(y, ha, r, h.apply(yr), ry)
                        })
                })
        })
    });
    Ok(BEmbeddingReport {
        fully_faithful,
        bar: bar.iter().map(|z| z.map(|z| x.label(z).to_string())).collect(),
        witness,
        sharp_adjoint,
        searched_adjoint,
        factorization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monadkit::{lax_idempotency_via_bc, monad_morphism_check};
    use crate::presheaf::{PresheafCategory, DEFAULT_BUDGET};
    use crate::quantale::builtin;
    use crate::scalar::Ext;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ext_real_unit_balls_are_hom_self() {
        let q = builtin("ext_real_plus", None).unwrap();
        let e = Arc::new(VCategory::unit(&q));
        let radii: Vec<QElem> = (0..3).map(|i| QElem::Num(Ext::int(i))).collect();
        let b = ball_category_with_radii(&e, &radii, true).unwrap();
        for (i, &r) in radii.iter().enumerate() {
            for (j, &s) in radii.iter().enumerate() {
                // oracle: s ⊖ r on naturals
                let (rv, sv) = (i as i64, j as i64);
                assert_eq!(b.cat().hom(i, j), QElem::Num(Ext::int((sv - rv).max(0))));
                assert_eq!(b.cat().hom(i, j), q.hom(r, s));
            }
        }
        assert!(matches!(ball_category(&e, true), Err(Error::NotEnumerable(_))));
    }

    #[test]
    fn bottom_balls_collapse() {
        let q = builtin("boolean2", None).unwrap();
        let d = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let b = ball_category(&d, true).unwrap();
        let (p0, q0) = (b.index(0, q.bottom()).unwrap(), b.index(1, q.bottom()).unwrap());
        assert!(b.cat().iso(p0, q0));
        assert!(!b.cat().is_separated());
        // oracle: the non-⊥ layer is a copy of the discrete category
        let (p1, q1) = (b.index(0, q.top()).unwrap(), b.index(1, q.top()).unwrap());
        assert!(!b.cat().le(p1, q1) && !b.cat().le(q1, p1));
        assert!(b.cat().le(p0, p1) && !b.cat().le(p1, p0));
    }

    #[test]
    fn sigma_is_fully_faithful_but_not_injective() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let (h, o) = (q.elem("1/2"), q.elem("1"));
        let x = Arc::new(VCategory::new("X", &q, labels(&["p", "q"]), vec![vec![o, h], vec![h, o]]).unwrap());
        let tower = BallTower::build(&x, true).unwrap();
        let px = PresheafCategory::build(&x, DEFAULT_BUDGET).unwrap();
        let r = monad_morphism_check(&tower.morphism_instance(), &px).unwrap();
        assert!(r.unit_diagram.verdict.passed());
        assert!(r.multiplication_diagram.verdict.passed());
        assert!(r.pointwise_fully_faithful.verdict.passed());
        assert!(r.pointwise_injective.verdict.failed());
        let sig = sigma_ball(&tower.bx);
        assert_eq!(sig[tower.bx.index(0, q.unit()).unwrap()], x.column(0));
        assert!(sig[tower.bx.index(1, q.bottom()).unwrap()].iter().all(|&e| e == q.bottom()));
    }

    #[test]
    fn ball_monad_laws_and_lax_idempotency() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let x = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let tower = BallTower::build(&x, true).unwrap();
        assert!(tower.monad_laws().iter().all(|c| c.verdict.passed()));
        let r = lax_idempotency_via_bc(&tower.monad_data()).unwrap();
        assert!(r.holds() && r.agree());
        assert!(matches!(BallTower::build(&x, false), Err(Error::MultiplicationEscapesT(_))));
    }

    #[test]
    fn hom_self_is_tensored_by_tensor() {
        for (kind, n) in [("boolean2", None), ("goedel_chain", Some(3)), ("lukasiewicz_chain", Some(4))] {
            let q = builtin(kind, n).unwrap();
            let v = Arc::new(VCategory::hom_self(&q).unwrap());
            let c = q.carrier().unwrap();
            let act = tensored_check(&v, &c).unwrap();
            for (i, &u) in c.iter().enumerate() {
                for &r in &c {
                    assert_eq!(c[act.apply(i, r).unwrap()], q.tensor(u, r));
                }
            }
            assert!(action_identities(&v, &act).unwrap().iter().all(|ch| ch.verdict.passed()));
            let bx = ball_category(&v, true).unwrap();
            let rep = ball_algebra_check(&bx, &action_as_alpha(&bx, &act)).unwrap();
            assert!(rep.holds() && rep.agree());
            assert_eq!(algebra_via_colimits(&bx), Some(action_as_alpha(&bx, &act)));
        }
    }

    #[test]
    fn discrete_pair_is_not_tensored() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let d = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let e = tensored_check(&d, &[q.elem("1/2")]).unwrap_err();
        assert_eq!(e.x, "p");
        let bx = ball_category(&d, true).unwrap();
        assert_eq!(find_algebra_structure(&bx, 100_000).unwrap(), None);
        assert_eq!(algebra_via_colimits(&bx), None);
    }

    #[test]
    fn broken_unit_fails_all_conditions() {
        let q = builtin("boolean2", None).unwrap();
        let v = Arc::new(VCategory::hom_self(&q).unwrap());
        let bx = ball_category(&v, true).unwrap();
        let mut alpha = action_as_alpha(&bx, &tensored_check(&v, &q.carrier().unwrap()).unwrap());
        let i = bx.index(0, q.unit()).unwrap();
        alpha[i] = 1;
        let r = ball_algebra_check(&bx, &alpha).unwrap();
        assert!(!r.cond_ii && !r.cond_iii && !r.cond_iv);
    }

    #[test]
    fn tensor_by_constant_is_strict() {
        let q = builtin("lukasiewicz_chain", Some(3)).unwrap();
        let v = Arc::new(VCategory::hom_self(&q).unwrap());
        let c = q.carrier().unwrap();
        let act = tensored_check(&v, &c).unwrap();
        for &k in &c {
            let map = c.iter().map(|&u| c.iter().position(|&e| e == q.tensor(u, k)).unwrap()).collect();
            let f = VFunctor::new("−⊗c", &v, &v, map).unwrap();
            let r = ball_morphism_check(&f, &act, &act).unwrap();
            assert!(r.lax && r.strict && r.is_functor);
        }
    }

    #[test]
    fn cancellativity_three_ways() {
        let luk = cancellativity_consequences(&builtin("lukasiewicz_chain", Some(2)).unwrap(), 5).unwrap();
        assert!(luk.cancellative && luk.bv_separated && luk.preserves_separation);
        let goe = cancellativity_consequences(&builtin("goedel_chain", Some(2)).unwrap(), 5).unwrap();
        assert!(!goe.cancellative && !goe.bv_separated && !goe.preserves_separation);
        let b = cancellativity_consequences(&builtin("boolean2", None).unwrap(), 5).unwrap();
        assert!(b.agree() && b.cancellative);
    }

    #[test]
    fn intervals_are_b_embeddings() {
        let q = builtin("lukasiewicz_chain", Some(4)).unwrap();
        let v = Arc::new(VCategory::hom_self(&q).unwrap());
        let c = q.carrier().unwrap();
        let sub = |idx: &[usize]| {
            let elems: Vec<QElem> = idx.iter().map(|&i| c[i]).collect();
            let x = Arc::new(VCategory::hom_on(&q, &elems).unwrap());
            VFunctor::new("h", &x, &v, idx.to_vec()).unwrap()
        };
        let good = b_embedding_check(&sub(&[1, 2, 3])).unwrap();
        assert!(good.holds());
        assert_eq!(good.sharp_adjoint, Some(true));
        assert!(good.searched_adjoint);
        assert_eq!(good.factorization, Some(true));
        let gappy = b_embedding_check(&sub(&[1, 3])).unwrap();
        assert!(!gappy.holds() && !gappy.searched_adjoint);
        assert!(gappy.witness.is_some());
        let id = b_embedding_check(&VFunctor::identity(&v)).unwrap();
        assert!(id.holds());
        assert_eq!(id.bar, v.objects().iter().cloned().map(Some).collect::<Vec<_>>());
    }
}
