//! Monad machinery over V-categories: BC*-squares, lax idempotency, presheaf
//! submonads given by membership predicates, admissible classes, `Φ(T)` and
//! T-embeddings, and monad morphisms into `P`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::dist::{self, compose, right_extension, star_lower, star_upper, VRelation};
use crate::error::{Error, Result};
use crate::presheaf::{
    candidate_count, enumerate_presheaves, mult_vec, pf_vec, presheaf_hom, sample_presheaves, vector_label,
    PresheafCategory, PresheafTower, DEFAULT_SAMPLES,
};
use crate::quantale::QElem;
use crate::report::{Check, Mode, Verdict};
use crate::vcat::{check_adjunction, CatRef, VCategory, VFunctor};

/// A square `l: W → Z`, `g: W → X`, `f: X → Y`, `h: Z → Y` with `f·g = h·l`.
#[derive(Clone, Debug)]
pub struct CommutingSquare {
    pub l: VFunctor,
    pub g: VFunctor,
    pub f: VFunctor,
    pub h: VFunctor,
}

impl CommutingSquare {
    pub fn new(l: VFunctor, g: VFunctor, f: VFunctor, h: VFunctor) -> Result<Self> {
        let shapes = l.dom() == g.dom() && g.cod() == f.dom() && l.cod() == h.dom() && f.cod() == h.cod();
        if !shapes {
            return Err(Error::ShapeMismatch("square edges do not match up".into()));
        }
        let w = l.dom();
        if let Some(i) = (0..w.len()).find(|&i| f.apply(g.apply(i)) != h.apply(l.apply(i))) {
            return Err(Error::NotCommuting(w.label(i).to_string()));
        }
        Ok(CommutingSquare { l, g, f, h })
    }

    /// `(1, 1, f, f)`.
    pub fn identity_square(f: &VFunctor) -> Self {
        let one = VFunctor::identity(f.dom());
        CommutingSquare {
            l: one.clone(),
            g: one,
            f: f.clone(),
            h: f.clone(),
        }
    }

    /// The square with horizontal and vertical arrows exchanged, over the
    /// same categories.
    pub fn transposed(&self) -> Self {
        CommutingSquare {
            l: self.g.clone(),
            g: self.l.clone(),
            f: self.h.clone(),
            h: self.f.clone(),
        }
    }

    /// The transposed square over the opposite categories.
    pub fn dual(&self) -> Self {
        let mut ops: Vec<(VCategory, CatRef)> = Vec::new();
        let mut op = |c: &CatRef| -> CatRef {
            if let Some((_, r)) = ops.iter().find(|(k, _)| k == &**c) {
                return r.clone();
            }
            let r = Arc::new(c.opposite());
            ops.push(((**c).clone(), r.clone()));
            r
        };
        let mut flip = |f: &VFunctor| {
            let (d, c) = (op(f.dom()), op(f.cod()));
            VFunctor::trusted(&format!("{}^op", f.name()), &d, &c, f.map().to_vec())
        };
        let t = self.transposed();
        CommutingSquare {
            l: flip(&t.l),
            g: flip(&t.g),
            f: flip(&t.f),
            h: flip(&t.h),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "({}: {}→{}, {}: {}→{}, {}: {}→{}, {}: {}→{})",
            self.l.name(),
            self.l.dom().name(),
            self.l.cod().name(),
            self.g.name(),
            self.g.dom().name(),
            self.g.cod().name(),
            self.f.name(),
            self.f.dom().name(),
            self.f.cod().name(),
            self.h.name(),
            self.h.dom().name(),
            self.h.cod().name()
        )
    }
}

/// Outcome of [`bc_star_square_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcReport {
    pub holds: bool,
    /// First `(x, z)` with `h^*·f_*(x,z) ≰ l_*·g^*(x,z)`, by label.
    pub witness: Option<(String, String)>,
}

impl BcReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_witness(self.witness.as_ref().map(|(x, z)| format!("({x}, {z})")))
    }
}

/// Tests `h^*·f_* ≤ l_*·g^*` entrywise. The reverse inequality holds for
/// every commuting square and is asserted.
pub fn bc_star_square_check(sq: &CommutingSquare) -> Result<BcReport> {
    let lhs = compose(&star_upper(&sq.h), &star_lower(&sq.f))?;
    let rhs = compose(&star_lower(&sq.l), &star_upper(&sq.g))?;
    assert!(
        rhs.leq(&lhs)?,
        "l_*·g^* ≤ h^*·f_* must hold for a commuting square {}",
        sq.describe()
    );
    let w = lhs.leq_witness(&rhs)?;
    let (x, z) = (sq.f.dom(), sq.h.dom());
    Ok(BcReport {
        holds: w.is_none(),
        witness: w.map(|(i, j)| (x.label(i).to_string(), z.label(j).to_string())),
    })
}

/// Per-morphism BC* verdicts for a natural transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NatBcReport {
    pub name: String,
    pub results: Vec<(String, BcReport)>,
}

impl NatBcReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, r)| r.holds)
    }
}

/// Checks each naturality square `(α_X, Tf, α_Y, T'f)` for BC*. The squares
/// are given as `(label of f, [α_X, Tf, α_Y, T'f])`.
pub fn nattrans_bc_check(name: &str, squares: Vec<(String, [VFunctor; 4])>) -> Result<NatBcReport> {
    let mut results = Vec::with_capacity(squares.len());
    for (label, [l, g, f, h]) in squares {
        let sq = match CommutingSquare::new(l, g, f, h) {
            Ok(sq) => sq,
            Err(Error::NotCommuting(_)) => return Err(Error::NotNatural(label)),
            Err(e) => return Err(e),
        };
        results.push((label, bc_star_square_check(&sq)?));
    }
    Ok(NatBcReport {
        name: name.to_string(),
        results,
    })
}

/// `η_X`, `Tη_X`, `η_TX` and `μ_X` for one V-category.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub unit: VFunctor,
    pub t_unit: VFunctor,
    pub unit_t: VFunctor,
    pub mult: VFunctor,
}

impl From<&PresheafTower> for MonadData {
    fn from(t: &PresheafTower) -> Self {
        MonadData {
            unit: t.unit.clone(),
            t_unit: t.t_unit.clone(),
            unit_t: t.unit_t.clone(),
            mult: t.mult.clone(),
        }
    }
}

impl MonadData {
    /// The square `(Tη_X, η_TX, μ_X, μ_X)`.
    pub fn lax_square(&self) -> Result<CommutingSquare> {
        CommutingSquare::new(self.t_unit.clone(), self.unit_t.clone(), self.mult.clone(), self.mult.clone())
    }

    /// The square `(η_TX, Tη_X, μ_X, μ_X)` characterizing oplax idempotency.
    pub fn oplax_square(&self) -> Result<CommutingSquare> {
        CommutingSquare::new(self.unit_t.clone(), self.t_unit.clone(), self.mult.clone(), self.mult.clone())
    }
}

/// BC* verdict of the lax idempotency square next to the two direct
/// adjunction tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaxBcReport {
    pub bc_square: bool,
    pub t_unit_left_of_mult: bool,
    pub mult_left_of_unit_t: bool,
}

impl LaxBcReport {
    pub fn holds(&self) -> bool {
        self.bc_square
    }

    pub fn agree(&self) -> bool {
        self.bc_square == self.t_unit_left_of_mult && self.bc_square == self.mult_left_of_unit_t
    }
}

pub fn lax_idempotency_via_bc(data: &MonadData) -> Result<LaxBcReport> {
    let sq = data.lax_square()?;
    Ok(LaxBcReport {
        bc_square: bc_star_square_check(&sq)?.holds,
        t_unit_left_of_mult: check_adjunction(&data.t_unit, &data.mult)?.is_none(),
        mult_left_of_unit_t: check_adjunction(&data.mult, &data.unit_t)?.is_none(),
    })
}

/// The left adjoint candidate `[φ, a]` of a presheaf `φ`, as a row `E ⇸ X`.
pub fn left_adjoint_candidate(x: &VCategory, phi: &[QElem]) -> Vec<QElem> {
    let q = x.quantale();
    right_extension(&VRelation::column_vec(q, phi), &VRelation::hom_of(x))
        .expect("shapes agree")
        .row(0)
}

/// `φ: X ⇸ E` is a right adjoint; decided by testing `[φ, a] ⊣ φ`, which is
/// the only possible left adjoint.
pub fn is_right_adjoint(x: &VCategory, phi: &[QElem]) -> bool {
    let q = x.quantale();
    let psi = VRelation::row_vec(q, &left_adjoint_candidate(x, phi));
    let e = VCategory::unit(q);
    dist::check_adjoint_pair(&psi, &VRelation::column_vec(q, phi), &e, x)
        .expect("shapes agree")
        .holds()
}

/// `φ(y) = X(y, x) ⊗ r` for some object `x` and radius `r`.
pub fn is_ball_image(x: &VCategory, phi: &[QElem]) -> Result<bool> {
    let q = x.quantale();
    let radii = q.require_enumerable()?;
    Ok((0..x.len()).any(|c| {
        radii
            .iter()
            .any(|&r| (0..x.len()).all(|y| q.tensor(x.hom(y, c), r) == phi[y]))
    }))
}

type PresheafPredicate = Arc<dyn Fn(&VCategory, &[QElem]) -> bool + Send + Sync>;
type DistributorPredicate = Arc<dyn Fn(&VRelation, &VCategory, &VCategory) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum SpecKind {
    /// Every presheaf: the presheaf monad itself.
    All,
    /// Right adjoint presheaves: the Lawvere monad.
    RightAdjoints,
    /// Presheaves of the form `X(−, x) ⊗ r`.
    BallImage,
    /// Member vectors listed per category name.
    UserTable(BTreeMap<String, Vec<Vec<QElem>>>),
    /// Arbitrary predicates; the optional second one overrides the
    /// column-wise membership of general distributors.
    Custom(PresheafPredicate, Option<DistributorPredicate>),
}

/// A named membership predicate carving `TX ⊆ PX`.
#[derive(Clone)]
pub struct SubmonadSpec {
    pub name: String,
    pub kind: SpecKind,
}

impl fmt::Debug for SubmonadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubmonadSpec({})", self.name)
    }
}

impl SubmonadSpec {
    pub fn new(name: &str, kind: SpecKind) -> Self {
        SubmonadSpec {
            name: name.to_string(),
            kind,
        }
    }

    pub fn all() -> Self {
        Self::new("all", SpecKind::All)
    }

    pub fn right_adjoints() -> Self {
        Self::new("right_adjoints", SpecKind::RightAdjoints)
    }

    pub fn ball_image() -> Self {
        Self::new("ball_image", SpecKind::BallImage)
    }

    /// Is the presheaf `φ` on `X` a member of `TX`?
    pub fn member(&self, x: &VCategory, phi: &[QElem]) -> Result<bool> {
        match &self.kind {
            SpecKind::All => Ok(true),
            SpecKind::RightAdjoints => Ok(is_right_adjoint(x, phi)),
            SpecKind::BallImage => is_ball_image(x, phi),
            SpecKind::UserTable(t) => t
                .get(x.name())
                .map(|vs| vs.iter().any(|v| v == phi))
                .ok_or_else(|| Error::BadParameter(format!("spec {} has no table for {}", self.name, x.name()))),
            SpecKind::Custom(p, _) => Ok(p(x, phi)),
        }
    }

    /// `φ: X ⇸ Y` belongs to `Φ(T)`: every `y^*·φ` lies in `TX`.
    pub fn member_dist(&self, phi: &VRelation, x: &VCategory, y: &VCategory) -> Result<bool> {
        if let SpecKind::Custom(_, Some(general)) = &self.kind {
            return Ok(general(phi, x, y));
        }
        for c in 0..y.len() {
            let col = compose(&VRelation::column_vec(y.quantale(), &y.column(c)), phi)?;
            if !self.member(x, &col.column(0))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `φ ∈ Φ(T)` for a validated distributor.
pub fn phi_membership(spec: &SubmonadSpec, phi: &dist::VDistributor) -> Result<bool> {
    spec.member_dist(phi.relation(), phi.dom(), phi.cod())
}

/// `TX` as a full subcategory of `PX` with unit and, when `P(TX)` fits the
/// budget, the multiplication.
#[derive(Clone, Debug)]
pub struct Submonad {
    pub spec: String,
    pub px: PresheafCategory,
    /// Indices of the members in `px`.
    pub members: Vec<usize>,
    pub tx: PresheafCategory,
    pub unit: VFunctor,
    pub ttx: Option<PresheafCategory>,
    pub mult: Option<VFunctor>,
    pub mult_status: Verdict,
}

impl Submonad {
    pub fn cat(&self) -> &CatRef {
        self.tx.cat()
    }

    /// `σ_X: TX → PX`, the inclusion.
    pub fn inclusion(&self) -> VFunctor {
        VFunctor::trusted("σ", self.tx.cat(), self.px.cat(), self.members.clone())
    }

    /// `Tη_X`, `η_TX` and `μ_X` when the multiplication is available.
    pub fn monad_data(&self) -> Result<MonadData> {
        let (ttx, mult) = match (&self.ttx, &self.mult) {
            (Some(t), Some(m)) => (t, m),
            _ => return Err(Error::BadParameter(format!("T{} was not materialized", self.px.base().name()))),
        };
        let t_unit_map = self
            .tx
            .vectors()
            .iter()
            .map(|t| {
                let v = pf_vec(&self.unit, t);
                ttx.index_of(&v)
                    .ok_or_else(|| Error::MultiplicationEscapesT(vector_label(ttx.quantale(), &v)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonadData {
            unit: self.unit.clone(),
            t_unit: VFunctor::trusted("Tη", self.tx.cat(), ttx.cat(), t_unit_map),
            unit_t: ttx.yoneda()?,
            mult: mult.clone(),
        })
    }
}

/// Builds `TX` for a spec. Fails with `UnitNotContained` when some `x^*` is
/// not a member and `MultiplicationEscapesT` when `μ_X(Γ) ∉ TX`.
pub fn submonad_build(spec: &SubmonadSpec, x: &CatRef, budget: u64) -> Result<Submonad> {
    let px = PresheafCategory::build(x, budget)?;
    let mut members = Vec::new();
    for (i, v) in px.vectors().iter().enumerate() {
        if spec.member(x, v)? {
            members.push(i);
        }
    }
    let vecs = members.iter().map(|&i| px.vector(i).to_vec()).collect();
    let tx = PresheafCategory::from_vectors(x, &format!("T{}", x.name()), vecs);
    let unit = tx.yoneda()?;

    let (ttx, mult, mult_status) = match enumerate_presheaves(tx.cat(), budget) {
        Err(Error::BudgetExceeded { needed, budget }) => (
            None,
            None,
            Verdict::unchecked(format!("P(TX) needs {needed} candidates, budget {budget}")),
        ),
        Err(e) => return Err(e),
        Ok(all) => {
            let mut keep = Vec::new();
            for g in all {
                if spec.member(tx.cat(), &g)? {
                    keep.push(g);
                }
            }
            let ttx = PresheafCategory::from_vectors(tx.cat(), &format!("TT{}", x.name()), keep);
            let mut map = Vec::with_capacity(ttx.len());
            for g in ttx.vectors() {
                let m = mult_vec(&tx, g);
                match tx.index_of(&m) {
                    Some(i) => map.push(i),
                    None => return Err(Error::MultiplicationEscapesT(vector_label(x.quantale(), g))),
                }
            }
            let mult = VFunctor::trusted("μ", ttx.cat(), tx.cat(), map);
            (Some(ttx), Some(mult), Verdict::Pass)
        }
    };
    Ok(Submonad {
        spec: spec.name.clone(),
        px,
        members,
        tx,
        unit,
        ttx,
        mult,
        mult_status,
    })
}

/// `Tf: TX → TY`, the corestriction of `Pf`.
pub fn submonad_map(f: &VFunctor, tx: &Submonad, ty: &Submonad) -> Result<VFunctor> {
    let map = tx
        .tx
        .vectors()
        .iter()
        .map(|phi| {
            let v = pf_vec(f, phi);
            ty.tx.index_of(&v).ok_or_else(|| {
                Error::ShapeMismatch(format!("T{} sends a member to {}", f.name(), vector_label(f.cod().quantale(), &v)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VFunctor::trusted(&format!("T{}", f.name()), tx.cat(), ty.cat(), map))
}

/// `σ_X(𝔵) = TX(η_X(−), 𝔵)`, the comparison map built from the unit.
pub fn canonical_sigma(tx: &VCategory, unit: &VFunctor) -> Vec<Vec<QElem>> {
    (0..tx.len())
        .map(|t| (0..unit.dom().len()).map(|x| tx.hom(unit.apply(x), t)).collect())
        .collect()
}

/// Finite stand-in for "all V-categories": the categories, functors and
/// extra distributors a check quantifies over.
#[derive(Clone, Debug, Default)]
pub struct Universe {
    pub categories: Vec<CatRef>,
    pub functors: Vec<VFunctor>,
    pub distributors: Vec<dist::VDistributor>,
}

struct PoolItem {
    label: String,
    rel: VRelation,
    dom: CatRef,
    cod: CatRef,
}

/// Verdicts for the four admissibility conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleReport {
    pub spec: String,
    pub conditions: Vec<Check>,
}

impl AdmissibleReport {
    pub fn condition(&self, i: usize) -> &Check {
        &self.conditions[i - 1]
    }
}

/// Checks conditions (1)–(3) over the universe and (4) over the presheaves
/// on each `PX`, exhaustively within the budget and on seeded samples
/// otherwise.
pub fn admissible_class_check(spec: &SubmonadSpec, universe: &Universe, budget: u64, seed: u64) -> Result<AdmissibleReport> {
    let mut pool: Vec<PoolItem> = Vec::new();
    for d in &universe.distributors {
        pool.push(PoolItem {
            label: format!("{}⇸{} distributor", d.dom().name(), d.cod().name()),
            rel: d.relation().clone(),
            dom: d.dom().clone(),
            cod: d.cod().clone(),
        });
    }
    for c in &universe.categories {
        pool.push(PoolItem {
            label: format!("hom of {}", c.name()),
            rel: VRelation::hom_of(c),
            dom: c.clone(),
            cod: c.clone(),
        });
        let e = Arc::new(VCategory::unit(c.quantale()));
        if let Ok(ps) = enumerate_presheaves(c, budget) {
            for p in ps {
                pool.push(PoolItem {
                    label: format!("{} on {}", vector_label(c.quantale(), &p), c.name()),
                    rel: VRelation::column_vec(c.quantale(), &p),
                    dom: c.clone(),
                    cod: e.clone(),
                });
            }
        }
    }
    for f in &universe.functors {
        let up = star_upper(f);
        let lo = star_lower(f);
        pool.push(PoolItem {
            label: format!("{}^*", f.name()),
            rel: up.relation().clone(),
            dom: f.cod().clone(),
            cod: f.dom().clone(),
        });
        pool.push(PoolItem {
            label: format!("{}_*", f.name()),
            rel: lo.relation().clone(),
            dom: f.dom().clone(),
            cod: f.cod().clone(),
        });
    }
    let in_phi = pool
        .iter()
        .map(|p| spec.member_dist(&p.rel, &p.dom, &p.cod))
        .collect::<Result<Vec<bool>>>()?;

    // (1) f^* ∈ Φ
    let mut w1 = None;
    for f in &universe.functors {
        if !spec.member_dist(star_upper(f).relation(), f.cod(), f.dom())? {
            w1 = Some(format!("{}^*", f.name()));
            break;
        }
    }

    // (2) ψ·f^* ∈ Φ and f^*·φ ∈ Φ
    let mut w2 = None;
    'outer: for f in &universe.functors {
        let up = star_upper(f);
        for (p, &ok) in pool.iter().zip(&in_phi) {
            if !ok {
                continue;
            }
            if *p.dom == **f.dom() {
                let c = compose(&p.rel, up.relation())?;
                if !spec.member_dist(&c, f.cod(), &p.cod)? {
                    w2 = Some(format!("({})·{}^*", p.label, f.name()));
                    break 'outer;
                }
            }
            if *p.cod == **f.cod() {
                let c = compose(up.relation(), &p.rel)?;
                if !spec.member_dist(&c, &p.dom, f.dom())? {
                    w2 = Some(format!("{}^*·({})", f.name(), p.label));
                    break 'outer;
                }
            }
        }
    }

    // (3) φ ∈ Φ ⇔ ∀y y^*·φ ∈ Φ
    let mut w3 = None;
    for (p, &ok) in pool.iter().zip(&in_phi) {
        let q = p.dom.quantale();
        let e = VCategory::unit(q);
        let mut cols = true;
        for c in 0..p.cod.len() {
            let col = compose(&VRelation::column_vec(q, &p.cod.column(c)), &p.rel)?;
            if !spec.member_dist(&col, &p.dom, &e)? {
                cols = false;
                break;
            }
        }
        if ok != cols {
            w3 = Some(format!("{} (φ ∈ Φ: {ok}, all y^*·φ ∈ Φ: {cols})", p.label));
            break;
        }
    }

    // (4) γ|TX ∈ Φ ⇒ γ·(y_X)_* ∈ Φ
    let mut w4 = None;
    let mut mode4 = Mode::Exhaustive;
    let mut unchecked4 = None;
    for x in &universe.categories {
        let px = match PresheafCategory::build(x, budget) {
            Ok(p) => p,
            Err(Error::BudgetExceeded { needed, budget }) => {
                unchecked4 = Some(format!("P{} needs {needed} candidates, budget {budget}", x.name()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut members = Vec::new();
        for (i, v) in px.vectors().iter().enumerate() {
            if spec.member(x, v)? {
                members.push(i);
            }
        }
        let tx = px.cat().full_subcategory(&format!("T{}", x.name()), &members);
        let gammas = match candidate_count(x.quantale(), px.len(), budget) {
            Ok(_) => enumerate_presheaves(px.cat(), budget)?,
            Err(_) => {
                mode4 = Mode::Sampled {
                    samples: DEFAULT_SAMPLES,
                    seed,
                };
                sample_presheaves(px.cat(), DEFAULT_SAMPLES, seed)
            }
        };
        for g in gammas {
            let restricted: Vec<QElem> = members.iter().map(|&i| g[i]).collect();
            if spec.member(&tx, &restricted)? && !spec.member(x, &mult_vec(&px, &g))? {
                w4 = Some(format!("γ = {} over P{}", vector_label(x.quantale(), &g), x.name()));
                break;
            }
        }
        if w4.is_some() {
            break;
        }
    }
    let c4 = match (w4, unchecked4) {
        (Some(w), _) => Check::new("(4)", Verdict::Fail { witness: w }, mode4),
        (None, Some(r)) => Check::new("(4)", Verdict::unchecked(r), Mode::Skipped),
        (None, None) => Check::new("(4)", Verdict::Pass, mode4),
    };
    Ok(AdmissibleReport {
        spec: spec.name.clone(),
        conditions: vec![
            Check::exhaustive("(1)", Verdict::from_witness(w1)),
            Check::exhaustive("(2)", Verdict::from_witness(w2)),
            Check::exhaustive("(3)", Verdict::from_witness(w3)),
            c4,
        ],
    })
}

/// Parts of the T-embedding criterion for `h: X → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TEmbeddingReport {
    pub fully_faithful: bool,
    pub h_lower_in_phi: bool,
}

impl TEmbeddingReport {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.h_lower_in_phi
    }
}

pub fn t_embedding_check(spec: &SubmonadSpec, h: &VFunctor) -> Result<TEmbeddingReport> {
    Ok(TEmbeddingReport {
        fully_faithful: h.is_fully_faithful(),
        h_lower_in_phi: spec.member_dist(star_lower(h).relation(), h.dom(), h.cod())?,
    })
}

/// Data of a candidate monad morphism `σ: T → P` at one V-category.
#[derive(Clone, Debug)]
pub struct MorphismInstance {
    pub eta: VFunctor,
    pub mu: VFunctor,
    /// `σ_X(t)` for every object `t` of `TX`.
    pub sigma: Vec<Vec<QElem>>,
    /// `σ_TX(𝔛)`, a presheaf on `TX`, for every object of `TTX`.
    pub sigma_t: Vec<Vec<QElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadMorphismReport {
    pub unit_diagram: Check,
    pub multiplication_diagram: Check,
    pub pointwise_fully_faithful: Check,
    pub pointwise_injective: Check,
}

impl MonadMorphismReport {
    pub fn checks(&self) -> [&Check; 4] {
        [
            &self.unit_diagram,
            &self.multiplication_diagram,
            &self.pointwise_fully_faithful,
            &self.pointwise_injective,
        ]
    }
}

/// Verifies `σ·η = y`, `m·Pσ·σ_T = σ·μ`, and that `σ_X` is fully faithful
/// and injective, with `PX` given.
pub fn monad_morphism_check(inst: &MorphismInstance, px: &PresheafCategory) -> Result<MonadMorphismReport> {
    let x = inst.eta.dom();
    let tx = inst.eta.cod();
    let q = x.quantale();
    let lbl = |v: &[QElem]| vector_label(q, v);
    let unit_w = (0..x.len())
        .find(|&a| inst.sigma[inst.eta.apply(a)] != x.column(a))
        .map(|a| x.label(a).to_string());

    let sigma_idx: Vec<Option<usize>> = inst.sigma.iter().map(|v| px.index_of(v)).collect();
    let mult_check = if let Some(t) = sigma_idx.iter().position(Option::is_none) {
        Verdict::Fail {
            witness: format!("σ({}) is not a presheaf", tx.label(t)),
        }
    } else {
        let pcat = px.cat();
        let w = (0..inst.mu.dom().len()).find(|&big| {
            let gamma = &inst.sigma_t[big];
            // Pσ(γ)(φ) = ⋁_t PX(φ, σ t) ⊗ γ(t)
            let psig: Vec<QElem> = (0..px.len())
                .map(|phi| {
                    q.join_all(gamma.iter().enumerate().map(|(t, &g)| {
                        q.tensor(pcat.hom(phi, sigma_idx[t].expect("checked")), g)
                    }))
                })
                .collect();
            mult_vec(px, &psig) != inst.sigma[inst.mu.apply(big)]
        });
        Verdict::from_witness(w.map(|b| inst.mu.dom().label(b).to_string()))
    };

    let n = tx.len();
    let ff = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .find(|&(s, t)| tx.hom(s, t) != presheaf_hom(q, &inst.sigma[s], &inst.sigma[t]))
        .map(|(s, t)| format!("({}, {})", tx.label(s), tx.label(t)));
    let inj = (0..n)
        .flat_map(|s| ((s + 1)..n).map(move |t| (s, t)))
        .find(|&(s, t)| inst.sigma[s] == inst.sigma[t])
        .map(|(s, t)| format!("σ({}) = σ({}) = {}", tx.label(s), tx.label(t), lbl(&inst.sigma[s])));
    Ok(MonadMorphismReport {
        unit_diagram: Check::exhaustive("σ·η = y", Verdict::from_witness(unit_w)),
        multiplication_diagram: Check::exhaustive("m·Pσ·σT = σ·μ", mult_check),
        pointwise_fully_faithful: Check::exhaustive("σ fully faithful", Verdict::from_witness(ff)),
        pointwise_injective: Check::exhaustive("σ injective", Verdict::from_witness(inj)),
    })
}

/// The identity morphism `P → P` at `X`, from a materialized tower.
pub fn identity_morphism(tower: &PresheafTower) -> MorphismInstance {
    MorphismInstance {
        eta: tower.unit.clone(),
        mu: tower.mult.clone(),
        sigma: tower.px.vectors().to_vec(),
        sigma_t: tower.ppx.vectors().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::DEFAULT_BUDGET;
    use crate::quantale::builtin;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn chain() -> CatRef {
        let q = builtin("boolean2", None).unwrap();
        let (o, i) = (q.elem("0"), q.elem("1"));
        Arc::new(VCategory::new("C", &q, labels(&["x", "y"]), vec![vec![i, i], vec![o, i]]).unwrap())
    }

    #[test]
    fn identity_square_detects_full_faithfulness() {
        let q = builtin("boolean2", None).unwrap();
        let d = Arc::new(VCategory::discrete(&q, labels(&["p", "q"])));
        let e = Arc::new(VCategory::unit(&q));
        let f = VFunctor::new("!", &d, &e, vec![0, 0]).unwrap();
        let r = bc_star_square_check(&CommutingSquare::identity_square(&f)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(("p".into(), "q".into())));
        let c = chain();
        let id = VFunctor::identity(&c);
        assert!(bc_star_square_check(&CommutingSquare::identity_square(&id)).unwrap().holds);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let c = chain();
        let id = VFunctor::identity(&c);
        let top = VFunctor::new("t", &c, &c, vec![1, 1]).unwrap();
        let e = CommutingSquare::new(id.clone(), id.clone(), id, top).unwrap_err();
        assert_eq!(e, Error::NotCommuting("x".into()));
    }

    #[test]
    fn presheaf_monad_is_lax_idempotent_via_bc() {
        let tower = PresheafTower::build(&chain(), DEFAULT_BUDGET).unwrap();
        let r = lax_idempotency_via_bc(&MonadData::from(&tower)).unwrap();
        assert!(r.holds() && r.agree());
    }

    #[test]
    fn broken_multiplication_is_caught() {
        let tower = PresheafTower::build(&chain(), DEFAULT_BUDGET).unwrap();
        let mut data = MonadData::from(&tower);
        let mut map = data.mult.map().to_vec();
        let (i, j) = (0..map.len())
            .flat_map(|i| (0..map.len()).map(move |j| (i, j)))
            .find(|&(i, j)| map[i] != map[j])
            .unwrap();
        map.swap(i, j);
        data.mult = VFunctor::trusted("μ'", data.mult.dom(), data.mult.cod(), map);
        let passes = matches!(lax_idempotency_via_bc(&data), Ok(r) if r.holds());
        assert!(!passes);
    }

    #[test]
    fn right_adjoint_submonad_on_chain() {
        let c = chain();
        let s = submonad_build(&SubmonadSpec::right_adjoints(), &c, DEFAULT_BUDGET).unwrap();
        // oracle: the empty down-set has no unit, so TX = {x^*, y^*}
        assert_eq!(s.tx.len(), 2);
        assert_eq!(s.tx.vectors(), &[c.column(0), c.column(1)]);
        assert!(s.mult_status.passed());
        let all = submonad_build(&SubmonadSpec::all(), &c, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.tx.len(), all.px.len());
    }

    #[test]
    fn ball_image_on_unit_is_everything() {
        let q = builtin("lukasiewicz_chain", Some(2)).unwrap();
        let e = Arc::new(VCategory::unit(&q));
        let s = submonad_build(&SubmonadSpec::ball_image(), &e, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.tx.len(), 3);
        assert_eq!(s.tx.len(), s.px.len());
    }

    #[test]
    fn canonical_sigma_is_inclusion() {
        let c = chain();
        for spec in [SubmonadSpec::all(), SubmonadSpec::right_adjoints()] {
            let s = submonad_build(&spec, &c, DEFAULT_BUDGET).unwrap();
            assert_eq!(canonical_sigma(s.cat(), &s.unit), s.tx.vectors());
        }
    }

    #[test]
    fn bottom_is_not_in_phi_l() {
        let c = chain();
        let q = c.quantale().clone();
        let e = Arc::new(VCategory::unit(&q));
        let bot = VRelation::column_vec(&q, &[q.bottom(), q.bottom()]);
        let d = dist::validate_distributor(&bot, &c, &e).unwrap();
        assert!(!phi_membership(&SubmonadSpec::right_adjoints(), &d).unwrap());
        assert!(phi_membership(&SubmonadSpec::all(), &d).unwrap());
    }

    #[test]
    fn identity_monad_morphism() {
        let tower = PresheafTower::build(&chain(), DEFAULT_BUDGET).unwrap();
        let r = monad_morphism_check(&identity_morphism(&tower), &tower.px).unwrap();
        assert!(r.checks().iter().all(|c| c.verdict.passed()), "{r:?}");
    }
}
