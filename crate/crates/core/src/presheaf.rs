//! The presheaf monad `(P, m, y)` on finite V-categories over enumerable
//! quantales.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quantale::{QElem, Quantale};
use crate::report::{Check, Mode, Verdict};
use crate::vcat::{check_adjunction, CatRef, VCategory, VFunctor};

/// Default cap on the number of candidate vectors `|V|^|X|`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Number of sampled presheaves when exhaustive coverage exceeds the budget.
pub const DEFAULT_SAMPLES: usize = 200;

/// `|V|^n` if it fits within `budget`.
pub fn candidate_count(q: &Quantale, n: usize, budget: u64) -> Result<u64> {
    let v = q.require_enumerable()?.len() as u64;
    let needed = || format!("{v}^{n}");
    let count = u32::try_from(n).ok().and_then(|n| v.checked_pow(n));
    match count {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded {
            needed: needed(),
            budget,
        }),
    }
}

/// `φ(x) ≥ a(x, x') ⊗ φ(x')` for all `x, x'`.
pub fn is_presheaf(x: &VCategory, v: &[QElem]) -> bool {
    let q = x.quantale();
    v.len() == x.len()
        && (0..x.len()).all(|i| (0..x.len()).all(|j| q.leq(q.tensor(x.hom(i, j), v[j]), v[i])))
}

/// All presheaves on `X`, lexicographic in the carrier order.
pub fn enumerate_presheaves(x: &VCategory, budget: u64) -> Result<Vec<Vec<QElem>>> {
    let q = x.quantale();
    candidate_count(q, x.len(), budget)?;
    let carrier = q.require_enumerable()?;
    let n = x.len();
    let mut out = Vec::new();
    let mut cur: Vec<QElem> = Vec::with_capacity(n);
    fn go(x: &VCategory, q: &Quantale, carrier: &[QElem], cur: &mut Vec<QElem>, out: &mut Vec<Vec<QElem>>) {
        let i = cur.len();
        if i == x.len() {
            out.push(cur.clone());
            return;
        }
        for &v in carrier {
            let ok = q.leq(q.tensor(x.hom(i, i), v), v)
                && (0..i).all(|j| {
                    q.leq(q.tensor(x.hom(j, i), v), cur[j]) && q.leq(q.tensor(x.hom(i, j), cur[j]), v)
                });
            if ok {
                cur.push(v);
                go(x, q, carrier, cur, out);
                cur.pop();
            }
        }
    }
    go(x, q, &carrier, &mut cur, &mut out);
    debug_assert!(out.len() == 1 || n > 0);
    Ok(out)
}

/// `ã(φ, ψ) = ⋀_x hom(φ(x), ψ(x))`.
pub fn presheaf_hom(q: &Quantale, phi: &[QElem], psi: &[QElem]) -> QElem {
    q.meet_all(phi.iter().zip(psi).map(|(&a, &b)| q.hom(a, b)))
}

pub fn vector_label(q: &Quantale, v: &[QElem]) -> String {
    let parts: Vec<String> = v.iter().map(|&e| q.label(e)).collect();
    format!("[{}]", parts.join(","))
}

/// `PX` materialized, with the index of every presheaf vector.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    base: CatRef,
    cat: CatRef,
    vectors: Vec<Vec<QElem>>,
    index: HashMap<Vec<QElem>, usize>,
}

impl PresheafCategory {
    pub fn build(x: &CatRef, budget: u64) -> Result<Self> {
        let vectors = enumerate_presheaves(x, budget)?;
        Ok(Self::from_vectors(x, &format!("P{}", x.name()), vectors))
    }

    /// The full subcategory of `PX` on the given presheaves.
    pub fn from_vectors(x: &CatRef, name: &str, mut vectors: Vec<Vec<QElem>>) -> Self {
        let q = x.quantale();
        let mut seen = std::collections::HashSet::new();
        vectors.retain(|v| seen.insert(v.clone()));
        let objects = vectors.iter().map(|v| vector_label(q, v)).collect();
        let hom = vectors
            .iter()
            .flat_map(|a| vectors.iter().map(move |b| presheaf_hom(q, a, b)))
            .collect();
        let cat = Arc::new(VCategory::trusted(name, q, objects, hom));
        let index = vectors.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        PresheafCategory {
            base: x.clone(),
            cat,
            vectors,
            index,
        }
    }

    pub fn base(&self) -> &CatRef {
        &self.base
    }

    pub fn cat(&self) -> &CatRef {
        &self.cat
    }

    pub fn quantale(&self) -> &Quantale {
        self.base.quantale()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<QElem>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[QElem] {
        &self.vectors[i]
    }

    pub fn index_of(&self, v: &[QElem]) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn expect_index(&self, v: &[QElem], what: &str) -> usize {
        self.index_of(v)
            .unwrap_or_else(|| panic!("{what} {} is not in {}", vector_label(self.quantale(), v), self.cat.name()))
    }

    /// `y_X: x ↦ x^* = a(−, x)`, corestricted to this category.
    pub fn yoneda(&self) -> Result<VFunctor> {
        let map = (0..self.base.len())
            .map(|x| {
                self.index_of(&self.base.column(x)).ok_or_else(|| {
                    Error::UnitNotContained(self.base.label(x).to_string())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VFunctor::trusted("y", &self.base, &self.cat, map))
    }
}

/// `Pf(φ)(y) = ⋁_x Y(y, fx) ⊗ φ(x)`, i.e. `φ · f^*`.
pub fn pf_vec(f: &VFunctor, phi: &[QElem]) -> Vec<QElem> {
    let y = f.cod();
    let q = y.quantale();
    (0..y.len())
        .map(|b| q.join_all(phi.iter().enumerate().map(|(a, &v)| q.tensor(y.hom(b, f.apply(a)), v))))
        .collect()
}

/// `Qf(ψ)(x) = ⋁_y Y(fx, y) ⊗ ψ(y)`, i.e. `ψ · f_*`.
pub fn qf_vec(f: &VFunctor, psi: &[QElem]) -> Vec<QElem> {
    let y = f.cod();
    let q = y.quantale();
    (0..f.dom().len())
        .map(|a| q.join_all(psi.iter().enumerate().map(|(b, &v)| q.tensor(y.hom(f.apply(a), b), v))))
        .collect()
}

fn check_bases(f: &VFunctor, px: &PresheafCategory, py: &PresheafCategory) -> Result<()> {
    if **f.dom() != **px.base() || **f.cod() != **py.base() {
        return Err(Error::ShapeMismatch(format!(
            "{} does not go from {} to {}",
            f.name(),
            px.base().name(),
            py.base().name()
        )));
    }
    Ok(())
}

/// `Pf: PX → PY`.
pub fn presheaf_map(f: &VFunctor, px: &PresheafCategory, py: &PresheafCategory) -> Result<VFunctor> {
    check_bases(f, px, py)?;
    let map = px.vectors.iter().map(|phi| py.expect_index(&pf_vec(f, phi), "Pf")).collect();
    Ok(VFunctor::trusted(&format!("P{}", f.name()), px.cat(), py.cat(), map))
}

/// `Qf: PY → PX`, the right adjoint of `Pf`.
pub fn q_map(f: &VFunctor, px: &PresheafCategory, py: &PresheafCategory) -> Result<VFunctor> {
    check_bases(f, px, py)?;
    let map = py.vectors.iter().map(|psi| px.expect_index(&qf_vec(f, psi), "Qf")).collect();
    Ok(VFunctor::trusted(&format!("Q{}", f.name()), py.cat(), px.cat(), map))
}

/// `m_X(Γ)(x) = ⋁_φ Γ(φ) ⊗ φ(x)` for a presheaf `Γ` on the objects of `px`.
pub fn mult_vec(px: &PresheafCategory, gamma: &[QElem]) -> Vec<QElem> {
    let q = px.quantale();
    (0..px.base.len())
        .map(|x| q.join_all(gamma.iter().zip(&px.vectors).map(|(&g, phi)| q.tensor(g, phi[x]))))
        .collect()
}

/// `m_X: PPX → PX`; `ppx` must be the presheaf category over `px.cat()`.
pub fn multiplication(px: &PresheafCategory, ppx: &PresheafCategory) -> Result<VFunctor> {
    if **ppx.base() != **px.cat() {
        return Err(Error::ShapeMismatch("multiplication needs PPX over PX".into()));
    }
    let map = ppx.vectors.iter().map(|g| px.expect_index(&mult_vec(px, g), "m(Γ)")).collect();
    Ok(VFunctor::trusted("m", ppx.cat(), px.cat(), map))
}

/// `PX`, `PPX` and the four maps `y_X`, `Py_X`, `y_PX`, `m_X`.
#[derive(Clone, Debug)]
pub struct PresheafTower {
    pub px: PresheafCategory,
    pub ppx: PresheafCategory,
    pub unit: VFunctor,
    pub t_unit: VFunctor,
    pub unit_t: VFunctor,
    pub mult: VFunctor,
}

impl PresheafTower {
    pub fn build(x: &CatRef, budget: u64) -> Result<Self> {
        let px = PresheafCategory::build(x, budget)?;
        let ppx = PresheafCategory::build(px.cat(), budget)?;
        let unit = px.yoneda()?;
        let unit_t = ppx.yoneda()?;
        let t_unit = presheaf_map(&unit, &px, &ppx)?;
        let mult = multiplication(&px, &ppx)?;
        Ok(PresheafTower {
            px,
            ppx,
            unit,
            t_unit,
            unit_t,
            mult,
        })
    }
}

/// Outcome of [`verify_monad_laws`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MonadLawReport {
    pub unit_left: Check,
    pub unit_right: Check,
    pub associativity: Check,
    pub px_size: usize,
    pub ppx_size: Option<usize>,
}

impl MonadLawReport {
    pub fn checks(&self) -> [&Check; 3] {
        [&self.unit_left, &self.unit_right, &self.associativity]
    }
}

/// Checks `m · Py = 1`, `m · yP = 1` exhaustively over `PX` and
/// `m · Pm = m · mP` over `PPPX`, exhaustively when `|V|^|PPX|` fits the
/// budget and on seeded samples otherwise. Associativity is unchecked when
/// `PPX` itself cannot be materialized.
pub fn verify_monad_laws(x: &CatRef, budget: u64, seed: u64) -> Result<MonadLawReport> {
    let px = PresheafCategory::build(x, budget)?;
    let q = px.quantale().clone();
    let y = px.yoneda()?;
    let pcat = px.cat().clone();

    let first_fail = |law: &dyn Fn(&[QElem]) -> Vec<QElem>| {
        px.vectors
            .iter()
            .find(|phi| law(phi) != **phi)
            .map(|phi| vector_label(&q, phi))
    };
    // Py(φ)(Φ) = ⋁_x PX(Φ, y x) ⊗ φ(x), computed without PPX
    let y_into = |phi: &[QElem]| {
        (0..px.len())
            .map(|big| q.join_all((0..x.len()).map(|a| q.tensor(pcat.hom(big, y.apply(a)), phi[a]))))
            .collect::<Vec<_>>()
    };
    let unit_left = first_fail(&|phi| mult_vec(&px, &y_into(phi)));
    let unit_right = first_fail(&|phi| {
        let i = px.index_of(phi).expect("member");
        mult_vec(&px, &pcat.column(i))
    });

    let mut ppx_size = None;
    let associativity = match PresheafCategory::build(&pcat, budget) {
        Err(Error::BudgetExceeded { needed, budget }) => Check::new(
            "associativity",
            Verdict::unchecked(format!("PPX needs {needed} candidates, budget {budget}")),
            Mode::Skipped,
        ),
        Err(e) => return Err(e),
        Ok(ppx) => {
            ppx_size = Some(ppx.len());
            let m_idx: Vec<usize> = ppx.vectors.iter().map(|g| px.expect_index(&mult_vec(&px, g), "m(Γ)")).collect();
            let pp = ppx.cat().clone();
            let check = |xi: &[QElem]| -> Option<String> {
                // m_X(m_PX(Ξ))
                let m_px: Vec<QElem> = (0..px.len())
                    .map(|phi| q.join_all(xi.iter().zip(&ppx.vectors).map(|(&w, g)| q.tensor(w, g[phi]))))
                    .collect();
                let lhs = mult_vec(&px, &m_px);
                // m_X(P m_X(Ξ)), P m_X(Ξ)(φ) = ⋁_Γ PX(φ, m Γ) ⊗ Ξ(Γ)
                let pm: Vec<QElem> = (0..px.len())
                    .map(|phi| q.join_all(xi.iter().enumerate().map(|(g, &w)| q.tensor(pcat.hom(phi, m_idx[g]), w))))
                    .collect();
                let rhs = mult_vec(&px, &pm);
                (lhs != rhs).then(|| vector_label(&q, xi))
            };
            match candidate_count(&q, ppx.len(), budget) {
                Ok(_) => {
                    let all = enumerate_presheaves(&pp, budget)?;
                    Check::exhaustive("associativity", Verdict::from_witness(all.iter().find_map(|xi| check(xi))))
                }
                Err(_) => {
                    let samples = sample_presheaves(&pp, DEFAULT_SAMPLES, seed);
                    let w = samples.iter().find_map(|xi| check(xi));
                    Check::new(
                        "associativity",
                        Verdict::from_witness(w),
                        Mode::Sampled {
                            samples: samples.len(),
                            seed,
                        },
                    )
                }
            }
        }
    };

    Ok(MonadLawReport {
        unit_left: Check::exhaustive("m·Py = 1", Verdict::from_witness(unit_left)),
        unit_right: Check::exhaustive("m·yP = 1", Verdict::from_witness(unit_right)),
        associativity,
        px_size: px.len(),
        ppx_size,
    })
}

/// Seeded presheaves on `X`: a spread of representables, then `v · a` for
/// random vectors `v`, which is always a presheaf.
pub fn sample_presheaves(x: &VCategory, count: usize, seed: u64) -> Vec<Vec<QElem>> {
    let q = x.quantale();
    let carrier = q.carrier().expect("sampling needs an enumerable quantale");
    let n = x.len();
    let mut out = Vec::with_capacity(count);
    if n == 0 {
        return vec![vec![]];
    }
    let reps = (count / 4).min(n);
    for i in 0..reps {
        out.push(x.column(i * n / reps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let v: Vec<QElem> = (0..n).map(|_| carrier[rng.gen_range(0..carrier.len())]).collect();
        let phi = (0..n)
            .map(|a| q.join_all((0..n).map(|b| q.tensor(x.hom(a, b), v[b]))))
            .collect();
        out.push(phi);
    }
    out
}

/// Outcome of [`verify_lax_idempotency`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LaxIdempotencyReport {
    pub py_left_of_m: Check,
    pub m_left_of_ypx: Check,
}

/// `Py_X ⊣ m_X ⊣ y_PX` by the adjunction criterion; unchecked when `PPX`
/// exceeds the budget.
pub fn verify_lax_idempotency(x: &CatRef, budget: u64) -> Result<LaxIdempotencyReport> {
    let tower = match PresheafTower::build(x, budget) {
        Ok(t) => t,
        Err(Error::BudgetExceeded { needed, budget }) => {
            let v = || Verdict::unchecked(format!("PPX needs {needed} candidates, budget {budget}"));
            return Ok(LaxIdempotencyReport {
                py_left_of_m: Check::new("Py ⊣ m", v(), Mode::Skipped),
                m_left_of_ypx: Check::new("m ⊣ yP", v(), Mode::Skipped),
            });
        }
        Err(e) => return Err(e),
    };
    let fmt = |f: &VFunctor, g: &VFunctor, w: Option<(usize, usize)>| {
        w.map(|(a, b)| format!("({}, {})", f.dom().label(a), g.dom().label(b)))
    };
    let a = check_adjunction(&tower.t_unit, &tower.mult)?;
    let b = check_adjunction(&tower.mult, &tower.unit_t)?;
    Ok(LaxIdempotencyReport {
        py_left_of_m: Check::exhaustive("Py ⊣ m", Verdict::from_witness(fmt(&tower.t_unit, &tower.mult, a))),
        m_left_of_ypx: Check::exhaustive("m ⊣ yP", Verdict::from_witness(fmt(&tower.mult, &tower.unit_t, b))),
    })
}
