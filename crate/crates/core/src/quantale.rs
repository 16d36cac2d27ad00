//! Commutative unital quantales with exact elements.
//!
//! Finite quantales are stored as validated tables; the residuation `hom` is
//! always derived from the tensor and the order. The three infinite families
//! (`[0,∞]` with `+`, `[0,1]` with `*`, `[0,1]` with the Łukasiewicz tensor)
//! are evaluated in closed form on rationals and are not enumerable.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Ext, Rational};

/// An element of some quantale. Only meaningful relative to its owner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum QElem {
    /// Position in the carrier of a finite quantale.
    Idx(u16),
    /// Exact value in one of the infinite rational families.
    Num(Ext),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantaleKind {
    Finite,
    Boolean2,
    GoedelChain(u32),
    LukasiewiczChain(u32),
    ExtRealPlus,
    UnitIntervalProduct,
    LukasiewiczRational,
}

impl fmt::Display for QuantaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleKind::Finite => write!(f, "finite"),
            QuantaleKind::Boolean2 => write!(f, "boolean2"),
            QuantaleKind::GoedelChain(n) => write!(f, "goedel_chain({n})"),
            QuantaleKind::LukasiewiczChain(n) => write!(f, "lukasiewicz_chain({n})"),
            QuantaleKind::ExtRealPlus => write!(f, "ext_real_plus"),
            QuantaleKind::UnitIntervalProduct => write!(f, "unit_interval_product"),
            QuantaleKind::LukasiewiczRational => write!(f, "lukasiewicz_rational"),
        }
    }
}

/// Structural flags of a quantale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantaleFlags {
    pub integral: bool,
    pub cancellative: bool,
    /// First `(r, s)` with `r ≠ ⊥`, `r = s ⊗ r` and `s ≠ k`, when not cancellative.
    pub cancellative_witness: Option<(String, String)>,
    /// True when the answer was read off a closed form instead of enumerated.
    pub analytic: bool,
}

/// Operations exposed through [`Quantale::evaluate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Tensor,
    Hom,
    Join,
    Meet,
    Leq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Elem(QElem),
    Bool(bool),
}

#[derive(Clone, PartialEq, Eq)]
struct Table {
    labels: Vec<String>,
    /// Numeric meaning of each element, for the rational chains.
    values: Option<Vec<Ext>>,
    leq: Vec<bool>,
    tensor: Vec<u16>,
    hom: Vec<u16>,
    join: Vec<u16>,
    meet: Vec<u16>,
    unit: u16,
    bottom: u16,
    top: u16,
}

impl Table {
    fn n(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Finite(Table),
    ExtRealPlus,
    UnitProduct,
    LukRational,
}

struct Inner {
    name: String,
    kind: QuantaleKind,
    repr: Repr,
}

/// A validated commutative unital quantale. Cheap to clone.
#[derive(Clone)]
pub struct Quantale(Arc<Inner>);

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.kind == other.0.kind && self.0.repr == other.0.repr)
    }
}

impl Eq for Quantale {}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantale({}: {})", self.0.name, self.0.kind)
    }
}

fn idx(e: QElem) -> usize {
    match e {
        QElem::Idx(i) => i as usize,
        QElem::Num(_) => panic!("numeric element used with a finite quantale"),
    }
}

fn num(e: QElem) -> Ext {
    match e {
        QElem::Num(x) => x,
        QElem::Idx(_) => panic!("carrier index used with an infinite quantale"),
    }
}

fn unit_interval(x: Ext) -> Option<Rational> {
    x.finite().filter(|r| *r >= Rational::zero() && *r <= Rational::one())
}

/// Validates a finite commutative unital quantale given by its carrier, a
/// generating set of order pairs `(i, j)` meaning `i ≤ j`, the tensor table and
/// the unit. The order is the reflexive-transitive closure of `leq`.
pub fn make_finite_quantale(
    name: &str,
    carrier: Vec<String>,
    leq: &[(usize, usize)],
    tensor: Vec<Vec<usize>>,
    unit: usize,
) -> Result<Quantale> {
    build_finite(name, QuantaleKind::Finite, carrier, None, leq, tensor, unit)
}

fn build_finite(
    name: &str,
    kind: QuantaleKind,
    labels: Vec<String>,
    values: Option<Vec<Ext>>,
    leq_pairs: &[(usize, usize)],
    tensor_rows: Vec<Vec<usize>>,
    unit: usize,
) -> Result<Quantale> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::NotALattice("empty carrier".into()));
    }
    if n > u16::MAX as usize {
        return Err(Error::MalformedTable("carrier too large".into()));
    }
    if unit >= n {
        return Err(Error::MalformedTable(format!("unit index {unit} out of range")));
    }
    let at = |i: usize, j: usize| i * n + j;

    // order: reflexive-transitive closure
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[at(i, i)] = true;
    }
    for &(i, j) in leq_pairs {
        if i >= n || j >= n {
            return Err(Error::MalformedTable(format!("order pair ({i}, {j}) out of range")));
        }
        le[at(i, j)] = true;
    }
    for m in 0..n {
        for i in 0..n {
            if le[at(i, m)] {
                for j in 0..n {
                    if le[at(m, j)] {
                        le[at(i, j)] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if le[at(i, j)] && le[at(j, i)] {
                return Err(Error::NotALattice(format!(
                    "{} and {} are below each other",
                    labels[i], labels[j]
                )));
            }
        }
    }
    let least = |set: &[usize]| set.iter().copied().find(|&c| set.iter().all(|&d| le[at(c, d)]));
    let greatest = |set: &[usize]| set.iter().copied().find(|&c| set.iter().all(|&d| le[at(d, c)]));
    let all: Vec<usize> = (0..n).collect();
    let bottom = least(&all).ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
    let top = greatest(&all).ok_or_else(|| Error::NotALattice("no top element".into()))?;
    let mut join = vec![0u16; n * n];
    let mut meet = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let ups: Vec<usize> = (0..n).filter(|&u| le[at(i, u)] && le[at(j, u)]).collect();
            let downs: Vec<usize> = (0..n).filter(|&d| le[at(d, i)] && le[at(d, j)]).collect();
            let jn = least(&ups).ok_or_else(|| {
                Error::NotALattice(format!("no join of {} and {}", labels[i], labels[j]))
            })?;
            let mt = greatest(&downs).ok_or_else(|| {
                Error::NotALattice(format!("no meet of {} and {}", labels[i], labels[j]))
            })?;
            join[at(i, j)] = jn as u16;
            meet[at(i, j)] = mt as u16;
        }
    }

    if tensor_rows.len() != n || tensor_rows.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedTable("tensor table must be n × n".into()));
    }
    let mut tensor = vec![0u16; n * n];
    for (i, row) in tensor_rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedTable(format!("tensor entry {v} out of range")));
            }
            tensor[at(i, j)] = v as u16;
        }
    }
    let t = |i: usize, j: usize| tensor[at(i, j)] as usize;
    let lbl = |i: usize| labels[i].clone();

    if unit == bottom {
        return Err(Error::UnitIsBottom(lbl(unit)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if t(i, j) != t(j, i) {
                return Err(Error::TensorNotCommutative(lbl(i), lbl(j)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if t(t(i, j), k) != t(i, t(j, k)) {
                    return Err(Error::TensorNotAssociative(lbl(i), lbl(j), lbl(k)));
                }
            }
        }
    }
    for i in 0..n {
        if t(unit, i) != i {
            return Err(Error::UnitLawFails(lbl(unit), lbl(i)));
        }
    }
    // Finite joins generate all joins: the empty join and binary joins.
    for u in 0..n {
        if t(u, bottom) != bottom {
            return Err(Error::JoinsNotPreserved(lbl(u), lbl(bottom), "(empty join)".into()));
        }
        for v in 0..n {
            for w in 0..n {
                let lhs = t(u, join[at(v, w)] as usize);
                let rhs = join[at(t(u, v), t(u, w))] as usize;
                if lhs != rhs {
                    return Err(Error::JoinsNotPreserved(lbl(u), lbl(v), lbl(w)));
                }
            }
        }
    }

    // hom(u, w) = ⋁ { v : u ⊗ v ≤ w }
    let mut hom = vec![0u16; n * n];
    for u in 0..n {
        for w in 0..n {
            let mut acc = bottom;
            for v in 0..n {
                if le[at(t(u, v), w)] {
                    acc = join[at(acc, v)] as usize;
                }
            }
            hom[at(u, w)] = acc as u16;
        }
    }

    let table = Table {
        labels,
        values,
        leq: le,
        tensor,
        hom,
        join,
        meet,
        unit: unit as u16,
        bottom: bottom as u16,
        top: top as u16,
    };
    Ok(Quantale(Arc::new(Inner {
        name: name.to_string(),
        kind,
        repr: Repr::Finite(table),
    })))
}

/// Names accepted by [`builtin`].
pub const BUILTIN_KINDS: &[&str] = &[
    "boolean2",
    "goedel_chain",
    "lukasiewicz_chain",
    "ext_real_plus",
    "unit_interval_product",
    "lukasiewicz_rational",
];

/// Constructs a named builtin quantale. The chain kinds take `n ≥ 1` and have
/// the `n + 1` elements `0, 1/n, …, 1`.
pub fn builtin(kind: &str, size: Option<u32>) -> Result<Quantale> {
    let chain_size = || match size {
        None => Err(Error::BadParameter(format!("{kind} needs a size"))),
        Some(0) => Err(Error::BadParameter(format!("{kind} needs a size n ≥ 1"))),
        Some(n) if n > 1000 => Err(Error::BadParameter(format!("{kind}({n}) is too large"))),
        Some(n) => Ok(n),
    };
    let infinite = |name: &str, kind: QuantaleKind, repr: Repr| {
        if size.is_some() {
            return Err(Error::BadParameter(format!("{name} takes no size")));
        }
        Ok(Quantale(Arc::new(Inner {
            name: name.to_string(),
            kind,
            repr,
        })))
    };
    match kind {
        "boolean2" => {
            if size.is_some() {
                return Err(Error::BadParameter("boolean2 takes no size".into()));
            }
            build_finite(
                "boolean2",
                QuantaleKind::Boolean2,
                vec!["0".into(), "1".into()],
                Some(vec![Ext::zero(), Ext::one()]),
                &[(0, 1)],
                vec![vec![0, 0], vec![0, 1]],
                1,
            )
        }
        "goedel_chain" => {
            let n = chain_size()? as usize;
            let table = (0..=n).map(|i| (0..=n).map(|j| i.min(j)).collect()).collect();
            chain(kind, QuantaleKind::GoedelChain(n as u32), n, table)
        }
        "lukasiewicz_chain" => {
            let n = chain_size()? as usize;
            let table = (0..=n)
                .map(|i| (0..=n).map(|j| (i + j).saturating_sub(n)).collect())
                .collect();
            chain(kind, QuantaleKind::LukasiewiczChain(n as u32), n, table)
        }
        "ext_real_plus" => infinite(kind, QuantaleKind::ExtRealPlus, Repr::ExtRealPlus),
        "unit_interval_product" => infinite(kind, QuantaleKind::UnitIntervalProduct, Repr::UnitProduct),
        "lukasiewicz_rational" => infinite(kind, QuantaleKind::LukasiewiczRational, Repr::LukRational),
        other => Err(Error::BadParameter(format!("unknown builtin quantale {other:?}"))),
    }
}

fn chain(name: &str, kind: QuantaleKind, n: usize, table: Vec<Vec<usize>>) -> Result<Quantale> {
    let values: Vec<Ext> = (0..=n).map(|i| Ext::ratio(i as i64, n as i64)).collect();
    let labels = values.iter().map(|v| v.to_string()).collect();
    let order: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    build_finite(&format!("{name}({n})"), kind, labels, Some(values), &order, table, n)
}

impl Quantale {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> QuantaleKind {
        self.0.kind
    }

    fn table(&self) -> Option<&Table> {
        match &self.0.repr {
            Repr::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_enumerable(&self) -> bool {
        self.table().is_some()
    }

    /// Number of elements for finite quantales.
    pub fn size(&self) -> Option<usize> {
        self.table().map(Table::n)
    }

    /// Carrier in its declared order, for finite quantales.
    pub fn carrier(&self) -> Option<Vec<QElem>> {
        self.table().map(|t| (0..t.n()).map(|i| QElem::Idx(i as u16)).collect())
    }

    pub fn require_enumerable(&self) -> Result<Vec<QElem>> {
        self.carrier().ok_or_else(|| Error::NotEnumerable(self.name().to_string()))
    }

    /// Position of `e` in the carrier, for finite quantales.
    pub fn index_of(&self, e: QElem) -> Option<usize> {
        match (self.table(), e) {
            (Some(t), QElem::Idx(i)) if (i as usize) < t.n() => Some(i as usize),
            _ => None,
        }
    }

    pub fn contains(&self, e: QElem) -> bool {
        match (&self.0.repr, e) {
            (Repr::Finite(t), QElem::Idx(i)) => (i as usize) < t.n(),
            (Repr::ExtRealPlus, QElem::Num(_)) => true,
            (Repr::UnitProduct | Repr::LukRational, QElem::Num(x)) => unit_interval(x).is_some(),
            _ => false,
        }
    }

    pub fn unit(&self) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.unit),
            Repr::ExtRealPlus => QElem::Num(Ext::zero()),
            Repr::UnitProduct | Repr::LukRational => QElem::Num(Ext::one()),
        }
    }

    pub fn bottom(&self) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.bottom),
            Repr::ExtRealPlus => QElem::Num(Ext::Inf),
            Repr::UnitProduct | Repr::LukRational => QElem::Num(Ext::zero()),
        }
    }

    pub fn top(&self) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.top),
            Repr::ExtRealPlus => QElem::Num(Ext::zero()),
            Repr::UnitProduct | Repr::LukRational => QElem::Num(Ext::one()),
        }
    }

    /// The quantale order. For `ext_real_plus` this is `≥` on numbers.
    pub fn leq(&self, a: QElem, b: QElem) -> bool {
        match &self.0.repr {
            Repr::Finite(t) => t.leq[idx(a) * t.n() + idx(b)],
            Repr::ExtRealPlus => num(a) >= num(b),
            Repr::UnitProduct | Repr::LukRational => num(a) <= num(b),
        }
    }

    pub fn tensor(&self, a: QElem, b: QElem) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.tensor[idx(a) * t.n() + idx(b)]),
            Repr::ExtRealPlus => QElem::Num(num(a).plus(num(b))),
            Repr::UnitProduct => {
                let (x, y) = (fin(a), fin(b));
                QElem::Num(Ext::Fin(Ext::mul_fin(x, y)))
            }
            Repr::LukRational => {
                let s = Ext::sub_fin(Ext::add_fin(fin(a), fin(b)), Rational::one());
                QElem::Num(Ext::Fin(s.max(Rational::zero())))
            }
        }
    }

    /// Residuation: the largest `v` with `u ⊗ v ≤ w`.
    pub fn hom(&self, u: QElem, w: QElem) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.hom[idx(u) * t.n() + idx(w)]),
            Repr::ExtRealPlus => QElem::Num(num(w).monus(num(u))),
            Repr::UnitProduct => {
                let (x, y) = (fin(u), fin(w));
                if x <= y {
                    QElem::Num(Ext::one())
                } else {
                    QElem::Num(Ext::Fin(Ext::div_fin(y, x)))
                }
            }
            Repr::LukRational => {
                let s = Ext::add_fin(Ext::sub_fin(Rational::one(), fin(u)), fin(w));
                QElem::Num(Ext::Fin(s.min(Rational::one())))
            }
        }
    }

    pub fn join(&self, a: QElem, b: QElem) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.join[idx(a) * t.n() + idx(b)]),
            Repr::ExtRealPlus => QElem::Num(num(a).min(num(b))),
            Repr::UnitProduct | Repr::LukRational => QElem::Num(num(a).max(num(b))),
        }
    }

    pub fn meet(&self, a: QElem, b: QElem) -> QElem {
        match &self.0.repr {
            Repr::Finite(t) => QElem::Idx(t.meet[idx(a) * t.n() + idx(b)]),
            Repr::ExtRealPlus => QElem::Num(num(a).max(num(b))),
            Repr::UnitProduct | Repr::LukRational => QElem::Num(num(a).min(num(b))),
        }
    }

    /// Join of a finite family; the empty join is `⊥`.
    pub fn join_all<I: IntoIterator<Item = QElem>>(&self, it: I) -> QElem {
        it.into_iter().fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// Meet of a finite family; the empty meet is `⊤`.
    pub fn meet_all<I: IntoIterator<Item = QElem>>(&self, it: I) -> QElem {
        it.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    pub fn is_integral(&self) -> bool {
        self.unit() == self.top()
    }

    /// `k ≤ e`.
    pub fn above_unit(&self, e: QElem) -> bool {
        self.leq(self.unit(), e)
    }

    pub fn label(&self, e: QElem) -> String {
        match (&self.0.repr, e) {
            (Repr::Finite(t), QElem::Idx(i)) if (i as usize) < t.n() => t.labels[i as usize].clone(),
            (_, QElem::Num(x)) => x.to_string(),
            (_, QElem::Idx(i)) => format!("#{i}"),
        }
    }

    /// Numeric meaning of an element, when it has one.
    pub fn value(&self, e: QElem) -> Option<Ext> {
        match (&self.0.repr, e) {
            (Repr::Finite(t), QElem::Idx(i)) => t.values.as_ref().map(|v| v[i as usize]),
            (_, QElem::Num(x)) => Some(x),
            _ => None,
        }
    }

    /// Parses an element: a carrier label, the numeric value of a chain
    /// element, or an exact rational / `"inf"` for the infinite families.
    pub fn parse_elem(&self, s: &str) -> Result<QElem> {
        let foreign = || Error::ForeignElement(s.to_string(), self.name().to_string());
        match &self.0.repr {
            Repr::Finite(t) => {
                if let Some(i) = t.labels.iter().position(|l| l == s.trim()) {
                    return Ok(QElem::Idx(i as u16));
                }
                let x: Ext = s.parse().map_err(|_| foreign())?;
                t.values
                    .as_ref()
                    .and_then(|vs| vs.iter().position(|v| *v == x))
                    .map(|i| QElem::Idx(i as u16))
                    .ok_or_else(foreign)
            }
            _ => {
                let x: Ext = s.parse().map_err(|_| foreign())?;
                let e = QElem::Num(x);
                if self.contains(e) {
                    Ok(e)
                } else {
                    Err(foreign())
                }
            }
        }
    }

    /// Element with a given numeric value; panics if absent. Test helper.
    pub fn elem(&self, s: &str) -> QElem {
        self.parse_elem(s).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Dispatches one of the basic operations after checking membership.
    pub fn evaluate(&self, op: Op, args: &[QElem]) -> Result<Value> {
        if let Some(e) = args.iter().find(|e| !self.contains(**e)) {
            return Err(Error::ForeignElement(format!("{e:?}"), self.name().to_string()));
        }
        let binary = || {
            if args.len() == 2 {
                Ok((args[0], args[1]))
            } else {
                Err(Error::BadParameter(format!("{op:?} takes exactly two arguments")))
            }
        };
        match op {
            Op::Tensor => binary().map(|(a, b)| Value::Elem(self.tensor(a, b))),
            Op::Hom => binary().map(|(a, b)| Value::Elem(self.hom(a, b))),
            Op::Leq => binary().map(|(a, b)| Value::Bool(self.leq(a, b))),
            Op::Join | Op::Meet if args.is_empty() => {
                Err(Error::BadParameter(format!("{op:?} needs a nonempty family")))
            }
            Op::Join => Ok(Value::Elem(self.join_all(args.iter().copied()))),
            Op::Meet => Ok(Value::Elem(self.meet_all(args.iter().copied()))),
        }
    }

    /// Integrality and cancellativity. Finite quantales are checked
    /// exhaustively; the infinite families are integral and cancellative
    /// (`r = s ⊗ r` with `r ≠ ⊥` forces `s = k` in each closed form).
    pub fn flags(&self) -> QuantaleFlags {
        let integral = self.is_integral();
        match self.carrier() {
            Some(carrier) => {
                let witness = carrier
                    .iter()
                    .filter(|&&r| r != self.bottom())
                    .flat_map(|&r| carrier.iter().map(move |&s| (r, s)))
                    .find(|&(r, s)| self.tensor(s, r) == r && s != self.unit());
                QuantaleFlags {
                    integral,
                    cancellative: witness.is_none(),
                    cancellative_witness: witness.map(|(r, s)| (self.label(r), self.label(s))),
                    analytic: false,
                }
            }
            None => QuantaleFlags {
                integral,
                cancellative: true,
                cancellative_witness: None,
                analytic: true,
            },
        }
    }

    /// Re-checks every quantale axiom by brute force over the carrier,
    /// independently of the construction path.
    pub fn verify_axioms(&self) -> Result<()> {
        let c = self.require_enumerable()?;
        let l = |e: QElem| self.label(e);
        for &a in &c {
            for &b in &c {
                if self.tensor(a, b) != self.tensor(b, a) {
                    return Err(Error::TensorNotCommutative(l(a), l(b)));
                }
                for &d in &c {
                    if self.tensor(self.tensor(a, b), d) != self.tensor(a, self.tensor(b, d)) {
                        return Err(Error::TensorNotAssociative(l(a), l(b), l(d)));
                    }
                }
            }
        }
        if self.unit() == self.bottom() {
            return Err(Error::UnitIsBottom(l(self.unit())));
        }
        for &a in &c {
            if self.tensor(self.unit(), a) != a {
                return Err(Error::UnitLawFails(l(self.unit()), l(a)));
            }
        }
        // Every element is the join of the elements below it; checking
        // joins of arbitrary subsets would be exponential, so check the
        // lattice laws and binary/empty joins, which generate all finite joins.
        for &a in &c {
            for &b in &c {
                let j = self.join(a, b);
                let m = self.meet(a, b);
                let lub = self.leq(a, j) && self.leq(b, j) && c.iter().all(|&u| !(self.leq(a, u) && self.leq(b, u)) || self.leq(j, u));
                let glb = self.leq(m, a) && self.leq(m, b) && c.iter().all(|&d| !(self.leq(d, a) && self.leq(d, b)) || self.leq(d, m));
                if !lub || !glb {
                    return Err(Error::NotALattice(format!("bad join/meet of {} and {}", l(a), l(b))));
                }
            }
        }
        for &u in &c {
            if self.tensor(u, self.bottom()) != self.bottom() {
                return Err(Error::JoinsNotPreserved(l(u), l(self.bottom()), "(empty join)".into()));
            }
            for &v in &c {
                for &w in &c {
                    if self.tensor(u, self.join(v, w)) != self.join(self.tensor(u, v), self.tensor(u, w)) {
                        return Err(Error::JoinsNotPreserved(l(u), l(v), l(w)));
                    }
                    // residuation
                    if self.leq(self.tensor(u, v), w) != self.leq(v, self.hom(u, w)) {
                        return Err(Error::JoinsNotPreserved(l(u), l(v), l(w)));
                    }
                }
            }
        }
        Ok(())
    }
}

fn fin(e: QElem) -> Rational {
    num(e).finite().expect("finite value expected in a [0,1] quantale")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn goedel3() -> Quantale {
        builtin("goedel_chain", Some(2)).unwrap()
    }

    #[test]
    fn boolean_residuation() {
        let q = builtin("boolean2", None).unwrap();
        assert_eq!(q.hom(q.elem("1"), q.elem("0")), q.elem("0"));
        assert_eq!(q.hom(q.elem("0"), q.elem("0")), q.elem("1"));
        q.verify_axioms().unwrap();
    }

    #[test]
    fn goedel_hom_brute_force() {
        let q = goedel3();
        // brute force: largest v with min(1, v) ≤ 1/2
        let half = q.elem("1/2");
        let brute = q
            .carrier()
            .unwrap()
            .into_iter()
            .filter(|&v| q.leq(q.tensor(q.elem("1"), v), half))
            .max_by_key(|&v| q.value(v).unwrap())
            .unwrap();
        assert_eq!(q.hom(q.elem("1"), half), brute);
        assert_eq!(brute, half);
        assert_eq!(q.tensor(half, half), half);
    }

    #[test]
    fn unit_is_bottom_rejected() {
        let err = make_finite_quantale(
            "bad",
            vec!["0".into(), "1".into()],
            &[(0, 1)],
            vec![vec![0, 1], vec![1, 1]],
            0,
        )
        .unwrap_err();
        assert_eq!(err, Error::UnitIsBottom("0".into()));
    }

    #[test]
    fn malformed_tables_rejected() {
        let labels = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        // a and b incomparable, no top
        let e = make_finite_quantale("x", labels(), &[(0, 1), (0, 2)], vec![vec![0; 3]; 3], 1).unwrap_err();
        assert!(matches!(e, Error::NotALattice(_)), "{e}");
        // not commutative
        let e = make_finite_quantale(
            "x",
            vec!["0".into(), "1".into()],
            &[(0, 1)],
            vec![vec![0, 1], vec![0, 1]],
            1,
        )
        .unwrap_err();
        assert!(matches!(e, Error::TensorNotCommutative(..) | Error::UnitLawFails(..)), "{e}");
        // ⊗ = ∨ on the 2-chain with unit ⊤ fails the unit law
        let e = make_finite_quantale(
            "x",
            vec!["0".into(), "1".into()],
            &[(0, 1)],
            vec![vec![0, 1], vec![1, 1]],
            1,
        )
        .unwrap_err();
        assert!(matches!(e, Error::UnitLawFails(..)), "{e}");
    }

    #[test]
    fn joins_not_preserved_rejected() {
        // 3-chain 0<a<1, unit 1, a⊗a = 1 breaks monotonicity/joins
        let e = make_finite_quantale(
            "x",
            vec!["0".into(), "a".into(), "1".into()],
            &[(0, 1), (1, 2)],
            vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]],
            2,
        )
        .unwrap_err();
        assert!(matches!(e, Error::JoinsNotPreserved(..) | Error::TensorNotAssociative(..)), "{e}");
    }

    #[test]
    fn ext_real_plus_closed_forms() {
        let q = builtin("ext_real_plus", None).unwrap();
        assert_eq!(q.hom(q.elem("3"), q.elem("5")), q.elem("2"));
        let j = q.evaluate(Op::Join, &[q.elem("3"), q.elem("5"), q.elem("2")]).unwrap();
        assert_eq!(j, Value::Elem(q.elem("2")));
        assert!(q.leq(q.elem("5"), q.elem("3")));
        assert_eq!(q.tensor(q.elem("1/2"), q.elem("inf")), q.elem("inf"));
        let f = q.flags();
        assert!(f.integral && f.cancellative && f.analytic);
    }

    #[test]
    fn lukasiewicz_rational_closed_forms() {
        let q = builtin("lukasiewicz_rational", None).unwrap();
        assert_eq!(q.tensor(q.elem("0.7"), q.elem("0.6")), q.elem("0.3"));
        assert_eq!(q.hom(q.elem("0.7"), q.elem("0.4")), q.elem("0.7"));
        assert!(q.parse_elem("3/2").is_err());
    }

    #[test]
    fn unit_interval_product_hom() {
        let q = builtin("unit_interval_product", None).unwrap();
        assert_eq!(q.hom(q.elem("1/2"), q.elem("1/4")), q.elem("1/2"));
        assert_eq!(q.hom(q.elem("0"), q.elem("0")), q.elem("1"));
    }

    #[test]
    fn flags_of_chains() {
        let l = builtin("lukasiewicz_chain", Some(2)).unwrap().flags();
        assert!(l.integral && l.cancellative);
        let g = goedel3().flags();
        assert!(g.integral && !g.cancellative);
        assert_eq!(g.cancellative_witness, Some(("1/2".into(), "1/2".into())));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(builtin("goedel_chain", Some(0)), Err(Error::BadParameter(_))));
        assert!(matches!(builtin("nope", None), Err(Error::BadParameter(_))));
        let q = goedel3();
        let foreign = QElem::Num(Ext::one());
        assert!(matches!(q.evaluate(Op::Tensor, &[foreign, q.unit()]), Err(Error::ForeignElement(..))));
    }

    #[test]
    fn evaluate_unit_residuation() {
        for q in [goedel3(), builtin("lukasiewicz_chain", Some(3)).unwrap()] {
            for w in q.carrier().unwrap() {
                assert_eq!(q.evaluate(Op::Hom, &[q.unit(), w]).unwrap(), Value::Elem(w));
            }
        }
    }
}
