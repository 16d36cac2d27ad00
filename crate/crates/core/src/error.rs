use thiserror::Error;

/// Errors raised by constructors and checks across the crate.
///
/// Witnesses are rendered with the labels of the structures involved so that
/// they are meaningful without access to internal indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // quantale
    #[error("carrier is not a lattice: {0}")]
    NotALattice(String),
    #[error("tensor is not associative at ({0}, {1}, {2})")]
    TensorNotAssociative(String, String, String),
    #[error("tensor is not commutative at ({0}, {1})")]
    TensorNotCommutative(String, String),
    #[error("unit {0} is the bottom element")]
    UnitIsBottom(String),
    #[error("{0} is not a unit for the tensor: fails at {1}")]
    UnitLawFails(String, String),
    #[error("tensor does not preserve joins at ({0}, {1}, {2})")]
    JoinsNotPreserved(String, String, String),
    #[error("malformed quantale table: {0}")]
    MalformedTable(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("element {0} does not belong to quantale {1}")]
    ForeignElement(String, String),
    #[error("quantale {0} is not enumerable")]
    NotEnumerable(String),
    #[error("quantale {0} is not integral")]
    NotIntegral(String),
    #[error("operation requires quantale {expected}, got {got}")]
    WrongQuantale { expected: String, got: String },

    // vcat
    #[error("reflexivity fails at {0}")]
    ReflexivityFail(String),
    #[error("transitivity fails at ({0}, {1}, {2})")]
    TransitivityFail(String, String, String),
    #[error("hom matrix has wrong shape: {0}")]
    MalformedMatrix(String),
    #[error("not a V-functor: fails at ({0}, {1})")]
    NotAFunctor(String, String),
    #[error("structures live over different quantales ({0} vs {1})")]
    QuantaleMismatch(String, String),

    // dist
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("left action fails: a({0},{1}) ⊗ φ({1},{2}) ≰ φ({0},{2})")]
    LeftActionFail(String, String, String),
    #[error("right action fails: φ({0},{1}) ⊗ b({1},{2}) ≰ φ({0},{2})")]
    RightActionFail(String, String, String),

    // presheaf / budgets
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    // monadkit
    #[error("square does not commute at {0}")]
    NotCommuting(String),
    #[error("naturality square for {0} does not commute")]
    NotNatural(String),
    #[error("unit {0}^* is not a member of the submonad")]
    UnitNotContained(String),
    #[error("multiplication of {0} leaves the submonad")]
    MultiplicationEscapesT(String),

    // ball
    #[error("precondition failed: {0}")]
    PreconditionFail(String),

    // colimit
    #[error("no minimum of {{x : φ ≤ x^*}} for φ = {0}")]
    NoMinimum(String),
    #[error("algebras were extracted for different submonads ({0} vs {1})")]
    SpecMismatch(String, String),

    // lawvere
    #[error("sequence is not eventually constant: {0}")]
    NotEventuallyConstant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
