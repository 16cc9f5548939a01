use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Validation failures carry a
/// witness naming the offending identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // --- category ---
    #[error("duplicate object identifier `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism identifier `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of it")]
    IdentityIllTyped { object: String, morphism: String },
    #[error("composable pair ({f}, {g}) has no composition entry")]
    CompositionUndefined { f: String, g: String },
    #[error("composition entry ({f}, {g}) = {h} is ill-typed")]
    CompositionIllTyped { f: String, g: String, h: String },
    #[error("conflicting composition entries for ({f}, {g})")]
    CompositionConflict { f: String, g: String },
    #[error("unit law fails: {0}")]
    UnitLawViolation(String),
    #[error("associativity fails on ({f}, {g}, {h})")]
    AssociativityViolation { f: String, g: String, h: String },
    #[error("graph has a cycle: {}", .0.join(" -> "))]
    CyclicGraph(Vec<String>),
    #[error("monoid table is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("monoid table has no two-sided unit `{0}`")]
    NoUnit(String),
    #[error("monoid table is not total: {0}")]
    TableNotTotal(String),
    #[error("degree {degree} needs {count} basis elements, above the cap of {cap}")]
    DegreeTooLarge { degree: usize, count: u128, cap: u128 },

    // --- matched pairs ---
    #[error("object lists of C and D differ")]
    ObjectMismatch,
    #[error("action table entry ill-typed: {0}")]
    ActionIllTyped(String),
    #[error("action table missing entry for ({c}, {d})")]
    ActionUndefined { c: String, d: String },
    #[error("MP1 fails at ({c}, {d})")]
    MP1Violation { c: String, d: String },
    #[error("MP2 fails at ({c}, {d1}, {d2})")]
    MP2Violation { c: String, d1: String, d2: String },
    #[error("MP3 fails at ({c1}, {c2}, {d})")]
    MP3Violation { c1: String, c2: String, d: String },
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("factorisation rule violates FR1 at ({c}, {d})")]
    FR1Violation { c: String, d: String },
    #[error("factorisation rule violates FR2: {0}")]
    FR2Violation(String),
    #[error("no factorisation of {0} through the given subcategories")]
    FactorisationMissing(String),
    #[error("factorisation of {0} is not unique")]
    FactorisationAmbiguous(String),
    #[error("tuple is not composable: {0}")]
    NotComposable(String),

    // --- complexes / maps / algebra ---
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("d∘d ≠ 0 in degree {0}")]
    NotAComplex(usize),
    #[error("degree {0} is not materialised")]
    DegreeNotMaterialised(usize),
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("map fails the chain-map law: {0}")]
    NotAChainMap(String),

    // --- odometer ---
    #[error("vertex mismatch: {0}")]
    VertexMismatch(String),
    #[error("invalid weighted graph: {0}")]
    InvalidGraph(String),

    // --- cochains ---
    #[error("invalid phase `{0}`")]
    InvalidPhase(String),
    #[error("cocycle condition fails: {0}")]
    CocycleViolation(String),

    // --- input ---
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that signal an exceeded enumeration cap.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::DegreeTooLarge { .. })
    }
}
