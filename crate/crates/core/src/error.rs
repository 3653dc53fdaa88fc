use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A set (or an intermediate result) would need more bit positions than
    /// the universe allows.
    #[error("capacity exceeded: span {span} exceeds universe bound {bound}")]
    Capacity { span: u128, bound: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("scale must be nonzero")]
    ZeroScale,

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("duplicate element {value} at position {position}")]
    DuplicateElement { value: i64, position: usize },

    #[error("malformed element {token:?} at position {position}")]
    MalformedElement { token: String, position: usize },

    /// A documented precondition does not hold; the string names it.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An identity that must hold by construction failed on direct
    /// computation. This always indicates a kernel bug.
    #[error("internal verification failed: {0}")]
    Verification(String),

    /// `|B∔B| ≥ |B−B| + |B| + 1` does not hold for a base-power set.
    #[error(
        "gap condition fails: |B∔B| = {restricted} < |B−B| + |B| + 1 = {difference} + {size} + 1"
    )]
    GapCondition {
        restricted: usize,
        difference: usize,
        size: usize,
    },

    #[error("budget exceeded: {needed} work units needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("search exhausted: no set with delta {delta} within diameter <= {max_diameter}, cardinality <= {max_k}")]
    SearchExhausted {
        delta: i64,
        max_diameter: u32,
        max_k: u32,
    },

    #[error("invalid recipe: {0}")]
    Recipe(String),
}
