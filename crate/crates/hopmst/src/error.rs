use thiserror::Error;

/// Errors across graph loading, solving and verification.
///
/// The CLI maps these onto exit codes: input problems (parsing,
/// validation, bad generator parameters) exit 2, infeasible instances
/// exit 1, and internal invariant violations or exhausted round budgets
/// exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("edge {u}-{v} has invalid weight {w} (must be finite and >= 0)")]
    BadWeight { u: usize, v: usize, w: f64 },

    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),

    #[error("graph is disconnected; no spanning tree exists")]
    Disconnected,

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error(
        "no spanning tree of hop diameter <= {h} exists: vertices {u} and {v} \
         are {dist} hops apart in the graph"
    )]
    Infeasible { u: usize, v: usize, dist: usize, h: usize },

    #[error("round budget exhausted after {rounds} rounds ({remaining} vertices still active)")]
    RoundBudgetExhausted { rounds: usize, remaining: usize },

    #[error("matching stalled: no finite-distance pair among {0} active vertices")]
    MatchingStall(usize),

    #[error("weight budget {budget} is below the minimum spanning tree weight {mst}")]
    BudgetBelowMst { budget: f64, mst: f64 },

    #[error("no diameter bound h <= {0} met the weight budget")]
    NoFeasibleDiameter(usize),

    #[error("instance too large for exhaustive enumeration (n = {n}, cap {cap})")]
    TooLarge { n: usize, cap: usize },

    #[error("generator gave up after {0} attempts to produce a connected graph")]
    RetryBudgetExhausted(usize),

    #[error("reference tree has hop diameter {diameter}, larger than the bound {h}")]
    BadReferenceTree { diameter: usize, h: usize },

    #[error("internal invariant violation: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
