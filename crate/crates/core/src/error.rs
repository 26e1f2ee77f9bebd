use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group description: {0}")]
    Malformed(String),
    #[error("index {index} out of range (bound {bound}) in {context}")]
    OutOfRange {
        index: u64,
        bound: u64,
        context: String,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("generator {0} is not a permutation")]
    NotBijective(usize),
    #[error("group order reached {order}, exceeding the element budget {budget}")]
    BudgetExceeded { order: u128, budget: u128 },
    #[error("multiplication table violates the group axioms: {0}")]
    NotAGroup(String),
    #[error("action image of generator {0} is not an automorphism of the kernel")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism from the acting group: {0}")]
    NotHomomorphic(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not coprime to the conductor {1}")]
    NotCoprime(i64, u64),
    #[error("`{0}` is known only by catalog order; it cannot be realized")]
    CatalogOnly(String),
    #[error("character table computation failed: {0}")]
    TableFailure(String),
    #[error("table is not closed under the Galois action: {0}")]
    NotGaloisClosed(String),
    #[error("data bundle `{0}` failed its content-hash check")]
    CorruptBundle(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
