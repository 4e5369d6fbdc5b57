/// Size caps shared by every exhaustive routine.
///
/// `max_dim` bounds the dimension of constructed algebras (tensor, product);
/// `max_elements` bounds the cardinality of any algebra whose elements get
/// enumerated; `max_search_nodes` bounds the backtracking search used for
/// homomorphism enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: usize,
    pub max_elements: u128,
    pub max_search_nodes: u64,
}

pub const DIM_CAP_ENV: &str = "STONE_DIM_CAP";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dim: 64,
            max_elements: 4096,
            max_search_nodes: 1 << 24,
        }
    }
}

impl Limits {
    /// Defaults, with `max_dim` overridden by `STONE_DIM_CAP` when it parses.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(cap) = std::env::var(DIM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            l.max_dim = cap;
        }
        l
    }

    pub fn with_max_dim(mut self, cap: usize) -> Self {
        self.max_dim = cap;
        self
    }
}
