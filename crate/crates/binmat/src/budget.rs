/// Ceilings for the potentially explosive searches.
///
/// Every guard is a hard limit: exceeding it yields
/// [`Error::CostCeilingExceeded`](crate::Error::CostCeilingExceeded) rather
/// than a partial answer. The `BINMAT_COST_CEILING` environment variable
/// overrides the three count ceilings at once (see [`Budget::from_env`]).
#[derive(Debug, Clone)]
pub struct Budget {
    /// Largest Gaussian binomial a single subspace-enumeration level may have.
    pub max_subspaces: u64,
    /// Largest |X| handled by exhaustive subset-sum circuit search.
    pub exhaustive_circuit_cap: usize,
    /// Largest |X| handled by the meet-in-the-middle circuit search.
    pub mitm_circuit_cap: usize,
    /// Ceiling on sum_{i<=s} C(n,i) for low-weight vector enumerations.
    pub max_weight_enum: u64,
    /// Ceiling on the number of subsets examined by independent-set sweeps.
    pub max_independent_sets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subspaces: 100_000_000,
            exhaustive_circuit_cap: 24,
            mitm_circuit_cap: 40,
            max_weight_enum: 50_000_000,
            max_independent_sets: 5_000_000,
        }
    }
}

pub const COST_CEILING_ENV: &str = "BINMAT_COST_CEILING";

impl Budget {
    /// Default budget, with the count ceilings replaced by
    /// `BINMAT_COST_CEILING` when that variable is set to an integer.
    pub fn from_env() -> Budget {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var(COST_CEILING_ENV) {
            if let Ok(ceiling) = v.trim().parse::<u64>() {
                b.max_subspaces = ceiling;
                b.max_weight_enum = ceiling;
                b.max_independent_sets = ceiling;
            }
        }
        b
    }
}
