/// Budgets for computations whose cost is governed by instance size.
///
/// All solvers take the limits explicitly so callers can raise or lower them;
/// [`ResourceLimits::default`] is sized for interactive desk use.
#[derive(Clone, Copy, Debug)]
pub struct ResourceLimits {
    /// Maximum number of cosets `N = det(Λ)` the quotient-graph solver will
    /// allocate state for.
    pub max_cosets: u64,
    /// Maximum number of points an exhaustive-enumeration oracle will visit.
    pub max_oracle_points: u64,
    /// Maximum work (grid points times candidate lattice points per grid
    /// point) of a covering grid check.
    pub max_grid_work: u64,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits {
            max_cosets: 10_000_000,
            max_oracle_points: 10_000_000,
            max_grid_work: 100_000_000,
        }
    }
}

impl ResourceLimits {
    /// Same defaults, different coset budget.
    pub fn with_max_cosets(max_cosets: u64) -> Self {
        ResourceLimits {
            max_cosets,
            ..Default::default()
        }
    }
}
