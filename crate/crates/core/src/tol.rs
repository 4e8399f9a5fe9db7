/// Numerical tolerances shared by the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance for boundary equalities (Hurwitz margin, the
    /// imaginary-axis pole equality, the residue equality).
    pub boundary_rel: f64,
    /// Relative slack ε for frequency-grid sign checks.
    pub sampling_rel: f64,
    /// Largest |Im r|/|r| accepted for a residue to count as real.
    pub residue_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { boundary_rel: 1e-9, sampling_rel: 1e-8, residue_rel: 1e-6 }
    }
}
