/// Two-part comparison tolerance: `abs` plus `rel` times the magnitude of
/// the quantities compared.
///
/// All identities implemented here are exact in real arithmetic, so the
/// defaults leave several orders of magnitude between double-precision noise
/// and the acceptance thresholds. Campaigns report raw defects alongside the
/// verdicts so thresholds can be retuned without rerunning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs: 1e-9, rel: 1e-9 }
    }
}

impl Tol {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tol { abs, rel }
    }

    /// Purely absolute tolerance.
    pub const fn absolute(abs: f64) -> Self {
        Tol { abs, rel: 0.0 }
    }

    /// Effective threshold at a given magnitude scale.
    pub fn eff(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    /// `a ≈ b` at the scale of the larger operand.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eff(a.abs().max(b.abs()))
    }

    /// `x ≈ 0` at the given scale.
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.eff(scale)
    }
}
