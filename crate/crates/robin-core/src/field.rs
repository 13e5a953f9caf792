//! Scalar fields on the half-line with a declared decay class.

use std::sync::Arc;

/// How a field behaves as x → ∞. The transform's quadratures use this to
/// pick truncation points; the honesty of the declaration is spot-checked
/// in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    Bounded,
    ExponentiallyDecaying,
    CompactlySupported,
}

/// A real scalar field f: [0, ∞) → R.
#[derive(Clone)]
pub struct ScalarField1D {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    decay: DecayClass,
    /// Upper end of the support (compactly supported fields) or of the
    /// effective support (exponentially decaying fields).
    support: Option<f64>,
}

impl ScalarField1D {
    pub fn bounded(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField1D {
            f: Arc::new(f),
            decay: DecayClass::Bounded,
            support: None,
        }
    }

    pub fn exponentially_decaying(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        effective_support: f64,
    ) -> Self {
        ScalarField1D {
            f: Arc::new(f),
            decay: DecayClass::ExponentiallyDecaying,
            support: Some(effective_support),
        }
    }

    pub fn compactly_supported(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support_end: f64,
    ) -> Self {
        ScalarField1D {
            f: Arc::new(f),
            decay: DecayClass::CompactlySupported,
            support: Some(support_end),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    pub fn support_end(&self) -> Option<f64> {
        self.support
    }
}

impl std::fmt::Debug for ScalarField1D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField1D")
            .field("decay", &self.decay)
            .field("support", &self.support)
            .finish()
    }
}
