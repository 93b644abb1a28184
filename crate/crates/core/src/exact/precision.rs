use crate::error::{Error, Result};

/// Working-precision schedule for ball computations: start, then double up to the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self { start: 128, cap: 16384 }
    }
}

impl Precision {
    pub fn new(start: u32, cap: u32) -> Self {
        Self { start: start.max(32), cap: cap.max(start.max(32)) }
    }

    pub fn with_cap(cap: u32) -> Self {
        Self::new(Self::default().start.min(cap), cap)
    }

    /// Precisions tried in order: `start, 2·start, …, cap`.
    pub fn ladder(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut p = self.start;
        while p < self.cap {
            out.push(p);
            p = p.saturating_mul(2);
        }
        out.push(self.cap);
        out
    }

    /// Runs `f` at increasing precision until it returns `Some`.
    pub fn escalate<T>(&self, context: &str, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
        for p in self.ladder() {
            if let Some(v) = f(p)? {
                return Ok(v);
            }
        }
        Err(Error::PrecisionExhausted { cap: self.cap, context: context.to_string() })
    }
}
