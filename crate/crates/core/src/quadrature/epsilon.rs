//! Wynn's epsilon algorithm for the partial sums of an alternating series.

/// Partial sums fed to the table are capped at this many most recent terms.
const WINDOW: usize = 40;

/// Accumulates partial sums and extrapolates their limit.
#[derive(Debug, Default, Clone)]
pub struct EpsilonTable {
    sums: Vec<f64>,
    history: Vec<f64>,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Appends a partial sum and returns `(estimate, error)`.
    pub fn push(&mut self, partial_sum: f64) -> (f64, f64) {
        self.sums.push(partial_sum);
        let start = self.sums.len().saturating_sub(WINDOW);
        let (est, delta) = extrapolate(&self.sums[start..]);
        self.history.push(est);
        let h = &self.history;
        let n = h.len();
        let err = if n >= 3 { delta.max((est - h[n - 2]).abs()).max((est - h[n - 3]).abs()) } else { f64::INFINITY };
        (est, err)
    }
}

/// Runs the epsilon table over `seq`; returns the entry of the best converged
/// even column together with its last increment.
pub fn extrapolate(seq: &[f64]) -> (f64, f64) {
    let m = seq.len();
    let last = *seq.last().expect("non-empty sequence");
    if m < 3 {
        let delta = if m == 2 { (seq[1] - seq[0]).abs() } else { f64::INFINITY };
        return (last, delta);
    }
    let mut best = (last, (seq[m - 1] - seq[m - 2]).abs());
    let mut prev: Vec<f64> = vec![0.0; m + 1];
    let mut cur: Vec<f64> = seq.to_vec();
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 {
                break;
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        if next.len() != cur.len() - 1 || next.iter().any(|v| !v.is_finite()) {
            break;
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 && cur.len() >= 2 {
            let n = cur.len();
            let delta = (cur[n - 1] - cur[n - 2]).abs();
            if delta < best.1 {
                best = (cur[n - 1], delta);
            }
        }
    }
    best
}
