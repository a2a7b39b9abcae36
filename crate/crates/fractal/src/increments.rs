//! Bounded-memory log of raw weight-update increments, grouped by parameter
//! group, feeding the tail estimator.

use std::collections::BTreeMap;

/// Default per-group retention cap (samples kept for estimation).
pub const DEFAULT_CAPACITY: usize = 1 << 21;

/// One group's retained samples. When the buffer fills it is thinned by
/// dropping every second element and doubling the stride, which keeps a
/// uniform, order-preserving subsample of the full event stream.
#[derive(Debug, Clone)]
struct GroupBuffer {
    samples: Vec<f64>,
    stride: u64,
    seen: u64,
    capacity: usize,
}

impl GroupBuffer {
    fn new(capacity: usize) -> Self {
        Self {
            samples: Vec::new(),
            stride: 1,
            seen: 0,
            capacity,
        }
    }

    fn push(&mut self, value: f64) {
        if self.seen % self.stride == 0 {
            if self.samples.len() == self.capacity {
                let mut keep = 0;
                for i in (0..self.samples.len()).step_by(2) {
                    self.samples[keep] = self.samples[i];
                    keep += 1;
                }
                self.samples.truncate(keep);
                self.stride *= 2;
            }
            if self.seen % self.stride == 0 {
                self.samples.push(value);
            }
        }
        self.seen += 1;
    }
}

/// Flattened `delta-W` samples per parameter group for one training iteration.
#[derive(Debug, Clone)]
pub struct IncrementLog {
    groups: BTreeMap<String, GroupBuffer>,
    capacity: usize,
    /// Training iteration the samples were collected in.
    pub iteration: u64,
}

impl Default for IncrementLog {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY)
    }
}

impl IncrementLog {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 16);
        Self {
            groups: BTreeMap::new(),
            capacity,
            iteration: 0,
        }
    }

    pub fn record(&mut self, group: &str, value: f64) {
        self.group_mut(group).push(value);
    }

    pub fn record_all(&mut self, group: &str, values: &[f64]) {
        let buf = self.group_mut(group);
        for &v in values {
            buf.push(v);
        }
    }

    fn group_mut(&mut self, group: &str) -> &mut GroupBuffer {
        if !self.groups.contains_key(group) {
            self.groups
                .insert(group.to_string(), GroupBuffer::new(self.capacity));
        }
        self.groups.get_mut(group).unwrap()
    }

    pub fn group_names(&self) -> Vec<&str> {
        self.groups.keys().map(|s| s.as_str()).collect()
    }

    /// Retained samples of a group, in stream order.
    pub fn samples(&self, group: &str) -> Option<&[f64]> {
        self.groups.get(group).map(|g| g.samples.as_slice())
    }

    /// Total events observed for a group (retained or thinned away).
    pub fn events_seen(&self, group: &str) -> u64 {
        self.groups.get(group).map_or(0, |g| g.seen)
    }

    pub fn is_empty(&self) -> bool {
        self.groups.values().all(|g| g.samples.is_empty())
    }

    pub fn clear(&mut self) {
        self.groups.clear();
    }
}
