use alloc::vec::Vec;

use crate::simplex::Point;

/// One time sample of a path of labeled point lists.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub points: Vec<Point>,
}

/// A discretized path `t ↦ configuration`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn new() -> Self {
        Trajectory { samples: Vec::new() }
    }

    /// Samples `f` at `count ≥ 2` uniformly spaced times in `[0, 1]`.
    pub fn sample<E>(count: usize, mut f: impl FnMut(f64) -> Result<Vec<Point>, E>) -> Result<Self, E> {
        let count = count.max(2);
        let mut samples = Vec::with_capacity(count);
        for k in 0..count {
            let t = k as f64 / (count - 1) as f64;
            samples.push(Sample { t, points: f(t)? });
        }
        Ok(Trajectory { samples })
    }

    pub fn push(&mut self, t: f64, points: Vec<Point>) {
        self.samples.push(Sample { t, points });
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&Sample> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Largest vertex displacement between consecutive samples.
    pub fn max_step(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| {
                w[0].points.iter().zip(&w[1].points).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}
