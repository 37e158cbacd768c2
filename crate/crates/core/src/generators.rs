//! Reproducible instance families for the structural experiments: numeric
//! density, duplicate elements, additive progressions, plus closed-form
//! baselines (all ones, superincreasing, one large element over a run of
//! ones).
//!
//! Constructions are deterministic per seed and deliberately simple so
//! sweep ratios stay comparable across runs. Duplicates copy an element two
//! positions back, and progression runs occupy stride-two position blocks,
//! so both survive an alternating split intact instead of being scattered
//! across the halves.

use crate::error::{Error, Result};
use crate::instance::Instance;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Density,
    Duplicates,
    Progressions,
    Superincreasing,
    Ones,
    DpGap,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Density => "density",
            Family::Duplicates => "duplicates",
            Family::Progressions => "progressions",
            Family::Superincreasing => "superincreasing",
            Family::Ones => "ones",
            Family::DpGap => "dp-gap",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "density" => Some(Family::Density),
            "duplicates" => Some(Family::Duplicates),
            "progressions" => Some(Family::Progressions),
            "superincreasing" => Some(Family::Superincreasing),
            "ones" => Some(Family::Ones),
            "dp-gap" => Some(Family::DpGap),
            _ => None,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs for one generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Bit width of the base uniform draw (density, duplicates,
    /// progressions).
    pub w: u32,
    /// Number of positions overwritten with copies (duplicates).
    pub dup_count: usize,
    /// Number of injected arithmetic runs (progressions).
    pub seq_count: usize,
    /// Length of each injected run.
    pub seq_len: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GenSpec {
            family,
            n,
            w: 32,
            dup_count: 0,
            seq_count: 0,
            seq_len: 4,
            seed: 0,
        }
    }

    /// The knob that varies within this family's sweep, as a compact,
    /// whitespace-free string.
    pub fn knob(&self) -> String {
        match self.family {
            Family::Density => format!("w={}", self.w),
            Family::Duplicates => format!("dup={}", self.dup_count),
            Family::Progressions => format!("seq={},len={}", self.seq_count, self.seq_len),
            _ => "-".to_string(),
        }
    }

    /// Header comment echoed into generated instance files.
    pub fn comment(&self) -> String {
        format!(
            "family={} n={} w={} dup={} seq={} seqlen={} seed={}",
            self.family, self.n, self.w, self.dup_count, self.seq_count, self.seq_len, self.seed
        )
    }
}

fn uniform_draw(rng: &mut ChaCha8Rng, n: usize, w: u32) -> Result<Vec<u64>> {
    if w == 0 || w > 62 {
        return Err(Error::InvalidSpec(format!("bit width {w} out of range 1..=62")));
    }
    let max = 1u64 << w;
    Ok((0..n).map(|_| rng.random_range(1..=max)).collect())
}

/// Builds the instance described by `spec`; deterministic for a fixed seed.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let elements = match spec.family {
        Family::Density => uniform_draw(&mut rng, spec.n, spec.w)?,
        Family::Duplicates => {
            if spec.dup_count % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "duplicate count {} must be even",
                    spec.dup_count
                )));
            }
            if spec.n < 2 * spec.dup_count + 2 {
                return Err(Error::InvalidSpec(format!(
                    "n={} too small for {} duplicates",
                    spec.n, spec.dup_count
                )));
            }
            let mut values = uniform_draw(&mut rng, spec.n, spec.w)?;
            let mut taken: Vec<usize> = Vec::new();
            for k in 0..spec.dup_count {
                let parity = k % 2;
                // Copy an element two positions back, keeping source and
                // copy at the same index parity.
                let position = loop {
                    let slot = rng.random_range(0..spec.n / 2);
                    let p = 2 * slot + parity;
                    if p >= 2 && !taken.contains(&p) && !taken.contains(&(p - 2)) {
                        break p;
                    }
                };
                values[position] = values[position - 2];
                taken.push(position);
            }
            values
        }
        Family::Progressions => {
            if spec.seq_len < 2 {
                return Err(Error::InvalidSpec("run length must be at least 2".into()));
            }
            let per_parity = spec.seq_count.div_ceil(2);
            if per_parity * spec.seq_len > spec.n / 2 {
                return Err(Error::InvalidSpec(format!(
                    "{} runs of length {} do not fit n={}",
                    spec.seq_count, spec.seq_len, spec.n
                )));
            }
            let mut values = uniform_draw(&mut rng, spec.n, spec.w)?;
            let half_range = 1u64 << (spec.w - 1);
            for r in 0..spec.seq_count {
                let parity = r % 2;
                let block = r / 2;
                let start = rng.random_range(1..=half_range);
                let step = rng.random_range(1..=(half_range / spec.seq_len as u64).max(1));
                for term in 0..spec.seq_len {
                    let position = 2 * (block * spec.seq_len + term) + parity;
                    values[position] = start + step * term as u64;
                }
            }
            values
        }
        Family::Superincreasing => {
            if spec.n > 63 {
                return Err(Error::InvalidSpec(format!(
                    "superincreasing capped at n=63, got {}",
                    spec.n
                )));
            }
            (0..spec.n).map(|i| 1u64 << i).collect()
        }
        Family::Ones => vec![1; spec.n],
        Family::DpGap => {
            if spec.n == 0 {
                return Err(Error::InvalidSpec("dp-gap needs at least one element".into()));
            }
            let mut values = vec![1u64; spec.n - 1];
            // The large element is 2^n, capped to keep sums in range.
            let exponent = (spec.n as u32).min(62);
            values.push(1u64 << exponent);
            values
        }
    };
    Instance::new(elements, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_sigma;

    #[test]
    fn ones_family() {
        let inst = generate(&GenSpec::new(Family::Ones, 5)).unwrap();
        assert_eq!(inst.elements(), &[1, 1, 1, 1, 1]);
        assert_eq!(brute_sigma(inst.elements()).unwrap().u(), 6);
    }

    #[test]
    fn superincreasing_family() {
        let inst = generate(&GenSpec::new(Family::Superincreasing, 4)).unwrap();
        assert_eq!(inst.elements(), &[1, 2, 4, 8]);
        assert_eq!(brute_sigma(inst.elements()).unwrap().u(), 16);
    }

    #[test]
    fn dp_gap_family() {
        let inst = generate(&GenSpec::new(Family::DpGap, 10)).unwrap();
        let oracle = brute_sigma(inst.elements()).unwrap();
        assert_eq!(oracle.u(), 20);
        let expected: Vec<u64> = (0..10).chain(1024..1034).collect();
        assert_eq!(oracle.sums, expected);
    }

    #[test]
    fn density_respects_range_and_determinism() {
        let mut spec = GenSpec::new(Family::Density, 48);
        spec.w = 16;
        spec.seed = 7;
        let a = generate(&spec).unwrap();
        assert!(a.elements().iter().all(|&v| (1..=65536).contains(&v)));
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        spec.seed = 8;
        assert_ne!(generate(&spec).unwrap(), a);
    }

    #[test]
    fn duplicates_copy_earlier_elements() {
        let mut spec = GenSpec::new(Family::Duplicates, 16);
        spec.dup_count = 4;
        spec.seed = 3;
        let inst = generate(&spec).unwrap();
        let values = inst.elements();
        let copies = (2..values.len())
            .filter(|&i| values[i] == values[i - 2])
            .count();
        assert!(copies >= 4);
    }

    #[test]
    fn duplicates_validation() {
        let mut spec = GenSpec::new(Family::Duplicates, 16);
        spec.dup_count = 3;
        assert!(generate(&spec).is_err());
        spec.dup_count = 8;
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn progressions_embed_stride_two_runs() {
        let mut spec = GenSpec::new(Family::Progressions, 16);
        spec.seq_count = 1;
        spec.seq_len = 4;
        spec.seed = 11;
        let inst = generate(&spec).unwrap();
        let v = inst.elements();
        // Run occupies positions 0, 2, 4, 6 with a common difference.
        let step = v[2] - v[0];
        assert!(step > 0);
        assert_eq!(v[4] - v[2], step);
        assert_eq!(v[6] - v[4], step);
    }

    #[test]
    fn progression_runs_shrink_half_sum_sets() {
        let mut spec = GenSpec::new(Family::Progressions, 16);
        spec.w = 30;
        spec.seq_count = 1;
        spec.seq_len = 4;
        spec.seed = 5;
        let inst = generate(&spec).unwrap();
        let left: Vec<u64> = inst.elements().iter().step_by(2).copied().collect();
        // Four terms in arithmetic progression collapse at least one pair
        // of two-element subsets onto a shared sum.
        let u = brute_sigma(&left).unwrap().u();
        assert!(u < 1 << left.len());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = GenSpec::new(Family::Density, 8);
        spec.w = 0;
        assert!(generate(&spec).is_err());
        spec.w = 63;
        assert!(generate(&spec).is_err());
        let mut spec = GenSpec::new(Family::Progressions, 8);
        spec.seq_count = 2;
        spec.seq_len = 4;
        assert!(generate(&spec).is_ok()); // two runs fill n=8 exactly
        spec.seq_count = 3;
        assert!(generate(&spec).is_err());
    }
}
