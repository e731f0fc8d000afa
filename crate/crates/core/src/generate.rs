//! Seeded random profile generation for the falsification harness and the
//! CLI. All randomness flows from the single 64-bit seed; identical configs
//! produce identical profile streams.

use crate::profile::Profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// What kind of profiles to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileMode {
    /// Outcomes uniform in (0.01, 0.99), complements stored exactly.
    Interior,
    /// Outcomes drawn from {0, 1/2, 1} per pair (not necessarily transitive).
    Crisp,
    /// Random rank vectors with ties.
    WeakOrder,
    /// Random permutations.
    LinearOrder,
}

/// Reproducible profile generator: ranges for n and m, a mode, and a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub mode: ProfileMode,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(
        n_range: (usize, usize),
        m_range: (usize, usize),
        mode: ProfileMode,
        seed: u64,
    ) -> Self {
        assert!(n_range.0 >= 2 && n_range.0 <= n_range.1);
        assert!(m_range.0 >= 1 && m_range.0 <= m_range.1);
        GeneratorConfig {
            n_min: n_range.0,
            n_max: n_range.1,
            m_min: m_range.0,
            m_max: m_range.1,
            mode,
            seed,
        }
    }

    /// Fixed-size convenience constructor.
    pub fn fixed(n: usize, m: usize, mode: ProfileMode, seed: u64) -> Self {
        Self::new((n, n), (m, m), mode, seed)
    }

    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }

    /// Draws the next profile from an explicit generator state.
    pub fn sample(&self, rng: &mut ChaCha12Rng) -> Profile<f64> {
        let n = rng.gen_range(self.n_min..=self.n_max);
        let m = rng.gen_range(self.m_min..=self.m_max);
        sample_profile(rng, n, m, self.mode)
    }

    /// First profile of the stream; handy for single-draw call sites.
    pub fn sample_one(&self) -> Profile<f64> {
        self.sample(&mut self.rng())
    }

    /// The deterministic profile stream.
    pub fn stream(&self) -> impl Iterator<Item = Profile<f64>> + '_ {
        let mut rng = self.rng();
        std::iter::repeat_with(move || self.sample(&mut rng))
    }
}

/// Draws one profile of the given size and mode from the generator state.
pub fn sample_profile(
    rng: &mut ChaCha12Rng,
    n: usize,
    m: usize,
    mode: ProfileMode,
) -> Profile<f64> {
    match mode {
        ProfileMode::Interior => {
            let mut matrices = Vec::with_capacity(m);
            for _ in 0..m {
                let mut mat = vec![0.0f64; n * n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let u: f64 = rng.gen_range(0.01..0.99);
                        mat[i * n + j] = u;
                        mat[j * n + i] = 1.0 - u;
                    }
                }
                matrices.push(mat);
            }
            Profile::validate(n, matrices).expect("generated interior profile is valid")
        }
        ProfileMode::Crisp => {
            let mut matrices = Vec::with_capacity(m);
            for _ in 0..m {
                let mut mat = vec![0.0f64; n * n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let u = match rng.gen_range(0u8..3) {
                            0 => 0.0,
                            1 => 0.5,
                            _ => 1.0,
                        };
                        mat[i * n + j] = u;
                        mat[j * n + i] = 1.0 - u;
                    }
                }
                matrices.push(mat);
            }
            Profile::validate(n, matrices).expect("generated crisp profile is valid")
        }
        ProfileMode::WeakOrder => {
            let ranks: Vec<Vec<u32>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(1..=n as u32)).collect())
                .collect();
            Profile::from_weak_orders(n, &ranks).expect("generated ranks are valid")
        }
        ProfileMode::LinearOrder => {
            let orders: Vec<Vec<usize>> = (0..m).map(|_| random_permutation(rng, n)).collect();
            Profile::from_linear_orders(n, &orders).expect("generated orders are valid")
        }
    }
}

/// Fisher–Yates shuffle of `0..n`.
pub fn random_permutation(rng: &mut ChaCha12Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// A profile whose aggregate comparisons are exactly balanced
/// (`sum_p a_ij^p = sum_p a_ji^p` for all pairs): random matrices paired with
/// their reverses, plus one all-ties matrix when `m` is odd.
pub fn sample_balanced_profile(rng: &mut ChaCha12Rng, n: usize, m: usize) -> Profile<f64> {
    let mut matrices: Vec<Vec<f64>> = Vec::with_capacity(m);
    let half_count = m / 2;
    for _ in 0..half_count {
        let mut mat = vec![0.0f64; n * n];
        let mut rev = vec![0.0f64; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let u: f64 = rng.gen_range(0.01..0.99);
                mat[i * n + j] = u;
                mat[j * n + i] = 1.0 - u;
                rev[i * n + j] = 1.0 - u;
                rev[j * n + i] = u;
            }
        }
        matrices.push(mat);
        matrices.push(rev);
    }
    if m % 2 == 1 {
        let mut ties = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    ties[i * n + j] = 0.5;
                }
            }
        }
        matrices.push(ties);
    }
    Profile::validate(n, matrices).expect("balanced profile is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let cfg = GeneratorConfig::new((2, 5), (1, 4), ProfileMode::Interior, 42);
        let a: Vec<_> = cfg.stream().take(10).collect();
        let b: Vec<_> = cfg.stream().take(10).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn crisp_mode_values() {
        let cfg = GeneratorConfig::new((3, 4), (2, 3), ProfileMode::Crisp, 7);
        for p in cfg.stream().take(20) {
            for q in 0..p.individuals() {
                for i in 0..p.alternatives() {
                    for j in 0..p.alternatives() {
                        if i != j {
                            let v = p.outcome(q, i, j);
                            assert!(v == 0.0 || v == 0.5 || v == 1.0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn linear_order_mode_passes_point_preconditions() {
        let cfg = GeneratorConfig::new((3, 5), (1, 3), ProfileMode::LinearOrder, 99);
        for p in cfg.stream().take(20) {
            assert!(p.as_linear_orders().is_ok());
        }
    }

    #[test]
    fn balanced_profiles_balance_exactly() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for m in 1..=5 {
            let p = sample_balanced_profile(&mut rng, 4, m);
            assert_eq!(p.individuals(), m);
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert_eq!(p.aggregate(i, j), p.aggregate(j, i));
                    }
                }
            }
        }
    }
}
