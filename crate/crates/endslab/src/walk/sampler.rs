use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::GroupElement;
use crate::util::derive_seed;
use crate::walk::measure::StepDistribution;

/// A sampled trajectory omega_0 = 1, ..., omega_N with its seed record.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub positions: Vec<GroupElement>,
    pub master_seed: u64,
    pub walk_index: u64,
}

/// Samples one trajectory of `n_steps` i.i.d. increments. The stream is a
/// pure function of (master seed, walk index), so repeated calls and any
/// worker layout reproduce it bit for bit.
pub fn sample_trajectory(
    mu: &StepDistribution,
    n_steps: u32,
    master_seed: u64,
    walk_index: u64,
) -> Result<Trajectory> {
    let spec = mu.spec();
    let mut rng = ChaCha8Rng::from_seed(derive_seed(master_seed, walk_index));
    let mut positions = Vec::with_capacity(n_steps as usize + 1);
    let mut pos = spec.identity();
    positions.push(pos.clone());
    for _ in 0..n_steps {
        let step = mu.sample(&mut rng);
        pos = spec.multiply(&pos, step)?;
        positions.push(pos.clone());
    }
    Ok(Trajectory {
        positions,
        master_seed,
        walk_index,
    })
}

/// Streams a walk without storing it: `visit(step_index, position)` is called
/// after every increment (step_index = 1..=n_steps).
pub fn walk_visit<F: FnMut(u32, &GroupElement)>(
    mu: &StepDistribution,
    n_steps: u32,
    master_seed: u64,
    walk_index: u64,
    mut visit: F,
) {
    let spec = mu.spec();
    let mut rng = ChaCha8Rng::from_seed(derive_seed(master_seed, walk_index));
    let mut pos = spec.identity();
    for k in 1..=n_steps {
        let step = mu.sample(&mut rng);
        spec.multiply_in_place(&mut pos, step)
            .expect("measure spec matches");
        visit(k, &pos);
    }
}

/// Endpoint of the walk after `n_steps` increments.
pub fn walk_endpoint(
    mu: &StepDistribution,
    n_steps: u32,
    master_seed: u64,
    walk_index: u64,
) -> GroupElement {
    let spec = mu.spec();
    let mut rng = ChaCha8Rng::from_seed(derive_seed(master_seed, walk_index));
    let mut pos = spec.identity();
    for _ in 0..n_steps {
        let step = mu.sample(&mut rng);
        spec.multiply_in_place(&mut pos, step)
            .expect("measure spec matches");
    }
    pos
}
