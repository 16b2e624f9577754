use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    sample_route, simulate_trace, DistanceTrace, FleetConfig, NoiseConfig, SimError, VehicleRoute,
};
use crate::geometry::Target;

/// Each sensor owns three ChaCha streams under the run seed: route, dropouts, slope noise.
///
/// Keying by `seed ^ id` instead would make every seed below `n_s` a permutation
/// of the same fleet.
fn stream(seed: u64, id: usize, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(3 * id as u64 + k);
    rng
}

pub fn route_rng(seed: u64, id: usize) -> ChaCha8Rng {
    stream(seed, id, 0)
}

pub fn noise_rng(seed: u64, id: usize) -> ChaCha8Rng {
    stream(seed, id, 1)
}

pub fn slope_rng(seed: u64, id: usize) -> ChaCha8Rng {
    stream(seed, id, 2)
}

pub fn simulate_fleet<T: Target<f64> + ?Sized>(
    cfg: &FleetConfig,
    noise: &NoiseConfig,
    target: &T,
) -> Result<Vec<DistanceTrace>, SimError> {
    Ok(simulate_fleet_with_routes(cfg, noise, target)?
        .into_iter()
        .map(|(_, t)| t)
        .collect())
}

/// Traces in sensor order. Output does not depend on the thread count.
pub fn simulate_fleet_with_routes<T: Target<f64> + ?Sized>(
    cfg: &FleetConfig,
    noise: &NoiseConfig,
    target: &T,
) -> Result<Vec<(VehicleRoute, DistanceTrace)>, SimError> {
    cfg.validate()?;
    noise.validate()?;
    let step = cfg.v * cfg.dt;
    Ok((0..cfg.n_s)
        .into_par_iter()
        .map(|id| {
            let route = sample_route(
                &cfg.region,
                &cfg.sensor,
                cfg.mode,
                step,
                &mut route_rng(cfg.seed, id),
            );
            let trace =
                simulate_trace(id, &route, cfg, noise, target, &mut noise_rng(cfg.seed, id));
            (route, trace)
        })
        .collect())
}
