// Fused error under a small grid of channel delays and loss rates. Pass a
// directory as the first argument to also write `sweep.csv` there.

use std::path::{Path, PathBuf};

use rsuloc::harness::{run_sweep, ScenarioConfig};
use rsuloc::scan::ModelId;

pub fn run_example() -> rsuloc::Result<()> {
    sweep(None)
}

fn sweep(out: Option<&Path>) -> rsuloc::Result<()> {
    let mut cfg = ScenarioConfig::default_scenario(ModelId::Vlp32c);
    // the stretch around the pole is enough for a quick look
    cfg.vehicle.start_offset = 90.0;
    cfg.duration = Some(70.0 / cfg.road.speed);
    let delays = [0.0, 0.03];
    let losses = [0.0, 0.2];
    let report = run_sweep(&cfg, &[ModelId::Vlp16, ModelId::Vlp32c], &delays, &losses, 2, out)?;

    println!("sensor  delay_ms  loss   fused_mle  vs_ideal");
    for c in &report.cells {
        let d = report.degradation(c.sensor, c.delay, c.loss).unwrap_or(f64::NAN);
        println!(
            "{:<7} {:>8.0}  {:>4.1}   {:.4}     {:+.1}%",
            c.sensor.to_string(),
            c.delay * 1000.0,
            c.loss,
            c.region.fused.mean,
            100.0 * d
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    sweep(out.as_deref())
}
