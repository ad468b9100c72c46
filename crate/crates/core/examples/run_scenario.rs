// One trial of the default scenario with each sensor model: the vehicle
// drives past the pole, and the in-coverage error of the fused estimate is
// compared with onboard localization alone.

use rsuloc::harness::{compute_metrics, run_scenario, ScenarioConfig};
use rsuloc::scan::ModelId;

pub fn run_example() -> rsuloc::Result<()> {
    for model in [ModelId::Vlp16, ModelId::Vlp32c] {
        let cfg = ScenarioConfig::default_scenario(model);
        let baseline = run_scenario(&cfg.without_rsus(), cfg.master_seed)?;
        let fused = run_scenario(&cfg, cfg.master_seed)?;
        let m = compute_metrics(&baseline, &fused, &cfg)?;
        let cov = &m.coverage[0];
        let (lo, hi) = cov.interval.unwrap_or_default();
        let produced: usize = fused.records.iter().map(|r| r.rsu_produced.len()).sum();
        println!(
            "{model}: {produced} roadside fixes over [{lo:.1}, {hi:.1}] m; MLE {:.4} -> {:.4} m ({:.0}% lower); outside {:.4} m",
            cov.mle_baseline,
            cov.mle_fused,
            100.0 * cov.improvement(),
            m.outside.mle_fused
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
