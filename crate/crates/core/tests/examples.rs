#[allow(dead_code)]
mod scan_synthesis {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scan_synthesis.rs"));
}

#[allow(dead_code)]
mod background_filter {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/background_filter.rs"));
}

#[allow(dead_code)]
mod lshape_refinement {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lshape_refinement.rs"));
}

#[allow(dead_code)]
mod mirror_cutoff {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mirror_cutoff.rs"));
}

#[allow(dead_code)]
mod channel_model {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/channel_model.rs"));
}

#[allow(dead_code)]
mod ekf_delay_smooth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ekf_delay_smooth.rs"));
}

#[allow(dead_code)]
mod run_scenario {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/run_scenario.rs"));
}

#[allow(dead_code)]
mod network_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/network_sweep.rs"));
}

#[test]
fn scan_synthesis_runs() {
    scan_synthesis::run_example().expect("scan_synthesis example");
}

#[test]
fn background_filter_runs() {
    background_filter::run_example().expect("background_filter example");
}

#[test]
fn lshape_refinement_runs() {
    lshape_refinement::run_example().expect("lshape_refinement example");
}

#[test]
fn mirror_cutoff_runs() {
    mirror_cutoff::run_example().expect("mirror_cutoff example");
}

#[test]
fn channel_model_runs() {
    channel_model::run_example().expect("channel_model example");
}

#[test]
fn ekf_delay_smooth_runs() {
    ekf_delay_smooth::run_example().expect("ekf_delay_smooth example");
}

#[test]
fn run_scenario_runs() {
    run_scenario::run_example().expect("run_scenario example");
}

#[test]
fn network_sweep_runs() {
    network_sweep::run_example().expect("network_sweep example");
}
