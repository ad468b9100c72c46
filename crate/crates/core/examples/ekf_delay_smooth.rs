// A roadside fix that arrives 30 ms late is applied at its sensing time and
// the filter is replayed forward. Spread over four ticks, it lands in the
// same place as an on-time fix, without a jump.

use rsuloc::covariance::{CovarianceSpec, RSU_SIGMA_VLP32C};
use rsuloc::ekf::{EkfConfig, EkfState, Filter};
use rsuloc::geometry::Pose2D;
use rsuloc::measurement::{PoseMeasurement, Source};

fn fix(stamp: f64) -> rsuloc::Result<PoseMeasurement> {
    PoseMeasurement::new(
        Pose2D::new(0.30 + 8.0 * stamp, 0.05, 0.0),
        CovarianceSpec::planar(RSU_SIGMA_VLP32C)?,
        stamp,
        Source::Rsu,
    )
}

pub fn run_example() -> rsuloc::Result<()> {
    let cfg = EkfConfig::default();
    let dt = cfg.dt();
    let init = EkfState::from_pose(0.0, &Pose2D::new(0.0, 0.0, 0.0), 8.0, [0.2, 0.2, 0.02, 0.5, 0.1]);
    let mut on_time = Filter::new(cfg, init.clone());
    let mut late = Filter::new(cfg, init);

    let stamp = 5.0 * dt;
    let arrival = 7.0 * dt;
    for k in 1..=12 {
        let t = k as f64 * dt;
        on_time.advance_to(t)?;
        late.advance_to(t)?;
        if (t - stamp).abs() < 1e-9 {
            on_time.submit(fix(stamp)?);
        }
        if (t - arrival).abs() < 1e-9 {
            late.submit(fix(stamp)?);
        }
        on_time.apply_pending()?;
        late.apply_pending()?;
        println!(
            "t {:.2}  on-time x {:.4}  late x {:.4}",
            t,
            on_time.state().mean[0],
            late.state().mean[0]
        );
    }
    let gap = (on_time.state().mean - late.state().mean).abs().max();
    println!("largest state difference after both finish: {gap:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
