mod common;

use proptest::prelude::*;
use rsuloc::ekf::model::{StateMat, StateVec};
use rsuloc::ekf::{predict, update, update_smooth, DelayOutcome, EkfConfig, EkfState, Filter};
use rsuloc::geometry::Pose2D;
use rsuloc::rng;

#[test]
fn jacobian_matches_finite_differences_at_fifty_states() {
    let gap = common::jacobian_fd_gap(&mut rng::stream(3, "jacobian", 0), 50);
    assert!(gap < 1e-6, "gap {gap}");
}

#[test]
fn thirty_ms_late_fix_equals_on_time_fix() {
    let gap = common::single_delay_gap();
    assert!(gap < 1e-9, "gap {gap}");
}

#[test]
fn delayed_stream_ends_where_on_time_stream_ends() {
    for delay in [0.01, 0.03, 0.1] {
        let gap = common::stream_delay_gap(delay);
        assert!(gap < 1e-6, "delay {delay}: gap {gap}");
    }
}

#[test]
fn stale_fix_is_rejected_and_counted() {
    let cfg = EkfConfig::default();
    let mut f = Filter::new(cfg, EkfState::from_pose(0.0, &Pose2D::new(0.0, 0.0, 0.0), 8.0, [0.1; 5]));
    for k in 1..=150 {
        f.advance_to(k as f64 * cfg.dt()).unwrap();
    }
    let before = f.state().clone();
    let stale = common::rsu_fix(0.5, 0.0, f.now() - 2.0 * cfg.history_horizon);
    assert_eq!(f.update_delayed(&stale).unwrap(), DelayOutcome::Rejected);
    assert_eq!(f.rejected(), 1);
    assert_eq!(f.state(), &before);
}

#[test]
fn smoothing_moves_less_per_tick_than_a_full_update() {
    let s = EkfState::from_pose(0.0, &Pose2D::new(0.0, 0.0, 0.0), 0.0, [0.3, 0.3, 0.05, 0.5, 0.1]);
    let m = common::rsu_fix(0.4, -0.2, 0.0);
    let full = update(&s, &m, &EkfConfig::default()).unwrap();
    let parts = update_smooth(&s, &m, 4).unwrap();
    let step = |a: &EkfState, b: &EkfState| (a.mean[0] - b.mean[0]).hypot(a.mean[1] - b.mean[1]);
    let first = step(&s, &parts[0]);
    assert!(first < step(&s, &full));
    let mut prev = s.clone();
    for p in &parts {
        // each partial lands closer to the fix on the observed axes
        assert!((p.mean[0] - 0.4).abs() < (prev.mean[0] - 0.4).abs());
        assert!((p.mean[1] + 0.2).abs() < (prev.mean[1] + 0.2).abs());
        prev = p.clone();
    }
    assert!((parts[3].mean - full.mean).abs().max() < 1e-9);
}

fn spd_state() -> impl Strategy<Value = EkfState> {
    (
        prop::array::uniform5(-5.0..5.0f64),
        prop::array::uniform5(0.01..1.0f64),
        prop::array::uniform5(-0.5..0.5f64),
    )
        .prop_map(|(m, d, off)| {
            let mut l = StateMat::from_diagonal(&StateVec::from(d));
            for i in 1..5 {
                l[(i, i - 1)] = off[i] * d[i];
            }
            EkfState::new(0.0, StateVec::from(m), l * l.transpose())
        })
}

proptest! {
    #[test]
    fn covariance_stays_spd(s in spd_state(), dt in 0.005..0.2f64, x in -5.0..5.0f64, y in -5.0..5.0f64, yaw in -3.0..3.0f64) {
        let cfg = EkfConfig::default();
        let p = predict(&s, dt, &cfg);
        prop_assert!(p.is_positive_definite());
        let u = update(&p, &common::ndt_fix(x, y, yaw, p.t), &cfg).unwrap();
        prop_assert!(u.is_positive_definite());
        let r = update(&u, &common::rsu_fix(x, y, p.t), &cfg).unwrap();
        prop_assert!(r.is_positive_definite());
        prop_assert!(r.mean[2].abs() <= std::f64::consts::PI);
    }
}
