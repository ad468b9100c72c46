// Constant-delay, Bernoulli-loss channel between the roadside unit and the
// vehicle.

use rsuloc::channel::{Channel, ChannelConfig};

pub fn run_example() -> rsuloc::Result<()> {
    for loss in [0.1, 0.2] {
        let cfg = ChannelConfig {
            delay: 0.03,
            loss_prob: loss,
            seed: 42,
        };
        let mut ch = Channel::from_config(cfg);
        let n = 10_000;
        let mut delivered = Vec::new();
        for k in 0..n {
            let t = k as f64 * 0.1;
            ch.send(k, t);
            delivered.extend(ch.drain(t));
        }
        delivered.extend(ch.drain(f64::INFINITY));
        let rate = ch.dropped() as f64 / n as f64;
        let sigma = (loss * (1.0 - loss) / n as f64).sqrt();
        let ordered = delivered.windows(2).all(|w| w[0] < w[1]);
        println!(
            "loss {loss:.1}: dropped {} of {n} ({rate:.4}, {:+.1} sigma), delivered in order: {ordered}",
            ch.dropped(),
            (rate - loss) / sigma
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
