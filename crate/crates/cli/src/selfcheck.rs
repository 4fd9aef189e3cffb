//! Invariant checks on randomly sampled channels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use secmac::dm::{
    conditional_mi, enumerate_frontier, inner_bound_point, AuxCards, BoundKind, DiscreteMemorylessChannel,
    InnerAuxDistribution, JointTable, LatticeSpec,
};
use secmac::gaussian::{
    lower_bound_with, upper_bound_with, BoundSettings, Conference, GaussianMacChannel, HelperNoiseCredit,
};

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn pmf(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianMacChannel<f64> {
    GaussianMacChannel::with_gains(
        rng.gen_range(0.0..2.0),
        rng.gen_range(0.0..2.0),
        rng.gen_range(0.0..2.0),
        rng.gen_range(0.0..2.0),
    )
    .with_powers(rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0))
    .with_noise(rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0))
    .with_c12(Conference::Finite(rng.gen_range(0.0..2.0)))
}

fn random_dm(rng: &mut ChaCha8Rng) -> DiscreteMemorylessChannel<f64> {
    let law: Vec<f64> = (0..4).flat_map(|_| pmf(rng, 4)).collect();
    DiscreteMemorylessChannel::new(2, 2, 2, 2, law).expect("sampled rows are pmfs")
}

/// Runs every check; returns the failure descriptions.
pub fn run(seed: u64, credit: HelperNoiseCredit) -> anyhow::Result<(usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally {
        checks: 0,
        failures: Vec::new(),
    };
    let settings = BoundSettings {
        coarse_steps: 41,
        refine_rounds: 3,
        noise_credit: credit,
        ..BoundSettings::default()
    };

    for i in 0..12 {
        let ch = random_gaussian(&mut rng);
        let upper = upper_bound_with(&ch, &settings)?.value;
        let lower = lower_bound_with(&ch, &settings)?.value;
        t.check(lower <= upper + 1e-3, || {
            format!("gaussian #{i}: lower {lower} > upper {upper}")
        });
        let more = lower_bound_with(&ch.with_c12(ch.c12.plus(1.0)), &settings)?.value;
        t.check(more >= lower - 1e-9, || {
            format!("gaussian #{i}: lower decreases in c12")
        });
        let c = rng.gen_range(0.5..3.0);
        let scaled = GaussianMacChannel {
            h1d: ch.h1d * c,
            h2d: ch.h2d * c,
            h1e: ch.h1e * c,
            h2e: ch.h2e * c,
            sigma1_sq: ch.sigma1_sq * c * c,
            sigma2_sq: ch.sigma2_sq * c * c,
            ..ch
        };
        let su = upper_bound_with(&scaled, &settings)?.value;
        t.check((su - upper).abs() < 1e-9, || {
            format!("gaussian #{i}: upper not SNR invariant")
        });
    }

    for i in 0..200 {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=4)).collect();
        let size = dims.iter().product();
        let j = JointTable::new(dims, pmf(&mut rng, size))?;
        let whole = conditional_mi(&j, &[0, 1], &[2], &[])?;
        let split = conditional_mi(&j, &[0], &[2], &[])? + conditional_mi(&j, &[1], &[2], &[0])?;
        t.check((whole - split).abs() < 1e-12, || {
            format!("joint #{i}: chain rule off by {}", whole - split)
        });
    }

    let lattice = LatticeSpec::new(4);
    for i in 0..4 {
        let ch = random_dm(&mut rng);
        let c12 = Conference::Finite(rng.gen_range(0.0..1.0));
        let cards = AuxCards::identity(&ch, 1, 2);
        let d = InnerAuxDistribution::uniform(&cards, 2, 2);
        let p = inner_bound_point(&d, &ch, c12, credit)?;
        t.check(p.re <= p.r + 1e-12, || format!("dm #{i}: re > r"));
        let inner = enumerate_frontier(&ch, c12, BoundKind::Inner, &cards, &lattice, credit)?;
        let outer = enumerate_frontier(
            &ch,
            c12,
            BoundKind::Outer,
            &AuxCards::identity(&ch, 2, 1),
            &lattice,
            credit,
        )?;
        let tol = 2.0 / lattice.denominator as f64;
        for p in &inner.points {
            let covered = outer.points.iter().any(|q| q.r >= p.r - tol && q.re >= p.re - tol);
            t.check(covered, || format!("dm #{i}: inner point {p:?} outside outer"));
        }
    }
    Ok((t.checks, t.failures))
}
