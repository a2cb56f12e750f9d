use thunder_core::analysis::{band_fractions, dominant_frequency, spectral_centroid};
use thunder_core::dsp::CONTROL_BLOCK;
use thunder_core::engine::SubmodelId;
use thunder_core::submodels::{
    build_afterimage, build_deepener, build_multistrike, build_rumbler, local_frames, plan_strikes, SourceKind,
};
use thunder_core::{Preset, RenderConfig, Signal, ThunderGraph, ThunderParams, EPSILON, SAMPLE_RATE};

const SR: f64 = SAMPLE_RATE as f64;

fn params(distance: f64) -> ThunderParams {
    ThunderParams {
        distance,
        initial_strike: 0.8,
        rumble: 0.6,
        growl: 0.4,
        ..Default::default()
    }
}

type Builder = fn(&ThunderParams, &RenderConfig) -> thunder_core::Result<Signal>;

fn builders() -> [(SubmodelId, Builder); 4] {
    [
        (SubmodelId::MultiStrike, build_multistrike),
        (SubmodelId::Rumbler, build_rumbler),
        (SubmodelId::Afterimage, build_afterimage),
        (SubmodelId::Deepener, build_deepener),
    ]
}

/// Seeds whose plan opens with a noise-driven or densely populated strike, so
/// the strike sub-model is guaranteed to sound.
fn audible_strike_seed(from: u64) -> u64 {
    (from..)
        .find(|&s| {
            let plan = plan_strikes(s);
            plan.strikes.iter().any(|e| e.source == SourceKind::Noise) || plan.strikes.iter().all(|e| e.r < 0.5)
        })
        .unwrap()
}

#[test]
fn every_submodel_is_silent_before_the_distance_delay() {
    let p = params(800.0);
    let d = (800.0 / 343.0 * SR).round() as usize;
    for seed in [1, 2, 3] {
        let cfg = RenderConfig::with_seed(audible_strike_seed(seed));
        for (id, build) in builders() {
            let s = build(&p, &cfg).unwrap();
            assert_eq!(s.len(), d + local_frames(), "{}", id.name());
            assert!(s.samples()[..d].iter().all(|&x| x == 0.0), "{} leaks before d", id.name());
            assert!(s.samples()[d..].iter().any(|&x| x != 0.0), "{} is silent", id.name());
        }
    }
}

#[test]
fn zero_parameter_silences_only_its_submodels() {
    let cfg = RenderConfig::with_seed(audible_strike_seed(10));
    let cases: [(&str, ThunderParams, &[SubmodelId]); 3] = [
        (
            "initial_strike",
            ThunderParams { initial_strike: 0.0, ..params(0.0) },
            &[SubmodelId::MultiStrike, SubmodelId::Afterimage],
        ),
        ("rumble", ThunderParams { rumble: 0.0, ..params(0.0) }, &[SubmodelId::Rumbler]),
        ("growl", ThunderParams { growl: 0.0, ..params(0.0) }, &[SubmodelId::Deepener]),
    ];
    for (name, p, silenced) in cases {
        for (id, build) in builders() {
            let s = build(&p, &cfg).unwrap();
            let silent = s.samples().iter().all(|&x| x == 0.0);
            assert_eq!(silent, silenced.contains(&id), "{name}=0 and {}", id.name());
        }
    }
}

#[test]
fn raising_initial_strike_raises_strike_peak() {
    for seed in [audible_strike_seed(20), audible_strike_seed(40), audible_strike_seed(60)] {
        let cfg = RenderConfig::with_seed(seed);
        let peaks: Vec<f64> = [0.1, 0.3, 0.5, 0.7, 0.9, 1.0]
            .iter()
            .map(|&v| {
                let p = ThunderParams { initial_strike: v, ..params(0.0) };
                ThunderGraph::build(&p, &cfg).unwrap().render_wet(SubmodelId::MultiStrike).peak()
            })
            .collect();
        assert!(peaks.windows(2).all(|w| w[1] > w[0]), "seed {seed}: {peaks:?}");
    }
}

#[test]
fn envelopes_land_on_their_terminals() {
    let cfg = RenderConfig::with_seed(4);
    let g = ThunderGraph::build(&params(343.0), &cfg).unwrap();
    let cases = [
        (SubmodelId::Rumbler, g.rumbler.envelope, 9.0, EPSILON),
        (SubmodelId::Afterimage, g.afterimage.envelope, 14.0, EPSILON),
        (SubmodelId::Deepener, g.deepener.envelope, 18.5, 0.0),
    ];
    for (id, env, secs, terminal) in cases {
        assert_eq!(env.period.end, secs, "{}", id.name());
        assert_eq!(env.terminal(), terminal);
        assert!((g.envelope_end_secs(id) - (1.0 + secs)).abs() < 1e-12);
        let end = (secs * SR).round() as usize;
        let trace = env.trace(0.0, end + 2 * CONTROL_BLOCK, SAMPLE_RATE);
        let block_before = end - CONTROL_BLOCK;
        assert!(trace[block_before] > terminal, "{} reached early", id.name());
        for (i, v) in trace[end..].iter().enumerate() {
            assert!((v - terminal).abs() <= 1e-12, "{} at +{i}: {v}", id.name());
        }
    }
}

#[test]
fn rendered_deepener_is_exactly_silent_after_its_envelope() {
    let g = ThunderGraph::build(&params(0.0), &RenderConfig::with_seed(8)).unwrap();
    let y = g.render_dry(SubmodelId::Deepener);
    let end = (18.5 * SR).round() as usize;
    assert!(y[end + CONTROL_BLOCK..].iter().all(|&x| x == 0.0));
    assert!(y[end - 4 * CONTROL_BLOCK..end].iter().any(|&x| x != 0.0));
}

#[test]
fn rendered_rumbler_and_afterimage_settle_at_epsilon() {
    let g = ThunderGraph::build(&params(0.0), &RenderConfig::with_seed(8)).unwrap();
    let taps = g.rumbler.render_taps(local_frames());
    let end = (9.0 * SR).round() as usize;
    assert!(taps.gain[end..].iter().all(|&x| (x - EPSILON).abs() < 1e-15));
    for i in end..taps.output.len() {
        let bound = EPSILON * 0.5 * (taps.rn1[i].abs() + taps.rn2_scaled[i].abs());
        assert!(taps.output[i].abs() <= bound + 1e-18);
    }
    let y = g.render_dry(SubmodelId::Afterimage);
    let end = (14.0 * SR).round() as usize;
    let late = y[end..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let early = y[..end / 4].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(late <= EPSILON * 2.0 && late < early * 1e-3, "late {late} early {early}");
}

#[test]
fn afterimage_energy_centres_near_its_bandpass() {
    for seed in [1, 2, 3] {
        let p = ThunderParams { rumble: 0.0, growl: 0.0, ..params(0.0) };
        let s = build_afterimage(&p, &RenderConfig::with_seed(seed)).unwrap();
        let c = spectral_centroid(&s);
        assert!((150.0..=700.0).contains(&c), "seed {seed}: centroid {c}");
    }
}

#[test]
fn deepener_energy_sits_below_two_hundred_hertz() {
    for preset in [Preset::V1, Preset::V2] {
        let p = ThunderParams { preset, ..params(0.0) };
        let s = build_deepener(&p, &RenderConfig::with_seed(5)).unwrap();
        let low = band_fractions(&s).low;
        assert!(low >= 0.85, "{preset}: {low}");
    }
}

#[test]
fn strike_dominant_frequency_lies_in_its_band() {
    for seed in [1, 2, 3, 4, 5].map(audible_strike_seed) {
        let s = build_multistrike(&params(0.0), &RenderConfig::with_seed(seed)).unwrap();
        let f = dominant_frequency(&s, 50.0);
        assert!((80.0..=1300.0).contains(&f), "seed {seed}: {f} Hz");
    }
}

#[test]
fn v1_strike_sits_twenty_hertz_above_v2() {
    let cfg = RenderConfig::with_seed(11);
    let v1 = ThunderGraph::build(&ThunderParams { preset: Preset::V1, ..params(0.0) }, &cfg).unwrap();
    let v2 = ThunderGraph::build(&ThunderParams { preset: Preset::V2, ..params(0.0) }, &cfg).unwrap();
    for (a, b) in v1.strike.voices.iter().zip(&v2.strike.voices) {
        let (fa, fb) = (a.cutoff.cutoff_at(a.envelope.period.start), b.cutoff.cutoff_at(b.envelope.period.start));
        assert!((fa - fb - 20.0).abs() < 1e-9);
        assert_eq!((a.filter_q, b.filter_q), (10.0, 7.0));
    }
}
