use proptest::prelude::*;
use subdiv_cli::config::ExperimentConfig;
use subdiv_cli::data::{AtomData, DataFile, GeneratedFile, GeneratorSpec, MeasureData, PairData};

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        (-1000i32..1000).prop_map(f64::from),
        Just(0.0),
        Just(-0.0),
        Just(1e-300),
        Just(f64::MAX),
    ]
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), dim)
}

fn data_file() -> impl Strategy<Value = DataFile> {
    (1usize..4, any::<bool>()).prop_flat_map(|(dim, closed)| {
        prop_oneof![
            prop::collection::vec(vector(dim), 1..6).prop_map(move |points| DataFile::Euclidean { dim, closed, points }),
            prop::collection::vec(vector(dim), 1..6).prop_map(move |points| DataFile::Sphere { dim, closed, points }),
            prop::collection::vec((vector(dim), vector(dim)).prop_map(|(p, v)| PairData { p, v }), 1..6)
                .prop_map(move |pairs| DataFile::Hermite { dim, closed, pairs }),
            prop::collection::vec(prop::collection::vec(vector(dim), 1..4), 1..5)
                .prop_map(move |sets| DataFile::Sets { dim, closed, sets }),
            prop::collection::vec(
                prop::collection::vec((coord(), 0.0..1.0f64).prop_map(|(x, w)| AtomData { x, w }), 1..4)
                    .prop_map(|atoms| MeasureData { atoms }),
                1..5
            )
            .prop_map(move |measures| DataFile::Wasserstein { closed, measures }),
        ]
    })
}

fn roundtrip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(v: &T) {
    let once = serde_json::to_string_pretty(v).unwrap();
    let back: T = serde_json::from_str(&once).unwrap();
    assert_eq!(&back, v);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), once);
    let compact = serde_json::to_string(v).unwrap();
    let back: T = serde_json::from_str(&compact).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), compact);
}

proptest! {
    #[test]
    fn data_files_roundtrip_byte_identical(d in data_file()) {
        roundtrip(&d);
    }

    #[test]
    fn generated_files_roundtrip_byte_identical(seed in any::<u64>(), n in 2usize..12, which in 0usize..6) {
        let spec = match which {
            0 => GeneratorSpec::RandomWalk { seed, n, dim: 3, step: 0.7, closed: false },
            1 => GeneratorSpec::SphereWalk { seed, n, scale: 0.3, turn: 0.5 },
            2 => GeneratorSpec::GaussianMixture { seed, n, atoms: 3 },
            3 => GeneratorSpec::PointCloudTube { seed, n, size: 3, dim: 2, radius: 0.5 },
            4 => GeneratorSpec::HermiteTurning { seed, n, delta: 0.2 },
            _ => GeneratorSpec::Circle { seed, n, radius: 2.0, step: Some(0.3), closed: false },
        };
        let g: GeneratedFile = spec.generate().unwrap();
        roundtrip(&g);
        // A generated file also parses as plain data.
        let text = serde_json::to_string(&g).unwrap();
        let plain: DataFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(plain, g.data);
    }
}

#[test]
fn configs_roundtrip() {
    let text = r#"{"space": {"id": "hermite", "dim": 2, "c": 0.4}, "scheme": {"id": "hermite-bezier"},
        "levels": 2, "data": {"generator": {"id": "circle", "seed": 1, "n": 5}},
        "analyses": [{"kind": "proximity1", "against": {"id": "hermite-naive"}, "scales": [0.2, 0.1],
                      "bound": {"id": "power", "constant": 0.5, "exponent": 2}}]}"#;
    let cfg = ExperimentConfig::parse(text).unwrap();
    roundtrip(&cfg);
}
