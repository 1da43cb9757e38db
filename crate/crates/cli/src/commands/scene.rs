use std::io::Write;

use dronecsa::mapping::EvidenceClass;
use dronecsa::mission::{SceneTruth, TruthEvidence, TruthMarker};
use dronecsa::Point3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::say;
use crate::error::CliError;
use crate::manifest::Outputs;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSceneConfig {
    pub preset: ScenePreset,
}

impl GenSceneConfig {
    pub fn seed(&self) -> Option<u64> {
        match self.preset {
            ScenePreset::Demo => None,
            ScenePreset::Random { seed, .. } => Some(seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScenePreset {
    Demo,
    Random { seed: u64, room_size_m: f64, items: usize },
}

/// Demo layout scaled to `side`, with `items` floor items placed uniformly
/// at least 0.2 m from the walls.
pub fn random_scene(seed: u64, side: f64, items: usize) -> SceneTruth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let demo = SceneTruth::demo();
    let h = side / 2.0;
    let eye = demo.markers[0].position.y;
    let walls = [(side, h), (h, side), (0.0, h), (h, 0.0)];
    let markers = walls
        .iter()
        .zip(&demo.markers)
        .map(|(&(x, z), m)| TruthMarker { id: m.id, position: Point3::new(x, eye, z) })
        .collect();
    let evidence = (0..items)
        .map(|i| TruthEvidence {
            class: EvidenceClass::ALL[i % EvidenceClass::ALL.len()],
            position: Point3::new(rng.random_range(0.2..side - 0.2), 0.0, rng.random_range(0.2..side - 0.2)),
        })
        .collect();
    SceneTruth { units: "m".into(), drone_start: Point3::new(h, 0.0, h), markers, evidence }
}

pub fn gen_scene(
    cfg: &GenSceneConfig,
    outputs: &mut Outputs,
    stdout: &mut dyn Write,
) -> Result<Option<CliError>, CliError> {
    let scene = match cfg.preset {
        ScenePreset::Demo => SceneTruth::demo(),
        ScenePreset::Random { seed, room_size_m, items } => random_scene(seed, room_size_m, items),
    };
    outputs.write_json("scene.json", &scene)?;
    say(stdout, format!("scene.json  {} markers, {} evidence items", scene.markers.len(), scene.evidence.len()))?;
    Ok(None)
}
