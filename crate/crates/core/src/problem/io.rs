use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{PwtError, Result};

use super::{Instance, Item};

pub const INSTANCE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    n: usize,
    m: usize,
    distances: Vec<f64>,
    renting_rate: f64,
    v_min: f64,
    v_max: f64,
    capacity: u64,
    items: Vec<ItemRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemRecord {
    profit: u64,
    weight: u64,
    city: usize,
}

impl Instance {
    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            version: INSTANCE_FORMAT_VERSION,
            n: self.n(),
            m: self.legs(),
            distances: self.distances().to_vec(),
            renting_rate: self.renting_rate(),
            v_min: self.v_min(),
            v_max: self.v_max(),
            capacity: self.capacity(),
            items: self
                .items()
                .iter()
                .zip(self.cities())
                .map(|(it, &city)| ItemRecord {
                    profit: it.profit,
                    weight: it.weight,
                    city,
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if file.version != INSTANCE_FORMAT_VERSION {
            return Err(PwtError::InvalidInstance(format!(
                "unsupported format version {}",
                file.version
            )));
        }
        if file.n != file.items.len() {
            return Err(PwtError::InvalidInstance(format!(
                "n = {} but {} items listed",
                file.n,
                file.items.len()
            )));
        }
        if file.m != file.distances.len() {
            return Err(PwtError::InvalidInstance(format!(
                "m = {} but {} distances listed",
                file.m,
                file.distances.len()
            )));
        }
        let cities = file.items.iter().map(|r| r.city).collect();
        let items = file
            .items
            .iter()
            .map(|r| Item::new(r.profit, r.weight))
            .collect();
        Instance::new(
            items,
            cities,
            file.distances,
            file.renting_rate,
            file.v_min,
            file.v_max,
            file.capacity,
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| PwtError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json()?;
        text.push('\n');
        fs::write(path, text).map_err(|e| PwtError::io(path, e))
    }
}
