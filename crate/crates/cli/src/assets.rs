use std::fs;
use std::path::{Path, PathBuf};

use dpo_core::assets;

use crate::error::{CliError, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Bundled data files, optionally replaced by files under a directory
/// with the same layout.
pub struct Assets {
    dir: Option<PathBuf>,
}

impl Assets {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Assets { dir }
    }

    fn get(&self, rel: &str, bundled: &'static str) -> Result<String> {
        match &self.dir {
            Some(d) => read(&d.join(rel)),
            None => Ok(bundled.to_string()),
        }
    }

    pub fn formose(&self) -> Result<Vec<(String, String)>> {
        [
            ("formose/keto_enol.gml", assets::KETO_ENOL),
            ("formose/keto_enol_reverse.gml", assets::KETO_ENOL_REVERSE),
            ("formose/aldol.gml", assets::ALDOL),
            ("formose/aldol_reverse.gml", assets::ALDOL_REVERSE),
        ]
        .into_iter()
        .map(|(rel, text)| Ok((rel.to_string(), self.get(rel, text)?)))
        .collect()
    }

    pub fn life(&self) -> Result<String> {
        self.get("life/rules.gml", assets::LIFE)
    }

    pub fn wye_to_delta(&self) -> Result<String> {
        self.get("ydelta/wye_to_delta.gml", assets::WYE_TO_DELTA)
    }

    pub fn delta_to_wye(&self) -> Result<String> {
        self.get("ydelta/delta_to_wye.gml", assets::DELTA_TO_WYE)
    }

    pub fn groups(&self) -> Result<String> {
        self.get("groups.gml", assets::GROUPS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directory_overrides_bundled_files() {
        let dir = tempfile::TempDir::new().unwrap();
        fs::create_dir(dir.path().join("ydelta")).unwrap();
        fs::write(dir.path().join("ydelta/wye_to_delta.gml"), "rule [ ]").unwrap();
        let over = Assets::new(Some(dir.path().to_path_buf()));
        assert_eq!(over.wye_to_delta().unwrap(), "rule [ ]");
        assert!(matches!(over.life(), Err(CliError::Io { .. })));
        let bundled = Assets::new(None);
        assert_eq!(bundled.life().unwrap(), assets::LIFE);
        assert_eq!(bundled.formose().unwrap().len(), 4);
    }
}
