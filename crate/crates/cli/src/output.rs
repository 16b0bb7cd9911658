//! Output directories with provenance headers and all-or-nothing writes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

pub const TOOL: &str = concat!("lon ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Identifies a run: the tool version and a hash of everything that
/// determines its outputs.
#[derive(Clone, Debug)]
pub struct Provenance {
    spec_hash: String,
}

impl Provenance {
    pub fn new(canonical_spec: &str) -> Self {
        Provenance {
            spec_hash: sha256_hex(canonical_spec.as_bytes()),
        }
    }

    /// Header lines for a file derived from one instance.
    pub fn for_seed(&self, seed: u64) -> Vec<String> {
        self.lines(format!("seed: {seed}"))
    }

    /// Header lines for a file that aggregates several seeds.
    pub fn for_seeds(&self, seeds: &[u64]) -> Vec<String> {
        let seeds = match (seeds.first(), seeds.last()) {
            (Some(a), Some(b)) if seeds.windows(2).all(|w| w[1] == w[0] + 1) => {
                format!("seeds: {a}..={b}")
            }
            _ => format!(
                "seeds: {}",
                seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            ),
        };
        self.lines(seeds)
    }

    /// Header lines for files derived from other files rather than seeds.
    pub fn for_inputs(&self) -> Vec<String> {
        self.lines("seed: inherited from inputs".to_string())
    }

    fn lines(&self, seed_line: String) -> Vec<String> {
        vec![
            TOOL.to_string(),
            format!("spec-sha256: {}", self.spec_hash),
            seed_line,
        ]
    }
}

pub fn comment_block(header: &[String]) -> String {
    header.iter().map(|l| format!("# {l}\n")).collect()
}

/// Files written into one directory. Unless [`OutputSet::commit`] is
/// called, dropping the set deletes every file it wrote and any directory
/// it created.
pub struct OutputSet {
    dir: PathBuf,
    created_dir: Option<PathBuf>,
    files: Vec<PathBuf>,
    committed: bool,
}

impl OutputSet {
    pub fn create(dir: &Path) -> Result<Self> {
        let created_dir = dir
            .ancestors()
            .take_while(|p| !p.as_os_str().is_empty() && !p.exists())
            .last()
            .map(Path::to_path_buf);
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(OutputSet {
            dir: dir.to_path_buf(),
            created_dir,
            files: Vec::new(),
            committed: false,
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        self.files.push(path.clone());
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    pub fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.files)
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if let Some(d) = &self.created_dir {
            let _ = fs::remove_dir_all(d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges_are_compressed() {
        let p = Provenance::new("problem=nk N=4 K=1\n");
        assert_eq!(p.for_seeds(&[3, 4, 5])[2], "seeds: 3..=5");
        assert_eq!(p.for_seeds(&[3, 7])[2], "seeds: 3 7");
        assert_eq!(p.for_seed(9)[2], "seed: 9");
        assert_eq!(p.for_seed(9)[1].len(), "spec-sha256: ".len() + 64);
        assert!(p.for_seed(9)[0].starts_with("lon "));
    }

    #[test]
    fn uncommitted_outputs_are_removed() {
        let root = tempfile::tempdir().unwrap();
        let dir = root.path().join("a/b");
        {
            let mut out = OutputSet::create(&dir).unwrap();
            out.write("x.txt", "x").unwrap();
            assert!(dir.join("x.txt").exists());
        }
        assert!(!root.path().join("a").exists());

        let mut out = OutputSet::create(&dir).unwrap();
        out.write("y.txt", "y").unwrap();
        out.commit();
        assert_eq!(fs::read_to_string(dir.join("y.txt")).unwrap(), "y");
    }

    #[test]
    fn existing_directories_survive_rollback() {
        let root = tempfile::tempdir().unwrap();
        fs::write(root.path().join("keep.txt"), "k").unwrap();
        {
            let mut out = OutputSet::create(root.path()).unwrap();
            out.write("partial.txt", "p").unwrap();
        }
        assert!(root.path().join("keep.txt").exists());
        assert!(!root.path().join("partial.txt").exists());
    }
}
