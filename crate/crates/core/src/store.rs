//! Directory-per-scheme file store backing the HTTP service.
//!
//! ```text
//! <root>/<scheme>/scheme.json
//! <root>/<scheme>/datasets/<dataset>.csv
//! <root>/<scheme>/.lock
//! ```
//!
//! Readers take a shared advisory lock on the scheme's `.lock` file and
//! writers an exclusive one; files are replaced by rename.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::{parse_dataset, parse_scheme, scheme_to_json};
use crate::model::{validate_dataset, Alternative, Scheme};

const SCHEME_FILE: &str = "scheme.json";
const DATASETS: &str = "datasets";
const LOCK_FILE: &str = ".lock";

#[derive(Debug, Clone)]
pub struct FileStore {
    root: PathBuf,
}

struct Guard(File);

impl Drop for Guard {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

pub fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name.len() <= 128
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

impl FileStore {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| Error::io(&root, e))?;
        Ok(FileStore { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, scheme: &str) -> Result<PathBuf> {
        check_name(scheme)?;
        Ok(self.root.join(scheme))
    }

    fn existing_dir(&self, scheme: &str) -> Result<PathBuf> {
        let dir = self.dir(scheme)?;
        if dir.join(SCHEME_FILE).is_file() {
            Ok(dir)
        } else {
            Err(Error::NotFound {
                kind: "scheme",
                name: scheme.to_string(),
            })
        }
    }

    fn lock(dir: &Path, exclusive: bool) -> Result<Guard> {
        let path = dir.join(LOCK_FILE);
        let file = File::options()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        let locked = if exclusive { file.lock() } else { file.lock_shared() };
        locked.map_err(|e| Error::io(&path, e))?;
        Ok(Guard(file))
    }

    fn write_atomic(path: &Path, contents: &str) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, contents).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }

    fn read(path: &Path) -> Result<String> {
        fs::read_to_string(path).map_err(|e| Error::io(path, e))
    }

    /// Validates and stores a scheme in canonical form. The `name` inside
    /// the document must equal `name`.
    pub fn put_scheme(&self, name: &str, text: &str) -> Result<Scheme> {
        let dir = self.dir(name)?;
        let scheme = parse_scheme(text)?;
        if scheme.name() != name {
            return Err(Error::schema(
                "/name",
                format!("document names scheme {:?} but was stored as {name:?}", scheme.name()),
            ));
        }
        fs::create_dir_all(dir.join(DATASETS)).map_err(|e| Error::io(&dir, e))?;
        let _guard = Self::lock(&dir, true)?;
        Self::write_atomic(&dir.join(SCHEME_FILE), &scheme_to_json(&scheme))?;
        Ok(scheme)
    }

    pub fn list_schemes(&self) -> Result<Vec<String>> {
        let entries = fs::read_dir(&self.root).map_err(|e| Error::io(&self.root, e))?;
        let mut names = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|e| Error::io(&self.root, e))?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if check_name(&name).is_ok() && entry.path().join(SCHEME_FILE).is_file() {
                names.push(name);
            }
        }
        names.sort();
        Ok(names)
    }

    pub fn scheme_text(&self, name: &str) -> Result<String> {
        let dir = self.existing_dir(name)?;
        let _guard = Self::lock(&dir, false)?;
        Self::read(&dir.join(SCHEME_FILE))
    }

    pub fn scheme(&self, name: &str) -> Result<Scheme> {
        parse_scheme(&self.scheme_text(name)?)
    }

    /// Stores the CSV only if it parses against the scheme and validates
    /// cleanly; otherwise the issues come back as `InvalidDataset`.
    pub fn put_dataset(&self, scheme_name: &str, dataset: &str, csv: &str) -> Result<Vec<Alternative>> {
        check_name(dataset)?;
        let dir = self.existing_dir(scheme_name)?;
        let _guard = Self::lock(&dir, true)?;
        let scheme = parse_scheme(&Self::read(&dir.join(SCHEME_FILE))?)?;
        let alts = parse_dataset(csv, &scheme)?;
        let issues = validate_dataset(&scheme, &alts);
        if !issues.is_empty() {
            return Err(Error::InvalidDataset(issues));
        }
        let datasets = dir.join(DATASETS);
        fs::create_dir_all(&datasets).map_err(|e| Error::io(&datasets, e))?;
        Self::write_atomic(&datasets.join(format!("{dataset}.csv")), csv)?;
        Ok(alts)
    }

    pub fn list_datasets(&self, scheme_name: &str) -> Result<Vec<String>> {
        let dir = self.existing_dir(scheme_name)?;
        let _guard = Self::lock(&dir, false)?;
        let datasets = dir.join(DATASETS);
        let Ok(entries) = fs::read_dir(&datasets) else {
            return Ok(Vec::new());
        };
        let mut names: Vec<String> = entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name().to_string_lossy().into_owned();
                name.strip_suffix(".csv").map(str::to_string)
            })
            .filter(|n| check_name(n).is_ok())
            .collect();
        names.sort();
        Ok(names)
    }

    /// Loads a scheme together with one of its datasets under a single
    /// shared lock, so the pair is consistent.
    pub fn load(&self, scheme_name: &str, dataset: &str) -> Result<(Scheme, Vec<Alternative>)> {
        check_name(dataset)?;
        let dir = self.existing_dir(scheme_name)?;
        let _guard = Self::lock(&dir, false)?;
        let scheme = parse_scheme(&Self::read(&dir.join(SCHEME_FILE))?)?;
        let path = dir.join(DATASETS).join(format!("{dataset}.csv"));
        if !path.is_file() {
            return Err(Error::NotFound {
                kind: "dataset",
                name: format!("{scheme_name}/{dataset}"),
            });
        }
        let alts = parse_dataset(&Self::read(&path)?, &scheme)?;
        Ok((scheme, alts))
    }
}
