use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use super::{Catalog, CatalogError};

/// Shared handle to the current catalog.
///
/// Readers take a snapshot and never observe a partially ingested catalog.
/// Ingestion is serialized, validates the whole source first, writes the
/// device file atomically when the store is file-backed, and only then
/// publishes the new snapshot.
#[derive(Debug)]
pub struct CatalogStore {
    current: RwLock<Arc<Catalog>>,
    path: Option<PathBuf>,
    ingest: Mutex<()>,
}

impl CatalogStore {
    pub fn in_memory(catalog: Catalog) -> Self {
        CatalogStore {
            current: RwLock::new(Arc::new(catalog)),
            path: None,
            ingest: Mutex::new(()),
        }
    }

    /// Opens a file-backed store, loading the device file at `path`.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CatalogError> {
        let path = path.into();
        let catalog = Catalog::load(&path)?;
        Ok(CatalogStore {
            current: RwLock::new(Arc::new(catalog)),
            path: Some(path),
            ingest: Mutex::new(()),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn snapshot(&self) -> Arc<Catalog> {
        Arc::clone(&self.current.read())
    }

    /// Replaces the catalog with the records of a device document.
    /// Returns the new device count.
    pub fn ingest_json(&self, json: &str) -> Result<usize, CatalogError> {
        let catalog = Catalog::from_json(json)?;
        self.replace(catalog)
    }

    /// Replaces the catalog with the records of a device file.
    pub fn ingest_file(&self, source: &Path) -> Result<usize, CatalogError> {
        let catalog = Catalog::load(source)?;
        self.replace(catalog)
    }

    fn replace(&self, catalog: Catalog) -> Result<usize, CatalogError> {
        let _guard = self.ingest.lock();
        if let Some(path) = &self.path {
            persist(path, &catalog.to_json())?;
        }
        let count = catalog.len();
        *self.current.write() = Arc::new(catalog);
        Ok(count)
    }
}

fn persist(path: &Path, contents: &str) -> Result<(), CatalogError> {
    let io_err = |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
