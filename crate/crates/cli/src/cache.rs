//! File-backed count table.
//!
//! The cache is the table CSV. It only ever grows: new rows are appended and
//! existing lines are never rewritten. A `<path>.lock` sidecar created with
//! `create_new` gives exclusive access; contention fails immediately.

use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use scoreseq::counting::{TABLE_FORMAT_TAG, TABLE_HEADER};
use scoreseq::{CountTable, Strategy};

use crate::Failure;

struct CacheLock {
    path: PathBuf,
}

impl CacheLock {
    fn acquire(cache: &Path) -> Result<Self, Failure> {
        let mut name = cache.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(CacheLock { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(Failure::Cache(format!(
                    "{} is locked by another process (remove {} if stale)",
                    cache.display(),
                    path.display()
                )))
            }
            Err(e) => Err(Failure::Cache(format!("{}: {e}", path.display()))),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn load(path: &Path) -> Result<Option<CountTable>, Failure> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Failure::Cache(format!("{}: {e}", path.display()))),
    };
    if file.metadata().map(|m| m.len() == 0).unwrap_or(false) {
        return Ok(None);
    }
    CountTable::read_csv(BufReader::new(file))
        .map(Some)
        .map_err(|e| Failure::Cache(format!("{}: {e}", path.display())))
}

/// Loads the cached table, extends it to `n` and appends any new rows.
pub fn load_extended(path: &Path, n: usize, strategy: Strategy) -> Result<CountTable, Failure> {
    let _lock = CacheLock::acquire(path)?;
    let existing = load(path)?;
    let had_rows = existing.as_ref().map(CountTable::max_n);
    let mut table = existing.unwrap_or_default();
    table.set_strategy(strategy);
    table
        .extend_to(n)
        .map_err(|e| Failure::Internal(e.to_string()))?;

    let first_new = match had_rows {
        Some(max) if max >= table.max_n() => return Ok(table),
        Some(max) => max + 1,
        None => 0,
    };
    let io_err = |e: std::io::Error| Failure::Cache(format!("{}: {e}", path.display()));
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io_err)?;
    let mut buf = Vec::new();
    if first_new == 0 {
        writeln!(buf, "{TABLE_FORMAT_TAG}").map_err(io_err)?;
        writeln!(buf, "{TABLE_HEADER}").map_err(io_err)?;
    }
    table.write_csv_rows(first_new, &mut buf).map_err(io_err)?;
    file.write_all(&buf).map_err(io_err)?;
    Ok(table)
}
