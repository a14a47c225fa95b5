use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::config::Resolved;
use crate::run::Outcome;

pub const LOCK_NAME: &str = ".dtheat.lock";

/// Exclusive claim on an output directory, released on drop.
pub struct Lock {
    path: PathBuf,
}

impl Lock {
    pub fn acquire(dir: &Path) -> io::Result<Lock> {
        fs::create_dir_all(dir)?;
        let path = dir.join(LOCK_NAME);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                writeln!(f, "{}", std::process::id())?;
                Ok(Lock { path })
            }
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(io::Error::new(
                e.kind(),
                format!(
                    "{} is in use by another run (remove {} if it is stale)",
                    dir.display(),
                    path.display()
                ),
            )),
            Err(e) => Err(e),
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut f = File::create(path)?;
    f.write_all(bytes)?;
    f.sync_all()
}

/// The config echo goes first so no result exists without it.
pub fn write(resolved: &Resolved, outcome: &Outcome) -> io::Result<()> {
    let dir = &resolved.output_dir;
    let mut echo = serde_json::to_vec_pretty(resolved)?;
    echo.push(b'\n');
    write_file(&dir.join("config.json"), &echo)?;
    for a in &outcome.files {
        write_file(&dir.join(&a.name), &a.bytes)?;
    }
    let mut summary = serde_json::to_vec_pretty(&outcome.summary)?;
    summary.push(b'\n');
    write_file(&dir.join("summary.json"), &summary)
}
