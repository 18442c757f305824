//! Timestamp hygiene for vault files: trivial touches, bulk equalization,
//! and the background masker that keeps fake files churning during a write
//! session so the real file's mtime carries no signal.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc::{self, RecvTimeoutError};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;
use std::time::Duration;

use rand::Rng;

use crate::{Error, Result};

/// Bumps a file's mtime without changing its content: append one byte,
/// then truncate back to the original length. Callers touching the same
/// file from several threads must serialize, or the truncate lengths race.
pub fn touch(path: &Path) -> Result<()> {
    let mut file = OpenOptions::new().append(true).open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFile(path.to_path_buf())
        } else {
            Error::Io(e)
        }
    })?;
    let len = file.metadata()?.len();
    file.write_all(b"\0")?;
    file.set_len(len)?;
    Ok(())
}

/// Touches every named file in ascending lexicographic order, leaving all
/// mtimes within one burst of each other and in a name-determined order
/// that says nothing about which file matters.
pub fn equalize_timestamps(dir: &Path, names: &[String]) -> Result<()> {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    for name in sorted {
        touch(&dir.join(name))?;
    }
    Ok(())
}

/// Interval bounds for masking edits and for the tail touch that follows a
/// save. Production scale is seconds; tests shrink to milliseconds.
#[derive(Debug, Clone, Copy)]
pub struct MaskingConfig {
    pub min_interval: Duration,
    pub max_interval: Duration,
    pub min_tail: Duration,
    pub max_tail: Duration,
}

impl Default for MaskingConfig {
    fn default() -> Self {
        MaskingConfig {
            min_interval: Duration::from_millis(500),
            max_interval: Duration::from_secs(5),
            min_tail: Duration::from_secs(1),
            max_tail: Duration::from_secs(10),
        }
    }
}

impl MaskingConfig {
    /// Millisecond-scale intervals so tests can run whole save cycles fast.
    pub fn fast() -> Self {
        MaskingConfig {
            min_interval: Duration::from_millis(1),
            max_interval: Duration::from_millis(4),
            min_tail: Duration::from_millis(2),
            max_tail: Duration::from_millis(6),
        }
    }

    pub fn interval(&self, rng: &mut impl Rng) -> Duration {
        sample_between(self.min_interval, self.max_interval, rng)
    }

    pub fn tail(&self, rng: &mut impl Rng) -> Duration {
        sample_between(self.min_tail, self.max_tail, rng)
    }
}

fn sample_between(lo: Duration, hi: Duration, rng: &mut impl Rng) -> Duration {
    debug_assert!(lo <= hi);
    let span = (hi - lo).as_nanos() as u64;
    lo + Duration::from_nanos(if span == 0 { 0 } else { rng.gen_range(0..=span) })
}

/// Background thread that touches a random fake file at random intervals
/// for as long as a write session is open. The fake list is shared with the
/// session, which locks it while renaming files or touching fakes itself.
pub(crate) struct Masker {
    stop: Option<mpsc::Sender<()>>,
    handle: Option<JoinHandle<()>>,
}

impl Masker {
    pub fn start(dir: PathBuf, fakes: Arc<Mutex<Vec<String>>>, cfg: MaskingConfig) -> Masker {
        let (stop, wake) = mpsc::channel::<()>();
        let handle = std::thread::spawn(move || {
            let mut rng = rand::thread_rng();
            loop {
                match wake.recv_timeout(cfg.interval(&mut rng)) {
                    Err(RecvTimeoutError::Timeout) => {
                        let names = fakes.lock().expect("fake list lock");
                        if names.is_empty() {
                            continue;
                        }
                        let pick = rng.gen_range(0..names.len());
                        // A rename can slip in between draws; skipping one
                        // tick is fine, the next lands on the new name.
                        let _ = touch(&dir.join(&names[pick]));
                    }
                    _ => return,
                }
            }
        });
        Masker { stop: Some(stop), handle: Some(handle) }
    }
}

impl Drop for Masker {
    fn drop(&mut self) {
        drop(self.stop.take());
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}
