//! The vault stores one real document among algorithmically generated
//! fakes. Which file is real is not recorded anywhere on disk: it is the
//! secret behind a 2-of-2 sharing, recoverable only by combining the
//! manifest's system share with the share the user keeps off-vault. Every
//! save reshuffles names, re-splits the secret, and massages timestamps so
//! the directory stays statistically silent about the real file.

mod field;
mod names;
mod share;
mod timestamps;

pub use names::{is_valid_name, secret_to_name};
pub use share::{recover_secret, rebind_system_share, split_secret, Share, DEFAULT_PRIME};
pub use timestamps::{equalize_timestamps, touch, MaskingConfig};

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};
use timestamps::Masker;

/// Multi-byte integers travel as decimal strings so the manifest never
/// depends on JSON number precision.
mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShareRecord {
    #[serde(with = "decimal")]
    x: u64,
    #[serde(with = "decimal")]
    y: u64,
    #[serde(with = "decimal")]
    prime: u64,
}

impl From<Share> for ShareRecord {
    fn from(s: Share) -> Self {
        ShareRecord { x: s.x, y: s.y, prime: s.prime }
    }
}

impl From<ShareRecord> for Share {
    fn from(r: ShareRecord) -> Self {
        Share { x: r.x, y: r.y, prime: r.prime }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileEntry {
    pub name: String,
    #[serde(with = "decimal")]
    pub size: u64,
    #[serde(with = "decimal")]
    pub mtime: u64,
}

/// On-disk description of a vault: the field prime, the system share, and
/// per-file bookkeeping. Deliberately contains nothing that singles out the
/// real file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VaultManifest {
    dir: String,
    #[serde(with = "decimal")]
    prime: u64,
    system_share: ShareRecord,
    files: Vec<FileEntry>,
}

pub const MANIFEST_NAME: &str = "manifest.json";
const LOCK_NAME: &str = ".lock";

impl VaultManifest {
    pub fn load(dir: &Path) -> Result<VaultManifest> {
        let path = dir.join(MANIFEST_NAME);
        let raw = fs::read_to_string(&path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                Error::MissingFile(path.clone())
            } else {
                Error::Io(e)
            }
        })?;
        let manifest: VaultManifest = serde_json::from_str(&raw)?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn store(&self, dir: &Path) -> Result<()> {
        self.validate()?;
        let body = serde_json::to_string_pretty(self)?;
        atomic_write(&dir.join(MANIFEST_NAME), body.as_bytes())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn system_share(&self) -> Share {
        self.system_share.into()
    }

    pub fn files(&self) -> &[FileEntry] {
        &self.files
    }

    pub fn names(&self) -> Vec<String> {
        self.files.iter().map(|f| f.name.clone()).collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.files.len() as u64;
        if n < 2 {
            return Err(Error::Manifest("a vault holds at least two files".into()));
        }
        if self.prime < 5 || self.prime <= n {
            return Err(Error::PrimeTooSmall(self.prime));
        }
        if !field::is_prime(self.prime) {
            return Err(Error::NotPrime(self.prime));
        }
        let sys = self.system_share;
        if sys.prime != self.prime {
            return Err(Error::PrimeMismatch);
        }
        if sys.x >= self.prime || sys.y >= self.prime {
            return Err(Error::Manifest("system share out of field range".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for entry in &self.files {
            if !names::is_valid_name(&entry.name) {
                return Err(Error::Manifest(format!("bad file name {:?}", entry.name)));
            }
            if !seen.insert(&entry.name) {
                return Err(Error::Manifest(format!("duplicate file name {:?}", entry.name)));
            }
        }
        Ok(())
    }
}

fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Manifest(format!("unusable path {}", path.display())))?;
    let tmp = path.with_file_name(format!(".{file_name}.tmp"));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn hash_bytes(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

fn stat_entry(dir: &Path, name: &str) -> Result<FileEntry> {
    let meta = fs::metadata(dir.join(name))?;
    let mtime = meta
        .modified()?
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(FileEntry { name: name.to_string(), size: meta.len(), mtime })
}

fn build_entries(dir: &Path, names: &[String]) -> Result<Vec<FileEntry>> {
    let mut sorted: Vec<String> = names.to_vec();
    sorted.sort();
    sorted.iter().map(|n| stat_entry(dir, n)).collect()
}

/// Draws a secret that selects `index` among `n` sorted names: uniform over
/// `{index + k*n : k >= 0}` below the prime, optionally avoiding one value.
fn draw_secret(
    index: u64,
    n: u64,
    prime: u64,
    avoid: Option<u64>,
    rng: &mut impl Rng,
) -> Option<u64> {
    let k_max = (prime - 1 - index) / n;
    for _ in 0..64 {
        let s = index + rng.gen_range(0..=k_max) * n;
        if Some(s) != avoid {
            return Some(s);
        }
    }
    None
}

/// Creates a vault in `dir` holding `real` plus the given fakes under fresh
/// random names, and returns the manifest together with the user share. The
/// user share is the only way back to the real file; it is never stored.
pub fn create_vault(
    dir: &Path,
    real: &str,
    fakes: &[String],
    prime: u64,
    rng: &mut impl Rng,
) -> Result<(VaultManifest, Share)> {
    if fakes.is_empty() {
        return Err(Error::InvalidSpec("a vault needs at least one fake".into()));
    }
    // All modulus problems must surface before any file is written.
    share::validate_prime(prime)?;
    let n = fakes.len() as u64 + 1;
    if prime <= n {
        return Err(Error::PrimeTooSmall(prime));
    }
    fs::create_dir_all(dir)?;
    if dir.join(MANIFEST_NAME).exists() {
        return Err(Error::Manifest(format!("vault already exists in {}", dir.display())));
    }

    let file_names = names::fresh_names(n as usize, &[], rng);
    let real_name = file_names[0].clone();
    atomic_write(&dir.join(&real_name), real.as_bytes())?;
    for (fake, name) in fakes.iter().zip(&file_names[1..]) {
        atomic_write(&dir.join(name), fake.as_bytes())?;
    }
    equalize_timestamps(dir, &file_names)?;

    let mut sorted = file_names.clone();
    sorted.sort();
    let index = sorted.iter().position(|x| *x == real_name).unwrap() as u64;
    let secret = draw_secret(index, n, prime, None, rng).expect("unconstrained draw");
    let (system, user) = split_secret(secret, prime, rng)?;

    let manifest = VaultManifest {
        dir: ".".into(),
        prime,
        system_share: system.into(),
        files: build_entries(dir, &file_names)?,
    };
    manifest.store(dir)?;
    Ok((manifest, user))
}

/// An open vault. Read sessions just hold the recovered content; write
/// sessions additionally hold the exclusive lock and run the masker thread
/// until dropped.
pub struct VaultSession {
    dir: PathBuf,
    manifest: VaultManifest,
    user: Share,
    real_name: String,
    content: String,
    open_hash: [u8; 32],
    masking: MaskingConfig,
    fakes: Arc<Mutex<Vec<String>>>,
    // Held for its drop side effects: the masker joins its thread before
    // the lock file disappears.
    _masker: Option<Masker>,
    lock: Option<LockGuard>,
}

struct LockGuard {
    path: PathBuf,
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl VaultSession {
    /// Opens for reading only: no lock, no masking. Any well-formed share
    /// recovers *some* file; only the right one recovers the real file, and
    /// nothing in the result says which case occurred.
    pub fn open_read(dir: &Path, user: Share) -> Result<VaultSession> {
        Self::open(dir, user, false, MaskingConfig::default())
    }

    /// Opens for writing: takes the single-writer lock and starts masking
    /// edits on fakes at random intervals until the session drops.
    pub fn open_write(dir: &Path, user: Share, masking: MaskingConfig) -> Result<VaultSession> {
        Self::open(dir, user, true, masking)
    }

    fn open(dir: &Path, user: Share, write: bool, masking: MaskingConfig) -> Result<VaultSession> {
        let manifest = VaultManifest::load(dir)?;
        let secret = share::recover_secret(manifest.system_share(), user)?;
        let all_names = manifest.names();
        let real_name = names::secret_to_name(secret, &all_names);

        let lock = if write {
            let path = dir.join(LOCK_NAME);
            match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => Some(LockGuard { path }),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    return Err(Error::VaultLocked(dir.to_path_buf()));
                }
                Err(e) => return Err(Error::Io(e)),
            }
        } else {
            None
        };

        let path = dir.join(&real_name);
        let content = fs::read_to_string(&path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                Error::MissingFile(path.clone())
            } else {
                Error::Io(e)
            }
        })?;
        let open_hash = hash_bytes(content.as_bytes());

        let fake_names: Vec<String> =
            all_names.iter().filter(|n| **n != real_name).cloned().collect();
        let fakes = Arc::new(Mutex::new(fake_names));
        let masker = lock
            .is_some()
            .then(|| Masker::start(dir.to_path_buf(), Arc::clone(&fakes), masking));

        Ok(VaultSession {
            dir: dir.to_path_buf(),
            manifest,
            user,
            real_name,
            content,
            open_hash,
            masking,
            fakes,
            _masker: masker,
            lock,
        })
    }

    pub fn content(&self) -> &str {
        &self.content
    }

    pub fn manifest(&self) -> &VaultManifest {
        &self.manifest
    }

    pub fn real_name(&self) -> &str {
        &self.real_name
    }

    /// Replaces the real document. The recovered file must still hash to
    /// what this session saw at open, else the share was wrong or the vault
    /// drifted, and the write is refused. Afterwards every file gets a
    /// fresh random name, the secret is re-drawn, the system share rebinds
    /// to it (user share untouched), and timestamps are re-equalized with a
    /// trailing masking touch so some fake always postdates the real write.
    pub fn save(&mut self, new_content: &str, rng: &mut impl Rng) -> Result<()> {
        if self.lock.is_none() {
            return Err(Error::ReadOnlySession);
        }
        let current = fs::read(self.dir.join(&self.real_name))?;
        if hash_bytes(&current) != self.open_hash {
            return Err(Error::AuthenticationFailed);
        }

        atomic_write(&self.dir.join(&self.real_name), new_content.as_bytes())?;
        {
            // Guaranteed masking edit after the real write, independent of
            // the background thread's timing.
            let fakes = self.fakes.lock().expect("fake list lock");
            let pick = rng.gen_range(0..fakes.len());
            touch(&self.dir.join(&fakes[pick]))?;
        }

        let old_names = self.manifest.names();
        let n = old_names.len() as u64;
        let (new_names, new_real, secret) = loop {
            let fresh = names::fresh_names(old_names.len(), &old_names, rng);
            let renamed: Vec<(String, String)> =
                old_names.iter().cloned().zip(fresh.iter().cloned()).collect();
            let new_real = renamed
                .iter()
                .find(|(old, _)| *old == self.real_name)
                .expect("real name present")
                .1
                .clone();
            let mut sorted = fresh.clone();
            sorted.sort();
            let index = sorted.iter().position(|x| *x == new_real).unwrap() as u64;
            // The new secret must not collide with the user's x coordinate
            // or the rebound line would be vertical. If every admissible
            // draw collides (conceivable only for tiny primes), permute
            // names again rather than weaken anything.
            match draw_secret(index, n, self.manifest.prime, Some(self.user.x), rng) {
                Some(secret) => {
                    let fakes = self.fakes.lock().expect("fake list lock");
                    for (old, new) in &renamed {
                        fs::rename(self.dir.join(old), self.dir.join(new))?;
                    }
                    drop(fakes);
                    break (fresh, new_real, secret);
                }
                None => continue,
            }
        };

        let system = share::rebind_system_share(self.user, secret, rng)?;
        debug_assert_eq!(share::recover_secret(system, self.user)?, secret);

        {
            let mut fakes = self.fakes.lock().expect("fake list lock");
            *fakes = new_names.iter().filter(|x| **x != new_real).cloned().collect();
            equalize_timestamps(&self.dir, &new_names)?;
        }
        std::thread::sleep(self.masking.tail(rng));
        {
            let fakes = self.fakes.lock().expect("fake list lock");
            let pick = rng.gen_range(0..fakes.len());
            touch(&self.dir.join(&fakes[pick]))?;
        }

        self.manifest.system_share = system.into();
        self.manifest.files = build_entries(&self.dir, &new_names)?;
        self.manifest.store(&self.dir)?;
        self.real_name = new_real;
        self.content = new_content.to_string();
        self.open_hash = hash_bytes(new_content.as_bytes());
        Ok(())
    }
}
