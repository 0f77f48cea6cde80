use std::path::Path;

use sha2::{Digest, Sha256};
use vcx_core::UniformFamily;

use crate::error::{CliError, CliResult};

/// Reads and validates a `.fam` file. Members come back in canonical order
/// whatever the file order was.
pub fn load_family(path: &Path) -> CliResult<UniformFamily> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    UniformFamily::parse_fam(&text).map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

pub fn write_family(path: &Path, fam: &UniformFamily) -> CliResult<()> {
    std::fs::write(path, fam.to_fam_string()).map_err(|e| CliError::io(path, e))
}

/// First 8 bytes of SHA-256, as 16 hex digits.
pub fn digest64(bytes: &[u8]) -> String {
    Sha256::digest(bytes)[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_digest(path: &Path) -> CliResult<String> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(digest64(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, text: &str) -> std::path::PathBuf {
        let path = dir.path().join("f.fam");
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn loads_and_canonicalizes() {
        let dir = tempfile::tempdir().unwrap();
        let fam = load_family(&write(&dir, "4 3\n1 2 4\n1 2 3\n")).unwrap();
        assert_eq!(fam.n(), 4);
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.members()[0].to_line(), "1 2 3");
        assert!(load_family(&write(&dir, "5 3")).unwrap().is_empty());
    }

    #[test]
    fn errors_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_family(&write(&dir, "4 3\n1 2 3\n1 2 4\n1 2 3\n")).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        assert_eq!(err.exit_code(), 1);
        let err = load_family(&dir.path().join("missing.fam")).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let star = vcx_core::star_family(7, 3).unwrap();
        let path = dir.path().join("star.fam");
        write_family(&path, &star).unwrap();
        assert_eq!(load_family(&path).unwrap(), star);
    }

    #[test]
    fn digest_is_sha256_prefix() {
        assert_eq!(digest64(b""), "e3b0c44298fc1c14");
        assert_eq!(digest64(b"abc"), "ba7816bf8f01cfea");
    }
}
