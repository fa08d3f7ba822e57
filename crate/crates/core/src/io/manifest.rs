//! Manifest files: one `<relative-path> <label>` pair per line.

use std::fs;
use std::path::Path;

use crate::dataset::{Dataset, Sample};
use crate::error::{Error, Result};
use crate::io::pgm::read_pgm;

/// Loads every referenced image, in manifest order. Paths resolve relative
/// to the manifest's directory. Labels must be literal `+1` or `-1`.
pub fn load_dataset(manifest_path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let fail = |line: usize, msg: String| Error::Manifest {
        path: manifest_path.to_path_buf(),
        line,
        msg,
    };

    let mut samples = Vec::new();
    let mut window: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (rel, label_token) = line
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| fail(line_no, format!("expected \"<path> <label>\", got {line:?}")))?;
        let label: i8 = match label_token {
            "+1" => 1,
            "-1" => -1,
            other => return Err(fail(line_no, format!("bad label token {other:?}"))),
        };
        let path = base.join(rel.trim());
        let image = read_pgm(&path)
            .map_err(|e| fail(line_no, format!("{}: {e}", path.display())))?;
        if let Some((w, h)) = window {
            if image.width() != w || image.height() != h {
                return Err(fail(
                    line_no,
                    format!(
                        "{} is {}x{}, expected {}x{}",
                        path.display(),
                        image.width(),
                        image.height(),
                        w,
                        h
                    ),
                ));
            }
        } else {
            window = Some((image.width(), image.height()));
        }
        samples.push(Sample::new(image, label)?);
    }

    if samples.is_empty() {
        return Err(Error::EmptyManifest {
            path: manifest_path.to_path_buf(),
        });
    }
    Dataset::new(samples)
}

/// Writes manifest lines in the given order.
pub fn write_manifest(path: &Path, entries: &[(String, i8)]) -> Result<()> {
    let mut out = String::new();
    for (rel, label) in entries {
        out.push_str(rel);
        out.push(' ');
        out.push_str(if *label == 1 { "+1" } else { "-1" });
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}
