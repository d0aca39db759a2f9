//! CSV emission. Floats are printed with 17 significant digits so a
//! round-trip through text reproduces the exact binary value, metadata goes
//! into `#` comment lines, and a `--no-comments` run writes the same
//! metadata to a `<out>.meta` sidecar instead.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use revival_lab::fock::FockVector;

pub fn write_state_csv(
    w: &mut dyn Write,
    state: &FockVector,
    meta: &[String],
    comments: bool,
) -> io::Result<()> {
    if comments {
        for line in meta {
            writeln!(w, "# {line}")?;
        }
    }
    writeln!(w, "k,re,im,prob")?;
    for (k, c) in state.coeffs().iter().enumerate() {
        writeln!(w, "{},{:.16e},{:.16e},{:.16e}", k, c.re, c.im, c.norm_sqr())?;
    }
    Ok(())
}

pub fn write_trace_csv(
    w: &mut dyn Write,
    times: &[f64],
    p_ground: &[f64],
    meta: &[String],
    comments: bool,
) -> io::Result<()> {
    if comments {
        for line in meta {
            writeln!(w, "# {line}")?;
        }
    }
    writeln!(w, "t,P")?;
    for (t, p) in times.iter().zip(p_ground.iter()) {
        writeln!(w, "{:.16e},{:.16e}", t, p)?;
    }
    Ok(())
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut os = OsString::from(out.as_os_str());
    os.push(".meta");
    PathBuf::from(os)
}

pub fn write_sidecar(out: &Path, meta: &[String]) -> io::Result<()> {
    let mut text = String::new();
    for line in meta {
        text.push_str(line);
        text.push('\n');
    }
    std::fs::write(sidecar_path(out), text)
}
