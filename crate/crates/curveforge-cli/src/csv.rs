//! CSV output: header `s,x,y,z`, one row per grid point, floats with 17
//! significant digits so values round-trip losslessly. `--frames` appends
//! `tx,ty,tz,nx,ny,nz,bx,by,bz`.

use std::io::Write;
use std::path::Path;

use curveforge::SampledCurve;

use crate::CliError;

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_curve(path: &Path, curve: &SampledCurve, with_frames: bool) -> Result<(), CliError> {
    if curve.has_non_finite() {
        return Err(CliError::numerical(format!(
            "write {}: refusing to write non-finite values",
            path.display()
        )));
    }
    if with_frames && curve.frames.is_none() {
        return Err(CliError::numerical(format!(
            "write {}: no frames attached to this curve",
            path.display()
        )));
    }

    let stage = format!("write {}", path.display());
    let file = std::fs::File::create(path).map_err(|e| CliError::io(&stage, e))?;
    let mut out = std::io::BufWriter::new(file);
    let mut emit = |line: String| -> Result<(), CliError> {
        writeln!(out, "{line}").map_err(|e| CliError::io(&stage, e))
    };

    if with_frames {
        emit("s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz".to_string())?;
        let frames = curve.frames.as_ref().expect("checked above");
        for ((s, p), f) in curve.s.iter().zip(&curve.positions).zip(frames) {
            emit(format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt(*s),
                fmt(p.x),
                fmt(p.y),
                fmt(p.z),
                fmt(f.tangent.x),
                fmt(f.tangent.y),
                fmt(f.tangent.z),
                fmt(f.normal.x),
                fmt(f.normal.y),
                fmt(f.normal.z),
                fmt(f.binormal.x),
                fmt(f.binormal.y),
                fmt(f.binormal.z),
            ))?;
        }
    } else {
        emit("s,x,y,z".to_string())?;
        for (s, p) in curve.s.iter().zip(&curve.positions) {
            emit(format!("{},{},{},{}", fmt(*s), fmt(p.x), fmt(p.y), fmt(p.z)))?;
        }
    }
    out.flush().map_err(|e| CliError::io(&stage, e))
}
