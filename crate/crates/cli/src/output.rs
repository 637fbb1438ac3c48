use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// `v` with 17 significant digits, '.' as separator and no grouping.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0.0000000000000000".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        format!("{v:.16e}")
    }
}

/// Standard output, or a file created at `path`.
pub fn open_target(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
