//! CSV output.
//!
//! Header `config,hurst,p,tau,beta,ER,NY,PY,VE`, followed by
//! `ER_mc,NY_mc,PY_mc,VE_mc` when Monte Carlo columns are present. Floats
//! use [`format_g12`], LF line endings, no trailing comma.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::sweep::SweepRow;
use crate::Result;

pub const HEADER: &str = "config,hurst,p,tau,beta,ER,NY,PY,VE";
pub const MC_HEADER: &str = ",ER_mc,NY_mc,PY_mc,VE_mc";

/// Formats like C's `printf("%.12g", x)`: 12 significant digits, fixed
/// notation for decimal exponents in `[-4, 12)`, scientific otherwise, and
/// trailing zeros removed.
pub fn format_g12(x: f64) -> String {
    const P: i32 = 12;
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // Round to P significant digits first; the exponent of the rounded value
    // decides the notation.
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mantissa = trim_zeros(mantissa.to_owned());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

pub fn render(rows: &[SweepRow]) -> String {
    let with_mc = rows.iter().any(|r| r.mc.is_some());
    let mut out = String::from(HEADER);
    if with_mc {
        out.push_str(MC_HEADER);
    }
    out.push('\n');
    for row in rows {
        let r = &row.exact;
        write!(out, "{}", r.config.name()).unwrap();
        for v in [r.hurst, r.p, r.tau, r.beta, r.er, r.ny, r.py, r.ve] {
            write!(out, ",{}", format_g12(v)).unwrap();
        }
        if with_mc {
            match &row.mc {
                Some(m) => {
                    for v in [m.er, m.ny, m.py, m.ve] {
                        write!(out, ",{}", format_g12(v)).unwrap();
                    }
                }
                None => out.push_str(",,,,"),
            }
        }
        out.push('\n');
    }
    out
}

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
