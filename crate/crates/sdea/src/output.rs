use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use sdea_core::perf::BodePoint;

/// C-style `%.9g`: nine significant digits, trailing zeros dropped.
pub fn g9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (8 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub fn bode_csv<W: Write>(w: W, points: &[BodePoint]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["omega_rad_s", "magnitude_db", "phase_deg"])?;
    for p in points {
        out.write_record([g9(p.omega), g9(p.magnitude_db), g9(p.phase_deg)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn bode_json(points: &[BodePoint]) -> serde_json::Value {
    serde_json::Value::Array(
        points
            .iter()
            .map(|p| serde_json::json!({"omega_rad_s": p.omega, "magnitude_db": p.magnitude_db, "phase_deg": p.phase_deg}))
            .collect(),
    )
}

/// One sweep row: parameter value, criterion value, verdict.
pub type SweepRow = (f64, f64, bool);

pub fn sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["param", "criterion", "pass"])?;
    for &(p, c, ok) in rows {
        out.write_record([g9(p), g9(c), ok.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn sweep_json(name: &str, rows: &[SweepRow]) -> serde_json::Value {
    let rows: Vec<_> = rows
        .iter()
        .map(|&(p, c, ok)| serde_json::json!({"param": p, "criterion": c, "pass": ok}))
        .collect();
    serde_json::json!({"vary": name, "rows": rows})
}

pub fn key_values_csv<W: Write>(w: W, rows: &[(String, String)]) -> csv::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["key", "value"])?;
    for (k, v) in rows {
        out.write_record([k, v])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(g9(0.0), "0");
        assert_eq!(g9(1.0), "1");
        assert_eq!(g9(-26.0205999), "-26.0205999");
        assert_eq!(g9(408.04123456789), "408.041235");
        assert_eq!(g9(1e-3), "0.001");
        assert_eq!(g9(1e6), "1000000");
        assert_eq!(g9(1e9), "1e+09");
        assert_eq!(g9(1.5e-5), "1.5e-05");
        assert_eq!(g9(123456789.4), "123456789");
        assert_eq!(g9(999999999.6), "1e+09");
    }

    #[test]
    fn csv_uses_newlines() {
        let mut buf = Vec::new();
        sweep_csv(&mut buf, &[(1.0, -0.5, false)]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "param,criterion,pass\n1,-0.5,false\n");
    }
}
