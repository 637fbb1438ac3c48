use std::fs;
use std::path::Path;

use monogamy_core::measures::MeasureKind;
use monogamy_core::qstate::{schmidt_state, PureState, SchmidtParams};
use num_complex::Complex64;

use crate::CliError;

/// Normalization slack accepted from user-supplied states before rescaling.
pub const INPUT_NORM_TOL: f64 = 1e-6;

pub fn parse_k(s: &str) -> Result<f64, String> {
    let k: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if k > 0.0 && k <= 1.0 {
        Ok(k)
    } else {
        Err(format!("k must lie in (0, 1], got {k}"))
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|item| item.trim().parse::<T>().map_err(|e| format!("{item:?}: {e}"))).collect()
}

/// `name` or `name:param`, e.g. `tsallis:2.5`.
pub fn parse_kind(s: &str) -> Result<MeasureKind, String> {
    let (name, param) = match s.split_once(':') {
        Some((n, p)) => (n, Some(p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?)),
        None => (s, None),
    };
    let kind = match name {
        "concurrence" => MeasureKind::Concurrence,
        "concurrence-assist" | "coa" => MeasureKind::ConcurrenceAssist,
        "eof" => MeasureKind::EoF,
        "eof-assist" | "eoa" => MeasureKind::EoFAssist,
        "cren" | "negativity" => MeasureKind::Cren,
        "cren-assist" | "negativity-assist" => MeasureKind::CrenAssist,
        "tsallis" => MeasureKind::Tsallis(param.unwrap_or(2.0)),
        "tsallis-assist" | "teoa" => MeasureKind::TsallisAssist(param.unwrap_or(1.5)),
        "renyi" => MeasureKind::Renyi(param.unwrap_or(2.0)),
        "renyi-assist" | "reoa" => MeasureKind::RenyiAssist(param.unwrap_or(1.1)),
        other => return Err(format!("unknown measure {other:?}")),
    };
    if param.is_some() && !matches!(name, "tsallis" | "tsallis-assist" | "teoa" | "renyi" | "renyi-assist" | "reoa") {
        return Err(format!("measure {name:?} takes no parameter"));
    }
    kind.validate().map_err(|e| e.to_string())?;
    Ok(kind)
}

fn check_norm(square_sum: f64) -> Result<(), CliError> {
    if (square_sum - 1.0).abs() > INPUT_NORM_TOL {
        return Err(CliError::Data(format!(
            "state is not normalized: squared norm {square_sum} deviates from 1 by more than {INPUT_NORM_TOL:e}"
        )));
    }
    Ok(())
}

/// `L0,L1,L2,L3,L4[,PHI]`
pub fn schmidt_from_arg(s: &str) -> Result<PureState, CliError> {
    let values: Vec<f64> = parse_list(s).map_err(CliError::Usage)?;
    if !(values.len() == 5 || values.len() == 6) {
        return Err(CliError::Usage(format!(
            "--schmidt needs 5 coefficients and an optional phase, got {}",
            values.len()
        )));
    }
    let mut lambda = [0.0; 5];
    lambda.copy_from_slice(&values[..5]);
    let square_sum: f64 = lambda.iter().map(|l| l * l).sum();
    check_norm(square_sum)?;
    let scale = square_sum.sqrt();
    lambda.iter_mut().for_each(|l| *l /= scale);
    let phi = values.get(5).copied().unwrap_or(0.0);
    let params = SchmidtParams::new(lambda, phi).map_err(|e| CliError::Data(e.to_string()))?;
    schmidt_state(&params).map_err(|e| CliError::Data(e.to_string()))
}

/// One `re im` pair per line; blank lines and `#` comments are skipped.
pub fn amplitudes_from_file(path: &Path) -> Result<PureState, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut amps = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parsed = match parts.as_slice() {
            [re, im] => re.parse::<f64>().ok().zip(im.parse::<f64>().ok()),
            _ => None,
        };
        let (re, im) = parsed.ok_or_else(|| {
            CliError::Data(format!("{}:{}: expected `re im`, got {line:?}", path.display(), lineno + 1))
        })?;
        amps.push(Complex64::new(re, im));
    }
    if amps.len() < 2 || !amps.len().is_power_of_two() {
        return Err(CliError::Data(format!("{} amplitudes is not a power of two >= 2", amps.len())));
    }
    check_norm(amps.iter().map(|a| a.norm_sqr()).sum())?;
    PureState::normalized(amps).map_err(|e| CliError::Data(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_parse() {
        assert_eq!(parse_kind("eof").unwrap(), MeasureKind::EoF);
        assert_eq!(parse_kind("tsallis:2.5").unwrap(), MeasureKind::Tsallis(2.5));
        assert_eq!(parse_kind("renyi").unwrap(), MeasureKind::Renyi(2.0));
        assert!(parse_kind("renyi:1").is_err());
        assert!(parse_kind("eof:2").is_err());
        assert!(parse_kind("bogus").is_err());
    }

    #[test]
    fn k_bounds() {
        assert!(parse_k("1").is_ok());
        assert!(parse_k("0").is_err());
        assert!(parse_k("1.5").is_err());
    }

    #[test]
    fn schmidt_argument_tolerates_rounded_input() {
        assert!(schmidt_from_arg("0.5,0,0.70710678,0.5,0").is_ok());
        assert!(matches!(schmidt_from_arg("0.5,0,0.7,0.5,0"), Err(CliError::Data(_))));
        assert!(matches!(schmidt_from_arg("0.5,0"), Err(CliError::Usage(_))));
    }
}
