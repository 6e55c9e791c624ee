use std::fmt;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use wronski::io::{from_str, Json};
use wronski::{simplex_lattice_points, Lifting, PointConfiguration, TrackerSettings};

use crate::{Global, LiftedArgs, PointsArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Domain(wronski::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<wronski::Error> for CliError {
    fn from(e: wronski::Error) -> Self {
        match e {
            // malformed input is a usage problem, not a domain one
            wronski::Error::Schema { .. }
            | wronski::Error::Parse { .. }
            | wronski::Error::Settings(_)
            | wronski::Error::BadWindow => CliError::Usage(e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_json<T: Json>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    from_str(&text).map_err(|e| match e {
        wronski::Error::Schema { pointer, message } => CliError::Usage(format!(
            "{}: schema error at {pointer:?}: {message}",
            path.display()
        )),
        e => CliError::from(e),
    })
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn points(args: &PointsArgs) -> Result<PointConfiguration, CliError> {
    match (&args.simplex, &args.points) {
        (Some(dk), None) => {
            let d = usize::try_from(dk[0])
                .map_err(|_| CliError::Usage("dimension too large".into()))?;
            Ok(simplex_lattice_points(d, dk[1])?)
        }
        (None, Some(path)) => read_json(path),
        _ => Err(CliError::Usage(
            "give exactly one of --simplex D K or --points FILE".into(),
        )),
    }
}

pub fn lifted(args: &LiftedArgs) -> Result<(PointConfiguration, Lifting), CliError> {
    let config = points(&args.points)?;
    let lifting = match (&args.lifting, &args.lifting_file) {
        (Some(list), None) => Lifting::new(parse_list(list, |s| s.parse::<i64>().ok(), "integer")?),
        (None, Some(path)) => read_json(path)?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --lifting LIST or --lifting-file FILE".into(),
            ))
        }
    };
    lifting.check_matches(&config)?;
    Ok((config, lifting))
}

fn parse_list<T>(
    text: &str,
    parse: impl Fn(&str) -> Option<T>,
    what: &str,
) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            parse(s).ok_or_else(|| CliError::Usage(format!("{s:?} is not an {what}")))
        })
        .collect()
}

pub fn rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (d != BigInt::from(0)).then(|| BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    rational(text).ok_or_else(|| CliError::Usage(format!("{text:?} is not a rational number")))
}

/// Rows separated by `;`, entries by `,`.
pub fn coefficient_rows(text: &str) -> Result<Vec<Vec<BigRational>>, CliError> {
    text.split(';')
        .map(|row| parse_list(row, rational, "rational number"))
        .collect()
}

pub fn settings(g: &Global) -> Result<TrackerSettings, CliError> {
    let mut s = match &g.settings {
        Some(path) => read_json(path)?,
        None => TrackerSettings::default(),
    };
    s.seed = g.seed;
    let overrides = [
        (&mut s.newton_tol, g.newton_tol),
        (&mut s.refine_tol, g.refine_tol),
        (&mut s.dedupe_tol, g.dedupe_tol),
        (&mut s.real_tol, g.real_tol),
        (&mut s.torus_tol, g.torus_tol),
        (&mut s.singular_cond, g.singular_cond),
    ];
    for (field, value) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    s.validate()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(
            rational("-19"),
            Some(BigRational::from_integer((-19).into()))
        );
        assert_eq!(
            rational(" 3/6 "),
            Some(BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(rational("1/0"), None);
        assert_eq!(rational("x"), None);
    }

    #[test]
    fn rows() {
        let rows = coefficient_rows("19,8,-19;39,7,42").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1][2], BigRational::from_integer(42.into()));
        assert!(coefficient_rows("1,,2").is_err());
    }
}
