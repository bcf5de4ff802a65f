//! Flags, the optional TOML config file, and the validated `RunConfig`.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use carlitz_core::algebra::FieldSpec;
use carlitz_core::{Context, Error};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Characteristic p of F_q
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Extension degree e, q = p^e
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// Modulus of F_q over F_p, little-endian, e.g. "1,0,1" (needed when e > 1)
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Coefficients of π, little-endian, e.g. "0,1" for θ
    #[arg(long, global = true)]
    pub prime: Option<String>,
    /// Level n
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// π-adic precision M
    #[arg(long, global = true)]
    pub prec: Option<u32>,
    /// X-degree cutoff D
    #[arg(long, global = true)]
    pub xdeg: Option<usize>,
    /// p-adic digits m of the exponent y
    #[arg(long, global = true)]
    pub ydigits: Option<u32>,
    /// Shorthand for --format json
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with the same keys as the flags; flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// A coefficient list given either as `"0,1"` or as `[0, 1]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntList {
    Text(String),
    List(Vec<u64>),
}

impl IntList {
    fn parse(&self, what: &str) -> Result<Vec<u64>, Error> {
        match self {
            IntList::List(v) => Ok(v.clone()),
            IntList::Text(s) => parse_list(s, what),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub modulus: Option<IntList>,
    pub prime: Option<IntList>,
    pub level: Option<u32>,
    pub prec: Option<u32>,
    pub xdeg: Option<usize>,
    pub ydigits: Option<u32>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

pub fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Error::Precondition(format!("{what}: {t:?} is not a nonnegative integer"))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub prime: Vec<u64>,
    pub level: Option<u32>,
    pub prec: Option<u32>,
    pub xdeg: Option<usize>,
    pub ydigits: Option<u32>,
    pub format: Format,
    pub threads: Option<usize>,
    /// Whether the field or prime was set explicitly (flag or file).
    pub explicit: bool,
    pub prime_given: bool,
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, Error> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Precondition(format!("config {}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| Error::Precondition(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let p = args.p.or(file.p);
        let e = args.e.or(file.e);
        let modulus = match (&args.modulus, &file.modulus) {
            (Some(s), _) => Some(parse_list(s, "--modulus")?),
            (None, Some(l)) => Some(l.parse("modulus")?),
            _ => None,
        };
        let prime = match (&args.prime, &file.prime) {
            (Some(s), _) => Some(parse_list(s, "--prime")?),
            (None, Some(l)) => Some(l.parse("prime")?),
            _ => None,
        };
        let explicit = p.is_some() || e.is_some() || modulus.is_some() || prime.is_some();
        let modulus: Vec<u32> = modulus
            .unwrap_or_default()
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| Error::Precondition(format!("modulus coefficient {x} too large"))))
            .collect::<Result<_, _>>()?;
        let format = if args.json { Format::Json } else { args.format.or(file.format).unwrap_or(Format::Table) };
        Ok(RunConfig {
            field: FieldSpec::new(p.unwrap_or(3), e.unwrap_or(1), modulus),
            prime_given: prime.is_some(),
            prime: prime.unwrap_or_else(|| vec![0, 1]),
            level: args.level.or(file.level),
            prec: args.prec.or(file.prec),
            xdeg: args.xdeg.or(file.xdeg),
            ydigits: args.ydigits.or(file.ydigits),
            format,
            threads: args.threads.or(file.threads),
            explicit,
        })
    }

    /// Builds and validates `(F_q, 𝔭)`.
    pub fn context(&self) -> Result<Context, Error> {
        Context::new(&self.field, &self.prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("carlitz-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "p = 5\nprime = [0, 1]\nprec = 7\nformat = \"csv\"\n").unwrap();
        let args = GlobalArgs { config: Some(path), prec: Some(3), ..Default::default() };
        let c = RunConfig::resolve(&args).unwrap();
        assert_eq!((c.field.p, c.prec, c.format), (5, Some(3), Format::Csv));
        assert!(c.explicit && c.prime_given);
        let d = RunConfig::resolve(&GlobalArgs::default()).unwrap();
        assert_eq!((d.field.p, d.prime.clone(), d.explicit), (3, vec![0, 1], false));
        assert!(parse_list("0,x", "t").is_err());
    }
}
