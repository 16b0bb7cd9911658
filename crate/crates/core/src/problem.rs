//! Problem selection: which landscape family to build, from which
//! parameters, and a single landscape type over all of them.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::landscape::{Direction, Landscape};
use crate::neighborhood::Neighborhood;
use crate::nk::NkInstance;
use crate::qap::{QapClass, QapInstance};
use crate::space::{BitString, Permutation, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Nk,
    QapUniform,
    QapRealLike,
    QapFile,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Nk => "nk",
            ProblemKind::QapUniform => "qap-uniform",
            ProblemKind::QapRealLike => "qap-reallike",
            ProblemKind::QapFile => "qap-file",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nk" => Ok(ProblemKind::Nk),
            "qap-uniform" => Ok(ProblemKind::QapUniform),
            "qap-reallike" | "qap-real-like" => Ok(ProblemKind::QapRealLike),
            "qap-file" => Ok(ProblemKind::QapFile),
            other => Err(Error::invalid(format!(
                "unknown problem {other:?}; expected nk, qap-uniform, qap-reallike or qap-file"
            ))),
        }
    }
}

/// Parameters that, together with a seed, determine one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemSpec {
    Nk {
        n: usize,
        k: usize,
    },
    QapUniform {
        n: usize,
    },
    QapRealLike {
        n: usize,
    },
    /// A fixed instance read from a QAPLIB-layout file; seeds are ignored.
    QapFile {
        path: PathBuf,
    },
}

impl ProblemSpec {
    /// Builds a spec from loosely supplied parameters, rejecting missing or
    /// irrelevant ones.
    pub fn from_parts(
        kind: ProblemKind,
        n: Option<usize>,
        k: Option<usize>,
        path: Option<PathBuf>,
    ) -> Result<Self> {
        let need_n = |n: Option<usize>| {
            n.ok_or_else(|| Error::invalid(format!("problem {kind} needs a size (--N)")))
        };
        let spec = match kind {
            ProblemKind::Nk => ProblemSpec::Nk {
                n: need_n(n)?,
                k: k.ok_or_else(|| Error::invalid("problem nk needs an epistasis value (--K)"))?,
            },
            ProblemKind::QapUniform => ProblemSpec::QapUniform { n: need_n(n)? },
            ProblemKind::QapRealLike => ProblemSpec::QapRealLike { n: need_n(n)? },
            ProblemKind::QapFile => ProblemSpec::QapFile {
                path: path
                    .ok_or_else(|| Error::invalid("problem qap-file needs an instance path"))?,
            },
        };
        if kind != ProblemKind::Nk && k.is_some() {
            return Err(Error::invalid(format!(
                "--K does not apply to problem {kind}"
            )));
        }
        if kind == ProblemKind::QapFile && n.is_some() {
            return Err(Error::invalid(
                "qap-file takes its size from the instance file",
            ));
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemSpec::Nk { .. } => ProblemKind::Nk,
            ProblemSpec::QapUniform { .. } => ProblemKind::QapUniform,
            ProblemSpec::QapRealLike { .. } => ProblemKind::QapRealLike,
            ProblemSpec::QapFile { .. } => ProblemKind::QapFile,
        }
    }

    /// Checks parameters without generating anything.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProblemSpec::Nk { n, k } => {
                if n == 0 || k >= n {
                    return Err(Error::invalid(format!(
                        "nk needs 0 <= K < N, got N={n} K={k}"
                    )));
                }
            }
            ProblemSpec::QapUniform { n } | ProblemSpec::QapRealLike { n } => {
                if n < 2 {
                    return Err(Error::invalid(format!(
                        "generated QAP needs n >= 2, got {n}"
                    )));
                }
            }
            ProblemSpec::QapFile { .. } => {}
        }
        Ok(())
    }

    pub fn instantiate(&self, seed: u64) -> Result<ProblemInstance> {
        match self {
            ProblemSpec::Nk { n, k } => {
                Ok(ProblemInstance::Nk(NkInstance::generate(*n, *k, seed)?))
            }
            ProblemSpec::QapUniform { n } => Ok(ProblemInstance::Qap(
                QapInstance::generate_uniform(*n, seed)?,
            )),
            ProblemSpec::QapRealLike { n } => Ok(ProblemInstance::Qap(
                QapInstance::generate_real_like(*n, seed)?,
            )),
            ProblemSpec::QapFile { path } => {
                let text = std::fs::read_to_string(path)?;
                Ok(ProblemInstance::Qap(QapInstance::from_qaplib(&text)?))
            }
        }
    }

    /// Stable one-line form, used for provenance and hashing.
    pub fn canonical(&self) -> String {
        match self {
            ProblemSpec::Nk { n, k } => format!("nk N={n} K={k}"),
            ProblemSpec::QapUniform { n } => format!("qap-uniform n={n}"),
            ProblemSpec::QapRealLike { n } => format!("qap-reallike n={n}"),
            ProblemSpec::QapFile { path } => format!("qap-file path={}", path.display()),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemInstance {
    Nk(NkInstance),
    Qap(QapInstance),
}

impl ProblemInstance {
    /// Serialized instance: the NK text format or QAPLIB layout.
    pub fn to_text(&self, comment: Option<&str>) -> String {
        match self {
            ProblemInstance::Nk(nk) => nk.to_text(comment),
            ProblemInstance::Qap(qap) => qap.to_qaplib(comment),
        }
    }

    /// Parses either format; NK text is recognized by its `NK` header.
    pub fn from_text(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(str::trim_start)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with("NK") => Ok(ProblemInstance::Nk(NkInstance::from_text(text)?)),
            _ => Ok(ProblemInstance::Qap(QapInstance::from_qaplib(text)?)),
        }
    }

    pub fn file_extension(&self) -> &'static str {
        match self {
            ProblemInstance::Nk(_) => "nk",
            ProblemInstance::Qap(_) => "dat",
        }
    }

    pub fn qap_class(&self) -> Option<QapClass> {
        match self {
            ProblemInstance::Nk(_) => None,
            ProblemInstance::Qap(q) => Some(q.class()),
        }
    }
}

impl Landscape for ProblemInstance {
    fn neighborhood(&self) -> Neighborhood {
        match self {
            ProblemInstance::Nk(l) => l.neighborhood(),
            ProblemInstance::Qap(l) => l.neighborhood(),
        }
    }

    fn direction(&self) -> Direction {
        match self {
            ProblemInstance::Nk(l) => l.direction(),
            ProblemInstance::Qap(l) => l.direction(),
        }
    }

    fn fitness(&self, s: &Solution) -> f64 {
        match self {
            ProblemInstance::Nk(l) => l.fitness(s),
            ProblemInstance::Qap(l) => l.fitness(s),
        }
    }

    fn fitness_of_bits(&self, b: &BitString) -> f64 {
        match self {
            ProblemInstance::Nk(l) => l.fitness_of_bits(b),
            ProblemInstance::Qap(l) => l.fitness_of_bits(b),
        }
    }

    fn fitness_of_permutation(&self, p: &Permutation) -> f64 {
        match self {
            ProblemInstance::Nk(l) => l.fitness_of_permutation(p),
            ProblemInstance::Qap(l) => l.fitness_of_permutation(p),
        }
    }

    fn describe(&self) -> String {
        match self {
            ProblemInstance::Nk(l) => l.describe(),
            ProblemInstance::Qap(l) => l.describe(),
        }
    }
}
