use moment_models::canonical::{AngleData, Extent, Interval};
use moment_models::exact_core::{parse_rational, Polynomial, RationalFunction};
use moment_models::moments::{DiscreteMeasure, MomentSequence};
use moment_models::orthopoly::JacobiModel;
use moment_models::strings::{Cell, KreinLangerString, StieltjesView, StringEnd};
use moment_models::{Hamiltonian, Jacobi, KlString, Measure, Moments, RatFun, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// One input or output object of the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Moments(Moments),
    Measure(Measure),
    Jacobi(Jacobi),
    StieltjesString(StieltjesView<Rational>),
    KlString(KlString),
    Hamiltonian(Hamiltonian),
    Ratfun(RatFun),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Kind {
    Moments,
    Measure,
    Jacobi,
    StieltjesString,
    KlString,
    Hamiltonian,
    Ratfun,
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Moments(_) => Kind::Moments,
            Document::Measure(_) => Kind::Measure,
            Document::Jacobi(_) => Kind::Jacobi,
            Document::StieltjesString(_) => Kind::StieltjesString,
            Document::KlString(_) => Kind::KlString,
            Document::Hamiltonian(_) => Kind::Hamiltonian,
            Document::Ratfun(_) => Kind::Ratfun,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(Wire::from(self)).expect("wire documents serialize")
    }

    pub fn from_json(value: Value) -> Result<Self, CliError> {
        let wire: Wire =
            serde_json::from_value(value).map_err(|e| CliError::malformed(e.to_string()))?;
        wire.into_document()
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| CliError::malformed(e.to_string()))?;
        Self::from_json(value)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values print")
    }
}

const INFINITE: &str = "inf";
const TRUNCATED: &str = "truncated";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCell {
    l: String,
    omega: String,
    upsilon: String,
}

/// `cot` is `null` for an angle that is zero mod π.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireInterval {
    length: String,
    cot: Option<String>,
    pi_index: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(
    tag = "kind",
    content = "payload",
    rename_all = "snake_case",
    deny_unknown_fields
)]
enum Wire {
    Moments {
        s: Vec<String>,
    },
    Measure {
        atoms: Vec<(String, String)>,
    },
    Jacobi {
        a: Vec<String>,
        b2: Vec<String>,
        mass: String,
    },
    StieltjesString {
        l: Vec<String>,
        omega: Vec<String>,
        tail: String,
    },
    KlString {
        cells: Vec<WireCell>,
        tail: String,
    },
    Hamiltonian {
        intervals: Vec<WireInterval>,
        truncated: bool,
    },
    Ratfun {
        numerator: Vec<String>,
        denominator: Vec<String>,
    },
}

fn text(x: &Rational) -> String {
    x.to_string()
}

fn texts(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(text).collect()
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(CliError::from)
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>, CliError> {
    xs.iter().map(|s| rational(s)).collect()
}

fn tail_text(end: &StringEnd<Rational>) -> String {
    match end {
        StringEnd::Truncated => TRUNCATED.into(),
        StringEnd::Infinite => INFINITE.into(),
        StringEnd::Finite(l) => text(l),
    }
}

fn tail(s: &str) -> Result<StringEnd<Rational>, CliError> {
    Ok(match s.trim() {
        TRUNCATED => StringEnd::Truncated,
        INFINITE => StringEnd::Infinite,
        other => StringEnd::Finite(rational(other)?),
    })
}

impl From<&Document> for Wire {
    fn from(doc: &Document) -> Self {
        match doc {
            Document::Moments(s) => Wire::Moments {
                s: texts(s.as_slice()),
            },
            Document::Measure(mu) => Wire::Measure {
                atoms: mu.atoms().iter().map(|(x, w)| (text(x), text(w))).collect(),
            },
            Document::Jacobi(j) => Wire::Jacobi {
                a: texts(j.a()),
                b2: texts(j.b2()),
                mass: text(j.mass()),
            },
            Document::StieltjesString(view) => Wire::StieltjesString {
                l: texts(&view.lengths()),
                omega: texts(&view.masses()),
                tail: tail_text(view.string().end()),
            },
            Document::KlString(string) => Wire::KlString {
                cells: string
                    .cells()
                    .iter()
                    .map(|c| WireCell {
                        l: text(&c.l),
                        omega: text(&c.omega),
                        upsilon: text(&c.upsilon),
                    })
                    .collect(),
                tail: tail_text(string.end()),
            },
            Document::Hamiltonian(h) => Wire::Hamiltonian {
                intervals: h
                    .intervals()
                    .iter()
                    .map(|iv| WireInterval {
                        length: match &iv.length {
                            Extent::Finite(l) => text(l),
                            Extent::Infinite => INFINITE.into(),
                        },
                        cot: iv.angle.cot().map(text),
                        pi_index: iv.angle.pi_index(),
                    })
                    .collect(),
                truncated: h.is_truncated(),
            },
            Document::Ratfun(f) => Wire::Ratfun {
                numerator: texts(f.numerator().coeffs()),
                denominator: texts(f.denominator().coeffs()),
            },
        }
    }
}

impl Wire {
    fn into_document(self) -> Result<Document, CliError> {
        Ok(match self {
            Wire::Moments { s } => Document::Moments(MomentSequence::new(rationals(&s)?)?),
            Wire::Measure { atoms } => {
                let atoms = atoms
                    .iter()
                    .map(|(x, w)| Ok((rational(x)?, rational(w)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Document::Measure(DiscreteMeasure::new(atoms)?)
            }
            Wire::Jacobi { a, b2, mass } => Document::Jacobi(JacobiModel::new(
                rationals(&a)?,
                rationals(&b2)?,
                rational(&mass)?,
            )?),
            Wire::StieltjesString { l, omega, tail: t } => {
                if l.len() != omega.len() {
                    return Err(CliError::malformed(format!(
                        "{} lengths but {} masses",
                        l.len(),
                        omega.len()
                    )));
                }
                let zero = Rational::from_integer(0.into());
                let cells = rationals(&l)?
                    .into_iter()
                    .zip(rationals(&omega)?)
                    .map(|(l, w)| Cell::new(l, w, zero.clone()))
                    .collect();
                let string = KreinLangerString::new(cells, tail(&t)?)?;
                Document::StieltjesString(StieltjesView::new(string)?)
            }
            Wire::KlString { cells, tail: t } => {
                let cells = cells
                    .iter()
                    .map(|c| {
                        Ok(Cell::new(
                            rational(&c.l)?,
                            rational(&c.omega)?,
                            rational(&c.upsilon)?,
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Document::KlString(KreinLangerString::new(cells, tail(&t)?)?)
            }
            Wire::Hamiltonian {
                intervals,
                truncated,
            } => {
                let intervals = intervals
                    .iter()
                    .map(|iv| {
                        let length = match iv.length.trim() {
                            INFINITE => Extent::Infinite,
                            l => Extent::Finite(rational(l)?),
                        };
                        let angle = match &iv.cot {
                            Some(c) => AngleData::Cot {
                                cot: rational(c)?,
                                pi_index: iv.pi_index,
                            },
                            None => AngleData::ZeroModPi {
                                pi_index: iv.pi_index,
                            },
                        };
                        Ok(Interval::new(length, angle))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Document::Hamiltonian(Hamiltonian::new(intervals, truncated)?)
            }
            Wire::Ratfun {
                numerator,
                denominator,
            } => Document::Ratfun(RationalFunction::new(
                Polynomial::new(rationals(&numerator)?),
                Polynomial::new(rationals(&denominator)?),
            )?),
        })
    }
}
