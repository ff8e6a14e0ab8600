use std::str::FromStr;

use moment_models::canonical::{
    euclid_decompose, hamiltonian_from_moments, hamiltonian_from_moments_max, hamiltonian_to_kl,
    kl_to_hamiltonian, weyl_function, weyl_principal, weyl_tail, weyl_tail_recursion,
};
use moment_models::exact_core::{Polynomial, RationalFunction};
use moment_models::jacobi_weyl::{
    m_continued_fraction, m_poly_ratio, m_resolvent, moment_match_check, rational_quadrature,
    weyl_ratfun,
};
use moment_models::moments::{classify, moments_from_measure, Classification, MomentSequence};
use moment_models::orthopoly::{jacobi_from_moments, jacobi_from_moments_max, recurrence_polys};
use moment_models::strings::{
    kl_from_moments, kl_from_moments_max, kl_from_pade, m_truncated, moments_from_kl,
    singularity_diagnostic, stieltjes_from_moments, stieltjes_from_moments_max, string_weyl_ratfun,
    trace_sums, StieltjesView, Verdict,
};
use moment_models::{
    ComplexValue, Error, Hamiltonian, Jacobi, KlString, Measure, Moments, RatFun, Rational,
};
use serde_json::{json, Map, Number, Value};

use crate::document::{Document, Kind};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Parses `"a+bi"`, `"2i"`, `"-1+i"` and similar complex literals.
pub fn parse_complex(text: &str) -> Result<ComplexValue> {
    ComplexValue::from_str(text.trim())
        .map_err(|_| CliError::malformed(format!("not a complex number: {text:?}")))
}

/// A float with 17 significant digits; non-finite values are failures.
pub fn float(x: f64) -> Result<Value> {
    if !x.is_finite() {
        return Err(CliError::numerical(format!("non-finite value {x}")));
    }
    let number = Number::from_str(&format!("{x:.16e}")).expect("formatted floats are JSON numbers");
    Ok(Value::Number(number))
}

pub fn complex(z: ComplexValue) -> Result<Value> {
    Ok(Value::Array(vec![float(z.re)?, float(z.im)?]))
}

fn texts(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn kind_name(kind: Kind) -> Value {
    serde_json::to_value(kind).expect("kinds serialize")
}

fn pole_sum(mu: &Measure) -> Result<RatFun> {
    let minus_one = Rational::from_integer((-1).into());
    let mut f = RatFun::zero();
    for (x, w) in mu.atoms() {
        let term = RationalFunction::new(
            Polynomial::constant(w.clone()),
            Polynomial::linear(x.clone(), minus_one.clone()),
        )?;
        f = &f + &term;
    }
    Ok(f)
}

/// `−q_N/p_N` of the whole finite Jacobi matrix.
fn jacobi_ratfun(jacobi: &Jacobi) -> Result<RatFun> {
    let (p, q) = recurrence_polys(jacobi, jacobi.len())?;
    let n = jacobi.len();
    Ok(RationalFunction::new(-q[n].clone(), p[n].clone())?)
}

/// The exact Weyl function when the document determines one.
fn exact_ratfun(doc: &Document) -> Result<Option<RatFun>> {
    Ok(match doc {
        Document::Measure(mu) => Some(pole_sum(mu)?),
        Document::Jacobi(j) => Some(jacobi_ratfun(j)?),
        Document::Ratfun(f) => Some(f.clone()),
        Document::Moments(_) => None,
        _ => match string_of(doc)? {
            Some(string) if string.is_finished() => Some(string_weyl_ratfun(&string)?),
            _ => None,
        },
    })
}

/// The string of a string-like document, by the direct maps.
fn string_of(doc: &Document) -> Result<Option<KlString>> {
    Ok(match doc {
        Document::KlString(s) => Some(s.clone()),
        Document::StieltjesString(v) => Some(v.string().clone()),
        Document::Hamiltonian(h) => Some(hamiltonian_to_kl(h)?),
        Document::Ratfun(f) => Some(euclid_decompose(f)?),
        _ => None,
    })
}

/// Moments of any document. Exact Weyl functions of degree `N` give
/// `s_0..s_{2·max(N, depth)}`; truncated strings give the stabilized prefix.
pub fn to_moments(doc: &Document, depth: Option<usize>) -> Result<Moments> {
    if let Document::Moments(s) = doc {
        return Ok(match depth {
            Some(d) if 2 * d + 1 < s.len() => s.prefix(2 * d + 1)?,
            _ => s.clone(),
        });
    }
    if let Document::Measure(mu) = doc {
        let n = mu.len().max(depth.unwrap_or(0));
        return Ok(moments_from_measure(mu, 2 * n + 1)?);
    }
    if let Some(f) = exact_ratfun(doc)? {
        let degree = f.denominator().degree().max(0) as usize;
        let n = degree.max(depth.unwrap_or(0));
        let coeffs = f.series_at_infinity(2 * n + 1)?;
        return Ok(MomentSequence::new(
            coeffs.into_iter().map(|c| -c).collect(),
        )?);
    }
    let string = string_of(doc)?.expect("every other kind has a string");
    let top = string.len().saturating_sub(1);
    let depth = depth.map_or(top, |d| d.min(top));
    Ok(moments_from_kl(&string, depth)?.moments)
}

fn truncate_hamiltonian(h: Hamiltonian, depth: Option<usize>) -> Result<Hamiltonian> {
    match depth {
        Some(0) => Err(Error::DepthTooSmall { depth: 0, min: 1 }.into()),
        Some(d) if d < h.len() => Ok(Hamiltonian::new(h.intervals()[..d].to_vec(), true)?),
        _ => Ok(h),
    }
}

fn stieltjes(string: KlString) -> Result<StieltjesView<Rational>> {
    StieltjesView::new(string).map_err(|e| CliError::violation(e.to_string()))
}

fn require_rank(cls: &Classification) -> Result<usize> {
    cls.finite_rank.ok_or_else(|| {
        CliError::violation(format!(
            "no finite rank is visible through depth {}",
            cls.examined_depth
        ))
    })
}

/// Largest `n` with `m_n` determined: `s_{2n}` present and `Δ_{0,n-1} > 0`.
fn weyl_depth(s: &Moments, cls: &Classification) -> usize {
    match cls.finite_rank {
        Some(n) => n,
        None => ((s.len() - 1) / 2).min(cls.strictly_positive_through + 1),
    }
}

pub fn convert(doc: &Document, to: Kind, depth: Option<usize>) -> Result<Document> {
    if doc.kind() == to && depth.is_none() {
        return Ok(doc.clone());
    }
    match to {
        Kind::Moments => Ok(Document::Moments(to_moments(doc, depth)?)),
        Kind::Measure => {
            if let Document::Measure(mu) = doc {
                return Ok(Document::Measure(mu.clone()));
            }
            let s = to_moments(doc, None)?;
            let rank = require_rank(&classify(&s)?)?;
            match rational_quadrature(&s, rank)? {
                Some(mu) => Ok(Document::Measure(mu)),
                None => Err(CliError::numerical("the measure has irrational atoms")),
            }
        }
        Kind::Jacobi => {
            let s = to_moments(doc, depth)?;
            let cls = classify(&s)?;
            let jacobi = match depth {
                Some(0) => return Err(Error::DepthTooSmall { depth: 0, min: 1 }.into()),
                Some(d) => jacobi_from_moments(&s, (d - 1).min(cls.max_jacobi_index()))?,
                None => jacobi_from_moments_max(&s)?,
            };
            Ok(Document::Jacobi(jacobi))
        }
        Kind::StieltjesString => {
            if let Some(string) = string_of(doc)? {
                let string = depth.map_or(string.clone(), |d| string.prefix(d));
                return Ok(Document::StieltjesString(stieltjes(string)?));
            }
            let s = to_moments(doc, depth)?;
            let view = match depth {
                Some(d) => stieltjes_from_moments(&s, d)?,
                None => stieltjes_from_moments_max(&s)?,
            };
            Ok(Document::StieltjesString(view))
        }
        Kind::KlString => {
            if let Some(string) = string_of(doc)? {
                return Ok(Document::KlString(
                    depth.map_or(string.clone(), |d| string.prefix(d)),
                ));
            }
            let s = to_moments(doc, depth)?;
            let string = match depth {
                Some(d) => kl_from_moments(&s, d)?,
                None => kl_from_moments_max(&s)?,
            };
            Ok(Document::KlString(string))
        }
        Kind::Hamiltonian => {
            let h = match doc {
                Document::Hamiltonian(h) => h.clone(),
                _ => match string_of(doc)? {
                    Some(string) => kl_to_hamiltonian(&string)?,
                    None => {
                        let s = to_moments(doc, depth)?;
                        match depth {
                            Some(d) => hamiltonian_from_moments(&s, d)?,
                            None => hamiltonian_from_moments_max(&s)?,
                        }
                    }
                },
            };
            Ok(Document::Hamiltonian(truncate_hamiltonian(h, depth)?))
        }
        Kind::Ratfun => {
            if let (Some(f), None) = (exact_ratfun(doc)?, depth) {
                return Ok(Document::Ratfun(f));
            }
            let s = to_moments(doc, None)?;
            let cls = classify(&s)?;
            let max = weyl_depth(&s, &cls);
            let n = depth.map_or(max, |d| d.min(max));
            Ok(Document::Ratfun(weyl_ratfun(&s, n)?))
        }
    }
}

pub fn classify_document(doc: &Document) -> Result<Value> {
    let s = to_moments(doc, None)?;
    let cls = classify(&s)?;
    Ok(json!({
        "kind": kind_name(doc.kind()),
        "moments": s.len(),
        "classification": classification_json(&cls),
    }))
}

fn classification_json(cls: &Classification) -> Value {
    json!({
        "positive": cls.positive,
        "strictly_positive_through": cls.strictly_positive_through,
        "double_positive": cls.double_positive,
        "strictly_double_positive_through": cls.strictly_double_positive_through,
        "finite_rank": cls.finite_rank,
        "examined_depth": cls.examined_depth,
    })
}

/// Weyl function of the document at one point, by its natural route.
fn weyl_value(doc: &Document, z: ComplexValue, depth: Option<usize>) -> Result<ComplexValue> {
    if z.im == 0.0 {
        return Err(Error::RealSpectralParameter.into());
    }
    Ok(match doc {
        Document::Moments(s) => {
            let cls = classify(s)?;
            let n = depth
                .unwrap_or_else(|| weyl_depth(s, &cls))
                .min(weyl_depth(s, &cls));
            if n == 0 {
                return Err(Error::DepthTooSmall { depth: 0, min: 1 }.into());
            }
            m_resolvent(&jacobi_from_moments(s, n - 1)?, n, z)?
        }
        Document::Measure(mu) => pole_sum(mu)?.eval_complex(z),
        Document::Ratfun(f) => f.eval_complex(z),
        Document::Jacobi(j) => m_resolvent(j, depth.unwrap_or(j.len()), z)?,
        Document::Hamiltonian(h) => match depth {
            Some(0) => return Err(Error::DepthTooSmall { depth: 0, min: 1 }.into()),
            Some(d) => weyl_principal(h, z, d - 1)?,
            None if h.is_truncated() => weyl_tail(h, z, 0)?,
            None => weyl_function(h, z)?,
        },
        Document::KlString(_) | Document::StieltjesString(_) => {
            let string = string_of(doc)?.expect("string documents");
            let top = if string.is_finished() {
                string.len()
            } else {
                string.len() - 1
            };
            m_truncated(&string, depth.unwrap_or(top), z)?.0
        }
    })
}

pub fn mfun(doc: &Document, zs: &[ComplexValue], depth: Option<usize>) -> Result<Value> {
    let samples = zs
        .iter()
        .map(|&z| Ok(json!({ "z": complex(z)?, "m": complex(weyl_value(doc, z, depth)?)? })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "kind": kind_name(doc.kind()), "samples": samples }))
}

/// Coefficients `c_1, c_2, …` of `m(z) = Σ c_k z^{-k}`.
pub fn expand(doc: &Document, depth: Option<usize>) -> Result<Value> {
    let f = match convert(doc, Kind::Ratfun, None)? {
        Document::Ratfun(f) => f,
        _ => unreachable!("conversion to a rational function"),
    };
    let degree = f.denominator().degree().max(0) as usize;
    let terms = 2 * depth.unwrap_or(degree) + 1;
    Ok(json!({ "terms": terms, "coefficients": texts(&f.series_at_infinity(terms)?) }))
}

pub fn moments(doc: &Document, depth: Option<usize>) -> Result<Document> {
    Ok(Document::Moments(to_moments(doc, depth)?))
}

/// Converts to `via` and back; moment documents agree when one is a prefix
/// of the other.
pub fn roundtrip(doc: &Document, via: Kind, depth: Option<usize>) -> Result<Value> {
    let mid = convert(doc, via, depth)?;
    let back = convert(&mid, doc.kind(), None)?;
    let exact = match (doc, &back) {
        (Document::Moments(a), Document::Moments(b)) => {
            let n = a.len().min(b.len());
            a.as_slice()[..n] == b.as_slice()[..n]
        }
        _ => back == *doc,
    };
    Ok(json!({
        "via": kind_name(via),
        "exact": exact,
        "intermediate": mid.to_json(),
        "recovered": back.to_json(),
    }))
}

fn max_deviation(values: &[ComplexValue]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in values {
        for b in values {
            worst = worst.max((a - b).norm() / b.norm().max(f64::MIN_POSITIVE));
        }
    }
    worst
}

pub fn report(doc: &Document, depth: Option<usize>, zs: &[ComplexValue]) -> Result<Value> {
    let s = to_moments(doc, None)?;
    let cls = classify(&s)?;
    let max = weyl_depth(&s, &cls);
    let n = depth.map_or(max, |d| d.min(max));
    if n == 0 {
        return Err(Error::DepthTooSmall { depth: 0, min: 1 }.into());
    }
    let jacobi = jacobi_from_moments(&s, n - 1)?;
    let pade = kl_from_pade(&s, n)?;
    let pade_h = kl_to_hamiltonian(&pade)?;
    let mut weyl = Vec::with_capacity(zs.len());
    for &z in zs {
        let (string_cf, string_ode) = m_truncated(&pade, pade.len(), z)?;
        let routes = [
            ("resolvent", m_resolvent(&jacobi, n, z)?),
            ("poly_ratio", m_poly_ratio(&s, n, z)?),
            ("jacobi_cf", m_continued_fraction(&jacobi, n, z)?),
            ("string_cf", string_cf),
            ("string_ode", string_ode),
            ("transfer", weyl_function(&pade_h, z)?),
            ("transfer_recursion", weyl_tail_recursion(&pade_h, z, 0)?),
        ];
        let mut values = Map::new();
        for (name, m) in &routes {
            values.insert((*name).into(), complex(*m)?);
        }
        let deviation = max_deviation(&routes.map(|r| r.1));
        weyl.push(
            json!({ "z": complex(z)?, "routes": values, "max_deviation": float(deviation)? }),
        );
    }
    let pade_residuals = texts(&moment_match_check(&s, n)?);

    let string = kl_from_moments(&s, n).or_else(|_| kl_from_moments_max(&s))?;
    let mut trace = Vec::new();
    for j in 0..string.len() {
        match trace_sums(&s, &string, j) {
            Ok(r) => trace.push(json!({
                "point": j,
                "position": r.position.to_string(),
                "mass": r.mass.to_string(),
                "quadratic": r.quadratic.to_string(),
            })),
            Err(Error::InsufficientMoments { .. } | Error::MismatchedInputs(_)) => break,
            Err(e) => return Err(e.into()),
        }
    }
    let diagnostic = singularity_diagnostic(&string, n);
    let trend = match diagnostic.verdict {
        Verdict::Singular => "singular",
        Verdict::RegularSoFar => "regular so far",
        Verdict::DivergenceDetected => "divergence detected",
    };
    let verdict = match cls.finite_rank {
        Some(rank) => format!("finite rank {rank}, determinate"),
        None if diagnostic.verdict == Verdict::DivergenceDetected => format!(
            "no finite rank through depth {}; the size series grows, consistent with determinacy",
            cls.examined_depth
        ),
        None => format!(
            "no finite rank through depth {}; determinacy undecided",
            cls.examined_depth
        ),
    };
    Ok(json!({
        "kind": kind_name(doc.kind()),
        "depth": n,
        "classification": classification_json(&cls),
        "verdict": verdict,
        "weyl": weyl,
        "pade_residuals": pade_residuals,
        "trace_residuals": trace,
        "trajectory": texts(&diagnostic.trajectory),
        "trend": trend,
    }))
}
