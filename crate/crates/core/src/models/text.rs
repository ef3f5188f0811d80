//! `flavor=b4 theory{p0=B p1=N} consts{$c=B $d=1} default=N assign{v0=1}`

use std::collections::BTreeMap;

use thiserror::Error;

use crate::manyvalued::{Flavor, TruthValue, Valuation, ValuationError};
use crate::syntax::Var;

use super::{build_model, Assignment, ExtensionalModel, ModelError, ModelKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelTextError {
    #[error("missing `flavor=` field")]
    MissingFlavor,
    #[error("unknown model flavor `{0}` (expected classical, k3, p3, b4, unit-empty or unit-full)")]
    UnknownFlavor(String),
    #[error("unterminated `{0}{{` block")]
    Unterminated(String),
    #[error("unexpected field `{0}`")]
    UnknownField(String),
    #[error("field `{0}` given twice")]
    Repeated(String),
    #[error("malformed entry `{0}`")]
    BadEntry(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Default)]
struct Fields<'a> {
    flavor: Option<&'a str>,
    theory: Option<&'a str>,
    consts: Option<&'a str>,
    assign: Option<&'a str>,
    default: Option<&'a str>,
}

fn set<'a>(slot: &mut Option<&'a str>, name: &str, value: &'a str) -> Result<(), ModelTextError> {
    if slot.replace(value).is_some() {
        return Err(ModelTextError::Repeated(name.to_string()));
    }
    Ok(())
}

fn split_fields(text: &str) -> Result<Fields<'_>, ModelTextError> {
    let mut fields = Fields::default();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let key_len = rest.find(|c: char| c == '=' || c == '{' || c.is_whitespace()).unwrap_or(rest.len());
        let key = &rest[..key_len];
        let after = &rest[key_len..];
        let (value, remaining) = if let Some(body) = after.strip_prefix('{') {
            let close = body.find('}').ok_or_else(|| ModelTextError::Unterminated(key.to_string()))?;
            (&body[..close], &body[close + 1..])
        } else if let Some(body) = after.strip_prefix('=') {
            let end = body.find(char::is_whitespace).unwrap_or(body.len());
            (&body[..end], &body[end..])
        } else {
            return Err(ModelTextError::UnknownField(key.to_string()));
        };
        let slot = match key {
            "flavor" => &mut fields.flavor,
            "theory" => &mut fields.theory,
            "consts" => &mut fields.consts,
            "assign" => &mut fields.assign,
            "default" => &mut fields.default,
            _ => return Err(ModelTextError::UnknownField(key.to_string())),
        };
        set(slot, key, value)?;
        rest = remaining.trim_start();
    }
    Ok(fields)
}

fn entries<'a>(body: &'a str, prefix: char) -> impl Iterator<Item = Result<(&'a str, TruthValue), ModelTextError>> + 'a {
    body.split_whitespace().map(move |token| {
        let bad = || ModelTextError::BadEntry(token.to_string());
        let (lhs, rhs) = token.split_once('=').ok_or_else(bad)?;
        let name = lhs.strip_prefix(prefix).filter(|n| !n.is_empty()).ok_or_else(bad)?;
        Ok((name, rhs.parse::<TruthValue>()?))
    })
}

/// Parses a model description and the assignment it carries. Without
/// `default=` the assignment defaults to the first element of the universe.
pub fn parse_model_description(text: &str) -> Result<(ExtensionalModel, Assignment), ModelTextError> {
    let fields = split_fields(text)?;
    let flavor = fields.flavor.ok_or(ModelTextError::MissingFlavor)?;
    let kind = match flavor.to_ascii_lowercase().as_str() {
        "unit-empty" => ModelKind::UnitEmpty,
        "unit-full" => ModelKind::UnitFull,
        other => ModelKind::Flavored(other.parse().map_err(|_| ModelTextError::UnknownFlavor(flavor.to_string()))?),
    };

    let model = match kind {
        ModelKind::UnitEmpty => ExtensionalModel::unit_empty(),
        ModelKind::UnitFull => ExtensionalModel::unit_full(),
        ModelKind::Flavored(fl) => {
            let theory = Valuation::parse(fields.theory.unwrap_or(""), Flavor::B4)?;
            let mut consts = BTreeMap::new();
            for entry in entries(fields.consts.unwrap_or(""), '$') {
                let (name, t) = entry?;
                if consts.insert(name.to_string(), t).is_some() {
                    return Err(ModelTextError::Repeated(format!("${name}")));
                }
            }
            build_model(fl, theory, consts)?
        }
    };

    let default = match fields.default {
        Some(d) => d.parse::<TruthValue>()?,
        None => model.universe()[0],
    };
    let mut gamma = Assignment::constant(default);
    for entry in entries(fields.assign.unwrap_or(""), 'v') {
        let (index, t) = entry?;
        let index: u32 = index.parse().map_err(|_| ModelTextError::BadEntry(format!("v{index}")))?;
        gamma = gamma.with(Var(index), t);
    }
    model.check_assignment(&gamma)?;
    Ok((model, gamma))
}
