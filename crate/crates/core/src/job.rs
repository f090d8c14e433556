//! Job files: line-oriented descriptions of endomorphisms and rows.
//!
//! ```text
//! # comment
//! field = Q                 # or F<p>; defaults to Q
//! vars = x1, x2, x3
//! map x1 = x1^2 - x2^2      # one per variable (degree jobs)
//! rel = <poly>              # row jobs, any number
//! row = <poly>, <poly>, ... # row jobs
//! ```

use std::sync::Arc;

use crate::degree::Endo;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Poly, Ring};
use crate::umrow::{AlgebraPresentation, UnimodularRow};

/// A parsed job file. Polynomials stay as text until a ring is built.
#[derive(Clone, Debug)]
pub struct JobFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    /// `(line, variable, image)`.
    pub maps: Vec<(usize, String, String)>,
    /// `(line, relation)`.
    pub relations: Vec<(usize, String)>,
    /// `(line, entries)`.
    pub row: Option<(usize, Vec<String>)>,
}

fn job_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Job {
        line,
        msg: msg.into(),
    }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| job_err(line, e.to_string())
}

impl JobFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut field = None;
        let mut vars = None;
        let mut maps = Vec::new();
        let mut relations = Vec::new();
        let mut row = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(job_err(line, "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            let mut words = key.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("field"), None, _) => {
                    if field.is_some() {
                        return Err(job_err(line, "duplicate `field` line"));
                    }
                    field = Some(value.parse::<FieldSpec>().map_err(at_line(line))?);
                }
                (Some("vars"), None, _) => {
                    if vars.is_some() {
                        return Err(job_err(line, "duplicate `vars` line"));
                    }
                    vars = Some(split_list(value));
                }
                (Some("map"), Some(var), None) => maps.push((line, var.to_string(), value.to_string())),
                (Some("rel"), None, _) => relations.push((line, value.to_string())),
                (Some("row"), None, _) => {
                    if row.is_some() {
                        return Err(job_err(line, "duplicate `row` line"));
                    }
                    row = Some((line, split_list(value)));
                }
                _ => return Err(job_err(line, format!("unknown directive `{key}`"))),
            }
        }
        let Some(vars) = vars else {
            return Err(job_err(0, "missing `vars` line"));
        };
        Ok(JobFile {
            field: field.unwrap_or(FieldSpec::Rationals),
            vars,
            maps,
            relations,
            row,
        })
    }

    pub fn ring(&self) -> Result<Arc<Ring>> {
        Ring::new(self.vars.iter().cloned(), self.field)
    }

    /// The endomorphism given by the `map` lines; each variable needs
    /// exactly one.
    pub fn endo(&self) -> Result<Endo> {
        let ring = self.ring()?;
        let mut images: Vec<Option<Poly>> = vec![None; ring.nvars()];
        for (line, var, text) in &self.maps {
            let Some(i) = ring.var_index(var) else {
                return Err(job_err(*line, format!("map for undeclared variable `{var}`")));
            };
            if images[i].is_some() {
                return Err(job_err(*line, format!("second map line for `{var}`")));
            }
            images[i] = Some(Poly::parse(&ring, text).map_err(at_line(*line))?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| job_err(0, format!("no map line for `{}`", ring.vars()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Endo::new(images)
    }

    /// The row given by the `row` line over `k[vars]/(rel ...)`.
    pub fn row(&self) -> Result<UnimodularRow> {
        let ring = self.ring()?;
        let relations = self
            .relations
            .iter()
            .map(|(line, text)| Poly::parse(&ring, text).map_err(at_line(*line)))
            .collect::<Result<Vec<_>>>()?;
        let algebra = AlgebraPresentation::new(&ring, relations)?;
        let Some((line, entries)) = &self.row else {
            return Err(job_err(0, "missing `row` line"));
        };
        let entries = entries
            .iter()
            .map(|text| Poly::parse(&ring, text).map_err(at_line(*line)))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(job_err(*line, "empty row"));
        }
        UnimodularRow::new(&algebra, entries)
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
