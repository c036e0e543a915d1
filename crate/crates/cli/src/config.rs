//! Job configuration: a line-oriented document of `[section]` headers and
//! `key = value` lines. `#` starts a comment.
//!
//! ```text
//! [scalars]
//! field = Q
//!
//! [group]
//! kind = symmetric
//! degree = 3
//!
//! [subgroup]
//! generators = (12)
//!
//! [algebra]
//! kind = polynomial
//! degree_cap = 2
//!
//! [action]
//! kind = permute_variables
//! ```
//!
//! Sections and their keys:
//!
//! * `scalars`: `field` is `Q` or `GF(p)`.
//! * `group`: `kind` is `symmetric` or `permutations` (both with `degree`),
//!   `cyclic` or `dihedral` (with `order`). `permutations` also takes
//!   `generators` as `;`-separated cycle words.
//! * `subgroup`: `generators` as `;`-separated element names, or `trivial`
//!   or `whole`.
//! * `algebra`: `kind` is `scalars`, `polynomial` (optional `variables`,
//!   default the permutation degree, and `degree_cap`), `functions`,
//!   `group_algebra` (with `over`, either `group` or `cyclic n` or
//!   `cyclic n ^ m`) or `matrices` (with `size`).
//! * `action`: `kind` is `trivial`, `permute_variables`, `left_translation`,
//!   `conjugation`, `permute_factors` or `invert_odd` (odd permutations act
//!   by inversion on an abelian coefficient group).
//! * `cocycle` (optional): either `chi = elements` for `χ(g) = g` in the
//!   group algebra of `G`, or `unit = <element literal>` for the coboundary
//!   of a unit. `beta` optionally names the target action kind.
//! * `job` (optional): `commands`, a `;`-separated list run by `skewhecke run`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use skewhecke::algebras::{functions, group_algebra, matrix, polynomial, scalar, AlgebraRef, Family, GroupAction};
use skewhecke::groups::{parse_cycles, FiniteGroup, GroupRef, Subgroup};
use skewhecke::hecke::HeckeContext;
use skewhecke::isomorphisms::coboundary_from_unit;
use skewhecke::{Element, Label, ScalarField};
use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: u32 = 2;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: [{section}] {key}: {message}")]
    Value {
        line: usize,
        section: String,
        key: String,
        message: String,
    },
    #[error("[{section}] {key}: missing")]
    Missing { section: String, key: String },
    #[error("[{section}]: {message}")]
    Build { section: String, message: String },
}

type Result<T> = std::result::Result<T, ConfigError>;

const SCHEMA: &[(&str, &[&str])] = &[
    ("scalars", &["field"]),
    ("group", &["kind", "degree", "order", "generators"]),
    ("subgroup", &["generators"]),
    ("algebra", &["kind", "variables", "degree_cap", "over", "size"]),
    ("action", &["kind"]),
    ("cocycle", &["chi", "unit", "beta"]),
    ("job", &["commands"]),
];

const REQUIRED: &[&str] = &["scalars", "group", "subgroup", "algebra", "action"];

/// A parsed configuration. Equality ignores source line numbers.
#[derive(Clone, Debug)]
pub struct JobConfig {
    values: BTreeMap<(usize, usize), String>,
    lines: BTreeMap<(usize, usize), usize>,
}

impl PartialEq for JobConfig {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for JobConfig {}

fn normalize(value: &str) -> String {
    value.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn section_index(name: &str) -> Option<usize> {
    SCHEMA.iter().position(|(s, _)| *s == name)
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut lines = BTreeMap::new();
        let mut seen_sections = Vec::new();
        let mut current: Option<usize> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::Syntax { line, message: "unterminated section header".into() })?
                    .trim();
                let s = section_index(name)
                    .ok_or_else(|| ConfigError::Syntax { line, message: format!("unknown section [{name}]") })?;
                if seen_sections.contains(&s) {
                    return Err(ConfigError::Syntax { line, message: format!("section [{name}] repeated") });
                }
                seen_sections.push(s);
                current = Some(s);
                continue;
            }
            let s = current.ok_or_else(|| ConfigError::Syntax { line, message: "key outside any section".into() })?;
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line, message: "expected key = value".into() })?;
            let key = key.trim();
            let (section, keys) = SCHEMA[s];
            let k = keys.iter().position(|k| *k == key).ok_or_else(|| ConfigError::Syntax {
                line,
                message: format!("unknown key {key:?} in [{section}]"),
            })?;
            if values.insert((s, k), normalize(value)).is_some() {
                return Err(ConfigError::Syntax { line, message: format!("key {key:?} repeated") });
            }
            lines.insert((s, k), line);
        }
        for name in REQUIRED {
            let s = section_index(name).expect("schema section");
            if !seen_sections.contains(&s) {
                return Err(ConfigError::Build { section: (*name).into(), message: "section missing".into() });
            }
        }
        Ok(JobConfig { values, lines })
    }

    /// Canonical text: schema order, one blank line between sections,
    /// whitespace inside values collapsed, comments dropped.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        let mut last = None;
        for (&(s, k), v) in &self.values {
            if last != Some(s) {
                if last.is_some() {
                    out.push('\n');
                }
                out.push_str(&format!("[{}]\n", SCHEMA[s].0));
                last = Some(s);
            }
            out.push_str(&format!("{} = {v}\n", SCHEMA[s].1[k]));
        }
        out
    }

    fn key(section: &str, key: &str) -> (usize, usize) {
        let s = section_index(section).expect("schema section");
        let k = SCHEMA[s].1.iter().position(|x| *x == key).expect("schema key");
        (s, k)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.values.get(&Self::key(section, key)).map(String::as_str)
    }

    fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key).ok_or_else(|| ConfigError::Missing { section: section.into(), key: key.into() })
    }

    fn invalid(&self, section: &str, key: &str, message: impl fmt::Display) -> ConfigError {
        ConfigError::Value {
            line: self.lines.get(&Self::key(section, key)).copied().unwrap_or(0),
            section: section.into(),
            key: key.into(),
            message: message.to_string(),
        }
    }

    fn number(&self, section: &str, key: &str) -> Result<usize> {
        let v = self.require(section, key)?;
        v.parse().map_err(|_| self.invalid(section, key, format!("expected a number, got {v:?}")))
    }

    pub fn commands(&self) -> Vec<String> {
        self.get("job", "commands")
            .map(|c| c.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .unwrap_or_default()
    }

    /// Builds and verifies the context. `cap` overrides `degree_cap`.
    pub fn build(&self, cap: Option<u32>) -> Result<Job> {
        let field: ScalarField =
            self.require("scalars", "field")?.parse().map_err(|e| self.invalid("scalars", "field", e))?;
        let group = self.group()?;
        let subgroup = self.subgroup(&group)?;
        let algebra = self.algebra(field, &group, cap)?;
        let kind = self.require("action", "kind")?;
        let action = make_action(kind, &group, &algebra).map_err(|e| self.invalid("action", "kind", e))?;
        let ctx = HeckeContext::new(&action, &subgroup)
            .map_err(|e| ConfigError::Build { section: "action".into(), message: e.to_string() })?;
        let cocycle = self.cocycle(&ctx)?;
        Ok(Job { ctx, cocycle })
    }

    fn group(&self) -> Result<GroupRef> {
        let kind = self.require("group", "kind")?;
        let g = match kind {
            "symmetric" => FiniteGroup::symmetric(self.number("group", "degree")?),
            "cyclic" => FiniteGroup::cyclic(self.number("group", "order")?),
            "dihedral" => FiniteGroup::dihedral(self.number("group", "order")?),
            "permutations" => {
                let degree = self.number("group", "degree")?;
                let mut gens = Vec::new();
                for word in self.require("group", "generators")?.split(';') {
                    let p = parse_cycles(word.trim(), degree)
                        .ok_or_else(|| self.invalid("group", "generators", format!("bad permutation {word:?}")))?;
                    gens.push(p);
                }
                FiniteGroup::permutation_group(degree, &gens)
            }
            other => return Err(self.invalid("group", "kind", format!("unknown group kind {other:?}"))),
        };
        Ok(Arc::new(g.map_err(|e| self.invalid("group", "kind", e))?))
    }

    fn subgroup(&self, g: &GroupRef) -> Result<Subgroup> {
        let spec = self.require("subgroup", "generators")?;
        match spec {
            "trivial" => Ok(Subgroup::trivial(g)),
            "whole" => Ok(Subgroup::whole(g)),
            _ => {
                let mut gens = Vec::new();
                for word in spec.split(';') {
                    gens.push(g.parse_element(word.trim()).map_err(|e| self.invalid("subgroup", "generators", e))?);
                }
                Subgroup::generated(g, &gens).map_err(|e| self.invalid("subgroup", "generators", e))
            }
        }
    }

    fn algebra(&self, field: ScalarField, g: &GroupRef, cap: Option<u32>) -> Result<AlgebraRef> {
        let kind = self.require("algebra", "kind")?;
        let built = match kind {
            "scalars" => Ok(scalar(field)),
            "functions" => Ok(functions(field, g)),
            "polynomial" => {
                let nvars = match self.get("algebra", "variables") {
                    Some(_) => self.number("algebra", "variables")?,
                    None => g
                        .degree()
                        .ok_or_else(|| self.invalid("algebra", "kind", "variables needed for a non-permutation group"))?,
                };
                let cap = match (cap, self.get("algebra", "degree_cap")) {
                    (Some(c), _) => c,
                    (None, Some(_)) => self.number("algebra", "degree_cap")? as u32,
                    (None, None) => DEFAULT_DEGREE_CAP,
                };
                polynomial(field, nvars, cap)
            }
            "group_algebra" => {
                let over = self.require("algebra", "over")?;
                let k = coefficient_group(over, g).map_err(|e| self.invalid("algebra", "over", e))?;
                Ok(group_algebra(field, &k))
            }
            "matrices" => matrix(field, self.number("algebra", "size")?),
            other => return Err(self.invalid("algebra", "kind", format!("unknown algebra kind {other:?}"))),
        };
        built.map_err(|e| self.invalid("algebra", "kind", e))
    }

    fn cocycle(&self, ctx: &HeckeContext) -> Result<Option<CocycleSpec>> {
        let g = ctx.group();
        let a = ctx.algebra();
        let chi = match (self.get("cocycle", "chi"), self.get("cocycle", "unit")) {
            (None, None) => return Ok(None),
            (Some(_), Some(_)) => {
                return Err(self.invalid("cocycle", "unit", "give either chi or unit, not both"));
            }
            (Some("elements"), None) => {
                match a.family() {
                    Family::GroupAlgebra(k) if Arc::ptr_eq(&k, g) => {}
                    _ => return Err(self.invalid("cocycle", "chi", "chi = elements needs the group algebra of G")),
                }
                let chi: Vec<Element> = g.elements().map(|x| Element::basis(Label::Index(x), ctx.field())).collect();
                chi
            }
            (Some(other), None) => return Err(self.invalid("cocycle", "chi", format!("unknown cocycle {other:?}"))),
            (None, Some(u)) => {
                let u = a.parse(u).map_err(|e| self.invalid("cocycle", "unit", e))?;
                coboundary_from_unit(ctx.action(), &u).map_err(|e| self.invalid("cocycle", "unit", e))?
            }
        };
        let beta = match self.get("cocycle", "beta") {
            None => None,
            Some(kind) => Some(make_action(kind, g, a).map_err(|e| self.invalid("cocycle", "beta", e))?),
        };
        Ok(Some(CocycleSpec { chi, beta }))
    }
}

impl fmt::Display for JobConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

fn coefficient_group(over: &str, g: &GroupRef) -> std::result::Result<GroupRef, String> {
    if over == "group" {
        return Ok(g.clone());
    }
    let rest = over.strip_prefix("cyclic").ok_or_else(|| format!("unknown coefficient group {over:?}"))?;
    let (n, m) = match rest.split_once('^') {
        Some((n, m)) => (n.trim(), Some(m.trim())),
        None => (rest.trim(), None),
    };
    let n: usize = n.parse().map_err(|_| format!("bad order in {over:?}"))?;
    let c = FiniteGroup::cyclic(n).map_err(|e| e.to_string())?;
    let k = match m {
        None => c,
        Some(m) => {
            let m: usize = m.parse().map_err(|_| format!("bad exponent in {over:?}"))?;
            FiniteGroup::power(&c, m).map_err(|e| e.to_string())?
        }
    };
    Ok(Arc::new(k))
}

fn is_odd(g: &GroupRef, x: usize) -> Option<bool> {
    let p = g.permutation(x)?;
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for i in 0..p.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    Some((p.len() - cycles) % 2 == 1)
}

pub fn make_action(kind: &str, g: &GroupRef, a: &AlgebraRef) -> std::result::Result<GroupAction, String> {
    let built = match kind {
        "trivial" => Ok(GroupAction::trivial(g, a)),
        "permute_variables" => GroupAction::permute_variables(g, a),
        "left_translation" => GroupAction::left_translation(g, a),
        "conjugation" => GroupAction::conjugation(g, a),
        "permute_factors" => GroupAction::permute_factors(g, a),
        "invert_odd" => {
            let Family::GroupAlgebra(k) = a.family() else {
                return Err("invert_odd needs a group algebra".into());
            };
            if !k.is_abelian() {
                return Err("invert_odd needs an abelian coefficient group".into());
            }
            let mut theta = Vec::with_capacity(g.order());
            for x in g.elements() {
                let odd = is_odd(g, x).ok_or("invert_odd needs a permutation group")?;
                theta.push(k.elements().map(|y| if odd { k.inv(y) } else { y }).collect());
            }
            GroupAction::by_automorphisms(g, a, theta, "invert_odd")
        }
        other => return Err(format!("unknown action kind {other:?}")),
    };
    built.map_err(|e| e.to_string())
}

pub struct CocycleSpec {
    pub chi: Vec<Element>,
    pub beta: Option<GroupAction>,
}

pub struct Job {
    pub ctx: HeckeContext,
    pub cocycle: Option<CocycleSpec>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLASSICAL: &str = "[scalars]\nfield = Q\n\n[group]\nkind = symmetric\ndegree = 3\n\n[subgroup]\ngenerators = (12)\n\n[algebra]\nkind = scalars\n\n[action]\nkind = trivial\n";

    #[test]
    fn canonical_form_round_trips() {
        let messy = "# classical\n[group]\n degree=3\nkind =   symmetric\n[scalars]\nfield=Q\n[subgroup]\ngenerators = (12)   # S2\n[action]\nkind=trivial\n[algebra]\nkind = scalars\n";
        let c = JobConfig::parse(messy).unwrap();
        assert_eq!(c.canonical(), CLASSICAL);
        assert_eq!(JobConfig::parse(&c.canonical()).unwrap(), c);
    }

    #[test]
    fn classical_context_has_two_basis_elements() {
        let job = JobConfig::parse(CLASSICAL).unwrap().build(None).unwrap();
        assert_eq!(job.ctx.dimension(), 2);
        assert!(job.cocycle.is_none());
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let bad = CLASSICAL.replace("generators = (12)", "generators = (14)");
        let err = JobConfig::parse(&bad).unwrap().build(None).err().expect("invalid generator");
        assert!(err.to_string().starts_with("line 9: [subgroup] generators"), "{err}");
        let err = JobConfig::parse("[scalars]\nfield = Q\ncolour = red\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: unknown key \"colour\" in [scalars]");
    }

    #[test]
    fn missing_section_is_reported() {
        let err = JobConfig::parse("[scalars]\nfield = Q\n").unwrap_err();
        assert!(err.to_string().contains("[group]"), "{err}");
    }

    #[test]
    fn degree_cap_override() {
        let text = CLASSICAL
            .replace("kind = scalars", "kind = polynomial\ndegree_cap = 2")
            .replace("kind = trivial", "kind = permute_variables");
        let c = JobConfig::parse(&text).unwrap();
        assert_eq!(c.build(Some(1)).unwrap().ctx.dimension(), 7);
    }
}
