//! Key-value graph configuration files.
//!
//! ```text
//! # modes as a Cartesian product ...
//! spatial_orders = [(0,7),(1,6)]
//! j_min = 0
//! j_max = 2
//! k_values = [1, -1]
//! kinds = signal,idler
//! # ... or listed one by one (the two styles cannot be mixed)
//! mode.0 = signal (0,7) 0 1
//!
//! pump.0.spatial = (0,14)
//! pump.0.P = +1
//! pump.0.pairs = [((0,7),(0,7))]     # optional; default couples equal orders
//! pump.0.amplitude = 1               # optional, default 1
//!
//! pm.chi = 1                         # optional phase-modulation ladder
//! focus = signal (0,7) 0 1           # optional: keep only this mode's component
//! ```
//!
//! Blank lines and `#` comments are ignored. Every key may appear once.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hgraph::{add_phase_modulation, build_g_downconversion, GMatrix, PmSpec};
use crate::modes::{enumerate_modes, FieldKind, ModeId, ModeSet, PumpComponent, PumpSpec, Spatial};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphConfig {
    pub modes: ModeSet,
    pub pumps: PumpSpec,
    pub pm_chi: Option<f64>,
    pub focus: Option<ModeId>,
}

impl GraphConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let entries = collect_entries(text)?;
        let get = |key: &str| entries.get(key).map(|(l, v)| (*l, v.as_str()));

        let explicit: Vec<_> = entries
            .iter()
            .filter(|(k, _)| k.starts_with("mode."))
            .collect();
        let cartesian_keys = ["spatial_orders", "j_min", "j_max", "k_values", "kinds"];
        let modes = if explicit.is_empty() {
            let mut parts = Vec::new();
            for key in cartesian_keys {
                parts.push(get(key).ok_or_else(|| Error::Config {
                    line: 0,
                    key: key.into(),
                    msg: "missing".into(),
                })?);
            }
            let spatial = with_key(parts[0], "spatial_orders", parse_spatial_list)?;
            let j_min = with_key(parts[1], "j_min", parse_int)?;
            let j_max = with_key(parts[2], "j_max", parse_int)?;
            let k_values = with_key(parts[3], "k_values", parse_int_list)?;
            let kinds = with_key(parts[4], "kinds", parse_kinds)?;
            with_key(parts[0], "spatial_orders", |_| {
                enumerate_modes(&spatial, j_min..=j_max, &k_values, &kinds)
            })?
        } else {
            if let Some(key) = cartesian_keys.iter().find(|k| entries.contains_key(**k)) {
                let (line, _) = entries[*key];
                return Err(Error::Config {
                    line,
                    key: (*key).into(),
                    msg: "cannot be combined with mode.N entries".into(),
                });
            }
            let mut numbered = Vec::new();
            for (key, (line, value)) in explicit {
                let idx: usize = key["mode.".len()..].parse().map_err(|_| Error::Config {
                    line: *line,
                    key: key.clone(),
                    msg: "expected mode.<index>".into(),
                })?;
                let m = with_key((*line, value), key, parse_mode)?;
                numbered.push((idx, *line, key.clone(), m));
            }
            numbered.sort_by_key(|e| e.0);
            for (expect, e) in numbered.iter().enumerate() {
                if e.0 != expect {
                    return Err(Error::Config {
                        line: e.1,
                        key: e.2.clone(),
                        msg: format!("mode indices must run 0..N, expected mode.{expect}"),
                    });
                }
            }
            let (line, key) = (numbered[0].1, numbered[0].2.clone());
            ModeSet::new(numbered.into_iter().map(|e| e.3).collect()).map_err(|e| {
                Error::Config {
                    line,
                    key,
                    msg: e.to_string(),
                }
            })?
        };

        let pumps = parse_pumps(&entries)?;

        let pm_chi = match get("pm.chi") {
            Some(p) => Some(with_key(p, "pm.chi", parse_real)?),
            None => None,
        };
        let focus = match get("focus") {
            Some(p) => {
                let m = with_key(p, "focus", parse_mode)?;
                if modes.index_of(&m).is_none() {
                    return Err(Error::Config {
                        line: p.0,
                        key: "focus".into(),
                        msg: format!("mode `{m}` is not in the mode set"),
                    });
                }
                Some(m)
            }
            None => None,
        };

        for key in entries.keys() {
            let known = cartesian_keys.contains(&key.as_str())
                || key.starts_with("mode.")
                || key.starts_with("pump.")
                || key == "pm.chi"
                || key == "focus";
            if !known {
                return Err(Error::Config {
                    line: entries[key].0,
                    key: key.clone(),
                    msg: "unknown key".into(),
                });
            }
        }

        Ok(GraphConfig {
            modes,
            pumps,
            pm_chi,
            focus,
        })
    }

    /// Down-conversion matrix, plus the phase-modulation ladder when
    /// configured, restricted to the focus component when one is named.
    pub fn build<T: Real>(&self) -> Result<GMatrix<T>> {
        let mut g = build_g_downconversion::<T>(&self.pumps, &self.modes)?;
        if let Some(chi) = self.pm_chi {
            g = add_phase_modulation(&g, &PmSpec::new(T::lit(chi))?)?;
        }
        if let Some(f) = &self.focus {
            let idx = self.modes.index_of(f).expect("validated at parse time");
            g = g.component_of(idx);
        }
        Ok(g)
    }
}

type Entries = BTreeMap<String, (usize, String)>;

fn collect_entries(text: &str) -> Result<Entries> {
    let mut entries = Entries::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| Error::Config {
            line,
            key: body.into(),
            msg: "expected `key = value`".into(),
        })?;
        let key = key.trim().to_string();
        if let Some((prev, _)) = entries.get(&key) {
            return Err(Error::Config {
                line,
                key,
                msg: format!("duplicate key (first set on line {prev})"),
            });
        }
        entries.insert(key, (line, value.trim().to_string()));
    }
    Ok(entries)
}

fn with_key<V>(
    (line, value): (usize, &str),
    key: &str,
    parse: impl FnOnce(&str) -> Result<V>,
) -> Result<V> {
    parse(value).map_err(|e| Error::Config {
        line,
        key: key.into(),
        msg: match e {
            Error::Config { msg, .. } => msg,
            other => other.to_string(),
        },
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config {
        line: 0,
        key: String::new(),
        msg: msg.into(),
    }
}

fn parse_pumps(entries: &Entries) -> Result<PumpSpec> {
    let mut ids = std::collections::BTreeSet::new();
    for (key, (line, _)) in entries.iter().filter(|(k, _)| k.starts_with("pump.")) {
        let rest = &key["pump.".len()..];
        let (id, field) = rest.split_once('.').ok_or_else(|| Error::Config {
            line: *line,
            key: key.clone(),
            msg: "expected pump.<index>.<field>".into(),
        })?;
        let id: usize = id.parse().map_err(|_| Error::Config {
            line: *line,
            key: key.clone(),
            msg: "pump index must be a non-negative integer".into(),
        })?;
        if !["spatial", "P", "pairs", "amplitude"].contains(&field) {
            return Err(Error::Config {
                line: *line,
                key: key.clone(),
                msg: "unknown pump field".into(),
            });
        }
        ids.insert(id);
    }
    let mut comps = Vec::new();
    for id in ids {
        let field = |f: &str| {
            let key = format!("pump.{id}.{f}");
            entries.get(&key).map(|(l, v)| ((*l, v.as_str()), key))
        };
        let (spatial_at, spatial_key) = field("spatial").ok_or_else(|| Error::Config {
            line: 0,
            key: format!("pump.{id}.spatial"),
            msg: "missing".into(),
        })?;
        let spatial = with_key(spatial_at, &spatial_key, parse_spatial)?;
        let (p_at, p_key) = field("P").ok_or_else(|| Error::Config {
            line: 0,
            key: format!("pump.{id}.P"),
            msg: "missing".into(),
        })?;
        let offset = with_key(p_at, &p_key, parse_int)?;
        let pairs = match field("pairs") {
            Some((at, key)) => with_key(at, &key, parse_pair_list)?,
            None => Vec::new(),
        };
        let amplitude = match field("amplitude") {
            Some((at, key)) => with_key(at, &key, parse_real)?,
            None => 1.0,
        };
        let comp = with_key(spatial_at, &spatial_key, |_| {
            PumpComponent::new(spatial, offset, amplitude, pairs)
        })?;
        comps.push(comp);
    }
    if comps.is_empty() {
        return Err(Error::Config {
            line: 0,
            key: "pump".into(),
            msg: "no pump components".into(),
        });
    }
    Ok(PumpSpec::new(comps))
}

fn parse_int(s: &str) -> Result<i32> {
    s.trim()
        .trim_start_matches('+')
        .parse()
        .map_err(|_| bad(format!("expected an integer, got `{s}`")))
}

fn parse_real(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| bad(format!("expected a number, got `{s}`")))?;
    if !v.is_finite() {
        return Err(bad(format!("`{s}` is not finite")));
    }
    Ok(v)
}

fn strip_brackets(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    t.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| bad(format!("expected `{open}...{close}`, got `{s}`")))
}

fn parse_int_list(s: &str) -> Result<Vec<i32>> {
    let inner = strip_brackets(s, '[', ']')?;
    inner
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_int)
        .collect()
}

fn parse_spatial(s: &str) -> Result<Spatial> {
    let inner = strip_brackets(s, '(', ')')?;
    let (m, u) = inner
        .split_once(',')
        .ok_or_else(|| bad(format!("expected `(m,u)`, got `{s}`")))?;
    let m = parse_int(m)?;
    let u = parse_int(u)?;
    if u < 0 {
        return Err(bad(format!("radial index in `{s}` is negative")));
    }
    Spatial::new(m, u as u32)
}

/// Splits `a, (b, c), ((d,e),(f,g))` on top-level commas.
fn split_top(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad(format!("unbalanced parentheses in `{s}`")));
        }
    }
    if depth != 0 {
        return Err(bad(format!("unbalanced parentheses in `{s}`")));
    }
    out.push(&s[start..]);
    Ok(out.into_iter().filter(|t| !t.trim().is_empty()).collect())
}

fn parse_spatial_list(s: &str) -> Result<Vec<Spatial>> {
    split_top(strip_brackets(s, '[', ']')?)?
        .into_iter()
        .map(parse_spatial)
        .collect()
}

fn parse_pair_list(s: &str) -> Result<Vec<(Spatial, Spatial)>> {
    split_top(strip_brackets(s, '[', ']')?)?
        .into_iter()
        .map(|p| {
            let parts = split_top(strip_brackets(p, '(', ')')?)?;
            if parts.len() != 2 {
                return Err(bad(format!("expected `((m,u),(n,v))`, got `{p}`")));
            }
            Ok((parse_spatial(parts[0])?, parse_spatial(parts[1])?))
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<FieldKind> {
    match s.trim().to_ascii_lowercase().as_str() {
        "signal" | "s" => Ok(FieldKind::Signal),
        "idler" | "i" => Ok(FieldKind::Idler),
        other => Err(bad(format!("unknown field kind `{other}`"))),
    }
}

fn parse_kinds(s: &str) -> Result<Vec<FieldKind>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_kind)
        .collect()
}

/// `kind (m,u) j k`, the same text `ModeId` displays as.
pub fn parse_mode(s: &str) -> Result<ModeId> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| bad(format!("expected `kind (m,u) j k`, got `{s}`")))?;
    let close = s.find(')').ok_or_else(|| bad(format!("expected `kind (m,u) j k`, got `{s}`")))?;
    if close < open {
        return Err(bad(format!("expected `kind (m,u) j k`, got `{s}`")));
    }
    let kind = parse_kind(&s[..open])?;
    let spatial = parse_spatial(&s[open..=close])?;
    let rest: Vec<&str> = s[close + 1..].split_whitespace().collect();
    if rest.len() != 2 {
        return Err(bad(format!("expected `kind (m,u) j k`, got `{s}`")));
    }
    Ok(ModeId::new(kind, spatial, parse_int(rest[0])?, parse_int(rest[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# one pair
spatial_orders = [(0,0)]
j_min = 0
j_max = 1
k_values = [1, -1]
kinds = signal, idler
pump.0.spatial = (0,0)
pump.0.P = +1
";

    #[test]
    fn cartesian_config() {
        let cfg = GraphConfig::parse(SMALL).unwrap();
        assert_eq!(cfg.modes.len(), 8);
        assert_eq!(cfg.pumps.components.len(), 1);
        assert_eq!(cfg.pumps.components[0].amplitude, 1.0);
        let g: GMatrix<f64> = cfg.build().unwrap();
        // S(0,1)-I(1,-1), S(0,-1)-I(1,1), S(1,1)-I(0,-1), S(1,-1)-I(0,1)
        assert_eq!(g.edges().len(), 4);
    }

    #[test]
    fn explicit_modes_and_focus() {
        let text = "\
mode.1 = idler (0,0) 1 -1
mode.0 = signal (0,0) 0 1
mode.2 = idler (0,0) 5 -1
mode.3 = signal (0,0) -4 1
pump.0.spatial = (0,0)
pump.0.P = 1
focus = signal (0,0) 0 1
";
        let cfg = GraphConfig::parse(text).unwrap();
        assert_eq!(cfg.modes[0], parse_mode("signal (0,0) 0 1").unwrap());
        let g: GMatrix<f64> = cfg.build().unwrap();
        assert_eq!(g.n(), 2);
    }

    #[test]
    fn pair_lists() {
        let pairs = parse_pair_list("[((0,7),(1,6)), ((1,6),(0,7))]").unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].1, Spatial::new(1, 6).unwrap());
        assert!(parse_pair_list("[((0,7),(1,6)]").is_err());
    }

    #[test]
    fn errors_carry_key_and_line() {
        let text = SMALL.replace("j_max = 1", "j_max = one");
        match GraphConfig::parse(&text) {
            Err(Error::Config { line, key, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(key, "j_max");
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = format!("{SMALL}colour = blue\n");
        assert!(matches!(GraphConfig::parse(&text), Err(Error::Config { key, .. }) if key == "colour"));
        let text = format!("{SMALL}pump.0.P = -1\n");
        assert!(matches!(GraphConfig::parse(&text), Err(Error::Config { line: 9, .. })));
        let text = format!("{SMALL}mode.0 = signal (0,0) 0 1\n");
        assert!(GraphConfig::parse(&text).is_err());
        let text = SMALL.replace("j_max = 1", "j_max = -1");
        assert!(matches!(GraphConfig::parse(&text), Err(Error::Config { key, .. }) if key == "spatial_orders"));
    }
}
