//! The region file format:
//! `{"kind": "...", "params": {...}, "holes": [[x, y, "up"|"down"], ...]}`.
//!
//! | kind              | params                                   |
//! |-------------------|------------------------------------------|
//! | `hexagon`         | `sides`: six side lengths                |
//! | `aztec_diamond`   | `n`                                      |
//! | `aztec_rectangle` | `a`, `b`, optional `removed`: `[[i, j]]` |
//! | `aztec_window`    | `x`, `w`                                 |
//! | `hypercube`       | `n`                                      |
//!
//! `holes` is only accepted for hexagons. Kinds are case-insensitive.

use perfmatch::regions::{HexSides, Orient, RegionKind, RegionSpec, SquareCell, TriCell};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    kind: String,
    #[serde(default)]
    params: Map<String, Value>,
    #[serde(default)]
    holes: Vec<(i64, i64, String)>,
}

const KINDS: [RegionKind; 5] = [
    RegionKind::Hexagon,
    RegionKind::AztecDiamond,
    RegionKind::AztecRectangle,
    RegionKind::AztecWindow,
    RegionKind::Hypercube,
];

fn parse_kind(s: &str) -> Result<RegionKind, CliError> {
    let lower = s.to_ascii_lowercase();
    KINDS
        .into_iter()
        .find(|k| k.name() == lower)
        .ok_or_else(|| CliError::UnknownKind(s.to_string()))
}

struct Params<'a> {
    kind: RegionKind,
    map: &'a Map<String, Value>,
}

impl Params<'_> {
    fn allow(&self, names: &[&str]) -> Result<(), CliError> {
        match self.map.keys().find(|k| !names.contains(&k.as_str())) {
            Some(k) => Err(CliError::UnknownParam {
                kind: self.kind.name(),
                name: k.clone(),
            }),
            None => Ok(()),
        }
    }

    fn get(&self, name: &'static str) -> Result<&Value, CliError> {
        self.map.get(name).ok_or(CliError::MissingParam {
            kind: self.kind.name(),
            name,
        })
    }

    fn bad(&self, name: &'static str, expected: &'static str) -> CliError {
        CliError::BadParam {
            kind: self.kind.name(),
            name,
            expected,
        }
    }

    fn u32(&self, name: &'static str) -> Result<u32, CliError> {
        self.get(name)?
            .as_u64()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| self.bad(name, "a nonnegative integer"))
    }
}

fn parse_orient(s: &str) -> Option<Orient> {
    match s.to_ascii_lowercase().as_str() {
        "up" => Some(Orient::Up),
        "down" => Some(Orient::Down),
        _ => None,
    }
}

pub fn parse_region(text: &str) -> Result<RegionSpec, CliError> {
    let raw: RawRegion = serde_json::from_str(text).map_err(|e| CliError::MalformedJson(e.to_string()))?;
    let kind = parse_kind(&raw.kind)?;
    let p = Params { kind, map: &raw.params };
    if kind != RegionKind::Hexagon && !raw.holes.is_empty() {
        return Err(CliError::HolesNotSupported(kind.name()));
    }
    let spec = match kind {
        RegionKind::Hexagon => {
            p.allow(&["sides"])?;
            let sides: [u32; 6] = serde_json::from_value(p.get("sides")?.clone())
                .map_err(|_| p.bad("sides", "an array of six nonnegative integers"))?;
            let holes = raw
                .holes
                .iter()
                .map(|(x, y, o)| match parse_orient(o) {
                    Some(Orient::Up) => Ok(TriCell::up(*x, *y)),
                    Some(Orient::Down) => Ok(TriCell::down(*x, *y)),
                    None => Err(CliError::BadHole(o.clone())),
                })
                .collect::<Result<_, _>>()?;
            RegionSpec::Hexagon {
                sides: HexSides::new(sides)?,
                holes,
            }
        }
        RegionKind::AztecDiamond => {
            p.allow(&["n"])?;
            RegionSpec::AztecDiamond { n: p.u32("n")? }
        }
        RegionKind::AztecRectangle => {
            p.allow(&["a", "b", "removed"])?;
            let removed: Vec<(i64, i64)> = match p.map.get("removed") {
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|_| p.bad("removed", "an array of [i, j] integer pairs"))?,
                None => Vec::new(),
            };
            RegionSpec::AztecRectangle {
                a: p.u32("a")?,
                b: p.u32("b")?,
                removed: removed.into_iter().map(|(i, j)| SquareCell::new(i, j)).collect(),
            }
        }
        RegionKind::AztecWindow => {
            p.allow(&["x", "w"])?;
            RegionSpec::AztecWindow {
                x: p.u32("x")?,
                w: p.u32("w")?,
            }
        }
        RegionKind::Hypercube => {
            p.allow(&["n"])?;
            RegionSpec::Hypercube { n: p.u32("n")? }
        }
    };
    Ok(spec)
}

pub fn region_to_json(spec: &RegionSpec) -> Value {
    let kind = spec.kind().name();
    match spec {
        RegionSpec::Hexagon { sides, holes } => {
            let holes: Vec<Value> = holes
                .iter()
                .map(|h| {
                    let o = match h.orient {
                        Orient::Up => "up",
                        Orient::Down => "down",
                    };
                    json!([h.x, h.y, o])
                })
                .collect();
            json!({"kind": kind, "params": {"sides": sides.sides()}, "holes": holes})
        }
        RegionSpec::AztecDiamond { n } | RegionSpec::Hypercube { n } => {
            json!({"kind": kind, "params": {"n": n}, "holes": []})
        }
        RegionSpec::AztecRectangle { a, b, removed } => {
            let removed: Vec<Value> = removed.iter().map(|c| json!([c.i, c.j])).collect();
            json!({"kind": kind, "params": {"a": a, "b": b, "removed": removed}, "holes": []})
        }
        RegionSpec::AztecWindow { x, w } => {
            json!({"kind": kind, "params": {"x": x, "w": w}, "holes": []})
        }
    }
}
