//! Knot diagrams drawn on a branched spine.
//!
//! A diagram is a cyclic list of events.  Arcs run inside a region and
//! alternate with stations: passages through a spine edge from one region
//! germ to another, or visits of a self-crossing of the projection.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::KnotError;
use crate::spine::{dual_spine, BranchedTriangulation, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Event {
    /// A piece of the knot inside region `region`, entering and leaving
    /// through the given germ of the adjacent edge passage, or through a
    /// self-crossing when `None`.
    Arc { region: usize, enter: Option<Role>, exit: Option<Role> },
    /// Passage through spine edge `edge`; `position` orders passages along
    /// the same edge.
    Cross { edge: usize, position: usize },
    /// A visit of self-crossing `id`, on the over or under strand, with the
    /// crossing sign.
    Crossing { id: usize, over: bool, sign: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotDiagram {
    /// Name of the spine file the diagram lives on.
    pub spine: String,
    pub events: Vec<Event>,
}

/// A station of the diagram in the form the digger consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Station {
    Cross { edge: usize, from: Role, to: Role, position: usize },
    Crossing { id: usize, over: bool, sign: i8 },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> KnotError {
    KnotError::Syntax { line, col, msg: msg.into() }
}

fn role_token(s: &str) -> Result<Option<Role>, String> {
    if s == "-" {
        return Ok(None);
    }
    Role::parse(s).map(Some).ok_or_else(|| format!("expected low, mid, high or '-', found '{s}'"))
}

fn prefixed(tok: &str, prefix: char) -> Option<usize> {
    tok.strip_prefix(prefix)?.parse().ok()
}

/// Parses the diagram text format.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram, KnotError> {
    let mut spine = None;
    let mut events = Vec::new();
    let mut auto_pos: BTreeMap<usize, usize> = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, &str)> = body
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - body.as_ptr() as usize + 1, t))
            .collect();
        let Some(&(c0, head)) = toks.first() else { continue };
        let tok = |i: usize| toks.get(i).copied().ok_or_else(|| syntax(line, raw.len() + 1, "unexpected end of line"));
        if spine.is_none() {
            if head != "knot" || toks.get(1).map(|t| t.1) != Some("on") || toks.len() != 3 {
                return Err(syntax(line, c0, "expected header 'knot on <spine>'"));
            }
            spine = Some(toks[2].1.to_string());
            continue;
        }
        let event = match head {
            "arc" => {
                let (c, r) = tok(1)?;
                let region = prefixed(r, 'R').ok_or_else(|| syntax(line, c, "expected region R<id>"))?;
                let (c, sides) = tok(2)?;
                let (a, b) = sides.split_once('/').ok_or_else(|| syntax(line, c, "expected <enter>/<exit>"))?;
                let enter = role_token(a).map_err(|m| syntax(line, c, m))?;
                let exit = role_token(b).map_err(|m| syntax(line, c + a.len() + 1, m))?;
                if toks.len() > 3 {
                    return Err(syntax(line, toks[3].0, "trailing tokens"));
                }
                Event::Arc { region, enter, exit }
            }
            "cross" => {
                let (c, e) = tok(1)?;
                let edge = prefixed(e, 'E').ok_or_else(|| syntax(line, c, "expected edge E<id>"))?;
                let position = match toks.get(2) {
                    Some(&(c, p)) => p.strip_prefix('@').and_then(|x| x.parse().ok()).ok_or_else(|| syntax(line, c, "expected @<position>"))?,
                    None => *auto_pos.get(&edge).unwrap_or(&0),
                };
                if toks.len() > 3 {
                    return Err(syntax(line, toks[3].0, "trailing tokens"));
                }
                auto_pos.insert(edge, position + 1);
                Event::Cross { edge, position }
            }
            "x" => {
                let (c, i) = tok(1)?;
                let id = i.parse().map_err(|_| syntax(line, c, "expected crossing id"))?;
                let (c, s) = tok(2)?;
                let over = match s {
                    "over" => true,
                    "under" => false,
                    _ => return Err(syntax(line, c, "expected over or under")),
                };
                let (c, g) = tok(3)?;
                let sign = match g {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(syntax(line, c, "expected + or -")),
                };
                if toks.len() > 4 {
                    return Err(syntax(line, toks[4].0, "trailing tokens"));
                }
                Event::Crossing { id, over, sign }
            }
            _ => return Err(syntax(line, c0, format!("unknown event '{head}'"))),
        };
        events.push(event);
    }
    let spine = spine.ok_or_else(|| syntax(1, 1, "missing header 'knot on <spine>'"))?;
    Ok(KnotDiagram { spine, events })
}

fn side_name(r: Option<Role>) -> &'static str {
    r.map_or("-", Role::name)
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knot on {}", self.spine)?;
        for e in &self.events {
            match e {
                Event::Arc { region, enter, exit } => writeln!(f, "arc R{region} {}/{}", side_name(*enter), side_name(*exit))?,
                Event::Cross { edge, position } => writeln!(f, "cross E{edge} @{position}")?,
                Event::Crossing { id, over, sign } => {
                    writeln!(f, "x {id} {} {}", if *over { "over" } else { "under" }, if *sign > 0 { '+' } else { '-' })?
                }
            }
        }
        Ok(())
    }
}

impl KnotDiagram {
    fn invalid(msg: impl Into<String>) -> KnotError {
        KnotError::Invalid(msg.into())
    }

    /// Checks the diagram against the spine dual to `t` and returns its
    /// stations in order.
    pub(crate) fn stations(&self, t: &BranchedTriangulation) -> Result<Vec<Station>, KnotError> {
        let n = self.events.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Self::invalid("events must alternate between arcs and stations"));
        }
        let spine = dual_spine(t);
        let is_arc = |e: &Event| matches!(e, Event::Arc { .. });
        let offset = if is_arc(&self.events[0]) { 1 } else { 0 };
        let mut out = Vec::new();
        let mut visits: BTreeMap<usize, Vec<(bool, i8)>> = BTreeMap::new();
        let mut positions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for s in 0..n / 2 {
            let idx = (offset + 2 * s) % n;
            let prev = self.events[(idx + n - 1) % n];
            let ev = self.events[idx];
            let next = self.events[(idx + 1) % n];
            let (Event::Arc { region: r0, exit, .. }, Event::Arc { region: r1, enter, .. }) = (prev, next) else {
                return Err(Self::invalid(format!("event {idx} is not between two arcs")));
            };
            if is_arc(&ev) {
                return Err(Self::invalid(format!("arcs {} and {idx} are adjacent", (idx + n - 1) % n)));
            }
            match ev {
                Event::Cross { edge, position } => {
                    let sp = spine.edges.get(edge).ok_or_else(|| Self::invalid(format!("no spine edge E{edge}")))?;
                    let (Some(from), Some(to)) = (exit, enter) else {
                        return Err(Self::invalid(format!("passage through E{edge} needs germs on both arcs")));
                    };
                    if from == to || (from != Role::Mid && to != Role::Mid) {
                        return Err(Self::invalid(format!("passage through E{edge} must join the mid germ to another germ")));
                    }
                    let germ = |r: Role| sp.germs.iter().find(|g| g.role == r).expect("three germs").region;
                    if germ(from) != r0 || germ(to) != r1 {
                        return Err(Self::invalid(format!("passage through E{edge} does not join regions R{r0} and R{r1}")));
                    }
                    if positions.insert((edge, position), idx).is_some() {
                        return Err(Self::invalid(format!("two passages through E{edge} at position {position}")));
                    }
                    out.push(Station::Cross { edge, from, to, position });
                }
                Event::Crossing { id, over, sign } => {
                    if exit.is_some() || enter.is_some() || r0 != r1 {
                        return Err(Self::invalid(format!("self-crossing {id} must sit inside one region")));
                    }
                    visits.entry(id).or_default().push((over, sign));
                    out.push(Station::Crossing { id, over, sign });
                }
                Event::Arc { .. } => unreachable!(),
            }
        }
        for (id, v) in &visits {
            let ok = v.len() == 2 && v[0].0 != v[1].0 && v[0].1 == v[1].1;
            if !ok {
                return Err(Self::invalid(format!("self-crossing {id} needs one over and one under visit with equal signs")));
            }
        }
        if !out.iter().any(|s| matches!(s, Station::Cross { .. })) {
            return Err(KnotError::NonStandard("the knot never meets the singular set of the spine".into()));
        }
        Ok(out)
    }

    /// Checks the diagram against the spine dual to `t`.
    pub fn validate(&self, t: &BranchedTriangulation) -> Result<(), KnotError> {
        self.stations(t).map(|_| ())
    }

    /// Number of self-crossings.
    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Crossing { over: true, .. })).count()
    }

    /// Inserts a framing-preserving pair of curls at the start of arc number
    /// `site` (counting arcs from 0).  A positive pair turns right.
    pub fn add_double_curl(&self, sign: i8, site: usize) -> Result<KnotDiagram, KnotError> {
        let arcs: Vec<usize> = (0..self.events.len()).filter(|i| matches!(self.events[*i], Event::Arc { .. })).collect();
        let &at = arcs.get(site).ok_or(KnotError::Site(site))?;
        let Event::Arc { region, enter, exit } = self.events[at] else { unreachable!() };
        let next_id = self.events.iter().filter_map(|e| if let Event::Crossing { id, .. } = e { Some(id + 1) } else { None }).max().unwrap_or(0);
        let (a, b) = (next_id, next_id + 1);
        let s = if sign > 0 { 1 } else { -1 };
        let visits = [(a, true, s), (a, false, s), (b, false, -s), (b, true, -s)];
        let mut new = vec![Event::Arc { region, enter, exit: None }];
        for (i, (id, over, sg)) in visits.into_iter().enumerate() {
            new.push(Event::Crossing { id, over, sign: sg });
            let last = i == visits.len() - 1;
            new.push(Event::Arc { region, enter: None, exit: if last { exit } else { None } });
        }
        let mut events = self.events[..at].to_vec();
        events.extend(new);
        events.extend_from_slice(&self.events[at + 1..]);
        Ok(KnotDiagram { spine: self.spine.clone(), events })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: &str = include_str!("../../fixtures/abalone_k.knot");

    #[test]
    fn parse_and_format_round_trip() {
        let d = parse_diagram(K).unwrap();
        assert_eq!(d.spine, "abalone.tri");
        assert_eq!(d.events.len(), 4);
        let again = parse_diagram(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn syntax_errors_report_columns() {
        let err = parse_diagram("knot on a.tri\ncross X1\n").unwrap_err();
        assert_eq!(err, KnotError::Syntax { line: 2, col: 7, msg: "expected edge E<id>".into() });
        assert!(matches!(parse_diagram("arc R0 low/high\n"), Err(KnotError::Syntax { line: 1, col: 1, .. })));
    }

    #[test]
    fn curl_adds_two_crossings() {
        let d = parse_diagram(K).unwrap();
        let c = d.add_double_curl(1, 0).unwrap();
        assert_eq!(c.crossing_count(), 2);
        assert_eq!(c.events.len(), d.events.len() + 8);
        assert!(d.add_double_curl(1, 2).is_err());
    }
}
