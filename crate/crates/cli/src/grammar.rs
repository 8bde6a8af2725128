//! The target grammar: components joined by '+', e.g. "P4+C6+K1,5+K2,3";
//! "3xP10" abbreviates three copies. Odd cycles are rejected outright: they
//! are not bipartite and can never embed.

use bgr_core::target::{Component, RainbowPattern, TargetGraph};

pub fn parse_target(text: &str) -> Result<TargetGraph, String> {
    let mut components = Vec::new();
    for raw in text.split('+') {
        let token = raw.trim();
        if token.is_empty() {
            return Err(format!("empty component in `{text}`"));
        }
        let (count, comp_text) = match token.split_once(['x', 'X']) {
            Some((n, rest)) if n.chars().all(|c| c.is_ascii_digit()) && !n.is_empty() => {
                let count: usize =
                    n.parse().map_err(|_| format!("bad repeat count in `{token}`"))?;
                if count == 0 {
                    return Err(format!("repeat count must be positive in `{token}`"));
                }
                (count, rest)
            }
            _ => (1, token),
        };
        let comp = parse_component(comp_text)?;
        components.extend(std::iter::repeat(comp).take(count));
    }
    TargetGraph::new(components).map_err(|e| e.to_string())
}

fn parse_component(token: &str) -> Result<Component, String> {
    let upper = token.to_ascii_uppercase();
    if let Some(rest) = upper.strip_prefix('P') {
        let vertices: usize =
            rest.parse().map_err(|_| format!("bad path `{token}`, expected e.g. P4"))?;
        if vertices < 2 {
            return Err(format!("path P{vertices} needs at least 2 vertices"));
        }
        return Ok(Component::Path { vertices });
    }
    if let Some(rest) = upper.strip_prefix('C') {
        let vertices: usize =
            rest.parse().map_err(|_| format!("bad cycle `{token}`, expected e.g. C6"))?;
        if vertices % 2 != 0 {
            return Err(format!(
                "cycle C{vertices} is odd and therefore not bipartite; only even cycles embed in K_{{n,n}}"
            ));
        }
        if vertices < 4 {
            return Err(format!("cycle C{vertices} needs at least 4 vertices"));
        }
        return Ok(Component::Cycle { vertices });
    }
    if let Some(rest) = upper.strip_prefix('K') {
        let (s, t) = rest
            .split_once(',')
            .ok_or_else(|| format!("bad biclique `{token}`, expected e.g. K2,3"))?;
        let s: usize = s.parse().map_err(|_| format!("bad biclique `{token}`"))?;
        let t: usize = t.parse().map_err(|_| format!("bad biclique `{token}`"))?;
        if s == 0 || t == 0 {
            return Err(format!("biclique `{token}` needs positive part sizes"));
        }
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        return if s == 1 {
            Ok(Component::Star { leaves: t })
        } else {
            Ok(Component::Biclique { s, t })
        };
    }
    Err(format!("unknown component `{token}`; use P<n>, C<2m> or K<s>,<t>"))
}

pub fn parse_pattern(text: &str) -> Result<RainbowPattern, String> {
    match text.to_ascii_uppercase().replace(',', "").as_str() {
        "P4" => Ok(RainbowPattern::P4),
        "P5" => Ok(RainbowPattern::P5),
        "K13" => Ok(RainbowPattern::K13),
        other => Err(format!("unknown rainbow pattern `{other}`; one of P4, P5, K1,3")),
    }
}
