use crate::{LinkDiagram, LinkError};

/// Parses `X[a,b,c,d],...` optionally wrapped in `PD[...]` and optionally
/// followed by `U^k` declaring `k` free loops.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, LinkError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut body = compact.as_str();
    if let Some(inner) = body.strip_prefix("PD[") {
        body = inner
            .strip_suffix(']')
            .ok_or_else(|| LinkError::MalformedToken(compact.clone()))?;
    }
    let mut crossings = Vec::new();
    let mut free_loops = 0usize;
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(',');
        if rest.is_empty() {
            break;
        }
        if let Some(after) = rest.strip_prefix("X[") {
            let close = after
                .find(']')
                .ok_or_else(|| LinkError::MalformedToken(rest.to_string()))?;
            let token = &after[..close];
            let labels: Vec<u32> = token
                .split(',')
                .map(|s| s.parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| LinkError::MalformedToken(format!("X[{token}]")))?;
            let tuple: [u32; 4] = labels
                .try_into()
                .map_err(|_| LinkError::MalformedToken(format!("X[{token}]")))?;
            crossings.push(tuple);
            rest = &after[close + 1..];
        } else if let Some(after) = rest.strip_prefix("U^") {
            let end = after.find(',').unwrap_or(after.len());
            let k: usize = after[..end]
                .parse()
                .map_err(|_| LinkError::MalformedToken(format!("U^{}", &after[..end])))?;
            free_loops += k;
            rest = &after[end..];
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            return Err(LinkError::MalformedToken(rest[..end].to_string()));
        }
    }
    LinkDiagram::new(crossings, free_loops)
}

/// Inverse of [`parse_pd`].
pub fn render_pd(diagram: &LinkDiagram) -> String {
    let mut parts: Vec<String> = diagram
        .crossings()
        .iter()
        .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
        .collect();
    if diagram.n_free_loops() > 0 {
        parts.push(format!("U^{}", diagram.n_free_loops()));
    }
    parts.join(",")
}
