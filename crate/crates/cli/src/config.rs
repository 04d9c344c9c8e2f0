use anyhow::{Context, Result};
use polypade::{parse_rat, PadeConfig, Rat};
use serde::Deserialize;

/// The `--config` document: a shift configuration in the library's JSON
/// form, `{"alphas": ["0", "1/2"], "weights": [1, 1]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    alphas: Vec<String>,
    weights: Vec<u32>,
}

/// Reads `--config` as inline JSON when it starts with `{`, else as a path.
pub fn load(arg: Option<&str>) -> Result<PadeConfig> {
    let Some(arg) = arg else {
        return Ok(PadeConfig::single(1));
    };
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading config file {arg}"))?
    };
    let doc: ConfigDoc = serde_json::from_str(&text).context("parsing config JSON")?;
    let alphas = doc.alphas.iter().map(|s| parse_rat(s)).collect::<polypade::Result<Vec<_>>>()?;
    Ok(PadeConfig::new(alphas, doc.weights)?)
}

pub fn rat(s: &str) -> Result<Rat> {
    Ok(parse_rat(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_default() {
        assert_eq!(load(None).unwrap(), PadeConfig::single(1));
        let c = load(Some(r#"{"alphas":["0","1/2"],"weights":[1,2]}"#)).unwrap();
        assert_eq!(c.big_m(), 4);
        assert!(load(Some(r#"{"alphas":["0","1"],"weights":[1,1]}"#)).is_err());
        assert!(load(Some(r#"{"alphas":["0"],"weights":[1],"extra":1}"#)).is_err());
        assert!(load(Some("/nonexistent/config.json")).is_err());
    }
}
