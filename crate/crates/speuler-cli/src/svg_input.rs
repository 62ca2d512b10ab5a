//! Reads back the curves of an SVG written by `generate`.
//!
//! Only the subset of SVG that `generate` emits is understood: one `<path>`
//! per set, tagged with `data-set`, whose data is absolute `M`/`L` commands
//! closed by `Z`. Coordinates stay in output units; the verifier's checks
//! do not depend on scale.

use regex::Regex;
use speuler::{AbstractDescription, Point};

/// Closed polylines per set, in set order.
pub fn curves_for(d: &AbstractDescription, svg: &str) -> Result<Vec<Vec<Vec<Point<f64>>>>, String> {
    let path = Regex::new(r#"<path\s[^>]*data-set="([^"]*)"[^>]*\sd="([^"]*)""#).expect("valid pattern");
    let command = Regex::new(r"([MLZ])\s*(?:(-?[0-9.]+),(-?[0-9.]+))?").expect("valid pattern");
    let mut curves = vec![Vec::new(); d.set_count()];
    let mut seen = vec![false; d.set_count()];
    for cap in path.captures_iter(svg) {
        let name = unescape(&cap[1]);
        let set = d
            .sets()
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| format!("diagram has a curve for unknown set {name:?}"))?;
        seen[set] = true;
        let mut current: Vec<Point<f64>> = Vec::new();
        for c in command.captures_iter(&cap[2]) {
            match &c[1] {
                "Z" => {
                    if let Some(&first) = current.first() {
                        current.push(first);
                        curves[set].push(std::mem::take(&mut current));
                    }
                }
                op => {
                    let coord = |i: usize| c.get(i).and_then(|m| m.as_str().parse::<f64>().ok());
                    let (x, y) = coord(2).zip(coord(3)).ok_or_else(|| format!("{op} without coordinates"))?;
                    if op == "M" && !current.is_empty() {
                        return Err("path restarts without closing".into());
                    }
                    current.push(Point::new(x, -y));
                }
            }
        }
        if !current.is_empty() {
            return Err(format!("curve for set {name:?} is not closed"));
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(format!("diagram has no curve for set {:?}", d.sets()[missing].name));
    }
    Ok(curves)
}

fn unescape(s: &str) -> String {
    s.replace("&quot;", "\"").replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&")
}

#[cfg(test)]
mod tests {
    use super::*;
    use speuler::model::AbstractDescription;

    #[test]
    fn reads_back_generated_paths() {
        let d = AbstractDescription::full_venn(2).unwrap();
        let svg = r#"<svg><path data-set="A" d="M0.000,0.000 L1.000,0.000 L1.000,-1.000 Z" stroke="red"/>
<path data-set="B" d="M2.000,0.000 L3.000,0.000 L3.000,-1.000 Z"/></svg>"#;
        let curves = curves_for(&d, svg).unwrap();
        assert_eq!(
            curves[0],
            vec![vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 0.0)]]
        );
        assert_eq!(curves[1][0].len(), 4);
    }

    #[test]
    fn missing_set_is_an_error() {
        let d = AbstractDescription::full_venn(2).unwrap();
        let svg = r#"<path data-set="A" d="M0,0 L1,0 L1,1 Z"/>"#;
        assert!(curves_for(&d, svg).unwrap_err().contains("\"B\""));
    }
}
