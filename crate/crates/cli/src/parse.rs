//! Complex literals (`10+50i`, `-2.5e-3i`, `4`) and target sets
//! (`disc:10+50i:50`, `interval:4-40i:4+40i`).

use ratconv::{Complex64, TargetSet64};

use crate::error::{CliError, CliResult};

pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::input(format!("cannot parse complex number `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        return finite(Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // Split before the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re: f64 = re_s.parse().map_err(|_| bad())?;
    let im: f64 = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().map_err(|_| bad())?,
    };
    finite(Complex64::new(re, im)).ok_or_else(bad)
}

fn finite(z: Complex64) -> Option<Complex64> {
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

pub fn parse_target(s: &str) -> CliResult<TargetSet64> {
    let parts: Vec<&str> = s.split(':').collect();
    let t = match parts.as_slice() {
        ["disc", c, r] => {
            let radius: f64 = r
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("bad disc radius `{r}`")))?;
            TargetSet64::Disc {
                center: parse_complex(c)?,
                radius,
            }
        }
        ["interval", a, b] => TargetSet64::Interval {
            a: parse_complex(a)?,
            b: parse_complex(b)?,
        },
        _ => {
            return Err(CliError::input(format!(
                "target `{s}` is neither disc:CENTER:RADIUS nor interval:A:B"
            )))
        }
    };
    t.validate()?;
    Ok(t)
}
