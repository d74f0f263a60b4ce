use std::fmt;
use std::str::FromStr;

/// Problem sizes: `A..BxF` (geometric, factor F, default 2), `A..B+S`
/// (arithmetic), a comma list, or a single size. Bounds are inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRange(pub Vec<usize>);

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| -> Result<usize, String> {
            t.trim().parse::<usize>().map_err(|_| format!("bad size {t:?} in {s:?}"))
        };
        let sizes = if let Some((lo, rest)) = s.split_once("..") {
            let lo = num(lo)?;
            let (hi, step) = if let Some((hi, f)) = rest.split_once('x') {
                let f = num(f)?;
                if f < 2 {
                    return Err(format!("factor must be at least 2 in {s:?}"));
                }
                (num(hi)?, Step::Times(f))
            } else if let Some((hi, d)) = rest.split_once('+') {
                let d = num(d)?;
                if d == 0 {
                    return Err(format!("step must be positive in {s:?}"));
                }
                (num(hi)?, Step::Plus(d))
            } else {
                (num(rest)?, Step::Times(2))
            };
            if lo == 0 || lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            let mut out = Vec::new();
            let mut x = lo;
            while x <= hi {
                out.push(x);
                x = match step {
                    Step::Times(f) => x * f,
                    Step::Plus(d) => x + d,
                };
            }
            out
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if sizes.contains(&0) {
            return Err(format!("sizes must be positive in {s:?}"));
        }
        Ok(SizeRange(sizes))
    }
}

enum Step {
    Times(usize),
    Plus(usize),
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
