//! Named ε-sequences and the inline `prefix=[..];period=[..]` format.

use fakemu::{normalize, EpsilonSequence};

/// Preset names with their parameter shapes, for help text and errors.
pub const PRESET_NAMES: &[&str] = &[
    "mu",
    "lambda",
    "tanaka:k",
    "kfree:k",
    "apostol:k",
    "kfull:k",
    "bege:k,m",
    "gk:k",
    "lcm:k,k2",
];

/// Parses a preset name or an inline sequence.
pub fn parse_eps(text: &str) -> Result<EpsilonSequence, String> {
    let text = text.trim();
    if text.contains('=') {
        return parse_inline(text);
    }
    let (name, args) = match text.split_once(':') {
        Some((n, a)) => (n, a),
        None => (text, ""),
    };
    let nums = parse_args(args)?;
    let arity = |n: usize| -> Result<(), String> {
        if nums.len() == n {
            Ok(())
        } else {
            Err(format!(
                "preset {name} takes {n} parameter(s), got {}",
                nums.len()
            ))
        }
    };
    let at_least = |v: usize, min: usize| -> Result<usize, String> {
        if v >= min {
            Ok(v)
        } else {
            Err(format!("preset {name} needs a parameter >= {min}, got {v}"))
        }
    };
    let (prefix, period) = match name {
        "mu" => {
            arity(0)?;
            (vec![-1], vec![0])
        }
        "lambda" => {
            arity(0)?;
            (vec![], vec![-1, 1])
        }
        "tanaka" => {
            arity(1)?;
            let k = at_least(nums[0], 2)?;
            (
                (1..k).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect(),
                vec![0],
            )
        }
        "kfree" => {
            arity(1)?;
            (vec![1; at_least(nums[0], 2)? - 1], vec![0])
        }
        "apostol" => {
            arity(1)?;
            let k = at_least(nums[0], 1)?;
            let mut p = vec![1; k - 1];
            p.push(-1);
            (p, vec![0])
        }
        "kfull" => {
            arity(1)?;
            (vec![0; at_least(nums[0], 2)? - 1], vec![1])
        }
        "bege" => {
            arity(2)?;
            let (k, m) = (at_least(nums[0], 1)?, nums[1]);
            if m <= k {
                return Err(format!("preset bege needs k < m, got k={k}, m={m}"));
            }
            let mut p = vec![0; m];
            for v in p.iter_mut().take(k - 1) {
                *v = 1;
            }
            p[m - 1] = -1;
            (p, vec![0])
        }
        "gk" => {
            arity(1)?;
            let k = at_least(nums[0], 1)?;
            let mut p = vec![1; k - 1];
            p.extend(std::iter::repeat_n(-1, k));
            (p, vec![0])
        }
        "lcm" => {
            arity(2)?;
            lcm_family(at_least(nums[0], 2)?, at_least(nums[1], 2)?)
        }
        _ => {
            return Err(format!(
                "unknown preset '{name}'; expected one of {} or prefix=[..];period=[..]",
                PRESET_NAMES.join(", ")
            ))
        }
    };
    normalize(&prefix, &period).map_err(|e| e.to_string())
}

fn parse_args(args: &str) -> Result<Vec<usize>, String> {
    if args.is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|a| {
            let v: usize = a
                .trim()
                .parse()
                .map_err(|_| format!("bad preset parameter '{a}'"))?;
            if v > 4096 {
                return Err(format!("preset parameter {v} is too large"));
            }
            Ok(v)
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// ε_j = 1 exactly when j is a nonnegative combination of k and k2, so that
/// the series is ζ(ks)ζ(k2 s)/ζ(lcm·s) when gcd(k, k2) = 1.
fn lcm_family(k: usize, k2: usize) -> (Vec<i64>, Vec<i64>) {
    let g = gcd(k, k2);
    // Past the Frobenius number every multiple of g is representable.
    let len = (k * k2 / g + k + k2).div_ceil(g) * g;
    let p = (1..=len)
        .map(|j| (0..=j / k).any(|a| (j - a * k).is_multiple_of(k2)) as i64)
        .collect();
    let mut period = vec![0; g];
    period[g - 1] = 1;
    (p, period)
}

/// `prefix=[e1,e2,..];period=[p1,..]`; the prefix part may be omitted.
pub fn parse_inline(text: &str) -> Result<EpsilonSequence, String> {
    let mut prefix = None;
    let mut period = None;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=[..] in '{part}'"))?;
        let list = parse_list(value.trim())?;
        let slot = match key.trim() {
            "prefix" => &mut prefix,
            "period" => &mut period,
            other => return Err(format!("unknown key '{other}' in sequence")),
        };
        if slot.replace(list).is_some() {
            return Err(format!("duplicate key '{}' in sequence", key.trim()));
        }
    }
    let period = period.ok_or("sequence needs period=[..]")?;
    normalize(&prefix.unwrap_or_default(), &period).map_err(|e| e.to_string())
}

fn parse_list(v: &str) -> Result<Vec<i64>, String> {
    let inner = v
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, got '{v}'"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad entry '{x}'"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fakemu::Classification;

    #[test]
    fn presets_expand() {
        let s = |x: &str| parse_eps(x).unwrap().to_string();
        assert_eq!(s("mu"), "prefix=[-1];period=[0]");
        assert_eq!(s("lambda"), "prefix=[];period=[-1,1]");
        assert_eq!(s("tanaka:4"), "prefix=[-1,1,-1];period=[0]");
        assert_eq!(s("kfree:3"), "prefix=[1,1];period=[0]");
        assert_eq!(s("apostol:2"), "prefix=[1,-1];period=[0]");
        assert_eq!(s("kfull:3"), "prefix=[0,0];period=[1]");
        assert_eq!(s("bege:2,3"), "prefix=[1,0,-1];period=[0]");
        assert_eq!(s("gk:2"), "prefix=[1,-1,-1];period=[0]");
        assert_eq!(parse_eps("lcm:2,3").unwrap(), parse_eps("kfull:2").unwrap());
    }

    #[test]
    fn inline_format() {
        let e = parse_eps("prefix=[1, 1];period=[0]").unwrap();
        assert_eq!(e, parse_eps("kfree:3").unwrap());
        let e = parse_eps("period=[-1,1]").unwrap();
        assert_eq!(e.classify(), Classification::MobiusType { k: 1 });
        assert_eq!(
            parse_eps("prefix=[];period=[0,1]").unwrap().to_string(),
            "prefix=[];period=[0,1]"
        );
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "nope",
            "kfree",
            "kfree:1",
            "kfree:x",
            "bege:3,2",
            "mu:2",
            "prefix=[2];period=[0]",
            "prefix=[1]",
            "period=[]",
            "period=[1];period=[0]",
            "prefix=1;period=[0]",
        ] {
            assert!(parse_eps(bad).is_err(), "{bad}");
        }
    }
}
