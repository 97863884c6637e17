//! Text syntax for real values.
//!
//! | form                         | meaning                                          |
//! |------------------------------|--------------------------------------------------|
//! | `p/q`, `p`                   | rational                                         |
//! | `surd:(a+b*sqrt(d))/c`       | quadratic surd; `b*` and `/c` may be omitted     |
//! | `dec:<decimal>~<bits>`       | interval seed: the decimal ± half a unit in its last place, with a budget |
//! | `root:<k>:<p/q>~<bits>`      | real `k`-th root of a rational, with a budget     |
//!
//! Exact values round-trip bit-exactly through [`format_real`] and [`parse_real`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{surd_normalize, PrecisionReal, RealValue};
use crate::error::{Error, Result};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<BigInt>()
        .map_err(|_| perr(format!("invalid integer `{s}`")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn parse_budget(s: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| perr(format!("invalid bit budget `{s}`")))
}

/// Parses `a+b*sqrt(d)` / `a-sqrt(d)` / `sqrt(d)` / `-2*sqrt(d)`.
fn parse_surd_numerator(s: &str) -> Result<(BigInt, BigInt, BigInt)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let at = s
        .find("sqrt(")
        .ok_or_else(|| perr(format!("missing sqrt( in `{s}`")))?;
    let head = &s[..at];
    let rest = &s[at + 5..];
    let close = rest.find(')').ok_or_else(|| perr("unclosed sqrt("))?;
    let d = parse_int(&rest[..close])?;
    if !rest[close + 1..].is_empty() {
        return Err(perr(format!("trailing text after sqrt(..) in `{s}`")));
    }
    let head = head.strip_suffix('*').unwrap_or(head);
    // split `a` from the signed coefficient of the radical
    let split = head
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last();
    let (a_str, b_str) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None if head.is_empty() || head == "+" || head == "-" => ("", head),
        None => {
            // a lone number before sqrt is the coefficient b
            ("", head)
        }
    };
    let a = if a_str.is_empty() {
        BigInt::zero()
    } else {
        parse_int(a_str)?
    };
    let b = match b_str {
        "" | "+" => BigInt::one(),
        "-" => -BigInt::one(),
        other => parse_int(other)?,
    };
    Ok((a, b, d))
}

fn parse_surd(body: &str) -> Result<RealValue> {
    let body = body.trim();
    let (num, den) = if let Some(inner) = body.strip_prefix('(') {
        let close = inner
            .rfind(')')
            .ok_or_else(|| perr("unbalanced parentheses in surd"))?;
        let tail = inner[close + 1..].trim();
        let den = match tail.strip_prefix('/') {
            Some(c) => parse_int(c)?,
            None if tail.is_empty() => BigInt::one(),
            None => return Err(perr(format!("unexpected `{tail}` after surd numerator"))),
        };
        (&inner[..close], den)
    } else {
        (body, BigInt::one())
    };
    let (a, b, d) = parse_surd_numerator(num)?;
    surd_normalize(a, b, den, d)
}

/// Parses the decimal and returns (value, half unit in the last place).
fn parse_decimal(s: &str) -> Result<(BigRational, BigRational)> {
    let s = s.trim();
    let (neg, digits) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(perr(format!("invalid decimal `{s}`")));
    }
    let scale = BigInt::from(10).pow(frac_part.len() as u32);
    let mut mant = format!("{int_part}{frac_part}")
        .parse::<BigInt>()
        .map_err(|_| perr(format!("invalid decimal `{s}`")))?;
    if neg {
        mant = -mant;
    }
    let value = BigRational::new(mant, scale.clone());
    let half_ulp = BigRational::new(BigInt::one(), scale * 2);
    Ok((value, half_ulp))
}

/// Parses one real value in the text syntax.
pub fn parse_real(s: &str) -> Result<RealValue> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("surd:") {
        return parse_surd(body);
    }
    if let Some(body) = s.strip_prefix("dec:") {
        let (dec, bits) = body
            .split_once('~')
            .ok_or_else(|| perr("dec: seed needs `~<bits>`"))?;
        let (value, half) = parse_decimal(dec)?;
        let budget = parse_budget(bits)?;
        return Ok(RealValue::Approx(PrecisionReal::from_bounds(
            &value - &half,
            &value + &half,
            budget,
        )));
    }
    if let Some(body) = s.strip_prefix("root:") {
        let (spec, bits) = body
            .split_once('~')
            .ok_or_else(|| perr("root: needs `~<bits>`"))?;
        let (k, radicand) = spec
            .split_once(':')
            .ok_or_else(|| perr("root: needs `<k>:<p/q>`"))?;
        let k = k
            .trim()
            .parse::<u32>()
            .map_err(|_| perr(format!("invalid root degree `{k}`")))?;
        let radicand = parse_rational(radicand)?;
        return PrecisionReal::root(radicand, k, parse_budget(bits)?).map(RealValue::Approx);
    }
    parse_rational(s).map(RealValue::Rational)
}

/// Decimal expansion of `r` truncated toward zero at `digits` fractional digits.
pub fn format_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (a.numer() * &scale).div_floor(a.denom());
    let (ip, fp) = scaled.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
    }
}

pub(crate) fn format_real(x: &RealValue) -> String {
    match x {
        RealValue::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
        RealValue::Surd(s) => {
            let b = s.b();
            let radical = if b.is_one() {
                format!("+sqrt({})", s.d())
            } else if *b == -BigInt::one() {
                format!("-sqrt({})", s.d())
            } else if b.is_positive() {
                format!("+{}*sqrt({})", b, s.d())
            } else {
                format!("{}*sqrt({})", b, s.d())
            };
            format!("surd:({}{})/{}", s.a(), radical, s.c())
        }
        RealValue::Approx(p) => {
            // enough digits to show what the enclosure pins down
            let w = p.enclosure().width();
            let digits = if w.is_zero() {
                20
            } else {
                let bits = w.denom().bits() as i64 - w.numer().bits() as i64;
                ((bits.max(0) as f64) * std::f64::consts::LOG10_2) as usize + 1
            };
            format!(
                "dec:{}~{}",
                format_decimal(&p.midpoint(), digits.min(400)),
                p.budget()
            )
        }
    }
}
