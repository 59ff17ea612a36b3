//! Canonical text and JSON serializations of ring elements, plus a LaTeX
//! pretty-printer. Both machine forms round-trip exactly.

use super::coeff::GaussRat;
use super::poly::{cmp_grlex, DiffPoly, Generator, Monomial};
use super::RingError;
use num::rational::BigRational;
use num::traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

impl DiffPoly {
    /// Terms in display order: graded-lexicographic, constants last.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &GaussRat)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| cmp_grlex(a.0, b.0));
        v
    }
}

/// Canonical text form, e.g. `(3/2)*i*u1^2*Du2 + t*u1`.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let body = render_term(m, c);
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if let Some(stripped) = body.strip_prefix('-') {
                write!(f, " - {stripped}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

fn render_term(m: &Monomial, c: &GaussRat) -> String {
    if m.is_one() {
        return c.to_string();
    }
    if *c == GaussRat::one() {
        return m.to_string();
    }
    if *c == GaussRat::from_int(-1) {
        return format!("-{m}");
    }
    format!("{c}*{m}")
}

impl FromStr for DiffPoly {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

fn parse_err(msg: impl Into<String>) -> RingError {
    RingError::Parse(msg.into())
}

/// Splits at top-level occurrences of any of `seps` (depth counted over
/// parentheses); the sign characters are kept with the following chunk.
fn split_top_level(s: &str, seps: &[char]) -> Vec<String> {
    let mut chunks = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if depth == 0 && seps.contains(&c) && i > 0 && !cur.trim().is_empty() => {
                chunks.push(cur.clone());
                cur.clear();
                if c == '-' {
                    cur.push('-');
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        chunks.push(cur);
    }
    chunks
}

fn parse_poly(s: &str) -> Result<DiffPoly, RingError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty input"));
    }
    if s == "0" {
        return Ok(DiffPoly::zero());
    }
    let mut out = DiffPoly::zero();
    for chunk in split_top_level(s, &['+', '-']) {
        let (mono, coeff) = parse_term(chunk.trim())?;
        out.add_term(mono, coeff);
    }
    Ok(out)
}

fn parse_term(s: &str) -> Result<(Monomial, GaussRat), RingError> {
    let (negate, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let mut coeff = GaussRat::one();
    let mut mono = Monomial::one();
    for factor in split_top_level(body, &['*']) {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(parse_err(format!("empty factor in term `{s}`")));
        }
        if factor == "i" {
            coeff = coeff.times_i();
            continue;
        }
        if let Some(inner) = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
            coeff *= &parse_complex_rational(inner)?;
            continue;
        }
        if factor
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
        {
            let r = BigRational::from_str(factor)
                .map_err(|e| parse_err(format!("bad rational `{factor}`: {e}")))?;
            coeff *= &GaussRat::new(r, BigRational::zero());
            continue;
        }
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (
                n,
                p.parse::<u32>()
                    .map_err(|e| parse_err(format!("bad exponent in `{factor}`: {e}")))?,
            ),
            None => (factor, 1),
        };
        let g = Generator::parse(name)
            .ok_or_else(|| parse_err(format!("unknown generator `{name}`")))?;
        for _ in 0..pow {
            mono = mono.times_gen(g);
        }
    }
    if negate {
        coeff = -coeff;
    }
    Ok((mono, coeff))
}

/// Parses the inside of a parenthesized coefficient: `3/2`, `1/2+3/4*i`,
/// `1/2-3/4*i`.
fn parse_complex_rational(s: &str) -> Result<GaussRat, RingError> {
    let s = s.trim();
    let rat = |t: &str| {
        BigRational::from_str(t.trim()).map_err(|e| parse_err(format!("bad rational `{t}`: {e}")))
    };
    // Find a top-level '+'/'-' that is not the leading sign.
    let bytes: Vec<char> = s.chars().collect();
    for idx in 1..bytes.len() {
        if bytes[idx] == '+' || bytes[idx] == '-' {
            let (re, rest) = (&s[..idx], &s[idx..]);
            let (sign, imag_part) = match rest.strip_prefix('-') {
                Some(tail) => (-1i64, tail),
                None => (1i64, &rest[1..]),
            };
            let imag_part = imag_part.trim();
            let im_str = imag_part
                .strip_suffix("*i")
                .or_else(|| imag_part.strip_suffix('i'))
                .ok_or_else(|| parse_err(format!("expected imaginary part in `{s}`")))?;
            let im = if im_str.trim().is_empty() {
                BigRational::from_integer(1.into())
            } else {
                rat(im_str)?
            };
            return Ok(GaussRat::new(
                rat(re)?,
                im * BigRational::from_integer(sign.into()),
            ));
        }
    }
    Ok(GaussRat::new(rat(s)?, BigRational::zero()))
}

/// One term of the structured JSON form.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermJson {
    pub coeff_re: String,
    pub coeff_im: String,
    pub monomial: Vec<(String, u32)>,
}

/// Structured JSON form of a [`DiffPoly`]: a list of terms in canonical
/// display order, rationals as exact strings.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DiffPolyJson {
    pub terms: Vec<TermJson>,
}

impl DiffPoly {
    pub fn to_json(&self) -> DiffPolyJson {
        DiffPolyJson {
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    coeff_re: c.re().to_string(),
                    coeff_im: c.im().to_string(),
                    monomial: m
                        .display_factors()
                        .iter()
                        .map(|&(g, p)| (g.name(), p))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &DiffPolyJson) -> Result<DiffPoly, RingError> {
        let mut out = DiffPoly::zero();
        for term in &json.terms {
            let re = BigRational::from_str(&term.coeff_re)
                .map_err(|e| parse_err(format!("bad coeff_re `{}`: {e}", term.coeff_re)))?;
            let im = BigRational::from_str(&term.coeff_im)
                .map_err(|e| parse_err(format!("bad coeff_im `{}`: {e}", term.coeff_im)))?;
            let mut mono = Monomial::one();
            for (name, pow) in &term.monomial {
                let g = Generator::parse(name)
                    .ok_or_else(|| parse_err(format!("unknown generator `{name}`")))?;
                for _ in 0..*pow {
                    mono = mono.times_gen(g);
                }
            }
            out.add_term(mono, GaussRat::new(re, im));
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<DiffPoly, RingError> {
        let json: DiffPolyJson =
            serde_json::from_str(s).map_err(|e| parse_err(format!("bad JSON: {e}")))?;
        Self::from_json(&json)
    }

    /// LaTeX rendering; cosmetic, not parsed back.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        fn gen_latex(g: Generator) -> String {
            match g {
                Generator::U { comp, order: 0 } => format!("u_{{{comp}}}"),
                Generator::U { comp, order: 1 } => format!("\\dot{{u}}_{{{comp}}}"),
                Generator::U { comp, order } => format!("u_{{{comp}}}^{{({order})}}"),
                Generator::T => "t".to_string(),
                Generator::X { comp } => format!("x_{{{comp}}}"),
            }
        }
        fn rat_latex(r: &BigRational) -> String {
            if r.is_integer() {
                r.to_string()
            } else {
                format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
            }
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let coeff_str = if c.is_real() {
                rat_latex(c.re())
            } else if c.is_imaginary() {
                let body = rat_latex(c.im());
                match body.as_str() {
                    "1" => "\\mathrm{i}".to_string(),
                    "-1" => "-\\mathrm{i}".to_string(),
                    _ => format!("{body}\\,\\mathrm{{i}}"),
                }
            } else {
                format!(
                    "\\left({}+{}\\,\\mathrm{{i}}\\right)",
                    rat_latex(c.re()),
                    rat_latex(c.im())
                )
            };
            let mono_str = if m.is_one() {
                String::new()
            } else {
                m.display_factors()
                    .iter()
                    .map(|&(g, p)| {
                        if p == 1 {
                            gen_latex(g)
                        } else {
                            format!("{}^{{{p}}}", gen_latex(g))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let body = match (coeff_str.as_str(), mono_str.is_empty()) {
                (_, true) => coeff_str.clone(),
                ("1", false) => mono_str.clone(),
                ("-1", false) => format!("-{mono_str}"),
                _ => format!("{coeff_str} {mono_str}"),
            };
            if idx == 0 {
                out.push_str(&body);
            } else if let Some(stripped) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }
}
