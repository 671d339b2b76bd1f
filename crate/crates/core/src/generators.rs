//! Summand vocabulary: squares, triangular numbers, (second) polygonal numbers
//! and the generalized polynomials `c*C(z,2) + d*z`.
//!
//! Every summand is a quadratic `coeff * (a*z^2 + b*z) / 2` in disguise. The
//! evaluation path in [`Generator::eval`] uses the textbook formula for each
//! kind; enumeration goes through the quadratic coefficients instead, so the
//! two stay independent of each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    Square,
    Triangular,
    /// `p_m(z) = (m-2)C(z,2) + z`.
    Polygonal(u32),
    /// `p_m(-z)`, the second m-gonal numbers.
    SecondPolygonal(u32),
    /// `c*C(z,2) + d*z`.
    GenPoly {
        c: u32,
        d: u32,
    },
    /// `c*C(-z,2) - d*z = c*C(z,2) + (c-d)*z`; the negative branch of a
    /// `GenPoly` split off for integer-domain sieving. May be negative.
    ReflectedGenPoly {
        c: u32,
        d: u32,
    },
    /// Contributes only 0. Pads two-term sums to three terms.
    Zero,
}

impl GeneratorKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            GeneratorKind::Polygonal(m) | GeneratorKind::SecondPolygonal(m) if m < 3 => {
                Err(Error::InvalidGenerator(format!("polygonal order m = {m} must be at least 3")))
            }
            GeneratorKind::GenPoly { c, d } | GeneratorKind::ReflectedGenPoly { c, d } if c == 0 || d == 0 => {
                Err(Error::InvalidGenerator(format!("gp({c},{d}) needs c >= 1 and d >= 1")))
            }
            k => Ok(k),
        }
    }

    /// True for `GenPoly` with `d` not dividing `c`; other kinds are
    /// vacuously strict.
    pub fn is_strict(self) -> bool {
        match self {
            GeneratorKind::GenPoly { c, d } | GeneratorKind::ReflectedGenPoly { c, d } => c % d != 0,
            _ => true,
        }
    }

    /// Doubled quadratic coefficients `(a, b)` with `k(z) = (a*z^2 + b*z)/2`
    /// for `z >= 0`.
    pub(crate) fn quadratic(self) -> (i64, i64) {
        match self {
            GeneratorKind::Square => (2, 0),
            GeneratorKind::Triangular => (1, 1),
            GeneratorKind::Polygonal(m) => (m as i64 - 2, 4 - m as i64),
            GeneratorKind::SecondPolygonal(m) => (m as i64 - 2, m as i64 - 4),
            GeneratorKind::GenPoly { c, d } => (c as i64, 2 * d as i64 - c as i64),
            GeneratorKind::ReflectedGenPoly { c, d } => (c as i64, c as i64 - 2 * d as i64),
            GeneratorKind::Zero => (0, 0),
        }
    }
}

/// Rewrites a polygonal kind as `gp(c, d)`.
///
/// `SecondPolygonal(3)` has no such form (`d` would be 0); it has the same
/// values as `Triangular` with the index shifted by one.
pub fn to_genpoly(kind: GeneratorKind) -> Option<(u32, u32)> {
    match kind {
        GeneratorKind::Polygonal(m) if m >= 3 => Some((m - 2, 1)),
        GeneratorKind::SecondPolygonal(m) if m >= 4 => Some((m - 2, m - 3)),
        GeneratorKind::GenPoly { c, d } => Some((c, d)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum Domain {
    #[default]
    Naturals,
    Integers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    kind: GeneratorKind,
    coeff: u32,
    domain: Domain,
}

impl Generator {
    pub fn new(kind: GeneratorKind, coeff: u32, domain: Domain) -> Result<Self> {
        let kind = kind.validate()?;
        if coeff == 0 {
            return Err(Error::InvalidGenerator("coefficient must be at least 1".into()));
        }
        Ok(Self { kind, coeff, domain })
    }

    pub fn square(coeff: u32) -> Self {
        Self { kind: GeneratorKind::Square, coeff, domain: Domain::Naturals }
    }

    pub fn triangular(coeff: u32) -> Self {
        Self { kind: GeneratorKind::Triangular, coeff, domain: Domain::Naturals }
    }

    pub fn polygonal(m: u32, coeff: u32) -> Result<Self> {
        Self::new(GeneratorKind::Polygonal(m), coeff, Domain::Naturals)
    }

    pub fn second_polygonal(m: u32, coeff: u32) -> Result<Self> {
        Self::new(GeneratorKind::SecondPolygonal(m), coeff, Domain::Naturals)
    }

    pub fn gp(c: u32, d: u32) -> Result<Self> {
        Self::new(GeneratorKind::GenPoly { c, d }, 1, Domain::Naturals)
    }

    pub fn zero() -> Self {
        Self { kind: GeneratorKind::Zero, coeff: 1, domain: Domain::Naturals }
    }

    pub fn with_coeff(mut self, coeff: u32) -> Result<Self> {
        if coeff == 0 {
            return Err(Error::InvalidGenerator("coefficient must be at least 1".into()));
        }
        self.coeff = coeff;
        Ok(self)
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn coeff(&self) -> u32 {
        self.coeff
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.kind == GeneratorKind::Zero
    }

    /// Exact value at `z`. Rejects negative `z` over the naturals.
    pub fn eval(&self, z: i64) -> Result<i64> {
        if z < 0 && self.domain == Domain::Naturals {
            return Err(Error::NegativeArgument(z));
        }
        let overflow = || Error::Overflow(format!("{self} at z = {z}"));
        let z = z as i128;
        let c2 = |z: i128| z.checked_mul(z - 1).map(|v| v / 2);
        let lin = |k: i128, q: Option<i128>, l: i128| q.and_then(|q| k.checked_mul(q)).and_then(|v| v.checked_add(l));
        let core = match self.kind {
            GeneratorKind::Square => z.checked_mul(z),
            GeneratorKind::Triangular => z.checked_mul(z + 1).map(|v| v / 2),
            GeneratorKind::Polygonal(m) => lin(m as i128 - 2, c2(z), z),
            GeneratorKind::SecondPolygonal(m) => lin(m as i128 - 2, c2(-z), -z),
            GeneratorKind::GenPoly { c, d } => lin(c as i128, c2(z), d as i128 * z),
            GeneratorKind::ReflectedGenPoly { c, d } => lin(c as i128, c2(-z), -(d as i128) * z),
            GeneratorKind::Zero => Some(0),
        };
        let value = core.and_then(|v| v.checked_mul(self.coeff as i128)).ok_or_else(overflow)?;
        i64::try_from(value).map_err(|_| overflow())
    }

    /// Branches of the value set as `(a, b, sign)`: values are
    /// `coeff*(a*z^2 + b*z)/2` for `z >= 0`, reported with argument `sign*z`.
    fn branches(&self) -> Vec<(i64, i64, i64)> {
        let (a, b) = self.kind.quadratic();
        match self.domain {
            Domain::Naturals => vec![(a, b, 1)],
            Domain::Integers if b == 0 => vec![(a, b, 1)],
            Domain::Integers => vec![(a, b, 1), (a, -b, -1)],
        }
    }

    /// Smallest value attained over the domain.
    pub fn min_value(&self) -> i64 {
        self.branches()
            .into_iter()
            .map(|(a, b, _)| {
                if a == 0 {
                    return 0;
                }
                // The vertex of a*z^2 + b*z sits at -b/(2a); check the two
                // integers around it, clamped to z >= 0.
                let v = (-b).div_euclid(2 * a).max(0);
                [v, v + 1].into_iter().map(|z| self.coeff as i64 * (a * z * z + b * z) / 2).min().unwrap_or(0)
            })
            .min()
            .unwrap_or(0)
    }

    /// All distinct values in `[lo, hi]`, ascending, each paired with the
    /// argument of least absolute value that attains it.
    pub fn value_points(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if hi < lo {
            return out;
        }
        let coeff = self.coeff as i128;
        for (a, b, sign) in self.branches() {
            let (a, b) = (a as i128, b as i128);
            if a == 0 {
                if lo <= 0 && 0 <= hi {
                    out.push((0, 0));
                }
                continue;
            }
            let mut z: i128 = 0;
            loop {
                let v = coeff * (a * z * z + b * z) / 2;
                let rising = a * (2 * z + 1) + b > 0;
                if v > hi as i128 && rising {
                    break;
                }
                if v >= lo as i128 && v <= hi as i128 {
                    out.push((v as i64, sign * z as i64));
                }
                z += 1;
            }
        }
        out.sort_unstable_by_key(|&(v, z)| (v, z.unsigned_abs(), z < 0));
        out.dedup_by_key(|p| p.0);
        out
    }

    /// Ascending distinct values in `[0, bound]`.
    pub fn value_stream(&self, bound: u64) -> Vec<u64> {
        let hi = bound.min(i64::MAX as u64) as i64;
        self.value_points(0, hi).into_iter().map(|(v, _)| v as u64).collect()
    }

    /// Conventional rendering with the given variable name.
    pub fn pretty(&self, var: &str) -> String {
        let body = match self.kind {
            GeneratorKind::Square => format!("{var}^2"),
            GeneratorKind::Triangular => format!("T_{var}"),
            GeneratorKind::Polygonal(m) => format!("p_{m}({var})"),
            GeneratorKind::SecondPolygonal(m) => format!("pbar_{m}({var})"),
            GeneratorKind::GenPoly { c, d } => display_with_var(c, d, var),
            GeneratorKind::ReflectedGenPoly { c, d } => {
                format!("[{}]({var}->-{var})", display_with_var(c, d, var))
            }
            GeneratorKind::Zero => return "0".into(),
        };
        let body = if self.domain == Domain::Integers { format!("{body}@Z") } else { body };
        match (self.coeff, self.kind) {
            (1, _) => body,
            (k, GeneratorKind::GenPoly { .. }) => format!("{k}*({body})"),
            (k, _) => format!("{k}{body}"),
        }
    }
}

impl fmt::Display for Generator {
    /// Canonical grammar form, e.g. `2*gp(3,2)@int`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GeneratorKind::Square => "sq".to_string(),
            GeneratorKind::Triangular => "tri".to_string(),
            GeneratorKind::Polygonal(m) => format!("p({m})"),
            GeneratorKind::SecondPolygonal(m) => format!("pbar({m})"),
            GeneratorKind::GenPoly { c, d } => format!("gp({c},{d})"),
            GeneratorKind::ReflectedGenPoly { c, d } => format!("gpneg({c},{d})"),
            GeneratorKind::Zero => return f.write_str("0"),
        };
        write!(f, "{}*{}", self.coeff, kind)?;
        if self.domain == Domain::Integers {
            f.write_str("@int")?;
        }
        Ok(())
    }
}

/// Splits an integer-domain `gp(c,d)` into its two natural-domain branches:
/// `f(z)` and `f(-z) = c*C(z,2) + (c-d)*z`. The second branch can be negative
/// for small `z` when `d > c`.
pub fn integer_domain_split(g: &Generator) -> Result<(Generator, Generator)> {
    match g.kind {
        GeneratorKind::GenPoly { c, d } => {
            let pos = Generator { kind: g.kind, coeff: g.coeff, domain: Domain::Naturals };
            let neg =
                Generator { kind: GeneratorKind::ReflectedGenPoly { c, d }, coeff: g.coeff, domain: Domain::Naturals };
            Ok((pos, neg))
        }
        other => Err(Error::InvalidGenerator(format!("cannot split {other:?}; expected gp(c,d)"))),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Renders `c*C(z,2) + d*z` as `k*z(A*z+B)/2` in lowest terms, dropping the
/// denominator when the common factor is even: `(1,2) -> "z(z+3)/2"`,
/// `(2,4) -> "z(z+3)"`, `(3,6) -> "3z(z+3)/2"`.
pub fn canonical_display(c: u32, d: u32) -> String {
    display_with_var(c, d, "z")
}

pub fn display_with_var(c: u32, d: u32, var: &str) -> String {
    let c = c as i64;
    let e = 2 * d as i64 - c;
    if e == 0 {
        // c = 2d: the polynomial is d*z^2.
        return if d == 1 { format!("{var}^2") } else { format!("{d}{var}^2") };
    }
    let g = gcd(c, e);
    let (lead, lin) = (c / g, e / g);
    let (scale, halved) = if g % 2 == 0 { (g / 2, false) } else { (g, true) };
    let prefix = if scale == 1 { String::new() } else { scale.to_string() };
    let lead = if lead == 1 { String::new() } else { lead.to_string() };
    let sign = if lin < 0 { '-' } else { '+' };
    let tail = if halved { "/2" } else { "" };
    format!("{prefix}{var}({lead}{var}{sign}{}){tail}", lin.abs())
}

/// An ordered triple of summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TernaryForm {
    terms: [Generator; 3],
}

impl TernaryForm {
    pub fn new(terms: [Generator; 3]) -> Self {
        Self { terms }
    }

    /// `f1 + f2 + 0`.
    pub fn two_term(first: Generator, second: Generator) -> Self {
        Self { terms: [first, second, Generator::zero()] }
    }

    pub fn terms(&self) -> &[Generator; 3] {
        &self.terms
    }

    /// Conventional rendering, e.g. `T_x+2T_y+z(z+3)/2`.
    pub fn pretty(&self) -> String {
        let parts: Vec<String> =
            self.terms.iter().zip(["x", "y", "z"]).filter(|(g, _)| !g.is_zero()).map(|(g, v)| g.pretty(v)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.terms;
        write!(f, "{a} + {b} + {c}")
    }
}
