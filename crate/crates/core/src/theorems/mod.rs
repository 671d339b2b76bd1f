//! Identity checks, shift reductions and bounded universality scans.

pub mod expr;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{FamilyKind, TheoremList};
use crate::data;
use crate::error::{Error, Result};
use crate::generators::{Domain, Generator, TernaryForm};
use crate::grammar::parse_form;
use crate::sieve::{first_witness, form_mask, generator_mask, sumset_mask, ValueMask};
use crate::verdict::Verdict;
use expr::Equation;

fn tri(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// `{x^2 + 2T_y} = {T_x + T_y}` on `[0, n]`, and
/// `x^2 + y(y+1) = T_{x+y} + T_{x-y-1}` for `0 <= x, y <= m`.
pub fn euler_identity_check(n: u64, m: u64) -> Result<Verdict> {
    let mut v = Verdict::new(format!("euler n={n} m={m}"));
    let left = form_mask(&TernaryForm::two_term(Generator::square(1), Generator::triangular(2)), n)?;
    let right = form_mask(&TernaryForm::two_term(Generator::triangular(1), Generator::triangular(1)), n)?;
    for i in 0..=n {
        let (l, r) = (left.contains(i), right.contains(i));
        v.check(l == r, || format!("{i}: x^2+2T_y {l}, T_x+T_y {r}"));
    }
    let m = m as i64;
    for x in 0..=m {
        for y in 0..=m {
            let (l, r) = (x * x + y * (y + 1), tri(x + y) + tri(x - y - 1));
            v.check(l == r, || format!("x={x} y={y}: {l} != {r}"));
        }
    }
    Ok(v)
}

/// True iff `n` is not of the form `4^k(8l+7)`.
pub fn three_square_eligible(mut n: u64) -> bool {
    while n != 0 && n.is_multiple_of(4) {
        n /= 4;
    }
    n % 8 != 7
}

/// `three_square_eligible` against the sieve of `x^2 + y^2 + z^2` on `[0, n]`.
pub fn gauss_legendre_check(n: u64) -> Result<Verdict> {
    let mut v = Verdict::new(format!("gauss-legendre n={n}"));
    let sq = Generator::square(1);
    let mask = form_mask(&TernaryForm::new([sq, sq, sq]), n)?;
    for i in 0..=n {
        let (p, s) = (three_square_eligible(i), mask.contains(i));
        v.check(p == s, || format!("{i}: predicate {p}, sieve {s}"));
    }
    Ok(v)
}

/// "The largest argument among `slots` is at least `at_least`."
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub slots: Vec<usize>,
    pub at_least: u64,
}

/// `(argument, value)` pairs of a natural-domain term with `z >= z0` and value
/// at most `bound`.
fn arg_values(g: &Generator, z0: u64, bound: u64) -> Result<Vec<(u64, u64)>> {
    if g.domain() != Domain::Naturals {
        return Err(Error::Config("constrained checks need natural-domain terms".into()));
    }
    let mut out = Vec::new();
    if g.is_zero() {
        if z0 == 0 {
            out.push((0, 0));
        }
        return Ok(out);
    }
    let mut z = z0 as i64;
    loop {
        let v = g.eval(z)?;
        if v > bound as i64 && g.eval(z + 1)? > v {
            return Ok(out);
        }
        if (0..=bound as i64).contains(&v) {
            out.push((z as u64, v as u64));
        }
        z += 1;
    }
}

/// Searches for `n = base(x0, x1, x2)` with the constraint on the arguments.
/// Returns the first triple found, in lexicographic order of arguments.
pub fn constrained_rep_check(n: u64, base: &TernaryForm, c: &Constraint) -> Result<Option<[u64; 3]>> {
    let terms = base.terms();
    let pts = terms.iter().map(|g| arg_values(g, 0, n)).collect::<Result<Vec<_>>>()?;
    let mut last: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(z, v) in &pts[2] {
        last.entry(v).or_default().push(z);
    }
    let ok = |args: [u64; 3]| c.slots.iter().any(|&s| args[s] >= c.at_least) || c.slots.is_empty();
    for &(z0, v0) in &pts[0] {
        for &(z1, v1) in &pts[1] {
            let Some(rest) = n.checked_sub(v0 + v1) else { continue };
            if let Some(z2) = last.get(&rest).and_then(|zs| zs.iter().find(|&&z2| ok([z0, z1, z2]))) {
                return Ok(Some([z0, z1, *z2]));
            }
        }
    }
    Ok(None)
}

/// Values on `[0, bound]` of `base` with the constraint applied, as the union
/// over constrained slots `s` of `{arg_s >= k} + other two terms`.
fn constrained_mask(base: &TernaryForm, c: &Constraint, bound: u64) -> Result<ValueMask> {
    let terms = base.terms();
    let full = terms.iter().map(|g| generator_mask(g, bound)).collect::<Result<Vec<_>>>()?;
    let mut out = ValueMask::empty(bound)?;
    for &s in &c.slots {
        let restricted =
            ValueMask::from_values(bound, arg_values(&terms[s], c.at_least, bound)?.into_iter().map(|p| p.1))?;
        let others: Vec<&ValueMask> = (0..3).filter(|&i| i != s).map(|i| &full[i]).collect();
        let m = sumset_mask(&sumset_mask(others[0], others[1], bound)?, &restricted, bound)?;
        for i in m.iter_ones() {
            out.insert(i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shift {
    /// `T_{z+k} - T_k = z(z+2k+1)/2`.
    Triangular,
    /// `(z+k)^2 - k^2 = z(z+2k)`.
    Square,
}

/// A shifted form and the constrained base form it reduces to: `target` is
/// universal iff every `n >= floor` is `base` with the constraint met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftReduction {
    pub name: String,
    pub base: TernaryForm,
    /// Slot of `base` replaced by the shifted term in the target.
    pub shifted_slot: usize,
    pub constrained_slots: Vec<usize>,
    pub k: u32,
    pub shift: Shift,
}

impl ShiftReduction {
    pub fn floor(&self) -> u64 {
        let k = self.k as u64;
        let unit = match self.shift {
            Shift::Triangular => k * (k + 1) / 2,
            Shift::Square => k * k,
        };
        unit * self.base.terms()[self.shifted_slot].coeff() as u64
    }

    pub fn constraint(&self) -> Constraint {
        Constraint { slots: self.constrained_slots.clone(), at_least: self.k as u64 }
    }

    /// The base with the shifted slot replaced by the matching `gp` term.
    pub fn target(&self) -> Result<TernaryForm> {
        let g = match self.shift {
            Shift::Triangular => Generator::gp(1, self.k + 1)?,
            Shift::Square => Generator::gp(2, 2 * self.k + 1)?,
        };
        let mut terms = *self.base.terms();
        terms[self.shifted_slot] = g.with_coeff(terms[self.shifted_slot].coeff())?;
        Ok(TernaryForm::new(terms))
    }
}

/// For every `n` in `[0, bound]`: `n` is attained by the target iff
/// `n + floor` is attained by the constrained base.
pub fn shift_reduction_equiv(red: &ShiftReduction, bound: u64) -> Result<Verdict> {
    let target = red.target()?;
    let floor = red.floor();
    let mut v = Verdict::new(format!("{} (k={}) on [0, {bound}]", red.name, red.k));
    let lhs = form_mask(&target, bound)?;
    let rhs = constrained_mask(&red.base, &red.constraint(), bound + floor)?;
    for n in 0..=bound {
        let (l, r) = (lhs.contains(n), rhs.contains(n + floor));
        v.check(l == r, || format!("{n}: {} {l}, constrained base at {} {r}", target.pretty(), n + floor));
    }
    Ok(v)
}

fn form(s: &str) -> TernaryForm {
    parse_form(s, false).expect("built-in form")
}

/// Every reduction used for the bounded-universality sums, with `k = 0`
/// entries reducing to the base itself.
pub fn standard_reductions() -> Vec<ShiftReduction> {
    let mk = |name: &str, base: &str, slots: &[usize], k: u32, shift| ShiftReduction {
        name: name.to_string(),
        base: form(base),
        shifted_slot: 2,
        constrained_slots: slots.to_vec(),
        k,
        shift,
    };
    let mut out = vec![
        mk("x^2+y^2+z(z+3)/2", "sq + sq + tri", &[2], 1, Shift::Triangular),
        mk("T_x+T_y+z(z+2)", "tri + tri + sq", &[2], 1, Shift::Square),
        mk("T_x+(2y)^2+z(z+3)/2", "4*sq + tri + tri", &[1, 2], 1, Shift::Triangular),
    ];
    for k in 0..=4 {
        out.push(mk("T_x+T_y+z(z+2k+1)/2", "tri + tri + tri", &[0, 1, 2], k, Shift::Triangular));
    }
    for k in 0..=3 {
        out.push(mk("T_x+2T_y+z(z+2k+1)/2", "2*tri + tri + tri", &[1, 2], k, Shift::Triangular));
        out.push(mk("T_x+y^2+z(z+2k)", "tri + sq + sq", &[1, 2], k, Shift::Square));
    }
    for k in 0..=7 {
        out.push(mk("T_x+y^2+z(z+2k+1)/2", "sq + tri + tri", &[1, 2], k, Shift::Triangular));
    }
    out
}

/// Re-evaluates one table of decompositions and its side constraint.
pub fn table_verify(t: &data::TableEntry) -> Result<Verdict> {
    let mut v = Verdict::new(format!("table: {}", t.name));
    for raw in &t.entries {
        let eq = Equation::parse(raw)?;
        let Some((l, r)) = eq.sides(0) else {
            v.fail(format!("{eq}: negative index"));
            continue;
        };
        v.check(l == r, || format!("{eq}: left {l}, right {r}"));
        if let Some(c) = &t.constraint {
            let arg = eq.max_unit_arg(c.kind == "sq", 0);
            v.check(arg.is_some_and(|a| a >= c.at_least), || {
                format!("{eq}: needs a unit {} term with argument >= {}", c.kind, c.at_least)
            });
        }
    }
    for e in data::tables().erratum.iter().filter(|e| e.table == t.name) {
        let printed = Equation::parse(&e.printed)?;
        let corrected = Equation::parse(&e.corrected)?;
        let (pl, pr) = printed.sides(0).unwrap_or_default();
        v.notes.push(format!("printed `{printed}` evaluates to {pl} = {pr}; stored as `{corrected}`"));
        v.check(pl != pr && t.entries.iter().any(|s| s.trim() == e.corrected), || {
            format!("erratum `{}` does not match the table", e.printed)
        });
    }
    Ok(v)
}

/// Every identity of a family for `x` from its least valid value to `x_hi`.
pub fn identity_verify(f: &data::IdentityFamily, x_hi: i64) -> Result<Verdict> {
    let mut v = Verdict::new(format!("identities: {} for x <= {x_hi}", f.name));
    for raw in &f.entries {
        let eq = Equation::parse(raw)?;
        let Some(lo) = eq.min_x() else {
            v.fail(format!("{eq}: no valid x"));
            continue;
        };
        for x in lo..=x_hi {
            match eq.sides(x) {
                Some((l, r)) => v.check(l == r, || format!("{eq} at x={x}: {l} != {r}")),
                None => v.fail(format!("{eq} at x={x}: negative index")),
            }
        }
    }
    Ok(v)
}

/// `{T_i + T_j : i, j <= max_index}` against the stated description.
pub fn pair_sums_verify() -> Verdict {
    let p = &data::tables().pair_sums;
    let mut v = Verdict::new(format!("T_i+T_j for i,j <= {}", p.max_index));
    let got: BTreeSet<u64> =
        (0..=p.max_index).flat_map(|i| (0..=p.max_index).map(move |j| (tri(i) + tri(j)) as u64)).collect();
    let want: BTreeSet<u64> =
        (p.range[0]..=p.range[1]).filter(|n| !p.excluded.contains(n)).chain(p.extra.iter().copied()).collect();
    v.check(got == want, || {
        format!(
            "missing {:?}, extra {:?}",
            want.difference(&got).collect::<Vec<_>>(),
            got.difference(&want).collect::<Vec<_>>()
        )
    });
    v
}

/// All table, identity and pair-sum checks, with `x` up to `x_hi`.
pub fn decomposition_tables_verify(x_hi: i64) -> Result<Vec<Verdict>> {
    let t = data::tables();
    let mut out = t.table.iter().map(table_verify).collect::<Result<Vec<_>>>()?;
    for f in &t.identities {
        out.push(identity_verify(f, x_hi)?);
    }
    out.push(pair_sums_verify());
    Ok(out)
}

/// Every non-triangular `n <= bound` is `a^2 + b^2 + T_c` both with `a, b` of
/// different parity and with `a, b` of equal parity.
pub fn s07_parity_scan(bound: u64) -> Result<Verdict> {
    let mut v = Verdict::new(format!("a^2+b^2+T_c parity splits up to {bound}"));
    let mut odd = ValueMask::empty(bound)?;
    let mut even = ValueMask::empty(bound)?;
    let mut a = 0u64;
    while a * a <= bound {
        let mut b = 0u64;
        while a * a + b * b <= bound {
            let m = if (a + b) % 2 == 1 { &mut odd } else { &mut even };
            m.insert(a * a + b * b);
            b += 1;
        }
        a += 1;
    }
    let t = generator_mask(&Generator::triangular(1), bound)?;
    let odd = sumset_mask(&odd, &t, bound)?;
    let even = sumset_mask(&even, &t, bound)?;
    for n in (0..=bound).filter(|&n| !t.contains(n)) {
        let (o, e) = (odd.contains(n), even.contains(n));
        v.check(o && e, || format!("{n}: different parity {o}, same parity {e}"));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conjecture {
    /// Candidates of the classification lists not yet proved universal.
    Remaining,
    /// The 58 sums involving polygonal numbers.
    Polygonal,
}

impl Conjecture {
    pub fn key(self) -> &'static str {
        match self {
            Conjecture::Remaining => "1.1",
            Conjecture::Polygonal => "1.2",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1.1" | "remaining" => Ok(Conjecture::Remaining),
            "1.2" | "polygonal" => Ok(Conjecture::Polygonal),
            _ => Err(Error::Config(format!("unknown conjecture `{s}` (1.1 or 1.2)"))),
        }
    }
}

/// The sums proved universal, in table order.
pub fn proved_forms() -> Result<Vec<TernaryForm>> {
    data::tables().proved.iter().map(|p| parse_form(&p.form, false)).collect()
}

/// Forms covered by a conjecture, in table order.
pub fn conjecture_forms(which: Conjecture) -> Result<Vec<TernaryForm>> {
    match which {
        Conjecture::Polygonal => data::tables().conjectured.iter().map(|c| parse_form(&c.form, false)).collect(),
        Conjecture::Remaining => {
            let proved: BTreeSet<String> = proved_forms()?.iter().map(|f| f.to_string()).collect();
            let mut out = Vec::new();
            for list in TheoremList::ALL.into_iter().filter(|l| *l != TheoremList::Liouville) {
                let family: FamilyKind = list.family();
                for t in list.expected() {
                    let f = family.form(t)?;
                    if !proved.contains(&f.to_string()) {
                        out.push(f);
                    }
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub form: String,
    pub pretty: String,
    pub witness: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub name: String,
    pub bound: u64,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.witness.is_some())
    }

    pub fn passed(&self) -> bool {
        self.counterexamples().next().is_none()
    }
}

/// `first_witness` for each form, in parallel; entries keep input order.
pub fn scan_forms(name: impl Into<String>, forms: &[TernaryForm], bound: u64) -> Result<ScanReport> {
    let entries = forms
        .par_iter()
        .map(|f| Ok(ScanEntry { form: f.to_string(), pretty: f.pretty(), witness: first_witness(f, bound)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { name: name.into(), bound, entries })
}

pub fn conjecture_scan(which: Conjecture, bound: u64) -> Result<ScanReport> {
    scan_forms(format!("conjecture {which}"), &conjecture_forms(which)?, bound)
}

/// Bounded universality of every proved sum.
pub fn proved_scan(bound: u64) -> Result<ScanReport> {
    scan_forms("proved sums", &proved_forms()?, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_small() {
        let v = euler_identity_check(2000, 50).unwrap();
        assert!(v.passed, "{:?}", v.failures);
        assert_eq!(v.checked, 2001 + 51 * 51);
    }

    #[test]
    fn three_squares_examples() {
        assert!(!three_square_eligible(7));
        assert!(three_square_eligible(0));
        assert!(!three_square_eligible(28));
        assert!(!three_square_eligible(60));
        assert!(three_square_eligible(12));
    }

    #[test]
    fn constrained_examples() {
        let c = |slots: &[usize], k| Constraint { slots: slots.to_vec(), at_least: k };
        assert_eq!(constrained_rep_check(10, &form("tri + sq + sq"), &c(&[1, 2], 3)).unwrap(), Some([0, 1, 3]));
        assert_eq!(constrained_rep_check(28, &form("sq + tri + tri"), &c(&[2], 7)).unwrap(), Some([0, 0, 7]));
        assert_eq!(constrained_rep_check(0, &form("tri + tri + tri"), &c(&[0, 1, 2], 0)).unwrap(), Some([0, 0, 0]));
        // 5 = T_x + T_y + T_z needs T_2 = 3, but never an index >= 3.
        assert_eq!(constrained_rep_check(5, &form("tri + tri + tri"), &c(&[0, 1, 2], 3)).unwrap(), None);
    }

    #[test]
    fn targets() {
        let reds = standard_reductions();
        let find = |name: &str, k| reds.iter().find(|r| r.name == name && r.k == k).unwrap();
        let r = find("T_x+T_y+z(z+2k+1)/2", 4);
        assert_eq!(r.floor(), 10);
        assert_eq!(r.target().unwrap().pretty(), "T_x+T_y+z(z+9)/2");
        let r = find("T_x+y^2+z(z+2k)", 2);
        assert_eq!(r.floor(), 4);
        assert_eq!(r.target().unwrap().pretty(), "T_x+y^2+z(z+4)");
        let r = find("T_x+y^2+z(z+2k+1)/2", 7);
        assert_eq!(r.floor(), 28);
        assert_eq!(r.target().unwrap().pretty(), "x^2+T_y+z(z+15)/2");
        let r = find("T_x+(2y)^2+z(z+3)/2", 1);
        assert_eq!(r.target().unwrap().pretty(), "4x^2+T_y+z(z+3)/2");
    }

    #[test]
    fn zero_shift_is_identity() {
        for r in standard_reductions().into_iter().filter(|r| r.k == 0) {
            assert_eq!(r.floor(), 0);
            let a = form_mask(&r.target().unwrap(), 500).unwrap();
            let b = form_mask(&r.base, 500).unwrap();
            assert_eq!(a, b, "{}", r.name);
        }
    }

    #[test]
    fn reductions_hold_small() {
        for r in standard_reductions() {
            let v = shift_reduction_equiv(&r, 2000).unwrap();
            assert!(v.passed, "{}: {:?}", v.name, v.failures);
        }
    }

    #[test]
    fn broken_reduction_is_detected() {
        // Constraining the wrong amount breaks the equivalence.
        let mut r = standard_reductions().into_iter().find(|r| r.name == "T_x+T_y+z(z+2k+1)/2" && r.k == 4).unwrap();
        r.constrained_slots = vec![2];
        r.k = 4;
        r.shift = Shift::Square;
        assert!(!shift_reduction_equiv(&r, 500).unwrap().passed);
    }

    #[test]
    fn tables_and_identities() {
        for v in decomposition_tables_verify(300).unwrap() {
            assert!(v.passed, "{}: {:?}", v.name, v.failures);
        }
    }

    #[test]
    fn erratum_is_reported() {
        let t = data::tables().table.iter().find(|t| t.name.starts_with("shift k=3")).unwrap();
        let v = table_verify(t).unwrap();
        assert!(v.passed);
        assert_eq!(v.notes.len(), 1);
        assert!(v.notes[0].contains("evaluates to 0 = 9"), "{}", v.notes[0]);
    }

    #[test]
    fn bad_table_entry_fails() {
        let t = data::TableEntry {
            name: "bad".into(),
            constraint: Some(data::TableConstraint { kind: "T".into(), at_least: 7 }),
            entries: vec!["29 = 0^2 + T_1 + T_7".into(), "30 = 0^2 + T_1 + T_7".into(), "7 = 1^2 + T_3 + T_0".into()],
        };
        let v = table_verify(&t).unwrap();
        assert_eq!(v.failure_count, 2);
    }

    #[test]
    fn parity_scan_small() {
        let v = s07_parity_scan(3000).unwrap();
        assert!(v.passed, "{:?}", v.failures);
    }

    #[test]
    fn conjecture_form_counts() {
        assert_eq!(conjecture_forms(Conjecture::Remaining).unwrap().len(), 93);
        assert_eq!(conjecture_forms(Conjecture::Polygonal).unwrap().len(), 58);
        assert_eq!(proved_forms().unwrap().len(), 20);
    }

    #[test]
    fn every_proved_sum_is_a_candidate() {
        let mut all = BTreeSet::new();
        for list in TheoremList::ALL.into_iter().filter(|l| *l != TheoremList::Liouville) {
            for t in list.expected() {
                all.insert(list.family().form(t).unwrap().to_string());
            }
        }
        for f in proved_forms().unwrap() {
            assert!(all.contains(&f.to_string()), "{}", f.pretty());
        }
    }

    #[test]
    fn scan_at_zero_bound_is_clean() {
        let r = conjecture_scan(Conjecture::Polygonal, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.entries.len(), 58);
    }
}
