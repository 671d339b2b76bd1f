//! Bitset value masks, shift-OR sumsets and witness search.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{Generator, TernaryForm};

/// Largest accepted sieve bound.
pub const MAX_BOUND: u64 = 1 << 32;

/// Reports with more witnesses than this should be streamed, not collected.
pub const WITNESS_STREAM_THRESHOLD: usize = 1_000_000;

fn check_bound(bound: u64) -> Result<()> {
    if bound > MAX_BOUND {
        Err(Error::BoundTooLarge(bound))
    } else {
        Ok(())
    }
}

fn words_for(bound: u64) -> usize {
    (bound / 64 + 1) as usize
}

/// Bitset over `[0, bound]`; bit `n` set iff `n` is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueMask {
    bound: u64,
    words: Vec<u64>,
}

impl ValueMask {
    pub fn empty(bound: u64) -> Result<Self> {
        check_bound(bound)?;
        Ok(Self { bound, words: vec![0; words_for(bound)] })
    }

    pub fn from_values<I: IntoIterator<Item = u64>>(bound: u64, values: I) -> Result<Self> {
        let mut mask = Self::empty(bound)?;
        for v in values {
            if v <= bound {
                mask.insert(v);
            }
        }
        Ok(mask)
    }

    /// Rebuilds a mask from raw words; bits past `bound` must be clear.
    pub fn from_words(bound: u64, words: Vec<u64>) -> Result<Self> {
        check_bound(bound)?;
        if words.len() != words_for(bound) {
            return Err(Error::Cache(format!(
                "expected {} words for bound {bound}, found {}",
                words_for(bound),
                words.len()
            )));
        }
        let mut mask = Self { bound, words };
        let before = mask.words.last().copied();
        mask.clear_tail();
        if mask.words.last().copied() != before {
            return Err(Error::Cache("bits set beyond the bound".into()));
        }
        Ok(mask)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.bound && self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn insert(&mut self, n: u64) {
        assert!(n <= self.bound, "{n} outside mask bound {}", self.bound);
        self.words[(n / 64) as usize] |= 1 << (n % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_full(&self) -> bool {
        self.first_zero().is_none()
    }

    fn clear_tail(&mut self) {
        let used = (self.bound % 64 + 1) as u32;
        if used < 64 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| bits(w).map(move |b| i as u64 * 64 + b))
    }

    /// Unattained values in ascending order.
    pub fn iter_zeros(&self) -> impl Iterator<Item = u64> + '_ {
        let bound = self.bound;
        self.words
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| bits(!w).map(move |b| i as u64 * 64 + b))
            .take_while(move |&n| n <= bound)
    }

    pub fn first_zero(&self) -> Option<u64> {
        self.iter_zeros().next()
    }

    /// The mask restricted to `[0, bound]`.
    pub fn prefix(&self, bound: u64) -> ValueMask {
        let bound = bound.min(self.bound);
        let mut out = Self { bound, words: self.words[..words_for(bound)].to_vec() };
        out.clear_tail();
        out
    }

    /// Bits `offset ..= offset + bound` moved down to `0 ..= bound`.
    fn window(&self, offset: u64, bound: u64) -> ValueMask {
        if offset == 0 {
            return self.prefix(bound);
        }
        let (w, r) = ((offset / 64) as usize, (offset % 64) as u32);
        let len = words_for(bound);
        let at = |i: usize| self.words.get(i).copied().unwrap_or(0);
        let words =
            (0..len).map(|i| if r == 0 { at(i + w) } else { at(i + w) >> r | at(i + w + 1) << (64 - r) }).collect();
        let mut out = Self { bound, words };
        out.clear_tail();
        out
    }
}

fn bits(mut w: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let b = w.trailing_zeros() as u64;
            w &= w - 1;
            Some(b)
        }
    })
}

/// `dst |= src << shift`, truncated to `dst`'s length.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: u64) {
    let (w, r) = ((shift / 64) as usize, (shift % 64) as u32);
    if w >= dst.len() {
        return;
    }
    let dst = &mut dst[w..];
    if r == 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
    } else {
        let mut carry = 0u64;
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s << r | carry;
            carry = s >> (64 - r);
        }
        if src.len() < dst.len() {
            dst[src.len()] |= carry;
        }
    }
}

/// Values of `g` in `[0, bound]`.
pub fn generator_mask(g: &Generator, bound: u64) -> Result<ValueMask> {
    check_bound(bound)?;
    ValueMask::from_values(bound, g.value_stream(bound))
}

/// Values of `g` shifted by `-offset` onto `[0, bound]`.
fn shifted_generator_mask(g: &Generator, offset: i64, bound: u64) -> Result<ValueMask> {
    let hi = offset + bound as i64;
    let pts = g.value_points(offset, hi);
    ValueMask::from_values(bound, pts.into_iter().map(|(v, _)| (v - offset) as u64))
}

/// `{u + v <= bound : u in a, v in b}` by OR-ing shifted copies of the denser
/// mask once per element of the sparser one.
pub fn sumset_mask(a: &ValueMask, b: &ValueMask, bound: u64) -> Result<ValueMask> {
    check_bound(bound)?;
    if a.bound < bound || b.bound < bound {
        return Err(Error::Config(format!("sumset bound {bound} exceeds operand bounds {} / {}", a.bound, b.bound)));
    }
    let (sparse, dense) = if a.count_ones() <= b.count_ones() { (a, b) } else { (b, a) };
    let dense = dense.prefix(bound);
    let mut out = ValueMask::empty(bound)?;
    for s in sparse.iter_ones().take_while(|&s| s <= bound) {
        or_shifted(&mut out.words, &dense.words, s);
    }
    out.clear_tail();
    Ok(out)
}

/// Attained values of `f` on `[0, bound]`.
///
/// Terms with negative values (integer-domain `gp`, reflected branches) are
/// handled by shifting every term to start at 0, sieving the widened range
/// and reading the result back at the offset.
pub fn form_mask(f: &TernaryForm, bound: u64) -> Result<ValueMask> {
    check_bound(bound)?;
    let terms = f.terms();
    let mins: Vec<i64> = terms.iter().map(|g| g.min_value().min(0)).collect();
    let offset = -mins.iter().sum::<i64>() as u64;
    let span = bound + offset;
    check_bound(span)?;
    let mut masks =
        terms.iter().zip(&mins).map(|(g, &m)| shifted_generator_mask(g, m, span)).collect::<Result<Vec<_>>>()?;
    masks.sort_by_key(|m| m.count_ones());
    let pair = sumset_mask(&masks[0], &masks[1], span)?;
    let all = sumset_mask(&pair, &masks[2], span)?;
    Ok(all.window(offset, bound))
}

/// Non-attained values of a form up to a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub form: TernaryForm,
    pub bound: u64,
    pub witnesses: Vec<u64>,
    /// Every argument triple whose term values fit under the bound was
    /// accounted for by the sieve.
    pub exhaustive: bool,
}

pub fn non_representables(f: &TernaryForm, bound: u64) -> Result<WitnessReport> {
    let mask = form_mask(f, bound)?;
    Ok(WitnessReport { form: *f, bound, witnesses: mask.iter_zeros().collect(), exhaustive: true })
}

/// Least non-attained value `<= bound`. Sieves geometrically growing
/// prefixes so that small witnesses are found without a full-size sieve.
pub fn first_witness(f: &TernaryForm, bound: u64) -> Result<Option<u64>> {
    check_bound(bound)?;
    let mut step = bound.min(4096);
    loop {
        if let Some(w) = form_mask(f, step)?.first_zero() {
            return Ok(Some(w));
        }
        if step == bound {
            return Ok(None);
        }
        step = (step * 16).min(bound);
    }
}

pub fn is_universal_up_to(f: &TernaryForm, bound: u64) -> Result<bool> {
    Ok(first_witness(f, bound)?.is_none())
}

/// Arguments enumerated for one term while proving (non-)representability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRange {
    /// Inclusive value window searched.
    pub value_lo: i64,
    pub value_hi: i64,
    /// Smallest and largest argument that produced a value in the window.
    pub z_min: i64,
    pub z_max: i64,
    pub values: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonrepCheck {
    pub value: u64,
    /// Arguments `(x, y, z)` of a representation, if one exists.
    pub representation: Option<[i64; 3]>,
    pub certificate: [TermRange; 3],
}

impl NonrepCheck {
    pub fn is_nonrepresentable(&self) -> bool {
        self.representation.is_none()
    }
}

/// Decides whether `n` is attained by direct enumeration, independent of the
/// bitset sieve. Each term is enumerated over every value that could take
/// part in a representation of `n`.
pub fn check_nonrep(f: &TernaryForm, n: u64) -> Result<NonrepCheck> {
    check_bound(n)?;
    let n = n as i64;
    let terms = f.terms();
    let mins: Vec<i64> = terms.iter().map(|g| g.min_value().min(0)).collect();
    let total_min: i64 = mins.iter().sum();
    let points: Vec<Vec<(i64, i64)>> =
        terms.iter().zip(&mins).map(|(g, &m)| g.value_points(m, n - (total_min - m))).collect();
    let certificate = std::array::from_fn(|i| {
        let pts = &points[i];
        TermRange {
            value_lo: mins[i],
            value_hi: n - (total_min - mins[i]),
            z_min: pts.iter().map(|p| p.1).min().unwrap_or(0),
            z_max: pts.iter().map(|p| p.1).max().unwrap_or(0),
            values: pts.len(),
        }
    });
    let last: HashMap<i64, i64> = points[2].iter().copied().collect();
    let mut representation = None;
    'outer: for &(u, x) in &points[0] {
        if u + mins[1] + mins[2] > n {
            break;
        }
        for &(v, y) in &points[1] {
            if u + v + mins[2] > n {
                break;
            }
            if let Some(&z) = last.get(&(n - u - v)) {
                representation = Some([x, y, z]);
                break 'outer;
            }
        }
    }
    Ok(NonrepCheck { value: n as u64, representation, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Domain;

    fn mask(bound: u64, vals: &[u64]) -> ValueMask {
        ValueMask::from_values(bound, vals.iter().copied()).unwrap()
    }

    fn ones(m: &ValueMask) -> Vec<u64> {
        m.iter_ones().collect()
    }

    fn form(s: &str) -> TernaryForm {
        s.parse().unwrap()
    }

    #[test]
    fn generator_masks() {
        assert_eq!(ones(&generator_mask(&Generator::triangular(1), 6).unwrap()), [0, 1, 3, 6]);
        assert_eq!(ones(&generator_mask(&Generator::gp(1, 2).unwrap(), 14).unwrap()), [0, 2, 5, 9, 14]);
        for g in [Generator::square(3), Generator::gp(7, 2).unwrap(), Generator::zero()] {
            assert_eq!(ones(&generator_mask(&g, 0).unwrap()), [0]);
        }
    }

    #[test]
    fn sumsets() {
        let t = mask(7, &[0, 1, 3, 6]);
        assert_eq!(ones(&sumset_mask(&t, &t, 7).unwrap()), [0, 1, 2, 3, 4, 6, 7]);
        let zero = mask(7, &[0]);
        assert_eq!(sumset_mask(&t, &zero, 7).unwrap(), t);
        let s = sumset_mask(&mask(3, &[0, 1]), &mask(3, &[0, 2]), 3).unwrap();
        assert_eq!(ones(&s), [0, 1, 2, 3]);
        assert!(sumset_mask(&t, &zero, 8).is_err());
    }

    #[test]
    fn shift_or_across_word_boundaries() {
        let a = mask(300, &[0, 63, 64, 130]);
        let b = mask(300, &[0, 1, 65, 170]);
        let got = ones(&sumset_mask(&a, &b, 300).unwrap());
        let mut want: Vec<u64> =
            [0, 63, 64, 130].iter().flat_map(|x| [0u64, 1, 65, 170].map(|y| x + y)).filter(|&v| v <= 300).collect();
        want.sort_unstable();
        want.dedup();
        assert_eq!(got, want);
    }

    #[test]
    fn form_masks() {
        assert!(form_mask(&form("tri + tri + tri"), 30).unwrap().is_full());
        let sq = form_mask(&form("sq + sq + sq"), 7).unwrap();
        assert!(!sq.contains(7));
        assert_eq!(sq.first_zero(), Some(7));
        assert_eq!(ones(&form_mask(&form("tri + tri + tri"), 0).unwrap()), [0]);
    }

    #[test]
    fn anchor_lists() {
        let r = non_representables(&form("tri + sq + 0"), 50).unwrap();
        let head: Vec<u64> = r.witnesses.iter().copied().filter(|&w| w <= 41).collect();
        assert_eq!(head, [8, 13, 18, 20, 23, 27, 33, 34, 38, 41]);
        let r = non_representables(&form("tri + tri + 0"), 10).unwrap();
        assert_eq!(r.witnesses.first(), Some(&5));
        assert!(non_representables(&form("tri + tri + tri"), 1000).unwrap().witnesses.is_empty());
    }

    #[test]
    fn first_witnesses() {
        assert_eq!(first_witness(&form("sq + sq + sq"), 7).unwrap(), Some(7));
        assert_eq!(first_witness(&form("sq + sq + sq"), 100_000).unwrap(), Some(7));
        assert_eq!(first_witness(&form("sq + sq + sq"), 6).unwrap(), None);
        let w = first_witness(&form("sq + 6*sq + gp(1,2)"), 100).unwrap().unwrap();
        assert!(w <= 32);
        assert_eq!(first_witness(&form("tri + tri + tri"), 1_000_000).unwrap(), None);
    }

    #[test]
    fn single_value_checks() {
        let c = check_nonrep(&form("tri + 2*tri + gp(14,4)"), 473).unwrap();
        assert!(c.is_nonrepresentable());
        assert!(c.certificate[0].z_max >= 30);
        assert!(check_nonrep(&form("tri + 2*sq + gp(15,2)"), 419).unwrap().is_nonrepresentable());
        let c = check_nonrep(&form("tri + tri + tri"), 0).unwrap();
        assert_eq!(c.representation, Some([0, 0, 0]));
        let c = check_nonrep(&form("sq + sq + sq"), 14).unwrap();
        let [x, y, z] = c.representation.unwrap();
        assert_eq!(x * x + y * y + z * z, 14);
    }

    #[test]
    fn integer_domain_forms() {
        // 7 is not x^2 + z(z+3)/2 even with x, z ranging over all integers.
        let f = form("sq@int + gp(1,2)@int");
        assert!(check_nonrep(&f, 7).unwrap().is_nonrepresentable());
        assert!(!form_mask(&f, 7).unwrap().contains(7));
        // 8 = 3^2 + f(-1) needs the negative value; over the naturals it fails.
        let c = check_nonrep(&f, 8).unwrap();
        assert_eq!(c.representation.map(|r| r[1]), Some(-1));
        assert!(form_mask(&f, 10).unwrap().contains(8));
        assert!(!form_mask(&form("sq + gp(1,2)"), 10).unwrap().contains(8));
        assert!(check_nonrep(&form("sq + gp(1,2)"), 8).unwrap().is_nonrepresentable());
    }

    #[test]
    fn universality_examples() {
        assert!(is_universal_up_to(&form("sq + sq + gp(1,2)"), 100_000).unwrap());
        assert!(!is_universal_up_to(&form("sq + 7*sq + gp(1,2)"), 100).unwrap());
        assert!(non_representables(&form("sq + 7*sq + gp(1,2)"), 100).unwrap().witnesses.contains(&19));
    }

    #[test]
    fn bound_cap() {
        assert!(matches!(ValueMask::empty(MAX_BOUND + 1), Err(Error::BoundTooLarge(_))));
        assert!(form_mask(&form("sq + sq + sq"), MAX_BOUND + 1).is_err());
    }

    #[test]
    fn window_and_prefix() {
        let m = mask(200, &[0, 5, 64, 70, 129, 200]);
        assert_eq!(ones(&m.prefix(69)), [0, 5, 64]);
        assert_eq!(ones(&m.window(5, 124)), [0, 59, 65, 124]);
        assert_eq!(ones(&m.window(64, 136)), [0, 6, 65, 136]);
    }

    #[test]
    fn from_words_validates() {
        let m = mask(70, &[1, 70]);
        assert_eq!(ValueMask::from_words(70, m.words().to_vec()).unwrap(), m);
        assert!(ValueMask::from_words(70, vec![0; 3]).is_err());
        assert!(ValueMask::from_words(70, vec![0, 1 << 10]).is_err());
    }

    #[test]
    fn reflected_terms_shift_correctly() {
        let g = Generator::new(crate::generators::GeneratorKind::ReflectedGenPoly { c: 1, d: 5 }, 1, Domain::Naturals)
            .unwrap();
        let f = TernaryForm::new([g, Generator::square(1), Generator::zero()]);
        let m = form_mask(&f, 300).unwrap();
        for n in 0..=300i64 {
            let brute = (0..40).any(|z| (0..20).any(|x| g.eval(z).unwrap() + x * x == n));
            assert_eq!(m.contains(n as u64), brute, "n = {n}");
        }
    }
}
