//! Spectra (rational multisets) and Jordan structures.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use crate::poly::Polynomial;
use crate::scalar::{format_decimal, Rational};
use crate::Error;

/// Multiset of rational eigenvalues.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum {
    mult: BTreeMap<Rational, usize>,
}

impl Spectrum {
    pub fn new<I: IntoIterator<Item = Rational>>(values: I) -> Self {
        let mut mult = BTreeMap::new();
        for v in values {
            *mult.entry(v).or_insert(0) += 1;
        }
        Self { mult }
    }

    pub fn from_multiplicities(pairs: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let mut mult = BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *mult.entry(v).or_insert(0) += m;
            }
        }
        Self { mult }
    }

    /// Total multiplicity.
    pub fn order(&self) -> usize {
        self.mult.values().sum()
    }

    pub fn multiplicity(&self, v: &Rational) -> usize {
        self.mult.get(v).copied().unwrap_or(0)
    }

    /// Distinct eigenvalues with multiplicities, increasing.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.mult.iter().map(|(v, &m)| (v, m))
    }

    pub fn distinct(&self) -> Vec<Rational> {
        self.mult.keys().cloned().collect()
    }

    /// All eigenvalues with repetition, decreasing.
    pub fn values(&self) -> Vec<Rational> {
        self.mult
            .iter()
            .rev()
            .flat_map(|(v, &m)| std::iter::repeat_n(v.clone(), m))
            .collect()
    }

    pub fn trace(&self) -> Rational {
        self.mult.iter().fold(Rational::zero(), |acc, (v, &m)| {
            acc + v * Rational::from_integer(m.into())
        })
    }

    /// `max |lambda|` over the list.
    pub fn spectral_radius(&self) -> Option<Rational> {
        self.mult.keys().map(Signed::abs).max()
    }

    /// The Perron element: the largest value when it attains the spectral
    /// radius, which every realizable list satisfies.
    pub fn perron(&self) -> Option<Rational> {
        let top = self.mult.keys().next_back()?;
        (Some(top.clone()) == self.spectral_radius()).then(|| top.clone())
    }

    /// Exactly one eigenvalue attains the maximal modulus, it is positive,
    /// and it is simple.
    pub fn perron_simple(&self) -> bool {
        let Some(rho) = self.spectral_radius() else {
            return false;
        };
        let attaining: Vec<_> = self.mult.iter().filter(|(v, _)| v.abs() == rho).collect();
        matches!(attaining.as_slice(), [(v, 1)] if v.is_positive())
    }

    /// The roots of `p` when it is monic and splits over the rationals.
    pub fn from_char_poly(p: &Polynomial) -> Option<Self> {
        if p.is_zero() || p.leading() != Rational::from_integer(1.into()) {
            return None;
        }
        p.rational_roots().map(Self::from_multiplicities)
    }

    /// `prod (x - lambda_i)`.
    pub fn char_poly(&self) -> Polynomial {
        let values = self.values();
        Polynomial::from_roots(&values)
    }

    /// Removes one copy of `v`; fails when `v` is absent.
    pub fn remove_one(&self, v: &Rational) -> Result<Self, Error> {
        let mut out = self.clone();
        match out.mult.get_mut(v) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                out.mult.remove(v);
            }
            None => {
                return Err(Error::SpectrumMismatch(format!(
                    "{} is not in {self}",
                    format_decimal(v)
                )))
            }
        }
        Ok(out)
    }

    /// Replaces one copy of `old` by `new`.
    pub fn replace_one(&self, old: &Rational, new: Rational) -> Result<Self, Error> {
        let mut out = self.remove_one(old)?;
        *out.mult.entry(new).or_insert(0) += 1;
        Ok(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, &m) in &other.mult {
            *out.mult.entry(v.clone()).or_insert(0) += m;
        }
        out
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().iter().map(format_decimal).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Jordan structure: for each eigenvalue, its block sizes in weakly
/// decreasing order (the Segre characteristic).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JordanSpec {
    blocks: BTreeMap<Rational, Vec<usize>>,
}

impl JordanSpec {
    /// Builds a spec, sorting each partition and dropping empty entries.
    pub fn new(blocks: impl IntoIterator<Item = (Rational, Vec<usize>)>) -> Self {
        let mut map: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (v, sizes) in blocks {
            map.entry(v).or_default().extend(sizes.into_iter().filter(|&s| s > 0));
        }
        map.retain(|_, s| !s.is_empty());
        for s in map.values_mut() {
            s.sort_unstable_by(|a, b| b.cmp(a));
        }
        Self { blocks: map }
    }

    /// All blocks of size 1.
    pub fn diagonal(spectrum: &Spectrum) -> Self {
        Self::new(spectrum.iter().map(|(v, m)| (v.clone(), vec![1; m])))
    }

    pub fn blocks(&self, v: &Rational) -> &[usize] {
        self.blocks.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &[usize])> {
        self.blocks.iter().map(|(v, s)| (v, s.as_slice()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.values().flatten().all(|&s| s == 1)
    }

    /// The spectrum this structure belongs to.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_multiplicities(self.blocks.iter().map(|(v, s)| (v.clone(), s.iter().sum())))
    }

    /// Weyr characteristic at `v`: `w_k = sum_i min(s_i, k)` up to the
    /// largest block.
    pub fn weyr(&self, v: &Rational) -> Vec<usize> {
        weyr_from_segre(self.blocks(v))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(
            self.blocks
                .iter()
                .chain(&other.blocks)
                .map(|(v, s)| (v.clone(), s.clone())),
        )
    }

    /// Removes one block of the given size at `v`.
    pub fn remove_block(&self, v: &Rational, size: usize) -> Result<Self, Error> {
        let mut out = self.clone();
        let sizes = out
            .blocks
            .get_mut(v)
            .ok_or_else(|| Error::SpectrumMismatch(format!("no Jordan block at {}", format_decimal(v))))?;
        let pos = sizes.iter().position(|&s| s == size).ok_or_else(|| {
            Error::SpectrumMismatch(format!("no Jordan block of size {size} at {}", format_decimal(v)))
        })?;
        sizes.remove(pos);
        out.blocks.retain(|_, s| !s.is_empty());
        Ok(out)
    }
}

impl fmt::Display for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .rev()
            .map(|(v, s)| {
                let sizes: Vec<String> = s.iter().map(ToString::to_string).collect();
                format!("{}: ({})", format_decimal(v), sizes.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Conjugate of an integer partition (given in any order).
pub fn conjugate(partition: &[usize]) -> Vec<usize> {
    let largest = partition.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|k| partition.iter().filter(|&&p| p >= k).count())
        .collect()
}

/// Cumulative Weyr sequence of a Segre partition.
pub fn weyr_from_segre(segre: &[usize]) -> Vec<usize> {
    let largest = segre.iter().copied().max().unwrap_or(0);
    (1..=largest).map(|k| segre.iter().map(|&s| s.min(k)).sum()).collect()
}

/// Segre partition from a cumulative Weyr sequence; `None` when the
/// increments are not weakly decreasing.
pub fn segre_from_weyr(weyr: &[usize]) -> Option<Vec<usize>> {
    let mut increments = Vec::with_capacity(weyr.len());
    let mut prev = 0;
    for &w in weyr {
        increments.push(w.checked_sub(prev)?);
        prev = w;
    }
    if increments.windows(2).any(|p| p[1] > p[0]) {
        return None;
    }
    increments.retain(|&d| d > 0);
    Some(conjugate(&increments))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn example() -> Spectrum {
        Spectrum::new([ratio(14, 5), ratio(11, 5), int(-1), int(-2), int(-2)])
    }

    #[test]
    fn perron_tracking() {
        let s = example();
        assert_eq!(s.order(), 5);
        assert_eq!(s.perron(), Some(ratio(14, 5)));
        assert!(s.perron_simple());
        assert_eq!(s.trace(), Rational::zero());
        assert!(!Spectrum::new([int(1), int(-1)]).perron_simple());
        assert!(!Spectrum::new([int(2), int(2)]).perron_simple());
        assert_eq!(Spectrum::new([int(1), int(-2)]).perron(), None);
        assert_eq!(s.to_string(), "{2.8, 2.2, -1, -2, -2}");
    }

    #[test]
    fn spectrum_edits() {
        let s = example().replace_one(&ratio(14, 5), int(3)).unwrap();
        assert_eq!(s.multiplicity(&int(3)), 1);
        assert!(s.remove_one(&int(7)).is_err());
        assert_eq!(s.remove_one(&int(-2)).unwrap().multiplicity(&int(-2)), 1);
    }

    #[test]
    fn weyr_segre_round_trip() {
        assert_eq!(weyr_from_segre(&[2]), vec![1, 2]);
        assert_eq!(weyr_from_segre(&[1, 1]), vec![2]);
        assert_eq!(weyr_from_segre(&[3, 1]), vec![2, 3, 4]);
        assert_eq!(segre_from_weyr(&[2, 3, 4]), Some(vec![3, 1]));
        assert_eq!(segre_from_weyr(&[1, 3]), None);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }

    #[test]
    fn jordan_union_and_removal() {
        let a = JordanSpec::new([(int(2), vec![1]), (int(-2), vec![2])]);
        let b = JordanSpec::new([(int(2), vec![1]), (int(-2), vec![1])]);
        let u = a.union(&b).remove_block(&int(2), 1).unwrap();
        assert_eq!(u, JordanSpec::new([(int(2), vec![1]), (int(-2), vec![2, 1])]));
        assert!(!u.is_diagonal());
        assert_eq!(u.spectrum().order(), 4);
        assert!(u.remove_block(&int(-2), 3).is_err());
        assert_eq!(u.to_string(), "{2: (1), -2: (2,1)}");
    }
}
