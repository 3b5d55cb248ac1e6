//! Noncommutative *-polynomials in named generators.
//!
//! A [`StarPolynomial`] is a finite sum of terms, each a cyclotomic
//! coefficient times a word of atoms; an [`Atom`] is a generator label with
//! an optional adjoint star.  Polynomials are kept canonical: terms with
//! equal words are merged, zero terms dropped, and words ordered
//! length-lexicographically.  The empty word is the algebra unit.

use std::cmp::Ordering;
use std::fmt;

use crate::cyclotomic::CyclotomicScalar;

/// A generator label, possibly starred (adjoint).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub label: String,
    pub star: bool,
}

impl Atom {
    pub fn plain(label: impl Into<String>) -> Self {
        Atom { label: label.into(), star: false }
    }

    pub fn starred(label: impl Into<String>) -> Self {
        Atom { label: label.into(), star: true }
    }

    pub fn adjoint(&self) -> Self {
        Atom { label: self.label.clone(), star: !self.star }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.star {
            write!(f, "{}*", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type Word = Vec<Atom>;

fn word_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A canonical noncommutative *-polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct StarPolynomial {
    /// Terms sorted by word (length-lex); no zero coefficients; words unique.
    terms: Vec<(CyclotomicScalar, Word)>,
}

impl StarPolynomial {
    pub fn zero() -> Self {
        StarPolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        StarPolynomial::constant(CyclotomicScalar::one())
    }

    pub fn constant(c: CyclotomicScalar) -> Self {
        StarPolynomial::from_terms(vec![(c, Vec::new())])
    }

    pub fn generator(label: impl Into<String>) -> Self {
        StarPolynomial::from_terms(vec![(CyclotomicScalar::one(), vec![Atom::plain(label)])])
    }

    pub fn atom(a: Atom) -> Self {
        StarPolynomial::from_terms(vec![(CyclotomicScalar::one(), vec![a])])
    }

    /// Builds a polynomial from arbitrary terms, canonicalizing.
    pub fn from_terms(terms: Vec<(CyclotomicScalar, Word)>) -> Self {
        let mut terms: Vec<(CyclotomicScalar, Word)> = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| word_cmp(&a.1, &b.1));
        let mut merged: Vec<(CyclotomicScalar, Word)> = Vec::with_capacity(terms.len());
        for (c, w) in terms {
            match merged.last_mut() {
                Some((mc, mw)) if *mw == w => {
                    *mc = &*mc + &c;
                }
                _ => merged.push((c, w)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        StarPolynomial { terms: merged }
    }

    pub fn terms(&self) -> &[(CyclotomicScalar, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Labels of all generators mentioned by the polynomial.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .terms
            .iter()
            .flat_map(|(_, w)| w.iter().map(|a| a.label.as_str()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        StarPolynomial::from_terms(terms)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        StarPolynomial {
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (c1, w1) in &self.terms {
            for (c2, w2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                terms.push((c1 * c2, w));
            }
        }
        StarPolynomial::from_terms(terms)
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        StarPolynomial::from_terms(
            self.terms.iter().map(|(tc, w)| (tc * c, w.clone())).collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = StarPolynomial::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// The formal adjoint: coefficients conjugated, words reversed with each
    /// atom starred.
    pub fn adjoint(&self) -> Self {
        StarPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(c, w)| {
                    (
                        c.conjugate(),
                        w.iter().rev().map(Atom::adjoint).collect(),
                    )
                })
                .collect(),
        )
    }

    /// When the polynomial is a single plain (unstarred) generator atom,
    /// returns its label.
    pub fn as_plain_generator(&self) -> Option<&str> {
        match self.terms.as_slice() {
            [(c, w)] if w.len() == 1 && !w[0].star && c == &CyclotomicScalar::one() => {
                Some(&w[0].label)
            }
            _ => None,
        }
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &Word) -> fmt::Result {
    // Runs of equal atoms print as powers: A A -> A^2.
    let mut i = 0;
    let mut first = true;
    while i < word.len() {
        let mut j = i + 1;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if j - i == 1 {
            write!(f, "{}", word[i])?;
        } else {
            write!(f, "{}^{}", word[i], j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for StarPolynomial {
    /// Canonical printing; `parse(print(p)) == p` for canonical polynomials.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, w)) in self.terms.iter().enumerate() {
            // Pull the sign out whenever the leading coefficient is negative,
            // so the printed form never reads `+ -...`.
            let leading_negative = c
                .coeffs()
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative());
            let (neg, mag) = if leading_negative { (true, -c) } else { (false, c.clone()) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_one = mag == CyclotomicScalar::one();
            let simple = mag.as_rational().is_some()
                || mag.coeffs().iter().filter(|x| !x.is_zero()).count() <= 1;
            if w.is_empty() {
                if simple {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else {
                if !is_one {
                    if simple {
                        write!(f, "{mag} ")?;
                    } else {
                        write!(f, "({mag}) ")?;
                    }
                }
                write_word(f, w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
