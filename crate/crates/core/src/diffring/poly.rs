//! Generators, monomials and the differential polynomial type.

use super::coeff::GaussRat;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A single commuting generator of the extended ring: a derivative
/// `D^m u_j`, the time variable `t`, or a threshold `x_j`.
///
/// The derived order (`U` by `(comp, order)`, then `T`, then `X`) is the
/// fixed total order underlying canonical forms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    U { comp: u8, order: u16 },
    T,
    X { comp: u8 },
}

impl Generator {
    pub fn u(comp: u8) -> Self {
        Generator::U { comp, order: 0 }
    }

    pub fn u_deriv(comp: u8, order: u16) -> Self {
        Generator::U { comp, order }
    }

    pub fn name(&self) -> String {
        match *self {
            Generator::U { comp, order: 0 } => format!("u{comp}"),
            Generator::U { comp, order: 1 } => format!("Du{comp}"),
            Generator::U { comp, order } => format!("D{order}u{comp}"),
            Generator::T => "t".to_string(),
            Generator::X { comp } => format!("x{comp}"),
        }
    }

    /// Inverse of [`Generator::name`].
    pub fn parse(s: &str) -> Option<Generator> {
        if s == "t" {
            return Some(Generator::T);
        }
        if let Some(rest) = s.strip_prefix('x') {
            return rest.parse::<u8>().ok().map(|comp| Generator::X { comp });
        }
        if let Some(rest) = s.strip_prefix('u') {
            return rest.parse::<u8>().ok().map(Generator::u);
        }
        if let Some(rest) = s.strip_prefix('D') {
            // "Du3" or "D2u3"
            if let Some(urest) = rest.strip_prefix('u') {
                return urest
                    .parse::<u8>()
                    .ok()
                    .map(|comp| Generator::u_deriv(comp, 1));
            }
            let upos = rest.find('u')?;
            let order = rest[..upos].parse::<u16>().ok()?;
            let comp = rest[upos + 1..].parse::<u8>().ok()?;
            return Some(Generator::u_deriv(comp, order));
        }
        None
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A product of generator powers, kept sorted by generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_gen(g: Generator) -> Self {
        Monomial {
            factors: vec![(g, 1)],
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, p)| p).sum()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.factors
            .iter()
            .find(|&&(h, _)| h == g)
            .map_or(0, |&(_, p)| p)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (ga, pa) = self.factors[i];
            let (gb, pb) = other.factors[j];
            match ga.cmp(&gb) {
                std::cmp::Ordering::Less => {
                    out.push((ga, pa));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((gb, pb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((ga, pa + pb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    pub fn times_gen(&self, g: Generator) -> Monomial {
        self.mul(&Monomial::from_gen(g))
    }

    /// Removes one power of `g`; panics if `g` is absent.
    pub fn div_gen(&self, g: Generator) -> Monomial {
        let mut factors = self.factors.clone();
        let idx = factors
            .iter()
            .position(|&(h, _)| h == g)
            .expect("generator not present in monomial");
        if factors[idx].1 == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Monomial { factors }
    }

    pub fn has_u(&self) -> bool {
        self.factors
            .iter()
            .any(|&(g, _)| matches!(g, Generator::U { .. }))
    }

    pub fn has_x(&self) -> bool {
        self.factors
            .iter()
            .any(|&(g, _)| matches!(g, Generator::X { .. }))
    }

    pub fn t_degree(&self) -> u32 {
        self.exponent(Generator::T)
    }

    /// Highest derivative order among the u-generators of this monomial.
    pub fn max_u_order(&self) -> Option<u16> {
        self.factors
            .iter()
            .filter_map(|&(g, _)| match g {
                Generator::U { order, .. } => Some(order),
                _ => None,
            })
            .max()
    }

    /// Total degree carried by u-generators of the given derivative order.
    pub fn u_degree_at_order(&self, order: u16) -> u32 {
        self.factors
            .iter()
            .filter_map(|&(g, p)| match g {
                Generator::U { order: o, .. } if o == order => Some(p),
                _ => None,
            })
            .sum()
    }

    /// The unique u-generator of the given order, if the monomial is linear
    /// in that order.
    pub fn u_gen_at_order(&self, order: u16) -> Option<Generator> {
        self.factors.iter().find_map(|&(g, _)| match g {
            Generator::U { order: o, .. } if o == order => Some(g),
            _ => None,
        })
    }
}

impl Monomial {
    /// Factors in display order: the scalar generators `t` and `x_j` first,
    /// then the u-generators.
    pub fn display_factors(&self) -> Vec<(Generator, u32)> {
        let mut out: Vec<(Generator, u32)> = self
            .factors
            .iter()
            .filter(|(g, _)| !matches!(g, Generator::U { .. }))
            .copied()
            .collect();
        out.extend(
            self.factors
                .iter()
                .filter(|(g, _)| matches!(g, Generator::U { .. }))
                .copied(),
        );
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .display_factors()
            .iter()
            .map(|&(g, p)| {
                if p == 1 {
                    g.name()
                } else {
                    format!("{}^{}", g.name(), p)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Graded-lexicographic comparison used for display order: higher total
/// degree first, ties broken so that earlier generators come first.
pub fn cmp_grlex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match b.degree().cmp(&a.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    let (fa, fb) = (a.factors(), b.factors());
    let mut i = 0;
    loop {
        match (fa.get(i), fb.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(&(ga, pa)), Some(&(gb, pb))) => {
                match ga.cmp(&gb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {}
                }
                match pb.cmp(&pa) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        i += 1;
    }
}

/// An element of the differential polynomial ring: a finite sum of monomials
/// with exact Gaussian-rational coefficients. Zero coefficients are never
/// stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(v: i64) -> Self {
        DiffPoly::constant(GaussRat::from_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        DiffPoly::constant(GaussRat::ratio(num, den))
    }

    /// The imaginary unit as a ring element.
    pub fn i() -> Self {
        DiffPoly::constant(GaussRat::i())
    }

    pub fn gen(g: Generator) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::from_gen(g), GaussRat::one());
        p
    }

    pub fn u(comp: u8) -> Self {
        DiffPoly::gen(Generator::u(comp))
    }

    pub fn u_deriv(comp: u8, order: u16) -> Self {
        DiffPoly::gen(Generator::u_deriv(comp, order))
    }

    pub fn t() -> Self {
        DiffPoly::gen(Generator::T)
    }

    pub fn x(comp: u8) -> Self {
        DiffPoly::gen(Generator::X { comp })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coefficient(&Monomial::one())
    }

    /// Adds `c·m`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        let mut out = DiffPoly::zero();
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.times_i());
        }
        out
    }

    /// Multiplication by a single generator.
    pub fn times_gen(&self, g: Generator) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, a) in &self.terms {
            out.terms.insert(m.times_gen(g), a.clone());
        }
        out
    }

    /// Highest derivative order of any u-generator, or `None` if u-free.
    pub fn max_u_order(&self) -> Option<u16> {
        self.terms.keys().filter_map(|m| m.max_u_order()).max()
    }

    /// Highest derivative order of u_j specifically.
    pub fn max_order_of(&self, comp: u8) -> Option<u16> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter_map(|&(g, _)| match g {
                Generator::U { comp: c, order } if c == comp => Some(order),
                _ => None,
            })
            .max()
    }

    /// Component indices of the u-generators that occur.
    pub fn u_components(&self) -> Vec<u8> {
        let mut comps: Vec<u8> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter())
            .filter_map(|&(g, _)| match g {
                Generator::U { comp, .. } => Some(comp),
                _ => None,
            })
            .collect();
        comps.sort_unstable();
        comps.dedup();
        comps
    }

    /// Substitutes `u_comp := 0` (all derivative orders).
    pub fn with_component_zero(&self, comp: u8) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let hits = m.factors().iter().any(|&(g, _)| {
                matches!(g, Generator::U { comp: c2, .. } if c2 == comp)
            });
            if !hits {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Relabels component indices of both `u` and `x` generators:
    /// component `j` becomes `perm[j-1]`.
    pub fn permute_components(&self, perm: &[u8]) -> DiffPoly {
        let map = |g: Generator| match g {
            Generator::U { comp, order } => Generator::U {
                comp: perm[(comp - 1) as usize],
                order,
            },
            Generator::X { comp } => Generator::X {
                comp: perm[(comp - 1) as usize],
            },
            Generator::T => Generator::T,
        };
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = Monomial::one();
            for &(g, p) in m.factors() {
                for _ in 0..p {
                    mm = mm.times_gen(map(g));
                }
            }
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Evaluates numerically with the given assignment of generators.
    pub fn eval(&self, assign: &impl Fn(Generator) -> Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut prod = c.to_complex();
            for &(g, p) in m.factors() {
                prod *= assign(g).powu(p);
            }
            total += prod;
        }
        total
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: &'a DiffPoly) -> DiffPoly {
        self += rhs;
        self
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<'a> Sub<&'a DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: &'a DiffPoly) -> DiffPoly {
        self -= rhs;
        self
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms {
            out.terms.insert(m, -c);
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        self.clone().neg()
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &'a DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
