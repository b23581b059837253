//! Exact values `Σ wⱼ ζ(θⱼ)` with `ζ(θ) = e^{2πiθ}` and rational `θ`, and the
//! circle measures that produce them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, to_f64, zero, Rational};

/// A point `ζ(θ)` of the circle, `θ ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Rational);

impl Angle {
    /// Reduces `θ` modulo 1.
    pub fn new(theta: Rational) -> Angle {
        let floor = theta.floor();
        Angle(theta - floor)
    }

    pub fn zero() -> Angle {
        Angle(zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn times(&self, m: i64) -> Angle {
        Angle::new(&self.0 * Rational::from_integer(m.into()))
    }

    pub fn negate(&self) -> Angle {
        Angle::new(-&self.0)
    }

    pub fn plus(&self, other: &Angle) -> Angle {
        Angle::new(&self.0 + &other.0)
    }

    /// Parses a rational already in `[0, 1)`.
    pub fn parse(text: &str) -> Result<Angle> {
        let theta = parse_rational(text)?;
        if theta.is_negative() || theta >= Rational::one() {
            return Err(Error::Measure(format!("angle {text} is outside [0,1)")));
        }
        Ok(Angle(theta))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * to_f64(&self.0))
    }

    /// Smallest `n ≥ 1` with `nθ ∈ ℤ`.
    pub fn order(&self) -> u64 {
        use num_traits::ToPrimitive;
        self.0.denom().to_u64().unwrap_or(u64::MAX)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite sum `Σ wⱼ ζ(θⱼ)` stored with distinct angles and non-zero weights.
///
/// Equality is equality of complex numbers, decided exactly in the
/// cyclotomic field: `ζ(0) + ζ(1/2)` equals zero.
#[derive(Clone, Debug, Default)]
pub struct CircleValue {
    terms: BTreeMap<Angle, Rational>,
}

impl CircleValue {
    pub fn zero() -> CircleValue {
        CircleValue::default()
    }

    /// `w·ζ(θ)`
    pub fn term(angle: Angle, weight: Rational) -> CircleValue {
        let mut v = CircleValue::zero();
        v.add_term(angle, weight);
        v
    }

    /// The real number `w = w·ζ(0)`.
    pub fn real(weight: Rational) -> CircleValue {
        CircleValue::term(Angle::zero(), weight)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Angle, Rational)>) -> CircleValue {
        let mut v = CircleValue::zero();
        for (a, w) in terms {
            v.add_term(a, w);
        }
        v
    }

    fn add_term(&mut self, angle: Angle, weight: Rational) {
        if weight.is_zero() {
            return;
        }
        let slot = self.terms.entry(angle).or_insert_with(zero);
        *slot += weight;
        if slot.is_zero() {
            self.terms.retain(|_, w| !w.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || cyclotomic_zero(&self.terms)
    }

    /// No terms at all; stricter than [`CircleValue::is_zero`].
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Angle, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &Rational) -> CircleValue {
        CircleValue::from_terms(self.terms.iter().map(|(a, w)| (a.clone(), w * factor)))
    }

    /// Complex conjugate: angles negated.
    pub fn conj(&self) -> CircleValue {
        CircleValue::from_terms(self.terms.iter().map(|(a, w)| (a.negate(), w.clone())))
    }

    /// `ζ(θ) ↦ ζ(θ + φ)` on every term.
    pub fn rotate(&self, phi: &Angle) -> CircleValue {
        CircleValue::from_terms(self.terms.iter().map(|(a, w)| (a.plus(phi), w.clone())))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, w)| a.to_complex() * to_f64(w))
            .sum()
    }
}

impl PartialEq for CircleValue {
    fn eq(&self, other: &CircleValue) -> bool {
        self.terms == other.terms || (self + &(-other)).is_zero()
    }
}

impl Eq for CircleValue {}

/// `Σ w_k ζ_N^k = 0` exactly, `N` the common denominator of the angles.
fn cyclotomic_zero(terms: &BTreeMap<Angle, Rational>) -> bool {
    let n = terms.keys().fold(1u64, |acc, a| acc.lcm(&a.order()));
    let exponents = terms
        .iter()
        .map(|(a, w)| {
            let k = (a.value() * Rational::from_integer(n.into())).to_integer();
            let k = num_traits::ToPrimitive::to_u64(&k).expect("angle in [0,1)");
            (k, w.clone())
        })
        .collect();
    vanishes(exponents, n)
}

/// Splits off one prime power: with `N = pᵏm`, `Q(ζ_N)` has basis
/// `ζ_{pᵏ}^u ζ_p^j` (`u < pᵏ⁻¹`, `j < p − 1`) over `Q(ζ_m)` and the only
/// relations are `Σ_j ζ_p^j = 0`, so a sum vanishes iff for each `u` its
/// `p` coefficients agree.
fn vanishes(mut terms: BTreeMap<u64, Rational>, n: u64) -> bool {
    terms.retain(|_, w| !w.is_zero());
    if terms.is_empty() {
        return true;
    }
    if n == 1 {
        return terms.values().fold(zero(), |acc, w| acc + w).is_zero();
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).expect("n > 1");
    let mut pk = 1;
    while n.is_multiple_of(pk * p) {
        pk *= p;
    }
    let m = n / pk;
    let (m_inv, pk_inv) = (inverse_mod(m, pk), inverse_mod(pk, m));
    let step = pk / p;
    // coefficient of ζ_{pᵏ}^u ζ_p^j, each an element of Q(ζ_m)
    let mut grid: BTreeMap<u64, Vec<BTreeMap<u64, Rational>>> = BTreeMap::new();
    for (a, w) in terms {
        let x = mul_mod(a, m_inv, pk);
        let y = mul_mod(a, pk_inv, m);
        let row = grid
            .entry(x % step)
            .or_insert_with(|| vec![BTreeMap::new(); p as usize]);
        *row[(x / step) as usize].entry(y).or_insert_with(zero) += w;
    }
    grid.into_values().all(|row| {
        row[1..].iter().all(|c| {
            let mut diff = c.clone();
            for (y, w) in &row[0] {
                *diff.entry(*y).or_insert_with(zero) -= w;
            }
            vanishes(diff, m)
        })
    })
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `a⁻¹ mod n` for coprime `a`, `n`; `0` when `n = 1`.
fn inverse_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    e.x.rem_euclid(n as i128) as u64
}

impl Add for &CircleValue {
    type Output = CircleValue;

    fn add(self, rhs: &CircleValue) -> CircleValue {
        let mut out = self.clone();
        for (a, w) in &rhs.terms {
            out.add_term(a.clone(), w.clone());
        }
        out
    }
}

impl Add for CircleValue {
    type Output = CircleValue;

    fn add(self, rhs: CircleValue) -> CircleValue {
        &self + &rhs
    }
}

impl Neg for &CircleValue {
    type Output = CircleValue;

    fn neg(self) -> CircleValue {
        CircleValue::from_terms(self.terms.iter().map(|(a, w)| (a.clone(), -w)))
    }
}

impl Mul for &CircleValue {
    type Output = CircleValue;

    fn mul(self, rhs: &CircleValue) -> CircleValue {
        let mut out = CircleValue::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.plus(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, w)| {
                if a.value().is_zero() {
                    format!("{w}")
                } else {
                    format!("{w}·ζ({a})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    angle: String,
    weight: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValueDoc {
    terms: Vec<TermDoc>,
}

impl Serialize for CircleValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ValueDoc {
            terms: self
                .terms
                .iter()
                .map(|(a, w)| TermDoc {
                    angle: format_rational(a.value()),
                    weight: format_rational(w),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ValueDoc::deserialize(d)?;
        let mut out = CircleValue::zero();
        for t in doc.terms {
            let angle = Angle::new(parse_rational(&t.angle).map_err(serde::de::Error::custom)?);
            let weight = parse_rational(&t.weight).map_err(serde::de::Error::custom)?;
            out.add_term(angle, weight);
        }
        Ok(out)
    }
}

/// A probability measure on the circle: a Haar part plus rational atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleMeasure {
    haar: Rational,
    atoms: BTreeMap<Angle, Rational>,
}

impl CircleMeasure {
    /// Checks `haar ≥ 0`, positive distinct atoms and total mass 1.
    pub fn new(haar: Rational, atoms: Vec<(Angle, Rational)>) -> Result<CircleMeasure> {
        if haar.is_negative() {
            return Err(Error::Measure("negative Haar weight".into()));
        }
        let mut map = BTreeMap::new();
        for (angle, weight) in atoms {
            if !weight.is_positive() {
                return Err(Error::Measure(format!(
                    "atom at {angle} has weight {weight}"
                )));
            }
            if map.insert(angle.clone(), weight).is_some() {
                return Err(Error::Measure(format!("repeated atom angle {angle}")));
            }
        }
        let total = map.values().fold(haar.clone(), |acc, w| acc + w);
        if !total.is_one() {
            return Err(Error::Measure(format!("total mass is {total}, not 1")));
        }
        Ok(CircleMeasure { haar, atoms: map })
    }

    pub fn haar() -> CircleMeasure {
        CircleMeasure {
            haar: Rational::one(),
            atoms: BTreeMap::new(),
        }
    }

    /// `δ(θ)`
    pub fn dirac(angle: Angle) -> CircleMeasure {
        CircleMeasure {
            haar: zero(),
            atoms: BTreeMap::from([(angle, Rational::one())]),
        }
    }

    pub fn haar_weight(&self) -> &Rational {
        &self.haar
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Angle, &Rational)> {
        self.atoms.iter()
    }

    /// `∫ z^m dμ`
    pub fn moment(&self, m: i64) -> CircleValue {
        let mut out =
            CircleValue::from_terms(self.atoms.iter().map(|(a, w)| (a.times(m), w.clone())));
        if m == 0 {
            out = out + CircleValue::real(self.haar.clone());
        }
        out
    }

    /// All nonzero moments vanish.
    pub fn is_rotation_invariant(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Least `m > 0` with a non-vanishing moment, if any.
    pub fn first_nonzero_moment(&self) -> Option<i64> {
        if self.atoms.is_empty() {
            return None;
        }
        let lcm = self.atoms.keys().fold(1u64, |acc, a| acc.lcm(&a.order()));
        (1..=lcm as i64).find(|&m| !self.moment(m).is_zero())
    }
}

pub fn moment(mu: &CircleMeasure, m: i64) -> CircleValue {
    mu.moment(m)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct MeasureDoc {
    haar: String,
    #[serde(default)]
    atoms: Vec<TermDoc>,
}

impl Serialize for CircleMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureDoc {
            haar: format_rational(&self.haar),
            atoms: self
                .atoms
                .iter()
                .map(|(a, w)| TermDoc {
                    angle: format_rational(a.value()),
                    weight: format_rational(w),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MeasureDoc::deserialize(d)?;
        let parse = || -> Result<CircleMeasure> {
            let haar = parse_rational(&doc.haar)?;
            let atoms = doc
                .atoms
                .iter()
                .map(|t| Ok((Angle::parse(&t.angle)?, parse_rational(&t.weight)?)))
                .collect::<Result<Vec<_>>>()?;
            CircleMeasure::new(haar, atoms)
        };
        parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn angle(p: i64, q: i64) -> Angle {
        Angle::new(ratio(p, q))
    }

    #[test]
    fn moments() {
        assert!(CircleMeasure::haar().moment(3).is_zero());
        assert_eq!(CircleMeasure::haar().moment(0), CircleValue::real(int(1)));
        let d = CircleMeasure::dirac(angle(1, 3));
        assert_eq!(d.moment(1), CircleValue::term(angle(1, 3), int(1)));
        let mu = CircleMeasure::new(
            zero(),
            vec![(angle(0, 1), ratio(1, 2)), (angle(1, 2), ratio(1, 2))],
        )
        .unwrap();
        assert_eq!(mu.moment(2), CircleValue::real(int(1)));
        assert!(mu.moment(1).is_zero());
        assert_eq!(mu.first_nonzero_moment(), Some(2));
        assert_eq!(d.moment(-1), d.moment(1).conj());
    }

    #[test]
    fn canonical_merging() {
        let v = CircleValue::from_terms([
            (angle(1, 3), int(1)),
            (angle(4, 3), int(2)),
            (angle(1, 2), int(1)),
            (angle(1, 2), int(-1)),
        ]);
        assert_eq!(v, CircleValue::term(angle(1, 3), int(3)));
        assert_eq!(angle(-1, 4), angle(3, 4));
    }

    #[test]
    fn cyclotomic_identities() {
        let cube_roots = CircleValue::from_terms((0..3).map(|k| (angle(k, 3), int(1))));
        assert!(cube_roots.is_zero());
        assert!(!cube_roots.is_formally_zero());
        // ζ(1/3) = ζ(1/6) - 1
        let lhs = CircleValue::term(angle(1, 3), int(1));
        let rhs = &CircleValue::term(angle(1, 6), int(1)) + &CircleValue::real(int(-1));
        assert_eq!(lhs, rhs);
        assert_ne!(lhs, CircleValue::term(angle(1, 6), int(1)));
        // ζ(1/12) + ζ(5/12) = i
        let sum =
            &CircleValue::term(angle(1, 12), int(1)) + &CircleValue::term(angle(5, 12), int(1));
        assert_eq!(sum, CircleValue::term(angle(1, 4), int(1)));
        // primitive 15th roots sum to μ(15) = 1
        let primitive = CircleValue::from_terms(
            (1..15)
                .filter(|k| k % 3 != 0 && k % 5 != 0)
                .map(|k| (angle(k, 15), int(1))),
        );
        assert_eq!(primitive, CircleValue::real(int(1)));
        let fifths = CircleValue::from_terms((1..5).map(|k| (angle(k, 5), int(1))));
        assert_eq!(fifths, CircleValue::real(int(-1)));
        assert!(!CircleValue::from_terms([(angle(1, 8), int(1)), (angle(3, 8), int(1))]).is_zero());
    }

    #[test]
    fn complex_embedding() {
        let v = CircleValue::term(angle(1, 4), int(2));
        let z = v.to_complex();
        assert!(z.re.abs() < 1e-12 && (z.im - 2.0).abs() < 1e-12);
    }

    #[test]
    fn measure_validation() {
        assert!(CircleMeasure::new(ratio(1, 2), vec![]).is_err());
        assert!(CircleMeasure::new(int(-1), vec![(angle(0, 1), int(2))]).is_err());
        assert!(
            CircleMeasure::new(zero(), vec![(angle(0, 1), int(1)), (angle(0, 1), int(0))]).is_err()
        );
        assert!(Angle::parse("1").is_err());
        assert!(Angle::parse("-1/3").is_err());
    }

    #[test]
    fn documents() {
        let mu: CircleMeasure =
            serde_json::from_str(r#"{"haar":"1/2","atoms":[{"angle":"1/3","weight":"1/2"}]}"#)
                .unwrap();
        assert_eq!(mu.haar_weight(), &ratio(1, 2));
        assert_eq!(
            serde_json::to_string(&mu).unwrap(),
            r#"{"haar":"1/2","atoms":[{"angle":"1/3","weight":"1/2"}]}"#
        );
        assert!(serde_json::from_str::<CircleMeasure>(r#"{"haar":"1/2","atoms":[]}"#).is_err());
        let v = CircleValue::term(angle(1, 3), int(1));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"terms":[{"angle":"1/3","weight":"1"}]}"#
        );
    }
}
