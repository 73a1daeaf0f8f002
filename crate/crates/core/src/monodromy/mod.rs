//! Sheets of the polylogarithm: branch differences Δ_N, the action of the
//! loops g₀ (around z = 0) and g₁ on sheet states, and integer-matrix
//! representations at positive integer order.

mod matrix;
mod numeric;

pub use matrix::{basis_value, check_presentation, unipotent_generators, IntMatrix, PresentationReport, UnipotentRep};
pub use numeric::{delta, delta_sum_closed_form, eval_sheet, eval_state, sheet_jump_check};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Laurent polynomial in u = e^{−2πis} with integer coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UPoly(BTreeMap<i64, i64>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(BTreeMap::new())
    }

    pub fn constant(c: i64) -> Self {
        UPoly::monomial(c, 0)
    }

    /// c·u^k
    pub fn monomial(c: i64, k: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(k, c);
        }
        UPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// (exponent, coefficient) pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add_assign(&mut self, other: &UPoly) {
        for (&k, &c) in &other.0 {
            let e = self.0.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                self.0.remove(&k);
            }
        }
    }

    /// c·u^k·self
    pub fn times(&self, c: i64, k: i64) -> UPoly {
        if c == 0 {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|(&e, &v)| (e + k, v * c)).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&k, &c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}u"),
                _ => format!("{c}u^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A formal combination c·Li_s(z) + Σ_N c_N·Δ_N with coefficients in ℤ[u, u⁻¹].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetState {
    pub li_coeff: UPoly,
    delta_coeffs: BTreeMap<i64, UPoly>,
}

impl SheetState {
    /// Li_s(z) on the principal sheet.
    pub fn principal() -> Self {
        SheetState { li_coeff: UPoly::constant(1), delta_coeffs: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        SheetState { li_coeff: UPoly::zero(), delta_coeffs: BTreeMap::new() }
    }

    /// The single term Δ_N.
    pub fn delta_term(n: i64) -> Result<Self> {
        let mut st = SheetState::zero();
        st.add_delta(n, &UPoly::constant(1))?;
        Ok(st)
    }

    pub fn add_delta(&mut self, n: i64, c: &UPoly) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("Δ_0 is not defined".into()));
        }
        let e = self.delta_coeffs.entry(n).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.delta_coeffs.remove(&n);
        }
        Ok(())
    }

    pub fn delta_coeff(&self, n: i64) -> UPoly {
        self.delta_coeffs.get(&n).cloned().unwrap_or_default()
    }

    /// Nonzero (N, coefficient) entries in increasing N.
    pub fn deltas(&self) -> impl Iterator<Item = (i64, &UPoly)> {
        self.delta_coeffs.iter().map(|(&n, c)| (n, c))
    }

    fn push(&mut self, n: i64, c: UPoly) {
        // n is never 0 here: every rule maps nonzero indices to nonzero indices
        self.add_delta(n, &c).expect("nonzero index");
    }
}

impl fmt::Display for SheetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.li_coeff.is_zero() {
            parts.push(format!("({})·Li", self.li_coeff));
        }
        for (n, c) in &self.delta_coeffs {
            parts.push(format!("({c})·Δ_{n}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// One generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    G0,
    G0Inv,
    G1,
    G1Inv,
}

impl Gen {
    pub fn inverse(self) -> Gen {
        match self {
            Gen::G0 => Gen::G0Inv,
            Gen::G0Inv => Gen::G0,
            Gen::G1 => Gen::G1Inv,
            Gen::G1Inv => Gen::G1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Gen::G0 => "g0",
            Gen::G0Inv => "g0^-1",
            Gen::G1 => "g1",
            Gen::G1Inv => "g1^-1",
        }
    }
}

/// A word in g₀^{±1}, g₁^{±1}, kept exactly as written.
///
/// Words act like operator products: the rightmost letter acts first, so
/// `[G1, G0]` is g₁g₀ and applies g₀ before g₁.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenWord {
    pub letters: Vec<Gen>,
}

impl GenWord {
    pub fn new(letters: Vec<Gen>) -> Self {
        GenWord { letters }
    }

    pub fn empty() -> Self {
        GenWord::default()
    }

    /// m₁ = g₁g₀, the loop once around z = 1.
    pub fn m1() -> Self {
        GenWord::new(vec![Gen::G1, Gen::G0])
    }

    /// w = g₀g₁g₀⁻¹g₁⁻¹
    pub fn commutator() -> Self {
        GenWord::new(vec![Gen::G0, Gen::G1, Gen::G0Inv, Gen::G1Inv])
    }

    pub fn inverse(&self) -> Self {
        GenWord::new(self.letters.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn concat(&self, other: &GenWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GenWord::new(letters)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * n as usize);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        GenWord::new(letters)
    }

    /// Parses whitespace- or comma-separated letters `g0`, `g1`, `g0^-1`,
    /// `g1^-1` (also `G0`, `G1` for the inverses). `1` or an empty string is
    /// the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',' || c == '*').filter(|t| !t.is_empty()) {
            let g = match tok {
                "1" | "e" => continue,
                "g0" => Gen::G0,
                "g1" => Gen::G1,
                "g0^-1" | "g0inv" | "G0" => Gen::G0Inv,
                "g1^-1" | "g1inv" | "G1" => Gen::G1Inv,
                _ => return Err(Error::Usage(format!("unknown generator '{tok}'"))),
            };
            letters.push(g);
        }
        Ok(GenWord::new(letters))
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self.letters.iter().map(|g| g.name()).collect();
        write!(f, "{}", names.join(" "))
    }
}

fn act(g: Gen, state: &SheetState) -> SheetState {
    let mut out = SheetState { li_coeff: state.li_coeff.clone(), delta_coeffs: BTreeMap::new() };
    match g {
        Gen::G1 | Gen::G1Inv => {
            // g₁·Li = Li − Δ_1, g₁·Δ_N = Δ_N
            for (n, c) in &state.delta_coeffs {
                out.push(*n, c.clone());
            }
            if !state.li_coeff.is_zero() {
                let sign = if g == Gen::G1 { -1 } else { 1 };
                out.push(1, state.li_coeff.times(sign, 0));
            }
        }
        Gen::G0 => {
            for (&n, c) in &state.delta_coeffs {
                if n == -1 {
                    // g₀·Δ_{−1} = −u·Δ_1
                    out.push(1, c.times(-1, 1));
                } else {
                    out.push(n + 1, c.clone());
                }
            }
        }
        Gen::G0Inv => {
            for (&n, c) in &state.delta_coeffs {
                if n == 1 {
                    // g₀⁻¹·Δ_1 = −u⁻¹·Δ_{−1}
                    out.push(-1, c.times(-1, -1));
                } else {
                    out.push(n - 1, c.clone());
                }
            }
        }
    }
    out
}

/// The state after the word acts, rightmost letter first.
pub fn apply_word(state: &SheetState, word: &GenWord) -> SheetState {
    word.letters.iter().rev().fold(state.clone(), |st, &g| act(g, &st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn li() -> SheetState {
        SheetState::principal()
    }

    #[test]
    fn table_entries() {
        let st = apply_word(&li(), &GenWord::new(vec![Gen::G1]));
        assert_eq!(st.li_coeff, UPoly::constant(1));
        assert_eq!(st.delta_coeff(1), UPoly::constant(-1));
        assert_eq!(st.deltas().count(), 1);

        let d1 = SheetState::delta_term(1).unwrap();
        assert_eq!(apply_word(&d1, &GenWord::new(vec![Gen::G0])), SheetState::delta_term(2).unwrap());
        assert_eq!(apply_word(&d1, &GenWord::new(vec![Gen::G1])), d1);
        assert_eq!(apply_word(&li(), &GenWord::new(vec![Gen::G0])), li());

        let dm1 = SheetState::delta_term(-1).unwrap();
        let st = apply_word(&dm1, &GenWord::new(vec![Gen::G0]));
        assert_eq!(st.delta_coeff(1), UPoly::monomial(-1, 1));
        let dm3 = SheetState::delta_term(-3).unwrap();
        assert_eq!(apply_word(&dm3, &GenWord::new(vec![Gen::G0])), SheetState::delta_term(-2).unwrap());
    }

    #[test]
    fn loops_around_one() {
        for n in 1..6u32 {
            let st = apply_word(&li(), &GenWord::m1().pow(n));
            assert_eq!(st.li_coeff, UPoly::constant(1));
            for k in 1..=n as i64 {
                assert_eq!(st.delta_coeff(k), UPoly::constant(-1));
            }
            assert_eq!(st.deltas().count(), n as usize);
        }
        // g₁ alone keeps hitting Δ_1
        let st = apply_word(&li(), &GenWord::new(vec![Gen::G1; 3]));
        assert_eq!(st.delta_coeff(1), UPoly::constant(-3));
    }

    #[test]
    fn commutator_relations() {
        let w = GenWord::commutator();
        let st = apply_word(&li(), &w);
        let mut want = li();
        want.add_delta(1, &UPoly::constant(1)).unwrap();
        want.add_delta(2, &UPoly::constant(-1)).unwrap();
        assert_eq!(st, want);
        let g1 = GenWord::new(vec![Gen::G1]);
        let a = apply_word(&li(), &g1.concat(&w));
        let b = apply_word(&li(), &w.concat(&g1));
        assert_eq!(a, b);
        let mut want = li();
        want.add_delta(2, &UPoly::constant(-1)).unwrap();
        assert_eq!(a, want);
        for n in [-3, -1, 1, 4] {
            let d = SheetState::delta_term(n).unwrap();
            assert_eq!(apply_word(&d, &w), d);
            assert_eq!(apply_word(&d, &g1.concat(&w)), apply_word(&d, &w.concat(&g1)));
        }
    }

    #[test]
    fn forced_inverse_rules_round_trip() {
        for n in [-4i64, -2, -1, 1, 2, 5] {
            let d = SheetState::delta_term(n).unwrap();
            for g in [Gen::G0, Gen::G0Inv, Gen::G1, Gen::G1Inv] {
                let w = GenWord::new(vec![g.inverse(), g]);
                assert_eq!(apply_word(&d, &w), d, "{g:?} on Δ_{n}");
            }
        }
        // m₁⁻¹·Li comes out as Li − u⁻¹Δ_{−1}
        let st = apply_word(&li(), &GenWord::m1().inverse());
        assert_eq!(st.delta_coeff(-1), UPoly::monomial(-1, -1));
    }

    #[test]
    fn parse_and_display() {
        let w = GenWord::parse("g0 g1^-1, G0 g1").unwrap();
        assert_eq!(w.letters, vec![Gen::G0, Gen::G1Inv, Gen::G0Inv, Gen::G1]);
        assert_eq!(w.to_string(), "g0 g1^-1 g0^-1 g1");
        assert_eq!(GenWord::parse("").unwrap(), GenWord::empty());
        assert!(GenWord::parse("g2").is_err());
        assert!(SheetState::delta_term(0).is_err());
    }

    fn gen_strategy() -> impl Strategy<Value = Gen> {
        prop_oneof![Just(Gen::G0), Just(Gen::G0Inv), Just(Gen::G1), Just(Gen::G1Inv)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_law(letters in proptest::collection::vec(gen_strategy(), 0..=8), start in -3i64..4) {
            let w = GenWord::new(letters);
            let state = if start == 0 { li() } else { SheetState::delta_term(start).unwrap() };
            let there = apply_word(&state, &w.concat(&w.inverse()));
            prop_assert_eq!(&there, &state);
            let back = apply_word(&state, &w.inverse().concat(&w));
            prop_assert_eq!(back, state);
        }
    }
}
