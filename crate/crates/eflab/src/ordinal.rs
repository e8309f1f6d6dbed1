//! Ordinal notations and the congruence-mod-ω^ω decision procedure.
//!
//! The notation covers exactly the ordinals below ε₀ in hereditary Cantor
//! normal form, plus *symbolic* values: uncountable cardinals `Card(1) <
//! Card(2) < …` and `On`, the class of all ordinals treated as a greatest
//! limit. Symbolic values are opaque fixed points of left multiplication by
//! ω^ω (`ω^ω·κ = κ`); no other cardinal arithmetic is modelled. A symbolic
//! value may carry a tail below ω^ω (`Card(1)+5`), which is what the
//! congruence tester needs.
//!
//! Two well-orders are first-order equivalent exactly when their order
//! types are congruent modulo ω^ω: `α = ω^ω·ξ + δ` and `β = ω^ω·η + δ`
//! with `δ < ω^ω` and ξ, η either both zero or both nonzero.
//! [`congruent_mod_omega_omega`] decides this and returns the witness.
//!
//! A caveat on `On`: treating the class of all ordinals as a greatest
//! limit is coherent for the congruence argument, but a value like `On+5`
//! has no standing order-theoretic meaning beyond that. The notation
//! supports such tails mechanically because congruence queries against
//! `ω^ω·ξ + δ` shapes need them; read them as formal pairs (tag, tail).
//!
//! Terms store their exponent behind an optional box (`None` is exponent
//! zero) and short term lists inline, so arithmetic on natural numbers
//! never touches the heap.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

/// Tags for the symbolic fixed points. `Card(i)` stands for the i-th
/// uncountable cardinal of interest; the index only fixes the relative
/// order `Card(1) < Card(2) < … < On`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SymbolicTag {
    Card(u32),
    On,
}

impl fmt::Display for SymbolicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicTag::Card(i) => write!(f, "Card({i})"),
            SymbolicTag::On => write!(f, "On"),
        }
    }
}

/// One term `ω^exp · coeff` of a Cantor normal form. The exponent is a
/// hereditary CNF ordinal (never symbolic); `coeff ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CnfTerm {
    exp: Option<Box<Ordinal>>, // None is exponent zero
    coeff: u64,
}

static ZERO_ORDINAL: std::sync::LazyLock<Ordinal> =
    std::sync::LazyLock::new(|| Ordinal::Cnf(SmallVec::new()));

impl CnfTerm {
    pub fn new(exp: Ordinal, coeff: u64) -> CnfTerm {
        let exp = if exp.is_zero() { None } else { Some(Box::new(exp)) };
        CnfTerm { exp, coeff }
    }

    #[inline]
    pub fn exp(&self) -> &Ordinal {
        self.exp.as_deref().unwrap_or(&ZERO_ORDINAL)
    }

    #[inline]
    pub fn coeff(&self) -> u64 {
        self.coeff
    }

    #[inline(always)]
    fn exp_is_zero(&self) -> bool {
        self.exp.is_none()
    }

    #[inline(always)]
    fn cmp_exp(&self, other: &CnfTerm) -> Ordering {
        match (&self.exp, &other.exp) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

pub type Terms = SmallVec<[CnfTerm; 2]>;

/// An ordinal notation. `Cnf` terms are in strictly decreasing exponent
/// order; the empty list is 0. `Symbolic` carries an optional tail strictly
/// below ω^ω (all tail exponents finite).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ordinal {
    Cnf(Terms),
    Symbolic { tag: SymbolicTag, tail: Terms },
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum OrdinalError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported operand: {0}")]
    UnsupportedOperand(String),
    #[error("coefficient overflow")]
    Overflow,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::Cnf(SmallVec::new())
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal::Cnf(smallvec![CnfTerm { exp: None, coeff: n }])
        }
    }

    pub fn omega() -> Self {
        Self::omega_power(Self::nat(1))
    }

    /// ω^e (e must be a plain CNF value; symbolic exponents are not part of
    /// the notation).
    pub fn omega_power(e: Ordinal) -> Self {
        assert!(matches!(e, Ordinal::Cnf(_)), "symbolic exponent");
        Ordinal::Cnf(smallvec![CnfTerm::new(e, 1)])
    }

    pub fn omega_omega() -> Self {
        Self::omega_power(Self::omega())
    }

    pub fn card(i: u32) -> Self {
        assert!(i >= 1, "Card index starts at 1");
        Ordinal::Symbolic { tag: SymbolicTag::Card(i), tail: SmallVec::new() }
    }

    pub fn on() -> Self {
        Ordinal::Symbolic { tag: SymbolicTag::On, tail: SmallVec::new() }
    }

    #[inline(always)]
    pub fn is_zero(&self) -> bool {
        matches!(self, Ordinal::Cnf(t) if t.is_empty())
    }

    /// Finite value, if this is a natural number.
    #[inline(always)]
    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Ordinal::Cnf(t) if t.is_empty() => Some(0),
            Ordinal::Cnf(t) if t.len() == 1 && t[0].exp_is_zero() => Some(t[0].coeff),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Ordinal::Symbolic { .. })
    }

    /// Structural check of the notation invariants: strictly decreasing
    /// hereditary exponents, positive coefficients, symbolic tails < ω^ω.
    pub fn is_canonical(&self) -> bool {
        match self {
            Ordinal::Cnf(terms) => terms_canonical(terms),
            Ordinal::Symbolic { tail, .. } => {
                terms_canonical(tail) && terms_below_omega_omega(tail)
            }
        }
    }
}

fn terms_canonical(terms: &[CnfTerm]) -> bool {
    terms.iter().all(|t| {
        t.coeff >= 1
            && !t.exp().is_symbolic()
            && t.exp().is_canonical()
            && t.exp.as_deref().is_none_or(|e| !e.is_zero())
    }) && terms.windows(2).all(|w| w[0].exp() > w[1].exp())
}

/// All exponents finite, i.e. the value is below ω^ω.
fn terms_below_omega_omega(terms: &[CnfTerm]) -> bool {
    terms.iter().all(|t| t.exp().as_nat().is_some())
}

#[inline(always)]
fn cmp_terms(a: &[CnfTerm], b: &[CnfTerm]) -> Ordering {
    if a.is_empty() || b.is_empty() {
        return a.len().cmp(&b.len());
    }
    for (ta, tb) in a.iter().zip(b.iter()) {
        match ta.cmp_exp(tb) {
            Ordering::Equal => {}
            o => return o,
        }
        match ta.coeff.cmp(&tb.coeff) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Ordinal {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        use Ordinal::*;
        match (self, other) {
            (Cnf(a), Cnf(b)) => cmp_terms(a, b),
            (Cnf(_), Symbolic { .. }) => Ordering::Less,
            (Symbolic { .. }, Cnf(_)) => Ordering::Greater,
            (Symbolic { tag: t1, tail: a }, Symbolic { tag: t2, tail: b }) => {
                t1.cmp(t2).then_with(|| cmp_terms(a, b))
            }
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total comparison. Symbolic values sit above every CNF value, `Card(i) <
/// Card(j)` for `i < j`, and every `Card(i) < On`.
#[inline(always)]
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

#[inline(always)]
fn add_terms(a: &[CnfTerm], b: &[CnfTerm]) -> Result<Terms, OrdinalError> {
    if b.is_empty() {
        return Ok(a.iter().cloned().collect());
    }
    // the general merge below, unrolled for the dominant single-term case
    if a.len() == 1 && b.len() == 1 {
        let (ta, tb) = (&a[0], &b[0]);
        return Ok(match ta.cmp_exp(tb) {
            Ordering::Greater => smallvec![ta.clone(), tb.clone()],
            Ordering::Equal => smallvec![CnfTerm {
                exp: tb.exp.clone(),
                coeff: ta.coeff.checked_add(tb.coeff).ok_or(OrdinalError::Overflow)?,
            }],
            Ordering::Less => smallvec![tb.clone()],
        });
    }
    let lead = &b[0];
    let mut out = Terms::with_capacity(a.len() + b.len());
    let mut coeff = b[0].coeff;
    for t in a {
        match t.cmp_exp(lead) {
            Ordering::Greater => out.push(t.clone()),
            Ordering::Equal => {
                coeff = t.coeff.checked_add(coeff).ok_or(OrdinalError::Overflow)?;
                break;
            }
            Ordering::Less => break,
        }
    }
    out.push(CnfTerm { exp: b[0].exp.clone(), coeff });
    if b.len() > 1 {
        out.extend(b[1..].iter().cloned());
    }
    Ok(out)
}

/// Ordinal addition. Lower terms of `a` are absorbed by the leading term of
/// `b`; a CNF summand left of a symbolic value vanishes into it. Errors when
/// the sum leaves the notation (e.g. `Card(1) + ω^ω`).
#[inline(always)]
pub fn add(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    use Ordinal::*;
    match (a, b) {
        (Cnf(x), Cnf(y)) => Ok(Cnf(add_terms(x, y)?)),
        (Cnf(_), Symbolic { .. }) => Ok(b.clone()),
        (Symbolic { tag, tail }, Cnf(y)) => {
            let t = add_terms(tail, y)?;
            if terms_below_omega_omega(&t) {
                Ok(Symbolic { tag: *tag, tail: t })
            } else {
                Err(OrdinalError::UnsupportedOperand(format!(
                    "{a} + {b}: symbolic tail would reach omega^omega"
                )))
            }
        }
        (Symbolic { tag: t1, .. }, Symbolic { tag: t2, .. }) => {
            if t1 < t2 {
                Ok(b.clone())
            } else {
                Err(OrdinalError::UnsupportedOperand(format!(
                    "{a} + {b}: sum of symbolic values is not in the notation"
                )))
            }
        }
    }
}

#[inline(always)]
fn mul_terms(a: &[CnfTerm], b: &[CnfTerm]) -> Result<Terms, OrdinalError> {
    if a.is_empty() || b.is_empty() {
        return Ok(SmallVec::new());
    }
    // single term times single term, unrolled
    if a.len() == 1 && b.len() == 1 {
        let (ta, tb) = (&a[0], &b[0]);
        return Ok(if tb.exp_is_zero() {
            smallvec![CnfTerm {
                exp: ta.exp.clone(),
                coeff: ta.coeff.checked_mul(tb.coeff).ok_or(OrdinalError::Overflow)?,
            }]
        } else {
            smallvec![CnfTerm::new(add(ta.exp(), tb.exp())?, tb.coeff)]
        });
    }
    let lead = &a[0];
    let mut out = Terms::with_capacity(b.len() + a.len());
    for tb in b {
        if tb.exp_is_zero() {
            // final natural factor: only the leading coefficient multiplies
            out.push(CnfTerm {
                exp: lead.exp.clone(),
                coeff: lead.coeff.checked_mul(tb.coeff).ok_or(OrdinalError::Overflow)?,
            });
            if a.len() > 1 {
                out.extend(a[1..].iter().cloned());
            }
        } else {
            out.push(CnfTerm::new(add(lead.exp(), tb.exp())?, tb.coeff));
        }
    }
    Ok(out)
}

/// Ordinal multiplication, distributing over the CNF of `b` from the right.
/// Right symbolic factors follow the sup clause, so `a · Card(i) = Card(i)`
/// and `a · On = On` for every nonzero CNF `a`. A symbolic *left* operand is
/// refused: the notation cannot represent `Card(1)·ω` and refusing beats
/// guessing.
#[inline(always)]
pub fn mul(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    use Ordinal::*;
    match (a, b) {
        (Cnf(x), Cnf(y)) => Ok(Cnf(mul_terms(x, y)?)),
        (Cnf(x), Symbolic { tag, tail }) => {
            if x.is_empty() {
                return Ok(Ordinal::zero());
            }
            let t = mul_terms(x, tail)?;
            if terms_below_omega_omega(&t) {
                Ok(Symbolic { tag: *tag, tail: t })
            } else {
                Err(OrdinalError::UnsupportedOperand(format!(
                    "{a} * {b}: tail product reaches omega^omega"
                )))
            }
        }
        (Symbolic { .. }, _) => Err(OrdinalError::UnsupportedOperand(format!(
            "{a} * {b}: symbolic left factor"
        ))),
    }
}

/// Unique `e'` with `ω + e' = e`, for `e ≥ ω` in CNF.
fn left_sub_omega(e: &Ordinal) -> Ordinal {
    let Ordinal::Cnf(terms) = e else { unreachable!("exponents are CNF") };
    debug_assert!(!terms.is_empty() && *terms[0].exp() >= Ordinal::nat(1));
    if *terms[0].exp() > Ordinal::nat(1) {
        return e.clone();
    }
    // leading term is ω·c
    let c = terms[0].coeff;
    if c >= 2 {
        let mut out: Terms = smallvec![CnfTerm::new(Ordinal::nat(1), c - 1)];
        out.extend(terms[1..].iter().cloned());
        Ordinal::Cnf(out)
    } else {
        Ordinal::Cnf(terms[1..].iter().cloned().collect())
    }
}

/// Split `a = ω^ω·quotient + remainder` with `remainder < ω^ω`. For CNF
/// input the remainder collects the terms with finite exponent; for a
/// symbolic value the quotient is the bare tag and the remainder its tail.
pub fn decompose_mod_omega_omega(a: &Ordinal) -> (Ordinal, Ordinal) {
    match a {
        Ordinal::Cnf(terms) => {
            let mut quot = Terms::new();
            let mut rem = Terms::new();
            for t in terms {
                if t.exp().as_nat().is_some() {
                    rem.push(t.clone());
                } else {
                    quot.push(CnfTerm::new(left_sub_omega(t.exp()), t.coeff));
                }
            }
            (Ordinal::Cnf(quot), Ordinal::Cnf(rem))
        }
        Ordinal::Symbolic { tag, tail } => (
            Ordinal::Symbolic { tag: *tag, tail: SmallVec::new() },
            Ordinal::Cnf(tail.clone()),
        ),
    }
}

/// Witness of congruence modulo ω^ω: the two quotients and the shared
/// remainder. Either both quotients are zero or both are nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceWitness {
    pub xi: Ordinal,
    pub eta: Ordinal,
    pub delta: Ordinal,
}

/// Decide whether `a` and `b` are congruent modulo ω^ω. This is exactly
/// first-order equivalence of the well-orders of types `a` and `b`.
pub fn congruent_mod_omega_omega(a: &Ordinal, b: &Ordinal) -> Option<CongruenceWitness> {
    let (xi, da) = decompose_mod_omega_omega(a);
    let (eta, db) = decompose_mod_omega_omega(b);
    if da == db && xi.is_zero() == eta.is_zero() {
        Some(CongruenceWitness { xi, eta, delta: da })
    } else {
        None
    }
}

pub fn elementarily_equivalent(a: &Ordinal, b: &Ordinal) -> bool {
    congruent_mod_omega_omega(a, b).is_some()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Cnf(terms) => {
                if terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write_term(f, t)?;
                }
                Ok(())
            }
            Ordinal::Symbolic { tag, tail } => {
                write!(f, "{tag}")?;
                if !tail.is_empty() {
                    write!(f, "+{}", Ordinal::Cnf(tail.clone()))?;
                }
                Ok(())
            }
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &CnfTerm) -> fmt::Result {
    let exp = t.exp();
    if exp.is_zero() {
        return write!(f, "{}", t.coeff);
    }
    if *exp == Ordinal::nat(1) {
        write!(f, "w")?;
    } else if let Some(n) = exp.as_nat() {
        write!(f, "w^{n}")?;
    } else if *exp == Ordinal::omega() {
        write!(f, "w^w")?;
    } else {
        write!(f, "w^({})", exp)?;
    }
    if t.coeff > 1 {
        write!(f, "*{}", t.coeff)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), OrdinalError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a natural number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| OrdinalError::Parse { pos: start, msg: "number too large".into() })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            // 'w' must not swallow a following identifier character
            let end = self.pos + kw.len();
            if self.src.get(end).is_none_or(|c| !c.is_ascii_alphanumeric()) {
                self.pos = end;
                return true;
            }
        }
        false
    }

    /// `ordinal := term ('+' term)* | 'Card(' nat ')' tail? | 'On' tail?`
    fn ordinal(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        if self.keyword("Card") {
            self.expect(b'(')?;
            let i = self.nat()?;
            if i == 0 || i > u32::MAX as u64 {
                return self.err("Card index must be in 1..=u32::MAX");
            }
            self.expect(b')')?;
            let head = Ordinal::card(i as u32);
            return self.tail(head);
        }
        if self.keyword("On") {
            return self.tail(Ordinal::on());
        }
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = add(&acc, &t).map_err(|e| OrdinalError::Parse {
                pos: self.pos,
                msg: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    /// Optional `'+' cnf-ordinal` after a symbolic head; the tail must stay
    /// below ω^ω.
    fn tail(&mut self, head: Ordinal) -> Result<Ordinal, OrdinalError> {
        let mut acc = head;
        while self.eat(b'+') {
            let pos = self.pos;
            let t = self.term()?;
            acc = add(&acc, &t)
                .map_err(|e| OrdinalError::Parse { pos, msg: e.to_string() })?;
        }
        Ok(acc)
    }

    /// `term := 'w' '^' atom ('*' nat)? | 'w' ('*' nat)? | nat`
    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        if self.keyword("w") {
            let exp = if self.eat(b'^') { self.atom()? } else { Ordinal::nat(1) };
            let base = Ordinal::omega_power(exp);
            if self.eat(b'*') {
                let c = self.nat()?;
                return mul(&base, &Ordinal::nat(c)).map_err(|e| OrdinalError::Parse {
                    pos: self.pos,
                    msg: e.to_string(),
                });
            }
            return Ok(base);
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(Ordinal::nat(self.nat()?));
        }
        self.err("expected 'w', a number, 'Card(i)' or 'On'")
    }

    /// `atom := nat | 'w' | '(' ordinal ')'`
    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        if self.eat(b'(') {
            let pos = self.pos;
            let o = self.ordinal()?;
            self.expect(b')')?;
            if o.is_symbolic() {
                return Err(OrdinalError::Parse {
                    pos,
                    msg: "symbolic values cannot appear in exponents".into(),
                });
            }
            return Ok(o);
        }
        if self.keyword("w") {
            return Ok(Ordinal::omega());
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok(Ordinal::nat(self.nat()?));
        }
        self.err("expected an exponent: nat, 'w' or '(ordinal)'")
    }
}

/// Parse the plain-text ordinal syntax (`w^w*2+5`, `Card(1)+3`, `On`).
/// Non-canonical input (`w+w`, `1+w`) is normalized, never rejected.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let o = p.ordinal()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    debug_assert!(o.is_canonical());
    Ok(o)
}
