//! Exact element arithmetic (identity, multiply-by-generator, equality,
//! canonical keys) for the built-in groups. Oracles make Cayley-ball
//! construction sound: two vertices coincide iff their canonical keys
//! are equal.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::grigorchuk::{self, GrigWord};
use crate::words::{free_reduce, parse_presentation, GenWord, Letter, Presentation};

/// A group element of one of the built-in oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    /// Integer vector in Z^d.
    Zd(Vec<BigInt>),
    /// Affine map x -> 2^log2_scale * x + num / 2^den_pow (dyadic
    /// rational offset in lowest terms). Faithful model of BS(1,2).
    Affine {
        log2_scale: i64,
        num: BigInt,
        den_pow: u32,
    },
    /// Reduced word in a free group or free product of Z/2's.
    Word(GenWord),
    /// Canonical word of the Grigorchuk group.
    Grig(GrigWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    UnknownGroup(String),
    BadParameter(String),
    NoOracle(String),
    GeneratorMismatch,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::UnknownGroup(n) => write!(f, "unknown group `{n}`"),
            OracleError::BadParameter(m) => write!(f, "{m}"),
            OracleError::NoOracle(n) => write!(
                f,
                "group `{n}` is registered presentation-only (no element oracle)"
            ),
            OracleError::GeneratorMismatch => write!(f, "oracle and presentation generators differ"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// Exact element arithmetic for one group.
///
/// `canonical_key` must be injective on group elements: equal keys iff
/// equal elements. `multiply` is right multiplication by a signed
/// generator; `compose` is the full group product.
pub trait ElementOracle: Send + Sync {
    fn name(&self) -> &str;
    fn presentation(&self) -> &Presentation;
    fn identity(&self) -> Element;
    fn multiply(&self, e: &Element, s: Letter) -> Element;
    fn canonical_key(&self, e: &Element) -> Vec<u8>;
    fn compose(&self, a: &Element, b: &Element) -> Element;

    fn is_identity(&self, e: &Element) -> bool {
        self.canonical_key(e) == self.canonical_key(&self.identity())
    }

    /// Evaluate a word through repeated generator multiplication.
    fn eval(&self, w: &GenWord) -> Element {
        let mut e = self.identity();
        for &l in w.letters() {
            e = self.multiply(&e, l);
        }
        e
    }
}

/// The distinct one-step moves of the Cayley graph: each generator and,
/// for non-involutions, its formal inverse, deduplicated as group
/// elements (the graph is simple).
pub fn oracle_moves(o: &dyn ElementOracle) -> Vec<Letter> {
    let id = o.identity();
    let id_key = o.canonical_key(&id);
    let mut moves = Vec::new();
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let p = o.presentation();
    for g in 0..p.generators.len() as u16 {
        let mut candidates = alloc::vec![Letter::new(g, false)];
        if !p.is_involution(g) {
            candidates.push(Letter::new(g, true));
        }
        for l in candidates {
            let key = o.canonical_key(&o.multiply(&id, l));
            if key == id_key || seen.contains(&key) {
                continue;
            }
            seen.push(key);
            moves.push(l);
        }
    }
    moves
}

// ---------------------------------------------------------------------
// Concrete oracles
// ---------------------------------------------------------------------

struct ZdOracle {
    name: String,
    dim: usize,
    pres: Presentation,
}

impl ElementOracle for ZdOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn identity(&self) -> Element {
        Element::Zd(alloc::vec![BigInt::zero(); self.dim])
    }

    fn multiply(&self, e: &Element, s: Letter) -> Element {
        let Element::Zd(coords) = e else { panic!("foreign element") };
        let mut coords = coords.clone();
        if s.inv {
            coords[s.gen as usize] -= 1;
        } else {
            coords[s.gen as usize] += 1;
        }
        Element::Zd(coords)
    }

    fn canonical_key(&self, e: &Element) -> Vec<u8> {
        let Element::Zd(coords) = e else { panic!("foreign element") };
        let mut out = Vec::new();
        for c in coords {
            push_bigint(&mut out, c);
        }
        out
    }

    fn compose(&self, a: &Element, b: &Element) -> Element {
        let (Element::Zd(x), Element::Zd(y)) = (a, b) else { panic!("foreign element") };
        Element::Zd(x.iter().zip(y).map(|(u, v)| u + v).collect())
    }
}

fn push_bigint(out: &mut Vec<u8>, v: &BigInt) {
    let bytes = v.to_signed_bytes_le();
    out.push(bytes.len() as u8);
    out.extend_from_slice(&bytes);
}

/// Free groups and free products of Z/2's (regular trees): elements are
/// reduced words, multiplication is push-with-cancellation.
struct WordOracle {
    name: String,
    pres: Presentation,
}

impl ElementOracle for WordOracle {
    fn name(&self) -> &str {
        &self.name
    }

    fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn identity(&self) -> Element {
        Element::Word(GenWord::empty())
    }

    fn multiply(&self, e: &Element, s: Letter) -> Element {
        let Element::Word(w) = e else { panic!("foreign element") };
        let mut letters = w.letters().to_vec();
        letters.push(s);
        Element::Word(free_reduce(&letters, &self.pres))
    }

    fn canonical_key(&self, e: &Element) -> Vec<u8> {
        let Element::Word(w) = e else { panic!("foreign element") };
        w.letters()
            .iter()
            .map(|l| (l.gen as u8) << 1 | l.inv as u8)
            .collect()
    }

    fn compose(&self, a: &Element, b: &Element) -> Element {
        let (Element::Word(u), Element::Word(v)) = (a, b) else { panic!("foreign element") };
        Element::Word(u.concat(v, &self.pres))
    }
}

/// BS(1,2) = < x, y | x^-1 y x = y^2 > as affine maps of the dyadic
/// rationals: x is t -> 2t, y is t -> t + 1, and a word acts by
/// composing left to right (earlier letters applied first).
struct Bs12Oracle {
    pres: Presentation,
}

fn affine_normalize(num: &mut BigInt, den_pow: &mut u32) {
    if num.is_zero() {
        *den_pow = 0;
        return;
    }
    while *den_pow > 0 && (&*num % 2u8).is_zero() {
        *num /= 2;
        *den_pow -= 1;
    }
}

impl ElementOracle for Bs12Oracle {
    fn name(&self) -> &str {
        "bs12"
    }

    fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn identity(&self) -> Element {
        Element::Affine {
            log2_scale: 0,
            num: BigInt::zero(),
            den_pow: 0,
        }
    }

    fn multiply(&self, e: &Element, s: Letter) -> Element {
        let Element::Affine { log2_scale, num, den_pow } = e else { panic!("foreign element") };
        let (mut k, mut num, mut den) = (*log2_scale, num.clone(), *den_pow);
        match (s.gen, s.inv) {
            // x: scale doubles, offset doubles
            (0, false) => {
                k += 1;
                if den > 0 {
                    den -= 1;
                } else {
                    num *= 2;
                }
            }
            // x^-1: scale and offset halve
            (0, true) => {
                k -= 1;
                if !num.is_zero() && (&num % 2u8).is_zero() {
                    num /= 2;
                } else if !num.is_zero() {
                    den += 1;
                }
            }
            // y: offset + 1
            (1, false) => {
                num += BigInt::from(1) << den;
            }
            // y^-1: offset - 1
            (1, true) => {
                num -= BigInt::from(1) << den;
            }
            _ => panic!("foreign generator"),
        }
        affine_normalize(&mut num, &mut den);
        Element::Affine {
            log2_scale: k,
            num,
            den_pow: den,
        }
    }

    fn canonical_key(&self, e: &Element) -> Vec<u8> {
        let Element::Affine { log2_scale, num, den_pow } = e else { panic!("foreign element") };
        let mut out = Vec::new();
        out.extend_from_slice(&log2_scale.to_le_bytes());
        out.extend_from_slice(&den_pow.to_le_bytes());
        push_bigint(&mut out, num);
        out
    }

    fn compose(&self, a: &Element, b: &Element) -> Element {
        let (
            Element::Affine { log2_scale: k1, num: n1, den_pow: d1 },
            Element::Affine { log2_scale: k2, num: n2, den_pow: d2 },
        ) = (a, b)
        else {
            panic!("foreign element")
        };
        // (a then b)(t) = 2^{k2} (2^{k1} t + q1) + q2, so the offset is
        // 2^{k2} q1 + q2 with q_i = n_i / 2^{d_i}.
        // Common denominator 2^m, m = max(d1 - k2, d2, 0).
        let m = (*d1 as i64 - k2).max(*d2 as i64).max(0) as u32;
        // 2^{k2} q1 = n1 * 2^{k2 - d1} = n1 * 2^{m + k2 - d1} / 2^m
        let shift1 = m as i64 + k2 - *d1 as i64;
        debug_assert!(shift1 >= 0);
        let term1 = n1.clone() << (shift1 as u32);
        let term2 = n2.clone() << (m - d2);
        let mut num = term1 + term2;
        let mut den = m;
        affine_normalize(&mut num, &mut den);
        Element::Affine {
            log2_scale: k1 + k2,
            num,
            den_pow: den,
        }
    }
}

struct GrigOracle {
    pres: Presentation,
}

impl GrigOracle {
    /// Generator indices a, b, c map to Grigorchuk letters directly.
    fn letter_of(&self, s: Letter) -> u8 {
        debug_assert!(!s.inv);
        s.gen as u8
    }
}

impl ElementOracle for GrigOracle {
    fn name(&self) -> &str {
        "grigorchuk"
    }

    fn presentation(&self) -> &Presentation {
        &self.pres
    }

    fn identity(&self) -> Element {
        Element::Grig(GrigWord::identity())
    }

    fn multiply(&self, e: &Element, s: Letter) -> Element {
        let Element::Grig(w) = e else { panic!("foreign element") };
        let mut raw = w.letters().to_vec();
        raw.push(self.letter_of(s));
        Element::Grig(grigorchuk::grig_reduce(&raw))
    }

    fn canonical_key(&self, e: &Element) -> Vec<u8> {
        let Element::Grig(w) = e else { panic!("foreign element") };
        grigorchuk::grig_canonical_key(w)
    }

    fn compose(&self, a: &Element, b: &Element) -> Element {
        let (Element::Grig(u), Element::Grig(v)) = (a, b) else { panic!("foreign element") };
        Element::Grig(u.concat(v))
    }

    fn is_identity(&self, e: &Element) -> bool {
        let Element::Grig(w) = e else { panic!("foreign element") };
        grigorchuk::grig_is_identity(w)
    }
}

// ---------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------

/// The built-in group registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Zd(u32),
    Free(u32),
    Tree(u32),
    Bs12,
    Grigorchuk,
    Higman,
    HigmanVariant,
    GrigHnn,
}

impl Builtin {
    pub fn canonical_name(&self) -> String {
        match self {
            Builtin::Zd(1) => "z1".to_owned(),
            Builtin::Zd(2) => "z2".to_owned(),
            Builtin::Zd(d) => format!("zd:{d}"),
            Builtin::Free(k) => format!("free:{k}"),
            Builtin::Tree(d) => format!("tree:{d}"),
            Builtin::Bs12 => "bs12".to_owned(),
            Builtin::Grigorchuk => "grigorchuk".to_owned(),
            Builtin::Higman => "higman".to_owned(),
            Builtin::HigmanVariant => "higman-variant".to_owned(),
            Builtin::GrigHnn => "grig-hnn".to_owned(),
        }
    }

    /// Whether an exact element oracle exists (Higman-type groups and
    /// the HNN extension are registered presentation-only).
    pub fn has_oracle(&self) -> bool {
        !matches!(self, Builtin::Higman | Builtin::HigmanVariant | Builtin::GrigHnn)
    }
}

/// Parse a registry name: `z1`, `z2`, `zd:<d>`, `free:<k>`, `tree:<D>`,
/// `bs12`, `grigorchuk`, `higman`, `higman-variant`, `grig-hnn`.
pub fn parse_group_name(name: &str) -> Result<Builtin, OracleError> {
    let builtin = match name {
        "z1" => Builtin::Zd(1),
        "z2" => Builtin::Zd(2),
        "bs12" => Builtin::Bs12,
        "grigorchuk" => Builtin::Grigorchuk,
        "higman" => Builtin::Higman,
        "higman-variant" => Builtin::HigmanVariant,
        "grig-hnn" => Builtin::GrigHnn,
        other => {
            let (kind, param) = other
                .split_once(':')
                .ok_or_else(|| OracleError::UnknownGroup(other.to_owned()))?;
            let value: u32 = param
                .parse()
                .map_err(|_| OracleError::BadParameter(format!("bad parameter `{param}`")))?;
            match kind {
                "zd" => Builtin::Zd(value),
                "free" => Builtin::Free(value),
                "tree" => Builtin::Tree(value),
                "bs" => {
                    return Err(OracleError::BadParameter(
                        "only bs12 (m = 1, n = 2) has an exact oracle".to_owned(),
                    ))
                }
                _ => return Err(OracleError::UnknownGroup(other.to_owned())),
            }
        }
    };
    validate(builtin)?;
    Ok(builtin)
}

fn validate(b: Builtin) -> Result<(), OracleError> {
    match b {
        Builtin::Zd(d) if d < 1 => Err(OracleError::BadParameter("zd requires d >= 1".to_owned())),
        Builtin::Free(k) if k < 1 => {
            Err(OracleError::BadParameter("free requires k >= 1".to_owned()))
        }
        Builtin::Tree(d) if d < 3 => {
            Err(OracleError::BadParameter("tree requires degree >= 3".to_owned()))
        }
        Builtin::Zd(d) | Builtin::Free(d) | Builtin::Tree(d) if d > 64 => Err(
            OracleError::BadParameter("parameter above desk-scale limit 64".to_owned()),
        ),
        _ => Ok(()),
    }
}

fn letter_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if count <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

fn zd_gen_names(d: usize) -> Vec<String> {
    match d {
        1 => alloc::vec!["x".to_owned()],
        2 => alloc::vec!["x".to_owned(), "y".to_owned()],
        3 => alloc::vec!["x".to_owned(), "y".to_owned(), "z".to_owned()],
        _ => (1..=d).map(|i| format!("x{i}")).collect(),
    }
}

use alloc::string::ToString;

/// The registered presentation for a built-in group.
pub fn registered_presentation(b: Builtin) -> Presentation {
    let source = match b {
        Builtin::Zd(d) => {
            let names = zd_gen_names(d as usize);
            let mut src = format!("gens {}\n", names.join(" "));
            for i in 0..names.len() {
                for j in (i + 1)..names.len() {
                    src.push_str(&format!(
                        "rel {} {} {}^-1 {}^-1\n",
                        names[i], names[j], names[i], names[j]
                    ));
                }
            }
            src
        }
        Builtin::Free(k) => format!("gens {}\n", letter_names(k as usize).join(" ")),
        Builtin::Tree(d) => {
            let names = letter_names(d as usize).join(" ");
            format!("gens {names}\ninv {names}\n")
        }
        Builtin::Bs12 => "gens x y\nrel x^-1 y x y^-1 y^-1\n".to_owned(),
        Builtin::Grigorchuk => "gens a b c\n\
             inv a b c\n\
             rel (b c)^2\n\
             rel (a b c)^4\n\
             rel (a c)^8\n\
             rel (a b c a c a c)^4\n\
             rel (a c a b)^8\n\
             rel (a b)^16\n\
             family grigorchuk-sigma\n"
            .to_owned(),
        Builtin::Higman => "gens a b c d\n\
             rel a^-1 b a b^-1 b^-1\n\
             rel b^-1 c b c^-1 c^-1\n\
             rel c^-1 d c d^-1 d^-1\n\
             rel d^-1 a d a^-1 a^-1\n"
            .to_owned(),
        Builtin::HigmanVariant => "gens a b c d\n\
             rel a^-1 b a b^-1 b^-1\n\
             rel b^-1 b^-1 c b b c^-1 c^-1\n\
             rel c^-1 c^-1 c^-1 d c c c d^-1 d^-1\n\
             rel d^-1 d^-1 d^-1 d^-1 a d d d d a^-1 a^-1\n"
            .to_owned(),
        Builtin::GrigHnn => "gens a c d t\n\
             inv a c d\n\
             rel (a d)^4\n\
             rel (a d a c a c)^4\n\
             rel t^-1 a t a c a\n\
             rel t^-1 c t c d\n\
             rel t^-1 d t c\n"
            .to_owned(),
    };
    let mut p = parse_presentation(&source).expect("registered presentation parses");
    // The Grigorchuk group is not finitely presented; its registered
    // relator list (even with the sigma family prefix) is a partial set.
    if b == Builtin::Grigorchuk {
        p.complete = false;
    }
    p
}

/// Construct the exact element oracle for a built-in group.
pub fn oracle_for(b: Builtin) -> Result<Box<dyn ElementOracle>, OracleError> {
    if !b.has_oracle() {
        return Err(OracleError::NoOracle(b.canonical_name()));
    }
    let pres = registered_presentation(b);
    Ok(match b {
        Builtin::Zd(d) => Box::new(ZdOracle {
            name: b.canonical_name(),
            dim: d as usize,
            pres,
        }),
        Builtin::Free(_) | Builtin::Tree(_) => Box::new(WordOracle {
            name: b.canonical_name(),
            pres,
        }),
        Builtin::Bs12 => Box::new(Bs12Oracle { pres }),
        Builtin::Grigorchuk => Box::new(GrigOracle { pres }),
        _ => unreachable!(),
    })
}

// ---------------------------------------------------------------------
// Relator verification and element orders
// ---------------------------------------------------------------------

/// Per-relator verification outcome.
#[derive(Debug, Clone)]
pub struct RelatorReport {
    pub results: Vec<(String, bool)>,
}

impl RelatorReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, ok)| *ok)
    }
}

/// Evaluate every relator of `p` (including family members up to
/// `family_cap`) through the oracle and check it equals the identity.
pub fn verify_relators(
    o: &dyn ElementOracle,
    p: &Presentation,
    family_cap: usize,
) -> Result<RelatorReport, OracleError> {
    if o.presentation().generators.len() != p.generators.len()
        || o.presentation()
            .generators
            .iter()
            .zip(&p.generators)
            .any(|(a, b)| a.name != b.name)
    {
        return Err(OracleError::GeneratorMismatch);
    }
    let mut results = Vec::new();
    for rel in p.relators_with_family(family_cap) {
        let ok = o.is_identity(&o.eval(&rel));
        results.push((rel.display(p), ok));
    }
    Ok(RelatorReport { results })
}

/// Result of an order computation capped at `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    ExceedsCap,
}

/// Default order-search cap: Grigorchuk element orders are powers of 2
/// and desk-scale words stay far below this.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

/// Least n <= cap with w^n = id. A doubling ladder catches power-of-two
/// orders quickly (the first identity among w, w^2, w^4, ... at
/// exponent 2^j certifies order exactly 2^j, as any order dividing 2^j
/// is itself a power of two already tested); otherwise a sequential
/// scan decides exactly.
pub fn element_order(o: &dyn ElementOracle, w: &GenWord, cap: u64) -> OrderResult {
    let el = o.eval(w);
    if o.is_identity(&el) {
        return OrderResult::Finite(1);
    }
    let mut p = el.clone();
    let mut exp = 1u64;
    while exp.saturating_mul(2) <= cap {
        p = o.compose(&p, &p);
        exp *= 2;
        if o.is_identity(&p) {
            return OrderResult::Finite(exp);
        }
    }
    let mut e = el.clone();
    for n in 2..=cap {
        e = o.compose(&e, &el);
        if o.is_identity(&e) {
            return OrderResult::Finite(n);
        }
    }
    OrderResult::ExceedsCap
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zd_moves_and_identity() {
        let o = oracle_for(Builtin::Zd(2)).unwrap();
        let moves = oracle_moves(o.as_ref());
        assert_eq!(moves.len(), 4);
        assert!(o.is_identity(&o.identity()));
    }

    #[test]
    fn tree_moves_are_involutions() {
        let o = oracle_for(Builtin::Tree(3)).unwrap();
        assert_eq!(oracle_moves(o.as_ref()).len(), 3);
    }

    #[test]
    fn bs12_pinning_relation() {
        // x^-1 y x = y^2 pins the composition convention
        let o = oracle_for(Builtin::Bs12).unwrap();
        let p = o.presentation().clone();
        let lhs = o.eval(&p.parse_word("x^-1 y x").unwrap());
        let rhs = o.eval(&p.parse_word("y y").unwrap());
        assert_eq!(o.canonical_key(&lhs), o.canonical_key(&rhs));
    }

    #[test]
    fn bs12_denominators_stay_dyadic() {
        let o = oracle_for(Builtin::Bs12).unwrap();
        let p = o.presentation().clone();
        let e = o.eval(&p.parse_word("x^-1 y x^-1 y x x y^-1").unwrap());
        let Element::Affine { num, den_pow, .. } = &e else { panic!() };
        // lowest terms: odd numerator unless the denominator is 1
        assert!(*den_pow == 0 || (!(num % 2u8).is_zero()));
        // exponents add under composition
        let x = o.eval(&p.parse_word("x").unwrap());
        let xx = o.compose(&x, &x);
        let Element::Affine { log2_scale, .. } = xx else { panic!() };
        assert_eq!(log2_scale, 2);
    }

    #[test]
    fn relators_hold_on_all_oracle_builtins() {
        for b in [
            Builtin::Zd(1),
            Builtin::Zd(2),
            Builtin::Zd(3),
            Builtin::Free(2),
            Builtin::Tree(3),
            Builtin::Tree(4),
            Builtin::Bs12,
            Builtin::Grigorchuk,
        ] {
            let o = oracle_for(b).unwrap();
            let p = registered_presentation(b);
            let report = verify_relators(o.as_ref(), &p, 6).unwrap();
            assert!(report.all_pass(), "{:?}: {:?}", b, report.results);
        }
    }

    #[test]
    fn multiply_then_inverse_cancels() {
        for b in [Builtin::Zd(2), Builtin::Free(2), Builtin::Tree(3), Builtin::Bs12] {
            let o = oracle_for(b).unwrap();
            let moves = oracle_moves(o.as_ref());
            for &m in &moves {
                let e = o.multiply(&o.identity(), m);
                let back = if o.presentation().is_involution(m.gen) {
                    o.multiply(&e, m)
                } else {
                    o.multiply(&e, Letter::new(m.gen, !m.inv))
                };
                assert!(o.is_identity(&back));
            }
        }
    }

    #[test]
    fn grig_orders() {
        let o = oracle_for(Builtin::Grigorchuk).unwrap();
        let p = o.presentation().clone();
        let ab = p.parse_word("a b").unwrap();
        let ac = p.parse_word("a c").unwrap();
        assert_eq!(element_order(o.as_ref(), &ab, DEFAULT_ORDER_CAP), OrderResult::Finite(16));
        assert_eq!(element_order(o.as_ref(), &ac, DEFAULT_ORDER_CAP), OrderResult::Finite(8));
    }

    #[test]
    fn infinite_order_exceeds_cap() {
        let o = oracle_for(Builtin::Zd(1)).unwrap();
        let p = o.presentation().clone();
        let x = p.parse_word("x").unwrap();
        assert_eq!(element_order(o.as_ref(), &x, 100), OrderResult::ExceedsCap);
    }

    #[test]
    fn registry_names() {
        assert_eq!(parse_group_name("z2").unwrap(), Builtin::Zd(2));
        assert_eq!(parse_group_name("zd:5").unwrap(), Builtin::Zd(5));
        assert_eq!(parse_group_name("tree:3").unwrap(), Builtin::Tree(3));
        assert!(parse_group_name("tree:2").is_err());
        assert!(parse_group_name("nope").is_err());
        assert!(oracle_for(Builtin::Higman).is_err());
        assert!(matches!(
            oracle_for(Builtin::GrigHnn),
            Err(OracleError::NoOracle(_))
        ));
    }
}
