//! Exact engine for the Grigorchuk group: canonical word reduction,
//! wreath-recursion sections, a decision procedure for the word problem,
//! explicit actions on truncations of the rooted binary tree, and the
//! brute-force search over the 128 candidate 16-cycles through a
//! b-labelled edge.
//!
//! Generators a, b, c, d are involutions with bcd = id; b, c, d commute
//! and satisfy the Klein four-group table bc = d, bd = c, cd = b. The
//! wreath recursion is b = (a,c), c = (a,d), d = (e,b), with a swapping
//! the two subtrees.

use alloc::vec::Vec;
use core::fmt;
use hashbrown::HashMap;

pub const A: u8 = 0;
pub const B: u8 = 1;
pub const C: u8 = 2;
pub const D: u8 = 3;

const LETTER_NAMES: [char; 4] = ['a', 'b', 'c', 'd'];

/// A word over {a,b,c,d} in canonical alternating form: no adjacent
/// pair of letters from {b,c,d} (they merge via the Klein table) and no
/// adjacent a a. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GrigWord(Vec<u8>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidLetter(pub char);

impl fmt::Display for InvalidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid Grigorchuk letter `{}` (expected a, b, c, d)", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvalidLetter {}

impl GrigWord {
    pub fn identity() -> Self {
        GrigWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, InvalidLetter> {
        let mut raw = Vec::new();
        for ch in text.chars() {
            if ch.is_whitespace() {
                continue;
            }
            raw.push(match ch {
                'a' => A,
                'b' => B,
                'c' => C,
                'd' => D,
                other => return Err(InvalidLetter(other)),
            });
        }
        Ok(grig_reduce(&raw))
    }

    /// All generators are involutions, so the inverse is the reversal.
    pub fn inverse(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        GrigWord(v)
    }

    pub fn concat(&self, other: &GrigWord) -> GrigWord {
        let mut raw = self.0.clone();
        raw.extend_from_slice(&other.0);
        grig_reduce(&raw)
    }
}

impl fmt::Display for GrigWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.0 {
            write!(f, "{}", LETTER_NAMES[l as usize])?;
        }
        Ok(())
    }
}

/// Klein four-group product of two distinct letters from {b,c,d}.
fn klein_merge(x: u8, y: u8) -> u8 {
    debug_assert!(x != y && x != A && y != A);
    // {1,2,3} with product = the third element: 1^2^3 = 0, so x^y gives
    // the remaining letter directly.
    x ^ y
}

/// Reduce a raw letter sequence to canonical alternating form using
/// a^2 = b^2 = c^2 = d^2 = id and the Klein merges bc = d etc. The
/// result length never exceeds the input length.
pub fn grig_reduce(raw: &[u8]) -> GrigWord {
    let mut stack: Vec<u8> = Vec::with_capacity(raw.len());
    for &l in raw {
        debug_assert!(l <= D);
        let mut cur = l;
        loop {
            match stack.last() {
                Some(&top) if top == cur => {
                    stack.pop();
                    break;
                }
                Some(&top) if top != A && cur != A => {
                    stack.pop();
                    cur = klein_merge(top, cur);
                }
                _ => {
                    stack.push(cur);
                    break;
                }
            }
        }
    }
    GrigWord(stack)
}

/// Wreath sections of a generator under b = (a,c), c = (a,d), d = (e,b).
/// Returns (left, right) with 255 standing for the empty section.
fn gen_sections(l: u8) -> (u8, u8) {
    match l {
        B => (A, C),
        C => (A, D),
        D => (255, B),
        _ => unreachable!(),
    }
}

/// Decompose a word as (parity, w0, w1): `parity` is the parity of the
/// a-count (odd means the two root subtrees are swapped), and w0, w1
/// are the induced actions on the left/right subtrees, reduced. Both
/// sections have length at most (|w|+1)/2.
pub fn grig_sections(w: &GrigWord) -> (bool, GrigWord, GrigWord) {
    let mut parity = false;
    let mut s0: Vec<u8> = Vec::with_capacity(w.len() / 2 + 1);
    let mut s1: Vec<u8> = Vec::with_capacity(w.len() / 2 + 1);
    for &l in w.letters() {
        if l == A {
            parity = !parity;
            continue;
        }
        let (left, right) = gen_sections(l);
        let (to0, to1) = if parity { (right, left) } else { (left, right) };
        if to0 != 255 {
            s0.push(to0);
        }
        if to1 != 255 {
            s1.push(to1);
        }
    }
    (parity, grig_reduce(&s0), grig_reduce(&s1))
}

fn is_identity_memo(w: &GrigWord, memo: &mut HashMap<GrigWord, bool>) -> bool {
    match w.len() {
        0 => return true,
        1 => return false,
        _ => {}
    }
    if let Some(&r) = memo.get(w) {
        return r;
    }
    let (parity, w0, w1) = grig_sections(w);
    let result = if parity {
        false
    } else {
        is_identity_memo(&w0, memo) && is_identity_memo(&w1, memo)
    };
    memo.insert(w.clone(), result);
    result
}

/// Decide whether `w` acts trivially on the whole infinite binary tree.
/// Recursion on wreath sections; terminates because sections of a word
/// of length >= 2 are strictly shorter.
pub fn grig_is_identity(w: &GrigWord) -> bool {
    let mut memo = HashMap::new();
    is_identity_memo(w, &mut memo)
}

/// Group equality via the word problem: u = v iff u v^-1 = id.
pub fn grig_equal(u: &GrigWord, v: &GrigWord) -> bool {
    grig_is_identity(&u.concat(&v.inverse()))
}

/// Identify `w` as an element of the nucleus {e, a, b, c, d}, if it is
/// one. Words much longer than 1 can still equal a generator.
pub fn grig_nucleus(w: &GrigWord) -> Option<u8> {
    if grig_is_identity(w) {
        return Some(255);
    }
    for l in [A, B, C, D] {
        let mut raw = w.0.clone();
        raw.push(l); // all generators are involutions, so w = l iff w·l = id
        if grig_is_identity(&grig_reduce(&raw)) {
            return Some(l);
        }
    }
    None
}

/// Canonical key: a serialized portrait of the element, pruned at
/// nucleus elements. Two words get the same key iff they are equal in
/// the group.
pub fn grig_canonical_key(w: &GrigWord) -> Vec<u8> {
    let mut out = Vec::new();
    portrait_into(w, &mut out);
    out
}

fn portrait_into(w: &GrigWord, out: &mut Vec<u8>) {
    if let Some(n) = grig_nucleus(w) {
        out.push(if n == 255 { 0x00 } else { 0x01 + n });
        return;
    }
    let (parity, w0, w1) = grig_sections(w);
    out.push(if parity { 0x11 } else { 0x10 });
    portrait_into(&w0, out);
    portrait_into(&w1, out);
}

/// The permutation a word induces on the 2^depth leaves of the rooted
/// binary tree truncated at `depth`. Leaf labels read the path from
/// the root in the low bits (bit 0 = first branch).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAutomorphismAction {
    pub depth: u32,
    pub perm: Vec<u32>,
}

impl TreeAutomorphismAction {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Composition: apply `self` first, then `other`.
    pub fn then(&self, other: &TreeAutomorphismAction) -> TreeAutomorphismAction {
        assert_eq!(self.depth, other.depth);
        TreeAutomorphismAction {
            depth: self.depth,
            perm: self.perm.iter().map(|&p| other.perm[p as usize]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthOutOfRange(pub u32);

impl fmt::Display for DepthOutOfRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tree depth {} out of range (1..=20)", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DepthOutOfRange {}

/// Apply one generator to a path (in-place), reading bits from `bit`.
fn apply_gen(l: u8, path: &mut u32, bit: u32, depth: u32) {
    if bit >= depth {
        return;
    }
    if l == A {
        *path ^= 1 << bit;
        return;
    }
    let (left, right) = gen_sections(l);
    let side = (*path >> bit) & 1;
    let next = if side == 0 { left } else { right };
    if next != 255 {
        apply_gen(next, path, bit + 1, depth);
    }
}

/// Exact action of `w` on the depth-`depth` truncation, 1 <= depth <= 20.
pub fn grig_tree_action(w: &GrigWord, depth: u32) -> Result<TreeAutomorphismAction, DepthOutOfRange> {
    if !(1..=20).contains(&depth) {
        return Err(DepthOutOfRange(depth));
    }
    let n = 1u32 << depth;
    let mut perm = Vec::with_capacity(n as usize);
    for leaf in 0..n {
        let mut path = leaf;
        for &l in w.letters() {
            apply_gen(l, &mut path, 0, depth);
        }
        perm.push(path);
    }
    Ok(TreeAutomorphismAction { depth, perm })
}

/// Whether `w` acts as the identity on the depth-`depth` truncation,
/// computed by section recursion without materializing the permutation.
pub fn grig_is_identity_at_depth(w: &GrigWord, depth: u32) -> bool {
    if w.is_empty() {
        return true;
    }
    if depth == 0 {
        return true;
    }
    let (parity, w0, w1) = grig_sections(w);
    if parity {
        return false;
    }
    grig_is_identity_at_depth(&w0, depth - 1) && grig_is_identity_at_depth(&w1, depth - 1)
}

/// One assignment x_2..x_8 in the 16-letter candidate relation
/// b a x_2 a x_3 a ... x_8 a.
pub type BadCycleAssignment = [u8; 7];

/// Build the candidate word for an assignment.
pub fn badcycle_word(xs: &BadCycleAssignment) -> GrigWord {
    let mut raw = Vec::with_capacity(16);
    raw.push(B);
    raw.push(A);
    for &x in xs {
        raw.push(x);
        raw.push(A);
    }
    grig_reduce(&raw)
}

/// Enumerate all 2^7 = 128 assignments x_2,...,x_8 in {b,c} and return
/// those for which b a (x_2 a)(x_3 a)...(x_8 a) is the identity.
/// The expected result is the empty list.
pub fn grig_search_badcycles() -> Vec<BadCycleAssignment> {
    let mut hits = Vec::new();
    for mask in 0u32..128 {
        let mut xs: BadCycleAssignment = [B; 7];
        for (i, x) in xs.iter_mut().enumerate() {
            *x = if (mask >> i) & 1 == 0 { B } else { C };
        }
        if grig_is_identity(&badcycle_word(&xs)) {
            hits.push(xs);
        }
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> GrigWord {
        GrigWord::parse(s).unwrap()
    }

    #[test]
    fn reduce_klein_and_involutions() {
        assert_eq!(grig_reduce(&[B, C]), w("d"));
        assert_eq!(grig_reduce(&[B, D]), w("c"));
        assert_eq!(grig_reduce(&[A, A, B]), w("b"));
        assert_eq!(grig_reduce(&[B, C, D]), GrigWord::identity());
        assert_eq!(grig_reduce(&[C, D, C, D]), GrigWord::identity());
    }

    #[test]
    fn reduce_never_lengthens() {
        // exhaustive over short raw words
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() < 5 {
                for l in [A, B, C, D] {
                    let mut next = cur.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
            assert!(grig_reduce(&cur).len() <= cur.len());
        }
    }

    #[test]
    fn sections_of_generators() {
        assert_eq!(grig_sections(&w("b")), (false, w("a"), w("c")));
        assert_eq!(grig_sections(&w("c")), (false, w("a"), w("d")));
        assert_eq!(grig_sections(&w("d")), (false, GrigWord::identity(), w("b")));
        assert_eq!(
            grig_sections(&w("a")),
            (true, GrigWord::identity(), GrigWord::identity())
        );
    }

    #[test]
    fn section_length_contraction() {
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() < 9 {
                for l in [A, B, C, D] {
                    let mut next = cur.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
            let word = grig_reduce(&cur);
            if word.len() >= 2 {
                let (_, w0, w1) = grig_sections(&word);
                let bound = (word.len() + 1) / 2;
                assert!(w0.len() <= bound && w1.len() <= bound, "word {word}");
            }
        }
    }

    #[test]
    fn relations_hold() {
        for rel in ["aa", "bb", "cc", "dd", "bcd"] {
            assert!(w(rel).is_empty(), "{rel} should reduce to identity");
        }
        // The d-eliminated relation list over {a,b,c}.
        let relations = [
            "bcbc",
            "abcabcabcabc",
            "acacacacacacacac",
            "abcacacabcacacabcacacabcacac",
            "acabacabacabacabacabacabacabacab",
            "abababababababababababababababab",
        ];
        for rel in relations {
            assert!(grig_is_identity(&w(rel)), "{rel} should be the identity");
        }
    }

    #[test]
    fn non_relations_detected() {
        let ab8: alloc::string::String = core::iter::repeat("ab").take(8).collect();
        let ac4: alloc::string::String = core::iter::repeat("ac").take(4).collect();
        assert!(!grig_is_identity(&w(&ab8)));
        assert!(!grig_is_identity(&w(&ac4)));
        assert!(grig_is_identity(&GrigWord::identity()));
    }

    #[test]
    fn tree_action_basics() {
        let a1 = grig_tree_action(&w("a"), 1).unwrap();
        assert_eq!(a1.perm, vec![1, 0]);
        let d1 = grig_tree_action(&w("d"), 1).unwrap();
        assert!(d1.is_identity());
        // action of a product is composition of actions
        let u = w("ab");
        let v = w("ca");
        let uv = u.concat(&v);
        let au = grig_tree_action(&u, 6).unwrap();
        let av = grig_tree_action(&v, 6).unwrap();
        let auv = grig_tree_action(&uv, 6).unwrap();
        assert_eq!(au.then(&av), auv);
        assert!(grig_tree_action(&w("a"), 0).is_err());
        assert!(grig_tree_action(&w("a"), 21).is_err());
    }

    #[test]
    fn identity_words_act_trivially() {
        let ac8: alloc::string::String = core::iter::repeat("ac").take(8).collect();
        let word = w(&ac8);
        assert!(grig_is_identity(&word));
        assert!(grig_tree_action(&word, 8).unwrap().is_identity());
    }

    #[test]
    fn decision_procedure_matches_action() {
        // all canonical words of length <= 10, checked against the
        // depth-12 action via section recursion
        let mut words = vec![GrigWord::identity()];
        let mut frontier = vec![Vec::<u8>::new()];
        while let Some(cur) = frontier.pop() {
            if cur.len() >= 10 {
                continue;
            }
            for l in [A, B, C, D] {
                let mut next = cur.clone();
                next.push(l);
                let red = grig_reduce(&next);
                if red.len() == next.len() {
                    words.push(red.clone());
                    frontier.push(next);
                }
            }
        }
        for word in &words {
            assert_eq!(
                grig_is_identity(word),
                grig_is_identity_at_depth(word, 12),
                "mismatch for {word}"
            );
        }
        // spot-check the full permutation route on short words
        for word in words.iter().filter(|u| u.len() <= 6) {
            assert_eq!(
                grig_is_identity(word),
                grig_tree_action(word, 10).unwrap().is_identity(),
                "action mismatch for {word}"
            );
        }
    }

    #[test]
    fn nucleus_detection() {
        assert_eq!(grig_nucleus(&GrigWord::identity()), Some(255));
        assert_eq!(grig_nucleus(&w("b")), Some(B));
        // a longer word equal to a generator
        let ac8: alloc::string::String = core::iter::repeat("ac").take(8).collect();
        let long_b = w(&(ac8 + "b"));
        assert!(long_b.len() > 1);
        assert_eq!(grig_nucleus(&long_b), Some(B));
        assert_eq!(grig_nucleus(&w("ab")), None);
    }

    #[test]
    fn canonical_key_separates_elements() {
        let ac8: alloc::string::String = core::iter::repeat("ac").take(8).collect();
        assert_eq!(
            grig_canonical_key(&w(&ac8)),
            grig_canonical_key(&GrigWord::identity())
        );
        assert_ne!(grig_canonical_key(&w("ab")), grig_canonical_key(&w("ba")));
        assert_eq!(grig_canonical_key(&w("bc")), grig_canonical_key(&w("d")));
    }

    #[test]
    fn badcycle_search_is_empty() {
        assert!(grig_search_badcycles().is_empty());
        // control: the all-c assignment is not an identity
        assert!(!grig_is_identity(&badcycle_word(&[C; 7])));
        // control: a(ca)^7c = (ac)^8 is an identity, so the decision
        // procedure does find identities among 16-letter words
        let control = w("acacacacacacacac");
        assert!(grig_is_identity(&control));
    }
}
