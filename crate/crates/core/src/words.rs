//! Group presentations and words over a generator alphabet with formal
//! inverses: parsing, free reduction, abelianized exponent vectors, and
//! the Grigorchuk substitution.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single generator of a presentation. `involution` marks generators
/// with `s = s^-1`; such generators admit no distinct formal inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub index: u16,
    pub involution: bool,
}

/// One letter of a word: a generator reference with a sign. For
/// involution generators `inv` is always `false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: u16, inv: bool) -> Self {
        Letter { gen, inv }
    }
}

/// A freely reduced word. The empty word denotes the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GenWord(Vec<Letter>);

impl GenWord {
    pub fn empty() -> Self {
        GenWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &GenWord, p: &Presentation) -> GenWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        free_reduce(&letters, p)
    }

    /// The inverse word (letters reversed, signs flipped; involution
    /// letters keep their positive sign).
    pub fn inverse(&self, p: &Presentation) -> GenWord {
        let letters: Vec<Letter> = self
            .0
            .iter()
            .rev()
            .map(|l| {
                if p.generators[l.gen as usize].involution {
                    *l
                } else {
                    Letter::new(l.gen, !l.inv)
                }
            })
            .collect();
        // Reversing a reduced word keeps it reduced.
        GenWord(letters)
    }

    /// Render using the presentation's generator names (`x y^-1 ...`).
    pub fn display(&self, p: &Presentation) -> String {
        if self.is_empty() {
            return "1".to_owned();
        }
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&p.generators[l.gen as usize].name);
            if l.inv {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// Built-in infinite relator families, referenced by name in sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelatorFamily {
    /// The relators `sigma^k((ad)^4)` and `sigma^k((adacac)^4)` of the
    /// Grigorchuk group, where `sigma` maps `a -> aca, b -> d, c -> b,
    /// d -> c`. When the host presentation lacks a generator `d`, the
    /// letter `d` is eliminated via `d = bc` before emission.
    GrigorchukSigma,
}

impl RelatorFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelatorFamily::GrigorchukSigma => "grigorchuk-sigma",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "grigorchuk-sigma" => Some(RelatorFamily::GrigorchukSigma),
            _ => None,
        }
    }
}

/// A finite presentation: generators, relators, and an optional relator
/// family producing relator batches for k = 0, 1, 2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<GenWord>,
    pub relator_family: Option<RelatorFamily>,
    /// Whether the relator set (with family) is a complete presentation
    /// of the intended group. Height-function existence certificates
    /// are only definitive for complete relator sets.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    DuplicateGenerator(String),
    UndeclaredGenerator(String),
    EmptyRelator,
    LetterOutsideAlphabet(String),
    MissingFamilyGenerators,
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::DuplicateGenerator(n) => write!(f, "duplicate generator `{n}`"),
            WordError::UndeclaredGenerator(n) => write!(f, "undeclared generator `{n}`"),
            WordError::EmptyRelator => write!(f, "relator reduces to the empty word"),
            WordError::LetterOutsideAlphabet(n) => {
                write!(f, "letter `{n}` outside the substitution alphabet")
            }
            WordError::MissingFamilyGenerators => {
                write!(f, "relator family requires generators a, b, c (and optionally d)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WordError {}

impl Presentation {
    /// Build and validate a presentation from parts. Relators are given
    /// as raw letter sequences and freely reduced here.
    pub fn new(
        generators: Vec<(&str, bool)>,
        relators: Vec<Vec<(&str, bool)>>,
        relator_family: Option<RelatorFamily>,
        complete: bool,
    ) -> Result<Self, WordError> {
        let mut p = Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
            relator_family,
            complete,
        };
        for (name, involution) in generators {
            p.push_generator(name, involution)?;
        }
        for rel in relators {
            let mut letters = Vec::new();
            for (name, inv) in rel {
                let gen = p
                    .gen_index(name)
                    .ok_or_else(|| WordError::UndeclaredGenerator(name.to_owned()))?;
                let inv = inv && !p.generators[gen as usize].involution;
                letters.push(Letter::new(gen, inv));
            }
            let w = free_reduce(&letters, &p);
            if w.is_empty() {
                return Err(WordError::EmptyRelator);
            }
            p.relators.push(w);
        }
        Ok(p)
    }

    fn push_generator(&mut self, name: &str, involution: bool) -> Result<(), WordError> {
        if self.gen_index(name).is_some() {
            return Err(WordError::DuplicateGenerator(name.to_owned()));
        }
        let index = self.generators.len() as u16;
        self.generators.push(Generator {
            name: name.to_owned(),
            index,
            involution,
        });
        Ok(())
    }

    pub fn gen_index(&self, name: &str) -> Option<u16> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
    }

    pub fn is_involution(&self, gen: u16) -> bool {
        self.generators[gen as usize].involution
    }

    pub fn all_involutions(&self) -> bool {
        self.generators.iter().all(|g| g.involution)
    }

    /// Parse a word in source syntax (`x y^-1 (a b)^3 ...`) over this
    /// presentation's alphabet and freely reduce it.
    pub fn parse_word(&self, text: &str) -> Result<GenWord, ParseError> {
        let mut lex = Lexer::new(text);
        let mut letters = Vec::new();
        parse_terms(&mut lex, self, &mut letters, 1, None)?;
        Ok(free_reduce(&letters, self))
    }

    /// All relators, with family members materialized for k = 0..=cap.
    pub fn relators_with_family(&self, family_cap: usize) -> Vec<GenWord> {
        let mut out = self.relators.clone();
        if let Some(fam) = self.relator_family {
            match fam {
                RelatorFamily::GrigorchukSigma => {
                    if let Ok(members) = grig_family_members(self, family_cap) {
                        out.extend(members);
                    }
                }
            }
        }
        out
    }

    /// Serialize back to the line-oriented source grammar.
    pub fn to_source(&self) -> String {
        let mut out = String::from("gens");
        for g in &self.generators {
            out.push(' ');
            out.push_str(&g.name);
        }
        out.push('\n');
        let invs: Vec<&str> = self
            .generators
            .iter()
            .filter(|g| g.involution)
            .map(|g| g.name.as_str())
            .collect();
        if !invs.is_empty() {
            out.push_str("inv");
            for n in invs {
                out.push(' ');
                out.push_str(n);
            }
            out.push('\n');
        }
        for r in &self.relators {
            out.push_str("rel ");
            out.push_str(&r.display(self));
            out.push('\n');
        }
        if let Some(fam) = self.relator_family {
            out.push_str("family ");
            out.push_str(fam.name());
            out.push('\n');
        }
        out
    }
}

/// Freely reduce a raw letter sequence: cancel adjacent `s s^-1` pairs
/// and, for involution generators, adjacent `s s`. Signs of involution
/// letters are normalized to positive.
pub fn free_reduce(letters: &[Letter], p: &Presentation) -> GenWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &raw in letters {
        let invol = p.is_involution(raw.gen);
        let l = if invol { Letter::new(raw.gen, false) } else { raw };
        match stack.last() {
            Some(&top) if top.gen == l.gen && (invol || top.inv != l.inv) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    GenWord(stack)
}

/// Signed letter counts per generator: entry for `s` is
/// `#s - #s^-1`. A monoid homomorphism under concatenation.
pub fn exponent_vector(w: &GenWord, p: &Presentation) -> Vec<i64> {
    let mut v = alloc::vec![0i64; p.generators.len()];
    for l in w.letters() {
        v[l.gen as usize] += if l.inv { -1 } else { 1 };
    }
    v
}

/// The Grigorchuk substitution table on generator names:
/// `a -> aca, b -> d, c -> b, d -> c`.
fn sigma_image(name: &str) -> Option<&'static [&'static str]> {
    match name {
        "a" => Some(&["a", "c", "a"]),
        "b" => Some(&["d"]),
        "c" => Some(&["b"]),
        "d" => Some(&["c"]),
        _ => None,
    }
}

/// Apply the substitution `sigma: a -> aca, b -> d, c -> b, d -> c`
/// `k` times to a word over `{a,b,c,d}`, freely reducing the result.
/// The word's presentation must name its generators `a`, `b`, `c`, `d`.
pub fn grig_substitute(w: &GenWord, k: usize, p: &Presentation) -> Result<GenWord, WordError> {
    let mut current: Vec<Letter> = w.letters().to_vec();
    for _ in 0..k {
        let mut next: Vec<Letter> = Vec::with_capacity(current.len() * 3);
        for l in &current {
            let name = p.generators[l.gen as usize].name.as_str();
            let image = sigma_image(name)
                .ok_or_else(|| WordError::LetterOutsideAlphabet(name.to_owned()))?;
            if l.inv {
                // sigma(s^-1) = sigma(s)^-1; images here are over
                // involution letters only when s is one, so reverse
                // and flip signs of non-involution letters.
                for &img in image.iter().rev() {
                    let gen = p
                        .gen_index(img)
                        .ok_or_else(|| WordError::UndeclaredGenerator(img.to_owned()))?;
                    let inv = !p.is_involution(gen);
                    next.push(Letter::new(gen, inv));
                }
            } else {
                for &img in image {
                    let gen = p
                        .gen_index(img)
                        .ok_or_else(|| WordError::UndeclaredGenerator(img.to_owned()))?;
                    next.push(Letter::new(gen, false));
                }
            }
        }
        current = next;
    }
    Ok(free_reduce(&current, p))
}

/// Materialize the Grigorchuk relator family for k = 0..=cap over a
/// presentation with generators a, b, c and optionally d. When d is
/// absent it is eliminated via d = bc.
fn grig_family_members(p: &Presentation, cap: usize) -> Result<Vec<GenWord>, WordError> {
    // Work over a scratch 4-letter involution alphabet.
    let scratch = Presentation::new(
        alloc::vec![("a", true), ("b", true), ("c", true), ("d", true)],
        alloc::vec![],
        None,
        false,
    )
    .expect("scratch alphabet");
    let base_ad = scratch.parse_word("(a d)^4").expect("base relator");
    let base_adacac = scratch.parse_word("(a d a c a c)^4").expect("base relator");

    let has_d = p.gen_index("d").is_some();
    let (ga, gb, gc) = match (p.gen_index("a"), p.gen_index("b"), p.gen_index("c")) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(WordError::MissingFamilyGenerators),
    };

    let translate = |w: &GenWord| -> Result<GenWord, WordError> {
        let mut letters = Vec::new();
        for l in w.letters() {
            let name = scratch.generators[l.gen as usize].name.as_str();
            match name {
                "a" => letters.push(Letter::new(ga, false)),
                "b" => letters.push(Letter::new(gb, false)),
                "c" => letters.push(Letter::new(gc, false)),
                "d" => {
                    if has_d {
                        letters.push(Letter::new(p.gen_index("d").unwrap(), false));
                    } else {
                        letters.push(Letter::new(gb, false));
                        letters.push(Letter::new(gc, false));
                    }
                }
                _ => unreachable!(),
            }
        }
        Ok(free_reduce(&letters, p))
    };

    let mut out = Vec::with_capacity(2 * (cap + 1));
    for k in 0..=cap {
        for base in [&base_ad, &base_adacac] {
            let img = grig_substitute(base, k, &scratch)?;
            let rel = translate(&img)?;
            if !rel.is_empty() {
                out.push(rel);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Presentation source parser
// ---------------------------------------------------------------------

/// Parse error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    line_start: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    InvSuffix, // ^-1
    Pow(i64),  // ^n with n >= 0
    LParen,
    RParen,
    Newline,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            line_start: 0,
        }
    }

    fn col(&self) -> usize {
        self.pos - self.line_start + 1
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col(),
            message,
        }
    }

    fn bump_line(&mut self) {
        self.line += 1;
        self.line_start = self.pos;
    }

    fn next_tok(&mut self) -> Result<(Tok, usize, usize), ParseError> {
        loop {
            while self.pos < self.src.len() && matches!(self.src[self.pos], b' ' | b'\t' | b'\r') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos] == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            }
            break;
        }
        let line = self.line;
        let col = self.col();
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, line, col));
        }
        let c = self.src[self.pos];
        match c {
            b'\n' => {
                self.pos += 1;
                self.bump_line();
                Ok((Tok::Newline, line, col))
            }
            b'(' => {
                self.pos += 1;
                Ok((Tok::LParen, line, col))
            }
            b')' => {
                self.pos += 1;
                Ok((Tok::RParen, line, col))
            }
            b'^' => {
                self.pos += 1;
                let neg = self.pos < self.src.len() && self.src[self.pos] == b'-';
                if neg {
                    self.pos += 1;
                }
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected integer after `^`".to_owned()));
                }
                let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| self.error(format!("exponent `{digits}` out of range")))?;
                if neg {
                    if n != 1 {
                        return Err(
                            self.error("only `^-1` is supported as a negative power".to_owned())
                        );
                    }
                    Ok((Tok::InvSuffix, line, col))
                } else {
                    Ok((Tok::Pow(n), line, col))
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok((Tok::Ident(s.to_owned()), line, col))
            }
            other => Err(self.error(format!("unexpected character `{}`", other as char))),
        }
    }

    fn peek(&mut self) -> Result<Tok, ParseError> {
        let save = (self.pos, self.line, self.line_start);
        let (tok, _, _) = self.next_tok()?;
        (self.pos, self.line, self.line_start) = save;
        Ok(tok)
    }

    /// Read a raw whitespace-delimited word (family names may contain
    /// hyphens, unlike identifiers).
    fn next_raw_word(&mut self) -> Result<(String, usize, usize), ParseError> {
        while self.pos < self.src.len() && matches!(self.src[self.pos], b' ' | b'\t' | b'\r') {
            self.pos += 1;
        }
        let line = self.line;
        let col = self.col();
        let start = self.pos;
        while self.pos < self.src.len()
            && !matches!(self.src[self.pos], b' ' | b'\t' | b'\r' | b'\n' | b'#')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError {
                line,
                col,
                message: "expected a name".to_owned(),
            });
        }
        let s = core::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.error("invalid UTF-8".to_owned()))?;
        Ok((s.to_owned(), line, col))
    }
}

/// Parse a sequence of terms (until newline/EOF or an unmatched `)`)
/// into `out`, expanding powers. `repeat` multiplies the whole result.
fn parse_terms(
    lex: &mut Lexer<'_>,
    p: &Presentation,
    out: &mut Vec<Letter>,
    repeat: i64,
    stop_at_rparen: Option<()>,
) -> Result<(), ParseError> {
    let mut letters: Vec<Letter> = Vec::new();
    loop {
        let (tok, line, col) = lex.next_tok()?;
        match tok {
            Tok::Ident(name) => {
                let gen = p.gen_index(&name).ok_or(ParseError {
                    line,
                    col,
                    message: format!("undeclared generator `{name}`"),
                })?;
                let mut inv = false;
                if let Tok::InvSuffix = lex.peek()? {
                    lex.next_tok()?;
                    if p.is_involution(gen) {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!(
                                "involution generator `{name}` admits no `^-1` (it is its own inverse)"
                            ),
                        });
                    }
                    inv = true;
                } else if let Tok::Pow(n) = lex.peek()? {
                    lex.next_tok()?;
                    if n < 1 {
                        return Err(ParseError {
                            line,
                            col,
                            message: "power must be >= 1".to_owned(),
                        });
                    }
                    for _ in 0..n {
                        letters.push(Letter::new(gen, false));
                    }
                    continue;
                }
                letters.push(Letter::new(gen, inv));
            }
            Tok::LParen => {
                let mut group: Vec<Letter> = Vec::new();
                parse_terms(lex, p, &mut group, 1, Some(()))?;
                // A parenthesized group must be followed by `^n`.
                match lex.next_tok()? {
                    (Tok::Pow(n), l2, c2) => {
                        if n < 1 {
                            return Err(ParseError {
                                line: l2,
                                col: c2,
                                message: "power must be >= 1".to_owned(),
                            });
                        }
                        for _ in 0..n {
                            letters.extend_from_slice(&group);
                        }
                    }
                    (_, l2, c2) => {
                        return Err(ParseError {
                            line: l2,
                            col: c2,
                            message: "expected `^n` after `)`".to_owned(),
                        })
                    }
                }
            }
            Tok::RParen => {
                if stop_at_rparen.is_some() {
                    break;
                }
                return Err(ParseError {
                    line,
                    col,
                    message: "unmatched `)`".to_owned(),
                });
            }
            Tok::Newline | Tok::Eof => {
                if stop_at_rparen.is_some() {
                    return Err(ParseError {
                        line,
                        col,
                        message: "unclosed `(`".to_owned(),
                    });
                }
                break;
            }
            Tok::InvSuffix | Tok::Pow(_) => {
                return Err(ParseError {
                    line,
                    col,
                    message: "`^` must follow a generator or `)`".to_owned(),
                })
            }
        }
    }
    for _ in 0..repeat {
        out.extend_from_slice(&letters);
    }
    Ok(())
}

/// Parse a presentation source (see grammar in the module docs):
/// `gens`/`inv`/`rel`/`family` lines, `#` comments.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Presentation {
        generators: Vec::new(),
        relators: Vec::new(),
        relator_family: None,
        complete: true,
    };
    let mut lex = Lexer::new(text);
    loop {
        let (tok, line, col) = lex.next_tok()?;
        match tok {
            Tok::Eof => break,
            Tok::Newline => continue,
            Tok::Ident(kw) => match kw.as_str() {
                "gens" => loop {
                    match lex.next_tok()? {
                        (Tok::Ident(name), l2, c2) => {
                            p.push_generator(&name, false).map_err(|e| ParseError {
                                line: l2,
                                col: c2,
                                message: format!("{e}"),
                            })?;
                        }
                        (Tok::Newline | Tok::Eof, _, _) => break,
                        (_, l2, c2) => {
                            return Err(ParseError {
                                line: l2,
                                col: c2,
                                message: "expected generator name".to_owned(),
                            })
                        }
                    }
                },
                "inv" => loop {
                    match lex.next_tok()? {
                        (Tok::Ident(name), l2, c2) => {
                            let gen = p.gen_index(&name).ok_or(ParseError {
                                line: l2,
                                col: c2,
                                message: format!("undeclared generator `{name}`"),
                            })?;
                            p.generators[gen as usize].involution = true;
                        }
                        (Tok::Newline | Tok::Eof, _, _) => break,
                        (_, l2, c2) => {
                            return Err(ParseError {
                                line: l2,
                                col: c2,
                                message: "expected generator name".to_owned(),
                            })
                        }
                    }
                },
                "rel" => {
                    let mut letters = Vec::new();
                    parse_terms(&mut lex, &p, &mut letters, 1, None)?;
                    let w = free_reduce(&letters, &p);
                    if w.is_empty() {
                        return Err(ParseError {
                            line,
                            col,
                            message: "relator reduces to the empty word".to_owned(),
                        });
                    }
                    p.relators.push(w);
                }
                "family" => {
                    let (name, l2, c2) = lex.next_raw_word()?;
                    let fam = RelatorFamily::from_name(&name).ok_or(ParseError {
                        line: l2,
                        col: c2,
                        message: format!("unknown relator family `{name}`"),
                    })?;
                    p.relator_family = Some(fam);
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!(
                            "expected `gens`, `inv`, `rel`, or `family`, found `{other}`"
                        ),
                    })
                }
            },
            _ => {
                return Err(ParseError {
                    line,
                    col,
                    message: "expected a line keyword".to_owned(),
                })
            }
        }
    }
    Ok(p)
}
