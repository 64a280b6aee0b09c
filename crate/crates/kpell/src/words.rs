//! Words over {0, ..., k} in which every maximal run of the letter k has
//! even length, plus the binary strings with no two consecutive ones.
//!
//! The enumeration order fixed here (lexicographic on raw letters) is the
//! canonical vertex order used everywhere else in the crate.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use std::fmt;

use crate::error::{Error, Result};
use crate::seqs::k_fibonacci;
use crate::Budget;

pub type Letter = u8;

/// Largest supported alphabet top letter; words store letters in a `u8`.
pub const MAX_K: u8 = 200;

/// True iff every letter is <= k and every maximal run of k has even length.
pub fn is_valid_kpell(letters: &[Letter], k: Letter) -> bool {
    let mut i = 0;
    while i < letters.len() {
        if letters[i] > k {
            return false;
        }
        if letters[i] == k {
            let mut j = i;
            while j < letters.len() && letters[j] == k {
                j += 1;
            }
            if (j - i) % 2 != 0 {
                return false;
            }
            i = j;
        } else {
            i += 1;
        }
    }
    true
}

/// A validated word over {0, ..., k}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KPellWord {
    k: Letter,
    letters: Vec<Letter>,
}

impl KPellWord {
    pub fn new(letters: Vec<Letter>, k: Letter) -> Result<Self> {
        if !(2..=MAX_K).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "alphabet parameter k must be in 2..={MAX_K}, got {k}"
            )));
        }
        if !is_valid_kpell(&letters, k) {
            return Err(Error::InvalidWord(render_letters(&letters)));
        }
        Ok(KPellWord { k, letters })
    }

    pub fn k(&self) -> Letter {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of positions holding the letter `i`.
    pub fn count_letter(&self, i: Letter) -> usize {
        self.letters.iter().filter(|&&c| c == i).count()
    }

    /// Number of maximal runs of the letter `i`.
    pub fn runs_of(&self, i: Letter) -> usize {
        let mut runs = 0;
        let mut prev = None;
        for &c in &self.letters {
            if c == i && prev != Some(i) {
                runs += 1;
            }
            prev = Some(c);
        }
        runs
    }
}

impl fmt::Display for KPellWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_letters(&self.letters))
    }
}

/// Bare digits while every letter fits one digit, parenthesized decimal
/// otherwise: 0(10)(10)3.
pub fn render_letters(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "ε".to_string();
    }
    let mut s = String::new();
    for &c in letters {
        if c <= 9 {
            s.push((b'0' + c) as char);
        } else {
            s.push_str(&format!("({c})"));
        }
    }
    s
}

/// Flat row-major storage for a fixed-width list of words, in the order
/// they were generated.
#[derive(Debug, Clone)]
pub struct WordList {
    width: usize,
    data: Vec<Letter>,
}

impl WordList {
    fn with_capacity(width: usize, words: usize) -> Self {
        WordList {
            width,
            data: Vec::with_capacity(width * words),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        if self.width == 0 {
            // length-0 words: there is exactly one (the empty word)
            return 1;
        }
        self.data.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[Letter] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Letter]> {
        (0..self.len()).map(move |i| self.get(i))
    }
}

fn check_budget(what: &str, count: &BigInt, budget: u64) -> Result<u64> {
    if *count > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed: count.to_string(),
            budget,
        });
    }
    Ok(count.to_u64().expect("count <= budget fits in u64"))
}

/// Cumulative word counts: table[m] = number of valid length-m words = F(m+1).
pub(crate) fn kpell_counts(n: usize, k: Letter) -> Vec<u64> {
    let mut t = vec![0u64; n + 2];
    t[0] = 1;
    if n >= 1 {
        t[1] = k as u64;
    }
    for m in 2..=n {
        t[m] = (k as u64) * t[m - 1] + t[m - 2];
    }
    t.truncate(n + 1);
    t
}

/// All valid length-n words over {0, ..., k} in lexicographic order.
pub fn enumerate_kpell(n: usize, k: Letter, budget: &Budget) -> Result<WordList> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "alphabet parameter k must be in 2..={MAX_K}, got {k}"
        )));
    }
    let total = k_fibonacci(n as u64 + 1, k as u64);
    let count = check_budget(
        &format!("enumerating length-{n} words over 0..={k}"),
        &total,
        budget.vertices,
    )?;
    let mut list = WordList::with_capacity(n, count as usize);
    let mut prefix = vec![0u8; n];
    fill_kpell(&mut list, &mut prefix, 0, n, k);
    debug_assert_eq!(list.len() as u64, count);
    Ok(list)
}

fn fill_kpell(out: &mut WordList, buf: &mut [Letter], pos: usize, n: usize, k: Letter) {
    if pos == n {
        out.data.extend_from_slice(&buf[..n]);
        return;
    }
    for c in 0..k {
        buf[pos] = c;
        fill_kpell(out, buf, pos + 1, n, k);
    }
    if pos + 2 <= n {
        buf[pos] = k;
        buf[pos + 1] = k;
        fill_kpell(out, buf, pos + 2, n, k);
    }
}

/// Position of `letters` in the lexicographic enumeration, computed from the
/// count table rather than a search.
pub fn kpell_rank(letters: &[Letter], k: Letter, counts: &[u64]) -> u64 {
    let n = letters.len();
    let mut rank = 0u64;
    let mut i = 0;
    while i < n {
        let rem = n - i; // letters still to place, including this one
        let c = letters[i];
        if c < k {
            rank += c as u64 * counts[rem - 1];
            i += 1;
        } else {
            // all k prefix blocks precede the kk block
            rank += k as u64 * counts[rem - 1];
            i += 2;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// binary strings with no two consecutive ones
// ---------------------------------------------------------------------------

pub fn is_valid_fib(bits: &[Letter]) -> bool {
    bits.iter().all(|&b| b <= 1) && bits.windows(2).all(|w| !(w[0] == 1 && w[1] == 1))
}

/// counts[m] = number of valid length-m strings = F(m+2) (Fibonacci).
pub(crate) fn fib_counts(n: usize) -> Vec<u64> {
    let mut t = vec![0u64; n + 1];
    t[0] = 1;
    if n >= 1 {
        t[1] = 2;
    }
    for m in 2..=n {
        t[m] = t[m - 1] + t[m - 2];
    }
    t
}

/// All length-m binary strings with no two consecutive ones, lexicographic.
pub fn enumerate_fib(m: usize, budget: &Budget) -> Result<WordList> {
    let total = crate::seqs::fibonacci(m as u64 + 2);
    check_budget(
        &format!("enumerating length-{m} binary strings without 11"),
        &total,
        budget.vertices,
    )?;
    let mut list = WordList::with_capacity(m, 0);
    let mut buf = vec![0u8; m];
    fill_fib(&mut list, &mut buf, 0, m);
    Ok(list)
}

fn fill_fib(out: &mut WordList, buf: &mut [Letter], pos: usize, m: usize) {
    if pos == m {
        out.data.extend_from_slice(&buf[..m]);
        return;
    }
    buf[pos] = 0;
    fill_fib(out, buf, pos + 1, m);
    buf[pos] = 1;
    if pos + 1 < m {
        buf[pos + 1] = 0; // a one forces the next bit to zero
        fill_fib(out, buf, pos + 2, m);
    } else {
        fill_fib(out, buf, pos + 1, m);
    }
}

pub fn fib_rank(bits: &[Letter], counts: &[u64]) -> u64 {
    let m = bits.len();
    let mut rank = 0u64;
    let mut i = 0;
    while i < m {
        if bits[i] == 1 {
            // strings with 0 here come first
            rank += counts[m - i - 1];
            i += 2; // next position is forced to 0
        } else {
            i += 1;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// center families
// ---------------------------------------------------------------------------

/// k even: letters in {k/2 - 1, k/2}, no two consecutive k/2 - 1.
pub fn in_theta(w: &KPellWord) -> Result<bool> {
    let k = w.k();
    if k % 2 != 0 {
        return Err(Error::ParityMismatch {
            family: "Theta",
            requirement: "even k",
            n: w.len(),
            k,
        });
    }
    let low = k / 2 - 1;
    let high = k / 2;
    let ls = w.letters();
    Ok(ls.iter().all(|&c| c == low || c == high)
        && ls.windows(2).all(|p| !(p[0] == low && p[1] == low)))
}

/// k odd, n even: two-letter tokens over {aa, ab, ba} with a = (k-1)/2,
/// b = (k+1)/2, where no ba token occurs before an ab token.
pub fn in_phi(w: &KPellWord) -> Result<bool> {
    let k = w.k();
    if k % 2 == 0 || w.len() % 2 != 0 {
        return Err(Error::ParityMismatch {
            family: "Phi",
            requirement: "odd k and even n",
            n: w.len(),
            k,
        });
    }
    let a = (k - 1) / 2;
    let b = (k + 1) / 2;
    let mut seen_ba = false;
    for t in w.letters().chunks(2) {
        let tok = (t[0], t[1]);
        if tok == (b, a) {
            seen_ba = true;
        } else if tok == (a, b) {
            if seen_ba {
                return Ok(false);
            }
        } else if tok != (a, a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// k odd, n odd: words over {a, b} starting and ending with a, with no bb
/// and every maximal run of a of odd length.
pub fn in_psi(w: &KPellWord) -> Result<bool> {
    let k = w.k();
    if k % 2 == 0 || w.len() % 2 != 1 {
        return Err(Error::ParityMismatch {
            family: "Psi",
            requirement: "odd k and odd n",
            n: w.len(),
            k,
        });
    }
    let a = (k - 1) / 2;
    let b = (k + 1) / 2;
    let ls = w.letters();
    if ls.iter().any(|&c| c != a && c != b) || ls[0] != a || ls[ls.len() - 1] != a {
        return Ok(false);
    }
    if ls.windows(2).any(|p| p[0] == b && p[1] == b) {
        return Ok(false);
    }
    let mut i = 0;
    while i < ls.len() {
        if ls[i] == a {
            let mut j = i;
            while j < ls.len() && ls[j] == a {
                j += 1;
            }
            if (j - i) % 2 == 0 {
                return Ok(false);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(true)
}

/// The predicted center of the n-th graph for n >= 2, sorted lexicographically.
pub fn enumerate_center_family(n: usize, k: Letter) -> Result<Vec<KPellWord>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "center family enumeration needs n >= 2, got {n}"
        )));
    }
    let mut words: Vec<Vec<Letter>> = Vec::new();
    if k % 2 == 0 {
        let low = k / 2 - 1;
        gen_theta(&mut words, &mut Vec::new(), n, low, k / 2);
    } else if n % 2 == 0 {
        let a = (k - 1) / 2;
        let b = (k + 1) / 2;
        gen_phi(&mut words, &mut Vec::new(), n / 2, a, b, false);
    } else {
        let a = (k - 1) / 2;
        let b = (k + 1) / 2;
        gen_psi(&mut words, &mut Vec::new(), n, a, b);
    }
    words.sort();
    words
        .into_iter()
        .map(|ls| KPellWord::new(ls, k))
        .collect()
}

fn gen_theta(out: &mut Vec<Vec<Letter>>, buf: &mut Vec<Letter>, n: usize, low: Letter, high: Letter) {
    if buf.len() == n {
        out.push(buf.clone());
        return;
    }
    if buf.last() != Some(&low) {
        buf.push(low);
        gen_theta(out, buf, n, low, high);
        buf.pop();
    }
    buf.push(high);
    gen_theta(out, buf, n, low, high);
    buf.pop();
}

fn gen_phi(
    out: &mut Vec<Vec<Letter>>,
    toks: &mut Vec<(Letter, Letter)>,
    ntok: usize,
    a: Letter,
    b: Letter,
    seen_ba: bool,
) {
    if toks.len() == ntok {
        out.push(toks.iter().flat_map(|&(x, y)| [x, y]).collect());
        return;
    }
    for tok in [(a, a), (a, b), (b, a)] {
        if tok == (a, b) && seen_ba {
            continue;
        }
        toks.push(tok);
        gen_phi(out, toks, ntok, a, b, seen_ba || tok == (b, a));
        toks.pop();
    }
}

fn gen_psi(out: &mut Vec<Vec<Letter>>, buf: &mut Vec<Letter>, n: usize, a: Letter, b: Letter) {
    // append "a-run of odd length" then optionally b, recursively
    let used = buf.len();
    let mut run = 1;
    while used + run <= n {
        for _ in 0..run {
            buf.push(a);
        }
        if used + run == n {
            out.push(buf.clone());
        } else if used + run + 1 < n {
            buf.push(b);
            gen_psi(out, buf, n, a, b);
            buf.pop();
        }
        for _ in 0..run {
            buf.pop();
        }
        run += 2;
    }
}

/// Closed-form size of the predicted center for n >= 2.
pub fn center_family_size(n: usize, k: Letter) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "center family size needs n >= 2, got {n}"
        )));
    }
    if k % 2 == 0 {
        Ok(crate::seqs::fibonacci(n as u64 + 2))
    } else if n % 2 == 0 {
        // (n + 4) * 2^(n/2 - 2), an integer for every even n >= 2
        let num = BigInt::from(n as u64 + 4) * (BigInt::one() << (n / 2));
        Ok(num >> 2)
    } else {
        Ok(BigInt::one() << ((n - 1) / 2))
    }
}
