//! Adjacent-transposition straightening shared by the Yangian and by the
//! enveloping algebra of the current Lie algebra.
//!
//! Words are sequences of packed letters ([`Gen`]); a word is in normal form
//! when it is non-decreasing. A [`SwapRule`] supplies, for an out-of-order pair
//! `x > g`, the correction in `x g = g x + correction`. Every correction term
//! must be strictly smaller in the rule's termination metric, so the
//! recursion in [`mul_letter`] terminates.
//!
//! Right multiplication of a normal word by one letter is memoized in a
//! thread-local table. The table is a pure cache: clearing or disabling it
//! never changes a result.

use std::cell::{Cell, RefCell};
use std::rc::Rc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::field;

/// A packed letter: superscript (or `t`-power) in the high half, then row,
/// then column, so that integer order is lexicographic `(r, i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(u32);

impl Gen {
    /// Packs `(i, j, r)`. Rows and columns are 1-based and below 256.
    #[inline]
    pub fn new(i: usize, j: usize, r: u32) -> Gen {
        debug_assert!(i < 256 && j < 256 && r < 65536);
        Gen((r << 16) | ((i as u32) << 8) | j as u32)
    }

    #[inline]
    pub fn i(self) -> usize {
        ((self.0 >> 8) & 0xff) as usize
    }

    #[inline]
    pub fn j(self) -> usize {
        (self.0 & 0xff) as usize
    }

    #[inline]
    pub fn r(self) -> u32 {
        self.0 >> 16
    }
}

pub type Word = SmallVec<[Gen; 8]>;

/// Sorted list of `(word, nonzero coefficient)`.
pub type Terms = Vec<(Word, u32)>;

pub trait SwapRule {
    /// Distinguishes rules inside the shared memo table.
    const TAG: u8;

    /// For `x > g`, appends `(word, coeff)` pairs with
    /// `x g - g x = sum coeff * word`.
    fn correction(x: Gen, g: Gen, p: u32, out: &mut Vec<(Word, u32)>);
}

/// The RTT relation of the Yangian:
/// `[t_ij^(r), t_kl^(s)] = sum_{t<min(r,s)} t_kj^(t) t_il^(r+s-1-t) - t_kj^(r+s-1-t) t_il^(t)`
/// with `t^(0) = delta`.
pub struct Rtt;

impl SwapRule for Rtt {
    const TAG: u8 = 0;

    fn correction(x: Gen, g: Gen, p: u32, out: &mut Vec<(Word, u32)>) {
        let (i, j, r) = (x.i(), x.j(), x.r());
        let (k, l, s) = (g.i(), g.j(), g.r());
        let top = r + s - 1;
        if k == j {
            out.push((SmallVec::from_slice(&[Gen::new(i, l, top)]), 1));
        }
        if i == l {
            out.push((SmallVec::from_slice(&[Gen::new(k, j, top)]), p - 1));
        }
        for t in 1..r.min(s) {
            let a = Gen::new(k, j, t);
            let b = Gen::new(i, l, top - t);
            out.push((SmallVec::from_slice(&[a, b]), 1));
            let a = Gen::new(k, j, top - t);
            let b = Gen::new(i, l, t);
            out.push((SmallVec::from_slice(&[a, b]), p - 1));
        }
    }
}

/// The bracket of `gl_n[t]`:
/// `[e_ij t^r, e_kl t^s] = delta_kj e_il t^(r+s) - delta_li e_kj t^(r+s)`.
pub struct CurrentBracket;

impl SwapRule for CurrentBracket {
    const TAG: u8 = 1;

    fn correction(x: Gen, g: Gen, p: u32, out: &mut Vec<(Word, u32)>) {
        let (i, j, r) = (x.i(), x.j(), x.r());
        let (k, l, s) = (g.i(), g.j(), g.r());
        if k == j {
            out.push((SmallVec::from_slice(&[Gen::new(i, l, r + s)]), 1));
        }
        if l == i {
            out.push((SmallVec::from_slice(&[Gen::new(k, j, r + s)]), p - 1));
        }
    }
}

type MemoKey = (u8, u32, Word, Gen);
type Shared = Rc<[(Word, u32)]>;

const MEMO_CAP: usize = 1 << 21;

thread_local! {
    static MEMO: RefCell<FxHashMap<MemoKey, Shared>> = RefCell::new(FxHashMap::default());
    static MEMO_ENABLED: Cell<bool> = const { Cell::new(true) };
}

/// Enables or disables the straightening cache on the current thread.
pub fn set_memo_enabled(on: bool) {
    MEMO_ENABLED.with(|m| m.set(on));
    if !on {
        clear_memo();
    }
}

pub fn clear_memo() {
    MEMO.with(|m| m.borrow_mut().clear());
}

pub fn memo_len() -> usize {
    MEMO.with(|m| m.borrow().len())
}

/// Accumulator for linear combinations of words.
#[derive(Default)]
pub struct Accum {
    map: FxHashMap<Word, u32>,
}

impl Accum {
    pub fn new() -> Accum {
        Accum::default()
    }

    #[inline]
    pub fn add(&mut self, w: Word, c: u32, p: u32) {
        if c == 0 {
            return;
        }
        let e = self.map.entry(w).or_insert(0);
        *e = field::add(*e, c, p);
    }

    pub fn add_scaled(&mut self, terms: &[(Word, u32)], c: u32, p: u32) {
        for (w, d) in terms {
            self.add(w.clone(), field::mul(*d, c, p), p);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn finish(self) -> Terms {
        let mut v: Terms = self.map.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

fn appended(w: &[Gen], g: Gen) -> Word {
    let mut out = Word::with_capacity(w.len() + 1);
    out.extend_from_slice(w);
    out.push(g);
    out
}

/// Normal form of `w * g` for a normal word `w`.
pub fn mul_letter<R: SwapRule>(w: &[Gen], g: Gen, p: u32) -> Shared {
    if w.last().is_none_or(|&x| x <= g) {
        return Rc::from(vec![(appended(w, g), 1u32)]);
    }
    let use_memo = MEMO_ENABLED.with(|m| m.get());
    let key: MemoKey = (R::TAG, p, SmallVec::from_slice(w), g);
    if use_memo {
        if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
            return hit;
        }
    }
    let result: Shared = Rc::from(straighten_step::<R>(w, g, p));
    if use_memo {
        MEMO.with(|m| {
            let mut m = m.borrow_mut();
            if m.len() >= MEMO_CAP {
                m.clear();
            }
            m.insert(key, result.clone());
        });
    }
    result
}

/// `w' x g = (w' g) x + w' [x, g]` for `w = w' x` with `x > g`.
fn straighten_step<R: SwapRule>(w: &[Gen], g: Gen, p: u32) -> Terms {
    let (x, head) = w.split_last().expect("nonempty word");
    let x = *x;
    let mut acc = Accum::new();
    for (m, c) in mul_letter::<R>(head, g, p).iter() {
        if m.last().is_none_or(|&y| y <= x) {
            acc.add(appended(m, x), *c, p);
        } else {
            acc.add_scaled(&mul_letter::<R>(m, x, p), *c, p);
        }
    }
    let mut corr = Vec::new();
    R::correction(x, g, p, &mut corr);
    for (hw, c) in corr {
        let mut cur: Terms = vec![(SmallVec::from_slice(head), c)];
        for &h in hw.iter() {
            cur = mul_terms_letter::<R>(&cur, h, p);
        }
        for (m, d) in cur {
            acc.add(m, d, p);
        }
    }
    acc.finish()
}

/// Multiplies every term of a combination of normal words by `g` on the right.
pub fn mul_terms_letter<R: SwapRule>(terms: &[(Word, u32)], g: Gen, p: u32) -> Terms {
    if terms.len() == 1 {
        let (w, c) = &terms[0];
        let prod = mul_letter::<R>(w, g, p);
        return prod
            .iter()
            .map(|(m, d)| (m.clone(), field::mul(*d, *c, p)))
            .filter(|(_, d)| *d != 0)
            .collect();
    }
    let mut acc = Accum::new();
    for (w, c) in terms {
        acc.add_scaled(&mul_letter::<R>(w, g, p), *c, p);
    }
    acc.finish()
}

/// Adds `c * (a * b)` to `acc`, where `a` is a normal word and `b` an arbitrary word.
pub fn mul_words_into<R: SwapRule>(a: &[Gen], b: &[Gen], c: u32, p: u32, acc: &mut Accum) {
    if c == 0 {
        return;
    }
    if is_sorted_join(a, b) {
        let mut w = Word::with_capacity(a.len() + b.len());
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        acc.add(w, c, p);
        return;
    }
    let mut cur: Terms = vec![(SmallVec::from_slice(a), c)];
    for &g in b {
        cur = mul_terms_letter::<R>(&cur, g, p);
        if cur.is_empty() {
            return;
        }
    }
    for (w, d) in cur {
        acc.add(w, d, p);
    }
}

fn is_sorted_join(a: &[Gen], b: &[Gen]) -> bool {
    let joint_ok = match (a.last(), b.first()) {
        (Some(x), Some(y)) => x <= y,
        _ => true,
    };
    joint_ok && b.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_orders_superscript_first() {
        let a = Gen::new(2, 2, 1);
        let b = Gen::new(1, 1, 2);
        assert!(a < b);
        assert_eq!((b.i(), b.j(), b.r()), (1, 1, 2));
        assert!(Gen::new(1, 2, 1) < Gen::new(2, 1, 1));
    }

    #[test]
    fn rtt_single_swap() {
        // t21 t12 = t12 t21 + t22 - t11 at r = s = 1
        let p = 7;
        let w = [Gen::new(2, 1, 1)];
        let out = mul_letter::<Rtt>(&w, Gen::new(1, 2, 1), p);
        let mut got: Vec<_> = out.iter().cloned().collect();
        got.sort();
        let mut want = vec![
            (SmallVec::from_slice(&[Gen::new(1, 2, 1), Gen::new(2, 1, 1)]), 1),
            (SmallVec::from_slice(&[Gen::new(1, 1, 1)]), p - 1),
            (SmallVec::from_slice(&[Gen::new(2, 2, 1)]), 1),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn memo_is_transparent() {
        let p = 5;
        let w = [Gen::new(1, 2, 1), Gen::new(2, 1, 2), Gen::new(2, 2, 3)];
        let g = Gen::new(1, 1, 1);
        let with = mul_letter::<Rtt>(&w, g, p).to_vec();
        set_memo_enabled(false);
        let without = mul_letter::<Rtt>(&w, g, p).to_vec();
        set_memo_enabled(true);
        assert_eq!(with, without);
    }
}
