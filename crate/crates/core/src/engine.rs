//! Oracles for the multiplication engine: randomized associativity, PBW
//! dimension counts, and compatibility of the loop filtration with the
//! current-algebra bracket.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::current::{gr_identify, CurrentElement};
use crate::error::Result;
use crate::field;
use crate::pbw::{AlgebraContext, Element, GeneratorIndex};
use crate::report::{params, CheckReport, Params, Witness};

/// A random word of total weight `w` (sum of superscripts) in `t_ij^(r)`.
pub fn random_word<R: Rng>(rng: &mut R, n: usize, w: u32) -> Vec<GeneratorIndex> {
    let mut left = w;
    let mut word = Vec::new();
    while left > 0 {
        let r = rng.gen_range(1..=left);
        word.push(GeneratorIndex::new(rng.gen_range(1..=n), rng.gen_range(1..=n), r));
        left -= r;
    }
    word
}

/// `(xy)z = x(yz)` for `cases` random triples of words with combined weight
/// at most `max_weight`, over `n in {2, 3}` and `p in {3, 5}`.
pub fn associativity_fuzz(cases: usize, max_weight: u32, seed: u64) -> CheckReport {
    let mut prm = params(&[("cases", cases as i64), ("max_weight", max_weight as i64)]);
    prm.insert("seed".into(), seed.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(2..=3);
        let p = if rng.gen_bool(0.5) { 3 } else { 5 };
        let ctx = AlgebraContext::new(n, p).expect("valid context");
        let total = rng.gen_range(3..=max_weight.max(3));
        let a = rng.gen_range(1..=total - 2);
        let b = rng.gen_range(1..=total - a - 1);
        let c = rng.gen_range(1..=total - a - b);
        let mut elem = |w: u32| -> Result<Element> {
            let word = random_word(&mut rng, n, w);
            let coeff = rng.gen_range(1..p) as i64;
            Element::normalize(ctx, &word, coeff)
        };
        let outcome = (|| -> Result<Element> {
            let (x, y, z) = (elem(a)?, elem(b)?, elem(c)?);
            Ok(&(&(&x * &y) * &z) - &(&x * &(&y * &z)))
        })();
        let report = CheckReport::from_outcome("associativity", prm.clone(), outcome);
        if !report.passed() {
            return report.with_param("case", case);
        }
    }
    CheckReport::pass("associativity", prm)
}

/// Number of commutative monomials of weight exactly `w` in `n^2` variables
/// per superscript `r >= 1`: the `q^w` coefficient of `prod_r (1 - q^r)^{-n^2}`.
pub fn commutative_monomial_count(n: usize, w: usize) -> u64 {
    let vars = (n * n) as u64;
    let mut counts = vec![0u64; w + 1];
    counts[0] = 1;
    for r in 1..=w {
        // Multiply by (1 - q^r)^{-vars}, one variable at a time.
        for _ in 0..vars {
            for k in r..=w {
                counts[k] += counts[k - r];
            }
        }
    }
    counts[w]
}

/// Rank over `F_p` of a set of elements, by elimination on their term lists.
fn rank(elements: &[Element]) -> usize {
    use std::collections::BTreeMap;
    let Some(first) = elements.first() else { return 0 };
    let p = first.p();
    // Pivot rows keyed by their leading monomial, each normalized to lead coefficient 1.
    let mut pivots: BTreeMap<Vec<GeneratorIndex>, BTreeMap<Vec<GeneratorIndex>, u32>> = BTreeMap::new();
    for x in elements {
        let mut row: BTreeMap<Vec<GeneratorIndex>, u32> = x.terms().collect();
        while let Some((lead, &c)) = row.iter().next_back() {
            let lead = lead.clone();
            match pivots.get(&lead) {
                Some(piv) => {
                    for (w, &d) in piv {
                        let e = row.entry(w.clone()).or_insert(0);
                        *e = field::sub(*e, field::mul(c, d, p), p);
                        if *e == 0 {
                            row.remove(w);
                        }
                    }
                }
                None => {
                    let inv = field::inv(c, p);
                    let row = row.into_iter().map(|(w, d)| (w, field::mul(d, inv, p))).collect();
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// All words (any letter order) of total weight `w` in the generators of `Y_n`.
fn all_words(n: usize, w: u32) -> Vec<Vec<GeneratorIndex>> {
    if w == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for r in 1..=w {
        for tail in all_words(n, w - r) {
            for i in 1..=n {
                for j in 1..=n {
                    let mut word = vec![GeneratorIndex::new(i, j, r)];
                    word.extend_from_slice(&tail);
                    out.push(word);
                }
            }
        }
    }
    out
}

/// The span of all words of weight `<= w` has dimension equal to the number
/// of commutative monomials of weight `<= w`.
pub fn pbw_dimension_check(ctx: AlgebraContext, w: u32) -> CheckReport {
    let prm: Params = params(&[("n", ctx.n() as i64), ("p", ctx.p() as i64), ("weight", w as i64)]);
    let outcome = (|| -> Result<(usize, u64)> {
        let mut elems = Vec::new();
        for v in 0..=w {
            for word in all_words(ctx.n(), v) {
                elems.push(Element::normalize(ctx, &word, 1)?);
            }
        }
        let expected = (0..=w as usize).map(|v| commutative_monomial_count(ctx.n(), v)).sum();
        Ok((rank(&elems), expected))
    })();
    match outcome {
        Ok((got, want)) if got as u64 == want => CheckReport::pass("pbw-dimension", prm).with_note(format!("dimension {got}")),
        Ok((got, want)) => CheckReport::fail("pbw-dimension", prm, None, format!("span has dimension {got}, expected {want}")),
        Err(e) => CheckReport::from_error("pbw-dimension", prm, e),
    }
}

/// For generator pairs with superscripts `<= budget`, the degree `r + s` part
/// of `[t_ij^(r+1), t_kl^(s+1)]` is `[e_ij t^r, e_kl t^s]` and the degree
/// `r + s` part of the product is the product of leading terms.
pub fn chi_checks(ctx: AlgebraContext, budget: u32) -> Vec<CheckReport> {
    let n = ctx.n();
    let mut out = Vec::new();
    let gens: Vec<GeneratorIndex> = (1..=budget)
        .flat_map(|r| (1..=n).flat_map(move |i| (1..=n).map(move |j| GeneratorIndex::new(i, j, r))))
        .collect();
    for x in &gens {
        for y in &gens {
            let d = (x.r + y.r - 2) as usize;
            let prm = params(&[
                ("n", n as i64),
                ("p", ctx.p() as i64),
                ("i", x.i as i64),
                ("j", x.j as i64),
                ("r", x.r as i64),
                ("k", y.i as i64),
                ("l", y.j as i64),
                ("s", y.r as i64),
            ]);
            let outcome = (|| -> Result<(CurrentElement, CurrentElement)> {
                let (a, b) = (Element::generator(ctx, x.i, x.j, x.r)?, Element::generator(ctx, y.i, y.j, y.r)?);
                let (ga, gb) = (
                    CurrentElement::basis(ctx, x.i, x.j, x.r - 1)?,
                    CurrentElement::basis(ctx, y.i, y.j, y.r - 1)?,
                );
                let bracket = gr_identify(&a.commutator(&b)?, d)?.try_sub(&ga.commutator(&gb)?)?;
                let product = gr_identify(&(&a * &b), d)?.try_sub(&ga.try_mul(&gb)?)?;
                Ok((bracket, product))
            })();
            out.push(match outcome {
                Ok((bracket, product)) if bracket.is_zero() && product.is_zero() => CheckReport::pass("chi", prm),
                Ok((bracket, product)) => {
                    let w = if bracket.is_zero() { product } else { bracket };
                    CheckReport::fail("chi", prm, Some(Witness::from_current(&w)), "leading terms disagree")
                }
                Err(e) => CheckReport::fail("chi", prm, None, e.to_string()),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        // One variable per superscript: partitions.
        let parts: Vec<u64> = (0..=6).map(|w| commutative_monomial_count(1, w)).collect();
        assert_eq!(parts, [1, 1, 2, 3, 5, 7, 11]);
        // Four variables: 1, 4, 4 + 10 = 14.
        assert_eq!(commutative_monomial_count(2, 2), 14);
    }

    #[test]
    fn small_dimensions() {
        for w in 0..=3 {
            let r = pbw_dimension_check(AlgebraContext::new(2, 3).unwrap(), w);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn fuzz_and_chi() {
        assert!(associativity_fuzz(50, 6, 11).passed());
        assert!(chi_checks(AlgebraContext::new(2, 3).unwrap(), 2).iter().all(|r| r.passed()));
    }

    #[test]
    fn rank_sees_dependencies() {
        let c = AlgebraContext::new(2, 3).unwrap();
        let x = Element::generator(c, 1, 2, 1).unwrap();
        let y = Element::generator(c, 2, 1, 1).unwrap();
        assert_eq!(rank(&[x.clone(), y.clone(), &x + &y]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
