//! The classical charge statistic on words of partition weight, semistandard
//! tableaux, and the charge form of the Kostka-Foulkes polynomials.
//!
//! Tableaux here weakly increase along rows and strictly increase up columns
//! (French convention, rows stored bottom to top). The reading word
//! concatenates rows top row first, left to right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::tpoly::TPoly;

/// Multiplicity vector of a word over letters 1..=max.
fn weight_of(word: &[u32]) -> Result<Vec<u32>> {
    let max = word.iter().copied().max().unwrap_or(0);
    let mut mult = vec![0u32; max as usize];
    for &x in word {
        if x == 0 {
            return Err(Error::InputError("word letters must be positive".into()));
        }
        mult[x as usize - 1] += 1;
    }
    Ok(mult)
}

fn is_partition_weight(mult: &[u32]) -> bool {
    mult.windows(2).all(|w| w[0] >= w[1]) && mult.iter().all(|&m| m > 0)
}

/// Charge of a permutation word: counters start at zero for letter 1 and
/// increase each time a letter sits to the right of its predecessor.
pub fn charge_permutation(word: &[u32]) -> Result<u64> {
    let n = word.len() as u32;
    let mut pos = vec![usize::MAX; n as usize];
    for (i, &x) in word.iter().enumerate() {
        if x == 0 || x > n || pos[x as usize - 1] != usize::MAX {
            return Err(Error::InputError(format!(
                "word {:?} is not a permutation of 1..{}",
                word, n
            )));
        }
        pos[x as usize - 1] = i;
    }
    let mut counter = 0u64;
    let mut total = 0u64;
    for i in 1..n as usize {
        if pos[i] > pos[i - 1] {
            counter += 1;
        }
        total += counter;
    }
    Ok(total)
}

/// Splits a word of partition weight into its charge subwords: scan from the
/// right, cyclically, marking 1, 2, ... up to the largest remaining letter;
/// remove and repeat. Each subword is a permutation.
pub fn charge_subwords(word: &[u32]) -> Result<Vec<Vec<u32>>> {
    let mult = weight_of(word)?;
    if !is_partition_weight(&mult) {
        return Err(Error::InputError(format!(
            "word weight {:?} is not a partition",
            mult
        )));
    }
    let len = word.len();
    let mut taken = vec![false; len];
    let mut remaining = len;
    let mut max_letter = mult.len() as u32;
    let conjugate_lengths: Vec<u32> = {
        // expected subword lengths, for the structural check below
        let q = Partition::new(mult.clone()).expect("partition weight");
        q.conjugate().parts().to_vec()
    };
    let mut subwords = Vec::new();
    while remaining > 0 {
        let mut marks: Vec<usize> = Vec::with_capacity(max_letter as usize);
        // virtual cursor just past the end; scan leftward with wraparound
        let mut cursor = len;
        for letter in 1..=max_letter {
            let mut found = None;
            for step in 1..=len {
                let idx = (cursor + len - step) % len;
                if !taken[idx] && word[idx] == letter {
                    found = Some(idx);
                    break;
                }
            }
            let idx = found.expect("partition weight guarantees every letter");
            taken[idx] = true;
            marks.push(idx);
            cursor = idx;
        }
        remaining -= marks.len();
        marks.sort_unstable();
        let sub: Vec<u32> = marks.iter().map(|&i| word[i]).collect();
        debug_assert_eq!(
            sub.len() as u32,
            conjugate_lengths[subwords.len()],
            "subword length must be a conjugate part"
        );
        subwords.push(sub);
        // the next pass marks up to the largest letter still present
        max_letter = word
            .iter()
            .zip(&taken)
            .filter(|&(_, &t)| !t)
            .map(|(&x, _)| x)
            .max()
            .unwrap_or(0);
    }
    Ok(subwords)
}

/// Charge of a word of partition weight: the sum of the charges of its
/// charge subwords.
pub fn charge_word(word: &[u32]) -> Result<u64> {
    let mut total = 0u64;
    for sub in charge_subwords(word)? {
        total += charge_permutation(&sub)?;
    }
    Ok(total)
}

/// A semistandard tableau: rows stored bottom to top, weakly increasing left
/// to right, strictly increasing up each column. Serializes as a bare array
/// of rows, bottom row first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ssyt {
    rows: Vec<Vec<u32>>,
}

impl Serialize for Ssyt {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ssyt {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<u32>>::deserialize(deserializer)?;
        Ssyt::new(rows).map_err(D::Error::custom)
    }
}

impl Ssyt {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Ssyt { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let shape = self.shape();
        let _ = Partition::new(shape.parts().to_vec())?;
        for (i, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InputError(format!(
                    "row {} is not weakly increasing",
                    i + 1
                )));
            }
            if i > 0 {
                let below = &self.rows[i - 1];
                if row
                    .iter()
                    .enumerate()
                    .any(|(j, &x)| j < below.len() && x <= below[j])
                {
                    return Err(Error::InputError(format!(
                        "column through row {} is not strictly increasing",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rows bottom to top.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("tableau rows weakly decrease upward")
    }

    /// Letter multiplicities.
    pub fn weight(&self) -> Vec<u32> {
        let mut mult = Vec::new();
        for row in &self.rows {
            for &x in row {
                if x as usize > mult.len() {
                    mult.resize(x as usize, 0);
                }
                mult[x as usize - 1] += 1;
            }
        }
        mult
    }
}

/// Reading word of a tableau: top row first, each row left to right.
pub fn ssyt_reading_word(t: &Ssyt) -> Vec<u32> {
    t.rows().iter().rev().flatten().copied().collect()
}

/// All semistandard tableaux of the given shape and weight, in a fixed
/// deterministic order (cells filled bottom row first, smallest letter
/// first).
pub fn ssyt_enumerate(shape: &Partition, weight: &[u32]) -> Result<Vec<Ssyt>> {
    let total: u64 = weight.iter().map(|&m| m as u64).sum();
    if shape.size() != total {
        return Err(Error::SizeMismatch(
            shape.to_string(),
            format!("{:?}", weight),
        ));
    }
    let nrows = shape.len();
    let nletters = weight.len() as u32;
    let mut rows: Vec<Vec<u32>> = (0..nrows)
        .map(|i| Vec::with_capacity(shape.part(i) as usize))
        .collect();
    let mut remaining: Vec<u32> = weight.to_vec();
    let mut out = Vec::new();

    fn fill(
        shape: &Partition,
        rows: &mut Vec<Vec<u32>>,
        remaining: &mut Vec<u32>,
        nletters: u32,
        row: usize,
        col: usize,
        out: &mut Vec<Ssyt>,
    ) {
        if row == rows.len() {
            out.push(Ssyt { rows: rows.clone() });
            return;
        }
        if col == shape.part(row) as usize {
            fill(shape, rows, remaining, nletters, row + 1, 0, out);
            return;
        }
        let lo = if col > 0 { rows[row][col - 1] } else { 1 };
        let below = if row > 0 { rows[row - 1][col] } else { 0 };
        let lo = lo.max(below + 1);
        for letter in lo..=nletters {
            if remaining[letter as usize - 1] == 0 {
                continue;
            }
            remaining[letter as usize - 1] -= 1;
            rows[row].push(letter);
            fill(shape, rows, remaining, nletters, row, col + 1, out);
            rows[row].pop();
            remaining[letter as usize - 1] += 1;
        }
    }

    fill(shape, &mut rows, &mut remaining, nletters, 0, 0, &mut out);
    Ok(out)
}

/// Kostka-Foulkes polynomial K_{shape, weight}(t) as the charge generating
/// function over semistandard tableaux.
pub fn kostka_foulkes(shape: &Partition, weight: &Partition) -> Result<TPoly> {
    let mut poly = TPoly::zero();
    for t in ssyt_enumerate(shape, weight.parts())? {
        let ch = charge_word(&ssyt_reading_word(&t))?;
        poly += &TPoly::monomial(ch as usize);
    }
    Ok(poly)
}

/// The full classical Kostka-Foulkes matrix for partitions of n, canonical
/// index order.
pub fn kostka_foulkes_matrix(n: u32) -> Result<(Vec<Partition>, Vec<Vec<TPoly>>)> {
    let index = partitions_of(n);
    let mut rows = Vec::with_capacity(index.len());
    for lam in &index {
        let mut row = Vec::with_capacity(index.len());
        for mu in &index {
            row.push(kostka_foulkes(lam, mu)?);
        }
        rows.push(row);
    }
    Ok((index, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_bounded;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn charge_permutation_examples() {
        assert_eq!(charge_permutation(&[3, 5, 1, 4, 2]).unwrap(), 6);
        assert_eq!(charge_permutation(&[1, 2, 3, 4, 5]).unwrap(), 10);
        assert_eq!(charge_permutation(&[5, 4, 3, 2, 1]).unwrap(), 0);
        assert!(charge_permutation(&[1, 1, 2]).is_err());
    }

    #[test]
    fn subword_examples() {
        let w = [5, 2, 3, 4, 4, 1, 1, 1, 2, 2, 3];
        assert_eq!(
            charge_subwords(&w).unwrap(),
            vec![vec![5, 2, 4, 1, 3], vec![3, 4, 1, 2], vec![1, 2]]
        );
        assert_eq!(
            charge_subwords(&[3, 5, 1, 4, 2]).unwrap(),
            vec![vec![3, 5, 1, 4, 2]]
        );
        assert_eq!(
            charge_subwords(&[1, 1, 2, 2]).unwrap(),
            vec![vec![1, 2], vec![1, 2]]
        );
        assert!(charge_subwords(&[2, 2, 1]).is_err());
    }

    #[test]
    fn charge_word_examples() {
        assert_eq!(charge_word(&[5, 2, 3, 4, 4, 1, 1, 1, 2, 2, 3]).unwrap(), 8);
        assert_eq!(charge_word(&[4, 3, 2, 1]).unwrap(), 0);
        // weakly increasing words: every subword is an identity permutation
        assert_eq!(charge_word(&[1, 1, 2, 2, 3]).unwrap(), 3 + 1);
    }

    #[test]
    fn reading_word_examples() {
        let t = Ssyt::new(vec![vec![1, 1, 1, 2, 2, 3], vec![2, 3, 4, 4], vec![5]]).unwrap();
        assert_eq!(ssyt_reading_word(&t), vec![5, 2, 3, 4, 4, 1, 1, 1, 2, 2, 3]);
        assert_eq!(charge_word(&ssyt_reading_word(&t)).unwrap(), 8);

        let single = Ssyt::new(vec![vec![1, 1, 2]]).unwrap();
        assert_eq!(ssyt_reading_word(&single), vec![1, 1, 2]);

        let column = Ssyt::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(ssyt_reading_word(&column), vec![3, 2, 1]);
    }

    #[test]
    fn tableau_serde_is_a_bare_row_array() {
        let t = Ssyt::new(vec![vec![1, 1, 2], vec![2, 3]]).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, "[[1,1,2],[2,3]]");
        let back: Ssyt = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        // invalid fillings are rejected on the way in
        assert!(serde_json::from_str::<Ssyt>("[[1,2],[1,3]]").is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(ssyt_enumerate(&p(&[2, 1]), &[2, 1]).unwrap().len(), 1);
        assert_eq!(ssyt_enumerate(&p(&[3]), &[1, 1, 1]).unwrap().len(), 1);
        assert_eq!(ssyt_enumerate(&p(&[2, 1]), &[1, 1, 1]).unwrap().len(), 2);
        assert!(ssyt_enumerate(&p(&[2]), &[1, 1, 1]).is_err());
    }

    #[test]
    fn kostka_foulkes_examples() {
        assert_eq!(
            kostka_foulkes(&p(&[2, 1]), &p(&[2, 1])).unwrap(),
            TPoly::one()
        );
        assert_eq!(
            kostka_foulkes(&p(&[3]), &p(&[1, 1, 1])).unwrap(),
            TPoly::monomial(3)
        );
        assert_eq!(
            kostka_foulkes(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(),
            &TPoly::monomial(1) + &TPoly::monomial(2)
        );
    }

    #[test]
    fn superstandard_charge() {
        // reading the superstandard tableau of shape q bottom row first
        // gives the weakly increasing word of weight q, whose charge is the
        // sum over conjugate parts c of c*(c-1)/2; the canonical top-first
        // reading word has charge 0
        for n in 1..=7u32 {
            for q in partitions_of(n) {
                let t = ssyt_enumerate(&q, q.parts()).unwrap();
                assert_eq!(t.len(), 1);
                let increasing: Vec<u32> = t[0].rows().iter().flatten().copied().collect();
                let expect: u64 = q
                    .conjugate()
                    .parts()
                    .iter()
                    .map(|&c| (c as u64 * (c as u64 - 1)) / 2)
                    .sum();
                assert_eq!(charge_word(&increasing).unwrap(), expect, "shape {q}");
                assert_eq!(charge_word(&ssyt_reading_word(&t[0])).unwrap(), 0);
            }
        }
    }

    /// Independent Kostka number oracle: counts chains of nested shapes
    /// where step i adds a horizontal strip of size weight[i]. A horizontal
    /// strip extension is an interlacing choice new_i in
    /// [old_i, old_{i-1}] per row.
    fn kostka_count_by_strips(shape: &Partition, weight: &[u32]) -> u64 {
        fn extensions(current: &Partition, m: u32, bound: &Partition) -> Vec<Partition> {
            fn rec(
                current: &Partition,
                bound: &Partition,
                row: usize,
                left: u32,
                acc: &mut Vec<u32>,
                out: &mut Vec<Partition>,
            ) {
                if row > current.len() {
                    if left == 0 {
                        let parts: Vec<u32> = acc.iter().copied().filter(|&x| x > 0).collect();
                        out.push(Partition::new(parts).expect("interlacing rows decrease"));
                    }
                    return;
                }
                let lo = current.part(row);
                let mut hi = bound.part(row).min(lo + left);
                if row > 0 {
                    hi = hi.min(current.part(row - 1));
                }
                for newlen in lo..=hi {
                    acc.push(newlen);
                    rec(current, bound, row + 1, left - (newlen - lo), acc, out);
                    acc.pop();
                }
            }
            let mut out = Vec::new();
            rec(current, bound, 0, m, &mut Vec::new(), &mut out);
            out
        }

        fn rec(shape: &Partition, weight: &[u32], step: usize, current: &Partition) -> u64 {
            if step == weight.len() {
                return u64::from(current == shape);
            }
            extensions(current, weight[step], shape)
                .iter()
                .map(|q| rec(shape, weight, step + 1, q))
                .sum()
        }
        rec(shape, weight, 0, &Partition::empty())
    }

    #[test]
    fn kostka_numbers_match_strip_chain_oracle() {
        for n in 1..=6u32 {
            for lam in partitions_of(n) {
                for mu in partitions_of(n) {
                    let by_enum = ssyt_enumerate(&lam, mu.parts()).unwrap().len() as u64;
                    let by_chains = kostka_count_by_strips(&lam, mu.parts());
                    assert_eq!(by_enum, by_chains, "K_{lam},{mu}");
                    // triangularity: zero unless mu is dominated by lam
                    if by_enum > 0 {
                        assert!(crate::partition::dominance_leq(&mu, &lam).unwrap());
                    }
                    // t = 1 specialization counts tableaux
                    let kf = kostka_foulkes(&lam, &mu).unwrap();
                    assert_eq!(kf.eval_i64(1), num_bigint::BigInt::from(by_enum));
                }
            }
        }
    }

    #[test]
    fn kostka_counts_small_bounded() {
        // spot check a handful of known Kostka numbers
        assert_eq!(ssyt_enumerate(&p(&[2, 1]), &[1, 1, 1]).unwrap().len(), 2);
        assert_eq!(ssyt_enumerate(&p(&[3, 2]), &[2, 2, 1]).unwrap().len(), 2);
        assert_eq!(
            ssyt_enumerate(&p(&[2, 2, 1]), &[1, 1, 1, 1, 1])
                .unwrap()
                .len(),
            5
        );
        let _ = partitions_bounded(4, 2);
    }
}
