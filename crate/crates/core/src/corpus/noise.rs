use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::edit::{apply_edit, legal_edits, Edit, EditOp};
use super::lexicon::Lexicon;
use super::token::{is_corruptible, Sentence, Token};
use super::{CorpusError, NoisySentence, TestCorpus};

pub type CorpusRng = ChaCha8Rng;

/// Rejection samples drawn before falling back to an exhaustive scan.
const MAX_SAMPLES: usize = 100;
/// Regeneration attempts for a variant that duplicates an earlier one.
const MAX_DUPLICATE_RETRIES: usize = 200;

/// Stream for one noisy variant, derived from the corpus seed and the
/// variant's coordinates so that generation order never matters.
pub fn variant_rng(seed: u64, base_id: &str, level: u8, ordinal: usize) -> CorpusRng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((base_id.len() as u64).to_le_bytes());
    h.update(base_id.as_bytes());
    h.update([level]);
    h.update((ordinal as u64).to_le_bytes());
    let digest: [u8; 32] = h.finalize().into();
    ChaCha8Rng::from_seed(digest)
}

/// Corrupts a single word with one edit so that the result is not in the
/// lexicon. The returned edit has `word_index` 0; callers fill it in.
pub fn corrupt_word<R: Rng + ?Sized>(
    word: &str,
    lexicon: &Lexicon,
    rng: &mut R,
) -> Result<(String, Edit), CorpusError> {
    if !is_corruptible(word) {
        return Err(CorpusError::InvalidEdit(format!(
            "{word:?} is not corruptible"
        )));
    }
    let spaces: Vec<Vec<Edit>> = EditOp::ALL
        .iter()
        .map(|&op| legal_edits(word, op, 0))
        .filter(|s| !s.is_empty())
        .collect();

    for _ in 0..MAX_SAMPLES {
        let space = &spaces[rng.random_range(0..spaces.len())];
        let e = &space[rng.random_range(0..space.len())];
        let candidate = apply_edit(word, e)?;
        if !lexicon.contains(&candidate) {
            return Ok((candidate, e.clone()));
        }
    }

    let mut survivors = Vec::new();
    for e in spaces.iter().flatten() {
        let candidate = apply_edit(word, e)?;
        if !lexicon.contains(&candidate) {
            survivors.push((candidate, e.clone()));
        }
    }
    if survivors.is_empty() {
        return Err(CorpusError::Uncorruptible(word.to_string()));
    }
    let pick = rng.random_range(0..survivors.len());
    Ok(survivors.swap_remove(pick))
}

/// Corrupts `k` distinct corruptible words of `s`, chosen uniformly.
///
/// Words that turn out to be uncorruptible under the lexicon are passed
/// over in favour of the next candidate position.
pub fn corrupt_sentence<R: Rng + ?Sized>(
    s: &Sentence,
    k: u8,
    lexicon: &Lexicon,
    rng: &mut R,
) -> Result<NoisySentence, CorpusError> {
    if !(1..=3).contains(&k) {
        return Err(CorpusError::InvalidLevel(k));
    }
    let needed = usize::from(k);
    let mut positions: Vec<usize> = s
        .tokens
        .iter()
        .filter(|t| t.corruptible)
        .map(|t| t.index)
        .collect();
    let available = positions.len();
    if needed > available {
        return Err(CorpusError::NotEnoughCorruptible {
            id: s.id.clone(),
            needed,
            available,
        });
    }
    positions.shuffle(rng);

    let mut tokens = s.tokens.clone();
    let mut edits = Vec::with_capacity(needed);
    for pos in positions {
        if edits.len() == needed {
            break;
        }
        match corrupt_word(&s.tokens[pos - 1].text, lexicon, rng) {
            Ok((text, mut e)) => {
                e.word_index = pos;
                tokens[pos - 1] = Token::new(pos, text);
                edits.push(e);
            }
            Err(CorpusError::Uncorruptible(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    if edits.len() < needed {
        return Err(CorpusError::NotEnoughCorruptible {
            id: s.id.clone(),
            needed,
            available: edits.len(),
        });
    }
    edits.sort();
    Ok(NoisySentence {
        base_id: s.id.clone(),
        error_level: k,
        tokens,
        edits,
    })
}

/// Requested number of noisy sentences per error level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPlan(pub Vec<(u8, usize)>);

impl LevelPlan {
    pub fn total(&self) -> usize {
        self.0.iter().map(|&(_, n)| n).sum()
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let mut seen = HashSet::new();
        for &(level, _) in &self.0 {
            if !(1..=3).contains(&level) {
                return Err(CorpusError::InvalidLevel(level));
            }
            if !seen.insert(level) {
                return Err(CorpusError::InvalidPlan(format!(
                    "level {level} listed twice"
                )));
            }
        }
        Ok(())
    }
}

impl FromStr for LevelPlan {
    type Err = CorpusError;

    /// Parses `level:count` pairs separated by commas, e.g. `1:255,2:94,3:94`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| CorpusError::InvalidPlan(msg);
        let mut entries = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (level, count) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("expected level:count, got {part:?}")))?;
            let level: u8 = level
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad level {level:?}")))?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad count {count:?}")))?;
            entries.push((level, count));
        }
        if entries.is_empty() {
            return Err(bad("empty plan".into()));
        }
        let plan = LevelPlan(entries);
        plan.validate()?;
        Ok(plan)
    }
}

impl fmt::Display for LevelPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Generates the noisy corpus for `plan`.
///
/// Variants of a level are dealt round-robin over the base sentences that
/// have enough corruptible words. Variant `j` of a level goes to eligible
/// base `j % m` with ordinal `j / m`, and draws from its own stream, so the
/// result is a pure function of the inputs.
pub fn build_corpus(
    base: &[Sentence],
    plan: &LevelPlan,
    seed: u64,
    lexicon: &Lexicon,
) -> Result<TestCorpus, CorpusError> {
    plan.validate()?;
    let mut ids = HashSet::new();
    for s in base {
        if !ids.insert(s.id.as_str()) {
            return Err(CorpusError::InvalidPlan(format!(
                "duplicate base id {:?}",
                s.id
            )));
        }
    }

    let mut noisy = Vec::with_capacity(plan.total());
    for &(level, count) in &plan.0 {
        if count == 0 {
            continue;
        }
        let eligible: Vec<&Sentence> = base
            .iter()
            .filter(|s| s.corruptible_count() >= usize::from(level))
            .collect();
        if eligible.is_empty() {
            return Err(CorpusError::Unsatisfiable {
                base_id: base.first().map(|s| s.id.clone()).unwrap_or_default(),
                level,
                requested: count,
            });
        }
        let m = eligible.len();
        let mut seen: Vec<HashSet<Vec<Edit>>> = vec![HashSet::new(); m];
        for j in 0..count {
            let b = j % m;
            let s = eligible[b];
            let unsatisfiable = || CorpusError::Unsatisfiable {
                base_id: s.id.clone(),
                level,
                requested: count,
            };
            let mut rng = variant_rng(seed, &s.id, level, j / m);
            let mut accepted = None;
            for _ in 0..MAX_DUPLICATE_RETRIES {
                let ns = match corrupt_sentence(s, level, lexicon, &mut rng) {
                    Ok(ns) => ns,
                    Err(CorpusError::NotEnoughCorruptible { .. }) => return Err(unsatisfiable()),
                    Err(e) => return Err(e),
                };
                if seen[b].insert(ns.edits.clone()) {
                    accepted = Some(ns);
                    break;
                }
            }
            noisy.push(accepted.ok_or_else(unsatisfiable)?);
        }
    }

    Ok(TestCorpus {
        base: base.to_vec(),
        noisy,
        seed,
        lexicon_source: lexicon.source().to_string(),
    })
}
