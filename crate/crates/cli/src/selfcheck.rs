//! Oracle comparison of a text under random substitutions.

use dynsa::oracle::{inverse, OracleSnapshot, SentinelOrder};
use dynsa::{DynamicSuffixArray, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::failure::Failure;

/// First disagreement between the index and the oracle, if any.
pub fn compare(index: &DynamicSuffixArray, oracle: &OracleSnapshot) -> Result<Option<String>, Failure> {
    let n = index.len();
    let engine = index.engine();
    let err = |e| Failure::from_index("selfcheck", e);
    let sa = oracle.suffix_array();
    let isa = inverse(&sa).expect("oracle SA is a permutation");
    let bwt = oracle.bwt();
    let lcp = oracle.lcp_array();
    for r in 1..=n {
        let got = engine.suffix_array(r).map_err(err)?;
        if got != sa[r - 1] {
            return Ok(Some(format!("SA[{r}] = {got}, oracle says {}", sa[r - 1])));
        }
        let got = engine.bwt_at(r).map_err(err)?;
        if got.as_byte() != bwt[r - 1] {
            let want = bwt[r - 1].map_or(Symbol::SENTINEL, Symbol::byte);
            return Ok(Some(format!("BWT[{r}] = {got}, oracle says {want}")));
        }
        if r > 1 {
            let got = engine.lcp_array_at(r).map_err(err)?;
            if got != lcp[r - 2] {
                return Ok(Some(format!("LCP[{r}] = {got}, oracle says {}", lcp[r - 2])));
            }
        }
    }
    for i in 1..=n {
        let got = engine.inverse_suffix_array(i).map_err(err)?;
        if got != isa[i - 1] {
            return Ok(Some(format!("iSA[{i}] = {got}, oracle says {}", isa[i - 1])));
        }
    }
    Ok(None)
}

pub fn run(text: &[u8], k: usize, seed: u64, trials: usize, flip: bool) -> Result<(), Failure> {
    let order = if flip {
        SentinelOrder::Smallest
    } else {
        SentinelOrder::Greatest
    };
    let mut index = DynamicSuffixArray::with_seed(text, k, seed).map_err(|e| Failure::from_index("text", e))?;
    let mut current = text.to_vec();
    let mut alphabet: Vec<u8> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    // One extra letter so unary texts still change.
    if let Some(extra) = (0..=255u8).find(|b| alphabet.binary_search(b).is_err()) {
        alphabet.push(extra);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = current.len();
    let k = index.k();
    for trial in 0..=trials {
        let mut step = "initial text".to_string();
        if trial > 0 {
            let pos = rng.gen_range(1..=n);
            let b = alphabet[rng.gen_range(0..alphabet.len())];
            current[pos - 1] = b;
            index
                .substitute(pos, Symbol::byte(b))
                .map_err(|e| Failure::from_index(format!("trial {trial}"), e))?;
            step = format!("trial {trial} (SUB {pos} {})", Symbol::byte(b));
        }
        let oracle = OracleSnapshot::with_order(&current, k, order);
        if let Some(mismatch) = compare(&index, &oracle)? {
            return Err(Failure::Internal(format!(
                "FAIL after {step}, n={n}, k={k}: {mismatch}\ntext: {}",
                render(&current)
            )));
        }
    }
    println!("PASS: n={n}, k={k}, {trials} substitutions checked against the oracle");
    Ok(())
}

fn render(bytes: &[u8]) -> String {
    bytes.iter().map(|&b| Symbol::byte(b).to_string()).collect()
}
