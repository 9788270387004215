use super::BettiTable;
use crate::error::{Error, Result};
use crate::gin::is_borel_fixed;
use crate::ideal::MonomialIdeal;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}

/// Betti table of a Borel-fixed ideal by the closed formula
/// `β_{p,p+q} = Σ_{deg m = q} C(max(m) - 1, p)`.
pub fn ek_betti(m: &MonomialIdeal) -> Result<BettiTable> {
    if !is_borel_fixed(m) {
        return Err(Error::NotBorelFixed);
    }
    let mut t = BettiTable::new();
    if m.is_unit() {
        t.add(0, 0, 1);
        return Ok(t);
    }
    for g in m.generators() {
        let top = g.max_index()? as u64;
        let q = g.degree();
        for p in 0..top {
            t.add(p as usize, q + p as u32, binomial(top - 1, p));
        }
    }
    Ok(t)
}
