//! Sufficient conditions for a lattice not to embed into another.

use std::collections::BTreeMap;

use serde::Serialize;

use super::IntLattice;
use crate::error::{Error, Result};

/// Result of an obstruction test. `fires` means the embedding is
/// impossible; a test that does not fire proves nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub obstruction: &'static str,
    pub fires: bool,
    pub witness: BTreeMap<&'static str, i64>,
}

/// A positive definite `s` cannot embed into `host` if its rank exceeds the
/// host's rank or the host's positive index.
pub fn rank_signature_obstruction(s: &IntLattice, host: &IntLattice) -> Result<ObstructionReport> {
    if !s.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (n_plus, n_minus) = host.signature();
    let fires = s.rank() > n_plus || s.rank() > host.rank();
    Ok(ObstructionReport {
        obstruction: "rank_signature",
        fires,
        witness: BTreeMap::from([
            ("rank_s", s.rank() as i64),
            ("rank_host", host.rank() as i64),
            ("n_plus_host", n_plus as i64),
            ("n_minus_host", n_minus as i64),
        ]),
    })
}

/// Counting obstruction to a primitive embedding `s -> host`.
///
/// If `s` embeds primitively with orthogonal complement `K`, then for every
/// prime `p` not dividing `|A_s|` the `p`-parts of `A_K` and `A_host`
/// agree, and `A_K` needs at most `rank K = rank host - rank s`
/// generators. The test fires when some such `p`-part of `A_host` needs
/// more generators than that.
pub fn complement_generator_obstruction(
    s: &IntLattice,
    host: &IntLattice,
) -> Result<ObstructionReport> {
    if !s.is_even() || !host.is_even() {
        return Err(Error::OddLattice);
    }
    let a_s = s.discriminant_group()?;
    let a_host = host.discriminant_group()?;
    let order_s = a_s.order();
    let coprime_generators = a_host
        .primes()
        .into_iter()
        .filter(|&p| order_s % p as u128 != 0)
        .map(|p| a_host.p_rank(p))
        .max()
        .unwrap_or(0) as i64;
    let slack = host.rank() as i64 - s.rank() as i64;
    Ok(ObstructionReport {
        obstruction: "complement_generators",
        fires: coprime_generators > slack,
        witness: BTreeMap::from([
            ("rank_s", s.rank() as i64),
            ("rank_host", host.rank() as i64),
            ("rank_slack", slack),
            ("coprime_generators", coprime_generators),
            ("order_a_s", i64::try_from(order_s).unwrap_or(i64::MAX)),
        ]),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{hyperbolic_plane, o16_lattice, parse_lattice_expr};
    use super::*;

    fn lat(s: &str) -> IntLattice {
        parse_lattice_expr(s).unwrap()
    }

    #[test]
    fn rank_obstruction_examples() {
        let t = o16_lattice();
        assert!(rank_signature_obstruction(&lat("15A1"), &t).unwrap().fires);
        assert!(!rank_signature_obstruction(&lat("14A1"), &t).unwrap().fires);
        assert!(!rank_signature_obstruction(&lat("A11"), &t).unwrap().fires);
        assert!(matches!(
            rank_signature_obstruction(&hyperbolic_plane(), &t),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn complement_examples() {
        let t = o16_lattice();
        let r = complement_generator_obstruction(&lat("A12"), &t).unwrap();
        assert!(r.fires);
        assert_eq!(r.witness["coprime_generators"], 6);
        assert_eq!(r.witness["rank_slack"], 4);
        assert!(!complement_generator_obstruction(&lat("3D4+A1"), &t).unwrap().fires);
        assert!(!complement_generator_obstruction(&lat("A1"), &hyperbolic_plane()).unwrap().fires);
    }

    #[test]
    fn report_json() {
        let r = complement_generator_obstruction(&lat("A12"), &o16_lattice()).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.starts_with("{\"obstruction\":\"complement_generators\",\"fires\":true,\"witness\":{"));
    }
}
