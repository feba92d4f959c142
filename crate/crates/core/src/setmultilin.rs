//! Polynomials over partitioned variable sets, their set-multilinear parts,
//! and exhaustive vanishing probabilities of small systems.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::Field;
use crate::enumerate::for_each_vector;
use crate::error::{check_budget, EnumerationSize, Error, Result};
use crate::estimator::ExactProb;

/// A partition of the variables `Z_0..Z_{N-1}` into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// `blocks[i]` lists the variables of block `i`.
    pub fn new(num_vars: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![usize::MAX; num_vars];
        for (b, vars) in blocks.iter().enumerate() {
            if vars.is_empty() {
                return Err(Error::Structure(format!("block {b} is empty")));
            }
            for &v in vars {
                if v >= num_vars || block_of[v] != usize::MAX {
                    return Err(Error::Structure(format!(
                        "variable {v} is out of range or in two blocks"
                    )));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Structure(format!("variable {v} is in no block")));
        }
        Ok(Partition {
            block_of,
            blocks: blocks.len(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, var: usize) -> usize {
        self.block_of[var]
    }
}

/// A sparse polynomial over F_q whose monomials are sets of distinct
/// variables; `terms` maps a sorted variable list to its coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub field: Field,
    pub num_vars: usize,
    pub terms: BTreeMap<Vec<usize>, u32>,
}

impl SparsePoly {
    pub fn new<I>(field: Field, num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, u64)>,
    {
        let mut map: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for (mut vars, c) in terms {
            vars.sort_unstable();
            if vars.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Structure(format!(
                    "monomial {vars:?} repeats a variable"
                )));
            }
            if vars.iter().any(|&v| v >= num_vars) {
                return Err(Error::Structure(format!(
                    "monomial {vars:?} uses an unknown variable"
                )));
            }
            let slot = map.entry(vars).or_insert(0);
            *slot = field.add(*slot, field.reduce(c));
        }
        map.retain(|_, c| *c != 0);
        Ok(SparsePoly {
            field,
            num_vars,
            terms: map,
        })
    }

    pub fn eval(&self, z: &[u32]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, (vars, &c)| {
            let term = vars.iter().fold(c, |t, &v| f.mul(t, z[v]));
            f.add(acc, term)
        })
    }

    /// Every monomial uses at most one variable from each block.
    pub fn is_multilinear_for(&self, pi: &Partition) -> bool {
        self.terms.keys().all(|vars| {
            let mut seen = vec![false; pi.num_blocks()];
            vars.iter()
                .all(|&v| !std::mem::replace(&mut seen[pi.block_of(v)], true))
        })
    }

    /// Every monomial uses exactly one variable from each block.
    pub fn is_set_multilinear_for(&self, pi: &Partition) -> bool {
        self.is_multilinear_for(pi) && self.terms.keys().all(|vars| vars.len() == pi.num_blocks())
    }

    /// Keeps the monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> SparsePoly {
        SparsePoly {
            field: self.field,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(v, _)| keep(v))
                .map(|(v, &c)| (v.clone(), c))
                .collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (vars, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for v in vars {
                write!(f, "*z{}", v + 1)?;
            }
        }
        Ok(())
    }
}

/// The homogeneous degree-k component, where k is the number of blocks.
pub fn set_multilinear_part(p: &SparsePoly, pi: &Partition) -> Result<SparsePoly> {
    if p.num_vars != pi.num_vars() {
        return Err(Error::Structure(format!(
            "polynomial has {} variables, partition covers {}",
            p.num_vars,
            pi.num_vars()
        )));
    }
    if !p.is_multilinear_for(pi) {
        return Err(Error::Structure(
            "a monomial uses two variables of one block".into(),
        ));
    }
    let k = pi.num_blocks();
    Ok(p.filter(|vars| vars.len() == k))
}

/// Polynomials `P_1..P_m` over a partitioned variable set.
#[derive(Debug, Clone)]
pub struct PartitionedSystem {
    pub partition: Partition,
    pub polys: Vec<SparsePoly>,
}

impl PartitionedSystem {
    pub fn new(partition: Partition, polys: Vec<SparsePoly>) -> Result<Self> {
        for p in &polys {
            if p.num_vars != partition.num_vars() || !p.is_multilinear_for(&partition) {
                return Err(Error::Structure(format!(
                    "{p} is not multilinear for the partition"
                )));
            }
        }
        Ok(PartitionedSystem { partition, polys })
    }

    pub fn field(&self) -> Option<Field> {
        self.polys.first().map(|p| p.field)
    }

    /// The system with each polynomial replaced by its set-multilinear part.
    pub fn set_multilinear(&self) -> Result<PartitionedSystem> {
        let polys = self
            .polys
            .iter()
            .map(|p| set_multilinear_part(p, &self.partition))
            .collect::<Result<_>>()?;
        Ok(PartitionedSystem {
            partition: self.partition.clone(),
            polys,
        })
    }

    /// The intermediate systems `P_{0,i} = P_i`, with `P_{j+1,i}` keeping
    /// only the monomials of `P_{j,i}` that touch block `j`. The last one is
    /// the set-multilinear system.
    pub fn homogenization_chain(&self) -> Vec<PartitionedSystem> {
        let mut chain = vec![self.clone()];
        for b in 0..self.partition.num_blocks() {
            let prev = chain.last().expect("nonempty");
            let polys = prev
                .polys
                .iter()
                .map(|p| p.filter(|vars| vars.iter().any(|&v| self.partition.block_of(v) == b)))
                .collect();
            chain.push(PartitionedSystem {
                partition: self.partition.clone(),
                polys,
            });
        }
        chain
    }
}

/// Number of points of `F_q^N` where every polynomial vanishes, over `q^N`.
pub fn vanishing_probability(sys: &PartitionedSystem, q: u32, budget: u64) -> Result<ExactProb> {
    let n = sys.partition.num_vars();
    let total = check_budget(EnumerationSize::new(u64::from(q), n as u64), budget)?;
    let mut count = 0u64;
    for_each_vector(q, n, |z| {
        if sys.polys.iter().all(|p| p.eval(z) == 0) {
            count += 1;
        }
        true
    });
    Ok(ExactProb::new(count, total))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingReport {
    pub p_full: ExactProb,
    pub p_sm: ExactProb,
    /// Probabilities along the homogenization chain, first to last.
    pub chain: Vec<ExactProb>,
    pub holds: bool,
    pub chain_monotone: bool,
}

/// Exhaustive `Pr[all P_i vanish]` against `Pr[all Q_i vanish]`, plus the
/// chain of intermediate systems.
pub fn system_vanishing_probability(
    sys: &PartitionedSystem,
    budget: u64,
) -> Result<VanishingReport> {
    let q = sys
        .field()
        .ok_or_else(|| Error::Structure("system has no polynomials".into()))?
        .order();
    let p_full = vanishing_probability(sys, q, budget)?;
    let p_sm = vanishing_probability(&sys.set_multilinear()?, q, budget)?;
    let chain = sys
        .homogenization_chain()
        .iter()
        .map(|s| vanishing_probability(s, q, budget))
        .collect::<Result<Vec<_>>>()?;
    let le = |a: ExactProb, b: ExactProb| a.count * b.total <= b.count * a.total;
    Ok(VanishingReport {
        holds: le(p_full, p_sm),
        chain_monotone: chain.windows(2).all(|w| le(w[0], w[1])),
        p_full,
        p_sm,
        chain,
    })
}

/// A random system: `num_vars` variables split into `blocks` nonempty
/// blocks, `polys` polynomials of up to `max_terms` random multilinear
/// monomials each (one optional variable per block, nonzero coefficient).
pub fn random_system<R: Rng + ?Sized>(
    field: Field,
    num_vars: usize,
    blocks: usize,
    polys: usize,
    max_terms: usize,
    rng: &mut R,
) -> Result<PartitionedSystem> {
    if blocks == 0 || blocks > num_vars || max_terms == 0 {
        return Err(Error::Parameter(format!(
            "cannot split {num_vars} variables into {blocks} blocks with {max_terms} terms"
        )));
    }
    let mut order: Vec<usize> = (0..num_vars).collect();
    order.shuffle(rng);
    let mut parts = vec![Vec::new(); blocks];
    for (i, &v) in order.iter().enumerate() {
        let b = if i < blocks {
            i
        } else {
            rng.gen_range(0..blocks)
        };
        parts[b].push(v);
    }
    let partition = Partition::new(num_vars, &parts)?;
    let q = u64::from(field.order());
    let polys = (0..polys)
        .map(|_| {
            let t = rng.gen_range(1..=max_terms);
            let terms: Vec<(Vec<usize>, u64)> = (0..t)
                .map(|_| {
                    let vars = parts
                        .iter()
                        .filter_map(|block| {
                            let pick = rng.gen_range(0..=block.len());
                            (pick < block.len()).then(|| block[pick])
                        })
                        .collect();
                    (vars, rng.gen_range(1..q))
                })
                .collect();
            SparsePoly::new(field, num_vars, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    PartitionedSystem::new(partition, polys)
}
