use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// How far the support semigroup is closed when certifying admissibility.
pub const ADMISSIBILITY_DEPTH: u32 = 12;
const ADMISSIBILITY_SET_CAP: usize = 200_000;

/// Certificate that the support generates the group as a semigroup: every
/// generator appears among products of at most `witness_depth` support
/// elements.
#[derive(Debug, Clone)]
pub struct Admissibility {
    pub admissible: bool,
    pub witness_depth: u32,
    /// Generator names not reached within the depth limit (empty if admissible).
    pub missing: Vec<String>,
}

/// A finite-support step distribution on the group.
#[derive(Clone)]
pub struct StepDistribution {
    spec: Arc<GroupSpec>,
    support: Vec<(GroupElement, f64)>,
    cumulative: Vec<f64>,
    max_step_length: u64,
    admissibility: Admissibility,
}

impl StepDistribution {
    /// Validates positivity and normalization (|sum - 1| <= 1e-12), sorts the
    /// support canonically and computes the admissibility certificate.
    pub fn new(spec: &Arc<GroupSpec>, entries: Vec<(GroupElement, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Spec("step distribution has empty support".into()));
        }
        for (g, p) in &entries {
            spec.check_token(g)?;
            if !(*p > 0.0) {
                return Err(Error::Spec(format!(
                    "step probability {p} is not positive"
                )));
            }
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Spec("duplicate element in support".into()));
        }
        let total: f64 = entries.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Spec(format!(
                "support probabilities sum to {total}, not 1 (tolerance 1e-12)"
            )));
        }
        let mut cumulative = Vec::with_capacity(entries.len());
        let mut acc = 0.0;
        for (_, p) in &entries {
            acc += p;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = 1.0;
        let max_step_length = entries
            .iter()
            .map(|(g, _)| spec.word_length(g))
            .max()
            .unwrap();
        let admissibility = certify_admissibility(spec, &entries);
        Ok(StepDistribution {
            spec: Arc::clone(spec),
            support: entries,
            cumulative,
            max_step_length,
            admissibility,
        })
    }

    /// Uniform measure on the union generating set (the simple random walk).
    pub fn uniform_on_generators(spec: &Arc<GroupSpec>) -> Result<Self> {
        let n = spec.generator_count();
        let p = 1.0 / n as f64;
        let entries = (0..n).map(|i| (spec.generator_element(i), p)).collect();
        StepDistribution::new(spec, entries)
    }

    /// Point mass at a single element (a deterministic walk).
    pub fn point_mass(spec: &Arc<GroupSpec>, g: GroupElement) -> Result<Self> {
        StepDistribution::new(spec, vec![(g, 1.0)])
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn support(&self) -> &[(GroupElement, f64)] {
        &self.support
    }

    pub fn max_step_length(&self) -> u64 {
        self.max_step_length
    }

    pub fn admissibility(&self) -> &Admissibility {
        &self.admissibility
    }

    /// Inverse-CDF sampling; deterministic given the RNG stream.
    pub fn sample<'a, R: Rng>(&'a self, rng: &mut R) -> &'a GroupElement {
        let u: f64 = rng.gen();
        let idx = self
            .cumulative
            .partition_point(|&c| c < u)
            .min(self.support.len() - 1);
        &self.support[idx].0
    }
}

/// BFS closure of the support semigroup until every generator shows up or
/// the depth/size budget runs out.
fn certify_admissibility(
    spec: &Arc<GroupSpec>,
    support: &[(GroupElement, f64)],
) -> Admissibility {
    let mut targets: Vec<(Vec<u8>, String)> = (0..spec.generator_count())
        .map(|i| {
            let g = spec.generator_element(i);
            let name = format!(
                "{}{}",
                spec.generators()[i].name,
                if spec.generators()[i].exponent < 0 {
                    "^-1"
                } else {
                    ""
                }
            );
            (g.encode(), name)
        })
        .collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut frontier: Vec<GroupElement> = vec![spec.identity()];
    seen.insert(spec.identity().encode());
    for depth in 1..=ADMISSIBILITY_DEPTH {
        let mut next = Vec::new();
        for g in &frontier {
            for (s, _) in support {
                let h = spec.multiply(g, s).expect("same spec");
                let code = h.encode();
                if seen.insert(code.clone()) {
                    targets.retain(|(t, _)| *t != code);
                    next.push(h);
                }
                if seen.len() > ADMISSIBILITY_SET_CAP {
                    return Admissibility {
                        admissible: false,
                        witness_depth: depth,
                        missing: targets.into_iter().map(|(_, n)| n).collect(),
                    };
                }
            }
        }
        if targets.is_empty() {
            return Admissibility {
                admissible: true,
                witness_depth: depth,
                missing: Vec::new(),
            };
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Admissibility {
        admissible: targets.is_empty(),
        witness_depth: ADMISSIBILITY_DEPTH,
        missing: targets.into_iter().map(|(_, n)| n).collect(),
    }
}
