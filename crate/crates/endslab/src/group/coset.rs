use crate::error::Result;
use crate::group::element::GroupElement;
use crate::group::spec::GroupSpec;

/// A left coset g'·P of a factor subgroup, identified by the normal-form
/// prefix before the syllable in that factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRef {
    pub prefix: GroupElement,
    pub factor: u8,
}

/// Largest coset projection distance sup_U d_U(1, g) over the factor cosets
/// touched by the normal form of `g`, together with the maximizing coset.
///
/// In a free product the nearest-point projections of 1 and g onto a coset
/// touched by the normal form differ exactly by the syllable in that coset,
/// so the supremum is the maximal syllable length. Ties resolve to the
/// earliest syllable.
pub fn coset_projection_sup(spec: &GroupSpec, g: &GroupElement) -> Result<(u64, CosetRef)> {
    spec.check_token(g)?;
    let mut best: u64 = 0;
    let mut best_idx: Option<usize> = None;
    for (i, syl) in g.syllables().iter().enumerate() {
        let l = spec.syllable_length(syl);
        if l > best {
            best = l;
            best_idx = Some(i);
        }
    }
    match best_idx {
        None => Ok((
            0,
            CosetRef {
                prefix: spec.identity(),
                factor: 0,
            },
        )),
        Some(i) => {
            let prefix = spec.from_syllables(
                g.syllables()[..i]
                    .iter()
                    .map(|s| (s.factor, s.elem.clone())),
            )?;
            Ok((
                best,
                CosetRef {
                    prefix,
                    factor: g.syllables()[i].factor,
                },
            ))
        }
    }
}
