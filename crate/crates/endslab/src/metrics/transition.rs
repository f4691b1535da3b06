use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// Classification of the vertices along the normal-form geodesic from 1 to
/// `g`. Position i is *deep* when its whole radius-R neighborhood on the
/// path stays strictly inside one syllable (margin > R from both syllable
/// junctions); factor cosets are convex here, so deepness reduces to
/// syllable-interior membership. Everything else is a transition point.
#[derive(Debug, Clone)]
pub struct TransitionReport {
    pub path_len: u64,
    /// Positions (0..=path_len) of the transition vertices.
    pub transitions: Vec<u64>,
    /// mask[i] = true iff position i is a transition point.
    pub mask: Vec<bool>,
}

/// mask[i] = true iff position i on the normal-form geodesic is a
/// transition point for neighborhood radius `radius`.
pub fn transition_mask(spec: &GroupSpec, g: &GroupElement, radius: u32) -> Vec<bool> {
    let len = spec.word_length(g);
    let mut mask = vec![true; len as usize + 1];
    let r = radius as i64;
    let mut start: i64 = 0;
    for syl in g.syllables() {
        let end = start + spec.syllable_length(syl) as i64;
        // strictly inside with margin > R from both junctions
        let lo = start + r + 1;
        let hi = end - r - 1;
        for i in lo..=hi {
            mask[i as usize] = false;
        }
        start = end;
    }
    mask
}

pub fn transition_points(
    spec: &GroupSpec,
    g: &GroupElement,
    radius: u32,
) -> Result<TransitionReport> {
    spec.check_token(g)?;
    if radius < 1 {
        return Err(Error::Precondition("transition radius must be >= 1".into()));
    }
    let mask = transition_mask(spec, g, radius);
    let transitions = mask
        .iter()
        .enumerate()
        .filter(|(_, &t)| t)
        .map(|(i, _)| i as u64)
        .collect();
    Ok(TransitionReport {
        path_len: spec.word_length(g),
        transitions,
        mask,
    })
}
