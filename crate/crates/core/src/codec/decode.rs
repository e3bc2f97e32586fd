use serde::Serialize;

use super::{LevelRecord, SidePart, VertexLabel};
use crate::star::StarLabel;
use crate::tree_labels::tree_decode;

/// Which estimate the decoder used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Identical,
    PanelCone,
    ConeCone,
    Median,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub estimate: u32,
    pub branch: Branch,
    /// Index of the deepest level whose medians agree.
    pub level: Option<usize>,
}

/// Distance estimate `r` with `d(u, v) <= r <= 4 d(u, v)`.
///
/// Both labels must come from the same encoding; otherwise the result is
/// meaningless (see [`super::LabelSet`] for a checked front end).
pub fn decode(a: &VertexLabel, b: &VertexLabel) -> u32 {
    decode_traced(a, b).estimate
}

pub fn decode_traced(a: &VertexLabel, b: &VertexLabel) -> Decoded {
    if a.id == b.id {
        return Decoded {
            estimate: 0,
            branch: Branch::Identical,
            level: None,
        };
    }
    let shared = a
        .levels
        .iter()
        .zip(&b.levels)
        .take_while(|(x, y)| x.median == y.median)
        .count();
    debug_assert!(shared > 0, "labels {} and {} share no median", a.id, b.id);
    let Some(level) = shared.checked_sub(1) else {
        return Decoded {
            estimate: u32::MAX,
            branch: Branch::Median,
            level: None,
        };
    };
    let (ra, rb) = (&a.levels[level], &b.levels[level]);
    let nonempty = |l: &StarLabel| *l != StarLabel::Empty;
    let (estimate, branch) = if nonempty(&ra.star) && ra.star.is_strict_subset(&rb.star) {
        (dist_pc(ra, rb), Branch::PanelCone)
    } else if nonempty(&rb.star) && rb.star.is_strict_subset(&ra.star) {
        (dist_pc(rb, ra), Branch::PanelCone)
    } else if shared_element(&ra.star, &rb.star).is_some() {
        (dist_cc(ra, rb), Branch::ConeCone)
    } else {
        (ra.dist + rb.dist, Branch::Median)
    };
    Decoded {
        estimate,
        branch,
        level: Some(level),
    }
}

/// The common element of two pair labels meeting in exactly one element.
fn shared_element(a: &StarLabel, b: &StarLabel) -> Option<u32> {
    match (*a, *b) {
        (StarLabel::Pair(a0, a1), StarLabel::Pair(b0, b1)) => {
            let common: Vec<u32> = [a0, a1]
                .into_iter()
                .filter(|e| *e == b0 || *e == b1)
                .collect();
            match common.as_slice() {
                [w] => Some(*w),
                _ => None,
            }
        }
        _ => None,
    }
}

/// The entrance of a cone record on the panel labelled `panel`.
fn entrance_for(cone: &LevelRecord, panel: u32) -> &SidePart {
    let StarLabel::Pair(low, high) = cone.star else {
        panic!("entrance requested from a non-cone record {:?}", cone.star);
    };
    let side = if panel == low {
        &cone.left
    } else {
        assert_eq!(
            panel, high,
            "panel {panel} does not border cone {:?}",
            cone.star
        );
        &cone.right
    };
    side.as_ref().expect("cone records carry both entrances")
}

/// Estimate for a panel vertex and a vertex of a cone bordering that panel:
/// through the cone vertex's entrance on the panel boundary and the better of
/// the panel vertex's two exits.
pub fn dist_pc(panel: &LevelRecord, cone: &LevelRecord) -> u32 {
    let StarLabel::Single(x) = panel.star else {
        panic!("panel record expected, found {:?}", panel.star);
    };
    let entry = entrance_for(cone, x);
    let via = |exit: &Option<SidePart>| {
        let exit = exit.as_ref().expect("panel records carry both exits");
        tree_decode(&entry.tree, &exit.tree) + exit.dist
    };
    entry.dist + via(&panel.left).min(via(&panel.right))
}

/// Estimate for vertices of two cones bordering a common panel: through both
/// entrances on that panel's boundary tree.
pub fn dist_cc(a: &LevelRecord, b: &LevelRecord) -> u32 {
    let w = shared_element(&a.star, &b.star).expect("cone labels meeting in one panel");
    let (ea, eb) = (entrance_for(a, w), entrance_for(b, w));
    ea.dist + tree_decode(&ea.tree, &eb.tree) + eb.dist
}
