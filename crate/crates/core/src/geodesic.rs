//! Root distances in `Ψ(τ)` computed by iterated local surgery on the tree.
//!
//! A run starts at a vertex `x` of height `n` and performs exactly `n` steps,
//! each moving to a vertex one level higher in a modified tree. The input
//! state of every step is one of `w0`, `w>0`, `b` or `j`, and the distance is
//! the number of non-jump inputs.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Colour, ColouredPlaneTree, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgState {
    W0,
    Wpos,
    B,
    J,
}

impl AlgState {
    pub const ALL: [AlgState; 4] = [AlgState::W0, AlgState::Wpos, AlgState::B, AlgState::J];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgState::W0 => "w0",
            AlgState::Wpos => "w>0",
            AlgState::B => "b",
            AlgState::J => "j",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        AlgState::ALL.into_iter().find(|st| st.name() == s)
    }
}

impl fmt::Display for AlgState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The nine cases a step can dispatch to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    W0,
    WposSibling,
    WposMerge,
    B1,
    B2,
    B31,
    B32,
    J1,
    J2,
}

impl Case {
    pub const ALL: [Case; 9] = [
        Case::W0,
        Case::WposSibling,
        Case::WposMerge,
        Case::B1,
        Case::B2,
        Case::B31,
        Case::B32,
        Case::J1,
        Case::J2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Case::W0 => "w0",
            Case::WposSibling => "w>0.1",
            Case::WposMerge => "w>0.2",
            Case::B1 => "b.1",
            Case::B2 => "b.2",
            Case::B31 => "b.3.1",
            Case::B32 => "b.3.2",
            Case::J1 => "j.1",
            Case::J2 => "j.2",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Read access to a rooted plane tree whose child lists may be produced on
/// demand. Vertex ids are arbitrary but stable.
pub trait TreeSource {
    fn root(&self) -> usize;
    fn parent(&self, v: usize) -> Option<usize>;
    fn colour(&self, v: usize) -> Colour;
    /// Children of `v`, left to right.
    fn children(&mut self, v: usize) -> Result<Vec<usize>>;
}

impl TreeSource for &ColouredPlaneTree {
    fn root(&self) -> usize {
        0
    }

    fn parent(&self, v: usize) -> Option<usize> {
        ColouredPlaneTree::parent(self, NodeId(v)).map(|p| p.0)
    }

    fn colour(&self, v: usize) -> Colour {
        ColouredPlaneTree::colour(self, NodeId(v))
    }

    fn children(&mut self, v: usize) -> Result<Vec<usize>> {
        Ok(ColouredPlaneTree::children(self, NodeId(v)).iter().map(|c| c.0).collect())
    }
}

#[derive(Debug, Clone)]
struct Local {
    children: Vec<usize>,
    first: usize,
    colour: Colour,
}

impl Local {
    fn live(&self) -> &[usize] {
        &self.children[self.first..]
    }
}

/// The working triple `(τ, x, s)`.
///
/// The underlying tree is never copied: vertices touched by the surgery get a
/// private record holding their live children and current colour. The current
/// vertex is always the leftmost live child of its parent, so deletions only
/// ever pop from the front of a child list.
pub struct AlgTriple<S> {
    src: S,
    overlay: HashMap<usize, Local>,
    /// Strict ancestors of `x`, root first.
    path: Vec<usize>,
    x: usize,
    state: AlgState,
}

impl<S: TreeSource> AlgTriple<S> {
    /// Prunes everything strictly left of the path from the root to `x` and
    /// sets the state from the colour and leaf status of `x`.
    pub fn new(mut src: S, x: usize) -> Result<Self> {
        let mut path = Vec::new();
        let mut cur = x;
        while let Some(p) = src.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        let mut overlay = HashMap::with_capacity(4 * path.len() + 4);
        for (i, &a) in path.iter().enumerate() {
            let next = path.get(i + 1).copied().unwrap_or(x);
            let children = src.children(a)?;
            let first = children
                .iter()
                .position(|&c| c == next)
                .ok_or_else(|| Error::Invariant(format!("{next} missing from the children of {a}")))?;
            let colour = src.colour(a);
            overlay.insert(a, Local { children, first, colour });
        }
        let mut t = AlgTriple { src, overlay, path, x, state: AlgState::W0 };
        t.state = t.state_of(x)?;
        Ok(t)
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn state(&self) -> AlgState {
        self.state
    }

    /// Height of the current vertex in the current tree.
    pub fn height(&self) -> usize {
        self.path.len()
    }

    pub fn is_done(&self) -> bool {
        self.path.is_empty()
    }

    pub fn into_source(self) -> S {
        self.src
    }

    fn local(&mut self, v: usize) -> Result<&mut Local> {
        if !self.overlay.contains_key(&v) {
            let children = self.src.children(v)?;
            let colour = self.src.colour(v);
            self.overlay.insert(v, Local { children, first: 0, colour });
        }
        Ok(self.overlay.get_mut(&v).expect("just inserted"))
    }

    fn colour_of(&self, v: usize) -> Colour {
        self.overlay.get(&v).map_or_else(|| self.src.colour(v), |l| l.colour)
    }

    fn live_count(&mut self, v: usize) -> Result<usize> {
        Ok(self.local(v)?.live().len())
    }

    fn live_children(&mut self, v: usize) -> Result<Vec<usize>> {
        Ok(self.local(v)?.live().to_vec())
    }

    fn state_of(&mut self, v: usize) -> Result<AlgState> {
        Ok(match self.colour_of(v) {
            Colour::Black => AlgState::B,
            Colour::White if self.live_count(v)? == 0 => AlgState::W0,
            Colour::White => AlgState::Wpos,
        })
    }

    /// Deletes the subtree of the leftmost live child of `p`, which must be `c`.
    fn remove_leftmost(&mut self, p: usize, c: usize) -> Result<()> {
        let l = self.local(p)?;
        if l.live().first() != Some(&c) {
            return Err(Error::Invariant(format!(
                "vertex {c} is not the leftmost live child of {p}"
            )));
        }
        l.first += 1;
        Ok(())
    }

    /// Identifies `p` with `q`: `p` takes over the live children of `q` and
    /// becomes white iff both were white.
    fn merge_into(&mut self, p: usize, q: usize) -> Result<()> {
        let kids = self.live_children(q)?;
        let white = self.colour_of(p).is_white() && self.colour_of(q).is_white();
        let l = self.local(p)?;
        l.children = kids;
        l.first = 0;
        l.colour = if white { Colour::White } else { Colour::Black };
        Ok(())
    }

    fn parent_of_x(&self) -> Result<usize> {
        self.path.last().copied().ok_or(Error::TraceComplete)
    }

    fn grandparent_of_x(&self) -> Option<usize> {
        self.path.len().checked_sub(2).map(|i| self.path[i])
    }

    /// One step of the algorithm. Returns the case that was applied.
    pub fn step(&mut self) -> Result<Case> {
        let x = self.x;
        let p = self.parent_of_x()?;
        let mut jump = false;
        let case = match self.state {
            AlgState::W0 => {
                self.remove_leftmost(p, x)?;
                self.path.pop();
                self.x = p;
                Case::W0
            }
            AlgState::Wpos => {
                if self.live_count(p)? > 1 {
                    self.remove_leftmost(p, x)?;
                    self.path.pop();
                    self.x = p;
                    Case::WposSibling
                } else {
                    let r = *self
                        .live_children(x)?
                        .last()
                        .ok_or_else(|| Error::Invariant(format!("w>0 vertex {x} has no children")))?;
                    self.merge_into(p, r)?;
                    self.path.pop();
                    self.x = p;
                    Case::WposMerge
                }
            }
            AlgState::B => {
                let siblings = self.live_children(p)?;
                match siblings.len() {
                    0 => return Err(Error::Invariant(format!("vertex {x} missing from its parent"))),
                    1 => {
                        let pp = self.grandparent_of_x().ok_or_else(|| {
                            Error::Invariant(format!("black vertex {x} on the rightmost branch"))
                        })?;
                        if self.live_count(pp)? > 1 {
                            self.remove_leftmost(pp, p)?;
                            self.path.pop();
                            self.x = self.live_children(pp)?[0];
                            Case::B31
                        } else {
                            self.remove_leftmost(p, x)?;
                            self.path.pop();
                            self.x = p;
                            jump = true;
                            Case::B32
                        }
                    }
                    2 => {
                        self.merge_into(p, siblings[1])?;
                        self.path.pop();
                        self.x = p;
                        Case::B2
                    }
                    _ => {
                        self.remove_leftmost(p, x)?;
                        self.path.pop();
                        self.x = p;
                        Case::B1
                    }
                }
            }
            AlgState::J => {
                let pp = self.grandparent_of_x().ok_or_else(|| {
                    Error::Invariant("jump state reached a child of the root".into())
                })?;
                if self.live_count(pp)? > 1 {
                    self.remove_leftmost(pp, p)?;
                    self.path.pop();
                    self.x = self.live_children(pp)?[0];
                    Case::J2
                } else {
                    self.remove_leftmost(p, x)?;
                    self.path.pop();
                    self.x = p;
                    jump = true;
                    Case::J1
                }
            }
        };
        self.state = if jump { AlgState::J } else { self.state_of(self.x)? };
        Ok(case)
    }

    /// The current live tree, relabelled canonically, and the image of `x`.
    /// Expands the whole remaining tree, so only meant for finite sources.
    pub fn live_tree(&mut self) -> Result<(ColouredPlaneTree, NodeId)> {
        let root = self.src.root();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut lists: Vec<Vec<usize>> = Vec::new();
        let mut colours = Vec::new();
        let mut stack = vec![root];
        ids.insert(root, 0);
        lists.push(Vec::new());
        colours.push(self.colour_of(root));
        while let Some(v) = stack.pop() {
            let me = ids[&v];
            let kids = match self.overlay.get(&v) {
                Some(l) => l.live().to_vec(),
                None => self.src.children(v)?,
            };
            for &c in &kids {
                let id = lists.len();
                ids.insert(c, id);
                lists.push(Vec::new());
                colours.push(self.colour_of(c));
                lists[me].push(id);
                stack.push(c);
            }
        }
        let (tree, map) = ColouredPlaneTree::from_children(0, &lists, &colours)?;
        Ok((tree, map[ids[&self.x]]))
    }
}

/// The recorded run of the algorithm from one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicTrace {
    /// Input states `s_0 … s_{n-1}`.
    pub states: Vec<AlgState>,
    pub cases: Vec<Case>,
    pub start_height: usize,
    pub distance: usize,
}

impl GeodesicTrace {
    pub fn jumps(&self) -> usize {
        self.states.iter().filter(|&&s| s == AlgState::J).count()
    }

    /// `distance = start_height - #jumps`, no jump at either end, and one
    /// state per unit of height.
    pub fn distance_identity_holds(&self) -> bool {
        self.states.len() == self.start_height
            && self.distance == self.start_height - self.jumps()
            && self.states.first() != Some(&AlgState::J)
            && self.states.last() != Some(&AlgState::J)
    }

    /// One line per step: `i state height case`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, (s, c)) in self.states.iter().zip(&self.cases).enumerate() {
            out.push_str(&format!("{i} {s} {} {c}\n", self.start_height - i));
        }
        out
    }
}

/// Runs the algorithm from `x` on any tree source until the root is reached.
pub fn trace_source<S: TreeSource>(src: S, x: usize) -> Result<GeodesicTrace> {
    run(AlgTriple::new(src, x)?).map(|(t, _)| t)
}

fn run<S: TreeSource>(mut t: AlgTriple<S>) -> Result<(GeodesicTrace, S)> {
    let start_height = t.height();
    let mut states = Vec::with_capacity(start_height);
    let mut cases = Vec::with_capacity(start_height);
    while !t.is_done() {
        states.push(t.state());
        cases.push(t.step()?);
    }
    let distance = states.iter().filter(|&&s| s != AlgState::J).count();
    let trace = GeodesicTrace { states, cases, start_height, distance };
    if trace.states.last() == Some(&AlgState::J) {
        return Err(Error::Invariant("trace ended in the jump state".into()));
    }
    Ok((trace, t.into_source()))
}

pub fn initial_triple(tree: &ColouredPlaneTree, x: NodeId) -> Result<AlgTriple<&ColouredPlaneTree>> {
    tree.check(x.0)?;
    if !tree.is_well_bicoloured() {
        return Err(Error::NotWellBicoloured);
    }
    AlgTriple::new(tree, x.0)
}

pub fn trace(tree: &ColouredPlaneTree, x: NodeId) -> Result<GeodesicTrace> {
    run(initial_triple(tree, x)?).map(|(t, _)| t)
}

/// `d_M(x, root)` in `Ψ(tree)`.
pub fn distance_to_root(tree: &ColouredPlaneTree, x: NodeId) -> Result<usize> {
    trace(tree, x).map(|t| t.distance)
}

/// The moves allowed from `v`: to `p(v)`, and to `r(v)` if white or `t(v)`
/// if black.
fn restricted_moves(tree: &ColouredPlaneTree, v: NodeId) -> impl Iterator<Item = NodeId> {
    let side = match tree.colour(v) {
        Colour::White => tree.rightmost_child(v),
        Colour::Black => tree.next_unrelated(v),
    };
    tree.parent(v).into_iter().chain(side)
}

/// Length of a shortest path from `x` to the root using only the moves
/// `p`, `r` (white vertices) and `p`, `t` (black vertices).
pub fn restricted_move_distance(tree: &ColouredPlaneTree, x: NodeId) -> Result<usize> {
    tree.check(x.0)?;
    if !tree.is_well_bicoloured() {
        return Err(Error::NotWellBicoloured);
    }
    let mut dist = vec![usize::MAX; tree.len()];
    let mut queue = VecDeque::new();
    dist[x.0] = 0;
    queue.push_back(x);
    while let Some(v) = queue.pop_front() {
        if v == tree.root() {
            return Ok(dist[v.0]);
        }
        for w in restricted_moves(tree, v) {
            if dist[w.0] == usize::MAX {
                dist[w.0] = dist[v.0] + 1;
                queue.push_back(w);
            }
        }
    }
    Err(Error::Invariant(format!("root unreachable from {x} by restricted moves")))
}

/// [`restricted_move_distance`] for every vertex at once, by searching
/// backwards from the root.
pub fn restricted_move_distances(tree: &ColouredPlaneTree) -> Result<Vec<usize>> {
    if !tree.is_well_bicoloured() {
        return Err(Error::NotWellBicoloured);
    }
    let n = tree.len();
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in tree.nodes() {
        for w in restricted_moves(tree, v) {
            back[w.0].push(v.0);
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[0] = 0;
    queue.push_back(0);
    while let Some(v) = queue.pop_front() {
        for &u in &back[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(dist)
}
