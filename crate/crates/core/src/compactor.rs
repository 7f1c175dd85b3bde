//! The Compression Unit: stable stream compaction of `x` under mask `y`.
//!
//! Two models are provided. [`compact`] is the behavioural definition. The
//! structural model is an `N` x `N` grid of Routing Units ([`RuGrid`]); each
//! stage is a row of `N` RUs, stage `s` consumes the down-bus of stage `s-1`,
//! and the `left_out` of cell `j` is wired to the `right_in` of cell `j-1`.
//! The right input of the last cell is tied to zero.
//!
//! [`derive_controls`] schedules the grid as an odd-even transposition
//! network over the keep/drop flags: on stage `s` the pairs `(j, j+1)` with
//! `j = s mod 2` are examined, and a dropped slot followed by a kept one
//! swaps (the dropped cell takes from the right, the kept cell gives to the
//! left). Only strict drop-before-keep pairs move, so kept values never
//! reorder, and `N` stages sort any mask. On stage 0 every dropped cell also
//! takes from the right, which overwrites all dropped values with zero.

use std::fmt;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CompactError {
    #[error("value vector has {x} elements but mask has {y}")]
    LengthMismatch { x: usize, y: usize },

    #[error("compaction needs at least one element")]
    Empty,

    #[error("routing grid is {grid} wide but the input has {input} elements")]
    GridMismatch { grid: usize, input: usize },
}

/// Values `x` and the keep-mask `y` presented to a CU.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedVector<T> {
    x: Vec<T>,
    y: Vec<bool>,
}

impl<T> MaskedVector<T> {
    pub fn new(x: Vec<T>, y: Vec<bool>) -> Result<Self, CompactError> {
        if x.len() != y.len() {
            return Err(CompactError::LengthMismatch {
                x: x.len(),
                y: y.len(),
            });
        }
        if x.is_empty() {
            return Err(CompactError::Empty);
        }
        Ok(Self { x, y })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.x
    }

    pub fn mask(&self) -> &[bool] {
        &self.y
    }

    pub fn kept(&self) -> usize {
        self.y.iter().filter(|&&b| b).count()
    }
}

/// Kept values packed to the left in their original order, zero-filled to `N`.
pub fn compact<T: Copy + Default>(mv: &MaskedVector<T>) -> Vec<T> {
    let mut out: Vec<T> =
        mv.x.iter()
            .zip(&mv.y)
            .filter_map(|(&v, &keep)| keep.then_some(v))
            .collect();
    out.resize(mv.len(), T::default());
    out
}

/// Control lines of one Routing Unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RuControl {
    pub cin1: bool,
    pub cin2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuAction {
    UpToDown,
    RightToDown,
    UpToLeft,
}

impl RuControl {
    pub const PASS: Self = Self::new(false, false);
    pub const TAKE_RIGHT: Self = Self::new(true, false);
    pub const GIVE_LEFT: Self = Self::new(false, true);

    pub const fn new(cin1: bool, cin2: bool) -> Self {
        Self { cin1, cin2 }
    }

    /// `cin2` is ignored when `cin1` is set.
    pub fn action(self) -> RuAction {
        match (self.cin1, self.cin2) {
            (false, false) => RuAction::UpToDown,
            (true, _) => RuAction::RightToDown,
            (false, true) => RuAction::UpToLeft,
        }
    }

    /// `.` pass, `R` take right, `L` give left.
    pub fn glyph(self) -> char {
        match self.action() {
            RuAction::UpToDown => '.',
            RuAction::RightToDown => 'R',
            RuAction::UpToLeft => 'L',
        }
    }
}

/// One RU: returns `(down_out, left_out)`. The output not selected by the
/// control pair is driven to zero.
pub fn ru_route<T: Copy + Default>(up_in: T, right_in: T, c: RuControl) -> (T, T) {
    match c.action() {
        RuAction::UpToDown => (up_in, T::default()),
        RuAction::RightToDown => (right_in, T::default()),
        RuAction::UpToLeft => (T::default(), up_in),
    }
}

/// Control settings for every RU of an `N`-wide, `N`-stage CU.
#[derive(Clone, PartialEq, Eq)]
pub struct RuGrid {
    width: usize,
    stages: Vec<Vec<RuControl>>,
}

impl RuGrid {
    pub fn new(stages: Vec<Vec<RuControl>>) -> Result<Self, CompactError> {
        let width = stages.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(CompactError::Empty);
        }
        if let Some(bad) = stages.iter().find(|s| s.len() != width) {
            return Err(CompactError::GridMismatch {
                grid: width,
                input: bad.len(),
            });
        }
        Ok(Self { width, stages })
    }

    /// Every cell passes its input straight down.
    pub fn identity(width: usize) -> Self {
        Self {
            width,
            stages: vec![vec![RuControl::PASS; width]; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn stages(&self) -> &[Vec<RuControl>] {
        &self.stages
    }

    pub fn cell(&self, stage: usize, col: usize) -> RuControl {
        self.stages[stage][col]
    }
}

impl fmt::Display for RuGrid {
    /// One line per stage; `.` pass, `R` take right, `L` give left.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stage in &self.stages {
            let line: String = stage.iter().map(|c| c.glyph()).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RuGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuGrid {}x{}\n{}", self.stages.len(), self.width, self)
    }
}

pub fn derive_controls(y: &[bool]) -> RuGrid {
    let n = y.len();
    let mut kept = y.to_vec();
    let mut stages = Vec::with_capacity(n);
    for s in 0..n {
        let mut stage = vec![RuControl::PASS; n];
        if s == 0 {
            for (cell, &k) in stage.iter_mut().zip(&kept) {
                if !k {
                    *cell = RuControl::TAKE_RIGHT;
                }
            }
        }
        let mut j = s % 2;
        while j + 1 < n {
            if !kept[j] && kept[j + 1] {
                stage[j] = RuControl::TAKE_RIGHT;
                stage[j + 1] = RuControl::GIVE_LEFT;
                kept.swap(j, j + 1);
            }
            j += 2;
        }
        stages.push(stage);
    }
    RuGrid { width: n, stages }
}

fn eval_stage<T: Copy + Default>(up: &[T], controls: &[RuControl], down: &mut [T]) {
    let n = up.len();
    // left_out depends only on up_in and the controls, so resolve the
    // lateral wires right-to-left in a single sweep.
    let mut right_in = T::default();
    for j in (0..n).rev() {
        let (d, l) = ru_route(up[j], right_in, controls[j]);
        down[j] = d;
        right_in = l;
    }
}

/// Evaluates the RU grid stage by stage; the last down-bus is the result.
pub fn cu_structural<T: Copy + Default>(
    mv: &MaskedVector<T>,
    grid: &RuGrid,
) -> Result<Vec<T>, CompactError> {
    if grid.width != mv.len() {
        return Err(CompactError::GridMismatch {
            grid: grid.width,
            input: mv.len(),
        });
    }
    let mut bus = mv.x.clone();
    let mut next = vec![T::default(); bus.len()];
    for stage in &grid.stages {
        eval_stage(&bus, stage, &mut next);
        std::mem::swap(&mut bus, &mut next);
    }
    Ok(bus)
}

/// Down-bus after every stage, for inspection.
pub fn cu_trace<T: Copy + Default>(
    mv: &MaskedVector<T>,
    grid: &RuGrid,
) -> Result<Vec<Vec<T>>, CompactError> {
    if grid.width != mv.len() {
        return Err(CompactError::GridMismatch {
            grid: grid.width,
            input: mv.len(),
        });
    }
    let mut buses = Vec::with_capacity(grid.stages.len());
    let mut bus = mv.x.clone();
    for stage in &grid.stages {
        let mut next = vec![T::default(); bus.len()];
        eval_stage(&bus, stage, &mut next);
        buses.push(next.clone());
        bus = next;
    }
    Ok(buses)
}

/// Compacts through the structural model with freshly derived controls.
pub fn compact_structural<T: Copy + Default>(mv: &MaskedVector<T>) -> Vec<T> {
    let grid = derive_controls(&mv.y);
    cu_structural(mv, &grid).expect("derived grid matches input width")
}
