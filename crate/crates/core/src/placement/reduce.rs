//! The four-row board built from variable and clause sections.

use super::sat::{Formula1in3, FormulaError};
use super::PlacementInstance;
use crate::board::{Board, Label};
use crate::hex::HexCoord;
use std::collections::BTreeMap;

const VARIABLE_DATA: &str = include_str!("../../data/variable_gadget.txt");
const CLAUSE_DATA: &str = include_str!("../../data/clause_gadget.txt");

pub const VARIABLE_WIDTH: i32 = 8;
pub const CLAUSE_WIDTH: i32 = 12;
pub const HEIGHT: i32 = 4;

/// A rectangular section in brick layout, one character per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub rows: Vec<Vec<char>>,
}

impl Template {
    fn parse(text: &str) -> Template {
        let rows: Vec<Vec<char>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.chars().collect())
            .collect();
        assert_eq!(rows.len(), HEIGHT as usize);
        Template { rows }
    }

    pub fn width(&self) -> i32 {
        self.rows[0].len() as i32
    }

    /// Cells and template characters, shifted right by `col0` columns.
    pub fn cells(&self, col0: i32) -> Vec<(HexCoord, char)> {
        let mut v = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &ch) in row.iter().enumerate() {
                v.push((brick(col0 + c as i32, r as i32), ch));
            }
        }
        v
    }
}

/// Column and row of the brick layout to axial coordinates.
pub fn brick(col: i32, row: i32) -> HexCoord {
    HexCoord::new(col - row.div_euclid(2), row)
}

/// Brick column of an axial cell.
pub fn column(c: HexCoord) -> i32 {
    c.q + c.r.div_euclid(2)
}

pub fn variable_template() -> Template {
    Template::parse(VARIABLE_DATA)
}

pub fn clause_template() -> Template {
    Template::parse(CLAUSE_DATA)
}

fn color(i: usize) -> Label {
    Label::Color(i as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Variable(usize),
    Clause(usize),
}

fn layout(f: &Formula1in3) -> Vec<(i32, Section)> {
    let n = f.variables.len();
    let mut v: Vec<(i32, Section)> = (0..n).map(|i| (VARIABLE_WIDTH * i as i32, Section::Variable(i))).collect();
    let base = VARIABLE_WIDTH * n as i32;
    v.extend((0..f.clauses.len()).map(|j| (base + CLAUSE_WIDTH * j as i32, Section::Clause(j))));
    v
}

fn section_at(f: &Formula1in3, col: i32) -> Option<(i32, Section)> {
    layout(f).into_iter().find(|&(start, s)| {
        let w = match s {
            Section::Variable(_) => VARIABLE_WIDTH,
            Section::Clause(_) => CLAUSE_WIDTH,
        };
        col >= start && col < start + w
    })
}

/// Variable i gets color i, then V = n and F = n + 1.
pub fn reduce_1in3sat(f: &Formula1in3) -> Result<PlacementInstance, FormulaError> {
    f.validate()?;
    let n = f.variables.len();
    let m = f.clauses.len();
    let (v, ff) = (color(n), color(n + 1));
    let vt = variable_template();
    let ct = clause_template();
    let mut cells = Vec::new();
    for (start, s) in layout(f) {
        match s {
            Section::Variable(i) => {
                for (c, ch) in vt.cells(start) {
                    let l = match ch {
                        'x' => color(i),
                        'V' => v,
                        _ => ff,
                    };
                    cells.push((c, l));
                }
            }
            Section::Clause(j) => {
                let [x, y, z] = f.clauses[j];
                for (c, ch) in ct.cells(start) {
                    let l = match ch {
                        'X' => color(x),
                        'Y' => color(y),
                        'Z' => color(z),
                        'V' => v,
                        _ => ff,
                    };
                    cells.push((c, l));
                }
            }
        }
    }
    let width = VARIABLE_WIDTH * n as i32 + CLAUSE_WIDTH * m as i32;
    cells.push((brick(width, HEIGHT - 1), ff));
    let board = Board::with_labels(cells).expect("sections form one board");
    let mut budget = Vec::new();
    for i in 0..n {
        let x = color(i);
        budget.extend([((x, x), 3), ((v, v), 3), ((x, v), 6), ((ff, ff), 10)]);
    }
    for c in &f.clauses {
        let [a, b, d] = c.map(color);
        budget.extend([((a, b), 1), ((b, d), 1), ((a, d), 1), ((ff, ff), 12)]);
    }
    budget.push(((v, v), (5 * m - 2 * n) as u32));
    Ok(PlacementInstance::new(board, budget))
}

/// Structural checks on a generated instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub color_counts: bool,
    pub single_v_left: bool,
    pub disjoint: bool,
    pub failures: Vec<String>,
}

impl ReductionReport {
    pub fn ok(&self) -> bool {
        self.color_counts && self.single_v_left && self.disjoint
    }
}

impl std::fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "color_counts: {}", self.color_counts)?;
        writeln!(f, "single_v_left: {}", self.single_v_left)?;
        write!(f, "disjoint: {}", self.disjoint)?;
        for m in &self.failures {
            write!(f, "\nfailure: {m}")?;
        }
        Ok(())
    }
}

pub fn verify_reduction(inst: &PlacementInstance, f: &Formula1in3) -> ReductionReport {
    let mut rep = ReductionReport::default();
    let n = f.variables.len();
    let (v, ff) = (color(n), color(n + 1));
    let b = &inst.board;

    match inst.validate() {
        Ok(()) if inst.color_surplus().keys().next() == Some(&ff) => rep.color_counts = true,
        Ok(()) => rep.failures.push("the surplus cell is not an F cell".into()),
        Err(e) => rep.failures.push(e.to_string()),
    }

    // components of non-F cells, each tagged with the sections it touches
    let mut comp = vec![usize::MAX; b.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..b.len() {
        if comp[s] != usize::MAX || b.label_at(s) == ff {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in b.neighbors(x) {
                if comp[y] == usize::MAX && b.label_at(y) != ff {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        comps.push(members);
    }
    let mut per_section: BTreeMap<i32, usize> = BTreeMap::new();
    rep.disjoint = true;
    for members in &comps {
        let secs: Vec<Option<(i32, Section)>> = members.iter().map(|&x| section_at(f, column(b.cell(x)))).collect();
        if secs.iter().any(|s| s.is_none() || *s != secs[0]) {
            rep.disjoint = false;
            rep.failures.push(format!("colored cells around {} span several sections", b.cell(members[0])));
        } else if let Some((start, _)) = secs[0] {
            *per_section.entry(start).or_insert(0) += members.len();
        }
    }
    let colored = |t: &Template| t.rows.iter().flatten().filter(|&&c| c != '.').count();
    let (vc, cc) = (colored(&variable_template()), colored(&clause_template()));
    for (start, s) in layout(f) {
        let want = match s {
            Section::Variable(_) => vc,
            Section::Clause(_) => cc,
        };
        let got = per_section.get(&start).copied().unwrap_or(0);
        if got != want {
            rep.disjoint = false;
            rep.failures.push(format!("section at column {start} has {got} colored cells, expected {want}"));
        }
    }

    // the left part of each clause section holds exactly one V
    rep.single_v_left = true;
    for (start, s) in layout(f) {
        let Section::Clause(j) = s else { continue };
        let left = (0..b.len())
            .filter(|&x| b.label_at(x) != ff && section_at(f, column(b.cell(x))).map(|p| p.0) == Some(start))
            .min_by_key(|&x| (column(b.cell(x)), b.cell(x).r));
        let ok = left.is_some_and(|x| comps[comp[x]].iter().filter(|&&y| b.label_at(y) == v).count() == 1);
        if !ok {
            rep.single_v_left = false;
            rep.failures.push(format!("clause {j}: left part does not hold a single V cell"));
        }
    }
    rep
}

/// Part of a clause section used as a stand-alone gadget board.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClausePart {
    /// The small triangle on the left with one F cell beside it.
    Left,
    /// The large triangle on the right with one F cell beside it.
    Right,
    /// The whole section with its F filler and one extra F cell.
    Whole,
}

/// Variable gadget ring around its four inner F cells, plus one outer F
/// cell. Colors: x = 0, V = 1, F = 2.
pub fn variable_gadget_board() -> Board {
    let t = variable_template();
    let cells = t.rows.iter().enumerate().flat_map(|(r, row)| {
        row.iter().enumerate().filter_map(move |(c, &ch)| {
            let (c, r) = (c as i32, r as i32);
            let l = match ch {
                'x' => color(0),
                'V' => color(1),
                _ if r == 1 && (c == 0 || (2..=5).contains(&c)) => color(2),
                _ => return None,
            };
            Some((brick(c, r), l))
        })
    });
    Board::with_labels(cells).expect("gadget is connected")
}

/// Clause gadget boards. Colors: X = 0, Y = 1, Z = 2, V = 3, F = 4.
pub fn clause_gadget_board(part: ClausePart) -> Board {
    let t = clause_template();
    let mut cells = Vec::new();
    for (r, row) in t.rows.iter().enumerate() {
        for (c, &ch) in row.iter().enumerate() {
            let (c, r) = (c as i32, r as i32);
            let keep = match part {
                ClausePart::Left => c <= 3 && ch != '.',
                ClausePart::Right => c >= 4 && ch != '.',
                ClausePart::Whole => true,
            };
            if keep {
                let l = match ch {
                    'X' => color(0),
                    'Y' => color(1),
                    'Z' => color(2),
                    'V' => color(3),
                    _ => color(4),
                };
                cells.push((brick(c, r), l));
            }
        }
    }
    let extra = match part {
        ClausePart::Left => brick(0, 1),
        ClausePart::Right => brick(11, 3),
        ClausePart::Whole => brick(CLAUSE_WIDTH, HEIGHT - 1),
    };
    cells.push((extra, color(4)));
    Board::with_labels(cells).expect("gadget is connected")
}

/// Colored pieces a clause receives when its variable in role `k` (0..3)
/// is the true one, in the colors of [`clause_gadget_board`].
pub fn clause_option(k: usize) -> Vec<((Label, Label), u32)> {
    let v = color(3);
    let mut out = vec![((color(k), v), 2), ((v, v), 5)];
    for o in (0..3).filter(|&o| o != k) {
        out.push(((color(o), color(o)), 1));
    }
    out.extend([((color(0), color(1)), 1), ((color(1), color(2)), 1), ((color(0), color(2)), 1)]);
    out
}
