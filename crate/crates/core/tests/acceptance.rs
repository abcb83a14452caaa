//! Acceptance suite: one PASS/FAIL line per criterion.
//! Run `cargo test -p gourds-core --test acceptance`; pass criterion numbers
//! as arguments to run a subset.

use gourds_core::board::{enumerate_proper_boards, validate_proper, Board, Label};
use gourds_core::fixtures::{comb, comb_cycle, star_of_david, triangle, two_lobe};
use gourds_core::generate::{random_configuration, random_proper_board};
use gourds_core::hamilton::{
    balanced_split, dual_tree, find_hamiltonian, repair_seven_runs, HamiltonianCycle,
};
use gourds_core::placement::{
    brute_1in3sat, clause_gadget_board, clause_option, enumerate_placements, is_placement, pair, reduce_1in3sat,
    solve_placement, variable_gadget_board, verify_reduction, ClausePart, Formula1in3, PlacementInstance,
};
use gourds_core::puzzle::{
    assigned_target, gourd_positions, reach_count, reach_states, verify_sequence, Equivalence, State,
};
use gourds_core::solver::{displacement_lower_bound, Ring, Solver, Strategy};
use gourds_core::{Configuration, Gourd, HexCoord, OracleMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn h(q: i32, r: i32) -> HexCoord {
    HexCoord::new(q, r)
}

// 1 ------------------------------------------------------------------------

fn triangle_positions() -> Outcome {
    let c = Configuration {
        gourds: vec![Gourd::new(h(0, 0), Label::Color(1), h(1, 0), Label::Color(2))],
        empty: h(0, 1),
    };
    let pivot = reach_states(&triangle(), &c, OracleMode::PivotRules).map_err(|e| e.to_string())?.len();
    let sharp = reach_states(&triangle(), &c, OracleMode::SharpTurnRules).map_err(|e| e.to_string())?.len();
    ensure(pivot == 6 && sharp == 3, || format!("pivot {pivot}, sharp {sharp}"))?;
    Ok(format!("pivot rules {pivot} positions, sharp-turn rules {sharp}"))
}

// 2 ------------------------------------------------------------------------

fn star() -> Outcome {
    let b = star_of_david();
    let rep = validate_proper(&b);
    ensure(!rep.proper && rep.is_star_of_david, || format!("validator says proper:\n{rep}"))?;
    // every tip paired with one ring neighbor, center empty
    let tips = [((1, 1), (0, 1)), ((2, -1), (1, 0)), ((1, -2), (1, -1)), ((-1, -1), (0, -1)), ((-2, 1), (-1, 0)), ((-1, 2), (-1, 1))];
    let gourds = tips
        .iter()
        .enumerate()
        .map(|(k, &(t, r))| Gourd::new(h(t.0, t.1), Label::Number(2 * k as u32 + 1), h(r.0, r.1), Label::Number(2 * k as u32 + 2)))
        .collect();
    let c = Configuration { gourds, empty: h(0, 0) };
    let pos = gourd_positions(&b, &c, OracleMode::PivotRules).map_err(|e| e.to_string())?;
    ensure(pos.iter().all(|p| p.1 == 3), || format!("unordered positions per gourd: {pos:?}"))?;
    Ok(format!(
        "improper; 6 gourds, unordered positions {:?}, oriented {:?}",
        pos.iter().map(|p| p.1).collect::<Vec<_>>(),
        pos.iter().map(|p| p.0).collect::<Vec<_>>()
    ))
}

// 3 ------------------------------------------------------------------------

/// All perfect matchings of `cells` (independent of the engine).
fn matchings(b: &Board, free: &mut Vec<bool>, acc: &mut Vec<(HexCoord, HexCoord)>, out: &mut Vec<Vec<(HexCoord, HexCoord)>>) {
    let Some(i) = free.iter().position(|&f| f) else {
        out.push(acc.clone());
        return;
    };
    free[i] = false;
    let ci = b.cell(i);
    for d in ci.neighbors() {
        if let Some(j) = b.index_of(d) {
            if free[j] {
                free[j] = false;
                acc.push((ci, d));
                matchings(b, free, acc, out);
                acc.pop();
                free[j] = true;
            }
        }
    }
    free[i] = true;
}

fn near_perfect_matchings(b: &Board) -> Vec<(HexCoord, Vec<(HexCoord, HexCoord)>)> {
    let mut out = Vec::new();
    for e in 0..b.len() {
        let mut free = vec![true; b.len()];
        free[e] = false;
        let mut ms = Vec::new();
        matchings(b, &mut free, &mut Vec::new(), &mut ms);
        out.extend(ms.into_iter().map(|m| (b.cell(e), m)));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn numbered(empty: HexCoord, pairs: &[(HexCoord, HexCoord)], perm: &[usize], flips: u32) -> Configuration {
    let gourds = (0..pairs.len())
        .map(|k| {
            let (mut a, mut c) = pairs[perm[k]];
            if flips >> k & 1 == 1 {
                std::mem::swap(&mut a, &mut c);
            }
            Gourd::new(a, Label::Number(2 * k as u32 + 1), c, Label::Number(2 * k as u32 + 2))
        })
        .collect();
    Configuration { gourds, empty }
}

fn all_configurations(b: &Board) -> Vec<Configuration> {
    let n = b.len() / 2;
    let perms = permutations(n);
    let mut out = Vec::new();
    for (e, m) in near_perfect_matchings(b) {
        for p in &perms {
            for f in 0..1u32 << n {
                out.push(numbered(e, &m, p, f));
            }
        }
    }
    out
}

/// Aligned configurations along `h` with E at position `p`.
fn aligned(h: &HamiltonianCycle, p: usize, perm: &[usize], flips: u32) -> Configuration {
    let l = h.len();
    let pairs: Vec<(HexCoord, HexCoord)> =
        (0..l / 2).map(|k| (h.order[(p + 1 + 2 * k) % l], h.order[(p + 2 + 2 * k) % l])).collect();
    numbered(h.order[p], &pairs, perm, flips)
}

fn universality() -> Outcome {
    let mut boards = 0;
    let mut literal = 0u64;
    let mut phase_checks = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for size in [3, 5, 7, 9] {
        for b in enumerate_proper_boards(size) {
            boards += 1;
            let n = size / 2;
            let configs = all_configurations(&b);
            let reach = reach_count(&b, &configs[0], OracleMode::PivotRules, Equivalence::Identity)
                .map_err(|e| e.to_string())?;
            ensure(reach == configs.len(), || {
                format!("{size}-cell board: oracle reaches {reach} of {} configurations", configs.len())
            })?;
            let solver = Solver::new(&b).map_err(|e| e.to_string())?;
            let small = Solver::new(&b).map_err(|e| e.to_string())?.with_base(5);
            let solve = |s: &Configuration, t: &Configuration| -> Result<(), String> {
                for (sv, st) in [(&solver, Strategy::Cubic), (&small, Strategy::Quadratic)] {
                    let plan = sv.solve(s, t, st).map_err(|e| format!("{size}-cell board: {e}"))?;
                    let end = verify_sequence(&b, s, &plan.moves()).map_err(|e| e.to_string())?;
                    ensure(&end == t, || format!("{size}-cell board: plan ends elsewhere"))?;
                }
                Ok(())
            };
            if size <= 7 {
                for s in &configs {
                    for t in &configs {
                        solve(s, t)?;
                        literal += 1;
                    }
                }
                continue;
            }
            // phases one and three for every configuration
            let h = solver.cycle().clone();
            for c in &configs {
                let (moves, al) = solver.align(c).map_err(|e| e.to_string())?;
                let end = verify_sequence(&b, c, &moves).map_err(|e| e.to_string())?;
                let back: Vec<_> = moves.iter().rev().map(|m| m.inverse()).collect();
                let again = verify_sequence(&b, &end, &back).map_err(|e| e.to_string())?;
                ensure(&again == c && al.ring.len() == n, || "phase one replay mismatch".into())?;
                let expect = aligned(&h, al.empty_index, &al.ring.iter().map(|r| r.0).collect::<Vec<_>>(), 0);
                let placed: BTreeSet<_> = end.gourds.iter().map(pair_of).collect();
                let want: BTreeSet<_> = expect.gourds.iter().map(pair_of).collect();
                ensure(placed == want && end.empty == expect.empty, || "phase one left gourds off the cycle".into())?;
                phase_checks += 1;
            }
            // phase two from every canonical aligned state to every aligned
            // state; sorting renames gourds by ring slot first, so this covers
            // every ordered pair of aligned states
            let ring = Ring::new(h.order.iter().map(|&c| b.index_of(c).unwrap() as u32).collect(), b.len());
            let perms = permutations(n);
            let ident: Vec<usize> = (0..n).collect();
            for p1 in 0..size {
                let from = aligned(&h, p1, &ident, 0);
                let names = ring.slot_names(&State::from_config(&b, &from).map_err(|e| e.to_string())?);
                ensure(names.iter().enumerate().all(|(k, &(j, swap))| j as usize == k && !swap), || {
                    "canonical source is not in slot order".into()
                })?;
                for p2 in 0..size {
                    for perm in &perms {
                        for f in 0..1u32 << n {
                            let to = aligned(&h, p2, perm, f);
                            for (sv, st) in [(&solver, Strategy::Cubic), (&small, Strategy::Quadratic)] {
                                let moves = sv.sort(&from, &to, st).map_err(|e| e.to_string())?;
                                let end = verify_sequence(&b, &from, &moves).map_err(|e| e.to_string())?;
                                ensure(end == to, || "phase two missed its target".into())?;
                            }
                            phase_checks += 1;
                        }
                    }
                }
            }
            // literal solves for random pairs on top
            for _ in 0..2000 {
                let s = &configs[rng.gen_range(0..configs.len())];
                let t = &configs[rng.gen_range(0..configs.len())];
                solve(s, t)?;
                literal += 1;
            }
        }
    }
    Ok(format!("{boards} boards, {literal} literal pairs, {phase_checks} phase checks, oracle connected everywhere"))
}

fn pair_of(g: &Gourd) -> (HexCoord, HexCoord) {
    (g.end_a.min(g.end_b), g.end_a.max(g.end_b))
}

// 4 ------------------------------------------------------------------------

fn dual_trees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_run = 0;
    let mut checked = 0;
    let mut check = |b: &Board, h0: &HamiltonianCycle| -> Result<(), String> {
        let n = b.len();
        for (tag, h) in [("raw", h0.clone()), ("repaired", repair_seven_runs(b, h0))] {
            ensure(h.is_valid_for(b), || format!("{tag} cycle invalid on {n} cells"))?;
            let d = dual_tree(&h);
            let hist = d.degree_histogram();
            ensure(d.is_tree(), || format!("{tag} dual of {n} cells is not a tree"))?;
            ensure(d.len() == n - 2, || format!("{n} cells: {} dual nodes", d.len()))?;
            ensure(hist[1] == hist[3] + 2 || n == 3, || format!("{n} cells: degrees {hist:?}"))?;
            ensure(d.max_sides_crossed() <= 4, || format!("{n} cells: a cell has 5+ sides crossed"))?;
            if tag == "repaired" {
                let run = d.longest_degree3_run().len();
                worst_run = worst_run.max(run);
                ensure(run < 7, || format!("{n} cells: degree-3 run of {run} after repair"))?;
                if let Some(s) = balanced_split(&d) {
                    let bound = d.len() as f64 / 96.0 - 7.0;
                    ensure(s.h1.len() % 2 == 1 && s.h2.len() % 2 == 1, || format!("{n} cells: even split"))?;
                    ensure(s.m1.min(s.m2) as f64 >= bound, || format!("{n} cells: unbalanced split"))?;
                }
            }
        }
        checked += 1;
        Ok(())
    };
    for i in 0..220 {
        let size = 7 + 2 * rng.gen_range(0..=197);
        let b = random_proper_board(size, rng.gen_range(0.0..1.0), 1000 + i);
        let h = find_hamiltonian(&b).map_err(|e| e.to_string())?;
        check(&b, &h)?;
    }
    for k in [6, 10, 20, 40] {
        check(&comb(k), &comb_cycle(k))?;
    }
    Ok(format!("{checked} boards, longest degree-3 run after repair {worst_run}"))
}

// 5 ------------------------------------------------------------------------

/// R² of the least-squares fit y = a x² + b x + c.
fn quadratic_r2(xs: &[f64], ys: &[f64]) -> f64 {
    let mut m = [[0.0f64; 4]; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let row = [x * x, x, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            m[i][3] += row[i] * y;
        }
    }
    for c in 0..3 {
        let p = (c..3).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, p);
        let pivot = m[c];
        for (r, row) in m.iter_mut().enumerate() {
            if r != c {
                let f = row[c] / pivot[c];
                for (x, p) in row.iter_mut().zip(pivot).skip(c) {
                    *x -= f * p;
                }
            }
        }
    }
    let coef: Vec<f64> = (0..3).map(|i| m[i][3] / m[i][i]).collect();
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let fit = coef[0] * x * x + coef[1] * x + coef[2];
        ss_res += (y - fit).powi(2);
        ss_tot += (y - mean).powi(2);
    }
    1.0 - ss_res / ss_tot
}

fn scaling() -> Outcome {
    let (mut xs, mut lbs, mut ratios) = (Vec::new(), Vec::new(), Vec::new());
    for n in (8..=40).step_by(4) {
        let (b, s, t) = two_lobe(n);
        let lb = displacement_lower_bound(&b, &s, &assigned_target(&s, &t).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let plan = Solver::new(&b)
            .and_then(|sv| sv.solve(&s, &t, Strategy::Quadratic))
            .map_err(|e| format!("n = {n}: {e}"))?;
        let end = verify_sequence(&b, &s, &plan.moves()).map_err(|e| e.to_string())?;
        ensure(gourds_core::puzzle::same_labels(&end, &t), || format!("n = {n}: plan misses the target"))?;
        ensure(plan.len() as u64 >= lb, || format!("n = {n}: {} moves below the bound {lb}", plan.len()))?;
        xs.push(n as f64);
        lbs.push(lb as f64);
        ratios.push(plan.len() as f64 / (n * n) as f64);
    }
    let r2 = quadratic_r2(&xs, &lbs);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    ensure(r2 >= 0.99, || format!("lower bound fit R² = {r2:.4}"))?;
    ensure(hi / lo <= 4.0, || format!("moves/n² spread {:.3}", hi / lo))?;
    Ok(format!("lower bound R² = {r2:.4}, moves/n² in [{lo:.2}, {hi:.2}], spread {:.2}", hi / lo))
}

// 6 ------------------------------------------------------------------------

fn agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = [0usize; 3];
    for i in 0..100u64 {
        let size = 7 + 2 * rng.gen_range(0..=47);
        let b = random_proper_board(size, rng.gen_range(0.0..1.0), 6000 + i);
        let s = random_configuration(&b, 30 * size, 2 * i);
        let t = random_configuration(&b, 30 * size, 2 * i + 1);
        let sv = Solver::new(&b).map_err(|e| e.to_string())?;
        let runs = [
            (sv.clone(), Strategy::Cubic),
            (sv.clone(), Strategy::Quadratic),
            (sv.with_base(11), Strategy::Quadratic),
        ];
        for (k, (solver, st)) in runs.iter().enumerate() {
            let plan = solver.solve(&s, &t, *st).map_err(|e| format!("{size} cells, {st}: {e}"))?;
            let end = verify_sequence(&b, &s, &plan.moves()).map_err(|e| e.to_string())?;
            ensure(end == t, || format!("{size} cells, {st}: plan ends elsewhere"))?;
            total[k] += plan.len();
        }
    }
    Ok(format!(
        "100 triples; total moves cubic {}, quadratic {}, quadratic with base 11 {}",
        total[0], total[1], total[2]
    ))
}

// 7 ------------------------------------------------------------------------

fn formula_variants() -> Vec<Formula1in3> {
    let roles = permutations(3);
    let mut out = Vec::new();
    // n = m = 3: all role choices per clause
    for a in &roles {
        for b in &roles {
            for c in &roles {
                let cl = [a, b, c].map(|p| [p[0], p[1], p[2]]).to_vec();
                out.push(Formula1in3::from_indices(3, cl));
            }
        }
    }
    // n = m = 4: every clause order, with one role permutation shared by all clauses
    let base = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for order in permutations(4) {
        for p in &roles {
            let cl = order.iter().map(|&i| [base[i][p[0]], base[i][p[1]], base[i][p[2]]]).collect();
            out.push(Formula1in3::from_indices(4, cl));
        }
    }
    out
}

fn colored_dominoes(c: &Configuration, b: &Board, filler: Label) -> BTreeSet<(HexCoord, HexCoord)> {
    c.gourds.iter().filter(|g| b.label(g.end_a) != filler).map(pair_of).collect()
}

/// Sub-multisets of `pieces` with the given color counts.
fn splits(
    pieces: &[((Label, Label), u32)],
    want: &BTreeMap<Label, i64>,
) -> Vec<Vec<((Label, Label), u32)>> {
    let mut out = Vec::new();
    let mut pick = vec![0u32; pieces.len()];
    fn rec(
        i: usize,
        pieces: &[((Label, Label), u32)],
        pick: &mut Vec<u32>,
        want: &BTreeMap<Label, i64>,
        out: &mut Vec<Vec<((Label, Label), u32)>>,
    ) {
        if i == pieces.len() {
            let mut have: BTreeMap<Label, i64> = BTreeMap::new();
            for (k, &((a, b), _)) in pieces.iter().enumerate() {
                *have.entry(a).or_insert(0) += pick[k] as i64;
                *have.entry(b).or_insert(0) += pick[k] as i64;
            }
            have.retain(|_, v| *v != 0);
            if &have == want {
                out.push(pieces.iter().zip(pick.iter()).filter(|(_, &n)| n > 0).map(|(p, &n)| (p.0, n)).collect());
            }
            return;
        }
        for n in 0..=pieces[i].1 {
            pick[i] = n;
            rec(i + 1, pieces, pick, want, out);
        }
        pick[i] = 0;
    }
    rec(0, pieces, &mut pick, want, &mut out);
    out
}

fn reduction() -> Outcome {
    let formulas = formula_variants();
    let (mut sat, mut unsat) = (0, 0);
    for f in &formulas {
        let inst = reduce_1in3sat(f).map_err(|e| e.to_string())?;
        let rep = verify_reduction(&inst, f);
        ensure(rep.ok(), || format!("verify_reduction failed:\n{rep}"))?;
        let brute = brute_1in3sat(f).map_err(|e| e.to_string())?;
        let tiling = solve_placement(&inst).map_err(|e| e.to_string())?;
        ensure(tiling.is_some() == !brute.is_empty(), || {
            format!("{:?}: tiling {} but {} assignments", f.clauses, tiling.is_some(), brute.len())
        })?;
        if let Some(c) = &tiling {
            ensure(is_placement(&inst, c), || "returned tiling breaks the budget".into())?;
            sat += 1;
        } else {
            unsat += 1;
        }
    }

    // variable gadget: exactly the two budget splits of the ring tile, one class each
    let vb = variable_gadget_board();
    let c = Label::Color;
    let mut classes: BTreeMap<BTreeSet<(HexCoord, HexCoord)>, u32> = BTreeMap::new();
    let mut tiling_splits = Vec::new();
    for a in 0..=3u32 {
        let budget = [((c(0), c(0)), a), ((c(0), c(1)), 6 - 2 * a), ((c(1), c(1)), a), ((c(2), c(2)), 2)];
        let sols = enumerate_placements(&PlacementInstance::new(vb.clone(), budget), 10_000).map_err(|e| e.to_string())?;
        if !sols.is_empty() {
            tiling_splits.push(a);
        }
        for s in &sols {
            classes.insert(colored_dominoes(s, &vb, c(2)), a);
        }
    }
    ensure(tiling_splits == [0, 3] && classes.len() == 2, || {
        format!("variable gadget: splits {tiling_splits:?}, {} classes", classes.len())
    })?;

    // clause gadget: each option set covers the two triangles and the whole section
    let left = clause_gadget_board(ClausePart::Left);
    let right = clause_gadget_board(ClausePart::Right);
    let whole = clause_gadget_board(ClausePart::Whole);
    let counts = |b: &Board| {
        let mut m: BTreeMap<Label, i64> = BTreeMap::new();
        for &l in b.labels() {
            if l != c(4) {
                *m.entry(l).or_insert(0) += 1;
            }
        }
        m
    };
    let mut realized = 0;
    for k in 0..3 {
        let option = clause_option(k);
        let mut ok = false;
        for l in splits(&option, &counts(&left)) {
            let v_pieces: u32 = l.iter().filter(|(p, _)| p.0 == c(3) || p.1 == c(3)).map(|(_, n)| n).sum();
            ensure(v_pieces <= 1, || "more than one V piece fits the left triangle".into())?;
            let mut rest: BTreeMap<(Label, Label), u32> = option.iter().map(|&(p, n)| (pair(p.0, p.1), n)).collect();
            for &(p, n) in &l {
                *rest.get_mut(&pair(p.0, p.1)).unwrap() -= n;
            }
            let li = PlacementInstance::new(left.clone(), l.clone());
            let ri = PlacementInstance::new(right.clone(), rest);
            let lt = enumerate_placements(&li, 1).map_err(|e| e.to_string())?;
            let rt = enumerate_placements(&ri, 1).map_err(|e| e.to_string())?;
            ok |= !lt.is_empty() && !rt.is_empty();
        }
        let mut budget = option.clone();
        budget.push(((c(4), c(4)), 12));
        let w = solve_placement(&PlacementInstance::new(whole.clone(), budget)).map_err(|e| e.to_string())?;
        ensure(ok && w.is_some(), || format!("clause option {k} does not fit"))?;
        realized += 1;
    }
    Ok(format!(
        "{} formulas ({sat} satisfiable, {unsat} not) agree with brute force; variable gadget 2 classes; {realized} clause options realized",
        formulas.len()
    ))
}

// 8 ------------------------------------------------------------------------

fn budget_arithmetic() -> Outcome {
    let mut checked = 0;
    for f in formula_variants().iter().step_by(36) {
        let (n, m) = (f.variables.len(), f.clauses.len());
        let inst = reduce_1in3sat(f).map_err(|e| e.to_string())?;
        let gourds = inst.gourd_count() as usize;
        ensure(gourds == 20 * n + 20 * m, || format!("{gourds} gourds for n = {n}, m = {m}"))?;
        ensure(inst.board.len() == 40 * n + 40 * m + 1, || format!("{} cells", inst.board.len()))?;
        let surplus = inst.color_surplus();
        let f_color = Label::Color(n as u32 + 1);
        ensure(surplus.len() == 1 && surplus.get(&f_color) == Some(&1), || format!("surplus {surplus:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} instances: gourds = 20(n+m), cells = 40(n+m)+1, single F surplus"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("triangle positions", triangle_positions),
        ("star of David confinement", star),
        ("universality on boards up to 9 cells", universality),
        ("dual tree structure", dual_trees),
        ("quadratic scaling and lower bound", scaling),
        ("cubic and quadratic agreement", agreement),
        ("reduction soundness", reduction),
        ("budget arithmetic", budget_arithmetic),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail} [{:.1?}]", t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {id} FAIL {name}: {e} [{:.1?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
