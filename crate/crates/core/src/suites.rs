//! Seeded randomized checks of the library's identities, one trial per
//! ChaCha stream so trials run in parallel and replay individually.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::generate::{random_graph, random_pair, random_resistor_multiport, random_space, seeded};
use crate::label::Label;
use crate::scalar::{ExactField, FieldMode, GaussianRational, Rational};
use crate::spaces::VectorSpace;
use crate::terminations::thevenin_norton;
use crate::theorems::{idt_check, idt_check_star, iit_solve, iit_uniqueness_holds};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Idt,
    Iit,
    Tellegen,
    Ranks,
    TheveninNorton,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Idt,
        Suite::Iit,
        Suite::Tellegen,
        Suite::Ranks,
        Suite::TheveninNorton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Idt => "idt",
            Suite::Iit => "iit",
            Suite::Tellegen => "tellegen",
            Suite::Ranks => "ranks",
            Suite::TheveninNorton => "thevenin",
        }
    }

    /// Size bound used when none is given: `|S|, |P|, |Q|` for the space
    /// suites, vertices for `tellegen`, internal edges for `thevenin`.
    pub fn default_size(self) -> usize {
        match self {
            Suite::Idt | Suite::Iit | Suite::Ranks => 4,
            Suite::Tellegen => 8,
            Suite::TheveninNorton => 10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub mode: FieldMode,
    pub seed: u64,
    pub trials: u64,
    pub passed: u64,
    /// Trial numbers that failed, ascending.
    pub failures: Vec<u64>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The generator for trial `k` under `seed`.
pub fn trial_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = seeded(seed);
    rng.set_stream(k);
    rng
}

fn idt_trial<F: ExactField>(rng: &mut ChaCha8Rng, size: usize) -> bool {
    let (v_sp, v_pq) = random_pair::<F>(rng, size);
    match F::MODE {
        FieldMode::Rational => idt_check(&v_sp, &v_pq),
        FieldMode::Gaussian => idt_check_star(&v_sp, &v_pq),
    }
}

fn iit_trial<F: ExactField>(rng: &mut ChaCha8Rng, size: usize) -> bool {
    let (v_sp, v_pq) = random_pair::<F>(rng, size);
    let v_sq = v_sp.matched(&v_pq);
    match iit_solve(&v_sp, &v_sq) {
        Ok(solved) => v_sp.matched(&solved) == v_sq && iit_uniqueness_holds(&v_sp, &solved),
        Err(_) => false,
    }
}

fn tellegen_trial<F: ExactField>(rng: &mut ChaCha8Rng, size: usize) -> bool {
    use rand::Rng;
    let g = random_graph(rng, size, 2 * size);
    let vv: VectorSpace<F> = g.voltage_space();
    let vi: VectorSpace<F> = g.current_space();
    if vi != vv.dual() {
        return false;
    }
    let (t, rest): (Vec<Label>, Vec<Label>) =
        g.labels().into_iter().partition(|_| rng.gen_bool(0.5));
    let open = g.delete(&rest).expect("edges of g");
    let short = g.contract(&rest).expect("edges of g");
    open.voltage_space::<F>() == vv.restrict(&t).expect("edges of g")
        && short.voltage_space::<F>() == vv.contract(&t).expect("edges of g")
        && open.current_space::<F>() == vi.contract(&t).expect("edges of g")
        && short.current_space::<F>() == vi.restrict(&t).expect("edges of g")
}

fn ranks_trial<F: ExactField>(rng: &mut ChaCha8Rng, size: usize) -> bool {
    use rand::Rng;
    let n = rng.gen_range(1..=2 * size.max(1));
    let labels: Vec<Label> = (0..n).map(|k| Label::plain(format!("x{k}"))).collect();
    let v: VectorSpace<F> = random_space(rng, labels.clone());
    let w: VectorSpace<F> = random_space(rng, labels.clone());
    let cut = rng.gen_range(0..=n);
    let (s, p) = labels.split_at(cut);
    v.dim() + v.dual().dim() == n
        && v.dim() + w.dim() == v.sum(&w).dim() + v.intersect(&w).dim()
        && v.dim() == v.restrict(s).expect("subset").dim() + v.contract(p).expect("subset").dim()
}

fn thevenin_trial<F: ExactField>(rng: &mut ChaCha8Rng, size: usize) -> bool {
    let n = random_resistor_multiport::<F>(rng, size, 3);
    thevenin_norton(&n).is_ok_and(|b| b == n.port_behaviour())
}

fn trial<F: ExactField>(suite: Suite, rng: &mut ChaCha8Rng, size: usize) -> bool {
    match suite {
        Suite::Idt => idt_trial::<F>(rng, size),
        Suite::Iit => iit_trial::<F>(rng, size),
        Suite::Tellegen => tellegen_trial::<F>(rng, size),
        Suite::Ranks => ranks_trial::<F>(rng, size),
        Suite::TheveninNorton => thevenin_trial::<F>(rng, size),
    }
}

pub fn run_suite(
    suite: Suite,
    mode: FieldMode,
    trials: u64,
    seed: u64,
    size: usize,
) -> SuiteReport {
    let outcome = |k: u64| {
        let mut rng = trial_rng(seed, k);
        match mode {
            FieldMode::Rational => trial::<Rational>(suite, &mut rng, size),
            FieldMode::Gaussian => trial::<GaussianRational>(suite, &mut rng, size),
        }
    };
    let failures: Vec<u64> = (0..trials)
        .into_par_iter()
        .filter(|&k| !outcome(k))
        .collect();
    SuiteReport {
        suite,
        mode,
        seed,
        trials,
        passed: trials - failures.len() as u64,
        failures,
    }
}
