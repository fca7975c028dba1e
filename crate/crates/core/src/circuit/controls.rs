//! Controls that keep each Gray gate from disturbing earlier basis states.
//!
//! At step `l` the naive control set `C[l]` holds every position outside
//! `{i[l], j[l]}` whose digit is the same nonzero value in `m[l]` and
//! `m[l+1]`. Positions in `U[l]`, the nonzero digits of `m[0]` not yet
//! touched by the steps `1..=l`, are dropped from it.
//!
//! `U[l]` can still contain `i[0]` or `j[0]`, where `m[0]` differs from every
//! later entry. If the pruned set then lets gate `l` reach `m[0]`, one of
//! those controls is put back.

use super::Control;
use crate::compositions::{gray_steps, GrayCode};
use crate::error::Result;

/// Audit record for one Gray step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepControls {
    /// `C[l]` before pruning, ascending by qudit.
    pub naive: Vec<Control>,
    /// `U[l]`, ascending.
    pub untouched: Vec<usize>,
    /// `C[l] \ U[l]`, plus a restored control when `m[0]` needs one, ascending by qudit.
    pub pruned: Vec<Control>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlSchedule {
    pub steps: Vec<StepControls>,
}

impl ControlSchedule {
    pub fn pruned(&self) -> Vec<Vec<Control>> {
        self.steps.iter().map(|s| s.pruned.clone()).collect()
    }

    pub fn naive(&self) -> Vec<Vec<Control>> {
        self.steps.iter().map(|s| s.naive.clone()).collect()
    }
}

/// Control sets for every step of `code`.
///
/// `U[0]` is the set of nonzero positions of `m[0]`; step 0 prunes against
/// `U[0] \ {i[0], j[0]}`, and later steps use `U[l] = U[l-1] \ {i[l], j[l]}`.
pub fn control_schedule(code: &GrayCode) -> Result<ControlSchedule> {
    let steps = gray_steps(code)?;
    let entries = code.entries();
    let n = code.spec().n();
    let mut untouched: Vec<bool> = entries[0].digits().iter().map(|&x| x != 0).collect();
    let mut out = Vec::with_capacity(steps.len());
    for step in &steps {
        let (now, next) = (&entries[step.l], &entries[step.l + 1]);
        let naive: Vec<Control> = (1..=n)
            .filter(|&r| r != step.i && r != step.j)
            .filter(|&r| now.digit(r) == next.digit(r) && now.digit(r) != 0)
            .map(|r| Control { qudit: r, value: now.digit(r) })
            .collect();
        let mut current = untouched.clone();
        current[step.i - 1] = false;
        current[step.j - 1] = false;
        if step.l > 0 {
            untouched = current.clone();
        }
        let mut pruned: Vec<Control> = naive.iter().copied().filter(|c| !current[c.qudit - 1]).collect();
        let first = &entries[0];
        // the gate mixes (m_i, m_j) with (m_i + 1, m_j - 1), so either pattern exposes m[0]
        let pair = (first.digit(step.i), first.digit(step.j));
        let hits_first = step.l > 0
            && (pair == (step.m_i, step.m_j) || pair == (step.m_i + 1, step.m_j - 1))
            && pruned.iter().all(|c| first.digit(c.qudit) == c.value);
        if hits_first {
            let guard =
                naive.iter().find(|c| first.digit(c.qudit) != c.value).expect("naive controls separate m[0] from m[l]");
            pruned.push(*guard);
            pruned.sort();
        }
        out.push(StepControls { naive, untouched: (1..=n).filter(|&r| current[r - 1]).collect(), pruned });
    }
    Ok(ControlSchedule { steps: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::{CompositionSpec, Ditstring};

    fn table1() -> GrayCode {
        let spec = CompositionSpec::new(3, 3, 2).unwrap();
        let entries = ["012", "021", "120", "111", "102", "201", "210"]
            .iter()
            .map(|s| Ditstring::parse_display(s).unwrap())
            .collect();
        GrayCode::checked(spec, entries).unwrap()
    }

    #[test]
    fn worked_example_controls() {
        let schedule = control_schedule(&table1()).unwrap();
        let pruned: Vec<Vec<(usize, u8)>> =
            schedule.pruned().iter().map(|cs| cs.iter().map(|c| (c.qudit, c.value)).collect()).collect();
        assert_eq!(pruned, vec![vec![], vec![], vec![(3, 1)], vec![(3, 1)], vec![], vec![(3, 2)]]);
        // step 1 drops the control on qudit 2, which has held 2 since step 0
        assert_eq!(schedule.steps[1].naive, vec![Control { qudit: 2, value: 2 }]);
        assert_eq!(schedule.steps[1].untouched, vec![2]);
        assert_eq!(schedule.steps[0].untouched, Vec::<usize>::new());
    }

    #[test]
    fn two_qudits_never_need_controls() {
        let spec = CompositionSpec::new(2, 1, 1).unwrap();
        let code = crate::compositions::walsh_gray_code(&spec).unwrap();
        let schedule = control_schedule(&code).unwrap();
        assert_eq!(schedule.steps.len(), 1);
        assert!(schedule.steps[0].naive.is_empty());
    }

    #[test]
    fn pruned_is_subset_of_naive() {
        let spec = CompositionSpec::new(5, 6, 2).unwrap();
        let code = crate::compositions::walsh_gray_code(&spec).unwrap();
        for step in control_schedule(&code).unwrap().steps {
            assert!(step.pruned.iter().all(|c| step.naive.contains(c)));
        }
    }

    #[test]
    fn later_gates_never_reach_the_first_entry() {
        let spec = CompositionSpec::new(4, 6, 3).unwrap();
        let start = Ditstring::parse_display("2112").unwrap();
        let code = crate::compositions::warnsdorff_gray_code(&spec, Some(&start)).unwrap();
        let first = &code.entries()[0];
        let schedule = control_schedule(&code).unwrap();
        let mut restored = 0;
        for (l, step) in gray_steps(&code).unwrap().iter().enumerate().skip(1) {
            let controls = &schedule.steps[l];
            let pair = (first.digit(step.i), first.digit(step.j));
            let exposed = (pair == (step.m_i, step.m_j) || pair == (step.m_i + 1, step.m_j - 1))
                && controls.pruned.iter().all(|c| first.digit(c.qudit) == c.value);
            assert!(!exposed, "step {l} reaches m[0]");
            restored += controls.pruned.iter().filter(|c| controls.untouched.contains(&c.qudit)).count();
        }
        assert!(restored > 0, "this code needs the guard at least once");
    }
}
