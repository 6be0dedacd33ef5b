use super::{GraphOfGroups, Step, Symbol};
use crate::error::{Error, Result};
use crate::word::{power_of, Word};

/// Reduced factorization `g₀ e₁ g₁ … e_k g_k` of an element of `π₁(Λ, base)`.
/// `factors` has exactly one more entry than `steps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub factors: Vec<Word>,
    pub steps: Vec<Step>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { factors: vec![Word::identity()], steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Image in Λ of the geodesic from the base vertex of the Bass–Serre tree
/// to its `g`-translate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedPath {
    pub steps: Vec<Step>,
    /// `steps.len() + 1` vertices, starting and ending at the base.
    pub vertices: Vec<usize>,
    /// For each interior vertex (positions `1..steps.len()`), whether it is a
    /// translate of the base vertex.
    pub interior_base: Vec<bool>,
}

impl ProjectedPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl GraphOfGroups {
    /// Expresses `g` over the presentation's generators, lays the symbols out
    /// along spanning-tree paths, and cancels pinches innermost-first.
    pub fn normal_form(&self, g: &Word) -> Result<NormalForm> {
        let symbols = self.whole_group().express(g).ok_or_else(|| {
            Error::Internal(format!("{} is not generated by the splitting", self.render(g)))
        })?;
        let mut factors = vec![Word::identity()];
        let mut steps = Vec::new();
        let mut here = self.base();
        let walk = |steps: &mut Vec<Step>, factors: &mut Vec<Word>, path: Vec<Step>| {
            for s in path {
                steps.push(s);
                factors.push(Word::identity());
            }
        };
        for l in symbols.letters() {
            match self.symbols()[l.generator as usize] {
                Symbol::Vertex { vertex, index } => {
                    walk(&mut steps, &mut factors, self.tree_path(here, vertex));
                    here = vertex;
                    let gen = &self.vertex(vertex).generators[index];
                    let gen = if l.inverse { gen.inverse() } else { gen.clone() };
                    let last = factors.last_mut().expect("factors never empty");
                    *last = last.mul(&gen);
                }
                Symbol::Stable { edge } => {
                    let step = Step { edge, forward: !l.inverse };
                    walk(&mut steps, &mut factors, self.tree_path(here, self.step_source(step)));
                    steps.push(step);
                    factors.push(Word::identity());
                    here = self.step_target(step);
                }
            }
        }
        walk(&mut steps, &mut factors, self.tree_path(here, self.base()));
        Ok(self.reduce_path(factors, steps))
    }

    /// If `f`, sitting at the target of `prev`, lies in the edge group of
    /// `prev`, returns the element it equals on the source side.
    pub(crate) fn pinch_transfer(&self, prev: Step, f: &Word) -> Option<Word> {
        let d = self.edge(prev.edge);
        if d.is_trivial() {
            return f.is_identity().then(Word::identity);
        }
        let side = self.side_generator(prev.edge, prev.forward);
        power_of(f, &side)?;
        let s = d.stable();
        Some(if prev.forward { f.conjugate_by(&s) } else { f.conjugate_by(&s.inverse()) })
    }

    fn reduce_path(&self, factors: Vec<Word>, steps: Vec<Step>) -> NormalForm {
        let mut input = factors.into_iter();
        let mut out_factors = vec![input.next().unwrap_or_default()];
        let mut out_steps: Vec<Step> = Vec::new();
        for (step, next) in steps.into_iter().zip(input) {
            let top = out_factors.last().cloned().unwrap_or_default();
            let pinch = match out_steps.last() {
                Some(&prev) if prev == step.reversed() => self.pinch_transfer(prev, &top),
                _ => None,
            };
            match pinch {
                Some(moved) => {
                    out_steps.pop();
                    out_factors.pop();
                    let last = out_factors.last_mut().expect("factor before a step");
                    *last = last.mul(&moved).mul(&next);
                }
                None => {
                    out_steps.push(step);
                    out_factors.push(next);
                }
            }
        }
        NormalForm { factors: out_factors, steps: out_steps }
    }

    pub fn eval_normal_form(&self, nf: &NormalForm) -> Result<Word> {
        if nf.factors.len() != nf.steps.len() + 1 {
            return Err(Error::Malformed("normal form needs one more factor than edges".into()));
        }
        let mut here = self.base();
        let mut out = Word::identity();
        for (i, f) in nf.factors.iter().enumerate() {
            if !self.group(here).contains(f) {
                return Err(Error::NotInVertexGroup {
                    vertex: self.vertex(here).id.clone(),
                    factor: self.render(f),
                });
            }
            out = out.mul(f);
            if let Some(&s) = nf.steps.get(i) {
                if self.step_source(s) != here {
                    return Err(Error::Malformed(format!("edge {} does not continue the path", self.edge(s.edge).id)));
                }
                out = out.mul(&self.step_letter(s));
                here = self.step_target(s);
            }
        }
        if here != self.base() {
            return Err(Error::Malformed("normal form path does not return to the base".into()));
        }
        Ok(out)
    }

    pub fn base_path(&self, g: &Word) -> Result<ProjectedPath> {
        let nf = self.normal_form(g)?;
        Ok(self.project(&nf.steps))
    }

    pub(crate) fn project(&self, steps: &[Step]) -> ProjectedPath {
        let mut vertices = vec![self.base()];
        for &s in steps {
            vertices.push(self.step_target(s));
        }
        let k = steps.len();
        let interior_base = (1..k).map(|i| vertices[i] == self.base()).collect();
        ProjectedPath { steps: steps.to_vec(), vertices, interior_base }
    }
}
