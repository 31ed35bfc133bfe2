use std::collections::{BTreeMap, HashMap};

use crate::graph::LabeledGraph;
use crate::sgm::{find_monomorphisms, Match, Pattern};

use super::{apply, RuleGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Dfs,
    Bfs,
}

/// One rewrite step out of a state.
#[derive(Debug, Clone)]
pub struct Successor {
    pub rule: usize,
    pub m: Match,
    pub graph: LabeledGraph,
}

#[derive(Debug, Clone, Default)]
pub struct Exploration {
    /// Every distinct state reached, by key.
    pub visited: BTreeMap<String, LabeledGraph>,
    /// Path from a start state to the first goal state found.
    pub solution: Option<Vec<LabeledGraph>>,
}

type KeyFn<'a> = Box<dyn Fn(&LabeledGraph) -> String + Send + Sync + 'a>;
type GoalFn<'a> = Box<dyn Fn(&LabeledGraph) -> bool + Send + Sync + 'a>;
type SelectFn<'a> = Box<dyn Fn(&LabeledGraph, Vec<Successor>) -> Vec<Successor> + Send + Sync + 'a>;

/// Traversal of the state space a rule set induces from some start graphs.
pub struct Explorer<'a> {
    rules: &'a [RuleGraph],
    patterns: Vec<Pattern>,
    strategy: Strategy,
    depth: usize,
    key: KeyFn<'a>,
    goal: Option<GoalFn<'a>>,
    select: Option<SelectFn<'a>>,
}

impl<'a> Explorer<'a> {
    pub fn new(
        rules: &'a [RuleGraph],
        strategy: Strategy,
        depth: usize,
        key: impl Fn(&LabeledGraph) -> String + Send + Sync + 'a,
    ) -> Self {
        Explorer {
            rules,
            patterns: rules.iter().map(|r| r.left_pattern()).collect(),
            strategy,
            depth,
            key: Box::new(key),
            goal: None,
            select: None,
        }
    }

    pub fn goal(mut self, goal: impl Fn(&LabeledGraph) -> bool + Send + Sync + 'a) -> Self {
        self.goal = Some(Box::new(goal));
        self
    }

    /// Narrows or reorders the successors of each state before they are
    /// visited; returning an empty list prunes the state.
    pub fn select(mut self, f: impl Fn(&LabeledGraph, Vec<Successor>) -> Vec<Successor> + Send + Sync + 'a) -> Self {
        self.select = Some(Box::new(f));
        self
    }

    /// All successors in rule order, then match order. Failed applications
    /// are skipped.
    pub fn successors(&self, g: &LabeledGraph) -> Vec<Successor> {
        let mut out = Vec::new();
        for (ri, (rule, pattern)) in self.rules.iter().zip(&self.patterns).enumerate() {
            for m in find_monomorphisms(pattern, g, None) {
                if let Ok(next) = apply(rule, g, &m) {
                    out.push(Successor {
                        rule: ri,
                        m,
                        graph: next,
                    });
                }
            }
        }
        match &self.select {
            Some(f) => f(g, out),
            None => out,
        }
    }

    fn is_goal(&self, g: &LabeledGraph) -> bool {
        self.goal.as_ref().is_some_and(|f| f(g))
    }

    pub fn run(&self, starts: &[LabeledGraph]) -> Exploration {
        match self.strategy {
            Strategy::Bfs => self.bfs(starts),
            Strategy::Dfs => self.dfs(starts),
        }
    }

    fn bfs(&self, starts: &[LabeledGraph]) -> Exploration {
        let mut out = Exploration::default();
        let mut parent: HashMap<String, Option<String>> = HashMap::new();
        let mut frontier = Vec::new();
        let mut goal_key = None;
        for s in starts {
            let k = (self.key)(s);
            if out.visited.contains_key(&k) {
                continue;
            }
            if goal_key.is_none() && self.is_goal(s) {
                goal_key = Some(k.clone());
            }
            out.visited.insert(k.clone(), s.clone());
            parent.insert(k.clone(), None);
            frontier.push(k);
        }
        for _ in 0..self.depth {
            if goal_key.is_some() || frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for k in &frontier {
                let g = out.visited[k].clone();
                for s in self.successors(&g) {
                    let sk = (self.key)(&s.graph);
                    if out.visited.contains_key(&sk) {
                        continue;
                    }
                    if goal_key.is_none() && self.is_goal(&s.graph) {
                        goal_key = Some(sk.clone());
                    }
                    out.visited.insert(sk.clone(), s.graph);
                    parent.insert(sk.clone(), Some(k.clone()));
                    next.push(sk);
                }
            }
            frontier = next;
        }
        if let Some(mut k) = goal_key {
            let mut path = vec![out.visited[&k].clone()];
            while let Some(Some(p)) = parent.get(&k) {
                path.push(out.visited[p].clone());
                k = p.clone();
            }
            path.reverse();
            out.solution = Some(path);
        }
        out
    }

    fn dfs(&self, starts: &[LabeledGraph]) -> Exploration {
        let mut out = Exploration::default();
        for s in starts {
            let k = (self.key)(s);
            if out.visited.contains_key(&k) {
                continue;
            }
            out.visited.insert(k, s.clone());
            let mut path = vec![s.clone()];
            if self.dfs_from(&mut path, &mut out) {
                out.solution = Some(path);
                break;
            }
        }
        out
    }

    fn dfs_from(&self, path: &mut Vec<LabeledGraph>, out: &mut Exploration) -> bool {
        let g = path.last().expect("non-empty path");
        if self.is_goal(g) {
            return true;
        }
        if path.len() > self.depth {
            return false;
        }
        for s in self.successors(g) {
            let k = (self.key)(&s.graph);
            if out.visited.contains_key(&k) {
                continue;
            }
            out.visited.insert(k, s.graph.clone());
            path.push(s.graph);
            if self.dfs_from(path, out) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Convenience wrapper over [`Explorer`].
pub fn explore(
    starts: &[LabeledGraph],
    rules: &[RuleGraph],
    strategy: Strategy,
    depth: usize,
    key: impl Fn(&LabeledGraph) -> String + Send + Sync,
    goal: Option<&(dyn Fn(&LabeledGraph) -> bool + Send + Sync)>,
) -> Exploration {
    let mut ex = Explorer::new(rules, strategy, depth, key);
    if let Some(goal) = goal {
        ex = ex.goal(goal);
    }
    ex.run(starts)
}
