//! Successive-shortest-path minimum-cost flow for transportation problems.
//! Supplies and demands are exact rationals; arc costs are floating.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::rational::to_f64;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    residual: BigRational,
    cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    /// `(source, sink, amount)` for every arc carrying positive flow.
    pub flows: Vec<(usize, usize, BigRational)>,
    pub cost: f64,
}

impl TransportPlan {
    pub fn shipped_from(&self, source: usize) -> BigRational {
        self.flows
            .iter()
            .filter(|(s, _, _)| *s == source)
            .fold(BigRational::zero(), |acc, (_, _, f)| acc + f)
    }

    pub fn received_by(&self, sink: usize) -> BigRational {
        self.flows
            .iter()
            .filter(|(_, t, _)| *t == sink)
            .fold(BigRational::zero(), |acc, (_, _, f)| acc + f)
    }
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, capacity: BigRational, cost: f64) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let bwd = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc {
            to,
            rev: bwd,
            residual: capacity,
            cost,
        });
        self.arcs[to].push(Arc {
            to: from,
            rev: fwd,
            residual: BigRational::zero(),
            cost: -cost,
        });
        (from, fwd)
    }

    /// Bellman-Ford (queue based) over arcs with positive residual capacity.
    /// Returns the predecessor arc of every reached node.
    fn shortest_paths(&self, source: usize, eps: f64) -> Vec<Option<(usize, usize)>> {
        let n = self.arcs.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        let mut queued = vec![false; n];
        let mut relaxations = vec![0usize; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0.0;
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for (k, arc) in self.arcs[u].iter().enumerate() {
                if !arc.residual.is_positive() {
                    continue;
                }
                let cand = dist[u] + arc.cost;
                if cand < dist[arc.to] - eps {
                    dist[arc.to] = cand;
                    pred[arc.to] = Some((u, k));
                    relaxations[arc.to] += 1;
                    // a node relaxed n times sits on a negative cycle created
                    // by rounding; stop relaxing it
                    if !queued[arc.to] && relaxations[arc.to] < n {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        pred
    }
}

/// Cheapest plan shipping `supply[i]` out of source `i` and `demand[j]` into
/// sink `j` with unit cost `cost[i][j]`. Totals of `supply` and `demand` must
/// agree.
pub fn min_cost_transport(
    supply: &[BigRational],
    demand: &[BigRational],
    cost: &[Vec<f64>],
) -> TransportPlan {
    let (m, n) = (supply.len(), demand.len());
    let source = 0;
    let sink = m + n + 1;
    let total = supply.iter().fold(BigRational::zero(), |acc, s| acc + s);
    let mut net = Network::new(m + n + 2);
    for (i, s) in supply.iter().enumerate() {
        net.add_arc(source, 1 + i, s.clone(), 0.0);
    }
    for (j, d) in demand.iter().enumerate() {
        net.add_arc(1 + m + j, sink, d.clone(), 0.0);
    }
    let scale = cost
        .iter()
        .flatten()
        .fold(0.0f64, |acc, c| acc.max(c.abs()))
        .max(1.0);
    let eps = 1e-13 * scale;
    let mut transport_arcs = Vec::with_capacity(m * n);
    for (i, row) in cost.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            let handle = net.add_arc(1 + i, 1 + m + j, total.clone(), c);
            transport_arcs.push((i, j, handle));
        }
    }

    loop {
        let pred = net.shortest_paths(source, eps);
        if pred[sink].is_none() {
            break;
        }
        let mut path = Vec::new();
        let mut v = sink;
        while v != source {
            let (u, k) = pred[v].expect("path to sink");
            path.push((u, k));
            v = u;
        }
        let bottleneck = path
            .iter()
            .map(|&(u, k)| &net.arcs[u][k].residual)
            .min()
            .expect("non-empty path")
            .clone();
        for (u, k) in path {
            let (to, rev) = (net.arcs[u][k].to, net.arcs[u][k].rev);
            net.arcs[u][k].residual -= &bottleneck;
            net.arcs[to][rev].residual += &bottleneck;
        }
    }

    let mut flows = Vec::new();
    let mut total_cost = 0.0;
    for (i, j, (u, k)) in transport_arcs {
        let arc = &net.arcs[u][k];
        let shipped = net.arcs[arc.to][arc.rev].residual.clone();
        if shipped.is_positive() {
            total_cost += to_f64(&shipped) * arc.cost;
            flows.push((i, j, shipped));
        }
    }
    TransportPlan {
        flows,
        cost: total_cost,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn splits_a_dirac_in_half() {
        let plan = min_cost_transport(&[ratio(1, 1)], &[ratio(1, 2), ratio(1, 2)], &[vec![1.0, 1.0]]);
        assert_eq!(plan.cost, 1.0);
        assert_eq!(plan.shipped_from(0), ratio(1, 1));
        assert_eq!(plan.received_by(1), ratio(1, 2));
    }

    #[test]
    fn prefers_cheap_arcs() {
        // two sources, two sinks: diagonal is cheap
        let plan = min_cost_transport(
            &[ratio(1, 3), ratio(2, 3)],
            &[ratio(1, 3), ratio(2, 3)],
            &[vec![0.0, 5.0], vec![5.0, 0.0]],
        );
        assert_eq!(plan.cost, 0.0);
        assert_eq!(plan.flows.len(), 2);
    }

    #[test]
    fn needs_rerouting_through_a_reverse_arc() {
        // greedy on source 0 would take the 1.0 arc; optimum sends it to sink 1
        let plan = min_cost_transport(
            &[ratio(1, 2), ratio(1, 2)],
            &[ratio(1, 2), ratio(1, 2)],
            &[vec![1.0, 1.5], vec![1.2, 10.0]],
        );
        assert!((plan.cost - 0.5 * (1.5 + 1.2)).abs() < 1e-15);
    }
}
