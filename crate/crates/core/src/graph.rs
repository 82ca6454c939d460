//! Directed-graph machinery behind the structural analyses: Tarjan SCC,
//! vertex-disjoint path counting via unit-capacity max flow with node
//! splitting, and bipartite perfect matching.

/// Tarjan's strongly connected components. Components are returned in
/// reverse topological order; every vertex is in exactly one component.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;

        for &w in &st.adj[v] {
            if st.idx[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }

        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.comps.push(comp);
        }
    }

    let n = adj.len();
    let mut st = State {
        adj,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.comps
}

/// Component id per vertex for a Tarjan decomposition.
pub fn scc_ids(comps: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    for (cid, comp) in comps.iter().enumerate() {
        for &v in comp {
            id[v] = cid;
        }
    }
    debug_assert!(id.iter().all(|&x| x != usize::MAX));
    id
}

/// Maximum number of internally vertex-disjoint directed paths from `u` to
/// `v`, capped at `cap`. Standard node splitting: vertex `x` becomes
/// `x_in → x_out` with capacity 1; an edge `(x, y)` becomes `x_out → y_in`.
/// The source is `u_out` and the sink `v_in`, so the capacities of `u` and
/// `v` themselves do not constrain the flow. Self-loops are ignored.
///
/// All capacities are 1, so paths found by repeated BFS augmentation are also
/// edge-disjoint; for `(u, v)` not an edge of the graph this does not change
/// the count, because two paths sharing an edge would share an inner vertex.
pub fn vertex_disjoint_paths(adj: &[Vec<usize>], u: usize, v: usize, cap: usize) -> usize {
    assert_ne!(u, v, "u and v must differ");
    let n = adj.len();
    // Node ids: x_in = 2x, x_out = 2x + 1.
    let mut graph: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut cap_edges: Vec<(usize, usize)> = Vec::new();
    let add_edge = |graph: &mut Vec<Vec<usize>>, edges: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        graph[a].push(edges.len());
        edges.push((b, 1)); // forward
        graph[b].push(edges.len());
        edges.push((a, 0)); // residual
    };
    for (x, neighbors) in adj.iter().enumerate() {
        add_edge(&mut graph, &mut cap_edges, 2 * x, 2 * x + 1);
        for &y in neighbors {
            if y != x {
                add_edge(&mut graph, &mut cap_edges, 2 * x + 1, 2 * y);
            }
        }
    }
    let source = 2 * u + 1;
    let sink = 2 * v;

    let mut flow = 0;
    while flow < cap {
        // BFS for an augmenting path in the residual graph.
        let mut prev_edge: Vec<Option<usize>> = vec![None; 2 * n];
        let mut queue = std::collections::VecDeque::from([source]);
        let mut seen = vec![false; 2 * n];
        seen[source] = true;
        'bfs: while let Some(x) = queue.pop_front() {
            for &eid in &graph[x] {
                let (to, capacity) = cap_edges[eid];
                if capacity > 0 && !seen[to] {
                    seen[to] = true;
                    prev_edge[to] = Some(eid);
                    if to == sink {
                        break 'bfs;
                    }
                    queue.push_back(to);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        // Unwind and flip capacities along the path.
        let mut x = sink;
        while x != source {
            let eid = prev_edge[x].unwrap();
            cap_edges[eid].1 -= 1;
            cap_edges[eid ^ 1].1 += 1;
            // The tail of edge `eid` is the head of its twin.
            x = cap_edges[eid ^ 1].0;
        }
        flow += 1;
    }
    flow
}

/// Perfect matching of rows to columns in the nonzero structure of a square
/// 0/1 relation, by Kuhn's augmenting paths. `rows[i]` lists the columns
/// admissible for row `i`. Returns `sigma` with `sigma[i]` the column matched
/// to row `i`, or `None` when no perfect matching exists.
pub fn perfect_matching(rows: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = rows.len();
    let mut col_match: Vec<Option<usize>> = vec![None; n];

    fn try_assign(
        r: usize,
        rows: &[Vec<usize>],
        col_match: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &rows[r] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            if col_match[c].is_none()
                || try_assign(col_match[c].unwrap(), rows, col_match, visited)
            {
                col_match[c] = Some(r);
                return true;
            }
        }
        false
    }

    for r in 0..n {
        let mut visited = vec![false; n];
        if !try_assign(r, rows, &mut col_match, &mut visited) {
            return None;
        }
    }
    let mut sigma = vec![0; n];
    for (c, r) in col_match.iter().enumerate() {
        sigma[r.unwrap()] = c;
    }
    Some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_of_cycle_is_single_component() {
        let adj = vec![vec![1], vec![2], vec![0]];
        assert_eq!(tarjan_scc(&adj).len(), 1);
    }

    #[test]
    fn scc_of_chain_is_singletons() {
        let adj = vec![vec![1], vec![2], vec![]];
        assert_eq!(tarjan_scc(&adj).len(), 3);
    }

    #[test]
    fn disjoint_paths_in_diamond() {
        // 0 → {1, 2} → 3: two vertex-disjoint paths from 0 to 3.
        let adj = vec![vec![1, 2], vec![3], vec![3], vec![]];
        assert_eq!(vertex_disjoint_paths(&adj, 0, 3, 10), 2);
    }

    #[test]
    fn shared_inner_vertex_limits_paths() {
        // Both routes pass through vertex 1.
        let adj = vec![vec![1], vec![2, 3], vec![4], vec![4], vec![]];
        assert_eq!(vertex_disjoint_paths(&adj, 0, 4, 10), 1);
    }

    #[test]
    fn unreachable_sink_has_zero_paths() {
        let adj = vec![vec![1], vec![], vec![0]];
        assert_eq!(vertex_disjoint_paths(&adj, 0, 2, 10), 0);
    }

    #[test]
    fn cap_limits_augmentation() {
        let adj = vec![vec![1, 2, 3], vec![4], vec![4], vec![4], vec![]];
        assert_eq!(vertex_disjoint_paths(&adj, 0, 4, 2), 2);
    }

    #[test]
    fn matching_exists_for_permutation() {
        let rows = vec![vec![2], vec![0], vec![1]];
        assert_eq!(perfect_matching(&rows), Some(vec![2, 0, 1]));
    }

    #[test]
    fn matching_fails_on_shared_single_column() {
        let rows = vec![vec![0], vec![0], vec![0, 1, 2]];
        assert_eq!(perfect_matching(&rows), None);
    }
}
