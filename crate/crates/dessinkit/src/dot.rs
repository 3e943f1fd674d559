//! DOT export of the bipartite multigraph underlying a dessin: one node per
//! black vertex (x-cycle), one per white vertex (y-cycle), one edge per
//! dessin edge. Faces are listed as comments; no embedding is claimed.

use crate::dessin::Dessin;

pub fn to_dot(d: &Dessin) -> String {
    let xc = d.x().cycles();
    let yc = d.y().cycles();
    let mut black_of = vec![0usize; d.degree()];
    for (i, c) in xc.iter().enumerate() {
        for &p in c {
            black_of[p - 1] = i;
        }
    }
    let mut white_of = vec![0usize; d.degree()];
    for (i, c) in yc.iter().enumerate() {
        for &p in c {
            white_of[p - 1] = i;
        }
    }
    let mut out = String::from("graph dessin {\n");
    out.push_str("  // black nodes are x-cycles, white nodes are y-cycles\n");
    for (i, c) in xc.iter().enumerate() {
        out.push_str(&format!(
            "  b{} [shape=circle style=filled fillcolor=black label=\"{}\" fontcolor=white];\n",
            i,
            c.len()
        ));
    }
    for (i, c) in yc.iter().enumerate() {
        out.push_str(&format!(
            "  w{} [shape=circle label=\"{}\"];\n",
            i,
            c.len()
        ));
    }
    for e in 1..=d.degree() {
        out.push_str(&format!(
            "  b{} -- w{} [label=\"{}\"];\n",
            black_of[e - 1],
            white_of[e - 1],
            e
        ));
    }
    for (i, c) in d.z().cycles().iter().enumerate() {
        let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!(
            "  // face {}: ramification {} over the edge cycle ({})\n",
            i + 1,
            c.len(),
            pts.join(" ")
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn dessin(n: usize, x: &str, y: &str) -> Dessin {
        Dessin::new(
            Permutation::parse(x, n).unwrap(),
            Permutation::parse(y, n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn node_and_edge_counts() {
        let cube = dessin(
            12,
            "(1 3 2)(4 5 6)(7 9 8)(10 11 12)",
            "(1 5 9)(2 10 6)(3 7 11)(4 12 8)",
        );
        let dot = to_dot(&cube);
        assert_eq!(dot.matches("[shape=circle").count(), 8);
        assert_eq!(dot.matches(" -- ").count(), 12);

        let trivial = dessin(1, "id", "id");
        let dot = to_dot(&trivial);
        assert_eq!(dot.matches("[shape=circle").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 1);

        let d0 = dessin(
            12,
            "(1 2 3 7 8 9)(6 12)",
            "(1 4)(2 5)(7 10)(8 11)(3 6 9 12)",
        );
        let dot = to_dot(&d0);
        assert_eq!(dot.matches("[shape=circle").count(), 11);
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert_eq!(dot.matches("// face").count(), 1);
    }
}
