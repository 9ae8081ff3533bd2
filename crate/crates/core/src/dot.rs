//! Graphviz export of an orientation.

use std::fmt::Write;

use crate::exploration::EdgeClass;
use crate::orientation::Orientation;
use crate::surface_map::SurfaceMap;

fn color(c: EdgeClass) -> &'static str {
    match c {
        EdgeClass::B => "blue",
        EdgeClass::G => "green",
        EdgeClass::R => "red",
        EdgeClass::I => "black",
    }
}

/// One arrow per oriented edge in ascending edge order; unoriented edges are
/// drawn without a head. With `classes`, edges carry their class as colour
/// and label.
pub fn to_dot(map: &SurfaceMap, o: &Orientation, classes: Option<&[Option<EdgeClass>]>) -> String {
    let mut s = String::from("digraph orientation {\n  node [shape=circle];\n");
    for v in 0..map.num_vertices() {
        let _ = writeln!(s, "  {v} [label=\"{v}/{}\"];", o.outdeg(v));
    }
    for e in 0..map.num_edges() {
        let [a, b] = map.endpoints(e);
        let mut attrs = Vec::new();
        let (t, h) = match o.tail(e) {
            Some(t) => (t, o.other_end(e, t)),
            None => {
                attrs.push("dir=none".to_string());
                (a, b)
            }
        };
        if let Some(c) = classes.and_then(|cs| cs[e]) {
            attrs.push(format!("color={}", color(c)));
            attrs.push(format!("label=\"{c}\""));
        }
        if attrs.is_empty() {
            let _ = writeln!(s, "  {t} -> {h};");
        } else {
            let _ = writeln!(s, "  {t} -> {h} [{}];", attrs.join(", "));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn arrows_follow_tails() {
        let t = instances::tetrahedron();
        let mut o = Orientation::new(&t);
        let [a, b] = t.endpoints(0);
        o.set(0, b);
        let dot = to_dot(&t, &o, None);
        assert!(dot.contains(&format!("  {b} -> {a};")));
        assert!(dot.contains("dir=none"));
        assert_eq!(dot.matches("->").count(), 6);
    }

    #[test]
    fn classes_become_colours() {
        let t = instances::tetrahedron();
        let o = Orientation::new(&t);
        let mut classes = vec![None; 6];
        classes[2] = Some(EdgeClass::G);
        let dot = to_dot(&t, &o, Some(&classes));
        assert_eq!(dot.matches("color=green").count(), 1);
    }
}
