//! Brute-force RDF graph isomorphism for small graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use shaclform::rdf::{Graph, Term};

type Row = (Term, Term, Term);

fn rows(g: &Graph) -> BTreeSet<Row> {
    g.iter()
        .map(|t| (t.subject().clone(), t.predicate().clone(), t.object().clone()))
        .collect()
}

fn blanks(rows: &BTreeSet<Row>) -> Vec<Term> {
    let mut out = BTreeSet::new();
    for (s, _, o) in rows {
        for t in [s, o] {
            if t.is_blank() {
                out.insert(t.clone());
            }
        }
    }
    out.into_iter().collect()
}

/// Blank-independent fingerprint of a blank node: its outgoing and
/// incoming edges with other blanks erased.
fn signature(node: &Term, rows: &BTreeSet<Row>) -> Vec<String> {
    let show = |t: &Term| if t.is_blank() { "_".to_string() } else { t.to_string() };
    let mut sig: Vec<String> = rows
        .iter()
        .filter_map(|(s, p, o)| {
            if s == node {
                Some(format!("out {p} {}", if o == node { "self".into() } else { show(o) }))
            } else if o == node {
                Some(format!("in {} {p}", show(s)))
            } else {
                None
            }
        })
        .collect();
    sig.sort();
    sig
}

fn apply(map: &HashMap<Term, Term>, t: &Term) -> Option<Term> {
    if t.is_blank() {
        map.get(t).cloned()
    } else {
        Some(t.clone())
    }
}

/// True iff some bijection between blank nodes maps `a` onto `b` exactly.
/// Exponential in the worst case; intended for graphs with at most a dozen
/// blank nodes.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let (ra, rb) = (rows(a), rows(b));
    if ra.len() != rb.len() {
        return false;
    }
    let ground = |r: &&Row| !r.0.is_blank() && !r.2.is_blank();
    let ga: BTreeSet<&Row> = ra.iter().filter(ground).collect();
    let gb: BTreeSet<&Row> = rb.iter().filter(ground).collect();
    if ga != gb {
        return false;
    }
    let (ba, bb) = (blanks(&ra), blanks(&rb));
    if ba.len() != bb.len() {
        return false;
    }
    let sa: Vec<Vec<String>> = ba.iter().map(|n| signature(n, &ra)).collect();
    let sb: Vec<Vec<String>> = bb.iter().map(|n| signature(n, &rb)).collect();
    let mut hist: BTreeMap<&Vec<String>, i64> = BTreeMap::new();
    for s in &sa {
        *hist.entry(s).or_default() += 1;
    }
    for s in &sb {
        *hist.entry(s).or_default() -= 1;
    }
    if hist.values().any(|&n| n != 0) {
        return false;
    }
    let blank_rows: Vec<&Row> = ra.iter().filter(|r| !ground(r)).collect();
    let mut map = HashMap::new();
    let mut used = vec![false; bb.len()];
    search(0, &ba, &bb, &sa, &sb, &blank_rows, &rb, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn search(
    i: usize,
    ba: &[Term],
    bb: &[Term],
    sa: &[Vec<String>],
    sb: &[Vec<String>],
    blank_rows: &[&Row],
    rb: &BTreeSet<Row>,
    map: &mut HashMap<Term, Term>,
    used: &mut [bool],
) -> bool {
    // Every row whose blanks are all mapped must land in b.
    let consistent = blank_rows.iter().all(|(s, p, o)| match (apply(map, s), apply(map, o)) {
        (Some(s2), Some(o2)) => rb.contains(&(s2, p.clone(), o2)),
        _ => true,
    });
    if !consistent {
        return false;
    }
    if i == ba.len() {
        return true;
    }
    for j in 0..bb.len() {
        if used[j] || sa[i] != sb[j] {
            continue;
        }
        used[j] = true;
        map.insert(ba[i].clone(), bb[j].clone());
        if search(i + 1, ba, bb, sa, sb, blank_rows, rb, map, used) {
            return true;
        }
        map.remove(&ba[i]);
        used[j] = false;
    }
    false
}
