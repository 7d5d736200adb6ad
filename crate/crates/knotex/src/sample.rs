//! Sources of test diagrams: braid closures and a seeded random generator.

use crate::diagram::{Crossing, Diagram, DiagramError, Sign};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// One loose end while a braid is being stacked up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum End {
    Bottom(usize),
    Port(usize, u8), // crossing, port: 0 = lower-left, 1 = lower-right, 2 = upper-left, 3 = upper-right
    Top(usize),
}

/// Close up a braid word on `strands` strands.  Letter `k > 0` crosses
/// strands k, k+1 with the left strand on top; `k < 0` puts the right strand
/// on top.  Fails unless the closure is a single knot strand.
///
/// Panics if a letter is 0 or out of range for the strand count.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    if word.is_empty() {
        return Err(DiagramError::Empty);
    }
    for &k in word {
        let i = k.unsigned_abs() as usize;
        assert!(
            (1..strands).contains(&i),
            "braid letter {k} out of range for {strands} strands"
        );
    }
    // components of the closure = cycles of the strand permutation
    let mut perm: Vec<usize> = (0..strands).collect();
    for &k in word {
        let i = k.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
        }
    }
    if cycles != 1 {
        return Err(DiagramError::MultipleComponents(cycles));
    }

    // stack the crossings, recording which end sits above which
    let mut up_from: BTreeMap<End, End> = BTreeMap::new();
    let mut open: Vec<End> = (0..strands).map(End::Bottom).collect();
    for (x, &k) in word.iter().enumerate() {
        let i = k.unsigned_abs() as usize - 1;
        up_from.insert(open[i], End::Port(x, 0));
        up_from.insert(open[i + 1], End::Port(x, 1));
        open[i] = End::Port(x, 2);
        open[i + 1] = End::Port(x, 3);
    }
    for (p, &e) in open.iter().enumerate() {
        up_from.insert(e, End::Top(p));
    }

    // walk the knot, numbering arcs between passages
    let c = word.len();
    let mut under: Vec<Option<(usize, usize)>> = vec![None; c];
    let mut over: Vec<Option<(usize, usize)>> = vec![None; c];
    let mut t = 0usize;
    let mut cur = End::Bottom(0);
    loop {
        match up_from[&cur] {
            End::Top(p) => {
                // closure: same arc continues from the bottom
                cur = End::Bottom(p);
                if cur == End::Bottom(0) {
                    break;
                }
            }
            End::Port(x, port) => {
                t += 1;
                let (in_arc, out_arc) = (t, t % (2 * c) + 1);
                // entering lower-left exits upper-right and vice versa
                let left = port == 0;
                let is_over = (word[x] > 0) == left;
                let slot = if is_over { &mut over[x] } else { &mut under[x] };
                debug_assert!(slot.is_none());
                *slot = Some((in_arc, out_arc));
                cur = End::Port(x, if left { 3 } else { 2 });
            }
            End::Bottom(_) => unreachable!(),
        }
    }
    debug_assert_eq!(t, 2 * c);

    let mut crossings = Vec::with_capacity(c);
    for x in 0..c {
        let (u_in, u_out) = under[x].expect("single-cycle closure passes every crossing");
        let (o_in, o_out) = over[x].expect("single-cycle closure passes every crossing");
        // left strand on top reverses the counterclockwise order of the over ends
        let (arcs, sign) = if word[x] > 0 {
            ([u_in, o_out, u_out, o_in], Sign::Minus)
        } else {
            ([u_in, o_in, u_out, o_out], Sign::Plus)
        };
        crossings.push(Crossing { arcs, sign });
    }
    Diagram::from_signed(crossings)
}

/// A random knot diagram with about `crossings` crossings, as the closure of
/// a random braid word on `strands` strands.  Deterministic in the seed.
pub fn random_knot(seed: u64, crossings: usize, strands: usize) -> Diagram {
    assert!(strands >= 2, "need at least 2 strands");
    // a single n-cycle needs at least n-1 transpositions, of matching parity
    let mut c = crossings.max(1).max(strands - 1);
    if c % 2 != (strands - 1) % 2 {
        c += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100_000 {
        let word: Vec<i32> = (0..c)
            .map(|_| {
                let k = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    k
                } else {
                    -k
                }
            })
            .collect();
        match braid_closure(strands, &word) {
            Ok(d) => return d,
            Err(DiagramError::MultipleComponents(_)) => continue,
            Err(e) => panic!("braid closure failed: {e}"),
        }
    }
    panic!("no single-component closure found for {crossings} crossings on {strands} strands");
}

/// The standard 3-crossing diagram: tuples (1,4,2,5), (3,6,4,1), (5,2,6,3),
/// every sign `+`.
pub fn trefoil() -> Diagram {
    Diagram::from_tuples(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
}

/// The standard 4-crossing diagram with two crossings of each sign.
pub fn figure_eight() -> Diagram {
    braid_closure(3, &[1, -2, 1, -2]).unwrap()
}
