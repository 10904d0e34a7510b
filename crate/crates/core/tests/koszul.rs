use std::sync::Arc;

use ainfty::coalgebra::{alpha, Suspended};
use ainfty::graded::{inversions, koszul_permutation_exponent, single, Shape};
use ainfty::{random, Field, GradedSpace, Index, MultilinearMap, Op, Tensor};
use proptest::prelude::*;

/// A symbol in a formal word: a map (with its table) or an input basis element.
#[derive(Clone)]
enum Sym<'a> {
    Map(&'a MultilinearMap),
    Elem(u32, i64),
}

fn degree(s: &Sym) -> i64 {
    match s {
        Sym::Map(m) => m.degree,
        Sym::Elem(_, d) => *d,
    }
}

/// Evaluates `(f_1 ⊗ ... ⊗ f_k)(v_1 ⊗ ... ⊗ v_n)` by literally sliding each map,
/// rightmost first, across the elements in front of its block and counting swaps.
fn slide_oracle(maps: &[MultilinearMap], input: &[u32], space: &GradedSpace, field: Field) -> Tensor {
    let mut word: Vec<Sym> = maps.iter().map(Sym::Map).collect();
    word.extend(input.iter().map(|&k| Sym::Elem(k, space.degree(k))));
    let mut sign = 0i64;
    let mut block_start = input.len();
    for (m, map) in maps.iter().enumerate().rev() {
        block_start -= map.arity;
        let mut pos = m;
        let target = m + block_start;
        while pos < target {
            sign += degree(&word[pos]) * degree(&word[pos + 1]);
            word.swap(pos, pos + 1);
            pos += 1;
        }
    }
    // word now reads f_1 v.. f_2 v.. ...; apply each map to the elements after it
    let mut result = Tensor::basis(Index::new(), field.sign(sign));
    let mut k = 0;
    while k < word.len() {
        let Sym::Map(map) = word[k] else { unreachable!("every element follows its map") };
        let args: Vec<u32> = word[k + 1..k + 1 + map.arity]
            .iter()
            .map(|s| match s {
                Sym::Elem(i, _) => *i,
                Sym::Map(_) => unreachable!("blocks contain elements only"),
            })
            .collect();
        let value = map.value(&args).cloned().unwrap_or_else(Tensor::zero);
        result = result.tensor(&value);
        k += 1 + map.arity;
    }
    result
}

fn space_strategy() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_of_maps_matches_sliding(seed in space_strategy(), arities in proptest::collection::vec(0usize..3, 1..4)) {
        let field = Field::Rational;
        let mut rng = random::rng(seed);
        let v = random::space(&mut rng, 3, -2, 2);
        let maps: Vec<MultilinearMap> = arities
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let a = a + 1;
                let deg = (seed >> (8 * k)) as i64 % 3 - 1;
                random::multilinear(&mut rng, &v, &v, a, deg, field, 0.7)
            })
            .collect();
        let op = Op::tensor(&maps.iter().map(Op::table).collect::<Vec<_>>(), field);
        let shape = op.source().clone();
        for idx in shape.tuples() {
            prop_assert_eq!(op.apply_basis(&idx), slide_oracle(&maps, &idx, &v, field));
        }
    }

    #[test]
    fn interchange_law(seed in space_strategy()) {
        let field = Field::Prime(5);
        let mut rng = random::rng(seed);
        let v = random::space(&mut rng, 3, -2, 2);
        let degs = [(seed % 3) as i64 - 1, (seed / 3 % 3) as i64 - 1, (seed / 9 % 3) as i64 - 1, (seed / 27 % 3) as i64 - 1];
        let maps: Vec<Op> = degs.iter().map(|&d| Op::graded_map(&random::graded_map(&mut rng, &v, &v, d, field, 0.7))).collect();
        let (f, g, f2, g2) = (&maps[0], &maps[1], &maps[2], &maps[3]);
        let lhs = Op::tensor(&[f.clone(), g.clone()], field).after(&Op::tensor(&[f2.clone(), g2.clone()], field)).unwrap();
        let rhs = Op::tensor(&[f.after(f2).unwrap(), g.after(g2).unwrap()], field).signed(g.degree() * f2.degree());
        prop_assert!(lhs.disagreements(&rhs, 1).unwrap().is_empty());
    }

    #[test]
    fn permutation_sign_matches_adjacent_swaps(degrees in proptest::collection::vec(-2i64..3, 1..6), seed in any::<u64>()) {
        let n = degrees.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for k in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (state >> 33) as usize % (k + 1));
        }
        // bubble the identity arrangement into `perm`, one adjacent swap at a time
        let mut current: Vec<usize> = (0..n).collect();
        let mut e = 0i64;
        for target in 0..n {
            let mut pos = current.iter().position(|&x| x == perm[target]).unwrap();
            while pos > target {
                e += degrees[current[pos]] * degrees[current[pos - 1]];
                current.swap(pos, pos - 1);
                pos -= 1;
            }
        }
        prop_assert_eq!(e.rem_euclid(2), koszul_permutation_exponent(&degrees, &perm).rem_euclid(2));
        let even = vec![0i64; n];
        prop_assert_eq!(koszul_permutation_exponent(&even, &perm), 0);
        let odd = vec![1i64; n];
        prop_assert_eq!(koszul_permutation_exponent(&odd, &perm), inversions(&perm));
    }
}

#[test]
fn odd_map_passing_odd_element() {
    let field = Field::Rational;
    let v = Arc::new(GradedSpace::from_pairs([("a", 1), ("b", 0)]).unwrap());
    let id = Op::identity(Shape::single(&v), field);
    let d = Op::graded_map(&ainfty::GradedMap::from_entries(&v, &v, -1, field, [(0, 1, field.one())]).unwrap());
    let op = Op::tensor(&[id, d], field);
    // (id ⊗ d)(a ⊗ a) = (-1)^{|d||a|} a ⊗ b = -a ⊗ b
    let expected = Tensor::basis(Index::from_slice(&[0, 1]), field.from_i64(-1));
    assert_eq!(op.apply_basis(&[0, 0]), expected);
    assert_eq!(op.apply_basis(&[1, 0]), Tensor::basis(Index::from_slice(&[1, 1]), field.one()));
}

#[test]
fn suspension_signs() {
    let field = Field::Rational;
    let v = Arc::new(GradedSpace::from_pairs([("a", 0), ("b", -1), ("c", 2)]).unwrap());
    let s = Suspended::new(&v, field);
    for n in 1..=5 {
        let round = s.s_pow(n).after(&s.s_inv_pow(n)).unwrap();
        let expected = Op::id_power(&s.shifted, n, field).signed(alpha(n));
        assert!(round.disagreements(&expected, 1).unwrap().is_empty(), "n = {n}");
    }
    let expected: Vec<i64> = (1..=6).map(|n| Field::Rational.sign(alpha(n)).to_string().parse().unwrap()).collect();
    assert_eq!(expected, vec![1, -1, -1, 1, 1, -1]);
}

#[test]
fn memoized_operator_agrees_with_original() {
    let field = Field::Rational;
    let mut rng = random::rng(3);
    let v = random::space(&mut rng, 3, -1, 1);
    let m = Op::table(&random::multilinear(&mut rng, &v, &v, 2, 0, field, 0.8));
    let op = Op::tensor(&[m.clone(), Op::id_power(&v, 1, field)], field).after(&Op::tensor(&[Op::id_power(&v, 1, field), m.clone(), Op::id_power(&v, 1, field)], field)).unwrap();
    let memo = op.memoized();
    assert!(op.disagreements(&memo, 1).unwrap().is_empty());
    // a second pass reads from the cache and must still agree
    assert!(memo.disagreements(&op, 1).unwrap().is_empty());
}

#[test]
fn shape_mismatch_is_rejected() {
    let field = Field::Rational;
    let v = Arc::new(GradedSpace::from_pairs([("a", 0)]).unwrap());
    let w = Arc::new(GradedSpace::from_pairs([("b", 0), ("c", 1)]).unwrap());
    let f = Op::identity(Shape::single(&v), field);
    let g = Op::identity(Shape::single(&w), field);
    assert!(f.after(&g).is_err());
    assert!(f.minus(&g).is_err());
    let zero = Op::sum(vec![f.clone(), f.signed(1)]).unwrap();
    assert!(zero.apply_basis(&single(0)).is_zero());
}
