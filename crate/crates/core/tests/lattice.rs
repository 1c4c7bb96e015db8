use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use cubic_sing::lattice::{
    complement_generator_obstruction, config_lattice, glue, hyperbolic_plane, o16_lattice,
    parse_lattice_expr, parse_lattice_text, rank_signature_obstruction, FiniteAbelianGroup,
    IntLattice,
};
use cubic_sing::{Configuration, Error};

fn lat(s: &str) -> IntLattice {
    parse_lattice_expr(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn root_lattice_determinants() {
    for n in 1..=16 {
        assert_eq!(lat(&format!("A{n}")).det(), BigInt::from(n + 1));
    }
    for n in 4..=16 {
        assert_eq!(lat(&format!("D{n}")).det(), BigInt::from(4));
    }
    assert_eq!(lat("E6").det(), BigInt::from(3));
    assert_eq!(lat("E7").det(), BigInt::from(2));
    assert_eq!(lat("E8").det(), BigInt::one());
    assert_eq!(hyperbolic_plane().det(), BigInt::from(-1));
}

#[test]
fn o16_lattice_facts() {
    let t = o16_lattice();
    assert_eq!(t.rank(), 16);
    assert_eq!(t.signature(), (14, 2));
    assert!(t.is_even());
    assert_eq!(t.discriminant_group().unwrap(), FiniteAbelianGroup::new(vec![2; 6]).unwrap());
    assert_eq!(t.det(), BigInt::from(64));
    assert_eq!(lat("T"), t);
}

#[test]
fn discriminant_quadratic_forms() {
    // A_n: cyclic of order n+1 with q(generator) = n/(n+1) mod 2.
    for n in 1..=10i64 {
        let f = lat(&format!("A{n}")).discriminant_form().unwrap();
        assert_eq!(f.group.invariant_factors, vec![n as u64 + 1]);
        let mut qs: Vec<BigRational> = f.elements().unwrap().iter().map(|x| f.q_of(x)).collect();
        qs.sort();
        // q(k g) = k^2 n / (n+1) mod 2, so the multiset is fixed.
        let mut want: Vec<BigRational> = (0..=n)
            .map(|k| {
                let v = q(k * k * n, n + 1);
                let two = BigRational::from_integer(BigInt::from(2));
                
                &v - (&v / &two).floor() * &two
            })
            .collect();
        want.sort();
        assert_eq!(qs, want, "A{n}");
        assert!(f.satisfies_polarization());
    }
    // E6: Z/3 with the nonzero values 4/3.
    let f = lat("E6").discriminant_form().unwrap();
    let nonzero: Vec<BigRational> = f
        .elements()
        .unwrap()
        .iter()
        .map(|x| f.q_of(x))
        .filter(|v| !v.is_zero())
        .collect();
    assert_eq!(nonzero, vec![q(4, 3), q(4, 3)]);
    // E7: Z/2 with q = 3/2.
    let f = lat("E7").discriminant_form().unwrap();
    assert_eq!(f.q, vec![q(3, 2)]);
}

#[test]
fn text_format() {
    let l = lat("A2");
    assert_eq!(l.to_text(), "rank 2\n2 -1\n-1 2\n");
    assert_eq!(parse_lattice_text("rank 2\n2 -1\n-1 2\n").unwrap(), l);
    assert!(matches!(parse_lattice_text("rank 2\n2 1\n0 2\n"), Err(Error::NotSymmetric)));
    assert!(matches!(parse_lattice_text("rank 2\n1 1\n1 1\n"), Err(Error::Degenerate)));
    assert!(parse_lattice_text("rank 2\n2 -1\n").is_err());
    assert!(parse_lattice_text("2 -1\n-1 2\n").is_err());
    assert!(parse_lattice_text("rank 0\n").is_err());
    assert!(parse_lattice_text("rank 2\n-2 -1\n--1 -1\n").is_err());
}

#[test]
fn expression_errors() {
    for bad in ["", "+", "A0", "2", "X1", "25A1", "A1++A2", "0U"] {
        assert!(parse_lattice_expr(bad).is_err(), "{bad:?}");
    }
    assert_eq!(lat("2U").signature(), (2, 2));
}

#[test]
fn eight_a1_has_an_even_unimodular_overlattice() {
    let f = lat("8A1").discriminant_form().unwrap();
    let over = f.even_overlattices().unwrap();
    let unimodular: Vec<_> = over
        .iter()
        .filter(|o| o.lattice.det() == BigInt::one())
        .collect();
    assert!(!unimodular.is_empty());
    for o in &unimodular {
        assert_eq!(o.subgroup.order(), 16);
        assert!(o.lattice.is_even());
        assert_eq!(o.lattice.signature(), (8, 0));
    }
    for o in &over {
        let index = o.subgroup.order() as u64;
        assert_eq!(o.lattice.det() * BigInt::from(index * index), BigInt::from(256));
    }
}

#[test]
fn d4_squared_overlattices() {
    let f = lat("2D4").discriminant_form().unwrap();
    let isotropic = f.isotropic_subgroups().unwrap();
    let of_order = |n| isotropic.iter().filter(|h| h.order() == n).count();
    assert_eq!((of_order(1), of_order(2), of_order(4)), (1, 9, 6));
}

#[test]
fn gluing_d4_with_itself_gives_e8() {
    let d4 = lat("D4");
    let g = glue(&d4, &d4, &[(vec![1, 0], vec![1, 0]), (vec![0, 1], vec![0, 1])]).unwrap();
    assert_eq!(g.overlattice.det(), BigInt::one());
    assert!(g.discriminant.is_trivial());
}

#[test]
fn obstructions_on_the_o16_lattice() {
    let t = o16_lattice();
    for cfg in ["15A1", "A15", "E8+E7", "D16", "3D4+3A1"] {
        let s = config_lattice(&cfg.parse::<Configuration>().unwrap()).unwrap();
        assert!(rank_signature_obstruction(&s, &t).unwrap().fires, "{cfg}");
    }
    for cfg in ["14A1", "A14", "E8+E6", "3D4+2A1"] {
        let s = config_lattice(&cfg.parse::<Configuration>().unwrap()).unwrap();
        assert!(!rank_signature_obstruction(&s, &t).unwrap().fires, "{cfg}");
    }
    let a12 = complement_generator_obstruction(&lat("A12"), &t).unwrap();
    assert!(a12.fires);
    assert_eq!(a12.witness["order_a_s"], 13);
    assert!(!complement_generator_obstruction(&lat("3D4+A1"), &t).unwrap().fires);
    assert!(matches!(
        complement_generator_obstruction(&IntLattice::from_rows(&[vec![1]]).unwrap(), &t),
        Err(Error::OddLattice)
    ));
}
