use super::*;

fn t(s: &str) -> SpaceTerm {
    parse_term(s).unwrap()
}

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn normalize_examples() {
    assert_eq!(normalize(&t("K(1)")).unwrap(), SpaceTerm::Point);
    assert_eq!(normalize(&t("Y(w)")).unwrap(), SpaceTerm::SumOmega(SeqSpec::KAlong(o("w"))));
    assert_eq!(normalize(&t("sum(1, sum(1))")).unwrap(), t("sum(1, 1)"));
    assert_eq!(normalize(&t("K(3)")).unwrap(), t("glue(const: K(2))"));
    assert_eq!(normalize(&t("K(w+1)")).unwrap(), t("glue(K-along: w)"));
    assert_eq!(normalize(&t("Z(2)")).unwrap(), t("glue(const: w*K(2))"));
    assert_eq!(normalize(&t("Z(w)")).unwrap(), t("glue(wK-along: w)"));
}

#[test]
fn countability_and_compactness() {
    assert!(is_compact(&t("glue(const: C)")));
    assert!(!kernel_compact(&t("w*C")));
    assert!(kernel_compact(&t("sum(w*1, C)")));
    assert!(kernel_compact(&t("sumw(prefix([C]; const: 1))")));
    assert!(!kernel_compact(&t("N")));
    assert!(is_countable(&t("Z(w^2)")));
    assert!(!is_countable(&t("attach(K(3))")));
    assert!(!is_compact(&t("Z(3)")));
    assert!(is_compact(&t("K(w^w+1)")));
}

#[test]
fn ranks() {
    assert_eq!(cb_rank(&t("K(w+1)")).unwrap(), o("w+1"));
    assert_eq!(cb_rank(&t("Z(w)")).unwrap(), o("w+1"));
    assert_eq!(cb_rank(&t("attach(Z(w))")).unwrap(), o("w"));
    assert_eq!(cb_rank(&t("glue(const: C)")).unwrap(), o("0"));
    assert_eq!(cb_rank(&t("glue(prefix([K(5)]; const: 1))")).unwrap(), o("5"));
    assert_eq!(cb_rank(&t("w*1")).unwrap(), o("1"));
    assert_eq!(cb_rank(&t("Y(w)")).unwrap(), o("w"));
}

#[test]
fn cb_types() {
    assert_eq!(cb_type(&t("Z(w)")).unwrap(), CbType { rank: o("w+1"), degree: Degree::Finite(1) });
    assert!(is_simple(&t("Z(w)")).unwrap());
    assert_eq!(cb_type(&t("sum(K(3), K(3))")).unwrap(), CbType { rank: o("3"), degree: Degree::Finite(2) });
    assert!(!is_simple(&t("Y(w)")).unwrap());
    assert_eq!(cb_type(&t("Y(3)")).unwrap().degree, Degree::Omega);
    assert_eq!(
        cb_type(&t("glue(prefix([K(2), K(2)]; const: 1))")).unwrap(),
        CbType { rank: o("2"), degree: Degree::Finite(3) }
    );
    assert_eq!(cb_type(&t("C")), Err(SpaceError::Uncountable));
}

#[test]
fn compact_ranks() {
    assert_eq!(comp_rank(&t("Y(w)")).unwrap(), o("w"));
    assert_eq!(comp_rank(&t("Z(w)")).unwrap(), o("w"));
    assert_eq!(comp_rank(&t("C")).unwrap(), o("0"));
    assert_eq!(comp_rank(&t("sum(w*1, C)")).unwrap(), o("1"));
    assert_eq!(comp_rank(&t("N")), Err(SpaceError::KernelNotCompact));
}

#[test]
fn reaches() {
    assert_eq!(reach(&t("K(w+1)"), &o("w")).unwrap(), o("w"));
    assert_eq!(reach(&t("1"), &o("w")).unwrap(), o("2"));
    assert_eq!(reach(&t("C"), &o("w")).unwrap(), o("1"));
    assert_eq!(reach(&t("K(4)"), &o("w")).unwrap(), o("5"));
    assert_eq!(reach(&t("Y(w)"), &o("w")).unwrap(), o("w"));
    assert_eq!(reach(&t("1"), &o("3")), Err(SpaceError::NotLimit(o("3"))));
}

#[test]
fn limit_partitions() {
    assert!(limit_partition_selfdual(&t("Y(w)"), &o("w")).unwrap());
    assert!(!limit_partition_selfdual(&t("Z(w)"), &o("w")).unwrap());
    assert!(limit_partition_selfdual(&t("sum(Y(w), Z(w))"), &o("w")).unwrap());
    assert!(limit_partition_selfdual(&t("w*K(w+1)"), &o("w")).unwrap());
    assert!(!limit_partition_selfdual(&t("w*K(5)"), &o("w")).unwrap());
    assert!(limit_partition_selfdual(&t("Z(w*2)"), &o("w")).unwrap());
}

#[test]
fn parse_round_trip_and_errors() {
    for s in [
        "sum(C, Y(w))",
        "glue(prefix([K(2), C]; K-along: w^2))",
        "attach(Z(w+1))",
        "sumw(wK-along: w*3)",
        "sumw(const: 1)",
    ] {
        let term = t(s);
        assert_eq!(t(&term.to_string()), term);
    }
    assert_eq!(t("C (+) 1 (+) N"), t("sum(C, 1, N)"));
    assert!(matches!(parse_term("K(w)"), Err(TermParseError::Invalid(_))));
    assert!(matches!(parse_term("attach(C)"), Err(TermParseError::Invalid(_))));
    assert!(matches!(parse_term("glue(K-along: 3)"), Err(TermParseError::Invalid(_))));
    assert_eq!(
        parse_term("sum(C, Q)"),
        Err(TermParseError::Syntax { pos: 7, msg: "expected a space term".into() })
    );
}

#[test]
fn empty_is_rejected() {
    assert_eq!(cb_rank(&SpaceTerm::Empty), Err(SpaceError::EmptySpace));
}
