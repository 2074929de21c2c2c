//! VeriPB kernel-format proofs.
//!
//! Grammar (one rule per line, `*` starts a comment line):
//!
//! ```text
//! pseudo-Boolean proof version 3.0
//! f [M]
//! pol <rpn>                       ids, xN / ~xN axioms, +, k *, k d, s, xN w
//! rup <constraint> ; [ids]
//! pbc <constraint> ; begin
//!   <steps>
//! end
//! red <constraint> ; xN -> (0|1|xM|~xM) ... [; begin
//!   goal (<id>|#new)
//!     <steps>
//!   end
//! end]
//! dom                             same surface as red
//! del id <ids>
//! weaken <id> xN
//! sol <literals>
//! soli <literals>
//! output NONE
//! conclusion UNSAT [: <id>] | conclusion SAT | conclusion BOUNDS ...
//! end pseudo-Boolean proof
//! ```
//!
//! Constraints use OPB term syntax and must be `>=`.

mod ast;
mod parser;
mod tokenize;
mod writer;

pub use crate::opb::ParseError;
pub use ast::*;
pub use parser::{parse_proof, ProofReader};
pub use tokenize::{tokenize, ProofToken};
pub use writer::{serialize_proof, step_to_string};

pub const KERNEL_VERSION: &str = "3.0";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbcore::{Constraint, Image, Var};

    fn x(i: u32) -> Var {
        Var::from_index(i)
    }

    fn wrap(body: &str) -> String {
        format!("pseudo-Boolean proof version 3.0\n{body}end pseudo-Boolean proof\n")
    }

    #[test]
    fn minimal_refutation() {
        let p = parse_proof(&wrap("f 2\npol 1 2 +\nconclusion UNSAT\n")).unwrap();
        assert_eq!(p.version, "3.0");
        assert_eq!(p.steps.len(), 3);
        assert_eq!(p.steps[0].step, ProofStep::LoadFormula(Some(2)));
        assert_eq!(
            p.steps[1].step,
            ProofStep::Pol(vec![PolOp::Id(1), PolOp::Id(2), PolOp::Add])
        );
        assert_eq!(p.steps[1].line, 3);
    }

    #[test]
    fn pol_operators() {
        let p = parse_proof(&wrap("pol 1 2 * x3 + 3 d s x2 w ~x4 + ;\n")).unwrap();
        assert_eq!(
            p.steps[0].step,
            ProofStep::Pol(vec![
                PolOp::Id(1),
                PolOp::Multiply(2u64.into()),
                PolOp::Axiom(x(3).pos()),
                PolOp::Add,
                PolOp::Divide(3u64.into()),
                PolOp::Saturate,
                PolOp::Weaken(x(2)),
                PolOp::Axiom(x(4).neg()),
                PolOp::Add,
            ])
        );
    }

    #[test]
    fn rup_with_and_without_hints() {
        let p = parse_proof(&wrap("rup +1 x1 >= 1 ; 3 4\nrup >= 1 ;\n")).unwrap();
        match &p.steps[0].step {
            ProofStep::Rup {
                target,
                hints,
                hinted,
            } => {
                assert_eq!(*target, Constraint::clause([x(1).pos()]));
                assert_eq!(hints, &[3, 4]);
                assert!(hinted);
            }
            other => panic!("{other:?}"),
        }
        match &p.steps[1].step {
            ProofStep::Rup { target, hinted, .. } => {
                assert!(target.is_contradiction());
                assert!(!hinted);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nested_pbc_depth_two() {
        let body = "pbc +1 x1 >= 1 ; begin\n  pbc +1 x2 >= 1 ; begin\n    pol 1 2 +\n  end\n  pol 3 4 +\nend\n";
        let p = parse_proof(&wrap(body)).unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.depth(), 2);
    }

    #[test]
    fn red_with_goals() {
        let body = "red +1 x1 >= 1 ; x1 -> x2 x2 -> ~x1 x3 -> true ; begin\n  goal 4\n    rup >= 1 ; 1\n  end\n  proofgoal #new\n  end\nend\n";
        let p = parse_proof(&wrap(body)).unwrap();
        let ProofStep::Red(r) = &p.steps[0].step else {
            panic!()
        };
        assert_eq!(r.witness.get(x(2)), Some(Image::Lit(x(1).neg())));
        assert_eq!(r.witness.get(x(3)), Some(Image::Const(true)));
        assert_eq!(r.goals.len(), 2);
        assert_eq!(r.goals[0].id, GoalId::Existing(4));
        assert_eq!(r.goals[0].steps.len(), 1);
        assert_eq!(r.goals[1].id, GoalId::NewConstraint);
    }

    #[test]
    fn misc_rules() {
        let body = "del id 3 5\nweaken 2 x7\nsol x1 ~x2\nsoli\noutput NONE\nconclusion UNSAT : 9\n";
        let p = parse_proof(&wrap(body)).unwrap();
        let steps: Vec<_> = p.steps.into_iter().map(|l| l.step).collect();
        assert_eq!(
            steps,
            vec![
                ProofStep::Del(vec![3, 5]),
                ProofStep::Weaken { id: 2, var: x(7) },
                ProofStep::Sol(vec![x(1).pos(), x(2).neg()]),
                ProofStep::SolImplied(vec![]),
                ProofStep::Output,
                ProofStep::Conclusion {
                    kind: ConclusionKind::Unsat,
                    reference: Some(9)
                },
            ]
        );
    }

    #[test]
    fn errors_have_lines() {
        let cases = [
            ("frobnicate 1\n", 2, "unsupported rule"),
            ("rup +1 x1 >= 1\n", 2, "missing terminating"),
            ("pbc +1 x1 >= 1 ; begin\npol 1 2 +\n", 2, "unterminated"),
            ("end\n", 2, "unbalanced"),
            ("pol\n", 2, "empty pol"),
            ("pol 1 *\n", 2, "without an operand"),
            ("pol 1 0 *\n", 2, "invalid factor"),
            ("pol 1 2\n", 2, "leaves 2"),
            ("pol 1 +\n", 2, "without an operand"),
            ("pol * 2\n", 2, "without an operand"),
            ("del 3\n", 2, "expected `id`"),
            ("red +1 x1 >= 1 ; x1 -> x2 x1 -> x3\n", 2, "mapped twice"),
            ("pbc >= 1 ; begin\nconclusion UNSAT\nend\n", 3, "not allowed inside"),
            ("goal 1\n", 2, "outside"),
            ("rup +1 x1 = 1 ;\n", 2, "unsupported relational"),
            ("conclusion NONE\n", 2, "unsupported conclusion"),
            ("rup >= 1 ; 0\n", 2, "invalid constraint id"),
            ("end 3\n", 2, "unsupported token"),
        ];
        for (body, line, msg) in cases {
            let err = parse_proof(&wrap(body)).unwrap_err();
            assert_eq!(err.line, line, "{body:?}: {err}");
            assert!(err.message.contains(msg), "{body:?}: {err}");
        }
    }

    #[test]
    fn header_and_trailer_errors() {
        let err = parse_proof("pseudo-Boolean proof version 2.0\n").unwrap_err();
        assert!(err.message.contains("unsupported proof version"));
        let err = parse_proof("").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_proof("pseudo-Boolean proof version 3.0\nf 1\n").unwrap_err();
        assert!(err.message.contains("missing `end pseudo-Boolean proof`"));
        let err = parse_proof(&format!("{}f\n", wrap(""))).unwrap_err();
        assert!(err.message.contains("after end"));
        assert_eq!(err.line, 3);
    }

    #[test]
    fn empty_witness_with_goals_rejected() {
        let err = parse_proof(&wrap("red +1 x1 >= 1 ; ; begin\ngoal #new\nend\nend\n")).unwrap_err();
        assert!(err.message.contains("empty witness"));
    }

    #[test]
    fn serializer_round_trip() {
        let text = wrap(
            "f 3\npol 1 2 * x3 + 3 d s x2 w\nrup +1 x1 >= 1 ; 3 4\npbc +2 ~x1 >= 1 ; begin\n  rup >= 1 ;\nend\nred +1 x1 >= 1 ; x1 -> x2 x2 -> x1 ; begin\n  goal #new\n    rup >= 1 ; 1\n  end\nend\ndom +1 x4 >= 1 ; x4 -> 1\ndel id 2\nweaken 1 x2\nsol x1\nconclusion SAT\n",
        );
        let p = parse_proof(&text).unwrap();
        let again = parse_proof(&serialize_proof(&p)).unwrap();
        assert_eq!(again.without_lines(), p.without_lines());
        assert_eq!(serialize_proof(&p), text);
    }

    #[test]
    fn streaming_reader_yields_steps_lazily() {
        let text = wrap("f 1\npol 1 1 +\n");
        let mut reader = ProofReader::new(text.as_bytes()).unwrap();
        assert_eq!(reader.next().unwrap().unwrap().line, 2);
        assert_eq!(reader.next().unwrap().unwrap().line, 3);
        assert!(reader.next().is_none());
    }

    #[test]
    fn invalid_utf8_is_an_error() {
        let bytes = b"pseudo-Boolean proof version 3.0\npol \xff\n";
        let mut reader = ProofReader::new(&bytes[..]).unwrap();
        let err = reader.next().unwrap().unwrap_err();
        assert_eq!(err.line, 2);
        assert!(reader.next().is_none());
    }
}
