use coreep::gen::{matrix_with_structure, GenSpec};
use coreep::{core_ep, core_ep_decompose, drazin, index, Matrix32, Relation, Tolerance32};

#[test]
fn single_precision_worked_example() {
    let tol = Tolerance32::default();
    let a = Matrix32::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
    let b = Matrix32::from_real_rows(&[[1.0, 2.0, 3.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
    assert_eq!(index(&b, &tol).unwrap(), 2);
    let bd = drazin(&b, &tol).unwrap().value;
    let expected = Matrix32::from_real_rows(&[[1.0, 2.0, 5.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
    assert!((&bd - &expected).norm_fro() < 1e-5);
    assert!(Relation::CoreEp.evaluate(&a, &b, &tol).unwrap().holds);
    assert!(Relation::CoreEp.evaluate(&b, &a, &tol).unwrap().holds);
    assert!(!Relation::Drazin.evaluate(&a, &b, &tol).unwrap().holds);
}

#[test]
fn single_precision_generated() {
    let tol = Tolerance32::default();
    for seed in 0..20 {
        let spec = GenSpec::new(6, 2, 3, seed);
        let a = matrix_with_structure::<f32>(&spec).unwrap().matrix;
        assert_eq!(index(&a, &tol).unwrap(), 3);
        let parts = core_ep_decompose(&a, &tol).unwrap();
        assert!(parts.check(&a, &tol).all_pass());
        let x = core_ep(&a, &tol).unwrap();
        assert!(x.residuals.all_pass());
    }
}
