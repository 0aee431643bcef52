//! List-valued properties travel as a single `urn:og:List` literal.
//!
//! ```bash
//! cargo run --example composite_lists
//! ```

use onegraph::datatypes::{
    coerce_lpg_value, coerce_to_lpg, list_fold, list_unfold, CoercionTally, LpgScalar,
};
use onegraph::{vocab, Literal, LpgValue, OgList, Scalar};

fn main() -> onegraph::Result<()> {
    let list = OgList(vec![
        Scalar::Integer(1),
        Scalar::Integer(2),
        Scalar::Integer(3),
    ]);
    let lit = list_fold(&list);
    println!("{} ^^ {}", lit.lexical(), lit.datatype());
    assert_eq!(list_unfold(&lit)?, list);

    // spacing and signs are not significant
    let loose = Literal::typed_str("[ +1,2 ,3]", vocab::OG_LIST)?;
    println!(
        "{:?} -> {}",
        loose.lexical(),
        list_fold(&list_unfold(&loose)?).lexical()
    );

    let tags = LpgValue::List(vec![
        LpgScalar::String("red".into()),
        LpgScalar::Integer(7),
        LpgScalar::Boolean(false),
    ]);
    let as_rdf = coerce_lpg_value(&tags)?;
    println!("{:?} -> {}", tags, as_rdf.lexical());

    let mut tally = CoercionTally::default();
    println!("back: {:?}", coerce_to_lpg(&as_rdf, &mut tally));

    let broken = Literal::typed_str("this is not an integer", vocab::XSD_INTEGER)?;
    println!(
        "ill-typed: {:?} (ill_typed={})",
        coerce_to_lpg(&broken, &mut tally),
        tally.ill_typed
    );
    Ok(())
}
