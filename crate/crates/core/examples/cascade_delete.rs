//! Deleting a statement that others talk about.
//!
//! ```bash
//! cargo run --example cascade_delete
//! ```

use onegraph::{DeletePolicy, Literal, Store, Term};

fn main() -> onegraph::Result<()> {
    let mut store = Store::with_seed(7);
    let knows = store.insert_ground(
        Term::local("Alice")?,
        Term::local("knows")?,
        Term::local("Bob")?,
    )?;
    let since = store.insert_assertion(
        Term::SidRef(knows),
        Term::local("since")?,
        Literal::integer(2020).into(),
    )?;
    store.insert_assertion(
        Term::SidRef(since),
        Term::local("source")?,
        Term::local("NYTimes")?,
    )?;
    store.insert_ground(
        Term::local("Bob")?,
        Term::local("name")?,
        Literal::string("Bob").into(),
    )?;

    println!("dependents of {knows}: {:?}", store.dependents(knows));
    match store
        .clone()
        .delete_statement(knows, DeletePolicy::Restrict)
    {
        Ok(n) => println!("restrict removed {n}"),
        Err(e) => println!("restrict refused: {e}"),
    }
    let removed = store.delete_statement(knows, DeletePolicy::Cascade)?;
    println!("cascade removed {removed}, {} left", store.len());
    store.check_integrity().expect("integrity");
    Ok(())
}
