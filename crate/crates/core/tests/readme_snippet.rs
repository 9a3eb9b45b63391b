use chevalley_core::{CartanType, Chevalley, Result, Zmod};

#[test]
fn library_example() -> Result<()> {
    let g = Chevalley::for_type(CartanType::B(2), Zmod::new(3)?)?;
    let a = g.x_elem(0, &1);
    assert!(!g.is_central(&a)?);
    Ok(())
}
