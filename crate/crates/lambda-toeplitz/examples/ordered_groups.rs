//! Ordered duals: cone membership, comparisons, smallest positive
//! elements, and rotation indices with their enumeration oracle.
//!
//! ```bash
//! cargo run --example ordered_groups
//! ```

use lambda_toeplitz::group::{BruteForceIndex, Character, GroupSpec};

fn main() -> lambda_toeplitz::Result<()> {
    // the integers with their usual order
    let line = GroupSpec::lattice_lex(1)?;
    println!("Z with the standard order");
    println!(
        "  smallest positive element: {:?}",
        line.smallest_positive().map(|z| z.dense(1))
    );
    for n in [0i64, 3, -5] {
        let chi = Character::from_exponents(&[n]);
        println!(
            "  index of {n}: {:?}, oracle: {:?}",
            line.rotation_index(&chi)?,
            if n >= 0 {
                format!("{:?}", line.rotation_index_bruteforce(&chi, 100)?)
            } else {
                "outside the cone".into()
            }
        );
    }

    // the lex-ordered plane: the first coordinate dominates
    let plane = GroupSpec::lattice_lex(2)?;
    println!("\nZ^2 with the lexicographic order");
    let a = Character::from_exponents(&[0, 5]);
    let b = Character::from_exponents(&[1, -100]);
    println!(
        "  (0,5) vs (1,-100): {:?}  (the first coordinate wins)",
        plane.compare(&a, &b)?
    );
    println!(
        "  smallest positive element: {:?}",
        plane.smallest_positive().map(|z| z.dense(2))
    );
    for exps in [[0i64, 3], [1, 0]] {
        let chi = Character::from_exponents(&exps);
        println!(
            "  index of {exps:?}: {:?}, oracle up to bound 10: {:?}",
            plane.rotation_index(&chi)?,
            plane.rotation_index_bruteforce(&chi, 10)?
        );
    }

    // a dual embedded in the real line: dense image, no smallest element
    let flow = GroupSpec::real_embedded(vec![1.0, std::f64::consts::SQRT_2])?;
    println!("\nZ + sqrt(2) Z embedded in the line");
    println!(
        "  smallest positive element: {:?}",
        flow.smallest_positive()
    );
    println!("  ever-smaller positive elements:");
    for exps in [[1i64, 0], [-1, 1], [3, -2], [-7, 5]] {
        let chi = Character::from_exponents(&exps);
        println!("    {exps:?} -> image {:+.6}", flow.real_image(&chi)?);
    }
    let chi = Character::from_exponents(&[1, 1]);
    println!(
        "  index of (1,1): {:?}, oracle: {:?}",
        flow.rotation_index(&chi)?,
        flow.rotation_index_bruteforce(&chi, 8)?
    );
    // cross-check on the lattice: the formula agrees with enumeration
    let mut agreements = 0;
    for chi in plane.box_characters(6) {
        if !plane.is_positive(&chi)? {
            continue;
        }
        if let BruteForceIndex::Finite(n) = plane.rotation_index_bruteforce(&chi, 6)? {
            assert_eq!(plane.rotation_index(&chi)?, Some(n as i64));
            agreements += 1;
        }
    }
    println!("\nformula vs enumeration on the plane: {agreements} exact agreements");
    Ok(())
}
