// Sampling automorphisms and counting them by brute force on small groups.

use abelian_fourier::{is_automorphism, random_automorphism, Automorphism, Group};

fn count_by_brute_force(g: &Group) -> usize {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], g: &Group) -> usize {
        if prefix.len() == used.len() {
            return is_automorphism(prefix, g).unwrap() as usize;
        }
        let mut total = 0;
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                total += go(prefix, used, g);
                prefix.pop();
                used[v] = false;
            }
        }
        total
    }
    go(&mut Vec::new(), &mut vec![false; g.size()], g)
}

pub fn run_example() -> abelian_fourier::Result<()> {
    for orders in [&[4][..], &[2, 2], &[6], &[2, 4]] {
        let g = Group::new(orders)?;
        println!("|Aut({orders:?})| = {}", count_by_brute_force(&g));
    }

    let g = Group::new(&[4, 6])?;
    let a = random_automorphism(&g, 42)?;
    let b = random_automorphism(&g, 43)?;
    println!("a = {:?}", a.perm());
    let ab = a.compose(&b)?;
    println!("a∘b is an automorphism: {}", is_automorphism(ab.perm(), &g)?);
    println!("a∘a⁻¹ = id: {}", a.compose(&a.inverse())?.is_identity());

    let x = g.element(&[1, 5])?;
    println!("a({:?}) = {:?}", x.coords(), a.apply(&x)?.coords());

    // negation is always an automorphism
    let neg = Automorphism::from_perm(&g, (0..g.size()).map(|j| g.neg_index(j)).collect())?;
    println!("x ↦ -x fixes identity: {}", neg.apply_index(0) == 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
