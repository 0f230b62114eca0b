//! Sign switching, gain switching and reorientation leave the matroid alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gainsign::corpus::random_instance;
use gainsign::group::Integers;
use gainsign::matroid::rank_table;
use gainsign::verify::random_switching;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut same = 0;
    for _ in 0..100 {
        let u = random_instance(&mut rng, &Integers, 4, 6, 2).extended();
        let v = random_switching(&u, &mut rng);
        if rank_table(&u) == rank_table(&v) {
            same += 1;
        }
    }
    println!("{same} of 100 switchings kept every rank");
}
