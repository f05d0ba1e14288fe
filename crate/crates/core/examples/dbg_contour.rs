use fixtrace::eig::eigenvalues;
use fixtrace::sampler::{fix_trace, sample_ginibre, RngState};

fn main() {
    let n = 5usize;
    let samples = 40_000;
    let mut rng = RngState::new(7, 0).rng();
    let mut data: Vec<Vec<f64>> = vec![];
    for _ in 0..samples {
        let g = sample_ginibre(n, 1.0, &mut rng).unwrap();
        let f = fix_trace(&g, 1.0).unwrap();
        let mut r2: Vec<f64> = eigenvalues(&f.entries).unwrap().iter().map(|z| z.norm_sqr()).collect();
        r2.sort_by(|a, b| b.partial_cmp(a).unwrap()); // descending
        data.push(r2);
    }
    let mean = |k: usize| data.iter().map(|v| v[k]).sum::<f64>() / samples as f64;
    let ms: Vec<f64> = (0..n).map(mean).collect();
    println!("ordered means: {ms:?}");
    for i in 0..n {
        let mut row = String::new();
        for j in 0..n {
            let mut cov = 0.0; let mut vi = 0.0; let mut vj = 0.0;
            for v in &data {
                cov += (v[i]-ms[i])*(v[j]-ms[j]);
                vi += (v[i]-ms[i]).powi(2);
                vj += (v[j]-ms[j]).powi(2);
            }
            row.push_str(&format!("{:7.3} ", cov/(vi*vj).sqrt()));
        }
        println!("{row}");
    }
    // unordered pair: pick two random indices per sample? use first two by eig order
}
