//! Scenario file in, CSV and SVG files out.

use contagion::discrete::{epidemic_curve, infection_times, run};
use contagion::output::{emit_results, Format, RunOutput};
use contagion::scenario::load_scenario;
use contagion::CoinStream;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/five_agent.json");
    let s = load_scenario(path.as_ref()).unwrap();
    let traj = run(
        &s.network(),
        &s.schedule(),
        &CoinStream::new(s.seed),
        s.effective_horizon(),
        s.mode,
    );
    let out = RunOutput {
        curve: Some(epidemic_curve(&traj)),
        times: Some(infection_times(&traj).unwrap()),
        ..Default::default()
    };
    let dir = std::env::temp_dir().join("contagion-scenario-outputs");
    for file in emit_results(&out, Format::Svg, &dir).unwrap() {
        println!("wrote {}", file.display());
    }
    print!("{}", std::fs::read_to_string(dir.join("times.csv")).unwrap());
}
