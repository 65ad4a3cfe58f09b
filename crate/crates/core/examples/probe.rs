use hatdeg_core::certify::GuessBudget;
use hatdeg_core::exact::{decide_winnable, Limits, Winnability};
use hatdeg_core::graph::family::FamilySpec;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let spec = args.get(1).map(String::as_str).unwrap_or("cycle:5");
    let q: u32 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(3);
    let threads: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(1);
    let g = FamilySpec::parse(spec, 0).unwrap().generate().unwrap();
    let budgets = GuessBudget::uniform(&g, 1);
    let out = decide_winnable(&g, &budgets, q, Limits::default(), threads).unwrap();
    let verdict = match out.winnability {
        Winnability::Winnable(_) => "winnable",
        Winnability::Unwinnable => "unwinnable",
    };
    println!("{spec} q={q}: {verdict} nodes={} elapsed={:?}", out.stats.nodes, out.stats.elapsed);
}
