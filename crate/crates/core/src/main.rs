fn main() {
    std::process::exit(gaugegeom::run());
}
