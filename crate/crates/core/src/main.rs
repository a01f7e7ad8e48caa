fn main() {
    println!("exact-dg CLI: pending");
}
