fn main() {
    println!("leakdet");
}
